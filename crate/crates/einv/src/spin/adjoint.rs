use num_traits::{One, Zero};
use serde::Serialize;

use super::{Clifford, SpinError};
use crate::arith::{rat_string, Rational};

/// A rational `N×N` matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoMatrix {
    pub n: usize,
    pub e: Vec<Rational>,
}

impl OrthoMatrix {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![Rational::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = Rational::one();
        }
        OrthoMatrix { n, e }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, o: &OrthoMatrix) -> OrthoMatrix {
        let n = self.n;
        let mut e = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        e[i * n + j] += a * b;
                    }
                }
            }
        }
        OrthoMatrix { n, e }
    }

    pub fn transpose(&self) -> OrthoMatrix {
        let n = self.n;
        let mut e = self.e.clone();
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.get(i, j).clone();
            }
        }
        OrthoMatrix { n, e }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == OrthoMatrix::identity(self.n)
    }
}

impl Serialize for OrthoMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|i| (0..self.n).map(|j| rat_string(self.get(i, j))).collect()).collect();
        rows.serialize(s)
    }
}

/// `M[i][j]` = coefficient of `e_i` in `g e_j reverse(g)`. Meant for short
/// elements; long chains go through [`chain_adjoint`].
pub fn twisted_adjoint(g: &Clifford) -> Result<OrthoMatrix, SpinError> {
    if !g.is_even() {
        return Err(SpinError::NotSpin("odd part present".into()));
    }
    if !g.norm().is_one() {
        return Err(SpinError::NotSpin(format!("reverse(g)·g = {}", g.norm())));
    }
    let n = g.generators();
    let rev = g.reverse();
    let size = n as usize;
    let mut m = OrthoMatrix { n: size, e: vec![Rational::zero(); size * size] };
    for j in 1..=n {
        let img = g.mul(&Clifford::basis(n, &[j])?).mul(&rev);
        for (blade, q) in img.terms() {
            if blade.count_ones() != 1 {
                return Err(SpinError::NotSpin(format!("g e_{j} g~ has a grade-{} part", blade.count_ones())));
            }
            let i = blade.trailing_zeros() as usize;
            m.e[i * size + (j as usize - 1)] = q;
        }
    }
    if !m.is_orthogonal() {
        return Err(SpinError::NotSpin("rotation is not orthogonal".into()));
    }
    Ok(m)
}

/// Product of the per-factor rotation matrices of a chain. A factor moves
/// only a few basis vectors, so only those columns are recomputed.
pub fn chain_adjoint(n: u32, factors: &[Clifford]) -> Result<OrthoMatrix, SpinError> {
    let size = n as usize;
    let mut acc = OrthoMatrix::identity(size);
    let id = OrthoMatrix::identity(size);
    for f in factors {
        let m = twisted_adjoint(f)?;
        let moved: Vec<usize> = (0..size).filter(|&j| (0..size).any(|i| m.get(i, j) != id.get(i, j))).collect();
        let mut next = acc.clone();
        for &j in &moved {
            for i in 0..size {
                let mut v = Rational::zero();
                for k in 0..size {
                    let b = m.get(k, j);
                    if !b.is_zero() {
                        v += acc.get(i, k) * b;
                    }
                }
                next.e[i * size + j] = v;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Checks `g e_j = (Σ_i M[i][j] e_i) g` for every `j`, which says that `M` is
/// the rotation of `g` without forming `g e_j reverse(g)`. Returns the first
/// failing column.
pub fn check_intertwining(g: &Clifford, m: &OrthoMatrix) -> Result<(), u32> {
    let n = g.generators();
    for j in 1..=n {
        let left = g.mul(&Clifford::basis(n, &[j]).expect("in range"));
        let col: Vec<(u32, Rational)> =
            (0..n).map(|i| (1u32 << i, m.get(i as usize, j as usize - 1).clone())).collect();
        let right = Clifford::from_terms(n, col).mul(g);
        if left != right {
            return Err(j);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::circle_from_mn;
    use crate::spin::{make_d_spin, make_z};

    #[test]
    fn rotation_by_twice_the_angle() {
        let t = circle_from_mn(2, 1);
        let m = twisted_adjoint(&make_z(4, 1, 2, &t).unwrap()).unwrap();
        let t2 = t.pow(2);
        assert_eq!(m.get(0, 0), t2.cos());
        assert_eq!(m.get(1, 0), t2.sin());
        assert_eq!(m.get(0, 1), &-t2.sin());
        assert_eq!(m.get(2, 2), &Rational::one());
        assert!(m.is_orthogonal());
        assert_eq!(twisted_adjoint(&Clifford::one(4)).unwrap(), OrthoMatrix::identity(4));
    }

    #[test]
    fn homomorphism_and_intertwining() {
        let a = make_z(6, 1, 4, &circle_from_mn(3, 1)).unwrap();
        let b = make_z(6, 2, 4, &circle_from_mn(5, 2)).unwrap();
        let ab = a.mul(&b);
        let m = chain_adjoint(6, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(twisted_adjoint(&ab).unwrap(), m);
        assert!(check_intertwining(&ab, &m).is_ok());
        let d = make_d_spin(1, &circle_from_mn(4, 1));
        assert!(check_intertwining(&ab, &twisted_adjoint(&d).unwrap()).is_err());
    }

    #[test]
    fn rejects_non_spin() {
        let e1 = Clifford::basis(4, &[1]).unwrap();
        assert!(twisted_adjoint(&e1).is_err());
        let two = Clifford::scalar(4, &Rational::from_integer(2.into()));
        assert!(twisted_adjoint(&two).is_err());
    }
}
