use serde::Serialize;

use super::{make_z, pair_count, spin_dim, Clifford, SpinError};
use crate::arith::{Gauss, Sampler, SphereFamily, SpherePoint, UnitCircle};

/// A point of `T^{2n-1} × (S²)^{(4n-1)(4n-2)}`. `lambda[l-1] = (η_l, τ_l)`;
/// `x[m-1][k-1]` is the sphere coordinate of the factor
/// `r + e_{2m-1} e_{2k} ω`. Slots with `m = k+1` are kept at the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCellPoint {
    pub lambda: Vec<(UnitCircle, UnitCircle)>,
    pub x: Vec<Vec<SpherePoint>>,
}

/// `m = k+1` gives `2m-1 = 2k+1`, where the factor leaves Spin.
pub fn is_pinned(m: u32, k: u32) -> bool {
    m == k + 1
}

impl SpinCellPoint {
    pub fn base(n: u32) -> Self {
        SpinCellPoint {
            lambda: vec![(UnitCircle::one(), UnitCircle::one()); 2 * n as usize - 1],
            x: vec![vec![SpherePoint::base(); pair_count(n) as usize]; 4 * n as usize - 1],
        }
    }

    pub fn sample(n: u32, s: &mut Sampler, interior_only: bool) -> Self {
        let lambda = (0..2 * n - 1)
            .map(|_| if interior_only { (s.circle_not_one(), s.circle_not_one()) } else { (s.circle(), s.circle()) })
            .collect();
        let x = (1..=4 * n - 1)
            .map(|m| {
                (1..=pair_count(n))
                    .map(|k| if is_pinned(m, k) { SpherePoint::base() } else { s.sphere(SphereFamily::Complex, interior_only) })
                    .collect()
            })
            .collect();
        SpinCellPoint { lambda, x }
    }

    pub fn check_shape(&self, n: u32) -> Result<(), SpinError> {
        let ok = self.lambda.len() == 2 * n as usize - 1
            && self.x.len() == 4 * n as usize - 1
            && self.x.iter().all(|row| row.len() == pair_count(n) as usize);
        let pinned_ok = self.x.iter().enumerate().all(|(mi, row)| {
            row.iter().enumerate().all(|(ki, p)| !is_pinned(mi as u32 + 1, ki as u32 + 1) || *p == SpherePoint::base())
        });
        if !ok {
            return Err(SpinError::Index(format!("cell point shape does not match n = {n}")));
        }
        if !pinned_ok {
            return Err(SpinError::Index("a slot with m = k+1 is not at the base point".into()));
        }
        Ok(())
    }

    /// Open cell: every torus coordinate differs from 1 and every free sphere
    /// coordinate has `r > 0`.
    pub fn is_interior(&self) -> bool {
        self.lambda.iter().all(|(e, t)| !e.is_one() && !t.is_one())
            && self.x.iter().enumerate().all(|(mi, row)| {
                row.iter().enumerate().all(|(ki, p)| is_pinned(mi as u32 + 1, ki as u32 + 1) || p.is_interior())
            })
    }

    /// Number of free sphere coordinates, `(4n-1)(4n-2)` minus the pinned ones.
    pub fn free_spheres(n: u32) -> u32 {
        (4 * n - 1) * pair_count(n) - pair_count(n)
    }
}

/// `r + e_{a} e_{b} ω` with `ω = Re w + Im w · e_b e_{b+1}`.
pub fn sphere_factor(big: u32, a: u32, b: u32, p: &SpherePoint) -> Result<Clifford, SpinError> {
    let ea = Clifford::basis(big, &[a, b])?;
    let omega = Clifford::from_terms(big, vec![(0, p.w.re.clone()), (super::blade_of(&[b, b + 1]).0, p.w.im.clone())]);
    Ok(Clifford::scalar(big, &p.r).add(&ea.mul(&omega)))
}

/// Factors of the φ representative, in order `m = 1..4n-1`, `k = 1..4n-2`,
/// skipping the pinned slots.
pub fn phi_factors(n: u32, x: &[Vec<SpherePoint>]) -> Result<Vec<Clifford>, SpinError> {
    let big = spin_dim(n);
    let mut out = Vec::new();
    for (mi, row) in x.iter().enumerate() {
        let m = mi as u32 + 1;
        for (ki, p) in row.iter().enumerate() {
            let k = ki as u32 + 1;
            if !is_pinned(m, k) {
                out.push(sphere_factor(big, 2 * m - 1, 2 * k, p)?);
            }
        }
    }
    Ok(out)
}

/// `z_{4l-2,4l}(η_l) z_{4l-2,4l-1}(τ_l)` for each `l`.
pub fn torus_factors(n: u32, lambda: &[(UnitCircle, UnitCircle)]) -> Result<Vec<Clifford>, SpinError> {
    let big = spin_dim(n);
    let mut out = Vec::new();
    for (li, (eta, tau)) in lambda.iter().enumerate() {
        let l = li as u32 + 1;
        out.push(make_z(big, 4 * l - 2, 4 * l, eta)?);
        out.push(make_z(big, 4 * l - 2, 4 * l - 1, tau)?);
    }
    Ok(out)
}

pub fn psi_factors(n: u32, p: &SpinCellPoint) -> Result<Vec<Clifford>, SpinError> {
    p.check_shape(n)?;
    let mut out = torus_factors(n, &p.lambda)?;
    out.extend(phi_factors(n, &p.x)?);
    Ok(out)
}

pub fn spin_phi_representative(n: u32, x: &[Vec<SpherePoint>]) -> Result<Clifford, SpinError> {
    Ok(Clifford::product(spin_dim(n), &phi_factors(n, x)?))
}

pub fn spin_psi_representative(n: u32, p: &SpinCellPoint) -> Result<Clifford, SpinError> {
    Ok(Clifford::product(spin_dim(n), &psi_factors(n, p)?))
}

/// The boundary point `r = 0` gives the factor `e_{2m-1} e_{2k}` exactly.
pub fn boundary_factor(big: u32, m: u32, k: u32) -> Result<Clifford, SpinError> {
    sphere_factor(big, 2 * m - 1, 2 * k, &SpherePoint::new(crate::arith::int(0), Gauss::one()).expect("boundary point"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::spin::{chain_adjoint, check_intertwining, is_unit_even, make_x};

    #[test]
    fn shapes() {
        assert_eq!(SpinCellPoint::free_spheres(1), 4);
        assert_eq!(SpinCellPoint::free_spheres(2), 36);
        let b = SpinCellPoint::base(2);
        assert_eq!(b.x.len() * b.x[0].len(), 42);
        assert!(spin_psi_representative(2, &b).unwrap().is_one());
        let mut s = Sampler::new(3);
        let p = SpinCellPoint::sample(1, &mut s, true);
        assert!(p.is_interior());
        assert!(p.check_shape(1).is_ok());
        assert!(p.check_shape(2).is_err());
    }

    #[test]
    fn sphere_factor_is_an_x_element() {
        let th = crate::arith::circle_from_mn(3, 1);
        let p = SpherePoint::from_polar(rat(5, 13), rat(12, 13), &th).unwrap();
        let f = sphere_factor(6, 3, 4, &p).unwrap();
        let one = UnitCircle::one();
        assert_eq!(f, make_x(6, 2, 2, &rat(5, 13), &rat(12, 13), &one, &th).unwrap());
        assert_eq!(boundary_factor(6, 2, 2).unwrap(), Clifford::basis(6, &[3, 4]).unwrap());
    }

    #[test]
    fn representatives_are_spin() {
        for n in [1, 2] {
            let mut s = Sampler::new(17 + n as u64);
            let p = SpinCellPoint::sample(n, &mut s, false);
            let fs = psi_factors(n, &p).unwrap();
            let g = Clifford::product(spin_dim(n), &fs);
            let m = chain_adjoint(spin_dim(n), &fs).unwrap();
            assert!(m.is_orthogonal());
            assert!(check_intertwining(&g, &m).is_ok());
            if n == 1 {
                assert!(is_unit_even(&g));
            }
            assert!(g.len() <= 1 << (spin_dim(n) - 1));
        }
    }
}
