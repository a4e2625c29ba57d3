//! Quaternionic matrices and the elements of `Sp(4n+1)` used by the cell
//! decomposition: the circle `d(z)`, the 2×2 blocks `R_{i;k}`, the diagonal
//! factors `D_k(z)`, tori, and the products built from them.
//!
//! Indices are 0-based in rows and columns. The block `R_{i;k}` lives on
//! rows/columns `k` and `k + i`, so `1 <= i <= n_k = 4n - k`.

mod cells;
mod identities;
mod intprod;
mod lemma;
pub mod suite;

pub use cells::{
    coset_equal, phi_factors, phi_representative, psi_factors, psi_representative, second_preimage, torus_diag,
    torus_from_diag, xi_diag, SpCellPoint, SpPhiPoint,
};
pub use identities::{
    check_bar_d, check_eq_2_1, check_eq_2_4, check_eq_2_5, check_quat_closed_printed, check_underlined,
    complex_block_closed, quat_block_closed, Mismatch, Reading, Rule,
};
pub use lemma::{
    absorbed_values, block_normalize_printed, convert_boundary_phases, lemma21_normalize, LemmaError, LemmaFactor, LemmaInput,
    Normalized, NormalizedBlock,
};

use std::ops::Mul;

use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{Gauss, Quat, Rational, UnitCircle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("norm constraint violated: |a|^2 + |b|^2 = {0}")]
    Norm(Rational),
}

/// Dense square matrix over the quaternions, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    n: usize,
    e: Vec<Quat>,
}

impl QMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = Quat::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        QMatrix { n, e: vec![Quat::zero(); n * n] }
    }

    pub fn from_diag(d: Vec<Quat>) -> Self {
        let n = d.len();
        let mut m = QMatrix::zeros(n);
        for (i, q) in d.into_iter().enumerate() {
            m.e[i * n + i] = q;
        }
        m
    }

    pub fn from_complex_diag(d: &[Gauss]) -> Self {
        QMatrix::from_diag(d.iter().cloned().map(Quat::complex).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Quat {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quat) {
        self.e[i * self.n + j] = q;
    }

    pub fn try_mul(&self, o: &QMatrix) -> Result<QMatrix, SpError> {
        if self.n != o.n {
            return Err(SpError::Dimension(self.n, o.n));
        }
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.e[i * n + j] = &out.e[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Quaternionic conjugate transpose.
    pub fn adjoint(&self) -> QMatrix {
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == QMatrix::identity(self.n)
    }

    pub fn is_symplectic(&self) -> bool {
        (&self.adjoint() * self).is_identity()
    }

    pub fn first_difference(&self, o: &QMatrix) -> Option<(usize, usize)> {
        if self.n != o.n {
            return Some((0, 0));
        }
        (0..self.n * self.n).find(|&t| self.e[t] != o.e[t]).map(|t| (t / self.n, t % self.n))
    }

    /// The diagonal, if every off-diagonal entry vanishes.
    pub fn diagonal(&self) -> Option<Vec<Quat>> {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.n).map(|i| self.get(i, i).clone()).collect())
    }

    /// `self ← self · F` for a sparse factor.
    pub fn mul_factor(&mut self, f: &Factor) {
        match f {
            Factor::Block(b) => b.apply_right(self),
            Factor::Diag(d) => {
                for i in 0..self.n {
                    for (j, q) in d.iter().enumerate() {
                        let t = i * self.n + j;
                        self.e[t] = &self.e[t] * q;
                    }
                }
            }
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.try_mul(o).expect("matrix dimensions agree")
    }
}

/// Rows of quaternions, each as `[[a.re, a.im], [b.re, b.im]]`.
impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[Quat]> = self.e.chunks(self.n).collect();
        rows.serialize(s)
    }
}

/// A 2×2 quaternion block embedded at rows/columns `p < q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block2 {
    pub p: usize,
    pub q: usize,
    pub m: [[Quat; 2]; 2],
}

impl Block2 {
    pub fn embed(&self, n: usize) -> QMatrix {
        let mut out = QMatrix::identity(n);
        out.set(self.p, self.p, self.m[0][0].clone());
        out.set(self.p, self.q, self.m[0][1].clone());
        out.set(self.q, self.p, self.m[1][0].clone());
        out.set(self.q, self.q, self.m[1][1].clone());
        out
    }

    fn apply_right(&self, x: &mut QMatrix) {
        let n = x.n;
        let [[m00, m01], [m10, m11]] = &self.m;
        for r in 0..n {
            let a = x.e[r * n + self.p].clone();
            let b = x.e[r * n + self.q].clone();
            x.e[r * n + self.p] = &(&a * m00) + &(&b * m10);
            x.e[r * n + self.q] = &(&a * m01) + &(&b * m11);
        }
    }

    fn apply_left(&self, x: &mut QMatrix) {
        let n = x.n;
        let [[m00, m01], [m10, m11]] = &self.m;
        for c in 0..n {
            let a = x.e[self.p * n + c].clone();
            let b = x.e[self.q * n + c].clone();
            x.e[self.p * n + c] = &(m00 * &a) + &(m01 * &b);
            x.e[self.q * n + c] = &(m10 * &a) + &(m11 * &b);
        }
    }

    pub fn adjoint(&self) -> Block2 {
        let [[a, b], [c, d]] = &self.m;
        Block2 { p: self.p, q: self.q, m: [[a.conj(), c.conj()], [b.conj(), d.conj()]] }
    }
}

/// A sparse factor of a product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Factor {
    Block(Block2),
    Diag(Vec<Quat>),
}

impl Factor {
    pub fn embed(&self, n: usize) -> QMatrix {
        match self {
            Factor::Block(b) => b.embed(n),
            Factor::Diag(d) => QMatrix::from_diag(d.clone()),
        }
    }

    pub fn adjoint(&self) -> Factor {
        match self {
            Factor::Block(b) => Factor::Block(b.adjoint()),
            Factor::Diag(d) => Factor::Diag(d.iter().map(Quat::conj).collect()),
        }
    }

    /// `x ← F · x`.
    pub fn apply_left(&self, x: &mut QMatrix) {
        match self {
            Factor::Block(b) => b.apply_left(x),
            Factor::Diag(d) => {
                let n = x.n;
                for (i, q) in d.iter().enumerate() {
                    for c in 0..n {
                        x.e[i * n + c] = q * &x.e[i * n + c];
                    }
                }
            }
        }
    }
}

pub fn product(n: usize, fs: &[Factor]) -> QMatrix {
    intprod::product(n, fs)
}

/// `n` from `N = 4n + 1`.
pub fn family_n(dim: usize) -> Result<usize, SpError> {
    if dim >= 5 && (dim - 1) % 4 == 0 {
        Ok((dim - 1) / 4)
    } else {
        Err(SpError::Index(format!("N = {dim} is not of the form 4n+1")))
    }
}

pub fn d_diag(dim: usize, z: &UnitCircle) -> Vec<Quat> {
    let mut d = vec![Quat::complex(z.value().clone()); dim];
    d[0] = Quat::complex(z.conj().pow(dim as i64 - 1).value().clone());
    d
}

/// `d(z) = diag(conj(z)^{N-1}, z, ..., z)`.
pub fn make_d(dim: usize, z: &UnitCircle) -> QMatrix {
    assert!(dim >= 2, "d(z) needs N >= 2");
    QMatrix::from_diag(d_diag(dim, z))
}

/// `dbar(x) = diag(conj(x)^{N-1}, conj(x), ..., conj(x))`.
pub fn make_d_bar(dim: usize, x: &UnitCircle) -> QMatrix {
    let mut d = vec![Quat::complex(x.conj().value().clone()); dim];
    d[0] = Quat::complex(x.conj().pow(dim as i64 - 1).value().clone());
    QMatrix::from_diag(d)
}

fn block_indices(dim: usize, k: usize, i: usize) -> Result<(usize, usize), SpError> {
    if i == 0 || k + i >= dim {
        return Err(SpError::Index(format!("R_{{{i};{k}}} does not fit in N = {dim}")));
    }
    Ok((k, k + i))
}

/// The complex block with `a = r z` on the diagonal and `u` off it.
pub fn r_complex(dim: usize, k: usize, i: usize, a: &Gauss, u: &Gauss) -> Result<Block2, SpError> {
    let (p, q) = block_indices(dim, k, i)?;
    let nrm = a.norm_sqr() + u.norm_sqr();
    if !nrm.is_one() {
        return Err(SpError::Norm(nrm));
    }
    Ok(Block2 {
        p,
        q,
        m: [
            [Quat::complex(a.clone()), Quat::complex(u.clone())],
            [Quat::complex(-u.conj()), Quat::complex(a.conj())],
        ],
    })
}

/// The quaternionic block `[[a, j v], [j v, a]]`.
pub fn r_quat(dim: usize, k: usize, i: usize, a: &Gauss, v: &Gauss) -> Result<Block2, SpError> {
    let (p, q) = block_indices(dim, k, i)?;
    let nrm = a.norm_sqr() + v.norm_sqr();
    if !nrm.is_one() {
        return Err(SpError::Norm(nrm));
    }
    Ok(Block2 {
        p,
        q,
        m: [
            [Quat::complex(a.clone()), Quat::j_times(v.clone())],
            [Quat::j_times(v.clone()), Quat::complex(a.clone())],
        ],
    })
}

pub fn make_r_complex(dim: usize, k: usize, i: usize, a: &Gauss, u: &Gauss) -> Result<QMatrix, SpError> {
    Ok(r_complex(dim, k, i, a, u)?.embed(dim))
}

pub fn make_r_quat(dim: usize, k: usize, i: usize, a: &Gauss, v: &Gauss) -> Result<QMatrix, SpError> {
    Ok(r_quat(dim, k, i, a, v)?.embed(dim))
}

/// `D_0 = I`, `D_k(z) = diag(z^{4n}, conj(z) (k-1 times), conj(z)^{4n+1-k}, 1, ...)`.
pub fn d_k_diag(dim: usize, k: usize, z: &UnitCircle) -> Vec<Quat> {
    let n4 = dim as i64 - 1;
    let mut d = vec![Gauss::one(); dim];
    if k > 0 {
        d[0] = z.pow(n4).value().clone();
        for e in d.iter_mut().take(k).skip(1) {
            *e = z.conj().value().clone();
        }
        d[k] = z.conj().pow(n4 + 1 - k as i64).value().clone();
    }
    d.into_iter().map(Quat::complex).collect()
}

/// Which half of the decomposition a block belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Complex,
    Quaternionic,
}

/// Factors of `R^{i}_k(r z, u)`: every block but the `i`-th has radius 1,
/// then the diagonal corrections. For the quaternionic kind `w` is the
/// coefficient of `j`.
pub fn r_sup(
    kind: Kind,
    dim: usize,
    k: usize,
    i: usize,
    r: &Rational,
    w: &Gauss,
    z: &UnitCircle,
) -> Result<Vec<Factor>, SpError> {
    let nk = dim - 1 - k;
    if i == 0 || i > nk {
        return Err(SpError::Index(format!("i = {i} outside 1..={nk}")));
    }
    let mut fs = Vec::with_capacity(nk + 2);
    for l in 1..=nk {
        let (a, u) = if l == i { (z.value().scale(r), w.clone()) } else { (z.value().clone(), Gauss::zero()) };
        let b = match kind {
            Kind::Complex => r_complex(dim, k, l, &a, &u)?,
            Kind::Quaternionic => r_quat(dim, k, l, &a, &u)?,
        };
        fs.push(Factor::Block(b));
    }
    if kind == Kind::Quaternionic {
        let zb2 = Quat::complex(z.conj().pow(2).value().clone());
        let mut d = vec![Quat::one(); dim];
        for e in d.iter_mut().skip(k + 1) {
            *e = zb2.clone();
        }
        fs.push(Factor::Diag(d));
    }
    fs.push(Factor::Diag(d_k_diag(dim, k, z)));
    Ok(fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Sampler, SphereFamily};

    #[test]
    fn d_examples() {
        assert!(make_d(5, &UnitCircle::one()).is_identity());
        let i = UnitCircle::i();
        let expect = QMatrix::from_complex_diag(&[Gauss::one(), Gauss::i(), Gauss::i(), Gauss::i(), Gauss::i()]);
        assert_eq!(make_d(5, &i), expect);
        let mut s = Sampler::new(1);
        let (z, w) = (s.circle(), s.circle());
        assert_eq!(&make_d(9, &z) * &make_d(9, &w), make_d(9, &z.mul(&w)));
        assert!(make_d(9, &z).is_symplectic());
    }

    #[test]
    fn r_block_placement() {
        let m = make_r_complex(5, 0, 1, &Gauss::real(rat(3, 5)), &Gauss::real(rat(4, 5))).unwrap();
        let mut expect = QMatrix::identity(5);
        expect.set(0, 0, Quat::complex(Gauss::real(rat(3, 5))));
        expect.set(0, 1, Quat::complex(Gauss::real(rat(4, 5))));
        expect.set(1, 0, Quat::complex(Gauss::real(rat(-4, 5))));
        expect.set(1, 1, Quat::complex(Gauss::real(rat(3, 5))));
        assert_eq!(m, expect);
        assert!(make_r_complex(5, 1, 3, &Gauss::one(), &Gauss::zero()).unwrap().is_identity());
        assert!(make_r_quat(5, 2, 2, &Gauss::one(), &Gauss::zero()).unwrap().is_identity());
    }

    #[test]
    fn r_rejects_bad_input() {
        assert!(matches!(make_r_complex(5, 0, 1, &Gauss::one(), &Gauss::one()), Err(SpError::Norm(_))));
        assert!(matches!(make_r_quat(5, 3, 2, &Gauss::one(), &Gauss::zero()), Err(SpError::Index(_))));
        assert!(matches!(make_r_quat(5, 0, 0, &Gauss::one(), &Gauss::zero()), Err(SpError::Index(_))));
    }

    #[test]
    fn blocks_are_symplectic() {
        let mut s = Sampler::new(2);
        for k in 0..4 {
            let p = s.sphere(SphereFamily::Complex, true);
            let z = s.circle();
            let a = z.value().scale(&p.r);
            assert!(make_r_complex(5, k, 4 - k, &a, &p.w).unwrap().is_symplectic());
            assert!(make_r_quat(5, k, 1, &a, &p.w).unwrap().is_symplectic());
        }
    }

    #[test]
    fn sparse_products_match_dense() {
        let mut s = Sampler::new(3);
        let z = s.circle();
        let p = s.sphere(SphereFamily::Quaternionic, true);
        let fs = r_sup(Kind::Quaternionic, 9, 2, 3, &p.r, &p.w, &z).unwrap();
        let dense = fs.iter().fold(QMatrix::identity(9), |m, f| &m * &f.embed(9));
        assert_eq!(product(9, &fs), dense);
        let mut left = QMatrix::identity(9);
        for f in fs.iter().rev() {
            f.apply_left(&mut left);
        }
        assert_eq!(left, dense);
        assert!((&dense * &product(9, &fs.iter().rev().map(Factor::adjoint).collect::<Vec<_>>())).is_identity());
    }

    #[test]
    fn d_k_shapes() {
        let z = UnitCircle::i();
        assert!(QMatrix::from_diag(d_k_diag(5, 0, &z)).is_identity());
        let d = d_k_diag(5, 2, &z);
        // diag(z^4, conj z, conj z^3, 1, 1)
        assert_eq!(d[0], Quat::one());
        assert_eq!(d[1], Quat::complex(-Gauss::i()));
        assert_eq!(d[2], Quat::complex(Gauss::i()));
        assert_eq!(d[3], Quat::one());
        assert_eq!(family_n(9), Ok(2));
        assert!(family_n(8).is_err());
        let _ = int(0);
    }
}
