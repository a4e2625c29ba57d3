//! Cell coordinates and the two maps into `Sp(4n+1)`:
//! `φ(x, y) = X·Y` and `ψ(x, λ, ξ, y) = X·T(λ)·Q(ξ)·Y`.

use serde::Serialize;

use super::{d_diag, product, r_complex, r_quat, Factor, QMatrix, SpError};
use crate::arith::{Gauss, Quat, Sampler, SphereFamily, SpherePoint, UnitCircle};

/// Cell coordinates of `φ`: `x[k][i-1]` and `y[k][i-1]` for `0 <= k < 4n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpPhiPoint {
    pub x: Vec<Vec<SpherePoint>>,
    pub y: Vec<Vec<SpherePoint>>,
}

/// Cell coordinates of `ψ`. A torus point is `(a, b) = (τ_{2l-1}, z_l τ_{2l})`.
/// `xi[l-1]` is `s_l + j v_l` as a quaternionic sphere point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpCellPoint {
    pub x: Vec<Vec<SpherePoint>>,
    pub lambda: Vec<(UnitCircle, UnitCircle)>,
    pub xi: Vec<SpherePoint>,
    pub y: Vec<Vec<SpherePoint>>,
}

fn blocks_base(n: usize) -> Vec<Vec<SpherePoint>> {
    (0..4 * n).map(|k| vec![SpherePoint::base(); 4 * n - k]).collect()
}

fn blocks_sample(n: usize, s: &mut Sampler, fam: SphereFamily, interior: bool) -> Vec<Vec<SpherePoint>> {
    (0..4 * n).map(|k| (0..4 * n - k).map(|_| s.sphere(fam, interior)).collect()).collect()
}

fn blocks_ok(n: usize, b: &[Vec<SpherePoint>]) -> bool {
    b.len() == 4 * n && b.iter().enumerate().all(|(k, v)| v.len() == 4 * n - k)
}

fn blocks_interior(b: &[Vec<SpherePoint>]) -> bool {
    b.iter().flatten().all(SpherePoint::is_interior)
}

impl SpPhiPoint {
    pub fn base(n: usize) -> Self {
        SpPhiPoint { x: blocks_base(n), y: blocks_base(n) }
    }

    pub fn sample(n: usize, s: &mut Sampler, interior: bool) -> Self {
        let x = blocks_sample(n, s, SphereFamily::Complex, interior);
        let y = blocks_sample(n, s, SphereFamily::Quaternionic, interior);
        SpPhiPoint { x, y }
    }

    pub fn check_shape(&self, n: usize) -> Result<(), SpError> {
        if blocks_ok(n, &self.x) && blocks_ok(n, &self.y) {
            Ok(())
        } else {
            Err(SpError::Index(format!("cell point does not have the block lengths of n = {n}")))
        }
    }

    pub fn is_interior(&self) -> bool {
        blocks_interior(&self.x) && blocks_interior(&self.y)
    }

    pub fn sphere_count(&self) -> usize {
        self.x.iter().chain(&self.y).map(Vec::len).sum()
    }
}

impl SpCellPoint {
    pub fn base(n: usize) -> Self {
        SpCellPoint {
            x: blocks_base(n),
            lambda: vec![(UnitCircle::one(), UnitCircle::one()); 2 * n],
            xi: vec![SpherePoint::base(); 4 * n + 1],
            y: blocks_base(n),
        }
    }

    /// With `interior`, torus points avoid `a = 1` and no sphere point is the
    /// boundary point.
    pub fn sample(n: usize, s: &mut Sampler, interior: bool) -> Self {
        let x = blocks_sample(n, s, SphereFamily::Complex, interior);
        let lambda = (0..2 * n)
            .map(|_| (if interior { s.circle_not_one() } else { s.circle() }, s.circle()))
            .collect();
        let xi = (0..4 * n + 1).map(|_| s.sphere(SphereFamily::Quaternionic, interior)).collect();
        let y = blocks_sample(n, s, SphereFamily::Quaternionic, interior);
        SpCellPoint { x, lambda, xi, y }
    }

    pub fn check_shape(&self, n: usize) -> Result<(), SpError> {
        if blocks_ok(n, &self.x) && blocks_ok(n, &self.y) && self.lambda.len() == 2 * n && self.xi.len() == 4 * n + 1 {
            Ok(())
        } else {
            Err(SpError::Index(format!("cell point does not have the lengths of n = {n}")))
        }
    }

    pub fn is_interior(&self) -> bool {
        blocks_interior(&self.x)
            && blocks_interior(&self.y)
            && self.xi.iter().all(SpherePoint::is_interior)
            && self.lambda.iter().all(|(a, _)| !a.is_one())
    }

    pub fn sphere_count(&self) -> usize {
        self.x.iter().chain(&self.y).map(Vec::len).sum::<usize>() + self.xi.len()
    }
}

pub(crate) fn x_factors(dim: usize, x: &[Vec<SpherePoint>]) -> Result<Vec<Factor>, SpError> {
    let mut fs = Vec::new();
    for (k, blk) in x.iter().enumerate() {
        for (i, p) in blk.iter().enumerate() {
            fs.push(Factor::Block(r_complex(dim, k, i + 1, &Gauss::real(p.r.clone()), &p.w)?));
        }
    }
    Ok(fs)
}

pub(crate) fn y_factors(dim: usize, y: &[Vec<SpherePoint>]) -> Result<Vec<Factor>, SpError> {
    let mut fs = Vec::new();
    for (k, blk) in y.iter().enumerate() {
        for (i, p) in blk.iter().enumerate() {
            fs.push(Factor::Block(r_quat(dim, k, i + 1, &Gauss::real(p.r.clone()), &p.w)?));
        }
    }
    Ok(fs)
}

/// Diagonal of `∏_l D_l(a_l, b_l)`: pair `l` puts `a, conj(a) b, conj(b)` at
/// positions `2l-2, 2l-1, 2l`.
pub fn torus_diag(dim: usize, lambda: &[(UnitCircle, UnitCircle)]) -> Vec<Gauss> {
    let mut d = vec![Gauss::one(); dim];
    for (t, (a, b)) in lambda.iter().enumerate() {
        let p = 2 * t;
        d[p] = &d[p] * a.value();
        d[p + 1] = &d[p + 1] * &(a.conj().mul(b)).value().clone();
        d[p + 2] = &d[p + 2] * b.conj().value();
    }
    d
}

/// Inverse of [`torus_diag`] on diagonals of determinant 1.
pub fn torus_from_diag(d: &[Gauss]) -> Option<Vec<(UnitCircle, UnitCircle)>> {
    let m = (d.len() - 1) / 2;
    let mut out = Vec::with_capacity(m);
    let mut carry = UnitCircle::one();
    for l in 0..m {
        let a = UnitCircle::new(&d[2 * l] * carry.value()).ok()?;
        let b = a.mul(&UnitCircle::new(d[2 * l + 1].clone()).ok()?);
        carry = b.clone();
        out.push((a, b));
    }
    (d[2 * m] == carry.conj().value().clone()).then_some(out)
}

/// Diagonal `s_l + j v_l`.
pub fn xi_diag(xi: &[SpherePoint]) -> Vec<Quat> {
    xi.iter().map(|p| Quat::new(Gauss::real(p.r.clone()), p.w.clone())).collect()
}

pub fn phi_factors(n: usize, p: &SpPhiPoint) -> Result<Vec<Factor>, SpError> {
    p.check_shape(n)?;
    let dim = 4 * n + 1;
    let mut fs = x_factors(dim, &p.x)?;
    fs.extend(y_factors(dim, &p.y)?);
    Ok(fs)
}

pub fn psi_factors(n: usize, p: &SpCellPoint) -> Result<Vec<Factor>, SpError> {
    p.check_shape(n)?;
    let dim = 4 * n + 1;
    let mut fs = x_factors(dim, &p.x)?;
    let t = torus_diag(dim, &p.lambda);
    fs.push(Factor::Diag(t.into_iter().map(Quat::complex).collect()));
    fs.push(Factor::Diag(xi_diag(&p.xi)));
    fs.extend(y_factors(dim, &p.y)?);
    Ok(fs)
}

pub fn phi_representative(n: usize, p: &SpPhiPoint) -> Result<QMatrix, SpError> {
    Ok(product(4 * n + 1, &phi_factors(n, p)?))
}

pub fn psi_representative(n: usize, p: &SpCellPoint) -> Result<QMatrix, SpError> {
    Ok(product(4 * n + 1, &psi_factors(n, p)?))
}

/// `Some(z)` iff `A† B = d(z)`. Entries of `A† B` are formed one at a time
/// so that distinct cosets are usually rejected after a single entry.
pub fn coset_equal(a: &QMatrix, b: &QMatrix) -> Option<UnitCircle> {
    let dim = a.dim();
    if dim != b.dim() || dim < 2 {
        return None;
    }
    let entry = |i: usize, j: usize| {
        (0..dim).fold(Quat::zero(), |acc, l| &acc + &(&a.get(l, i).conj() * b.get(l, j)))
    };
    if !entry(1, 0).is_zero() {
        return None;
    }
    let d11 = entry(1, 1);
    if !d11.is_complex() {
        return None;
    }
    let z = UnitCircle::new(d11.a).ok()?;
    let want = d_diag(dim, &z);
    for i in 0..dim {
        for j in 0..dim {
            if (i, j) == (1, 0) || (i, j) == (1, 1) {
                continue;
            }
            let e = entry(i, j);
            if (i == j && e != want[i]) || (i != j && !e.is_zero()) {
                return None;
            }
        }
    }
    Some(z)
}

/// Another cell point with `ψ(q) = ψ(p)·d(c)`: move `d(c)` left through
/// the quaternionic blocks, the diagonal `s + j v` factor and into the torus.
pub fn second_preimage(n: usize, p: &SpCellPoint, c: &UnitCircle) -> Result<SpCellPoint, SpError> {
    p.check_shape(n)?;
    let dim = 4 * n + 1;
    let n4 = 4 * n as i64;
    let mut q = p.clone();
    for (k, blk) in q.y.iter_mut().enumerate() {
        let tw = if k == 0 { c.conj().pow(n4 - 1) } else { c.pow(2) };
        for pt in blk.iter_mut() {
            *pt = SpherePoint::new(pt.r.clone(), &pt.w * tw.value()).expect("twist keeps the norm");
        }
    }
    let dc = d_diag(dim, c);
    for (pt, cp) in q.xi.iter_mut().zip(&dc) {
        *pt = SpherePoint::new(pt.r.clone(), &pt.w * &(&cp.a * &cp.a)).expect("twist keeps the norm");
    }
    let t: Vec<Gauss> = torus_diag(dim, &p.lambda).iter().zip(&dc).map(|(t, cp)| t * &cp.a).collect();
    q.lambda = torus_from_diag(&t).ok_or_else(|| SpError::Index("torus diagonal lost determinant 1".into()))?;
    Ok(q)
}
