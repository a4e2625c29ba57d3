//! Recovering cell coordinates from a group element: the extraction order
//! implicit in the injectivity arguments, run as an algorithm. Every
//! procedure peels the factors it recovers and returns what is left, which
//! is the identity exactly when the reconstruction succeeded.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{sqrt_exact, Gauss, Quat, Rational, Sampler, SpherePoint, UnitCircle};
use crate::report::{sampled, CheckRecord, SampleFailure};
use crate::spin::{
    is_pinned, make_z, pair_count, sphere_factor, spin_coset_equal, spin_dim, spin_phi_representative,
    spin_psi_representative, Clifford, SpinCellPoint,
};
use crate::symplectic::{
    coset_equal, phi_representative, psi_representative, r_complex, r_quat, second_preimage, torus_from_diag,
    Factor, QMatrix, SpCellPoint, SpPhiPoint,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconError {
    /// A recovered radius is 0, so the input is not on an open cell.
    #[error("boundary point at {0}: recovered r = 0")]
    Boundary(String),
    #[error("{0}: no exact rational square root")]
    NotRational(String),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub slot: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionResult<P, G> {
    pub point: P,
    pub residual: G,
    pub trace: Vec<TraceStep>,
}

impl<P> ReconstructionResult<P, QMatrix> {
    pub fn is_exact(&self) -> bool {
        self.residual.is_identity()
    }
}

impl<P> ReconstructionResult<P, Clifford> {
    pub fn is_exact(&self) -> bool {
        self.residual.is_one()
    }
}

fn step(trace: &mut Vec<TraceStep>, slot: String, value: impl Serialize) {
    trace.push(TraceStep { slot, value: serde_json::to_value(value).unwrap_or(Value::Null) });
}

fn root(q: &Rational, slot: &str) -> Result<Rational, ReconError> {
    sqrt_exact(q).ok_or_else(|| ReconError::NotRational(slot.to_string()))
}

/// The radius of a sphere point from `r² = 1 - |w|²`; zero is a boundary point.
fn radius(w: &Gauss, slot: &str) -> Result<Rational, ReconError> {
    let r = root(&(Rational::one() - w.norm_sqr()), slot)?;
    if r.is_zero() {
        return Err(ReconError::Boundary(slot.to_string()));
    }
    Ok(r)
}

fn peel_left(m: &mut QMatrix, blocks: &[Factor]) {
    // (B_1 ⋯ B_j)^{-1} = B_j† ⋯ B_1†, so B_1† is applied first.
    for b in blocks {
        b.adjoint().apply_left(m);
    }
}

/// Reads the blocks `R_{1;k} ⋯ R_{n_k;k}` from their action on `e_k`, given as
/// `col` (rows `k..N`), last entry first. `to_w` turns an entry, divided by
/// the radii already recovered, into the block's `w`.
fn sweep(
    dim: usize,
    k: usize,
    col: &[Gauss],
    tag: &str,
    trace: &mut Vec<TraceStep>,
    to_w: impl Fn(&Gauss) -> Gauss,
) -> Result<Vec<SpherePoint>, ReconError> {
    let nk = dim - 1 - k;
    let mut pts = vec![SpherePoint::base(); nk];
    let mut prod = Rational::one();
    for i in (1..=nk).rev() {
        let slot = format!("{tag}[{k}][{}]", i - 1);
        let w = to_w(&col[i].scale(&prod.recip()));
        let r = radius(&w, &slot)?;
        prod *= &r;
        pts[i - 1] = SpherePoint::new(r, w).map_err(|e| ReconError::Shape(e.to_string()))?;
    }
    for (i, p) in pts.iter().enumerate() {
        step(trace, format!("{tag}[{k}][{i}]"), p);
    }
    Ok(pts)
}

fn complex_blocks(dim: usize, k: usize, pts: &[SpherePoint]) -> Vec<Factor> {
    pts.iter()
        .enumerate()
        .map(|(i, p)| Factor::Block(r_complex(dim, k, i + 1, &Gauss::real(p.r.clone()), &p.w).expect("unit block")))
        .collect()
}

fn quat_blocks(dim: usize, k: usize, pts: &[SpherePoint]) -> Vec<Factor> {
    pts.iter()
        .enumerate()
        .map(|(i, p)| Factor::Block(r_quat(dim, k, i + 1, &Gauss::real(p.r.clone()), &p.w).expect("unit block")))
        .collect()
}

/// Complex part of column `k`, rows `k..N`, scaled to a unit vector whose
/// `k`-th entry is real and positive. With `phase` the `k`-th entry may carry
/// a unit complex factor, which is divided out.
fn complex_column(m: &QMatrix, k: usize, phase: bool) -> Result<Vec<Gauss>, ReconError> {
    let dim = m.dim();
    let col: Vec<Gauss> = (k..dim).map(|l| m.get(l, k).a.clone()).collect();
    let nrm = root(&col.iter().map(Gauss::norm_sqr).sum(), &format!("column {k}"))?;
    if nrm.is_zero() {
        return Err(ReconError::Boundary(format!("column {k}")));
    }
    let mut v: Vec<Gauss> = col.iter().map(|g| g.scale(&nrm.recip())).collect();
    if phase {
        let lead = root(&v[0].norm_sqr(), &format!("x[{k}] leading entry"))?;
        if lead.is_zero() {
            return Err(ReconError::Boundary(format!("x[{k}] leading entry")));
        }
        let u = v[0].scale(&lead.recip()).inv().expect("unit");
        v = v.iter().map(|g| g * &u).collect();
    }
    Ok(v)
}

fn recover_x(m: &mut QMatrix, phase: bool, trace: &mut Vec<TraceStep>) -> Result<Vec<Vec<SpherePoint>>, ReconError> {
    let dim = m.dim();
    let mut x = Vec::with_capacity(dim - 1);
    for k in 0..dim - 1 {
        let v = complex_column(m, k, phase)?;
        // Column k of R_{i;k} has -conj(w) in row k+i.
        let pts = sweep(dim, k, &v, "x", trace, |c| -c.conj())?;
        peel_left(m, &complex_blocks(dim, k, &pts));
        x.push(pts);
    }
    Ok(x)
}

fn recover_y(m: &mut QMatrix, trace: &mut Vec<TraceStep>) -> Result<Vec<Vec<SpherePoint>>, ReconError> {
    let dim = m.dim();
    let mut y = Vec::with_capacity(dim - 1);
    for k in 0..dim - 1 {
        // Column k of R_{i;k} has j·v in row k+i.
        let col: Vec<Gauss> = (k..dim).map(|l| m.get(l, k).b.clone()).collect();
        let pts = sweep(dim, k, &col, "y", trace, Gauss::clone)?;
        peel_left(m, &quat_blocks(dim, k, &pts));
        y.push(pts);
    }
    Ok(y)
}

fn sp_n(n: usize, m: &QMatrix) -> Result<usize, ReconError> {
    if n == 0 || m.dim() != 4 * n + 1 {
        return Err(ReconError::Shape(format!("matrix of size {} for n = {n}", m.dim())));
    }
    Ok(4 * n + 1)
}

/// Inverts `φ(x, y) = X·Y`. The complex part of `X·Y` is `X·Re(Y)`, and the
/// complex part of column `k` of `Y`, below row `k`, vanishes; so after the
/// first `k` complex factors are peeled, column `k` determines the next one.
/// `Y` is then read off its own columns the same way.
pub fn reconstruct_sp_phi(n: usize, m: &QMatrix) -> Result<ReconstructionResult<SpPhiPoint, QMatrix>, ReconError> {
    sp_n(n, m)?;
    let mut cur = m.clone();
    let mut trace = Vec::new();
    let x = recover_x(&mut cur, false, &mut trace)?;
    let y = recover_y(&mut cur, &mut trace)?;
    Ok(ReconstructionResult { point: SpPhiPoint { x, y }, residual: cur, trace })
}

/// The printed procedure for `ψ = X·T·Ξ·Y`: the complex columns are read up
/// to the phase of their leading entry (`τ s a = τ' s' a'`), the torus and
/// `s + j v` factors come from the diagonal of what is left, and `Y` is read
/// as in `φ`. The residual records how far this is from the input.
pub fn reconstruct_sp_psi(n: usize, m: &QMatrix) -> Result<ReconstructionResult<SpCellPoint, QMatrix>, ReconError> {
    let dim = sp_n(n, m)?;
    let mut cur = m.clone();
    let mut trace = Vec::new();
    let x = recover_x(&mut cur, true, &mut trace)?;
    let mut phases = Vec::with_capacity(dim);
    let mut xi = Vec::with_capacity(dim);
    for l in 0..dim {
        let q = cur.get(l, l);
        let nq = root(&q.norm(), &format!("diagonal {l}"))?;
        if nq.is_zero() {
            return Err(ReconError::Boundary(format!("diagonal {l}")));
        }
        // d = t (s + j v): s = |complex part|, t its phase, and j-part conj(t) v.
        let s = root(&q.a.norm_sqr(), &format!("xi[{l}]"))? / &nq;
        if s.is_zero() {
            return Err(ReconError::Boundary(format!("xi[{l}]")));
        }
        let t = q.a.scale(&(&nq * &s).recip());
        let v = (&t * &q.b).scale(&nq.recip());
        let p = SpherePoint::new(s, v).map_err(|e| ReconError::Shape(e.to_string()))?;
        step(&mut trace, format!("xi[{l}]"), &p);
        phases.push(t);
        xi.push(p);
    }
    let lambda = torus_from_diag(&phases).ok_or_else(|| ReconError::Shape("diagonal phases do not form a torus point".into()))?;
    for (l, pair) in lambda.iter().enumerate() {
        step(&mut trace, format!("lambda[{l}]"), pair);
    }
    let d: Vec<Quat> = phases
        .iter()
        .zip(&xi)
        .map(|(t, p)| &Quat::complex(t.clone()) * &Quat::new(Gauss::real(p.r.clone()), p.w.clone()))
        .collect();
    Factor::Diag(d).adjoint().apply_left(&mut cur);
    let y = recover_y(&mut cur, &mut trace)?;
    Ok(ReconstructionResult { point: SpCellPoint { x, lambda, xi, y }, residual: cur, trace })
}

fn spin_n(n: u32, g: &Clifford) -> Result<u32, ReconError> {
    if n == 0 || g.generators() != spin_dim(n) {
        return Err(ReconError::Shape(format!("element of Cl_{} for n = {n}", g.generators())));
    }
    Ok(spin_dim(n))
}

/// The printed procedure for the spin `φ`: block `m` is read from the scalar
/// coefficient `r_1 ⋯ r_{4n-2}` and the coefficients of `e_{2m-1} e_{2k}`,
/// `e_{2m-1} e_{2k+1}`, which are `Re w_k` and `-Im w_k` times the other
/// radii; the norm relation splits off `r_k`, and the block is peeled from
/// the left.
pub fn reconstruct_spin_phi(
    n: u32,
    g: &Clifford,
) -> Result<ReconstructionResult<Vec<Vec<SpherePoint>>, Clifford>, ReconError> {
    let big = spin_n(n, g)?;
    let mut cur = g.clone();
    let mut trace = Vec::new();
    let x = spin_blocks(n, big, &mut cur, &mut trace)?;
    Ok(ReconstructionResult { point: x, residual: cur, trace })
}

fn spin_blocks(n: u32, big: u32, cur: &mut Clifford, trace: &mut Vec<TraceStep>) -> Result<Vec<Vec<SpherePoint>>, ReconError> {
    let mut x = Vec::new();
    for m in 1..=4 * n - 1 {
        let a = 2 * m - 1;
        let lead = cur.coeff(0);
        if lead.is_zero() {
            return Err(ReconError::Boundary(format!("x[{}]", m - 1)));
        }
        let mut row = Vec::new();
        for k in 1..=pair_count(n) {
            let slot = format!("x[{}][{}]", m - 1, k - 1);
            if is_pinned(m, k) {
                row.push(SpherePoint::base());
                continue;
            }
            let rho = Gauss::new(cur.coeff_of(&[a, 2 * k]) / &lead, -cur.coeff_of(&[a, 2 * k + 1]) / &lead);
            let r = root(&(Rational::one() + rho.norm_sqr()).recip(), &slot)?;
            let p = SpherePoint::new(r.clone(), rho.scale(&r)).map_err(|e| ReconError::Shape(e.to_string()))?;
            step(trace, slot, &p);
            row.push(p);
        }
        let mut block = Clifford::one(big);
        for (ki, p) in row.iter().enumerate() {
            let k = ki as u32 + 1;
            if !is_pinned(m, k) {
                let f = sphere_factor(big, a, 2 * k, p).map_err(|e| ReconError::Shape(e.to_string()))?;
                block = block.mul(&f);
            }
        }
        *cur = block.reverse().mul(cur);
        x.push(row);
    }
    Ok(x)
}

/// Torus first: `z_{4l-2,4l}(η_l)` is read from the scalar and
/// `e_{4l-2} e_{4l}` coefficients and peeled by `z(-η_l)`, after which the
/// `e_{4l-2} e_{4l}` coefficient vanishes; `τ_l` likewise on `e_{4l-2} e_{4l-1}`.
/// The rest goes to the `φ` procedure.
pub fn reconstruct_spin_psi(n: u32, g: &Clifford) -> Result<ReconstructionResult<SpinCellPoint, Clifford>, ReconError> {
    let big = spin_n(n, g)?;
    let mut cur = g.clone();
    let mut trace = Vec::new();
    let mut lambda = Vec::new();
    for l in 1..=2 * n - 1 {
        let mut pair = Vec::with_capacity(2);
        for (name, b) in [("eta", 4 * l), ("tau", 4 * l - 1)] {
            let slot = format!("{name}[{}]", l - 1);
            let c = cur.coeff(0);
            let s = cur.coeff_of(&[4 * l - 2, b]);
            let nrm = root(&(&c * &c + &s * &s), &slot)?;
            if nrm.is_zero() {
                return Err(ReconError::Boundary(slot));
            }
            let t = UnitCircle::from_cos_sin(c / &nrm, s / &nrm).map_err(|e| ReconError::Shape(e.to_string()))?;
            let z = make_z(big, 4 * l - 2, b, &t).map_err(|e| ReconError::Shape(e.to_string()))?;
            cur = z.reverse().mul(&cur);
            step(&mut trace, slot, &t);
            pair.push(t);
        }
        let tau = pair.pop().expect("two angles");
        let eta = pair.pop().expect("two angles");
        lambda.push((eta, tau));
    }
    let x = spin_blocks(n, big, &mut cur, &mut trace)?;
    Ok(ReconstructionResult { point: SpinCellPoint { lambda, x }, residual: cur, trace })
}

// Check records.

fn round_trip<P: PartialEq + Serialize, G: Serialize>(
    original: &P,
    res: Result<ReconstructionResult<P, G>, ReconError>,
    exact: impl Fn(&ReconstructionResult<P, G>) -> bool,
) -> Result<(), SampleFailure> {
    match res {
        Ok(r) if exact(&r) && &r.point == original => Ok(()),
        Ok(r) => Err(SampleFailure::new(
            original,
            json!({
                "reason": if exact(&r) { "recovered point differs" } else { "residual is not the identity" },
                "recovered": &r.point,
                "trace": &r.trace,
            }),
        )),
        Err(e) => Err(SampleFailure::new(original, json!({ "reason": "error", "error": e.to_string() }))),
    }
}

fn boundary_rejected<E: std::fmt::Display>(res: Result<impl Sized, E>, is_boundary: impl Fn(&E) -> bool) -> Result<(), Value> {
    match res {
        Err(e) if is_boundary(&e) => Ok(()),
        Err(e) => Err(json!({ "reason": "wrong error", "error": e.to_string() })),
        Ok(_) => Err(json!({ "reason": "boundary point accepted" })),
    }
}

fn distinct<P: PartialEq + Serialize>(
    s: &mut Sampler,
    draw: impl Fn(&mut Sampler) -> P,
    same_coset: impl Fn(&P, &P) -> Result<bool, String>,
) -> Result<(), SampleFailure> {
    let p = draw(s);
    let q = draw(s);
    if p == q {
        return Ok(());
    }
    match same_coset(&p, &q) {
        Ok(false) => Ok(()),
        Ok(true) => Err(SampleFailure::new(json!({ "p": &p, "q": &q }), "images lie in the same coset")),
        Err(e) => Err(SampleFailure::new(json!({ "p": &p, "q": &q }), e)),
    }
}

pub fn sp_records(n: usize, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(sampled(format!("recon/sp/n={n}/phi-round-trip"), "Lemma 2.3", samples, seed, |s| {
        let p = SpPhiPoint::sample(n, s, true);
        let m = phi_representative(n, &p).expect("valid point");
        round_trip(&p, reconstruct_sp_phi(n, &m), |r| r.is_exact())
    }));
    out.push(sampled(format!("recon/sp/n={n}/psi-round-trip"), "Lemma 3.2", samples, seed, |s| {
        let p = SpCellPoint::sample(n, s, true);
        let m = psi_representative(n, &p).expect("valid point");
        round_trip(&p, reconstruct_sp_psi(n, &m), |r| r.is_exact())
    }));
    out.push(sampled(format!("recon/sp/n={n}/phi-distinct-cosets"), "Lemma 2.3", samples, seed, |s| {
        distinct(
            s,
            |s| SpPhiPoint::sample(n, s, true),
            |p, q| Ok(coset_equal(&phi_representative(n, p).expect("valid"), &phi_representative(n, q).expect("valid")).is_some()),
        )
    }));
    out.push(sampled(format!("recon/sp/n={n}/psi-distinct-cosets"), "Lemma 3.2", samples, seed, |s| {
        distinct(
            s,
            |s| SpCellPoint::sample(n, s, true),
            |p, q| Ok(coset_equal(&psi_representative(n, p).expect("valid"), &psi_representative(n, q).expect("valid")).is_some()),
        )
    }));
    // Injectivity of ψ on G/S: a second interior point in the same coset is a counterexample.
    out.push(sampled(format!("recon/sp/n={n}/psi-injective-on-cosets"), "Lemma 3.2", samples, seed, |s| {
        let p = SpCellPoint::sample(n, s, true);
        let c = s.circle_not_one();
        let inputs = json!({ "p": &p, "c": &c });
        let q = second_preimage(n, &p, &c).map_err(|e| SampleFailure::new(&inputs, e.to_string()))?;
        if q == p || !q.is_interior() {
            return Ok(());
        }
        let (mp, mq) = (psi_representative(n, &p).expect("valid"), psi_representative(n, &q).expect("valid"));
        match coset_equal(&mp, &mq) {
            Some(z) => Err(SampleFailure::new(inputs, json!({ "reason": "second preimage in the same coset", "q": &q, "witness": z }))),
            None => Ok(()),
        }
    }));
    out.push(sampled(format!("recon/sp/n={n}/boundary-rejected"), "Lemma 2.3", samples, seed, |s| {
        let mut p = SpPhiPoint::sample(n, s, true);
        let k = s.below(4 * n);
        let i = s.below(4 * n - k);
        let half = s.below(2) == 0;
        let blk = if half { &mut p.x } else { &mut p.y };
        blk[k][i] = SpherePoint::new(Rational::zero(), Gauss::one()).expect("boundary point");
        let m = phi_representative(n, &p).expect("valid point");
        boundary_rejected(reconstruct_sp_phi(n, &m), |e| matches!(e, ReconError::Boundary(_)))
            .map_err(|d| SampleFailure::new(&p, d))
    }));
    out
}

pub fn spin_records(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(sampled(format!("recon/spin/n={n}/phi-round-trip"), "Lemma 4.1", samples, seed, |s| {
        let x = SpinCellPoint::sample(n, s, true).x;
        let g = spin_phi_representative(n, &x).expect("valid point");
        round_trip(&x, reconstruct_spin_phi(n, &g), |r| r.is_exact())
    }));
    out.push(sampled(format!("recon/spin/n={n}/psi-round-trip"), "Lemma 5.2", samples, seed, |s| {
        let p = SpinCellPoint::sample(n, s, true);
        let g = spin_psi_representative(n, &p).expect("valid point");
        round_trip(&p, reconstruct_spin_psi(n, &g), |r| r.is_exact())
    }));
    out.push(sampled(format!("recon/spin/n={n}/phi-distinct-cosets"), "Lemma 4.1", samples, seed, |s| {
        distinct(
            s,
            |s| SpinCellPoint::sample(n, s, true).x,
            |p, q| {
                let (a, b) = (spin_phi_representative(n, p).expect("valid"), spin_phi_representative(n, q).expect("valid"));
                Ok(spin_coset_equal(&a, &b).is_some())
            },
        )
    }));
    out.push(sampled(format!("recon/spin/n={n}/psi-distinct-cosets"), "Lemma 5.2", samples, seed, |s| {
        distinct(
            s,
            |s| SpinCellPoint::sample(n, s, true),
            |p, q| {
                let (a, b) = (spin_psi_representative(n, p).expect("valid"), spin_psi_representative(n, q).expect("valid"));
                Ok(spin_coset_equal(&a, &b).is_some())
            },
        )
    }));
    out.push(sampled(format!("recon/spin/n={n}/boundary-rejected"), "Lemma 4.1", samples, seed, |s| {
        // Only block 1 is populated: it is the block the procedure can isolate.
        let mut x = SpinCellPoint::base(n).x;
        x[0] = SpinCellPoint::sample(n, s, true).x.swap_remove(0);
        let k = 1 + s.below(pair_count(n) as usize);
        x[0][k - 1] = SpherePoint::new(Rational::zero(), Gauss::one()).expect("boundary point");
        let g = spin_phi_representative(n, &x).expect("valid point");
        boundary_rejected(reconstruct_spin_phi(n, &g), |e| matches!(e, ReconError::Boundary(_)))
            .map_err(|d| SampleFailure::new(&x, d))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_points_come_back() {
        for n in [1, 2] {
            let base = SpPhiPoint::base(n);
            let r = reconstruct_sp_phi(n, &phi_representative(n, &base).unwrap()).unwrap();
            assert!(r.is_exact());
            assert_eq!(r.point, base);
            assert_eq!(r.trace.len(), base.sphere_count());
            let base = SpCellPoint::base(n);
            let r = reconstruct_sp_psi(n, &psi_representative(n, &base).unwrap()).unwrap();
            assert!(r.is_exact());
            assert_eq!(r.point, base);
        }
        let base = SpinCellPoint::base(1);
        let r = reconstruct_spin_psi(1, &spin_psi_representative(1, &base).unwrap()).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.point, base);
    }

    #[test]
    fn sp_phi_round_trip() {
        for n in [1, 2] {
            let mut s = Sampler::new(40 + n as u64);
            for _ in 0..5 {
                let p = SpPhiPoint::sample(n, &mut s, true);
                let r = reconstruct_sp_phi(n, &phi_representative(n, &p).unwrap()).unwrap();
                assert!(r.is_exact());
                assert_eq!(r.point, p);
                assert_eq!(r.trace.len(), p.sphere_count());
            }
        }
    }

    #[test]
    fn single_spin_block_round_trip() {
        let mut s = Sampler::new(5);
        let mut x = SpinCellPoint::base(1).x;
        x[0] = SpinCellPoint::sample(1, &mut s, true).x[0].clone();
        let r = reconstruct_spin_phi(1, &spin_phi_representative(1, &x).unwrap()).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.point, x);
    }

    #[test]
    fn wrong_size_is_a_shape_error() {
        assert!(matches!(reconstruct_sp_phi(2, &QMatrix::identity(5)), Err(ReconError::Shape(_))));
        assert!(matches!(reconstruct_spin_phi(2, &Clifford::one(6)), Err(ReconError::Shape(_))));
    }
}
