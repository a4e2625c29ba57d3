//! Pushing the phase circles `d(x_{i;k})` through the block products and
//! absorbing them, one factor at a time from the right.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::identities::{compare, Mismatch, Reading};
use super::{d_diag, family_n, product, r_complex, r_quat, r_sup, Factor, Kind, QMatrix, SpError};
use crate::arith::{Gauss, Rational, UnitCircle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error(transparent)]
    Sp(#[from] SpError),
    #[error("normalized product differs from the original: {0:?}")]
    NotEqual(Box<Mismatch>),
    #[error("no exact root: factor {index} needs a phase c with c^{exp} = {target}")]
    NoExactRoot { index: usize, exp: u32, target: Gauss },
}

/// One `R^{i}_k(r x, w)` factor together with its phase `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFactor {
    pub kind: Kind,
    pub k: usize,
    pub i: usize,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub r: Rational,
    pub w: Gauss,
    pub phase: UnitCircle,
}

/// Left side of the normalization: the factors in product order, followed
/// by `d(phase)` for each of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaInput {
    pub dim: usize,
    pub factors: Vec<LemmaFactor>,
}

/// An absorbed block `R_{i;k}(r, w·monomial)`. `monomial` maps a factor
/// index (the phase variable of that factor) to its exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedBlock {
    pub kind: Kind,
    pub k: usize,
    pub i: usize,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub r: Rational,
    pub w: Gauss,
    pub monomial: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub matrix: QMatrix,
    pub blocks: Vec<NormalizedBlock>,
}

impl LemmaInput {
    /// All complex blocks (k ascending, then i), then all quaternionic ones.
    pub fn for_cells(
        n: usize,
        x: &[Vec<(Rational, Gauss)>],
        y: &[Vec<(Rational, Gauss)>],
        xph: &[Vec<UnitCircle>],
        yph: &[Vec<UnitCircle>],
    ) -> Self {
        let dim = 4 * n + 1;
        let mut factors = Vec::new();
        for (kind, pts, ph) in [(Kind::Complex, x, xph), (Kind::Quaternionic, y, yph)] {
            for (k, blk) in pts.iter().enumerate() {
                for (i, (r, w)) in blk.iter().enumerate() {
                    factors.push(LemmaFactor {
                        kind,
                        k,
                        i: i + 1,
                        r: r.clone(),
                        w: w.clone(),
                        phase: ph[k][i].clone(),
                    });
                }
            }
        }
        LemmaInput { dim, factors }
    }

    /// The left side as a matrix, multiplied out directly.
    pub fn lhs(&self) -> Result<QMatrix, SpError> {
        let mut fs = Vec::new();
        for f in &self.factors {
            fs.extend(r_sup(f.kind, self.dim, f.k, f.i, &f.r, &f.w, &f.phase)?);
        }
        for f in &self.factors {
            fs.push(Factor::Diag(d_diag(self.dim, &f.phase)));
        }
        Ok(product(self.dim, &fs))
    }
}

/// Exponent picked up by the `w` of a block when `d(x)` moves from its
/// right to its left: `R d(x) = d(x) R'`.
fn crossing_exponent(kind: Kind, k: usize, n: usize) -> i64 {
    let n = n as i64;
    match (kind, k) {
        (Kind::Complex, 0) => 4 * n + 1,
        (Kind::Complex, _) => 0,
        (Kind::Quaternionic, 0) => -(4 * n - 1),
        (Kind::Quaternionic, _) => 2,
    }
}

/// Exponent of a block's own phase after absorbing its `d(x)`.
fn own_exponent(kind: Kind, i: usize) -> i64 {
    match kind {
        Kind::Complex => i as i64,
        Kind::Quaternionic => -(i as i64),
    }
}

fn monomials(input: &LemmaInput, n: usize) -> Vec<BTreeMap<usize, i64>> {
    let m = input.factors.len();
    let mut out = vec![BTreeMap::new(); m];
    // d-factors are taken right to left: the last block absorbs its own
    // d(x) first and every earlier d(x) then crosses it
    for j in (0..m).rev() {
        let f = &input.factors[j];
        out[j].insert(j, own_exponent(f.kind, f.i));
        let e = crossing_exponent(f.kind, f.k, n);
        if e != 0 {
            for l in 0..j {
                *out[j].entry(l).or_insert(0) += e;
            }
        }
        out[j].retain(|_, e| *e != 0);
    }
    out
}

fn eval_monomial(input: &LemmaInput, mono: &BTreeMap<usize, i64>) -> Gauss {
    mono.iter().fold(Gauss::one(), |acc, (&l, &e)| &acc * input.factors[l].phase.pow(e).value())
}

fn block_factor(dim: usize, b: &NormalizedBlock) -> Result<Factor, SpError> {
    let a = Gauss::real(b.r.clone());
    Ok(Factor::Block(match b.kind {
        Kind::Complex => r_complex(dim, b.k, b.i, &a, &b.w)?,
        Kind::Quaternionic => r_quat(dim, b.k, b.i, &a, &b.w)?,
    }))
}

/// The absorbed `w·monomial` of every factor, without forming any product.
pub fn absorbed_values(input: &LemmaInput) -> Result<Vec<Gauss>, LemmaError> {
    let n = family_n(input.dim)?;
    Ok(input.factors.iter().zip(monomials(input, n)).map(|(f, mono)| &f.w * &eval_monomial(input, &mono)).collect())
}

/// Moves every `d(x)` to the left and absorbs it, returning the product of
/// the absorbed blocks and the monomial attached to each. Fails if the
/// result differs from the left side multiplied out directly.
pub fn lemma21_normalize(input: &LemmaInput) -> Result<Normalized, LemmaError> {
    let n = family_n(input.dim)?;
    let monos = monomials(input, n);
    let mut blocks = Vec::with_capacity(monos.len());
    for (f, mono) in input.factors.iter().zip(monos) {
        let w = &f.w * &eval_monomial(input, &mono);
        blocks.push(NormalizedBlock { kind: f.kind, k: f.k, i: f.i, r: f.r.clone(), w, monomial: mono });
    }
    let fs = blocks.iter().map(|b| block_factor(input.dim, b)).collect::<Result<Vec<_>, _>>()?;
    let matrix = product(input.dim, &fs);
    compare("normalized product", &matrix, &input.lhs()?).map_err(|m| LemmaError::NotEqual(Box::new(m)))?;
    Ok(Normalized { matrix, blocks })
}

/// Re-chooses the phases of the factors with `r = 0` so that their absorbed
/// blocks become `R_{i;k}(0, 1)` (complex) or `R_{i;k}(0, j)`. Each phase is
/// an exact root found in Q(i); if none exists the conversion fails.
pub fn convert_boundary_phases(input: &LemmaInput) -> Result<LemmaInput, LemmaError> {
    let n = family_n(input.dim)?;
    let mut out = input.clone();
    for j in 0..out.factors.len() {
        if !out.factors[j].r.is_zero() {
            continue;
        }
        let mono = &monomials(&out, n)[j];
        let mut rest = mono.clone();
        rest.remove(&j);
        let f = &out.factors[j];
        let known = &f.w * &eval_monomial(&out, &rest);
        // complex: w·m·c^i = 1, so c^i = conj(w·m); quaternionic: w·m·conj(c)^i = 1, so c^i = w·m
        let target = match f.kind {
            Kind::Complex => known.conj(),
            Kind::Quaternionic => known,
        };
        let exp = f.i as u32;
        let t = UnitCircle::new(target.clone()).map_err(|_| LemmaError::NoExactRoot { index: j, exp, target: target.clone() })?;
        if out.factors[j].phase.pow(exp as i64) == t {
            continue;
        }
        let c = UnitCircle::root(&t, exp).ok_or(LemmaError::NoExactRoot { index: j, exp, target })?;
        out.factors[j].phase = c;
    }
    Ok(out)
}

/// One block `k` of one kind, with its own phases `z_1..z_{n_k}`:
/// `R_k(r_i z_i, w_i) d(z_1)...d(z_{n_k})` against the displayed product of
/// absorbed blocks. As printed, the quaternionic monomials are
/// `(conj z_1...conj z_{i-1})^{8n}` for `k = 0` and `(conj ...)^2` for
/// `k >= 1`; the exact ones are `(conj ...)^{4n-1}` and `(z_1...z_{i-1})^2`.
pub fn block_normalize_printed(
    kind: Kind,
    reading: Reading,
    dim: usize,
    k: usize,
    r: &[Rational],
    w: &[Gauss],
    z: &[UnitCircle],
) -> Result<(), Mismatch> {
    let n = family_n(dim)? as i64;
    let nk = dim - 1 - k;
    if r.len() != nk || w.len() != nk || z.len() != nk {
        return Err(SpError::Dimension(r.len(), nk).into());
    }
    let input = LemmaInput {
        dim,
        factors: (0..nk)
            .map(|t| LemmaFactor { kind, k, i: t + 1, r: r[t].clone(), w: w[t].clone(), phase: z[t].clone() })
            .collect(),
    };
    let lhs = input.lhs()?;
    let mut fs = Vec::with_capacity(nk);
    for t in 0..nk {
        let i = t as i64 + 1;
        let prefix = z[..t].iter().fold(UnitCircle::one(), |a, c| a.mul(c));
        let (pre, own) = match (kind, k, reading) {
            (Kind::Complex, 0, _) => (prefix.pow(4 * n + 1), z[t].pow(i)),
            (Kind::Complex, _, _) => (UnitCircle::one(), z[t].pow(i)),
            (Kind::Quaternionic, 0, Reading::AsPrinted) => (prefix.conj().pow(8 * n), z[t].conj().pow(i)),
            (Kind::Quaternionic, 0, Reading::Exact) => (prefix.conj().pow(4 * n - 1), z[t].conj().pow(i)),
            (Kind::Quaternionic, _, Reading::AsPrinted) => (prefix.conj().pow(2), z[t].conj().pow(i)),
            (Kind::Quaternionic, _, Reading::Exact) => (prefix.pow(2), z[t].conj().pow(i)),
        };
        let b = NormalizedBlock {
            kind,
            k,
            i: t + 1,
            r: r[t].clone(),
            w: &(&w[t] * pre.value()) * own.value(),
            monomial: BTreeMap::new(),
        };
        fs.push(block_factor(dim, &b)?);
    }
    compare("block normalization", &lhs, &product(dim, &fs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Sampler, SphereFamily};

    fn random_input(n: usize, s: &mut Sampler, interior: bool) -> LemmaInput {
        let nk = |k: usize| 4 * n - k;
        let pts = |s: &mut Sampler| -> Vec<Vec<(Rational, Gauss)>> {
            (0..4 * n)
                .map(|k| (0..nk(k)).map(|_| s.sphere(SphereFamily::Complex, interior)).map(|p| (p.r, p.w)).collect())
                .collect()
        };
        let phs = |s: &mut Sampler| -> Vec<Vec<UnitCircle>> {
            (0..4 * n).map(|k| (0..nk(k)).map(|_| s.circle()).collect()).collect()
        };
        let (x, y) = (pts(s), pts(s));
        let (xp, yp) = (phs(s), phs(s));
        LemmaInput::for_cells(n, &x, &y, &xp, &yp)
    }

    #[test]
    fn trivial_phases_give_trivial_monomials() {
        let mut s = Sampler::new(1);
        let mut input = random_input(1, &mut s, true);
        for f in &mut input.factors {
            f.phase = UnitCircle::one();
        }
        let out = lemma21_normalize(&input).unwrap();
        for (b, f) in out.blocks.iter().zip(&input.factors) {
            assert_eq!(b.w, f.w);
        }
    }

    #[test]
    fn normalization_preserves_the_product() {
        let mut s = Sampler::new(2);
        let input = random_input(1, &mut s, false);
        let out = lemma21_normalize(&input).unwrap();
        assert_eq!(out.matrix, input.lhs().unwrap());
        // the first complex block only sees its own phase
        assert_eq!(out.blocks[0].monomial, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn boundary_blocks_convert_to_unit_entries() {
        let mut s = Sampler::new(3);
        for j in [1usize, 5, 12, 17] {
            let mut input = random_input(1, &mut s, true);
            input.factors[j].r = int(0);
            let mut rest = monomials(&input, 1)[j].clone();
            rest.remove(&j);
            let m = eval_monomial(&input, &rest);
            let c = s.circle();
            let f = &input.factors[j];
            let own = match f.kind {
                Kind::Complex => c.pow(f.i as i64),
                Kind::Quaternionic => c.conj().pow(f.i as i64),
            };
            input.factors[j].w = &m.conj() * &own.conj().value().clone();
            let conv = convert_boundary_phases(&input).unwrap();
            let out = lemma21_normalize(&conv).unwrap();
            assert_eq!(out.blocks[j].w, Gauss::one(), "block {j}");
        }
    }

    #[test]
    fn boundary_without_root_is_an_error() {
        let mut s = Sampler::new(5);
        let mut input = random_input(1, &mut s, true);
        // block i = 2 of k = 0 needs a square root of a non-square
        input.factors[1].r = int(0);
        input.factors[0].phase = UnitCircle::one();
        input.factors[1].w = Gauss::new(Rational::new(3.into(), 5.into()), Rational::new((-4).into(), 5.into()));
        assert!(matches!(convert_boundary_phases(&input), Err(LemmaError::NoExactRoot { index: 1, exp: 2, .. })));
    }

    #[test]
    fn printed_block_monomials() {
        let mut s = Sampler::new(4);
        for k in [0usize, 1] {
            let nk = 4 - k;
            let (r, w): (Vec<_>, Vec<_>) =
                (0..nk).map(|_| s.sphere(SphereFamily::Complex, true)).map(|p| (p.r, p.w)).unzip();
            let z: Vec<_> = (0..nk).map(|_| s.circle_not_one()).collect();
            for reading in [Reading::AsPrinted, Reading::Exact] {
                assert_eq!(block_normalize_printed(Kind::Complex, reading, 5, k, &r, &w, &z), Ok(()));
            }
            assert_eq!(block_normalize_printed(Kind::Quaternionic, Reading::Exact, 5, k, &r, &w, &z), Ok(()));
        }
    }
}
