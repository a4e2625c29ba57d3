//! The block-product identities: closed forms of `∏_i R_{i;k}`, the absorption
//! of the diagonal factors, and the commutation rules with `d(x)`.

use num_traits::One;
use serde::Serialize;

use super::{
    make_d, make_d_bar, product, r_complex, r_quat, r_sup, Factor, Kind, QMatrix, SpError,
};
use crate::arith::{Gauss, Quat, Rational, UnitCircle};

/// First disagreement between two sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub what: String,
    pub entry: Option<(usize, usize)>,
    pub expected: Option<Quat>,
    pub got: Option<Quat>,
}

impl From<SpError> for Mismatch {
    fn from(e: SpError) -> Self {
        Mismatch { what: e.to_string(), entry: None, expected: None, got: None }
    }
}

pub(crate) fn compare(what: &str, got: &QMatrix, expected: &QMatrix) -> Result<(), Mismatch> {
    match got.first_difference(expected) {
        None => Ok(()),
        Some((i, j)) if got.dim() == expected.dim() => Err(Mismatch {
            what: what.to_string(),
            entry: Some((i, j)),
            expected: Some(expected.get(i, j).clone()),
            got: Some(got.get(i, j).clone()),
        }),
        Some(_) => Err(SpError::Dimension(got.dim(), expected.dim()).into()),
    }
}

/// Whether to evaluate a formula as printed or in its corrected form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    AsPrinted,
    Exact,
}

fn prod_r(r: &[Rational], from: usize, to: usize) -> Rational {
    // r is 1-based through r[i-1]; product of r_from..=r_to, empty = 1
    (from..=to).fold(Rational::one(), |acc, l| acc * &r[l - 1])
}

fn check_len(nk: usize, r: &[Rational], w: &[Gauss]) -> Result<(), SpError> {
    if r.len() != nk || w.len() != nk {
        return Err(SpError::Dimension(r.len().max(w.len()), nk));
    }
    Ok(())
}

/// The entries `a_{l,m;k}` of `∏_i R_{i;k}(r_i z, u_i)` written out.
pub fn complex_block_closed(
    dim: usize,
    k: usize,
    r: &[Rational],
    u: &[Gauss],
    z: &UnitCircle,
) -> Result<QMatrix, SpError> {
    let nk = dim - 1 - k;
    check_len(nk, r, u)?;
    let zp = |e: usize| z.pow(e as i64).value().clone();
    let mut m = QMatrix::identity(dim);
    let mut put = |l: usize, c: usize, g: Gauss| m.set(k + l, k + c, Quat::complex(g));
    put(0, 0, zp(nk).scale(&prod_r(r, 1, nk)));
    for l in 1..=nk {
        put(l, 0, -(&u[l - 1].conj() * &zp(nk - l)).scale(&prod_r(r, l + 1, nk)));
        put(0, l, (&u[l - 1] * &zp(l - 1)).scale(&prod_r(r, 1, l - 1)));
        put(l, l, z.conj().value().scale(&r[l - 1]));
        for c in (l + 1)..=nk {
            let e = -(&(&u[l - 1].conj() * &u[c - 1]) * &zp(c - l - 1)).scale(&prod_r(r, l + 1, c - 1));
            put(l, c, e);
        }
        for c in 1..l {
            put(l, c, Gauss::zero());
        }
    }
    Ok(m)
}

/// The entries `b_{l,m;k}` of `∏_i R_{i;k}(s_i z, j v_i)`. The printed
/// first column carries `conj(v_l)` where the product has `v_l`.
pub fn quat_block_closed(
    dim: usize,
    k: usize,
    s: &[Rational],
    v: &[Gauss],
    z: &UnitCircle,
    reading: Reading,
) -> Result<QMatrix, SpError> {
    let nk = dim - 1 - k;
    check_len(nk, s, v)?;
    let zp = |e: usize| z.pow(e as i64).value().clone();
    let zbp = |e: usize| z.conj().pow(e as i64).value().clone();
    let mut m = QMatrix::identity(dim);
    m.set(k, k, Quat::complex(zp(nk).scale(&prod_r(s, 1, nk))));
    for l in 1..=nk {
        let vl = match reading {
            Reading::AsPrinted => v[l - 1].conj(),
            Reading::Exact => v[l - 1].clone(),
        };
        m.set(k + l, k, Quat::j_times((&vl * &zp(nk - l)).scale(&prod_r(s, l + 1, nk))));
        m.set(k, k + l, Quat::j_times((&v[l - 1] * &zbp(l - 1)).scale(&prod_r(s, 1, l - 1))));
        m.set(k + l, k + l, Quat::complex(z.value().scale(&s[l - 1])));
        for c in (l + 1)..=nk {
            let e = -(&(&v[l - 1].conj() * &v[c - 1]) * &zbp(c - l - 1)).scale(&prod_r(s, l + 1, c - 1));
            m.set(k + l, k + c, Quat::complex(e));
        }
        for c in 1..l {
            m.set(k + l, k + c, Quat::zero());
        }
    }
    Ok(m)
}

fn block_product(kind: Kind, dim: usize, k: usize, a: &[Gauss], w: &[Gauss]) -> Result<QMatrix, SpError> {
    let mut fs = Vec::with_capacity(a.len());
    for (i, (ai, wi)) in a.iter().zip(w).enumerate() {
        let b = match kind {
            Kind::Complex => r_complex(dim, k, i + 1, ai, wi)?,
            Kind::Quaternionic => r_quat(dim, k, i + 1, ai, wi)?,
        };
        fs.push(Factor::Block(b));
    }
    Ok(product(dim, &fs))
}

/// The block product with every radius multiplied by `z`, times
/// `diag(1 (k times), conj(z)^{n_k}, z or conj(z), ...)`, equals the block
/// product with the phases moved onto `w_i`. Also checks the closed-form
/// entries of the unabsorbed product.
pub fn check_eq_2_1(
    kind: Kind,
    dim: usize,
    k: usize,
    r: &[Rational],
    w: &[Gauss],
    z: &UnitCircle,
) -> Result<(), Mismatch> {
    let nk = dim - 1 - k;
    check_len(nk, r, w)?;
    let az: Vec<Gauss> = r.iter().map(|ri| z.value().scale(ri)).collect();
    let raw = block_product(kind, dim, k, &az, w)?;
    let closed = match kind {
        Kind::Complex => complex_block_closed(dim, k, r, w, z)?,
        Kind::Quaternionic => quat_block_closed(dim, k, r, w, z, Reading::Exact)?,
    };
    compare("closed-form entries", &raw, &closed)?;

    let tail = match kind {
        Kind::Complex => z.clone(),
        Kind::Quaternionic => z.conj(),
    };
    let mut diag = vec![Gauss::one(); dim];
    diag[k] = z.conj().pow(nk as i64).value().clone();
    for e in diag.iter_mut().skip(k + 1) {
        *e = tail.value().clone();
    }
    let lhs = &raw * &QMatrix::from_complex_diag(&diag);
    let ar: Vec<Gauss> = r.iter().cloned().map(Gauss::real).collect();
    let wz: Vec<Gauss> = w.iter().enumerate().map(|(i, wi)| wi * tail.pow(i as i64 + 1).value()).collect();
    let rhs = block_product(kind, dim, k, &ar, &wz)?;
    compare("absorbed product", &lhs, &rhs)
}

/// The printed closed form of the quaternionic first column, on its own.
pub fn check_quat_closed_printed(dim: usize, k: usize, s: &[Rational], v: &[Gauss], z: &UnitCircle) -> Result<(), Mismatch> {
    let az: Vec<Gauss> = s.iter().map(|si| z.value().scale(si)).collect();
    let raw = block_product(Kind::Quaternionic, dim, k, &az, v)?;
    compare("printed closed-form entries", &raw, &quat_block_closed(dim, k, s, v, z, Reading::AsPrinted)?)
}

/// The product `R_k(r_i, w_i z^i)` (or `(s_i, j v_i conj(z)^i)`) has the
/// displayed shape: identity on the first `k` rows, the stated first
/// column, zeros below the diagonal after it, and for the quaternionic
/// kind the stated first row and diagonal with `j` only in row/column `k`.
pub fn check_underlined(
    kind: Kind,
    dim: usize,
    k: usize,
    r: &[Rational],
    w: &[Gauss],
    z: &UnitCircle,
) -> Result<(), Mismatch> {
    let nk = dim - 1 - k;
    check_len(nk, r, w)?;
    let ph = match kind {
        Kind::Complex => z.clone(),
        Kind::Quaternionic => z.conj(),
    };
    let ar: Vec<Gauss> = r.iter().cloned().map(Gauss::real).collect();
    let wz: Vec<Gauss> = w.iter().enumerate().map(|(i, wi)| wi * ph.pow(i as i64 + 1).value()).collect();
    let m = block_product(kind, dim, k, &ar, &wz)?;

    let mut want = m.clone();
    let zb = |e: usize| z.conj().pow(e as i64).value().clone();
    for a in 0..dim {
        for b in 0..dim {
            if a < k || b < k {
                want.set(a, b, if a == b { Quat::one() } else { Quat::zero() });
            }
        }
    }
    for l in 1..=nk {
        for c in 1..l {
            want.set(k + l, k + c, Quat::zero());
        }
    }
    match kind {
        Kind::Complex => {
            want.set(k, k, Quat::complex(Gauss::real(prod_r(r, 1, nk))));
            for l in 1..=nk {
                let e = -(&w[l - 1].conj() * &zb(l)).scale(&prod_r(r, l + 1, nk));
                want.set(k + l, k, Quat::complex(e));
            }
            for a in k..dim {
                for b in k..dim {
                    let q = m.get(a, b);
                    if !q.is_complex() {
                        return Err(Mismatch {
                            what: "entry outside C".into(),
                            entry: Some((a, b)),
                            expected: None,
                            got: Some(q.clone()),
                        });
                    }
                }
            }
        }
        Kind::Quaternionic => {
            want.set(k, k, Quat::complex(Gauss::real(prod_r(r, 1, nk))));
            for l in 1..=nk {
                let col = (&w[l - 1] * &zb(l)).scale(&prod_r(r, l + 1, nk));
                want.set(k + l, k, Quat::j_times(col));
                let row = (&w[l - 1] * &zb(l)).scale(&prod_r(r, 1, l - 1));
                want.set(k, k + l, Quat::j_times(row));
                want.set(k + l, k + l, Quat::complex(Gauss::real(r[l - 1].clone())));
            }
            for a in (k + 1)..dim {
                for b in (k + 1)..dim {
                    let q = m.get(a, b);
                    if !q.is_complex() {
                        return Err(Mismatch {
                            what: "entry outside C".into(),
                            entry: Some((a, b)),
                            expected: None,
                            got: Some(q.clone()),
                        });
                    }
                }
            }
        }
    }
    compare("underlined form", &m, &want)
}

/// `R^{i}_k(r z, w)·d(z) = R_{i;k}(r, w z^i)`, and for the quaternionic
/// kind `R_{i;k}(s, j v conj(z)^i)`.
pub fn check_eq_2_4(
    kind: Kind,
    dim: usize,
    k: usize,
    i: usize,
    r: &Rational,
    w: &Gauss,
    z: &UnitCircle,
) -> Result<(), Mismatch> {
    let mut lhs = product(dim, &r_sup(kind, dim, k, i, r, w, z)?);
    lhs.mul_factor(&Factor::Diag(super::d_diag(dim, z)));
    let rhs = match kind {
        Kind::Complex => r_complex(dim, k, i, &Gauss::real(r.clone()), &(w * z.pow(i as i64).value()))?,
        Kind::Quaternionic => r_quat(dim, k, i, &Gauss::real(r.clone()), &(w * z.conj().pow(i as i64).value()))?,
    };
    compare("absorbed block", &lhs, &rhs.embed(dim))
}

/// The four commutation rules with `d(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `d(x) R_{i;0}(rz, u x^{4n+1}) = R_{i;0}(rz, u) d(x)`
    ComplexFirst,
    /// `d(x)` commutes with `R_{i;k}(rz, u)` for `k >= 1`
    ComplexLater,
    /// `dbar(x) R_{i;0}(sz, j v ·) = R_{i;0}(·, j v) dbar(x)`
    QuatFirst,
    /// `d(x) R_{i;k}(sz, j v ·) = R_{i;k}(sz, j v) d(x)` for `k >= 1`
    QuatLater,
}

impl Rule {
    pub fn applies_to(self, k: usize) -> bool {
        match self {
            Rule::ComplexFirst | Rule::QuatFirst => k == 0,
            Rule::ComplexLater | Rule::QuatLater => k >= 1,
        }
    }
}

/// One commutation rule at one sample. Printed readings: rule 1 reads the
/// printed base `a` as `x`; rule 3 uses `conj(x)^{8n}` and drops `z` on the
/// right; rule 4 uses `conj(x)^2`. Exact readings use `conj(x)^{4n+1}` with
/// `z` kept, and `x^2`.
#[allow(clippy::too_many_arguments)]
pub fn check_eq_2_5(
    rule: Rule,
    reading: Reading,
    dim: usize,
    k: usize,
    i: usize,
    r: &Rational,
    w: &Gauss,
    z: &UnitCircle,
    x: &UnitCircle,
) -> Result<(), Mismatch> {
    if !rule.applies_to(k) {
        return Err(SpError::Index(format!("{rule:?} does not apply at k = {k}")).into());
    }
    let n4 = dim as i64 - 1;
    let rz = z.value().scale(r);
    let (lhs, rhs) = match rule {
        Rule::ComplexFirst => {
            let l = &make_d(dim, x) * &r_complex(dim, k, i, &rz, &(w * x.pow(n4 + 1).value()))?.embed(dim);
            (l, &r_complex(dim, k, i, &rz, w)?.embed(dim) * &make_d(dim, x))
        }
        Rule::ComplexLater => {
            let b = r_complex(dim, k, i, &rz, w)?.embed(dim);
            (&make_d(dim, x) * &b, &b * &make_d(dim, x))
        }
        Rule::QuatFirst => {
            let (e, right_a) = match reading {
                Reading::AsPrinted => (2 * n4, Gauss::real(r.clone())),
                Reading::Exact => (n4 + 1, rz.clone()),
            };
            let l = &make_d_bar(dim, x) * &r_quat(dim, k, i, &rz, &(w * x.conj().pow(e).value()))?.embed(dim);
            (l, &r_quat(dim, k, i, &right_a, w)?.embed(dim) * &make_d_bar(dim, x))
        }
        Rule::QuatLater => {
            let tw = match reading {
                Reading::AsPrinted => x.conj().pow(2),
                Reading::Exact => x.pow(2),
            };
            let l = &make_d(dim, x) * &r_quat(dim, k, i, &rz, &(w * tw.value()))?.embed(dim);
            (l, &r_quat(dim, k, i, &rz, w)?.embed(dim) * &make_d(dim, x))
        }
    };
    compare("commutation rule", &lhs, &rhs)
}

/// `dbar(x) = diag(1, conj(x)^2, ..., conj(x)^2)·d(x)`.
pub fn check_bar_d(dim: usize, x: &UnitCircle) -> Result<(), Mismatch> {
    let mut c = vec![Gauss::one(); dim];
    for e in c.iter_mut().skip(1) {
        *e = x.conj().pow(2).value().clone();
    }
    let rhs = &QMatrix::from_complex_diag(&c) * &make_d(dim, x);
    compare("dbar factorization", &make_d_bar(dim, x), &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Sampler, SphereFamily};

    fn params(s: &mut Sampler, nk: usize) -> (Vec<Rational>, Vec<Gauss>) {
        (0..nk).map(|_| s.sphere(SphereFamily::Complex, false)).map(|p| (p.r, p.w)).unzip()
    }

    #[test]
    fn closed_form_entry_example() {
        // entry (1,0) of the complex product: -r_2...r_{n_k} conj(u_1) z^{n_k - 1}
        let mut s = Sampler::new(11);
        let z = s.circle();
        let (r, u) = params(&mut s, 4);
        let az: Vec<Gauss> = r.iter().map(|ri| z.value().scale(ri)).collect();
        let m = block_product(Kind::Complex, 5, 0, &az, &u).unwrap();
        let want = -(&u[0].conj() * z.pow(3).value()).scale(&(&r[1] * &r[2] * &r[3]));
        assert_eq!(m.get(1, 0), &Quat::complex(want));
    }

    #[test]
    fn all_radii_one_gives_the_diagonal() {
        let z = Sampler::new(5).circle();
        let r = vec![int(1); 3];
        let w = vec![Gauss::zero(); 3];
        assert_eq!(check_eq_2_1(Kind::Complex, 5, 1, &r, &w, &z), Ok(()));
        let az: Vec<Gauss> = r.iter().map(|ri| z.value().scale(ri)).collect();
        let m = block_product(Kind::Complex, 5, 1, &az, &w).unwrap();
        assert!(m.diagonal().is_some());
    }

    #[test]
    fn printed_quat_column_is_wrong_but_exact_is_right() {
        let mut s = Sampler::new(12);
        let z = s.circle_not_one();
        let (r, v) = params(&mut s, 3);
        let v: Vec<Gauss> = v.into_iter().map(|x| if x.is_real() { x * Gauss::new(int(3), int(4)).scale(&Rational::new(1.into(), 5.into())) } else { x }).collect();
        assert_eq!(check_eq_2_1(Kind::Quaternionic, 5, 1, &r, &v, &z), Ok(()));
        assert!(check_quat_closed_printed(5, 1, &r, &v, &z).is_err());
    }

    #[test]
    fn rules_exact_and_printed() {
        let mut s = Sampler::new(13);
        let z = s.circle();
        let x = Gauss::new(int(3), int(4)).scale(&Rational::new(1.into(), 5.into()));
        let x = UnitCircle::new(x).unwrap();
        let p = s.sphere(SphereFamily::Quaternionic, true);
        for reading in [Reading::AsPrinted, Reading::Exact] {
            assert_eq!(check_eq_2_5(Rule::ComplexFirst, reading, 5, 0, 2, &p.r, &p.w, &z, &x), Ok(()));
            assert_eq!(check_eq_2_5(Rule::ComplexLater, reading, 5, 1, 2, &p.r, &p.w, &z, &x), Ok(()));
        }
        assert_eq!(check_eq_2_5(Rule::QuatFirst, Reading::Exact, 5, 0, 3, &p.r, &p.w, &z, &x), Ok(()));
        assert_eq!(check_eq_2_5(Rule::QuatLater, Reading::Exact, 5, 2, 1, &p.r, &p.w, &z, &x), Ok(()));
        assert!(check_eq_2_5(Rule::QuatFirst, Reading::AsPrinted, 5, 0, 3, &p.r, &p.w, &z, &x).is_err());
        assert!(check_eq_2_5(Rule::QuatLater, Reading::AsPrinted, 5, 2, 1, &p.r, &p.w, &z, &x).is_err());
        assert!(check_eq_2_5(Rule::QuatLater, Reading::Exact, 5, 0, 1, &p.r, &p.w, &z, &x).is_err());
        assert_eq!(check_bar_d(9, &x), Ok(()));
    }

    #[test]
    fn trivial_x_makes_every_rule_hold() {
        let mut s = Sampler::new(14);
        let z = s.circle();
        let p = s.sphere(SphereFamily::Quaternionic, true);
        let one = UnitCircle::one();
        // the printed rule 3 also drops z on the right, so it still needs z = 1
        assert_eq!(check_eq_2_5(Rule::QuatLater, Reading::AsPrinted, 5, 1, 1, &p.r, &p.w, &z, &one), Ok(()));
        assert_eq!(check_eq_2_5(Rule::QuatFirst, Reading::AsPrinted, 5, 0, 1, &p.r, &p.w, &one, &one), Ok(()));
    }

    #[test]
    fn absorption_and_shape() {
        let mut s = Sampler::new(15);
        for k in 0..4 {
            let z = s.circle();
            let (r, w) = params(&mut s, 4 - k);
            for kind in [Kind::Complex, Kind::Quaternionic] {
                assert_eq!(check_eq_2_1(kind, 5, k, &r, &w, &z), Ok(()));
                assert_eq!(check_underlined(kind, 5, k, &r, &w, &z), Ok(()));
                for i in 1..=4 - k {
                    assert_eq!(check_eq_2_4(kind, 5, k, i, &r[i - 1], &w[i - 1], &z), Ok(()));
                }
            }
        }
    }
}
