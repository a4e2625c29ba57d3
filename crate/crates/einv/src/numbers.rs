//! Bernoulli numbers, the e-invariant values in ℚ/ℤ, the Chern pairing
//! `⟨(x_1 + … + x_N)^N, [S² × … × S²]⟩ = N!`, and the dimension bookkeeping
//! of both families.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::arith::{rat_string, Rational};
use crate::report::{ser_rat, CheckRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumbersError {
    #[error("n must be positive")]
    ZeroN,
    #[error("index must be positive")]
    ZeroIndex,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Grows on demand; shared so that repeated lookups do not redo the O(k²)
/// recurrence.
fn table() -> &'static Mutex<Vec<Rational>> {
    static T: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// `B_k` with `B_1 = -1/2`, from `Σ_{j≤k} C(k+1, j) B_j = 0`.
pub fn bernoulli(k: usize) -> Rational {
    let mut t = table().lock().expect("bernoulli table poisoned");
    while t.len() <= k {
        let m = t.len();
        let s: Rational = t
            .iter()
            .enumerate()
            .map(|(j, b)| b * Rational::from_integer(binomial(m as u64 + 1, j as u64)))
            .sum();
        t.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    t[k].clone()
}

/// `B_l = |B_{2l}|` in the indexing used for e-values, so `B_1 = 1/6`, `B_2 = 1/30`.
pub fn bernoulli_abs(l: usize) -> Result<Rational, NumbersError> {
    if l == 0 {
        return Err(NumbersError::ZeroIndex);
    }
    Ok(bernoulli(2 * l).abs())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `B_{2l} + Σ_{(p-1) | 2l} 1/p` is an integer.
pub fn von_staudt_clausen(l: usize) -> bool {
    let k = 2 * l as u64;
    let s: Rational = (2..=k + 1)
        .filter(|&p| is_prime(p) && k % (p - 1) == 0)
        .map(|p| Rational::new(BigInt::one(), BigInt::from(p)))
        .sum();
    (bernoulli(2 * l) + s).is_integer()
}

/// Checks the defining recurrence at every index up to `k`.
pub fn recurrence_holds(k: usize) -> bool {
    bernoulli(k);
    (1..=k).all(|m| {
        let s: Rational =
            (0..=m).map(|j| bernoulli(j) * Rational::from_integer(binomial(m as u64 + 1, j as u64))).sum();
        s.is_zero()
    })
}

/// A point of ℚ/ℤ, stored in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QModZ(Rational);

impl QModZ {
    pub fn new(q: &Rational) -> Self {
        QModZ(q - q.floor())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Serialize for QModZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json!({ "value": rat_string(&self.0), "order": self.order().to_string() }).serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sp,
    Spin,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::Spin => "spin",
        }
    }
}

/// `Sp(4n+1)` or `Spin(8n-2)` with the numbers attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub n: u64,
    pub l: u64,
    pub dim: u64,
    pub twist_count: u64,
}

impl FamilyParams {
    pub fn new(family: Family, n: u64) -> Result<Self, NumbersError> {
        if n == 0 {
            return Err(NumbersError::ZeroN);
        }
        let (l, twist_count) = match family {
            Family::Sp => (8 * n * n + 5 * n + 1, 2 * n),
            Family::Spin => (8 * n * n - 5 * n + 1, 2 * n - 1),
        };
        Ok(FamilyParams { family, n, l, dim: 4 * l - 1, twist_count })
    }

    /// Size of the matrices or of the Clifford algebra: `4n+1` or `8n-2`.
    pub fn group_rank(&self) -> u64 {
        match self.family {
            Family::Sp => 4 * self.n + 1,
            Family::Spin => 8 * self.n - 2,
        }
    }

    /// `dim Sp(m) = m(2m+1)`, `dim Spin(m) = m(m-1)/2`.
    pub fn classical_dim(&self) -> u64 {
        let m = self.group_rank();
        match self.family {
            Family::Sp => m * (2 * m + 1),
            Family::Spin => m * (m - 1) / 2,
        }
    }

    /// Exponents of the Hopf-bundle factors over the cells: spheres, tori,
    /// spheres for `Sp`; tori, spheres for `Spin`.
    pub fn exponent_parts(&self) -> Vec<(&'static str, u64)> {
        let n = self.n;
        match self.family {
            Family::Sp => vec![("spheres", 16 * n * n + 4 * n), ("tori", 2 * n), ("diagonal spheres", 4 * n + 1)],
            Family::Spin => vec![("tori", 2 * n - 1), ("spheres", 16 * n * n - 12 * n + 2)],
        }
    }

    pub fn total_exponent(&self) -> u64 {
        self.exponent_parts().iter().map(|(_, e)| e).sum()
    }
}

/// `(-1)^n B_l / 2l` in ℚ/ℤ.
pub fn e_value(p: &FamilyParams) -> QModZ {
    let b = bernoulli_abs(p.l as usize).expect("l >= 1");
    let v = b / Rational::from_integer(BigInt::from(2 * p.l));
    QModZ::new(&if p.n % 2 == 1 { -v } else { v })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdamsReference {
    #[serde(serialize_with = "ser_rat")]
    pub over_2l: Rational,
    pub den_2l: String,
    #[serde(serialize_with = "ser_rat")]
    pub over_4l: Rational,
    pub den_4l: String,
}

/// `B_l/2l` and `B_l/4l` side by side, for comparing orders.
pub fn adams_reference(l: u64) -> Result<AdamsReference, NumbersError> {
    let b = bernoulli_abs(l as usize)?;
    let over_2l = &b / Rational::from_integer(BigInt::from(2 * l));
    let over_4l = &b / Rational::from_integer(BigInt::from(4 * l));
    Ok(AdamsReference {
        den_2l: over_2l.denom().to_string(),
        den_4l: over_4l.denom().to_string(),
        over_2l,
        over_4l,
    })
}

/// `(x_1 + … + x_N)^N` in `ℤ[x_1..x_N]/(x_i²)`, as coefficients indexed by
/// the subset of variables in each monomial.
fn expand_power(vars: u32) -> Vec<BigInt> {
    let size = 1usize << vars;
    let mut poly = vec![BigInt::zero(); size];
    poly[0] = BigInt::one();
    for _ in 0..vars {
        let mut next = vec![BigInt::zero(); size];
        for (mask, c) in poly.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for i in 0..vars {
                if mask >> i & 1 == 0 {
                    next[mask | 1 << i] += c;
                }
            }
        }
        poly = next;
    }
    poly
}

/// `⟨(x_1 + … + x_N)^N, [product of N 2-cycles]⟩` by expansion: the
/// coefficient of `x_1 ⋯ x_N`.
pub fn chern_pairing(big_n: u32) -> BigInt {
    if big_n == 0 {
        return BigInt::one();
    }
    expand_power(big_n).pop().expect("nonempty")
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts.iter().fold(factorial(total), |acc, &a| acc / factorial(a))
}

/// Pairing over a product split into blocks of sizes `parts` equals the
/// multinomial coefficient times the product of the blockwise pairings.
pub fn factorization_holds(parts: &[u32]) -> bool {
    let total: u32 = parts.iter().sum();
    let blockwise = parts.iter().fold(BigInt::one(), |acc, &a| acc * chern_pairing(a));
    let parts64: Vec<u64> = parts.iter().map(|&a| a as u64).collect();
    chern_pairing(total) == multinomial(&parts64) * blockwise
}

/// All partitions of `n` in nonincreasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=n.min(max)).rev() {
            cur.push(a);
            go(n - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The entry of the report's `families` array.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub group: String,
    pub dim_classical: u64,
    pub exponent_parts: BTreeMap<&'static str, u64>,
    pub total_exponent: u64,
    pub dim_quotient: u64,
    /// `N!` for `N` the total exponent, the pairing that enters the e-value.
    pub chern_pairing: String,
    pub e_value: QModZ,
    pub adams_reference: AdamsReference,
    pub bernoulli_convention: &'static str,
}

pub fn family_report(p: &FamilyParams) -> FamilyReport {
    let group = match p.family {
        Family::Sp => format!("Sp({})", p.group_rank()),
        Family::Spin => format!("Spin({})", p.group_rank()),
    };
    FamilyReport {
        params: p.clone(),
        group,
        dim_classical: p.classical_dim(),
        exponent_parts: p.exponent_parts().into_iter().collect(),
        total_exponent: p.total_exponent(),
        dim_quotient: p.dim - 1,
        chern_pairing: factorial(p.total_exponent()).to_string(),
        e_value: e_value(p),
        adams_reference: adams_reference(p.l).expect("l >= 1"),
        bernoulli_convention: "B_l = |B_{2l}|, with B_1 = 1/6",
    }
}

fn anchor(f: Family) -> (&'static str, &'static str) {
    match f {
        Family::Sp => ("Theorem (i)", "Sec 3 proof"),
        Family::Spin => ("Theorem (ii)", "Sec 5 proof"),
    }
}

fn verdict_record(id: String, anchor: &str, ok: bool, detail: serde_json::Value) -> CheckRecord {
    CheckRecord::single(id, anchor, || if ok { Ok(detail) } else { Err(detail) })
}

/// Per-family number checks: dimensions, exponent bookkeeping, e-value.
pub fn family_records(p: &FamilyParams) -> Vec<CheckRecord> {
    let (thm, proof) = anchor(p.family);
    let pre = format!("numbers/{}/n={}", p.family.name(), p.n);
    let mut out = Vec::new();
    out.push(verdict_record(
        format!("{pre}/dimension"),
        "Sec 1",
        p.classical_dim() == p.dim,
        json!({ "paper": p.dim, "classical": p.classical_dim(), "l": p.l }),
    ));
    out.push(verdict_record(
        format!("{pre}/exponent-bookkeeping"),
        proof,
        2 * p.total_exponent() == p.dim - 1 && p.total_exponent() == 2 * p.l - 1,
        json!({ "total_exponent": p.total_exponent(), "dim_quotient": p.dim - 1, "l": p.l }),
    ));
    let e = e_value(p);
    let b = bernoulli_abs(p.l as usize).expect("l >= 1") / Rational::from_integer(BigInt::from(2 * p.l));
    out.push(verdict_record(
        format!("{pre}/e-value"),
        thm,
        !e.is_zero() && &e.order() == b.denom(),
        json!({ "e_value": &e, "bernoulli_abs_l": rat_string(&bernoulli_abs(p.l as usize).expect("l >= 1")) }),
    ));
    let refs = adams_reference(p.l).expect("l >= 1");
    out.push(verdict_record(
        format!("{pre}/adams-reference"),
        thm,
        den_relation_holds(&refs),
        json!({ "e_value_order": e.order().to_string(), "reference": &refs }),
    ));
    out.push(verdict_record(
        format!("{pre}/bernoulli-cross-check"),
        thm,
        recurrence_holds(2 * p.l as usize) && (1..=p.l as usize).all(von_staudt_clausen),
        json!({ "checked_up_to_index": 2 * p.l }),
    ));
    out
}

/// `chern_pairing(N) = N!` and the multinomial factorization over every
/// partition of `N`, for `N ≤ max`.
pub fn pairing_records(max: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for big_n in 1..=max {
        let got = chern_pairing(big_n);
        let want = factorial(big_n as u64);
        out.push(verdict_record(
            format!("pairing/N={big_n:02}"),
            "Sec 3 proof",
            got == want,
            json!({ "expansion": got.to_string(), "factorial": want.to_string() }),
        ));
        let parts = partitions(big_n);
        let bad: Vec<&Vec<u32>> = parts.iter().filter(|p| !factorization_holds(p)).collect();
        out.push(verdict_record(
            format!("pairing/N={big_n:02}/factorization"),
            "Sec 3 proof",
            bad.is_empty(),
            json!({ "partitions": parts.len(), "failing": bad }),
        ));
    }
    out
}

/// The denominator of `B_l/2l` divides twice that of `B_l/4l`.
pub fn den_relation_holds(r: &AdamsReference) -> bool {
    let d2: BigInt = r.over_2l.denom().clone();
    let d4: BigInt = r.over_4l.denom().clone();
    (&d4 * BigInt::from(2)).is_multiple_of(&d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli_abs(1).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_abs(4).unwrap(), rat(1, 30));
        assert_eq!(bernoulli_abs(0), Err(NumbersError::ZeroIndex));
        assert!(recurrence_holds(40));
        assert!((1..=20).all(von_staudt_clausen));
    }

    #[test]
    fn qmodz_reduces() {
        let q = QModZ::new(&rat(-1, 240));
        assert_eq!(q.value(), &rat(239, 240));
        assert_eq!(q.order(), BigInt::from(240));
        assert!(QModZ::new(&rat(3, 1)).is_zero());
        assert_eq!(QModZ::new(&rat(3, 1)).order(), BigInt::one());
    }

    #[test]
    fn params() {
        let p = FamilyParams::new(Family::Sp, 1).unwrap();
        assert_eq!((p.l, p.dim, p.twist_count, p.total_exponent()), (14, 55, 2, 27));
        let p = FamilyParams::new(Family::Spin, 1).unwrap();
        assert_eq!((p.l, p.dim, p.twist_count, p.total_exponent()), (4, 15, 1, 7));
        assert!(FamilyParams::new(Family::Sp, 0).is_err());
    }

    #[test]
    fn pairing_small() {
        assert_eq!(chern_pairing(1), BigInt::one());
        assert_eq!(chern_pairing(3), BigInt::from(6));
        assert_eq!(chern_pairing(5), BigInt::from(120));
        assert!(factorization_holds(&[2, 2, 1]));
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn adams_denominators() {
        let r = adams_reference(4).unwrap();
        assert_eq!((r.den_2l.as_str(), r.den_4l.as_str()), ("240", "480"));
        let r = adams_reference(1).unwrap();
        assert_eq!((r.den_2l.as_str(), r.den_4l.as_str()), ("12", "24"));
        assert!(den_relation_holds(&r));
    }
}
