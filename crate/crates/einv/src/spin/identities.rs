use serde::Serialize;

use super::{
    big_d_factors, chain_adjoint, check_intertwining, d_factors, make_x, make_z, pair_count, spin_dim,
    x_sup_factors, Clifford, SpinError,
};
use crate::arith::{Rational, UnitCircle};

/// Which sign convention to test in a twisted identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Eps {
    /// The convention printed with the identity.
    Paper,
    Plus,
    Minus,
}

impl Eps {
    pub const ALL: [Eps; 3] = [Eps::Paper, Eps::Plus, Eps::Minus];

    pub fn label(self) -> &'static str {
        match self {
            Eps::Paper => "paper",
            Eps::Plus => "+1",
            Eps::Minus => "-1",
        }
    }

    fn resolve(self, paper: i8) -> i8 {
        match self {
            Eps::Paper => paper,
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }
}

fn twist(eps: i8, theta: &UnitCircle) -> UnitCircle {
    if eps < 0 {
        theta.conj()
    } else {
        theta.clone()
    }
}

/// Outcome of comparing two product chains. Both chains were also checked
/// against their rotation matrices; a disagreement there is an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideBySide {
    pub equal: bool,
    /// The rotations agree, i.e. the two sides are equal up to sign.
    pub equal_up_to_sign: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

fn compare(n: u32, lhs: &[Clifford], rhs: &[Clifford]) -> Result<SideBySide, SpinError> {
    let big = spin_dim(n);
    let l = Clifford::product(big, lhs);
    let r = Clifford::product(big, rhs);
    let ml = chain_adjoint(big, lhs)?;
    let mr = chain_adjoint(big, rhs)?;
    for (side, g, m) in [("left", &l, &ml), ("right", &r, &mr)] {
        if let Err(j) = check_intertwining(g, m) {
            return Err(SpinError::NotSpin(format!("{side} chain disagrees with its rotation at e_{j}")));
        }
    }
    let equal = l == r;
    let equal_up_to_sign = ml == mr;
    if equal && !equal_up_to_sign {
        return Err(SpinError::NotSpin("equal products with different rotations".into()));
    }
    Ok(SideBySide { equal, equal_up_to_sign, lhs_terms: l.len(), rhs_terms: r.len() })
}

/// `x_{2m-1,2l,2l+1}(r,s;t,θ) d(t') = d(t') x_{2m-1,2l,2l+1}(r,s;t,εθ)`, with
/// the printed `ε = 1` for `m = 1` and `-1` otherwise.
#[allow(clippy::too_many_arguments)]
pub fn check_eq_4_1(
    n: u32,
    m: u32,
    l: u32,
    r: &Rational,
    s: &Rational,
    t: &UnitCircle,
    theta: &UnitCircle,
    t_prime: &UnitCircle,
    eps: Eps,
) -> Result<SideBySide, SpinError> {
    let big = spin_dim(n);
    let e = eps.resolve(if m == 1 { 1 } else { -1 });
    let d = d_factors(n, t_prime);
    let mut lhs = vec![make_x(big, m, l, r, s, t, theta)?];
    lhs.extend(d.iter().cloned());
    let mut rhs = d;
    rhs.push(make_x(big, m, l, r, s, t, &twist(e, theta))?);
    compare(n, &lhs, &rhs)
}

/// `x_m(r,s;t,θ)^{k} d(-t) = x_{2m-1,2k,2k+1}(r,s;0,θ-t)`.
#[allow(clippy::too_many_arguments)]
pub fn check_eq_4_2(
    n: u32,
    m: u32,
    k: u32,
    r: &Rational,
    s: &Rational,
    t: &UnitCircle,
    theta: &UnitCircle,
) -> Result<SideBySide, SpinError> {
    let mut lhs = x_sup_factors(n, m, k, r, s, t, theta)?;
    lhs.extend(d_factors(n, &t.conj()));
    let rhs = vec![make_x(spin_dim(n), m, k, r, s, &UnitCircle::one(), &theta.mul(&t.conj()))?];
    compare(n, &lhs, &rhs)
}

/// Per-index parameters `(r_l, s_l, t_l, θ_l)` of the full product.
#[derive(Clone, Debug, Serialize)]
pub struct XParams {
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub r: Rational,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub s: Rational,
    pub t: UnitCircle,
    pub theta: UnitCircle,
}

/// `∏_l x_m(..)^{l} · d(-t_1)⋯d(-t_{4n-2}) = ∏_l x_{2m-1,2l,2l+1}(r_l,s_l;0,εθ_l - t_l)`
/// with the printed `ε = (-1)^{l-1}` for `m ≥ 2`. The index `l = m-1` is left
/// out of both sides, since that x-element is not in Spin.
pub fn check_eq_4_3(n: u32, m: u32, params: &[XParams], eps: Eps) -> Result<SideBySide, SpinError> {
    if params.len() != pair_count(n) as usize {
        return Err(SpinError::Index(format!("{} parameter sets for {} pairs", params.len(), pair_count(n))));
    }
    let big = spin_dim(n);
    let active: Vec<u32> = (1..=pair_count(n)).filter(|&l| l + 1 != m).collect();
    let mut lhs = Vec::new();
    for &l in &active {
        let p = &params[l as usize - 1];
        lhs.extend(x_sup_factors(n, m, l, &p.r, &p.s, &p.t, &p.theta)?);
    }
    for &l in &active {
        lhs.extend(d_factors(n, &params[l as usize - 1].t.conj()));
    }
    let mut rhs = Vec::new();
    for &l in &active {
        let p = &params[l as usize - 1];
        let paper = if m >= 2 && l % 2 == 0 { -1 } else { 1 };
        let angle = twist(eps.resolve(paper), &p.theta).mul(&p.t.conj());
        rhs.push(make_x(big, m, l, &p.r, &p.s, &UnitCircle::one(), &angle)?);
    }
    compare(n, &lhs, &rhs)
}

/// `D_l(η,t,θ) d(t') = d(t') D_l(η,t,θ)`.
pub fn check_eq_5_1(
    n: u32,
    l: u32,
    eta: &UnitCircle,
    t: &UnitCircle,
    theta: &UnitCircle,
    t_prime: &UnitCircle,
) -> Result<SideBySide, SpinError> {
    let dl = big_d_factors(n, l, eta, t, theta)?;
    let d = d_factors(n, t_prime);
    let lhs: Vec<Clifford> = dl.iter().chain(d.iter()).cloned().collect();
    let rhs: Vec<Clifford> = d.iter().chain(dl.iter()).cloned().collect();
    compare(n, &lhs, &rhs)
}

/// `z(t) z(θ) = z(t+θ)` on the blade `e_{4l-2} e_{4l-1}`.
pub fn check_collapse(n: u32, l: u32, t: &UnitCircle, theta: &UnitCircle) -> Result<bool, SpinError> {
    let big = spin_dim(n);
    let (a, b) = (4 * l - 2, 4 * l - 1);
    Ok(make_z(big, a, b, t)?.mul(&make_z(big, a, b, theta)?) == make_z(big, a, b, &t.mul(theta))?)
}
