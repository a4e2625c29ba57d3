//! `Spin(8n-2)` inside the real Clifford algebra `Cl_{8n-2}`: the circle
//! subgroup `d(t)`, the x-elements, the torus factors `D_l`, the cell maps,
//! and the identities relating them.

mod adjoint;
mod cells;
mod clifford;
mod coset;
mod identities;
pub mod suite;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::arith::{Rational, UnitCircle};

pub use adjoint::{chain_adjoint, check_intertwining, twisted_adjoint, OrthoMatrix};
pub use cells::{
    boundary_factor, is_pinned, phi_factors, psi_factors, sphere_factor, spin_phi_representative, spin_psi_representative,
    torus_factors, SpinCellPoint,
};
pub use clifford::{blade_of, blade_sign, Clifford};
pub use coset::{spin_coset_equal, CosetWitness};
pub use identities::{
    check_collapse, check_eq_4_1, check_eq_4_2, check_eq_4_3, check_eq_5_1, Eps, SideBySide, XParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpinError {
    #[error("algebras differ: Cl_{0} vs Cl_{1}")]
    Dimension(u32, u32),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("norm constraint violated: {0}")]
    Norm(String),
    #[error("element is not in the spin group: {0}")]
    NotSpin(String),
}

/// `N = 8n - 2`.
pub fn spin_dim(n: u32) -> u32 {
    8 * n - 2
}

/// Number of `z_{2l,2l+1}` factors in `d(t)`: `4n - 2`.
pub fn pair_count(n: u32) -> u32 {
    4 * n - 2
}

/// `cos t + e_{l1} e_{l2} sin t`.
pub fn make_z(n: u32, l1: u32, l2: u32, t: &UnitCircle) -> Result<Clifford, SpinError> {
    if l1 == 0 || l1 >= l2 || l2 > n {
        return Err(SpinError::Index(format!("z_{{{l1},{l2}}} in Cl_{n}")));
    }
    let (mask, neg) = blade_of(&[l1, l2]);
    let s = if neg { -t.sin() } else { t.sin().clone() };
    Ok(Clifford::from_terms(n, vec![(0, t.cos().clone()), (mask, s)]))
}

/// The factors `z_{2l,2l+1}(t)`, `l = 1..4n-2`, of `d(t)`.
pub fn d_factors(n: u32, t: &UnitCircle) -> Vec<Clifford> {
    (1..=pair_count(n)).map(|l| make_z(spin_dim(n), 2 * l, 2 * l + 1, t).expect("in range")).collect()
}

pub fn make_d_spin(n: u32, t: &UnitCircle) -> Clifford {
    Clifford::product(spin_dim(n), &d_factors(n, t))
}

fn check_rs(r: &Rational, s: &Rational) -> Result<(), SpinError> {
    if r.is_negative() || s.is_negative() || !(r * r + s * s).is_one() {
        return Err(SpinError::Norm(format!("r = {r}, s = {s}")));
    }
    Ok(())
}

/// `r z_{2l,2l+1}(t) + e_{2m-1} e_{2l} s z_{2l,2l+1}(θ)`. Rejects `m = l+1`,
/// where the element has Clifford norm `1 + 2rs sin θ` and leaves Spin.
pub fn make_x(
    n: u32,
    m: u32,
    l: u32,
    r: &Rational,
    s: &Rational,
    t: &UnitCircle,
    theta: &UnitCircle,
) -> Result<Clifford, SpinError> {
    check_rs(r, s)?;
    if m == 0 || l == 0 || 2 * m - 1 > n || 2 * l + 1 > n {
        return Err(SpinError::Index(format!("x_{{{},{},{}}} in Cl_{n}", 2 * m - 1, 2 * l, 2 * l + 1)));
    }
    if m == l + 1 {
        return Err(SpinError::Index(format!("m = l + 1 = {m}")));
    }
    let zt = make_z(n, 2 * l, 2 * l + 1, t)?;
    let zth = make_z(n, 2 * l, 2 * l + 1, theta)?;
    let e = Clifford::basis(n, &[2 * m - 1, 2 * l])?;
    Ok(zt.scale(r).add(&e.mul(&zth).scale(s)))
}

/// Factors of `x_m(r, s; t, θ)^{k}`: `z_{2l,2l+1}(t)` for `l ≠ k` and the
/// x-element at `l = k`.
pub fn x_sup_factors(
    n: u32,
    m: u32,
    k: u32,
    r: &Rational,
    s: &Rational,
    t: &UnitCircle,
    theta: &UnitCircle,
) -> Result<Vec<Clifford>, SpinError> {
    if k == 0 || k > pair_count(n) || m == 0 || m > 4 * n - 1 {
        return Err(SpinError::Index(format!("x_{m}^{{{k}}} for n = {n}")));
    }
    let big = spin_dim(n);
    (1..=pair_count(n))
        .map(|l| if l == k { make_x(big, m, l, r, s, t, theta) } else { make_z(big, 2 * l, 2 * l + 1, t) })
        .collect()
}

/// Factors `z_{4l-2,4l}(η) z_{4l-2,4l-1}(t) z_{4l-2,4l-1}(θ)` of `D_l`.
pub fn big_d_factors(
    n: u32,
    l: u32,
    eta: &UnitCircle,
    t: &UnitCircle,
    theta: &UnitCircle,
) -> Result<Vec<Clifford>, SpinError> {
    if l == 0 || l > 2 * n - 1 {
        return Err(SpinError::Index(format!("D_{l} for n = {n}")));
    }
    let big = spin_dim(n);
    Ok(vec![
        make_z(big, 4 * l - 2, 4 * l, eta)?,
        make_z(big, 4 * l - 2, 4 * l - 1, t)?,
        make_z(big, 4 * l - 2, 4 * l - 1, theta)?,
    ])
}

#[allow(non_snake_case)]
pub fn make_D_spin(
    n: u32,
    l: u32,
    eta: &UnitCircle,
    t: &UnitCircle,
    theta: &UnitCircle,
) -> Result<Clifford, SpinError> {
    Ok(Clifford::product(spin_dim(n), &big_d_factors(n, l, eta, t, theta)?))
}

/// Even and `reverse(g)·g = 1`.
pub fn is_unit_even(g: &Clifford) -> bool {
    g.is_even() && g.norm().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{circle_from_mn, int, rat, Sampler};

    fn c(m: i64, k: i64) -> UnitCircle {
        circle_from_mn(m, k)
    }

    #[test]
    fn z_is_a_circle() {
        let t = c(2, 1);
        let u = c(3, 2);
        assert!(make_z(6, 2, 3, &UnitCircle::one()).unwrap().is_one());
        let zt = make_z(6, 2, 3, &t).unwrap();
        assert_eq!(zt.mul(&make_z(6, 2, 3, &u).unwrap()), make_z(6, 2, 3, &t.mul(&u)).unwrap());
        assert!(zt.mul(&zt.reverse()).is_one());
        assert!(make_z(6, 3, 3, &t).is_err());
        assert!(make_z(6, 6, 7, &t).is_err());
    }

    #[test]
    fn d_expansion_at_n1() {
        let t = c(3, 1);
        let d = make_d_spin(1, &t);
        let (co, si) = (t.cos().clone(), t.sin().clone());
        let expect = Clifford::from_terms(
            6,
            vec![
                (0, &co * &co),
                (0b000110, &co * &si),
                (0b011000, &co * &si),
                (0b011110, &si * &si),
            ],
        );
        assert_eq!(d, expect);
        assert!(make_d_spin(1, &UnitCircle::one()).is_one());
        let u = c(5, 2);
        assert_eq!(d.mul(&make_d_spin(1, &u)), make_d_spin(1, &t.mul(&u)));
        assert!(is_unit_even(&make_d_spin(2, &u)));
    }

    #[test]
    fn x_elements() {
        let (t, th) = (c(2, 1), c(4, 3));
        assert_eq!(make_x(6, 1, 2, &int(1), &int(0), &t, &th).unwrap(), make_z(6, 4, 5, &t).unwrap());
        let one = UnitCircle::one();
        assert_eq!(make_x(6, 1, 2, &int(0), &int(1), &one, &one).unwrap(), Clifford::basis(6, &[1, 4]).unwrap());
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let p = s.sphere(crate::arith::SphereFamily::Complex, true);
            let (sv, _) = p.polar().unwrap();
            let x = make_x(14, 3, 4, &p.r, &sv, &s.circle(), &s.circle()).unwrap();
            assert!(is_unit_even(&x));
        }
        assert!(make_x(6, 1, 1, &rat(1, 2), &rat(1, 2), &t, &th).is_err());
        assert!(make_x(6, 2, 1, &rat(3, 5), &rat(4, 5), &t, &th).is_err());
    }

    #[test]
    fn big_d_collapses() {
        let (e, t, th) = (c(2, 1), c(3, 1), c(5, 4));
        let d = make_D_spin(1, 1, &e, &t, &th).unwrap();
        let collapsed = make_z(6, 2, 4, &e).unwrap().mul(&make_z(6, 2, 3, &t.mul(&th)).unwrap());
        assert_eq!(d, collapsed);
        let one = UnitCircle::one();
        assert!(make_D_spin(2, 3, &one, &one, &one).unwrap().is_one());
        assert!(make_D_spin(1, 2, &one, &one, &one).is_err());
    }
}
