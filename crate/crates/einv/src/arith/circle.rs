use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::{int, sqrt_exact, Gauss, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleError {
    #[error("|{0}|^2 is not 1")]
    NotUnit(Gauss),
    #[error("r = {r}, |w|^2 = {w2}: r must be nonnegative with r^2 + |w|^2 = 1")]
    NotOnSphere { r: Rational, w2: Rational },
}

/// A point of S^1 in Q(i). Angles are always carried as (cos, sin) pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitCircle(Gauss);

impl UnitCircle {
    pub fn new(value: Gauss) -> Result<Self, CircleError> {
        if value.norm_sqr().is_one() {
            Ok(UnitCircle(value))
        } else {
            Err(CircleError::NotUnit(value))
        }
    }

    pub fn one() -> Self {
        UnitCircle(Gauss::one())
    }

    pub fn i() -> Self {
        UnitCircle(Gauss::i())
    }

    pub fn from_cos_sin(c: Rational, s: Rational) -> Result<Self, CircleError> {
        UnitCircle::new(Gauss::new(c, s))
    }

    pub fn value(&self) -> &Gauss {
        &self.0
    }

    pub fn cos(&self) -> &Rational {
        &self.0.re
    }

    pub fn sin(&self) -> &Rational {
        &self.0.im
    }

    pub fn is_one(&self) -> bool {
        self.0 == Gauss::one()
    }

    /// Also the inverse.
    pub fn conj(&self) -> Self {
        UnitCircle(self.0.conj())
    }

    pub fn mul(&self, o: &UnitCircle) -> Self {
        UnitCircle(&self.0 * &o.0)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            UnitCircle(self.0.conj().pow(-e))
        } else {
            UnitCircle(self.0.pow(e))
        }
    }

    /// Some `c` with `c^e = target`, found exactly.
    ///
    /// A unit of Q(i) with reduced denominator `D` has the form
    /// `unit·(a + bi)²/D` with `a² + b² = D`, and its e-th power has
    /// denominator `D^e`, so the candidates are finite.
    pub fn root(target: &UnitCircle, e: u32) -> Option<UnitCircle> {
        if e == 0 {
            return target.is_one().then(UnitCircle::one);
        }
        let den = num_integer::lcm(target.0.re.denom().clone(), target.0.im.denom().clone());
        let d0 = den.nth_root(e);
        if num_traits::pow(d0.clone(), e as usize) != den {
            return None;
        }
        let units = [Gauss::one(), Gauss::i(), -Gauss::one(), -Gauss::i()];
        let bound = d0.sqrt();
        let mut a = BigInt::zero();
        while a <= bound {
            let rest = &d0 - &a * &a;
            let b = rest.sqrt();
            if &b * &b == rest {
                for sb in [b.clone(), -b.clone()] {
                    let base = Gauss::new(Rational::from_integer(a.clone()), Rational::from_integer(sb));
                    let sq = (&base * &base).scale(&Rational::new(BigInt::one(), d0.clone()));
                    for u in &units {
                        let c = UnitCircle(u * &sq);
                        if &c.pow(e as i64) == target {
                            return Some(c);
                        }
                    }
                }
            }
            a += 1;
        }
        None
    }
}

impl Serialize for UnitCircle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereFamily {
    Complex,
    Quaternionic,
}

/// `(r, w)` with `r ≥ 0` and `r² + |w|² = 1`. In the quaternionic family
/// `w` is the coefficient of `j`. At `r = 0` the point is the single
/// boundary point and `w` is stored as 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SpherePoint {
    #[serde(serialize_with = "ser_rat")]
    pub r: Rational,
    pub w: Gauss,
}

fn ser_rat<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&super::rat_string(q))
}

impl SpherePoint {
    pub fn new(r: Rational, w: Gauss) -> Result<Self, CircleError> {
        let w2 = w.norm_sqr();
        if r.is_negative() || !(&r * &r + &w2).is_one() {
            return Err(CircleError::NotOnSphere { r, w2 });
        }
        if r.is_zero() {
            return Ok(SpherePoint { r, w: Gauss::one() });
        }
        Ok(SpherePoint { r, w })
    }

    /// The point `r = 1`, which maps to the identity factor.
    pub fn base() -> Self {
        SpherePoint { r: int(1), w: Gauss::zero() }
    }

    pub fn is_interior(&self) -> bool {
        self.r.is_positive()
    }

    /// `w = s·(cos θ, sin θ)`, when `|w|` is rational. `θ = 0` when `w = 0`.
    pub fn polar(&self) -> Option<(Rational, UnitCircle)> {
        let s = sqrt_exact(&self.w.norm_sqr())?;
        if s.is_zero() {
            return Some((s, UnitCircle::one()));
        }
        let inv = s.recip();
        Some((s, UnitCircle(self.w.scale(&inv))))
    }

    pub fn from_polar(r: Rational, s: Rational, theta: &UnitCircle) -> Result<Self, CircleError> {
        SpherePoint::new(r, theta.value().scale(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rejects_off_circle() {
        assert!(UnitCircle::new(Gauss::new(rat(1, 2), rat(1, 2))).is_err());
        assert!(UnitCircle::from_cos_sin(rat(5, 13), rat(12, 13)).is_ok());
    }

    #[test]
    fn sphere_boundary_normalizes_w() {
        let p = SpherePoint::new(int(0), Gauss::new(rat(3, 5), rat(-4, 5))).unwrap();
        assert_eq!(p.w, Gauss::one());
        assert!(!p.is_interior());
        assert!(SpherePoint::new(rat(-3, 5), Gauss::real(rat(4, 5))).is_err());
        assert!(SpherePoint::new(rat(1, 2), Gauss::real(rat(1, 2))).is_err());
    }

    #[test]
    fn polar_split() {
        let th = UnitCircle::from_cos_sin(rat(5, 13), rat(-12, 13)).unwrap();
        let p = SpherePoint::from_polar(rat(3, 5), rat(4, 5), &th).unwrap();
        assert_eq!(p.polar(), Some((rat(4, 5), th)));
    }

    #[test]
    fn roots_are_exact() {
        let c = UnitCircle::from_cos_sin(rat(-20, 29), rat(21, 29)).unwrap();
        for e in 1..6u32 {
            let t = c.pow(e as i64);
            let root = UnitCircle::root(&t, e).expect("root exists");
            assert_eq!(root.pow(e as i64), t);
        }
        assert_eq!(UnitCircle::root(&UnitCircle::from_cos_sin(rat(3, 5), rat(4, 5)).unwrap(), 2), None);
        assert!(UnitCircle::root(&UnitCircle::i(), 3).is_some());
    }
}
