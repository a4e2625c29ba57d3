//! Exact scalars: rationals, Gaussian rationals, quaternions in `a + j b`
//! form, and seeded samplers that only produce exact circle and sphere points.

mod circle;
mod gauss;
mod quat;
mod sample;

pub use circle::{CircleError, SphereFamily, SpherePoint, UnitCircle};
pub use gauss::Gauss;
pub use quat::Quat;
pub use sample::{circle_from_mn, sample_circle, sample_sphere2, sub_seed, Sampler};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num/den"`, the report encoding. Integers still carry `/1`.
pub fn rat_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// The nonnegative rational square root, if there is one.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_squares_and_non_squares() {
        assert_eq!(sqrt_exact(&rat(9, 25)), Some(rat(3, 5)));
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
        assert_eq!(sqrt_exact(&rat(2, 9)), None);
        assert_eq!(sqrt_exact(&rat(-1, 4)), None);
    }

    #[test]
    fn rational_strings_round_trip() {
        assert_eq!(rat_string(&rat(6, -4)), "-3/2");
        assert_eq!(rat_string(&int(0)), "0/1");
        assert_eq!(parse_rat("-3/2"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
