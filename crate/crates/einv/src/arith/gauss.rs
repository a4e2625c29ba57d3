use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::{rat_string, Rational};

/// `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gauss { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Gauss::real(Rational::zero())
    }

    pub fn one() -> Self {
        Gauss::real(Rational::one())
    }

    pub fn i() -> Self {
        Gauss::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Gauss::new(&self.re * k, &self.im * k)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gauss::new(&self.re / &n, -&self.im / &n))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Gauss::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Serialized as `["re", "im"]` with `num/den` strings.
impl Serialize for Gauss {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&rat_string(&self.re))?;
        seq.serialize_element(&rat_string(&self.im))?;
        seq.end()
    }
}

impl<'a, 'b> Add<&'b Gauss> for &'a Gauss {
    type Output = Gauss;
    fn add(self, o: &'b Gauss) -> Gauss {
        Gauss::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a, 'b> Sub<&'b Gauss> for &'a Gauss {
    type Output = Gauss;
    fn sub(self, o: &'b Gauss) -> Gauss {
        Gauss::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a, 'b> Mul<&'b Gauss> for &'a Gauss {
    type Output = Gauss;
    fn mul(self, o: &'b Gauss) -> Gauss {
        if self.is_zero() || o.is_zero() {
            return Gauss::zero();
        }
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        Gauss::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-&self.re, -&self.im)
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gauss> for Gauss {
            type Output = Gauss;
            fn $m(self, o: Gauss) -> Gauss {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gauss> for Gauss {
            type Output = Gauss;
            fn $m(self, o: &'a Gauss) -> Gauss {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Gauss> for &'a Gauss {
            type Output = Gauss;
            fn $m(self, o: Gauss) -> Gauss {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn g(a: Rational, b: Rational) -> Gauss {
        Gauss::new(a, b)
    }

    #[test]
    fn products() {
        assert_eq!(g(int(0), int(0)) * g(int(5), int(7)), Gauss::zero());
        assert_eq!(g(rat(3, 5), rat(4, 5)) * g(rat(3, 5), rat(-4, 5)), Gauss::one());
        assert_eq!(g(rat(1, 2), rat(1, 3)) * g(int(2), int(5)), g(rat(-2, 3), rat(19, 6)));
    }

    #[test]
    fn powers() {
        let i = Gauss::i();
        assert_eq!(i.pow(4), Gauss::one());
        assert_eq!(i.pow(-1), -&i);
        let z = g(rat(3, 5), rat(4, 5));
        assert_eq!(z.pow(-3), z.conj().pow(3));
        assert_eq!(z.pow(0), Gauss::one());
    }

    #[test]
    fn serializes_as_string_pair() {
        let s = serde_json::to_string(&g(rat(1, 2), int(-3))).unwrap();
        assert_eq!(s, r#"["1/2","-3/1"]"#);
    }
}
