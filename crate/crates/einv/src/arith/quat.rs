use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::{Gauss, Rational};

/// The quaternion `a + j·b`, with `j·c = conj(c)·j` for complex `c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quat {
    pub a: Gauss,
    pub b: Gauss,
}

impl Quat {
    pub fn new(a: Gauss, b: Gauss) -> Self {
        Quat { a, b }
    }

    pub fn complex(a: Gauss) -> Self {
        Quat { a, b: Gauss::zero() }
    }

    /// `j·b`.
    pub fn j_times(b: Gauss) -> Self {
        Quat { a: Gauss::zero(), b }
    }

    pub fn zero() -> Self {
        Quat::complex(Gauss::zero())
    }

    pub fn one() -> Self {
        Quat::complex(Gauss::one())
    }

    pub fn j() -> Self {
        Quat::j_times(Gauss::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_complex(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.a.conj(), -&self.b)
    }

    pub fn norm(&self) -> Rational {
        self.a.norm_sqr() + self.b.norm_sqr()
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + j{}", self.a, self.b)
    }
}

/// `[[a.re, a.im], [b.re, b.im]]`.
impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.a)?;
        seq.serialize_element(&self.b)?;
        seq.end()
    }
}

impl<'a, 'b> Mul<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn mul(self, o: &'b Quat) -> Quat {
        // (a1 + j b1)(a2 + j b2) = (a1 a2 - conj(b1) b2) + j (conj(a1) b2 + b1 a2)
        if self.b.is_zero() && o.b.is_zero() {
            return Quat::new(&self.a * &o.a, Gauss::zero());
        }
        let a = &self.a * &o.a - &self.b.conj() * &o.b;
        let b = &self.a.conj() * &o.b + &self.b * &o.a;
        Quat::new(a, b)
    }
}

impl<'a, 'b> Add<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn add(self, o: &'b Quat) -> Quat {
        Quat::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a, 'b> Sub<&'b Quat> for &'a Quat {
    type Output = Quat;
    fn sub(self, o: &'b Quat) -> Quat {
        Quat::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.a, -&self.b)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        &self * &o
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        &self + &o
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        &self - &o
    }
}
