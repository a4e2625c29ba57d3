use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::SpinError;
use crate::arith::{rat_string, Rational};

/// Sign of `e_A e_B` relative to `e_{A xor B}`, for blades given as bitmasks
/// (bit `l-1` is `e_l`). Counts the transpositions needed to sort the
/// concatenation and one `e_l² = -1` per shared generator.
pub fn blade_sign(a: u32, b: u32) -> bool {
    let mut x = a >> 1;
    let mut swaps = 0u32;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    (swaps + (a & b).count_ones()) % 2 == 1
}

/// Bitmask of `e_{i1} e_{i2} ...` together with its sign, indices 1-based.
pub fn blade_of(indices: &[u32]) -> (u32, bool) {
    let mut mask = 0u32;
    let mut neg = false;
    for &i in indices {
        let b = 1u32 << (i - 1);
        neg ^= blade_sign(mask, b);
        mask ^= b;
    }
    (mask, neg)
}

/// An element of `Cl_N` with rational coefficients, stored as integer
/// numerators over one common positive denominator, reduced so that the
/// representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clifford {
    n: u32,
    den: BigInt,
    terms: Vec<(u32, BigInt)>,
}

impl Clifford {
    pub fn zero(n: u32) -> Self {
        Clifford { n, den: BigInt::one(), terms: Vec::new() }
    }

    pub fn scalar(n: u32, q: &Rational) -> Self {
        Clifford::from_terms(n, vec![(0, q.clone())])
    }

    pub fn one(n: u32) -> Self {
        Clifford::scalar(n, &Rational::one())
    }

    /// `e_{i1} e_{i2} ...`.
    pub fn basis(n: u32, indices: &[u32]) -> Result<Self, SpinError> {
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(SpinError::Index(format!("e_{i} in Cl_{n}")));
        }
        let (mask, neg) = blade_of(indices);
        let c = if neg { -Rational::one() } else { Rational::one() };
        Ok(Clifford::from_terms(n, vec![(mask, c)]))
    }

    pub fn from_terms(n: u32, terms: Vec<(u32, Rational)>) -> Self {
        let den = terms.iter().fold(BigInt::one(), |d, (_, q)| d.lcm(q.denom()));
        let mut acc: HashMap<u32, BigInt> = HashMap::new();
        for (b, q) in terms {
            assert!(n == 32 || b >> n == 0, "blade outside Cl_{n}");
            *acc.entry(b).or_default() += q.numer() * (&den / q.denom());
        }
        Clifford::normalize(n, den, acc.into_iter().collect())
    }

    fn normalize(n: u32, mut den: BigInt, mut terms: Vec<(u32, BigInt)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by_key(|(b, _)| *b);
        if terms.is_empty() {
            return Clifford::zero(n);
        }
        let mut g = den.clone();
        for (_, c) in &terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for (_, c) in terms.iter_mut() {
                *c /= &g;
            }
        }
        Clifford { n, den, terms }
    }

    pub fn generators(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: u32) -> Rational {
        match self.terms.binary_search_by_key(&blade, |(b, _)| *b) {
            Ok(i) => Rational::new(self.terms[i].1.clone(), self.den.clone()),
            Err(_) => Rational::zero(),
        }
    }

    /// Coefficient of the product `e_{i1} e_{i2} ...` (sign included).
    pub fn coeff_of(&self, indices: &[u32]) -> Rational {
        let (mask, neg) = blade_of(indices);
        let c = self.coeff(mask);
        if neg {
            -c
        } else {
            c
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Rational)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, Rational::new(c.clone(), self.den.clone())))
    }

    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(b, _)| b.count_ones() % 2 == 0)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(b, _)| *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == self.den
    }

    pub fn max_grade(&self) -> u32 {
        self.terms.iter().map(|(b, _)| b.count_ones()).max().unwrap_or(0)
    }

    /// The anti-automorphism reversing the order of generators.
    pub fn reverse(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(b, c)| {
                let g = b.count_ones();
                (*b, if (g * g.saturating_sub(1) / 2) % 2 == 1 { -c } else { c.clone() })
            })
            .collect();
        Clifford { n: self.n, den: self.den.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        Clifford { n: self.n, den: self.den.clone(), terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, c * q.numer())).collect();
        Clifford::normalize(self.n, &self.den * q.denom(), terms)
    }

    fn check_same(&self, o: &Clifford) -> Result<(), SpinError> {
        if self.n != o.n {
            return Err(SpinError::Dimension(self.n, o.n));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Clifford) -> Result<Self, SpinError> {
        self.check_same(o)?;
        let den = self.den.lcm(&o.den);
        let (fa, fb) = (&den / &self.den, &den / &o.den);
        let mut acc: HashMap<u32, BigInt> = HashMap::new();
        for (b, c) in &self.terms {
            *acc.entry(*b).or_default() += c * &fa;
        }
        for (b, c) in &o.terms {
            *acc.entry(*b).or_default() += c * &fb;
        }
        Ok(Clifford::normalize(self.n, den, acc.into_iter().collect()))
    }

    pub fn add(&self, o: &Clifford) -> Self {
        self.try_add(o).expect("same algebra")
    }

    pub fn sub(&self, o: &Clifford) -> Self {
        self.add(&o.neg())
    }

    pub fn try_mul(&self, o: &Clifford) -> Result<Self, SpinError> {
        self.check_same(o)?;
        let den = &self.den * &o.den;
        let terms = if self.n <= 16 {
            let mut acc = vec![BigInt::zero(); 1usize << self.n];
            let mut touched = Vec::new();
            for (ba, ca) in &self.terms {
                for (bb, cb) in &o.terms {
                    let t = (ba ^ bb) as usize;
                    if acc[t].is_zero() {
                        touched.push(t as u32);
                    }
                    let p = ca * cb;
                    if blade_sign(*ba, *bb) {
                        acc[t] -= p;
                    } else {
                        acc[t] += p;
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            touched.into_iter().map(|b| (b, std::mem::take(&mut acc[b as usize]))).collect()
        } else {
            let mut acc: HashMap<u32, BigInt> = HashMap::new();
            for (ba, ca) in &self.terms {
                for (bb, cb) in &o.terms {
                    let p = ca * cb;
                    let e = acc.entry(ba ^ bb).or_default();
                    if blade_sign(*ba, *bb) {
                        *e -= p;
                    } else {
                        *e += p;
                    }
                }
            }
            acc.into_iter().collect()
        };
        Ok(Clifford::normalize(self.n, den, terms))
    }

    pub fn mul(&self, o: &Clifford) -> Self {
        self.try_mul(o).expect("same algebra")
    }

    /// Left-to-right product of a chain.
    pub fn product<'a>(n: u32, factors: impl IntoIterator<Item = &'a Clifford>) -> Self {
        factors.into_iter().fold(Clifford::one(n), |acc, f| acc.mul(f))
    }

    /// `reverse(g)·g`, the scalar 1 for spin elements.
    pub fn norm(&self) -> Self {
        self.reverse().mul(self)
    }
}

impl fmt::Display for Clifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, q) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({q})")?;
            for i in 0..32 {
                if b >> i & 1 == 1 {
                    write!(f, "e{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// `{"<blade mask>": "num/den", ...}` in blade order.
impl Serialize for Clifford {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (b, q) in self.terms() {
            m.serialize_entry(&b.to_string(), &rat_string(&q))?;
        }
        m.end()
    }
}

impl Clifford {
    /// Coefficient of `blade` in `self·o`, in time linear in the sizes.
    pub fn product_coeff(&self, o: &Clifford, blade: u32) -> Rational {
        let mut acc = BigInt::zero();
        for (b, c) in &self.terms {
            let want = b ^ blade;
            if let Ok(i) = o.terms.binary_search_by_key(&want, |(x, _)| *x) {
                let p = c * &o.terms[i].1;
                if blade_sign(*b, want) {
                    acc -= p;
                } else {
                    acc += p;
                }
            }
        }
        Rational::new(acc, &self.den * &o.den)
    }
}
