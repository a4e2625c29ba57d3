//! Products of many sparse factors without per-operation reduction: every
//! factor is scaled to Gaussian-integer entries, the running product keeps
//! one common denominator, and fractions are reduced once at the end. This
//! avoids a gcd per rational operation, which otherwise dominates long
//! products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Factor, QMatrix};
use crate::arith::{Gauss, Quat, Rational};

/// `(a_re + a_im i) + j (b_re + b_im i)` with integer parts.
#[derive(Clone, Debug, Default)]
struct IQuat([BigInt; 4]);

impl IQuat {
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn from_quat(q: &Quat, d: &BigInt) -> IQuat {
        let part = |x: &Rational| x.numer() * (d / x.denom());
        IQuat([part(&q.a.re), part(&q.a.im), part(&q.b.re), part(&q.b.im)])
    }

    fn scale(&mut self, k: &BigInt) {
        for x in self.0.iter_mut() {
            if !x.is_zero() {
                *x *= k;
            }
        }
    }

    // (a1 + j b1)(a2 + j b2) = (a1 a2 - conj(b1) b2) + j (conj(a1) b2 + b1 a2)
    fn mul(&self, o: &IQuat) -> IQuat {
        let [ar, ai, br, bi] = &self.0;
        let [cr, ci, dr, di] = &o.0;
        let m = |x: &BigInt, y: &BigInt| if x.is_zero() || y.is_zero() { BigInt::zero() } else { x * y };
        IQuat([
            m(ar, cr) - m(ai, ci) - m(br, dr) - m(bi, di),
            m(ar, ci) + m(ai, cr) - m(br, di) + m(bi, dr),
            m(ar, dr) + m(ai, di) + m(br, cr) - m(bi, ci),
            m(ar, di) - m(ai, dr) + m(br, ci) + m(bi, cr),
        ])
    }

    fn add(&mut self, o: &IQuat) {
        for (x, y) in self.0.iter_mut().zip(&o.0) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn to_quat(&self, den: &BigInt) -> Quat {
        let r = |x: &BigInt| Rational::new(x.clone(), den.clone());
        Quat::new(Gauss::new(r(&self.0[0]), r(&self.0[1])), Gauss::new(r(&self.0[2]), r(&self.0[3])))
    }
}

fn common_den<'a>(qs: impl Iterator<Item = &'a Quat>) -> BigInt {
    qs.fold(BigInt::one(), |d, q| {
        [&q.a.re, &q.a.im, &q.b.re, &q.b.im].iter().fold(d, |d, x| if x.denom().is_one() { d } else { d.lcm(x.denom()) })
    })
}

pub(super) fn product(n: usize, fs: &[Factor]) -> QMatrix {
    let mut e: Vec<IQuat> = (0..n * n)
        .map(|t| if t % (n + 1) == 0 { IQuat([BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()]) } else { IQuat::default() })
        .collect();
    let mut den = BigInt::one();
    for f in fs {
        match f {
            Factor::Block(b) => {
                let d = common_den(b.m.iter().flatten());
                let [[m00, m01], [m10, m11]] = &b.m;
                let [i00, i01, i10, i11] = [m00, m01, m10, m11].map(|q| IQuat::from_quat(q, &d));
                for r in 0..n {
                    let (a, c) = (&e[r * n + b.p], &e[r * n + b.q]);
                    if a.is_zero() && c.is_zero() {
                        continue;
                    }
                    let mut np = a.mul(&i00);
                    np.add(&c.mul(&i10));
                    let mut nq = a.mul(&i01);
                    nq.add(&c.mul(&i11));
                    e[r * n + b.p] = np;
                    e[r * n + b.q] = nq;
                }
                if !d.is_one() {
                    for r in 0..n {
                        for c in 0..n {
                            if c != b.p && c != b.q {
                                e[r * n + c].scale(&d);
                            }
                        }
                    }
                    den *= &d;
                }
            }
            Factor::Diag(dg) => {
                let d = common_den(dg.iter());
                let ints: Vec<IQuat> = dg.iter().map(|q| IQuat::from_quat(q, &d)).collect();
                for r in 0..n {
                    for (c, q) in ints.iter().enumerate() {
                        let t = r * n + c;
                        if !e[t].is_zero() {
                            e[t] = e[t].mul(q);
                        }
                    }
                }
                den *= &d;
            }
        }
    }
    let mut out = QMatrix::zeros(n);
    for (t, q) in e.iter().enumerate() {
        out.e[t] = q.to_quat(&den);
    }
    out
}
