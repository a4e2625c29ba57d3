use num_traits::{One, Zero};
use serde::Serialize;

use super::Clifford;
use crate::arith::{sqrt_exact, Rational, UnitCircle};

/// `reverse(A)·B = d(t)`. `circle` is `t` with `cos t ≥ 0` when `cos t` is
/// rational; `d(t)` itself is always given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetWitness {
    pub circle: Option<UnitCircle>,
    pub element: Clifford,
}

/// Blade of `∏_{l∈S} e_{2l} e_{2l+1}` for a subset `S` of the pairs, given as
/// a bitmask over `l-1`. Ascending order, so the sign is `+`.
fn pair_blade(subset: u32, pairs: u32) -> u32 {
    (0..pairs).filter(|l| subset >> l & 1 == 1).fold(0, |b, l| b | 0b11 << (2 * l + 1))
}

/// Decides whether `A` and `B` (unit, even) lie in the same right coset of
/// `S = {d(t)}`. Only the `2^{4n-2}` coefficients of `reverse(A)·B` on the
/// blades of `d(t)` are computed; they must have the shape
/// `cos^{K-|S|} t sin^{|S|} t`, and `A·d(t) = B` is then confirmed exactly.
pub fn spin_coset_equal(a: &Clifford, b: &Clifford) -> Option<CosetWitness> {
    let big = a.generators();
    if big != b.generators() || big < 6 || big % 8 != 6 {
        return None;
    }
    let pairs = (big - 2) / 2;
    let ra = a.reverse();
    let coeffs: Vec<Rational> = (0..1u32 << pairs).map(|s| ra.product_coeff(b, pair_blade(s, pairs))).collect();
    let c0 = &coeffs[0];
    let (circle, expect): (Option<UnitCircle>, Box<dyn Fn(u32) -> Rational>) = if c0.is_zero() {
        let top = (1u32 << pairs) - 1;
        (Some(UnitCircle::i()), Box::new(move |s| if s == top { Rational::one() } else { Rational::zero() }))
    } else {
        let q = &coeffs[1] / c0;
        let cos2 = (Rational::one() + &q * &q).recip();
        if c0 != &num_traits::pow(cos2.clone(), (pairs / 2) as usize) {
            return None;
        }
        let circle = sqrt_exact(&cos2).and_then(|c| UnitCircle::from_cos_sin(c.clone(), &q * &c).ok());
        let c0 = c0.clone();
        (circle, Box::new(move |s: u32| &c0 * num_traits::pow(q.clone(), s.count_ones() as usize)))
    };
    if coeffs.iter().enumerate().any(|(s, c)| *c != expect(s as u32)) {
        return None;
    }
    let element =
        Clifford::from_terms(big, coeffs.into_iter().enumerate().map(|(s, c)| (pair_blade(s as u32, pairs), c)).collect());
    if &a.mul(&element) != b {
        return None;
    }
    Some(CosetWitness { circle, element })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{circle_from_mn, rat, Sampler, SphereFamily};
    use crate::spin::{make_d_spin, make_x, make_z};

    fn sample_a(n: u32, seed: u64) -> Clifford {
        let mut s = Sampler::new(seed);
        let big = 8 * n - 2;
        let mut g = Clifford::one(big);
        for (m, l) in [(1, 1), (2, 2), (3, 1)] {
            let p = s.sphere(SphereFamily::Complex, true);
            let (sv, _) = p.polar().unwrap();
            g = g.mul(&make_x(big, m, l, &p.r, &sv, &s.circle(), &s.circle()).unwrap());
        }
        g.mul(&make_z(big, 1, 5, &s.circle()).unwrap())
    }

    #[test]
    fn recovers_the_witness() {
        for seed in 0..5 {
            let a = sample_a(1, seed);
            let t0 = circle_from_mn(3 + seed as i64, 2);
            let w = spin_coset_equal(&a, &a.mul(&make_d_spin(1, &t0))).expect("same coset");
            assert_eq!(w.circle, Some(t0));
            let same = spin_coset_equal(&a, &a).unwrap();
            assert_eq!(same.circle, Some(UnitCircle::one()));
        }
    }

    #[test]
    fn witness_up_to_half_turn() {
        let a = sample_a(1, 9);
        let t0 = circle_from_mn(2, 1).mul(&UnitCircle::i().pow(2));
        let w = spin_coset_equal(&a, &a.mul(&make_d_spin(1, &t0))).unwrap();
        assert_eq!(make_d_spin(1, w.circle.as_ref().unwrap()), make_d_spin(1, &t0));
        let quarter = spin_coset_equal(&a, &a.mul(&make_d_spin(1, &UnitCircle::i()))).unwrap();
        assert_eq!(quarter.circle, Some(UnitCircle::i()));
    }

    #[test]
    fn irrational_angle_still_detected() {
        let a = sample_a(1, 4);
        let h = rat(1, 2);
        let d = Clifford::from_terms(6, vec![(0, h.clone()), (0b000110, h.clone()), (0b011000, h.clone()), (0b011110, h)]);
        let w = spin_coset_equal(&a, &a.mul(&d)).unwrap();
        assert_eq!(w.circle, None);
        assert_eq!(w.element, d);
    }

    #[test]
    fn other_cosets_rejected() {
        let a = sample_a(1, 2);
        let e12 = Clifford::basis(6, &[1, 2]).unwrap();
        assert!(spin_coset_equal(&a, &a.mul(&e12)).is_none());
        assert!(spin_coset_equal(&a, &a.neg()).is_none());
        assert!(spin_coset_equal(&a, &sample_a(1, 3)).is_none());
    }

    #[test]
    fn n2_coset() {
        let a = sample_a(2, 1);
        let t0 = circle_from_mn(5, 2);
        let w = spin_coset_equal(&a, &a.mul(&make_d_spin(2, &t0))).unwrap();
        assert_eq!(w.circle, Some(t0));
    }
}
