use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{int, Gauss, Rational, SphereFamily, SpherePoint, UnitCircle};

/// Largest Pythagorean generator used by the samplers. Kept small so that
/// long Clifford products stay cheap.
const MAX_M: i64 = 12;

/// `((m² − n²) + 2mn·i)/(m² + n²)`.
pub fn circle_from_mn(m: i64, n: i64) -> UnitCircle {
    let c = m * m + n * n;
    UnitCircle::from_cos_sin(Rational::new((m * m - n * n).into(), c.into()), Rational::new((2 * m * n).into(), c.into()))
        .expect("Pythagorean point")
}

/// Derives independent seeds for numbered sub-streams.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(0x632b_e59b_d9b4_e019);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seeded source of exact circle and sphere points.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn mn(&mut self) -> (i64, i64) {
        let m = self.rng.gen_range(2..=MAX_M);
        let n = self.rng.gen_range(1..m);
        (m, n)
    }

    /// A Pythagorean point turned by a random quarter turn and possibly
    /// conjugated, so every quadrant is reachable.
    pub fn circle(&mut self) -> UnitCircle {
        let (m, n) = self.mn();
        let mut z = circle_from_mn(m, n);
        if self.rng.gen_bool(0.5) {
            z = z.conj();
        }
        z.mul(&UnitCircle::i().pow(self.rng.gen_range(0..4)))
    }

    /// Like [`Sampler::circle`] but with denominator 5 or 13, for products
    /// long enough that coefficient growth dominates the cost.
    pub fn small_circle(&mut self) -> UnitCircle {
        let m = self.rng.gen_range(2..=3);
        let n = self.rng.gen_range(1..m);
        let mut z = circle_from_mn(m, n);
        if self.rng.gen_bool(0.5) {
            z = z.conj();
        }
        z.mul(&UnitCircle::i().pow(self.rng.gen_range(0..4)))
    }

    /// A circle point other than 1.
    pub fn circle_not_one(&mut self) -> UnitCircle {
        loop {
            let z = self.circle();
            if !z.is_one() {
                return z;
            }
        }
    }

    /// A sphere point. Without `interior_only`, one draw in eight lands on
    /// the boundary point `r = 0`.
    pub fn sphere(&mut self, _family: SphereFamily, interior_only: bool) -> SpherePoint {
        if !interior_only && self.rng.gen_range(0..8) == 0 {
            return SpherePoint::new(int(0), Gauss::one()).expect("boundary point");
        }
        let (m, n) = self.mn();
        let c = m * m + n * n;
        let (mut a, mut b) = (m * m - n * n, 2 * m * n);
        if self.rng.gen_bool(0.5) {
            std::mem::swap(&mut a, &mut b);
        }
        let r = Rational::new(a.into(), c.into());
        let s = Rational::new(b.into(), c.into());
        let z = self.circle();
        SpherePoint::new(r, z.value().scale(&s)).expect("Pythagorean sphere point")
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

pub fn sample_circle(seed: u64) -> UnitCircle {
    Sampler::new(seed).circle()
}

pub fn sample_sphere2(seed: u64, family: SphereFamily, interior_only: bool) -> SpherePoint {
    Sampler::new(seed).sphere(family, interior_only)
}
