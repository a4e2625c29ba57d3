use einv::arith::{parse_rat, rat_string, sqrt_exact, SphereFamily};
use einv::{Gauss, Quat, Rational, Sampler};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..30).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn gauss() -> impl Strategy<Value = Gauss> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Gauss::new(a, b))
}

fn quat() -> impl Strategy<Value = Quat> {
    (gauss(), gauss()).prop_map(|(a, b)| Quat::new(a, b))
}

proptest! {
    #[test]
    fn gauss_is_a_commutative_ring(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
    }

    #[test]
    fn quaternions_associate_and_norms_multiply(p in quat(), q in quat(), r in quat()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
        prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
    }

    #[test]
    fn rationals_print_and_parse(q in small_rat()) {
        prop_assert_eq!(parse_rat(&rat_string(&q)), Some(q.clone()));
        prop_assert_eq!(sqrt_exact(&(&q * &q)), Some(if q < Rational::from_integer(0.into()) { -q } else { q }));
    }

    #[test]
    fn samples_lie_exactly_on_their_spheres(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let z = s.circle();
        prop_assert!(z.value().norm_sqr() == Rational::from_integer(1.into()));
        let p = s.sphere(SphereFamily::Quaternionic, true);
        prop_assert!(p.is_interior());
        prop_assert_eq!(&p.r * &p.r + p.w.norm_sqr(), Rational::from_integer(1.into()));
        prop_assert_eq!(Sampler::new(seed).circle(), z);
    }
}

#[test]
fn j_anticommutes_with_i() {
    let i = Quat::complex(Gauss::i());
    let j = Quat::j();
    assert_eq!(&j * &i, -&(&i * &j));
    assert_eq!(&j * &j, -&Quat::one());
}
