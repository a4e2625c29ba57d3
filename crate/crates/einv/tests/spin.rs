use einv::arith::{rat, Rational};
use einv::spin::{
    chain_adjoint, d_factors, make_d_spin, make_z, spin_coset_equal, spin_dim, spin_psi_representative, twisted_adjoint,
    Clifford, SpinCellPoint,
};
use einv::{Sampler, UnitCircle};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Reduces a word in the generators by bubble sort, one sign per swap and
/// `e_i e_i = -1`. Returns the sorted distinct indices and the sign.
fn reduce(word: &[u32]) -> (Vec<u32>, bool) {
    let mut w = word.to_vec();
    let mut neg = false;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] == w[i + 1] {
                w.drain(i..i + 2);
                neg = !neg;
                changed = true;
            } else if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                neg = !neg;
                changed = true;
                i += 1;
            } else {
                i += 1;
            }
        }
        if !changed {
            return (w, neg);
        }
    }
}

fn word(n: u32, w: &[u32]) -> Clifford {
    let (idx, neg) = reduce(w);
    let b = Clifford::basis(n, &idx).unwrap();
    if neg {
        b.neg()
    } else {
        b
    }
}

proptest! {
    #[test]
    fn generator_words_match_naive_reduction(a in prop::collection::vec(1u32..=6, 0..6), b in prop::collection::vec(1u32..=6, 0..6)) {
        let lhs = word(6, &a).mul(&word(6, &b));
        let ab: Vec<u32> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(lhs, word(6, &ab));
    }
}

#[test]
fn generator_relations() {
    let n = 6;
    for i in 1..=n {
        let ei = Clifford::basis(n, &[i]).unwrap();
        assert_eq!(ei.mul(&ei), Clifford::one(n).neg());
        for j in i + 1..=n {
            let ej = Clifford::basis(n, &[j]).unwrap();
            assert_eq!(ei.mul(&ej), ej.mul(&ei).neg());
        }
    }
}

#[test]
fn z_rotates_by_the_double_angle() {
    let t = UnitCircle::from_cos_sin(rat(3, 5), rat(4, 5)).unwrap();
    let m = twisted_adjoint(&make_z(6, 1, 2, &t).unwrap()).unwrap();
    let (c, s) = (t.cos().clone(), t.sin().clone());
    assert_eq!(m.get(0, 0), &(&c * &c - &s * &s));
    assert_eq!(m.get(1, 0), &(rat(2, 1) * &c * &s));
    assert_eq!(m.get(0, 1), &(rat(-2, 1) * &c * &s));
    for k in 2..6 {
        assert_eq!(m.get(k, k), &Rational::one());
        assert!(m.get(k, 0).is_zero());
    }
}

#[test]
fn d_is_a_circle_subgroup() {
    let mut s = Sampler::new(4);
    for n in [1, 2] {
        let (a, b) = (s.circle(), s.circle());
        let da = make_d_spin(n, &a);
        assert_eq!(da.mul(&make_d_spin(n, &b)), make_d_spin(n, &a.mul(&b)));
        assert_eq!(da.mul(&da.reverse()), Clifford::one(spin_dim(n)));
        assert!(make_d_spin(n, &UnitCircle::one()).is_one());
    }
}

#[test]
fn chain_adjoint_agrees_with_the_full_product() {
    let mut s = Sampler::new(5);
    let t = s.circle();
    let fs = d_factors(1, &t);
    assert_eq!(chain_adjoint(6, &fs).unwrap(), twisted_adjoint(&Clifford::product(6, &fs)).unwrap());
}

#[test]
fn cosets() {
    let mut s = Sampler::new(6);
    let a = spin_psi_representative(1, &SpinCellPoint::sample(1, &mut s, true)).unwrap();
    let w = spin_coset_equal(&a, &a).unwrap();
    assert!(w.element.is_one());
    let t = s.circle();
    let w = spin_coset_equal(&a, &a.mul(&make_d_spin(1, &t))).unwrap();
    assert_eq!(w.element, make_d_spin(1, &t));
    let off = make_z(6, 1, 3, &UnitCircle::from_cos_sin(rat(5, 13), rat(12, 13)).unwrap()).unwrap();
    assert!(spin_coset_equal(&a, &a.mul(&off)).is_none());
}
