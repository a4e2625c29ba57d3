use einv::arith::{rat, SphereFamily};
use einv::symplectic::{
    check_eq_2_4, coset_equal, make_d, make_r_complex, phi_factors, phi_representative, product, psi_factors,
    psi_representative, second_preimage, Kind, QMatrix, SpCellPoint, SpPhiPoint,
};
use einv::{Gauss, Quat, Sampler, UnitCircle};

/// Dense left-to-right product, the oracle for the sparse integer product.
fn dense(dim: usize, fs: &[einv::symplectic::Factor]) -> QMatrix {
    fs.iter().fold(QMatrix::identity(dim), |acc, f| &acc * &f.embed(dim))
}

#[test]
fn d_at_i_in_sp5() {
    let d = make_d(5, &UnitCircle::i());
    let want = QMatrix::from_diag(vec![
        Quat::one(),
        Quat::complex(Gauss::i()),
        Quat::complex(Gauss::i()),
        Quat::complex(Gauss::i()),
        Quat::complex(Gauss::i()),
    ]);
    assert_eq!(d, want);
    assert!(make_d(5, &UnitCircle::one()).is_identity());
}

#[test]
fn r_block_placement() {
    let m = make_r_complex(5, 0, 1, &Gauss::real(rat(3, 5)), &Gauss::real(rat(4, 5))).unwrap();
    let mut want = QMatrix::identity(5);
    want.set(0, 0, Quat::complex(Gauss::real(rat(3, 5))));
    want.set(0, 1, Quat::complex(Gauss::real(rat(4, 5))));
    want.set(1, 0, Quat::complex(Gauss::real(rat(-4, 5))));
    want.set(1, 1, Quat::complex(Gauss::real(rat(3, 5))));
    assert_eq!(m, want);
    assert!(m.is_symplectic());
}

#[test]
fn sparse_products_match_the_dense_oracle() {
    for n in [1, 2] {
        let mut s = Sampler::new(90 + n as u64);
        let p = SpCellPoint::sample(n, &mut s, false);
        let fs = psi_factors(n, &p).unwrap();
        let m = product(4 * n + 1, &fs);
        assert_eq!(m, dense(4 * n + 1, &fs));
        assert!(m.is_symplectic());
        let q = SpPhiPoint::sample(n, &mut s, false);
        assert_eq!(phi_representative(n, &q).unwrap(), dense(4 * n + 1, &phi_factors(n, &q).unwrap()));
    }
}

#[test]
fn absorbing_d_on_all_blocks_at_n2() {
    let mut s = Sampler::new(11);
    for kind in [Kind::Complex, Kind::Quaternionic] {
        for k in 0..8 {
            for i in 1..=8 - k {
                let p = s.sphere(SphereFamily::Complex, false);
                let z = s.circle();
                assert!(check_eq_2_4(kind, 9, k, i, &p.r, &p.w, &z).is_ok(), "{kind:?} k={k} i={i}");
            }
        }
    }
}

#[test]
fn cosets() {
    let mut s = Sampler::new(2);
    let a = psi_representative(1, &SpCellPoint::sample(1, &mut s, true)).unwrap();
    assert_eq!(coset_equal(&a, &a), Some(UnitCircle::one()));
    let z0 = s.circle();
    assert_eq!(coset_equal(&a, &(&a * &make_d(5, &z0))), Some(z0));
    let r = make_r_complex(5, 1, 2, &Gauss::real(rat(3, 5)), &Gauss::new(rat(0, 1), rat(4, 5))).unwrap();
    assert_eq!(coset_equal(&a, &(&a * &r)), None);
}

#[test]
fn psi_second_preimage_lands_in_the_same_coset() {
    let mut s = Sampler::new(8);
    for n in [1, 2] {
        let p = SpCellPoint::sample(n, &mut s, true);
        let c = s.circle_not_one();
        let q = second_preimage(n, &p, &c).unwrap();
        assert_ne!(p, q);
        assert!(q.is_interior());
        let (mp, mq) = (psi_representative(n, &p).unwrap(), psi_representative(n, &q).unwrap());
        assert_eq!(mq, &mp * &make_d(4 * n + 1, &c));
        assert_eq!(coset_equal(&mp, &mq), Some(c));
    }
}
