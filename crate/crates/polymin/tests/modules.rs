//! Property and end-to-end tests over the public API.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One};
use polymin::exact_algebra::{build_generator_matrices, check_brackets, sqrt_of};
use polymin::gtcoeff::{gt5_layout, gt6_layout, to_gt5, to_gt6};
use polymin::lattices::{build_lattice, ArrayLattice, Family};
use polymin::skew_tabular::{build_skew_lattice, Partition};
use polymin::verification::{certify_module, check_diamond_relations, verify, Status, Subject, SubjectSpec, VerifyOptions};
use polymin::RootSystem;
use proptest::prelude::*;

fn e7_k2() -> &'static ArrayLattice {
    static L: OnceLock<ArrayLattice> = OnceLock::new();
    L.get_or_init(|| build_lattice(Family::E7 { k: 2 }))
}

/// Random skew frames `P/Q` with two or three rows and entries up to 3.
fn frames() -> impl Strategy<Value = (usize, Vec<u32>, Vec<u32>)> {
    (1usize..=3, 2usize..=3).prop_flat_map(|(n, m)| {
        (Just(n), prop::collection::vec(0u32..=3, m), prop::collection::vec(0u32..=3, m)).prop_map(|(n, mut p, q)| {
            p.sort_unstable_by(|a, b| b.cmp(a));
            let mut q: Vec<u32> = q.iter().zip(&p).map(|(&x, &y)| x.min(y)).collect();
            q.sort_unstable_by(|a, b| b.cmp(a));
            (n, p, q)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_squares_back(n in 1i64..1_000_000, d in 1i64..100_000) {
        let p = BigRational::new(BigInt::from(n), BigInt::from(d));
        let s = sqrt_of(&p).unwrap();
        prop_assert_eq!((&s * &s).as_rational(), Some(p));
    }

    #[test]
    fn skew_modules_satisfy_relations((n, p, q) in frames()) {
        let l = build_skew_lattice(n, &Partition::new(p).unwrap(), &Partition::new(q).unwrap()).unwrap();
        let coeffs = l.coefficients().unwrap();
        let rs = RootSystem::a(n as u8);
        let cert = certify_module("skew", &l.lattice, &coeffs, &rs);
        prop_assert!(cert.passed, "{}", cert.to_json());
        if l.len() <= 60 {
            let gm = build_generator_matrices(&l.lattice, &coeffs, rs.nodes()).unwrap();
            prop_assert!(check_brackets(&gm, &rs).is_ok());
        }
    }

    #[test]
    fn gt_arrays_round_trip(t in 0usize..1463) {
        let l = e7_k2();
        for (layout, g) in [(gt5_layout(), to_gt5(l, t, 2).unwrap()), (gt6_layout(), to_gt6(l, t, 2).unwrap())] {
            prop_assert!(g.check_inequalities().is_ok());
            for (pos, v) in layout.read_back(&g) {
                prop_assert_eq!(i64::from(l.value(t, pos)), v);
            }
        }
    }
}

#[test]
fn small_e6_families_certify() {
    for family in [
        Family::E6Omega1 { k: 1 },
        Family::E6Omega6 { k: 2 },
        Family::E6Ab { a: 1, b: 1 },
        Family::E6Ab { a: 0, b: 2 },
    ] {
        let subject = Subject::build(&SubjectSpec::Polymin(family), usize::MAX).unwrap();
        let cert = verify(&subject, &VerifyOptions::default());
        assert!(cert.passed, "{}", cert.to_json());
        assert!(cert.checks.iter().all(|r| r.status != Status::Fail));
    }
}

#[test]
fn perturbed_coefficients_break_a_diamond() {
    let l = build_skew_lattice(2, &Partition::new(vec![3, 3]).unwrap(), &Partition::new(vec![2, 0]).unwrap()).unwrap();
    let coeffs = l.coefficients().unwrap();
    assert!(check_diamond_relations(&l.lattice, &coeffs).is_ok());
    let failing = (0..coeffs.len())
        .filter(|&e| {
            let mut p = coeffs.clone();
            p[e] += BigRational::one();
            check_diamond_relations(&l.lattice, &p).is_err()
        })
        .count();
    assert!(failing > 0);
}
