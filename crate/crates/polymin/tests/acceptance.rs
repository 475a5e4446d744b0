//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`); exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num::{BigInt, BigRational};
use polymin::exact_algebra::sqrt_of;
use polymin::gtcoeff::{e6_via_e7, gt5_layout, gt6_layout, to_gt5, to_gt6};
use polymin::lattices::{build_lattice, ArrayLattice, E6Variant, Family};
use polymin::poset_core::{check_birkhoff, color_isomorphism, down_set_lattice, poset_isomorphism, ColoredRankedPoset};
use polymin::root_data::{weight_multiset, weyl_dim};
use polymin::skew_tabular::{build_skew_lattice, GtParallelogram, Partition, SkewLattice};
use polymin::verification::{
    check_character, check_crossing_relations, check_diamond_relations, check_embedding, check_rgf_products, verify,
    Check, Status, Subject, VerifyOptions,
};
use polymin::{Color, RootSystem};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Per-edge coefficients of the `(3,3)/(2,0)` lattice, keyed by the
/// interior entries `(g_{1,0}, g_{1,1}, g_{2,1})` of the edge's endpoints.
const FIG_1_1: [([i64; 3], [i64; 3], &str); 23] = [
    ([0, 2, 0], [0, 3, 0], "1"),
    ([0, 2, 0], [0, 2, 1], "2"),
    ([0, 2, 1], [1, 2, 1], "4/3"),
    ([0, 3, 0], [0, 3, 1], "3"),
    ([0, 3, 1], [1, 3, 1], "2/3"),
    ([0, 2, 1], [0, 3, 1], "2/3"),
    ([1, 2, 1], [1, 3, 1], "4/3"),
    ([0, 2, 1], [0, 2, 2], "2"),
    ([0, 3, 1], [0, 3, 2], "4"),
    ([1, 2, 1], [1, 2, 2], "1"),
    ([1, 3, 1], [1, 3, 2], "2"),
    ([0, 2, 2], [0, 3, 2], "1/3"),
    ([1, 2, 2], [1, 3, 2], "2/3"),
    ([2, 2, 2], [2, 3, 2], "2"),
    ([0, 2, 2], [1, 2, 2], "8/3"),
    ([0, 3, 2], [1, 3, 2], "4/3"),
    ([0, 3, 3], [1, 3, 3], "2"),
    ([1, 2, 2], [2, 2, 2], "3"),
    ([1, 3, 2], [2, 3, 2], "1"),
    ([1, 3, 3], [2, 3, 3], "2"),
    ([0, 3, 2], [0, 3, 3], "3"),
    ([1, 3, 2], [1, 3, 3], "2"),
    ([2, 3, 2], [2, 3, 3], "1"),
];

fn partition(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("valid partition")
}

fn fig_1_1() -> SkewLattice {
    build_skew_lattice(2, &partition(&[3, 3]), &partition(&[2, 0])).expect("valid frame")
}

fn interior(g: &GtParallelogram) -> [i64; 3] {
    [g.at(1, 0), g.at(1, 1), g.at(2, 1)]
}

fn small_families() -> Vec<Family> {
    let mut out = Vec::new();
    for k in 0..=2 {
        out.push(Family::E6Omega1 { k });
        out.push(Family::E6Omega6 { k });
        for a in 0..=k {
            out.push(Family::E6Ab { a, b: k - a });
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let l = fig_1_1();
    ensure(l.len() == 15, || format!("{} vertices", l.len()))?;
    let rgf = l.lattice.rgf();
    ensure(rgf == [1, 2, 3, 3, 3, 2, 1], || format!("RGF {rgf:?}"))?;
    let p = l.coefficients().map_err(|e| e.to_string())?;
    ensure(p.len() == FIG_1_1.len(), || format!("{} edges", p.len()))?;
    for (lo, hi, expected) in FIG_1_1 {
        let e = l
            .lattice
            .edges()
            .iter()
            .position(|e| interior(l.element(e.lo)) == lo && interior(l.element(e.hi)) == hi)
            .ok_or_else(|| format!("edge {lo:?} -> {hi:?} missing"))?;
        let expected: BigRational = expected.parse().expect("rational literal");
        ensure(p[e] == expected, || format!("edge {lo:?} -> {hi:?}: P = {} not {expected}", p[e]))?;
    }
    let rs = RootSystem::a(2);
    let d = check_diamond_relations(&l.lattice, &p).map_err(|f| f.to_string())?;
    let c = check_crossing_relations(&l.lattice, &p, rs.nodes()).map_err(|f| f.to_string())?;
    Ok(format!("15 vertices, RGF 1+2q+3q^2+3q^3+3q^4+2q^5+q^6, 23 edge values, {d} diamonds, {c} crossings"))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for family in [Family::E7 { k: 1 }, Family::E6Omega1 { k: 1 }, Family::E6Omega6 { k: 1 }] {
        let l = build_lattice(family);
        let rs = family.root_system();
        let dim = weyl_dim(&rs, &family.highest_weight()).map_err(|e| e.to_string())?;
        ensure(BigInt::from(l.len()) == dim, || format!("{}: {} elements, Weyl dimension {dim}", family.name(), l.len()))?;
        let ch = weight_multiset(&l.lattice, &rs);
        ensure(ch.values().all(|&m| m == 1) && ch.len() == l.len(), || format!("{}: repeated weights", family.name()))?;
        parts.push(format!("{} = {}", family.name(), l.len()));
    }
    Ok(parts.join(", ") + "; all multiplicities 1")
}

fn criterion_3() -> Outcome {
    let checks: BTreeSet<Check> =
        [Check::Phi, Check::Diamond, Check::Crossing, Check::Lemma43, Check::Components].into_iter().collect();
    let mut parts = Vec::new();
    for k in 0..=2 {
        let subject = Subject::E7(build_lattice(Family::E7 { k }));
        let cert = verify(&subject, &VerifyOptions { checks: Some(checks.clone()), timings: false, perturb: None });
        if let Some(f) = cert.first_failure() {
            return Err(format!("k={k}: {} failed: {}", f.check, f.failure.clone().unwrap_or_default()));
        }
        let count = |c| cert.record(c).map_or(0, |r| r.count);
        parts.push(format!(
            "k={k}: {} vertices, {} diamonds, {} crossings, {} two-route edges",
            cert.elements,
            count(Check::Diamond),
            count(Check::Crossing),
            count(Check::Lemma43)
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut families = vec![Family::E7 { k: 1 }, Family::E7 { k: 2 }];
    families.extend(small_families());
    let mut dims = Vec::new();
    for family in &families {
        let l = build_lattice(*family);
        check_character(&l.lattice, &family.root_system(), &family.highest_weight())
            .map_err(|f| format!("{}: {f}", family.name()))?;
        dims.push(l.len());
    }
    Ok(format!("{} families match Freudenthal (sizes {dims:?})", families.len()))
}

fn criterion_5() -> Outcome {
    let families = [
        Family::E7 { k: 1 },
        Family::E6Omega1 { k: 1 },
        Family::E6Omega6 { k: 1 },
        Family::E6Ab { a: 1, b: 0 },
        Family::E6Ab { a: 0, b: 1 },
    ];
    let checks: BTreeSet<Check> = [Check::Brackets].into_iter().collect();
    let mut total = 0;
    for family in families {
        let subject = Subject::build(&polymin::SubjectSpec::Polymin(family), usize::MAX).map_err(|e| e.to_string())?;
        let cert = verify(&subject, &VerifyOptions { checks: Some(checks.clone()), timings: false, perturb: None });
        let rec = cert.record(Check::Brackets).ok_or("no bracket record")?;
        ensure(rec.status == Status::Pass, || format!("{}: {}", family.name(), rec.failure.clone().unwrap_or_default()))?;
        total += rec.count;
    }
    Ok(format!("{total} matrix identities over 5 lattices"))
}

fn criterion_6() -> Outcome {
    let mut families = vec![Family::E7 { k: 0 }, Family::E7 { k: 1 }, Family::E7 { k: 2 }];
    families.extend(small_families());
    for family in &families {
        let l = build_lattice(*family);
        check_rgf_products(*family, &l.lattice.rgf()).map_err(|f| format!("{}: {f}", family.name()))?;
    }
    Ok(format!("{} RGFs equal both product formulas; all symmetric and unimodal", families.len()))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for k in 0..=2 {
        let mut variants = vec![E6Variant::Omega1(k), E6Variant::Omega6(k)];
        variants.extend((0..=k).map(|a| E6Variant::Ab(a, k - a)));
        for v in variants {
            let emb = e6_via_e7(v).map_err(|e| format!("{v:?}: {e}"))?;
            check_embedding(&emb).map_err(|e| format!("{v:?}: {e}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} components color-isomorphic via psi with matching top weights"))
}

fn birkhoff_round_trip(name: &str, l: &ColoredRankedPoset, compression: Option<&ArrayLattice>) -> Result<(), String> {
    let ji = check_birkhoff(l).map_err(|e| format!("{name}: {e}"))?;
    let rebuilt = down_set_lattice(&ji.poset);
    let iso = color_isomorphism(l, &rebuilt.lattice, &|c| c).map_err(|e| format!("{name}: {e}"))?;
    ensure(iso.is_some(), || format!("{name}: J(j(L)) is not isomorphic to L"))?;
    if let Some(a) = compression {
        ensure(poset_isomorphism(&ji.poset, a.data.poset(), &|c| c).is_some(), || {
            format!("{name}: j(L) differs from the compression poset")
        })?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    // Birkhoff round trip on every built lattice.
    let mut lattices: Vec<ArrayLattice> = (0..=2).map(|k| build_lattice(Family::E7 { k })).collect();
    lattices.extend(small_families().into_iter().map(build_lattice));
    for l in &lattices {
        // At k = 1 the arrays are 0/1 and j(L) is the compression poset itself.
        let unit = l.family.max_value() == 1 && !matches!(l.family, Family::E6Ab { .. });
        birkhoff_round_trip(&l.family.name(), &l.lattice, unit.then_some(l))?;
    }
    let fig = fig_1_1();
    birkhoff_round_trip("skew (3,3)/(2,0)", &fig.lattice, None)?;

    // Crossing-sum identity at every vertex and color.
    let mut crossings = check_crossing_relations(&fig.lattice, &fig.coefficients().map_err(|e| e.to_string())?, RootSystem::a(2).nodes())
        .map_err(|f| f.to_string())?;
    for l in &lattices {
        let subject = match l.family {
            Family::E7 { .. } => Subject::E7(l.clone()),
            f => Subject::build(&polymin::SubjectSpec::Polymin(f), usize::MAX).map_err(|e| e.to_string())?,
        };
        let p = subject.coefficients().map_err(|e| e.to_string())?;
        crossings += check_crossing_relations(subject.poset(), &p, subject.root_system().nodes())
            .map_err(|f| format!("{}: {f}", l.family.name()))?;
    }

    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(Default::default()));

    // GT conversions round-trip on random elements of L_E7(2w1).
    let e7 = &lattices[2];
    let colors_5: BTreeSet<Color> = gt5_layout().colors().iter().copied().collect();
    let mut gt_checked = 0;
    for _ in 0..100 {
        let t = (0..e7.len()).new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let g5 = to_gt5(e7, t, 2).map_err(|e| e.to_string())?;
        let g6 = to_gt6(e7, t, 2).map_err(|e| e.to_string())?;
        let mut values = vec![None; e7.data.len()];
        for (pos, v) in gt5_layout().read_back(&g5) {
            values[e7.data.index_of(pos).expect("E7 position")] = Some(v as u32);
        }
        for (pos, v) in gt6_layout().read_back(&g6) {
            if !colors_5.contains(&pos.color) {
                values[e7.data.index_of(pos).expect("E7 position")] = Some(v as u32);
            }
        }
        let rebuilt: Option<Vec<u32>> = values.into_iter().collect();
        ensure(rebuilt.as_deref() == Some(e7.element(t)), || format!("GT round trip fails at element {t}"))?;
        gt_checked += 1;
    }

    // sqrt_of squares back on 1000 random positive rationals, and field
    // products distribute.
    let rational = (1i64..1_000_000, 1i64..100_000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()));
    runner = TestRunner::new_with_rng(
        Config { cases: 1000, ..Config::default() },
        TestRng::deterministic_rng(Default::default()),
    );
    runner
        .run(&rational, |x| {
            let r = sqrt_of(&x).expect("small rational");
            prop_assert_eq!((&r * &r).as_rational(), Some(x));
            Ok(())
        })
        .map_err(|e| format!("sqrt squaring: {e}"))?;
    runner = TestRunner::new_with_rng(Config { cases: 200, ..Config::default() }, TestRng::deterministic_rng(Default::default()));
    runner
        .run(&(rational.clone(), rational.clone(), rational), |(a, b, c)| {
            let (a, b, c) = (sqrt_of(&a).unwrap(), sqrt_of(&b).unwrap(), sqrt_of(&c).unwrap());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            Ok(())
        })
        .map_err(|e| format!("distributivity: {e}"))?;

    Ok(format!(
        "Birkhoff round trip on {} lattices, {gt_checked} GT round trips, 1000 square roots, {crossings} crossing sums",
        lattices.len() + 1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("skew-tabular golden lattice", criterion_1),
        ("minuscule sizes", criterion_2),
        ("E7 module certification, k <= 2", criterion_3),
        ("character identities", criterion_4),
        ("bracket and Serre relations", criterion_5),
        ("rank generating functions", criterion_6),
        ("E6 component embeddings", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}, {secs:.2}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}, {secs:.2}s) {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
