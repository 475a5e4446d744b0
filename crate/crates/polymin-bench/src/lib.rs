//! Shared fixtures for the polymin benchmarks in `benches/`.

use polymin::{build_skew_lattice, Family, Partition, SkewLattice};

/// The E7 and E6 families benchmarked at each size.
pub fn families(total: u32) -> Vec<Family> {
    vec![
        Family::E7 { k: total },
        Family::E6Omega1 { k: total },
        Family::E6Omega6 { k: total },
        Family::E6Ab { a: total / 2, b: total - total / 2 },
    ]
}

/// The skew-tabular lattice `L^skew_{A_n}(P/Q)`, panicking on bad frames.
pub fn skew(n: usize, p: &[u32], q: &[u32]) -> SkewLattice {
    let part = |v: &[u32]| Partition::new(v.to_vec()).expect("fixture partitions are valid");
    build_skew_lattice(n, &part(p), &part(q)).expect("fixture frames are valid")
}
