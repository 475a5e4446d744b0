//! Type-A skew-tabular lattices built from Gelfand–Tsetlin parallelograms,
//! and the closed-form edge coefficients on them.
//!
//! A GT `(n+1)`-parallelogram framed by partitions `P/Q` (each with `m`
//! parts) is an integer array `g_{i,j}` with columns `i = 0, …, n+1` and
//! indices `j ∈ C_i = {i, i−1, …, i−(m−1)}`. The frame columns are fixed:
//! `g_{0,−t} = Q_{t+1}` and `g_{n+1,n+1−t} = P_{t+1}`. The interior
//! satisfies
//!
//! ```text
//! g_{i−1,j} ≥ g_{i,j} ≥ g_{i+1,j}    and    g_{i−1,j−1} ≤ g_{i,j} ≤ g_{i+1,j+1}
//! ```
//!
//! wherever both sides are defined. Incrementing `g_{i,j}` by one is a
//! covering edge of color `i`. Internally column `i` is stored as a vector
//! indexed by `t = i − j`.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::poset_core::{Color, ColoredRankedPoset, Edge};

/// Errors raised by skew-tabular constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("partition {0:?} is not non-increasing")]
    NotPartition(Vec<u32>),
    #[error("frame partitions have {0} and {1} parts")]
    LengthMismatch(usize, usize),
    #[error("frame needs P_i >= Q_i, fails at part {0}")]
    NotContained(usize),
    #[error("need n >= 1 and m >= 1")]
    Degenerate,
    #[error("cell ({i},{j}) is not an interior cell")]
    NotInterior { i: usize, j: i64 },
    #[error("denominator vanishes at cell ({i},{j})")]
    ZeroDenominator { i: usize, j: i64 },
    #[error("coefficient at cell ({i},{j}) is {value}, not positive")]
    NotPositive { i: usize, j: i64, value: BigRational },
    #[error("GT inequality fails between ({0},{1}) and ({2},{3})")]
    Inequality(usize, i64, usize, i64),
    #[error("lattice would have more than {limit} elements")]
    TooLarge { limit: usize },
}

/// A non-increasing tuple of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SkewError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SkewError::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A GT `(n+1)`-parallelogram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GtParallelogram {
    n: usize,
    m: usize,
    /// `g[i][t]` is `g_{i, i−t}`.
    g: Vec<Vec<i64>>,
}

impl GtParallelogram {
    /// The all-zero array with `n + 2` columns of height `m`.
    pub fn zeros(n: usize, m: usize) -> Self {
        GtParallelogram { n, m, g: vec![vec![0; m]; n + 2] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `g_{i,j}`, or `None` outside the parallelogram.
    pub fn get(&self, i: usize, j: i64) -> Option<i64> {
        let t = i as i64 - j;
        (i <= self.n + 1 && (0..self.m as i64).contains(&t)).then(|| self.g[i][t as usize])
    }

    /// `g_{i,j}`; panics outside the parallelogram.
    pub fn at(&self, i: usize, j: i64) -> i64 {
        self.get(i, j).unwrap_or_else(|| panic!("({i},{j}) is outside the parallelogram"))
    }

    /// Sets `g_{i,j}`; panics outside the parallelogram.
    pub fn set(&mut self, i: usize, j: i64, v: i64) {
        let t = i as i64 - j;
        assert!(i <= self.n + 1 && (0..self.m as i64).contains(&t), "({i},{j}) is outside");
        self.g[i][t as usize] = v;
    }

    /// Column `i` as `(g_{i,i}, g_{i,i−1}, …)`.
    pub fn column(&self, i: usize) -> &[i64] {
        &self.g[i]
    }

    /// The index set `C_i`.
    pub fn index_set(&self, i: usize) -> impl Iterator<Item = i64> {
        let i = i as i64;
        (0..self.m as i64).map(move |t| i - t)
    }

    /// Checks both diagonal inequalities wherever defined, and
    /// nonnegativity.
    pub fn check_inequalities(&self) -> Result<(), SkewError> {
        for i in 1..=self.n + 1 {
            for j in self.index_set(i) {
                let v = self.at(i, j);
                if v < 0 {
                    return Err(SkewError::Inequality(i, j, i, j));
                }
                if let Some(w) = self.get(i - 1, j) {
                    if w < v {
                        return Err(SkewError::Inequality(i - 1, j, i, j));
                    }
                }
                if let Some(w) = self.get(i - 1, j - 1) {
                    if w > v {
                        return Err(SkewError::Inequality(i - 1, j - 1, i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// `m_i` read off the array: `Σ_t (2 g_{i,i−t} − g_{i+1,i+1−t} − g_{i−1,i−1−t})`.
    pub fn m_value(&self, i: usize) -> i64 {
        (0..self.m).map(|t| 2 * self.g[i][t] - self.g[i + 1][t] - self.g[i - 1][t]).sum()
    }

    /// Compact label: interior columns separated by `|`.
    pub fn label(&self) -> String {
        let cols: Vec<String> = (1..=self.n)
            .map(|i| self.g[i].iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        cols.join("|")
    }

    /// JSON form: `{"columns":[[g_{i,i}, g_{i,i-1}, …], …]}` over all columns.
    pub fn to_json(&self) -> Value {
        json!({"columns": self.g})
    }
}

/// The skew-tabular lattice `L^skew_{A_n}(P/Q)`.
#[derive(Clone, Debug)]
pub struct SkewLattice {
    pub n: usize,
    pub p: Partition,
    pub q: Partition,
    elements: Vec<GtParallelogram>,
    index: HashMap<GtParallelogram, usize>,
    /// For each edge, the incremented cell `(i, j)`.
    cells: Vec<(usize, i64)>,
    pub lattice: ColoredRankedPoset,
}

impl SkewLattice {
    pub fn m(&self) -> usize {
        self.p.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, t: usize) -> &GtParallelogram {
        &self.elements[t]
    }

    pub fn elements(&self) -> &[GtParallelogram] {
        &self.elements
    }

    pub fn find(&self, g: &GtParallelogram) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// The cell `(i, j)` incremented along edge `e`.
    pub fn edge_cell(&self, e: usize) -> (usize, i64) {
        self.cells[e]
    }

    /// Lattice JSON: the poset export with each vertex's GT columns under
    /// `"gt"`, plus the frame and `n`.
    pub fn to_json(&self) -> Value {
        let mut j = self.lattice.to_json();
        if let Some(vs) = j["vertices"].as_array_mut() {
            for (t, v) in vs.iter_mut().enumerate() {
                v["gt"] = self.elements[t].to_json()["columns"].clone();
            }
        }
        j["family"] = json!(format!("L_skew_A{}", self.n));
        j["n"] = json!(self.n);
        j["p"] = json!(self.p.parts());
        j["q"] = json!(self.q.parts());
        j
    }

    /// The coefficient `P` on every edge, evaluated on the edge's top.
    pub fn coefficients(&self) -> Result<Vec<BigRational>, SkewError> {
        self.lattice
            .edges()
            .iter()
            .zip(&self.cells)
            .map(|(e, &(i, j))| gt_coefficient(&self.elements[e.hi], i, j))
            .collect()
    }
}

fn frame(n: usize, p: &Partition, q: &Partition) -> Result<GtParallelogram, SkewError> {
    if p.len() != q.len() {
        return Err(SkewError::LengthMismatch(p.len(), q.len()));
    }
    if n == 0 || p.is_empty() {
        return Err(SkewError::Degenerate);
    }
    if let Some(i) = (0..p.len()).find(|&i| p.parts()[i] < q.parts()[i]) {
        return Err(SkewError::NotContained(i + 1));
    }
    let m = p.len();
    let mut g = GtParallelogram::zeros(n, m);
    for t in 0..m {
        g.g[0][t] = q.parts()[t] as i64;
        g.g[n + 1][t] = p.parts()[t] as i64;
    }
    Ok(g)
}

/// Builds `L^skew_{A_n}(P/Q)`.
///
/// Elements are enumerated column by column (top index first), giving
/// lexicographic canonical order; edges come from hash lookup of
/// single-cell increments.
pub fn build_skew_lattice(n: usize, p: &Partition, q: &Partition) -> Result<SkewLattice, SkewError> {
    build_skew_lattice_limited(n, p, q, usize::MAX)
}

/// As [`build_skew_lattice`], giving up beyond `limit` elements.
pub fn build_skew_lattice_limited(
    n: usize,
    p: &Partition,
    q: &Partition,
    limit: usize,
) -> Result<SkewLattice, SkewError> {
    let mut g = frame(n, p, q)?;
    let m = p.len();
    let mut elements = Vec::new();
    if !enumerate(1, 0, n, m, &mut g, &mut elements, limit) {
        return Err(SkewError::TooLarge { limit });
    }
    let index: HashMap<GtParallelogram, usize> =
        elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    let mut edges = Vec::new();
    let mut cells = Vec::new();
    for (lo, x) in elements.iter().enumerate() {
        let mut y = x.clone();
        for i in 1..=n {
            for t in 0..m {
                y.g[i][t] += 1;
                if let Some(&hi) = index.get(&y) {
                    edges.push(Edge { lo, hi, color: Color::new(i as u8) });
                    cells.push((i, i as i64 - t as i64));
                }
                y.g[i][t] -= 1;
            }
        }
    }
    let labels = elements.iter().map(GtParallelogram::label).collect();
    let lattice = ColoredRankedPoset::new(labels, edges).expect("single-cell increments are ranked by entry sum");
    Ok(SkewLattice { n, p: p.clone(), q: q.clone(), elements, index, cells, lattice })
}

fn enumerate(
    i: usize,
    t: usize,
    n: usize,
    m: usize,
    g: &mut GtParallelogram,
    out: &mut Vec<GtParallelogram>,
    limit: usize,
) -> bool {
    if i > n {
        out.push(g.clone());
        return out.len() <= limit;
    }
    let (ni, nt) = if t + 1 == m { (i + 1, 0) } else { (i, t + 1) };
    // Constraints against the (already fixed) column i−1, and the same-t
    // diagonal chain up to the P frame.
    let mut lo = g.g[i - 1][t].max(0);
    let mut hi = g.g[n + 1][t];
    if t >= 1 {
        hi = hi.min(g.g[i - 1][t - 1]);
    }
    if i == n && t + 1 < m {
        lo = lo.max(g.g[n + 1][t + 1]);
    }
    for v in lo..=hi {
        g.g[i][t] = v;
        if !enumerate(ni, nt, n, m, g, out, limit) {
            return false;
        }
    }
    g.g[i][t] = 0;
    true
}

/// The edge coefficient `P` for the cover that increments `g_{i,j}`,
/// evaluated on the top element `s`:
///
/// ```text
///      −∏_{p∈C_{i+1}} (g_{i,j} − g_{i+1,p} + j − p) · ∏_{p∈C_{i−1}} (g_{i,j} − g_{i−1,p} + j − p − 1)
/// P = ─────────────────────────────────────────────────────────────────────────────────────────────
///               ∏_{p∈C_i∖{j}} (g_{i,j} − g_{i,p} + j − p − 1)(g_{i,j} − g_{i,p} + j − p)
/// ```
pub fn gt_coefficient(s: &GtParallelogram, i: usize, j: i64) -> Result<BigRational, SkewError> {
    if i == 0 || i > s.n || s.get(i, j).is_none() {
        return Err(SkewError::NotInterior { i, j });
    }
    let gij = s.at(i, j);
    let mut num = -BigInt::one();
    for p in s.index_set(i + 1) {
        num *= BigInt::from(gij - s.at(i + 1, p) + j - p);
    }
    for p in s.index_set(i - 1) {
        num *= BigInt::from(gij - s.at(i - 1, p) + j - p - 1);
    }
    let mut den = BigInt::one();
    for p in s.index_set(i).filter(|&p| p != j) {
        let d = gij - s.at(i, p) + j - p;
        den *= BigInt::from((d - 1) * d);
    }
    if den.is_zero() {
        return Err(SkewError::ZeroDenominator { i, j });
    }
    let value = BigRational::new(num, den);
    if !value.is_positive() {
        return Err(SkewError::NotPositive { i, j, value });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fig_1_1_shape() {
        let l = build_skew_lattice(2, &part(&[3, 3]), &part(&[2, 0])).unwrap();
        assert_eq!(l.len(), 15);
        assert_eq!(l.lattice.edges().len(), 23);
        assert_eq!(l.lattice.rgf(), vec![1, 2, 3, 3, 3, 2, 1]);
        for g in l.elements() {
            g.check_inequalities().unwrap();
            assert_eq!(g.at(2, 2), 3);
        }
    }

    #[test]
    fn equal_frames_give_a_point() {
        let l = build_skew_lattice(3, &part(&[4, 2, 1, 0]), &part(&[4, 2, 1, 0])).unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn malformed_frames() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(
            build_skew_lattice(2, &part(&[3, 3]), &part(&[2])).unwrap_err(),
            SkewError::LengthMismatch(2, 1)
        );
        assert_eq!(
            build_skew_lattice(2, &part(&[1, 0]), &part(&[2, 0])).unwrap_err(),
            SkewError::NotContained(1)
        );
        assert_eq!(build_skew_lattice(0, &part(&[1]), &part(&[0])).unwrap_err(), SkewError::Degenerate);
    }

    #[test]
    fn one_column_by_hand() {
        // n = 1, m = 2, P = (1,0), Q = (0,0): g_{1,0} is pinned to 0 and
        // g_{1,1} ∈ {0, 1}, so the lattice is a single edge. On its top,
        // numerator −(1−1+1−2)(1−0+1−1)·(1−0+1−0−1)(1−0+1+1−1) = 2 and
        // denominator (1−0+1−0−1)(1−0+1−0) = 2.
        let l = build_skew_lattice(1, &part(&[1, 0]), &part(&[0, 0])).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.edge_cell(0), (1, 1));
        let top = l.element(l.lattice.edge(0).hi);
        assert_eq!(gt_coefficient(top, 1, 1).unwrap(), BigRational::one());
        assert_eq!(gt_coefficient(top, 1, 3), Err(SkewError::NotInterior { i: 1, j: 3 }));
        assert_eq!(gt_coefficient(top, 2, 2), Err(SkewError::NotInterior { i: 2, j: 2 }));
    }

    #[test]
    fn m_values_match_lattice() {
        let l = build_skew_lattice(2, &part(&[3, 3]), &part(&[2, 0])).unwrap();
        let table = l.lattice.m_table();
        for t in 0..l.len() {
            for i in 1..=2 {
                assert_eq!(l.element(t).m_value(i), table.get(Color::new(i as u8), t));
            }
        }
    }
}
