//! The four polyminuscule lattice families as integer arrays over their
//! compression posets.
//!
//! An element of `L_E7(kω1)` is an array `c_{p,q}` indexed by the 27
//! positions `(p, q)` of `P_E7(ω1)` (color `p`, rank `q`) with
//! `0 ≤ c_{p,q} ≤ c_{r,s} ≤ k` whenever `(p,q) ≥ (r,s)`: values shrink
//! going up the compression poset. Arrays are ordered componentwise, a
//! cover is a single-entry increment, and it is colored by the color of the
//! incremented position. The E6 families are built the same way from their
//! own compression posets; the two-parameter family additionally pins
//! `c_{1',8} ≤ a ≤ c_{1',6}`.
//!
//! The compression posets are transcribed from their Hasse diagrams as
//! literal tables below; tests pin vertex counts, color histograms, and an
//! independent derivation from root data.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::poset_core::{Color, ColoredRankedPoset, Edge, VertexColoredPoset};
use crate::root_data::{psi, RootSystem, Weight};

/// Errors raised by the lattice builders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("distinguished element m~(a,b) needs a + b = k, got a={a}, b={b}, k={k}")]
    ParameterSum { a: u32, b: u32, k: u32 },
    #[error("position {0} is not a vertex of the compression poset")]
    UnknownPosition(Position),
    #[error("array is not monotone at {0}")]
    NotMonotone(Position),
    #[error("invalid position label {0:?}")]
    BadPosition(String),
    #[error("lattice would have more than {limit} elements")]
    TooLarge { limit: usize },
}

/// A vertex `(p, q)` of a compression poset: color `p`, rank `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub color: Color,
    pub q: u32,
}

impl Position {
    pub const fn new(color: Color, q: u32) -> Self {
        Position { color, q }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.color, self.q)
    }
}

impl FromStr for Position {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::BadPosition(s.to_string());
        let (c, q) = s.split_once(',').ok_or_else(bad)?;
        Ok(Position { color: c.parse().map_err(|_| bad())?, q: q.trim().parse().map_err(|_| bad())? })
    }
}

/// Which of the four built-in compression posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetKind {
    /// `P_E7(ω1)`, 27 vertices.
    E7Omega1,
    /// `P_E6(ω1')`, 16 vertices.
    E6Omega1,
    /// `P_E6(ω6')`, 16 vertices.
    E6Omega6,
    /// The 24-vertex poset `𝒫` behind `L_E6(aω1' + bω6')`.
    E6Combined,
}

// Transcribed Hasse diagrams: vertices as `color,rank`, covers as
// `lower>upper`.

const E7_OMEGA1_VERTICES: &str = "1,0 2,1 3,2 4,3 5,4 5',4 4,5 6',5 3,6 5',6 2,7 4,7 1,8 3,8 5,8 \
    2,9 4,9 3,10 5',10 4,11 6',11 5,12 5',12 4,13 3,14 2,15 1,16";
const E7_OMEGA1_COVERS: &str = "1,0>2,1 2,1>3,2 3,2>4,3 4,3>5,4 4,3>5',4 5,4>4,5 5',4>4,5 \
    5',4>6',5 4,5>3,6 4,5>5',6 6',5>5',6 3,6>2,7 3,6>4,7 5',6>4,7 2,7>1,8 2,7>3,8 4,7>3,8 \
    4,7>5,8 1,8>2,9 3,8>2,9 3,8>4,9 5,8>4,9 2,9>3,10 4,9>3,10 4,9>5',10 3,10>4,11 5',10>4,11 \
    5',10>6',11 4,11>5,12 4,11>5',12 6',11>5',12 5,12>4,13 5',12>4,13 4,13>3,14 3,14>2,15 \
    2,15>1,16";

const E6_OMEGA1_VERTICES: &str = "6',0 5',1 3',2 2',3 4',3 1',4 3',4 2',5 5',5 3',6 6',6 4',7 \
    5',7 3',8 2',9 1',10";
const E6_OMEGA1_COVERS: &str = "6',0>5',1 5',1>3',2 3',2>2',3 3',2>4',3 2',3>1',4 2',3>3',4 \
    4',3>3',4 1',4>2',5 3',4>2',5 3',4>5',5 2',5>3',6 5',5>3',6 5',5>6',6 3',6>4',7 3',6>5',7 \
    6',6>5',7 4',7>3',8 5',7>3',8 3',8>2',9 2',9>1',10";

const E6_OMEGA6_VERTICES: &str = "1',0 2',1 3',2 4',3 5',3 3',4 6',4 2',5 5',5 1',6 3',6 2',7 \
    4',7 3',8 5',9 6',10";
const E6_OMEGA6_COVERS: &str = "1',0>2',1 2',1>3',2 3',2>4',3 3',2>5',3 4',3>3',4 5',3>3',4 \
    5',3>6',4 3',4>2',5 3',4>5',5 6',4>5',5 2',5>1',6 2',5>3',6 5',5>3',6 1',6>2',7 3',6>2',7 \
    3',6>4',7 2',7>3',8 4',7>3',8 3',8>5',9 5',9>6',10";

const E6_COMBINED_VERTICES: &str = "1',0 2',1 3',2 4',3 5',3 3',4 6',4 2',5 5',5 1',6 3',6 \
    2',7 4',7 1',8 3',8 2',9 5',9 3',10 6',10 4',11 5',11 3',12 2',13 1',14";
const E6_COMBINED_COVERS: &str = "1',0>2',1 2',1>3',2 3',2>4',3 3',2>5',3 4',3>3',4 5',3>3',4 \
    5',3>6',4 3',4>2',5 3',4>5',5 6',4>5',5 2',5>1',6 2',5>3',6 5',5>3',6 1',6>2',7 3',6>2',7 \
    3',6>4',7 2',7>1',8 2',7>3',8 4',7>3',8 1',8>2',9 3',8>2',9 3',8>5',9 2',9>3',10 5',9>3',10 \
    5',9>6',10 3',10>4',11 3',10>5',11 6',10>5',11 4',11>3',12 5',11>3',12 3',12>2',13 \
    2',13>1',14";

/// A compression poset with named positions.
///
/// Positions are stored sorted by `(q, color)`, which is a linear extension
/// of the poset; arrays are stored in this position order.
#[derive(Clone, Debug)]
pub struct CompressionPosetData {
    pub kind: PosetKind,
    positions: Vec<Position>,
    index: HashMap<Position, usize>,
    poset: VertexColoredPoset,
}

impl CompressionPosetData {
    /// Builds the named poset from its transcribed table.
    pub fn new(kind: PosetKind) -> Self {
        let (vertices, covers) = match kind {
            PosetKind::E7Omega1 => (E7_OMEGA1_VERTICES, E7_OMEGA1_COVERS),
            PosetKind::E6Omega1 => (E6_OMEGA1_VERTICES, E6_OMEGA1_COVERS),
            PosetKind::E6Omega6 => (E6_OMEGA6_VERTICES, E6_OMEGA6_COVERS),
            PosetKind::E6Combined => (E6_COMBINED_VERTICES, E6_COMBINED_COVERS),
        };
        let mut positions: Vec<Position> =
            vertices.split_whitespace().map(|s| s.parse().expect("table position")).collect();
        positions.sort_by_key(|p| (p.q, p.color));
        let covers: Vec<(Position, Position)> = covers
            .split_whitespace()
            .map(|s| {
                let (a, b) = s.split_once('>').expect("table cover");
                (a.parse().expect("table position"), b.parse().expect("table position"))
            })
            .collect();
        Self::from_parts(kind, positions, &covers).expect("transcribed tables form a poset")
    }

    /// Builds a poset from explicit positions and covers.
    pub fn from_parts(
        kind: PosetKind,
        positions: Vec<Position>,
        covers: &[(Position, Position)],
    ) -> Result<Self, LatticeError> {
        let index: HashMap<Position, usize> = positions.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let lookup = |p: &Position| index.get(p).copied().ok_or(LatticeError::UnknownPosition(*p));
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        let labels = positions.iter().map(Position::to_string).collect();
        let colors = positions.iter().map(|p| p.color).collect();
        let poset = VertexColoredPoset::new(labels, colors, pairs)
            .map_err(|_| LatticeError::BadPosition("cover table".into()))?;
        Ok(CompressionPosetData { kind, positions, index, poset })
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn poset(&self) -> &VertexColoredPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Storage index of a position.
    pub fn index_of(&self, p: Position) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Positions `x` with `lo ≤ x ≤ hi` in the poset.
    pub fn interval(&self, lo: Position, hi: Position) -> Vec<Position> {
        let down = self.poset.down_sets();
        let (l, h) = (self.index[&lo], self.index[&hi]);
        (0..self.len())
            .filter(|&x| down[x].contains(l) && down[h].contains(x))
            .map(|x| self.positions[x])
            .collect()
    }

    /// Positions at or above `p`.
    pub fn up_set(&self, p: Position) -> Vec<Position> {
        let down = self.poset.down_sets();
        let i = self.index[&p];
        (0..self.len()).filter(|&x| down[x].contains(i)).map(|x| self.positions[x]).collect()
    }

    /// Positions at or below `p`.
    pub fn down_set(&self, p: Position) -> Vec<Position> {
        let down = self.poset.down_sets();
        down[self.index[&p]].iter().map(|x| self.positions[x]).collect()
    }
}

/// A polyminuscule lattice family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `L_E7(kω1)`.
    E7 { k: u32 },
    /// `L_E6(kω1')`.
    E6Omega1 { k: u32 },
    /// `L_E6(kω6')`.
    E6Omega6 { k: u32 },
    /// `L_E6(aω1' + bω6')`.
    E6Ab { a: u32, b: u32 },
}

impl Family {
    pub fn poset_kind(&self) -> PosetKind {
        match self {
            Family::E7 { .. } => PosetKind::E7Omega1,
            Family::E6Omega1 { .. } => PosetKind::E6Omega1,
            Family::E6Omega6 { .. } => PosetKind::E6Omega6,
            Family::E6Ab { .. } => PosetKind::E6Combined,
        }
    }

    /// The largest array entry.
    pub fn max_value(&self) -> u32 {
        match *self {
            Family::E7 { k } | Family::E6Omega1 { k } | Family::E6Omega6 { k } => k,
            Family::E6Ab { a, b } => a + b,
        }
    }

    pub fn root_system(&self) -> RootSystem {
        match self {
            Family::E7 { .. } => RootSystem::e7(),
            _ => RootSystem::e6(),
        }
    }

    /// The highest weight, in the node order of [`Family::root_system`].
    pub fn highest_weight(&self) -> Weight {
        match *self {
            Family::E7 { k } => vec![k as i64, 0, 0, 0, 0, 0, 0],
            Family::E6Omega1 { k } => vec![k as i64, 0, 0, 0, 0, 0],
            Family::E6Omega6 { k } => vec![0, 0, 0, 0, 0, k as i64],
            Family::E6Ab { a, b } => vec![a as i64, 0, 0, 0, 0, b as i64],
        }
    }

    pub fn is_e6(&self) -> bool {
        !matches!(self, Family::E7 { .. })
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Family::E7 { k } => format!("L_E7({k}w1)"),
            Family::E6Omega1 { k } => format!("L_E6({k}w1')"),
            Family::E6Omega6 { k } => format!("L_E6({k}w6')"),
            Family::E6Ab { a, b } => format!("L_E6({a}w1'+{b}w6')"),
        }
    }
}

/// A lattice of monotone integer arrays over a compression poset.
#[derive(Clone, Debug)]
pub struct ArrayLattice {
    pub family: Family,
    pub data: CompressionPosetData,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    pub lattice: ColoredRankedPoset,
}

impl ArrayLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The array of element `t`, in position storage order.
    pub fn element(&self, t: usize) -> &[u32] {
        &self.elements[t]
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    /// Index of an array, if it is an element.
    pub fn find(&self, c: &[u32]) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// `c_{p,q}(t)`.
    pub fn value(&self, t: usize, p: Position) -> u32 {
        self.elements[t][self.data.index_of(p).expect("position of this poset")]
    }

    /// The position incremented along edge `e`.
    pub fn edge_position(&self, e: usize) -> Position {
        let edge = self.lattice.edge(e);
        let (lo, hi) = (&self.elements[edge.lo], &self.elements[edge.hi]);
        let i = (0..lo.len()).find(|&i| lo[i] != hi[i]).expect("edges change one entry");
        self.data.positions()[i]
    }

    /// JSON form `{"c":{"p,q":value}}` in canonical position order.
    pub fn element_json(&self, t: usize) -> Value {
        let mut m = Map::new();
        for (p, v) in self.data.positions().iter().zip(&self.elements[t]) {
            m.insert(p.to_string(), json!(v));
        }
        json!({"c": m})
    }

    /// Lattice JSON with arrays attached to each vertex.
    pub fn to_json(&self) -> Value {
        let mut j = self.lattice.to_json();
        if let Some(vs) = j["vertices"].as_array_mut() {
            for (t, v) in vs.iter_mut().enumerate() {
                v["c"] = self.element_json(t)["c"].clone();
            }
        }
        j["family"] = json!(self.family.name());
        j
    }
}

/// Per-position inclusive bounds used during enumeration.
fn bounds(family: Family, data: &CompressionPosetData) -> Vec<(u32, u32)> {
    let top = family.max_value();
    let mut b = vec![(0, top); data.len()];
    if let Family::E6Ab { a, .. } = family {
        let p = Color::primed(1);
        b[data.index_of(Position::new(p, 8)).expect("(1',8)")].1 = a;
        b[data.index_of(Position::new(p, 6)).expect("(1',6)")].0 = a;
    }
    b
}

/// Builds a lattice family. Elements are enumerated depth-first along the
/// `(q, color)` linear extension, giving lexicographic canonical order;
/// edges are found by hash lookup of single-entry increments.
pub fn build_lattice(family: Family) -> ArrayLattice {
    build_lattice_limited(family, usize::MAX).expect("no limit was given")
}

/// As [`build_lattice`], but gives up once more than `limit` elements have
/// been enumerated.
pub fn build_lattice_limited(family: Family, limit: usize) -> Result<ArrayLattice, LatticeError> {
    let data = CompressionPosetData::new(family.poset_kind());
    let bounds = bounds(family, &data);
    let elements = enumerate_arrays(&data, &bounds, limit).ok_or(LatticeError::TooLarge { limit })?;
    Ok(assemble(family, data, elements))
}

fn enumerate_arrays(data: &CompressionPosetData, bounds: &[(u32, u32)], limit: usize) -> Option<Vec<Vec<u32>>> {
    fn go(
        pos: usize,
        data: &CompressionPosetData,
        bounds: &[(u32, u32)],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) -> bool {
        if pos == data.len() {
            out.push(cur.clone());
            return out.len() <= limit;
        }
        // Storage order is a linear extension, so all lower covers of `pos`
        // are already assigned; higher positions must not exceed them.
        let cap = data.poset().lower_covers(pos).iter().map(|&u| cur[u]).min().unwrap_or(u32::MAX);
        let (lo, hi) = bounds[pos];
        for v in lo..=hi.min(cap) {
            cur[pos] = v;
            if !go(pos + 1, data, bounds, cur, out, limit) {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![0; data.len()];
    go(0, data, bounds, &mut cur, &mut out, limit).then_some(out)
}

fn assemble(family: Family, data: CompressionPosetData, elements: Vec<Vec<u32>>) -> ArrayLattice {
    let index: HashMap<Vec<u32>, usize> = elements.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut edges = Vec::new();
    for (lo, c) in elements.iter().enumerate() {
        let mut next = c.clone();
        for p in 0..data.len() {
            next[p] += 1;
            if let Some(&hi) = index.get(&next) {
                edges.push(Edge { lo, hi, color: data.positions()[p].color });
            }
            next[p] -= 1;
        }
    }
    let sep = if family.max_value() > 9 { "," } else { "" };
    let labels = elements
        .iter()
        .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join(sep))
        .collect();
    let lattice = ColoredRankedPoset::new(labels, edges).expect("single-entry increments are ranked by entry sum");
    ArrayLattice { family, data, elements, index, lattice }
}

/// `L_E7(kω1)`.
pub fn build_e7_lattice(k: u32) -> ArrayLattice {
    build_lattice(Family::E7 { k })
}

/// The three E6 families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum E6Variant {
    Omega1(u32),
    Omega6(u32),
    Ab(u32, u32),
}

impl E6Variant {
    pub fn family(self) -> Family {
        match self {
            E6Variant::Omega1(k) => Family::E6Omega1 { k },
            E6Variant::Omega6(k) => Family::E6Omega6 { k },
            E6Variant::Ab(a, b) => Family::E6Ab { a, b },
        }
    }
}

/// An E6-polyminuscule lattice.
pub fn build_e6_lattice(variant: E6Variant) -> ArrayLattice {
    build_lattice(variant.family())
}

/// The distinguished elements of `L_E7(kω1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinguished {
    /// The all-`k` maximum.
    M,
    /// All `k` except `c_{1,16} = 0`; tops the copy of `L_E6(kω1')`.
    MPrime,
    /// `0` at and above `(1,8)`, `k` at and below `(6',11)`; tops the copy
    /// of `L_E6(kω6')`.
    MDoublePrime,
    /// Tops the copy of `L_E6(aω1' + bω6')`.
    MTilde { a: u32, b: u32 },
}

/// The array of a distinguished element of `L_E7(kω1)`, in the storage
/// order of `P_E7(ω1)`.
pub fn distinguished_max(kind: Distinguished, k: u32) -> Result<Vec<u32>, LatticeError> {
    let data = CompressionPosetData::new(PosetKind::E7Omega1);
    let c = |n| Color::new(n);
    let pos = |col, q| Position::new(col, q);
    let mut values: Vec<Option<u32>> = vec![None; data.len()];
    let mut set = |ps: Vec<Position>, v: u32| {
        for p in ps {
            values[data.index_of(p).expect("E7 position")] = Some(v);
        }
    };
    match kind {
        Distinguished::M => set(data.positions().to_vec(), k),
        Distinguished::MPrime => {
            set(data.positions().to_vec(), k);
            set(vec![pos(c(1), 16)], 0);
        }
        Distinguished::MDoublePrime => {
            set(data.up_set(pos(c(1), 8)), 0);
            set(data.down_set(pos(Color::primed(6), 11)), k);
        }
        Distinguished::MTilde { a, b } => {
            if a + b != k {
                return Err(LatticeError::ParameterSum { a, b, k });
            }
            set(data.interval(pos(c(2), 9), pos(c(2), 15)), a);
            set(data.interval(pos(c(2), 1), pos(Color::primed(6), 11)), k);
            set(vec![pos(c(1), 16)], 0);
            set(vec![pos(c(1), 8)], a);
            set(vec![pos(c(1), 0)], k);
        }
    }
    let out: Vec<u32> = values
        .iter()
        .zip(data.positions())
        .map(|(v, p)| v.ok_or(LatticeError::UnknownPosition(*p)))
        .collect::<Result<_, _>>()?;
    check_monotone(&data, &out)?;
    Ok(out)
}

/// Checks `c_x ≤ c_y` whenever `x` covers `y`.
pub fn check_monotone(data: &CompressionPosetData, c: &[u32]) -> Result<(), LatticeError> {
    for &(lo, hi) in data.poset().covers() {
        if c[hi] > c[lo] {
            return Err(LatticeError::NotMonotone(data.positions()[hi]));
        }
    }
    Ok(())
}

/// The colors `ψ(I6) = {2, 3, 4, 5, 5', 6'}`.
pub fn psi_i6() -> BTreeSet<Color> {
    (1..=6).map(|i| psi(Color::primed(i))).collect()
}

/// The distinguished E7 element whose `ψ(I6)`-component realizes an E6
/// family, together with the E7 parameter `k`.
pub fn e6_embedding(variant: E6Variant) -> (Distinguished, u32) {
    match variant {
        E6Variant::Omega1(k) => (Distinguished::MPrime, k),
        E6Variant::Omega6(k) => (Distinguished::MDoublePrime, k),
        E6Variant::Ab(a, b) => (Distinguished::MTilde { a, b }, a + b),
    }
}

/// Derives the compression poset of a minuscule module from root data:
/// the weights of the W-orbit of `λ`, ordered by `μ < μ + α_i`, with
/// join-irreducibles of that lattice as the result. Used to cross-check the
/// transcribed tables.
pub fn minuscule_lattice_from_roots(rs: &RootSystem, lambda: &[i64]) -> ColoredRankedPoset {
    let orbit: Vec<Weight> = rs.orbit(lambda).into_iter().collect();
    let index: HashMap<&Weight, usize> = orbit.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (lo, w) in orbit.iter().enumerate() {
        for i in 0..rs.rank() {
            let up: Weight = w.iter().zip(&rs.cartan()[i]).map(|(a, b)| a + b).collect();
            if let Some(&hi) = index.get(&up) {
                edges.push(Edge { lo, hi, color: rs.nodes()[i] });
            }
        }
    }
    let labels = orbit.iter().map(|w| format!("{w:?}")).collect();
    ColoredRankedPoset::new(labels, edges).expect("weight differences are simple roots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn hist(kind: PosetKind) -> BTreeMap<String, usize> {
        CompressionPosetData::new(kind)
            .poset()
            .color_histogram()
            .into_iter()
            .map(|(c, n)| (c.to_string(), n))
            .collect()
    }

    #[test]
    fn compression_poset_sizes_and_histograms() {
        let sizes: Vec<(usize, usize)> = [
            PosetKind::E7Omega1,
            PosetKind::E6Omega1,
            PosetKind::E6Omega6,
            PosetKind::E6Combined,
        ]
        .iter()
        .map(|&k| {
            let d = CompressionPosetData::new(k);
            (d.len(), d.poset().covers().len())
        })
        .collect();
        assert_eq!(sizes, vec![(27, 36), (16, 20), (16, 20), (24, 32)]);
        let e7: BTreeMap<String, usize> =
            [("1", 3), ("2", 4), ("3", 5), ("4", 6), ("5", 3), ("5'", 4), ("6'", 2)]
                .iter()
                .map(|&(c, n)| (c.to_string(), n))
                .collect();
        assert_eq!(hist(PosetKind::E7Omega1), e7);
        let e6: BTreeMap<String, usize> =
            [("1'", 2), ("2'", 3), ("3'", 4), ("4'", 2), ("5'", 3), ("6'", 2)]
                .iter()
                .map(|&(c, n)| (c.to_string(), n))
                .collect();
        assert_eq!(hist(PosetKind::E6Omega1), e6);
        assert_eq!(hist(PosetKind::E6Omega6), e6);
        let combined: BTreeMap<String, usize> =
            [("1'", 4), ("2'", 5), ("3'", 6), ("4'", 3), ("5'", 4), ("6'", 2)]
                .iter()
                .map(|&(c, n)| (c.to_string(), n))
                .collect();
        assert_eq!(hist(PosetKind::E6Combined), combined);
    }

    #[test]
    fn combined_poset_is_e7_poset_without_color_one() {
        // 𝒫 is P_E7(ω1) minus its color-1 vertices, relabeled by ψ⁻¹ with
        // ranks shifted down by one.
        let e7 = CompressionPosetData::new(PosetKind::E7Omega1);
        let combined = CompressionPosetData::new(PosetKind::E6Combined);
        let mut expected: Vec<Position> = combined
            .positions()
            .iter()
            .map(|p| Position::new(psi(p.color), p.q + 1))
            .collect();
        expected.sort();
        let mut kept: Vec<Position> =
            e7.positions().iter().copied().filter(|p| p.color != Color::new(1)).collect();
        kept.sort();
        assert_eq!(expected, kept);
    }

    #[test]
    fn positions_parse() {
        let p: Position = "5',12".parse().unwrap();
        assert_eq!(p, Position::new(Color::primed(5), 12));
        assert_eq!(p.to_string(), "5',12");
        assert!("5'".parse::<Position>().is_err());
    }

    #[test]
    fn trivial_lattices() {
        assert_eq!(build_e7_lattice(0).len(), 1);
        assert_eq!(build_e6_lattice(E6Variant::Ab(0, 0)).len(), 1);
        let l = build_e7_lattice(1);
        assert_eq!(l.len(), 56);
        assert_eq!(l.element(l.lattice.top().unwrap()), &[1; 27][..]);
        assert_eq!(l.element(l.lattice.bottom().unwrap()), &[0; 27][..]);
    }

    #[test]
    fn limit_guard() {
        assert_eq!(
            build_lattice_limited(Family::E7 { k: 2 }, 100).unwrap_err(),
            LatticeError::TooLarge { limit: 100 }
        );
    }

    #[test]
    fn distinguished_elements() {
        let e7 = CompressionPosetData::new(PosetKind::E7Omega1);
        let get = |c: &[u32], col: Color, q| c[e7.index_of(Position::new(col, q)).unwrap()];
        let m2 = distinguished_max(Distinguished::MDoublePrime, 2).unwrap();
        assert_eq!(m2.iter().filter(|&&v| v == 0).count(), 10);
        assert_eq!(m2.iter().filter(|&&v| v == 2).count(), 17);
        let mt = distinguished_max(Distinguished::MTilde { a: 1, b: 1 }, 2).unwrap();
        assert_eq!(get(&mt, Color::new(1), 8), 1);
        assert_eq!(get(&mt, Color::new(5), 12), 1);
        assert_eq!(get(&mt, Color::primed(6), 11), 2);
        assert_eq!(
            distinguished_max(Distinguished::MTilde { a: 1, b: 0 }, 2),
            Err(LatticeError::ParameterSum { a: 1, b: 0, k: 2 })
        );
    }
}
