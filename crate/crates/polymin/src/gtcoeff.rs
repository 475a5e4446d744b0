//! Edge coefficients on `L_E7(kω1)` through GT 5- and 6-parallelograms.
//!
//! Every array `t ∈ L_E7(kω1)` is rewritten as a GT parallelogram in two
//! ways:
//!
//! * [`to_gt5`] — columns `0, …, 6` (column `i` carries color `i` for
//!   `i ∈ J5 = {1,2,3,4,5}`);
//! * [`to_gt6`] — columns `0, 1, 2, 3, 4, 5', 6', 7`, stored as indices
//!   `0, …, 7` (colors `J6 = {1,2,3,4,5',6'}`).
//!
//! In both, `m = 9` and each cell holds `0`, `k`, or an entry `c_{p,q}(t)`.
//! Positions whose color lies in the relevant color set appear in exactly
//! one cell; the remaining cells are fixed along the `J5`- (resp. `J6`-)
//! component, and the frame columns determine the partitions `P/Q` whose
//! skew-tabular lattice that component is isomorphic to. The coefficient of
//! an edge `r →ⁱ s` is [`gt_coefficient`](crate::skew_tabular::gt_coefficient)
//! evaluated on the image of `s`; colors `1–4` have two routes, which must
//! agree.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::lattices::{
    build_lattice_limited, distinguished_max, e6_embedding, psi_i6, ArrayLattice, E6Variant, Family, LatticeError,
    Position,
};
use crate::poset_core::{color_isomorphism, Color, PosetError};
use crate::root_data::psi;
use crate::skew_tabular::{build_skew_lattice, gt_coefficient, GtParallelogram, Partition, SkewError};

/// Errors raised by the GT bridge.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("GT{which} image of element {t} violates the GT inequalities: {source}")]
    Transcription { which: u8, t: usize, source: SkewError },
    #[error(
        "coefficient routes disagree on edge {edge} ({lo} -> {hi}, color {color}): GT5 gives {via_j5}, GT6 gives {via_j6}"
    )]
    RouteDisagreement { edge: usize, lo: usize, hi: usize, color: Color, via_j5: String, via_j6: String },
    #[error("coefficient requested with k = {requested} on a lattice built with k = {actual}")]
    WrongK { requested: u32, actual: u32 },
    #[error("lattice is not an E7 lattice")]
    NotE7,
    #[error("coefficient formula failed on edge {edge}: {source}")]
    Formula { edge: usize, source: SkewError },
    #[error("component of element {t} is not isomorphic to its skew-tabular lattice: {reason}")]
    NotIsomorphic { t: usize, reason: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The source of a GT cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Zero,
    K,
    C(Position),
}

/// Which GT layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Gt5,
    Gt6,
}

// Cell tables: `column j_from..j_to source`, where source is `0`, `k`, or a
// position `p,q`.

const GT5_TABLE: &str = "
0 -8..-8 0; 0 -7..-4 5',12; 0 -3..0 5',4;
1 -7..-7 1,16; 1 -6..-4 5',12; 1 -3..-3 1,8; 1 -2..0 5',4; 1 1..1 1,0;
2 -6..-6 2,15; 2 -5..-4 5',12; 2 -3..-3 2,9; 2 -2..-2 2,7; 2 -1..0 5',4; 2 1..1 2,1; 2 2..2 k;
3 -5..-5 3,14; 3 -4..-4 5',12; 3 -3..-3 3,10; 3 -2..-2 3,8; 3 -1..-1 3,6; 3 0..0 5',4; 3 1..1 3,2; 3 2..3 k;
4 -4..-4 4,13; 4 -3..-3 4,11; 4 -2..-2 4,9; 4 -1..-1 4,7; 4 0..0 4,5; 4 1..1 4,3; 4 2..4 k;
5 -3..-3 5,12; 5 -2..-2 5',10; 5 -1..-1 5,8; 5 0..0 5',6; 5 1..1 5,4; 5 2..5 k;
6 -2..-1 5',10; 6 0..1 5',6; 6 2..6 k";

const GT6_TABLE: &str = "
0 -8..-8 0; 0 -7..-4 5,12; 0 -3..0 5,4;
1 -7..-7 1,16; 1 -6..-4 5,12; 1 -3..-3 1,8; 1 -2..0 5,4; 1 1..1 1,0;
2 -6..-6 2,15; 2 -5..-4 5,12; 2 -3..-3 2,9; 2 -2..-2 2,7; 2 -1..0 5,4; 2 1..1 2,1; 2 2..2 k;
3 -5..-5 3,14; 3 -4..-4 5,12; 3 -3..-3 3,10; 3 -2..-2 3,8; 3 -1..-1 3,6; 3 0..0 5,4; 3 1..1 3,2; 3 2..3 k;
4 -4..-4 4,13; 4 -3..-3 4,11; 4 -2..-2 4,9; 4 -1..-1 4,7; 4 0..0 4,5; 4 1..1 4,3; 4 2..4 k;
5 -3..-3 5',12; 5 -2..-2 5',10; 5 -1..-1 5,8; 5 0..0 5',6; 5 1..1 5',4; 5 2..5 k;
6 -2..-2 6',11; 6 -1..0 5,8; 6 1..1 6',5; 6 2..6 k;
7 -1..1 5,8; 7 2..7 k";

/// A parsed cell table together with its column ↔ color dictionary.
#[derive(Clone, Debug)]
pub struct GtLayout {
    pub layout: Layout,
    /// Number of interior columns (`5` or `6`).
    pub n: usize,
    /// `cells[i][t]` is the source of `g_{i, i−t}`.
    cells: Vec<Vec<Cell>>,
    /// Flexible positions → their unique cell `(i, j)`.
    home: HashMap<Position, (usize, i64)>,
    /// Interior column → color.
    column_colors: Vec<Color>,
}

pub const GT_HEIGHT: usize = 9;

impl GtLayout {
    pub fn new(layout: Layout) -> Self {
        let (table, n) = match layout {
            Layout::Gt5 => (GT5_TABLE, 5),
            Layout::Gt6 => (GT6_TABLE, 6),
        };
        let column_colors: Vec<Color> = match layout {
            Layout::Gt5 => (1..=5).map(Color::new).collect(),
            Layout::Gt6 => vec![
                Color::new(1),
                Color::new(2),
                Color::new(3),
                Color::new(4),
                Color::primed(5),
                Color::primed(6),
            ],
        };
        let mut cells: Vec<Vec<Option<Cell>>> = vec![vec![None; GT_HEIGHT]; n + 2];
        for entry in table.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let mut it = entry.split_whitespace();
            let col: usize = it.next().and_then(|s| s.parse().ok()).expect("table column");
            let (from, to) = it.next().and_then(|s| s.split_once("..")).expect("table range");
            let (from, to): (i64, i64) = (from.parse().expect("j"), to.parse().expect("j"));
            let cell = match it.next().expect("table source") {
                "0" => Cell::Zero,
                "k" => Cell::K,
                p => Cell::C(p.parse().expect("table position")),
            };
            for j in from..=to {
                let t = col as i64 - j;
                assert!((0..GT_HEIGHT as i64).contains(&t), "cell ({col},{j}) outside the layout");
                let slot = &mut cells[col][t as usize];
                assert!(slot.is_none(), "cell ({col},{j}) listed twice");
                *slot = Some(cell);
            }
        }
        let cells: Vec<Vec<Cell>> = cells
            .into_iter()
            .map(|c| c.into_iter().map(|x| x.expect("every cell is listed")).collect())
            .collect();
        let mut home = HashMap::new();
        for (i, col) in cells.iter().enumerate().take(n + 1).skip(1) {
            for (t, cell) in col.iter().enumerate() {
                if let Cell::C(p) = cell {
                    if p.color == column_colors[i - 1] {
                        let prev = home.insert(*p, (i, i as i64 - t as i64));
                        assert!(prev.is_none(), "flexible position {p} appears twice");
                    }
                }
            }
        }
        GtLayout { layout, n, cells, home, column_colors }
    }

    /// The cell source of `g_{i,j}`.
    pub fn cell(&self, i: usize, j: i64) -> Cell {
        self.cells[i][(i as i64 - j) as usize]
    }

    /// Colors carried by interior columns.
    pub fn colors(&self) -> &[Color] {
        &self.column_colors
    }

    /// The interior column of a color.
    pub fn column_of(&self, c: Color) -> Option<usize> {
        self.column_colors.iter().position(|&x| x == c).map(|i| i + 1)
    }

    /// The unique cell holding a flexible position.
    pub fn home(&self, p: Position) -> Option<(usize, i64)> {
        self.home.get(&p).copied()
    }

    /// Flexible positions with their cells.
    pub fn flexible(&self) -> impl Iterator<Item = (Position, (usize, i64))> + '_ {
        self.home.iter().map(|(&p, &c)| (p, c))
    }

    /// Fills the layout from an array.
    pub fn fill(&self, l: &ArrayLattice, t: usize, k: u32) -> GtParallelogram {
        let mut g = GtParallelogram::zeros(self.n, GT_HEIGHT);
        for (i, col) in self.cells.iter().enumerate() {
            for (tt, cell) in col.iter().enumerate() {
                let v = match cell {
                    Cell::Zero => 0,
                    Cell::K => k as i64,
                    Cell::C(p) => l.value(t, *p) as i64,
                };
                g.set(i, i as i64 - tt as i64, v);
            }
        }
        g
    }

    /// Reads the flexible cells of a parallelogram back into `(position,
    /// value)` pairs.
    pub fn read_back(&self, g: &GtParallelogram) -> Vec<(Position, i64)> {
        let mut v: Vec<(Position, i64)> = self.flexible().map(|(p, (i, j))| (p, g.at(i, j))).collect();
        v.sort();
        v
    }
}

fn layouts() -> &'static (GtLayout, GtLayout) {
    static L: OnceLock<(GtLayout, GtLayout)> = OnceLock::new();
    L.get_or_init(|| (GtLayout::new(Layout::Gt5), GtLayout::new(Layout::Gt6)))
}

/// The shared GT5 layout.
pub fn gt5_layout() -> &'static GtLayout {
    &layouts().0
}

/// The shared GT6 layout.
pub fn gt6_layout() -> &'static GtLayout {
    &layouts().1
}

fn e7_k(l: &ArrayLattice) -> Result<u32, GtError> {
    match l.family {
        Family::E7 { k } => Ok(k),
        _ => Err(GtError::NotE7),
    }
}

fn convert(l: &ArrayLattice, t: usize, k: u32, layout: &GtLayout) -> Result<GtParallelogram, GtError> {
    let actual = e7_k(l)?;
    if actual != k {
        return Err(GtError::WrongK { requested: k, actual });
    }
    let g = layout.fill(l, t, k);
    let which = if layout.layout == Layout::Gt5 { 5 } else { 6 };
    g.check_inequalities().map_err(|source| GtError::Transcription { which, t, source })?;
    Ok(g)
}

/// The GT 5-parallelogram of element `t` of `L_E7(kω1)`.
pub fn to_gt5(l: &ArrayLattice, t: usize, k: u32) -> Result<GtParallelogram, GtError> {
    convert(l, t, k, gt5_layout())
}

/// The GT 6-parallelogram of element `t` of `L_E7(kω1)`.
pub fn to_gt6(l: &ArrayLattice, t: usize, k: u32) -> Result<GtParallelogram, GtError> {
    convert(l, t, k, gt6_layout())
}

/// The frame partitions `(P, Q)` read off a parallelogram's outer columns.
pub fn frame_of(g: &GtParallelogram) -> (Partition, Partition) {
    let n = g.n();
    let part = |col: &[i64]| Partition::new(col.iter().map(|&v| v as u32).collect()).expect("frame columns are non-increasing");
    (part(g.column(n + 1)), part(g.column(0)))
}

/// The fixed data of a `J5`-component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J5Frame {
    /// `c_{5',4}, c_{5',6}, c_{5',10}, c_{5',12}, c_{6',5}, c_{6',11}`.
    pub fixed: [u32; 6],
    pub p: Partition,
    pub q: Partition,
}

impl J5Frame {
    pub fn of(l: &ArrayLattice, t: usize) -> Result<Self, GtError> {
        let k = e7_k(l)?;
        let v = |c: Color, q| l.value(t, Position::new(c, q));
        let p5 = Color::primed(5);
        let p6 = Color::primed(6);
        let fixed = [v(p5, 4), v(p5, 6), v(p5, 10), v(p5, 12), v(p6, 5), v(p6, 11)];
        let (p, q) = frame_of(&to_gt5(l, t, k)?);
        Ok(J5Frame { fixed, p, q })
    }
}

/// The fixed data of a `J6`-component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J6Frame {
    /// `c_{5,4}, c_{5,8}, c_{5,12}`.
    pub fixed: [u32; 3],
    pub p: Partition,
    pub q: Partition,
}

impl J6Frame {
    pub fn of(l: &ArrayLattice, t: usize) -> Result<Self, GtError> {
        let k = e7_k(l)?;
        let v = |q| l.value(t, Position::new(Color::new(5), q));
        let (p, q) = frame_of(&to_gt6(l, t, k)?);
        Ok(J6Frame { fixed: [v(4), v(8), v(12)], p, q })
    }
}

/// The coefficient of one edge by one route, or `None` if the edge color is
/// not carried by that layout.
pub fn route_coefficient(l: &ArrayLattice, e: usize, k: u32, layout: &GtLayout) -> Result<Option<BigRational>, GtError> {
    let edge = l.lattice.edge(e);
    if layout.column_of(edge.color).is_none() {
        return Ok(None);
    }
    let p = l.edge_position(e);
    let (i, j) = layout.home(p).expect("positions of column colors are flexible");
    let g = convert(l, edge.hi, k, layout)?;
    gt_coefficient(&g, i, j).map(Some).map_err(|source| GtError::Formula { edge: e, source })
}

/// The coefficient `P` of edge `e` of `L_E7(kω1)`: via GT5 for colors in
/// `J5`, via GT6 for colors in `J6`, and via both (which must agree) for
/// colors `1–4`.
pub fn edge_coefficient_e7(l: &ArrayLattice, e: usize, k: u32) -> Result<BigRational, GtError> {
    let via5 = route_coefficient(l, e, k, gt5_layout())?;
    let via6 = route_coefficient(l, e, k, gt6_layout())?;
    match (via5, via6) {
        (Some(a), Some(b)) if a != b => {
            let edge = l.lattice.edge(e);
            Err(GtError::RouteDisagreement {
                edge: e,
                lo: edge.lo,
                hi: edge.hi,
                color: edge.color,
                via_j5: a.to_string(),
                via_j6: b.to_string(),
            })
        }
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => unreachable!("J5 ∪ J6 covers all E7 colors"),
    }
}

/// Edge coefficients of an E7 lattice, computed lazily and cached per edge.
///
/// Safe for concurrent use: each slot is written at most once and writes
/// are idempotent.
#[derive(Debug)]
pub struct E7Coefficients<'a> {
    lattice: &'a ArrayLattice,
    k: u32,
    cache: Vec<OnceLock<BigRational>>,
}

impl<'a> E7Coefficients<'a> {
    pub fn new(lattice: &'a ArrayLattice) -> Result<Self, GtError> {
        let k = e7_k(lattice)?;
        Ok(E7Coefficients { lattice, k, cache: (0..lattice.lattice.edges().len()).map(|_| OnceLock::new()).collect() })
    }

    /// The coefficient of edge `e`.
    pub fn get(&self, e: usize) -> Result<BigRational, GtError> {
        if let Some(v) = self.cache[e].get() {
            return Ok(v.clone());
        }
        let v = edge_coefficient_e7(self.lattice, e, self.k)?;
        Ok(self.cache[e].get_or_init(|| v).clone())
    }

    /// All coefficients, computed in parallel; the reported error is the
    /// first failing edge in edge order.
    pub fn all(&self) -> Result<Vec<BigRational>, GtError> {
        (0..self.cache.len()).into_par_iter().map(|e| self.get(e)).collect()
    }

    /// Number of edges on which both routes were evaluated (colors 1–4).
    pub fn two_route_edges(&self) -> usize {
        let (g5, g6) = (gt5_layout(), gt6_layout());
        self.lattice
            .lattice
            .edges()
            .iter()
            .filter(|e| g5.column_of(e.color).is_some() && g6.column_of(e.color).is_some())
            .count()
    }
}

/// Checks that the `layout`-component of `t` is isomorphic to the
/// skew-tabular lattice of its frame, via the explicit map `s ↦ GT(s)`:
/// the map must be a bijection onto the skew lattice that sends each
/// color-`c` edge to an edge of column `c`. Also checks that the GT `m_i`
/// formula agrees with the lattice's `m_i` on the component.
///
/// Returns the component's members.
pub fn check_component_isomorphism(
    l: &ArrayLattice,
    t: usize,
    layout: &GtLayout,
    m_table: &crate::poset_core::MTable,
) -> Result<Vec<usize>, GtError> {
    let k = e7_k(l)?;
    let colors: BTreeSet<Color> = layout.colors().iter().copied().collect();
    let comp = l.lattice.component(&colors, t);
    let g = convert(l, t, k, layout)?;
    let (p, q) = frame_of(&g);
    let skew = build_skew_lattice(layout.n, &p, &q).map_err(|e| GtError::NotIsomorphic { t, reason: e.to_string() })?;
    let fail = |reason: String| GtError::NotIsomorphic { t, reason };
    if skew.len() != comp.members.len() || skew.lattice.edges().len() != comp.poset.edges().len() {
        return Err(fail(format!(
            "component has {} elements / {} edges, skew lattice {} / {}",
            comp.members.len(),
            comp.poset.edges().len(),
            skew.len(),
            skew.lattice.edges().len()
        )));
    }
    let mut image = Vec::with_capacity(comp.members.len());
    for &s in &comp.members {
        let gs = convert(l, s, k, layout)?;
        let idx = skew.find(&gs).ok_or_else(|| fail(format!("GT image of {s} is not in the skew lattice")))?;
        for (i, &c) in layout.colors().iter().enumerate() {
            let from_gt = gs.m_value(i + 1);
            let from_lattice = m_table.get(c, s);
            if from_gt != from_lattice {
                return Err(fail(format!("m_{c}({s}) is {from_lattice} but the GT sum gives {from_gt}")));
            }
        }
        image.push(idx);
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        return Err(fail("GT map is not injective".into()));
    }
    for e in comp.poset.edges() {
        let f = skew
            .lattice
            .edge_between(image[e.lo], image[e.hi])
            .ok_or_else(|| fail(format!("edge {}->{} has no image", comp.members[e.lo], comp.members[e.hi])))?;
        let (col, _) = skew.edge_cell(f);
        if layout.colors()[col - 1] != e.color {
            return Err(fail(format!("edge of color {} maps to column {col}", e.color)));
        }
    }
    Ok(comp.members)
}

/// Runs [`check_component_isomorphism`] once per component covering the
/// whole lattice; returns the number of components checked.
pub fn check_all_components(l: &ArrayLattice, layout: &GtLayout) -> Result<usize, GtError> {
    let table = l.lattice.m_table();
    let mut seen = vec![false; l.len()];
    let mut count = 0;
    for t in 0..l.len() {
        if seen[t] {
            continue;
        }
        for s in check_component_isomorphism(l, t, layout, &table)? {
            seen[s] = true;
        }
        count += 1;
    }
    Ok(count)
}

/// An E6 lattice realized inside `L_E7(kω1)` as the `ψ(I6)`-component of a
/// distinguished element, with coefficients transported from E7.
#[derive(Debug)]
pub struct E6Embedding {
    pub e6: ArrayLattice,
    pub e7: ArrayLattice,
    /// The E7 element at the top of the component.
    pub top: usize,
    /// E6 element ↦ E7 element.
    pub map: Vec<usize>,
    /// Coefficient `P` of each E6 edge.
    pub coefficients: Vec<BigRational>,
}

/// Builds an E6 lattice, locates its copy inside `L_E7(kω1)` by a
/// color-isomorphism search (colors translated by ψ), and transports the
/// E7 edge coefficients.
pub fn e6_via_e7(variant: E6Variant) -> Result<E6Embedding, GtError> {
    e6_via_e7_limited(variant, usize::MAX)
}

/// As [`e6_via_e7`], refusing to build either lattice beyond `limit`
/// elements.
pub fn e6_via_e7_limited(variant: E6Variant, limit: usize) -> Result<E6Embedding, GtError> {
    let (kind, k) = e6_embedding(variant);
    let e6 = build_lattice_limited(variant.family(), limit)?;
    let e7 = build_lattice_limited(Family::E7 { k }, limit)?;
    let top_array = distinguished_max(kind, k)?;
    let top = e7.find(&top_array).expect("distinguished elements lie in the lattice");
    let comp = e7.lattice.component(&psi_i6(), top);
    let local_map = color_isomorphism(&e6.lattice, &comp.poset, &psi)?.ok_or_else(|| GtError::NotIsomorphic {
        t: top,
        reason: format!("{} is not color-isomorphic to the psi(I6)-component", e6.family.name()),
    })?;
    let map: Vec<usize> = local_map.iter().map(|&x| comp.members[x]).collect();
    let coeffs = E7Coefficients::new(&e7)?;
    let coefficients = e6
        .lattice
        .edges()
        .iter()
        .map(|e| {
            let f = e7.lattice.edge_between(map[e.lo], map[e.hi]).expect("isomorphism maps edges to edges");
            coeffs.get(f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(E6Embedding { e6, e7, top, map, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{build_e6_lattice, build_e7_lattice};
    use num::One;

    #[test]
    fn layouts_have_every_flexible_position_once() {
        let e7 = crate::lattices::CompressionPosetData::new(crate::lattices::PosetKind::E7Omega1);
        for (layout, colors) in [
            (gt5_layout(), vec!["1", "2", "3", "4", "5"]),
            (gt6_layout(), vec!["1", "2", "3", "4", "5'", "6'"]),
        ] {
            let expected: BTreeSet<Position> = e7
                .positions()
                .iter()
                .copied()
                .filter(|p| colors.contains(&p.color.to_string().as_str()))
                .collect();
            let got: BTreeSet<Position> = layout.flexible().map(|(p, _)| p).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn maximal_and_minimal_elements() {
        let l = build_e7_lattice(2);
        let top = l.lattice.top().unwrap();
        let g = to_gt5(&l, top, 2).unwrap();
        assert_eq!(g.at(0, -8), 0);
        for i in 0..=6 {
            for j in g.index_set(i).collect::<Vec<_>>() {
                if (i, j) != (0, -8) {
                    assert_eq!(g.at(i, j), 2, "cell ({i},{j})");
                }
            }
        }
        let bottom = l.lattice.bottom().unwrap();
        let g = to_gt6(&l, bottom, 2).unwrap();
        for i in 0..=7usize {
            for j in g.index_set(i).collect::<Vec<_>>() {
                let expect = if gt6_layout().cell(i, j) == Cell::K { 2 } else { 0 };
                assert_eq!(g.at(i, j), expect);
            }
        }
    }

    #[test]
    fn k_one_coefficients_are_one() {
        let l = build_e7_lattice(1);
        let c = E7Coefficients::new(&l).unwrap();
        assert!(c.all().unwrap().iter().all(|p| p.is_one()));
    }

    #[test]
    fn wrong_k_is_rejected() {
        let l = build_e7_lattice(1);
        assert_eq!(edge_coefficient_e7(&l, 0, 2), Err(GtError::WrongK { requested: 2, actual: 1 }));
        let e6 = build_e6_lattice(E6Variant::Omega1(1));
        assert_eq!(to_gt5(&e6, 0, 1).unwrap_err(), GtError::NotE7);
    }

    #[test]
    fn component_isomorphisms_k1() {
        let l = build_e7_lattice(1);
        assert!(check_all_components(&l, gt5_layout()).unwrap() > 1);
        assert!(check_all_components(&l, gt6_layout()).unwrap() > 1);
    }
}
