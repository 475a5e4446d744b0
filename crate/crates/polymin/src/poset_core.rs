//! Finite vertex-colored and edge-colored ranked posets.
//!
//! This module is the combinatorial substrate of the crate:
//!
//! * [`Color`] — node labels such as `1`, `5'`, `6'` (primed and unprimed
//!   labels never collide);
//! * [`VertexColoredPoset`] — a Hasse diagram with a color on every vertex
//!   (compression posets live here);
//! * [`ColoredRankedPoset`] — an edge-colored ranked poset given by its
//!   colored cover relations (all lattices live here);
//! * down-set lattices, join-irreducibles, colored components, the
//!   `m_i = ρ_i − δ_i` statistic and color-preserving isomorphism search.
//!
//! Vertices are plain `usize` indices. Every constructor keeps the caller's
//! vertex order, so callers that enumerate in a canonical order get
//! deterministic matrix indices and JSON output for free.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

/// Errors raised while building or checking posets and lattices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover ({0}, {1}) refers to a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("cover relation contains a cycle through vertex {0}")]
    Cycle(usize),
    #[error("cover ({0}, {1}) is implied by transitivity of other covers")]
    TransitiveCover(usize, usize),
    #[error("duplicate cover ({0}, {1})")]
    DuplicateCover(usize, usize),
    #[error("edge ({0}, {1}) is inconsistent with a rank function")]
    NotRanked(usize, usize),
    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("lattice is not distributive: {0}")]
    NotDistributive(String),
    #[error("diamond {q} -> ({r}, {s}) -> {t} is not diamond-colored")]
    DiamondColoring { q: usize, r: usize, s: usize, t: usize },
    #[error("expected a unique {0} element, found {1}")]
    Extremal(&'static str, usize),
    #[error("invalid color label {0:?}")]
    BadColor(String),
}

/// A color (Dynkin node label): a positive integer, optionally primed.
///
/// The derived order puts `5` before `5'` before `6'`, which is the column
/// order used throughout for E7; for E6 it is `1' < 2' < … < 6'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color {
    pub num: u8,
    pub primed: bool,
}

impl Color {
    /// An unprimed label.
    pub const fn new(num: u8) -> Self {
        Color { num, primed: false }
    }

    /// A primed label such as `5'`.
    pub const fn primed(num: u8) -> Self {
        Color { num, primed: true }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "{}'", self.num)
        } else {
            write!(f, "{}", self.num)
        }
    }
}

impl FromStr for Color {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (digits, primed) = match t.strip_suffix('\'').or_else(|| t.strip_suffix('′')) {
            Some(d) => (d, true),
            None => (t, false),
        };
        let num: u8 = digits.parse().map_err(|_| PosetError::BadColor(s.to_string()))?;
        if num == 0 {
            return Err(PosetError::BadColor(s.to_string()));
        }
        Ok(Color { num, primed })
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A fixed-width bitset used for down-sets and order ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    /// An empty set able to hold `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }
}

/// A finite poset given by its Hasse diagram, with a color on every vertex.
#[derive(Clone, Debug)]
pub struct VertexColoredPoset {
    labels: Vec<String>,
    colors: Vec<Color>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl VertexColoredPoset {
    /// Builds a poset from labels, colors and covers `(u, v)` meaning `u <· v`.
    ///
    /// Rejects out-of-range vertices, duplicate covers, cycles, and covers
    /// implied by transitivity of the others.
    pub fn new(
        labels: Vec<String>,
        colors: Vec<Color>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        assert_eq!(labels.len(), colors.len(), "one label per color");
        let n = colors.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(u, v) in &covers {
            if u >= n || v >= n {
                return Err(PosetError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(PosetError::Cycle(u));
            }
            if !seen.insert((u, v)) {
                return Err(PosetError::DuplicateCover(u, v));
            }
            lower[v].push(u);
            upper[u].push(v);
        }
        for l in lower.iter_mut().chain(upper.iter_mut()) {
            l.sort_unstable();
        }
        let order = topological_order(n, &lower, &upper)?;
        let poset = VertexColoredPoset { labels, colors, covers, lower, upper, order };
        let down = poset.down_sets();
        for v in 0..n {
            for &u in &poset.lower[v] {
                if poset.lower[v].iter().any(|&w| w != u && down[w].contains(u)) {
                    return Err(PosetError::TransitiveCover(u, v));
                }
            }
        }
        Ok(poset)
    }

    /// The empty poset.
    pub fn empty() -> Self {
        VertexColoredPoset::new(Vec::new(), Vec::new(), Vec::new()).expect("empty poset is valid")
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower[v]
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.upper[v]
    }

    /// A fixed linear extension (smallest available index first).
    pub fn linear_extension(&self) -> &[usize] {
        &self.order
    }

    /// Length of the longest chain ending at each vertex.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for &v in &self.order {
            rank[v] = self.lower[v].iter().map(|&u| rank[u] + 1).max().unwrap_or(0);
        }
        rank
    }

    /// For each vertex, the set of vertices `≤` it (reflexive).
    pub fn down_sets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut down = vec![BitSet::new(n); n];
        for &v in &self.order {
            let mut d = BitSet::new(n);
            d.insert(v);
            for &u in &self.lower[v] {
                d.union_with(&down[u]);
            }
            down[v] = d;
        }
        down
    }

    /// Number of vertices of each color.
    pub fn color_histogram(&self) -> BTreeMap<Color, usize> {
        let mut h = BTreeMap::new();
        for &c in &self.colors {
            *h.entry(c).or_insert(0) += 1;
        }
        h
    }

    /// JSON form `{"vertices":[{"id","label","color","rank"}],"covers":[[u,v]]}`.
    pub fn to_json(&self) -> Value {
        let rank = self.ranks();
        let vertices: Vec<Value> = (0..self.len())
            .map(|v| {
                json!({"id": v, "label": self.labels[v], "color": self.colors[v], "rank": rank[v]})
            })
            .collect();
        let covers: Vec<Value> = self.covers.iter().map(|&(u, v)| json!([u, v])).collect();
        json!({"vertices": vertices, "covers": covers})
    }
}

fn topological_order(
    n: usize,
    lower: &[Vec<usize>],
    upper: &[Vec<usize>],
) -> Result<Vec<usize>, PosetError> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &upper[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(PosetError::Cycle(stuck));
    }
    Ok(order)
}

/// A colored covering edge `lo →color hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub color: Color,
}

/// A diamond `q → r → t`, `q → s → t` with `r < s`, given by vertices and
/// the indices of its four edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub qr: usize,
    pub qs: usize,
    pub rt: usize,
    pub st: usize,
}

/// An edge-colored ranked poset given by its colored covering edges.
///
/// Ranks are normalized so that every connected component has minimum
/// rank 0.
#[derive(Clone, Debug)]
pub struct ColoredRankedPoset {
    labels: Vec<String>,
    rank: Vec<u32>,
    edges: Vec<Edge>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl ColoredRankedPoset {
    /// Builds the poset and its rank function from covering edges.
    pub fn new(labels: Vec<String>, edges: Vec<Edge>) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (ei, e) in edges.iter().enumerate() {
            if e.lo >= n || e.hi >= n {
                return Err(PosetError::VertexOutOfRange(e.lo, e.hi, n));
            }
            if edge_index.insert((e.lo, e.hi), ei).is_some() {
                return Err(PosetError::DuplicateCover(e.lo, e.hi));
            }
            up[e.lo].push(ei);
            down[e.hi].push(ei);
        }
        let rank = compute_ranks(n, &edges, &up, &down)?;
        Ok(ColoredRankedPoset { labels, rank, edges, up, down, edge_index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn rank(&self, v: usize) -> u32 {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Largest rank present (0 for an empty or one-element poset).
    pub fn length(&self) -> u32 {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    /// Indices of edges leaving `v` upward.
    pub fn up_edges(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    /// Indices of edges entering `v` from below.
    pub fn down_edges(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    /// Index of the edge `lo → hi`, if it exists.
    pub fn edge_between(&self, lo: usize, hi: usize) -> Option<usize> {
        self.edge_index.get(&(lo, hi)).copied()
    }

    /// The set of colors carried by edges.
    pub fn colors(&self) -> BTreeSet<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }

    /// Elements with no upper cover.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.up[v].is_empty()).collect()
    }

    /// Elements with no lower cover.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.down[v].is_empty()).collect()
    }

    /// The unique maximal element.
    pub fn top(&self) -> Result<usize, PosetError> {
        unique(self.maximal_elements(), "maximal")
    }

    /// The unique minimal element.
    pub fn bottom(&self) -> Result<usize, PosetError> {
        unique(self.minimal_elements(), "minimal")
    }

    /// Vertices in nondecreasing rank order (stable in index).
    pub fn rank_order(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&x| self.rank[x]);
        v
    }

    /// Rank generating function as a coefficient list: entry `r` counts
    /// elements of rank `r`.
    pub fn rgf(&self) -> Vec<u64> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; self.length() as usize + 1];
        for &r in &self.rank {
            c[r as usize] += 1;
        }
        c
    }

    /// Number of edges of each color.
    pub fn edge_color_histogram(&self) -> BTreeMap<Color, usize> {
        let mut h = BTreeMap::new();
        for e in &self.edges {
            *h.entry(e.color).or_insert(0) += 1;
        }
        h
    }

    /// All diamonds, ordered by bottom vertex then by the pair of middle
    /// vertices.
    pub fn diamonds(&self) -> Vec<Diamond> {
        let mut out = Vec::new();
        for q in 0..self.len() {
            let ups = &self.up[q];
            for (a, &qr) in ups.iter().enumerate() {
                for &qs in &ups[a + 1..] {
                    let (r, s) = (self.edges[qr].hi, self.edges[qs].hi);
                    let (qr, qs, r, s) = if r < s { (qr, qs, r, s) } else { (qs, qr, s, r) };
                    for &rt in &self.up[r] {
                        let t = self.edges[rt].hi;
                        if let Some(st) = self.edge_between(s, t) {
                            out.push(Diamond { q, r, s, t, qr, qs, rt, st });
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks the diamond-coloring condition: in every diamond, opposite
    /// edges carry equal colors. Returns the number of diamonds checked.
    pub fn check_diamond_coloring(&self) -> Result<usize, PosetError> {
        let diamonds = self.diamonds();
        for d in &diamonds {
            let c = |e: usize| self.edges[e].color;
            if c(d.qr) != c(d.st) || c(d.qs) != c(d.rt) {
                return Err(PosetError::DiamondColoring { q: d.q, r: d.r, s: d.s, t: d.t });
            }
        }
        Ok(diamonds.len())
    }

    /// For each vertex, the set of vertices `≥` it (reflexive).
    pub fn up_sets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut sets = vec![BitSet::new(n); n];
        for &v in self.rank_order().iter().rev() {
            let mut s = BitSet::new(n);
            s.insert(v);
            for &e in &self.up[v] {
                s.union_with(&sets[self.edges[e].hi]);
            }
            sets[v] = s;
        }
        sets
    }

    /// For each vertex, the set of vertices `≤` it (reflexive).
    pub fn down_sets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut sets = vec![BitSet::new(n); n];
        for &v in &self.rank_order() {
            let mut s = BitSet::new(n);
            s.insert(v);
            for &e in &self.down[v] {
                s.union_with(&sets[self.edges[e].lo]);
            }
            sets[v] = s;
        }
        sets
    }

    /// Brute-force lattice check: every pair has a join and a meet.
    ///
    /// Cost is `O(|L|² · |L| / 64)`; callers gate it on size.
    pub fn check_lattice_brute_force(&self) -> Result<(), PosetError> {
        let ups = self.up_sets();
        let downs = self.down_sets();
        let n = self.len();
        let order = self.rank_order();
        let least_in = |set: &BitSet, table: &[BitSet], rev: bool| -> bool {
            // The candidate extremum of `set` is its lowest (resp. highest)
            // ranked member; it must be comparable to every other member.
            let candidate = if rev {
                order.iter().rev().find(|&&z| set.contains(z))
            } else {
                order.iter().find(|&&z| set.contains(z))
            };
            candidate.is_some_and(|&z| table[z] == *set)
        };
        for x in 0..n {
            for y in x + 1..n {
                let mut u = ups[x].clone();
                u.intersect_with(&ups[y]);
                if !least_in(&u, &ups, false) {
                    return Err(PosetError::NotALattice(x, y, "join"));
                }
                let mut d = downs[x].clone();
                d.intersect_with(&downs[y]);
                if !least_in(&d, &downs, true) {
                    return Err(PosetError::NotALattice(x, y, "meet"));
                }
            }
        }
        Ok(())
    }

    /// The connected subgraph reachable from `t` along edges whose colors
    /// lie in `colors`, with its own rank function.
    pub fn component(&self, colors: &BTreeSet<Color>, t: usize) -> Component {
        let mut seen = BTreeSet::new();
        seen.insert(t);
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for &e in self.up[v].iter().chain(&self.down[v]) {
                let edge = self.edges[e];
                if colors.contains(&edge.color) {
                    let w = if edge.lo == v { edge.hi } else { edge.lo };
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let members: Vec<usize> = seen.into_iter().collect();
        let local: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = members.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for &v in &members {
            for &e in &self.up[v] {
                let edge = self.edges[e];
                if colors.contains(&edge.color) {
                    if let Some(&hi) = local.get(&edge.hi) {
                        edges.push(Edge { lo: local[&v], hi, color: edge.color });
                    }
                }
            }
        }
        let poset = ColoredRankedPoset::new(labels, edges)
            .expect("a connected subgraph of a ranked poset is ranked");
        Component { poset, members }
    }

    /// `m_color(s) = ρ(s) − δ(s)` computed inside the single-color
    /// component of `s`.
    pub fn m_value(&self, color: Color, s: usize) -> i64 {
        let comp = self.component(&BTreeSet::from([color]), s);
        let local = comp.members.binary_search(&s).expect("s is in its own component");
        let r = comp.poset.rank(local) as i64;
        2 * r - comp.poset.length() as i64
    }

    /// The `m`-values of every vertex for every color, computed by one
    /// union-find pass per color.
    pub fn m_table(&self) -> MTable {
        let colors: Vec<Color> = self.colors().into_iter().collect();
        let n = self.len();
        let mut values = Vec::with_capacity(colors.len());
        for &c in &colors {
            let mut uf = UnionFind::new(n);
            for e in self.edges.iter().filter(|e| e.color == c) {
                uf.union(e.lo, e.hi);
            }
            let mut lo = vec![u32::MAX; n];
            let mut hi = vec![0u32; n];
            for v in 0..n {
                let root = uf.find(v);
                lo[root] = lo[root].min(self.rank[v]);
                hi[root] = hi[root].max(self.rank[v]);
            }
            let col: Vec<i64> = (0..n)
                .map(|v| {
                    let root = uf.find(v);
                    2 * self.rank[v] as i64 - lo[root] as i64 - hi[root] as i64
                })
                .collect();
            values.push(col);
        }
        MTable { colors, values }
    }

    /// JSON form `{"vertices":[{"id","label","rank"}],"covers":[[u,v,"color"]]}`.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = (0..self.len())
            .map(|v| json!({"id": v, "label": self.labels[v], "rank": self.rank[v]}))
            .collect();
        let covers: Vec<Value> =
            self.edges.iter().map(|e| json!([e.lo, e.hi, e.color.to_string()])).collect();
        json!({"vertices": vertices, "covers": covers})
    }

    /// Graphviz DOT export with edges drawn upward and labeled by color.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
        for v in 0..self.len() {
            s.push_str(&format!("  n{v} [label=\"{}\"];\n", self.labels[v].replace('"', "\\\"")));
        }
        for e in &self.edges {
            s.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.lo, e.hi, e.color));
        }
        s.push_str("}\n");
        s
    }
}

fn unique(v: Vec<usize>, what: &'static str) -> Result<usize, PosetError> {
    match v.as_slice() {
        [x] => Ok(*x),
        _ => Err(PosetError::Extremal(what, v.len())),
    }
}

fn compute_ranks(
    n: usize,
    edges: &[Edge],
    up: &[Vec<usize>],
    down: &[Vec<usize>],
) -> Result<Vec<u32>, PosetError> {
    let mut rank: Vec<Option<i64>> = vec![None; n];
    let mut out = vec![0u32; n];
    for start in 0..n {
        if rank[start].is_some() {
            continue;
        }
        rank[start] = Some(0);
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let rv = rank[v].expect("queued vertices are ranked");
            for (&e, dir) in up[v].iter().map(|e| (e, 1)).chain(down[v].iter().map(|e| (e, -1))) {
                let edge = edges[e];
                let w = if dir == 1 { edge.hi } else { edge.lo };
                match rank[w] {
                    None => {
                        rank[w] = Some(rv + dir);
                        comp.push(w);
                        queue.push_back(w);
                    }
                    Some(rw) if rw != rv + dir => return Err(PosetError::NotRanked(edge.lo, edge.hi)),
                    Some(_) => {}
                }
            }
        }
        let min = comp.iter().map(|&v| rank[v].expect("ranked")).min().unwrap_or(0);
        for &v in &comp {
            out[v] = (rank[v].expect("ranked") - min) as u32;
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A colored component together with the global ids of its members
/// (sorted; local vertex `i` is global vertex `members[i]`).
#[derive(Clone, Debug)]
pub struct Component {
    pub poset: ColoredRankedPoset,
    pub members: Vec<usize>,
}

/// Precomputed `m_i` values for every vertex and every edge color.
#[derive(Clone, Debug)]
pub struct MTable {
    colors: Vec<Color>,
    values: Vec<Vec<i64>>,
}

impl MTable {
    /// `m_color(v)`; colors carried by no edge give 0.
    pub fn get(&self, color: Color, v: usize) -> i64 {
        match self.colors.iter().position(|&c| c == color) {
            Some(i) => self.values[i][v],
            None => 0,
        }
    }

    /// The vector `(m_c(v))` over the given colors.
    pub fn weight(&self, colors: &[Color], v: usize) -> Vec<i64> {
        colors.iter().map(|&c| self.get(c, v)).collect()
    }
}

/// A down-set lattice `J_color(P)` with the ideal behind each element.
#[derive(Clone, Debug)]
pub struct DownSetLattice {
    pub lattice: ColoredRankedPoset,
    pub ideals: Vec<BitSet>,
}

/// The lattice of order ideals of `p`, ordered by containment; the edge
/// `I → I ∪ {v}` carries `color(v)`.
///
/// Ideals are enumerated depth-first along the poset's linear extension,
/// excluding before including, so the empty ideal comes first.
pub fn down_set_lattice(p: &VertexColoredPoset) -> DownSetLattice {
    let ideals = enumerate_ideals(p, usize::MAX).expect("no limit was given");
    let index: HashMap<&BitSet, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, ideal) in ideals.iter().enumerate() {
        for v in 0..p.len() {
            if !ideal.contains(v) && p.lower_covers(v).iter().all(|&u| ideal.contains(u)) {
                let mut next = ideal.clone();
                next.insert(v);
                edges.push(Edge { lo: i, hi: index[&next], color: p.color(v) });
            }
        }
    }
    let labels = ideals
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|v| p.label(v)).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect();
    let lattice = ColoredRankedPoset::new(labels, edges).expect("containment covers are ranked by size");
    DownSetLattice { lattice, ideals }
}

/// Enumerates the order ideals of `p`, giving up (returning `None`) once
/// more than `limit` have been found.
pub fn enumerate_ideals(p: &VertexColoredPoset, limit: usize) -> Option<Vec<BitSet>> {
    fn go(
        p: &VertexColoredPoset,
        pos: usize,
        cur: &mut BitSet,
        out: &mut Vec<BitSet>,
        limit: usize,
    ) -> bool {
        if pos == p.len() {
            out.push(cur.clone());
            return out.len() <= limit;
        }
        let v = p.linear_extension()[pos];
        if !go(p, pos + 1, cur, out, limit) {
            return false;
        }
        if p.lower_covers(v).iter().all(|&u| cur.contains(u)) {
            cur.insert(v);
            let ok = go(p, pos + 1, cur, out, limit);
            cur.remove(v);
            return ok;
        }
        true
    }
    let mut out = Vec::new();
    let mut cur = BitSet::new(p.len());
    go(p, 0, &mut cur, &mut out, limit).then_some(out)
}

/// The compression poset of a lattice together with the bookkeeping that
/// links it back to lattice elements.
#[derive(Clone, Debug)]
pub struct JoinIrreducibles {
    /// The induced poset of join-irreducibles, colored by the color of the
    /// unique lower cover.
    pub poset: VertexColoredPoset,
    /// Lattice element behind each poset vertex.
    pub elements: Vec<usize>,
    /// For each lattice element, the set of poset vertices below it.
    pub below: Vec<BitSet>,
}

/// Join-irreducibles of a lattice with a unique minimum: elements covering
/// exactly one element.
pub fn join_irreducibles(l: &ColoredRankedPoset) -> Result<JoinIrreducibles, PosetError> {
    if !l.is_empty() {
        l.bottom()?;
    }
    let elements: Vec<usize> = (0..l.len()).filter(|&v| l.down_edges(v).len() == 1).collect();
    let jn = elements.len();
    let ji_of: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut below = vec![BitSet::new(jn); l.len()];
    for &v in &l.rank_order() {
        let mut s = BitSet::new(jn);
        for &e in l.down_edges(v) {
            s.union_with(&below[l.edge(e).lo]);
        }
        if let Some(&j) = ji_of.get(&v) {
            s.insert(j);
        }
        below[v] = s;
    }
    let mut covers = Vec::new();
    for b in 0..jn {
        let mut strict = below[elements[b]].clone();
        strict.remove(b);
        for a in strict.iter() {
            let skipped = strict.iter().any(|c| {
                c != a && below[elements[c]].contains(a)
            });
            if !skipped {
                covers.push((a, b));
            }
        }
    }
    let colors = elements.iter().map(|&v| l.edge(l.down_edges(v)[0]).color).collect();
    let labels = elements.iter().map(|&v| l.label(v).to_string()).collect();
    let poset = VertexColoredPoset::new(labels, colors, covers)
        .expect("the induced order on join-irreducibles is a poset");
    Ok(JoinIrreducibles { poset, elements, below })
}

/// Certifies `down_set_lattice(join_irreducibles(L)) ≅ L` color-preservingly
/// (which also certifies that `L` is a distributive lattice).
///
/// Checks that `x ↦ {j ≤ x}` is injective, that every covering edge adds a
/// single join-irreducible of the edge's color, and that `L` has exactly as
/// many elements and edges as the ideal lattice.
pub fn check_birkhoff(l: &ColoredRankedPoset) -> Result<JoinIrreducibles, PosetError> {
    let ji = join_irreducibles(l)?;
    let mut seen = HashSet::with_capacity(l.len());
    for (x, b) in ji.below.iter().enumerate() {
        if !seen.insert(b) {
            return Err(PosetError::NotDistributive(format!(
                "element {x} has the same join-irreducible support as another element"
            )));
        }
    }
    for e in l.edges() {
        let mut diff = ji.below[e.hi].clone();
        if !ji.below[e.lo].is_subset(&diff) {
            return Err(PosetError::NotDistributive(format!("edge {}->{} is not monotone", e.lo, e.hi)));
        }
        for j in ji.below[e.lo].iter() {
            diff.remove(j);
        }
        let added: Vec<usize> = diff.iter().collect();
        if added.len() != 1 || ji.poset.color(added[0]) != e.color {
            return Err(PosetError::NotDistributive(format!(
                "edge {}->{} does not add exactly one join-irreducible of color {}",
                e.lo, e.hi, e.color
            )));
        }
    }
    let ideals = enumerate_ideals(&ji.poset, l.len());
    let ideal_count = ideals.as_ref().map_or(usize::MAX, Vec::len);
    if ideal_count != l.len() {
        return Err(PosetError::NotDistributive(format!(
            "{} elements but the join-irreducible poset has {} ideals",
            l.len(),
            if ideal_count == usize::MAX { "more".to_string() } else { ideal_count.to_string() }
        )));
    }
    let ideal_covers: usize = ji
        .below
        .iter()
        .map(|b| {
            (0..ji.poset.len())
                .filter(|&v| !b.contains(v) && ji.poset.lower_covers(v).iter().all(|&u| b.contains(u)))
                .count()
        })
        .sum();
    if ideal_covers != l.edges().len() {
        return Err(PosetError::NotDistributive(format!(
            "{} edges but the ideal lattice has {ideal_covers} covers",
            l.edges().len()
        )));
    }
    Ok(ji)
}

/// Searches for a color-preserving isomorphism `p → q`, where vertex colors
/// of `p` are translated by `color_map` before comparison.
///
/// Rank-layered backtracking: vertices of `p` are assigned in order of
/// rank, candidates must agree in rank, mapped color and cover degrees, and
/// lower covers must map onto lower covers.
pub fn poset_isomorphism(
    p: &VertexColoredPoset,
    q: &VertexColoredPoset,
    color_map: &dyn Fn(Color) -> Color,
) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return None;
    }
    let (rp, rq) = (p.ranks(), q.ranks());
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&v| (rp[v], v));
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            (0..q.len())
                .filter(|&w| {
                    rq[w] == rp[v]
                        && q.color(w) == color_map(p.color(v))
                        && q.lower_covers(w).len() == p.lower_covers(v).len()
                        && q.upper_covers(w).len() == p.upper_covers(v).len()
                })
                .collect()
        })
        .collect();
    let mut phi = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    fn go(
        k: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        p: &VertexColoredPoset,
        q: &VertexColoredPoset,
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for &w in &candidates[k] {
            if used[w] || !p.lower_covers(v).iter().all(|&u| q.lower_covers(w).contains(&phi[u])) {
                continue;
            }
            phi[v] = w;
            used[w] = true;
            if go(k + 1, order, candidates, p, q, phi, used) {
                return true;
            }
            used[w] = false;
        }
        phi[v] = usize::MAX;
        false
    }
    go(0, &order, &candidates, p, q, &mut phi, &mut used).then_some(phi)
}

/// Searches for a color-preserving isomorphism between two distributive
/// lattices, translating colors of `a` by `color_map`.
///
/// The search runs on the (much smaller) compression posets and is then
/// extended to elements through their join-irreducible supports. Returns
/// `Ok(None)` when the lattices are distributive but not isomorphic; the
/// returned vector maps each element of `a` to an element of `b`.
pub fn color_isomorphism(
    a: &ColoredRankedPoset,
    b: &ColoredRankedPoset,
    color_map: &dyn Fn(Color) -> Color,
) -> Result<Option<Vec<usize>>, PosetError> {
    let ja = check_birkhoff(a)?;
    let jb = check_birkhoff(b)?;
    let Some(phi) = poset_isomorphism(&ja.poset, &jb.poset, color_map) else {
        return Ok(None);
    };
    let index_b: HashMap<&BitSet, usize> = jb.below.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut map = Vec::with_capacity(a.len());
    for set in &ja.below {
        let mut image = BitSet::new(jb.poset.len());
        for j in set.iter() {
            image.insert(phi[j]);
        }
        match index_b.get(&image) {
            Some(&y) => map.push(y),
            None => return Ok(None),
        }
    }
    for e in a.edges() {
        match b.edge_between(map[e.lo], map[e.hi]) {
            Some(f) if b.edge(f).color == color_map(e.color) => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(colors: &[Color]) -> VertexColoredPoset {
        let labels = (0..colors.len()).map(|i| i.to_string()).collect();
        let covers = (1..colors.len()).map(|i| (i - 1, i)).collect();
        VertexColoredPoset::new(labels, colors.to_vec(), covers).unwrap()
    }

    #[test]
    fn color_labels_round_trip() {
        for s in ["1", "5'", "6'", "12"] {
            assert_eq!(s.parse::<Color>().unwrap().to_string(), s);
        }
        assert_eq!("5′".parse::<Color>().unwrap(), Color::primed(5));
        assert_ne!(Color::new(5), Color::primed(5));
        assert!(Color::new(5) < Color::primed(5) && Color::primed(5) < Color::primed(6));
        assert!("x".parse::<Color>().is_err());
    }

    #[test]
    fn empty_poset_gives_one_element_lattice() {
        let l = down_set_lattice(&VertexColoredPoset::empty()).lattice;
        assert_eq!(l.len(), 1);
        assert!(l.edges().is_empty());
        assert_eq!(l.rgf(), vec![1]);
        assert!(join_irreducibles(&l).unwrap().poset.is_empty());
    }

    #[test]
    fn two_chain_gives_three_chain() {
        let p = chain(&[Color::new(1), Color::new(2)]);
        let l = down_set_lattice(&p).lattice;
        assert_eq!(l.len(), 3);
        let colors: Vec<Color> = l.edges().iter().map(|e| e.color).collect();
        assert_eq!(colors, vec![Color::new(1), Color::new(2)]);
        let ji = join_irreducibles(&l).unwrap();
        assert_eq!(ji.poset.len(), 2);
        assert_eq!(ji.poset.covers(), &[(0, 1)]);
        assert_eq!(ji.poset.color(0), Color::new(1));
    }

    #[test]
    fn rejects_cycles_and_transitive_covers() {
        let c = vec![Color::new(1); 3];
        let l = vec!["a".into(), "b".into(), "c".into()];
        assert!(matches!(
            VertexColoredPoset::new(l.clone(), c.clone(), vec![(0, 1), (1, 2), (2, 0)]),
            Err(PosetError::Cycle(_))
        ));
        assert!(matches!(
            VertexColoredPoset::new(l, c, vec![(0, 1), (1, 2), (0, 2)]),
            Err(PosetError::TransitiveCover(0, 2))
        ));
    }

    #[test]
    fn m_values_on_a_chain() {
        let p = chain(&[Color::new(1), Color::new(1)]);
        let l = down_set_lattice(&p).lattice;
        assert_eq!(l.m_value(Color::new(1), 0), -2);
        assert_eq!(l.m_value(Color::new(1), 2), 2);
        assert_eq!(l.m_value(Color::new(2), 1), 0);
        let t = l.m_table();
        assert_eq!((0..3).map(|v| t.get(Color::new(1), v)).collect::<Vec<_>>(), vec![-2, 0, 2]);
    }

    #[test]
    fn components() {
        let p = chain(&[Color::new(1), Color::new(2)]);
        let l = down_set_lattice(&p).lattice;
        let c = l.component(&BTreeSet::new(), 1);
        assert_eq!(c.poset.len(), 1);
        let all = l.colors();
        assert_eq!(l.component(&all, 1).poset.len(), 3);
    }

    #[test]
    fn boolean_square_is_a_dcdl_and_round_trips() {
        let p = VertexColoredPoset::new(
            vec!["a".into(), "b".into()],
            vec![Color::new(1), Color::new(2)],
            vec![],
        )
        .unwrap();
        let l = down_set_lattice(&p).lattice;
        assert_eq!(l.len(), 4);
        assert_eq!(l.check_diamond_coloring().unwrap(), 1);
        l.check_lattice_brute_force().unwrap();
        check_birkhoff(&l).unwrap();
        let iso = color_isomorphism(&l, &l, &|c| c).unwrap().unwrap();
        assert_eq!(iso, vec![0, 1, 2, 3]);
        // Swapping colors is not a color-preserving isomorphism of the
        // poset onto itself unless the color map is applied.
        let swap = |c: Color| if c == Color::new(1) { Color::new(2) } else { Color::new(1) };
        assert!(color_isomorphism(&l, &l, &swap).unwrap().is_some());
    }

    #[test]
    fn non_distributive_lattice_is_rejected() {
        // The pentagon N5.
        let c = Color::new(1);
        let edges = vec![
            Edge { lo: 0, hi: 1, color: c },
            Edge { lo: 1, hi: 2, color: c },
            Edge { lo: 2, hi: 4, color: c },
            Edge { lo: 0, hi: 3, color: c },
            Edge { lo: 3, hi: 4, color: c },
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(ColoredRankedPoset::new(labels, edges), Err(PosetError::NotRanked(..))));
        // The diamond M3 is ranked but not distributive.
        let edges = vec![
            Edge { lo: 0, hi: 1, color: c },
            Edge { lo: 0, hi: 2, color: c },
            Edge { lo: 0, hi: 3, color: c },
            Edge { lo: 1, hi: 4, color: c },
            Edge { lo: 2, hi: 4, color: c },
            Edge { lo: 3, hi: 4, color: c },
        ];
        let l = ColoredRankedPoset::new((0..5).map(|i| i.to_string()).collect(), edges).unwrap();
        l.check_lattice_brute_force().unwrap();
        assert!(matches!(check_birkhoff(&l), Err(PosetError::NotDistributive(_))));
    }

    #[test]
    fn dot_and_json_exports() {
        let l = down_set_lattice(&chain(&[Color::primed(5)])).lattice;
        let dot = l.to_dot("x");
        assert!(dot.contains("n0 -> n1 [label=\"5'\"]"));
        let j = l.to_json();
        assert_eq!(j["covers"][0], json!([0, 1, "5'"]));
    }
}
