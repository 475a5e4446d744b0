//! Simply-laced root data and the two character oracles.
//!
//! Dynkin diagrams use the unconventional node labels of the lattices:
//!
//! ```text
//! E7:  1 — 2 — 3 — 4 — 5' — 6'        E6:  1' — 2' — 3' — 5' — 6'
//!                  |                                |
//!                  5                                4'
//! ```
//!
//! Weights are integer vectors in the fundamental-weight basis, roots are
//! integer vectors in the simple-root basis, and every inner product is
//! computed from the Cartan matrix alone (all roots have `(α, α) = 2`).
//! [`freudenthal_char`] and [`weyl_dim`] are independent oracles for the
//! weight generating functions of the lattices.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::poset_core::{Color, ColoredRankedPoset, MTable};

/// Errors raised by root-system constructors and oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("Dynkin diagram is disconnected")]
    Disconnected,
    #[error("Cartan matrix is not simply laced at ({0}, {1})")]
    NotSimplyLaced(usize, usize),
    #[error("edge ({0}, {1}) names a node not in the diagram")]
    UnknownNode(Color, Color),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight has {0} coordinates, expected {1}")]
    WrongRank(usize, usize),
    #[error("expected {expected} positive roots, found {found}")]
    RootCount { expected: usize, found: usize },
}

/// A weight in the fundamental-weight basis.
pub type Weight = Vec<i64>;

/// A simply-laced Dynkin diagram with its Cartan matrix and positive roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    nodes: Vec<Color>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    /// `det(A) · A⁻¹`, an integer matrix giving `det · (ω_i, ω_j)`.
    scaled_inverse: Vec<Vec<i64>>,
    det: i64,
}

impl RootSystem {
    /// Builds a root system from nodes and undirected edges.
    pub fn from_diagram(
        name: &str,
        nodes: Vec<Color>,
        edges: &[(Color, Color)],
    ) -> Result<Self, RootError> {
        let n = nodes.len();
        let mut cartan = vec![vec![0; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in edges {
            let ia = nodes.iter().position(|&c| c == a).ok_or(RootError::UnknownNode(a, b))?;
            let ib = nodes.iter().position(|&c| c == b).ok_or(RootError::UnknownNode(a, b))?;
            cartan[ia][ib] = -1;
            cartan[ib][ia] = -1;
        }
        Self::from_cartan(name, nodes, cartan)
    }

    /// Builds a root system from a Cartan matrix, rejecting anything that is
    /// not a connected simply-laced finite type.
    pub fn from_cartan(name: &str, nodes: Vec<Color>, cartan: Vec<Vec<i64>>) -> Result<Self, RootError> {
        let n = nodes.len();
        for i in 0..n {
            for j in 0..n {
                let a = cartan[i][j];
                let ok = if i == j { a == 2 } else { (a == 0 || a == -1) && a == cartan[j][i] };
                if !ok {
                    return Err(RootError::NotSimplyLaced(i, j));
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if cartan[i][j] == -1 && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(RootError::Disconnected);
        }
        let (det, scaled_inverse) = scaled_inverse(&cartan);
        let positive_roots = positive_roots_from_cartan(&cartan);
        Ok(RootSystem { name: name.to_string(), nodes, cartan, positive_roots, scaled_inverse, det })
    }

    /// Type A_n with nodes `1, …, n` in a chain.
    pub fn a(n: u8) -> Self {
        let nodes: Vec<Color> = (1..=n).map(Color::new).collect();
        let edges: Vec<(Color, Color)> = (1..n).map(|i| (Color::new(i), Color::new(i + 1))).collect();
        let rs = Self::from_diagram(&format!("A{n}"), nodes, &edges).expect("A_n is simply laced");
        rs.assert_root_count(n as usize * (n as usize + 1) / 2);
        rs
    }

    /// E7 with nodes `1, 2, 3, 4, 5, 5', 6'`.
    pub fn e7() -> Self {
        let c = Color::new;
        let p = Color::primed;
        let nodes = vec![c(1), c(2), c(3), c(4), c(5), p(5), p(6)];
        let edges = [(c(1), c(2)), (c(2), c(3)), (c(3), c(4)), (c(4), c(5)), (c(4), p(5)), (p(5), p(6))];
        let rs = Self::from_diagram("E7", nodes, &edges).expect("E7 is simply laced");
        rs.assert_root_count(63);
        rs
    }

    /// E6 with nodes `1', …, 6'`.
    pub fn e6() -> Self {
        let p = Color::primed;
        let nodes = (1..=6).map(p).collect();
        let edges = [(p(1), p(2)), (p(2), p(3)), (p(3), p(4)), (p(3), p(5)), (p(5), p(6))];
        let rs = Self::from_diagram("E6", nodes, &edges).expect("E6 is simply laced");
        rs.assert_root_count(36);
        rs
    }

    fn assert_root_count(&self, expected: usize) {
        assert_eq!(self.positive_roots.len(), expected, "{} positive root count", self.name);
    }

    /// Checks the number of positive roots against an expected count.
    pub fn check_root_count(&self, expected: usize) -> Result<(), RootError> {
        match self.positive_roots.len() {
            found if found == expected => Ok(()),
            found => Err(RootError::RootCount { expected, found }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[Color] {
        &self.nodes
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    /// Index of a node label.
    pub fn node_index(&self, c: Color) -> Option<usize> {
        self.nodes.iter().position(|&x| x == c)
    }

    /// `a[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// The Cartan entry for two node labels.
    pub fn cartan_entry(&self, i: Color, j: Color) -> i64 {
        let (a, b) = (self.node_index(i).expect("node i"), self.node_index(j).expect("node j"));
        self.cartan[a][b]
    }

    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// The simple root `α_i` in the fundamental-weight basis (row `i` of the
    /// Cartan matrix).
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        self.cartan[i].clone()
    }

    /// A root in simple-root coordinates, converted to the weight basis.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| root[i] * self.cartan[i][j]).sum()).collect()
    }

    /// `⟨μ, α^∨⟩` for a weight μ and a root α (simple-root coordinates).
    pub fn pair(&self, mu: &[i64], root: &[i64]) -> i64 {
        mu.iter().zip(root).map(|(a, b)| a * b).sum()
    }

    /// `det(A) · (μ, ν)` as an exact integer.
    fn scaled_inner(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += mu[i] * self.scaled_inverse[i][j] * nu[j];
            }
        }
        s
    }

    /// The simple reflection `s_i(μ) = μ − ⟨μ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, mu: &[i64], i: usize) -> Weight {
        let k = mu[i];
        mu.iter().zip(&self.cartan[i]).map(|(m, a)| m - k * a).collect()
    }

    /// The dominant W-conjugate of μ.
    pub fn dominant_conjugate(&self, mu: &[i64]) -> Weight {
        let mut w = mu.to_vec();
        while let Some(i) = w.iter().position(|&x| x < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// The W-orbit of μ by breadth-first closure under simple reflections.
    pub fn orbit(&self, mu: &[i64]) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([mu.to_vec()]);
        let mut queue = VecDeque::from([mu.to_vec()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                if w[i] != 0 {
                    let r = self.reflect(&w, i);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
        }
        seen
    }

    fn check_weight(&self, lambda: &[i64]) -> Result<(), RootError> {
        if lambda.len() != self.rank() {
            return Err(RootError::WrongRank(lambda.len(), self.rank()));
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(RootError::NotDominant(lambda.to_vec()));
        }
        Ok(())
    }
}

/// Positive roots by the standard string algorithm: a positive root β and a
/// simple root α_i give a root β + α_i iff `p − ⟨β, α_i^∨⟩ > 0`, where `p`
/// is the length of the α_i-string below β.
fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        known.extend(layer.iter().cloned());
        roots.extend(layer.iter().cloned());
    }
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

/// Returns `(det A, det A · A⁻¹)` by exact rational Gauss–Jordan
/// elimination.
fn scaled_inverse(a: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = a.len();
    if n == 0 {
        return (1, Vec::new());
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n { a[i][j] } else { i64::from(j - n == i) };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix of finite type is invertible");
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    let scaled = (0..n)
        .map(|i| {
            (n..2 * n)
                .map(|j| {
                    let v = &m[i][j] * &det;
                    assert!(v.is_integer(), "det·A⁻¹ is integral");
                    v.to_integer().to_i64().expect("small entries")
                })
                .collect()
        })
        .collect();
    (det.to_integer().to_i64().expect("small determinant"), scaled)
}

/// The Weyl dimension formula `∏_{α>0} ⟨λ+ϱ, α^∨⟩ / ⟨ϱ, α^∨⟩`.
pub fn weyl_dim(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt, RootError> {
    rs.check_weight(lambda)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in rs.positive_roots() {
        let height: i64 = root.iter().sum();
        num *= BigInt::from(rs.pair(lambda, root) + height);
        den *= BigInt::from(height);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Weight multiplicities of the irreducible module of highest weight λ.
pub type Character = BTreeMap<Weight, u64>;

/// The full character of the irreducible module with highest weight λ.
///
/// Freudenthal's recursion is run over the dominant weights below λ (in
/// order of depth), and the table is then expanded along W-orbits.
pub fn freudenthal_char(rs: &RootSystem, lambda: &[i64]) -> Result<Character, RootError> {
    rs.check_weight(lambda)?;
    let dominant = dominant_weights_below(rs, lambda);
    let rho: Weight = vec![1; rs.rank()];
    let shifted = |mu: &[i64]| -> Weight { mu.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let norm_top = rs.scaled_inner(&shifted(lambda), &shifted(lambda));
    let root_weights: Vec<Weight> = rs.positive_roots().iter().map(|r| rs.root_to_weight(r)).collect();
    let mut mult: HashMap<Weight, i64> = HashMap::new();
    for (mu, _) in &dominant {
        if mu.as_slice() == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let lhs = norm_top - rs.scaled_inner(&shifted(mu), &shifted(mu));
        assert!(lhs > 0, "dominant weights strictly below λ have smaller norm");
        let mut sum = 0i64;
        for (root, rw) in rs.positive_roots().iter().zip(&root_weights) {
            let mut k = 1;
            loop {
                let nu: Weight = mu.iter().zip(rw).map(|(a, b)| a + k * b).collect();
                let dom = rs.dominant_conjugate(&nu);
                let Some(&m) = mult.get(&dom) else { break };
                sum += (rs.pair(&nu, root)) * m;
                k += 1;
            }
        }
        let rhs = 2 * rs.det * sum;
        assert!(rhs % lhs == 0, "Freudenthal recursion yields integers");
        let m = rhs / lhs;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }
    let mut table = Character::new();
    for (mu, &m) in &mult {
        for w in rs.orbit(mu) {
            table.insert(w, m as u64);
        }
    }
    Ok(table)
}

/// Dominant weights μ ≤ λ (λ − μ a nonnegative combination of simple
/// roots), with their depth, sorted by depth.
///
/// Uses the saturation property: every such μ is reached from λ by
/// repeatedly subtracting positive roots while staying dominant.
fn dominant_weights_below(rs: &RootSystem, lambda: &[i64]) -> Vec<(Weight, i64)> {
    let root_weights: Vec<(Weight, i64)> = rs
        .positive_roots()
        .iter()
        .map(|r| (rs.root_to_weight(r), r.iter().sum()))
        .collect();
    let mut depth: BTreeMap<Weight, i64> = BTreeMap::from([(lambda.to_vec(), 0)]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        let d = depth[&mu];
        for (rw, h) in &root_weights {
            let nu: Weight = mu.iter().zip(rw).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&x| x >= 0) && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                queue.push_back(nu);
            }
        }
    }
    let mut out: Vec<(Weight, i64)> = depth.into_iter().collect();
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

/// Sum of multiplicities.
pub fn character_dimension(ch: &Character) -> u64 {
    ch.values().sum()
}

/// Checks W-invariance of a character, reflection by reflection.
pub fn is_w_invariant(rs: &RootSystem, ch: &Character) -> bool {
    ch.iter().all(|(mu, m)| (0..rs.rank()).all(|i| ch.get(&rs.reflect(mu, i)) == Some(m)))
}

/// JSON form `{"lambda":[…],"weights":[{"mu":[…],"mult":n}]}`.
pub fn character_to_json(lambda: &[i64], ch: &Character) -> Value {
    let weights: Vec<Value> = ch.iter().map(|(mu, m)| json!({"mu": mu, "mult": m})).collect();
    json!({"lambda": lambda, "weights": weights})
}

/// The weight `(m_i(t))_i` of a lattice vertex, over the nodes of `rs`.
pub fn weight_of(l: &ColoredRankedPoset, rs: &RootSystem, t: usize) -> Weight {
    rs.nodes().iter().map(|&c| l.m_value(c, t)).collect()
}

/// Weights of all vertices from a precomputed m-table.
pub fn all_weights(table: &MTable, rs: &RootSystem, n: usize) -> Vec<Weight> {
    (0..n).map(|v| table.weight(rs.nodes(), v)).collect()
}

/// The weight generating function `{wt(t)}` as a multiplicity table.
pub fn weight_multiset(l: &ColoredRankedPoset, rs: &RootSystem) -> Character {
    let table = l.m_table();
    let mut ch = Character::new();
    for w in all_weights(&table, rs, l.len()) {
        *ch.entry(w).or_insert(0) += 1;
    }
    ch
}

/// First failure of the Φ-structure condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFailure {
    pub edge: usize,
    pub lo: usize,
    pub hi: usize,
    pub color: Color,
    pub node: Color,
    pub step: i64,
    pub expected: i64,
}

/// Checks that every edge `r →ⁱ s` shifts the weight by `α_i`:
/// `m_j(s) − m_j(r) = a[j][i]` for every node `j`. Returns the number of
/// edges checked.
pub fn check_phi_structured(l: &ColoredRankedPoset, rs: &RootSystem) -> Result<usize, PhiFailure> {
    let table = l.m_table();
    for (ei, e) in l.edges().iter().enumerate() {
        let Some(i) = rs.node_index(e.color) else {
            return Err(PhiFailure {
                edge: ei,
                lo: e.lo,
                hi: e.hi,
                color: e.color,
                node: e.color,
                step: 0,
                expected: 0,
            });
        };
        for (j, &node) in rs.nodes().iter().enumerate() {
            let step = table.get(node, e.hi) - table.get(node, e.lo);
            let expected = rs.cartan()[j][i];
            if step != expected {
                return Err(PhiFailure { edge: ei, lo: e.lo, hi: e.hi, color: e.color, node, step, expected });
            }
        }
    }
    Ok(l.edges().len())
}

/// ψ: the E6 node `p'` ↦ its E7 counterpart (`1'→2, 2'→3, 3'→4, 4'→5,
/// 5'→5', 6'→6'`). Other labels are returned unchanged.
pub fn psi(c: Color) -> Color {
    if !c.primed {
        return c;
    }
    match c.num {
        1..=4 => Color::new(c.num + 1),
        _ => c,
    }
}

/// The inverse of [`psi`] on its image `{2,3,4,5,5',6'}`.
pub fn psi_inverse(c: Color) -> Option<Color> {
    match (c.num, c.primed) {
        (2..=5, false) => Some(Color::primed(c.num - 1)),
        (5 | 6, true) => Some(c),
        _ => None,
    }
}

/// Rational helper: `true` iff the rational is a positive integer.
pub fn is_positive_integer(q: &BigRational) -> bool {
    q.is_integer() && q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_root_systems() {
        assert_eq!(RootSystem::a(1).positive_roots(), &[vec![1]]);
        assert_eq!(RootSystem::a(2).positive_roots(), &[vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(RootSystem::a(5).positive_roots().len(), 15);
        assert_eq!(RootSystem::e6().positive_roots().len(), 36);
        assert_eq!(RootSystem::e7().positive_roots().len(), 63);
    }

    #[test]
    fn highest_root_of_e7() {
        let e7 = RootSystem::e7();
        // Nodes 1,2,3,4,5,5',6': the highest root has height 17.
        let top = e7.positive_roots().last().unwrap();
        assert_eq!(top.iter().sum::<i64>(), 17);
        assert_eq!(top, &vec![1, 2, 3, 4, 2, 3, 2]);
    }

    #[test]
    fn rejects_bad_diagrams() {
        let c = Color::new;
        let err = RootSystem::from_diagram("x", vec![c(1), c(2)], &[]).unwrap_err();
        assert_eq!(err, RootError::Disconnected);
        let err = RootSystem::from_cartan("B2", vec![c(1), c(2)], vec![vec![2, -2], vec![-1, 2]]);
        assert!(matches!(err, Err(RootError::NotSimplyLaced(..))));
    }

    #[test]
    fn weyl_dimensions() {
        let e7 = RootSystem::e7();
        let e6 = RootSystem::e6();
        assert_eq!(weyl_dim(&e7, &[0; 7]).unwrap(), BigInt::from(1));
        assert_eq!(weyl_dim(&e7, &[1, 0, 0, 0, 0, 0, 0]).unwrap(), BigInt::from(56));
        assert_eq!(weyl_dim(&e7, &[2, 0, 0, 0, 0, 0, 0]).unwrap(), BigInt::from(1463));
        assert_eq!(weyl_dim(&e6, &[1, 0, 0, 0, 0, 0]).unwrap(), BigInt::from(27));
        assert_eq!(weyl_dim(&e6, &[0, 0, 0, 0, 0, 1]).unwrap(), BigInt::from(27));
        assert_eq!(weyl_dim(&e6, &[1, 0, 0, 0, 0, 1]).unwrap(), BigInt::from(650));
        assert!(weyl_dim(&e6, &[-1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn sl2_strings() {
        let a1 = RootSystem::a(1);
        for k in 0..5i64 {
            let ch = freudenthal_char(&a1, &[k]).unwrap();
            let expected: Character = (0..=k).map(|t| (vec![k - 2 * t], 1)).collect();
            assert_eq!(ch, expected);
        }
    }

    #[test]
    fn freudenthal_matches_weyl() {
        let e6 = RootSystem::e6();
        let e7 = RootSystem::e7();
        let a2 = RootSystem::a(2);
        let cases: Vec<(&RootSystem, Vec<i64>)> = vec![
            (&a2, vec![1, 1]),
            (&a2, vec![2, 1]),
            (&e6, vec![1, 0, 0, 0, 0, 0]),
            (&e6, vec![1, 0, 0, 0, 0, 1]),
            (&e6, vec![0, 0, 0, 0, 0, 2]),
            (&e7, vec![1, 0, 0, 0, 0, 0, 0]),
            (&e7, vec![2, 0, 0, 0, 0, 0, 0]),
        ];
        for (rs, lambda) in cases {
            let ch = freudenthal_char(rs, &lambda).unwrap();
            assert_eq!(BigInt::from(character_dimension(&ch)), weyl_dim(rs, &lambda).unwrap());
            assert!(is_w_invariant(rs, &ch));
        }
        let ch = freudenthal_char(&e6, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(ch.len(), 27);
        assert!(ch.values().all(|&m| m == 1));
        // The adjoint-like module of A2 has a 2-dimensional zero weight space.
        let ch = freudenthal_char(&a2, &[1, 1]).unwrap();
        assert_eq!(ch[&vec![0, 0]], 2);
    }

    #[test]
    fn psi_table() {
        let p = Color::primed;
        let images: Vec<String> = (1..=6).map(|i| psi(p(i)).to_string()).collect();
        assert_eq!(images, ["2", "3", "4", "5", "5'", "6'"]);
        for i in 1..=6 {
            assert_eq!(psi_inverse(psi(p(i))), Some(p(i)));
        }
        assert_eq!(psi_inverse(Color::new(1)), None);
        // ψ carries the E6 Cartan matrix onto the E7 sub-diagram.
        let (e6, e7) = (RootSystem::e6(), RootSystem::e7());
        for &a in e6.nodes() {
            for &b in e6.nodes() {
                assert_eq!(e6.cartan_entry(a, b), e7.cartan_entry(psi(a), psi(b)));
            }
        }
    }
}
