//! The checking suite: Φ-structure, diamond and crossing relations, route
//! agreement, character identities, component embeddings, rank generating
//! function product formulas, and the bracket relations of the assembled
//! matrices, bundled into a serializable [`Certificate`].
//!
//! Every check is an exact fold over edges, vertices, or diamonds. Folds run
//! in parallel; a reported failure is always the first one in the canonical
//! order (edge, vertex, or diamond index), so output is deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact_algebra::{build_generator_matrices, check_brackets, rational_string};
use crate::gtcoeff::{check_all_components, e6_via_e7_limited, gt5_layout, gt6_layout, E6Embedding, E7Coefficients, GtError};
use crate::lattices::{build_lattice_limited, ArrayLattice, E6Variant, Family, LatticeError};
use crate::poset_core::{Color, ColoredRankedPoset};
use crate::root_data::{check_phi_structured, freudenthal_char, psi, weight_multiset, RootSystem, Weight};
use crate::skew_tabular::{build_skew_lattice_limited, Partition, SkewError, SkewLattice};

/// A univariate polynomial with integer coefficients, lowest degree first,
/// without trailing zeros (the zero polynomial is empty).
pub type Poly = Vec<BigInt>;

/// The individual checks a certificate can contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Phi,
    Diamond,
    Crossing,
    Lemma43,
    Components,
    Embedding,
    Character,
    Rgf,
    Brackets,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Phi,
        Check::Diamond,
        Check::Crossing,
        Check::Lemma43,
        Check::Components,
        Check::Embedding,
        Check::Character,
        Check::Rgf,
        Check::Brackets,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Phi => "phi",
            Check::Diamond => "diamond",
            Check::Crossing => "crossing",
            Check::Lemma43 => "lemma43",
            Check::Components => "components",
            Check::Embedding => "embedding",
            Check::Character => "character",
            Check::Rgf => "rgf",
            Check::Brackets => "brackets",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// First diamond whose relation `P(s→t)·P(r→t) = P(q→s)·P(q→r)` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondFailure {
    pub diamond: usize,
    /// `[q, r, s, t]`.
    pub vertices: [usize; 4],
    /// Colors of the edges `q→r` and `q→s`.
    pub colors: [Color; 2],
    /// `P(s→t)·P(r→t)`.
    pub top: String,
    /// `P(q→s)·P(q→r)`.
    pub bottom: String,
}

impl fmt::Display for DiamondFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [q, r, s, t] = self.vertices;
        write!(
            f,
            "diamond {} (q={q}, r={r}, s={s}, t={t}; colors {}, {}): top product {} != bottom product {}",
            self.diamond, self.colors[0], self.colors[1], self.top, self.bottom
        )
    }
}

/// Checks the diamond relations in squared form: for every diamond
/// `q → r → t`, `q → s → t` (with `q→r` and `s→t` of one color and `q→s`
/// and `r→t` of the other), `P(s→t)·P(r→t) = P(q→s)·P(q→r)`.
///
/// Returns the number of diamonds checked.
pub fn check_diamond_relations(l: &ColoredRankedPoset, p: &[BigRational]) -> Result<usize, DiamondFailure> {
    let diamonds = l.diamonds();
    let failure = diamonds.par_iter().enumerate().find_map_first(|(i, d)| {
        let top = &p[d.st] * &p[d.rt];
        let bottom = &p[d.qs] * &p[d.qr];
        (top != bottom).then(|| DiamondFailure {
            diamond: i,
            vertices: [d.q, d.r, d.s, d.t],
            colors: [l.edge(d.qr).color, l.edge(d.qs).color],
            top: rational_string(&top),
            bottom: rational_string(&bottom),
        })
    });
    match failure {
        Some(f) => Err(f),
        None => Ok(diamonds.len()),
    }
}

/// Counts, over diamonds whose two colors form one of `pairs`, how many
/// have equal coefficients on each pair of opposite (same-colored) edges.
/// This stronger property is informational only: it is not implied by the
/// module axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OppositeEdgeReport {
    pub diamonds: usize,
    pub opposite_equal: usize,
}

pub fn opposite_edge_report(l: &ColoredRankedPoset, p: &[BigRational], pairs: &[(Color, Color)]) -> OppositeEdgeReport {
    let mut report = OppositeEdgeReport::default();
    for d in l.diamonds() {
        let (a, b) = (l.edge(d.qr).color, l.edge(d.qs).color);
        if !pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)) {
            continue;
        }
        report.diamonds += 1;
        if p[d.qr] == p[d.st] && p[d.qs] == p[d.rt] {
            report.opposite_equal += 1;
        }
    }
    report
}

/// First vertex/color at which a crossing relation fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingFailure {
    pub vertex: usize,
    pub color: Color,
    /// `Σ_{q→r} P − Σ_{r→s} P`.
    pub lhs: String,
    /// `m_i(r)`.
    pub rhs: i64,
}

impl fmt::Display for CrossingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "crossing relation fails at vertex {} color {}: incoming minus outgoing is {}, m = {}",
            self.vertex, self.color, self.lhs, self.rhs
        )
    }
}

/// Checks the crossing relations: for every vertex `r` and color `i` in
/// `colors`, the sum of `P` over incoming color-`i` edges minus the sum over
/// outgoing color-`i` edges equals `m_i(r)`.
///
/// Returns the number of (vertex, color) pairs checked.
pub fn check_crossing_relations(
    l: &ColoredRankedPoset,
    p: &[BigRational],
    colors: &[Color],
) -> Result<usize, CrossingFailure> {
    let table = l.m_table();
    let failure = (0..l.len()).into_par_iter().find_map_first(|r| {
        colors.iter().find_map(|&c| {
            let mut lhs = BigRational::zero();
            for &e in l.down_edges(r) {
                if l.edge(e).color == c {
                    lhs += &p[e];
                }
            }
            for &e in l.up_edges(r) {
                if l.edge(e).color == c {
                    lhs -= &p[e];
                }
            }
            let rhs = table.get(c, r);
            (lhs != BigRational::from_integer(rhs.into())).then(|| CrossingFailure {
                vertex: r,
                color: c,
                lhs: rational_string(&lhs),
                rhs,
            })
        })
    });
    match failure {
        Some(f) => Err(f),
        None => Ok(l.len() * colors.len()),
    }
}

/// A weight whose multiplicity differs between a lattice and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterFailure {
    pub weight: Weight,
    pub lattice: u64,
    pub oracle: u64,
}

impl fmt::Display for CharacterFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "weight {:?} has multiplicity {} in the lattice but {} by Freudenthal",
            self.weight, self.lattice, self.oracle
        )
    }
}

/// Checks that the weight multiset `{wt(t)}` equals the Freudenthal
/// character of `lambda`. Returns the number of distinct weights.
pub fn check_character(l: &ColoredRankedPoset, rs: &RootSystem, lambda: &[i64]) -> Result<usize, CharacterFailure> {
    let ours = weight_multiset(l, rs);
    let oracle = freudenthal_char(rs, lambda).map_err(|_| CharacterFailure {
        weight: lambda.to_vec(),
        lattice: ours.get(lambda).copied().unwrap_or(0),
        oracle: 0,
    })?;
    let weights: BTreeSet<&Weight> = ours.keys().chain(oracle.keys()).collect();
    for w in weights {
        let (a, b) = (ours.get(w).copied().unwrap_or(0), oracle.get(w).copied().unwrap_or(0));
        if a != b {
            return Err(CharacterFailure { weight: w.clone(), lattice: a, oracle: b });
        }
    }
    Ok(oracle.len())
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `[n] = 1 + q + … + q^{n−1}`.
pub fn q_integer(n: u64) -> Poly {
    vec![BigInt::one(); n as usize]
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    let get = |p: &[BigInt], i: usize| p.get(i).cloned().unwrap_or_default();
    trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

/// Exact division by a polynomial with leading coefficient 1; `None` if the
/// remainder is nonzero.
pub fn poly_div_monic(a: &[BigInt], d: &[BigInt]) -> Option<Poly> {
    assert!(d.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem = a.to_vec();
    if rem.len() < d.len() {
        return rem.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - d.len() + 1];
    for i in (0..quo.len()).rev() {
        let c = rem[i + d.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, x) in d.iter().enumerate() {
            rem[i + j] -= &c * x;
        }
        quo[i] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(quo))
}

/// `Π [x_i + h_i] / [h_i]` over `(x_i, h_i)`.
pub fn q_quotient(factors: &[(u64, u64)]) -> Option<Poly> {
    let mut num: Poly = vec![BigInt::one()];
    let mut den: Poly = vec![BigInt::one()];
    for &(x, h) in factors {
        num = poly_mul(&num, &q_integer(x + h));
        den = poly_mul(&den, &q_integer(h));
    }
    poly_div_monic(&num, &den)
}

fn repeat(x: u64, hs: &[(u64, usize)]) -> Vec<(u64, u64)> {
    hs.iter().flat_map(|&(h, times)| std::iter::repeat_n((x, h), times)).collect()
}

/// The displayed quotient-of-products factors `(x, h)` (meaning
/// `[x+h]/[h]`) for a family's rank generating function.
pub fn displayed_rgf_factors(family: Family) -> Vec<(u64, u64)> {
    const E7: [(u64, usize); 17] = [
        (17, 1),
        (16, 1),
        (15, 1),
        (14, 1),
        (13, 2),
        (12, 2),
        (11, 2),
        (10, 2),
        (9, 3),
        (8, 2),
        (7, 2),
        (6, 2),
        (5, 2),
        (4, 1),
        (3, 1),
        (2, 1),
        (1, 1),
    ];
    const E6_END: [(u64, usize); 7] = [(7, 1), (6, 1), (5, 1), (4, 2), (3, 1), (2, 1), (1, 1)];
    const E6_MID: [(u64, usize); 7] = [(11, 1), (10, 1), (9, 1), (8, 2), (7, 1), (6, 1), (5, 1)];
    let (a, b) = match family {
        Family::E7 { k } => return repeat(k as u64, &E7),
        Family::E6Omega1 { k } => (k as u64, 0),
        Family::E6Omega6 { k } => (0, k as u64),
        Family::E6Ab { a, b } => (a as u64, b as u64),
    };
    let mut out = repeat(a, &E6_END);
    out.extend(repeat(a + b, &E6_MID));
    out.extend(repeat(b, &E6_END));
    out
}

/// The factors `(⟨λ, α⟩, ht α)` over positive roots `α` with
/// `⟨λ, α⟩ > 0`, derived from root data alone.
pub fn root_rgf_factors(rs: &RootSystem, lambda: &[i64]) -> Vec<(u64, u64)> {
    rs.positive_roots()
        .iter()
        .filter_map(|alpha| {
            let pairing: i64 = alpha.iter().zip(lambda).map(|(a, l)| a * l).sum();
            let height: i64 = alpha.iter().sum();
            (pairing > 0).then_some((pairing as u64, height as u64))
        })
        .collect()
}

pub fn is_symmetric(p: &[u64]) -> bool {
    p.iter().eq(p.iter().rev())
}

pub fn is_unimodal(p: &[u64]) -> bool {
    let Some(peak) = p.iter().enumerate().max_by_key(|&(i, v)| (v, std::cmp::Reverse(i))).map(|(i, _)| i) else {
        return true;
    };
    p[..=peak].windows(2).all(|w| w[0] <= w[1]) && p[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// A mismatch between a computed RGF and a product formula, or a failure
/// of symmetry or unimodality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RgfFailure {
    pub reason: String,
    pub computed: Vec<u64>,
    /// `computed − formula`, lowest degree first.
    pub difference: Vec<String>,
}

impl fmt::Display for RgfFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; computed {:?}, difference {:?}", self.reason, self.computed, self.difference)
    }
}

/// Summary of a passing RGF check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RgfReport {
    pub rgf: Vec<u64>,
    pub degree: usize,
    pub value_at_one: u64,
    pub symmetric: bool,
    pub unimodal: bool,
}

/// Compares a computed RGF against both the displayed product formula and
/// the root-derived one, and checks symmetry and unimodality.
pub fn check_rgf_products(family: Family, rgf: &[u64]) -> Result<RgfReport, RgfFailure> {
    let computed: Poly = trim(rgf.iter().map(|&c| BigInt::from(c)).collect());
    let fail = |reason: String, diff: Poly| RgfFailure {
        reason,
        computed: rgf.to_vec(),
        difference: diff.iter().map(ToString::to_string).collect(),
    };
    let rs = family.root_system();
    for (name, factors) in [
        ("displayed product", displayed_rgf_factors(family)),
        ("root product", root_rgf_factors(&rs, &family.highest_weight())),
    ] {
        let formula = q_quotient(&factors).ok_or_else(|| fail(format!("{name} is not a polynomial"), Vec::new()))?;
        let diff = poly_sub(&computed, &formula);
        if !diff.is_empty() {
            return Err(fail(format!("RGF differs from the {name}"), diff));
        }
    }
    let (symmetric, unimodal) = (is_symmetric(rgf), is_unimodal(rgf));
    if !symmetric || !unimodal {
        return Err(fail(format!("symmetric={symmetric}, unimodal={unimodal}"), Vec::new()));
    }
    Ok(RgfReport {
        rgf: rgf.to_vec(),
        degree: rgf.len().saturating_sub(1),
        value_at_one: rgf.iter().sum(),
        symmetric,
        unimodal,
    })
}

/// Checks that an E6 lattice sits inside `L_E7(kω1)` with matching
/// maximal-element weights: the E6 lattice's top has the family's highest
/// weight, and the ambient top has the same weight after translating colors
/// through ψ. Returns the number of elements matched.
pub fn check_embedding(emb: &E6Embedding) -> Result<usize, String> {
    let rs = emb.e6.family.root_system();
    let e6_top = emb.e6.lattice.top().map_err(|e| e.to_string())?;
    let e6_weight: Weight = rs.nodes().iter().map(|&c| emb.e6.lattice.m_value(c, e6_top)).collect();
    let e7_weight: Weight = rs.nodes().iter().map(|&c| emb.e7.lattice.m_value(psi(c), emb.top)).collect();
    let expected = emb.e6.family.highest_weight();
    if e6_weight != expected {
        return Err(format!("E6 top weight {e6_weight:?}, expected {expected:?}"));
    }
    if e7_weight != expected {
        return Err(format!("ambient top weight {e7_weight:?} through psi, expected {expected:?}"));
    }
    if emb.map[e6_top] != emb.top {
        return Err("isomorphism does not send top to top".into());
    }
    Ok(emb.map.len())
}

/// What to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubjectSpec {
    Polymin(Family),
    Skew { n: usize, p: Partition, q: Partition },
}

impl SubjectSpec {
    pub fn name(&self) -> String {
        match self {
            SubjectSpec::Polymin(f) => f.name(),
            SubjectSpec::Skew { n, p, q } => format!("L_skew_A{n}({:?}/{:?})", p.parts(), q.parts()),
        }
    }
}

/// Errors from building a subject or computing its coefficients.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Gt(#[from] GtError),
    #[error("type A_{0} is not supported (need 1 <= n <= 255)")]
    Rank(usize),
}

/// A built lattice together with everything needed to compute its
/// coefficients.
#[derive(Debug)]
pub enum Subject {
    E7(ArrayLattice),
    /// An E6 lattice and its realization inside an E7 lattice.
    E6(Box<E6Embedding>),
    Skew(SkewLattice),
}

impl Subject {
    /// Builds a subject, refusing lattices with more than `limit` elements
    /// (for E6 families, the ambient E7 lattice is also bounded).
    pub fn build(spec: &SubjectSpec, limit: usize) -> Result<Self, VerifyError> {
        Ok(match spec {
            SubjectSpec::Polymin(family) => match *family {
                Family::E7 { .. } => Subject::E7(build_lattice_limited(*family, limit)?),
                Family::E6Omega1 { k } => Subject::E6(Box::new(e6_via_e7_limited(E6Variant::Omega1(k), limit)?)),
                Family::E6Omega6 { k } => Subject::E6(Box::new(e6_via_e7_limited(E6Variant::Omega6(k), limit)?)),
                Family::E6Ab { a, b } => Subject::E6(Box::new(e6_via_e7_limited(E6Variant::Ab(a, b), limit)?)),
            },
            SubjectSpec::Skew { n, p, q } => {
                if *n == 0 || *n > u8::MAX as usize {
                    return Err(VerifyError::Rank(*n));
                }
                Subject::Skew(build_skew_lattice_limited(*n, p, q, limit)?)
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Subject::E7(l) => l.family.name(),
            Subject::E6(e) => e.e6.family.name(),
            Subject::Skew(s) => SubjectSpec::Skew { n: s.n, p: s.p.clone(), q: s.q.clone() }.name(),
        }
    }

    pub fn poset(&self) -> &ColoredRankedPoset {
        match self {
            Subject::E7(l) => &l.lattice,
            Subject::E6(e) => &e.e6.lattice,
            Subject::Skew(s) => &s.lattice,
        }
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            Subject::E7(l) => Some(l.family),
            Subject::E6(e) => Some(e.e6.family),
            Subject::Skew(_) => None,
        }
    }

    pub fn root_system(&self) -> RootSystem {
        match self {
            Subject::Skew(s) => RootSystem::a(s.n as u8),
            _ => self.family().expect("polyminuscule").root_system(),
        }
    }

    /// The ambient E7 lattice on which GT coefficients are computed.
    pub fn ambient_e7(&self) -> Option<&ArrayLattice> {
        match self {
            Subject::E7(l) => Some(l),
            Subject::E6(e) => Some(&e.e7),
            Subject::Skew(_) => None,
        }
    }

    /// The coefficient `P` of every edge, in edge order.
    pub fn coefficients(&self) -> Result<Vec<BigRational>, VerifyError> {
        Ok(match self {
            Subject::E7(l) => E7Coefficients::new(l)?.all()?,
            Subject::E6(e) => e.coefficients.clone(),
            Subject::Skew(s) => s.coefficients()?,
        })
    }

    /// Checks that are meaningful for this subject.
    pub fn applicable(&self) -> BTreeSet<Check> {
        let mut set: BTreeSet<Check> =
            [Check::Phi, Check::Diamond, Check::Crossing, Check::Brackets].into_iter().collect();
        match self {
            Subject::E7(_) => set.extend([Check::Lemma43, Check::Components, Check::Character, Check::Rgf]),
            Subject::E6(_) => set.extend([Check::Lemma43, Check::Embedding, Check::Character, Check::Rgf]),
            Subject::Skew(_) => {}
        }
        set
    }

    /// The default selection: everything applicable, with the bracket check
    /// only up to [`DEFAULT_BRACKET_LIMIT`] elements.
    pub fn default_checks(&self) -> BTreeSet<Check> {
        let mut set = self.applicable();
        if self.poset().len() > DEFAULT_BRACKET_LIMIT {
            set.remove(&Check::Brackets);
        }
        set
    }
}

/// Largest lattice on which the bracket check runs by default.
pub const DEFAULT_BRACKET_LIMIT: usize = 200;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One entry of a certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: Check,
    pub status: Status,
    /// Number of items (edges, diamonds, vertex-color pairs, weights, …)
    /// verified.
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// The result of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub subject: String,
    pub elements: usize,
    pub edges: usize,
    pub length: u32,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl Certificate {
    fn new(subject: String, l: &ColoredRankedPoset) -> Self {
        Certificate {
            subject,
            elements: l.len(),
            edges: l.edges().len(),
            length: l.length(),
            passed: true,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, record: CheckRecord) {
        if record.status == Status::Fail {
            self.passed = false;
        }
        self.checks.push(record);
    }

    pub fn record(&self, check: Check) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.check == check)
    }

    /// The first failing record, if any.
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

/// Options for [`verify`].
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Checks to run; `None` means [`Subject::default_checks`].
    pub checks: Option<BTreeSet<Check>>,
    /// Record wall-clock times (makes output run-dependent).
    pub timings: bool,
    /// Fault injection: add 1 to the coefficient of this edge before
    /// checking, to exercise the failure paths.
    pub perturb: Option<usize>,
}

fn timed<T>(timings: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = f();
    (out, timings.then(|| start.elapsed().as_millis() as u64))
}

fn outcome<T: Serialize, E: Serialize>(
    check: Check,
    res: Result<(usize, Option<T>), E>,
    elapsed_ms: Option<u64>,
) -> CheckRecord {
    match res {
        Ok((count, detail)) => CheckRecord {
            check,
            status: Status::Pass,
            count,
            detail: detail.map(|d| serde_json::to_value(d).expect("serializable")),
            failure: None,
            elapsed_ms,
        },
        Err(e) => CheckRecord {
            check,
            status: Status::Fail,
            count: 0,
            detail: None,
            failure: Some(serde_json::to_value(e).expect("serializable")),
            elapsed_ms,
        },
    }
}

fn message(check: Check, msg: impl fmt::Display) -> CheckRecord {
    outcome::<(), _>(check, Err(json!({"message": msg.to_string()})), None)
}

/// Φ-structure, diamond relations, and crossing relations for a lattice
/// with coefficients over the given root system.
pub fn certify_module(
    name: &str,
    l: &ColoredRankedPoset,
    p: &[BigRational],
    rs: &RootSystem,
) -> Certificate {
    let mut cert = Certificate::new(name.to_string(), l);
    certify_into(&mut cert, l, p, rs, &[Check::Phi, Check::Diamond, Check::Crossing].into_iter().collect(), false);
    cert
}

fn certify_into(
    cert: &mut Certificate,
    l: &ColoredRankedPoset,
    p: &[BigRational],
    rs: &RootSystem,
    checks: &BTreeSet<Check>,
    timings: bool,
) {
    if checks.contains(&Check::Phi) {
        let (res, ms) = timed(timings, || check_phi_structured(l, rs));
        let res = res.map(|n| (n, None::<()>)).map_err(|f| {
            json!({"edge": f.edge, "lo": f.lo, "hi": f.hi, "color": f.color, "node": f.node,
                   "step": f.step, "expected": f.expected})
        });
        cert.push(outcome(Check::Phi, res, ms));
    }
    if checks.contains(&Check::Diamond) {
        let (res, ms) = timed(timings, || check_diamond_relations(l, p));
        cert.push(outcome(Check::Diamond, res.map(|n| (n, None::<()>)), ms));
    }
    if checks.contains(&Check::Crossing) {
        let (res, ms) = timed(timings, || check_crossing_relations(l, p, rs.nodes()));
        cert.push(outcome(Check::Crossing, res.map(|n| (n, None::<()>)), ms));
    }
}

/// Runs the selected checks on a subject.
pub fn verify(subject: &Subject, options: &VerifyOptions) -> Certificate {
    let checks = options.checks.clone().unwrap_or_else(|| subject.default_checks());
    let applicable = subject.applicable();
    let timings = options.timings;
    let l = subject.poset();
    let rs = subject.root_system();
    let mut cert = Certificate::new(subject.name(), l);

    let needs_p = checks.iter().any(|c| matches!(c, Check::Diamond | Check::Crossing | Check::Brackets));
    let coefficients = if needs_p {
        match subject.coefficients() {
            Ok(p) => Some(p),
            Err(e) => {
                cert.push(message(Check::Diamond, format!("coefficients unavailable: {e}")));
                return cert;
            }
        }
    } else {
        None
    };
    let mut coefficients = coefficients.unwrap_or_default();
    if let Some(e) = options.perturb {
        match coefficients.get_mut(e) {
            Some(c) => {
                *c += BigRational::one();
                cert.notes.push(format!("coefficient of edge {e} perturbed by +1"));
            }
            None => cert.notes.push(format!("perturbation ignored: no edge {e}")),
        }
    }
    let p = coefficients.as_slice();
    certify_into(&mut cert, l, p, &rs, &checks, timings);

    if checks.contains(&Check::Diamond) {
        if let Subject::E7(_) = subject {
            let pairs = [(Color::new(5), Color::primed(5)), (Color::new(5), Color::primed(6))];
            let report = opposite_edge_report(l, p, &pairs);
            cert.notes.push(format!(
                "{} of {} diamonds colored {{5,5'}} or {{5,6'}} also have equal coefficients on opposite edges",
                report.opposite_equal, report.diamonds
            ));
        }
    }

    for check in checks.iter().copied() {
        if matches!(check, Check::Phi | Check::Diamond | Check::Crossing) {
            continue;
        }
        if !applicable.contains(&check) {
            cert.push(CheckRecord {
                check,
                status: Status::Skipped,
                count: 0,
                detail: Some(json!({"reason": "not applicable to this lattice"})),
                failure: None,
                elapsed_ms: None,
            });
            continue;
        }
        let record = match check {
            Check::Lemma43 => {
                let e7 = subject.ambient_e7().expect("applicable");
                let (res, ms) = timed(timings, || -> Result<(usize, Option<Value>), Value> {
                    let coeffs = E7Coefficients::new(e7).map_err(|e| json!({"message": e.to_string()}))?;
                    coeffs.all().map_err(|e| json!({"message": e.to_string()}))?;
                    let n = coeffs.two_route_edges();
                    Ok((n, Some(json!({"ambient": e7.family.name(), "edges_with_two_routes": n}))))
                });
                outcome(check, res, ms)
            }
            Check::Components => {
                let e7 = subject.ambient_e7().expect("applicable");
                let (res, ms) = timed(timings, || -> Result<(usize, Option<Value>), Value> {
                    let wrap = |e: GtError| json!({"message": e.to_string()});
                    let j5 = check_all_components(e7, gt5_layout()).map_err(wrap)?;
                    let j6 = check_all_components(e7, gt6_layout()).map_err(wrap)?;
                    Ok((j5 + j6, Some(json!({"j5_components": j5, "j6_components": j6}))))
                });
                outcome(check, res, ms)
            }
            Check::Embedding => {
                let Subject::E6(emb) = subject else { unreachable!("applicable") };
                let (res, ms) = timed(timings, || check_embedding(emb));
                let res = res
                    .map(|n| (n, Some(json!({"ambient": emb.e7.family.name(), "top": emb.top}))))
                    .map_err(|m| json!({"message": m}));
                outcome(check, res, ms)
            }
            Check::Character => {
                let lambda = subject.family().expect("applicable").highest_weight();
                let (res, ms) = timed(timings, || check_character(l, &rs, &lambda));
                let mut rec = outcome(check, res.map(|n| (n, Some(json!({"lambda": lambda})))), ms);
                if let Some(Family::E6Ab { a, b }) = subject.family() {
                    if a > 0 && b > 0 {
                        cert.notes.push(
                            "the character identity for aw1'+bw6' is verified here as data for this instance only"
                                .into(),
                        );
                    }
                }
                if rec.status == Status::Pass {
                    rec.count = rec.count.max(1);
                }
                rec
            }
            Check::Rgf => {
                let family = subject.family().expect("applicable");
                let (res, ms) = timed(timings, || check_rgf_products(family, &l.rgf()));
                outcome(check, res.map(|r| (r.rgf.len(), Some(r))), ms)
            }
            Check::Brackets => {
                let (res, ms) = timed(timings, || -> Result<(usize, Option<Value>), Value> {
                    let gm = build_generator_matrices(l, p, rs.nodes()).map_err(|e| json!({"message": e.to_string()}))?;
                    let counts = check_brackets(&gm, &rs)
                        .map_err(|f| json!({"relation": f.relation, "entry": f.entry}))?;
                    Ok((
                        counts.total(),
                        Some(json!({"xy": counts.xy, "hx": counts.hx, "hy": counts.hy, "hh": counts.hh,
                                    "serre": counts.serre})),
                    ))
                });
                outcome(check, res, ms)
            }
            Check::Phi | Check::Diamond | Check::Crossing => unreachable!(),
        };
        cert.push(record);
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::build_e7_lattice;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn q_quotients() {
        assert_eq!(q_quotient(&[(2, 2)]).unwrap(), vec![1, 0, 1].into_iter().map(BigInt::from).collect::<Poly>());
        assert_eq!(poly_div_monic(&q_integer(3), &q_integer(2)), None);
        let e7_0 = q_quotient(&displayed_rgf_factors(Family::E7 { k: 0 })).unwrap();
        assert_eq!(e7_0, vec![BigInt::one()]);
        let e7_1 = q_quotient(&displayed_rgf_factors(Family::E7 { k: 1 })).unwrap();
        assert_eq!(e7_1.len(), 28);
        assert_eq!(e7_1.iter().sum::<BigInt>(), BigInt::from(56));
        let e6 = q_quotient(&displayed_rgf_factors(Family::E6Ab { a: 1, b: 0 })).unwrap();
        assert_eq!(e6.len(), 17);
        assert_eq!(e6.iter().sum::<BigInt>(), BigInt::from(27));
    }

    #[test]
    fn displayed_and_root_factors_agree() {
        for family in [Family::E7 { k: 3 }, Family::E6Ab { a: 2, b: 1 }, Family::E6Omega6 { k: 2 }] {
            let mut a = displayed_rgf_factors(family);
            let mut b = root_rgf_factors(&family.root_system(), &family.highest_weight());
            a.retain(|f| f.0 > 0);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{}", family.name());
        }
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 2, 3, 3, 2, 1]));
        assert!(is_unimodal(&[1]));
        assert!(is_unimodal(&[]));
        assert!(!is_unimodal(&[1, 2, 1, 2]));
        assert!(is_symmetric(&[1, 2, 1]));
        assert!(!is_symmetric(&[1, 2]));
    }

    #[test]
    fn fig11_relations_and_perturbation() {
        let s = build_skew_lattice_limited(2, &p(&[3, 3]), &p(&[2, 0]), 1000).unwrap();
        let mut coeffs = s.coefficients().unwrap();
        let rs = RootSystem::a(2);
        assert!(certify_module("fig", &s.lattice, &coeffs, &rs).passed);
        coeffs[3] += BigRational::one();
        assert!(check_diamond_relations(&s.lattice, &coeffs).is_err() || s.lattice.diamonds().is_empty());
        assert!(check_crossing_relations(&s.lattice, &coeffs, rs.nodes()).is_err());
    }

    #[test]
    fn e7_k1_certificate() {
        let subject = Subject::E7(build_e7_lattice(1));
        let cert = verify(&subject, &VerifyOptions::default());
        assert!(cert.passed, "{}", serde_json::to_string_pretty(&cert).unwrap());
        assert!(cert.record(Check::Brackets).is_some());
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }
}
