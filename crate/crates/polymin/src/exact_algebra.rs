//! Exact scalars in the multi-quadratic field `ℚ(√2, √3, √5, …)` and
//! sparse representing matrices for the Chevalley generators.
//!
//! A [`SqrtScalar`] is a finite sum `Σ q_d √d` over square-free radicands
//! `d` with rational coefficients; since the `√d` are linearly independent
//! over `ℚ`, equality is decided coefficientwise. Generator matrices are
//! stored column-wise: column `r` of `X_i` lists the `t` with `r →ⁱ t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::poset_core::{Color, ColoredRankedPoset};
use crate::root_data::RootSystem;

/// Errors raised by exact algebra routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("square root of non-positive rational {0}")]
    NotPositive(BigRational),
    #[error("rational {0} is too large to factor")]
    TooLarge(BigRational),
    #[error("dimension mismatch: {0}x{1} times {2}x{3}")]
    Dimension(usize, usize, usize, usize),
    #[error("expected {expected} edge coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("color {0} is not a node of the root system")]
    UnknownColor(Color),
}

/// An element `Σ q_d √d` of the multi-quadratic field, with every key
/// square-free and every coefficient nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SqrtScalar {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SqrtScalar {
    pub fn zero() -> Self {
        SqrtScalar::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// The rational `q` (radicand 1).
    pub fn rational(q: BigRational) -> Self {
        Self::term(q, 1u32)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `q·√d` for square-free `d`.
    pub fn term(q: BigRational, d: impl Into<BigUint>) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(d.into(), q);
        }
        SqrtScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `(d, q_d)` terms in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, d: &BigUint, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(d.clone()).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(d);
        }
    }

    /// Multiplies by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SqrtScalar { terms: self.terms.iter().map(|(d, c)| (d.clone(), c * q)).collect() }
    }

    /// JSON form `{"terms":{"d":"num/den"}}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (d, q) in &self.terms {
            m.insert(d.to_string(), json!(rational_string(q)));
        }
        json!({"terms": m})
    }
}

/// `num/den` (or just `num` for integers).
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for SqrtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, q)| if d.is_one() { rational_string(q) } else { format!("{}*sqrt({d})", rational_string(q)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &SqrtScalar {
    type Output = SqrtScalar;

    fn add(self, rhs: &SqrtScalar) -> SqrtScalar {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.add_term(d, q.clone());
        }
        out
    }
}

impl Sub for &SqrtScalar {
    type Output = SqrtScalar;

    fn sub(self, rhs: &SqrtScalar) -> SqrtScalar {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.add_term(d, -q.clone());
        }
        out
    }
}

impl Neg for &SqrtScalar {
    type Output = SqrtScalar;

    fn neg(self) -> SqrtScalar {
        SqrtScalar { terms: self.terms.iter().map(|(d, q)| (d.clone(), -q.clone())).collect() }
    }
}

impl Mul for &SqrtScalar {
    type Output = SqrtScalar;

    /// Uses `√d1 · √d2 = g · √(d1 d2 / g²)` with `g = gcd(d1, d2)`.
    fn mul(self, rhs: &SqrtScalar) -> SqrtScalar {
        let mut out = SqrtScalar::zero();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &rhs.terms {
                let g = d1.gcd(d2);
                let d = (d1 / &g) * (d2 / &g);
                let coeff = q1 * q2 * BigRational::from_integer(BigInt::from(g));
                out.add_term(&d, coeff);
            }
        }
        out
    }
}

impl Add for SqrtScalar {
    type Output = SqrtScalar;

    fn add(self, rhs: SqrtScalar) -> SqrtScalar {
        &self + &rhs
    }
}

impl Sub for SqrtScalar {
    type Output = SqrtScalar;

    fn sub(self, rhs: SqrtScalar) -> SqrtScalar {
        &self - &rhs
    }
}

impl Mul for SqrtScalar {
    type Output = SqrtScalar;

    fn mul(self, rhs: SqrtScalar) -> SqrtScalar {
        &self * &rhs
    }
}

/// Writes `x = a² · s` with `s` square-free, by trial division.
fn square_free_decompose(mut x: u64) -> (u64, u64) {
    let (mut a, mut s) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= x {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        a *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (a, s * x)
}

/// The exact positive square root of a positive rational, as `(a/b)·√d`.
pub fn sqrt_of(p: &BigRational) -> Result<SqrtScalar, AlgebraError> {
    if !p.is_positive() {
        return Err(AlgebraError::NotPositive(p.clone()));
    }
    let too_large = || AlgebraError::TooLarge(p.clone());
    let n = p.numer().to_u64().ok_or_else(too_large)?;
    let d = p.denom().to_u64().ok_or_else(too_large)?;
    let (an, sn) = square_free_decompose(n);
    let (ad, sd) = square_free_decompose(d);
    // √(n/d) = an √sn / (ad √sd) = an √(sn sd) / (ad sd), and
    // √(sn sd) = g √(sn sd / g²) with g = gcd(sn, sd).
    let g = sn.gcd(&sd);
    let radicand = BigUint::from(sn / g) * BigUint::from(sd / g);
    let coeff = BigRational::new(BigInt::from(an) * BigInt::from(g), BigInt::from(ad) * BigInt::from(sd));
    Ok(SqrtScalar::term(coeff, radicand))
}

/// A sparse square-or-rectangular matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, SqrtScalar>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    /// The diagonal matrix with integer entries.
    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, SqrtScalar::integer(v));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    /// Sets an entry (zero removes it).
    pub fn set(&mut self, r: usize, c: usize, v: SqrtScalar) {
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> SqrtScalar {
        self.cols[c].get(&r).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SqrtScalar)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    /// Entries in row-major order, for export.
    pub fn entries_row_major(&self) -> Vec<(usize, usize, &SqrtScalar)> {
        let mut v: Vec<_> = self.entries().collect();
        v.sort_by_key(|&(r, c, _)| (r, c));
        v
    }

    /// Matrix product, parallel over output columns.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, AlgebraError> {
        if self.cols() != rhs.rows {
            return Err(AlgebraError::Dimension(self.rows, self.cols(), rhs.rows, rhs.cols()));
        }
        let cols = rhs
            .cols
            .par_iter()
            .map(|bcol| {
                let mut acc: BTreeMap<usize, SqrtScalar> = BTreeMap::new();
                for (&k, b) in bcol {
                    for (&r, a) in &self.cols[k] {
                        let entry = acc.entry(r).or_default();
                        *entry = &*entry + &(a * b);
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    fn combine(&self, rhs: &SparseMatrix, sign: bool) -> Result<SparseMatrix, AlgebraError> {
        if self.rows != rhs.rows || self.cols() != rhs.cols() {
            return Err(AlgebraError::Dimension(self.rows, self.cols(), rhs.rows, rhs.cols()));
        }
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            let cur = out.get(r, c);
            out.set(r, c, if sign { &cur + v } else { &cur - v });
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, AlgebraError> {
        self.combine(rhs, true)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, AlgebraError> {
        self.combine(rhs, false)
    }

    /// Multiplies every entry by an integer.
    pub fn scale_int(&self, k: i64) -> SparseMatrix {
        let q = BigRational::from_integer(BigInt::from(k));
        let mut out = Self::zeros(self.rows, self.cols());
        for (r, c, v) in self.entries() {
            out.set(r, c, v.scale(&q));
        }
        out
    }

    /// The transpose.
    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.cols(), self.rows);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }
}

/// `AB − BA`.
pub fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix, AlgebraError> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Representing matrices of `x_i`, `y_i`, `h_i` on the basis indexed by
/// lattice elements.
#[derive(Clone, Debug)]
pub struct GeneratorMatrices {
    pub colors: Vec<Color>,
    pub x: Vec<SparseMatrix>,
    pub y: Vec<SparseMatrix>,
    /// Diagonals of the `h_i`: the `m_i` values.
    pub h: Vec<Vec<i64>>,
    /// The squared coefficient `P` behind each `X`/`Y` entry, per color, as
    /// `(row, col, P)` for `X` (`Y` is the transpose).
    squared: Vec<Vec<(usize, usize, BigRational)>>,
}

impl GeneratorMatrices {
    pub fn dim(&self) -> usize {
        self.h.first().map_or(0, Vec::len)
    }

    /// Matrix JSON export per color:
    /// `{"color":…,"x":{"entries":[[row,col,{"terms":…}]]},"y":…,"h":[…]}`.
    pub fn to_json(&self) -> Value {
        let export = |m: &SparseMatrix| -> Value {
            let entries: Vec<Value> =
                m.entries_row_major().into_iter().map(|(r, c, v)| json!([r, c, v.to_json()])).collect();
            json!({"entries": entries})
        };
        let gens: Vec<Value> = (0..self.colors.len())
            .map(|i| {
                json!({
                    "color": self.colors[i].to_string(),
                    "x": export(&self.x[i]),
                    "y": export(&self.y[i]),
                    "h": self.h[i],
                })
            })
            .collect();
        json!({"dim": self.dim(), "generators": gens})
    }

    /// The companion export with rational `P` values only:
    /// `{"color":…,"entries":[[row,col,"num/den"]]}` for each `X_i`.
    pub fn to_squared_json(&self) -> Value {
        let gens: Vec<Value> = (0..self.colors.len())
            .map(|i| {
                let mut e: Vec<&(usize, usize, BigRational)> = self.squared[i].iter().collect();
                e.sort_by_key(|&&(r, c, _)| (r, c));
                let entries: Vec<Value> = e.iter().map(|(r, c, p)| json!([r, c, rational_string(p)])).collect();
                json!({"color": self.colors[i].to_string(), "entries": entries})
            })
            .collect();
        json!({"dim": self.dim(), "generators": gens})
    }
}

/// Assembles `X_i`, `Y_i`, `H_i` from edge coefficients: for the edge
/// `r →ⁱ s` with coefficient `P`, `X_i[s][r] = Y_i[r][s] = √P`, and `H_i` is
/// diagonal with entries `m_i(r)`. `colors` fixes the generator order.
pub fn build_generator_matrices(
    l: &ColoredRankedPoset,
    coefficients: &[BigRational],
    colors: &[Color],
) -> Result<GeneratorMatrices, AlgebraError> {
    if coefficients.len() != l.edges().len() {
        return Err(AlgebraError::CoefficientCount { expected: l.edges().len(), got: coefficients.len() });
    }
    let n = l.len();
    let mut x = vec![SparseMatrix::zeros(n, n); colors.len()];
    let mut squared = vec![Vec::new(); colors.len()];
    for (e, p) in l.edges().iter().zip(coefficients) {
        let i = colors.iter().position(|&c| c == e.color).ok_or(AlgebraError::UnknownColor(e.color))?;
        x[i].set(e.hi, e.lo, sqrt_of(p)?);
        squared[i].push((e.hi, e.lo, p.clone()));
    }
    let y = x.iter().map(SparseMatrix::transpose).collect();
    let table = l.m_table();
    let h = colors.iter().map(|&c| (0..n).map(|v| table.get(c, v)).collect()).collect();
    Ok(GeneratorMatrices { colors: colors.to_vec(), x, y, h, squared })
}

/// A failed bracket relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFailure {
    pub relation: String,
    /// One offending entry `(row, col, lhs − rhs)`.
    pub entry: Option<(usize, usize, String)>,
}

impl fmt::Display for BracketFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.entry {
            Some((r, c, v)) => write!(f, "{} fails at ({r},{c}): difference {v}", self.relation),
            None => write!(f, "{} fails", self.relation),
        }
    }
}

/// Counts of relations checked by [`check_brackets`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BracketCounts {
    pub xy: usize,
    pub hx: usize,
    pub hy: usize,
    pub hh: usize,
    pub serre: usize,
}

impl BracketCounts {
    pub fn total(&self) -> usize {
        self.xy + self.hx + self.hy + self.hh + self.serre
    }
}

fn expect_equal(relation: String, lhs: &SparseMatrix, rhs: &SparseMatrix) -> Result<(), BracketFailure> {
    let diff = lhs.sub(rhs).map_err(|e| BracketFailure { relation: format!("{relation}: {e}"), entry: None })?;
    let first = diff.entries().next().map(|(r, c, v)| (r, c, v.to_string()));
    match first {
        None => Ok(()),
        Some(entry) => Err(BracketFailure { relation, entry: Some(entry) }),
    }
}

/// Checks, entrywise and exactly:
/// `[X_i, Y_j] = δ_ij H_i`, `[H_i, X_j] = a[j][i] X_j`,
/// `[H_i, Y_j] = −a[j][i] Y_j`, `[H_i, H_j] = 0`, and the Serre relations
/// `ad(X_i)^{1−a[j][i]}(X_j) = 0 = ad(Y_i)^{1−a[j][i]}(Y_j)` for `i ≠ j`.
///
/// Pairs `(i, j)` are checked in parallel; the reported failure is the
/// first in `(i, j)` order.
pub fn check_brackets(gm: &GeneratorMatrices, rs: &RootSystem) -> Result<BracketCounts, BracketFailure> {
    let r = gm.colors.len();
    let nodes: Vec<usize> = gm
        .colors
        .iter()
        .map(|&c| {
            rs.node_index(c).ok_or_else(|| BracketFailure { relation: format!("unknown color {c}"), entry: None })
        })
        .collect::<Result<_, _>>()?;
    let hs: Vec<SparseMatrix> = gm.h.iter().map(|d| SparseMatrix::diagonal(d)).collect();
    let zero = SparseMatrix::zeros(gm.dim(), gm.dim());
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let results: Vec<Result<BracketCounts, BracketFailure>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (ci, cj) = (gm.colors[i], gm.colors[j]);
            let a_ji = rs.cartan()[nodes[j]][nodes[i]];
            let wrap = |e: AlgebraError| BracketFailure { relation: e.to_string(), entry: None };
            let mut counts = BracketCounts::default();
            let xy = commutator(&gm.x[i], &gm.y[j]).map_err(wrap)?;
            expect_equal(format!("[X_{ci}, Y_{cj}] = δ H"), &xy, if i == j { &hs[i] } else { &zero })?;
            counts.xy += 1;
            let hx = commutator(&hs[i], &gm.x[j]).map_err(wrap)?;
            expect_equal(format!("[H_{ci}, X_{cj}] = {a_ji} X_{cj}"), &hx, &gm.x[j].scale_int(a_ji))?;
            counts.hx += 1;
            let hy = commutator(&hs[i], &gm.y[j]).map_err(wrap)?;
            expect_equal(format!("[H_{ci}, Y_{cj}] = {} Y_{cj}", -a_ji), &hy, &gm.y[j].scale_int(-a_ji))?;
            counts.hy += 1;
            let hh = commutator(&hs[i], &hs[j]).map_err(wrap)?;
            expect_equal(format!("[H_{ci}, H_{cj}] = 0"), &hh, &zero)?;
            counts.hh += 1;
            if i != j {
                let power = (1 - a_ji) as usize;
                for (name, gens) in [("X", &gm.x), ("Y", &gm.y)] {
                    let mut acc = gens[j].clone();
                    for _ in 0..power {
                        acc = commutator(&gens[i], &acc).map_err(wrap)?;
                    }
                    expect_equal(format!("ad({name}_{ci})^{power}({name}_{cj}) = 0"), &acc, &zero)?;
                    counts.serre += 1;
                }
            }
            Ok(counts)
        })
        .collect();
    let mut total = BracketCounts::default();
    for res in results {
        let c = res?;
        total.xy += c.xy;
        total.hx += c.hx;
        total.hy += c.hy;
        total.hh += c.hh;
        total.serre += c.serre;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_of(&q(4, 1)).unwrap(), SqrtScalar::integer(2));
        assert_eq!(sqrt_of(&q(1, 1)).unwrap(), SqrtScalar::one());
        assert_eq!(sqrt_of(&q(8, 3)).unwrap(), SqrtScalar::term(q(2, 3), 6u32));
        assert_eq!(sqrt_of(&q(3, 12)).unwrap(), SqrtScalar::rational(q(1, 2)));
        assert!(sqrt_of(&q(0, 1)).is_err());
        assert!(sqrt_of(&q(-1, 1)).is_err());
        let s = sqrt_of(&q(8, 3)).unwrap();
        assert_eq!((&s * &s).as_rational(), Some(q(8, 3)));
    }

    #[test]
    fn field_arithmetic() {
        let a = &SqrtScalar::term(q(1, 1), 2u32) + &SqrtScalar::term(q(1, 1), 3u32);
        let b = &SqrtScalar::term(q(1, 1), 2u32) - &SqrtScalar::term(q(1, 1), 3u32);
        assert_eq!((&a * &b).as_rational(), Some(q(-1, 1)));
        assert_eq!(&SqrtScalar::term(q(1, 1), 6u32) * &SqrtScalar::term(q(1, 1), 10u32), SqrtScalar::term(q(2, 1), 15u32));
        assert!((&a - &a).is_zero());
        assert_eq!(a.to_string(), "1*sqrt(2) + 1*sqrt(3)");
        assert_eq!(SqrtScalar::term(q(2, 3), 6u32).to_json(), json!({"terms": {"6": "2/3"}}));
    }

    #[test]
    fn sparse_products() {
        let mut a = SparseMatrix::zeros(2, 2);
        a.set(0, 1, SqrtScalar::integer(1));
        let b = a.transpose();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.get(0, 0), SqrtScalar::integer(1));
        assert_eq!(ab.nnz(), 1);
        let c = commutator(&a, &b).unwrap();
        assert_eq!(c, SparseMatrix::diagonal(&[1, -1]));
        assert!(commutator(&a, &a).unwrap().is_zero());
        assert!(a.mul(&SparseMatrix::zeros(3, 3)).is_err());
    }
}
