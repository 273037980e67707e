//! Truncated noncommutative power series in `2g` variables `w_1..w_{2g}`, and
//! the Magnus embedding `x_i ↦ 1 + w_i` of a free group into the unit group of
//! the series ring.
//!
//! Series are stored densely by degree: one coefficient table per total
//! degree, keyed by a base-`rank` integer code of the monomial (read left to
//! right, most significant digit first). Products are degree convolutions, so
//! this layout keeps the hot loop on contiguous small maps.
//!
//! The word-valuation of `u` is the least degree of a nonzero term of
//! `embed(u) − 1`. Truncation at degree `D` means a valuation query can only
//! certify "`≥ D+1`", never infinity; [`Valuation`] keeps that distinction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff_budget;
use crate::freegroup::Word;
use crate::groupring::CoefficientRing;

/// A monomial in the series variables: a sequence of 1-based variable
/// indices, read left to right. The empty sequence is the constant monomial.
pub type Monomial = Vec<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("incompatible series: {0}")]
    Incompatible(String),
    #[error("constant term is not 1, so the series is not invertible")]
    NotAUnit,
    #[error("monomial degree {degree} exceeds truncation {truncation}")]
    OutOfRange { degree: usize, truncation: usize },
    #[error("stored monomial count {stored} exceeds the budget {budget} (set JOHNSONLAB_BUDGET to raise it)")]
    BudgetExceeded { stored: usize, budget: usize },
}

/// Result of a truncated valuation query: either an exact degree, or a lower
/// bound `≥ D+1` when every term of positive degree up to the truncation
/// vanishes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(usize),
    AtLeast(usize),
}

impl Valuation {
    /// Whether the query certifies valuation `≥ k`.
    pub fn is_at_least(&self, k: usize) -> bool {
        match self {
            Valuation::Finite(d) => *d >= k,
            Valuation::AtLeast(d) => *d >= k,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Valuation::Finite(d) => Some(*d),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(d) => write!(f, "{d}"),
            Valuation::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let text = String::deserialize(d)?;
        if let Some(rest) = text.strip_prefix(">=") {
            let v = rest.parse().map_err(D::Error::custom)?;
            Ok(Valuation::AtLeast(v))
        } else {
            let v = text.parse().map_err(D::Error::custom)?;
            Ok(Valuation::Finite(v))
        }
    }
}

/// A noncommutative polynomial of total degree ≤ `truncation`, representing a
/// power series with all higher terms discarded.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: usize,
    ring: CoefficientRing,
    truncation: usize,
    /// `degrees[d]` maps the base-`rank` code of a degree-`d` monomial to its
    /// nonzero coefficient.
    degrees: Vec<BTreeMap<u64, BigInt>>,
}

fn encode(rank: usize, monomial: &[usize]) -> u64 {
    let mut code = 0u64;
    for &i in monomial {
        assert!(i >= 1 && i <= rank, "variable index out of range");
        code = code
            .checked_mul(rank as u64)
            .and_then(|c| c.checked_add((i - 1) as u64))
            .expect("monomial code overflow; lower the truncation");
    }
    code
}

fn decode(rank: usize, degree: usize, mut code: u64) -> Monomial {
    let mut out = vec![0usize; degree];
    for slot in out.iter_mut().rev() {
        *slot = (code % rank as u64) as usize + 1;
        code /= rank as u64;
    }
    out
}

impl TruncatedSeries {
    pub fn zero(rank: usize, ring: CoefficientRing, truncation: usize) -> Self {
        TruncatedSeries {
            rank,
            ring,
            truncation,
            degrees: vec![BTreeMap::new(); truncation + 1],
        }
    }

    pub fn one(rank: usize, ring: CoefficientRing, truncation: usize) -> Self {
        let mut s = Self::zero(rank, ring, truncation);
        s.add_to_term(0, 0, &BigInt::one());
        s
    }

    /// The variable `w_i` as a series.
    pub fn variable(rank: usize, ring: CoefficientRing, truncation: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "variable index out of range");
        assert!(truncation >= 1, "truncation must admit degree 1");
        let mut s = Self::zero(rank, ring, truncation);
        s.add_to_term(1, (i - 1) as u64, &BigInt::one());
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|t| t.is_empty())
    }

    pub fn is_one(&self) -> bool {
        self.degrees[0].len() == 1
            && self.degrees[0].get(&0).map(|c| c.is_one()).unwrap_or(false)
            && self.degrees[1..].iter().all(|t| t.is_empty())
    }

    /// Total number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.degrees.iter().map(|t| t.len()).sum()
    }

    fn add_to_term(&mut self, degree: usize, code: u64, c: &BigInt) {
        let table = &mut self.degrees[degree];
        let entry = table.entry(code).or_insert_with(BigInt::zero);
        *entry = self.ring.normalize(std::mem::take(entry) + c);
        if entry.is_zero() {
            table.remove(&code);
        }
    }

    /// The stored coefficient of `monomial`, or zero; errors if the degree
    /// exceeds the truncation (the coefficient is simply unknown there).
    pub fn coefficient(&self, monomial: &[usize]) -> Result<BigInt, SeriesError> {
        if monomial.len() > self.truncation {
            return Err(SeriesError::OutOfRange {
                degree: monomial.len(),
                truncation: self.truncation,
            });
        }
        let code = encode(self.rank, monomial);
        Ok(self.degrees[monomial.len()].get(&code).cloned().unwrap_or_else(BigInt::zero))
    }

    /// All nonzero terms of total degree `d`, in monomial code order.
    pub fn degree_terms(&self, d: usize) -> impl Iterator<Item = (Monomial, &BigInt)> {
        let rank = self.rank;
        self.degrees
            .get(d)
            .into_iter()
            .flat_map(move |t| t.iter().map(move |(&code, c)| (decode(rank, d, code), c)))
    }

    fn fmt_monomial(monomial: &[usize]) -> String {
        monomial.iter().map(|i| format!("w{i}")).collect::<Vec<_>>().join(" ")
    }

    /// The least positive degree with a nonzero term, as far as the
    /// truncation can see.
    pub fn lowest_positive_degree(&self) -> Valuation {
        for d in 1..=self.truncation {
            if !self.degrees[d].is_empty() {
                return Valuation::Finite(d);
            }
        }
        Valuation::AtLeast(self.truncation + 1)
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.rank != other.rank {
            return Err(SeriesError::Incompatible(format!(
                "rank {} vs {}",
                self.rank, other.rank
            )));
        }
        if self.ring != other.ring {
            return Err(SeriesError::Incompatible(format!(
                "ring {} vs {}",
                self.ring, other.ring
            )));
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::Incompatible(format!(
                "truncation {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for d in 0..=other.truncation {
            for (&code, c) in &other.degrees[d] {
                out.add_to_term(d, code, c);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncatedSeries {
        let mut out = Self::zero(self.rank, self.ring, self.truncation);
        for d in 0..=self.truncation {
            for (&code, c) in &self.degrees[d] {
                out.add_to_term(d, code, &(-c));
            }
        }
        out
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> TruncatedSeries {
        let mut out = Self::zero(self.rank, self.ring, self.truncation);
        for d in 0..=self.truncation {
            for (&code, k) in &self.degrees[d] {
                out.add_to_term(d, code, &(c * k));
            }
        }
        out
    }

    /// Reduces an integral series mod `p`, coefficientwise.
    pub fn reduced_mod(&self, p: u64) -> TruncatedSeries {
        let mut out = Self::zero(self.rank, CoefficientRing::PrimeField(p), self.truncation);
        for d in 0..=self.truncation {
            for (&code, c) in &self.degrees[d] {
                out.add_to_term(d, code, c);
            }
        }
        out
    }
}

/// Noncommutative product, discarding all terms of degree > truncation.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.check_compatible(b)?;
    let budget = coeff_budget();
    let rank = a.rank as u64;
    let mut out = TruncatedSeries::zero(a.rank, a.ring, a.truncation);
    for da in 0..=a.truncation {
        if a.degrees[da].is_empty() {
            continue;
        }
        for db in 0..=(a.truncation - da) {
            if b.degrees[db].is_empty() {
                continue;
            }
            // Concatenation shifts the left code past db base-rank digits.
            let shift = rank
                .checked_pow(db as u32)
                .expect("monomial code overflow; lower the truncation");
            for (&ca, va) in &a.degrees[da] {
                let base = ca
                    .checked_mul(shift)
                    .expect("monomial code overflow; lower the truncation");
                for (&cb, vb) in &b.degrees[db] {
                    out.add_to_term(da + db, base + cb, &(va * vb));
                }
            }
            let stored = out.term_count();
            if stored > budget {
                return Err(SeriesError::BudgetExceeded { stored, budget });
            }
        }
    }
    Ok(out)
}

/// Inverse of a series with constant term 1, via the geometric series of
/// `1 − a`: iterating `r ← 1 + (1 − a)·r` converges within `truncation` steps
/// because `1 − a` has no constant term.
pub fn series_inverse(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let one = TruncatedSeries::one(a.rank, a.ring, a.truncation);
    if !a.degrees[0].get(&0).map(|c| c.is_one()).unwrap_or(false) {
        return Err(SeriesError::NotAUnit);
    }
    let n = one.sub(a)?;
    let mut r = one.clone();
    for _ in 0..a.truncation {
        r = one.add(&series_mul(&n, &r)?)?;
    }
    Ok(r)
}

/// The Magnus embedding of a word: `x_i ↦ 1 + w_i`, extended
/// multiplicatively, truncated at degree `truncation`.
///
/// Over `PrimeField(p)` this equals the integer embedding reduced mod `p`.
pub fn magnus_embed(
    u: &Word,
    truncation: usize,
    ring: CoefficientRing,
) -> Result<TruncatedSeries, SeriesError> {
    assert!(truncation >= 1, "truncation must admit degree 1");
    let rank = u.rank();
    let mut acc = TruncatedSeries::one(rank, ring, truncation);
    for &l in u.letters() {
        let i = l.unsigned_abs() as usize;
        let gen = TruncatedSeries::one(rank, ring, truncation)
            .add(&TruncatedSeries::variable(rank, ring, truncation, i))?;
        let factor = if l > 0 { gen } else { series_inverse(&gen)? };
        acc = series_mul(&acc, &factor)?;
    }
    Ok(acc)
}

/// Valuation of a word: the least degree of a nonzero term of
/// `embed(u) − 1`, or `AtLeast(D+1)` if none is visible below the truncation.
pub fn valuation(
    u: &Word,
    ring: CoefficientRing,
    truncation: usize,
) -> Result<Valuation, SeriesError> {
    Ok(magnus_embed(u, truncation, ring)?.lowest_positive_degree())
}

/// Valuation together with a witness monomial at the valuation degree (the
/// code-least nonzero one), for membership reports.
pub fn valuation_with_witness(
    u: &Word,
    ring: CoefficientRing,
    truncation: usize,
) -> Result<(Valuation, Option<Monomial>), SeriesError> {
    let s = magnus_embed(u, truncation, ring)?;
    let v = s.lowest_positive_degree();
    let witness = v
        .finite()
        .and_then(|d| s.degree_terms(d).next().map(|(m, _)| m));
    Ok((v, witness))
}

/// The multi-index (in application order, first entry innermost) whose
/// iterated Fox derivative evaluates to the coefficient of `monomial` in the
/// Magnus embedding: the reverse of the monomial's left-to-right reading.
///
/// Concretely, the coefficient of `w_{m_1}···w_{m_l}` in `embed(u)` is the
/// augmentation of `u` differentiated with respect to `x_{m_l}` first and
/// `x_{m_1}` last. Pinned by the `bridge_convention_*` regression tests.
pub fn bridge_multi_index(monomial: &[usize]) -> Vec<usize> {
    monomial.iter().rev().copied().collect()
}

/// JSON shape for series: `{rank, truncation, ring, terms: [{monomial, coeff}]}`
/// with monomials as 1-based index lists and coefficients as decimal strings.
#[derive(Serialize, Deserialize)]
pub struct SeriesJson {
    pub rank: usize,
    pub truncation: usize,
    pub ring: CoefficientRing,
    pub terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub monomial: Vec<usize>,
    pub coeff: String,
}

impl TruncatedSeries {
    pub fn to_json(&self) -> SeriesJson {
        let mut terms = Vec::new();
        for d in 0..=self.truncation {
            for (m, c) in self.degree_terms(d) {
                terms.push(SeriesTermJson { monomial: m, coeff: c.to_string() });
            }
        }
        SeriesJson { rank: self.rank, truncation: self.truncation, ring: self.ring, terms }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, String> {
        let mut s = Self::zero(json.rank, json.ring, json.truncation);
        for t in &json.terms {
            if t.monomial.len() > json.truncation {
                return Err(format!(
                    "monomial degree {} exceeds truncation {}",
                    t.monomial.len(),
                    json.truncation
                ));
            }
            for &i in &t.monomial {
                if i < 1 || i > json.rank {
                    return Err(format!("variable index {i} out of range 1..={}", json.rank));
                }
            }
            let c: BigInt = t.coeff.parse().map_err(|_| format!("bad coefficient `{}`", t.coeff))?;
            s.add_to_term(t.monomial.len(), encode(json.rank, &t.monomial), &c);
        }
        Ok(s)
    }
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for d in 0..=self.truncation {
            for (m, c) in self.degree_terms(d) {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if m.is_empty() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*")?;
                    for (k, i) in m.iter().enumerate() {
                        if k > 0 {
                            write!(f, ".")?;
                        }
                        write!(f, "w{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Human-oriented rendering: signed terms in degree order, with an explicit
/// marker for where the truncation cuts off.
impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for d in 0..=self.truncation {
            for (m, c) in self.degree_terms(d) {
                let negative = c.sign() == num_bigint::Sign::Minus;
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                first = false;
                let magnitude = c.magnitude();
                if m.is_empty() {
                    write!(f, "{magnitude}")?;
                } else if magnitude.is_one() {
                    write!(f, "{}", Self::fmt_monomial(&m))?;
                } else {
                    write!(f, "{magnitude}·{}", Self::fmt_monomial(&m))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.truncation + 1)
    }
}
