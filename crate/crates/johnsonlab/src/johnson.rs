//! Johnson homomorphisms of mapping classes: the integral and mod-p values
//! `τ_k` read off from Magnus degree parts, the depth-one Stallings value
//! `τ₁^S` with its wedge and symplectic components, membership of `τ₁` values
//! in the `∧³` subspace, and the Fox-matrix filtration that detects the same
//! kernels through group-ring derivatives.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::filtrations::{
    self, l2s_image, FiltrationError, L2SImage, SeriesKind, Verdict,
};
use crate::freegroup::Word;
use crate::groupring::{CoefficientRing, GroupRingElement, RingError};
use crate::magnus::{
    magnus_embed, series_inverse, series_mul, Monomial, SeriesError, TruncatedSeries,
};
use crate::mapclass::{block_position, congruence_level, FreeAutomorphism, MapClassError};
use crate::symplectic::{SpMatrix, SymplecticError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JohnsonError {
    #[error("mapping class is not in the filtration at level {level}")]
    NotInFiltration { level: usize },
    #[error("unsupported series for this value: {0}")]
    UnsupportedSeries(String),
    #[error("expected a level-{expected} value, got level {got}")]
    WrongLevel { expected: usize, got: usize },
    #[error("expected a value over a prime field")]
    WrongRing,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    MapClass(#[from] MapClassError),
}

/// A `τ_k` value: one coefficient table per generator, holding the
/// degree-(k+1) homogeneous part of `Mag(f(x_i)·x_i⁻¹)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JohnsonValue {
    rank: usize,
    level: usize,
    ring: CoefficientRing,
    rows: Vec<BTreeMap<Monomial, BigInt>>,
}

impl JohnsonValue {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> &[BTreeMap<Monomial, BigInt>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Coefficientwise sum; values at the same level add under composition.
    pub fn add(&self, other: &JohnsonValue) -> Result<JohnsonValue, JohnsonError> {
        if self.rank != other.rank || self.level != other.level || self.ring != other.ring {
            return Err(JohnsonError::WrongLevel { expected: self.level, got: other.level });
        }
        let mut out = self.clone();
        for (row, other_row) in out.rows.iter_mut().zip(&other.rows) {
            for (m, c) in other_row {
                let entry = row.entry(m.clone()).or_insert_with(BigInt::zero);
                *entry = self.ring.normalize(entry.clone() + c);
                if entry.is_zero() {
                    row.remove(m);
                }
            }
        }
        Ok(out)
    }

    /// Reduces an integral value into `F_p` (rows of `τ_k` become rows of
    /// `τ_k^Z`).
    pub fn reduced_mod(&self, p: u64) -> Result<JohnsonValue, JohnsonError> {
        let ring = CoefficientRing::prime_field(p)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(m, c)| (m.clone(), ring.normalize(c.clone())))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Ok(JohnsonValue { rank: self.rank, level: self.level, ring, rows })
    }

    pub fn to_json(&self) -> JohnsonValueJson {
        JohnsonValueJson {
            level: self.level,
            ring: self.ring,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(m, c)| TauTermJson { monomial: m.clone(), coeff: c.to_string() })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct TauTermJson {
    pub monomial: Monomial,
    pub coeff: String,
}

/// JSON shape `{level, ring, rows}`; row order follows the generators.
#[derive(Serialize, Deserialize)]
pub struct JohnsonValueJson {
    pub level: usize,
    pub ring: CoefficientRing,
    pub rows: Vec<Vec<TauTermJson>>,
}

fn displacement(f: &FreeAutomorphism, i: usize) -> Word {
    let x = Word::generator(f.rank(), i);
    f.apply(&x).mul(&x.inverse())
}

/// Whether `f(x_i)·x_i⁻¹` lies at depth `k+1` of the series for every
/// generator: the level-`k` kernel of the action on the nilpotent quotient.
/// The generator check suffices because the displacement map is a
/// homomorphism on the quotients. Stallings verdicts can be `Unknown` past
/// its exact depth.
pub fn filtration_member(
    f: &FreeAutomorphism,
    kind: SeriesKind,
    k: usize,
) -> Result<Verdict, JohnsonError> {
    let mut verdict = Verdict::True;
    for i in 1..=f.rank() {
        let report = filtrations::membership(&displacement(f, i), kind, k + 1)?;
        match report.verdict {
            Verdict::False => return Ok(Verdict::False),
            Verdict::Unknown => verdict = Verdict::Unknown,
            Verdict::True => {}
        }
    }
    Ok(verdict)
}

/// The level-`k` Johnson value of `f`: requires `f` in the level-`k` kernel
/// for the chosen series (`LCS` over `Z`, `Zassenhaus(p)` over `F_p`; the
/// Stallings series has no computable target past level one — use
/// [`tau1_s`]).
pub fn tau(f: &FreeAutomorphism, k: usize, kind: SeriesKind) -> Result<JohnsonValue, JohnsonError> {
    let ring = match kind {
        SeriesKind::Lcs => CoefficientRing::Integers,
        SeriesKind::Zassenhaus(p) => CoefficientRing::prime_field(p)?,
        SeriesKind::Stallings(_) => {
            return Err(JohnsonError::UnsupportedSeries(
                "tau over the Stallings series is only available at level 1 via tau1_s".into(),
            ))
        }
    };
    let rank = f.rank();
    let mut rows = Vec::with_capacity(rank);
    for i in 1..=rank {
        let u = displacement(f, i);
        let series = magnus_embed(&u, k + 1, ring)?;
        for d in 1..=k {
            if series.degree_terms(d).next().is_some() {
                return Err(JohnsonError::NotInFiltration { level: k });
            }
        }
        let row: BTreeMap<Monomial, BigInt> =
            series.degree_terms(k + 1).map(|(m, c)| (m, c.clone())).collect();
        rows.push(row);
    }
    Ok(JohnsonValue { rank, level: k, ring, rows })
}

/// The depth-one Stallings value: per generator the image of the
/// displacement in `L₂^S = ∧²H ⊕ H`, plus the symplectic matrix assembled
/// from the linear parts (columns in the block basis, rows dualized the same
/// way).
#[derive(Clone, Debug)]
pub struct Tau1SValue {
    p: u64,
    columns: Vec<L2SImage>,
    sp_part: SpMatrix,
}

impl Tau1SValue {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn columns(&self) -> &[L2SImage] {
        &self.columns
    }

    pub fn sp_part(&self) -> &SpMatrix {
        &self.sp_part
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> Tau1SJson {
        Tau1SJson {
            level: 1,
            ring: format!("F{}", self.p),
            columns: self.columns.iter().map(|c| c.to_json()).collect(),
            sp_part: self.sp_part.to_json(),
        }
    }
}

#[derive(Serialize)]
pub struct Tau1SJson {
    pub level: usize,
    pub ring: String,
    pub columns: Vec<serde_json::Value>,
    pub sp_part: crate::symplectic::MatrixJson,
}

pub fn tau1_s(f: &FreeAutomorphism, p: u64) -> Result<Tau1SValue, JohnsonError> {
    CoefficientRing::prime_field(p)?;
    if congruence_level(f, p) < 1 {
        return Err(JohnsonError::NotInFiltration { level: 1 });
    }
    let rank = f.rank();
    let g = rank / 2;
    let mut columns = Vec::with_capacity(rank);
    for i in 1..=rank {
        let col = l2s_image(&displacement(f, i), p).map_err(|e| match e {
            FiltrationError::NotInLevel2(_) => JohnsonError::NotInFiltration { level: 1 },
            other => JohnsonError::Filtration(other),
        })?;
        columns.push(col);
    }
    let ring = CoefficientRing::prime_field(p)?;
    let mut sp_part = SpMatrix::zero(g, ring);
    for (i, col) in columns.iter().enumerate() {
        let c = block_position(rank, i + 1);
        for (t, &v) in col.linear().iter().enumerate() {
            sp_part.set(block_position(rank, t + 1), c, BigInt::from(v));
        }
    }
    Ok(Tau1SValue { p, columns, sp_part })
}

/// Human-readable name of a block-basis vector: `a1..ag` then `b1..bg`.
pub fn block_label(rank: usize, index: usize) -> String {
    let g = rank / 2;
    if index < g {
        format!("a{}", index + 1)
    } else {
        format!("b{}", index - g + 1)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Wedge3Coordinate {
    pub indices: [usize; 3],
    pub labels: [String; 3],
    pub value: u64,
}

/// Result of testing whether a level-one value lies in the image of
/// `∧³H ↪ H ⊗ ∧²H`, `x∧y∧z ↦ x⊗(y∧z) + y⊗(z∧x) + z⊗(x∧y)`, with the row
/// index dualized through `Ω`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Wedge3Outcome {
    Member { p: u64, coordinates: Vec<Wedge3Coordinate> },
    NotInSubspace { p: u64 },
}

impl Wedge3Outcome {
    pub fn is_member(&self) -> bool {
        matches!(self, Wedge3Outcome::Member { .. })
    }

    /// Dense coordinate vector over the triples `(i<j<k)` in lexicographic
    /// order, for rank computations; `None` for non-members.
    pub fn dense(&self, rank: usize) -> Option<Vec<u64>> {
        match self {
            Wedge3Outcome::NotInSubspace { .. } => None,
            Wedge3Outcome::Member { coordinates, .. } => {
                let mut out = vec![0u64; triples(rank).len()];
                let index_of = |t: &[usize; 3]| {
                    triples(rank).iter().position(|x| x == t).expect("triple in range")
                };
                for c in coordinates {
                    out[index_of(&c.indices)] = c.value;
                }
                Some(out)
            }
        }
    }
}

fn pairs(rank: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..rank {
        for k in (j + 1)..rank {
            out.push((j, k));
        }
    }
    out
}

fn triples(rank: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..rank {
        for b in (a + 1)..rank {
            for c in (b + 1)..rank {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn pair_index(pairs: &[(usize, usize)], j: usize, k: usize) -> (usize, bool) {
    if j < k {
        (pairs.iter().position(|&p| p == (j, k)).unwrap(), false)
    } else {
        (pairs.iter().position(|&p| p == (k, j)).unwrap(), true)
    }
}

/// Tests membership of a level-one mod-p value in the `∧³` subspace and
/// returns the unique coordinates when it lies there.
pub fn wedge3_membership(v: &JohnsonValue) -> Result<Wedge3Outcome, JohnsonError> {
    if v.level() != 1 {
        return Err(JohnsonError::WrongLevel { expected: 1, got: v.level() });
    }
    let p = match v.ring() {
        CoefficientRing::PrimeField(p) => p,
        CoefficientRing::Integers => return Err(JohnsonError::WrongRing),
    };
    let rank = v.rank();
    let g = rank / 2;
    let pair_list = pairs(rank);
    let triple_list = triples(rank);
    let inv2 = (p + 1) / 2;

    // Antisymmetrize each row into ∧² coordinates over block indices.
    let mut wedge_rows = vec![vec![0u64; pair_list.len()]; rank];
    for (i, row) in v.rows().iter().enumerate() {
        let mut tensor = vec![vec![0u64; rank]; rank];
        for (m, c) in row {
            let bj = block_position(rank, m[0]);
            let bk = block_position(rank, m[1]);
            let c = u64::try_from(((c % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p))
                .expect("normalized residue fits in u64");
            tensor[bj][bk] = (tensor[bj][bk] + c) % p;
        }
        for (idx, &(j, k)) in pair_list.iter().enumerate() {
            wedge_rows[i][idx] = (tensor[j][k] + p - tensor[k][j]) % p * inv2 % p;
        }
    }

    // Dualize the row index through Ω: the functional dual to the generator
    // at block position b is −e_{b+g} for b < g and e_{b−g} otherwise.
    // Target lives in H ⊗ ∧², coordinates [t][pair].
    let mut target = vec![vec![0u64; pair_list.len()]; rank];
    for (i, row) in wedge_rows.iter().enumerate() {
        let b = block_position(rank, i + 1);
        let (t, negate) = if b < g { (b + g, true) } else { (b - g, false) };
        for (idx, &w) in row.iter().enumerate() {
            let signed = if negate { (p - w) % p } else { w };
            target[t][idx] = (target[t][idx] + signed) % p;
        }
    }

    // Columns of the inclusion ∧³ ↪ H⊗∧² over the triple basis.
    let rows_total = rank * pair_list.len();
    let mut system: Vec<Vec<u64>> = vec![vec![0u64; triple_list.len() + 1]; rows_total];
    for (col, &[a, b, c]) in triple_list.iter().enumerate() {
        let mut put = |x: usize, y: usize, z: usize| {
            let (idx, flipped) = pair_index(&pair_list, y, z);
            let value = if flipped { p - 1 } else { 1 };
            let row = x * pair_list.len() + idx;
            system[row][col] = (system[row][col] + value) % p;
        };
        put(a, b, c);
        put(b, c, a);
        put(c, a, b);
    }
    for t in 0..rank {
        for idx in 0..pair_list.len() {
            system[t * pair_list.len() + idx][triple_list.len()] = target[t][idx];
        }
    }

    match solve_mod_p(&mut system, triple_list.len(), p) {
        None => Ok(Wedge3Outcome::NotInSubspace { p }),
        Some(solution) => {
            let coordinates = solution
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &value)| {
                    let t = triple_list[i];
                    Wedge3Coordinate {
                        indices: t,
                        labels: [
                            block_label(rank, t[0]),
                            block_label(rank, t[1]),
                            block_label(rank, t[2]),
                        ],
                        value,
                    }
                })
                .collect();
            Ok(Wedge3Outcome::Member { p, coordinates })
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Gaussian elimination on an augmented system with `cols` unknowns; returns
/// the unique solution of the consistent full-column-rank system, or `None`
/// if inconsistent. (The `∧³` inclusion is injective, so full column rank is
/// guaranteed for that system.)
fn solve_mod_p(system: &mut [Vec<u64>], cols: usize, p: u64) -> Option<Vec<u64>> {
    let rows = system.len();
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| system[r][col] % p != 0) else {
            continue;
        };
        system.swap(rank, pivot);
        let scale = mod_inv(system[rank][col], p);
        for c in col..=cols {
            system[rank][c] = system[rank][c] * scale % p;
        }
        for r in 0..rows {
            if r != rank && system[r][col] != 0 {
                let factor = system[r][col];
                for c in col..=cols {
                    system[r][c] =
                        (system[r][c] + (p - factor) * system[rank][c]) % p;
                }
            }
        }
        pivot_row_of_col[col] = rank;
        rank += 1;
    }
    // Inconsistent when a zero row has nonzero augment.
    for r in rank..rows {
        if system[r][cols] % p != 0 {
            return None;
        }
    }
    let mut solution = vec![0u64; cols];
    for col in 0..cols {
        if pivot_row_of_col[col] != usize::MAX {
            solution[col] = system[pivot_row_of_col[col]][cols] % p;
        }
    }
    Some(solution)
}

/// Rank over `F_p` of a family of dense coordinate vectors.
pub fn span_rank(vectors: &[Vec<u64>], p: u64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m: Vec<Vec<u64>> = vectors.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] % p != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = mod_inv(m[rank][col], p);
        for c in 0..cols {
            m[rank][c] = m[rank][c] * scale % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + (p - factor) * m[rank][c]) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// The matrix of reversed Fox derivatives `B(f)_{ij} = bar(∂f(x_j)/∂x_i)`
/// over the integral group ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FoxMatrix {
    rank: usize,
    entries: Vec<GroupRingElement>,
}

impl FoxMatrix {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[(i - 1) * self.rank + (j - 1)]
    }

    pub fn identity(rank: usize) -> FoxMatrix {
        let mut entries = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                entries.push(if i == j {
                    GroupRingElement::one(rank, CoefficientRing::Integers)
                } else {
                    GroupRingElement::zero(rank, CoefficientRing::Integers)
                });
            }
        }
        FoxMatrix { rank, entries }
    }

    pub fn mul(&self, other: &FoxMatrix) -> FoxMatrix {
        let rank = self.rank;
        let mut entries = Vec::with_capacity(rank * rank);
        for i in 1..=rank {
            for j in 1..=rank {
                let mut acc = GroupRingElement::zero(rank, CoefficientRing::Integers);
                for k in 1..=rank {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        FoxMatrix { rank, entries }
    }

    /// Applies an automorphism to every group-ring word in every entry (the
    /// superscript of the composition identity).
    pub fn twisted_by(&self, f: &FreeAutomorphism) -> FoxMatrix {
        FoxMatrix {
            rank: self.rank,
            entries: self.entries.iter().map(|e| e.map_words(|w| f.apply(w))).collect(),
        }
    }
}

pub fn fox_matrix(f: &FreeAutomorphism) -> FoxMatrix {
    let rank = f.rank();
    let mut entries = Vec::with_capacity(rank * rank);
    for i in 1..=rank {
        let mut row = Vec::with_capacity(rank);
        for j in 1..=rank {
            let d = crate::groupring::fox_derivative(f.image(j), i);
            row.push(d.bar());
        }
        entries.extend(row);
    }
    FoxMatrix { rank, entries }
}

/// Magnus expansion of a group-ring element by linearity.
fn magnus_of_element(
    e: &GroupRingElement,
    truncation: usize,
    ring: CoefficientRing,
) -> Result<TruncatedSeries, SeriesError> {
    let mut out = TruncatedSeries::zero(e.rank(), ring, truncation);
    for (w, c) in e.terms() {
        out = out.add(&magnus_embed(w, truncation, ring)?.scale(c))?;
    }
    Ok(out)
}

/// The degree-`l` coefficient tables mod `p` of every entry of a Fox matrix.
pub struct TaylorBlock {
    pub level: usize,
    pub p: u64,
    /// `tables[i][j]` is the degree-`level` table of entry `(i+1, j+1)`.
    pub tables: Vec<Vec<BTreeMap<Monomial, BigInt>>>,
}

impl TaylorBlock {
    pub fn is_zero(&self) -> bool {
        self.tables.iter().all(|row| row.iter().all(|t| t.is_empty()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tables: Vec<Vec<serde_json::Value>> = self
            .tables
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| {
                        let terms: Vec<serde_json::Value> = t
                            .iter()
                            .map(|(m, c)| {
                                serde_json::json!({ "monomial": m, "coeff": c.to_string() })
                            })
                            .collect();
                        serde_json::Value::Array(terms)
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "level": self.level, "p": self.p, "tables": tables })
    }

    /// For the degree-0 block: identity means diagonal 1, off-diagonal 0.
    pub fn is_identity(&self) -> bool {
        self.level == 0
            && self.tables.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, t)| {
                    if i == j {
                        t.len() == 1 && t.get(&vec![]).map(|c| *c == BigInt::from(1)) == Some(true)
                    } else {
                        t.is_empty()
                    }
                })
            })
    }
}

pub fn taylor_block(b: &FoxMatrix, level: usize, p: u64) -> Result<TaylorBlock, JohnsonError> {
    let ring = CoefficientRing::prime_field(p)?;
    let rank = b.rank();
    let mut tables = Vec::with_capacity(rank);
    for i in 1..=rank {
        let mut row = Vec::with_capacity(rank);
        for j in 1..=rank {
            let series = magnus_of_element(b.entry(i, j), level.max(1), ring)?;
            row.push(series.degree_terms(level).map(|(m, c)| (m, c.clone())).collect());
        }
        tables.push(row);
    }
    Ok(TaylorBlock { level, p, tables })
}

/// Magnus expansions of `bar(∂w/∂x_i)` for every `i`, computed in one pass.
///
/// The running series is the expansion of the inverted prefix of `w`: a
/// positive occurrence of `x_i` contributes the exclusive inverted prefix to
/// row `i`, a negative one subtracts the inclusive inverted prefix, matching
/// the product rule for word derivatives term by term. Linear in `|w|`, where
/// expanding each derivative term separately would be quadratic.
fn fox_row_series(
    w: &Word,
    truncation: usize,
    ring: CoefficientRing,
) -> Result<Vec<TruncatedSeries>, SeriesError> {
    let rank = w.rank();
    let mut rows = vec![TruncatedSeries::zero(rank, ring, truncation); rank];
    let mut letter_series = Vec::with_capacity(rank);
    for i in 1..=rank {
        let positive = magnus_embed(&Word::generator(rank, i), truncation, ring)?;
        let negative = series_inverse(&positive)?;
        letter_series.push((positive, negative));
    }
    let mut inverted_prefix = TruncatedSeries::one(rank, ring, truncation);
    for &letter in w.letters() {
        let i = letter.unsigned_abs() as usize;
        let (positive, negative) = &letter_series[i - 1];
        if letter > 0 {
            rows[i - 1] = rows[i - 1].add(&inverted_prefix)?;
            inverted_prefix = series_mul(negative, &inverted_prefix)?;
        } else {
            inverted_prefix = series_mul(positive, &inverted_prefix)?;
            rows[i - 1] = rows[i - 1].sub(&inverted_prefix)?;
        }
    }
    Ok(rows)
}

/// Membership in the Fox-matrix filtration: the constant block of `B(f)` is
/// the identity and the degree-1..k−1 blocks vanish mod `p`. Agrees with the
/// Zassenhaus kernel filtration.
pub fn perron_member(f: &FreeAutomorphism, k: usize, p: u64) -> Result<bool, JohnsonError> {
    let ring = CoefficientRing::prime_field(p)?;
    let rank = f.rank();
    let truncation = k.saturating_sub(1).max(1);
    for j in 1..=rank {
        let rows = fox_row_series(f.image(j), truncation, ring)?;
        for (row, series) in rows.iter().enumerate() {
            let expected_constant = u64::from(row + 1 == j);
            if series.coefficient(&[])? != BigInt::from(expected_constant) {
                return Ok(false);
            }
            for d in 1..k {
                if series.degree_terms(d).next().is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapclass::{
        bounding_pair, catalog, parse_expression, twist_a, twist_separating,
    };
    use crate::symplectic::{sp_abel, symplectic_rep};

    #[test]
    fn tau_of_identity_vanishes() {
        let id = FreeAutomorphism::identity(4);
        for kind in [SeriesKind::Lcs, SeriesKind::Zassenhaus(3)] {
            for k in 1..=3 {
                assert!(tau(&id, k, kind).unwrap().is_zero());
            }
        }
        assert!(matches!(
            tau(&id, 1, SeriesKind::Stallings(3)),
            Err(JohnsonError::UnsupportedSeries(_))
        ));
    }

    #[test]
    fn tau_requires_filtration_membership() {
        let ta = twist_a(2, 1).unwrap();
        assert!(matches!(
            tau(&ta, 1, SeriesKind::Lcs),
            Err(JohnsonError::NotInFiltration { level: 1 })
        ));
        assert_eq!(filtration_member(&ta, SeriesKind::Lcs, 1).unwrap(), Verdict::False);
        // But its p-th power acts trivially mod p at level 1.
        assert_eq!(
            filtration_member(&ta.pow(3), SeriesKind::Zassenhaus(3), 1).unwrap(),
            Verdict::True
        );
    }

    #[test]
    fn separating_twist_sits_in_the_tau1_kernel() {
        let sep = twist_separating(2, 1).unwrap();
        assert!(tau(&sep, 1, SeriesKind::Lcs).unwrap().is_zero());
        assert_eq!(filtration_member(&sep, SeriesKind::Lcs, 2).unwrap(), Verdict::True);
        // Level 2 separates it: τ₂(sep) ≠ 0, so it is not in the level-3
        // kernel.
        let tau2 = tau(&sep, 2, SeriesKind::Lcs).unwrap();
        assert!(!tau2.is_zero());
        assert_eq!(filtration_member(&sep, SeriesKind::Lcs, 3).unwrap(), Verdict::False);
    }

    #[test]
    fn tau_is_additive_under_composition() {
        let sep = twist_separating(2, 1).unwrap();
        let bp = bounding_pair(2, 1, 2).unwrap();
        let composite = sep.compose(&bp).unwrap();
        let lhs = tau(&composite, 1, SeriesKind::Lcs).unwrap();
        let rhs = tau(&sep, 1, SeriesKind::Lcs)
            .unwrap()
            .add(&tau(&bp, 1, SeriesKind::Lcs).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);

        // Mod-p variant mixes in p-th twist powers.
        let tap = twist_a(2, 1).unwrap().pow(3);
        let kind = SeriesKind::Zassenhaus(3);
        let composite = tap.compose(&bp).unwrap();
        let lhs = tau(&composite, 1, kind).unwrap();
        let rhs = tau(&tap, 1, kind).unwrap().add(&tau(&bp, 1, kind).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_mod_p_is_the_reduction_of_integral_tau() {
        let bp = bounding_pair(2, 1, 2).unwrap();
        let integral = tau(&bp, 1, SeriesKind::Lcs).unwrap();
        let mod_p = tau(&bp, 1, SeriesKind::Zassenhaus(3)).unwrap();
        assert_eq!(integral.reduced_mod(3).unwrap(), mod_p);
    }

    #[test]
    fn twist_p_powers_vanish_under_tau1_z() {
        for p in [3u64, 5] {
            let kind = SeriesKind::Zassenhaus(p);
            for name in ["Ta1", "Tb2", "Tc1", "Te12"] {
                let f = parse_expression(2, name).unwrap().pow(p as i64);
                let value = tau(&f, 1, kind).unwrap();
                assert!(value.is_zero(), "τ₁^Z({name}^p) ≠ 0 at p={p}");
            }
        }
    }

    #[test]
    fn tau_rows_factor_through_homology() {
        // Replacing x_i by x_i·c for c ∈ Γ₂ must not change the row.
        let bp = bounding_pair(2, 1, 2).unwrap();
        let value = tau(&bp, 1, SeriesKind::Lcs).unwrap();
        let c = Word::parse(4, "x1 x2 X1 X2").unwrap();
        let i = 2usize;
        let x = Word::generator(4, i);
        let perturbed = x.mul(&c);
        let u = bp.apply(&perturbed).mul(&perturbed.inverse());
        let series = magnus_embed(&u, 2, CoefficientRing::Integers).unwrap();
        let row: BTreeMap<Monomial, BigInt> =
            series.degree_terms(2).map(|(m, c)| (m, c.clone())).collect();
        assert_eq!(row, value.rows()[i - 1]);
    }

    #[test]
    fn bounding_pair_tau_lands_in_wedge_cube() {
        let bp = bounding_pair(2, 1, 2).unwrap();
        let value = tau(&bp, 1, SeriesKind::Zassenhaus(3)).unwrap();
        let outcome = wedge3_membership(&value).unwrap();
        let Wedge3Outcome::Member { coordinates, .. } = &outcome else {
            panic!("bounding pair value must lie in the wedge subspace");
        };
        // The pair cuts off handle 1 and its curves have class ±a2: the
        // coordinate sits on a1∧a2∧b1 alone.
        assert_eq!(coordinates.len(), 1);
        assert_eq!(coordinates[0].indices, [0, 1, 2]);
        assert_eq!(
            coordinates[0].labels,
            ["a1".to_string(), "a2".to_string(), "b1".to_string()]
        );
        assert!(coordinates[0].value == 1 || coordinates[0].value == 2);
    }

    #[test]
    fn random_tensor_misses_the_wedge_cube() {
        // A row supported on a single symmetric-free tensor that no ∧³
        // element produces: e_{a1} ⊗ (a2 ∧ b2) alone (the cyclic images
        // would also need entries in other rows).
        let mut rows: Vec<BTreeMap<Monomial, BigInt>> = vec![BTreeMap::new(); 4];
        rows[0].insert(vec![3, 4], BigInt::from(1));
        let value = JohnsonValue {
            rank: 4,
            level: 1,
            ring: CoefficientRing::prime_field(3).unwrap(),
            rows,
        };
        let outcome = wedge3_membership(&value).unwrap();
        assert!(!outcome.is_member());
    }

    #[test]
    fn zero_value_has_zero_coordinates() {
        let id = FreeAutomorphism::identity(4);
        let value = tau(&id, 1, SeriesKind::Zassenhaus(3)).unwrap();
        match wedge3_membership(&value).unwrap() {
            Wedge3Outcome::Member { coordinates, .. } => assert!(coordinates.is_empty()),
            Wedge3Outcome::NotInSubspace { .. } => panic!("zero is a member"),
        }
    }

    #[test]
    fn tau1_s_values() {
        let p = 3u64;
        // Separating twists vanish.
        let sep = twist_separating(2, 1).unwrap();
        assert!(tau1_s(&sep, p).unwrap().is_zero());
        // p-th twist powers: sp_part equals the matrix logarithm of the
        // homology action.
        for name in ["Ta1", "Tb1", "Ta2", "Tc1"] {
            let f = parse_expression(2, name).unwrap().pow(p as i64);
            let value = tau1_s(&f, p).unwrap();
            assert!(value.sp_part().is_sp_lie(), "{name}");
            let expected = sp_abel(&symplectic_rep(&f).unwrap(), p).unwrap();
            assert_eq!(*value.sp_part(), expected, "{name}");
        }
        // p²-th powers and p-th powers of bounding pairs die entirely.
        let deep = twist_a(2, 1).unwrap().pow((p * p) as i64);
        assert!(tau1_s(&deep, p).unwrap().is_zero());
        let bp = bounding_pair(2, 1, 2).unwrap().pow(p as i64);
        assert!(tau1_s(&bp, p).unwrap().is_zero());
        // Precondition: not defined off the congruence subgroup.
        assert!(matches!(
            tau1_s(&twist_a(2, 1).unwrap(), p),
            Err(JohnsonError::NotInFiltration { level: 1 })
        ));
    }

    #[test]
    fn twist_power_linear_parts_are_transvections() {
        // l2s linear part of T^p displacement at x is i([x],[y])·[y].
        let p = 3u64;
        let f = twist_a(1, 1).unwrap().pow(p as i64);
        let value = tau1_s(&f, p).unwrap();
        // Column of x1 (= a1): i(a1, a1) = 0 → zero linear part.
        assert!(value.columns()[0].linear().iter().all(|&v| v == 0));
        // Column of x2 (= b1): i(b1, a1) = 1 → e_{x1}.
        assert_eq!(value.columns()[1].linear(), &[1, 0]);
    }

    #[test]
    fn fox_matrix_composition_identity() {
        let f = parse_expression(2, "Ta1*Tb1").unwrap();
        let g = parse_expression(2, "Tc1^-1*Ta2").unwrap();
        let composite = f.compose(&g).unwrap();
        let lhs = fox_matrix(&composite);
        let rhs = fox_matrix(&g).mul(&fox_matrix(&f).twisted_by(&g));
        assert_eq!(lhs, rhs);
        assert_eq!(fox_matrix(&FreeAutomorphism::identity(4)), FoxMatrix::identity(4));
    }

    #[test]
    fn fox_row_series_matches_entrywise_expansion() {
        let ring = CoefficientRing::prime_field(3).unwrap();
        for expr in ["Tc1*Ta2^-1", "bp12", "sep1*Tb2"] {
            let f = parse_expression(2, expr).unwrap();
            let b = fox_matrix(&f);
            for j in 1..=f.rank() {
                let rows = fox_row_series(f.image(j), 2, ring).unwrap();
                for i in 1..=f.rank() {
                    let slow = magnus_of_element(b.entry(i, j), 2, ring).unwrap();
                    assert!(slow.sub(&rows[i - 1]).unwrap().is_zero(), "{expr} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn taylor_blocks_of_identity() {
        let b = fox_matrix(&FreeAutomorphism::identity(4));
        assert!(taylor_block(&b, 0, 3).unwrap().is_identity());
        for l in 1..=3 {
            assert!(taylor_block(&b, l, 3).unwrap().is_zero());
        }
    }

    #[test]
    fn perron_agrees_with_zassenhaus_membership() {
        let p = 3u64;
        for genus in [1usize, 2] {
            for e in catalog(genus) {
                for k in 1..=3 {
                    let perron = perron_member(&e.automorphism, k, p).unwrap();
                    let member =
                        filtration_member(&e.automorphism, SeriesKind::Zassenhaus(p), k).unwrap();
                    assert_eq!(
                        Verdict::from_bool(perron),
                        member,
                        "{} at k={k}",
                        e.name
                    );
                }
            }
        }
        // The classic example: a p-th twist power is Perron-deep through
        // k = p − 1 and no further (its displacement has valuation exactly p).
        let f = twist_a(1, 1).unwrap().pow(3);
        assert!(perron_member(&f, 1, 3).unwrap());
        assert!(perron_member(&f, 2, 3).unwrap());
        assert!(!perron_member(&f, 3, 3).unwrap());
    }

    #[test]
    fn action_on_deep_words_lands_deeper() {
        // [level-k class, Γ_l^Z] lands at depth k+l.
        let p = 3u64;
        let bp = bounding_pair(2, 1, 2).unwrap(); // level 1
        for (l, seed) in [(1usize, 9u64), (2, 10), (3, 11)] {
            for u in filtrations::sample_series(4, SeriesKind::Zassenhaus(p), l, 3, seed) {
                let moved = bp.apply(&u).mul(&u.inverse());
                let report =
                    filtrations::membership(&moved, SeriesKind::Zassenhaus(p), 1 + l).unwrap();
                assert_eq!(report.verdict, Verdict::True);
            }
        }
    }

    #[test]
    fn json_shapes() {
        let bp = bounding_pair(2, 1, 2).unwrap();
        let value = tau(&bp, 1, SeriesKind::Zassenhaus(3)).unwrap();
        let json = serde_json::to_value(value.to_json()).unwrap();
        assert_eq!(json["level"], 1);
        assert_eq!(json["ring"], "F3");
        assert!(json["rows"].as_array().unwrap().len() == 4);

        let sval = tau1_s(&bp, 3).unwrap();
        let json = serde_json::to_value(sval.to_json()).unwrap();
        assert!(json["columns"].as_array().unwrap().len() == 4);
        assert_eq!(json["sp_part"]["g"], 2);
    }
}
