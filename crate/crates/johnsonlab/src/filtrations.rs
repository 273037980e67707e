//! Membership oracles for three descending central series of a free group:
//! the lower central series, the Stallings mod-`p` series, and the Zassenhaus
//! mod-`p` series — plus seeded samplers that construct elements of each term
//! and the cofinality cross-checks between the mod-`p` series.
//!
//! Lower-central and Zassenhaus membership are exact at any depth the
//! truncation budget allows: a word lies in the depth-`k` term iff its Magnus
//! expansion minus 1 has valuation ≥ `k`, over the integers for the lower
//! central series and over `F_p` for the Zassenhaus series. Stallings
//! membership is exact only to depth 3, through the isomorphism of the
//! second graded piece with `∧²F_p^{2g} ⊕ F_p^{2g}`; deeper queries answer
//! `Unknown` rather than guess.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{commutator, random_reduced_word, Word};
use crate::groupring::CoefficientRing;
use crate::magnus::{valuation_with_witness, Monomial, SeriesError};

/// Which descending series a query refers to; the mod-`p` kinds carry their
/// prime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    Lcs,
    Stallings(u64),
    Zassenhaus(u64),
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::Lcs => "LCS",
            SeriesKind::Stallings(_) => "Stallings",
            SeriesKind::Zassenhaus(_) => "Zassenhaus",
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            SeriesKind::Lcs => None,
            SeriesKind::Stallings(p) | SeriesKind::Zassenhaus(p) => Some(*p),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiltrationError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("word is not in level 2: its exponent vector is nonzero mod {0}")]
    NotInLevel2(u64),
    #[error("exact Stallings membership stops at depth 3; depth {0} was requested")]
    StallingsDepthUnsupported(usize),
}

/// Three-valued oracle answer; `Unknown` marks an honest capability boundary,
/// not an error.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

/// Exact lower-central-series membership: `u ∈ Γ_k` iff every Magnus term of
/// `embed(u) − 1` below degree `k` vanishes over the integers.
pub fn in_lcs(u: &Word, k: usize) -> Result<bool, SeriesError> {
    assert!(k >= 1, "depth must be at least 1");
    if k == 1 {
        return Ok(true);
    }
    let (v, _) = valuation_with_witness(u, CoefficientRing::Integers, k - 1)?;
    Ok(v.is_at_least(k))
}

/// Exact Zassenhaus membership: as [`in_lcs`] but over `F_p`, which is what
/// lets `p`-th powers drop `p` levels at once.
pub fn in_zassenhaus(u: &Word, k: usize, p: u64) -> Result<bool, SeriesError> {
    assert!(k >= 1, "depth must be at least 1");
    if k == 1 {
        return Ok(true);
    }
    let (v, _) = valuation_with_witness(u, CoefficientRing::PrimeField(p), k - 1)?;
    Ok(v.is_at_least(k))
}

/// The image of a level-2 word in `∧²F_p^{2g} ⊕ F_p^{2g}`, the second graded
/// piece of the Stallings series.
///
/// The wedge component antisymmetrizes the degree-2 integer Magnus
/// coefficients: entry `(i,j)`, `i<j`, is `(c_ij − c_ji)/2 mod p`, where
/// `c_ij` is the coefficient of `w_i w_j`. On level-2 words the matrix
/// `c_ij mod p` is already antisymmetric (the tests confirm this), so the
/// halved difference just reads off `c_ij` in a form that is antisymmetric by
/// construction. The linear component is the exponent vector divided by `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct L2SImage {
    rank: usize,
    p: u64,
    wedge: Vec<u64>,
    linear: Vec<u64>,
}

/// Position of the pair `(i,j)`, `1 ≤ i < j ≤ rank`, in the lexicographic
/// ordering of all such pairs.
pub fn wedge_pair_index(rank: usize, i: usize, j: usize) -> usize {
    assert!(1 <= i && i < j && j <= rank, "need 1 ≤ i < j ≤ rank");
    (i - 1) * rank - i * (i - 1) / 2 + (j - i - 1)
}

impl L2SImage {
    pub fn zero(rank: usize, p: u64) -> Self {
        L2SImage {
            rank,
            p,
            wedge: vec![0; rank * (rank - 1) / 2],
            linear: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Wedge coordinates in pair order `(1,2), (1,3), …`.
    pub fn wedge(&self) -> &[u64] {
        &self.wedge
    }

    pub fn linear(&self) -> &[u64] {
        &self.linear
    }

    /// Antisymmetric entry lookup: `entry(j,i) = −entry(i,j)` and the
    /// diagonal is zero.
    pub fn wedge_entry(&self, i: usize, j: usize) -> u64 {
        if i == j {
            return 0;
        }
        if i < j {
            self.wedge[wedge_pair_index(self.rank, i, j)]
        } else {
            (self.p - self.wedge[wedge_pair_index(self.rank, j, i)]) % self.p
        }
    }

    pub fn is_zero(&self) -> bool {
        self.wedge.iter().all(|&c| c == 0) && self.linear.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &L2SImage) -> L2SImage {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        L2SImage {
            rank: self.rank,
            p: self.p,
            wedge: self
                .wedge
                .iter()
                .zip(&other.wedge)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
            linear: self
                .linear
                .iter()
                .zip(&other.linear)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut wedge = Vec::new();
        for i in 1..=self.rank {
            for j in (i + 1)..=self.rank {
                let v = self.wedge[wedge_pair_index(self.rank, i, j)];
                if v != 0 {
                    wedge.push(serde_json::json!({ "i": i, "j": j, "value": v.to_string() }));
                }
            }
        }
        serde_json::json!({
            "p": self.p.to_string(),
            "wedge": wedge,
            "linear": self.linear.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Computes the level-2 image of `u`; errors unless `u`'s exponent vector
/// vanishes mod `p` (the level-2 condition).
pub fn l2s_image(u: &Word, p: u64) -> Result<L2SImage, FiltrationError> {
    let rank = u.rank();
    let ev = u.exponent_vector();
    if ev.iter().any(|&e| e.rem_euclid(p as i64) != 0) {
        return Err(FiltrationError::NotInLevel2(p));
    }
    let mut image = L2SImage::zero(rank, p);
    for (slot, &e) in image.linear.iter_mut().zip(&ev) {
        *slot = (e / p as i64).rem_euclid(p as i64) as u64;
    }
    let series = crate::magnus::magnus_embed(u, 2, CoefficientRing::Integers)?;
    let half = (p + 1) / 2; // inverse of 2 mod an odd prime
    for i in 1..=rank {
        for j in (i + 1)..=rank {
            let cij = series.coefficient(&[i, j]).expect("degree 2 within truncation");
            let cji = series.coefficient(&[j, i]).expect("degree 2 within truncation");
            let diff = CoefficientRing::PrimeField(p).normalize(cij - cji);
            let diff: u64 = diff.try_into().expect("normalized residue fits u64");
            image.wedge[wedge_pair_index(rank, i, j)] = diff * half % p;
        }
    }
    Ok(image)
}

/// Stallings membership: exact for depth ≤ 3, `Unknown` beyond.
///
/// Depth 2 is the kernel of the mod-`p` abelianization; depth 3 is the kernel
/// of the level-2 image.
pub fn in_stallings(u: &Word, k: usize, p: u64) -> Result<Verdict, FiltrationError> {
    assert!(k >= 1, "depth must be at least 1");
    if u.is_identity() {
        return Ok(Verdict::True);
    }
    match k {
        1 => Ok(Verdict::True),
        2 => {
            let ok = u.exponent_vector().iter().all(|&e| e.rem_euclid(p as i64) == 0);
            Ok(Verdict::from_bool(ok))
        }
        3 => match l2s_image(u, p) {
            Ok(image) => Ok(Verdict::from_bool(image.is_zero())),
            Err(FiltrationError::NotInLevel2(_)) => Ok(Verdict::False),
            Err(e) => Err(e),
        },
        _ => Ok(Verdict::Unknown),
    }
}

/// A membership query outcome suitable for JSON output: the verdict plus, on
/// failure, the smallest witnessing monomial the oracle saw.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipReport {
    pub series: String,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_monomial: Option<Monomial>,
}

/// One-stop membership query across all three series.
pub fn membership(u: &Word, kind: SeriesKind, k: usize) -> Result<MembershipReport, FiltrationError> {
    assert!(k >= 1, "depth must be at least 1");
    let mut report = MembershipReport {
        series: kind.name().to_string(),
        depth: k,
        p: kind.modulus(),
        verdict: Verdict::Unknown,
        witness_monomial: None,
    };
    match kind {
        SeriesKind::Lcs | SeriesKind::Zassenhaus(_) => {
            if k == 1 {
                report.verdict = Verdict::True;
                return Ok(report);
            }
            let ring = match kind {
                SeriesKind::Lcs => CoefficientRing::Integers,
                SeriesKind::Zassenhaus(p) => CoefficientRing::PrimeField(p),
                SeriesKind::Stallings(_) => unreachable!(),
            };
            let (v, witness) = valuation_with_witness(u, ring, k - 1)?;
            if v.is_at_least(k) {
                report.verdict = Verdict::True;
            } else {
                report.verdict = Verdict::False;
                report.witness_monomial = witness;
            }
        }
        SeriesKind::Stallings(p) => {
            report.verdict = in_stallings(u, k, p)?;
            if report.verdict == Verdict::False {
                report.witness_monomial = stallings_witness(u, k, p)?;
            }
        }
    }
    Ok(report)
}

fn stallings_witness(u: &Word, k: usize, p: u64) -> Result<Option<Monomial>, FiltrationError> {
    let ev = u.exponent_vector();
    if let Some(i) = ev.iter().position(|&e| e.rem_euclid(p as i64) != 0) {
        return Ok(Some(vec![i + 1]));
    }
    if k >= 3 {
        let image = l2s_image(u, p)?;
        for i in 1..=u.rank() {
            for j in (i + 1)..=u.rank() {
                if image.wedge_entry(i, j) != 0 {
                    return Ok(Some(vec![i, j]));
                }
            }
        }
        if let Some(i) = image.linear().iter().position(|&c| c != 0) {
            return Ok(Some(vec![i + 1]));
        }
    }
    Ok(None)
}

/// Length cap for the random short words the samplers combine.
pub const DEFAULT_SHORT_WORD_CAP: usize = 6;

/// Deepest lower-central term the Zassenhaus sampler will recurse into; for
/// target depths beyond it, the sampler reaches the depth with higher `p`-th
/// powers instead of longer commutators.
const SAMPLER_LCS_DEPTH_CAP: usize = 6;

/// Draws `count` words that lie in the depth-`k` term of the requested
/// series, by construction: depth-`k` elements are built from commutators
/// with depth-`k−1` elements, `p`-th powers, and conjugates, following each
/// series' recursive definition. Deterministic given the seed.
pub fn sample_series(rank: usize, kind: SeriesKind, k: usize, count: usize, seed: u64) -> Vec<Word> {
    sample_series_with_cap(rank, kind, k, count, seed, DEFAULT_SHORT_WORD_CAP)
}

pub fn sample_series_with_cap(
    rank: usize,
    kind: SeriesKind,
    k: usize,
    count: usize,
    seed: u64,
    cap: usize,
) -> Vec<Word> {
    assert!(k >= 1, "depth must be at least 1");
    assert!(cap >= 1, "short-word cap must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match kind {
            SeriesKind::Lcs => sample_lcs(rank, k, &mut rng, cap),
            SeriesKind::Stallings(p) => sample_stallings(rank, k, p, &mut rng, cap),
            SeriesKind::Zassenhaus(p) => sample_zassenhaus(rank, k, p, &mut rng, cap),
        })
        .collect()
}

fn random_short_word(rank: usize, rng: &mut ChaCha8Rng, cap: usize) -> Word {
    let len = rng.gen_range(1..=cap);
    random_reduced_word(rank, len, rng)
}

fn maybe_conjugate(w: Word, rank: usize, rng: &mut ChaCha8Rng) -> Word {
    if rng.gen_bool(0.25) {
        let by = random_reduced_word(rank, rng.gen_range(1..=3), rng);
        w.conjugate(&by)
    } else {
        w
    }
}

fn sample_lcs(rank: usize, k: usize, rng: &mut ChaCha8Rng, cap: usize) -> Word {
    if k <= 1 {
        return random_short_word(rank, rng, cap);
    }
    // Keep deep samples single-factor so word lengths stay near 2^k, not 4^k.
    let factors = if k <= 2 && rng.gen_bool(0.4) { 2 } else { 1 };
    let mut out = Word::identity(rank);
    for _ in 0..factors {
        let g = random_short_word(rank, rng, cap);
        let s = sample_lcs(rank, k - 1, rng, cap);
        out = out.mul(&maybe_conjugate(commutator(&g, &s), rank, rng));
    }
    out
}

fn sample_stallings(rank: usize, k: usize, p: u64, rng: &mut ChaCha8Rng, cap: usize) -> Word {
    if k <= 1 {
        return random_short_word(rank, rng, cap);
    }
    let factors = if k <= 2 && rng.gen_bool(0.4) { 2 } else { 1 };
    let mut out = Word::identity(rank);
    for _ in 0..factors {
        let s = sample_stallings(rank, k - 1, p, rng, cap);
        let factor = if rng.gen_bool(0.5) {
            let g = random_short_word(rank, rng, cap);
            commutator(&g, &s)
        } else {
            s.pow(p as i64)
        };
        out = out.mul(&maybe_conjugate(factor, rank, rng));
    }
    out
}

fn sample_zassenhaus(rank: usize, k: usize, p: u64, rng: &mut ChaCha8Rng, cap: usize) -> Word {
    if k <= 1 {
        return random_short_word(rank, rng, cap);
    }
    // A factor of the depth-k term is a p^j-th power of a depth-i
    // lower-central element with i·p^j ≥ k. Keep i small enough to sample.
    let mut admissible = Vec::new();
    let mut power = 1usize;
    loop {
        let i = k.div_ceil(power);
        if i <= SAMPLER_LCS_DEPTH_CAP {
            admissible.push((i, power));
        }
        if power >= k {
            break;
        }
        power *= p as usize;
    }
    let (i, power) = admissible[rng.gen_range(0..admissible.len())];
    let base = sample_lcs(rank, i, rng, cap);
    maybe_conjugate(base.pow(power as i64), rank, rng)
}

/// Direction of a cofinality check between the two mod-`p` series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CofinalityDirection {
    /// Stallings depth `l` sits inside Zassenhaus depth `l`.
    StallingsToZassenhaus,
    /// Zassenhaus depth `p^l` sits inside Stallings depth `l`.
    ZassenhausToStallings,
}

#[derive(Clone, Debug)]
pub struct CofinalityReport {
    pub direction: CofinalityDirection,
    pub depth: usize,
    pub p: u64,
    pub sampled: usize,
    pub counterexamples: Vec<Word>,
}

/// Samples one side of a cofinality inclusion and checks the other side's
/// oracle; the returned counterexample list must be empty.
pub fn cofinality_check(
    rank: usize,
    direction: CofinalityDirection,
    l: usize,
    p: u64,
    count: usize,
    seed: u64,
) -> Result<CofinalityReport, FiltrationError> {
    let mut counterexamples = Vec::new();
    match direction {
        CofinalityDirection::StallingsToZassenhaus => {
            for u in sample_series(rank, SeriesKind::Stallings(p), l, count, seed) {
                if !in_zassenhaus(&u, l, p)? {
                    counterexamples.push(u);
                }
            }
        }
        CofinalityDirection::ZassenhausToStallings => {
            if l > 3 {
                return Err(FiltrationError::StallingsDepthUnsupported(l));
            }
            let depth = (p as usize).pow(l as u32);
            for u in sample_series(rank, SeriesKind::Zassenhaus(p), depth, count, seed) {
                if in_stallings(&u, l, p)? != Verdict::True {
                    counterexamples.push(u);
                }
            }
        }
    }
    Ok(CofinalityReport { direction, depth: l, p, sampled: count, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Word;

    fn w(rank: usize, text: &str) -> Word {
        Word::parse(rank, text).unwrap()
    }

    #[test]
    fn p_th_power_series_signature() {
        // The three-way signature separating the series on x1^p.
        for p in [3u64, 5] {
            let wp = Word::generator(4, 1).pow(p as i64);
            assert!(!in_lcs(&wp, 2).unwrap());
            assert_eq!(in_stallings(&wp, 2, p).unwrap(), Verdict::True);
            assert_eq!(in_stallings(&wp, 3, p).unwrap(), Verdict::False);
            assert!(in_zassenhaus(&wp, p as usize, p).unwrap());
            assert!(!in_zassenhaus(&wp, p as usize + 1, p).unwrap());
        }
    }

    #[test]
    fn commutators_sit_at_depth_two() {
        let c = commutator(&w(4, "x1"), &w(4, "x2"));
        assert!(in_lcs(&c, 2).unwrap());
        assert!(!in_lcs(&c, 3).unwrap());
        assert!(in_zassenhaus(&c, 2, 3).unwrap());
        let deep = commutator(&w(4, "x1"), &c);
        assert!(in_lcs(&deep, 3).unwrap());
        assert_eq!(in_stallings(&deep, 3, 3).unwrap(), Verdict::True);
    }

    #[test]
    fn stallings_depth_beyond_three_is_unknown() {
        let c = commutator(&w(4, "x1"), &w(4, "x2"));
        assert_eq!(in_stallings(&c, 4, 3).unwrap(), Verdict::Unknown);
        assert_eq!(in_stallings(&c, 5, 3).unwrap(), Verdict::Unknown);
    }

    #[test]
    fn l2s_image_of_a_commutator_is_a_single_wedge() {
        let image = l2s_image(&commutator(&w(4, "x1"), &w(4, "x2")), 3).unwrap();
        assert_eq!(image.wedge_entry(1, 2), 1);
        assert_eq!(image.wedge_entry(2, 1), 2); // −1 mod 3
        assert!(image.linear().iter().all(|&c| c == 0));
        let mut expected = L2SImage::zero(4, 3);
        expected.wedge[wedge_pair_index(4, 1, 2)] = 1;
        assert_eq!(image, expected);
    }

    #[test]
    fn l2s_image_of_a_p_th_power_is_linear() {
        for p in [3u64, 5] {
            let image = l2s_image(&Word::generator(4, 1).pow(p as i64), p).unwrap();
            assert!(image.wedge().iter().all(|&c| c == 0));
            assert_eq!(image.linear(), &[1, 0, 0, 0]);
        }
    }

    #[test]
    fn l2s_image_requires_level_two() {
        assert_eq!(l2s_image(&w(4, "x1"), 3), Err(FiltrationError::NotInLevel2(3)));
        // x1^3 is fine at p = 3 but not at p = 5.
        let cube = Word::generator(4, 1).pow(3);
        assert!(l2s_image(&cube, 3).is_ok());
        assert_eq!(l2s_image(&cube, 5), Err(FiltrationError::NotInLevel2(5)));
    }

    #[test]
    fn l2s_image_is_additive_and_integer_coefficients_antisymmetrize() {
        let p = 3u64;
        let us = sample_series(4, SeriesKind::Stallings(p), 2, 12, 11);
        let vs = sample_series(4, SeriesKind::Stallings(p), 2, 12, 12);
        for (u, v) in us.iter().zip(&vs) {
            let iu = l2s_image(u, p).unwrap();
            let iv = l2s_image(v, p).unwrap();
            let iuv = l2s_image(&u.mul(v), p).unwrap();
            assert_eq!(iuv, iu.add(&iv), "additivity failed on {u} · {v}");

            // Well-definedness of the wedge part: on level-2 words the raw
            // degree-2 coefficient matrix is antisymmetric mod p.
            let s = crate::magnus::magnus_embed(u, 2, CoefficientRing::Integers).unwrap();
            for i in 1..=4usize {
                for j in 1..=4usize {
                    let cij = s.coefficient(&[i, j]).unwrap();
                    let cji = s.coefficient(&[j, i]).unwrap();
                    use num_traits::Zero;
                    assert!(
                        CoefficientRing::PrimeField(p).normalize(cij + cji).is_zero(),
                        "c_{i}{j} + c_{j}{i} not divisible by {p} on {u}"
                    );
                }
            }
        }
    }

    #[test]
    fn l2s_image_vanishes_on_depth_three_samples() {
        let p = 3u64;
        for u in sample_series(4, SeriesKind::Stallings(p), 3, 25, 21) {
            let image = l2s_image(&u, p).unwrap();
            assert!(image.is_zero(), "nonzero level-2 image on depth-3 sample {u}");
        }
    }

    #[test]
    fn samplers_pass_their_own_oracles() {
        for k in 1..=4 {
            for u in sample_series(4, SeriesKind::Lcs, k, 10, 31 + k as u64) {
                assert!(in_lcs(&u, k).unwrap(), "LCS sample {u} fails depth {k}");
            }
        }
        for k in 1..=3 {
            for u in sample_series(4, SeriesKind::Stallings(3), k, 10, 41 + k as u64) {
                assert_eq!(
                    in_stallings(&u, k, 3).unwrap(),
                    Verdict::True,
                    "Stallings sample {u} fails depth {k}"
                );
            }
        }
        for k in [2usize, 3, 4] {
            for u in sample_series(4, SeriesKind::Zassenhaus(3), k, 8, 51 + k as u64) {
                assert!(in_zassenhaus(&u, k, 3).unwrap(), "Zassenhaus sample {u} fails depth {k}");
            }
        }
    }

    #[test]
    fn lcs_depth_one_samples_are_nonempty() {
        for u in sample_series(4, SeriesKind::Lcs, 1, 20, 7) {
            assert!(!u.is_identity());
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_series(4, SeriesKind::Zassenhaus(3), 3, 10, 99);
        let b = sample_series(4, SeriesKind::Zassenhaus(3), 3, 10, 99);
        assert_eq!(a, b);
        let c = sample_series(4, SeriesKind::Zassenhaus(3), 3, 10, 100);
        assert_ne!(a, c);
    }

    #[test]
    fn nesting_between_consecutive_depths() {
        for u in sample_series(4, SeriesKind::Zassenhaus(3), 4, 10, 61) {
            assert!(in_zassenhaus(&u, 3, 3).unwrap());
            assert!(in_zassenhaus(&u, 2, 3).unwrap());
        }
    }

    #[test]
    fn bracket_and_power_properties() {
        let us = sample_series(4, SeriesKind::Zassenhaus(3), 2, 6, 71);
        let vs = sample_series(4, SeriesKind::Zassenhaus(3), 2, 6, 72);
        for (u, v) in us.iter().zip(&vs) {
            // [Γ_k^Z, Γ_l^Z] ≤ Γ_{k+l}^Z
            assert!(in_zassenhaus(&commutator(u, v), 4, 3).unwrap());
        }
        for u in sample_series(4, SeriesKind::Zassenhaus(3), 1, 6, 73) {
            // (Γ_k^Z)^p ≤ Γ_{pk}^Z at k = 1
            assert!(in_zassenhaus(&u.pow(3), 3, 3).unwrap());
        }
        // Stallings power drop: squares of the level into the next level.
        for u in sample_series(4, SeriesKind::Stallings(3), 2, 6, 74) {
            assert_eq!(in_stallings(&u.pow(3), 3, 3).unwrap(), Verdict::True);
        }
    }

    #[test]
    fn cofinality_reports_are_clean() {
        let r = cofinality_check(4, CofinalityDirection::StallingsToZassenhaus, 3, 3, 15, 81)
            .unwrap();
        assert!(r.counterexamples.is_empty());
        let r = cofinality_check(4, CofinalityDirection::ZassenhausToStallings, 2, 3, 10, 82)
            .unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(matches!(
            cofinality_check(4, CofinalityDirection::ZassenhausToStallings, 5, 3, 1, 83),
            Err(FiltrationError::StallingsDepthUnsupported(5)),
        ));
    }

    #[test]
    fn membership_reports_carry_witnesses() {
        let report = membership(&Word::generator(4, 1).pow(3), SeriesKind::Lcs, 4).unwrap();
        assert_eq!(report.verdict, Verdict::False);
        assert_eq!(report.witness_monomial, Some(vec![1]));
        assert_eq!(report.p, None);

        // x1³ reaches Zassenhaus depth 3 but not 4; the cube monomial
        // witnesses the failure.
        let report =
            membership(&Word::generator(4, 1).pow(3), SeriesKind::Zassenhaus(3), 4).unwrap();
        assert_eq!(report.verdict, Verdict::False);
        assert_eq!(report.witness_monomial, Some(vec![1, 1, 1]));
        let report =
            membership(&Word::generator(4, 1).pow(3), SeriesKind::Zassenhaus(3), 3).unwrap();
        assert_eq!(report.verdict, Verdict::True);

        let report = membership(&Word::generator(4, 1).pow(3), SeriesKind::Stallings(3), 3).unwrap();
        assert_eq!(report.verdict, Verdict::False);
        assert_eq!(report.witness_monomial, Some(vec![1]));

        let c = commutator(&w(4, "x1"), &w(4, "x2"));
        let report = membership(&c, SeriesKind::Stallings(3), 3).unwrap();
        assert_eq!(report.verdict, Verdict::False);
        assert_eq!(report.witness_monomial, Some(vec![1, 2]));

        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["series"], "Stallings");
        assert_eq!(json["verdict"], "false");
    }

    #[test]
    fn membership_depth_one_is_always_true() {
        for kind in [SeriesKind::Lcs, SeriesKind::Stallings(3), SeriesKind::Zassenhaus(3)] {
            let r = membership(&w(4, "x1 X2"), kind, 1).unwrap();
            assert_eq!(r.verdict, Verdict::True);
        }
    }
}
