//! Group rings `Z[F]` and `F_p[F]` over a free group, with the augmentation,
//! the bar involution, and Fox's free differential calculus.
//!
//! Elements are stored sparsely as maps from reduced words to nonzero
//! coefficients. Coefficients are arbitrary-precision integers; over
//! `PrimeField(p)` they are kept normalized in `0..p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::freegroup::Word;

/// Coefficient ring: the integers or the field with `p` elements (`p` an odd
/// prime). Serialized as `"Z"` or `"F<p>"`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(CoefficientRing, CoefficientRing),
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientRing {
    /// Validated constructor for `PrimeField`.
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if is_odd_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(RingError::NotAnOddPrime(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientRing::Integers => None,
            CoefficientRing::PrimeField(p) => Some(*p),
        }
    }

    /// Canonical representative of `c` in this ring (`0..p` for `F_p`).
    pub fn normalize(&self, c: BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => c,
            CoefficientRing::PrimeField(p) => {
                let m = BigInt::from(*p);
                let r = c % &m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl fmt::Display for GroupRingElement {
    /// Renders terms in word order, e.g. `1 - x1 + 2·(x1 x2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms().enumerate() {
            let (sign, magnitude) = if c.sign() == num_bigint::Sign::Minus {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let one = magnitude == BigInt::from(1);
            match (w.is_identity(), one) {
                (true, _) => write!(f, "{magnitude}")?,
                (false, true) => write!(f, "({w})")?,
                (false, false) => write!(f, "{magnitude}·({w})")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "Z" {
            return Ok(CoefficientRing::Integers);
        }
        if let Some(rest) = text.strip_prefix('F') {
            let p: u64 = rest.parse().map_err(D::Error::custom)?;
            return CoefficientRing::prime_field(p).map_err(D::Error::custom);
        }
        Err(D::Error::custom(format!("unknown ring tag `{text}`")))
    }
}

/// A multi-index `(i_1, ..., i_l)` of generator indices; by convention the
/// derivative `∂/∂x_{i_1}` is applied first (innermost), so the sequence reads
/// the operator `∂^l/∂x_{i_l}...∂x_{i_1}` right to left.
pub type MultiIndex = Vec<usize>;

/// A sparse group-ring element: finitely many reduced words with nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    rank: usize,
    ring: CoefficientRing,
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero(rank: usize, ring: CoefficientRing) -> Self {
        GroupRingElement { rank, ring, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, ring: CoefficientRing) -> Self {
        Self::from_word(Word::identity(rank), ring)
    }

    pub fn from_word(w: Word, ring: CoefficientRing) -> Self {
        let rank = w.rank();
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        GroupRingElement { rank, ring, terms }
    }

    pub fn from_terms(
        rank: usize,
        ring: CoefficientRing,
        terms: impl IntoIterator<Item = (Word, BigInt)>,
    ) -> Self {
        let mut e = Self::zero(rank, ring);
        for (w, c) in terms {
            e.add_term(&w, &c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, w: &Word, c: &BigInt) {
        debug_assert_eq!(w.rank(), self.rank);
        let entry = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *entry = self.ring.normalize(std::mem::take(entry) + c);
        if entry.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        let mut out = Self::zero(self.rank, self.ring);
        for (w, c) in &self.terms {
            out.add_term(w, &(-c));
        }
        out
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElement {
        let mut out = Self::zero(self.rank, self.ring);
        for (w, k) in &self.terms {
            out.add_term(w, &(c * k));
        }
        out
    }

    /// Ring product (convolution; words multiply by concatenation+reduction).
    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut out = Self::zero(self.rank, self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(&u.mul(v), &(a * b));
            }
        }
        out
    }

    /// Left-multiplication by a single word.
    pub fn mul_word_left(&self, w: &Word) -> GroupRingElement {
        let mut out = Self::zero(self.rank, self.ring);
        for (u, c) in &self.terms {
            out.add_term(&w.mul(u), c);
        }
        out
    }

    /// The augmentation `ε`: sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        let sum = self.terms.values().fold(BigInt::zero(), |acc, c| acc + c);
        self.ring.normalize(sum)
    }

    /// Augmentation followed by reduction mod `p`, as a field element.
    pub fn eval_mod(&self, p: u64) -> u64 {
        use num_traits::ToPrimitive;
        let m = BigInt::from(p);
        let r = self.augmentation() % &m;
        let r = if r.is_negative() { r + m } else { r };
        r.to_u64().expect("residue fits in u64")
    }

    /// The bar involution: each word is replaced by its inverse (an
    /// anti-automorphism of the ring).
    pub fn bar(&self) -> GroupRingElement {
        let mut out = Self::zero(self.rank, self.ring);
        for (w, c) in &self.terms {
            out.add_term(&w.inverse(), c);
        }
        out
    }

    /// Applies a word-level map (e.g. an automorphism) to every basis word.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> GroupRingElement {
        let mut out = Self::zero(self.rank, self.ring);
        for (w, c) in &self.terms {
            out.add_term(&f(w), c);
        }
        out
    }

    /// Reduces an integral element mod `p` (identity on `F_p` elements of the
    /// same modulus).
    pub fn reduced_mod(&self, p: u64) -> GroupRingElement {
        let ring = CoefficientRing::PrimeField(p);
        let mut out = Self::zero(self.rank, ring);
        for (w, c) in &self.terms {
            out.add_term(w, c);
        }
        out
    }

    /// Fox derivative extended linearly from words to ring elements.
    pub fn fox_derivative(&self, j: usize) -> GroupRingElement {
        assert!(j >= 1 && j <= self.rank, "generator index out of range");
        let mut out = Self::zero(self.rank, self.ring);
        for (w, c) in &self.terms {
            let dw = fox_derivative_in(w, j, self.ring);
            out = out.add(&dw.scale(c));
        }
        out
    }

    /// Iterated Fox derivative; `m[0]` is applied first (innermost).
    pub fn higher_fox_derivative(&self, m: &[usize]) -> GroupRingElement {
        let mut e = self.clone();
        for &j in m {
            e = e.fox_derivative(j);
        }
        e
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*({w})")?;
        }
        Ok(())
    }
}

/// Fox derivative `∂w/∂x_j` of a single word over the given ring.
///
/// Characterized by `∂x_i/∂x_j = δ_{ij}` together with the product rule
/// `∂(uv)/∂x_j = ε(v)·∂u/∂x_j + u·∂v/∂x_j`; on inverse letters it satisfies
/// `∂(u⁻¹)/∂x = −u⁻¹·∂u/∂x`.
pub fn fox_derivative_in(w: &Word, j: usize, ring: CoefficientRing) -> GroupRingElement {
    let rank = w.rank();
    assert!(j >= 1 && j <= rank, "generator index out of range");
    let mut out = GroupRingElement::zero(rank, ring);
    let mut prefix = Word::identity(rank);
    for &l in w.letters() {
        let letter_word = Word::from_letters(rank, [l]).expect("valid letter");
        if l.unsigned_abs() as usize == j {
            if l > 0 {
                // ∂x_j/∂x_j = 1, carried by the prefix.
                out.add_term(&prefix, &BigInt::one());
            } else {
                // ∂x_j⁻¹/∂x_j = −x_j⁻¹, carried by the prefix.
                out.add_term(&prefix.mul(&letter_word), &BigInt::from(-1));
            }
        }
        prefix = prefix.mul(&letter_word);
    }
    out
}

/// Fox derivative of a word over the integers.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    fox_derivative_in(w, j, CoefficientRing::Integers)
}

/// JSON shape for group-ring elements: `{rank, ring, terms: [{word, coeff}]}`
/// with coefficients as decimal strings.
#[derive(Serialize, Deserialize)]
pub struct GroupRingJson {
    pub rank: usize,
    pub ring: CoefficientRing,
    pub terms: Vec<GroupRingTermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct GroupRingTermJson {
    pub word: String,
    pub coeff: String,
}

impl GroupRingElement {
    pub fn to_json(&self) -> GroupRingJson {
        GroupRingJson {
            rank: self.rank,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| GroupRingTermJson { word: w.to_string(), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(json: &GroupRingJson) -> Result<Self, String> {
        let mut e = Self::zero(json.rank, json.ring);
        for t in &json.terms {
            let w = Word::parse(json.rank, &t.word).map_err(|err| err.to_string())?;
            let c: BigInt = t.coeff.parse().map_err(|_| format!("bad coefficient `{}`", t.coeff))?;
            e.add_term(&w, &c);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::commutator;
    use proptest::prelude::*;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn gen(rank: usize, i: usize) -> Word {
        Word::generator(rank, i)
    }

    #[test]
    fn prime_field_validation() {
        assert!(CoefficientRing::prime_field(3).is_ok());
        assert!(CoefficientRing::prime_field(5).is_ok());
        assert_eq!(CoefficientRing::prime_field(2), Err(RingError::NotAnOddPrime(2)));
        assert_eq!(CoefficientRing::prime_field(9), Err(RingError::NotAnOddPrime(9)));
        assert_eq!(CoefficientRing::prime_field(1), Err(RingError::NotAnOddPrime(1)));
    }

    #[test]
    fn augmentation_sums_coefficients() {
        let e = GroupRingElement::from_word(gen(2, 1), Z)
            .scale(&BigInt::from(2))
            .add(&GroupRingElement::from_word(gen(2, 2), Z).scale(&BigInt::from(-3)));
        assert_eq!(e.augmentation(), BigInt::from(-1));
        assert_eq!(GroupRingElement::zero(2, Z).augmentation(), BigInt::zero());
        assert_eq!(GroupRingElement::from_word(gen(2, 1), Z).augmentation(), BigInt::one());
    }

    #[test]
    fn bar_examples() {
        let e = GroupRingElement::from_word(gen(2, 1), Z)
            .add(&GroupRingElement::from_word(gen(2, 2), Z).scale(&BigInt::from(2)));
        let b = e.bar();
        assert_eq!(b.coefficient(&gen(2, 1).inverse()), BigInt::one());
        assert_eq!(b.coefficient(&gen(2, 2).inverse()), BigInt::from(2));
        assert_eq!(b.bar(), e);
        let one = GroupRingElement::one(2, Z);
        assert_eq!(one.bar(), one);
    }

    #[test]
    fn fox_derivative_on_generators() {
        for i in 1..=4 {
            for j in 1..=4 {
                let d = fox_derivative(&gen(4, i), j);
                if i == j {
                    assert_eq!(d, GroupRingElement::one(4, Z));
                } else {
                    assert!(d.is_zero());
                }
            }
        }
    }

    #[test]
    fn fox_derivative_product_and_inverse_examples() {
        // ∂(x1·x2)/∂x2 = x1
        let w = gen(2, 1).mul(&gen(2, 2));
        assert_eq!(fox_derivative(&w, 2), GroupRingElement::from_word(gen(2, 1), Z));
        // ∂(x1⁻¹)/∂x1 = −x1⁻¹
        let d = fox_derivative(&gen(2, 1).inverse(), 1);
        assert_eq!(d, GroupRingElement::from_word(gen(2, 1).inverse(), Z).neg());
    }

    #[test]
    fn fox_derivative_of_p_th_power_vanishes_mod_p() {
        for p in [3u64, 5] {
            let w = gen(2, 1).pow(p as i64);
            let d = fox_derivative(&w, 1);
            // 1 + x1 + ... + x1^{p-1}: augmentation p ≡ 0 mod p.
            assert_eq!(d.augmentation(), BigInt::from(p));
            assert_eq!(d.eval_mod(p), 0);
        }
    }

    #[test]
    fn higher_derivative_of_generator_is_trivial() {
        let e = GroupRingElement::from_word(gen(2, 1), Z);
        assert!(e.higher_fox_derivative(&[1, 1]).is_zero());
        assert!(e.higher_fox_derivative(&[2, 1]).is_zero());
        assert_eq!(e.higher_fox_derivative(&[1]), GroupRingElement::one(2, Z));
    }

    fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        let r = rank as i32;
        prop::collection::vec((1..=r).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]), 0..=max_len)
            .prop_map(move |ls| Word::from_letters(rank, ls).unwrap())
    }

    /// Right-hand side of the higher-order product rule, computed by the
    /// closed formula: D_M(uv) = Σ_n D_{(m_{n+1}..m_l)}(u)·ε(D_{(m_1..m_n)}(v))
    /// + u·D_M(v).
    fn product_rule_rhs(u: &Word, v: &Word, m: &[usize]) -> GroupRingElement {
        let l = m.len();
        let eu = GroupRingElement::from_word(u.clone(), Z);
        let ev = GroupRingElement::from_word(v.clone(), Z);
        let mut rhs = ev.higher_fox_derivative(m).mul_word_left(u);
        for n in 0..l {
            let du = eu.higher_fox_derivative(&m[n..]);
            let scalar = ev.higher_fox_derivative(&m[..n]).augmentation();
            rhs = rhs.add(&du.scale(&scalar));
        }
        rhs
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn first_order_product_rule(u in word_strategy(4, 8), v in word_strategy(4, 8), j in 1usize..=4) {
            let uv = u.mul(&v);
            let lhs = fox_derivative(&uv, j);
            // ε(v) = 1 for a group element.
            let rhs = fox_derivative(&u, j).add(&fox_derivative(&v, j).mul_word_left(&u));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fundamental_formula_reconstructs_the_word(w in word_strategy(4, 10)) {
            // w = ε(w)·1 + Σ_i (∂w/∂x_i)·(x_i − 1)
            let mut rhs = GroupRingElement::one(4, Z);
            for i in 1..=4 {
                let xi = GroupRingElement::from_word(gen(4, i), Z);
                let xm1 = xi.sub(&GroupRingElement::one(4, Z));
                rhs = rhs.add(&fox_derivative(&w, i).mul(&xm1));
            }
            prop_assert_eq!(rhs, GroupRingElement::from_word(w, Z));
        }

        #[test]
        fn higher_order_product_rule(
            u in word_strategy(4, 6),
            v in word_strategy(4, 6),
            m in prop::collection::vec(1usize..=4, 1..=3),
        ) {
            let uv = GroupRingElement::from_word(u.mul(&v), Z);
            let lhs = uv.higher_fox_derivative(&m);
            prop_assert_eq!(lhs, product_rule_rhs(&u, &v, &m));
        }

        #[test]
        fn bar_is_an_anti_automorphism(u in word_strategy(4, 6), v in word_strategy(4, 6)) {
            let eu = GroupRingElement::from_word(u, Z);
            let ev = GroupRingElement::from_word(v, Z);
            prop_assert_eq!(eu.mul(&ev).bar(), ev.bar().mul(&eu.bar()));
        }

        #[test]
        fn inverse_rule(u in word_strategy(4, 8), j in 1usize..=4) {
            // ∂(u⁻¹)/∂x = −u⁻¹·∂u/∂x
            let lhs = fox_derivative(&u.inverse(), j);
            let rhs = fox_derivative(&u, j).mul_word_left(&u.inverse()).neg();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commutator_derivative_augmentation_vanishes(
            u in word_strategy(4, 6),
            v in word_strategy(4, 6),
            j in 1usize..=4,
        ) {
            // Commutators lie in the augmentation ideal squared.
            let c = commutator(&u, &v);
            prop_assert_eq!(fox_derivative(&c, j).augmentation(), BigInt::zero());
        }
    }
}
