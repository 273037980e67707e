//! Freely reduced words in a free group of even rank `2g`.
//!
//! Generators are written `x1, ..., x<2g>` and pair into handles: the classes
//! of `x_{2i-1}` and `x_{2i}` are the symplectic pair `(a_i, b_i)` of the
//! `i`-th handle. The boundary of the once-holed surface is the product of
//! commutators `[x1,x2][x3,x4]...`, which every mapping class must fix.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A letter is a nonzero integer: `i` means the generator `x_i`, `-i` its
/// inverse. Indices are 1-based and bounded by the ambient rank.
pub type Letter = i32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("empty token at position {0}")]
    EmptyToken(usize),
    #[error("malformed token `{0}`: expected x<i> or X<i>")]
    BadToken(String),
    #[error("generator index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("letter 0 is not a generator")]
    ZeroLetter,
}

/// A freely reduced word together with the rank of its ambient free group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word in rank `rank`.
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `x_i` (1-based).
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator index out of range");
        Word { rank, letters: vec![i as Letter] }
    }

    /// Builds a word from raw letters, validating indices and reducing.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self, WordError> {
        let mut out = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(WordError::ZeroLetter);
            }
            if l.unsigned_abs() as usize > rank {
                return Err(WordError::IndexOutOfRange(l.unsigned_abs() as usize, rank));
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Letters of the reduced word, in order.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Reduced word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product `self * other`, freely reduced.
    pub fn mul(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "rank mismatch in word product");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { rank: self.rank, letters }
    }

    /// The inverse word.
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Integer power, with negative exponents via the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `by * self * by^{-1}`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    /// The first letter's generator index and sign, if nonempty.
    pub fn first_letter(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Exponent vector in `Z^rank`: the image in the abelianization.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            v[i] += if l > 0 { 1 } else { -1 };
        }
        v
    }

    /// Cyclically reduced form (conjugacy-class representative).
    pub fn cyclically_reduce(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && letters[0] == -letters[letters.len() - 1] {
            letters.remove(0);
            letters.pop();
        }
        Word { rank: self.rank, letters }
    }

    /// Parses whitespace-separated tokens `x<i>` (generator) / `X<i>`
    /// (inverse); the empty string or `e` denotes the identity.
    pub fn parse(rank: usize, text: &str) -> Result<Self, WordError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(Word::identity(rank));
        }
        let mut letters = Vec::new();
        for (pos, tok) in trimmed.split_whitespace().enumerate() {
            let mut chars = tok.chars();
            let head = chars.next().ok_or(WordError::EmptyToken(pos))?;
            let sign = match head {
                'x' => 1,
                'X' => -1,
                _ => return Err(WordError::BadToken(tok.to_string())),
            };
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| WordError::BadToken(tok.to_string()))?;
            if idx < 1 || idx > rank {
                return Err(WordError::IndexOutOfRange(idx, rank));
            }
            letters.push(sign * idx as Letter);
        }
        Word::from_letters(rank, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "X{}", -l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&-l) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// `[u, v] = u v u^{-1} v^{-1}`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.mul(v).mul(&u.inverse()).mul(&v.inverse())
}

/// Boundary word of the once-holed genus-`g` surface:
/// `[x1,x2][x3,x4]...[x_{2g-1},x_{2g}]`.
pub fn boundary_word(genus: usize) -> Word {
    partial_boundary_word(genus, genus)
}

/// Product of the first `h` handle commutators inside rank `2g`; for `h = g`
/// this is the full boundary word. It is the separating curve cutting off the
/// first `h` handles.
pub fn partial_boundary_word(genus: usize, h: usize) -> Word {
    assert!(h <= genus);
    let rank = 2 * genus;
    let mut w = Word::identity(rank);
    for i in 0..h {
        let a = Word::generator(rank, 2 * i + 1);
        let b = Word::generator(rank, 2 * i + 2);
        w = w.mul(&commutator(&a, &b));
    }
    w
}

/// A uniformly random freely reduced word of exactly `len` letters (shorter
/// only when `rank == 0`).
pub fn random_reduced_word<R: rand::Rng>(rank: usize, len: usize, rng: &mut R) -> Word {
    assert!(rank > 0);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let idx = rng.gen_range(1..=rank) as Letter;
        let l = if rng.gen_bool(0.5) { idx } else { -idx };
        if letters.last() == Some(&-l) {
            continue;
        }
        letters.push(l);
    }
    Word { rank, letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_round_trip() {
        let w = Word::parse(4, "x1 x3 X2").unwrap();
        assert_eq!(w.letters(), &[1, 3, -2]);
        assert_eq!(w.to_string(), "x1 x3 X2");
        assert_eq!(Word::parse(4, "").unwrap(), Word::identity(4));
        assert_eq!(Word::parse(4, "e").unwrap(), Word::identity(4));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(Word::parse(4, "y1"), Err(WordError::BadToken(_))));
        assert!(matches!(Word::parse(4, "x5"), Err(WordError::IndexOutOfRange(5, 4))));
        assert!(matches!(Word::parse(4, "x0"), Err(WordError::IndexOutOfRange(0, 4))));
        assert!(matches!(Word::parse(2, "x"), Err(WordError::BadToken(_))));
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w = Word::from_letters(2, [1, 2, -2, -1, 1]).unwrap();
        assert_eq!(w.letters(), &[1]);
        let u = Word::from_letters(2, [1, -1]).unwrap();
        assert!(u.is_identity());
    }

    #[test]
    fn boundary_word_genus_one() {
        assert_eq!(boundary_word(1).to_string(), "x1 x2 X1 X2");
    }

    #[test]
    fn boundary_word_genus_two_length() {
        let w = boundary_word(2);
        assert_eq!(w.len(), 8);
        assert_eq!(w.exponent_vector(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn commutator_of_exponent_vectors_vanishes() {
        let u = Word::parse(4, "x1 x2 x3").unwrap();
        let v = Word::parse(4, "X4 x2").unwrap();
        assert_eq!(commutator(&u, &v).exponent_vector(), vec![0; 4]);
    }

    #[test]
    fn pow_and_conjugate() {
        let x = Word::generator(2, 1);
        assert_eq!(x.pow(3).len(), 3);
        assert_eq!(x.pow(-2), x.inverse().mul(&x.inverse()));
        let y = Word::generator(2, 2);
        assert_eq!(x.conjugate(&y).to_string(), "x2 x1 X2");
    }

    fn letter_strategy(rank: usize) -> impl Strategy<Value = Letter> {
        let r = rank as i32;
        (1..=r).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)])
    }

    fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(letter_strategy(rank), 0..=max_len)
            .prop_map(move |ls| Word::from_letters(rank, ls).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in word_strategy(4, 16)) {
            let again = Word::from_letters(4, w.letters().to_vec()).unwrap();
            prop_assert_eq!(again, w);
        }

        #[test]
        fn product_associates(
            u in word_strategy(4, 10),
            v in word_strategy(4, 10),
            w in word_strategy(4, 10),
        ) {
            prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        }

        #[test]
        fn inverse_law(u in word_strategy(4, 12)) {
            prop_assert!(u.mul(&u.inverse()).is_identity());
            prop_assert!(u.inverse().mul(&u).is_identity());
        }

        #[test]
        fn exponent_vector_is_a_homomorphism(
            u in word_strategy(4, 12),
            v in word_strategy(4, 12),
        ) {
            let uv = u.mul(&v);
            let sum: Vec<i64> = u
                .exponent_vector()
                .iter()
                .zip(v.exponent_vector())
                .map(|(a, b)| a + b)
                .collect();
            prop_assert_eq!(uv.exponent_vector(), sum);
        }

        #[test]
        fn random_words_are_reduced(seed in any::<u64>(), len in 0usize..20) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let w = random_reduced_word(4, len, &mut rng);
            prop_assert_eq!(w.len(), len);
            let rereduced = Word::from_letters(4, w.letters().to_vec()).unwrap();
            prop_assert_eq!(rereduced.len(), len);
        }
    }
}
