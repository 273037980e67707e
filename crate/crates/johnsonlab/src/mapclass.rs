//! Mapping classes of a once-holed genus-`g` surface, realized as explicit
//! automorphisms of the free group on `x_1..x_{2g}` that fix the boundary
//! word exactly.
//!
//! The catalog supplies twists about the standard curves as static word data:
//! `Ta<i>`/`Tb<i>` twist about the handle curves, `Tc<i>` about the chain
//! curve joining handles `i` and `i+1`, `Td<i><j>`/`Te<i><j>` about curves of
//! class `a_i + a_j` and `b_i − b_j` (built by conjugation), `sep<h>` about
//! the separating curve cutting off the first `h` handles, `bp<i><j>` are
//! bounding-pair maps from the three-chain relation, and `rot<i>` is the
//! quarter-turn `Ta·Tb·Ta` of one handle. Every constructor validates three
//! invariants before returning: the stored inverse really inverts it, the
//! boundary word is fixed letter-for-letter, and the homology action is the
//! expected transvection.
//!
//! Composition is written left to right: `compose(f, g)` applies `f` first.
//! On homology (column-vector convention) this means
//! `matrix(compose(f,g)) = matrix(g)·matrix(f)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{boundary_word, partial_boundary_word, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapClassError {
    #[error("rank mismatch: {0} vs {1}")]
    Incompatible(usize, usize),
    #[error("rank {0} is odd; surface groups have rank 2g")]
    OddRank(usize),
    #[error("images and inverse images do not invert each other on x{generator}: got {got}")]
    NotAnAutomorphism { generator: usize, got: Word },
    #[error("boundary word moves to {0}")]
    BoundaryMoved(Word),
    #[error("homology action is not the expected transvection (column {0})")]
    WrongHomologyAction(usize),
    #[error("index {0} out of range for genus {1}")]
    IndexOutOfRange(usize, usize),
    #[error("unknown catalog name `{0}`")]
    UnknownCatalogEntry(String),
    #[error("bad mapping-class expression: {0}")]
    BadExpression(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An automorphism of the rank-`2g` free group with its inverse stored, since
/// free-group inversion is expensive but every catalog map has a known
/// inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
    label: String,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
        FreeAutomorphism {
            rank,
            images: images.clone(),
            inverse_images: images,
            label: "identity".to_string(),
        }
    }

    /// Validated constructor: checks both composition orders on every
    /// generator and the boundary-word invariant.
    pub fn new(
        images: Vec<Word>,
        inverse_images: Vec<Word>,
        label: impl Into<String>,
    ) -> Result<Self, MapClassError> {
        let rank = images.len();
        if rank % 2 != 0 || rank == 0 {
            return Err(MapClassError::OddRank(rank));
        }
        if inverse_images.len() != rank {
            return Err(MapClassError::Incompatible(rank, inverse_images.len()));
        }
        for w in images.iter().chain(&inverse_images) {
            if w.rank() != rank {
                return Err(MapClassError::Incompatible(rank, w.rank()));
            }
        }
        let f = FreeAutomorphism { rank, images, inverse_images, label: label.into() };
        f.validate()?;
        Ok(f)
    }

    /// Re-checks the automorphism and boundary invariants (used on untrusted
    /// JSON input).
    pub fn validate(&self) -> Result<(), MapClassError> {
        for i in 1..=self.rank {
            let x = Word::generator(self.rank, i);
            let round = self.apply(&self.inverse_images[i - 1]);
            if round != x {
                return Err(MapClassError::NotAnAutomorphism { generator: i, got: round });
            }
            let round = self.apply_inverse(&self.images[i - 1]);
            if round != x {
                return Err(MapClassError::NotAnAutomorphism { generator: i, got: round });
            }
        }
        let boundary = boundary_word(self.genus());
        let image = self.apply(&boundary);
        if image != boundary {
            return Err(MapClassError::BoundaryMoved(image));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn genus(&self) -> usize {
        self.rank / 2
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    /// Applies the automorphism by substituting generator images.
    pub fn apply(&self, u: &Word) -> Word {
        substitute(self.rank, &self.images, u)
    }

    pub fn apply_inverse(&self, u: &Word) -> Word {
        substitute(self.rank, &self.inverse_images, u)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism, MapClassError> {
        if self.rank != other.rank {
            return Err(MapClassError::Incompatible(self.rank, other.rank));
        }
        Ok(FreeAutomorphism {
            rank: self.rank,
            images: self.images.iter().map(|w| other.apply(w)).collect(),
            inverse_images: other
                .inverse_images
                .iter()
                .map(|w| self.apply_inverse(w))
                .collect(),
            label: format!("{}*{}", self.label, other.label),
        })
    }

    pub fn invert(&self) -> FreeAutomorphism {
        FreeAutomorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            label: format!("({})^-1", self.label),
        }
    }

    pub fn pow(&self, n: i64) -> FreeAutomorphism {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = FreeAutomorphism::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base).expect("same rank");
        }
        out.label = format!("{}^{}", self.label, n);
        out
    }

    /// `x ↦ f(self(f⁻¹(x)))`: the conjugate of `self` by `f`. For a twist
    /// about a curve `γ` this is the twist about `f(γ)`.
    pub fn conjugated_by(&self, f: &FreeAutomorphism) -> Result<FreeAutomorphism, MapClassError> {
        let out = f.invert().compose(self)?.compose(f)?;
        Ok(out.with_label(format!("{}@{}", self.label, f.label)))
    }

    /// The homology action in the block basis `(a_1..a_g, b_1..b_g)`: column
    /// `c` is the exponent vector of the image of the generator at block
    /// position `c`, permuted from the interleaved word basis.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for j in 1..=n {
            let col = block_position(n, j);
            let ev = self.images[j - 1].exponent_vector();
            for (t, &e) in ev.iter().enumerate() {
                m[block_position(n, t + 1)][col] = e;
            }
        }
        m
    }

    /// True when the homology action is the identity (Torelli membership).
    pub fn is_homologically_trivial(&self) -> bool {
        self.homology_matrix() == identity_matrix(self.rank)
    }

    pub fn to_json(&self) -> MapClassJson {
        MapClassJson {
            rank: self.rank,
            images: self.images.iter().map(|w| w.to_string()).collect(),
            inverse_images: self.inverse_images.iter().map(|w| w.to_string()).collect(),
            label: self.label.clone(),
        }
    }

    /// Parses and fully validates an untrusted JSON mapping class.
    pub fn from_json(json: &MapClassJson) -> Result<Self, MapClassError> {
        let parse = |texts: &[String]| -> Result<Vec<Word>, MapClassError> {
            texts
                .iter()
                .map(|t| Word::parse(json.rank, t).map_err(MapClassError::from))
                .collect()
        };
        FreeAutomorphism::new(parse(&json.images)?, parse(&json.inverse_images)?, &json.label)
    }
}

/// JSON shape: `{rank, images, inverse_images, label}` with words in text
/// format.
#[derive(Serialize, Deserialize)]
pub struct MapClassJson {
    pub rank: usize,
    pub images: Vec<String>,
    pub inverse_images: Vec<String>,
    pub label: String,
}

fn substitute(rank: usize, images: &[Word], u: &Word) -> Word {
    let mut out = Word::identity(rank);
    for &l in u.letters() {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            out = out.mul(img);
        } else {
            out = out.mul(&img.inverse());
        }
    }
    out
}

/// Block position (0-based) of generator `x_t` in the `(a_1..a_g, b_1..b_g)`
/// ordering: odd generators are the `a` classes, even the `b` classes.
pub fn block_position(rank: usize, t: usize) -> usize {
    debug_assert!(t >= 1 && t <= rank);
    let g = rank / 2;
    if t % 2 == 1 {
        (t - 1) / 2
    } else {
        g + t / 2 - 1
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// `Id + k·y·(yᵀΩ)` in the block basis: the `k`-th power of the twist about
/// a curve of class `y` acts on homology this way.
pub fn transvection_matrix(rank: usize, class: &[i64], k: i64) -> Vec<Vec<i64>> {
    let g = rank / 2;
    assert_eq!(class.len(), rank);
    // (yᵀΩ)[c] = y[c−g] for c ≥ g, −y[c+g] for c < g, with Ω = [[0,I],[−I,0]].
    let mut cov = vec![0i64; rank];
    for c in 0..rank {
        cov[c] = if c >= g { class[c - g] } else { -class[c + g] };
    }
    let mut m = identity_matrix(rank);
    for r in 0..rank {
        for c in 0..rank {
            m[r][c] += k * class[r] * cov[c];
        }
    }
    m
}

/// Congruence depth of the homology action: 2 if `Ψ(f) ≡ Id mod p²`, else 1
/// if `≡ Id mod p`, else 0.
pub fn congruence_level(f: &FreeAutomorphism, p: u64) -> u8 {
    let m = f.homology_matrix();
    let id = identity_matrix(f.rank());
    let level = |q: i64| -> bool {
        m.iter()
            .zip(&id)
            .all(|(mr, ir)| mr.iter().zip(ir).all(|(a, b)| (a - b).rem_euclid(q) == 0))
    };
    let p = p as i64;
    if level(p * p) {
        2
    } else if level(p) {
        1
    } else {
        0
    }
}

fn check_index(i: usize, genus: usize) -> Result<(), MapClassError> {
    if i >= 1 && i <= genus {
        Ok(())
    } else {
        Err(MapClassError::IndexOutOfRange(i, genus))
    }
}

fn expect_transvection(
    f: &FreeAutomorphism,
    class: &[i64],
    k: i64,
) -> Result<(), MapClassError> {
    let expected = transvection_matrix(f.rank(), class, k);
    let got = f.homology_matrix();
    for c in 0..f.rank() {
        for r in 0..f.rank() {
            if got[r][c] != expected[r][c] {
                return Err(MapClassError::WrongHomologyAction(c));
            }
        }
    }
    Ok(())
}

fn class_a(rank: usize, i: usize) -> Vec<i64> {
    let mut y = vec![0i64; rank];
    y[block_position(rank, 2 * i - 1)] = 1;
    y
}

fn class_b(rank: usize, i: usize) -> Vec<i64> {
    let mut y = vec![0i64; rank];
    y[block_position(rank, 2 * i)] = 1;
    y
}

fn add_classes(u: &[i64], v: &[i64], sign: i64) -> Vec<i64> {
    u.iter().zip(v).map(|(a, b)| a + sign * b).collect()
}

/// Right-handed twist about the `a_i` handle curve: `b ↦ b·a`, all else
/// fixed.
pub fn twist_a(genus: usize, i: usize) -> Result<FreeAutomorphism, MapClassError> {
    check_index(i, genus)?;
    let rank = 2 * genus;
    let (a, b) = (2 * i - 1, 2 * i);
    let mut images = FreeAutomorphism::identity(rank).images.clone();
    let mut inverses = images.clone();
    images[b - 1] = Word::generator(rank, b).mul(&Word::generator(rank, a));
    inverses[b - 1] = Word::generator(rank, b).mul(&Word::generator(rank, a).inverse());
    let f = FreeAutomorphism::new(images, inverses, format!("Ta{i}"))?;
    expect_transvection(&f, &class_a(rank, i), 1)?;
    Ok(f)
}

/// Right-handed twist about the `b_i` handle curve: `a ↦ a·b⁻¹`.
pub fn twist_b(genus: usize, i: usize) -> Result<FreeAutomorphism, MapClassError> {
    check_index(i, genus)?;
    let rank = 2 * genus;
    let (a, b) = (2 * i - 1, 2 * i);
    let mut images = FreeAutomorphism::identity(rank).images.clone();
    let mut inverses = images.clone();
    images[a - 1] = Word::generator(rank, a).mul(&Word::generator(rank, b).inverse());
    inverses[a - 1] = Word::generator(rank, a).mul(&Word::generator(rank, b));
    let f = FreeAutomorphism::new(images, inverses, format!("Tb{i}"))?;
    expect_transvection(&f, &class_b(rank, i), 1)?;
    Ok(f)
}

/// Twist about the chain curve running through handles `i` and `i+1` (class
/// `a_i + a_{i+1}`). The image words come from tracking the four affected
/// generators through the twist in the disk-with-bands picture.
pub fn chain_twist(genus: usize, i: usize) -> Result<FreeAutomorphism, MapClassError> {
    check_index(i, genus)?;
    check_index(i + 1, genus)?;
    let rank = 2 * genus;
    let parse = |text: &str| -> Word {
        let replaced = text
            .replace('a', &format!("x{} ", 2 * i - 1))
            .replace('A', &format!("X{} ", 2 * i - 1))
            .replace('b', &format!("x{} ", 2 * i))
            .replace('B', &format!("X{} ", 2 * i))
            .replace('c', &format!("x{} ", 2 * i + 1))
            .replace('C', &format!("X{} ", 2 * i + 1))
            .replace('d', &format!("x{} ", 2 * i + 2))
            .replace('D', &format!("X{} ", 2 * i + 2));
        Word::parse(rank, &replaced).expect("valid chain twist data")
    };
    let mut images = FreeAutomorphism::identity(rank).images.clone();
    let mut inverses = images.clone();
    images[2 * i - 2] = parse("Cac");
    images[2 * i - 1] = parse("CAcabac");
    images[2 * i] = parse("CAcac");
    images[2 * i + 1] = parse("dac");
    inverses[2 * i - 2] = parse("acaCA");
    inverses[2 * i - 1] = parse("acACbCA");
    inverses[2 * i] = parse("acA");
    inverses[2 * i + 1] = parse("dCA");
    let f = FreeAutomorphism::new(images, inverses, format!("Tc{i}"))?;
    let class = add_classes(&class_a(rank, i), &class_a(rank, i + 1), 1);
    expect_transvection(&f, &class, 1)?;
    Ok(f)
}

/// The quarter-turn of handle `i`: `Ta·Tb·Ta`, sending the classes
/// `a_i ↦ −b_i, b_i ↦ a_i`.
pub fn rotation(genus: usize, i: usize) -> Result<FreeAutomorphism, MapClassError> {
    let ta = twist_a(genus, i)?;
    let tb = twist_b(genus, i)?;
    Ok(ta.compose(&tb)?.compose(&ta)?.with_label(format!("rot{i}")))
}

/// The composite "apply `second`, then `first`", which carries the curve of
/// `first` to the curve of `second` when they intersect once.
fn curve_swap(
    first: &FreeAutomorphism,
    second: &FreeAutomorphism,
) -> Result<FreeAutomorphism, MapClassError> {
    second.compose(first)
}

/// Moves the class `a_k` to `a_{k+1}` (fixing `a_l` for `l ∉ {k, k+1}`) by a
/// chain of four curve swaps along `a_k, b_k, γ_k, b_{k+1}, a_{k+1}`.
fn shift_a_class(genus: usize, k: usize) -> Result<FreeAutomorphism, MapClassError> {
    let ta = twist_a(genus, k)?;
    let tb = twist_b(genus, k)?;
    let tc = chain_twist(genus, k)?;
    let tb2 = twist_b(genus, k + 1)?;
    let ta2 = twist_a(genus, k + 1)?;
    let s1 = curve_swap(&ta, &tb)?;
    let s2 = curve_swap(&tb, &tc)?;
    let s3 = curve_swap(&tc, &tb2)?;
    let s4 = curve_swap(&tb2, &ta2)?;
    Ok(s1
        .compose(&s2)?
        .compose(&s3)?
        .compose(&s4)?
        .with_label(format!("shift{k}")))
}

/// Twist about a curve of class `a_i + a_j` (`i < j`): the chain curve for
/// adjacent handles, and its conjugate under class shifts otherwise.
pub fn twist_d(genus: usize, i: usize, j: usize) -> Result<FreeAutomorphism, MapClassError> {
    check_index(i, genus)?;
    check_index(j, genus)?;
    if i >= j {
        return Err(MapClassError::IndexOutOfRange(j, genus));
    }
    let mut f = chain_twist(genus, i)?;
    for k in (i + 1)..j {
        f = f.conjugated_by(&shift_a_class(genus, k)?)?;
    }
    let f = f.with_label(format!("Td{i}{j}"));
    let rank = 2 * genus;
    let class = add_classes(&class_a(rank, i), &class_a(rank, j), 1);
    expect_transvection(&f, &class, 1)?;
    Ok(f)
}

/// Twist about a curve of class `b_i − b_j` (`i < j`), obtained from
/// [`twist_d`] by quarter-turning handles `i` and `j` in opposite senses.
pub fn twist_e(genus: usize, i: usize, j: usize) -> Result<FreeAutomorphism, MapClassError> {
    let rot = rotation(genus, i)?.compose(&rotation(genus, j)?.invert())?;
    let f = twist_d(genus, i, j)?.conjugated_by(&rot)?.with_label(format!("Te{i}{j}"));
    let rank = 2 * genus;
    let class = add_classes(&class_b(rank, i), &class_b(rank, j), -1);
    expect_transvection(&f, &class, 1)?;
    Ok(f)
}

/// Twist about the separating curve cutting off the first `h` handles:
/// conjugation by the inverse of `∏_{i≤h}[x_{2i−1}, x_{2i}]` on those
/// handles' generators. The inverse makes the handedness match the handle
/// twists: `(Ta1·Tb1)^6 = sep1` holds on the nose (see the tests).
pub fn twist_separating(genus: usize, h: usize) -> Result<FreeAutomorphism, MapClassError> {
    if h < 1 || h >= genus {
        return Err(MapClassError::IndexOutOfRange(h, genus.saturating_sub(1)));
    }
    let rank = 2 * genus;
    let c = partial_boundary_word(genus, h).inverse();
    let mut images = FreeAutomorphism::identity(rank).images.clone();
    let mut inverses = images.clone();
    for t in 1..=2 * h {
        images[t - 1] = Word::generator(rank, t).conjugate(&c);
        inverses[t - 1] = Word::generator(rank, t).conjugate(&c.inverse());
    }
    let f = FreeAutomorphism::new(images, inverses, format!("sep{h}"))?;
    if !f.is_homologically_trivial() {
        return Err(MapClassError::WrongHomologyAction(0));
    }
    Ok(f)
}

/// A bounding-pair map supported on handles `i < j`: by the three-chain
/// relation, `(Ta_i·Tb_i·Td_ij)^4` is the product of the twists about the two
/// boundary curves of the chain's neighborhood, and the far boundary curve is
/// the standard `a_j` curve; dividing by its twist squared leaves the twist
/// about one boundary curve times the inverse twist about the other — a pair
/// of disjoint homologous nonseparating curves.
pub fn bounding_pair(genus: usize, i: usize, j: usize) -> Result<FreeAutomorphism, MapClassError> {
    check_index(i, genus)?;
    check_index(j, genus)?;
    if i >= j {
        return Err(MapClassError::IndexOutOfRange(j, genus));
    }
    let chain = twist_a(genus, i)?
        .compose(&twist_b(genus, i)?)?
        .compose(&twist_d(genus, i, j)?)?;
    let f = chain.pow(4).compose(&twist_a(genus, j)?.pow(-2))?;
    let f = f.with_label(format!("bp{i}{j}"));
    if !f.is_homologically_trivial() {
        return Err(MapClassError::WrongHomologyAction(0));
    }
    Ok(f)
}

/// Catalog entry kinds, mirroring the constructors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CatalogKind {
    Identity,
    TwistA(usize),
    TwistB(usize),
    TwistChain(usize, usize),
    TwistBminus(usize, usize),
    TwistSeparating(usize),
    BoundingPair(usize, usize),
    Rotation(usize),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: CatalogKind,
    pub automorphism: FreeAutomorphism,
}

/// Every named catalog entry for the given genus.
pub fn catalog(genus: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, kind: CatalogKind, f: Result<FreeAutomorphism, MapClassError>| {
        let automorphism = f.expect("catalog data validates");
        out.push(CatalogEntry { name, kind, automorphism });
    };
    push("identity".into(), CatalogKind::Identity, Ok(FreeAutomorphism::identity(2 * genus)));
    for i in 1..=genus {
        push(format!("Ta{i}"), CatalogKind::TwistA(i), twist_a(genus, i));
        push(format!("Tb{i}"), CatalogKind::TwistB(i), twist_b(genus, i));
        push(format!("rot{i}"), CatalogKind::Rotation(i), rotation(genus, i));
    }
    for i in 1..genus {
        push(format!("Tc{i}"), CatalogKind::TwistChain(i, i + 1), chain_twist(genus, i));
    }
    for i in 1..=genus {
        for j in (i + 1)..=genus {
            push(format!("Td{i}{j}"), CatalogKind::TwistChain(i, j), twist_d(genus, i, j));
            push(format!("Te{i}{j}"), CatalogKind::TwistBminus(i, j), twist_e(genus, i, j));
            push(format!("bp{i}{j}"), CatalogKind::BoundingPair(i, j), bounding_pair(genus, i, j));
        }
    }
    for h in 1..genus {
        push(format!("sep{h}"), CatalogKind::TwistSeparating(h), twist_separating(genus, h));
    }
    out
}

/// Looks up a single catalog name like `Ta2`, `Td13`, `sep1`, `bp12`.
pub fn catalog_entry(genus: usize, name: &str) -> Result<FreeAutomorphism, MapClassError> {
    if name == "identity" || name == "id" {
        return Ok(FreeAutomorphism::identity(2 * genus));
    }
    let index_args = |prefix: &str| -> Option<Vec<usize>> {
        name.strip_prefix(prefix).and_then(|digits| {
            digits
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
        })
    };
    // Two-letter prefixes first so "Tc1" is not parsed as "T" + "c1".
    for (prefix, arity) in [("Ta", 1), ("Tb", 1), ("Tc", 1), ("Td", 2), ("Te", 2), ("bp", 2), ("rot", 1), ("sep", 1)]
    {
        if let Some(args) = index_args(prefix) {
            if args.len() != arity {
                return Err(MapClassError::UnknownCatalogEntry(name.to_string()));
            }
            return match (prefix, args.as_slice()) {
                ("Ta", [i]) => twist_a(genus, *i),
                ("Tb", [i]) => twist_b(genus, *i),
                ("Tc", [i]) => chain_twist(genus, *i),
                ("Td", [i, j]) => twist_d(genus, *i, *j),
                ("Te", [i, j]) => twist_e(genus, *i, *j),
                ("bp", [i, j]) => bounding_pair(genus, *i, *j),
                ("rot", [i]) => rotation(genus, *i),
                ("sep", [h]) => twist_separating(genus, *h),
                _ => unreachable!(),
            };
        }
    }
    Err(MapClassError::UnknownCatalogEntry(name.to_string()))
}

/// Parses a composition expression over catalog names: factors separated by
/// `*`, each optionally raised with `^n` (negative allowed), applied left to
/// right.
pub fn parse_expression(genus: usize, text: &str) -> Result<FreeAutomorphism, MapClassError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(MapClassError::BadExpression("empty expression".to_string()));
    }
    let mut out = FreeAutomorphism::identity(2 * genus);
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            None => (factor, 1i64),
            Some((name, exp)) => {
                let n: i64 = exp
                    .trim()
                    .parse()
                    .map_err(|_| MapClassError::BadExpression(format!("bad exponent in `{factor}`")))?;
                (name.trim(), n)
            }
        };
        let base = catalog_entry(genus, name)?;
        out = out.compose(&base.pow(power))?;
    }
    Ok(out.with_label(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::commutator;

    #[test]
    fn identity_fixes_everything() {
        let id = FreeAutomorphism::identity(4);
        let u = Word::parse(4, "x1 X3 x2").unwrap();
        assert_eq!(id.apply(&u), u);
        assert!(id.is_homologically_trivial());
        assert_eq!(congruence_level(&id, 3), 2);
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let f = twist_b(2, 1).unwrap();
        let u = Word::parse(4, "x1 x2 X3").unwrap();
        let v = Word::parse(4, "x4 X1").unwrap();
        assert_eq!(f.apply(&u.mul(&v)), f.apply(&u).mul(&f.apply(&v)));
        assert_eq!(
            f.apply(&commutator(&u, &v)),
            commutator(&f.apply(&u), &f.apply(&v))
        );
    }

    #[test]
    fn torus_twists_have_the_classic_matrices() {
        let ta = twist_a(1, 1).unwrap();
        assert_eq!(ta.homology_matrix(), vec![vec![1, 1], vec![0, 1]]);
        let tb = twist_b(1, 1).unwrap();
        assert_eq!(tb.homology_matrix(), vec![vec![1, 0], vec![-1, 1]]);
    }

    #[test]
    fn braid_relation_holds_exactly() {
        let a = twist_a(2, 1).unwrap();
        let b = twist_b(2, 1).unwrap();
        let aba = a.compose(&b).unwrap().compose(&a).unwrap();
        let bab = b.compose(&a).unwrap().compose(&b).unwrap();
        assert_eq!(aba.images(), bab.images());
        // The chain curve meets b1 once, so the same relation binds them.
        let c = chain_twist(2, 1).unwrap();
        let bcb = b.compose(&c).unwrap().compose(&b).unwrap();
        let cbc = c.compose(&b).unwrap().compose(&c).unwrap();
        assert_eq!(bcb.images(), cbc.images());
        // Disjoint curves commute.
        let a2 = twist_a(2, 2).unwrap();
        assert_eq!(
            a.compose(&a2).unwrap().images(),
            a2.compose(&a).unwrap().images()
        );
        let sep = twist_separating(2, 1).unwrap();
        assert_eq!(
            a.compose(&sep).unwrap().images(),
            sep.compose(&a).unwrap().images()
        );
    }

    #[test]
    fn conjugating_a_twist_moves_its_curve() {
        // rot1 carries the a1 curve to the b1 curve, so conjugation carries
        // the twists into each other.
        let rot = rotation(2, 1).unwrap();
        let conj = twist_a(2, 1).unwrap().conjugated_by(&rot).unwrap();
        assert_eq!(conj.images(), twist_b(2, 1).unwrap().images());
    }

    #[test]
    fn two_chain_relation_recovers_the_separating_twist() {
        // (Ta·Tb)^6 is the twist about the boundary of the handle
        // neighborhood — the separating curve c1.
        let power = twist_a(2, 1)
            .unwrap()
            .compose(&twist_b(2, 1).unwrap())
            .unwrap()
            .pow(6);
        assert_eq!(power.images(), twist_separating(2, 1).unwrap().images());
    }

    #[test]
    fn genus_one_boundary_relation() {
        // In genus 1 the same 6th power is the boundary twist: conjugation by
        // the inverse boundary word in this calibration.
        let power = twist_a(1, 1)
            .unwrap()
            .compose(&twist_b(1, 1).unwrap())
            .unwrap()
            .pow(6);
        let inverse_boundary = boundary_word(1).inverse();
        for i in 1..=2 {
            assert_eq!(
                power.apply(&Word::generator(2, i)),
                Word::generator(2, i).conjugate(&inverse_boundary)
            );
        }
    }

    #[test]
    fn whole_catalog_validates_at_small_genus() {
        for genus in 1..=3 {
            let entries = catalog(genus);
            for e in &entries {
                e.automorphism.validate().expect("catalog entry must validate");
                let boundary = boundary_word(genus);
                assert_eq!(e.automorphism.apply(&boundary), boundary, "{} moves ∂", e.name);
            }
            // identity + 3 per handle + (g−1) chains + 3 per unordered pair
            // + (g−1) separating twists
            let g = genus;
            let expected = 1 + 3 * g + (g - 1) + 3 * (g * (g - 1) / 2) + (g - 1);
            assert_eq!(entries.len(), expected);
        }
    }

    #[test]
    fn nonadjacent_and_dual_classes() {
        let td = twist_d(3, 1, 3).unwrap();
        let m = td.homology_matrix();
        // Column of b1 (block position 3) gains a1 + a3.
        assert_eq!(m[0][3], 1);
        assert_eq!(m[2][3], 1);
        let te = twist_e(3, 1, 3).unwrap();
        let m = te.homology_matrix();
        // Column of a1 (block position 0) gains −(b1 − b3) since
        // i(a1, b1 − b3) = −1.
        assert_eq!(m[3][0], -1);
        assert_eq!(m[5][0], 1);
    }

    #[test]
    fn bounding_pairs_are_torelli_but_not_identity() {
        for (genus, i, j) in [(2, 1, 2), (3, 1, 3), (3, 2, 3)] {
            let bp = bounding_pair(genus, i, j).unwrap();
            assert!(bp.is_homologically_trivial());
            assert_ne!(bp.images(), FreeAutomorphism::identity(2 * genus).images());
        }
    }

    #[test]
    fn congruence_levels_of_twist_powers() {
        for p in [3u64, 5] {
            let ta = twist_a(2, 1).unwrap();
            assert_eq!(congruence_level(&ta, p), 0);
            assert_eq!(congruence_level(&ta.pow(p as i64), p), 1);
            assert_eq!(congruence_level(&ta.pow((p * p) as i64), p), 2);
            let sep = twist_separating(2, 1).unwrap();
            assert_eq!(congruence_level(&sep, p), 2);
        }
    }

    #[test]
    fn compose_invert_round_trip() {
        let f = parse_expression(2, "Ta1*Tb1^-2*sep1").unwrap();
        let round = f.compose(&f.invert()).unwrap();
        assert_eq!(round.images(), FreeAutomorphism::identity(4).images());
        f.validate().unwrap();
    }

    #[test]
    fn expression_parsing_errors() {
        assert!(matches!(
            parse_expression(2, "Tq1"),
            Err(MapClassError::UnknownCatalogEntry(_))
        ));
        assert!(matches!(
            parse_expression(2, "Ta5"),
            Err(MapClassError::IndexOutOfRange(5, 2))
        ));
        assert!(matches!(
            parse_expression(2, "Ta1^x"),
            Err(MapClassError::BadExpression(_))
        ));
        assert!(matches!(
            parse_expression(2, "  "),
            Err(MapClassError::BadExpression(_))
        ));
        assert!(parse_expression(2, "Td12").is_ok());
        assert!(parse_expression(2, "identity").is_ok());
    }

    #[test]
    fn json_round_trip_validates() {
        let f = twist_e(2, 1, 2).unwrap();
        let json = f.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: MapClassJson = serde_json::from_str(&text).unwrap();
        let g = FreeAutomorphism::from_json(&back).unwrap();
        assert_eq!(g.images(), f.images());

        // Tampered inverse data must be rejected.
        let mut bad = f.to_json();
        bad.inverse_images[0] = "x1 x2".to_string();
        assert!(matches!(
            FreeAutomorphism::from_json(&bad),
            Err(MapClassError::NotAnAutomorphism { .. })
        ));
    }

    #[test]
    fn boundary_violation_is_rejected() {
        // x1 ↦ x2, x2 ↦ x1 is a fine automorphism but moves the boundary.
        let images = vec![Word::generator(2, 2), Word::generator(2, 1)];
        let err = FreeAutomorphism::new(images.clone(), images, "swap").unwrap_err();
        assert!(matches!(err, MapClassError::BoundaryMoved(_)));
    }

    #[test]
    fn power_convention() {
        let f = twist_a(2, 1).unwrap();
        assert_eq!(f.pow(0).images(), FreeAutomorphism::identity(4).images());
        assert_eq!(f.pow(-1).images(), f.invert().images());
        assert_eq!(
            f.pow(3).images(),
            f.compose(&f).unwrap().compose(&f).unwrap().images()
        );
    }
}
