//! Symplectic matrices over `Z` and `F_p`: the homology representation of
//! mapping classes, the level-`p` congruence generators and their
//! mapping-class lifts, the logarithm `sp_abel` onto the symplectic Lie
//! algebra, and the normalization of Heegaard gluing maps into a product of
//! Lagrangian-preserving factors.
//!
//! Everything uses the block basis `(a_1..a_g, b_1..b_g)` and the form
//! `Ω = [[0, Id], [−Id, 0]]`, with the intersection pairing `i(x, y) = yᵀΩx`
//! so that `i(b_k, a_k) = +1`. Matrices act on column vectors; for the
//! left-to-right composition of mapping classes this means
//! `rep(compose(f, g)) = rep(g)·rep(f)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupring::{CoefficientRing, RingError};
use crate::mapclass::{self, FreeAutomorphism};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrices are incompatible: {0}")]
    Incompatible(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix is not congruent to the identity mod {0}")]
    NotLevelP(u64),
    #[error("index ({0}, {1}) out of range for genus {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("the gluing map is not a rational homology sphere at p = {0}")]
    NotQHSAtP(u64),
    #[error("bad matrix data: {0}")]
    BadData(String),
}

/// A square matrix of size `2g`, stored row-major. Over `PrimeField(p)` the
/// entries stay normalized into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpMatrix {
    g: usize,
    ring: CoefficientRing,
    entries: Vec<BigInt>,
}

impl SpMatrix {
    pub fn zero(g: usize, ring: CoefficientRing) -> Self {
        SpMatrix { g, ring, entries: vec![BigInt::zero(); (2 * g) * (2 * g)] }
    }

    pub fn identity(g: usize, ring: CoefficientRing) -> Self {
        let mut m = SpMatrix::zero(g, ring);
        for i in 0..2 * g {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// The standard form `[[0, Id], [−Id, 0]]`.
    pub fn omega(g: usize, ring: CoefficientRing) -> Self {
        let mut m = SpMatrix::zero(g, ring);
        for i in 0..g {
            m.set(i, g + i, BigInt::one());
            m.set(g + i, i, -BigInt::one());
        }
        m
    }

    pub fn from_entries(
        g: usize,
        ring: CoefficientRing,
        entries: Vec<BigInt>,
    ) -> Result<Self, SymplecticError> {
        let n = 2 * g;
        if entries.len() != n * n {
            return Err(SymplecticError::BadData(format!(
                "expected {} entries for genus {g}, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut m = SpMatrix { g, ring, entries };
        for e in &mut m.entries {
            *e = ring.normalize(e.clone());
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        let n = self.dim();
        self.entries[r * n + c] = self.ring.normalize(v);
    }

    fn check_compatible(&self, other: &SpMatrix) -> Result<(), SymplecticError> {
        if self.g != other.g || self.ring != other.ring {
            return Err(SymplecticError::Incompatible(format!(
                "genus {} over {} vs genus {} over {}",
                self.g, self.ring, other.g, other.ring
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &SpMatrix) -> Result<SpMatrix, SymplecticError> {
        self.check_compatible(other)?;
        let n = self.dim();
        let mut out = SpMatrix::zero(self.g, self.ring);
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += self.entry(r, k) * other.entry(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SpMatrix) -> Result<SpMatrix, SymplecticError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.ring.normalize(a.clone() + b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SpMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.ring.normalize(-a.clone());
        }
        out
    }

    pub fn sub(&self, other: &SpMatrix) -> Result<SpMatrix, SymplecticError> {
        self.add(&other.neg())
    }

    pub fn transpose(&self) -> SpMatrix {
        let n = self.dim();
        let mut out = SpMatrix::zero(self.g, self.ring);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.entry(r, c).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SpMatrix {
        let mut out = SpMatrix::identity(self.g, self.ring);
        for _ in 0..e {
            out = out.mul(self).expect("same shape");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity(self.g, self.ring)
    }

    /// Reduces an integer matrix into `F_p`.
    pub fn reduced_mod(&self, p: u64) -> Result<SpMatrix, SymplecticError> {
        let ring = CoefficientRing::prime_field(p)?;
        SpMatrix::from_entries(self.g, ring, self.entries.clone())
    }

    /// Reinterprets normalized `F_p` entries as integers in `[0, p)`.
    pub fn lift_to_integers(&self) -> SpMatrix {
        SpMatrix { g: self.g, ring: CoefficientRing::Integers, entries: self.entries.clone() }
    }

    /// `MᵀΩM = Ω`.
    pub fn is_symplectic(&self) -> bool {
        let omega = SpMatrix::omega(self.g, self.ring);
        self.transpose()
            .mul(&omega)
            .and_then(|t| t.mul(self))
            .map(|t| t == omega)
            .unwrap_or(false)
    }

    /// `AᵀΩ + ΩA = 0`: membership in the symplectic Lie algebra.
    pub fn is_sp_lie(&self) -> bool {
        let omega = SpMatrix::omega(self.g, self.ring);
        let lhs = self
            .transpose()
            .mul(&omega)
            .and_then(|t| t.add(&omega.mul(self).expect("same shape")));
        lhs.map(|t| t == SpMatrix::zero(self.g, self.ring)).unwrap_or(false)
    }

    /// For symplectic `M` the inverse is `−Ω·Mᵀ·Ω`, valid over any
    /// coefficient ring.
    pub fn symplectic_inverse(&self) -> Result<SpMatrix, SymplecticError> {
        if !self.is_symplectic() {
            return Err(SymplecticError::NotSymplectic);
        }
        let omega = SpMatrix::omega(self.g, self.ring);
        Ok(omega.mul(&self.transpose())?.mul(&omega)?.neg())
    }

    /// The `g×g` block at block-row `br`, block-column `bc` (each 0 or 1).
    pub fn block(&self, br: usize, bc: usize) -> Vec<Vec<BigInt>> {
        let g = self.g;
        (0..g)
            .map(|r| (0..g).map(|c| self.entry(br * g + r, bc * g + c).clone()).collect())
            .collect()
    }

    fn from_blocks(
        g: usize,
        ring: CoefficientRing,
        blocks: [[&[Vec<BigInt>]; 2]; 2],
    ) -> SpMatrix {
        let mut m = SpMatrix::zero(g, ring);
        for (br, row) in blocks.iter().enumerate() {
            for (bc, block) in row.iter().enumerate() {
                for r in 0..g {
                    for c in 0..g {
                        m.set(br * g + r, bc * g + c, block[r][c].clone());
                    }
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            g: self.g,
            ring: self.ring,
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, SymplecticError> {
        let entries = json
            .entries
            .iter()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| SymplecticError::BadData(format!("bad integer `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SpMatrix::from_entries(json.g, json.ring, entries)
    }
}

/// One bracketed row per line, entries right-aligned to the widest in the
/// matrix.
impl std::fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.dim();
        let width =
            self.entries.iter().map(|e| e.to_string().len()).max().unwrap_or(1);
        for r in 0..n {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for c in 0..n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.entry(r, c).to_string())?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// JSON shape: `{g, ring, entries}` with decimal-string entries, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub g: usize,
    pub ring: CoefficientRing,
    pub entries: Vec<String>,
}

/// The homology action of a mapping class in the block basis, as an integer
/// matrix. Errors if the result is not symplectic (it always is for genuine
/// boundary-fixing automorphisms; the check guards corrupted input).
pub fn symplectic_rep(f: &FreeAutomorphism) -> Result<SpMatrix, SymplecticError> {
    let g = f.genus();
    let hom = f.homology_matrix();
    let mut m = SpMatrix::zero(g, CoefficientRing::Integers);
    for (r, row) in hom.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m.set(r, c, BigInt::from(v));
        }
    }
    if !m.is_symplectic() {
        return Err(SymplecticError::NotSymplectic);
    }
    Ok(m)
}

fn symmetric_unit(g: usize, i: usize, j: usize) -> Result<Vec<Vec<BigInt>>, SymplecticError> {
    if i < 1 || i > g || j < 1 || j > g {
        return Err(SymplecticError::IndexOutOfRange(i, j, g));
    }
    let mut e = vec![vec![BigInt::zero(); g]; g];
    e[i - 1][j - 1] = BigInt::one();
    e[j - 1][i - 1] = BigInt::one();
    if i == j {
        e[i - 1][i - 1] = BigInt::one();
    }
    Ok(e)
}

/// `[[Id, p·E_ij], [0, Id]]` where `E_ij` is the symmetric unit (a single 1
/// at `(i,i)` when `i = j`). Sends `b_j ↦ b_j + p·a_i` and `b_i ↦ b_i + p·a_j`.
pub fn gen_m(g: usize, i: usize, j: usize, p: u64) -> Result<SpMatrix, SymplecticError> {
    let mut e = symmetric_unit(g, i, j)?;
    for row in e.iter_mut() {
        for v in row.iter_mut() {
            *v *= BigInt::from(p);
        }
    }
    let id: Vec<Vec<BigInt>> = (0..g)
        .map(|r| (0..g).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let zero = vec![vec![BigInt::zero(); g]; g];
    Ok(SpMatrix::from_blocks(g, CoefficientRing::Integers, [[&id, &e], [&zero, &id]]))
}

/// `[[Id, 0], [p·E_ij, Id]]`: the transpose partner of [`gen_m`], sending
/// `a_j ↦ a_j + p·b_i` and `a_i ↦ a_i + p·b_j`.
pub fn gen_n(g: usize, i: usize, j: usize, p: u64) -> Result<SpMatrix, SymplecticError> {
    Ok(gen_m(g, i, j, p)?.transpose())
}

/// Congruence depth of an integer matrix: 2 if `≡ Id mod p²`, 1 if
/// `≡ Id mod p`, else 0.
pub fn matrix_congruence_level(m: &SpMatrix, p: u64) -> u8 {
    let id = SpMatrix::identity(m.genus(), m.ring());
    let level = |q: u64| {
        m.entries
            .iter()
            .zip(&id.entries)
            .all(|(a, b)| ((a - b) % BigInt::from(q)).is_zero())
    };
    if level(p * p) {
        2
    } else if level(p) {
        1
    } else {
        0
    }
}

/// The mod-p logarithm `(X − Id)/p mod p` of a level-`p` integer symplectic
/// matrix; the result lies in the symplectic Lie algebra over `F_p`.
pub fn sp_abel(x: &SpMatrix, p: u64) -> Result<SpMatrix, SymplecticError> {
    CoefficientRing::prime_field(p)?;
    if x.ring() != CoefficientRing::Integers || !x.is_symplectic() {
        return Err(SymplecticError::NotSymplectic);
    }
    if matrix_congruence_level(x, p) < 1 {
        return Err(SymplecticError::NotLevelP(p));
    }
    let id = SpMatrix::identity(x.genus(), CoefficientRing::Integers);
    let diff = x.sub(&id)?;
    let quotient: Vec<BigInt> = diff.entries.iter().map(|e| e / BigInt::from(p)).collect();
    let out = SpMatrix::from_entries(x.genus(), CoefficientRing::prime_field(p)?, quotient)?;
    debug_assert!(out.is_sp_lie());
    Ok(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p−2) mod p for prime p.
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

/// Inverts a `g×g` block mod `p` by Gaussian elimination; `None` when
/// singular.
fn invert_block_mod_p(block: &[Vec<BigInt>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = block.len();
    let pi = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = block
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let r = ((e % &pi) + &pi) % &pi;
                    u64::try_from(r).expect("normalized residue fits in u64")
                })
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<u64>> =
        (0..n).map(|r| (0..n).map(|c| u64::from(r == c)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] % p != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = inv_mod(a[col][col], p);
        for c in 0..n {
            a[col][c] = a[col][c] * scale % p;
            inv[col][c] = inv[col][c] * scale % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] + (p - factor) * a[col][c]) % p;
                    inv[r][c] = (inv[r][c] + (p - factor) * inv[col][c]) % p;
                }
            }
        }
    }
    Some(inv)
}

/// Outcome of normalizing a Heegaard gluing map mod `p`: the two factors, the
/// symmetric block driving the construction, and the verified properties.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeegaardReport {
    pub p: u64,
    /// The symmetric `g×g` block `B' = −F·H⁻¹` built from `M⁻¹ mod p`.
    pub b_prime: Vec<Vec<u64>>,
    pub b_prime_symmetric: bool,
    /// `X = [[Id, B'], [0, Id]]·(M⁻¹ mod p)`; lower-triangular by blocks, so
    /// it preserves the Lagrangian `span{b_1..b_g}`.
    pub x_factor: MatrixJson,
    pub x_preserves: String,
    /// `Y = (X·(M mod p))⁻¹ = [[Id, −B'], [0, Id]]`; block upper-triangular,
    /// so it preserves `span{a_1..a_g}`.
    pub y_factor: MatrixJson,
    pub y_preserves: String,
    /// Whether integer lifts of the factors conjugate `M` to the identity
    /// mod `p`: `X̃·M·Ỹ ≡ Id`.
    pub residual_identity: bool,
}

/// Normalizes an integer symplectic gluing map `M` at an odd prime `p`.
///
/// Writing `W = M⁻¹ mod p` in blocks `[[E, F], [G, H]]`, the gluing is a
/// rational homology sphere at `p` exactly when `H` is invertible mod `p`;
/// then `B' = −F·H⁻¹` is symmetric and `X = [[Id, B'], [0, Id]]·W` kills the
/// upper-right block, factoring `M ≡ X⁻¹·Y⁻¹` into maps preserving the two
/// standard Lagrangians.
pub fn heegaard_reduce(m: &SpMatrix, p: u64) -> Result<HeegaardReport, SymplecticError> {
    CoefficientRing::prime_field(p)?;
    if m.ring() != CoefficientRing::Integers || !m.is_symplectic() {
        return Err(SymplecticError::NotSymplectic);
    }
    let g = m.genus();
    let ring = CoefficientRing::prime_field(p)?;
    let m_p = m.reduced_mod(p)?;
    let w = m_p.symplectic_inverse()?;
    let f_block = w.block(0, 1);
    let h_block = w.block(1, 1);
    let h_inv = invert_block_mod_p(&h_block, p).ok_or(SymplecticError::NotQHSAtP(p))?;

    // B' = −F·H⁻¹ mod p.
    let mut b_prime = vec![vec![0u64; g]; g];
    let pi = BigInt::from(p);
    for r in 0..g {
        for c in 0..g {
            let mut acc = BigInt::zero();
            for k in 0..g {
                acc += &f_block[r][k] * BigInt::from(h_inv[k][c]);
            }
            let residue = ((-acc % &pi) + &pi) % &pi;
            b_prime[r][c] = u64::try_from(residue).expect("normalized residue fits in u64");
        }
    }
    let b_prime_symmetric =
        (0..g).all(|r| (0..g).all(|c| b_prime[r][c] == b_prime[c][r]));

    let mut shear = SpMatrix::identity(g, ring);
    for r in 0..g {
        for c in 0..g {
            shear.set(r, g + c, BigInt::from(b_prime[r][c]));
        }
    }
    let x = shear.mul(&w)?;
    let upper_right_zero = x.block(0, 1).iter().all(|row| row.iter().all(|e| e.is_zero()));
    let y = x.mul(&m_p)?.symplectic_inverse()?;
    let lower_left_zero = y.block(1, 0).iter().all(|row| row.iter().all(|e| e.is_zero()));

    let residual = x
        .lift_to_integers()
        .mul(m)?
        .mul(&y.lift_to_integers())?
        .reduced_mod(p)?;
    let residual_identity =
        residual.is_identity() && upper_right_zero && lower_left_zero;

    Ok(HeegaardReport {
        p,
        b_prime,
        b_prime_symmetric,
        x_factor: x.to_json(),
        x_preserves: format!("span{{b_1..b_{g}}}"),
        y_factor: y.to_json(),
        y_preserves: format!("span{{a_1..a_{g}}}"),
        residual_identity,
    })
}

/// Which congruence generator family a lift check targets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LiftKind {
    M,
    N,
}

/// A verified lift of one congruence generator to a product of twist powers.
#[derive(Debug)]
pub struct LiftReport {
    pub kind: LiftKind,
    pub i: usize,
    pub j: usize,
    pub p: u64,
    /// Catalog expression whose homology action is the target generator.
    pub expression: String,
    pub target: SpMatrix,
    pub lifted: SpMatrix,
    pub matches: bool,
}

/// Builds the standard twist-power lift of `gen_M(i,j,p)` or `gen_N(i,j,p)`
/// from the catalog and compares homology actions: diagonal generators lift
/// to `Ta_i^p` / `Tb_i^{−p}`, off-diagonal ones to a triple
/// `T^{−p}·T_mid^{p}·T^{−p}` through the curve of class `a_i + a_j`
/// (respectively `b_i − b_j`).
pub fn lift_generator_check(
    genus: usize,
    kind: LiftKind,
    i: usize,
    j: usize,
    p: u64,
) -> Result<LiftReport, SymplecticError> {
    CoefficientRing::prime_field(p)?;
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    let expression = match (kind, lo == hi) {
        (LiftKind::M, true) => format!("Ta{lo}^{p}"),
        (LiftKind::N, true) => format!("Tb{lo}^-{p}"),
        (LiftKind::M, false) => format!("Ta{lo}^-{p}*Td{lo}{hi}^{p}*Ta{hi}^-{p}"),
        (LiftKind::N, false) => format!("Tb{lo}^-{p}*Te{lo}{hi}^{p}*Tb{hi}^-{p}"),
    };
    let auto = mapclass::parse_expression(genus, &expression)
        .map_err(|e| SymplecticError::BadData(e.to_string()))?;
    let lifted = symplectic_rep(&auto)?;
    let target = match kind {
        LiftKind::M => gen_m(genus, lo, hi, p)?,
        LiftKind::N => gen_n(genus, lo, hi, p)?,
    };
    let matches = lifted == target;
    Ok(LiftReport { kind, i: lo, j: hi, p, expression, target, lifted, matches })
}

/// A reproducible product of congruence generators: a level-`p` integer
/// symplectic matrix for exercising `sp_abel`.
pub fn random_level_p_matrix(g: usize, p: u64, factors: usize, seed: u64) -> SpMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SpMatrix::identity(g, CoefficientRing::Integers);
    for _ in 0..factors {
        let i = rng.gen_range(1..=g);
        let j = rng.gen_range(1..=g);
        let gen = if rng.gen_bool(0.5) {
            gen_m(g, i, j, p).expect("indices in range")
        } else {
            gen_n(g, i, j, p).expect("indices in range")
        };
        let factor = if rng.gen_bool(0.5) { gen.symplectic_inverse().expect("symplectic") } else { gen };
        out = out.mul(&factor).expect("same shape");
    }
    out
}
