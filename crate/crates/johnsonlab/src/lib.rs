//! Computational tools for surface-group filtrations and mapping classes.
//!
//! The library works with the fundamental group of a compact orientable
//! genus-`g` surface with one boundary component, i.e. a free group of rank
//! `2g` whose generators pair into symplectic handles. It provides:
//!
//! - words, group rings, and Fox's free differential calculus ([`freegroup`],
//!   [`groupring`]);
//! - truncated noncommutative power series and the Magnus embedding
//!   ([`magnus`]);
//! - membership oracles and samplers for the lower central, Stallings, and
//!   mod-`p` Zassenhaus series ([`filtrations`]);
//! - a validated catalog of mapping classes given by their action on the
//!   free group: Dehn twists, separating twists, bounding-pair maps
//!   ([`mapclass`]);
//! - Johnson-type homomorphisms for each filtration and the Perron/Fox-matrix
//!   variant ([`johnson`]);
//! - symplectic matrices over `Z` and `F_p`, the mod-`p` abelianization onto
//!   the symplectic Lie algebra, level-`p` congruence generators, and the
//!   Heegaard gluing-map normalization ([`symplectic`]).
//!
//! The `selftest` module packages the end-to-end conformance suites that the
//! CLI exposes as `johnsonlab selftest` and the integration tests replay.

pub mod cli;
pub mod filtrations;
pub mod freegroup;
pub mod groupring;
pub mod johnson;
pub mod magnus;
pub mod mapclass;
pub mod selftest;
pub mod symplectic;

/// Coefficient budget guard: the default cap on stored series coefficients.
///
/// Dense truncated series over rank `n` store `n^d` slots in degree `d`; the
/// cap bounds the total across all degrees of one series. Override with the
/// `JOHNSONLAB_BUDGET` environment variable (a positive integer).
pub const DEFAULT_COEFF_BUDGET: usize = 2_000_000;

/// Reads the coefficient budget from `JOHNSONLAB_BUDGET`, falling back to
/// [`DEFAULT_COEFF_BUDGET`] when unset or unparsable.
pub fn coeff_budget() -> usize {
    std::env::var("JOHNSONLAB_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_COEFF_BUDGET)
}
