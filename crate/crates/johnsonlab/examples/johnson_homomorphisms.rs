//! Johnson homomorphisms: reading the leading term of a Torelli map.
//!
//! A mapping class acting trivially on the level-`k` nilpotent quotient is
//! measured at level `k` by the degree-`(k+1)` Magnus coefficients of its
//! displacements `f(x_i)·x_i⁻¹`. The same recipe runs over `Z` (lower
//! central series) and over `F_p` (Zassenhaus series); the level-one value
//! of a genuine mapping class always lands in the image of `∧³H`.
//!
//! Run with `cargo run --example johnson_homomorphisms`.

use johnsonlab::filtrations::{SeriesKind, Verdict};
use johnsonlab::johnson::{filtration_member, tau, wedge3_membership, JohnsonError, JohnsonValue};
use johnsonlab::mapclass::parse_expression;

fn show_rows(label: &str, v: &JohnsonValue) {
    println!("{label}  (level {}, ring {})", v.level(), v.ring());
    for (i, row) in v.rows().iter().enumerate() {
        let terms: Vec<String> = row
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|j| format!("w{j}")).collect();
                format!("{c}·{}", vars.join(" "))
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        println!("  x{} -> {body}", i + 1);
    }
}

fn main() {
    let genus = 2;

    // A bounding-pair map is Torelli (level-1 kernel over Z); its level-one
    // value is the classical first Johnson image.
    let bp = parse_expression(genus, "bp12").unwrap();
    assert_eq!(filtration_member(&bp, SeriesKind::Lcs, 1).unwrap(), Verdict::True);
    let v = tau(&bp, 1, SeriesKind::Lcs).unwrap();
    show_rows("tau_1(bp12) over Z", &v);
    println!();

    // Reduced mod 3 it lies in the image of ∧³H, with explicit coordinates
    // in the basis x∧y∧z ↦ x⊗(y∧z) + y⊗(z∧x) + z⊗(x∧y).
    let v3 = tau(&bp, 1, SeriesKind::Zassenhaus(3)).unwrap();
    match wedge3_membership(&v3).unwrap() {
        outcome if outcome.is_member() => {
            println!("tau_1(bp12) mod 3 lies in ∧³H; dense coordinates {:?}",
                outcome.dense(2 * genus).unwrap());
        }
        _ => unreachable!("bounding-pair values are always in the subspace"),
    }
    println!();

    // A separating twist vanishes at level 1 and first shows up at level 2.
    let sep = parse_expression(genus, "sep1").unwrap();
    let v1 = tau(&sep, 1, SeriesKind::Lcs).unwrap();
    assert!(v1.is_zero());
    println!("tau_1(sep1) = 0, so sep1 survives to level 2:");
    let v2 = tau(&sep, 2, SeriesKind::Lcs).unwrap();
    show_rows("tau_2(sep1) over Z", &v2);
    println!();

    // tau is additive: tau_k(fg) = tau_k(f) + tau_k(g) on the level-k kernel.
    let f = parse_expression(genus, "sep1*bp12").unwrap();
    let sum = tau(&sep, 1, SeriesKind::Lcs)
        .unwrap()
        .add(&tau(&bp, 1, SeriesKind::Lcs).unwrap())
        .unwrap();
    assert_eq!(tau(&f, 1, SeriesKind::Lcs).unwrap().rows(), sum.rows());
    println!("tau_1(sep1·bp12) = tau_1(sep1) + tau_1(bp12)");

    // The kernel of tau_k is exactly the level-(k+1) kernel: bp12 has a
    // nonzero value, so it does not act trivially one level deeper.
    assert!(!v.is_zero());
    assert_eq!(filtration_member(&bp, SeriesKind::Lcs, 2).unwrap(), Verdict::False);
    println!("tau_1(bp12) ≠ 0 and bp12 is not in the level-2 kernel");
    println!();

    // Asking for tau outside the filtration is a domain error, not a panic.
    let ta = parse_expression(genus, "Ta1").unwrap();
    match tau(&ta, 1, SeriesKind::Lcs) {
        Err(JohnsonError::NotInFiltration { level }) => {
            println!("tau_1(Ta1) is undefined: Ta1 is not in the level-{level} kernel")
        }
        other => panic!("expected NotInFiltration, got {other:?}"),
    }

    // Over F_p the filtration is coarser: the cube of a twist is invisible
    // to mod-3 homology and even to the level-one value (its displacements
    // are cubes, which the Magnus expansion mod 3 pushes to degree 3), so
    // its first nonzero Zassenhaus value sits at level two.
    let ta3 = parse_expression(genus, "Ta1^3").unwrap();
    assert!(tau(&ta3, 1, SeriesKind::Zassenhaus(3)).unwrap().is_zero());
    let vz = tau(&ta3, 2, SeriesKind::Zassenhaus(3)).unwrap();
    show_rows("tau_2^Z(Ta1^3) mod 3", &vz);
}
