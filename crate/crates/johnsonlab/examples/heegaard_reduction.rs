//! Normalizing a Heegaard gluing map modulo p.
//!
//! A closed 3-manifold glued from two genus-`g` handlebodies is described by
//! an integer symplectic matrix `M`. When the manifold is a rational
//! homology sphere at `p` -- equivalently, when the lower-right block `H` of
//! `M⁻¹ mod p` is invertible -- the gluing factors as `M ≡ X⁻¹·Y⁻¹ mod p`
//! with `X` preserving one standard Lagrangian and `Y` the other. The
//! symmetric block `B' = −F·H⁻¹` drives the construction.
//!
//! Run with `cargo run --example heegaard_reduction`.

use johnsonlab::groupring::CoefficientRing;
use johnsonlab::symplectic::{gen_m, gen_n, heegaard_reduce, SpMatrix, SymplecticError};

fn main() {
    let g = 2;
    let p = 3u64;

    // An integer symplectic gluing map: a product of unit shears (the
    // congruence generators at p = 1 generate all of Sp(2g, Z)).
    let m = gen_n(g, 1, 2, 1)
        .unwrap()
        .mul(&gen_m(g, 1, 1, 1).unwrap())
        .unwrap()
        .mul(&gen_n(g, 2, 2, 1).unwrap())
        .unwrap()
        .mul(&gen_m(g, 1, 2, 1).unwrap())
        .unwrap();
    println!("gluing map M:");
    println!("{m}");
    println!();

    let report = heegaard_reduce(&m, p).unwrap();
    println!("B' = -F·H^-1 (symmetric: {}):", report.b_prime_symmetric);
    for row in &report.b_prime {
        println!("  {row:?}");
    }
    let x = SpMatrix::from_json(&report.x_factor).unwrap();
    let y = SpMatrix::from_json(&report.y_factor).unwrap();
    println!("X ({}):", report.x_preserves);
    println!("{x}");
    println!("Y ({}):", report.y_preserves);
    println!("{y}");
    println!();

    // Both factors are symplectic mod p, their triangular blocks vanish,
    // and integer lifts conjugate M to the identity mod p.
    assert!(x.is_symplectic() && y.is_symplectic());
    assert!(x.block(0, 1).iter().all(|r| r.iter().all(|e| e == &0.into())));
    assert!(y.block(1, 0).iter().all(|r| r.iter().all(|e| e == &0.into())));
    assert!(report.residual_identity);
    let residual = x
        .lift_to_integers()
        .mul(&m)
        .unwrap()
        .mul(&y.lift_to_integers())
        .unwrap()
        .reduced_mod(p)
        .unwrap();
    assert!(residual.is_identity());
    println!("X·M·Y ≡ Id mod {p} (verified from integer lifts)");
    println!();

    // The construction degrades cleanly: Omega swaps the Lagrangians, so no
    // choice of blocks can work -- the manifold it glues is not a rational
    // homology sphere at any p.
    match heegaard_reduce(&SpMatrix::omega(g, CoefficientRing::Integers), p) {
        Err(SymplecticError::NotQHSAtP(q)) => {
            println!("Omega is rejected: not a rational homology sphere at p = {q}")
        }
        other => panic!("expected NotQHSAtP, got {other:?}"),
    }

    // Whether the obstruction fires depends on the prime: this gluing's
    // first homology has order 3, so it reduces at 5 but not at 3.
    let entries = [3, 0, 1, 0, 0, 1, 0, 0, 2, 0, 1, 0, 0, 0, 0, 1];
    let s = SpMatrix::from_entries(
        g,
        CoefficientRing::Integers,
        entries.iter().map(|&e| e.into()).collect::<Vec<_>>(),
    )
    .unwrap();
    assert!(s.is_symplectic());
    for q in [3u64, 5] {
        match heegaard_reduce(&s, q) {
            Ok(_) => println!("the order-3 gluing reduces at p = {q}"),
            Err(SymplecticError::NotQHSAtP(_)) => {
                println!("the order-3 gluing is obstructed at p = {q}")
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}
