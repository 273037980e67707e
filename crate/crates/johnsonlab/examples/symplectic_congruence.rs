//! Symplectic matrices, the level-p congruence group, and twist-power lifts.
//!
//! The homology action of a mapping class is a symplectic matrix. Matrices
//! congruent to the identity mod `p` form the level-`p` congruence group;
//! the mod-p logarithm `(X − Id)/p` lands in the symplectic Lie algebra over
//! `F_p` and turns congruence questions into linear algebra. The standard
//! generators `gen_M`/`gen_N` of the congruence group all lift to products
//! of p-th powers of Dehn twists.
//!
//! Run with `cargo run --example symplectic_congruence`.

use johnsonlab::groupring::CoefficientRing;
use johnsonlab::symplectic::{
    gen_m, gen_n, lift_generator_check, matrix_congruence_level, sp_abel, LiftKind, SpMatrix,
};

fn main() {
    let g = 2;
    let p = 3u64;

    // The standard symplectic form, and a pair of congruence generators.
    println!("Omega (g = {g}):");
    println!("{}", SpMatrix::omega(g, CoefficientRing::Integers));
    let m12 = gen_m(g, 1, 2, p).unwrap();
    println!("gen_M(1,2) at p = {p}:");
    println!("{m12}");
    assert!(m12.is_symplectic());
    assert_eq!(matrix_congruence_level(&m12, p), 1);
    println!();

    // sp_abel is the mod-p logarithm: additive on products of level-p
    // matrices, zero exactly on level p².
    let n11 = gen_n(g, 1, 1, p).unwrap();
    let prod = m12.mul(&n11).unwrap();
    let sum = sp_abel(&m12, p).unwrap().add(&sp_abel(&n11, p).unwrap()).unwrap();
    assert_eq!(sp_abel(&prod, p).unwrap(), sum);
    println!("sp_abel(gen_M·gen_N) = sp_abel(gen_M) + sp_abel(gen_N):");
    println!("{sum}");
    let power = m12.pow(p as u32);
    assert_eq!(matrix_congruence_level(&power, p), 2);
    assert_eq!(
        sp_abel(&power, p).unwrap(),
        SpMatrix::zero(g, CoefficientRing::prime_field(p).unwrap())
    );
    println!("gen_M^{p} reaches level 2 and sp_abel kills it");
    println!();

    // Every congruence generator lifts to a twist-power expression from the
    // catalog whose homology action matches on the nose.
    for kind in [LiftKind::M, LiftKind::N] {
        for i in 1..=g {
            for j in i..=g {
                let report = lift_generator_check(g, kind, i, j, p).unwrap();
                assert!(report.matches);
                println!(
                    "gen_{}({i},{j})  <-  {}",
                    match report.kind {
                        LiftKind::M => "M",
                        LiftKind::N => "N",
                    },
                    report.expression
                );
            }
        }
    }
    println!();

    // The lifted expression really produces the target matrix.
    let report = lift_generator_check(g, LiftKind::M, 1, 2, p).unwrap();
    println!("target gen_M(1,2):");
    println!("{}", report.target);
    println!("homology action of {}:", report.expression);
    println!("{}", report.lifted);
}
