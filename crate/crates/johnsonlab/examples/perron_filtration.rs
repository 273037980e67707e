//! The Fox-matrix filtration and its agreement with the Zassenhaus kernel.
//!
//! Arranging the reversed Fox derivatives of an automorphism into the matrix
//! `B(f)_{ij} = bar(∂f(x_j)/∂x_i)` gives a multiplicative picture of the
//! action: `B(fg) = B(g)·(B(f) twisted by g)`. Expanding each entry through
//! the Magnus embedding and truncating at degree `l` mod `p` yields Taylor
//! blocks; `f` sits at depth `k` when the constant block is the identity and
//! blocks `1..k−1` vanish. This recovers the mod-p Johnson kernels without
//! ever touching the series oracles.
//!
//! Run with `cargo run --example perron_filtration`.

use johnsonlab::filtrations::{SeriesKind, Verdict};
use johnsonlab::johnson::{filtration_member, fox_matrix, perron_member, taylor_block};
use johnsonlab::mapclass::{catalog, parse_expression, twist_a};

fn main() {
    // The Fox matrix of a single twist on the torus (rank 2) stays small
    // enough to print in full.
    let ta = twist_a(1, 1).unwrap();
    let b = fox_matrix(&ta);
    println!("B(Ta1) at genus 1:");
    for i in 1..=b.rank() {
        for j in 1..=b.rank() {
            println!("  B[{i}][{j}] = {}", b.entry(i, j));
        }
    }
    println!();

    // Taylor blocks mod 3 of the cube: the constant block is the identity
    // and the degree-1 block is the first one carrying information.
    let ta3 = ta.pow(3);
    let b3 = fox_matrix(&ta3);
    for level in 0..=2 {
        let block = taylor_block(&b3, level, 3).unwrap();
        let status = if level == 0 {
            if block.is_identity() { "identity" } else { "not identity" }
        } else if block.is_zero() {
            "zero"
        } else {
            "nonzero"
        };
        println!("Taylor block of B(Ta1^3) at level {level} mod 3: {status}");
    }
    println!();

    // Depth in the Fox-matrix filtration, swept over the genus-2 catalog at
    // p = 3 and compared with the Zassenhaus kernel filtration: the two
    // notions agree on every entry and every level.
    let p = 3u64;
    println!("genus-2 catalog, depth at p = {p} (both filtrations):");
    for entry in catalog(2) {
        let mut depth = 0;
        for k in 1..=3 {
            let perron = perron_member(&entry.automorphism, k, p).unwrap();
            let kernel =
                filtration_member(&entry.automorphism, SeriesKind::Zassenhaus(p), k).unwrap();
            assert_eq!(Verdict::from_bool(perron), kernel);
            if perron {
                depth = k;
            } else {
                break;
            }
        }
        let marker = if depth == 3 { ">=" } else { "==" };
        println!("  {:<6} depth {marker} {depth}", entry.name);
    }
    println!();

    // A p-th twist power moves each generator by a p-th power, whose Magnus
    // expansion mod p starts in degree p: depth exactly p − 1 here. The
    // p²-th power pushes past every probed level.
    let f = parse_expression(2, "Ta1^3").unwrap();
    assert!(perron_member(&f, 2, 3).unwrap());
    assert!(!perron_member(&f, 3, 3).unwrap());
    let f9 = parse_expression(2, "Ta1^9").unwrap();
    assert!(perron_member(&f9, 3, 3).unwrap());
    println!("Ta1^3 has depth exactly 2 at p = 3; Ta1^9 clears depth 3");
}
