//! Words in a surface group and the three descending series.
//!
//! The fundamental group of a genus-`g` surface with one boundary component
//! is free of rank `2g`; generators pair into handles `(a_i, b_i) =
//! (x_{2i-1}, x_{2i})` and the boundary is the product of their commutators.
//! This example builds a few words and asks each membership oracle where
//! they sit: the lower central series over `Z`, the Stallings series, and
//! the mod-`p` Zassenhaus series.
//!
//! Run with `cargo run --example words_and_filtrations`.

use johnsonlab::filtrations::{in_lcs, in_zassenhaus, membership, SeriesKind, Verdict};
use johnsonlab::freegroup::{boundary_word, commutator, Word};

fn main() {
    let rank = 4; // genus 2

    // Words parse as whitespace-separated letters: `x3` is a generator,
    // `X3` its inverse, and the empty string (or `e`) is the identity.
    let u = Word::parse(rank, "x1 x2 X1 X2").unwrap();
    println!("u            = {u}");
    println!("u^-1         = {}", u.inverse());
    println!("u * u^-1     = {}", u.mul(&u.inverse()));
    println!("[x3, u]      = {}", commutator(&Word::generator(rank, 3), &u));
    println!("boundary(g2) = {}", boundary_word(2));
    println!();

    // Commutator depth in the lower central series: [x1,x2] sits at level 2
    // and no deeper, [[x1,x2],x3] at level 3.
    let c = commutator(&Word::generator(rank, 1), &Word::generator(rank, 2));
    let deep = commutator(&c, &Word::generator(rank, 3));
    for (label, w) in [("[x1,x2]", &c), ("[[x1,x2],x3]", &deep)] {
        let depth = (1..=6)
            .take_while(|&k| in_lcs(w, k).unwrap())
            .last()
            .unwrap();
        println!("{label:<13} lies in LCS level {depth} but not {}", depth + 1);
    }
    println!();

    // The p-th power of a generator separates the three series: it is not a
    // commutator, the Stallings series absorbs it at depth 2 exactly, and
    // the Zassenhaus series absorbs it at depth p exactly.
    for p in [3u64, 5] {
        let wp = Word::generator(rank, 1).pow(p as i64);
        println!("w = x1^{p}:");
        for (kind, depth) in [
            (SeriesKind::Lcs, 2),
            (SeriesKind::Stallings(p), 2),
            (SeriesKind::Stallings(p), 3),
            (SeriesKind::Zassenhaus(p), p as usize),
            (SeriesKind::Zassenhaus(p), p as usize + 1),
        ] {
            let report = membership(&wp, kind, depth).unwrap();
            print!("  {:<10} depth {depth}: {:?}", report.series, report.verdict);
            if let Some(m) = &report.witness_monomial {
                print!("  (witness monomial {m:?})");
            }
            println!();
        }
    }
    println!();

    // Exactness boundaries are reported honestly. The Stallings oracle is
    // exact through depth 3 and answers `Unknown` past that for words it
    // cannot decide -- except the identity, which lies in every subgroup.
    let r = membership(&c, SeriesKind::Stallings(3), 4).unwrap();
    println!("[x1,x2] in Stallings depth 4: {:?}", r.verdict);
    let id = membership(&Word::identity(rank), SeriesKind::Stallings(3), 9).unwrap();
    assert_eq!(id.verdict, Verdict::True);
    println!("empty word in Stallings depth 9: {:?}", id.verdict);

    // Deep Zassenhaus and LCS queries stay exact at any depth.
    println!(
        "x1^9 in Zassenhaus(3) depth 9: {}",
        in_zassenhaus(&Word::generator(rank, 1).pow(9), 9, 3).unwrap()
    );
}
