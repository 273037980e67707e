//! The Magnus embedding and its bridge to Fox derivatives.
//!
//! Sending each generator to `1 + w_i` embeds the free group into the units
//! of a noncommutative power-series ring. Word problems become coefficient
//! problems: the valuation (least positive degree with a nonzero term)
//! locates a word in the series filtrations, and each series coefficient is
//! an iterated Fox derivative of the word, evaluated via the augmentation.
//!
//! Run with `cargo run --example magnus_embedding`.

use johnsonlab::freegroup::{commutator, Word};
use johnsonlab::groupring::{CoefficientRing, GroupRingElement};
use johnsonlab::magnus::{
    bridge_multi_index, magnus_embed, series_inverse, series_mul, valuation_with_witness,
};

fn main() {
    let rank = 4;
    let ring = CoefficientRing::Integers;

    // Generators embed as 1 + w_i; products multiply, truncated by degree.
    let x1 = magnus_embed(&Word::generator(rank, 1), 3, ring).unwrap();
    let x2 = magnus_embed(&Word::generator(rank, 2), 3, ring).unwrap();
    println!("embed(x1)       = {x1}");
    println!("embed(x1 x2)    = {}", series_mul(&x1, &x2).unwrap());
    println!("embed(x1)^-1    = {}", series_inverse(&x1).unwrap());
    println!();

    // A commutator starts in degree 2: embed([x1,x2]) = 1 + (w1w2 - w2w1) + ...
    let c = commutator(&Word::generator(rank, 1), &Word::generator(rank, 2));
    let s = magnus_embed(&c, 4, ring).unwrap();
    println!("embed([x1,x2])  = {s}");

    // Valuations come with a witness monomial at the leading degree.
    for (label, w, ring) in [
        ("[x1,x2]", c.clone(), CoefficientRing::Integers),
        ("[[x1,x2],x3]", commutator(&c, &Word::generator(rank, 3)), CoefficientRing::Integers),
        ("x1^3 over Z", Word::generator(rank, 1).pow(3), CoefficientRing::Integers),
        ("x1^3 over F3", Word::generator(rank, 1).pow(3), CoefficientRing::PrimeField(3)),
    ] {
        let (v, witness) = valuation_with_witness(&w, ring, 4).unwrap();
        println!("  valuation({label:<13}) = {v}   witness {witness:?}");
    }
    println!();

    // The bridge: the coefficient of w_{m1}···w_{ml} in embed(u) equals the
    // augmentation of the iterated Fox derivative of u taken in *reversed*
    // index order. `bridge_multi_index` performs that reversal.
    let u = Word::parse(rank, "x1 x2 x1 X2").unwrap();
    let s = magnus_embed(&u, 3, ring).unwrap();
    let e = GroupRingElement::from_word(u.clone(), ring);
    println!("u = {u}, embed(u) = {s}");
    for monomial in [vec![1], vec![1, 2], vec![2, 1], vec![1, 2, 1]] {
        let from_series = s.coefficient(&monomial).unwrap();
        let m = bridge_multi_index(&monomial);
        let from_fox = e.higher_fox_derivative(&m).augmentation();
        assert_eq!(from_series, from_fox);
        println!(
            "  coeff of w{monomial:?} = {from_series}  =  augmentation of D{m:?} u"
        );
    }
    println!();

    // Over F_p the same machinery computes mod-p valuations: x1^p vanishes
    // through degree p-1 and first appears at degree p.
    let p = 3u64;
    let wp = Word::generator(rank, 1).pow(p as i64);
    let sp = magnus_embed(&wp, p as usize, CoefficientRing::PrimeField(p)).unwrap();
    println!("embed(x1^{p}) over F{p} = {sp}");
}
