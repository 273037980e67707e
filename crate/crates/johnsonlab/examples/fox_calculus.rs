//! Fox's free differential calculus on the integral group ring.
//!
//! The Fox derivative `∂/∂x_j` is the unique additive map on `Z[F]` with
//! `∂x_i/∂x_j = δ_ij` and the product rule `∂(uv) = ∂u + u·∂v`. Iterating
//! derivatives and applying the augmentation (sum of coefficients) reads off
//! Taylor-style coefficients of a word; the bar involution `w ↦ w⁻¹` with
//! transposed order shows up when derivatives are arranged into matrices.
//!
//! Run with `cargo run --example fox_calculus`.

use johnsonlab::freegroup::{commutator, Word};
use johnsonlab::groupring::{fox_derivative, CoefficientRing, GroupRingElement};

fn main() {
    let rank = 4;
    let u = Word::parse(rank, "x1 x2 X1").unwrap();
    let v = Word::parse(rank, "x2 x2").unwrap();

    // First derivatives of a short word, all four variables.
    println!("u = {u}");
    for j in 1..=rank {
        println!("  du/dx{j} = {}", fox_derivative(&u, j));
    }
    println!();

    // The product rule, verified on u·v.
    let uv = u.mul(&v);
    for j in 1..=rank {
        let lhs = fox_derivative(&uv, j);
        let rhs = fox_derivative(&u, j)
            .add(&GroupRingElement::from_word(u.clone(), CoefficientRing::Integers)
                .mul(&fox_derivative(&v, j)));
        assert_eq!(lhs, rhs);
    }
    println!("product rule d(uv) = du + u·dv holds for u·v = {uv}");

    // Inverses: d(u^-1) = -u^-1 · du.
    let j = 1;
    let lhs = fox_derivative(&u.inverse(), j);
    let rhs = GroupRingElement::from_word(u.inverse(), CoefficientRing::Integers)
        .neg()
        .mul(&fox_derivative(&u, j));
    assert_eq!(lhs, rhs);
    println!("inverse rule d(u^-1) = -u^-1·du holds at j = {j}");
    println!();

    // Higher derivatives iterate; the innermost index is applied first, so
    // `m = [2, 1]` means "derive by x2, then derive the result by x1".
    let c = commutator(&Word::generator(rank, 1), &Word::generator(rank, 2));
    let e = GroupRingElement::from_word(c.clone(), CoefficientRing::Integers);
    println!("c = [x1,x2] = {c}");
    for m in [vec![1], vec![2], vec![2, 1], vec![1, 2]] {
        let d = e.higher_fox_derivative(&m);
        println!("  D{m:?} c = {d}   (augmentation {})", d.augmentation());
    }
    println!();

    // A commutator has augmentation-zero first derivatives, so its depth in
    // the augmentation filtration is visible only from degree two on; the
    // two mixed second derivatives carry opposite signs.
    let d21 = e.higher_fox_derivative(&[2, 1]).augmentation();
    let d12 = e.higher_fox_derivative(&[1, 2]).augmentation();
    assert_eq!(d21, -d12);

    // The bar involution reverses words: sums of derivative rows of an
    // automorphism image live naturally on the barred side.
    let d = fox_derivative(&u, 2);
    println!("du/dx2        = {d}");
    println!("bar(du/dx2)   = {}", d.bar());

    // Mod-p coefficients are a ring choice, not a post-processing step.
    let e3 = GroupRingElement::from_word(c.pow(3), CoefficientRing::PrimeField(3));
    println!("d(c^3)/dx1 over F3 = {}", e3.fox_derivative(1));
}
