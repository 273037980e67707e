//! The depth-one invariant of the Stallings series and p-th twist powers.
//!
//! The Stallings quotient at depth two is `∧²H ⊕ H` over `F_p`: a wedge part
//! remembering commutators and a linear part remembering p-th powers. The
//! depth-one invariant of a mod-p Torelli map records both per generator;
//! its linear parts assemble into a matrix in the symplectic Lie algebra
//! which, on the p-th power of a twist, recovers the twist's homology
//! direction.
//!
//! Run with `cargo run --example twist_powers_mod_p`.

use johnsonlab::groupring::CoefficientRing;
use johnsonlab::johnson::tau1_s;
use johnsonlab::mapclass::{catalog, congruence_level, parse_expression, CatalogKind};
use johnsonlab::symplectic::{sp_abel, symplectic_rep, SpMatrix};

fn main() {
    let genus = 2;
    let p = 3u64;

    // Ta1^3 is trivial on mod-3 homology, so tau_1^S applies. Its columns
    // live in ∧²H ⊕ H; the linear parts assemble into an sp-Lie matrix.
    let f = parse_expression(genus, &format!("Ta1^{p}")).unwrap();
    let v = tau1_s(&f, p).unwrap();
    for (i, col) in v.columns().iter().enumerate() {
        println!(
            "x{}: wedge {:?}, linear {:?}",
            i + 1,
            col.wedge(),
            col.linear()
        );
    }
    println!("sp part of tau_1^S(Ta1^{p}):");
    println!("{}", v.sp_part());
    assert!(v.sp_part().is_sp_lie());
    println!();

    // On p-th powers of twists the sp part equals the mod-p abelianization
    // of the twist's own homology action -- the invariant sees which twist
    // was raised to the p.
    for entry in catalog(genus) {
        let twist = matches!(
            entry.kind,
            CatalogKind::TwistA(_)
                | CatalogKind::TwistB(_)
                | CatalogKind::TwistChain(_, _)
                | CatalogKind::TwistBminus(_, _)
        );
        if !twist {
            continue;
        }
        let fp = entry.automorphism.pow(p as i64);
        let got = tau1_s(&fp, p).unwrap();
        let expected = sp_abel(&symplectic_rep(&fp).unwrap(), p).unwrap();
        assert_eq!(*got.sp_part(), expected);
        // For a transvection T = Id + N with N² = 0, T^p = Id + pN, so the
        // logarithm recovers N: the homology direction of the single twist.
        let n = symplectic_rep(&entry.automorphism)
            .unwrap()
            .sub(&SpMatrix::identity(genus, CoefficientRing::Integers))
            .unwrap()
            .reduced_mod(p)
            .unwrap();
        assert_eq!(expected, n);
        println!(
            "sp part of tau_1^S({0}^{p}) = sp_abel(Ψ({0}^{p})) = Ψ({0}) − Id mod {p}",
            entry.name
        );
    }
    println!();

    // Vanishing families: separating twists and p-th powers of bounding
    // pairs have zero invariant, and so does the p²-th power of any twist.
    let sep = parse_expression(genus, "sep1").unwrap();
    assert!(tau1_s(&sep, p).unwrap().is_zero());
    let bp = parse_expression(genus, "bp12").unwrap();
    assert!(tau1_s(&bp.pow(p as i64), p).unwrap().is_zero());
    let deep = parse_expression(genus, "Ta1").unwrap().pow((p * p) as i64);
    assert_eq!(congruence_level(&deep, p), 2);
    assert!(tau1_s(&deep, p).unwrap().is_zero());
    println!("tau_1^S kills sep1, bp12^{p}, and Ta1^{}", p * p);

    // A bounding pair itself is Torelli, hence mod-p Torelli: its invariant
    // is nonzero but purely wedge (no linear part, so the sp part is zero).
    let vbp = tau1_s(&bp, p).unwrap();
    assert!(!vbp.is_zero());
    assert!(vbp.columns().iter().all(|c| c.linear().iter().all(|&x| x == 0)));
    println!("tau_1^S(bp12) is nonzero but has no linear part");
}
