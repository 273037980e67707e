//! Mapping classes as boundary-fixing automorphisms of the free group.
//!
//! A mapping class of the bordered surface acts on the fundamental group and
//! fixes the boundary word exactly (not just up to conjugacy). The catalog
//! names standard generators -- Dehn twists along the `a`, `b`, chain, and
//! cross-handle curves, separating twists, bounding-pair maps, handle
//! rotations -- and an expression grammar composes them.
//!
//! Run with `cargo run --example mapping_classes`.

use johnsonlab::freegroup::boundary_word;
use johnsonlab::mapclass::{
    catalog, congruence_level, parse_expression, twist_a, twist_b, twist_separating,
};
use johnsonlab::symplectic::symplectic_rep;

fn main() {
    // The genus-2 catalog, with each entry's action on the generators.
    println!("genus-2 catalog:");
    for entry in catalog(2) {
        let f = &entry.automorphism;
        let images: Vec<String> = f.images().iter().map(|w| w.to_string()).collect();
        println!("  {:<6} {:?}", entry.name, images);
    }
    println!("(genus 1 has {} entries, genus 3 has {})", catalog(1).len(), catalog(3).len());
    println!();

    // Every entry fixes the boundary word on the nose.
    let boundary = boundary_word(2);
    for entry in catalog(2) {
        assert_eq!(entry.automorphism.apply(&boundary), boundary);
    }
    println!("all genus-2 entries fix the boundary {boundary}");
    println!();

    // Expressions: `*` composes left to right, `^` raises to a power.
    let f = parse_expression(2, "Ta1*Tb1^-2*bp12").unwrap();
    println!("f = {}", f.label());
    println!("  f(x1)      = {}", f.image(1));
    println!("  f^-1(f(x1)) = {}", f.invert().apply(f.image(1)));
    println!();

    // The braid relation holds exactly on the free group, not merely on
    // homology: aba = bab for twists along curves meeting once.
    let a = twist_a(2, 1).unwrap();
    let b = twist_b(2, 1).unwrap();
    let aba = a.compose(&b).unwrap().compose(&a).unwrap();
    let bab = b.compose(&a).unwrap().compose(&b).unwrap();
    assert_eq!(aba.images(), bab.images());
    println!("braid relation: Ta1·Tb1·Ta1 = Tb1·Ta1·Tb1");

    // The chain relation: (Ta1·Tb1)^6 equals the separating twist around
    // the first handle.
    let chain = a.compose(&b).unwrap().pow(6);
    let sep = twist_separating(2, 1).unwrap();
    assert_eq!(chain.images(), sep.images());
    println!("chain relation: (Ta1·Tb1)^6 = sep1");
    println!();

    // Homology actions: twists act by transvections, bounding pairs and
    // separating twists act trivially, rotations symplectically.
    println!("homology action of Ta1 (transvection):");
    println!("{}", symplectic_rep(&a).unwrap());
    let bp = parse_expression(2, "bp12").unwrap();
    assert!(bp.is_homologically_trivial());
    assert!(sep.is_homologically_trivial());
    println!("bp12 and sep1 act trivially on homology");
    println!();

    // Congruence depth of the homology action: 1 means trivial mod p, 2
    // means trivial mod p². Torelli maps (trivial over Z) reach depth 2;
    // the cube of a twist only reaches depth 1 at p = 3.
    let p = 3;
    for expr in ["Ta1", "Ta1^3", "bp12", "sep1", "rot1"] {
        let g = parse_expression(2, expr).unwrap();
        println!("  congruence level of {expr:<6} mod {p}: {}", congruence_level(&g, p));
    }
}
