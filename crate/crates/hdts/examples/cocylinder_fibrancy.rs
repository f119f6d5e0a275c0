//! The cocylinder, combinatorial fibrancy, and the generator maps whose
//! injectivity characterizes it.
//!
//! Run with: cargo run -p hdts --example cocylinder_fibrancy

use hdts::axioms::{combinatorial_fibrancy, is_combinatorially_fibrant};
use hdts::builders::{cube, generator, wbar2, GeneratorName};
use hdts::hom::{hom_count, iso_search, Budget};
use hdts::homotopy::{cocyl, cyl, injective_wrt};
use hdts::reflect::ls_reflect_cts;
use hdts::Label;

fn main() {
    let x = Label::new("x");
    let y = Label::new("y");

    // Fibrancy holds exactly when same-label actions are interchangeable in
    // every transition.
    for (name, ts) in [
        ("cube [x,y]", cube(&[x.clone(), y.clone()])),
        ("cube [x,x]", cube(&[x.clone(), x.clone()])),
        ("glued squares", wbar2(&x)),
    ] {
        let verdict = combinatorial_fibrancy(&ts, 2);
        println!("{name}: fibrant = {}", verdict.holds);
        for w in &verdict.witnesses {
            println!("  witness: {w}");
        }
    }

    // Injectivity against the edge-doubling generator detects the same
    // failure.
    let theta = generator(GeneratorName::Theta, std::slice::from_ref(&x)).unwrap();
    println!(
        "theta-injective: cube[x,y] = {}, cube[x,x] = {}",
        injective_wrt(&cube(&[x.clone(), y.clone()]), &theta, Budget::default()).unwrap(),
        injective_wrt(&cube(&[x.clone(), x.clone()]), &theta, Budget::default()).unwrap()
    );

    // Label collapse always produces a fibrant system.
    let collapsed = ls_reflect_cts(&wbar2(&x)).unwrap().reflected;
    println!(
        "label-collapsed glued squares fibrant: {}",
        is_combinatorially_fibrant(&collapsed)
    );

    // The cocylinder is right adjoint to the cylinder: hom-set sizes match.
    let a = cube(std::slice::from_ref(&x));
    let target = cube(&[x.clone(), x.clone()]);
    let lhs = hom_count(&cyl(&a).unwrap().cyl, &target, Budget::default()).unwrap();
    let rhs = hom_count(
        &a,
        &cocyl(&target, Budget::default()).unwrap().cocyl,
        Budget::default(),
    )
    .unwrap();
    println!("adjunction count on (edge, square): {lhs} = {rhs}");

    // On an edge the cocylinder is the edge again.
    let co = cocyl(&a, Budget::default()).unwrap();
    println!(
        "cocyl(edge) iso to edge: {}",
        iso_search(&co.cocyl, &a, Budget::default())
            .unwrap()
            .is_some()
    );
}
