//! The cylinder, its structure maps, and homotopy rigidity: distinct maps
//! into a regular system without same-label parallel edges are never
//! homotopic.
//!
//! Run with: cargo run -p hdts --example cylinder_homotopy

use hdts::builders::{cube, double, intro};
use hdts::hom::{hom_search, iso_search, Budget};
use hdts::homotopy::{are_homotopic, cyl, is_cofibration};
use hdts::reflect::csa2_reflect;
use hdts::Label;

fn main() {
    let x = Label::new("x");
    let c1 = cube(std::slice::from_ref(&x));
    let bundle = cyl(&c1).unwrap();
    println!(
        "cylinder of an edge: {} states, {} actions, {} transitions",
        bundle.cyl.states().len(),
        bundle.cyl.action_count(),
        bundle.cyl.transitions().len()
    );
    println!(
        "both end inclusions retract along the projection: {}",
        bundle.gamma0.then(&bundle.sigma).unwrap().is_identity()
            && bundle.gamma1.then(&bundle.sigma).unwrap().is_identity()
    );
    println!(
        "the end inclusions are cofibrations: {}",
        is_cofibration(&bundle.gamma0).unwrap() && is_cofibration(&bundle.gamma1).unwrap()
    );

    // The cylinder commutes with the state quotient.
    let fan = intro(2).unwrap();
    let left = csa2_reflect(&cyl(&fan).unwrap().cyl).unwrap().reflected;
    let right = cyl(&csa2_reflect(&fan).unwrap().reflected).unwrap().cyl;
    println!(
        "csa2(cyl(fan)) iso to cyl(csa2(fan)): {}",
        iso_search(&left, &right, Budget::default())
            .unwrap()
            .is_some()
    );

    // Rigidity: the two ways of mapping the edge into the double transition
    // agree nowhere, and no homotopy connects them.
    let d = double(&x);
    let maps = hom_search(&c1, &d, Budget::default()).unwrap();
    println!(
        "maps edge -> double: {}; homotopic(f, f) = {}; homotopic(f, g) = {}",
        maps.len(),
        are_homotopic(&maps[0], &maps[0]).unwrap(),
        are_homotopic(&maps[0], &maps[1]).unwrap()
    );
}
