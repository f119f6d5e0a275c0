//! Comma-category colimits: cubification, the cubical coreflection, and
//! intermediate-state saturation.
//!
//! Run with: cargo run -p hdts --example cubification

use hdts::builders::{bare_action, boundary, cube, double, pure};
use hdts::cats::{cts_coreflection, cubification, intermediate_saturation};
use hdts::hom::{iso_search, Budget};
use hdts::system::is_iso_map;
use hdts::Label;

fn main() {
    let x = Label::new("x");
    let y = Label::new("y");

    // A cube is its own cubification.
    let c = cube(&[x.clone(), y.clone()]);
    let (cc, pi) = cubification(&c, Budget::default()).unwrap();
    println!("cubification(cube) is iso to the cube: {}", is_iso_map(&pi));
    let _ = cc;

    // The double transition splits into two disjoint edges: the counit is
    // bijective on states but not injective on actions.
    let d = double(&x);
    let (cd, pid) = cubification(&d, Budget::default()).unwrap();
    println!(
        "cubification(double): {} states, {} actions; counit bijective on states: {}, injective on actions: {}",
        cd.states().len(),
        cd.action_count(),
        pid.bijective_on_states(),
        pid.injective_on_actions()
    );

    // The boundary of a square is not a colimit of cubes: each edge brings
    // its own action copy.  The coreflection over cubes *and* doubles does
    // recover it.
    let b = boundary(&[x.clone(), y.clone()]).unwrap();
    let (cb, _) = cubification(&b, Budget::default()).unwrap();
    let (core, q) = cts_coreflection(&b, Budget::default()).unwrap();
    println!(
        "boundary: cubification has {} actions (original {}), coreflection recovers it: {}",
        cb.action_count(),
        b.action_count(),
        is_iso_map(&q) && iso_search(&core, &b, Budget::default()).unwrap().is_some()
    );

    // The coreflection of an unused action is empty.
    let (e, _) = cts_coreflection(&bare_action(&x), Budget::default()).unwrap();
    println!(
        "coreflection(bare action) is empty: {}",
        e == hdts::Tsys::empty()
    );

    // Intermediate-state saturation keeps carriers and detects splittable
    // systems; the pure transition loses its unsplittable top cell.
    let p = pure(&[x.clone(), y.clone()]);
    let (sat, r) = intermediate_saturation(&p, Budget::default()).unwrap();
    println!(
        "pure transition: saturation keeps {} states / {} actions and {} transitions; counit iso: {}",
        sat.states().len(),
        sat.action_count(),
        sat.transitions().len(),
        is_iso_map(&r)
    );
}
