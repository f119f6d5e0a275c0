//! The five reflections, and the fixture on which the cubical and regular
//! flavours of the parallel-edge reflection genuinely differ.
//!
//! Run with: cargo run -p hdts --example reflections

use hdts::axioms::classify;
use hdts::builders::{csa1diff, intro, wbar2};
use hdts::hom::{iso_search, Budget};
use hdts::reflect::{
    csa1_reflect_cts, csa1_reflect_rts, csa2_reflect, ls_reflect_cts, ls_reflect_rts,
};
use hdts::Label;

fn main() {
    // Collapsing the fan of intermediate states.
    let fan = intro(3).unwrap();
    let r = csa2_reflect(&fan).unwrap();
    println!(
        "fan: {} states -> {} states after the unique-split reflection",
        fan.states().len(),
        r.reflected.states().len()
    );
    for e in &r.trace {
        println!("  merge: {e:?}");
    }

    // The divergence fixture: merging parallel same-label edges in the
    // cubical world preserves states ...
    let x = csa1diff();
    let cts = csa1_reflect_cts(&x).unwrap();
    println!(
        "\ndivergence fixture: {} actions -> {} (cubical flavour), states kept: {}",
        x.action_count(),
        cts.reflected.action_count(),
        cts.unit.bijective_on_states()
    );
    // ... and the composite with the state quotient still differs from the
    // regular flavour, which keeps merging after states collapse.
    let both = csa2_reflect(&cts.reflected).unwrap();
    let rts = csa1_reflect_rts(&x).unwrap();
    println!(
        "composite: {} actions; regular flavour: {} actions; isomorphic: {}",
        both.reflected.action_count(),
        rts.reflected.action_count(),
        iso_search(&both.reflected, &rts.reflected, Budget::default())
            .unwrap()
            .is_some()
    );

    // Label collapse: states survive in the cubical flavour, merge in the
    // regular one.
    let w = wbar2(&Label::new("x"));
    let lc = ls_reflect_cts(&w).unwrap();
    let lr = ls_reflect_rts(&w).unwrap();
    println!(
        "\nglued squares under label collapse: cubical {} states / regular {} states",
        lc.reflected.states().len(),
        lr.reflected.states().len()
    );
    println!(
        "both outputs have injective labelling: {} / {}",
        classify(&lc.reflected).deterministic_labelling,
        classify(&lr.reflected).deterministic_labelling
    );
}
