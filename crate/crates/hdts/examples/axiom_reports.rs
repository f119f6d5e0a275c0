//! Classify a few systems and print which axioms hold.
//!
//! Run with: cargo run -p hdts --example axiom_reports

use hdts::axioms::classify;
use hdts::builders::{bare_action, cube, double, intro, pure, zx};
use hdts::Label;

fn main() {
    let x = Label::new("x");
    let y = Label::new("y");
    let systems = [
        ("cube [x,y]", cube(&[x.clone(), y.clone()])),
        ("cube [x,x]", cube(&[x.clone(), x.clone()])),
        ("pure [x,y]", pure(&[x.clone(), y.clone()])),
        ("double x", double(&x)),
        ("bare action x", bare_action(&x)),
        ("zx fixture", zx(&x)),
        ("intro fan, n=3", intro(3).unwrap()),
    ];
    println!(
        "{:<16} {:>5} {:>7} {:>7} | weak cubical regular csa1 fibrant",
        "system", "sts", "acts", "trans"
    );
    for (name, ts) in systems {
        let r = classify(&ts);
        println!(
            "{:<16} {:>5} {:>7} {:>7} | {:>4} {:>7} {:>7} {:>4} {:>7}",
            name,
            ts.states().len(),
            ts.action_count(),
            ts.transitions().len(),
            r.is_weak(),
            r.is_cubical(),
            r.is_regular(),
            r.csa1.holds,
            r.combinatorially_fibrant.holds,
        );
    }

    // Witnesses say exactly where an axiom breaks.
    let fan = intro(3).unwrap();
    let r = classify(&fan);
    println!("\nwhy the fan is not regular:");
    for w in r.unique_intermediate_state.witnesses.iter().take(3) {
        println!("  {w}");
    }
}
