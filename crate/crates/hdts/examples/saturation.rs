//! The closure rules at work: permutations, the 5-premise composition rule,
//! and a final lift gluing two squares into one system.
//!
//! Run with: cargo run -p hdts --example saturation

use std::collections::{BTreeMap, BTreeSet};

use hdts::builders::{cube, wbar2};
use hdts::closure::saturate;
use hdts::{Label, Transition, Tsys};

fn t(src: &str, word: &[&str], tgt: &str) -> Transition {
    Transition::new(
        src.to_string(),
        word.iter().map(|w| w.to_string()).collect(),
        tgt.to_string(),
    )
}

fn main() {
    // Five premise tuples force the middle tuple (n = 3, p = q = 1).
    let states: BTreeSet<String> = ["a", "b", "n1", "n2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let labelling: BTreeMap<String, Label> = ["u1", "u2", "u3"]
        .iter()
        .map(|a| (a.to_string(), Label::new("x")))
        .collect();
    let premises: BTreeSet<Transition> = [
        t("a", &["u1", "u2", "u3"], "b"),
        t("a", &["u1"], "n1"),
        t("n1", &["u2", "u3"], "b"),
        t("a", &["u1", "u2"], "n2"),
        t("n2", &["u3"], "b"),
    ]
    .into();
    let raw = Tsys::new(states, labelling, premises);
    let closed = saturate(&raw);
    println!("before closure: {} tuples", raw.transitions().len());
    println!("after closure:  {} tuples", closed.transitions().len());
    println!(
        "the composition rule inserted (n1,u2,n2): {}",
        closed.has_transition(&t("n1", &["u2"], "n2"))
    );
    for tr in closed.transitions() {
        if !raw.has_transition(tr) {
            println!("  new: {tr}");
        }
    }

    // Saturation is idempotent and fixes already-closed systems.
    let square = cube(&[Label::new("x"), Label::new("y")]);
    println!("\nsaturate(cube) == cube: {}", saturate(&square) == square);

    // The glued-squares fixture is itself a final lift of two square cones.
    let w = wbar2(&Label::new("x"));
    println!(
        "glued squares: {} states, {} actions, {} transitions",
        w.states().len(),
        w.action_count(),
        w.transitions().len()
    );
    for tr in w.transitions().iter().filter(|t| t.arity() == 2) {
        println!("  top cell: {tr}");
    }
}
