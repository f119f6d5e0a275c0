//! Deciding weak equivalence in the four model structures, and the map that
//! separates the two localized ones.
//!
//! Run with: cargo run -p hdts --example weak_equivalences

use hdts::builders::{generator, wbar2_to_cube, GeneratorName};
use hdts::homotopy::{is_weq, ModelStructure};
use hdts::reflect::{induced_map, ReflectorKind};
use hdts::system::is_iso_map;
use hdts::Label;

fn main() {
    let x = Label::new("x");

    // The sign-forgetting comparison map out of the glued squares.
    let g = wbar2_to_cube(&x);
    println!(
        "comparison map: {} -> {} states, injective on states: {}",
        g.domain().states().len(),
        g.codomain().states().len(),
        g.injective_on_states()
    );
    for s in [ModelStructure::BlRts, ModelStructure::BlCts] {
        println!("  weq in {s:?}: {}", is_weq(&g, s).unwrap());
    }
    // The reason: the regular label collapse sends both endpoints to the
    // same three-state object, the cubical one keeps the state counts apart.
    let rts = induced_map(ReflectorKind::LsRts, &g).unwrap();
    let cts = induced_map(ReflectorKind::LsCts, &g).unwrap();
    println!(
        "  regular collapse: {} -> {} states (iso: {})",
        rts.domain().states().len(),
        rts.codomain().states().len(),
        is_iso_map(&rts)
    );
    println!(
        "  cubical collapse: {} -> {} states (iso: {})",
        cts.domain().states().len(),
        cts.codomain().states().len(),
        is_iso_map(&cts)
    );

    // The cylinder projection over one edge is a left-determined weak
    // equivalence: the parallel-edge reflector folds both action copies.
    let sigma = generator(GeneratorName::Sigma, std::slice::from_ref(&x)).unwrap();
    println!(
        "cylinder projection over the edge, weq in LdCts: {}",
        is_weq(&sigma, ModelStructure::LdCts).unwrap()
    );
}
