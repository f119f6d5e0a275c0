//! Coproducts, binary products, and the pushout whose leg misses a
//! transition that the closure rules create.
//!
//! Run with: cargo run -p hdts --example colimit_pushouts

use hdts::builders::{cube, generator, wbar3_attach, GeneratorName};
use hdts::cats::{coproduct, product, pushout, PushoutMode};
use hdts::{Label, Transition};

fn main() {
    let x = Label::new("x");
    let y = Label::new("y");

    let c1 = cube(std::slice::from_ref(&x));
    let (sum, _) = coproduct(&[c1.clone(), c1.clone()]);
    println!(
        "edge + edge: {} states, {} actions, {} transitions",
        sum.states().len(),
        sum.action_count(),
        sum.transitions().len()
    );

    let (prod, _, _) = product(
        &cube(std::slice::from_ref(&x)),
        &cube(std::slice::from_ref(&y)),
    )
    .unwrap();
    println!(
        "edge x differently-labelled edge: {} states, {} actions (labels must match)",
        prod.states().len(),
        prod.action_count()
    );
    let (prod, _, _) = product(
        &cube(std::slice::from_ref(&x)),
        &cube(std::slice::from_ref(&x)),
    )
    .unwrap();
    println!(
        "edge x same-labelled edge: {} states, {} actions, {} transitions",
        prod.states().len(),
        prod.action_count(),
        prod.transitions().len()
    );

    // Folding two sign-split edges of the glued 3-cubes: the pushout's
    // closure invents a transition crossing the two copies, so the leg is
    // not onto on transitions.
    let p = generator(GeneratorName::P, std::slice::from_ref(&x)).unwrap();
    let attach = wbar3_attach(&x).unwrap();
    let po = pushout(&p, &attach, PushoutMode::WtsCts).unwrap();
    let leg = &po.from_c;
    let cross = Transition::new(
        leg.apply_state("100-").to_string(),
        vec![leg.apply_action("um").to_string()],
        leg.apply_state("110+").to_string(),
    );
    println!(
        "\ncubical-mode pushout: {} transitions, cross transition present: {}, in the leg image: {}",
        po.object.transitions().len(),
        po.object.has_transition(&cross),
        leg.transition_image().contains(&cross)
    );

    // In the regular mode the forced state merges make the leg onto.
    let po = pushout(&p, &attach, PushoutMode::Rts).unwrap();
    println!(
        "regular-mode pushout: {} states, leg onto on transitions: {}",
        po.object.states().len(),
        po.from_c.onto_on_transitions()
    );
}
