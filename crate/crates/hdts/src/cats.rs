//! Colimits and limits: coproducts, pushouts, binary products, and the
//! comma-category colimits (cubification, the cubical coreflection and
//! intermediate-state saturation).
//!
//! Colimits are computed set-wise and the transition set of the result is
//! the saturation of the images.  Quotient classes are canonicalized to the
//! lexicographically least member, so output is reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::axioms::classify;
use crate::builders::{bare_action, cube, double};
use crate::closure::saturate_tuples;
use crate::error::{Error, Result};
use crate::hom::{hom_search, Budget};
use crate::reflect::csa2_reflect;
use crate::system::{Label, Transition, TsMap, Tsys};
use crate::util::quotient_map;

fn tag(i: usize, name: &str) -> String {
    format!("{i}.{name}")
}

/// Disjoint union of systems, with injection maps.  Carrier names are tagged
/// with the summand index.
pub fn coproduct(parts: &[Tsys]) -> (Tsys, Vec<TsMap>) {
    let mut states = BTreeSet::new();
    let mut labelling = BTreeMap::new();
    let mut transitions = BTreeSet::new();
    for (i, p) in parts.iter().enumerate() {
        for s in p.states() {
            states.insert(tag(i, s));
        }
        for (a, l) in p.labelling() {
            labelling.insert(tag(i, a), l.clone());
        }
        for t in p.transitions() {
            transitions.insert(Transition::new(
                tag(i, &t.source),
                t.word.iter().map(|u| tag(i, u)).collect(),
                tag(i, &t.target),
            ));
        }
    }
    let sum = Tsys::new(states, labelling, transitions);
    let injections = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            TsMap::new(
                p.clone(),
                sum.clone(),
                p.states().iter().map(|s| (s.clone(), tag(i, s))).collect(),
                p.actions().map(|a| (a.clone(), tag(i, a))).collect(),
            )
            .expect("injections into the sum are morphisms")
        })
        .collect();
    (sum, injections)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PushoutMode {
    /// Set-level pushout with saturated transitions.
    WtsCts,
    /// The same followed by the unique-intermediate-state reflection.
    Rts,
}

pub struct Pushout {
    pub object: Tsys,
    pub from_b: TsMap,
    pub from_c: TsMap,
}

/// Pushout of `f: A -> B` along `g: A -> C`.  The returned legs commute with
/// `f` and `g`.
pub fn pushout(f: &TsMap, g: &TsMap, mode: PushoutMode) -> Result<Pushout> {
    if f.domain() != g.domain() {
        return Err(Error::PreconditionFailed(
            "pushout requires a common domain".into(),
        ));
    }
    let b = f.codomain();
    let c = g.codomain();
    let mut state_names = BTreeSet::new();
    let mut action_names = BTreeSet::new();
    for s in b.states() {
        state_names.insert(tag(0, s));
    }
    for s in c.states() {
        state_names.insert(tag(1, s));
    }
    for a in b.actions() {
        action_names.insert(tag(0, a));
    }
    for a in c.actions() {
        action_names.insert(tag(1, a));
    }
    let state_pairs: Vec<(String, String)> = f
        .domain()
        .states()
        .iter()
        .map(|s| (tag(0, f.apply_state(s)), tag(1, g.apply_state(s))))
        .collect();
    let action_pairs: Vec<(String, String)> = f
        .domain()
        .actions()
        .map(|a| (tag(0, f.apply_action(a)), tag(1, g.apply_action(a))))
        .collect();
    let sq = quotient_map(
        &state_names,
        state_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    );
    let aq = quotient_map(
        &action_names,
        action_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    );
    let mut labelling: BTreeMap<String, Label> = BTreeMap::new();
    for (a, l) in b.labelling() {
        labelling.insert(aq[&tag(0, a)].clone(), l.clone());
    }
    for (a, l) in c.labelling() {
        labelling.insert(aq[&tag(1, a)].clone(), l.clone());
    }
    let mut tuples = Vec::new();
    for (i, side) in [b, c].into_iter().enumerate() {
        for t in side.transitions() {
            tuples.push(Transition::new(
                sq[&tag(i, &t.source)].clone(),
                t.word.iter().map(|u| aq[&tag(i, u)].clone()).collect(),
                sq[&tag(i, &t.target)].clone(),
            ));
        }
    }
    let object = Tsys::new(
        sq.values().cloned().collect(),
        labelling,
        saturate_tuples(tuples),
    );
    let from_b = TsMap::new(
        b.clone(),
        object.clone(),
        b.states()
            .iter()
            .map(|s| (s.clone(), sq[&tag(0, s)].clone()))
            .collect(),
        b.actions()
            .map(|a| (a.clone(), aq[&tag(0, a)].clone()))
            .collect(),
    )?;
    let from_c = TsMap::new(
        c.clone(),
        object.clone(),
        c.states()
            .iter()
            .map(|s| (s.clone(), sq[&tag(1, s)].clone()))
            .collect(),
        c.actions()
            .map(|a| (a.clone(), aq[&tag(1, a)].clone()))
            .collect(),
    )?;
    match mode {
        PushoutMode::WtsCts => Ok(Pushout {
            object,
            from_b,
            from_c,
        }),
        PushoutMode::Rts => {
            let refl = csa2_reflect(&object)?;
            Ok(Pushout {
                object: refl.reflected.clone(),
                from_b: from_b.then(&refl.unit)?,
                from_c: from_c.then(&refl.unit)?,
            })
        }
    }
}

/// The map out of a pushout induced by a compatible pair of maps on its two
/// legs.
pub fn pushout_induced(po: &Pushout, u: &TsMap, v: &TsMap) -> Result<TsMap> {
    if u.codomain() != v.codomain() {
        return Err(Error::PreconditionFailed(
            "the induced map needs a common codomain".into(),
        ));
    }
    let mut state_map: BTreeMap<String, String> = BTreeMap::new();
    let mut action_map: BTreeMap<String, String> = BTreeMap::new();
    let mut feed = |leg: &TsMap, out: &TsMap| -> Result<()> {
        for (s, d) in leg.state_map() {
            let w = out.apply_state(s).to_string();
            if let Some(prev) = state_map.insert(d.clone(), w.clone()) {
                if prev != w {
                    return Err(Error::PreconditionFailed(
                        "the given maps do not agree on the glued states".into(),
                    ));
                }
            }
        }
        for (a, d) in leg.action_map() {
            let w = out.apply_action(a).to_string();
            if let Some(prev) = action_map.insert(d.clone(), w.clone()) {
                if prev != w {
                    return Err(Error::PreconditionFailed(
                        "the given maps do not agree on the glued actions".into(),
                    ));
                }
            }
        }
        Ok(())
    };
    feed(&po.from_b, u)?;
    feed(&po.from_c, v)?;
    TsMap::new(
        po.object.clone(),
        u.codomain().clone(),
        state_map,
        action_map,
    )
}

fn paired(a: &str, b: &str) -> String {
    format!("{a}:{b}")
}

/// Binary product of two cubical systems: paired states, equal-label paired
/// actions, and a tuple is a transition exactly when both coordinatewise
/// projections are.
pub fn product(x: &Tsys, y: &Tsys) -> Result<(Tsys, TsMap, TsMap)> {
    for (side, ts) in [("left", x), ("right", y)] {
        if !classify(ts).is_cubical() {
            return Err(Error::PreconditionFailed(format!(
                "the product formula needs cubical inputs; the {side} one is not"
            )));
        }
    }
    let mut states = BTreeSet::new();
    let mut proj_x_states = BTreeMap::new();
    let mut proj_y_states = BTreeMap::new();
    for s in x.states() {
        for t in y.states() {
            let name = paired(s, t);
            if !states.insert(name.clone()) {
                return Err(Error::Internal(format!(
                    "state name clash in product: {name}"
                )));
            }
            proj_x_states.insert(name.clone(), s.clone());
            proj_y_states.insert(name, t.clone());
        }
    }
    let mut labelling = BTreeMap::new();
    let mut proj_x_actions = BTreeMap::new();
    let mut proj_y_actions = BTreeMap::new();
    for (u, lu) in x.labelling() {
        for (v, lv) in y.labelling() {
            if lu != lv {
                continue;
            }
            let name = paired(u, v);
            if labelling.insert(name.clone(), lu.clone()).is_some() {
                return Err(Error::Internal(format!(
                    "action name clash in product: {name}"
                )));
            }
            proj_x_actions.insert(name.clone(), u.clone());
            proj_y_actions.insert(name, v.clone());
        }
    }
    let mut transitions = BTreeSet::new();
    for tx in x.transitions() {
        for ty in y.transitions() {
            if tx.arity() != ty.arity() {
                continue;
            }
            let labels_match = tx
                .word
                .iter()
                .zip(&ty.word)
                .all(|(u, v)| x.label_of(u) == y.label_of(v));
            if !labels_match {
                continue;
            }
            transitions.insert(Transition::new(
                paired(&tx.source, &ty.source),
                tx.word
                    .iter()
                    .zip(&ty.word)
                    .map(|(u, v)| paired(u, v))
                    .collect(),
                paired(&tx.target, &ty.target),
            ));
        }
    }
    let object = Tsys::new(states, labelling, transitions);
    let px = TsMap::new(object.clone(), x.clone(), proj_x_states, proj_x_actions)?;
    let py = TsMap::new(object.clone(), y.clone(), proj_y_states, proj_y_actions)?;
    Ok((object, px, py))
}

/// One object of a comma category over `x`: a shape index and a map into `x`.
struct CommaObject {
    shape: usize,
    map: TsMap,
}

/// Colimit of the forgetful diagram of all maps from the given shapes into
/// `x`, together with the counit into `x`.  Every morphism between
/// participating shape objects commuting over `x` contributes to the
/// quotient.
fn comma_colimit(x: &Tsys, shapes: &[Tsys], budget: Budget) -> Result<(Tsys, TsMap)> {
    let mut objects: Vec<CommaObject> = Vec::new();
    for (si, shape) in shapes.iter().enumerate() {
        for map in hom_search(shape, x, budget)? {
            objects.push(CommaObject { shape: si, map });
        }
    }
    // Nodes of the disjoint union, one per object-local state or action.
    let mut state_names = BTreeSet::new();
    let mut action_names = BTreeSet::new();
    for (oi, ob) in objects.iter().enumerate() {
        let shape = &shapes[ob.shape];
        for s in shape.states() {
            state_names.insert(tag(oi, s));
        }
        for a in shape.actions() {
            action_names.insert(tag(oi, a));
        }
    }
    let mut hom_cache: HashMap<(usize, usize), Vec<TsMap>> = HashMap::new();
    let mut state_pairs: Vec<(String, String)> = Vec::new();
    let mut action_pairs: Vec<(String, String)> = Vec::new();
    for (i, oi) in objects.iter().enumerate() {
        for (j, oj) in objects.iter().enumerate() {
            let key = (oi.shape, oj.shape);
            if let std::collections::hash_map::Entry::Vacant(e) = hom_cache.entry(key) {
                let homs = hom_search(&shapes[oi.shape], &shapes[oj.shape], budget)?;
                e.insert(homs);
            }
            for h in &hom_cache[&key] {
                let commutes = shapes[oi.shape]
                    .states()
                    .iter()
                    .all(|s| oj.map.apply_state(h.apply_state(s)) == oi.map.apply_state(s))
                    && shapes[oi.shape]
                        .actions()
                        .all(|a| oj.map.apply_action(h.apply_action(a)) == oi.map.apply_action(a));
                if !commutes {
                    continue;
                }
                for s in shapes[oi.shape].states() {
                    state_pairs.push((tag(i, s), tag(j, h.apply_state(s))));
                }
                for a in shapes[oi.shape].actions() {
                    action_pairs.push((tag(i, a), tag(j, h.apply_action(a))));
                }
            }
        }
    }
    let sq = quotient_map(
        &state_names,
        state_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    );
    let aq = quotient_map(
        &action_names,
        action_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    );
    // Name every class after its common image in x, suffixing a counter when
    // several classes share one image.
    let image_of_state_node: BTreeMap<String, String> = objects
        .iter()
        .enumerate()
        .flat_map(|(oi, ob)| {
            shapes[ob.shape]
                .states()
                .iter()
                .map(move |s| (tag(oi, s), ob.map.apply_state(s).to_string()))
        })
        .collect();
    let image_of_action_node: BTreeMap<String, String> = objects
        .iter()
        .enumerate()
        .flat_map(|(oi, ob)| {
            shapes[ob.shape]
                .actions()
                .map(move |a| (tag(oi, a), ob.map.apply_action(a).to_string()))
        })
        .collect();
    let (state_name, state_image) = class_names(&sq, &image_of_state_node)?;
    let (action_name, action_image) = class_names(&aq, &image_of_action_node)?;
    let states: BTreeSet<String> = state_name.values().cloned().collect();
    let labelling: BTreeMap<String, Label> = action_name
        .values()
        .map(|name| {
            let img = &action_image[name];
            (
                name.clone(),
                x.label_of(img).expect("image action exists").clone(),
            )
        })
        .collect();
    let mut tuples = Vec::new();
    for (oi, ob) in objects.iter().enumerate() {
        for t in shapes[ob.shape].transitions() {
            tuples.push(Transition::new(
                state_name[&sq[&tag(oi, &t.source)]].clone(),
                t.word
                    .iter()
                    .map(|u| action_name[&aq[&tag(oi, u)]].clone())
                    .collect(),
                state_name[&sq[&tag(oi, &t.target)]].clone(),
            ));
        }
    }
    let object = Tsys::new(states, labelling, saturate_tuples(tuples));
    let counit = TsMap::new(object.clone(), x.clone(), state_image, action_image)?;
    Ok((object, counit))
}

/// Maps each class root to a display name derived from the common x-image of
/// its members, and each display name to that image.
fn class_names(
    quotient: &BTreeMap<String, String>,
    image_of_node: &BTreeMap<String, String>,
) -> Result<(BTreeMap<String, String>, BTreeMap<String, String>)> {
    let mut image_of_root: BTreeMap<&String, &String> = BTreeMap::new();
    for (node, root) in quotient {
        let img = &image_of_node[node];
        if let Some(prev) = image_of_root.insert(root, img) {
            if prev != img {
                return Err(Error::Internal(
                    "a colimit class maps to two different images".into(),
                ));
            }
        }
    }
    let mut by_image: BTreeMap<&String, Vec<&String>> = BTreeMap::new();
    for (root, img) in &image_of_root {
        by_image.entry(img).or_default().push(root);
    }
    let mut name_of_root = BTreeMap::new();
    let mut image_of_name: BTreeMap<String, String> = BTreeMap::new();
    for (img, mut roots) in by_image {
        roots.sort();
        // A single class borrows the image's own name; several classes (or a
        // clash with a name already handed out) get counted suffixes.
        if roots.len() == 1 && !image_of_name.contains_key(img.as_str()) {
            name_of_root.insert(roots[0].clone(), img.clone());
            image_of_name.insert(img.clone(), img.clone());
        } else {
            let mut k = 0usize;
            for root in roots {
                let name = loop {
                    let candidate = format!("{img}.{k}");
                    k += 1;
                    if !image_of_name.contains_key(&candidate) {
                        break candidate;
                    }
                };
                name_of_root.insert(root.clone(), name.clone());
                image_of_name.insert(name, img.clone());
            }
        }
    }
    Ok((name_of_root, image_of_name))
}

fn sorted_label_words(x: &Tsys) -> BTreeSet<Vec<Label>> {
    x.transitions()
        .iter()
        .map(|t| {
            let mut w = x.label_word(&t.word);
            w.sort();
            w
        })
        .collect()
}

fn cube_shapes(x: &Tsys) -> Vec<Tsys> {
    let mut shapes = vec![cube(&[])];
    for word in sorted_label_words(x) {
        shapes.push(cube(&word));
    }
    shapes
}

fn one_transition_labels(x: &Tsys) -> BTreeSet<Label> {
    x.transitions()
        .iter()
        .filter(|t| t.arity() == 1)
        .map(|t| x.label_of(&t.word[0]).expect("validated input").clone())
        .collect()
}

/// The colimit of all cubes over `x` with its counit.  The counit is
/// bijective on states whenever `x` satisfies the two closure axioms.
pub fn cubification(x: &Tsys, budget: Budget) -> Result<(Tsys, TsMap)> {
    comma_colimit(x, &cube_shapes(x), budget)
}

/// The colimit of all cubes and double transitions over `x`; its counit is
/// an isomorphism exactly when `x` is cubical.
pub fn cts_coreflection(x: &Tsys, budget: Budget) -> Result<(Tsys, TsMap)> {
    let mut shapes = cube_shapes(x);
    for l in one_transition_labels(x) {
        shapes.push(double(&l));
    }
    comma_colimit(x, &shapes, budget)
}

/// The colimit of all cubes and bare actions over `x`: keeps the carriers of
/// `x` and keeps exactly the transitions generated by cube images.  The
/// counit is an isomorphism exactly when `x` splits every transition.
pub fn intermediate_saturation(x: &Tsys, budget: Budget) -> Result<(Tsys, TsMap)> {
    let mut shapes = cube_shapes(x);
    for l in x.labels() {
        shapes.push(bare_action(&l));
    }
    comma_colimit(x, &shapes, budget)
}
