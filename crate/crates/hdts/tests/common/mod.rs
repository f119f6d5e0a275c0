//! Shared fixtures for the integration suites: the named corpus and a
//! seeded generator of random cubical systems.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hdts::builders::{boundary, csa1diff, cube, double, intro, pure, wbar2, wbar3, zx};
use hdts::closure::{final_lift, ProfileMap};
use hdts::system::{omega, SetProfile};
use hdts::{Label, Tsys};

pub fn lbl(s: &str) -> Label {
    Label::new(s)
}

/// The named systems most tests quantify over.
pub fn corpus() -> Vec<(&'static str, Tsys)> {
    let a = lbl("a");
    let b = lbl("b");
    let c = lbl("c");
    vec![
        ("cube[a]", cube(std::slice::from_ref(&a))),
        ("cube[a,b]", cube(&[a.clone(), b.clone()])),
        ("cube[a,a]", cube(&[a.clone(), a.clone()])),
        ("cube[a,b,c]", cube(&[a.clone(), b.clone(), c.clone()])),
        ("cube[a,a,b]", cube(&[a.clone(), a.clone(), b.clone()])),
        ("boundary[a,b]", boundary(&[a.clone(), b.clone()]).unwrap()),
        ("double[a]", double(&a)),
        ("zx[a]", zx(&a)),
        ("intro(1)", intro(1).unwrap()),
        ("intro(2)", intro(2).unwrap()),
        ("intro(3)", intro(3).unwrap()),
        ("csa1diff", csa1diff()),
        ("wbar2[a]", wbar2(&a)),
        ("wbar3[a]", wbar3(&a)),
        ("pure[a,b]", pure(&[a.clone(), b.clone()])),
        ("bare[a]", hdts::builders::bare_action(&a)),
    ]
}

/// Corpus members that are cubical.
pub fn cubical_corpus() -> Vec<(&'static str, Tsys)> {
    corpus()
        .into_iter()
        .filter(|(_, ts)| hdts::axioms::classify(ts).is_cubical())
        .collect()
}

/// Corpus members that are regular.
pub fn regular_corpus() -> Vec<(&'static str, Tsys)> {
    corpus()
        .into_iter()
        .filter(|(_, ts)| hdts::axioms::classify(ts).is_regular())
        .collect()
}

/// A random cubical system: the final lift of a few cubes and doubles over
/// a randomly glued profile.  Cubicality is guaranteed by construction
/// because every profile carrier is hit by a contributing shape.
///
/// Half of the instances glue the extremal corners of every square-or-larger
/// shape together, which makes intermediate states ambiguous and keeps the
/// state-collapsing reflection non-trivial on a healthy share of the corpus.
pub fn random_cubical(rng: &mut ChaCha8Rng) -> Tsys {
    let labels = [lbl("a"), lbl("b")];
    let random_shape = |rng: &mut ChaCha8Rng| match rng.random_range(0..4) {
        0 => cube(&[labels[rng.random_range(0..2)].clone()]),
        1 | 2 => cube(&[
            labels[rng.random_range(0..2)].clone(),
            labels[rng.random_range(0..2)].clone(),
        ]),
        _ => double(&labels[rng.random_range(0..2)].clone()),
    };
    // A third of the instances start from two equally-labelled squares so
    // the corner gluing below can duplicate an intermediate state.
    let glue_twins = rng.random_range(0..3) == 0;
    let shapes: Vec<Tsys> = if glue_twins {
        let twin = cube(&[
            labels[rng.random_range(0..2)].clone(),
            labels[rng.random_range(0..2)].clone(),
        ]);
        let mut v = vec![twin.clone(), twin];
        if rng.random_range(0..2) == 0 {
            v.push(random_shape(rng));
        }
        v
    } else {
        let shape_count = rng.random_range(1..=3);
        (0..shape_count).map(|_| random_shape(rng)).collect()
    };
    // Tagged disjoint union of the shape profiles.
    let mut state_names: Vec<String> = Vec::new();
    let mut action_names: Vec<(String, Label)> = Vec::new();
    for (i, s) in shapes.iter().enumerate() {
        for st in s.states() {
            state_names.push(format!("{i}.{st}"));
        }
        for (a, l) in s.labelling() {
            action_names.push((format!("{i}.{a}"), l.clone()));
        }
    }
    // Random merges: a few state pairs, at most one same-label action pair.
    let mut state_repr: BTreeMap<String, String> =
        state_names.iter().map(|s| (s.clone(), s.clone())).collect();
    let resolve = |m: &BTreeMap<String, String>, mut k: String| -> String {
        while m[&k] != k {
            k = m[&k].clone();
        }
        k
    };
    let merge_states = |m: &mut BTreeMap<String, String>, a: String, b: String| {
        let (ra, rb) = (resolve(m, a), resolve(m, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            m.insert(hi, lo);
        }
    };
    let mut action_repr: BTreeMap<String, String> = action_names
        .iter()
        .map(|(a, _)| (a.clone(), a.clone()))
        .collect();
    let mut forced_action_merges: Vec<(String, String)> = Vec::new();
    if glue_twins || (rng.random_range(0..2) == 0 && shapes.len() >= 2) {
        // Corner-glue the squares (identify all initial and all final
        // corners) and share their first-coordinate action when the labels
        // agree; a transition of one square then splits through states of
        // the other.
        let squares: Vec<usize> = shapes
            .iter()
            .enumerate()
            .filter(|(_, s)| s.states().contains("00"))
            .map(|(i, _)| i)
            .collect();
        for w in squares.windows(2) {
            merge_states(
                &mut state_repr,
                format!("{}.00", w[0]),
                format!("{}.00", w[1]),
            );
            merge_states(
                &mut state_repr,
                format!("{}.11", w[0]),
                format!("{}.11", w[1]),
            );
            // Sharing both coordinate actions makes the two squares fill the
            // same 2-transition, so its intermediate state stops being
            // unique.
            for coord in [":1", ":2"] {
                let action = |i: usize| {
                    shapes[i]
                        .labelling()
                        .iter()
                        .find(|(a, _)| a.ends_with(coord))
                        .map(|(a, l)| (a.clone(), l.clone()))
                };
                if let (Some((a0, l0)), Some((a1, l1))) = (action(w[0]), action(w[1])) {
                    if l0 == l1 {
                        forced_action_merges
                            .push((format!("{}.{a0}", w[0]), format!("{}.{a1}", w[1])));
                    }
                }
            }
        }
    }
    for _ in 0..rng.random_range(0..=3) {
        let i = rng.random_range(0..state_names.len());
        let j = rng.random_range(0..state_names.len());
        merge_states(
            &mut state_repr,
            state_names[i].clone(),
            state_names[j].clone(),
        );
    }
    for (a, b) in forced_action_merges {
        merge_states(&mut action_repr, a, b);
    }
    if rng.random_range(0..3) == 0 && action_names.len() >= 2 {
        let i = rng.random_range(0..action_names.len());
        let j = rng.random_range(0..action_names.len());
        if action_names[i].1 == action_names[j].1 {
            merge_states(
                &mut action_repr,
                action_names[i].0.clone(),
                action_names[j].0.clone(),
            );
        }
    }
    let states: BTreeSet<String> = state_names
        .iter()
        .map(|s| resolve(&state_repr, s.clone()))
        .collect();
    let mut actions_by_label: BTreeMap<Label, BTreeSet<String>> = BTreeMap::new();
    for (a, l) in &action_names {
        actions_by_label
            .entry(l.clone())
            .or_default()
            .insert(resolve(&action_repr, a.clone()));
    }
    let profile = SetProfile {
        states,
        actions_by_label,
    };
    let cone: Vec<(Tsys, ProfileMap)> = shapes
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let pm = ProfileMap {
                state_map: omega(s)
                    .states
                    .iter()
                    .map(|st| (st.clone(), resolve(&state_repr, format!("{i}.{st}"))))
                    .collect(),
                action_map: s
                    .actions()
                    .map(|a| (a.clone(), resolve(&action_repr, format!("{i}.{a}"))))
                    .collect(),
            };
            (s.clone(), pm)
        })
        .collect();
    final_lift(&profile, &cone).expect("randomly glued cones are well formed")
}
