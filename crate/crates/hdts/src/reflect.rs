//! The reflections onto smaller classes of systems: unique intermediate
//! states, same-label parallel edges collapsed (two flavours), and actions
//! collapsed to their labels (two flavours).
//!
//! Each reflector is a merge fixpoint: a union-find quotient of states or
//! actions followed by re-saturation, repeated until the defining property
//! holds.  Every round strictly shrinks a carrier, so the fixpoint is
//! reached in finitely many rounds.  Merge events are logged in application
//! order.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::axioms::classify;
use crate::closure::saturate;
use crate::error::{Error, Result};
use crate::system::{TsMap, Tsys};
use crate::util::quotient_map;

/// One recorded merge: `removed` was folded into `kept`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MergeEvent {
    States { kept: String, removed: String },
    Actions { kept: String, removed: String },
}

/// A reflected system together with its unit map and the merge trace.
#[derive(Clone, Debug)]
pub struct ReflectResult {
    pub reflected: Tsys,
    pub unit: TsMap,
    pub trace: Vec<MergeEvent>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReflectorKind {
    Csa2,
    Csa1Cts,
    Csa1Rts,
    LsCts,
    LsRts,
}

/// Tracks the running quotient from the original system while rounds merge
/// carriers.
struct Run {
    original: Tsys,
    current: Tsys,
    state_map: BTreeMap<String, String>,
    action_map: BTreeMap<String, String>,
    trace: Vec<MergeEvent>,
    all_used_at_start: bool,
}

fn all_actions_used(ts: &Tsys) -> bool {
    let used: BTreeSet<&String> = ts
        .transitions()
        .iter()
        .filter(|t| t.arity() == 1)
        .map(|t| &t.word[0])
        .collect();
    ts.actions().all(|a| used.contains(a))
}

impl Run {
    fn start(x: &Tsys) -> Run {
        Run {
            original: x.clone(),
            current: x.clone(),
            state_map: x.states().iter().map(|s| (s.clone(), s.clone())).collect(),
            action_map: x.actions().map(|a| (a.clone(), a.clone())).collect(),
            trace: Vec::new(),
            all_used_at_start: all_actions_used(x),
        }
    }

    /// Applies one merge round given the forced pairs, re-saturates, and
    /// logs the events.  Returns false when the round was empty.
    fn merge(
        &mut self,
        state_pairs: &[(String, String)],
        action_pairs: &[(String, String)],
    ) -> bool {
        if state_pairs.is_empty() && action_pairs.is_empty() {
            return false;
        }
        let sq = quotient_map(
            self.current.states(),
            state_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        );
        let actions: BTreeSet<String> = self.current.actions().cloned().collect();
        let aq = quotient_map(
            &actions,
            action_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        );
        for (from, to) in &sq {
            if from != to {
                self.trace.push(MergeEvent::States {
                    kept: to.clone(),
                    removed: from.clone(),
                });
            }
        }
        for (from, to) in &aq {
            if from != to {
                self.trace.push(MergeEvent::Actions {
                    kept: to.clone(),
                    removed: from.clone(),
                });
            }
        }
        self.current = saturate(&self.current.rename(&sq, &aq));
        // Merging never orphans an action.
        debug_assert!(!self.all_used_at_start || all_actions_used(&self.current));
        for v in self.state_map.values_mut() {
            *v = sq[v.as_str()].clone();
        }
        for v in self.action_map.values_mut() {
            *v = aq[v.as_str()].clone();
        }
        true
    }

    fn finish(self) -> Result<ReflectResult> {
        let unit = TsMap::new(
            self.original,
            self.current.clone(),
            self.state_map,
            self.action_map,
        )?;
        Ok(ReflectResult {
            reflected: self.current,
            unit,
            trace: self.trace,
        })
    }
}

fn require_cubical(x: &Tsys, who: &str) -> Result<()> {
    if !classify(x).is_cubical() {
        return Err(Error::PreconditionFailed(format!(
            "{who} is defined on cubical systems"
        )));
    }
    Ok(())
}

fn require_regular(x: &Tsys, who: &str) -> Result<()> {
    if !classify(x).is_regular() {
        return Err(Error::PreconditionFailed(format!(
            "{who} is defined on regular systems"
        )));
    }
    Ok(())
}

/// Pairs of distinct states splitting the same transition at the same
/// position; merging them is forced by uniqueness of intermediate states.
fn csa2_pairs(ts: &Tsys) -> Vec<(String, String)> {
    use std::collections::HashMap;
    let mut fwd: HashMap<(&str, &[String]), BTreeSet<&str>> = HashMap::new();
    let mut bwd: HashMap<(&[String], &str), BTreeSet<&str>> = HashMap::new();
    for t in ts.transitions() {
        fwd.entry((&t.source, &t.word))
            .or_default()
            .insert(&t.target);
        bwd.entry((&t.word, &t.target))
            .or_default()
            .insert(&t.source);
    }
    let mut pairs = Vec::new();
    for t in ts.transitions() {
        let n = t.arity();
        if n < 2 {
            continue;
        }
        for p in 1..n {
            let Some(after) = fwd.get(&(t.source.as_str(), &t.word[..p])) else {
                continue;
            };
            let Some(before) = bwd.get(&(&t.word[p..], t.target.as_str())) else {
                continue;
            };
            let nus: Vec<&&str> = after.intersection(before).collect();
            for w in nus.windows(2) {
                pairs.push((w[0].to_string(), w[1].to_string()));
            }
        }
    }
    pairs
}

/// Collapses the intermediate states of each transition until the splitting
/// state at every position is unique.  The unit is onto on states and the
/// identity on actions; the result is regular.
pub fn csa2_reflect(x: &Tsys) -> Result<ReflectResult> {
    require_cubical(x, "the unique-intermediate-state reflection")?;
    let mut run = Run::start(x);
    loop {
        let pairs = csa2_pairs(&run.current);
        if !run.merge(&pairs, &[]) {
            break;
        }
    }
    run.finish()
}

/// Pairs of distinct same-label actions carried by parallel 1-transitions.
fn csa1_pairs(ts: &Tsys) -> Vec<(String, String)> {
    let mut groups: BTreeMap<(&String, &crate::system::Label, &String), BTreeSet<&String>> =
        BTreeMap::new();
    for t in ts.transitions() {
        if t.arity() != 1 {
            continue;
        }
        let l = ts.label_of(&t.word[0]).expect("validated input");
        groups
            .entry((&t.source, l, &t.target))
            .or_default()
            .insert(&t.word[0]);
    }
    let mut pairs = Vec::new();
    for (_, actions) in groups {
        let v: Vec<&&String> = actions.iter().collect();
        for w in v.windows(2) {
            pairs.push(((*w[0]).clone(), (*w[1]).clone()));
        }
    }
    pairs
}

/// Identifies same-label actions on parallel edges until none remain.
/// States are never merged, so the unit is bijective on states.
pub fn csa1_reflect_cts(x: &Tsys) -> Result<ReflectResult> {
    require_cubical(x, "the parallel-edge reflection")?;
    let mut run = Run::start(x);
    loop {
        let pairs = csa1_pairs(&run.current);
        if !run.merge(&[], &pairs) {
            break;
        }
    }
    run.finish()
}

/// The regular flavour: each merge round is followed by the
/// unique-intermediate-state reflection, which may merge states and thereby
/// expose further parallel edges.
pub fn csa1_reflect_rts(x: &Tsys) -> Result<ReflectResult> {
    require_regular(x, "the regular parallel-edge reflection")?;
    let mut run = Run::start(x);
    loop {
        let pairs = csa1_pairs(&run.current);
        if !run.merge(&[], &pairs) {
            break;
        }
        loop {
            let pairs = csa2_pairs(&run.current);
            if !run.merge(&pairs, &[]) {
                break;
            }
        }
    }
    run.finish()
}

/// Pairs of distinct actions sharing a label.
fn same_label_pairs(ts: &Tsys) -> Vec<(String, String)> {
    let mut by_label: BTreeMap<&crate::system::Label, Vec<&String>> = BTreeMap::new();
    for (a, l) in ts.labelling() {
        by_label.entry(l).or_default().push(a);
    }
    let mut pairs = Vec::new();
    for (_, actions) in by_label {
        for w in actions.windows(2) {
            pairs.push((w[0].clone(), w[1].clone()));
        }
    }
    pairs
}

/// Collapses every action onto its label class.  The unit is bijective on
/// states and onto on actions; the result has an injective labelling.
pub fn ls_reflect_cts(x: &Tsys) -> Result<ReflectResult> {
    require_cubical(x, "the label-collapse reflection")?;
    let mut run = Run::start(x);
    let pairs = same_label_pairs(&run.current);
    run.merge(&[], &pairs);
    run.finish()
}

/// The regular flavour: label collapse followed by the
/// unique-intermediate-state reflection.  The unit is onto on states,
/// actions and transitions.
pub fn ls_reflect_rts(x: &Tsys) -> Result<ReflectResult> {
    require_regular(x, "the regular label-collapse reflection")?;
    let mut run = Run::start(x);
    let pairs = same_label_pairs(&run.current);
    run.merge(&[], &pairs);
    loop {
        let pairs = csa2_pairs(&run.current);
        if !run.merge(&pairs, &[]) {
            break;
        }
    }
    run.finish()
}

/// Dispatches on the reflector kind.
pub fn reflect(kind: ReflectorKind, x: &Tsys) -> Result<ReflectResult> {
    match kind {
        ReflectorKind::Csa2 => csa2_reflect(x),
        ReflectorKind::Csa1Cts => csa1_reflect_cts(x),
        ReflectorKind::Csa1Rts => csa1_reflect_rts(x),
        ReflectorKind::LsCts => ls_reflect_cts(x),
        ReflectorKind::LsRts => ls_reflect_rts(x),
    }
}

/// The unique map between reflected systems making the unit square commute.
/// Well-definedness is checked; a failure would be a functoriality bug, not
/// a property of the input.
pub fn induced_map(kind: ReflectorKind, f: &TsMap) -> Result<TsMap> {
    let rx = reflect(kind, f.domain())?;
    let ry = reflect(kind, f.codomain())?;
    let mut state_map: BTreeMap<String, String> = BTreeMap::new();
    for s in f.domain().states() {
        let from = rx.unit.apply_state(s).to_string();
        let to = ry.unit.apply_state(f.apply_state(s)).to_string();
        if let Some(prev) = state_map.insert(from, to.clone()) {
            if prev != to {
                return Err(Error::Internal(
                    "the induced state map is not well defined".into(),
                ));
            }
        }
    }
    let mut action_map: BTreeMap<String, String> = BTreeMap::new();
    for a in f.domain().actions() {
        let from = rx.unit.apply_action(a).to_string();
        let to = ry.unit.apply_action(f.apply_action(a)).to_string();
        if let Some(prev) = action_map.insert(from, to.clone()) {
            if prev != to {
                return Err(Error::Internal(
                    "the induced action map is not well defined".into(),
                ));
            }
        }
    }
    TsMap::new(
        rx.reflected.clone(),
        ry.reflected.clone(),
        state_map,
        action_map,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{csa1diff, cube, intro, pure, wbar2, wbar2_to_cube};
    use crate::hom::{iso_search, Budget};
    use crate::system::{is_iso_map, Label, Transition};

    fn lbl(s: &str) -> Label {
        Label::new(s)
    }

    fn t(src: &str, word: &[&str], tgt: &str) -> Transition {
        Transition::new(
            src.to_string(),
            word.iter().map(|w| w.to_string()).collect(),
            tgt.to_string(),
        )
    }

    #[test]
    fn csa2_reflect_merges_the_fan() {
        for n in 1..=4 {
            let x = intro(n).unwrap();
            let r = csa2_reflect(&x).unwrap();
            assert_eq!(r.reflected.states().len(), 4, "n={n}");
            assert!(classify(&r.reflected).is_regular());
            assert!(r.unit.onto_on_states());
            assert!(r.unit.action_map().iter().all(|(a, b)| a == b));
        }
    }

    /// Exhaustive oracle for the minimal merge: no strictly coarser quotient
    /// of the b-fan yields a regular system, and the chosen one does.
    #[test]
    fn csa2_reflect_is_the_least_merge_on_intro2() {
        let x = intro(2).unwrap();
        let r = csa2_reflect(&x).unwrap();
        // The reflection merged exactly b1 and b2.
        assert_eq!(
            r.trace,
            vec![MergeEvent::States {
                kept: "b1".into(),
                removed: "b2".into()
            }]
        );
        // Oracle: of all ways to merge one pair of states, only b1 ~ b2
        // yields a regular system.
        let states: Vec<&String> = x.states().iter().collect();
        let mut regular_pairs = Vec::new();
        for i in 0..states.len() {
            for j in (i + 1)..states.len() {
                let q: BTreeMap<String, String> = x
                    .states()
                    .iter()
                    .map(|s| {
                        let img = if s == states[j] { states[i] } else { s };
                        (s.clone(), img.clone())
                    })
                    .collect();
                let merged = saturate(&x.rename(&q, &BTreeMap::new()));
                if classify(&merged).is_regular() {
                    regular_pairs.push((states[i].clone(), states[j].clone()));
                }
            }
        }
        assert_eq!(regular_pairs, vec![("b1".to_string(), "b2".to_string())]);
    }

    #[test]
    fn csa2_reflect_is_identity_on_regular() {
        let c = cube(&[lbl("x"), lbl("y")]);
        let r = csa2_reflect(&c).unwrap();
        assert!(r.unit.is_identity());
        assert!(r.trace.is_empty());
    }

    #[test]
    fn csa2_reflect_rejects_non_cubical() {
        assert!(matches!(
            csa2_reflect(&pure(&[lbl("x"), lbl("y")])),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn csa1_cts_on_the_divergence_fixture_matches_the_printed_list() {
        let x = csa1diff();
        let r = csa1_reflect_cts(&x).unwrap();
        // u1' and u2' fold into u1 and u2; v and v' survive.
        let acts: Vec<&String> = r.reflected.actions().collect();
        assert_eq!(
            acts,
            ["u1", "u2", "v", "vp"]
                .map(|s| s.to_string())
                .iter()
                .collect::<Vec<_>>()
        );
        assert!(r.unit.bijective_on_states());
        let expected: BTreeSet<Transition> = [
            t("alpha", &["u1", "u2"], "beta"),
            t("alpha", &["u2", "u1"], "beta"),
            t("alpha", &["u1"], "chi"),
            t("chi", &["u2"], "beta"),
            t("alpha", &["u2"], "nu"),
            t("nu", &["u1"], "beta"),
            t("alpha", &["u1"], "chip"),
            t("chip", &["u2"], "beta"),
            t("alpha", &["u2"], "nup"),
            t("nup", &["u1"], "beta"),
            t("gamma", &["v"], "chi"),
            t("gamma", &["vp"], "chip"),
            t("U1", &["u1"], "V1"),
            t("U2", &["u2"], "V2"),
        ]
        .into();
        assert_eq!(r.reflected.transitions(), &expected);
    }

    #[test]
    fn csa2_after_csa1_cts_matches_the_printed_list() {
        let x = csa1diff();
        let r1 = csa1_reflect_cts(&x).unwrap();
        let r2 = csa2_reflect(&r1.reflected).unwrap();
        let expected: BTreeSet<Transition> = [
            t("alpha", &["u1", "u2"], "beta"),
            t("alpha", &["u2", "u1"], "beta"),
            t("alpha", &["u1"], "chi"),
            t("chi", &["u2"], "beta"),
            t("alpha", &["u2"], "nu"),
            t("nu", &["u1"], "beta"),
            t("gamma", &["v"], "chi"),
            t("gamma", &["vp"], "chi"),
            t("U1", &["u1"], "V1"),
            t("U2", &["u2"], "V2"),
        ]
        .into();
        assert_eq!(r2.reflected.transitions(), &expected);
        assert_eq!(r2.reflected.transitions().len(), 10);
    }

    #[test]
    fn csa1_rts_additionally_merges_v() {
        let x = csa1diff();
        let rts = csa1_reflect_rts(&x).unwrap();
        assert_eq!(rts.reflected.action_count(), 3);
        assert!(rts.reflected.label_of("v").is_some());
        assert!(rts.reflected.label_of("vp").is_none());
        // The comparison from the composite reflection is not injective on
        // actions, hence not an isomorphism.
        let cts_then = csa2_reflect(&csa1_reflect_cts(&x).unwrap().reflected).unwrap();
        assert_eq!(cts_then.reflected.action_count(), 4);
        assert!(
            iso_search(&cts_then.reflected, &rts.reflected, Budget::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn csa1_cts_is_identity_on_the_same_label_square() {
        let r = csa1_reflect_cts(&cube(&[lbl("x"), lbl("x")])).unwrap();
        assert!(r.unit.is_identity());
    }

    #[test]
    fn ls_cts_collapses_labels_and_keeps_states() {
        let w = wbar2(&lbl("x"));
        let r = ls_reflect_cts(&w).unwrap();
        assert_eq!(r.reflected.states().len(), 6);
        assert_eq!(r.reflected.action_count(), 1);
        assert!(r.unit.bijective_on_states());
        assert!(r.unit.onto_on_actions());
        assert!(classify(&r.reflected).deterministic_labelling);
        assert!(!classify(&r.reflected).is_regular());
        // Identity when the labelling is already injective.
        let c = cube(&[lbl("x"), lbl("y")]);
        assert!(ls_reflect_cts(&c).unwrap().unit.is_identity());
    }

    #[test]
    fn ls_rts_collapses_states_of_the_glued_squares() {
        let w = wbar2(&lbl("x"));
        let r = ls_reflect_rts(&w).unwrap();
        assert_eq!(r.reflected.states().len(), 3);
        assert_eq!(r.reflected.action_count(), 1);
        assert!(!r.unit.injective_on_states());
        assert!(r.unit.onto_on_states());
        assert!(r.unit.onto_on_transitions());
        assert!(classify(&r.reflected).is_regular());
        // Both sides of the comparison map reflect to the same object.
        let c = cube(&[lbl("x"), lbl("x")]);
        let rc = ls_reflect_rts(&c).unwrap();
        assert!(iso_search(&r.reflected, &rc.reflected, Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn induced_map_on_the_comparison_is_iso_for_the_regular_flavour() {
        let g = wbar2_to_cube(&lbl("x"));
        let rts = induced_map(ReflectorKind::LsRts, &g).unwrap();
        assert!(is_iso_map(&rts));
        let cts = induced_map(ReflectorKind::LsCts, &g).unwrap();
        assert!(!cts.bijective_on_states());
    }

    #[test]
    fn induced_map_of_identity_is_identity() {
        let c = cube(&[lbl("x"), lbl("x")]);
        let id = TsMap::identity(&c);
        let ind = induced_map(ReflectorKind::Csa2, &id).unwrap();
        assert!(ind.is_identity());
    }

    #[test]
    fn reflectors_are_idempotent() {
        let fixtures = [
            intro(2).unwrap(),
            csa1diff(),
            wbar2(&lbl("x")),
            cube(&[lbl("x"), lbl("x")]),
        ];
        for x in &fixtures {
            for kind in [
                ReflectorKind::Csa2,
                ReflectorKind::Csa1Cts,
                ReflectorKind::LsCts,
            ] {
                let once = reflect(kind, x).unwrap();
                let twice = reflect(kind, &once.reflected).unwrap();
                assert!(twice.unit.is_identity(), "{kind:?}");
            }
        }
        for x in &fixtures {
            if !classify(x).is_regular() {
                continue;
            }
            for kind in [ReflectorKind::Csa1Rts, ReflectorKind::LsRts] {
                let once = reflect(kind, x).unwrap();
                let twice = reflect(kind, &once.reflected).unwrap();
                assert!(twice.unit.is_identity(), "{kind:?}");
            }
        }
    }
}
