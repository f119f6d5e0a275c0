//! The data model: labels, transitions, systems, morphisms and set profiles.
//!
//! A system is a triple of a finite state set, a finite labelled action set
//! and a finite set of multi-action transitions.  All values are immutable
//! after construction and all operations on them are pure.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::closure::saturate;
use crate::error::{Error, Result};

/// A label from the alphabet.  Labels are compared by exact string equality;
/// the alphabet itself is never materialized, any nonempty string is
/// admissible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Label {
        let name = name.into();
        assert!(!name.is_empty(), "labels are nonempty strings");
        Label(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label::new(s)
    }
}

/// A transition `(source, u_1 .. u_n, target)` with `n >= 1`.
///
/// Repetitions inside the word are allowed; the set of transitions of a
/// system is kept duplicate-free by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Transition {
    pub source: String,
    pub word: Vec<String>,
    pub target: String,
}

impl Transition {
    pub fn new<S: Into<String>>(source: S, word: Vec<String>, target: S) -> Transition {
        Transition {
            source: source.into(),
            word,
            target: target.into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.word.len()
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.source,
            self.word.join(","),
            self.target
        )
    }
}

/// A finite higher-dimensional transition system.
///
/// The labelling map is total by construction: the action set is the key set
/// of `labelling`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tsys {
    states: BTreeSet<String>,
    labelling: BTreeMap<String, Label>,
    transitions: BTreeSet<Transition>,
}

impl Tsys {
    /// Builds a system from raw parts without checking the integrity
    /// invariants; see [`validate`].
    pub fn new(
        states: BTreeSet<String>,
        labelling: BTreeMap<String, Label>,
        transitions: BTreeSet<Transition>,
    ) -> Tsys {
        Tsys {
            states,
            labelling,
            transitions,
        }
    }

    pub fn empty() -> Tsys {
        Tsys {
            states: BTreeSet::new(),
            labelling: BTreeMap::new(),
            transitions: BTreeSet::new(),
        }
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn labelling(&self) -> &BTreeMap<String, Label> {
        &self.labelling
    }

    pub fn actions(&self) -> impl Iterator<Item = &String> {
        self.labelling.keys()
    }

    pub fn action_count(&self) -> usize {
        self.labelling.len()
    }

    pub fn label_of(&self, action: &str) -> Option<&Label> {
        self.labelling.get(action)
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }

    pub fn max_arity(&self) -> usize {
        self.transitions
            .iter()
            .map(|t| t.arity())
            .max()
            .unwrap_or(0)
    }

    /// Distinct labels carried by the actions.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.labelling.values().cloned().collect()
    }

    pub fn actions_with_label(&self, label: &Label) -> Vec<&String> {
        self.labelling
            .iter()
            .filter(|(_, l)| *l == label)
            .map(|(a, _)| a)
            .collect()
    }

    /// The label word of a transition word; panics on unknown actions.
    pub fn label_word(&self, word: &[String]) -> Vec<Label> {
        word.iter().map(|u| self.labelling[u].clone()).collect()
    }

    /// Applies a renaming (possibly non-injective, i.e. a quotient) to states
    /// and actions.  Transitions are renamed tuple-wise with set semantics;
    /// the result is *not* re-saturated, callers do that when required.
    pub fn rename(
        &self,
        state_map: &BTreeMap<String, String>,
        action_map: &BTreeMap<String, String>,
    ) -> Tsys {
        let rs = |s: &String| state_map.get(s).unwrap_or(s).clone();
        let ra = |a: &String| action_map.get(a).unwrap_or(a).clone();
        let states = self.states.iter().map(&rs).collect();
        let labelling = self
            .labelling
            .iter()
            .map(|(a, l)| (ra(a), l.clone()))
            .collect();
        let transitions = self
            .transitions
            .iter()
            .map(|t| {
                Transition::new(
                    rs(&t.source),
                    t.word.iter().map(&ra).collect(),
                    rs(&t.target),
                )
            })
            .collect();
        Tsys::new(states, labelling, transitions)
    }
}

/// An integrity violation reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownSourceState(Transition),
    UnknownTargetState(Transition),
    UnknownAction {
        transition: Transition,
        action: String,
    },
    EmptyWord {
        source: String,
        target: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownSourceState(t) => {
                write!(f, "transition {t} has an undeclared source state")
            }
            Violation::UnknownTargetState(t) => {
                write!(f, "transition {t} has an undeclared target state")
            }
            Violation::UnknownAction { transition, action } => {
                write!(
                    f,
                    "transition {transition} uses the undeclared action {action}"
                )
            }
            Violation::EmptyWord { source, target } => {
                write!(f, "transition from {source} to {target} has an empty word")
            }
        }
    }
}

/// Checks the integrity invariants of a system: transitions only mention
/// declared states and actions and every word is nonempty.  Total; returns
/// the empty list exactly when the system is well-formed.
pub fn validate(ts: &Tsys) -> Vec<Violation> {
    let mut out = Vec::new();
    for t in ts.transitions() {
        if t.word.is_empty() {
            out.push(Violation::EmptyWord {
                source: t.source.clone(),
                target: t.target.clone(),
            });
        }
        if !ts.states.contains(&t.source) {
            out.push(Violation::UnknownSourceState(t.clone()));
        }
        if !ts.states.contains(&t.target) {
            out.push(Violation::UnknownTargetState(t.clone()));
        }
        for u in &t.word {
            if !ts.labelling.contains_key(u) {
                out.push(Violation::UnknownAction {
                    transition: t.clone(),
                    action: u.clone(),
                });
            }
        }
    }
    out
}

/// A morphism of systems: a state function and a label-preserving action
/// function that carries transitions to transitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TsMap {
    domain: Tsys,
    codomain: Tsys,
    state_map: BTreeMap<String, String>,
    action_map: BTreeMap<String, String>,
}

impl TsMap {
    /// Builds and checks a morphism: both tables total, targets declared,
    /// labels preserved, transitions preserved.
    pub fn new(
        domain: Tsys,
        codomain: Tsys,
        state_map: BTreeMap<String, String>,
        action_map: BTreeMap<String, String>,
    ) -> Result<TsMap> {
        for s in domain.states() {
            let v = state_map
                .get(s)
                .ok_or_else(|| Error::InvalidMap(format!("state {s} is not mapped")))?;
            if !codomain.states().contains(v) {
                return Err(Error::InvalidMap(format!(
                    "state {s} is mapped to undeclared state {v}"
                )));
            }
        }
        for (u, l) in domain.labelling() {
            let v = action_map
                .get(u)
                .ok_or_else(|| Error::InvalidMap(format!("action {u} is not mapped")))?;
            match codomain.label_of(v) {
                None => {
                    return Err(Error::InvalidMap(format!(
                        "action {u} is mapped to undeclared action {v}"
                    )))
                }
                Some(l2) if l2 != l => {
                    return Err(Error::InvalidMap(format!(
                        "action {u} (label {l}) is mapped to {v} (label {l2})"
                    )))
                }
                _ => {}
            }
        }
        let map = TsMap {
            domain,
            codomain,
            state_map,
            action_map,
        };
        for t in map.domain.transitions() {
            let img = map.apply_transition(t);
            if !map.codomain.has_transition(&img) {
                return Err(Error::InvalidMap(format!(
                    "transition {t} is mapped to {img} which is not a transition of the codomain"
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(ts: &Tsys) -> TsMap {
        TsMap {
            domain: ts.clone(),
            codomain: ts.clone(),
            state_map: ts.states().iter().map(|s| (s.clone(), s.clone())).collect(),
            action_map: ts.actions().map(|a| (a.clone(), a.clone())).collect(),
        }
    }

    pub fn domain(&self) -> &Tsys {
        &self.domain
    }

    pub fn codomain(&self) -> &Tsys {
        &self.codomain
    }

    pub fn state_map(&self) -> &BTreeMap<String, String> {
        &self.state_map
    }

    pub fn action_map(&self) -> &BTreeMap<String, String> {
        &self.action_map
    }

    pub fn apply_state(&self, s: &str) -> &str {
        &self.state_map[s]
    }

    pub fn apply_action(&self, a: &str) -> &str {
        &self.action_map[a]
    }

    pub fn apply_transition(&self, t: &Transition) -> Transition {
        Transition::new(
            self.state_map[&t.source].clone(),
            t.word.iter().map(|u| self.action_map[u].clone()).collect(),
            self.state_map[&t.target].clone(),
        )
    }

    /// `self` followed by `g`; the codomain of `self` must equal the domain
    /// of `g`.
    pub fn then(&self, g: &TsMap) -> Result<TsMap> {
        if self.codomain != g.domain {
            return Err(Error::InvalidMap(
                "composition mismatch: codomain differs from the next domain".into(),
            ));
        }
        let state_map = self
            .state_map
            .iter()
            .map(|(s, v)| (s.clone(), g.state_map[v].clone()))
            .collect();
        let action_map = self
            .action_map
            .iter()
            .map(|(a, v)| (a.clone(), g.action_map[v].clone()))
            .collect();
        TsMap::new(
            self.domain.clone(),
            g.codomain.clone(),
            state_map,
            action_map,
        )
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self.state_map.iter().all(|(s, v)| s == v)
            && self.action_map.iter().all(|(a, v)| a == v)
    }

    pub fn injective_on_states(&self) -> bool {
        let imgs: BTreeSet<&String> = self.state_map.values().collect();
        imgs.len() == self.state_map.len()
    }

    pub fn injective_on_actions(&self) -> bool {
        let imgs: BTreeSet<&String> = self.action_map.values().collect();
        imgs.len() == self.action_map.len()
    }

    pub fn onto_on_states(&self) -> bool {
        let imgs: BTreeSet<&String> = self.state_map.values().collect();
        imgs.len() == self.codomain.states().len()
    }

    pub fn onto_on_actions(&self) -> bool {
        let imgs: BTreeSet<&String> = self.action_map.values().collect();
        imgs.len() == self.codomain.action_count()
    }

    /// The set of codomain transitions hit by a domain transition.
    pub fn transition_image(&self) -> BTreeSet<Transition> {
        self.domain
            .transitions()
            .iter()
            .map(|t| self.apply_transition(t))
            .collect()
    }

    pub fn onto_on_transitions(&self) -> bool {
        self.transition_image() == *self.codomain.transitions()
    }

    pub fn bijective_on_states(&self) -> bool {
        self.injective_on_states() && self.onto_on_states()
    }

    pub fn bijective_on_actions(&self) -> bool {
        self.injective_on_actions() && self.onto_on_actions()
    }
}

/// True iff the map is an isomorphism: bijective on states and actions and
/// the induced map on transition sets is a bijection.
pub fn is_iso_map(f: &TsMap) -> bool {
    f.bijective_on_states()
        && f.bijective_on_actions()
        && f.domain().transitions().len() == f.codomain().transitions().len()
        && f.onto_on_transitions()
}

/// The image factorization of a morphism.
pub struct ImageFactorization {
    pub image: Tsys,
    pub onto_part: TsMap,
    pub incl_part: TsMap,
}

/// Factors `f` as a surjection onto its image followed by an inclusion.
///
/// The image keeps the reached states and actions; its transition set is the
/// saturation of the image tuples, so a cubical domain yields a cubical
/// image.  The codomain must be closed under the saturation rules for the
/// inclusion to exist (every system this library produces is).
pub fn image_factor(f: &TsMap) -> Result<ImageFactorization> {
    let states: BTreeSet<String> = f.state_map().values().cloned().collect();
    let labelling: BTreeMap<String, Label> = f
        .action_map()
        .values()
        .map(|v| (v.clone(), f.codomain().label_of(v).unwrap().clone()))
        .collect();
    let raw = f.transition_image();
    let image = saturate(&Tsys::new(states, labelling, raw));
    let onto_part = TsMap::new(
        f.domain().clone(),
        image.clone(),
        f.state_map().clone(),
        f.action_map().clone(),
    )?;
    let incl_part = TsMap::new(
        image.clone(),
        f.codomain().clone(),
        image
            .states()
            .iter()
            .map(|s| (s.clone(), s.clone()))
            .collect(),
        image.actions().map(|a| (a.clone(), a.clone())).collect(),
    )?;
    Ok(ImageFactorization {
        image,
        onto_part,
        incl_part,
    })
}

/// The underlying set profile of a system: its states and, per label, the
/// actions carrying that label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetProfile {
    pub states: BTreeSet<String>,
    pub actions_by_label: BTreeMap<Label, BTreeSet<String>>,
}

impl SetProfile {
    /// Checks that action sets for distinct labels are disjoint.
    pub fn check(&self) -> Result<()> {
        let mut seen: BTreeSet<&String> = BTreeSet::new();
        for set in self.actions_by_label.values() {
            for a in set {
                if !seen.insert(a) {
                    return Err(Error::MalformedCone(format!(
                        "action {a} occurs under two distinct labels"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn contains_action(&self, a: &str) -> bool {
        self.actions_by_label.values().any(|s| s.contains(a))
    }

    pub fn label_of(&self, a: &str) -> Option<&Label> {
        self.actions_by_label
            .iter()
            .find(|(_, s)| s.contains(a))
            .map(|(l, _)| l)
    }
}

/// Forgets the transitions of a system.
pub fn omega(ts: &Tsys) -> SetProfile {
    let mut actions_by_label: BTreeMap<Label, BTreeSet<String>> = BTreeMap::new();
    for (a, l) in ts.labelling() {
        actions_by_label
            .entry(l.clone())
            .or_default()
            .insert(a.clone());
    }
    SetProfile {
        states: ts.states().clone(),
        actions_by_label,
    }
}
