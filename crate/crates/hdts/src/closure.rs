//! Saturation of transition sets and final lifts of set-profile cones.
//!
//! `saturate` closes a tuple set under the two closure rules every system
//! must satisfy: closure under permutations of each word, and the 5-premise
//! composition rule that inserts the missing middle tuple between two
//! interleaved splittings.  It realizes the transition set of every colimit
//! computed by this crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::system::{SetProfile, Transition, Tsys};

/// Indexes a growing tuple set by source-prefix and suffix-target so the
/// composition rule can be matched without a quintuple scan.
struct SatState {
    set: BTreeSet<Transition>,
    // (source, word) -> targets
    fwd: HashMap<(String, Vec<String>), BTreeSet<String>>,
    // (word, target) -> sources
    bwd: HashMap<(Vec<String>, String), BTreeSet<String>>,
}

impl SatState {
    fn new() -> SatState {
        SatState {
            set: BTreeSet::new(),
            fwd: HashMap::new(),
            bwd: HashMap::new(),
        }
    }

    /// Inserts a tuple together with all permutations of its word.
    fn insert_closed(&mut self, t: Transition) {
        let n = t.arity();
        if n <= 1 {
            self.insert_raw(t);
            return;
        }
        let words: BTreeSet<Vec<String>> = t
            .word
            .iter()
            .permutations(n)
            .map(|p| p.into_iter().cloned().collect())
            .collect();
        for w in words {
            self.insert_raw(Transition::new(t.source.clone(), w, t.target.clone()));
        }
    }

    fn insert_raw(&mut self, t: Transition) {
        if self.set.insert(t.clone()) {
            self.fwd
                .entry((t.source.clone(), t.word.clone()))
                .or_default()
                .insert(t.target.clone());
            self.bwd
                .entry((t.word, t.target))
                .or_default()
                .insert(t.source);
        }
    }

    /// States v such that (src, word[..k], v) and (v, word[k..], tgt) are
    /// both present.
    fn split_states(&self, t: &Transition, k: usize) -> Vec<String> {
        let prefix = t.word[..k].to_vec();
        let suffix = t.word[k..].to_vec();
        let Some(after) = self.fwd.get(&(t.source.clone(), prefix)) else {
            return Vec::new();
        };
        let Some(before) = self.bwd.get(&(suffix, t.target.clone())) else {
            return Vec::new();
        };
        after.intersection(before).cloned().collect()
    }
}

/// Least superset of `tuples` closed under word permutations and the
/// composition rule.  Terminates because every generated word is a
/// permutation of a contiguous subword of an existing one.
pub(crate) fn saturate_tuples<I>(tuples: I) -> BTreeSet<Transition>
where
    I: IntoIterator<Item = Transition>,
{
    let mut st = SatState::new();
    for t in tuples {
        st.insert_closed(t);
    }
    // Round-based fixpoint: rescan every tuple of arity >= 3 as the main
    // premise until a full round adds nothing.  A new tuple can complete a
    // pattern whose main premise is old, so rounds rescan the whole set.
    loop {
        let scan: Vec<Transition> = st.set.iter().filter(|t| t.arity() >= 3).cloned().collect();
        let mut found = Vec::new();
        for m in &scan {
            let n = m.arity();
            for p in 1..n {
                for q in 1..(n - p) {
                    let nu1s = st.split_states(m, p);
                    if nu1s.is_empty() {
                        continue;
                    }
                    let nu2s = st.split_states(m, p + q);
                    for nu1 in &nu1s {
                        for nu2 in &nu2s {
                            let mid = m.word[p..p + q].to_vec();
                            found.push(Transition::new(nu1.clone(), mid, nu2.clone()));
                        }
                    }
                }
            }
        }
        let before = st.set.len();
        for t in found {
            st.insert_closed(t);
        }
        if st.set.len() == before {
            break;
        }
    }
    st.set
}

/// Returns `ts` with its transition set replaced by the least superset
/// closed under the two rules.  States, actions and labelling are unchanged;
/// idempotent and monotone.
pub fn saturate(ts: &Tsys) -> Tsys {
    Tsys::new(
        ts.states().clone(),
        ts.labelling().clone(),
        saturate_tuples(ts.transitions().iter().cloned()),
    )
}

/// One leg of a cone over a set profile: where the states and actions of a
/// contributing system land.
#[derive(Clone, Debug)]
pub struct ProfileMap {
    pub state_map: BTreeMap<String, String>,
    pub action_map: BTreeMap<String, String>,
}

/// The final lift of a cone of set-profile maps: the system on the profile's
/// carriers whose transitions are the saturation of the images of the
/// contributing systems' transitions.
///
/// If every contributing system is cubical and every profile action is hit,
/// the lift is cubical.
pub fn final_lift(profile: &SetProfile, cone: &[(Tsys, ProfileMap)]) -> Result<Tsys> {
    profile.check()?;
    for (a, f) in cone {
        for s in a.states() {
            let v = f
                .state_map
                .get(s)
                .ok_or_else(|| Error::MalformedCone(format!("state {s} is not mapped")))?;
            if !profile.states.contains(v) {
                return Err(Error::MalformedCone(format!(
                    "state {s} lands outside the profile ({v})"
                )));
            }
        }
        for (u, l) in a.labelling() {
            let v = f
                .action_map
                .get(u)
                .ok_or_else(|| Error::MalformedCone(format!("action {u} is not mapped")))?;
            match profile.label_of(v) {
                None => {
                    return Err(Error::MalformedCone(format!(
                        "action {u} lands outside the profile ({v})"
                    )))
                }
                Some(l2) if l2 != l => {
                    return Err(Error::MalformedCone(format!(
                        "action {u} (label {l}) lands on {v} (label {l2})"
                    )))
                }
                _ => {}
            }
        }
    }
    let mut tuples = Vec::new();
    for (a, f) in cone {
        for t in a.transitions() {
            tuples.push(Transition::new(
                f.state_map[&t.source].clone(),
                t.word.iter().map(|u| f.action_map[u].clone()).collect(),
                f.state_map[&t.target].clone(),
            ));
        }
    }
    let labelling: BTreeMap<String, crate::system::Label> = profile
        .actions_by_label
        .iter()
        .flat_map(|(l, set)| set.iter().map(move |a| (a.clone(), l.clone())))
        .collect();
    Ok(Tsys::new(
        profile.states.clone(),
        labelling,
        saturate_tuples(tuples),
    ))
}
