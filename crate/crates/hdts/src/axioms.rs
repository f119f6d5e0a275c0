//! Membership deciders for the axioms of each class of systems, with
//! violation witnesses.
//!
//! Derived predicates: weak = multiset and composition; cubical = weak plus
//! all actions used plus the intermediate-state axiom; regular = cubical
//! plus uniqueness of the intermediate states.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::system::{Transition, Tsys};

pub const DEFAULT_MAX_WITNESSES: usize = 32;

/// A verdict plus a (possibly truncated) list of witnesses.  The verdict is
/// always exact; only the witness list is bounded.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomVerdict<W> {
    pub holds: bool,
    pub witnesses: Vec<W>,
    pub truncated: bool,
}

impl<W> AxiomVerdict<W> {
    fn from_witnesses(mut witnesses: Vec<W>, max: usize) -> AxiomVerdict<W> {
        let holds = witnesses.is_empty();
        let truncated = witnesses.len() > max;
        witnesses.truncate(max);
        AxiomVerdict {
            holds,
            witnesses,
            truncated,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SerialTransition {
    pub source: String,
    pub word: Vec<String>,
    pub target: String,
}

impl From<&Transition> for SerialTransition {
    fn from(t: &Transition) -> SerialTransition {
        SerialTransition {
            source: t.source.clone(),
            word: t.word.clone(),
            target: t.target.clone(),
        }
    }
}

impl fmt::Display for SerialTransition {
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

/// A permutation of a present word that is itself missing.
#[derive(Clone, Debug, Serialize)]
pub struct MultisetWitness {
    pub transition: SerialTransition,
    pub missing: SerialTransition,
}

/// A complete premise pattern whose conclusion tuple is missing.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionWitness {
    pub main: SerialTransition,
    pub p: usize,
    pub q: usize,
    pub nu1: String,
    pub nu2: String,
    pub missing: SerialTransition,
}

/// A transition that cannot be split at position p.
#[derive(Clone, Debug, Serialize)]
pub struct SplitWitness {
    pub transition: SerialTransition,
    pub p: usize,
}

/// A transition split at position p through two distinct states.
#[derive(Clone, Debug, Serialize)]
pub struct UniqueSplitWitness {
    pub transition: SerialTransition,
    pub p: usize,
    pub nu1: String,
    pub nu2: String,
}

/// Two parallel same-label 1-transitions carried by distinct actions.
#[derive(Clone, Debug, Serialize)]
pub struct Csa1Witness {
    pub source: String,
    pub action1: String,
    pub action2: String,
    pub target: String,
}

/// A transition whose positionwise same-label replacement is missing.
#[derive(Clone, Debug, Serialize)]
pub struct FibrancyWitness {
    pub transition: SerialTransition,
    pub replacement: Vec<String>,
}

impl fmt::Display for MultisetWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} is present but its permutation {} is not",
            self.transition, self.missing
        )
    }
}

impl fmt::Display for CompositionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} splits through {} and {} (p={}, q={}) but {} is missing",
            self.main, self.nu1, self.nu2, self.p, self.q, self.missing
        )
    }
}

impl fmt::Display for SplitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has no splitting state at position {}",
            self.transition, self.p
        )
    }
}

impl fmt::Display for UniqueSplitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} splits at position {} through both {} and {}",
            self.transition, self.p, self.nu1, self.nu2
        )
    }
}

impl fmt::Display for Csa1Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parallel edges from {} to {} carry distinct same-label actions {} and {}",
            self.source, self.target, self.action1, self.action2
        )
    }
}

impl fmt::Display for FibrancyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} is present but the same-label replacement ({}) is not",
            self.transition,
            self.replacement.join(",")
        )
    }
}

/// Per-axiom verdicts for one system.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub multiset: AxiomVerdict<MultisetWitness>,
    pub composition: AxiomVerdict<CompositionWitness>,
    pub all_actions_used: AxiomVerdict<String>,
    pub intermediate_state: AxiomVerdict<SplitWitness>,
    pub unique_intermediate_state: AxiomVerdict<UniqueSplitWitness>,
    pub csa1: AxiomVerdict<Csa1Witness>,
    pub deterministic_labelling: bool,
    pub combinatorially_fibrant: AxiomVerdict<FibrancyWitness>,
}

impl AxiomReport {
    pub fn is_weak(&self) -> bool {
        self.multiset.holds && self.composition.holds
    }

    pub fn is_cubical(&self) -> bool {
        self.is_weak() && self.all_actions_used.holds && self.intermediate_state.holds
    }

    pub fn is_regular(&self) -> bool {
        self.is_cubical() && self.unique_intermediate_state.holds
    }
}

/// Transition lookup tables reused by the individual checks.
struct Indexes<'a> {
    // (source, word) -> targets
    fwd: HashMap<(&'a str, &'a [String]), BTreeSet<&'a str>>,
    // (word, target) -> sources
    bwd: HashMap<(&'a [String], &'a str), BTreeSet<&'a str>>,
}

impl<'a> Indexes<'a> {
    fn build(ts: &'a Tsys) -> Indexes<'a> {
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
        Indexes { fwd, bwd }
    }

    /// States splitting `t` at position `k`.
    fn split_states(&self, t: &Transition, k: usize) -> Vec<&str> {
        let prefix = &t.word[..k];
        let suffix = &t.word[k..];
        let Some(after) = self.fwd.get(&(t.source.as_str(), prefix)) else {
            return Vec::new();
        };
        let Some(before) = self.bwd.get(&(suffix, t.target.as_str())) else {
            return Vec::new();
        };
        after.intersection(before).copied().collect()
    }
}

fn check_multiset(ts: &Tsys, max: usize) -> AxiomVerdict<MultisetWitness> {
    let mut witnesses = Vec::new();
    for t in ts.transitions() {
        let n = t.arity();
        if n < 2 {
            continue;
        }
        let perms: BTreeSet<Vec<String>> = t
            .word
            .iter()
            .permutations(n)
            .map(|p| p.into_iter().cloned().collect())
            .collect();
        for w in perms {
            let cand = Transition::new(t.source.clone(), w, t.target.clone());
            if !ts.has_transition(&cand) {
                witnesses.push(MultisetWitness {
                    transition: t.into(),
                    missing: (&cand).into(),
                });
            }
        }
    }
    AxiomVerdict::from_witnesses(witnesses, max)
}

fn check_composition(ts: &Tsys, max: usize) -> AxiomVerdict<CompositionWitness> {
    let idx = Indexes::build(ts);
    let mut witnesses = Vec::new();
    for m in ts.transitions() {
        let n = m.arity();
        if n < 3 {
            continue;
        }
        for p in 1..n {
            for q in 1..(n - p) {
                let nu1s = idx.split_states(m, p);
                if nu1s.is_empty() {
                    continue;
                }
                let nu2s = idx.split_states(m, p + q);
                for nu1 in &nu1s {
                    for nu2 in &nu2s {
                        let mid = m.word[p..p + q].to_vec();
                        let cand = Transition::new(nu1.to_string(), mid, nu2.to_string());
                        if !ts.has_transition(&cand) {
                            witnesses.push(CompositionWitness {
                                main: m.into(),
                                p,
                                q,
                                nu1: nu1.to_string(),
                                nu2: nu2.to_string(),
                                missing: (&cand).into(),
                            });
                        }
                    }
                }
            }
        }
    }
    AxiomVerdict::from_witnesses(witnesses, max)
}

fn check_all_actions_used(ts: &Tsys, max: usize) -> AxiomVerdict<String> {
    let used: BTreeSet<&String> = ts
        .transitions()
        .iter()
        .filter(|t| t.arity() == 1)
        .map(|t| &t.word[0])
        .collect();
    let witnesses = ts
        .actions()
        .filter(|a| !used.contains(a))
        .cloned()
        .collect();
    AxiomVerdict::from_witnesses(witnesses, max)
}

fn check_intermediate(
    ts: &Tsys,
    max: usize,
) -> (AxiomVerdict<SplitWitness>, AxiomVerdict<UniqueSplitWitness>) {
    let idx = Indexes::build(ts);
    let mut missing = Vec::new();
    let mut ambiguous = Vec::new();
    for t in ts.transitions() {
        let n = t.arity();
        if n < 2 {
            continue;
        }
        for p in 1..n {
            let mut nus = idx.split_states(t, p);
            nus.sort_unstable();
            match nus.len() {
                0 => missing.push(SplitWitness {
                    transition: t.into(),
                    p,
                }),
                1 => {}
                _ => ambiguous.push(UniqueSplitWitness {
                    transition: t.into(),
                    p,
                    nu1: nus[0].to_string(),
                    nu2: nus[1].to_string(),
                }),
            }
        }
    }
    let unique_holds = missing.is_empty() && ambiguous.is_empty();
    let mut unique = AxiomVerdict::from_witnesses(ambiguous, max);
    // A missing splitting also falsifies uniqueness-and-existence.
    unique.holds = unique_holds;
    (AxiomVerdict::from_witnesses(missing, max), unique)
}

fn check_csa1(ts: &Tsys, max: usize) -> AxiomVerdict<Csa1Witness> {
    let mut groups: BTreeMap<(&str, &crate::system::Label, &str), BTreeSet<&String>> =
        BTreeMap::new();
    for t in ts.transitions() {
        if t.arity() != 1 {
            continue;
        }
        let l = ts.label_of(&t.word[0]).expect("validated input");
        groups
            .entry((t.source.as_str(), l, t.target.as_str()))
            .or_default()
            .insert(&t.word[0]);
    }
    let mut witnesses = Vec::new();
    for ((src, _, tgt), actions) in groups {
        if actions.len() >= 2 {
            let mut it = actions.iter();
            let a1 = it.next().unwrap();
            for a2 in it {
                witnesses.push(Csa1Witness {
                    source: src.to_string(),
                    action1: (*a1).clone(),
                    action2: (*a2).clone(),
                    target: tgt.to_string(),
                });
            }
        }
    }
    AxiomVerdict::from_witnesses(witnesses, max)
}

fn check_fibrancy(ts: &Tsys, max: usize) -> AxiomVerdict<FibrancyWitness> {
    let mut same_label: HashMap<&String, Vec<&String>> = HashMap::new();
    let by_label: BTreeMap<&crate::system::Label, Vec<&String>> = {
        let mut m: BTreeMap<&crate::system::Label, Vec<&String>> = BTreeMap::new();
        for (a, l) in ts.labelling() {
            m.entry(l).or_default().push(a);
        }
        m
    };
    for (a, l) in ts.labelling() {
        same_label.insert(a, by_label[l].clone());
    }
    let mut witnesses = Vec::new();
    for t in ts.transitions() {
        let choices: Vec<&Vec<&String>> = t.word.iter().map(|u| &same_label[u]).collect();
        if choices.iter().all(|c| c.len() == 1) {
            continue;
        }
        for repl in choices.into_iter().multi_cartesian_product() {
            let word: Vec<String> = repl.iter().map(|a| (**a).clone()).collect();
            let cand = Transition::new(t.source.clone(), word.clone(), t.target.clone());
            if !ts.has_transition(&cand) {
                witnesses.push(FibrancyWitness {
                    transition: t.into(),
                    replacement: word,
                });
            }
        }
    }
    AxiomVerdict::from_witnesses(witnesses, max)
}

/// Decides every axiom of the report by exhaustive finite checks, keeping at
/// most `max` witnesses per axiom.
pub fn classify_with(ts: &Tsys, max: usize) -> AxiomReport {
    let (intermediate_state, unique_intermediate_state) = check_intermediate(ts, max);
    let labels: Vec<_> = ts.labelling().values().collect();
    let distinct: BTreeSet<_> = labels.iter().collect();
    AxiomReport {
        multiset: check_multiset(ts, max),
        composition: check_composition(ts, max),
        all_actions_used: check_all_actions_used(ts, max),
        intermediate_state,
        unique_intermediate_state,
        csa1: check_csa1(ts, max),
        deterministic_labelling: distinct.len() == labels.len(),
        combinatorially_fibrant: check_fibrancy(ts, max),
    }
}

/// [`classify_with`] at the default witness bound.
pub fn classify(ts: &Tsys) -> AxiomReport {
    classify_with(ts, DEFAULT_MAX_WITNESSES)
}

/// True iff whenever a tuple is a transition, so is every positionwise
/// same-label replacement of its word.
pub fn is_combinatorially_fibrant(ts: &Tsys) -> bool {
    check_fibrancy(ts, 1).holds
}

/// The fibrancy verdict together with its witnesses.
pub fn combinatorial_fibrancy(ts: &Tsys, max: usize) -> AxiomVerdict<FibrancyWitness> {
    check_fibrancy(ts, max)
}
