//! Exhaustive morphism enumeration and isomorphism search by backtracking.
//!
//! Both searches carry an explicit node budget so a blowup surfaces as an
//! error rather than a hang.  Actions are assigned before states: once the
//! actions are fixed, every transition word has a fixed image, and the
//! candidate transitions can be read off a word index, which prunes most of
//! the state tree.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::system::{TsMap, Tsys};

/// Node budget for backtracking searches; one unit per assignment attempt.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { limit: 10_000_000 }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit }
    }
}

struct Searcher<'a> {
    a: &'a Tsys,
    x: &'a Tsys,
    a_actions: Vec<&'a String>,
    a_states: Vec<&'a String>,
    x_states: Vec<&'a String>,
    // Per a-action, the same-label candidate actions of x.
    action_candidates: Vec<Vec<&'a String>>,
    // Domain transitions as (state index, action indices, state index).
    a_trans: Vec<(usize, Vec<usize>, usize)>,
    // Which transitions touch a given state variable.
    trans_of_state: Vec<Vec<usize>>,
    // Codomain transitions grouped by word.
    x_by_word: HashMap<Vec<&'a String>, Vec<(&'a String, &'a String)>>,
    bijective: bool,
    stop_at_first: bool,
    steps_left: u64,
    results: Vec<TsMap>,
}

impl<'a> Searcher<'a> {
    fn new(
        a: &'a Tsys,
        x: &'a Tsys,
        budget: Budget,
        bijective: bool,
        stop_at_first: bool,
    ) -> Searcher<'a> {
        let a_actions: Vec<&String> = a.actions().collect();
        let a_states: Vec<&String> = a.states().iter().collect();
        let x_states: Vec<&String> = x.states().iter().collect();
        let action_candidates = a_actions
            .iter()
            .map(|u| {
                let l = a.label_of(u).expect("validated input");
                x.actions_with_label(l)
            })
            .collect();
        let state_index: HashMap<&String, usize> =
            a_states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let action_index: HashMap<&String, usize> =
            a_actions.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        let mut a_trans = Vec::new();
        let mut trans_of_state = vec![Vec::new(); a_states.len()];
        for t in a.transitions() {
            let ti = a_trans.len();
            let src = state_index[&t.source];
            let tgt = state_index[&t.target];
            a_trans.push((src, t.word.iter().map(|u| action_index[u]).collect(), tgt));
            trans_of_state[src].push(ti);
            if tgt != src {
                trans_of_state[tgt].push(ti);
            }
        }
        let mut x_by_word: HashMap<Vec<&String>, Vec<(&String, &String)>> = HashMap::new();
        for t in x.transitions() {
            x_by_word
                .entry(t.word.iter().collect())
                .or_default()
                .push((&t.source, &t.target));
        }
        Searcher {
            a,
            x,
            a_actions,
            a_states,
            x_states,
            action_candidates,
            a_trans,
            trans_of_state,
            x_by_word,
            bijective,
            stop_at_first,
            steps_left: budget.limit,
            results: Vec::new(),
        }
    }

    fn spend(&mut self) -> Result<()> {
        if self.steps_left == 0 {
            return Err(Error::SizeLimitExceeded(
                "morphism search exhausted its node budget".into(),
            ));
        }
        self.steps_left -= 1;
        Ok(())
    }

    fn done(&self) -> bool {
        self.stop_at_first && !self.results.is_empty()
    }

    fn run(mut self) -> Result<Vec<TsMap>> {
        let mut action_choice: Vec<Option<&String>> = vec![None; self.a_actions.len()];
        self.assign_action(0, &mut action_choice)?;
        let mut results = self.results;
        results.sort_by(|f, g| {
            f.state_map()
                .cmp(g.state_map())
                .then_with(|| f.action_map().cmp(g.action_map()))
        });
        Ok(results)
    }

    fn assign_action(&mut self, i: usize, choice: &mut Vec<Option<&'a String>>) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if i == self.a_actions.len() {
            return self.start_states(choice);
        }
        let candidates = self.action_candidates[i].clone();
        for v in candidates {
            if self.bijective && choice.iter().flatten().any(|w| *w == v) {
                continue;
            }
            self.spend()?;
            choice[i] = Some(v);
            self.assign_action(i + 1, choice)?;
            choice[i] = None;
            if self.done() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// With all actions fixed, each transition has a fixed image word;
    /// collect the codomain pairs compatible with it and walk the states.
    fn start_states(&mut self, actions: &mut Vec<Option<&'a String>>) -> Result<()> {
        let mut pair_candidates: Vec<Vec<(&'a String, &'a String)>> =
            Vec::with_capacity(self.a_trans.len());
        for (_, word, _) in &self.a_trans {
            let image: Vec<&String> = word.iter().map(|&ai| actions[ai].unwrap()).collect();
            match self.x_by_word.get(&image) {
                Some(pairs) => pair_candidates.push(pairs.clone()),
                None => return Ok(()),
            }
        }
        let mut state_choice: Vec<Option<&String>> = vec![None; self.a_states.len()];
        let action_choice: Vec<&String> = actions.iter().map(|o| o.unwrap()).collect();
        self.assign_state(0, &mut state_choice, &pair_candidates, &action_choice)
    }

    fn consistent(
        &self,
        ti: usize,
        states: &[Option<&'a String>],
        pairs: &[(&'a String, &'a String)],
    ) -> bool {
        let (src, _, tgt) = &self.a_trans[ti];
        pairs.iter().any(|(ps, pt)| {
            states[*src].map(|v| v == *ps).unwrap_or(true)
                && states[*tgt].map(|v| v == *pt).unwrap_or(true)
        })
    }

    fn assign_state(
        &mut self,
        i: usize,
        states: &mut Vec<Option<&'a String>>,
        pair_candidates: &[Vec<(&'a String, &'a String)>],
        actions: &[&'a String],
    ) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if i == self.a_states.len() {
            self.record(states, actions);
            return Ok(());
        }
        let candidates: Vec<&String> = self.x_states.clone();
        for v in candidates {
            if self.bijective && states.iter().flatten().any(|w| *w == v) {
                continue;
            }
            self.spend()?;
            states[i] = Some(v);
            let ok = self.trans_of_state[i]
                .clone()
                .into_iter()
                .all(|ti| self.consistent(ti, states, &pair_candidates[ti]));
            if ok {
                self.assign_state(i + 1, states, pair_candidates, actions)?;
            }
            states[i] = None;
            if self.done() {
                return Ok(());
            }
        }
        Ok(())
    }

    fn record(&mut self, states: &[Option<&'a String>], actions: &[&'a String]) {
        let state_map: BTreeMap<String, String> = self
            .a_states
            .iter()
            .zip(states)
            .map(|(s, v)| ((*s).clone(), (*v.as_ref().unwrap()).clone()))
            .collect();
        let action_map: BTreeMap<String, String> = self
            .a_actions
            .iter()
            .zip(actions)
            .map(|(u, v)| ((*u).clone(), (*v).clone()))
            .collect();
        let map = TsMap::new(self.a.clone(), self.x.clone(), state_map, action_map)
            .expect("the search only emits valid morphisms");
        self.results.push(map);
    }
}

/// Enumerates every morphism from `a` to `x`, in the lexicographic order of
/// the serialized state and action tables.
pub fn hom_search(a: &Tsys, x: &Tsys, budget: Budget) -> Result<Vec<TsMap>> {
    Searcher::new(a, x, budget, false, false).run()
}

/// Number of morphisms from `a` to `x`.
pub fn hom_count(a: &Tsys, x: &Tsys, budget: Budget) -> Result<usize> {
    Ok(hom_search(a, x, budget)?.len())
}

fn degree_profile(ts: &Tsys) -> BTreeMap<Vec<(usize, isize)>, usize> {
    let mut per_state: BTreeMap<&String, BTreeMap<(usize, isize), usize>> = BTreeMap::new();
    for s in ts.states() {
        per_state.insert(s, BTreeMap::new());
    }
    for t in ts.transitions() {
        *per_state
            .get_mut(&t.source)
            .unwrap()
            .entry((t.arity(), 1))
            .or_default() += 1;
        *per_state
            .get_mut(&t.target)
            .unwrap()
            .entry((t.arity(), -1))
            .or_default() += 1;
    }
    let mut profile: BTreeMap<Vec<(usize, isize)>, usize> = BTreeMap::new();
    for (_, m) in per_state {
        let key: Vec<(usize, isize)> = m
            .into_iter()
            .flat_map(|(k, c)| std::iter::repeat_n(k, c))
            .collect();
        *profile.entry(key).or_default() += 1;
    }
    profile
}

fn label_counts(ts: &Tsys) -> BTreeMap<&crate::system::Label, usize> {
    let mut m = BTreeMap::new();
    for l in ts.labelling().values() {
        *m.entry(l).or_default() += 1;
    }
    m
}

fn arity_counts(ts: &Tsys) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for t in ts.transitions() {
        *m.entry(t.arity()).or_default() += 1;
    }
    m
}

/// Finds a label-preserving isomorphism if one exists.  Success is symmetric
/// in the two arguments.  Cheap invariants (carrier sizes, per-label action
/// counts, per-arity transition counts, state degree multisets) prune before
/// the backtracking starts.
pub fn iso_search(x: &Tsys, y: &Tsys, budget: Budget) -> Result<Option<TsMap>> {
    if x.states().len() != y.states().len()
        || x.action_count() != y.action_count()
        || x.transitions().len() != y.transitions().len()
        || label_counts(x) != label_counts(y)
        || arity_counts(x) != arity_counts(y)
        || degree_profile(x) != degree_profile(y)
    {
        return Ok(None);
    }
    let found = Searcher::new(x, y, budget, true, true).run()?;
    Ok(found.into_iter().next())
}
