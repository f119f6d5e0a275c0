//! Cylinder and cocylinder functors, cofibration and homotopy tests, the
//! weak-equivalence deciders of the four model structures, fibrancy, and
//! lifting-property checks.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::axioms::{classify, is_combinatorially_fibrant};
use crate::cats::cts_coreflection;
use crate::error::{Error, Result};
use crate::hom::{hom_search, Budget};
use crate::reflect::{induced_map, ReflectorKind};
use crate::system::{is_iso_map, Label, Transition, TsMap, Tsys};

/// The cylinder of a system with its two end inclusions and the projection.
pub struct CylBundle {
    pub cyl: Tsys,
    pub gamma0: TsMap,
    pub gamma1: TsMap,
    pub sigma: TsMap,
}

fn cyl_action(u: &str, side: u8) -> String {
    format!("{u}.{side}")
}

fn require_cubical(x: &Tsys, who: &str) -> Result<()> {
    if !classify(x).is_cubical() {
        return Err(Error::PreconditionFailed(format!(
            "{who} is defined on cubical systems"
        )));
    }
    Ok(())
}

/// Doubles every action; a tuple over the doubled actions is a transition
/// exactly when its projection is.  States are unchanged, so the projection
/// is bijective on states and the end inclusions are cofibrations.
pub fn cyl(x: &Tsys) -> Result<CylBundle> {
    require_cubical(x, "the cylinder")?;
    let mut labelling: BTreeMap<String, Label> = BTreeMap::new();
    for (u, l) in x.labelling() {
        labelling.insert(cyl_action(u, 0), l.clone());
        labelling.insert(cyl_action(u, 1), l.clone());
    }
    let mut transitions = BTreeSet::new();
    for t in x.transitions() {
        for signs in std::iter::repeat_n([0u8, 1u8], t.arity()).multi_cartesian_product() {
            let word = t
                .word
                .iter()
                .zip(&signs)
                .map(|(u, s)| cyl_action(u, *s))
                .collect();
            transitions.insert(Transition::new(t.source.clone(), word, t.target.clone()));
        }
    }
    let cyl = Tsys::new(x.states().clone(), labelling, transitions);
    let id_states: BTreeMap<String, String> =
        x.states().iter().map(|s| (s.clone(), s.clone())).collect();
    let end = |side: u8| -> Result<TsMap> {
        TsMap::new(
            x.clone(),
            cyl.clone(),
            id_states.clone(),
            x.actions()
                .map(|u| (u.clone(), cyl_action(u, side)))
                .collect(),
        )
    };
    let gamma0 = end(0)?;
    let gamma1 = end(1)?;
    let sigma = TsMap::new(
        cyl.clone(),
        x.clone(),
        id_states,
        x.actions()
            .flat_map(|u| [(cyl_action(u, 0), u.clone()), (cyl_action(u, 1), u.clone())])
            .collect(),
    )?;
    Ok(CylBundle {
        cyl,
        gamma0,
        gamma1,
        sigma,
    })
}

/// The cocylinder with its two evaluation maps.
pub struct CocylBundle {
    pub cocyl: Tsys,
    pub eval0: TsMap,
    pub eval1: TsMap,
}

fn paired(a: &str, b: &str) -> String {
    format!("{a}:{b}")
}

/// Same-label action pairs of `x`, with the component projections.
fn paired_actions(
    x: &Tsys,
) -> (
    BTreeMap<String, Label>,
    BTreeMap<String, String>,
    BTreeMap<String, String>,
) {
    let mut labelling = BTreeMap::new();
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (u, lu) in x.labelling() {
        for (v, lv) in x.labelling() {
            if lu != lv {
                continue;
            }
            let name = paired(u, v);
            labelling.insert(name.clone(), lu.clone());
            left.insert(name.clone(), u.clone());
            right.insert(name, v.clone());
        }
    }
    (labelling, left, right)
}

/// The right adjoint of the cylinder computed over the weakest class: a
/// paired tuple is a transition only when all sign choices project to
/// transitions.  Used as the slow route for non-fibrant systems.
pub fn cocyl_wts(x: &Tsys) -> Tsys {
    let (labelling, left, right) = paired_actions(x);
    let mut transitions = BTreeSet::new();
    for t in x.transitions() {
        // Candidate pairings positionwise, then keep those whose every
        // projection choice is a transition.
        let choices: Vec<Vec<String>> = t
            .word
            .iter()
            .map(|u| {
                let lu = x.label_of(u).expect("validated input");
                x.actions_with_label(lu)
                    .into_iter()
                    .map(|v| paired(u, v))
                    .collect()
            })
            .collect();
        for word in choices.into_iter().multi_cartesian_product() {
            let all_present = std::iter::repeat_n([&left, &right], word.len())
                .multi_cartesian_product()
                .all(|proj| {
                    let w: Vec<String> = word
                        .iter()
                        .zip(proj)
                        .map(|(p, side)| side[p].clone())
                        .collect();
                    x.has_transition(&Transition::new(t.source.clone(), w, t.target.clone()))
                });
            if all_present {
                transitions.insert(Transition::new(t.source.clone(), word, t.target.clone()));
            }
        }
    }
    Tsys::new(x.states().clone(), labelling, transitions)
}

/// The cocylinder of a cubical system.
///
/// For a combinatorially fibrant input the direct formula applies: the
/// paired tuple is a transition when some (equivalently every) sign choice
/// is.  Otherwise the weak-route cocylinder is corrected by the cubical
/// coreflection.
pub fn cocyl(x: &Tsys, budget: Budget) -> Result<CocylBundle> {
    require_cubical(x, "the cocylinder")?;
    if is_combinatorially_fibrant(x) {
        let (labelling, left, right) = paired_actions(x);
        let mut transitions = BTreeSet::new();
        for t in x.transitions() {
            let choices: Vec<Vec<String>> = t
                .word
                .iter()
                .map(|u| {
                    let lu = x.label_of(u).expect("validated input");
                    x.actions_with_label(lu)
                        .into_iter()
                        .map(|v| paired(u, v))
                        .collect()
                })
                .collect();
            for word in choices.into_iter().multi_cartesian_product() {
                transitions.insert(Transition::new(t.source.clone(), word, t.target.clone()));
            }
        }
        let cocyl = Tsys::new(x.states().clone(), labelling, transitions);
        let id_states: BTreeMap<String, String> =
            x.states().iter().map(|s| (s.clone(), s.clone())).collect();
        let eval0 = TsMap::new(cocyl.clone(), x.clone(), id_states.clone(), left)?;
        let eval1 = TsMap::new(cocyl.clone(), x.clone(), id_states, right)?;
        return Ok(CocylBundle {
            cocyl,
            eval0,
            eval1,
        });
    }
    let w = cocyl_wts(x);
    let (core, counit) = cts_coreflection(&w, budget)?;
    let (_, left, right) = paired_actions(x);
    let id_states: BTreeMap<String, String> =
        w.states().iter().map(|s| (s.clone(), s.clone())).collect();
    let proj = |tbl: BTreeMap<String, String>| -> Result<TsMap> {
        TsMap::new(w.clone(), x.clone(), id_states.clone(), tbl)
    };
    let eval0 = counit.then(&proj(left)?)?;
    let eval1 = counit.then(&proj(right)?)?;
    Ok(CocylBundle {
        cocyl: core,
        eval0,
        eval1,
    })
}

/// A map between cubical systems is a cofibration exactly when it is
/// one-to-one on actions.
pub fn is_cofibration(f: &TsMap) -> Result<bool> {
    require_cubical(f.domain(), "the cofibration test")?;
    require_cubical(f.codomain(), "the cofibration test")?;
    Ok(f.injective_on_actions())
}

/// Left homotopy through the cylinder.  A homotopy is forced on states by
/// `f` and on actions by the pair `(f, g)`, so the test checks whether the
/// forced candidate maps every cylinder transition to a transition.
///
/// Both endpoints are expected to be cubical; this is the caller's
/// obligation and is not re-verified here.
pub fn are_homotopic(f: &TsMap, g: &TsMap) -> Result<bool> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::PreconditionFailed(
            "homotopy compares parallel maps".into(),
        ));
    }
    if f.state_map() != g.state_map() {
        return Ok(false);
    }
    let y = f.codomain();
    for t in f.domain().transitions() {
        let per_position: Vec<Vec<&String>> = t
            .word
            .iter()
            .map(|u| vec![&f.action_map()[u], &g.action_map()[u]])
            .collect();
        for word in per_position.into_iter().multi_cartesian_product() {
            let cand = Transition::new(
                f.apply_state(&t.source).to_string(),
                word.into_iter().cloned().collect(),
                f.apply_state(&t.target).to_string(),
            );
            if !y.has_transition(&cand) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The four model structures whose weak equivalences this crate decides.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelStructure {
    /// Left-determined, cubical systems.
    LdCts,
    /// Left-determined, regular systems.
    LdRts,
    /// Localization by cubification, cubical systems.
    BlCts,
    /// Localization by cubification, regular systems.
    BlRts,
}

/// Decides whether `f` is a weak equivalence of the chosen structure: the
/// corresponding reflector must send it to an isomorphism.
pub fn is_weq(f: &TsMap, structure: ModelStructure) -> Result<bool> {
    let kind = match structure {
        ModelStructure::LdCts => ReflectorKind::Csa1Cts,
        ModelStructure::LdRts => ReflectorKind::Csa1Rts,
        ModelStructure::BlCts => ReflectorKind::LsCts,
        ModelStructure::BlRts => ReflectorKind::LsRts,
    };
    Ok(is_iso_map(&induced_map(kind, f)?))
}

/// Fibrancy in the localized structures coincides with combinatorial
/// fibrancy; the regular flavour additionally requires a regular input.
pub fn is_fibrant(x: &Tsys, structure: ModelStructure) -> Result<bool> {
    match structure {
        ModelStructure::BlCts => {
            require_cubical(x, "the fibrancy test")?;
            Ok(is_combinatorially_fibrant(x))
        }
        ModelStructure::BlRts => {
            if !classify(x).is_regular() {
                return Err(Error::PreconditionFailed(
                    "the regular fibrancy test needs a regular input".into(),
                ));
            }
            Ok(is_combinatorially_fibrant(x))
        }
        _ => Err(Error::PreconditionFailed(
            "fibrancy is only decided for the localized structures".into(),
        )),
    }
}

/// Sufficient condition for fibrancy in the left-determined structures:
/// regular systems without same-label parallel edges are fibrant.  Returns
/// `None` when the condition does not apply; no complete test is available.
pub fn ld_fibrant_sufficient(x: &Tsys) -> Option<bool> {
    let report = classify(x);
    if report.is_regular() && report.csa1.holds {
        Some(true)
    } else {
        None
    }
}

/// Right lifting property of `p` against `i`: every commuting square has a
/// diagonal filler.
pub fn has_rlp(p: &TsMap, i: &TsMap, budget: Budget) -> Result<bool> {
    let fillers = hom_search(i.codomain(), p.domain(), budget)?;
    let tops = hom_search(i.domain(), p.domain(), budget)?;
    let bottoms = hom_search(i.codomain(), p.codomain(), budget)?;
    for phi in &tops {
        for psi in &bottoms {
            let around_top = phi.then(p)?;
            let around_bottom = i.then(psi)?;
            if around_top != around_bottom {
                continue;
            }
            let lifted = fillers.iter().any(|ell| {
                i.then(ell).map(|m| m == *phi).unwrap_or(false)
                    && ell.then(p).map(|m| m == *psi).unwrap_or(false)
            });
            if !lifted {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Injectivity of `x` with respect to `i`: every map from the domain of `i`
/// into `x` extends along `i`.
pub fn injective_wrt(x: &Tsys, i: &TsMap, budget: Budget) -> Result<bool> {
    let extensions = hom_search(i.codomain(), x, budget)?;
    for phi in hom_search(i.domain(), x, budget)? {
        let extends = extensions
            .iter()
            .any(|ell| i.then(ell).map(|m| m == phi).unwrap_or(false));
        if !extends {
            return Ok(false);
        }
    }
    Ok(true)
}
