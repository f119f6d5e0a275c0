//! Constructors for the named systems, generator maps and fixtures.
//!
//! Naming conventions, chosen so serialized goldens diff cleanly:
//! cube states are bitstrings ("010", with "e" for the empty word), cube
//! actions are `label:index` with 1-based indices, and fixture state names
//! follow the usual presentation ("I", "F", "100-", "110+").

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::cats::{coproduct, pushout, pushout_induced, PushoutMode};
use crate::closure::{final_lift, ProfileMap};
use crate::error::{Error, Result};
use crate::homotopy::cyl;
use crate::system::{Label, SetProfile, Transition, TsMap, Tsys};

fn bits_state(bits: &[u8]) -> String {
    if bits.is_empty() {
        "e".to_string()
    } else {
        bits.iter()
            .map(|b| if *b == 0 { '0' } else { '1' })
            .collect()
    }
}

fn cube_action(label: &Label, i: usize) -> String {
    format!("{label}:{i}")
}

fn cube_labelling(labels: &[Label]) -> BTreeMap<String, Label> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (cube_action(l, i + 1), l.clone()))
        .collect()
}

/// The n-cube over the given label list: states {0,1}^n, one action per
/// coordinate, and for every d a d-transition per ordered choice of d
/// distinct coordinates to flip upward.  n = 0 yields the one-state system.
pub fn cube(labels: &[Label]) -> Tsys {
    let n = labels.len();
    let states: BTreeSet<String> = (0..1u32 << n)
        .map(|m| bits_state(&(0..n).map(|i| ((m >> i) & 1) as u8).collect::<Vec<_>>()))
        .collect();
    let mut transitions = BTreeSet::new();
    // Choose the flipped coordinate set, a base assignment for the rest, and
    // an order on the flips.
    for mask in 1..(1u32 << n) {
        let flips: Vec<usize> = (0..n).filter(|i| (mask >> i) & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| (mask >> i) & 1 == 0).collect();
        for base in 0..(1u32 << rest.len()) {
            let mut lo = vec![0u8; n];
            let mut hi = vec![0u8; n];
            for (k, &i) in rest.iter().enumerate() {
                let b = ((base >> k) & 1) as u8;
                lo[i] = b;
                hi[i] = b;
            }
            for &i in &flips {
                hi[i] = 1;
            }
            let d = flips.len();
            for order in flips.iter().permutations(d) {
                let word = order
                    .into_iter()
                    .map(|&i| cube_action(&labels[i], i + 1))
                    .collect();
                transitions.insert(Transition::new(bits_state(&lo), word, bits_state(&hi)));
            }
        }
    }
    Tsys::new(states, cube_labelling(labels), transitions)
}

/// The pure n-transition: the two extremal states of the cube with only the
/// n! full-word transitions.  Not cubical for n > 1.
pub fn pure(labels: &[Label]) -> Tsys {
    let n = labels.len();
    let lo = bits_state(&vec![0; n]);
    let hi = bits_state(&vec![1; n]);
    let mut states = BTreeSet::new();
    states.insert(lo.clone());
    states.insert(hi.clone());
    let mut transitions = BTreeSet::new();
    for order in (0..n).permutations(n) {
        let word: Vec<String> = order
            .into_iter()
            .map(|i| cube_action(&labels[i], i + 1))
            .collect();
        if !word.is_empty() {
            transitions.insert(Transition::new(lo.clone(), word, hi.clone()));
        }
    }
    Tsys::new(states, cube_labelling(labels), transitions)
}

/// The boundary of the n-cube: the cube with its n-transitions removed.
pub fn boundary(labels: &[Label]) -> Result<Tsys> {
    if labels.is_empty() {
        return Err(Error::ArityMismatch(
            "the boundary is defined for cubes of dimension >= 1".into(),
        ));
    }
    let n = labels.len();
    let c = cube(labels);
    let transitions = c
        .transitions()
        .iter()
        .filter(|t| t.arity() < n)
        .cloned()
        .collect();
    Ok(Tsys::new(
        c.states().clone(),
        c.labelling().clone(),
        transitions,
    ))
}

/// The double transition: four states, one action, two disjoint
/// 1-transitions sharing that action.
pub fn double(x: &Label) -> Tsys {
    let states: BTreeSet<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
    let labelling = BTreeMap::from([(x.as_str().to_string(), x.clone())]);
    let a = x.as_str().to_string();
    let transitions = BTreeSet::from([
        Transition::new("1", vec![a.clone()], "2"),
        Transition::new("3", vec![a], "4"),
    ]);
    Tsys::new(states, labelling, transitions)
}

/// A single unused action and no states; fails "all actions used" by
/// construction.
pub fn bare_action(x: &Label) -> Tsys {
    Tsys::new(
        BTreeSet::new(),
        BTreeMap::from([(x.as_str().to_string(), x.clone())]),
        BTreeSet::new(),
    )
}

/// The four-state system with three actions x1, x2, x all carrying the same
/// label: two parallel edges on one component, one doubled edge on the other.
pub fn zx(x: &Label) -> Tsys {
    let states: BTreeSet<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
    let a1 = format!("{x}1");
    let a2 = format!("{x}2");
    let a = x.as_str().to_string();
    let labelling = BTreeMap::from([
        (a1.clone(), x.clone()),
        (a2.clone(), x.clone()),
        (a.clone(), x.clone()),
    ]);
    let transitions = BTreeSet::from([
        Transition::new("1", vec![a1], "2"),
        Transition::new("1", vec![a.clone()], "2"),
        Transition::new("3", vec![a2], "4"),
        Transition::new("3", vec![a], "4"),
    ]);
    Tsys::new(states, labelling, transitions)
}

/// Names of the generator maps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorName {
    /// The fold collapsing two disjoint edges onto the double transition.
    P,
    /// Its cofibrant replacement through the Z system.
    PCof,
    /// The comparison map from the Z system onto the double transition.
    QOfZ,
    /// The two edge inclusions into the double transition.
    C0,
    C1,
    /// Cylinder structure maps of the edge.
    Gamma0,
    Gamma1,
    Sigma,
    /// The edge-doubling trivial cofibration.
    Theta,
    /// The boundary-filling trivial cofibration on glued cubes.
    Eta,
    /// The boundary inclusion into the cube.
    BoundaryIncl,
    /// The pure-transition inclusion into the cube.
    PureIncl,
}

fn need_arity(name: &str, labels: &[Label], want: usize) -> Result<()> {
    if labels.len() != want {
        return Err(Error::ArityMismatch(format!(
            "generator {name} takes {want} label(s), got {}",
            labels.len()
        )));
    }
    Ok(())
}

fn map_from_pairs(
    dom: Tsys,
    cod: Tsys,
    states: &[(&str, &str)],
    actions: &[(&str, &str)],
) -> Result<TsMap> {
    TsMap::new(
        dom,
        cod,
        states
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        actions
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    )
}

/// Two tagged copies of the edge on `x`, as produced by `coproduct`.
fn two_edges(x: &Label) -> (Tsys, String, String) {
    let c1 = cube(std::slice::from_ref(x));
    let (dom, _) = coproduct(&[c1.clone(), c1]);
    let a_left = format!("0.{}", cube_action(x, 1));
    let a_right = format!("1.{}", cube_action(x, 1));
    (dom, a_left, a_right)
}

/// Builds a generator map over the given labels.
pub fn generator(name: GeneratorName, labels: &[Label]) -> Result<TsMap> {
    match name {
        GeneratorName::P => {
            need_arity("p", labels, 1)?;
            let x = &labels[0];
            let (dom, al, ar) = two_edges(x);
            map_from_pairs(
                dom,
                double(x),
                &[("0.0", "1"), ("0.1", "2"), ("1.0", "3"), ("1.1", "4")],
                &[(&al, x.as_str()), (&ar, x.as_str())],
            )
        }
        GeneratorName::PCof => {
            need_arity("p_cof", labels, 1)?;
            let x = &labels[0];
            let (dom, al, ar) = two_edges(x);
            let a1 = format!("{x}1");
            let a2 = format!("{x}2");
            map_from_pairs(
                dom,
                zx(x),
                &[("0.0", "1"), ("0.1", "2"), ("1.0", "3"), ("1.1", "4")],
                &[(&al, &a1), (&ar, &a2)],
            )
        }
        GeneratorName::QOfZ => {
            need_arity("q_of_z", labels, 1)?;
            let x = &labels[0];
            let a1 = format!("{x}1");
            let a2 = format!("{x}2");
            map_from_pairs(
                zx(x),
                double(x),
                &[("1", "1"), ("2", "2"), ("3", "3"), ("4", "4")],
                &[
                    (&a1, x.as_str()),
                    (&a2, x.as_str()),
                    (x.as_str(), x.as_str()),
                ],
            )
        }
        GeneratorName::C0 | GeneratorName::C1 => {
            need_arity("c", labels, 1)?;
            let x = &labels[0];
            let (s0, s1) = if name == GeneratorName::C0 {
                ("1", "2")
            } else {
                ("3", "4")
            };
            map_from_pairs(
                cube(std::slice::from_ref(x)),
                double(x),
                &[("0", s0), ("1", s1)],
                &[(&cube_action(x, 1), x.as_str())],
            )
        }
        GeneratorName::Gamma0 => {
            need_arity("gamma0", labels, 1)?;
            Ok(cyl(&cube(&[labels[0].clone()]))?.gamma0)
        }
        GeneratorName::Gamma1 => {
            need_arity("gamma1", labels, 1)?;
            Ok(cyl(&cube(&[labels[0].clone()]))?.gamma1)
        }
        GeneratorName::Sigma => {
            need_arity("sigma", labels, 1)?;
            Ok(cyl(&cube(&[labels[0].clone()]))?.sigma)
        }
        GeneratorName::Theta => {
            need_arity("theta", labels, 1)?;
            theta(&labels[0])
        }
        GeneratorName::Eta => {
            if labels.is_empty() {
                return Err(Error::ArityMismatch("eta takes at least one label".into()));
            }
            eta(labels)
        }
        GeneratorName::BoundaryIncl => {
            if labels.is_empty() {
                return Err(Error::ArityMismatch(
                    "the boundary inclusion takes at least one label".into(),
                ));
            }
            let b = boundary(labels)?;
            let c = cube(labels);
            TsMap::new(
                b.clone(),
                c,
                b.states().iter().map(|s| (s.clone(), s.clone())).collect(),
                b.actions().map(|a| (a.clone(), a.clone())).collect(),
            )
        }
        GeneratorName::PureIncl => {
            let p = pure(labels);
            let c = cube(labels);
            TsMap::new(
                p.clone(),
                c,
                p.states().iter().map(|s| (s.clone(), s.clone())).collect(),
                p.actions().map(|a| (a.clone(), a.clone())).collect(),
            )
        }
    }
}

/// θ over x: glue the cylinder of the edge and the double transition at the
/// first edge, then include the two free edges.
fn theta(x: &Label) -> Result<TsMap> {
    let c1 = cube(std::slice::from_ref(x));
    let bundle = cyl(&c1)?;
    let c0 = generator(GeneratorName::C0, std::slice::from_ref(x))?;
    // Pushout of gamma0 and c0 along their common domain C1[x].
    let po = pushout(&bundle.gamma0, &c0, PushoutMode::WtsCts)?;
    let c1m = generator(GeneratorName::C1, std::slice::from_ref(x))?;
    let left = bundle.gamma1.then(&po.from_b)?;
    let right = c1m.then(&po.from_c)?;
    let (dom, injs) = coproduct(&[c1.clone(), c1]);
    let mut state_map = BTreeMap::new();
    let mut action_map = BTreeMap::new();
    for (inj, leg) in injs.iter().zip([&left, &right]) {
        for (s, v) in inj.state_map() {
            state_map.insert(v.clone(), leg.apply_state(s).to_string());
        }
        for (a, v) in inj.action_map() {
            action_map.insert(v.clone(), leg.apply_action(a).to_string());
        }
    }
    TsMap::new(dom, po.object.clone(), state_map, action_map)
}

/// The discrete two-point system used to glue cubes end to end.
fn endpoints(n: usize) -> (Tsys, String, String) {
    let lo = bits_state(&vec![0; n]);
    let hi = bits_state(&vec![1; n]);
    let states: BTreeSet<String> = [lo.clone(), hi.clone()].into();
    (Tsys::new(states, BTreeMap::new(), BTreeSet::new()), lo, hi)
}

/// η over a label word: the map from boundary-glued-with-cube to
/// cube-glued-with-cube (endpoints identified) induced by the boundary
/// inclusion.  Bijective on states and on actions.
fn eta(labels: &[Label]) -> Result<TsMap> {
    let n = labels.len();
    let c = cube(labels);
    let b = boundary(labels)?;
    let (pts, lo, hi) = endpoints(n);
    let into = |target: &Tsys| -> Result<TsMap> {
        TsMap::new(
            pts.clone(),
            target.clone(),
            BTreeMap::from([(lo.clone(), lo.clone()), (hi.clone(), hi.clone())]),
            BTreeMap::new(),
        )
    };
    let dom_po = pushout(&into(&b)?, &into(&c)?, PushoutMode::WtsCts)?;
    let cod_po = pushout(&into(&c)?, &into(&c)?, PushoutMode::WtsCts)?;
    // The boundary summand goes through the inclusion into the first cube of
    // the codomain; the cube summand goes to the second.
    let incl = generator(GeneratorName::BoundaryIncl, labels)?;
    let u = incl.then(&cod_po.from_b)?;
    let v = cod_po.from_c.clone();
    pushout_induced(&dom_po, &u, &v)
}

/// The family of counterexample systems with a growing fan of intermediate
/// states: states I, F, a, b_1 .. b_n, two actions with distinct labels, the
/// two full 2-transitions and one u-then-v path plus n v-then-u paths.
pub fn intro(n: usize) -> Result<Tsys> {
    if n == 0 {
        return Err(Error::ArityMismatch("intro requires n >= 1".into()));
    }
    let mut states: BTreeSet<String> = ["I", "F", "a"].iter().map(|s| s.to_string()).collect();
    let u = "u".to_string();
    let v = "v".to_string();
    let labelling = BTreeMap::from([(u.clone(), Label::new("u")), (v.clone(), Label::new("v"))]);
    let mut transitions = BTreeSet::from([
        Transition::new("I", vec![u.clone(), v.clone()], "F"),
        Transition::new("I", vec![v.clone(), u.clone()], "F"),
        Transition::new("I", vec![u.clone()], "a"),
        Transition::new("a", vec![v.clone()], "F"),
    ]);
    for i in 1..=n {
        let b = format!("b{i}");
        states.insert(b.clone());
        transitions.insert(Transition::new("I".to_string(), vec![v.clone()], b.clone()));
        transitions.insert(Transition::new(b, vec![u.clone()], "F".to_string()));
    }
    Ok(Tsys::new(states, labelling, transitions))
}

/// The fixture on which the two flavours of the same-label-edge reflector
/// diverge: eleven states, six actions all carrying one label.
pub fn csa1diff() -> Tsys {
    let names = [
        "alpha", "beta", "chi", "chip", "nu", "nup", "gamma", "U1", "V1", "U2", "V2",
    ];
    let states: BTreeSet<String> = names.iter().map(|s| s.to_string()).collect();
    let x = Label::new("x");
    let acts = ["u1", "u2", "u1p", "u2p", "v", "vp"];
    let labelling: BTreeMap<String, Label> =
        acts.iter().map(|a| (a.to_string(), x.clone())).collect();
    let t = |src: &str, word: &[&str], tgt: &str| {
        Transition::new(
            src.to_string(),
            word.iter().map(|w| w.to_string()).collect(),
            tgt.to_string(),
        )
    };
    let transitions = BTreeSet::from([
        t("alpha", &["u1", "u2"], "beta"),
        t("alpha", &["u2", "u1"], "beta"),
        t("alpha", &["u1"], "chi"),
        t("chi", &["u2"], "beta"),
        t("alpha", &["u2"], "nu"),
        t("nu", &["u1"], "beta"),
        t("alpha", &["u1p", "u2p"], "beta"),
        t("alpha", &["u2p", "u1p"], "beta"),
        t("alpha", &["u1p"], "chip"),
        t("chip", &["u2p"], "beta"),
        t("alpha", &["u2p"], "nup"),
        t("nup", &["u1p"], "beta"),
        t("gamma", &["v"], "chi"),
        t("gamma", &["vp"], "chip"),
        t("U1", &["u1"], "V1"),
        t("U1", &["u1p"], "V1"),
        t("U2", &["u2"], "V2"),
        t("U2", &["u2p"], "V2"),
    ]);
    Tsys::new(states, labelling, transitions)
}

fn signed_state(bits: &[u8], sign: char) -> String {
    let all0 = bits.iter().all(|b| *b == 0);
    let all1 = bits.iter().all(|b| *b == 1);
    if all0 {
        "I".to_string()
    } else if all1 {
        "F".to_string()
    } else {
        format!("{}{}", bits_state(bits), sign)
    }
}

/// Final lift of two copies of the square on (x, x) glued at both extremal
/// states: six states, actions u, vm, vp, twelve transitions.
pub fn wbar2(x: &Label) -> Tsys {
    wbar_lift(x, 2).expect("the square cone is well formed")
}

/// Final lift of two copies of the 3-cube on (x, x, x) glued at both
/// extremal states: fourteen states and actions u1, um, up, u3.
pub fn wbar3(x: &Label) -> Tsys {
    wbar_lift(x, 3).expect("the 3-cube cone is well formed")
}

fn wbar_action_names(n: usize) -> Vec<(String, String)> {
    // Per coordinate: the shared name and the sign-split names for the
    // middle coordinate.
    match n {
        2 => vec![("u".into(), "u".into()), ("vm".into(), "vp".into())],
        3 => vec![
            ("u1".into(), "u1".into()),
            ("um".into(), "up".into()),
            ("u3".into(), "u3".into()),
        ],
        _ => unreachable!(),
    }
}

fn wbar_lift(x: &Label, n: usize) -> Result<Tsys> {
    let c = cube(&vec![x.clone(); n]);
    let names = wbar_action_names(n);
    let mut states = BTreeSet::new();
    for m in 0..(1u32 << n) {
        let bits: Vec<u8> = (0..n).map(|i| ((m >> i) & 1) as u8).collect();
        states.insert(signed_state(&bits, '-'));
        states.insert(signed_state(&bits, '+'));
    }
    let actions: BTreeSet<String> = names
        .iter()
        .flat_map(|(m, p)| [m.clone(), p.clone()])
        .collect();
    let profile = SetProfile {
        states: states.clone(),
        actions_by_label: BTreeMap::from([(x.clone(), actions)]),
    };
    let leg = |sign: char| -> (Tsys, ProfileMap) {
        let state_map = c
            .states()
            .iter()
            .map(|s| {
                let bits: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
                (s.clone(), signed_state(&bits, sign))
            })
            .collect();
        let action_map = (0..n)
            .map(|i| {
                let (minus, plus) = &names[i];
                let chosen = if sign == '-' { minus } else { plus };
                (cube_action(x, i + 1), chosen.clone())
            })
            .collect();
        (
            c.clone(),
            ProfileMap {
                state_map,
                action_map,
            },
        )
    };
    final_lift(&profile, &[leg('-'), leg('+')])
}

/// The comparison map from the glued-squares lift onto the square on (x, x):
/// sign-forgetting on states, both split actions onto the second coordinate.
pub fn wbar2_to_cube(x: &Label) -> TsMap {
    let w = wbar2(x);
    let c = cube(&[x.clone(), x.clone()]);
    let state_map = w
        .states()
        .iter()
        .map(|s| {
            let img = match s.as_str() {
                "I" => "00".to_string(),
                "F" => "11".to_string(),
                other => other[..other.len() - 1].to_string(),
            };
            (s.clone(), img)
        })
        .collect();
    let action_map = BTreeMap::from([
        ("u".to_string(), cube_action(x, 1)),
        ("vm".to_string(), cube_action(x, 2)),
        ("vp".to_string(), cube_action(x, 2)),
    ]);
    TsMap::new(w, c, state_map, action_map).expect("the sign-forgetting map is a morphism")
}

/// The attaching map of the fold along two sign-split edges of the 3-cube
/// lift; its pushout gains a transition that is not an image.
pub fn wbar3_attach(x: &Label) -> Result<TsMap> {
    let (dom, al, ar) = two_edges(x);
    let w = wbar3(x);
    let state_map = BTreeMap::from([
        ("0.0".to_string(), "100-".to_string()),
        ("0.1".to_string(), "110-".to_string()),
        ("1.0".to_string(), "100+".to_string()),
        ("1.1".to_string(), "110+".to_string()),
    ]);
    let action_map = BTreeMap::from([(al, "um".to_string()), (ar, "up".to_string())]);
    TsMap::new(dom, w, state_map, action_map)
}

/// The leg of the fold pushout out of the 3-cube lift.
pub fn wbar3_pushout(x: &Label) -> Result<TsMap> {
    let p = generator(GeneratorName::P, std::slice::from_ref(x))?;
    let attach = wbar3_attach(x)?;
    let po = pushout(&p, &attach, PushoutMode::WtsCts)?;
    Ok(po.from_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::classify;
    use crate::system::validate;

    fn lbl(s: &str) -> Label {
        Label::new(s)
    }

    #[test]
    fn cube_zero_is_one_state() {
        let c = cube(&[]);
        assert_eq!(c.states().len(), 1);
        assert_eq!(c.action_count(), 0);
        assert!(c.transitions().is_empty());
    }

    #[test]
    fn cube_one_and_two() {
        let c1 = cube(&[lbl("x")]);
        assert_eq!(
            (c1.states().len(), c1.action_count(), c1.transitions().len()),
            (2, 1, 1)
        );
        let c2 = cube(&[lbl("x"), lbl("y")]);
        assert_eq!(
            (c2.states().len(), c2.action_count(), c2.transitions().len()),
            (4, 2, 6)
        );
    }

    /// Independent count: C(n,d) * 2^(n-d) * d! transitions in dimension d.
    fn binom(n: usize, d: usize) -> usize {
        (0..d).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn fact(d: usize) -> usize {
        (1..=d).product::<usize>().max(1)
    }

    #[test]
    fn cube_dimension_counts_match_formula() {
        let labels = ["x", "y", "z", "w"].map(lbl);
        for n in 0..=4 {
            let c = cube(&labels[..n]);
            assert_eq!(c.states().len(), 1 << n);
            assert_eq!(c.action_count(), n);
            for d in 1..=n {
                let count = c.transitions().iter().filter(|t| t.arity() == d).count();
                assert_eq!(count, binom(n, d) * (1 << (n - d)) * fact(d), "n={n} d={d}");
            }
        }
    }

    /// Predicate oracle for the cube: enumerate every candidate tuple and
    /// keep those with no repeated coordinate, coordinatewise increase, and
    /// flipped coordinates equal to the word's index set.  Independent of
    /// the constructive enumeration in `cube`.
    fn cube_by_predicate(labels: &[Label]) -> BTreeSet<Transition> {
        let n = labels.len();
        let states: Vec<Vec<u8>> = (0..1u32 << n)
            .map(|m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
            .collect();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut all_words: Vec<Vec<usize>> = Vec::new();
        for _ in 0..n {
            words = words
                .iter()
                .flat_map(|w| {
                    (0..n).map(move |i| {
                        let mut w2 = w.clone();
                        w2.push(i);
                        w2
                    })
                })
                .collect();
            all_words.extend(words.iter().cloned());
        }
        let mut out = BTreeSet::new();
        for lo in &states {
            for hi in &states {
                for word in &all_words {
                    let distinct: BTreeSet<usize> = word.iter().copied().collect();
                    if distinct.len() != word.len() {
                        continue;
                    }
                    if !(0..n).all(|i| lo[i] <= hi[i]) {
                        continue;
                    }
                    if !(0..n).all(|i| (lo[i] != hi[i]) == distinct.contains(&i)) {
                        continue;
                    }
                    out.insert(Transition::new(
                        bits_state(lo),
                        word.iter()
                            .map(|&i| cube_action(&labels[i], i + 1))
                            .collect(),
                        bits_state(hi),
                    ));
                }
            }
        }
        out
    }

    #[test]
    fn cube_matches_the_predicate_oracle() {
        let distinct = ["x", "y", "z", "w"].map(lbl);
        for n in 0..=4 {
            let c = cube(&distinct[..n]);
            assert_eq!(c.transitions(), &cube_by_predicate(&distinct[..n]), "n={n}");
        }
        let repeated = [lbl("x"), lbl("x"), lbl("y")];
        let c = cube(&repeated);
        assert_eq!(c.transitions(), &cube_by_predicate(&repeated));
    }

    #[test]
    fn every_cube_up_to_dimension_four_is_regular_and_csa1() {
        // All label lists over a two-letter alphabet, repetitions included.
        let alphabet = [lbl("x"), lbl("y")];
        let mut lists: Vec<Vec<Label>> = vec![vec![]];
        for n in 0..=4 {
            for word in &lists {
                let r = classify(&cube(word));
                assert!(r.is_regular(), "cube of {word:?} not regular");
                assert!(r.csa1.holds, "cube of {word:?} fails csa1");
            }
            if n < 4 {
                lists = lists
                    .iter()
                    .flat_map(|w| {
                        alphabet.iter().map(move |l| {
                            let mut w2 = w.clone();
                            w2.push(l.clone());
                            w2
                        })
                    })
                    .collect();
            }
        }
    }

    #[test]
    fn pure_has_only_full_words() {
        let p = pure(&[lbl("x"), lbl("y")]);
        assert_eq!(
            (p.states().len(), p.action_count(), p.transitions().len()),
            (2, 2, 2)
        );
        assert!(p.transitions().iter().all(|t| t.arity() == 2));
    }

    #[test]
    fn boundary_drops_top_dimension() {
        let b = boundary(&[lbl("x"), lbl("y")]).unwrap();
        let c = cube(&[lbl("x"), lbl("y")]);
        assert_eq!(b.transitions().len(), c.transitions().len() - 2);
        assert!(classify(&b).is_regular());
        assert!(classify(&boundary(&[lbl("x"), lbl("y"), lbl("z")]).unwrap()).is_regular());
        assert!(boundary(&[]).is_err());
    }

    #[test]
    fn fixture_shapes() {
        let d = double(&lbl("x"));
        assert_eq!(
            (d.states().len(), d.action_count(), d.transitions().len()),
            (4, 1, 2)
        );
        let z = zx(&lbl("x"));
        assert_eq!(
            (z.states().len(), z.action_count(), z.transitions().len()),
            (4, 3, 4)
        );
        let b = bare_action(&lbl("x"));
        assert_eq!((b.states().len(), b.action_count()), (0, 1));
    }

    #[test]
    fn intro_matches_description() {
        let x = intro(3).unwrap();
        assert!(validate(&x).is_empty());
        assert_eq!(x.states().len(), 6);
        assert_eq!(x.action_count(), 2);
        assert_eq!(x.labels().len(), 2);
        // 2n + 2 edges plus the two full 2-transitions.
        assert_eq!(x.transitions().len(), 10);
        assert!(intro(0).is_err());
    }

    #[test]
    fn csa1diff_matches_description() {
        let x = csa1diff();
        assert!(validate(&x).is_empty());
        assert_eq!(x.states().len(), 11);
        assert_eq!(x.action_count(), 6);
        assert_eq!(x.transitions().len(), 18);
        assert!(classify(&x).is_regular());
    }

    #[test]
    fn wbar2_matches_the_frozen_golden() {
        let w = wbar2(&lbl("x"));
        assert!(validate(&w).is_empty());
        assert_eq!(w.states().len(), 6);
        assert_eq!(w.action_count(), 3);
        let t = |src: &str, word: &[&str], tgt: &str| {
            Transition::new(
                src.to_string(),
                word.iter().map(|s| s.to_string()).collect(),
                tgt.to_string(),
            )
        };
        let golden: BTreeSet<Transition> = [
            t("I", &["u"], "10-"),
            t("10-", &["vm"], "F"),
            t("I", &["vm"], "01-"),
            t("01-", &["u"], "F"),
            t("I", &["u"], "10+"),
            t("10+", &["vp"], "F"),
            t("I", &["vp"], "01+"),
            t("01+", &["u"], "F"),
            t("I", &["u", "vm"], "F"),
            t("I", &["vm", "u"], "F"),
            t("I", &["u", "vp"], "F"),
            t("I", &["vp", "u"], "F"),
        ]
        .into();
        assert_eq!(w.transitions(), &golden);
        assert!(classify(&w).is_regular());
    }

    #[test]
    fn wbar3_matches_description() {
        let w = wbar3(&lbl("x"));
        assert!(validate(&w).is_empty());
        assert_eq!(w.states().len(), 14);
        assert_eq!(w.action_count(), 4);
        let report = classify(&w);
        assert!(report.is_cubical());
        assert!(report.is_regular());
        // No transition crosses between the two signed copies.
        assert!(!w
            .transitions()
            .iter()
            .any(|t| t.source == "100-" && t.target == "110+"));
    }

    #[test]
    fn generator_p_collapses_actions() {
        let p = generator(GeneratorName::P, &[lbl("x")]).unwrap();
        assert!(p.bijective_on_states());
        assert!(!p.injective_on_actions());
        assert!(generator(GeneratorName::P, &[]).is_err());
    }

    #[test]
    fn generator_theta_matches_picture() {
        let th = generator(GeneratorName::Theta, &[lbl("x")]).unwrap();
        assert_eq!(th.domain().states().len(), 4);
        assert_eq!(th.domain().action_count(), 2);
        assert_eq!(th.codomain().states().len(), 4);
        assert_eq!(th.codomain().action_count(), 2);
        assert_eq!(th.codomain().transitions().len(), 3);
        assert!(th.injective_on_actions());
        // One extra parallel edge in the codomain; the map hits all but it.
        assert_eq!(th.transition_image().len(), 2);
    }

    #[test]
    fn generator_eta_is_bijective_on_carriers() {
        let e = generator(GeneratorName::Eta, &[lbl("x"), lbl("y")]).unwrap();
        assert!(e.bijective_on_states());
        assert!(e.bijective_on_actions());
        assert_eq!(e.domain().states().len(), 6);
        assert_eq!(e.codomain().states().len(), 6);
        assert_eq!(e.domain().action_count(), 4);
        // The codomain has the two extra 2-transitions of the left cube.
        assert_eq!(
            e.codomain().transitions().len(),
            e.domain().transitions().len() + 2
        );
    }

    #[test]
    fn wbar2_comparison_map_is_valid_and_not_injective_on_states() {
        let g = wbar2_to_cube(&lbl("x"));
        assert!(!g.injective_on_states());
        assert!(g.onto_on_states());
        assert!(g.onto_on_transitions());
    }
}
