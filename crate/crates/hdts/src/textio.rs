//! Line-oriented text formats for systems and maps, with deterministic
//! serialization: states, actions and transitions are emitted in sorted
//! order, so structurally equal systems serialize identically.
//!
//! System format (`#` starts a comment):
//!
//! ```text
//! hdts 1
//! state <name>
//! action <name> <label>
//! trans <src> <a1> ... <an> <tgt>
//! ```
//!
//! Map format:
//!
//! ```text
//! hdts-map 1
//! from <path> ; to <path>
//! state <src-name> <dst-name>
//! action <src-name> <dst-name>
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::system::{Label, Transition, TsMap, Tsys};

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '+' | ':' | '-'))
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for piece in body.split_whitespace() {
            let at = body[col..].find(piece).unwrap() + col;
            tokens.push((at + 1, piece));
            col = at + piece.len();
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn check_header(lines: &[Line<'_>], magic: &str) -> Result<()> {
    let Some(first) = lines.first() else {
        return Err(err(1, 1, "empty document"));
    };
    let words: Vec<&str> = first.tokens.iter().map(|(_, t)| *t).collect();
    if words != [magic, "1"] {
        return Err(err(
            first.number,
            first.tokens[0].0,
            format!("expected header `{magic} 1`"),
        ));
    }
    Ok(())
}

fn ident_at(line: &Line<'_>, idx: usize, what: &str) -> Result<String> {
    let (col, tok) = line
        .tokens
        .get(idx)
        .ok_or_else(|| err(line.number, 1, format!("missing {what}")))?;
    if !is_ident(tok) {
        return Err(err(
            line.number,
            *col,
            format!("invalid {what} `{tok}` (allowed characters: A-Za-z0-9_.+:-)"),
        ));
    }
    Ok(tok.to_string())
}

/// Parses a system document.  Declarations may appear in any order.
/// Duplicate declarations parse with a warning (set semantics); a transition
/// that names an undeclared state or action is an error.
pub fn parse_tsys(text: &str) -> Result<(Tsys, Vec<String>)> {
    let lines = significant_lines(text);
    check_header(&lines, "hdts")?;
    let mut states: BTreeSet<String> = BTreeSet::new();
    let mut labelling: BTreeMap<String, Label> = BTreeMap::new();
    let mut warnings = Vec::new();
    for line in &lines[1..] {
        let (col, keyword) = line.tokens[0];
        match keyword {
            "state" => {
                if line.tokens.len() != 2 {
                    return Err(err(line.number, col, "state takes exactly one name"));
                }
                let name = ident_at(line, 1, "state name")?;
                if !states.insert(name.clone()) {
                    warnings.push(format!("line {}: duplicate state {name}", line.number));
                }
            }
            "action" => {
                if line.tokens.len() != 3 {
                    return Err(err(line.number, col, "action takes a name and a label"));
                }
                let name = ident_at(line, 1, "action name")?;
                let label = Label::new(ident_at(line, 2, "label")?);
                match labelling.get(&name) {
                    Some(prev) if *prev != label => {
                        return Err(err(
                            line.number,
                            col,
                            format!("action {name} redeclared with a different label"),
                        ));
                    }
                    Some(_) => {
                        warnings.push(format!("line {}: duplicate action {name}", line.number))
                    }
                    None => {
                        labelling.insert(name, label);
                    }
                }
            }
            "trans" => {}
            other => return Err(err(line.number, col, format!("unknown keyword `{other}`"))),
        }
    }
    let mut transitions: BTreeSet<Transition> = BTreeSet::new();
    for line in &lines[1..] {
        let (col, keyword) = line.tokens[0];
        if keyword != "trans" {
            continue;
        }
        if line.tokens.len() < 4 {
            return Err(err(
                line.number,
                col,
                "trans takes a source, at least one action, and a target",
            ));
        }
        let source = ident_at(line, 1, "source state")?;
        let target = ident_at(line, line.tokens.len() - 1, "target state")?;
        for (name, what) in [(&source, "source state"), (&target, "target state")] {
            if !states.contains(name) {
                return Err(err(line.number, col, format!("undeclared {what} {name}")));
            }
        }
        let mut word = Vec::new();
        for idx in 2..line.tokens.len() - 1 {
            let a = ident_at(line, idx, "action")?;
            if !labelling.contains_key(&a) {
                return Err(err(
                    line.number,
                    line.tokens[idx].0,
                    format!("undeclared action {a}"),
                ));
            }
            word.push(a);
        }
        let t = Transition::new(source, word, target);
        if !transitions.insert(t) {
            warnings.push(format!("line {}: duplicate transition", line.number));
        }
    }
    Ok((Tsys::new(states, labelling, transitions), warnings))
}

/// Serializes a system to its canonical document.
pub fn serialize_tsys(ts: &Tsys) -> String {
    let mut out = String::from("hdts 1\n");
    for s in ts.states() {
        writeln!(out, "state {s}").unwrap();
    }
    for (a, l) in ts.labelling() {
        writeln!(out, "action {a} {l}").unwrap();
    }
    for t in ts.transitions() {
        writeln!(out, "trans {} {} {}", t.source, t.word.join(" "), t.target).unwrap();
    }
    out
}

/// Parses a map document.  The `resolver` loads the two referenced system
/// documents by path.
pub fn parse_map<R>(text: &str, mut resolver: R) -> Result<(TsMap, Vec<String>)>
where
    R: FnMut(&str) -> Result<Tsys>,
{
    let lines = significant_lines(text);
    check_header(&lines, "hdts-map")?;
    let Some(from_line) = lines.get(1) else {
        return Err(err(1, 1, "missing `from <path> ; to <path>` line"));
    };
    let words: Vec<&str> = from_line.tokens.iter().map(|(_, t)| *t).collect();
    let shape_ok = words.len() >= 5
        && words[0] == "from"
        && words.contains(&";")
        && words[words.iter().position(|w| *w == ";").unwrap() + 1] == "to";
    if !shape_ok {
        return Err(err(
            from_line.number,
            from_line.tokens[0].0,
            "expected `from <path> ; to <path>`",
        ));
    }
    let semi = words.iter().position(|w| *w == ";").unwrap();
    let from_path = words[1..semi].join(" ");
    let to_path = words[semi + 2..].join(" ");
    let domain = resolver(&from_path)?;
    let codomain = resolver(&to_path)?;
    let mut state_map: BTreeMap<String, String> = BTreeMap::new();
    let mut action_map: BTreeMap<String, String> = BTreeMap::new();
    let mut warnings = Vec::new();
    for line in &lines[2..] {
        let (col, keyword) = line.tokens[0];
        if line.tokens.len() != 3 {
            return Err(err(line.number, col, "expected `<kind> <src> <dst>`"));
        }
        let src = ident_at(line, 1, "source name")?;
        let dst = ident_at(line, 2, "target name")?;
        match keyword {
            "state" => {
                if !domain.states().contains(&src) {
                    return Err(Error::UnresolvedReference(format!(
                        "line {}: state {src} is not in the domain",
                        line.number
                    )));
                }
                if !codomain.states().contains(&dst) {
                    return Err(Error::UnresolvedReference(format!(
                        "line {}: state {dst} is not in the codomain",
                        line.number
                    )));
                }
                if let Some(prev) = state_map.insert(src.clone(), dst.clone()) {
                    if prev != dst {
                        return Err(err(line.number, col, format!("state {src} mapped twice")));
                    }
                    warnings.push(format!("line {}: duplicate state entry", line.number));
                }
            }
            "action" => {
                if domain.label_of(&src).is_none() {
                    return Err(Error::UnresolvedReference(format!(
                        "line {}: action {src} is not in the domain",
                        line.number
                    )));
                }
                if codomain.label_of(&dst).is_none() {
                    return Err(Error::UnresolvedReference(format!(
                        "line {}: action {dst} is not in the codomain",
                        line.number
                    )));
                }
                if let Some(prev) = action_map.insert(src.clone(), dst.clone()) {
                    if prev != dst {
                        return Err(err(line.number, col, format!("action {src} mapped twice")));
                    }
                    warnings.push(format!("line {}: duplicate action entry", line.number));
                }
            }
            other => {
                return Err(err(line.number, col, format!("unknown keyword `{other}`")));
            }
        }
    }
    let map = TsMap::new(domain, codomain, state_map, action_map)?;
    Ok((map, warnings))
}

/// Serializes a map; the two paths record where its endpoint documents live.
pub fn serialize_map(map: &TsMap, from_path: &str, to_path: &str) -> String {
    let mut out = String::from("hdts-map 1\n");
    writeln!(out, "from {from_path} ; to {to_path}").unwrap();
    for (s, v) in map.state_map() {
        writeln!(out, "state {s} {v}").unwrap();
    }
    for (a, v) in map.action_map() {
        writeln!(out, "action {a} {v}").unwrap();
    }
    out
}
