//! Text formats for transition systems and nets.
//!
//! LTS files: an optional `states` line, a mandatory `initial` line and one
//! `arc SOURCE LABEL TARGET` line per edge. Net files: `place NAME TOKENS`,
//! `trans NAME` and `arc FROM TO [WEIGHT]` lines, the arc direction being
//! inferred from which endpoint is a place. Tokens match `[A-Za-z0-9_]+` and
//! may not start with `__` (reserved for generated names). Emission is
//! normalizing: parse-emit round trips are byte stable.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lts::{Lts, LtsBuilder};
use crate::petri::{PetriNet, PetriNetBuilder};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {0}: syntax error: {1}")]
    SyntaxError(usize, String),
    #[error("line {0}: duplicate arc")]
    DuplicateArc(usize),
    #[error("line {0}: reserved name {1:?}")]
    ReservedName(usize, String),
}

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_token(tok: &str, line: usize) -> Result<(), FormatError> {
    if !valid_token(tok) {
        return Err(FormatError::SyntaxError(line, format!("bad token {tok:?}")));
    }
    if tok.starts_with("__") {
        return Err(FormatError::ReservedName(line, tok.to_string()));
    }
    Ok(())
}

/// Parses the LTS text format.
pub fn parse_lts(text: &str) -> Result<Lts, FormatError> {
    let mut builder = LtsBuilder::new();
    let mut declared: Vec<(usize, String)> = Vec::new();
    let mut arcs: Vec<(usize, String, String, String)> = Vec::new();
    let mut initial: Option<(usize, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("states") => {
                for tok in words {
                    check_token(tok, line_no)?;
                    declared.push((line_no, tok.to_string()));
                }
            }
            Some("initial") => {
                let tok = words.next().ok_or_else(|| {
                    FormatError::SyntaxError(line_no, "missing initial state".into())
                })?;
                check_token(tok, line_no)?;
                if words.next().is_some() {
                    return Err(FormatError::SyntaxError(line_no, "trailing tokens".into()));
                }
                if initial.is_some() {
                    return Err(FormatError::SyntaxError(line_no, "duplicate initial".into()));
                }
                initial = Some((line_no, tok.to_string()));
            }
            Some("arc") => {
                let (s, l, t) = match (words.next(), words.next(), words.next(), words.next()) {
                    (Some(s), Some(l), Some(t), None) => (s, l, t),
                    _ => {
                        return Err(FormatError::SyntaxError(
                            line_no,
                            "expected `arc SOURCE LABEL TARGET`".into(),
                        ))
                    }
                };
                check_token(s, line_no)?;
                check_token(l, line_no)?;
                check_token(t, line_no)?;
                arcs.push((line_no, s.to_string(), l.to_string(), t.to_string()));
            }
            Some(word) => {
                return Err(FormatError::SyntaxError(
                    line_no,
                    format!("unknown directive {word:?}"),
                ))
            }
            None => unreachable!(),
        }
    }
    let (_, init) =
        initial.ok_or_else(|| FormatError::SyntaxError(0, "missing initial line".into()))?;
    builder.initial(&init);
    for (_, name) in &declared {
        builder.state(name);
    }
    for (line_no, s, l, t) in &arcs {
        builder
            .arc(s, l, t)
            .map_err(|_| FormatError::DuplicateArc(*line_no))?;
    }
    Ok(builder.build())
}

/// Emits the LTS text format: states in discovery order, then the initial
/// state, then the arcs sorted by (source discovery index, label, target).
pub fn emit_lts(lts: &Lts) -> String {
    let mut out = String::new();
    let names: Vec<&str> = lts.states().map(|s| lts.state_name(s)).collect();
    out.push_str("states");
    for name in &names {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out.push_str(&format!("initial {}\n", lts.state_name(lts.initial())));
    let mut arcs: Vec<(usize, &str, usize)> = lts
        .arcs()
        .iter()
        .map(|a| (a.source.0, lts.label_name(a.label), a.target.0))
        .collect();
    arcs.sort();
    for (s, l, t) in arcs {
        out.push_str(&format!("arc {} {} {}\n", names[s], l, names[t]));
    }
    out
}

/// Parses the net text format.
pub fn parse_pn(text: &str) -> Result<PetriNet, FormatError> {
    let mut places: Vec<(usize, String, u64)> = Vec::new();
    let mut transitions: Vec<(usize, String)> = Vec::new();
    let mut arcs: Vec<(usize, String, String, u64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("place") => {
                let (name, tokens) = match (words.next(), words.next(), words.next()) {
                    (Some(n), Some(t), None) => (n, t),
                    _ => {
                        return Err(FormatError::SyntaxError(
                            line_no,
                            "expected `place NAME TOKENS`".into(),
                        ))
                    }
                };
                check_token(name, line_no)?;
                let tokens: u64 = tokens.parse().map_err(|_| {
                    FormatError::SyntaxError(line_no, format!("bad token count {tokens:?}"))
                })?;
                places.push((line_no, name.to_string(), tokens));
            }
            Some("trans") => {
                let name = match (words.next(), words.next()) {
                    (Some(n), None) => n,
                    _ => {
                        return Err(FormatError::SyntaxError(
                            line_no,
                            "expected `trans NAME`".into(),
                        ))
                    }
                };
                check_token(name, line_no)?;
                transitions.push((line_no, name.to_string()));
            }
            Some("arc") => {
                let (from, to, weight) = match (words.next(), words.next(), words.next(), words.next())
                {
                    (Some(f), Some(t), None, None) => (f, t, 1),
                    (Some(f), Some(t), Some(w), None) => {
                        let w: u64 = w.parse().map_err(|_| {
                            FormatError::SyntaxError(line_no, format!("bad weight {w:?}"))
                        })?;
                        if w == 0 {
                            return Err(FormatError::SyntaxError(
                                line_no,
                                "arc weight must be at least 1".into(),
                            ));
                        }
                        (f, t, w)
                    }
                    _ => {
                        return Err(FormatError::SyntaxError(
                            line_no,
                            "expected `arc FROM TO [WEIGHT]`".into(),
                        ))
                    }
                };
                check_token(from, line_no)?;
                check_token(to, line_no)?;
                arcs.push((line_no, from.to_string(), to.to_string(), weight));
            }
            Some(word) => {
                return Err(FormatError::SyntaxError(
                    line_no,
                    format!("unknown directive {word:?}"),
                ))
            }
            None => unreachable!(),
        }
    }
    let mut builder = PetriNetBuilder::new();
    let mut kind: BTreeMap<String, bool> = BTreeMap::new(); // true = place
    for (line_no, name, tokens) in &places {
        if kind.insert(name.clone(), true).is_some() {
            return Err(FormatError::SyntaxError(
                *line_no,
                format!("duplicate name {name:?}"),
            ));
        }
        builder.place(name, *tokens);
    }
    for (line_no, name) in &transitions {
        if kind.insert(name.clone(), false).is_some() {
            return Err(FormatError::SyntaxError(
                *line_no,
                format!("duplicate name {name:?}"),
            ));
        }
        builder.transition(name);
    }
    let mut seen_arcs = BTreeMap::new();
    for (line_no, from, to, weight) in &arcs {
        if seen_arcs.insert((from.clone(), to.clone()), ()).is_some() {
            return Err(FormatError::DuplicateArc(*line_no));
        }
        let arc = match (kind.get(from), kind.get(to)) {
            (Some(true), Some(false)) => builder.consume(from, to, *weight),
            (Some(false), Some(true)) => builder.produce(from, to, *weight),
            (None, _) => {
                return Err(FormatError::SyntaxError(
                    *line_no,
                    format!("undeclared endpoint {from:?}"),
                ))
            }
            (_, None) => {
                return Err(FormatError::SyntaxError(
                    *line_no,
                    format!("undeclared endpoint {to:?}"),
                ))
            }
            _ => {
                return Err(FormatError::SyntaxError(
                    *line_no,
                    "arc must connect a place and a transition".into(),
                ))
            }
        };
        arc.map_err(|e| FormatError::SyntaxError(*line_no, e.to_string()))?;
    }
    Ok(builder.build())
}

/// Emits the net text format: places then transitions alphabetically, arcs
/// sorted by (from, to).
pub fn emit_pn(net: &PetriNet) -> String {
    let mut out = String::new();
    let mut places: Vec<usize> = (0..net.num_places()).collect();
    places.sort_by_key(|&p| net.place_name(crate::petri::PlaceId(p)));
    for p in &places {
        let p = crate::petri::PlaceId(*p);
        out.push_str(&format!(
            "place {} {}\n",
            net.place_name(p),
            net.initial_marking().tokens(p)
        ));
    }
    let mut transitions: Vec<usize> = (0..net.num_transitions()).collect();
    transitions.sort_by_key(|&t| net.transition_name(crate::petri::TransitionId(t)));
    for t in &transitions {
        out.push_str(&format!(
            "trans {}\n",
            net.transition_name(crate::petri::TransitionId(*t))
        ));
    }
    let mut arcs: Vec<(String, String, u64)> = Vec::new();
    for p in net.places() {
        for t in net.transitions() {
            let w = net.weight_consume(p, t);
            if w > 0 {
                arcs.push((
                    net.place_name(p).to_string(),
                    net.transition_name(t).to_string(),
                    w,
                ));
            }
            let w = net.weight_produce(t, p);
            if w > 0 {
                arcs.push((
                    net.transition_name(t).to_string(),
                    net.place_name(p).to_string(),
                    w,
                ));
            }
        }
    }
    arcs.sort();
    for (from, to, w) in arcs {
        if w == 1 {
            out.push_str(&format!("arc {from} {to}\n"));
        } else {
            out.push_str(&format!("arc {from} {to} {w}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lts::are_isomorphic;

    #[test]
    fn parse_chain_bb() {
        let lts = parse_lts("initial i\narc i b s1\narc s1 b s2\n").unwrap();
        assert!(are_isomorphic(&lts, &fixtures::chain_bb()).unwrap().is_some());
    }

    #[test]
    fn lts_round_trip_is_byte_stable() {
        let text = "arc s1 b s2\ninitial i\n\narc i b s1\nstates x\n";
        let once = emit_lts(&parse_lts(text).unwrap());
        let twice = emit_lts(&parse_lts(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn lts_rejects_reserved_and_duplicates() {
        assert_eq!(
            parse_lts("initial i\narc i __u0 i\n").unwrap_err(),
            FormatError::ReservedName(2, "__u0".to_string())
        );
        assert_eq!(
            parse_lts("initial i\narc i a s\narc i a s\n").unwrap_err(),
            FormatError::DuplicateArc(3)
        );
        assert!(matches!(
            parse_lts("arc i a s\n").unwrap_err(),
            FormatError::SyntaxError(0, _)
        ));
    }

    #[test]
    fn pn_round_trip() {
        let text = "place p 1\ntrans a\narc p a\n";
        let net = parse_pn(text).unwrap();
        assert_eq!(net.num_places(), 1);
        assert_eq!(net.num_transitions(), 1);
        let once = emit_pn(&net);
        let twice = emit_pn(&parse_pn(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn pn_rejects_zero_weight() {
        assert!(matches!(
            parse_pn("place p 1\ntrans a\narc p a 0\n").unwrap_err(),
            FormatError::SyntaxError(3, _)
        ));
    }

    #[test]
    fn pn_rejects_undeclared_and_same_kind_arcs() {
        assert!(matches!(
            parse_pn("place p 1\narc p a\n").unwrap_err(),
            FormatError::SyntaxError(2, _)
        ));
        assert!(matches!(
            parse_pn("place p 1\nplace q 0\narc p q\n").unwrap_err(),
            FormatError::SyntaxError(3, _)
        ));
    }

    #[test]
    fn net21_fixture_parses() {
        let net = fixtures::net21();
        assert_eq!(net.num_places(), 11);
        assert_eq!(net.num_transitions(), 5);
    }
}
