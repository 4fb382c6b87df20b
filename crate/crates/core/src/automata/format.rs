use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Alphabet, Dfa, Nfa, Rdfa};
use crate::{Error, Result};

/// A parsed automaton file.
#[derive(Debug, Clone)]
pub enum AutomatonFile {
    Nfa(Nfa),
    Dfa(Dfa),
    Rdfa(Rdfa),
}

/// Parses the line-oriented automaton text format.
///
/// One item per line: `kind: dfa|rdfa|nfa`, `alphabet: ab`, `padding: a`,
/// `states: 3`, `initial: 0` (NFAs may list several), `finals: 1 2`, and one
/// `trans: p a q` line per transition. For a `dfa`, `trans: p a q` means
/// reading `a` in `p` moves to `q`; for an `rdfa`, `trans: q a p` is the
/// right-to-left step out of `q`. Comments start with `#`.
pub fn parse_automaton(text: &str) -> Result<AutomatonFile> {
    let mut kind: Option<String> = None;
    let mut alphabet: Option<Vec<u8>> = None;
    let mut padding: Option<u8> = None;
    let mut states: Option<usize> = None;
    let mut initial: Vec<usize> = Vec::new();
    let mut finals: Vec<usize> = Vec::new();
    let mut trans: Vec<(usize, u8, usize, usize)> = Vec::new(); // (p, a, q, line)

    let err = |line: usize, message: &str| Error::Format {
        line,
        message: message.to_string(),
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected 'key: value'"))?;
        let value = value.trim();
        match key.trim() {
            "kind" => kind = Some(value.to_string()),
            "alphabet" => {
                if !value.is_ascii() {
                    return Err(err(line_no, "alphabet symbols must be single bytes"));
                }
                alphabet = Some(value.bytes().collect());
            }
            "padding" => {
                let bytes: Vec<u8> = value.bytes().collect();
                if bytes.len() != 1 {
                    return Err(err(line_no, "padding must be a single symbol"));
                }
                padding = Some(bytes[0]);
            }
            "states" => {
                states = Some(
                    value
                        .parse()
                        .map_err(|_| err(line_no, "states must be a number"))?,
                );
            }
            "initial" => {
                for tok in value.split_whitespace() {
                    initial.push(
                        tok.parse()
                            .map_err(|_| err(line_no, "initial states must be numbers"))?,
                    );
                }
            }
            "finals" => {
                for tok in value.split_whitespace() {
                    finals.push(
                        tok.parse()
                            .map_err(|_| err(line_no, "final states must be numbers"))?,
                    );
                }
            }
            "trans" => {
                let toks: Vec<&str> = value.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(err(line_no, "trans needs 'state symbol state'"));
                }
                let p = toks[0]
                    .parse()
                    .map_err(|_| err(line_no, "bad source state"))?;
                let sym = toks[1].as_bytes();
                if sym.len() != 1 {
                    return Err(err(line_no, "symbol must be a single byte"));
                }
                let q = toks[2]
                    .parse()
                    .map_err(|_| err(line_no, "bad target state"))?;
                trans.push((p, sym[0], q, line_no));
            }
            other => return Err(err(line_no, &format!("unknown key '{other}'"))),
        }
    }

    let kind = kind.ok_or_else(|| err(0, "missing 'kind' header"))?;
    let symbols = alphabet.ok_or_else(|| err(0, "missing 'alphabet'"))?;
    let padding = padding.unwrap_or(symbols[0]);
    let alphabet = Alphabet::new(&symbols, padding).map_err(|e| Error::Format {
        line: 0,
        message: e.to_string(),
    })?;
    let n = states.ok_or_else(|| err(0, "missing 'states'"))?;
    for &q in initial.iter().chain(finals.iter()) {
        if q >= n {
            return Err(err(0, &format!("state {q} out of range")));
        }
    }
    for &(p, a, q, line_no) in &trans {
        if p >= n || q >= n {
            return Err(err(line_no, "transition state out of range"));
        }
        if !alphabet.contains(a) {
            return Err(err(line_no, "transition symbol not in alphabet"));
        }
    }

    match kind.as_str() {
        "nfa" => {
            let transitions: BTreeSet<(usize, u8, usize)> =
                trans.iter().map(|&(p, a, q, _)| (p, a, q)).collect();
            Ok(AutomatonFile::Nfa(Nfa::new(
                alphabet,
                n,
                initial.into_iter().collect(),
                transitions,
                finals.into_iter().collect(),
            )))
        }
        "dfa" | "rdfa" => {
            if initial.len() != 1 {
                return Err(err(0, "dfa/rdfa needs exactly one initial state"));
            }
            let mut delta = vec![vec![usize::MAX; alphabet.len()]; n];
            for &(p, a, q, line_no) in &trans {
                let ai = alphabet.index_of(a).unwrap();
                if delta[p][ai] != usize::MAX {
                    return Err(err(line_no, "duplicate transition"));
                }
                delta[p][ai] = q;
            }
            for (p, row) in delta.iter().enumerate() {
                for (ai, &q) in row.iter().enumerate() {
                    if q == usize::MAX {
                        return Err(err(
                            0,
                            &format!(
                                "missing transition from state {p} on '{}'",
                                alphabet.symbols()[ai] as char
                            ),
                        ));
                    }
                }
            }
            let mut final_flags = vec![false; n];
            for q in finals {
                final_flags[q] = true;
            }
            if kind == "dfa" {
                Ok(AutomatonFile::Dfa(Dfa::new(
                    alphabet,
                    initial[0],
                    delta,
                    final_flags,
                )))
            } else {
                Ok(AutomatonFile::Rdfa(Rdfa::new(
                    alphabet,
                    initial[0],
                    delta,
                    final_flags,
                )))
            }
        }
        other => Err(err(0, &format!("unknown kind '{other}'"))),
    }
}

/// Serializes an automaton in the same text format `parse_automaton` reads.
pub fn write_automaton(file: &AutomatonFile) -> String {
    let mut out = String::new();
    let (kind, alphabet) = match file {
        AutomatonFile::Nfa(m) => ("nfa", m.alphabet()),
        AutomatonFile::Dfa(m) => ("dfa", m.alphabet()),
        AutomatonFile::Rdfa(m) => ("rdfa", m.alphabet()),
    };
    writeln!(out, "kind: {kind}").unwrap();
    writeln!(
        out,
        "alphabet: {}",
        String::from_utf8_lossy(alphabet.symbols())
    )
    .unwrap();
    writeln!(out, "padding: {}", alphabet.padding() as char).unwrap();
    match file {
        AutomatonFile::Nfa(m) => {
            writeln!(out, "states: {}", m.state_count()).unwrap();
            let initial: Vec<String> = m.initial().iter().map(|q| q.to_string()).collect();
            writeln!(out, "initial: {}", initial.join(" ")).unwrap();
            let finals: Vec<String> = m.finals().iter().map(|q| q.to_string()).collect();
            writeln!(out, "finals: {}", finals.join(" ")).unwrap();
            for &(p, a, q) in m.transitions() {
                writeln!(out, "trans: {p} {} {q}", a as char).unwrap();
            }
        }
        AutomatonFile::Dfa(m) => {
            writeln!(out, "states: {}", m.state_count()).unwrap();
            writeln!(out, "initial: {}", m.initial()).unwrap();
            let finals: Vec<String> = m.finals().map(|q| q.to_string()).collect();
            writeln!(out, "finals: {}", finals.join(" ")).unwrap();
            for p in 0..m.state_count() {
                for &a in m.alphabet().symbols() {
                    writeln!(out, "trans: {p} {} {}", a as char, m.next(p, a)).unwrap();
                }
            }
        }
        AutomatonFile::Rdfa(m) => {
            writeln!(out, "states: {}", m.state_count()).unwrap();
            writeln!(out, "initial: {}", m.initial()).unwrap();
            let finals: Vec<String> = m.finals().map(|q| q.to_string()).collect();
            writeln!(out, "finals: {}", finals.join(" ")).unwrap();
            for q in 0..m.state_count() {
                for &a in m.alphabet().symbols() {
                    writeln!(out, "trans: {q} {} {}", a as char, m.next(a, q)).unwrap();
                }
            }
        }
    }
    out
}
