use super::{Alphabet, Nfa};
use crate::{Error, Result};

/// Abstract syntax tree for the minimal regex grammar.
///
/// Grammar: literals, `|`, implicit concatenation, postfix `*`, parentheses,
/// `ε` (alias `eps`) and `∅` (alias `null`). Precedence: star over concat
/// over union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    EmptySet,
    Epsilon,
    Literal(u8),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

impl RegexAst {
    /// Thompson-style translation to an epsilon-free NFA.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut b = EpsNfaBuilder::new();
        let frag = b.build(self);
        b.into_nfa(frag, alphabet)
    }
}

/// Parses `text` over the grammar above. Literals must be alphabet members.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser {
        chars: &chars,
        pos: 0,
        alphabet,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::Syntax {
            position: 0,
            message: "empty regex".into(),
        });
    }
    let ast = p.union()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::Syntax {
            position: p.pos,
            message: format!("unexpected '{}'", p.chars[p.pos]),
        });
    }
    Ok(ast)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn union(&mut self) -> Result<RegexAst> {
        let mut left = self.concat()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.pos += 1;
                let right = self.concat()?;
                left = RegexAst::Union(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut left = self.starred()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') | Some('|') | None => return Ok(left),
                _ => {
                    let right = self.starred()?;
                    left = RegexAst::Concat(Box::new(left), Box::new(right));
                }
            }
        }
    }

    fn starred(&mut self) -> Result<RegexAst> {
        let mut node = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                node = RegexAst::Star(Box::new(node));
            } else {
                return Ok(node);
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        let end = self.pos + word.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().collect::<String>() == word {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<RegexAst> {
        self.skip_ws();
        let position = self.pos;
        match self.peek() {
            None => Err(Error::Syntax {
                position,
                message: "expected an atom, found end of input".into(),
            }),
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(Error::Syntax {
                        position: self.pos,
                        message: "expected ')'".into(),
                    })
                }
            }
            Some(')') | Some('*') | Some('|') => Err(Error::Syntax {
                position,
                message: format!("unexpected '{}'", self.chars[position]),
            }),
            Some('ε') => {
                self.pos += 1;
                Ok(RegexAst::Epsilon)
            }
            Some('∅') => {
                self.pos += 1;
                Ok(RegexAst::EmptySet)
            }
            Some(c) => {
                if self.keyword("eps") {
                    return Ok(RegexAst::Epsilon);
                }
                if self.keyword("null") {
                    return Ok(RegexAst::EmptySet);
                }
                let mut buf = [0u8; 4];
                let enc = c.encode_utf8(&mut buf);
                if enc.len() == 1 && self.alphabet.contains(buf[0]) {
                    self.pos += 1;
                    Ok(RegexAst::Literal(buf[0]))
                } else {
                    Err(Error::LiteralOutsideAlphabet {
                        symbol: c,
                        position,
                    })
                }
            }
        }
    }
}

/// NFA fragment with epsilon moves, used only during construction.
struct Frag {
    start: usize,
    accept: usize,
}

struct EpsNfaBuilder {
    /// (from, Some(symbol) | None for epsilon, to)
    edges: Vec<(usize, Option<u8>, usize)>,
    states: usize,
}

impl EpsNfaBuilder {
    fn new() -> Self {
        Self {
            edges: Vec::new(),
            states: 0,
        }
    }

    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn build(&mut self, ast: &RegexAst) -> Frag {
        match ast {
            RegexAst::EmptySet => {
                let start = self.fresh();
                let accept = self.fresh();
                Frag { start, accept }
            }
            RegexAst::Epsilon => {
                let start = self.fresh();
                let accept = self.fresh();
                self.edges.push((start, None, accept));
                Frag { start, accept }
            }
            RegexAst::Literal(a) => {
                let start = self.fresh();
                let accept = self.fresh();
                self.edges.push((start, Some(*a), accept));
                Frag { start, accept }
            }
            RegexAst::Union(l, r) => {
                let lf = self.build(l);
                let rf = self.build(r);
                let start = self.fresh();
                let accept = self.fresh();
                self.edges.push((start, None, lf.start));
                self.edges.push((start, None, rf.start));
                self.edges.push((lf.accept, None, accept));
                self.edges.push((rf.accept, None, accept));
                Frag { start, accept }
            }
            RegexAst::Concat(l, r) => {
                let lf = self.build(l);
                let rf = self.build(r);
                self.edges.push((lf.accept, None, rf.start));
                Frag {
                    start: lf.start,
                    accept: rf.accept,
                }
            }
            RegexAst::Star(inner) => {
                let f = self.build(inner);
                let start = self.fresh();
                let accept = self.fresh();
                self.edges.push((start, None, accept));
                self.edges.push((start, None, f.start));
                self.edges.push((f.accept, None, f.start));
                self.edges.push((f.accept, None, accept));
                Frag { start, accept }
            }
        }
    }

    /// Epsilon elimination: keep the same states, move labelled edges across
    /// epsilon closures, and mark states whose closure reaches the accept.
    fn into_nfa(self, frag: Frag, alphabet: &Alphabet) -> Nfa {
        let n = self.states;
        let mut eps: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut labelled: Vec<(usize, u8, usize)> = Vec::new();
        for (from, label, to) in &self.edges {
            match label {
                None => eps[*from].push(*to),
                Some(a) => labelled.push((*from, *a, *to)),
            }
        }
        let closure = |q: usize| -> Vec<usize> {
            let mut seen = vec![false; n];
            let mut stack = vec![q];
            seen[q] = true;
            while let Some(p) = stack.pop() {
                for &r in &eps[p] {
                    if !seen[r] {
                        seen[r] = true;
                        stack.push(r);
                    }
                }
            }
            (0..n).filter(|&i| seen[i]).collect()
        };

        let mut transitions = std::collections::BTreeSet::new();
        for q in 0..n {
            for &c in &closure(q) {
                for &(from, a, to) in &labelled {
                    if from == c {
                        transitions.insert((q, a, to));
                    }
                }
            }
        }
        let mut finals = std::collections::BTreeSet::new();
        for q in 0..n {
            if closure(q).contains(&frag.accept) {
                finals.insert(q);
            }
        }
        Nfa::new(
            alphabet.clone(),
            n,
            [frag.start].into_iter().collect(),
            transitions,
            finals,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::with_default_padding(b"ab").unwrap()
    }

    #[test]
    fn parses_with_standard_precedence() {
        let ast = parse_regex("a(a|b)*", &ab()).unwrap();
        assert_eq!(
            ast,
            RegexAst::Concat(
                Box::new(RegexAst::Literal(b'a')),
                Box::new(RegexAst::Star(Box::new(RegexAst::Union(
                    Box::new(RegexAst::Literal(b'a')),
                    Box::new(RegexAst::Literal(b'b')),
                ))))
            )
        );
    }

    #[test]
    fn parses_epsilon_and_aliases() {
        assert_eq!(parse_regex("ε", &ab()).unwrap(), RegexAst::Epsilon);
        assert_eq!(parse_regex("eps", &ab()).unwrap(), RegexAst::Epsilon);
        assert_eq!(parse_regex("∅", &ab()).unwrap(), RegexAst::EmptySet);
        assert_eq!(parse_regex("null", &ab()).unwrap(), RegexAst::EmptySet);
    }

    #[test]
    fn nested_star_is_allowed() {
        let ast = parse_regex("a**", &ab()).unwrap();
        assert_eq!(
            ast,
            RegexAst::Star(Box::new(RegexAst::Star(Box::new(RegexAst::Literal(
                b'a'
            )))))
        );
    }

    #[test]
    fn reports_error_positions() {
        match parse_regex("a(b", &ab()) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_regex("ac", &ab()) {
            Err(Error::LiteralOutsideAlphabet { symbol, position }) => {
                assert_eq!((symbol, position), ('c', 1));
            }
            other => panic!("expected literal error, got {other:?}"),
        }
    }

    #[test]
    fn thompson_basic_languages() {
        let al = ab();
        let eps = parse_regex("ε", &al).unwrap().to_nfa(&al);
        assert!(eps.accepts(b""));
        assert!(!eps.accepts(b"a"));

        let lit = parse_regex("a", &al).unwrap().to_nfa(&al);
        assert!(lit.accepts(b"a"));
        assert!(!lit.accepts(b""));
        assert!(!lit.accepts(b"b"));
        assert!(!lit.accepts(b"aa"));

        let union = parse_regex("a|b", &al).unwrap().to_nfa(&al);
        assert!(union.accepts(b"a"));
        assert!(union.accepts(b"b"));
        assert!(!union.accepts(b""));
        assert!(!union.accepts(b"aa"));

        let none = parse_regex("∅", &al).unwrap().to_nfa(&al);
        assert!(!none.accepts(b""));
        assert!(!none.accepts(b"a"));
    }
}
