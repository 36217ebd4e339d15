//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! vertex NAME
//! arrow NAME SRC TGT [new]
//! rel TERM ((+|-) TERM)*
//! corresponds NEWARROW INDEX
//! ```
//!
//! `TERM := [RATIONAL '*'] NAME ('.' NAME)*` with `RATIONAL := INT ['/' POSINT]`.
//! Names use letters, digits, `_` and `'`.

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::presentation::{validate, Presentation, Relation};
use crate::quiver::Quiver;
use crate::relext::ExtensionPair;
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowTag {
    Old,
    New,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub arrow_tags: BTreeMap<String, ArrowTag>,
    pub correspondences: BTreeMap<String, usize>,
}

impl PresentationFile {
    pub fn new_arrows(&self) -> Vec<&str> {
        self.arrow_tags
            .iter()
            .filter(|(_, t)| **t == ArrowTag::New)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: self.text[..offset].chars().count() + 1,
            message: message.into(),
        }
    }

    /// Whitespace-separated words with their byte offsets.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }

    fn name<'b>(&self, word: (usize, &'b str)) -> Result<&'b str> {
        match word.1.char_indices().find(|&(_, c)| !is_name_char(c)) {
            Some((i, c)) => Err(self.err(word.0 + i, format!("unexpected character `{c}` in name"))),
            None => Ok(word.1),
        }
    }
}

/// Cursor over the body of a `rel` line.
struct RelParser<'a, 'l> {
    line: &'l Line<'a>,
    pos: usize,
}

impl RelParser<'_, '_> {
    fn rest(&self) -> &str {
        &self.line.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.line.text.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn take_name(&mut self) -> Option<(usize, String)> {
        let start = self.pos;
        let len: usize = self
            .rest()
            .chars()
            .take_while(|&c| is_name_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, self.line.text[start..self.pos].to_string()))
    }

    fn expect_name(&mut self) -> Result<(usize, String)> {
        let at = self.pos;
        self.take_name().ok_or_else(|| match self.peek() {
            Some(c) => self.line.err(at, format!("expected a name, found `{c}`")),
            None => self.line.err(at, "expected a name, found end of line"),
        })
    }

    fn digits(&self, s: &str, offset: usize) -> Result<BigInt> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
            return Err(self.line.err(offset, format!("invalid coefficient `{s}`")));
        }
        Ok(s.parse().expect("ascii digits"))
    }

    fn term(&mut self, q: &Quiver, sign: Rational) -> Result<(Rational, crate::quiver::Path)> {
        self.skip_ws();
        let (mut at, mut first) = self.expect_name()?;
        let mut coeff = sign;
        if self.peek() == Some('/') || self.peek() == Some('*') {
            let numer = first.clone();
            let mut denom = None;
            if self.peek() == Some('/') {
                self.pos += 1;
                let d_at = self.pos;
                let (_, d) = self
                    .take_name()
                    .ok_or_else(|| self.line.err(d_at, "expected a denominator"))?;
                denom = Some((d_at, d));
            }
            if self.peek() != Some('*') {
                return Err(self.line.err(self.pos, "expected `*` after coefficient"));
            }
            self.pos += 1;
            let n = self.digits(&numer, at)?;
            let d = match denom {
                Some((d_at, d)) => {
                    let d = self.digits(&d, d_at)?;
                    if d.is_zero() {
                        return Err(self.line.err(d_at, "zero denominator"));
                    }
                    d
                }
                None => BigInt::one(),
            };
            coeff *= Rational::new(n, d);
            self.skip_ws();
            (at, first) = self.expect_name()?;
        }
        let mut names = vec![(at, first)];
        while self.peek() == Some('.') {
            self.pos += 1;
            names.push(self.expect_name()?);
        }
        let mut arrows = Vec::with_capacity(names.len());
        for (offset, name) in &names {
            arrows.push(
                q.arrow_id(name)
                    .map_err(|_| self.line.err(*offset, format!("unknown arrow `{name}`")))?,
            );
        }
        let source = q.source(arrows[0]);
        let path = q.path(source, &arrows).map_err(|_| {
            let bad = arrows
                .windows(2)
                .position(|w| q.target(w[0]) != q.source(w[1]))
                .map_or(at, |i| names[i + 1].0);
            self.line.err(bad, "non-composable path")
        })?;
        Ok((coeff, path))
    }

    fn relation(&mut self, q: &Quiver) -> Result<Relation> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        terms.push(self.term(q, sign)?);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                None => break,
                Some('+') => Rational::one(),
                Some('-') => -Rational::one(),
                Some(c) => return Err(self.line.err(self.pos, format!("expected `+` or `-`, found `{c}`"))),
            };
            self.pos += 1;
            terms.push(self.term(q, sign)?);
        }
        Ok(Relation::new(terms))
    }
}

pub fn parse(text: &str) -> Result<PresentationFile> {
    let mut quiver = Quiver::new();
    let mut relations = Vec::new();
    let mut arrow_tags = BTreeMap::new();
    let mut correspondences = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Line {
            number: i + 1,
            text: content,
        };
        let words = line.words();
        let Some(&(kw_at, keyword)) = words.first() else {
            continue;
        };
        let arity = |n: &[usize]| -> Result<()> {
            if n.contains(&words.len()) {
                Ok(())
            } else {
                let at = words.get(n[n.len() - 1]).map_or(content.len(), |w| w.0);
                Err(line.err(at, format!("wrong number of fields for `{keyword}`")))
            }
        };
        match keyword {
            "vertex" => {
                arity(&[2])?;
                let name = line.name(words[1])?;
                quiver
                    .add_vertex(name)
                    .map_err(|_| line.err(words[1].0, format!("duplicate name `{name}`")))?;
            }
            "arrow" => {
                arity(&[4, 5])?;
                let name = line.name(words[1])?;
                let mut ends = [None, None];
                for (k, w) in words[2..4].iter().enumerate() {
                    let v = line.name(*w)?;
                    ends[k] = Some(
                        quiver
                            .vertex_id(v)
                            .map_err(|_| line.err(w.0, format!("unknown vertex `{v}`")))?,
                    );
                }
                let tag = match words.get(4) {
                    None => ArrowTag::Old,
                    Some((_, "new")) => ArrowTag::New,
                    Some(&(at, other)) => return Err(line.err(at, format!("expected `new`, found `{other}`"))),
                };
                quiver
                    .add_arrow_ids(name, ends[0].unwrap(), ends[1].unwrap())
                    .map_err(|_| line.err(words[1].0, format!("duplicate name `{name}`")))?;
                arrow_tags.insert(name.to_string(), tag);
            }
            "rel" => {
                let mut parser = RelParser {
                    line: &line,
                    pos: kw_at + keyword.len(),
                };
                let rel = parser.relation(&quiver)?;
                let single = Presentation::new(quiver.clone(), vec![rel.clone()]);
                if let Some(d) = validate(&single).into_iter().next() {
                    return Err(line.err(kw_at, d.message));
                }
                relations.push(rel);
            }
            "corresponds" => {
                arity(&[3])?;
                let name = line.name(words[1])?;
                match arrow_tags.get(name) {
                    None => return Err(line.err(words[1].0, format!("unknown arrow `{name}`"))),
                    Some(ArrowTag::Old) => return Err(line.err(words[1].0, format!("`{name}` is not a new arrow"))),
                    Some(ArrowTag::New) => {}
                }
                let index: usize = words[2]
                    .1
                    .parse()
                    .map_err(|_| line.err(words[2].0, format!("invalid relation index `{}`", words[2].1)))?;
                if correspondences.insert(name.to_string(), index).is_some() {
                    return Err(line.err(words[1].0, format!("duplicate correspondence for `{name}`")));
                }
            }
            other => return Err(line.err(kw_at, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(PresentationFile {
        presentation: Presentation::new(quiver, relations),
        arrow_tags,
        correspondences,
    })
}

fn emit_with(p: &Presentation, new: &BTreeSet<String>, corresponds: &BTreeMap<String, usize>) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    for v in q.vertices() {
        writeln!(out, "vertex {}", q.vertex_name(v)).unwrap();
    }
    for a in q.arrows() {
        let name = q.arrow_name(a);
        let tag = if new.contains(name) { " new" } else { "" };
        writeln!(
            out,
            "arrow {name} {} {}{tag}",
            q.vertex_name(q.source(a)),
            q.vertex_name(q.target(a))
        )
        .unwrap();
    }
    for r in &p.relations {
        writeln!(out, "rel {}", r.display(q)).unwrap();
    }
    for (name, i) in corresponds {
        writeln!(out, "corresponds {name} {i}").unwrap();
    }
    out
}

pub fn emit(p: &Presentation) -> String {
    emit_with(p, &BTreeSet::new(), &BTreeMap::new())
}

/// The B half of a pair, with tags and correspondences.
pub fn emit_extension(pair: &ExtensionPair) -> String {
    let names: BTreeSet<String> = pair.new_arrow_names().into_iter().collect();
    let corr = pair
        .correspondence
        .iter()
        .map(|(&a, &i)| (pair.b.quiver.arrow_name(a).to_string(), i))
        .collect();
    emit_with(&pair.b, &names, &corr)
}

/// Assembles a pair from a C file and a tagged B file.
pub fn pair_from_files(c: &PresentationFile, b: &PresentationFile) -> Result<ExtensionPair> {
    let bq = &b.presentation.quiver;
    let mut new_arrows = BTreeSet::new();
    for name in b.new_arrows() {
        new_arrows.insert(bq.arrow_id(name)?);
    }
    let mut correspondence = BTreeMap::new();
    for (name, &i) in &b.correspondences {
        correspondence.insert(bq.arrow_id(name)?, i);
    }
    Ok(ExtensionPair {
        c: c.presentation.clone(),
        b: b.presentation.clone(),
        new_arrows,
        correspondence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    const KRONECKER: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\n";

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text).unwrap_err() {
            Error::Parse { line, column, message } => (line, column, message),
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn kronecker_file() {
        let f = parse(KRONECKER).unwrap();
        assert_eq!(f.presentation.quiver.vertex_count(), 2);
        assert_eq!(f.presentation.quiver.arrow_count(), 2);
        assert!(f.presentation.relations.is_empty());
    }

    #[test]
    fn short_relation_rejected() {
        let text = "vertex 1\nvertex 2\narrow alpha 1 2\nrel alpha\n";
        let (line, column, message) = parse_err(text);
        assert_eq!((line, column), (4, 1));
        assert_eq!(message, "relation term of length < 2");
    }

    #[test]
    fn coefficients_and_comments() {
        let text = "# square\nvertex 1\nvertex 2\nvertex 3\nvertex 4\n\
                    arrow a 1 2\narrow b 2 4\narrow c 1 3 # lower\narrow d 3 4\n\
                    rel -2/3*a.b + 5*c.d\n";
        let f = parse(text).unwrap();
        let r = &f.presentation.relations[0];
        assert_eq!(r.terms[0].0, ratio(-2, 3));
        assert_eq!(r.terms[1].0, rat(5));
        assert_eq!(r.display(&f.presentation.quiver), "-2/3*a.b + 5*c.d");
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(parse_err("vertex 1\narrow a 1 9\n").0, 2);
        assert_eq!(parse_err("vertex 1\narrow a 1 9\n").1, 11);
        assert!(parse_err("vertex x\nvertex x\n").2.contains("duplicate"));
        let text = "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\nrel a.b\n";
        let (line, column, message) = parse_err(text);
        assert_eq!((line, column, message.as_str()), (5, 7, "non-composable path"));
        assert!(parse_err("edge a\n").2.contains("unknown keyword"));
    }

    #[test]
    fn primes_in_names() {
        let text = "vertex 4\nvertex 5\nvertex 6\narrow alpha' 4 5\narrow beta' 5 6\nrel alpha'.beta'\n";
        let f = parse(text).unwrap();
        assert_eq!(f.presentation.relations.len(), 1);
    }

    #[test]
    fn tags_and_correspondences() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow nw_0 3 1 new\n\
                    rel a.b\nrel b.nw_0\nrel nw_0.a\ncorresponds nw_0 0\n";
        let f = parse(text).unwrap();
        assert_eq!(f.new_arrows(), ["nw_0"]);
        assert_eq!(f.correspondences["nw_0"], 0);
        assert!(parse_err("vertex 1\narrow a 1 1\ncorresponds a 0\n")
            .2
            .contains("not a new arrow"));
    }

    #[test]
    fn emit_round_trip() {
        let text = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\n\
                    rel 1/2*a.b - c.d\n";
        let p = parse(text).unwrap().presentation;
        assert_eq!(emit(&p), text);
        assert_eq!(parse(&emit(&p)).unwrap().presentation, p);
    }
}
