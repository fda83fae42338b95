//! String-algebra presentations `KQ/(rho)`: parsing, axiom checks and sign tables.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].head == v)
    }

    pub fn arrows_out_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].tail == v)
    }
}

/// An arrow or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringPresentation {
    pub field: Field,
    pub quiver: Quiver,
    /// Zero relations as written: the last arrow of each path is traversed first.
    pub rho: Vec<Vec<usize>>,
}

/// A single failure of the string-algebra axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// More than two arrows end at the vertex.
    HeadOfTooMany { vertex: String, arrows: Vec<String> },
    /// More than two arrows start at the vertex.
    TailOfTooMany { vertex: String, arrows: Vec<String> },
    /// Several arrows `x` with `x y` outside rho.
    SuccessorsNotInRho { arrow: String, successors: Vec<String> },
    /// Several arrows `z` with `y z` outside rho.
    PredecessorsNotInRho { arrow: String, predecessors: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HeadOfTooMany { vertex, arrows } => {
                write!(f, "(a) vertex {vertex} is the head of {} arrows: {}", arrows.len(), arrows.join(", "))
            }
            Violation::TailOfTooMany { vertex, arrows } => {
                write!(f, "(a) vertex {vertex} is the tail of {} arrows: {}", arrows.len(), arrows.join(", "))
            }
            Violation::SuccessorsNotInRho { arrow, successors } => write!(
                f,
                "(b) arrow {arrow}: paths {} are all outside rho",
                successors.iter().map(|x| format!("{x} {arrow}")).collect::<Vec<_>>().join(", ")
            ),
            Violation::PredecessorsNotInRho { arrow, predecessors } => write!(
                f,
                "(b) arrow {arrow}: paths {} are all outside rho",
                predecessors.iter().map(|z| format!("{arrow} {z}")).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_string_algebra(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const LAMBDA2: &str = "\
field Q
vertex v
arrow x : v -> v
arrow y : v -> v
rel x x
rel y y
";

pub const A1: &str = "\
field Q
vertex u
vertex v
arrow a : u -> v
";

/// Two loops with every path of length three vanishing; finite dimensional.
pub const TRUNCATED_LOOPS: &str = "\
field Q
vertex v
arrow x : v -> v
arrow y : v -> v
rel x x
rel y y
rel x y x
rel y x y
";

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_presentation(text: &str) -> Result<StringPresentation> {
    let mut field = Field::Rational;
    let mut quiver = Quiver::default();
    let mut rel_lines: Vec<(usize, Vec<String>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "field" => field = parse_field_tokens(&toks[1..]).map_err(|e| perr(line_no, e.to_string()))?,
            "vertex" => {
                if toks.len() != 2 {
                    return Err(perr(line_no, "expected `vertex <name>`"));
                }
                if quiver.vertex_index(toks[1]).is_some() {
                    return Err(perr(line_no, format!("duplicate vertex {}", toks[1])));
                }
                quiver.vertices.push(toks[1].to_string());
            }
            "arrow" => {
                if toks.len() != 6 || toks[2] != ":" || toks[4] != "->" {
                    return Err(perr(line_no, "expected `arrow <name> : <tail> -> <head>`"));
                }
                let name = toks[1];
                if quiver.arrow_index(name).is_some() {
                    return Err(perr(line_no, format!("duplicate arrow {name}")));
                }
                if name.ends_with('-') || name == "1" || name.contains(['(', ')', '|', '^']) {
                    return Err(perr(line_no, format!("reserved characters in arrow name {name}")));
                }
                let tail = quiver
                    .vertex_index(toks[3])
                    .ok_or_else(|| perr(line_no, format!("unknown vertex {}", toks[3])))?;
                let head = quiver
                    .vertex_index(toks[5])
                    .ok_or_else(|| perr(line_no, format!("unknown vertex {}", toks[5])))?;
                quiver.arrows.push(Arrow { name: name.to_string(), tail, head });
            }
            "rel" => {
                if toks.len() < 3 {
                    return Err(perr(line_no, "relations are paths of length at least 2"));
                }
                rel_lines.push((line_no, toks[1..].iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(perr(line_no, format!("unknown directive {other}"))),
        }
    }
    let mut rho = Vec::new();
    for (line_no, names) in rel_lines {
        let mut path = Vec::with_capacity(names.len());
        for name in &names {
            path.push(
                quiver
                    .arrow_index(name)
                    .ok_or_else(|| perr(line_no, format!("unknown arrow {name}")))?,
            );
        }
        for w in path.windows(2) {
            if quiver.arrows[w[0]].tail != quiver.arrows[w[1]].head {
                return Err(perr(
                    line_no,
                    format!(
                        "path not composable: tail of {} is not the head of {}",
                        quiver.arrows[w[0]].name, quiver.arrows[w[1]].name
                    ),
                ));
            }
        }
        if !rho.contains(&path) {
            rho.push(path);
        }
    }
    Ok(StringPresentation { field, quiver, rho })
}

/// Parses the tokens after `field`: `Q` or `F <p>`.
pub fn parse_field_tokens(toks: &[&str]) -> Result<Field> {
    match toks {
        ["Q"] => Ok(Field::Rational),
        ["F", p] => {
            let p: u32 = p.parse().map_err(|_| Error::InvalidField(format!("bad modulus {p}")))?;
            Field::prime(p)
        }
        _ => Err(Error::InvalidField(format!("expected `Q` or `F <p>`, got `{}`", toks.join(" ")))),
    }
}

impl StringPresentation {
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.quiver.arrows[i]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn head(&self, l: Letter) -> usize {
        let a = self.arrow(l.arrow);
        if l.inverse {
            a.tail
        } else {
            a.head
        }
    }

    pub fn tail(&self, l: Letter) -> usize {
        let a = self.arrow(l.arrow);
        if l.inverse {
            a.head
        } else {
            a.tail
        }
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.arrow(l.arrow).name;
        if l.inverse {
            format!("{n}-")
        } else {
            n.clone()
        }
    }

    pub fn parse_letter(&self, tok: &str) -> Result<Letter> {
        let (name, inverse) = match tok.strip_suffix('-') {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let arrow = self
            .quiver
            .arrow_index(name)
            .ok_or_else(|| Error::Word(format!("unknown arrow {name}")))?;
        Ok(Letter { arrow, inverse })
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.quiver.arrows.len()).flat_map(|a| [Letter::direct(a), Letter::inv(a)])
    }

    /// Letters with head `v`: arrows first, then inverses, each in declaration order.
    pub fn letters_with_head(&self, v: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.quiver.arrows_into(v).map(Letter::direct).collect();
        out.extend(self.quiver.arrows_out_of(v).map(Letter::inv));
        out
    }

    pub fn is_length2_relation(&self, x: usize, y: usize) -> bool {
        self.rho.iter().any(|r| r.len() == 2 && r[0] == x && r[1] == y)
    }

    /// Does the letter sequence spell a member of rho or the inverse of one?
    pub fn is_zero_relation(&self, letters: &[Letter]) -> bool {
        if letters.len() < 2 {
            return false;
        }
        let all_direct = letters.iter().all(|l| !l.inverse);
        let all_inverse = letters.iter().all(|l| l.inverse);
        if all_direct {
            let path: Vec<usize> = letters.iter().map(|l| l.arrow).collect();
            self.rho.contains(&path)
        } else if all_inverse {
            let path: Vec<usize> = letters.iter().rev().map(|l| l.arrow).collect();
            self.rho.contains(&path)
        } else {
            false
        }
    }

    pub fn longest_relation(&self) -> usize {
        self.rho.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let q = &self.quiver;
        let names = |it: &mut dyn Iterator<Item = usize>| it.map(|i| q.arrows[i].name.clone()).collect::<Vec<_>>();
        let mut violations = Vec::new();
        for (v, vname) in q.vertices.iter().enumerate() {
            let into = names(&mut q.arrows_into(v));
            if into.len() > 2 {
                violations.push(Violation::HeadOfTooMany { vertex: vname.clone(), arrows: into });
            }
            let out = names(&mut q.arrows_out_of(v));
            if out.len() > 2 {
                violations.push(Violation::TailOfTooMany { vertex: vname.clone(), arrows: out });
            }
        }
        for (y, arrow) in q.arrows.iter().enumerate() {
            let succ: Vec<usize> = q
                .arrows_out_of(arrow.head)
                .filter(|&x| !self.is_length2_relation(x, y))
                .collect();
            if succ.len() > 1 {
                violations.push(Violation::SuccessorsNotInRho {
                    arrow: arrow.name.clone(),
                    successors: names(&mut succ.into_iter()),
                });
            }
            let pred: Vec<usize> = q
                .arrows_into(arrow.tail)
                .filter(|&z| !self.is_length2_relation(y, z))
                .collect();
            if pred.len() > 1 {
                violations.push(Violation::PredecessorsNotInRho {
                    arrow: arrow.name.clone(),
                    predecessors: names(&mut pred.into_iter()),
                });
            }
        }
        ValidationReport { violations }
    }

    /// May distinct letters with a common head share a sign?
    pub fn may_share_sign(&self, l: Letter, m: Letter) -> bool {
        let pair = |a: Letter, b: Letter| a.inverse && !b.inverse && self.is_length2_relation(a.arrow, b.arrow);
        pair(l, m) || pair(m, l)
    }

    /// Canonical sign table: per vertex, the lexicographically first assignment
    /// (letters in [`Self::letters_with_head`] order, `+1` before `-1`).
    pub fn assign_signs(&self) -> Result<SignTable> {
        let mut signs = vec![[0i8; 2]; self.quiver.arrows.len()];
        for v in 0..self.quiver.vertices.len() {
            let letters = self.letters_with_head(v);
            let k = letters.len();
            let found = (0u32..1 << k).find_map(|mask| {
                let s: Vec<i8> = (0..k).map(|i| if mask >> (k - 1 - i) & 1 == 0 { 1 } else { -1 }).collect();
                let ok = (0..k).all(|i| {
                    (i + 1..k).all(|j| s[i] != s[j] || self.may_share_sign(letters[i], letters[j]))
                });
                ok.then_some(s)
            });
            let s = found.ok_or_else(|| {
                Error::SignConstraints(format!("no sign assignment exists at vertex {}", self.vertex_name(v)))
            })?;
            for (l, e) in letters.iter().zip(s) {
                signs[l.arrow][l.inverse as usize] = e;
            }
        }
        Ok(SignTable { signs })
    }
}

/// Sign `+1` or `-1` of each letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignTable {
    signs: Vec<[i8; 2]>,
}

impl SignTable {
    pub fn from_fn(arrows: usize, f: impl Fn(Letter) -> i8) -> Self {
        let signs = (0..arrows)
            .map(|a| [f(Letter::direct(a)), f(Letter::inv(a))])
            .collect();
        SignTable { signs }
    }

    pub fn sign(&self, l: Letter) -> i8 {
        self.signs[l.arrow][l.inverse as usize]
    }

    /// The table with every sign flipped; valid whenever `self` is.
    pub fn negated(&self) -> SignTable {
        SignTable { signs: self.signs.iter().map(|[a, b]| [-a, -b]).collect() }
    }

    /// Returns the first pair of letters breaking the sign condition, if any.
    pub fn violation(&self, p: &StringPresentation) -> Option<(Letter, Letter)> {
        for v in 0..p.quiver.vertices.len() {
            let ls = p.letters_with_head(v);
            for (i, &l) in ls.iter().enumerate() {
                for &m in &ls[i + 1..] {
                    if self.sign(l) == self.sign(m) && !p.may_share_sign(l, m) {
                        return Some((l, m));
                    }
                }
            }
        }
        None
    }

    pub fn entries(&self) -> impl Iterator<Item = (Letter, i8)> + '_ {
        self.signs
            .iter()
            .enumerate()
            .flat_map(|(a, s)| [(Letter::direct(a), s[0]), (Letter::inv(a), s[1])])
    }
}

impl fmt::Display for StringPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for v in &self.quiver.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for a in &self.quiver.arrows {
            writeln!(f, "arrow {} : {} -> {}", a.name, self.quiver.vertices[a.tail], self.quiver.vertices[a.head])?;
        }
        let mut seen = HashSet::new();
        for r in &self.rho {
            if seen.insert(r) {
                let names: Vec<&str> = r.iter().map(|&i| self.quiver.arrows[i].name.as_str()).collect();
                writeln!(f, "rel {}", names.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda2_parses_and_validates() {
        let p = parse_presentation(LAMBDA2).unwrap();
        assert_eq!(p.quiver.vertices.len(), 1);
        assert_eq!(p.quiver.arrows.len(), 2);
        assert_eq!(p.rho, vec![vec![0, 0], vec![1, 1]]);
        assert!(p.validate().is_string_algebra());
    }

    #[test]
    fn empty_arrow_list() {
        let p = parse_presentation("vertex v\n").unwrap();
        assert!(p.quiver.arrows.is_empty());
        assert!(p.rho.is_empty());
    }

    #[test]
    fn unknown_arrow_in_relation() {
        let e = parse_presentation("vertex v\narrow x : v -> v\nrel x z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn non_composable_relation() {
        let e = parse_presentation(&format!("{A1}rel a a\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(parse_presentation("vertex v\nvertex v\n").is_err());
        assert!(parse_presentation("vertex v\narrow x : v -> v\narrow x : v -> v\n").is_err());
    }

    #[test]
    fn three_loops_violate_a() {
        let p = parse_presentation(
            "vertex v\narrow x : v -> v\narrow y : v -> v\narrow z : v -> v\n",
        )
        .unwrap();
        let r = p.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::HeadOfTooMany { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::TailOfTooMany { .. })));
    }

    #[test]
    fn free_loops_violate_b() {
        let p = parse_presentation("vertex v\narrow x : v -> v\narrow y : v -> v\n").unwrap();
        let r = p.validate();
        assert!(r.violations.contains(&Violation::SuccessorsNotInRho {
            arrow: "x".into(),
            successors: vec!["x".into(), "y".into()]
        }));
    }

    #[test]
    fn lambda2_signs() {
        let p = parse_presentation(LAMBDA2).unwrap();
        let s = p.assign_signs().unwrap();
        assert_eq!(s.sign(Letter::direct(0)), 1);
        assert_eq!(s.sign(Letter::inv(0)), 1);
        assert_eq!(s.sign(Letter::direct(1)), -1);
        assert_eq!(s.sign(Letter::inv(1)), -1);
        assert!(s.violation(&p).is_none());
        assert!(s.negated().violation(&p).is_none());
    }

    #[test]
    fn a1_signs_default_positive() {
        let p = parse_presentation(A1).unwrap();
        let s = p.assign_signs().unwrap();
        assert_eq!(s.sign(Letter::direct(0)), 1);
        assert_eq!(s.sign(Letter::inv(0)), 1);
    }

    #[test]
    fn shared_head_forces_opposite_signs() {
        let p = parse_presentation("vertex u\nvertex w\nvertex v\narrow y : u -> v\narrow z : w -> v\n").unwrap();
        let s = p.assign_signs().unwrap();
        assert_ne!(s.sign(Letter::direct(0)), s.sign(Letter::direct(1)));
    }

    #[test]
    fn display_round_trips() {
        let p = parse_presentation(TRUNCATED_LOOPS).unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}
