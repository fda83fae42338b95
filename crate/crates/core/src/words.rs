//! Finite, one-sided and two-sided words over a string presentation, restricted
//! to eventually periodic infinite words so that every word has a canonical form.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::presentation::{Letter, SignTable, StringPresentation};

/// Index sets: `{0..n}`, `N`, `-N` or `Z` (`{0}` for trivial words).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Trivial,
    Finite,
    Nat,
    NegNat,
    Int,
}

/// A word in canonical form.
///
/// `core[k]` is `C_{start+k}`. A left block repeats leftwards and ends at
/// `C_{start-1}`; a right block repeats rightwards from `C_{start+core.len()}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Trivial { vertex: usize, sign: i8 },
    Seq { left: Option<Vec<Letter>>, core: Vec<Letter>, right: Option<Vec<Letter>>, start: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Tail of `C_i` differs from the head of `C_{i+1}`.
    Adjacency,
    /// `C_{i+1}` is the inverse of `C_i`.
    Backtrack,
    /// A zero relation or its inverse starts at `C_i`.
    ZeroRelation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordViolation {
    pub condition: Condition,
    pub index: i64,
    pub detail: String,
}

fn primitive(block: &[Letter]) -> Vec<Letter> {
    let n = block.len();
    for d in 1..=n {
        if n % d == 0 && block[d..] == block[..n - d] {
            return block[..d].to_vec();
        }
    }
    block.to_vec()
}

fn reverse_inverse(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverted()).collect()
}

fn least_rotation(block: &[Letter]) -> usize {
    (0..block.len())
        .min_by(|&a, &b| {
            let ra = block[a..].iter().chain(&block[..a]);
            let rb = block[b..].iter().chain(&block[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0)
}

impl Word {
    pub fn trivial(vertex: usize, sign: i8) -> Word {
        assert!(sign == 1 || sign == -1);
        Word::Trivial { vertex, sign }
    }

    /// `C_1 ... C_n`; panics on an empty sequence.
    pub fn finite(letters: Vec<Letter>) -> Word {
        assert!(!letters.is_empty(), "finite words need a letter; use Word::trivial");
        Word::Seq { left: None, core: letters, right: None, start: 1 }
    }

    /// `prefix block block ...`, indexed from 1.
    pub fn nat(prefix: Vec<Letter>, block: Vec<Letter>) -> Word {
        assert!(!block.is_empty());
        Word::Seq { left: None, core: prefix, right: Some(block), start: 1 }.canonical()
    }

    /// `... block block suffix`, with the last letter at index 0.
    pub fn neg_nat(block: Vec<Letter>, suffix: Vec<Letter>) -> Word {
        assert!(!block.is_empty());
        let start = 1 - suffix.len() as i64;
        Word::Seq { left: Some(block), core: suffix, right: None, start }.canonical()
    }

    /// Two-sided word with `core[0]` at index `start`.
    pub fn int(left: Vec<Letter>, core: Vec<Letter>, right: Vec<Letter>, start: i64) -> Word {
        assert!(!left.is_empty() && !right.is_empty());
        Word::Seq { left: Some(left), core, right: Some(right), start }.canonical()
    }

    /// The periodic word `...E E | E E...` with `E_1` at index 1.
    pub fn periodic(block: Vec<Letter>) -> Word {
        Word::int(block.clone(), Vec::new(), block, 1)
    }

    fn canonical(self) -> Word {
        let Word::Seq { left, mut core, right, mut start } = self else { return self };
        let mut left = left.map(|b| primitive(&b));
        let mut right = right.map(|b| primitive(&b));
        if let Some(l) = left.as_mut() {
            while !core.is_empty() && core[0] == l[0] {
                l.rotate_left(1);
                core.remove(0);
                start += 1;
            }
        }
        if let Some(r) = right.as_mut() {
            while !core.is_empty() && core.last() == r.last() {
                r.rotate_right(1);
                core.pop();
            }
        }
        if let (Some(l), Some(r)) = (left.as_mut(), right.as_mut()) {
            if core.is_empty() {
                if l == r {
                    let p = l.len() as i64;
                    let k = least_rotation(l);
                    l.rotate_left(k);
                    start = (start + k as i64 - 1).rem_euclid(p) + 1;
                    *r = l.clone();
                } else {
                    let bound = l.len().lcm(&r.len());
                    for _ in 0..bound {
                        if r[0] != l[0] {
                            break;
                        }
                        l.rotate_left(1);
                        r.rotate_left(1);
                        start += 1;
                    }
                }
            }
        }
        if left.is_none() && right.is_none() {
            assert!(!core.is_empty());
        }
        Word::Seq { left, core, right, start }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Word::Trivial { .. } => Shape::Trivial,
            Word::Seq { left, right, .. } => match (left.is_some(), right.is_some()) {
                (false, false) => Shape::Finite,
                (false, true) => Shape::Nat,
                (true, false) => Shape::NegNat,
                (true, true) => Shape::Int,
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Word::Trivial { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.shape(), Shape::Trivial | Shape::Finite)
    }

    pub fn core(&self) -> &[Letter] {
        match self {
            Word::Trivial { .. } => &[],
            Word::Seq { core, .. } => core,
        }
    }

    pub fn left_block(&self) -> Option<&[Letter]> {
        match self {
            Word::Seq { left: Some(l), .. } => Some(l),
            _ => None,
        }
    }

    pub fn right_block(&self) -> Option<&[Letter]> {
        match self {
            Word::Seq { right: Some(r), .. } => Some(r),
            _ => None,
        }
    }

    pub fn start(&self) -> i64 {
        match self {
            Word::Trivial { .. } => 1,
            Word::Seq { start, .. } => *start,
        }
    }

    fn core_end(&self) -> i64 {
        self.start() + self.core().len() as i64 - 1
    }

    /// Number of letters of a finite word.
    pub fn len(&self) -> Option<usize> {
        match self.shape() {
            Shape::Trivial => Some(0),
            Shape::Finite => Some(self.core().len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `C_i`, if `i` indexes a letter.
    pub fn letter(&self, i: i64) -> Option<Letter> {
        let Word::Seq { left, core, right, start } = self else { return None };
        let end = start + core.len() as i64;
        if i >= *start && i < end {
            Some(core[(i - start) as usize])
        } else if i >= end {
            right.as_ref().map(|r| r[((i - end) as usize) % r.len()])
        } else {
            left.as_ref().map(|l| {
                let back = ((start - 1 - i) as usize) % l.len();
                l[l.len() - 1 - back]
            })
        }
    }

    /// Letters `C_lo ..= C_hi`; panics if any index is out of range.
    pub fn letters_range(&self, lo: i64, hi: i64) -> Vec<Letter> {
        (lo..=hi).map(|i| self.letter(i).expect("index outside word")).collect()
    }

    /// Smallest element of the index set, `None` when unbounded.
    pub fn min_position(&self) -> Option<i64> {
        match self {
            Word::Trivial { .. } => Some(0),
            Word::Seq { left: Some(_), .. } => None,
            Word::Seq { start, .. } => Some(start - 1),
        }
    }

    pub fn max_position(&self) -> Option<i64> {
        match self {
            Word::Trivial { .. } => Some(0),
            Word::Seq { right: Some(_), .. } => None,
            _ => Some(self.core_end()),
        }
    }

    pub fn contains_position(&self, i: i64) -> bool {
        self.min_position().map_or(true, |m| i >= m) && self.max_position().map_or(true, |m| i <= m)
    }

    /// The vertex `v_i(C)`.
    pub fn vertex(&self, i: i64, p: &StringPresentation) -> usize {
        match self {
            Word::Trivial { vertex, .. } => *vertex,
            _ => match self.letter(i) {
                Some(l) => p.tail(l),
                None => p.head(self.letter(i + 1).expect("position outside word")),
            },
        }
    }

    /// Head `v_0` of a finite or `N`-word.
    pub fn head(&self, p: &StringPresentation) -> Option<usize> {
        match self {
            Word::Trivial { vertex, .. } => Some(*vertex),
            Word::Seq { left: None, .. } => self.letter(1).map(|l| p.head(l)),
            _ => None,
        }
    }

    /// Tail of a finite or `-N`-word.
    pub fn tail(&self, p: &StringPresentation) -> Option<usize> {
        match self {
            Word::Trivial { vertex, .. } => Some(*vertex),
            Word::Seq { right: None, .. } => self.letter(self.core_end()).map(|l| p.tail(l)),
            _ => None,
        }
    }

    /// Sign of a finite or `N`-word.
    pub fn sign(&self, signs: &SignTable) -> Option<i8> {
        match self {
            Word::Trivial { sign, .. } => Some(*sign),
            Word::Seq { left: None, .. } => self.letter(1).map(|l| signs.sign(l)),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Word {
        match self {
            Word::Trivial { vertex, sign } => Word::Trivial { vertex: *vertex, sign: -sign },
            Word::Seq { left, core, right, start } => {
                let c = if left.is_none() && right.is_none() { core.len() as i64 + 1 } else { 1 };
                Word::Seq {
                    left: right.as_deref().map(reverse_inverse),
                    core: reverse_inverse(core),
                    right: left.as_deref().map(reverse_inverse),
                    start: c - start - core.len() as i64 + 1,
                }
                .canonical()
            }
        }
    }

    /// `C[n]`, the word `... C_n | C_{n+1} ...`; the identity unless two-sided.
    pub fn shift(&self, n: i64) -> Word {
        match self {
            Word::Seq { left: Some(l), core, right: Some(r), start } => Word::Seq {
                left: Some(l.clone()),
                core: core.clone(),
                right: Some(r.clone()),
                start: start - n,
            }
            .canonical(),
            _ => self.clone(),
        }
    }

    /// Minimal period of a periodic word.
    pub fn period(&self) -> Option<usize> {
        match self {
            Word::Seq { left: Some(l), core, right: Some(r), .. } if core.is_empty() && l == r => Some(l.len()),
            _ => None,
        }
    }

    /// Letters `C_j, C_{j+1}, ...` reindexed from 1.
    fn suffix_from(&self, j: i64, vertex: usize, sign_if_empty: i8) -> Word {
        let end = self.core_end();
        match self.right_block() {
            Some(r) => {
                let m = j.max(end + 1);
                let mut block = r.to_vec();
                block.rotate_left(((m - end - 1) as usize) % r.len());
                let prefix = if j <= end { self.letters_range(j, end) } else { Vec::new() };
                Word::nat(prefix, block)
            }
            None if j > end => Word::trivial(vertex, sign_if_empty),
            None => Word::finite(self.letters_range(j, end)),
        }
    }

    /// Letters `..., C_{i-1}, C_i`, indexed to end at 0 when infinite and from 1 when finite.
    fn prefix_to(&self, i: i64, vertex: usize, sign_if_empty: i8) -> Word {
        let start = self.start();
        match self.left_block() {
            Some(l) => {
                let m = i.min(start - 1);
                let mut block = l.to_vec();
                block.rotate_right(((start - 1 - m) as usize) % l.len());
                let suffix = if i >= start { self.letters_range(start, i) } else { Vec::new() };
                Word::neg_nat(block, suffix)
            }
            None if i < start => Word::trivial(vertex, sign_if_empty),
            None => Word::finite(self.letters_range(start, i)),
        }
    }

    /// `(C_{<=i}, C_{>i})`.
    pub fn slice(&self, i: i64, p: &StringPresentation, signs: &SignTable) -> Result<(Word, Word)> {
        if !self.contains_position(i) {
            return Err(Error::Word(format!("position {i} is outside the index set")));
        }
        if let Word::Trivial { .. } = self {
            return Ok((self.clone(), self.clone()));
        }
        let v = self.vertex(i, p);
        let after_sign = self.letter(i + 1).map(|l| signs.sign(l));
        let before_inv_sign = self.letter(i).map(|l| signs.sign(l.inverted()));
        let le = self.prefix_to(i, v, after_sign.unwrap_or(1));
        let gt = self.suffix_from(i + 1, v, before_inv_sign.map_or(1, |s| -s));
        Ok((le, gt))
    }

    /// `C(i, eps)`: whichever of `C_{>i}` and `(C_{<=i})^-1` has sign `eps`.
    pub fn side_word(&self, i: i64, eps: i8, p: &StringPresentation, signs: &SignTable) -> Result<Word> {
        let (le, gt) = self.slice(i, p, signs)?;
        let back = le.inverse();
        let (sg, sb) = (gt.sign(signs).unwrap(), back.sign(signs).unwrap());
        if sg == sb {
            return Err(Error::Internal(format!("both sides of position {i} have sign {sg}")));
        }
        Ok(if sg == eps { gt } else { back })
    }

    /// Every failure of the word conditions, checked on the core plus enough
    /// unrolled repetitions of each block to cover all windows.
    pub fn violations(&self, p: &StringPresentation) -> Vec<WordViolation> {
        let Word::Seq { left, core, right, start } = self else { return Vec::new() };
        let w = p.longest_relation().max(2);
        let mut seq = Vec::new();
        let mut first = *start;
        if let Some(l) = left {
            let reps = w / l.len() + 2;
            for _ in 0..reps {
                seq.extend_from_slice(l);
            }
            first -= (reps * l.len()) as i64;
        }
        seq.extend_from_slice(core);
        if let Some(r) = right {
            for _ in 0..w / r.len() + 2 {
                seq.extend_from_slice(r);
            }
        }
        let mut out = Vec::new();
        for j in 0..seq.len() {
            let idx = first + j as i64;
            if j + 1 < seq.len() {
                let (a, b) = (seq[j], seq[j + 1]);
                if p.tail(a) != p.head(b) {
                    out.push(WordViolation {
                        condition: Condition::Adjacency,
                        index: idx,
                        detail: format!("tail of {} is not the head of {}", p.letter_name(a), p.letter_name(b)),
                    });
                } else if b == a.inverted() {
                    out.push(WordViolation {
                        condition: Condition::Backtrack,
                        index: idx,
                        detail: format!("{} followed by its inverse", p.letter_name(a)),
                    });
                }
            }
            for m in 2..=w.min(seq.len() - j) {
                if p.is_zero_relation(&seq[j..j + m]) {
                    let names: Vec<String> = seq[j..j + m].iter().map(|&l| p.letter_name(l)).collect();
                    out.push(WordViolation {
                        condition: Condition::ZeroRelation,
                        index: idx,
                        detail: format!("{} is a zero relation", names.join(" ")),
                    });
                }
            }
        }
        out
    }

    pub fn check(&self, p: &StringPresentation) -> Result<()> {
        if let Word::Trivial { vertex, .. } = self {
            if *vertex >= p.quiver.vertices.len() {
                return Err(Error::Word(format!("unknown vertex index {vertex}")));
            }
            return Ok(());
        }
        match self.violations(p).first() {
            None => Ok(()),
            Some(v) => Err(Error::Word(format!("condition {:?} fails at index {}: {}", v.condition, v.index, v.detail))),
        }
    }

    /// The composite `CD`, if defined.
    pub fn compose(&self, d: &Word, p: &StringPresentation, signs: &SignTable) -> Result<Word> {
        let (Some(t), Some(h)) = (self.tail(p), d.head(p)) else {
            return Err(Error::Composition("left factor must end and right factor must begin".into()));
        };
        if t != h {
            return Err(Error::Composition(format!(
                "tail {} of the left factor differs from head {} of the right factor",
                p.vertex_name(t),
                p.vertex_name(h)
            )));
        }
        let s1 = self.inverse().sign(signs).unwrap();
        let s2 = d.sign(signs).unwrap();
        if s1 == s2 {
            return Err(Error::Composition(format!("inverse of the left factor and the right factor both have sign {s1}")));
        }
        let out = match (self, d) {
            (Word::Trivial { .. }, _) => d.clone(),
            (_, Word::Trivial { .. }) => self.clone(),
            (Word::Seq { left, core: c1, .. }, Word::Seq { core: c2, right, .. }) => {
                let mut core = c1.clone();
                core.extend_from_slice(c2);
                let start = match (left, right) {
                    (None, _) => 1,
                    (Some(_), None) => 1 - core.len() as i64,
                    (Some(_), Some(_)) => self.start(),
                };
                Word::Seq { left: left.clone(), core, right: right.clone(), start }.canonical()
            }
        };
        out.check(p).map_err(|e| Error::Composition(format!("concatenation is not a word: {e}")))?;
        Ok(out)
    }

    /// The total order on words with the same head and sign.
    pub fn compare(&self, other: &Word, p: &StringPresentation, signs: &SignTable) -> Result<Ordering> {
        let (Some(h1), Some(h2)) = (self.head(p), other.head(p)) else {
            return Err(Error::Incomparable("only finite and N-words are ordered".into()));
        };
        let (s1, s2) = (self.sign(signs).unwrap(), other.sign(signs).unwrap());
        if h1 != h2 || s1 != s2 {
            return Err(Error::Incomparable(format!(
                "words lie in different classes ({}, {s1}) and ({}, {s2})",
                p.vertex_name(h1),
                p.vertex_name(h2)
            )));
        }
        let period = |w: &Word| w.right_block().map_or(1, <[Letter]>::len);
        let bound = (self.core().len() + other.core().len() + period(self).lcm(&period(other)) + 1) as i64;
        for k in 1..=bound {
            match (self.letter(k), other.letter(k)) {
                (None, None) => return Ok(Ordering::Equal),
                (Some(a), Some(b)) if a == b => continue,
                (Some(a), Some(b)) => {
                    return match (a.inverse, b.inverse) {
                        (false, true) => Ok(Ordering::Less),
                        (true, false) => Ok(Ordering::Greater),
                        _ => Err(Error::Internal(format!(
                            "letters {} and {} diverge at {k} with the same orientation",
                            p.letter_name(a),
                            p.letter_name(b)
                        ))),
                    }
                }
                (Some(a), None) => return Ok(if a.inverse { Ordering::Greater } else { Ordering::Less }),
                (None, Some(b)) => return Ok(if b.inverse { Ordering::Less } else { Ordering::Greater }),
            }
        }
        Ok(Ordering::Equal)
    }

    pub fn to_text(&self, p: &StringPresentation) -> String {
        let names = |ls: &[Letter]| ls.iter().map(|&l| p.letter_name(l)).collect::<Vec<_>>().join(" ");
        match self {
            Word::Trivial { vertex, sign } => {
                format!("1({},{})", p.vertex_name(*vertex), if *sign > 0 { '+' } else { '-' })
            }
            Word::Seq { left: None, core, right: None, .. } => names(core),
            Word::Seq { left: None, core, right: Some(r), .. } => join_nonempty(&[names(core), format!("({})^inf", names(r))]),
            Word::Seq { left: Some(l), core, right: None, .. } => join_nonempty(&[format!("({})^-inf", names(l)), names(core)]),
            Word::Seq { left: Some(l), right: Some(r), start, .. } => {
                let lo = (*start).min(1);
                let hi = self.core_end().max(0);
                let shown_left = {
                    let mut b = l.clone();
                    b.rotate_right(((start - lo) as usize) % l.len());
                    b
                };
                let shown_right = {
                    let mut b = r.clone();
                    b.rotate_left(((hi - self.core_end()) as usize) % r.len());
                    b
                };
                join_nonempty(&[
                    format!("({})^-inf", names(&shown_left)),
                    names(&self.letters_range(lo, 0)),
                    "|".to_string(),
                    names(&self.letters_range(1, hi)),
                    format!("({})^inf", names(&shown_right)),
                ])
            }
        }
    }
}

fn join_nonempty(parts: &[String]) -> String {
    parts.iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Letter(String),
    Open,
    CloseInf,
    CloseNegInf,
    Bar,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                out.push(Tok::Open);
                chars.next();
            }
            '|' => {
                out.push(Tok::Bar);
                chars.next();
            }
            ')' => {
                let rest = &text[i + 1..];
                if rest.starts_with("^-inf") {
                    out.push(Tok::CloseNegInf);
                    for _ in 0..6 {
                        chars.next();
                    }
                } else if rest.starts_with("^inf") {
                    out.push(Tok::CloseInf);
                    for _ in 0..5 {
                        chars.next();
                    }
                } else {
                    return Err(Error::Word("`)` must be followed by `^inf` or `^-inf`".into()));
                }
            }
            _ => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || "()|".contains(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push(Tok::Letter(name));
            }
        }
    }
    Ok(out)
}

fn parse_trivial(text: &str, p: &StringPresentation) -> Result<Option<Word>> {
    let Some(inner) = text.strip_prefix("1(").and_then(|s| s.strip_suffix(')')) else { return Ok(None) };
    let (v, s) = inner
        .split_once(',')
        .ok_or_else(|| Error::Word(format!("expected `1(v,+)` or `1(v,-)`, got `{text}`")))?;
    let vertex = p
        .quiver
        .vertex_index(v.trim())
        .ok_or_else(|| Error::Word(format!("unknown vertex {}", v.trim())))?;
    let sign = match s.trim() {
        "+" | "+1" | "1" => 1,
        "-" | "-1" => -1,
        other => return Err(Error::Word(format!("bad sign `{other}`"))),
    };
    Ok(Some(Word::trivial(vertex, sign)))
}

/// Parses the word syntax (`x y-`, `1(v,+)`, `x (y- x)^inf`,
/// `(x y-)^-inf | x (y x-)^inf`) and checks the word conditions.
pub fn parse_word(text: &str, p: &StringPresentation) -> Result<Word> {
    let w = parse_word_unchecked(text, p)?;
    w.check(p)?;
    Ok(w)
}

/// Syntax only; the word conditions are left to [`Word::violations`].
pub fn parse_word_unchecked(text: &str, p: &StringPresentation) -> Result<Word> {
    let text = text.trim().replace("⁻¹", "-");
    if let Some(w) = parse_trivial(&text, p)? {
        return Ok(w);
    }
    let toks = tokenize(&text)?;
    let mut pos = 0;
    let read_letters = |pos: &mut usize| -> Result<Vec<Letter>> {
        let mut ls = Vec::new();
        while let Some(Tok::Letter(name)) = toks.get(*pos) {
            ls.push(p.parse_letter(name)?);
            *pos += 1;
        }
        Ok(ls)
    };
    let mut left = None;
    if toks.first() == Some(&Tok::Open) {
        let save = pos;
        pos += 1;
        let block = read_letters(&mut pos)?;
        match toks.get(pos) {
            Some(Tok::CloseNegInf) => {
                if block.is_empty() {
                    return Err(Error::Word("empty repeating block".into()));
                }
                left = Some(block);
                pos += 1;
            }
            _ => pos = save,
        }
    }
    let mut before_bar = read_letters(&mut pos)?;
    let mut bar = None;
    if toks.get(pos) == Some(&Tok::Bar) {
        pos += 1;
        bar = Some(before_bar.len());
        before_bar.extend(read_letters(&mut pos)?);
    }
    let core = before_bar;
    let mut right = None;
    if toks.get(pos) == Some(&Tok::Open) {
        pos += 1;
        let block = read_letters(&mut pos)?;
        if toks.get(pos) != Some(&Tok::CloseInf) {
            return Err(Error::Word("right block must end with `)^inf`".into()));
        }
        if block.is_empty() {
            return Err(Error::Word("empty repeating block".into()));
        }
        right = Some(block);
        pos += 1;
    }
    if pos != toks.len() {
        return Err(Error::Word(format!("unexpected token {:?}", toks[pos])));
    }
    if bar.is_some() && (left.is_none() || right.is_none()) {
        return Err(Error::Word("`|` is only meaningful in two-sided words".into()));
    }
    let word = match (left, right) {
        (None, None) => {
            if core.is_empty() {
                return Err(Error::Word("empty word; write trivial words as 1(v,+)".into()));
            }
            Word::finite(core)
        }
        (None, Some(r)) => Word::nat(core, r),
        (Some(l), None) => Word::neg_nat(l, core),
        (Some(l), Some(r)) => {
            let start = 1 - bar.unwrap_or(0) as i64;
            Word::int(l, core, r, start)
        }
    };
    Ok(word)
}

/// All trivial words, then every finite word of length `1..=max_len` in
/// depth-first order.
pub fn enumerate_words(p: &StringPresentation, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for v in 0..p.quiver.vertices.len() {
        out.push(Word::trivial(v, 1));
        out.push(Word::trivial(v, -1));
    }
    let w = p.longest_relation().max(2);
    fn extend(p: &StringPresentation, w: usize, max_len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        out.push(Word::finite(cur.clone()));
        if cur.len() == max_len {
            return;
        }
        let last = *cur.last().unwrap();
        for l in p.letters() {
            if p.head(l) != p.tail(last) || l == last.inverted() {
                continue;
            }
            cur.push(l);
            let n = cur.len();
            let bad = (2..=w.min(n)).any(|m| p.is_zero_relation(&cur[n - m..]));
            if !bad {
                extend(p, w, max_len, cur, out);
            }
            cur.pop();
        }
    }
    if max_len > 0 {
        for l in p.letters() {
            extend(p, w, max_len, &mut vec![l], &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, LAMBDA2};

    fn setup() -> (StringPresentation, SignTable) {
        let p = parse_presentation(LAMBDA2).unwrap();
        let s = p.assign_signs().unwrap();
        (p, s)
    }

    fn w(text: &str, p: &StringPresentation) -> Word {
        parse_word(text, p).unwrap()
    }

    #[test]
    fn conditions() {
        let (p, _) = setup();
        assert!(parse_word("x x", &p).unwrap_err().to_string().contains("ZeroRelation"));
        assert!(parse_word("x x-", &p).unwrap_err().to_string().contains("Backtrack"));
        assert!(parse_word("x y", &p).is_ok());
        assert!(parse_word("(x y-)^inf", &p).is_ok());
        assert!(parse_word("(x y)^inf", &p).is_ok());
        assert!(parse_word("(x)^inf", &p).is_err());
    }

    #[test]
    fn inverse_examples() {
        let (p, _) = setup();
        assert_eq!(Word::trivial(0, 1).inverse(), Word::trivial(0, -1));
        assert_eq!(w("x y", &p).inverse(), w("y- x-", &p));
        let c = w("(x y-)^-inf | (x y-)^inf", &p);
        let d = c.inverse();
        // D_i = C_{1-i}^{-1}: D_1 = C_0^{-1} = y, D_0 = C_1^{-1} = x^{-1}.
        assert_eq!(d.letter(1), Some(Letter::direct(1)));
        assert_eq!(d.letter(0), Some(Letter::inv(0)));
        assert_eq!(d.inverse(), c);
    }

    #[test]
    fn shifts_and_periods() {
        let (p, _) = setup();
        let c = w("(x y-)^-inf | (x y-)^inf", &p);
        assert_eq!(c.period(), Some(2));
        assert_eq!(c.shift(2), c);
        assert_ne!(c.shift(1), c);
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(c.shift(1).letter(1), Some(Letter::inv(1)));
        let f = w("x y", &p);
        assert_eq!(f.shift(5), f);
        assert_eq!(f.period(), None);
    }

    #[test]
    fn non_periodic_two_sided() {
        let (p, _) = setup();
        let c = w("(x y-)^-inf | x y (x- y)^inf", &p);
        assert_eq!(c.period(), None);
        assert_eq!(c.shape(), Shape::Int);
    }

    #[test]
    fn canonical_absorbs_prefix() {
        let (p, _) = setup();
        assert_eq!(w("x y- x y- (x y-)^inf", &p), w("(x y-)^inf", &p));
        assert_eq!(w("y- (x y-)^inf", &p), w("(y- x)^inf", &p));
        assert_eq!(w("(x y- x y-)^inf", &p), w("(x y-)^inf", &p));
    }

    #[test]
    fn compose_examples() {
        let (p, s) = setup();
        let t = Word::trivial(0, 1);
        assert_eq!(t.compose(&t, &p, &s).unwrap(), t);
        assert_eq!(w("x", &p).compose(&w("y", &p), &p, &s).unwrap(), w("x y", &p));
        assert!(w("x", &p).compose(&w("x", &p), &p, &s).is_err());
    }

    #[test]
    fn slice_examples() {
        let (p, s) = setup();
        let c = w("x y", &p);
        let (a, b) = c.slice(1, &p, &s).unwrap();
        assert_eq!((a, b), (w("x", &p), w("y", &p)));
        let (a, b) = c.slice(0, &p, &s).unwrap();
        assert!(a.is_trivial());
        assert_eq!(b, c);
        let n = w("(x- y)^inf", &p);
        let (a, b) = n.slice(3, &p, &s).unwrap();
        assert_eq!(a, w("x- y x-", &p));
        assert_eq!(b, w("(y x-)^inf", &p));
    }

    #[test]
    fn side_word_examples() {
        let (p, s) = setup();
        let c = w("x y", &p);
        assert_eq!(c.side_word(1, 1, &p, &s).unwrap(), w("x-", &p));
        assert_eq!(c.side_word(1, -1, &p, &s).unwrap(), w("y", &p));
    }

    #[test]
    fn compare_examples() {
        let (p, s) = setup();
        let cmp = |a: &str, b: &str| w(a, &p).compare(&w(b, &p), &p, &s).unwrap();
        assert_eq!(cmp("x", "x-"), Ordering::Less);
        assert_eq!(cmp("x y", "x"), Ordering::Less);
        assert_eq!(cmp("x", "x y-"), Ordering::Less);
        assert_eq!(cmp("(x y-)^inf", "x y- x y- (x y-)^inf"), Ordering::Equal);
        assert!(w("x", &p).compare(&w("y", &p), &p, &s).is_err());
    }

    #[test]
    fn text_round_trip() {
        let (p, _) = setup();
        for t in ["x y", "1(v,-)", "x (y- x)^inf", "(x y-)^-inf x y", "(x y-)^-inf | x y (x- y)^inf", "(x y-)^-inf | (x y-)^inf"] {
            let c = w(t, &p);
            assert_eq!(w(&c.to_text(&p), &p), c, "{t}");
        }
        let c = w("(x y-)^-inf | (x y-)^inf", &p).shift(1);
        assert_eq!(w(&c.to_text(&p), &p), c);
    }

    #[test]
    fn enumeration_counts() {
        let (p, _) = setup();
        // Over the two-loop algebra each letter has exactly two valid successors.
        let words = enumerate_words(&p, 3);
        assert_eq!(words.len(), 2 + 4 + 8 + 16);
    }
}
