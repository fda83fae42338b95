//! Σ-pure-injectivity of string modules `M(C)` by the descending chain
//! condition on side words `C(i, ε)`, for eventually periodic `C`.
//!
//! Along a periodic ray the side words split into finitely many residue
//! classes. In each class one side is periodic (a finite set) and the other
//! grows by a fixed block `R`, `W_{k+1} = R W_k`; since the order is decided at
//! the first differing letter, `W_{k+1}` vs `W_k` has the same outcome for all
//! `k`. A descending chain exists iff some growing family descends.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::{SignTable, StringPresentation};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ray {
    /// Positions `i → +∞`; the growing side is `(C_{<=i})^-1`.
    Right,
    /// Positions `i → -∞`; the growing side is `C_{>i}`.
    Left,
}

/// The side words at positions `base + k * step`, `k ≥ 0`, on the growing side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub ray: Ray,
    pub base: i64,
    pub step: i64,
    pub vertex: usize,
    pub sign: i8,
    /// Outcome of comparing `W_{k+1}` with `W_k`.
    pub direction: Ordering,
}

impl Family {
    pub fn position(&self, k: usize) -> i64 {
        self.base + self.step * k as i64
    }

    pub fn member(&self, c: &Word, k: usize, p: &StringPresentation, signs: &SignTable) -> Result<Word> {
        c.side_word(self.position(k), self.sign, p, signs)
    }

    pub fn is_descending(&self) -> bool {
        self.direction == Ordering::Less
    }

    /// `W_0, ..., W_{k}`.
    pub fn unroll(&self, c: &Word, k: usize, p: &StringPresentation, signs: &SignTable) -> Result<Vec<Word>> {
        (0..=k).map(|j| self.member(c, j, p, signs)).collect()
    }
}

/// The set `{C(i, ε) : v_i(C) = v}` as finitely many explicit words plus growing families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideWordFamilies {
    pub core: Vec<(i64, Word)>,
    pub periodic: Vec<(i64, Word)>,
    pub families: Vec<Family>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub verdict: bool,
    pub families: Vec<Family>,
    /// A strictly descending family, when the verdict is negative.
    pub witness: Option<Family>,
}

const CHECKED_STEPS: usize = 4;

fn require_string_word(c: &Word) -> Result<()> {
    if c.period().is_some() {
        return Err(Error::Word("periodic words give band modules, not string modules".into()));
    }
    Ok(())
}

struct Layout {
    /// Positions whose side words are listed explicitly.
    core: Vec<i64>,
    /// `(ray, base, step)` for each residue class.
    rays: Vec<(Ray, i64, i64)>,
}

fn layout(c: &Word) -> Layout {
    if c.is_finite() {
        return Layout { core: (0..=c.max_position().unwrap()).collect(), rays: Vec::new() };
    }
    let start = c.start();
    let end = start + c.core().len() as i64 - 1;
    let mut rays = Vec::new();
    let lo = match c.left_block() {
        Some(l) => {
            let q = l.len() as i64;
            rays.extend((0..q).map(|r| (Ray::Left, start - 1 - r, -q)));
            start
        }
        None => start - 1,
    };
    let hi = match c.right_block() {
        Some(b) => {
            let q = b.len() as i64;
            rays.extend((0..q).map(|r| (Ray::Right, end + r, q)));
            end - 1
        }
        None => end,
    };
    Layout { core: (lo..=hi).collect(), rays }
}

fn growing_side(c: &Word, ray: Ray, i: i64, p: &StringPresentation, signs: &SignTable) -> Result<Word> {
    let (le, gt) = c.slice(i, p, signs)?;
    Ok(match ray {
        Ray::Right => le.inverse(),
        Ray::Left => gt,
    })
}

fn family_at(c: &Word, ray: Ray, base: i64, step: i64, p: &StringPresentation, signs: &SignTable) -> Result<Family> {
    let w0 = growing_side(c, ray, base, p, signs)?;
    let sign = w0.sign(signs).ok_or_else(|| Error::Internal("growing side word has no sign".into()))?;
    let mut fam = Family { ray, base, step, vertex: c.vertex(base, p), sign, direction: Ordering::Equal };
    let members = fam.unroll(c, CHECKED_STEPS, p, signs)?;
    let dirs: Vec<Ordering> = members.windows(2).map(|w| w[1].compare(&w[0], p, signs)).collect::<Result<_>>()?;
    if dirs.iter().any(|d| *d != dirs[0] || *d == Ordering::Equal) {
        return Err(Error::Internal(format!("family at {base} step {step} is not strictly monotone: {dirs:?}")));
    }
    fam.direction = dirs[0];
    Ok(fam)
}

/// The side words `C(i, ε)` at vertex `v`.
pub fn side_word_families(
    c: &Word,
    v: usize,
    eps: i8,
    p: &StringPresentation,
    signs: &SignTable,
) -> Result<SideWordFamilies> {
    require_string_word(c)?;
    let lay = layout(c);
    let mut out = SideWordFamilies { core: Vec::new(), periodic: Vec::new(), families: Vec::new() };
    for &i in &lay.core {
        if c.vertex(i, p) == v {
            out.core.push((i, c.side_word(i, eps, p, signs)?));
        }
    }
    for &(ray, base, step) in &lay.rays {
        if c.vertex(base, p) != v {
            continue;
        }
        let fam = family_at(c, ray, base, step, p, signs)?;
        if fam.sign == eps {
            out.families.push(fam);
        } else {
            out.periodic.push((base, c.side_word(base, eps, p, signs)?));
        }
    }
    Ok(out)
}

/// Decides whether every descending chain of side words stabilises.
pub fn is_sigma_pure_injective(c: &Word, p: &StringPresentation, signs: &SignTable) -> Result<ChainCertificate> {
    require_string_word(c)?;
    c.check(p)?;
    let lay = layout(c);
    let mut families = Vec::new();
    for &(ray, base, step) in &lay.rays {
        families.push(family_at(c, ray, base, step, p, signs)?);
    }
    let witness = families.iter().find(|f| f.is_descending()).cloned();
    Ok(ChainCertificate { verdict: witness.is_none(), families, witness })
}

impl ChainCertificate {
    /// The witness unrolled `k` steps and checked strictly descending with `compare`.
    pub fn verified_chain(&self, c: &Word, k: usize, p: &StringPresentation, signs: &SignTable) -> Result<Option<Vec<Word>>> {
        let Some(w) = &self.witness else { return Ok(None) };
        let chain = w.unroll(c, k, p, signs)?;
        for pair in chain.windows(2) {
            if pair[1].compare(&pair[0], p, signs)? != Ordering::Less {
                return Err(Error::Internal("witness chain is not descending".into()));
            }
        }
        Ok(Some(chain))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.ray {
            Ray::Right => "(C_{<=i})^-1",
            Ray::Left => "C_{>i}",
        };
        let dir = match self.direction {
            Ordering::Less => "descending",
            Ordering::Greater => "ascending",
            Ordering::Equal => "constant",
        };
        write!(f, "{side} at i = {} {:+} k, sign {:+}: {dir}", self.base, self.step, self.sign)
    }
}

/// Whether `KQ/(ρ)` is finite dimensional: no arbitrarily long path avoids every zero relation.
pub fn is_finite_dimensional(p: &StringPresentation) -> bool {
    let keep = p.longest_relation().saturating_sub(1);
    // relations in traversal order
    let rels: Vec<Vec<usize>> = p.rho.iter().map(|r| r.iter().rev().copied().collect()).collect();
    type State = (usize, Vec<usize>);
    let successors = |s: &State| -> Vec<State> {
        p.quiver
            .arrows_out_of(s.0)
            .filter_map(|a| {
                let mut path = s.1.clone();
                path.push(a);
                if rels.iter().any(|r| path.ends_with(r)) {
                    return None;
                }
                let cut = path.len().saturating_sub(keep);
                Some((p.arrow(a).head, path[cut..].to_vec()))
            })
            .collect()
    };
    // iterative DFS with colours
    let mut done: HashSet<State> = HashSet::new();
    let mut on_stack: HashSet<State> = HashSet::new();
    for v in 0..p.quiver.vertices.len() {
        let root: State = (v, Vec::new());
        if done.contains(&root) {
            continue;
        }
        let mut stack: Vec<(State, Vec<State>)> = vec![(root.clone(), successors(&root))];
        on_stack.insert(root);
        while let Some((state, succ)) = stack.last_mut() {
            match succ.pop() {
                Some(next) => {
                    if on_stack.contains(&next) {
                        return false;
                    }
                    if !done.contains(&next) {
                        on_stack.insert(next.clone());
                        let s = successors(&next);
                        stack.push((next, s));
                    }
                }
                None => {
                    let s = state.clone();
                    on_stack.remove(&s);
                    done.insert(s);
                    stack.pop();
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, A1, LAMBDA2, TRUNCATED_LOOPS};
    use crate::words::parse_word;

    fn setup() -> (StringPresentation, SignTable) {
        let p = parse_presentation(LAMBDA2).unwrap();
        let s = p.assign_signs().unwrap();
        (p, s)
    }

    #[test]
    fn finite_words_are_sigma_pure_injective() {
        let (p, s) = setup();
        for w in ["1(v,+)", "x", "x y", "x y- x"] {
            let c = parse_word(w, &p).unwrap();
            let cert = is_sigma_pure_injective(&c, &p, &s).unwrap();
            assert!(cert.verdict && cert.families.is_empty());
        }
    }

    #[test]
    fn descending_ray() {
        let (p, s) = setup();
        let c = parse_word("(x y-)^inf", &p).unwrap();
        let cert = is_sigma_pure_injective(&c, &p, &s).unwrap();
        assert!(!cert.verdict);
        assert!(cert.verified_chain(&c, 10, &p, &s).unwrap().is_some());
        let odd = cert.families.iter().find(|f| f.base == 1).unwrap();
        assert!(odd.is_descending());
        let chain: Vec<String> = odd.unroll(&c, 2, &p, &s).unwrap().iter().map(|w| w.to_text(&p)).collect();
        assert_eq!(chain, ["x-", "x- y x-", "x- y x- y x-"]);
    }

    #[test]
    fn ascending_ray() {
        let (p, s) = setup();
        let c = parse_word("(x- y)^inf", &p).unwrap();
        let cert = is_sigma_pure_injective(&c, &p, &s).unwrap();
        assert!(cert.verdict);
        assert!(cert.families.iter().all(|f| f.direction == Ordering::Greater));
        assert!(is_sigma_pure_injective(&c.inverse(), &p, &s).unwrap().verdict);
    }

    #[test]
    fn periodic_words_are_rejected() {
        let (p, s) = setup();
        let c = parse_word("(x y-)^-inf | (x y-)^inf", &p).unwrap();
        assert!(is_sigma_pure_injective(&c, &p, &s).is_err());
    }

    #[test]
    fn side_words_of_xy() {
        let (p, s) = setup();
        let c = parse_word("x y", &p).unwrap();
        for eps in [1, -1] {
            let fam = side_word_families(&c, 0, eps, &p, &s).unwrap();
            assert_eq!(fam.core.len(), 3);
            assert!(fam.families.is_empty());
        }
    }

    #[test]
    fn finite_dimensionality() {
        assert!(!is_finite_dimensional(&parse_presentation(LAMBDA2).unwrap()));
        assert!(is_finite_dimensional(&parse_presentation(TRUNCATED_LOOPS).unwrap()));
        assert!(is_finite_dimensional(&parse_presentation(A1).unwrap()));
    }
}
