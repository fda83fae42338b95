//! Relations given by words, the subspaces `C^-(M) ⊆ C^+(M)` and the refined
//! functors `F_{B,D}` and `G_{B,D}` on finite-dimensional representations.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::presentation::{Letter, SignTable, StringPresentation};
use crate::relation::LinearRelation;
use crate::strmod::Representation;
use crate::words::{Shape, Word};

/// `x` as the graph of its map, `x^-1` as the inverse relation.
pub fn letter_relation(l: Letter, m: &Representation) -> LinearRelation {
    let g = LinearRelation::graph_of(m.map(l.arrow));
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

fn letters_relation(letters: &[Letter], m: &Representation, head: usize) -> Result<LinearRelation> {
    let mut acc = LinearRelation::identity(m.field(), m.dim_at(head));
    for &l in letters {
        acc = acc.compose(&letter_relation(l, m))?;
    }
    Ok(acc)
}

/// The relation `C` from `e_{tail} M` to `e_{head} M` of a finite word.
pub fn word_relation(c: &Word, m: &Representation) -> Result<LinearRelation> {
    let p = m.presentation();
    c.check(p)?;
    match c {
        Word::Trivial { vertex, .. } => Ok(LinearRelation::identity(m.field(), m.dim_at(*vertex))),
        _ if c.is_finite() => letters_relation(c.core(), m, c.head(p).unwrap()),
        _ => Err(Error::Word("only finite words define relations".into())),
    }
}

/// `C^+(M)` and `C^-(M)` inside `e_v M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub plus: Subspace,
    pub minus: Subspace,
}

/// The letter `l` such that `C l` is a word, among letters of the given orientation.
fn extension(c: &Word, inverse: bool, p: &StringPresentation, signs: &SignTable) -> Option<Word> {
    (0..p.quiver.arrows.len()).find_map(|a| {
        let l = Letter { arrow: a, inverse };
        c.compose(&Word::finite(vec![l]), p, signs).ok()
    })
}

/// `C^±(M)` for a finite or eventually periodic `N`-word `C`.
pub fn filtration(c: &Word, m: &Representation, signs: &SignTable) -> Result<Filtration> {
    let p = m.presentation();
    c.check(p)?;
    match c.shape() {
        Shape::Trivial | Shape::Finite => {
            let plus = match extension(c, true, p, signs) {
                Some(cx) => word_relation(&cx, m)?.zero_image(),
                None => word_relation(c, m)?.full_image(),
            };
            let minus = match extension(c, false, p, signs) {
                Some(cy) => word_relation(&cy, m)?.full_image(),
                None => word_relation(c, m)?.zero_image(),
            };
            Ok(Filtration { plus, minus })
        }
        Shape::Nat => {
            let head = c.head(p).unwrap();
            let block = c.right_block().unwrap();
            let prefix = letters_relation(c.core(), m, head)?;
            let e = letters_relation(block, m, p.head(block[0]))?;
            // C_{<=n} M decreases to P E'' M and C_{<=n} 0 increases to P E' 0
            Ok(Filtration { plus: prefix.apply(&e.stable())?, minus: prefix.apply(&e.orbit())? })
        }
        _ => Err(Error::Word("filtrations need a finite word or an N-word".into())),
    }
}

/// `F^+/F^-` at vertex `v`, with the induced automorphism when `B^-1 D` is periodic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorValue {
    pub vertex: usize,
    pub plus: Subspace,
    pub minus: Subspace,
    pub quotient_dim: usize,
    pub t_matrix: Option<Matrix>,
}

fn check_pair(b: &Word, d: &Word, p: &StringPresentation, signs: &SignTable) -> Result<usize> {
    let (Some(hb), Some(hd)) = (b.head(p), d.head(p)) else {
        return Err(Error::Word("B and D must be finite or N-words".into()));
    };
    if hb != hd {
        return Err(Error::Word("B and D must have the same head".into()));
    }
    if b.sign(signs) != Some(1) || d.sign(signs) != Some(-1) {
        return Err(Error::Word("B must have sign +1 and D sign -1".into()));
    }
    Ok(hb)
}

/// The finite word `E` with `D = E^∞` and `B = (E^-1)^∞`, if any.
pub fn periodic_pair(b: &Word, d: &Word) -> Option<Word> {
    if b.shape() != Shape::Nat || d.shape() != Shape::Nat || !b.core().is_empty() || !d.core().is_empty() {
        return None;
    }
    let e = d.right_block().unwrap().to_vec();
    let inv: Vec<Letter> = e.iter().rev().map(|l| l.inverted()).collect();
    (b.right_block().unwrap() == inv.as_slice()).then(|| Word::finite(e))
}

fn value(vertex: usize, plus: Subspace, minus: Subspace, t_matrix: Option<Matrix>) -> FunctorValue {
    let quotient_dim = plus.dim() - minus.dim();
    FunctorValue { vertex, plus, minus, quotient_dim, t_matrix }
}

/// `F_{B,D}(M)` for `(B, D) ∈ W_{v,1} × W_{v,-1}`.
pub fn refined_functor(b: &Word, d: &Word, m: &Representation, signs: &SignTable) -> Result<FunctorValue> {
    let p = m.presentation();
    let v = check_pair(b, d, p, signs)?;
    if let Some(e) = periodic_pair(b, d) {
        let rel = word_relation(&e, m)?;
        let data = rel.sharp_flat();
        let t = rel.induced_t_with(&data)?;
        return Ok(value(v, data.sharp, data.flat, Some(t.t_matrix)));
    }
    combine_f(v, &filtration(b, m, signs)?, &filtration(d, m, signs)?)
}

/// `F^+ = B^+ ∩ D^+` and `F^- = B^+ ∩ D^- + B^- ∩ D^+` from precomputed filtrations.
pub fn combine_f(v: usize, fb: &Filtration, fd: &Filtration) -> Result<FunctorValue> {
    let plus = fb.plus.intersect(&fd.plus)?;
    let minus = fb.plus.intersect(&fd.minus)?.sum(&fb.minus.intersect(&fd.plus)?)?;
    Ok(value(v, plus, minus, None))
}

/// `G_{B,D}(M)` with `G^± = B^- + (D^± ∩ B^+)`.
pub fn g_functor(b: &Word, d: &Word, m: &Representation, signs: &SignTable) -> Result<FunctorValue> {
    let p = m.presentation();
    let v = check_pair(b, d, p, signs)?;
    combine_g(v, &filtration(b, m, signs)?, &filtration(d, m, signs)?)
}

/// `G^± = B^- + (D^± ∩ B^+)` from precomputed filtrations.
pub fn combine_g(v: usize, fb: &Filtration, fd: &Filtration) -> Result<FunctorValue> {
    let plus = fb.minus.sum(&fd.plus.intersect(&fb.plus)?)?;
    let minus = fb.minus.sum(&fd.minus.intersect(&fb.plus)?)?;
    Ok(value(v, plus, minus, None))
}

/// The map `F_{B,D}(M) → F_{B,D}(N)` induced by a morphism `f: M → N`, in the
/// quotient bases chosen by `quotient_map`.
pub fn functor_on_morphism(
    b: &Word,
    d: &Word,
    f: &[Matrix],
    m: &Representation,
    n: &Representation,
    signs: &SignTable,
) -> Result<Matrix> {
    if !m.is_morphism_to(f, n) {
        return Err(Error::Dimension("not a morphism of representations".into()));
    }
    let fm = refined_functor(b, d, m, signs)?;
    let fnv = refined_functor(b, d, n, signs)?;
    let fv = &f[fm.vertex];
    for (src, dst) in [(&fm.plus, &fnv.plus), (&fm.minus, &fnv.minus)] {
        if !src.image(fv)?.is_subspace_of(dst) {
            return Err(Error::Internal("filtration is not functorial".into()));
        }
    }
    let (_, reps) = fm.minus.quotient_map(&fm.plus)?;
    let (qn, _) = fnv.minus.quotient_map(&fnv.plus)?;
    let cols: Vec<_> = reps.iter().map(|r| qn.mul_vec(&fv.mul_vec(r))).collect();
    Ok(Matrix::from_columns(m.field(), fnv.quotient_dim, &cols))
}

/// `#{i : C(i, 1) = B and C(i, -1) = D}` for a finite word `C`.
pub fn matching_positions(c: &Word, b: &Word, d: &Word, p: &StringPresentation, signs: &SignTable) -> Result<usize> {
    let n = c.max_position().ok_or_else(|| Error::Word("finite word expected".into()))?;
    let mut count = 0;
    for i in 0..=n {
        if &c.side_word(i, 1, p, signs)? == b && &c.side_word(i, -1, p, signs)? == d {
            count += 1;
        }
    }
    Ok(count)
}
