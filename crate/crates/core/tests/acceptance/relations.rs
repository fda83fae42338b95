//! Criteria 1-3: splitting, retractions onto C♭ and C♯, and the relation lemmas.

use rand::Rng;
use strelkit_core::exactla::poly::Poly;
use strelkit_core::{Block, KroneckerModule, LinearRelation, Subspace, Vector};

use crate::gen::{self, Piece};
use crate::Outcome;

const SAMPLES: usize = 1000;

pub fn splitting(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut nontrivial = 0;
    for (i, c) in gen::sample_relations(seed, SAMPLES).iter().enumerate() {
        let data = c.sharp_flat();
        let u = match c.split() {
            Ok(u) => u,
            Err(e) => {
                bad.push(format!("sample {i}: {e}"));
                continue;
            }
        };
        let direct = u.intersect(&data.flat).unwrap().is_zero() && data.flat.sum(&u).unwrap() == data.sharp;
        if !direct || !c.restrict(&u).unwrap().is_automorphic() {
            bad.push(format!("sample {i}: U is not an automorphic complement"));
        }
        if u.dim() > 0 && !data.flat.is_zero() {
            nontrivial += 1;
        }
    }
    verdict(bad, format!("{SAMPLES} relations, {nontrivial} with C♭ ≠ 0 and U ≠ 0"))
}

pub fn retractions(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    for (i, c) in gen::sample_relations(seed, SAMPLES).iter().enumerate() {
        let data = c.sharp_flat();
        for (name, u) in [("C♭", &data.flat), ("C♯", &data.sharp)] {
            match c.find_retraction(u) {
                Ok(Some(r)) => {
                    let restricted = c.restrict(u).unwrap();
                    let id = r.mul(&u.basis().transpose());
                    if !c.is_morphism_to(&r, &restricted) || id != strelkit_core::Matrix::identity(c.field(), u.dim()) {
                        bad.push(format!("sample {i}: retraction onto {name} fails its equations"));
                    }
                }
                Ok(None) => bad.push(format!("sample {i}: no retraction onto {name}")),
                Err(e) => bad.push(format!("sample {i}: {e}")),
            }
        }
    }
    verdict(bad, format!("{} retractions", 2 * SAMPLES))
}

pub fn lemmas(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    automorphic_lemma(seed, &mut bad);
    restriction_lemmas(seed, &mut bad);
    notes.push(exactness_lemma(seed, &mut bad));
    hom_vanishing(seed, &mut bad);
    notes.push(ext_vanishing(seed, &mut bad));
    verdict(bad, notes.join("; "))
}

fn verdict(bad: Vec<String>, summary: String) -> Outcome {
    if bad.is_empty() {
        Ok(summary)
    } else {
        let shown: Vec<_> = bad.iter().take(5).cloned().collect();
        Err(format!("{} violations: {}", bad.len(), shown.join(" | ")))
    }
}

fn automorphic_lemma(seed: u64, bad: &mut Vec<String>) {
    let mut r = gen::rng(seed, 3);
    let f = gen::f5();
    for i in 0..200 {
        let n = r.gen_range(1..=6);
        let c = gen::piece(&mut r, f, n, Piece::Automorphic);
        if !c.is_automorphic() || !c.flat().is_zero() || !c.sharp().is_full() {
            bad.push(format!("automorphic {i}: (C♭, C♯) ≠ (0, V)"));
        }
    }
}

fn restriction_lemmas(seed: u64, bad: &mut Vec<String>) {
    for (i, c) in gen::sample_relations(seed, SAMPLES).iter().enumerate() {
        let data = c.sharp_flat();
        if !data.flat.is_subspace_of(&data.sharp) {
            bad.push(format!("sample {i}: C♭ ⊄ C♯"));
        }
        if !c.restrict(&data.flat).unwrap().flat().is_full() {
            bad.push(format!("sample {i}: (C|C♭)♭ ≠ C♭"));
        }
        let on_sharp = c.restrict(&data.sharp).unwrap();
        if !on_sharp.sharp().is_full() {
            bad.push(format!("sample {i}: (C|C♯)♯ ≠ C♯"));
        }
        let flat_in = gen::subspace_coords(&data.sharp, &data.flat);
        let (quot, qmap) = on_sharp.quotient(&flat_in).unwrap();
        if !quot.is_automorphic() {
            bad.push(format!("sample {i}: C♯/C♭ is not automorphic"));
            continue;
        }
        let t = c.induced_t_with(&data).unwrap();
        let s: Vec<Vector> = t.basis.iter().map(|w| qmap.mul_vec(&data.sharp.coordinates(w).unwrap())).collect();
        let agrees = (0..t.dim()).all(|j| {
            let mut image = vec![c.field().zero(); s.len()];
            for (i, si) in s.iter().enumerate() {
                image = strelkit_core::exactla::matrix::vec_add(&image, &strelkit_core::exactla::matrix::vec_scale(si, &t.t_matrix[(i, j)]));
            }
            image.extend(s[j].iter().cloned());
            quot.graph().contains(&image)
        });
        if Subspace::span(c.field(), quot.dim(), &s).dim() != t.dim() || !agrees {
            bad.push(format!("sample {i}: induced_T differs from the quotient automorphism"));
        }
    }
}

/// `0 → (V₁, C₁) → (V₂, C₂) → (V₃, C₃) → 0` with `V₁` the first coordinates of `V₂`.
fn exact_sequence(r: &mut rand_chacha::ChaCha8Rng) -> (LinearRelation, LinearRelation, LinearRelation, Subspace) {
    let f = gen::f5();
    let n1 = r.gen_range(1..=3);
    let n3 = r.gen_range(1..=3);
    let n = n1 + n3;
    let k1 = gen::random_piece_kind(r);
    let k3 = gen::random_piece_kind(r);
    let c1 = gen::piece(r, f, n1, k1);
    let c3 = gen::piece(r, f, n3, k3);
    let mut pairs = Vec::new();
    for (a, b) in c1.pairs() {
        let mut x = a.clone();
        x.resize(n, f.zero());
        let mut y = b.clone();
        y.resize(n, f.zero());
        pairs.push((x, y));
    }
    for (a, b) in c3.pairs() {
        let mut x = gen::vector(r, f, n1);
        x.extend(a);
        let mut y = gen::vector(r, f, n1);
        y.extend(b);
        pairs.push((x, y));
    }
    // base change preserving V₁
    let mut g = gen::invertible(r, f, n);
    for i in n1..n {
        for j in 0..n1 {
            g[(i, j)] = f.zero();
        }
    }
    while !g.is_invertible() {
        g = gen::invertible(r, f, n);
        for i in n1..n {
            for j in 0..n1 {
                g[(i, j)] = f.zero();
            }
        }
    }
    let moved: Vec<(Vector, Vector)> = pairs.iter().map(|(a, b)| (g.mul_vec(a), g.mul_vec(b))).collect();
    let c2 = LinearRelation::from_pairs(f, n, n, &moved).unwrap();
    let v1 = Subspace::span(f, n, &(0..n1).map(|i| strelkit_core::exactla::matrix::unit_vec(f, n, i)).collect::<Vec<_>>());
    let sub = c2.restrict(&v1).unwrap();
    let proj: Vec<(Vector, Vector)> = c2.pairs().into_iter().map(|(a, b)| (a[n1..].to_vec(), b[n1..].to_vec())).collect();
    let quot = LinearRelation::from_pairs(f, n3, n3, &proj).unwrap();
    (sub, c2, quot, v1)
}

fn exactness_lemma(seed: u64, bad: &mut Vec<String>) -> String {
    let mut r = gen::rng(seed, 4);
    let mut hits = [0usize; 3];
    for i in 0..200 {
        let (c1, c2, c3, v1) = exact_sequence(&mut r);
        if c2.dim() != c1.dim() + c3.dim() {
            bad.push(format!("sequence {i}: not exact in the middle"));
            continue;
        }
        if c1.sharp().is_full() && c3.sharp().is_full() {
            hits[0] += 1;
            if !c2.sharp().is_full() {
                bad.push(format!("sequence {i}: (i) fails"));
            }
        }
        let (f1, f3) = (c1.flat(), c3.flat());
        if f1.is_full() && f3.is_full() {
            hits[1] += 1;
            if !c2.flat().is_full() {
                bad.push(format!("sequence {i}: (ii) fails"));
            }
        }
        if f1.is_full() && f3.is_zero() {
            hits[2] += 1;
            if c2.flat() != v1 {
                bad.push(format!("sequence {i}: (iii) fails"));
            }
        }
    }
    if hits.contains(&0) {
        bad.push(format!("exactness hypotheses never met: {hits:?}"));
    }
    format!("exactness (i)/(ii)/(iii) exercised {}/{}/{} times", hits[0], hits[1], hits[2])
}

fn aut_blocks() -> Vec<Block> {
    let f = gen::f5();
    let lin = |c: i64| Poly::new(f, vec![f.int(-c), f.one()]);
    let mut out: Vec<Block> = (1..5).map(|c| Block::Aut { invariant_factors: vec![lin(c)] }).collect();
    out.push(Block::Aut { invariant_factors: vec![lin(2).mul(&lin(2))] });
    out.push(Block::Aut { invariant_factors: vec![Poly::new(f, vec![f.int(2), f.zero(), f.one()])] });
    out.push(Block::Aut { invariant_factors: vec![lin(3), lin(3)] });
    out
}

fn hom_vanishing(seed: u64, bad: &mut Vec<String>) {
    let f = gen::f5();
    let injectives: Vec<Block> = (0..=3).map(Block::I).collect();
    let mut against_sharp = injectives.clone();
    against_sharp.extend(aut_blocks());
    for (i, c) in gen::sample_relations(seed, 200).iter().enumerate() {
        let data = c.sharp_flat();
        for (u, blocks, name) in [(&data.flat, &injectives, "C♭"), (&data.sharp, &against_sharp, "C♯")] {
            let target = KroneckerModule::relation_quotient(c, u).unwrap();
            for b in blocks {
                let h = b.module(f).hom_space(&target).dim();
                if h != 0 {
                    bad.push(format!("relation {i}: dim Hom({b}, quotient by {name}) = {h}"));
                }
            }
        }
    }
}

fn ext_vanishing(seed: u64, bad: &mut Vec<String>) -> String {
    let f = gen::f5();
    let mut sources = Vec::new();
    for n in 0..=3 {
        sources.push(Block::P(n));
    }
    for n in 1..=3 {
        sources.push(Block::Z(n));
        sources.push(Block::R(n));
    }
    let mut checked = 0;
    for (i, c) in gen::sample_relations(seed, 200).iter().enumerate() {
        let u = c.split().unwrap();
        let data = c.sharp_flat();
        for (name, sub) in [("U", &u), ("C♯", &data.sharp)] {
            let rel = c.restrict(sub).unwrap();
            if !rel.sharp().is_full() {
                bad.push(format!("relation {i}: C|{name} does not have C♯ = V"));
                continue;
            }
            let target = KroneckerModule::from_relation(&rel);
            for b in &sources {
                checked += 1;
                let e = b.module(f).ext_dim(&target);
                if e != 0 {
                    bad.push(format!("relation {i}: dim Ext¹({b}, C|{name}) = {e}"));
                }
            }
        }
    }
    format!("{checked} Ext¹ groups vanish")
}
