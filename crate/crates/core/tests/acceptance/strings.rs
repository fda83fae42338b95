//! Criteria 5-8: string modules, refined functors, the sigma decision and the word order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use strelkit_core::filtration::{matching_positions, periodic_pair};
use strelkit_core::presentation::{parse_presentation, A1, LAMBDA2, TRUNCATED_LOOPS};
use strelkit_core::strmod::reversal_isomorphism;
use strelkit_core::words::enumerate_words;
use strelkit_core::{
    band_module, combine_f, combine_g, filtration, is_sigma_pure_injective, parse_word, refined_functor, string_module,
    Field, Filtration, Matrix, Representation, SignTable, StringPresentation, Word,
};

use crate::Outcome;

fn fixture(text: &str) -> (StringPresentation, SignTable) {
    let p = parse_presentation(text).unwrap();
    let s = p.assign_signs().unwrap();
    (p, s)
}

fn finish(bad: Vec<String>, summary: String) -> Outcome {
    if bad.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{} violations: {}", bad.len(), bad[..bad.len().min(5)].join(" | ")))
    }
}

pub fn string_modules(_seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for text in [LAMBDA2, TRUNCATED_LOOPS] {
        let (p, _) = fixture(text);
        for c in enumerate_words(&p, 6) {
            count += 1;
            let name = c.to_text(&p);
            let m = string_module(&c, &p).unwrap();
            if !m.annihilated_by_rho() {
                bad.push(format!("M({name}) is not annihilated by ρ"));
            }
            if m.total_dim() != c.len().unwrap() + 1 {
                bad.push(format!("dim M({name}) = {}", m.total_dim()));
            }
            match m.is_indecomposable() {
                Ok(true) => {}
                Ok(false) => bad.push(format!("End M({name}) is not local")),
                Err(e) => bad.push(format!("End M({name}): {e}")),
            }
            let inv = string_module(&c.inverse(), &p).unwrap();
            let iso = reversal_isomorphism(&c, &p).unwrap();
            if !m.is_isomorphism_to(&iso, &inv) {
                bad.push(format!("M({name}) ≇ M({name}^-1)"));
            }
        }
    }
    finish(bad, format!("{count} string modules"))
}

/// Finite words of length `≤ max_len` and `N`-words `P E^∞` with `|P| + |E| ≤ max_len`.
fn one_sided_words(p: &StringPresentation, max_len: usize) -> Vec<Word> {
    let finite = enumerate_words(p, max_len);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in &finite {
        if seen.insert(w.clone()) {
            out.push(w.clone());
        }
    }
    for pre in finite.iter().filter(|w| w.len().unwrap() < max_len) {
        for block in finite.iter().filter(|w| !w.is_trivial()) {
            if pre.len().unwrap() + block.len().unwrap() > max_len {
                continue;
            }
            let w = Word::nat(pre.core().to_vec(), block.core().to_vec());
            if w.check(p).is_ok() && seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    out
}

/// Filtrations of every word on one module, keyed by word index.
fn filtrations(words: &[Word], m: &Representation, s: &SignTable) -> Vec<Filtration> {
    words.iter().map(|w| filtration(w, m, s).unwrap()).collect()
}

fn lambda_fixture_modules(p: &StringPresentation) -> Vec<(String, Representation)> {
    let f = p.field;
    let mut out: Vec<(String, Representation)> = enumerate_words(p, 3)
        .into_iter()
        .map(|c| (format!("M({})", c.to_text(p)), string_module(&c, p).unwrap()))
        .collect();
    let band = parse_word("(x y-)^-inf | (x y-)^inf", p).unwrap();
    for (name, t) in [
        ("[2]", Matrix::from_ints(f, 1, 1, &[2])),
        ("J2(1)", Matrix::from_ints(f, 2, 2, &[1, 1, 0, 1])),
        ("[-1]", Matrix::from_ints(f, 1, 1, &[-1])),
    ] {
        out.push((format!("M((x y-)^inf, {name})"), band_module(&band, &t, p).unwrap()));
    }
    let long = parse_word("(x y- x- y)^-inf | (x y- x- y)^inf", p).unwrap();
    out.push(("M((x y- x- y)^inf, [3])".into(), band_module(&long, &Matrix::from_ints(f, 1, 1, &[3]), p).unwrap()));
    let parts: Vec<Representation> =
        ["x", "y- x"].iter().map(|w| string_module(&parse_word(w, p).unwrap(), p).unwrap()).collect();
    out.push(("M(x) ⊕ M(y- x)".into(), Representation::direct_sum(&parts).unwrap()));
    out
}

fn split_by_sign(words: &[Word], s: &SignTable) -> (Vec<usize>, Vec<usize>) {
    let plus = (0..words.len()).filter(|&i| words[i].sign(s) == Some(1)).collect();
    let minus = (0..words.len()).filter(|&i| words[i].sign(s) == Some(-1)).collect();
    (plus, minus)
}

pub fn refined_functors(_seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let (p, s) = fixture(LAMBDA2);

    // F and G agree on fixture modules
    let words = one_sided_words(&p, 4);
    let (bs, ds) = split_by_sign(&words, &s);
    let mut pairs = 0;
    for (name, m) in lambda_fixture_modules(&p) {
        let filt = filtrations(&words, &m, &s);
        for &b in &bs {
            for &d in &ds {
                pairs += 1;
                let fv = match periodic_pair(&words[b], &words[d]) {
                    Some(_) => refined_functor(&words[b], &words[d], &m, &s).unwrap(),
                    None => combine_f(0, &filt[b], &filt[d]).unwrap(),
                };
                let gv = combine_g(0, &filt[b], &filt[d]).unwrap();
                if fv.quotient_dim != gv.quotient_dim {
                    bad.push(format!(
                        "{name}, B = {}, D = {}: dim F = {}, dim G = {}",
                        words[b].to_text(&p),
                        words[d].to_text(&p),
                        fv.quotient_dim,
                        gv.quotient_dim
                    ));
                }
            }
        }
    }

    // counting oracle
    let finite = enumerate_words(&p, 5);
    let (bs5, ds5) = split_by_sign(&finite, &s);
    let mut counted = 0;
    for c in &finite {
        let m = string_module(c, &p).unwrap();
        let filt = filtrations(&finite, &m, &s);
        let mut expected: HashMap<(usize, usize), usize> = HashMap::new();
        let index: HashMap<&Word, usize> = finite.iter().enumerate().map(|(i, w)| (w, i)).collect();
        for i in 0..=c.max_position().unwrap() {
            let b = index[&c.side_word(i, 1, &p, &s).unwrap()];
            let d = index[&c.side_word(i, -1, &p, &s).unwrap()];
            *expected.entry((b, d)).or_default() += 1;
        }
        for &b in &bs5 {
            for &d in &ds5 {
                counted += 1;
                let got = combine_f(0, &filt[b], &filt[d]).unwrap().quotient_dim;
                let want = expected.get(&(b, d)).copied().unwrap_or(0);
                if got != want {
                    bad.push(format!(
                        "C = {}, B = {}, D = {}: dim F = {got}, {want} matching positions",
                        c.to_text(&p),
                        finite[b].to_text(&p),
                        finite[d].to_text(&p)
                    ));
                }
            }
        }
    }
    // spot check of the position count against the library helper
    let c = parse_word("x y- x", &p).unwrap();
    for i in 0..=3 {
        let (b, d) = (c.side_word(i, 1, &p, &s).unwrap(), c.side_word(i, -1, &p, &s).unwrap());
        if matching_positions(&c, &b, &d, &p, &s).unwrap() != 1 {
            bad.push(format!("matching_positions disagrees at position {i}"));
        }
    }

    // periodic pair on the band (1, [λ]) over F₅
    let q5 = StringPresentation { field: Field::prime(5).unwrap(), ..p.clone() };
    let neg = s.negated();
    let band = parse_word("(x y-)^-inf | (x y-)^inf", &q5).unwrap();
    let (b, d) = (parse_word("(y x-)^inf", &q5).unwrap(), parse_word("(x y-)^inf", &q5).unwrap());
    for lambda in 1..=3 {
        let f = q5.field;
        let t = Matrix::from_ints(f, 1, 1, &[lambda]);
        let m = band_module(&band, &t, &q5).unwrap();
        let v = refined_functor(&b, &d, &m, &neg).unwrap();
        if v.t_matrix.as_ref() != Some(&t) {
            bad.push(format!("band (1, [{lambda}]): t_matrix = {:?}", v.t_matrix));
        }
    }
    finish(bad, format!("{pairs} F/G pairs, {counted} counted pairs, 3 band values"))
}

pub fn sigma(_seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for text in [LAMBDA2, TRUNCATED_LOOPS] {
        let (p, s) = fixture(text);
        let verdict = |c: &Word| is_sigma_pure_injective(c, &p, &s).map(|cert| cert.verdict);
        for c in enumerate_words(&p, 4) {
            checked += 1;
            if verdict(&c).ok() != Some(true) {
                bad.push(format!("finite word {} not accepted", c.to_text(&p)));
            }
        }
        let down = parse_word("(x y-)^inf", &p).unwrap();
        let cert = is_sigma_pure_injective(&down, &p, &s).unwrap();
        match cert.verified_chain(&down, 10, &p, &s) {
            Ok(Some(chain)) if !cert.verdict && chain.len() == 11 => {}
            other => bad.push(format!("(x y-)^inf: verdict {}, chain {other:?}", cert.verdict)),
        }
        if verdict(&parse_word("(x- y)^inf", &p).unwrap()).ok() != Some(true) {
            bad.push("(x- y)^inf not accepted".into());
        }
        // inversion and shift
        let blocks = ["x y-", "x- y", "y x-", "y- x", "x y- x- y", "x y x- y-"];
        let cores = ["", "x", "y-", "x y-"];
        let mut infinite = Vec::new();
        for r in blocks {
            for core in cores {
                infinite.push(format!("{core} ({r})^inf"));
                for l in blocks {
                    infinite.push(format!("({l})^-inf | {core} ({r})^inf"));
                }
            }
        }
        for text in infinite {
            let Ok(c) = parse_word(&text, &p) else { continue };
            if c.period().is_some() {
                continue;
            }
            checked += 1;
            let v = verdict(&c);
            let mut variants = vec![("inverse", c.inverse())];
            variants.extend((1..=3).map(|k| ("shift", c.shift(k))));
            for (what, other) in variants {
                if verdict(&other).ok() != v.as_ref().ok().copied() {
                    bad.push(format!("{text}: verdict changes under {what}"));
                }
            }
        }
    }
    finish(bad, format!("{checked} words decided"))
}

pub fn order_laws(_seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut triples = 0u64;
    for text in [LAMBDA2, A1, TRUNCATED_LOOPS] {
        let (p, s) = fixture(text);
        let mut groups: HashMap<(usize, i8), Vec<Word>> = HashMap::new();
        for w in enumerate_words(&p, 6) {
            groups.entry((w.head(&p).unwrap(), w.sign(&s).unwrap())).or_default().push(w);
        }
        let mut keys: Vec<_> = groups.keys().copied().collect();
        keys.sort();
        for key in keys {
            let ws = &groups[&key];
            let n = ws.len();
            let mut cmp = vec![Ordering::Equal; n * n];
            for i in 0..n {
                for j in 0..n {
                    cmp[i * n + j] = ws[i].compare(&ws[j], &p, &s).unwrap();
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let c = cmp[i * n + j];
                    if (i == j) != (c == Ordering::Equal) || c != cmp[j * n + i].reverse() {
                        bad.push(format!("{} vs {}: {c:?}", ws[i].to_text(&p), ws[j].to_text(&p)));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if cmp[i * n + j] != Ordering::Less {
                        continue;
                    }
                    for k in 0..n {
                        triples += 1;
                        if cmp[j * n + k] == Ordering::Less && cmp[i * n + k] != Ordering::Less {
                            bad.push(format!(
                                "{} < {} < {} but not transitive",
                                ws[i].to_text(&p),
                                ws[j].to_text(&p),
                                ws[k].to_text(&p)
                            ));
                        }
                    }
                }
            }
        }
    }
    finish(bad, format!("{triples} ordered triples checked"))
}
