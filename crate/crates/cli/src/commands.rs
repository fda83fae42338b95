use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use strelkit_core::filtration::{combine_f, periodic_pair};
use strelkit_core::words::{enumerate_words, Shape};
use strelkit_core::{
    band_module, filtration, g_functor, is_finite_dimensional, is_sigma_pure_injective, parse_representation,
    parse_word, parse_word_unchecked, refined_functor, string_module, KroneckerModule, LinearRelation, Matrix,
    Representation, SignTable, StringPresentation, Subspace, Word,
};

use crate::load;
use crate::report::Report;

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn subspace_json(s: &Subspace) -> Value {
    let basis: Vec<Vec<String>> = s.basis_vectors().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    json!({ "dim": s.dim(), "ambient": s.ambient(), "basis": basis })
}

fn shape_name(w: &Word) -> &'static str {
    match w.shape() {
        Shape::Trivial => "trivial",
        Shape::Finite => "finite",
        Shape::Nat => "N",
        Shape::NegNat => "-N",
        Shape::Int => "Z",
    }
}

fn signs(p: &StringPresentation) -> Result<SignTable> {
    p.assign_signs().context("the presentation admits no sign table")
}

fn word(p: &StringPresentation, text: &str) -> Result<Word> {
    parse_word(text, p).with_context(|| format!("word `{text}`"))
}

pub fn validate(file: &str) -> Result<Report> {
    let p = load::presentation(file)?;
    let rep = p.validate();
    let fd = is_finite_dimensional(&p);
    let mut text = String::new();
    let ok = rep.is_string_algebra();
    writeln!(text, "string algebra: {}", if ok { "yes" } else { "no" })?;
    for v in &rep.violations {
        writeln!(text, "  {v}")?;
    }
    writeln!(text, "finite dimensional: {}", if fd { "yes" } else { "no" })?;
    let mut sign_json = serde_json::Map::new();
    if ok {
        let s = signs(&p)?;
        writeln!(text, "signs:")?;
        for (l, e) in s.entries() {
            writeln!(text, "  {} {e:+}", p.letter_name(l))?;
            sign_json.insert(p.letter_name(l), json!(e));
        }
    }
    let js = json!({
        "string_algebra": ok,
        "violations": rep.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "finite_dimensional": fd,
        "signs": sign_json,
    });
    Ok(Report::new(text, js).with_code(if ok { 0 } else { 1 }))
}

pub fn word_check(p: &StringPresentation, text: &str) -> Result<Report> {
    let w = parse_word_unchecked(text, p).with_context(|| format!("word `{text}`"))?;
    let vs = w.violations(p);
    let mut out = String::new();
    if vs.is_empty() {
        writeln!(out, "valid {} word: {}", shape_name(&w), w.to_text(p))?;
        if let Some(n) = w.len() {
            writeln!(out, "length {n}")?;
        }
    } else {
        writeln!(out, "invalid word")?;
        for v in &vs {
            writeln!(out, "  {:?} at {}: {}", v.condition, v.index, v.detail)?;
        }
    }
    let js = json!({
        "valid": vs.is_empty(),
        "word": w.to_text(p),
        "shape": shape_name(&w),
        "length": w.len(),
        "violations": vs.iter().map(|v| json!({
            "condition": format!("{:?}", v.condition),
            "index": v.index,
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(out, js).with_code(if vs.is_empty() { 0 } else { 1 }))
}

pub fn word_inverse(p: &StringPresentation, text: &str) -> Result<Report> {
    let inv = word(p, text)?.inverse().to_text(p);
    Ok(Report::new(inv.clone(), json!({ "inverse": inv })))
}

pub fn word_compare(p: &StringPresentation, a: &str, b: &str) -> Result<Report> {
    let s = signs(p)?;
    let (wa, wb) = (word(p, a)?, word(p, b)?);
    let ord = wa.compare(&wb, p, &s)?;
    let (sym, name) = match ord {
        Ordering::Less => ("<", "less"),
        Ordering::Equal => ("=", "equal"),
        Ordering::Greater => (">", "greater"),
    };
    let text = format!("{} {sym} {}", wa.to_text(p), wb.to_text(p));
    Ok(Report::new(text, json!({ "order": name })))
}

pub fn word_slice(p: &StringPresentation, text: &str, i: i64) -> Result<Report> {
    let s = signs(p)?;
    let w = word(p, text)?;
    let (le, gt) = w.slice(i, p, &s)?;
    let plus = w.side_word(i, 1, p, &s)?;
    let minus = w.side_word(i, -1, p, &s)?;
    let v = p.vertex_name(w.vertex(i, p)).to_string();
    let mut out = String::new();
    writeln!(out, "vertex {v}")?;
    writeln!(out, "C_{{<={i}}} = {}", le.to_text(p))?;
    writeln!(out, "C_{{>{i}}} = {}", gt.to_text(p))?;
    writeln!(out, "C({i},+1) = {}", plus.to_text(p))?;
    writeln!(out, "C({i},-1) = {}", minus.to_text(p))?;
    let js = json!({
        "vertex": v,
        "prefix": le.to_text(p),
        "suffix": gt.to_text(p),
        "side_plus": plus.to_text(p),
        "side_minus": minus.to_text(p),
    });
    Ok(Report::new(out, js))
}

pub fn word_shift(p: &StringPresentation, text: &str, n: i64) -> Result<Report> {
    let w = word(p, text)?.shift(n).to_text(p);
    Ok(Report::new(w.clone(), json!({ "shifted": w })))
}

pub fn word_periodic(p: &StringPresentation, text: &str) -> Result<Report> {
    let w = word(p, text)?;
    let period = w.period();
    let out = match period {
        Some(q) => format!("periodic with period {q}"),
        None => "not periodic".to_string(),
    };
    Ok(Report::new(out, json!({ "periodic": period.is_some(), "period": period })))
}

pub fn rel_sharpflat(c: &LinearRelation) -> Result<Report> {
    if !c.is_square() {
        bail!("sharp and flat need a relation on a single space");
    }
    let d = c.sharp_flat();
    let items = [
        ("sharp", &d.sharp),
        ("flat", &d.flat),
        ("plus", &d.plus),
        ("minus", &d.minus),
        ("orbit", &d.orbit),
        ("stable", &d.stable),
        ("co_orbit", &d.co_orbit),
        ("co_stable", &d.co_stable),
    ];
    let mut out = String::new();
    let mut js = serde_json::Map::new();
    for (name, s) in items {
        writeln!(out, "{name:<9} dim {}  {s}", s.dim())?;
        js.insert(name.to_string(), subspace_json(s));
    }
    writeln!(out, "automorphic: {}", c.is_automorphic())?;
    js.insert("automorphic".into(), json!(c.is_automorphic()));
    Ok(Report::new(out, Value::Object(js)))
}

pub fn rel_split(c: &LinearRelation) -> Result<Report> {
    let u = c.split()?;
    let out = format!("U: dim {}  {u}\n", u.dim());
    Ok(Report::new(out, json!({ "u": subspace_json(&u) })))
}

pub fn rel_taction(c: &LinearRelation) -> Result<Report> {
    let t = c.induced_t()?;
    let mut out = format!("dim C#/Cb = {}\n", t.dim());
    for (j, b) in t.basis.iter().enumerate() {
        writeln!(out, "basis {j}: ({})", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))?;
    }
    write!(out, "T:\n{}", t.t_matrix)?;
    let basis: Vec<Vec<String>> = t.basis.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    Ok(Report::new(out, json!({ "dim": t.dim(), "basis": basis, "t_matrix": matrix_json(&t.t_matrix) })))
}

pub fn kron_decompose(m: &KroneckerModule) -> Result<Report> {
    let dec = m.decompose()?;
    let mut out = format!("{dec}\n");
    write!(out, "base change X:\n{}base change Y:\n{}", dec.bx, dec.by)?;
    let js = json!({
        "blocks": dec.blocks.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "bx": matrix_json(&dec.bx),
        "by": matrix_json(&dec.by),
    });
    Ok(Report::new(out, js))
}

fn representation_json(m: &Representation) -> Value {
    let p = m.presentation();
    let vertices: Vec<Value> = (0..p.quiver.vertices.len())
        .map(|v| json!({ "name": p.vertex_name(v), "dim": m.dim_at(v), "basis": m.labels(v) }))
        .collect();
    let arrows: Vec<Value> = p
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| json!({ "name": arr.name, "matrix": matrix_json(m.map(a)) }))
        .collect();
    json!({ "field": p.field.to_string(), "vertices": vertices, "arrows": arrows })
}

pub fn module_string(p: &StringPresentation, text: &str) -> Result<Report> {
    let m = string_module(&word(p, text)?, p)?;
    Ok(Report::new(m.to_string(), representation_json(&m)))
}

pub fn module_band(p: &StringPresentation, text: &str, t_file: &str) -> Result<Report> {
    let t = load::matrix(t_file, p.field)?;
    let m = band_module(&word(p, text)?, &t, p)?;
    Ok(Report::new(m.to_string(), representation_json(&m)))
}

pub fn functor(p: &StringPresentation, g: bool, b: &str, d: &str, module: &str, negate: bool) -> Result<Report> {
    let s = if negate { signs(p)?.negated() } else { signs(p)? };
    let m = parse_representation(&load::read(module)?, p).with_context(|| format!("in module file {module}"))?;
    let (wb, wd) = (word(p, b)?, word(p, d)?);
    let v = if g {
        g_functor(&wb, &wd, &m, &s)?
    } else if periodic_pair(&wb, &wd).is_some() {
        refined_functor(&wb, &wd, &m, &s)?
    } else {
        combine_f(0, &filtration(&wb, &m, &s)?, &filtration(&wd, &m, &s)?).map(|mut val| {
            val.vertex = wb.head(p).unwrap();
            val
        })?
    };
    let mut out = String::new();
    writeln!(out, "vertex {}", p.vertex_name(v.vertex))?;
    writeln!(out, "plus  dim {}  {}", v.plus.dim(), v.plus)?;
    writeln!(out, "minus dim {}  {}", v.minus.dim(), v.minus)?;
    writeln!(out, "quotient dim {}", v.quotient_dim)?;
    if let Some(t) = &v.t_matrix {
        write!(out, "T:\n{t}")?;
    }
    let js = json!({
        "vertex": p.vertex_name(v.vertex),
        "plus": subspace_json(&v.plus),
        "minus": subspace_json(&v.minus),
        "quotient_dim": v.quotient_dim,
        "t_matrix": v.t_matrix.as_ref().map(matrix_json),
    });
    Ok(Report::new(out, js))
}

const UNROLL: usize = 10;

pub fn sigma(p: &StringPresentation, text: &str, certificate: bool) -> Result<Report> {
    let s = signs(p)?;
    let c = word(p, text)?;
    let cert = is_sigma_pure_injective(&c, p, &s)?;
    let formal = !is_finite_dimensional(p);
    let mut out = format!(
        "M({}) is {}Σ-pure-injective{}\n",
        c.to_text(p),
        if cert.verdict { "" } else { "not " },
        if formal { " (criterion applied formally)" } else { "" }
    );
    let mut chain_json = Value::Null;
    if certificate {
        if cert.families.is_empty() {
            writeln!(out, "finitely many side words")?;
        }
        for f in &cert.families {
            writeln!(out, "family: {f}")?;
        }
        if let Some(chain) = cert.verified_chain(&c, UNROLL, p, &s)? {
            writeln!(out, "descending chain:")?;
            for w in &chain {
                writeln!(out, "  {}", w.to_text(p))?;
            }
            chain_json = json!(chain.iter().map(|w| w.to_text(p)).collect::<Vec<_>>());
        }
    }
    let js = json!({
        "word": c.to_text(p),
        "sigma_pure_injective": cert.verdict,
        "applied_formally": formal,
        "families": cert.families.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "descending_chain": chain_json,
    });
    let mut r = Report::new(out, js).with_code(if cert.verdict { 0 } else { 1 });
    if formal {
        r = r.warn("the algebra is infinite dimensional; criterion applied formally");
    }
    Ok(r)
}

pub fn enumerate(p: &StringPresentation, max_len: usize) -> Result<Report> {
    let mut seen = HashSet::new();
    let mut out = String::new();
    let mut rows = Vec::new();
    for w in enumerate_words(p, max_len) {
        if !w.is_trivial() && seen.contains(&w.inverse()) {
            continue;
        }
        seen.insert(w.clone());
        let m = string_module(&w, p)?;
        let indec = m.is_indecomposable().ok();
        let verdict = match indec {
            Some(true) => "yes",
            Some(false) => "no",
            None => "undecided",
        };
        writeln!(out, "{:<24} dim {:<3} indecomposable {verdict}", w.to_text(p), m.total_dim())?;
        rows.push(json!({ "word": w.to_text(p), "dim": m.total_dim(), "indecomposable": indec }));
    }
    writeln!(out, "{} words", rows.len())?;
    Ok(Report::new(out, json!({ "count": rows.len(), "words": rows })))
}
