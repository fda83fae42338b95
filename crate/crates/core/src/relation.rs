//! Linear relations `C ⊆ K^t ⊕ K^s` and the sharp/flat calculus of square relations.
//!
//! Graphs store pairs `(output, input)`: `u ∈ Cv` exactly when `(u, v) ∈ C`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::matrix::{dot, unit_vec, vec_add, vec_scale};
use crate::exactla::{Field, LinearSystem, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    target: usize,
    source: usize,
    graph: Subspace,
}

/// The eight subspaces attached to a square relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpFlatData {
    pub sharp: Subspace,
    pub flat: Subspace,
    pub plus: Subspace,
    pub minus: Subspace,
    /// `C' = ⋃ Cⁿ0`.
    pub orbit: Subspace,
    /// `C'' = ⋂ CⁿV`.
    pub stable: Subspace,
    pub co_orbit: Subspace,
    pub co_stable: Subspace,
}

/// `C♯/C♭` as a `K[T, T⁻¹]`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TModule {
    /// Representatives in `C♯` of a basis of the quotient.
    pub basis: Vec<Vector>,
    /// Column `j` holds the coordinates of `T` applied to basis vector `j`.
    pub t_matrix: Matrix,
}

impl TModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl LinearRelation {
    pub fn new(target: usize, source: usize, graph: Subspace) -> Result<Self> {
        if graph.ambient() != target + source {
            return Err(Error::Dimension(format!(
                "graph lives in K^{}, expected K^{}",
                graph.ambient(),
                target + source
            )));
        }
        Ok(Self { target, source, graph })
    }

    /// Relation spanned by `(output, input)` pairs.
    pub fn from_pairs(field: Field, target: usize, source: usize, pairs: &[(Vector, Vector)]) -> Result<Self> {
        let mut rows = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            if u.len() != target || v.len() != source {
                return Err(Error::Dimension("pair has the wrong length".into()));
            }
            let mut r = u.clone();
            r.extend(v.iter().cloned());
            rows.push(r);
        }
        Self::new(target, source, Subspace::span(field, target + source, &rows))
    }

    /// `{(f v, v)}`.
    pub fn graph_of(f: &Matrix) -> Self {
        let field = f.field();
        let (t, s) = f.shape();
        let pairs: Vec<(Vector, Vector)> = (0..s)
            .map(|j| (f.column(j), unit_vec(field, s, j)))
            .collect();
        Self::from_pairs(field, t, s, &pairs).expect("shapes agree")
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::graph_of(&Matrix::identity(field, n))
    }

    pub fn zero(field: Field, target: usize, source: usize) -> Self {
        Self { target, source, graph: Subspace::zero(field, target + source) }
    }

    pub fn complete(field: Field, n: usize) -> Self {
        Self { target: n, source: n, graph: Subspace::full(field, 2 * n) }
    }

    pub fn field(&self) -> Field {
        self.graph.field()
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn is_square(&self) -> bool {
        self.target == self.source
    }

    /// Dimension of the underlying space of a square relation.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "relation is not square");
        self.target
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    /// `(output, input)` basis pairs of the graph.
    pub fn pairs(&self) -> Vec<(Vector, Vector)> {
        self.graph
            .basis_vectors()
            .into_iter()
            .map(|mut r| {
                let v = r.split_off(self.target);
                (r, v)
            })
            .collect()
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{what} needs a square relation")))
        }
    }

    /// `CU`.
    pub fn apply(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient() != self.source {
            return Err(Error::Dimension(format!("apply: subspace of K^{}, relation source K^{}", u.ambient(), self.source)));
        }
        let f = self.field();
        if u.is_full() {
            return Ok(self.graph.project(0..self.target));
        }
        let allowed = Subspace::full(f, self.target).direct_sum(u);
        Ok(self.graph.intersect(&allowed)?.project(0..self.target))
    }

    /// `C0`.
    pub fn zero_image(&self) -> Subspace {
        self.apply(&Subspace::zero(self.field(), self.source)).expect("dimensions agree")
    }

    /// `CV`.
    pub fn full_image(&self) -> Subspace {
        self.graph.project(0..self.target)
    }

    pub fn inverse(&self) -> LinearRelation {
        let coords: Vec<usize> = (self.target..self.target + self.source).chain(0..self.target).collect();
        LinearRelation { target: self.source, source: self.target, graph: self.graph.select(&coords) }
    }

    /// `C ∘ D`: `u ∈ CDv` iff `u ∈ Cw` and `w ∈ Dv` for some `w`.
    pub fn compose(&self, d: &LinearRelation) -> Result<LinearRelation> {
        if self.source != d.target {
            return Err(Error::Dimension(format!(
                "compose: source K^{} does not match target K^{}",
                self.source, d.target
            )));
        }
        let f = self.field();
        let (t, m, s) = (self.target, self.source, d.source);
        let a = self.graph.direct_sum(&Subspace::full(f, s));
        let b = Subspace::full(f, t).direct_sum(&d.graph);
        let meet = a.intersect(&b)?;
        let coords: Vec<usize> = (0..t).chain(t + m..t + m + s).collect();
        LinearRelation::new(t, s, meet.select(&coords))
    }

    /// `C ∩ (U ⊕ U)` in ambient coordinates.
    pub fn restricted_graph(&self, u: &Subspace) -> Result<Subspace> {
        self.require_square("restrict")?;
        self.graph.intersect(&u.direct_sum(u))
    }

    /// `C|_U` written in the RREF basis of `U`.
    pub fn restrict(&self, u: &Subspace) -> Result<LinearRelation> {
        if u.ambient() != self.target {
            return Err(Error::Dimension("restrict: subspace lives in the wrong space".into()));
        }
        let g = self.restricted_graph(u)?;
        let k = u.dim();
        let pairs: Vec<(Vector, Vector)> = g
            .basis_vectors()
            .into_iter()
            .map(|mut r| {
                let v = r.split_off(self.target);
                (u.coordinates(&r).expect("in U"), u.coordinates(&v).expect("in U"))
            })
            .collect();
        LinearRelation::from_pairs(self.field(), k, k, &pairs)
    }

    /// The relation induced on `V/U` (coordinates from [`Subspace::quotient_map`]).
    pub fn quotient(&self, u: &Subspace) -> Result<(LinearRelation, Matrix)> {
        self.require_square("quotient")?;
        let f = self.field();
        let (q, _) = u.quotient_map(&Subspace::full(f, self.target))?;
        let k = q.rows();
        let pairs: Vec<(Vector, Vector)> = self.pairs().iter().map(|(a, b)| (q.mul_vec(a), q.mul_vec(b))).collect();
        Ok((LinearRelation::from_pairs(f, k, k, &pairs)?, q))
    }

    /// `⋃ Cⁿ0`.
    pub fn orbit(&self) -> Subspace {
        let mut x = Subspace::zero(self.field(), self.dim());
        loop {
            let next = self.apply(&x).expect("square");
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// `⋂ CⁿV`.
    pub fn stable(&self) -> Subspace {
        let mut x = Subspace::full(self.field(), self.dim());
        loop {
            let next = self.apply(&x).expect("square");
            if next == x {
                return x;
            }
            x = next;
        }
    }

    pub fn sharp_flat(&self) -> SharpFlatData {
        let inv = self.inverse();
        let orbit = self.orbit();
        let stable = self.stable();
        let co_orbit = inv.orbit();
        let co_stable = inv.stable();
        let sharp = stable.intersect(&co_stable).unwrap();
        let plus = stable.intersect(&co_orbit).unwrap();
        let minus = co_stable.intersect(&orbit).unwrap();
        let flat = plus.sum(&minus).unwrap();
        SharpFlatData { sharp, flat, plus, minus, orbit, stable, co_orbit, co_stable }
    }

    pub fn sharp(&self) -> Subspace {
        self.sharp_flat().sharp
    }

    pub fn flat(&self) -> Subspace {
        self.sharp_flat().flat
    }

    /// Both projections of the graph are isomorphisms onto the space.
    pub fn is_automorphic(&self) -> bool {
        self.is_square()
            && self.graph.dim() == self.target
            && self.zero_image().is_zero()
            && self.inverse().zero_image().is_zero()
    }

    /// Some `u` with `(u, v) ∈ C`.
    pub fn some_output(&self, v: &[Scalar]) -> Option<Vector> {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return v.iter().all(Scalar::is_zero).then(|| vec![self.field().zero(); self.target]);
        }
        let inputs = Matrix::from_columns(self.field(), self.source, &pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
        let beta = inputs.solve(v)?;
        let outputs = Matrix::from_columns(self.field(), self.target, &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
        Some(outputs.mul_vec(&beta))
    }

    /// The automorphism `T` of `C♯/C♭`, with `T(C♭+v) = C♭+w` for `w ∈ C♯ ∩ (C♭ + Cv)`.
    pub fn induced_t(&self) -> Result<TModule> {
        self.require_square("induced_t")?;
        let data = self.sharp_flat();
        self.induced_t_with(&data)
    }

    pub fn induced_t_with(&self, data: &SharpFlatData) -> Result<TModule> {
        let f = self.field();
        let (q, reps) = data.flat.quotient_map(&data.sharp)?;
        let k = reps.len();
        let slack = data.flat.sum(&self.zero_image())?;
        if data.sharp.intersect(&slack)? != data.flat {
            return Err(Error::Internal("C♯ ∩ (C♭ + C0) differs from C♭".into()));
        }
        let ann = data.sharp.annihilator();
        let slack_basis = slack.basis_vectors();
        let mut cols = Vec::with_capacity(k);
        for w in &reps {
            let u0 = self
                .some_output(w)
                .ok_or_else(|| Error::Internal("a vector of C♯ has empty image".into()))?;
            // u0 + Σ a_k s_k ∈ C♯
            let mut sys = LinearSystem::new(f);
            let a = sys.matrix_unknown(slack_basis.len(), 1);
            for row in ann.basis_vectors() {
                let terms: Vec<(usize, Scalar)> = slack_basis
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (a.at(i, 0), dot(&row, s, f)))
                    .collect();
                sys.add_equation(&terms, -dot(&row, &u0, f));
            }
            let sol = sys
                .solve()
                .ok_or_else(|| Error::Internal("C♯ ∩ (C♭ + Cv) is empty".into()))?;
            let mut u = u0;
            for (i, s) in slack_basis.iter().enumerate() {
                u = vec_add(&u, &vec_scale(s, &sol[i]));
            }
            cols.push(q.mul_vec(&u));
        }
        let t_matrix = Matrix::from_columns(f, k, &cols);
        if !t_matrix.is_invertible() {
            return Err(Error::Internal("induced action is not invertible".into()));
        }
        Ok(TModule { basis: reps, t_matrix })
    }

    /// A subspace `U` with `C♯ = C♭ ⊕ U` and `C|_U` automorphic.
    pub fn split(&self) -> Result<Subspace> {
        self.require_square("split")?;
        let f = self.field();
        let n = self.dim();
        let data = self.sharp_flat();
        let tm = self.induced_t_with(&data)?;
        let k = tm.dim();
        if k == 0 {
            return Ok(Subspace::zero(f, n));
        }
        let flat = data.flat.basis_vectors();
        let d = flat.len();
        let ann = self.graph.annihilator().basis_vectors();
        // u_j = w_j + Σ_l g[j][l] φ_l and (Σ_i T_ij u_i, u_j) ∈ C for every j.
        let mut sys = LinearSystem::new(f);
        let g = sys.matrix_unknown(k, d.max(1));
        let t = &tm.t_matrix;
        for j in 0..k {
            let mut out_const = vec![f.zero(); n];
            for i in 0..k {
                out_const = vec_add(&out_const, &vec_scale(&tm.basis[i], &t[(i, j)]));
            }
            for row in &ann {
                let (ro, ri) = row.split_at(n);
                let rhs = -(dot(ro, &out_const, f) + dot(ri, &tm.basis[j], f));
                let mut terms = Vec::new();
                for l in 0..d {
                    let phi_o = dot(ro, &flat[l], f);
                    let phi_i = dot(ri, &flat[l], f);
                    for i in 0..k {
                        terms.push((g.at(i, l), &t[(i, j)] * &phi_o));
                    }
                    terms.push((g.at(j, l), phi_i));
                }
                sys.add_equation(&terms, rhs);
            }
        }
        let sol = sys
            .solve()
            .ok_or_else(|| Error::Internal("no C-invariant lift of C♯/C♭ exists".into()))?;
        let lifted: Vec<Vector> = (0..k)
            .map(|j| {
                let mut u = tm.basis[j].clone();
                for (l, phi) in flat.iter().enumerate() {
                    u = vec_add(&u, &vec_scale(phi, &sol[g.at(j, l)]));
                }
                u
            })
            .collect();
        let u = Subspace::span(f, n, &lifted);
        if u.dim() != k || data.flat.sum(&u)? != data.sharp || !self.restrict(&u)?.is_automorphic() {
            return Err(Error::Internal("split postconditions failed".into()));
        }
        Ok(u)
    }

    /// A morphism of relations `r: (V, C) → (U, C|_U)` with `r|_U = id`, written
    /// as a `dim U × dim V` matrix in the RREF basis of `U`.
    pub fn find_retraction(&self, u: &Subspace) -> Result<Option<Matrix>> {
        self.require_square("find_retraction")?;
        let f = self.field();
        let n = self.dim();
        let k = u.dim();
        let restricted = self.restrict(u)?;
        let ann = restricted.graph().annihilator().basis_vectors();
        let mut sys = LinearSystem::new(f);
        let r = sys.matrix_unknown(k, n);
        for (a, b) in self.pairs() {
            for row in &ann {
                let (ro, ri) = row.split_at(k);
                let mut terms = Vec::new();
                for i in 0..k {
                    for c in 0..n {
                        terms.push((r.at(i, c), &ro[i] * &a[c]));
                        terms.push((r.at(i, c), &ri[i] * &b[c]));
                    }
                }
                sys.add_equation(&terms, f.zero());
            }
        }
        for (j, bj) in u.basis_vectors().iter().enumerate() {
            for i in 0..k {
                let terms: Vec<(usize, Scalar)> = (0..n).map(|c| (r.at(i, c), bj[c].clone())).collect();
                sys.add_equation(&terms, if i == j { f.one() } else { f.zero() });
            }
        }
        Ok(sys.solve().map(|s| r.extract(f, &s)))
    }

    /// Does the linear map `phi: V → W` send this relation into `other`?
    pub fn is_morphism_to(&self, phi: &Matrix, other: &LinearRelation) -> bool {
        self.pairs().iter().all(|(a, b)| {
            let mut r = phi.mul_vec(a);
            r.extend(phi.mul_vec(b));
            other.graph.contains(&r)
        })
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field())?;
        if self.is_square() {
            writeln!(f, "dim {}", self.target)?;
        } else {
            writeln!(f, "dims {} {}", self.target, self.source)?;
        }
        for (a, b) in self.pairs() {
            writeln!(f, "pair {} {}", fmt_vec(&a), fmt_vec(&b))?;
        }
        Ok(())
    }
}

fn parse_vector(field: Field, text: &str, n: usize, line: usize) -> Result<Vector> {
    let entries: Vec<&str> = if text.is_empty() { Vec::new() } else { text.split(',').collect() };
    if entries.len() != n {
        return Err(Error::Parse { line, message: format!("vector `{text}` should have {n} entries") });
    }
    entries
        .iter()
        .map(|e| field.parse_scalar(e.trim()).map_err(|e| Error::Parse { line, message: e.to_string() }))
        .collect()
}

/// Parses `field ...`, `dim <n>` (or `dims <target> <source>`) and
/// `pair <output> <input>` lines with comma-separated entries.
pub fn parse_relation(text: &str) -> Result<LinearRelation> {
    let mut field = Field::Rational;
    let mut dims: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let perr = |m: &str| Error::Parse { line, message: m.to_string() };
        match toks[0] {
            "field" => {
                if dims.is_some() {
                    return Err(perr("`field` must precede `dim`"));
                }
                field = crate::presentation::parse_field_tokens(&toks[1..]).map_err(|e| perr(&e.to_string()))?;
            }
            "dim" if toks.len() == 2 => {
                let d = toks[1].parse().map_err(|_| perr("bad dimension"))?;
                dims = Some((d, d));
            }
            "dims" if toks.len() == 3 => {
                let t = toks[1].parse().map_err(|_| perr("bad dimension"))?;
                let s = toks[2].parse().map_err(|_| perr("bad dimension"))?;
                dims = Some((t, s));
            }
            "pair" if toks.len() == 3 || toks.len() == 1 => {
                let (t, s) = dims.ok_or_else(|| perr("`pair` before `dim`"))?;
                let (a, b) = if toks.len() == 3 { (toks[1], toks[2]) } else { ("", "") };
                pairs.push((parse_vector(field, a, t, line)?, parse_vector(field, b, s, line)?));
            }
            other => return Err(perr(&format!("unexpected line starting with `{other}`"))),
        }
    }
    let (t, s) = dims.ok_or(Error::Parse { line: 0, message: "missing `dim`".into() })?;
    LinearRelation::from_pairs(field, t, s, &pairs)
}
