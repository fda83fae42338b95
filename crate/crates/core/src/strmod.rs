//! Finite-dimensional representations of a string algebra, the string modules
//! `M(C)` of finite words and the band modules `M(C, V)` of periodic words.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, LinearSystem, Matrix, MatrixAlgebra, Vector};
use crate::presentation::{Letter, StringPresentation};
use crate::words::Word;

/// One vector space per vertex and one matrix per arrow, `dim(head) × dim(tail)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    presentation: StringPresentation,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    labels: Vec<Vec<String>>,
}

/// Per-vertex linear maps between two representations.
pub type Morphism = Vec<Matrix>;

fn default_labels(dims: &[usize]) -> Vec<Vec<String>> {
    dims.iter().map(|&d| (0..d).map(|k| format!("e{k}")).collect()).collect()
}

impl Representation {
    pub fn new(presentation: &StringPresentation, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = &presentation.quiver;
        if dims.len() != q.vertices.len() || maps.len() != q.arrows.len() {
            return Err(Error::Dimension("one dimension per vertex and one matrix per arrow".into()));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            m.check_shape(dims[a.head], dims[a.tail], &format!("arrow {}", a.name))?;
            if m.field() != presentation.field {
                return Err(Error::Dimension(format!("arrow {} is over the wrong field", a.name)));
            }
        }
        let labels = default_labels(&dims);
        Ok(Self { presentation: presentation.clone(), dims, maps, labels })
    }

    pub fn zero(presentation: &StringPresentation) -> Self {
        let dims = vec![0; presentation.quiver.vertices.len()];
        let f = presentation.field;
        let maps = presentation.quiver.arrows.iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Self { presentation: presentation.clone(), labels: default_labels(&dims), dims, maps }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        assert!(labels.iter().zip(&self.dims).all(|(l, &d)| l.len() == d));
        self.labels = labels;
        self
    }

    pub fn presentation(&self) -> &StringPresentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn labels(&self, v: usize) -> &[String] {
        &self.labels[v]
    }

    /// The matrix of a letter as a relation's data: the arrow's map for a direct
    /// letter; inverse letters have no matrix.
    pub fn letter_map(&self, l: Letter) -> Option<&Matrix> {
        (!l.inverse).then(|| &self.maps[l.arrow])
    }

    /// Product of the arrow maps along a path written left to right, last arrow first.
    pub fn path_map(&self, path: &[usize]) -> Matrix {
        let f = self.field();
        let start = self.presentation.arrow(*path.last().expect("empty path")).tail;
        path.iter().rev().fold(Matrix::identity(f, self.dims[start]), |acc, &a| self.maps[a].mul(&acc))
    }

    pub fn annihilated_by_rho(&self) -> bool {
        self.presentation.rho.iter().all(|r| self.path_map(r).is_zero())
    }

    pub fn direct_sum(parts: &[Representation]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Dimension("empty direct sum".into()))?;
        if parts.iter().any(|m| m.presentation != first.presentation) {
            return Err(Error::Dimension("summands over different presentations".into()));
        }
        let p = &first.presentation;
        let f = p.field;
        let nv = p.quiver.vertices.len();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..p.quiver.arrows.len())
            .map(|a| Matrix::block_diag(f, &parts.iter().map(|m| m.maps[a].clone()).collect::<Vec<_>>()))
            .collect();
        let labels = (0..nv)
            .map(|v| {
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(s, m)| m.labels[v].iter().map(move |l| format!("{l}#{s}")))
                    .collect()
            })
            .collect();
        Ok(Self { presentation: p.clone(), dims, maps, labels })
    }

    /// Block-diagonal matrix on the concatenated vertex spaces.
    pub fn total_matrix(&self, f: &[Matrix]) -> Matrix {
        Matrix::block_diag(self.field(), f)
    }

    /// A basis of `Hom(self, other)`.
    pub fn hom_space(&self, other: &Representation) -> Vec<Morphism> {
        let f = self.field();
        let mut sys = LinearSystem::new(f);
        let unknowns: Vec<_> = (0..self.dims.len()).map(|v| sys.matrix_unknown(other.dims[v], self.dims[v])).collect();
        for (a, arrow) in self.presentation.quiver.arrows.iter().enumerate() {
            let (u, v) = (arrow.tail, arrow.head);
            let (mm, nm) = (&self.maps[a], &other.maps[a]);
            // N_a F_u = F_v M_a
            for i in 0..other.dims[v] {
                for j in 0..self.dims[u] {
                    let mut terms = Vec::new();
                    for k in 0..other.dims[u] {
                        terms.push((unknowns[u].at(k, j), nm[(i, k)].clone()));
                    }
                    for k in 0..self.dims[v] {
                        terms.push((unknowns[v].at(i, k), -&mm[(k, j)]));
                    }
                    sys.add_equation(&terms, f.zero());
                }
            }
        }
        sys.nullspace().iter().map(|s| unknowns.iter().map(|u| u.extract(f, s)).collect()).collect()
    }

    pub fn is_morphism_to(&self, map: &[Matrix], other: &Representation) -> bool {
        map.len() == self.dims.len()
            && map.iter().enumerate().all(|(v, m)| m.shape() == (other.dims[v], self.dims[v]))
            && self.presentation.quiver.arrows.iter().enumerate().all(|(a, arrow)| {
                other.maps[a].mul(&map[arrow.tail]) == map[arrow.head].mul(&self.maps[a])
            })
    }

    pub fn is_isomorphism_to(&self, map: &[Matrix], other: &Representation) -> bool {
        self.is_morphism_to(map, other) && map.iter().all(Matrix::is_invertible)
    }

    /// `End(M)` as an algebra of block-diagonal matrices.
    pub fn endomorphism_algebra(&self) -> MatrixAlgebra {
        let basis: Vec<Matrix> = self.hom_space(self).iter().map(|m| self.total_matrix(m)).collect();
        MatrixAlgebra::new(self.field(), self.total_dim(), &basis)
    }

    /// Indecomposable iff the endomorphism algebra is local.
    pub fn is_indecomposable(&self) -> Result<bool> {
        self.endomorphism_algebra().is_local()
    }
}

fn check_word(c: &Word, p: &StringPresentation) -> Result<()> {
    c.check(p)
}

/// `(vertex, index within the vertex space)` for each position of a finite word.
pub fn position_slots(c: &Word, p: &StringPresentation) -> Result<Vec<(usize, usize)>> {
    if !c.is_finite() {
        return Err(Error::Unsupported("string modules of infinite words are not materialised".into()));
    }
    let n = c.max_position().unwrap();
    let mut counts = vec![0usize; p.quiver.vertices.len()];
    Ok((0..=n)
        .map(|i| {
            let v = c.vertex(i, p);
            counts[v] += 1;
            (v, counts[v] - 1)
        })
        .collect())
}

/// `M(C)` for a finite word, with basis `b_0, ..., b_n` distributed over the vertices.
pub fn string_module(c: &Word, p: &StringPresentation) -> Result<Representation> {
    check_word(c, p)?;
    let slots = position_slots(c, p)?;
    let f = p.field;
    let nv = p.quiver.vertices.len();
    let mut dims = vec![0usize; nv];
    let mut labels = vec![Vec::new(); nv];
    for (i, &(v, _)) in slots.iter().enumerate() {
        dims[v] += 1;
        labels[v].push(format!("b{i}"));
    }
    let mut maps: Vec<Matrix> = p.quiver.arrows.iter().map(|a| Matrix::zeros(f, dims[a.head], dims[a.tail])).collect();
    let n = slots.len() as i64 - 1;
    for i in 0..=n {
        let (_, col) = slots[i as usize];
        if let Some(l) = c.letter(i).filter(|l| !l.inverse) {
            let (_, row) = slots[(i - 1) as usize];
            maps[l.arrow][(row, col)] = f.one();
        }
        if let Some(l) = c.letter(i + 1).filter(|l| l.inverse) {
            let (_, row) = slots[(i + 1) as usize];
            maps[l.arrow][(row, col)] = f.one();
        }
    }
    Ok(Representation::new(p, dims, maps)?.with_labels(labels))
}

/// `M(C, V)` for a periodic word of period `q` and `V = (K^d, T)`, with basis
/// `b_i ⊗ e_k` for positions `1 ≤ i ≤ q`, ordered by `k` then `i`, and
/// `b_{i-q} = T b_i` across the period boundary.
pub fn band_module(c: &Word, t: &Matrix, p: &StringPresentation) -> Result<Representation> {
    check_word(c, p)?;
    let q = c.period().ok_or_else(|| Error::Word("band modules need a periodic word".into()))? as i64;
    if !t.is_square() || t.field() != p.field {
        return Err(Error::Dimension("T must be a square matrix over the algebra's field".into()));
    }
    let t_inv = t.inverse().ok_or_else(|| Error::Dimension("T must be invertible".into()))?;
    let f = p.field;
    let d = t.rows();
    let nv = p.quiver.vertices.len();
    let mut dims = vec![0usize; nv];
    let mut labels = vec![Vec::new(); nv];
    let mut slot = vec![vec![0usize; d]; q as usize + 1];
    for k in 0..d {
        for i in 1..=q {
            let v = c.vertex(i, p);
            slot[i as usize][k] = dims[v];
            dims[v] += 1;
            labels[v].push(format!("b{i}⊗e{k}"));
        }
    }
    let mut maps: Vec<Matrix> = p.quiver.arrows.iter().map(|a| Matrix::zeros(f, dims[a.head], dims[a.tail])).collect();
    for i in 1..=q {
        for k in 0..d {
            let col = slot[i as usize][k];
            // x b_i = b_{i-1} when C_i = x, and b_{i+1} when C_{i+1} = x^-1
            let moves = [(c.letter(i).filter(|l| !l.inverse), i - 1), (c.letter(i + 1).filter(|l| l.inverse), i + 1)];
            for (letter, target) in moves {
                let Some(l) = letter else { continue };
                let m = &mut maps[l.arrow];
                if target == 0 {
                    for r in 0..d {
                        m[(slot[q as usize][r], col)] = t[(r, k)].clone();
                    }
                } else if target == q + 1 {
                    for r in 0..d {
                        m[(slot[1][r], col)] = t_inv[(r, k)].clone();
                    }
                } else {
                    m[(slot[target as usize][k], col)] = f.one();
                }
            }
        }
    }
    Ok(Representation::new(p, dims, maps)?.with_labels(labels))
}

/// The isomorphism `M(C) → M(C^-1)`, `b_i ↦ b_{n-i}`.
pub fn reversal_isomorphism(c: &Word, p: &StringPresentation) -> Result<Morphism> {
    let f = p.field;
    let from = position_slots(c, p)?;
    let to = position_slots(&c.inverse(), p)?;
    let mut dims = vec![0usize; p.quiver.vertices.len()];
    for &(v, _) in &from {
        dims[v] += 1;
    }
    let mut maps: Vec<Matrix> = dims.iter().map(|&d| Matrix::zeros(f, d, d)).collect();
    let n = from.len() - 1;
    for (i, &(v, col)) in from.iter().enumerate() {
        let (w, row) = to[n - i];
        debug_assert_eq!(v, w);
        maps[v][(row, col)] = f.one();
    }
    Ok(maps)
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.presentation;
        writeln!(f, "field {}", p.field)?;
        for (v, name) in p.quiver.vertices.iter().enumerate() {
            writeln!(f, "dim {name} {}", self.dims[v])?;
            if self.dims[v] > 0 {
                writeln!(f, "basis {name} {}", self.labels[v].join(" "))?;
            }
        }
        for (a, arrow) in p.quiver.arrows.iter().enumerate() {
            writeln!(f, "arrow {}", arrow.name)?;
            let m = &self.maps[a];
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses the format written by `Display`: `dim <vertex> <n>`, optional
/// `basis <vertex> <labels>`, then `arrow <name>` followed by `dim(head)` rows.
/// Arrows that are not listed act by zero.
pub fn parse_representation(text: &str, p: &StringPresentation) -> Result<Representation> {
    let f = p.field;
    let q = &p.quiver;
    let mut dims: Vec<Option<usize>> = vec![None; q.vertices.len()];
    let mut labels: Vec<Option<Vec<String>>> = vec![None; q.vertices.len()];
    let mut rows: Vec<Option<Vec<Vector>>> = vec![None; q.arrows.len()];
    let mut current: Option<usize> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let perr = |m: String| Error::Parse { line, message: m };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let vertex = |name: &str| q.vertex_index(name).ok_or_else(|| perr(format!("unknown vertex {name}")));
        match toks[0] {
            "field" => {
                let declared = crate::presentation::parse_field_tokens(&toks[1..]).map_err(|e| perr(e.to_string()))?;
                if declared != f {
                    return Err(perr(format!("module is over {declared}, algebra over {f}")));
                }
            }
            "dim" => {
                if toks.len() != 3 {
                    return Err(perr("expected `dim <vertex> <n>`".into()));
                }
                let v = vertex(toks[1])?;
                dims[v] = Some(toks[2].parse().map_err(|_| perr("bad dimension".into()))?);
            }
            "basis" => {
                if toks.len() < 2 {
                    return Err(perr("expected `basis <vertex> <labels>`".into()));
                }
                let v = vertex(toks[1])?;
                labels[v] = Some(toks[2..].iter().map(|s| s.to_string()).collect());
            }
            "arrow" => {
                if toks.len() != 2 {
                    return Err(perr("expected `arrow <name>`".into()));
                }
                let a = q.arrow_index(toks[1]).ok_or_else(|| perr(format!("unknown arrow {}", toks[1])))?;
                if rows[a].is_some() {
                    return Err(perr(format!("arrow {} given twice", toks[1])));
                }
                rows[a] = Some(Vec::new());
                current = Some(a);
            }
            _ => {
                let a = current.ok_or_else(|| perr("matrix row outside an `arrow` block".into()))?;
                let row = toks.iter().map(|t| f.parse_scalar(t)).collect::<Result<Vector>>().map_err(|e| perr(e.to_string()))?;
                rows[a].as_mut().unwrap().push(row);
            }
        }
    }
    let dims: Vec<usize> = dims.iter().map(|d| d.unwrap_or(0)).collect();
    let mut maps = Vec::with_capacity(q.arrows.len());
    for (a, arrow) in q.arrows.iter().enumerate() {
        let (r, c) = (dims[arrow.head], dims[arrow.tail]);
        let m = match &rows[a] {
            None => Matrix::zeros(f, r, c),
            Some(rs) => {
                if rs.len() != r || rs.iter().any(|row| row.len() != c) {
                    return Err(Error::Parse { line: 0, message: format!("arrow {} needs a {r}×{c} matrix", arrow.name) });
                }
                Matrix::from_rows(f, c, rs)
            }
        };
        maps.push(m);
    }
    let mut rep = Representation::new(p, dims.clone(), maps)?;
    if labels.iter().any(Option::is_some) {
        let full: Vec<Vec<String>> = labels
            .into_iter()
            .zip(&dims)
            .map(|(l, &d)| l.unwrap_or_else(|| (0..d).map(|k| format!("e{k}")).collect()))
            .collect();
        if full.iter().zip(&dims).any(|(l, &d)| l.len() != d) {
            return Err(Error::Parse { line: 0, message: "basis labels do not match dimensions".into() });
        }
        rep = rep.with_labels(full);
    }
    Ok(rep)
}
