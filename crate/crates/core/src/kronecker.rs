//! Kronecker modules `p, q: X ⇉ Y`, their block decomposition and Hom/Ext.
//!
//! Standard blocks use bases `x_i` of `X` and `y_j` of `Y` with `p(x_i) = y_i`
//! and `q(x_i) = y_{i+1}` (zero when the index is missing):
//! `P(n)`: `x_1..x_n`, `y_1..y_{n+1}`; `I(n)`: `x_0..x_n`, `y_1..y_n`;
//! `Z(n)`: `x_1..x_n`, `y_1..y_n`; `R(n)`: `x_0..x_{n-1}`, `y_1..y_n`.
//! An automorphic block has `p = 1` and `q` in Frobenius form.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::normal_form::{companion_blocks, frobenius, nilpotent_chains};
use crate::exactla::{Field, LinearSystem, Matrix, Poly, Scalar, Subspace, Vector};
use crate::relation::LinearRelation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KroneckerModule {
    pub p: Matrix,
    pub q: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    P(usize),
    I(usize),
    Z(usize),
    R(usize),
    /// `p = 1`, `q` = block companion matrix of the invariant factors (ascending).
    Aut { invariant_factors: Vec<Poly> },
}

impl Block {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Block::P(n) => (*n, n + 1),
            Block::I(n) => (n + 1, *n),
            Block::Z(n) | Block::R(n) => (*n, *n),
            Block::Aut { invariant_factors } => {
                let d = invariant_factors.iter().map(|f| f.degree().unwrap()).sum();
                (d, d)
            }
        }
    }

    /// The standard `(p, q)` of the block.
    pub fn module(&self, field: Field) -> KroneckerModule {
        let (x, y) = self.dims();
        let mut p = Matrix::zeros(field, y, x);
        let mut q = Matrix::zeros(field, y, x);
        let one = field.one();
        match self {
            Block::P(n) => {
                for c in 0..*n {
                    p[(c, c)] = one.clone();
                    q[(c + 1, c)] = one.clone();
                }
            }
            Block::I(n) => {
                for i in 1..=*n {
                    p[(i - 1, i)] = one.clone();
                }
                for i in 0..*n {
                    q[(i, i)] = one.clone();
                }
            }
            Block::Z(n) => {
                for c in 0..*n {
                    p[(c, c)] = one.clone();
                    if c + 1 < *n {
                        q[(c + 1, c)] = one.clone();
                    }
                }
            }
            Block::R(n) => {
                for i in 1..*n {
                    p[(i - 1, i)] = one.clone();
                }
                for i in 0..*n {
                    q[(i, i)] = one.clone();
                }
            }
            Block::Aut { invariant_factors } => {
                p = Matrix::identity(field, x);
                q = companion_blocks(field, invariant_factors);
            }
        }
        KroneckerModule { p, q }
    }

    fn order_key(&self) -> (u8, usize) {
        match self {
            Block::P(n) => (0, *n),
            Block::I(n) => (1, *n),
            Block::Z(n) => (2, *n),
            Block::R(n) => (3, *n),
            Block::Aut { .. } => (4, 0),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::P(n) => write!(f, "P({n})"),
            Block::I(n) => write!(f, "I({n})"),
            Block::Z(n) => write!(f, "Z({n})"),
            Block::R(n) => write!(f, "R({n})"),
            Block::Aut { invariant_factors } => {
                let (d, _) = self.dims();
                let fs: Vec<String> = invariant_factors.iter().map(|g| format!("[{g}]")).collect();
                write!(f, "Aut({d}, {})", fs.join(" "))
            }
        }
    }
}

/// `M ≅ ⊕ blocks`, witnessed by `p · bx = by · dp` and `q · bx = by · dq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KroneckerDecomposition {
    pub blocks: Vec<Block>,
    pub bx: Matrix,
    pub by: Matrix,
}

impl KroneckerDecomposition {
    /// The direct sum of the standard blocks.
    pub fn reassemble(&self, field: Field) -> KroneckerModule {
        KroneckerModule::direct_sum_all(field, &self.blocks.iter().map(|b| b.module(field)).collect::<Vec<_>>())
    }

    pub fn aut_matrix(&self, field: Field) -> Option<Matrix> {
        self.blocks.iter().find_map(|b| match b {
            Block::Aut { invariant_factors } => Some(companion_blocks(field, invariant_factors)),
            _ => None,
        })
    }
}

impl fmt::Display for KroneckerDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Morphisms `(theta: X_M → X_N, phi: Y_M → Y_N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<(Matrix, Matrix)>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn coords_matrix(basis: &Subspace, vectors: &[Vector]) -> Matrix {
    let cols: Vec<Vector> = vectors.iter().map(|v| basis.coordinates(v).expect("vector lies in subspace")).collect();
    Matrix::from_columns(basis.field(), basis.dim(), &cols)
}

/// Coordinates of the columns of `m` in the column basis `b` (full column rank).
fn solve_columns(b: &Matrix, m: &Matrix) -> Matrix {
    let cols: Vec<Vector> = m.columns().iter().map(|c| b.solve(c).expect("column lies in span")).collect();
    Matrix::from_columns(b.field(), b.cols(), &cols)
}

/// Pieces of a partial decomposition, in the coordinates of some ambient module.
struct Pieces {
    blocks: Vec<Block>,
    xs: Vec<Vector>,
    ys: Vec<Vector>,
}

impl KroneckerModule {
    pub fn new(p: Matrix, q: Matrix) -> Result<Self> {
        if p.shape() != q.shape() || p.field() != q.field() {
            return Err(Error::Dimension("p and q must have the same shape".into()));
        }
        Ok(Self { p, q })
    }

    pub fn zero(field: Field, x: usize, y: usize) -> Self {
        Self { p: Matrix::zeros(field, y, x), q: Matrix::zeros(field, y, x) }
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    pub fn x_dim(&self) -> usize {
        self.p.cols()
    }

    pub fn y_dim(&self) -> usize {
        self.p.rows()
    }

    /// `X = C`, `Y = V`, `p` the input and `q` the output projection.
    pub fn from_relation(c: &LinearRelation) -> Self {
        let f = c.field();
        let pairs = c.pairs();
        let n = c.target_dim();
        let outs: Vec<Vector> = pairs.iter().map(|pr| pr.0.clone()).collect();
        let ins: Vec<Vector> = pairs.iter().map(|pr| pr.1.clone()).collect();
        Self { p: Matrix::from_columns(f, c.source_dim(), &ins), q: Matrix::from_columns(f, n, &outs) }
    }

    /// The relation `{(q x, p x)}` when `(p; q)` is injective.
    pub fn to_relation(&self) -> Option<LinearRelation> {
        if self.p.rows() != self.q.rows() {
            return None;
        }
        let stacked = self.q.vstack(&self.p);
        if stacked.rank() != self.x_dim() {
            return None;
        }
        let graph = Subspace::column_space(&stacked);
        LinearRelation::new(self.y_dim(), self.y_dim(), graph).ok()
    }

    /// `(V/U, C/C|_U)` with induced projections.
    pub fn relation_quotient(c: &LinearRelation, u: &Subspace) -> Result<Self> {
        let f = c.field();
        let n = c.dim();
        let (qy, _) = u.quotient_map(&Subspace::full(f, n))?;
        let sub = c.restricted_graph(u)?;
        let reps = sub.complement_vectors(c.graph());
        let ins: Vec<Vector> = reps.iter().map(|r| qy.mul_vec(&r[n..])).collect();
        let outs: Vec<Vector> = reps.iter().map(|r| qy.mul_vec(&r[..n])).collect();
        Ok(Self { p: Matrix::from_columns(f, qy.rows(), &ins), q: Matrix::from_columns(f, qy.rows(), &outs) })
    }

    pub fn dual(&self) -> Self {
        Self { p: self.p.transpose(), q: self.q.transpose() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.field();
        Self {
            p: Matrix::block_diag(f, &[self.p.clone(), other.p.clone()]),
            q: Matrix::block_diag(f, &[self.q.clone(), other.q.clone()]),
        }
    }

    pub fn direct_sum_all(field: Field, parts: &[Self]) -> Self {
        Self {
            p: Matrix::block_diag(field, &parts.iter().map(|m| m.p.clone()).collect::<Vec<_>>()),
            q: Matrix::block_diag(field, &parts.iter().map(|m| m.q.clone()).collect::<Vec<_>>()),
        }
    }

    /// `rank(λp + μq)` for each sample point.
    pub fn rank_invariants(&self, samples: &[(Scalar, Scalar)]) -> Vec<usize> {
        samples.iter().map(|(l, m)| self.p.scale(l).add(&self.q.scale(m)).rank()).collect()
    }

    /// Solves `φ p_M = p_N θ`, `φ q_M = q_N θ`.
    pub fn hom_space(&self, n: &Self) -> HomSpace {
        let f = self.field();
        let (xm, ym, xn, yn) = (self.x_dim(), self.y_dim(), n.x_dim(), n.y_dim());
        let mut sys = LinearSystem::new(f);
        let theta = sys.matrix_unknown(xn, xm);
        let phi = sys.matrix_unknown(yn, ym);
        for (mm, nm) in [(&self.p, &n.p), (&self.q, &n.q)] {
            for i in 0..yn {
                for j in 0..xm {
                    let mut terms = Vec::new();
                    for k in 0..ym {
                        terms.push((phi.at(i, k), mm[(k, j)].clone()));
                    }
                    for k in 0..xn {
                        terms.push((theta.at(k, j), -&nm[(i, k)]));
                    }
                    sys.add_equation(&terms, f.zero());
                }
            }
        }
        let basis = sys.nullspace().iter().map(|v| (theta.extract(f, v), phi.extract(f, v))).collect();
        HomSpace { basis }
    }

    /// `dim Ext¹(M, N)`, the cokernel of `(θ, φ) ↦ (φ p_M − p_N θ, φ q_M − q_N θ)`.
    pub fn ext_dim(&self, n: &Self) -> usize {
        let domain = self.x_dim() * n.x_dim() + self.y_dim() * n.y_dim();
        let rank = domain - self.hom_space(n).dim();
        2 * self.x_dim() * n.y_dim() - rank
    }

    /// `⟨dim M, dim N⟩ = ac + bd − 2ad` for `dim M = (a, b)`, `dim N = (c, d)`.
    pub fn euler_form(&self, n: &Self) -> i64 {
        let (a, b, c, d) = (self.x_dim() as i64, self.y_dim() as i64, n.x_dim() as i64, n.y_dim() as i64);
        a * c + b * d - 2 * a * d
    }

    /// Block decomposition with explicit base change.
    pub fn decompose(&self) -> Result<KroneckerDecomposition> {
        let f = self.field();
        let (x, y) = (self.x_dim(), self.y_dim());

        // preinjective part and a complement
        let inj = preinjective_part(self);
        let (cx, cy) = complement_of(self, &inj)?;
        let m1 = restrict_module(self, &cx, &cy);

        // preprojective part, through the dual
        let d1 = m1.dual();
        let dual_inj = preinjective_part(&d1);
        let (dcx, dcy) = complement_of(&d1, &dual_inj)?;
        let mut gx_cols = dual_inj.xs.clone();
        gx_cols.extend(dcx.iter().cloned());
        let mut gy_cols = dual_inj.ys.clone();
        gy_cols.extend(dcy.iter().cloned());
        let gx = Matrix::from_columns(f, m1.y_dim(), &gx_cols);
        let gy = Matrix::from_columns(f, m1.x_dim(), &gy_cols);
        let bx1 = gy.transpose().inverse().ok_or_else(|| Error::Internal("dual basis not invertible".into()))?;
        let by1 = gx.transpose().inverse().ok_or_else(|| Error::Internal("dual basis not invertible".into()))?;
        let mut proj = Pieces { blocks: Vec::new(), xs: Vec::new(), ys: Vec::new() };
        let (mut ox, mut oy) = (0, 0);
        for b in &dual_inj.blocks {
            let Block::I(n) = b else { unreachable!() };
            proj.blocks.push(Block::P(*n));
            proj.xs.extend((ox..ox + n).rev().map(|c| bx1.column(c)));
            proj.ys.extend((oy..oy + n + 1).rev().map(|c| by1.column(c)));
            ox += n;
            oy += n + 1;
        }
        let reg_x: Vec<Vector> = (ox..m1.x_dim()).map(|c| bx1.column(c)).collect();
        let reg_y: Vec<Vector> = (oy..m1.y_dim()).map(|c| by1.column(c)).collect();
        let m2 = restrict_module_cols(&m1, &reg_x, &reg_y)?;

        let regular = regular_parts(&m2)?;

        // map every piece back to the original coordinates
        let cxm = Matrix::from_columns(f, x, &cx);
        let cym = Matrix::from_columns(f, y, &cy);
        let rxm = Matrix::from_columns(f, m1.x_dim(), &reg_x);
        let rym = Matrix::from_columns(f, m1.y_dim(), &reg_y);
        let lift1 = |m: &Matrix, v: &Vector| m.mul_vec(v);
        let mut entries: Vec<(Block, Vec<Vector>, Vec<Vector>)> = Vec::new();
        let mut push = |pieces: Pieces, to_x: &dyn Fn(&Vector) -> Vector, to_y: &dyn Fn(&Vector) -> Vector| {
            let (mut ix, mut iy) = (0, 0);
            for b in pieces.blocks {
                let (bxd, byd) = b.dims();
                let xs = pieces.xs[ix..ix + bxd].iter().map(to_x).collect();
                let ys = pieces.ys[iy..iy + byd].iter().map(to_y).collect();
                ix += bxd;
                iy += byd;
                entries.push((b, xs, ys));
            }
        };
        push(inj, &|v| v.clone(), &|v| v.clone());
        push(proj, &|v| lift1(&cxm, v), &|v| lift1(&cym, v));
        push(regular, &|v| lift1(&cxm, &lift1(&rxm, v)), &|v| lift1(&cym, &lift1(&rym, v)));
        entries.sort_by_key(|e| e.0.order_key());
        let mut blocks = Vec::new();
        let mut xcols = Vec::new();
        let mut ycols = Vec::new();
        for (b, xs, ys) in entries {
            blocks.push(b);
            xcols.extend(xs);
            ycols.extend(ys);
        }
        let bx = Matrix::from_columns(f, x, &xcols);
        let by = Matrix::from_columns(f, y, &ycols);
        let dec = KroneckerDecomposition { blocks, bx, by };
        let std = dec.reassemble(f);
        let ok = dec.bx.shape() == (x, x)
            && dec.by.shape() == (y, y)
            && dec.bx.is_invertible()
            && dec.by.is_invertible()
            && self.p.mul(&dec.bx) == dec.by.mul(&std.p)
            && self.q.mul(&dec.bx) == dec.by.mul(&std.q);
        if !ok {
            return Err(Error::Internal("decomposition failed verification".into()));
        }
        Ok(dec)
    }
}

/// Generators of the polynomial kernel of `p − t q`, degree by degree; each
/// generator of degree `n` spans a copy of `I(n)`.
fn preinjective_part(m: &KroneckerModule) -> Pieces {
    let f = m.field();
    let (x, y) = (m.x_dim(), m.y_dim());
    let mut gens: Vec<(usize, Vec<Vector>)> = Vec::new();
    let mut found = 0;
    for d in 0..x {
        if found + d + 1 > x {
            break;
        }
        // rows: block k says p x_k − q x_{k−1} = 0 for k = 0..=d+1
        let mut t = Matrix::zeros(f, (d + 2) * y, (d + 1) * x);
        for k in 0..=d + 1 {
            for r in 0..y {
                for c in 0..x {
                    if k <= d {
                        t[(k * y + r, k * x + c)] = m.p[(r, c)].clone();
                    }
                    if k >= 1 {
                        t[(k * y + r, (k - 1) * x + c)] = -&m.q[(r, c)];
                    }
                }
            }
        }
        let ker = Subspace::kernel_of(&t);
        if ker.is_zero() {
            continue;
        }
        let mut shifts = Vec::new();
        for (n, coeffs) in &gens {
            for s in 0..=(d - n) {
                let mut v = vec![f.zero(); (d + 1) * x];
                for (i, c) in coeffs.iter().enumerate() {
                    v[(s + i) * x..(s + i + 1) * x].clone_from_slice(c);
                }
                shifts.push(v);
            }
        }
        let old = Subspace::span(f, (d + 1) * x, &shifts);
        for g in old.complement_vectors(&ker) {
            let coeffs: Vec<Vector> = (0..=d).map(|i| g[i * x..(i + 1) * x].to_vec()).collect();
            gens.push((d, coeffs));
            found += d + 1;
        }
    }
    let mut pieces = Pieces { blocks: Vec::new(), xs: Vec::new(), ys: Vec::new() };
    for (n, coeffs) in gens {
        pieces.blocks.push(Block::I(n));
        for (i, c) in coeffs.iter().enumerate() {
            if i >= 1 {
                pieces.ys.push(m.p.mul_vec(c));
            }
            pieces.xs.push(c.clone());
        }
    }
    pieces
}

/// A complement submodule of the span of `pieces`, as the kernel of a retraction.
fn complement_of(m: &KroneckerModule, pieces: &Pieces) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let f = m.field();
    let (x, y) = (m.x_dim(), m.y_dim());
    let (sx, sy) = (pieces.xs.len(), pieces.ys.len());
    if sx == 0 && sy == 0 {
        return Ok((
            (0..x).map(|i| crate::exactla::matrix::unit_vec(f, x, i)).collect(),
            (0..y).map(|i| crate::exactla::matrix::unit_vec(f, y, i)).collect(),
        ));
    }
    let std = KroneckerModule::direct_sum_all(f, &pieces.blocks.iter().map(|b| b.module(f)).collect::<Vec<_>>());
    let bx = Matrix::from_columns(f, x, &pieces.xs);
    let by = Matrix::from_columns(f, y, &pieces.ys);
    if bx.rank() != sx || by.rank() != sy {
        return Err(Error::Internal("summand basis is not independent".into()));
    }
    let mut sys = LinearSystem::new(f);
    let theta = sys.matrix_unknown(sx, x);
    let phi = sys.matrix_unknown(sy, y);
    for (mm, sm) in [(&m.p, &std.p), (&m.q, &std.q)] {
        for i in 0..sy {
            for j in 0..x {
                let mut terms = Vec::new();
                for k in 0..y {
                    terms.push((phi.at(i, k), mm[(k, j)].clone()));
                }
                for k in 0..sx {
                    terms.push((theta.at(k, j), -&sm[(i, k)]));
                }
                sys.add_equation(&terms, f.zero());
            }
        }
    }
    for (u, b, s) in [(&theta, &bx, sx), (&phi, &by, sy)] {
        for i in 0..s {
            for j in 0..s {
                let terms: Vec<(usize, Scalar)> = (0..b.rows()).map(|k| (u.at(i, k), b[(k, j)].clone())).collect();
                sys.add_equation(&terms, if i == j { f.one() } else { f.zero() });
            }
        }
    }
    let sol = sys.solve().ok_or_else(|| Error::Internal("summand has no retraction".into()))?;
    let th = theta.extract(f, &sol);
    let ph = phi.extract(f, &sol);
    Ok((th.kernel(), ph.kernel()))
}

fn restrict_module(m: &KroneckerModule, xs: &[Vector], ys: &[Vector]) -> KroneckerModule {
    restrict_module_cols(m, xs, ys).expect("complement is a submodule")
}

/// The submodule with the given bases, written in those bases.
fn restrict_module_cols(m: &KroneckerModule, xs: &[Vector], ys: &[Vector]) -> Result<KroneckerModule> {
    let f = m.field();
    let bx = Matrix::from_columns(f, m.x_dim(), xs);
    let by = Matrix::from_columns(f, m.y_dim(), ys);
    if by.cols() == 0 {
        return Ok(KroneckerModule::zero(f, xs.len(), 0));
    }
    let image_p = m.p.mul(&bx);
    let image_q = m.q.mul(&bx);
    for c in image_p.columns().iter().chain(image_q.columns().iter()) {
        if by.solve(c).is_none() {
            return Err(Error::Internal("basis does not span a submodule".into()));
        }
    }
    Ok(KroneckerModule { p: solve_columns(&by, &image_p), q: solve_columns(&by, &image_q) })
}

/// Z, R and automorphic blocks of a regular module (square, no P or I summands).
fn regular_parts(m: &KroneckerModule) -> Result<Pieces> {
    let f = m.field();
    let r = m.y_dim();
    let mut out = Pieces { blocks: Vec::new(), xs: Vec::new(), ys: Vec::new() };
    if r == 0 {
        return Ok(out);
    }
    let c = m.to_relation().ok_or_else(|| Error::Internal("regular part is not a relation".into()))?;
    let y_z = c.inverse().orbit();
    let y_r = c.orbit();
    let y_a = c.sharp();
    if y_z.dim() + y_r.dim() + y_a.dim() != r {
        return Err(Error::Internal("regular part does not split into Z, R and automorphic pieces".into()));
    }
    let x_part = |yp: &Subspace| -> Result<Subspace> {
        Subspace::preimage(&m.p, yp)?.intersect(&Subspace::preimage(&m.q, yp)?)
    };
    // Z: p invertible, p⁻¹q nilpotent; chain x_1 → x_2 → ... under p⁻¹q.
    let xz = x_part(&y_z)?;
    if !xz.is_zero() {
        let (pz, qz) = part_maps(m, &xz, &y_z);
        let a = pz.inverse().ok_or_else(|| Error::Internal("p not invertible on Z part".into()))?.mul(&qz);
        let xb = xz.basis().transpose();
        let mut chains = nilpotent_chains(&a);
        chains.sort_by_key(|c| c.0);
        for (n, g) in chains {
            out.blocks.push(Block::Z(n));
            let mut v = g;
            for _ in 0..n {
                let xv = xb.mul_vec(&v);
                out.ys.push(m.p.mul_vec(&xv));
                out.xs.push(xv);
                v = a.mul_vec(&v);
            }
        }
    }
    // R: q invertible, q⁻¹p nilpotent; chain x_{n-1} → ... → x_0.
    let xr = x_part(&y_r)?;
    if !xr.is_zero() {
        let (pr, qr) = part_maps(m, &xr, &y_r);
        let b = qr.inverse().ok_or_else(|| Error::Internal("q not invertible on R part".into()))?.mul(&pr);
        let xb = xr.basis().transpose();
        let mut chains = nilpotent_chains(&b);
        chains.sort_by_key(|c| c.0);
        for (n, g) in chains {
            out.blocks.push(Block::R(n));
            let mut chain = Vec::with_capacity(n);
            let mut v = g;
            for _ in 0..n {
                chain.push(xb.mul_vec(&v));
                v = b.mul_vec(&v);
            }
            chain.reverse();
            for xv in chain {
                out.ys.push(m.q.mul_vec(&xv));
                out.xs.push(xv);
            }
        }
    }
    let xa = x_part(&y_a)?;
    if !xa.is_zero() {
        let (pa, qa) = part_maps(m, &xa, &y_a);
        let fmat = pa.inverse().ok_or_else(|| Error::Internal("p not invertible on automorphic part".into()))?.mul(&qa);
        let (pm, factors) = frobenius(&fmat);
        let xb = xa.basis().transpose().mul(&pm);
        for c in 0..xb.cols() {
            let xv = xb.column(c);
            out.ys.push(m.p.mul_vec(&xv));
            out.xs.push(xv);
        }
        out.blocks.push(Block::Aut { invariant_factors: factors });
    }
    let _ = f;
    Ok(out)
}

/// Matrices of `p` and `q` restricted to `xs → ys`, in the RREF bases.
fn part_maps(m: &KroneckerModule, xs: &Subspace, ys: &Subspace) -> (Matrix, Matrix) {
    let xb = xs.basis_vectors();
    let pv: Vec<Vector> = xb.iter().map(|v| m.p.mul_vec(v)).collect();
    let qv: Vec<Vector> = xb.iter().map(|v| m.q.mul_vec(v)).collect();
    (coords_matrix(ys, &pv), coords_matrix(ys, &qv))
}

impl fmt::Display for KroneckerModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field())?;
        writeln!(f, "dims {} {}", self.x_dim(), self.y_dim())?;
        for (name, m) in [("p", &self.p), ("q", &self.q)] {
            writeln!(f, "{name}:")?;
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses `field`, `dims <x> <y>`, then `p:` and `q:` each followed by `y` rows of `x` entries.
pub fn parse_kronecker(text: &str) -> Result<KroneckerModule> {
    let mut field = Field::Rational;
    let mut dims: Option<(usize, usize)> = None;
    let mut current: Option<char> = None;
    let mut rows: [Vec<Vector>; 2] = [Vec::new(), Vec::new()];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let perr = |m: String| Error::Parse { line, message: m };
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "field" => field = crate::presentation::parse_field_tokens(&toks[1..]).map_err(|e| perr(e.to_string()))?,
            "dims" => {
                if toks.len() != 3 {
                    return Err(perr("expected `dims <x> <y>`".into()));
                }
                let x = toks[1].parse().map_err(|_| perr("bad dimension".into()))?;
                let y = toks[2].parse().map_err(|_| perr("bad dimension".into()))?;
                dims = Some((x, y));
            }
            "p:" | "q:" => {
                current = Some(toks[0].chars().next().unwrap());
                if toks.len() > 1 {
                    return Err(perr("matrix rows start on the next line".into()));
                }
            }
            _ => {
                let (x, _) = dims.ok_or_else(|| perr("matrix row before `dims`".into()))?;
                let which = match current {
                    Some('p') => 0,
                    Some('q') => 1,
                    _ => return Err(perr("matrix row outside `p:`/`q:`".into())),
                };
                if toks.len() != x {
                    return Err(perr(format!("row has {} entries, expected {x}", toks.len())));
                }
                let row = toks.iter().map(|t| field.parse_scalar(t)).collect::<Result<Vector>>().map_err(|e| perr(e.to_string()))?;
                rows[which].push(row);
            }
        }
    }
    let (x, y) = dims.ok_or(Error::Parse { line: 0, message: "missing `dims`".into() })?;
    for (r, name) in rows.iter().zip(["p", "q"]) {
        if r.len() != y {
            return Err(Error::Parse { line: 0, message: format!("{name} needs {y} rows, found {}", r.len()) });
        }
    }
    KroneckerModule::new(Matrix::from_rows(field, x, &rows[0]), Matrix::from_rows(field, x, &rows[1]))
}
