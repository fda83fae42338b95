//! Cyclic decompositions: Jordan chains of nilpotent maps and the Frobenius
//! (rational canonical) form of arbitrary square matrices.

use crate::exactla::field::Scalar;
use crate::exactla::matrix::{vec_add, Matrix, Vector};
use crate::exactla::poly::Poly;
use crate::exactla::subspace::Subspace;

/// Monic minimal polynomial of `v` under `a`.
pub fn vector_min_poly(a: &Matrix, v: &[Scalar]) -> Poly {
    let f = a.field();
    let n = a.rows();
    let mut krylov: Vec<Vector> = Vec::new();
    let mut cur = v.to_vec();
    loop {
        if krylov.is_empty() {
            if cur.iter().all(Scalar::is_zero) {
                return Poly::one(f);
            }
        } else if let Some(c) = Matrix::from_columns(f, n, &krylov).solve(&cur) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        krylov.push(cur.clone());
        cur = a.mul_vec(&cur);
    }
}

/// Splits `lcm(a, b)` into coprime factors `a' | a`, `b' | b` with `a' b' = lcm(a, b)`.
fn coprime_split(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let g = a.gcd(b);
    let mut a1 = a.clone();
    let mut b1 = b.div_exact(&g);
    loop {
        let g = a1.gcd(&b1);
        if g.degree() == Some(0) {
            return (a1.monic(), b1.monic());
        }
        a1 = a1.div_exact(&g);
        b1 = b1.mul(&g);
    }
}

/// A vector whose minimal polynomial is the minimal polynomial of `a`.
pub fn maximal_vector(a: &Matrix) -> (Vector, Poly) {
    let f = a.field();
    let n = a.rows();
    let mut w = vec![f.zero(); n];
    let mut mw = Poly::one(f);
    for i in 0..n {
        let e = crate::exactla::matrix::unit_vec(f, n, i);
        let me = vector_min_poly(a, &e);
        if mw.div_rem(&me).1.is_zero() {
            continue;
        }
        let (a1, b1) = coprime_split(&mw, &me);
        let u = mw.div_exact(&a1).apply(a, &w);
        let v = me.div_exact(&b1).apply(a, &e);
        w = vec_add(&u, &v);
        mw = a1.mul(&b1);
    }
    debug_assert_eq!(vector_min_poly(a, &w), mw);
    (w, mw)
}

/// Frobenius form: returns `P` invertible and invariant factors `f_1 | f_2 | ...`
/// with `a P = P diag(companion(f_1), companion(f_2), ...)`.
pub fn frobenius(a: &Matrix) -> (Matrix, Vec<Poly>) {
    let f = a.field();
    let n = a.rows();
    if n == 0 {
        return (Matrix::zeros(f, 0, 0), Vec::new());
    }
    let (v, mu) = maximal_vector(a);
    let k = mu.degree().unwrap();
    let mut cyc = Vec::with_capacity(k);
    let mut cur = v;
    for _ in 0..k {
        cyc.push(cur.clone());
        cur = a.mul_vec(&cur);
    }
    if k == n {
        return (Matrix::from_columns(f, n, &cyc), vec![mu]);
    }
    // functional phi with phi(a^i v) = delta_{i, k-1}
    let krylov = Matrix::from_columns(f, n, &cyc);
    let mut target = vec![f.zero(); k];
    target[k - 1] = f.one();
    let phi = krylov.transpose().solve(&target).expect("Krylov vectors are independent");
    let mut rows = Vec::with_capacity(k);
    let mut row = phi;
    for _ in 0..k {
        rows.push(row.clone());
        row = a.transpose().mul_vec(&row);
    }
    let comp = Subspace::kernel_of(&Matrix::from_rows(f, n, &rows));
    let basis = comp.basis_vectors();
    let cols: Vec<Vector> = basis.iter().map(|b| comp.coordinates(&a.mul_vec(b)).expect("invariant complement")).collect();
    let restricted = Matrix::from_columns(f, basis.len(), &cols);
    let (p_sub, mut factors) = frobenius(&restricted);
    let embed = Matrix::from_columns(f, n, &basis).mul(&p_sub);
    let mut all_cols = embed.columns();
    all_cols.extend(cyc);
    factors.push(mu);
    (Matrix::from_columns(f, n, &all_cols), factors)
}

/// Block-diagonal companion matrices of the given polynomials.
pub fn companion_blocks(field: crate::exactla::Field, factors: &[Poly]) -> Matrix {
    let blocks: Vec<Matrix> = factors.iter().map(Poly::companion).collect();
    Matrix::block_diag(field, &blocks)
}

/// Jordan chains of a nilpotent matrix: pairs `(length, generator)` such that
/// `g, a g, ..., a^{len-1} g` together form a basis, longest chains first.
pub fn nilpotent_chains(a: &Matrix) -> Vec<(usize, Vector)> {
    let f = a.field();
    let n = a.rows();
    let mut kernels = vec![Subspace::zero(f, n)];
    let mut power = Matrix::identity(f, n);
    while kernels.last().unwrap().dim() < n {
        power = power.mul(a);
        let k = Subspace::kernel_of(&power);
        assert!(k.dim() > kernels.last().unwrap().dim(), "matrix is not nilpotent");
        kernels.push(k);
    }
    let top = kernels.len() - 1;
    let mut chains: Vec<(usize, Vector)> = Vec::new();
    for j in (1..=top).rev() {
        let mut span_vectors = kernels[j - 1].basis_vectors();
        for (len, g) in &chains {
            let mut v = g.clone();
            for _ in 0..(len - j) {
                v = a.mul_vec(&v);
            }
            span_vectors.push(v);
        }
        let existing = Subspace::span(f, n, &span_vectors);
        for g in existing.complement_vectors(&kernels[j]) {
            chains.push((j, g));
        }
    }
    chains
}
