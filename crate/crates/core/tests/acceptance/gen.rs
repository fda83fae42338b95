//! Seeded random relations, matrices and pencils.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strelkit_core::{Field, LinearRelation, Matrix, Subspace, Vector};

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn vector(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Vector {
    let p = f.characteristic() as i64;
    (0..n).map(|_| f.int(rng.gen_range(0..p))).collect()
}

pub fn matrix(rng: &mut ChaCha8Rng, f: Field, rows: usize, cols: usize) -> Matrix {
    let cols_v: Vec<Vector> = (0..cols).map(|_| vector(rng, f, rows)).collect();
    Matrix::from_columns(f, rows, &cols_v)
}

pub fn invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    loop {
        let m = matrix(rng, f, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Strictly upper triangular after a random change of basis.
pub fn nilpotent(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    let mut m = matrix(rng, f, n, n);
    for i in 0..n {
        for j in 0..=i {
            m[(i, j)] = f.zero();
        }
    }
    let g = invertible(rng, f, n);
    g.mul(&m).mul(&g.inverse().unwrap())
}

fn from_pairs(f: Field, n: usize, pairs: &[(Vector, Vector)]) -> LinearRelation {
    LinearRelation::from_pairs(f, n, n, pairs).unwrap()
}

/// Uniform subspace of `V ⊕ V` of random dimension.
pub fn uniform_relation(rng: &mut ChaCha8Rng, f: Field, n: usize) -> LinearRelation {
    let k = rng.gen_range(0..=2 * n);
    let pairs: Vec<(Vector, Vector)> = (0..k).map(|_| (vector(rng, f, n), vector(rng, f, n))).collect();
    from_pairs(f, n, &pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Automorphic,
    Nilpotent,
    CoNilpotent,
    Uniform,
}

pub fn piece(rng: &mut ChaCha8Rng, f: Field, n: usize, kind: Piece) -> LinearRelation {
    match kind {
        Piece::Automorphic => LinearRelation::graph_of(&invertible(rng, f, n)),
        Piece::Nilpotent => LinearRelation::graph_of(&nilpotent(rng, f, n)),
        Piece::CoNilpotent => LinearRelation::graph_of(&nilpotent(rng, f, n)).inverse(),
        Piece::Uniform => uniform_relation(rng, f, n),
    }
}

pub fn random_piece_kind(rng: &mut ChaCha8Rng) -> Piece {
    [Piece::Automorphic, Piece::Nilpotent, Piece::CoNilpotent, Piece::Uniform][rng.gen_range(0..4)]
}

/// Direct sum of random pieces in a random basis, sometimes with an extra pair.
pub fn structured_relation(rng: &mut ChaCha8Rng, f: Field, n: usize) -> LinearRelation {
    let mut pairs = Vec::new();
    let mut offset = 0;
    while offset < n {
        let size = rng.gen_range(1..=n - offset);
        let kind = random_piece_kind(rng);
        for (a, b) in piece(rng, f, size, kind).pairs() {
            let mut x = vec![f.zero(); n];
            let mut y = vec![f.zero(); n];
            x[offset..offset + size].clone_from_slice(&a);
            y[offset..offset + size].clone_from_slice(&b);
            pairs.push((x, y));
        }
        offset += size;
    }
    if rng.gen_bool(0.3) {
        pairs.push((vector(rng, f, n), vector(rng, f, n)));
    }
    let g = invertible(rng, f, n);
    let moved: Vec<(Vector, Vector)> = pairs.iter().map(|(a, b)| (g.mul_vec(a), g.mul_vec(b))).collect();
    from_pairs(f, n, &moved)
}

/// Half uniform, half structured, `dim V ≤ 6`.
pub fn sample_relations(seed: u64, count: usize) -> Vec<LinearRelation> {
    let mut r = rng(seed, 1);
    let f = f5();
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=6);
            if i % 2 == 0 {
                uniform_relation(&mut r, f, n)
            } else {
                structured_relation(&mut r, f, n)
            }
        })
        .collect()
}

pub fn subspace_coords(outer: &Subspace, inner: &Subspace) -> Subspace {
    let coords: Vec<Vector> = inner.basis_vectors().iter().map(|v| outer.coordinates(v).unwrap()).collect();
    Subspace::span(outer.field(), outer.dim(), &coords)
}
