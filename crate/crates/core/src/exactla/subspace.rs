//! Subspaces of `K^n` in canonical (reduced row-echelon) form.
//!
//! Two subspaces are equal exactly when their RREF bases are equal, so
//! stabilization of subspace chains is a plain `==` test.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::field::{Field, Scalar};
use crate::exactla::matrix::{is_zero_vec, unit_vec, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Self { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Self { basis, pivots }
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Self {
        Self::row_space(&Matrix::from_rows(field, ambient, vectors))
    }

    /// Null space of `m`.
    pub fn kernel_of(m: &Matrix) -> Self {
        Self::span(m.field(), m.cols(), &m.kernel())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the RREF basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient(), "vector length");
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    rest[j] = &rest[j] - &(c * b);
                }
            }
        }
        is_zero_vec(&rest).then_some(coords)
    }

    /// The vector with the given coordinates in the RREF basis.
    pub fn vector_from_coords(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim());
        let f = self.field();
        let mut v = vec![f.zero(); self.ambient()];
        for (i, c) in coords.iter().enumerate() {
            for (j, b) in self.basis.row(i).iter().enumerate() {
                v[j] = &v[j] + &(c * b);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient()
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn same_ambient(&self, other: &Subspace, what: &str) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::Dimension(format!(
                "{what}: ambient {} vs {}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other, "sum")?;
        if other.is_subspace_of(self) {
            return Ok(self.clone());
        }
        if self.is_subspace_of(other) {
            return Ok(other.clone());
        }
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Vectors annihilated by every basis vector under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        Self::kernel_of(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other, "intersect")?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        // Zassenhaus: reduce rows (u | u) and (w | 0); rows (0 | z) span the intersection.
        let n = self.ambient();
        let f = self.field();
        let zero = vec![f.zero(); n];
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis.row_vecs() {
            let mut r = u.clone();
            r.extend(u);
            rows.push(r);
        }
        for w in other.basis.row_vecs() {
            let mut r = w;
            r.extend(zero.iter().cloned());
            rows.push(r);
        }
        let (red, pivots) = Matrix::from_rows(f, 2 * n, &rows).rref();
        let meet: Vec<Vector> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= n)
            .map(|(i, _)| red.row(i)[n..].to_vec())
            .collect();
        Ok(Self::span(f, n, &meet))
    }

    /// `f(U)` for `f: K^n -> K^m` acting on column vectors.
    pub fn image(&self, f: &Matrix) -> Result<Subspace> {
        if f.cols() != self.ambient() {
            return Err(Error::Dimension(format!(
                "image: map has {} columns, subspace lives in K^{}",
                f.cols(),
                self.ambient()
            )));
        }
        Ok(Self::row_space(&self.basis.mul(&f.transpose())))
    }

    /// `{v : f v in B}`.
    pub fn preimage(f: &Matrix, b: &Subspace) -> Result<Subspace> {
        if f.rows() != b.ambient() {
            return Err(Error::Dimension(format!(
                "preimage: map has {} rows, target subspace lives in K^{}",
                f.rows(),
                b.ambient()
            )));
        }
        let ann = b.annihilator();
        Ok(Self::kernel_of(&ann.basis.mul(f)))
    }

    /// A subspace `U` with `self ⊕ U = inside`, extending by `inside`'s basis in order.
    pub fn complement_in(&self, inside: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(inside) {
            return Err(Error::NotContained("complement: A is not contained in the given space".into()));
        }
        let vecs = self.complement_vectors(inside);
        Ok(Self::span(self.field(), self.ambient(), &vecs))
    }

    /// The basis vectors of `inside` chosen to extend `self`.
    pub fn complement_vectors(&self, inside: &Subspace) -> Vec<Vector> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in inside.basis_vectors() {
            if !current.contains(&v) {
                current = Self::row_space(&current.basis.vstack(&Matrix::from_rows(self.field(), self.ambient(), &[v.clone()])));
                chosen.push(v);
            }
        }
        chosen
    }

    /// Places `K^n` at coordinates `offset..offset+n` of `K^total`.
    pub fn embed(&self, total: usize, offset: usize) -> Subspace {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), total);
        for i in 0..self.dim() {
            for j in 0..self.ambient() {
                m[(i, offset + j)] = self.basis[(i, j)].clone();
            }
        }
        Self::row_space(&m)
    }

    /// Image under the coordinate projection onto `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        Self::row_space(&self.basis.submatrix(0..self.dim(), range))
    }

    /// Image under the projection onto the listed coordinates, in that order.
    pub fn select(&self, coords: &[usize]) -> Subspace {
        let rows: Vec<Vector> = (0..self.dim())
            .map(|i| coords.iter().map(|&j| self.basis[(i, j)].clone()).collect())
            .collect();
        Self::span(self.field(), coords.len(), &rows)
    }

    /// `A ⊕ B` inside `K^{a+b}`.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let n = self.ambient() + other.ambient();
        let a = self.embed(n, 0);
        let b = other.embed(n, self.ambient());
        a.sum(&b).expect("same ambient")
    }

    /// Matrix `Q` sending `v in inside` to its coordinates in `inside / self`,
    /// relative to the basis returned by `complement_vectors`.
    pub fn quotient_map(&self, inside: &Subspace) -> Result<(Matrix, Vec<Vector>)> {
        if !self.is_subspace_of(inside) {
            return Err(Error::NotContained("quotient: submodule not contained".into()));
        }
        let f = self.field();
        let n = self.ambient();
        let w = self.complement_vectors(inside);
        let k = w.len();
        let mut cols = w.clone();
        cols.extend(self.basis_vectors());
        let so_far = Self::span(f, n, &cols);
        cols.extend(so_far.complement_vectors(&Subspace::full(f, n)));
        let p = Matrix::from_columns(f, n, &cols);
        let pinv = p.inverse().ok_or_else(|| Error::Internal("quotient basis not invertible".into()))?;
        Ok((pinv.submatrix(0..k, 0..n), w))
    }
}

/// The standard basis vector `e_i` of `K^n`.
pub fn basis_vector(field: Field, n: usize, i: usize) -> Vector {
    unit_vec(field, n, i)
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "span{{{}}} in K^{}", rows.join(", "), self.ambient())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn sp(vs: &[&[i64]]) -> Subspace {
        let n = vs.first().map_or(0, |v| v.len());
        Subspace::span(q(), n, &vs.iter().map(|v| v.iter().map(|&x| q().int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn sum_examples() {
        let e1 = sp(&[&[1, 0]]);
        let e2 = sp(&[&[0, 1]]);
        assert!(e1.sum(&e2).unwrap().is_full());
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert!(sp(&[&[1, 1]]).sum(&sp(&[&[1, -1]])).unwrap().is_full());
        assert!(e1.sum(&Subspace::zero(q(), 3)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let e1 = sp(&[&[1, 0]]);
        let e2 = sp(&[&[0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let diag = sp(&[&[1, 1]]);
        assert_eq!(Subspace::full(q(), 2).intersect(&diag).unwrap(), diag);
        let plane = sp(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(plane.intersect(&sp(&[&[1, 1, 0], &[0, 0, 1]])).unwrap(), sp(&[&[1, 1, 0]]));
    }

    #[test]
    fn preimage_examples() {
        let f = q();
        let b = sp(&[&[1, 0]]);
        assert!(Subspace::preimage(&Matrix::zeros(f, 2, 2), &b).unwrap().is_full());
        assert_eq!(Subspace::preimage(&Matrix::identity(f, 2), &b).unwrap(), b);
        let nil = Matrix::from_ints(f, 2, 2, &[0, 1, 0, 0]);
        assert!(Subspace::preimage(&nil, &b).unwrap().is_full());
        assert!(Subspace::preimage(&Matrix::identity(f, 3), &b).is_err());
    }

    #[test]
    fn complement_examples() {
        let f = q();
        let v = Subspace::full(f, 2);
        assert_eq!(Subspace::zero(f, 2).complement_in(&v).unwrap(), v);
        assert!(v.complement_in(&v).unwrap().is_zero());
        let a = sp(&[&[0, 1]]);
        assert_eq!(a.complement_in(&v).unwrap(), sp(&[&[1, 0]]));
        assert!(v.complement_in(&a).is_err());
    }

    #[test]
    fn quotient_map_kills_submodule() {
        let f = q();
        let inside = sp(&[&[1, 0, 0], &[0, 1, 1]]);
        let u = sp(&[&[1, 1, 1]]);
        let (qm, w) = u.quotient_map(&inside).unwrap();
        assert_eq!(qm.rows(), 1);
        assert!(is_zero_vec(&qm.mul_vec(&u.basis_vectors()[0])));
        assert_eq!(qm.mul_vec(&w[0]), vec![f.one()]);
    }
}
