//! Linear systems assembled equation by equation, typically with matrix-valued unknowns.

use crate::exactla::field::{Field, Scalar};
use crate::exactla::matrix::{Matrix, Vector};

/// A block of unknowns forming a `rows x cols` matrix, laid out row-major.
#[derive(Debug, Clone, Copy)]
pub struct MatrixUnknown {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl MatrixUnknown {
    pub fn at(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        self.offset + i * self.cols + j
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reads this block out of a solution vector.
    pub fn extract(&self, field: Field, solution: &[Scalar]) -> Matrix {
        Matrix::new(field, self.rows, self.cols, solution[self.offset..self.offset + self.len()].to_vec())
    }
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<Vector>,
    rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(field: Field) -> Self {
        Self { field, unknowns: 0, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Reserves a fresh matrix of unknowns. Must be called before adding equations.
    pub fn matrix_unknown(&mut self, rows: usize, cols: usize) -> MatrixUnknown {
        assert!(self.rows.is_empty(), "allocate unknowns before equations");
        let m = MatrixUnknown { offset: self.unknowns, rows, cols };
        self.unknowns += rows * cols;
        m
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// `sum coeff * x[index] = rhs`; repeated indices accumulate.
    pub fn add_equation(&mut self, terms: &[(usize, Scalar)], rhs: Scalar) {
        let mut row = vec![self.field.zero(); self.unknowns];
        for (i, c) in terms {
            row[*i] = &row[*i] + c;
        }
        if row.iter().all(Scalar::is_zero) && rhs.is_zero() {
            return;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn coefficient_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.unknowns, &self.rows)
    }

    /// Some solution, or `None` when inconsistent.
    pub fn solve(&self) -> Option<Vector> {
        if self.rows.is_empty() {
            return Some(vec![self.field.zero(); self.unknowns]);
        }
        self.coefficient_matrix().solve(&self.rhs)
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vector> {
        if self.rows.is_empty() {
            return (0..self.unknowns).map(|i| crate::exactla::matrix::unit_vec(self.field, self.unknowns, i)).collect();
        }
        self.coefficient_matrix().kernel()
    }
}
