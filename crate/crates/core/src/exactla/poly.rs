//! Univariate polynomials over a [`Field`], coefficients stored low degree first.

use std::fmt;

use crate::exactla::field::{Field, Scalar};
use crate::exactla::matrix::{vec_add, vec_scale, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::new(field, vec![field.one()])
    }

    /// `x^k`.
    pub fn monomial(field: Field, k: usize) -> Self {
        let mut c = vec![field.zero(); k + 1];
        c[k] = field.one();
        Self::new(field, c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv();
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, rhs: &Poly) -> Poly {
        self.mul(rhs).div_exact(&self.gcd(rhs)).monic()
    }

    /// The largest divisor of `self` whose irreducible factors all divide `other`.
    pub fn smooth_part(&self, other: &Poly) -> Poly {
        let mut rest = self.clone();
        let mut acc = Poly::one(self.field);
        loop {
            let g = rest.gcd(other);
            if g.degree().unwrap_or(0) == 0 {
                return acc.monic();
            }
            acc = acc.mul(&g);
            rest = rest.div_exact(&g);
        }
    }

    pub fn derivative(&self) -> Poly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.int(i as i64)).collect();
        Poly::new(self.field, c)
    }

    pub fn rem(&self, m: &Poly) -> Poly {
        self.div_rem(m).1
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial over a
    /// prime field, by distinct-degree factorisation. `None` over `Q` or when
    /// `self` is not squarefree.
    pub fn factor_degrees(&self) -> Option<Vec<usize>> {
        let p = match self.field {
            Field::Prime(p) => p as u64,
            Field::Rational => return None,
        };
        if self.is_zero() || (self.degree() > Some(0) && !self.is_squarefree()) {
            return None;
        }
        let x = Poly::monomial(self.field, 1);
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = x.rem(&f);
        let mut d = 1;
        while f.degree().unwrap() > 0 {
            if 2 * d > f.degree().unwrap() {
                out.push(f.degree().unwrap());
                break;
            }
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap();
            if gd > 0 {
                out.extend(std::iter::repeat(d).take(gd / d));
                f = f.div_exact(&g);
                h = h.rem(&f);
            }
            d += 1;
        }
        Some(out)
    }

    /// Irreducibility over a prime field.
    pub fn is_irreducible(&self) -> Option<bool> {
        let deg = self.degree()?;
        if deg == 0 {
            return Some(false);
        }
        if !self.is_squarefree() {
            return Some(false);
        }
        self.factor_degrees().map(|d| d.len() == 1)
    }

    /// `p(A) v` by Horner's rule.
    pub fn apply(&self, a: &Matrix, v: &[Scalar]) -> Vector {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            acc = vec_add(&a.mul_vec(&acc), &vec_scale(v, c));
        }
        acc
    }

    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = a.mul(&acc).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, `-c_i` in the last column.
    pub fn companion(&self) -> Matrix {
        let m = self.monic();
        let d = m.degree().expect("companion of zero polynomial");
        let mut c = Matrix::zeros(self.field, d, d);
        for i in 1..d {
            c[(i, i - 1)] = self.field.one();
        }
        for i in 0..d {
            c[(i, d - 1)] = -&m.coeffs[i];
        }
        c
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
