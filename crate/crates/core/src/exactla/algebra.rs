//! Unital subalgebras of `M_n(K)`: Jacobson radical and the local-ring test.
//!
//! Over `Q`, and over `F_p` with `p > n`, the radical is the kernel of the trace
//! form. For small `p` the trace form is refined by the lifted power traces
//! `g_i(a) = Tr(ã^{p^i}) / p^i mod p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::field::{Field, Scalar};
use crate::exactla::matrix::{Matrix, Vector};
use crate::exactla::normal_form::vector_min_poly;
use crate::exactla::poly::Poly;
use crate::exactla::subspace::Subspace;

#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
    space: Subspace,
}

fn flat(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unflat(field: Field, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::new(field, n, n, v.to_vec())
}

impl MatrixAlgebra {
    /// The span of `spanning`, which must be closed under products and contain 1.
    pub fn new(field: Field, n: usize, spanning: &[Matrix]) -> Self {
        let space = Subspace::span(field, n * n, &spanning.iter().map(flat).collect::<Vec<_>>());
        let basis = space.basis_vectors().iter().map(|v| unflat(field, n, v)).collect();
        Self { field, n, basis, space }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(&flat(m))
    }

    fn combine(&self, items: &[Matrix], coeffs: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.n, self.n);
        for (m, c) in items.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// A basis of the Jacobson radical.
    pub fn radical(&self) -> Result<Vec<Matrix>> {
        let mut ideal = self.basis.clone();
        let levels = match self.field {
            Field::Rational => 0,
            Field::Prime(p) => {
                let (mut l, mut q) = (0u32, p as usize);
                while q <= self.n {
                    l += 1;
                    q = q.saturating_mul(p as usize);
                }
                l
            }
        };
        for i in 0..=levels {
            if ideal.is_empty() {
                break;
            }
            let mut form = Matrix::zeros(self.field, self.basis.len(), ideal.len());
            for (k, c) in ideal.iter().enumerate() {
                for (j, b) in self.basis.iter().enumerate() {
                    form[(j, k)] = self.power_trace(&c.mul(b), i)?;
                }
            }
            ideal = form.kernel().iter().map(|v| self.combine(&ideal, v)).collect();
        }
        self.check_radical(&ideal)?;
        Ok(ideal)
    }

    fn power_trace(&self, a: &Matrix, level: u32) -> Result<Scalar> {
        match self.field {
            Field::Rational => Ok(a.trace()),
            Field::Prime(p) if level == 0 => Ok(a.trace()).map(|t| Scalar::Mod(t.residue().unwrap(), p)),
            Field::Prime(p) => {
                let n = self.n;
                let lift: Vec<Vec<BigInt>> =
                    (0..n).map(|r| a.row(r).iter().map(|s| BigInt::from(s.residue().unwrap())).collect()).collect();
                let pk = BigInt::from(p).pow(level);
                let modulus = &pk * BigInt::from(p);
                let e = pk.to_u64().ok_or_else(|| Error::Internal("exponent overflow".into()))?;
                let pw = int_matrix_pow(&lift, e, &modulus);
                let tr = (0..n).fold(BigInt::zero(), |acc, i| acc + &pw[i][i]).mod_floor(&modulus);
                if !tr.mod_floor(&pk).is_zero() {
                    return Err(Error::Internal("lifted trace not divisible".into()));
                }
                let v = (tr / &pk).mod_floor(&BigInt::from(p));
                Ok(Scalar::Mod(v.to_u32().unwrap(), p))
            }
        }
    }

    fn check_radical(&self, ideal: &[Matrix]) -> Result<()> {
        let span = Subspace::span(self.field, self.n * self.n, &ideal.iter().map(flat).collect::<Vec<_>>());
        for r in ideal {
            if !r.pow(self.n as u64).is_zero() {
                return Err(Error::Internal("radical element is not nilpotent".into()));
            }
            for b in &self.basis {
                if !span.contains(&flat(&b.mul(r))) || !span.contains(&flat(&r.mul(b))) {
                    return Err(Error::Internal("radical is not an ideal".into()));
                }
            }
        }
        Ok(())
    }

    /// Whether the algebra is local, i.e. its quotient by the radical is a division ring.
    pub fn is_local(&self) -> Result<bool> {
        if self.basis.is_empty() {
            return Ok(false);
        }
        let rad = self.radical()?;
        let rad_space = Subspace::span(self.field, self.n * self.n, &rad.iter().map(flat).collect::<Vec<_>>());
        let (q, reps) = rad_space.quotient_map(&self.space)?;
        let reps: Vec<Matrix> = reps.iter().map(|v| unflat(self.field, self.n, v)).collect();
        let d = reps.len();
        if d == 1 {
            return Ok(true);
        }
        let class = |m: &Matrix| q.mul_vec(&flat(m));
        for a in &reps {
            for b in &reps {
                if class(&a.mul(b).sub(&b.mul(a))).iter().any(|s| !s.is_zero()) {
                    return match self.field {
                        // finite division rings are commutative
                        Field::Prime(_) => Ok(false),
                        Field::Rational => {
                            Err(Error::Unsupported("non-commutative semisimple quotient over Q".into()))
                        }
                    };
                }
            }
        }
        match self.field {
            Field::Prime(p) => {
                let cols: Vec<Vector> = reps.iter().map(|r| class(&r.pow(p as u64))).collect();
                let frob = Matrix::from_columns(self.field, d, &cols).sub(&Matrix::identity(self.field, d));
                Ok(d - frob.rank() == 1)
            }
            Field::Rational => {
                let one = class(&Matrix::identity(self.field, self.n));
                for t in 1..=(4 * d as i64 + 4) {
                    let coeffs: Vec<Scalar> = (0..d).map(|k| self.field.int(t.pow(k as u32))).collect();
                    let a = self.combine(&reps, &coeffs);
                    let cols: Vec<Vector> = reps.iter().map(|r| class(&a.mul(r))).collect();
                    let left = Matrix::from_columns(self.field, d, &cols);
                    let mp = vector_min_poly(&left, &one);
                    if mp.degree() == Some(d) {
                        return rational_irreducible(&mp);
                    }
                }
                Err(Error::Unsupported("no primitive element found for the semisimple quotient".into()))
            }
        }
    }
}

fn int_matrix_pow(a: &[Vec<BigInt>], mut e: u64, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &x[i][k] * &y[k][j]).mod_floor(modulus))
                    .collect()
            })
            .collect()
    };
    let mut acc: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u32; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Irreducibility of a squarefree rational polynomial, proved by intersecting
/// the possible factor degrees of its reductions modulo small primes.
pub fn rational_irreducible(f: &Poly) -> Result<bool> {
    let deg = f.degree().ok_or_else(|| Error::Internal("zero polynomial".into()))?;
    if deg <= 1 {
        return Ok(deg == 1);
    }
    let rats: Vec<_> = f.coeffs().iter().map(|c| c.as_rational().expect("rational polynomial").clone()).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * num_rational::BigRational::from_integer(den.clone())).to_integer()).collect();
    if rational_root(&ints).is_some() {
        return Ok(false);
    }
    let mut possible: Vec<bool> = vec![true; deg + 1];
    for &p in SMALL_PRIMES.iter() {
        let pb = BigInt::from(p);
        if ints[deg].mod_floor(&pb).is_zero() {
            continue;
        }
        let field = Field::Prime(p);
        let reduced =
            Poly::new(field, ints.iter().map(|c| Scalar::Mod(c.mod_floor(&pb).to_u32().unwrap(), p)).collect());
        let Some(degs) = reduced.factor_degrees() else { continue };
        let mut sums = vec![false; deg + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=deg).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for s in 0..=deg {
            possible[s] &= sums[s];
        }
        if (1..deg).all(|s| !possible[s]) {
            return Ok(true);
        }
    }
    Err(Error::Unsupported(format!("could not decide irreducibility of {f} over Q")))
}

/// A rational root of an integer polynomial, by the rational root theorem.
fn rational_root(c: &[BigInt]) -> Option<num_rational::BigRational> {
    use num_rational::BigRational;
    if c[0].is_zero() {
        return Some(BigRational::zero());
    }
    let divisors = |n: &BigInt| -> Option<Vec<BigInt>> {
        let n = n.abs();
        let lim = n.to_u64().filter(|&v| v <= 1_000_000)?;
        Some((1..=lim).filter(|d| (&n % BigInt::from(*d)).is_zero()).map(BigInt::from).collect())
    };
    let (Some(ps), Some(qs)) = (divisors(&c[0]), divisors(c.last().unwrap())) else { return None };
    for p in &ps {
        for q in &qs {
            for s in [BigInt::one(), -BigInt::one()] {
                let r = BigRational::new(p * &s, q.clone());
                let v = c.iter().rev().fold(BigRational::zero(), |acc, k| acc * &r + BigRational::from_integer(k.clone()));
                if v.is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}
