//! Dense complex matrices of dimension 2, 4 or 8.
//!
//! Everything here is sized for one, two and three qubits. Storage is a fixed
//! inline array so matrices are `Copy` and never touch the heap. Basis index
//! convention for multi-qubit operators: helicity `+1` is bit 0, `-1` is bit 1,
//! and the first factor of a Kronecker product is the most significant bit.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::tol::{EPS_HERM, EPS_NUM};

pub type Complex = num_complex::Complex64;

const MAX_DIM: usize = 8;
const MAX_SWEEPS: usize = 64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex; MAX_DIM * MAX_DIM],
}

/// One eigenpair of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<Complex>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [ZERO; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex]) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, entries.len()));
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        m.data[..dim * dim].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, 0.0);
        }
        Ok(m)
    }

    /// `|v><v|` for a vector of length 2, 4 or 8.
    pub fn outer(v: &[Complex]) -> Result<Self> {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn pauli_y() -> Self {
        let i = Complex::i();
        Self::from_rows(2, &[ZERO, -i, i, ZERO]).expect("2x2 literal")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    /// Row-major view of the live entries.
    pub fn entries(&self) -> &[Complex] {
        &self.data[..self.dim * self.dim]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Kronecker product; `self` carries the slow (most significant) indices.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        if n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        Self::from_fn(n, |i, j| self[(i / nb, j / nb)] * other[(i % nb, j % nb)])
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut out = *self;
        for z in out.data[..self.dim * self.dim].iter_mut() {
            *z = z.conj();
        }
        out
    }

    pub fn scale(&self, factor: Complex) -> Self {
        let mut out = *self;
        for z in out.data[..self.dim * self.dim].iter_mut() {
            *z *= factor;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = *self;
        for (z, w) in out.data.iter_mut().zip(other.data.iter()) {
            *z += w;
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `A - A^H`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(A^2)` of a unit-trace Hermitian matrix.
    pub fn purity(&self) -> Result<f64> {
        let herm = self.hermiticity_error();
        if herm > EPS_HERM {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > EPS_NUM {
            return Err(Error::NotNormalized(tr.re));
        }
        // Tr(A A) = sum |a_ij|^2 for Hermitian A.
        Ok(self.entries().iter().map(|z| z.norm_sqr()).sum())
    }

    fn frobenius(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues come back sorted in descending order with
    /// orthonormal eigenvectors.
    pub fn hermitian_eig(&self) -> Result<Vec<EigenPair>> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = self.hermiticity_error();
        if herm > EPS_HERM {
            return Err(Error::NotHermitian(herm));
        }
        let n = self.dim;
        let mut a = *self;
        for i in 0..n {
            for j in i..n {
                let z = 0.5 * (self[(i, j)] + self[(j, i)].conj());
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let mut v = Self::identity(n)?;
        let negligible = f64::EPSILON * a.frobenius();

        let mut converged = false;
        for sweep in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
                .map(|(p, q)| a[(p, q)].norm_sqr())
                .sum();
            if off.sqrt() <= negligible {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let b = a[(p, q)];
                    let abs_b = b.norm();
                    if abs_b == 0.0 {
                        continue;
                    }
                    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                    let g = 100.0 * abs_b;
                    if abs_b <= negligible
                        || (sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs())
                    {
                        a[(p, q)] = ZERO;
                        a[(q, p)] = ZERO;
                        continue;
                    }
                    rotate(&mut a, &mut v, p, q, b / abs_b, abs_b);
                }
            }
        }
        if !converged {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }

        let mut pairs: Vec<EigenPair> = (0..n)
            .map(|k| EigenPair {
                value: a[(k, k)].re,
                vector: (0..n).map(|i| v[(i, k)]).collect(),
            })
            .collect();
        pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
        Ok(pairs)
    }

    /// `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn from_spectrum(pairs: &[EigenPair], f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = pairs.first().map_or(0, |p| p.vector.len());
        let mut out = Self::zeros(n)?;
        for pair in pairs {
            let w = f(pair.value);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += w * pair.vector[i] * pair.vector[j].conj();
                }
            }
        }
        Ok(out)
    }

    /// Principal square root of a Hermitian positive semi-definite matrix.
    /// Eigenvalues in `[-EPS_HERM, 0)` are treated as zero.
    pub fn hermitian_sqrt(&self) -> Result<Self> {
        let pairs = self.hermitian_eig()?;
        if let Some(low) = pairs.last().map(|p| p.value).filter(|&l| l < -EPS_HERM) {
            return Err(Error::NegativeEigenvalue(low));
        }
        Self::from_spectrum(&pairs, |l| l.max(0.0).sqrt())
    }

    /// Singular values in descending order, by one-sided (Hestenes) Jacobi
    /// orthogonalization of the columns. Small singular values are resolved to
    /// absolute accuracy of order `eps * ||A||`.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.dim;
        let mut cols: Vec<Vec<Complex>> = (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)]).collect())
            .collect();
        // Columns below this squared norm are noise at the matrix scale.
        let floor = (f64::EPSILON * self.frobenius()).powi(2);
        let orth_tol = n as f64 * f64::EPSILON;

        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                    let abs_g = gamma.norm();
                    if abs_g == 0.0 || alpha.min(beta) <= floor || abs_g <= orth_tol * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = (gamma / abs_g).conj();
                    let zeta = (beta - alpha) / (2.0 * abs_g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let (left, right) = cols.split_at_mut(q);
                    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let yq = *y * phase;
                        let xp = *x;
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        Ok(sv)
    }
}

/// Applies `A <- J^H A J` and `V <- V J` for the rotation that annihilates
/// `A[p][q] = abs_b * phase`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, phase: Complex, abs_b: f64) {
    let n = a.dim;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * abs_b);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph = phase.conj();
    let (jpp, jpq, jqp, jqq) = (Complex::new(c, 0.0), Complex::new(s, 0.0), -s * ph, c * ph);

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
