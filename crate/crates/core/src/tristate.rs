//! Three-qubit pure states in the helicity basis and their reduced states.

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::smallmat::{Complex, ComplexMatrix, ZERO};
use crate::tol::ZERO_AMPLITUDE;

/// Final-state particle 1, 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitLabel(u8);

impl QubitLabel {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const ALL: [Self; 3] = [Self::ONE, Self::TWO, Self::THREE];

    pub fn new(value: u8) -> Result<Self> {
        match value {
            1..=3 => Ok(Self(value)),
            other => Err(Error::QubitLabel(other)),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Bit position inside a basis index; particle 1 is the most significant.
    pub(crate) fn shift(self) -> usize {
        3 - self.0 as usize
    }

    /// The two labels other than `self`, ascending.
    pub fn others(self) -> (Self, Self) {
        match self.0 {
            1 => (Self::TWO, Self::THREE),
            2 => (Self::ONE, Self::THREE),
            _ => (Self::ONE, Self::TWO),
        }
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Basis index of `|l1 l2 l3>` for helicities `+1`/`-1`.
pub fn basis_index(l1: i8, l2: i8, l3: i8) -> usize {
    let bit = |l: i8| usize::from(l < 0);
    4 * bit(l1) + 2 * bit(l2) + bit(l3)
}

/// A normalized pure state of three qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeQubitState {
    amp: [Complex; 8],
}

impl ThreeQubitState {
    /// Divides out the norm. The phase of every amplitude is kept.
    pub fn normalize(raw: [Complex; 8]) -> Result<Self> {
        if raw.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let largest = raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if largest <= ZERO_AMPLITUDE {
            return Err(Error::VanishingAmplitude);
        }
        // Rescale before summing squares so tiny inputs do not underflow.
        let scaled = raw.map(|z| z / largest);
        let norm = scaled.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Ok(Self {
            amp: scaled.map(|z| z / norm),
        })
    }

    pub fn basis(index: usize) -> Self {
        let mut amp = [ZERO; 8];
        amp[index] = Complex::new(1.0, 0.0);
        Self { amp }
    }

    /// `(|+++> + |--->) / sqrt 2`
    pub fn ghz() -> Self {
        let mut raw = [ZERO; 8];
        raw[0] = Complex::new(1.0, 0.0);
        raw[7] = Complex::new(1.0, 0.0);
        Self::normalize(raw).expect("nonzero")
    }

    /// `(|+--> + |-+-> + |--+>) / sqrt 3`
    pub fn w() -> Self {
        let mut raw = [ZERO; 8];
        for idx in [basis_index(1, -1, -1), basis_index(-1, 1, -1), basis_index(-1, -1, 1)] {
            raw[idx] = Complex::new(1.0, 0.0);
        }
        Self::normalize(raw).expect("nonzero")
    }

    /// Haar-random pure state: eight standard complex Gaussians, normalized.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let raw = std::array::from_fn(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
            if let Ok(s) = Self::normalize(raw) {
                return s;
            }
        }
    }

    pub fn amplitudes(&self) -> &[Complex; 8] {
        &self.amp
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amp).expect("dimension 8")
    }

    /// Reduced density matrix on `keep`, a nonempty proper subset of the
    /// three particles. Kept qubits are ordered by ascending label.
    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<ComplexMatrix> {
        let mut keep = keep.to_vec();
        keep.sort();
        keep.dedup();
        if keep.is_empty() || keep.len() == 3 {
            return Err(Error::InvalidQubits(format!(
                "keep set must be a nonempty proper subset of {{1,2,3}}, got {keep:?}"
            )));
        }
        let traced: Vec<QubitLabel> = QubitLabel::ALL.into_iter().filter(|l| !keep.contains(l)).collect();

        let scatter = |labels: &[QubitLabel], bits: usize| -> usize {
            labels
                .iter()
                .enumerate()
                .map(|(pos, l)| ((bits >> (labels.len() - 1 - pos)) & 1) << l.shift())
                .sum()
        };

        let dim = 1 << keep.len();
        let mut rho = ComplexMatrix::zeros(dim)?;
        for t in 0..(1 << traced.len()) {
            let base = scatter(&traced, t);
            for r in 0..dim {
                let ar = self.amp[base | scatter(&keep, r)];
                if ar == ZERO {
                    continue;
                }
                for c in 0..dim {
                    rho[(r, c)] += ar * self.amp[base | scatter(&keep, c)].conj();
                }
            }
        }
        Ok(rho)
    }

    /// Unnormalized states of the other two qubits conditioned on `label`
    /// being `+` and `-`, so that `|psi> = |+>|a> + |->|b>` up to ordering.
    pub fn conditional_pair(&self, label: QubitLabel) -> ([Complex; 4], [Complex; 4]) {
        let (j, k) = label.others();
        let mut plus = [ZERO; 4];
        let mut minus = [ZERO; 4];
        for idx in 0..8 {
            let sub = (((idx >> j.shift()) & 1) << 1) | ((idx >> k.shift()) & 1);
            if (idx >> label.shift()) & 1 == 0 {
                plus[sub] = self.amp[idx];
            } else {
                minus[sub] = self.amp[idx];
            }
        }
        (plus, minus)
    }

    /// Applies `u1 ⊗ u2 ⊗ u3`.
    pub fn apply_local(&self, u1: &ComplexMatrix, u2: &ComplexMatrix, u3: &ComplexMatrix) -> Result<Self> {
        for u in [u1, u2, u3] {
            if u.dim() != 2 {
                return Err(Error::DimensionMismatch(2, u.dim()));
            }
        }
        let op = u1.kron(u2)?.kron(u3)?;
        let out = op.mat_vec(&self.amp)?;
        Self::normalize(out.try_into().expect("length 8"))
    }
}

/// Partial trace of a multi-qubit density matrix, keeping the qubits at the
/// given positions (0 is the most significant factor).
pub fn partial_trace_matrix(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.dim().trailing_zeros() as usize;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() >= n || keep.iter().any(|&p| p >= n) {
        return Err(Error::InvalidQubits(format!("cannot keep {keep:?} of {n} qubits")));
    }
    let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
    let scatter = |positions: &[usize], bits: usize| -> usize {
        positions
            .iter()
            .enumerate()
            .map(|(i, &p)| ((bits >> (positions.len() - 1 - i)) & 1) << (n - 1 - p))
            .sum()
    };
    let dim = 1 << keep.len();
    let mut out = ComplexMatrix::zeros(dim)?;
    for t in 0..(1 << traced.len()) {
        let base = scatter(&traced, t);
        for r in 0..dim {
            for c in 0..dim {
                out[(r, c)] += rho[(base | scatter(&keep, r), base | scatter(&keep, c))];
            }
        }
    }
    Ok(out)
}
