//! Entanglement measures of a three-qubit pure state.
//!
//! Pairwise entanglement uses the Wootters concurrence of the two-qubit
//! marginal. One-to-other entanglement uses `sqrt(2 (1 - Tr rho^2))` of the
//! bipartition, genuine tripartite entanglement the normalized Heron area of
//! the triangle with the three one-to-other concurrences as sides.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallmat::{ComplexMatrix, ONE};
use crate::tol::{EPS_HERM, EPS_NUM, RANK_CUTOFF};
use crate::tristate::{QubitLabel, ThreeQubitState};

/// The ten scalars describing the entanglement of one state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub c12: f64,
    pub c13: f64,
    pub c23: f64,
    pub c1_23: f64,
    pub c2_13: f64,
    pub c3_12: f64,
    pub f3: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl EntanglementReport {
    pub fn pair(&self, i: QubitLabel, j: QubitLabel) -> f64 {
        match (i.value().min(j.value()), i.value().max(j.value())) {
            (1, 2) => self.c12,
            (1, 3) => self.c13,
            (2, 3) => self.c23,
            _ => 0.0,
        }
    }

    pub fn one_to_other(&self, i: QubitLabel) -> f64 {
        [self.c1_23, self.c2_13, self.c3_12][i.value() as usize - 1]
    }

    pub fn monogamy(&self, i: QubitLabel) -> f64 {
        [self.m1, self.m2, self.m3][i.value() as usize - 1]
    }

    /// Fields in serialization order.
    pub fn values(&self) -> [f64; 10] {
        [
            self.c12, self.c13, self.c23, self.c1_23, self.c2_13, self.c3_12, self.f3, self.m1, self.m2, self.m3,
        ]
    }

    pub fn from_values(v: [f64; 10]) -> Self {
        Self {
            c12: v[0],
            c13: v[1],
            c23: v[2],
            c1_23: v[3],
            c2_13: v[4],
            c3_12: v[5],
            f3: v[6],
            m1: v[7],
            m2: v[8],
            m3: v[9],
        }
    }

    /// Largest fieldwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Clamps a concurrence-like value into `[0, 1]`, rejecting anything outside
/// the rounding window.
fn clamp_unit(quantity: &'static str, value: f64) -> Result<f64> {
    if !(-EPS_NUM..=1.0 + EPS_NUM).contains(&value) {
        return Err(Error::BoundViolation { quantity, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

fn check_density(rho: &ComplexMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch(dim, rho.dim()));
    }
    let herm = rho.hermiticity_error();
    if herm > EPS_HERM {
        return Err(Error::NotHermitian(herm));
    }
    let tr = rho.trace();
    if (tr - ONE).norm() > EPS_NUM {
        return Err(Error::NotNormalized(tr.re));
    }
    Ok(())
}

/// Wootters concurrence `max(0, eta1 - eta2 - eta3 - eta4)` of a two-qubit
/// density matrix.
///
/// The `eta_i` are the singular values of `sqrt(rho) (Y⊗Y) sqrt(rho)^*`,
/// which equal the square roots of the eigenvalues of
/// `sqrt(rho) rho~ sqrt(rho)`. Taking singular values directly keeps the small
/// `eta_i` accurate to machine precision instead of the square root of it.
/// Eigenvalues of `rho` below `RANK_CUTOFF` times the largest are set to zero
/// before the square root for the same reason.
pub fn concurrence_mixed(rho: &ComplexMatrix) -> Result<f64> {
    check_density(rho, 4)?;
    let pairs = rho.hermitian_eig()?;
    let largest = pairs[0].value;
    let smallest = pairs[3].value;
    if smallest < -EPS_HERM {
        return Err(Error::NegativeEigenvalue(smallest));
    }
    let cutoff = RANK_CUTOFF * largest;
    let sqrt_rho = ComplexMatrix::from_spectrum(&pairs, |l| if l > cutoff { l.sqrt() } else { 0.0 })?;

    let y = ComplexMatrix::pauli_y();
    let yy = y.kron(&y)?;
    let a = sqrt_rho.matmul(&yy)?.matmul(&sqrt_rho.conj())?;
    let eta = a.singular_values()?;
    let c = eta[0] - eta[1] - eta[2] - eta[3];
    if c > 1.0 + EPS_NUM {
        return Err(Error::BoundViolation {
            quantity: "concurrence",
            value: c,
        });
    }
    Ok(c.clamp(0.0, 1.0))
}

/// `sqrt(2 (1 - Tr rho_B^2))` for a marginal `rho_B` of a pure bipartite
/// state.
pub fn concurrence_from_purity(rho_b: &ComplexMatrix) -> Result<f64> {
    let purity = rho_b.purity()?;
    let linear_entropy = 1.0 - purity;
    if linear_entropy < -EPS_NUM {
        return Err(Error::BoundViolation {
            quantity: "1 - purity",
            value: linear_entropy,
        });
    }
    clamp_unit("concurrence", (2.0 * linear_entropy.max(0.0)).sqrt())
}

/// One-to-other concurrence `C_i(jk)`.
///
/// For `|psi> = |+>|a> + |->|b>` across the cut `i | jk`,
/// `2 (1 - Tr rho_jk^2) = 4 (|a|^2 |b|^2 - |<a,b>|^2)`, which is evaluated as
/// the sum of squared 2x2 minors `|a_k b_l - a_l b_k|^2` (Lagrange's
/// identity) so that product states give zero without cancellation.
pub fn concurrence_one_to_other(s: &ThreeQubitState, i: QubitLabel) -> Result<f64> {
    let (a, b) = s.conditional_pair(i);
    let mut det = 0.0;
    for k in 0..4 {
        for l in (k + 1)..4 {
            det += (a[k] * b[l] - a[l] * b[k]).norm_sqr();
        }
    }
    clamp_unit("one-to-other concurrence", 2.0 * det.sqrt())
}

/// Concurrence of the marginal on particles `i` and `j`.
pub fn concurrence_pair(s: &ThreeQubitState, i: QubitLabel, j: QubitLabel) -> Result<f64> {
    if i == j {
        return Err(Error::InvalidQubits(format!("pair concurrence needs two distinct particles, got {i} twice")));
    }
    concurrence_mixed(&s.partial_trace(&[i, j])?)
}

/// CKW monogamy measure `C_i(jk)^2 - C_ij^2 - C_ik^2`.
pub fn monogamy_measure(s: &ThreeQubitState, i: QubitLabel) -> Result<f64> {
    let (j, k) = i.others();
    let whole = concurrence_one_to_other(s, i)?;
    let cij = concurrence_pair(s, i, j)?;
    let cik = concurrence_pair(s, i, k)?;
    Ok(whole * whole - cij * cij - cik * cik)
}

/// Normalized area of the triangle with sides `c1`, `c2`, `c3`:
/// `sqrt(16/3 Q (Q - c1)(Q - c2)(Q - c3))` with `Q` the half perimeter.
pub fn concurrence_triangle_area(c1: f64, c2: f64, c3: f64) -> Result<f64> {
    let q = 0.5 * (c1 + c2 + c3);
    let mut product = 16.0 / 3.0 * q;
    for side in [c1, c2, c3] {
        let factor = q - side;
        if factor < -EPS_NUM {
            return Err(Error::BoundViolation {
                quantity: "Heron factor",
                value: factor,
            });
        }
        product *= factor.max(0.0);
    }
    clamp_unit("F3", product.max(0.0).sqrt())
}

/// Genuine tripartite entanglement `F3`.
pub fn f3(s: &ThreeQubitState) -> Result<f64> {
    let [c1, c2, c3] = QubitLabel::ALL.map(|l| concurrence_one_to_other(s, l));
    concurrence_triangle_area(c1?, c2?, c3?)
}

pub fn full_report(s: &ThreeQubitState) -> Result<EntanglementReport> {
    use QubitLabel as L;
    let c12 = concurrence_pair(s, L::ONE, L::TWO)?;
    let c13 = concurrence_pair(s, L::ONE, L::THREE)?;
    let c23 = concurrence_pair(s, L::TWO, L::THREE)?;
    let c1_23 = concurrence_one_to_other(s, L::ONE)?;
    let c2_13 = concurrence_one_to_other(s, L::TWO)?;
    let c3_12 = concurrence_one_to_other(s, L::THREE)?;
    let f3 = concurrence_triangle_area(c1_23, c2_13, c3_12)?;
    Ok(EntanglementReport {
        c12,
        c13,
        c23,
        c1_23,
        c2_13,
        c3_12,
        f3,
        m1: c1_23 * c1_23 - c12 * c12 - c13 * c13,
        m2: c2_13 * c2_13 - c12 * c12 - c23 * c23,
        m3: c3_12 * c3_12 - c13 * c13 - c23 * c23,
    })
}
