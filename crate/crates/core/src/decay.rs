//! Helicity states of the three final-state fermions for scalar, vector and
//! tensor contact interactions, plus the closed-form concurrences they admit.
//!
//! Frame: parent at rest, `z` along `p1`, `p2` in the `xz` half-plane with
//! positive `x`. `theta2` and `theta3` are the opening angles of particles 2
//! and 3 from particle 1; the parent spin points along `(spin_theta,
//! spin_phi)`. Final-state fermions are massless. Kinematic prefactors and
//! overall signs are common to all helicity amplitudes and are dropped before
//! normalization.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::EntanglementReport;
use crate::smallmat::{Complex, ZERO};
use crate::tristate::{basis_index, ThreeQubitState};

/// Slack on the physical-region test `theta2 + theta3 >= pi`.
const PHYSICAL_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interaction {
    Scalar,
    Vector,
    Tensor,
}

impl FromStr for Interaction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "scalar" => Ok(Self::Scalar),
            "vector" => Ok(Self::Vector),
            "tensor" => Ok(Self::Tensor),
            other => Err(Error::Request(format!("unknown interaction `{other}`"))),
        }
    }
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Scalar => "scalar",
            Self::Vector => "vector",
            Self::Tensor => "tensor",
        })
    }
}

/// Four real couplings of one interaction.
///
/// * scalar: `(c_S, c_A, d_S, d_A)` with `c = c_S + i c_A`, `d = d_S + i d_A`
/// * vector: `(c_L, c_R, d_L, d_R)`
/// * tensor: `(c_M, c_E, d_M, d_E)` with `c = c_M + i c_E`, `d = d_M + i d_E`
///
/// Scalar and tensor couplings are rescaled to `|c| = |d| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    kind: Interaction,
    g: [f64; 4],
}

impl CouplingSet {
    pub fn new(kind: Interaction, g: [f64; 4]) -> Result<Self> {
        if g.iter().any(|x| !x.is_finite()) {
            return Err(Error::Couplings("couplings must be finite".into()));
        }
        match kind {
            Interaction::Vector => {
                if g.iter().all(|&x| x == 0.0) {
                    return Err(Error::Couplings("all four couplings are zero".into()));
                }
                Ok(Self { kind, g })
            }
            Interaction::Scalar | Interaction::Tensor => {
                let c = Complex::new(g[0], g[1]);
                let d = Complex::new(g[2], g[3]);
                if c.norm() == 0.0 || d.norm() == 0.0 {
                    return Err(Error::Couplings(format!(
                        "{kind} couplings need nonzero c = g1 + i g2 and d = g3 + i g4"
                    )));
                }
                let (c, d) = (c / c.norm(), d / d.norm());
                Ok(Self {
                    kind,
                    g: [c.re, c.im, d.re, d.im],
                })
            }
        }
    }

    /// All four couplings equal to `1/sqrt 2`.
    pub fn uniform(kind: Interaction) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(kind, [h; 4]).expect("nonzero couplings")
    }

    pub fn kind(&self) -> Interaction {
        self.kind
    }

    pub fn values(&self) -> [f64; 4] {
        self.g
    }

    fn c(&self) -> Complex {
        Complex::new(self.g[0], self.g[1])
    }

    fn d(&self) -> Complex {
        Complex::new(self.g[2], self.g[3])
    }
}

/// Phase-space point and parent spin direction, all in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayConfiguration {
    pub theta2: f64,
    pub theta3: f64,
    pub spin_theta: f64,
    pub spin_phi: f64,
}

impl DecayConfiguration {
    pub fn new(theta2: f64, theta3: f64, spin_theta: f64, spin_phi: f64) -> Result<Self> {
        let check = |name, value: f64, ok: bool, domain| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::AngleOutOfRange { name, value, domain })
            }
        };
        check("theta2", theta2, (0.0..=PI).contains(&theta2), "[0, pi]")?;
        check("theta3", theta3, (0.0..=PI).contains(&theta3), "[0, pi]")?;
        check("spin_theta", spin_theta, (0.0..=PI).contains(&spin_theta), "[0, pi]")?;
        check("spin_phi", spin_phi, (0.0..TAU).contains(&spin_phi), "[0, 2 pi)")?;
        Ok(Self {
            theta2,
            theta3,
            spin_theta,
            spin_phi,
        })
    }

    /// Massless three-body kinematics requires `theta2 + theta3 >= pi`.
    pub fn is_physical(&self) -> bool {
        self.theta2 + self.theta3 >= PI - PHYSICAL_SLACK
    }

    /// Same point with particles 2 and 3 exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            theta2: self.theta3,
            theta3: self.theta2,
            ..*self
        }
    }
}

/// Half-angle sines and cosines used by every amplitude.
struct HalfAngles {
    st: f64,
    ct: f64,
    s2: f64,
    c2: f64,
    s3: f64,
    c3: f64,
    phase: Complex,
}

impl HalfAngles {
    fn of(cfg: &DecayConfiguration) -> Self {
        let (st, ct) = (0.5 * cfg.spin_theta).sin_cos();
        let (s2, c2) = (0.5 * cfg.theta2).sin_cos();
        let (s3, c3) = (0.5 * cfg.theta3).sin_cos();
        Self {
            st,
            ct,
            s2,
            c2,
            s3,
            c3,
            phase: Complex::from_polar(1.0, cfg.spin_phi),
        }
    }
}

fn expect_kind(g: &CouplingSet, kind: Interaction) -> Result<()> {
    if g.kind == kind {
        Ok(())
    } else {
        Err(Error::Couplings(format!("expected {kind} couplings, got {}", g.kind)))
    }
}

/// Scalar/pseudoscalar exchange. The common factor `sin((theta2 - theta3)/2)`
/// is cancelled, so the state is defined at `theta2 = theta3` as well.
pub fn scalar_state(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<ThreeQubitState> {
    expect_kind(g, Interaction::Scalar)?;
    let h = HalfAngles::of(cfg);
    let (c, d) = (g.c(), g.d());
    let mut raw = [ZERO; 8];
    raw[basis_index(-1, -1, -1)] = c * d * h.phase * h.st;
    raw[basis_index(-1, 1, 1)] = -c * d.conj() * h.phase * h.st;
    raw[basis_index(1, -1, -1)] = c.conj() * d * h.ct;
    raw[basis_index(1, 1, 1)] = -c.conj() * d.conj() * h.ct;
    ThreeQubitState::normalize(raw)
}

/// Unnormalized vector-exchange amplitudes `[M_LL, M_LR, M_RL, M_RR]` on
/// `|-+->`, `|--+>`, `|++->`, `|+-+>`.
pub fn vector_coefficients(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<[Complex; 4]> {
    expect_kind(g, Interaction::Vector)?;
    let h = HalfAngles::of(cfg);
    let scale = g.g.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let [cl, cr, dl, dr] = g.g.map(|x| x / scale);
    let e = h.phase;
    Ok([
        cl * dl * h.s3 * (h.ct * h.c2 + e * h.st * h.s2),
        cl * dr * h.s2 * (h.ct * h.c3 + e * h.st * h.s3),
        cr * dl * h.s2 * (h.ct * h.s3 - e * h.st * h.c3),
        cr * dr * h.s3 * (h.ct * h.s2 - e * h.st * h.c2),
    ])
}

/// Vector/axial-vector exchange.
pub fn vector_state(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<ThreeQubitState> {
    let [ll, lr, rl, rr] = vector_coefficients(cfg, g)?;
    let mut raw = [ZERO; 8];
    raw[basis_index(-1, 1, -1)] = ll;
    raw[basis_index(-1, -1, 1)] = lr;
    raw[basis_index(1, 1, -1)] = rl;
    raw[basis_index(1, -1, 1)] = rr;
    ThreeQubitState::normalize(raw)
}

/// Unnormalized tensor-exchange amplitudes `(M_R, M_L)` on `|+++>`, `|--->`.
pub fn tensor_coefficients(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<(Complex, Complex)> {
    expect_kind(g, Interaction::Tensor)?;
    let h = HalfAngles::of(cfg);
    let (c, d) = (g.c(), g.d());
    let s32 = (0.5 * (cfg.theta3 - cfg.theta2)).sin();
    let m_r = c.conj() * d.conj() * (2.0 * h.phase * h.st * h.s2 * h.s3 + h.ct * s32);
    let m_l = c * d * (-h.phase * h.st * s32 + 2.0 * h.ct * h.s2 * h.s3);
    Ok((m_r, m_l))
}

/// Tensor/pseudotensor exchange: `M_R |+++> + M_L |--->`.
pub fn tensor_state(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<ThreeQubitState> {
    let (m_r, m_l) = tensor_coefficients(cfg, g)?;
    let mut raw = [ZERO; 8];
    raw[basis_index(1, 1, 1)] = m_r;
    raw[basis_index(-1, -1, -1)] = m_l;
    ThreeQubitState::normalize(raw)
}

/// Dispatches on the coupling kind.
pub fn spin_state(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<ThreeQubitState> {
    match g.kind {
        Interaction::Scalar => scalar_state(cfg, g),
        Interaction::Vector => vector_state(cfg, g),
        Interaction::Tensor => tensor_state(cfg, g),
    }
}

/// Closed-form concurrences of the vector state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorClosedForm {
    pub c23: f64,
    pub c1_23: f64,
    /// Equal to `C3(12)`.
    pub c2_13: f64,
}

pub fn closed_form_vector(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<VectorClosedForm> {
    let coeffs = vector_coefficients(cfg, g)?;
    let largest = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest <= crate::tol::ZERO_AMPLITUDE {
        return Err(Error::VanishingAmplitude);
    }
    let scaled = coeffs.map(|z| z / largest);
    let norm = scaled.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let [ll, lr, rl, rr] = scaled.map(|z| z / norm);
    Ok(VectorClosedForm {
        c23: 2.0 * (ll * lr.conj() + rl * rr.conj()).norm(),
        c1_23: 2.0 * (rr * ll - lr * rl).norm(),
        c2_13: 2.0 * ((ll.norm_sqr() + rl.norm_sqr()) * (lr.norm_sqr() + rr.norm_sqr())).sqrt(),
    })
}

/// Closed-form `(C_i(jk), F3)` of the tensor state: `(2|M_R M_L|, 4|M_R M_L|^2)`.
pub fn closed_form_tensor(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<(f64, f64)> {
    let (m_r, m_l) = tensor_coefficients(cfg, g)?;
    let n2 = m_r.norm_sqr() + m_l.norm_sqr();
    if n2.sqrt() <= crate::tol::ZERO_AMPLITUDE {
        return Err(Error::VanishingAmplitude);
    }
    let product = m_r.norm() * m_l.norm() / n2;
    Ok((2.0 * product, 4.0 * product * product))
}

/// The scalar state is particle 1 times a maximally entangled (23) pair at
/// every configuration.
pub fn closed_form_scalar() -> EntanglementReport {
    EntanglementReport {
        c23: 1.0,
        c2_13: 1.0,
        c3_12: 1.0,
        ..Default::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationAxis {
    X,
    Y,
}

impl FromStr for RotationAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Self::X),
            "y" => Ok(Self::Y),
            other => Err(Error::Request(format!("unknown rotation axis `{other}` (expected x or y)"))),
        }
    }
}

/// Polar angles of `+z` rotated right-handedly by `alpha` about `axis`.
pub fn spin_direction_from_rotation(axis: RotationAxis, alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..TAU).contains(&alpha) {
        return Err(Error::AngleOutOfRange {
            name: "alpha",
            value: alpha,
            domain: "[0, 2 pi)",
        });
    }
    let (sa, ca) = alpha.sin_cos();
    let (x, y, z) = match axis {
        RotationAxis::Y => (sa, 0.0, ca),
        RotationAxis::X => (0.0, -sa, ca),
    };
    let rho = x.hypot(y);
    let theta = rho.atan2(z);
    let phi = if rho == 0.0 { 0.0 } else { y.atan2(x).rem_euclid(TAU) };
    Ok((theta, if phi >= TAU { 0.0 } else { phi }))
}
