//! Spin entanglement of the three final-state fermions in a `0 -> 123` decay.
//!
//! The crate builds the normalized three-qubit helicity state for scalar,
//! vector and tensor contact interactions, evaluates pairwise and
//! one-to-other concurrences, the CKW monogamy measures and the
//! concurrence-triangle measure `F3`, and scans those over phase space and
//! parent spin direction.

pub mod decay;
pub mod error;
pub mod measures;
pub mod scan;
pub mod smallmat;
pub mod tol;
pub mod tristate;

pub use decay::{CouplingSet, DecayConfiguration, Interaction, RotationAxis};
pub use error::{Error, Result};
pub use measures::EntanglementReport;
pub use smallmat::{Complex, ComplexMatrix, EigenPair};
pub use tristate::{QubitLabel, ThreeQubitState};
