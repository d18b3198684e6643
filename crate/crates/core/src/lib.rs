//! First-order Darboux transformations of half-line Schrödinger operators with
//! complex factorization constants, and smeared checks of the resulting
//! biorthonormal expansions and spectral singularities.

pub mod darboux;
pub mod distributional;
pub mod error;
pub mod grid;
pub mod io;
pub mod ode;
mod par;
pub mod potential;
pub mod quadrature;
pub mod schwartz;
pub mod singularity;
pub mod sturm_liouville;
pub mod test_function;
pub mod tol;
pub mod wave;

pub use darboux::{build_system, FactorizationConstant, NormalizedEigenfunction, Regime, SusySystem};
pub use distributional::{
    binorm_functional, delta_family_probe, identity_kernel_apply, identity_kernel_batch,
    smeared_biorthonormality, smeared_pairing, Pairing, PairingOptions, RegularizationParams,
    SmearedFunctional,
};
pub use error::{Error, Result};
pub use grid::Grid;
pub use num_complex::Complex64;
pub use potential::{Potential, PotentialKind};
pub use singularity::{path_to_singularity, scan_singularities, transformed_jost, SingularityScan, Verdict};
pub use sturm_liouville::{base_eigenfunction, smeared_orthonormality, solve_jost, JostData};
pub use test_function::TestFunction;
pub use wave::WaveSample;
