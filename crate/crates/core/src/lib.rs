//! Exact computational algebra for linear time-invariant stochastic
//! processes in kernel form.
//!
//! The crate models a process by a Laurent polynomial matrix R with exact
//! rational coefficients: the trajectories w satisfying R(σ)w = e for a
//! white noise e, where σ is the forward shift. On top of the exact layer
//! ([`poly`], [`matrix`], [`hermite`]) it provides behavior-level decision
//! procedures ([`behavior`]), process complementarity and interconnection
//! ([`process`]), rational spectral densities with minimum-phase
//! factorization and unimodular-invariant comparison ([`spectral`]), and
//! seeded white-noise simulation with Welch spectrum estimation ([`sim`]).
//!
//! Exactness policy: every structural decision (rank, unimodularity,
//! equivalence, canonical forms) is made in exact rational arithmetic;
//! floating point enters only for root locations, trajectory samples, and
//! spectral values, always behind stated tolerances.

pub mod behavior;
pub mod hermite;
pub mod matrix;
pub mod noise;
pub mod poly;
pub mod process;
pub mod random;
pub mod rational;
pub mod roots;
pub mod sim;
pub mod spectral;

pub use behavior::{
    behaviors_equivalent, intersect, BehaviorError, KernelRepresentation, TrajectoryWindow,
};
pub use hermite::HermiteResult;
pub use matrix::{AlgebraError, LaurentMatrix};
pub use noise::GaussianStream;
pub use poly::LaurentPolynomial;
pub use process::{
    complementary, has_full_event_algebra, interconnect, LtiProcessModel, NoiseSpec, ProcessError,
};
pub use rational::Rational;
pub use sim::{
    compare_spectrum, residual_noise, simulate, simulate_run, simulate_with_noise,
    stability_check, welch_spectrum, SimConfig, SimError, SimRun, SpectrumEstimate,
    SpectrumReport, StabilityReport, Trajectory,
};
pub use spectral::{
    density_eval, density_eval_scalar, density_from_kernel, scalar_spectral_factor,
    shape_distance, unimodular_equivalent, RationalMatrix, SpectralDensity, SpectralError,
    SpectralFactor,
};
