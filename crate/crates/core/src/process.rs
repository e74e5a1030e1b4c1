//! LTI stochastic processes as (kernel, noise-law) pairs.
//!
//! A process is represented computationally by a full-row-normal-rank
//! kernel R driven by unit-variance Gaussian white noise: R(σ)w(t) = e(t).
//! Probability measures are never materialized; every probabilistic
//! statement is carried by this pair. Interconnection of two independent
//! processes stacks their kernels and their noises; it is well posed
//! exactly when the stacked kernel keeps full normal rank
//! (complementarity), and the interconnected process generates the full
//! Borel σ-algebra exactly when the stacked kernel is unimodular.

use thiserror::Error;

use crate::behavior::KernelRepresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcessError {
    #[error("signal dimensions {left} and {right} do not match")]
    SignalDimensionMismatch { left: usize, right: usize },
    #[error("processes are not complementary: stacked kernel drops normal rank")]
    NotComplementary,
    #[error("noise dimension {noise} does not match kernel row count {rows}")]
    NoiseDimensionMismatch { noise: usize, rows: usize },
}

/// Driving-noise law: zero-mean Gaussian with identity covariance per time
/// step. Only the dimension varies; the unit-variance white law is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseSpec {
    dimension: usize,
}

impl NoiseSpec {
    /// Standard white Gaussian noise in ℝ^dimension (dimension ≥ 1).
    pub fn standard(dimension: usize) -> Self {
        assert!(dimension >= 1, "noise dimension must be at least 1");
        NoiseSpec { dimension }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

/// An LTI stochastic process model: kernel plus driving-noise law, with the
/// noise dimension equal to the kernel's equation count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtiProcessModel {
    kernel: KernelRepresentation,
    noise: NoiseSpec,
}

impl LtiProcessModel {
    pub fn new(kernel: KernelRepresentation, noise: NoiseSpec) -> Result<Self, ProcessError> {
        if noise.dimension() != kernel.equation_count() {
            return Err(ProcessError::NoiseDimensionMismatch {
                noise: noise.dimension(),
                rows: kernel.equation_count(),
            });
        }
        Ok(LtiProcessModel { kernel, noise })
    }

    /// The canonical model for a kernel: unit-variance white noise of
    /// matching dimension.
    pub fn from_kernel(kernel: KernelRepresentation) -> Self {
        let noise = NoiseSpec::standard(kernel.equation_count());
        LtiProcessModel { kernel, noise }
    }

    pub fn kernel(&self) -> &KernelRepresentation {
        &self.kernel
    }

    pub fn noise(&self) -> &NoiseSpec {
        &self.noise
    }
}

/// True iff the stacked kernel [R₁; R₂] has full normal rank m + p (exact
/// test). This is the condition under which the two processes'
/// interconnection is well posed.
pub fn complementary(
    k1: &KernelRepresentation,
    k2: &KernelRepresentation,
) -> Result<bool, ProcessError> {
    if k1.signal_dimension() != k2.signal_dimension() {
        return Err(ProcessError::SignalDimensionMismatch {
            left: k1.signal_dimension(),
            right: k2.signal_dimension(),
        });
    }
    let stack = k1.matrix().vstack(k2.matrix()).expect("dimensions checked");
    Ok(stack.normal_rank() == k1.equation_count() + k2.equation_count())
}

/// Interconnects two independent processes: the kernel is the vertical
/// stack [R₁; R₂] (full row rank by complementarity) and the noise is the
/// block of the two independent noises. Stochastic independence of the
/// inputs is an assumed precondition that cannot be verified here.
pub fn interconnect(
    p1: &LtiProcessModel,
    p2: &LtiProcessModel,
) -> Result<LtiProcessModel, ProcessError> {
    if !complementary(p1.kernel(), p2.kernel())? {
        return Err(ProcessError::NotComplementary);
    }
    let stack = p1.kernel().matrix().vstack(p2.kernel().matrix()).expect("dimensions checked");
    let kernel = KernelRepresentation::new(stack)
        .expect("complementarity guarantees full row normal rank");
    Ok(LtiProcessModel::from_kernel(kernel))
}

/// True iff the stacked kernel is square and unimodular: the interconnected
/// process is then invariant along the zero behavior only, so its event
/// algebra is the full Borel σ-algebra. A true result implies
/// complementarity; false is returned otherwise (including non-square
/// stacks).
pub fn has_full_event_algebra(
    p1: &LtiProcessModel,
    p2: &LtiProcessModel,
) -> Result<bool, ProcessError> {
    let (k1, k2) = (p1.kernel(), p2.kernel());
    if k1.signal_dimension() != k2.signal_dimension() {
        return Err(ProcessError::SignalDimensionMismatch {
            left: k1.signal_dimension(),
            right: k2.signal_dimension(),
        });
    }
    let stack = k1.matrix().vstack(k2.matrix()).expect("dimensions checked");
    Ok(stack.is_unimodular())
}
