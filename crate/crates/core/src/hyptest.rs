//! Symmetric binary quantum hypothesis testing.
//!
//! Null hypothesis ρ, alternative σ, priors π₀ + π₁ = 1. A test Π (an orthogonal
//! projection on the n-copy space, "reject the null") has errors
//!
//! ```text
//! α_n(Π) = tr[Π ρ^{⊗n}]      β_n(Π) = tr[(1 − Π) σ^{⊗n}]      Err(Π) = π₀α_n + π₁β_n
//! ```
//!
//! The minimum over Π is the Helstrom error ½(1 − ‖π₁σ^{⊗n} − π₀ρ^{⊗n}‖₁), attained
//! by the projection onto the positive part of π₁σ^{⊗n} − π₀ρ^{⊗n}. Its exponential
//! decay rate is the quantum Chernoff bound
//!
//! ```text
//! C(ρ, σ) = −min_{0 ≤ s ≤ 1} ln tr(ρ^{1−s} σ^s)
//! ```
//!
//! with ρ⁰ read as the support projection, and P_{e,min,n} ≤ ½e^{−nC} for equal priors.

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::linalg::{
    hermitian_eigen, matrix_power, support_projector, tensor_power, ComplexMatrix, DensityOperator, DEFAULT_DIM_CAP,
};

/// Tolerance on ‖Π² − Π‖_F and ‖Π − Π†‖_F for a measurement operator.
pub const PROJECTION_TOL: f64 = 1e-9;

/// Helstrom errors below this are reported as exactly 0.
pub const ERROR_FLOOR: f64 = 1e-14;

/// Overlap tr(Π_ρ Π_σ) below which supports count as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-12;

const GRID_POINTS: usize = 101;
const GOLDEN_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct HypothesisInstance {
    pub rho: DensityOperator,
    pub sigma: DensityOperator,
    pub pi0: f64,
    pub pi1: f64,
}

impl HypothesisInstance {
    pub fn new(rho: DensityOperator, sigma: DensityOperator, pi0: f64, pi1: f64) -> Result<Self> {
        if !(pi0 >= 0.0 && pi1 >= 0.0 && (pi0 + pi1 - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidPriors { pi0, pi1 });
        }
        if rho.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch {
                left: rho.dim(),
                right: sigma.dim(),
            });
        }
        Ok(Self { rho, sigma, pi0, pi1 })
    }

    pub fn equal_priors(rho: DensityOperator, sigma: DensityOperator) -> Result<Self> {
        Self::new(rho, sigma, 0.5, 0.5)
    }

    fn powers(&self, n: usize, cap: usize) -> Result<(DensityOperator, DensityOperator)> {
        Ok((tensor_power(&self.rho, n, cap)?, tensor_power(&self.sigma, n, cap)?))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ParameterOutOfRange("number of copies must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// (α_n, β_n) of the test Π on n copies.
pub fn error_probabilities(projector: &ComplexMatrix, inst: &HypothesisInstance, n: usize) -> Result<(f64, f64)> {
    check_n(n)?;
    let (rho_n, sigma_n) = inst.powers(n, DEFAULT_DIM_CAP)?;
    if projector.dim() != rho_n.dim() {
        return Err(Error::DimensionMismatch {
            left: projector.dim(),
            right: rho_n.dim(),
        });
    }
    let (idempotency, hermiticity) = projector.projection_defects();
    if idempotency > PROJECTION_TOL || hermiticity > PROJECTION_TOL {
        return Err(Error::NotAProjection {
            idempotency,
            hermiticity,
        });
    }
    let alpha = projector.trace_of_product(rho_n.matrix()).re;
    let beta = sigma_n.matrix().trace().re - projector.trace_of_product(sigma_n.matrix()).re;
    Ok((alpha, beta))
}

/// π₀α_n(Π) + π₁β_n(Π).
pub fn error_of_test(projector: &ComplexMatrix, inst: &HypothesisInstance, n: usize) -> Result<f64> {
    let (a, b) = error_probabilities(projector, inst, n)?;
    Ok(inst.pi0 * a + inst.pi1 * b)
}

/// Minimum error probability on n copies and the optimal test.
pub fn helstrom_error(inst: &HypothesisInstance, n: usize) -> Result<(f64, ComplexMatrix)> {
    helstrom_error_capped(inst, n, DEFAULT_DIM_CAP)
}

pub fn helstrom_error_capped(inst: &HypothesisInstance, n: usize, cap: usize) -> Result<(f64, ComplexMatrix)> {
    check_n(n)?;
    let (rho_n, sigma_n) = inst.powers(n, cap)?;
    let a = &sigma_n.matrix().scale(inst.pi1) - &rho_n.matrix().scale(inst.pi0);
    let (values, vectors) = hermitian_eigen(&a.hermitian_part())?;
    let norm: f64 = values.iter().map(|l| l.abs()).sum();
    let mut projector = ComplexMatrix::zeros(a.dim());
    for (l, u) in values.iter().zip(&vectors) {
        if *l > 0.0 {
            projector = &projector + &ComplexMatrix::outer(u);
        }
    }
    let mut p_min = 0.5 * (1.0 - norm);
    if p_min < ERROR_FLOOR {
        p_min = 0.0;
    }
    Ok((p_min, projector))
}

/// ln tr(ρ^{1−s} σ^s), with ρ⁰ = Π_ρ.
pub fn chernoff_objective(rho: &DensityOperator, sigma: &DensityOperator, s: f64) -> Result<f64> {
    let a = matrix_power(rho.spectrum(), 1.0 - s)?;
    let b = matrix_power(sigma.spectrum(), s)?;
    Ok(a.trace_of_product(&b).re.ln())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChernoffResult {
    pub value: ExtendedReal,
    /// Minimizing s, when the minimum is attained.
    pub s_star: Option<f64>,
}

/// C(ρ, σ) with its minimizer: a 101-point grid brackets the minimum of the convex
/// objective and golden-section search refines it to |Δs| < 1e-8.
pub fn chernoff(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ChernoffResult> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    if rho.matrix() == sigma.matrix() {
        return Ok(ChernoffResult {
            value: ExtendedReal::ZERO,
            s_star: None,
        });
    }
    let overlap = support_projector(rho.spectrum())
        .trace_of_product(&support_projector(sigma.spectrum()))
        .re;
    if overlap <= ORTHOGONALITY_TOL {
        return Ok(ChernoffResult {
            value: ExtendedReal::PlusInfinity,
            s_star: None,
        });
    }
    let g = |s: f64| chernoff_objective(rho, sigma, s);
    let step = 1.0 / (GRID_POINTS - 1) as f64;
    let mut best = (0.0, g(0.0)?);
    let mut best_k = 0;
    for k in 1..GRID_POINTS {
        let s = k as f64 * step;
        let v = g(s)?;
        if v < best.1 {
            best = (s, v);
            best_k = k;
        }
    }
    let mut lo = best_k.saturating_sub(1) as f64 * step;
    let mut hi = ((best_k + 1).min(GRID_POINTS - 1)) as f64 * step;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (g(x1)?, g(x2)?);
    while hi - lo > GOLDEN_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2)?;
        }
    }
    for (s, v) in [(x1, f1), (x2, f2)] {
        if v < best.1 {
            best = (s, v);
        }
    }
    Ok(ChernoffResult {
        value: ExtendedReal::Finite((-best.1).max(0.0)),
        s_star: Some(best.0),
    })
}

/// C(ρ, σ); 0 for identical states and +∞ for orthogonal supports.
pub fn chernoff_bound(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedReal> {
    Ok(chernoff(rho, sigma)?.value)
}

/// min over unordered pairs i ≠ j of C(ρ_i, ρ_j).
pub fn multiple_chernoff(states: &[DensityOperator]) -> Result<ExtendedReal> {
    if states.len() < 2 {
        return Err(Error::FewerThanTwoStates(states.len()));
    }
    let mut best = ExtendedReal::PlusInfinity;
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let c = chernoff_bound(&states[i], &states[j])?;
            if c < best {
                best = c;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPoint {
    pub n: usize,
    pub p_min: f64,
    /// −(1/n) ln P_{e,min,n}
    pub exponent: ExtendedReal,
}

/// Exact Helstrom errors and empirical exponents for n = 1..=n_max.
pub fn empirical_exponent_trace(inst: &HypothesisInstance, n_max: usize) -> Result<Vec<ExponentPoint>> {
    (1..=n_max)
        .map(|n| {
            let (p_min, _) = helstrom_error(inst, n)?;
            let exponent = ExtendedReal::Finite(p_min).ln()?.scale(-1.0 / n as f64);
            Ok(ExponentPoint { n, p_min, exponent })
        })
        .collect()
}
