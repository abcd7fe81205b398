//! Quantum f-divergences.
//!
//! For states ρ, σ and the relative modular operator Δ_{ρ,σ}: X ↦ ρ X σ⁻¹ acting on
//! Hilbert–Schmidt space,
//!
//! ```text
//! D_f(ρ‖σ) = ⟨√σ| f(Δ) |√σ⟩ + f(0)·tr(σ Π_ρ^⊥) + f'(∞)·tr(ρ Π_σ^⊥)
//! ```
//!
//! Δ has eigenvalues r_i/s_j with eigenvectors |u_i⟩⟨v_j|, so the first term is
//! Σ f(r_i/s_j)|⟨u_i|√σ|v_j⟩|², and the whole expression equals the classical
//! divergence of the Nussbaum–Szkoła pair. Two evaluation routes are provided:
//! [`quantum_f_divergence_ns`] goes through the classical pair, and
//! [`quantum_f_divergence_modular`] works from the modular spectrum and
//! projector traces.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::Result;
use crate::extended::{CompensatedSum, ExtendedReal};
use crate::fdiv::{assemble, builtin, ns_f_divergence, renyi_from_power_divergence, DivergenceFunction};
use crate::linalg::{kernel_projector, matrix_power, ComplexMatrix, DensityOperator, SpectralDecomposition};
use crate::ns::ns_of_states;

/// Eigenvalues closer than this (relatively) are merged.
pub const MERGE_TOL: f64 = 1e-10;

/// Boundary masses at or below this count as zero.
pub const MASS_EPS: f64 = 1e-12;

/// One distinct eigenvalue of Δ on the joint support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularEigenvalue {
    pub value: f64,
    /// Spectral weight of √σ, ⟨√σ|ξ{λ}|√σ⟩.
    pub weight: f64,
    /// Number of index pairs (i, j) with r_i/s_j at this value.
    pub multiplicity: usize,
}

/// The spectral measure of Δ_{ρ,σ} in the vector state √σ.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeModularSpectrum {
    pub eigenvalues: Vec<ModularEigenvalue>,
    /// Weight of √σ on the kernel of Δ, tr(σ Π_ρ^⊥).
    pub kernel_mass: f64,
    /// Dimension of the kernel of Δ as an operator on d×d matrices.
    pub kernel_multiplicity: usize,
}

impl RelativeModularSpectrum {
    pub fn total_weight(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.weight).sum::<f64>() + self.kernel_mass
    }
}

/// tr(A Π), floored at [`MASS_EPS`].
fn projected_mass(a: &ComplexMatrix, pi: &ComplexMatrix) -> f64 {
    let m = a.trace_of_product(pi).re;
    if m <= MASS_EPS {
        0.0
    } else {
        m
    }
}

/// Positive eigenvalues r_i/s_j with weights |⟨u_i|√σ|v_j⟩|², merged at relative
/// tolerance [`MERGE_TOL`], plus the kernel mass tr(σ Π_ρ^⊥).
pub fn relative_modular_spectrum(
    sd_rho: &SpectralDecomposition,
    sd_sigma: &SpectralDecomposition,
) -> Result<RelativeModularSpectrum> {
    let d = sd_rho.dim();
    if d != sd_sigma.dim() {
        return Err(crate::Error::DimensionMismatch {
            left: d,
            right: sd_sigma.dim(),
        });
    }
    let sqrt_sigma = matrix_power(sd_sigma, 0.5)?;
    let (r, s) = (sd_rho.eigenvalues(), sd_sigma.eigenvalues());
    let mut raw: Vec<(f64, f64)> = Vec::new();
    for (i, u) in sd_rho.eigenvectors().iter().enumerate() {
        if r[i] == 0.0 {
            continue;
        }
        let row: DVector<Complex64> = sqrt_sigma.as_nalgebra().adjoint() * u;
        for (j, v) in sd_sigma.eigenvectors().iter().enumerate() {
            if s[j] == 0.0 {
                continue;
            }
            // ⟨u|√σ|v⟩ = conj(⟨v|√σ u⟩) since √σ is Hermitian
            let w = row.dotc(v).norm_sqr();
            raw.push((r[i] / s[j], w));
        }
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut eigenvalues: Vec<ModularEigenvalue> = Vec::new();
    let mut anchor = f64::NAN;
    for (lambda, w) in raw.iter().copied() {
        match eigenvalues.last_mut() {
            Some(last) if (lambda - anchor).abs() <= MERGE_TOL * anchor.abs().max(lambda.abs()) => {
                last.weight += w;
                last.multiplicity += 1;
            }
            _ => {
                anchor = lambda;
                eigenvalues.push(ModularEigenvalue {
                    value: lambda,
                    weight: w,
                    multiplicity: 1,
                });
            }
        }
    }

    let sigma = sd_sigma.reconstruct();
    let kernel_mass = projected_mass(&sigma, &kernel_projector(sd_rho));
    Ok(RelativeModularSpectrum {
        kernel_multiplicity: d * d - raw.len(),
        eigenvalues,
        kernel_mass,
    })
}

/// D_f(ρ‖σ) as the classical divergence of the Nussbaum–Szkoła pair.
pub fn quantum_f_divergence_ns(rho: &DensityOperator, sigma: &DensityOperator, f: &DivergenceFunction) -> Result<ExtendedReal> {
    ns_f_divergence(&ns_of_states(rho, sigma)?, f)
}

/// D_f(ρ‖σ) from the modular spectrum, with boundary masses taken as traces of
/// σ and ρ against the kernel projectors.
pub fn quantum_f_divergence_modular(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    f: &DivergenceFunction,
) -> Result<ExtendedReal> {
    let spectrum = relative_modular_spectrum(rho.spectrum(), sigma.spectrum())?;
    let mut finite = CompensatedSum::new();
    for e in &spectrum.eigenvalues {
        if e.weight > 0.0 {
            finite.add(e.weight * f.eval(e.value)?);
        }
    }
    let off_support = projected_mass(rho.matrix(), &kernel_projector(sigma.spectrum()));
    assemble(finite.value(), f, spectrum.kernel_mass, off_support)
}

/// tr(σ Π_ρ^⊥), computed from matrices.
pub fn mass_off_support(sigma: &DensityOperator, rho: &DensityOperator) -> f64 {
    projected_mass(sigma.matrix(), &kernel_projector(rho.spectrum()))
}

/// Umegaki relative entropy tr ρ(ln ρ − ln σ), +∞ unless supp ρ ⊆ supp σ.
pub fn umegaki(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedReal> {
    quantum_f_divergence_ns(rho, sigma, &builtin("kl", None)?)
}

/// Petz–Rényi divergence (1/(α−1)) ln tr(ρ^α σ^{1−α}); tends to the Umegaki
/// entropy as α → 1 but is only defined for α ≠ 1.
pub fn petz_renyi(rho: &DensityOperator, sigma: &DensityOperator, alpha: f64) -> Result<ExtendedReal> {
    let power = quantum_f_divergence_ns(rho, sigma, &builtin("renyi_alpha", Some(alpha))?)?;
    renyi_from_power_divergence(power, alpha)
}

/// ½ Σ(√P − √Q)², equal to 1 − tr(√ρ√σ).
pub fn hellinger_sq_q(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    Ok(quantum_f_divergence_ns(rho, sigma, &builtin("hellinger_sq", None)?)?.to_f64())
}

pub fn hellinger_alpha_q(rho: &DensityOperator, sigma: &DensityOperator, alpha: f64) -> Result<ExtendedReal> {
    quantum_f_divergence_ns(rho, sigma, &builtin("hellinger_alpha", Some(alpha))?)
}

/// Σ|P − Q| on the Nussbaum–Szkoła pair; always in [0, 2].
pub fn total_variation_q(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    Ok(quantum_f_divergence_ns(rho, sigma, &builtin("total_variation", None)?)?.to_f64())
}

pub fn chi_sq_q(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedReal> {
    quantum_f_divergence_ns(rho, sigma, &builtin("chi_sq", None)?)
}
