//! Nussbaum–Szkoła distributions.
//!
//! With ρ = Σ r_i |u_i⟩⟨u_i| and σ = Σ s_j |v_j⟩⟨v_j|, the pair of distributions on
//! index pairs (i, j) is
//!
//! ```text
//! P(i,j) = r_i |⟨u_i|v_j⟩|²      Q(i,j) = s_j |⟨u_i|v_j⟩|²
//! ```
//!
//! P = Q exactly when ρ = σ, and P ≪ Q exactly when supp ρ ⊆ supp σ.

use crate::error::{Error, Result};
use crate::fdiv::DiscreteDistribution;
use crate::linalg::{DensityOperator, SpectralDecomposition};

/// Overlaps at or below this are stored as exact zeros.
pub const EPS_OVERLAP: f64 = 1e-12;

/// Default entrywise tolerance for [`ns_equal`].
pub const NS_EQUAL_TOL: f64 = 1e-9;

/// Spectral data of a state pair and the two induced distributions, row-major d×d.
#[derive(Clone, Debug, PartialEq)]
pub struct NsPair {
    dim: usize,
    r: Vec<f64>,
    s: Vec<f64>,
    overlaps: Vec<f64>,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl NsPair {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// |⟨u_i|v_j⟩|².
    pub fn overlap(&self, i: usize, j: usize) -> f64 {
        self.overlaps[i * self.dim + j]
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.dim + j]
    }

    pub fn q(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.dim + j]
    }

    /// P as a flat row-major array.
    pub fn p_weights(&self) -> &[f64] {
        &self.p
    }

    pub fn q_weights(&self) -> &[f64] {
        &self.q
    }

    /// P and Q as distributions on the d² index pairs.
    pub fn distributions(&self) -> Result<(DiscreteDistribution, DiscreteDistribution)> {
        Ok((
            DiscreteDistribution::new(self.p.clone())?,
            DiscreteDistribution::new(self.q.clone())?,
        ))
    }

    /// Largest deviation of the marginals Σ_j P(i,j) = r_i and Σ_i Q(i,j) = s_j.
    pub fn marginal_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            let row: f64 = (0..d).map(|j| self.p(i, j)).sum();
            worst = worst.max((row - self.r[i]).abs());
        }
        for j in 0..d {
            let col: f64 = (0..d).map(|i| self.q(i, j)).sum();
            worst = worst.max((col - self.s[j]).abs());
        }
        worst
    }

    /// Largest deviation of an overlap row or column sum from 1.
    pub fn orthonormality_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for k in 0..d {
            let row: f64 = (0..d).map(|j| self.overlap(k, j)).sum();
            let col: f64 = (0..d).map(|i| self.overlap(i, k)).sum();
            worst = worst.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        worst
    }

    /// Q(P = 0) = Σ over pairs with r_i = 0.
    pub fn mass_q_where_p_vanishes(&self) -> f64 {
        let d = self.dim;
        (0..d * d).filter(|&k| self.p[k] == 0.0).map(|k| self.q[k]).sum()
    }

    /// P(Q = 0).
    pub fn mass_p_where_q_vanishes(&self) -> f64 {
        let d = self.dim;
        (0..d * d).filter(|&k| self.q[k] == 0.0).map(|k| self.p[k]).sum()
    }
}

/// Builds the pair from two spectral decompositions of equal dimension.
pub fn build_ns(sd_rho: &SpectralDecomposition, sd_sigma: &SpectralDecomposition) -> Result<NsPair> {
    let d = sd_rho.dim();
    if d != sd_sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: d,
            right: sd_sigma.dim(),
        });
    }
    let r = sd_rho.eigenvalues().to_vec();
    let s = sd_sigma.eigenvalues().to_vec();
    let mut overlaps = vec![0.0; d * d];
    let mut p = vec![0.0; d * d];
    let mut q = vec![0.0; d * d];
    for (i, u) in sd_rho.eigenvectors().iter().enumerate() {
        for (j, v) in sd_sigma.eigenvectors().iter().enumerate() {
            let mut ov = u.dotc(v).norm_sqr();
            if ov <= EPS_OVERLAP {
                ov = 0.0;
            }
            overlaps[i * d + j] = ov;
            p[i * d + j] = r[i] * ov;
            q[i * d + j] = s[j] * ov;
        }
    }
    Ok(NsPair {
        dim: d,
        r,
        s,
        overlaps,
        p,
        q,
    })
}

/// [`build_ns`] on the cached spectra of two states.
pub fn ns_of_states(rho: &DensityOperator, sigma: &DensityOperator) -> Result<NsPair> {
    build_ns(rho.spectrum(), sigma.spectrum())
}

/// max |P − Q| ≤ tol.
pub fn ns_equal(ns: &NsPair, tol: f64) -> bool {
    ns.p.iter().zip(&ns.q).all(|(a, b)| (a - b).abs() <= tol)
}

/// P ≪ Q: no pair with nonzero overlap has r_i > 0 and s_j = 0.
pub fn ns_absolutely_continuous(ns: &NsPair) -> bool {
    let d = ns.dim;
    !(0..d).any(|i| ns.r[i] > 0.0 && (0..d).any(|j| ns.s[j] == 0.0 && ns.overlap(i, j) > 0.0))
}
