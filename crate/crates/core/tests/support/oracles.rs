//! Reference values computed without the library's spectral caches: every
//! function here eigendecomposes the raw matrices itself.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use qfdiv::linalg::DensityOperator;
use qfdiv::ExtendedReal;

pub type CMat = DMatrix<Complex64>;

/// Eigenvalues at or below this are treated as kernel.
pub const KERNEL_CUT: f64 = 1e-12;

pub fn eig(m: &CMat) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let e = SymmetricEigen::new(h);
    let vals = e.eigenvalues.iter().copied().collect();
    let vecs = (0..m.nrows()).map(|k| e.eigenvectors.column(k).into_owned()).collect();
    (vals, vecs)
}

/// Σ g(λ)|u⟩⟨u| over eigenvalues above [`KERNEL_CUT`]; the kernel maps to `at_zero`.
pub fn fun(m: &CMat, g: impl Fn(f64) -> f64, at_zero: f64) -> CMat {
    let (vals, vecs) = eig(m);
    let mut out = CMat::zeros(m.nrows(), m.ncols());
    for (l, u) in vals.iter().zip(&vecs) {
        let v = if *l > KERNEL_CUT { g(*l) } else { at_zero };
        if v != 0.0 {
            out += (u * u.adjoint()) * Complex64::new(v, 0.0);
        }
    }
    out
}

pub fn raw(rho: &DensityOperator) -> CMat {
    rho.matrix().as_nalgebra().clone()
}

pub fn tr(m: &CMat) -> f64 {
    m.trace().re
}

pub fn support(m: &CMat) -> CMat {
    fun(m, |_| 1.0, 0.0)
}

/// tr ρ(ln ρ − ln σ) for full-rank σ.
pub fn umegaki(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    let (r, s) = (raw(rho), raw(sigma));
    let diff = fun(&r, f64::ln, 0.0) - fun(&s, f64::ln, 0.0);
    tr(&(r * diff))
}

/// (1/(α−1)) ln tr(ρ^α σ^{1−α}).
pub fn petz_renyi(rho: &DensityOperator, sigma: &DensityOperator, alpha: f64) -> f64 {
    let a = fun(&raw(rho), |x| x.powf(alpha), 0.0);
    let b = fun(&raw(sigma), |x| x.powf(1.0 - alpha), 0.0);
    tr(&(a * b)).ln() / (alpha - 1.0)
}

/// 1 − tr(ρ^{1/2} σ^{1/2}).
pub fn hellinger_sq(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    let a = fun(&raw(rho), f64::sqrt, 0.0);
    let b = fun(&raw(sigma), f64::sqrt, 0.0);
    1.0 - tr(&(a * b))
}

/// Σ|λ| over the eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &CMat) -> f64 {
    eig(m).0.iter().map(|l| l.abs()).sum()
}

/// tr(σ Π_ρ^⊥).
pub fn mass_off_support(sigma: &DensityOperator, rho: &DensityOperator) -> f64 {
    let r = raw(rho);
    let kernel = CMat::identity(r.nrows(), r.ncols()) - support(&r);
    tr(&(raw(sigma) * kernel))
}

/// Π_σ Π_ρ = Π_ρ within 1e-9.
pub fn support_contained(rho: &DensityOperator, sigma: &DensityOperator) -> bool {
    let pr = support(&raw(rho));
    let ps = support(&raw(sigma));
    (&ps * &pr - &pr).norm() <= 1e-9
}

/// Eigenvalues of X ↦ ρ X σ⁺ on d×d matrices, in decreasing order. With
/// column-stacking vec, the map is σ⁺ᵀ ⊗ ρ, which is Hermitian.
pub fn superoperator_spectrum(rho: &DensityOperator, sigma: &DensityOperator) -> Vec<f64> {
    let r = raw(rho);
    let s_plus = fun(&raw(sigma), |x| 1.0 / x, 0.0);
    let d = r.nrows();
    let mut big = CMat::zeros(d * d, d * d);
    for l in 0..d {
        for k in 0..d {
            let mut e = CMat::zeros(d, d);
            e[(k, l)] = Complex64::new(1.0, 0.0);
            let image = &r * e * &s_plus;
            let col = l * d + k;
            for c in 0..d {
                for row in 0..d {
                    big[(c * d + row, col)] = image[(row, c)];
                }
            }
        }
    }
    let mut vals = eig(&big).0;
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Eigenvalues of ρ and the matching diagonal of σ in ρ's eigenbasis; for a
/// commuting pair with simple spectrum these are the two spectra paired up.
pub fn commuting_spectra(rho: &DensityOperator, sigma: &DensityOperator) -> (Vec<f64>, Vec<f64>) {
    let (vals, vecs) = eig(&raw(rho));
    let s = raw(sigma);
    let q = vecs.iter().map(|u| (u.adjoint() * &s * u)[(0, 0)].re).collect();
    (vals.into_iter().map(|x| if x > KERNEL_CUT { x } else { 0.0 }).collect(), q)
}

/// Sum of the terms of a classical f-divergence computed term by term, with the
/// boundary conventions spelled out: q·f(p/q) for p, q > 0; q·f(0) for p = 0;
/// p·f'(∞) for q = 0; nothing when both vanish.
pub fn classical(p: &[f64], q: &[f64], f: impl Fn(f64) -> f64, f0: f64, f_inf: f64) -> f64 {
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        total += match (a > 0.0, b > 0.0) {
            (true, true) => b * f(a / b),
            (false, true) => b * f0,
            (true, false) => a * f_inf,
            (false, false) => 0.0,
        };
    }
    total
}

/// Agreement within `tol` absolutely, or relatively once |value| > 1; infinite
/// values must match exactly.
pub fn agree(a: ExtendedReal, b: ExtendedReal, tol: f64) -> bool {
    match (a.finite(), b.finite()) {
        (Some(x), Some(y)) => (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0),
        (None, None) => a == b,
        _ => false,
    }
}
