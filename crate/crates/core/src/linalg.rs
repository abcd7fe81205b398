//! Dense complex Hermitian linear algebra.
//!
//! Everything here works on small dense matrices (dim ≤ a few thousand) backed by
//! `nalgebra`. Spectral data is canonicalized so that repeated decompositions of
//! the same state give the same eigenbasis:
//!
//! - eigenvalues are sorted in descending order;
//! - each eigenvector has its first non-negligible component made real-positive;
//! - nearly degenerate groups are re-orthonormalized with modified Gram-Schmidt;
//! - exactly equal eigenvalues are ordered lexicographically by eigenvector.
//!
//! Eigenvalues below [`EPS_RANK`] (after clipping and renormalization) are set to
//! exactly zero, so support and kernel are decided once, here.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues below this (absolute, after normalization) are treated as exactly zero.
pub const EPS_RANK: f64 = 1e-12;

/// Default cap on the dimension of tensor powers.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Spread under which neighbouring eigenvalues are re-orthonormalized as one group.
const DEGENERACY_TOL: f64 = 1e-12;

/// Components with modulus at or below this are skipped when fixing eigenvector phases.
const CANON_TOL: f64 = 1e-10;

/// A square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Self::from_nalgebra(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Wraps an nalgebra matrix, checking squareness and finiteness.
    pub fn from_nalgebra(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::NotSquare {
                rows: inner.nrows(),
                cols: inner.ncols(),
            });
        }
        for c in 0..inner.ncols() {
            for r in 0..inner.nrows() {
                let z = inner[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: r, col: c });
                }
            }
        }
        Ok(Self { inner })
    }

    pub(crate) fn from_nalgebra_unchecked(inner: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(inner.nrows(), inner.ncols());
        Self { inner }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_nalgebra_unchecked(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_nalgebra_unchecked(DMatrix::identity(dim, dim))
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::from_nalgebra_unchecked(DMatrix::from_diagonal(&d))
    }

    /// The rank-one operator |v⟩⟨v| (no normalization).
    pub fn outer(v: &DVector<Complex64>) -> Self {
        Self::from_nalgebra_unchecked(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_nalgebra(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                out.push(self.inner[(r, c)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_nalgebra_unchecked(self.inner.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// tr(AB) without forming the product.
    pub fn trace_of_product(&self, other: &ComplexMatrix) -> Complex64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.inner[(i, k)] * other.inner[(k, i)];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |m_ij − conj(m_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// ½(M + M†).
    pub fn hermitian_part(&self) -> Self {
        Self::from_nalgebra_unchecked((&self.inner + self.inner.adjoint()) * Complex64::new(0.5, 0.0))
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::from_nalgebra_unchecked(&self.inner * Complex64::new(a, 0.0))
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        Self::from_nalgebra_unchecked(self.inner.kronecker(&other.inner))
    }

    /// n-fold Kronecker power; `n = 0` gives the 1×1 identity.
    pub fn kron_power(&self, n: usize) -> Self {
        let mut acc = ComplexMatrix::identity(1);
        for _ in 0..n {
            acc = acc.kron(self);
        }
        acc
    }

    /// U M U†.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self::from_nalgebra_unchecked(&u.inner * &self.inner * u.inner.adjoint())
    }

    /// ‖M² − M‖_F and ‖M − M†‖_F.
    pub fn projection_defects(&self) -> (f64, f64) {
        let sq = &self.inner * &self.inner;
        let idem = (sq - &self.inner).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let herm = (&self.inner - self.inner.adjoint())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        (idem, herm)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_nalgebra_unchecked(&self.inner + &rhs.inner)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_nalgebra_unchecked(&self.inner - &rhs.inner)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_nalgebra_unchecked(&self.inner * &rhs.inner)
    }
}

/// Validation tolerances for [`validate_state`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub psd: f64,
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            psd: 1e-10,
            trace: 1e-10,
        }
    }
}

/// How far the input had to be moved to become an exact density operator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Corrections {
    /// max |m_ij − conj(m_ji)| of the input.
    pub hermiticity: f64,
    /// Total magnitude of eigenvalues clipped to zero (negative or below [`EPS_RANK`]).
    pub clipped_mass: f64,
    /// |trace − 1| before renormalization.
    pub trace_shift: f64,
}

impl Corrections {
    pub fn is_zero(&self) -> bool {
        self.hermiticity == 0.0 && self.clipped_mass == 0.0 && self.trace_shift == 0.0
    }
}

/// Eigenvalues (descending) with orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<DVector<Complex64>>,
    rank: usize,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[DVector<Complex64>] {
        &self.eigenvectors
    }

    /// Number of eigenvalues above [`EPS_RANK`].
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Σ λ_i |u_i⟩⟨u_i|.
    pub fn reconstruct(&self) -> ComplexMatrix {
        assemble(self.dim(), self.eigenvalues.iter().copied().zip(&self.eigenvectors))
    }
}

/// A validated state: Hermitian, positive, unit trace, with cached spectral data.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
    corrections: Corrections,
}

impl DensityOperator {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn corrections(&self) -> &Corrections {
        &self.corrections
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.spectrum.rank
    }

    /// tr ρ².
    pub fn purity(&self) -> f64 {
        self.spectrum.eigenvalues.iter().map(|r| r * r).sum()
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        validate_state(ComplexMatrix::identity(dim).scale(1.0 / dim as f64), &Tolerances::default())
            .expect("I/d is a state")
    }

    /// The pure state |ψ⟩⟨ψ| for a (not necessarily normalized) vector ψ.
    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::TraceDeviation { trace: norm * norm });
        }
        validate_state(ComplexMatrix::outer(&(psi / Complex64::new(norm, 0.0))), &Tolerances::default())
    }

    /// (1 − w)·self + w·other.
    pub fn mix(&self, other: &DensityOperator, w: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ParameterOutOfRange(format!("mixing weight {w}")));
        }
        let m = &self.matrix.scale(1.0 - w) + &other.matrix.scale(w);
        validate_state(m, &Tolerances::default())
    }

    /// U ρ U†.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: u.dim(),
            });
        }
        validate_state(self.matrix.conjugate_by(u), &Tolerances::default())
    }
}

fn assemble<'a>(dim: usize, pairs: impl Iterator<Item = (f64, &'a DVector<Complex64>)>) -> ComplexMatrix {
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (lambda, u) in pairs {
        if lambda == 0.0 {
            continue;
        }
        acc += (u * u.adjoint()) * Complex64::new(lambda, 0.0);
    }
    ComplexMatrix::from_nalgebra_unchecked(acc)
}

fn canonicalize_phase(v: &mut DVector<Complex64>) {
    if let Some(c) = v.iter().copied().find(|c| c.norm() > CANON_TOL) {
        let phase = c.conj() / Complex64::new(c.norm(), 0.0);
        *v *= phase;
        // exact real-positive leading component
        if let Some(first) = v.iter_mut().find(|c| c.norm() > CANON_TOL) {
            first.im = 0.0;
        }
    }
}

fn lexicographic(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn gram_schmidt(vectors: &mut [DVector<Complex64>]) {
    for k in 0..vectors.len() {
        let (done, rest) = vectors.split_at_mut(k);
        let v = &mut rest[0];
        for u in done.iter() {
            let proj = u.dotc(v);
            *v -= u * proj;
        }
        let n = v.norm();
        if n > 0.0 {
            *v /= Complex64::new(n, 0.0);
        }
    }
}

/// Puts (eigenvalue, eigenvector) pairs into canonical order in place.
fn canonical_order(values: &mut Vec<f64>, vectors: &mut Vec<DVector<Complex64>>) {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut vals: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    let mut vecs: Vec<DVector<Complex64>> = idx.iter().map(|&i| vectors[i].clone()).collect();

    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && vals[end - 1] - vals[end] <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt(&mut vecs[start..end]);
        }
        start = end;
    }
    for v in vecs.iter_mut() {
        canonicalize_phase(v);
    }

    // exact ties: lexicographic by canonical eigenvector
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && vals[end] == vals[start] {
            end += 1;
        }
        if end - start > 1 {
            let mut group: Vec<DVector<Complex64>> = vecs[start..end].to_vec();
            group.sort_by(lexicographic);
            vecs[start..end].clone_from_slice(&group);
        }
        start = end;
    }

    std::mem::swap(values, &mut vals);
    std::mem::swap(vectors, &mut vecs);
}

/// Canonically ordered eigendecomposition of a Hermitian matrix (no state cleanup).
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<DVector<Complex64>>)> {
    let dim = m.dim();
    if dim == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let h = m.hermitian_part().into_nalgebra();
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 1000 * dim.max(8))
        .ok_or(Error::EigensolverFailure { dim })?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let mut vectors: Vec<DVector<Complex64>> =
        (0..dim).map(|k| eig.eigenvectors.column(k).into_owned()).collect();
    canonical_order(&mut values, &mut vectors);
    Ok((values, vectors))
}

/// Validates a matrix as a density operator.
///
/// The returned state has its spectrum clipped at zero, eigenvalues below
/// [`EPS_RANK`] set to exactly zero, and is renormalized to unit trace. The
/// magnitude of each adjustment is recorded in [`DensityOperator::corrections`].
pub fn validate_state(matrix: ComplexMatrix, tol: &Tolerances) -> Result<DensityOperator> {
    let hermiticity = matrix.hermiticity_deviation();
    if hermiticity > tol.herm {
        return Err(Error::NotHermitian {
            deviation: hermiticity,
        });
    }
    let h = if hermiticity == 0.0 { matrix } else { matrix.hermitian_part() };
    let (raw, mut vectors) = hermitian_eigen(&h)?;
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -tol.psd {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let trace: f64 = (0..h.dim()).map(|i| h.get(i, i).re).sum();
    if (trace - 1.0).abs() > tol.trace {
        return Err(Error::TraceDeviation { trace });
    }

    let mut values: Vec<f64> = raw.iter().map(|&x| x.max(0.0)).collect();
    let clipped_neg: f64 = raw.iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
    let sum: f64 = values.iter().sum();
    let mut changed = clipped_neg > 0.0 || sum != 1.0;
    if sum != 1.0 {
        values.iter_mut().for_each(|x| *x /= sum);
    }
    let mut clipped_small = 0.0;
    for x in values.iter_mut() {
        if *x > 0.0 && *x < EPS_RANK {
            clipped_small += *x;
            *x = 0.0;
        }
    }
    if clipped_small > 0.0 {
        changed = true;
        let s: f64 = values.iter().sum();
        values.iter_mut().for_each(|x| *x /= s);
        canonical_order(&mut values, &mut vectors);
    }
    let rank = values.iter().filter(|&&x| x > 0.0).count();
    let spectrum = SpectralDecomposition {
        eigenvalues: values,
        eigenvectors: vectors,
        rank,
    };
    let matrix = if changed { spectrum.reconstruct() } else { h };
    Ok(DensityOperator {
        matrix,
        spectrum,
        corrections: Corrections {
            hermiticity,
            clipped_mass: clipped_neg + clipped_small,
            trace_shift: (sum - 1.0).abs(),
        },
    })
}

/// Spectral decomposition of a validated state (computed at validation time).
pub fn spectral_decompose(rho: &DensityOperator) -> Result<SpectralDecomposition> {
    Ok(rho.spectrum.clone())
}

/// Orthogonal projection onto the support, Σ_{λ_i > 0} |u_i⟩⟨u_i|.
pub fn support_projector(sd: &SpectralDecomposition) -> ComplexMatrix {
    assemble(
        sd.dim(),
        sd.eigenvalues
            .iter()
            .zip(&sd.eigenvectors)
            .filter(|(&l, _)| l > 0.0)
            .map(|(_, u)| (1.0, u)),
    )
}

/// Orthogonal projection onto the kernel, I − Π.
pub fn kernel_projector(sd: &SpectralDecomposition) -> ComplexMatrix {
    assemble(
        sd.dim(),
        sd.eigenvalues
            .iter()
            .zip(&sd.eigenvectors)
            .filter(|(&l, _)| l == 0.0)
            .map(|(_, u)| (1.0, u)),
    )
}

/// What a matrix function does on the kernel (zero eigenvalues).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AtZero {
    /// Call the function at 0.
    Evaluate,
    /// Use this value at 0.
    Value(f64),
    /// Leave the kernel out (principal-support convention, e.g. for ln or negative powers).
    Skip,
}

/// Σ g(λ_i)|u_i⟩⟨u_i| with the kernel handled per `at_zero`.
pub fn matrix_function_hermitian(
    sd: &SpectralDecomposition,
    g: impl Fn(f64) -> f64,
    at_zero: AtZero,
) -> Result<ComplexMatrix> {
    let dim = sd.dim();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (&lambda, u) in sd.eigenvalues.iter().zip(&sd.eigenvectors) {
        let value = if lambda == 0.0 {
            match at_zero {
                AtZero::Skip => continue,
                AtZero::Value(v) => v,
                AtZero::Evaluate => g(0.0),
            }
        } else {
            g(lambda)
        };
        if !value.is_finite() {
            return Err(Error::FunctionUndefinedAtEigenvalue { eigenvalue: lambda });
        }
        if value != 0.0 {
            acc += (u * u.adjoint()) * Complex64::new(value, 0.0);
        }
    }
    Ok(ComplexMatrix::from_nalgebra_unchecked(acc))
}

/// ρ^p on the support; `p = 0` gives the support projector and `p < 0` the
/// pseudo-inverse power.
pub fn matrix_power(sd: &SpectralDecomposition, p: f64) -> Result<ComplexMatrix> {
    let at_zero = if p > 0.0 { AtZero::Value(0.0) } else { AtZero::Skip };
    matrix_function_hermitian(sd, |x| x.powf(p), at_zero)
}

/// Natural logarithm restricted to the support.
pub fn matrix_log(sd: &SpectralDecomposition) -> Result<ComplexMatrix> {
    matrix_function_hermitian(sd, f64::ln, AtZero::Skip)
}

/// ρ^{⊗n}, with spectral data formed from products of the factor's spectrum.
pub fn tensor_power(rho: &DensityOperator, n: usize, cap: usize) -> Result<DensityOperator> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("tensor power n must be ≥ 1".into()));
    }
    let d = rho.dim();
    let big = d
        .checked_pow(n as u32)
        .filter(|&b| b <= cap)
        .ok_or(Error::DimensionCapExceeded {
            dim: d.saturating_pow(n as u32),
            cap,
        })?;
    if n == 1 {
        return Ok(rho.clone());
    }
    let sd = &rho.spectrum;
    let mut values = vec![1.0];
    let mut vectors = vec![DVector::from_element(1, Complex64::new(1.0, 0.0))];
    for _ in 0..n {
        let mut nv = Vec::with_capacity(values.len() * d);
        let mut nvec = Vec::with_capacity(values.len() * d);
        for (a, va) in values.iter().zip(&vectors) {
            for (b, vb) in sd.eigenvalues.iter().zip(&sd.eigenvectors) {
                nv.push(a * b);
                nvec.push(va.kronecker(vb));
            }
        }
        values = nv;
        vectors = nvec;
    }
    for x in values.iter_mut() {
        if *x < EPS_RANK {
            *x = 0.0;
        }
    }
    let s: f64 = values.iter().sum();
    values.iter_mut().for_each(|x| *x /= s);
    canonical_order(&mut values, &mut vectors);
    let rank = values.iter().filter(|&&x| x > 0.0).count();
    debug_assert_eq!(values.len(), big);
    Ok(DensityOperator {
        matrix: rho.matrix.kron_power(n),
        spectrum: SpectralDecomposition {
            eigenvalues: values,
            eigenvectors: vectors,
            rank,
        },
        corrections: Corrections::default(),
    })
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let dev = m.hermiticity_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let (values, _) = hermitian_eigen(m)?;
    Ok(values.iter().map(|x| x.abs()).sum())
}

/// ‖A − B‖_F.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ket(entries: &[Complex64]) -> DVector<Complex64> {
        DVector::from_column_slice(entries)
    }

    #[test]
    fn maximally_mixed_needs_no_correction() {
        let rho = validate_state(ComplexMatrix::identity(2).scale(0.5), &Tolerances::default()).unwrap();
        assert!(rho.corrections().is_zero());
        assert_eq!(rho.spectrum().eigenvalues(), &[0.5, 0.5]);
    }

    #[test]
    fn tiny_trace_excess_is_renormalized() {
        let m = ComplexMatrix::from_real_diagonal(&[0.7, 0.3 + 1e-15]);
        let rho = validate_state(m, &Tolerances::default()).unwrap();
        let sum: f64 = rho.spectrum().eigenvalues().iter().sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-15);
        assert!(rho.corrections().trace_shift > 0.0);
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        let m = ComplexMatrix::from_real_diagonal(&[1.2, -0.2]);
        match validate_state(m, &Tolerances::default()) {
            Err(Error::NotPositive { min_eigenvalue }) => assert_abs_diff_eq!(min_eigenvalue, -0.2, epsilon = 1e-12),
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_and_bad_trace_are_rejected() {
        let m = ComplexMatrix::from_row_major(2, &[c(0.5), c(0.1), c(0.0), c(0.5)]).unwrap();
        assert!(matches!(
            validate_state(m, &Tolerances::default()),
            Err(Error::NotHermitian { .. })
        ));
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]);
        assert!(matches!(
            validate_state(m, &Tolerances::default()),
            Err(Error::TraceDeviation { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_row_major(2, &[c(1.0)]),
            Err(Error::EntryCount { expected: 4, got: 1 })
        ));
    }

    #[test]
    fn diagonal_state_decomposes_to_standard_basis() {
        let rho = validate_state(ComplexMatrix::from_real_diagonal(&[0.3, 0.7]), &Tolerances::default()).unwrap();
        let sd = spectral_decompose(&rho).unwrap();
        assert_abs_diff_eq!(sd.eigenvalues()[0], 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(sd.eigenvalues()[1], 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(sd.eigenvectors()[0][1].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sd.eigenvectors()[1][0].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn plus_state_has_canonical_eigenvector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityOperator::pure(&ket(&[c(1.0), c(1.0)])).unwrap();
        let sd = rho.spectrum();
        assert_abs_diff_eq!(sd.eigenvalues()[0], 1.0, epsilon = 1e-15);
        assert_eq!(sd.eigenvalues()[1], 0.0);
        assert_eq!(sd.rank(), 1);
        assert_abs_diff_eq!(sd.eigenvectors()[0][0].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(sd.eigenvectors()[0][1].re, h, epsilon = 1e-15);
        assert_eq!(sd.eigenvectors()[0][0].im, 0.0);
    }

    #[test]
    fn support_projectors() {
        let full = validate_state(ComplexMatrix::from_real_diagonal(&[0.2, 0.3, 0.5]), &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(
            frobenius_distance(&support_projector(full.spectrum()), &ComplexMatrix::identity(3)),
            0.0,
            epsilon = 1e-14
        );
        let zero = validate_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0]), &Tolerances::default()).unwrap();
        let p = support_projector(zero.spectrum());
        assert_eq!(p, ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));
        assert_eq!(kernel_projector(zero.spectrum()), ComplexMatrix::from_real_diagonal(&[0.0, 1.0]));
    }

    #[test]
    fn square_root_of_diagonal() {
        let rho = validate_state(ComplexMatrix::from_real_diagonal(&[0.25, 0.75]), &Tolerances::default()).unwrap();
        let s = matrix_power(rho.spectrum(), 0.5).unwrap();
        assert_abs_diff_eq!(s.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.get(1, 1).re, 0.75f64.sqrt(), epsilon = 1e-15);
        let id = matrix_function_hermitian(rho.spectrum(), |x| x, AtZero::Evaluate).unwrap();
        assert!(frobenius_distance(&id, rho.matrix()) <= 1e-10);
    }

    #[test]
    fn undefined_function_value_is_reported() {
        let rho = validate_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0]), &Tolerances::default()).unwrap();
        assert!(matches!(
            matrix_function_hermitian(rho.spectrum(), f64::ln, AtZero::Evaluate),
            Err(Error::FunctionUndefinedAtEigenvalue { .. })
        ));
        let log = matrix_log(rho.spectrum()).unwrap();
        assert_eq!(log.frobenius_norm(), 0.0);
    }

    #[test]
    fn tensor_powers() {
        let rho = DensityOperator::maximally_mixed(2);
        let one = tensor_power(&rho, 1, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(one, rho);
        let two = tensor_power(&rho, 2, DEFAULT_DIM_CAP).unwrap();
        assert!(frobenius_distance(two.matrix(), &ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
        assert!(matches!(
            tensor_power(&rho, 13, DEFAULT_DIM_CAP),
            Err(Error::DimensionCapExceeded { dim: 8192, cap: 4096 })
        ));
    }

    #[test]
    fn trace_norms() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            trace_norm(&ComplexMatrix::from_real_diagonal(&[0.5, -0.5])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let zero = DensityOperator::pure(&ket(&[c(1.0), c(0.0)])).unwrap();
        let one = DensityOperator::pure(&ket(&[c(0.0), c(1.0)])).unwrap();
        assert_abs_diff_eq!(trace_norm(&(zero.matrix() - one.matrix())).unwrap(), 2.0, epsilon = 1e-14);
        let skew = ComplexMatrix::from_row_major(2, &[c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(matches!(trace_norm(&skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn degenerate_eigenspace_is_ordered_deterministically() {
        let m = ComplexMatrix::from_real_diagonal(&[0.25, 0.25, 0.25, 0.25]);
        let a = validate_state(m.clone(), &Tolerances::default()).unwrap();
        let b = validate_state(m, &Tolerances::default()).unwrap();
        assert_eq!(a.spectrum(), b.spectrum());
        let vs = a.spectrum().eigenvectors();
        for w in vs.windows(2) {
            assert_ne!(lexicographic(&w[0], &w[1]), Ordering::Greater);
        }
    }
}
