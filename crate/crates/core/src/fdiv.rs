//! Classical f-divergences of discrete distributions.
//!
//! For distributions P, Q on a common finite index set,
//!
//! ```text
//! D_f(P‖Q) = Σ_{P(i)Q(i) > 0} Q(i) f(P(i)/Q(i)) + f(0)·Q(P = 0) + f'(∞)·P(Q = 0)
//! ```
//!
//! where f(0) = lim_{t↓0} f(t) and f'(∞) = lim_{t→∞} f(t)/t are declared by the
//! [`DivergenceFunction`] (never estimated numerically), and boundary terms use
//! 0·(±∞) = 0. Logarithms are natural throughout.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extended::{CompensatedSum, ExtendedReal, MinusInfinity, PlusInfinity};
use crate::ns::NsPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Convex,
    Concave,
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A convex or concave f on (0, ∞) together with its boundary values.
#[derive(Clone)]
pub struct DivergenceFunction {
    name: String,
    evaluator: Evaluator,
    f_at_zero: ExtendedReal,
    f_prime_at_infinity: ExtendedReal,
    shape: Shape,
}

impl fmt::Debug for DivergenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DivergenceFunction")
            .field("name", &self.name)
            .field("f_at_zero", &self.f_at_zero)
            .field("f_prime_at_infinity", &self.f_prime_at_infinity)
            .field("shape", &self.shape)
            .finish()
    }
}

impl DivergenceFunction {
    /// A convex f may not have f(0) or f'(∞) equal to −∞; a concave one may not
    /// have either equal to +∞.
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_at_zero: ExtendedReal,
        f_prime_at_infinity: ExtendedReal,
        shape: Shape,
    ) -> Result<Self> {
        let name = name.into();
        let forbidden = match shape {
            Shape::Convex => MinusInfinity,
            Shape::Concave => PlusInfinity,
        };
        if f_at_zero == forbidden || f_prime_at_infinity == forbidden {
            return Err(Error::InvalidDivergenceFunction {
                name,
                reason: format!("{shape:?} function cannot have a boundary value of {forbidden}"),
            });
        }
        Ok(Self {
            name,
            evaluator: Arc::new(evaluator),
            f_at_zero,
            f_prime_at_infinity,
            shape,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f_at_zero(&self) -> ExtendedReal {
        self.f_at_zero
    }

    pub fn f_prime_at_infinity(&self) -> ExtendedReal {
        self.f_prime_at_infinity
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// f(t) for t > 0; non-finite results are errors.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = (self.evaluator)(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEvaluation {
                name: self.name.clone(),
                t,
            })
        }
    }

    /// Midpoints of a log-spaced grid on [1e-6, 1e6] where the declared shape
    /// fails the midpoint test by more than rounding. Empty means no evidence
    /// against the declaration; this is a diagnostic, not a proof.
    pub fn convexity_spot_check(&self) -> Vec<f64> {
        let grid: Vec<f64> = (0..=120).map(|k| 10f64.powf(-6.0 + 0.1 * k as f64)).collect();
        let sign = match self.shape {
            Shape::Convex => 1.0,
            Shape::Concave => -1.0,
        };
        let mut bad = Vec::new();
        for w in grid.windows(2) {
            let (a, b) = (w[0], w[1]);
            let m = 0.5 * (a + b);
            let (Ok(fa), Ok(fb), Ok(fm)) = (self.eval(a), self.eval(b), self.eval(m)) else {
                bad.push(m);
                continue;
            };
            let gap = sign * (0.5 * (fa + fb) - fm);
            let scale = fa.abs().max(fb.abs()).max(fm.abs()).max(1.0);
            if gap < -1e-12 * scale {
                bad.push(m);
            }
        }
        bad
    }
}

/// The named divergence functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Builtin {
    /// t ln t
    Kl,
    /// t^α
    RenyiAlpha(f64),
    /// ½(√t − 1)²
    HellingerSq,
    /// (t^α − 1)/(α − 1)
    HellingerAlpha(f64),
    /// |t − 1|
    TotalVariation,
    /// (t − 1)²
    ChiSq,
}

pub const BUILTIN_NAMES: [&str; 6] = [
    "kl",
    "renyi_alpha",
    "hellinger_sq",
    "hellinger_alpha",
    "total_variation",
    "chi_sq",
];

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha > 0.0 && alpha != 1.0 {
        Ok(alpha)
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

impl Builtin {
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        let need_alpha = || alpha.ok_or(Error::AlphaOutOfRange(f64::NAN)).and_then(check_alpha);
        Ok(match name {
            "kl" => Builtin::Kl,
            "renyi_alpha" => Builtin::RenyiAlpha(need_alpha()?),
            "hellinger_sq" => Builtin::HellingerSq,
            "hellinger_alpha" => Builtin::HellingerAlpha(need_alpha()?),
            "total_variation" => Builtin::TotalVariation,
            "chi_sq" => Builtin::ChiSq,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::Kl => "kl",
            Builtin::RenyiAlpha(_) => "renyi_alpha",
            Builtin::HellingerSq => "hellinger_sq",
            Builtin::HellingerAlpha(_) => "hellinger_alpha",
            Builtin::TotalVariation => "total_variation",
            Builtin::ChiSq => "chi_sq",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Builtin::RenyiAlpha(a) | Builtin::HellingerAlpha(a) => Some(a),
            _ => None,
        }
    }

    /// Short label including α, e.g. `hellinger_alpha(0.5)`.
    pub fn label(&self) -> String {
        match self.alpha() {
            Some(a) => format!("{}({a})", self.name()),
            None => self.name().to_string(),
        }
    }

    pub fn function(&self) -> Result<DivergenceFunction> {
        use ExtendedReal::Finite;
        let label = self.label();
        match *self {
            Builtin::Kl => DivergenceFunction::new(label, |t| t * t.ln(), Finite(0.0), PlusInfinity, Shape::Convex),
            Builtin::RenyiAlpha(a) => {
                let a = check_alpha(a)?;
                if a < 1.0 {
                    DivergenceFunction::new(label, move |t| t.powf(a), Finite(0.0), Finite(0.0), Shape::Concave)
                } else {
                    DivergenceFunction::new(label, move |t| t.powf(a), Finite(0.0), PlusInfinity, Shape::Convex)
                }
            }
            Builtin::HellingerSq => DivergenceFunction::new(
                label,
                |t| 0.5 * (t.sqrt() - 1.0).powi(2),
                Finite(0.5),
                Finite(0.5),
                Shape::Convex,
            ),
            Builtin::HellingerAlpha(a) => {
                let a = check_alpha(a)?;
                let f = move |t: f64| (t.powf(a) - 1.0) / (a - 1.0);
                if a < 1.0 {
                    DivergenceFunction::new(label, f, Finite(1.0 / (1.0 - a)), Finite(0.0), Shape::Convex)
                } else {
                    DivergenceFunction::new(label, f, Finite(-1.0 / (a - 1.0)), PlusInfinity, Shape::Convex)
                }
            }
            Builtin::TotalVariation => {
                DivergenceFunction::new(label, |t| (t - 1.0).abs(), Finite(1.0), Finite(1.0), Shape::Convex)
            }
            Builtin::ChiSq => {
                DivergenceFunction::new(label, |t| (t - 1.0).powi(2), Finite(1.0), PlusInfinity, Shape::Convex)
            }
        }
    }
}

/// Looks up a named divergence function; `alpha` is required by the α-families.
pub fn builtin(name: &str, alpha: Option<f64>) -> Result<DivergenceFunction> {
    Builtin::parse(name, alpha)?.function()
}

/// Non-negative weights summing to 1 within 1e-9.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDistribution {
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidDistribution(format!("weight {w} at index {i}")));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("weights sum to {s}")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The same distribution with its index set permuted.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            weights: perm.iter().map(|&i| self.weights[i]).collect(),
        }
    }
}

/// finite + f(0)·mass_at_zero + f'(∞)·mass_at_infinity in extended arithmetic.
pub(crate) fn assemble(finite: f64, f: &DivergenceFunction, mass_at_zero: f64, mass_at_infinity: f64) -> Result<ExtendedReal> {
    ExtendedReal::Finite(finite)
        .checked_add(&f.f_at_zero.scale(mass_at_zero))?
        .checked_add(&f.f_prime_at_infinity.scale(mass_at_infinity))
}

/// D_f(P‖Q) for discrete distributions on one index set.
pub fn classical_f_divergence(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    f: &DivergenceFunction,
) -> Result<ExtendedReal> {
    if p.len() != q.len() {
        return Err(Error::IndexMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut finite = CompensatedSum::new();
    let mut at_zero = CompensatedSum::new();
    let mut at_infinity = CompensatedSum::new();
    for (&pi, &qi) in p.weights.iter().zip(&q.weights) {
        match (pi > 0.0, qi > 0.0) {
            (true, true) => finite.add(qi * f.eval(pi / qi)?),
            (false, true) => at_zero.add(qi),
            (true, false) => at_infinity.add(pi),
            (false, false) => {}
        }
    }
    assemble(finite.value(), f, at_zero.value(), at_infinity.value())
}

/// D_f(P‖Q) of a Nussbaum–Szkoła pair, evaluated from the spectral data:
///
/// ```text
/// Σ_{r_i s_j ≠ 0} f(r_i/s_j) s_j |⟨u_i|v_j⟩|² + f(0)·Q(P=0) + f'(∞)·P(Q=0)
/// ```
///
/// The ratio is formed from eigenvalues, never from P(i,j)/Q(i,j).
pub fn ns_f_divergence(ns: &NsPair, f: &DivergenceFunction) -> Result<ExtendedReal> {
    let d = ns.dim();
    let (r, s) = (ns.r(), ns.s());
    let mut finite = CompensatedSum::new();
    let mut at_zero = CompensatedSum::new();
    let mut at_infinity = CompensatedSum::new();
    for i in 0..d {
        for j in 0..d {
            let ov = ns.overlap(i, j);
            if ov == 0.0 {
                continue;
            }
            match (r[i] > 0.0, s[j] > 0.0) {
                (true, true) => finite.add(s[j] * ov * f.eval(r[i] / s[j])?),
                (false, true) => at_zero.add(s[j] * ov),
                (true, false) => at_infinity.add(r[i] * ov),
                (false, false) => {}
            }
        }
    }
    assemble(finite.value(), f, at_zero.value(), at_infinity.value())
}

/// (1/(α−1))·ln(value) for the t^α power divergence, in extended arithmetic.
pub fn renyi_from_power_divergence(value: ExtendedReal, alpha: f64) -> Result<ExtendedReal> {
    let alpha = check_alpha(alpha)?;
    if let ExtendedReal::Finite(x) = value {
        if x < 0.0 {
            return Err(Error::NegativeDivergenceValue(x));
        }
    }
    Ok(value.ln()?.scale(1.0 / (alpha - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dist(w: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::new(w.to_vec()).unwrap()
    }

    fn kl() -> DivergenceFunction {
        builtin("kl", None).unwrap()
    }

    #[test]
    fn self_divergence_is_zero() {
        let p = dist(&[0.2, 0.3, 0.5]);
        assert_eq!(classical_f_divergence(&p, &p, &kl()).unwrap(), ExtendedReal::ZERO);
    }

    #[test]
    fn kl_with_zero_in_p() {
        let v = classical_f_divergence(&dist(&[1.0, 0.0]), &dist(&[0.5, 0.5]), &kl()).unwrap();
        assert_abs_diff_eq!(v.finite().unwrap(), std::f64::consts::LN_2, epsilon = 1e-15);
    }

    #[test]
    fn kl_without_absolute_continuity_is_infinite() {
        let v = classical_f_divergence(&dist(&[0.5, 0.5]), &dist(&[1.0, 0.0]), &kl()).unwrap();
        assert_eq!(v, PlusInfinity);
    }

    #[test]
    fn chi_squared_two_terms() {
        // brute force: 0.5·(1.5−1)² + 0.5·(0.5−1)² = 0.25
        let brute = 0.5 * (0.75f64 / 0.5 - 1.0).powi(2) + 0.5 * (0.25f64 / 0.5 - 1.0).powi(2);
        assert_abs_diff_eq!(brute, 0.25, epsilon = 1e-15);
        let v = classical_f_divergence(&dist(&[0.75, 0.25]), &dist(&[0.5, 0.5]), &builtin("chi_sq", None).unwrap())
            .unwrap();
        assert_abs_diff_eq!(v.finite().unwrap(), brute, epsilon = 1e-15);
    }

    #[test]
    fn mismatched_index_sets() {
        assert!(matches!(
            classical_f_divergence(&dist(&[1.0]), &dist(&[0.5, 0.5]), &kl()),
            Err(Error::IndexMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn builtin_values() {
        assert_eq!(kl().eval(1.0).unwrap(), 0.0);
        assert_eq!(builtin("chi_sq", None).unwrap().f_at_zero(), ExtendedReal::Finite(1.0));
        let r = builtin("renyi_alpha", Some(0.5)).unwrap();
        assert_eq!(r.f_prime_at_infinity(), ExtendedReal::Finite(0.0));
        assert_eq!(r.shape(), Shape::Concave);
        let h = builtin("hellinger_alpha", Some(2.0)).unwrap();
        assert_eq!(h.f_at_zero(), ExtendedReal::Finite(-1.0));
        assert_eq!(h.f_prime_at_infinity(), PlusInfinity);
        let h = builtin("hellinger_alpha", Some(0.5)).unwrap();
        assert_eq!(h.f_at_zero(), ExtendedReal::Finite(2.0));
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(builtin("js", None), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("renyi_alpha", Some(1.0)), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(builtin("renyi_alpha", Some(-0.5)), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(builtin("hellinger_alpha", None), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn declared_boundary_values_must_match_shape() {
        let bad = DivergenceFunction::new("neg", |t| -t.ln(), PlusInfinity, MinusInfinity, Shape::Convex);
        assert!(matches!(bad, Err(Error::InvalidDivergenceFunction { .. })));
        let bad = DivergenceFunction::new("ln", f64::ln, MinusInfinity, ExtendedReal::ZERO, Shape::Concave);
        assert!(bad.is_ok());
    }

    #[test]
    fn opposite_infinite_boundary_terms_are_reported() {
        // Violates the shape rule on purpose by lying about it being concave.
        let weird = DivergenceFunction::new("weird", |t| t, MinusInfinity, MinusInfinity, Shape::Concave).unwrap();
        let liar = DivergenceFunction {
            f_prime_at_infinity: PlusInfinity,
            ..weird
        };
        let r = classical_f_divergence(&dist(&[0.5, 0.5, 0.0]), &dist(&[0.5, 0.0, 0.5]), &liar);
        assert_eq!(r, Err(Error::IllFormedInfinitySum));
    }

    #[test]
    fn spot_check_flags_wrong_declarations() {
        for name in ["kl", "hellinger_sq", "total_variation", "chi_sq"] {
            assert!(builtin(name, None).unwrap().convexity_spot_check().is_empty(), "{name}");
        }
        assert!(builtin("renyi_alpha", Some(0.3)).unwrap().convexity_spot_check().is_empty());
        let wrong = DivergenceFunction::new("sqrt", f64::sqrt, ExtendedReal::ZERO, ExtendedReal::ZERO, Shape::Convex)
            .unwrap();
        assert!(!wrong.convexity_spot_check().is_empty());
    }

    #[test]
    fn renyi_conversion() {
        assert_eq!(renyi_from_power_divergence(1.0.into(), 2.0).unwrap(), ExtendedReal::ZERO);
        assert_eq!(renyi_from_power_divergence(ExtendedReal::ZERO, 0.5).unwrap(), PlusInfinity);
        assert_eq!(renyi_from_power_divergence(PlusInfinity, 2.0).unwrap(), PlusInfinity);
        assert!(matches!(
            renyi_from_power_divergence((-0.1).into(), 2.0),
            Err(Error::NegativeDivergenceValue(_))
        ));
        // ΣP²/Q = 0.75²/0.5 + 0.25²/0.5 = 1.25
        let p = dist(&[0.75, 0.25]);
        let q = dist(&[0.5, 0.5]);
        let power = classical_f_divergence(&p, &q, &builtin("renyi_alpha", Some(2.0)).unwrap()).unwrap();
        assert_abs_diff_eq!(power.finite().unwrap(), 1.25, epsilon = 1e-15);
        let d2 = renyi_from_power_divergence(power, 2.0).unwrap();
        assert_abs_diff_eq!(d2.finite().unwrap(), 1.25f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(DiscreteDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![f64::NAN, 1.0]).is_err());
    }
}
