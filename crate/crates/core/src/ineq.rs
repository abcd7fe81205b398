//! Quantum f-divergence inequalities as checkable predicates.
//!
//! Every classical inequality between f-divergences transfers verbatim to states
//! through the Nussbaum–Szkoła pair. With V = Σ|P − Q|, ℋ² = ½Σ(√P − √Q)²,
//! D the Umegaki entropy, D' = D(σ‖ρ) and χ'² = χ²(σ‖ρ):
//!
//! ```text
//!  1  ℋ² ≤ V/2 ≤ ℋ√(2 − ℋ²)
//!  2  D ≤ ln(1 + χ²)
//!  3  χ² ≤ (1 + (α−1)ℋ_α)^{1/(α−1)} − 1                     α > 2
//!  4  χ² ≥ V² (V ≤ 1),  χ² ≥ V/(2 − V) (V > 1)
//!  5  D²/D' ≤ ½χ²,  16ℋ⁴ ≤ DD' ≤ ¼χ²χ'²,  8ℋ² ≤ D + D' ≤ ½(χ² + χ'²)
//!  6  D ≤ ½(V + χ²)
//!  7  D + D' ≥ V ln((2 + V)/(2 − V)),  χ² + χ'² ≥ 8V²/(4 − V²)
//!  8  ℋ_α ≤ D_α ≤ D ≤ D_β ≤ ℋ_β                            0 < α < 1 < β
//!  9  V ≤ ψ_f(D_f) for f ∈ {hellinger_sq, chi_sq, kl}
//! 10  D_f(ρ_n‖σ_n) → 0 implies V(ρ_n‖σ_n) → 0
//! ```
//!
//! The ψ_f of item 9 are 2√(x(2 − x)), √x and √(2x) respectively.
//! Logarithms are natural.

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::fdiv::{builtin, ns_f_divergence, DivergenceFunction, Shape};
use crate::linalg::DensityOperator;
use crate::ns::{ns_of_states, NsPair};

pub const ITEMS: std::ops::RangeInclusive<u8> = 1..=10;

/// Relative slack: a margin m passes when m ≥ −SLACK·max(1, |lhs|, |rhs|).
pub const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityParams {
    /// α of the chain in item 8, in (0, 1).
    pub alpha: f64,
    /// β of the chain in item 8, in (1, ∞).
    pub beta: f64,
    /// Hellinger order of item 3, in (2, ∞).
    pub hellinger_order: f64,
}

impl Default for InequalityParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 2.0,
            hellinger_order: 3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub item: u8,
    pub label: String,
    pub lhs: ExtendedReal,
    pub rhs: ExtendedReal,
    /// rhs − lhs in extended arithmetic; equal infinities give 0.
    pub margin: ExtendedReal,
    pub pair_id: String,
}

impl InequalityReport {
    fn new(item: u8, label: &str, lhs: f64, rhs: f64, pair_id: &str) -> Self {
        let margin = if lhs == rhs {
            0.0
        } else {
            rhs - lhs
        };
        Self {
            item,
            label: label.to_string(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            margin: margin.into(),
            pair_id: pair_id.to_string(),
        }
    }

    /// Whether lhs ≤ rhs within the relative slack.
    pub fn holds(&self) -> bool {
        match self.margin {
            ExtendedReal::Finite(m) => {
                let scale = 1f64.max(self.lhs.to_f64().abs()).max(self.rhs.to_f64().abs());
                m >= -SLACK * scale
            }
            ExtendedReal::PlusInfinity => true,
            ExtendedReal::MinusInfinity => false,
        }
    }
}

/// a·b with 0·∞ = 0.
fn mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// Divergences of one pair in both directions, as doubles with +∞ allowed.
struct PairQuantities {
    forward: NsPair,
    backward: NsPair,
}

impl PairQuantities {
    fn new(rho: &DensityOperator, sigma: &DensityOperator) -> Result<Self> {
        Ok(Self {
            forward: ns_of_states(rho, sigma)?,
            backward: ns_of_states(sigma, rho)?,
        })
    }

    fn eval(ns: &NsPair, f: &DivergenceFunction) -> Result<f64> {
        Ok(ns_f_divergence(ns, f)?.to_f64())
    }

    fn fwd(&self, name: &str, alpha: Option<f64>) -> Result<f64> {
        Self::eval(&self.forward, &builtin(name, alpha)?)
    }

    fn bwd(&self, name: &str, alpha: Option<f64>) -> Result<f64> {
        Self::eval(&self.backward, &builtin(name, alpha)?)
    }

    /// Petz–Rényi D_α as a double.
    fn renyi(&self, alpha: f64) -> Result<f64> {
        let power = ns_f_divergence(&self.forward, &builtin("renyi_alpha", Some(alpha))?)?;
        Ok(crate::fdiv::renyi_from_power_divergence(power, alpha)?.to_f64())
    }

    /// V clamped to its exact range [0, 2].
    fn v(&self) -> Result<f64> {
        Ok(self.fwd("total_variation", None)?.clamp(0.0, 2.0))
    }
}

fn check_params(item: u8, p: &InequalityParams) -> Result<()> {
    match item {
        3 if !(p.hellinger_order > 2.0 && p.hellinger_order.is_finite()) => Err(Error::ParameterOutOfRange(format!(
            "item 3 needs a Hellinger order above 2, got {}",
            p.hellinger_order
        ))),
        8 if !(p.alpha > 0.0 && p.alpha < 1.0) => {
            Err(Error::ParameterOutOfRange(format!("item 8 needs 0 < alpha < 1, got {}", p.alpha)))
        }
        8 if !(p.beta > 1.0 && p.beta.is_finite()) => {
            Err(Error::ParameterOutOfRange(format!("item 8 needs beta > 1, got {}", p.beta)))
        }
        10 => Err(Error::ParameterOutOfRange(
            "item 10 is checked on state sequences, see check_convergence_item10".into(),
        )),
        1..=9 => Ok(()),
        _ => Err(Error::ParameterOutOfRange(format!("no inequality item {item}"))),
    }
}

/// Checks one item on a pair; items with several inequalities give several reports.
pub fn check_item(
    item: u8,
    rho: &DensityOperator,
    sigma: &DensityOperator,
    params: &InequalityParams,
    pair_id: &str,
) -> Result<Vec<InequalityReport>> {
    check_params(item, params)?;
    let q = PairQuantities::new(rho, sigma)?;
    item_reports(item, &q, params, pair_id)
}

/// Items 1 through 9 on one pair.
pub fn check_all_items(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    params: &InequalityParams,
    pair_id: &str,
) -> Result<Vec<InequalityReport>> {
    for item in 1..=9 {
        check_params(item, params)?;
    }
    let q = PairQuantities::new(rho, sigma)?;
    let mut out = Vec::new();
    for item in 1..=9 {
        out.extend(item_reports(item, &q, params, pair_id)?);
    }
    Ok(out)
}

fn item_reports(item: u8, q: &PairQuantities, params: &InequalityParams, id: &str) -> Result<Vec<InequalityReport>> {
    let r = |label: &str, lhs: f64, rhs: f64| InequalityReport::new(item, label, lhs, rhs, id);
    Ok(match item {
        1 => {
            let h2 = q.fwd("hellinger_sq", None)?;
            let half_v = q.v()? / 2.0;
            let upper = (h2.max(0.0) * (2.0 - h2).max(0.0)).sqrt();
            vec![r("H^2 <= V/2", h2, half_v), r("V/2 <= H*sqrt(2-H^2)", half_v, upper)]
        }
        2 => {
            let d = q.fwd("kl", None)?;
            let chi = q.fwd("chi_sq", None)?;
            vec![r("D <= ln(1+chi^2)", d, chi.ln_1p())]
        }
        3 => {
            let a = params.hellinger_order;
            let chi = q.fwd("chi_sq", None)?;
            let ha = q.fwd("hellinger_alpha", Some(a))?;
            let rhs = (1.0 + (a - 1.0) * ha).max(0.0).powf(1.0 / (a - 1.0)) - 1.0;
            vec![r(&format!("chi^2 <= (1+(a-1)H_a)^(1/(a-1))-1, a={a}"), chi, rhs)]
        }
        4 => {
            let v = q.v()?;
            let chi = q.fwd("chi_sq", None)?;
            let lower = if v <= 1.0 {
                v * v
            } else if v >= 2.0 {
                f64::INFINITY
            } else {
                v / (2.0 - v)
            };
            vec![r("chi^2 >= V^2 | V/(2-V)", lower, chi)]
        }
        5 => {
            let d = q.fwd("kl", None)?;
            let d_rev = q.bwd("kl", None)?;
            let chi = q.fwd("chi_sq", None)?;
            let chi_rev = q.bwd("chi_sq", None)?;
            let h2 = q.fwd("hellinger_sq", None)?;
            let ratio = {
                let num = d.max(0.0) * d.max(0.0);
                let den = d_rev.max(0.0);
                if num == 0.0 {
                    0.0
                } else if den == 0.0 || (num.is_infinite() && den.is_infinite()) {
                    f64::INFINITY
                } else {
                    num / den
                }
            };
            let prod = mul(d, d_rev);
            let sum = d + d_rev;
            vec![
                r("D^2/D' <= chi^2/2", ratio, 0.5 * chi),
                r("16 H^4 <= D D'", 16.0 * h2 * h2, prod),
                r("D D' <= chi^2 chi'^2/4", prod, 0.25 * mul(chi, chi_rev)),
                r("8 H^2 <= D + D'", 8.0 * h2, sum),
                r("D + D' <= (chi^2 + chi'^2)/2", sum, 0.5 * (chi + chi_rev)),
            ]
        }
        6 => {
            let d = q.fwd("kl", None)?;
            let v = q.v()?;
            let chi = q.fwd("chi_sq", None)?;
            vec![r("D <= (V + chi^2)/2", d, 0.5 * (v + chi))]
        }
        7 => {
            let v = q.v()?;
            let j = q.fwd("kl", None)? + q.bwd("kl", None)?;
            let chi_sum = q.fwd("chi_sq", None)? + q.bwd("chi_sq", None)?;
            let (kl_bound, chi_bound) = if v >= 2.0 {
                (f64::INFINITY, f64::INFINITY)
            } else {
                (mul(v, ((2.0 + v) / (2.0 - v)).ln()), 8.0 * v * v / (4.0 - v * v))
            };
            vec![
                r("D + D' >= V ln((2+V)/(2-V))", kl_bound, j),
                r("chi^2 + chi'^2 >= 8V^2/(4-V^2)", chi_bound, chi_sum),
            ]
        }
        8 => {
            let (a, b) = (params.alpha, params.beta);
            let ha = q.fwd("hellinger_alpha", Some(a))?;
            let da = q.renyi(a)?;
            let d = q.fwd("kl", None)?;
            let db = q.renyi(b)?;
            let hb = q.fwd("hellinger_alpha", Some(b))?;
            vec![
                r(&format!("H_a <= D_a, a={a}"), ha, da),
                r(&format!("D_a <= D, a={a}"), da, d),
                r(&format!("D <= D_b, b={b}"), d, db),
                r(&format!("D_b <= H_b, b={b}"), db, hb),
            ]
        }
        9 => {
            let v = q.v()?;
            let h2 = q.fwd("hellinger_sq", None)?.clamp(0.0, 1.0);
            let chi = q.fwd("chi_sq", None)?.max(0.0);
            let d = q.fwd("kl", None)?.max(0.0);
            vec![
                r("V <= 2 sqrt(H^2 (2-H^2))", v, 2.0 * (h2 * (2.0 - h2)).sqrt()),
                r("V <= sqrt(chi^2)", v, chi.sqrt()),
                r("V <= sqrt(2 D)", v, (2.0 * d).sqrt()),
            ]
        }
        _ => unreachable!("validated by check_params"),
    })
}

/// D_{α_k} ≤ D_{α_{k+1}} for consecutive orders of an increasing grid.
pub fn renyi_monotonicity(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    alphas: &[f64],
    pair_id: &str,
) -> Result<Vec<InequalityReport>> {
    let q = PairQuantities::new(rho, sigma)?;
    let values = alphas.iter().map(|&a| q.renyi(a)).collect::<Result<Vec<_>>>()?;
    Ok(alphas
        .windows(2)
        .zip(values.windows(2))
        .map(|(a, v)| InequalityReport::new(8, &format!("D_{} <= D_{}", a[0], a[1]), v[0], v[1], pair_id))
        .collect())
}

/// Checks that f is strictly convex, non-negative and vanishes at 1. Strictness
/// and sign are tested on a log-spaced grid of [1e-3, 1e3].
pub fn check_convergence_hypotheses(f: &DivergenceFunction) -> Result<()> {
    let fail = |why: &str| Err(Error::HypothesisViolation(format!("{}: {why}", f.name())));
    if f.shape() != Shape::Convex {
        return fail("not convex");
    }
    if f.eval(1.0)?.abs() > 1e-15 {
        return fail("f(1) is not 0");
    }
    let grid: Vec<f64> = (0..=40).map(|k| 10f64.powf(-3.0 + 0.15 * k as f64)).collect();
    for &t in &grid {
        if f.eval(t)? < 0.0 {
            return fail(&format!("negative at t = {t}"));
        }
    }
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb, fm) = (f.eval(a)?, f.eval(b)?, f.eval(0.5 * (a + b))?);
        let gap = 0.5 * (fa + fb) - fm;
        if gap <= 1e-12 * fa.abs().max(fb.abs()).max(1.0) {
            return fail(&format!("not strictly convex on [{a}, {b}]"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergencePoint {
    pub n: usize,
    pub divergence: f64,
    pub total_variation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub divergence_name: String,
    pub trace: Vec<ConvergencePoint>,
}

impl ConvergenceReport {
    /// Every point with D_f below `d_threshold` has V below `v_threshold`.
    pub fn implication_holds(&self, d_threshold: f64, v_threshold: f64) -> bool {
        self.trace
            .iter()
            .filter(|p| p.divergence < d_threshold)
            .all(|p| p.total_variation < v_threshold)
    }

    /// Number of points with D_f below `d_threshold`.
    pub fn points_below(&self, d_threshold: f64) -> usize {
        self.trace.iter().filter(|p| p.divergence < d_threshold).count()
    }

    /// Largest increase of either sequence from one step to the next.
    pub fn worst_increase(&self) -> f64 {
        self.trace
            .windows(2)
            .map(|w| {
                (w[1].divergence - w[0].divergence).max(w[1].total_variation - w[0].total_variation)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// (D_f(ρ_n‖σ_n), V(ρ_n‖σ_n)) along a sequence of pairs indexed from n = 1.
pub fn check_convergence_item10(
    sequence: &[(DensityOperator, DensityOperator)],
    f: &DivergenceFunction,
) -> Result<ConvergenceReport> {
    check_convergence_hypotheses(f)?;
    let tv = builtin("total_variation", None)?;
    let trace = sequence
        .iter()
        .enumerate()
        .map(|(k, (rho, sigma))| {
            let ns = ns_of_states(rho, sigma)?;
            Ok(ConvergencePoint {
                n: k + 1,
                divergence: ns_f_divergence(&ns, f)?.to_f64(),
                total_variation: ns_f_divergence(&ns, &tv)?.to_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        divergence_name: f.name().to_string(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{validate_state, ComplexMatrix, Tolerances};
    use approx::assert_abs_diff_eq;

    fn diag(d: &[f64]) -> DensityOperator {
        validate_state(ComplexMatrix::from_real_diagonal(d), &Tolerances::default()).unwrap()
    }

    fn all_hold(reports: &[InequalityReport]) -> bool {
        reports.iter().all(InequalityReport::holds)
    }

    #[test]
    fn identical_states_are_tight() {
        let rho = diag(&[0.5, 0.3, 0.2]);
        let reports = check_all_items(&rho, &rho, &InequalityParams::default(), "same").unwrap();
        assert!(all_hold(&reports));
        for r in &reports {
            assert_abs_diff_eq!(r.lhs.to_f64(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(r.rhs.to_f64(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn orthogonal_states_hold_by_extended_order() {
        let (rho, sigma) = (diag(&[1.0, 0.0]), diag(&[0.0, 1.0]));
        let two = check_item(2, &rho, &sigma, &InequalityParams::default(), "orth").unwrap();
        assert_eq!(two[0].lhs, ExtendedReal::PlusInfinity);
        assert_eq!(two[0].rhs, ExtendedReal::PlusInfinity);
        assert!(two[0].holds());
        assert!(all_hold(&check_all_items(&rho, &sigma, &InequalityParams::default(), "orth").unwrap()));
    }

    #[test]
    fn parameter_ranges() {
        let rho = diag(&[0.5, 0.5]);
        let p = InequalityParams {
            hellinger_order: 2.0,
            ..Default::default()
        };
        assert!(matches!(check_item(3, &rho, &rho, &p, ""), Err(Error::ParameterOutOfRange(_))));
        let p = InequalityParams {
            alpha: 1.0,
            ..Default::default()
        };
        assert!(matches!(check_item(8, &rho, &rho, &p, ""), Err(Error::ParameterOutOfRange(_))));
        let p = InequalityParams {
            beta: 0.9,
            ..Default::default()
        };
        assert!(matches!(check_item(8, &rho, &rho, &p, ""), Err(Error::ParameterOutOfRange(_))));
        assert!(check_item(11, &rho, &rho, &InequalityParams::default(), "").is_err());
    }

    #[test]
    fn hellinger_total_variation_printed_square_fails() {
        // ρ = diag(1,0), σ = I/2: V = 1, ℋ² = 1 − 1/√2
        let (rho, sigma) = (diag(&[1.0, 0.0]), diag(&[0.5, 0.5]));
        let r = check_item(1, &rho, &sigma, &InequalityParams::default(), "").unwrap();
        assert!(all_hold(&r));
        let h2 = r[0].lhs.to_f64();
        let v = 2.0 * r[0].rhs.to_f64();
        assert_abs_diff_eq!(h2, 1.0 - std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-14);
        // V² ≤ ℋ√(2 − ℋ²) would read 1 ≤ 0.7071
        assert!(v * v > h2.sqrt() * (2.0 - h2).sqrt() + 0.29);
    }

    #[test]
    fn symmetrized_kl_bound_without_factor_two() {
        let (rho, sigma) = (diag(&[0.8, 0.2]), diag(&[0.3, 0.7]));
        let r = check_item(7, &rho, &sigma, &InequalityParams::default(), "").unwrap();
        assert!(all_hold(&r));
        assert_abs_diff_eq!(r[0].lhs.to_f64(), 3f64.ln(), epsilon = 1e-13);
        // 2V ln((2+V)/(2−V)) = 2 ln 3 would exceed D + D'
        assert!(2.0 * r[0].lhs.to_f64() > r[0].rhs.to_f64());
    }

    #[test]
    fn symmetric_binary_pair_is_tight_for_item_7() {
        let (rho, sigma) = (diag(&[0.9, 0.1]), diag(&[0.1, 0.9]));
        let r = check_item(7, &rho, &sigma, &InequalityParams::default(), "").unwrap();
        assert!(r[0].holds());
        assert_abs_diff_eq!(r[0].margin.to_f64(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn renyi_orders_are_monotone() {
        let (rho, sigma) = (diag(&[0.6, 0.3, 0.1]), diag(&[0.2, 0.2, 0.6]));
        let r = renyi_monotonicity(&rho, &sigma, &[0.25, 0.5, 0.75, 1.5, 2.0, 3.0], "").unwrap();
        assert_eq!(r.len(), 5);
        assert!(all_hold(&r));
    }

    #[test]
    fn convergence_hypotheses() {
        assert!(check_convergence_hypotheses(&builtin("hellinger_sq", None).unwrap()).is_ok());
        assert!(check_convergence_hypotheses(&builtin("chi_sq", None).unwrap()).is_ok());
        for (name, alpha) in [("kl", None), ("total_variation", None), ("renyi_alpha", Some(0.5))] {
            assert!(matches!(
                check_convergence_hypotheses(&builtin(name, alpha).unwrap()),
                Err(Error::HypothesisViolation(_))
            ));
        }
    }

    #[test]
    fn constant_sequence_stays_at_zero() {
        let rho = diag(&[0.7, 0.3]);
        let seq = vec![(rho.clone(), rho.clone()); 5];
        let rep = check_convergence_item10(&seq, &builtin("hellinger_sq", None).unwrap()).unwrap();
        assert!(rep.trace.iter().all(|p| p.divergence == 0.0 && p.total_variation == 0.0));
        assert!(rep.implication_holds(1e-6, 1e-3));
    }
}
