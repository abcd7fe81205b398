//! Campaign runners: seeded batches of generated pairs, fanned out over a
//! worker pool and collected in case order.

use rayon::prelude::*;

use qfdiv::fdiv::{Builtin, DivergenceFunction};
use qfdiv::generators::{perturbation_sequence, CaseId, MixingSchedule, PairKind};
use qfdiv::ineq::{check_convergence_item10, check_item, ConvergenceReport, InequalityParams, InequalityReport};
use qfdiv::linalg::DensityOperator;
use qfdiv::qdiv::{quantum_f_divergence_modular, quantum_f_divergence_ns};
use qfdiv::ExtendedReal;

use crate::error::CliError;

/// Environment variable capping the worker count.
pub const WORKERS_ENV: &str = "QFDIV_WORKERS";

/// Worker count: the flag if given, else the environment cap, else available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let env = std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    match (flag, env) {
        (Some(n), _) => n.max(1),
        (None, Some(cap)) => cap.min(available).max(1),
        (None, None) => available,
    }
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

/// `name` or `name:alpha`, also accepting `name(alpha)`.
pub fn parse_function(spec: &str) -> Result<Builtin, CliError> {
    let spec = spec.trim();
    let (name, alpha) = if let Some((n, a)) = spec.split_once(':') {
        (n, Some(a))
    } else if let Some(rest) = spec.strip_suffix(')') {
        let (n, a) = rest.split_once('(').ok_or_else(|| CliError::usage(format!("bad function {spec:?}")))?;
        (n, Some(a))
    } else {
        (spec, None)
    };
    let alpha = alpha
        .map(|a| a.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad alpha in {spec:?}"))))
        .transpose()?;
    Builtin::parse(name.trim(), alpha).map_err(CliError::usage)
}

/// The builtin set of the theorem campaign.
pub fn default_theorem_functions() -> Vec<Builtin> {
    let mut v = vec![Builtin::Kl, Builtin::ChiSq, Builtin::TotalVariation, Builtin::HellingerSq];
    v.extend([0.3, 0.5, 2.0, 3.0].map(Builtin::HellingerAlpha));
    v.extend([0.5, 2.0].map(Builtin::RenyiAlpha));
    v
}

pub const THEOREM_KINDS: [PairKind; 4] = [PairKind::FullRank, PairKind::HalfRank, PairKind::Pure, PairKind::Commuting];

/// Finite values agree within `tol` (relative once |v| > 1); infinities must coincide.
pub fn routes_agree(a: ExtendedReal, b: ExtendedReal, tol: f64) -> bool {
    match (a.finite(), b.finite()) {
        (Some(x), Some(y)) => (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0),
        (None, None) => a == b,
        _ => false,
    }
}

#[derive(Clone, Debug)]
pub struct RouteComparison {
    pub function: String,
    pub ns: Result<ExtendedReal, String>,
    pub modular: Result<ExtendedReal, String>,
    pub ok: bool,
}

impl RouteComparison {
    pub fn difference(&self) -> Option<f64> {
        match (&self.ns, &self.modular) {
            (Ok(a), Ok(b)) => match (a.finite(), b.finite()) {
                (Some(x), Some(y)) => Some((x - y).abs()),
                _ => None,
            },
            _ => None,
        }
    }
}

pub fn compare_routes(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    f: &DivergenceFunction,
    tol: f64,
) -> RouteComparison {
    let ns = quantum_f_divergence_ns(rho, sigma, f).map_err(|e| e.to_string());
    let modular = quantum_f_divergence_modular(rho, sigma, f).map_err(|e| e.to_string());
    let ok = match (&ns, &modular) {
        (Ok(a), Ok(b)) => routes_agree(*a, *b, tol),
        _ => false,
    };
    RouteComparison {
        function: f.name().to_string(),
        ns,
        modular,
        ok,
    }
}

#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub id: CaseId,
    pub comparisons: Vec<RouteComparison>,
    pub error: Option<String>,
}

impl TheoremCase {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.comparisons.iter().all(|c| c.ok)
    }
}

#[derive(Clone, Debug)]
pub struct TheoremCampaign {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub kinds: Vec<PairKind>,
    pub pairs: u64,
    pub functions: Vec<Builtin>,
    pub tol: f64,
}

impl TheoremCampaign {
    pub fn case_ids(&self) -> Vec<CaseId> {
        let mut ids = Vec::new();
        for &dim in &self.dims {
            for &kind in &self.kinds {
                for index in 0..self.pairs {
                    ids.push(CaseId::new(self.seed, dim, kind, index));
                }
            }
        }
        ids
    }
}

pub fn run_theorem_case(id: CaseId, functions: &[DivergenceFunction], tol: f64) -> TheoremCase {
    match id.generate() {
        Ok((rho, sigma)) => TheoremCase {
            id,
            comparisons: functions.iter().map(|f| compare_routes(&rho, &sigma, f, tol)).collect(),
            error: None,
        },
        Err(e) => TheoremCase {
            id,
            comparisons: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

pub fn run_theorem_campaign(campaign: &TheoremCampaign, workers: usize) -> Result<Vec<TheoremCase>, CliError> {
    let functions = campaign
        .functions
        .iter()
        .map(|b| b.function())
        .collect::<Result<Vec<_>, _>>()?;
    let ids = campaign.case_ids();
    Ok(pool(workers).install(|| {
        ids.par_iter()
            .map(|&id| run_theorem_case(id, &functions, campaign.tol))
            .collect()
    }))
}

#[derive(Clone, Debug)]
pub struct InequalityCampaign {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub kinds: Vec<PairKind>,
    pub pairs: u64,
    pub items: Vec<u8>,
    pub params: InequalityParams,
    /// Hellinger orders for item 3.
    pub hellinger_orders: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct InequalityCase {
    pub id: CaseId,
    pub reports: Vec<InequalityReport>,
    pub error: Option<String>,
}

impl InequalityCase {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.reports.iter().all(InequalityReport::holds)
    }
}

impl InequalityCampaign {
    /// Pair k cycles through the dims, then through the kinds.
    pub fn case_ids(&self) -> Vec<CaseId> {
        let (nd, nk) = (self.dims.len().max(1) as u64, self.kinds.len().max(1) as u64);
        (0..self.pairs)
            .map(|k| {
                let dim = self.dims[(k % nd) as usize];
                let kind = self.kinds[((k / nd) % nk) as usize];
                CaseId::new(self.seed, dim, kind, k)
            })
            .collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.dims.is_empty() || self.kinds.is_empty() {
            return Err(CliError::usage("need at least one dimension and one pair kind"));
        }
        for &item in &self.items {
            if !(1..=10).contains(&item) {
                return Err(CliError::usage(format!("no inequality item {item}")));
            }
        }
        let probe = DensityOperator::maximally_mixed(1);
        for &item in self.items.iter().filter(|&&i| i != 3 && i != 10) {
            check_item(item, &probe, &probe, &self.params, "").map_err(CliError::usage)?;
        }
        if self.items.contains(&3) {
            for &h in &self.hellinger_orders {
                let p = InequalityParams {
                    hellinger_order: h,
                    ..self.params
                };
                check_item(3, &probe, &probe, &p, "").map_err(CliError::usage)?;
            }
        }
        Ok(())
    }
}

fn run_inequality_case(id: CaseId, c: &InequalityCampaign) -> InequalityCase {
    let label = id.to_string();
    let attempt = || -> qfdiv::Result<Vec<InequalityReport>> {
        let (rho, sigma) = id.generate()?;
        let mut out = Vec::new();
        for &item in c.items.iter().filter(|&&i| i != 10) {
            if item == 3 {
                for &h in &c.hellinger_orders {
                    let p = InequalityParams {
                        hellinger_order: h,
                        ..c.params
                    };
                    out.extend(check_item(3, &rho, &sigma, &p, &label)?);
                }
            } else {
                out.extend(check_item(item, &rho, &sigma, &c.params, &label)?);
            }
        }
        Ok(out)
    };
    match attempt() {
        Ok(reports) => InequalityCase {
            id,
            reports,
            error: None,
        },
        Err(e) => InequalityCase {
            id,
            reports: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

pub fn run_inequality_campaign(c: &InequalityCampaign, workers: usize) -> Result<Vec<InequalityCase>, CliError> {
    c.validate()?;
    let ids = c.case_ids();
    Ok(pool(workers).install(|| ids.par_iter().map(|&id| run_inequality_case(id, c)).collect()))
}

pub const ITEM10_SCHEDULES: [MixingSchedule; 3] =
    [MixingSchedule::Harmonic, MixingSchedule::InverseSquare, MixingSchedule::Geometric(0.5)];

/// Item 10 on ρ_n = (1 − ε_n)σ + ε_n τ against σ for each schedule, with σ full
/// rank and τ pure, both drawn from `seed` in dimension `dim`.
pub fn run_item10(
    seed: u64,
    dim: usize,
    f: &DivergenceFunction,
    n_max: usize,
) -> qfdiv::Result<Vec<(MixingSchedule, ConvergenceReport)>> {
    let (sigma, _) = CaseId::new(seed, dim, PairKind::FullRank, 0).generate()?;
    let (tau, _) = CaseId::new(seed, dim, PairKind::Pure, 0).generate()?;
    ITEM10_SCHEDULES
        .iter()
        .map(|&schedule| {
            let pairs: Vec<(DensityOperator, DensityOperator)> = perturbation_sequence(&sigma, &tau, schedule, n_max)?
                .into_iter()
                .map(|rho| (rho, sigma.clone()))
                .collect();
            Ok((schedule, check_convergence_item10(&pairs, f)?))
        })
        .collect()
}
