//! Subcommands. Every command returns a [`CliError`] whose exit code follows the
//! contract 0 ok, 2 bad flags, 3 I/O, 4 invalid state file, 5 failed check.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qfdiv::fdiv::{builtin, BUILTIN_NAMES};
use qfdiv::generators::{
    commuting_pair, perturbation_sequence, random_state, random_unitary, CaseId, GeneratorConfig, GeneratorKind,
    MixingSchedule, PairKind, GENERATOR_ID,
};
use qfdiv::hyptest::{chernoff, empirical_exponent_trace, helstrom_error, HypothesisInstance};
use qfdiv::ineq::InequalityParams;
use qfdiv::linalg::{DensityOperator, Tolerances};
use qfdiv::ns::{ns_absolutely_continuous, ns_equal, ns_of_states, NS_EQUAL_TOL};
use qfdiv::ExtendedReal;

use crate::campaign::{
    compare_routes, default_theorem_functions, parse_function, resolve_workers, run_inequality_campaign, run_item10,
    run_theorem_campaign, run_theorem_case, InequalityCampaign, TheoremCampaign, THEOREM_KINDS,
};
use crate::error::CliError;
use crate::io::{read_state, write_matrix, Metadata};
use crate::report::{ext, num, ReportBuilder, RunReport};

#[derive(Parser, Debug)]
#[command(name = "qfdiv", version, about = "Quantum f-divergences, theorem checks and inequality campaigns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write seeded random matrices to files.
    Generate(GenerateArgs),
    /// Evaluate one divergence between two state files.
    Divergence(DivergenceArgs),
    /// Print the Nussbaum–Szkoła tables of two state files.
    Ns(PairFiles),
    /// Compare both evaluation routes over a seeded campaign.
    VerifyTheorem(VerifyArgs),
    /// Check the inequality items over a seeded campaign.
    Inequalities(InequalityArgs),
    /// Chernoff bound and the Helstrom error trace of two state files.
    Chernoff(ChernoffArgs),
    /// Helstrom minimum error and optimal test on n copies.
    Helstrom(HelstromArgs),
}

#[derive(Args, Debug, Clone)]
pub struct StateTolerances {
    /// Hermiticity tolerance for input files.
    #[arg(long, default_value_t = 1e-10)]
    pub herm_tol: f64,
    /// Negative-eigenvalue tolerance for input files.
    #[arg(long, default_value_t = 1e-10)]
    pub psd_tol: f64,
    /// Trace tolerance for input files.
    #[arg(long, default_value_t = 1e-10)]
    pub trace_tol: f64,
}

impl StateTolerances {
    fn get(&self) -> Tolerances {
        Tolerances {
            herm: self.herm_tol,
            psd: self.psd_tol,
            trace: self.trace_tol,
        }
    }
}

#[derive(Args, Debug)]
pub struct PairFiles {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[command(flatten)]
    pub tolerances: StateTolerances,
    /// Write the JSON run report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl PairFiles {
    fn load(&self) -> Result<(DensityOperator, DensityOperator), CliError> {
        let tol = self.tolerances.get();
        let rho = read_state(&self.rho, &tol)?;
        let sigma = read_state(&self.sigma, &tol)?;
        if rho.dim() != sigma.dim() {
            return Err(CliError::invalid_state(
                &self.sigma,
                format!("dimension {} differs from rho's {}", sigma.dim(), rho.dim()),
            ));
        }
        Ok((rho, sigma))
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum KindArg {
    FullRank,
    FixedRank,
    Pure,
    CommutingPair,
    PerturbationSequence,
    RandomUnitary,
}

impl KindArg {
    fn kind(self) -> GeneratorKind {
        match self {
            KindArg::FullRank => GeneratorKind::FullRank,
            KindArg::FixedRank => GeneratorKind::FixedRank,
            KindArg::Pure => GeneratorKind::Pure,
            KindArg::CommutingPair => GeneratorKind::CommutingPair,
            KindArg::PerturbationSequence => GeneratorKind::PerturbationSequence,
            KindArg::RandomUnitary => GeneratorKind::RandomUnitary,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub dim: usize,
    /// Rank for fixed-rank states.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Ns,
    Modular,
    Both,
}

#[derive(Args, Debug)]
pub struct DivergenceArgs {
    #[command(flatten)]
    pub files: PairFiles,
    /// One of kl, renyi_alpha, hellinger_sq, hellinger_alpha, total_variation, chi_sq.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = Route::Ns)]
    pub route: Route,
    /// Route agreement tolerance (absolute, relative above 1).
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    pub dims: Vec<usize>,
    /// Pairs per (dimension, kind) cell.
    #[arg(long, default_value_t = 100)]
    pub pairs: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Pair kinds: full-rank, fixed-rank, pure, commuting-pair, contained-support.
    #[arg(long, value_delimiter = ',')]
    pub kinds: Option<Vec<String>>,
    /// Divergences as name or name:alpha.
    #[arg(long, value_delimiter = ',')]
    pub functions: Option<Vec<String>>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Re-run a single case given as seed:dim:kind:index.
    #[arg(long)]
    pub replay: Option<String>,
    /// Write the state files of failing (or replayed) cases here.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InequalityArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub dims: Vec<usize>,
    /// Total number of pairs, spread over dimensions and kinds.
    #[arg(long, default_value_t = 1000)]
    pub pairs: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
    pub items: Vec<u8>,
    /// α of the chain item, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// β of the chain item, above 1.
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// Hellinger orders for item 3, each above 2.
    #[arg(long, value_delimiter = ',', default_value = "2.5,3")]
    pub hellinger_orders: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub kinds: Option<Vec<String>>,
    /// Divergence for the convergence item.
    #[arg(long, default_value = "chi_sq")]
    pub convergence_function: String,
    /// Sequence length for the convergence item.
    #[arg(long, default_value_t = 64)]
    pub n_max: usize,
    /// The convergence item passes when V < v-threshold wherever D_f < d-threshold.
    #[arg(long, default_value_t = 1e-6)]
    pub d_threshold: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub v_threshold: f64,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ChernoffArgs {
    #[command(flatten)]
    pub files: PairFiles,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0.5)]
    pub pi0: f64,
}

#[derive(Args, Debug)]
pub struct HelstromArgs {
    #[command(flatten)]
    pub files: PairFiles,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub pi0: f64,
    /// Write the optimal projection as a matrix file.
    #[arg(long)]
    pub projector_out: Option<PathBuf>,
}

/// Runs a parsed command; the caller maps errors to exit codes.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Divergence(a) => divergence(&a),
        Command::Ns(a) => ns(&a),
        Command::VerifyTheorem(a) => verify_theorem(&a),
        Command::Inequalities(a) => inequalities(&a),
        Command::Chernoff(a) => chernoff_cmd(&a),
        Command::Helstrom(a) => helstrom(&a),
    }
}

fn finish(report: RunReport, path: Option<&Path>) -> Result<(), CliError> {
    if let Some(p) = path {
        report.write(p)?;
    }
    println!("{}", report.summary());
    if report.failed > 0 {
        for id in &report.failures {
            println!("failed: {id}");
        }
        return Err(CliError::Failure(format!("{} failing case(s)", report.failed)));
    }
    Ok(())
}

fn generation_metadata(cfg: &GeneratorConfig, label: String) -> Metadata {
    Metadata {
        label: Some(label),
        seed: Some(cfg.seed),
        stream: Some(cfg.stream),
        generator: Some(GENERATOR_ID.to_string()),
        case_id: None,
    }
}

fn generate(a: &GenerateArgs) -> Result<(), CliError> {
    let kind = a.kind.kind();
    let mut cfg = GeneratorConfig::new(kind, a.dim, a.seed);
    if let Some(r) = a.rank {
        cfg = cfg.with_rank(r);
    } else if kind == GeneratorKind::FixedRank {
        cfg = cfg.with_rank(a.dim.div_ceil(2));
    }
    cfg.validate().map_err(CliError::usage)?;
    if a.count == 0 {
        return Err(CliError::usage("count must be at least 1"));
    }
    fs::create_dir_all(&a.out_dir).map_err(|e| CliError::io(&a.out_dir, e))?;
    let stem = format!("{}-d{}-s{}", kind.name(), a.dim, a.seed);
    let mut written = 0;
    let mut put = |name: String, m: &qfdiv::linalg::ComplexMatrix, cfg: &GeneratorConfig| -> Result<(), CliError> {
        write_matrix(&a.out_dir.join(format!("{name}.json")), m, generation_metadata(cfg, name.clone()))?;
        written += 1;
        Ok(())
    };
    match kind {
        GeneratorKind::FullRank | GeneratorKind::FixedRank | GeneratorKind::Pure => {
            for k in 0..a.count {
                let c = cfg.with_stream(k);
                put(format!("{stem}-{k:04}"), random_state(&c)?.matrix(), &c)?;
            }
        }
        GeneratorKind::CommutingPair => {
            for k in 0..a.count {
                let c = cfg.with_stream(k);
                let (rho, sigma) = commuting_pair(&c)?;
                put(format!("{stem}-{k:04}-rho"), rho.matrix(), &c)?;
                put(format!("{stem}-{k:04}-sigma"), sigma.matrix(), &c)?;
            }
        }
        GeneratorKind::RandomUnitary => {
            for k in 0..a.count {
                let c = cfg.with_stream(k);
                put(format!("{stem}-{k:04}"), &random_unitary(&c)?, &c)?;
            }
        }
        GeneratorKind::PerturbationSequence => {
            // σ full rank on stream 0, τ pure on stream 1, ρ_n = (1 − 1/n)σ + τ/n
            let sigma = random_state(&GeneratorConfig::new(GeneratorKind::FullRank, a.dim, a.seed))?;
            let tau = random_state(&GeneratorConfig::new(GeneratorKind::Pure, a.dim, a.seed).with_stream(1))?;
            put(format!("{stem}-sigma"), sigma.matrix(), &cfg)?;
            let seq = perturbation_sequence(&sigma, &tau, MixingSchedule::Harmonic, a.count as usize)?;
            for (k, rho) in seq.iter().enumerate() {
                put(format!("{stem}-{:04}", k + 1), rho.matrix(), &cfg)?;
            }
        }
    }
    println!("wrote {written} file(s) to {}", a.out_dir.display());
    Ok(())
}

fn divergence(a: &DivergenceArgs) -> Result<(), CliError> {
    let f = builtin(&a.name, a.alpha).map_err(CliError::usage)?;
    let (rho, sigma) = a.files.load()?;
    let mut report = ReportBuilder::new("divergence");
    report
        .input("rho", a.files.rho.display().to_string())
        .input("sigma", a.files.sigma.display().to_string())
        .input("divergence", f.name())
        .input("route", format!("{:?}", a.route).to_lowercase())
        .input("tol", num(a.tol));
    let cmp = compare_routes(&rho, &sigma, &f, a.tol);
    let show = |r: &Result<ExtendedReal, String>| -> Result<ExtendedReal, CliError> {
        r.clone().map_err(|e| CliError::Numeric(qfdiv::Error::HypothesisViolation(e)))
    };
    match a.route {
        Route::Ns => {
            let v = show(&cmp.ns)?;
            println!("{}: {v}", f.name());
            report.case(json!({"function": f.name(), "ns": ext(v)}), true, None);
        }
        Route::Modular => {
            let v = show(&cmp.modular)?;
            println!("{}: {v}", f.name());
            report.case(json!({"function": f.name(), "modular": ext(v)}), true, None);
        }
        Route::Both => {
            let (x, y) = (show(&cmp.ns)?, show(&cmp.modular)?);
            let diff = cmp.difference();
            println!("{} ns: {x}", f.name());
            println!("{} modular: {y}", f.name());
            match diff {
                Some(d) => println!("|delta|: {d:.16e}"),
                None => println!("|delta|: {}", if cmp.ok { "0 (both infinite)" } else { "classification differs" }),
            }
            report.case(
                json!({"function": f.name(), "ns": ext(x), "modular": ext(y),
                       "abs_difference": diff.map(num).unwrap_or(Value::Null), "agree": cmp.ok}),
                cmp.ok,
                Some(format!("{} vs {}", a.files.rho.display(), a.files.sigma.display())),
            );
        }
    }
    let report = report.finish();
    if let Some(p) = &a.files.report {
        report.write(p)?;
    }
    if report.failed > 0 {
        return Err(CliError::Failure("routes disagree".into()));
    }
    Ok(())
}

fn ns(a: &PairFiles) -> Result<(), CliError> {
    let (rho, sigma) = a.load()?;
    let ns = ns_of_states(&rho, &sigma)?;
    println!("# r: {}", join(ns.r()));
    println!("# s: {}", join(ns.s()));
    println!("# equal: {}  absolutely_continuous: {}", ns_equal(&ns, NS_EQUAL_TOL), ns_absolutely_continuous(&ns));
    println!("i\tj\toverlap\tP\tQ");
    let mut rows = Vec::new();
    for i in 0..ns.dim() {
        for j in 0..ns.dim() {
            println!("{i}\t{j}\t{:.16e}\t{:.16e}\t{:.16e}", ns.overlap(i, j), ns.p(i, j), ns.q(i, j));
            rows.push(json!({"i": i, "j": j, "overlap": num(ns.overlap(i, j)), "p": num(ns.p(i, j)), "q": num(ns.q(i, j))}));
        }
    }
    if let Some(path) = &a.report {
        let mut report = ReportBuilder::new("ns");
        report
            .input("rho", a.rho.display().to_string())
            .input("sigma", a.sigma.display().to_string());
        report.case(
            json!({"r": ns.r().iter().map(|&x| num(x)).collect::<Vec<_>>(),
                   "s": ns.s().iter().map(|&x| num(x)).collect::<Vec<_>>(),
                   "equal": ns_equal(&ns, NS_EQUAL_TOL),
                   "absolutely_continuous": ns_absolutely_continuous(&ns),
                   "table": rows}),
            true,
            None,
        );
        report.finish().write(path)?;
    }
    Ok(())
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(" ")
}

fn parse_kinds(kinds: &Option<Vec<String>>, default: &[PairKind]) -> Result<Vec<PairKind>, CliError> {
    match kinds {
        None => Ok(default.to_vec()),
        Some(list) => list.iter().map(|k| k.parse::<PairKind>().map_err(CliError::usage)).collect(),
    }
}

fn check_dims(dims: &[usize]) -> Result<(), CliError> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0 || d > 255) {
        return Err(CliError::usage(format!("dimensions must lie in 1..=255, got {dims:?}")));
    }
    Ok(())
}

/// Writes `<case>-rho.json` and `<case>-sigma.json` for a generated case.
pub fn dump_case(dir: &Path, id: &CaseId) -> Result<(PathBuf, PathBuf), CliError> {
    let (rho, sigma) = id.generate()?;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let stem = id.to_string().replace(':', "_");
    let mut paths = Vec::new();
    for (role, state) in [("rho", &rho), ("sigma", &sigma)] {
        let path = dir.join(format!("{stem}-{role}.json"));
        let meta = Metadata {
            label: Some(role.to_string()),
            seed: Some(id.seed),
            stream: Some(id.stream_index()),
            generator: Some(GENERATOR_ID.to_string()),
            case_id: Some(id.to_string()),
        };
        write_matrix(&path, state.matrix(), meta)?;
        paths.push(path);
    }
    Ok((paths[0].clone(), paths[1].clone()))
}

fn verify_theorem(a: &VerifyArgs) -> Result<(), CliError> {
    let functions = match &a.functions {
        None => default_theorem_functions(),
        Some(list) => list.iter().map(|s| parse_function(s)).collect::<Result<_, _>>()?,
    };
    let mut report = ReportBuilder::new("verify-theorem");
    report
        .input("tol", num(a.tol))
        .input("functions", functions.iter().map(|f| f.label()).collect::<Vec<_>>());
    let cases = if let Some(replay) = &a.replay {
        let id: CaseId = replay.parse().map_err(CliError::usage)?;
        check_dims(&[id.dim])?;
        report.input("replay", replay.as_str());
        let fs = functions.iter().map(|b| b.function()).collect::<Result<Vec<_>, _>>()?;
        if let Some(dir) = &a.dump_dir {
            dump_case(dir, &id)?;
        }
        vec![run_theorem_case(id, &fs, a.tol)]
    } else {
        check_dims(&a.dims)?;
        let campaign = TheoremCampaign {
            seed: a.seed,
            dims: a.dims.clone(),
            kinds: parse_kinds(&a.kinds, &THEOREM_KINDS)?,
            pairs: a.pairs,
            functions,
            tol: a.tol,
        };
        report
            .input("seed", a.seed)
            .input("dims", a.dims.clone())
            .input("pairs_per_cell", a.pairs)
            .input("kinds", campaign.kinds.iter().map(|k| k.name()).collect::<Vec<_>>());
        run_theorem_campaign(&campaign, resolve_workers(a.workers))?
    };
    for case in &cases {
        let results: Vec<Value> = case
            .comparisons
            .iter()
            .map(|c| {
                let show = |r: &Result<ExtendedReal, String>| match r {
                    Ok(v) => ext(*v),
                    Err(e) => json!({"error": e}),
                };
                json!({"function": c.function, "ns": show(&c.ns), "modular": show(&c.modular),
                       "abs_difference": c.difference().map(num).unwrap_or(Value::Null), "agree": c.ok})
            })
            .collect();
        let ok = case.ok();
        if !ok {
            if let Some(dir) = &a.dump_dir {
                dump_case(dir, &case.id)?;
            }
        }
        let mut value = json!({"case": case.id.to_string(), "ok": ok, "results": results});
        if let Some(e) = &case.error {
            value["error"] = json!(e);
        }
        report.case(value, ok, Some(case.id.to_string()));
    }
    finish(report.finish(), a.report.as_deref())
}

fn inequalities(a: &InequalityArgs) -> Result<(), CliError> {
    check_dims(&a.dims)?;
    let campaign = InequalityCampaign {
        seed: a.seed,
        dims: a.dims.clone(),
        kinds: parse_kinds(
            &a.kinds,
            &[PairKind::FullRank, PairKind::HalfRank, PairKind::Pure, PairKind::Commuting, PairKind::ContainedSupport],
        )?,
        pairs: a.pairs,
        items: a.items.clone(),
        params: InequalityParams {
            alpha: a.alpha,
            beta: a.beta,
            hellinger_order: a.hellinger_orders.first().copied().unwrap_or(3.0),
        },
        hellinger_orders: a.hellinger_orders.clone(),
    };
    let mut report = ReportBuilder::new("inequalities");
    report
        .input("seed", a.seed)
        .input("dims", a.dims.clone())
        .input("pairs", a.pairs)
        .input("items", a.items.clone())
        .input("alpha", num(a.alpha))
        .input("beta", num(a.beta))
        .input("hellinger_orders", a.hellinger_orders.iter().map(|&h| num(h)).collect::<Vec<_>>());
    let cases = run_inequality_campaign(&campaign, resolve_workers(a.workers))?;
    let mut worst: std::collections::BTreeMap<String, f64> = Default::default();
    for case in &cases {
        let reports: Vec<Value> = case
            .reports
            .iter()
            .map(|r| {
                let w = worst.entry(format!("{} {}", r.item, r.label)).or_insert(f64::INFINITY);
                *w = w.min(r.margin.to_f64());
                json!({"item": r.item, "label": r.label, "lhs": ext(r.lhs), "rhs": ext(r.rhs),
                       "margin": ext(r.margin), "holds": r.holds()})
            })
            .collect();
        let mut value = json!({"case": case.id.to_string(), "ok": case.ok(), "reports": reports});
        if let Some(e) = &case.error {
            value["error"] = json!(e);
        }
        report.case(value, case.ok(), Some(case.id.to_string()));
    }
    if a.items.contains(&10) {
        let f = builtin_from_spec(&a.convergence_function)?;
        let dim = a.dims[0];
        for (schedule, rep) in run_item10(a.seed, dim, &f, a.n_max)? {
            let ok = rep.implication_holds(a.d_threshold, a.v_threshold);
            let id = format!("item10:{}:{dim}:{schedule:?}", a.seed);
            let trace: Vec<Value> = rep
                .trace
                .iter()
                .map(|p| json!({"n": p.n, "divergence": num(p.divergence), "total_variation": num(p.total_variation)}))
                .collect();
            report.case(
                json!({"case": id, "item": 10, "function": rep.divergence_name, "ok": ok,
                       "points_below_threshold": rep.points_below(a.d_threshold), "trace": trace}),
                ok,
                Some(id.clone()),
            );
        }
    }
    for (label, m) in &worst {
        println!("min margin {label}: {}", ExtendedReal::from_f64(*m).unwrap_or(ExtendedReal::PlusInfinity));
    }
    finish(report.finish(), a.report.as_deref())
}

fn builtin_from_spec(spec: &str) -> Result<qfdiv::fdiv::DivergenceFunction, CliError> {
    Ok(parse_function(spec)?.function()?)
}

fn priors(pi0: f64) -> Result<(f64, f64), CliError> {
    if !(0.0..=1.0).contains(&pi0) {
        return Err(CliError::usage(format!("prior {pi0} outside [0, 1]")));
    }
    Ok((pi0, 1.0 - pi0))
}

fn chernoff_cmd(a: &ChernoffArgs) -> Result<(), CliError> {
    let (pi0, pi1) = priors(a.pi0)?;
    if a.n_max == 0 {
        return Err(CliError::usage("n-max must be at least 1"));
    }
    let (rho, sigma) = a.files.load()?;
    let c = chernoff(&rho, &sigma)?;
    let inst = HypothesisInstance::new(rho, sigma, pi0, pi1)?;
    let trace = empirical_exponent_trace(&inst, a.n_max)?;
    println!("chernoff: {}", c.value);
    if let Some(s) = c.s_star {
        println!("s*: {s:.16e}");
    }
    println!("n\tp_min\texponent\thalf_exp_bound");
    let mut rows = Vec::new();
    for p in &trace {
        let bound = 0.5 * (-(p.n as f64) * c.value.to_f64()).exp();
        println!("{}\t{:.16e}\t{}\t{:.16e}", p.n, p.p_min, p.exponent, bound);
        rows.push(json!({"n": p.n, "p_min": num(p.p_min), "exponent": ext(p.exponent), "bound": num(bound)}));
    }
    if let Some(path) = &a.files.report {
        let mut report = ReportBuilder::new("chernoff");
        report
            .input("rho", a.files.rho.display().to_string())
            .input("sigma", a.files.sigma.display().to_string())
            .input("n_max", a.n_max)
            .input("pi0", num(pi0));
        report.case(
            json!({"chernoff": ext(c.value), "s_star": c.s_star.map(num).unwrap_or(Value::Null), "trace": rows}),
            true,
            None,
        );
        report.finish().write(path)?;
    }
    Ok(())
}

fn helstrom(a: &HelstromArgs) -> Result<(), CliError> {
    let (pi0, pi1) = priors(a.pi0)?;
    if a.n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let (rho, sigma) = a.files.load()?;
    let inst = HypothesisInstance::new(rho, sigma, pi0, pi1)?;
    let (p, projector) = helstrom_error(&inst, a.n)?;
    println!("p_min: {p:.16e}");
    if let Some(out) = &a.projector_out {
        write_matrix(
            out,
            &projector,
            Metadata {
                label: Some(format!("helstrom projector n={}", a.n)),
                ..Default::default()
            },
        )?;
    }
    if let Some(path) = &a.files.report {
        let mut report = ReportBuilder::new("helstrom");
        report.input("n", a.n).input("pi0", num(pi0));
        report.case(json!({"p_min": num(p)}), true, None);
        report.finish().write(path)?;
    }
    Ok(())
}

/// Names accepted by `--name`.
pub fn divergence_names() -> &'static [&'static str] {
    &BUILTIN_NAMES
}
