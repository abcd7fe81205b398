//! Seeded generation of test states.
//!
//! All randomness comes from ChaCha20 (`rand_chacha` 0.9), a counter-based
//! generator. A draw is identified by `(seed, stream)`: the 64-bit seed is
//! expanded with `seed_from_u64` and the stream index selects one of the 2^64
//! independent ChaCha streams. Results are reproducible on one platform;
//! bit-equality across platforms is not promised since `ln`/`sqrt`/`cos` rounding
//! in the normal sampler may differ.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{validate_state, ComplexMatrix, DensityOperator, Tolerances};

/// Identifier of the pseudorandom stream construction.
pub const GENERATOR_ID: &str = "chacha20-rand_chacha0.9-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    FullRank,
    FixedRank,
    Pure,
    CommutingPair,
    PerturbationSequence,
    RandomUnitary,
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::FullRank => "full-rank",
            GeneratorKind::FixedRank => "fixed-rank",
            GeneratorKind::Pure => "pure",
            GeneratorKind::CommutingPair => "commuting-pair",
            GeneratorKind::PerturbationSequence => "perturbation-sequence",
            GeneratorKind::RandomUnitary => "random-unitary",
        }
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full-rank" => GeneratorKind::FullRank,
            "fixed-rank" => GeneratorKind::FixedRank,
            "pure" => GeneratorKind::Pure,
            "commuting-pair" => GeneratorKind::CommutingPair,
            "perturbation-sequence" => GeneratorKind::PerturbationSequence,
            "random-unitary" => GeneratorKind::RandomUnitary,
            other => return Err(Error::InvalidConfig(format!("unknown kind {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub stream: u64,
    pub dim: usize,
    pub rank: usize,
    pub kind: GeneratorKind,
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, dim: usize, seed: u64) -> Self {
        let rank = if kind == GeneratorKind::Pure { 1 } else { dim };
        Self {
            seed,
            stream: 0,
            dim,
            rank,
            kind,
        }
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidConfig("dim must be ≥ 1".into()));
        }
        if self.rank == 0 || self.rank > self.dim {
            return Err(Error::InvalidConfig(format!(
                "rank {} outside 1..={}",
                self.rank, self.dim
            )));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha20Rng {
        stream(self.seed, self.stream)
    }
}

/// The ChaCha20 stream for `(seed, index)`.
pub fn stream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex normal: (x + iy)/√2 with x, y ~ N(0, 1).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex64> {
    // column-major fill keeps the draw order independent of nalgebra internals
    let mut g = DMatrix::zeros(rows, cols);
    for c in 0..cols {
        for r in 0..rows {
            g[(r, c)] = complex_normal(rng);
        }
    }
    g
}

/// G·G†/tr(G·G†) with G a `dim × rank` Ginibre matrix.
pub fn random_state_from<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityOperator> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidConfig(format!("dim {dim}, rank {rank}")));
    }
    let g = ginibre(rng, dim, rank);
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    validate_state(
        ComplexMatrix::from_nalgebra(w / Complex64::new(tr, 0.0))?,
        &Tolerances::default(),
    )
}

/// Draws a state for a `FullRank`, `FixedRank` or `Pure` config.
pub fn random_state(config: &GeneratorConfig) -> Result<DensityOperator> {
    config.validate()?;
    let rank = match config.kind {
        GeneratorKind::FullRank => config.dim,
        GeneratorKind::FixedRank => config.rank,
        GeneratorKind::Pure => 1,
        other => {
            return Err(Error::InvalidConfig(format!(
                "random_state does not produce {}",
                other.name()
            )))
        }
    };
    random_state_from(&mut config.rng(), config.dim, rank)
}

/// Haar unitary: Gram-Schmidt on the columns of a square Ginibre matrix.
pub fn random_unitary_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let mut cols: Vec<DVector<Complex64>> = (0..dim).map(|k| g.column(k).into_owned()).collect();
    for k in 0..dim {
        let (done, rest) = cols.split_at_mut(k);
        let v = &mut rest[0];
        // two passes keep orthogonality at machine precision
        for _ in 0..2 {
            for u in done.iter() {
                let p = u.dotc(v);
                *v -= u * p;
            }
        }
        let n = v.norm();
        *v /= Complex64::new(n, 0.0);
    }
    ComplexMatrix::from_nalgebra(DMatrix::from_columns(&cols)).expect("finite unitary")
}

pub fn random_unitary(config: &GeneratorConfig) -> Result<ComplexMatrix> {
    config.validate()?;
    Ok(random_unitary_from(&mut config.rng(), config.dim))
}

fn simplex_point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Two states diagonal in one Haar-random basis, with spectra drawn uniformly
/// from the simplex.
pub fn commuting_pair_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<(DensityOperator, DensityOperator)> {
    if dim == 0 {
        return Err(Error::InvalidConfig("dim must be ≥ 1".into()));
    }
    let u = random_unitary_from(rng, dim);
    let p = simplex_point(rng, dim);
    let q = simplex_point(rng, dim);
    let rho = validate_state(ComplexMatrix::from_real_diagonal(&p).conjugate_by(&u), &Tolerances::default())?;
    let sigma = validate_state(ComplexMatrix::from_real_diagonal(&q).conjugate_by(&u), &Tolerances::default())?;
    Ok((rho, sigma))
}

pub fn commuting_pair(config: &GeneratorConfig) -> Result<(DensityOperator, DensityOperator)> {
    config.validate()?;
    commuting_pair_from(&mut config.rng(), config.dim)
}

/// A pair with supp ρ ⊆ supp σ: both live on a random `rank_sigma`-dimensional
/// subspace, ρ with rank `rank_rho` there and σ full rank there.
pub fn contained_support_pair_from<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    rank_rho: usize,
    rank_sigma: usize,
) -> Result<(DensityOperator, DensityOperator)> {
    if rank_sigma == 0 || rank_sigma > dim || rank_rho == 0 || rank_rho > rank_sigma {
        return Err(Error::InvalidConfig(format!(
            "need 1 ≤ rank_rho ≤ rank_sigma ≤ dim, got {rank_rho}, {rank_sigma}, {dim}"
        )));
    }
    let u = random_unitary_from(rng, dim);
    let v = u.as_nalgebra().columns(0, rank_sigma).into_owned();
    let a = random_state_from(rng, rank_sigma, rank_rho)?;
    let b = random_state_from(rng, rank_sigma, rank_sigma)?;
    let embed = |m: &ComplexMatrix| -> Result<DensityOperator> {
        let big = &v * m.as_nalgebra() * v.adjoint();
        validate_state(ComplexMatrix::from_nalgebra(big)?.hermitian_part(), &Tolerances::default())
    };
    Ok((embed(a.matrix())?, embed(b.matrix())?))
}

/// Projection onto the span of the first `rank` columns of a Haar unitary.
pub fn random_projector_from<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> ComplexMatrix {
    let u = random_unitary_from(rng, dim);
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..rank.min(dim) {
        let col = u.as_nalgebra().column(k);
        acc += &col * col.adjoint();
    }
    ComplexMatrix::from_nalgebra(acc).expect("finite projector")
}

/// Mixing weight ε_n for ρ_n = (1 − ε_n)σ + ε_n τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MixingSchedule {
    /// ε_n = 1/n
    Harmonic,
    /// ε_n = 1/n²
    InverseSquare,
    /// ε_n = r^n
    Geometric(f64),
}

impl MixingSchedule {
    pub fn weight(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            MixingSchedule::Harmonic => 1.0 / n,
            MixingSchedule::InverseSquare => 1.0 / (n * n),
            MixingSchedule::Geometric(r) => r.powf(n),
        }
    }
}

/// ρ_n = (1 − ε_n)σ + ε_n τ for n = 1..=n_max.
pub fn perturbation_sequence(
    sigma: &DensityOperator,
    tau: &DensityOperator,
    schedule: MixingSchedule,
    n_max: usize,
) -> Result<Vec<DensityOperator>> {
    (1..=n_max)
        .map(|n| sigma.mix(tau, schedule.weight(n)))
        .collect()
}

/// Families of state pairs used by verification campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// Both states full rank.
    FullRank,
    /// Both states of rank ⌈d/2⌉.
    HalfRank,
    /// Both states pure.
    Pure,
    /// Commuting pair from [`commuting_pair_from`].
    Commuting,
    /// supp ρ ⊆ supp σ with both rank deficient (for d ≥ 2).
    ContainedSupport,
}

pub const PAIR_KINDS: [PairKind; 5] = [
    PairKind::FullRank,
    PairKind::HalfRank,
    PairKind::Pure,
    PairKind::Commuting,
    PairKind::ContainedSupport,
];

impl PairKind {
    pub fn name(&self) -> &'static str {
        match self {
            PairKind::FullRank => "full-rank",
            PairKind::HalfRank => "fixed-rank",
            PairKind::Pure => "pure",
            PairKind::Commuting => "commuting-pair",
            PairKind::ContainedSupport => "contained-support",
        }
    }

    fn code(&self) -> u64 {
        match self {
            PairKind::FullRank => 1,
            PairKind::HalfRank => 2,
            PairKind::Pure => 3,
            PairKind::Commuting => 4,
            PairKind::ContainedSupport => 5,
        }
    }
}

impl std::str::FromStr for PairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PAIR_KINDS
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown pair kind {s:?}")))
    }
}

/// Replayable identity of one generated pair, written `seed:dim:kind:index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseId {
    pub seed: u64,
    pub dim: usize,
    pub kind: PairKind,
    pub index: u64,
}

impl CaseId {
    pub fn new(seed: u64, dim: usize, kind: PairKind, index: u64) -> Self {
        Self { seed, dim, kind, index }
    }

    /// Stream index: dim in the top byte, kind in the next, pair index below.
    pub fn stream_index(&self) -> u64 {
        ((self.dim as u64 & 0xff) << 56) | (self.kind.code() << 48) | (self.index & ((1 << 48) - 1))
    }

    pub fn generate(&self) -> Result<(DensityOperator, DensityOperator)> {
        random_pair(self)
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}:{}", self.seed, self.dim, self.kind.name(), self.index)
    }
}

impl std::str::FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("case id {s:?} is not seed:dim:kind:index"));
        let parts: Vec<&str> = s.split(':').collect();
        let [seed, dim, kind, index] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(CaseId {
            seed: seed.parse().map_err(|_| bad())?,
            dim: dim.parse().map_err(|_| bad())?,
            kind: kind.parse()?,
            index: index.parse().map_err(|_| bad())?,
        })
    }
}

/// The pair identified by `case`.
pub fn random_pair(case: &CaseId) -> Result<(DensityOperator, DensityOperator)> {
    let d = case.dim;
    if d == 0 || d > 255 {
        return Err(Error::InvalidConfig(format!("pair dimension {d} outside 1..=255")));
    }
    let mut rng = stream(case.seed, case.stream_index());
    match case.kind {
        PairKind::FullRank => Ok((random_state_from(&mut rng, d, d)?, random_state_from(&mut rng, d, d)?)),
        PairKind::HalfRank => {
            let k = d.div_ceil(2);
            Ok((random_state_from(&mut rng, d, k)?, random_state_from(&mut rng, d, k)?))
        }
        PairKind::Pure => Ok((random_state_from(&mut rng, d, 1)?, random_state_from(&mut rng, d, 1)?)),
        PairKind::Commuting => commuting_pair_from(&mut rng, d),
        PairKind::ContainedSupport => {
            let rank_sigma = if d == 1 { 1 } else { rng.random_range(1..d) };
            let rank_rho = rng.random_range(1..=rank_sigma);
            contained_support_pair_from(&mut rng, d, rank_rho, rank_sigma)
        }
    }
}
