//! Monte Carlo size and power studies.
//!
//! Every replication of every cell is keyed by `(master_seed, n1, n2, rho1,
//! rho2, replication)`, so a cell's result does not depend on which other
//! cells share the run nor on how many worker threads execute it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    summarize, BivariateNormalParams, CommonRhoEstimator, GroupSummary, MIN_GROUP_SIZE,
};
use crate::hypothesis::{
    run_method, BootstrapSettings, GvSettings, Method, MIN_BOOTSTRAP_REPLICATIONS, MIN_GV_DRAWS,
};
use crate::rng::{derive_seed, draw_bivariate_normal_sample, RngStream};

/// Attempts per replication before a run of degenerate draws is an error.
const MAX_ATTEMPTS: u64 = 1_000;

/// Nested Monte Carlo budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    /// 2,000 replications with 2,000 bootstrap replicates or GV draws each.
    #[default]
    Desk,
    /// 10,000 replications with 10,000 bootstrap replicates or GV draws each.
    Full,
}

impl Scale {
    pub fn replications(self) -> usize {
        match self {
            Scale::Desk => 2_000,
            Scale::Full => 10_000,
        }
    }

    pub fn inner_draws(self) -> usize {
        self.replications()
    }
}

/// A grid of `(n1, n2) x (rho1, rho2)` cells to simulate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySpec {
    pub sample_sizes: Vec<(usize, usize)>,
    pub correlations: Vec<(f64, f64)>,
    pub replications: usize,
    /// A replication rejects when `p < alpha`.
    pub alpha: f64,
    pub methods: Vec<Method>,
    /// Bootstrap replicates per MSLR evaluation.
    pub boot_replications: usize,
    pub estimator: CommonRhoEstimator,
    pub gv_draws: usize,
    pub master_seed: u64,
}

impl StudySpec {
    /// A study at the given scale with the published nominal level 0.05.
    pub fn at_scale(
        scale: Scale,
        sample_sizes: Vec<(usize, usize)>,
        correlations: Vec<(f64, f64)>,
        methods: Vec<Method>,
        master_seed: u64,
    ) -> Self {
        Self {
            sample_sizes,
            correlations,
            replications: scale.replications(),
            alpha: 0.05,
            methods,
            boot_replications: scale.inner_draws(),
            estimator: CommonRhoEstimator::DonnerRosner,
            gv_draws: scale.inner_draws(),
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 100 {
            return Err(Error::InvalidParameter(format!(
                "study replications must be at least 100, got {}",
                self.replications
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("no methods selected".into()));
        }
        if self.methods.contains(&Method::Mslr)
            && self.boot_replications < MIN_BOOTSTRAP_REPLICATIONS
        {
            return Err(Error::InvalidParameter(format!(
                "bootstrap replications must be at least {MIN_BOOTSTRAP_REPLICATIONS}"
            )));
        }
        if self.methods.contains(&Method::Gv) && self.gv_draws < MIN_GV_DRAWS {
            return Err(Error::InvalidParameter(format!(
                "generalized variable draws must be at least {MIN_GV_DRAWS}"
            )));
        }
        for &(n1, n2) in &self.sample_sizes {
            if n1.min(n2) < MIN_GROUP_SIZE {
                return Err(Error::TooFewObservations {
                    required: MIN_GROUP_SIZE,
                    actual: n1.min(n2),
                });
            }
        }
        for &(r1, r2) in &self.correlations {
            BivariateNormalParams::standard(r1).validate()?;
            BivariateNormalParams::standard(r2).validate()?;
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(usize, usize, f64, f64)> {
        self.sample_sizes
            .iter()
            .flat_map(|&(n1, n2)| {
                self.correlations
                    .iter()
                    .map(move |&(r1, r2)| (n1, n2, r1, r2))
            })
            .collect()
    }
}

/// Rejection rate of one method in one cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub n1: usize,
    pub n2: usize,
    pub rho1: f64,
    pub rho2: f64,
    pub method: Method,
    pub rejections: usize,
    pub replications: usize,
    pub rejection_rate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / replications)`.
    pub standard_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    /// Ordered by sample-size pair, then correlation pair, then method, as
    /// listed in the [`StudySpec`] that produced it.
    pub cells: Vec<CellResult>,
    /// Replications whose data had to be redrawn.
    pub redraws: u64,
    pub alpha: f64,
    pub master_seed: u64,
}

impl StudyResult {
    pub fn get(
        &self,
        n1: usize,
        n2: usize,
        rho1: f64,
        rho2: f64,
        method: Method,
    ) -> Option<&CellResult> {
        self.cells.iter().find(|c| {
            c.n1 == n1
                && c.n2 == n2
                && (c.rho1 - rho1).abs() < 1e-12
                && (c.rho2 - rho2).abs() < 1e-12
                && c.method == method
        })
    }
}

/// Actual size under a common correlation; every grid point must have
/// `rho1 == rho2`.
pub fn run_size_study(spec: &StudySpec) -> Result<StudyResult> {
    if let Some(&(r1, r2)) = spec.correlations.iter().find(|(r1, r2)| r1 != r2) {
        return Err(Error::InvalidParameter(format!(
            "size studies need equal correlations, got ({r1}, {r2})"
        )));
    }
    run_study(spec)
}

/// Empirical power over arbitrary `(rho1, rho2)` grid points.
pub fn run_power_study(spec: &StudySpec) -> Result<StudyResult> {
    run_study(spec)
}

struct Replicate {
    rejected: Vec<bool>,
    redraws: u64,
}

fn run_study(spec: &StudySpec) -> Result<StudyResult> {
    spec.validate()?;
    let cells = spec.cells();
    let reps = spec.replications;
    let outcomes: Vec<Replicate> = (0..cells.len() * reps)
        .into_par_iter()
        .map(|k| run_replicate(spec, cells[k / reps], (k % reps) as u64))
        .collect::<Result<_>>()?;

    let mut result = StudyResult {
        cells: Vec::with_capacity(cells.len() * spec.methods.len()),
        redraws: outcomes.iter().map(|o| o.redraws).sum(),
        alpha: spec.alpha,
        master_seed: spec.master_seed,
    };
    for (c, &(n1, n2, rho1, rho2)) in cells.iter().enumerate() {
        let block = &outcomes[c * reps..(c + 1) * reps];
        for (m, &method) in spec.methods.iter().enumerate() {
            let rejections = block.iter().filter(|o| o.rejected[m]).count();
            let rate = rejections as f64 / reps as f64;
            result.cells.push(CellResult {
                n1,
                n2,
                rho1,
                rho2,
                method,
                rejections,
                replications: reps,
                rejection_rate: rate,
                standard_error: (rate * (1.0 - rate) / reps as f64).sqrt(),
            });
        }
    }
    Ok(result)
}

fn run_replicate(
    spec: &StudySpec,
    (n1, n2, rho1, rho2): (usize, usize, f64, f64),
    rep: u64,
) -> Result<Replicate> {
    let key = [n1 as u64, n2 as u64, rho1.to_bits(), rho2.to_bits(), rep];
    let path = |purpose: u64| {
        let mut p = [0u64; 6];
        p[0] = purpose;
        p[1..].copy_from_slice(&key);
        derive_seed(spec.master_seed, &p)
    };
    let data_seed = path(0);
    let mut boot = BootstrapSettings::new(
        spec.boot_replications.max(MIN_BOOTSTRAP_REPLICATIONS),
        path(1),
    )?
    .with_estimator(spec.estimator);
    let mut gv = GvSettings::new(spec.gv_draws.max(MIN_GV_DRAWS), path(2))?;

    let p1 = BivariateNormalParams::standard(rho1);
    let p2 = BivariateNormalParams::standard(rho2);
    for attempt in 0..MAX_ATTEMPTS {
        let mut stream = RngStream::new(data_seed, attempt);
        let groups = draw_group(n1, &p1, &mut stream)
            .and_then(|g1| draw_group(n2, &p2, &mut stream).map(|g2| (g1, g2)));
        let Ok((g1, g2)) = groups else { continue };
        // Fresh Monte Carlo streams for a redrawn replication.
        boot.seed = derive_seed(boot.seed, &[attempt]);
        gv.seed = derive_seed(gv.seed, &[attempt]);
        let rejected: Result<Vec<bool>> = spec
            .methods
            .iter()
            .map(|&m| run_method(m, &g1, &g2, &boot, &gv).map(|t| t.rejects(spec.alpha)))
            .collect();
        if let Ok(rejected) = rejected {
            return Ok(Replicate {
                rejected,
                redraws: attempt,
            });
        }
    }
    Err(Error::DegenerateData(format!(
        "replication {rep} of cell ({n1}, {n2}, {rho1}, {rho2}) stayed degenerate after {MAX_ATTEMPTS} attempts"
    )))
}

fn draw_group(
    n: usize,
    params: &BivariateNormalParams,
    stream: &mut RngStream,
) -> Result<GroupSummary> {
    summarize(&draw_bivariate_normal_sample(n, params, stream)?)
}
