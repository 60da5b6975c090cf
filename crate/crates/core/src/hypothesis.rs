//! Two-sided tests of `H0: rho1 = rho2` for independent bivariate normal
//! groups.
//!
//! All tests depend on the data only through `(n_i, r_i)`, so they are
//! invariant to positive affine maps of either coordinate in either group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{pooled_fisher_rho, solve_common_rho, CommonRhoEstimator, GroupSummary};
use crate::rng::{ChiSquareSampler, RngStream};

/// Default bootstrap replications and GV draws.
pub const DEFAULT_REPLICATIONS: usize = 10_000;
/// Bootstrap replications below this give meaningless variance estimates.
pub const MIN_BOOTSTRAP_REPLICATIONS: usize = 100;
pub const MIN_GV_DRAWS: usize = 1_000;
pub const DEFAULT_SEED: u64 = 20_160_516;

/// Replicate correlations this close to +-1 are redrawn.
const BOUNDARY_GUARD: f64 = 1e-12;
/// Radicands down to this negative value are rounding noise.
const RADICAND_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Bootstrap-standardized signed log-likelihood ratio.
    Mslr,
    /// Signed log-likelihood ratio with its asymptotic normal p-value.
    Slr,
    FisherZ,
    /// Generalized test variable.
    Gv,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Mslr, Method::Slr, Method::FisherZ, Method::Gv];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mslr => "mslr",
            Method::Slr => "slr",
            Method::FisherZ => "fisher_z",
            Method::Gv => "gv",
        }
    }

    /// Short label used in printed tables.
    pub fn label(self) -> &'static str {
        match self {
            Method::Mslr => "MSLR",
            Method::Slr => "SLR",
            Method::FisherZ => "FZ",
            Method::Gv => "GV",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mslr" => Ok(Method::Mslr),
            "slr" => Ok(Method::Slr),
            "fisher_z" | "fz" | "fisher" => Ok(Method::FisherZ),
            "gv" => Ok(Method::Gv),
            other => Err(Error::InvalidParameter(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MslrDetail {
    /// Bootstrap mean of the replicate statistics.
    pub mean: f64,
    /// Bootstrap sample variance (divisor `M - 1`).
    pub variance: f64,
    pub replications: usize,
    pub seed: u64,
    pub estimator: CommonRhoEstimator,
    /// Common correlation the bootstrap was drawn under.
    pub rho_common: f64,
    /// Observed signed root before standardization.
    pub slr_observed: f64,
    /// Replicate correlations redrawn for landing on the boundary.
    pub redraws: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GvDetail {
    pub draws: usize,
    pub seed: u64,
    pub prob_negative: f64,
    pub prob_positive: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Detail {
    Mslr(MslrDetail),
    Slr { rho_common: f64 },
    FisherZ { z1: f64, z2: f64, std_error: f64 },
    Gv(GvDetail),
}

/// Result of one test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub method: Method,
    /// Absent for the generalized test variable.
    pub statistic: Option<f64>,
    pub p_value: f64,
    pub detail: Detail,
}

impl TestOutcome {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Parametric bootstrap configuration for [`mslr_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BootstrapSettings {
    pub replications: usize,
    pub seed: u64,
    pub estimator: CommonRhoEstimator,
    /// Stream slots used for the two groups' replicate draws.
    pub lanes: [u64; 2],
}

impl BootstrapSettings {
    pub fn new(replications: usize, seed: u64) -> Result<Self> {
        let s = Self {
            replications,
            seed,
            estimator: CommonRhoEstimator::DonnerRosner,
            lanes: [0, 1],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_estimator(mut self, estimator: CommonRhoEstimator) -> Self {
        self.estimator = estimator;
        self
    }

    /// Swaps the group stream slots. Running the groups in the opposite
    /// order with mirrored settings reproduces every replicate exactly.
    pub fn mirrored(mut self) -> Self {
        self.lanes.swap(0, 1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < MIN_BOOTSTRAP_REPLICATIONS {
            return Err(Error::InvalidParameter(format!(
                "bootstrap replications must be at least {MIN_BOOTSTRAP_REPLICATIONS}, got {}",
                self.replications
            )));
        }
        if self.lanes[0] == self.lanes[1] {
            return Err(Error::InvalidParameter(
                "group stream slots must differ".into(),
            ));
        }
        Ok(())
    }
}

impl Default for BootstrapSettings {
    fn default() -> Self {
        Self::new(DEFAULT_REPLICATIONS, DEFAULT_SEED).expect("default is valid")
    }
}

/// Monte Carlo configuration for [`gv_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvSettings {
    pub draws: usize,
    pub seed: u64,
    pub lanes: [u64; 2],
}

impl GvSettings {
    pub fn new(draws: usize, seed: u64) -> Result<Self> {
        let s = Self {
            draws,
            seed,
            lanes: [0, 1],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn mirrored(mut self) -> Self {
        self.lanes.swap(0, 1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.draws < MIN_GV_DRAWS {
            return Err(Error::InvalidParameter(format!(
                "generalized variable draws must be at least {MIN_GV_DRAWS}, got {}",
                self.draws
            )));
        }
        if self.lanes[0] == self.lanes[1] {
            return Err(Error::InvalidParameter(
                "group stream slots must differ".into(),
            ));
        }
        Ok(())
    }
}

impl Default for GvSettings {
    fn default() -> Self {
        Self::new(DEFAULT_REPLICATIONS, DEFAULT_SEED).expect("default is valid")
    }
}

/// `2 (1 - Phi(|z|))`, computed through `erfc` to keep precision in the
/// far tail.
pub fn two_sided_normal_p(z: f64) -> f64 {
    libm::erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Signed root of the likelihood-ratio statistic given a common
/// correlation estimate:
/// `sign(r1 - r2) sqrt(sum n_i log((1 - rho r_i)^2 / ((1 - r_i^2)(1 - rho^2))))`.
pub fn slr_statistic(g1: &GroupSummary, g2: &GroupSummary, rho_common: f64) -> Result<f64> {
    g1.validate()?;
    g2.validate()?;
    if !(rho_common.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "common correlation must lie in (-1, 1), got {rho_common}"
        )));
    }
    for g in [g1, g2] {
        if !(rho_common * g.r < 1.0) {
            return Err(Error::NonPositiveVariance { rho_common, r: g.r });
        }
    }
    signed_root(g1.n as f64, g1.r, g2.n as f64, g2.r, rho_common)
}

#[inline]
fn signed_root(n1: f64, r1: f64, n2: f64, r2: f64, rho: f64) -> Result<f64> {
    let one_minus_rho2 = 1.0 - rho * rho;
    let term = |n: f64, r: f64| {
        let shrink = 1.0 - rho * r;
        n * (shrink * shrink / ((1.0 - r * r) * one_minus_rho2)).ln()
    };
    let radicand = term(n1, r1) + term(n2, r2);
    let root = if radicand >= 0.0 {
        radicand.sqrt()
    } else if radicand > -RADICAND_TOLERANCE {
        0.0
    } else {
        return Err(Error::NumericalInconsistency(format!(
            "negative likelihood-ratio radicand {radicand} at common rho {rho}"
        )));
    };
    let sign = if r1 > r2 {
        1.0
    } else if r1 < r2 {
        -1.0
    } else {
        0.0
    };
    Ok(sign * root)
}

/// Asymptotic two-sided p-value of an observed signed root.
pub fn slr_p_value(slr0: f64) -> f64 {
    two_sided_normal_p(slr0)
}

/// Signed likelihood-ratio test with the constrained MLE of the common
/// correlation and a standard normal reference.
pub fn slr_test(g1: &GroupSummary, g2: &GroupSummary) -> Result<TestOutcome> {
    let rho = CommonRhoEstimator::PearsonMle.estimate(g1, g2)?;
    let stat = slr_statistic(g1, g2, rho)?;
    Ok(TestOutcome {
        method: Method::Slr,
        statistic: Some(stat),
        p_value: slr_p_value(stat),
        detail: Detail::Slr { rho_common: rho },
    })
}

/// Draws sample correlations of size-`n` bivariate normal samples with
/// population correlation `rho` through the triangular Wishart factor:
/// `(rho* V + N) / sqrt((rho* V + N)^2 + W^2)` with `V^2 ~ chi2(n-1)`,
/// `W^2 ~ chi2(n-2)`, `N ~ N(0,1)`, `rho* = rho / sqrt(1 - rho^2)`.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationSampler {
    rho_star: f64,
    v2: ChiSquareSampler,
    w2: ChiSquareSampler,
}

impl CorrelationSampler {
    pub fn new(n: usize, rho: f64) -> Result<Self> {
        if n < crate::estimators::MIN_GROUP_SIZE {
            return Err(Error::TooFewObservations {
                required: crate::estimators::MIN_GROUP_SIZE,
                actual: n,
            });
        }
        if !(rho.abs() < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "correlation must lie in (-1, 1), got {rho}"
            )));
        }
        let df = u32::try_from(n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
        Ok(Self {
            rho_star: rho / (1.0 - rho * rho).sqrt(),
            v2: ChiSquareSampler::new(df - 1)?,
            w2: ChiSquareSampler::new(df - 2)?,
        })
    }

    /// One raw draw; may land within rounding of +-1 for extreme variates.
    #[inline]
    pub fn draw_raw(&self, stream: &mut RngStream) -> f64 {
        let v = self.v2.sample(stream).sqrt();
        let w2 = self.w2.sample(stream);
        let normal = stream.standard_normal();
        let num = self.rho_star * v + normal;
        num / (num * num + w2).sqrt()
    }

    /// One draw strictly inside `(-1, 1)`; boundary draws are redrawn and
    /// tallied in `redraws`.
    #[inline]
    pub fn draw(&self, stream: &mut RngStream, redraws: &mut u64) -> f64 {
        loop {
            let r = self.draw_raw(stream);
            if r.abs() < 1.0 - BOUNDARY_GUARD {
                return r;
            }
            *redraws += 1;
        }
    }
}

/// One sample correlation from a size-`n` sample with population correlation
/// `rho`.
pub fn sample_r_given_rho(n: usize, rho: f64, stream: &mut RngStream) -> Result<f64> {
    let mut redraws = 0;
    Ok(CorrelationSampler::new(n, rho)?.draw(stream, &mut redraws))
}

/// Modified signed log-likelihood ratio test.
///
/// The observed signed root is standardized by the mean and variance of its
/// parametric-bootstrap distribution under the fitted common correlation:
/// each replicate draws a fresh pair of sample correlations, re-estimates the
/// common correlation from that pair and recomputes the signed root.
pub fn mslr_test(
    g1: &GroupSummary,
    g2: &GroupSummary,
    boot: &BootstrapSettings,
) -> Result<TestOutcome> {
    g1.validate()?;
    g2.validate()?;
    boot.validate()?;
    let estimator = boot.estimator;
    let rho = estimator.estimate(g1, g2)?;
    let slr0 = slr_statistic(g1, g2, rho)?;

    let (n1, n2) = (g1.n, g2.n);
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let s1 = CorrelationSampler::new(n1, rho)?;
    let s2 = CorrelationSampler::new(n2, rho)?;
    let mut stream1 = RngStream::new(boot.seed, boot.lanes[0]);
    let mut stream2 = RngStream::new(boot.seed, boot.lanes[1]);

    let mut redraws = 0;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut first = None;
    let mut all_equal = true;
    for b in 0..boot.replications {
        let r1 = s1.draw(&mut stream1, &mut redraws);
        let r2 = s2.draw(&mut stream2, &mut redraws);
        let rho_b = match estimator {
            CommonRhoEstimator::DonnerRosner => pooled_fisher_rho(n1f, r1.atanh(), n2f, r2.atanh()),
            CommonRhoEstimator::PearsonMle => solve_common_rho(n1, r1, n2, r2),
        };
        let slr = signed_root(n1f, r1, n2f, r2, rho_b)?;
        match first {
            None => first = Some(slr),
            Some(f) => all_equal &= f == slr,
        }
        let k = (b + 1) as f64;
        let delta = slr - mean;
        mean += delta / k;
        m2 += delta * (slr - mean);
    }
    let variance = m2 / (boot.replications - 1) as f64;
    if all_equal || !(variance > 0.0) {
        return Err(Error::DegenerateBootstrap(boot.replications));
    }
    let stat = (slr0 - mean) / variance.sqrt();
    Ok(TestOutcome {
        method: Method::Mslr,
        statistic: Some(stat),
        p_value: two_sided_normal_p(stat),
        detail: Detail::Mslr(MslrDetail {
            mean,
            variance,
            replications: boot.replications,
            seed: boot.seed,
            estimator,
            rho_common: rho,
            slr_observed: slr0,
            redraws,
        }),
    })
}

/// Two-sample Fisher z test with standard error
/// `sqrt(1/(n1 - 3) + 1/(n2 - 3))`.
pub fn fisher_z_test(g1: &GroupSummary, g2: &GroupSummary) -> Result<TestOutcome> {
    g1.validate()?;
    g2.validate()?;
    let (z1, z2) = (g1.z(), g2.z());
    let std_error = (1.0 / (g1.n as f64 - 3.0) + 1.0 / (g2.n as f64 - 3.0)).sqrt();
    let stat = (z1 - z2) / std_error;
    Ok(TestOutcome {
        method: Method::FisherZ,
        statistic: Some(stat),
        p_value: two_sided_normal_p(stat),
        detail: Detail::FisherZ { z1, z2, std_error },
    })
}

/// Draws of the generalized pivotal quantity of one group's correlation:
/// `(r* W - Z) / sqrt((r* W - Z)^2 + V^2)` with `V^2 ~ chi2(n-1)`,
/// `W^2 ~ chi2(n-2)`, `Z ~ N(0,1)` and `r* = r / sqrt(1 - r^2)`.
#[derive(Debug, Clone, Copy)]
struct PivotSampler {
    r_star: f64,
    v2: ChiSquareSampler,
    w2: ChiSquareSampler,
}

impl PivotSampler {
    fn new(g: &GroupSummary) -> Result<Self> {
        let df = u32::try_from(g.n).map_err(|_| Error::InvalidParameter("n too large".into()))?;
        Ok(Self {
            r_star: g.r / (1.0 - g.r * g.r).sqrt(),
            v2: ChiSquareSampler::new(df - 1)?,
            w2: ChiSquareSampler::new(df - 2)?,
        })
    }

    #[inline]
    fn draw(&self, stream: &mut RngStream) -> f64 {
        let v2 = self.v2.sample(stream);
        let w = self.w2.sample(stream).sqrt();
        let z = stream.standard_normal();
        let num = self.r_star * w - z;
        num / (num * num + v2).sqrt()
    }
}

/// Generalized test variable: `p = 2 min(P(G < 0), P(G > 0))` for the
/// difference `G` of the two groups' pivotal quantities. Exact zeros count
/// toward neither side.
pub fn gv_test(g1: &GroupSummary, g2: &GroupSummary, settings: &GvSettings) -> Result<TestOutcome> {
    g1.validate()?;
    g2.validate()?;
    settings.validate()?;
    let p1 = PivotSampler::new(g1)?;
    let p2 = PivotSampler::new(g2)?;
    let mut stream1 = RngStream::new(settings.seed, settings.lanes[0]);
    let mut stream2 = RngStream::new(settings.seed, settings.lanes[1]);
    let (mut below, mut above) = (0usize, 0usize);
    for _ in 0..settings.draws {
        let g = p1.draw(&mut stream1) - p2.draw(&mut stream2);
        if g < 0.0 {
            below += 1;
        } else if g > 0.0 {
            above += 1;
        }
    }
    let total = settings.draws as f64;
    let prob_negative = below as f64 / total;
    let prob_positive = above as f64 / total;
    Ok(TestOutcome {
        method: Method::Gv,
        statistic: None,
        p_value: (2.0 * prob_negative.min(prob_positive)).min(1.0),
        detail: Detail::Gv(GvDetail {
            draws: settings.draws,
            seed: settings.seed,
            prob_negative,
            prob_positive,
        }),
    })
}

/// Runs one method with the given Monte Carlo settings.
pub fn run_method(
    method: Method,
    g1: &GroupSummary,
    g2: &GroupSummary,
    boot: &BootstrapSettings,
    gv: &GvSettings,
) -> Result<TestOutcome> {
    match method {
        Method::Mslr => mslr_test(g1, g2, boot),
        Method::Slr => slr_test(g1, g2),
        Method::FisherZ => fisher_z_test(g1, g2),
        Method::Gv => gv_test(g1, g2, gv),
    }
}
