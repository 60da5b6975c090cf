//! Point estimation for two independent bivariate normal groups.
//!
//! Variances use divisor `n` throughout (maximum-likelihood moments). The
//! cross moment is never exposed on its own; only the scale-free sample
//! correlation `r` is kept, so the choice of divisor for it is immaterial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest group size accepted by every test: Fisher-Z weights `n - 3`
/// must be positive.
pub const MIN_GROUP_SIZE: usize = 4;

/// Paired observations `(x_j, y_j)` from one group.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateData {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl BivariateData {
    /// Pairs up two columns. Only checks pairing and finiteness; group-size
    /// and degeneracy checks happen in [`BivariateData::validate`].
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidParameter(format!(
                "paired columns differ in length: {} vs {}",
                xs.len(),
                ys.len()
            )));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "observations must be finite".into(),
            ));
        }
        Ok(Self { xs, ys })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// Checks `n >= 4` and that neither column is constant.
    pub fn validate(&self) -> Result<()> {
        summarize(self).map(|_| ())
    }
}

/// Parameters of one bivariate normal population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BivariateNormalParams {
    pub mu_x: f64,
    pub mu_y: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub rho: f64,
}

impl BivariateNormalParams {
    /// Zero means, unit variances.
    pub fn standard(rho: f64) -> Self {
        Self {
            mu_x: 0.0,
            mu_y: 0.0,
            sigma_x: 1.0,
            sigma_y: 1.0,
            rho,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho.abs() < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "correlation must lie in (-1, 1), got {}",
                self.rho
            )));
        }
        if !(self.sigma_x > 0.0 && self.sigma_y > 0.0)
            || !self.sigma_x.is_finite()
            || !self.sigma_y.is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "standard deviations must be positive, got ({}, {})",
                self.sigma_x, self.sigma_y
            )));
        }
        if !self.mu_x.is_finite() || !self.mu_y.is_finite() {
            return Err(Error::InvalidParameter("means must be finite".into()));
        }
        Ok(())
    }
}

/// Per-group sufficient statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub mean_x: f64,
    pub mean_y: f64,
    /// Divisor-`n` variance of the x column.
    pub var_x: f64,
    /// Divisor-`n` variance of the y column.
    pub var_y: f64,
    pub r: f64,
}

impl GroupSummary {
    /// A summary known only through its size and correlation, as when only
    /// published `(n, r)` are available. Means are 0 and variances 1; every
    /// test depends on the group only through `(n, r)`.
    pub fn from_correlation(n: usize, r: f64) -> Result<Self> {
        let s = Self {
            n,
            mean_x: 0.0,
            mean_y: 0.0,
            var_x: 1.0,
            var_y: 1.0,
            r,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_GROUP_SIZE {
            return Err(Error::TooFewObservations {
                required: MIN_GROUP_SIZE,
                actual: self.n,
            });
        }
        if !(self.r.abs() < 1.0) {
            return Err(Error::DegenerateData(format!(
                "sample correlation must lie strictly inside (-1, 1), got {}",
                self.r
            )));
        }
        if !(self.var_x > 0.0 && self.var_y > 0.0) {
            return Err(Error::DegenerateData(
                "sample variances must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Fisher z of the sample correlation.
    pub fn z(&self) -> f64 {
        self.r.atanh()
    }
}

/// Computes the maximum-likelihood moments of one group in a single
/// streaming pass (Welford co-moment updates).
pub fn summarize(data: &BivariateData) -> Result<GroupSummary> {
    let n = data.len();
    if n < MIN_GROUP_SIZE {
        return Err(Error::TooFewObservations {
            required: MIN_GROUP_SIZE,
            actual: n,
        });
    }
    let (mut mx, mut my) = (0.0_f64, 0.0_f64);
    let (mut sxx, mut syy, mut sxy) = (0.0_f64, 0.0_f64, 0.0_f64);
    for (k, (x, y)) in data.pairs().enumerate() {
        let w = (k + 1) as f64;
        let dx = x - mx;
        let dy = y - my;
        mx += dx / w;
        my += dy / w;
        sxx += dx * (x - mx);
        syy += dy * (y - my);
        sxy += dx * (y - my);
    }
    let constant = |col: &[f64]| col.iter().all(|&v| v == col[0]);
    if constant(data.xs()) || constant(data.ys()) || sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::DegenerateData("a column is constant".into()));
    }
    let r = sxy / (sxx * syy).sqrt();
    if !(r.abs() < 1.0) {
        return Err(Error::DegenerateData(format!(
            "columns are perfectly collinear (r = {r})"
        )));
    }
    let nf = n as f64;
    Ok(GroupSummary {
        n,
        mean_x: mx,
        mean_y: my,
        var_x: sxx / nf,
        var_y: syy / nf,
        r,
    })
}

/// `atanh(r)`.
pub fn fisher_z(r: f64) -> Result<f64> {
    if !(r.abs() < 1.0) {
        return Err(Error::Domain(format!("Fisher z requires |r| < 1, got {r}")));
    }
    Ok(r.atanh())
}

/// `tanh(z)`.
pub fn inv_fisher_z(z: f64) -> f64 {
    z.tanh()
}

/// Pooled correlation: `tanh` of the `(n_i - 3)`-weighted mean of the
/// groups' Fisher z values.
pub fn donner_rosner_rf(g1: &GroupSummary, g2: &GroupSummary) -> Result<f64> {
    for g in [g1, g2] {
        if g.n < MIN_GROUP_SIZE {
            return Err(Error::TooFewObservations {
                required: MIN_GROUP_SIZE,
                actual: g.n,
            });
        }
    }
    let r = pooled_fisher_rho(g1.n as f64, fisher_z(g1.r)?, g2.n as f64, fisher_z(g2.r)?);
    Ok(r)
}

/// Hot-path form of [`donner_rosner_rf`] taking sizes and z values directly.
#[inline]
pub(crate) fn pooled_fisher_rho(n1: f64, z1: f64, n2: f64, z2: f64) -> f64 {
    let (w1, w2) = (n1 - 3.0, n2 - 3.0);
    ((w1 * z1 + w2 * z2) / (w1 + w2)).tanh()
}

/// Left side of the common-correlation likelihood equation
/// `n1 (r1 - rho) / (1 - rho r1) + n2 (r2 - rho) / (1 - rho r2)`.
pub fn common_rho_score(n1: usize, r1: f64, n2: usize, r2: f64, rho: f64) -> f64 {
    n1 as f64 * (r1 - rho) / (1.0 - rho * r1) + n2 as f64 * (r2 - rho) / (1.0 - rho * r2)
}

/// Maximum-likelihood estimate of a common correlation for two groups.
///
/// The likelihood equation is multiplied out into
/// `(n1 r2 + n2 r1) rho^2 - (n1 + n2)(1 + r1 r2) rho + (n1 r1 + n2 r2) = 0`
/// and the root lying between `r1` and `r2` is taken. The score is strictly
/// decreasing on that interval, so a bisection on the original equation
/// backs up the closed form when rounding pushes it astray.
pub fn pearson_common_rho(g1: &GroupSummary, g2: &GroupSummary) -> Result<f64> {
    for g in [g1, g2] {
        if !(g.r.abs() < 1.0) {
            return Err(Error::Domain(format!(
                "common correlation requires |r| < 1, got {}",
                g.r
            )));
        }
    }
    Ok(solve_common_rho(g1.n, g1.r, g2.n, g2.r))
}

const SCORE_TOLERANCE: f64 = 1e-12;

pub(crate) fn solve_common_rho(n1: usize, r1: f64, n2: usize, r2: f64) -> f64 {
    if r1 == r2 {
        return r1;
    }
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    let (a1, a2) = (n1 as f64, n2 as f64);
    let a = a1 * r2 + a2 * r1;
    let b = -(a1 + a2) * (1.0 + r1 * r2);
    let c = a1 * r1 + a2 * r2;

    let candidates: [Option<f64>; 2] = if a == 0.0 {
        [Some(-c / b), None]
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            [None, None]
        } else {
            // b < 0 always, so q > 0 and there is no cancellation.
            let q = -0.5 * (b - disc.sqrt());
            [Some(c / q), Some(q / a)]
        }
    };

    let slack = 1e-12 * (hi - lo).max(f64::EPSILON);
    let score = |rho: f64| common_rho_score(n1, r1, n2, r2, rho);
    let closed_form = candidates
        .into_iter()
        .flatten()
        .filter(|rho| rho.is_finite() && *rho >= lo - slack && *rho <= hi + slack)
        .map(|rho| rho.clamp(lo, hi))
        .min_by(|x, y| score(*x).abs().total_cmp(&score(*y).abs()));

    match closed_form.map(|rho| polish(n1, r1, n2, r2, rho, lo, hi)) {
        Some(rho) if score(rho).abs() < SCORE_TOLERANCE => rho,
        _ => bisect_common_rho(n1, r1, n2, r2, lo, hi),
    }
}

/// Newton steps on the score, kept only while they shrink the residual.
fn polish(n1: usize, r1: f64, n2: usize, r2: f64, mut rho: f64, lo: f64, hi: f64) -> f64 {
    let score = |rho: f64| common_rho_score(n1, r1, n2, r2, rho);
    let slope = |rho: f64| {
        let d = |n: usize, r: f64| n as f64 * (r * r - 1.0) / (1.0 - rho * r).powi(2);
        d(n1, r1) + d(n2, r2)
    };
    let mut best = score(rho).abs();
    for _ in 0..3 {
        let next = (rho - score(rho) / slope(rho)).clamp(lo, hi);
        let s = score(next).abs();
        if !(s < best) {
            break;
        }
        rho = next;
        best = s;
    }
    rho
}

fn bisect_common_rho(n1: usize, r1: f64, n2: usize, r2: f64, lo: f64, hi: f64) -> f64 {
    let score = |rho: f64| common_rho_score(n1, r1, n2, r2, rho);
    // Score is positive at lo and negative at hi.
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = score(mid);
        if s == 0.0 {
            return mid;
        }
        if s > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if score(lo).abs() <= score(hi).abs() {
        lo
    } else {
        hi
    }
}

/// How the common correlation of a [`ConstrainedFit`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CommonRhoEstimator {
    /// Root of the likelihood equation ([`pearson_common_rho`]).
    PearsonMle,
    /// Weighted Fisher-z pool ([`donner_rosner_rf`]).
    #[default]
    DonnerRosner,
}

impl CommonRhoEstimator {
    pub fn estimate(self, g1: &GroupSummary, g2: &GroupSummary) -> Result<f64> {
        match self {
            Self::PearsonMle => pearson_common_rho(g1, g2),
            Self::DonnerRosner => donner_rosner_rf(g1, g2),
        }
    }
}

/// Parameter estimates under the null hypothesis of a common correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstrainedFit {
    pub rho_common: f64,
    pub provenance: CommonRhoEstimator,
    /// Per group: `[sigma2_x, sigma2_y]`.
    pub sigma2: [[f64; 2]; 2],
    /// Per group: `[mu_x, mu_y]`.
    pub mu: [[f64; 2]; 2],
}

impl ConstrainedFit {
    /// Full parameter vector of group `i` (0 or 1).
    pub fn params(&self, i: usize) -> BivariateNormalParams {
        BivariateNormalParams {
            mu_x: self.mu[i][0],
            mu_y: self.mu[i][1],
            sigma_x: self.sigma2[i][0].sqrt(),
            sigma_y: self.sigma2[i][1].sqrt(),
            rho: self.rho_common,
        }
    }
}

/// Constrained maximum-likelihood means and variances for a given common
/// correlation: means stay at the sample means and
/// `sigma2 = s2 (1 - rho r) / (1 - rho^2)`.
pub fn constrained_mles(
    g1: &GroupSummary,
    g2: &GroupSummary,
    rho_common: f64,
    provenance: CommonRhoEstimator,
) -> Result<ConstrainedFit> {
    if !(rho_common.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "common correlation must lie in (-1, 1), got {rho_common}"
        )));
    }
    let inflate = |g: &GroupSummary| -> Result<f64> {
        let shrink = 1.0 - rho_common * g.r;
        if !(shrink > 0.0) {
            return Err(Error::NonPositiveVariance { rho_common, r: g.r });
        }
        Ok(shrink / (1.0 - rho_common * rho_common))
    };
    let (f1, f2) = (inflate(g1)?, inflate(g2)?);
    Ok(ConstrainedFit {
        rho_common,
        provenance,
        sigma2: [
            [g1.var_x * f1, g1.var_y * f1],
            [g2.var_x * f2, g2.var_y * f2],
        ],
        mu: [[g1.mean_x, g1.mean_y], [g2.mean_x, g2.mean_y]],
    })
}

/// Unconstrained maximum-likelihood parameters of one group.
pub fn unconstrained_mle(g: &GroupSummary) -> BivariateNormalParams {
    BivariateNormalParams {
        mu_x: g.mean_x,
        mu_y: g.mean_y,
        sigma_x: g.var_x.sqrt(),
        sigma_y: g.var_y.sqrt(),
        rho: g.r,
    }
}

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Bivariate normal log-likelihood summed over the observations.
pub fn bivariate_loglik(data: &BivariateData, params: &BivariateNormalParams) -> Result<f64> {
    params.validate()?;
    let BivariateNormalParams {
        mu_x,
        mu_y,
        sigma_x,
        sigma_y,
        rho,
    } = *params;
    let one_minus = 1.0 - rho * rho;
    let quad: f64 = data
        .pairs()
        .map(|(x, y)| {
            let u = (x - mu_x) / sigma_x;
            let v = (y - mu_y) / sigma_y;
            u * u - 2.0 * rho * u * v + v * v
        })
        .sum();
    let n = data.len() as f64;
    Ok(
        -n * (LN_2PI + sigma_x.ln() + sigma_y.ln() + 0.5 * one_minus.ln())
            - quad / (2.0 * one_minus),
    )
}

/// The same log-likelihood evaluated from a group's sufficient statistics.
pub fn summary_loglik(g: &GroupSummary, params: &BivariateNormalParams) -> Result<f64> {
    params.validate()?;
    let BivariateNormalParams {
        mu_x,
        mu_y,
        sigma_x,
        sigma_y,
        rho,
    } = *params;
    let one_minus = 1.0 - rho * rho;
    let dx = g.mean_x - mu_x;
    let dy = g.mean_y - mu_y;
    let cov = g.r * (g.var_x * g.var_y).sqrt();
    let sx2 = sigma_x * sigma_x;
    let sy2 = sigma_y * sigma_y;
    let per_obs = (g.var_x + dx * dx) / sx2 - 2.0 * rho * (cov + dx * dy) / (sigma_x * sigma_y)
        + (g.var_y + dy * dy) / sy2;
    let n = g.n as f64;
    Ok(
        -n * (LN_2PI + sigma_x.ln() + sigma_y.ln() + 0.5 * one_minus.ln())
            - n * per_obs / (2.0 * one_minus),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(xs: &[f64], ys: &[f64]) -> BivariateData {
        BivariateData::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    fn group(n: usize, r: f64) -> GroupSummary {
        GroupSummary::from_correlation(n, r).unwrap()
    }

    #[test]
    fn perfect_collinearity_is_degenerate() {
        let d = data(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(summarize(&d), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn decreasing_association_has_negative_r() {
        let d = data(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.5, 1.0]);
        let s = summarize(&d).unwrap();
        assert!(s.r < 0.0 && s.r > -1.0);
    }

    #[test]
    fn constant_column_and_small_n_rejected() {
        let d = data(&[1.0, 2.0, 3.0, 4.0], &[2.0; 4]);
        assert!(matches!(summarize(&d), Err(Error::DegenerateData(_))));
        let d = data(&[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0]);
        assert!(matches!(
            summarize(&d),
            Err(Error::TooFewObservations {
                required: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn mismatched_columns_rejected() {
        assert!(BivariateData::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(BivariateData::new(vec![1.0, f64::NAN], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn fisher_z_values() {
        assert_eq!(fisher_z(0.0).unwrap(), 0.0);
        let direct = 0.5 * (1.812_f64 / 0.188).ln();
        assert!((fisher_z(0.812).unwrap() - 1.1329).abs() < 1e-4);
        assert!((fisher_z(0.812).unwrap() - direct).abs() < 1e-12);
        for t in [-2.0, -0.5, 0.0, 0.5, 2.0] {
            assert!((fisher_z(inv_fisher_z(t)).unwrap() - t).abs() < 1e-12);
        }
        assert!(matches!(fisher_z(1.0), Err(Error::Domain(_))));
        assert!(matches!(fisher_z(-1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn inv_fisher_z_range() {
        assert_eq!(inv_fisher_z(0.0), 0.0);
        let t = inv_fisher_z(20.0);
        assert!(t <= 1.0 && 1.0 - t < 1e-15);
        let mut prev = 0.0;
        for k in 1..=40 {
            let t = inv_fisher_z(k as f64 * 0.5);
            assert!(t >= prev);
            prev = t;
        }
    }

    #[test]
    fn donner_rosner_examples() {
        let r = donner_rosner_rf(&group(12, 0.4), &group(30, 0.4)).unwrap();
        assert!((r - 0.4).abs() < 1e-15);

        let r = donner_rosner_rf(&group(20, 0.3), &group(20, 0.5)).unwrap();
        let expect = ((0.3_f64.atanh() + 0.5_f64.atanh()) / 2.0).tanh();
        assert!((r - expect).abs() < 1e-15);

        let r = donner_rosner_rf(&group(5, 0.0), &group(25, 0.8)).unwrap();
        let expect = ((2.0 * 0.0 + 22.0 * 0.8_f64.atanh()) / 24.0).tanh();
        assert!((r - expect).abs() < 1e-15);
    }

    #[test]
    fn donner_rosner_requires_four() {
        let mut g = group(10, 0.1);
        g.n = 3;
        assert!(matches!(
            donner_rosner_rf(&g, &group(10, 0.2)),
            Err(Error::TooFewObservations { .. })
        ));
    }

    // Independent oracle: plain bisection on the unexpanded equation.
    fn bisection_oracle(n1: usize, r1: f64, n2: usize, r2: f64) -> f64 {
        let (mut lo, mut hi) = (r1.min(r2), r1.max(r2));
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            let f = n1 as f64 * (r1 - mid) / (1.0 - mid * r1)
                + n2 as f64 * (r2 - mid) / (1.0 - mid * r2);
            if f > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn pearson_common_rho_examples() {
        let r = pearson_common_rho(&group(10, 0.35), &group(40, 0.35)).unwrap();
        assert_eq!(r, 0.35);

        let r = pearson_common_rho(&group(15, 0.42), &group(15, -0.42)).unwrap();
        assert!(r.abs() < 1e-15);

        let r = pearson_common_rho(&group(10, 0.2), &group(20, 0.6)).unwrap();
        let oracle = bisection_oracle(10, 0.2, 20, 0.6);
        // Frozen from the bisection oracle.
        assert!(
            (oracle - 0.487_355_878_729_954).abs() < 1e-12,
            "oracle {oracle}"
        );
        assert!((r - oracle).abs() < 1e-12);
        assert!(common_rho_score(10, 0.2, 20, 0.6, r).abs() < 1e-12);
        assert!((0.2..=0.6).contains(&r));
    }

    #[test]
    fn pearson_common_rho_linear_case() {
        // n1 r2 + n2 r1 = 0: leading coefficient vanishes.
        let r = pearson_common_rho(&group(10, -0.2), &group(20, 0.1)).unwrap();
        assert!(common_rho_score(10, -0.2, 20, 0.1, r).abs() < 1e-12);
        assert!((r - bisection_oracle(10, -0.2, 20, 0.1)).abs() < 1e-12);
    }

    #[test]
    fn pearson_common_rho_near_boundary() {
        let r = pearson_common_rho(&group(300, 0.999_999), &group(5, -0.999_999)).unwrap();
        assert!(r > -0.999_999 && r < 0.999_999);
        // One ulp of rho moves the score by ~1e-8 this close to the boundary.
        assert!(common_rho_score(300, 0.999_999, 5, -0.999_999, r).abs() < 1e-7);
        assert!((r - bisection_oracle(300, 0.999_999, 5, -0.999_999)).abs() < 1e-14);
    }

    #[test]
    fn constrained_mle_examples() {
        let mut g = group(10, 0.5);
        g.var_x = 2.0;
        g.var_y = 3.0;
        let fit = constrained_mles(&g, &g, 0.8, CommonRhoEstimator::PearsonMle).unwrap();
        assert!((fit.sigma2[0][0] - 2.0 * 0.6 / 0.36).abs() < 1e-12);
        assert!((fit.sigma2[0][0] - 3.333_333_333_333_333).abs() < 1e-12);

        let fit = constrained_mles(&g, &g, 0.5, CommonRhoEstimator::PearsonMle).unwrap();
        assert!((fit.sigma2[0][0] - 2.0).abs() < 1e-15);
        assert!((fit.sigma2[1][1] - 3.0).abs() < 1e-15);

        let fit = constrained_mles(&g, &g, 0.0, CommonRhoEstimator::DonnerRosner).unwrap();
        assert_eq!(fit.sigma2[0], [2.0, 3.0]);
    }

    #[test]
    fn constrained_mle_rejects_singular() {
        let g = group(10, 0.5);
        assert!(matches!(
            constrained_mles(&g, &g, 1.0, CommonRhoEstimator::PearsonMle),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn loglik_factorizes_at_zero_correlation() {
        let d = data(&[0.3, -1.2, 2.0, 0.7, -0.1], &[1.1, 0.4, -0.9, 0.0, 2.2]);
        let ll = bivariate_loglik(&d, &BivariateNormalParams::standard(0.0)).unwrap();
        let univariate = |v: f64| -0.5 * (2.0 * std::f64::consts::PI).ln() - 0.5 * v * v;
        let expect: f64 = d.pairs().map(|(x, y)| univariate(x) + univariate(y)).sum();
        assert!((ll - expect).abs() < 1e-12);
    }

    #[test]
    fn loglik_data_and_summary_agree() {
        let d = data(
            &[0.3, -1.2, 2.0, 0.7, -0.1, 1.5],
            &[1.1, 0.4, -0.9, 0.0, 2.2, 0.8],
        );
        let s = summarize(&d).unwrap();
        let p = BivariateNormalParams {
            mu_x: 0.2,
            mu_y: -0.3,
            sigma_x: 1.3,
            sigma_y: 0.7,
            rho: 0.45,
        };
        let a = bivariate_loglik(&d, &p).unwrap();
        let b = summary_loglik(&s, &p).unwrap();
        assert!((a - b).abs() < 1e-10 * a.abs());
        let mle = unconstrained_mle(&s);
        let at_mle = bivariate_loglik(&d, &mle).unwrap();
        assert_eq!(at_mle - bivariate_loglik(&d, &mle).unwrap(), 0.0);
        assert!(at_mle > a);
    }

    #[test]
    fn loglik_domain_errors() {
        let d = data(&[0.3, -1.2, 2.0, 0.7], &[1.1, 0.4, -0.9, 0.0]);
        assert!(bivariate_loglik(&d, &BivariateNormalParams::standard(1.0)).is_err());
    }
}
