//! Seeded random-variate streams.
//!
//! Every stream is a ChaCha12 generator keyed by a 64-bit master seed and
//! positioned on one of its 2^64 independent stream slots. Deriving a stream
//! is a pure function of `(master_seed, stream_index)`, so work split across
//! threads reproduces bit-for-bit regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::estimators::{BivariateData, BivariateNormalParams};

/// A deterministic random stream identified by `(master_seed, stream_index)`.
///
/// Streams with distinct indices under the same master seed are the
/// independent ChaCha stream slots of one key.
#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        Self {
            master_seed,
            stream_index,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// One N(0, 1) variate.
    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// One chi-square variate with `df` degrees of freedom.
    pub fn chi_square(&mut self, df: u32) -> Result<f64> {
        Ok(ChiSquareSampler::new(df)?.sample(self))
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }
}

/// Chi-square sampler with a fixed degree of freedom, reusable across draws.
///
/// Backed by the gamma sampler of `rand_distr`. A zero draw (probability
/// zero in exact arithmetic, reachable only through underflow at df = 1) is
/// redrawn so that the output is always strictly positive.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquareSampler {
    df: u32,
    inner: ChiSquared<f64>,
}

impl ChiSquareSampler {
    pub fn new(df: u32) -> Result<Self> {
        if df == 0 {
            return Err(Error::InvalidParameter(
                "chi-square degrees of freedom must be at least 1".into(),
            ));
        }
        let inner = ChiSquared::new(f64::from(df))
            .map_err(|e| Error::InvalidParameter(format!("chi-square df {df}: {e}")))?;
        Ok(Self { df, inner })
    }

    pub fn df(&self) -> u32 {
        self.df
    }

    pub fn sample(&self, stream: &mut RngStream) -> f64 {
        loop {
            let v = self.inner.sample(&mut stream.rng);
            if v > 0.0 {
                return v;
            }
        }
    }
}

/// Mixes a master seed with a path of integers into a fresh 64-bit seed.
///
/// Used to key nested units of work (study cell, replication, purpose) so
/// that each gets its own generator without any shared state.
pub fn derive_seed(master_seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master_seed), |acc, &p| {
        splitmix64(acc ^ splitmix64(p.wrapping_add(0x632B_E59B_D9B4_E019)))
    })
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `n` pairs from a bivariate normal population.
///
/// Uses the lower-triangular factor of the covariance matrix:
/// `x = mu_x + sigma_x z1`, `y = mu_y + sigma_y (rho z1 + sqrt(1 - rho^2) z2)`.
pub fn draw_bivariate_normal_sample(
    n: usize,
    params: &BivariateNormalParams,
    stream: &mut RngStream,
) -> Result<BivariateData> {
    params.validate()?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "bivariate sample size must be at least 2, got {n}"
        )));
    }
    let BivariateNormalParams {
        mu_x,
        mu_y,
        sigma_x,
        sigma_y,
        rho,
    } = *params;
    let tail = (1.0 - rho * rho).sqrt();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let z1 = stream.standard_normal();
        let z2 = stream.standard_normal();
        xs.push(mu_x + sigma_x * z1);
        ys.push(mu_y + sigma_y * (rho * z1 + tail * z2));
    }
    BivariateData::new(xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(v: &[f64]) -> (f64, f64) {
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, var)
    }

    #[test]
    fn standard_normal_moments() {
        let mut s = RngStream::new(11, 0);
        let v: Vec<f64> = (0..1_000_000).map(|_| s.standard_normal()).collect();
        let (m, var) = mean_var(&v);
        assert!(m.abs() < 0.005, "mean {m}");
        assert!((var - 1.0).abs() < 0.01, "var {var}");
    }

    #[test]
    fn same_stream_is_deterministic() {
        let mut a = RngStream::new(42, 7);
        let mut b = RngStream::new(42, 7);
        for _ in 0..1000 {
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
        let mut c = RngStream::new(42, 8);
        let mut a = RngStream::new(42, 7);
        let diff = (0..16)
            .filter(|_| a.standard_normal() != c.standard_normal())
            .count();
        assert_eq!(diff, 16);
    }

    #[test]
    fn chi_square_moments() {
        let mut s = RngStream::new(3, 1);
        let four = ChiSquareSampler::new(4).unwrap();
        let v: Vec<f64> = (0..1_000_000).map(|_| four.sample(&mut s)).collect();
        assert!((mean_var(&v).0 - 4.0).abs() < 0.02);

        let nine = ChiSquareSampler::new(9).unwrap();
        let v: Vec<f64> = (0..1_000_000).map(|_| nine.sample(&mut s)).collect();
        assert!((mean_var(&v).1 - 18.0).abs() < 0.3);
    }

    #[test]
    fn chi_square_df_one_is_positive() {
        let mut s = RngStream::new(5, 0);
        assert!((0..100_000).all(|_| s.chi_square(1).unwrap() > 0.0));
    }

    #[test]
    fn chi_square_rejects_zero_df() {
        let mut s = RngStream::new(5, 0);
        assert!(matches!(s.chi_square(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn derive_seed_separates_paths() {
        let a = derive_seed(1, &[0, 1]);
        assert_ne!(a, derive_seed(1, &[1, 0]));
        assert_ne!(a, derive_seed(2, &[0, 1]));
        assert_ne!(derive_seed(1, &[0]), derive_seed(1, &[0, 0]));
        assert_eq!(a, derive_seed(1, &[0, 1]));
    }

    fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
        for (x, y) in xs.iter().zip(ys) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx).powi(2);
            syy += (y - my).powi(2);
        }
        sxy / (sxx * syy).sqrt()
    }

    #[test]
    fn bivariate_sample_moments() {
        let mut s = RngStream::new(9, 2);
        let p = BivariateNormalParams::standard(0.0);
        let d = draw_bivariate_normal_sample(1_000_000, &p, &mut s).unwrap();
        assert!(correlation(d.xs(), d.ys()).abs() < 0.005);
        let (_, vx) = mean_var(d.xs());
        let (_, vy) = mean_var(d.ys());
        assert!((vx - 1.0).abs() < 0.005 && (vy - 1.0).abs() < 0.005);

        let p = BivariateNormalParams::standard(0.9);
        let d = draw_bivariate_normal_sample(1_000_000, &p, &mut s).unwrap();
        assert!((correlation(d.xs(), d.ys()) - 0.9).abs() < 0.002);
    }

    #[test]
    fn bivariate_sample_location_scale() {
        // 5 standard errors at n = 1e6 for mean, variance and correlation.
        let mut s = RngStream::new(10, 0);
        let p = BivariateNormalParams {
            mu_x: 3.0,
            mu_y: -1.0,
            sigma_x: 2.0,
            sigma_y: 0.5,
            rho: -0.4,
        };
        let n = 1_000_000;
        let d = draw_bivariate_normal_sample(n, &p, &mut s).unwrap();
        let root_n = (n as f64).sqrt();
        let (mx, vx) = mean_var(d.xs());
        let (my, vy) = mean_var(d.ys());
        assert!((mx - 3.0).abs() < 5.0 * 2.0 / root_n);
        assert!((my + 1.0).abs() < 5.0 * 0.5 / root_n);
        assert!((vx - 4.0).abs() < 5.0 * 4.0 * 2f64.sqrt() / root_n);
        assert!((vy - 0.25).abs() < 5.0 * 0.25 * 2f64.sqrt() / root_n);
        let r = correlation(d.xs(), d.ys());
        assert!((r + 0.4).abs() < 5.0 * (1.0 - 0.16) / root_n);
    }

    #[test]
    fn bivariate_sample_rejects_bad_parameters() {
        let mut s = RngStream::new(1, 0);
        assert!(
            draw_bivariate_normal_sample(10, &BivariateNormalParams::standard(1.0), &mut s)
                .is_err()
        );
        assert!(
            draw_bivariate_normal_sample(1, &BivariateNormalParams::standard(0.0), &mut s).is_err()
        );
        let mut p = BivariateNormalParams::standard(0.0);
        p.sigma_y = 0.0;
        assert!(draw_bivariate_normal_sample(10, &p, &mut s).is_err());
    }
}
