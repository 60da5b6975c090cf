//! Regenerates the published size, power and worked-example tables as CSV.

use std::fmt::Write as _;

use corrtest_core::published::{
    published_power, published_size, LATERALITY_N, LATERALITY_REGIONS, POWER_PAIRS, POWER_RHO1,
    POWER_RHO2_NEGATIVE, POWER_RHO2_POSITIVE, SIZE_PAIRS, SIZE_RHOS, TABLE_METHODS,
};
use corrtest_core::{
    run_method, run_power_study, run_size_study, BootstrapSettings, Detail, Error, GroupSummary,
    GvSettings, Method, Scale, StudyResult, StudySpec,
};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// Actual size under equal correlations.
    Table1,
    /// Power with positive second correlations.
    #[value(name = "table2-1", alias = "table2_1")]
    Table2Positive,
    /// Power with negative second correlations.
    #[value(name = "table2-2", alias = "table2_2")]
    Table2Negative,
    /// p-values for the laterality example.
    Table4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproduceOptions {
    pub target: Target,
    pub scale: Scale,
    pub seed: u64,
    /// Overrides the scale's outer replication count.
    pub replications: Option<usize>,
    /// Restricts the grid to these sample-size pairs.
    pub pairs: Option<Vec<(usize, usize)>>,
}

/// Monte Carlo draws per p-value for the worked example.
pub fn example_draws(scale: Scale) -> usize {
    match scale {
        Scale::Desk => 100_000,
        Scale::Full => 1_000_000,
    }
}

pub fn reproduce(opts: &ReproduceOptions) -> Result<String> {
    match opts.target {
        Target::Table1 => size_table(opts),
        Target::Table2Positive => power_table(opts, &POWER_RHO2_POSITIVE),
        Target::Table2Negative => power_table(opts, &POWER_RHO2_NEGATIVE),
        Target::Table4 => example_table(opts),
    }
}

fn study_spec(
    opts: &ReproduceOptions,
    default_pairs: &[(usize, usize)],
    rhos: Vec<(f64, f64)>,
) -> StudySpec {
    let pairs = opts.pairs.clone().unwrap_or_else(|| default_pairs.to_vec());
    let mut spec = StudySpec::at_scale(opts.scale, pairs, rhos, TABLE_METHODS.to_vec(), opts.seed);
    if let Some(r) = opts.replications {
        spec.replications = r;
    }
    spec
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One `rate`, `se` and `published` row per (pair, method).
fn write_grid(
    out: &mut String,
    result: &StudyResult,
    spec: &StudySpec,
    lead: impl Fn(usize, usize) -> String,
    published: impl Fn(usize, usize, f64, f64, Method) -> Option<f64>,
) {
    for &(n1, n2) in &spec.sample_sizes {
        for &method in &spec.methods {
            let cells: Vec<_> = spec
                .correlations
                .iter()
                .map(|&(a, b)| {
                    (
                        a,
                        b,
                        result.get(n1, n2, a, b, method).expect("cell simulated"),
                    )
                })
                .collect();
            let rows: [(&str, Vec<String>); 3] = [
                (
                    "rate",
                    cells
                        .iter()
                        .map(|c| c.2.rejection_rate.to_string())
                        .collect(),
                ),
                (
                    "se",
                    cells
                        .iter()
                        .map(|c| c.2.standard_error.to_string())
                        .collect(),
                ),
                (
                    "published",
                    cells
                        .iter()
                        .map(|c| fmt_opt(published(n1, n2, c.0, c.1, method)))
                        .collect(),
                ),
            ];
            for (stat, values) in rows {
                let _ = writeln!(
                    out,
                    "{},{},{stat},{}",
                    lead(n1, n2),
                    method,
                    values.join(",")
                );
            }
        }
    }
}

fn size_table(opts: &ReproduceOptions) -> Result<String> {
    let spec = study_spec(
        opts,
        &SIZE_PAIRS,
        SIZE_RHOS.iter().map(|&r| (r, r)).collect(),
    );
    let result = run_size_study(&spec)?;
    let mut out = String::new();
    let header: Vec<String> = SIZE_RHOS.iter().map(|r| format!("{r:.1}")).collect();
    let _ = writeln!(out, "n1,n2,method,stat,{}", header.join(","));
    write_grid(
        &mut out,
        &result,
        &spec,
        |a, b| format!("{a},{b}"),
        |n1, n2, r, _, m| published_size(n1, n2, r, m),
    );
    Ok(out)
}

fn power_table(opts: &ReproduceOptions, rho2s: &[f64]) -> Result<String> {
    let spec = study_spec(
        opts,
        &POWER_PAIRS,
        rho2s.iter().map(|&r| (POWER_RHO1, r)).collect(),
    );
    let result = run_power_study(&spec)?;
    let mut out = String::new();
    let header: Vec<String> = rho2s.iter().map(|r| format!("{r:.2}")).collect();
    let _ = writeln!(out, "n1,n2,rho1,method,stat,{}", header.join(","));
    write_grid(
        &mut out,
        &result,
        &spec,
        |a, b| format!("{a},{b},{POWER_RHO1}"),
        published_power,
    );
    Ok(out)
}

fn example_table(opts: &ReproduceOptions) -> Result<String> {
    if opts.pairs.is_some() {
        return Err(Error::InvalidParameter("--pairs does not apply to table4".into()).into());
    }
    let draws = opts
        .replications
        .unwrap_or_else(|| example_draws(opts.scale));
    let boot = BootstrapSettings::new(draws, opts.seed)?;
    let gv = GvSettings::new(draws, opts.seed)?;
    let mut out = String::from("region,n,r_male,r_female,method,p_value,se,published\n");
    for region in LATERALITY_REGIONS {
        let men = GroupSummary::from_correlation(LATERALITY_N, region.r_male)?;
        let women = GroupSummary::from_correlation(LATERALITY_N, region.r_female)?;
        for (i, method) in TABLE_METHODS.into_iter().enumerate() {
            let outcome = run_method(method, &men, &women, &boot, &gv)?;
            // The bootstrap p-value has no simple binomial error.
            let se = match outcome.detail {
                Detail::Gv(d) => {
                    let q = d.prob_negative.min(d.prob_positive);
                    Some(2.0 * (q * (1.0 - q) / d.draws as f64).sqrt())
                }
                Detail::FisherZ { .. } => Some(0.0),
                _ => None,
            };
            let _ = writeln!(
                out,
                "{},{LATERALITY_N},{},{},{method},{},{},{}",
                region.name,
                region.r_male,
                region.r_female,
                outcome.p_value,
                fmt_opt(se),
                region.p_values[i]
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(target: Target) -> ReproduceOptions {
        ReproduceOptions {
            target,
            scale: Scale::Desk,
            seed: 11,
            replications: Some(200),
            pairs: Some(vec![(5, 5)]),
        }
    }

    #[test]
    fn size_layout() {
        let csv = reproduce(&ReproduceOptions {
            replications: Some(100),
            ..opts(Target::Table1)
        })
        .unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "n1,n2,method,stat,0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
        );
        assert_eq!(lines.len(), 1 + 3 * 3);
        assert!(lines[3].starts_with("5,5,mslr,published,0.05"));
        assert!(lines.iter().all(|l| l.split(',').count() == 14));
    }

    #[test]
    fn power_layout() {
        let csv = reproduce(&ReproduceOptions {
            replications: Some(100),
            ..opts(Target::Table2Negative)
        })
        .unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert!(lines[0].starts_with("n1,n2,rho1,method,stat,-0.15"));
        assert_eq!(lines.len(), 10);
        assert!(lines.iter().all(|l| l.split(',').count() == 14));
    }

    #[test]
    fn table4_rejects_pairs_filter() {
        assert!(reproduce(&opts(Target::Table4)).is_err());
    }
}
