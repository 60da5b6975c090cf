use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrtest_cli::{reproduce, run_test, CliError, Input, ReproduceOptions, Target, TestRequest};
use corrtest_core::{CommonRhoEstimator, Error, Method, Scale, DEFAULT_REPLICATIONS, DEFAULT_SEED};

/// Tests whether two independent bivariate normal samples share a correlation.
#[derive(Parser)]
#[command(name = "corrtest", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the correlations of two groups.
    Test(TestArgs),
    /// Regenerate a published simulation table as CSV.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct TestArgs {
    /// Group sizes and sample correlations.
    #[arg(long, num_args = 4, value_names = ["N1", "R1", "N2", "R2"], allow_negative_numbers = true,
          conflicts_with = "csv", required_unless_present = "csv")]
    summary: Option<Vec<f64>>,

    /// Two-column x,y files, one per group.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    csv: Option<Vec<PathBuf>>,

    /// Skip the first line of each CSV file.
    #[arg(long, requires = "csv")]
    header: bool,

    /// Methods to run: mslr, slr, fisher_z, gv or all. Repeatable or comma separated.
    #[arg(long, value_delimiter = ',', default_value = "mslr,fisher_z,gv")]
    method: Vec<String>,

    #[arg(long, default_value_t = 0.05)]
    alpha: f64,

    /// Bootstrap replicates for MSLR.
    #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
    boot_m: usize,

    /// Monte Carlo draws for GV.
    #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
    gv_draws: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Common-correlation estimate the bootstrap is drawn under.
    #[arg(long, value_enum, default_value_t = EstimatorArg::Pooled)]
    estimator: EstimatorArg,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(value_enum)]
    target: Target,

    #[arg(long, value_enum, default_value_t = ScaleArg::Desk)]
    scale: ScaleArg,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Outer replications per cell (draws per p-value for table4).
    #[arg(long)]
    replications: Option<usize>,

    /// Only these sample-size pairs, e.g. `10x10,5x25`.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pairs: Option<Vec<(usize, usize)>>,

    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Desk,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    /// Sample-size weighted Fisher-z pool.
    Pooled,
    /// Maximum-likelihood root.
    Pearson,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected N1xN2, got '{s}'"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_methods(raw: &[String]) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for token in raw {
        let expanded = if token.eq_ignore_ascii_case("all") {
            Method::ALL.to_vec()
        } else {
            vec![token.parse::<Method>()?]
        };
        for m in expanded {
            if !methods.contains(&m) {
                methods.push(m);
            }
        }
    }
    Ok(methods)
}

fn group_size(v: f64) -> Result<usize, CliError> {
    if v.fract() == 0.0 && v >= 0.0 && v < u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Error::InvalidParameter(format!("group size must be a whole number, got {v}")).into())
    }
}

fn test(args: TestArgs) -> Result<String, CliError> {
    let input = match (args.summary, args.csv) {
        (Some(s), _) => Input::Summary {
            n1: group_size(s[0])?,
            r1: s[1],
            n2: group_size(s[2])?,
            r2: s[3],
        },
        (None, Some(files)) => Input::Csv {
            files: [files[0].clone(), files[1].clone()],
            header: args.header,
        },
        (None, None) => unreachable!("clap requires one input"),
    };
    let request = TestRequest {
        methods: parse_methods(&args.method)?,
        alpha: args.alpha,
        boot_m: args.boot_m,
        gv_draws: args.gv_draws,
        seed: args.seed,
        estimator: match args.estimator {
            EstimatorArg::Pooled => CommonRhoEstimator::DonnerRosner,
            EstimatorArg::Pearson => CommonRhoEstimator::PearsonMle,
        },
    };
    let report = run_test(input, &request)?;
    Ok(match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Table => report.to_table(),
    })
}

fn run(cli: Cli) -> Result<Option<String>, CliError> {
    match cli.command {
        Command::Test(args) => test(args).map(Some),
        Command::Reproduce(args) => {
            let csv = reproduce(&ReproduceOptions {
                target: args.target,
                scale: match args.scale {
                    ScaleArg::Desk => Scale::Desk,
                    ScaleArg::Full => Scale::Full,
                },
                seed: args.seed,
                replications: args.replications,
                pairs: args.pairs,
            })?;
            match args.out {
                Some(path) => {
                    std::fs::write(path, csv)?;
                    Ok(None)
                }
                None => Ok(Some(csv)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if let Some(text) = out {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
