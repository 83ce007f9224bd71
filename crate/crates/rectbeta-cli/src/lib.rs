//! Argument definitions and dispatch for the `rectbeta` binary. Every command
//! returns a JSON value; exact quantities are emitted as rational strings.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rectbeta::montecarlo::{self, SampleConfig, Statistic, ThetaCase};
use rectbeta::qgamma::{self, HTParams, Route};
use rectbeta::{duality, jack, rectconv, Error, Partition, Rational, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "rectbeta", version, about = "Exact rectangular addition and q-gamma cumulant calculus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monomial expansion of a Jack polynomial
    Jack {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        nvars: usize,
    },
    /// Exact E[P_lambda(c^2)] for the rectangular sum
    ConvMoment {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        spectra: Spectra,
        #[arg(long)]
        theta: String,
    },
    /// Expected characteristic polynomial of C C*
    Charpoly {
        #[command(flatten)]
        spectra: Spectra,
    },
    /// q-gamma cumulants to moments
    K2m {
        #[command(flatten)]
        ht: HtArgs,
        /// k_2, k_4, ... as a comma-separated list
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// q-gamma moments to cumulants
    M2k {
        #[command(flatten)]
        ht: HtArgs,
        /// m_2, m_4, ... as a comma-separated list
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Moments of the q-gamma convolution
    Convolve {
        #[command(flatten)]
        ht: HtArgs,
        #[arg(long, allow_hyphen_values = true)]
        ma: String,
        #[arg(long, allow_hyphen_values = true)]
        mb: String,
    },
    /// Moments of the q-gamma Laguerre limit law
    Laguerre {
        #[command(flatten)]
        ht: HtArgs,
    },
    /// Finite rectangular cumulants against q-gamma cumulants at gamma = -M
    Duality {
        #[arg(long)]
        r: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
    },
    /// Monte Carlo estimates compared with exact Jack moments
    McVerify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct Spectra {
    /// squared singular values of A, comma-separated
    #[arg(long)]
    pub ra: String,
    #[arg(long)]
    pub rb: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct HtArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[arg(long)]
    pub order: usize,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => 2,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: 2, message: msg.into() }
}

fn rational(s: &str) -> Result<Rational, CliError> {
    rectbeta::parse_rational(s).ok_or_else(|| usage(format!("malformed rational: {s:?}")))
}

fn rational_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(rational).collect()
}

fn partition(s: &str) -> Result<Partition, CliError> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| usage(format!("malformed partition: {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(CliError::from)
}

fn strings(v: &[Rational]) -> Value {
    Value::from(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn route(s: &str) -> Result<Route, CliError> {
    s.parse().map_err(CliError::from)
}

fn ht_params(ht: &HtArgs) -> Result<HTParams<Rational>, CliError> {
    if ht.order < 1 {
        return Err(usage("order must be at least 1"));
    }
    Ok(HTParams::new(rational(&ht.q)?, rational(&ht.gamma)?))
}

/// Configuration file for `mc-verify`. Spectra are singular values (not squared) as rational strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McConfig {
    pub m: usize,
    pub n: usize,
    pub theta_case: String,
    pub spectra_a: Vec<String>,
    pub spectra_b: Vec<String>,
    pub statistics: Vec<Vec<usize>>,
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McReport {
    pub statistic: String,
    pub empirical: f64,
    pub stderr: f64,
    pub exact: f64,
    pub z_score: f64,
    pub samples: usize,
    pub rejected: usize,
    pub seed: u64,
}

pub fn mc_verify(cfg: &McConfig) -> Result<Vec<McReport>, CliError> {
    let case = match cfg.theta_case.as_str() {
        "half" => ThetaCase::Half,
        "one" => ThetaCase::One,
        other => return Err(usage(format!("theta_case must be half or one, got {other:?}"))),
    };
    let sa = cfg.spectra_a.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
    let sb = cfg.spectra_b.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
    let sq = |v: &[Rational]| v.iter().map(|x| x * x).collect::<Vec<_>>();
    let fl = |v: &[Rational]| v.iter().map(|x| x.to_f64_lossy()).collect::<Vec<_>>();
    let stats = cfg
        .statistics
        .iter()
        .map(|p| Partition::new(p.clone()).map(Statistic::Jack))
        .collect::<Result<Vec<_>, _>>()?;
    let sample_cfg = SampleConfig {
        m: cfg.m,
        n: cfg.n,
        theta_case: case,
        spectra_a: fl(&sa),
        spectra_b: fl(&sb),
        samples: cfg.samples,
        seed: cfg.seed,
    };
    let estimates = montecarlo::sample_sum_moments(&sample_cfg, &stats)?;
    let mut out = Vec::with_capacity(stats.len());
    for est in estimates {
        let exact = montecarlo::exact_statistic(&est.statistic, &sq(&sa), &sq(&sb), cfg.m, cfg.n, case)?.to_f64_lossy();
        out.push(McReport {
            statistic: match &est.statistic {
                Statistic::Jack(l) => l.to_string(),
                other => other.to_string(),
            },
            empirical: est.mean,
            stderr: est.stderr,
            exact,
            z_score: est.z_score(exact),
            samples: est.n,
            rejected: est.rejected,
            seed: cfg.seed,
        });
    }
    Ok(out)
}

pub fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Jack { lambda, theta, nvars } => {
            let lambda = partition(&lambda)?;
            let theta = rational(&theta)?;
            let p = jack::jack(&lambda, &theta, nvars)?;
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .rev()
                .map(|(mu, c)| json!({ "monomial": mu.parts(), "coeff": c.to_string() }))
                .collect();
            Ok(json!({ "lambda": lambda.parts(), "theta": theta.to_string(), "nvars": nvars, "terms": terms }))
        }
        Command::ConvMoment { lambda, spectra, theta } => {
            let lambda = partition(&lambda)?;
            let params = rectconv::BetaParams::new(spectra.m, spectra.n, rational(&theta)?)?;
            let v = rectconv::conv_jack_moment(&lambda, &rational_list(&spectra.ra)?, &rational_list(&spectra.rb)?, &params)?;
            Ok(Value::from(v.to_string()))
        }
        Command::Charpoly { spectra } => {
            let p = rectconv::rect_charpoly(&rational_list(&spectra.ra)?, &rational_list(&spectra.rb)?, spectra.m, spectra.n)?;
            let top_down: Vec<Rational> = p.coeffs.iter().rev().cloned().collect();
            Ok(json!({ "coefficients": strings(&top_down), "polynomial": p.to_string() }))
        }
        Command::K2m { ht, k, route: r } => {
            let p = ht_params(&ht)?;
            let m = qgamma::k2m(&rational_list(&k)?, &p, ht.order, route(&r)?)?;
            Ok(strings(&m))
        }
        Command::M2k { ht, m, route: r } => {
            let p = ht_params(&ht)?;
            let k = qgamma::m2k_route(&rational_list(&m)?, &p, ht.order, route(&r)?)?;
            Ok(strings(&k))
        }
        Command::Convolve { ht, ma, mb } => {
            let p = ht_params(&ht)?;
            Ok(strings(&qgamma::qgamma_convolve(&rational_list(&ma)?, &rational_list(&mb)?, &p, ht.order)?))
        }
        Command::Laguerre { ht } => {
            let p = ht_params(&ht)?;
            Ok(strings(&qgamma::laguerre_moments(&p, ht.order)?))
        }
        Command::Duality { r, m, n, order } => {
            let rep = duality::duality_check(&rational_list(&r)?, m, n, order)?;
            let ratios: Vec<Value> =
                rep.ratios.iter().map(|x| x.as_ref().map_or(Value::Null, |v| Value::from(v.to_string()))).collect();
            Ok(json!({ "finite": strings(&rep.finite), "qgamma": strings(&rep.qgamma), "ratios": ratios }))
        }
        Command::McVerify { config, seed } => {
            let text = std::fs::read_to_string(&config).map_err(|e| usage(format!("{}: {e}", config.display())))?;
            let mut cfg: McConfig = serde_json::from_str(&text).map_err(|e| usage(format!("bad config: {e}")))?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let reports = mc_verify(&cfg)?;
            serde_json::to_value(reports).map_err(|e| CliError { code: 1, message: e.to_string() })
        }
    }
}
