//! `hwz`: tables of monotone Hurwitz numbers, exact LUE cumulant series,
//! Weingarten functions, identity verification and Monte Carlo checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 refused
//! by an enumeration guard.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hwz_core::algebra::{parse_rat, BigRat, CumulantSeries, RatFunc};
use hwz_core::cumulants::{
    scaled_cumulant_hurwitz, scaled_cumulant_oracle, Ensemble, TraceMonomial, WishartParams,
};
use hwz_core::hurwitz::{hurwitz_table, HurwitzQuery, HurwitzTable, Kind, Route};
use hwz_core::identities::{run_suite, IdentityReport, Suite, SuiteConfig};
use hwz_core::mc::{estimate_cumulants, SamplerConfig, Target};
use hwz_core::sym::IntPartition;
use hwz_core::weingarten::{pole_report, wg, wg_series, CentralElement};
use hwz_core::{Error, Limits};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: &str = "hwz/1";

#[derive(Parser)]
#[command(name = "hwz", version, about = "Monotone Hurwitz numbers and exact LUE cumulants")]
struct Cli {
    /// TOML file setting enumeration guards (max_n_dfs, max_n_groupalgebra,
    /// max_n_oracle, max_bell). HWZ_MAX_N overrides it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Double Hurwitz numbers H_g(mu, nu), summed over the class of mu.
    Hurwitz {
        /// |mu|, checked against --mu when given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        mu: String,
        /// Omit for the whole row over nu.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Monotone)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The scaled cumulant series of tr X^{mu_1}, ..., tr X^{mu_l}.
    Cumulant {
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long)]
        mu: String,
        /// A rational value, or `symbolic`.
        #[arg(long, default_value = "symbolic")]
        c: String,
        #[arg(long, default_value_t = 3)]
        gmax: usize,
        #[arg(long, value_enum, default_value_t = CumulantRoute::Hurwitz)]
        route: CumulantRoute,
    },
    /// The Weingarten function Wg_{n,z} by conjugacy class.
    Wg {
        #[arg(long)]
        n: usize,
        /// Also print the expansion at z = infinity to z^{-n-order}.
        #[arg(long)]
        series: Option<usize>,
    },
    /// Run identity and invariant checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        gmax: usize,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Monte Carlo estimates against exact values.
    Mc {
        #[arg(long = "N")]
        n: usize,
        /// M/N; M must be an integer.
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated: trW, trW2, trWinv, trWinv2, varTrW, varTrWinv.
        #[arg(long, default_value = "trW,trWinv,trWinv2")]
        targets: String,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Monotone,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Dfs,
    Fast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    Wishart,
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CumulantRoute {
    Hurwitz,
    Oracle,
    Both,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => 3,
            Error::InvalidPartition(_)
            | Error::InvalidQuery(_)
            | Error::InvalidPermutation(_)
            | Error::InvalidSetPartition(_)
            | Error::InvalidPath(_)
            | Error::InvalidSampler(_)
            | Error::SizeMismatch { .. }
            | Error::MixedSigns => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// What a command produced: the JSON record or raw text, and whether its
/// checks passed.
struct Outcome {
    body: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.body);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("hwz: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_limits(path: Option<&PathBuf>) -> Result<Limits, Failure> {
    let base = match path {
        None => Limits::default(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", p.display())))?
        }
    };
    Ok(base.with_env_override())
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(k) = jobs {
        if k == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| usage(format!("cannot start {k} workers: {e}")))?;
    }
    Ok(())
}

fn record(command: &str, query: Value, result: Value, limits: &Limits, start: Instant) -> String {
    let out = json!({
        "schema": SCHEMA,
        "command": command,
        "query": query,
        "result": result,
        "provenance": {
            "hwz_core": env!("CARGO_PKG_VERSION"),
            "runtime_ms": start.elapsed().as_millis() as u64,
            "limits": limits,
        },
    });
    serde_json::to_string_pretty(&out).expect("JSON values serialize")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let limits = load_limits(cli.config.as_ref())?;
    let start = Instant::now();
    match cli.command {
        Command::Hurwitz {
            n,
            mu,
            nu,
            genus,
            kind,
            route,
            format,
        } => {
            let mu: IntPartition = mu.parse()?;
            if let Some(n) = n {
                if n != mu.n() {
                    return Err(usage(format!("--n {n} does not match |mu| = {}", mu.n())));
                }
            }
            let nu = nu.map(|s| s.parse::<IntPartition>()).transpose()?;
            let kind = match kind {
                KindArg::Monotone => Kind::Monotone,
                KindArg::Strict => Kind::Strict,
            };
            let route = match route {
                RouteArg::Auto => Route::Auto,
                RouteArg::Dfs => Route::Dfs,
                RouteArg::Fast => Route::Fast,
            };
            let q = HurwitzQuery::new(mu, nu, genus, kind)?;
            let table = hurwitz_table(&q, route, &limits)?;
            let body = match format {
                Format::Csv => hurwitz_csv(&table),
                Format::Json => {
                    let mut result = to_value(&table);
                    result["total"] = Value::String(table.total().to_string());
                    record("hurwitz", to_value(&q), result, &limits, start)
                }
            };
            Ok(Outcome { body, ok: true })
        }
        Command::Cumulant {
            matrix,
            mu,
            c,
            gmax,
            route,
        } => {
            let ensemble = match matrix {
                MatrixArg::Wishart => Ensemble::Wishart,
                MatrixArg::Inverse => Ensemble::Inverse,
            };
            let m = TraceMonomial::new(mu.parse()?, ensemble)?;
            let c_value = if c.trim().eq_ignore_ascii_case("symbolic") {
                None
            } else {
                Some(parse_rat(&c)?)
            };
            let hurwitz = match route {
                CumulantRoute::Oracle => None,
                _ => Some(scaled_cumulant_hurwitz(&m, gmax, &limits)?),
            };
            let oracle = match route {
                CumulantRoute::Hurwitz => None,
                _ => Some(scaled_cumulant_oracle(&m, gmax, &limits)?),
            };
            let mut result = json!({
                "validity": WishartParams::validity_note(&m),
            });
            let mut ok = true;
            if let Some(s) = &hurwitz {
                result["hurwitz"] = series_value(s, c_value.as_ref())?;
            }
            if let Some(s) = &oracle {
                result["oracle"] = series_value(s, c_value.as_ref())?;
            }
            if let (Some(a), Some(b)) = (&hurwitz, &oracle) {
                ok = a.agrees_with(b);
                result["verdict"] = Value::String(if ok { "match" } else { "mismatch" }.into());
            }
            let query = json!({
                "matrix": ensemble,
                "mu": m.powers,
                "c": c_value.map(|v| v.to_string()).unwrap_or_else(|| "symbolic".into()),
                "gmax": gmax,
            });
            Ok(Outcome {
                body: record("cumulant", query, result, &limits, start),
                ok,
            })
        }
        Command::Wg { n, series } => {
            let w = wg(n, &limits)?;
            let mut result = json!({ "wg": to_value(&w), "poles": poles_value(&w) });
            if let Some(order) = series {
                let s: Vec<Value> = wg_series(n, order, &limits)?
                    .into_iter()
                    .map(|(class, s)| {
                        let terms: Vec<Value> = s
                            .terms()
                            .map(|(e, c)| json!({ "power": e, "coeff": c.to_string() }))
                            .collect();
                        json!({ "class": class, "terms": terms, "order": s.order() })
                    })
                    .collect();
                result["series"] = Value::Array(s);
            }
            Ok(Outcome {
                body: record("wg", json!({ "n": n, "series": series }), result, &limits, start),
                ok: true,
            })
        }
        Command::Verify {
            suite,
            nmax,
            gmax,
            dmax,
            jobs,
        } => {
            set_jobs(jobs)?;
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig { nmax, gmax, dmax };
            let reports = run_suite(suite, cfg, &limits);
            let ok = reports.iter().all(IdentityReport::passed);
            for r in &reports {
                eprintln!("{r}");
            }
            let result = json!({
                "passed": ok,
                "reports": to_value(&reports),
            });
            Ok(Outcome {
                body: record("verify", json!({ "suite": suite, "config": cfg }), result, &limits, start),
                ok,
            })
        }
        Command::Mc {
            n,
            c,
            samples,
            seed,
            targets,
            jobs,
        } => {
            set_jobs(jobs)?;
            let c = parse_rat(&c)?;
            let targets = targets
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(str::parse::<Target>)
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = SamplerConfig::from_c(n, &c, samples, seed, targets)?;
            let report = estimate_cumulants(&cfg, &limits)?;
            Ok(Outcome {
                body: record("mc", to_value(&cfg), to_value(&report), &limits, start),
                ok: true,
            })
        }
    }
}

fn series_value(s: &CumulantSeries, c: Option<&BigRat>) -> Result<Value, Failure> {
    let mut v = to_value(s);
    if let Some(c) = c {
        let values: Vec<String> = s.eval(c)?.iter().map(ToString::to_string).collect();
        v["at_c"] = json!(values);
    }
    v["display"] = json!(s.coeffs.iter().map(RatFunc::to_string).collect::<Vec<_>>());
    Ok(v)
}

fn poles_value(w: &CentralElement) -> Value {
    pole_report(w)
        .into_iter()
        .map(|(class, roots, rest)| json!({ "class": class, "integer_poles": roots, "other_factor": rest.display_with('z') }))
        .collect()
}

fn hurwitz_csv(t: &HurwitzTable) -> String {
    let mut out = String::from("mu,nu,genus,kind,r,per_representative,H\n");
    for row in &t.rows {
        out.push_str(&format!(
            "\"{}\",\"{}\",{},{},{},{},{}\n",
            t.mu, row.nu, t.genus, t.kind, row.r, row.per_representative, row.summed
        ));
    }
    out.pop();
    out
}
