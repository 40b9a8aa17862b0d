//! Command-line front end: compute individual symmetric-function objects,
//! run identity verifications and suites, emit text or JSON reports.
//!
//! Exit codes: 0 when everything requested PASSes, 1 when any
//! verification FAILs, 2 on usage errors or ERROR outcomes.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symq_core::hall::HLContext;
use symq_core::identity::{self, Params, Report, Scale, Status};
use symq_core::partition::Partition;
use symq_core::plethysm;
use symq_core::poly::{MPoly, VarTable};
use symq_core::qseries;
use symq_core::symfunc;

#[derive(Parser)]
#[command(name = "symq", version, about = "Exact verification of Hall-Littlewood, Macdonald and Rogers-Szego identities", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Smoke,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// List registered identity ids with their descriptions
    List {
        /// Filter ids with a glob pattern (`*` wildcards)
        #[arg(long, default_value = "")]
        glob: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify one identity
    Verify(VerifyArgs),
    /// Run a preset suite of verifications
    Suite {
        #[arg(long, value_enum, default_value = "smoke")]
        preset: Preset,
        /// Filter ids with a glob pattern
        #[arg(long, default_value = "")]
        glob: String,
        /// Parallel worker count (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
    /// Compute and print a single object
    Compute {
        #[command(subcommand)]
        object: ComputeObject,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id (see `list`)
    #[arg(long)]
    id: String,
    /// Number of variables n
    #[arg(long)]
    vars: Option<usize>,
    /// Truncation cap D on the total x-degree
    #[arg(long)]
    max_deg: Option<u32>,
    /// Bound k for the bounded identities
    #[arg(long)]
    bound: Option<u32>,
    /// q-degree cap for the q-series identities
    #[arg(long)]
    q_cap: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum ComputeObject {
    /// Hall-Littlewood polynomial P_lambda(x1..xn; t), t rendered as s^2
    HlPoly(ComputeArgs),
    /// Hall-Littlewood Q_lambda = b_lambda(t) P_lambda
    HlQ(ComputeArgs),
    /// Schur polynomial s_lambda = P_lambda(x; 0)
    Schur(ComputeArgs),
    /// Monomial symmetric polynomial m_lambda
    Monomial(ComputeArgs),
    /// Rogers-Szego polynomial H_m(z; t)
    RogersSzego {
        #[arg(long)]
        m: u32,
    },
    /// The two-letter sum B_lambda(a, b; t)
    BLambda {
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Args)]
struct ComputeArgs {
    /// Partition, comma-separated parts (`0` for the empty partition)
    #[arg(long)]
    lambda: String,
    /// Number of variables
    #[arg(long, default_value = "3")]
    vars: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::List { glob, format } => {
            let mut cases = identity::registry();
            cases.sort_by(|a, b| a.id.cmp(b.id));
            let filtered: Vec<_> = cases
                .iter()
                .filter(|c| identity::glob_match(&glob, c.id))
                .collect();
            match format {
                Format::Text => {
                    for c in &filtered {
                        println!("{:<22} {}", c.id, c.anchor);
                    }
                }
                Format::Json => {
                    let arr: Vec<serde_json::Value> = filtered
                        .iter()
                        .map(|c| serde_json::json!({"id": c.id, "anchor": c.anchor}))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&arr).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let case = identity::find_case(&args.id).map_err(|e| e.to_string())?;
            let preset = case.full.first().cloned().unwrap_or(Params::new(3, 4));
            let mut params = Params::new(
                args.vars.unwrap_or(3),
                args.max_deg.unwrap_or(4),
            );
            if args.vars.is_none() && args.max_deg.is_none() {
                params.n = preset.n;
                params.d = preset.d;
            }
            params.k = args.bound.or(preset.k);
            params.q_cap = args.q_cap.or(preset.q_cap);
            params.subs = preset.subs.clone();
            let report = identity::verify(&args.id, &params).map_err(|e| e.to_string())?;
            emit(&[report.clone()], args.format, args.out.as_deref())?;
            Ok(exit_for(&[report]))
        }
        Command::Suite {
            preset,
            glob,
            jobs,
            format,
            out,
        } => {
            let scale = match preset {
                Preset::Smoke => Scale::Smoke,
                Preset::Full => Scale::Full,
            };
            let work = identity::expand_suite(&glob, scale);
            let jobs = jobs
                .or_else(|| std::thread::available_parallelism().ok().map(|p| p.get()))
                .unwrap_or(1)
                .max(1);
            let mut reports: Vec<(usize, Report)> = if jobs <= 1 {
                work.iter()
                    .enumerate()
                    .map(|(i, (case, params))| {
                        (i, identity::verify(case.id, params).expect("registered id"))
                    })
                    .collect()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| e.to_string())?;
                pool.install(|| {
                    use rayon::prelude::*;
                    work.par_iter()
                        .enumerate()
                        .map(|(i, (case, params))| {
                            (i, identity::verify(case.id, params).expect("registered id"))
                        })
                        .collect()
                })
            };
            // deterministic output order regardless of scheduling
            reports.sort_by_key(|(i, _)| *i);
            let reports: Vec<Report> = reports.into_iter().map(|(_, r)| r).collect();
            emit(&reports, format, out.as_deref())?;
            Ok(exit_for(&reports))
        }
        Command::Compute { object } => {
            let text = compute(object)?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    Partition::from_str(s).map_err(|e| e.to_string())
}

fn hl_ctx(n: usize) -> (Arc<VarTable>, HLContext) {
    let table = VarTable::with_x(n, &["s"]);
    let s = MPoly::named(&table, "s");
    let ctx = HLContext::new(&table, "x", s.pow(2), None);
    (table, ctx)
}

fn compute(object: ComputeObject) -> Result<String, String> {
    match object {
        ComputeObject::HlPoly(args) => {
            let lam = parse_partition(&args.lambda)?;
            let (_t, ctx) = hl_ctx(args.vars);
            Ok(ctx.hl_p(&lam).render())
        }
        ComputeObject::HlQ(args) => {
            let lam = parse_partition(&args.lambda)?;
            let (_t, ctx) = hl_ctx(args.vars);
            Ok(ctx.hl_q(&lam).render())
        }
        ComputeObject::Schur(args) => {
            let lam = parse_partition(&args.lambda)?;
            let (_t, ctx) = hl_ctx(args.vars);
            Ok(ctx.schur(&lam).render())
        }
        ComputeObject::Monomial(args) => {
            let lam = parse_partition(&args.lambda)?;
            let table = VarTable::with_x(args.vars, &[]);
            let xs = table.block_vars("x");
            Ok(symfunc::monomial_sym(&lam, &table, &xs).render())
        }
        ComputeObject::RogersSzego { m } => {
            let table = VarTable::builder().param("s").param("z").build();
            let s = MPoly::named(&table, "s");
            let z = MPoly::named(&table, "z");
            Ok(qseries::rogers_szego(m, &z, &s.pow(2)).render())
        }
        ComputeObject::BLambda { lambda } => {
            let lam = parse_partition(&lambda)?;
            let table = VarTable::builder().param("s").param("a").param("b").build();
            let s = MPoly::named(&table, "s");
            let a = MPoly::named(&table, "a");
            let b = MPoly::named(&table, "b");
            plethysm::b_lambda_sum(&lam, &a, &b, &s.pow(2))
                .map(|p| p.render())
                .map_err(|e| e.to_string())
        }
    }
}

fn emit(reports: &[Report], format: Format, out: Option<&str>) -> Result<(), String> {
    let rendered = match format {
        Format::Json => {
            if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0]).unwrap()
            } else {
                serde_json::to_string_pretty(reports).unwrap()
            }
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Error => "ERROR",
                };
                s.push_str(&format!(
                    "[{tag}] {} (n={} D={}{}{}) {} ms\n",
                    r.id,
                    r.params.n,
                    r.params.d,
                    r.params.k.map(|k| format!(" k={k}")).unwrap_or_default(),
                    r.params
                        .q_cap
                        .map(|q| format!(" q_cap={q}"))
                        .unwrap_or_default(),
                    r.elapsed_ms
                ));
                if let Some(e) = &r.error {
                    s.push_str(&format!("    error: {e}\n"));
                }
                for m in &r.mismatches {
                    s.push_str(&format!("    {} : {} != {}\n", m.monomial, m.lhs, m.rhs));
                }
            }
            s.trim_end().to_string()
        }
    };
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
            writeln!(f, "{rendered}").map_err(|e| e.to_string())?;
        }
        None => println!("{rendered}"),
    }
    Ok(())
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().any(|r| r.status == Status::Error) {
        ExitCode::from(2)
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
