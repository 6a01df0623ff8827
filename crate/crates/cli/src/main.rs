//! `nilprob`: exact nilpotency probabilities from the command line.
//!
//! Exit codes: 0 success, 1 mismatch or inconsistency, 2 usage error,
//! 3 computation refused by a budget.

mod report;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use nilprob::nu::{
    self, alt_bound, monte_carlo_nu, nu_coset, nu_exact, nu_tilde, nu_tilde_monte_carlo, pi_coset,
    solvability_threshold_check, Budget, CosetContext, McTarget, Method,
};
use nilprob::tables::{verify_table, Computed, TableId, VerifyOptions};
use nilprob::{build, build_aut_pair, Error, ExactFraction, FiniteGroup, GroupSpec, Permutation};
use report::{fraction_json, render, Format, Record};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "nilprob", version, about = "Nilpotency probabilities of finite permutation groups")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Omit timings so identical commands give identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Upper bound on exact pair evaluations.
    #[arg(long, default_value_t = nu::DEFAULT_PAIR_BUDGET, global = true)]
    max_pairs: u64,
    /// Time limit in seconds for exact computations (per row for verify-tables).
    #[arg(long, global = true)]
    budget: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ν(G): probability that two random elements generate a nilpotent subgroup.
    Nu {
        group: GroupSpec,
        #[arg(long, default_value = "classes")]
        method: Method,
        #[command(flatten)]
        mc: McArgs,
    },
    /// ν_{g1,g2}(G,N) over the cosets N·g1, N·g2.
    NuCoset {
        #[command(flatten)]
        ctx: CosetArgs,
        #[arg(long, default_value = "classes")]
        method: Method,
        #[command(flatten)]
        mc: McArgs,
    },
    /// ν̃(S): the maximum of τ over automorphism cosets of a simple group.
    NuTilde {
        socle: GroupSpec,
        #[arg(long, default_value = "classes")]
        method: Method,
        #[command(flatten)]
        mc: McArgs,
    },
    /// τ(T,S) for T = ⟨S, g1, g2⟩ inside the automorphism group of S.
    Tau {
        socle: GroupSpec,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Probability that ⟨n1·g1, n2·g2⟩ contains N, for n1, n2 in N.
    Pi {
        #[command(flatten)]
        ctx: CosetArgs,
    },
    /// Monte Carlo estimate of ν(G), or of ν_{g1,g2}(G,N) when --g1/--g2 are given.
    Mc {
        group: GroupSpec,
        #[arg(long)]
        normal: Option<GroupSpec>,
        #[arg(long, requires = "g2")]
        g1: Option<String>,
        #[arg(long, requires = "g1")]
        g2: Option<String>,
        #[command(flatten)]
        mc: McArgs,
    },
    /// 1 − π_n − π_{n−1}/n, the upper bound on ν̃(Alt(n)) for n ≥ 10.
    AltBound {
        #[arg(long)]
        pi_n: ExactFraction,
        #[arg(long = "pi-n-1")]
        pi_n_minus_1: ExactFraction,
        #[arg(long)]
        n: u64,
    },
    /// Recompute a table of published values and compare.
    VerifyTables {
        /// 1, 2 or alt.
        #[arg(long)]
        table: TableId,
        /// Only the rows with these labels.
        #[arg(long)]
        only: Vec<String>,
        /// Monte Carlo samples for rows over budget; 0 disables the fallback.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that ν(G) > 1/12 implies G solvable.
    SolvableCheck {
        #[arg(required = true)]
        groups: Vec<GroupSpec>,
    },
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
}

/// A group with a normal subgroup and two coset representatives. Without
/// `--normal` the group must be simple, and the context is its automorphism
/// group over it.
#[derive(Args, Debug)]
struct CosetArgs {
    group: GroupSpec,
    #[arg(long)]
    normal: Option<GroupSpec>,
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
}

/// Failures with their exit code.
enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::CapExceeded { .. } => Failure::Budget(e.to_string()),
            Error::TauNotConstant(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    records: Vec<Record>,
    notes: Vec<String>,
    table: bool,
    mismatch: bool,
}

impl Output {
    fn one(record: Record) -> Self {
        Self {
            records: vec![record],
            notes: Vec::new(),
            table: false,
            mismatch: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", render(&out.records, &out.notes, out.table, cli.format, cli.deterministic));
            ExitCode::from(out.mismatch as u8)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

impl Cli {
    fn exact_budget(&self) -> Result<Budget, Failure> {
        let budget = Budget {
            max_pairs: self.max_pairs,
            deadline: None,
        };
        Ok(match self.budget {
            Some(s) => budget.with_time_limit(seconds(s)?),
            None => budget,
        })
    }
}

fn seconds(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|_| Failure::Usage(format!("invalid budget {s}")))
}

fn check_mc(mc: &McArgs) -> Result<(), Failure> {
    if mc.samples < 100 {
        return Err(Failure::Usage(format!("--samples {} is below the minimum of 100", mc.samples)));
    }
    if !(mc.confidence > 0.0 && mc.confidence < 1.0) {
        return Err(Failure::Usage(format!("--confidence {} is not in (0, 1)", mc.confidence)));
    }
    Ok(())
}

fn perm(s: &str, degree: usize) -> Result<Permutation, Failure> {
    Permutation::parse(s, Some(degree)).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

fn coset_context(args: &CosetArgs) -> Result<(CosetContext, String), Failure> {
    let (ambient, normal, label) = match &args.normal {
        Some(n) => {
            let label = format!("{n} in {}", args.group);
            (Arc::new(build(&args.group)?), Arc::new(build(n)?), label)
        }
        None => {
            let pair = build_aut_pair(&args.group)?;
            let label = format!("{} in its automorphism group", pair.label);
            (pair.ambient, pair.socle, label)
        }
    };
    let degree = ambient.degree();
    let (g1, g2) = (perm(&args.g1, degree)?, perm(&args.g2, degree)?);
    let label = format!("{label}, cosets of {g1} and {g2}");
    Ok((CosetContext::new(ambient, normal, g1, g2)?, label))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Nu { group, method, mc } => {
            let g = build(group)?;
            let report = match method {
                Method::MonteCarlo => {
                    check_mc(mc)?;
                    monte_carlo_nu(McTarget::Group(&g), mc.samples, mc.seed, mc.confidence)?
                }
                m => nu_exact(&g, *m, &cli.exact_budget()?)?,
            };
            let mut r = Record::from_nu(&report);
            r.group = group.to_string();
            Ok(Output::one(r))
        }
        Command::NuCoset { ctx, method, mc } => {
            let (ctx, label) = coset_context(ctx)?;
            let report = match method {
                Method::MonteCarlo => {
                    check_mc(mc)?;
                    monte_carlo_nu(McTarget::Coset(&ctx), mc.samples, mc.seed, mc.confidence)?
                }
                m => nu_coset(&ctx, *m, &cli.exact_budget()?)?,
            };
            let mut r = Record::from_nu(&report);
            r.group = label;
            Ok(Output::one(r))
        }
        Command::Mc {
            group,
            normal,
            g1,
            g2,
            mc,
        } => {
            check_mc(mc)?;
            let report = match (g1, g2) {
                (Some(g1), Some(g2)) => {
                    let args = CosetArgs {
                        group: group.clone(),
                        normal: normal.clone(),
                        g1: g1.clone(),
                        g2: g2.clone(),
                    };
                    let (ctx, label) = coset_context(&args)?;
                    let mut r = monte_carlo_nu(McTarget::Coset(&ctx), mc.samples, mc.seed, mc.confidence)?;
                    r.group = label;
                    r
                }
                _ => {
                    if normal.is_some() {
                        return Err(Failure::Usage("--normal needs --g1 and --g2".into()));
                    }
                    let mut r = monte_carlo_nu(McTarget::Group(&build(group)?), mc.samples, mc.seed, mc.confidence)?;
                    r.group = group.to_string();
                    r
                }
            };
            Ok(Output::one(Record::from_nu(&report)))
        }
        Command::NuTilde { socle, method, mc } => {
            let pair = build_aut_pair(socle)?;
            let order = pair.socle.order()?;
            let mut record = match method {
                Method::MonteCarlo => {
                    check_mc(mc)?;
                    let start = std::time::Instant::now();
                    let (estimate, witness) = nu_tilde_monte_carlo(&pair, mc.samples, mc.seed, mc.confidence)?;
                    let hits = (estimate.point * estimate.samples as f64).round() as u64;
                    let mut r = Record::new(&pair.label, Method::MonteCarlo.to_string(), ExactFraction::ratio(hits, estimate.samples));
                    r.estimate = Some(estimate);
                    r.status = "estimate".into();
                    r.witness = Some(witness);
                    r.elapsed = Some(start.elapsed());
                    r
                }
                _ => {
                    let report = nu_tilde(&pair, &cli.exact_budget()?)?;
                    let contexts: Vec<serde_json::Value> = report
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "subgroup": e.describe(),
                                "class_size": e.class_size,
                                "tau": fraction_json(&e.report.value),
                            })
                        })
                        .collect();
                    let mut r = Record::new(&pair.label, Method::ExactClasses.to_string(), report.value.clone());
                    r.witness = Some(report.witness.describe());
                    r.elapsed = Some(report.elapsed);
                    r.with("contexts", json!(contexts))
                        .with("skipped_non_nilpotent", json!(report.skipped_non_nilpotent))
                }
            };
            record.order = Some(order);
            Ok(Output::one(record))
        }
        Command::Tau { socle, g1, g2 } => {
            let pair = build_aut_pair(socle)?;
            let degree = pair.ambient.degree();
            let (g1, g2) = (perm(g1, degree)?, perm(g2, degree)?);
            let mut gens = pair.socle.generators().to_vec();
            gens.extend([g1.clone(), g2.clone()]);
            let t = FiniteGroup::new(degree, gens)?;
            let start = std::time::Instant::now();
            let report = nu::tau(&pair, &t, &cli.exact_budget()?)?;
            let pairs: Vec<String> = report.lifted_pairs.iter().map(|(a, b)| format!("{a}, {b}")).collect();
            let mut r = Record::new(
                format!("{} in <{}, {g1}, {g2}>", pair.label, pair.label),
                Method::ExactClasses.to_string(),
                report.value.clone(),
            );
            r.order = Some(pair.socle.order()?);
            r.elapsed = Some(start.elapsed());
            Ok(Output::one(
                r.with("quotient_order", json!(report.quotient_order))
                    .with("generating_pairs", json!(report.generating_pair_count))
                    .with("evaluated_pairs", json!(pairs)),
            ))
        }
        Command::Pi { ctx } => {
            let (ctx, label) = coset_context(ctx)?;
            let start = std::time::Instant::now();
            let value = pi_coset(&ctx, &cli.exact_budget()?)?;
            let mut r = Record::new(label, "exact-classes", value);
            r.order = Some(ctx.normal.order()?);
            r.elapsed = Some(start.elapsed());
            Ok(Output::one(r))
        }
        Command::AltBound { pi_n, pi_n_minus_1, n } => {
            let value = alt_bound(pi_n, pi_n_minus_1, *n)?;
            Ok(Output::one(Record::new(format!("Alt({n})"), "alt-bound", value)))
        }
        Command::VerifyTables {
            table,
            only,
            samples,
            seed,
        } => {
            if *samples != 0 && *samples < 100 {
                return Err(Failure::Usage(format!("--samples {samples} is below the minimum of 100")));
            }
            let opts = VerifyOptions {
                row_budget: seconds(cli.budget.unwrap_or(60.0))?,
                max_pairs: cli.max_pairs,
                fallback_samples: *samples,
                seed: *seed,
                only: (!only.is_empty()).then(|| only.clone()),
                ..VerifyOptions::default()
            };
            let verdict = verify_table(*table, &opts)?;
            let records = verdict
                .rows
                .iter()
                .map(|row| {
                    let (method, value, estimate) = match &row.computed {
                        Computed::Exact(v) => ("exact-classes", Some(v.clone()), None),
                        Computed::Estimated(e) => {
                            let hits = (e.point * e.samples as f64).round() as u64;
                            ("monte-carlo", Some(ExactFraction::ratio(hits, e.samples)), Some(e.clone()))
                        }
                        Computed::Unavailable => ("none", None, None),
                    };
                    let mut r = Record {
                        group: row.label.clone(),
                        order: None,
                        method: method.into(),
                        value,
                        estimate,
                        elapsed: Some(row.elapsed),
                        witness: row.witness.clone(),
                        status: row.status.to_string(),
                        extra: Vec::new(),
                    }
                    .with("expected", fraction_json(&row.expected))
                    .with("location", json!(row.location));
                    if let Some(note) = &row.note {
                        r = r.with("note", json!(note));
                    }
                    r
                })
                .collect();
            Ok(Output {
                records,
                notes: verdict.notes.clone(),
                table: true,
                mismatch: verdict.has_mismatch(),
            })
        }
        Command::SolvableCheck { groups } => {
            let built = groups.iter().map(build).collect::<Result<Vec<_>, _>>()?;
            let budget = cli.exact_budget()?;
            let mut records = Vec::new();
            let mut mismatch = false;
            for (spec, g) in groups.iter().zip(&built) {
                let v = solvability_threshold_check(g, &budget)?;
                mismatch |= !v.consistent;
                let mut r = Record::new(spec.to_string(), "exact-classes", v.nu);
                r.order = Some(g.order()?);
                r.status = if v.consistent { "consistent" } else { "inconsistent" }.into();
                records.push(
                    r.with("exceeds_1_12", json!(v.exceeds_threshold))
                        .with("solvable", json!(v.solvable))
                        .with("nilpotent", json!(v.nilpotent)),
                );
            }
            Ok(Output {
                records,
                notes: Vec::new(),
                table: groups.len() > 1,
                mismatch,
            })
        }
    }
}
