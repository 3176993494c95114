//! `bunred`: command-line front end for the reduction certificates.

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bunred_core::diophantine::{reduction_measure, solve_lemma};
use bunred_core::euler::{bun_stack_dim, euler_form, ext_relative_dim, ext_stack_dim};
use bunred_core::hirschowitz::{generic_hom, generic_morphism_kind, no_bad_splitting_scan};
use bunred_core::report::render_text;
use bunred_core::sweep::{render_table, run_sweep, SweepSpec};
use bunred_core::trace_io::{from_json, to_json};
use bunred_core::{audit_trace, reduce, Error, GenusContext, SheafType, VerificationReport};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bunred", version, about = "Certified numerical reduction Bun(r,d) ⇢ Bun(h,0)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(clap::Args)]
struct TypeArgs {
    #[arg(short, long)]
    genus: i64,
    #[arg(short, long)]
    rank: i64,
    #[arg(short, long, allow_hyphen_values = true)]
    degree: i64,
}

#[derive(clap::Args)]
struct PairArgs {
    #[arg(short, long)]
    genus: i64,
    /// First type as `rank,degree`.
    #[arg(long, value_parser = parse_type, allow_hyphen_values = true)]
    t1: SheafType,
    /// Second type as `rank,degree`.
    #[arg(long, value_parser = parse_type, allow_hyphen_values = true)]
    t2: SheafType,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the reduction trace of Bun(r,d).
    Reduce {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the JSON trace to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce and verify every (g, r, d) in a grid.
    Sweep {
        /// A single genus or an inclusive range `a..b`.
        #[arg(short, long, default_value = "2", allow_hyphen_values = true)]
        genus: String,
        #[arg(long, default_value_t = 1)]
        min_rank: i64,
        #[arg(long)]
        max_rank: i64,
        /// Inclusive degree range `a..b` (default `-max_rank..max_rank`).
        #[arg(long, allow_hyphen_values = true)]
        degree_range: Option<String>,
        #[arg(long)]
        no_verify: bool,
        /// Include full traces in JSON output.
        #[arg(long)]
        emit_traces: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a JSON trace document.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Euler form χ(t1, t2) and the stack dimensions derived from it.
    Chi {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Solve the rank-lowering Diophantine step for (r, d).
    SolveLemma {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Predicted Hom/Ext dimensions between general bundles of types t1, t2.
    GenericHom {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Exhaustively check splittings t1 = tK + t, t2 = t + tQ against the slope chain.
    ScanSplittings {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 20)]
        bound: i64,
    },
}

fn parse_type(s: &str) -> Result<SheafType, String> {
    let (r, d) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `rank,degree`, got `{s}`"))?;
    let r = r.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let d = d.trim().parse::<i64>().map_err(|e| e.to_string())?;
    SheafType::new(r, d).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<i64>> {
    // `a..b` with either bound possibly negative, or a single integer.
    match s.rsplit_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
            let b = b.trim().parse().with_context(|| format!("bad range end in `{s}`"))?;
            Ok(a..=b)
        }
        None => {
            let v = s.trim().parse().with_context(|| format!("bad integer `{s}`"))?;
            Ok(v..=v)
        }
    }
}

fn input(ty: &TypeArgs) -> anyhow::Result<(GenusContext, SheafType)> {
    let ctx = GenusContext::new(ty.genus)?;
    ctx.require_reduction_range()?;
    Ok((ctx, SheafType::new(ty.rank, ty.degree)?))
}

fn print_report_summary(report: &VerificationReport) {
    let failures: Vec<_> = report.failures().collect();
    println!("{} checks, {} failed", report.checks.len(), failures.len());
    for f in &failures {
        println!("  FAIL {} :: {} ({})", f.path, f.name, f.detail);
    }
    if failures.is_empty() {
        println!("certificate VALID");
    } else {
        println!("certificate INVALID");
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Reduce { ty, format, out } => {
            let (ctx, t) = input(&ty)?;
            let trace = reduce(ctx, t)?;
            let report = audit_trace(&trace);
            let json = to_json(&trace);
            if let Some(path) = out {
                fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Json => {
                    println!("{json}");
                    eprintln!(
                        "certificate {}",
                        if report.is_valid() { "VALID" } else { "INVALID" }
                    );
                }
                Format::Text => {
                    print!("{}", render_text(&trace));
                    print_report_summary(&report);
                }
            }
            Ok(report.is_valid())
        }
        Command::Sweep {
            genus,
            min_rank,
            max_rank,
            degree_range,
            no_verify,
            emit_traces,
            format,
            out,
        } => {
            let degrees = match degree_range {
                Some(s) => parse_range(&s)?,
                None => -max_rank..=max_rank,
            };
            let mut spec = SweepSpec::new(parse_range(&genus)?, min_rank..=max_rank, degrees);
            spec.verify = !no_verify;
            spec.emit_traces = emit_traces;
            let rows = run_sweep(&spec)?;
            let ok = rows.iter().all(|r| r.is_ok());
            let rendered = match format {
                Format::Text => render_table(&rows),
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            match out {
                Some(path) => fs::write(&path, &rendered)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{rendered}"),
            }
            let failed = rows.iter().filter(|r| !r.is_ok()).count();
            eprintln!("{} rows, {failed} invalid", rows.len());
            Ok(ok)
        }
        Command::Verify { file, format } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let trace = from_json(&text)?;
            let report = audit_trace(&trace);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => print_report_summary(&report),
            }
            Ok(report.is_valid())
        }
        Command::Chi { pair } => {
            let ctx = GenusContext::new(pair.genus)?;
            let (t1, t2) = (pair.t1, pair.t2);
            println!("chi({t1}, {t2}) = {}", euler_form(ctx, t1, t2));
            println!("dim Bun{t1} = {}", bun_stack_dim(ctx, t1));
            println!("dim Bun{t2} = {}", bun_stack_dim(ctx, t2));
            println!("ext relative dim = {}", ext_relative_dim(ctx, t1, t2));
            println!("ext stack dim = {}", ext_stack_dim(ctx, t1, t2));
            Ok(true)
        }
        Command::SolveLemma { ty, format } => {
            let (ctx, t) = input(&ty)?;
            t.check_input_bounds()?;
            match solve_lemma(ctx, t) {
                Ok(sol) => {
                    let (before, after) = reduction_measure(&sol, t)?;
                    match format {
                        Format::Json => println!("{}", serde_json::to_string_pretty(&sol)?),
                        Format::Text => {
                            println!(
                                "rF={} dF={} r1={} d1={} h={} h1={}",
                                sol.r_f, sol.d_f, sol.r1, sol.d1, sol.h, sol.h1
                            );
                            println!(
                                "measure r/h: {}/{} -> {}/{}",
                                before.num, before.den, after.num, after.den
                            );
                        }
                    }
                    Ok(true)
                }
                Err(Error::BaseCaseReached { rank }) => {
                    println!("base case: rank {rank} equals hcf; twist to degree 0");
                    Ok(true)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::GenericHom { pair } => {
            let ctx = GenusContext::new(pair.genus)?;
            let (t1, t2) = (pair.t1, pair.t2);
            let report = generic_hom(ctx, t1, t2)?;
            println!("chi({t1}, {t2}) = {}", report.chi);
            match (report.hom_dim, report.ext_dim) {
                (Some(hom), Some(ext)) => println!("dim Hom = {hom}, dim Ext1 = {ext}"),
                _ => println!("not covered: chi < 0"),
            }
            if report.chi >= 1 {
                println!("general morphism: {:?}", generic_morphism_kind(ctx, t1, t2)?);
            }
            Ok(true)
        }
        Command::ScanSplittings { pair, bound } => {
            let ctx = GenusContext::new(pair.genus)?;
            match no_bad_splitting_scan(ctx, pair.t1, pair.t2, bound) {
                Ok(r) => {
                    println!(
                        "candidates={} chain={} torsion_cokernel={} violations={}",
                        r.candidates, r.chain_splittings, r.torsion_cokernel, r.violations
                    );
                    Ok(true)
                }
                Err(e @ Error::TheoremContradicted(_)) => {
                    println!("VIOLATION: {e}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-6..6").unwrap(), -6..=6);
        assert_eq!(parse_range("-12..-3").unwrap(), -12..=-3);
        assert_eq!(parse_range("2").unwrap(), 2..=2);
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn types() {
        assert_eq!(parse_type("3,-2").unwrap(), SheafType { rank: 3, degree: -2 });
        assert!(parse_type("3").is_err());
        assert!(parse_type("-1,2").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
