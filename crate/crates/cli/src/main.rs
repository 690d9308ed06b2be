use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fairshare_core::allocator::{feasibility_report, SearchOutcome, DEFAULT_NODE_BUDGET};
use fairshare_core::dist::exact_distribution;
use fairshare_core::error::{Error, Result};
use fairshare_core::extremal::{emc_bound, is_cross_dependent, max_min_cross_dependent, shadow};
use fairshare_core::instance::{parse_instance, Instance};
use fairshare_core::shares::{mc_quantile_bracket, mms, rmms, share_of, ShareSpec};

use fairshare_cli::family::{
    format_family_literal, format_members, format_set_token, parse_family_literal, FamilyLiteral,
};
use fairshare_cli::repro::run_repro;
use fairshare_cli::suites::run_suite;

#[derive(Parser)]
#[command(name = "fairshare", version, about = "Quantile shares, fair allocation, and extremal set-family tools")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for Monte Carlo sampling; falls back to FAIRSHARE_THREADS, then 1.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for allocation search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute every agent's share under the instance's share spec.
    Share {
        instance: PathBuf,
        /// Exact computation (the default).
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Monte Carlo bracket instead of the exact value.
        #[arg(long)]
        mc: bool,
        /// Half-width of the quantile-level band.
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Failure probability of the bracket.
        #[arg(long, default_value_t = 0.001)]
        delta: f64,
    },
    /// Search for an allocation giving every agent at least their share.
    Allocate { instance: PathBuf },
    /// Dump one agent's exact bundle-value distribution as CSV.
    Dist {
        instance: PathBuf,
        /// 1-indexed agent.
        #[arg(long, default_value_t = 1)]
        agent: usize,
        /// Inclusion probability; defaults to the instance's thinning.
        #[arg(long)]
        p: Option<f64>,
    },
    /// Monte Carlo share brackets for every agent.
    Mc {
        instance: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.001)]
        delta: f64,
    },
    /// Maximin share of every agent.
    Mms { instance: PathBuf },
    /// Residual maximin share of every agent.
    Rmms { instance: PathBuf },
    /// Extremal set-family toolkit.
    Extremal {
        #[command(subcommand)]
        cmd: ExtremalCmd,
    },
    /// Run a named reproduction case.
    Repro { id: String },
    /// Run a named property suite.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum ExtremalCmd {
    /// t-shadow of a single family literal.
    Shadow {
        literal: String,
        #[arg(long)]
        t: u32,
    },
    /// Conjectured extremal size bound for cross-dependent families.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// Decide cross-dependence of the families in a literal.
    Cross { literal: String },
    /// Exact max-min family size over cross-dependent tuples.
    Maxmin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let threads = resolve_threads(cli.threads)?;
    match cli.cmd {
        Cmd::Share { instance, mc, epsilon, delta, .. } => {
            let inst = load_instance(&instance)?;
            if mc {
                print_mc_brackets(&inst, epsilon, delta, cli.seed, threads)?;
            } else {
                let shares = exact_shares(&inst)?;
                print_share_table(&shares);
            }
            Ok(0)
        }
        Cmd::Allocate { instance } => {
            let inst = load_instance(&instance)?;
            let report = feasibility_report(&inst, cli.budget)?;
            eprintln!(
                "search explored {} nodes in {:.3}s",
                report.nodes_explored,
                report.elapsed.as_secs_f64()
            );
            let shares: Vec<f64> = report.shares.iter().map(|s| s.value).collect();
            print_share_table(&shares);
            match report.outcome {
                SearchOutcome::Feasible(alloc) => {
                    println!("FEASIBLE");
                    for (i, b) in alloc.bundles().iter().enumerate() {
                        println!("agent {}: {}", i + 1, b);
                    }
                    for (i, b) in alloc.bundles().iter().enumerate() {
                        println!("bundle,{},goods,{}", i + 1, format_set_token(*b));
                    }
                    Ok(0)
                }
                SearchOutcome::Infeasible => {
                    println!("INFEASIBLE");
                    Ok(1)
                }
            }
        }
        Cmd::Dist { instance, agent, p } => {
            let inst = load_instance(&instance)?;
            if agent == 0 || agent > inst.agents {
                return Err(Error::domain(format!(
                    "agent {agent} out of range 1..={}",
                    inst.agents
                )));
            }
            let prob = p.unwrap_or_else(|| default_inclusion(&inst));
            let d = exact_distribution(&inst.valuations[agent - 1], prob)?;
            print!("{}", d.to_csv());
            Ok(0)
        }
        Cmd::Mc { instance, epsilon, delta } => {
            let inst = load_instance(&instance)?;
            print_mc_brackets(&inst, epsilon, delta, cli.seed, threads)?;
            Ok(0)
        }
        Cmd::Mms { instance } => {
            let inst = load_instance(&instance)?;
            let shares = inst
                .valuations
                .iter()
                .map(|v| mms(v, inst.agents).map(|s| s.value))
                .collect::<Result<Vec<_>>>()?;
            print_share_table(&shares);
            Ok(0)
        }
        Cmd::Rmms { instance } => {
            let inst = load_instance(&instance)?;
            let shares = inst
                .valuations
                .iter()
                .map(|v| rmms(v, inst.agents).map(|s| s.value))
                .collect::<Result<Vec<_>>>()?;
            print_share_table(&shares);
            Ok(0)
        }
        Cmd::Extremal { cmd } => run_extremal(cmd),
        Cmd::Repro { id } => {
            let report = run_repro(&id, cli.seed)?;
            eprintln!("case {} finished in {:.3}s", report.id, report.elapsed.as_secs_f64());
            println!("case {}", report.id);
            for c in &report.checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                println!("[{mark}] {}: expected {}, actual {}", c.label, c.expected, c.actual);
            }
            for (i, c) in report.checks.iter().enumerate() {
                println!("check,{},status,{}", i + 1, if c.pass { "pass" } else { "fail" });
            }
            let failures = report.checks.iter().filter(|c| !c.pass).count();
            println!("repro,0,checks,{}", report.checks.len());
            println!("repro,0,failures,{failures}");
            Ok(if report.passed() { 0 } else { 1 })
        }
        Cmd::Verify { suite } => {
            let report = run_suite(&suite, cli.seed, cli.budget, threads)?;
            eprintln!("suite {} finished in {:.3}s", report.suite, report.elapsed.as_secs_f64());
            println!(
                "suite {}: {} cases, {} failures (seed {})",
                report.suite, report.cases, report.failures, report.seed
            );
            for note in &report.notes {
                println!("  failure: {note}");
            }
            println!("suite,0,cases,{}", report.cases);
            println!("suite,0,failures,{}", report.failures);
            println!("suite,0,seed,{}", report.seed);
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn run_extremal(cmd: ExtremalCmd) -> Result<u8> {
    match cmd {
        ExtremalCmd::Shadow { literal, t } => {
            let lit = parse_family_literal(&literal)?;
            if lit.families.len() != 1 {
                return Err(Error::domain(format!(
                    "shadow expects exactly one family, got {}",
                    lit.families.len()
                )));
            }
            let sh = shadow(&lit.families[0], t)?;
            println!("{}", format_members(&sh));
            Ok(0)
        }
        ExtremalCmd::Bound { n, k, m } => {
            println!("{}", emc_bound(n, k, m)?);
            Ok(0)
        }
        ExtremalCmd::Cross { literal } => {
            let lit = parse_family_literal(&literal)?;
            if is_cross_dependent(&lit.families)? {
                println!("CROSS-DEPENDENT");
            } else {
                println!("NOT-CROSS-DEPENDENT");
            }
            Ok(0)
        }
        ExtremalCmd::Maxmin { n, k, m } => {
            let w = max_min_cross_dependent(n, k, m)?;
            println!("{}", w.value);
            let lit = FamilyLiteral { ground: m, k, families: w.families };
            println!("{}", format_family_literal(&lit));
            Ok(0)
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    let threads = match flag {
        Some(t) => t,
        None => match std::env::var("FAIRSHARE_THREADS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("FAIRSHARE_THREADS is not a thread count: {s:?}")))?,
            Err(_) => 1,
        },
    };
    if threads == 0 {
        return Err(Error::domain("thread count must be at least 1"));
    }
    Ok(threads)
}

fn default_inclusion(inst: &Instance) -> f64 {
    let n = inst.agents as f64;
    match inst.share {
        ShareSpec::ThinnedQuantile { c, .. } => c / n,
        _ => 1.0 / n,
    }
}

fn exact_shares(inst: &Instance) -> Result<Vec<f64>> {
    inst.valuations
        .iter()
        .map(|v| share_of(&inst.share, v, inst.agents).map(|s| s.value))
        .collect()
}

fn print_share_table(shares: &[f64]) {
    println!("agent share");
    for (i, s) in shares.iter().enumerate() {
        println!("{} {}", i + 1, s);
    }
    for (i, s) in shares.iter().enumerate() {
        println!("agent,{},share,{}", i + 1, s);
    }
}

fn print_mc_brackets(
    inst: &Instance,
    epsilon: f64,
    delta: f64,
    seed: u64,
    threads: usize,
) -> Result<()> {
    let (c, q) = match inst.share {
        ShareSpec::ThinnedQuantile { c, q } => (c, q),
        ShareSpec::Quantile { q } => (1.0, q),
        _ => {
            return Err(Error::domain(
                "Monte Carlo estimation needs a quantile share spec",
            ))
        }
    };
    let brackets = inst
        .valuations
        .iter()
        .map(|v| mc_quantile_bracket(v, inst.agents, c, q, epsilon, delta, seed, threads))
        .collect::<Result<Vec<_>>>()?;
    println!("agent lo hi samples");
    for (i, b) in brackets.iter().enumerate() {
        println!("{} {} {} {}", i + 1, b.lo, b.hi, b.samples);
    }
    for (i, b) in brackets.iter().enumerate() {
        println!("agent,{},lo,{}", i + 1, b.lo);
        println!("agent,{},hi,{}", i + 1, b.hi);
        println!("agent,{},samples,{}", i + 1, b.samples);
    }
    Ok(())
}
