//! `cosetcheck` — exact verification of coset properties in alternating
//! groups: cycle-type censuses over centralizer cosets, odd-order-element
//! scans, and Sylow-subgroup coset checks.
//!
//! Exit codes: 0 = claim verified / report consistent, 1 = violation found
//! (for `conj14-scan --degree 8` this is the expected outcome), 2 = usage
//! or configuration error, 3 = inconclusive (budget exhausted).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cosetcheck_core::census::{coset_census_exhaustive, coset_census_sampled};
use cosetcheck_core::centralizer::{
    build_x, build_y, definitional_centralizer, enumerate_centralizer, Ambient, CentralizerDesc,
    DEFAULT_ENUM_BUDGET,
};
use cosetcheck_core::conjectures::{
    check_a_fixing_products, conj13_check_with_budget, conj14_scan, verify_all_even_coset,
    Conj13Group, Conj13Mode, Status, TheoremMode, PER_COSET_SAMPLE_CAP,
};
use cosetcheck_core::report::{CensusReport, SylowScanReport, TauReport, VerdictReport};
use cosetcheck_core::sylow::{
    build_sylow, coset_order_report, exhaustive_scan, tau_breaking_order_p, tau_breaking_p_cycle,
    tau_breaking_p_power, ScanTarget,
};
use cosetcheck_core::{Permutation, DEFAULT_DEGREE_CAP, DEFAULT_SEED};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cosetcheck",
    version,
    about = "Coset verification in alternating groups",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: $COSETCHECK_THREADS, then all cores).
    /// Thread count never changes any verdict, census, or witness.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest permutation degree accepted by degree-8n commands.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AmbientArg {
    Alternating,
    Symmetric,
}

impl From<AmbientArg> for Ambient {
    fn from(a: AmbientArg) -> Ambient {
        match a {
            AmbientArg::Alternating => Ambient::Alternating,
            AmbientArg::Symmetric => Ambient::Symmetric,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    A4,
    A8,
    A16,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    /// p ≤ n ≤ 2p−1: cyclic Sylow subgroup of order p
    Cyclic,
    /// n = 2p: order p²
    N2p,
    /// 2p < n ≤ 3p−1: order p²
    Extended,
}

impl From<TargetArg> for ScanTarget {
    fn from(t: TargetArg) -> ScanTarget {
        match t {
            TargetArg::Cyclic => ScanTarget::Cyclic,
            TargetArg::N2p => ScanTarget::N2p,
            TargetArg::Extended => ScanTarget::Extended,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cycle-type census of the coset y·Z(x) in degree 8n.
    Census(CensusArgs),
    /// Verify that every element of y·Z(x) has all-even cycle type.
    VerifyTheorem(VerifyArgs),
    /// Check that every nontrivial coset of the centralizer of
    /// (1 2)(3 4)⋯ contains an odd-order element (A_4, A_8, A_16).
    Conj13(Conj13Args),
    /// Exhaustive involution-class coset scan in A_degree (degree ≤ 8);
    /// exits 1 when some coset has no odd-order element.
    Conj14Scan(Conj14Args),
    /// Exhaustive Sylow p-subgroup coset scan of A_n.
    Zappa(ZappaArgs),
    /// Run a constructive τ-finder against a given p-power-order x.
    LemmaTau(LemmaTauArgs),
    /// Lemma-level random-trial suite: products y∘z for z fixing {1..4n}.
    LemmaFix(LemmaFixArgs),
    /// Quick built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = AmbientArg::Alternating)]
    ambient: AmbientArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Sample count (sample mode only).
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AmbientArg::Alternating)]
    ambient: AmbientArg,
}

#[derive(Args)]
struct Conj13Args {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Traverse all cosets of A_16 (long run; opt-in).
    #[arg(long)]
    full: bool,
    /// Check only the first N nontrivial cosets of A_16; the verdict is
    /// then at best inconclusive (exit 3).
    #[arg(long)]
    budget: Option<u64>,
    /// Per-coset witness-search budget for the sampled A_16 modes.
    #[arg(long, default_value_t = PER_COSET_SAMPLE_CAP)]
    per_coset_budget: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct Conj14Args {
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct ZappaArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    degree: u32,
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
}

#[derive(Args)]
struct LemmaTauArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    degree: u32,
    /// The element x, as an image list ("[2,1,3,...]") or cycles ("(1 2 3)").
    #[arg(long)]
    x: String,
}

#[derive(Args)]
struct LemmaFixArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, value_enum, default_value_t = AmbientArg::Alternating)]
    ambient: AmbientArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn configure_threads(cli_threads: Option<usize>) -> Result<()> {
    let threads = match cli_threads {
        Some(t) => Some(t),
        None => match std::env::var("COSETCHECK_THREADS") {
            Ok(v) => Some(
                v.parse::<usize>()
                    .context("COSETCHECK_THREADS must be a positive integer")?,
            ),
            Err(_) => None,
        },
    };
    if let Some(threads) = threads {
        if threads == 0 {
            bail!("thread count must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("failed to configure the thread pool")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Census(args) => cmd_census(cli, args),
        Command::VerifyTheorem(args) => cmd_verify_theorem(cli, args),
        Command::Conj13(args) => cmd_conj13(cli, args),
        Command::Conj14Scan(args) => cmd_conj14(cli, args),
        Command::Zappa(args) => cmd_zappa(cli, args),
        Command::LemmaTau(args) => cmd_lemma_tau(cli, args),
        Command::LemmaFix(args) => cmd_lemma_fix(cli, args),
        Command::Selftest => cmd_selftest(),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("report written to {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(cli: &Cli, value: &T) -> Result<()> {
    emit(cli, &serde_json::to_string_pretty(value)?)
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Verified => EXIT_OK,
        Status::Violated => EXIT_VIOLATION,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn check_degree_cap(cli: &Cli, n: u32) -> Result<()> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    if 8 * n > cli.max_degree {
        bail!(
            "degree 8n = {} exceeds the configured cap {}; raise --max-degree to override",
            8 * n,
            cli.max_degree
        );
    }
    Ok(())
}

fn cmd_census(cli: &Cli, args: &CensusArgs) -> Result<u8> {
    check_degree_cap(cli, args.n)?;
    let ambient: Ambient = args.ambient.into();
    let desc = CentralizerDesc::standard(args.n, ambient);
    let y = build_y(args.n);
    let (census, mode, samples, seed) = match args.mode {
        ModeArg::Exhaustive => {
            let census = coset_census_exhaustive(&y, &desc, DEFAULT_ENUM_BUDGET)
                .map_err(|e| anyhow::anyhow!("{e}; rerun with --mode sample"))?;
            (census, "exhaustive", None, None)
        }
        ModeArg::Sample => {
            if args.samples == 0 {
                bail!("--samples must be at least 1");
            }
            let census = coset_census_sampled(&y, &desc, args.samples, args.seed)?;
            (census, "sample", Some(args.samples), Some(args.seed))
        }
    };
    let report = CensusReport::build(args.n, ambient, &census, mode, samples, seed)?;
    match args.format {
        FormatArg::Json => emit_json(cli, &report)?,
        FormatArg::Csv => emit(cli, report.to_csv().trim_end())?,
    }
    Ok(if report.all_even {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_verify_theorem(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    check_degree_cap(cli, args.n)?;
    let mode = match args.mode {
        ModeArg::Exhaustive => TheoremMode::Exhaustive,
        ModeArg::Sample => TheoremMode::Sampled {
            samples: args.samples,
            seed: args.seed,
        },
    };
    let start = Instant::now();
    let check = verify_all_even_coset(args.n, mode, args.ambient.into())
        .map_err(|e| anyhow::anyhow!("{e}; exhaustive mode needs n ≤ 2, use --mode sample"))?;
    let report = VerdictReport::new(&check.verdict, start.elapsed().as_millis());
    emit_json(cli, &report)?;
    Ok(status_code(check.verdict.status))
}

fn cmd_conj13(cli: &Cli, args: &Conj13Args) -> Result<u8> {
    let group = match args.group {
        GroupArg::A4 => Conj13Group::A4,
        GroupArg::A8 => Conj13Group::A8,
        GroupArg::A16 => Conj13Group::A16,
    };
    if args.full && args.budget.is_some() {
        bail!("--full and --budget are mutually exclusive");
    }
    let mode = match group {
        Conj13Group::A4 | Conj13Group::A8 => Conj13Mode::Exhaustive,
        Conj13Group::A16 => {
            if args.full {
                Conj13Mode::SampledFull { seed: args.seed }
            } else if let Some(max_cosets) = args.budget {
                if max_cosets == 0 {
                    bail!("--budget must be at least 1");
                }
                Conj13Mode::SampledBudget {
                    seed: args.seed,
                    max_cosets,
                }
            } else {
                bail!(
                    "the A_16 traversal covers 2,027,024 cosets; opt in with --full \
                     or bound it with --budget <cosets>"
                );
            }
        }
    };
    if args.per_coset_budget == 0 {
        bail!("--per-coset-budget must be at least 1");
    }
    let start = Instant::now();
    let verdict = conj13_check_with_budget(group, mode, args.per_coset_budget)?;
    let report = VerdictReport::new(&verdict, start.elapsed().as_millis());
    emit_json(cli, &report)?;
    Ok(status_code(verdict.status))
}

fn cmd_conj14(cli: &Cli, args: &Conj14Args) -> Result<u8> {
    let start = Instant::now();
    let verdict = conj14_scan(args.degree)?;
    let report = VerdictReport::new(&verdict, start.elapsed().as_millis());
    emit_json(cli, &report)?;
    Ok(status_code(verdict.status))
}

fn cmd_zappa(cli: &Cli, args: &ZappaArgs) -> Result<u8> {
    if args.mode != ModeArg::Exhaustive {
        bail!("only --mode exhaustive is supported for Sylow coset scans");
    }
    let start = Instant::now();
    let scan = exhaustive_scan(args.p, args.degree, args.target.into())?;
    let report = SylowScanReport::new(&scan, start.elapsed().as_millis());
    emit_json(cli, &report)?;
    Ok(status_code(scan.status))
}

fn cmd_lemma_tau(cli: &Cli, args: &LemmaTauArgs) -> Result<u8> {
    let desc = build_sylow(args.p, args.degree)?;
    let x = Permutation::parse(&args.x, args.degree)
        .with_context(|| format!("parsing --x {:?} at degree {}", args.x, args.degree))?;
    let x_type = x.cycle_type();
    let parts = x_type.parts();
    let is_p_cycle = parts.first() == Some(&args.p) && parts[1..].iter().all(|&q| q == 1);
    let (tau, effect) = if desc.generators().len() == 1 {
        tau_breaking_p_cycle(&desc, &x)?
    } else if is_p_cycle && desc.degree() != 2 * args.p {
        tau_breaking_order_p(&desc, &x)?
    } else if desc.degree() == 2 * args.p {
        tau_breaking_p_power(&desc, &x)?
    } else {
        bail!(
            "no constructive finder applies to cycle type {} at p = {}, degree {}",
            x_type.exp_string(),
            args.p,
            args.degree
        );
    };
    let coset = coset_order_report(&desc, &x)?;
    let report = TauReport::build(args.p, args.degree, &x, &tau, effect, &coset)?;
    emit_json(cli, &report)?;
    Ok(
        if report.product_order != args.p as u64 && !report.coset_all_p_power {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        },
    )
}

fn cmd_lemma_fix(cli: &Cli, args: &LemmaFixArgs) -> Result<u8> {
    check_degree_cap(cli, args.n)?;
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let start = Instant::now();
    let verdict = check_a_fixing_products(args.n, args.trials, args.ambient.into(), args.seed);
    let report = VerdictReport::new(&verdict, start.elapsed().as_millis());
    emit_json(cli, &report)?;
    Ok(status_code(verdict.status))
}

fn check_line(name: &str, ok: bool) -> bool {
    println!("[{}] {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn cmd_selftest() -> Result<u8> {
    let mut all_ok = true;

    let desc = CentralizerDesc::standard(1, Ambient::Alternating);
    let census = coset_census_exhaustive(&build_y(1), &desc, DEFAULT_ENUM_BUDGET)?;
    all_ok &= check_line(
        "degree-8 coset census: 96 elements, 3 cycle types, all even",
        census.total() == 96
            && census.entries().count() == 3
            && census.all_even_cycles()
            && census.orders()? == [2, 4, 6].into(),
    );

    let structural: std::collections::BTreeSet<Permutation> =
        enumerate_centralizer(&desc)?.collect();
    let brute: std::collections::BTreeSet<Permutation> =
        definitional_centralizer(&build_x(1), Ambient::Alternating)?
            .into_iter()
            .collect();
    all_ok &= check_line(
        "structural enumeration equals the brute-force centralizer of A_8",
        structural == brute,
    );

    let verdict =
        conj13_check_with_budget(Conj13Group::A4, Conj13Mode::Exhaustive, PER_COSET_SAMPLE_CAP)?;
    all_ok &= check_line(
        "both nontrivial A_4 cosets consist of 3-cycles",
        verdict.status == Status::Verified && verdict.cosets_checked == 2,
    );

    let verdict = check_a_fixing_products(1, 2_000, Ambient::Symmetric, DEFAULT_SEED);
    all_ok &= check_line(
        "products with half-preserving permutations have even cycles only",
        verdict.status == Status::Verified,
    );

    for (p, n, target) in [
        (3, 4, ScanTarget::Cyclic),
        (3, 5, ScanTarget::Cyclic),
        (3, 6, ScanTarget::N2p),
    ] {
        let scan = exhaustive_scan(p, n, target)?;
        all_ok &= check_line(
            &format!("Sylow coset scan p={p} n={n}: no all-p-power coset"),
            scan.status == Status::Verified
                && scan.violations.is_empty()
                && scan.constructive_runs == scan.constructive_agreements,
        );
    }

    Ok(if all_ok { EXIT_OK } else { EXIT_VIOLATION })
}
