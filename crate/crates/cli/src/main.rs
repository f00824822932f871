use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use house_core::algebra::{self, Classification};
use house_core::bounds::{self, BoundColumn};
use house_core::corpus::{check_conjecture_evidence, verify_table, Corpus, EntryReport, Table};
use house_core::roots;
use house_core::search::{
    partition_merge, search_with_progress, ExtremalRecord, SearchConfig, SearchStats,
};
use house_core::{parse_poly, significant, Encoding, IntPolynomial};

const DIGITS: usize = 15;
const CHECKPOINT_ENV: &str = "HOUSE_CHECKPOINT_DIR";
const SHARDS_PER_JOB: usize = 8;

#[derive(Parser)]
#[command(
    name = "hoa",
    version,
    about = "House of algebraic integers: roots, bounds, searches and table checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// House (largest root modulus) of a polynomial
    House(PolyArgs),
    /// Mahler measure and number of roots outside the unit circle
    Measure(PolyArgs),
    /// Irreducibility and root-of-unity verdict
    Classify(PolyArgs),
    /// Lower bounds, bound columns and the upper-bound witness for a degree
    Bounds(BoundsArgs),
    /// Exhaustive search over monic palindromic polynomials
    Search(SearchArgs),
    /// Recompute the embedded tables
    Verify(VerifyArgs),
    /// Best composition of smaller records for a composite degree
    Predict(BoundsArgs),
    /// Members of the explicit polynomial families
    Generate(GenerateArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "input")]
struct PolyInput {
    /// Monic palindromic polynomial given by the coefficients of x^d down to x^(d/2)
    #[arg(long, allow_hyphen_values = true)]
    half: Option<String>,
    /// All coefficients, highest degree first
    #[arg(long, allow_hyphen_values = true)]
    full: Option<String>,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Tab-separated output
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    degree: usize,
    /// Restrict to reciprocal algebraic integers
    #[arg(long)]
    reciprocal: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Even degree of the searched polynomials
    #[arg(long)]
    degree: usize,
    /// Coefficient bound; defaults to a per-degree schedule
    #[arg(long)]
    height: Option<i64>,
    /// Also collect every candidate with house below this value
    #[arg(long)]
    threshold: Option<f64>,
    /// Disable pattern and real-root pruning
    #[arg(long)]
    no_prune: bool,
    /// Skip polynomials in x^k for k >= 2
    #[arg(long)]
    skip_nonprimitive: bool,
    /// Run only shard I of N, written I/N
    #[arg(long, value_parser = parse_shard)]
    shard: Option<(usize, usize)>,
    /// Split the space into this many shards run in parallel
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Checkpoint file; with several jobs, one file per shard is derived from it
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Directory for checkpoint files named after the configuration
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
    /// No progress on standard error
    #[arg(long, short)]
    quiet: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Table to verify (T1 to T8); all tables when omitted
    #[arg(long)]
    table: Option<Table>,
    /// Also evaluate the structural relations between tables
    #[arg(long)]
    evidence: bool,
    /// List every row, not only failures
    #[arg(long)]
    all: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// (x^(d+2) - x^2 - 1)/(x^2 - x + 1), d = 5 mod 6
    FiveModSix,
    /// (x^(d+3) - x^((d+3)/2) - x + 1)/((x - 1)(x^2 + 1))
    SplitPower,
    /// x^d - 2, or x^d + 3x^(d/2) + 1 with --reciprocal
    Witness,
}

#[derive(Args)]
struct GenerateArgs {
    family: Family,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    reciprocal: bool,
    #[arg(long)]
    tsv: bool,
}

fn parse_shard(s: &str) -> Result<(usize, usize), String> {
    let (i, n) = s.split_once('/').ok_or("expected I/N")?;
    let i: usize = i.trim().parse().map_err(|_| "bad shard index")?;
    let n: usize = n.trim().parse().map_err(|_| "bad shard count")?;
    if n == 0 || i >= n {
        return Err(format!("shard index must be below the count, got {i}/{n}"));
    }
    Ok((i, n))
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_poly(input: &PolyInput) -> Result<IntPolynomial, Failure> {
    let p = match (&input.half, &input.full) {
        (Some(h), _) => parse_poly(h, Encoding::Half)?,
        (_, Some(f)) => parse_poly(f, Encoding::Full)?,
        _ => unreachable!("clap requires one input"),
    };
    if p.degree() == 0 {
        return Err(Failure::Usage(
            "polynomial must have positive degree".into(),
        ));
    }
    if !p.is_monic() {
        return Err(Failure::Usage("polynomial must be monic".into()));
    }
    Ok(p)
}

fn show(p: &IntPolynomial) -> String {
    p.format(Encoding::Half)
        .or_else(|_| p.format(Encoding::Full))
        .unwrap_or_default()
}

fn num(x: f64) -> String {
    significant(x, DIGITS)
}

fn house_cmd(a: &PolyArgs) -> Outcome {
    let p = read_poly(&a.input)?;
    let (h, err) = roots::house(&p)?;
    if a.tsv {
        let nu = roots::count_outside_unit(&p)?;
        println!(
            "{}\t{}\t{}\t{:.1e}\t{nu}",
            p.degree(),
            show(&p),
            num(h),
            err
        );
    } else {
        println!("{}", num(h));
    }
    Ok(())
}

fn measure_cmd(a: &PolyArgs) -> Outcome {
    let p = read_poly(&a.input)?;
    let (m, _) = roots::mahler_measure(&p)?;
    let nu = roots::count_outside_unit(&p)?;
    if a.tsv {
        println!("{}\t{}\t{}\t{nu}", p.degree(), show(&p), num(m));
    } else {
        println!("measure {}\nroots outside the unit circle {nu}", num(m));
    }
    Ok(())
}

fn classify_cmd(a: &PolyArgs) -> Outcome {
    let p = read_poly(&a.input)?;
    let verdict = algebra::minimal_gate(&p);
    let detail = match &verdict {
        Classification::Candidate => String::new(),
        Classification::Reducible(f) => show(f),
        Classification::RootOfUnity(idx) => idx
            .iter()
            .map(|k| format!("Phi_{k}"))
            .collect::<Vec<_>>()
            .join(" "),
    };
    if a.tsv {
        println!(
            "{}\t{}\t{}\t{detail}",
            p.degree(),
            show(&p),
            verdict.label()
        );
    } else {
        match verdict {
            Classification::Candidate => println!("irreducible, not a root of unity"),
            Classification::Reducible(_) => println!("reducible: factor {detail}"),
            Classification::RootOfUnity(_) => {
                println!("product of cyclotomic polynomials: {detail}")
            }
        }
    }
    Ok(())
}

fn bounds_cmd(a: &BoundsArgs) -> Outcome {
    let d = a.degree;
    let lower = bounds::matveev_lower_bound(d, a.reciprocal).ok();
    let (witness, wh) = bounds::upper_bound_witness(d, a.reciprocal)?;
    let cols = [
        bounds::column_bound(d, BoundColumn::Theta32),
        bounds::column_bound(d, BoundColumn::Tau10),
        bounds::column_bound(d, BoundColumn::Sigma8),
    ];
    let lower_s = lower.map_or("-".to_string(), num);
    if a.tsv {
        println!(
            "{d}\t{}\t{lower_s}\t{}\t{}\t{}\t{}\t{}",
            if a.reciprocal {
                "reciprocal"
            } else {
                "general"
            },
            num(cols[0]),
            num(cols[1]),
            num(cols[2]),
            num(wh),
            witness.format(Encoding::Full)?
        );
    } else {
        println!("lower bound      {lower_s}");
        println!("theta^(3/(2d))   {}", num(cols[0]));
        println!("tau^(10/d)       {}", num(cols[1]));
        println!("sigma^(8/d)      {}", num(cols[2]));
        println!(
            "upper witness    {} ({})",
            num(wh),
            witness.format(Encoding::Full)?
        );
    }
    Ok(())
}

fn checkpoint_for(a: &SearchArgs, config: &SearchConfig) -> Option<PathBuf> {
    let (i, n) = config.shard;
    if let Some(base) = &a.checkpoint {
        if n == 1 || a.shard.is_some() {
            return Some(base.clone());
        }
        let mut s = base.clone().into_os_string();
        s.push(format!(".{i}"));
        return Some(PathBuf::from(s));
    }
    let dir = a
        .checkpoint_dir
        .clone()
        .or_else(|| std::env::var_os(CHECKPOINT_ENV).map(PathBuf::from))?;
    let thr = config
        .threshold
        .map_or("none".to_string(), |t| t.to_string());
    Some(dir.join(format!(
        "d{}-h{}-t{thr}-p{}-{i}of{n}.ckpt",
        config.degree,
        config.height,
        u8::from(config.skip_nonprimitive)
    )))
}

struct Progress {
    done: Vec<u128>,
    total: Vec<u128>,
    last: Instant,
}

fn search_cmd(a: &SearchArgs) -> Outcome {
    if a.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    if a.shard.is_some() && a.jobs > 1 {
        return Err(Failure::Usage(
            "--shard and --jobs cannot be combined".into(),
        ));
    }
    let height = a
        .height
        .unwrap_or_else(|| SearchConfig::default_height(a.degree));
    let mut base = SearchConfig::new(a.degree, height);
    base.threshold = a.threshold;
    base.prune_patterns = !a.no_prune;
    base.prune_real_root = !a.no_prune;
    base.skip_nonprimitive = a.skip_nonprimitive;
    let shards: Vec<SearchConfig> = match a.shard {
        Some((i, n)) => vec![base.clone().with_shard(i, n)],
        // Canonical half lists cluster in the upper part of the index
        // range, so several shards per worker keep the workers busy.
        None => {
            let n = if a.jobs == 1 {
                1
            } else {
                a.jobs * SHARDS_PER_JOB
            };
            (0..n).map(|i| base.clone().with_shard(i, n)).collect()
        }
    };
    let mut configs = Vec::new();
    for mut c in shards {
        c.checkpoint = checkpoint_for(a, &c);
        if let Some(dir) = c.checkpoint.as_ref().and_then(|p| p.parent()) {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        c.validate()?;
        configs.push(c);
    }

    let progress = Mutex::new(Progress {
        done: vec![0; configs.len()],
        total: vec![0; configs.len()],
        last: Instant::now(),
    });
    let started = Instant::now();
    let report = |slot: usize, done: u128, total: u128| {
        if a.quiet {
            return;
        }
        let mut p = progress.lock().unwrap();
        p.done[slot] = done;
        p.total[slot] = total;
        if p.last.elapsed() >= Duration::from_secs(2) {
            p.last = Instant::now();
            let d: u128 = p.done.iter().sum();
            let t: u128 = p.total.iter().sum::<u128>().max(1);
            eprintln!(
                "progress {:.2}% ({d}/{t}) after {:.0}s",
                100.0 * d as f64 / t as f64,
                started.elapsed().as_secs_f64()
            );
        }
    };
    let next = AtomicUsize::new(0);
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..a.jobs.min(configs.len()))
            .map(|_| {
                let (report, next, configs) = (&report, &next, &configs);
                s.spawn(move || {
                    let mut done = Vec::new();
                    loop {
                        let slot = next.fetch_add(1, Ordering::Relaxed);
                        let Some(c) = configs.get(slot) else { break };
                        done.push(search_with_progress(c, |d, t| report(slot, d, t)));
                    }
                    done
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search thread"))
            .collect()
    });
    let mut records = Vec::new();
    let mut total = SearchStats::default();
    for r in results {
        let (record, stats) = r?;
        total.visited += stats.visited;
        total.pruned_pattern += stats.pruned_pattern;
        total.pruned_probe += stats.pruned_probe;
        total.accepted += stats.accepted;
        records.push(record);
    }
    if !a.quiet {
        eprintln!(
            "visited {} pruned {} accepted {} in {:.1}s",
            total.visited,
            total.pruned_pattern + total.pruned_probe,
            total.accepted,
            started.elapsed().as_secs_f64()
        );
    }
    let record = partition_merge(&records)?;
    print_record(&record, a.tsv);
    Ok(())
}

fn print_record(r: &ExtremalRecord, tsv: bool) {
    let half = |h: &[i64]| h.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    if tsv {
        match &r.best {
            Some(b) => println!(
                "best\t{}\t{}\t{}\t{}\t{}",
                r.degree(),
                r.key.height,
                num(b.house),
                b.nu,
                half(&b.half)
            ),
            None => println!("best\t{}\t{}\t-\t-\t-", r.degree(), r.key.height),
        }
        for t in r.ties.iter().skip(1) {
            println!(
                "tie\t{}\t{}\t{}\t{}\t{}",
                r.degree(),
                r.key.height,
                num(t.house),
                t.nu,
                half(&t.half)
            );
        }
        for c in &r.candidates {
            println!(
                "below\t{}\t{}\t{}\t{}\t{}",
                r.degree(),
                r.key.height,
                num(c.house),
                c.nu,
                half(&c.half)
            );
        }
        return;
    }
    match &r.best {
        Some(b) => {
            println!("degree {} height {}", r.degree(), r.key.height);
            println!("house  {}", num(b.house));
            println!("nu     {}", b.nu);
            println!("half   {}", half(&b.half));
            for t in r.ties.iter().skip(1) {
                println!("tie    {}", half(&t.half));
            }
        }
        None => println!("no irreducible non-cyclotomic polynomial below the bound"),
    }
    if let Some(t) = r.key.threshold {
        println!("{} candidates below {t}", r.candidates.len());
        for c in &r.candidates {
            println!("  {}  nu={}  {}", num(c.house), c.nu, half(&c.half));
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let corpus = Corpus::load()?;
    let tables: Vec<Table> = match a.table {
        Some(t) => vec![t],
        None => Table::ALL.to_vec(),
    };
    let mut ok = true;
    if a.tsv {
        println!("{}", EntryReport::tsv_header());
    }
    for t in tables {
        let r = verify_table(&corpus, t)?;
        ok &= r.passed();
        for row in &r.rows {
            if a.all || a.tsv || !row.passed() {
                println!("{}", row.tsv_row());
            }
        }
        for c in r.checks.iter().filter(|c| !c.passed) {
            println!("{t}\ttable\t{}\t{}", c.name, c.detail);
        }
        if !a.tsv {
            println!("{}", r.summary());
        }
    }
    if a.evidence {
        for e in check_conjecture_evidence(&corpus) {
            ok &= e.holds;
            println!("{}", e.tsv_row());
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn predict_cmd(a: &BoundsArgs) -> Outcome {
    let corpus = Corpus::load()?;
    let table = if a.reciprocal { Table::T1 } else { Table::T2 };
    let records: Vec<(usize, IntPolynomial)> = corpus
        .table(table)
        .filter(|e| e.degree < a.degree)
        .map(|e| corpus.polynomial(e).map(|p| (e.degree, p)))
        .collect::<Result<_, _>>()?;
    let pred = bounds::composite_prediction(a.degree, a.reciprocal, &records)?;
    if a.tsv {
        println!(
            "{}\t{}\t{}\t{}\t{}",
            a.degree,
            pred.divisor,
            num(pred.powerhouse),
            num(pred.house),
            show(&pred.poly)
        );
    } else {
        println!("divisor    {}", pred.divisor);
        println!("powerhouse {}", num(pred.powerhouse));
        println!("house      {}", num(pred.house));
        println!("polynomial {}", show(&pred.poly));
        if !pred.ties.is_empty() {
            println!("tied with  {:?}", pred.ties);
        }
    }
    Ok(())
}

fn generate_cmd(a: &GenerateArgs) -> Outcome {
    let d = a.degree;
    let (p, note) = match a.family {
        Family::FiveModSix => (bounds::five_mod_six_polynomial(d)?, String::new()),
        Family::SplitPower => {
            let q = bounds::split_power_quotient(d)?;
            let note = if q.exact {
                ""
            } else {
                "inexact: remainder dropped"
            };
            (q.poly, note.to_string())
        }
        Family::Witness => (
            bounds::upper_bound_witness(d, a.reciprocal)?.0,
            String::new(),
        ),
    };
    let (h, _) = roots::house(&p)?;
    let full = p.format(Encoding::Full)?;
    if a.tsv {
        println!("{d}\t{}\t{full}\t{note}", num(h));
    } else {
        println!("{full}");
        println!("house {}", num(h));
        if !note.is_empty() {
            println!("{note}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::House(a) => house_cmd(a),
        Command::Measure(a) => measure_cmd(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Search(a) => search_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Predict(a) => predict_cmd(a),
        Command::Generate(a) => generate_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
