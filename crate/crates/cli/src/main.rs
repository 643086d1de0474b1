use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use permbin_core::arith;
use permbin_core::battery::{self, BatteryOptions};
use permbin_core::binomcrit::{brute_force_is_permutation, mpw_is_permutation, BinomialSpec};
use permbin_core::search::{
    classify_field, run_search, ClassifyOptions, FieldReport, FieldTask, SearchConfig,
};
use permbin_core::theory::{self, Characterization, FilterOutcome, Verdict};
use permbin_core::{FieldParams, FieldShape};

/// Largest field order on which `check` also runs the power-sum criterion.
const CRITERION_LIMIT: u64 = 1 << 20;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "permbin",
    version,
    about = "Permutation binomials x^r(x^(q-1)+a) over F_(q^e)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters, modulus, primitive element and characterization status
    Info(FieldArgs),
    /// Decide whether x^r(x^(q-1)+xi^k) permutes the field
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: u64,
        /// Discrete log k of a = xi^k, in [0, n-2]
        #[arg(long = "a-exp")]
        a_exp: u64,
    },
    /// The construction family: one row per h
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        /// Also list r = s*ell + base for s = 0..=S
        #[arg(long = "s-max")]
        s_max: Option<u64>,
    },
    /// Every permutation (r, a-class) of one field
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        /// Print the report as one JSON line
        #[arg(long)]
        json: bool,
        /// Record wall-clock time in elapsed_ms
        #[arg(long)]
        timings: bool,
    },
    /// Explain each exponent filter for one r
    Filters {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: u64,
    },
    /// Classify every field up to a bound, with checkpoint and resume
    Search {
        #[arg(long = "max")]
        max_n: u64,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value = "permbin-search.jsonl")]
        out: PathBuf,
        /// Defaults to the output path with ".ckpt" appended
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        /// Stop after this many newly classified fields
        #[arg(long = "stop-after")]
        stop_after: Option<usize>,
    },
    /// Run the battery of published claims
    VerifyPaper {
        /// Print claim names without running them
        #[arg(long)]
        list: bool,
        /// Run only these claims
        #[arg(long = "claim")]
        claims: Vec<String>,
        /// Corrupt the expectation of the named claim
        #[arg(long = "inject-fault")]
        inject_fault: Option<String>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    /// Characteristic
    #[arg(long)]
    p: Option<u64>,
    /// q = p^m
    #[arg(long)]
    m: Option<u32>,
    /// Base field size, factored into p^m
    #[arg(long)]
    q: Option<u64>,
    /// Extension degree
    #[arg(long)]
    e: u32,
}

impl FieldArgs {
    fn shape(&self) -> Result<FieldShape> {
        let (p, m) = match (self.p, self.q) {
            (Some(_), Some(_)) => bail!("give either --p/--m or --q, not both"),
            (None, None) => bail!("one of --p or --q is required"),
            (Some(p), None) => (p, self.m.unwrap_or(1)),
            (None, Some(q)) => {
                if self.m.is_some() {
                    bail!("--m cannot be combined with --q");
                }
                arith::prime_power(q).ok_or_else(|| anyhow!("q = {q} is not a prime power"))?
            }
        };
        Ok(FieldShape::new(p, m, self.e)?)
    }

    fn build(&self) -> Result<FieldParams> {
        Ok(FieldParams::build_shape(self.shape()?)?)
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Info(field) => info(field),
        Command::Check { field, r, a_exp } => check(field, r, a_exp),
        Command::Construct { field, s_max } => construct(field, s_max),
        Command::Classify {
            field,
            json,
            timings,
        } => classify(field, json, timings),
        Command::Filters { field, r } => filters(field, r),
        Command::Search {
            max_n,
            jobs,
            out,
            checkpoint,
            timings,
            stop_after,
        } => search(max_n, jobs, out, checkpoint, timings, stop_after),
        Command::VerifyPaper {
            list,
            claims,
            inject_fault,
            jobs,
        } => verify_paper(list, claims, inject_fault, jobs),
    }
}

fn poly_string(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn status(shape: FieldShape) -> (String, Vec<u64>) {
    match theory::characterized_residues(shape) {
        Characterization::Proved { residues, basis } => {
            (format!("characterized ({basis})"), residues.to_vec())
        }
        Characterization::Conjectural { residues } => ("conjectural".into(), residues.to_vec()),
    }
}

fn info(args: FieldArgs) -> Result<u8> {
    let field = args.build()?;
    let shape = field.shape();
    let (status, residues) = status(shape);
    println!("field     {shape}");
    println!("p m e     {} {} {}", shape.p(), shape.m(), shape.e());
    println!("n         {}", shape.n());
    println!("q         {}", shape.q());
    println!("ell       {}", shape.ell());
    println!(
        "modulus   {}  {:?}",
        poly_string(field.modulus()),
        field.modulus()
    );
    println!("xi        {:?}", field.xi_coeffs());
    println!("status    {status}");
    println!("residues  {residues:?} (mod ell)");
    Ok(0)
}

fn check(args: FieldArgs, r: u64, a_exp: u64) -> Result<u8> {
    let field = args.build()?;
    let shape = field.shape();
    let n = shape.n();
    if r == 0 {
        bail!("--r must be positive");
    }
    if a_exp > n - 2 {
        bail!("--a-exp must lie in [0, {}]", n - 2);
    }
    let spec = BinomialSpec::with_log(&field, r, a_exp as i128)?;
    let a = spec.a();
    let brute = brute_force_is_permutation(&spec);
    let criterion = (n <= CRITERION_LIMIT).then(|| mpw_is_permutation(&spec));
    if criterion.is_some_and(|c| c != brute) {
        bail!("internal error: brute force says {brute} but the criterion disagrees");
    }

    let q = shape.q();
    let l = shape.ell();
    let rho = r % l;
    let coprime = arith::gcd(r, q - 1) == 1;
    let admissible = theory::is_admissible(&field, a)?;
    let construction = theory::construction_items(shape)
        .into_iter()
        .find(|item| item.residue_mod_ell == rho);
    let rejection = theory::first_rejection(shape, rho);

    println!("field       {shape}");
    println!("f(x)        x^{r} (x^{} + a)", q - 1);
    println!("a           xi^{a_exp} = {:?}", field.coeffs(a)?);
    println!("r mod ell   {rho} (ell = {l})");
    println!("brute force {}", verdict_word(brute));
    match criterion {
        Some(c) => println!("criterion   {}", verdict_word(c)),
        None => println!("criterion   skipped (n > {CRITERION_LIMIT})"),
    }
    println!(
        "necessary   gcd(r, q-1) = {} ; (-a)^ell != 1: {admissible}",
        arith::gcd(r, q - 1)
    );
    match construction {
        Some(item) => println!(
            "construction h={} k={} base r={} (r mod ell matches)",
            item.h, item.k, item.base_r
        ),
        None => println!("construction no member has r mod ell = {rho}"),
    }
    match &rejection {
        Some(why) => println!("filters     reject: {} ({why})", why.filter().report_key()),
        None => println!("filters     all pass"),
    }

    let reason = if brute {
        match construction {
            Some(item) if coprime && admissible => format!("construction h={}", item.h),
            _ => "brute force".into(),
        }
    } else if !admissible {
        "necessary condition (-a)^ell != 1 fails".into()
    } else if !coprime {
        "necessary condition gcd(r, q-1) = 1 fails".to_string()
    } else if let Some(why) = &rejection {
        format!(
            "rejected by {} ({why}) and brute force",
            why.filter().report_key()
        )
    } else {
        "brute force".into()
    };
    if brute {
        println!("PERMUTATION ({reason})");
        Ok(0)
    } else {
        println!("NOT ({reason})");
        Ok(EXIT_NEGATIVE)
    }
}

fn verdict_word(permutes: bool) -> &'static str {
    if permutes {
        "permutation"
    } else {
        "not a permutation"
    }
}

fn construct(args: FieldArgs, s_max: Option<u64>) -> Result<u8> {
    let shape = args.shape()?;
    let l = shape.ell();
    println!("{shape}, ell = {l}");
    println!("{:>4} {:>4} {:>22} {:>22}", "h", "k", "base r", "r mod ell");
    let items = theory::construction_items(shape);
    for item in &items {
        println!(
            "{:>4} {:>4} {:>22} {:>22}",
            item.h, item.k, item.base_r, item.residue_mod_ell
        );
    }
    if let Some(s_max) = s_max {
        for item in &items {
            let values: Vec<String> = (0..=s_max)
                .map(|s| (s as u128 * l as u128 + item.base_r as u128).to_string())
                .collect();
            println!("h={}: r = {}", item.h, values.join(", "));
        }
    }
    Ok(0)
}

fn classify(args: FieldArgs, json: bool, timings: bool) -> Result<u8> {
    let shape = args.shape()?;
    let task = FieldTask::new(shape.p(), shape.m(), shape.e())?;
    let report = classify_field(
        task,
        ClassifyOptions {
            timings,
            ..ClassifyOptions::default()
        },
    )?;
    if json {
        println!("{}", report.to_json_line());
    } else {
        print_report(shape, &report);
    }
    Ok(if report.conjecture_holds {
        0
    } else {
        EXIT_VIOLATION
    })
}

fn print_report(shape: FieldShape, report: &FieldReport) {
    let pairs = |list: &[permbin_core::search::PermPair]| -> String {
        let items: Vec<String> = list
            .iter()
            .map(|p| format!("({}, {})", p.r, p.a_class))
            .collect();
        if items.is_empty() {
            "none".into()
        } else {
            items.join(" ")
        }
    };
    println!("{shape}, n = {}, ell = {}", report.n, report.ell);
    println!("found ({}): {}", report.found.len(), pairs(&report.found));
    println!(
        "residues found: {:?}",
        report.found_residues().into_iter().collect::<Vec<_>>()
    );
    if report.found == report.predicted {
        println!("matches predicted");
    } else {
        println!(
            "predicted ({}): {}",
            report.predicted.len(),
            pairs(&report.predicted)
        );
        println!("counterexamples: {}", pairs(&report.counterexamples));
    }
    let fr = report.filter_rejections;
    println!(
        "pruned: necessary {} prop41 {} prop42 {} prop43 {} prop45 {}",
        fr.necessary, fr.prop41, fr.prop42, fr.prop43, fr.prop45
    );
    println!(
        "conjecture {}",
        if report.conjecture_holds {
            "holds"
        } else {
            "VIOLATED"
        }
    );
}

fn filters(args: FieldArgs, r: u64) -> Result<u8> {
    let shape = args.shape()?;
    let rho = r % shape.ell();
    println!(
        "{shape}, r = {r}, r mod ell = {rho} (ell = {})",
        shape.ell()
    );
    for (filter, outcome) in theory::evaluate_filters(shape, rho)? {
        let text = match outcome {
            FilterOutcome::Applied(Verdict::Pass) => "pass".to_string(),
            FilterOutcome::Applied(Verdict::Reject(why)) => {
                format!("reject: {} ({why})", filter.report_key())
            }
            FilterOutcome::NotApplicable(why) => format!("not applicable: {why}"),
        };
        println!("{:<7} {:<19} {text}", filter.report_key(), filter.name());
    }
    Ok(0)
}

fn search(
    max_n: u64,
    jobs: usize,
    out: PathBuf,
    checkpoint: Option<PathBuf>,
    timings: bool,
    stop_after: Option<usize>,
) -> Result<u8> {
    let checkpoint_path = checkpoint.unwrap_or_else(|| {
        let mut p = out.clone().into_os_string();
        p.push(".ckpt");
        PathBuf::from(p)
    });
    let config = SearchConfig {
        max_n,
        jobs,
        out_path: out,
        checkpoint_path,
        stop_after,
        timings,
    };
    let summary = run_search(&config)?;
    if summary.already_done == summary.total {
        println!("all tasks checkpointed");
    }
    println!(
        "fields {} (resumed {}, processed {}), violations {}, {} in {} ms",
        summary.total,
        summary.already_done,
        summary.processed,
        summary.violations,
        if summary.complete {
            "complete"
        } else {
            "incomplete"
        },
        summary.wall_ms
    );
    println!("report {}", config.out_path.display());
    if summary.violations > 0 {
        eprintln!(
            "CONJECTURE VIOLATED in {} field(s); see counterexamples in the report",
            summary.violations
        );
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}

fn verify_paper(
    list: bool,
    claims: Vec<String>,
    inject_fault: Option<String>,
    jobs: usize,
) -> Result<u8> {
    let known = battery::claim_names();
    if list {
        for claim in battery::claims() {
            println!("{:<42} {}", claim.name, claim.summary);
        }
        return Ok(0);
    }
    for name in claims.iter().chain(inject_fault.iter()) {
        if !known.contains(&name.as_str()) {
            bail!("unknown claim {name:?}; see --list");
        }
    }
    let selected: Vec<&str> = if claims.is_empty() {
        known
    } else {
        claims.iter().map(String::as_str).collect()
    };
    let options = BatteryOptions { jobs, inject_fault };
    let mut failed = 0;
    for name in selected {
        let result = battery::run_claim(name, &options).context("running claim")?;
        if !result.passed {
            failed += 1;
        }
        println!(
            "{} {:<42} {:>9.2}s  {}",
            if result.passed { "PASS" } else { "FAIL" },
            result.name,
            result.elapsed.as_secs_f64(),
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} claim(s) failed");
        Ok(EXIT_NEGATIVE)
    } else {
        println!("all claims passed");
        Ok(0)
    }
}
