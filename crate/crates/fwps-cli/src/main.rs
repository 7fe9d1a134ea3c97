//! `fwps` — exact-arithmetic command line for Fano simplices and fake
//! weighted projective spaces: analyze a simplex file, construct the
//! simplex of a weight system, enumerate every quotient in a singularity
//! class, list admissible weight systems, and re-verify a stored catalog.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 simplex validation error, 4 bad weights, 5 missing bound argument.

mod formats;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, ToPrimitive};
use serde_json::json;

use formats::{read_catalog, read_simplex, simplex_of, CliError, RecordDto};
use fwps::{
    applicable_reports, enumerate_fake_wps, enumerate_gorenstein_weights, mult_bound_claimed,
    normal_form, search_weights, summarize_reports, wps_simplex, ClassFilter, EnumerateError,
    FanoSimplex, SingularityClass, WeightSystem,
};

#[derive(Parser)]
#[command(name = "fwps", version, about = "Exact toolkit for fake weighted projective spaces")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a simplex file: weights, multiplicity, singularities, bounds.
    Analyze(AnalyzeArgs),
    /// Print the simplex of a weighted projective space.
    Wps(WpsArgs),
    /// Enumerate all fake weighted projective spaces with given weights.
    Enumerate(EnumerateArgs),
    /// List weight systems of one dimension and singularity class.
    Weights(WeightsArgs),
    /// Re-check every applicable bound against a stored catalog.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Simplex file: one vertex per line, `#` comments; or JSON
    /// {"dim": n, "vertices": [[..], ..]}; `-` reads standard input.
    input: String,
    /// Emit the report as a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WpsArgs {
    /// The weights, e.g. `1 2 3`.
    #[arg(required = true, num_args = 2..)]
    weights: Vec<u64>,
    /// Analyze the constructed simplex instead of only printing it.
    #[arg(long)]
    analyze: bool,
    /// With --analyze: emit the report as JSON.
    #[arg(long, requires = "analyze")]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// The weights, e.g. `1 1 1 1`.
    #[arg(required = true, num_args = 2..)]
    weights: Vec<u64>,
    /// Singularity class to keep.
    #[arg(long, value_enum)]
    class: ClassArg,
    /// Multiplicity cap; optional for the restricted classes, required for
    /// `all`.
    #[arg(long)]
    mult_cap: Option<u64>,
    /// Write the catalog here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct WeightsArgs {
    /// Ambient dimension.
    #[arg(long)]
    dim: usize,
    /// Class the weighted projective space itself must satisfy.
    #[arg(long, value_enum)]
    class: WeightClassArg,
    /// Search cutoff on the weight sum; not needed for `gorenstein`.
    #[arg(long)]
    h_max: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON-lines catalog to verify.
    #[arg(long)]
    catalog: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Terminal,
    Canonical,
    Gorenstein,
    All,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> ClassFilter {
        match c {
            ClassArg::Terminal => ClassFilter::Terminal,
            ClassArg::Canonical => ClassFilter::Canonical,
            ClassArg::Gorenstein => ClassFilter::Gorenstein,
            ClassArg::All => ClassFilter::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightClassArg {
    Gorenstein,
    Canonical,
    Terminal,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("worker pool configured before any parallel work");
    }
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Wps(args) => cmd_wps(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Weights(args) => cmd_weights(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

/// Weight-system construction errors map to exit 4.
fn weight_error(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: 4,
        message: e.to_string(),
    }
}

/// Missing-argument errors of the bound contract map to exit 5.
fn missing_bound_argument(message: &str) -> CliError {
    CliError {
        code: 5,
        message: message.to_string(),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, CliError> {
    let p = read_simplex(&args.input)?;
    print_report(&p, args.json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_wps(args: WpsArgs) -> Result<ExitCode, CliError> {
    let w = WeightSystem::from_u64(&args.weights).map_err(weight_error)?;
    let base = wps_simplex(&w).map_err(weight_error)?;
    // Print the canonical representative so equal weight systems always
    // produce identical files.
    let nf = normal_form(&base);
    let canon = FanoSimplex::new((0..nf.rows()).map(|i| nf.row_point(i)).collect())
        .expect("a normal form is a valid vertex list");
    if args.analyze {
        print_report(&canon, args.json);
    } else {
        let mut stdout = std::io::stdout().lock();
        for i in 0..nf.rows() {
            let row: Vec<String> = nf.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(stdout, "{}", row.join(" ")).expect("writing to standard output");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, CliError> {
    let w = WeightSystem::from_u64(&args.weights).map_err(weight_error)?;
    let class: ClassFilter = args.class.into();
    let outcome = match enumerate_fake_wps(&w, class, args.mult_cap) {
        Ok(outcome) => outcome,
        Err(EnumerateError::Weights(e)) => return Err(weight_error(e)),
        Err(e @ EnumerateError::MissingMultCap) => {
            return Err(missing_bound_argument(&format!("{e}; pass --mult-cap")))
        }
    };

    let mut lines = String::new();
    let mut by_mult: BTreeMap<u64, usize> = BTreeMap::new();
    for record in &outcome.records {
        let dto = RecordDto::from(record);
        *by_mult.entry(dto.mult).or_default() += 1;
        lines.push_str(&serde_json::to_string(&dto).expect("catalog records serialize"));
        lines.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, &lines)
            .map_err(|e| CliError::parse(format!("writing {path}: {e}")))?,
        None => print!("{lines}"),
    }

    let counts: Vec<String> = by_mult
        .iter()
        .map(|(mult, count)| format!("{count} of multiplicity {mult}"))
        .collect();
    let mut summary = format!(
        "{} record{}",
        outcome.records.len(),
        if outcome.records.len() == 1 { "" } else { "s" }
    );
    if !counts.is_empty() {
        summary.push_str(&format!(" ({})", counts.join(", ")));
    }
    if outcome.base_rejected {
        summary.push_str(" — the weighted projective space itself fails the class filter");
    }
    if let Some(ratio) = &outcome.max_conjecture_ratio {
        summary.push_str(&format!(", largest mult·λ₀⋯λₙ/hⁿ⁻¹ ratio {ratio}"));
    }
    eprintln!("{summary}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(args: WeightsArgs) -> Result<ExitCode, CliError> {
    let mut systems = match args.class {
        WeightClassArg::Gorenstein => enumerate_gorenstein_weights(args.dim),
        WeightClassArg::Canonical | WeightClassArg::Terminal => {
            let Some(h_max) = args.h_max else {
                return Err(missing_bound_argument(
                    "only the gorenstein class has an intrinsic bound on the weight sum; \
                     pass --h-max",
                ));
            };
            let class = match args.class {
                WeightClassArg::Terminal => SingularityClass::Terminal,
                _ => SingularityClass::Canonical,
            };
            search_weights(args.dim, h_max, class)
        }
    };
    systems.sort();
    for w in systems {
        println!("{w}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let records = read_catalog(&args.catalog)?;
    let mut reports = Vec::new();
    for (index, dto) in records.iter().enumerate() {
        let p = simplex_of(dto, &args.catalog, index + 1)?;
        // The stored multiplicity is the claim under test: feed it into
        // the multiplicity bound instead of the recomputed value, so a
        // corrupted record fails loudly.
        let stored = BigInt::from(dto.mult);
        for report in applicable_reports(&p) {
            if report.name == "mult_bound" {
                reports.push(mult_bound_claimed(&stored, &p));
            } else {
                reports.push(report);
            }
        }
    }
    let summary = summarize_reports(records.len(), reports);
    print!("{summary}");
    if summary.is_clean() {
        Ok(ExitCode::SUCCESS)
    } else {
        for stat in &summary.stats {
            for failure in &stat.failures {
                eprintln!("{failure}");
            }
        }
        Ok(ExitCode::FAILURE)
    }
}

/// Shared text/JSON report for `analyze` and `wps --analyze`.
fn print_report(p: &FanoSimplex, as_json: bool) {
    let w = p.weights();
    let reports = applicable_reports(p);
    let cones = p.cone_singularities();
    if as_json {
        let object = json!({
            "vertices": vertex_rows(p),
            "weights": w.lambdas().iter().map(|l| l.to_u64().expect("weight beyond u64")).collect::<Vec<_>>(),
            "h": w.h().to_u64().expect("weight sum beyond u64"),
            "multiplicity": p.multiplicity().to_u64().expect("multiplicity beyond u64"),
            "quotient": p.quotient_group().iter().map(|q| q.to_u64().expect("factor beyond u64")).collect::<Vec<_>>(),
            "volume": p.normalized_volume().to_string(),
            "degree": p.degree().to_string(),
            "facet_volumes": p.facet_volumes().iter().map(|v| v.to_u64().expect("facet volume beyond u64")).collect::<Vec<_>>(),
            "terminal": p.is_terminal(),
            "canonical": p.is_canonical(),
            "reflexive": p.is_reflexive(),
            "cone_singularities": cones.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "bounds": reports.iter().map(|r| json!({
                "name": r.name,
                "instance": r.instance,
                "lhs": r.lhs.to_string(),
                "rhs": r.rhs.to_string(),
                "strict": r.strict,
                "holds": r.holds,
                "slack": r.slack.to_string(),
            })).collect::<Vec<_>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&object).expect("report serializes")
        );
        return;
    }

    println!("vertices: {p}");
    println!("weights: {w}");
    println!("h: {}", w.h());
    println!("multiplicity: {}", p.multiplicity());
    println!("quotient group: {}", quotient_name(&p.quotient_group()));
    println!("normalized volume: {}", p.normalized_volume());
    println!("degree: {}", p.degree());
    let facets: Vec<String> = p.facet_volumes().iter().map(|v| v.to_string()).collect();
    println!("facet volumes: ({})", facets.join(", "));
    println!("terminal: {}", p.is_terminal());
    println!("canonical: {}", p.is_canonical());
    println!("reflexive: {}", p.is_reflexive());
    let cone_names: Vec<String> = cones.iter().map(|c| c.to_string()).collect();
    println!("cone singularities: {}", cone_names.join(", "));
    println!("bounds:");
    for r in &reports {
        println!("  {r}");
    }
}

fn vertex_rows(p: &FanoSimplex) -> Vec<Vec<i64>> {
    p.vertices()
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| c.to_i64().expect("coordinate beyond i64"))
                .collect()
        })
        .collect()
}

fn quotient_name(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        return "trivial".to_string();
    }
    factors
        .iter()
        .map(|f| format!("Z/{f}"))
        .collect::<Vec<_>>()
        .join(" x ")
}
