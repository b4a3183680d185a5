use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use exposed_maps::io::write_matrix;
use exposed_maps::witness::{estimate_span, EstimatorConfig, SpanKind, SpanReport};
use exposed_maps::{Error, Tolerances};
use exposed_maps_cli::checks::{Check, CheckContext};
use exposed_maps_cli::exit_code;
use exposed_maps_cli::maps::{parse_map, MapSpec, MatrixForm};
use exposed_maps_cli::report::{render, Format};

#[derive(Parser)]
#[command(name = "expomap", version, about = "Spanning, strong spanning and irreducibility checks for positive maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check, or `all`.
    Verify(VerifyArgs),
    /// Estimate the M- or N-span dimension of a map.
    Span(SpanArgs),
    /// Map utilities.
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, env = "SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with 3 when a result is inconclusive.
    #[arg(long)]
    strict: bool,
    /// Sample budget per span run (default 10·n³).
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    check: String,
    /// Comma-separated dimensions for checks that take them.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Include wall-clock runtime in the reports.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SpanArgs {
    /// transpose, reduction, robertson, breuer-hall or file:<path>
    #[arg(long)]
    map: String,
    #[arg(long, value_parser = parse_kind)]
    kind: SpanKind,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    tol_kernel: Option<f64>,
    /// How a file map is stored.
    #[arg(long, value_enum, default_value_t = MatrixForm::Superop)]
    form: MatrixForm,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum MapCommand {
    /// Write a map as a JSON matrix file.
    Export {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixForm::Superop)]
        form: MatrixForm,
        #[arg(long, env = "SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn parse_kind(s: &str) -> Result<SpanKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let checks: Vec<Check> = if args.check == "all" {
        Check::ALL.to_vec()
    } else {
        match args.check.parse() {
            Ok(c) => vec![c],
            Err(e) => return usage_error(e),
        }
    };
    let ctx = CheckContext {
        seed: args.common.seed,
        budget: args.common.budget,
        n: args.n,
        timing: args.timing,
    };
    let mut reports = Vec::with_capacity(checks.len());
    for c in checks {
        match c.run(&ctx) {
            Ok(r) => reports.push(r),
            Err(e) => return usage_error(format!("{}: {e}", c.name())),
        }
    }
    print!("{}", render(&reports, args.common.format));
    ExitCode::from(exit_code(&reports, args.common.strict) as u8)
}

fn render_span(r: &SpanReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => format!(
            "map: {}\nkind: {}\nn: {}\nachieved_dim: {}\ntarget_dim: {}\nambient_dim: {}\nsaturated: {}\n\
             samples_used: {}\nbudget: {}\nstop_after: {}\nseed: {}\ntolerance.hermitian: {:e}\n\
             tolerance.kernel: {:e}\ntolerance.rank: {:e}\n",
            r.map_name,
            r.kind,
            r.n,
            r.achieved_dim,
            r.target_dim,
            r.ambient_dim,
            r.saturated,
            r.samples_used,
            r.budget,
            r.stop_after,
            r.seed,
            r.tolerances.hermitian,
            r.tolerances.kernel,
            r.tolerances.rank,
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "map", "kind", "n", "achieved_dim", "target_dim", "ambient_dim", "saturated", "samples_used", "budget",
                "stop_after", "seed", "tol_hermitian", "tol_kernel", "tol_rank",
            ])
            .expect("in-memory write");
            w.write_record([
                r.map_name.clone(),
                r.kind.to_string(),
                r.n.to_string(),
                r.achieved_dim.to_string(),
                r.target_dim.to_string(),
                r.ambient_dim.to_string(),
                r.saturated.to_string(),
                r.samples_used.to_string(),
                r.budget.to_string(),
                r.stop_after.to_string(),
                r.seed.to_string(),
                format!("{:e}", r.tolerances.hermitian),
                format!("{:e}", r.tolerances.kernel),
                format!("{:e}", r.tolerances.rank),
            ])
            .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

fn span(args: SpanArgs) -> ExitCode {
    let spec = match parse_map(&args.map) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let map = match spec.build(args.n, args.common.seed, args.form) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let defaults = Tolerances::<f64>::default();
    let config = EstimatorConfig {
        budget: args.common.budget,
        seed: args.common.seed,
        tolerances: Tolerances {
            rank: args.tol_rank.unwrap_or(defaults.rank),
            kernel: args.tol_kernel.unwrap_or(defaults.kernel),
            hermitian: defaults.hermitian,
        },
        ..EstimatorConfig::default()
    };
    let report = match estimate_span(&map, args.kind, &config) {
        Ok(e) => e.report,
        Err(e) => return usage_error(e),
    };
    print!("{}", render_span(&report, args.common.format));
    if args.common.strict && !report.saturated {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn export(map: &str, n: usize, out: &PathBuf, form: MatrixForm, seed: u64) -> ExitCode {
    let spec = match parse_map(map) {
        Ok(MapSpec::File(_)) => return usage_error("export needs a named map"),
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let phi = match spec.build(n, seed, MatrixForm::Superop) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let matrix = match form {
        MatrixForm::Superop => phi.superop().clone(),
        MatrixForm::Choi => phi.choi(),
    };
    match write_matrix(out, &matrix) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Span(args) => span(args),
        Command::Map {
            command: MapCommand::Export { map, n, out, form, seed },
        } => export(&map, n, &out, form, seed),
    }
}
