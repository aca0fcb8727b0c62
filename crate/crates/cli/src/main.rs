use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use slope_atlas::checkerboard::{
    checkerboard_slopes, four_plat_diagram, is_diagonal, pretzel_diagram, slope_sum_identity,
};
use slope_atlas::survey::{to_csv, to_json};
use slope_atlas::verify::Fault;
use slope_atlas::{
    render_svg, slope_report, survey, verify, Error, Fraction, LinkDiagram, PathSelection, Suite, VerifyOptions,
    DEFAULT_PATH_CAP,
};

#[derive(Parser)]
#[command(name = "slope-atlas", version, about = "Boundary slopes of diagonal surfaces in 2-bridge link exteriors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the slope report of one fraction as JSON.
    Info {
        fraction: String,
        /// Largest number of minimal paths to list individually.
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
    },
    /// Tabulate every reduced p/q with 0 < p < q <= max-q.
    Survey {
        #[arg(long)]
        max_q: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check the identities behind the slope formulas up to max-q.
    Verify {
        #[arg(long)]
        max_q: u64,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Corrupt a quantity on purpose to confirm the checks notice.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Draw the quad chain and minimal paths as SVG.
    Render {
        fraction: String,
        #[arg(long, default_value = "extremes")]
        paths: PathSelection,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
    },
    /// Checkerboard surface slopes of an alternating diagram.
    Checkerboard {
        #[command(flatten)]
        source: DiagramSource,
        /// Report the slopes of the mirror image.
        #[arg(long)]
        mirror: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramSource {
    /// JSON crossing list.
    #[arg(long)]
    diagram: Option<PathBuf>,
    /// The 4-plat diagram of a 2-bridge link.
    #[arg(long)]
    four_plat: Option<String>,
    /// Comma-separated pretzel twist counts, e.g. 3,2,3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pretzel: Option<Vec<i64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Sigma0,
}

enum Failure {
    Verification(String),
    Input(String),
    Cap(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Cap(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Inconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn parse_target(s: &str) -> Result<Fraction, Failure> {
    let f = Fraction::parse_reduced(s)?;
    f.check_unit_interior()?;
    Ok(f)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn pretty(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info { fraction, cap } => {
            let f = parse_target(&fraction)?;
            let report = slope_report(&f, cap)?;
            let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
            text.push('\n');
            emit(None, &text)?;
            if report.truncated {
                return Err(Failure::Cap(format!(
                    "{f} has {} minimal paths, more than the cap of {cap}; only the extreme paths are listed",
                    report.path_count
                )));
            }
        }
        Command::Survey { max_q, format, out, jobs } => {
            if max_q < 2 {
                return Err(Failure::Input("--max-q must be at least 2".into()));
            }
            if jobs == Some(0) {
                return Err(Failure::Input("--jobs must be positive".into()));
            }
            let rows = survey(max_q, jobs)?;
            let text = match format {
                Format::Csv => to_csv(&rows),
                Format::Json => to_json(&rows),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Verify { max_q, suite, inject_fault } => {
            let mut opts = VerifyOptions::new(max_q, suite);
            opts.fault = inject_fault.map(|FaultArg::Sigma0| Fault::Sigma0OffByOne);
            let report = verify(&opts);
            emit(None, &report.to_string())?;
            if let Some(fail) = report.first_failure() {
                return Err(Failure::Verification(fail.to_string()));
            }
        }
        Command::Render { fraction, paths, out, cap } => {
            let f = parse_target(&fraction)?;
            let svg = render_svg(&f, paths, cap)?;
            emit(Some(&out), &svg)?;
        }
        Command::Checkerboard { source, mirror } => {
            let diagram = if let Some(path) = &source.diagram {
                let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
                LinkDiagram::from_json(&text)?
            } else if let Some(s) = &source.four_plat {
                four_plat_diagram(&parse_target(s)?)?
            } else {
                pretzel_diagram(source.pretzel.as_deref().unwrap_or_default())?
            };
            let diagram = if mirror { diagram.mirror() } else { diagram };
            let slopes = checkerboard_slopes(&diagram)?;
            let (s_diag, t_diag) = is_diagonal(&slopes);
            let out = json!({
                "n": diagram.n,
                "crossings": diagram.crossing_count(),
                "reduced_alternating": diagram.reduced_alternating,
                "mirror": mirror,
                "s": slopes.s,
                "t": slopes.t,
                "diagonal": [s_diag, t_diag],
                "slope_sum_identity": slope_sum_identity(&diagram)?,
            });
            emit(None, &pretty(out))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("slope-atlas: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
