//! `fknot`: sample, analyze, draw and fit Fourier knots.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | any other error |
//! | 2 | usage error |
//! | 3 | malformed input (spec file, CSV, codes) |
//! | 4 | I/O error |
//! | 5 | curve not certifiably embedded |
//! | 6 | no generic projection found |
//! | 7 | too few samples / polyline not closed |
//! | 8 | `paper-suite` had a failing claim |

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fourier_knots::claims::{run_suite, SuiteOptions};
use fourier_knots::geometry::{read_curve_csv, sample, write_curve_csv, ProjectionFrame};
use fourier_knots::nalgebra::Vector3;
use fourier_knots::pipeline::{analyze, PipelineOptions, DEFAULT_CHORD};
use fourier_knots::render::render_svg;
use fourier_knots::specfile::{parse_knot_spec, write_knot_spec};
use fourier_knots::{
    fibonacci_knot, fourier_approximate, fourier_figure_eight, fourier_trefoil, lissajous, torus_knot_fourier, Error,
    FourierKnot, RationalFreq,
};

#[derive(Parser)]
#[command(name = "fknot", version, about = "Knots as finite Fourier series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a knot into a CSV polyline.
    Sample(RunArgs),
    /// Compute invariants and identify the knot.
    Invariants(RunArgs),
    /// Draw the projected diagram with broken under-strands.
    Svg(RunArgs),
    /// Fit a Fourier knot to a closed CSV polyline.
    Approximate(ApproxArgs),
    /// Run every reproduced claim and print a summary table.
    PaperSuite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Trefoil,
    Figure8,
    Fibonacci,
    Torus,
    Lissajous,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Pd,
    Gauss,
    Report,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in knot family.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    builtin: Option<Builtin>,
    /// Knot spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Fibonacci index.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Lissajous frequencies `k1,k2,k3` (rationals allowed).
    #[arg(long, value_delimiter = ',', default_values = ["3", "2", "7"])]
    freqs: Vec<String>,
    /// Lissajous phases.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.7, 0.0], allow_hyphen_values = true)]
    phases: Vec<f64>,
    /// Lissajous amplitudes.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.0, 1.0], allow_hyphen_values = true)]
    amps: Vec<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Target chord length.
    #[arg(long, default_value_t = DEFAULT_CHORD)]
    chord: f64,
    /// Viewing direction `dx,dy,dz`; disables the fallback search.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    frame: Option<Vec<f64>>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Output files to write (default depends on the command).
    #[arg(long, value_delimiter = ',')]
    formats: Option<Vec<Format>>,
}

#[derive(Args)]
struct ApproxArgs {
    /// Closed polyline CSV (`t,x,y,z`).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    harmonics: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CHORD)]
    chord: f64,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::Parse { .. } | Error::Csv(_) | Error::MalformedPd(_) | Error::MalformedGauss(_) | Error::InconsistentArcs(_) => 3,
            Error::NotEmbedded { .. } => 5,
            Error::NoGenericProjection { .. } | Error::NonGenericProjection(_) => 6,
            Error::TooFewSamples { .. } | Error::NotClosed { .. } => 7,
            _ => 1,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 4;
    }
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    1
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn triple<T: Copy>(flag: &str, v: &[T]) -> anyhow::Result<[T; 3]> {
    <[T; 3]>::try_from(v).map_err(|_| usage(format!("--{flag} takes exactly three comma-separated values")))
}

fn build_knot(input: &InputArgs) -> anyhow::Result<FourierKnot> {
    if let Some(path) = &input.spec {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(parse_knot_spec(&text)?);
    }
    let knot = match input.builtin.expect("clap requires builtin or spec") {
        Builtin::Trefoil => fourier_trefoil(),
        Builtin::Figure8 => fourier_figure_eight(),
        Builtin::Fibonacci => fibonacci_knot(input.n.ok_or_else(|| usage("--builtin fibonacci needs --n"))?)?,
        Builtin::Torus => {
            let (Some(p), Some(q)) = (input.p, input.q) else {
                return Err(usage("--builtin torus needs --p and --q"));
            };
            torus_knot_fourier(p, q)?
        }
        Builtin::Lissajous => {
            let k: Vec<RationalFreq> = input.freqs.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            let k = triple("freqs", &k)?;
            let l = triple("phases", &input.phases)?;
            let a = triple("amps", &input.amps)?;
            lissajous(k[0], k[1], k[2], l[0], l[1], l[2], a[0], a[1], a[2])?
        }
    };
    Ok(knot)
}

fn stem(knot: &FourierKnot) -> String {
    let s: String = knot
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let s = s.trim_matches('_').to_string();
    if s.is_empty() { "knot".into() } else { s }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn pipeline_options(args: &RunArgs) -> anyhow::Result<PipelineOptions> {
    if !(args.chord > 0.0 && args.chord.is_finite()) {
        return Err(usage("--chord must be positive"));
    }
    let mut opts = PipelineOptions { chord: args.chord, ..PipelineOptions::default() };
    if let Some(d) = &args.frame {
        let d = triple("frame", d)?;
        let frame = ProjectionFrame::from_direction(Vector3::new(d[0], d[1], d[2]))
            .ok_or_else(|| usage("--frame must be a nonzero direction"))?;
        opts.frames = vec![frame];
        opts.fallback = false;
    }
    Ok(opts)
}

fn cmd_sample(args: &RunArgs) -> anyhow::Result<()> {
    let opts = pipeline_options(args)?;
    let knot = build_knot(&args.input)?;
    let curve = sample(&knot, opts.chord)?;
    let path = args.out_dir.join(format!("{}.csv", stem(&knot)));
    write_atomic(&path, &write_curve_csv(&curve))?;
    println!("period = {:?}", curve.period());
    println!("points = {}", curve.len());
    println!("speed_bound = {:?}", knot.speed_bound());
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_analyze(args: &RunArgs, default: &[Format]) -> anyhow::Result<()> {
    let opts = pipeline_options(args)?;
    let knot = build_knot(&args.input)?;
    let a = analyze(&knot, &opts)?;
    let name = stem(&knot);
    let formats = args.formats.as_deref().unwrap_or(default);
    for f in [Format::Csv, Format::Svg, Format::Pd, Format::Gauss, Format::Report] {
        if !formats.contains(&f) {
            continue;
        }
        let (ext, text) = match f {
            Format::Csv => ("csv", write_curve_csv(&a.curve)),
            Format::Svg => ("svg", render_svg(&a.curve, &a.frame, &a.diagram)?),
            Format::Pd => ("pd", format!("{}\n", a.diagram.pd_code())),
            Format::Gauss => ("gauss", format!("{}\n", a.diagram.gauss_code())),
            Format::Report => ("report", a.report.to_key_value()),
        };
        let path = args.out_dir.join(format!("{name}.{ext}"));
        write_atomic(&path, &text)?;
        eprintln!("wrote {}", path.display());
    }
    println!("{}", a.report.to_record());
    Ok(())
}

fn cmd_approximate(args: &ApproxArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let curve = read_curve_csv(&text)?;
    let fit = fourier_approximate(&curve, args.harmonics)?;
    let path = args.out_dir.join(format!("{}.knot", fit.knot.name));
    write_atomic(&path, &write_knot_spec(&fit.knot))?;
    println!("max_deviation = {:?}", fit.max_deviation);
    println!("wrote {}", path.display());
    let opts = PipelineOptions { chord: args.chord, ..PipelineOptions::default() };
    let a = analyze(&fit.knot, &opts)?;
    println!("verdict = {}", a.report.verdict);
    Ok(())
}

fn cmd_paper_suite() -> anyhow::Result<bool> {
    let outcomes = run_suite(&SuiteOptions::default());
    println!("claim\tstatus\ttime\tdescription\texpected\tgot");
    for o in &outcomes {
        println!(
            "{}\t{}\t{:.2?}\t{}\t{}\t{}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed,
            o.claim,
            o.expected,
            o.got
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} claims passed", outcomes.len() - failed, outcomes.len());
    Ok(failed == 0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Sample(a) => cmd_sample(&a)?,
        Command::Invariants(a) => cmd_analyze(&a, &[Format::Report])?,
        Command::Svg(a) => cmd_analyze(&a, &[Format::Svg])?,
        Command::Approximate(a) => cmd_approximate(&a)?,
        Command::PaperSuite => {
            if !cmd_paper_suite()? {
                return Ok(8);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
