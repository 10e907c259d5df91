use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use layerset::bench::{self, BenchConfig};
use layerset::numtheory::{self, sieve};
use layerset::par::Execution;
use layerset::raster::{self, GridSpec, PgmEncoding};
use layerset::selfcheck;
use layerset::setlang::{self, Backend, CompiledProgram, Context, Program, Query, UniverseKind};
use layerset::Point;

#[derive(Parser)]
#[command(name = "layerset", version, about = "Set algebra and layer queries through the B-function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Tomography,
    Whitney,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Tomography => Backend::Tomography,
            BackendArg::Whitney => Backend::Whitney,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pgm,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every query of a program at the given probes.
    Eval {
        program: PathBuf,
        /// `1.5` on the real line, `x,y` in the plane, `7` on the naturals.
        #[arg(long = "probe", required = true, allow_hyphen_values = true)]
        probes: Vec<String>,
        #[arg(long, value_enum, default_value = "tomography")]
        backend: BackendArg,
    },
    /// Sample a plane query on a grid and write a PGM or CSV file.
    Raster {
        program: PathBuf,
        /// Query to draw; defaults to the first `count` query, else the first query.
        #[arg(long)]
        query: Option<String>,
        /// `x_min,y_min,x_max,y_max`
        #[arg(long, default_value = "-3.75,-3.75,3,3", allow_hyphen_values = true)]
        region: String,
        /// `WIDTHxHEIGHT`
        #[arg(long, default_value = "600x600")]
        size: String,
        #[arg(long, value_enum, default_value = "pgm")]
        format: Format,
        /// Binary P5 instead of ASCII P2.
        #[arg(long)]
        binary: bool,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "tomography")]
        backend: BackendArg,
        /// Evaluate rows on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Count primes up to N with the B-function formula and a sieve.
    Primes { n: u64 },
    /// Compare n-term and 2^n - 1 term union evaluation.
    Bench {
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long, default_value_t = 32)]
        probes: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the report as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Minimum wall time per timing sample, in milliseconds.
        #[arg(long, default_value_t = 20)]
        sample_ms: u64,
    },
    /// Run the embedded invariant suites.
    Check {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

/// Exit status 2 with a message.
struct Usage(String);

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<(String, Program), Usage> {
    let source = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let program =
        setlang::parse_program(&source).map_err(|e| Usage(e.render(&source, &path.display().to_string())))?;
    Ok((source, program))
}

fn eval(path: &Path, probes: &[String], backend: Backend) -> Result<ExitCode, Usage> {
    let (_, program) = load(path)?;
    let compiled = CompiledProgram::compile(&program, backend).map_err(|e| Usage(e.to_string()))?;
    for (i, query) in program.queries.iter().enumerate() {
        for probe in probes {
            let value = compiled.eval_text(i, probe).map_err(|e| Usage(e.to_string()))?;
            println!("{query} at ({}) = {value}", probe.trim());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_numbers<const N: usize>(text: &str, sep: char, what: &str) -> Result<[f64; N], Usage> {
    let parts: Vec<f64> = text
        .split(sep)
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Usage(format!("bad {what} `{text}`")))?;
    parts.try_into().map_err(|_| Usage(format!("{what} `{text}` needs {N} values")))
}

fn default_query(program: &Program) -> Result<Query, Usage> {
    program
        .queries
        .iter()
        .find(|q| matches!(q, Query::Count(_)))
        .or_else(|| program.queries.first())
        .cloned()
        .ok_or_else(|| Usage("program has no queries; pass --query".into()))
}

struct RasterArgs<'a> {
    path: &'a Path,
    query: Option<&'a str>,
    region: &'a str,
    size: &'a str,
    format: Format,
    binary: bool,
    output: &'a Path,
    backend: Backend,
    exec: Execution,
}

fn raster(args: RasterArgs<'_>) -> Result<ExitCode, Usage> {
    let (_, program) = load(args.path)?;
    if program.universe != UniverseKind::Plane {
        return Err(Usage(format!("raster needs universe plane, not {}", program.universe)));
    }
    let query = match args.query {
        Some(text) => setlang::parse_query(&program, text).map_err(|e| Usage(e.render(text, "--query")))?,
        None => default_query(&program)?,
    };
    let [x0, y0, x1, y1] = parse_numbers::<4>(args.region, ',', "region")?;
    let [w, h] = parse_numbers::<2>(args.size, 'x', "size")?;
    if w.fract() != 0.0 || h.fract() != 0.0 || w < 1.0 || h < 1.0 {
        return Err(Usage(format!("bad size `{}`", args.size)));
    }
    let spec = GridSpec::new(x0, y0, x1, y1, w as usize, h as usize).map_err(|e| Usage(e.to_string()))?;
    let ctx = Context::<Point>::new(&program, args.backend).map_err(|e| Usage(e.to_string()))?;
    let compiled = ctx.query(&query).map_err(|e| Usage(e.to_string()))?;
    let grid = raster::rasterize(&compiled, &spec, args.exec);

    let file = File::create(args.output).map_err(|e| Usage(format!("{}: {e}", args.output.display())))?;
    let mut out = BufWriter::new(file);
    match args.format {
        Format::Pgm => {
            let enc = if args.binary { PgmEncoding::Binary } else { PgmEncoding::Ascii };
            raster::write_pgm(&grid, enc, &mut out)?;
        }
        Format::Csv => raster::write_csv(&grid, &mut out)?,
    }
    out.flush()?;
    eprintln!("{query}: {}x{} grid written to {}", grid.width(), grid.height(), args.output.display());
    Ok(ExitCode::SUCCESS)
}

const PRIMES_CAP: u64 = 1_000_000;

fn primes(n: u64) -> Result<ExitCode, Usage> {
    if !(2..=PRIMES_CAP).contains(&n) {
        return Err(Usage(format!("N must be in 2..={PRIMES_CAP}, got {n}")));
    }
    let formula = numtheory::prime_count(n).map_err(|e| Usage(e.to_string()))?;
    let oracle = sieve::prime_count(n);
    println!("N = {n}");
    println!("formula: {formula}");
    println!("sieve:   {oracle}");
    if formula == oracle {
        println!("match");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("MISMATCH");
        Ok(ExitCode::from(1))
    }
}

fn bench_cmd(cfg: BenchConfig, csv: Option<&Path>) -> Result<ExitCode, Usage> {
    let report = bench::run(&cfg).map_err(|e| Usage(e.to_string()))?;
    print!("{}", report.table());
    if let Some(path) = csv {
        fs::write(path, report.to_csv()).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    }
    let law = report
        .rows
        .iter()
        .all(|r| r.whitney_terms == bench::expected_terms(r.n) && r.bform_calls == r.n as u64);
    Ok(if law && report.all_agree() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn check(seed: u64) -> ExitCode {
    let results = selfcheck::run_all(selfcheck::production_b, seed);
    for r in &results {
        println!("{r}");
    }
    if results.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval { program, probes, backend } => eval(&program, &probes, backend.into()),
        Command::Raster { program, query, region, size, format, binary, output, backend, sequential } => {
            raster(RasterArgs {
                path: &program,
                query: query.as_deref(),
                region: &region,
                size: &size,
                format,
                binary,
                output: &output,
                backend: backend.into(),
                exec: if sequential { Execution::Sequential } else { Execution::Parallel },
            })
        }
        Command::Primes { n } => primes(n),
        Command::Bench { n_max, probes, seed, csv, sample_ms } => bench_cmd(
            BenchConfig { n_max, probes_per_n: probes, seed, min_sample: Duration::from_millis(sample_ms) },
            csv.as_deref(),
        ),
        Command::Check { seed } => Ok(check(seed)),
    };
    match outcome {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
