//! Command-line front end for `ehrhart-core`.
//!
//! Structures go out as JSON, region scans as CSV. [`run`] maps a command
//! line to an exit code: 0 on success, 2 for usage or validation errors and
//! 1 for internal failures.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ehrhart_core::constructions::{
    heptagon_h, period_polygon, pip_b1, pip_b2, scott_polygon_with_bound, triangle_q, Claim,
    ConstructionCertificate, DEFAULT_SCOTT_BOUND,
};
use ehrhart_core::ehrhart::{ehrhart_qp, index_sequence, period_sequence, pip_report};
use ehrhart_core::lattice::{boundary_interior, count_lattice_points, oracle_count};
use ehrhart_core::reflexive::{extract_word, polar_dual, reconstruct_path, reflexivity_report, word_product, GeneratorWord};
use ehrhart_core::scan::{pip_scan, scott_map};
use ehrhart_core::{Error, Point2, RationalPolygon};

#[derive(Debug, Parser)]
#[command(name = "ehrhart-lab", version, about = "Exact Ehrhart theory for rational polygons")]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice points of nP by column scan.
    Count(CountArgs),
    /// Lattice points of nP by brute force over the bounding box.
    OracleCount(CountArgs),
    /// Fitted Ehrhart quasi-polynomial.
    Ehrhart(PolygonArg),
    /// Period sequence, quasi-period and index sequence.
    Periods(PolygonArg),
    /// Index sequence.
    Indices(PolygonArg),
    /// Pseudo-integrality report.
    PipReport(PolygonArg),
    /// Explicit constructions with certificates.
    #[command(subcommand)]
    Construct(Construct),
    /// Polar dual.
    Dual(PolygonArg),
    /// Reflexivity report.
    Reflexive(PolygonArg),
    /// Generator words of pseudo-reflexive polygons.
    #[command(subcommand)]
    Word(WordCommand),
    /// CSV map of realizable (I, b) pairs.
    ScottMap(ScottMapArgs),
    /// CSV of pseudo-integral triangles on rational grids.
    PipScan(PipScanArgs),
}

#[derive(Debug, Args)]
pub struct PolygonArg {
    /// Polygon JSON file, or `-` for stdin.
    pub polygon: PathBuf,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Polygon JSON file, or `-` for stdin.
    pub polygon: PathBuf,
    /// Dilation factor.
    #[arg(short, long, default_value_t = 1)]
    pub n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Integral polygon with I interior and b boundary points.
    Scott {
        #[arg(long = "I", visible_alias = "interior")]
        interior: u64,
        #[arg(long = "b", visible_alias = "boundary")]
        boundary: u64,
        #[arg(long, default_value_t = DEFAULT_SCOTT_BOUND)]
        bound: i64,
    },
    /// PIP with one boundary point.
    PipB1 {
        #[arg(long = "I", visible_alias = "interior")]
        interior: u64,
    },
    /// PIP with two boundary points.
    PipB2 {
        #[arg(long = "I", visible_alias = "interior")]
        interior: u64,
    },
    /// Heptagon with period sequence (1, s, 1).
    Heptagon {
        #[arg(long)]
        s: u64,
    },
    /// Triangle with period sequence (r, 1, 1).
    TriangleQ {
        #[arg(long)]
        r: u64,
    },
    /// Polygon with period sequence (r, s, 1).
    Period {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordCommand {
    /// Word of a pseudo-reflexive polygon.
    Extract(PolygonArg),
    /// Matrix product of a word.
    Product(WordArg),
    /// Path traced by a word.
    Reconstruct(WordArg),
}

#[derive(Debug, Args)]
pub struct WordArg {
    /// Word JSON file, or `-` for stdin.
    pub word: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScottMapArgs {
    #[arg(long = "max-I")]
    pub max_interior: u64,
    #[arg(long = "max-b")]
    pub max_boundary: u64,
    /// Add the column for pairs realized by known PIP families.
    #[arg(long)]
    pub pips: bool,
}

#[derive(Debug, Args)]
pub struct PipScanArgs {
    #[arg(long = "max-den")]
    pub max_denominator: u64,
    /// Vertices range over [−bound, bound]².
    #[arg(long = "coord-bound")]
    pub coordinate_bound: u64,
    #[arg(long = "dilate-bound", default_value_t = 8)]
    pub dilate_bound: u64,
}

/// Failure of a single command.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_input(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_polygon(path: &Path) -> CliResult<RationalPolygon> {
    read_json(path)
}

fn json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec(value).map_err(|e| CliError::Io(e.into()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Serialize)]
struct CountOutput {
    n: u64,
    count: u64,
}

#[derive(Serialize)]
struct PeriodsOutput {
    s: [u64; 3],
    quasi_period: u64,
    j: [u64; 3],
}

#[derive(Serialize)]
struct ProductOutput {
    matrix: ehrhart_core::Mat2,
    identity: bool,
}

fn certificate_with_periods(polygon: RationalPolygon, expected: [u64; 3]) -> CliResult<ConstructionCertificate> {
    let verified = period_sequence(&ehrhart_qp(&polygon)?).s == expected;
    Ok(ConstructionCertificate {
        polygon,
        claim: Claim::PeriodSequence(expected),
        verified,
    })
}

fn construct(cmd: &Construct) -> CliResult<ConstructionCertificate> {
    Ok(match *cmd {
        Construct::Scott { interior, boundary, bound } => {
            let polygon = scott_polygon_with_bound(interior, boundary, bound)?;
            let counts = boundary_interior(&polygon);
            let verified = polygon.is_integral() && (counts.interior, counts.boundary) == (interior, boundary);
            ConstructionCertificate {
                polygon,
                claim: Claim::Pip { interior, boundary },
                verified,
            }
        }
        Construct::PipB1 { interior } => pip_b1(interior)?,
        Construct::PipB2 { interior } => pip_b2(interior)?,
        Construct::Heptagon { s } => certificate_with_periods(heptagon_h(s)?.polygon, [1, s, 1])?,
        Construct::TriangleQ { r } => certificate_with_periods(triangle_q(r, &Point2::origin())?, [r, 1, 1])?,
        Construct::Period { r, s } => period_polygon(r, s)?,
    })
}

fn scott_map_csv(args: &ScottMapArgs) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["I", "b", "realizable_integral"];
    if args.pips {
        header.push("realizable_pip_known");
    }
    w.write_record(&header)?;
    for row in scott_map(args.max_interior, args.max_boundary, args.pips) {
        let mut record = vec![row.interior.to_string(), row.boundary.to_string(), row.realizable_integral.to_string()];
        if let Some(known) = row.realizable_pip_known {
            record.push(known.to_string());
        }
        w.write_record(&record)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

fn pip_scan_csv(args: &PipScanArgs) -> CliResult<Vec<u8>> {
    let rows = pip_scan(args.max_denominator, args.coordinate_bound, args.dilate_bound)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["I", "b", "vertices"])?;
    for row in rows {
        let vertices = serde_json::to_string(&row.vertices).map_err(|e| CliError::Io(e.into()))?;
        w.write_record([row.interior.to_string(), row.boundary.to_string(), vertices])?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

/// Runs one parsed command and returns the bytes to emit.
pub fn execute(command: &Command) -> CliResult<Vec<u8>> {
    match command {
        Command::Count(args) => {
            let p = read_polygon(&args.polygon)?;
            json(&CountOutput { n: args.n, count: count_lattice_points(&p, args.n) })
        }
        Command::OracleCount(args) => {
            let p = read_polygon(&args.polygon)?;
            json(&CountOutput { n: args.n, count: oracle_count(&p, args.n) })
        }
        Command::Ehrhart(args) => json(&ehrhart_qp(&read_polygon(&args.polygon)?)?),
        Command::Periods(args) => {
            let p = read_polygon(&args.polygon)?;
            let periods = period_sequence(&ehrhart_qp(&p)?);
            json(&PeriodsOutput {
                s: periods.s,
                quasi_period: periods.quasi_period,
                j: index_sequence(&p).j,
            })
        }
        Command::Indices(args) => json(&index_sequence(&read_polygon(&args.polygon)?)),
        Command::PipReport(args) => json(&pip_report(&read_polygon(&args.polygon)?)?),
        Command::Construct(cmd) => json(&construct(cmd)?),
        Command::Dual(args) => json(&polar_dual(&read_polygon(&args.polygon)?)?),
        Command::Reflexive(args) => json(&reflexivity_report(&read_polygon(&args.polygon)?)?),
        Command::Word(WordCommand::Extract(args)) => json(&extract_word(&read_polygon(&args.polygon)?)?),
        Command::Word(WordCommand::Product(args)) => {
            let word: GeneratorWord = read_json(&args.word)?;
            word.validate()?;
            let matrix = word_product(&word);
            let identity = matrix.is_identity();
            json(&ProductOutput { matrix, identity })
        }
        Command::Word(WordCommand::Reconstruct(args)) => {
            let word: GeneratorWord = read_json(&args.word)?;
            json(&reconstruct_path(&word)?)
        }
        Command::ScottMap(args) => scott_map_csv(args),
        Command::PipScan(args) => pip_scan_csv(args),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            // help and version go to stdout with exit code 0
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|bytes| match &cli.output {
        Some(path) => fs::write(path, bytes).map_err(CliError::from),
        None => stdout.write_all(&bytes).map_err(CliError::from),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
