//! `polycauchy`: r-Stirling tables, poly-Cauchy sequences, transforms and
//! identity verification from the command line.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage error, 3 input parse error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polycauchy::export::{self, Format};
use polycauchy::identities::{
    run_suite, suite_passed, IdentityId, IdentityReport, IntRange, ParamBox,
};
use polycauchy::sequences::{harmonic, PolyCauchySpec, Variant};
use polycauchy::transforms::{binomial_transform, r_stirling_transform, stirling_transform};
use polycauchy::{Error, Kind, RatSequence, Rational};

const EXIT_IDENTITY_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "polycauchy",
    version,
    about = "r-Stirling numbers, poly-Cauchy numbers and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// First index written in b-file output (defaults to the sequence's own offset).
    #[arg(long, global = true, allow_negative_numbers = true)]
    offset: Option<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
    Bfile,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
            OutputFormat::Bfile => Format::Bfile,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print rows r..=n-max of an r-Stirling triangle.
    Table(TableArgs),
    /// Print the first terms of a poly-Cauchy or harmonic sequence.
    Seq(SeqArgs),
    /// Apply a sequence transform to rationals read from a file or stdin.
    Transform(TransformArgs),
    /// Check identities over a parameter box.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Stirling1,
    Stirling2,
}

#[derive(Args, Debug)]
struct TableArgs {
    kind: TableKind,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long)]
    n_max: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Pc1,
    Pc2,
    Pc1Poly,
    Pc2Poly,
    Pc1Shifted,
    Pc2Shifted,
    Harmonic,
}

#[derive(Args, Debug)]
struct SeqArgs {
    family: Family,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long)]
    count: usize,
    /// Argument of the polynomial families.
    #[arg(long, allow_negative_numbers = true)]
    z: Option<Rational>,
    /// Shift of the shifted families (must be positive).
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TransformKind {
    Binomial,
    Stirling,
    Rstirling,
}

#[derive(Args, Debug)]
struct TransformArgs {
    kind: TransformKind,
    /// Required for `rstirling`.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    invert: bool,
    /// Input file; stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity ids, e.g. TH1 COR1.
    ids: Vec<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 12)]
    n_max: i64,
    #[arg(long, default_value_t = 4)]
    r_max: i64,
    #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
    k_min: i64,
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    k_max: i64,
    /// Comma-separated polynomial arguments.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    q: Option<Vec<Rational>>,
    /// Comma-separated shifts.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<Rational>>,
    /// First seed of the randomized round trips.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Failing tuples listed per identity in text output.
    #[arg(long, default_value_t = 5)]
    max_failures: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input { .. } => CliError::Input(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.text) {
            Ok(()) => ExitCode::from(outcome.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = Format::from(cli.format);
    let ok = |text| Ok(Outcome { text, code: 0 });
    match &cli.command {
        Command::Table(a) => {
            let kind = match a.kind {
                TableKind::Stirling1 => Kind::First,
                TableKind::Stirling2 => Kind::Second,
            };
            ok(export::render_triangle(kind, a.r, a.n_max, format)?)
        }
        Command::Seq(a) => {
            let seq = sequence(a)?;
            ok(export::render_sequence(
                &seq,
                format,
                cli.offset.unwrap_or(seq.offset as i64),
            )?)
        }
        Command::Transform(a) => {
            let seq = transform(a)?;
            ok(export::render_sequence(
                &seq,
                format,
                cli.offset.unwrap_or(seq.offset as i64),
            )?)
        }
        Command::Verify(a) => verify(a, format),
    }
}

fn sequence(a: &SeqArgs) -> Result<RatSequence, CliError> {
    use Family::*;
    let name = a
        .family
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let needs_z = matches!(a.family, Pc1Poly | Pc2Poly);
    let needs_alpha = matches!(a.family, Pc1Shifted | Pc2Shifted);
    match (needs_z, &a.z) {
        (true, None) => return Err(CliError::Usage(format!("{name} requires --z"))),
        (false, Some(_)) => {
            return Err(CliError::Usage(
                "--z applies only to pc1-poly and pc2-poly".into(),
            ))
        }
        _ => {}
    }
    match (needs_alpha, &a.alpha) {
        (true, None) => return Err(CliError::Usage(format!("{name} requires --alpha"))),
        (false, Some(_)) => {
            return Err(CliError::Usage(
                "--alpha applies only to pc1-shifted and pc2-shifted".into(),
            ))
        }
        _ => {}
    }
    if a.family == Harmonic {
        if a.k < 1 {
            return Err(CliError::Usage(format!(
                "harmonic order --k must be >= 1, got {}",
                a.k
            )));
        }
        return Ok(RatSequence::with_offset(
            1,
            (1..=a.count).map(|n| harmonic(n, a.k)).collect(),
        ));
    }
    let kind = if matches!(a.family, Pc1 | Pc1Poly | Pc1Shifted) {
        Kind::First
    } else {
        Kind::Second
    };
    let variant = match (&a.z, &a.alpha) {
        (Some(z), _) => Variant::Polynomial(z.clone()),
        (_, Some(alpha)) => Variant::Shifted(alpha.clone()),
        _ => Variant::Number,
    };
    Ok(RatSequence::new(
        PolyCauchySpec::new(kind, a.k, variant)?.values(a.count),
    ))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn transform(a: &TransformArgs) -> Result<RatSequence, CliError> {
    match (a.kind, a.r) {
        (TransformKind::Rstirling, None) => {
            return Err(CliError::Usage("rstirling requires --r".into()))
        }
        (TransformKind::Binomial | TransformKind::Stirling, Some(_)) => {
            return Err(CliError::Usage("--r applies only to rstirling".into()))
        }
        _ => {}
    }
    let input = export::parse_sequence(&read_input(a.input.as_ref())?)?;
    let out = match a.kind {
        TransformKind::Binomial => binomial_transform(&input, a.invert)?,
        TransformKind::Stirling => stirling_transform(&input, a.invert)?,
        TransformKind::Rstirling => {
            r_stirling_transform(&input, a.r.expect("checked above"), a.invert)?
        }
    };
    Ok(out)
}

fn verify(a: &VerifyArgs, format: Format) -> Result<Outcome, CliError> {
    let ids: Vec<IdentityId> = match (a.all, a.ids.is_empty()) {
        (true, true) => IdentityId::ALL.to_vec(),
        (true, false) => {
            return Err(CliError::Usage(
                "give identity ids or --all, not both".into(),
            ))
        }
        (false, true) => {
            return Err(CliError::Usage(format!(
                "no identities given; valid ids: {}",
                valid_ids()
            )))
        }
        (false, false) => a
            .ids
            .iter()
            .map(|s| {
                s.parse::<IdentityId>().map_err(|_| {
                    CliError::Usage(format!(
                        "unknown identity {s:?}; valid ids: {}",
                        valid_ids()
                    ))
                })
            })
            .collect::<Result<_, _>>()?,
    };
    let desk = ParamBox::desk();
    let pbox = ParamBox {
        n_range: IntRange::new(0, a.n_max)?,
        r_range: IntRange::new(0, a.r_max)?,
        k_range: IntRange::new(a.k_min, a.k_max)?,
        q_values: a.q.clone().unwrap_or(desk.q_values),
        alpha_values: a.alpha.clone().unwrap_or(desk.alpha_values),
        seed: a.seed,
        ..desk
    };
    pbox.validate()?;
    let reports = run_suite(&ids, &pbox);
    for r in reports.iter().filter(|r| r.vacuous) {
        eprintln!("warning: {} checked no tuples in this box", r.id);
    }
    let text = match format {
        Format::Json => export::reports_to_json(&reports)?,
        Format::Text => export::reports_to_text(&reports, a.max_failures),
        Format::Csv | Format::Bfile => {
            return Err(CliError::Usage(
                "verify supports --format text or json".into(),
            ))
        }
    };
    Ok(Outcome {
        text,
        code: exit_code(&reports),
    })
}

fn exit_code(reports: &[IdentityReport]) -> u8 {
    if suite_passed(reports) {
        0
    } else {
        EXIT_IDENTITY_FAILURE
    }
}

fn valid_ids() -> String {
    IdentityId::valid_names().join(", ")
}
