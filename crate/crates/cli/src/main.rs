use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hamforms::cohomology::{
    betti_report, betti_table, certificate_report, kontsevich_check, support, BettiTableDisplay,
    TheoremCertificate,
};
use hamforms::paper_data::{load_fixtures, replay_w10, replay_w8_and_final, FixtureSet};
use hamforms::{
    gb_linear, AlgebraVariant, CochainComplex, Error, GenOrder, LinearForm, QMatrix, VarOrder,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PIPELINE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "hamforms",
    version,
    about = "Sp-basic Gel'fand-Fuks cohomology of formal Hamiltonian vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Lie algebra: all formal Hamiltonians, or those vanishing at the origin.
    #[arg(long, global = true, value_enum, default_value_t = Variant::Ham0)]
    variant: Variant,

    /// Weight of the graded piece (even, at least 2).
    #[arg(long, global = true, default_value_t = 10, value_parser = parse_weight)]
    weight: i64,

    /// Inclusive degree range `a..b`; defaults to every degree with cochains.
    #[arg(long, global = true, value_parser = parse_degrees)]
    degrees: Option<RangeInclusive<usize>>,

    /// Fixture directory; the copy built into the binary is used otherwise.
    #[arg(long, global = true, env = "HAMFORMS_FIXTURES")]
    fixtures: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Betti table of one weight.
    Betti,
    /// Gröbner basis of the column span of a matrix file.
    Gb { matrix: PathBuf },
    /// Print Sp-basic dimensions and differential matrices.
    Complex,
    /// Test whether omega ^ h is a coboundary in C^7(ham)_8.
    KontsevichCheck {
        /// Rerun with the reversed generator order and compare.
        #[arg(long)]
        self_test: bool,
        /// Write the certificate report to this file.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Replay the reference matrices and Gröbner listings.
    VerifyPaper {
        #[arg(long, value_enum)]
        only: Option<Only>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Ham,
    Ham0,
}

impl From<Variant> for AlgebraVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Ham => AlgebraVariant::Ham,
            Variant::Ham0 => AlgebraVariant::Ham0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Only {
    W10,
    W8,
}

fn parse_weight(s: &str) -> Result<i64, String> {
    let w: i64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if w < 2 || w % 2 != 0 {
        return Err(format!("weight must be even and at least 2, got {w}"));
    }
    Ok(w)
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower degree in `{s}`"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper degree in `{s}`"))?;
    if a > b {
        return Err(format!("empty degree range `{s}`"));
    }
    Ok(a..=b)
}

enum Failure {
    Mismatch(String),
    Pipeline(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mismatch { .. } | Error::Fixture { .. } => Failure::Mismatch(e.to_string()),
            other => Failure::Pipeline(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        },
        Err((out, failure)) => {
            if !out.is_empty() {
                let _ = emit(&cli, &out);
            }
            let (code, msg) = match failure {
                Failure::Mismatch(m) => (EXIT_MISMATCH, m),
                Failure::Pipeline(m) => (EXIT_PIPELINE, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn emit(cli: &Cli, out: &str) -> Result<(), ExitCode> {
    match &cli.output {
        Some(path) => std::fs::write(path, out).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(EXIT_PIPELINE)
        }),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

type RunResult = Result<String, (String, Failure)>;

fn run(cli: &Cli) -> RunResult {
    let fail = |e: Error| (String::new(), Failure::from(e));
    match &cli.command {
        Command::Betti => cmd_betti(cli).map_err(fail),
        Command::Gb { matrix } => cmd_gb(matrix).map_err(fail),
        Command::Complex => cmd_complex(cli).map_err(fail),
        Command::KontsevichCheck {
            self_test,
            emit_certificate,
        } => cmd_kontsevich_check(*self_test, emit_certificate.as_ref()),
        Command::VerifyPaper { only } => cmd_verify_paper(cli, *only),
    }
}

fn build_complex(cli: &Cli) -> hamforms::Result<(CochainComplex, RangeInclusive<usize>)> {
    let c = CochainComplex::new(cli.variant.into(), cli.weight, GenOrder::Standard);
    let degrees = match &cli.degrees {
        Some(r) => r.clone(),
        None => support(&c)?.unwrap_or(0..=0),
    };
    Ok((c, degrees))
}

fn cmd_betti(cli: &Cli) -> hamforms::Result<String> {
    let (c, degrees) = build_complex(cli)?;
    let rows = betti_table(&c, degrees)?;
    let variant = cli.variant.into();
    Ok(match cli.format {
        Format::Table => BettiTableDisplay {
            variant,
            weight: cli.weight,
            rows: &rows,
        }
        .to_string(),
        Format::Report => betti_report(variant, cli.weight, &rows),
    })
}

fn cmd_gb(path: &PathBuf) -> hamforms::Result<String> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture {
        file: path.display().to_string(),
        message: e.to_string(),
    })?;
    let m = QMatrix::parse(&text, &path.display().to_string())?;
    let forms: Vec<LinearForm> = m
        .columns()
        .iter()
        .map(|c| LinearForm::from_vector(c))
        .collect();
    Ok(gb_linear(&forms, &VarOrder::indexed("y", m.rows()))?.to_string())
}

fn cmd_complex(cli: &Cli) -> hamforms::Result<String> {
    let (c, degrees) = build_complex(cli)?;
    let mut s = String::new();
    for k in degrees {
        if k > c.max_degree() + 1 {
            writeln!(s, "C^{k} weight={} dim=0", cli.weight).unwrap();
            continue;
        }
        let b = c.basis(k)?;
        writeln!(
            s,
            "C^{k} weight={} dim={} horizontal={}",
            cli.weight,
            b.dim(),
            b.ambient_dim()
        )
        .unwrap();
        if k <= c.max_degree() {
            writeln!(s, "d_{k}").unwrap();
            write!(s, "{}", c.differential(k)?).unwrap();
        }
    }
    Ok(s)
}

fn cmd_kontsevich_check(self_test: bool, certificate: Option<&PathBuf>) -> RunResult {
    let fail = |out: &str, e: Error| (out.to_string(), Failure::from(e));
    let cert = kontsevich_check(GenOrder::Standard).map_err(|e| fail("", e))?;
    let mut out = certificate_report(&cert);
    if let Some(path) = certificate {
        std::fs::write(path, certificate_report(&cert)).map_err(|e| fail(&out, e.into()))?;
    }
    if self_test {
        let rerun = kontsevich_check(GenOrder::Reversed).map_err(|e| fail(&out, e))?;
        let key = |c: &TheoremCertificate| (c.verdict, c.image_rank, c.augmented_rank);
        if key(&cert) != key(&rerun) {
            return Err((
                out,
                Failure::Mismatch(format!(
                    "reversed generator order gives verdict={} ranks {}/{}",
                    rerun.verdict, rerun.augmented_rank, rerun.image_rank
                )),
            ));
        }
        writeln!(out, "self_test=reversed order agrees").unwrap();
    }
    if !cert.verdict {
        return Err((
            out,
            Failure::Mismatch("omega ^ h lies in the image of d".into()),
        ));
    }
    Ok(out)
}

fn cmd_verify_paper(cli: &Cli, only: Option<Only>) -> RunResult {
    let fx = match &cli.fixtures {
        Some(p) => load_fixtures(p),
        None => FixtureSet::builtin(),
    }
    .map_err(|e| (String::new(), Failure::from(e)))?;
    let mut out = String::new();
    if only != Some(Only::W8) {
        let r = replay_w10(&fx).map_err(|e| (out.clone(), Failure::from(e)))?;
        out.push_str(&r.to_string());
    }
    if only != Some(Only::W10) {
        let r = replay_w8_and_final(&fx).map_err(|e| (out.clone(), Failure::from(e)))?;
        out.push_str(&r.to_string());
    }
    Ok(out)
}
