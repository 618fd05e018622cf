//! `frieze`: build, recover, validate and enumerate frieze patterns from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or malformed input,
//! 3 mathematically invalid input (not a frieze, not in the image of Φ, path
//! not closed).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use frieze_core::dissection::{integrality_check, minimal_level, recovery_report};
use frieze_core::farey::{render_farey_svg, walk_vertices, SvgOptions};
use frieze_core::frieze::{quiddity_of, render_pattern_text};
use frieze_core::io::{dissection_from_json, dissection_to_json, frieze_from_json, frieze_to_json, quiddity_from_json, quiddity_to_json};
use frieze_core::polygon::{enumerate_dissections, enumerate_p_angulations};
use frieze_core::ring::DEFAULT_PRECISION_START;
use frieze_core::{
    closed_path_check, frieze_from_quiddity, phi_minimal, recover_dissection, turn_count_check, ContextRegistry, Error,
    QuiddityRow,
};

#[derive(Debug, Parser)]
#[command(name = "frieze", version, about = "Exact frieze patterns from polygon dissections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Render {
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the frieze Φ(D) of a dissection file.
    Build {
        #[arg(long, value_name = "FILE")]
        dissection: PathBuf,
        /// Also print the frieze pattern.
        #[arg(long, value_enum)]
        render: Option<Render>,
        /// Number of periods shown by --render text.
        #[arg(long, default_value_t = 2, requires = "render")]
        periods: usize,
        /// Also print the quiddity row as a quiddity file.
        #[arg(long)]
        quiddity: bool,
        /// Write the frieze here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Recover the dissection whose diagonals are the entries equal to 1.
    Recover {
        #[arg(long, value_name = "FILE")]
        frieze: PathBuf,
        /// Write the dissection here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check whether a quiddity row generates a frieze, and of which type.
    Validate {
        #[arg(long, value_name = "FILE")]
        quiddity: PathBuf,
    },
    /// Enumerate dissections (or p-angulations) of an N-gon.
    #[command(group(ArgGroup::new("mode").required(true).args(["count_only", "roundtrip"])))]
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Restrict to p-angulations.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        count_only: bool,
        /// Check recover(Φ(D)) = D for every dissection.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Walk the path ξ_0 ⋯ ξ_α(∞) in the Farey graph of G_p.
    #[command(group(ArgGroup::new("source").required(true).args(["quiddity", "q"])))]
    Farey {
        /// Quiddity file whose entries are multiples of λ_p.
        #[arg(long, value_name = "FILE")]
        quiddity: Option<PathBuf>,
        /// Turn counts q_0,…,q_{N−1}.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        q: Option<Vec<u64>>,
        #[arg(long)]
        p: u64,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invalid(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Invalid(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn input(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn invalid(e: Error) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(path, e))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| input(path, e))
}

/// Writes to `path`, or to standard output when absent.
fn emit(out: &mut impl Write, path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write_file(p, text),
        None => writeln!(out, "{text}").map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn registry() -> Result<ContextRegistry, Failure> {
    let bits = match std::env::var("FRIEZE_PRECISION_START") {
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(b) if b > 0 => b,
            _ => return Err(Failure::Usage(format!("FRIEZE_PRECISION_START must be a positive integer, got {v:?}"))),
        },
        Err(_) => DEFAULT_PRECISION_START,
    };
    Ok(ContextRegistry::new(bits))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn build(
    reg: &ContextRegistry,
    out: &mut impl Write,
    dissection: &Path,
    render: Option<Render>,
    periods: usize,
    quiddity: bool,
    target: Option<&Path>,
) -> Outcome {
    let d = dissection_from_json(&read(dissection)?).map_err(|e| input(dissection, e))?;
    let f = phi_minimal(reg, &d).map_err(invalid)?;
    emit(out, target, &frieze_to_json(&f))?;
    let io_err = |e: io::Error| Failure::Input(format!("stdout: {e}"));
    if quiddity {
        writeln!(out, "{}", quiddity_to_json(&quiddity_of(&f))).map_err(io_err)?;
    }
    if let Some(Render::Text) = render {
        write!(out, "{}", render_pattern_text(&f, periods)).map_err(io_err)?;
    }
    Ok(())
}

fn recover(reg: &ContextRegistry, out: &mut impl Write, frieze: &Path, target: Option<&Path>) -> Outcome {
    let f = frieze_from_json(reg, &read(frieze)?).map_err(|e| input(frieze, e))?;
    let report = recovery_report(reg, &f).map_err(invalid)?;
    if let Some(d) = &report.dissection {
        emit(out, target, &dissection_to_json(d))?;
    }
    let ones: Vec<[usize; 2]> = report.ones.iter().map(|&d| d.into()).collect();
    let json = serde_json::json!({ "in_image": report.in_image, "ones": ones });
    writeln!(out, "{json}").map_err(|e| Failure::Input(format!("stdout: {e}")))?;
    if report.in_image {
        Ok(())
    } else if let Err(e) = recover_dissection(&f) {
        Err(invalid(e))
    } else if !report.valid_frieze {
        Err(Failure::Invalid("table is not a frieze".into()))
    } else {
        Err(Failure::Invalid("frieze differs from the image of its recovered dissection".into()))
    }
}

fn validate(reg: &ContextRegistry, out: &mut impl Write, quiddity: &Path) -> Outcome {
    let q = quiddity_from_json(reg, &read(quiddity)?).map_err(|e| input(quiddity, e))?;
    let level = q.context().level();
    let built = frieze_from_quiddity(&q);
    let closes = !matches!(built, Err(Error::NotAFrieze(_)));
    let positive = built.is_ok();
    let word = q.matrix_word().is_minus_identity();
    let mut lines = vec![
        format!("vertices: {}", q.len()),
        format!("level: {level}"),
        format!("closure: {}", yes(closes)),
        format!("positivity: {}", if closes { yes(positive) } else { "n/a" }),
        format!("matrix word is -I: {}", yes(word)),
    ];
    for p in (3..=level).filter(|p| level % p == 0) {
        let line = match (&built, q.lambda_multiples(p)) {
            (Ok(_), Some(m)) => {
                let m: Vec<String> = m.iter().map(u64::to_string).collect();
                format!("type Λ_{p}: yes, q = ({})", m.join(","))
            }
            _ => format!("type Λ_{p}: no"),
        };
        lines.push(line);
    }
    if let Ok(f) = &built {
        lines.push(format!("integral: {}", yes(integrality_check(f))));
    }
    lines.push(format!("valid: {}", yes(built.is_ok())));
    writeln!(out, "{}", lines.join("\n")).map_err(|e| Failure::Input(format!("stdout: {e}")))?;
    built.map(|_| ()).map_err(invalid)
}

fn enumerate(reg: &ContextRegistry, out: &mut impl Write, n: usize, p: Option<usize>, roundtrip: bool) -> Outcome {
    if n < 3 {
        return Err(Failure::Usage(format!("--n must be at least 3, got {n}")));
    }
    if p.is_some_and(|p| p < 3) {
        return Err(Failure::Usage("--p must be at least 3".into()));
    }
    let stream: Box<dyn Iterator<Item = _>> = match p {
        Some(p) => Box::new(enumerate_p_angulations(n, p)),
        None => Box::new(enumerate_dissections(n)),
    };
    let io_err = |e: io::Error| Failure::Input(format!("stdout: {e}"));
    if !roundtrip {
        writeln!(out, "{}", stream.count()).map_err(io_err)?;
        return Ok(());
    }
    let (mut passed, mut failed) = (0usize, 0usize);
    for d in stream {
        let ok = phi_minimal(reg, &d).and_then(|f| recover_dissection(&f)).is_ok_and(|back| back == d);
        if ok {
            passed += 1;
        } else {
            failed += 1;
            writeln!(out, "failed: {d} (level {})", minimal_level(&d)).map_err(io_err)?;
        }
    }
    writeln!(out, "passed: {passed}, failed: {failed}").map_err(io_err)?;
    if failed > 0 {
        return Err(Failure::Invalid(format!("{failed} round trip(s) failed")));
    }
    Ok(())
}

fn farey(reg: &ContextRegistry, out: &mut impl Write, quiddity: Option<&Path>, q: Option<&[u64]>, p: u64, svg: Option<&Path>) -> Outcome {
    let (ctx, q): (_, Vec<u64>) = match (quiddity, q) {
        (Some(path), _) => {
            let row: QuiddityRow = quiddity_from_json(reg, &read(path)?).map_err(|e| input(path, e))?;
            if !row.context().contains_lambda(p) {
                return Err(invalid(Error::IncompatibleLevel { p, level: row.context().level() }));
            }
            let q = row.lambda_multiples(p).ok_or_else(|| {
                Failure::Invalid(format!("quiddity entries are not positive integer multiples of λ_{p}"))
            })?;
            (row.context().clone(), q)
        }
        (None, Some(q)) => {
            if p < 3 {
                return Err(Failure::Usage("--p must be at least 3".into()));
            }
            if q.len() < 3 || q.contains(&0) {
                return Err(Failure::Usage("--q needs at least three positive entries".into()));
            }
            (reg.get(p).map_err(invalid)?, q.to_vec())
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let closed = closed_path_check(&ctx, &q, p).map_err(invalid)?;
    let turns = closed && turn_count_check(&ctx, &q, p).unwrap_or(false);
    let io_err = |e: io::Error| Failure::Input(format!("stdout: {e}"));
    let points = walk_vertices(&ctx, &q, p).map_err(invalid)?;
    let shown: Vec<String> = points
        .iter()
        .map(|pt| pt.to_f64().map_or_else(|| "∞".to_string(), |x| format!("{x:.6}")))
        .collect();
    writeln!(out, "vertices: {}", shown.join(" ")).map_err(io_err)?;
    writeln!(out, "closed: {}", yes(closed)).map_err(io_err)?;
    writeln!(out, "turns: {}", if closed { yes(turns) } else { "n/a" }).map_err(io_err)?;
    if !closed {
        return Err(Failure::Invalid("the path does not close".into()));
    }
    if let Some(path) = svg {
        write_file(path, &render_farey_svg(&ctx, &q, p, &SvgOptions::default()).map_err(invalid)?)?;
    }
    if !turns {
        return Err(Failure::Invalid("turn counts differ from the incident cells".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let reg = &registry()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Build { dissection, render, periods, quiddity, out: target } => {
            build(reg, &mut out, &dissection, render, periods, quiddity, target.as_deref())
        }
        Command::Recover { frieze, out: target } => recover(reg, &mut out, &frieze, target.as_deref()),
        Command::Validate { quiddity } => validate(reg, &mut out, &quiddity),
        Command::Enumerate { n, p, roundtrip, .. } => enumerate(reg, &mut out, n, p, roundtrip),
        Command::Farey { quiddity, q, p, svg } => farey(reg, &mut out, quiddity.as_deref(), q.as_deref(), p, svg.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
