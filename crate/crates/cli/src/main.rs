//! Command-line front end: load spaces and vectors, run the library
//! operations, emit JSON traces and CSV tables.
//!
//! Exit codes: 0 success or verification pass, 1 verification fail,
//! 2 malformed input, 3 degenerate Gram matrix, 4 norm target out of
//! range, 5 construction or dimension failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use krein::catalog;
use krein::decomposition::{canonical_decomposition, j_norm, verify_symmetry, FundamentalSymmetry};
use krein::json;
use krein::numerics::ComplexMatrix;
use krein::prescribe::{norm_range, target_norm, TargetTrace};
use krein::sequences::{
    diverging, ratio_neutral, ratio_orthogonal, vanishing, write_csv, SequenceRow,
};
use krein::space::{KVector, KreinSpace};
use krein::Error;

#[derive(Parser)]
#[command(
    name = "krein",
    version,
    about = "Indefinite inner product space toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dimension, signature, canonical decomposition, and canonical J.
    Analyze {
        /// Catalog address, e.g. minkowski:3
        space: Option<String>,
        /// Space JSON file as an alternative to a catalog address
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Classify a vector and report its attainable norm range and J-norm.
    Norm {
        space: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Vector as comma-separated reals
        #[arg(long)]
        x: Option<String>,
        /// Vector JSON file (allows complex entries)
        #[arg(long)]
        x_file: Option<PathBuf>,
        /// Symmetry: catalog address or `identity` (default: canonical)
        #[arg(long)]
        sym: Option<String>,
        #[arg(long)]
        sym_file: Option<PathBuf>,
    },
    /// Build a fundamental symmetry giving the vector the requested norm.
    Target {
        space: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        x_file: Option<PathBuf>,
        /// The norm to achieve
        #[arg(long)]
        a: f64,
        /// Include the full construction trace in the JSON output
        #[arg(long)]
        trace: bool,
    },
    /// Emit a symmetry sequence as CSV.
    Seq {
        kind: SeqKind,
        space: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Vector(s); repeat the flag for per-step vectors
        #[arg(long)]
        x: Vec<String>,
        #[arg(long)]
        x_file: Vec<PathBuf>,
        /// Second vector for the ratio sequences
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        y_file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Write the CSV here instead of stdout and print a summary line
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump each symmetry into this directory, one J_N.json per row
        #[arg(long)]
        dump_syms: Option<PathBuf>,
    },
    /// Check the symmetry axioms and report residuals.
    Verify {
        space: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        sym: Option<String>,
        #[arg(long)]
        sym_file: Option<PathBuf>,
    },
    /// List catalog entries, or print one as JSON.
    Example { address: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    Diverge,
    Vanish,
    RatioOrth,
    RatioNeutral,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_)
            | Error::DimensionMismatch { .. }
            | Error::NotHermitian { .. }
            | Error::UnknownCatalogEntry(_)
            | Error::ZeroVector
            | Error::ParamOutOfRange { .. } => 2,
            Error::Degenerate { .. } => 3,
            Error::TargetBelowRange { .. } => 4,
            _ => 5,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn load_space(address: &Option<String>, file: &Option<PathBuf>) -> Result<KreinSpace, Failure> {
    match (address, file) {
        (Some(addr), None) => Ok(catalog::catalog_space(addr)?),
        (None, Some(path)) => Ok(json::space_from_json(&read_file(path)?)?),
        _ => Err(malformed("provide either a catalog address or --file")),
    }
}

fn parse_reals(text: &str) -> Result<KVector, Failure> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse()).collect();
    match coords {
        Ok(c) if !c.is_empty() => Ok(KVector::from_reals(&c)),
        _ => Err(malformed(format!("cannot parse vector: {text}"))),
    }
}

fn load_vector(
    flag: &str,
    inline: &Option<String>,
    file: &Option<PathBuf>,
) -> Result<KVector, Failure> {
    match (inline, file) {
        (Some(text), None) => parse_reals(text),
        (None, Some(path)) => Ok(json::vector_from_json(&read_file(path)?)?),
        _ => Err(malformed(format!("provide --{flag} or --{flag}-file"))),
    }
}

fn load_vectors(flag: &str, inline: &[String], files: &[PathBuf]) -> Result<Vec<KVector>, Failure> {
    let mut out = Vec::new();
    for text in inline {
        out.push(parse_reals(text)?);
    }
    for path in files {
        out.push(json::vector_from_json(&read_file(path)?)?);
    }
    if out.is_empty() {
        return Err(malformed(format!("provide at least one --{flag}")));
    }
    Ok(out)
}

fn load_symmetry(
    space: &KreinSpace,
    sym: &Option<String>,
    sym_file: &Option<PathBuf>,
) -> Result<FundamentalSymmetry, Failure> {
    let matrix = match (sym, sym_file) {
        (Some(addr), None) if addr == "identity" => ComplexMatrix::identity(space.dim()),
        (Some(addr), None) => return Ok(catalog::catalog_symmetry(addr)?),
        (None, Some(path)) => json::matrix_from_json(&read_file(path)?)?,
        (None, None) => return Ok(canonical_decomposition(space)?.symmetry()?),
        _ => return Err(malformed("provide at most one of --sym and --sym-file")),
    };
    Ok(FundamentalSymmetry::from_matrix(space, matrix)?)
}

/// Symmetry source that defers axiom checking to the caller: `verify`
/// must report on matrices that are not valid symmetries.
fn load_symmetry_matrix(
    space: &KreinSpace,
    sym: &Option<String>,
    sym_file: &Option<PathBuf>,
) -> Result<ComplexMatrix, Failure> {
    match (sym, sym_file) {
        (Some(addr), None) if addr == "identity" => Ok(ComplexMatrix::identity(space.dim())),
        (Some(addr), None) => Ok(catalog::catalog_symmetry(addr)?.matrix().clone()),
        (None, Some(path)) => Ok(json::matrix_from_json(&read_file(path)?)?),
        _ => Err(malformed("provide exactly one of --sym and --sym-file")),
    }
}

fn cmd_analyze(space: &KreinSpace) -> Result<(), Failure> {
    let d = canonical_decomposition(space)?;
    let sym = d.symmetry()?;
    println!("dim: {}", space.dim());
    let (p, q) = space.signature();
    println!("signature: ({p}, {q})");
    if d.is_definite() {
        println!("warning: the form is definite; the decomposition is trivial");
    }
    println!("basis_plus:");
    for j in 0..d.basis_plus().cols() {
        println!(
            "  {}",
            json::vector_to_json(&KVector::new(d.basis_plus().column(j)))
        );
    }
    println!("basis_minus:");
    for j in 0..d.basis_minus().cols() {
        println!(
            "  {}",
            json::vector_to_json(&KVector::new(d.basis_minus().column(j)))
        );
    }
    println!("canonical J: {}", json::matrix_to_json(sym.matrix()));
    Ok(())
}

fn cmd_norm(
    space: &KreinSpace,
    x: &KVector,
    sym: &Option<String>,
    sym_file: &Option<PathBuf>,
) -> Result<(), Failure> {
    let class = space.classify(x)?;
    let quad = space.quad_form(x)?;
    let range = norm_range(space, x)?;
    let symmetry = load_symmetry(space, sym, sym_file)?;
    let norm = j_norm(&symmetry, x)?;
    println!("class: {class:?}");
    println!("form_value: {quad:.16e}");
    println!(
        "norm_range: {}{:.16e}, inf)",
        if range.lower_attained { "[" } else { "(" },
        range.lower
    );
    println!("j_norm: {norm:.16e}");
    Ok(())
}

#[derive(Serialize)]
struct TargetOutput<'a> {
    achieved: f64,
    j: &'a ComplexMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a TargetTrace>,
}

fn cmd_target(space: &KreinSpace, x: &KVector, a: f64, with_trace: bool) -> Result<(), Failure> {
    let (sym, trace) = target_norm(space, x, a)?;
    let achieved = j_norm(&sym, x)?;
    let output = TargetOutput {
        achieved,
        j: sym.matrix(),
        trace: with_trace.then_some(&trace),
    };
    println!("{}", serde_json::to_string(&output).expect("plain data"));
    Ok(())
}

fn summary_line(row: &SequenceRow) -> String {
    let mut line = format!(
        "final: n={} param={:.16e} norm_x={:.16e}",
        row.index, row.param, row.norm_x
    );
    if let Some(ny) = row.norm_y {
        line.push_str(&format!(" norm_y={ny:.16e}"));
    }
    if let Some(r) = row.ratio {
        line.push_str(&format!(" ratio={r:.16e}"));
    }
    line
}

fn cmd_seq(
    kind: SeqKind,
    space: &KreinSpace,
    xs: &[KVector],
    y: Option<KVector>,
    steps: usize,
    out: &Option<PathBuf>,
    dump_syms: &Option<PathBuf>,
) -> Result<(), Failure> {
    let rows = match kind {
        SeqKind::Diverge => {
            let j0 = canonical_decomposition(space)?.symmetry()?;
            diverging(space, xs, &j0, steps)?
        }
        SeqKind::Vanish => vanishing(space, xs, steps)?,
        SeqKind::RatioOrth | SeqKind::RatioNeutral => {
            let y = y.ok_or_else(|| malformed("this sequence needs --y"))?;
            let x = xs
                .first()
                .ok_or_else(|| malformed("this sequence needs --x"))?;
            match kind {
                SeqKind::RatioOrth => ratio_orthogonal(space, x, &y, steps)?.0,
                _ => ratio_neutral(space, x, &y, steps)?.0,
            }
        }
    };

    if let Some(dir) = dump_syms {
        fs::create_dir_all(dir).map_err(|e| malformed(format!("{}: {e}", dir.display())))?;
        for row in &rows {
            let path = dir.join(format!("J_{}.json", row.index));
            fs::write(&path, json::matrix_to_json(row.symmetry.matrix()))
                .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
        }
    }

    match out {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).expect("writing to memory");
            fs::write(path, buf).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
            if let Some(last) = rows.last() {
                println!("{}", summary_line(last));
            }
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&rows, stdout.lock()).map_err(|e| malformed(e.to_string()))?;
        }
    }
    Ok(())
}

fn cmd_verify(
    space: &KreinSpace,
    sym: &Option<String>,
    sym_file: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let matrix = load_symmetry_matrix(space, sym, sym_file)?;
    if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
        return Err(malformed(format!(
            "symmetry is {}x{} but the space has dimension {}",
            matrix.rows(),
            matrix.cols(),
            space.dim()
        )));
    }
    let report = verify_symmetry(space, &matrix);
    println!("r_invol: {:.16e}", report.residuals.involution);
    println!("r_selfadj: {:.16e}", report.residuals.self_adjoint);
    println!("r_isom: {:.16e}", report.residuals.isometry);
    println!(
        "min_metric_eigenvalue: {:.16e}",
        report.min_metric_eigenvalue
    );
    println!("verdict: {}", if report.pass { "pass" } else { "fail" });
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_example(address: &Option<String>) -> Result<(), Failure> {
    match address {
        None => {
            for e in catalog::entries() {
                println!("{:<14} {} -- {}", e.address, e.name, e.summary);
            }
        }
        Some(addr) => {
            let space = catalog::catalog_space(addr)?;
            println!("space: {}", json::space_to_json(&space));
            if addr.starts_with("eg1:") || addr.starts_with("final:") {
                let sym = catalog::catalog_symmetry(addr)?;
                println!("J: {}", json::matrix_to_json(sym.matrix()));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { space, file } => {
            cmd_analyze(&load_space(space, file)?)?;
            Ok(0)
        }
        Command::Norm {
            space,
            file,
            x,
            x_file,
            sym,
            sym_file,
        } => {
            let sp = load_space(space, file)?;
            let x = load_vector("x", x, x_file)?;
            cmd_norm(&sp, &x, sym, sym_file)?;
            Ok(0)
        }
        Command::Target {
            space,
            file,
            x,
            x_file,
            a,
            trace,
        } => {
            let sp = load_space(space, file)?;
            let x = load_vector("x", x, x_file)?;
            cmd_target(&sp, &x, *a, *trace)?;
            Ok(0)
        }
        Command::Seq {
            kind,
            space,
            file,
            x,
            x_file,
            y,
            y_file,
            steps,
            out,
            dump_syms,
        } => {
            let sp = load_space(space, file)?;
            let xs = load_vectors("x", x, x_file)?;
            let y = match (y, y_file) {
                (None, None) => None,
                _ => Some(load_vector("y", y, y_file)?),
            };
            cmd_seq(*kind, &sp, &xs, y, *steps, out, dump_syms)?;
            Ok(0)
        }
        Command::Verify {
            space,
            file,
            sym,
            sym_file,
        } => cmd_verify(&load_space(space, file)?, sym, sym_file),
        Command::Example { address } => {
            cmd_example(address)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
