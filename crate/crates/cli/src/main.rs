//! Command-line surface for the C-symmetry toolkit.
//!
//! Exit codes: 0 on success, 2 when a semantic check fails (the inputs parse
//! but the C-symmetry is absent or a verification clause is violated), 1 on
//! operational errors (I/O, malformed files, shape mismatches).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use krein_csym::csymmetry::{
    construct_c, hermitize, verify_c_symmetry, COperator, ConstructOptions, JSelfAdjointOperator,
};
use krein_csym::direct_sum::{harmonic_gamma, unboundedness_table};
use krein_csym::io::{format_f64, read_matrix, write_matrix};
use krein_csym::krein::KreinStructure;
use krein_csym::linalg;
use krein_csym::point_interaction::{gamma_sweep, SymmetricGrid};
use krein_csym::tol;

const EXIT_SEMANTIC_FAIL: u8 = 2;

#[derive(Parser)]
#[command(
    name = "krein-csym",
    about = "Verify, construct and exercise C-symmetries of J-self-adjoint matrices",
    long_about = None,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Nodes per half-line of the symmetric grid.
    #[arg(long = "grid-n", default_value_t = 200, value_parser = clap::value_parser!(u32).range(4..))]
    grid_n: u32,
    /// Half-length of the truncated line.
    #[arg(long = "grid-l", default_value_t = 20.0)]
    grid_l: f64,
}

impl GridArgs {
    fn build(&self) -> anyhow::Result<SymmetricGrid> {
        Ok(SymmetricGrid::new(self.grid_n as usize, self.grid_l)?)
    }
}

fn positive_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be positive and finite".into())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three C-symmetry clauses for matrices A, J, C read from files.
    Verify {
        a: PathBuf,
        j: PathBuf,
        c: PathBuf,
        /// Verification tolerance (relative defects).
        #[arg(long, default_value_t = tol::VER_TOL, value_parser = positive_tol)]
        tol: f64,
    },
    /// Construct a C operator for A, or report why none exists.
    Construct {
        a: PathBuf,
        j: PathBuf,
        /// Where to write the C matrix (.json or .csv); diagnostics go to
        /// stdout as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = tol::VER_TOL, value_parser = positive_tol)]
        tol: f64,
    },
    /// Similarity-transform A to Hermitian form via the square root of JC.
    Hermitize {
        a: PathBuf,
        j: PathBuf,
        c: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = tol::VER_TOL, value_parser = positive_tol)]
        tol: f64,
    },
    /// Sweep the point-interaction coupling; emits per-coupling diagnostics.
    Sweep {
        #[arg(long)]
        gamma_min: f64,
        #[arg(long)]
        gamma_max: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norm divergence of direct-sum truncations along a coupling sequence.
    DirectSum {
        /// Truncation sizes, e.g. 5,10,20,100.
        #[arg(long = "m-list", value_delimiter = ',', required = true)]
        m_list: Vec<usize>,
        /// Coupling sequence rule.
        #[arg(long, default_value = "harmonic")]
        rule: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("KREIN_CSYM_THREADS") {
        match threads.trim().parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: KREIN_CSYM_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    // usage errors are operational (exit 1); reserve exit 2 for semantic
    // verification failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { a, j, c, tol } => cmd_verify(&a, &j, &c, tol),
        Command::Construct { a, j, out, tol } => cmd_construct(&a, &j, out.as_deref(), tol),
        Command::Hermitize { a, j, c, out, tol } => {
            cmd_hermitize(&a, &j, &c, out.as_deref(), tol)
        }
        Command::Sweep { gamma_min, gamma_max, steps, grid, format, out } => {
            cmd_sweep(gamma_min, gamma_max, steps, &grid, format, out.as_deref())
        }
        Command::DirectSum { m_list, rule, grid, format, out } => {
            cmd_direct_sum(&m_list, &rule, &grid, format, out.as_deref())
        }
    }
}

/// Load A and J; J must validate as a fundamental symmetry and A as
/// J-self-adjoint.
fn load_pair(
    a_path: &std::path::Path,
    j_path: &std::path::Path,
) -> anyhow::Result<(KreinStructure, JSelfAdjointOperator)> {
    let j = read_matrix(j_path)?;
    let ks = KreinStructure::new(j)?;
    let a = read_matrix(a_path)?;
    let a = JSelfAdjointOperator::new(&ks, a)?;
    Ok((ks, a))
}

fn cmd_verify(
    a_path: &std::path::Path,
    j_path: &std::path::Path,
    c_path: &std::path::Path,
    ver_tol: f64,
) -> anyhow::Result<ExitCode> {
    let (ks, a) = load_pair(a_path, j_path)?;
    let c = read_matrix(c_path)?;
    let report = verify_c_symmetry(&ks, &a, &c, ver_tol)?;
    println!("involution defect:   {}", format_f64(report.involution_defect));
    println!("metric hermiticity:  {}", format_f64(report.metric_hermiticity_defect));
    println!("positivity margin:   {}", format_f64(report.positivity_margin));
    println!(
        "commutation defect:  {}",
        format_f64(report.commutation_defect.unwrap_or(f64::NAN))
    );
    match report.violated_clause() {
        None => {
            println!("verdict: PASS (tolerance {})", format_f64(ver_tol));
            Ok(ExitCode::SUCCESS)
        }
        Some(clause) => {
            println!("verdict: FAIL ({clause} clause, tolerance {})", format_f64(ver_tol));
            Ok(ExitCode::from(EXIT_SEMANTIC_FAIL))
        }
    }
}

fn cmd_construct(
    a_path: &std::path::Path,
    j_path: &std::path::Path,
    out: Option<&std::path::Path>,
    ver_tol: f64,
) -> anyhow::Result<ExitCode> {
    let (ks, a) = load_pair(a_path, j_path)?;
    let opts = ConstructOptions { ver_tol, ..ConstructOptions::default() };
    match construct_c(&ks, &a, &opts) {
        Ok(cop) => {
            let report = cop.report();
            println!("construction: ok");
            println!("involution defect:   {}", format_f64(report.involution_defect));
            println!("metric hermiticity:  {}", format_f64(report.metric_hermiticity_defect));
            println!("positivity margin:   {}", format_f64(report.positivity_margin));
            println!(
                "commutation defect:  {}",
                format_f64(report.commutation_defect.unwrap_or(f64::NAN))
            );
            if let Some(path) = out {
                write_matrix(path, cop.matrix())?;
                println!("wrote C to {}", path.display());
            }
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_SEMANTIC_FAIL))
            }
        }
        Err(diag) => {
            let json = serde_json::to_string_pretty(&diag)?;
            if let Some(path) = out {
                std::fs::write(path.with_extension("diagnostic.json"), &json)?;
            }
            println!("{json}");
            Ok(ExitCode::from(EXIT_SEMANTIC_FAIL))
        }
    }
}

fn cmd_hermitize(
    a_path: &std::path::Path,
    j_path: &std::path::Path,
    c_path: &std::path::Path,
    out: Option<&std::path::Path>,
    ver_tol: f64,
) -> anyhow::Result<ExitCode> {
    let (ks, a) = load_pair(a_path, j_path)?;
    let c = read_matrix(c_path)?;
    let report = verify_c_symmetry(&ks, &a, &c, ver_tol)?;
    if let Some(clause) = report.violated_clause() {
        println!("C failed verification ({clause} clause); not Hermitizing");
        return Ok(ExitCode::from(EXIT_SEMANTIC_FAIL));
    }
    let cop = COperator::validate(&ks, c, ver_tol)?;
    let h = hermitize(&ks, &a, &cop)?;
    let defect = linalg::hermitian_defect(&h) / linalg::spectral_norm(&h);
    println!("hermiticity defect:  {}", format_f64(defect));
    if let Some(path) = out {
        write_matrix(path, &h)?;
        println!("wrote H to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(text: &str, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_sweep(
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
    grid_args: &GridArgs,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(gamma_min >= 0.0, "gamma-min must be nonnegative");
    anyhow::ensure!(gamma_max > gamma_min, "gamma-max must exceed gamma-min");
    anyhow::ensure!(steps >= 2, "need at least two steps");
    let grid = grid_args.build()?;
    let gammas: Vec<f64> = (0..steps)
        .map(|k| gamma_min + (gamma_max - gamma_min) * k as f64 / (steps - 1) as f64)
        .collect();
    let rows = gamma_sweep(&grid, &gammas)?;

    let text = match format {
        OutputFormat::Csv => {
            let mut s = String::from("gamma,max_im_lambda,norm_C,cond_F,status\n");
            for r in &rows {
                let norm_c = r.norm_c.map(format_f64).unwrap_or_default();
                let cond_f = r.cond_f.map(format_f64).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format_f64(r.gamma),
                    format_f64(r.max_im_lambda),
                    norm_c,
                    cond_f,
                    r.status
                ));
            }
            s
        }
        OutputFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "gamma": r.gamma,
                        "max_im_lambda": r.max_im_lambda,
                        "norm_C": r.norm_c,
                        "cond_F": r.cond_f,
                        "status": r.status,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items)? + "\n"
        }
    };
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_direct_sum(
    m_list: &[usize],
    rule: &str,
    grid_args: &GridArgs,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(!m_list.is_empty(), "m-list must not be empty");
    anyhow::ensure!(m_list.iter().all(|&m| m >= 1), "truncation sizes must be >= 1");
    let gamma_of: fn(usize) -> f64 = match rule {
        "harmonic" => harmonic_gamma,
        other => anyhow::bail!("unknown sequence rule {other:?} (available: harmonic)"),
    };
    let grid = grid_args.build()?;
    let rows = unboundedness_table(gamma_of, m_list, &grid)?;

    let text = match format {
        OutputFormat::Csv => {
            let mut s = String::from("M,norm_T,norm_C,cond_F\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.m,
                    format_f64(r.norm_t),
                    format_f64(r.norm_c),
                    format_f64(r.cond_f)
                ));
            }
            s
        }
        OutputFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "M": r.m,
                        "norm_T": r.norm_t,
                        "norm_C": r.norm_c,
                        "cond_F": r.cond_f,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items)? + "\n"
        }
    };
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}
