//! `hg`: batch front end for the hypergroup workbench: family generation,
//! axiom validation, dual/Plancherel computation, ideal lattice summaries,
//! amenability reports, and CSV/JSON emission.
//!
//! Exit codes: 0 success, 1 validation or computation failure, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use hypergroups::amenability::{
    alpha_obstruction, amenability_verdict, diagonal_norm_series, exact_diagonal, DiagonalFamily,
    Kernel, WeightFamily,
};
use hypergroups::families::{
    builtin_group, conjugacy_hypergroup, dunkl_ramirez, jacobi_haar_closed,
    jacobi_polynomial_hypergroup, CharacterPoint, PolynomialRecurrence, StructureOracle,
};
use hypergroups::ideals::{hull_default, ideal_identity, minimal_ideals};
use hypergroups::io::{read_group_csv, read_hypergroup, write_hypergroup_str};
use hypergroups::spectra::character_table;
use hypergroups::{Dual, Hypergroup};

#[derive(Parser)]
#[command(
    name = "hg",
    version,
    about = "Numerical workbench for commutative hypergroup algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a hypergroup JSON file against the axioms.
    Check {
        file: PathBuf,
        /// Axiom tolerance.
        #[arg(long, default_value_t = hypergroups::DEFAULT_TOL)]
        tol: f64,
    },
    /// Compute characters and Plancherel weights; emits CSV.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Summarize the ideal lattice; optional per-subset checks.
    Ideals {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Character indices of a dual subset to check, comma separated.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Render an amenability report as JSON.
    Amenability {
        /// Hypergroup JSON file (equivalent to --family file).
        file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Character evaluation point in [-1,1] (polynomial families):
        /// switches to the vanishing-character obstruction.
        #[arg(long)]
        at: Option<f64>,
        /// Character index (dunkl-ramirez-dual): obstruction at that point.
        #[arg(long)]
        at_index: Option<usize>,
        /// The compactification point (dunkl-ramirez-dual).
        #[arg(long)]
        at_infinity: bool,
        /// Weight/decay horizon.
        #[arg(long, default_value_t = 400)]
        horizon: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diagonal norm series over stages; emits CSV.
    Diagonal {
        /// Hypergroup JSON file (exact summation mode).
        file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Stages, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        stages: Vec<usize>,
        /// Summability kernel: fejer or partial-sum.
        #[arg(long, default_value = "fejer")]
        kernel: String,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a family: a hypergroup JSON table or a JSON report.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// RNG seed for the character solver.
    #[arg(long, default_value_t = hypergroups::DEFAULT_SEED)]
    seed: u64,
    /// Residual tolerance for the character solver.
    #[arg(long, default_value_t = 1e-9)]
    char_tol: f64,
}

#[derive(Args)]
struct FamilyArgs {
    /// One of: file, chebyshev, jacobi, dunkl-ramirez, dunkl-ramirez-dual,
    /// conjugacy.
    #[arg(long)]
    family: Option<String>,
    /// Jacobi parameter alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Jacobi parameter beta.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Dunkl-Ramirez parameter, 0 < a <= 1/2.
    #[arg(long)]
    a: Option<f64>,
    /// Builtin group name (conjugacy family).
    #[arg(long)]
    group: Option<String>,
    /// Path for --family file.
    #[arg(long)]
    path: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Truncated Dunkl-Ramirez table H_a; writes hypergroup JSON.
    DunklRamirez {
        #[arg(long)]
        a: f64,
        /// Truncation size.
        #[arg(long = "N")]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Jacobi polynomial hypergroup oracle; writes a JSON report (the
    /// infinite family has no finite table).
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Degree bound.
        #[arg(long = "N")]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Chebyshev polynomial hypergroup oracle (alpha = beta = -1/2).
    Chebyshev {
        #[arg(long = "N")]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Conjugacy-class hypergroup of a finite group; writes hypergroup JSON.
    Conjugacy {
        /// Builtin group name (Z_n, D_n, S_n <= 6, A_n <= 5, Q8).
        #[arg(long)]
        group: Option<String>,
        /// CSV multiplication table (n x n element indices).
        #[arg(long)]
        group_csv: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }
}

impl From<hypergroups::Error> for Failure {
    fn from(e: hypergroups::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, tol } => check(file, tol),
        Command::Dual {
            file,
            solver,
            output,
        } => dual(file, solver, output),
        Command::Ideals {
            file,
            solver,
            subset,
        } => ideals(file, solver, subset),
        Command::Amenability {
            file,
            family,
            at,
            at_index,
            at_infinity,
            horizon,
            solver,
            output,
        } => amenability(
            file,
            family,
            at,
            at_index,
            at_infinity,
            horizon,
            solver,
            output,
        ),
        Command::Diagonal {
            file,
            family,
            stages,
            kernel,
            solver,
            output,
        } => diagonal(file, family, stages, kernel, solver, output),
        Command::Family { family } => family_command(family),
    }
}

fn load_table(path: &PathBuf, tol: f64) -> Result<Arc<Hypergroup>, Failure> {
    let raw = read_hypergroup::<f64>(path)?;
    Ok(Arc::new(raw.validate(tol)?))
}

fn load_dual(table: &Arc<Hypergroup>, solver: &SolverArgs) -> Result<Arc<Dual>, Failure> {
    Ok(Arc::new(character_table(
        table,
        solver.char_tol,
        solver.seed,
    )?))
}

fn emit(text: String, output: Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn check(file: PathBuf, tol: f64) -> Result<(), Failure> {
    let raw = read_hypergroup::<f64>(&file)?;
    let report = raw.axiom_report(tol);
    let line = |name: &str, residual: f64, pass: bool| {
        println!(
            "{name:<14} {residual:e} {}",
            if pass { "pass" } else { "FAIL" }
        );
    };
    line("probability", report.probability, report.pass_probability());
    line(
        "commutativity",
        report.commutativity,
        report.pass_commutativity(),
    );
    line("identity", report.identity, report.pass_identity());
    line("support", report.support, report.pass_support());
    line(
        "associativity",
        report.associativity,
        report.pass_associativity(),
    );
    if !report.pass() {
        return Err(Failure::Run(format!(
            "axiom check failed at tolerance {tol:e} (max residual {:e})",
            report.max_residual()
        )));
    }
    // Haar solve is part of validation; surface its failure as a check failure.
    raw.validate(tol)?;
    println!("PASS (tolerance {tol:e})");
    Ok(())
}

fn dual(file: PathBuf, solver: SolverArgs, output: Option<PathBuf>) -> Result<(), Failure> {
    let table = load_table(&file, hypergroups::DEFAULT_TOL)?;
    let dual = load_dual(&table, &solver)?;
    let n = table.size();

    let mut csv = String::from("index,plancherel_weight,norm_sq,residual");
    for x in 0..n {
        let _ = write!(csv, ",re:alpha({x}),im:alpha({x})");
    }
    csv.push('\n');
    for i in 0..dual.len() {
        let _ = write!(
            csv,
            "{i},{:e},{:e},{:e}",
            dual.plancherel_weight(i),
            dual.norm_sq(i),
            dual.residual(i)
        );
        for x in 0..n {
            let v = dual.value(i, x);
            let _ = write!(csv, ",{:e},{:e}", v.re, v.im);
        }
        csv.push('\n');
    }
    emit(csv, output)
}

fn ideals(file: PathBuf, solver: SolverArgs, subset: Option<Vec<usize>>) -> Result<(), Failure> {
    let table = load_table(&file, hypergroups::DEFAULT_TOL)?;
    let dual = load_dual(&table, &solver)?;
    let minimal = minimal_ideals(&dual);
    println!("table: {} (size {})", table.label(), table.size());
    println!(
        "minimal ideals: {} (all dimension 1, one per character)",
        minimal.len()
    );
    if let Some(indices) = subset {
        let set: std::collections::BTreeSet<usize> = indices.into_iter().collect();
        let u_p = ideal_identity(&dual, &set)?;
        let mut identity_res: f64 = 0.0;
        for &i in &set {
            let alpha = dual.character(i);
            let res = u_p.convolve(&alpha)?.minus(&alpha)?.norm_l1();
            identity_res = identity_res.max(res);
        }
        let idem = u_p.convolve(&u_p)?.minus(&u_p)?.norm_l1();
        let hull = hull_default(&dual, &u_p)?;
        println!(
            "subset {set:?}: dimension {}, identity residual {identity_res:e}, \
             idempotent residual {idem:e}, hull matches subset: {}",
            set.len(),
            hull == set
        );
    }
    Ok(())
}

fn parse_family_kind(file: Option<&PathBuf>, family: &FamilyArgs) -> Result<String, Failure> {
    match (&family.family, file) {
        (Some(kind), None) => Ok(kind.clone()),
        (None, Some(_)) => Ok("file".into()),
        (Some(kind), Some(_)) if kind == "file" => Ok(kind.clone()),
        (Some(_), Some(_)) => Err(Failure::usage(
            "give either a file argument or --family, not both",
        )),
        (None, None) => Err(Failure::usage("missing --family or a file argument")),
    }
}

fn jacobi_params(family: &FamilyArgs) -> Result<(f64, f64), Failure> {
    match (family.alpha, family.beta) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Failure::usage("jacobi family needs --alpha and --beta")),
    }
}

#[allow(clippy::too_many_arguments)]
fn amenability(
    file: Option<PathBuf>,
    family: FamilyArgs,
    at: Option<f64>,
    at_index: Option<usize>,
    at_infinity: bool,
    horizon: usize,
    solver: SolverArgs,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let kind = parse_family_kind(file.as_ref(), &family)?;
    let report = match kind.as_str() {
        "file" | "conjugacy" => {
            let table = match kind.as_str() {
                "file" => {
                    let path = file
                        .or(family.path.clone())
                        .ok_or_else(|| Failure::usage("file family needs a path"))?;
                    load_table(&path, hypergroups::DEFAULT_TOL)?
                }
                _ => {
                    let name = family
                        .group
                        .as_deref()
                        .ok_or_else(|| Failure::usage("conjugacy family needs --group"))?;
                    Arc::new(conjugacy_hypergroup(&builtin_group(name)?)?)
                }
            };
            if at.is_some() || at_index.is_some() || at_infinity {
                return Err(Failure::usage(
                    "character-point obstruction applies to infinite discrete families only",
                ));
            }
            let dual = load_dual(&table, &solver)?;
            let diag_norm = exact_diagonal(&table, &dual)?.norm_l1();
            let mut report = amenability_verdict(&WeightFamily::Finite(dual), horizon)?;
            report
                .notes
                .push(format!("exact diagonal L1 norm: {diag_norm}"));
            report
        }
        "chebyshev" | "jacobi" => {
            let (alpha, beta) = if kind == "chebyshev" {
                (-0.5, -0.5)
            } else {
                jacobi_params(&family)?
            };
            match at {
                Some(x) => {
                    let oracle = StructureOracle::Polynomial(Arc::new(
                        jacobi_polynomial_hypergroup(alpha, beta, 8)?,
                    ));
                    alpha_obstruction(&oracle, CharacterPoint::Continuous(x), horizon)?
                }
                None => amenability_verdict(&WeightFamily::Jacobi { alpha, beta }, horizon)?,
            }
        }
        "dunkl-ramirez" => {
            if at.is_some() || at_index.is_some() || at_infinity {
                return Err(Failure::usage(
                    "H_a is compact; use --family dunkl-ramirez-dual for the discrete \
                     obstruction",
                ));
            }
            let a = family
                .a
                .ok_or_else(|| Failure::usage("dunkl-ramirez family needs --a"))?;
            amenability_verdict(&WeightFamily::DunklRamirez { a }, horizon)?
        }
        "dunkl-ramirez-dual" => {
            let a = family
                .a
                .ok_or_else(|| Failure::usage("dunkl-ramirez-dual family needs --a"))?;
            let oracle =
                StructureOracle::DunklRamirezDual(hypergroups::families::DunklRamirezDual::new(a)?);
            let point = if at_infinity {
                CharacterPoint::Infinity
            } else {
                // The first nonconstant character by default.
                CharacterPoint::Discrete(at_index.unwrap_or(1))
            };
            alpha_obstruction(&oracle, point, horizon)?
        }
        other => {
            return Err(Failure::usage(format!("unknown family `{other}`")));
        }
    };
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Run(e.to_string()))?;
    text.push('\n');
    emit(text, output)
}

fn diagonal(
    file: Option<PathBuf>,
    family: FamilyArgs,
    stages: Vec<usize>,
    kernel: String,
    solver: SolverArgs,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let kernel: Kernel = kernel
        .parse()
        .map_err(|e: hypergroups::Error| Failure::usage(e.to_string()))?;
    if stages.is_empty() {
        return Err(Failure::usage("need at least one stage"));
    }
    let kind = parse_family_kind(file.as_ref(), &family)?;
    let diagonal_family = match kind.as_str() {
        "file" => {
            let path = file
                .or(family.path.clone())
                .ok_or_else(|| Failure::usage("file family needs a path"))?;
            let table = load_table(&path, hypergroups::DEFAULT_TOL)?;
            let chars = load_dual(&table, &solver)?;
            DiagonalFamily::Finite { chars }
        }
        "chebyshev" => DiagonalFamily::CompactDual {
            recurrence: PolynomialRecurrence::chebyshev(),
        },
        "jacobi" => {
            let (alpha, beta) = jacobi_params(&family)?;
            DiagonalFamily::CompactDual {
                recurrence: PolynomialRecurrence::jacobi(alpha, beta)?,
            }
        }
        other => {
            return Err(Failure::usage(format!(
                "diagonal series supports file, chebyshev, jacobi (got `{other}`)"
            )));
        }
    };
    let series = diagonal_norm_series(&diagonal_family, &stages, kernel, None)?;
    let mut csv = String::from("stage,norm,sup_coeff,pi_Mn_residual\n");
    for (i, &stage) in series.stages.iter().enumerate() {
        let _ = writeln!(
            csv,
            "{stage},{:e},{:e},{:e}",
            series.norms[i], series.sup_coeffs[i], series.pi_residuals[i]
        );
    }
    emit(csv, output)
}

fn family_command(cmd: FamilyCommand) -> Result<(), Failure> {
    match cmd {
        FamilyCommand::DunklRamirez { a, n, output } => {
            let table = dunkl_ramirez::<f64>(a, n)?;
            emit(write_hypergroup_str(&table), output)
        }
        FamilyCommand::Conjugacy {
            group,
            group_csv,
            output,
        } => {
            let group = match (group, group_csv) {
                (Some(name), None) => builtin_group(&name)?,
                (None, Some(path)) => read_group_csv(path)?,
                _ => {
                    return Err(Failure::usage(
                        "conjugacy needs exactly one of --group or --group-csv",
                    ));
                }
            };
            let table = conjugacy_hypergroup::<f64>(&group)?;
            emit(write_hypergroup_str(&table), output)
        }
        FamilyCommand::Jacobi {
            alpha,
            beta,
            n,
            output,
        } => emit(polynomial_report(alpha, beta, n)?, output),
        FamilyCommand::Chebyshev { n, output } => emit(polynomial_report(-0.5, -0.5, n)?, output),
    }
}

/// JSON report for a polynomial family: Haar weights by quadrature and (when
/// regular) closed form, with the structure rows probed for validity.
fn polynomial_report(alpha: f64, beta: f64, degree: usize) -> Result<String, Failure> {
    let oracle = jacobi_polynomial_hypergroup(alpha, beta, degree)?;
    let mut haar_quadrature = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        haar_quadrature.push(oracle.haar(n)?);
    }
    let closed: Option<Vec<f64>> = (0..=degree)
        .map(|n| jacobi_haar_closed(alpha, beta, n).ok())
        .collect();
    let max_closed_rel = closed.as_ref().map(|closed| {
        closed
            .iter()
            .zip(haar_quadrature.iter())
            .map(|(c, q)| ((c - q) / c).abs())
            .fold(0.0f64, f64::max)
    });
    let mut rows_checked = 0usize;
    for m in 0..=degree {
        for n in m..=degree.saturating_sub(m) {
            if m + n <= degree {
                oracle.constants(m, n)?;
                rows_checked += 1;
            }
        }
    }
    let chebyshev = alpha == -0.5 && beta == -0.5;
    let notes: Vec<String> = if chebyshev {
        vec![
            "closed-form Haar weights are singular at alpha+beta+1 = 0; quadrature route \
             only"
                .into(),
            "under unit-mass Haar the dual Plancherel atoms are the h(n) themselves \
             (1, 2, 2, ...); the measure-normalized convention reports the L2 norms \
             (1, 1/2, 1/2, ...) instead"
                .into(),
        ]
    } else {
        Vec::new()
    };
    let report = serde_json::json!({
        "family": if chebyshev { "chebyshev" } else { "jacobi" },
        "alpha": alpha,
        "beta": beta,
        "degree_bound": degree,
        "quadrature_nodes": oracle.quadrature().len(),
        "haar_quadrature": haar_quadrature,
        "haar_closed_form": closed,
        "max_closed_form_rel_deviation": max_closed_rel,
        "linearization_rows_checked": rows_checked,
        "notes": notes,
    });
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Run(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
