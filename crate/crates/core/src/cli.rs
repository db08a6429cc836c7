//! The `lucas` command line: `solve`, `paper-repro`, `families` and `verify`.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::BoundSet;
use crate::error::{Error, Result};
use crate::normalize::{canonicalize, ProblemSpec};
use crate::oracle::brute_force_search;
use crate::parametric::{find_families, CoeffDomain, ParametricFamily};
use crate::report::Report;
use crate::solve::{solve, SolveOptions, SolveReport};
use crate::sporadic::{search_paper_example, search_sporadic, Convention, PaperExperiment};

/// Family identities are re-checked for every shift up to this depth.
pub const VERIFY_DEPTH: u64 = 500;

/// Box used by `solve --self-check`.
const SELF_CHECK_R_MAX: u64 = 3;
const SELF_CHECK_CAP: u64 = 12;

#[derive(Debug, Parser)]
#[command(
    name = "lucas",
    version,
    about = "Solve A·U_n + B·U_m = C·U_{n1} + D·U_{m1} over all Lucas sequences"
)]
pub struct Cli {
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, env = "LUCAS_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Tuple,
    Existence,
    FirstIndex,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Tuple => Convention::Tuple,
            ConventionArg::Existence => Convention::Existence,
            ConventionArg::FirstIndex => Convention::FirstIndex,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find every sporadic solution and parametric family of one equation.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long = "A")]
        a: i64,
        #[arg(long = "B")]
        b: i64,
        #[arg(long = "C")]
        c: i64,
        #[arg(long = "D")]
        d: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check every branch against brute force on a small box.
        #[arg(long)]
        self_check: bool,
        /// Restrict the search to r ≤ this value.
        #[arg(long)]
        r_max: Option<u64>,
    },
    /// Replicate the coefficient experiment with A_i ∈ {0, ±1}.
    PaperRepro {
        #[arg(long, value_enum, default_value = "first-index")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List parametric families with coefficients in [−box, box].
    Families {
        #[arg(long)]
        xmax: i64,
        #[arg(long)]
        coeff_box: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a JSON report produced by this tool.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Parses `std::env::args` and runs.
pub fn main() -> ExitCode {
    ExitCode::from(run_from(
        std::env::args_os(),
        &mut io::stdout(),
        &mut io::stderr(),
    ))
}

/// Parses `args` (program name first) and runs, returning the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    run(cli, out, err)
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 2;
        }
    };
    match dispatch(cli.command, &pool, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(
    cmd: Command,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8> {
    match cmd {
        Command::Solve {
            a,
            b,
            c,
            d,
            format,
            out: path,
            self_check,
            r_max,
        } => {
            let spec = match ProblemSpec::new(a, b, c, d) {
                Ok(s) => s,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(2);
                }
            };
            if self_check {
                let mismatches = pool.install(|| self_check_branches(&spec))?;
                if !mismatches.is_empty() {
                    for m in &mismatches {
                        writeln!(err, "self-check: {m}")?;
                    }
                    return Ok(1);
                }
            }
            let opts = SolveOptions {
                r_max,
                skip_families: false,
            };
            let rep = pool.install(|| solve(&spec, &opts))?;
            let report = Report::from_solve(&rep);
            emit(out, path, format, &report, || solve_text(&rep))?;
            Ok(0)
        }
        Command::PaperRepro {
            convention,
            format,
            out: path,
        } => {
            let (exp, fams) = pool.install(|| {
                let exp = search_paper_example();
                let fams = find_families(&CoeffDomain::Box(1), &exp.bounds);
                (exp, fams)
            });
            let conv = Convention::from(convention);
            let report = Report::from_paper(&exp, conv, &fams);
            emit(out, path, format, &report, || paper_text(&exp, conv, &fams))?;
            Ok(0)
        }
        Command::Families {
            xmax,
            coeff_box,
            format,
            out: path,
        } => {
            if xmax < 1 {
                writeln!(err, "error: --xmax must be at least 1")?;
                return Ok(2);
            }
            let h = coeff_box.unwrap_or(xmax);
            if h < 0 {
                writeln!(err, "error: --coeff-box must be nonnegative")?;
                return Ok(2);
            }
            let bounds = BoundSet::new(xmax as u64)?;
            let fams = pool.install(|| find_families(&CoeffDomain::Box(h), &bounds));
            let report = Report::from_families(bounds, &fams);
            emit(out, path, format, &report, || {
                families_text(&bounds, h, &fams)
            })?;
            Ok(0)
        }
        Command::Verify { input } => {
            let text = match fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: cannot read {}: {e}", input.display())?;
                    return Ok(2);
                }
            };
            let report = match Report::from_json(&text) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(2);
                }
            };
            let failures = report.verify(VERIFY_DEPTH);
            let checked = report.sporadic.len() + report.families.len();
            if failures.is_empty() {
                writeln!(out, "ok: {checked} entries verified")?;
                Ok(0)
            } else {
                for f in &failures {
                    writeln!(out, "FAIL {f}")?;
                }
                writeln!(out, "{} of {checked} entries failed", failures.len())?;
                Ok(1)
            }
        }
    }
}

/// Compares the engine with brute force on `r ≤ 3`, indices ≤ 12 for every branch.
pub fn self_check_branches(spec: &ProblemSpec) -> Result<Vec<String>> {
    let bounds = BoundSet::uniform_box(SELF_CHECK_R_MAX, SELF_CHECK_CAP);
    let mut mismatches = Vec::new();
    for eq in canonicalize(spec)? {
        let fast = search_sporadic(&eq, &bounds);
        let slow = brute_force_search(&eq, 1..=SELF_CHECK_R_MAX, SELF_CHECK_CAP)?;
        if fast != slow {
            mismatches.push(format!(
                "branch {}: engine found {}, brute force {}",
                eq.tag(),
                fast.len(),
                slow.len()
            ));
        }
    }
    Ok(mismatches)
}

fn emit(
    out: &mut dyn Write,
    path: Option<PathBuf>,
    format: Format,
    report: &Report,
    text: impl FnOnce() -> String,
) -> Result<()> {
    let body = match format {
        Format::Text => text(),
        Format::Json => report.to_json()?,
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    match path {
        Some(p) => fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn solve_text(rep: &SolveReport) -> String {
    let s = rep.spec;
    let b = rep.bounds;
    let mut t = format!(
        "equation: {}·U_n + {}·U_m = {}·U_n1 + {}·U_m1   (X = {})\n",
        s.a,
        s.b,
        s.c,
        s.d,
        s.x()
    );
    t += &format!(
        "bounds: r <= {}, n4 <= {}, n3 <= {}, n2 <= {}, n1 <= {}, C=D=0: n <= {}\n",
        b.r_max, b.n4_max, b.n3_max, b.n2_max, b.n1_max, b.cd_zero_n_max
    );
    t += &format!("branches: {}\n", rep.branches.len());
    t += &format!("sporadic solutions: {}\n", rep.sporadic.len());
    let show = |v: Option<u64>| v.map_or("*".to_string(), |x| x.to_string());
    for sol in &rep.sporadic {
        let i = sol.indices;
        t += &format!(
            "  r={:<3} n={:<3} m={:<3} n1={:<3} m1={:<3} [{}]\n",
            sol.r,
            show(i.n),
            show(i.m),
            show(i.n1),
            show(i.m1),
            sol.branch
        );
    }
    t += &format!("parametric families: {}\n", rep.families.len());
    for f in &rep.families {
        t += &format!(
            "  r={:<3} {}   {}  [{}]\n",
            f.family.r,
            f.family.identity(),
            f.describe(),
            f.branch
        );
    }
    t
}

fn paper_text(exp: &PaperExperiment, conv: Convention, fams: &[ParametricFamily]) -> String {
    let rep = exp.report(conv);
    let mut t = format!("convention: {}\n", conv.name());
    t += &format!("sporadic: {}\n", rep.totals_line());
    for other in &exp.reports {
        t += &format!("  {:<12} total {}\n", other.convention.name(), other.total);
    }
    for sol in rep.solutions.iter().filter(|s| s.r >= 3) {
        t += &format!(
            "  r={}: {}\n",
            sol.r,
            canonical_identity(&sol.indices, &sol.coeffs)
        );
    }
    t += &format!("parametric families: {}\n", fams.len());
    for f in fams {
        t += &format!("  r={}: {} | {}\n", f.r, f.poly(), f.identity());
    }
    t
}

fn families_text(bounds: &BoundSet, h: i64, fams: &[ParametricFamily]) -> String {
    let mut t = format!(
        "x = {}, coefficients in [-{h}, {h}], r <= {}, three-term (i, j) <= ({}, {}), four-term (i, j, k) <= ({}, {}, {})\n",
        bounds.x,
        bounds.r_max,
        bounds.tri_i_max,
        bounds.tri_j_max,
        bounds.quad_i_max,
        bounds.quad_j_max,
        bounds.quad_k_max
    );
    t += &format!("families: {}\n", fams.len());
    for f in fams {
        t += &format!(
            "  r={:<3} {:<28} {}\n",
            f.r,
            f.poly().to_string(),
            f.identity()
        );
    }
    t
}

/// e.g. `U_2 = U_1 + U_1 + U_1`, moving negative terms to the right.
pub fn canonical_identity(indices: &[u64; 4], coeffs: &[i64; 4]) -> String {
    let side = |positive: bool| {
        let terms: Vec<String> = indices
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0 && (c > 0) == positive)
            .map(|(i, &c)| match c.unsigned_abs() {
                1 => format!("U_{i}"),
                m => format!("{m}·U_{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    };
    format!("{} = {}", side(true), side(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_identity() {
        assert_eq!(
            canonical_identity(&[2, 1, 1, 1], &[1, -1, -1, -1]),
            "U_2 = U_1 + U_1 + U_1"
        );
        assert_eq!(
            canonical_identity(&[5, 3, 0, 0], &[-1, 2, 0, 0]),
            "2·U_3 = U_5"
        );
    }

    #[test]
    fn self_check_passes_for_small_specs() {
        let spec = ProblemSpec::new(1, -1, 1, 1).unwrap();
        assert!(self_check_branches(&spec).unwrap().is_empty());
    }
}
