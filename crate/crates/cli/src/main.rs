//! `hk`: print kernels, project polynomials, take inner products and run the
//! identity suites with JSON-lines reports.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use hk_core::harmonics::{
    kernel_with, proj_harmonic_complex, proj_harmonic_real, proj_symplectic, standard_system, KernelKind, Orientation,
    SympOrientation,
};
use hk_core::report::{Caps, Status, VerificationReport};
use hk_core::verify::{run_task, tasks, Case, GridSpec, Suite};
use hk_core::{parse_poly, DegreeProfile, Error, KernelParams, OperatorContext};

#[derive(Parser, Debug)]
#[command(name = "hk", version, about = "Exact harmonic kernels and plane-wave identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a reproducing kernel in expanded canonical form.
    Kernel(KernelArgs),
    /// Project a polynomial onto harmonics or symplectic polynomials.
    Project(ProjectArgs),
    /// Fischer or spherical inner product of two polynomials.
    Inner(InnerArgs),
    /// Run identity suites and print one JSON report per line.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Real,
    Complex,
    Symplectic,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Case {
        match c {
            CaseArg::Real => Case::Real,
            CaseArg::Complex => Case::Complex,
            CaseArg::Symplectic => Case::Symplectic,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    /// Real dimension.
    #[arg(long)]
    m: Option<u32>,
    /// Real degree.
    #[arg(long)]
    k: Option<u32>,
    /// Complex dimension, or quaternionic dimension in the symplectic case.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
}

impl PointArgs {
    fn case(&self) -> CaseArg {
        self.case.unwrap_or(if self.m.is_some() || self.k.is_some() {
            CaseArg::Real
        } else {
            CaseArg::Complex
        })
    }

    fn params(&self, case: CaseArg) -> Result<KernelParams, String> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| format!("--{flag} is required for the {case:?} case"));
        let params = match case {
            CaseArg::Real => KernelParams::Real {
                m: need(self.m, "m")?,
                k: self.k.unwrap_or(0),
            },
            CaseArg::Complex => KernelParams::Complex {
                n: need(self.n, "n")?,
                p: self.p.unwrap_or(0),
                q: self.q.unwrap_or(0),
            },
            CaseArg::Symplectic => KernelParams::Symplectic {
                n: need(self.n, "n")?,
                p: self.p.unwrap_or(0),
                q: self.q.unwrap_or(0),
            },
        };
        params.validate().map_err(|e| e.to_string())?;
        Ok(params)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "Z")]
    Z,
    #[value(name = "K")]
    K,
    #[value(name = "ZS")]
    Zs,
    #[value(name = "KS")]
    Ks,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    /// Excess factor `<zbar,u>^(q-p)`.
    ZbarU,
    /// Excess factor `<z,ubar>^(q-p)`.
    ZUbar,
}

#[derive(Args, Debug)]
struct KernelArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Orientation of the symplectic kernels.
    #[arg(long, value_enum, default_value = "zbar-u")]
    orientation: OrientationArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProjectFlavor {
    Harmonic,
    Symplectic,
    SymplecticHarmonic,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    /// Polynomial text; read from --input or stdin when absent.
    poly: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    flavor: ProjectFlavor,
    #[command(flatten)]
    point: PointArgs,
    /// Radial offset of the harmonic projector.
    #[arg(long, default_value_t = 0)]
    ell: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum InnerKind {
    Fischer,
    Sphere,
}

#[derive(Args, Debug)]
struct InnerArgs {
    left: String,
    right: String,
    #[arg(long, value_enum, default_value = "fischer")]
    kind: InnerKind,
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Spherical,
    Complex,
    Symplectic,
    Pizzetti,
    Planewave,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Spherical => Suite::Spherical,
            SuiteArg::Complex => Suite::Complex,
            SuiteArg::Symplectic => Suite::Symplectic,
            SuiteArg::Pizzetti => Suite::Pizzetti,
            SuiteArg::Planewave => Suite::Planewave,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[command(flatten)]
    point: PointArgs,
    /// Largest real degree on the grid.
    #[arg(long)]
    kmax: Option<u32>,
    /// Largest p and q on the complex and symplectic grids.
    #[arg(long)]
    pqmax: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Term cap per task; tasks that exceed it are reported as skipped.
    #[arg(long, env = "HK_MAX_TERMS")]
    max_terms: Option<usize>,
    /// Exit 0 even if some tasks were skipped.
    #[arg(long)]
    allow_skip: bool,
    /// Record wall-clock times in the reports (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

enum Failure {
    Usage(String),
    Identities,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Kernel(a) => cmd_kernel(a),
        Command::Project(a) => cmd_project(a),
        Command::Inner(a) => cmd_inner(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Identities) => ExitCode::from(3),
    }
}

fn cmd_kernel(a: KernelArgs) -> Result<(), Failure> {
    let params = a.point.params(a.point.case()).map_err(Failure::Usage)?;
    let which = match a.which {
        Which::Z => KernelKind::Z,
        Which::K => KernelKind::K,
        Which::Zs => KernelKind::ZS,
        Which::Ks => KernelKind::KS,
    };
    let orientation = match a.orientation {
        OrientationArg::ZbarU => Orientation::ZbarU,
        OrientationArg::ZUbar => Orientation::ZUbar,
    };
    let poly = kernel_with(&params, which, orientation)?;
    match a.format {
        Format::Text => println!("{poly}"),
        Format::Json => println!(
            "{}",
            json!({ "params": params, "which": format!("{:?}", a.which).to_uppercase(), "polynomial": poly.to_string() })
        ),
    }
    Ok(())
}

fn read_input(inline: Option<String>, path: Option<PathBuf>) -> Result<String, Failure> {
    if let Some(text) = inline {
        return Ok(text);
    }
    let mut buf = String::new();
    match path {
        Some(p) => buf = std::fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    Ok(buf.trim().to_string())
}

fn cmd_project(a: ProjectArgs) -> Result<(), Failure> {
    let case = match (a.point.case, a.flavor) {
        (Some(c), _) => c,
        (None, ProjectFlavor::Symplectic | ProjectFlavor::SymplecticHarmonic) => CaseArg::Symplectic,
        (None, ProjectFlavor::Harmonic) => a.point.case(),
    };
    if case == CaseArg::Real && a.flavor != ProjectFlavor::Harmonic {
        return Err(Failure::Usage("symplectic projections need --n".into()));
    }
    let params = a.point.params(case).map_err(Failure::Usage)?;
    let sys = standard_system(&params)?;
    let group = if case == CaseArg::Real { "x" } else { "z" };
    let ctx = OperatorContext::new(&sys, group)?;
    let text = read_input(a.poly, a.input)?;
    let poly = parse_poly(&sys, &text)?;
    ctx.require_pure(&poly)?;
    let profile = poly.degree_profile(group)?;
    if profile == DegreeProfile::Inhomogeneous {
        return Err(Failure::Usage(format!("input is not homogeneous in {group}")));
    }
    let symplectic = |p| -> Result<_, Failure> {
        let orientation = match profile {
            DegreeProfile::Bidegree(dp, dq) if dp > dq => SympOrientation::E,
            _ => SympOrientation::Edag,
        };
        Ok(proj_symplectic(&ctx, p, orientation)?)
    };
    let out = match a.flavor {
        ProjectFlavor::Harmonic if case == CaseArg::Real => proj_harmonic_real(&ctx, &poly, a.ell)?,
        ProjectFlavor::Harmonic => proj_harmonic_complex(&ctx, &poly, a.ell)?,
        ProjectFlavor::Symplectic => symplectic(&poly)?,
        ProjectFlavor::SymplecticHarmonic => proj_harmonic_complex(&ctx, &symplectic(&poly)?, a.ell)?,
    };
    println!("{out}");
    Ok(())
}

fn cmd_inner(a: InnerArgs) -> Result<(), Failure> {
    let case = a.point.case();
    let params = a.point.params(case).map_err(Failure::Usage)?;
    let sys = standard_system(&params)?;
    let group = if case == CaseArg::Real { "x" } else { "z" };
    let ctx = OperatorContext::new(&sys, group)?;
    let left = parse_poly(&sys, &a.left)?;
    let right = parse_poly(&sys, &a.right)?;
    let value = match a.kind {
        InnerKind::Fischer => ctx.fischer_pairing(&left, &right),
        InnerKind::Sphere => ctx.spherical_inner(&left, &right),
    };
    println!("{value}");
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let grid = GridSpec {
        case: a.point.case.map(Case::from),
        m: a.point.m,
        k: a.point.k,
        kmax: a.kmax,
        n: a.point.n,
        p: a.point.p,
        q: a.point.q,
        pqmax: a.pqmax,
    };
    grid.validate()?;
    let caps = a.max_terms.map_or_else(Caps::default, |max_terms| Caps { max_terms });
    let work = tasks(a.suite.into(), &grid);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut reports: Vec<VerificationReport> = pool.install(|| {
        work.par_iter()
            .map(|t| {
                let start = Instant::now();
                let mut r = run_task(t, a.seed, &caps);
                if a.timings {
                    r.elapsed_ms = start.elapsed().as_millis() as u64;
                }
                r
            })
            .collect()
    });
    reports.sort_by(|x, y| (&x.identity_id, x.params).cmp(&(&y.identity_id, y.params)));
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        let line = serde_json::to_string(r).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    eprintln!("{} reports: {} pass, {failed} fail, {skipped} skipped", reports.len(), reports.len() - failed - skipped);
    if failed > 0 || (skipped > 0 && !a.allow_skip) {
        return Err(Failure::Identities);
    }
    Ok(())
}
