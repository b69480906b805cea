use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use alphasectors::io::{self, SpecFile, TheoremChoice};
use alphasectors::sector::classify_sector;
use alphasectors::theorems::{predict_first_location, predict_next_sector, VerifyOptions};
use alphasectors::{alpha_points, AlphaPoint, Error, FunctionSpec, SectorIndex, SolveOptions};

#[derive(Parser)]
#[command(name = "alphasectors", version, about = "Sector localization of the solutions of F(z) = alpha")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Angle tolerance for ray classification (overrides ALPHASECTORS_TOL).
    #[arg(long, global = true)]
    angle_tol: Option<f64>,
}

#[derive(clap::Args)]
struct Common {
    /// JSON function spec.
    #[arg(long)]
    spec: PathBuf,
    /// Right-hand side, e.g. -1-1i.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Auto,
    Main,
    Main2,
    First,
    K2,
}

#[derive(Subcommand)]
enum Command {
    /// All alpha-points with |z| <= radius.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Forecast of the first point, and of the sector following --current.
    Predict {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        current: Option<i64>,
    },
    /// Solve and check the distribution statements.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: Theorem,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Per-sector counts by the argument principle and by the solver.
    Census {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.01)]
        rin: f64,
        #[arg(long, default_value_t = 10.0)]
        rout: f64,
    },
    /// Reproduce a built-in fixture: fig1, fig2a, fig2b, fig3, theta, dexp.
    Demo {
        name: String,
        /// Directory for CSV/SVG/JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tolerances(cli_tol: Option<f64>) -> Result<(SolveOptions, VerifyOptions), Error> {
    let mut s = SolveOptions::default();
    let mut v = VerifyOptions::default();
    if let Some(t) = cli_tol.or(io::env_tolerance()?) {
        s.angle_tol = t;
        v.angle_tol = t;
    }
    Ok((s, v))
}

fn load(c: &Common) -> Result<(SpecFile, FunctionSpec, Complex64), Error> {
    let spec = io::parse_spec_file(&c.spec)?;
    let func = spec.to_function()?;
    Ok((spec, func, io::parse_complex(&c.alpha)?))
}

fn print_points(points: &[AlphaPoint]) {
    for (i, p) in points.iter().enumerate() {
        println!(
            "{i:>3}  {:+.16e} {:+.16e}i  |z| = {:.16e}  {}{}  m = {}",
            p.value.re,
            p.value.im,
            p.modulus,
            p.sector,
            if p.boundary { " (ray)" } else { "" },
            p.multiplicity
        );
    }
}

fn report_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> Result<(), Error> {
    if let Some(p) = path {
        io::write_file(p, &serde_json::to_string_pretty(value).expect("report serializes"))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (sopts, vopts) = tolerances(cli.angle_tol)?;
    match cli.command {
        Command::Solve { common, radius, csv, svg, json } => {
            let (_, func, alpha) = load(&common)?;
            let points = alpha_points(&func, alpha, radius, &sopts)?;
            print_points(&points);
            if let Some(p) = csv {
                io::write_file(&p, &io::points_csv(&points)?)?;
            }
            if let Some(p) = svg {
                io::write_file(&p, &io::render_svg(&points, func.k(), &func))?;
            }
            let recs: Vec<io::PointRecord> = points.iter().map(Into::into).collect();
            report_json(json.as_deref(), &recs)?;
            Ok(true)
        }
        Command::Predict { common, current } => {
            let (_, func, alpha) = load(&common)?;
            let f = func.as_structured().ok_or_else(|| Error::InvalidArgument("predict needs a structured function".into()))?;
            match predict_first_location(f, alpha, vopts.angle_tol) {
                Ok(fc) => println!("first: {}", serde_json::to_string(&fc).expect("forecast serializes")),
                Err(e) => println!("first: unavailable ({e})"),
            }
            if let Some(c) = current {
                let la = classify_sector(f.effective_alpha(alpha), f.k, vopts.angle_tol)?;
                if la.boundary {
                    return Err(Error::InvalidArgument("next-sector rule needs Im alpha^k != 0".into()));
                }
                let next = predict_next_sector(f.p, f.k, la.sector, SectorIndex::new(c, f.k))?;
                println!("next after {}: {next}", SectorIndex::new(c, f.k));
            }
            Ok(true)
        }
        Command::Verify { common, radius, theorem, json } => {
            let (spec, func, alpha) = load(&common)?;
            let points = alpha_points(&func, alpha, radius.min(func.trust_radius()), &sopts)?;
            let choice = match theorem {
                Theorem::Auto => TheoremChoice::Auto,
                Theorem::Main => TheoremChoice::Main,
                Theorem::Main2 => TheoremChoice::Main2,
                Theorem::First => TheoremChoice::First,
                Theorem::K2 => TheoremChoice::K2,
            };
            let r = io::verify_points(&spec, &points, alpha, choice, &vopts)?;
            println!("{}: {} ({} checks, {} points)", r.theorem, if r.passed { "passed" } else { "FAILED" }, r.checks_run(), points.len());
            for v in &r.violations {
                println!("  {} at {:?}: {}", v.predicate, v.indices, v.detail);
            }
            report_json(json.as_deref(), &r)?;
            Ok(r.passed)
        }
        Command::Census { common, rin, rout } => {
            let (_, func, alpha) = load(&common)?;
            let points = alpha_points(&func, alpha, rout * 1.1, &sopts)?;
            let c = io::compare_census(&func, alpha, &points, rin, rout)?;
            println!("annulus {:.16e} < |z| < {:.16e}", c.r_in, c.r_out);
            for (s, (w, p)) in c.winding.iter().zip(&c.solver).enumerate() {
                println!("Q_{s}: winding {w}, solver {p}");
            }
            println!("census {}", if c.agree { "agrees" } else { "DISAGREES" });
            Ok(c.agree)
        }
        Command::Demo { name, out } => {
            let cases = io::demo_cases(&name)?;
            if let Some(d) = &out {
                std::fs::create_dir_all(d).map_err(|e| Error::Io(format!("{}: {e}", d.display())))?;
            }
            let mut all = true;
            for (i, c) in cases.iter().enumerate() {
                let (points, outcome) = io::run_case(c, &sopts, &vopts)?;
                println!("[{name}] {}: {} points", c.label, points.len());
                print_points(&points);
                for r in &outcome.reports {
                    println!("  {}: {} ({} checks)", r.theorem, if r.passed { "passed" } else { "FAILED" }, r.checks_run());
                    for v in &r.violations {
                        println!("    {} at {:?}: {}", v.predicate, v.indices, v.detail);
                    }
                }
                if let Some(cc) = &outcome.census {
                    println!("  census winding {:?} solver {:?}", cc.winding, cc.solver);
                }
                all &= outcome.passed;
                if let Some(d) = &out {
                    let stem = format!("{name}_{i}");
                    let func = c.spec.to_function()?;
                    io::write_file(&d.join(format!("{stem}.csv")), &io::points_csv(&points)?)?;
                    io::write_file(&d.join(format!("{stem}.svg")), &io::render_svg(&points, func.k(), &func))?;
                    report_json(Some(&d.join(format!("{stem}.json"))), &outcome)?;
                }
            }
            println!("[{name}] {}", if all { "passed" } else { "FAILED" });
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
