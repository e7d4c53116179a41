//! `pcx`: command-line front end for the canonoid / Poissonoid toolkit.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit status 0 means every
//! check passed, 1 means a mathematical check failed, 2 means bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pcx_core::canonoid::{canonoid_report, gamma_nullspace};
use pcx_core::dynamics::{drift_report, integrate};
use pcx_core::linalg::RationalMatrix;
use pcx_core::poissonoid::{
    casimirs, check_poissonoid_linear, compatible, hamiltonize, is_poisson, kirchhoff_certificate, KirchhoffParams,
};
use pcx_core::polyalg::{parse_poly, parse_rational, Polynomial, Rational};
use pcx_core::scenarios::{
    builtin_names, load_builtin, resolve_scenario, run_scenario_with, RunOptions, Scenario, ScenarioReport,
};
use pcx_core::symmetry::{master_generator_check, master_symmetry_degree};
use pcx_core::tensorcalc::{ham_vf, schouten, Bivector, KForm, VectorField};
use pcx_core::whittaker::generator_check;
use pcx_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "pcx",
    version,
    about = "Exact checks for canonoid and Poissonoid transformations"
)]
struct Cli {
    /// Output mode for the JSON report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Ansatz degree for Hamiltonian and Casimir solves.
#[derive(Args, Debug, Clone, Copy)]
struct DegreeArg {
    #[arg(long, env = "PCX_MAX_DEGREE", default_value_t = 2)]
    degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a linear map A against the Hessian S of a quadratic Hamiltonian.
    Canonoid {
        #[arg(long = "S", value_name = "FILE")]
        s: PathBuf,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
    },
    /// Basis of the solution space of Gamma J S + S J Gamma = 0.
    GammaSpace {
        #[arg(long = "S", value_name = "FILE")]
        s: PathBuf,
    },
    /// Schouten bracket [pi, pi] of the scenario, or [pi, other].
    Schouten {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_name = "FILE")]
        other: Option<PathBuf>,
    },
    /// Whether a second bivector is Poisson and compatible with the scenario's.
    Compat {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_name = "FILE")]
        other: PathBuf,
        /// Also test that the scenario field is Hamiltonian for `other` with this function.
        #[arg(long, allow_hyphen_values = true)]
        hamiltonian: Option<String>,
    },
    /// Polynomial Casimirs up to a degree bound.
    Casimir {
        #[arg(long)]
        scenario: String,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Solve pi # dK = X for K.
    Hamiltonize {
        #[arg(long)]
        scenario: String,
        /// Vector field file; defaults to the scenario's Hamiltonian field.
        #[arg(long, value_name = "FILE")]
        field: Option<PathBuf>,
        /// Bivector file; defaults to the scenario's structure.
        #[arg(long, value_name = "FILE")]
        bivector: Option<PathBuf>,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Poissonoid checks for linear maps.
    Poissonoid {
        #[command(subcommand)]
        command: PoissonoidCommand,
    },
    /// The 6x6 certificate for the Clebsch system.
    Kirchhoff {
        /// Three comma-separated rationals.
        #[arg(long)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Test a 1-form as a generator of the scenario's field.
    Whittaker {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_name = "FILE")]
        theta: PathBuf,
    },
    /// Master-symmetry degree of a vector field.
    Symmetry {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_name = "FILE")]
        xi: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Master-generator check for a function T.
    MasterGen {
        #[arg(long)]
        scenario: String,
        #[arg(long = "T", value_name = "POLY", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// RK4 trajectory and conservation drift.
    Integrate {
        #[arg(long)]
        scenario: String,
        /// Comma-separated initial state.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        t_end: f64,
        #[arg(long)]
        step: f64,
        /// `all`, `none`, or comma-separated integral names.
        #[arg(long, default_value = "all")]
        invariants: String,
        /// Write the trajectory as CSV; `-` sends it to stdout instead of the report.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Fail when any drift exceeds this.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Builtin scenarios.
    Scenario {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
}

#[derive(Subcommand, Debug)]
enum PoissonoidCommand {
    Check {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        transform: String,
        #[command(flatten)]
        degree: DegreeArg,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioCommand {
    List,
    /// Run the declared checks of one scenario (builtin name or file) or all builtins.
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        degree: DegreeArg,
    },
}

/// A finished command: the JSON report and whether its checks passed.
struct Outcome {
    report: Value,
    passed: bool,
}

impl Outcome {
    fn pass(report: Value) -> Self {
        Outcome { report, passed: true }
    }

    fn verdict(report: Value, passed: bool) -> Self {
        Outcome { report, passed }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.command) {
        Ok(Output::Json(o)) => {
            emit(&render(&o.report, cli.format));
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Ok(Output::Raw(text, passed)) => {
            emit_raw(&text);
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => match e.downcast_ref::<Error>() {
            // Load-time invariant failures are mathematical, not input errors.
            Some(Error::Invariant {
                scenario,
                item,
                message,
            }) => {
                let report = json!({
                    "passed": false,
                    "error": "invariant",
                    "scenario": scenario,
                    "item": item,
                    "message": message,
                });
                emit(&render(&report, cli.format));
                ExitCode::from(1)
            }
            _ => {
                eprintln!("pcx: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}

// A closed pipe (e.g. `pcx ... | head`) is not an error worth reporting.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit_raw(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Pretty => serde_json::to_string_pretty(v).expect("json values serialize"),
    }
}

enum Output {
    Json(Outcome),
    /// Already formatted text for stdout.
    Raw(String, bool),
}

fn dispatch(cmd: &Command) -> anyhow::Result<Output> {
    let out = match cmd {
        Command::Canonoid { s, a } => {
            let s = read_matrix(s)?;
            let a = read_matrix(a)?;
            let r = canonoid_report(&a, &s)?;
            let passed = r.is_canonoid;
            Outcome::verdict(serde_json::to_value(r)?, passed)
        }
        Command::GammaSpace { s } => {
            let basis = gamma_nullspace(&read_matrix(s)?)?;
            Outcome::pass(json!({
                "dimension": basis.len(),
                "basis": basis.iter().map(RationalMatrix::to_strings).collect::<Vec<_>>(),
            }))
        }
        Command::Schouten { scenario, other } => {
            let sc = scenario_arg(scenario)?;
            let q = match other {
                Some(p) => read_bivector(&sc, p)?,
                None => sc.pi.clone(),
            };
            let t = schouten(&sc.pi, &q)?;
            let entries: Vec<Value> = t
                .entries()
                .filter(|(_, p)| !p.is_zero())
                .map(|(idx, p)| {
                    let names: Vec<&str> = idx.iter().map(|&i| sc.chart.name(i)).collect();
                    json!({"index": names, "value": p.to_string()})
                })
                .collect();
            Outcome::verdict(json!({"zero": t.is_zero(), "nonzero_entries": entries}), t.is_zero())
        }
        Command::Compat {
            scenario,
            other,
            hamiltonian,
        } => {
            let sc = scenario_arg(scenario)?;
            let q = read_bivector(&sc, other)?;
            let poisson = is_poisson(&q);
            let compat = if poisson { Some(compatible(&sc.pi, &q)?) } else { None };
            let mut passed = poisson && compat == Some(true);
            let mut report = json!({"is_poisson": poisson, "compatible": compat});
            if let Some(k) = hamiltonian {
                let k = parse_poly(k, &sc.chart)?;
                let hamiltonian_field = ham_vf(&q, &k)? == ham_vf(&sc.pi, &sc.hamiltonian)?;
                passed &= hamiltonian_field;
                report["hamiltonian_field"] = json!(hamiltonian_field);
            }
            Outcome::verdict(report, passed)
        }
        Command::Casimir { scenario, degree } => {
            let sc = scenario_arg(scenario)?;
            let b = casimirs(&sc.pi, degree.degree)?;
            Outcome::pass(json!({
                "degree_bound": b.degree_bound,
                "dimension": b.basis.len(),
                "basis": b.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }))
        }
        Command::Hamiltonize {
            scenario,
            field,
            bivector,
            degree,
        } => {
            let sc = scenario_arg(scenario)?;
            let pi = match bivector {
                Some(p) => read_bivector(&sc, p)?,
                None => sc.pi.clone(),
            };
            let x = match field {
                Some(p) => VectorField::parse(&sc.chart, &read_strings(p)?)?,
                None => ham_vf(&sc.pi, &sc.hamiltonian)?,
            };
            let r = hamiltonize(&pi, &x, degree.degree)?;
            Outcome::verdict(r.to_json(), r.is_feasible())
        }
        Command::Poissonoid {
            command:
                PoissonoidCommand::Check {
                    scenario,
                    transform,
                    degree,
                },
        } => {
            let sc = scenario_arg(scenario)?;
            let a = sc.transform(transform)?;
            let r = check_poissonoid_linear(&sc.pi, a, &sc.hamiltonian, degree.degree)?;
            Outcome::verdict(r.to_json(), r.is_poissonoid())
        }
        Command::Kirchhoff { omega, eps, a } => {
            let w = rationals(omega)?;
            let omega: [Rational; 3] = w
                .try_into()
                .map_err(|_| anyhow!("--omega needs exactly three values"))?;
            let params = KirchhoffParams {
                omega,
                eps: parse_rational(eps)?,
                a: parse_rational(a)?,
            };
            let r = kirchhoff_certificate(&params)?;
            let passed = r.passed();
            let mut v = serde_json::to_value(r)?;
            v["passed"] = json!(passed);
            Outcome::verdict(v, passed)
        }
        Command::Whittaker { scenario, theta } => {
            let sc = scenario_arg(scenario)?;
            let theta = KForm::parse_one_form(&sc.chart, &read_strings(theta)?)?;
            let r = generator_check(&ham_vf(&sc.pi, &sc.hamiltonian)?, &theta)?;
            let passed = r.absolute || r.relative;
            Outcome::verdict(r.to_json(), passed)
        }
        Command::Symmetry {
            scenario,
            xi,
            max_degree,
        } => {
            let sc = scenario_arg(scenario)?;
            let xi = VectorField::parse(&sc.chart, &read_strings(xi)?)?;
            let v = master_symmetry_degree(&ham_vf(&sc.pi, &sc.hamiltonian)?, &xi, *max_degree)?;
            let passed = v.degree.is_some();
            Outcome::verdict(v.to_json(), passed)
        }
        Command::MasterGen { scenario, t, m } => {
            let sc = scenario_arg(scenario)?;
            let t = parse_poly(t, &sc.chart)?;
            let v = master_generator_check(&sc.pi, &ham_vf(&sc.pi, &sc.hamiltonian)?, &t, *m)?;
            let passed = v.constants_degree.is_some();
            Outcome::verdict(v.to_json(), passed)
        }
        Command::Integrate {
            scenario,
            x0,
            t_end,
            step,
            invariants,
            csv,
            tolerance,
        } => {
            let sc = scenario_arg(scenario)?;
            let x0: Vec<f64> = x0
                .split(',')
                .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad --x0 entry `{s}`")))
                .collect::<anyhow::Result<_>>()?;
            let traj = integrate(&sc.pi, &sc.hamiltonian, &x0, *t_end, *step)?;
            let inv = select_invariants(&sc, invariants)?;
            let drift = drift_report(&traj, &inv)?;
            let passed = tolerance.is_none_or(|t| drift.within(t));
            match csv {
                Some(p) if p.as_os_str() == "-" => return Ok(Output::Raw(traj.to_csv(&sc.chart), passed)),
                Some(p) => fs::write(p, traj.to_csv(&sc.chart)).with_context(|| format!("writing {}", p.display()))?,
                None => {}
            }
            Outcome::verdict(
                json!({
                    "steps": traj.times.len() - 1,
                    "step": traj.step(),
                    "final_state": traj.last(),
                    "max_drift": drift.max_drift(),
                    "drift": drift.entries,
                    "tolerance": tolerance,
                }),
                passed,
            )
        }
        Command::Scenario { command } => scenario_command(command)?,
    };
    Ok(Output::Json(out))
}

fn scenario_command(cmd: &ScenarioCommand) -> anyhow::Result<Outcome> {
    match cmd {
        ScenarioCommand::List => {
            let list = builtin_names()
                .map(|n| {
                    let s = load_builtin(n)?;
                    Ok(json!({
                        "name": n,
                        "description": s.description,
                        "checks": s.checks.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                    }))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(Outcome::pass(Value::Array(list)))
        }
        ScenarioCommand::Run { name, all, degree } => {
            let opts = RunOptions { degree: degree.degree };
            if *all {
                let names: Vec<&str> = builtin_names().collect();
                let reports = run_parallel(&names, &opts)?;
                let passed = reports.iter().all(|r| r.passed);
                Ok(Outcome::verdict(
                    json!({"passed": passed, "scenarios": serde_json::to_value(&reports)?}),
                    passed,
                ))
            } else {
                let sc = scenario_arg(name.as_deref().expect("clap requires a name"))?;
                let r = run_scenario_with(&sc, &opts);
                let passed = r.passed;
                Ok(Outcome::verdict(serde_json::to_value(r)?, passed))
            }
        }
    }
}

/// One worker per scenario; reports come back in input order.
fn run_parallel(names: &[&str], opts: &RunOptions) -> anyhow::Result<Vec<ScenarioReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| scope.spawn(move || load_builtin(n).map(|s| run_scenario_with(&s, opts))))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| anyhow!("scenario worker panicked"))?
                    .map_err(Into::into)
            })
            .collect()
    })
}

fn scenario_arg(target: &str) -> anyhow::Result<Scenario> {
    Ok(resolve_scenario(target)?)
}

fn select_invariants(sc: &Scenario, which: &str) -> anyhow::Result<Vec<(String, Polynomial)>> {
    match which {
        "all" => Ok(sc.invariants()),
        "none" => Ok(Vec::new()),
        list => {
            let all = sc.invariants();
            list.split(',')
                .map(str::trim)
                .map(|n| {
                    all.iter()
                        .find(|(m, _)| m == n)
                        .cloned()
                        .ok_or_else(|| anyhow!("scenario `{}` has no invariant `{n}`", sc.name))
                })
                .collect()
        }
    }
}

fn rationals(text: &str) -> anyhow::Result<Vec<Rational>> {
    text.split(',').map(|s| Ok(parse_rational(s.trim())?)).collect()
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// JSON numbers and strings both become entry text.
fn cell_text(v: &Value) -> anyhow::Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => bail!("expected an integer or a string, found `{other}`"),
    }
}

fn strings_of(v: &Value) -> anyhow::Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| anyhow!("expected a JSON array"))?
        .iter()
        .map(cell_text)
        .collect()
}

fn read_strings(path: &Path) -> anyhow::Result<Vec<String>> {
    strings_of(&read_json(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_rows(path: &Path) -> anyhow::Result<Vec<Vec<String>>> {
    let v = read_json(path)?;
    v.as_array()
        .ok_or_else(|| anyhow!("{}: expected an array of rows", path.display()))?
        .iter()
        .map(strings_of)
        .collect::<anyhow::Result<_>>()
        .with_context(|| format!("in {}", path.display()))
}

fn read_matrix(path: &Path) -> anyhow::Result<RationalMatrix> {
    Ok(RationalMatrix::parse_rows(&read_rows(path)?)?)
}

fn read_bivector(sc: &Scenario, path: &Path) -> anyhow::Result<Bivector> {
    Ok(Bivector::parse(&sc.chart, &read_rows(path)?)?)
}
