//! Command-line front end: mesh dumps, single solves, convergence sweeps and
//! the uniform-mesh stability report.
//!
//! Everything except argument collection lives here so tests can drive
//! [`run`] against an in-memory writer.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shishkin_rk::convergence::{build_mesh, SweepSpec};
use shishkin_rk::prelude::*;

pub mod format;
pub mod read;

pub use format::{format_g17, format_sci3};

/// Exit status for a malformed invocation.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when the numerics fail (singular step, non-finite value, ...).
pub const EXIT_NUMERICAL: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] shishkin_rk::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use shishkin_rk::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            // Rejected inputs are usage errors even when the library spots them.
            CliError::Numerical(E::Parameter { .. } | E::Lookup { .. } | E::Precondition(_) | E::UnsupportedForm { .. }) => {
                EXIT_USAGE
            }
            _ => EXIT_NUMERICAL,
        }
    }
}

/// Parses `0.25` or `2^-7.225` into a value in (0, 1].
pub fn parse_epsilon(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let value = match text.split_once('^') {
        Some((base, exponent)) => {
            if base.trim() != "2" {
                return Err(format!("`{text}`: only powers of 2 are accepted"));
            }
            let e: f64 = exponent
                .trim()
                .parse()
                .map_err(|_| format!("`{text}`: bad exponent"))?;
            2f64.powf(e)
        }
        None => text.parse().map_err(|_| format!("`{text}` is not a number"))?,
    };
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("`{text}` evaluates to {value}, outside (0, 1]"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "shishkin-rk", version, about = "Runge-Kutta solvers on Shishkin meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump mesh nodes as CSV.
    Mesh(Options),
    /// Integrate one problem and compare against the exact solution.
    Solve(Options),
    /// Error and order table over ε values and N = 2^k.
    Sweep(Options),
    /// Oscillation count and max error for one run.
    Stability(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, value_parser = parse_builtin)]
    pub problem: Option<BuiltinName>,
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Option<SchemeName>,
    /// Mesh type.
    #[arg(long, alias = "type", value_parser = parse_mesh_kind, default_value = "shishkin")]
    pub mesh: MeshKind,
    #[arg(long, conflicts_with_all = ["kmin", "kmax"])]
    pub n_intervals: Option<usize>,
    #[arg(long)]
    pub kmin: Option<u32>,
    #[arg(long)]
    pub kmax: Option<u32>,
    /// ε values, decimal or 2^e, comma separated.
    #[arg(long, alias = "epsilon", value_delimiter = ',', value_parser = parse_epsilon)]
    pub eps: Vec<f64>,
    /// Method order n in the transition point.
    #[arg(long, default_value_t = 2)]
    pub mesh_order: u32,
    /// Layer constant b in the transition point.
    #[arg(long, default_value_t = 1.0)]
    pub mesh_b: f64,
    /// Fraction of intervals placed in the layer.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_builtin(s: &str) -> Result<BuiltinName, String> {
    s.parse().map_err(|e: shishkin_rk::Error| e.to_string())
}

fn parse_scheme(s: &str) -> Result<SchemeName, String> {
    s.parse().map_err(|e: shishkin_rk::Error| e.to_string())
}

fn parse_mesh_kind(s: &str) -> Result<MeshKind, String> {
    s.parse().map_err(|e: shishkin_rk::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Mesh,
    Solve,
    Sweep,
    Stability,
}

/// Either a fixed interval count or a sweep range `N = 2^kmin ..= 2^kmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Size {
    Intervals(usize),
    Powers { k_min: u32, k_max: u32 },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub problem: Option<BuiltinName>,
    pub scheme: Option<SchemeName>,
    pub mesh_kind: MeshKind,
    pub size: Size,
    pub epsilons: Vec<f64>,
    pub settings: MeshSettings,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let (command, o) = match cli.command {
            Command::Mesh(o) => (CommandKind::Mesh, o),
            Command::Solve(o) => (CommandKind::Solve, o),
            Command::Sweep(o) => (CommandKind::Sweep, o),
            Command::Stability(o) => (CommandKind::Stability, o),
        };
        let usage = |m: &str| CliError::Usage(m.to_string());
        let size = match command {
            CommandKind::Sweep => match (o.kmin, o.kmax) {
                (Some(k_min), Some(k_max)) => Size::Powers { k_min, k_max },
                _ => return Err(usage("sweep needs --kmin and --kmax")),
            },
            _ => {
                if o.kmin.is_some() || o.kmax.is_some() {
                    return Err(usage("--kmin/--kmax only apply to sweep"));
                }
                Size::Intervals(o.n_intervals.ok_or_else(|| usage("--n-intervals is required"))?)
            }
        };
        let needs_solver = command != CommandKind::Mesh;
        if needs_solver && o.problem.is_none() {
            return Err(usage("--problem is required"));
        }
        if needs_solver && o.scheme.is_none() {
            return Err(usage("--scheme is required"));
        }
        let needs_epsilon = needs_solver || o.mesh == MeshKind::Shishkin;
        match (command, o.eps.len()) {
            (CommandKind::Sweep, 0) => return Err(usage("sweep needs at least one --eps value")),
            (CommandKind::Sweep, _) => {}
            (_, 0) if needs_epsilon => return Err(usage("--eps is required")),
            (_, n) if n > 1 => return Err(usage("only sweep accepts several --eps values")),
            _ => {}
        }
        if o.format == OutputFormat::Md && command != CommandKind::Sweep {
            return Err(usage("--format md is only available for sweep"));
        }
        Ok(RunConfig {
            command,
            problem: o.problem,
            scheme: o.scheme,
            mesh_kind: o.mesh,
            size,
            epsilons: o.eps,
            settings: MeshSettings {
                method_order: o.mesh_order,
                layer_constant: o.mesh_b,
                split: o.alpha,
            },
            format: o.format,
            out: o.out,
        })
    }

    /// Parses an argument list (program name first).
    pub fn parse_from<I, T>(args: I) -> Result<RunConfig, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    fn epsilon(&self) -> f64 {
        // Uniform mesh dumps do not need ε; any admissible value works.
        self.epsilons.first().copied().unwrap_or(1.0)
    }

    fn intervals(&self) -> usize {
        match self.size {
            Size::Intervals(n) => n,
            Size::Powers { k_min, .. } => 1 << k_min,
        }
    }
}

/// Executes `config`, writing the artifact to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.command {
        CommandKind::Mesh => write_mesh(config, out),
        CommandKind::Solve => write_solution(config, out),
        CommandKind::Sweep => write_sweep(config, out),
        CommandKind::Stability => write_stability(config, out),
    }
}

fn mesh_for(config: &RunConfig) -> Result<Mesh, CliError> {
    Ok(build_mesh(config.mesh_kind, config.intervals(), config.epsilon(), config.settings)?)
}

fn write_mesh(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let mesh = mesh_for(config)?;
    let n = mesh.n_intervals();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "xi", "x", "h"])?;
    for (i, &x) in mesh.nodes().iter().enumerate() {
        let xi = i as f64 / n as f64;
        let h = mesh.widths().get(i).map(|&h| format_g17(h)).unwrap_or_default();
        w.write_record([i.to_string(), format_g17(xi), format_g17(x), h])?;
    }
    w.flush()?;
    Ok(())
}

fn problem_for(config: &RunConfig, epsilon: f64) -> Result<Problem, CliError> {
    let name = config.problem.expect("validated");
    Ok(Problem::builtin(name, epsilon)?)
}

fn write_solution(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let problem = problem_for(config, config.epsilon())?;
    let mesh = mesh_for(config)?;
    let traj = integrate(config.scheme.expect("validated"), &problem, &mesh)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y_numeric", "y_exact", "abs_error"])?;
    for (&x, &y) in traj.nodes().iter().zip(&traj.values) {
        let (exact, err) = match problem.exact(x) {
            Ok(e) => (format_g17(e), format_g17((e - y).abs())),
            Err(_) => (String::new(), String::new()),
        };
        w.write_record([format_g17(x), format_g17(y), exact, err])?;
    }
    w.flush()?;
    Ok(())
}

fn write_sweep(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let Size::Powers { k_min, k_max } = config.size else {
        unreachable!("validated")
    };
    let spec = SweepSpec::new(
        config.scheme.expect("validated"),
        config.problem.expect("validated"),
        config.epsilons.clone(),
        k_min,
        k_max,
    )
    .with_mesh(config.mesh_kind, config.settings);
    let table = run_sweep(&spec)?;
    match config.format {
        OutputFormat::Csv => write_sweep_csv(&table, out),
        OutputFormat::Md => {
            out.write_all(sweep_markdown(&table).as_bytes())?;
            Ok(())
        }
    }
}

fn write_sweep_csv(table: &ConvergenceTable, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["epsilon", "k", "N", "E_N", "ord"])?;
    for cell in table.iter() {
        w.write_record([
            format_g17(cell.epsilon),
            cell.k.to_string(),
            cell.n_intervals.to_string(),
            format_g17(cell.error),
            cell.order.map(format_g17).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Renders the table with one `N` row per k and an `(E_N, ord)` column pair
/// per ε.
pub fn sweep_markdown(table: &ConvergenceTable) -> String {
    let mut s = String::from("| N |");
    let mut rule = String::from("|---|");
    for &e in &table.epsilons {
        let label = format::epsilon_label(e);
        let _ = write!(s, " E_N (ε={label}) | ord |");
        rule.push_str("---:|---:|");
    }
    s.push('\n');
    s.push_str(&rule);
    s.push('\n');
    for (row, &k) in table.ks.iter().enumerate() {
        let _ = write!(s, "| 2^{k} |");
        for cells in &table.cells {
            let cell = &cells[row];
            let ord = cell.order.map(|o| format!("{o:.2}")).unwrap_or_else(|| "-".into());
            let _ = write!(s, " {} | {ord} |", format_sci3(cell.error));
        }
        s.push('\n');
    }
    s
}

fn write_stability(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let epsilon = config.epsilon();
    let problem = problem_for(config, epsilon)?;
    let mesh = mesh_for(config)?;
    let scheme = config.scheme.expect("validated");
    let traj = integrate(scheme, &problem, &mesh)?;
    writeln!(
        out,
        "scheme={scheme} epsilon={} N={} oscillations={} max_error={}",
        format_g17(epsilon),
        mesh.n_intervals(),
        oscillation_count(&traj),
        format_g17(max_error(&traj, &problem)?),
    )?;
    Ok(())
}

/// Runs with the process arguments and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| match &config.out {
        Some(path) => {
            // Render fully before touching the file so failures leave no partial output.
            let mut buf = Vec::new();
            run(&config, &mut buf)?;
            std::fs::write(path, buf)?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&config, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("shishkin-rk: {e}");
            e.exit_code()
        }
    }
}
