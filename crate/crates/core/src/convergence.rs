//! Error measurement, convergence orders and sweep tables.

use crate::error::{Error, Result};
use crate::ivp::{BuiltinName, Problem};
use crate::meshgen::{Mesh, MeshKind, MeshSettings, ShishkinParams, CANONICAL_DOMAIN};
use crate::steppers::{integrate, Trajectory};
use crate::tableaux::SchemeName;

/// Increments at or below this magnitude are ignored by [`oscillation_count`].
pub const OSCILLATION_DEAD_BAND: f64 = 1e-14;

/// `E_N = max_i |y(x_i) − y_i|` over all mesh nodes.
pub fn max_error(trajectory: &Trajectory, problem: &Problem) -> Result<f64> {
    trajectory
        .nodes()
        .iter()
        .zip(&trajectory.values)
        .try_fold(0.0f64, |acc, (&x, &y)| {
            Ok(acc.max((problem.exact(x)? - y).abs()))
        })
}

/// Shishkin-adjusted order `(ln E_N − ln E_2N) / ln(2k/(k+1))`, `N = 2^k`.
///
/// The denominator is the log-ratio of `N^{-1} ln N` between `N` and `2N`,
/// so the result is the rate `r` in `E_N ~ (N^{-1} ln N)^r`.
pub fn shishkin_order(e_n: f64, e_2n: f64, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::Parameter {
            name: "k",
            value: k as f64,
            reason: "must be at least 2",
        });
    }
    for (name, value) in [("e_n", e_n), ("e_2n", e_2n)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Parameter {
                name,
                value,
                reason: "errors must be positive and finite",
            });
        }
    }
    let k = k as f64;
    Ok((e_n.ln() - e_2n.ln()) / (2.0 * k / (k + 1.0)).ln())
}

/// Number of strict sign changes between successive increments
/// `values[i+1] − values[i]`, skipping increments inside the dead band.
pub fn oscillation_count(trajectory: &Trajectory) -> usize {
    count_sign_changes(&trajectory.values)
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    if values.len() < 3 {
        return 0;
    }
    let mut previous: Option<bool> = None;
    let mut changes = 0;
    for pair in values.windows(2) {
        let d = pair[1] - pair[0];
        if d.abs() <= OSCILLATION_DEAD_BAND {
            continue;
        }
        let rising = d > 0.0;
        if previous.is_some_and(|p| p != rising) {
            changes += 1;
        }
        previous = Some(rising);
    }
    changes
}

/// Builds the mesh of the given kind with `N` intervals on `[0, 1]`.
pub fn build_mesh(
    kind: MeshKind,
    n_intervals: usize,
    epsilon: f64,
    settings: MeshSettings,
) -> Result<Mesh> {
    match kind {
        MeshKind::Uniform => Mesh::uniform(n_intervals, CANONICAL_DOMAIN.0, CANONICAL_DOMAIN.1),
        MeshKind::Shishkin => {
            Mesh::shishkin(&ShishkinParams::with_settings(n_intervals, epsilon, settings))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub epsilon: f64,
    pub k: u32,
    pub n_intervals: usize,
    pub error: f64,
    /// Absent for the largest k.
    pub order: Option<f64>,
}

/// `(ε × N)` grid of errors and orders, `N = 2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub scheme: SchemeName,
    pub problem: BuiltinName,
    pub mesh_kind: MeshKind,
    pub settings: MeshSettings,
    pub epsilons: Vec<f64>,
    pub ks: Vec<u32>,
    /// `cells[e][j]` is the cell for `epsilons[e]` and `ks[j]`.
    pub cells: Vec<Vec<SweepCell>>,
}

impl ConvergenceTable {
    pub fn cell(&self, epsilon_index: usize, k: u32) -> Option<&SweepCell> {
        let j = self.ks.iter().position(|&kk| kk == k)?;
        self.cells.get(epsilon_index)?.get(j)
    }

    /// Cell lookup by ε value (exact match).
    pub fn cell_at(&self, epsilon: f64, k: u32) -> Option<&SweepCell> {
        let e = self.epsilons.iter().position(|&v| v == epsilon)?;
        self.cell(e, k)
    }

    /// All cells in ε-major, k-minor order.
    pub fn iter(&self) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().flatten()
    }
}

/// Parameters of a convergence sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scheme: SchemeName,
    pub problem: BuiltinName,
    pub epsilons: Vec<f64>,
    pub k_min: u32,
    pub k_max: u32,
    pub mesh_kind: MeshKind,
    pub settings: MeshSettings,
}

impl SweepSpec {
    pub fn new(scheme: SchemeName, problem: BuiltinName, epsilons: Vec<f64>, k_min: u32, k_max: u32) -> Self {
        SweepSpec {
            scheme,
            problem,
            epsilons,
            k_min,
            k_max,
            mesh_kind: MeshKind::Shishkin,
            settings: MeshSettings::default(),
        }
    }

    pub fn with_mesh(mut self, kind: MeshKind, settings: MeshSettings) -> Self {
        self.mesh_kind = kind;
        self.settings = settings;
        self
    }
}

/// Largest exponent accepted for `N = 2^k`.
pub const MAX_K: u32 = 24;

/// Runs every `(ε, k)` cell and fills in orders from consecutive `k`.
pub fn run_sweep(spec: &SweepSpec) -> Result<ConvergenceTable> {
    if spec.epsilons.is_empty() {
        return Err(Error::Precondition("epsilon list is empty".into()));
    }
    if !(2 <= spec.k_min && spec.k_min < spec.k_max && spec.k_max <= MAX_K) {
        return Err(Error::Precondition(format!(
            "need 2 <= k_min < k_max <= {MAX_K}, got k_min = {}, k_max = {}",
            spec.k_min, spec.k_max
        )));
    }
    let ks: Vec<u32> = (spec.k_min..=spec.k_max).collect();
    let jobs: Vec<(f64, u32)> = spec
        .epsilons
        .iter()
        .flat_map(|&e| ks.iter().map(move |&k| (e, k)))
        .collect();

    let errors = map_cells(&jobs, |&(epsilon, k)| {
        error_cell(spec, epsilon, k).map_err(|e| Error::Cell {
            epsilon,
            k,
            source: Box::new(e),
        })
    })?;

    let mut cells = Vec::with_capacity(spec.epsilons.len());
    for (e, &epsilon) in spec.epsilons.iter().enumerate() {
        let row_errors = &errors[e * ks.len()..(e + 1) * ks.len()];
        let mut row = Vec::with_capacity(ks.len());
        for (j, &k) in ks.iter().enumerate() {
            let order = row_errors.get(j + 1).map(|&next| order_or_nan(row_errors[j], next, k));
            row.push(SweepCell {
                epsilon,
                k,
                n_intervals: 1usize << k,
                error: row_errors[j],
                order,
            });
        }
        cells.push(row);
    }

    Ok(ConvergenceTable {
        scheme: spec.scheme,
        problem: spec.problem,
        mesh_kind: spec.mesh_kind,
        settings: spec.settings,
        epsilons: spec.epsilons.clone(),
        ks,
        cells,
    })
}

// An error of exactly zero has no defined order; report NaN rather than fail
// the whole table.
fn order_or_nan(e_n: f64, e_2n: f64, k: u32) -> f64 {
    shishkin_order(e_n, e_2n, k).unwrap_or(f64::NAN)
}

fn error_cell(spec: &SweepSpec, epsilon: f64, k: u32) -> Result<f64> {
    let problem = Problem::builtin(spec.problem, epsilon)?;
    let mesh = build_mesh(spec.mesh_kind, 1usize << k, epsilon, spec.settings)?;
    let trajectory = integrate(spec.scheme, &problem, &mesh)?;
    let error = max_error(&trajectory, &problem)?;
    if error.is_finite() {
        Ok(error)
    } else {
        Err(Error::Evaluation { x: f64::NAN, stage: None })
    }
}

#[cfg(feature = "parallel")]
fn map_cells<F>(jobs: &[(f64, u32)], f: F) -> Result<Vec<f64>>
where
    F: Fn(&(f64, u32)) -> Result<f64> + Sync + Send,
{
    use rayon::prelude::*;
    jobs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_cells<F>(jobs: &[(f64, u32)], f: F) -> Result<Vec<f64>>
where
    F: Fn(&(f64, u32)) -> Result<f64>,
{
    jobs.iter().map(f).collect()
}
