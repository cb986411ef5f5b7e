//! Bindings behind the demo page. Each export is a thin wrapper over a plain
//! function that native tests call directly.

use shishkin_rk::convergence::{build_mesh, SweepSpec};
use shishkin_rk::prelude::*;
use wasm_bindgen::prelude::*;

fn settings(mesh_order: u32, layer_constant: f64) -> MeshSettings {
    MeshSettings {
        method_order: mesh_order,
        layer_constant,
        ..MeshSettings::default()
    }
}

/// Node abscissae of a Shishkin mesh with `n` intervals.
pub fn mesh_nodes(n: usize, epsilon: f64, mesh_order: u32, layer_constant: f64) -> Result<Vec<f64>, String> {
    let params = ShishkinParams::with_settings(n, epsilon, settings(mesh_order, layer_constant));
    let mesh = Mesh::shishkin(&params).map_err(|e| e.to_string())?;
    Ok(mesh.nodes().to_vec())
}

/// One integration, with the exact solution sampled on the same nodes.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    x: Vec<f64>,
    y: Vec<f64>,
    exact: Vec<f64>,
    max_error: f64,
    oscillations: usize,
}

#[wasm_bindgen]
impl Solution {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn y(&self) -> Vec<f64> {
        self.y.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter, js_name = maxError)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }

    #[wasm_bindgen(getter)]
    pub fn oscillations(&self) -> usize {
        self.oscillations
    }
}

pub fn solve_problem(problem: &str, scheme: &str, mesh_kind: &str, n: usize, epsilon: f64) -> Result<Solution, String> {
    let run = || -> shishkin_rk::Result<Solution> {
        let problem = Problem::builtin(problem.parse()?, epsilon)?;
        let mesh = build_mesh(mesh_kind.parse()?, n, epsilon, MeshSettings::default())?;
        let traj = integrate(scheme.parse()?, &problem, &mesh)?;
        let exact = traj.nodes().iter().map(|&x| problem.exact(x)).collect::<shishkin_rk::Result<_>>()?;
        Ok(Solution {
            max_error: max_error(&traj, &problem)?,
            oscillations: oscillation_count(&traj),
            x: traj.nodes().to_vec(),
            y: traj.values,
            exact,
        })
    };
    run().map_err(|e| e.to_string())
}

/// Error column of a sweep for a single ε.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct SweepColumn {
    ks: Vec<u32>,
    errors: Vec<f64>,
    orders: Vec<f64>,
}

#[wasm_bindgen]
impl SweepColumn {
    #[wasm_bindgen(getter)]
    pub fn ks(&self) -> Vec<u32> {
        self.ks.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }

    /// Orders per row; the last row has none and reads NaN.
    #[wasm_bindgen(getter)]
    pub fn orders(&self) -> Vec<f64> {
        self.orders.clone()
    }
}

pub fn sweep_column(problem: &str, scheme: &str, epsilon: f64, k_min: u32, k_max: u32) -> Result<SweepColumn, String> {
    let run = || -> shishkin_rk::Result<SweepColumn> {
        let spec = SweepSpec::new(scheme.parse()?, problem.parse()?, vec![epsilon], k_min, k_max);
        let table = run_sweep(&spec)?;
        let cells = &table.cells[0];
        Ok(SweepColumn {
            ks: table.ks.clone(),
            errors: cells.iter().map(|c| c.error).collect(),
            orders: cells.iter().map(|c| c.order.unwrap_or(f64::NAN)).collect(),
        })
    };
    run().map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = shishkinMesh)]
pub fn shishkin_mesh_js(n: usize, epsilon: f64, mesh_order: u32, layer_constant: f64) -> Result<Vec<f64>, JsError> {
    mesh_nodes(n, epsilon, mesh_order, layer_constant).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(problem: &str, scheme: &str, mesh_kind: &str, n: usize, epsilon: f64) -> Result<Solution, JsError> {
    solve_problem(problem, scheme, mesh_kind, n, epsilon).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(problem: &str, scheme: &str, epsilon: f64, k_min: u32, k_max: u32) -> Result<SweepColumn, JsError> {
    sweep_column(problem, scheme, epsilon, k_min, k_max).map_err(|e| JsError::new(&e))
}
