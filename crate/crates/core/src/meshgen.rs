//! Uniform and Shishkin meshes.
//!
//! A Shishkin mesh is the image of the uniform grid `ξ_i = i/N` under the
//! piecewise-linear generating function
//!
//! ```text
//! φ(ξ) = (σ/α) ξ                        0 ≤ ξ ≤ α
//! φ(ξ) = σ + (1 − σ)(ξ − α)/(1 − α)     α < ξ ≤ 1
//! ```
//!
//! with transition point `σ = min(1/2, (n/b) ε ln N)`. The first `αN`
//! intervals resolve the initial layer, the remaining ones cover `[σ, 1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Cap on the transition point.
pub const SIGMA_CAP: f64 = 0.5;

/// Domain every Shishkin mesh is built on.
pub const CANONICAL_DOMAIN: (f64, f64) = (0.0, 1.0);

/// Absolute tolerance used by [`validate_mesh`] when comparing stored widths
/// and sums against node differences.
pub const WIDTH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshKind {
    Uniform,
    Shishkin,
}

impl MeshKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeshKind::Uniform => "uniform",
            MeshKind::Shishkin => "shishkin",
        }
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeshKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MeshKind::Uniform),
            "shishkin" => Ok(MeshKind::Shishkin),
            other => Err(Error::Lookup {
                kind: "mesh kind",
                name: other.to_string(),
            }),
        }
    }
}

/// The ε-independent part of a Shishkin mesh description: `n`, `b`, `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSettings {
    pub method_order: u32,
    pub layer_constant: f64,
    pub split: f64,
}

impl Default for MeshSettings {
    fn default() -> Self {
        MeshSettings {
            method_order: 2,
            layer_constant: 1.0,
            split: 0.5,
        }
    }
}

/// Inputs of a Shishkin mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShishkinParams {
    pub n_intervals: usize,
    pub epsilon: f64,
    /// `n` in the transition point formula.
    pub method_order: u32,
    /// `b` in the transition point formula.
    pub layer_constant: f64,
    /// `α`, the fraction of intervals placed inside the layer.
    pub split: f64,
}

impl ShishkinParams {
    /// Parameters with the default settings `n = 2`, `b = 1`, `α = 1/2`.
    pub fn new(n_intervals: usize, epsilon: f64) -> Self {
        Self::with_settings(n_intervals, epsilon, MeshSettings::default())
    }

    pub fn with_settings(n_intervals: usize, epsilon: f64, settings: MeshSettings) -> Self {
        ShishkinParams {
            n_intervals,
            epsilon,
            method_order: settings.method_order,
            layer_constant: settings.layer_constant,
            split: settings.split,
        }
    }

    pub fn settings(&self) -> MeshSettings {
        MeshSettings {
            method_order: self.method_order,
            layer_constant: self.layer_constant,
            split: self.split,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_intervals;
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Parameter {
                name: "n_intervals",
                value: n as f64,
                reason: "must be even and at least 4",
            });
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Parameter {
                name: "epsilon",
                value: self.epsilon,
                reason: "must lie in (0, 1]",
            });
        }
        if self.method_order < 1 {
            return Err(Error::Parameter {
                name: "method_order",
                value: self.method_order as f64,
                reason: "must be at least 1",
            });
        }
        if !(self.layer_constant > 0.0 && self.layer_constant.is_finite()) {
            return Err(Error::Parameter {
                name: "layer_constant",
                value: self.layer_constant,
                reason: "must be positive",
            });
        }
        split_intervals(n, self.split)?;
        Ok(())
    }
}

/// Number of layer intervals `αN`; fails unless `0 < α < 1` and `αN` is an
/// integer strictly between 0 and N.
fn split_intervals(n_intervals: usize, split: f64) -> Result<usize> {
    if !(split > 0.0 && split < 1.0) {
        return Err(Error::Parameter {
            name: "split",
            value: split,
            reason: "must lie in (0, 1)",
        });
    }
    let scaled = split * n_intervals as f64;
    let m = scaled.round();
    if (scaled - m).abs() > 1e-9 * scaled.max(1.0) || m < 1.0 || m >= n_intervals as f64 {
        return Err(Error::Parameter {
            name: "split",
            value: split,
            reason: "split * n_intervals must be an integer in [1, N)",
        });
    }
    Ok(m as usize)
}

/// `σ = min(1/2, (n/b) ε ln N)`.
pub fn transition_point(params: &ShishkinParams) -> Result<f64> {
    params.validate()?;
    let n = params.n_intervals as f64;
    let raw = (params.method_order as f64 / params.layer_constant) * params.epsilon * n.ln();
    Ok(raw.min(SIGMA_CAP))
}

/// Evaluates the Shishkin generating function at `ξ`.
pub fn generating_function(sigma: f64, split: f64, xi: f64) -> Result<f64> {
    check_sigma(sigma)?;
    if !(split > 0.0 && split < 1.0) {
        return Err(Error::Parameter {
            name: "split",
            value: split,
            reason: "must lie in (0, 1)",
        });
    }
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::Domain {
            what: "xi",
            value: xi,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(phi(sigma, split, xi))
}

// Both branches return exactly σ at ξ = α, and the outer branch returns
// exactly 1 at ξ = 1.
fn phi(sigma: f64, split: f64, xi: f64) -> f64 {
    if xi <= split {
        (sigma / split) * xi
    } else {
        sigma + (1.0 - sigma) * ((xi - split) / (1.0 - split))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma <= SIGMA_CAP) {
        return Err(Error::Parameter {
            name: "sigma",
            value: sigma,
            reason: "must lie in (0, 1/2]",
        });
    }
    Ok(())
}

/// An ordered set of nodes with the interval widths between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
    widths: Vec<f64>,
    kind: MeshKind,
    sigma: Option<f64>,
}

impl Mesh {
    /// Shishkin mesh on `[0, 1]`.
    pub fn shishkin(params: &ShishkinParams) -> Result<Mesh> {
        let sigma = transition_point(params)?;
        Mesh::from_sigma(params.n_intervals, params.split, sigma)
    }

    /// Shishkin geometry for a given transition point, bypassing the σ formula.
    pub fn from_sigma(n_intervals: usize, split: f64, sigma: f64) -> Result<Mesh> {
        check_sigma(sigma)?;
        let fine = split_intervals(n_intervals, split)?;
        let n = n_intervals as f64;
        let nodes: Vec<f64> = (0..=n_intervals)
            .map(|i| phi(sigma, split, i as f64 / n))
            .collect();
        // Each piece is uniform, so its width is known in closed form.
        let fine_width = (sigma / split) / n;
        let coarse_width = ((1.0 - sigma) / (1.0 - split)) / n;
        let widths = (0..n_intervals)
            .map(|i| if i < fine { fine_width } else { coarse_width })
            .collect();
        Ok(Mesh {
            nodes,
            widths,
            kind: MeshKind::Shishkin,
            sigma: Some(sigma),
        })
    }

    /// Equidistant mesh with `n_intervals` intervals on `[lo, hi]`.
    pub fn uniform(n_intervals: usize, lo: f64, hi: f64) -> Result<Mesh> {
        if n_intervals < 1 {
            return Err(Error::Parameter {
                name: "n_intervals",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain {
                what: "interval",
                value: hi,
                lo,
                hi: f64::INFINITY,
            });
        }
        let n = n_intervals as f64;
        let span = hi - lo;
        let mut nodes: Vec<f64> = (0..=n_intervals)
            .map(|i| lo + span * (i as f64 / n))
            .collect();
        nodes[n_intervals] = hi;
        let h = span / n;
        Ok(Mesh {
            nodes,
            widths: vec![h; n_intervals],
            kind: MeshKind::Uniform,
            sigma: None,
        })
    }

    /// Mesh from raw nodes; widths are node differences. No validation is
    /// performed, see [`validate_mesh`].
    pub fn from_nodes(nodes: Vec<f64>, kind: MeshKind) -> Mesh {
        let widths = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        Mesh {
            nodes,
            widths,
            kind,
            sigma: None,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn kind(&self) -> MeshKind {
        self.kind
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    pub fn n_intervals(&self) -> usize {
        self.widths.len()
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Violations against the canonical domain `[0, 1]`.
    pub fn validate(&self) -> Vec<MeshViolation> {
        validate_mesh(self, CANONICAL_DOMAIN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeshViolation {
    TooFewNodes(usize),
    NonFinite { index: usize },
    NotIncreasing { index: usize },
    LeftEndpoint { expected: f64, found: f64 },
    RightEndpoint { expected: f64, found: f64 },
    WidthCount { nodes: usize, widths: usize },
    NonPositiveWidth { index: usize, width: f64 },
    WidthMismatch { index: usize, width: f64, difference: f64 },
    WidthSum { sum: f64, span: f64 },
}

impl fmt::Display for MeshViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshViolation::TooFewNodes(n) => write!(f, "mesh has {n} nodes, need at least 2"),
            MeshViolation::NonFinite { index } => write!(f, "node {index} is not finite"),
            MeshViolation::NotIncreasing { index } => {
                write!(f, "node {index} does not exceed node {}", index - 1)
            }
            MeshViolation::LeftEndpoint { expected, found } => {
                write!(f, "first node is {found}, expected {expected}")
            }
            MeshViolation::RightEndpoint { expected, found } => {
                write!(f, "last node is {found}, expected {expected}")
            }
            MeshViolation::WidthCount { nodes, widths } => {
                write!(f, "{widths} widths for {nodes} nodes")
            }
            MeshViolation::NonPositiveWidth { index, width } => {
                write!(f, "width {index} is {width}")
            }
            MeshViolation::WidthMismatch {
                index,
                width,
                difference,
            } => write!(
                f,
                "width {index} is {width} but the node difference is {difference}"
            ),
            MeshViolation::WidthSum { sum, span } => {
                write!(f, "widths sum to {sum}, mesh spans {span}")
            }
        }
    }
}

/// Checks the structural mesh invariants against the expected domain.
/// An empty report means the mesh is valid.
pub fn validate_mesh(mesh: &Mesh, domain: (f64, f64)) -> Vec<MeshViolation> {
    let mut report = Vec::new();
    let nodes = &mesh.nodes;
    if nodes.len() < 2 {
        report.push(MeshViolation::TooFewNodes(nodes.len()));
        return report;
    }
    for (index, x) in nodes.iter().enumerate() {
        if !x.is_finite() {
            report.push(MeshViolation::NonFinite { index });
        }
    }
    for index in 1..nodes.len() {
        if !(nodes[index] > nodes[index - 1]) {
            report.push(MeshViolation::NotIncreasing { index });
        }
    }
    if nodes[0] != domain.0 {
        report.push(MeshViolation::LeftEndpoint {
            expected: domain.0,
            found: nodes[0],
        });
    }
    let last = nodes[nodes.len() - 1];
    if last != domain.1 {
        report.push(MeshViolation::RightEndpoint {
            expected: domain.1,
            found: last,
        });
    }
    if mesh.widths.len() + 1 != nodes.len() {
        report.push(MeshViolation::WidthCount {
            nodes: nodes.len(),
            widths: mesh.widths.len(),
        });
        return report;
    }
    for (index, (&width, pair)) in mesh.widths.iter().zip(nodes.windows(2)).enumerate() {
        if !(width > 0.0) {
            report.push(MeshViolation::NonPositiveWidth { index, width });
        }
        let difference = pair[1] - pair[0];
        if (difference - width).abs() > WIDTH_TOLERANCE {
            report.push(MeshViolation::WidthMismatch {
                index,
                width,
                difference,
            });
        }
    }
    let sum = compensated_sum(&mesh.widths);
    let span = last - nodes[0];
    if (sum - span).abs() > WIDTH_TOLERANCE {
        report.push(MeshViolation::WidthSum { sum, span });
    }
    report
}

// Neumaier summation; a plain sum over 2^17 widths drifts past the tolerance.
fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + carry
}
