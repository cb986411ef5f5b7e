//! Butcher tableaux and order conditions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance for the weight-sum and row-sum invariants.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-15;

/// Tolerance used by [`verify_order_conditions`].
pub const ORDER_CONDITION_TOLERANCE: f64 = 1e-14;

/// `γ = √3/6` of the two-stage Gauss scheme.
pub const GAUSS2_GAMMA: f64 = 0.288_675_134_594_812_87;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeName {
    Heun,
    Rk2Ralston,
    Rk2Midpoint,
    Rk3A,
    Rk3Kutta,
    Gauss2,
}

impl SchemeName {
    pub const ALL: [SchemeName; 6] = [
        SchemeName::Heun,
        SchemeName::Rk2Ralston,
        SchemeName::Rk2Midpoint,
        SchemeName::Rk3A,
        SchemeName::Rk3Kutta,
        SchemeName::Gauss2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeName::Heun => "heun",
            SchemeName::Rk2Ralston => "rk2_ralston",
            SchemeName::Rk2Midpoint => "rk2_midpoint",
            SchemeName::Rk3A => "rk3_a",
            SchemeName::Rk3Kutta => "rk3_kutta",
            SchemeName::Gauss2 => "gauss2",
        }
    }

    /// Order the scheme's conditions are checked up to. For gauss2 this is
    /// the highest order [`verify_order_conditions`] supports, not a claim
    /// about its classical order.
    pub fn nominal_order(self) -> u32 {
        match self {
            SchemeName::Heun | SchemeName::Rk2Ralston | SchemeName::Rk2Midpoint => 2,
            SchemeName::Rk3A | SchemeName::Rk3Kutta | SchemeName::Gauss2 => 3,
        }
    }

    pub fn is_explicit(self) -> bool {
        self != SchemeName::Gauss2
    }

    pub fn tableau(self) -> ButcherTableau {
        ButcherTableau::named(self)
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Lookup {
                kind: "scheme",
                name: s.to_string(),
            })
    }
}

/// Coefficients `(A, b, c)` of an s-stage Runge–Kutta method.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    name: String,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
    explicit: bool,
    // Integer numerators over a shared denominator, when b is rational.
    scaled_b: Option<(Vec<f64>, f64)>,
}

impl ButcherTableau {
    /// Builds a tableau after checking shapes, `Σ b = 1` and `c_j = Σ_q a_jq`.
    pub fn new(
        name: impl Into<String>,
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        c: Vec<f64>,
    ) -> Result<ButcherTableau> {
        let t = ButcherTableau::unchecked(name, a, b, c);
        let s = t.b.len();
        if s == 0 || t.c.len() != s || t.a.len() != s || t.a.iter().any(|row| row.len() != s) {
            return Err(Error::Precondition(format!(
                "tableau `{}` must have an s x s matrix and length-s b, c",
                t.name
            )));
        }
        let weight_sum: f64 = t.b.iter().sum();
        if (weight_sum - 1.0).abs() > CONSISTENCY_TOLERANCE {
            return Err(Error::Precondition(format!(
                "tableau `{}` weights sum to {weight_sum}",
                t.name
            )));
        }
        if let Some(j) = t.row_sum_residuals().iter().position(|r| *r > CONSISTENCY_TOLERANCE) {
            return Err(Error::Precondition(format!(
                "tableau `{}` row {j} does not sum to c_{j}",
                t.name
            )));
        }
        Ok(t)
    }

    /// Builds a tableau without the consistency checks. Shapes must still
    /// agree; used to inspect deliberately inconsistent coefficients.
    pub fn unchecked(
        name: impl Into<String>,
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        c: Vec<f64>,
    ) -> ButcherTableau {
        let explicit = a
            .iter()
            .enumerate()
            .all(|(j, row)| row.iter().skip(j).all(|&v| v == 0.0));
        ButcherTableau {
            name: name.into(),
            a,
            b,
            c,
            explicit,
            scaled_b: None,
        }
    }

    /// Attaches an exact form `b_j = numerators[j] / denominator` of the
    /// weights. Explicit steps then accumulate `Σ n_j k_j` in whole numbers
    /// and scale by `h / d` once.
    pub fn with_common_denominator(mut self, numerators: Vec<f64>, denominator: f64) -> Result<ButcherTableau> {
        let whole = |v: f64| v.is_finite() && v.fract() == 0.0;
        if numerators.len() != self.b.len() || !numerators.iter().all(|&n| whole(n)) || !(whole(denominator) && denominator > 0.0) {
            return Err(Error::Precondition(format!(
                "tableau `{}` needs {} whole numerators over a positive whole denominator",
                self.name,
                self.b.len()
            )));
        }
        if let Some(j) = numerators
            .iter()
            .zip(&self.b)
            .position(|(n, b)| (n / denominator - b).abs() > CONSISTENCY_TOLERANCE)
        {
            return Err(Error::Precondition(format!(
                "tableau `{}` weight {j} is not {}/{denominator}",
                self.name, numerators[j]
            )));
        }
        self.scaled_b = Some((numerators, denominator));
        Ok(self)
    }

    pub fn named(name: SchemeName) -> ButcherTableau {
        let label = name.as_str();
        let t = match name {
            SchemeName::Heun => {
                ButcherTableau::unchecked(label, vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![0.5, 0.5], vec![0.0, 1.0])
            }
            SchemeName::Rk2Ralston => ButcherTableau::unchecked(
                label,
                vec![vec![0.0, 0.0], vec![2.0 / 3.0, 0.0]],
                vec![0.25, 0.75],
                vec![0.0, 2.0 / 3.0],
            ),
            SchemeName::Rk2Midpoint => ButcherTableau::unchecked(
                label,
                vec![vec![0.0, 0.0], vec![0.5, 0.0]],
                vec![0.0, 1.0],
                vec![0.0, 0.5],
            ),
            SchemeName::Rk3A => ButcherTableau::unchecked(
                label,
                vec![
                    vec![0.0, 0.0, 0.0],
                    vec![0.5, 0.0, 0.0],
                    vec![0.0, 0.75, 0.0],
                ],
                vec![2.0 / 9.0, 3.0 / 9.0, 4.0 / 9.0],
                vec![0.0, 0.5, 0.75],
            ),
            SchemeName::Rk3Kutta => ButcherTableau::unchecked(
                label,
                vec![
                    vec![0.0, 0.0, 0.0],
                    vec![0.5, 0.0, 0.0],
                    vec![-1.0, 2.0, 0.0],
                ],
                vec![1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0],
                vec![0.0, 0.5, 1.0],
            ),
            SchemeName::Gauss2 => {
                let g = GAUSS2_GAMMA;
                ButcherTableau::unchecked(
                    label,
                    vec![vec![0.25, 0.25 - g], vec![0.25 + g, 0.25]],
                    vec![0.5, 0.5],
                    vec![0.5 - g, 0.5 + g],
                )
            }
        };
        let scaled = match name {
            SchemeName::Heun => Some((vec![1.0, 1.0], 2.0)),
            SchemeName::Rk2Ralston => Some((vec![1.0, 3.0], 4.0)),
            SchemeName::Rk2Midpoint => Some((vec![0.0, 1.0], 1.0)),
            SchemeName::Rk3A => Some((vec![2.0, 3.0, 4.0], 9.0)),
            SchemeName::Rk3Kutta => Some((vec![1.0, 4.0, 1.0], 6.0)),
            SchemeName::Gauss2 => None,
        };
        let t = match scaled {
            Some((n, d)) => t.with_common_denominator(n, d).expect("built-in weights are rational"),
            None => t,
        };
        debug_assert_eq!(t.explicit, name.is_explicit());
        t
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// `a_{j,q}` with zero-based indices.
    pub fn a(&self, j: usize, q: usize) -> f64 {
        self.a[j][q]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn weights(&self) -> &[f64] {
        &self.b
    }

    /// Integer numerators and their denominator, if attached.
    pub fn common_denominator_weights(&self) -> Option<(&[f64], f64)> {
        self.scaled_b.as_ref().map(|(n, d)| (n.as_slice(), *d))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.c
    }

    pub fn is_explicit(&self) -> bool {
        self.explicit
    }

    /// `|c_j − Σ_q a_{j,q}|` per stage.
    pub fn row_sum_residuals(&self) -> Vec<f64> {
        self.a
            .iter()
            .zip(&self.c)
            .map(|(row, c)| (c - row.iter().sum::<f64>()).abs())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderCondition {
    /// Order this condition belongs to.
    pub order: u32,
    pub label: &'static str,
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport {
    pub tableau: String,
    pub target_order: u32,
    pub conditions: Vec<OrderCondition>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.conditions.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Evaluates the order conditions up to `target_order` (clamped to 1..=3).
///
/// - order 1: `Σ b_j = 1`
/// - order 2: `Σ b_j c_j = 1/2`
/// - order 3: `Σ b_j c_j² = 1/3`, `Σ_j b_j Σ_q a_jq c_q = 1/6`
pub fn verify_order_conditions(tableau: &ButcherTableau, target_order: u32) -> OrderReport {
    let b = &tableau.b;
    let c = &tableau.c;
    let a = &tableau.a;
    let target_order = target_order.clamp(1, 3);

    let mut sums: Vec<(u32, &'static str, f64, f64)> = Vec::new();
    sums.push((1, "sum b_j = 1", b.iter().sum(), 1.0));
    if target_order >= 2 {
        sums.push((2, "sum b_j c_j = 1/2", dot(b, c), 0.5));
    }
    if target_order >= 3 {
        let c2: Vec<f64> = c.iter().map(|v| v * v).collect();
        let ac: Vec<f64> = a.iter().map(|row| dot(row, c)).collect();
        sums.push((3, "sum b_j c_j^2 = 1/3", dot(b, &c2), 1.0 / 3.0));
        sums.push((3, "sum b_j a_jq c_q = 1/6", dot(b, &ac), 1.0 / 6.0));
    }

    let conditions = sums
        .into_iter()
        .map(|(order, label, value, target)| {
            let residual = (value - target).abs();
            OrderCondition {
                order,
                label,
                value,
                target,
                residual,
                passed: residual <= ORDER_CONDITION_TOLERANCE,
            }
        })
        .collect();
    OrderReport {
        tableau: tableau.name.clone(),
        target_order,
        conditions,
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}
