//! One-interval steps and whole-mesh integration.

use crate::error::{Error, Result};
use crate::ivp::Problem;
use crate::meshgen::Mesh;
use crate::tableaux::{ButcherTableau, SchemeName, GAUSS2_GAMMA};

/// Slack allowed when checking that a step stays inside the problem domain.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Threshold below which the gauss2 denominator is treated as singular.
pub const SINGULAR_DENOMINATOR: f64 = 1e-14;

/// Numerical solution at the nodes of a mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub mesh: Mesh,
    pub values: Vec<f64>,
    pub scheme: SchemeName,
    pub problem: String,
    pub epsilon: f64,
}

impl Trajectory {
    pub fn nodes(&self) -> &[f64] {
        self.mesh.nodes()
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

fn check_step_domain(problem: &Problem, x: f64, h: f64) -> Result<()> {
    let lo = problem.x0() - DOMAIN_SLACK;
    let hi = problem.domain_end() + DOMAIN_SLACK;
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::Parameter {
            name: "h",
            value: h,
            reason: "step width must be nonnegative and finite",
        });
    }
    if x < lo || x + h > hi {
        return Err(Error::Domain {
            what: "step end",
            value: x + h,
            lo: problem.x0(),
            hi: problem.domain_end(),
        });
    }
    Ok(())
}

/// One step of an explicit Runge–Kutta method:
/// `k_j = f(x + c_j h, y + h Σ_{q<j} a_jq k_q)`, `y + h Σ b_j k_j`.
pub fn explicit_rk_step(
    tableau: &ButcherTableau,
    problem: &Problem,
    x: f64,
    y: f64,
    h: f64,
) -> Result<f64> {
    let mut stages = Vec::with_capacity(tableau.stages());
    explicit_step_into(tableau, problem, x, y, h, &mut stages)
}

fn explicit_step_into(
    tableau: &ButcherTableau,
    problem: &Problem,
    x: f64,
    y: f64,
    h: f64,
    stages: &mut Vec<f64>,
) -> Result<f64> {
    if !tableau.is_explicit() {
        return Err(Error::ImplicitTableau(tableau.name().to_string()));
    }
    check_step_domain(problem, x, h)?;
    stages.clear();
    for j in 0..tableau.stages() {
        // Stage argument as written by hand: y + Σ (a_jq h) k_q over nonzero a_jq.
        let arg = (0..j)
            .filter(|&q| tableau.a(j, q) != 0.0)
            .fold(y, |acc, q| acc + tableau.a(j, q) * h * stages[q]);
        let xs = x + tableau.nodes()[j] * h;
        let k = problem
            .rhs(xs, arg)
            .map_err(|_| Error::Evaluation {
                x: xs,
                stage: Some(j + 1),
            })?;
        stages.push(k);
    }
    let next = match tableau.common_denominator_weights() {
        Some((numerators, denominator)) => {
            let sum: f64 = numerators.iter().zip(stages.iter()).map(|(n, k)| n * k).sum();
            y + h / denominator * sum
        }
        None => {
            let weighted: f64 = tableau.weights().iter().zip(stages.iter()).map(|(b, k)| b * k).sum();
            y + h * weighted
        }
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Evaluation { x: x + h, stage: None })
    }
}

/// Two-stage Gauss step for `y' = p(x) y + q(x)`, with the stage system
/// solved in closed form.
pub fn gauss2_linear_step(problem: &Problem, x: f64, y: f64, h: f64) -> Result<f64> {
    check_step_domain(problem, x, h)?;
    let g = GAUSS2_GAMMA;
    let (p1, q1) = problem.linear_coeffs(x + (0.5 - g) * h)?;
    let (p2, q2) = problem.linear_coeffs(x + (0.5 + g) * h)?;

    let denominator =
        (1.0 - 0.25 * p1 * h) * (1.0 - 0.25 * p2 * h) - p1 * p2 * (1.0 / 16.0 - g * g) * h * h;
    if !(denominator.abs() > SINGULAR_DENOMINATOR) {
        return Err(Error::SingularStep {
            x,
            h,
            denominator,
        });
    }
    let numerator = (p1 * y + q1) * (1.0 + p2 * g * h) + (p2 * y + q2) * (1.0 - p1 * g * h);
    let next = y + 0.5 * h * numerator / denominator;
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Evaluation { x: x + h, stage: None })
    }
}

/// Integrates `problem` across every interval of `mesh`, starting from `y0`.
pub fn integrate(scheme: SchemeName, problem: &Problem, mesh: &Mesh) -> Result<Trajectory> {
    if (mesh.start() - problem.x0()).abs() > DOMAIN_SLACK
        || (mesh.end() - problem.domain_end()).abs() > DOMAIN_SLACK
    {
        return Err(Error::DomainMismatch {
            mesh_lo: mesh.start(),
            mesh_hi: mesh.end(),
            lo: problem.x0(),
            hi: problem.domain_end(),
        });
    }
    if scheme == SchemeName::Gauss2 && !problem.is_linear() {
        return Err(Error::UnsupportedForm {
            problem: problem.label().to_string(),
            form: "linear form (required by gauss2)",
        });
    }

    let tableau = scheme.tableau();
    let mut stages = Vec::with_capacity(tableau.stages());
    let mut values = Vec::with_capacity(mesh.nodes().len());
    let mut y = problem.y0();
    values.push(y);
    for (index, (&x, &h)) in mesh.nodes().iter().zip(mesh.widths()).enumerate() {
        let step = if scheme == SchemeName::Gauss2 {
            gauss2_linear_step(problem, x, y, h)
        } else {
            explicit_step_into(&tableau, problem, x, y, h, &mut stages)
        };
        y = step.map_err(|e| Error::Step {
            index,
            source: Box::new(e),
        })?;
        values.push(y);
    }

    Ok(Trajectory {
        mesh: mesh.clone(),
        values,
        scheme,
        problem: problem.label().to_string(),
        epsilon: problem.epsilon(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivp::BuiltinName;
    use approx::assert_relative_eq;

    fn decay(eps: f64) -> Problem {
        Problem::builtin(BuiltinName::Decay, eps).unwrap()
    }

    fn gauss_factor(z: f64) -> f64 {
        (1.0 + z / 2.0 + z * z / 12.0) / (1.0 - z / 2.0 + z * z / 12.0)
    }

    #[test]
    fn heun_and_midpoint_single_step() {
        let p = decay(1.0);
        let heun = explicit_rk_step(&SchemeName::Heun.tableau(), &p, 0.0, 1.0, 0.1).unwrap();
        assert_relative_eq!(heun, 0.905, max_relative = 1e-15);
        let mid = explicit_rk_step(&SchemeName::Rk2Midpoint.tableau(), &p, 0.0, 1.0, 0.1).unwrap();
        assert_relative_eq!(mid, 0.905, max_relative = 1e-15);
    }

    #[test]
    fn rk3_single_step_is_cubic_taylor() {
        let p = decay(1.0);
        let y = explicit_rk_step(&SchemeName::Rk3A.tableau(), &p, 0.0, 1.0, 0.1).unwrap();
        assert_relative_eq!(y, 0.904_833_333_333_333_4, max_relative = 1e-15);
    }

    #[test]
    fn stationary_point_is_preserved() {
        let p = Problem::linear("stationary", 1.0, (0.0, 1.0), 1.0, |_| -1.0, |_| 1.0).unwrap();
        for name in SchemeName::ALL.into_iter().filter(|s| s.is_explicit()) {
            let y = explicit_rk_step(&name.tableau(), &p, 0.2, 1.0, 0.3).unwrap();
            assert_eq!(y, 1.0, "{name}");
        }
        assert_eq!(gauss2_linear_step(&p, 0.2, 1.0, 0.3).unwrap(), 1.0);
    }

    #[test]
    fn implicit_tableau_rejected_by_explicit_driver() {
        let err = explicit_rk_step(&SchemeName::Gauss2.tableau(), &decay(1.0), 0.0, 1.0, 0.1);
        assert!(matches!(err, Err(Error::ImplicitTableau(_))));
    }

    #[test]
    fn failing_stage_is_identified() {
        // f is finite at x = 0 but not at x = 0.5, which only stage 2 of the
        // midpoint rule visits.
        let p = Problem::new("pole", 1.0, (0.0, 1.0), 1.0, |x, _| 1.0 / (x - 0.5)).unwrap();
        let err = explicit_rk_step(&SchemeName::Rk2Midpoint.tableau(), &p, 0.0, 1.0, 1.0);
        assert_eq!(
            err,
            Err(Error::Evaluation {
                x: 0.5,
                stage: Some(2)
            })
        );
    }

    #[test]
    fn step_outside_domain_rejected() {
        let err = explicit_rk_step(&SchemeName::Heun.tableau(), &decay(1.0), 0.95, 1.0, 0.1);
        assert!(matches!(err, Err(Error::Domain { .. })));
    }

    #[test]
    fn gauss2_step_examples() {
        let y = gauss2_linear_step(&decay(1.0), 0.0, 1.0, 0.1).unwrap();
        assert_relative_eq!(y, 0.904_837_430_610_626_5, max_relative = 1e-15);
        assert_relative_eq!(y, gauss_factor(-0.1), max_relative = 1e-15);

        let quad = Problem::linear("quad", 1.0, (0.0, 2.0), 1.0, |_| 0.0, |_| 1.0).unwrap();
        assert_relative_eq!(gauss2_linear_step(&quad, 0.0, 2.0, 0.1).unwrap(), 2.1, max_relative = 1e-15);

        let layer = Problem::builtin(BuiltinName::Layer1, 0.01).unwrap();
        assert_eq!(gauss2_linear_step(&layer, 0.3, 1.7, 0.0).unwrap(), 1.7);
    }

    #[test]
    fn gauss2_requires_linear_form() {
        let p = Problem::new("nl", 1.0, (0.0, 1.0), 1.0, |_, y| -y * y).unwrap();
        assert!(matches!(
            gauss2_linear_step(&p, 0.0, 1.0, 0.1),
            Err(Error::UnsupportedForm { .. })
        ));
        let mesh = Mesh::uniform(4, 0.0, 1.0).unwrap();
        assert!(matches!(
            integrate(SchemeName::Gauss2, &p, &mesh),
            Err(Error::UnsupportedForm { .. })
        ));
    }

    #[test]
    fn gauss2_singular_denominator() {
        // D = 1 − (p1 + p2) h/4 + p1 p2 h²/12 vanishes for p1 = 0, p2 h = 4.
        let p = Problem::linear(
            "singular",
            1.0,
            (0.0, 1.0),
            1.0,
            |x| if x < 0.5 { 0.0 } else { 4.0 },
            |_| 0.0,
        )
        .unwrap();
        match gauss2_linear_step(&p, 0.0, 1.0, 1.0) {
            Err(Error::SingularStep { x, h, .. }) => assert_eq!((x, h), (0.0, 1.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gauss2_integrate_decay() {
        let mesh = Mesh::uniform(10, 0.0, 1.0).unwrap();
        let traj = integrate(SchemeName::Gauss2, &decay(1.0), &mesh).unwrap();
        let oracle = (0..10).fold(1.0, |y, _| y * gauss_factor(-0.1));
        assert_relative_eq!(traj.last(), oracle, max_relative = 1e-14);
        assert_relative_eq!(traj.last(), 0.367_879_492_296_226, max_relative = 1e-13);
    }

    #[test]
    fn integrate_preserves_stationary_solution() {
        let p = Problem::linear("stationary", 1.0, (0.0, 1.0), 1.0, |_| -1.0, |_| 1.0).unwrap();
        let mesh = Mesh::from_sigma(16, 0.5, 0.1).unwrap();
        let traj = integrate(SchemeName::Heun, &p, &mesh).unwrap();
        assert!(traj.values.iter().all(|&v| v == 1.0));
        assert_eq!(traj.values.len(), 17);
    }

    #[test]
    fn integrate_rejects_domain_mismatch() {
        let mesh = Mesh::uniform(4, 0.0, 2.0).unwrap();
        assert!(matches!(
            integrate(SchemeName::Heun, &decay(1.0), &mesh),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn integrate_attaches_step_index() {
        let p = Problem::new("pole", 1.0, (0.0, 1.0), 1.0, |x, _| 1.0 / (x - 0.5)).unwrap();
        let mesh = Mesh::uniform(4, 0.0, 1.0).unwrap();
        match integrate(SchemeName::Heun, &p, &mesh) {
            Err(Error::Step { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
