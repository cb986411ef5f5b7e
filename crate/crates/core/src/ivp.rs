//! Initial-value problems `y' = f(x, y)`, `y(x0) = y0` on `[x0, a]`.
//!
//! The right-hand side is stored already divided by ε, so a stepper never
//! needs to know the perturbation parameter. ε is kept for mesh
//! construction and exact-solution evaluation.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type RhsFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// `f(x, y) = p(x) y + q(x)`.
#[derive(Clone)]
pub struct LinearForm {
    pub p: ScalarFn,
    pub q: ScalarFn,
}

#[derive(Clone)]
pub struct Problem {
    label: String,
    epsilon: f64,
    x0: f64,
    y0: f64,
    domain_end: f64,
    rhs: RhsFn,
    linear: Option<LinearForm>,
    exact: Option<ScalarFn>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("label", &self.label)
            .field("epsilon", &self.epsilon)
            .field("x0", &self.x0)
            .field("y0", &self.y0)
            .field("domain_end", &self.domain_end)
            .field("linear", &self.linear.is_some())
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl Problem {
    pub fn new(
        label: impl Into<String>,
        epsilon: f64,
        (x0, y0): (f64, f64),
        domain_end: f64,
        rhs: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Problem> {
        check_epsilon(epsilon)?;
        if !(x0.is_finite() && domain_end.is_finite() && domain_end > x0) {
            return Err(Error::Domain {
                what: "domain_end",
                value: domain_end,
                lo: x0,
                hi: f64::INFINITY,
            });
        }
        if !y0.is_finite() {
            return Err(Error::Parameter {
                name: "y0",
                value: y0,
                reason: "must be finite",
            });
        }
        Ok(Problem {
            label: label.into(),
            epsilon,
            x0,
            y0,
            domain_end,
            rhs: Arc::new(rhs),
            linear: None,
            exact: None,
        })
    }

    /// Linear problem `y' = p(x) y + q(x)`; the right-hand side is built
    /// from `p` and `q`.
    pub fn linear(
        label: impl Into<String>,
        epsilon: f64,
        start: (f64, f64),
        domain_end: f64,
        p: impl Fn(f64) -> f64 + Send + Sync + 'static,
        q: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Problem> {
        let p: ScalarFn = Arc::new(p);
        let q: ScalarFn = Arc::new(q);
        let (pp, qq) = (p.clone(), q.clone());
        let problem = Problem::new(label, epsilon, start, domain_end, move |x, y| {
            pp(x) * y + qq(x)
        })?;
        Ok(problem.with_linear_form(LinearForm { p, q }))
    }

    pub fn with_linear_form(mut self, form: LinearForm) -> Problem {
        self.linear = Some(form);
        self
    }

    pub fn with_exact(mut self, exact: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Problem {
        self.exact = Some(Arc::new(exact));
        self
    }

    pub fn builtin(name: BuiltinName, epsilon: f64) -> Result<Problem> {
        check_epsilon(epsilon)?;
        let problem = match name {
            // ε y' = −y, y(0) = 1
            BuiltinName::Decay => Problem::linear(
                name.as_str(),
                epsilon,
                (0.0, 1.0),
                1.0,
                move |_| -1.0 / epsilon,
                |_| 0.0,
            )?
            .with_exact(move |x| (-x / epsilon).exp()),
            // ε y' = −x y + ε + e^{−x/ε} + x (x − e^{−x/ε} + 1), y(0) = 0
            BuiltinName::Layer1 => {
                let q = move |x: f64| {
                    let e = (-x / epsilon).exp();
                    (epsilon + e + x * (x - e + 1.0)) / epsilon
                };
                let rhs = move |x: f64, y: f64| {
                    let e = (-x / epsilon).exp();
                    (-x * y + epsilon + e + x * (x - e + 1.0)) / epsilon
                };
                Problem::new(name.as_str(), epsilon, (0.0, 0.0), 1.0, rhs)?
                    .with_linear_form(LinearForm {
                        p: Arc::new(move |x| -x / epsilon),
                        q: Arc::new(q),
                    })
                    .with_exact(move |x| x - (-x / epsilon).exp() + 1.0)
            }
        };
        Ok(problem)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn is_linear(&self) -> bool {
        self.linear.is_some()
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `f(x, y)`; a non-finite result is an evaluation error.
    pub fn rhs(&self, x: f64, y: f64) -> Result<f64> {
        let v = (self.rhs)(x, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { x, stage: None })
        }
    }

    /// `(p(x), q(x))` of the linear form.
    pub fn linear_coeffs(&self, x: f64) -> Result<(f64, f64)> {
        let form = self.linear.as_ref().ok_or_else(|| Error::UnsupportedForm {
            problem: self.label.clone(),
            form: "linear form",
        })?;
        Ok(((form.p)(x), (form.q)(x)))
    }

    pub fn exact(&self, x: f64) -> Result<f64> {
        let exact = self.exact.as_ref().ok_or_else(|| Error::UnsupportedForm {
            problem: self.label.clone(),
            form: "exact solution",
        })?;
        Ok(exact(x))
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "epsilon",
            value: epsilon,
            reason: "must lie in (0, 1]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinName {
    /// `ε y' = −y`, `y(0) = 1`, exact `e^{−x/ε}`.
    Decay,
    /// Variable-coefficient layer problem with exact `x − e^{−x/ε} + 1`.
    Layer1,
}

impl BuiltinName {
    pub const ALL: [BuiltinName; 2] = [BuiltinName::Decay, BuiltinName::Layer1];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::Decay => "decay",
            BuiltinName::Layer1 => "layer1",
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::Lookup {
                kind: "problem",
                name: s.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn builtin_initial_values() {
        let decay = Problem::builtin(BuiltinName::Decay, 2f64.powi(-4)).unwrap();
        assert_eq!(decay.exact(0.0).unwrap(), 1.0);
        assert_eq!(decay.y0(), 1.0);
        for eps in [1.0, 0.25, 1e-3, 1e-9] {
            let layer = Problem::builtin(BuiltinName::Layer1, eps).unwrap();
            assert_eq!(layer.exact(0.0).unwrap(), 0.0);
            assert_eq!(layer.exact(layer.x0()).unwrap(), layer.y0());
        }
        let layer = Problem::builtin(BuiltinName::Layer1, 0.25).unwrap();
        assert_eq!(layer.rhs(0.0, 0.0).unwrap(), 5.0);
    }

    #[test]
    fn builtin_rejects_bad_epsilon() {
        for eps in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(Problem::builtin(BuiltinName::Decay, eps).is_err());
        }
    }

    #[test]
    fn rhs_examples() {
        let d1 = Problem::builtin(BuiltinName::Decay, 1.0).unwrap();
        assert_eq!(d1.rhs(0.3, 2.0).unwrap(), -2.0);
        let d = Problem::builtin(BuiltinName::Decay, 0.25).unwrap();
        assert_eq!(d.rhs(0.0, 1.0).unwrap(), -4.0);
        let l = Problem::builtin(BuiltinName::Layer1, 1.0).unwrap();
        assert_eq!(l.rhs(0.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn rhs_non_finite_is_error() {
        let p = Problem::new("blowup", 1.0, (0.0, 0.0), 1.0, |x, _| 1.0 / x).unwrap();
        assert!(matches!(p.rhs(0.0, 0.0), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn linear_coeff_examples() {
        let d = Problem::builtin(BuiltinName::Decay, 0.25).unwrap();
        assert_eq!(d.linear_coeffs(0.7).unwrap(), (-4.0, 0.0));
        let l = Problem::builtin(BuiltinName::Layer1, 1.0).unwrap();
        assert_eq!(l.linear_coeffs(0.0).unwrap(), (0.0, 2.0));
        let l = Problem::builtin(BuiltinName::Layer1, 1e-3).unwrap();
        assert_eq!(l.linear_coeffs(0.0).unwrap().0, 0.0);

        let general = Problem::new("g", 1.0, (0.0, 1.0), 1.0, |_, y| y * y).unwrap();
        assert!(matches!(
            general.linear_coeffs(0.0),
            Err(Error::UnsupportedForm { .. })
        ));
        assert!(matches!(general.exact(0.0), Err(Error::UnsupportedForm { .. })));
    }

    #[test]
    fn exact_examples() {
        let d = Problem::builtin(BuiltinName::Decay, 0.125).unwrap();
        assert_eq!(d.exact(0.0).unwrap(), 1.0);
        let d = Problem::builtin(BuiltinName::Decay, 0.5).unwrap();
        assert_relative_eq!(d.exact(0.5).unwrap(), 0.367_879_441_171_442_3, max_relative = 1e-15);
        let l = Problem::builtin(BuiltinName::Layer1, 1e-6).unwrap();
        assert_eq!(l.exact(1.0).unwrap(), 2.0);
    }

    #[test]
    fn builtin_name_parsing() {
        assert_eq!("decay".parse::<BuiltinName>().unwrap(), BuiltinName::Decay);
        assert_eq!("layer1".parse::<BuiltinName>().unwrap(), BuiltinName::Layer1);
        assert!(matches!(
            "layer2".parse::<BuiltinName>(),
            Err(Error::Lookup { .. })
        ));
    }

    // Central differences of the exact solution against the right-hand side.
    #[test]
    fn exact_solutions_satisfy_ode() {
        for name in BuiltinName::ALL {
            for eps in [1.0, 0.25, 2f64.powi(-6), 2f64.powi(-10)] {
                let p = Problem::builtin(name, eps).unwrap();
                let step = 1e-6 * eps.max(1e-3);
                for i in 0..100 {
                    let x = step + (1.0 - 2.0 * step) * i as f64 / 99.0;
                    let y = p.exact(x).unwrap();
                    let dy = (p.exact(x + step).unwrap() - p.exact(x - step).unwrap()) / (2.0 * step);
                    let residual = (dy - p.rhs(x, y).unwrap()).abs();
                    assert!(
                        residual <= 1e-6,
                        "{name} eps={eps} x={x}: residual {residual}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn linear_form_matches_rhs(
            x in 0.0f64..=1.0,
            y in -10.0f64..10.0,
            k in 0i32..20,
            which in 0usize..2,
        ) {
            let eps = 2f64.powi(-k);
            let p = Problem::builtin(BuiltinName::ALL[which], eps).unwrap();
            let f = p.rhs(x, y).unwrap();
            let (a, b) = p.linear_coeffs(x).unwrap();
            let g = a * y + b;
            prop_assert!((f - g).abs() <= 1e-12 * (1.0 + f.abs()), "{} vs {}", f, g);
        }
    }
}
