use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Mesh or problem parameters outside their admissible range.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Argument outside the domain of a function.
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite value at x = {x}{}", stage.map(|s| format!(" in stage {s}")).unwrap_or_default())]
    Evaluation { x: f64, stage: Option<usize> },

    #[error("problem `{problem}` has no {form}")]
    UnsupportedForm {
        problem: String,
        form: &'static str,
    },

    #[error("tableau `{0}` is implicit; explicit stepping is not possible")]
    ImplicitTableau(String),

    #[error("unknown {kind} `{name}`")]
    Lookup { kind: &'static str, name: String },

    #[error("singular gauss2 step at x = {x}, h = {h} (denominator {denominator:e})")]
    SingularStep { x: f64, h: f64, denominator: f64 },

    #[error("mesh spans [{mesh_lo}, {mesh_hi}] but the problem is posed on [{lo}, {hi}]")]
    DomainMismatch {
        mesh_lo: f64,
        mesh_hi: f64,
        lo: f64,
        hi: f64,
    },

    #[error("step {index} failed: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep cell (epsilon = {epsilon:e}, k = {k}) failed: {source}")]
    Cell {
        epsilon: f64,
        k: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
