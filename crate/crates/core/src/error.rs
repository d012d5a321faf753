use alloc::boxed::Box;

use crate::C64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidSpec(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("evaluation at a pole: |D| = {magnitude:e} at k = {k}")]
    PoleHit { k: C64, magnitude: f64 },

    #[error("transfer matrix needs a nonzero exterior momentum")]
    ZeroMomentum,

    #[error("Newton iteration did not converge from seed {seed} after {iterations} iterations")]
    NoConvergence { seed: C64, iterations: usize },

    #[error("Newton iteration from {seed} converged to {found}, outside the trust radius")]
    ConvergedElsewhere { seed: C64, found: C64 },

    #[error("contour passes too close to a zero near {near}")]
    EdgeTooClose { near: C64 },

    #[error("continuation stalled near the double zero at alpha = {alpha}, k = {k}")]
    StallAtDoubleZero { alpha: f64, k: C64 },

    #[error("continuation stalled at alpha = {alpha}, k = {k}")]
    Stall { alpha: f64, k: C64 },

    #[error("trajectory seed {k} is not a refined pole (residual {residual:e})")]
    SeedNotOnPole { k: C64, residual: f64 },

    #[error("local quadratic model is degenerate at the double zero")]
    ModelInvalid,

    #[error("no root in bracket: {0}")]
    NoRootInBracket(&'static str),

    #[error("tracing the pole seeded at {seed} failed: {source}")]
    TraceFailure {
        seed: C64,
        #[source]
        source: Box<Error>,
    },
}
