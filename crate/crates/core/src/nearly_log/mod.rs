//! Candidate growth functions `f` and their nearly-logarithmic classification.
//!
//! A function is nearly logarithmic when
//!
//! * (C1) `f(x) = x^{o(1)}` and `liminf f > 2`, and
//! * (C2) for every `ε > 0`, `m ≥ 0` there are `M`, `λ > 1` with
//!   `f(y)/f(x) ≥ 1 − ε` for all `y ∈ [x·f(x)^{-m}, λx]` once `x > M`.
//!
//! A sufficient test for C2 is that the growth index
//! `A(x) = x·f'(x)/f(x)·log f(x)` tends to zero (for eventually increasing
//! `f`). Both routes are evaluated numerically by [`classify`].

mod catalog;
mod classify;
mod expr;

pub use catalog::{
    function_registry, Constant, ExpLogPower, Expression, Log, LogLog, LogOverLogLog, LogPower,
    Power,
};
pub use classify::{
    classify, C2Row, FailReason, NearlyLogReport, ProbeConfig, TrendFit, TrendSample, TrendStatus,
    Verdict,
};
pub use expr::{Expr, ExprError};

use crate::registry::RegistryError;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Relative step of the central difference, `h = x · 1e-6`.
pub const CENTRAL_DIFFERENCE_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Spec(#[from] RegistryError),
}

/// One member of the family of candidate functions.
///
/// Catalog entries are held constant below [`GrowthFunction::floor`], which
/// keeps them positive on all of `(0, ∞)` without changing tail behaviour.
pub trait GrowthFunction: Send + Sync + fmt::Debug {
    /// Canonical spec string, parseable by [`CandidateFunction::parse`].
    fn descriptor(&self) -> String;

    fn eval(&self, x: f64) -> f64;

    fn analytic_derivative(&self, _x: f64) -> Option<f64> {
        None
    }

    /// Below this argument the function is constant.
    fn floor(&self) -> f64 {
        0.0
    }

    /// Known answer for catalog entries: `Some(true)` if nearly logarithmic.
    fn analytic_verdict(&self) -> Option<bool> {
        None
    }
}

#[derive(Clone)]
pub struct CandidateFunction(Arc<dyn GrowthFunction>);

impl fmt::Debug for CandidateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CandidateFunction({})", self.0.descriptor())
    }
}

impl CandidateFunction {
    pub fn new<F: GrowthFunction + 'static>(f: F) -> Self {
        Self(Arc::new(f))
    }

    /// `log`, `logpow:<β>`, `logoverloglog`, `loglog`, `exploga:<α>`,
    /// `pow:<γ>`, `const:<c>`, or `expr:<expression in x>`.
    pub fn parse(spec: &str) -> Result<Self, FunctionError> {
        Ok(Self(Arc::from(function_registry().build(spec)?)))
    }

    pub fn descriptor(&self) -> String {
        self.0.descriptor()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    pub fn floor(&self) -> f64 {
        self.0.floor()
    }

    pub fn analytic_verdict(&self) -> Option<bool> {
        self.0.analytic_verdict()
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.0.analytic_derivative(1.0).is_some()
    }

    /// Analytic derivative when available, central difference otherwise.
    pub fn deriv(&self, x: f64) -> f64 {
        self.0
            .analytic_derivative(x)
            .unwrap_or_else(|| self.central_difference(x))
    }

    pub fn central_difference(&self, x: f64) -> f64 {
        let h = x * CENTRAL_DIFFERENCE_STEP;
        (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
    }
}

/// `A(x) = x·f'(x)/f(x)·log f(x)`; requires `f(x) > 1`.
pub fn growth_index(f: &CandidateFunction, x: f64) -> Result<f64, FunctionError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(FunctionError::Domain(format!(
            "x = {x} is not a positive real"
        )));
    }
    let fx = f.eval(x);
    if !(fx > 1.0) {
        return Err(FunctionError::Domain(format!(
            "f({x}) = {fx} is not greater than 1"
        )));
    }
    Ok(x * f.deriv(x) / fx * fx.ln())
}

/// Minimum of `f(y)/f(x)` over a geometric grid of `grid` points spanning
/// `[x·f(x)^{-m}, λx]`, both endpoints included.
pub fn window_infimum(
    f: &CandidateFunction,
    x: f64,
    m: f64,
    lambda: f64,
    grid: usize,
) -> Result<f64, FunctionError> {
    if grid < 2 {
        return Err(FunctionError::Domain(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    if !(lambda > 1.0) {
        return Err(FunctionError::Domain(format!("λ = {lambda} must exceed 1")));
    }
    if !(m >= 0.0) {
        return Err(FunctionError::Domain(format!(
            "m = {m} must be nonnegative"
        )));
    }
    let fx = f.eval(x);
    if !(fx > 0.0) || !fx.is_finite() {
        return Err(FunctionError::Domain(format!(
            "f({x}) = {fx} is not positive"
        )));
    }
    let left = x * fx.powf(-m);
    let right = lambda * x;
    if !(left > 0.0) || !left.is_finite() || !right.is_finite() || left > right {
        return Err(FunctionError::Domain(format!(
            "window [{left}, {right}] is empty or degenerate"
        )));
    }
    let log_span = (right / left).ln();
    let last = grid - 1;
    let mut inf = f64::INFINITY;
    for k in 0..grid {
        let y = match k {
            0 => left,
            k if k == last => right,
            k => left * (log_span * k as f64 / last as f64).exp(),
        };
        inf = inf.min(f.eval(y) / fx);
    }
    Ok(inf)
}
