//! Per-vertex lower-bound coefficients for hereditary classes.
//!
//! Each formula `g(d)` is read as `α ≥ g(d)·n`. Vanishing `(1 − o(1))`
//! factors are replaced by 1 and such formulas are flagged asymptotic.

use crate::cleaning::crude_bound;
use crate::nearly_log::CandidateFunction;
use crate::registry::{no_arg, parse_f64_arg, Registry, RegistryError};
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("{formula}: d = {d} is outside the domain ({reason})")]
    Domain {
        formula: String,
        d: f64,
        reason: String,
    },
    #[error(transparent)]
    Spec(#[from] RegistryError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub formula: String,
    pub coefficient: f64,
    pub asymptotic: bool,
}

pub trait BoundFormula: Send + Sync {
    fn name(&self) -> String;

    fn asymptotic(&self) -> bool {
        true
    }

    /// Coefficient at average degree `d` for an `(r+1)`-uniform class.
    fn coefficient(&self, d: f64, r: usize) -> Result<f64, BoundError>;
}

pub fn bound_value(formula: &dyn BoundFormula, d: f64, r: usize) -> Result<BoundValue, BoundError> {
    Ok(BoundValue {
        formula: formula.name(),
        coefficient: formula.coefficient(d, r)?,
        asymptotic: formula.asymptotic(),
    })
}

fn domain(name: String, d: f64, reason: &str) -> BoundError {
    BoundError::Domain {
        formula: name,
        d,
        reason: reason.to_string(),
    }
}

fn need_log_positive(name: String, d: f64) -> Result<(), BoundError> {
    if d > 1.0 && d.is_finite() {
        Ok(())
    } else {
        Err(domain(name, d, "needs d > 1"))
    }
}

/// `log d / d` for `C_k`-free graphs.
pub struct Cycle;

impl BoundFormula for Cycle {
    fn name(&self) -> String {
        "cycle".into()
    }

    fn coefficient(&self, d: f64, _r: usize) -> Result<f64, BoundError> {
        need_log_positive(self.name(), d)?;
        Ok(d.ln() / d)
    }
}

/// `log d / (K d)` for graphs whose neighbourhoods have Hall ratio at most
/// `ρ`; `K = K(ρ) ≥ 1` is supplied by the caller, and behaves like `log ρ`
/// for large `ρ`.
pub struct Hall {
    pub k: f64,
}

impl BoundFormula for Hall {
    fn name(&self) -> String {
        format!("hall:{}", self.k)
    }

    fn coefficient(&self, d: f64, _r: usize) -> Result<f64, BoundError> {
        need_log_positive(self.name(), d)?;
        Ok(d.ln() / (self.k * d))
    }
}

/// `max{log d/((k−2) d log log d), (1/(5d))·sqrt(log d/log(k−1))}` for
/// `K_{k+1}`-free graphs.
pub struct Clique {
    pub k: usize,
}

impl BoundFormula for Clique {
    fn name(&self) -> String {
        format!("clique:{}", self.k)
    }

    fn coefficient(&self, d: f64, _r: usize) -> Result<f64, BoundError> {
        if !(d > std::f64::consts::E) || !d.is_finite() {
            return Err(domain(self.name(), d, "needs log log d > 0"));
        }
        let k = self.k as f64;
        let first = d.ln() / ((k - 2.0) * d * d.ln().ln());
        let second = (d.ln() / (k - 1.0).ln()).sqrt() / (5.0 * d);
        Ok(first.max(second))
    }
}

/// `log d / (8 d log(2q))` for locally `q`-colorable graphs.
pub struct LocallyColorable {
    pub q: usize,
}

impl BoundFormula for LocallyColorable {
    fn name(&self) -> String {
        format!("locally-colorable:{}", self.q)
    }

    fn coefficient(&self, d: f64, _r: usize) -> Result<f64, BoundError> {
        need_log_positive(self.name(), d)?;
        Ok(d.ln() / (8.0 * d * (2.0 * self.q as f64).ln()))
    }
}

/// `r^{(r−2)/r} / (r+1)^{(r+1)/r} · (log d / d)^{1/r}` for girth-4
/// `(r+1)`-uniform hypergraphs.
pub struct LocallySparse;

impl LocallySparse {
    pub fn leading_constant(r: usize) -> f64 {
        let rf = r as f64;
        rf.powf((rf - 2.0) / rf) / (rf + 1.0).powf((rf + 1.0) / rf)
    }
}

impl BoundFormula for LocallySparse {
    fn name(&self) -> String {
        "locally-sparse".into()
    }

    fn coefficient(&self, d: f64, r: usize) -> Result<f64, BoundError> {
        need_log_positive(self.name(), d)?;
        Ok(Self::leading_constant(r) * (d.ln() / d).powf(1.0 / r as f64))
    }
}

/// `r/(r+1)·min{1, d^{−1/r}}`, valid for every hypergraph.
pub struct Crude;

impl BoundFormula for Crude {
    fn name(&self) -> String {
        "crude".into()
    }

    fn asymptotic(&self) -> bool {
        false
    }

    fn coefficient(&self, d: f64, r: usize) -> Result<f64, BoundError> {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(domain(self.name(), d, "needs d ≥ 0"));
        }
        Ok(crude_bound(r, 1, d))
    }
}

/// `f(d)/d^{1/r}` for a growth function `f`.
pub struct Target {
    pub f: CandidateFunction,
}

impl BoundFormula for Target {
    fn name(&self) -> String {
        format!("target:{}", self.f.descriptor())
    }

    fn coefficient(&self, d: f64, r: usize) -> Result<f64, BoundError> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(domain(self.name(), d, "needs d > 0"));
        }
        Ok(self.f.eval(d) / d.powf(1.0 / r as f64))
    }
}

fn parse_count(a: Option<&str>, min: usize) -> Result<usize, String> {
    let v = parse_f64_arg(a)?;
    if v.fract() != 0.0 || v < min as f64 {
        return Err(format!("expected an integer ≥ {min}, got {v}"));
    }
    Ok(v as usize)
}

/// Formulas by name: `cycle`, `hall:<K>`, `clique:<k>`,
/// `locally-colorable:<q>`, `locally-sparse`, `crude`, `target:<fn>`.
pub fn bound_registry() -> &'static Registry<dyn BoundFormula> {
    static REGISTRY: OnceLock<Registry<dyn BoundFormula>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut reg: Registry<dyn BoundFormula> = Registry::new("bound formula");
        reg.register("cycle", |a| {
            no_arg(a)?;
            Ok(Box::new(Cycle))
        })
        .register("hall", |a| {
            let k = parse_f64_arg(a)?;
            if k < 1.0 {
                return Err(format!("K = {k} must be at least 1"));
            }
            Ok(Box::new(Hall { k }))
        })
        .register("clique", |a| {
            Ok(Box::new(Clique {
                k: parse_count(a, 3)?,
            }))
        })
        .register("locally-colorable", |a| {
            Ok(Box::new(LocallyColorable {
                q: parse_count(a, 1)?,
            }))
        })
        .register("locally-sparse", |a| {
            no_arg(a)?;
            Ok(Box::new(LocallySparse))
        })
        .register("crude", |a| {
            no_arg(a)?;
            Ok(Box::new(Crude))
        })
        .register("target", |a| {
            let spec = a.ok_or("missing `:<function>` argument")?;
            let f = CandidateFunction::parse(spec).map_err(|e| e.to_string())?;
            Ok(Box::new(Target { f }))
        });
        reg
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(spec: &str, d: f64, r: usize) -> f64 {
        bound_registry()
            .build(spec)
            .unwrap()
            .coefficient(d, r)
            .unwrap()
    }

    #[test]
    fn cycle_at_e4() {
        let d = 4f64.exp();
        assert!((eval("cycle", d, 1) - 4.0 / d).abs() < 1e-15);
        assert!((eval("cycle", d, 1) - 0.07326).abs() < 1e-5);
    }

    #[test]
    fn locally_sparse_constant() {
        assert!((LocallySparse::leading_constant(2) - 0.19245).abs() < 1e-5);
        assert!((LocallySparse::leading_constant(1) - 0.25).abs() < 1e-15);
        let d = 100.0;
        assert!(
            (eval("locally-sparse", d, 2) - 0.19245008972987526 * (d.ln() / d).sqrt()).abs()
                < 1e-12
        );
    }

    #[test]
    fn locally_colorable_q1() {
        let d = 50.0;
        assert!((eval("locally-colorable:1", d, 1) - d.ln() / (8.0 * d * 2f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn clique_takes_the_max() {
        let d: f64 = 1e6;
        let k: f64 = 3.0;
        let first = d.ln() / ((k - 2.0) * d * d.ln().ln());
        assert_eq!(
            eval("clique:3", d, 1),
            first.max((d.ln() / 2f64.ln()).sqrt() / (5.0 * d))
        );
        assert!(bound_registry()
            .build("clique:3")
            .unwrap()
            .coefficient(2.0, 1)
            .is_err());
    }

    #[test]
    fn crude_and_target() {
        assert!((eval("crude", 4.0, 1) - 0.125).abs() < 1e-15);
        assert!(!bound_registry().build("crude").unwrap().asymptotic());
        assert!((eval("target:log", 100.0, 1) - 100f64.ln() / 100.0).abs() < 1e-15);
        assert!((eval("hall:2", 100.0, 1) - 100f64.ln() / 200.0).abs() < 1e-15);
        assert!(bound_registry().build("hall:0.5").is_err());
        assert!(bound_registry()
            .build("cycle")
            .unwrap()
            .coefficient(0.5, 1)
            .is_err());
    }
}
