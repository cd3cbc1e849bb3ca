use super::expr::Expr;
use super::GrowthFunction;
use crate::registry::{no_arg, parse_f64_arg, require_arg, Registry};
use std::f64::consts::E;
use std::sync::OnceLock;

/// Registry of growth-function kinds, keyed by spec prefix.
pub fn function_registry() -> &'static Registry<dyn GrowthFunction> {
    static REGISTRY: OnceLock<Registry<dyn GrowthFunction>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut reg: Registry<dyn GrowthFunction> = Registry::new("function");
        reg.register("log", |a| {
            no_arg(a)?;
            Ok(Box::new(Log))
        })
        .register("logpow", |a| {
            Ok(Box::new(LogPower {
                beta: parse_f64_arg(a)?,
            }))
        })
        .register("logoverloglog", |a| {
            no_arg(a)?;
            Ok(Box::new(LogOverLogLog))
        })
        .register("loglog", |a| {
            no_arg(a)?;
            Ok(Box::new(LogLog))
        })
        .register("exploga", |a| {
            Ok(Box::new(ExpLogPower {
                alpha: parse_f64_arg(a)?,
            }))
        })
        .register("pow", |a| {
            Ok(Box::new(Power {
                gamma: parse_f64_arg(a)?,
            }))
        })
        .register("const", |a| {
            let c = parse_f64_arg(a)?;
            if c <= 0.0 {
                return Err(format!("constant must be positive, got {c}"));
            }
            Ok(Box::new(Constant { c }))
        })
        .register("expr", |a| {
            let text = require_arg(a)?;
            let expr = Expr::parse(text).map_err(|e| e.to_string())?;
            Ok(Box::new(Expression {
                source: text.to_string(),
                expr,
            }))
        });
        reg
    })
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

/// Below `floor` the function takes the value it has at `floor`.
fn clamp(x: f64, floor: f64) -> f64 {
    if x < floor {
        floor
    } else {
        x
    }
}

/// `log x`, held at 1 below `e`.
#[derive(Debug, Clone, Copy)]
pub struct Log;

impl GrowthFunction for Log {
    fn descriptor(&self) -> String {
        "log".into()
    }
    fn eval(&self, x: f64) -> f64 {
        clamp(x, E).ln()
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        Some(if x < E { 0.0 } else { 1.0 / x })
    }
    fn floor(&self) -> f64 {
        E
    }
    fn analytic_verdict(&self) -> Option<bool> {
        Some(true)
    }
}

/// `(log x)^β`, held at 1 below `e`.
#[derive(Debug, Clone, Copy)]
pub struct LogPower {
    pub beta: f64,
}

impl GrowthFunction for LogPower {
    fn descriptor(&self) -> String {
        format!("logpow:{}", fmt_num(self.beta))
    }
    fn eval(&self, x: f64) -> f64 {
        clamp(x, E).ln().powf(self.beta)
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        if x < E {
            return Some(0.0);
        }
        let l = x.ln();
        Some(self.beta * l.powf(self.beta - 1.0) / x)
    }
    fn floor(&self) -> f64 {
        E
    }
    fn analytic_verdict(&self) -> Option<bool> {
        Some(self.beta > 0.0)
    }
}

/// `log x / log log x`, held at its minimum `e` below `e^e`.
#[derive(Debug, Clone, Copy)]
pub struct LogOverLogLog;

impl GrowthFunction for LogOverLogLog {
    fn descriptor(&self) -> String {
        "logoverloglog".into()
    }
    fn eval(&self, x: f64) -> f64 {
        let l = clamp(x, self.floor()).ln();
        l / l.ln()
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        if x < self.floor() {
            return Some(0.0);
        }
        let ll = x.ln().ln();
        Some((1.0 / ll - 1.0 / (ll * ll)) / x)
    }
    fn floor(&self) -> f64 {
        E.powf(E)
    }
    fn analytic_verdict(&self) -> Option<bool> {
        Some(true)
    }
}

/// `log log x`, held at 1 below `e^e`.
#[derive(Debug, Clone, Copy)]
pub struct LogLog;

impl GrowthFunction for LogLog {
    fn descriptor(&self) -> String {
        "loglog".into()
    }
    fn eval(&self, x: f64) -> f64 {
        clamp(x, self.floor()).ln().ln()
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        if x < self.floor() {
            return Some(0.0);
        }
        Some(1.0 / (x * x.ln()))
    }
    fn floor(&self) -> f64 {
        E.powf(E)
    }
    fn analytic_verdict(&self) -> Option<bool> {
        Some(true)
    }
}

/// `exp((log x)^α)`, held at `e` below `e`.
#[derive(Debug, Clone, Copy)]
pub struct ExpLogPower {
    pub alpha: f64,
}

impl GrowthFunction for ExpLogPower {
    fn descriptor(&self) -> String {
        format!("exploga:{}", fmt_num(self.alpha))
    }
    fn eval(&self, x: f64) -> f64 {
        clamp(x, E).ln().powf(self.alpha).exp()
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        if x < E {
            return Some(0.0);
        }
        let l = x.ln();
        Some(self.eval(x) * self.alpha * l.powf(self.alpha - 1.0) / x)
    }
    fn floor(&self) -> f64 {
        E
    }
    fn analytic_verdict(&self) -> Option<bool> {
        // α = 0 is the constant e > 2.
        Some((0.0..0.5).contains(&self.alpha))
    }
}

/// `x^γ`, held at 1 below 1.
#[derive(Debug, Clone, Copy)]
pub struct Power {
    pub gamma: f64,
}

impl GrowthFunction for Power {
    fn descriptor(&self) -> String {
        format!("pow:{}", fmt_num(self.gamma))
    }
    fn eval(&self, x: f64) -> f64 {
        clamp(x, 1.0).powf(self.gamma)
    }
    fn analytic_derivative(&self, x: f64) -> Option<f64> {
        if x < 1.0 {
            return Some(0.0);
        }
        Some(self.gamma * x.powf(self.gamma - 1.0))
    }
    fn floor(&self) -> f64 {
        1.0
    }
    fn analytic_verdict(&self) -> Option<bool> {
        // γ > 0 breaks x^{o(1)}; γ ≤ 0 keeps f ≤ 1.
        Some(false)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Constant {
    pub c: f64,
}

impl GrowthFunction for Constant {
    fn descriptor(&self) -> String {
        format!("const:{}", fmt_num(self.c))
    }
    fn eval(&self, _x: f64) -> f64 {
        self.c
    }
    fn analytic_derivative(&self, _x: f64) -> Option<f64> {
        Some(0.0)
    }
    fn analytic_verdict(&self) -> Option<bool> {
        Some(self.c > 2.0)
    }
}

/// User expression in `x`; derivative by central differences.
#[derive(Debug, Clone)]
pub struct Expression {
    pub source: String,
    pub expr: Expr,
}

impl GrowthFunction for Expression {
    fn descriptor(&self) -> String {
        format!("expr:{}", self.source)
    }
    fn eval(&self, x: f64) -> f64 {
        self.expr.eval(x)
    }
}

#[cfg(test)]
mod tests {
    use crate::nearly_log::CandidateFunction;

    const SPECS: [&str; 9] = [
        "log",
        "logpow:2",
        "logoverloglog",
        "loglog",
        "exploga:0.3",
        "exploga:0.5",
        "pow:0.1",
        "const:1.5",
        "logpow:0.5",
    ];

    #[test]
    fn descriptors_round_trip() {
        for spec in SPECS {
            let f = CandidateFunction::parse(spec).unwrap();
            assert_eq!(f.descriptor(), spec);
            assert_eq!(
                CandidateFunction::parse(&f.descriptor())
                    .unwrap()
                    .descriptor(),
                spec
            );
        }
    }

    #[test]
    fn positive_and_continuous_at_floor() {
        for spec in SPECS {
            let f = CandidateFunction::parse(spec).unwrap();
            for x in [1e-3, 0.5, 1.0, 2.0, 10.0, 1e3] {
                assert!(f.eval(x) > 0.0, "{spec} at {x}");
            }
            let fl = f.floor();
            if fl > 0.0 {
                let below = f.eval(fl * (1.0 - 1e-12));
                let above = f.eval(fl * (1.0 + 1e-12));
                assert!((below - above).abs() < 1e-9, "{spec}: {below} vs {above}");
            }
        }
    }

    #[test]
    fn analytic_derivatives_match_central_differences() {
        for spec in SPECS {
            let f = CandidateFunction::parse(spec).unwrap();
            for k in 2..=12 {
                let x = 10f64.powi(k);
                let a = f.deriv(x);
                let c = f.central_difference(x);
                if a == 0.0 {
                    assert!(c.abs() < 1e-12, "{spec} at 1e{k}");
                } else {
                    let rel = ((a - c) / a).abs();
                    assert!(rel < 1e-6, "{spec} at 1e{k}: rel {rel}");
                }
            }
        }
    }

    #[test]
    fn unknown_and_malformed_specs() {
        assert!(CandidateFunction::parse("sin").is_err());
        assert!(CandidateFunction::parse("logpow").is_err());
        assert!(CandidateFunction::parse("log:2").is_err());
        assert!(CandidateFunction::parse("const:-1").is_err());
        assert!(CandidateFunction::parse("expr:log(").is_err());
    }

    #[test]
    fn expression_matches_catalog() {
        let e = CandidateFunction::parse("expr:log(x)^2").unwrap();
        let l = CandidateFunction::parse("logpow:2").unwrap();
        for x in [10.0, 1e4, 1e9] {
            assert!((e.eval(x) - l.eval(x)).abs() < 1e-12);
            assert!((e.deriv(x) - l.deriv(x)).abs() / l.deriv(x) < 1e-6);
        }
    }
}
