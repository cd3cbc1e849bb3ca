//! Numerical classification against the nearly-logarithmic conditions.
//!
//! The conditions are asymptotic, so every verdict here is relative to the
//! probe set in [`ProbeConfig`]. A quantity "tends to zero" when, over the
//! top `tail` probes, the least-squares slope of its magnitude against
//! `1/log x` is nonnegative (it is not growing with `x`) and its magnitude
//! at the last probe is below `eps_trend`.

use super::{growth_index, window_infimum, CandidateFunction};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeConfig {
    /// Probe points `x = 10^k`.
    pub decades: Vec<i32>,
    /// `(ε, m)` pairs probed for the windowed condition.
    pub pairs: Vec<(f64, f64)>,
    pub lambda: f64,
    pub grid: usize,
    pub eps_trend: f64,
    pub tail: usize,
    pub liminf_threshold: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        // Decades 1e2..1e12 cover the desk range; the sparse far tail is what
        // the trend criteria read, since log-type functions move slowly.
        let mut decades: Vec<i32> = (2..=12).collect();
        decades.extend([25, 50, 100, 200, 300]);
        Self {
            decades,
            pairs: vec![(0.1, 0.0), (0.1, 1.0), (0.1, 2.0)],
            lambda: 2.0,
            grid: 512,
            eps_trend: 0.05,
            tail: 3,
            liminf_threshold: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendStatus {
    ToZero,
    NotToZero,
    /// Small at the last probe but still growing.
    Unsettled,
    /// Undefined at some tail probe.
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendSample {
    pub log10_x: i32,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendFit {
    pub samples: Vec<TrendSample>,
    /// Slope of `|value|` against `1/log x` over the tail.
    pub slope: Option<f64>,
    pub final_value: Option<f64>,
    pub status: TrendStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C2Row {
    pub log10_x: i32,
    pub eps: f64,
    pub m: f64,
    pub lambda: f64,
    pub infimum: Option<f64>,
    pub meets: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailReason {
    NonPositive,
    C1Exponent,
    C1Liminf,
    /// `A(x)` does not tend to zero and the direct windowed probes fail.
    GrowthIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { reason: FailReason, detail: String },
    Inconclusive { detail: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn fail_reason(&self) -> Option<FailReason> {
        match self {
            Verdict::Fail { reason, .. } => Some(*reason),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearlyLogReport {
    pub function: String,
    pub probes: ProbeConfig,
    /// `log f(x) / log x` across the probes.
    pub c1_exponent_trend: TrendFit,
    /// Minimum of `f` over the tail probes.
    pub c1_liminf_estimate: f64,
    pub c2_direct_evidence: Vec<C2Row>,
    /// `(ε, m)` pairs whose window infima meet `1 − ε` on every tail probe.
    pub c2_pairs_met: Vec<(f64, f64)>,
    pub index_trend: TrendFit,
    pub verdict: Verdict,
    pub analytic_verdict: Option<bool>,
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn fit_trend(samples: Vec<TrendSample>, cfg: &ProbeConfig) -> TrendFit {
    let tail_start = samples.len().saturating_sub(cfg.tail.max(2));
    let tail = &samples[tail_start..];
    let values: Option<Vec<(f64, f64)>> = tail
        .iter()
        .map(|s| {
            s.value
                .filter(|v| v.is_finite())
                .map(|v| (1.0 / (s.log10_x as f64 * std::f64::consts::LN_10), v.abs()))
        })
        .collect();
    let Some(points) = values.filter(|p| p.len() >= 2) else {
        return TrendFit {
            samples,
            slope: None,
            final_value: None,
            status: TrendStatus::Undefined,
        };
    };
    let slope = least_squares_slope(&points);
    let final_value = points.last().map(|p| p.1).unwrap_or(f64::NAN);
    let scale = points.iter().map(|p| p.1).fold(1.0f64, f64::max);
    let growing = slope < -1e-9 * scale;
    let status = if final_value >= cfg.eps_trend {
        TrendStatus::NotToZero
    } else if growing {
        TrendStatus::Unsettled
    } else {
        TrendStatus::ToZero
    };
    TrendFit {
        samples,
        slope: Some(slope),
        final_value: Some(final_value),
        status,
    }
}

pub fn classify(f: &CandidateFunction, cfg: &ProbeConfig) -> NearlyLogReport {
    let xs: Vec<(i32, f64)> = cfg.decades.iter().map(|&k| (k, 10f64.powi(k))).collect();
    let tail_from = xs.len().saturating_sub(cfg.tail.max(1));

    let non_positive = xs
        .iter()
        .find(|&&(_, x)| !(f.eval(x) > 0.0 && f.eval(x).is_finite()));

    let c1 = fit_trend(
        xs.iter()
            .map(|&(k, x)| TrendSample {
                log10_x: k,
                value: Some(f.eval(x).ln() / x.ln()).filter(|v| v.is_finite()),
            })
            .collect(),
        cfg,
    );
    let liminf = xs[tail_from..]
        .iter()
        .map(|&(_, x)| f.eval(x))
        .fold(f64::INFINITY, f64::min);

    let mut rows = Vec::new();
    let mut pairs_met = Vec::new();
    for &(eps, m) in &cfg.pairs {
        let mut tail_ok = true;
        for (idx, &(k, x)) in xs.iter().enumerate() {
            let inf = window_infimum(f, x, m, cfg.lambda, cfg.grid).ok();
            let meets = inf.is_some_and(|v| v >= 1.0 - eps);
            if idx >= tail_from {
                tail_ok &= meets;
            }
            rows.push(C2Row {
                log10_x: k,
                eps,
                m,
                lambda: cfg.lambda,
                infimum: inf,
                meets,
            });
        }
        if tail_ok {
            pairs_met.push((eps, m));
        }
    }
    let all_pairs_met = !cfg.pairs.is_empty() && pairs_met.len() == cfg.pairs.len();

    let index = fit_trend(
        xs.iter()
            .map(|&(k, x)| TrendSample {
                log10_x: k,
                value: growth_index(f, x).ok(),
            })
            .collect(),
        cfg,
    );

    let verdict = if let Some(&(k, x)) = non_positive {
        Verdict::Fail {
            reason: FailReason::NonPositive,
            detail: format!("f(1e{k}) = {} is not a positive real", f.eval(x)),
        }
    } else {
        decide(&c1, liminf, &index, all_pairs_met, cfg)
    };

    NearlyLogReport {
        function: f.descriptor(),
        probes: cfg.clone(),
        c1_exponent_trend: c1,
        c1_liminf_estimate: liminf,
        c2_direct_evidence: rows,
        c2_pairs_met: pairs_met,
        index_trend: index,
        verdict,
        analytic_verdict: f.analytic_verdict(),
    }
}

fn decide(
    c1: &TrendFit,
    liminf: f64,
    index: &TrendFit,
    direct_c2: bool,
    cfg: &ProbeConfig,
) -> Verdict {
    let fmt = |v: Option<f64>| v.map_or("undefined".to_string(), |v| format!("{v:.6}"));
    match c1.status {
        TrendStatus::ToZero => {}
        TrendStatus::NotToZero => {
            return Verdict::Fail {
                reason: FailReason::C1Exponent,
                detail: format!(
                    "log f(x)/log x stays at {} (threshold {})",
                    fmt(c1.final_value),
                    cfg.eps_trend
                ),
            }
        }
        TrendStatus::Unsettled | TrendStatus::Undefined => {
            return Verdict::Inconclusive {
                detail: format!("exponent trend {:?} at {}", c1.status, fmt(c1.final_value)),
            }
        }
    }
    if !(liminf > cfg.liminf_threshold) {
        return Verdict::Fail {
            reason: FailReason::C1Liminf,
            detail: format!(
                "tail minimum of f is {liminf:.6}, not above {}",
                cfg.liminf_threshold
            ),
        };
    }
    if index.status == TrendStatus::ToZero || direct_c2 {
        return Verdict::Pass;
    }
    match index.status {
        TrendStatus::NotToZero => Verdict::Fail {
            reason: FailReason::GrowthIndex,
            detail: format!(
                "growth index A(x) stays at {} and direct window probes fall below 1 - eps",
                fmt(index.final_value)
            ),
        },
        _ => Verdict::Inconclusive {
            detail: format!(
                "growth index trend {:?} at {}; direct window probes not met",
                index.status,
                fmt(index.final_value)
            ),
        },
    }
}
