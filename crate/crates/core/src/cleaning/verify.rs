//! Checks of the potential along a cleaning transcript.
//!
//! Each step must satisfy `Q_{i+1} ≥ (1 + c/N_i)·Q_i`, and the run as a whole
//! `Q_T ≥ ((n+1)/(N_T+1))^c · n/d^{1/r} ≥ n/d^{1/r}`. `+∞` satisfies every
//! lower bound. Root comparisons use a relative tolerance; the last
//! inequality is decided exactly as `N_T^r · d ≥ n^r · D_T`.

use super::engine::{potential, CleaningTranscript};
use crate::numeric::{ratio_to_f64, Rational};
use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;
use thiserror::Error;

pub const ROOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("verification failed at {}: {message}", step.map_or("the final stage".to_string(), |s| format!("step {s}")))]
pub struct VerificationFailure {
    pub step: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialGainReport {
    pub steps_checked: usize,
    /// Minimum over steps of `Q_{i+1} / ((1 + c/N_i) Q_i)`; `+∞` if every
    /// post-step potential is infinite or there are no steps.
    #[serde(serialize_with = "crate::numeric::serialize_extended")]
    pub min_step_margin: f64,
    /// `((n+1)/(N_T+1))^c`.
    pub amplification: f64,
    /// `Q_T / (n/d^{1/r})`.
    #[serde(serialize_with = "crate::numeric::serialize_extended")]
    pub achieved_gain: f64,
}

fn fail(step: Option<usize>, message: String) -> VerificationFailure {
    VerificationFailure { step, message }
}

/// Whether `lhs ≥ rhs` up to the root tolerance, with `+∞` handled.
pub fn at_least(lhs: f64, rhs: f64) -> bool {
    lhs == f64::INFINITY || lhs >= rhs * (1.0 - ROOT_TOLERANCE)
}

pub fn verify_potential_gain(
    t: &CleaningTranscript,
) -> Result<PotentialGainReport, VerificationFailure> {
    let r = t.r;
    let c = t.params.c;
    let growth = 1.0 + t.params.eta;
    if t.steps.len() != t.t {
        return Err(fail(
            None,
            format!("T = {} but {} steps recorded", t.t, t.steps.len()),
        ));
    }

    let mut min_margin = f64::INFINITY;
    for (i, step) in t.steps.iter().enumerate() {
        let cur = &step.state;
        let next = t.state(i + 1);
        if step.i != i || cur.n != t.n - i || next.n + 1 != cur.n {
            return Err(fail(
                Some(i),
                "vertex counts do not decrease one per step".into(),
            ));
        }
        if !(step.degree as f64 > growth * ratio_to_f64(&cur.d)) {
            return Err(fail(
                Some(i),
                format!("deleted degree {} does not exceed (1+eta)·D_i", step.degree),
            ));
        }
        if !(cur.n as f64 > (r as f64 + 1.0) * growth) {
            return Err(fail(Some(i), format!("N_i = {} ≤ (r+1)(1+eta)", cur.n)));
        }
        let q_cur = potential(cur.n, &cur.d, r);
        let q_next = potential(next.n, &next.d, r);
        let required = (1.0 + c / cur.n as f64) * q_cur;
        if !at_least(q_next, required) {
            return Err(fail(
                Some(i),
                format!("Q_(i+1) = {q_next} below (1 + c/N_i)·Q_i = {required}"),
            ));
        }
        if q_next.is_finite() {
            min_margin = min_margin.min(q_next / required);
        }
    }

    let n = t.n;
    let final_state = t.state(t.t);
    let n_t = final_state.n;
    let amplification = ((n as f64 + 1.0) / (n_t as f64 + 1.0)).powf(c);
    let base = potential(n, &t.d, r);
    let q_t = potential(n_t, &final_state.d, r);
    if !at_least(q_t, amplification * base) {
        return Err(fail(
            None,
            format!("Q_T = {q_t} below amplified bound {}", amplification * base),
        ));
    }
    if !potential_dominates(n_t, &final_state.d, n, &t.d, r) {
        return Err(fail(None, format!("Q_T = {q_t} below n/d^(1/r) = {base}")));
    }
    Ok(PotentialGainReport {
        steps_checked: t.steps.len(),
        min_step_margin: min_margin,
        amplification,
        achieved_gain: if base.is_infinite() { 1.0 } else { q_t / base },
    })
}

/// Exact test of `N/D^{1/r} ≥ n/d^{1/r}`, i.e. `N^r·d ≥ n^r·D`.
pub fn potential_dominates(
    big_n: usize,
    big_d: &Rational,
    n: usize,
    d: &Rational,
    r: usize,
) -> bool {
    if *big_d.numer() == 0 {
        return true;
    }
    if *d.numer() == 0 {
        return false;
    }
    let lhs =
        BigInt::from(big_n).pow(r as u32) * BigInt::from(*d.numer()) * BigInt::from(*big_d.denom());
    let rhs =
        BigInt::from(n).pow(r as u32) * BigInt::from(*big_d.numer()) * BigInt::from(*d.denom());
    lhs >= rhs
}
