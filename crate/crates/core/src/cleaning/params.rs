use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("target slack eps0 = {0} must lie in (0, 1)")]
    InvalidSlack(f64),
    #[error("rank r must be at least 1")]
    InvalidRank,
    #[error("window factor lambda0 = {0} must exceed 1")]
    InvalidWindow(f64),
    #[error("eta = {eta} is inadmissible: need 0 < eta < {bound}")]
    InadmissibleEta { eta: f64, bound: f64 },
}

/// The cleaning schedule for a target slack `ε₀`.
///
/// `ε` is the largest value in `(0, 1/2)` with `(1−ε)²(1+ε)^{−1/r} ≥ 1−ε₀`,
/// `η` is strictly below `min{ε, λ₀−1, r/(r+1)}`, and
/// `c = (r+1)η/r`, `a = 2/c + 1`, `b = 4r + 2r/c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CleaningParameters {
    pub r: usize,
    pub eps0: f64,
    pub eps: f64,
    pub eta: f64,
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub lambda0: f64,
}

pub const DEFAULT_LAMBDA0: f64 = 2.0;

/// `(1−ε)²(1+ε)^{−1/r}`.
pub fn slack_factor(eps: f64, r: usize) -> f64 {
    (1.0 - eps).powi(2) * (1.0 + eps).powf(-1.0 / r as f64)
}

pub fn derive_parameters(
    eps0: f64,
    r: usize,
    eta_override: Option<f64>,
) -> Result<CleaningParameters, ParamsError> {
    derive_parameters_with_window(eps0, r, eta_override, DEFAULT_LAMBDA0)
}

pub fn derive_parameters_with_window(
    eps0: f64,
    r: usize,
    eta_override: Option<f64>,
    lambda0: f64,
) -> Result<CleaningParameters, ParamsError> {
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(ParamsError::InvalidSlack(eps0));
    }
    if r == 0 {
        return Err(ParamsError::InvalidRank);
    }
    if !(lambda0 > 1.0) || !lambda0.is_finite() {
        return Err(ParamsError::InvalidWindow(lambda0));
    }
    let eps = solve_eps(eps0, r);
    let bound = eta_bound(eps, lambda0, r);
    let eta = match eta_override {
        Some(eta) if eta > 0.0 && eta < bound => eta,
        Some(eta) => return Err(ParamsError::InadmissibleEta { eta, bound }),
        None => bound / 2.0,
    };
    let rf = r as f64;
    let c = (rf + 1.0) * eta / rf;
    Ok(CleaningParameters {
        r,
        eps0,
        eps,
        eta,
        c,
        a: 2.0 / c + 1.0,
        b: 4.0 * rf + 2.0 * rf / c,
        lambda0,
    })
}

/// `min{ε, λ₀−1, r/(r+1)}`.
pub fn eta_bound(eps: f64, lambda0: f64, r: usize) -> f64 {
    eps.min(lambda0 - 1.0).min(r as f64 / (r as f64 + 1.0))
}

/// Bisection on the decreasing map `ε ↦ (1−ε)²(1+ε)^{−1/r}`; the returned
/// value always satisfies the inequality.
fn solve_eps(eps0: f64, r: usize) -> f64 {
    let target = 1.0 - eps0;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slack_factor(mid, r) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

impl CleaningParameters {
    pub fn eta_bound(&self) -> f64 {
        eta_bound(self.eps, self.lambda0, self.r)
    }

    pub fn satisfies_slack(&self) -> bool {
        slack_factor(self.eps, self.r) >= 1.0 - self.eps0
    }

    /// Residuals of `ac − c = 2` and `b/r − a = 3`, relative to the largest
    /// term on the left.
    pub fn identity_residuals(&self) -> (f64, f64) {
        let ac = self.a * self.c;
        let first = (ac - self.c - 2.0).abs() / ac.max(2.0);
        let br = self.b / self.r as f64;
        let second = (br - self.a - 3.0).abs() / br.max(3.0);
        (first, second)
    }
}
