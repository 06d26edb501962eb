//! Cultural transmission with reactance to a repressive policy.
//!
//! Parents pick leisure `t` and socialization effort `d` from
//! `K_g = {t + g d^β ≤ 1}` to maximize `t + P(d) V(g)`, with
//! `P(d) = d + (1 − d) q`. The value of transmitting the trait is flat
//! below the reactance threshold `ĝ` and grows like `(g/ĝ)^λ_r` above it.
//! The minority share follows `q̇ = q(1 − q)(d_m − d_M)`.

// negated comparisons double as NaN rejection
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

pub(crate) fn lit<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CultureParams<F> {
    pub beta: F,
    pub g_hat: F,
    pub v_hat: F,
    pub lambda_r: F,
    pub g: F,
    pub q0: F,
    pub dt: F,
    pub horizon: F,
}

impl<F: Scalar> CultureParams<F> {
    /// Parameters with the default integration step and horizon.
    pub fn new(beta: F, g_hat: F, v_hat: F, lambda_r: F, g: F, q0: F) -> Result<CultureParams<F>> {
        let params = CultureParams {
            beta,
            g_hat,
            v_hat,
            lambda_r,
            g,
            q0,
            dt: lit(0.01),
            horizon: lit(200.0),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_policy(&self, g: F) -> CultureParams<F> {
        CultureParams { g, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let one = F::one();
        let checks = [
            (self.beta > one, "beta must exceed 1"),
            (self.g_hat > one, "g_hat must exceed 1"),
            (self.v_hat > one, "v_hat must exceed 1"),
            (self.lambda_r > one, "lambda_r must exceed 1"),
            (self.g >= one, "g must be at least 1"),
            (self.q0 > F::zero() && self.q0 < one, "q0 must lie in (0, 1)"),
            (self.dt > F::zero(), "dt must be positive"),
            (self.horizon > F::zero(), "horizon must be positive"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(Error::InvalidParams(msg.to_string())),
            None => Ok(()),
        }
    }

    /// The effort formula only needs a convex cost and a positive value.
    fn validate_effort(&self) -> Result<()> {
        if !(self.beta > F::one()) {
            return Err(Error::InvalidParams("beta must exceed 1".into()));
        }
        if !(self.v_hat > F::zero()) {
            return Err(Error::InvalidParams("v_hat must be positive".into()));
        }
        if !(self.g_hat > F::zero() && self.lambda_r > F::zero()) {
            return Err(Error::InvalidParams("g_hat and lambda_r must be positive".into()));
        }
        Ok(())
    }

    /// Value of transmitting the trait under policy `g`.
    pub fn value(&self, g: F) -> F {
        if g <= self.g_hat {
            self.v_hat
        } else {
            self.v_hat * (g / self.g_hat).powf(self.lambda_r)
        }
    }

    /// Corner branch: all time spent on effort.
    pub fn corner(&self, g: F) -> F {
        (F::one() / g).powf(F::one() / self.beta)
    }

    /// Interior branch of the first-order condition.
    pub fn interior(&self, g: F, q: F) -> F {
        let base = (F::one() - q) / self.beta * self.value(g) / g;
        base.max(F::zero()).powf(F::one() / (self.beta - F::one()))
    }

    fn effort(&self, g: F, q: F) -> F {
        self.corner(g).min(self.interior(g, q))
    }

    /// Closed-form steady state for minority policy `g`.
    pub fn q_steady(&self, g: F) -> F {
        let r = self.value(g) / g;
        r / (self.value(F::one()) + r)
    }

    fn drift(&self, q: F) -> F {
        let qc = q.max(F::zero()).min(F::one());
        qc * (F::one() - qc) * (self.effort(self.g, qc) - self.effort(F::one(), F::one() - qc))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minority,
    Majority,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minority" => Ok(Side::Minority),
            "majority" => Ok(Side::Majority),
            other => Err(Error::InvalidParams(format!("unknown side `{other}`"))),
        }
    }
}

/// Optimal socialization effort. The majority faces `g = 1` and its own
/// share `1 − q`.
pub fn culture_effort<F: Scalar>(params: &CultureParams<F>, q: F, policy_g: F, side: Side) -> Result<F> {
    params.validate_effort()?;
    if !(q >= F::zero() && q <= F::one()) {
        return Err(Error::InvalidParams(format!("share q = {q} outside [0, 1]")));
    }
    if !(policy_g >= F::one()) {
        return Err(Error::InvalidParams(format!("policy g = {policy_g} below 1")));
    }
    Ok(match side {
        Side::Minority => params.effort(policy_g, q),
        Side::Majority => params.effort(F::one(), F::one() - q),
    })
}

pub const DEFAULT_GBAR_TOLERANCE: f64 = 1e-10;

/// Smallest `g > ĝ` where the interior branch reaches the corner branch.
pub fn culture_gbar<F: Scalar>(params: &CultureParams<F>, q: F) -> Result<F> {
    culture_gbar_with(params, q, lit(DEFAULT_GBAR_TOLERANCE))
}

pub fn culture_gbar_with<F: Scalar>(params: &CultureParams<F>, q: F, tol: F) -> Result<F> {
    params.validate_effort()?;
    if !(q >= F::zero() && q < F::one()) {
        return Err(Error::InvalidParams(format!("share q = {q} outside [0, 1)")));
    }
    let gap = |g: F| params.interior(g, q) - params.corner(g);
    let gh = params.g_hat;
    if !(gap(gh) < F::zero()) {
        return Err(Error::NotInteriorAtGhat(q.to_f64().unwrap_or(f64::NAN)));
    }
    // above ĝ the interior branch rises and the corner falls
    let (mut lo, mut hi) = (gh, gh * lit(2.0));
    while gap(hi) < F::zero() {
        lo = hi;
        hi = hi * lit(2.0);
        if !hi.is_finite() {
            return Err(Error::InvalidParams("no crossing above g_hat".into()));
        }
    }
    while hi - lo > tol * hi.max(F::one()) {
        let mid = (lo + hi) / lit(2.0);
        if gap(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CultureOutcome<F> {
    /// Efforts at the final share.
    pub d_star_minority: F,
    pub d_star_majority: F,
    /// `(τ, q)` samples, one per integration step.
    pub trajectory: Vec<[F; 2]>,
    pub q_steady: F,
    pub q_final: F,
    /// `|q̇|` at the final share.
    pub residual: F,
    pub converged: bool,
    /// `None` when effort is at the corner at `ĝ` for the initial share.
    pub g_bar: Option<F>,
}

fn rk4_step<F: Scalar>(params: &CultureParams<F>, q: F, h: F) -> F {
    let two = lit::<F>(2.0);
    let k1 = params.drift(q);
    let k2 = params.drift(q + h / two * k1);
    let k3 = params.drift(q + h / two * k2);
    let k4 = params.drift(q + h * k3);
    q + h / lit(6.0) * (k1 + two * k2 + two * k3 + k4)
}

/// Integrates the share dynamics with fixed-step RK4.
pub fn culture_dynamics<F: Scalar>(params: &CultureParams<F>) -> Result<CultureOutcome<F>> {
    params.validate()?;
    let steps = (params.horizon / params.dt)
        .ceil()
        .to_usize()
        .ok_or_else(|| Error::InvalidParams("too many integration steps".into()))?;
    let mut trajectory = Vec::with_capacity(steps + 1);
    let mut q = params.q0;
    trajectory.push([F::zero(), q]);
    for k in 1..=steps {
        q = rk4_step(params, q, params.dt);
        trajectory.push([F::from_usize(k).expect("step count") * params.dt, q]);
    }
    let q_steady = params.q_steady(params.g);
    let g_bar = match culture_gbar(params, params.q0) {
        Ok(g) => Some(g),
        Err(Error::NotInteriorAtGhat(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CultureOutcome {
        d_star_minority: params.effort(params.g, q),
        d_star_majority: params.effort(F::one(), F::one() - q),
        trajectory,
        q_steady,
        q_final: q,
        residual: params.drift(q).abs(),
        converged: (q - q_steady).abs() < lit(CONVERGENCE_TOLERANCE),
        g_bar,
    })
}

/// Steady states `(q*_L, q*_H)` of two minorities differing only in
/// their reactance rate.
pub fn culture_reactance_comparative<F: Scalar>(low: &CultureParams<F>, high: &CultureParams<F>) -> Result<(F, F)> {
    low.validate()?;
    high.validate()?;
    let same = CultureParams {
        lambda_r: high.lambda_r,
        ..*low
    } == *high;
    if !same || !(high.lambda_r > low.lambda_r) {
        return Err(Error::InvalidParams(
            "comparative needs identical parameters except a higher lambda_r".into(),
        ));
    }
    let (ql, qh) = (low.q_steady(low.g), high.q_steady(high.g));
    let ordered = if low.g > low.g_hat { qh > ql } else { qh == ql };
    if !ordered {
        return Err(Error::InternalInconsistency(format!(
            "steady states out of order: q*_L = {ql}, q*_H = {qh}"
        )));
    }
    Ok((ql, qh))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> CultureParams<f64> {
        CultureParams::new(2.0, 1.5, 1.2, 2.0, 2.0, 0.3).unwrap()
    }

    #[test]
    fn effort_examples() {
        let p = CultureParams {
            v_hat: 1.0,
            ..base()
        };
        assert_eq!(culture_effort(&p, 0.0, 1.0, Side::Minority).unwrap(), 0.5);
        assert_eq!(culture_effort(&base(), 1.0, 2.0, Side::Minority).unwrap(), 0.0);
        let maj = culture_effort(&base(), 0.3, 5.0, Side::Majority).unwrap();
        assert!((maj - 0.3 * 1.2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn effort_shape_in_policy() {
        let p = base();
        let q = 0.3;
        let gbar = culture_gbar(&p, q).unwrap();
        let d = |g: f64| culture_effort(&p, q, g, Side::Minority).unwrap();
        let grid = |a: f64, b: f64| (0..=50).map(move |i| a + (b - a) * i as f64 / 50.0);
        let falling: Vec<f64> = grid(1.0, p.g_hat).map(d).collect();
        assert!(falling.windows(2).all(|w| w[1] < w[0]));
        let rising: Vec<f64> = grid(p.g_hat + 1e-9, gbar).map(d).collect();
        assert!(rising.windows(2).all(|w| w[1] > w[0]));
        assert!((p.interior(gbar, q) - p.corner(gbar)).abs() < 1e-8);
        assert!(gbar > p.g_hat);
        // continuity at ḡ
        assert!((d(gbar - 1e-9) - d(gbar + 1e-9)).abs() < 1e-6);
    }

    #[test]
    fn gbar_needs_interior_at_threshold() {
        let p = CultureParams {
            v_hat: 5.0,
            beta: 1.5,
            ..base()
        };
        assert!(matches!(culture_gbar(&p, 0.1), Err(Error::NotInteriorAtGhat(_))));
    }

    #[test]
    fn steady_state_examples() {
        let p = base().with_policy(1.0);
        assert_eq!(p.q_steady(1.0), 0.5);
        let p = CultureParams::<f64>::new(2.0, 2.0, 2.0, 2.0, 8.0, 0.3).unwrap();
        assert!((p.q_steady(8.0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dynamics_converge() {
        for q0 in [0.05, 0.3, 0.7, 0.95] {
            let p = CultureParams { q0, ..base() };
            let out = culture_dynamics(&p).unwrap();
            assert!(out.converged, "q0 = {q0}: {} vs {}", out.q_final, out.q_steady);
            assert!(out.trajectory.iter().all(|s| (0.0..=1.0).contains(&s[1])));
            let qs: Vec<f64> = out.trajectory.iter().map(|s| s[1]).collect();
            let toward = if q0 < out.q_steady {
                qs.windows(2).all(|w| w[1] >= w[0])
            } else {
                qs.windows(2).all(|w| w[1] <= w[0])
            };
            assert!(toward);
        }
    }

    #[test]
    fn comparative() {
        let low = CultureParams { lambda_r: 1.5, g: 3.0, ..base() };
        let high = CultureParams { lambda_r: 2.5, ..low };
        let (ql, qh) = culture_reactance_comparative(&low, &high).unwrap();
        assert!(qh > ql && ql > 0.0 && qh < 1.0);
        let (ql, qh) = culture_reactance_comparative(&low.with_policy(1.2), &high.with_policy(1.2)).unwrap();
        assert_eq!(ql, qh);
        assert!(culture_reactance_comparative(&high, &low).is_err());
        assert!(culture_reactance_comparative(&low, &CultureParams { q0: 0.2, ..high }).is_err());
    }

    #[test]
    fn validation() {
        assert!(CultureParams::new(1.0, 1.5, 1.2, 2.0, 2.0, 0.3).is_err());
        assert!(CultureParams::new(2.0, 1.5, 1.2, 2.0, 0.5, 0.3).is_err());
        assert!(CultureParams::new(2.0, 1.5, 1.2, 2.0, 2.0, 1.0).is_err());
        let p = CultureParams { dt: 0.0, ..base() };
        assert!(culture_dynamics(&p).is_err());
    }
}
