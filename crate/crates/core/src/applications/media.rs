//! News-source choice with reactance.
//!
//! A decision maker with prior `p` on state `R` picks one of four sources
//! before choosing action `l` or `r`. Moderate sources `σL`, `σR` reveal
//! the opposite state with probability `λ`; extreme ones `σLL`, `σRR` do
//! so with probability `δ`. The two `L`-biased sources form one type, the
//! two `R`-biased ones another, and each moderate source is
//! welfare-better than its extreme counterpart. Sources are valued by
//! their expected payoff; an extreme source whose moderate counterpart is
//! absent is valued with the reaction payoffs instead.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

fn lit<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    #[serde(rename = "sigmaLL")]
    LL,
    #[serde(rename = "sigmaL")]
    L,
    #[serde(rename = "sigmaR")]
    R,
    #[serde(rename = "sigmaRR")]
    RR,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::LL, Source::L, Source::R, Source::RR];

    pub fn is_extreme(self) -> bool {
        matches!(self, Source::LL | Source::RR)
    }

    /// The moderate source of the same bias.
    pub fn moderate(self) -> Source {
        match self {
            Source::LL | Source::L => Source::L,
            Source::R | Source::RR => Source::R,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Source::LL => "sigmaLL",
            Source::L => "sigmaL",
            Source::R => "sigmaR",
            Source::RR => "sigmaRR",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Signal {
    #[serde(rename = "sL")]
    SL,
    #[serde(rename = "sR")]
    SR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MediaMenu {
    /// All four sources.
    M,
    /// `σR` removed.
    N,
}

impl MediaMenu {
    pub fn sources(self) -> &'static [Source] {
        match self {
            MediaMenu::M => &Source::ALL,
            MediaMenu::N => &[Source::LL, Source::L, Source::RR],
        }
    }
}

impl std::str::FromStr for MediaMenu {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(MediaMenu::M),
            "N" | "n" => Ok(MediaMenu::N),
            other => Err(Error::InvalidParams(format!("unknown menu `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MediaParams<F> {
    /// Prior probability of state `R`.
    pub p: F,
    /// Moderate-source precision.
    pub lambda: F,
    /// Extreme-source precision.
    pub delta: F,
}

impl<F: Scalar> MediaParams<F> {
    pub fn new(p: F, lambda: F) -> Result<MediaParams<F>> {
        let params = MediaParams {
            p,
            lambda,
            delta: lit(0.5),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let half = lit::<F>(0.5);
        if !(self.p > F::zero() && self.p < half) {
            return Err(Error::InvalidParams(format!("p = {} outside (0, 1/2)", self.p)));
        }
        if self.delta != half {
            return Err(Error::InvalidParams(format!("delta = {} must be 1/2", self.delta)));
        }
        if !(self.lambda > self.delta && self.lambda < lit(0.75)) {
            return Err(Error::InvalidParams(format!("lambda = {} outside (1/2, 3/4)", self.lambda)));
        }
        Ok(())
    }

    /// Row-stochastic likelihoods `[state][signal]`, states `(L, R)`,
    /// signals `(sL, sR)`.
    pub fn likelihoods(&self, s: Source) -> [[F; 2]; 2] {
        let (one, zero) = (F::one(), F::zero());
        match s {
            Source::L => [[one, zero], [one - self.lambda, self.lambda]],
            Source::R => [[self.lambda, one - self.lambda], [zero, one]],
            Source::LL => [[one, zero], [one - self.delta, self.delta]],
            Source::RR => [[self.delta, one - self.delta], [zero, one]],
        }
    }

    /// Probability of each signal.
    pub fn signal_probs(&self, s: Source) -> [F; 2] {
        let lk = self.likelihoods(s);
        let prior = [F::one() - self.p, self.p];
        [0, 1].map(|j| prior[0] * lk[0][j] + prior[1] * lk[1][j])
    }

    /// Posterior probability of `R` after each signal.
    pub fn posteriors(&self, s: Source) -> [F; 2] {
        let lk = self.likelihoods(s);
        let probs = self.signal_probs(s);
        [0, 1].map(|j| {
            if probs[j] > F::zero() {
                self.p * lk[1][j] / probs[j]
            } else {
                self.p
            }
        })
    }
}

/// Payoffs `[state][action]`, states `(L, R)`, actions `(l, r)`.
pub type Payoffs<F> = [[F; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MediaConfig<F> {
    /// Payoffs behind the welfare value `u`.
    pub welfare_payoffs: Payoffs<F>,
    /// Payoffs behind the reaction value of an extreme source whose
    /// moderate counterpart is absent.
    pub reaction_payoffs: Payoffs<F>,
    /// Posterior of `R` at or above which a reacting decision maker takes
    /// `r` after a signal from an extreme source.
    pub reaction_action_threshold: F,
    /// When false, extreme sources are valued with `u` like any other.
    pub reactance: bool,
}

impl<F: Scalar> Default for MediaConfig<F> {
    fn default() -> Self {
        let (one, zero) = (F::one(), F::zero());
        MediaConfig {
            welfare_payoffs: [[one, -one], [-one, one]],
            reaction_payoffs: [[one, zero], [zero, one]],
            reaction_action_threshold: lit(1.0 / 3.0),
            reactance: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SourceValue<F> {
    pub source: Source,
    pub u: F,
    pub v: F,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MediaOutcome<F> {
    pub menu: MediaMenu,
    pub consideration: Vec<Source>,
    pub chosen_source: Source,
    /// Probability of state `R` after `sL` and `sR` from the chosen source.
    pub posterior_by_signal: [F; 2],
    pub action_by_signal: [Action; 2],
    pub expected_payoffs: Vec<SourceValue<F>>,
}

fn best_action<F: Scalar>(payoffs: &Payoffs<F>, q: F) -> Action {
    let value = |a: usize| (F::one() - q) * payoffs[0][a] + q * payoffs[1][a];
    if value(1) >= value(0) {
        Action::R
    } else {
        Action::L
    }
}

fn action_index(a: Action) -> usize {
    match a {
        Action::L => 0,
        Action::R => 1,
    }
}

/// Actions after `(sL, sR)` and the expected payoff of following them.
fn evaluate_source<F: Scalar>(
    params: &MediaParams<F>,
    s: Source,
    payoffs: &Payoffs<F>,
    rule: impl Fn(F) -> Action,
) -> ([Action; 2], F) {
    let lk = params.likelihoods(s);
    let post = params.posteriors(s);
    let actions = post.map(&rule);
    let prior = [F::one() - params.p, params.p];
    let mut value = F::zero();
    for state in 0..2 {
        for signal in 0..2 {
            value = value + prior[state] * lk[state][signal] * payoffs[state][action_index(actions[signal])];
        }
    }
    (actions, value)
}

/// Welfare value `u` of a source, under optimal actions.
pub fn welfare_value<F: Scalar>(params: &MediaParams<F>, config: &MediaConfig<F>, s: Source) -> F {
    let pay = config.welfare_payoffs;
    evaluate_source(params, s, &pay, |q| best_action(&pay, q)).1
}

/// Actions and value `v` of a source when its moderate counterpart is
/// absent from the menu.
fn reaction_evaluation<F: Scalar>(params: &MediaParams<F>, config: &MediaConfig<F>, s: Source) -> ([Action; 2], F) {
    if s.is_extreme() && config.reactance {
        let t = config.reaction_action_threshold;
        evaluate_source(params, s, &config.reaction_payoffs, |q| if q >= t { Action::R } else { Action::L })
    } else {
        let pay = config.welfare_payoffs;
        evaluate_source(params, s, &pay, |q| best_action(&pay, q))
    }
}

pub fn media_menu_choice<F: Scalar>(params: &MediaParams<F>, menu: MediaMenu) -> Result<MediaOutcome<F>> {
    media_menu_choice_with(params, &MediaConfig::default(), menu)
}

pub fn media_menu_choice_with<F: Scalar>(
    params: &MediaParams<F>,
    config: &MediaConfig<F>,
    menu: MediaMenu,
) -> Result<MediaOutcome<F>> {
    params.validate()?;
    let available = menu.sources();
    // moderate sources beat their extreme counterparts on welfare
    let consideration: Vec<Source> = available
        .iter()
        .copied()
        .filter(|s| !s.is_extreme() || !available.contains(&s.moderate()))
        .collect();
    let evals: Vec<(Source, [Action; 2], F)> = consideration
        .iter()
        .map(|&s| {
            let (acts, v) = reaction_evaluation(params, config, s);
            (s, acts, v)
        })
        .collect();
    // ties go to the extreme source, then to the L-biased one
    let &(chosen, actions, _) = evals
        .iter()
        .reduce(|best, cand| {
            let better = cand.2 > best.2 || (cand.2 == best.2 && cand.0.is_extreme() && !best.0.is_extreme());
            if better {
                cand
            } else {
                best
            }
        })
        .expect("consideration set is nonempty");
    let expected_payoffs = Source::ALL
        .iter()
        .map(|&s| SourceValue {
            source: s,
            u: welfare_value(params, config, s),
            v: reaction_evaluation(params, config, s).1,
        })
        .collect();
    Ok(MediaOutcome {
        menu,
        consideration,
        chosen_source: chosen,
        posterior_by_signal: params.posteriors(chosen),
        action_by_signal: actions,
        expected_payoffs,
    })
}

/// Prior at and above which `σRR` is weakly preferred to `σL` in menu `N`.
pub fn media_pstar<F: Scalar>(lambda: F) -> Result<F> {
    if !(lambda > lit(0.5) && lambda < lit(0.75)) {
        return Err(Error::InvalidParams(format!("lambda = {lambda} outside (1/2, 3/4)")));
    }
    Ok(lit::<F>(0.5) / (lit::<F>(2.5) - lit::<F>(2.0) * lambda))
}
