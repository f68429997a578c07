//! Infinite-population dynamics with willed minorities.
//!
//! A fraction `n1` of the population is committed to cooperating and `n2`
//! to defecting; the remaining `m = 1 - n1 - n2` switch toward whichever
//! option pays more. The cooperating share `x` is therefore confined to
//! `[n1, 1 - n2]` and drifts with the payoff differential
//!
//! ```text
//! dx = move_rate * m * Δf(x) dt + sigma dW,   Δf(x) = f1(x) - f2(x)
//! ```
//!
//! where `f1`, `f2` are the expected payoffs of a symmetric 2x2 game under
//! random matching, so `Δf` is linear and all equilibria have closed forms.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::DynamicsError;
use crate::harness::run_indexed;
use crate::rng;
use crate::stats::{BatchStats, Z_95_TWO_SIDED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameKind {
    StagHunt,
    Snowdrift,
    PrisonersDilemma,
}

impl GameKind {
    pub const ALL: [GameKind; 3] = [GameKind::StagHunt, GameKind::Snowdrift, GameKind::PrisonersDilemma];

    pub fn name(self) -> &'static str {
        match self {
            GameKind::StagHunt => "stag_hunt",
            GameKind::Snowdrift => "snowdrift",
            GameKind::PrisonersDilemma => "prisoners_dilemma",
        }
    }
}

/// Symmetric 2x2 game: `reward` (both cooperate), `sucker` (cooperate
/// against a defector), `temptation` (defect against a cooperator) and
/// `punishment` (both defect).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationGame {
    pub kind: GameKind,
    pub reward: f64,
    pub sucker: f64,
    pub temptation: f64,
    pub punishment: f64,
}

impl PopulationGame {
    pub fn new(kind: GameKind, reward: f64, sucker: f64, temptation: f64, punishment: f64) -> Result<Self, DynamicsError> {
        let (r, s, t, p) = (reward, sucker, temptation, punishment);
        let ok = match kind {
            GameKind::StagHunt => r > t && t >= p && p > s,
            GameKind::Snowdrift => t > r && s > p,
            GameKind::PrisonersDilemma => t > r && p > s,
        };
        if !ok {
            return Err(DynamicsError::InvalidGame(kind.name()));
        }
        Ok(PopulationGame { kind, reward, sucker, temptation, punishment })
    }

    pub fn stag_hunt() -> Self {
        PopulationGame { kind: GameKind::StagHunt, reward: 4.0, sucker: 0.0, temptation: 3.0, punishment: 3.0 }
    }

    pub fn snowdrift() -> Self {
        PopulationGame { kind: GameKind::Snowdrift, reward: 3.0, sucker: 2.0, temptation: 4.0, punishment: 0.0 }
    }

    pub fn prisoners_dilemma() -> Self {
        PopulationGame { kind: GameKind::PrisonersDilemma, reward: 3.0, sucker: 0.0, temptation: 5.0, punishment: 1.0 }
    }

    pub fn default_for(kind: GameKind) -> Self {
        match kind {
            GameKind::StagHunt => Self::stag_hunt(),
            GameKind::Snowdrift => Self::snowdrift(),
            GameKind::PrisonersDilemma => Self::prisoners_dilemma(),
        }
    }

    /// Expected payoff of cooperating when a share `x` cooperates.
    pub fn f1(&self, x: f64) -> f64 {
        self.reward * x + self.sucker * (1.0 - x)
    }

    /// Expected payoff of defecting when a share `x` cooperates.
    pub fn f2(&self, x: f64) -> f64 {
        self.temptation * x + self.punishment * (1.0 - x)
    }

    pub fn payoff_differential(&self, x: f64) -> f64 {
        self.f1(x) - self.f2(x)
    }

    /// `d Δf / dx`.
    pub fn slope(&self) -> f64 {
        (self.reward - self.temptation) - (self.sucker - self.punishment)
    }

    /// `Δf(0)`.
    pub fn intercept(&self) -> f64 {
        self.sucker - self.punishment
    }

    /// The unique zero of `Δf`, if the line is not flat.
    pub fn root(&self) -> Option<f64> {
        let a = self.slope();
        (a != 0.0).then(|| -self.intercept() / a)
    }
}

/// Committed shares. The feasible region is `[n1, 1 - n2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WillShares {
    pub n1: f64,
    pub n2: f64,
}

impl WillShares {
    pub fn new(n1: f64, n2: f64) -> Result<Self, DynamicsError> {
        if !(0.0..=1.0).contains(&n1) || !(0.0..=1.0).contains(&n2) {
            return Err(DynamicsError::InvalidParameter("shares must lie in [0, 1]"));
        }
        if n1 + n2 > 1.0 + 1e-12 {
            return Err(DynamicsError::EmptyFeasibleRegion(n1 + n2));
        }
        Ok(WillShares { n1, n2 })
    }

    pub fn rational(&self) -> f64 {
        (1.0 - self.n1 - self.n2).max(0.0)
    }

    pub fn lower(&self) -> f64 {
        self.n1
    }

    pub fn upper(&self) -> f64 {
        (1.0 - self.n2).max(self.n1)
    }

    /// Shares on a `step` grid with `n1 + n2 <= 1`.
    pub fn grid(step: f64) -> Vec<WillShares> {
        let k = (1.0 / step).round() as usize;
        let mut out = Vec::new();
        for i in 0..=k {
            for j in 0..=(k - i) {
                out.push(WillShares { n1: i as f64 / k as f64, n2: j as f64 / k as f64 });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdeParams {
    /// Rate at which rational agents switch sides.
    pub move_rate: f64,
    pub sigma: f64,
    pub dt: f64,
    pub t_max: f64,
}

impl Default for SdeParams {
    fn default() -> Self {
        SdeParams { move_rate: 1.0, sigma: 0.0, dt: 1e-3, t_max: 1e4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    InteriorStable,
    /// An unstable zero of `Δf`. Reported when it lies anywhere in the
    /// feasible region, boundaries included.
    InteriorUnstable,
    LowerBoundaryStable,
    UpperBoundaryStable,
}

impl Classification {
    pub fn is_stable(self) -> bool {
        !matches!(self, Classification::InteriorUnstable)
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::InteriorStable => "interior_stable",
            Classification::InteriorUnstable => "interior_unstable",
            Classification::LowerBoundaryStable => "lower_boundary_stable",
            Classification::UpperBoundaryStable => "upper_boundary_stable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub x_star: f64,
    pub classification: Classification,
}

/// All equilibria of the constrained dynamics, sorted by position.
///
/// A zero of `Δf` within `tol` of a boundary is merged into that boundary:
/// stable when the flow from the interior points at it. A degenerate region
/// (`n1 + n2 = 1`) is a single pinned point, and an identically zero `Δf`
/// leaves every state neutral; both report the lower boundary as stable.
pub fn find_equilibria(game: &PopulationGame, shares: &WillShares, tol: f64) -> Result<Vec<Equilibrium>, DynamicsError> {
    let shares = WillShares::new(shares.n1, shares.n2)?;
    let (lo, hi) = (shares.lower(), shares.upper());
    let df = |x| game.payoff_differential(x);
    let a = game.slope();
    let eq = |x_star, classification| Equilibrium { x_star, classification };

    if hi - lo <= tol {
        let c = if df(lo) > 0.0 {
            Classification::UpperBoundaryStable
        } else {
            Classification::LowerBoundaryStable
        };
        return Ok(vec![eq(lo, c)]);
    }

    if a == 0.0 && game.intercept() == 0.0 {
        // Every state is neutral; report the pinned lower boundary.
        return Ok(vec![eq(lo, Classification::LowerBoundaryStable)]);
    }

    let mut out = Vec::new();
    let root = game.root();
    let at_lo = root.is_some_and(|r| (r - lo).abs() <= tol);
    let at_hi = root.is_some_and(|r| (r - hi).abs() <= tol);

    if at_lo {
        out.push(eq(lo, if a < 0.0 { Classification::LowerBoundaryStable } else { Classification::InteriorUnstable }));
    } else if df(lo) < 0.0 {
        out.push(eq(lo, Classification::LowerBoundaryStable));
    }
    if let Some(r) = root {
        if r > lo + tol && r < hi - tol {
            out.push(eq(r, if a < 0.0 { Classification::InteriorStable } else { Classification::InteriorUnstable }));
        }
    }
    if at_hi {
        out.push(eq(hi, if a < 0.0 { Classification::UpperBoundaryStable } else { Classification::InteriorUnstable }));
    } else if df(hi) > 0.0 {
        out.push(eq(hi, Classification::UpperBoundaryStable));
    }
    Ok(out)
}

/// The unstable zero of `Δf` separating the defection and cooperation
/// basins, when it lies in the feasible region.
pub fn tipping_point(game: &PopulationGame, shares: &WillShares) -> Result<f64, DynamicsError> {
    let shares = WillShares::new(shares.n1, shares.n2)?;
    match game.root() {
        Some(r) if game.slope() > 0.0 && r >= shares.lower() - 1e-12 && r <= shares.upper() + 1e-12 => Ok(r),
        _ => Err(DynamicsError::TippingPointOutsideFeasibleRegion),
    }
}

/// `∫ Δf` from `n1` to the tipping point: the (negative) height of the
/// barrier the noise has to climb.
pub fn barrier_integral(game: &PopulationGame, shares: &WillShares) -> Result<f64, DynamicsError> {
    let tip = tipping_point(game, shares)?;
    let lo = shares.lower().min(tip);
    let (a, b) = (game.slope(), game.intercept());
    Ok(0.5 * a * (tip * tip - lo * lo) + b * (tip - lo))
}

fn drift_step(game: &PopulationGame, shares: &WillShares, params: &SdeParams, x: f64) -> f64 {
    params.move_rate * shares.rational() * game.payoff_differential(x) * params.dt
}

/// Euler–Maruyama path from `x0`, clamped to the feasible region at every
/// step. Returns `x0` followed by `ceil(t_max / dt)` samples.
pub fn integrate_sde<R: Rng + ?Sized>(
    game: &PopulationGame,
    shares: &WillShares,
    params: &SdeParams,
    x0: f64,
    rng: &mut R,
) -> Vec<f64> {
    let (lo, hi) = (shares.lower(), shares.upper());
    let n_steps = (params.t_max / params.dt).ceil() as usize;
    let noise = params.sigma * params.dt.sqrt();
    let mut path = Vec::with_capacity(n_steps + 1);
    let mut x = x0.clamp(lo, hi);
    path.push(x);
    for _ in 0..n_steps {
        let xi: f64 = if noise > 0.0 { rng.sample(StandardNormal) } else { 0.0 };
        x = (x + drift_step(game, shares, params, x) + noise * xi).clamp(lo, hi);
        path.push(x);
    }
    path
}

/// End point of a noiseless run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settled {
    pub x: f64,
    /// `|Δx|` of the final step.
    pub last_step: f64,
    pub time: f64,
}

/// Runs the noiseless dynamics from `x0` until the state stops moving
/// exactly (pinned at a boundary or a fixed point) or for 50 relaxation
/// times `1 / (move_rate * m * |Δf'|)`, capped at `t_max`.
pub fn settle(game: &PopulationGame, shares: &WillShares, params: &SdeParams, x0: f64) -> Settled {
    let (lo, hi) = (shares.lower(), shares.upper());
    let rate = params.move_rate * shares.rational() * game.slope().abs();
    let horizon = if rate > 0.0 { (50.0 / rate).min(params.t_max) } else { params.t_max };
    let mut x = x0.clamp(lo, hi);
    let mut t = 0.0;
    let mut last_step = 0.0;
    while t < horizon {
        let next = (x + drift_step(game, shares, params, x)).clamp(lo, hi);
        last_step = (next - x).abs();
        x = next;
        t += params.dt;
        if last_step == 0.0 {
            break;
        }
    }
    Settled { x, last_step, time: t }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscapeStats {
    pub trials: usize,
    /// Mean first-passage time, with censored trials counted at `t_max`.
    pub mean_tau: f64,
    pub ci95: f64,
    pub censored_fraction: f64,
}

impl EscapeStats {
    pub fn as_batch(&self) -> BatchStats {
        BatchStats { n_episodes: self.trials, mean: self.mean_tau, ci95_halfwidth: self.ci95 }
    }
}

/// First time the noisy dynamics started at `n1` reach the tipping point.
/// Returns `None` when the run is censored at `t_max`.
pub fn first_passage<R: Rng + ?Sized>(
    game: &PopulationGame,
    shares: &WillShares,
    params: &SdeParams,
    tip: f64,
    rng: &mut R,
) -> Option<f64> {
    let lo = shares.lower();
    if lo >= tip {
        return Some(0.0);
    }
    let drift = params.move_rate * shares.rational() * params.dt;
    let (a, b) = (game.slope(), game.intercept());
    let noise = params.sigma * params.dt.sqrt();
    let n_steps = (params.t_max / params.dt).ceil() as u64;
    let mut x = lo;
    for step in 1..=n_steps {
        let xi: f64 = rng.sample(StandardNormal);
        x = (x + drift * (a * x + b) + noise * xi).max(lo);
        if x >= tip {
            return Some(step as f64 * params.dt);
        }
    }
    None
}

/// Mean escape time over `trials` independent runs. Trial `i` uses a stream
/// derived from a seed drawn from `rng` and `i`, so results do not depend on
/// `parallelism`.
pub fn escape_time<R: Rng + ?Sized>(
    game: &PopulationGame,
    shares: &WillShares,
    params: &SdeParams,
    trials: usize,
    rng: &mut R,
    parallelism: usize,
) -> Result<EscapeStats, DynamicsError> {
    if !(params.sigma > 0.0) {
        return Err(DynamicsError::InvalidParameter("escape times need sigma > 0"));
    }
    if trials == 0 {
        return Err(DynamicsError::InvalidParameter("need at least one trial"));
    }
    let tip = tipping_point(game, shares)?;
    let base: u64 = rng.random();
    let taus = run_indexed(trials, parallelism, |i| {
        first_passage(game, shares, params, tip, &mut rng::stream(base, &[i as u64]))
    });
    let censored = taus.iter().filter(|t| t.is_none()).count();
    let samples: Vec<f64> = taus.iter().map(|t| t.unwrap_or(params.t_max)).collect();
    let stats = BatchStats::from_samples(&samples);
    debug_assert!((stats.ci95_halfwidth / Z_95_TWO_SIDED).is_finite());
    Ok(EscapeStats {
        trials,
        mean_tau: stats.mean,
        ci95: stats.ci95_halfwidth,
        censored_fraction: censored as f64 / trials as f64,
    })
}
