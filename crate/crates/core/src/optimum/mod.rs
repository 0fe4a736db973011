//! Social optima.

mod brute;
mod exact;

use serde::Serialize;

use crate::costs::CostFunction;
use crate::descent::{pairwise_descent, DescentOptions};
use crate::equilibrium::{ser_flows, solve_level, LevelOptions};
use crate::error::{Error, Result};
use crate::instances::{recognize, Family};
use crate::logvalue::Magnitude;
use crate::network::{FlowProfile, Game};

pub use brute::{opt_bruteforce, DEFAULT_RESOLUTION};
pub use exact::{opt_parallel_exp_log, opt_parallel_pwl_square, opt_parallel_step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptMethod {
    Marginal,
    IntervalDecomposition,
    CandidateSet,
    BruteForce,
    ConditionalGradient,
}

impl OptMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OptMethod::Marginal => "marginal",
            OptMethod::IntervalDecomposition => "interval-decomposition",
            OptMethod::CandidateSet => "candidate-set",
            OptMethod::BruteForce => "brute-force",
            OptMethod::ConditionalGradient => "conditional-gradient",
        }
    }
}

/// One row of a piecewise certificate: the best allocation `y` to the
/// special link within piece `index`, and the resulting cost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub index: i64,
    pub y: f64,
    pub case: &'static str,
    pub cost: Magnitude,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumSolution {
    #[serde(serialize_with = "ser_flows")]
    pub flow: FlowProfile,
    pub cost: Magnitude,
    pub method: OptMethod,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<Candidate>,
    /// Set when the winning piece lies outside the expected candidate set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    /// Optimality residual (marginal spread) or the brute-force error bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl OptimumSolution {
    pub(crate) fn simple(flow: FlowProfile, cost: Magnitude, method: OptMethod) -> Self {
        OptimumSolution { flow, cost, method, certificate: Vec::new(), flag: None, bound: None }
    }
}

/// Method choice for [`opt_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptChoice {
    Auto,
    Marginal,
    Step,
    Pwl,
    Exp,
    Brute,
    General,
}

impl std::str::FromStr for OptChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => OptChoice::Auto,
            "marginal" => OptChoice::Marginal,
            "step" => OptChoice::Step,
            "pwl" => OptChoice::Pwl,
            "exp" => OptChoice::Exp,
            "brute" => OptChoice::Brute,
            "general" => OptChoice::General,
            _ => return Err(Error::Parse(format!("unknown optimum method {s:?}"))),
        })
    }
}

fn check_demand(m: f64) -> Result<()> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("demand must be finite and >= 0, got {m}")));
    }
    Ok(())
}

fn marginal_value(c: &CostFunction, x: f64) -> Result<f64> {
    Ok(c.marginal(x)?.lower())
}

/// Optimum on parallel links with smooth, increasing marginal costs, by
/// bisection on the common marginal level μ.
pub fn opt_parallel_marginal(game: &Game, m: f64) -> Result<OptimumSolution> {
    check_demand(m)?;
    if !game.is_parallel() {
        return Err(Error::unsupported("marginal method needs a parallel network"));
    }
    if let Some(c) = game.costs.iter().find(|c| !c.has_smooth_marginal()) {
        return Err(Error::unsupported(format!("marginal method cannot handle {}", c.label())));
    }
    let n = game.costs.len();
    if m == 0.0 {
        return Ok(OptimumSolution::simple(FlowProfile::zero(n), Magnitude::Real(0.0), OptMethod::Marginal));
    }
    let costs = &game.costs;
    let lo0 = costs
        .iter()
        .map(|c| marginal_value(c, 0.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let hi0 =
        costs.iter().map(|c| marginal_value(c, m).unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min).max(1.0);
    let sol = solve_level(n, m, lo0, hi0, &LevelOptions::default(), |i, mu| costs[i].marginal_inverse(mu))?;
    let flow = FlowProfile::with_total(sol.x, m)?;
    let marg = flow.path_flows.iter().zip(costs).map(|(&x, c)| marginal_value(c, x)).collect::<Result<Vec<_>>>()?;
    let floor = marg.iter().copied().fold(f64::INFINITY, f64::min);
    let spread =
        flow.path_flows.iter().zip(&marg).filter(|(x, _)| **x > 0.0).map(|(_, g)| g - floor).fold(0.0, f64::max)
            / sol.level.max(1.0);
    let cost = game.social_cost(&flow)?;
    let mut out = OptimumSolution::simple(flow, Magnitude::Real(cost), OptMethod::Marginal);
    out.bound = Some(spread);
    Ok(out)
}

/// Optimum on a general network with smooth marginals by pairwise
/// conditional-gradient descent on C(x).
pub fn opt_general(game: &Game, m: f64) -> Result<OptimumSolution> {
    check_demand(m)?;
    if let Some(c) = game.costs.iter().find(|c| !c.has_smooth_marginal()) {
        return Err(Error::unsupported(format!("descent optimum cannot handle {}", c.label())));
    }
    let n = game.network.num_paths();
    if m == 0.0 {
        return Ok(OptimumSolution::simple(FlowProfile::zero(n), Magnitude::Real(0.0), OptMethod::ConditionalGradient));
    }
    let opts = DescentOptions { rel_tol: 1e-9, ..DescentOptions::default() };
    let out = pairwise_descent(&game.network, m, |e, x| marginal_value(&game.costs[e], x), &opts)?;
    let flow = FlowProfile::with_total(out.path_flows, m)?;
    let cost = game.social_cost(&flow)?;
    let mut sol = OptimumSolution::simple(flow, Magnitude::Real(cost), OptMethod::ConditionalGradient);
    sol.bound = Some(out.residual / out.level.abs().max(1.0));
    Ok(sol)
}

fn reorder(game: &Game, sol: OptimumSolution) -> OptimumSolution {
    match recognize(game) {
        Some(r) if r.links != [0, 1] => {
            let f = &sol.flow.path_flows;
            let flow = FlowProfile { path_flows: r.to_game_order(f[0], f[1]), total: sol.flow.total };
            OptimumSolution { flow, ..sol }
        }
        _ => sol,
    }
}

/// Optimum with automatic method selection.
pub fn opt(game: &Game, m: f64) -> Result<OptimumSolution> {
    opt_with(game, m, OptChoice::Auto)
}

pub fn opt_with(game: &Game, m: f64, choice: OptChoice) -> Result<OptimumSolution> {
    check_demand(m)?;
    let family = recognize(game).map(|r| r.family);
    let wrong = |what: &str| Error::unsupported(format!("{what} method does not apply to this instance"));
    let sol = match choice {
        OptChoice::Auto => match &family {
            Some(Family::Step { a }) => opt_parallel_step(*a, m)?,
            Some(Family::PwlSquare { a }) => opt_parallel_pwl_square(*a, m)?,
            Some(Family::Exp { alpha }) => opt_parallel_exp_log(alpha, m)?,
            None => {
                let smooth = game.costs.iter().all(|c| c.has_smooth_marginal());
                if smooth && game.is_parallel() {
                    opt_parallel_marginal(game, m)?
                } else if smooth {
                    opt_general(game, m)?
                } else if game.is_parallel() && game.costs.len() <= 3 {
                    opt_bruteforce(game, m, DEFAULT_RESOLUTION)?
                } else {
                    return Err(Error::unsupported("no optimum method for non-smooth costs on this network"));
                }
            }
        },
        OptChoice::Marginal => opt_parallel_marginal(game, m)?,
        OptChoice::General => opt_general(game, m)?,
        OptChoice::Brute => opt_bruteforce(game, m, DEFAULT_RESOLUTION)?,
        OptChoice::Step => match &family {
            Some(Family::Step { a }) => opt_parallel_step(*a, m)?,
            _ => return Err(wrong("step")),
        },
        OptChoice::Pwl => match &family {
            Some(Family::PwlSquare { a }) => opt_parallel_pwl_square(*a, m)?,
            _ => return Err(wrong("pwl")),
        },
        OptChoice::Exp => match &family {
            Some(Family::Exp { alpha }) => opt_parallel_exp_log(alpha, m)?,
            _ => return Err(wrong("exp")),
        },
    };
    Ok(if matches!(choice, OptChoice::Auto | OptChoice::Step | OptChoice::Pwl | OptChoice::Exp) {
        reorder(game, sol)
    } else {
        sol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::pigou;

    #[test]
    fn pigou_optimum() {
        let s = opt_parallel_marginal(&pigou(), 1.0).unwrap();
        assert!((s.flow.path_flows[0] - 0.5).abs() < 1e-12);
        assert!((s.cost.to_f64() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn symmetric_optimum() {
        let g = Game::parallel(vec![CostFunction::identity(); 2]).unwrap();
        let s = opt_parallel_marginal(&g, 2.0).unwrap();
        assert_eq!(s.flow.path_flows, vec![1.0, 1.0]);
        assert_eq!(s.cost.to_f64(), 2.0);
    }

    #[test]
    fn affine_pair_optimum() {
        let g = Game::parallel(vec![CostFunction::affine(1.0, 1.0).unwrap(), CostFunction::affine(2.0, 1.0).unwrap()])
            .unwrap();
        let s = opt_parallel_marginal(&g, 10.0).unwrap();
        assert!((s.flow.path_flows[0] - 5.25).abs() < 1e-12);
        assert!((s.cost.to_f64() - 64.875).abs() < 1e-10);
    }

    #[test]
    fn marginal_rejects_steps() {
        let g = crate::instances::step(2.0).unwrap();
        assert!(matches!(opt_parallel_marginal(&g, 3.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn general_matches_marginal_on_parallel() {
        let g = Game::parallel(vec![
            CostFunction::polynomial(vec![0.0, 1.0, 1.0]).unwrap(),
            CostFunction::monomial(3.0, 2.0).unwrap(),
        ])
        .unwrap();
        let a = opt_parallel_marginal(&g, 7.0).unwrap();
        let b = opt_general(&g, 7.0).unwrap();
        assert!((a.cost.to_f64() - b.cost.to_f64()).abs() < 1e-9 * a.cost.to_f64());
    }

    #[test]
    fn auto_reorders_swapped_links() {
        let g = Game::parallel(vec![CostFunction::step_geometric(2.0).unwrap(), CostFunction::identity()]).unwrap();
        let s = opt(&g, 6.0).unwrap();
        assert!((s.cost.to_f64() - 20.0).abs() < 1e-12);
        assert!((g.social_cost(&s.flow).unwrap() - 20.0).abs() < 1e-12);
    }
}
