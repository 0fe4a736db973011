//! Wardrop equilibria.

use std::cell::RefCell;

use serde::Serialize;

use crate::costs::{AlphaSeq, CostFunction};
use crate::descent::{pairwise_descent, DescentOptions};
use crate::error::{Error, Result};
use crate::instances::{recognize, Family};
use crate::logvalue::{LogValue, Magnitude};
use crate::network::{FlowProfile, Game};
use crate::numeric::bisect;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSolution {
    #[serde(serialize_with = "ser_flows")]
    pub flow: FlowProfile,
    /// Common cost level λ of the used paths.
    pub lambda: Magnitude,
    /// max over used paths of c_P(x) − min_Q c_Q(x+); relative to λ for
    /// log-domain solutions.
    pub residual: f64,
    /// WEq = C(x̄).
    pub cost: Magnitude,
    pub method: String,
}

pub(crate) fn ser_flows<S: serde::Serializer>(f: &FlowProfile, s: S) -> std::result::Result<S::Ok, S::Error> {
    f.path_flows.serialize(s)
}

/// Bracketing options for the parallel level bisection.
#[derive(Debug, Clone, Copy)]
pub struct LevelOptions {
    /// Multiplier on the initial upper level; changes the bisection path
    /// without changing the answer.
    pub seed: f64,
    /// Number of doublings of the upper level before giving up.
    pub max_doublings: u32,
}

impl Default for LevelOptions {
    fn default() -> Self {
        LevelOptions { seed: 1.0, max_doublings: 128 }
    }
}

pub(crate) struct LevelSolution {
    pub level: f64,
    pub x: Vec<f64>,
}

/// Finds the smallest level ℓ with Σᵢ min(x⁺ᵢ(ℓ), M) ≥ M and allocates M
/// inside the intervals [x⁻ᵢ(ℓ), x⁺ᵢ(ℓ)].
pub(crate) fn solve_level<F>(n: usize, m: f64, lo0: f64, hi0: f64, opts: &LevelOptions, inv: F) -> Result<LevelSolution>
where
    F: Fn(usize, f64) -> Result<(f64, f64)>,
{
    let ends =
        |l: f64| -> Result<Vec<(f64, f64)>> { (0..n).map(|i| inv(i, l).map(|(a, b)| (a.min(m), b.min(m)))).collect() };
    let upper = |l: f64| -> Result<f64> { Ok(ends(l)?.iter().map(|e| e.1).sum()) };

    if upper(lo0)? >= m {
        return Ok(LevelSolution { level: lo0, x: allocate(&ends(lo0)?, None, m) });
    }
    let mut hi = hi0.max(lo0);
    let mut doublings = 0;
    while !(upper(hi)? >= m) {
        if doublings >= opts.max_doublings || !hi.is_finite() {
            return Err(Error::UnboundedCost { cap: hi });
        }
        hi = if hi > 0.0 { hi * 2.0 } else { 1.0 };
        doublings += 1;
    }
    let err = RefCell::new(None);
    let (lo, hi) = bisect(lo0, hi, |l| match upper(l) {
        Ok(u) => u >= m,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            true
        }
    });
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let at_hi = ends(hi)?;
    let below: Vec<f64> = ends(lo)?.iter().map(|e| e.1).collect();
    Ok(LevelSolution { level: hi, x: allocate(&at_hi, Some(&below), m) })
}

fn allocate(at: &[(f64, f64)], below: Option<&[f64]>, m: f64) -> Vec<f64> {
    let s_lo: f64 = at.iter().map(|e| e.0).sum();
    let s_hi: f64 = at.iter().map(|e| e.1).sum();
    let mut x: Vec<f64> = if s_lo <= m {
        let w = s_hi - s_lo;
        at.iter().map(|&(a, b)| if w > 0.0 { a + (m - s_lo) * (b - a) / w } else { a }).collect()
    } else {
        let below = below.expect("level above the bracket start");
        let s_below: f64 = below.iter().sum();
        let t = (m - s_below) / (s_lo - s_below);
        below.iter().zip(at).map(|(&p, &(a, _))| p + t * (a - p)).collect()
    };
    let sum: f64 = x.iter().sum();
    if let Some(big) = (0..x.len()).max_by(|&i, &j| x[i].total_cmp(&x[j])) {
        x[big] = (x[big] + (m - sum)).max(0.0);
    }
    x
}

fn check_demand(m: f64) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("demand must be positive and finite, got {m}")));
    }
    Ok(())
}

fn require_parallel(game: &Game) -> Result<()> {
    if !game.is_parallel() {
        return Err(Error::unsupported("parallel solver called on a non-parallel network"));
    }
    Ok(())
}

/// Equilibrium on parallel links by bisection on the common level λ.
pub fn wardrop_parallel(game: &Game, m: f64) -> Result<EquilibriumSolution> {
    wardrop_parallel_with(game, m, &LevelOptions::default())
}

pub fn wardrop_parallel_with(game: &Game, m: f64, opts: &LevelOptions) -> Result<EquilibriumSolution> {
    check_demand(m)?;
    require_parallel(game)?;
    let costs = &game.costs;
    let lo0 = costs.iter().map(|c| c.eval(0.0)).collect::<Result<Vec<_>>>()?.into_iter().fold(f64::INFINITY, f64::min);
    let hi0 =
        costs.iter().map(|c| c.eval(m).unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min).max(1.0) * opts.seed;
    let sol = solve_level(costs.len(), m, lo0, hi0, opts, |i, l| costs[i].generalized_inverse(l))?;
    let flow = FlowProfile::with_total(sol.x, m)?;
    let report = verify_equilibrium(game, &flow, 1e-9)?;
    let cost = game.social_cost(&flow)?;
    Ok(EquilibriumSolution {
        flow,
        lambda: Magnitude::Real(sol.level),
        residual: report.residual,
        cost: Magnitude::Real(cost),
        method: "level-bisection".into(),
    })
}

/// Equilibrium on a general network by minimising the potential
/// Σ_e ∫₀^{x_e} c_e with pairwise conditional-gradient steps.
pub fn wardrop_general(game: &Game, m: f64) -> Result<EquilibriumSolution> {
    check_demand(m)?;
    if let Some(c) = game.costs.iter().find(|c| !c.is_continuous()) {
        if game.is_parallel() {
            return wardrop_parallel(game, m);
        }
        return Err(Error::unsupported(format!("discontinuous cost {} on a non-parallel network", c.label())));
    }
    let out = pairwise_descent(&game.network, m, |e, x| game.costs[e].eval(x), &DescentOptions::default())?;
    let flow = FlowProfile::with_total(out.path_flows, m)?;
    let cost = game.social_cost(&flow)?;
    Ok(EquilibriumSolution {
        flow,
        lambda: Magnitude::Real(out.level),
        residual: out.residual,
        cost: Magnitude::Real(cost),
        method: "conditional-gradient".into(),
    })
}

/// Routes to the log-domain case split, the parallel level solver, or the
/// general descent solver.
pub fn wardrop(game: &Game, m: f64) -> Result<EquilibriumSolution> {
    if let Some(r) = recognize(game) {
        if let Family::Exp { alpha } = &r.family {
            let mut sol = wardrop_parallel_log(alpha, m)?;
            sol.flow.path_flows = r.to_game_order(sol.flow.path_flows[0], sol.flow.path_flows[1]);
            return Ok(sol);
        }
    }
    if game.is_parallel() {
        wardrop_parallel(game, m)
    } else {
        wardrop_general(game, m)
    }
}

/// Index k with 2α_k < M ≤ 2α_{k+1}.
pub(crate) fn exp_bracket(alpha: &AlphaSeq, m: f64) -> Result<usize> {
    let a1 = alpha.get(1).ok_or_else(|| Error::Bracket { m, hint: "empty alpha sequence".into() })?;
    if !(m > 2.0 * a1) {
        return Err(Error::Bracket { m, hint: format!("demand must exceed 2·α₁ = {}", 2.0 * a1) });
    }
    let mut k = 1;
    loop {
        match alpha.get(k + 1) {
            Some(next) if m <= 2.0 * next => return Ok(k),
            Some(_) => k += 1,
            None => {
                return Err(Error::Bracket {
                    m,
                    hint: format!("needs α_{} for k = {k}; the sequence has {} terms", k + 1, alpha.len()),
                })
            }
        }
    }
}

/// ln(x·c(x)) for c = ExpOverX: x below 1 costs e·x, above it e^x.
pub(crate) fn ln_exp_load(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else if x < 1.0 {
        1.0 + x.ln()
    } else {
        x
    }
}

/// Equilibrium of ExpOverX (link 0) against StepExp(α) (link 1) from the
/// explicit case split on the cell of M.
pub fn wardrop_parallel_log(alpha: &AlphaSeq, m: f64) -> Result<EquilibriumSolution> {
    check_demand(m)?;
    let k = exp_bracket(alpha, m)?;
    let ak = alpha.get(k).expect("bracket checked");
    let ak1 = alpha.get(k + 1).expect("bracket checked");
    let (x, y) = if m <= ak + ak1 { (m - ak, ak) } else { (ak1, m - ak1) };

    let c1 = CostFunction::ExpOverX;
    let c2 = CostFunction::StepExp { alpha: alpha.clone() };
    let l1 = c1.eval_log(x)?;
    let l2 = c2.eval_log(y)?;
    let r1 = c1.eval_right_log(x)?;
    let r2 = c2.eval_right_log(y)?;
    let cheapest = if r1 < r2 { r1 } else { r2 };
    let used_max = if l1 > l2 { l1 } else { l2 };
    let residual = (1.0 - (cheapest.ln() - used_max.ln()).exp()).max(0.0);
    let cost = LogValue::from_ln(ln_exp_load(x)) + LogValue::from_f64(y) * l2;
    Ok(EquilibriumSolution {
        flow: FlowProfile::with_total(vec![x, y], m)?,
        lambda: Magnitude::Log(l1),
        residual,
        cost: Magnitude::Log(cost),
        method: "log-case-split".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub residual: f64,
    pub min_cost: f64,
    pub is_equilibrium: bool,
}

/// Equilibrium residual max over used P of c_P(x) − min_Q c_Q(x+). Paths
/// carrying at most `tol·M` count as unused; the verdict compares the
/// residual with `tol·max(min cost, 1)`.
pub fn verify_equilibrium(game: &Game, flow: &FlowProfile, tol: f64) -> Result<ResidualReport> {
    let xe = game.network.edge_flows(flow)?;
    let used = game.path_costs(&xe)?;
    let alt = game.path_costs_right(&xe)?;
    let min_cost = alt.iter().copied().fold(f64::INFINITY, f64::min);
    let cutoff = tol * flow.total;
    let residual =
        flow.path_flows.iter().zip(&used).filter(|(f, _)| **f > cutoff).map(|(_, c)| c - min_cost).fold(0.0, f64::max);
    Ok(ResidualReport { residual, min_cost, is_equilibrium: residual <= tol * min_cost.max(1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{pigou, step};
    use crate::network::Network;

    #[test]
    fn pigou_equilibrium() {
        let s = wardrop_parallel(&pigou(), 1.0).unwrap();
        assert_eq!(s.flow.path_flows, vec![1.0, 0.0]);
        assert_eq!(s.lambda, Magnitude::Real(1.0));
        assert_eq!(s.cost, Magnitude::Real(1.0));
    }

    #[test]
    fn step_game_cells() {
        let g = step(2.0).unwrap();
        let s = wardrop_parallel(&g, 5.0).unwrap();
        assert!((s.flow.path_flows[0] - 3.0).abs() < 1e-12);
        assert!((s.flow.path_flows[1] - 2.0).abs() < 1e-12);
        assert!((s.cost.to_f64() - 13.0).abs() < 1e-12);
        let s = wardrop_parallel(&g, 7.0).unwrap();
        assert!((s.flow.path_flows[0] - 4.0).abs() < 1e-12);
        assert!((s.cost.to_f64() - 28.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_links_split_evenly() {
        let g = Game::parallel(vec![CostFunction::identity(); 2]).unwrap();
        let s = wardrop_parallel(&g, 2.0).unwrap();
        assert_eq!(s.flow.path_flows, vec![1.0, 1.0]);
    }

    #[test]
    fn rejects_bad_demand() {
        assert!(matches!(wardrop_parallel(&pigou(), 0.0), Err(Error::Domain(_))));
        assert!(matches!(wardrop_parallel(&pigou(), -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn verify_examples() {
        let g = pigou();
        let r = verify_equilibrium(&g, &FlowProfile::with_total(vec![1.0, 0.0], 1.0).unwrap(), 1e-9).unwrap();
        assert_eq!(r.residual, 0.0);
        let r = verify_equilibrium(&g, &FlowProfile::with_total(vec![0.5, 0.5], 1.0).unwrap(), 1e-9).unwrap();
        assert_eq!(r.residual, 0.5);
        assert!(!r.is_equilibrium);
        let expensive = Game::parallel(vec![CostFunction::identity(), CostFunction::constant(100.0).unwrap()]).unwrap();
        let r = verify_equilibrium(&expensive, &FlowProfile::with_total(vec![1.0, 0.0], 1.0).unwrap(), 1e-9).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn general_matches_parallel() {
        let g = Game::parallel(vec![CostFunction::affine(1.0, 1.0).unwrap(), CostFunction::affine(2.0, 3.0).unwrap()])
            .unwrap();
        let a = wardrop_parallel(&g, 10.0).unwrap();
        let b = wardrop_general(&g, 10.0).unwrap();
        assert!((a.lambda.to_f64() - b.lambda.to_f64()).abs() < 1e-6 * a.lambda.to_f64());
    }

    #[test]
    fn series_paths_reduce_to_parallel() {
        let net = Network::new(
            ["s", "u", "v", "t"].map(String::from).to_vec(),
            vec![
                ("a".into(), "s".into(), "u".into()),
                ("b".into(), "u".into(), "t".into()),
                ("c".into(), "s".into(), "v".into()),
                ("d".into(), "v".into(), "t".into()),
            ],
            "s",
            "t",
            1000,
        )
        .unwrap();
        let zero = CostFunction::constant(0.0).unwrap();
        let g =
            Game::new(net, vec![CostFunction::identity(), zero.clone(), CostFunction::constant(1.0).unwrap(), zero])
                .unwrap();
        let s = wardrop_general(&g, 0.6).unwrap();
        assert!((s.flow.path_flows[0] - 0.6).abs() < 1e-7);
        let s = wardrop_general(&g, 3.0).unwrap();
        assert!((s.flow.path_flows[0] - 1.0).abs() < 1e-6);
        assert!((s.lambda.to_f64() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn single_path_takes_everything() {
        let g = Game::parallel(vec![CostFunction::monomial(2.0, 3.0).unwrap()]).unwrap();
        let s = wardrop_general(&g, 4.5).unwrap();
        assert_eq!(s.flow.path_flows, vec![4.5]);
    }

    #[test]
    fn log_case_split() {
        let s = wardrop_parallel_log(&AlphaSeq::Factorial, 31.0).unwrap();
        assert_eq!(s.flow.path_flows, vec![24.0, 7.0]);
        let want = 31f64.ln() + 24.0 - 24f64.ln();
        assert!((s.cost.ln() - want).abs() < 1e-12);
        let s = wardrop_parallel_log(&AlphaSeq::Factorial, 12.0 + 1e-9).unwrap();
        assert_eq!(s.flow.path_flows[1], 6.0);
        assert!(matches!(wardrop_parallel_log(&AlphaSeq::Explicit(vec![1.0]), 3.0), Err(Error::Bracket { .. })));
    }
}
