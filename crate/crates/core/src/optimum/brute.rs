//! Grid-search optimum for up to three parallel links.

use crate::error::{Error, Result};
use crate::logvalue::Magnitude;
use crate::network::{FlowProfile, Game};

use super::{OptMethod, OptimumSolution};

pub const DEFAULT_RESOLUTION: usize = 4001;
const ZOOM_ROUNDS: usize = 3;
const ZOOM_POINTS: usize = 21;
const BREAK_OFFSET: f64 = 1e-9;

fn social(game: &Game, x: &[f64]) -> f64 {
    game.costs.iter().zip(x).map(|(c, &v)| c.eval(v).map(|cv| v * cv).unwrap_or(f64::INFINITY)).sum()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || hi <= lo {
        return vec![lo];
    }
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

/// Breakpoint-derived coordinates for a link flow in [0, M].
fn break_coords(game: &Game, link: usize, m: f64, mirrored: bool) -> Vec<f64> {
    let mut v = Vec::new();
    for b in game.costs[link].breakpoints(0.0, m) {
        for p in [b - BREAK_OFFSET * m, b, b + BREAK_OFFSET * m] {
            let q = if mirrored { m - p } else { p };
            if (0.0..=m).contains(&q) {
                v.push(q);
            }
        }
    }
    v
}

struct Best {
    x: Vec<f64>,
    cost: f64,
}

fn consider(best: &mut Best, game: &Game, x: Vec<f64>) {
    let c = social(game, &x);
    if c < best.cost {
        best.cost = c;
        best.x = x;
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Grid search over the simplex M·Δ with three zoom rounds around the
/// incumbent. `bound` on the result is the largest cost increase to a
/// neighbouring point of the final grid plus rounding slack.
pub fn opt_bruteforce(game: &Game, m: f64, resolution: usize) -> Result<OptimumSolution> {
    let n = game.costs.len();
    if !game.is_parallel() || n > 3 {
        return Err(Error::unsupported(format!("brute force needs a parallel network with at most 3 links, got {n}")));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("demand must be finite and >= 0, got {m}")));
    }
    if m == 0.0 || n == 1 {
        let flow = FlowProfile::with_total(vec![m; n], m)?;
        let cost = game.social_cost(&flow)?;
        return Ok(OptimumSolution {
            bound: Some(0.0),
            ..OptimumSolution::simple(flow, Magnitude::Real(cost), OptMethod::BruteForce)
        });
    }
    let resolution = resolution.max(3);
    let (x, cost, bound) = if n == 2 { search_1d(game, m, resolution) } else { search_2d(game, m, resolution) };
    if !cost.is_finite() {
        return Err(Error::Range { what: "brute-force social cost".into(), x: m });
    }
    let flow = FlowProfile::with_total(x, m)?;
    let mut sol = OptimumSolution::simple(flow, Magnitude::Real(cost), OptMethod::BruteForce);
    sol.bound = Some(bound + 1e-12 * cost.abs().max(1.0));
    Ok(sol)
}

fn search_1d(game: &Game, m: f64, resolution: usize) -> (Vec<f64>, f64, f64) {
    let mut axis = linspace(0.0, m, resolution);
    axis.extend(break_coords(game, 0, m, false));
    axis.extend(break_coords(game, 1, m, true));
    let axis = sorted(axis);
    let mut best = Best { x: vec![0.0, m], cost: f64::INFINITY };
    for &t in &axis {
        consider(&mut best, game, vec![t, m - t]);
    }
    let mut cell = m / (resolution - 1) as f64;
    let mut last = axis;
    for _ in 0..ZOOM_ROUNDS {
        let c = best.x[0];
        let mut grid = linspace((c - cell).max(0.0), (c + cell).min(m), ZOOM_POINTS);
        grid.push(c);
        let grid = sorted(grid);
        for &t in &grid {
            consider(&mut best, game, vec![t, m - t]);
        }
        cell = 2.0 * cell / (ZOOM_POINTS - 1) as f64;
        last = grid;
    }
    let i = last.iter().position(|&t| t == best.x[0]).unwrap_or(0);
    let mut bound: f64 = 0.0;
    for j in [i.wrapping_sub(1), i + 1] {
        if let Some(&t) = last.get(j) {
            bound = bound.max(social(game, &[t, m - t]) - best.cost);
        }
    }
    (best.x, best.cost, bound)
}

fn search_2d(game: &Game, m: f64, resolution: usize) -> (Vec<f64>, f64, f64) {
    let mut ax0 = linspace(0.0, m, resolution);
    ax0.extend(break_coords(game, 0, m, false));
    let mut ax1 = linspace(0.0, m, resolution);
    ax1.extend(break_coords(game, 1, m, false));
    let (ax0, ax1) = (sorted(ax0), sorted(ax1));
    let mut best = Best { x: vec![0.0, 0.0, m], cost: f64::INFINITY };
    for &u in &ax0 {
        for &v in &ax1 {
            if u + v <= m {
                consider(&mut best, game, vec![u, v, (m - u - v).max(0.0)]);
            }
        }
    }
    let mut cell = m / (resolution - 1) as f64;
    let mut last = (ax0, ax1);
    for _ in 0..ZOOM_ROUNDS {
        let (cu, cv) = (best.x[0], best.x[1]);
        let mut g0 = linspace((cu - cell).max(0.0), (cu + cell).min(m), ZOOM_POINTS);
        g0.push(cu);
        let mut g1 = linspace((cv - cell).max(0.0), (cv + cell).min(m), ZOOM_POINTS);
        g1.push(cv);
        let (g0, g1) = (sorted(g0), sorted(g1));
        for &u in &g0 {
            for &v in &g1 {
                if u + v <= m {
                    consider(&mut best, game, vec![u, v, (m - u - v).max(0.0)]);
                }
            }
        }
        cell = 2.0 * cell / (ZOOM_POINTS - 1) as f64;
        last = (g0, g1);
    }
    let i = last.0.iter().position(|&t| t == best.x[0]).unwrap_or(0);
    let j = last.1.iter().position(|&t| t == best.x[1]).unwrap_or(0);
    let mut bound: f64 = 0.0;
    for (di, dj) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1), (1, -1), (-1, 1)] {
        let (ii, jj) = (i as i64 + di, j as i64 + dj);
        if ii < 0 || jj < 0 {
            continue;
        }
        if let (Some(&u), Some(&v)) = (last.0.get(ii as usize), last.1.get(jj as usize)) {
            if u + v <= m {
                bound = bound.max(social(game, &[u, v, m - u - v]) - best.cost);
            }
        }
    }
    (best.x, best.cost, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::CostFunction;
    use crate::instances::{pigou, step};

    #[test]
    fn pigou_grid() {
        let s = opt_bruteforce(&pigou(), 1.0, DEFAULT_RESOLUTION).unwrap();
        assert!((s.cost.to_f64() - 0.75).abs() < 1e-6);
        assert!(s.bound.unwrap() < 1e-6);
    }

    #[test]
    fn step_grid() {
        let s = opt_bruteforce(&step(2.0).unwrap(), 6.0, DEFAULT_RESOLUTION).unwrap();
        assert!((s.cost.to_f64() - 20.0).abs() < 1e-5);
    }

    #[test]
    fn zero_demand_and_limits() {
        assert_eq!(opt_bruteforce(&pigou(), 0.0, 11).unwrap().cost, Magnitude::Real(0.0));
        let g = Game::parallel(vec![CostFunction::identity(); 4]).unwrap();
        assert!(matches!(opt_bruteforce(&g, 1.0, 11), Err(Error::Unsupported(_))));
    }

    #[test]
    fn three_links() {
        let g = Game::parallel(vec![CostFunction::identity(); 3]).unwrap();
        let s = opt_bruteforce(&g, 3.0, 301).unwrap();
        assert!((s.cost.to_f64() - 3.0).abs() < 1e-9);
    }
}
