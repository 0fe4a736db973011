//! Piecewise optimum procedures for the two-link step, interpolated-square
//! and exponential families. Link 0 carries the smooth cost, link 1 the
//! piecewise one.

use crate::costs::{apow, knot_index, AlphaSeq, CostFunction};
use crate::equilibrium::{exp_bracket, ln_exp_load};
use crate::error::{Error, Result};
use crate::logvalue::{LogValue, Magnitude};
use crate::network::FlowProfile;

use super::{Candidate, OptMethod, OptimumSolution};

/// Pieces scanned below the one containing M.
const DEPTH: i32 = 64;

fn check(a: f64, m: f64) -> Result<()> {
    if !(a >= 2.0) || !a.is_finite() {
        return Err(Error::domain(format!("ratio a must satisfy a >= 2, got {a}")));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("demand must be finite and >= 0, got {m}")));
    }
    Ok(())
}

fn pick(rows: &[Candidate]) -> usize {
    let mut best = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.cost.less_than(&rows[best].cost) {
            best = i;
        }
    }
    best
}

fn solution(
    m: f64,
    y: f64,
    cost: Magnitude,
    method: OptMethod,
    rows: Vec<Candidate>,
    flag: Option<String>,
) -> Result<OptimumSolution> {
    let x = (m - y).max(0.0);
    Ok(OptimumSolution {
        flow: FlowProfile::with_total(vec![x, y], m)?,
        cost,
        method,
        certificate: rows,
        flag,
        bound: None,
    })
}

/// Opt for c₁(x) = x against StepGeometric(a): on each piece
/// I_j = (a^j, a^{j+1}] the step cost is a^{j+1}, so the best y is the
/// projection of M − a^{j+1}/2 onto the piece.
pub fn opt_parallel_step(a: f64, m: f64) -> Result<OptimumSolution> {
    check(a, m)?;
    if m == 0.0 {
        return solution(0.0, 0.0, Magnitude::Real(0.0), OptMethod::IntervalDecomposition, Vec::new(), None);
    }
    let top = knot_index(a, m);
    let mut rows =
        vec![Candidate { index: (top - DEPTH - 1) as i64, y: 0.0, case: "empty", cost: Magnitude::Real(m * m) }];
    for j in (top - DEPTH)..top {
        let lo = apow(a, j);
        let hi = apow(a, j + 1);
        let yj = m - 0.5 * hi;
        let (y, case, cost) = if yj < lo {
            (lo, "left", (m - lo) * (m - lo) + hi * lo)
        } else if yj > hi {
            (hi, "right", (m - hi) * (m - hi) + hi * hi)
        } else {
            (yj, "interior", hi * (m - 0.25 * hi))
        };
        rows.push(Candidate { index: j as i64, y, case, cost: Magnitude::Real(cost) });
    }
    let w = pick(&rows);
    let y = rows[w].y;
    let step = CostFunction::StepGeometric { a };
    let cost = (m - y) * (m - y) + y * step.eval(y)?;
    // M ∈ (2a^k, 2a^{k+1}] should be won by piece k−1 or k
    let k = (knot_index(a, 0.5 * m) - 1) as i64;
    let flag = (!(rows[w].index == k - 1 || rows[w].index == k))
        .then(|| format!("winning piece {} outside {{{}, {}}}", rows[w].index, k - 1, k));
    solution(m, y, Magnitude::Real(cost), OptMethod::IntervalDecomposition, rows, flag)
}

/// Opt for c₁(x) = x² against PwlSquare(a). On the piece [a^{k−1}, a^k] the
/// load y·c₂(y) is (lo+hi)y² − lo·hi·y, so C is a convex cubic in y whose
/// stationary point is clamped to the piece.
pub fn opt_parallel_pwl_square(a: f64, m: f64) -> Result<OptimumSolution> {
    check(a, m)?;
    if m == 0.0 {
        return solution(0.0, 0.0, Magnitude::Real(0.0), OptMethod::CandidateSet, Vec::new(), None);
    }
    let top = knot_index(a, m);
    let mut rows =
        vec![Candidate { index: (top - DEPTH - 1) as i64, y: 0.0, case: "empty", cost: Magnitude::Real(m * m * m) }];
    for k in (top - DEPTH)..=top {
        let lo = apow(a, k - 1);
        let hi = apow(a, k).min(m);
        let sa = lo + apow(a, k);
        let sb = lo * apow(a, k);
        let d = 2.0 * sa * m - sb;
        // u = M − y solves 3u² + 2·sa·u − d = 0
        let y_star = if d <= 0.0 { m } else { m - 2.0 * d / (2.0 * sa + (4.0 * sa * sa + 12.0 * d).sqrt()) };
        let (y, case) = if y_star <= lo {
            (lo, "knot-low")
        } else if y_star >= hi {
            (hi, "knot-high")
        } else {
            (y_star, "interior")
        };
        let u = m - y;
        rows.push(Candidate { index: k as i64, y, case, cost: Magnitude::Real(u * u * u + sa * y * y - sb * y) });
    }
    let w = pick(&rows);
    let y = rows[w].y;
    let c2 = CostFunction::PwlSquare { a };
    let x = m - y;
    let cost = x * x * x + y * c2.eval(y)?;
    solution(m, y, Magnitude::Real(cost), OptMethod::CandidateSet, rows, None)
}

/// Opt for ExpOverX against StepExp(α) in the log domain. On cell
/// (α_j, α_{j+1}] the step cost is c̄ = c(α_{j+1}) and the stationary
/// point is y_j = M − ln c̄ = M − α_{j+1} + ln α_{j+1}, clamped to the cell.
/// Every cell below M is scanned; a winner outside {k−1, k, k+1} is flagged.
pub fn opt_parallel_exp_log(alpha: &AlphaSeq, m: f64) -> Result<OptimumSolution> {
    let k = exp_bracket(alpha, m)? as i64;
    let step = CostFunction::StepExp { alpha: alpha.clone() };
    let mut rows = Vec::new();
    let mut j = 0usize;
    while let (Some(lo), Some(hi)) = (alpha.get(j), alpha.get(j + 1)) {
        if lo >= m {
            break;
        }
        let ln_bar = CostFunction::ExpOverX.eval_log(hi)?.ln();
        let top = hi.min(m);
        let y_star = m - ln_bar;
        let (y, case) = if y_star <= lo {
            (lo, "left")
        } else if y_star >= top {
            (top, "right")
        } else {
            (y_star, "interior")
        };
        let cost = LogValue::from_ln(ln_exp_load(m - y)) + LogValue::from_f64(y) * LogValue::from_ln(ln_bar);
        rows.push(Candidate { index: j as i64, y, case, cost: Magnitude::Log(cost) });
        j += 1;
    }
    if rows.is_empty() {
        return Err(Error::Bracket { m, hint: "no alpha cell below the demand".into() });
    }
    let w = pick(&rows);
    let y = rows[w].y;
    let cost = LogValue::from_ln(ln_exp_load(m - y)) + LogValue::from_f64(y) * step.eval_log(y)?;
    let idx = rows[w].index;
    let flag =
        (!(k - 1..=k + 1).contains(&idx)).then(|| format!("winning cell {idx} outside {{{}, {k}, {}}}", k - 1, k + 1));
    solution(m, y, Magnitude::Log(cost), OptMethod::CandidateSet, rows, flag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_examples() {
        let cases = [(5.0, 13.0), (6.0, 20.0), (7.0, 25.0)];
        for (m, want) in cases {
            let s = opt_parallel_step(2.0, m).unwrap();
            assert!((s.cost.to_f64() - want).abs() < 1e-12, "M={m}: {}", s.cost);
            assert!(s.flag.is_none());
        }
        assert!(matches!(opt_parallel_step(1.5, 3.0), Err(Error::Domain(_))));
        assert_eq!(opt_parallel_step(2.0, 0.0).unwrap().cost, Magnitude::Real(0.0));
    }

    #[test]
    fn pwl_special_demand() {
        let a: f64 = 2.0;
        let b = ((2.0 * a * a + a) / 3.0).sqrt();
        let s = opt_parallel_pwl_square(a, a + b).unwrap();
        assert!((s.cost.to_f64() - (b * b * b + a * a * a)).abs() < 1e-12);
        assert!((s.flow.path_flows[1] - a).abs() < 1e-12);
        let s2 = opt_parallel_pwl_square(a, a * (a + b)).unwrap();
        assert!((s2.cost.to_f64() / s.cost.to_f64() - a * a * a).abs() < 1e-12);
    }

    #[test]
    fn exp_near_breakpoint_wins_interior_cell() {
        // k = 4: α₄ = 24, α₅ = 120
        let m = 144.0 * (1.0 + 1e-6);
        let s = opt_parallel_exp_log(&AlphaSeq::Factorial, m).unwrap();
        let want = (120.0 - 120f64.ln()) + (1.0 + m - 120.0 + 120f64.ln()).ln();
        assert!((s.cost.ln() - want).abs() < 1e-12);
        assert!(s.flag.is_none());
        assert!(opt_parallel_exp_log(&AlphaSeq::Factorial, 1.5).is_err());
    }
}
