//! Pairwise conditional-gradient descent over path flows.
//!
//! Minimises a separable convex objective Σ_e F_e(x_e) whose edge
//! gradients are supplied as a closure. Each iteration shifts flow from
//! the most expensive used path to the cheapest path with an exact line
//! search on the directional derivative.

use crate::error::{Error, Result};
use crate::network::Network;
use crate::numeric::bisect;

#[derive(Debug, Clone)]
pub(crate) struct DescentOutcome {
    pub path_flows: Vec<f64>,
    /// max over used paths of g_P − min_Q g_Q.
    pub residual: f64,
    /// min_Q g_Q at the final flow.
    pub level: f64,
}

pub(crate) struct DescentOptions {
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions { rel_tol: 1e-7, max_iter: 100_000 }
    }
}

fn path_gradients<G>(net: &Network, x: &[f64], grad: &G) -> Result<Vec<f64>>
where
    G: Fn(usize, f64) -> Result<f64>,
{
    let mut xe = vec![0.0; net.num_edges()];
    for (p, &f) in net.paths().iter().zip(x) {
        for &e in p {
            xe[e] += f;
        }
    }
    let ge = xe.iter().enumerate().map(|(e, &v)| grad(e, v)).collect::<Result<Vec<_>>>()?;
    Ok(net.paths().iter().map(|p| p.iter().map(|&e| ge[e]).sum()).collect())
}

pub(crate) fn pairwise_descent<G>(net: &Network, m: f64, grad: G, opts: &DescentOptions) -> Result<DescentOutcome>
where
    G: Fn(usize, f64) -> Result<f64>,
{
    let n = net.num_paths();
    let mut x = vec![0.0; n];
    let g0 = path_gradients(net, &x, &grad)?;
    x[argmin(&g0)] = m;

    let mut residual = f64::INFINITY;
    let mut level = 0.0;
    for it in 0..=opts.max_iter {
        let g = path_gradients(net, &x, &grad)?;
        let s = argmin(&g);
        let v = (0..n).filter(|&p| x[p] > 0.0).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap_or(s);
        level = g[s];
        residual = g[v] - g[s];
        if residual <= opts.rel_tol * level.abs().max(1.0) {
            return Ok(DescentOutcome { path_flows: x, residual: residual.max(0.0), level });
        }
        if it == opts.max_iter {
            break;
        }

        let ps = &net.paths()[s];
        let pv = &net.paths()[v];
        let only_s: Vec<usize> = ps.iter().copied().filter(|e| !pv.contains(e)).collect();
        let only_v: Vec<usize> = pv.iter().copied().filter(|e| !ps.contains(e)).collect();
        let mut xe = vec![0.0; net.num_edges()];
        for (p, &f) in net.paths().iter().zip(&x) {
            for &e in p {
                xe[e] += f;
            }
        }
        let slope = |d: f64| -> Result<f64> {
            let mut acc = 0.0;
            for &e in &only_s {
                acc += grad(e, xe[e] + d)?;
            }
            for &e in &only_v {
                acc -= grad(e, (xe[e] - d).max(0.0))?;
            }
            Ok(acc)
        };
        let cap = x[v];
        let step = if slope(cap)? <= 0.0 {
            cap
        } else {
            let mut err = None;
            let (lo, _) = bisect(0.0, cap, |d| match slope(d) {
                Ok(s) => s > 0.0,
                Err(e) => {
                    err.get_or_insert(e);
                    true
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            lo
        };
        if step <= 0.0 {
            break;
        }
        if step >= cap {
            x[s] += x[v];
            x[v] = 0.0;
        } else {
            x[s] += step;
            x[v] -= step;
        }
    }
    Err(Error::Convergence { iterations: opts.max_iter, residual: residual.max(0.0) / level.abs().max(1.0) })
}

fn argmin(v: &[f64]) -> usize {
    (0..v.len()).min_by(|&a, &b| v[a].total_cmp(&v[b])).expect("nonempty")
}
