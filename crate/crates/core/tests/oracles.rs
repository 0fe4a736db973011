//! Library results checked against independent numerical oracles written
//! here: quadrature, finite differences, dense scans and a native-f64
//! model of a small exponential instance.

use poa_core::costs::{AlphaSeq, CostFunction};
use poa_core::equilibrium::wardrop_parallel_log;
use poa_core::instances;
use poa_core::optimum::opt_parallel_exp_log;
use poa_core::{opt, wardrop, Game};

fn sample_costs() -> Vec<CostFunction> {
    vec![
        CostFunction::identity(),
        CostFunction::Affine { a: 1.0, b: 2.0 },
        CostFunction::Monomial { coef: 3.0, degree: 2.5 },
        CostFunction::Polynomial { coefficients: vec![1.0, 0.0, 2.0, 1.0] },
        CostFunction::Constant { value: 2.0 },
        CostFunction::StepGeometric { a: 2.0 },
        CostFunction::StepGeometric { a: 3.0 },
        CostFunction::PwlSquare { a: 2.0 },
        CostFunction::PwlSquare { a: 3.0 },
        CostFunction::ExpOverX,
        CostFunction::StepExp { alpha: AlphaSeq::Factorial },
        CostFunction::Shifted { base: Box::new(CostFunction::Monomial { coef: 1.0, degree: 2.0 }), shift: 1.5 },
        CostFunction::AffineSaturating { a: 0.0, b: 1.0, h: 1.0 },
    ]
}

const GL_NODES: [f64; 5] =
    [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn gauss(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    r * GL_NODES.iter().zip(GL_WEIGHTS).map(|(&t, w)| w * f(c + r * t)).sum::<f64>()
}

/// Adaptive five-point Gauss-Legendre quadrature. Never samples the
/// interval endpoints, so pieces of a step function integrate exactly.
fn adaptive(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
    let whole = gauss(f, lo, hi);
    let mid = 0.5 * (lo + hi);
    let halves = gauss(f, lo, mid) + gauss(f, mid, hi);
    if depth == 0 || (whole - halves).abs() <= tol * halves.abs().max(1e-300) {
        halves
    } else {
        adaptive(f, lo, mid, tol, depth - 1) + adaptive(f, mid, hi, tol, depth - 1)
    }
}

fn integral(c: &CostFunction, x: f64) -> f64 {
    let mut cuts = vec![0.0];
    cuts.extend(c.breakpoints(0.0, x).into_iter().filter(|&b| b > 0.0 && b < x));
    if matches!(c, CostFunction::ExpOverX) && x > 1.0 {
        cuts.push(1.0);
    }
    cuts.push(x);
    cuts.sort_by(f64::total_cmp);
    let f = |t: f64| c.eval(t).unwrap();
    cuts.windows(2).map(|w| adaptive(&f, w[0], w[1], 1e-13, 40)).sum()
}

#[test]
fn primitive_matches_quadrature() {
    for c in sample_costs() {
        for x in [0.3, 1.0, 2.5, 7.0, 19.0] {
            let want = integral(&c, x);
            let got = c.primitive(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                "{}: ∫₀^{x} = {want}, primitive {got}",
                c.label()
            );
        }
    }
}

fn far_from_breaks(c: &CostFunction, x: f64) -> bool {
    let mut b = c.breakpoints(x / 2.0, 2.0 * x);
    if matches!(c, CostFunction::ExpOverX) {
        b.push(1.0);
    }
    b.iter().all(|&p| (p - x).abs() > 1e-3 * x)
}

#[test]
fn derivative_matches_central_difference() {
    for c in sample_costs() {
        for x in [0.37, 1.3, 2.9, 5.5, 11.1] {
            if !far_from_breaks(&c, x) {
                continue;
            }
            let h = 1e-5 * x;
            let fd = (c.eval(x + h).unwrap() - c.eval(x - h).unwrap()) / (2.0 * h);
            let d = c.derivative(x).unwrap();
            assert!((d - fd).abs() <= 1e-6 * fd.abs().max(1.0), "{} at {x}: derivative {d}, fd {fd}", c.label());
        }
    }
}

#[test]
fn generalized_inverse_matches_scan() {
    for c in sample_costs() {
        let top = 12.0;
        let n = 200_000;
        let grid: Vec<f64> = (0..=n).map(|i| top * i as f64 / n as f64).collect();
        let vals: Vec<f64> = grid.iter().map(|&x| c.eval(x).unwrap()).collect();
        let h = top / n as f64;
        for lambda in [0.5, 1.0, 2.0, 3.7, 8.0, 16.0, 40.0] {
            let (lo, hi) = c.generalized_inverse(lambda).unwrap();
            match vals.iter().position(|&v| v >= lambda) {
                Some(i) => {
                    let below = if i == 0 { 0.0 } else { grid[i - 1] };
                    assert!(
                        lo >= below - 1e-12 && lo <= grid[i] + 1e-12,
                        "{} x⁻({lambda}) = {lo}, scan ({below}, {}]",
                        c.label(),
                        grid[i]
                    );
                }
                None => assert!(lo >= top - h, "{} x⁻({lambda}) = {lo} but c < λ on [0, {top}]", c.label()),
            }
            if let Some(j) = vals.iter().rposition(|&v| v <= lambda) {
                if j < n {
                    assert!(hi >= grid[j] - 1e-12 && hi <= grid[j + 1] + 1e-12, "{} x⁺({lambda}) = {hi}", c.label());
                }
            } else {
                assert_eq!(hi, 0.0, "{} x⁺({lambda}) should be 0", c.label());
            }
        }
    }
}

fn social(g: &Game, x: &[f64]) -> f64 {
    g.costs.iter().zip(x).map(|(c, &v)| v * c.eval(v).unwrap()).sum()
}

fn two_link_games() -> Vec<(&'static str, Game, Vec<f64>)> {
    vec![
        ("pigou", instances::pigou(), vec![0.3, 1.0, 4.0]),
        ("step:2", instances::step(2.0).unwrap(), vec![5.0, 6.0, 7.0, 13.0, 40.0]),
        ("step:3", instances::step(3.0).unwrap(), vec![7.0, 12.5, 30.0]),
        ("pwl:2", instances::pwl(2.0).unwrap(), vec![3.0, 5.4, 11.0]),
        ("affine", instances::named("affine").unwrap(), vec![0.5, 3.0, 10.0]),
        ("polynomial", instances::named("polynomial").unwrap(), vec![0.5, 2.0, 9.0]),
    ]
}

#[test]
fn optimum_matches_dense_scan() {
    for (name, g, demands) in two_link_games() {
        for m in demands {
            let n = 1_000_000;
            let mut pts: Vec<f64> = (0..=n).map(|i| m * i as f64 / n as f64).collect();
            for b in g.costs[0].breakpoints(0.0, m) {
                pts.push(b);
            }
            for b in g.costs[1].breakpoints(0.0, m) {
                pts.push(m - b);
            }
            let scan = pts.iter().map(|&t| social(&g, &[t, m - t])).fold(f64::INFINITY, f64::min);
            let got = opt(&g, m).unwrap().cost.to_f64();
            assert!(got <= scan * (1.0 + 1e-12), "{name} M={m}: Opt {got} above scan {scan}");
            assert!(scan - got <= 1e-6 * scan, "{name} M={m}: Opt {got} far below scan {scan}");
        }
    }
}

/// Beckmann potential; `primitive` is checked against quadrature above.
fn potential(g: &Game, x: &[f64]) -> f64 {
    g.costs.iter().zip(x).map(|(c, &v)| c.primitive(v).unwrap()).sum()
}

#[test]
fn equilibrium_minimizes_potential() {
    for (name, g, demands) in two_link_games() {
        for m in demands {
            let eq = wardrop(&g, m).unwrap();
            let n = 20_000;
            let scan = (0..=n)
                .map(|i| {
                    let t = m * i as f64 / n as f64;
                    potential(&g, &[t, m - t])
                })
                .fold(f64::INFINITY, f64::min);
            let got = potential(&g, &eq.flow.path_flows);
            assert!(got <= scan * (1.0 + 1e-9), "{name} M={m}: potential {got} above scan {scan}");
        }
    }
}

/// Native f64 model of ExpOverX and the step-exponential cost with
/// α = (1, 3, 30), valid while all values stay finite.
mod tiny_exp {
    pub const ALPHA: [f64; 3] = [1.0, 3.0, 30.0];

    pub fn smooth(x: f64) -> f64 {
        if x < 1.0 {
            std::f64::consts::E
        } else {
            x.exp() / x
        }
    }

    pub fn step(y: f64) -> f64 {
        let a = ALPHA.iter().copied().find(|&a| a >= y).expect("y within the last term");
        smooth(a)
    }

    pub fn step_right(y: f64) -> f64 {
        let a = ALPHA.iter().copied().find(|&a| a > y).expect("y below the last term");
        smooth(a)
    }

    pub fn cost(m: f64, y: f64) -> f64 {
        (m - y) * smooth(m - y) + y * step(y)
    }

    /// Equilibria among grid splits and breakpoint splits; returns the
    /// social cost, which all equilibria share.
    pub fn equilibrium_cost(m: f64) -> f64 {
        let mut ys: Vec<f64> = (0..=100_000).map(|i| m * i as f64 / 100_000.0).collect();
        ys.extend(ALPHA.iter().copied().filter(|&a| a <= m));
        ys.extend(ALPHA.iter().map(|&a| m - a).filter(|&y| y >= 0.0));
        let mut found = None;
        for y in ys {
            let x = m - y;
            let (cx, cy) = (smooth(x), step(y));
            let (rx, ry) = (smooth(x), step_right(y));
            let tol = 1e-12 * cx.max(cy);
            let x_ok = x <= 0.0 || cx <= ry + tol;
            let y_ok = y <= 0.0 || cy <= rx + tol;
            if x_ok && y_ok {
                found = Some(cost(m, y));
                break;
            }
        }
        found.expect("an equilibrium on the candidate grid")
    }

    pub fn optimum_cost(m: f64) -> f64 {
        let n = 2_000_000;
        let mut ys: Vec<f64> = (0..=n).map(|i| m * i as f64 / n as f64).collect();
        ys.extend(ALPHA.iter().copied().filter(|&a| a <= m));
        ys.into_iter().map(|y| cost(m, y)).fold(f64::INFINITY, f64::min)
    }
}

#[test]
fn log_domain_matches_native_model() {
    let alpha = AlphaSeq::Explicit(tiny_exp::ALPHA.to_vec());
    for m in [2.2, 3.0, 3.9, 4.0, 4.5, 5.2, 6.0] {
        let weq = wardrop_parallel_log(&alpha, m).unwrap().cost.to_f64();
        let want = tiny_exp::equilibrium_cost(m);
        assert!((weq - want).abs() <= 1e-9 * want, "M={m}: WEq {weq}, native {want}");
        let opt = opt_parallel_exp_log(&alpha, m).unwrap().cost.to_f64();
        let want = tiny_exp::optimum_cost(m);
        assert!(opt <= want * (1.0 + 1e-12), "M={m}: Opt {opt} above native scan {want}");
        assert!(want - opt <= 1e-6 * want, "M={m}: Opt {opt} far below native scan {want}");
    }
}
