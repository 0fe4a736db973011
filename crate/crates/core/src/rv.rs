//! Regular-variation index estimation and closure checks.
//!
//! A positive Θ is β-regularly varying when Θ(ax)/Θ(x) → a^β. On a finite
//! grid this can only be observed as "consistent at probe scale": the
//! estimate carries the relative residual of the ratio at every grid point
//! and passes only if the residual at the top of the grid is within
//! tolerance and the residual profile does not grow until it is negligible.

use rayon::prelude::*;
use serde::Serialize;

use crate::costs::CostFunction;
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Residuals below `tol · CONVERGED` count as converged in the decay test.
const CONVERGED: f64 = 1e-3;

fn decays(profile: &[f64], tol: f64) -> bool {
    let floor = tol * CONVERGED;
    profile.windows(2).all(|w| w[1] <= w[0] || w[1] <= floor)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RvProbe {
    pub scales: Vec<f64>,
    pub grid: Vec<f64>,
    pub tol: f64,
}

impl Default for RvProbe {
    fn default() -> Self {
        RvProbe { scales: vec![2.0, 3.0, 10.0], grid: (4..=9).map(|j| 10f64.powi(j)).collect(), tol: 1e-3 }
    }
}

impl RvProbe {
    pub fn validate(&self) -> Result<()> {
        if self.scales.is_empty() || self.scales.iter().any(|a| !(*a > 0.0) || *a == 1.0) {
            return Err(Error::domain("scale factors must be positive and different from 1"));
        }
        if self.grid.len() < 2 || self.grid.windows(2).any(|w| !(w[0] < w[1])) || !(self.grid[0] > 0.0) {
            return Err(Error::domain("probe grid must be positive and strictly increasing"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        Ok(())
    }
}

/// Functions built from costs by the operations the closure checks need.
#[derive(Debug, Clone, PartialEq)]
pub enum RvFunction {
    Cost(CostFunction),
    /// x·Θ(x).
    Product(Box<RvFunction>),
    /// ∫₀ˣ c.
    Integral(CostFunction),
    /// Θ₁(Θ₂(x)).
    Compose(Box<RvFunction>, Box<RvFunction>),
    Sum(Box<RvFunction>, Box<RvFunction>),
    /// Numeric inverse Θ⁻¹(y) = inf{x : Θ(x) ≥ y}.
    Inverse(Box<RvFunction>),
}

impl RvFunction {
    pub fn cost(c: CostFunction) -> Self {
        RvFunction::Cost(c)
    }

    pub fn product(self) -> Self {
        RvFunction::Product(Box::new(self))
    }

    pub fn compose(self, inner: RvFunction) -> Self {
        RvFunction::Compose(Box::new(self), Box::new(inner))
    }

    pub fn sum(self, other: RvFunction) -> Self {
        RvFunction::Sum(Box::new(self), Box::new(other))
    }

    pub fn inverse(self) -> Self {
        RvFunction::Inverse(Box::new(self))
    }

    pub fn label(&self) -> String {
        match self {
            RvFunction::Cost(c) => c.label(),
            RvFunction::Product(f) => format!("x*({})", f.label()),
            RvFunction::Integral(c) => format!("int({})", c.label()),
            RvFunction::Compose(f, g) => format!("({})∘({})", f.label(), g.label()),
            RvFunction::Sum(f, g) => format!("({})+({})", f.label(), g.label()),
            RvFunction::Inverse(f) => format!("inv({})", f.label()),
        }
    }

    /// ln Θ(x).
    pub fn ln_eval(&self, x: f64) -> Result<f64> {
        match self {
            RvFunction::Cost(c) => Ok(c.eval_log(x)?.ln()),
            RvFunction::Product(f) => Ok(x.ln() + f.ln_eval(x)?),
            RvFunction::Integral(c) => Ok(c.primitive_log(x)?.ln()),
            RvFunction::Compose(f, g) => {
                let inner = g.ln_eval(x)?.exp();
                if !inner.is_finite() {
                    return Err(Error::Range { what: format!("inner value of {}", self.label()), x });
                }
                f.ln_eval(inner)
            }
            RvFunction::Sum(f, g) => Ok(crate::logvalue::log_sum_exp(f.ln_eval(x)?, g.ln_eval(x)?)),
            RvFunction::Inverse(f) => f.inverse_at(x).map(f64::ln),
        }
    }

    /// inf{x : Θ(x) ≥ y}.
    fn inverse_at(&self, y: f64) -> Result<f64> {
        if let RvFunction::Cost(c) = self {
            let (lo, _) = c.generalized_inverse(y)?;
            if !lo.is_finite() {
                return Err(Error::domain(format!("{} never reaches {y}", c.label())));
            }
            return Ok(lo);
        }
        let target = y.ln();
        let reaches = |x: f64| self.ln_eval(x).map(|v| v >= target).unwrap_or(true);
        let mut hi = 1.0;
        while !reaches(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::domain(format!("{} never reaches {y}", self.label())));
            }
        }
        Ok(bisect(0.0, hi, reaches).1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RvEstimate {
    pub function: String,
    pub beta_hat: f64,
    /// (x, max over scales of |Θ(ax)/Θ(x) / a^β̂ − 1|).
    pub residuals: Vec<(f64, f64)>,
    pub decays: bool,
    pub pass: bool,
}

impl RvEstimate {
    pub fn final_residual(&self) -> f64 {
        self.residuals.last().map_or(f64::INFINITY, |r| r.1)
    }

    /// The estimate, or an error when the probe does not support regular
    /// variation.
    pub fn require(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::NotRegularlyVarying { beta_hat: self.beta_hat, residual: self.final_residual() })
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Estimates β and the residual profile of Θ on the probe grid.
pub fn rv_index(theta: &RvFunction, probe: &RvProbe) -> Result<RvEstimate> {
    probe.validate()?;
    // ln Θ at x and every a·x, per grid point
    let logs = probe
        .grid
        .par_iter()
        .map(|&x| {
            let base = theta.ln_eval(x)?;
            if !base.is_finite() {
                return Err(Error::domain(format!("{} is not positive at {x}", theta.label())));
            }
            let scaled = probe.scales.iter().map(|&a| theta.ln_eval(a * x)).collect::<Result<Vec<_>>>()?;
            Ok((base, scaled))
        })
        .collect::<Result<Vec<_>>>()?;
    let (base, scaled) = logs.last().expect("grid is nonempty");
    let beta_hat = median(scaled.iter().zip(&probe.scales).map(|(l, &a)| (l - base) / a.ln()).collect());
    let residuals: Vec<(f64, f64)> = probe
        .grid
        .iter()
        .zip(&logs)
        .map(|(&x, (base, scaled))| {
            let r = scaled
                .iter()
                .zip(&probe.scales)
                .map(|(l, &a)| ((l - base) - beta_hat * a.ln()).exp_m1().abs())
                .fold(0.0, |acc: f64, v| if v.is_nan() { f64::INFINITY } else { acc.max(v) });
            (x, r)
        })
        .collect();
    let decays = decays(&residuals.iter().map(|r| r.1).collect::<Vec<_>>(), probe.tol);
    let last = residuals.last().map_or(f64::INFINITY, |r| r.1);
    Ok(RvEstimate { function: theta.label(), beta_hat, residuals, decays, pass: decays && last <= probe.tol })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub function: String,
    pub expected: f64,
    pub measured: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<RvEstimate>,
    pub pass: bool,
}

fn index_check(name: &str, f: &RvFunction, expected: f64, probe: &RvProbe) -> Result<CheckReport> {
    let e = rv_index(f, probe)?;
    let pass = e.pass && (e.beta_hat - expected).abs() <= probe.tol;
    Ok(CheckReport { name: name.into(), function: f.label(), expected, measured: e.beta_hat, pass, estimate: Some(e) })
}

/// The numeric inverse of a β-RV function with β > 0 is 1/β-RV.
pub fn check_inverse_rv(theta: &CostFunction, probe: &RvProbe) -> Result<CheckReport> {
    let f = RvFunction::Cost(theta.clone());
    let base = rv_index(&f, probe)?.require()?;
    if !(base.beta_hat > probe.tol) {
        return Err(Error::domain(format!("inverse check needs β > 0, got {}", base.beta_hat)));
    }
    index_check("inverse", &f.inverse(), 1.0 / base.beta_hat, probe)
}

/// Θ⁻¹(γΘ(t))/t → γ^{1/β}.
pub fn check_scaling_identity(theta: &CostFunction, gamma: f64, probe: &RvProbe) -> Result<CheckReport> {
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("γ must be positive, got {gamma}")));
    }
    let f = RvFunction::Cost(theta.clone());
    let base = rv_index(&f, probe)?.require()?;
    if !(base.beta_hat > probe.tol) {
        return Err(Error::domain(format!("scaling identity needs β > 0, got {}", base.beta_hat)));
    }
    let target = gamma.powf(1.0 / base.beta_hat);
    let values =
        probe.grid.iter().map(|&t| Ok(f.inverse_at(gamma * theta.eval(t)?)? / t)).collect::<Result<Vec<_>>>()?;
    let devs: Vec<f64> = values.iter().map(|v| (v / target - 1.0).abs()).collect();
    let decays = decays(&devs, probe.tol);
    let measured = *values.last().expect("grid is nonempty");
    Ok(CheckReport {
        name: format!("scaling(gamma={gamma})"),
        function: f.label(),
        expected: target,
        measured,
        estimate: None,
        pass: decays && devs.last().copied().unwrap_or(f64::INFINITY) <= probe.tol,
    })
}

/// x·Θ(x) and ∫₀ˣ Θ are both (1+β)-RV.
pub fn check_product_and_integral_rv(theta: &CostFunction, probe: &RvProbe) -> Result<(CheckReport, CheckReport)> {
    let base = rv_index(&RvFunction::Cost(theta.clone()), probe)?.require()?;
    let want = 1.0 + base.beta_hat;
    Ok((
        index_check("product", &RvFunction::Cost(theta.clone()).product(), want, probe)?,
        index_check("integral", &RvFunction::Integral(theta.clone()), want, probe)?,
    ))
}

/// Θ₁∘Θ₂ is β₁β₂-RV.
pub fn check_composition_rv(outer: &CostFunction, inner: &CostFunction, probe: &RvProbe) -> Result<CheckReport> {
    let b1 = rv_index(&RvFunction::Cost(outer.clone()), probe)?.require()?.beta_hat;
    let b2 = rv_index(&RvFunction::Cost(inner.clone()), probe)?.require()?.beta_hat;
    let f = RvFunction::Cost(outer.clone()).compose(RvFunction::Cost(inner.clone()));
    index_check("composition", &f, b1 * b2, probe)
}

/// Θ₁ + Θ₂ is β-RV when both are β-RV.
pub fn check_sum_rv(a: &CostFunction, b: &CostFunction, probe: &RvProbe) -> Result<CheckReport> {
    let b1 = rv_index(&RvFunction::Cost(a.clone()), probe)?.require()?.beta_hat;
    let b2 = rv_index(&RvFunction::Cost(b.clone()), probe)?.require()?.beta_hat;
    if (b1 - b2).abs() > probe.tol {
        return Err(Error::domain(format!("sum check needs equal indices, got {b1} and {b2}")));
    }
    let f = RvFunction::Cost(a.clone()).sum(RvFunction::Cost(b.clone()));
    index_check("sum", &f, b1, probe)
}

/// x, 2x, x², 3x²+x, x³ and a constant.
pub fn canonical_family() -> Vec<CostFunction> {
    vec![
        CostFunction::identity(),
        CostFunction::Affine { a: 0.0, b: 2.0 },
        CostFunction::Monomial { coef: 1.0, degree: 2.0 },
        CostFunction::Polynomial { coefficients: vec![0.0, 1.0, 3.0] },
        CostFunction::Monomial { coef: 1.0, degree: 3.0 },
        CostFunction::Constant { value: 5.0 },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    /// The detector run on ExpOverX; passes when it rejects.
    pub non_rv_detector: CheckReport,
    pub pass: bool,
}

/// Index, product, integral and (for β > 0) inverse and scaling checks
/// for one cost.
pub fn checks_for(c: &CostFunction, probe: &RvProbe) -> Result<Vec<CheckReport>> {
    let e = rv_index(&RvFunction::Cost(c.clone()), probe)?;
    let beta = e.beta_hat;
    let mut checks = vec![CheckReport {
        name: "index".into(),
        function: c.label(),
        expected: beta.round(),
        measured: beta,
        pass: e.pass && (beta - beta.round()).abs() <= probe.tol,
        estimate: Some(e.clone()),
    }];
    if !e.pass {
        return Ok(checks);
    }
    let (p, i) = check_product_and_integral_rv(c, probe)?;
    checks.push(p);
    checks.push(i);
    if beta > probe.tol {
        checks.push(check_inverse_rv(c, probe)?);
        for gamma in [1.0, 4.0, 9.0] {
            checks.push(check_scaling_identity(c, gamma, probe)?);
        }
    }
    Ok(checks)
}

/// Every applicable closure check over the canonical family, plus the
/// rejection of ExpOverX.
pub fn canonical_suite(probe: &RvProbe) -> Result<SuiteReport> {
    let fam = canonical_family();
    let mut checks = Vec::new();
    for c in &fam {
        checks.extend(checks_for(c, probe)?);
    }
    for outer in &fam {
        for inner in &fam {
            let bi = rv_index(&RvFunction::Cost(inner.clone()), probe)?.beta_hat;
            if bi > probe.tol {
                checks.push(check_composition_rv(outer, inner, probe)?);
            }
        }
    }
    for (i, a) in fam.iter().enumerate() {
        for b in &fam[i..] {
            let ba = rv_index(&RvFunction::Cost(a.clone()), probe)?.beta_hat;
            let bb = rv_index(&RvFunction::Cost(b.clone()), probe)?.beta_hat;
            if (ba - bb).abs() <= probe.tol {
                checks.push(check_sum_rv(a, b, probe)?);
            }
        }
    }
    let e = rv_index(&RvFunction::Cost(CostFunction::ExpOverX), probe)?;
    let non_rv_detector = CheckReport {
        name: "non-rv-detector".into(),
        function: e.function.clone(),
        expected: f64::INFINITY,
        measured: e.final_residual(),
        pass: !e.pass,
        estimate: Some(e),
    };
    let pass = checks.iter().all(|c| c.pass) && non_rv_detector.pass;
    Ok(SuiteReport { checks, non_rv_detector, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn probe() -> RvProbe {
        RvProbe::default()
    }

    #[test]
    fn monomial_index_is_exact() {
        let e = rv_index(&RvFunction::Cost(CostFunction::monomial(1.0, 2.0).unwrap()), &probe()).unwrap();
        assert!((e.beta_hat - 2.0).abs() < 1e-9);
        assert!(e.pass);
    }

    #[test]
    fn lower_order_terms_vanish() {
        let c = CostFunction::polynomial(vec![0.0, 1.0, 3.0]).unwrap();
        let e = rv_index(&RvFunction::Cost(c), &probe()).unwrap();
        assert!((e.beta_hat - 2.0).abs() < 1e-3);
        assert!(e.pass);
    }

    #[test]
    fn exponential_is_rejected() {
        let e = rv_index(&RvFunction::Cost(CostFunction::ExpOverX), &probe()).unwrap();
        assert!(!e.pass);
        assert!(matches!(e.require(), Err(Error::NotRegularlyVarying { .. })));
    }

    #[test]
    fn inverse_examples() {
        let r = check_inverse_rv(&CostFunction::monomial(1.0, 3.0).unwrap(), &probe()).unwrap();
        assert!(r.pass && (r.measured - 1.0 / 3.0).abs() < 1e-3);
        let r = check_inverse_rv(&CostFunction::affine(0.0, 2.0).unwrap(), &probe()).unwrap();
        assert!(r.pass && (r.measured - 1.0).abs() < 1e-6);
        let r = check_inverse_rv(&CostFunction::polynomial(vec![0.0, 1.0, 1.0]).unwrap(), &probe()).unwrap();
        assert!(r.pass && (r.measured - 0.5).abs() < 1e-3);
        assert!(check_inverse_rv(&CostFunction::constant(5.0).unwrap(), &probe()).is_err());
    }

    #[test]
    fn scaling_examples() {
        let sq = CostFunction::monomial(1.0, 2.0).unwrap();
        let r = check_scaling_identity(&sq, 4.0, &probe()).unwrap();
        assert!(r.pass && (r.measured - 2.0).abs() < 1e-3);
        let r = check_scaling_identity(&CostFunction::identity(), 9.0, &probe()).unwrap();
        assert!(r.pass && (r.measured - 9.0).abs() < 1e-6);
        let r = check_scaling_identity(&sq, 1.0, &probe()).unwrap();
        assert_eq!(r.measured, 1.0);
    }

    #[test]
    fn product_integral_composition_sum() {
        let (p, i) = check_product_and_integral_rv(&CostFunction::constant(5.0).unwrap(), &probe()).unwrap();
        assert!(p.pass && i.pass && (p.measured - 1.0).abs() < 1e-3);
        let c = check_composition_rv(
            &CostFunction::monomial(1.0, 2.0).unwrap(),
            &CostFunction::monomial(1.0, 3.0).unwrap(),
            &probe(),
        )
        .unwrap();
        assert!(c.pass && (c.measured - 6.0).abs() < 1e-2);
        let s = check_sum_rv(
            &CostFunction::monomial(1.0, 2.0).unwrap(),
            &CostFunction::polynomial(vec![0.0, 1.0, 1.0]).unwrap(),
            &probe(),
        )
        .unwrap();
        assert!(s.pass && (s.measured - 2.0).abs() < 1e-3);
    }
}
