//! Closed families of monotone edge costs.
//!
//! Every family supports evaluation (also in the log domain), the
//! primitive, the set-valued generalized inverse and the limit at
//! infinity. Smooth families additionally expose the derivative and the
//! marginal cost `c(x) + x c'(x)`; the step families report kinks and
//! jumps explicitly instead.

mod alpha;
pub(crate) mod expint;
mod spec;

pub use alpha::AlphaSeq;
pub use spec::{cost_from_json, cost_to_json};

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::numeric::{inf_ge, sup_le};

/// A monotone edge latency drawn from one of the closed families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CostFunction {
    /// a + b·x
    Affine {
        a: f64,
        b: f64,
    },
    /// coef·x^degree
    Monomial {
        coef: f64,
        degree: f64,
    },
    /// Σ coefficients[i]·x^i
    Polynomial {
        coefficients: Vec<f64>,
    },
    Constant {
        value: f64,
    },
    /// a^k on (a^{k-1}, a^k], k ∈ ℤ; 0 at the origin.
    StepGeometric {
        a: f64,
    },
    /// Piecewise-linear interpolation of x² at the knots a^k, k ∈ ℤ.
    PwlSquare {
        a: f64,
    },
    /// e for x < 1, e^x / x for x ≥ 1.
    ExpOverX,
    /// ExpOverX(α_k) on (α_{k-1}, α_k].
    StepExp {
        alpha: AlphaSeq,
    },
    /// shift + base(x)
    Shifted {
        base: Box<CostFunction>,
        shift: f64,
    },
    /// a + b·x + h·x/(1+x), sandwiched between a + b·x and a + h + b·x.
    AffineSaturating {
        a: f64,
        b: f64,
        h: f64,
    },
}

/// Marginal cost: a value, or the subdifferential of x·c(x) at a kink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Marginal {
    Value(f64),
    Interval(f64, f64),
}

impl Marginal {
    pub fn lower(&self) -> f64 {
        match *self {
            Marginal::Value(v) | Marginal::Interval(v, _) => v,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            Marginal::Value(v) | Marginal::Interval(_, v) => v,
        }
    }
}

/// Integer power of the step ratio; every knot is computed through here
/// so that knot tests are exact comparisons.
pub(crate) fn apow(a: f64, k: i32) -> f64 {
    a.powi(k)
}

/// The k with a^{k-1} < x ≤ a^k, for x > 0.
pub(crate) fn knot_index(a: f64, x: f64) -> i32 {
    debug_assert!(x > 0.0 && a > 1.0);
    let mut k = (x.ln() / a.ln()).ceil() as i32;
    while apow(a, k - 1) >= x {
        k -= 1;
    }
    while apow(a, k) < x {
        k += 1;
    }
    k
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("cost evaluated at x = {x}; need finite x >= 0")))
    }
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite and >= 0, got {v}")))
    }
}

fn finite(what: &str, x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range { what: what.to_string(), x })
    }
}

fn exp_over_x(x: f64) -> Result<f64> {
    if x < 1.0 {
        Ok(E)
    } else {
        finite("exp_over_x", x, x.exp() / x)
    }
}

fn ln_exp_over_x(x: f64) -> f64 {
    if x < 1.0 {
        1.0
    } else {
        x - x.ln()
    }
}

impl CostFunction {
    pub fn affine(a: f64, b: f64) -> Result<Self> {
        Self::Affine { a, b }.validated()
    }

    pub fn identity() -> Self {
        Self::Affine { a: 0.0, b: 1.0 }
    }

    pub fn monomial(coef: f64, degree: f64) -> Result<Self> {
        Self::Monomial { coef, degree }.validated()
    }

    pub fn polynomial(coefficients: Vec<f64>) -> Result<Self> {
        Self::Polynomial { coefficients }.validated()
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::Constant { value }.validated()
    }

    pub fn step_geometric(a: f64) -> Result<Self> {
        Self::StepGeometric { a }.validated()
    }

    pub fn pwl_square(a: f64) -> Result<Self> {
        Self::PwlSquare { a }.validated()
    }

    pub fn step_exp(alpha: AlphaSeq) -> Result<Self> {
        Self::StepExp { alpha }.validated()
    }

    pub fn shifted(base: CostFunction, shift: f64) -> Result<Self> {
        Self::Shifted { base: Box::new(base), shift }.validated()
    }

    pub fn affine_saturating(a: f64, b: f64, h: f64) -> Result<Self> {
        Self::AffineSaturating { a, b, h }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Parameter checks; constructors and the JSON reader call this.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Affine { a, b } => {
                nonneg("affine a", *a)?;
                nonneg("affine b", *b)
            }
            Self::Monomial { coef, degree } => {
                if !(*coef > 0.0 && coef.is_finite() && *degree > 0.0 && degree.is_finite()) {
                    return Err(Error::domain("monomial needs coef > 0 and degree > 0"));
                }
                Ok(())
            }
            Self::Polynomial { coefficients } => {
                if coefficients.is_empty() {
                    return Err(Error::domain("polynomial needs at least one coefficient"));
                }
                coefficients.iter().try_for_each(|&c| nonneg("polynomial coefficient", c))
            }
            Self::Constant { value } => nonneg("constant value", *value),
            Self::StepGeometric { a } | Self::PwlSquare { a } => {
                if *a >= 2.0 && a.is_finite() {
                    Ok(())
                } else {
                    Err(Error::domain(format!("step ratio a must satisfy a >= 2, got {a}")))
                }
            }
            Self::ExpOverX => Ok(()),
            Self::StepExp { alpha } => alpha.validate(),
            Self::Shifted { base, shift } => {
                nonneg("shift", *shift)?;
                base.validate()
            }
            Self::AffineSaturating { a, b, h } => {
                nonneg("a", *a)?;
                nonneg("b", *b)?;
                nonneg("h", *h)
            }
        }
    }

    /// Short human-readable description.
    pub fn label(&self) -> String {
        match self {
            Self::Affine { a, b } => format!("{a}+{b}x"),
            Self::Monomial { coef, degree } => format!("{coef}x^{degree}"),
            Self::Polynomial { coefficients } => format!("poly{coefficients:?}"),
            Self::Constant { value } => format!("const({value})"),
            Self::StepGeometric { a } => format!("step_geometric(a={a})"),
            Self::PwlSquare { a } => format!("pwl_square(a={a})"),
            Self::ExpOverX => "exp_over_x".into(),
            Self::StepExp { alpha } => format!("step_exp({})", alpha.label()),
            Self::Shifted { base, shift } => format!("{shift}+{}", base.label()),
            Self::AffineSaturating { a, b, h } => format!("{a}+{b}x+{h}x/(1+x)"),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(match self {
            Self::Affine { a, b } => a + b * x,
            Self::Monomial { coef, degree } => finite("monomial", x, coef * x.powf(*degree))?,
            Self::Polynomial { coefficients } => {
                finite("polynomial", x, coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c))?
            }
            Self::Constant { value } => *value,
            Self::StepGeometric { a } => {
                if x == 0.0 {
                    0.0
                } else {
                    apow(*a, knot_index(*a, x))
                }
            }
            Self::PwlSquare { a } => {
                if x == 0.0 {
                    0.0
                } else {
                    let k = knot_index(*a, x);
                    let hi = apow(*a, k);
                    if x == hi {
                        hi * hi
                    } else {
                        let lo = apow(*a, k - 1);
                        (lo + hi) * x - lo * hi
                    }
                }
            }
            Self::ExpOverX => exp_over_x(x)?,
            Self::StepExp { alpha } => {
                let k = alpha.cell(x)?;
                exp_over_x(alpha.get(k).expect("cell index is in range"))?
            }
            Self::Shifted { base, shift } => shift + base.eval(x)?,
            Self::AffineSaturating { a, b, h } => a + b * x + h * x / (1.0 + x),
        })
    }

    /// Right limit c(x+): what an infinitesimal extra unit of flow pays.
    /// Equals `eval` except at the upward jumps of the step families.
    pub fn eval_right(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        match self {
            Self::StepGeometric { a } if x > 0.0 => {
                let k = knot_index(*a, x);
                if apow(*a, k) == x {
                    Ok(apow(*a, k + 1))
                } else {
                    self.eval(x)
                }
            }
            Self::StepExp { alpha } if x > 0.0 => {
                let k = alpha.cell(x)?;
                if alpha.get(k) == Some(x) {
                    let next = alpha
                        .get(k + 1)
                        .ok_or_else(|| Error::domain("right limit requested at the last alpha breakpoint"))?;
                    exp_over_x(next)
                } else {
                    self.eval(x)
                }
            }
            Self::Shifted { base, shift } => Ok(shift + base.eval_right(x)?),
            _ => self.eval(x),
        }
    }

    /// ln c(x), computed without forming e^x for the exponential families.
    pub fn eval_log(&self, x: f64) -> Result<LogValue> {
        check_x(x)?;
        Ok(match self {
            Self::ExpOverX => LogValue::from_ln(ln_exp_over_x(x)),
            Self::StepExp { alpha } => {
                let k = alpha.cell(x)?;
                LogValue::from_ln(ln_exp_over_x(alpha.get(k).expect("cell index is in range")))
            }
            Self::Monomial { coef, degree } => {
                if x == 0.0 {
                    LogValue::ZERO
                } else {
                    LogValue::from_ln(coef.ln() + degree * x.ln())
                }
            }
            Self::Polynomial { coefficients } => {
                if x == 0.0 {
                    LogValue::from_f64(coefficients[0])
                } else {
                    let lx = x.ln();
                    coefficients
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c > 0.0)
                        .map(|(i, c)| LogValue::from_ln(c.ln() + i as f64 * lx))
                        .fold(LogValue::ZERO, |acc, t| acc + t)
                }
            }
            Self::Shifted { base, shift } => LogValue::from_f64(*shift) + base.eval_log(x)?,
            Self::Affine { a, b } => LogValue::from_f64(*a) + LogValue::from_f64(*b).scale(x),
            _ => LogValue::from_f64(self.eval(x)?),
        })
    }

    /// Right limit in the log domain.
    pub fn eval_right_log(&self, x: f64) -> Result<LogValue> {
        match self {
            Self::StepExp { alpha } if x > 0.0 => {
                let k = alpha.cell(x)?;
                let at = if alpha.get(k) == Some(x) { k + 1 } else { k };
                let a =
                    alpha.get(at).ok_or_else(|| Error::domain("right limit requested at the last alpha breakpoint"))?;
                Ok(LogValue::from_ln(ln_exp_over_x(a)))
            }
            Self::Shifted { base, shift } => Ok(LogValue::from_f64(*shift) + base.eval_right_log(x)?),
            Self::ExpOverX => self.eval_log(x),
            _ => Ok(LogValue::from_f64(self.eval_right(x)?)),
        }
    }

    /// Analytic derivative. Points where the one-sided derivatives differ
    /// (or where a step jumps) return [`Error::Kink`].
    pub fn derivative(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        match self {
            Self::Affine { b, .. } => Ok(*b),
            Self::Monomial { coef, degree } => {
                if x == 0.0 && *degree < 1.0 {
                    Err(Error::Kink { x, left: f64::NAN, right: f64::INFINITY })
                } else if x == 0.0 && *degree == 1.0 {
                    Ok(*coef)
                } else if x == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(coef * degree * x.powf(degree - 1.0))
                }
            }
            Self::Polynomial { coefficients } => {
                Ok(coefficients.iter().enumerate().skip(1).rev().fold(0.0, |acc, (i, c)| acc * x + i as f64 * c))
            }
            Self::Constant { .. } => Ok(0.0),
            Self::StepGeometric { a } => {
                if x > 0.0 && apow(*a, knot_index(*a, x)) == x {
                    Err(Error::Kink { x, left: 0.0, right: f64::INFINITY })
                } else {
                    Ok(0.0)
                }
            }
            Self::StepExp { alpha } => {
                let k = alpha.cell(x)?;
                if x > 0.0 && alpha.get(k) == Some(x) {
                    Err(Error::Kink { x, left: 0.0, right: f64::INFINITY })
                } else {
                    Ok(0.0)
                }
            }
            Self::PwlSquare { a } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let k = knot_index(*a, x);
                let lo = apow(*a, k - 1);
                let hi = apow(*a, k);
                if x == hi {
                    Err(Error::Kink { x, left: lo + hi, right: hi + apow(*a, k + 1) })
                } else {
                    Ok(lo + hi)
                }
            }
            // (e^x/x)' = e^x (x-1)/x², which vanishes at x = 1 from both sides.
            Self::ExpOverX => {
                if x < 1.0 {
                    Ok(0.0)
                } else {
                    finite("exp_over_x derivative", x, x.exp() * (x - 1.0) / (x * x))
                }
            }
            Self::Shifted { base, .. } => base.derivative(x),
            Self::AffineSaturating { b, h, .. } => Ok(b + h / ((1.0 + x) * (1.0 + x))),
        }
    }

    /// Marginal social cost d/dx [x·c(x)] = c(x) + x·c'(x).
    pub fn marginal(&self, x: f64) -> Result<Marginal> {
        check_x(x)?;
        match self {
            Self::StepGeometric { .. } | Self::StepExp { .. } => {
                Err(Error::unsupported("marginal cost is undefined for step costs; use interval decomposition"))
            }
            Self::Affine { a, b } => Ok(Marginal::Value(a + 2.0 * b * x)),
            Self::Monomial { coef, degree } => {
                Ok(Marginal::Value(finite("monomial marginal", x, (degree + 1.0) * coef * x.powf(*degree))?))
            }
            Self::PwlSquare { a } => {
                if x == 0.0 {
                    return Ok(Marginal::Value(0.0));
                }
                let k = knot_index(*a, x);
                let lo = apow(*a, k - 1);
                let hi = apow(*a, k);
                // h(y) = (lo+hi) y² - lo·hi·y on [lo, hi]
                let left = 2.0 * (lo + hi) * x - lo * hi;
                if x == hi {
                    let next = apow(*a, k + 1);
                    let right = 2.0 * (hi + next) * x - hi * next;
                    Ok(Marginal::Interval(left, right))
                } else {
                    Ok(Marginal::Value(left))
                }
            }
            // x·c(x) is e·x below 1 and e^x above; its derivative is continuous.
            Self::ExpOverX => {
                if x < 1.0 {
                    Ok(Marginal::Value(E))
                } else {
                    Ok(Marginal::Value(finite("exp_over_x marginal", x, x.exp())?))
                }
            }
            Self::Shifted { base, shift } => Ok(match base.marginal(x)? {
                Marginal::Value(v) => Marginal::Value(v + shift),
                Marginal::Interval(l, r) => Marginal::Interval(l + shift, r + shift),
            }),
            _ => Ok(Marginal::Value(self.eval(x)? + x * self.derivative(x)?)),
        }
    }

    /// ∫₀ˣ c(s) ds.
    pub fn primitive(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(match self {
            Self::Affine { a, b } => a * x + 0.5 * b * x * x,
            Self::Monomial { coef, degree } => {
                finite("monomial primitive", x, coef * x.powf(degree + 1.0) / (degree + 1.0))?
            }
            Self::Polynomial { coefficients } => finite(
                "polynomial primitive",
                x,
                coefficients.iter().enumerate().rev().fold(0.0, |acc, (i, c)| acc * x + c / (i as f64 + 1.0)) * x,
            )?,
            Self::Constant { value } => value * x,
            Self::StepGeometric { a } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let a = *a;
                let m = knot_index(a, x);
                let base = apow(a, m - 1);
                // Σ_{k ≤ m-1} a^k (a^k - a^{k-1}) = a^{2(m-1)} · a/(a+1)
                base * base * a / (a + 1.0) + apow(a, m) * (x - base)
            }
            Self::PwlSquare { a } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let a = *a;
                let m = knot_index(a, x);
                let lo = apow(a, m - 1);
                let hi = apow(a, m);
                // chord area over [a^{k-1}, a^k] is a^{3k}(1-1/a)(1+1/a²)/2; sum k ≤ m-1
                let tail = lo.powi(3) * (1.0 - 1.0 / a) * (1.0 + 1.0 / (a * a)) * 0.5 / (1.0 - 1.0 / (a * a * a));
                let slope = lo + hi;
                let partial = 0.5 * slope * (x * x - lo * lo) - lo * hi * (x - lo);
                tail + partial
            }
            Self::ExpOverX => {
                if x < 1.0 {
                    E * x
                } else {
                    finite("exp_over_x primitive", x, E + expint::ei(x) - expint::ei(1.0))?
                }
            }
            Self::StepExp { alpha } => {
                let m = alpha.cell(x)?;
                let mut acc = 0.0;
                for k in 1..m {
                    let lo = alpha.get(k - 1).unwrap();
                    let hi = alpha.get(k).unwrap();
                    acc += (hi - lo) * exp_over_x(hi)?;
                }
                let lo = alpha.get(m - 1).unwrap();
                let hi = alpha.get(m).unwrap();
                finite("step_exp primitive", x, acc + (x - lo) * exp_over_x(hi)?)?
            }
            Self::Shifted { base, shift } => shift * x + base.primitive(x)?,
            Self::AffineSaturating { a, b, h } => a * x + 0.5 * b * x * x + h * (x - x.ln_1p()),
        })
    }

    /// Primitive in the log domain; only the exponential family needs it.
    pub fn primitive_log(&self, x: f64) -> Result<LogValue> {
        check_x(x)?;
        match self {
            Self::ExpOverX if x > 1.0 => {
                let rest = E - expint::ei(1.0);
                Ok(LogValue::from_ln(expint::ln_ei(x)) + LogValue::from_f64(rest))
            }
            _ => Ok(LogValue::from_f64(self.primitive(x)?)),
        }
    }

    /// The closed interval [x⁻, x⁺] with x⁻ = inf{x : c(x) ≥ λ} and
    /// x⁺ = sup{x : c(x) ≤ λ} (sup ∅ = 0). Either end may be `+inf`.
    pub fn generalized_inverse(&self, lambda: f64) -> Result<(f64, f64)> {
        if !(lambda >= 0.0) {
            return Err(Error::domain(format!("generalized inverse at negative level {lambda}")));
        }
        Ok(match self {
            Self::Affine { a, b } => {
                if lambda < *a {
                    (0.0, 0.0)
                } else if *b == 0.0 {
                    if lambda == *a {
                        (0.0, f64::INFINITY)
                    } else {
                        (f64::INFINITY, f64::INFINITY)
                    }
                } else {
                    let x = (lambda - a) / b;
                    (x, x)
                }
            }
            Self::Constant { value } => {
                if lambda < *value {
                    (0.0, 0.0)
                } else if lambda == *value {
                    (0.0, f64::INFINITY)
                } else {
                    (f64::INFINITY, f64::INFINITY)
                }
            }
            Self::Monomial { coef, degree } => {
                let r = lambda / coef;
                let x = if *degree == 1.0 {
                    r
                } else if *degree == 2.0 {
                    r.sqrt()
                } else if *degree == 3.0 {
                    r.cbrt()
                } else {
                    r.powf(1.0 / degree)
                };
                (x, x)
            }
            Self::Polynomial { coefficients } => {
                let c0 = coefficients[0];
                if coefficients.iter().skip(1).all(|&c| c == 0.0) {
                    return Self::Constant { value: c0 }.generalized_inverse(lambda);
                }
                if lambda <= c0 {
                    (0.0, 0.0)
                } else {
                    let x = inf_ge(|x| self.eval(x).unwrap_or(f64::INFINITY), lambda);
                    (x, x)
                }
            }
            Self::StepGeometric { a } => {
                if lambda == 0.0 {
                    (0.0, 0.0)
                } else {
                    let m = knot_index(*a, lambda);
                    let top = apow(*a, m);
                    let below = apow(*a, m - 1);
                    (below, if top == lambda { top } else { below })
                }
            }
            Self::PwlSquare { a } => {
                if lambda == 0.0 {
                    (0.0, 0.0)
                } else {
                    let m = knot_index(*a, lambda.sqrt());
                    let hi = apow(*a, m);
                    let lo = apow(*a, m - 1);
                    let x = if hi * hi == lambda { hi } else { ((lambda + lo * hi) / (lo + hi)).clamp(lo, hi) };
                    (x, x)
                }
            }
            Self::ExpOverX => {
                if lambda < E {
                    (0.0, 0.0)
                } else if lambda == E {
                    (0.0, 1.0)
                } else {
                    let x = crate::numeric::bisect(1.0, 2.0 * lambda.ln() + 2.0, |x| ln_exp_over_x(x) >= lambda.ln()).1;
                    (x, x)
                }
            }
            Self::StepExp { .. } => return self.generalized_inverse_log(LogValue::from_f64(lambda)),
            Self::Shifted { base, shift } => {
                if lambda < *shift {
                    (0.0, 0.0)
                } else {
                    base.generalized_inverse(lambda - shift)?
                }
            }
            Self::AffineSaturating { .. } => {
                let f = |x: f64| self.eval(x).unwrap_or(f64::INFINITY);
                let x = inf_ge(f, lambda);
                if x == 0.0 || x.is_infinite() {
                    (x, sup_le(f, lambda))
                } else {
                    (x, x)
                }
            }
        })
    }

    /// Generalized inverse at a level given in the log domain. Exact for the
    /// exponential families; other families convert the level to f64.
    pub fn generalized_inverse_log(&self, level: LogValue) -> Result<(f64, f64)> {
        match self {
            Self::StepExp { alpha } => {
                if level.is_zero() {
                    return Ok((0.0, 0.0));
                }
                let l = level.ln();
                let mut lo_end = f64::INFINITY;
                let mut hi_end = 0.0;
                let mut k = 1;
                while let Some(a_k) = alpha.get(k) {
                    let v = ln_exp_over_x(a_k);
                    if v <= l {
                        hi_end = a_k;
                    }
                    if v >= l && lo_end.is_infinite() {
                        lo_end = alpha.get(k - 1).unwrap();
                    }
                    if v > l {
                        break;
                    }
                    k += 1;
                }
                Ok((lo_end, hi_end))
            }
            Self::ExpOverX => {
                if level.ln() < 1.0 {
                    Ok((0.0, 0.0))
                } else if level.ln() == 1.0 {
                    Ok((0.0, 1.0))
                } else {
                    let l = level.ln();
                    let x = crate::numeric::bisect(1.0, 2.0 * l + 2.0, |x| ln_exp_over_x(x) >= l).1;
                    Ok((x, x))
                }
            }
            _ => match level.to_f64_checked() {
                Some(v) => self.generalized_inverse(v),
                None => Err(Error::Range { what: self.label(), x: level.ln() }),
            },
        }
    }

    /// lim_{x→∞} c(x).
    pub fn asymptotic_value(&self) -> f64 {
        match self {
            Self::Affine { a, b } => {
                if *b > 0.0 {
                    f64::INFINITY
                } else {
                    *a
                }
            }
            Self::Polynomial { coefficients } => {
                if coefficients.iter().skip(1).any(|&c| c > 0.0) {
                    f64::INFINITY
                } else {
                    coefficients[0]
                }
            }
            Self::Constant { value } => *value,
            Self::Shifted { base, shift } => shift + base.asymptotic_value(),
            Self::AffineSaturating { a, b, h } => {
                if *b > 0.0 {
                    f64::INFINITY
                } else {
                    a + h
                }
            }
            _ => f64::INFINITY,
        }
    }

    pub fn is_continuous(&self) -> bool {
        match self {
            Self::StepGeometric { .. } | Self::StepExp { .. } => false,
            Self::Shifted { base, .. } => base.is_continuous(),
            _ => true,
        }
    }

    /// True when the marginal cost is single-valued and nondecreasing
    /// everywhere, so the optimum can be found by equalizing marginals.
    pub fn has_smooth_marginal(&self) -> bool {
        match self {
            Self::StepGeometric { .. } | Self::StepExp { .. } | Self::PwlSquare { .. } => false,
            Self::Shifted { base, .. } => base.has_smooth_marginal(),
            _ => true,
        }
    }

    /// True when the family can overflow f64 at moderate arguments.
    pub fn needs_log_domain(&self) -> bool {
        match self {
            Self::ExpOverX | Self::StepExp { .. } => true,
            Self::Shifted { base, .. } => base.needs_log_domain(),
            _ => false,
        }
    }

    /// Jump and kink locations inside [lo, hi].
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let knots = |a: f64| {
            let mut v = Vec::new();
            if hi <= 0.0 || hi < lo {
                return v;
            }
            let start = if lo > 0.0 { knot_index(a, lo) } else { knot_index(a, hi) - 60 };
            let mut k = start;
            loop {
                let p = apow(a, k);
                if p > hi {
                    break;
                }
                if p >= lo {
                    v.push(p);
                }
                k += 1;
            }
            v
        };
        match self {
            Self::StepGeometric { a } | Self::PwlSquare { a } => knots(*a),
            Self::StepExp { alpha } => alpha.points_in(lo, hi),
            Self::Shifted { base, .. } => base.breakpoints(lo, hi),
            _ => Vec::new(),
        }
    }

    /// Inverse of the marginal cost as a closed interval (see
    /// [`generalized_inverse`](Self::generalized_inverse)).
    pub fn marginal_inverse(&self, mu: f64) -> Result<(f64, f64)> {
        if !self.has_smooth_marginal() {
            return Err(Error::unsupported(format!("marginal inverse for {} (non-smooth cost)", self.label())));
        }
        match self {
            Self::Affine { a, b } => Self::Affine { a: *a, b: 2.0 * b }.generalized_inverse(mu),
            Self::Constant { .. } => self.generalized_inverse(mu),
            Self::Monomial { coef, degree } => {
                Self::Monomial { coef: coef * (degree + 1.0), degree: *degree }.generalized_inverse(mu)
            }
            Self::ExpOverX => {
                if mu < E {
                    Ok((0.0, 0.0))
                } else if mu == E {
                    Ok((0.0, 1.0))
                } else {
                    let x = mu.ln();
                    Ok((x, x))
                }
            }
            _ => {
                let f = |x: f64| self.marginal(x).map(|m| m.lower()).unwrap_or(f64::INFINITY);
                Ok((inf_ge(f, mu), sup_le(f, mu)))
            }
        }
    }
}
