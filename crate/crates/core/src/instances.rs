//! Named instances and recognition of the special two-link families.

use crate::costs::{AlphaSeq, CostFunction};
use crate::error::{Error, Result};
use crate::network::Game;

/// Two-link families that have exact optimum procedures.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// c₁(x) = x against StepGeometric(a).
    Step { a: f64 },
    /// c₁(x) = x² against PwlSquare(a).
    PwlSquare { a: f64 },
    /// ExpOverX against StepExp(α).
    Exp { alpha: AlphaSeq },
}

/// A recognised family plus the link order: `links[0]` carries the smooth
/// cost, `links[1]` the step or piecewise one.
#[derive(Debug, Clone, PartialEq)]
pub struct Recognized {
    pub family: Family,
    pub links: [usize; 2],
}

impl Recognized {
    /// Reorders `(smooth, special)` flows into the game's link order.
    pub fn to_game_order(&self, smooth: f64, special: f64) -> Vec<f64> {
        let mut v = vec![0.0; 2];
        v[self.links[0]] = smooth;
        v[self.links[1]] = special;
        v
    }
}

fn is_identity(c: &CostFunction) -> bool {
    match c {
        CostFunction::Affine { a, b } => *a == 0.0 && *b == 1.0,
        CostFunction::Monomial { coef, degree } => *coef == 1.0 && *degree == 1.0,
        CostFunction::Polynomial { coefficients } => coefficients.as_slice() == [0.0, 1.0],
        _ => false,
    }
}

fn is_square(c: &CostFunction) -> bool {
    match c {
        CostFunction::Monomial { coef, degree } => *coef == 1.0 && *degree == 2.0,
        CostFunction::Polynomial { coefficients } => coefficients.as_slice() == [0.0, 0.0, 1.0],
        _ => false,
    }
}

fn pair_family(smooth: &CostFunction, special: &CostFunction) -> Option<Family> {
    match special {
        CostFunction::StepGeometric { a } if is_identity(smooth) => Some(Family::Step { a: *a }),
        CostFunction::PwlSquare { a } if is_square(smooth) => Some(Family::PwlSquare { a: *a }),
        CostFunction::StepExp { alpha } if matches!(smooth, CostFunction::ExpOverX) => {
            Some(Family::Exp { alpha: alpha.clone() })
        }
        _ => None,
    }
}

/// Recognises the exact-procedure families on two parallel links.
pub fn recognize(game: &Game) -> Option<Recognized> {
    if !game.is_parallel() || game.costs.len() != 2 {
        return None;
    }
    let c = &game.costs;
    if let Some(family) = pair_family(&c[0], &c[1]) {
        return Some(Recognized { family, links: [0, 1] });
    }
    pair_family(&c[1], &c[0]).map(|family| Recognized { family, links: [1, 0] })
}

/// Period parameter for log-periodic sweeps, when the instance has one.
pub fn period_base(game: &Game) -> Option<f64> {
    match recognize(game)?.family {
        Family::Step { a } | Family::PwlSquare { a } => Some(a),
        Family::Exp { .. } => None,
    }
}

pub fn pigou() -> Game {
    Game::parallel(vec![CostFunction::identity(), CostFunction::Constant { value: 1.0 }]).expect("valid instance")
}

pub fn step(a: f64) -> Result<Game> {
    Game::parallel(vec![CostFunction::identity(), CostFunction::step_geometric(a)?])
}

pub fn pwl(a: f64) -> Result<Game> {
    Game::parallel(vec![CostFunction::monomial(1.0, 2.0)?, CostFunction::pwl_square(a)?])
}

pub fn exp(alpha: AlphaSeq) -> Result<Game> {
    Game::parallel(vec![CostFunction::ExpOverX, CostFunction::step_exp(alpha)?])
}

/// Six instances whose price of anarchy tends to one, keyed by name.
pub fn vanishing_poa_instances() -> Vec<(&'static str, Game)> {
    let p = |v: Vec<CostFunction>| Game::parallel(v).expect("valid instance");
    let x = CostFunction::identity;
    vec![
        ("bounded-path", pigou()),
        (
            "shifted-affine",
            p(vec![
                CostFunction::Shifted { base: Box::new(x()), shift: 1.0 },
                CostFunction::Shifted { base: Box::new(CostFunction::Affine { a: 0.0, b: 2.0 }), shift: 3.0 },
            ]),
        ),
        ("affine", p(vec![CostFunction::Affine { a: 1.0, b: 1.0 }, CostFunction::Affine { a: 2.0, b: 3.0 }])),
        (
            "polynomial",
            p(vec![
                CostFunction::Polynomial { coefficients: vec![0.0, 1.0, 1.0] },
                CostFunction::Monomial { coef: 3.0, degree: 2.0 },
            ]),
        ),
        (
            "derivative-limit",
            p(vec![
                CostFunction::AffineSaturating { a: 0.0, b: 1.0, h: 1.0 },
                CostFunction::Polynomial { coefficients: vec![0.0, 2.0, 1.0] },
            ]),
        ),
        (
            "affine-sandwich",
            p(vec![CostFunction::AffineSaturating { a: 0.0, b: 1.0, h: 1.0 }, CostFunction::Affine { a: 1.0, b: 2.0 }]),
        ),
    ]
}

/// Parses `pigou`, `step:A`, `pwl:A`, `exp:factorial`, `exp:super:B`, or one
/// of the vanishing-PoA instance names.
pub fn named(spec: &str) -> Result<Game> {
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?} in instance {spec:?}")));
    match spec.split_once(':') {
        None if spec == "pigou" => Ok(pigou()),
        Some(("step", a)) => step(num(a)?),
        Some(("pwl", a)) => pwl(num(a)?),
        Some(("exp", "factorial")) => exp(AlphaSeq::Factorial),
        Some(("exp", rest)) if rest.starts_with("super:") => {
            exp(AlphaSeq::SuperGeometric { base: num(&rest["super:".len()..])? })
        }
        _ => vanishing_poa_instances()
            .into_iter()
            .find(|(n, _)| *n == spec)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::Parse(format!("unknown instance {spec:?}"))),
    }
}
