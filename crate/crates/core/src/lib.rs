//! Wardrop equilibria, social optima and price-of-anarchy curves for
//! nonatomic routing games on single-commodity networks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod costs;
pub(crate) mod descent;
pub mod equilibrium;
pub mod error;
pub mod instances;
pub mod logvalue;
pub mod network;
pub(crate) mod numeric;
pub mod optimum;
pub mod rv;

pub use asymptotics::{poa, poa_sweep, PoaCurve, PoaSample};
pub use costs::{AlphaSeq, CostFunction, Marginal};
pub use equilibrium::{verify_equilibrium, wardrop, EquilibriumSolution};
pub use error::{Error, Result};
pub use logvalue::{LogValue, Magnitude};
pub use network::{build_parallel, FlowProfile, Game, Network};
pub use numeric::rel_diff;
pub use optimum::{opt, OptimumSolution};
