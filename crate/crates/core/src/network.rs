//! Single source–sink networks, path enumeration and flow bookkeeping.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::costs::{cost_from_json, cost_to_json, CostFunction};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated source–sink paths.
pub const DEFAULT_PATH_CAP: usize = 100_000;

/// Relative tolerance for Σ x_P = M.
pub const FEASIBILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// Directed multigraph with a source, a sink and every simple
/// source–sink path, enumerated once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    source: usize,
    sink: usize,
    paths: Vec<Vec<usize>>,
}

impl Network {
    /// Builds a network from vertex names and `(id, tail, head)` triples.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        source: &str,
        sink: &str,
        path_cap: usize,
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Construction("duplicate vertex id".into()));
        }
        let lookup =
            |v: &str| index.get(v).copied().ok_or_else(|| Error::Construction(format!("unknown vertex {v:?}")));
        let mut seen = HashMap::new();
        let mut es = Vec::with_capacity(edges.len());
        for (id, tail, head) in edges {
            if seen.insert(id.clone(), ()).is_some() {
                return Err(Error::Construction(format!("duplicate edge id {id:?}")));
            }
            es.push(Edge { tail: lookup(&tail)?, head: lookup(&head)?, id });
        }
        let source = lookup(source)?;
        let sink = lookup(sink)?;
        if source == sink {
            return Err(Error::Construction("source and sink coincide".into()));
        }
        let paths = enumerate_paths(vertices.len(), &es, source, sink, path_cap)?;
        if paths.is_empty() {
            return Err(Error::Construction("no path from source to sink".into()));
        }
        Ok(Network { vertices, edges: es, source, sink, paths })
    }

    /// Two vertices `s`, `t` joined by `n` parallel edges `e1..en`.
    pub fn parallel(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction("parallel network needs at least one edge".into()));
        }
        let edges = (1..=n).map(|i| (format!("e{i}"), "s".to_string(), "t".to_string())).collect();
        Self::new(vec!["s".into(), "t".into()], edges, "s", "t", DEFAULT_PATH_CAP)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn source(&self) -> &str {
        &self.vertices[self.source]
    }

    pub fn sink(&self) -> &str {
        &self.vertices[self.sink]
    }

    /// Every edge goes from source to sink, so paths and edges coincide.
    pub fn is_parallel(&self) -> bool {
        self.edges.iter().all(|e| e.tail == self.source && e.head == self.sink)
    }

    /// x_e = Σ_{P ∋ e} x_P.
    pub fn edge_flows(&self, flow: &FlowProfile) -> Result<Vec<f64>> {
        self.check_dim(flow)?;
        let mut x = vec![0.0; self.edges.len()];
        for (p, &f) in self.paths.iter().zip(&flow.path_flows) {
            for &e in p {
                x[e] += f;
            }
        }
        Ok(x)
    }

    fn check_dim(&self, flow: &FlowProfile) -> Result<()> {
        if flow.path_flows.len() != self.paths.len() {
            return Err(Error::DimensionMismatch { expected: self.paths.len(), got: flow.path_flows.len() });
        }
        Ok(())
    }
}

fn enumerate_paths(n: usize, edges: &[Edge], source: usize, sink: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out_edges = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        out_edges[e.tail].push(i);
    }
    let mut paths = Vec::new();
    let mut on_path = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: usize,
        sink: usize,
        edges: &[Edge],
        out_edges: &[Vec<usize>],
        on_path: &mut [bool],
        stack: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if v == sink {
            if paths.len() >= cap {
                return Err(Error::Construction(format!(
                    "more than {cap} source-sink paths; raise the path cap or simplify the graph"
                )));
            }
            paths.push(stack.clone());
            return Ok(());
        }
        on_path[v] = true;
        for &e in &out_edges[v] {
            let w = edges[e].head;
            if on_path[w] {
                continue;
            }
            stack.push(e);
            dfs(w, sink, edges, out_edges, on_path, stack, paths, cap)?;
            stack.pop();
        }
        on_path[v] = false;
        Ok(())
    }

    dfs(source, sink, edges, &out_edges, &mut on_path, &mut stack, &mut paths, cap)?;
    Ok(paths)
}

/// Per-path flows together with the total demand M they route.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowProfile {
    pub path_flows: Vec<f64>,
    pub total: f64,
}

impl FlowProfile {
    /// Flow whose total is the sum of `path_flows`.
    pub fn new(path_flows: Vec<f64>) -> Result<Self> {
        if let Some(bad) = path_flows.iter().find(|f| !(**f >= 0.0) || !f.is_finite()) {
            return Err(Error::Infeasible(format!("negative or non-finite path flow {bad}")));
        }
        let total = path_flows.iter().sum();
        Ok(FlowProfile { path_flows, total })
    }

    /// Flow with a declared demand; checks Σ x_P = M.
    pub fn with_total(path_flows: Vec<f64>, total: f64) -> Result<Self> {
        let f = Self { total, ..Self::new(path_flows)? };
        f.check_feasible()?;
        Ok(f)
    }

    pub fn zero(n: usize) -> Self {
        FlowProfile { path_flows: vec![0.0; n], total: 0.0 }
    }

    pub fn check_feasible(&self) -> Result<()> {
        let sum: f64 = self.path_flows.iter().sum();
        if self.path_flows.iter().any(|f| !(*f >= 0.0)) {
            return Err(Error::Infeasible("negative path flow".into()));
        }
        if (sum - self.total).abs() > FEASIBILITY_TOL * self.total.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::Infeasible(format!("path flows sum to {sum}, demand is {}", self.total)));
        }
        Ok(())
    }
}

/// A network together with one cost function per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    pub network: Network,
    pub costs: Vec<CostFunction>,
}

impl Game {
    pub fn new(network: Network, costs: Vec<CostFunction>) -> Result<Self> {
        if costs.len() != network.num_edges() {
            return Err(Error::DimensionMismatch { expected: network.num_edges(), got: costs.len() });
        }
        Ok(Game { network, costs })
    }

    /// Parallel game with edge i carrying `costs[i]`.
    pub fn parallel(costs: Vec<CostFunction>) -> Result<Self> {
        let network = Network::parallel(costs.len())?;
        Self::new(network, costs)
    }

    pub fn is_parallel(&self) -> bool {
        self.network.is_parallel()
    }

    /// c_P(x) = Σ_{e ∈ P} c_e(x_e).
    pub fn path_costs(&self, edge_flows: &[f64]) -> Result<Vec<f64>> {
        let ce = self.costs.iter().zip(edge_flows).map(|(c, &x)| c.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.network.paths().iter().map(|p| p.iter().map(|&e| ce[e]).sum()).collect())
    }

    /// Path costs built from right limits c_e(x_e+).
    pub fn path_costs_right(&self, edge_flows: &[f64]) -> Result<Vec<f64>> {
        let ce = self.costs.iter().zip(edge_flows).map(|(c, &x)| c.eval_right(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.network.paths().iter().map(|p| p.iter().map(|&e| ce[e]).sum()).collect())
    }

    /// C(x) = Σ_e x_e c_e(x_e) for a feasible flow.
    pub fn social_cost(&self, flow: &FlowProfile) -> Result<f64> {
        flow.check_feasible()?;
        let x = self.network.edge_flows(flow)?;
        self.costs.iter().zip(&x).map(|(c, &xe)| Ok(xe * c.eval(xe)?)).sum()
    }

    /// C(x) = Σ_P x_P c_P(x); agrees with [`social_cost`](Self::social_cost).
    pub fn social_cost_paths(&self, flow: &FlowProfile) -> Result<f64> {
        flow.check_feasible()?;
        let x = self.network.edge_flows(flow)?;
        let cp = self.path_costs(&x)?;
        Ok(flow.path_flows.iter().zip(&cp).map(|(f, c)| f * c).sum())
    }

    pub fn to_json(&self) -> Value {
        let net = &self.network;
        json!({
            "vertices": net.vertices,
            "edges": net.edges.iter().zip(&self.costs).map(|(e, c)| json!({
                "id": e.id,
                "tail": net.vertices[e.tail],
                "head": net.vertices[e.head],
                "cost": cost_to_json(c),
            })).collect::<Vec<_>>(),
            "source": net.source(),
            "sink": net.sink(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Self::from_json_with_cap(v, DEFAULT_PATH_CAP)
    }

    pub fn from_json_with_cap(v: &Value, path_cap: usize) -> Result<Self> {
        fn id(v: &Value, what: &str) -> Result<String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::Parse(format!("{what}: expected string or number id, got {other}"))),
            }
        }
        let obj = v.as_object().ok_or_else(|| Error::Parse("network spec must be an object".into()))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("network spec missing {k:?}")));
        let vertices = get("vertices")?
            .as_array()
            .ok_or_else(|| Error::Parse("vertices must be a list".into()))?
            .iter()
            .map(|x| id(x, "vertex"))
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        let mut costs = Vec::new();
        for e in get("edges")?.as_array().ok_or_else(|| Error::Parse("edges must be a list".into()))? {
            let eo = e.as_object().ok_or_else(|| Error::Parse("edge must be an object".into()))?;
            let ef = |k: &str| eo.get(k).ok_or_else(|| Error::Parse(format!("edge missing {k:?}")));
            edges.push((id(ef("id")?, "edge id")?, id(ef("tail")?, "tail")?, id(ef("head")?, "head")?));
            costs.push(cost_from_json(ef("cost")?)?);
        }
        let source = id(get("source")?, "source")?;
        let sink = id(get("sink")?, "sink")?;
        let network = Network::new(vertices, edges, &source, &sink, path_cap)?;
        Self::new(network, costs)
    }
}

/// Parallel network over the given costs (one path per cost).
pub fn build_parallel(costs: Vec<CostFunction>) -> Result<Game> {
    Game::parallel(costs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_parallel() -> Game {
        // P1 = {e1, e3}, P2 = {e2, e3}
        let net = Network::new(
            vec!["s".into(), "v".into(), "t".into()],
            vec![
                ("e1".into(), "s".into(), "v".into()),
                ("e2".into(), "s".into(), "v".into()),
                ("e3".into(), "v".into(), "t".into()),
            ],
            "s",
            "t",
            DEFAULT_PATH_CAP,
        )
        .unwrap();
        Game::new(net, vec![CostFunction::identity(); 3]).unwrap()
    }

    #[test]
    fn parallel_construction() {
        let g = build_parallel(vec![CostFunction::identity(), CostFunction::constant(1.0).unwrap()]).unwrap();
        assert_eq!(g.network.num_paths(), 2);
        assert!(g.network.paths().iter().all(|p| p.len() == 1));
        assert!(g.is_parallel());
        let one = build_parallel(vec![CostFunction::identity()]).unwrap();
        assert_eq!(one.network.num_paths(), 1);
        assert!(matches!(build_parallel(vec![]), Err(Error::Construction(_))));
    }

    #[test]
    fn parallel_edge_flows_identity() {
        let g = build_parallel(vec![CostFunction::identity(); 3]).unwrap();
        let f = FlowProfile::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(g.network.edge_flows(&f).unwrap(), vec![1.0, 2.0, 3.0]);
        let g2 = build_parallel(vec![CostFunction::identity(); 2]).unwrap();
        let f = FlowProfile::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(g2.network.edge_flows(&f).unwrap(), vec![3.0, 4.0]);
        assert_eq!(g2.network.edge_flows(&FlowProfile::zero(2)).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn series_parallel_edge_flows() {
        let g = series_parallel();
        assert_eq!(g.network.num_paths(), 2);
        let f = FlowProfile::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(g.network.edge_flows(&f).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(!g.is_parallel());
    }

    #[test]
    fn dimension_mismatch() {
        let g = series_parallel();
        let f = FlowProfile::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(g.network.edge_flows(&f), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn social_cost_examples() {
        let g = build_parallel(vec![CostFunction::identity(), CostFunction::constant(1.0).unwrap()]).unwrap();
        let half = FlowProfile::with_total(vec![0.5, 0.5], 1.0).unwrap();
        assert_eq!(g.social_cost(&half).unwrap(), 0.75);
        let all = FlowProfile::with_total(vec![1.0, 0.0], 1.0).unwrap();
        assert_eq!(g.social_cost(&all).unwrap(), 1.0);
        assert_eq!(g.social_cost(&FlowProfile::zero(2)).unwrap(), 0.0);
        let bad = FlowProfile { path_flows: vec![0.5, 0.4], total: 1.0 };
        assert!(matches!(g.social_cost(&bad), Err(Error::Infeasible(_))));
    }

    #[test]
    fn cycles_are_skipped_and_cap_enforced() {
        let net = Network::new(
            vec!["s".into(), "a".into(), "t".into()],
            vec![
                ("sa".into(), "s".into(), "a".into()),
                ("as".into(), "a".into(), "s".into()),
                ("at".into(), "a".into(), "t".into()),
                ("st".into(), "s".into(), "t".into()),
            ],
            "s",
            "t",
            DEFAULT_PATH_CAP,
        )
        .unwrap();
        assert_eq!(net.num_paths(), 2);
        let r = Network::new(
            vec!["s".into(), "t".into()],
            (0..5).map(|i| (format!("e{i}"), "s".into(), "t".into())).collect(),
            "s",
            "t",
            3,
        );
        assert!(matches!(r, Err(Error::Construction(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = series_parallel();
        let back = Game::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let bad = json!({"vertices": ["s"], "edges": [], "source": "s", "sink": "t"});
        assert!(Game::from_json(&bad).is_err());
    }
}
