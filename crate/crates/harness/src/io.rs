//! JSON instance and decomposition formats.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ryser_core::cpdecomp::{Block, BlockKind, CpDecomposition};
use ryser_core::{BipartiteMultigraph, ConnValue, ConnWindow, ThreePartiteHypergraph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteJson {
    #[serde(rename = "classA")]
    pub class_a: Vec<String>,
    #[serde(rename = "classB")]
    pub class_b: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct HypergraphJson {
    pub V1: Vec<String>,
    pub V2: Vec<String>,
    pub V3: Vec<String>,
    pub edges: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub kind: String,
    pub vertices: Vec<String>,
    pub edges: Vec<usize>,
    #[serde(rename = "mEdges")]
    pub m_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Bipartite(BipartiteMultigraph),
    Hypergraph(ThreePartiteHypergraph),
}

impl BipartiteJson {
    pub fn from_graph(g: &BipartiteMultigraph) -> Self {
        let edges = g.edges().iter().map(|&(a, b)| [g.class_a()[a].clone(), g.class_b()[b].clone()]).collect();
        Self { class_a: g.class_a().to_vec(), class_b: g.class_b().to_vec(), edges }
    }

    pub fn to_graph(&self) -> Result<BipartiteMultigraph> {
        let edges: Vec<(String, String)> = self.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Ok(BipartiteMultigraph::new(self.class_a.clone(), self.class_b.clone(), &edges)?)
    }
}

impl HypergraphJson {
    pub fn from_hypergraph(h: &ThreePartiteHypergraph) -> Self {
        let c = h.classes();
        let edges = h.edges().iter().map(|e| [0, 1, 2].map(|k| c[k][e[k]].clone())).collect();
        Self { V1: c[0].clone(), V2: c[1].clone(), V3: c[2].clone(), edges }
    }

    pub fn to_hypergraph(&self) -> Result<ThreePartiteHypergraph> {
        Ok(ThreePartiteHypergraph::new([self.V1.clone(), self.V2.clone(), self.V3.clone()], &self.edges)?)
    }
}

/// Parses either instance format, telling them apart by their keys.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).context("instance is not valid JSON")?;
    if v.get("classA").is_some() {
        let b: BipartiteJson = serde_json::from_value(v).context("malformed bipartite instance")?;
        Ok(Instance::Bipartite(b.to_graph()?))
    } else if v.get("V1").is_some() {
        let h: HypergraphJson = serde_json::from_value(v).context("malformed 3-graph instance")?;
        Ok(Instance::Hypergraph(h.to_hypergraph()?))
    } else {
        bail!("instance needs either classA/classB or V1/V2/V3")
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("in {}", path.display()))
}

pub fn read_bipartite(path: &Path) -> Result<BipartiteMultigraph> {
    match read_instance(path)? {
        Instance::Bipartite(g) => Ok(g),
        Instance::Hypergraph(_) => bail!("{} holds a 3-graph, expected a bipartite graph", path.display()),
    }
}

pub fn read_hypergraph(path: &Path) -> Result<ThreePartiteHypergraph> {
    match read_instance(path)? {
        Instance::Hypergraph(h) => Ok(h),
        Instance::Bipartite(_) => bail!("{} holds a bipartite graph, expected a 3-graph", path.display()),
    }
}

pub fn decomposition_to_json(g: &BipartiteMultigraph, d: &CpDecomposition) -> DecompositionJson {
    let blocks = d
        .blocks
        .iter()
        .map(|b| BlockJson {
            kind: match b.kind {
                BlockKind::C4 => "C4".into(),
                BlockKind::P4 => "P4".into(),
            },
            vertices: b.vertices.iter().map(|&v| g.label(v).to_string()).collect(),
            edges: b.edges.clone(),
            m_edges: b.m_edges.clone(),
        })
        .collect();
    DecompositionJson { blocks }
}

pub fn decomposition_from_json(g: &BipartiteMultigraph, d: &DecompositionJson) -> Result<CpDecomposition> {
    let lookup = |label: &str| -> Result<usize> {
        (0..g.vertex_count()).find(|&v| g.label(v) == label).ok_or_else(|| anyhow!("unknown vertex `{label}`"))
    };
    let mut blocks = Vec::with_capacity(d.blocks.len());
    for b in &d.blocks {
        let kind = match b.kind.as_str() {
            "C4" => BlockKind::C4,
            "P4" => BlockKind::P4,
            other => bail!("block kind must be C4 or P4, got `{other}`"),
        };
        let vertices = b.vertices.iter().map(|s| lookup(s)).collect::<Result<_>>()?;
        if let Some(&e) = b.edges.iter().chain(&b.m_edges).find(|&&e| e >= g.edge_count()) {
            bail!("edge id {e} does not exist");
        }
        blocks.push(Block { kind, vertices, edges: b.edges.clone(), m_edges: b.m_edges.clone() });
    }
    Ok(CpDecomposition { blocks })
}

pub fn conn_json(v: ConnValue) -> Value {
    match v {
        ConnValue::Finite(x) => json!(x),
        ConnValue::Infinite => json!("inf"),
    }
}

pub fn window_json(w: ConnWindow) -> Value {
    match w {
        ConnWindow::Exact(v) => json!({ "exact": conn_json(v) }),
        ConnWindow::AtLeast(c) => json!({ "atLeast": c }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_round_trip_keeps_multiplicity() {
        let text = r#"{"classA":["u","v"],"classB":["w"],"edges":[["u","w"],["u","w"],["v","w"]]}"#;
        let Instance::Bipartite(g) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(g.multiplicity(0, 0), 2);
        assert_eq!(serde_json::to_string(&BipartiteJson::from_graph(&g)).unwrap(), text);
    }

    #[test]
    fn hypergraph_round_trip() {
        let text = r#"{"V1":["a"],"V2":["b"],"V3":["c","d"],"edges":[["a","b","c"],["a","b","d"]]}"#;
        let Instance::Hypergraph(h) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(h.edge_count(), 2);
        assert_eq!(serde_json::to_string(&HypergraphJson::from_hypergraph(&h)).unwrap(), text);
    }

    #[test]
    fn rejects_wrong_class_and_unknown_shape() {
        assert!(parse_instance(r#"{"classA":["u"],"classB":["w"],"edges":[["w","u"]]}"#).is_err());
        assert!(parse_instance(r#"{"vertices":[]}"#).is_err());
    }
}
