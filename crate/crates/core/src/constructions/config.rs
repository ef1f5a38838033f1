use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const BUILTIN: &str = include_str!("../../data/constructions.toml");

/// A named graph with its display labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    /// `labels[i]` is the 1-based display label of vertex `i`.
    pub labels: Vec<usize>,
    /// Swap pairs in display labels.
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub source: String,
}

impl NamedGraph {
    pub fn graph(&self) -> Result<Graph> {
        let e: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(self.n, &e)
    }

    /// Internal vertex carrying display label `label`.
    pub fn vertex(&self, label: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::Config(format!("label {label} not in label map")))
    }

    fn validate(&self, name: &str) -> Result<()> {
        let mut seen = self.labels.clone();
        seen.sort_unstable();
        if seen != (1..=self.n).collect::<Vec<_>>() {
            return Err(Error::Config(format!(
                "graph {name}: labels must be a permutation of 1..={}",
                self.n
            )));
        }
        self.graph()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFamily {
    pub branch_position: usize,
    pub min_interior: usize,
    #[serde(default)]
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Families {
    #[serde(rename = "Q")]
    pub q: QFamily,
}

/// Contents of the constructions configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constructions {
    pub graph: BTreeMap<String, NamedGraph>,
    pub family: Families,
}

impl Constructions {
    /// The configuration compiled into the crate.
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("builtin constructions file is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let c: Constructions = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for (name, g) in &c.graph {
            g.validate(name)?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn named(&self, name: &str) -> Result<&NamedGraph> {
        self.graph
            .get(name)
            .ok_or_else(|| Error::Config(format!("no graph named {name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let c = Constructions::builtin();
        let h = c.named("H").unwrap();
        assert_eq!(h.n, 7);
        assert_eq!(h.vertex(5).unwrap(), 4);
        assert_eq!(c.family.q.min_interior, 7);
    }

    #[test]
    fn bad_labels_rejected() {
        let t = "[graph.X]\nn = 2\nedges = [[0, 1]]\nlabels = [1, 1]\n[family.Q]\nbranch_position = 2\nmin_interior = 7\n";
        assert!(matches!(Constructions::from_toml(t), Err(Error::Config(_))));
    }
}
