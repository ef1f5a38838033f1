use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Constructions, NamedGraph};
use crate::census::read_records;
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::pauli::{build_generators, coeff_int, h_x, h_z, h_zz, pi_operator, PauliSum};

/// Which polynomial in the three pair operators `A, B, C` is used for `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SFormula {
    /// `-(A + B + C) + A(B + C) - ABC`.
    Literal,
    /// `(1 - A)(1 - B)(1 - C) - 1`, which adds the missing `BC` term.
    Symmetric,
}

#[derive(Clone, Debug)]
pub struct ResultOneBundle {
    pub graph: Graph,
    /// Display label of each vertex.
    pub labels: Vec<usize>,
    /// The three swap pairs in internal indices, in the order `A, B, C`.
    pub pairs: [(usize, usize); 3],
    pub formula: SFormula,
    pub s: PauliSum,
    pub generators: Vec<PauliSum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultOneReport {
    pub formula: SFormula,
    pub aut_order: u64,
    pub hermitian: bool,
    pub nontrivial: bool,
    pub commutes_hx: bool,
    pub commutes_hz: bool,
    pub commutes_hzz: bool,
}

impl ResultOneReport {
    pub fn passed(&self) -> bool {
        self.aut_order == 1
            && self.hermitian
            && self.nontrivial
            && self.commutes_hx
            && self.commutes_hz
            && self.commutes_hzz
    }
}

/// `S` built from pair operators `Pi_ij = 2 SWAP_ij - 1` on the given internal pairs.
pub fn s_operator(n: usize, pairs: &[(usize, usize); 3], formula: SFormula) -> Result<PauliSum> {
    let a = pi_operator(pairs[0].0, pairs[0].1, n)?;
    let b = pi_operator(pairs[1].0, pairs[1].1, n)?;
    let c = pi_operator(pairs[2].0, pairs[2].1, n)?;
    let ab = a.mul(&b)?;
    let ac = a.mul(&c)?;
    let abc = ab.mul(&c)?;
    let mut s = a.add(&b)?.add(&c)?.scale(&coeff_int(-1));
    s = s.add(&ab)?.add(&ac)?.sub(&abc)?;
    if formula == SFormula::Symmetric {
        s = s.add(&b.mul(&c)?)?;
    }
    Ok(s)
}

/// Result-one bundle from the builtin configuration, with the literal `S`.
pub fn build_result_one() -> Result<ResultOneBundle> {
    build_result_one_from(Constructions::builtin().named("H")?, SFormula::Literal)
}

pub fn build_result_one_from(named: &NamedGraph, formula: SFormula) -> Result<ResultOneBundle> {
    let graph = named.graph()?;
    if graph.n() != 7 {
        return Err(Error::InvalidGraph(format!(
            "expected 7 vertices, got {}",
            graph.n()
        )));
    }
    if !graph.is_connected() {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    if automorphism_group(&graph).order() != 1 {
        return Err(Error::InvalidGraph("graph is not asymmetric".into()));
    }
    if named.pairs.len() != 3 {
        return Err(Error::Config("expected three swap pairs".into()));
    }
    let mut pairs = [(0, 0); 3];
    for (k, p) in named.pairs.iter().enumerate() {
        pairs[k] = (named.vertex(p[0])?, named.vertex(p[1])?);
    }
    let s = s_operator(7, &pairs, formula)?;
    Ok(ResultOneBundle {
        generators: build_generators(&graph, true),
        graph,
        labels: named.labels.clone(),
        pairs,
        formula,
        s,
    })
}

pub fn verify_result_one(b: &ResultOneBundle) -> Result<ResultOneReport> {
    let n = b.graph.n();
    let hermitian = b.s.is_hermitian();
    let nontrivial = !b.s.traceless_part().is_zero();
    Ok(ResultOneReport {
        formula: b.formula,
        aut_order: automorphism_group(&b.graph).order(),
        hermitian,
        nontrivial,
        commutes_hx: b.s.commutes_with(&h_x(n))?,
        commutes_hz: b.s.commutes_with(&h_z(n))?,
        commutes_hzz: b.s.commutes_with(&h_zz(&b.graph))?,
    })
}

/// A vertex labeling under which `S` commutes with every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocatedLabeling {
    pub graph6: String,
    /// `labeling[k]` is the vertex carrying display label `k + 1`.
    pub labeling: Vec<usize>,
}

/// Pairs in display labels used by the search.
const LABEL_PAIRS: [(usize, usize); 3] = [(1, 3), (2, 7), (4, 6)];

/// Search all labelings of each graph for which `S` is a symmetry. Labelings that only
/// reorder a pair are reported once, with the smaller vertex on the smaller label.
pub fn locate_in_graphs(graphs: &[Graph], formula: SFormula) -> Result<Vec<LocatedLabeling>> {
    let mut out = Vec::new();
    for g in graphs {
        if g.n() != 7 {
            continue;
        }
        let gens = build_generators(g, true);
        let mut labeling = vec![usize::MAX; 7];
        let mut used = [false; 7];
        search(g, &gens, formula, 0, &mut labeling, &mut used, &mut out)?;
    }
    Ok(out)
}

fn search(
    g: &Graph,
    gens: &[PauliSum],
    formula: SFormula,
    k: usize,
    labeling: &mut Vec<usize>,
    used: &mut [bool; 7],
    out: &mut Vec<LocatedLabeling>,
) -> Result<()> {
    if k == 7 {
        let pairs = LABEL_PAIRS.map(|(x, y)| (labeling[x - 1], labeling[y - 1]));
        let s = s_operator(7, &pairs, formula)?;
        // H_ZZ is the only generator that can fail; it is listed second
        for h in [&gens[1], &gens[0], &gens[2]] {
            if !s.commutes_with(h)? {
                return Ok(());
            }
        }
        out.push(LocatedLabeling {
            graph6: g.to_graph6(),
            labeling: labeling.clone(),
        });
        return Ok(());
    }
    for v in 0..7 {
        if used[v] {
            continue;
        }
        let label = k + 1;
        if let Some(&(lo, _)) = LABEL_PAIRS.iter().find(|p| p.1 == label) {
            if labeling[lo - 1] > v {
                continue;
            }
        }
        used[v] = true;
        labeling[k] = v;
        search(g, gens, formula, k + 1, labeling, used, out)?;
        labeling[k] = usize::MAX;
        used[v] = false;
    }
    Ok(())
}

/// Run [`locate_in_graphs`] over the hidden-symmetry records of an `n = 7` census file.
pub fn locate_result_one_graph(census: &Path, formula: SFormula) -> Result<Vec<LocatedLabeling>> {
    let (records, _) = read_records(census)?;
    let graphs = records
        .iter()
        .filter(|r| r.n == 7 && r.hidden)
        .map(|r| Graph::from_graph6(&r.graph6))
        .collect::<Result<Vec<_>>>()?;
    locate_in_graphs(&graphs, formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_formula_is_a_symmetry_of_h() {
        let named = Constructions::builtin().named("H").unwrap().clone();
        let b = build_result_one_from(&named, SFormula::Symmetric).unwrap();
        let r = verify_result_one(&b).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn s_is_hermitian_for_both_formulas() {
        let b = build_result_one().unwrap();
        assert!(b.s.is_hermitian());
        assert!(!b.s.traceless_part().is_zero());
    }

    #[test]
    fn rejects_symmetric_graph() {
        let named = NamedGraph {
            n: 7,
            edges: (0..6).map(|i| [i, i + 1]).collect(),
            labels: (1..=7).collect(),
            pairs: vec![[1, 3], [2, 7], [4, 6]],
            source: String::new(),
        };
        assert!(matches!(
            build_result_one_from(&named, SFormula::Literal),
            Err(Error::InvalidGraph(_))
        ));
    }
}
