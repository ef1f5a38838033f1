use crate::error::{Error, Result};
use crate::graph::{automorphism_group, canonical_labeling_with_group, Graph, Permutation};

/// Largest vertex count accepted by the enumerator.
pub const ENUMERATE_MAX: usize = 9;

/// One canonical representative per isomorphism class of connected graphs on `n` vertices,
/// sorted by graph6.
///
/// Orderly generation by vertex augmentation: a child is kept when its new vertex lies in
/// the orbit of the non-cut vertex with the largest canonical label (any vertex when
/// disconnected graphs are included).
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    enumerate(n, true)
}

/// One canonical representative per isomorphism class of all graphs on `n` vertices.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    enumerate(n, false)
}

fn enumerate(n: usize, connected: bool) -> Result<Vec<Graph>> {
    if n == 0 || n > ENUMERATE_MAX {
        return Err(Error::InvalidGraph(format!(
            "enumeration supports 1..={ENUMERATE_MAX} vertices"
        )));
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        let mut next = Vec::new();
        for parent in &level {
            augment(parent, connected, &mut next)?;
        }
        level = next;
    }
    let mut out: Vec<(String, Graph)> = level.into_iter().map(|g| (g.to_graph6(), g)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|x| x.1).collect())
}

fn permute_mask(p: &Permutation, mask: u16) -> u16 {
    (0..p.len())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << p.apply(i))
}

fn augment(parent: &Graph, connected: bool, out: &mut Vec<Graph>) -> Result<()> {
    let k = parent.n();
    let elements = automorphism_group(parent).elements(u64::MAX)?;
    for mask in (connected as u16)..(1 << k) {
        // one neighbor set per orbit under the parent's automorphisms
        if elements.iter().any(|p| permute_mask(p, mask) < mask) {
            continue;
        }
        let child = parent.with_vertex(mask)?;
        let (lab, aut) = canonical_labeling_with_group(&child);
        let deletion = (0..=k)
            .filter(|&v| !connected || child.without_vertex(v).is_connected())
            .max_by_key(|&v| lab.apply(v))
            .expect("a connected graph has a non-cut vertex");
        let orbits = aut.orbits();
        if orbits[deletion] == orbits[k] {
            out.push(child.permuted(&lab));
        }
    }
    Ok(())
}

/// Every connected labeled graph on `n` vertices, reduced to canonical forms and
/// deduplicated. Exponential in `n^2`; meant as a test oracle for small `n`.
pub fn enumerate_connected_brute(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidGraph(
            "brute-force enumeration supports 1..=6 vertices".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = std::collections::BTreeMap::new();
    for bits in 0u64..(1 << pairs.len()) {
        let e: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, p)| *p)
            .collect();
        let g = Graph::from_edges(n, &e)?;
        if g.is_connected() {
            let c = crate::graph::canonical_form(&g);
            seen.entry(c.to_graph6()).or_insert(c);
        }
    }
    Ok(seen.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (1..=6).map(|n| enumerate_all(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn matches_brute_force_n4() {
        let a: Vec<String> = enumerate_connected(4)
            .unwrap()
            .iter()
            .map(Graph::to_graph6)
            .collect();
        let b: Vec<String> = enumerate_connected_brute(4)
            .unwrap()
            .iter()
            .map(Graph::to_graph6)
            .collect();
        assert_eq!(a, b);
    }
}
