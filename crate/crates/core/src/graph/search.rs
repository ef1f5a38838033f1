//! Partition refinement search for automorphism groups and canonical labelings.

use std::collections::BTreeSet;

use super::{Graph, Permutation};
use crate::error::{Error, Result};

type Partition = Vec<Vec<usize>>;

/// Automorphism group given by generators and its exact order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    n: usize,
    generators: Vec<Permutation>,
    order: u64,
}

impl AutomorphismGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Orbit representative (smallest member) of every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let mut rep: Vec<usize> = (0..self.n).collect();
        fn find(rep: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while rep[r] != r {
                r = rep[r];
            }
            rep[v] = r;
            r
        }
        for g in &self.generators {
            for v in 0..self.n {
                let (a, b) = (find(&mut rep, v), find(&mut rep, g.apply(v)));
                if a != b {
                    rep[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut rep, v)).collect()
    }

    /// All elements, identity first, sorted; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        if self.order > cap {
            return Err(Error::Budget(format!(
                "automorphism group of order {} exceeds element cap {cap}",
                self.order
            )));
        }
        let id = Permutation::identity(self.n);
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in &self.generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        debug_assert_eq!(seen.len() as u64, self.order);
        Ok(seen.into_iter().collect())
    }
}

fn split_cell(g: &Graph, cell: &[usize], splitter_mask: u16) -> Vec<Vec<usize>> {
    let mut keyed: Vec<(u32, usize)> = cell
        .iter()
        .map(|&v| ((g.neighbors_mask(v) & splitter_mask).count_ones(), v))
        .collect();
    keyed.sort();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (k, v) in keyed {
        if last != Some(k) {
            out.push(Vec::new());
            last = Some(k);
        }
        out.last_mut().unwrap().push(v);
    }
    out
}

fn mask_of(cell: &[usize]) -> u16 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Refine to the coarsest equitable partition finer than `p`.
///
/// Every choice depends only on cell positions and neighbor counts, so the result
/// commutes with relabeling.
fn refine(g: &Graph, mut p: Partition) -> Partition {
    'outer: loop {
        for s in 0..p.len() {
            let smask = mask_of(&p[s]);
            for i in 0..p.len() {
                if p[i].len() == 1 {
                    continue;
                }
                let parts = split_cell(g, &p[i], smask);
                if parts.len() > 1 {
                    p.splice(i..=i, parts);
                    continue 'outer;
                }
            }
        }
        return p;
    }
}

fn individualize(g: &Graph, p: &Partition, cell: usize, v: usize) -> Partition {
    let mut q = p.clone();
    let rest: Vec<usize> = q[cell].iter().copied().filter(|&x| x != v).collect();
    q.splice(cell..=cell, [vec![v], rest]);
    refine(g, q)
}

fn target_cell(p: &Partition) -> Option<usize> {
    p.iter().position(|c| c.len() > 1)
}

fn shape(p: &Partition) -> Vec<usize> {
    p.iter().map(Vec::len).collect()
}

/// Labeling of a discrete partition: vertex at position k gets label k.
fn leaf_labeling(p: &Partition) -> Permutation {
    let mut image = vec![0; p.len()];
    for (k, c) in p.iter().enumerate() {
        image[c[0]] = k;
    }
    Permutation::new(image).expect("discrete partition")
}

struct Searcher<'a> {
    g: &'a Graph,
    first_leaf: Option<(Permutation, Graph)>,
    leftmost_shapes: Vec<Vec<usize>>,
}

impl<'a> Searcher<'a> {
    /// Look in the subtree at `p` for a leaf whose relabeled graph equals the first leaf's.
    fn find_equivalent(&self, p: Partition, depth: usize) -> Option<Permutation> {
        if self.leftmost_shapes.get(depth) != Some(&shape(&p)) {
            return None;
        }
        match target_cell(&p) {
            None => {
                let lab = leaf_labeling(&p);
                let (first_lab, first_graph) = self.first_leaf.as_ref().unwrap();
                if self.g.permuted(&lab) == *first_graph {
                    Some(first_lab.inverse().compose(&lab))
                } else {
                    None
                }
            }
            Some(t) => {
                for &v in &p[t] {
                    let q = individualize(self.g, &p, t, v);
                    if let Some(a) = self.find_equivalent(q, depth + 1) {
                        return Some(a);
                    }
                }
                None
            }
        }
    }
}

fn orbit(gens: &[Permutation], start: usize) -> u16 {
    let mut seen: u16 = 1 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack.push(y);
            }
        }
    }
    seen
}

/// Exact automorphism group by individualization-refinement with a stabilizer chain
/// along the leftmost branch; the order is the product of the basic orbit sizes.
pub fn automorphism_group(g: &Graph) -> AutomorphismGroup {
    let n = g.n();
    let root = refine(g, vec![(0..n).collect()]);
    let mut path = vec![root];
    while let Some(t) = target_cell(path.last().unwrap()) {
        let p = path.last().unwrap();
        let v = p[t][0];
        let q = individualize(g, p, t, v);
        path.push(q);
    }
    let leaf = path.last().unwrap();
    let lab = leaf_labeling(leaf);
    let searcher = Searcher {
        g,
        first_leaf: Some((lab.clone(), g.permuted(&lab))),
        leftmost_shapes: path.iter().map(shape).collect(),
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u64 = 1;
    for depth in (0..path.len() - 1).rev() {
        let p = &path[depth];
        let t = target_cell(p).unwrap();
        let base = p[t][0];
        let mut orb = orbit(&gens, base);
        for &v in &p[t][1..] {
            if orb >> v & 1 == 1 {
                continue;
            }
            let q = individualize(g, p, t, v);
            if let Some(a) = searcher.find_equivalent(q, depth + 1) {
                debug_assert!(g.is_automorphism(&a));
                gens.push(a);
                orb = orbit(&gens, base);
            }
        }
        order *= orb.count_ones() as u64;
    }
    AutomorphismGroup {
        n,
        generators: gens,
        order,
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    gens: &'a [Permutation],
    best: Option<(u128, Permutation)>,
}

impl<'a> CanonSearch<'a> {
    fn visit(&mut self, p: Partition, prefix: &mut Vec<usize>) {
        match target_cell(&p) {
            None => {
                let lab = leaf_labeling(&p);
                let key = self.g.permuted(&lab).bit_key();
                if self.best.as_ref().is_none_or(|(k, _)| key < *k) {
                    self.best = Some((key, lab));
                }
            }
            Some(t) => {
                let fixing: Vec<Permutation> = self
                    .gens
                    .iter()
                    .filter(|a| prefix.iter().all(|&x| a.apply(x) == x))
                    .cloned()
                    .collect();
                let mut done: u16 = 0;
                for &v in &p[t] {
                    if done >> v & 1 == 1 {
                        continue;
                    }
                    done |= orbit(&fixing, v);
                    let q = individualize(self.g, &p, t, v);
                    prefix.push(v);
                    self.visit(q, prefix);
                    prefix.pop();
                }
            }
        }
    }
}

/// Canonical labeling: the permutation taking `g` to its canonical form.
pub fn canonical_labeling(g: &Graph) -> Permutation {
    canonical_labeling_with_group(g).0
}

/// Canonical labeling together with the automorphism group computed on the way.
pub fn canonical_labeling_with_group(g: &Graph) -> (Permutation, AutomorphismGroup) {
    let aut = automorphism_group(g);
    let root = refine(g, vec![(0..g.n()).collect()]);
    let mut s = CanonSearch {
        g,
        gens: aut.generators(),
        best: None,
    };
    s.visit(root, &mut Vec::new());
    let lab = s.best.unwrap().1;
    (lab, aut)
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}
