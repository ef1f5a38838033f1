use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::config::{Constructions, QFamily};
use crate::commutant::{breaks_all_automorphisms, commutant_with, CommutantOptions};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::lie::{is_universal_with, UniversalityOptions, Verdict};
use crate::pauli::{
    build_generators, coeff_int, coeff_ratio, single, swap_operator, Letter, PauliSum,
};
use crate::subspace::{decompose_commutant, DecomposeOptions};

/// Graph `Q(N)` with its two reflections and the symmetry-breaking control.
#[derive(Clone, Debug)]
pub struct ResultTwoBundle {
    pub interior: usize,
    pub graph: Graph,
    /// Pendant vertices `a, b, c, d`.
    pub pendants: [usize; 4],
    pub r1: PauliSum,
    pub r2: PauliSum,
    pub h1: PauliSum,
    pub h2: PauliSum,
    pub h_break: PauliSum,
}

impl ResultTwoBundle {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `R1 + R2 - R1 R2`.
    pub fn combination(&self) -> Result<PauliSum> {
        self.r1.add(&self.r2)?.sub(&self.r1.mul(&self.r2)?)
    }

    /// `1/4 (1 + s1 R1)(1 + s2 R2)`.
    pub fn projector(&self, s1: i8, s2: i8) -> Result<PauliSum> {
        let one = PauliSum::identity(self.n());
        let a = one.add(&self.r1.scale(&coeff_int(s1 as i64)))?;
        let b = one.add(&self.r2.scale(&coeff_int(s2 as i64)))?;
        Ok(a.mul(&b)?.scale(&coeff_ratio(1, 4)))
    }
}

/// `Q(N)`: a chain of `N - 1` vertices with a branch vertex at `branch_position`, and
/// pendant pairs on both chain ends.
pub fn q_graph(interior: usize, branch_position: usize) -> Result<Graph> {
    if interior < 4 || branch_position + 2 > interior {
        return Err(Error::InvalidGraph(format!(
            "Q needs an interior of at least {} vertices",
            (branch_position + 2).max(4)
        )));
    }
    let chain = interior - 1;
    let mut e: Vec<(usize, usize)> = (0..chain - 1).map(|i| (i, i + 1)).collect();
    e.push((branch_position, chain));
    let (a, c) = (interior, interior + 2);
    e.extend([(0, a), (0, a + 1), (chain - 1, c), (chain - 1, c + 1)]);
    Graph::from_edges(interior + 4, &e)
}

/// Strict construction from the builtin family description (`N` at least the minimum).
pub fn build_result_two(interior: usize) -> Result<ResultTwoBundle> {
    build_result_two_with(interior, false, &Constructions::builtin().family.q)
}

pub fn build_result_two_with(
    interior: usize,
    force: bool,
    family: &QFamily,
) -> Result<ResultTwoBundle> {
    if !force && interior < family.min_interior {
        return Err(Error::InvalidGraph(format!(
            "N = {interior} is below {}; the automorphism group is not guaranteed",
            family.min_interior
        )));
    }
    let graph = q_graph(interior, family.branch_position)?;
    let n = graph.n();
    let (a, b, c, d) = (interior, interior + 1, interior + 2, interior + 3);
    let r1 = swap_operator(a, b, n)?;
    let r2 = swap_operator(c, d, n)?;
    let one = PauliSum::identity(n);
    let h1 = one
        .add(&r2)?
        .mul(&single(n, a, Letter::X).sub(&single(n, b, Letter::X))?)?;
    let h2 = one
        .add(&r1)?
        .mul(&single(n, c, Letter::X).sub(&single(n, d, Letter::X))?)?;
    let h_break = h1.add(&h2)?;
    if interior >= family.min_interior {
        let order = automorphism_group(&graph).order();
        if order != 4 {
            return Err(Error::Verification(format!(
                "|Aut(Q)| = {order}, expected 4"
            )));
        }
    }
    Ok(ResultTwoBundle {
        interior,
        graph,
        pendants: [a, b, c, d],
        r1,
        r2,
        h1,
        h2,
        h_break,
    })
}

/// Which matrix-level checks to run beyond the symbolic identities.
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseChecks {
    pub commutant: bool,
    pub blocks: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTwoDense {
    pub extended_commutant_dim: usize,
    pub contains_combination: bool,
    pub verdict: Verdict,
    pub block_dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTwoReport {
    pub interior: usize,
    pub n: usize,
    pub aut_order: u64,
    pub r1_bracket: bool,
    pub r2_bracket: bool,
    pub r1r2_bracket: bool,
    pub combination_commutes: bool,
    pub r2h1_is_h1: bool,
    pub r1h2_is_h2: bool,
    pub h1_anticommutes_r1: bool,
    pub h1_commutes_r2: bool,
    pub h2_anticommutes_r2: bool,
    pub h2_commutes_r1: bool,
    pub independent: bool,
    pub projector_idempotent: bool,
    pub projector_commutes: bool,
    pub breaks_all_automorphisms: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<ResultTwoDense>,
}

impl ResultTwoReport {
    fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("[R1, H_break] = 2 R1 H1", self.r1_bracket),
            ("[R2, H_break] = 2 R2 H2", self.r2_bracket),
            ("[R1 R2, H_break] = 2 R1 R2 H_break", self.r1r2_bracket),
            ("[R1 + R2 - R1 R2, H_break] = 0", self.combination_commutes),
            ("R2 H1 = H1", self.r2h1_is_h1),
            ("R1 H2 = H2", self.r1h2_is_h2),
            ("{H1, R1} = 0", self.h1_anticommutes_r1),
            ("[H1, R2] = 0", self.h1_commutes_r2),
            ("{H2, R2} = 0", self.h2_anticommutes_r2),
            ("[H2, R1] = 0", self.h2_commutes_r1),
            ("R1 H1, R2 H2 independent", self.independent),
            ("projector idempotent", self.projector_idempotent),
            ("projector commutes", self.projector_commutes),
            ("breaks all automorphisms", self.breaks_all_automorphisms),
        ];
        checks.iter().filter(|c| !c.1).map(|c| c.0).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
            && self.dense.as_ref().is_none_or(|d| {
                d.extended_commutant_dim >= 2
                    && d.contains_combination
                    && d.verdict == Verdict::NotUniversal
            })
    }
}

fn proportional(x: &PauliSum, y: &PauliSum) -> bool {
    let Some((s, c)) = x.terms().next() else {
        return true;
    };
    let k = y.coeff(s);
    // y = (k / c) x  <=>  c y = k x
    y.scale(c) == x.scale(&k)
}

/// Check every identity symbolically; a failing identity is a construction bug and is
/// returned as [`Error::Verification`].
pub fn verify_result_two(b: &ResultTwoBundle, dense: DenseChecks) -> Result<ResultTwoReport> {
    let two = coeff_int(2);
    let hb = &b.h_break;
    let r1r2 = b.r1.mul(&b.r2)?;
    let r1h1 = b.r1.mul(&b.h1)?;
    let r2h2 = b.r2.mul(&b.h2)?;
    let comb = b.combination()?;
    let proj = b.projector(-1, -1)?;
    let mut gens = build_generators(&b.graph, true);
    gens.push(hb.clone());
    let mut projector_commutes = true;
    for g in &gens {
        projector_commutes &= proj.commutes_with(g)?;
    }
    let mut report = ResultTwoReport {
        interior: b.interior,
        n: b.n(),
        aut_order: automorphism_group(&b.graph).order(),
        r1_bracket: b.r1.commutator(hb)? == r1h1.scale(&two),
        r2_bracket: b.r2.commutator(hb)? == r2h2.scale(&two),
        r1r2_bracket: r1r2.commutator(hb)? == r1r2.mul(hb)?.scale(&two),
        combination_commutes: comb.commutator(hb)?.is_zero(),
        r2h1_is_h1: b.r2.mul(&b.h1)? == b.h1,
        r1h2_is_h2: b.r1.mul(&b.h2)? == b.h2,
        h1_anticommutes_r1: b.h1.anticommutator(&b.r1)?.is_zero(),
        h1_commutes_r2: b.h1.commutes_with(&b.r2)?,
        h2_anticommutes_r2: b.h2.anticommutator(&b.r2)?.is_zero(),
        h2_commutes_r1: b.h2.commutes_with(&b.r1)?,
        independent: !r1h1.is_zero() && !r2h2.is_zero() && !proportional(&r1h1, &r2h2),
        projector_idempotent: proj.mul(&proj)? == proj,
        projector_commutes,
        breaks_all_automorphisms: breaks_all_automorphisms(&b.graph, hb)?,
        dense: None,
    };
    let failed = report.failures();
    if !failed.is_empty() {
        return Err(Error::Verification(failed.join("; ")));
    }
    if dense.commutant || dense.blocks {
        let n = b.n();
        let opts = CommutantOptions::default();
        let basis = commutant_with(n, &gens, &opts)?;
        let target = comb.to_integer_matrix()?.map(|&v| BigInt::from(v));
        let verdict = is_universal_with(
            &b.graph,
            Some(hb),
            &UniversalityOptions {
                commutant: opts.clone(),
                ..Default::default()
            },
        )?
        .verdict;
        let block_dims = if dense.blocks {
            let dec = decompose_commutant(
                &basis,
                &DecomposeOptions {
                    with_bases: Some(false),
                    ..Default::default()
                },
            )?;
            Some(dec.dims)
        } else {
            None
        };
        report.dense = Some(ResultTwoDense {
            extended_commutant_dim: basis.dim(),
            contains_combination: basis.contains(&target),
            verdict,
            block_dims,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q7_has_four_automorphisms() {
        let b = build_result_two(7).unwrap();
        assert_eq!(b.n(), 11);
        assert_eq!(automorphism_group(&b.graph).order(), 4);
    }

    #[test]
    fn small_interior_needs_force() {
        assert!(build_result_two(3).is_err());
        let fam = Constructions::builtin().family.q;
        assert!(build_result_two_with(5, true, &fam).is_ok());
    }

    #[test]
    fn symbolic_identities_hold() {
        for nn in [5, 7, 9] {
            let fam = Constructions::builtin().family.q;
            let b = build_result_two_with(nn, true, &fam).unwrap();
            let r = verify_result_two(&b, DenseChecks::default()).unwrap();
            assert!(r.passed());
        }
    }
}
