use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::commutant::{symmetry_report_for, CommutantOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lie::{lie_closure_with, ClosureMethod, ClosureOptions, LieClosure, Verdict};
use crate::pauli::{build_generators, generators_hash, PauliSum};
use crate::subspace::{decompose_commutant, DecomposeOptions};

pub const ANALYSIS_SCHEMA: &str = "globalctl.analysis/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub symmetry_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks_ms: Option<u64>,
}

/// One graph's report; every field comes from exactly one computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub graph6: String,
    pub n: usize,
    /// `full` for {H_X, H_ZZ, H_Z}, `qaoa` for {H_X, H_ZZ}.
    pub generator_set: String,
    pub extra: bool,
    pub generators_hash: String,
    pub seed: u64,
    pub aut_order: u64,
    pub aut_span_dim: usize,
    pub commutant_dim: usize,
    pub hidden: bool,
    pub verdict: Verdict,
    pub verdict_reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_method: Option<ClosureMethod>,
    /// Modulus of a modular closure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub lie: bool,
    pub blocks: bool,
    pub qaoa: bool,
    pub allow_disconnected: bool,
    pub closure_max_qubits: usize,
    pub timings: bool,
    pub seed: u64,
    pub commutant: CommutantOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            lie: false,
            blocks: false,
            qaoa: false,
            allow_disconnected: false,
            closure_max_qubits: 4,
            timings: false,
            seed: 1,
            commutant: CommutantOptions::default(),
        }
    }
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn analyze(
    g: &Graph,
    extra: Option<&PauliSum>,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport> {
    if !opts.allow_disconnected && !g.is_connected() {
        return Err(Error::InvalidGraph(
            "graph is disconnected (use --allow-disconnected)".into(),
        ));
    }
    let n = g.n();
    let base = build_generators(g, !opts.qaoa);
    let mut gens = base.clone();
    if let Some(e) = extra {
        gens.push(e.clone());
    }
    let t = Instant::now();
    let (rep, basis) = symmetry_report_for(g, base, extra, &opts.commutant)?;
    let symmetry_ms = ms(t);

    let run_closure = opts.lie || (rep.commutant_dim == 1 && n <= opts.closure_max_qubits);
    let mut lie_ms = None;
    let closure: Option<LieClosure> = if run_closure {
        let t = Instant::now();
        let copts = ClosureOptions {
            seed: opts.seed,
            ..Default::default()
        };
        let mut c = lie_closure_with(&gens, &copts)?;
        if c.universal() && c.method() == ClosureMethod::Float && n <= 4 {
            c = lie_closure_with(
                &gens,
                &ClosureOptions {
                    method: Some(ClosureMethod::Exact),
                    ..copts
                },
            )?;
        }
        lie_ms = Some(ms(t));
        Some(c)
    } else {
        None
    };
    let full = (1usize << (2 * n)) - 1;
    let (verdict, verdict_reason) = if rep.commutant_dim > 1 {
        (
            Verdict::NotUniversal,
            format!("commutant has dimension {} > 1", rep.commutant_dim),
        )
    } else {
        match &closure {
            Some(c) if c.budget_hit() => (
                Verdict::Undecided,
                format!("closure budget hit at dimension {}", c.dim()),
            ),
            Some(c) if c.universal() => (Verdict::Universal, format!("closure dimension {full}")),
            Some(c) => (
                Verdict::NotUniversal,
                format!("closure dimension {} < {full}", c.dim()),
            ),
            None => (
                Verdict::Undecided,
                format!(
                    "trivial commutant; closure skipped above {} qubits",
                    opts.closure_max_qubits
                ),
            ),
        }
    };

    let mut blocks_ms = None;
    let block_dims = if opts.blocks {
        if n > 11 {
            return Err(Error::Budget(format!(
                "block decomposition supports at most 11 qubits, got {n}"
            )));
        }
        let t = Instant::now();
        let dec = decompose_commutant(
            &basis,
            &DecomposeOptions {
                seed: opts.seed,
                with_bases: Some(false),
                commutant: opts.commutant.clone(),
            },
        )?;
        blocks_ms = Some(ms(t));
        Some(dec.dims)
    } else {
        None
    };

    Ok(AnalysisReport {
        schema: ANALYSIS_SCHEMA.into(),
        graph6: g.to_graph6(),
        n,
        generator_set: if opts.qaoa { "qaoa" } else { "full" }.into(),
        extra: extra.is_some(),
        generators_hash: generators_hash(&gens),
        seed: opts.seed,
        aut_order: rep.aut_order,
        aut_span_dim: rep.aut_span_dim,
        commutant_dim: rep.commutant_dim,
        hidden: rep.has_hidden,
        verdict,
        verdict_reason,
        lie_dim: closure.as_ref().map(LieClosure::dim),
        lie_method: closure.as_ref().map(LieClosure::method),
        lie_prime: closure.as_ref().and_then(LieClosure::prime),
        block_dims,
        timings: opts.timings.then_some(Timings {
            symmetry_ms,
            lie_ms,
            blocks_ms,
        }),
    })
}
