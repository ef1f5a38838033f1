//! Exhaustive census of connected asymmetric graphs with checkpointed JSONL output.

mod enumerate;
mod record;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::commutant::{symmetry_report_with, CommutantOptions};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::subspace::{decompose_commutant, DecomposeOptions};

pub use enumerate::{enumerate_all, enumerate_connected, enumerate_connected_brute, ENUMERATE_MAX};
pub use record::{
    census_query, decode_line, encode_record, encode_summary, for_each_line, read_records,
    write_records, BlockProfile, CensusRecord, CensusSummary, Filter, Line,
};

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads (0: rayon default).
    pub jobs: usize,
    /// Continue from the records already present in the checkpoint.
    pub resume: bool,
    /// Decompose the hidden-symmetry hits.
    pub blocks: bool,
    /// Record per-graph wall time (makes output non-reproducible).
    pub timings: bool,
    /// Records analyzed between checkpoint flushes.
    pub flush_every: usize,
    /// Stop with [`Error::Budget`] after this many newly analyzed graphs.
    pub max_new: Option<usize>,
    /// Restrict to connected graphs.
    pub connected_only: bool,
    pub commutant: CommutantOptions,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            jobs: 0,
            resume: false,
            blocks: true,
            timings: false,
            flush_every: 256,
            max_new: None,
            connected_only: true,
            commutant: CommutantOptions::default(),
            seed: 1,
        }
    }
}

/// Analyze one graph.
pub fn analyze_graph(g: &Graph, opts: &CensusOptions) -> Result<CensusRecord> {
    let t = Instant::now();
    let (rep, basis) = symmetry_report_with(g, None, &opts.commutant)?;
    let hidden = rep.commutant_dim as u64 > rep.aut_order;
    let block_dims = if rep.commutant_dim == 1 {
        Some(vec![1usize << g.n()])
    } else if opts.blocks && hidden {
        let dec = decompose_commutant(
            &basis,
            &DecomposeOptions {
                seed: opts.seed,
                with_bases: Some(false),
                commutant: opts.commutant.clone(),
            },
        )?;
        Some(dec.dims)
    } else {
        None
    };
    Ok(CensusRecord {
        graph6: g.to_graph6(),
        n: g.n(),
        aut_order: rep.aut_order,
        commutant_dim: rep.commutant_dim,
        hidden,
        block_dims,
        elapsed_ms: opts.timings.then(|| t.elapsed().as_millis() as u64),
    })
}

/// Census of all connected graphs on `n` vertices (all graphs when `connected_only` is off).
pub fn run_census(
    n: usize,
    checkpoint: Option<&Path>,
    opts: &CensusOptions,
) -> Result<CensusSummary> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidGraph(format!(
            "census supports 2..=8 vertices, got {n}"
        )));
    }
    let graphs = if opts.connected_only {
        enumerate_connected(n)?
    } else {
        enumerate_all(n)?
    };
    run_census_on(n, &graphs, checkpoint, opts)
}

/// Census over given graphs: the (connected) asymmetric ones are analyzed and written, sorted
/// by graph6, to the checkpoint; the summary line is appended once every graph is done.
pub fn run_census_on(
    n: usize,
    graphs: &[Graph],
    checkpoint: Option<&Path>,
    opts: &CensusOptions,
) -> Result<CensusSummary> {
    let considered: Vec<&Graph> = graphs
        .iter()
        .filter(|g| g.n() == n && (!opts.connected_only || g.is_connected()))
        .collect();
    let total_connected = considered.iter().filter(|g| g.is_connected()).count();
    let mut todo: Vec<&Graph> = considered
        .iter()
        .copied()
        .filter(|g| automorphism_group(g).is_trivial())
        .collect();
    todo.sort_by_key(|g| g.to_graph6());
    todo.dedup_by_key(|g| g.to_graph6());

    let keys: std::collections::BTreeSet<String> = todo.iter().map(|g| g.to_graph6()).collect();
    let mut done: BTreeMap<String, CensusRecord> = BTreeMap::new();
    if let (Some(path), true) = (checkpoint, opts.resume) {
        if path.exists() {
            let (records, _) = read_records(path)?;
            for r in records {
                if r.n != n || !keys.contains(&r.graph6) {
                    return Err(Error::Checkpoint {
                        line: 0,
                        msg: format!("record {} does not belong to this census", r.graph6),
                    });
                }
                done.insert(r.graph6.clone(), r);
            }
        }
    }
    let pending: Vec<&Graph> = todo
        .iter()
        .copied()
        .filter(|g| !done.contains_key(&g.to_graph6()))
        .collect();
    let limit = opts.max_new.unwrap_or(usize::MAX).min(pending.len());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    for chunk in pending[..limit].chunks(opts.flush_every.max(1)) {
        let results: Vec<Result<CensusRecord>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|g| {
                    catch_unwind(AssertUnwindSafe(|| analyze_graph(g, opts)))
                        .unwrap_or_else(|_| Err(Error::WorkerPanic(g.to_graph6())))
                })
                .collect()
        });
        for r in results {
            let r = r?;
            done.insert(r.graph6.clone(), r);
        }
        if let Some(path) = checkpoint {
            let recs: Vec<CensusRecord> = done.values().cloned().collect();
            write_records(path, &recs, None)?;
        }
    }
    if limit < pending.len() {
        return Err(Error::Budget(format!(
            "stopped after {limit} new graphs; {} remain",
            pending.len() - limit
        )));
    }
    let records: Vec<CensusRecord> = done.into_values().collect();
    let summary = CensusSummary::from_records(n, considered.len(), total_connected, &records);
    if let Some(path) = checkpoint {
        write_records(path, &records, Some(&summary))?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_n5_has_no_asymmetric_graphs() {
        let s = run_census(5, None, &CensusOptions::default()).unwrap();
        assert_eq!(s.total_connected, 21);
        assert_eq!(s.total_asymmetric, 0);
    }
}
