mod common;

use std::collections::BTreeSet;

use common::*;
use globalctl::census::{
    analyze_graph, census_query, decode_line, encode_record, enumerate_all, enumerate_connected,
    enumerate_connected_brute, read_records, run_census, CensusOptions, CensusRecord, Filter, Line,
};
use globalctl::graph::canonical_form;
use globalctl::Error;
use proptest::prelude::*;

const CONNECTED: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];
const ALL: [usize; 6] = [1, 2, 4, 11, 34, 156];

fn canonical_set(graphs: &[globalctl::graph::Graph]) -> BTreeSet<String> {
    graphs
        .iter()
        .map(|g| canonical_form(g).to_graph6())
        .collect()
}

#[test]
fn connected_counts() {
    for (i, &want) in CONNECTED.iter().enumerate() {
        let gs = enumerate_connected(i + 1).unwrap();
        assert_eq!(gs.len(), want, "n = {}", i + 1);
        assert!(gs.iter().all(|g| g.is_connected()));
        assert_eq!(
            canonical_set(&gs).len(),
            gs.len(),
            "isomorphic duplicates at n = {}",
            i + 1
        );
    }
}

#[test]
fn all_graph_counts() {
    for (i, &want) in ALL.iter().enumerate() {
        let gs = enumerate_all(i + 1).unwrap();
        assert_eq!(gs.len(), want);
        assert_eq!(canonical_set(&gs).len(), want);
    }
}

#[test]
fn augmentation_matches_brute_force() {
    for n in 1..=5 {
        let fast = enumerate_connected(n).unwrap();
        let brute = enumerate_connected_brute(n).unwrap();
        assert_eq!(canonical_set(&fast), canonical_set(&brute));
    }
}

#[test]
fn census_totals() {
    for (n, conn, asym, hidden) in [(5, 21, 0, 0), (6, 112, 8, 2), (7, 853, 144, 16)] {
        let s = run_census(n, None, &CensusOptions::default()).unwrap();
        assert_eq!(
            (s.total_connected, s.total_asymmetric, s.total_hidden),
            (conn, asym, hidden),
            "n = {n}"
        );
    }
}

#[test]
fn census_hits_at_six() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.jsonl");
    run_census(6, Some(&path), &CensusOptions::default()).unwrap();
    let (records, summary) = read_records(&path).unwrap();
    assert_eq!(records.len(), 8);
    assert!(summary.is_some());
    let keys: Vec<&str> = records.iter().map(|r| r.graph6.as_str()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let hits = census_query(&path, &"hidden == true".parse::<Filter>().unwrap()).unwrap();
    assert_eq!(hits.len(), 2);
    for h in &hits {
        assert_eq!(h.block_dims.as_deref(), Some(&[1, 63][..]));
        assert_eq!(h.aut_order, 1);
    }
    let big = census_query(
        &path,
        &"commutant_dim > 1 && n == 6".parse::<Filter>().unwrap(),
    )
    .unwrap();
    assert_eq!(big, hits);
}

#[test]
fn resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = dir.path().join("fresh.jsonl");
    let partial = dir.path().join("partial.jsonl");
    run_census(7, Some(&fresh), &CensusOptions::default()).unwrap();
    let stop = CensusOptions {
        max_new: Some(25),
        flush_every: 7,
        ..Default::default()
    };
    assert!(matches!(
        run_census(7, Some(&partial), &stop),
        Err(Error::Budget(_))
    ));
    let (part, summary) = read_records(&partial).unwrap();
    assert_eq!(part.len(), 25);
    assert!(summary.is_none());
    let resume = CensusOptions {
        resume: true,
        jobs: 3,
        ..Default::default()
    };
    run_census(7, Some(&partial), &resume).unwrap();
    assert_eq!(
        std::fs::read(&fresh).unwrap(),
        std::fs::read(&partial).unwrap()
    );
}

#[test]
fn corrupt_line_is_rejected() {
    let g = globalctl::graph::Graph::from_graph6("E@Uw").unwrap();
    let line = encode_record(&analyze_graph(&g, &CensusOptions::default()).unwrap());
    let tampered = line.replace("\"commutant_dim\":2", "\"commutant_dim\":3");
    assert_ne!(line, tampered);
    assert!(matches!(
        decode_line(&tampered, 4),
        Err(Error::Checkpoint { line: 4, .. })
    ));
}

fn arb_record() -> impl Strategy<Value = CensusRecord> {
    (
        arb_graph(2, 8),
        1u64..100,
        1usize..300,
        any::<bool>(),
        prop::option::of(prop::collection::vec(1usize..64, 1..5)),
    )
        .prop_map(
            |(g, aut_order, commutant_dim, hidden, block_dims)| CensusRecord {
                graph6: g.to_graph6(),
                n: g.n(),
                aut_order,
                commutant_dim,
                hidden,
                block_dims,
                elapsed_ms: None,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn record_round_trip(r in arb_record()) {
        let line = encode_record(&r);
        prop_assert!(!line.contains('\n'));
        match decode_line(&line, 1).unwrap() {
            Line::Record(back) => prop_assert_eq!(back, r),
            Line::Summary(_) => prop_assert!(false, "decoded a summary"),
        }
    }

    #[test]
    fn filter_agrees_with_predicate(r in arb_record(), k in 1usize..300) {
        let f: Filter = format!("commutant_dim >= {k} && hidden == {}", r.hidden).parse().unwrap();
        prop_assert_eq!(f.matches(&r), r.commutant_dim >= k);
        let g: Filter = format!("commutant_dim < {k}").parse().unwrap();
        prop_assert_eq!(g.matches(&r), r.commutant_dim < k);
    }
}
