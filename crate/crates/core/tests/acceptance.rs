//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion that fails for its documented reason (the failure signature is re-checked)
//! is reported as FAIL but does not fail the run; any other failure exits non-zero.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use globalctl::census::{
    enumerate_connected, enumerate_connected_brute, read_records, run_census, CensusOptions,
};
use globalctl::commutant::{commutant, commutant_fast, symmetry_report, CommutantBasis};
use globalctl::constructions::{
    build_result_one_from, build_result_two, verify_result_one, verify_result_two, Constructions,
    DenseChecks, SFormula,
};
use globalctl::graph::{automorphism_group, canonical_form, Graph};
use globalctl::lie::{adjoint_symmetry_dim, central_membership_with, lie_closure};
use globalctl::linalg::SparseMatrix;
use globalctl::pauli::{build_generators, x_all, PauliSum};
use globalctl::subspace::decompose;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for every sampled criterion, fixed before any run.
const SEED: u64 = 1;
/// Two-sided level of the binomial interval in criterion 8.
const BINOMIAL_LEVEL: f64 = 0.95;
const MIN_UNIVERSAL: usize = 90;

struct Outcome {
    pass: bool,
    /// Failure matches the documented signature.
    known: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            known: false,
            detail,
        }
    }
}

fn big(m: &SparseMatrix<i64>) -> SparseMatrix<BigInt> {
    m.map(|&v| BigInt::from(v))
}

fn hidden_symmetry(basis: &CommutantBasis) -> PauliSum {
    (0..basis.hermitian_count())
        .map(|k| basis.pauli(k).unwrap())
        .find(|p| !p.traceless_part().is_zero())
        .expect("non-scalar symmetric commutant element")
}

fn within(t: Duration, secs: u64) -> bool {
    t <= Duration::from_secs(secs)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let cfg = Constructions::builtin();
    let named = cfg.named("H").unwrap();
    let literal =
        verify_result_one(&build_result_one_from(named, SFormula::Literal).unwrap()).unwrap();
    let symmetric =
        verify_result_one(&build_result_one_from(named, SFormula::Symmetric).unwrap()).unwrap();
    let el = t.elapsed();
    let pass = literal.passed() && within(el, 10);
    let known = !pass
        && literal.aut_order == 1
        && literal.commutes_hx
        && literal.commutes_hz
        && !literal.commutes_hzz
        && symmetric.passed();
    Outcome {
        pass,
        known,
        detail: format!(
            "|Aut| = {}, literal S: [S,H_X]=0 {}, [S,H_Z]=0 {}, [S,H_ZZ]=0 {}; corrected (1-A)(1-B)(1-C)-1: {} ({:.2?})",
            literal.aut_order,
            literal.commutes_hx,
            literal.commutes_hz,
            literal.commutes_hzz,
            if symmetric.passed() { "all three commute" } else { "fails" },
            el
        ),
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let g = Constructions::builtin()
        .named("H")
        .unwrap()
        .graph()
        .unwrap();
    let h_dims = decompose(&build_generators(&g, true)).unwrap().dims;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census7.jsonl");
    run_census(7, Some(&path), &CensusOptions::default()).unwrap();
    let (records, _) = read_records(&path).unwrap();
    let hits: Vec<_> = records.iter().filter(|r| r.hidden).collect();
    let mut profiles: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for r in &hits {
        *profiles
            .entry(r.block_dims.clone().unwrap_or_default())
            .or_default() += 1;
    }
    let el = t.elapsed();
    let pass = h_dims == [2, 126]
        && hits.len() == 16
        && profiles.len() == 1
        && profiles.contains_key(&vec![2, 126]);
    Outcome::check(
        pass && within(el, 300),
        format!(
            "H dims {h_dims:?}; {} census hits, profiles {profiles:?} ({el:.2?})",
            hits.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let expected = [(6, 8, 2, 60), (7, 144, 16, 1800), (8, 3696, 228, 8 * 3600)];
    let mut parts = Vec::new();
    let mut pass = true;
    let mut got8 = (0, 0);
    for (n, asym, hidden, budget) in expected {
        let t = Instant::now();
        let s = run_census(n, None, &CensusOptions::default()).unwrap();
        let el = t.elapsed();
        let ok = s.total_asymmetric == asym && s.total_hidden == hidden && within(el, budget);
        pass &= ok;
        if n == 8 {
            got8 = (s.total_asymmetric, s.total_hidden);
        }
        parts.push(format!(
            "n={n} {}/{} (want {asym}/{hidden}, {el:.1?})",
            s.total_asymmetric, s.total_hidden
        ));
    }
    let all = run_census(
        8,
        None,
        &CensusOptions {
            connected_only: false,
            ..Default::default()
        },
    )
    .unwrap();
    parts.push(format!(
        "all graphs n=8: {}/{}",
        all.total_asymmetric, all.total_hidden
    ));
    Outcome {
        pass,
        known: !pass
            && got8 == (3552, 228)
            && (all.total_asymmetric, all.total_hidden) == (3696, 244),
        detail: parts.join("; "),
    }
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for g6 in ["E@Uw", "E@^W"] {
        let t = Instant::now();
        let g = Graph::from_graph6(g6).unwrap();
        let gens = build_generators(&g, true);
        let basis = commutant_fast(6, &gens).unwrap();
        let s = hidden_symmetry(&basis);
        let central = central_membership_with(&gens, &s, &basis).unwrap();
        let closure = lie_closure(&gens, None).unwrap();
        let inside = closure.contains(&s).unwrap();
        pass &= central && inside && !closure.universal();
        parts.push(format!(
            "{g6}: commutant {}, central projection {central}, closure dim {} contains S {inside} ({:.1?})",
            basis.dim(),
            closure.dim(),
            t.elapsed()
        ));
    }
    Outcome::check(pass, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let b = build_result_two(7).unwrap();
    let r = verify_result_two(
        &b,
        DenseChecks {
            commutant: true,
            blocks: true,
        },
    );
    let el = t.elapsed();
    match r {
        Ok(r) => {
            let d = r.dense.clone().unwrap();
            let dims = d.block_dims.clone().unwrap_or_default();
            let pass = r.passed()
                && r.breaks_all_automorphisms
                && d.extended_commutant_dim >= 2
                && dims == [128, 1920]
                && within(el, 600);
            Outcome::check(
                pass,
                format!(
                    "n = {}, identities hold, breaks all automorphisms {}, extended commutant {}, contains R1+R2-R1R2 {}, verdict {:?}, blocks {dims:?} ({el:.1?})",
                    r.n, r.breaks_all_automorphisms, d.extended_commutant_dim, d.contains_combination, d.verdict
                ),
            )
        }
        Err(e) => Outcome::check(false, format!("identity failed: {e}")),
    }
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=3 {
        for g in enumerate_connected(n).unwrap() {
            let gens = build_generators(&g, true);
            let c = lie_closure(&gens, None).unwrap();
            let full = c.dim() == (1 << (2 * n)) - 1;
            let adj = adjoint_symmetry_dim(&gens).unwrap();
            let comm = commutant_fast(n, &gens).unwrap().dim();
            pass &= full == (adj == 2) && (!full || comm == 1) && !c.budget_hit();
            rows.push(format!(
                "{} dim {} adj {adj} comm {comm}",
                g.to_graph6(),
                c.dim()
            ));
        }
    }
    Outcome::check(
        pass && within(t.elapsed(), 300),
        format!("{} ({:.2?})", rows.join(", "), t.elapsed()),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = 0;
    for _ in 0..50 {
        let n = rng.random_range(3..=6);
        let g = random_connected(n, &mut rng);
        let px = big(&x_all(n).to_integer_matrix().unwrap());
        let qaoa = commutant_fast(n, &build_generators(&g, false)).unwrap();
        let full = commutant_fast(n, &build_generators(&g, true)).unwrap();
        if qaoa.contains(&px) && !full.contains(&px) {
            ok += 1;
        }
    }
    Outcome::check(
        ok == 50,
        format!("{ok}/50 graphs: X^n in QAOA commutant and not in the full one"),
    )
}

fn binomial_pmf(trials: usize, p: f64) -> Vec<f64> {
    let mut pmf = vec![0.0; trials + 1];
    pmf[0] = (1.0 - p).powi(trials as i32);
    for k in 1..=trials {
        pmf[k] = pmf[k - 1] * (trials - k + 1) as f64 / k as f64 * p / (1.0 - p);
    }
    pmf
}

/// Central `level` interval of Bin(trials, p).
fn binomial_interval(trials: usize, p: f64, level: f64) -> (usize, usize) {
    let pmf = binomial_pmf(trials, p);
    let tail = (1.0 - level) / 2.0;
    let mut acc = 0.0;
    let mut lo = 0;
    while acc + pmf[lo] <= tail {
        acc += pmf[lo];
        lo += 1;
    }
    acc = 0.0;
    let mut hi = trials;
    while acc + pmf[hi] <= tail {
        acc += pmf[hi];
        hi -= 1;
    }
    (lo, hi)
}

fn criterion_8() -> Outcome {
    let mut pool = Vec::new();
    for n in [6, 7] {
        pool.extend(
            enumerate_connected(n)
                .unwrap()
                .into_iter()
                .filter(|g| automorphism_group(g).is_trivial()),
        );
    }
    let census_hidden = pool
        .iter()
        .filter(|g| symmetry_report(g, None).unwrap().commutant_dim > 1)
        .count();
    let ratio = census_hidden as f64 / pool.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut hidden, mut universal) = (0, 0);
    for _ in 0..100 {
        let g = &pool[rng.random_range(0..pool.len())];
        let r = symmetry_report(g, None).unwrap();
        if r.commutant_dim == 1 {
            universal += 1;
        } else {
            hidden += 1;
        }
    }
    let (lo, hi) = binomial_interval(100, ratio, BINOMIAL_LEVEL);
    let in_band = (lo..=hi).contains(&hidden);
    let pass = in_band && universal >= MIN_UNIVERSAL;
    let p_reach: f64 = binomial_pmf(100, 1.0 - ratio)[MIN_UNIVERSAL..].iter().sum();
    Outcome {
        pass,
        known: !pass && in_band && universal < MIN_UNIVERSAL,
        detail: format!(
            "pool {} graphs, census hidden ratio {census_hidden}/{} = {ratio:.4}; sample (seed {SEED}): hidden {hidden} (95% band [{lo}, {hi}]), commutant-trivial {universal} (need >= {MIN_UNIVERSAL}; P = {p_reach:.3} under the census ratio)",
            pool.len(),
            pool.len()
        ),
    }
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        for g in enumerate_connected(n).unwrap() {
            for full in [true, false] {
                let gens = build_generators(&g, full);
                let fast = commutant_fast(n, &gens).unwrap();
                let brute = commutant(n, &gens).unwrap();
                checked += 1;
                if fast.dim() != brute.dim() || !brute.basis().iter().all(|b| fast.contains(b)) {
                    bad.push(format!("commutant {}", g.to_graph6()));
                }
            }
        }
    }
    let mut closures = 0;
    for n in 1..=3 {
        for g in enumerate_connected(n).unwrap() {
            for full in [true, false] {
                let gens = build_generators(&g, full);
                closures += 1;
                if lie_closure(&gens, None).unwrap().dim() != dense_closure_dim(&gens) {
                    bad.push(format!("closure {}", g.to_graph6()));
                }
            }
        }
    }
    let mut counts = Vec::new();
    for n in 1..=5 {
        let fast = enumerate_connected(n).unwrap();
        let brute = enumerate_connected_brute(n).unwrap();
        let canon = |gs: &[Graph]| {
            let mut v: Vec<String> = gs.iter().map(|g| canonical_form(g).to_graph6()).collect();
            v.sort();
            v
        };
        if fast.len() != brute.len() || canon(&fast) != canon(&brute) {
            bad.push(format!("enumeration n={n}"));
        }
        counts.push(fast.len());
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{checked} commutant pairs, {closures} closures, connected counts {counts:?}{} ({:.1?})",
            if bad.is_empty() { String::new() } else { format!(", mismatches {bad:?}") },
            t.elapsed()
        ),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (k, f) in criteria {
        let o = f();
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented)",
            (false, false) => "FAIL",
        };
        println!("criterion {k}: {tag}: {}", o.detail);
        if !o.pass {
            failed += 1;
            unexpected += usize::from(!o.known);
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({unexpected} unexpected)",
        9 - failed
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
