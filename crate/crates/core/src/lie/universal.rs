use serde::{Deserialize, Serialize};

use super::{lie_closure_with, ClosureMethod, ClosureOptions};
use crate::commutant::{symmetry_report_with, CommutantOptions};
use crate::error::Result;
use crate::graph::Graph;
use crate::pauli::{build_generators, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Universal,
    NotUniversal,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityReport {
    pub verdict: Verdict,
    pub commutant_dim: usize,
    pub lie_dim: Option<usize>,
    pub budget_hit: bool,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct UniversalityOptions {
    /// Largest qubit count for which the closure is computed.
    pub closure_max_qubits: usize,
    pub commutant: CommutantOptions,
}

impl Default for UniversalityOptions {
    fn default() -> Self {
        UniversalityOptions {
            closure_max_qubits: 4,
            commutant: CommutantOptions::default(),
        }
    }
}

/// Universality of the full global-control set of `g`, optionally extended by `extra`.
pub fn is_universal(g: &Graph, extra: Option<&PauliSum>) -> Result<UniversalityReport> {
    is_universal_with(g, extra, &UniversalityOptions::default())
}

/// Decision pipeline: a nontrivial commutant rules universality out; otherwise the closure
/// decides when the system is small enough, and the verdict is undecided beyond that.
pub fn is_universal_with(
    g: &Graph,
    extra: Option<&PauliSum>,
    opts: &UniversalityOptions,
) -> Result<UniversalityReport> {
    let (rep, _) = symmetry_report_with(g, extra, &opts.commutant)?;
    let commutant_dim = rep.commutant_dim;
    if commutant_dim > 1 {
        return Ok(UniversalityReport {
            verdict: Verdict::NotUniversal,
            commutant_dim,
            lie_dim: None,
            budget_hit: false,
            reason: format!("commutant has dimension {commutant_dim} > 1"),
        });
    }
    let n = g.n();
    if n > opts.closure_max_qubits {
        return Ok(UniversalityReport {
            verdict: Verdict::Undecided,
            commutant_dim,
            lie_dim: None,
            budget_hit: false,
            reason: format!(
                "trivial commutant; closure skipped above {} qubits",
                opts.closure_max_qubits
            ),
        });
    }
    let mut gens = build_generators(g, true);
    if let Some(e) = extra {
        gens.push(e.clone());
    }
    let mut closure = lie_closure_with(&gens, &ClosureOptions::default())?;
    if closure.universal() && closure.method() == ClosureMethod::Float {
        closure = lie_closure_with(
            &gens,
            &ClosureOptions {
                method: Some(ClosureMethod::Exact),
                ..Default::default()
            },
        )?;
    }
    let full = (1usize << (2 * n)) - 1;
    let (verdict, reason) = if closure.budget_hit() {
        (
            Verdict::Undecided,
            format!("closure budget hit at dimension {}", closure.dim()),
        )
    } else if closure.universal() {
        (Verdict::Universal, format!("closure dimension {full}"))
    } else {
        (
            Verdict::NotUniversal,
            format!("closure dimension {} < {full}", closure.dim()),
        )
    };
    Ok(UniversalityReport {
        verdict,
        commutant_dim,
        lie_dim: Some(closure.dim()),
        budget_hit: closure.budget_hit(),
        reason,
    })
}
