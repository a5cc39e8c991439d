//! Machine checks for the identities and structural statements satisfied by
//! realized nu(G) groups, plus the instrumented family computations.

mod checks;
mod families;
mod theorem;
mod witness;

pub use checks::{
    check_basic_identities, check_comm_finiteness, check_commutator_vs_tensor_class,
    check_coset_length, check_quotient_is_g, check_rho_decomposition, check_theta_centralizes,
    max_tensor_class,
};
pub use families::{family_dihedral, family_prufer_truncation, DihedralRow, PruferRow};
pub use theorem::{theorem_a_row, theorem_a_row_for, TheoremARow};
pub use witness::{
    build_hypothesis_witness, check_hypothesis_remark, check_proposition_u1, check_utheta_lemma,
    HypothesisWitness,
};

use serde::{Deserialize, Serialize};

/// How a universally quantified statement was exercised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// Outcome of one check; a failure always carries a counterexample tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub scope: Scope,
    pub passed: bool,
    pub counterexample: Option<Vec<String>>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, scope: Scope) -> Self {
        CheckReport {
            name: name.into(),
            scope,
            passed: true,
            counterexample: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, scope: Scope, counterexample: Vec<String>) -> Self {
        CheckReport {
            name: name.into(),
            scope,
            passed: false,
            counterexample: Some(counterexample),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Picks exhaustive verification for small tuple spaces and seeded sampling
/// beyond the limit.
#[derive(Clone, Copy, Debug)]
pub struct ScopePolicy {
    pub exhaustive_limit: u128,
    pub sample_count: u64,
    pub seed: u64,
}

impl ScopePolicy {
    pub fn with_seed(seed: u64) -> Self {
        ScopePolicy {
            exhaustive_limit: 1_000_000,
            sample_count: 10_000,
            seed,
        }
    }

    pub fn decide(&self, space: u128) -> Scope {
        if space <= self.exhaustive_limit {
            Scope::Exhaustive
        } else {
            Scope::Sampled {
                count: self.sample_count,
                seed: self.seed,
            }
        }
    }
}

impl Default for ScopePolicy {
    fn default() -> Self {
        ScopePolicy::with_seed(42)
    }
}
