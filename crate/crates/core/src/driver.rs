//! Suite assembly: runs the verification checks and instrumentation rows for
//! corpus entries and packs the outcomes into report documents.

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::nu::{realize_nu, Caps, NuGroup, NuMode};
use crate::report::{CheckRecord, ReportDocument, RowRecord};
use crate::verify::{
    build_hypothesis_witness, check_basic_identities, check_comm_finiteness,
    check_commutator_vs_tensor_class, check_coset_length, check_hypothesis_remark,
    check_proposition_u1, check_quotient_is_g, check_rho_decomposition, check_theta_centralizes,
    check_utheta_lemma, theorem_a_row_for, CheckReport, Scope, ScopePolicy,
};

/// The hypothesis and proposition suites run only below this nu(G) order.
pub const HYPOTHESIS_NU_GATE: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Theta,
    Rho,
    Coset,
    Hypothesis,
    Proposition,
    TheoremA,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "theta" => Suite::Theta,
            "rho" => Suite::Rho,
            "coset" => Suite::Coset,
            "hypothesis" => Suite::Hypothesis,
            "proposition" => Suite::Proposition,
            "theorem-a" => Suite::TheoremA,
            "all" => Suite::All,
            other => {
                return Err(crate::error::Error::InternalCheck(format!(
                    "unknown suite `{other}`"
                )))
            }
        })
    }
}

impl Suite {
    fn covers(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Identity-style checks run exhaustively for |G| ≤ 6 and sampled with 10⁴
/// tuples otherwise.
pub fn identity_scope(n: &NuGroup, seed: u64) -> Scope {
    if n.g_order() <= 6 {
        Scope::Exhaustive
    } else {
        Scope::Sampled {
            count: 10_000,
            seed,
        }
    }
}

/// All checks of the selected suite for one realized group. Returns the check
/// reports and, when the theorem suite is selected, the instrumentation row.
pub fn run_suite(
    n: &NuGroup,
    suite: Suite,
    seed: u64,
) -> Result<(Vec<CheckReport>, Option<crate::verify::TheoremARow>)> {
    let policy = ScopePolicy::with_seed(seed);
    let mut checks = Vec::new();
    let mut row = None;

    if suite.covers(Suite::Identities) {
        checks.push(check_basic_identities(n, identity_scope(n, seed)));
    }
    if suite.covers(Suite::Rho) {
        checks.push(check_rho_decomposition(n, identity_scope(n, seed)));
    }
    if suite.covers(Suite::Theta) {
        checks.push(check_theta_centralizes(n, &policy));
        checks.push(check_quotient_is_g(n)?);
    }
    if suite.covers(Suite::Coset)
        || suite.covers(Suite::Hypothesis)
        || suite.covers(Suite::Proposition)
    {
        let witness = build_hypothesis_witness(n)?;
        if suite.covers(Suite::Coset) {
            checks.push(check_coset_length(n, &witness.c_of_a)?);
        }
        let gated = n.nu_order() <= HYPOTHESIS_NU_GATE;
        if suite.covers(Suite::Hypothesis) {
            if gated {
                checks.push(check_hypothesis_remark(n, &witness));
                checks.push(check_utheta_lemma(n, &witness, &policy));
            } else {
                checks.push(
                    CheckReport::pass("hypothesis-suite", Scope::Exhaustive).with_note(format!(
                        "not run: |nu(G)| = {} exceeds the {HYPOTHESIS_NU_GATE} gate",
                        n.nu_order()
                    )),
                );
            }
        }
        if suite.covers(Suite::Proposition) {
            if gated {
                checks.push(check_proposition_u1(n, &witness));
            } else {
                checks.push(
                    CheckReport::pass("u1-containments", Scope::Exhaustive).with_note(format!(
                        "not run: |nu(G)| = {} exceeds the {HYPOTHESIS_NU_GATE} gate",
                        n.nu_order()
                    )),
                );
            }
        }
    }
    if suite.covers(Suite::TheoremA) {
        let scope = if n.g_order() <= 12 {
            Scope::Exhaustive
        } else {
            policy.decide((n.g_order() as u128).pow(2))
        };
        checks.push(check_commutator_vs_tensor_class(n, scope));
        checks.push(check_comm_finiteness(n));
        row = Some(theorem_a_row_for(n));
    }

    Ok((checks, row))
}

/// Realize one corpus entry, labeling the result with the entry name.
pub fn realize_entry(entry: &CorpusEntry, caps: &Caps, mode: NuMode) -> Result<NuGroup> {
    let mut n = realize_nu(&entry.presentation, caps, mode)?;
    n.name = entry.name.clone();
    Ok(n)
}

/// Summary of one build, as printed by the build command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuildSummary {
    pub name: String,
    pub order_g: u64,
    pub order_nu: u64,
    pub order_h: u64,
    pub order_theta: u64,
    pub tensor_count: u64,
    pub mode: String,
}

impl BuildSummary {
    pub fn of(n: &NuGroup) -> Self {
        BuildSummary {
            name: n.name.clone(),
            order_g: n.g_order() as u64,
            order_nu: n.nu_order() as u64,
            order_h: n.h_order() as u64,
            order_theta: n.theta_order() as u64,
            tensor_count: n.tensors.len() as u64,
            mode: n.mode_used.to_string(),
        }
    }
}

/// Verify the selected suite over the given entries, producing a finalized
/// report document.
pub fn run_verify(
    entries: &[&CorpusEntry],
    suite: Suite,
    caps: &Caps,
    seed: u64,
    mode: NuMode,
) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(*caps, seed);
    for entry in entries {
        let n = realize_entry(entry, caps, mode)?;
        let (checks, row) = run_suite(&n, suite, seed)?;
        for c in checks {
            doc.checks.push(CheckRecord::new(entry.name.clone(), c));
        }
        if let Some(r) = row {
            doc.rows.push(RowRecord::complete(r));
        }
    }
    doc.finalize();
    Ok(doc)
}

/// Instrumentation rows for the given entries; enumeration failures become
/// incomplete rows rather than errors.
pub fn run_corpus_rows(
    entries: &[&CorpusEntry],
    caps: &Caps,
    seed: u64,
    mode: NuMode,
) -> ReportDocument {
    let mut doc = ReportDocument::new(*caps, seed);
    for entry in entries {
        match realize_entry(entry, caps, mode) {
            Ok(n) => doc.rows.push(RowRecord::complete(theorem_a_row_for(&n))),
            Err(e) => doc
                .rows
                .push(RowRecord::incomplete(entry.name.clone(), e.to_string())),
        }
    }
    doc.finalize();
    doc
}
