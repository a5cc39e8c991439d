//! Witness data for the bounded-tensor-class hypothesis and the checks built
//! on top of it.
//!
//! With m the largest index of C_H(x) in H over tensors x, a tensor a
//! attaining m is fixed together with elements b_1, …, b_m of H of tensor
//! length at most m−1 whose conjugates a^(b_i) exhaust a^H. The subgroup
//! U = C_nu(⟨b_1, …, b_m⟩) contains Theta(G), and
//! U₁ = U ∩ U^(d⁻¹) ∩ U^(d⁻¹e⁻¹) (for a = [d, e^phi]) satisfies the two
//! commutator-subgroup containments checked by `check_proposition_u1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nu::NuGroup;
use crate::perm::{extract_gens, PermGroup, Point, PointSet};
use crate::verify::{CheckReport, Scope, ScopePolicy};

#[derive(Clone, Debug)]
pub struct HypothesisWitness {
    /// The chosen tensor with maximal conjugate count in H.
    pub a: Point,
    /// (d, e) element indices with a = [d, e^phi].
    pub witness_pair: (u32, u32),
    /// Index of C_H(a) in H, maximal over all tensors.
    pub m: u64,
    /// One element per coset of C_H(a), of minimal tensor length (tie-broken
    /// by smallest point), with {a^(b_i)} = a^H.
    pub b: Vec<Point>,
    pub c_of_a: PointSet,
    pub u_points: PointSet,
    pub u1_points: PointSet,
    pub u: PermGroup,
    pub u1: PermGroup,
}

/// Deterministic witness construction. The maximal tensor is tie-broken by
/// witness order; coset representatives come from the length-ordered
/// breadth-first listing of H.
pub fn build_hypothesis_witness(n: &NuGroup) -> Result<HypothesisWitness> {
    let reg = &n.reg;
    let h_tables: Vec<Vec<Point>> = n
        .h_gens
        .iter()
        .map(|&g| reg.conj_table_of(g))
        .collect();

    // First tensor attaining the maximal conjugate count, in witness order.
    let mut a = n.tensors.points()[0];
    let mut pair = n.tensors.witness_of(0);
    let mut m = reg.class_of(a, &h_tables).len();
    for (i, &t) in n.tensors.points().iter().enumerate().skip(1) {
        let class = reg.class_of(t, &h_tables).len();
        if class > m {
            m = class;
            a = t;
            pair = n.tensors.witness_of(i);
        }
    }

    let c_of_a = PointSet::from_unsorted(
        n.h_points
            .iter()
            .filter(|&h| reg.conj(a, h) == a)
            .collect(),
    );
    debug_assert_eq!(c_of_a.len() * m, n.h_order());

    // One representative per conjugate of a: minimal length first (h_bfs is
    // length-ordered), then smallest point within the same length.
    let mut conjugates: Vec<Point> = Vec::new();
    let mut picks: Vec<(u32, Point)> = Vec::new();
    for &h in &n.h_bfs {
        let v = reg.conj(a, h);
        let len = n.tensors.length_of(h).expect("member of H");
        match conjugates.iter().position(|&c| c == v) {
            None => {
                conjugates.push(v);
                picks.push((len, h));
            }
            Some(i) => {
                if picks[i].0 == len && h < picks[i].1 {
                    picks[i].1 = h;
                }
            }
        }
    }
    if conjugates.len() != m {
        return Err(Error::InternalCheck(format!(
            "a has {} conjugates under H, expected {m}",
            conjugates.len()
        )));
    }
    for &(len, _) in &picks {
        if len as usize > m - 1 {
            return Err(Error::InternalCheck(format!(
                "coset representative has tensor length {len} > m-1 = {}",
                m - 1
            )));
        }
    }
    let b: Vec<Point> = picks.iter().map(|&(_, h)| h).collect();

    let u_points = reg.commuting_filter(&b);
    let d = n.emb_g[pair.0 as usize];
    let e = n.emb_g[pair.1 as usize];
    let conj_dinv = reg.conj_table_of(reg.inv(d));
    let conj_dinv_einv = reg.conj_table_of(reg.mul(reg.inv(d), reg.inv(e)));
    let u1_points = u_points
        .intersection(&u_points.map_through(&conj_dinv))
        .intersection(&u_points.map_through(&conj_dinv_einv));

    let u = subgroup_from_points(n, &u_points)?;
    let u1 = subgroup_from_points(n, &u1_points)?;

    Ok(HypothesisWitness {
        a,
        witness_pair: pair,
        m: m as u64,
        b,
        c_of_a,
        u_points,
        u1_points,
        u,
        u1,
    })
}

fn subgroup_from_points(n: &NuGroup, points: &PointSet) -> Result<PermGroup> {
    let gens = extract_gens(&n.reg, points);
    PermGroup::from_free_action(
        n.nu_order(),
        &gens.iter().map(|&p| n.reg.perm_of(p)).collect::<Vec<_>>(),
    )
}

/// Theta(G) is contained in U.
pub fn check_hypothesis_remark(n: &NuGroup, w: &HypothesisWitness) -> CheckReport {
    let name = "theta-contained-in-u";
    match n
        .theta_points
        .iter()
        .find(|&t| !w.u_points.contains(t))
    {
        None => CheckReport::pass(name, Scope::Exhaustive),
        Some(t) => CheckReport::fail(
            name,
            Scope::Exhaustive,
            vec![format!("theta element nu point {t} does not centralize the b_i")],
        ),
    }
}

/// If u ∈ U and u·a is a tensor, then [H, u] ≤ [H, a].
pub fn check_utheta_lemma(n: &NuGroup, w: &HypothesisWitness, policy: &ScopePolicy) -> CheckReport {
    let name = "u-translate-commutator-containment";
    let reg = &n.reg;
    let rhs = comm_subgroup(n, w.a);
    let scope = policy.decide(w.u_points.len() as u128);

    let qualifies = |u: Point| -> bool { n.tensors.contains(reg.mul(u, w.a)) };
    let contained = |u: Point| -> bool {
        let comms: Vec<Point> = n.h_points.iter().map(|h| reg.comm(h, u)).collect();
        reg.span(&comms).is_subset_of(&rhs)
    };

    match scope {
        Scope::Exhaustive => {
            for u in w.u_points.iter() {
                if qualifies(u) && !contained(u) {
                    return CheckReport::fail(
                        name,
                        scope,
                        vec![format!("u = nu point {u}")],
                    );
                }
            }
        }
        Scope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let us = w.u_points.as_slice();
            for _ in 0..count {
                let u = us[rng.gen_range(0..us.len())];
                if qualifies(u) && !contained(u) {
                    return CheckReport::fail(
                        name,
                        scope,
                        vec![format!("u = nu point {u}")],
                    );
                }
            }
        }
    }
    CheckReport::pass(name, scope)
}

/// The subgroup ⟨[h, x] : h ∈ H⟩ for a fixed x.
fn comm_subgroup(n: &NuGroup, x: Point) -> PointSet {
    let comms: Vec<Point> = n.h_points.iter().map(|h| n.reg.comm(h, x)).collect();
    n.reg.span(&comms)
}

/// The subgroup ⟨[h, x] : h ∈ H, x ∈ xs⟩.
fn comm_subgroup_with(n: &NuGroup, xs: &[Point]) -> PointSet {
    let mut comms = Vec::with_capacity(n.h_order() * xs.len());
    for h in n.h_points.iter() {
        for &x in xs {
            comms.push(n.reg.comm(h, x));
        }
    }
    n.reg.span(&comms)
}

/// Both containments furnished by U₁ = U ∩ U^(d⁻¹) ∩ U^(d⁻¹e⁻¹):
/// [H, U₁'] ≤ [H, a]^(d⁻¹) and [H, [U₁, d]] ≤ [H, a].
pub fn check_proposition_u1(n: &NuGroup, w: &HypothesisWitness) -> CheckReport {
    let name = "u1-containments";
    let reg = &n.reg;
    let rhs = comm_subgroup(n, w.a);
    let d = n.emb_g[w.witness_pair.0 as usize];

    // Derived subgroup of U₁ inside the point calculus: normal closure of the
    // generator commutators under conjugation by the U₁ generators.
    let u1_gens = extract_gens(reg, &w.u1_points);
    let mut seeds = Vec::new();
    for &x in &u1_gens {
        for &y in &u1_gens {
            let c = reg.comm(x, y);
            if c != 0 && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    let u1_tables: Vec<Vec<Point>> = u1_gens.iter().map(|&g| reg.conj_table_of(g)).collect();
    let (u1_derived, _) = reg.normal_closure(&seeds, &u1_tables);

    let lhs1 = comm_subgroup_with(n, u1_derived.as_slice());
    let rhs1 = rhs.map_through(&reg.conj_table_of(reg.inv(d)));
    if !lhs1.is_subset_of(&rhs1) {
        return CheckReport::fail(
            name,
            Scope::Exhaustive,
            vec![format!(
                "[H, U1'] has order {} and is not inside [H, a]^(d^-1) of order {}",
                lhs1.len(),
                rhs1.len()
            )],
        );
    }

    // [U₁, d] = ⟨[u, d] : u ∈ U₁⟩.
    let comms_with_d: Vec<Point> = w.u1_points.iter().map(|u| reg.comm(u, d)).collect();
    let u1_d = reg.span(&comms_with_d);
    let lhs2 = comm_subgroup_with(n, u1_d.as_slice());
    if !lhs2.is_subset_of(&rhs) {
        return CheckReport::fail(
            name,
            Scope::Exhaustive,
            vec![format!(
                "[H, [U1, d]] has order {} and is not inside [H, a] of order {}",
                lhs2.len(),
                rhs.len()
            )],
        );
    }
    CheckReport::pass(name, Scope::Exhaustive)
}
