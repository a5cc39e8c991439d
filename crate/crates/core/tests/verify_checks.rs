//! The verification checks exercised on small realized groups, following the
//! per-operation example cases.

use nu_core::nu::{realize_nu, NuMode};
use nu_core::perm::{abelian_invariants, extract_gens, PointSet};
use nu_core::verify::{
    build_hypothesis_witness, check_basic_identities, check_comm_finiteness,
    check_commutator_vs_tensor_class, check_coset_length, check_hypothesis_remark,
    check_proposition_u1, check_quotient_is_g, check_rho_decomposition, check_theta_centralizes,
    check_utheta_lemma, max_tensor_class, theorem_a_row_for, Scope, ScopePolicy,
};
use nu_core::{parse_presentation, Caps, NuGroup};

fn realize(src: &str) -> NuGroup {
    let p = parse_presentation(src).unwrap();
    realize_nu(&p, &Caps::default(), NuMode::GeneratorTriples).unwrap()
}

fn trivial() -> NuGroup {
    realize("group T { gens: ; rels: ; }")
}

fn c2() -> NuGroup {
    realize("group C2 { gens: a; rels: a^2; }")
}

fn s3() -> NuGroup {
    realize("group S3 { gens: a,b; rels: a^3, b^2, (a*b)^2; }")
}

fn d4() -> NuGroup {
    realize("group D4 { gens: a,b; rels: a^4, b^2, (a*b)^2; }")
}

#[test]
fn basic_identities_examples() {
    let r = check_basic_identities(&trivial(), Scope::Exhaustive);
    assert!(r.passed);

    let r = check_basic_identities(&c2(), Scope::Exhaustive);
    assert!(r.passed);
    assert_eq!(r.scope, Scope::Exhaustive);

    let scope = Scope::Sampled {
        count: 1000,
        seed: 42,
    };
    let r = check_basic_identities(&s3(), scope);
    assert!(r.passed);
    assert_eq!(r.scope, scope);
}

#[test]
fn rho_decomposition_examples() {
    // C2: exhaustive over all 64 pairs of nu(C2).
    let r = check_rho_decomposition(&c2(), Scope::Exhaustive);
    assert!(r.passed);

    let n = s3();
    let r = check_rho_decomposition(
        &n,
        Scope::Sampled {
            count: 2000,
            seed: 7,
        },
    );
    assert!(r.passed);

    // Elements of Theta centralize tensors directly.
    for &t in n.tensors.points() {
        for theta in n.theta_points.iter().take(20) {
            assert_eq!(n.reg.conj(t, theta), t);
        }
    }
}

#[test]
fn theta_checks() {
    for n in [c2(), s3(), d4()] {
        assert!(check_theta_centralizes(&n, &ScopePolicy::default()).passed);
        assert!(check_quotient_is_g(&n).unwrap().passed);
    }
}

#[test]
fn coset_length_with_whole_group() {
    // C = H: a single coset whose minimal length is 0.
    let n = c2();
    let r = check_coset_length(&n, &n.h_points).unwrap();
    assert!(r.passed);
}

#[test]
fn coset_length_with_witness_centralizer() {
    for n in [s3(), d4()] {
        let w = build_hypothesis_witness(&n).unwrap();
        let r = check_coset_length(&n, &w.c_of_a).unwrap();
        assert!(r.passed, "{}", n.name);
    }
}

#[test]
fn coset_length_with_index_two_subgroup_of_h() {
    // An index-2 subgroup of H for nu(D4): every coset must contain an
    // element of tensor length ≤ 1.
    let n = d4();
    let reg = &n.reg;
    // Squares and commutators span the kernel of the largest elementary
    // abelian 2-quotient of H.
    let mut seeds: Vec<u32> = n.h_points.iter().map(|h| reg.mul(h, h)).collect();
    for a in n.h_points.iter() {
        for b in n.h_points.iter() {
            seeds.push(reg.comm(a, b));
        }
    }
    let frattini = reg.span(&seeds);
    // Extend by all basis vectors but one to reach index 2.
    let basis: Vec<u32> = {
        let mut kept = Vec::new();
        let mut span = frattini.clone();
        for h in n.h_points.iter() {
            if !span.contains(h) {
                kept.push(h);
                let mut gens: Vec<u32> = span.iter().collect();
                gens.push(h);
                span = reg.span(&gens);
            }
        }
        kept
    };
    assert!(!basis.is_empty());
    let mut gens: Vec<u32> = frattini.iter().collect();
    gens.extend_from_slice(&basis[1..]);
    let c = reg.span(&gens);
    assert_eq!(c.len() * 2, n.h_order());
    let r = check_coset_length(&n, &c).unwrap();
    assert!(r.passed);
}

#[test]
fn coset_length_rejects_non_subgroups() {
    let n = s3();
    // {1, x} with x of order > 2 is not closed under products.
    let x = n
        .h_points
        .iter()
        .find(|&h| h != 0 && n.reg.element_order(h) > 2)
        .unwrap();
    let not_closed = PointSet::from_unsorted(vec![0, x]);
    assert!(check_coset_length(&n, &not_closed).is_err());

    // A set reaching outside H is rejected as well.
    let p = (0..n.nu_order() as u32)
        .find(|&p| !n.h_points.contains(p))
        .unwrap();
    let outside = PointSet::from_unsorted(vec![0, p]);
    assert!(check_coset_length(&n, &outside).is_err());
}

#[test]
fn max_tensor_class_examples() {
    // Abelian: every tensor is central, so the maximum is 1.
    let k4 = realize("group K4 { gens: a,b; rels: a^2, b^2, [a,b]; }");
    assert_eq!(max_tensor_class(&k4), 1);

    // Inversion truncations stay within the bound 4.
    for src in [
        "group P31 { gens: a,b; rels: a^3, b^2, a^b = a^-1; }",
        "group P32 { gens: a,b; rels: a^9, b^2, a^b = a^-1; }",
    ] {
        let n = realize(src);
        assert!(max_tensor_class(&n) <= 4, "{src}");
    }
}

#[test]
fn theorem_a_rows() {
    let k4 = realize("group K4 { gens: a,b; rels: a^2, b^2, [a,b]; }");
    let row = theorem_a_row_for(&k4);
    assert_eq!(row.n_max_tensor_class, 1);
    assert_eq!(row.order_nu_second_derived, 1);
    assert!(row.formula_ok);

    let row = theorem_a_row_for(&s3());
    assert!(row.formula_ok);
    assert_eq!(row.order_g_second_derived, 1);

    let row = theorem_a_row_for(&d4());
    assert!(row.formula_ok);
    assert_eq!(row.order_g_second_derived, 1);
}

#[test]
fn commutator_vs_tensor_class_examples() {
    for n in [s3(), d4()] {
        let r = check_commutator_vs_tensor_class(&n, Scope::Exhaustive);
        assert!(r.passed, "{}", n.name);
    }
}

#[test]
fn hypothesis_witness_examples() {
    // Abelian: m = 1, b = {identity}, U = nu(G).
    let c4 = realize("group C4 { gens: a; rels: a^4; }");
    let w = build_hypothesis_witness(&c4).unwrap();
    assert_eq!(w.m, 1);
    assert_eq!(w.b, vec![0]);
    assert_eq!(w.u_points.len(), c4.nu_order());
    assert!(check_hypothesis_remark(&c4, &w).passed);

    for n in [s3(), d4()] {
        let w = build_hypothesis_witness(&n).unwrap();
        assert_eq!(w.c_of_a.len() as u64 * w.m, n.h_order() as u64);
        assert_eq!(w.b.len() as u64, w.m);
        for &b in &w.b {
            assert!(n.tensor_length_point(b).unwrap() as u64 <= w.m - 1);
        }
        // The conjugates a^(b_i) exhaust the H-class of a.
        let mut conjugates: Vec<u32> = w.b.iter().map(|&b| n.reg.conj(w.a, b)).collect();
        conjugates.sort_unstable();
        conjugates.dedup();
        assert_eq!(conjugates.len() as u64, w.m);
        assert!(check_hypothesis_remark(&n, &w).passed, "{}", n.name);
        // U centralizes the chosen b_i.
        for u in w.u_points.iter().take(50) {
            for &b in &w.b {
                assert_eq!(n.reg.comm(u, b), 0);
            }
        }
    }
}

#[test]
fn utheta_lemma_examples() {
    for n in [c2(), s3()] {
        let w = build_hypothesis_witness(&n).unwrap();
        let r = check_utheta_lemma(&n, &w, &ScopePolicy::default());
        assert!(r.passed, "{}", n.name);
        assert_eq!(r.scope, Scope::Exhaustive);
    }
}

#[test]
fn proposition_u1_examples() {
    // Abelian: all commutator subgroups are trivial.
    let c4 = realize("group C4 { gens: a; rels: a^4; }");
    let w = build_hypothesis_witness(&c4).unwrap();
    assert!(check_proposition_u1(&c4, &w).passed);

    for n in [s3(), d4()] {
        let w = build_hypothesis_witness(&n).unwrap();
        assert!(check_proposition_u1(&n, &w).passed, "{}", n.name);
    }
}

#[test]
fn comm_finiteness_examples() {
    // H central for abelian G: every [H, x] is trivial.
    let n = c2();
    let r = check_comm_finiteness(&n);
    assert!(r.passed);
    assert_eq!(r.note.as_deref(), Some("largest [H, x] over tensors has order 1"));

    // Deterministic across runs.
    let n = s3();
    let r1 = check_comm_finiteness(&n);
    let r2 = check_comm_finiteness(&n);
    assert_eq!(r1, r2);
}

#[test]
fn abelian_invariants_of_tensor_squares() {
    // (C2 × C2) ⊗ (C2 × C2) is elementary abelian of rank 4.
    let k4 = realize("group K4 { gens: a,b; rels: a^2, b^2, [a,b]; }");
    assert_eq!(abelian_invariants(&k4.h), vec![2, 2, 2, 2]);

    // C3 ⊗ C3 is cyclic of order 3.
    let c3 = realize("group C3 { gens: a; rels: a^3; }");
    assert_eq!(abelian_invariants(&c3.h), vec![3]);
}

#[test]
fn witness_u1_is_a_subgroup_containing_needed_elements() {
    let n = s3();
    let w = build_hypothesis_witness(&n).unwrap();
    // U1 as computed is a genuine subgroup.
    let gens = extract_gens(&n.reg, &w.u1_points);
    assert_eq!(n.reg.span(&gens), w.u1_points);
    assert_eq!(w.u1.order() as usize, w.u1_points.len());
    assert_eq!(w.u.order() as usize, w.u_points.len());
}
