//! Coset enumeration cross-checked against independent closure oracles.

mod common;

use common::{naive_table_order, perm_closure};
use nu_core::corpus::builtin_corpus;
use nu_core::fp::coset::{
    table_to_permgroup, todd_coxeter, todd_coxeter_with, von_dyck_check, Strategy,
};
use nu_core::nu::{build_nu_presentation, NuMode};
use nu_core::parse_presentation;

#[test]
fn production_and_naive_enumerators_agree() {
    for (src, expected) in [
        ("group C5 { gens: a; rels: a^5; }", 5),
        ("group V4 { gens: a,b; rels: a^2, b^2, [a,b]; }", 4),
        ("group S3 { gens: a,b; rels: a^3, b^2, (a*b)^2; }", 6),
        ("group Q8 { gens: a,b; rels: a^4, b^2 = a^2, a^b = a^-1; }", 8),
        ("group D4 { gens: a,b; rels: a^4, b^2, (a*b)^2; }", 8),
        ("group A4 { gens: a,b; rels: a^3, b^2, (a*b)^3; }", 12),
        ("group T { gens: a; rels: a^3, a^2; }", 1),
    ] {
        let p = parse_presentation(src).unwrap();
        let t = todd_coxeter(&p, &[], 10_000);
        assert!(t.is_complete());
        assert_eq!(t.live(), expected, "{src}");
        assert_eq!(naive_table_order(&p, 10_000), Some(expected), "{src}");
    }
}

#[test]
fn nu_of_c2_by_three_routes() {
    // Production enumeration of the nu presentation, the naive closure of the
    // same presentation, and |C2|² · |C2 ⊗ C2| with the tensor square
    // enumerated from its own direct presentation.
    let p = parse_presentation("group C2 { gens: a; rels: a^2; }").unwrap();
    let nu_pres = build_nu_presentation(&p, NuMode::GeneratorTriples, None).unwrap();

    let t = todd_coxeter(&nu_pres, &[], 10_000);
    assert!(t.is_complete());
    assert_eq!(t.live(), 8);

    assert_eq!(naive_table_order(&nu_pres, 10_000), Some(8));

    let n = nu_core::nu::realize_nu(&p, &nu_core::Caps::default(), NuMode::GeneratorTriples)
        .unwrap();
    let direct = n.direct_tensor_square(&nu_core::Caps::default()).unwrap();
    let td = todd_coxeter(&direct, &[], 10_000);
    assert!(td.is_complete());
    assert_eq!(td.live(), 2);
    assert_eq!(t.live(), 2 * 2 * td.live());
}

#[test]
fn nu_of_c3_against_naive_oracle() {
    let p = parse_presentation("group C3 { gens: a; rels: a^3; }").unwrap();
    let nu_pres = build_nu_presentation(&p, NuMode::GeneratorTriples, None).unwrap();
    assert_eq!(naive_table_order(&nu_pres, 20_000), Some(27));
    let t = todd_coxeter(&nu_pres, &[], 10_000);
    assert_eq!(t.live(), 27);
}

#[test]
fn corpus_orders_against_naive_oracle() {
    // Small corpus entries re-enumerated by the naive oracle.
    for e in builtin_corpus() {
        let order = e.expected_order.unwrap() as usize;
        if order > 16 {
            continue;
        }
        assert_eq!(
            naive_table_order(&e.presentation, 50_000),
            Some(order),
            "{}",
            e.name
        );
    }
}

#[test]
fn regular_representation_is_faithful_on_corpus() {
    // Distinct elements act distinctly: the closure of the generator
    // permutations has exactly the group order (corpus orders are ≤ 2000).
    for e in builtin_corpus() {
        let t = todd_coxeter(&e.presentation, &[], 10_000);
        let (g, perms) = table_to_permgroup(&t).unwrap();
        let elements = perm_closure(t.live(), &perms);
        assert_eq!(elements.len() as u64, e.expected_order.unwrap(), "{}", e.name);
        assert_eq!(g.order() as u64, e.expected_order.unwrap(), "{}", e.name);
        // Membership agrees with the exhaustive enumeration.
        for el in &elements {
            assert!(g.contains(el));
        }
    }
}

#[test]
fn relators_close_from_every_coset() {
    for e in builtin_corpus() {
        let t = todd_coxeter(&e.presentation, &[], 10_000);
        let (g, perms) = table_to_permgroup(&t).unwrap();
        assert!(von_dyck_check(&e.presentation, &perms, &g), "{}", e.name);
    }
}

#[test]
fn subgroup_enumeration_index() {
    let p = parse_presentation("group S3 { gens: a,b; rels: a^3, b^2, (a*b)^2; }").unwrap();
    let b = nu_core::Word::gen(1, 1);
    let t = todd_coxeter(&p, &[b], 100);
    assert!(t.is_complete());
    assert_eq!(t.live(), 3);
}

#[test]
fn strategies_standardize_identically() {
    for e in builtin_corpus() {
        if e.expected_order.unwrap() > 12 {
            continue;
        }
        let h = todd_coxeter_with(&e.presentation, &[], 5_000, Strategy::Hlt);
        let f = todd_coxeter_with(&e.presentation, &[], 5_000, Strategy::Felsch);
        assert_eq!(h.rows(), f.rows(), "{}", e.name);
    }
}

#[test]
fn enumeration_is_deterministic() {
    let p = parse_presentation("group A4 { gens: a,b; rels: a^3, b^2, (a*b)^3; }").unwrap();
    let t1 = todd_coxeter(&p, &[], 10_000);
    let t2 = todd_coxeter(&p, &[], 10_000);
    assert_eq!(t1.rows(), t2.rows());
}
