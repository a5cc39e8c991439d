//! Family runs: dihedral groups, where commutator classes stay bounded while
//! the derived subgroup grows, and the dihedral truncations C_(p^k) ⋊ C2 of
//! the corresponding inversion semidirect product, where tensor classes stay
//! bounded while the derived subgroup grows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::coset::todd_coxeter;
use crate::fp::{parse_presentation, Presentation};
use crate::nu::{realize_nu, Caps, NuMode};
use crate::perm::Point;
use crate::verify::checks::max_tensor_class;
use crate::verify::theorem::derived_of_normal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralRow {
    pub m: u64,
    pub order_g: u64,
    pub max_commutator_class: u64,
    pub derived_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruferRow {
    pub p: u64,
    pub k: u32,
    pub order_g: u64,
    pub max_tensor_class: u64,
    pub derived_order: u64,
}

pub fn dihedral_presentation(m: u64) -> Presentation {
    parse_presentation(&format!(
        "group D{m} {{ gens: a,b; rels: a^{m}, b^2, (a*b)^2; }}"
    ))
    .expect("well-formed dihedral presentation")
}

pub fn prufer_truncation_presentation(p: u64, k: u32) -> Presentation {
    let order = p.pow(k);
    parse_presentation(&format!(
        "group prufer_trunc_{p}_{k} {{ gens: a,b; rels: a^{order}, b^2, a^b = a^-1; }}"
    ))
    .expect("well-formed truncation presentation")
}

/// Per dihedral group of order 2m: the largest conjugacy class among
/// commutators, and the order of the derived subgroup. Classes of commutators
/// stay at most 2 while the derived subgroup grows with m.
pub fn family_dihedral(
    m_range: impl IntoIterator<Item = u64>,
    caps: &Caps,
) -> Vec<(u64, Result<DihedralRow>)> {
    m_range
        .into_iter()
        .map(|m| (m, dihedral_row(m, caps)))
        .collect()
}

fn dihedral_row(m: u64, caps: &Caps) -> Result<DihedralRow> {
    let p = dihedral_presentation(m);
    let t = todd_coxeter(&p, &[], caps.coset_cap);
    if !t.is_complete() {
        return Err(Error::Overflow {
            stage: format!("enumeration of {}", p.name),
            cap: caps.coset_cap,
        });
    }
    let reg = {
        let tables: Vec<Vec<Point>> = (0..t.num_gens())
            .map(|g| t.rows().iter().map(|r| r[2 * g]).collect())
            .collect();
        crate::perm::RegularRep::new(t.live(), &tables)?
    };
    let order = reg.degree() as u32;
    let conj_tables: Vec<Vec<Point>> = (0..reg.num_gens())
        .map(|j| reg.conj_table_of(reg.gen_point(j)))
        .collect();

    // Distinct commutators of the whole group.
    let mut comms: Vec<Point> = Vec::new();
    for x in 0..order {
        for y in 0..order {
            let c = reg.comm(x, y);
            if !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let max_class = comms
        .iter()
        .map(|&c| reg.class_of(c, &conj_tables).len() as u64)
        .max()
        .unwrap_or(1);
    let gen_points: Vec<Point> = (0..reg.num_gens()).map(|j| reg.gen_point(j)).collect();
    let (derived, _) = derived_of_normal(&reg, &gen_points, &conj_tables);

    Ok(DihedralRow {
        m,
        order_g: order as u64,
        max_commutator_class: max_class,
        derived_order: derived.len() as u64,
    })
}

/// Per truncation G_k = C_(p^k) ⋊ C2 with the inverting action: the largest
/// nu(G_k)-class among tensors (bounded by 4 along the family) and the order
/// of the derived subgroup (which grows with k).
pub fn family_prufer_truncation(
    p: u64,
    k_range: impl IntoIterator<Item = u32>,
    caps: &Caps,
    mode: NuMode,
) -> Vec<(u32, Result<PruferRow>)> {
    k_range
        .into_iter()
        .map(|k| (k, prufer_row(p, k, caps, mode)))
        .collect()
}

fn prufer_row(p: u64, k: u32, caps: &Caps, mode: NuMode) -> Result<PruferRow> {
    let pres = prufer_truncation_presentation(p, k);
    let n = realize_nu(&pres, caps, mode)?;
    let derived = n.g.derived_subgroup();
    Ok(PruferRow {
        p,
        k,
        order_g: n.g_order() as u64,
        max_tensor_class: max_tensor_class(&n),
        derived_order: derived.order() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_rows_small() {
        let caps = Caps::default();
        let rows = family_dihedral(3..=4, &caps);
        let r3 = rows[0].1.as_ref().unwrap();
        assert_eq!(r3.order_g, 6);
        assert_eq!(r3.max_commutator_class, 2);
        assert_eq!(r3.derived_order, 3);
        let r4 = rows[1].1.as_ref().unwrap();
        assert_eq!(r4.order_g, 8);
        assert!(r4.max_commutator_class <= 2);
        assert_eq!(r4.derived_order, 2);
    }

    #[test]
    fn dihedral_row_m15() {
        let caps = Caps::default();
        let rows = family_dihedral(15..=15, &caps);
        let r = rows[0].1.as_ref().unwrap();
        assert_eq!(r.order_g, 30);
        assert_eq!(r.max_commutator_class, 2);
        assert_eq!(r.derived_order, 15);
    }

    #[test]
    fn prufer_rows_p3() {
        let caps = Caps::default();
        let rows = family_prufer_truncation(3, 1..=2, &caps, NuMode::GeneratorTriples);
        let r1 = rows[0].1.as_ref().unwrap();
        assert!(r1.max_tensor_class <= 4);
        assert_eq!(r1.derived_order, 3);
        assert_eq!(r1.order_g, 6);
        let r2 = rows[1].1.as_ref().unwrap();
        assert!(r2.max_tensor_class <= 4);
        assert_eq!(r2.derived_order, 9);
        assert_eq!(r2.order_g, 18);
    }

    #[test]
    fn prufer_row_p5() {
        let caps = Caps::default();
        let rows = family_prufer_truncation(5, 1..=1, &caps, NuMode::GeneratorTriples);
        let r = rows[0].1.as_ref().unwrap();
        assert!(r.max_tensor_class <= 4);
        assert_eq!(r.derived_order, 5);
    }
}
