//! Instrumentation row per group: tensor-class bound n, second derived
//! subgroups, and the product decomposition of nu(G)''.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fp::Presentation;
use crate::nu::{realize_nu, Caps, NuGroup, NuMode};
use crate::perm::{Point, PointSet, RegularRep};
use crate::verify::checks::max_tensor_class;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremARow {
    pub name: String,
    pub order_g: u64,
    pub order_nu: u64,
    pub order_h: u64,
    /// Largest nu(G)-conjugacy class among tensors.
    pub n_max_tensor_class: u64,
    pub order_nu_second_derived: u64,
    pub order_g_second_derived: u64,
    /// nu(G)'' equals the product of the normal closures of [G', (G')^phi],
    /// G'' and (G'')^phi inside nu(G).
    pub formula_ok: bool,
}

/// Seed commutators of the listed generators, for derived subgroups.
fn pair_commutators(reg: &RegularRep, gens: &[Point]) -> Vec<Point> {
    let mut seeds = Vec::new();
    for &x in gens {
        for &y in gens {
            let c = reg.comm(x, y);
            if c != 0 && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    seeds
}

/// Derived subgroup of a normal subgroup given by generating points, taken as
/// a normal closure in the ambient group. For A normal in the ambient group,
/// [A, A] is itself normal there, so closing the generator commutators under
/// ambient conjugation yields exactly [A, A].
pub(crate) fn derived_of_normal(
    reg: &RegularRep,
    gens: &[Point],
    ambient_tables: &[Vec<Point>],
) -> (PointSet, Vec<Point>) {
    let seeds = pair_commutators(reg, gens);
    reg.normal_closure(&seeds, ambient_tables)
}

pub fn theorem_a_row_for(n: &NuGroup) -> TheoremARow {
    let reg = &n.reg;
    let nu_gen_points: Vec<Point> = (0..reg.num_gens()).map(|j| reg.gen_point(j)).collect();
    let (_, nu_d_gens) = derived_of_normal(reg, &nu_gen_points, &n.conj_tables);
    let (nu_dd, _) = derived_of_normal(reg, &nu_d_gens, &n.conj_tables);

    // The G-side series, inside G's own regular representation.
    let g_derived = n.g.derived_subgroup();
    let g_second = g_derived.derived_subgroup();
    let g_derived_points: Vec<Point> = g_derived.elements().iter().map(|e| e.apply(0)).collect();
    let g_second_points: Vec<Point> = g_second.elements().iter().map(|e| e.apply(0)).collect();

    // Product of the normal closures of [G', (G')^phi], G'' and (G'')^phi.
    let mut seeds = Vec::new();
    for &x in &g_derived_points {
        for &y in &g_derived_points {
            let t = reg.comm(n.emb_g[x as usize], n.emb_phi[y as usize]);
            if t != 0 && !seeds.contains(&t) {
                seeds.push(t);
            }
        }
    }
    for &z in &g_second_points {
        for p in [n.emb_g[z as usize], n.emb_phi[z as usize]] {
            if p != 0 && !seeds.contains(&p) {
                seeds.push(p);
            }
        }
    }
    let (product, _) = reg.normal_closure(&seeds, &n.conj_tables);

    TheoremARow {
        name: n.name.clone(),
        order_g: n.g_order() as u64,
        order_nu: n.nu_order() as u64,
        order_h: n.h_order() as u64,
        n_max_tensor_class: max_tensor_class(n),
        order_nu_second_derived: nu_dd.len() as u64,
        order_g_second_derived: g_second.order() as u64,
        formula_ok: product == nu_dd,
    }
}

/// Full pipeline from a presentation.
pub fn theorem_a_row(p: &Presentation, caps: &Caps, mode: NuMode) -> Result<TheoremARow> {
    let n = realize_nu(p, caps, mode)?;
    Ok(theorem_a_row_for(&n))
}
