//! Construction of nu(G) from a presentation of G.
//!
//! nu(G) is generated by two copies of G (the second written g^phi) subject
//! to the relations making conjugation act diagonally on the commutators
//! [g, h^phi]:
//!
//! ```text
//! [g1, g2^phi]^(g3) = [g1^(g3), (g2^(g3))^phi] = [g1, g2^phi]^(g3^phi)
//! ```
//!
//! quantified over the whole group. A finite presentation instantiates the
//! relations on generator triples first; after enumeration the relations are
//! re-checked inside the realized group for **all** element triples, and on
//! failure the build is redone with relators over every element triple. A
//! build that passes the check realizes nu(G) itself: the realized group and
//! nu(G) are then quotients of one another and both are finite.
//!
//! The subgroup H = [G, G^phi] generated by all tensors [g, h^phi] is the
//! non-abelian tensor square of G; `build_direct_tensor_square` produces the
//! independent two-family presentation of it on |G|² symbols for the
//! isomorphism cross-check.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fp::coset::{table_to_permgroup, todd_coxeter, von_dyck_check, CosetTable};
use crate::fp::{GeneratorSymbol, Presentation, Word};
use crate::perm::{Homomorphism, PermGroup, Permutation, Point, PointSet, RegularRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuMode {
    GeneratorTriples,
    ElementTriples,
}

impl std::fmt::Display for NuMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NuMode::GeneratorTriples => write!(f, "generator-triples"),
            NuMode::ElementTriples => write!(f, "element-triples"),
        }
    }
}

impl std::str::FromStr for NuMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generator-triples" => Ok(NuMode::GeneratorTriples),
            "element-triples" => Ok(NuMode::ElementTriples),
            other => Err(Error::InternalCheck(format!("unknown nu mode `{other}`"))),
        }
    }
}

/// Resource limits for the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Live-coset limit for any single enumeration.
    pub coset_cap: usize,
    /// Largest |G| admitted to the full pipeline.
    pub order_cap: u64,
    /// Largest |G| admitted to the direct tensor-square presentation, which
    /// has |G|² generators and 2|G|³ relators.
    pub direct_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coset_cap: 50_000,
            order_cap: 24,
            direct_cap: 12,
        }
    }
}

/// The set of tensors [g, h^phi] of a realized nu(G).
#[derive(Clone, Debug)]
pub struct TensorSet {
    /// Distinct tensors in order of first witness.
    points: Vec<Point>,
    /// Parallel to `points`: smallest (a, b) element-index pair realizing it.
    witness: Vec<(u32, u32)>,
    index: HashMap<Point, usize>,
    /// Tensor length of every element of H.
    lengths: HashMap<Point, u32>,
}

impl TensorSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub fn witness_of(&self, i: usize) -> (u32, u32) {
        self.witness[i]
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn length_of(&self, h: Point) -> Option<u32> {
        self.lengths.get(&h).copied()
    }
}

/// A realized nu(G): regular representations of G and nu(G), the embeddings
/// of the two copies of G, the projection rho with its kernel Theta(G), the
/// tensor subgroup H = [G, G^phi], and the tensor set.
#[derive(Clone, Debug)]
pub struct NuGroup {
    pub name: String,
    pub pres_g: Presentation,
    pub pres_nu: Presentation,
    pub mode_used: NuMode,

    /// G in its regular representation, with generator images and one word
    /// per element (indexed by coset).
    pub g: PermGroup,
    pub g_gens: Vec<Permutation>,
    pub g_reg: RegularRep,
    pub g_words: Vec<Word>,

    /// nu(G) in its regular representation.
    pub nu: PermGroup,
    pub nu_gens: Vec<Permutation>,
    pub reg: RegularRep,

    /// Element i of G as a point of nu, through each embedding.
    pub emb_g: Vec<Point>,
    pub emb_phi: Vec<Point>,

    pub rho: Homomorphism,
    /// rho as a map from nu-points to G-points.
    pub rho_points: Vec<Point>,
    pub theta: PermGroup,
    pub theta_points: PointSet,

    pub h: PermGroup,
    pub h_points: PointSet,
    /// Reduced generating points of H.
    pub h_gens: Vec<Point>,
    /// H in breadth-first order over the tensor generating set; position
    /// order is (tensor length, discovery order).
    pub h_bfs: Vec<Point>,

    pub tensors: TensorSet,

    /// Conjugation tables of the nu generators, for orbit computations.
    pub conj_tables: Vec<Vec<Point>>,
}

fn phi_name(base: &str, taken: &[GeneratorSymbol]) -> String {
    let mut name = format!("{base}_ph");
    while taken.iter().any(|g| g.name == name) {
        name.push('_');
    }
    name
}

/// The presentation of nu(G) on the doubled alphabet.
///
/// Relators: those of G, their phi-copies, and for each triple (a, b, c) of
/// the instantiation set the pair
/// `[a, b^phi]^c = [a^c, (b^c)^phi]` and `[a, b^phi]^c = [a, b^phi]^(c^phi)`.
/// In element mode the triples run over the given element words.
pub fn build_nu_presentation(
    p: &Presentation,
    mode: NuMode,
    elements: Option<&[Word]>,
) -> Result<Presentation> {
    let k = p.generators.len() as u16;
    let mut gens = p.generators.clone();
    for g in &p.generators {
        gens.push(GeneratorSymbol {
            name: phi_name(&g.name, &gens),
            phi: true,
        });
    }
    let phi = |w: &Word| w.map_gens(|g| g + k);

    let mut relators = p.relators.clone();
    for r in &p.relators {
        relators.push(phi(r));
    }

    let triples: Vec<Word> = match mode {
        NuMode::GeneratorTriples => (0..k).map(|i| Word::gen(i, 1)).collect(),
        NuMode::ElementTriples => elements.ok_or(Error::ElementListRequired)?.to_vec(),
    };
    for a in &triples {
        for b in &triples {
            let tensor = Word::commutator(a, &phi(b));
            for c in &triples {
                let lhs = tensor.conjugated_by(c);
                let diag = Word::commutator(&a.conjugated_by(c), &phi(&b.conjugated_by(c)));
                relators.push(lhs.concat(&diag.inverse()));
                relators.push(lhs.concat(&tensor.conjugated_by(&phi(c)).inverse()));
            }
        }
    }

    Presentation::new(format!("nu_{}", p.name), gens, relators)
}

/// Words for the elements of a standardized regular coset table, one per
/// coset, read off the breadth-first spanning tree.
fn element_words(t: &CosetTable) -> Vec<Word> {
    let n = t.live();
    let ngens = t.num_gens();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::empty());
    for c in 0..n {
        let w = words[c]
            .clone()
            .expect("standardized order fills parents first");
        for g in 0..ngens {
            for (col, exp) in [(2 * g, 1i32), (2 * g + 1, -1i32)] {
                let target = t.apply(c as Point, col) as usize;
                if words[target].is_none() {
                    let mut ext = w.clone();
                    ext.push(g as u16, exp);
                    words[target] = Some(ext);
                }
            }
        }
    }
    words
        .into_iter()
        .map(|w| w.expect("table is transitive"))
        .collect()
}

fn regular_rep_of(t: &CosetTable) -> Result<RegularRep> {
    let tables: Vec<Vec<Point>> = (0..t.num_gens())
        .map(|g| t.rows().iter().map(|r| r[2 * g]).collect())
        .collect();
    RegularRep::new(t.live(), &tables)
}

/// Realize nu(G) from a presentation of G.
///
/// Both enumerations run under `caps.coset_cap`; the defining relations are
/// then verified for every element triple of G inside the realization. In
/// generator-triples mode a failed verification triggers one rebuild in
/// element-triples mode.
pub fn realize_nu(p: &Presentation, caps: &Caps, mode: NuMode) -> Result<NuGroup> {
    let t_g = todd_coxeter(p, &[], caps.coset_cap);
    if !t_g.is_complete() {
        return Err(Error::Overflow {
            stage: format!("enumeration of {}", p.name),
            cap: caps.coset_cap,
        });
    }
    if t_g.live() as u64 > caps.order_cap {
        return Err(Error::OrderCap {
            order: t_g.live() as u64,
            cap: caps.order_cap,
        });
    }
    realize_nu_from_table(p, &t_g, caps, mode)
}

fn realize_nu_from_table(
    p: &Presentation,
    t_g: &CosetTable,
    caps: &Caps,
    mode: NuMode,
) -> Result<NuGroup> {
    let (g, g_gens) = table_to_permgroup(t_g)?;
    let g_reg = regular_rep_of(t_g)?;
    let g_words = element_words(t_g);
    let order_g = t_g.live();
    let k = p.generators.len() as u16;

    let pres_nu = match mode {
        NuMode::GeneratorTriples => build_nu_presentation(p, mode, None)?,
        NuMode::ElementTriples => build_nu_presentation(p, mode, Some(&g_words))?,
    };

    let t_nu = todd_coxeter(&pres_nu, &[], caps.coset_cap);
    if !t_nu.is_complete() {
        return Err(Error::Overflow {
            stage: format!("enumeration of {}", pres_nu.name),
            cap: caps.coset_cap,
        });
    }
    let (nu, nu_gens) = table_to_permgroup(&t_nu)?;
    let reg = regular_rep_of(&t_nu)?;
    let deg = reg.degree();

    // Elements of G through the two embeddings.
    let emb_g: Vec<Point> = g_words
        .iter()
        .map(|w| reg.apply_word(0, &w.flatten()))
        .collect();
    let emb_phi: Vec<Point> = g_words
        .iter()
        .map(|w| reg.apply_word(0, &w.map_gens(|g| g + k).flatten()))
        .collect();

    let certified = embeddings_injective(&emb_g, &emb_phi, deg)
        && defining_relations_hold(&g_reg, &reg, &emb_g, &emb_phi);
    if !certified {
        return match mode {
            NuMode::GeneratorTriples => {
                // Generator instantiation was too weak for this input; redo
                // with relators over every element triple.
                realize_nu_from_table(p, t_g, caps, NuMode::ElementTriples)
            }
            NuMode::ElementTriples => Err(Error::InternalCheck(format!(
                "defining relations fail in the element-triples realization of nu_{}",
                p.name
            ))),
        };
    }

    // rho: both copies of a generator map to the generator.
    let rho_images: Vec<Permutation> = (0..2 * k)
        .map(|j| g_gens[(j % k) as usize].clone())
        .collect();
    if !von_dyck_check(&pres_nu, &rho_images, &g) {
        return Err(Error::InternalCheck(
            "projection onto G does not satisfy the nu relators".into(),
        ));
    }
    let rho = Homomorphism::new_certified(nu.clone(), g.clone(), rho_images);

    let mut rho_points = vec![0u32; deg];
    let mut rho_seen = vec![false; deg];
    rho_seen[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let p_nu = queue[head];
        head += 1;
        for col in 0..4 * k as usize {
            let q = t_nu.apply(p_nu, col);
            if !rho_seen[q as usize] {
                rho_seen[q as usize] = true;
                let gcol = 2 * ((col / 2) % k as usize) + (col & 1);
                rho_points[q as usize] = t_g.apply(rho_points[p_nu as usize], gcol);
                queue.push(q);
            }
        }
    }

    let theta_points = PointSet::from_sorted(
        (0..deg as Point)
            .filter(|&p| rho_points[p as usize] == 0)
            .collect(),
    );
    let theta_gens = schreier_kernel_gens(&reg, &t_nu, &rho_points, order_g, k);
    let theta_gens = reduce_point_gens(&reg, &theta_gens);
    let theta = PermGroup::from_free_action(
        deg,
        &theta_gens
            .iter()
            .map(|&p| reg.perm_of(p))
            .collect::<Vec<_>>(),
    )?;
    debug_assert_eq!(theta.order() as usize, theta_points.len());

    // Tensors over all element pairs, with first-witness bookkeeping.
    let mut tensor_points = Vec::new();
    let mut witness = Vec::new();
    let mut index: HashMap<Point, usize> = HashMap::new();
    for a in 0..order_g as u32 {
        for b in 0..order_g as u32 {
            let t = reg.comm(emb_g[a as usize], emb_phi[b as usize]);
            if !index.contains_key(&t) {
                index.insert(t, tensor_points.len());
                tensor_points.push(t);
                witness.push((a, b));
            }
        }
    }

    let (h_bfs, h_lengths) = reg.closure_with_lengths(&tensor_points);
    let lengths: HashMap<Point, u32> = h_bfs
        .iter()
        .copied()
        .zip(h_lengths.iter().copied())
        .collect();
    let h_points = PointSet::from_unsorted(h_bfs.clone());
    let h_gens = reduce_point_gens(&reg, &tensor_points);
    let h = PermGroup::from_free_action(
        deg,
        &h_gens.iter().map(|&p| reg.perm_of(p)).collect::<Vec<_>>(),
    )?;
    debug_assert_eq!(h.order() as usize, h_points.len());

    let tensors = TensorSet {
        points: tensor_points,
        witness,
        index,
        lengths,
    };

    let conj_tables: Vec<Vec<Point>> = (0..2 * k as usize)
        .map(|j| reg.conj_table_of(reg.gen_point(j)))
        .collect();

    Ok(NuGroup {
        name: p.name.clone(),
        pres_g: p.clone(),
        pres_nu,
        mode_used: mode,
        g,
        g_gens,
        g_reg,
        g_words,
        nu,
        nu_gens,
        reg,
        emb_g,
        emb_phi,
        rho,
        rho_points,
        theta,
        theta_points,
        h,
        h_points,
        h_gens,
        h_bfs,
        tensors,
        conj_tables,
    })
}

fn embeddings_injective(emb_g: &[Point], emb_phi: &[Point], degree: usize) -> bool {
    for emb in [emb_g, emb_phi] {
        let mut seen = vec![false; degree];
        for &p in emb {
            if seen[p as usize] {
                return false;
            }
            seen[p as usize] = true;
        }
    }
    true
}

/// The defining relations, checked for every element triple of G inside the
/// realized group.
fn defining_relations_hold(
    g_reg: &RegularRep,
    reg: &RegularRep,
    emb_g: &[Point],
    emb_phi: &[Point],
) -> bool {
    let n = emb_g.len();
    let mut tensors = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            tensors[a * n + b] = reg.comm(emb_g[a], emb_phi[b]);
        }
    }
    for c in 0..n as u32 {
        let conj_c = reg.conj_table_of(emb_g[c as usize]);
        let conj_cphi = reg.conj_table_of(emb_phi[c as usize]);
        let gconj: Vec<u32> = (0..n as u32).map(|x| g_reg.conj(x, c)).collect();
        for a in 0..n {
            let ac = gconj[a] as usize;
            for b in 0..n {
                let t = tensors[a * n + b] as usize;
                let diag = tensors[ac * n + gconj[b] as usize];
                if conj_c[t] != diag || conj_cphi[t] != diag {
                    return false;
                }
            }
        }
    }
    true
}

/// Schreier generators of the kernel of rho, from the minimal-point
/// transversal of its cosets.
fn schreier_kernel_gens(
    reg: &RegularRep,
    t_nu: &CosetTable,
    rho_points: &[Point],
    order_g: usize,
    k: u16,
) -> Vec<Point> {
    let mut transversal = vec![u32::MAX; order_g];
    for p in 0..reg.degree() as Point {
        let u = rho_points[p as usize] as usize;
        if transversal[u] == u32::MAX {
            transversal[u] = p;
        }
    }
    let mut gens = Vec::new();
    for u in 0..order_g {
        for j in 0..2 * k as usize {
            let q = t_nu.apply(transversal[u], 2 * j);
            let v = rho_points[q as usize] as usize;
            let s = reg.mul(q, reg.inv(transversal[v]));
            if s != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
    }
    gens
}

/// Greedy generator reduction inside the point calculus.
pub fn reduce_point_gens(reg: &RegularRep, candidates: &[Point]) -> Vec<Point> {
    let mut kept: Vec<Point> = Vec::new();
    let mut closure = PointSet::from_sorted(vec![0]);
    for &c in candidates {
        if !closure.contains(c) {
            kept.push(c);
            closure = reg.subgroup_closure(&kept);
        }
    }
    kept
}

impl NuGroup {
    pub fn g_order(&self) -> usize {
        self.emb_g.len()
    }

    pub fn nu_order(&self) -> usize {
        self.reg.degree()
    }

    pub fn h_order(&self) -> usize {
        self.h_points.len()
    }

    pub fn theta_order(&self) -> usize {
        self.theta_points.len()
    }

    pub fn tensor_set(&self) -> &TensorSet {
        &self.tensors
    }

    /// Tensor length of an element of H given as a permutation of the
    /// realization.
    pub fn tensor_length(&self, x: &Permutation) -> Result<u32> {
        if x.degree() != self.nu_order() {
            return Err(Error::NotAMember);
        }
        let p = self.reg.point_of(x);
        if &self.reg.perm_of(p) != x {
            return Err(Error::NotAMember);
        }
        self.tensor_length_point(p)
    }

    pub fn tensor_length_point(&self, p: Point) -> Result<u32> {
        self.tensors.length_of(p).ok_or(Error::NotAMember)
    }

    /// Conjugacy class of a point under the whole of nu(G).
    pub fn class_of_point(&self, p: Point) -> Vec<Point> {
        self.reg.class_of(p, &self.conj_tables)
    }

    /// The direct two-family presentation of the tensor square of G, on one
    /// symbol per element pair.
    pub fn direct_tensor_square(&self, caps: &Caps) -> Result<Presentation> {
        build_direct_tensor_square(&self.name, &self.g_reg, caps)
    }

    /// Certify that the direct presentation enumerates to H and that
    /// (a, b) ↦ [a, b^phi] is an isomorphism onto H: the map is a
    /// relation-respecting surjection between finite groups of equal order.
    pub fn phi_iso_check(&self, direct: &Presentation, caps: &Caps) -> Result<bool> {
        let t = todd_coxeter(direct, &[], caps.coset_cap);
        if !t.is_complete() {
            return Err(Error::Overflow {
                stage: format!("enumeration of {}", direct.name),
                cap: caps.coset_cap,
            });
        }
        if t.live() != self.h_order() {
            return Ok(false);
        }
        let n = self.g_order();
        let images: Vec<Permutation> = (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                self.reg
                    .perm_of(self.reg.comm(self.emb_g[a], self.emb_phi[b]))
            })
            .collect();
        Ok(von_dyck_check(direct, &images, &self.h))
    }
}

/// The two-family presentation of the tensor square of G on |G|² symbols
/// t_a_b, with both relation families instantiated over all element triples.
pub fn build_direct_tensor_square(
    name: &str,
    g_reg: &RegularRep,
    caps: &Caps,
) -> Result<Presentation> {
    let n = g_reg.degree();
    if n as u64 > caps.direct_cap {
        return Err(Error::OrderCap {
            order: n as u64,
            cap: caps.direct_cap,
        });
    }
    let gens: Vec<GeneratorSymbol> = (0..n * n)
        .map(|idx| GeneratorSymbol::plain(format!("t{}_{}", idx / n, idx % n)))
        .collect();
    let sym = |a: u32, b: u32| (a as usize * n + b as usize) as u16;

    let mut relators = Vec::with_capacity(2 * n * n * n);
    for g in 0..n as u32 {
        for g1 in 0..n as u32 {
            let gg1 = g_reg.mul(g, g1);
            let gc = g_reg.conj(g, g1);
            for h in 0..n as u32 {
                // gg1 ⊗ h = (g^g1 ⊗ h^g1)(g1 ⊗ h)
                let mut w = Word::gen(sym(gg1, h), -1);
                w.push(sym(gc, g_reg.conj(h, g1)), 1);
                w.push(sym(g1, h), 1);
                relators.push(w);
            }
        }
    }
    for g in 0..n as u32 {
        for h in 0..n as u32 {
            for h1 in 0..n as u32 {
                // g ⊗ hh1 = (g ⊗ h1)(g^h1 ⊗ h^h1)
                let mut w = Word::gen(sym(g, g_reg.mul(h, h1)), -1);
                w.push(sym(g, h1), 1);
                w.push(sym(g_reg.conj(g, h1), g_reg.conj(h, h1)), 1);
                relators.push(w);
            }
        }
    }
    Presentation::new(format!("tensor_sq_{name}"), gens, relators)
}
