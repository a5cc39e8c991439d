use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fp::coset::{todd_coxeter, TableStatus};
use crate::fp::Presentation;
use crate::perm::{PermGroup, Permutation, Point, DEGREE_CAP};

/// A homomorphism between permutation groups, given by generator images.
///
/// `new` certifies the map by checking that the graph group generated by the
/// paired permutations has the same order as the source; `new_certified`
/// accepts an external certificate (a relation check on a defining
/// presentation of the source).
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    verified: bool,
}

impl Homomorphism {
    pub fn new(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism);
        }
        for im in &images {
            if !target.contains(im) {
                return Err(Error::NotAHomomorphism);
            }
        }
        let graph = graph_group(&source, &target, &images, &[])?;
        if graph.order() != source.order() {
            return Err(Error::NotAHomomorphism);
        }
        Ok(Homomorphism {
            source,
            target,
            images,
            verified: true,
        })
    }

    /// The caller vouches that the images satisfy the defining relations of
    /// the source (e.g. by `von_dyck_check` against its presentation).
    pub fn new_certified(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Self {
        Homomorphism {
            source,
            target,
            images,
            verified: true,
        }
    }

    /// An unverified map; `kernel` will refuse it.
    pub fn new_unchecked(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Self {
        Homomorphism {
            source,
            target,
            images,
            verified: false,
        }
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Image of an arbitrary element, found by breadth-first factorization
    /// over the source. Meant for small groups.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        let mut seen: HashMap<Permutation, Permutation> = HashMap::new();
        let id_s = Permutation::identity(self.source.degree());
        let id_t = Permutation::identity(self.target.degree());
        if g == &id_s {
            return Ok(id_t);
        }
        let mut queue = vec![(id_s.clone(), id_t)];
        seen.insert(id_s, queue[0].1.clone());
        let mut head = 0;
        while head < queue.len() {
            let (e, im) = queue[head].clone();
            head += 1;
            for (gen, gen_im) in self.source.generators().iter().zip(&self.images) {
                let next = &e * gen;
                if seen.contains_key(&next) {
                    continue;
                }
                let next_im = &im * gen_im;
                if &next == g {
                    return Ok(next_im);
                }
                seen.insert(next.clone(), next_im.clone());
                queue.push((next, next_im));
            }
        }
        Err(Error::NotAMember)
    }

    /// Kernel via a stabilizer chain on the graph of the homomorphism: base
    /// points run through the whole target block first, so the residual
    /// levels consist exactly of the elements mapping to the identity.
    pub fn kernel(&self) -> Result<PermGroup> {
        if !self.verified {
            return Err(Error::UnverifiedHomomorphism);
        }
        let ds = self.source.degree();
        let dt = self.target.degree();
        let target_base: Vec<Point> = (ds as Point..(ds + dt) as Point).collect();
        let graph = graph_group(&self.source, &self.target, &self.images, &target_base)?;

        let mut kernel_gens: Vec<Permutation> = Vec::new();
        for sg in graph.strong_generators() {
            if (ds..ds + dt).all(|p| sg.apply(p as Point) == p as Point) {
                let restricted =
                    Permutation::from_images(sg.images()[..ds].to_vec()).expect("block-closed");
                if !restricted.is_identity() && !kernel_gens.contains(&restricted) {
                    kernel_gens.push(restricted);
                }
            }
        }
        let kernel = PermGroup::new(ds, &kernel_gens)?;
        let image = PermGroup::new(dt, &self.images)?;
        if kernel.order() * image.order() != self.source.order() {
            return Err(Error::InternalCheck(
                "kernel and image orders do not multiply to the source order".into(),
            ));
        }
        Ok(kernel)
    }
}

/// The group generated by source generators paired with their images, acting
/// on the disjoint union of the two point sets.
fn graph_group(
    source: &PermGroup,
    target: &PermGroup,
    images: &[Permutation],
    initial_base: &[Point],
) -> Result<PermGroup> {
    let ds = source.degree();
    let dt = target.degree();
    if ds + dt > DEGREE_CAP {
        return Err(Error::DegreeCap {
            got: ds + dt,
            cap: DEGREE_CAP,
        });
    }
    let mut gens = Vec::new();
    for (g, im) in source.generators().iter().zip(images) {
        let mut imgs: Vec<Point> = Vec::with_capacity(ds + dt);
        imgs.extend_from_slice(g.images());
        imgs.extend(im.images().iter().map(|&p| p + ds as Point));
        gens.push(Permutation::from_images(imgs)?);
    }
    PermGroup::new_with_base(ds + dt, &gens, initial_base)
}

/// Coset representatives and multiplication for a normal subgroup.
#[derive(Clone, Debug)]
pub struct CosetStructure {
    pub reps: Vec<Permutation>,
    mult_table: Vec<Vec<u32>>,
    rep_invs: Vec<Permutation>,
    subgroup: PermGroup,
}

impl CosetStructure {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        self.mult_table[a as usize][b as usize]
    }

    pub fn coset_inverse(&self, a: u32) -> u32 {
        (0..self.reps.len() as u32)
            .find(|&b| self.mult(a, b) == 0)
            .expect("every coset has an inverse")
    }

    pub fn coset_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut c = a;
        while c != 0 {
            c = self.mult(c, a);
            k += 1;
        }
        k
    }

    /// Which coset a group element belongs to.
    pub fn coset_of(&self, x: &Permutation) -> Option<u32> {
        (0..self.reps.len() as u32)
            .find(|&j| self.subgroup.contains(&(x * &self.rep_invs[j as usize])))
    }
}

/// Cosets of a normal subgroup `n` in `g`, with deterministic representatives
/// (breadth-first over the generators from the identity).
///
/// Regular groups use canonical point-set tags to identify cosets; otherwise
/// identification goes through membership sifting.
pub fn coset_structure(g: &PermGroup, n: &PermGroup) -> Result<CosetStructure> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let degree = g.degree();
    let identity = Permutation::identity(degree);

    // In a regular action, the sorted point set b^(N·x) determines the coset
    // of x, which avoids membership sifting against N.
    let tag_orbit: Option<Vec<Point>> = if g.is_regular() && !g.is_trivial() {
        let b = g.base()[0];
        let mut orbit = vec![b];
        let mut seen = vec![false; degree];
        seen[b as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for gen in n.generators() {
                let q = gen.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        Some(orbit)
    } else {
        None
    };

    let mut reps = vec![identity];
    let mut tags: HashMap<Vec<Point>, u32> = HashMap::new();
    if let Some(orbit) = &tag_orbit {
        tags.insert(tag_of(&reps[0], orbit), 0);
    }
    let locate_or_insert = |reps: &mut Vec<Permutation>,
                                tags: &mut HashMap<Vec<Point>, u32>,
                                cand: Permutation|
     -> u32 {
        if let Some(orbit) = &tag_orbit {
            let t = tag_of(&cand, orbit);
            if let Some(&i) = tags.get(&t) {
                return i;
            }
            tags.insert(t, reps.len() as u32);
            reps.push(cand);
            (reps.len() - 1) as u32
        } else {
            for (j, rep) in reps.iter().enumerate() {
                if n.contains(&(&cand * &rep.inverse())) {
                    return j as u32;
                }
            }
            reps.push(cand);
            (reps.len() - 1) as u32
        }
    };

    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for gen in g.generators() {
            locate_or_insert(&mut reps, &mut tags, &r * gen);
        }
    }

    let index = reps.len();
    let mut mult_table = vec![vec![0u32; index]; index];
    for i in 0..index {
        for j in 0..index {
            let prod = &reps[i] * &reps[j];
            mult_table[i][j] = locate_or_insert(&mut reps, &mut tags, prod);
        }
    }
    debug_assert_eq!(reps.len(), index, "coset reps closed under products");

    let rep_invs: Vec<Permutation> = reps.iter().map(|r| r.inverse()).collect();
    Ok(CosetStructure {
        reps,
        mult_table,
        rep_invs,
        subgroup: n.clone(),
    })
}

fn tag_of(x: &Permutation, orbit: &[Point]) -> Vec<Point> {
    let mut t: Vec<Point> = orbit.iter().map(|&p| x.apply(p)).collect();
    t.sort_unstable();
    t
}

/// Whether `g/n` is isomorphic to the group presented by `h_pres`.
///
/// True when the orders agree and some assignment of the presentation's
/// generators to cosets kills every relator and generates the quotient; for
/// finite groups a surjection between equal orders is an isomorphism.
pub fn check_quotient_isomorphic(
    g: &PermGroup,
    n: &PermGroup,
    h_pres: &Presentation,
) -> Result<bool> {
    let cs = coset_structure(g, n)?;
    let index = cs.index();

    let cap = 64 * index + 1024;
    let table = todd_coxeter(h_pres, &[], cap);
    match table.status() {
        TableStatus::Overflow => {
            return Err(Error::Overflow {
                stage: format!("enumeration of `{}`", h_pres.name),
                cap,
            })
        }
        TableStatus::Complete => {}
    }
    if table.live() != index {
        return Ok(false);
    }

    let k = h_pres.generators.len();
    if k == 0 {
        return Ok(index == 1);
    }
    if (index as u128).pow(k as u32) > 10_000_000 {
        return Err(Error::InternalCheck(
            "quotient isomorphism search space too large".into(),
        ));
    }

    let mut assign = vec![0u32; k];
    loop {
        if relators_die(&cs, h_pres, &assign) && generates(&cs, &assign) {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(false);
            }
            assign[i] += 1;
            if (assign[i] as usize) < index {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn relators_die(cs: &CosetStructure, p: &Presentation, assign: &[u32]) -> bool {
    for rel in &p.relators {
        let mut v = 0u32;
        for &s in &rel.flatten() {
            let gen = s.unsigned_abs() as usize - 1;
            let c = if s > 0 {
                assign[gen]
            } else {
                cs.coset_inverse(assign[gen])
            };
            v = cs.mult(v, c);
        }
        if v != 0 {
            return false;
        }
    }
    true
}

fn generates(cs: &CosetStructure, assign: &[u32]) -> bool {
    let index = cs.index();
    let mut seen = vec![false; index];
    seen[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for &a in assign {
            let d = cs.mult(c, a);
            if !seen[d as usize] {
                seen[d as usize] = true;
                queue.push(d);
            }
        }
    }
    queue.len() == index
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, degree: usize) -> Permutation {
        let p: Permutation = s.parse().unwrap();
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for (i, &q) in p.images().iter().enumerate() {
            images[i] = q;
        }
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn identity_hom_has_trivial_kernel() {
        let g = PermGroup::new(4, &[perm("(0 1 2 3)", 4)]).unwrap();
        let h = Homomorphism::new(g.clone(), g.clone(), g.generators().to_vec()).unwrap();
        assert_eq!(h.kernel().unwrap().order(), 1);
    }

    #[test]
    fn c4_onto_c2_kernel() {
        let c4 = PermGroup::new(4, &[perm("(0 1 2 3)", 4)]).unwrap();
        let c2 = PermGroup::new(2, &[perm("(0 1)", 2)]).unwrap();
        let h = Homomorphism::new(c4, c2, vec![perm("(0 1)", 2)]).unwrap();
        let k = h.kernel().unwrap();
        assert_eq!(k.order(), 2);
        assert!(k.contains(&perm("(0 2)(1 3)", 4)));
    }

    #[test]
    fn rejects_non_homomorphism() {
        // a ↦ 3-cycle cannot satisfy a² = 1.
        let c2 = PermGroup::new(2, &[perm("(0 1)", 2)]).unwrap();
        let s3 = PermGroup::new(3, &[perm("(0 1 2)", 3), perm("(0 1)", 3)]).unwrap();
        assert!(Homomorphism::new(c2, s3, vec![perm("(0 1 2)", 3)]).is_err());
    }

    #[test]
    fn unchecked_hom_is_rejected_by_kernel() {
        let c4 = PermGroup::new(4, &[perm("(0 1 2 3)", 4)]).unwrap();
        let c2 = PermGroup::new(2, &[perm("(0 1)", 2)]).unwrap();
        let h = Homomorphism::new_unchecked(c4, c2, vec![perm("(0 1)", 2)]);
        assert!(matches!(h.kernel(), Err(Error::UnverifiedHomomorphism)));
    }

    #[test]
    fn apply_respects_products() {
        let c4 = PermGroup::new(4, &[perm("(0 1 2 3)", 4)]).unwrap();
        let c2 = PermGroup::new(2, &[perm("(0 1)", 2)]).unwrap();
        let h = Homomorphism::new(c4.clone(), c2, vec![perm("(0 1)", 2)]).unwrap();
        for a in c4.elements() {
            for b in c4.elements() {
                let lhs = h.apply(&(&a * &b)).unwrap();
                let rhs = &h.apply(&a).unwrap() * &h.apply(&b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn coset_structure_of_a3_in_s3() {
        let s3 = PermGroup::new(3, &[perm("(0 1 2)", 3), perm("(0 1)", 3)]).unwrap();
        let a3 = PermGroup::new(3, &[perm("(0 1 2)", 3)]).unwrap();
        let cs = coset_structure(&s3, &a3).unwrap();
        assert_eq!(cs.index(), 2);
        assert_eq!(cs.mult(1, 1), 0);
    }

    #[test]
    fn coset_structure_rejects_non_normal() {
        let s3 = PermGroup::new(3, &[perm("(0 1 2)", 3), perm("(0 1)", 3)]).unwrap();
        let c2 = PermGroup::new(3, &[perm("(0 1)", 3)]).unwrap();
        assert!(matches!(
            coset_structure(&s3, &c2),
            Err(Error::NotNormal)
        ));
    }
}
