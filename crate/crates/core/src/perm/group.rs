use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

/// Degree guard for the stabilizer-chain builder. Groups realized as regular
/// representations bypass it via [`PermGroup::from_free_action`], which does
/// not run the chain construction.
pub const DEGREE_CAP: usize = 50_000;

const NOT_IN_ORBIT: i32 = -2;
const AT_BASE: i32 = -1;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct StabLevel {
    base: Point,
    /// Level generators with their inverses; they generate the stabilizer of
    /// all earlier base points.
    gens: Vec<(Permutation, Permutation)>,
    /// Orbit of `base` in BFS discovery order.
    orbit: Vec<Point>,
    /// Schreier vector: for each point, the index of the level generator that
    /// reached it and the point it was reached from.
    sv: Vec<(i32, Point)>,
}

impl StabLevel {
    fn new(base: Point, degree: usize) -> Self {
        StabLevel {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            sv: vec![(NOT_IN_ORBIT, 0); degree],
        }
    }

    fn rebuild_orbit(&mut self) {
        for e in self.sv.iter_mut() {
            *e = (NOT_IN_ORBIT, 0);
        }
        self.orbit.clear();
        self.orbit.push(self.base);
        self.sv[self.base as usize] = (AT_BASE, self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (gi, (g, _)) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.sv[q as usize].0 == NOT_IN_ORBIT {
                    self.sv[q as usize] = (gi as i32, p);
                    self.orbit.push(q);
                }
            }
        }
    }

    fn in_orbit(&self, p: Point) -> bool {
        self.sv[p as usize].0 != NOT_IN_ORBIT
    }

    /// Generator indices along the tree path base → p, in application order.
    fn path(&self, p: Point) -> Vec<usize> {
        let mut rev = Vec::new();
        let mut cur = p;
        loop {
            let (gi, parent) = self.sv[cur as usize];
            if gi == AT_BASE {
                break;
            }
            debug_assert!(gi >= 0);
            rev.push(gi as usize);
            cur = parent;
        }
        rev.reverse();
        rev
    }

    /// The transversal element u_p with base^(u_p) = p.
    fn transversal(&self, p: Point, degree: usize) -> Permutation {
        let mut u = Permutation::identity(degree);
        for gi in self.path(p) {
            u = &u * &self.gens[gi].0;
        }
        u
    }

    /// g * u_p⁻¹, computed without materializing u_p.
    fn divide_by_transversal(&self, p: Point, g: Permutation) -> Permutation {
        let mut r = g;
        let mut path = self.path(p);
        path.reverse();
        for gi in path {
            r = &r * &self.gens[gi].1;
        }
        r
    }
}

/// A finite permutation group with a base and strong generating set.
///
/// Construction is deterministic, so orders, orbits and derived data are
/// reproducible run to run.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Vec<StabLevel>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: Vec::new(),
        }
    }

    /// Deterministic Schreier–Sims over the given generators.
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::new_with_base(degree, generators, &[])
    }

    /// Like [`PermGroup::new`] but with prescribed initial base points; levels
    /// for them are created eagerly in the given order.
    pub fn new_with_base(
        degree: usize,
        generators: &[Permutation],
        initial_base: &[Point],
    ) -> Result<Self> {
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap {
                got: degree,
                cap: DEGREE_CAP,
            });
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.is_empty() {
            return Ok(PermGroup::trivial(degree));
        }

        let mut group = PermGroup {
            degree,
            gens: gens.clone(),
            chain: Vec::new(),
        };
        for &b in initial_base {
            group.chain.push(StabLevel::new(b, degree));
        }
        if group.chain.is_empty() {
            let b = gens[0].first_moved().expect("non-identity generator");
            group.chain.push(StabLevel::new(b, degree));
        }
        for g in gens {
            let inv = g.inverse();
            group.chain[0].gens.push((g, inv));
        }
        for level in group.chain.iter_mut() {
            level.rebuild_orbit();
        }
        group.verify_level(0);
        Ok(group)
    }

    /// Build a group known to act freely on every orbit (semiregular action).
    ///
    /// For such actions the stabilizer of any point is trivial, so the single
    /// level below is a complete stabilizer chain. Regular realizations from
    /// coset tables and their subgroups satisfy this; the caller is
    /// responsible for the freeness guarantee.
    pub fn from_free_action(degree: usize, generators: &[Permutation]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.is_empty() {
            return Ok(PermGroup::trivial(degree));
        }
        let base = gens[0].first_moved().expect("non-identity generator");
        let mut level = StabLevel::new(base, degree);
        for g in &gens {
            level.gens.push((g.clone(), g.inverse()));
        }
        level.rebuild_orbit();
        Ok(PermGroup {
            degree,
            gens,
            chain: vec![level],
        })
    }

    /// Closes the chain at `level`: every Schreier generator must sift to the
    /// identity through the levels below.
    fn verify_level(&mut self, level: usize) {
        loop {
            self.chain[level].rebuild_orbit();
            let mut dirty = false;
            'scan: for oi in 0.. {
                if oi >= self.chain[level].orbit.len() {
                    break;
                }
                let p = self.chain[level].orbit[oi];
                let u_p = self.chain[level].transversal(p, self.degree);
                for gi in 0..self.chain[level].gens.len() {
                    let g = self.chain[level].gens[gi].0.clone();
                    let pg = g.apply(p);
                    let s = self.chain[level].divide_by_transversal(pg, &u_p * &g);
                    if s.is_identity() {
                        continue;
                    }
                    let (residue, drop) = self.sift_from(level + 1, s);
                    if residue.is_identity() {
                        continue;
                    }
                    self.add_strong_gen(level, residue, drop);
                    for j in ((level + 1)..self.chain.len().min(drop + 1)).rev() {
                        self.verify_level(j);
                    }
                    dirty = true;
                    break 'scan;
                }
            }
            if !dirty {
                return;
            }
        }
    }

    fn add_strong_gen(&mut self, found_at: usize, residue: Permutation, drop: usize) {
        let drop = if drop == self.chain.len() {
            let b = residue.first_moved().expect("non-identity residue");
            self.chain.push(StabLevel::new(b, self.degree));
            self.chain.len() - 1
        } else {
            drop
        };
        let inv = residue.inverse();
        for j in (found_at + 1)..=drop {
            self.chain[j].gens.push((residue.clone(), inv.clone()));
            self.chain[j].rebuild_orbit();
        }
    }

    /// Sift `g` through levels `start..`; returns the residue and the level
    /// at which sifting stopped.
    fn sift_from(&self, start: usize, g: Permutation) -> (Permutation, usize) {
        let mut r = g;
        for lvl in start..self.chain.len() {
            let p = r.apply(self.chain[lvl].base);
            if !self.chain[lvl].in_orbit(p) {
                return (r, lvl);
            }
            r = self.chain[lvl].divide_by_transversal(p, r);
        }
        (r, self.chain.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<Point> {
        self.chain.iter().map(|l| l.base).collect()
    }

    /// All strong generators, level by level, without duplicates.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain {
            for (g, _) in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Orbit of the base point at each chain level, in discovery order.
    pub fn basic_orbits(&self) -> Vec<Vec<Point>> {
        self.chain.iter().map(|l| l.orbit.clone()).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        if g.is_identity() {
            return true;
        }
        let (residue, lvl) = self.sift_from(0, g.clone());
        lvl == self.chain.len() && residue.is_identity()
    }

    /// Whether the group is its own regular representation: transitive with
    /// order equal to the degree.
    pub fn is_regular(&self) -> bool {
        match self.chain.len() {
            0 => self.degree == 1,
            1 => self.chain[0].orbit.len() == self.degree,
            _ => false,
        }
    }

    /// Every element, by breadth-first closure of the generators from the
    /// identity. Deterministic order; meant for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = vec![Permutation::identity(self.degree)];
        seen.insert(out[0].clone());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for g in &self.gens {
                let next = &cur * g;
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
        }
        out
    }

    /// Conjugacy class of `x`, as the orbit of `x` under conjugation.
    pub fn conjugacy_class(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        if !self.contains(x) {
            return Err(Error::NotAMember);
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = vec![x.clone()];
        seen.insert(x.clone());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for g in &self.gens {
                let next = cur.conjugate_by(g);
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Centralizer of the set `S`, by filtering the full element list.
    pub fn centralizer(&self, s: &[Permutation]) -> Result<PermGroup> {
        for x in s {
            if !self.contains(x) {
                return Err(Error::NotAMember);
            }
        }
        let mut kept: Vec<Permutation> = Vec::new();
        let mut sub = PermGroup::trivial(self.degree);
        for e in self.elements() {
            if s.iter().all(|x| &(&e * x) == &(x * &e)) && !sub.contains(&e) {
                kept.push(e);
                sub = PermGroup::new(self.degree, &kept)?;
            }
        }
        Ok(sub)
    }

    /// Smallest normal subgroup of `self` containing `S`.
    pub fn normal_closure(&self, s: &[Permutation]) -> Result<PermGroup> {
        for x in s {
            if !self.contains(x) {
                return Err(Error::NotAMember);
            }
        }
        let mut gens: Vec<Permutation> = s
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut sub = PermGroup::new(self.degree, &gens)?;
        loop {
            let mut grew = false;
            for i in 0..gens.len() {
                for c in &self.gens {
                    let conj = gens[i].conjugate_by(c);
                    if !sub.contains(&conj) {
                        gens.push(conj);
                        sub = PermGroup::new(self.degree, &gens)?;
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(sub);
            }
        }
    }

    /// Derived subgroup: normal closure of all generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for x in &self.gens {
            for y in &self.gens {
                let c = Permutation::commutator(x, y);
                if !c.is_identity() && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
            .expect("commutators of members are members")
    }

    pub fn is_abelian(&self) -> bool {
        for (i, x) in self.gens.iter().enumerate() {
            for y in &self.gens[i + 1..] {
                if Permutation::commutator(x, y).is_identity() == false {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `n` is a normal subgroup of `self`.
    pub fn is_normal(&self, n: &PermGroup) -> bool {
        n.generators().iter().all(|g| self.contains(g))
            && self.gens.iter().all(|c| {
                n.generators()
                    .iter()
                    .all(|g| n.contains(&g.conjugate_by(c)))
            })
    }

    /// Drop generators that are redundant, keeping the first of each.
    pub fn reduce_generators(degree: usize, gens: &[Permutation]) -> Result<Vec<Permutation>> {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut sub = PermGroup::trivial(degree);
        for g in gens {
            if !sub.contains(g) {
                kept.push(g.clone());
                sub = PermGroup::new(degree, &kept)?;
            }
        }
        Ok(kept)
    }
}
