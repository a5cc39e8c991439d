//! Todd–Coxeter coset enumeration.
//!
//! The default strategy is HLT with lookahead: relators are traced coset by
//! coset, defining new cosets to fill gaps; when the live-coset cap is hit, a
//! lookahead pass retraces every relator without definitions to harvest
//! coincidences before giving up. A definition-light Felsch-style strategy is
//! available behind a flag; it rescans to a fixpoint after every definition,
//! which is fine at the scales where it is used (cross-checks).
//!
//! Coset 0 is the subgroup coset. Completed tables are standardized: cosets
//! are renumbered in breadth-first order scanning generator columns in
//! declaration order, so the numbering depends only on the presentation and
//! the subgroup, not on the enumeration path.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::fp::{Presentation, Word};
use crate::perm::{PermGroup, Permutation, Point};

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Hlt,
    Felsch,
}

/// A coset table over the columns g, g⁻¹ for each generator.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    /// Dense rows, standardized; empty when the enumeration overflowed.
    rows: Vec<Vec<Point>>,
    status: TableStatus,
    live: usize,
    regular: bool,
    relators: Vec<Vec<u32>>,
    subgens: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Number of live cosets on completion, or at the point of overflow.
    pub fn live(&self) -> usize {
        self.live
    }

    pub fn num_gens(&self) -> usize {
        self.ngens
    }

    /// Enumerated over the trivial subgroup, i.e. the regular representation.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn rows(&self) -> &[Vec<Point>] {
        &self.rows
    }

    /// `coset · generator` (column 2g) or `coset · generator⁻¹` (column 2g+1).
    pub fn apply(&self, coset: Point, col: usize) -> Point {
        self.rows[coset as usize][col]
    }

    /// Image columns of each generator as permutations of the cosets.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.ngens)
            .map(|g| {
                Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect())
                    .expect("complete table columns are permutations")
            })
            .collect()
    }
}

fn word_cols(w: &Word) -> Vec<u32> {
    w.flatten()
        .iter()
        .map(|&s| {
            let g = (s.unsigned_abs() - 1) * 2;
            if s > 0 {
                g
            } else {
                g + 1
            }
        })
        .collect()
}

struct Enumerator {
    ncols: usize,
    cap: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    nlive: usize,
    dead: VecDeque<u32>,
    relators: Vec<Vec<u32>>,
    subgens: Vec<Vec<u32>>,
    progress: u64,
}

/// Raised when a definition would push the live count past the cap.
struct CapHit;

impl Enumerator {
    fn new(ncols: usize, cap: usize, relators: Vec<Vec<u32>>, subgens: Vec<Vec<u32>>) -> Self {
        Enumerator {
            ncols,
            cap,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            nlive: 1,
            dead: VecDeque::new(),
            relators,
            subgens,
            progress: 0,
        }
    }

    fn num_rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, a: u32, x: u32) -> u32 {
        self.table[a as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, a: u32, x: u32, v: u32) {
        self.table[a as usize * self.ncols + x as usize] = v;
    }

    fn rep(&mut self, mut k: u32) -> u32 {
        while self.parent[k as usize] != k {
            let grand = self.parent[self.parent[k as usize] as usize];
            self.parent[k as usize] = grand;
            k = grand;
        }
        k
    }

    fn is_live(&mut self, k: u32) -> bool {
        self.rep(k) == k
    }

    fn define(&mut self, a: u32, x: u32) -> std::result::Result<u32, CapHit> {
        if self.nlive >= self.cap {
            return Err(CapHit);
        }
        let n = self.num_rows() as u32;
        self.table.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(n);
        self.nlive += 1;
        self.set(a, x, n);
        self.set(n, x ^ 1, a);
        self.progress += 1;
        Ok(n)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        self.nlive -= 1;
        self.dead.push_back(hi);
        self.progress += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.dead.pop_front() {
            for x in 0..self.ncols as u32 {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(g, x, UNDEF);
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, UNDEF);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let t = self.get(nu, x ^ 1);
                if t != UNDEF {
                    self.merge(mu, t);
                } else {
                    let t2 = self.get(mu, x);
                    if t2 != UNDEF {
                        self.merge(nu, t2);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Trace `w` from `a`, expecting to return to `a`. With `fill`, gaps of
    /// two or more are closed by definitions; a single gap is always closed
    /// by deduction and a mismatch at the meeting point by coincidence.
    fn scan(&mut self, a: u32, widx: usize, fill: bool) -> std::result::Result<(), CapHit> {
        let w = std::mem::take(&mut self.relators[widx]);
        let r = self.scan_word(a, &w, fill);
        self.relators[widx] = w;
        r
    }

    fn scan_word(&mut self, a: u32, w: &[u32], fill: bool) -> std::result::Result<(), CapHit> {
        let mut f = a;
        let mut i: i64 = 0;
        let mut b = a;
        let mut j: i64 = w.len() as i64 - 1;
        loop {
            while i <= j {
                let next = self.get(f, w[i as usize]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let prev = self.get(b, w[j as usize] ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i {
                // Scans met exactly; the endpoints must be one coset.
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i {
                // Deduction closes the single gap.
                self.set(f, w[i as usize], b);
                self.set(b, w[i as usize] ^ 1, f);
                self.progress += 1;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            f = self.define(f, w[i as usize])?;
            i += 1;
        }
    }

    /// One definition-free pass over every relator at every live coset.
    fn lookahead(&mut self) {
        for a in 0..self.num_rows() as u32 {
            if !self.is_live(a) {
                continue;
            }
            for widx in 0..self.relators.len() {
                let _ = self.scan(a, widx, false);
                if !self.is_live(a) {
                    break;
                }
            }
        }
    }

    /// Renumber live cosets densely, preserving definition order. Returns the
    /// old→new map for live cosets.
    fn compress(&mut self) -> Vec<u32> {
        let rows = self.num_rows();
        let mut map = vec![UNDEF; rows];
        let mut next = 0u32;
        for k in 0..rows as u32 {
            if self.rep(k) == k {
                map[k as usize] = next;
                next += 1;
            }
        }
        let live = next as usize;
        let mut table = vec![UNDEF; live * self.ncols];
        for k in 0..rows as u32 {
            if map[k as usize] == UNDEF {
                continue;
            }
            let nk = map[k as usize];
            for x in 0..self.ncols as u32 {
                let v = self.get(k, x);
                if v != UNDEF {
                    let rv = self.rep(v);
                    table[nk as usize * self.ncols + x as usize] = map[rv as usize];
                }
            }
        }
        self.table = table;
        self.parent = (0..live as u32).collect();
        debug_assert_eq!(self.nlive, live);
        map
    }

    fn run_hlt(&mut self) -> TableStatus {
        // Subgroup generator words are traced from coset 0 first.
        for si in 0..self.subgens.len() {
            let w = std::mem::take(&mut self.subgens[si]);
            loop {
                match self.scan_word(0, &w, true) {
                    Ok(()) => break,
                    Err(CapHit) => {
                        if !self.relieve() {
                            self.subgens[si] = w;
                            return TableStatus::Overflow;
                        }
                    }
                }
            }
            self.subgens[si] = w;
        }

        let mut a = 0u32;
        while (a as usize) < self.num_rows() {
            if !self.is_live(a) {
                a += 1;
                continue;
            }
            let mut widx = 0;
            while widx < self.relators.len() {
                match self.scan(a, widx, true) {
                    Ok(()) => widx += 1,
                    Err(CapHit) => {
                        if !self.relieve() {
                            return TableStatus::Overflow;
                        }
                        let ra = self.rep(a);
                        let map = self.compress();
                        a = map[ra as usize];
                        widx = 0; // rescan this coset; traces are idempotent
                    }
                }
                if !self.is_live(a) {
                    break;
                }
            }
            if self.is_live(a) {
                let mut x = 0u32;
                while (x as usize) < self.ncols {
                    if self.get(a, x) == UNDEF {
                        match self.define(a, x) {
                            Ok(_) => {}
                            Err(CapHit) => {
                                if !self.relieve() {
                                    return TableStatus::Overflow;
                                }
                                let ra = self.rep(a);
                                let map = self.compress();
                                a = map[ra as usize];
                                continue;
                            }
                        }
                    }
                    x += 1;
                }
            }
            a += 1;
            // Bound the physical table between cosets.
            if self.num_rows() > 2 * self.nlive + 4096 {
                let prev = self.rep(a - 1);
                let map = self.compress();
                a = map[prev as usize] + 1;
            }
        }
        TableStatus::Complete
    }

    /// Lookahead and report whether room was actually freed.
    fn relieve(&mut self) -> bool {
        let before = self.nlive;
        self.lookahead();
        self.nlive < before && self.nlive < self.cap
    }

    fn run_felsch(&mut self) -> TableStatus {
        for si in 0..self.subgens.len() {
            let w = std::mem::take(&mut self.subgens[si]);
            if self.scan_word(0, &w, true).is_err() {
                self.subgens[si] = w;
                return TableStatus::Overflow;
            }
            self.subgens[si] = w;
        }
        loop {
            // Deduce to a fixpoint before defining anything new.
            loop {
                let before = self.progress;
                self.lookahead();
                if self.progress == before {
                    break;
                }
            }
            // First undefined slot in row-major order.
            let mut slot = None;
            'find: for a in 0..self.num_rows() as u32 {
                if !self.is_live(a) {
                    continue;
                }
                for x in 0..self.ncols as u32 {
                    if self.get(a, x) == UNDEF {
                        slot = Some((a, x));
                        break 'find;
                    }
                }
            }
            match slot {
                None => return TableStatus::Complete,
                Some((a, x)) => {
                    if self.define(a, x).is_err() {
                        return TableStatus::Overflow;
                    }
                }
            }
        }
    }
}

/// Enumerate cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`, using HLT with lookahead.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], cap: usize) -> CosetTable {
    todd_coxeter_with(p, subgroup, cap, Strategy::Hlt)
}

pub fn todd_coxeter_with(
    p: &Presentation,
    subgroup: &[Word],
    cap: usize,
    strategy: Strategy,
) -> CosetTable {
    let ngens = p.generators.len();
    let mut relators: Vec<Vec<u32>> = p
        .relators
        .iter()
        .map(word_cols)
        .filter(|w| !w.is_empty())
        .collect();
    // Short relators first: power relators collapse cosets early.
    relators.sort_by_key(|w| w.len());
    let subgens: Vec<Vec<u32>> = subgroup
        .iter()
        .map(word_cols)
        .filter(|w| !w.is_empty())
        .collect();

    if ngens == 0 || cap == 0 {
        return CosetTable {
            ngens,
            rows: if cap == 0 { Vec::new() } else { vec![Vec::new()] },
            status: if cap == 0 {
                TableStatus::Overflow
            } else {
                TableStatus::Complete
            },
            live: usize::from(cap != 0),
            regular: subgroup.is_empty(),
            relators,
            subgens,
        };
    }

    let mut e = Enumerator::new(2 * ngens, cap, relators, subgens);
    let status = match strategy {
        Strategy::Hlt => e.run_hlt(),
        Strategy::Felsch => e.run_felsch(),
    };

    match status {
        TableStatus::Overflow => CosetTable {
            ngens,
            rows: Vec::new(),
            status,
            live: e.nlive,
            regular: subgroup.is_empty(),
            relators: e.relators,
            subgens: e.subgens,
        },
        TableStatus::Complete => {
            e.compress();
            let live = e.nlive;
            let mut rows: Vec<Vec<Point>> = (0..live)
                .map(|a| {
                    (0..e.ncols)
                        .map(|x| e.get(a as u32, x as u32))
                        .collect()
                })
                .collect();
            standardize(&mut rows, ngens);
            let table = CosetTable {
                ngens,
                rows,
                status,
                live,
                regular: subgroup.is_empty(),
                relators: e.relators,
                subgens: e.subgens,
            };
            debug_assert!(table_closed(&table));
            table
        }
    }
}

/// Renumber cosets in BFS order over generator columns from coset 0.
fn standardize(rows: &mut Vec<Vec<Point>>, ngens: usize) {
    let n = rows.len();
    let mut map = vec![UNDEF; n];
    let mut order = Vec::with_capacity(n);
    map[0] = 0;
    order.push(0u32);
    let mut head = 0;
    while head < order.len() {
        let old = order[head];
        head += 1;
        for g in 0..ngens {
            for col in [2 * g, 2 * g + 1] {
                let v = rows[old as usize][col];
                if map[v as usize] == UNDEF {
                    map[v as usize] = order.len() as u32;
                    order.push(v);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n, "complete tables are transitive");
    let mut new_rows = vec![vec![0u32; 2 * ngens]; n];
    for (old, row) in rows.iter().enumerate() {
        for (col, &v) in row.iter().enumerate() {
            new_rows[map[old] as usize][col] = map[v as usize];
        }
    }
    *rows = new_rows;
}

/// Every relator traced from every coset returns to its start, and every
/// subgroup generator fixes coset 0.
pub fn table_closed(t: &CosetTable) -> bool {
    let trace = |start: Point, w: &[u32]| -> Point {
        let mut c = start;
        for &x in w {
            c = t.rows[c as usize][x as usize];
        }
        c
    };
    t.relators
        .iter()
        .all(|w| (0..t.live as Point).all(|c| trace(c, w) == c))
        && t.subgens.iter().all(|w| trace(0, w) == 0)
}

/// Realize a complete table as a permutation group on its cosets, together
/// with the generator images. The construction is re-verified against the
/// relators before returning.
pub fn table_to_permgroup(t: &CosetTable) -> Result<(PermGroup, Vec<Permutation>)> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    if !table_closed(t) {
        return Err(Error::InternalCheck(
            "coset table does not close under its relators".into(),
        ));
    }
    let perms = t.generator_permutations();
    let group = if t.is_regular() {
        PermGroup::from_free_action(t.live, &perms)?
    } else {
        PermGroup::new(t.live, &perms)?
    };
    Ok((group, perms))
}

/// Do the images satisfy every relator of `p` inside `target`? A `true`
/// answer certifies the map as a homomorphism from the presented group.
pub fn von_dyck_check(p: &Presentation, images: &[Permutation], target: &PermGroup) -> bool {
    if images.len() != p.generators.len() {
        return false;
    }
    for im in images {
        if im.degree() != target.degree() || !target.contains(im) {
            return false;
        }
    }
    let inverses: Vec<Permutation> = images.iter().map(|g| g.inverse()).collect();
    for rel in &p.relators {
        let mut r = Permutation::identity(target.degree());
        for s in rel.flatten() {
            let g = s.unsigned_abs() as usize - 1;
            r = if s > 0 { &r * &images[g] } else { &r * &inverses[g] };
        }
        if !r.is_identity() {
            return false;
        }
    }
    true
}
