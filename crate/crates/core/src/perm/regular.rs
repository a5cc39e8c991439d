use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

const NO_PARENT: u32 = u32::MAX;

/// Arithmetic on a group given by its right-regular action.
///
/// Points are group elements, point 0 is the identity, and the generator
/// tables give right multiplication. A complete coset table over the trivial
/// subgroup is exactly this data. Left-multiplication tables and two spanning
/// trees are derived once; after that, products, inverses, commutators,
/// centralizer filters and conjugation tables are point operations, so
/// element-level sweeps stay cheap even at tens of thousands of elements.
#[derive(Clone, Debug)]
pub struct RegularRep {
    degree: usize,
    /// Right multiplication by generator columns: index 2g for generator g,
    /// 2g+1 for its inverse.
    right: Vec<Vec<Point>>,
    /// Left multiplication by the same columns.
    left: Vec<Vec<Point>>,
    /// BFS order over the right-multiplication graph, starting at 0.
    rorder: Vec<Point>,
    /// p = parent · column  (column, parent); root marked NO_PARENT.
    rparent: Vec<(u32, Point)>,
    /// BFS order over the left-multiplication graph.
    lorder: Vec<Point>,
    /// p = column · parent.
    lparent: Vec<(u32, Point)>,
    inv: Vec<Point>,
}

impl RegularRep {
    /// `gen_tables[g][p]` is the point `p · g`. Tables must be permutations
    /// that together act transitively; freeness of the action is the
    /// caller's guarantee (coset tables over the trivial subgroup give it).
    pub fn new(degree: usize, gen_tables: &[Vec<Point>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InternalCheck("regular rep needs a point".into()));
        }
        let ncols = 2 * gen_tables.len();
        let mut right: Vec<Vec<Point>> = Vec::with_capacity(ncols);
        for t in gen_tables {
            if t.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: t.len(),
                });
            }
            let perm = Permutation::from_images(t.clone())
                .map_err(|_| Error::InternalCheck("generator table is not a bijection".into()))?;
            right.push(t.clone());
            right.push(perm.inverse().images().to_vec());
        }

        // Right BFS tree from the identity point.
        let mut rparent = vec![(NO_PARENT, 0u32); degree];
        let mut rorder = Vec::with_capacity(degree);
        let mut seen = vec![false; degree];
        seen[0] = true;
        rorder.push(0);
        let mut head = 0;
        while head < rorder.len() {
            let p = rorder[head];
            head += 1;
            for (c, table) in right.iter().enumerate() {
                let q = table[p as usize];
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    rparent[q as usize] = (c as u32, p);
                    rorder.push(q);
                }
            }
        }
        if rorder.len() != degree {
            return Err(Error::InternalCheck(
                "regular representation tables are not transitive".into(),
            ));
        }

        // λ_w for each column w: λ_w(q·c) = (w·q)·c walks the right tree.
        let mut left: Vec<Vec<Point>> = Vec::with_capacity(ncols);
        for c in 0..ncols {
            let w_point = right[c][0];
            let mut table = vec![0u32; degree];
            table[0] = w_point;
            for &p in rorder.iter().skip(1) {
                let (col, parent) = rparent[p as usize];
                table[p as usize] = right[col as usize][table[parent as usize] as usize];
            }
            left.push(table);
        }

        // Inverses: (q·c)⁻¹ = c⁻¹ · q⁻¹.
        let mut inv = vec![0u32; degree];
        for &p in rorder.iter().skip(1) {
            let (col, parent) = rparent[p as usize];
            inv[p as usize] = left[(col ^ 1) as usize][inv[parent as usize] as usize];
        }

        // Left BFS tree, for decomposing the left factor of a product.
        let mut lparent = vec![(NO_PARENT, 0u32); degree];
        let mut lseen = vec![false; degree];
        lseen[0] = true;
        let mut lorder = vec![0u32];
        let mut head = 0;
        while head < lorder.len() {
            let p = lorder[head];
            head += 1;
            for (c, table) in left.iter().enumerate() {
                let q = table[p as usize];
                if !lseen[q as usize] {
                    lseen[q as usize] = true;
                    lparent[q as usize] = (c as u32, p);
                    lorder.push(q);
                }
            }
        }

        Ok(RegularRep {
            degree,
            right,
            left,
            rorder,
            rparent,
            lorder,
            lparent,
            inv,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_gens(&self) -> usize {
        self.right.len() / 2
    }

    /// The point of generator `g`.
    pub fn gen_point(&self, g: usize) -> Point {
        self.right[2 * g][0]
    }

    /// Right multiplication by a generator column (2g, or 2g+1 for the
    /// inverse).
    #[inline]
    pub fn step(&self, p: Point, col: usize) -> Point {
        self.right[col][p as usize]
    }

    /// Group product of two elements given as points.
    pub fn mul(&self, x: Point, y: Point) -> Point {
        // Decompose x along the left tree: x = w₁·(w₂·(…·wₖ)), then fold
        // x·y = w₁·(w₂·…·(wₖ·y)) innermost first.
        let mut cols = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (c, parent) = self.lparent[cur as usize];
            cols.push(c);
            cur = parent;
        }
        let mut r = y;
        for &c in cols.iter().rev() {
            r = self.left[c as usize][r as usize];
        }
        r
    }

    #[inline]
    pub fn inv(&self, x: Point) -> Point {
        self.inv[x as usize]
    }

    /// `y⁻¹ · x · y`.
    pub fn conj(&self, x: Point, y: Point) -> Point {
        self.mul(self.mul(self.inv[y as usize], x), y)
    }

    /// `[x, y] = x⁻¹ · y⁻¹ · x · y`.
    pub fn comm(&self, x: Point, y: Point) -> Point {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv[yx as usize], xy)
    }

    pub fn element_order(&self, x: Point) -> u64 {
        let mut k = 1u64;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    /// Walk a word given as signed generator numbers (±(g+1)) from a point.
    pub fn apply_word(&self, start: Point, word: &[i32]) -> Point {
        let mut p = start;
        for &s in word {
            let g = (s.unsigned_abs() as usize - 1) * 2;
            let col = if s > 0 { g } else { g + 1 };
            p = self.right[col][p as usize];
        }
        p
    }

    /// Full right-multiplication table of an arbitrary element.
    pub fn right_table_of(&self, y: Point) -> Vec<Point> {
        // (w·q)·y = w·(q·y) walks the left tree.
        let mut table = vec![0u32; self.degree];
        table[0] = y;
        for &p in self.lorder.iter().skip(1) {
            let (col, parent) = self.lparent[p as usize];
            table[p as usize] = self.left[col as usize][table[parent as usize] as usize];
        }
        table
    }

    /// Full left-multiplication table of an arbitrary element.
    pub fn left_table_of(&self, y: Point) -> Vec<Point> {
        let mut table = vec![0u32; self.degree];
        table[0] = y;
        for &p in self.rorder.iter().skip(1) {
            let (col, parent) = self.rparent[p as usize];
            table[p as usize] = self.right[col as usize][table[parent as usize] as usize];
        }
        table
    }

    /// Conjugation table `p ↦ y⁻¹ · p · y`.
    pub fn conj_table_of(&self, y: Point) -> Vec<Point> {
        let right_y = self.right_table_of(y);
        let left_yinv = self.left_table_of(self.inv[y as usize]);
        (0..self.degree)
            .map(|p| right_y[left_yinv[p] as usize])
            .collect()
    }

    /// Materialize the element as a permutation (its right table).
    pub fn perm_of(&self, x: Point) -> Permutation {
        Permutation::from_images(self.right_table_of(x)).expect("right table is a permutation")
    }

    /// The point of a permutation known to lie in the represented group.
    pub fn point_of(&self, p: &Permutation) -> Point {
        p.apply(0)
    }

    /// Orbit of `x` under the given conjugation tables, in BFS order.
    pub fn class_of(&self, x: Point, conj_tables: &[Vec<Point>]) -> Vec<Point> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut head = 0;
        while head < out.len() {
            let p = out[head];
            head += 1;
            for t in conj_tables {
                let q = t[p as usize];
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
        }
        out
    }

    /// Subgroup generated by the given points, in BFS order from the identity
    /// together with word-length distances over that generating set.
    pub fn closure_with_lengths(&self, gens: &[Point]) -> (Vec<Point>, Vec<u32>) {
        let mut dist = vec![u32::MAX; self.degree];
        dist[0] = 0;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let p = out[head];
            head += 1;
            for &g in gens {
                if g == 0 {
                    continue;
                }
                let q = self.mul(p, g);
                if dist[q as usize] == u32::MAX {
                    dist[q as usize] = dist[p as usize] + 1;
                    out.push(q);
                }
            }
        }
        let lengths = out.iter().map(|&p| dist[p as usize]).collect();
        (out, lengths)
    }

    /// Subgroup generated by the given points, as a sorted point set.
    pub fn subgroup_closure(&self, gens: &[Point]) -> PointSet {
        let (members, _) = self.closure_with_lengths(gens);
        PointSet::from_unsorted(members)
    }

    /// Subgroup generated by a possibly long, redundant list of points;
    /// generators are absorbed only when not already spanned.
    pub fn span(&self, candidates: &[Point]) -> PointSet {
        let mut closure = IncrementalClosure::new(self);
        for &c in candidates {
            if !closure.contains(c) {
                closure.add_gen(c);
            }
        }
        closure.into_point_set()
    }

    /// Normal closure of `seeds` under the subgroup whose generators have the
    /// given conjugation tables. Returns the closure and the generating
    /// points accumulated along the way.
    pub fn normal_closure(&self, seeds: &[Point], conj_tables: &[Vec<Point>]) -> (PointSet, Vec<Point>) {
        let mut gens: Vec<Point> = Vec::new();
        for &s in seeds {
            if s != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut inset = vec![false; self.degree];
        inset[0] = true;
        let mut members = vec![0u32];
        let mut closed_upto = 0; // members below this index are closed under current gens

        let mut gi = 0;
        let mut pending: Vec<Point> = gens.clone();
        while gi < gens.len() || !pending.is_empty() {
            // Absorb pending new generators into the closure.
            for &g in &pending {
                if !inset[g as usize] {
                    // Sweep existing members by the new generator.
                    let upto = members.len();
                    for idx in 0..upto {
                        let q = self.mul(members[idx], g);
                        if !inset[q as usize] {
                            inset[q as usize] = true;
                            members.push(q);
                        }
                    }
                }
            }
            pending.clear();
            // Close newly added members under all generators.
            while closed_upto < members.len() {
                let p = members[closed_upto];
                closed_upto += 1;
                for &g in &gens {
                    let q = self.mul(p, g);
                    if !inset[q as usize] {
                        inset[q as usize] = true;
                        members.push(q);
                    }
                }
            }
            // Conjugate generators; anything new becomes a generator too.
            while gi < gens.len() {
                let g = gens[gi];
                gi += 1;
                let mut grew = false;
                for t in conj_tables {
                    let c = t[g as usize];
                    if !inset[c as usize] && !gens.contains(&c) {
                        gens.push(c);
                        pending.push(c);
                        grew = true;
                    }
                }
                if grew {
                    break;
                }
            }
        }
        (PointSet::from_unsorted(members), gens)
    }

    /// Points commuting with every element of `bs`.
    pub fn commuting_filter(&self, bs: &[Point]) -> PointSet {
        let mut keep = vec![true; self.degree];
        for &b in bs {
            let rb = self.right_table_of(b);
            let lb = self.left_table_of(b);
            for p in 0..self.degree {
                if rb[p] != lb[p] {
                    keep[p] = false;
                }
            }
        }
        PointSet {
            sorted: (0..self.degree as Point).filter(|&p| keep[p as usize]).collect(),
        }
    }
}

/// Subgroup closure that admits generators one at a time, reusing the work
/// already done.
pub struct IncrementalClosure<'a> {
    reg: &'a RegularRep,
    gens: Vec<Point>,
    members: Vec<Point>,
    inset: Vec<bool>,
    closed_upto: usize,
}

impl<'a> IncrementalClosure<'a> {
    pub fn new(reg: &'a RegularRep) -> Self {
        let mut inset = vec![false; reg.degree()];
        inset[0] = true;
        IncrementalClosure {
            reg,
            gens: Vec::new(),
            members: vec![0],
            inset,
            closed_upto: 1,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.inset[p as usize]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn add_gen(&mut self, g: Point) {
        if g == 0 {
            return;
        }
        self.gens.push(g);
        // Sweep everything already present by the new generator, then close.
        for idx in 0..self.members.len() {
            let q = self.reg.mul(self.members[idx], g);
            if !self.inset[q as usize] {
                self.inset[q as usize] = true;
                self.members.push(q);
            }
        }
        while self.closed_upto < self.members.len() {
            let p = self.members[self.closed_upto];
            self.closed_upto += 1;
            for &h in &self.gens {
                let q = self.reg.mul(p, h);
                if !self.inset[q as usize] {
                    self.inset[q as usize] = true;
                    self.members.push(q);
                }
            }
        }
    }

    pub fn into_point_set(self) -> PointSet {
        PointSet::from_unsorted(self.members)
    }
}

/// A small deterministic generating set for the subgroup whose elements are
/// exactly `points`, extracted greedily in ascending point order.
pub fn extract_gens(reg: &RegularRep, points: &PointSet) -> Vec<Point> {
    let mut kept = Vec::new();
    let mut closure = IncrementalClosure::new(reg);
    for p in points.iter() {
        if !closure.contains(p) {
            kept.push(p);
            closure.add_gen(p);
        }
    }
    debug_assert_eq!(closure.len(), points.len());
    kept
}

/// A sorted set of element points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    sorted: Vec<Point>,
}

impl PointSet {
    pub fn from_unsorted(mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet { sorted: points }
    }

    pub fn from_sorted(sorted: Vec<Point>) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        PointSet { sorted }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.sorted.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.sorted.iter().copied()
    }

    pub fn as_slice(&self) -> &[Point] {
        &self.sorted
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.sorted.iter().all(|&p| other.contains(p))
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet {
            sorted: self
                .sorted
                .iter()
                .copied()
                .filter(|&p| other.contains(p))
                .collect(),
        }
    }

    /// Image of the set under a point map.
    pub fn map_through(&self, table: &[Point]) -> PointSet {
        PointSet::from_unsorted(self.sorted.iter().map(|&p| table[p as usize]).collect())
    }
}
