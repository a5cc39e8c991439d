//! Permutations and permutation groups.
//!
//! Points are 0-based and permutations act on the right: in the product
//! `x * y`, `x` is applied first. This fixes the conventions
//! `x^y = y⁻¹xy` and `[x, y] = x⁻¹y⁻¹xy` used everywhere else.

mod group;
pub(crate) mod hom;
mod regular;
mod snf;

pub use group::{PermGroup, DEGREE_CAP};
pub use hom::{check_quotient_isomorphic, coset_structure, CosetStructure, Homomorphism};
pub use regular::{extract_gens, IncrementalClosure, PointSet, RegularRep};
pub use snf::{abelian_invariants, smith_normal_form};

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Point = u32;

/// A permutation of `{0, …, degree-1}`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Build from an image vector, checking that it is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {p} out of range for degree {n}"
                )));
            }
            if seen[p] {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Point>]) -> Result<Self> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                if p as usize >= degree || q as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[p as usize] = q;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.images[p as usize]
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as Point == p)
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i as Point != p)
            .map(|(i, _)| i as Point)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as Point;
        }
        Permutation { images }
    }

    /// `y⁻¹ * self * y`.
    pub fn conjugate_by(&self, y: &Permutation) -> Permutation {
        // (y⁻¹xy)(y(q)) = y(x(q)) for every q, so the table fills in one sweep.
        let n = self.images.len();
        let mut images = vec![0; n];
        for q in 0..n {
            images[y.images[q] as usize] = y.images[self.images[q] as usize];
        }
        Permutation { images }
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    pub fn commutator(x: &Permutation, y: &Permutation) -> Permutation {
        // [x,y](x(y(q))) = y(x(q)) for every q.
        let n = x.images.len();
        debug_assert_eq!(n, y.images.len());
        let mut images = vec![0; n];
        for q in 0..n {
            images[x.images[y.images[q] as usize] as usize] =
                y.images[x.images[q] as usize];
        }
        Permutation { images }
    }

    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = &cur * self;
            k += 1;
        }
        k
    }

    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as Point];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as Point);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// `x * y`: apply `x`, then `y`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.images.len(), rhs.images.len());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&p| rhs.images[p as usize])
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parse cycle notation such as `(0 1 2)(3 4)`; degree is one more than
    /// the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        let mut cur: Option<Vec<Point>> = None;
        let mut num: Option<Point> = None;
        for c in s.chars() {
            match c {
                '(' => {
                    if cur.is_some() {
                        return Err(Error::InvalidPermutation("nested '('".into()));
                    }
                    cur = Some(Vec::new());
                }
                ')' => {
                    let mut cycle = cur
                        .take()
                        .ok_or_else(|| Error::InvalidPermutation("unmatched ')'".into()))?;
                    if let Some(n) = num.take() {
                        cycle.push(n);
                    }
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                }
                '0'..='9' => {
                    let d = c as Point - '0' as Point;
                    num = Some(num.take().map_or(d, |n| n * 10 + d));
                }
                ' ' | ',' => {
                    if let (Some(n), Some(cycle)) = (num.take(), cur.as_mut()) {
                        cycle.push(n);
                    }
                }
                _ => return Err(Error::InvalidPermutation(format!("unexpected `{c}`"))),
            }
        }
        if cur.is_some() {
            return Err(Error::InvalidPermutation("unterminated cycle".into()));
        }
        let degree = cycles
            .iter()
            .flatten()
            .max()
            .map(|&m| m as usize + 1)
            .ok_or_else(|| Error::InvalidPermutation("no points given".into()))?;
        Permutation::from_cycles(degree, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn right_action_product() {
        // x = (0 1 2), y = (0 1): xy sends 0 -x-> 1 -y-> 0, 1 -> 2 -> 2, 2 -> 0 -> 1.
        let x = p("(0 1 2)");
        let y = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let xy = &x * &y;
        assert_eq!(xy.images(), &[0, 2, 1]);
    }

    #[test]
    fn inverse_cancels() {
        let x = p("(0 3 1)(2 4)");
        assert!((&x * &x.inverse()).is_identity());
        assert!((&x.inverse() * &x).is_identity());
    }

    #[test]
    fn conjugation_convention() {
        let x = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let y = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        let c = x.conjugate_by(&y);
        assert_eq!(c, Permutation::from_cycles(3, &[vec![2, 1]]).unwrap());
        let direct = &(&y.inverse() * &x) * &y;
        assert_eq!(c, direct);
    }

    #[test]
    fn commutator_convention() {
        let x = p("(0 1 2)");
        let y = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let c = Permutation::commutator(&x, &y);
        let direct = &(&(&x.inverse() * &y.inverse()) * &x) * &y;
        assert_eq!(c, direct);
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn order_of_cycle() {
        assert_eq!(p("(0 1 2 3)").order(), 4);
        assert_eq!(Permutation::identity(5).order(), 1);
    }
}
