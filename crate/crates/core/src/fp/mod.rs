//! Finitely presented groups: words over generator symbols, a presentation
//! text format, and coset enumeration.

pub mod coset;
mod parse;

pub use parse::{parse_presentation, parse_presentations};

use std::fmt;

use crate::error::{Error, Result};

/// A named generator; `phi` marks the isomorphic-copy alphabet used by the
/// nu construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub phi: bool,
}

impl GeneratorSymbol {
    pub fn plain(name: impl Into<String>) -> Self {
        GeneratorSymbol {
            name: name.into(),
            phi: false,
        }
    }
}

/// A freely reduced word over presentation generators, stored as
/// (generator index, exponent) runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(u16, i32)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(index: u16, exp: i32) -> Self {
        let mut w = Word::empty();
        w.push(index, exp);
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (u16, i32)>) -> Self {
        let mut w = Word::empty();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Append one run, merging with the tail (free reduction).
    pub fn push(&mut self, index: u16, exp: i32) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == index {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((index, exp));
    }

    pub fn letters(&self) -> &[(u16, i32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of single-generator steps.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for &(g, e) in self.letters.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `u⁻¹ · self · u`.
    pub fn conjugated_by(&self, u: &Word) -> Word {
        u.inverse().concat(self).concat(u)
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Rewrite generator indices (used to build the phi-copy of a relator).
    pub fn map_gens(&self, f: impl Fn(u16) -> u16) -> Word {
        Word {
            letters: self.letters.iter().map(|&(g, e)| (f(g), e)).collect(),
        }
    }

    /// Flatten to single steps: ±(index+1) per letter.
    pub fn flatten(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.len());
        for &(g, e) in &self.letters {
            let s = if e > 0 { g as i32 + 1 } else { -(g as i32 + 1) };
            for _ in 0..e.unsigned_abs() {
                out.push(s);
            }
        }
        out
    }

    pub fn max_gen(&self) -> Option<u16> {
        self.letters.iter().map(|&(g, _)| g).max()
    }
}

/// A finite presentation: named generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<GeneratorSymbol>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Build after checking name uniqueness and relator indices. Relators
    /// that reduce to the empty word are dropped.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<GeneratorSymbol>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateName(g.name.clone()));
            }
        }
        let ngen = generators.len() as u16;
        let mut kept = Vec::new();
        for r in relators {
            if let Some(m) = r.max_gen() {
                if m >= ngen {
                    return Err(Error::InternalCheck(format!(
                        "relator references generator {m} of {ngen}"
                    )));
                }
            }
            if !r.is_empty() {
                kept.push(r);
            }
        }
        Ok(Presentation {
            name: name.into(),
            generators,
            relators: kept,
        })
    }

    pub fn gen_index(&self, name: &str) -> Option<u16> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "()".into();
        }
        let mut parts = Vec::new();
        for &(g, e) in w.letters() {
            let name = &self.generators[g as usize].name;
            if e == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }

    /// Render in the grammar accepted by the parser; `parse ∘ to_text` is the
    /// identity up to whitespace.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("group {} {{\n  gens:", self.name));
        if !self.generators.is_empty() {
            s.push(' ');
            s.push_str(
                &self
                    .generators
                    .iter()
                    .map(|g| g.name.clone())
                    .collect::<Vec<_>>()
                    .join(", "),
            );
        }
        s.push_str(";\n  rels:");
        if !self.relators.is_empty() {
            s.push(' ');
            s.push_str(
                &self
                    .relators
                    .iter()
                    .map(|r| self.word_to_string(r))
                    .collect::<Vec<_>>()
                    .join(", "),
            );
        }
        s.push_str(";\n}\n");
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
