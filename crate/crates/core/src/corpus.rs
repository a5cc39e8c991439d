//! Built-in group corpus and presentation-file loading.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fp::{parse_presentation, parse_presentations, Presentation};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: Presentation,
    pub expected_order: Option<u64>,
    pub tags: Vec<String>,
}

impl CorpusEntry {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

fn entry(name: &str, src: String, order: u64, tags: &[&str]) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        presentation: parse_presentation(&src).expect("builtin presentation parses"),
        expected_order: Some(order),
        tags: tags.iter().map(|s| s.to_string()).collect(),
    }
}

fn is_prime_power(mut n: u64) -> bool {
    for p in 2..=n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
    }
    false
}

/// The built-in corpus: cyclic groups C2–C8, the two elementary abelian
/// squares, S3, Q8, A4, the dihedral family D3–D15, and the C_(3^k) ⋊ C2
/// truncations for k = 1, 2. Every entry carries its expected order.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2u64..=8 {
        let mut tags = vec!["abelian", "cyclic"];
        if is_prime_power(n) {
            tags.push("p-group");
        }
        out.push(entry(
            &format!("C{n}"),
            format!("group C{n} {{ gens: a; rels: a^{n}; }}"),
            n,
            &tags,
        ));
    }
    out.push(entry(
        "C2xC2",
        "group C2xC2 { gens: a,b; rels: a^2, b^2, [a,b]; }".into(),
        4,
        &["abelian", "p-group"],
    ));
    out.push(entry(
        "C3xC3",
        "group C3xC3 { gens: a,b; rels: a^3, b^3, [a,b]; }".into(),
        9,
        &["abelian", "p-group"],
    ));
    out.push(entry(
        "S3",
        "group S3 { gens: a,b; rels: a^3, b^2, (a*b)^2; }".into(),
        6,
        &["symmetric"],
    ));
    out.push(entry(
        "Q8",
        "group Q8 { gens: a,b; rels: a^4, b^2 = a^2, a^b = a^-1; }".into(),
        8,
        &["quaternion", "p-group"],
    ));
    out.push(entry(
        "A4",
        "group A4 { gens: a,b; rels: a^3, b^2, (a*b)^3; }".into(),
        12,
        &["alternating"],
    ));
    for m in 3u64..=15 {
        let mut tags = vec!["dihedral"];
        if is_prime_power(2 * m) {
            tags.push("p-group");
        }
        out.push(entry(
            &format!("D{m}"),
            format!("group D{m} {{ gens: a,b; rels: a^{m}, b^2, (a*b)^2; }}"),
            2 * m,
            &tags,
        ));
    }
    for k in 1u32..=2 {
        let order = 3u64.pow(k);
        out.push(entry(
            &format!("prufer-trunc-3-{k}"),
            format!("group prufer_trunc_3_{k} {{ gens: a,b; rels: a^{order}, b^2, a^b = a^-1; }}"),
            2 * order,
            &["prufer-truncation", "dihedral"],
        ));
    }
    out
}

/// Load a presentation file as corpus entries. Names must be unique; loaded
/// entries carry no expected order and no tags.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)?;
    let groups = parse_presentations(&text)?;
    let mut out: Vec<CorpusEntry> = Vec::new();
    for p in groups {
        if out.iter().any(|e| e.name == p.name) {
            return Err(Error::DuplicateName(p.name));
        }
        out.push(CorpusEntry {
            name: p.name.clone(),
            presentation: p,
            expected_order: None,
            tags: Vec::new(),
        });
    }
    Ok(out)
}

pub fn find_entry<'a>(entries: &'a [CorpusEntry], name: &str) -> Result<&'a CorpusEntry> {
    entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::todd_coxeter;

    #[test]
    fn builtin_names_unique_and_expected_orders_present() {
        let corpus = builtin_corpus();
        assert_eq!(corpus.len(), 27);
        for (i, e) in corpus.iter().enumerate() {
            assert!(e.expected_order.is_some());
            assert!(!corpus[..i].iter().any(|f| f.name == e.name));
        }
        assert_eq!(find_entry(&corpus, "S3").unwrap().expected_order, Some(6));
        assert_eq!(find_entry(&corpus, "Q8").unwrap().expected_order, Some(8));
        assert_eq!(
            find_entry(&corpus, "prufer-trunc-3-2").unwrap().expected_order,
            Some(18)
        );
    }

    #[test]
    fn builtin_presentations_enumerate_to_expected_order() {
        for e in builtin_corpus() {
            let t = todd_coxeter(&e.presentation, &[], 10_000);
            assert!(t.is_complete(), "{} overflowed", e.name);
            assert_eq!(
                t.live() as u64,
                e.expected_order.unwrap(),
                "{} has wrong order",
                e.name
            );
        }
    }

    #[test]
    fn load_corpus_roundtrip_and_errors() {
        let dir = std::env::temp_dir().join("nu-corpus-tests");
        std::fs::create_dir_all(&dir).unwrap();

        let ok = dir.join("ok.groups");
        std::fs::write(&ok, "group X { gens: a; rels: a^4; }\n").unwrap();
        let entries = load_corpus(&ok).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].name, "X");
        assert!(entries[0].expected_order.is_none());

        let dup = dir.join("dup.groups");
        std::fs::write(
            &dup,
            "group X { gens: a; rels: a^2; } group X { gens: b; rels: b^2; }",
        )
        .unwrap();
        assert!(matches!(load_corpus(&dup), Err(Error::DuplicateName(_))));

        let empty = dir.join("empty.groups");
        std::fs::write(&empty, "# nothing here\n").unwrap();
        assert!(load_corpus(&empty).unwrap().is_empty());
    }
}
