//! Parser for the presentation file format.
//!
//! ```text
//! file  := group+
//! group := "group" NAME "{" "gens:" namelist ";" "rels:" relist ";" "}"
//! relist entries are either relator words or relations `word = word`
//! word  := term (("*")? term)*
//! term  := atom ("^" sword)?
//! atom  := NAME | "(" word ")" | "[" word "," word "]"
//! sword := INT | atom
//! ```
//!
//! `#` starts a comment. Conjugation `x^w` expands to `w⁻¹xw` and `[x, y]`
//! to `x⁻¹y⁻¹xy`; relations `u = v` are normalized to relators `u·v⁻¹`.

use crate::error::{Error, Result};
use crate::fp::{GeneratorSymbol, Presentation, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    bump(&mut chars);
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push(Spanned {
                    tok: Tok::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_digit() || c == '-' => {
                let mut s = String::new();
                s.push(bump(&mut chars));
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let v: i64 = s.parse().map_err(|_| Error::Parse {
                    line: tline,
                    col: tcol,
                    msg: format!("bad integer `{s}`"),
                })?;
                toks.push(Spanned {
                    tok: Tok::Int(v),
                    line: tline,
                    col: tcol,
                });
            }
            '{' | '}' | '(' | ')' | '[' | ']' | ';' | ':' | ',' | '*' | '^' | '=' => {
                bump(&mut chars);
                toks.push(Spanned {
                    tok: Tok::Punct(c),
                    line: tline,
                    col: tcol,
                });
            }
            other => {
                return Err(Error::Parse {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end_line: line,
        end_col: col,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Punct(p), ..
            }) if p == c => Ok(()),
            Some(s) => Err(Error::Parse {
                line: s.line,
                col: s.col,
                msg: format!("expected `{c}`, found {:?}", s.tok),
            }),
            None => Err(self.err(format!("expected `{c}`, found end of input"))),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize, usize)> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Ident(s),
                line,
                col,
            }) => Ok((s, line, col)),
            Some(s) => Err(Error::Parse {
                line: s.line,
                col: s.col,
                msg: format!("expected a name, found {:?}", s.tok),
            }),
            None => Err(self.err("expected a name, found end of input")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        let (s, line, col) = self.expect_ident()?;
        if s == kw {
            Ok(())
        } else {
            Err(Error::Parse {
                line,
                col,
                msg: format!("expected `{kw}`, found `{s}`"),
            })
        }
    }
}

struct GroupParser<'a> {
    lx: &'a mut Lexer,
    gens: Vec<GeneratorSymbol>,
}

impl<'a> GroupParser<'a> {
    fn gen_index(&self, name: &str, line: usize, col: usize) -> Result<u16> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
            .ok_or(Error::UndeclaredGenerator {
                name: name.into(),
                line,
                col,
            })
    }

    fn parse_word(&mut self) -> Result<Word> {
        let mut w = self.parse_term()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Punct('*')) => {
                    self.lx.next();
                    let t = self.parse_term()?;
                    w = w.concat(&t);
                }
                Some(Tok::Ident(_)) | Some(Tok::Punct('(')) | Some(Tok::Punct('[')) => {
                    let t = self.parse_term()?;
                    w = w.concat(&t);
                }
                _ => return Ok(w),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Word> {
        let atom = self.parse_atom()?;
        if let Some(Tok::Punct('^')) = self.lx.peek() {
            self.lx.next();
            match self.lx.peek() {
                Some(Tok::Int(_)) => {
                    let Some(Spanned {
                        tok: Tok::Int(v), ..
                    }) = self.lx.next()
                    else {
                        unreachable!()
                    };
                    let exp = i32::try_from(v).map_err(|_| self.lx.err("exponent too large"))?;
                    Ok(atom.pow(exp))
                }
                _ => {
                    let by = self.parse_atom()?;
                    Ok(atom.conjugated_by(&by))
                }
            }
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Word> {
        match self.lx.peek().cloned() {
            Some(Tok::Ident(_)) => {
                let (name, line, col) = self.lx.expect_ident()?;
                let idx = self.gen_index(&name, line, col)?;
                Ok(Word::gen(idx, 1))
            }
            Some(Tok::Punct('(')) => {
                self.lx.next();
                let w = self.parse_word()?;
                self.lx.expect_punct(')')?;
                Ok(w)
            }
            Some(Tok::Punct('[')) => {
                self.lx.next();
                let a = self.parse_word()?;
                self.lx.expect_punct(',')?;
                let b = self.parse_word()?;
                self.lx.expect_punct(']')?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(self.lx.err("expected a generator, `(` or `[`")),
        }
    }

    /// A relator or a relation `u = v`.
    fn parse_rel(&mut self) -> Result<Word> {
        let u = self.parse_word()?;
        if let Some(Tok::Punct('=')) = self.lx.peek() {
            self.lx.next();
            let v = self.parse_word()?;
            Ok(u.concat(&v.inverse()))
        } else {
            Ok(u)
        }
    }
}

fn parse_group(lx: &mut Lexer) -> Result<Presentation> {
    lx.expect_keyword("group")?;
    let (name, _, _) = lx.expect_ident()?;
    lx.expect_punct('{')?;
    lx.expect_keyword("gens")?;
    lx.expect_punct(':')?;

    let mut gens: Vec<GeneratorSymbol> = Vec::new();
    if !matches!(lx.peek(), Some(Tok::Punct(';'))) {
        loop {
            let (g, line, col) = lx.expect_ident()?;
            if gens.iter().any(|h| h.name == g) {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("generator `{g}` declared twice"),
                });
            }
            gens.push(GeneratorSymbol::plain(g));
            match lx.peek() {
                Some(Tok::Punct(',')) => {
                    lx.next();
                }
                _ => break,
            }
        }
    }
    lx.expect_punct(';')?;

    lx.expect_keyword("rels")?;
    lx.expect_punct(':')?;
    let mut relators = Vec::new();
    {
        let mut gp = GroupParser { lx, gens };
        if !matches!(gp.lx.peek(), Some(Tok::Punct(';'))) {
            loop {
                relators.push(gp.parse_rel()?);
                match gp.lx.peek() {
                    Some(Tok::Punct(',')) => {
                        gp.lx.next();
                    }
                    _ => break,
                }
            }
        }
        gens = gp.gens;
    }
    lx.expect_punct(';')?;
    lx.expect_punct('}')?;

    Presentation::new(name, gens, relators)
}

/// Parse a file of one or more groups.
pub fn parse_presentations(text: &str) -> Result<Vec<Presentation>> {
    let mut lx = lex(text)?;
    let mut out = Vec::new();
    while lx.peek().is_some() {
        out.push(parse_group(&mut lx)?);
    }
    Ok(out)
}

/// Parse exactly one group.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut groups = parse_presentations(text)?;
    match groups.len() {
        1 => Ok(groups.pop().unwrap()),
        n => Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("expected exactly one group, found {n}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c2() {
        let p = parse_presentation("group C2 { gens: a; rels: a^2; }").unwrap();
        assert_eq!(p.name, "C2");
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].flatten(), vec![1, 1]);
    }

    #[test]
    fn parses_s3() {
        let p = parse_presentation("group S3 { gens: a,b; rels: a^3, b^2, (a*b)^2; }").unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[2].flatten(), vec![1, 2, 1, 2]);
    }

    #[test]
    fn undeclared_generator_is_an_error() {
        let e = parse_presentation("group K { gens: a; rels: b^2; }").unwrap_err();
        assert!(matches!(e, Error::UndeclaredGenerator { ref name, .. } if name == "b"));
    }

    #[test]
    fn syntax_error_carries_position() {
        let e = parse_presentation("group K {\n gens a; rels: ; }").unwrap_err();
        match e {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col > 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn relations_normalize_to_relators() {
        let p = parse_presentation("group Q8 { gens: a,b; rels: a^4, b^2 = a^2, a^b = a^-1; }")
            .unwrap();
        // b^2 = a^2 becomes b^2 a^-2.
        assert_eq!(p.relators[1].flatten(), vec![2, 2, -1, -1]);
        // a^b = a^-1 becomes b⁻¹ab · a.
        assert_eq!(p.relators[2].flatten(), vec![-2, 1, 2, 1]);
    }

    #[test]
    fn commutator_and_conjugation_expand() {
        let p = parse_presentation("group K4 { gens: a,b; rels: a^2, b^2, [a,b]; }").unwrap();
        assert_eq!(p.relators[2].flatten(), vec![-1, -2, 1, 2]);
    }

    #[test]
    fn comments_and_multiple_groups() {
        let text = "# two groups\ngroup A { gens: a; rels: a^2; }\ngroup B { gens: b; rels: b^3; }";
        let groups = parse_presentations(text).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[1].name, "B");
    }

    #[test]
    fn empty_generator_list_for_trivial_group() {
        let p = parse_presentation("group T { gens: ; rels: ; }").unwrap();
        assert!(p.generators.is_empty());
        assert!(p.relators.is_empty());
    }

    #[test]
    fn roundtrip_through_to_text() {
        let src = "group Q8 { gens: a,b; rels: a^4, b^2 = a^2, a^b = a^-1; }";
        let p = parse_presentation(src).unwrap();
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, again);
    }
}
