use crate::dsl::ast::{
    ArrowDecl, CategorySection, CompDecl, Mode, Name, Payload, SpecFile, WitnessRef,
};
use crate::dsl::lexer::{lex, SyntaxError, Tok, Token};

const KEYWORDS: &[&str] = &[
    "category",
    "mode",
    "object",
    "arrow",
    "comp",
    "weq",
    "functor",
    "nat",
    "cylinder",
    "lhomotopy",
    "monad",
    "algebra",
    "idem",
];

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let t = self.peek();
        Err(SyntaxError {
            pos: t.pos,
            message: format!("expected {expected}, found {}", t.tok),
        })
    }

    fn skip_seps(&mut self) {
        while self.peek().tok == Tok::Sep {
            self.next();
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name, SyntaxError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = Name {
                    text: s.clone(),
                    pos: self.peek().pos,
                };
                self.next();
                Ok(name)
            }
            _ => self.error(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => self.error(&format!("'{kw}'")),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            self.error(&tok.to_string())
        }
    }

    fn end_statement(&mut self) -> Result<(), SyntaxError> {
        match self.peek().tok {
            Tok::Sep => {
                self.skip_seps();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of statement"),
        }
    }

    /// Identifiers up to the end of the statement.
    fn ident_list(&mut self, what: &str) -> Result<Vec<Name>, SyntaxError> {
        let mut out = vec![self.ident(what)?];
        while let Tok::Ident(_) = self.peek().tok {
            out.push(self.ident(what)?);
        }
        self.end_statement()?;
        Ok(out)
    }

    fn open_block(&mut self) -> Result<(), SyntaxError> {
        self.expect(Tok::LBrace)?;
        self.skip_seps();
        Ok(())
    }

    /// Entries `kw A => B` inside a block, terminated by `}`.
    fn mapping_block(&mut self, kws: &[&str]) -> Result<Vec<(String, Name, Name)>, SyntaxError> {
        self.open_block()?;
        let mut out = Vec::new();
        loop {
            self.skip_seps();
            if self.peek().tok == Tok::RBrace {
                self.next();
                return Ok(out);
            }
            let kw = match &self.peek().tok {
                Tok::Ident(s) if kws.contains(&s.as_str()) => s.clone(),
                _ => {
                    return self.error(
                        &kws.iter()
                            .map(|k| format!("'{k}'"))
                            .collect::<Vec<_>>()
                            .join(" or "),
                    )
                }
            };
            self.next();
            let a = self.ident("a name")?;
            if kw == "at" {
                self.expect(Tok::Colon)?;
            } else {
                self.expect(Tok::FatArrow)?;
            }
            let b = self.ident("a name")?;
            out.push((kw, a, b));
            if self.peek().tok == Tok::Sep {
                self.skip_seps();
            } else if self.peek().tok != Tok::RBrace {
                return self.error("';', a new line or '}'");
            }
        }
    }

    fn witness(&mut self) -> Result<WitnessRef, SyntaxError> {
        let n = self.ident("STRICT or a homotopy name")?;
        Ok(if n.text == "STRICT" {
            WitnessRef::Strict
        } else {
            WitnessRef::Homotopy(n)
        })
    }

    /// `kw value` pairs inside a block in the given order.
    fn fields(&mut self, kws: &[&str]) -> Result<Vec<Name>, SyntaxError> {
        let mut out = Vec::new();
        for kw in kws {
            self.skip_seps();
            self.keyword(kw)?;
            out.push(self.ident("a name")?);
        }
        Ok(out)
    }

    fn close_block(&mut self) -> Result<(), SyntaxError> {
        self.skip_seps();
        self.expect(Tok::RBrace)?;
        self.end_statement()
    }

    fn payload(&mut self, kw: &str) -> Result<Payload, SyntaxError> {
        match kw {
            "functor" => {
                let name = self.ident("a functor name")?;
                let signature = if self.peek().tok == Tok::Colon {
                    self.next();
                    let a = self.ident("a category name")?;
                    self.expect(Tok::Arrow)?;
                    let b = self.ident("a category name")?;
                    Some((a, b))
                } else {
                    None
                };
                let entries = self.mapping_block(&["obj", "arr"])?;
                self.end_statement()?;
                let (mut objects, mut arrows) = (Vec::new(), Vec::new());
                for (k, a, b) in entries {
                    if k == "obj" {
                        objects.push((a, b));
                    } else {
                        arrows.push((a, b));
                    }
                }
                Ok(Payload::Functor {
                    name,
                    signature,
                    objects,
                    arrows,
                })
            }
            "nat" => {
                let name = self.ident("a transformation name")?;
                self.expect(Tok::Colon)?;
                let source = self.ident("a functor name")?;
                self.expect(Tok::FatArrow)?;
                let target = self.ident("a functor name")?;
                let entries = self.mapping_block(&["at"])?;
                self.end_statement()?;
                Ok(Payload::Nat {
                    name,
                    source,
                    target,
                    components: entries.into_iter().map(|(_, a, b)| (a, b)).collect(),
                })
            }
            "cylinder" => {
                let base = self.ident("an object")?;
                self.open_block()?;
                let f = self.fields(&["obj", "i0", "i1", "p"])?;
                self.close_block()?;
                let [object, i0, i1, p]: [Name; 4] = f.try_into().expect("four fields");
                Ok(Payload::Cylinder {
                    base,
                    object,
                    i0,
                    i1,
                    p,
                })
            }
            "lhomotopy" => {
                let name = self.ident("a homotopy name")?;
                self.open_block()?;
                let f = self.fields(&["cyl", "f", "g", "via"])?;
                self.close_block()?;
                let [cylinder, f, g, via]: [Name; 4] = f.try_into().expect("four fields");
                Ok(Payload::LHomotopy {
                    name,
                    cylinder,
                    f,
                    g,
                    via,
                })
            }
            "monad" => {
                let name = self.ident("a monad name")?;
                self.open_block()?;
                let f = self.fields(&["functor", "eta", "mu"])?;
                self.close_block()?;
                let [functor, eta, mu]: [Name; 3] = f.try_into().expect("three fields");
                Ok(Payload::Monad {
                    name,
                    functor,
                    eta,
                    mu,
                })
            }
            "algebra" => {
                let name = self.ident("an algebra name")?;
                self.open_block()?;
                let f = self.fields(&["monad", "obj", "act"])?;
                self.skip_seps();
                self.keyword("unit")?;
                let unit = self.witness()?;
                self.skip_seps();
                self.keyword("assoc")?;
                let assoc = self.witness()?;
                self.close_block()?;
                let [monad, object, action]: [Name; 3] = f.try_into().expect("three fields");
                Ok(Payload::Algebra {
                    name,
                    monad,
                    object,
                    action,
                    unit,
                    assoc,
                })
            }
            "idem" => {
                let name = self.ident("an idempotent name")?;
                self.open_block()?;
                let f = self.fields(&["functor", "ell"])?;
                let mut witnesses = Vec::new();
                loop {
                    self.skip_seps();
                    if !self.is_keyword("cyl") {
                        break;
                    }
                    self.next();
                    let z = self.ident("an object")?;
                    witnesses.push((z, self.witness()?));
                }
                self.close_block()?;
                let [functor, ell]: [Name; 2] = f.try_into().expect("two fields");
                Ok(Payload::Idem {
                    name,
                    functor,
                    ell,
                    witnesses,
                })
            }
            _ => unreachable!("payload keywords are matched by the caller"),
        }
    }

    fn category(&mut self) -> Result<CategorySection, SyntaxError> {
        self.skip_seps();
        self.keyword("category")?;
        let name = self.ident("a category name")?;
        self.end_statement()?;
        let mut section = CategorySection {
            name,
            mode: Mode::Table,
            objects: Vec::new(),
            arrows: Vec::new(),
            composites: Vec::new(),
            weq: Vec::new(),
            payloads: Vec::new(),
        };
        loop {
            self.skip_seps();
            let kw = match &self.peek().tok {
                Tok::Eof => return Ok(section),
                Tok::Ident(s) if s == "category" => return Ok(section),
                Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => s.clone(),
                Tok::Ident(s) => {
                    return Err(SyntaxError {
                        pos: self.peek().pos,
                        message: format!("unknown keyword '{s}'"),
                    })
                }
                _ => return self.error("a keyword"),
            };
            self.next();
            match kw.as_str() {
                "mode" => {
                    let m = self.ident("'table' or 'free-acyclic'")?;
                    section.mode = match m.text.as_str() {
                        "table" => Mode::Table,
                        "free-acyclic" => Mode::FreeAcyclic,
                        _ => {
                            return Err(SyntaxError {
                                pos: m.pos,
                                message: format!(
                                    "expected 'table' or 'free-acyclic', found '{}'",
                                    m.text
                                ),
                            })
                        }
                    };
                    self.end_statement()?;
                }
                "object" => section.objects.extend(self.ident_list("an object name")?),
                "weq" => section.weq.extend(self.ident_list("a morphism name")?),
                "arrow" => {
                    let name = self.ident("an arrow name")?;
                    self.expect(Tok::Colon)?;
                    let source = self.ident("an object")?;
                    self.expect(Tok::Arrow)?;
                    let target = self.ident("an object")?;
                    self.end_statement()?;
                    section.arrows.push(ArrowDecl {
                        name,
                        source,
                        target,
                    });
                }
                "comp" => {
                    let outer = self.ident("a morphism")?;
                    self.expect(Tok::Dot)?;
                    let inner = self.ident("a morphism")?;
                    self.expect(Tok::Equals)?;
                    let result = self.ident("a morphism")?;
                    self.end_statement()?;
                    section.composites.push(CompDecl {
                        outer,
                        inner,
                        result,
                    });
                }
                other => section.payloads.push(self.payload(other)?),
            }
        }
    }
}

/// Parses a spec file. Statements end at a newline or `;`; blocks may span
/// lines; `#` starts a comment.
pub fn parse_spec(text: &str) -> Result<SpecFile, SyntaxError> {
    let mut p = Parser {
        tokens: lex(text)?,
        at: 0,
    };
    let mut categories = Vec::new();
    p.skip_seps();
    if p.peek().tok == Tok::Eof {
        return Err(SyntaxError {
            pos: p.peek().pos,
            message: "expected 'category'".into(),
        });
    }
    while p.peek().tok != Tok::Eof {
        categories.push(p.category()?);
        p.skip_seps();
    }
    Ok(SpecFile { categories })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        let err = parse_spec("").unwrap_err();
        assert_eq!(err.to_string(), "1:1: expected 'category'");
    }

    #[test]
    fn unknown_keyword() {
        let err = parse_spec("category C\nobject X\nfoo bar\n").unwrap_err();
        assert_eq!(err.to_string(), "3:1: unknown keyword 'foo'");
    }

    #[test]
    fn blocks_and_lists() {
        let text = "category C; mode table\nobject X Y\narrow f : X -> Y\nweq f\n\
                    functor F { obj X => X; obj Y => Y\n arr f => f }\n\
                    nat n : F => F { at X : id_X; at Y : id_Y }\n";
        let spec = parse_spec(text).unwrap();
        let c = &spec.categories[0];
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.payloads.len(), 2);
    }
}
