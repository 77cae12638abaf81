use crate::conn::{Arg, Ctor, Statement, FLOOR};

use super::lexer::{Tok, Token};
use super::{ParseError, SourceSpan};

const KEYWORDS: [&str; 5] = ["obj", "map", "conn", "trunc", "noniso"];

/// Source locations of one statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementSpans {
    pub whole: SourceSpan,
    /// Spans of the names the statement introduces.
    pub defines: Vec<SourceSpan>,
    /// Spans of the names it refers to, in order.
    pub references: Vec<SourceSpan>,
}

/// Parsed statements with their locations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub statements: Vec<Statement>,
    pub spans: Vec<StatementSpans>,
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    errors: Vec<ParseError>,
}

type Step<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Step<T> {
        let t = self.peek();
        Err(ParseError {
            span: t.span.clone(),
            code: "syntax".into(),
            message: format!("unexpected {}", t.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Step<SourceSpan> {
        if self.peek().tok == tok {
            Ok(self.bump().span.clone())
        } else {
            self.fail(&[tok.symbol()])
        }
    }

    fn ident(&mut self) -> Step<(String, SourceSpan)> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                Ok((s, self.bump().span.clone()))
            }
            _ => self.fail(&["name"]),
        }
    }

    fn int(&mut self) -> Step<(i64, SourceSpan)> {
        match self.peek().tok {
            Tok::Int(n) => {
                let span = self.bump().span.clone();
                if n < FLOOR {
                    return Err(ParseError {
                        span,
                        code: "below-floor".into(),
                        message: format!("integer {n} is below the floor {FLOOR}"),
                        expected: Vec::new(),
                    });
                }
                Ok((n, span))
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn at_statement_start(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(s) => KEYWORDS.contains(&s.as_str()) || self.peek_at(1).tok == Tok::Equals,
            _ => false,
        }
    }

    /// Skips to the next token that can begin a statement, always moving
    /// past the statement that failed.
    fn recover(&mut self, statement_start: usize) {
        if self.pos == statement_start {
            self.bump();
        }
        while self.peek().tok != Tok::Eof && !self.at_statement_start() {
            self.bump();
        }
    }

    fn statement(&mut self) -> Step<(Statement, StatementSpans)> {
        let start = self.peek().span.clone();
        let keyword = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(&["'obj'", "'map'", "'conn'", "'trunc'", "'noniso'", "name"]),
        };
        let (stmt, defines, references) = match keyword.as_str() {
            "obj" => {
                self.bump();
                let mut names = Vec::new();
                let mut spans = Vec::new();
                loop {
                    let (n, s) = self.ident()?;
                    names.push(n);
                    spans.push(s);
                    let next_is_name = matches!(&self.peek().tok, Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()));
                    if !next_is_name || self.peek_at(1).tok == Tok::Equals {
                        break;
                    }
                }
                (Statement::Objects(names), spans, Vec::new())
            }
            "map" => {
                self.bump();
                let (name, ns) = self.ident()?;
                self.expect(Tok::Colon)?;
                let (dom, ds) = self.ident()?;
                self.expect(Tok::Arrow)?;
                let (cod, cs) = self.ident()?;
                (Statement::Map { name, dom, cod }, vec![ns], vec![ds, cs])
            }
            "conn" | "trunc" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let (map, ms) = self.ident()?;
                self.expect(Tok::RParen)?;
                let stmt = if keyword == "conn" {
                    self.expect(Tok::Ge)?;
                    Statement::Conn { map, n: self.int()?.0 }
                } else {
                    self.expect(Tok::Le)?;
                    Statement::Trunc { map, n: self.int()?.0 }
                };
                (stmt, Vec::new(), vec![ms])
            }
            "noniso" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let (map, ms) = self.ident()?;
                self.expect(Tok::RParen)?;
                (Statement::NonIso { map }, Vec::new(), vec![ms])
            }
            _ => {
                let (name, ns) = self.ident()?;
                self.expect(Tok::Equals)?;
                let (ctor, _) = match &self.peek().tok {
                    Tok::Ident(word) => match Ctor::from_keyword(word) {
                        Some(c) => (c, self.bump().span.clone()),
                        None => return self.fail(&Ctor::ALL.map(Ctor::keyword)),
                    },
                    _ => return self.fail(&Ctor::ALL.map(Ctor::keyword)),
                };
                self.expect(Tok::LParen)?;
                let mut args = Vec::new();
                let mut refs = Vec::new();
                if self.peek().tok != Tok::RParen {
                    loop {
                        match self.peek().tok {
                            Tok::Int(_) => args.push(Arg::Int(self.int()?.0)),
                            _ => {
                                let (n, s) = self.ident()?;
                                args.push(Arg::Name(n));
                                refs.push(s);
                            }
                        }
                        if self.peek().tok == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RParen)?;
                (Statement::Define { name, ctor, args }, vec![ns], refs)
            }
        };
        let end = self.toks[self.pos.saturating_sub(1)].span.clone();
        let whole = SourceSpan {
            file: start.file.clone(),
            line: start.line,
            start: start.start,
            end: if end.line == start.line { end.end } else { start.end },
        };
        Ok((stmt, StatementSpans { whole, defines, references }))
    }
}

/// Parses tokens into statements, resuming at the next statement after an
/// error.
pub fn parse_tokens(toks: &[Token]) -> (Program, Vec<ParseError>) {
    let mut p = Parser { toks, pos: 0, errors: Vec::new() };
    let mut program = Program { statements: Vec::new(), spans: Vec::new() };
    while p.peek().tok != Tok::Eof {
        let start = p.pos;
        match p.statement() {
            Ok((s, spans)) => {
                program.statements.push(s);
                program.spans.push(spans);
            }
            Err(e) => {
                p.errors.push(e);
                p.recover(start);
            }
        }
    }
    (program, p.errors)
}
