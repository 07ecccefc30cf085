//! `head :- lit, ..., lit.` programs.
//!
//! Constants are lowercase-initial identifiers or numerals, variables are
//! uppercase-initial identifiers, `%` starts a comment. A body atom may pool
//! argument tuples: `p(X;Y)` stands for `p(X), p(Y)` and `q(a,b;c,d)` for
//! `q(a,b), q(c,d)`. `#edb p/2.` and `#idb p/2.` override the automatic
//! classification of a predicate.

use super::TextError;
use crate::logic::{Atom, Clause, PredClass, PredKey, Program, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    If,
    Slash,
    Hash,
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> TextError {
        TextError::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) {
        if self.src[self.at] == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        self.at += 1;
    }

    /// The next token with its position, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>, TextError> {
        loop {
            match self.src.get(self.at) {
                None => return Ok(None),
                Some(b'%') => {
                    while self.src.get(self.at).is_some_and(|&c| c != b'\n') {
                        self.bump();
                    }
                }
                Some(c) if c.is_ascii_whitespace() => self.bump(),
                Some(_) => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let c = self.src[self.at];
        let word = |lx: &mut Self, pred: fn(u8) -> bool| {
            let start = lx.at;
            while lx.src.get(lx.at).is_some_and(|&c| pred(c)) {
                lx.bump();
            }
            String::from_utf8_lossy(&lx.src[start..lx.at]).into_owned()
        };
        let tok = match c {
            b'(' | b')' | b',' | b';' | b'.' | b'/' | b'#' => {
                self.bump();
                match c {
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b',' => Tok::Comma,
                    b';' => Tok::Semi,
                    b'.' => Tok::Dot,
                    b'/' => Tok::Slash,
                    _ => Tok::Hash,
                }
            }
            b':' => {
                self.bump();
                if self.src.get(self.at) != Some(&b'-') {
                    return Err(TextError::Syntax { line, col, msg: "expected `:-`".into() });
                }
                self.bump();
                Tok::If
            }
            c if c.is_ascii_digit() => Tok::Num(word(self, |c| c.is_ascii_digit())),
            c if c.is_ascii_alphabetic() => Tok::Ident(word(self, |c| c.is_ascii_alphanumeric() || c == b'_')),
            _ => return Err(self.err(format!("unexpected character `{}`", c as char))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
    /// Position just past the last consumed token, for end-of-input errors.
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<Option<&Tok>, TextError> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref().map(|(t, _, _)| t))
    }

    fn next(&mut self) -> Result<(Tok, usize, usize), TextError> {
        self.peek()?;
        match self.peeked.take() {
            Some(t) => {
                self.end = (self.lexer.line, self.lexer.col);
                Ok(t)
            }
            None => Err(TextError::Syntax { line: self.end.0, col: self.end.1, msg: "unexpected end of input".into() }),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), TextError> {
        let (t, line, col) = self.next()?;
        if t == want {
            Ok(())
        } else {
            Err(TextError::Syntax { line, col, msg: format!("expected {what}") })
        }
    }

    fn pred_name(&mut self) -> Result<String, TextError> {
        match self.next()? {
            (Tok::Ident(s), _, _) if s.starts_with(|c: char| c.is_ascii_lowercase()) => Ok(s),
            (_, line, col) => Err(TextError::Syntax { line, col, msg: "expected a predicate name".into() }),
        }
    }

    fn term(&mut self) -> Result<Term, TextError> {
        match self.next()? {
            (Tok::Num(s), _, _) => Ok(Term::constant(&s)),
            (Tok::Ident(s), _, _) if s.starts_with(|c: char| c.is_ascii_uppercase()) => Ok(Term::var(&s)),
            (Tok::Ident(s), _, _) => Ok(Term::constant(&s)),
            (_, line, col) => Err(TextError::Syntax { line, col, msg: "expected a constant or variable".into() }),
        }
    }

    /// An atom, expanded over its pooled argument tuples. `pool` says whether
    /// `;` is allowed.
    fn atom(&mut self, pool: bool) -> Result<Vec<Atom>, TextError> {
        let name = self.pred_name()?;
        if self.peek()? != Some(&Tok::LParen) {
            return Ok(vec![Atom::prop(&name)]);
        }
        self.next()?;
        let mut tuples = vec![vec![self.term()?]];
        loop {
            let (t, line, col) = self.next()?;
            match t {
                Tok::Comma => {
                    let term = self.term()?;
                    tuples.last_mut().unwrap().push(term);
                }
                Tok::Semi if pool => tuples.push(vec![self.term()?]),
                Tok::Semi => {
                    return Err(TextError::Syntax {
                        line,
                        col,
                        msg: "pooling with `;` is only allowed in clause bodies".into(),
                    })
                }
                Tok::RParen => break,
                _ => return Err(TextError::Syntax { line, col, msg: "expected `,`, `;` or `)`".into() }),
            }
        }
        let arity = tuples[0].len();
        if tuples.iter().any(|t| t.len() != arity) {
            return Err(self.pos_err("pooled argument tuples differ in length"));
        }
        Ok(tuples.into_iter().map(|args| Atom::new(&name, args)).collect())
    }

    fn pos_err(&self, msg: &str) -> TextError {
        TextError::Syntax { line: self.end.0, col: self.end.1, msg: msg.into() }
    }

    fn directive(&mut self, program: &mut Program) -> Result<(), TextError> {
        let (kw, line, col) = self.next()?;
        let class = match kw {
            Tok::Ident(s) if s == "edb" => PredClass::Extensional,
            Tok::Ident(s) if s == "idb" => PredClass::Intensional,
            _ => return Err(TextError::Syntax { line, col, msg: "expected `edb` or `idb`".into() }),
        };
        let name = self.pred_name()?;
        self.expect(Tok::Slash, "`/`")?;
        let arity = match self.next()? {
            (Tok::Num(n), line, col) => {
                n.parse::<usize>().map_err(|_| TextError::Syntax { line, col, msg: "arity out of range".into() })?
            }
            (_, line, col) => return Err(TextError::Syntax { line, col, msg: "expected an arity".into() }),
        };
        self.expect(Tok::Dot, "`.`")?;
        program.add_directive(PredKey::new(&name, arity), class);
        Ok(())
    }

    fn clause(&mut self) -> Result<Clause, TextError> {
        let head = self.atom(false)?.remove(0);
        let (t, line, col) = self.next()?;
        match t {
            Tok::Dot => return Ok(Clause::fact(head)),
            Tok::If => {}
            _ => return Err(TextError::Syntax { line, col, msg: "expected `:-` or `.`".into() }),
        }
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        loop {
            let negated = matches!(self.peek()?, Some(Tok::Ident(s)) if s == "not");
            if negated {
                self.next()?;
                neg.extend(self.atom(true)?);
            } else {
                pos.extend(self.atom(true)?);
            }
            let (t, line, col) = self.next()?;
            match t {
                Tok::Comma => continue,
                Tok::Dot => break,
                _ => return Err(TextError::Syntax { line, col, msg: "expected `,` or `.`".into() }),
            }
        }
        Ok(Clause::new(head, pos, neg))
    }
}

pub fn parse_program(text: &str) -> Result<Program, TextError> {
    let mut p = Parser { lexer: Lexer { src: text.as_bytes(), at: 0, line: 1, col: 1 }, peeked: None, end: (1, 1) };
    let mut program = Program::default();
    while let Some(t) = p.peek()? {
        if *t == Tok::Hash {
            p.next()?;
            p.directive(&mut program)?;
        } else {
            let c = p.clause()?;
            program.push(c);
        }
    }
    Ok(program)
}
