//! Text format for programs.
//!
//! ```text
//! % comment
//! a | b :- c, not d.
//! :- y, y'.
//! f.
//! ```

use crate::error::{Error, Result};
use crate::program::{is_ident_char, Atom, Program, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Bar,
    Comma,
    If,
    Dot,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: line_no, column });
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                '|' => {
                    push(&mut out, Tok::Bar);
                    i += 1;
                }
                ',' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Tok::Dot);
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Tok::If);
                    i += 2;
                }
                c if is_ident_char(c) => {
                    let start = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word.starts_with('_') {
                        return Err(Error::ReservedAtom {
                            name: word,
                            line: line_no,
                            column,
                        });
                    }
                    if !word.starts_with(|ch: char| ch.is_ascii_lowercase()) {
                        return Err(Error::Syntax {
                            line: line_no,
                            column,
                            message: format!("`{word}` is not a valid atom (atoms start with a lowercase letter)"),
                        });
                    }
                    let tok = if word == "not" { Tok::Not } else { Tok::Ident(word) };
                    push(&mut out, tok);
                }
                other => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        tok
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let atom = Atom::new(name)?;
                self.pos += 1;
                Ok(atom)
            }
            _ => self.error("expected an atom"),
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut head = Vec::new();
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            head.push(self.atom()?);
            while self.peek() == Some(&Tok::Bar) {
                self.pos += 1;
                head.push(self.atom()?);
            }
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        match self.peek() {
            Some(Tok::Dot) if !head.is_empty() => {}
            Some(Tok::If) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::Dot) {
                    loop {
                        if self.peek() == Some(&Tok::Not) {
                            self.pos += 1;
                            neg.push(self.atom()?);
                        } else {
                            pos.push(self.atom()?);
                        }
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
            }
            _ if head.is_empty() => return self.error("expected an atom or `:-`"),
            _ => return self.error("expected `|`, `:-` or `.`"),
        }
        match self.bump() {
            Some(Tok::Dot) => Ok(Rule::new(head, pos, neg)),
            _ => {
                self.pos -= 1;
                self.error("expected `.` at end of rule")
            }
        }
    }
}

pub fn parse_program(text: &str) -> Result<Program> {
    let toks = lex(text)?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map(|(i, l)| (i + 1, l.chars().count() + 1))
        .unwrap_or((1, 1));
    let mut parser = Parser { toks, pos: 0, end };
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        rules.push(parser.rule()?);
    }
    Ok(Program::new(rules))
}

impl std::str::FromStr for Program {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_program(s)
    }
}
