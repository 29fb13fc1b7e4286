//! DIMACS CNF and 2-block QDIMACS input. Universal (or plain CNF)
//! variable `i` becomes atom `y<i>`, existential variable `i` becomes `x<i>`.

use std::collections::BTreeMap;

use super::{CnfFormula, Literal, Qbf2};
use crate::error::{Error, Result};
use crate::program::Atom;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Dimacs {
        line,
        message: message.into(),
    }
}

struct Parsed {
    vars: usize,
    prefix: Vec<(char, Vec<usize>, usize)>,
    clauses: Vec<Vec<i64>>,
}

fn parse(text: &str, format: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err(ln, "duplicate problem line"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                [f, v, c] if *f == format => {
                    let v = v.parse().map_err(|_| err(ln, "bad variable count"))?;
                    let c = c.parse().map_err(|_| err(ln, "bad clause count"))?;
                    header = Some((v, c));
                }
                _ => return Err(err(ln, format!("expected `p {format} <vars> <clauses>`"))),
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(err(ln, "data before the problem line"));
        };
        let mut tokens = line.split_whitespace().peekable();
        if let Some(&q @ ("a" | "e")) = tokens.peek() {
            if !clauses.is_empty() || !current.is_empty() {
                return Err(err(ln, "quantifier line after clauses"));
            }
            tokens.next();
            let mut block = Vec::new();
            let mut closed = false;
            for t in tokens {
                let n: usize = t.parse().map_err(|_| err(ln, format!("bad variable `{t}`")))?;
                if n == 0 {
                    closed = true;
                    break;
                }
                if n > vars {
                    return Err(err(ln, format!("variable {n} exceeds the declared {vars}")));
                }
                block.push(n);
            }
            if !closed {
                return Err(err(ln, "quantifier line must end with 0"));
            }
            prefix.push((q.chars().next().expect("nonempty"), block, ln));
            continue;
        }
        for t in tokens {
            let n: i64 = t.parse().map_err(|_| err(ln, format!("bad literal `{t}`")))?;
            if n == 0 {
                if current.is_empty() {
                    return Err(err(ln, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if n.unsigned_abs() as usize > vars {
                    return Err(err(ln, format!("variable {} exceeds the declared {vars}", n.abs())));
                }
                current.push(n);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(err(last_line, "missing problem line"));
    };
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(err(last_line, format!("declared {count} clauses, found {}", clauses.len())));
    }
    Ok(Parsed { vars, prefix, clauses })
}

fn named(prefix: char, i: usize) -> Atom {
    Atom::new(&format!("{prefix}{i}")).expect("generated names are valid")
}

fn literals(clauses: &[Vec<i64>], name: impl Fn(usize) -> Atom) -> Vec<Vec<Literal>> {
    clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|&n| Literal {
                    atom: name(n.unsigned_abs() as usize),
                    positive: n > 0,
                })
                .collect()
        })
        .collect()
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let p = parse(text, "cnf")?;
    if let Some((_, _, ln)) = p.prefix.first() {
        return Err(err(*ln, "quantifier lines are not allowed in CNF input"));
    }
    let vars: Vec<Atom> = (1..=p.vars).map(|i| named('y', i)).collect();
    CnfFormula::new(vars, literals(&p.clauses, |i| named('y', i)))
}

/// Accepts exactly one `a` line followed by one `e` line.
pub fn parse_qdimacs(text: &str) -> Result<Qbf2> {
    let p = parse(text, "cnf")?;
    let (ys, xs) = match p.prefix.as_slice() {
        [('a', ys, _), ('e', xs, _)] => (ys, xs),
        [.., (_, _, ln)] => return Err(err(*ln, "prefix must be one `a` block followed by one `e` block")),
        [] => return Err(err(1, "missing quantifier prefix")),
    };
    let mut block: BTreeMap<usize, char> = BTreeMap::new();
    for (q, vs) in [('y', ys), ('x', xs)] {
        for &v in vs {
            if block.insert(v, q).is_some() {
                return Err(err(1, format!("variable {v} is quantified twice")));
            }
        }
    }
    for c in &p.clauses {
        for n in c {
            let v = n.unsigned_abs() as usize;
            if !block.contains_key(&v) {
                return Err(err(1, format!("variable {v} is not quantified")));
            }
        }
    }
    let name = |i: usize| named(block[&i], i);
    Qbf2::new(
        ys.iter().map(|&i| named('y', i)).collect(),
        xs.iter().map(|&i| named('x', i)).collect(),
        literals(&p.clauses, name),
    )
}
