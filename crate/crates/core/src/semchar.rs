//! Membership in the characterization sets `Mod_A(P)`, `Mod_A^B(P)` and
//! `SE_A^B(P)`.
//!
//! Conditions are checked in order (1) to (5) and the first failing one is
//! reported. Subset quantifiers are evaluated by enumerating subsets of `Y`,
//! except in the Horn-based test for normal programs.

use std::collections::BTreeSet;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::alphabets::{AlphabetSpec, SearchUniverse};
use crate::bits::{lex_cmp, ones, proper_submasks, subset, submasks, BProgram, BReduct, Mask, Universe};
use crate::error::Result;
use crate::program::{Atom, Interpretation, Program};

/// A pair `(X, Y)` together with the outcome of a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPair {
    pub x: Interpretation,
    pub y: Interpretation,
    /// First violated condition, 1 to 5, or `None` for a member.
    pub failed_condition: Option<u8>,
}

impl CharPair {
    pub fn is_member(&self) -> bool {
        self.failed_condition.is_none()
    }
}

impl Serialize for CharPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

/// Masks of the head and body alphabets within a universe.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Alphabets {
    pub a: Mask,
    pub b: Mask,
    pub ab: Mask,
}

impl Alphabets {
    pub fn new(u: &Universe, heads: &AlphabetSpec, bodies: &AlphabetSpec) -> Self {
        let a = heads.mask(u);
        let b = bodies.mask(u);
        Alphabets { a, b, ab: a | b }
    }
}

/// Submasks of `m` in (size, lexicographic) order.
pub(crate) fn submasks_ordered(m: Mask) -> Vec<Mask> {
    let mut v: Vec<Mask> = submasks(m).collect();
    v.sort_by(|&p, &q| p.count_ones().cmp(&q.count_ones()).then_with(|| lex_cmp(p, q)));
    v
}

fn distinct(mut v: Vec<Mask>) -> Vec<Mask> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Condition (1) of `Mod_A^B`, i.e. membership of `y` in `Mod_A`.
/// Returns `T_P(y)` on success.
pub(crate) fn mod_a_mask(p: &BProgram, a: Mask, y: Mask) -> Option<Mask> {
    if !p.satisfied_by(y) {
        return None;
    }
    let t = p.tp(y)?;
    subset(y & !t, a).then_some(t)
}

/// Data about a fixed `Y` shared by all `X` in a `Mod_A^B` test.
pub(crate) struct ModY {
    y: Mask,
    pub t: Mask,
    /// Distinct `Z|_{A∪B}` over models `Z ⊊ Y`.
    sub: Vec<Mask>,
    cond3: bool,
}

impl ModY {
    /// `None` when `y` fails condition (1).
    pub fn new(p: &BProgram, al: &Alphabets, y: Mask) -> Option<ModY> {
        let t = mod_a_mask(p, al.a, y)?;
        let sub = distinct(
            proper_submasks(y)
                .filter(|&z| p.satisfied_by(z))
                .map(|z| z & al.ab)
                .collect(),
        );
        let cond3 = !sub.contains(&(y & al.ab));
        Some(ModY { y, t, sub, cond3 })
    }

    pub fn failed(&self, al: &Alphabets, x: Mask) -> Option<u8> {
        let y = self.y;
        if !subset(x, y & al.ab) {
            return Some(2);
        }
        if !self.cond3 {
            return Some(3);
        }
        let (xa, xb) = (x & al.a, x & al.b);
        if self
            .sub
            .iter()
            .any(|&z| z & al.b == xb && subset(xa, z & al.a))
        {
            return Some(4);
        }
        if xb == y & al.b && !subset(y & !self.t, x) {
            return Some(5);
        }
        None
    }
}

/// Data about a fixed `Y` shared by all `X` in an `SE_A^B` test.
pub(crate) struct SeY {
    y: Mask,
    /// Distinct `Z|_{A∪B}` over models `Z ⊊ Y` of `P^Y`.
    sub: Vec<Mask>,
    cond3: bool,
}

impl SeY {
    /// `None` when `y` fails condition (1).
    pub fn new(p: &BProgram, al: &Alphabets, y: Mask) -> Option<SeY> {
        if !p.satisfied_by(y) {
            return None;
        }
        let r = p.reduct(y);
        let sub = distinct(
            proper_submasks(y)
                .filter(|&z| r.satisfied_by(z))
                .map(|z| z & al.ab)
                .collect(),
        );
        let ya = y & al.a;
        let cond3 = !sub.iter().any(|&z| z & al.a == ya);
        Some(SeY { y, sub, cond3 })
    }

    pub fn failed(&self, al: &Alphabets, x: Mask) -> Option<u8> {
        let y = self.y;
        if !se_cond2(al, x, y) {
            return Some(2);
        }
        if !self.cond3 {
            return Some(3);
        }
        let (xa, xb) = (x & al.a, x & al.b);
        let violates4 = self.sub.iter().any(|&z| {
            let (za, zb) = (z & al.a, z & al.b);
            (subset(zb, xb) && subset(xa, za) && za != xa) || (subset(zb, xb) && zb != xb && subset(xa, za))
        });
        if violates4 {
            return Some(4);
        }
        let xab = x & al.ab;
        if xab != y & al.ab && self.sub.binary_search(&xab).is_err() {
            return Some(5);
        }
        None
    }
}

fn se_cond2(al: &Alphabets, x: Mask, y: Mask) -> bool {
    x == y || (subset(x, y & al.ab) && subset(x & al.a, y & al.a) && x & al.a != y & al.a)
}

/// Least-model based `SE_A^B` test for a fixed `Y`; the program must be
/// normal.
pub(crate) struct SeHornY {
    y: Mask,
    r: BReduct,
    cond3: bool,
}

impl SeHornY {
    pub fn new(p: &BProgram, al: &Alphabets, y: Mask) -> Option<SeHornY> {
        if !p.satisfied_by(y) {
            return None;
        }
        let r = p.reduct(y);
        let ya = y & al.a;
        let cond3 = !matches!(r.least_model(ya), Some(l) if l != y && subset(l, y) && l & al.a == ya);
        Some(SeHornY { y, r, cond3 })
    }

    pub fn failed(&self, al: &Alphabets, x: Mask) -> Option<u8> {
        let y = self.y;
        let below = |l: Mask| l != y && subset(l, y);
        if !se_cond2(al, x, y) {
            return Some(2);
        }
        if !self.cond3 {
            return Some(3);
        }
        let (xa, xb) = (x & al.a, x & al.b);
        if let Some(l) = self.r.least_model(xa) {
            if below(l) && subset(l & al.b, xb) && l & al.b != xb {
                return Some(4);
            }
        }
        for i in ones((y & !x) & al.a) {
            if let Some(l) = self.r.least_model((x | 1 << i) & al.a) {
                if below(l) && subset(l & al.b, xb) {
                    return Some(4);
                }
            }
        }
        let xab = x & al.ab;
        match self.r.least_model(xab) {
            Some(l) if subset(l, y) && l & al.ab == xab => None,
            _ => Some(5),
        }
    }
}

fn frame(p: &Program, extra: impl IntoIterator<Item = Atom>) -> (Universe, BProgram) {
    let u = Universe::new(p.atoms().into_iter().chain(extra));
    let bp = u.compile(p);
    (u, bp)
}

fn pair_atoms(x: &Interpretation, y: &Interpretation) -> impl Iterator<Item = Atom> {
    x.union(y).into_atoms().into_iter()
}

/// `Y ∈ Mod_{A'}(P)`. The program must be normal.
pub fn in_mod_a(p: &Program, y: &Interpretation, heads: &AlphabetSpec) -> Result<bool> {
    p.require_normal()?;
    let (u, bp) = frame(p, y.iter().cloned());
    Ok(mod_a_mask(&bp, heads.mask(&u), u.mask_of(y)).is_some())
}

/// Members of `Mod_{A'}(P)` inside `universe`, in (size, lexicographic) order.
pub fn mod_a_members(p: &Program, heads: &AlphabetSpec, universe: &BTreeSet<Atom>) -> Result<Vec<Interpretation>> {
    p.require_normal()?;
    let (u, bp) = frame(p, universe.iter().cloned());
    let a = heads.mask(&u);
    Ok(submasks_ordered(u.mask(universe.iter()))
        .into_iter()
        .filter(|&y| mod_a_mask(&bp, a, y).is_some())
        .map(|y| u.interp(y))
        .collect())
}

/// Tests `(X, Y) ∈ Mod_{A'}^{B'}(P)`. The program must be normal.
pub fn in_mod_ab(
    p: &Program,
    x: &Interpretation,
    y: &Interpretation,
    heads: &AlphabetSpec,
    bodies: &AlphabetSpec,
) -> Result<CharPair> {
    p.require_normal()?;
    let (u, bp) = frame(p, pair_atoms(x, y));
    let al = Alphabets::new(&u, heads, bodies);
    let failed = match ModY::new(&bp, &al, u.mask_of(y)) {
        None => Some(1),
        Some(info) => info.failed(&al, u.mask_of(x)),
    };
    Ok(CharPair {
        x: x.clone(),
        y: y.clone(),
        failed_condition: failed,
    })
}

fn pairs_in<T>(
    u: &Universe,
    al: &Alphabets,
    ys: Mask,
    allowed_y: impl Fn(Mask) -> bool,
    info: impl Fn(Mask) -> Option<T>,
    failed: impl Fn(&T, Mask) -> Option<u8>,
) -> Vec<CharPair> {
    let mut out = Vec::new();
    for y in submasks_ordered(ys).into_iter().filter(|&y| allowed_y(y)) {
        let Some(info) = info(y) else { continue };
        let mut xs = submasks_ordered(y & al.ab);
        if !subset(y, al.ab) {
            xs.push(y);
        }
        for x in xs {
            if failed(&info, x).is_none() {
                out.push(CharPair {
                    x: u.interp(x),
                    y: u.interp(y),
                    failed_condition: None,
                });
            }
        }
    }
    out
}

/// All members of `Mod_{A'}^{B'}(P)` with `X ⊆ Y ⊆ universe`, ordered by
/// `(|Y|, Y, |X|, X)`. The program must be normal.
pub fn mod_ab_pairs(
    p: &Program,
    heads: &AlphabetSpec,
    bodies: &AlphabetSpec,
    universe: &BTreeSet<Atom>,
) -> Result<Vec<CharPair>> {
    p.require_normal()?;
    let (u, bp) = frame(p, universe.iter().cloned());
    let al = Alphabets::new(&u, heads, bodies);
    Ok(pairs_in(
        &u,
        &al,
        u.mask(universe.iter()),
        |_| true,
        |y| ModY::new(&bp, &al, y),
        |info, x| info.failed(&al, x),
    ))
}

/// Tests `(X, Y) ∈ SE_{A'}^{B'}(P)` for an arbitrary program.
pub fn in_se_ab(
    p: &Program,
    x: &Interpretation,
    y: &Interpretation,
    heads: &AlphabetSpec,
    bodies: &AlphabetSpec,
) -> CharPair {
    let (u, bp) = frame(p, pair_atoms(x, y));
    let al = Alphabets::new(&u, heads, bodies);
    let failed = match SeY::new(&bp, &al, u.mask_of(y)) {
        None => Some(1),
        Some(info) => info.failed(&al, u.mask_of(x)),
    };
    CharPair {
        x: x.clone(),
        y: y.clone(),
        failed_condition: failed,
    }
}

/// Same verdict as [`in_se_ab`], computed through least models of Horn
/// programs. The program must be normal.
pub fn in_se_ab_normal(
    p: &Program,
    x: &Interpretation,
    y: &Interpretation,
    heads: &AlphabetSpec,
    bodies: &AlphabetSpec,
) -> Result<CharPair> {
    p.require_normal()?;
    let (u, bp) = frame(p, pair_atoms(x, y));
    let al = Alphabets::new(&u, heads, bodies);
    let failed = match SeHornY::new(&bp, &al, u.mask_of(y)) {
        None => Some(1),
        Some(info) => info.failed(&al, u.mask_of(x)),
    };
    Ok(CharPair {
        x: x.clone(),
        y: y.clone(),
        failed_condition: failed,
    })
}

/// All members of `SE_{A'}^{B'}(P)` with `X ⊆ Y ⊆ universe.atoms` and at
/// most `max_padding` padding atoms in `Y`, ordered by `(|Y|, Y, |X|, X)`.
pub fn se_ab_pairs(
    p: &Program,
    heads: &AlphabetSpec,
    bodies: &AlphabetSpec,
    universe: &SearchUniverse,
    max_padding: usize,
) -> Vec<CharPair> {
    let (u, bp) = frame(p, universe.atoms.iter().cloned());
    let al = Alphabets::new(&u, heads, bodies);
    let pad = u.mask(universe.padding.iter());
    pairs_in(
        &u,
        &al,
        u.mask(universe.atoms.iter()),
        |y| (y & pad).count_ones() as usize <= max_padding,
        |y| SeY::new(&bp, &al, y),
        |info, x| info.failed(&al, x),
    )
}
