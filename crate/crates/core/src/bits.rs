//! Bitmask representation of programs over a fixed finite universe.
//!
//! Atoms are indexed in name order, so comparing sorted index lists is the
//! same as comparing sorted name lists.

use std::collections::{BTreeSet, HashMap};

use crate::program::{Atom, Interpretation, Program};

pub(crate) type Mask = u64;

pub(crate) const MAX_BITS: usize = 63;

#[derive(Debug, Clone)]
pub(crate) struct Universe {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
}

impl Universe {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let atoms: Vec<Atom> = atoms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        assert!(
            atoms.len() <= MAX_BITS,
            "universe of {} atoms exceeds the {MAX_BITS}-atom engine limit",
            atoms.len()
        );
        let index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Universe { atoms, index }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn full(&self) -> Mask {
        low_bits(self.atoms.len())
    }

    pub fn bit(&self, atom: &Atom) -> Option<Mask> {
        self.index.get(atom).map(|&i| 1 << i)
    }

    /// Mask of the atoms of `set` that lie in the universe.
    pub fn mask<'a>(&self, set: impl IntoIterator<Item = &'a Atom>) -> Mask {
        set.into_iter().filter_map(|a| self.bit(a)).fold(0, |m, b| m | b)
    }

    /// Mask of an interpretation that must lie inside the universe.
    pub fn mask_of(&self, m: &Interpretation) -> Mask {
        m.iter()
            .map(|a| {
                self.bit(a)
                    .unwrap_or_else(|| panic!("atom {a} is outside the universe"))
            })
            .fold(0, |acc, b| acc | b)
    }

    pub fn interp(&self, mask: Mask) -> Interpretation {
        ones(mask).map(|i| self.atoms[i].clone()).collect()
    }

    pub fn compile(&self, p: &Program) -> BProgram {
        BProgram {
            rules: p
                .rules()
                .iter()
                .map(|r| BRule {
                    head: self.mask_of(&r.head().clone().into()),
                    pos: self.mask_of(&r.pos_body().clone().into()),
                    neg: self.mask_of(&r.neg_body().clone().into()),
                })
                .collect(),
        }
    }
}

pub(crate) fn low_bits(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Indices of set bits, ascending.
pub(crate) fn ones(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Proper submasks of `m`, from `m - lowest` downwards to 0.
pub(crate) fn proper_submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = if m == 0 { None } else { Some((m - 1) & m) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// All submasks of `m`, including `m` itself.
pub(crate) fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    std::iter::once(m).chain(proper_submasks(m))
}

#[inline]
pub(crate) fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Compares two masks as sorted index lists of equal length.
pub(crate) fn lex_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    ones(a).cmp(ones(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BRule {
    pub head: Mask,
    pub pos: Mask,
    pub neg: Mask,
}

impl BRule {
    #[inline]
    pub fn body_sat(&self, m: Mask) -> bool {
        subset(self.pos, m) && self.neg & m == 0
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct BProgram {
    pub rules: Vec<BRule>,
}

impl BProgram {
    pub fn satisfied_by(&self, m: Mask) -> bool {
        self.rules
            .iter()
            .all(|r| !r.body_sat(m) || r.head & m != 0)
    }

    /// `None` when a constraint fires.
    pub fn tp(&self, m: Mask) -> Option<Mask> {
        let mut out = 0;
        for r in &self.rules {
            if r.body_sat(m) {
                if r.head == 0 {
                    return None;
                }
                out |= r.head;
            }
        }
        Some(out)
    }

    /// The positive rules of the reduct `P^y`.
    pub fn reduct(&self, y: Mask) -> BReduct {
        BReduct {
            rules: self
                .rules
                .iter()
                .filter(|r| r.neg & y == 0)
                .map(|r| BRule {
                    head: r.head,
                    pos: r.pos,
                    neg: 0,
                })
                .collect(),
        }
    }

    pub fn is_minimal_model(&self, m: Mask) -> bool {
        self.satisfied_by(m) && !proper_submasks(m).any(|z| self.satisfied_by(z))
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(|r| r.head.count_ones() <= 1)
    }

    /// Minimal hitting set test for the heads of rules whose bodies `m`
    /// satisfies.
    pub fn is_supported(&self, m: Mask) -> bool {
        let mut family = Vec::new();
        for r in &self.rules {
            if r.body_sat(m) {
                if r.head & m == 0 {
                    return false;
                }
                family.push(r.head);
            }
        }
        ones(m).all(|i| {
            let rest = m & !(1 << i);
            family.iter().any(|&h| h & rest == 0)
        })
    }
}

/// A positive program, the reduct of some program.
#[derive(Debug, Clone, Default)]
pub(crate) struct BReduct {
    pub rules: Vec<BRule>,
}

impl BReduct {
    pub fn satisfied_by(&self, m: Mask) -> bool {
        self.rules
            .iter()
            .all(|r| !subset(r.pos, m) || r.head & m != 0)
    }

    /// Least model of the definite rules plus `facts`, or `None` if a
    /// constraint is violated. All rules must be normal.
    pub fn least_model(&self, facts: Mask) -> Option<Mask> {
        let mut m = facts;
        loop {
            let mut next = m;
            for r in &self.rules {
                if r.head != 0 && subset(r.pos, next) {
                    next |= r.head;
                }
            }
            if next == m {
                break;
            }
            m = next;
        }
        let violated = self
            .rules
            .iter()
            .any(|r| r.head == 0 && subset(r.pos, m));
        (!violated).then_some(m)
    }
}
