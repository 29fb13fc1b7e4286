//! Head and body alphabets, context classes and problem specifications.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::{Mask, Universe};
use crate::error::{Error, Result};
use crate::program::{Atom, Interpretation, Program};

/// Names of the two padding atoms for stable semantics with complement heads.
pub const PADDING_ATOMS: [&str; 2] = ["hx_p1", "hx_p2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlphabetKind {
    Direct,
    Complement,
}

/// A finite set of atoms, or the complement of one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphabetSpec {
    pub kind: AlphabetKind,
    pub base: BTreeSet<Atom>,
}

impl AlphabetSpec {
    pub fn direct(base: impl IntoIterator<Item = Atom>) -> Self {
        AlphabetSpec {
            kind: AlphabetKind::Direct,
            base: base.into_iter().collect(),
        }
    }

    pub fn complement(base: impl IntoIterator<Item = Atom>) -> Self {
        AlphabetSpec {
            kind: AlphabetKind::Complement,
            base: base.into_iter().collect(),
        }
    }

    /// The whole atom set.
    pub fn all() -> Self {
        Self::complement([])
    }

    pub fn empty() -> Self {
        Self::direct([])
    }

    pub fn is_direct(&self) -> bool {
        self.kind == AlphabetKind::Direct
    }

    pub fn is_complement(&self) -> bool {
        self.kind == AlphabetKind::Complement
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        match self.kind {
            AlphabetKind::Direct => self.base.contains(atom),
            AlphabetKind::Complement => !self.base.contains(atom),
        }
    }

    /// `V|_S`, computed as `V ∩ base` or `V ∖ base`.
    pub fn restrict(&self, v: &Interpretation) -> Interpretation {
        v.iter().filter(|a| self.contains(a)).cloned().collect()
    }

    pub(crate) fn mask(&self, u: &Universe) -> Mask {
        let base = u.mask(self.base.iter());
        match self.kind {
            AlphabetKind::Direct => base,
            AlphabetKind::Complement => u.full() & !base,
        }
    }
}

/// `V` restricted to the union of the given alphabets.
pub fn restrict(v: &Interpretation, parts: &[&AlphabetSpec]) -> Interpretation {
    v.iter()
        .filter(|a| parts.iter().any(|s| s.contains(a)))
        .cloned()
        .collect()
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            AlphabetKind::Direct => "direct",
            AlphabetKind::Complement => "complement",
        };
        let names: Vec<&str> = self.base.iter().map(Atom::name).collect();
        write!(f, "{kind}:{}", names.join(","))
    }
}

impl FromStr for AlphabetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlphabet(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let kind = match kind.trim() {
            "direct" | "d" => AlphabetKind::Direct,
            "complement" | "c" => AlphabetKind::Complement,
            _ => return Err(bad()),
        };
        let base = rest
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(|n| Atom::new(n).map_err(|_| bad()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(AlphabetSpec { kind, base })
    }
}

impl Serialize for AlphabetSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphabetSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `HB(A', B')`: programs with heads from `A'` and bodies from `B'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContextClass {
    pub heads: AlphabetSpec,
    pub bodies: AlphabetSpec,
}

impl ContextClass {
    pub fn new(heads: AlphabetSpec, bodies: AlphabetSpec) -> Self {
        ContextClass { heads, bodies }
    }

    pub fn contains(&self, r: &Program) -> bool {
        r.head_atoms().iter().all(|a| self.heads.contains(a))
            && r.body_atoms().iter().all(|a| self.bodies.contains(a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Supp,
    Suppmin,
    Stable,
    /// Stable semantics restricted to normal programs.
    StableNormal,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Supp => "supp",
            Semantics::Suppmin => "suppmin",
            Semantics::Stable => "stable",
            Semantics::StableNormal => "stable_normal",
        }
    }

    pub fn is_stable(self) -> bool {
        matches!(self, Semantics::Stable | Semantics::StableNormal)
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "supp" => Ok(Semantics::Supp),
            "suppmin" => Ok(Semantics::Suppmin),
            "stable" => Ok(Semantics::Stable),
            "stable_normal" | "stable-normal" => Ok(Semantics::StableNormal),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// `sem_{δ,ε}(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub semantics: Semantics,
    #[serde(flatten)]
    pub context: ContextClass,
}

impl ProblemSpec {
    pub fn new(semantics: Semantics, heads: AlphabetSpec, bodies: AlphabetSpec) -> Self {
        ProblemSpec {
            semantics,
            context: ContextClass::new(heads, bodies),
        }
    }

    pub fn heads(&self) -> &AlphabetSpec {
        &self.context.heads
    }

    pub fn bodies(&self) -> &AlphabetSpec {
        &self.context.bodies
    }
}

/// Finite candidate universe for witness interpretations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchUniverse {
    /// All candidate atoms, padding included.
    pub atoms: BTreeSet<Atom>,
    /// Atoms of `A' ∖ At(P∪Q)` standing in for the infinitely many such
    /// atoms of a complement head alphabet.
    pub padding: BTreeSet<Atom>,
}

/// Finite universe of candidate atoms for witnesses of `spec` on `P`, `Q`.
///
/// For supported and supported-minimal semantics, and for stable semantics
/// with direct heads, this is `At(P∪Q) ∪ base(A)`. For stable semantics with
/// complement heads it is `At(P∪Q)` plus two reserved padding atoms; when
/// `base(B)` holds atoms of `A'` outside `At(P∪Q)`, up to two of those are
/// added as well, because such atoms differ from the reserved ones in body
/// membership.
pub fn search_universe(p: &Program, q: &Program, spec: &ProblemSpec) -> SearchUniverse {
    let at: BTreeSet<Atom> = p.atoms().union(&q.atoms()).cloned().collect();
    let heads = spec.heads();
    if !(spec.semantics.is_stable() && heads.is_complement()) {
        let atoms = at.union(&heads.base).cloned().collect();
        return SearchUniverse {
            atoms,
            padding: BTreeSet::new(),
        };
    }
    let mut padding: BTreeSet<Atom> = PADDING_ATOMS.iter().map(|n| Atom::reserved(n)).collect();
    let bodies = spec.bodies();
    debug_assert!(padding
        .iter()
        .all(|a| !at.contains(a) && !heads.base.contains(a) && !bodies.base.contains(a)));
    padding.extend(
        bodies
            .base
            .iter()
            .filter(|a| !at.contains(a) && heads.contains(a))
            .take(2)
            .cloned(),
    );
    let atoms = at.union(&padding).cloned().collect();
    SearchUniverse { atoms, padding }
}

/// The atom set of [`search_universe`].
pub fn bounding_universe(p: &Program, q: &Program, spec: &ProblemSpec) -> BTreeSet<Atom> {
    search_universe(p, q, spec).atoms
}
