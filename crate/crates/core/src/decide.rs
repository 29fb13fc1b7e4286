//! Deciders for supported, supported-minimal and stable hyperequivalence
//! relative to a context class `HB(A', B')`.
//!
//! Each decider enumerates candidate interpretations over a finite
//! universe in `(|Y|, Y, |X|, X)` order and reports the least witness.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;

use crate::alphabets::{search_universe, AlphabetSpec, ProblemSpec, Semantics};
use crate::bits::{subset, BProgram, Mask, Universe};
use crate::error::{Error, Result};
use crate::exec;
use crate::program::{Atom, Interpretation, Program};
use crate::semantics::{shift, tp};
use crate::semchar::{
    in_mod_a, in_mod_ab, in_se_ab, mod_a_mask, submasks_ordered, Alphabets, ModY, SeHornY, SeY,
};

pub const DEFAULT_MAX_UNIVERSE: usize = 24;

/// Padding atoms a stable-semantics witness needs at most.
const MAX_PADDING: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Refuse universes with more atoms than this.
    pub max_universe: usize,
    /// Worker threads: 0 for all cores, 1 for sequential search.
    pub jobs: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_universe: DEFAULT_MAX_UNIVERSE,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// An interpretation `Y` (supported semantics).
    YWitness,
    /// A pair `(X, Y)`.
    PairWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Member for `P` only.
    POnly,
    /// Member for `Q` only.
    QOnly,
    /// Member for both, with different one-step consequences.
    TMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub x: Option<Interpretation>,
    pub y: Interpretation,
    pub side: Side,
    /// Condition failed by the program lacking the witness.
    pub failed_condition: Option<u8>,
    /// `T_P(Y)` (restricted to `B'` for supported-minimal semantics), when
    /// defined and relevant.
    pub tp: Option<Interpretation>,
    pub tq: Option<Interpretation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub semantics: Semantics,
    pub heads: AlphabetSpec,
    pub bodies: AlphabetSpec,
    pub equivalent: bool,
    pub witness: Option<Witness>,
    /// Disjunctive input was replaced by its shift.
    pub shifted: bool,
    /// Stable membership was decided with least models of Horn programs.
    pub fast_path: bool,
    pub universe: Vec<Atom>,
    /// Candidate sets `Y` examined.
    pub candidates: u64,
    pub elapsed_ms: f64,
}

/// Decides `P ≡ Q` for `spec`.
pub fn decide(p: &Program, q: &Program, spec: &ProblemSpec, opts: &DecideOptions) -> Result<Verdict> {
    let start = Instant::now();
    let su = search_universe(p, q, spec);
    if su.atoms.len() > opts.max_universe.min(crate::bits::MAX_BITS) {
        return Err(Error::UniverseTooLarge {
            size: su.atoms.len(),
            limit: opts.max_universe.min(crate::bits::MAX_BITS),
        });
    }
    let heads = spec.heads();
    let bodies = spec.bodies();
    let shifted = !spec.semantics.is_stable() && !(p.is_normal() && q.is_normal());
    let (pp, qq) = if spec.semantics.is_stable() {
        (p.clone(), q.clone())
    } else {
        (shift(p), shift(q))
    };
    if spec.semantics == Semantics::StableNormal {
        pp.require_normal()?;
        qq.require_normal()?;
    }
    let fast_path = spec.semantics.is_stable() && pp.is_normal() && qq.is_normal();

    let u = Universe::new(su.atoms.iter().cloned().chain(pp.atoms()).chain(qq.atoms()));
    let search = Search {
        u: &u,
        bp: u.compile(&pp),
        bq: u.compile(&qq),
        al: Alphabets::new(&u, heads, bodies),
        pad: u.mask(su.padding.iter()),
        candidates: AtomicU64::new(0),
    };
    let n = u.len();
    let found = exec::run(opts.jobs, |par| {
        (0..=n).find_map(|k| {
            let level: Vec<Mask> = (0..n)
                .combinations(k)
                .map(|c| c.into_iter().fold(0, |m, i| m | 1 << i))
                .collect();
            exec::find_first(par, &level, |&y| match spec.semantics {
                Semantics::Supp => search.supp(y),
                Semantics::Suppmin => search.suppmin(y),
                Semantics::Stable | Semantics::StableNormal => search.stable(y, fast_path),
            })
        })
    });
    Ok(Verdict {
        semantics: spec.semantics,
        heads: heads.clone(),
        bodies: bodies.clone(),
        equivalent: found.is_none(),
        witness: found,
        shifted,
        fast_path,
        universe: su.atoms.into_iter().collect(),
        candidates: search.candidates.into_inner(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

/// Supported hyperequivalence; the body alphabet plays no role.
pub fn decide_supp(p: &Program, q: &Program, heads: &AlphabetSpec) -> Result<Verdict> {
    let spec = ProblemSpec::new(Semantics::Supp, heads.clone(), AlphabetSpec::all());
    decide(p, q, &spec, &DecideOptions::default())
}

pub fn decide_suppmin(p: &Program, q: &Program, heads: &AlphabetSpec, bodies: &AlphabetSpec) -> Result<Verdict> {
    let spec = ProblemSpec::new(Semantics::Suppmin, heads.clone(), bodies.clone());
    decide(p, q, &spec, &DecideOptions::default())
}

pub fn decide_stable(p: &Program, q: &Program, heads: &AlphabetSpec, bodies: &AlphabetSpec) -> Result<Verdict> {
    let spec = ProblemSpec::new(Semantics::Stable, heads.clone(), bodies.clone());
    decide(p, q, &spec, &DecideOptions::default())
}

struct Search<'a> {
    u: &'a Universe,
    bp: BProgram,
    bq: BProgram,
    al: Alphabets,
    pad: Mask,
    candidates: AtomicU64,
}

fn side(p_member: bool, q_member: bool) -> Option<Side> {
    match (p_member, q_member) {
        (true, false) => Some(Side::POnly),
        (false, true) => Some(Side::QOnly),
        _ => None,
    }
}

impl Search<'_> {
    fn tick(&self) {
        self.candidates.fetch_add(1, Ordering::Relaxed);
    }

    fn witness(&self, kind: WitnessKind, x: Option<Mask>, y: Mask, side: Side) -> Witness {
        Witness {
            kind,
            x: x.map(|x| self.u.interp(x)),
            y: self.u.interp(y),
            side,
            failed_condition: None,
            tp: None,
            tq: None,
        }
    }

    fn supp(&self, y: Mask) -> Option<Witness> {
        self.tick();
        let tp = mod_a_mask(&self.bp, self.al.a, y);
        let tq = mod_a_mask(&self.bq, self.al.a, y);
        let s = side(tp.is_some(), tq.is_some()).or(match (tp, tq) {
            (Some(a), Some(b)) if a != b => Some(Side::TMismatch),
            _ => None,
        })?;
        let mut w = self.witness(WitnessKind::YWitness, None, y, s);
        w.tp = tp.map(|t| self.u.interp(t));
        w.tq = tq.map(|t| self.u.interp(t));
        Some(w)
    }

    fn suppmin(&self, y: Mask) -> Option<Witness> {
        self.tick();
        let al = &self.al;
        let ip = ModY::new(&self.bp, al, y);
        let iq = ModY::new(&self.bq, al, y);
        if ip.is_none() && iq.is_none() {
            return None;
        }
        let tb = |i: &Option<ModY>| i.as_ref().map(|i| i.t & al.b);
        let (tp, tq) = (tb(&ip), tb(&iq));
        for x in submasks_ordered(y & al.ab) {
            let fp = ip.as_ref().map_or(Some(1), |i| i.failed(al, x));
            let fq = iq.as_ref().map_or(Some(1), |i| i.failed(al, x));
            let s = match side(fp.is_none(), fq.is_none()) {
                Some(s) => s,
                None if fp.is_none() && tp != tq => Side::TMismatch,
                None => continue,
            };
            let mut w = self.witness(WitnessKind::PairWitness, Some(x), y, s);
            w.failed_condition = fp.or(fq);
            w.tp = tp.map(|t| self.u.interp(t));
            w.tq = tq.map(|t| self.u.interp(t));
            return Some(w);
        }
        None
    }

    fn stable(&self, y: Mask, horn: bool) -> Option<Witness> {
        if (y & self.pad).count_ones() > MAX_PADDING {
            return None;
        }
        self.tick();
        if horn {
            let ip = SeHornY::new(&self.bp, &self.al, y);
            let iq = SeHornY::new(&self.bq, &self.al, y);
            self.se_pairs(y, ip, iq, |i, x| i.failed(&self.al, x))
        } else {
            let ip = SeY::new(&self.bp, &self.al, y);
            let iq = SeY::new(&self.bq, &self.al, y);
            self.se_pairs(y, ip, iq, |i, x| i.failed(&self.al, x))
        }
    }

    fn se_pairs<T>(
        &self,
        y: Mask,
        ip: Option<T>,
        iq: Option<T>,
        failed: impl Fn(&T, Mask) -> Option<u8>,
    ) -> Option<Witness> {
        if ip.is_none() && iq.is_none() {
            return None;
        }
        let al = &self.al;
        let mut xs = submasks_ordered(y & al.ab);
        if !subset(y, al.ab) {
            xs.push(y);
        }
        for x in xs {
            let fp = ip.as_ref().map_or(Some(1), |i| failed(i, x));
            let fq = iq.as_ref().map_or(Some(1), |i| failed(i, x));
            if let Some(s) = side(fp.is_none(), fq.is_none()) {
                let mut w = self.witness(WitnessKind::PairWitness, Some(x), y, s);
                w.failed_condition = fp.or(fq);
                return Some(w);
            }
        }
        None
    }
}

/// Recomputes a witness with the public membership tests and reports
/// whether it really separates `P` and `Q`.
pub fn verify_witness(p: &Program, q: &Program, spec: &ProblemSpec, w: &Witness) -> Result<bool> {
    let heads = spec.heads();
    let bodies = spec.bodies();
    let sides = |mp: bool, mq: bool, t_differs: bool| match w.side {
        Side::POnly => mp && !mq,
        Side::QOnly => !mp && mq,
        Side::TMismatch => mp && mq && t_differs,
    };
    match spec.semantics {
        Semantics::Supp => {
            let (sp, sq) = (shift(p), shift(q));
            let mp = in_mod_a(&sp, &w.y, heads)?;
            let mq = in_mod_a(&sq, &w.y, heads)?;
            let differs = mp && mq && tp(&sp, &w.y)? != tp(&sq, &w.y)?;
            Ok(sides(mp, mq, differs))
        }
        Semantics::Suppmin => {
            let (sp, sq) = (shift(p), shift(q));
            let x = w.x.clone().ok_or(Error::NoWitness)?;
            let mp = in_mod_ab(&sp, &x, &w.y, heads, bodies)?.is_member();
            let mq = in_mod_ab(&sq, &x, &w.y, heads, bodies)?.is_member();
            let restrict_b = |t: Option<Interpretation>| t.map(|t| bodies.restrict(&t));
            let differs = mp && mq && restrict_b(tp(&sp, &w.y)?) != restrict_b(tp(&sq, &w.y)?);
            Ok(sides(mp, mq, differs))
        }
        Semantics::Stable | Semantics::StableNormal => {
            let x = w.x.clone().ok_or(Error::NoWitness)?;
            let mp = in_se_ab(p, &x, &w.y, heads, bodies).is_member();
            let mq = in_se_ab(q, &x, &w.y, heads, bodies).is_member();
            Ok(sides(mp, mq, false))
        }
    }
}

/// Atoms of a set of interpretations, for reporting.
pub fn witness_atoms(w: &Witness) -> BTreeSet<Atom> {
    let mut out: BTreeSet<Atom> = w.y.atoms().clone();
    if let Some(x) = &w.x {
        out.extend(x.iter().cloned());
    }
    out
}
