pub mod alphabets;
mod bits;
pub mod decide;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod parse;
pub mod program;
pub mod reductions;
pub mod semantics;
pub mod semchar;

pub use alphabets::{
    bounding_universe, restrict, search_universe, AlphabetKind, AlphabetSpec, ContextClass, ProblemSpec,
    SearchUniverse, Semantics,
};
pub use error::{Error, Result};
pub use parse::parse_program;
pub use program::{atoms, Atom, Interpretation, Program, Rule};
pub use semantics::{
    horn_least_model, is_minimal_model, minimal_models, models, reduct, satisfies, shift, stable_models,
    supported_models, suppmin_models, tp,
};
pub use semchar::{
    in_mod_a, in_mod_ab, in_se_ab, in_se_ab_normal, mod_a_members, mod_ab_pairs, se_ab_pairs, CharPair,
};
pub use decide::{
    decide, decide_stable, decide_supp, decide_suppmin, verify_witness, DecideOptions, Side, Verdict, Witness,
    WitnessKind,
};
pub use oracle::{
    distinguishes, oracle_equiv, oracle_equiv_jobs, semantic_models, witness_to_context, ContextBounds, OracleReport,
};
pub use reductions::{
    eval_cnf_satisfiable, eval_qbf, gen_stable_cd, gen_stable_dc, gen_supp_cnf, gen_suppmin_cd, gen_suppmin_dc,
    hat_clause, parse_dimacs, parse_qdimacs, rename_apart, CnfFormula, LabeledInstance, Literal, Qbf2,
};
