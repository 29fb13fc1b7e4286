//! Command-line front end.
//!
//! Exit codes: 0 equivalent (or success), 1 not equivalent / a
//! distinguishing context was found, 2 error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperequiv::{
    bounding_universe, decide, gen_stable_cd, gen_stable_dc, gen_supp_cnf, gen_suppmin_cd, gen_suppmin_dc,
    oracle_equiv_jobs, parse_dimacs, parse_program, parse_qdimacs, semantic_models, shift, AlphabetKind,
    AlphabetSpec, Atom, ContextBounds, DecideOptions, Program, ProblemSpec, Semantics, Side, Verdict,
};

#[derive(Parser)]
#[command(name = "hyperequiv", version, about = "Relativized hyperequivalence of logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two programs are equivalent relative to HB(A', B')
    Check(CheckArgs),
    /// List the models of a program under a semantics
    Models {
        file: PathBuf,
        #[arg(long, default_value = "stable")]
        sem: Semantics,
        #[arg(long)]
        json: bool,
    },
    /// Search for a distinguishing context within size bounds
    Oracle {
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, default_value_t = 2)]
        max_rules: usize,
        #[arg(long, default_value_t = 2)]
        max_head: usize,
        #[arg(long, default_value_t = 2)]
        max_body: usize,
        /// Only atomic facts
        #[arg(long)]
        facts_only: bool,
        /// Atoms added to the bounding universe, comma separated
        #[arg(long, default_value = "")]
        extra_atoms: String,
    },
    /// Generate a labeled instance directory from a formula or program
    Gen(GenArgs),
    /// Print the shift of a program
    Shift { file: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    p: PathBuf,
    q: PathBuf,
    #[arg(long, default_value = "stable")]
    sem: Semantics,
    /// Head alphabet, `direct:a,b` or `complement:a,b`
    #[arg(long, default_value = "complement:")]
    heads: AlphabetSpec,
    /// Body alphabet, `direct:a,b` or `complement:a,b`
    #[arg(long, default_value = "complement:")]
    bodies: AlphabetSpec,
    #[arg(long)]
    json: bool,
    /// Largest candidate universe to search
    #[arg(long, default_value_t = hyperequiv::decide::DEFAULT_MAX_UNIVERSE)]
    max_universe: usize,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SuppCnf,
    SuppminDc,
    SuppminCd,
    StableCd,
    StableDc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Direct,
    Complement,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// DIMACS file for supp-cnf, QDIMACS for the QBF families, a program
    /// for stable-dc
    input: PathBuf,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// Base of the head alphabet, comma separated
    #[arg(long, default_value = "")]
    head_base: String,
    /// Base of the body alphabet, comma separated
    #[arg(long, default_value = "")]
    body_base: String,
    /// Body alphabet kind for stable-dc
    #[arg(long, value_enum, default_value = "direct")]
    body_kind: Kind,
}

fn read_program(path: &Path) -> Result<Program> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_program(&text).with_context(|| format!("parsing {}", path.display()))
}

fn atom_list(s: &str) -> Result<BTreeSet<Atom>> {
    s.split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .map(|n| Atom::new(n).map_err(Into::into))
        .collect()
}

fn print_verdict(v: &Verdict) {
    println!(
        "{}: {} (heads {}, bodies {})",
        v.semantics,
        if v.equivalent { "equivalent" } else { "not equivalent" },
        v.heads,
        v.bodies
    );
    if let Some(w) = &v.witness {
        let side = match w.side {
            Side::POnly => "holds for P only",
            Side::QOnly => "holds for Q only",
            Side::TMismatch => "one-step consequences differ",
        };
        match &w.x {
            Some(x) => println!("witness: ({x}, {}), {side}", w.y),
            None => println!("witness: {}, {side}", w.y),
        }
        if let Some(c) = w.failed_condition {
            println!("the other program fails condition ({c})");
        }
        if let (Some(tp), Some(tq)) = (&w.tp, &w.tq) {
            println!("T_P = {tp}, T_Q = {tq}");
        }
    }
    if v.shifted {
        println!("note: disjunctive input was shifted");
    }
}

fn spec_of(c: &CheckArgs) -> ProblemSpec {
    ProblemSpec::new(c.sem, c.heads.clone(), c.bodies.clone())
}

fn cmd_check(c: &CheckArgs) -> Result<u8> {
    let (p, q) = (read_program(&c.p)?, read_program(&c.q)?);
    let opts = DecideOptions {
        max_universe: c.max_universe,
        jobs: c.jobs,
    };
    let v = decide(&p, &q, &spec_of(c), &opts)?;
    if c.json {
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        print_verdict(&v);
    }
    Ok(if v.equivalent { 0 } else { 1 })
}

fn cmd_models(file: &Path, sem: Semantics, json: bool) -> Result<u8> {
    let p = read_program(file)?;
    let models = semantic_models(&p, sem);
    if json {
        println!("{}", serde_json::to_string(&models)?);
    } else {
        for m in &models {
            println!("{m}");
        }
    }
    Ok(0)
}

fn cmd_oracle(c: &CheckArgs, bounds: ContextBounds) -> Result<u8> {
    let (p, q) = (read_program(&c.p)?, read_program(&c.q)?);
    let report = oracle_equiv_jobs(&p, &q, &spec_of(c), &bounds, c.jobs)?;
    if c.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        match &report.context {
            Some(r) => {
                println!("distinguishing context found ({} contexts checked):", report.contexts_checked);
                print!("{r}");
            }
            None => println!(
                "no distinguishing context within the bounds ({} contexts checked); this is not a proof of equivalence",
                report.contexts_checked
            ),
        }
    }
    Ok(if report.bounded_equivalent { 0 } else { 1 })
}

fn cmd_gen(g: &GenArgs) -> Result<u8> {
    let text = fs::read_to_string(&g.input).with_context(|| format!("reading {}", g.input.display()))?;
    let a = atom_list(&g.head_base)?;
    let b = atom_list(&g.body_base)?;
    let inst = match g.family {
        Family::SuppCnf => gen_supp_cnf(&parse_dimacs(&text)?, &a)?,
        Family::SuppminDc => gen_suppmin_dc(&parse_qdimacs(&text)?, &a)?,
        Family::SuppminCd => {
            // the construction needs a nonempty head base
            let a = if a.is_empty() { atom_list("g0")? } else { a };
            gen_suppmin_cd(&parse_qdimacs(&text)?, &a, &b)?
        }
        Family::StableCd => gen_stable_cd(&parse_qdimacs(&text)?, &a, &b)?,
        Family::StableDc => {
            let p = parse_program(&text)?;
            let bodies = match g.body_kind {
                Kind::Direct => AlphabetSpec::direct(b),
                Kind::Complement => AlphabetSpec::complement(b),
            };
            gen_stable_dc(&p, &a, bodies)?
        }
    };
    inst.write_dir(&g.out)
        .with_context(|| format!("writing {}", g.out.display()))?;
    println!(
        "{}: expected {} ({}), written to {}",
        inst.provenance.generator,
        if inst.expected_equivalent { "equivalent" } else { "not equivalent" },
        serde_json::to_string(&inst.spec)?,
        g.out.display()
    );
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(c) => cmd_check(&c),
        Command::Models { file, sem, json } => cmd_models(&file, sem, json),
        Command::Oracle {
            check,
            max_rules,
            max_head,
            max_body,
            facts_only,
            extra_atoms,
        } => {
            let (p, q) = (read_program(&check.p)?, read_program(&check.q)?);
            let mut universe = bounding_universe(&p, &q, &spec_of(&check));
            universe.extend(atom_list(&extra_atoms)?);
            let bounds = if facts_only {
                ContextBounds::facts(universe)
            } else {
                ContextBounds::new(universe, max_rules, max_head, max_body)
            };
            if facts_only && check.heads.kind == AlphabetKind::Direct && check.heads.base.is_empty() {
                eprintln!("note: the head alphabet is empty, so only the empty context is tried");
            }
            cmd_oracle(&check, bounds)
        }
        Command::Gen(g) => cmd_gen(&g),
        Command::Shift { file } => {
            let p = read_program(&file)?;
            print!("{}", shift(&p));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

