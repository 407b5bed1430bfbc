//! The `fo3pdl` command line. [`run`] does all the work and returns the exit
//! code, so the binary is a one-liner and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 internal error or failed check, 2 parse error,
//! 3 usage or arity error, 4 invalid model.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::harness::{
    exhaustive_check, exhaustive_equiv, fuzz_case, fuzz_equiv, Claim, FoWeights, FuzzConfig,
    HarnessError, Report,
};
use crate::parser::{parse_any, parse_fo, Formula, ParseError};
use crate::semantics::{eval_fo, EvalError, Evaluator};
use crate::structures::{
    gen_succ, gen_until, is_interval_preserving, monotone_with, random_points, random_structure,
    rng_from_seed, Assignment, IpVerdict, Monotonicity, Structure, StructureError,
};
use crate::syntax::{Fo, Signature, Var};
use crate::transpiler::{fo_to_fo3, fo_to_path, fo_to_pbc, fo_to_state, Options, TranslateError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_MODEL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "fo3pdl",
    version,
    about = "Translate first-order formulas over interval-preserving structures into PDL and three-variable FO"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translate a first-order formula.
    Translate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Target::Pdl)]
        to: Target,
        /// Print the literal construction without local rewrites.
        #[arg(long)]
        no_simplify: bool,
    },
    /// Evaluate a formula of any sort on a model file.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        model: PathBuf,
        /// Values of free variables, as `x=0,y=2`.
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long)]
        allow_non_ip: bool,
    },
    /// Check that the relations of a model are interval-preserving.
    CheckIp {
        #[arg(long)]
        model: PathBuf,
        /// Check only this relation.
        #[arg(long)]
        relation: Option<String>,
    },
    /// Decide equivalence of two formulas on all small structures.
    Equiv {
        left: String,
        right: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Compare random formulas with their translations on random structures.
    Fuzz(FuzzArgs),
    /// Compare a formula with its translations on every structure up to a size.
    Exhaustive {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        no_simplify: bool,
    },
    /// Write a generated model file.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Offset of the successor relation.
        #[arg(long, default_value_t = 1)]
        offset: usize,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// The formula text.
    formula_text: Option<String>,
    /// Read the formula from a file.
    #[arg(long, conflicts_with = "formula_text")]
    file: Option<PathBuf>,
    /// Alias for the positional formula.
    #[arg(long = "formula", conflicts_with_all = ["formula_text", "file"])]
    formula_flag: Option<String>,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Worker threads; all cores by default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write a JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rerun a single case and print it.
    #[arg(long)]
    replay: Option<usize>,
    /// Interpret relations by relations that are not interval-preserving.
    #[arg(long)]
    allow_non_ip: bool,
    #[arg(long, value_enum, default_value_t = Weights::Default)]
    weights: Weights,
    #[arg(long, value_delimiter = ',', default_value = "P,Q")]
    predicates: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "a")]
    relations: Vec<String>,
    /// Report the witness as found instead of minimizing it.
    #[arg(long)]
    no_shrink: bool,
    #[arg(long)]
    no_simplify: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Pdl,
    Fo3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Until,
    Monotone,
    Succ,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weights {
    Default,
    NegationHeavy,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, e)
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        let code = match e {
            TranslateError::TooLarge(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e)
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::new(EXIT_USAGE, e)
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::new(EXIT_MODEL, e)
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match e {
            HarnessError::Config(_) | HarnessError::Syntax(_) | HarnessError::Eval(_) => EXIT_USAGE,
            HarnessError::Structure(_) => EXIT_MODEL,
        };
        Failure::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILED, e)
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Translate {
            input,
            to,
            no_simplify,
        } => translate(&input.text()?, to, options(no_simplify), out),
        Command::Eval {
            input,
            model,
            assign,
            allow_non_ip,
        } => eval(
            &input.text()?,
            &load_model(&model, allow_non_ip)?,
            &assign,
            out,
        ),
        Command::CheckIp { model, relation } => {
            check_ip(&load_model(&model, true)?, relation.as_deref(), out)
        }
        Command::Equiv {
            left,
            right,
            max_size,
        } => {
            let (f, g) = (parse_fo(&left)?, parse_fo(&right)?);
            let v = exhaustive_equiv(&f, &g, max_size)?;
            let report = Report::from_verdict("equiv", None, &v, |i| format!("case {i}"));
            write_lines(out, &report.lines())?;
            Ok(if v.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Fuzz(args) => fuzz(&args, out),
        Command::Exhaustive {
            input,
            max_size,
            no_simplify,
        } => {
            let f = parse_fo(&input.text()?)?;
            let v = exhaustive_check(
                &Claim::Translation(f, options(no_simplify)),
                max_size,
                &Signature::default(),
            )?;
            let report = Report::from_verdict("exhaustive", None, &v, |i| format!("case {i}"));
            write_lines(out, &report.lines())?;
            Ok(if v.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Gen {
            kind,
            size,
            seed,
            offset,
            out: path,
        } => {
            let text = generate(kind, size, seed, offset)?.to_json();
            match path {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
    }
}

impl Input {
    fn text(&self) -> Result<String, Failure> {
        if let Some(t) = self.formula_text.as_ref().or(self.formula_flag.as_ref()) {
            return Ok(t.clone());
        }
        match &self.file {
            Some(p) => std::fs::read_to_string(p)
                .map(|t| t.trim().to_string())
                .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", p.display()))),
            None => Err(Failure::new(EXIT_USAGE, "no formula given")),
        }
    }
}

fn options(no_simplify: bool) -> Options {
    if no_simplify {
        Options::verbatim()
    } else {
        Options::default()
    }
}

fn write_lines(out: &mut dyn Write, lines: &[String]) -> std::io::Result<()> {
    lines.iter().try_for_each(|l| writeln!(out, "{l}"))
}

fn load_model(path: &PathBuf, allow_non_ip: bool) -> Result<Structure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    Ok(Structure::from_json(&text, allow_non_ip)?)
}

fn translate(text: &str, to: Target, opts: Options, out: &mut dyn Write) -> Outcome {
    let f = parse_fo(text)?;
    let printed = match to {
        Target::Fo3 => fo_to_fo3(&f, &opts)?.to_string(),
        Target::Pdl => match f.free_vars().len() {
            1 => fo_to_state(&f, &opts)?.to_string(),
            2 => fo_to_path(&f, &opts)?.to_string(),
            _ => fo_to_pbc(&f, &opts)?.to_string(),
        },
    };
    writeln!(out, "{printed}")?;
    Ok(EXIT_OK)
}

fn parse_assignment(text: &str, n: usize) -> Result<Assignment, Failure> {
    let mut nu = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || {
            Failure::new(
                EXIT_USAGE,
                format!("bad assignment `{item}`, expected name=point"),
            )
        };
        let (name, value) = item.split_once('=').ok_or_else(bad)?;
        let v = Var::new(name.trim()).map_err(|e| Failure::new(EXIT_USAGE, e))?;
        let a: usize = value.trim().parse().map_err(|_| bad())?;
        if a >= n {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("point {a} is outside the domain of size {n}"),
            ));
        }
        nu.insert(v, a);
    }
    Ok(nu)
}

fn eval(text: &str, m: &Structure, assign: &str, out: &mut dyn Write) -> Outcome {
    let sig = m.signature().map_err(|e| Failure::new(EXIT_MODEL, e))?;
    let nu = parse_assignment(assign, m.size())?;
    let mut ev = Evaluator::new(m);
    let printed = match parse_any(text, Some(&sig))? {
        Formula::Fo(f) => {
            check_bound(&f, &nu)?;
            eval_fo(m, &f, &nu)?.to_string()
        }
        Formula::Pbc(p) => ev.pbc(&p, &nu)?.to_string(),
        Formula::State(s) => ev.state(&s)?.to_string(),
        Formula::Path(p) => ev.path(&p)?.to_string(),
    };
    writeln!(out, "{printed}")?;
    Ok(EXIT_OK)
}

fn check_bound(f: &Fo, nu: &Assignment) -> Result<(), Failure> {
    match f.free_vars().into_iter().find(|v| !nu.contains_key(v)) {
        Some(v) => Err(EvalError::Unbound(v).into()),
        None => Ok(()),
    }
}

fn check_ip(m: &Structure, only: Option<&str>, out: &mut dyn Write) -> Outcome {
    if let Some(name) = only {
        if m.relation(name).is_none() {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("the model has no relation `{name}`"),
            ));
        }
    }
    let mut all_ok = true;
    for (name, r) in m
        .relations()
        .filter(|(name, _)| only.is_none_or(|o| o == *name))
    {
        match is_interval_preserving(r) {
            IpVerdict::Ok => writeln!(out, "{name}: ok")?,
            IpVerdict::Counterexample(w) => {
                all_ok = false;
                writeln!(out, "{name}: counterexample ({w})")?;
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_MODEL })
}

fn fuzz(args: &FuzzArgs, out: &mut dyn Write) -> Outcome {
    let signature = Signature::new(args.predicates.iter(), args.relations.iter())
        .map_err(|e| Failure::new(EXIT_USAGE, e))?;
    let cfg = FuzzConfig {
        max_size: args.max_size,
        max_depth: args.depth,
        signature,
        weights: match args.weights {
            Weights::Default => FoWeights::DEFAULT,
            Weights::NegationHeavy => FoWeights::NEGATION_HEAVY,
        },
        allow_non_ip: args.allow_non_ip,
        options: options(args.no_simplify),
        shrink: !args.no_shrink,
        ..FuzzConfig::new(args.seed, args.iters)
    };
    cfg.validate()?;
    if let Some(i) = args.replay {
        return replay(&cfg, i, out);
    }
    let verdict = match args.jobs {
        Some(0) => return Err(Failure::new(EXIT_USAGE, "--jobs must be at least 1")),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Failure::new(EXIT_FAILED, e))?
            .install(|| fuzz_equiv(&cfg))?,
        None => fuzz_equiv(&cfg)?,
    };
    let replay_line = |i: usize| {
        let mut line = format!(
            "fo3pdl fuzz --seed {} --iters {} --max-size {} --depth {} --replay {i}",
            args.seed, args.iters, args.max_size, args.depth
        );
        if args.allow_non_ip {
            line.push_str(" --allow-non-ip");
        }
        if matches!(args.weights, Weights::NegationHeavy) {
            line.push_str(" --weights negation-heavy");
        }
        line
    };
    let report = Report::from_verdict("fuzz", Some(args.seed), &verdict, replay_line);
    write_lines(out, &report.lines())?;
    if let Some(p) = &args.out {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    Ok(if verdict.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn replay(cfg: &FuzzConfig, index: usize, out: &mut dyn Write) -> Outcome {
    let case = fuzz_case(cfg, index);
    writeln!(out, "formula: {}", case.formula)?;
    writeln!(out, "structure: {}", case.structure.to_json())?;
    let prepared = Claim::Translation(case.formula.clone(), cfg.options).prepare()?;
    match prepared.first_disagreement(&case.structure, case.assignments)? {
        None => {
            writeln!(out, "agrees on every sampled assignment")?;
            Ok(EXIT_OK)
        }
        Some((nu, side)) => {
            let nu: Vec<String> = nu.iter().map(|(v, a)| format!("{v}={a}")).collect();
            writeln!(out, "disagreeing side: {side}")?;
            writeln!(out, "assignment: {}", nu.join(","))?;
            Ok(EXIT_FAILED)
        }
    }
}

fn generate(kind: GenKind, n: usize, seed: u64, offset: usize) -> Result<Structure, Failure> {
    let mut rng = rng_from_seed(seed);
    let m = Structure::new(n)?;
    Ok(match kind {
        GenKind::Until => {
            let m = m
                .with_predicate("P", random_points(&mut rng, n, 0.6).iter())?
                .with_predicate("Q", random_points(&mut rng, n, 0.3).iter())?;
            let r = gen_until(&m, "P", "Q")?;
            m.with_relation("a", r.pairs())?
        }
        GenKind::Monotone => {
            let dir = if rng.gen_bool(0.5) {
                Monotonicity::Increasing
            } else {
                Monotonicity::Decreasing
            };
            let r = monotone_with(&mut rng, n, dir, 0.7);
            m.with_relation("a", r.pairs())?
        }
        GenKind::Succ => m.with_relation("a", gen_succ(n, offset).pairs())?,
        GenKind::Random => {
            let sig = Signature::new(["P", "Q"], ["a"]).expect("valid names");
            random_structure(&mut rng, n, &sig)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("fo3pdl").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn translate_examples() {
        let (code, out, _) = call(&["translate", "--to", "pdl", "exists y. (x <= y & P(y))"]);
        assert_eq!(
            (code, out.trim()),
            (0, "loop(le . test(P & <inv(le)>true) . inv(le))")
        );
        let (code, out, _) = call(&["translate", "--to", "fo3", "P(x)"]);
        assert_eq!((code, out.trim()), (0, "P(x)"));
        let (code, _, err) = call(&["translate", "exists ."]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("column"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["translate", "--bogus", "P(x)"]).0, EXIT_USAGE);
        assert_eq!(call(&["gen", "--kind", "until"]).0, EXIT_USAGE);
        assert_eq!(call(&["fuzz", "--iters", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn assignment_parsing() {
        let nu = parse_assignment("x=0, y=2", 3).unwrap();
        assert_eq!(nu.len(), 2);
        assert_eq!(parse_assignment("x=3", 3).unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_assignment("x", 3).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn generated_models_are_valid() {
        for kind in [
            GenKind::Until,
            GenKind::Monotone,
            GenKind::Succ,
            GenKind::Random,
        ] {
            let m = generate(kind, 6, 7, 1).unwrap();
            assert!(m.is_ip());
            assert_eq!(Structure::from_json(&m.to_json(), false).unwrap(), m);
        }
    }
}
