//! Command-line front end. Every subcommand is a thin adapter over the
//! library; [`run`] is what the binary calls.
//!
//! Exit codes: 0 success, 1 domain error (parse, type, cap, rejected proof,
//! failed report), 2 usage error.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagonal::{proposition_report, ReportOptions};
use crate::numbering::{decode, encode, encode_symbols, Decoded, GodelCode};
use crate::proofsys::{check_proof, Proof, Theory, Verdict};
use crate::semantics::{
    find_models, Bounds, Environment, Evaluator, Interpretation, Mode, SearchOptions, SigmaHierarchy,
    ValueRepr, MAX_SEARCH_DOMAIN,
};
use crate::syntax::{parse, parse_symbols, parse_term, print, subst, Formula, Replacement, Variable};

/// Highest type the evaluator accepts from the command line.
pub const MAX_TYPE: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "pzero", version, about = "Finite-model workbench for the higher-order system P and its variant P0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormulaInput {
    /// Formula in canonical notation.
    formula: Option<String>,
    /// Read the formula from a UTF-8 file instead.
    #[arg(long, conflicts_with = "formula")]
    file: Option<String>,
}

#[derive(Debug, Args)]
struct BoundFlags {
    /// Highest variable type that may be evaluated (1..=4).
    #[arg(long, default_value_t = Bounds::default().max_type)]
    max_type: u8,
    /// Largest admissible sigma-level cardinality.
    #[arg(long, default_value_t = Bounds::default().sigma_cap)]
    sigma_cap: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form or JSON syntax tree.
    Parse {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a formula given as a JSON syntax tree.
    Print {
        /// JSON syntax tree, or @file.
        ast: String,
    },
    /// Goedel code of a formula, or of a raw symbol sequence such as "f0".
    Encode {
        text: String,
    },
    /// Symbols (and formula, when well-formed) of a Goedel code.
    Decode {
        code: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Capture-avoiding substitution for the free occurrences of a variable.
    Subst {
        #[command(flatten)]
        input: FormulaInput,
        /// Variable to replace.
        #[arg(long)]
        var: String,
        /// Replacement: a type-1 term (e.g. ff0, fx1) or a variable.
        #[arg(long = "with")]
        with: String,
    },
    /// Check a proof file against a theory.
    CheckProof {
        /// Builtin theory (p, p0, p'_toy) or @file with a theory JSON.
        #[arg(long, default_value = "p0")]
        theory: String,
        /// Proof JSON file.
        #[arg(long)]
        proof: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether an environment satisfies a formula in an interpretation.
    Eval {
        #[command(flatten)]
        input: FormulaInput,
        /// Interpretation JSON, or @file.
        #[arg(long)]
        interp: String,
        /// Environment JSON mapping variables to values, e.g. {"y2":[0],"x1":1}.
        #[arg(long, default_value = "{}")]
        env: String,
        /// Override the interpretation's mode.
        #[arg(long)]
        mode: Option<Mode>,
        #[command(flatten)]
        bounds: BoundFlags,
    },
    /// Truth value (True, False or Neither) of a formula in an interpretation.
    Truth {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        interp: String,
        #[arg(long)]
        mode: Option<Mode>,
        #[command(flatten)]
        bounds: BoundFlags,
    },
    /// All interpretations within bounds that make every sentence true.
    FindModels {
        /// Sentences in canonical notation.
        sentences: Vec<String>,
        /// Add the proper axioms of a builtin theory or @file.
        #[arg(long)]
        theory: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
        #[arg(long, default_value = "p0")]
        mode: Mode,
        #[command(flatten)]
        bounds: BoundFlags,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bounded report on the toy Goedel-style sentence.
    Demo {
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        #[command(flatten)]
        bounds: BoundFlags,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Failure of a subcommand, carrying its exit code.
enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<i32, Failure>;

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_arg(value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn formula_text(input: &FormulaInput) -> Result<String, Failure> {
    match (&input.formula, &input.file) {
        (Some(f), None) => Ok(f.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        _ => Err(Failure::Usage("give a formula or --file".into())),
    }
}

fn read_formula(input: &FormulaInput) -> Result<Formula, Failure> {
    parse(&formula_text(input)?).map_err(domain)
}

fn bounds(flags: &BoundFlags) -> Result<Bounds, Failure> {
    if flags.max_type == 0 || flags.max_type > MAX_TYPE {
        return Err(Failure::Usage(format!("--max-type must be between 1 and {MAX_TYPE}")));
    }
    if flags.sigma_cap == 0 {
        return Err(Failure::Usage("--sigma-cap must be positive".into()));
    }
    Ok(Bounds::new(flags.max_type, flags.sigma_cap))
}

fn max_domain(n: usize) -> Result<usize, Failure> {
    if n == 0 || n > MAX_SEARCH_DOMAIN {
        Err(Failure::Usage(format!(
            "--max-domain must be between 1 and {MAX_SEARCH_DOMAIN} (got {n})"
        )))
    } else {
        Ok(n)
    }
}

fn read_interp(value: &str, mode: Option<Mode>) -> Result<Interpretation, Failure> {
    let m = Interpretation::from_json(&read_arg(value)?).map_err(|e| Failure::Usage(format!("--interp: {e}")))?;
    Ok(match mode {
        Some(mode) => m.with_mode(mode),
        None => m,
    })
}

fn read_theory(value: &str) -> Result<Theory, Failure> {
    if value.starts_with('@') {
        Theory::from_json(&read_arg(value)?).map_err(|e| Failure::Usage(format!("--theory: {e}")))
    } else {
        Theory::builtin(value).map_err(|e| Failure::Usage(e.to_string()))
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(domain)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Parse { input, format } => {
            let phi = read_formula(&input)?;
            match format {
                Format::Text => emit(out, &print(&phi))?,
                Format::Json => emit(out, &serde_json::to_string(&phi).expect("plain data"))?,
            }
            Ok(0)
        }
        Command::Print { ast } => {
            let phi: Formula = serde_json::from_str(&read_arg(&ast)?).map_err(domain)?;
            emit(out, &print(&phi))?;
            Ok(0)
        }
        Command::Encode { text } => {
            let code = match parse(&text) {
                Ok(phi) => encode(&phi).map_err(domain)?,
                Err(parse_error) => {
                    let symbols = parse_symbols(&text).map_err(|_| domain(parse_error))?;
                    encode_symbols(&symbols).map_err(domain)?
                }
            };
            emit(out, &code.to_string())?;
            Ok(0)
        }
        Command::Decode { code, format } => {
            let code: GodelCode = code.trim().parse().map_err(domain)?;
            let decoded = decode(&code).map_err(domain)?;
            let symbols: Vec<String> = decoded.symbols().iter().map(|s| s.to_string()).collect();
            match (&decoded, format) {
                (Decoded::Formula { formula, .. }, Format::Text) => emit(out, &print(formula))?,
                (Decoded::IllFormed { error, .. }, Format::Text) => {
                    emit(out, &format!("symbols: {}", symbols.join(" ")))?;
                    emit(out, &format!("ill-formed: {error}"))?;
                }
                (Decoded::Formula { formula, .. }, Format::Json) => emit(
                    out,
                    &json!({"symbols": symbols, "formula": print(formula)}).to_string(),
                )?,
                (Decoded::IllFormed { error, .. }, Format::Json) => emit(
                    out,
                    &json!({"symbols": symbols, "error": error.to_string()}).to_string(),
                )?,
            }
            Ok(if decoded.formula().is_some() { 0 } else { 1 })
        }
        Command::Subst { input, var, with } => {
            let phi = read_formula(&input)?;
            let v: Variable = var.parse().map_err(|e| Failure::Usage(format!("--var: {e}")))?;
            let repl = match with.parse::<Variable>() {
                Ok(w) => Replacement::Var(w),
                Err(_) => Replacement::Term(parse_term(&with).map_err(domain)?),
            };
            let result = subst(&phi, v, repl).map_err(domain)?;
            emit(out, &print(&result))?;
            Ok(0)
        }
        Command::CheckProof { theory, proof, format } => {
            let t = read_theory(&theory)?;
            let p = Proof::from_json(&read_arg(&format!("@{proof}"))?).map_err(domain)?;
            let verdict = check_proof(&p, &t).map_err(domain)?;
            match format {
                Format::Text => emit(out, &verdict.to_string())?,
                Format::Json => emit(out, &serde_json::to_string(&verdict).expect("plain data"))?,
            }
            Ok(if verdict == Verdict::Accept { 0 } else { 1 })
        }
        Command::Eval {
            input,
            interp,
            env,
            mode,
            bounds: flags,
        } => {
            let phi = read_formula(&input)?;
            let m = read_interp(&interp, mode)?;
            let b = bounds(&flags)?;
            let reprs: BTreeMap<Variable, ValueRepr> =
                serde_json::from_str(&read_arg(&env)?).map_err(|e| Failure::Usage(format!("--env: {e}")))?;
            let h = SigmaHierarchy::new(&m, b);
            let env = Environment::from_reprs(&h, &reprs).map_err(domain)?;
            let sat = Evaluator::new(&m, b).satisfies(&env, &phi).map_err(domain)?;
            emit(out, if sat { "true" } else { "false" })?;
            Ok(0)
        }
        Command::Truth {
            input,
            interp,
            mode,
            bounds: flags,
        } => {
            let phi = read_formula(&input)?;
            let m = read_interp(&interp, mode)?;
            let t = Evaluator::new(&m, bounds(&flags)?).truth_value(&phi).map_err(domain)?;
            emit(out, &t.to_string())?;
            Ok(0)
        }
        Command::FindModels {
            sentences,
            theory,
            max_domain: n,
            mode,
            bounds: flags,
            workers,
            canonical,
            format,
        } => {
            let n = max_domain(n)?;
            let b = bounds(&flags)?;
            let mut list: Vec<Formula> = Vec::new();
            if let Some(t) = theory {
                list.extend(read_theory(&t)?.proper_axioms().iter().cloned());
            }
            for s in &sentences {
                list.push(parse(s).map_err(domain)?);
            }
            let opts = SearchOptions {
                bounds: b,
                workers,
                canonical,
                ..SearchOptions::new(n, mode)
            };
            let r = find_models(&list, &opts).map_err(domain)?;
            match format {
                Format::Text => {
                    for m in &r.models {
                        emit(out, &m.to_string())?;
                    }
                    emit(
                        out,
                        &format!("{} models out of {} candidates", r.models.len(), r.examined),
                    )?;
                }
                Format::Json => emit(
                    out,
                    &serde_json::to_string_pretty(&json!({
                        "mode": mode,
                        "max_domain": n,
                        "candidates": r.examined,
                        "skipped": r.skipped,
                        "models": r.models,
                    }))
                    .expect("plain data"),
                )?,
            }
            Ok(0)
        }
        Command::Demo {
            max_domain: n,
            bounds: flags,
            workers,
            format,
        } => {
            let n = max_domain(n)?;
            let b = bounds(&flags)?;
            let opts = ReportOptions {
                max_domain: n,
                max_type: b.max_type,
                sigma_cap: b.sigma_cap,
                workers,
            };
            let report = proposition_report(&opts).map_err(domain)?;
            match format {
                Format::Text => write!(out, "{}", report.to_text()).map_err(domain)?,
                Format::Json => emit(out, &report.to_json())?,
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pzero").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn encode_and_decode() {
        assert_eq!(call(&["encode", "f0"]), (0, "24\n".into(), String::new()));
        let (code, out, _) = call(&["decode", "24"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("symbols: f 0\nill-formed: "), "{out}");
        let (code, out, _) = call(&["decode", "486"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("symbols: 0 ~\n"), "{out}");
        let (code, out, _) = call(&["encode", "x2(0)"]);
        assert_eq!(code, 0);
        assert_eq!(call(&["decode", out.trim()]), (0, "x2(0)\n".into(), String::new()));
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = call(&["find-models", "--max-domain", "9999"]);
        assert_eq!(code, 2);
        assert!(err.contains("--max-domain"), "{err}");
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["truth", "--interp", "{}", "x2(0)"]).0, 2);
        assert_eq!(call(&["demo", "--max-type", "5"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(call(&["parse", "x2(y2)"]).0, 1);
        let interp = r#"{"domain":3,"zero":0,"succ":[1,2,0],"mode":"p"}"#;
        let (code, _, err) = call(&["truth", "--interp", interp, "x4 P (x4(y3))"]);
        assert_eq!(code, 1, "{err}");
    }
}
