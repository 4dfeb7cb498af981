use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use superstar::algebra::{Signature, SuperPolynomial, Variable};
use superstar::check::{run_checks, CheckConfig};
use superstar::error::Error;
use superstar::expr::{format_expression, parse_expression};
use superstar::geometry::{jet_flatness_defect, taylor_jet};
use superstar::poisson::PoissonContext;
use superstar::star::StarContext;
use superstar::symplectic::{from_blocks, SuperMatrix};
use superstar::weyl::{normal_order, GeneratorWord};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "superstar",
    about = "Exact star products, superbrackets and symplectic supergroups on the formal super-disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SigArgs {
    /// Signature as n,a,b (type (2n|a,b))
    #[arg(long, default_value = "1,1,1")]
    sig: String,
    /// Epsilon layout override, e.g. +,-,+ (default: pluses first)
    #[arg(long)]
    eps: Option<String>,
    /// Emit a JSON result object instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Star product of two expressions
    Star {
        #[command(flatten)]
        sig: SigArgs,
        f: String,
        g: String,
    },
    /// Poisson superbracket of two expressions
    Bracket {
        #[command(flatten)]
        sig: SigArgs,
        f: String,
        g: String,
    },
    /// Graded star commutator of two expressions
    Commutator {
        #[command(flatten)]
        sig: SigArgs,
        f: String,
        g: String,
    },
    /// Normal order a word in the generators, e.g. "q1 p1 t1"
    NormalOrder {
        #[command(flatten)]
        sig: SigArgs,
        word: String,
    },
    /// Test a block matrix (JSON file) for Sp(2n|a,b) membership
    Member {
        #[command(flatten)]
        sig: SigArgs,
        matrix: PathBuf,
        /// Check the Lie-algebra condition X^sT H + H X = 0 instead
        #[arg(long)]
        lie: bool,
    },
    /// Taylor prolongation of an expression into the jet algebra
    Jet {
        #[command(flatten)]
        sig: SigArgs,
        expr: String,
        /// Fiber-degree truncation order (default: the degree of the input)
        #[arg(long)]
        order: Option<u32>,
        /// Also report the flatness defect of the prolongation
        #[arg(long)]
        flatness: bool,
    },
    /// Run the full invariant suite
    Check {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Deliberately corrupt one invariant (test shim)
        #[arg(long, hide = true)]
        sabotage: bool,
    },
}

#[derive(Serialize)]
struct JsonSignature {
    n: usize,
    a: usize,
    b: usize,
    eps: Vec<i8>,
}

#[derive(Serialize)]
struct JsonResult {
    ok: bool,
    result: String,
    signature: JsonSignature,
    hbar_order: u32,
}

fn parse_signature(args: &SigArgs) -> Result<Signature, String> {
    let parts: Vec<&str> = args.sig.split(',').collect();
    if parts.len() != 3 {
        return Err("--sig expects n,a,b".into());
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| "--sig expects three nonnegative integers".to_string())?;
    let (n, a, b) = (nums[0], nums[1], nums[2]);
    match &args.eps {
        None => Ok(Signature::standard(n, a, b)),
        Some(spec) => {
            let eps: Vec<i8> = spec
                .split(',')
                .map(|s| match s.trim() {
                    "+" | "+1" | "1" => Ok(1i8),
                    "-" | "-1" => Ok(-1i8),
                    other => Err(format!("bad epsilon entry `{other}`")),
                })
                .collect::<Result<_, _>>()?;
            if eps.iter().filter(|&&e| e == 1).count() != a || eps.len() != a + b {
                return Err("--eps must list exactly a pluses and b minuses".into());
            }
            Signature::new(n, eps).map_err(|e| e.to_string())
        }
    }
}

fn emit(sig: &Signature, json: bool, result: &SuperPolynomial) {
    let text = format_expression(result);
    if json {
        let obj = JsonResult {
            ok: true,
            result: text,
            signature: JsonSignature {
                n: sig.n(),
                a: sig.a(),
                b: sig.b(),
                eps: sig.epsilons().to_vec(),
            },
            hbar_order: result.max_hbar(),
        };
        println!("{}", serde_json::to_string(&obj).unwrap());
    } else {
        println!("{text}");
    }
}

fn emit_text(sig: &Signature, json: bool, text: &str) {
    if json {
        let obj = JsonResult {
            ok: true,
            result: text.to_string(),
            signature: JsonSignature {
                n: sig.n(),
                a: sig.a(),
                b: sig.b(),
                eps: sig.epsilons().to_vec(),
            },
            hbar_order: 0,
        };
        println!("{}", serde_json::to_string(&obj).unwrap());
    } else {
        println!("{text}");
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::UnknownVariable(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

fn parse_input(text: &str, sig: &Signature) -> Result<SuperPolynomial, (u8, String)> {
    let parsed = parse_expression(text, sig).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.poly)
}

fn parse_word(text: &str, sig: &Signature) -> Result<GeneratorWord, (u8, String)> {
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == '*') {
        if token.is_empty() {
            continue;
        }
        let (kind, index) = token.split_at(1);
        let index: usize = index
            .parse()
            .map_err(|_| (EXIT_USAGE, format!("bad generator `{token}`")))?;
        let v = match kind {
            "p" => Variable::p(index),
            "q" => Variable::q(index),
            "t" => Variable::theta(index),
            _ => return Err((EXIT_USAGE, format!("bad generator `{token}`"))),
        };
        letters.push(v);
    }
    GeneratorWord::new(sig, letters).map_err(|e| (exit_code_for(&e), e.to_string()))
}

fn parse_matrix_file(path: &PathBuf, sig: &Signature) -> Result<SuperMatrix, (u8, String)> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&data)
        .map_err(|e| (EXIT_USAGE, format!("bad matrix JSON: {e}")))?;
    let block = |name: &str, rows: usize, cols: usize| -> Result<Vec<Vec<SuperPolynomial>>, (u8, String)> {
        let raw = value
            .get(name)
            .ok_or((EXIT_USAGE, format!("matrix JSON is missing block {name}")))?;
        let raw = raw
            .as_array()
            .ok_or((EXIT_USAGE, format!("block {name} must be an array of rows")))?;
        if raw.len() != rows {
            return Err((EXIT_USAGE, format!("block {name} must have {rows} rows")));
        }
        raw.iter()
            .map(|row| {
                let row = row
                    .as_array()
                    .ok_or((EXIT_USAGE, format!("rows of {name} must be arrays")))?;
                if row.len() != cols {
                    return Err((EXIT_USAGE, format!("rows of {name} must have {cols} entries")));
                }
                row.iter()
                    .map(|cell| match cell {
                        serde_json::Value::Number(num) => {
                            let text = num.to_string();
                            parse_input(&text, sig)
                        }
                        serde_json::Value::String(text) => parse_input(text, sig),
                        _ => Err((EXIT_USAGE, format!("entries of {name} must be numbers or expressions"))),
                    })
                    .collect()
            })
            .collect()
    };
    let (even, odd) = (2 * sig.n(), sig.r());
    let a = block("A", even, even)?;
    let b = block("B", even, odd)?;
    let c = block("C", odd, even)?;
    let d = block("D", odd, odd)?;
    from_blocks(sig, a, b, c, d).map_err(|e| (exit_code_for(&e), e.to_string()))
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.command {
        Command::Star { sig, f, g } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let ctx = StarContext::new(PoissonContext::new(s.clone()));
            let f = parse_input(&f, &s)?;
            let g = parse_input(&g, &s)?;
            let result = ctx
                .star(&f, &g)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            emit(&s, sig.json, &result);
        }
        Command::Bracket { sig, f, g } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let ctx = PoissonContext::new(s.clone());
            let f = parse_input(&f, &s)?;
            let g = parse_input(&g, &s)?;
            let result = ctx
                .bracket(&f, &g)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            emit(&s, sig.json, &result);
        }
        Command::Commutator { sig, f, g } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let ctx = StarContext::new(PoissonContext::new(s.clone()));
            let f = parse_input(&f, &s)?;
            let g = parse_input(&g, &s)?;
            let result = ctx
                .star_commutator(&f, &g)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            emit(&s, sig.json, &result);
        }
        Command::NormalOrder { sig, word } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let w = parse_word(&word, &s)?;
            let normal = normal_order(&s, &w);
            emit(&s, sig.json, &normal.poly);
        }
        Command::Member { sig, matrix, lie } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let m = parse_matrix_file(&matrix, &s)?;
            let verdict = if lie { m.is_sp_lie_member() } else { m.is_sp_member() };
            emit_text(&s, sig.json, if verdict { "true" } else { "false" });
        }
        Command::Jet { sig, expr, order, flatness } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let f = parse_input(&expr, &s)?;
            let order = order.unwrap_or_else(|| f.total_degree());
            let jet = taylor_jet(&f, order).map_err(|e| (exit_code_for(&e), e.to_string()))?;
            if flatness {
                let defects = jet_flatness_defect(&jet);
                let flat = defects.iter().all(|(_, d)| d.is_zero());
                emit_text(&s, sig.json, if flat { "flat" } else { "not flat" });
            } else {
                emit(&s, sig.json, &jet.poly);
            }
        }
        Command::Check { sig, degree, cases, seed, sabotage } => {
            let s = parse_signature(&sig).map_err(|m| (EXIT_USAGE, m))?;
            let cfg = CheckConfig {
                sig: s,
                degree,
                cases,
                seed,
                sabotage,
            };
            let results = run_checks(&cfg).map_err(|e| (exit_code_for(&e), e.to_string()))?;
            let mut failed = 0usize;
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("{tag} {} ({})", r.name, r.detail);
                if !r.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err((
                    EXIT_CHECK_FAILED,
                    format!("{failed} invariant check(s) failed"),
                ));
            }
            println!("all {} checks passed", results.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // keep clap's rendered help/version on stdout paths, but always
            // exit 1 for usage errors per the documented contract
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
