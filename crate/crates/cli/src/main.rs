mod args;
mod json;

use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Mode, Output};
use schur_core::functor::induced_map;
use schur_core::maps::{self, MapError, NamedMap};
use schur_core::verify::{self, DetMode, Status, SymbolicBudget, Verdict};
use schur_core::{enumerate_basis, parse_schur_expr, Ring, SchurExpr};

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DESCENT: u8 = 3;

/// Work limit for the residual descent check in the conjecture table; larger
/// cases fall back to the rank-free check.
const CONJECTURE_WORK_BUDGET: u128 = 50_000_000;

/// Largest rank for which `inspect` enumerates the basis.
const INSPECT_ENUMERATION_LIMIT: u128 = 100_000;

struct Report {
    json: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            match cli.output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
                Output::Text => print!("{}", r.text),
            }
            ExitCode::from(r.code)
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let ring = cli.ring.as_deref().map(Ring::parse_spec).transpose().map_err(|e| e.to_string())?;
    match &cli.command {
        Command::Inspect { expr, n, max_basis } => inspect(expr, *n, *max_basis),
        Command::Induced { expr, matrix, det } => {
            let text = if matrix.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
                s
            } else {
                std::fs::read_to_string(matrix).map_err(|e| format!("{}: {}", matrix.display(), e))?
            };
            induced(expr, &text, ring.as_ref(), *det)
        }
        Command::Map { name, n, k, rank, allow_odd } => {
            map(name, *n, *k, *rank, *allow_odd, &ring.unwrap_or_else(Ring::integers))
        }
        Command::Verify { claim, expr, n, k, m, rank, mode, trials, entry_bound, max_n, max_k } => {
            let ring = ring.unwrap_or_else(Ring::integers);
            let p = VerifyParams {
                expr: expr.as_deref(),
                n: *n,
                k: *k,
                m: *m,
                rank: *rank,
                mode: *mode,
                trials: *trials,
                entry_bound: *entry_bound,
                max_n: *max_n,
                max_k: *max_k,
            };
            verify_claim(claim, &p, &ring, cli.seed, cli.budget)
        }
    }
}

fn parse_expr(text: &str) -> Result<SchurExpr, String> {
    parse_schur_expr(text).map_err(|e| format!("{}: {}", text, e))
}

fn inspect(text: &str, n: u32, max_basis: usize) -> Result<Report, String> {
    let e = parse_expr(text)?;
    let summands: Vec<Value> = e
        .summands()
        .iter()
        .map(|s| json!({ "expr": s.to_string(), "degree": s.degree(), "rank": s.rank(n as u64).to_string() }))
        .collect();
    let rank = e.rank(n as u64);
    let basis: Vec<String> = if rank <= INSPECT_ENUMERATION_LIMIT {
        enumerate_basis(&e, n).iter().take(max_basis).map(|l| l.to_string()).collect()
    } else {
        Vec::new()
    };
    let truncated = (basis.len() as u128) < rank;
    let out = json!({
        "expr": e.to_string(),
        "n": n,
        "ast": json::ast(&e),
        "degree": e.degree(),
        "rank": rank.to_string(),
        "summands": summands,
        "basis": basis,
        "basis_truncated": truncated,
    });
    let mut text = format!("expr: {}\nn: {}\n", e, n);
    match e.degree() {
        Some(d) => text.push_str(&format!("degree: {}\n", d)),
        None => text.push_str(&format!("degrees: {:?}\n", e.degrees())),
    }
    text.push_str(&format!("rank: {}\n", rank));
    if e.is_direct_sum() {
        text.push_str(&format!("ranks: {:?}\n", e.ranks(n as u64)));
    }
    text.push_str("ast:\n");
    ast_text(&e, 1, &mut text);
    text.push_str(&format!("basis ({} of {}):\n", basis.len(), rank));
    for l in &basis {
        text.push_str(&format!("  {}\n", l));
    }
    Ok(Report::ok(out, text))
}

fn ast_text(e: &SchurExpr, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match e {
        SchurExpr::Base => out.push_str(&format!("{}M\n", pad)),
        SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
            let op = if matches!(e, SchurExpr::Sym(..)) { "S" } else { "W" };
            out.push_str(&format!("{}{}^{}\n", pad, op, r));
            ast_text(c, depth + 1, out);
        }
        SchurExpr::Tensor(xs) | SchurExpr::DirectSum(xs) => {
            out.push_str(&format!("{}{}\n", pad, if matches!(e, SchurExpr::Tensor(_)) { "(x)" } else { "(+)" }));
            for x in xs {
                ast_text(x, depth + 1, out);
            }
        }
    }
}

fn induced(text: &str, matrix: &str, ring: Option<&Ring>, det: bool) -> Result<Report, String> {
    let e = parse_expr(text)?;
    let f = json::read_matrix(matrix, ring)?;
    let m = induced_map(&e, &f).map_err(|e| e.to_string())?;
    let mut out = json::matrix(&m);
    let mut text = format!("{}: {} x {} over {}\n{}", e, m.rows(), m.cols(), m.ring(), json::render_matrix(&m));
    if det {
        let d = m.determinant().map_err(|e| e.to_string())?;
        out["det"] = Value::String(d.to_string());
        text.push_str(&format!("det: {}\n", d));
    }
    Ok(Report::ok(out, text))
}

fn build_map(name: &str, n: u32, k: u32, rank: usize, allow_odd: bool, ring: &Ring) -> Result<NamedMap, MapError> {
    match name {
        "phi_nk" if allow_odd => maps::phi_sym_to_wedge_any_parity(n, k, rank, ring),
        "phi_nk" => maps::phi_sym_to_wedge(n, k, rank, ring),
        "phi_kn" => maps::phi_wedge_to_sym(k, n, rank, ring),
        "q" => maps::q_projection(n, rank, ring),
        "varphi" => maps::varphi_section(n, rank, ring),
        "i" => maps::include_i(n, rank, ring),
        "j" => maps::retract_j(n, rank, ring),
        "tau" => maps::tau_retraction(rank, ring),
        "incl" => maps::inclusion(rank, ring),
        "alpha1" | "alpha2" | "alpha3" | "beta1" | "beta2" | "beta3" => maps::chain_map(name, rank, ring),
        other => Err(MapError::InvalidParameter(format!("unknown map '{}'", other))),
    }
}

fn map_parameters(name: &str, n: u32, k: u32, rank: usize) -> Value {
    match name {
        "phi_nk" | "phi_kn" => json!({ "n": n, "k": k, "rank": rank }),
        "q" | "varphi" | "i" | "j" => json!({ "n": n, "rank": rank }),
        _ => json!({ "rank": rank }),
    }
}

fn map(name: &str, n: u32, k: u32, rank: usize, allow_odd: bool, ring: &Ring) -> Result<Report, String> {
    let params = map_parameters(name, n, k, rank);
    match build_map(name, n, k, rank, allow_odd, ring) {
        Ok(m) => {
            let (rr, rc) = m.descent.residual_shape;
            let out = json!({
                "name": m.name,
                "source": m.source.to_string(),
                "target": m.target.to_string(),
                "parameters": params,
                "matrix": json::matrix(&m.matrix),
                "descent": { "status": "descends", "residual_rows": rr, "residual_cols": rc },
            });
            let text = format!(
                "{}: {} -> {} (rank {})\ndescent: residual {} x {} is zero\n{}",
                m.name,
                m.source,
                m.target,
                rank,
                rr,
                rc,
                json::render_matrix(&m.matrix)
            );
            Ok(Report::ok(out, text))
        }
        Err(MapError::DescentFailed { name: failed, witness }) => {
            let w = json::witness(&witness);
            let out = json!({
                "name": failed,
                "parameters": params,
                "descent": { "status": "fails", "witness": w },
            });
            let mut text = format!("{}: the lift does not descend\nwitness:\n", failed);
            json::render_text(&w, 1, &mut text);
            Ok(Report { json: out, text, code: EXIT_DESCENT })
        }
        Err(e) => Err(e.to_string()),
    }
}

struct VerifyParams<'a> {
    expr: Option<&'a str>,
    n: Option<u32>,
    k: Option<u32>,
    m: Option<u32>,
    rank: Option<usize>,
    mode: Mode,
    trials: Option<usize>,
    entry_bound: i64,
    max_n: Option<u32>,
    max_k: Option<u32>,
}

fn verify_claim(claim: &str, p: &VerifyParams, ring: &Ring, seed: u64, budget: usize) -> Result<Report, String> {
    let err = |e: verify::VerifyError| e.to_string();
    let verdict = match claim {
        "det" => {
            let expr = parse_expr(p.expr.ok_or("det needs --expr")?)?;
            let n = p.n.ok_or("det needs --n")? as usize;
            let mode = match p.mode {
                Mode::Symbolic => DetMode::Symbolic,
                Mode::Random => DetMode::Random { trials: p.trials.unwrap_or(100), entry_bound: p.entry_bound, seed },
            };
            let budget = SymbolicBudget { max_dimension: budget, ..SymbolicBudget::default() };
            verify::check_det_identity(&expr, n, mode, budget).map_err(err)?
        }
        "t42_scalars" => {
            let cases = if p.n.is_none() && p.k.is_none() && p.rank.is_none() {
                vec![(2, 2, 2), (2, 4, 2), (3, 2, 3)]
            } else {
                let n = p.n.unwrap_or(2);
                vec![(n, p.k.unwrap_or(2), p.rank.unwrap_or(n as usize))]
            };
            verify::verify_phi_scalars(&cases, ring).map_err(err)?
        }
        "t43" => {
            let cases = match (p.n, p.rank) {
                (None, None) => vec![(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)],
                (n, rank) => vec![(n.unwrap_or(2), rank.unwrap_or(2))],
            };
            verify::verify_theorem_4_3(&cases, ring).map_err(err)?
        }
        "t52" => verify::verify_theorem_5_2(p.rank.unwrap_or(2), ring).map_err(err)?,
        "t54" => verify::verify_theorem_5_4(p.rank.unwrap_or(3), ring).map_err(err)?,
        "lemma51" => {
            let trials = p.trials.unwrap_or(20);
            match (p.m, p.n) {
                (None, None) => {
                    let mut v = Verdict::new("lemma51").param("trials", trials).param("seed", seed);
                    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
                        let sub = verify::check_wedge_factorization(m, n, trials, seed).map_err(err)?;
                        v.absorb(&format!("m={},n={}", m, n), sub, true);
                    }
                    v
                }
                (m, n) => {
                    verify::check_wedge_factorization(m.unwrap_or(2) as usize, n.unwrap_or(2) as usize, trials, seed)
                        .map_err(err)?
                }
            }
        }
        "conjecture" => {
            let (max_n, max_k) = (p.max_n.unwrap_or(3), p.max_k.unwrap_or(4));
            let v = verify::explore_phi_conjecture(max_n, max_k, CONJECTURE_WORK_BUDGET).map_err(err)?;
            let mut r = verdict_report(&v);
            r.code = 0;
            return Ok(r);
        }
        "rank_identity" => verify::check_rank_identity(p.max_n.unwrap_or(12) as u64),
        other => return Err(format!("unknown claim '{}'", other)),
    };
    Ok(verdict_report(&verdict))
}

fn verdict_report(v: &Verdict) -> Report {
    let out = json::verdict(v);
    let mut text = String::new();
    json::render_text(&out, 0, &mut text);
    let code = match v.status {
        Status::Verified => 0,
        Status::NotScalar | Status::Refuted => EXIT_REFUTED,
        Status::DescentFailed => EXIT_DESCENT,
    };
    Report { json: out, text, code }
}
