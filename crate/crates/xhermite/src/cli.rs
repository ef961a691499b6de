//! The `xop` command line: argument parsing, dispatch and JSON output.
//!
//! Exit codes: 0 success, 1 failed verification or non-critical degree,
//! 2 malformed input.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinatorics::{self as comb, Partition};
use crate::error::Error;
use crate::exactpoly::{parse_rat, rat_to_f64};
use crate::hermite_core::{tau, xhermite_insertion, xhermite_wronskian};
use crate::intertwiners::{lincomb_with, upsilon};
use crate::operators::{self, check_intertwine, check_lowering, lowering_op};
use crate::recurrence::{build_system, critical_degrees_dual, recurrence_relation};
use crate::verify::{check_annihilation, check_generating, orthogonality_quad, wave_series};

pub const TRUNCATION_ENV: &str = "XOP_TRUNCATION_ORDER";
pub const DEFAULT_TRUNCATION: i32 = 12;

const GOLDEN: &str = include_str!("../fixtures/golden.json");

#[derive(Parser, Debug)]
#[command(name = "xop", version, about = "Exact computations with exceptional Hermite polynomials")]
struct Cli {
    /// Compare the output with the checked-in fixture for this invocation.
    #[arg(long, global = true)]
    golden: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// τ-function of a partition.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Exceptional Hermite polynomial of degree n.
    XopPoly {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::Wronskian)]
        method: Method,
    },
    /// Expansion in classical Hermite polynomials, checked against the Wronskian.
    Lincomb {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: i64,
    },
    /// Lowering operator L_q and its eigenvalue polynomial.
    Lower {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        q: i64,
    },
    /// Recurrence relation of order 2q.
    Recur {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        q: i64,
    },
    /// Critical degrees up to qmax (default |λ|+2).
    Critdeg {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        qmax: Option<i64>,
    },
    /// Operator relations.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum)]
        relation: Relation,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Series and quadrature checks.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        order: Option<i32>,
        #[arg(long, allow_hyphen_values = true, default_value = "-1/4")]
        y: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        n1: Option<i64>,
        #[arg(long)]
        n2: Option<i64>,
    },
    /// Coefficients of the τ-cleared wave series.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        order: Option<i32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Wronskian,
    Insertion,
    Lincomb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Generating,
    Annihilation,
    Ortho,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Relation {
    Eigen,
    Lowering,
    Intertwine,
    Commutator,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: i32, v: Value) -> Self {
        Outcome { code, stdout: format!("{v}\n"), stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Outcome { code: 2, stdout: String::new(), stderr: format!("{}\n", msg.trim_end()) }
    }
}

struct Fail(Outcome);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InMaya { .. }
            | Error::ExceptionalDegree { .. }
            | Error::NotEven
            | Error::LengthTooSmall { .. } => 2,
            _ => 1,
        };
        Fail(Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") })
    }
}

type Res = std::result::Result<(i32, Value), Fail>;

fn partition(s: &str) -> std::result::Result<Partition, Fail> {
    Partition::parse(s).map_err(Fail::from)
}

/// Truncation order from the flag, else the environment, else 12.
fn truncation(flag: Option<i32>) -> std::result::Result<i32, Fail> {
    if let Some(o) = flag {
        return Ok(o);
    }
    match std::env::var(TRUNCATION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Fail(Outcome::usage(format!("error: {TRUNCATION_ENV}={v} is not an integer")))),
        Err(_) => Ok(DEFAULT_TRUNCATION),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome::usage(e.to_string()),
            };
        }
    };
    let (code, value) = match dispatch(&cli.cmd) {
        Ok(r) => r,
        Err(Fail(o)) => return o,
    };
    if !cli.golden {
        return Outcome::json(code, value);
    }
    let key: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .filter(|a| a != "--golden")
        .collect();
    golden_compare(&key.join(" "), code, value)
}

fn golden_compare(key: &str, code: i32, value: Value) -> Outcome {
    let fixtures: Value = serde_json::from_str(GOLDEN).expect("fixture file is valid JSON");
    let Some(fx) = fixtures.get(key) else {
        let mut o = Outcome::json(1, value);
        o.stderr = format!("golden: no fixture for `{key}`\n");
        return o;
    };
    let want_code = fx.get("exit").and_then(Value::as_i64).unwrap_or(0) as i32;
    let ok = fx.get("output") == Some(&value) && want_code == code;
    let mut o = Outcome::json(if ok { code } else { 1 }, value);
    o.stderr = if ok { "golden: match\n".into() } else { format!("golden: MISMATCH for `{key}`\n") };
    o
}

fn dispatch(cmd: &Cmd) -> Res {
    match cmd {
        Cmd::Tau { lambda } => {
            let lam = partition(lambda)?;
            Ok((0, json!({"tau": tau(&lam).to_string()})))
        }
        Cmd::XopPoly { lambda, n, method } => {
            let lam = partition(lambda)?;
            let (name, p) = match method {
                Method::Wronskian => ("wronskian", xhermite_wronskian(&lam, *n)?),
                Method::Insertion => ("insertion", xhermite_insertion(&lam, *n)?),
                Method::Lincomb => ("lincomb", lincomb_with(&upsilon(&lam)?, &lam, *n)?),
            };
            Ok((0, json!({"lambda": lam.to_json(), "n": n, "method": name, "poly": p.to_string()})))
        }
        Cmd::Lincomb { lambda, n } => {
            let lam = partition(lambda)?;
            let ups = upsilon(&lam)?;
            let p = lincomb_with(&ups, &lam, *n)?;
            let w = xhermite_wronskian(&lam, *n)?;
            let verified = p == w;
            let out = json!({
                "lambda": lam.to_json(),
                "n": n,
                "upsilon": ups.iter().map(|u| u.fmt_var("n")).collect::<Vec<_>>(),
                "poly": p.to_string(),
                "verified": verified,
            });
            Ok((if verified { 0 } else { 1 }, out))
        }
        Cmd::Lower { lambda, q } => {
            let lam = partition(lambda)?;
            match lowering_op(&lam, *q) {
                Ok(low) => Ok((
                    0,
                    json!({
                        "lambda": lam.to_json(),
                        "q": q,
                        "operator": low.op.to_string(),
                        "coeffs": low.op.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "gamma": low.gamma.to_string(),
                        "kernel": low.kernel,
                    }),
                )),
                Err(Error::NotCore { .. }) => Ok((1, json!({"lambda": lam.to_json(), "q": q, "core": false}))),
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Recur { lambda, q } => {
            let lam = partition(lambda)?;
            if *q < 1 || !comb::is_q_core(&lam, *q) {
                return Ok((1, json!({"critical": false, "core": false, "lambda": lam.to_json(), "q": q})));
            }
            let sys = build_system(&lam, *q)?;
            if !sys.is_critical() {
                let d = sys.diagnose();
                return Ok((
                    1,
                    json!({
                        "critical": false,
                        "core": true,
                        "lambda": lam.to_json(),
                        "q": q,
                        "rank": d.rank,
                        "table_rank": d.table_rank,
                        "active_unknowns": d.active_unknowns.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                        "maximal_rank": d.maximal_rank,
                    }),
                ));
            }
            let rec = recurrence_relation(&lam, *q)?;
            Ok((if rec.verified { 0 } else { 1 }, rec.to_json()))
        }
        Cmd::Critdeg { lambda, qmax } => {
            let lam = partition(lambda)?;
            let qmax = qmax.unwrap_or(lam.weight() as i64 + 2);
            let c = critical_degrees_dual(&lam, qmax)?;
            let code = if c.consistent() == Some(false) { 1 } else { 0 };
            let mut v = c.to_json();
            v["lambda"] = lam.to_json();
            Ok((code, v))
        }
        Cmd::Check { lambda, relation, q, m } => check(&partition(lambda)?, *relation, *q, *m),
        Cmd::Verify { lambda, suite, order, y, tol, n1, n2 } => {
            let lam = partition(lambda)?;
            verify(&lam, *suite, *order, y, *tol, *n1, *n2)
        }
        Cmd::Series { lambda, order } => {
            let lam = partition(lambda)?;
            let order = truncation(*order)?;
            Ok((0, wave_series(&lam, order).to_json()))
        }
    }
}

fn need(v: Option<i64>, flag: &str) -> std::result::Result<i64, Fail> {
    v.ok_or_else(|| Fail(Outcome::usage(format!("error: --{flag} is required for this relation"))))
}

fn check(lam: &Partition, relation: Relation, q: Option<i64>, m: Option<i64>) -> Res {
    let (name, holds) = match relation {
        Relation::Eigen => ("eigen", operators::check_eigen(lam, need(m, "m")?)?),
        Relation::Lowering => {
            let low = lowering_op(lam, need(q, "q")?)?;
            ("lowering", check_lowering(&low, need(m, "m")?)?.holds)
        }
        Relation::Intertwine => ("intertwine", check_intertwine(&lowering_op(lam, need(q, "q")?)?)?),
        Relation::Commutator => ("commutator", operators::check_T_commutator(lam)?),
    };
    Ok((if holds { 0 } else { 1 }, json!({"lambda": lam.to_json(), "relation": name, "q": q, "m": m, "holds": holds})))
}

fn verify(lam: &Partition, suite: Suite, order: Option<i32>, y: &str, tol: f64, n1: Option<i64>, n2: Option<i64>) -> Res {
    match suite {
        Suite::Generating => {
            let order = truncation(order)?;
            let r = check_generating(lam, order)?;
            let v = json!({
                "suite": "generating",
                "lambda": lam.to_json(),
                "order": order,
                "pass": r.pass,
                "maya_zero": r.maya_zero,
                "factorized": r.factorized,
                "miwa": r.miwa,
            });
            Ok((if r.pass { 0 } else { 1 }, v))
        }
        Suite::Annihilation => {
            let order = truncation(order)?;
            let r = check_annihilation(lam, order)?;
            let v = json!({
                "suite": "annihilation",
                "lambda": lam.to_json(),
                "order": order,
                "pass": r.pass,
                "indices": r.indices,
            });
            Ok((if r.pass { 0 } else { 1 }, v))
        }
        Suite::Ortho => {
            let yv = parse_rat(y).ok_or_else(|| Fail(Outcome::usage(format!("error: cannot parse y = {y}"))))?;
            let yf = rat_to_f64(&yv);
            let pairs: Vec<(i64, i64)> = match (n1, n2) {
                (Some(a), Some(b)) => vec![(a, b)],
                (None, None) => {
                    let ns = comb::i_smallest(lam, 3);
                    let mut v = Vec::new();
                    for (i, &a) in ns.iter().enumerate() {
                        for &b in &ns[i..] {
                            v.push((a, b));
                        }
                    }
                    v
                }
                _ => return Err(Fail(Outcome::usage("error: give both --n1 and --n2 or neither"))),
            };
            let mut all = true;
            let mut results = Vec::new();
            for (a, b) in pairs {
                let r = orthogonality_quad(lam, a, b, yf, tol)?;
                all &= r.pass;
                let mut j = r.to_json();
                j["n1"] = json!(a);
                j["n2"] = json!(b);
                results.push(j);
            }
            let v = json!({"suite": "ortho", "lambda": lam.to_json(), "y": y, "tol": tol, "pass": all, "results": results});
            Ok((if all { 0 } else { 1 }, v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xop(args: &[&str]) -> Outcome {
        run(std::iter::once("xop").chain(args.iter().copied()))
    }

    #[test]
    fn tau_output() {
        let o = xop(&["tau", "--lambda", "2,2"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "{\"tau\":\"x^4+12*y^2\"}\n"));
        let o = xop(&["tau", "--lambda", ""]);
        assert_eq!(o.stdout, "{\"tau\":\"1\"}\n");
    }

    #[test]
    fn parse_errors_exit_2() {
        assert_eq!(xop(&["tau"]).code, 2);
        assert_eq!(xop(&["tau", "--lambda", "1,2"]).code, 2);
        assert_eq!(xop(&["tau", "--lambda", "a"]).code, 2);
        assert_eq!(xop(&["frobnicate"]).code, 2);
        assert_eq!(xop(&["xop-poly", "--lambda", "2,2", "--n", "4"]).code, 2);
    }

    #[test]
    fn non_critical_exit_1() {
        let o = xop(&["recur", "--lambda", "2,2", "--q", "4"]);
        assert_eq!(o.code, 1);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["critical"], json!(false));
        assert_eq!(v["maximal_rank"], json!(true));
    }

    #[test]
    fn golden_fixtures_match() {
        let fixtures: Value = serde_json::from_str(GOLDEN).unwrap();
        for key in fixtures.as_object().unwrap().keys() {
            let mut args: Vec<&str> = key.split(' ').collect();
            args.push("--golden");
            let o = xop(&args);
            assert_eq!(o.stderr, "golden: match\n", "{key}: {}", o.stdout);
        }
    }
}
