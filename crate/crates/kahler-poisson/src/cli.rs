//! Command-line front end: JSON schemas and the `run_command` dispatcher.
//!
//! Subcommands: `check-kp`, `bracket`, `apply`, `compose`, `transform`,
//! `verify`, `decide`. Metrics are passed as `--metric`/`--metric2` JSON
//! (inline or `@file`), automorphisms as `--auto` JSON, expressions as
//! plain text in the grammar of [`crate::expr`].
//!
//! Exit codes: 0 affirmative, 1 negative (fails / not isomorphic),
//! 2 parse or usage error, 3 domain error, 4 undecided. Payloads are
//! minified JSON with a fixed key order, so they are stable golden-file
//! targets.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::expr;
use crate::field::gaussian::GaussianRational;
use crate::field::poly::{Polynomial2, Var};
use crate::field::ratfunc::RationalFunction;
use crate::isomorphism::{
    brute_force_iso, check_diag_y_sufficient, check_xdep_sufficient, decide_constant,
    decide_diag_x, transform_metric, verify_iso, IsoCertificate, SearchBounds, Verdict,
};
use crate::kp::{kp_check, Metric};
use crate::poisson::PoissonStructure;

/// Output rendering selected by `--format`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Result of one command invocation.
///
/// `exit_code` follows the contract above; `payload` is the JSON document
/// the binary prints.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Value,
    pub format: OutputFormat,
}

impl CommandResult {
    /// The payload as the selected output text.
    pub fn rendered(&self) -> String {
        match self.format {
            OutputFormat::Json => self.payload.to_string(),
            OutputFormat::Text => render_text(&self.payload),
        }
    }
}

fn render_text(payload: &Value) -> String {
    match payload.as_object() {
        Some(map) => {
            let mut out = String::new();
            for (key, value) in map {
                let shown = match value {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{key}: {shown}");
            }
            out.trim_end().to_string()
        }
        None => payload.to_string(),
    }
}

/// Run one command. `args` excludes the program name.
pub fn run_command(args: &[String]) -> CommandResult {
    let mut format = OutputFormat::Json;
    let mut rest: Vec<String> = Vec::new();
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if arg == "--format" {
            match iter.next().map(String::as_str) {
                Some("json") => format = OutputFormat::Json,
                Some("text") => format = OutputFormat::Text,
                other => {
                    return CommandResult {
                        exit_code: 2,
                        payload: usage_payload(&format!(
                            "--format expects json or text, got {other:?}"
                        )),
                        format,
                    }
                }
            }
        } else {
            rest.push(arg.clone());
        }
    }
    match dispatch(&rest) {
        Ok((exit_code, payload)) => CommandResult {
            exit_code,
            payload,
            format,
        },
        Err(e) => CommandResult {
            exit_code: error_exit_code(&e),
            payload: error_payload(&e),
            format,
        },
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Usage(_) => 2,
        _ => 3,
    }
}

fn error_payload(e: &Error) -> Value {
    match e {
        Error::Usage(message) => usage_payload(message),
        Error::Parse { offset, message } => json!({
            "error": "parse_error",
            "offset": offset,
            "message": message,
        }),
        other => {
            let code = match other {
                Error::ZeroDenominator => "zero_denominator",
                Error::DivisionByZero => "division_by_zero",
                Error::UndefinedComposition => "undefined_composition",
                Error::BothZero => "both_zero",
                Error::DegenerateMetric => "degenerate_metric",
                Error::NonConstantEntries => "non_constant_entries",
                Error::NonPolynomialEntries => "non_polynomial_entries",
                Error::NotDiagonal => "not_diagonal",
                Error::UnsupportedAutomorphism => "unsupported_automorphism",
                Error::InvalidAutomorphism(_) => "invalid_automorphism",
                Error::ZeroPoissonStructure => "zero_poisson_structure",
                Error::AsymmetricMetric => "asymmetric_metric",
                Error::InvalidBounds(_) => "invalid_bounds",
                Error::Parse { .. } | Error::Usage(_) => unreachable!(),
            };
            json!({ "error": code })
        }
    }
}

fn usage_payload(message: &str) -> Value {
    json!({ "error": "usage", "message": message })
}

fn dispatch(args: &[String]) -> Result<(i32, Value)> {
    let Some((command, rest)) = args.split_first() else {
        return Err(Error::Usage(
            "expected a subcommand: check-kp, bracket, apply, compose, transform, verify, decide"
                .to_string(),
        ));
    };
    let flags = Flags::parse(command, rest)?;
    match command.as_str() {
        "check-kp" => cmd_check_kp(&flags),
        "bracket" => cmd_bracket(&flags),
        "apply" => cmd_apply(&flags),
        "compose" => cmd_compose(&flags),
        "transform" => cmd_transform(&flags),
        "verify" => cmd_verify(&flags),
        "decide" => cmd_decide(&flags),
        other => Err(Error::Usage(format!("unknown subcommand '{other}'"))),
    }
}

/// Accepted flags per subcommand.
fn allowed_flags(command: &str) -> &'static [&'static str] {
    match command {
        "check-kp" => &["--metric"],
        "bracket" => &["--f", "--g", "--lambda", "--mu"],
        "apply" => &["--auto", "--f"],
        "compose" => &["--auto", "--auto2"],
        "transform" => &["--metric", "--auto"],
        "verify" => &["--metric", "--metric2", "--auto"],
        "decide" => &["--class", "--metric", "--metric2", "--alpha"],
        _ => &[],
    }
}

struct Flags {
    values: Vec<(String, String)>,
}

impl Flags {
    fn parse(command: &str, args: &[String]) -> Result<Self> {
        let allowed = allowed_flags(command);
        let mut values = Vec::new();
        let mut iter = args.iter();
        while let Some(flag) = iter.next() {
            if !allowed.contains(&flag.as_str()) {
                return Err(Error::Usage(format!(
                    "unknown flag '{flag}' for '{command}'"
                )));
            }
            let Some(value) = iter.next() else {
                return Err(Error::Usage(format!("flag '{flag}' expects a value")));
            };
            values.push((flag.clone(), resolve_at_file(value)?));
        }
        Ok(Self { values })
    }

    fn get(&self, flag: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(name, _)| name == flag)
            .map(|(_, value)| value.as_str())
    }

    fn require(&self, flag: &str) -> Result<&str> {
        self.get(flag)
            .ok_or_else(|| Error::Usage(format!("missing required flag '{flag}'")))
    }
}

/// `@path` arguments are replaced by the file contents.
fn resolve_at_file(value: &str) -> Result<String> {
    if let Some(path) = value.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim_end().to_string())
            .map_err(|e| Error::Usage(format!("cannot read '{path}': {e}")))
    } else {
        Ok(value.to_string())
    }
}

// ---- JSON schemas ------------------------------------------------------------

/// Parse `{"entries": [[a, b], [b, c]]}` with expression-string entries;
/// the off-diagonal entries must agree.
pub fn metric_from_json(text: &str) -> Result<Metric> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: 0,
        message: format!("invalid metric JSON: {e}"),
    })?;
    let entries = value
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse {
            offset: 0,
            message: "metric JSON must have an \"entries\" array".to_string(),
        })?;
    let cell = |row: usize, col: usize| -> Result<RationalFunction> {
        let text = entries
            .get(row)
            .and_then(Value::as_array)
            .and_then(|r| r.get(col))
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: "metric entries must form a 2x2 array of strings".to_string(),
            })?;
        expr::parse(text)
    };
    let a = cell(0, 0)?;
    let b = cell(0, 1)?;
    let b2 = cell(1, 0)?;
    let c = cell(1, 1)?;
    if b != b2 {
        return Err(Error::AsymmetricMetric);
    }
    Ok(Metric::new(a, b, c))
}

pub fn metric_to_json(g: &Metric) -> Value {
    let b = g.b().to_string();
    json!({
        "entries": [
            [g.a().to_string(), b.clone()],
            [b, g.c().to_string()],
        ]
    })
}

/// Parse automorphism JSON:
/// `{"type": "scale_shear", "alpha": EXPR, "p": EXPR}` or
/// `{"type": "mobius", "alpha": ..., "beta": ..., "gamma": ..., "delta": ..., "r": EXPR}`.
pub fn automorphism_from_json(text: &str) -> Result<Automorphism> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: 0,
        message: format!("invalid automorphism JSON: {e}"),
    })?;
    let field = |name: &str| -> Result<&str> {
        value
            .get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("automorphism JSON must have a string field \"{name}\""),
            })
    };
    match field("type")? {
        "scale_shear" => {
            let alpha = parse_constant(field("alpha")?)?;
            let p = parse_poly_x(field("p")?)?;
            Automorphism::scale_shear(alpha, p)
        }
        "mobius" => {
            let alpha = parse_constant(field("alpha")?)?;
            let beta = parse_constant(field("beta")?)?;
            let gamma = parse_constant(field("gamma")?)?;
            let delta = parse_constant(field("delta")?)?;
            let r = expr::parse(field("r")?)?;
            Automorphism::mobius(alpha, beta, gamma, delta, r)
        }
        other => Err(Error::Parse {
            offset: 0,
            message: format!("unknown automorphism type '{other}'"),
        }),
    }
}

pub fn automorphism_to_json(phi: &Automorphism) -> Value {
    match phi {
        Automorphism::ScaleShear { alpha, p } => json!({
            "type": "scale_shear",
            "alpha": alpha.to_string(),
            "p": p.to_string(),
        }),
        Automorphism::Mobius {
            alpha,
            beta,
            gamma,
            delta,
            r,
        } => json!({
            "type": "mobius",
            "alpha": alpha.to_string(),
            "beta": beta.to_string(),
            "gamma": gamma.to_string(),
            "delta": delta.to_string(),
            "r": r.to_string(),
        }),
    }
}

/// Certificate payload with keys in the order
/// `verdict`, `witness?`, `constraint?`, `reason?`.
pub fn certificate_to_json(cert: &IsoCertificate) -> Value {
    let mut map = Map::new();
    let verdict = match cert.verdict {
        Verdict::Isomorphic => "isomorphic",
        Verdict::NotIsomorphic => "not_isomorphic",
        Verdict::Undecided => "undecided",
    };
    map.insert("verdict".to_string(), json!(verdict));
    if let Some(witness) = &cert.witness {
        map.insert("witness".to_string(), automorphism_to_json(witness));
    }
    if let Some(constraint) = &cert.constraint {
        map.insert("constraint".to_string(), json!(constraint.to_string()));
    }
    if let Some(reason) = &cert.reason {
        map.insert("reason".to_string(), json!(reason.code()));
    }
    Value::Object(map)
}

fn certificate_exit_code(cert: &IsoCertificate) -> i32 {
    match cert.verdict {
        Verdict::Isomorphic => 0,
        Verdict::NotIsomorphic => 1,
        Verdict::Undecided => 4,
    }
}

fn parse_constant(text: &str) -> Result<GaussianRational> {
    expr::parse(text)?.as_constant().ok_or(Error::Parse {
        offset: 0,
        message: format!("expected a constant expression, got '{text}'"),
    })
}

fn parse_poly_x(text: &str) -> Result<Polynomial2> {
    let f = expr::parse(text)?;
    f.as_poly()
        .filter(|p| p.is_univariate(Var::X))
        .cloned()
        .ok_or(Error::Parse {
            offset: 0,
            message: format!("expected a polynomial in x, got '{text}'"),
        })
}

// ---- subcommands ---------------------------------------------------------------

fn cmd_check_kp(flags: &Flags) -> Result<(i32, Value)> {
    let metric = metric_from_json(flags.require("--metric")?)?;
    let algebra = kp_check(&metric)?;
    Ok((
        0,
        json!({ "holds": true, "eta": algebra.eta().to_string() }),
    ))
}

fn cmd_bracket(flags: &Flags) -> Result<(i32, Value)> {
    let f = expr::parse(flags.require("--f")?)?;
    let g = expr::parse(flags.require("--g")?)?;
    let structure = match (flags.get("--lambda"), flags.get("--mu")) {
        (None, None) => PoissonStructure::canonical(),
        (lambda, mu) => {
            let lambda = lambda.map(parse_constant).transpose()?;
            let mu = mu.map(parse_constant).transpose()?;
            PoissonStructure::new(
                lambda.unwrap_or_else(GaussianRational::zero),
                mu.unwrap_or_else(GaussianRational::zero),
            )?
        }
    };
    let result = structure.bracket(&f, &g);
    Ok((0, json!({ "result": result.to_string() })))
}

fn cmd_apply(flags: &Flags) -> Result<(i32, Value)> {
    let phi = automorphism_from_json(flags.require("--auto")?)?;
    let f = expr::parse(flags.require("--f")?)?;
    let result = phi.apply(&f)?;
    Ok((0, json!({ "result": result.to_string() })))
}

fn cmd_compose(flags: &Flags) -> Result<(i32, Value)> {
    let phi1 = automorphism_from_json(flags.require("--auto")?)?;
    let phi2 = automorphism_from_json(flags.require("--auto2")?)?;
    let composed = phi1.compose(&phi2)?;
    Ok((0, json!({ "result": automorphism_to_json(&composed) })))
}

fn cmd_transform(flags: &Flags) -> Result<(i32, Value)> {
    let metric = metric_from_json(flags.require("--metric")?)?;
    let phi = automorphism_from_json(flags.require("--auto")?)?;
    let transformed = transform_metric(&metric, &phi)?;
    Ok((0, json!({ "metric": metric_to_json(&transformed) })))
}

fn cmd_verify(flags: &Flags) -> Result<(i32, Value)> {
    let g = metric_from_json(flags.require("--metric")?)?;
    let g2 = metric_from_json(flags.require("--metric2")?)?;
    let phi = automorphism_from_json(flags.require("--auto")?)?;
    let verified = verify_iso(&g, &g2, &phi)?;
    Ok((
        if verified { 0 } else { 1 },
        json!({ "verified": verified }),
    ))
}

fn cmd_decide(flags: &Flags) -> Result<(i32, Value)> {
    let class = flags.require("--class")?;
    let g = metric_from_json(flags.require("--metric")?)?;
    let g2 = metric_from_json(flags.require("--metric2")?)?;
    let cert = match class {
        "constant" => decide_constant(&g, &g2)?,
        "diag-x" => decide_diag_x(&g, &g2)?,
        "xdep" => {
            let alpha = parse_constant(flags.require("--alpha")?)?;
            check_xdep_sufficient(&g, &g2, &alpha)?
        }
        "diag-y" => check_diag_y_sufficient(&g, &g2)?,
        other => {
            return Err(Error::Usage(format!(
                "--class must be one of constant, diag-x, xdep, diag-y; got '{other}'"
            )))
        }
    };
    Ok((certificate_exit_code(&cert), certificate_to_json(&cert)))
}

/// Library-level hook for the oracle; not a CLI subcommand, but shares the
/// JSON vocabulary so harnesses can compare against the deciders.
pub fn brute_force_to_json(
    g: &Metric,
    g2: &Metric,
    bounds: &SearchBounds,
) -> Result<Value> {
    Ok(match brute_force_iso(g, g2, bounds)? {
        Some(phi) => json!({ "found": true, "witness": automorphism_to_json(&phi) }),
        None => json!({ "found": false }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run_command(&owned)
    }

    #[test]
    fn check_kp_payloads() {
        let result = run(&[
            "check-kp",
            "--metric",
            r#"{"entries":[["1","0"],["0","1"]]}"#,
        ]);
        assert_eq!(result.exit_code, 0);
        assert_eq!(result.rendered(), r#"{"holds":true,"eta":"1/x^2"}"#);

        let degenerate = run(&[
            "check-kp",
            "--metric",
            r#"{"entries":[["1","1"],["1","1"]]}"#,
        ]);
        assert_eq!(degenerate.exit_code, 3);
        assert_eq!(degenerate.rendered(), r#"{"error":"degenerate_metric"}"#);
    }

    #[test]
    fn bracket_command() {
        let result = run(&["bracket", "--f", "x", "--g", "y"]);
        assert_eq!(result.exit_code, 0);
        assert_eq!(result.rendered(), r#"{"result":"x"}"#);

        let shifted = run(&["bracket", "--f", "x", "--g", "y", "--lambda", "2", "--mu", "5"]);
        assert_eq!(shifted.rendered(), r#"{"result":"2*x + 5*y"}"#);
    }

    #[test]
    fn decide_golden_diag_x() {
        let result = run(&[
            "decide",
            "--class",
            "diag-x",
            "--metric",
            r#"{"entries":[["x","0"],["0","1 + x + x^2"]]}"#,
            "--metric2",
            r#"{"entries":[["0 - 8*x","0"],["0","1 - 2*x + 4*x^2"]]}"#,
        ]);
        assert_eq!(result.exit_code, 0);
        assert_eq!(
            result.rendered(),
            r#"{"verdict":"isomorphic","witness":{"type":"scale_shear","alpha":"-2","p":"0"}}"#
        );
    }

    #[test]
    fn decide_undecided_exit_code() {
        let result = run(&[
            "decide",
            "--class",
            "constant",
            "--metric",
            r#"{"entries":[["1","0"],["0","1"]]}"#,
            "--metric2",
            r#"{"entries":[["2","0"],["0","1"]]}"#,
        ]);
        assert_eq!(result.exit_code, 4);
        assert_eq!(
            result.rendered(),
            r#"{"verdict":"undecided","constraint":"alpha^2 = 2"}"#
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&[]).exit_code, 2);
        assert_eq!(run(&["frobnicate"]).exit_code, 2);
        assert_eq!(
            run(&["check-kp", "--wrong", "x"]).exit_code,
            2,
        );
        let missing = run(&["decide", "--class", "xdep",
            "--metric", r#"{"entries":[["x","0"],["0","x^2"]]}"#,
            "--metric2", r#"{"entries":[["x","0"],["0","x^2"]]}"#]);
        assert_eq!(missing.exit_code, 2);
    }

    #[test]
    fn parse_error_exit_code() {
        let result = run(&["bracket", "--f", "x y", "--g", "y"]);
        assert_eq!(result.exit_code, 2);
        assert_eq!(result.payload["error"], "parse_error");
    }

    #[test]
    fn asymmetric_metric_rejected() {
        let result = run(&[
            "check-kp",
            "--metric",
            r#"{"entries":[["1","x"],["y","1"]]}"#,
        ]);
        assert_eq!(result.exit_code, 3);
        assert_eq!(result.rendered(), r#"{"error":"asymmetric_metric"}"#);
    }

    #[test]
    fn at_file_inputs() {
        let dir = std::env::temp_dir().join("kp-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("metric.json");
        std::fs::write(&path, r#"{"entries":[["1","0"],["0","1"]]}"#).unwrap();
        let arg = format!("@{}", path.display());
        let result = run(&["check-kp", "--metric", &arg]);
        assert_eq!(result.exit_code, 0);
    }

    #[test]
    fn text_format() {
        let result = run(&[
            "--format",
            "text",
            "check-kp",
            "--metric",
            r#"{"entries":[["1","0"],["0","1"]]}"#,
        ]);
        assert_eq!(result.exit_code, 0);
        assert_eq!(result.rendered(), "holds: true\neta: 1/x^2");
    }

    #[test]
    fn compose_and_apply_roundtrip() {
        let shear = r#"{"type":"scale_shear","alpha":"2","p":"x"}"#;
        let shear2 = r#"{"type":"scale_shear","alpha":"3","p":"x^2"}"#;
        let composed = run(&["compose", "--auto", shear, "--auto2", shear2]);
        assert_eq!(composed.exit_code, 0);
        assert_eq!(
            composed.rendered(),
            r#"{"result":{"type":"scale_shear","alpha":"6","p":"4*x^2 + x"}}"#
        );

        let applied = run(&["apply", "--auto", shear, "--f", "x + y"]);
        assert_eq!(applied.rendered(), r#"{"result":"3*x + y"}"#);
    }

    #[test]
    fn verify_exit_codes() {
        let g = r#"{"entries":[["1","0"],["0","1"]]}"#;
        let g4 = r#"{"entries":[["4","0"],["0","1"]]}"#;
        let scaling = r#"{"type":"scale_shear","alpha":"2","p":"0"}"#;
        let ok = run(&["verify", "--metric", g, "--metric2", g4, "--auto", scaling]);
        assert_eq!(ok.exit_code, 0);
        assert_eq!(ok.rendered(), r#"{"verified":true}"#);
        let bad = run(&["verify", "--metric", g, "--metric2", g, "--auto", scaling]);
        assert_eq!(bad.exit_code, 1);
        assert_eq!(bad.rendered(), r#"{"verified":false}"#);
    }
}
