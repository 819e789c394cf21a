//! Command runner behind the `nlpoly` binary.
//!
//! Exit statuses: 0 success, 1 a `check` property failed, 2 unreadable or
//! malformed input, 3 an enumeration cap or budget was exceeded, 4 a
//! contract violation or a disagreement between the two coflow routes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use nl_dichromate::digraph::{
    count_acyclic_colorings, matroid_from_digraph, nl_coflow_graphic, Digraph,
    DEFAULT_COLORING_BUDGET,
};
use nl_dichromate::exact::RatMatrix;
use nl_dichromate::nl::{dichromate, nl_coflow_matroid, nl_flow_matroid};
use nl_dichromate::om::RealizedOM;
use nl_dichromate::poly::TriPoly;
use nl_dichromate::verify::{check_digraph, check_matroid, Report};
use nl_dichromate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Coflow,
    Flow,
    Dichromate,
    Colorings,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Digraph,
    Matrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Which definition of ψ `coflow` evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Graphic,
    Matroid,
    Both,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    /// Detected from the file contents when `None`.
    pub input_kind: Option<InputKind>,
    /// 1-based columns, `dichromate` only.
    pub basis: Option<Vec<usize>>,
    /// Number of colors, `colorings` only.
    pub k: Option<u64>,
    pub format: OutputFormat,
    /// Largest number of arcs or elements that will be enumerated.
    pub cap: usize,
    /// `None` picks the graphic route for digraphs, the matroid route otherwise.
    pub oracle: Option<Oracle>,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            input_kind: None,
            basis: None,
            k: None,
            format: OutputFormat::Text,
            cap: 16,
            oracle: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_CONTRACT: u8 = 4;

/// A failed run: exit status and message.
#[derive(Debug)]
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::InvalidBasis(_) | Error::Dimension(_) => EXIT_PARSE,
            Error::Resource(_) => EXIT_CAP,
            Error::Contract(_) | Error::NotARealization(_) | Error::InvalidPoset(_) => {
                EXIT_CONTRACT
            }
        };
        Failure(status, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_PARSE, msg.into())
}

pub enum Input {
    Digraph(Digraph),
    Matrix(RatMatrix),
}

/// A file holding a JSON object is a matrix; anything else is a digraph.
pub fn detect_kind(text: &str) -> InputKind {
    if text.trim_start().starts_with('{') {
        InputKind::Matrix
    } else {
        InputKind::Digraph
    }
}

pub fn parse_input(text: &str, kind: Option<InputKind>) -> nl_dichromate::Result<Input> {
    match kind.unwrap_or_else(|| detect_kind(text)) {
        InputKind::Digraph => Ok(Input::Digraph(text.parse()?)),
        InputKind::Matrix => Ok(Input::Matrix(parse_matrix_str(text)?)),
    }
}

/// Reads and parses a matrix file; read failures are reported at line 0.
pub fn parse_matrix(path: &std::path::Path) -> nl_dichromate::Result<RatMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_matrix_str(&text)
}

/// Parses `{"rows": [[entry, …], …]}` where each entry is an integer or a
/// string `"p"` or `"p/q"`.
pub fn parse_matrix_str(text: &str) -> nl_dichromate::Result<RatMatrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let at = |row: Option<usize>, col: Option<usize>, message: String| {
        let (line, column) = locate(text, row, col);
        Error::Parse {
            line,
            column,
            message,
        }
    };
    let rows = value.get("rows").and_then(Value::as_array).ok_or_else(|| {
        at(
            None,
            None,
            "expected an object with a \"rows\" array".into(),
        )
    })?;
    let width = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| at(Some(i), None, format!("row {} is not an array", i + 1)))?;
        if row.len() != width {
            return Err(at(
                Some(i),
                None,
                format!("row {} has {} entries, expected {width}", i + 1, row.len()),
            ));
        }
        for (j, v) in row.iter().enumerate() {
            let q = parse_rational(v).ok_or_else(|| {
                at(
                    Some(i),
                    Some(j),
                    format!("entry ({}, {}) is not a rational: {v}", i + 1, j + 1),
                )
            })?;
            entries.push(q);
        }
    }
    RatMatrix::new(rows.len(), width, entries)
}

fn parse_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => {
            let int = n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))?;
            Some(BigRational::from_integer(int))
        }
        Value::String(s) => {
            let s = s.trim();
            if s.is_empty() || s.contains(char::is_whitespace) {
                return None;
            }
            BigRational::from_str(s).ok()
        }
        _ => None,
    }
}

/// 1-based line and column of the `row`-th array inside `"rows"` (or of its
/// `col`-th entry), found by a bracket-depth scan. Falls back to the start
/// of the `"rows"` key, then to 1:1.
fn locate(text: &str, row: Option<usize>, col: Option<usize>) -> (usize, usize) {
    let position = |offset: usize| {
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    };
    let Some(key) = text.find("\"rows\"") else {
        return (1, 1);
    };
    let Some(row) = row else {
        return position(key);
    };
    let (mut depth, mut rows_seen, mut entries_seen) = (0usize, 0usize, 0usize);
    let mut in_string = false;
    let mut escaped = false;
    let mut at_value_start = false;
    for (off, ch) in text[key + 6..].char_indices() {
        let off = off + key + 6;
        if in_string {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        let in_target = depth == 2 && rows_seen == row + 1;
        if in_target && at_value_start && !ch.is_whitespace() {
            at_value_start = false;
            if col == Some(entries_seen) {
                return position(off);
            }
        }
        match ch {
            '"' => in_string = true,
            '[' => {
                depth += 1;
                if depth == 2 {
                    rows_seen += 1;
                    if rows_seen == row + 1 {
                        if col.is_none() {
                            return position(off);
                        }
                        entries_seen = 0;
                        at_value_start = true;
                    }
                }
            }
            ']' => {
                if depth == 1 {
                    break;
                }
                depth = depth.saturating_sub(1);
            }
            ',' if in_target => {
                entries_seen += 1;
                at_value_start = true;
            }
            _ => {}
        }
    }
    position(key)
}

fn poly_out(p: &TriPoly) -> Value {
    p.to_json()
}

fn element_limit(n: usize, limit: usize, what: &str) -> Result<(), Failure> {
    if n > limit {
        return Err(Failure(
            EXIT_CAP,
            format!("resource limit exceeded: {n} {what} exceed the limit of {limit}"),
        ));
    }
    Ok(())
}

fn matroid_of(input: &Input) -> nl_dichromate::Result<RealizedOM> {
    match input {
        Input::Digraph(d) => matroid_from_digraph(d),
        Input::Matrix(m) => RealizedOM::from_rat_matrix(m),
    }
}

fn ground_size(input: &Input) -> usize {
    match input {
        Input::Digraph(d) => d.arc_count(),
        Input::Matrix(m) => m.cols(),
    }
}

fn report_json(r: &Report) -> Value {
    json!({
        "property": r.property,
        "passed": r.passed(),
        "checked": r.checked,
        "failed": r.failed,
        "failures": r.failures,
    })
}

struct Emitted {
    text: String,
    json: Value,
    status: u8,
}

fn execute(config: &RunConfig) -> Result<Emitted, Failure> {
    let text = std::fs::read_to_string(&config.input_path)
        .map_err(|e| usage(format!("cannot read {}: {e}", config.input_path.display())))?;
    let input = parse_input(&text, config.input_kind)?;
    let cap = config.cap;
    let command_name = format!("{:?}", config.command).to_lowercase();
    let mut out = match config.command {
        Command::Coflow => {
            let is_digraph = matches!(input, Input::Digraph(_));
            let oracle = config.oracle.unwrap_or(if is_digraph {
                Oracle::Graphic
            } else {
                Oracle::Matroid
            });
            element_limit(ground_size(&input), cap, "elements")?;
            let graphic = match (&input, oracle) {
                (_, Oracle::Matroid) => None,
                (Input::Digraph(d), _) => Some(nl_coflow_graphic(d, cap)?),
                (Input::Matrix(_), _) => {
                    return Err(usage("the graphic route needs a digraph input"))
                }
            };
            let matroid = match oracle {
                Oracle::Graphic => None,
                _ => Some(nl_coflow_matroid(&matroid_of(&input)?)?),
            };
            match (graphic, matroid) {
                (Some(g), Some(m)) => {
                    let agree = g == m;
                    let out = Emitted {
                        text: format!("graphic: {g}\nmatroid: {m}\n"),
                        json: json!({"graphic": poly_out(&g), "matroid": poly_out(&m), "agree": agree}),
                        status: 0,
                    };
                    if !agree {
                        return Err(Failure(
                            EXIT_CONTRACT,
                            format!("oracle disagreement: graphic ψ = {g}, matroid ψ = {m}"),
                        ));
                    }
                    out
                }
                (Some(p), None) | (None, Some(p)) => Emitted {
                    text: format!("{p}\n"),
                    json: json!({"polynomial": poly_out(&p)}),
                    status: 0,
                },
                (None, None) => unreachable!("at least one route runs"),
            }
        }
        Command::Flow => {
            element_limit(ground_size(&input), cap, "elements")?;
            let p = nl_flow_matroid(&matroid_of(&input)?)?;
            Emitted {
                text: format!("{p}\n"),
                json: json!({"polynomial": poly_out(&p)}),
                status: 0,
            }
        }
        Command::Dichromate => {
            element_limit(
                ground_size(&input),
                cap / 2,
                "elements (the union matroid doubles them)",
            )?;
            let om = matroid_of(&input)?;
            let basis = match &config.basis {
                Some(b) => Some(
                    b.iter()
                        .map(|&e| {
                            e.checked_sub(1)
                                .ok_or_else(|| Error::InvalidBasis("labels start at 1".into()))
                        })
                        .collect::<nl_dichromate::Result<Vec<usize>>>()?,
                ),
                None => None,
            };
            let d = dichromate(&om, basis.as_deref())?;
            let used: Vec<usize> = d.basis().iter().map(|e| e + 1).collect();
            let shown: Vec<String> = used.iter().map(ToString::to_string).collect();
            Emitted {
                text: format!("{}\nbasis: {{{}}}\n", d.omega, shown.join(",")),
                json: json!({"polynomial": poly_out(&d.omega), "basis": used}),
                status: 0,
            }
        }
        Command::Colorings => {
            let Input::Digraph(d) = &input else {
                return Err(usage("colorings needs a digraph input"));
            };
            let k = config
                .k
                .filter(|&k| k > 0)
                .ok_or_else(|| usage("colorings needs a positive --k"))?;
            let count = count_acyclic_colorings(d, k, DEFAULT_COLORING_BUDGET)?;
            Emitted {
                text: format!("{count}\n"),
                json: json!({"k": k, "count": count}),
                status: 0,
            }
        }
        Command::Check => {
            element_limit(
                ground_size(&input),
                cap / 2,
                "elements (the union matroid doubles them)",
            )?;
            let mut reports = Vec::new();
            if let Input::Digraph(d) = &input {
                reports.extend(check_digraph(d, cap, DEFAULT_COLORING_BUDGET)?);
            }
            reports.extend(check_matroid(&matroid_of(&input)?)?);
            let mut text = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{verdict} {} ({} instances)", r.property, r.checked);
                for f in &r.failures {
                    let _ = writeln!(text, "  {f}");
                }
            }
            let all = reports.iter().all(Report::passed);
            Emitted {
                text,
                json: json!({
                    "passed": all,
                    "properties": reports.iter().map(report_json).collect::<Vec<_>>(),
                }),
                status: if all { 0 } else { EXIT_CHECK_FAILED },
            }
        }
    };
    if let Value::Object(map) = &mut out.json {
        map.insert("command".into(), Value::String(command_name));
    }
    Ok(out)
}

/// Runs one command. Never panics on bad input; all failures become an
/// exit status and a message on `stderr`.
pub fn run(config: &RunConfig) -> RunOutput {
    match execute(config) {
        Ok(out) => RunOutput {
            status: out.status,
            stdout: match config.format {
                OutputFormat::Text => out.text,
                OutputFormat::Json => format!("{}\n", out.json),
            },
            stderr: String::new(),
        },
        Err(Failure(status, message)) => RunOutput {
            status,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_matrix_str(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn matrix_examples() {
        let m = parse_matrix_str(r#"{"rows": [[1, -1]]}"#).unwrap();
        assert_eq!(m, RatMatrix::from_i64_rows(2, &[&[1, -1]]).unwrap());
        let id = parse_matrix_str(r#"{"rows": [[1, 0],[0, 1]]}"#).unwrap();
        assert_eq!(id, RatMatrix::identity(2));
        let half = parse_matrix_str(r#"{"rows": [["1/2"]]}"#).unwrap();
        assert_eq!(half.get(0, 0), &BigRational::new(1.into(), 2.into()));
        let neg = parse_matrix_str(r#"{"rows": [["-3/6", "4"]]}"#).unwrap();
        assert_eq!(neg.get(0, 0), &BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn ragged_rows_are_located() {
        let (line, column, msg) = parse_err("{\"rows\": [\n  [1, 2],\n  [3]\n]}");
        assert_eq!((line, column), (3, 3));
        assert!(msg.contains("row 2"), "{msg}");
    }

    #[test]
    fn bad_rationals_are_located() {
        let (line, column, _) = parse_err("{\"rows\": [[1, \"x/2\"]]}");
        assert_eq!((line, column), (1, 15));
        for bad in [r#""1/0""#, "1.5", r#""1 /2""#, "true", r#""""#] {
            let text = format!("{{\"rows\": [[{bad}]]}}");
            parse_err(&text);
        }
    }

    #[test]
    fn malformed_json_reports_serde_position() {
        let (line, _, _) = parse_err("{\"rows\": [[1, 2]\n,,]}");
        assert_eq!(line, 2);
        parse_err(r#"{"cols": []}"#);
    }

    #[test]
    fn kind_detection() {
        assert_eq!(detect_kind("  {\"rows\": []}"), InputKind::Matrix);
        assert_eq!(detect_kind("# comment\ndigraph 2\n"), InputKind::Digraph);
    }
}
