//! Command implementations behind the `cube-orbits` binary.
//!
//! Each command builds an [`OutputRecord`] and renders it as plain text, CSV
//! or pretty JSON. Rendering is deterministic: maps are ordered and no
//! timestamps are emitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{self, ExactInt};
use crate::oracle::{self, CubeGraph, Ground};
use crate::strings::{self, CubeKind, CubeString};
use crate::verify::{self, Suite, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Plain => "plain",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableName {
    GammaV,
    GammaE,
    LucasClasses,
    LambdaV,
    LambdaE,
}

impl TableName {
    pub const ALL: [TableName; 5] = [
        TableName::GammaV,
        TableName::GammaE,
        TableName::LucasClasses,
        TableName::LambdaV,
        TableName::LambdaE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableName::GammaV => "gamma-v",
            TableName::GammaE => "gamma-e",
            TableName::LucasClasses => "lucas-classes",
            TableName::LambdaV => "lambda-v",
            TableName::LambdaE => "lambda-e",
        }
    }

    /// Default column range of the table.
    pub fn default_max(self) -> usize {
        match self {
            TableName::GammaV => 15,
            TableName::GammaE => 14,
            TableName::LucasClasses => 16,
            TableName::LambdaV => 18,
            TableName::LambdaE => 16,
        }
    }

    pub fn labels(self) -> [&'static str; 4] {
        match self {
            TableName::GammaV => ["|V(Gamma_n)|", "o_V(Gamma_n)", "o_V(Gamma_n,1)", "o_V(Gamma_n,2)"],
            TableName::GammaE => ["|E(Gamma_n)|", "o_E(Gamma_n)", "o_E(Gamma_n,1)", "o_E(Gamma_n,2)"],
            TableName::LucasClasses => ["L_n", "p_n", "s_n", "a_n"],
            TableName::LambdaV => ["o_V(Lambda_n)", "o_V(Lambda_n,n)", "o_V(Lambda_n,2n)", ""],
            TableName::LambdaE => ["o_E(Lambda_n)", "o_E(Lambda_n,n)", "o_E(Lambda_n,2n)", ""],
        }
    }

    fn row_labels(self) -> Vec<&'static str> {
        self.labels().into_iter().filter(|l| !l.is_empty()).collect()
    }
}

impl FromStr for TableName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TableName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown table {s:?}; expected one of gamma-v, gamma-e, lucas-classes, lambda-v, lambda-e"))
    }
}

/// Everything a command reports; the JSON form of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub result: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Payload {
    Table(TablePayload),
    Verify(VerifyPayload),
    Orbits(OrbitsPayload),
    Witness(WitnessPayload),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePayload {
    pub table: String,
    pub columns: Vec<usize>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub passed: bool,
    pub suites: Vec<SuiteVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    pub suite: String,
    pub max_n: usize,
    /// `pass`, `fail` or `refused`.
    pub status: String,
    pub refusal: Option<String>,
    pub checks: Vec<CheckVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsPayload {
    pub cube: CubeKind,
    pub n: usize,
    pub ground: Ground,
    pub orbit_count: String,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    /// A string for vertex orbits, `{u,v}` for edge orbits.
    pub representative: String,
    pub size: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Asymmetric,
    VertexOrbitSize,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Asymmetric => "asymmetric",
            WitnessKind::VertexOrbitSize => "vertex-orbit-size",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPayload {
    pub kind: WitnessKind,
    pub n: usize,
    pub k: Option<usize>,
    pub witness: String,
    pub expected_orbit_size: String,
    /// `|D_n · w|`, counted by applying every dihedral map.
    pub orbit_size: String,
    pub verified: bool,
}

impl OutputRecord {
    fn new(command: &str, parameters: &[(&str, String)], result: Payload) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("output records serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Whether the command should exit with a failure status.
    pub fn failed(&self) -> bool {
        match &self.result {
            Payload::Verify(v) => !v.passed,
            Payload::Witness(w) => !w.verified,
            _ => false,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Plain => render_plain(&self.result),
            Format::Csv => render_csv(&self.result),
        }
    }
}

// ---------------------------------------------------------------- table

/// The numeric rows of a table, one vector per label, columns `1..=max_n`.
pub fn table_values(which: TableName, max_n: usize) -> Result<Vec<Vec<ExactInt>>> {
    let labels = which.row_labels();
    let mut rows = vec![Vec::with_capacity(max_n); labels.len()];
    for n in 1..=max_n {
        let column = table_column(which, n)?;
        for (row, value) in rows.iter_mut().zip(column) {
            row.push(value);
        }
    }
    Ok(rows)
}

fn table_column(which: TableName, n: usize) -> Result<Vec<ExactInt>> {
    let nu = n as u64;
    let column = match which {
        TableName::GammaV => {
            let (vertices, _) = formulas::graph_counts(nu, CubeKind::Gamma);
            let hist = if n >= 2 {
                formulas::gamma_vertex_orbits(nu)?.histogram
            } else {
                // The closed form starts at n = 2; Γ_1 = K_2 has the swap.
                oracle::vertex_orbits(&CubeGraph::build(n, CubeKind::Gamma)?)?.histogram()
            };
            vec![vertices, hist.orbit_count(), hist.get(1), hist.get(2)]
        }
        TableName::GammaE => {
            let (_, edges) = formulas::graph_counts(nu, CubeKind::Gamma);
            let o = formulas::gamma_edge_orbits(nu);
            vec![edges, o.total, o.histogram.get(1), o.histogram.get(2)]
        }
        TableName::LucasClasses => {
            let c = formulas::lucas_string_classes(nu)?;
            vec![formulas::lucas(n as i64)?, c.primitive, c.primitive_symmetric, c.asymmetric]
        }
        TableName::LambdaV => {
            let o = formulas::lambda_vertex_orbits(nu)?;
            vec![o.total, o.histogram.get(nu), o.histogram.get(2 * nu)]
        }
        TableName::LambdaE => {
            let o = formulas::lambda_edge_orbits(nu)?;
            vec![o.total, o.histogram.get(nu), o.histogram.get(2 * nu)]
        }
    };
    Ok(column)
}

pub fn cmd_table(which: TableName, max_n: usize) -> Result<OutputRecord> {
    if max_n == 0 {
        return Err(Error::below("table --max", 1, 0));
    }
    let values = table_values(which, max_n)?;
    let rows = which
        .row_labels()
        .into_iter()
        .zip(values)
        .map(|(label, values)| TableRow {
            label: label.to_string(),
            values: values.iter().map(ToString::to_string).collect(),
        })
        .collect();
    Ok(OutputRecord::new(
        "table",
        &[("table", which.name().to_string()), ("max", max_n.to_string())],
        Payload::Table(TablePayload {
            table: which.name().to_string(),
            columns: (1..=max_n).collect(),
            rows,
        }),
    ))
}

// --------------------------------------------------------------- verify

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteChoice {
    One(Suite),
    All,
}

impl FromStr for SuiteChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(SuiteChoice::All);
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .map(SuiteChoice::One)
            .ok_or_else(|| {
                format!("unknown suite {s:?}; expected formulas, oracle-vs-formula, bijections, automorphisms or all")
            })
    }
}

impl SuiteChoice {
    pub fn name(self) -> &'static str {
        match self {
            SuiteChoice::One(s) => s.name(),
            SuiteChoice::All => "all",
        }
    }
}

fn suite_verdict(report: &SuiteReport) -> SuiteVerdict {
    let status = if report.refused.is_some() {
        "refused"
    } else if report.passed() {
        "pass"
    } else {
        "fail"
    };
    SuiteVerdict {
        suite: report.suite.name().to_string(),
        max_n: report.max_n,
        status: status.to_string(),
        refusal: report.refused.clone(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckVerdict {
                name: c.name.clone(),
                range: c.range.clone(),
                passed: c.passed,
                counterexample: c.detail.clone(),
            })
            .collect(),
    }
}

/// Runs the chosen suites. `max_n = None` uses each suite's own bound.
pub fn cmd_verify(choice: SuiteChoice, max_n: Option<usize>) -> OutputRecord {
    let suites: Vec<Suite> = match choice {
        SuiteChoice::One(s) => vec![s],
        SuiteChoice::All => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> = suites
        .into_iter()
        .map(|s| verify::run_suite(s, max_n.unwrap_or_else(|| s.bound())))
        .collect();
    let passed = reports.iter().all(SuiteReport::passed);
    let max_label = max_n.map_or_else(|| "default".to_string(), |m| m.to_string());
    OutputRecord::new(
        "verify",
        &[("suite", choice.name().to_string()), ("max", max_label)],
        Payload::Verify(VerifyPayload {
            passed,
            suites: reports.iter().map(suite_verdict).collect(),
        }),
    )
}

/// Whether some check failed. Refused suites do not count as failures.
pub fn verify_has_failures(record: &OutputRecord) -> bool {
    match &record.result {
        Payload::Verify(v) => v.suites.iter().any(|s| s.status == "fail"),
        _ => false,
    }
}

// --------------------------------------------------------------- orbits

pub fn cmd_orbits(cube: CubeKind, n: usize, ground: Ground) -> Result<OutputRecord> {
    if n > oracle::MAX_DIMENSION {
        return Err(Error::above("orbits", oracle::MAX_DIMENSION, n));
    }
    let g = CubeGraph::build(n, cube)?;
    let partition = match ground {
        Ground::Vertices => oracle::vertex_orbits(&g)?,
        Ground::Edges => oracle::edge_orbits(&g)?,
    };
    let orbits = partition
        .orbits
        .iter()
        .map(|orbit| {
            let rep = orbit.representative();
            let representative = match ground {
                Ground::Vertices => g.vertices()[rep].to_machine_string(),
                Ground::Edges => {
                    let (u, v) = g.edge_strings(rep);
                    format!("{{{},{}}}", u.to_machine_string(), v.to_machine_string())
                }
            };
            OrbitEntry {
                representative,
                size: orbit.len().to_string(),
            }
        })
        .collect::<Vec<_>>();
    Ok(OutputRecord::new(
        "orbits",
        &[
            ("cube", cube.to_string()),
            ("n", n.to_string()),
            ("ground", ground_name(ground).to_string()),
        ],
        Payload::Orbits(OrbitsPayload {
            cube,
            n,
            ground,
            orbit_count: orbits.len().to_string(),
            orbits,
        }),
    ))
}

fn ground_name(ground: Ground) -> &'static str {
    match ground {
        Ground::Vertices => "vertices",
        Ground::Edges => "edges",
    }
}

// -------------------------------------------------------------- witness

pub fn cmd_witness(kind: WitnessKind, n: usize, k: Option<usize>) -> Result<OutputRecord> {
    let (witness, expected) = match kind {
        WitnessKind::Asymmetric => (strings::asymmetric_witness(n)?, 2 * n),
        WitnessKind::VertexOrbitSize => {
            let k = k.ok_or(Error::Unsupported("witness vertex-orbit-size needs an orbit size k"))?;
            (strings::vertex_orbit_witness(n, k)?, k)
        }
    };
    let observed = dihedral_orbit_size(&witness);
    let verified = witness.is_lucas() && witness.len() == n && observed == expected;
    let mut parameters = vec![("kind", kind.name().to_string()), ("n", n.to_string())];
    if let Some(k) = k {
        parameters.push(("k", k.to_string()));
    }
    Ok(OutputRecord::new(
        "witness",
        &parameters,
        Payload::Witness(WitnessPayload {
            kind,
            n,
            k,
            witness: witness.to_machine_string(),
            expected_orbit_size: expected.to_string(),
            orbit_size: observed.to_string(),
            verified,
        }),
    ))
}

/// Orbit size by brute force: the number of distinct images under all `2n`
/// dihedral maps, independent of the period-based formula.
fn dihedral_orbit_size(w: &CubeString) -> usize {
    let n = w.len();
    let images: std::collections::BTreeSet<CubeString> = (0..n)
        .flat_map(|j| [w.rotate(j), w.reverse().rotate(j)])
        .collect();
    images.len()
}

// ------------------------------------------------------------ rendering

fn render_plain(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Table(t) => {
            let header: Vec<String> = t.columns.iter().map(ToString::to_string).collect();
            let mut lines: Vec<(String, &[String])> = vec![("n".to_string(), &header[..])];
            for row in &t.rows {
                lines.push((row.label.clone(), &row.values[..]));
            }
            let label_width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| lines.iter().map(|(_, v)| v[i].len()).max().unwrap_or(0))
                .collect();
            for (label, values) in &lines {
                let mut line = format!("{label:<label_width$}");
                for (v, w) in values.iter().zip(&widths) {
                    let _ = write!(line, "  {v:>w$}");
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        Payload::Verify(v) => {
            for suite in &v.suites {
                match &suite.refusal {
                    Some(reason) => {
                        let _ = writeln!(out, "[{}] REFUSED: {reason}", suite.suite);
                    }
                    None => {
                        let _ = writeln!(out, "[{}] max n = {}: {}", suite.suite, suite.max_n, suite.status.to_uppercase());
                    }
                }
                for c in &suite.checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    let _ = writeln!(out, "  {mark} {} ({})", c.name, c.range);
                    if let Some(detail) = &c.counterexample {
                        let _ = writeln!(out, "       first counterexample: {detail}");
                    }
                }
            }
            let _ = writeln!(out, "overall: {}", if v.passed { "PASS" } else { "FAIL" });
        }
        Payload::Orbits(o) => {
            for entry in &o.orbits {
                let rep = if entry.representative.is_empty() { "ε" } else { &entry.representative };
                let _ = writeln!(out, "{rep} {}", entry.size);
            }
            let _ = writeln!(out, "{} orbits", o.orbit_count);
        }
        Payload::Witness(w) => {
            let _ = writeln!(out, "{}", w.witness);
            let _ = writeln!(out, "orbit size {} (expected {})", w.orbit_size, w.expected_orbit_size);
            let _ = writeln!(out, "verified: {}", w.verified);
        }
    }
    out
}

fn render_csv(payload: &Payload) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut put = |record: Vec<String>| writer.write_record(&record).expect("writing to memory");
    match payload {
        Payload::Table(t) => {
            let mut header = vec!["n".to_string()];
            header.extend(t.rows.iter().map(|r| r.label.clone()));
            put(header);
            for (i, n) in t.columns.iter().enumerate() {
                let mut record = vec![n.to_string()];
                record.extend(t.rows.iter().map(|r| r.values[i].clone()));
                put(record);
            }
        }
        Payload::Verify(v) => {
            put(["suite", "check", "range", "status", "counterexample"].map(String::from).to_vec());
            for suite in &v.suites {
                if let Some(reason) = &suite.refusal {
                    put(vec![suite.suite.clone(), String::new(), String::new(), "refused".into(), reason.clone()]);
                }
                for c in &suite.checks {
                    put(vec![
                        suite.suite.clone(),
                        c.name.clone(),
                        c.range.clone(),
                        if c.passed { "pass" } else { "fail" }.into(),
                        c.counterexample.clone().unwrap_or_default(),
                    ]);
                }
            }
        }
        Payload::Orbits(o) => {
            put(vec!["representative".into(), "size".into()]);
            for entry in &o.orbits {
                put(vec![entry.representative.clone(), entry.size.clone()]);
            }
        }
        Payload::Witness(w) => {
            put(["witness", "orbit_size", "expected_orbit_size", "verified"].map(String::from).to_vec());
            put(vec![
                w.witness.clone(),
                w.orbit_size.clone(),
                w.expected_orbit_size.clone(),
                w.verified.to_string(),
            ]);
        }
    }
    let bytes = writer.into_inner().expect("flushing to memory");
    String::from_utf8(bytes).expect("csv output is utf-8")
}
