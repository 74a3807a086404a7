//! Command-line front end: space files, argument parsing, reports.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::constructions::{
    basis_from_exposed, equivalence_roundtrip, exposing_functional_from_operator, operator_from_basis,
    operator_matrix, operator_norm_attainment, Attainment, Matrix, Operator, RelativeBasis,
};
use crate::error::{Error, Result};
use crate::norms::{Backend, Space, SpaceSpec, ToleranceConfig};
use crate::orthogonality::{
    directional_min, is_strongly_orthogonal_relative, is_strongly_orthogonal_set, pair_verdicts,
};
use crate::pointgeom::{is_exposed, strict_convexity_probe, NormalCone, PointClass};
use crate::rational;
use crate::vector::{Functional, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Norm of each vector.
    Norm,
    /// Birkhoff-James and strong orthogonality of a pair, or of a set.
    Orth,
    /// Extreme / exposed classification of a unit vector.
    Classify,
    /// Basis strongly orthonormal relative to the first vector.
    Basis,
    /// The operator fixing x0 and halving a relative basis.
    Operator,
    /// The three equivalent conditions at a unit vector.
    Roundtrip,
    /// Sampled strict-convexity probe.
    Probe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub space_path: PathBuf,
    pub command: Command,
    /// Raw coordinate lists, e.g. `"1,0"` or `"3/4,-1/2"`.
    pub vectors: Vec<String>,
    pub tol: ToleranceConfig,
    pub output: OutputFormat,
    pub seed: u64,
    pub exact: bool,
    pub samples: Option<usize>,
    /// Treat the vectors of `orth` as a set even when there are two.
    pub set: bool,
    /// Rows separated by `;`, entries by `,` (for `operator`).
    pub matrix: Option<String>,
}

impl RunConfig {
    pub fn new(space_path: impl Into<PathBuf>, command: Command, vectors: &[&str]) -> Self {
        RunConfig {
            space_path: space_path.into(),
            command,
            vectors: vectors.iter().map(|s| s.to_string()).collect(),
            tol: ToleranceConfig::default(),
            output: OutputFormat::Text,
            seed: 0,
            exact: false,
            samples: None,
            set: false,
            matrix: None,
        }
    }
}

/// Command-line grammar of the `nsg` binary.
#[derive(Debug, Parser)]
#[command(name = "nsg", version, about = "Orthogonality, exposed points and norm-attaining operators in small normed spaces")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Space definition (JSON).
    #[arg(long)]
    pub space: PathBuf,
    /// Vectors as comma-separated decimals or rationals, e.g. 1,0 or 3/4,-1/2.
    pub vectors: Vec<String>,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Use exact rational arithmetic (polyhedral norms, l1 and l-infinity).
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample count for `probe`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Treat the vectors of `orth` as a set.
    #[arg(long)]
    pub set: bool,
    /// Operator matrix for `operator`, rows separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    #[arg(long, env = "NSG_TOL_EPS_ABS")]
    pub eps_abs: Option<f64>,
    #[arg(long)]
    pub eps_flat: Option<f64>,
    #[arg(long)]
    pub tau_min: Option<f64>,
    /// Sphere samples in the plane.
    #[arg(long)]
    pub grid_2d: Option<usize>,
    /// Sphere samples in three and four dimensions.
    #[arg(long)]
    pub grid_3d: Option<usize>,
}

impl Cli {
    /// Parses an argument list. Tokens such as `-1,0` are vectors, not flags.
    pub fn parse_args<I, T>(args: I) -> std::result::Result<Cli, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString>,
    {
        let args = args.into_iter().map(|a| {
            let a: std::ffi::OsString = a.into();
            match a.to_str() {
                Some(s) if looks_negative(s) => format!(" {s}").into(),
                _ => a,
            }
        });
        Cli::try_parse_from(args)
    }

    pub fn into_config(self) -> RunConfig {
        let mut tol = ToleranceConfig::default();
        if let Some(v) = self.eps_abs {
            tol.eps_abs = v;
        }
        if let Some(v) = self.eps_flat {
            tol.eps_flat = v;
        }
        if let Some(v) = self.tau_min {
            tol.tau_min = v;
        }
        if let Some(v) = self.grid_2d {
            tol.grid_2d = v;
        }
        if let Some(v) = self.grid_3d {
            tol.grid_3d = v;
        }
        RunConfig {
            space_path: self.space,
            command: self.command,
            vectors: self.vectors,
            tol,
            output: if self.json { OutputFormat::Json } else { OutputFormat::Text },
            seed: self.seed,
            exact: self.exact,
            samples: self.samples,
            set: self.set,
            matrix: self.matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    /// `None` for non-finite values.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub coords: Vec<f64>,
    pub note: String,
}

/// The three conditions of a round-trip, flattened for the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundtripFields {
    pub condition_1_exposed: bool,
    pub condition_2_basis: bool,
    pub condition_3_operator: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

/// Machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub space: Option<SpaceSpec>,
    pub inputs: Vec<String>,
    pub verdicts: Vec<NamedVerdict>,
    pub margins: Vec<NamedValue>,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<RoundtripFields>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    fn new(config: &RunConfig, tol: &ToleranceConfig) -> Self {
        Report {
            command: config.command,
            space: None,
            inputs: config.vectors.clone(),
            verdicts: Vec::new(),
            margins: Vec::new(),
            witnesses: Vec::new(),
            seed: config.seed,
            tolerances: tol.clone(),
            values: Vec::new(),
            roundtrip: None,
            error: None,
        }
    }

    fn verdict(&mut self, name: impl Into<String>, value: bool) {
        self.verdicts.push(NamedVerdict {
            name: name.into(),
            value,
        });
    }

    fn margin(&mut self, name: impl Into<String>, value: f64) {
        self.margins.push(NamedValue {
            name: name.into(),
            value: value.is_finite().then_some(value),
        });
    }

    fn value(&mut self, name: impl Into<String>, value: f64) {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.is_finite().then_some(value),
        });
    }

    fn witness(&mut self, name: impl Into<String>, coords: &[f64], note: impl Into<String>) {
        self.witnesses.push(Witness {
            name: name.into(),
            coords: coords.to_vec(),
            note: note.into(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of [`run`]: exit code, report and human-readable text.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: Report,
    pub text: String,
}

impl RunOutput {
    /// What the binary prints on stdout.
    pub fn rendered(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.report.to_json(),
            OutputFormat::Text => self.text.clone(),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InconsistentClassification(_) => 2,
        _ => 1,
    }
}

fn looks_negative(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next() == Some('-') && chars.next().is_some_and(|c| c.is_ascii_digit() || c == '.')
}

/// Loads and validates a space file. Errors name the file, the line of the
/// offending element and the field.
pub fn parse_space_file(path: &Path) -> Result<SpaceSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_space_text(&text, &path.display().to_string())
}

/// [`parse_space_file`] on an in-memory document; `origin` names it in
/// diagnostics.
pub fn parse_space_text(text: &str, origin: &str) -> Result<SpaceSpec> {
    let spec: SpaceSpec = serde_json::from_str(text).map_err(|e| Error::InvalidSpec {
        message: e.to_string(),
        location: Some(format!("{origin}:{}:{}", e.line(), e.column())),
    })?;
    match Space::build(spec.clone(), Backend::Float) {
        Ok(_) => Ok(spec),
        Err(Error::InvalidSpec { message, location }) => {
            let line = location.as_deref().and_then(|l| locate_field(text, l));
            let loc = match (line, location) {
                (Some(n), Some(field)) => format!("{origin}:{n} ({field})"),
                (None, Some(field)) => format!("{origin} ({field})"),
                (_, None) => origin.to_string(),
            };
            Err(Error::InvalidSpec {
                message,
                location: Some(loc),
            })
        }
        Err(e) => Err(e),
    }
}

/// Line (1-based) of a field path such as `pieces[2]` or `p` in a JSON
/// document.
pub fn locate_field(text: &str, field: &str) -> Option<usize> {
    let (key, index) = match field.split_once('[') {
        Some((k, rest)) => (k, rest.trim_end_matches(']').parse::<usize>().ok()),
        None => (field, None),
    };
    let needle = format!("\"{key}\"");
    let start = text.find(&needle)? + needle.len();
    let line_of = |pos: usize| text[..pos].matches('\n').count() + 1;
    let Some(index) = index else {
        return Some(line_of(start));
    };
    let bytes = text.as_bytes();
    let mut i = start + text[start..].find('[')? + 1;
    let mut depth = 0usize;
    let mut element = 0usize;
    let mut in_string = false;
    let mut at_element_start = true;
    while i < bytes.len() {
        let c = bytes[i];
        if in_string {
            match c {
                b'\\' => i += 1,
                b'"' => in_string = false,
                _ => {}
            }
        } else if !c.is_ascii_whitespace() {
            if depth == 0 && at_element_start && c != b']' {
                if element == index {
                    return Some(line_of(i));
                }
                at_element_start = false;
            }
            match c {
                b'"' => in_string = true,
                b'[' | b'{' => depth += 1,
                b']' | b'}' if depth == 0 => return None,
                b']' | b'}' => depth -= 1,
                b',' if depth == 0 => {
                    element += 1;
                    at_element_start = true;
                }
                _ => {}
            }
        }
        i += 1;
    }
    None
}

/// Parses `"1,0"`, `"3/4, -1/2"` or `"(1, 1)"` into an exact vector.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let coords = inner
        .split(',')
        .map(|c| rational::parse(c).map_err(|m| Error::invalid_at(m, format!("vector {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::from_rationals(coords))
}

fn parse_matrix(text: &str) -> Result<Matrix> {
    let rows = text
        .split(';')
        .map(|r| parse_vector(r).map(|v| v.exact_coords().expect("rational entries")))
        .collect::<Result<Vec<_>>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::invalid_at("matrix must be square", "matrix"));
    }
    Ok(Matrix::from_rationals(rows))
}

fn arity(config: &RunConfig, min: usize, max: usize) -> Result<()> {
    let n = config.vectors.len();
    if n < min || n > max {
        let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
        return Err(Error::invalid_at(
            format!("{:?} takes {want} vector(s), got {n}", config.command).to_lowercase(),
            "vectors",
        ));
    }
    Ok(())
}

/// Executes one command. Never panics on bad input: errors become exit
/// code 1 (2 for an inconsistent classification) with the message in the
/// report.
pub fn run(config: &RunConfig) -> RunOutput {
    let mut tol = config.tol.clone();
    tol.seed = config.seed;
    let mut report = Report::new(config, &tol);
    let mut text = Vec::new();
    match execute(config, &tol, &mut report, &mut text) {
        Ok(()) => RunOutput {
            exit_code: 0,
            report,
            text: text.join("\n") + "\n",
        },
        Err(e) => {
            let code = exit_code(&e);
            report.error = Some(e.to_string());
            text.push(format!("error: {e}"));
            RunOutput {
                exit_code: code,
                report,
                text: text.join("\n") + "\n",
            }
        }
    }
}

fn execute(config: &RunConfig, tol: &ToleranceConfig, report: &mut Report, out: &mut Vec<String>) -> Result<()> {
    tol.validate()?;
    let spec = parse_space_file(&config.space_path)?;
    report.space = Some(spec.clone());
    let backend = if config.exact { Backend::Exact } else { Backend::Float };
    let space = Space::build(spec, backend)?;
    let vectors = config
        .vectors
        .iter()
        .map(|v| parse_vector(v))
        .collect::<Result<Vec<_>>>()?;
    for v in &vectors {
        space.check_dim(v.dim())?;
    }
    match config.command {
        Command::Norm => cmd_norm(&space, &vectors, config, report, out),
        Command::Orth => cmd_orth(&space, &vectors, config, tol, report, out),
        Command::Classify => {
            arity(config, 1, 1)?;
            let pc = is_exposed(&space, &vectors[0], tol)?;
            render_class(&pc, report, out);
            Ok(())
        }
        Command::Basis => cmd_basis(&space, &vectors, config, tol, report, out),
        Command::Operator => cmd_operator(&space, &vectors, config, tol, report, out),
        Command::Roundtrip => cmd_roundtrip(&space, &vectors, config, tol, report, out),
        Command::Probe => {
            arity(config, 0, 0)?;
            let n = config.samples.unwrap_or(tol.grid_for(space.dim()));
            let p = strict_convexity_probe(&space, n, tol)?;
            report.verdict("strictly_convex", p.strictly_convex);
            report.margin("min_gap", p.min_gap);
            report.value("max_sum", p.max_sum);
            report.value("exposed_fraction", p.exposed_fraction);
            match &p.witness {
                None => out.push(format!("strictly convex at resolution {n}: no witness")),
                Some((x, y)) => {
                    report.witness("x", x.coords(), "unit vector");
                    report.witness("y", y.coords(), format!("||x + y|| = {}", p.max_sum));
                    out.push(format!(
                        "not strictly convex at resolution {n}: witness x = {}, y = {}, ||x + y|| = {}",
                        show_vec(x.coords()),
                        show_vec(y.coords()),
                        show(p.max_sum)
                    ));
                }
            }
            out.push(format!(
                "min gap 2 - ||x + y||: {}; exposed fraction of samples: {}",
                show(p.min_gap),
                show(p.exposed_fraction)
            ));
            Ok(())
        }
    }
}

fn cmd_norm(space: &Space, vectors: &[Vector], config: &RunConfig, report: &mut Report, out: &mut Vec<String>) -> Result<()> {
    arity(config, 1, usize::MAX)?;
    for (v, raw) in vectors.iter().zip(&config.vectors) {
        let value = space.norm(v)?;
        report.value(format!("norm({raw})"), value);
        if space.is_exact() {
            let q = space.norm_exact(v)?;
            out.push(format!("||{}|| = {q} (exact)", show_vec(v.coords())));
        } else {
            out.push(format!("||{}|| = {}", show_vec(v.coords()), value));
        }
    }
    Ok(())
}

fn cmd_orth(
    space: &Space,
    vectors: &[Vector],
    config: &RunConfig,
    tol: &ToleranceConfig,
    report: &mut Report,
    out: &mut Vec<String>,
) -> Result<()> {
    arity(config, 2, space.dim().max(2))?;
    if vectors.len() == 2 && !config.set {
        let (x, y) = (&vectors[0], &vectors[1]);
        let pair = pair_verdicts(space, x, y, tol)?;
        report.verdict("bj", pair.bj.decision);
        report.verdict("sb", pair.sb.decision);
        report.margin("bj", pair.bj.margin);
        report.margin("sb", pair.sb.margin);
        if pair.sb.borderline {
            report.verdict("sb_borderline", true);
        }
        if let Some(w) = &pair.bj.witness {
            report.witness("bj_lambda", w, "||x + λy|| < ||x||");
        }
        if let Some(w) = &pair.sb.witness {
            report.witness("sb_lambda", w, "||x + λy|| <= ||x|| with λ != 0");
        }
        let mut line = format!("BJ: {}", pair.bj.decision);
        if let Some(w) = &pair.bj.witness {
            line.push_str(&format!(" (witness λ = {})", show(w[0])));
        }
        line.push_str(&format!("; SB: {}", pair.sb.decision));
        if !y.is_zero() {
            let prof = directional_min(space, x, y, tol)?;
            report.value("min_value", prof.min_value);
            report.value("minimizer_lo", prof.minimizer_interval.0);
            report.value("minimizer_hi", prof.minimizer_interval.1);
            if pair.bj.decision && !pair.sb.decision {
                line.push_str(&format!(
                    " (minimizer interval [{},{}])",
                    show(prof.minimizer_interval.0),
                    show(prof.minimizer_interval.1)
                ));
            }
        }
        if pair.sb.borderline {
            line.push_str(" [borderline: flat only at the smallest probe scale]");
        }
        out.push(line);
        out.push(format!(
            "margins: BJ {}, SB {} ({:?})",
            show(pair.bj.margin),
            show(pair.sb.margin),
            pair.sb.backend
        ));
        return Ok(());
    }
    let set = is_strongly_orthogonal_set(space, vectors, tol)?;
    report.verdict("strongly_orthogonal_set", set.decision);
    report.margin("set", set.margin);
    for i in 0..vectors.len() {
        let r = is_strongly_orthogonal_relative(space, vectors, i, tol)?;
        report.verdict(format!("relative_to_{i}"), r.decision);
        report.margin(format!("relative_to_{i}"), r.margin);
        let mut line = format!("relative to {}: {}", show_vec(vectors[i].coords()), r.decision);
        if let Some(w) = &r.witness {
            report.witness(format!("relative_to_{i}"), w, "coefficients of the other vectors");
            line.push_str(&format!(" (witness coefficients {})", show_vec(w)));
        }
        out.push(line);
    }
    let mut line = format!("strongly orthogonal set: {}", set.decision);
    if let Some(i) = set.failing_index {
        line.push_str(&format!(" (fails relative to vector {i})"));
    }
    out.push(line);
    Ok(())
}

fn cmd_basis(
    space: &Space,
    vectors: &[Vector],
    config: &RunConfig,
    tol: &ToleranceConfig,
    report: &mut Report,
    out: &mut Vec<String>,
) -> Result<()> {
    arity(config, 1, space.dim())?;
    if vectors.len() > 1 {
        // Check a supplied basis.
        let r = is_strongly_orthogonal_relative(space, vectors, 0, tol)?;
        let units = vectors
            .iter()
            .all(|v| space.norm(v).is_ok_and(|n| (n - 1.0).abs() <= tol.eps_abs));
        let full = vectors.len() == space.dim();
        report.verdict("relative_certificate", r.decision);
        report.verdict("unit_norms", units);
        report.verdict("full_basis", full);
        report.margin("certificate", r.margin);
        if let Some(w) = &r.witness {
            report.witness("coefficients", w, "violating coefficients");
        }
        out.push(format!(
            "supplied basis strongly orthonormal relative to {}: {} (margin {}; unit norms: {units}; spans: {full})",
            show_vec(vectors[0].coords()),
            r.decision && units && full,
            show(r.margin)
        ));
        return Ok(());
    }
    match basis_from_exposed(space, &vectors[0], tol) {
        Ok(b) => {
            render_basis(&b, report, out);
            Ok(())
        }
        Err(Error::NotExposed(pc)) => {
            report.verdict("basis_exists", false);
            render_class(&pc, report, out);
            out.insert(0, "no basis strongly orthonormal relative to this point: not exposed".into());
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn render_basis(b: &RelativeBasis, report: &mut Report, out: &mut Vec<String>) {
    report.verdict("basis_exists", true);
    report.margin("certificate", b.certificate.margin);
    for (i, v) in b.vectors.iter().enumerate() {
        report.witness(format!("basis_{i}"), v.coords(), if i == b.distinguished { "x0" } else { "kernel vector" });
    }
    out.push(format!(
        "basis relative to {}: {}",
        show_vec(b.x0().coords()),
        b.vectors.iter().map(|v| show_vec(v.coords())).collect::<Vec<_>>().join(", ")
    ));
    out.push(format!("certificate: strongly orthogonal relative to x0 (margin {})", show(b.certificate.margin)));
}

fn cmd_operator(
    space: &Space,
    vectors: &[Vector],
    config: &RunConfig,
    tol: &ToleranceConfig,
    report: &mut Report,
    out: &mut Vec<String>,
) -> Result<()> {
    if let Some(m) = &config.matrix {
        arity(config, 0, 1)?;
        let matrix = parse_matrix(m)?;
        space.check_dim(matrix.dim())?;
        let att = operator_norm_attainment(space, &matrix, vectors.first(), tol)?;
        render_matrix(&matrix, out);
        render_attainment(&att, report, out);
        return Ok(());
    }
    arity(config, 1, space.dim())?;
    let basis = if vectors.len() == 1 {
        basis_from_exposed(space, &vectors[0], tol)?
    } else {
        RelativeBasis::certify(space, vectors.to_vec(), 0, tol)?
    };
    render_basis(&basis, report, out);
    let op: Operator = operator_from_basis(space, &basis, tol)?;
    render_matrix(&op.matrix, out);
    render_attainment(&op.attainment, report, out);
    if op.attainment.only_at_x0 == Some(true) {
        let g = exposing_functional_from_operator(space, &op, basis.x0(), tol)?;
        report.witness("f_of_a", g.coeffs(), "exposing functional f o A");
        out.push(format!("exposing functional f o A: {}", show_vec(g.coeffs())));
    }
    Ok(())
}

fn render_matrix(m: &Matrix, out: &mut Vec<String>) {
    let rows: Vec<String> = match &m.exact {
        Some(q) => q
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect(),
        None => m.rows.iter().map(|r| show_vec(r)).collect(),
    };
    out.push(format!("A = [{}]", rows.join(", ")));
}

fn render_attainment(att: &Attainment, report: &mut Report, out: &mut Vec<String>) {
    report.value("norm_estimate", att.norm_estimate);
    if let Some(only) = att.only_at_x0 {
        report.verdict("attains_only_at_x0", only);
    }
    if let Some(s) = att.separation {
        report.margin("attainment_separation", s);
    }
    for (i, c) in att.clusters.iter().enumerate() {
        report.witness(format!("attainment_cluster_{i}"), c.coords(), "attains the norm");
    }
    let norm = match &att.exact_norm {
        Some(q) => format!("{q} (exact)"),
        None => show(att.norm_estimate),
    };
    let mut line = format!(
        "||A|| = {norm}; attained at {} point(s) in {} cluster(s) over {} scanned",
        att.points.len(),
        att.clusters.len(),
        att.scanned
    );
    if let Some(only) = att.only_at_x0 {
        line.push_str(&format!("; only at ±x0: {only}"));
    }
    out.push(line);
}

fn cmd_roundtrip(
    space: &Space,
    vectors: &[Vector],
    config: &RunConfig,
    tol: &ToleranceConfig,
    report: &mut Report,
    out: &mut Vec<String>,
) -> Result<()> {
    arity(config, 1, 1)?;
    let r = equivalence_roundtrip(space, &vectors[0], tol)?;
    let conds = [
        ("condition_1_exposed", "exposed point", &r.condition_1_exposed),
        ("condition_2_basis", "relative strongly orthonormal basis", &r.condition_2_basis),
        ("condition_3_operator", "operator attaining its norm only at ±x0", &r.condition_3_operator),
    ];
    for (i, (key, label, c)) in conds.iter().enumerate() {
        report.verdict(*key, c.holds);
        report.margin(*key, c.margin);
        out.push(format!("condition {} ({label}): {} (margin {}); {}", i + 1, c.holds, show(c.margin), c.detail));
    }
    if let Some(o) = &r.obstruction {
        out.push(format!("obstruction: {o}"));
    }
    report.roundtrip = Some(RoundtripFields {
        condition_1_exposed: r.condition_1_exposed.holds,
        condition_2_basis: r.condition_2_basis.holds,
        condition_3_operator: r.condition_3_operator.holds,
        obstruction: r.obstruction.clone(),
    });
    if let Some(f) = &r.classification.exposing_functional {
        report.witness("exposing_functional", f.coeffs(), "from classification");
    }
    if let Some(z) = &r.classification.flat_witness {
        report.witness("flat_witness", z.coords(), "x ± z stays in the ball");
    }
    if let Some(g) = &r.functional {
        report.witness("f_of_a", g.coeffs(), "exposing functional f o A");
    }
    Ok(())
}

fn render_class(pc: &PointClass, report: &mut Report, out: &mut Vec<String>) {
    report.verdict("on_sphere", pc.on_sphere);
    report.verdict("extreme", pc.extreme);
    report.verdict("exposed", pc.exposed);
    out.push(format!(
        "x = {}: on sphere: {}; extreme: {}; exposed: {}",
        show_vec(pc.point.coords()),
        pc.on_sphere,
        pc.extreme,
        pc.exposed
    ));
    out.push(format!("normal cone: {}", cone_label(&pc.normal_cone)));
    if let Some(f) = &pc.exposing_functional {
        report.witness("exposing_functional", f.coeffs(), "f(x) = 1, f < 1 elsewhere on the ball");
        out.push(format!("exposing functional: {}", show_vec(f.coeffs())));
    }
    if let Some(z) = &pc.flat_witness {
        report.witness("flat_witness", z.coords(), "||x + z|| <= 1 and ||x - z|| <= 1");
        out.push(format!("flat witness z = {}", show_vec(z.coords())));
    }
    if let Some(o) = &pc.obstruction {
        out.push(format!("obstruction: {o}"));
    }
}

fn cone_label(cone: &NormalCone) -> String {
    {
        let f = |g: &Functional| show_vec(g.coeffs());
        match cone {
            NormalCone::Single(g) => format!("single functional {}", f(g)),
            NormalCone::Generators(g) => format!("generated by {}", g.iter().map(f).collect::<Vec<_>>().join(", ")),
            NormalCone::Arc { left, right } => format!("arc from {} to {}", f(left), f(right)),
        }
    }
}

/// Compact number formatting: six decimals, trailing zeros dropped.
pub fn show(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 && v != 0.0 {
        return format!("{v:.3e}");
    }
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

pub fn show_vec(v: &[f64]) -> String {
    format!("({})", v.iter().map(|c| show(*c)).collect::<Vec<_>>().join(", "))
}

/// Builds the operator of a supplied basis without certifying it.
pub fn candidate_operator(space: &Space, vectors: &[Vector]) -> Result<Matrix> {
    operator_matrix(vectors, 0, space.is_exact())
}
