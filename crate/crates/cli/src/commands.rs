//! One function per subcommand. Each returns the rendered output and
//! whether every check it performed passed.

use std::fmt::Write as _;
use std::fs;

use exactalg::{factor_rational, MPoly};
use k3fib::fibrations::{
    build_modular, build_raw, modular_symbolic, raw_symbolic, reproduce_table, run_suite, Branch,
    FibrationClass, FibrationError, SuiteConfig,
};
use k3fib::heterotic::{classify_branch, BranchReport, HeteroticError};
use k3fib::moduli::{
    invariants as sextuple_invariants, wp_normalize, InvariantPoint, ModuliError, ParamPoint,
};
use k3fib::weierstrass::{classify_fibration, WModel, WeierstrassError, T};
use serde::Serialize;
use thiserror::Error;

use crate::{Format, PointArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Heterotic(#[from] HeteroticError),
    #[error("cannot write {0}: {1}")]
    Io(String, String),
}

impl CliError {
    /// Every error here stems from the input: a malformed value, or a
    /// point at which the requested model does not exist.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Rendered output plus the pass/fail verdict for the exit status.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

pub fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "+" | "plus" => Ok(Branch::Plus),
        "-" | "minus" => Ok(Branch::Minus),
        _ => Err(format!("branch must be + or -, got {s:?}")),
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// A point given on the command line.
enum Point {
    Params(ParamPoint),
    Invariants(InvariantPoint),
}

impl Point {
    fn invariants(&self) -> Result<InvariantPoint, CliError> {
        match self {
            Point::Params(p) => Ok(sextuple_invariants(p)?),
            Point::Invariants(j) => Ok(j.clone()),
        }
    }
}

fn load_point(args: &PointArgs) -> Result<Point, CliError> {
    if let Some(list) = &args.params {
        let p = ParamPoint::parse_list(list)?;
        p.check_admissible()?;
        return Ok(Point::Params(p));
    }
    if let Some(list) = &args.j {
        return Ok(Point::Invariants(InvariantPoint::parse_list(
            list,
            args.a.as_deref(),
        )?));
    }
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let bad = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
        return if value.get("alpha").is_some() {
            let p: ParamPoint = serde_json::from_value(value).map_err(bad)?;
            p.check_admissible()?;
            Ok(Point::Params(p))
        } else {
            let j: InvariantPoint = serde_json::from_value(value).map_err(bad)?;
            j.validate()?;
            Ok(Point::Invariants(j))
        };
    }
    Err(CliError::Input(
        "give a point with --J, --params or --file".into(),
    ))
}

/// The model of `class` at a point: the sextuple model for `--params`, the
/// invariant model otherwise.
fn model_at(class: FibrationClass, point: &Point, branch: Branch) -> Result<WModel, CliError> {
    Ok(match point {
        Point::Params(p) => build_raw(class, p)?,
        Point::Invariants(j) => {
            let j = if class == FibrationClass::Standard {
                j.clone().with_rational_sqrt()
            } else {
                j.clone()
            };
            build_modular(class, &j, branch)?
        }
    })
}

#[derive(Serialize)]
struct FactorEntry {
    factor: MPoly,
    degree: u32,
    multiplicity: u32,
}

#[derive(Serialize)]
struct BuildOutput {
    class: FibrationClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<String>,
    a2: MPoly,
    a4: MPoly,
    a6: MPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    discriminant: Option<MPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discriminant_unit: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    discriminant_factors: Vec<FactorEntry>,
}

pub fn build(
    class: FibrationClass,
    args: &PointArgs,
    symbolic: bool,
    raw: bool,
    branch: Branch,
    format: Format,
) -> Result<Outcome, CliError> {
    let (model, point) = if symbolic {
        (
            if raw {
                raw_symbolic(class)
            } else {
                modular_symbolic(class, branch)
            },
            None,
        )
    } else {
        let point = load_point(args)?;
        let label = match &point {
            Point::Params(p) => p.to_string(),
            Point::Invariants(j) => j.to_string(),
        };
        (model_at(class, &point, branch)?, Some(label))
    };
    let mut out = BuildOutput {
        class,
        point,
        a2: model.a2.clone(),
        a4: model.a4.clone(),
        a6: model.a6.clone(),
        discriminant: None,
        discriminant_unit: None,
        discriminant_factors: Vec::new(),
    };
    if !symbolic {
        let delta = model.discriminant();
        let fac = factor_rational(&delta, T).map_err(WeierstrassError::from)?;
        out.discriminant_unit = Some(fac.unit.to_string());
        out.discriminant_factors = fac
            .factors
            .into_iter()
            .map(|(factor, multiplicity)| FactorEntry {
                degree: factor.degree_in(T).unwrap_or(0),
                factor,
                multiplicity,
            })
            .collect();
        out.discriminant = Some(delta);
    }
    let text = match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "class: {class}").unwrap();
            if let Some(p) = &out.point {
                writeln!(s, "point: {p}").unwrap();
            }
            writeln!(s, "model: y^2 = x^3 + a2 x^2 + a4 x + a6").unwrap();
            writeln!(s, "a2 = {}", out.a2).unwrap();
            writeln!(s, "a4 = {}", out.a4).unwrap();
            writeln!(s, "a6 = {}", out.a6).unwrap();
            if let Some(d) = &out.discriminant {
                writeln!(s, "discriminant = {d}").unwrap();
                let shape: Vec<String> = out
                    .discriminant_factors
                    .iter()
                    .map(|f| format!("(deg {})^{}", f.degree, f.multiplicity))
                    .collect();
                writeln!(
                    s,
                    "discriminant shape: {} * {}",
                    out.discriminant_unit.as_deref().unwrap_or("1"),
                    shape.join(" * ")
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

#[derive(Serialize)]
struct PlaceEntry {
    place: String,
    kodaira: String,
    ord_f: u32,
    ord_g: u32,
    ord_delta: u32,
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: FibrationClass,
    point: String,
    places: Vec<PlaceEntry>,
    config: k3fib::weierstrass::FiberConfig,
}

pub fn classify(
    class: FibrationClass,
    args: &PointArgs,
    branch: Branch,
    format: Format,
) -> Result<Outcome, CliError> {
    let point = load_point(args)?;
    let model = model_at(class, &point, branch)?;
    let c = classify_fibration(&model)?;
    let out = ClassifyOutput {
        class,
        point: match &point {
            Point::Params(p) => p.to_string(),
            Point::Invariants(j) => j.to_string(),
        },
        places: c
            .places
            .iter()
            .map(|p| PlaceEntry {
                place: p.place.to_string(),
                kodaira: p.kodaira.to_string(),
                ord_f: p.local.ord_f,
                ord_g: p.local.ord_g,
                ord_delta: p.local.ord_delta,
            })
            .collect(),
        config: c.config,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("class: {class}\npoint: {}\n", out.point);
            for p in &out.places {
                writeln!(
                    s,
                    "  {:<24} {:<6} ord(f, g, disc) = ({}, {}, {})",
                    p.place, p.kodaira, p.ord_f, p.ord_g, p.ord_delta
                )
                .unwrap();
            }
            writeln!(s, "{}", out.config.text_row()).unwrap();
            s
        }
    };
    Ok(Outcome::pass(text))
}

pub fn table(seed: u64, format: Format) -> Result<Outcome, CliError> {
    let rows = reproduce_table(seed);
    let ok = rows.iter().all(|r| r.matches);
    let text = match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut s = String::new();
            let mut current = None;
            for r in &rows {
                if current != Some(r.class) {
                    writeln!(s, "({}) {}", r.class.table_letter(), r.class).unwrap();
                    current = Some(r.class);
                }
                let verdict = if r.matches { "ok" } else { "MISMATCH" };
                writeln!(
                    s,
                    "  {:<9} expected {}",
                    r.locus.label(),
                    r.expected.text_row()
                )
                .unwrap();
                match (&r.observed, &r.error) {
                    (Some(o), _) => {
                        writeln!(s, "  {:<9} observed {}  [{verdict}]", "", o.text_row()).unwrap()
                    }
                    (None, Some(e)) => writeln!(s, "  {:<9} error: {e}  [{verdict}]", "").unwrap(),
                    (None, None) => {}
                }
            }
            let matched = rows.iter().filter(|r| r.matches).count();
            writeln!(s, "{matched}/{} rows match", rows.len()).unwrap();
            s
        }
    };
    Ok(Outcome { text, ok })
}

pub fn verify(
    cfg: &SuiteConfig,
    filter: Option<&str>,
    format: Format,
) -> Result<Outcome, CliError> {
    let reports: Vec<_> = run_suite(cfg)
        .into_iter()
        .filter(|r| filter.is_none_or(|f| r.name.starts_with(f)))
        .collect();
    if reports.is_empty() {
        return Err(CliError::Input(format!(
            "no check matches {:?}",
            filter.unwrap_or("")
        )));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let text = match format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{}", r.text_line()).unwrap();
                if !r.passed() {
                    writeln!(s, "    {}", r.detail).unwrap();
                }
                for w in &r.witnesses {
                    writeln!(s, "    at {w}").unwrap();
                }
            }
            writeln!(s, "{} passed, {failed} failed", reports.len() - failed).unwrap();
            s
        }
    };
    Ok(Outcome {
        text,
        ok: failed == 0,
    })
}

#[derive(Serialize)]
struct InvariantsOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<ParamPoint>,
    invariants: InvariantPoint,
    label: k3fib::moduli::WpLabel,
}

pub fn invariants(args: &PointArgs, format: Format) -> Result<Outcome, CliError> {
    let point = load_point(args)?;
    let j = point.invariants()?;
    let out = InvariantsOutput {
        params: match point {
            Point::Params(p) => Some(p),
            Point::Invariants(_) => None,
        },
        label: wp_normalize(&j)?,
        invariants: j,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = String::new();
            if let Some(p) = &out.params {
                writeln!(s, "params: {p}").unwrap();
            }
            writeln!(s, "invariants: {}", out.invariants).unwrap();
            for r in &out.label.ratios {
                writeln!(s, "  {} / {} = {}", r.num, r.den, r.value).unwrap();
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

fn render_branch(r: &BranchReport) -> String {
    let mut s = format!("{} ({}): {}\n", r.branch, r.class, r.gauge);
    if let Some(c) = &r.computed {
        writeln!(s, "  computed from fibers: {c}").unwrap();
    }
    if let Some(cfg) = &r.config {
        writeln!(s, "  fibers: {}", cfg.text_row()).unwrap();
    }
    for e in &r.enhancements {
        writeln!(s, "  on {}: {}", e.locus.label(), e.algebra).unwrap();
    }
    writeln!(s, "  consistent: {}  flux: {}", r.consistent, r.flux).unwrap();
    if let Some(g) = r.global_form {
        writeln!(s, "  global form: {g}").unwrap();
    }
    for n in &r.notes {
        writeln!(s, "  note: {n}").unwrap();
    }
    s
}

pub fn heterotic(
    args: &PointArgs,
    class: Option<FibrationClass>,
    format: Format,
) -> Result<Outcome, CliError> {
    let j = load_point(args)?.invariants()?;
    let classes = class.map_or(FibrationClass::ALL.to_vec(), |c| vec![c]);
    let reports = classes
        .into_iter()
        .map(|c| classify_branch(c, &j))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.consistent);
    let text = match format {
        Format::Json => json(&reports),
        Format::Text => format!(
            "point: {j}\n{}",
            reports.iter().map(render_branch).collect::<String>()
        ),
    };
    Ok(Outcome { text, ok })
}
