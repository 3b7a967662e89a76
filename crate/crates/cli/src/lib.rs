//! Command dispatch and reports for the `toric-nash` binary.

pub mod input;
pub mod report;

use std::collections::BTreeSet;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use toric_nash::oracle::{oracle_contact, oracle_w};
use toric_nash::{
    certify_essential_from, compute_w, contact_components, faces_to_ideal, make_y_resolution_seeded,
    resolve_smooth, stv_nash_report, CertificationFailure, Cone, EnumerationOptions, Fan,
    NashPairReport, WitnessReason, YFaceSet,
};

pub use input::{parse_input, to_json, InputDocument, Payload};
pub use report::{emit_report, Format, ReportDocument};

use input::{int_value, vector_value, vectors_value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Domain(toric_nash::Error),
    #[error("oracle discrepancy: {0}")]
    OracleMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 1 parse/validation, 2 budget exceeded, 3 certification failure, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::OracleMismatch(_) => 4,
            CliError::Domain(e) => domain_exit_code(e),
        }
    }
}

fn domain_exit_code(e: &toric_nash::Error) -> i32 {
    use toric_nash::Error as E;
    match e {
        E::BudgetExceeded { .. } => 2,
        E::ConstructionFailed { .. } | E::ForbiddenBlocksResolution(_) => 3,
        E::Internal(_) => 4,
        E::Component { source, .. } => domain_exit_code(source),
        _ => 1,
    }
}

impl From<toric_nash::Error> for CliError {
    fn from(e: toric_nash::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Hilbert,
    Resolve,
    Nash,
    Contact,
    StvNash,
    Certify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Hilbert => "hilbert",
            Command::Resolve => "resolve",
            Command::Nash => "nash",
            Command::Contact => "contact",
            Command::StvNash => "stv-nash",
            Command::Certify => "certify",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Command::Info,
            Command::Hilbert,
            Command::Resolve,
            Command::Nash,
            Command::Contact,
            Command::StvNash,
            Command::Certify,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

/// Command-line overrides; unset fields fall back to the document options.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub samples: Option<usize>,
    pub buffer: Option<u64>,
    pub level_cap: Option<u64>,
    pub seed: Option<u64>,
    pub oracle: bool,
}

struct Effective {
    samples: usize,
    seed: u64,
    enumeration: EnumerationOptions,
    oracle: bool,
}

fn effective(doc: &InputDocument, opts: &RunOptions) -> Effective {
    let d = &doc.options;
    let defaults = EnumerationOptions::default();
    Effective {
        samples: opts.samples.or(d.samples).unwrap_or(3).max(1),
        seed: opts.seed.or(d.seed).unwrap_or(0),
        enumeration: EnumerationOptions {
            buffer: opts.buffer.or(d.buffer),
            level_cap: opts.level_cap.or(d.level_cap).unwrap_or(defaults.level_cap),
        },
        oracle: opts.oracle,
    }
}

fn wrong_kind(command: Command, doc: &InputDocument) -> CliError {
    CliError::Validation(format!("command `{}` does not accept a `{}` document", command.name(), doc.kind()))
}

fn obj(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn opt_u64(v: Option<u64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn cone_info(c: &Cone) -> Result<Value, CliError> {
    let simplicial = c.is_simplicial();
    let multiplicity = if simplicial { int_value(&c.multiplicity()?) } else { Value::Null };
    Ok(obj(vec![
        ("rays", vectors_value(c.rays())),
        ("facet_normals", vectors_value(c.facet_normals())),
        ("dim", Value::from(c.dim())),
        ("simplicial", Value::from(simplicial)),
        ("smooth", Value::from(c.is_smooth()?)),
        ("multiplicity", multiplicity),
        ("faces", Value::from(c.enumerate_faces()?.len())),
        ("hilbert_basis", vectors_value(&c.hilbert_basis()?)),
        ("positive_functional", vector_value(&c.positive_functional()?)),
    ]))
}

fn fan_value(f: &Fan) -> Value {
    obj(vec![
        ("rays", vectors_value(&f.rays())),
        (
            "maximal_cones",
            Value::Array(f.maximal_cones().iter().map(|c| vectors_value(c.rays())).collect()),
        ),
    ])
}

fn y_faces_value(y: &YFaceSet) -> Value {
    Value::Array(
        y.faces()
            .iter()
            .map(|f| Value::Array(f.indices.iter().map(|&i| Value::from(i)).collect()))
            .collect(),
    )
}

fn failure_value(f: &CertificationFailure<toric_nash::BigInt>) -> Value {
    match f {
        CertificationFailure::Missing { point, sample } => obj(vec![
            ("kind", Value::from("missing")),
            ("ray", vector_value(point)),
            ("sample", Value::from(*sample)),
        ]),
        CertificationFailure::NotAvoided { ray, reason } => obj(vec![
            ("kind", Value::from("not-avoided")),
            ("ray", vector_value(ray)),
            ("reason", Value::from(reason.as_str())),
        ]),
    }
}

fn pair_report_value(y: &YFaceSet, r: &NashPairReport<toric_nash::BigInt>, detailed: bool) -> Result<Value, CliError> {
    let mut entries = vec![
        ("W", vectors_value(&r.w)),
        ("y_faces", y_faces_value(y)),
        ("ideal", vectors_value(faces_to_ideal(y)?.generators())),
        ("levels_scanned", Value::from(r.levels_scanned)),
        ("completeness_bound", opt_u64(r.completeness_bound)),
        ("samples", Value::from(r.samples.len())),
        ("avoided", Value::from(r.avoided.len())),
        ("failures", Value::Array(r.failures.iter().map(failure_value).collect())),
        ("bijective", Value::from(r.bijective)),
    ];
    if detailed {
        let certificates = r
            .certificates
            .iter()
            .map(|c| {
                let witnesses = c
                    .minimality_witnesses
                    .iter()
                    .map(|w| {
                        let reason = match &w.reason {
                            WitnessReason::OutsideCone => Value::from("outside cone"),
                            WitnessReason::FaceNotInY(ix) => {
                                Value::Array(ix.iter().map(|&i| Value::from(i)).collect())
                            }
                        };
                        obj(vec![
                            ("generator", vector_value(&w.generator)),
                            ("difference", vector_value(&w.difference)),
                            ("face_not_in_y", reason),
                        ])
                    })
                    .collect();
                obj(vec![
                    ("point", vector_value(&c.point)),
                    ("present_in", Value::Array(c.sample_resolutions.iter().map(|&i| Value::from(i)).collect())),
                    ("witnesses", Value::Array(witnesses)),
                ])
            })
            .collect();
        let samples = r
            .samples
            .iter()
            .map(|s| obj(vec![("seed", Value::from(s.seed)), ("rays", vectors_value(&s.subdivision.rays()))]))
            .collect();
        let avoided = r
            .avoided
            .iter()
            .map(|(ray, sub)| obj(vec![("ray", vector_value(ray)), ("rays", vectors_value(&sub.rays()))]))
            .collect();
        entries.push(("certificates", Value::Array(certificates)));
        entries.push(("sample_resolutions", Value::Array(samples)));
        entries.push(("avoidance_resolutions", Value::Array(avoided)));
    }
    Ok(obj(entries))
}

fn sorted(mut v: Vec<toric_nash::LatticeVector>) -> Vec<toric_nash::LatticeVector> {
    v.sort();
    v
}

/// Runs one command on a parsed document.
pub fn run_command(doc: &InputDocument, command: Command, opts: &RunOptions) -> Result<ReportDocument, CliError> {
    let eff = effective(doc, opts);
    let mut certification_failed = false;
    let results = match (command, &doc.payload) {
        (Command::Info, Payload::Cone(c)) => cone_info(c)?,
        (Command::Info, Payload::Pair(y)) => obj(vec![("cone", cone_info(y.sigma())?), ("y_faces", y_faces_value(y))]),
        (Command::Info, Payload::IdealQuery { ideal, n }) => obj(vec![
            ("cone", cone_info(ideal.sigma())?),
            ("ideal", vectors_value(ideal.generators())),
            ("n", Value::from(*n)),
        ]),
        (Command::Info, Payload::Fan(f)) => {
            let mut v = fan_value(f);
            v.as_object_mut().unwrap().insert("smooth".into(), Value::from(f.is_smooth()));
            v.as_object_mut().unwrap().insert("simplicial".into(), Value::from(f.is_simplicial()));
            v
        }
        (Command::Info, Payload::Stv(c)) => obj(vec![
            (
                "components",
                Value::Array(c.components.iter().map(cone_info).collect::<Result<Vec<_>, _>>()?),
            ),
            ("gluings", Value::from(c.gluings.len())),
            ("equidimensional", Value::from(toric_nash::is_equidimensional(c))),
        ]),
        (Command::Hilbert, Payload::Cone(c)) => obj(vec![("hilbert_basis", vectors_value(&c.hilbert_basis()?))]),
        (Command::Hilbert, Payload::Pair(y)) => {
            obj(vec![("hilbert_basis", vectors_value(&y.sigma().hilbert_basis()?))])
        }
        (Command::Hilbert, Payload::IdealQuery { ideal, .. }) => {
            obj(vec![("hilbert_basis", vectors_value(&ideal.sigma().hilbert_basis()?))])
        }
        (Command::Resolve, Payload::Cone(c)) => {
            let sub = resolve_smooth(&Fan::from_cone(c.clone()), &BTreeSet::new())?;
            obj(vec![("fan", fan_value(&sub.refined)), ("added_rays", vectors_value(&sub.added_rays))])
        }
        (Command::Resolve, Payload::Fan(f)) => {
            let sub = resolve_smooth(f, &BTreeSet::new())?;
            obj(vec![("fan", fan_value(&sub.refined)), ("added_rays", vectors_value(&sub.added_rays))])
        }
        (Command::Resolve, Payload::Pair(y)) => {
            let sub = make_y_resolution_seeded(y, &BTreeSet::new(), eff.seed)?;
            obj(vec![("fan", fan_value(&sub.refined)), ("added_rays", vectors_value(&sub.added_rays))])
        }
        (Command::Nash | Command::Certify, Payload::Pair(y)) => {
            let r = certify_essential_from(y, eff.samples, eff.seed, eff.enumeration)?;
            certification_failed = !r.bijective;
            let mut v = pair_report_value(y, &r, command == Command::Certify)?;
            if eff.oracle {
                let cap = r.levels_scanned;
                let expected = sorted(oracle_w(y, cap)?);
                if expected != r.w {
                    return Err(CliError::OracleMismatch(format!(
                        "W = {} but the box oracle up to level {cap} gives {}",
                        vectors_value(&r.w),
                        vectors_value(&expected)
                    )));
                }
                v.as_object_mut()
                    .unwrap()
                    .insert("oracle".into(), obj(vec![("cap", Value::from(cap)), ("agrees", Value::from(true))]));
            }
            v
        }
        (Command::Contact, Payload::IdealQuery { ideal, n }) => {
            let out = contact_components(ideal, *n, eff.enumeration)?;
            let mut v = obj(vec![
                ("n", Value::from(*n)),
                ("components", vectors_value(&out.points)),
                ("levels_scanned", Value::from(out.levels_scanned)),
                ("completeness_bound", opt_u64(out.completeness_bound)),
            ]);
            if eff.oracle {
                let cap = out.levels_scanned;
                let expected = sorted(oracle_contact(ideal, *n, cap)?);
                if expected != out.points {
                    return Err(CliError::OracleMismatch(format!(
                        "components {} but the box oracle up to level {cap} gives {}",
                        vectors_value(&out.points),
                        vectors_value(&expected)
                    )));
                }
                v.as_object_mut()
                    .unwrap()
                    .insert("oracle".into(), obj(vec![("cap", Value::from(cap)), ("agrees", Value::from(true))]));
            }
            v
        }
        (Command::Nash, Payload::Cone(c)) => {
            let y = toric_nash::y_face_closure(c, &[])?;
            let out = compute_w(&y, eff.enumeration)?;
            obj(vec![("W", vectors_value(&out.points)), ("y_faces", y_faces_value(&y))])
        }
        (Command::StvNash | Command::Certify, Payload::Stv(c)) => {
            let r = stv_nash_report(c, eff.samples, eff.enumeration)?;
            certification_failed = !r.bijective;
            let comps = r
                .components
                .iter()
                .map(|cr| {
                    let mut entries = vec![
                        ("index", Value::from(cr.index)),
                        ("dim", Value::from(cr.dim)),
                        ("nash_trivial", Value::from(cr.report.is_none())),
                        ("good_components", Value::from(cr.good_components())),
                        ("essential_divisors", Value::from(cr.essential_divisors())),
                    ];
                    if let Some(pr) = &cr.report {
                        entries.push(("W", vectors_value(&pr.w)));
                        entries.push(("bijective", Value::from(pr.bijective)));
                        entries.push(("failures", Value::Array(pr.failures.iter().map(failure_value).collect())));
                    }
                    obj(entries)
                })
                .collect();
            obj(vec![
                ("components", Value::Array(comps)),
                (
                    "totals",
                    obj(vec![
                        ("good_components", Value::from(r.good_components)),
                        ("essential_divisors", Value::from(r.essential_divisors)),
                    ]),
                ),
                ("equidimensional", Value::from(r.equidimensional)),
                ("bijective", Value::from(r.bijective)),
            ])
        }
        _ => return Err(wrong_kind(command, doc)),
    };
    let canonical = serde_json::to_string(&to_json(doc)).expect("serializable");
    let hash = hex::encode(Sha256::digest(canonical.as_bytes()));
    Ok(ReportDocument {
        command: command.name().to_string(),
        kind: doc.kind().to_string(),
        input_sha256: hash,
        version: VERSION.to_string(),
        seed: eff.seed,
        samples: eff.samples,
        results,
        certification_failed,
    })
}

/// Parses `text`, runs `command` and renders the report. Returns the output
/// text and the process exit code.
pub fn run_text(text: &str, command: Command, opts: &RunOptions, format: Format) -> (String, i32) {
    match parse_input(text).and_then(|doc| run_command(&doc, command, opts)) {
        Ok(report) => {
            let code = if report.certification_failed { 3 } else { 0 };
            (emit_report(&report, format), code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}
