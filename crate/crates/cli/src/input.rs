//! JSON input documents.

use toric_nash::BigInt;
use serde_json::{Map, Number, Value};

use toric_nash::{
    validate_complex, validate_fan, Cone, Fan, Gluing, IntMatrix, LatticeVector, MonomialIdeal,
    STVComplex, YFaceSet,
};

use crate::CliError;

/// Per-document defaults for the command options.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DocumentOptions {
    pub samples: Option<usize>,
    pub buffer: Option<u64>,
    pub level_cap: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Cone(Cone),
    Fan(Fan),
    Pair(YFaceSet),
    IdealQuery { ideal: MonomialIdeal, n: u64 },
    Stv(STVComplex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub dim: usize,
    pub payload: Payload,
    pub options: DocumentOptions,
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Cone(_) => "cone",
            Payload::Fan(_) => "fan",
            Payload::Pair(_) => "pair",
            Payload::IdealQuery { .. } => "ideal-query",
            Payload::Stv(_) => "stv",
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| invalid(format!("{what} must be an object")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    m.get(key).ok_or_else(|| invalid(format!("missing key `{key}`")))
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}

fn integer(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| invalid(format!("{n} is not an integer"))),
        _ => Err(invalid(format!("expected an integer, found {v}"))),
    }
}

fn unsigned(v: &Value, what: &str) -> Result<u64, CliError> {
    let n = integer(v)?;
    u64::try_from(n).map_err(|_| invalid(format!("{what} must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| invalid(format!("{what} must be an array")))
}

fn vector(v: &Value, dim: usize) -> Result<LatticeVector, CliError> {
    let coords = array(v, "a vector")?
        .iter()
        .map(integer)
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(invalid(format!("vector of length {} in a document of dimension {dim}", coords.len())));
    }
    Ok(LatticeVector::new(coords))
}

fn vectors(v: &Value, dim: usize) -> Result<Vec<LatticeVector>, CliError> {
    array(v, "a vector list")?.iter().map(|x| vector(x, dim)).collect()
}

fn indices(v: &Value) -> Result<Vec<usize>, CliError> {
    array(v, "an index list")?
        .iter()
        .map(|x| unsigned(x, "a ray index").map(|i| i as usize))
        .collect()
}

/// A cone whose listed rays are exactly its primitive extreme rays, together
/// with the map from listed positions to canonical positions.
fn exact_cone(v: &Value, dim: usize) -> Result<(Cone, Vec<usize>), CliError> {
    let rays = vectors(v, dim)?;
    for r in &rays {
        if r.is_zero() {
            return Err(invalid("zero ray"));
        }
        if !r.is_primitive() {
            return Err(invalid(format!("ray {r} is not primitive")));
        }
    }
    let cone = Cone::new(dim, rays.clone()).map_err(CliError::Domain)?;
    if !cone.is_pointed() {
        return Err(invalid("cone is not pointed"));
    }
    let mut sorted = rays.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != rays.len() || sorted != cone.rays() {
        return Err(invalid("rays must be the distinct extreme rays of the cone"));
    }
    let positions = rays
        .iter()
        .map(|r| cone.rays().binary_search(r).expect("ray is extreme"))
        .collect();
    Ok((cone, positions))
}

fn remap(set: &[usize], positions: &[usize]) -> Result<Vec<usize>, CliError> {
    let mut out = set
        .iter()
        .map(|&i| positions.get(i).copied().ok_or_else(|| invalid(format!("ray index {i} out of range"))))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_y(cone: &Cone, positions: &[usize], v: &Value, dim: usize) -> Result<YFaceSet, CliError> {
    if v.as_str() == Some("sing") {
        return toric_nash::y_face_closure(cone, &[]).map_err(CliError::Domain);
    }
    let m = object(v, "`y`")?;
    check_keys(m, &["faces", "ideal"])?;
    match (m.get("faces"), m.get("ideal")) {
        (Some(f), None) => {
            let sets = array(f, "`y.faces`")?
                .iter()
                .map(|s| remap(&indices(s)?, positions))
                .collect::<Result<Vec<_>, _>>()?;
            YFaceSet::from_index_sets(cone, &sets).map_err(CliError::Domain)
        }
        (None, Some(i)) => {
            let ideal = MonomialIdeal::new(cone.clone(), vectors(i, dim)?).map_err(CliError::Domain)?;
            YFaceSet::from_ideal(&ideal).map_err(CliError::Domain)
        }
        _ => Err(invalid("`y` must be \"sing\", {\"faces\": ...} or {\"ideal\": ...}")),
    }
}

fn parse_options(v: Option<&Value>) -> Result<DocumentOptions, CliError> {
    let Some(v) = v else { return Ok(DocumentOptions::default()) };
    let m = object(v, "`options`")?;
    check_keys(m, &["samples", "buffer", "level_cap", "seed"])?;
    let get = |k: &str| m.get(k).map(|x| unsigned(x, k)).transpose();
    Ok(DocumentOptions {
        samples: get("samples")?.map(|s| s as usize),
        buffer: get("buffer")?,
        level_cap: get("level_cap")?,
        seed: get("seed")?,
    })
}

/// Parses and validates a document. Syntax errors carry line and column.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_value(&value)
}

pub fn parse_value(value: &Value) -> Result<InputDocument, CliError> {
    let m = object(value, "the document")?;
    let kind = field(m, "kind")?
        .as_str()
        .ok_or_else(|| invalid("`kind` must be a string"))?;
    let dim = unsigned(field(m, "dim")?, "dim")? as usize;
    if dim == 0 || dim > 6 {
        return Err(invalid("`dim` must be between 1 and 6"));
    }
    let options = parse_options(m.get("options"))?;
    let payload = match kind {
        "cone" => {
            check_keys(m, &["kind", "dim", "rays", "options"])?;
            Payload::Cone(exact_cone(field(m, "rays")?, dim)?.0)
        }
        "fan" => {
            check_keys(m, &["kind", "dim", "cones", "options"])?;
            let cones = array(field(m, "cones")?, "`cones`")?
                .iter()
                .map(|c| exact_cone(c, dim).map(|x| x.0))
                .collect::<Result<Vec<_>, _>>()?;
            let fan = Fan::new(dim, cones).map_err(CliError::Domain)?;
            let report = validate_fan(&fan);
            if !report.valid {
                return Err(invalid(format!("not a fan: {}", report.diagnostics.join("; "))));
            }
            Payload::Fan(fan)
        }
        "pair" => {
            check_keys(m, &["kind", "dim", "rays", "y", "options"])?;
            let (cone, positions) = exact_cone(field(m, "rays")?, dim)?;
            Payload::Pair(parse_y(&cone, &positions, field(m, "y")?, dim)?)
        }
        "ideal-query" => {
            check_keys(m, &["kind", "dim", "rays", "ideal", "n", "options"])?;
            let (cone, _) = exact_cone(field(m, "rays")?, dim)?;
            let ideal = MonomialIdeal::new(cone, vectors(field(m, "ideal")?, dim)?).map_err(CliError::Domain)?;
            let n = unsigned(field(m, "n")?, "n")?;
            if n == 0 {
                return Err(CliError::Domain(toric_nash::Error::InvalidOrder));
            }
            Payload::IdealQuery { ideal, n }
        }
        "stv" => {
            check_keys(m, &["kind", "dim", "components", "gluings", "options"])?;
            let mut components = Vec::new();
            let mut positions = Vec::new();
            for c in array(field(m, "components")?, "`components`")? {
                let (cone, pos) = exact_cone(c, dim)?;
                components.push(cone);
                positions.push(pos);
            }
            let mut gluings = Vec::new();
            let empty = Value::Array(Vec::new());
            for g in array(m.get("gluings").unwrap_or(&empty), "`gluings`")? {
                let gm = object(g, "a gluing")?;
                check_keys(gm, &["i", "j", "face_i", "face_j", "map"])?;
                let i = unsigned(field(gm, "i")?, "i")? as usize;
                let j = unsigned(field(gm, "j")?, "j")? as usize;
                if i >= components.len() || j >= components.len() {
                    return Err(invalid("gluing component index out of range"));
                }
                let face_i = remap(&indices(field(gm, "face_i")?)?, &positions[i])?;
                let face_j = remap(&indices(field(gm, "face_j")?)?, &positions[j])?;
                let map = match gm.get("map") {
                    None => IntMatrix::identity(dim),
                    Some(rows) => {
                        let rows = vectors(rows, dim)?;
                        if rows.len() != dim {
                            return Err(invalid("gluing map must be square"));
                        }
                        IntMatrix::from_vectors(&rows, dim)
                    }
                };
                gluings.push(Gluing { i, j, face_i, face_j, map });
            }
            let complex = STVComplex::new(dim, components, gluings);
            let report = validate_complex(&complex);
            if !report.valid {
                return Err(invalid(format!("invalid complex: {}", report.diagnostics.join("; "))));
            }
            Payload::Stv(complex)
        }
        other => return Err(invalid(format!("unknown kind `{other}`"))),
    };
    Ok(InputDocument { dim, payload, options })
}

pub fn int_value(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub fn vector_value(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int_value).collect())
}

pub fn vectors_value(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(vector_value).collect())
}

fn indices_value(ix: &[usize]) -> Value {
    Value::Array(ix.iter().map(|&i| Value::from(i)).collect())
}

/// Canonical JSON form of a document; parses back to an equal document.
pub fn to_json(doc: &InputDocument) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(doc.kind()));
    m.insert("dim".into(), Value::from(doc.dim));
    match &doc.payload {
        Payload::Cone(c) => {
            m.insert("rays".into(), vectors_value(c.rays()));
        }
        Payload::Fan(f) => {
            let cones = f.maximal_cones().iter().map(|c| vectors_value(c.rays())).collect();
            m.insert("cones".into(), Value::Array(cones));
        }
        Payload::Pair(y) => {
            m.insert("rays".into(), vectors_value(y.sigma().rays()));
            let faces = y.faces().iter().map(|f| indices_value(&f.indices)).collect();
            let mut ym = Map::new();
            ym.insert("faces".into(), Value::Array(faces));
            m.insert("y".into(), Value::Object(ym));
        }
        Payload::IdealQuery { ideal, n } => {
            m.insert("rays".into(), vectors_value(ideal.sigma().rays()));
            m.insert("ideal".into(), vectors_value(ideal.generators()));
            m.insert("n".into(), Value::from(*n));
        }
        Payload::Stv(c) => {
            let comps = c.components.iter().map(|s| vectors_value(s.rays())).collect();
            m.insert("components".into(), Value::Array(comps));
            let gluings = c
                .gluings
                .iter()
                .map(|g| {
                    let mut gm = Map::new();
                    gm.insert("i".into(), Value::from(g.i));
                    gm.insert("j".into(), Value::from(g.j));
                    gm.insert("face_i".into(), indices_value(&g.face_i));
                    gm.insert("face_j".into(), indices_value(&g.face_j));
                    gm.insert("map".into(), vectors_value(&g.map.row_vectors()));
                    Value::Object(gm)
                })
                .collect();
            m.insert("gluings".into(), Value::Array(gluings));
        }
    }
    let o = &doc.options;
    if *o != DocumentOptions::default() {
        let mut om = Map::new();
        for (k, v) in [("samples", o.samples.map(|s| s as u64)), ("buffer", o.buffer), ("level_cap", o.level_cap), ("seed", o.seed)] {
            if let Some(v) = v {
                om.insert(k.into(), Value::from(v));
            }
        }
        m.insert("options".into(), Value::Object(om));
    }
    Value::Object(m)
}
