//! JSON documents with a `"kind"` discriminator: Hopf presentations, module
//! algebras, K-class representatives, Fredholm modules and subgroup data.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::actions::{ModuleAlgebra, RightModule};
use crate::error::{EngineError, Result};
use crate::homogeneous::SubgroupDatum;
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::index::{EquivariantFredholmModule, FiniteCoaction};
use crate::ktheory::{check_idempotent, check_invertible, InvariantIdempotent, InvariantInvertible};
use crate::linalg::{self, parse_rational, Mat, NumberField, Scalar, SparseVec};

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Document {
    Hopf(HopfPresentation),
    ModuleAlgebra { h: HopfPresentation, b: ModuleAlgebra },
    Idempotent { h: HopfPresentation, b: ModuleAlgebra, p: InvariantIdempotent },
    Invertible { h: HopfPresentation, b: ModuleAlgebra, u: InvariantInvertible },
    Fredholm(EquivariantFredholmModule),
    Subgroup(SubgroupDatum),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hopf(_) => "hopf",
            Document::ModuleAlgebra { .. } => "module-algebra",
            Document::Idempotent { .. } => "idempotent",
            Document::Invertible { .. } => "invertible",
            Document::Fredholm(_) => "fredholm",
            Document::Subgroup(_) => "subgroup",
        }
    }
}

fn schema(path: &str, msg: impl std::fmt::Display) -> EngineError {
    EngineError::Schema(format!("field `{path}`: {msg}"))
}

struct Reader {
    field: Option<Arc<NumberField>>,
}

impl Reader {
    fn get<'a>(&self, obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
        obj.get(key).ok_or_else(|| schema(&join(path, key), "missing"))
    }

    fn usize(&self, v: &Value, path: &str) -> Result<usize> {
        v.as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| schema(path, "expected a non-negative integer"))
    }

    fn scalar(&self, v: &Value, path: &str) -> Result<Scalar> {
        let rat = |s: &str| parse_rational(s).map_err(|e| schema(path, e));
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Scalar::from_int)
                .ok_or_else(|| schema(path, "expected an integer or a \"num/den\" string")),
            Value::String(s) => Ok(Scalar::from_rational(rat(s)?)),
            Value::Array(parts) => {
                let coords = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| match p {
                        Value::String(s) => rat(s),
                        Value::Number(n) => n
                            .as_i64()
                            .map(|x| num_rational::BigRational::from_integer(x.into()))
                            .ok_or_else(|| schema(&format!("{path}[{i}]"), "expected an integer")),
                        _ => Err(schema(&format!("{path}[{i}]"), "expected a string")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                match (coords.len(), &self.field) {
                    (1, _) => Ok(Scalar::from_rational(coords[0].clone())),
                    (d, Some(f)) if d == f.degree() => Ok(Scalar::from_coords(f, coords)),
                    (d, _) => Err(schema(path, format!("{d} coordinates do not match the field"))),
                }
            }
            _ => Err(schema(path, "expected a scalar")),
        }
    }

    fn vector(&self, v: &Value, len: usize, path: &str) -> Result<SparseVec> {
        let arr = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
        if arr.len() != len {
            return Err(schema(path, format!("expected {len} entries, got {}", arr.len())));
        }
        let vals = arr
            .iter()
            .enumerate()
            .map(|(i, x)| self.scalar(x, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_dense(&vals))
    }

    fn matrix(&self, v: &Value, rows: usize, cols: usize, path: &str) -> Result<Mat> {
        let arr = v.as_array().ok_or_else(|| schema(path, "expected an array of rows"))?;
        if arr.len() != rows {
            return Err(schema(path, format!("expected {rows} rows, got {}", arr.len())));
        }
        let rows = arr
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(r, cols, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_rows(rows, cols))
    }

    fn matrices(&self, v: &Value, count: usize, n: usize, path: &str) -> Result<Vec<Mat>> {
        let arr = v.as_array().ok_or_else(|| schema(path, "expected an array of matrices"))?;
        if arr.len() != count {
            return Err(schema(path, format!("expected {count} matrices, got {}", arr.len())));
        }
        arr.iter()
            .enumerate()
            .map(|(i, m)| self.matrix(m, n, n, &format!("{path}[{i}]")))
            .collect()
    }

    fn algebra(&self, v: &Value, path: &str) -> Result<AlgebraPresentation> {
        let d = self.usize(self.get(v, "dim", path)?, &join(path, "dim"))?;
        let mult = self.matrix(self.get(v, "mult", path)?, d * d, d, &join(path, "mult"))?;
        let unit = self.vector(self.get(v, "unit", path)?, d, &join(path, "unit"))?;
        AlgebraPresentation::new(d, mult, unit)
    }

    fn hopf(&self, v: &Value, path: &str) -> Result<HopfPresentation> {
        let alg = self.algebra(v, path)?;
        let d = alg.dim;
        let comult = self.matrix(self.get(v, "comult", path)?, d, d * d, &join(path, "comult"))?;
        let counit = self.vector(self.get(v, "counit", path)?, d, &join(path, "counit"))?;
        let antipode = self.matrix(self.get(v, "antipode", path)?, d, d, &join(path, "antipode"))?;
        let antipode_inv = match v.get("antipode_inv") {
            Some(m) => Some(self.matrix(m, d, d, &join(path, "antipode_inv"))?),
            None => None,
        };
        HopfPresentation::new(alg, comult, counit, antipode, antipode_inv)
    }

    fn module(&self, v: &Value, dim: usize, hdim: usize, path: &str) -> Result<RightModule> {
        let act = self.matrix(v, dim * hdim, dim, path)?;
        Ok(RightModule { dim, hdim, act })
    }

    fn module_algebra(&self, v: &Value) -> Result<(HopfPresentation, ModuleAlgebra)> {
        let h = self.hopf(self.get(v, "hopf", "")?, "hopf")?;
        let alg = self.algebra(self.get(v, "algebra", "")?, "algebra")?;
        let module = self.module(self.get(v, "action", "")?, alg.dim, h.dim(), "action")?;
        Ok((h, ModuleAlgebra { alg, module }))
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Parses a document; syntax errors carry line and column, schema errors
/// the offending field.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| EngineError::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    from_value(&v)
}

pub fn from_value(v: &Value) -> Result<Document> {
    let field = match v.get("field") {
        None => None,
        Some(f) => {
            let mp = f
                .get("minpoly")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("field.minpoly", "expected an array"))?;
            let coeffs = mp
                .iter()
                .enumerate()
                .map(|(i, c)| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => n
                        .as_i64()
                        .map(|x| num_rational::BigRational::from_integer(x.into()))
                        .ok_or_else(|| schema(&format!("field.minpoly[{i}]"), "expected an integer")),
                    _ => Err(schema(&format!("field.minpoly[{i}]"), "expected a string")),
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Arc::new(NumberField::new(coeffs)?))
        }
    };
    let r = Reader { field };
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("kind", "missing or not a string"))?;
    match kind {
        "hopf" => Ok(Document::Hopf(r.hopf(v, "")?)),
        "module-algebra" => {
            let (h, b) = r.module_algebra(v)?;
            Ok(Document::ModuleAlgebra { h, b })
        }
        "idempotent" | "invertible" => {
            let (h, b) = r.module_algebra(v)?;
            let xdim = r.usize(r.get(v, "module_dim", "")?, "module_dim")?;
            let x = r.module(r.get(v, "module", "")?, xdim, h.dim(), "module")?;
            let len = xdim * xdim * b.dim();
            let e = r.vector(r.get(v, "element", "")?, len, "element")?;
            if kind == "idempotent" {
                let p = check_idempotent(&x, &b, &h, &e)?;
                Ok(Document::Idempotent { h, b, p })
            } else {
                let u = check_invertible(&x, &b, &h, &e)?;
                Ok(Document::Invertible { h, b, u })
            }
        }
        "fredholm" => {
            let a = r.hopf(r.get(v, "A", "")?, "A")?;
            let b = r.algebra(r.get(v, "B", "")?, "B")?;
            let (da, db) = (a.dim(), b.dim);
            let alpha = r.matrix(r.get(v, "alpha", "")?, db, da * db, "alpha")?;
            let minus = r.usize(r.get(v, "minus", "")?, "minus")?;
            let plus = r.usize(r.get(v, "plus", "")?, "plus")?;
            let n = minus + plus;
            let pi = match v.get("pi") {
                Some(p) => r.matrices(p, db, n, "pi")?,
                None => {
                    let pm = r.matrices(r.get(v, "pi_minus", "")?, db, minus, "pi_minus")?;
                    let pp = r.matrices(r.get(v, "pi_plus", "")?, db, plus, "pi_plus")?;
                    pm.iter().zip(&pp).map(|(m, p)| m.direct_sum(p)).collect()
                }
            };
            let f = r.matrix(r.get(v, "F", "")?, n, n, "F")?;
            let u = r.matrices(r.get(v, "U", "")?, da, n, "U")?;
            let star = v.get("star").and_then(Value::as_bool).unwrap_or(false);
            Ok(Document::Fredholm(EquivariantFredholmModule {
                coaction: FiniteCoaction { a, b, alpha },
                minus,
                plus,
                pi,
                f,
                u,
                star,
            }))
        }
        "subgroup" => {
            let a = r.hopf(r.get(v, "A", "")?, "A")?;
            let a0 = r.hopf(r.get(v, "A0", "")?, "A0")?;
            let p = r.matrix(r.get(v, "P", "")?, a.dim(), a0.dim(), "P")?;
            Ok(Document::Subgroup(SubgroupDatum { a, a0, p }))
        }
        other => Err(schema("kind", format!("unknown kind `{other}`"))),
    }
}

fn vec_json(v: &SparseVec, len: usize) -> Value {
    linalg::vec_to_json(v, len)
}

fn algebra_fields(alg: &AlgebraPresentation, out: &mut Map<String, Value>) {
    out.insert("dim".into(), json!(alg.dim));
    out.insert("mult".into(), alg.mult.to_json());
    out.insert("unit".into(), vec_json(&alg.unit, alg.dim));
}

pub fn algebra_json(alg: &AlgebraPresentation) -> Value {
    let mut m = Map::new();
    algebra_fields(alg, &mut m);
    Value::Object(m)
}

pub fn hopf_json(h: &HopfPresentation) -> Value {
    let mut m = Map::new();
    algebra_fields(&h.alg, &mut m);
    m.insert("comult".into(), h.comult.to_json());
    m.insert("counit".into(), vec_json(&h.counit, h.dim()));
    m.insert("antipode".into(), h.antipode.to_json());
    m.insert("antipode_inv".into(), h.antipode_inv.to_json());
    Value::Object(m)
}

fn with_kind(kind: &str, mut body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.append(&mut body);
    Value::Object(m)
}

fn module_algebra_fields(h: &HopfPresentation, b: &ModuleAlgebra) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("hopf".into(), hopf_json(h));
    m.insert("algebra".into(), algebra_json(&b.alg));
    m.insert("action".into(), b.module.act.to_json());
    m
}

fn sub_block(m: &Mat, r0: usize, c0: usize, n: usize) -> Mat {
    Mat::from_rows(
        (r0..r0 + n)
            .map(|i| m.row(i).remap(|c| (c >= c0 && c < c0 + n).then(|| c - c0)))
            .collect(),
        n,
    )
}

/// Serializes a document; the output re-parses to an equal document.
pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Hopf(h) => {
            let Value::Object(m) = hopf_json(h) else { unreachable!() };
            with_kind("hopf", m)
        }
        Document::ModuleAlgebra { h, b } => with_kind("module-algebra", module_algebra_fields(h, b)),
        Document::Idempotent { h, b, p } => {
            let mut m = module_algebra_fields(h, b);
            m.insert("module_dim".into(), json!(p.x.dim));
            m.insert("module".into(), p.x.act.to_json());
            m.insert("element".into(), vec_json(&p.p, p.x.dim * p.x.dim * b.dim()));
            with_kind("idempotent", m)
        }
        Document::Invertible { h, b, u } => {
            let mut m = module_algebra_fields(h, b);
            m.insert("module_dim".into(), json!(u.x.dim));
            m.insert("module".into(), u.x.act.to_json());
            m.insert("element".into(), vec_json(&u.u, u.x.dim * u.x.dim * b.dim()));
            with_kind("invertible", m)
        }
        Document::Fredholm(fm) => {
            let (mi, pl) = (fm.minus, fm.plus);
            let mut m = Map::new();
            m.insert("A".into(), hopf_json(&fm.coaction.a));
            m.insert("B".into(), algebra_json(&fm.coaction.b));
            m.insert("alpha".into(), fm.coaction.alpha.to_json());
            m.insert("minus".into(), json!(mi));
            m.insert("plus".into(), json!(pl));
            let split = fm.pi.iter().all(|p| {
                let blocks = sub_block(p, 0, 0, mi).direct_sum(&sub_block(p, mi, mi, pl));
                blocks == *p
            });
            if split {
                m.insert(
                    "pi_minus".into(),
                    Value::Array(fm.pi.iter().map(|p| sub_block(p, 0, 0, mi).to_json()).collect()),
                );
                m.insert(
                    "pi_plus".into(),
                    Value::Array(fm.pi.iter().map(|p| sub_block(p, mi, mi, pl).to_json()).collect()),
                );
            } else {
                m.insert("pi".into(), Value::Array(fm.pi.iter().map(Mat::to_json).collect()));
            }
            m.insert("F".into(), fm.f.to_json());
            m.insert("U".into(), Value::Array(fm.u.iter().map(Mat::to_json).collect()));
            m.insert("star".into(), json!(fm.star));
            with_kind("fredholm", m)
        }
        Document::Subgroup(sd) => {
            let mut m = Map::new();
            m.insert("A".into(), hopf_json(&sd.a));
            m.insert("A0".into(), hopf_json(&sd.a0));
            m.insert("P".into(), sd.p.to_json());
            with_kind("subgroup", m)
        }
    }
}

/// Pretty JSON with a trailing newline and sorted keys.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
