//! The canonical text format, schema `torfan/1`.
//!
//! One JSON schema for instances (a polyhedron plus a projection), fans,
//! complexes, polyhedra and verification reports. Rationals are written as
//! `"p"` or `"p/q"` strings and parsed exactly; decimals are rejected. All
//! serialization is canonical, so equal values produce identical bytes.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{IntMatrix, Integer, RatMatrix, Rational};
use crate::fan::{Fan, PolyhedralComplex};
use crate::polyhedron::{HRep, Polyhedron, VRep};
use crate::quotient::{make_context, ProjectionContext};

pub const SCHEMA: &str = "torfan/1";

#[derive(Debug, Clone, Error)]
pub enum IoError {
    /// Malformed document (bad JSON or bad rational literals).
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed JSON with wrong shapes or fields.
    #[error("schema error: {0}")]
    Schema(String),
    /// Projection matrix not full row rank with fewer rows than columns.
    #[error("rank error: {0}")]
    Rank(String),
}

/// Parse `"p"` or `"p/q"` exactly. Rejects decimals and zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let s = s.trim();
    let mk = |part: &str, what: &str| -> Result<Integer, IoError> {
        Integer::from_str(part)
            .map_err(|_| IoError::Parse(format!("invalid {what} {part:?} in rational {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(mk(s, "integer")?)),
        Some((p, q)) => {
            let num = mk(p, "numerator")?;
            let den = mk(q, "denominator")?;
            if den == Integer::from(0) {
                return Err(IoError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &Integer::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_vec(v: &[String]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_rows(rows: &[Vec<String>], what: &str, dim: usize) -> Result<Vec<Vec<Rational>>, IoError> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(IoError::Schema(format!(
                "{what}[{i}] has length {}, expected {dim}",
                row.len()
            )));
        }
        out.push(parse_vec(row)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HRepDoc {
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct VRepDoc {
    #[serde(default)]
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub rays: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
}

/// Exactly one of `hrep` / `vrep` must be present.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyhedronSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<HRepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<VRepDoc>,
}

/// An input instance: a polyhedron and an integer projection.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub polyhedron: PolyhedronSpec,
    /// Rows of the projection matrix; entries must be integers.
    pub projection: Vec<Vec<String>>,
}

impl InstanceDocument {
    /// Ambient dimension implied by the polyhedron block.
    pub fn ambient_dim(&self) -> Result<usize, IoError> {
        if let Some(h) = &self.polyhedron.hrep {
            if let Some(row) = h.a.first() {
                return Ok(row.len());
            }
            return Err(IoError::Schema(
                "hrep with no rows: ambient dimension is undetermined".into(),
            ));
        }
        if let Some(v) = &self.polyhedron.vrep {
            if let Some(x) = v.vertices.first() {
                return Ok(x.len());
            }
            return Err(IoError::Schema(
                "vrep must contain at least one vertex".into(),
            ));
        }
        Err(IoError::Schema(
            "polyhedron must contain exactly one of hrep / vrep".into(),
        ))
    }

    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Parse and validate an instance document.
pub fn parse_instance(text: &str) -> Result<InstanceDocument, IoError> {
    let doc: InstanceDocument =
        serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    if doc.schema != SCHEMA {
        return Err(IoError::Schema(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            doc.schema
        )));
    }
    match (&doc.polyhedron.hrep, &doc.polyhedron.vrep) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(IoError::Schema(
                "polyhedron must contain exactly one of hrep / vrep".into(),
            ))
        }
        _ => {}
    }
    let n = doc.ambient_dim()?;
    // validate all rational literals and shapes eagerly
    if let Some(h) = &doc.polyhedron.hrep {
        let rows = parse_rows(&h.a, "hrep.a", n)?;
        if h.b.len() != rows.len() {
            return Err(IoError::Schema(format!(
                "hrep.b has length {}, expected {}",
                h.b.len(),
                rows.len()
            )));
        }
        parse_vec(&h.b)?;
    }
    if let Some(v) = &doc.polyhedron.vrep {
        parse_rows(&v.vertices, "vrep.vertices", n)?;
        parse_rows(&v.rays, "vrep.rays", n)?;
        parse_rows(&v.lineality, "vrep.lineality", n)?;
    }
    let d = doc.projection.len();
    if d >= n {
        return Err(IoError::Rank(format!(
            "projection has {d} rows but the ambient dimension is {n}; need d < n"
        )));
    }
    let proj = parse_projection(&doc.projection, n)?;
    if proj.rank() != d {
        return Err(IoError::Rank(format!(
            "projection does not have full row rank {d}"
        )));
    }
    Ok(doc)
}

fn parse_projection(rows: &[Vec<String>], n: usize) -> Result<IntMatrix, IoError> {
    let mut out: Vec<Vec<Integer>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::Schema(format!(
                "projection[{i}] has length {}, expected {n}",
                row.len()
            )));
        }
        let mut r = Vec::with_capacity(n);
        for s in row {
            let x = Integer::from_str(s.trim()).map_err(|_| {
                IoError::Schema(format!("projection entries must be integers, got {s:?}"))
            })?;
            r.push(x);
        }
        out.push(r);
    }
    Ok(IntMatrix::from_rows(out, n))
}

/// Build the polyhedron and projection context of a validated instance.
pub fn instance_to_parts(
    doc: &InstanceDocument,
) -> Result<(Polyhedron, ProjectionContext), IoError> {
    let n = doc.ambient_dim()?;
    let p = if let Some(h) = &doc.polyhedron.hrep {
        let rows = parse_rows(&h.a, "hrep.a", n)?;
        let b = parse_vec(&h.b)?;
        Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(rows, n), b))
    } else {
        let v = doc.polyhedron.vrep.as_ref().expect("validated");
        Polyhedron::from_vrep(
            &VRep {
                vertices: parse_rows(&v.vertices, "vrep.vertices", n)?,
                rays: parse_rows(&v.rays, "vrep.rays", n)?,
                lineality: parse_rows(&v.lineality, "vrep.lineality", n)?,
            },
            n,
        )
    };
    let proj = parse_projection(&doc.projection, n)?;
    let ctx = make_context(proj).map_err(|e| IoError::Rank(e.to_string()))?;
    Ok((p, ctx))
}

/// Provenance of a computed document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Provenance {
    pub operation: String,
    pub input_hash: String,
}

/// FNV-1a 64-bit hash, hex-encoded; used to tie outputs to their inputs.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeDoc {
    pub rays: Vec<Vec<String>>,
}

/// A fan in canonical form: shared lineality basis plus primitive sorted ray
/// lists per maximal cone.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanDocument {
    pub schema: String,
    pub kind: String,
    pub ambient_dim: usize,
    pub lineality: Vec<Vec<String>>,
    pub maximal_cones: Vec<ConeDoc>,
    pub provenance: Provenance,
}

pub fn fan_to_document(fan: &Fan, operation: &str, input_hash: &str) -> FanDocument {
    FanDocument {
        schema: SCHEMA.to_string(),
        kind: "fan".to_string(),
        ambient_dim: fan.ambient_dim(),
        lineality: fan.lineality().iter().map(|l| format_vec(l)).collect(),
        maximal_cones: fan
            .maximal_cones()
            .iter()
            .map(|c| ConeDoc {
                rays: c.rays().iter().map(|r| format_vec(r)).collect(),
            })
            .collect(),
        provenance: Provenance {
            operation: operation.to_string(),
            input_hash: input_hash.to_string(),
        },
    }
}

/// Rebuild a fan from its document (the support is the hull of all cones).
pub fn document_to_fan(doc: &FanDocument) -> Result<Fan, IoError> {
    if doc.schema != SCHEMA || doc.kind != "fan" {
        return Err(IoError::Schema("expected a torfan/1 fan document".into()));
    }
    let n = doc.ambient_dim;
    let lineality = parse_rows(&doc.lineality, "lineality", n)?;
    let origin = vec![Rational::from_integer(Integer::from(0)); n];
    let mut cones = Vec::new();
    let mut all_rays: Vec<Vec<Rational>> = Vec::new();
    for (i, c) in doc.maximal_cones.iter().enumerate() {
        let rays = parse_rows(&c.rays, &format!("maximal_cones[{i}].rays"), n)?;
        all_rays.extend(rays.iter().cloned());
        cones.push(Polyhedron::from_vrep(
            &VRep {
                vertices: vec![origin.clone()],
                rays,
                lineality: lineality.clone(),
            },
            n,
        ));
    }
    if cones.is_empty() {
        return Err(IoError::Schema("fan document with no cones".into()));
    }
    let support = Polyhedron::from_vrep(
        &VRep {
            vertices: vec![origin],
            rays: all_rays,
            lineality,
        },
        n,
    );
    Ok(Fan::from_cones(n, cones, support))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellDoc {
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

/// A polyhedral complex given by its maximal cells in generator form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexDocument {
    pub schema: String,
    pub kind: String,
    pub ambient_dim: usize,
    pub cells: Vec<CellDoc>,
    pub provenance: Provenance,
}

fn cell_doc(p: &Polyhedron) -> CellDoc {
    CellDoc {
        vertices: p.vertices().iter().map(|v| format_vec(v)).collect(),
        rays: p.rays().iter().map(|r| format_vec(r)).collect(),
        lineality: p.lineality().iter().map(|l| format_vec(l)).collect(),
    }
}

pub fn complex_to_document(
    k: &PolyhedralComplex,
    operation: &str,
    input_hash: &str,
) -> ComplexDocument {
    ComplexDocument {
        schema: SCHEMA.to_string(),
        kind: "complex".to_string(),
        ambient_dim: k.ambient_dim(),
        cells: k.maximal_cells().iter().map(cell_doc).collect(),
        provenance: Provenance {
            operation: operation.to_string(),
            input_hash: input_hash.to_string(),
        },
    }
}

pub fn document_to_complex(doc: &ComplexDocument) -> Result<PolyhedralComplex, IoError> {
    if doc.schema != SCHEMA || doc.kind != "complex" {
        return Err(IoError::Schema(
            "expected a torfan/1 complex document".into(),
        ));
    }
    let n = doc.ambient_dim;
    let mut cells = Vec::new();
    for (i, c) in doc.cells.iter().enumerate() {
        cells.push(Polyhedron::from_vrep(
            &VRep {
                vertices: parse_rows(&c.vertices, &format!("cells[{i}].vertices"), n)?,
                rays: parse_rows(&c.rays, &format!("cells[{i}].rays"), n)?,
                lineality: parse_rows(&c.lineality, &format!("cells[{i}].lineality"), n)?,
            },
            n,
        ));
    }
    if cells.is_empty() {
        return Err(IoError::Schema("complex document with no cells".into()));
    }
    // support: hull of all cells
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    let mut lineality = Vec::new();
    for c in &cells {
        vertices.extend(c.vertices().iter().cloned());
        rays.extend(c.rays().iter().cloned());
        lineality.extend(c.lineality().iter().cloned());
    }
    let support = Polyhedron::from_vrep(
        &VRep {
            vertices,
            rays,
            lineality,
        },
        n,
    );
    Ok(PolyhedralComplex::new(n, cells, support))
}

/// A single polyhedron with both descriptions (output of `dual`).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyhedronDocument {
    pub schema: String,
    pub kind: String,
    pub ambient_dim: usize,
    pub hrep: HRepDoc,
    pub vrep: VRepDoc,
    pub provenance: Provenance,
}

pub fn polyhedron_to_document(
    p: &Polyhedron,
    operation: &str,
    input_hash: &str,
) -> PolyhedronDocument {
    let h = p.hrep();
    PolyhedronDocument {
        schema: SCHEMA.to_string(),
        kind: "polyhedron".to_string(),
        ambient_dim: p.ambient_dim(),
        hrep: HRepDoc {
            a: (0..h.nrows()).map(|i| format_vec(h.a.row(i))).collect(),
            b: format_vec(&h.b),
        },
        vrep: VRepDoc {
            vertices: p.vertices().iter().map(|v| format_vec(v)).collect(),
            rays: p.rays().iter().map(|r| format_vec(r)).collect(),
            lineality: p.lineality().iter().map(|l| format_vec(l)).collect(),
        },
        provenance: Provenance {
            operation: operation.to_string(),
            input_hash: input_hash.to_string(),
        },
    }
}

/// Canonical one-line JSON with trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    const ORTHANT_SUM: &str = r#"{
        "schema": "torfan/1",
        "name": "orthant-sum",
        "polyhedron": {"hrep": {"a": [["1","0","0"],["0","1","0"],["0","0","1"]], "b": ["0","0","0"]}},
        "projection": [["1","1","1"]]
    }"#;

    #[test]
    fn parse_orthant_sum() {
        let doc = parse_instance(ORTHANT_SUM).unwrap();
        assert_eq!(doc.ambient_dim().unwrap(), 3);
        assert_eq!(doc.projection.len(), 1);
        let (p, ctx) = instance_to_parts(&doc).unwrap();
        assert!(p.is_cone());
        assert_eq!(ctx.d(), 1);
    }

    #[test]
    fn exact_rational_literals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-7/2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
    }

    #[test]
    fn projection_rank_errors() {
        let square_proj_square = r#"{
            "schema": "torfan/1",
            "polyhedron": {"hrep": {"a": [["1","0"],["0","1"]], "b": ["0","0"]}},
            "projection": [["1","0"],["0","1"]]
        }"#;
        assert!(matches!(
            parse_instance(square_proj_square),
            Err(IoError::Rank(_))
        ));
        let deficient = r#"{
            "schema": "torfan/1",
            "polyhedron": {"hrep": {"a": [["1","0","0"]], "b": ["0"]}},
            "projection": [["1","1","0"],["2","2","0"]]
        }"#;
        assert!(matches!(parse_instance(deficient), Err(IoError::Rank(_))));
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(
            parse_instance("{\"schema\": \"torfan/2\"}"),
            Err(IoError::Parse(_) | IoError::Schema(_))
        ));
        let both = r#"{
            "schema": "torfan/1",
            "polyhedron": {
                "hrep": {"a": [["1"]], "b": ["0"]},
                "vrep": {"vertices": [["0"]]}
            },
            "projection": []
        }"#;
        assert!(matches!(parse_instance(both), Err(IoError::Schema(_))));
        let ragged = r#"{
            "schema": "torfan/1",
            "polyhedron": {"hrep": {"a": [["1","0"],["1"]], "b": ["0","0"]}},
            "projection": [["1","0"]]
        }"#;
        assert!(matches!(parse_instance(ragged), Err(IoError::Schema(_))));
    }

    #[test]
    fn fan_document_round_trip() {
        let sq = crate::polyhedron::poly_from_ineqs(
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[0, -1, 0, -1],
        );
        let fan = crate::fan::normal_fan(&sq).unwrap();
        let doc = fan_to_document(&fan, "normal-fan", "deadbeef00000000");
        let text = to_canonical_json(&doc);
        let parsed: FanDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
        let back = document_to_fan(&parsed).unwrap();
        assert!(crate::fan::fan_equal(&fan, &back).0);
    }

    #[test]
    fn instance_round_trip() {
        let doc = parse_instance(ORTHANT_SUM).unwrap();
        let text = doc.canonical_json();
        let doc2 = parse_instance(&text).unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(text, doc2.canonical_json());
    }

    #[test]
    fn vrep_instance_builds() {
        let text = r#"{
            "schema": "torfan/1",
            "polyhedron": {"vrep": {"vertices": [["0","0"],["1","0"],["0","1/2"]], "rays": [["1","1"]]}},
            "projection": [["1","0"]]
        }"#;
        let doc = parse_instance(text).unwrap();
        let (p, ctx) = instance_to_parts(&doc).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.rays().len(), 1);
        assert_eq!(ctx.d(), 1);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(content_hash(b""), "cbf29ce484222325");
        assert_eq!(content_hash(b"torfan"), content_hash(b"torfan"));
        assert_ne!(content_hash(b"a"), content_hash(b"b"));
    }
}
