//! JSON file formats.
//!
//! A ring element is `{"L": level, "coeffs": ["n/d", …]}`; friezes,
//! quiddity rows and dissections are built on top of it.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frieze::{Frieze, QuiddityRow};
use crate::polygon::{Diagonal, Dissection};
use crate::ring::{ContextRegistry, FieldContext, RingElement};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    #[serde(rename = "L")]
    level: u64,
    coeffs: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FriezeJson {
    n_vertices: usize,
    #[serde(rename = "L")]
    level: u64,
    table: Vec<Vec<ElementJson>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiddityJson {
    #[serde(rename = "L")]
    level: u64,
    entries: Vec<ElementJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DissectionJson {
    n: usize,
    diagonals: Vec<Diagonal>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn encode(x: &RingElement) -> ElementJson {
    let coeffs = x.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
    ElementJson { level: x.level(), coeffs }
}

fn decode(ctx: &Arc<FieldContext>, raw: &ElementJson) -> Result<RingElement> {
    if raw.level != ctx.level() {
        return Err(Error::Parse(format!("element at level {} inside a level-{} file", raw.level, ctx.level())));
    }
    let coeffs = raw
        .coeffs
        .iter()
        .map(|s| s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    RingElement::from_coeffs(ctx, &coeffs)
}

pub fn element_to_json(x: &RingElement) -> String {
    serde_json::to_string(&encode(x)).expect("serializable")
}

pub fn element_from_json(registry: &ContextRegistry, text: &str) -> Result<RingElement> {
    let raw: ElementJson = serde_json::from_str(text).map_err(parse_err)?;
    decode(&registry.get(raw.level)?, &raw)
}

pub fn frieze_to_json(f: &Frieze) -> String {
    let raw = FriezeJson {
        n_vertices: f.n_vertices(),
        level: f.context().level(),
        table: f.rows().iter().map(|row| row.iter().map(encode).collect()).collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

/// Reads a frieze table; the frieze axioms are not checked here.
pub fn frieze_from_json(registry: &ContextRegistry, text: &str) -> Result<Frieze> {
    let raw: FriezeJson = serde_json::from_str(text).map_err(parse_err)?;
    if raw.table.len() != raw.n_vertices {
        return Err(Error::Parse(format!("{} rows for n_vertices = {}", raw.table.len(), raw.n_vertices)));
    }
    let ctx = registry.get(raw.level)?;
    let rows = raw
        .table
        .iter()
        .map(|row| row.iter().map(|e| decode(&ctx, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Frieze::from_rows(&ctx, rows)
}

pub fn quiddity_to_json(q: &QuiddityRow) -> String {
    let raw = QuiddityJson { level: q.context().level(), entries: q.entries().iter().map(encode).collect() };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

pub fn quiddity_from_json(registry: &ContextRegistry, text: &str) -> Result<QuiddityRow> {
    let raw: QuiddityJson = serde_json::from_str(text).map_err(parse_err)?;
    let ctx = registry.get(raw.level)?;
    let entries = raw.entries.iter().map(|e| decode(&ctx, e)).collect::<Result<Vec<_>>>()?;
    QuiddityRow::new(entries)
}

pub fn dissection_to_json(d: &Dissection) -> String {
    let raw = DissectionJson { n: d.n_vertices(), diagonals: d.diagonals().to_vec() };
    serde_json::to_string(&raw).expect("serializable")
}

/// Reads and validates a dissection; endpoints may be given in either order.
pub fn dissection_from_json(text: &str) -> Result<Dissection> {
    let raw: DissectionJson = serde_json::from_str(text).map_err(parse_err)?;
    Dissection::new(raw.n, raw.diagonals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissection::phi_minimal;
    use crate::ring::lambda_embed;

    #[test]
    fn sqrt_two_format() {
        let reg = ContextRegistry::new(64);
        let l4 = lambda_embed(&reg.get(4).unwrap(), 4).unwrap();
        assert_eq!(element_to_json(&l4), r#"{"L":4,"coeffs":["0/1","1/1"]}"#);
        assert_eq!(element_from_json(&reg, r#"{"L":4,"coeffs":["0","1/1"]}"#).unwrap(), l4);
    }

    #[test]
    fn rejects_wrong_length() {
        let reg = ContextRegistry::new(64);
        let err = element_from_json(&reg, r#"{"L":4,"coeffs":["0/1"]}"#).unwrap_err();
        assert_eq!(err, Error::WrongLength { expected: 2, found: 1 });
        assert!(matches!(element_from_json(&reg, r#"{"L":4,"coeffs":["x","1"]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn dissection_round_trip() {
        let d = dissection_from_json(r#"{"n":10,"diagonals":[[4,1],[9,4],[5,8]]}"#).unwrap();
        assert_eq!(dissection_to_json(&d), r#"{"n":10,"diagonals":[[1,4],[4,9],[5,8]]}"#);
        assert!(dissection_from_json(r#"{"n":6,"diagonals":[[0,3],[1,4]]}"#).is_err());
        assert!(dissection_from_json(r#"{"n":6,"diagonals":[[0,3],[3,0]]}"#).is_err());
        assert!(dissection_from_json(r#"{"n":6,"diagonals":[[0,1]]}"#).is_err());
        assert!(dissection_from_json(r#"{"n":6,"diagonals":[[2,2]]}"#).is_err());
    }

    #[test]
    fn frieze_and_quiddity_round_trip() {
        let reg = ContextRegistry::new(64);
        let d = Dissection::from_pairs(7, &[(2, 4)]).unwrap();
        let f = phi_minimal(&reg, &d).unwrap();
        let back = frieze_from_json(&reg, &frieze_to_json(&f)).unwrap();
        assert_eq!(back, f);
        let q = crate::frieze::quiddity_of(&f);
        assert_eq!(quiddity_from_json(&reg, &quiddity_to_json(&q)).unwrap(), q);
    }
}
