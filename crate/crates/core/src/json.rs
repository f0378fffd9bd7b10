//! JSON formats for presentations, complexes, decompositions and fragments.
//!
//! Integers are written as JSON numbers of any size; field elements as
//! strings such as `"-3/2"`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::complexes::{DeltaComplex, NablaComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::homology::SparseVec;
use crate::monomial::{Monomial, TermOrder};
use crate::resolution::{
    Binomial, DecompositionResult, GeneratorId, GeneratorRecord, ModuleElement, Polynomial, Provenance,
    ResolutionFragment, Slot,
};
use crate::semigroup::{GeneratorMatrix, SDegree};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(parse_err(format!("expected an integer, got {v}"))),
    };
    s.parse().map_err(|_| parse_err(format!("expected an integer, got {s}")))
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| parse_err(format!("`{what}` must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("`{what}` must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing `{key}`")))
}

/// Reads `{"dim": d, "generators": [[...], ...]}`.
pub fn parse_semigroup(text: &str) -> Result<GeneratorMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let dim = usize_from_json(field(&v, "dim")?, "dim")?;
    let gens = array(field(&v, "generators")?, "generators")?
        .iter()
        .map(|g| array(g, "generators")?.iter().map(int_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    GeneratorMatrix::new(dim, gens)
}

pub fn semigroup_to_json(a: &GeneratorMatrix) -> Value {
    json!({
        "dim": a.dim(),
        "generators": a.generators().iter().map(degree_to_json).collect::<Vec<_>>(),
    })
}

pub fn degree_to_json(m: &SDegree) -> Value {
    Value::Array(m.coords().iter().map(int_to_json).collect())
}

pub fn degree_from_json(v: &Value) -> Result<SDegree> {
    Ok(SDegree::new(array(v, "degree")?.iter().map(int_from_json).collect::<Result<_>>()?))
}

pub fn monomial_to_json(a: &Monomial) -> Value {
    json!(a.exponents())
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let exps = array(v, "monomial")?
        .iter()
        .map(|e| {
            e.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| parse_err("exponents must be nonnegative integers below 2^32"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::new(exps))
}

pub fn config_to_json(order: TermOrder, field: FieldKind) -> Value {
    json!({ "order": order.name(), "field": field.to_string() })
}

pub fn config_from_json(v: &Value) -> Result<(TermOrder, FieldKind)> {
    let order = field(v, "order")?.as_str().ok_or_else(|| parse_err("`order` must be a string"))?.parse()?;
    let kind = field(v, "field")?.as_str().ok_or_else(|| parse_err("`field` must be a string"))?.parse()?;
    Ok((order, kind))
}

/// Terms largest first under `order`.
pub fn polynomial_to_json<F: Field>(f: &F, order: TermOrder, p: &Polynomial<F::Elem>) -> Value {
    Value::Array(
        p.sorted_terms(order)
            .into_iter()
            .map(|(m, c)| json!({ "monomial": monomial_to_json(m), "coeff": f.format(c) }))
            .collect(),
    )
}

pub fn polynomial_from_json<F: Field>(f: &F, v: &Value) -> Result<Polynomial<F::Elem>> {
    let mut p = Polynomial::zero();
    for t in array(v, "polynomial")? {
        let m = monomial_from_json(field(t, "monomial")?)?;
        let c = field(t, "coeff")?;
        let c = match c {
            Value::String(s) => f.parse(s)?,
            Value::Number(n) => f.parse(&n.to_string())?,
            _ => return Err(parse_err("`coeff` must be a string")),
        };
        p.add_term(f, m, c);
    }
    Ok(p)
}

pub fn generator_id_to_json(id: &GeneratorId) -> Value {
    json!({ "level": id.level, "degree": degree_to_json(&id.degree), "index": id.index })
}

pub fn generator_id_from_json(v: &Value) -> Result<GeneratorId> {
    Ok(GeneratorId {
        level: usize_from_json(field(v, "level")?, "level")?,
        degree: degree_from_json(field(v, "degree")?)?,
        index: usize_from_json(field(v, "index")?, "index")?,
    })
}

/// Level-0 binomials as `{"lead", "trail"}`, other ring elements as
/// `{"polynomial"}`, module elements as a list of generator/coefficient pairs.
pub fn element_to_json<F: Field>(f: &F, order: TermOrder, v: &ModuleElement<F::Elem>) -> Value {
    if let Some(p) = v.get(&Slot::Ring) {
        if v.entries().count() == 1 {
            if let Some(b) = Binomial::from_polynomial(f, p) {
                return json!({ "lead": monomial_to_json(b.lead()), "trail": monomial_to_json(b.trail()) });
            }
            return json!({ "polynomial": polynomial_to_json(f, order, p) });
        }
    }
    Value::Array(
        v.entries()
            .filter_map(|(slot, p)| match slot {
                Slot::Gen(id) => Some(json!({
                    "generator": generator_id_to_json(id),
                    "coefficient": polynomial_to_json(f, order, p),
                })),
                Slot::Ring => None,
            })
            .collect(),
    )
}

pub fn element_from_json<F: Field>(f: &F, v: &Value) -> Result<ModuleElement<F::Elem>> {
    if let (Some(lead), Some(trail)) = (v.get("lead"), v.get("trail")) {
        let mut p = Polynomial::term(f, monomial_from_json(lead)?, f.one());
        p.add_term(f, monomial_from_json(trail)?, f.neg(&f.one()));
        return Ok(ModuleElement::ring(p));
    }
    if let Some(p) = v.get("polynomial") {
        return Ok(ModuleElement::ring(polynomial_from_json(f, p)?));
    }
    let mut out = ModuleElement::zero();
    for e in array(v, "value")? {
        let id = generator_id_from_json(field(e, "generator")?)?;
        let p = polynomial_from_json(f, field(e, "coefficient")?)?;
        out.add_assign(f, &ModuleElement::single(Slot::Gen(id), p));
    }
    Ok(out)
}

fn chain_to_json<F: Field>(f: &F, c: &SparseVec<F::Elem>) -> Value {
    Value::Array(c.entries().iter().map(|(i, x)| json!([i, f.format(x)])).collect())
}

fn chain_from_json<F: Field>(f: &F, v: &Value) -> Result<SparseVec<F::Elem>> {
    let pairs = array(v, "witness")?
        .iter()
        .map(|e| {
            let idx = usize_from_json(e.get(0).unwrap_or(&Value::Null), "witness index")?;
            let c = e.get(1).and_then(Value::as_str).ok_or_else(|| parse_err("witness coefficient"))?;
            Ok((idx, f.parse(c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_pairs(f, pairs))
}

pub fn record_to_json<F: Field>(f: &F, order: TermOrder, r: &GeneratorRecord<F::Elem>) -> Value {
    json!({
        "id": generator_id_to_json(&r.id),
        "level": r.id.level,
        "degree": degree_to_json(&r.id.degree),
        "value": element_to_json(f, order, &r.value),
        "witness": chain_to_json(f, &r.witness),
    })
}

pub fn record_from_json<F: Field>(f: &F, v: &Value) -> Result<GeneratorRecord<F::Elem>> {
    Ok(GeneratorRecord {
        id: generator_id_from_json(field(v, "id")?)?,
        value: element_from_json(f, field(v, "value")?)?,
        witness: match v.get("witness") {
            Some(w) => chain_from_json(f, w)?,
            None => SparseVec::zero(),
        },
    })
}

pub fn decomposition_to_json<F: Field>(f: &F, order: TermOrder, d: &DecompositionResult<F::Elem>) -> Value {
    json!({
        "level": d.level,
        "input_degree": degree_to_json(&d.input_degree),
        "terms": d.terms.iter().map(|(id, p)| json!({
            "generator": generator_id_to_json(id),
            "coefficient": polynomial_to_json(f, order, p),
        })).collect::<Vec<_>>(),
    })
}

pub fn fragment_to_json<F: Field>(f: &F, frag: &ResolutionFragment<F::Elem>) -> Value {
    let levels: Vec<Value> = frag
        .levels
        .iter()
        .enumerate()
        .map(|(j, recs)| {
            json!({
                "level": j,
                "rank": recs.len(),
                "generators": recs.iter().map(|r| record_to_json(f, frag.order, r)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "config": config_to_json(frag.order, frag.field),
        "degree": degree_to_json(&frag.degree),
        "max_level": frag.max_level,
        "ranks": frag.ranks(),
        "shape": frag.shape(),
        "levels": levels,
        "provenance": {
            "faces_walked": frag.provenance.faces_walked,
            "representatives": frag.provenance.representatives,
        },
    })
}

pub fn fragment_from_json<F: Field>(f: &F, v: &Value) -> Result<ResolutionFragment<F::Elem>> {
    let (order, kind) = config_from_json(field(v, "config")?)?;
    if kind != f.kind() {
        return Err(parse_err(format!("fragment was computed over {kind}, not {}", f.kind())));
    }
    let levels = array(field(v, "levels")?, "levels")?
        .iter()
        .map(|l| array(field(l, "generators")?, "generators")?.iter().map(|r| record_from_json(f, r)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let prov = v.get("provenance").cloned().unwrap_or(Value::Object(Map::new()));
    let list = |key: &str| -> Vec<usize> {
        prov.get(key)
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_u64).map(|n| n as usize).collect())
            .unwrap_or_default()
    };
    Ok(ResolutionFragment {
        order,
        field: kind,
        degree: degree_from_json(field(v, "degree")?)?,
        max_level: usize_from_json(field(v, "max_level")?, "max_level")?,
        provenance: Provenance { faces_walked: list("faces_walked"), representatives: list("representatives") },
        levels,
    })
}

pub fn nabla_to_json(k: &NablaComplex) -> Value {
    json!({
        "degree": degree_to_json(k.degree()),
        "vertices": k.vertices().iter().map(monomial_to_json).collect::<Vec<_>>(),
        "facets": k.facets().iter().map(|f| json!(f.vertices())).collect::<Vec<_>>(),
    })
}

pub fn delta_to_json(d: &DeltaComplex) -> Value {
    let faces: Vec<Value> = (0..d.nvars())
        .flat_map(|j| d.faces_of_dim(j))
        .map(|f| json!(f.vertices().iter().map(|i| i + 1).collect::<Vec<_>>()))
        .collect();
    json!({
        "degree": degree_to_json(d.degree()),
        "has_empty_face": d.has_empty_face(),
        "faces": faces,
    })
}
