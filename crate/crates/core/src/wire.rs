//! JSON wire forms, wrapped as `{"schema": "wdrep/1", "payload": ...}`.
//!
//! Integers of any size are written as JSON numbers. Object keys come out
//! sorted, so equal values serialize to identical bytes.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::irred::{ConstituentMultiset, InducedIrrep};
use crate::matrix::MatrixE;
use crate::scalar::{FieldCtx, Scalar};
use crate::structure::{Decomposition, SpecialBlock, TwistCertificate};
use crate::wdrep::{Filtration, PanelEntry, PurityReport, PurityViolation, WDRep};

pub const SCHEMA: &str = "wdrep/1";

pub fn envelope(payload: Value) -> Value {
    json!({ "schema": SCHEMA, "payload": payload })
}

/// Payload of an enveloped document.
pub fn open_envelope(doc: &Value) -> Result<&Value> {
    match doc.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => field(doc, "payload"),
        Some(other) => Err(Error::Wire(format!("unsupported schema {other:?}"))),
        None => Err(Error::Wire("missing \"schema\"".into())),
    }
}

pub fn parse_document(text: &str) -> Result<Value> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Wire(e.to_string()))?;
    Ok(open_envelope(&doc)?.clone())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Wire(format!("missing {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Wire(format!("{what} must be an array")))
}

fn int_value(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

fn bigint(v: &Value, what: &str) -> Result<BigInt> {
    let n = v.as_number().ok_or_else(|| Error::Wire(format!("{what} must be an integer")))?;
    n.to_string().parse().map_err(|_| Error::Wire(format!("{what} must be an integer, got {n}")))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    i64::try_from(bigint(v, what)?).map_err(|_| Error::Wire(format!("{what} out of range")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    u64::try_from(bigint(v, what)?).map_err(|_| Error::Wire(format!("{what} must be a nonnegative integer")))
}

fn rational_value(r: &BigRational) -> Value {
    json!([int_value(r.numer()), int_value(r.denom())])
}

fn rational(v: &Value) -> Result<BigRational> {
    let pair = array(v, "rational")?;
    if pair.len() != 2 {
        return Err(Error::Wire("rational must be [num, den]".into()));
    }
    let den = bigint(&pair[1], "denominator")?;
    if den == BigInt::from(0) {
        return Err(Error::Wire("zero denominator".into()));
    }
    Ok(BigRational::new(bigint(&pair[0], "numerator")?, den))
}

pub fn field_to_json(ctx: &FieldCtx) -> Value {
    json!({ "N": ctx.order(), "q": ctx.q() })
}

pub fn field_from_json(v: &Value) -> Result<FieldCtx> {
    FieldCtx::new(uint(field(v, "N")?, "N")?, uint(field(v, "q")?, "q")?)
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    let part = |p: Vec<BigRational>| Value::Array(p.iter().map(rational_value).collect());
    json!({ "a0": part(x.part0()), "a1": part(x.part1()) })
}

pub fn scalar_from_json(ctx: &FieldCtx, v: &Value) -> Result<Scalar> {
    let part = |key: &str| -> Result<Vec<BigRational>> { array(field(v, key)?, key)?.iter().map(rational).collect() };
    ctx.from_parts(&part("a0")?, &part("a1")?).map_err(|e| Error::Wire(e.to_string()))
}

pub fn matrix_to_json(m: &MatrixE) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(ctx: &FieldCtx, v: &Value) -> Result<MatrixE> {
    let rows = uint(field(v, "rows")?, "rows")? as usize;
    let cols = uint(field(v, "cols")?, "cols")? as usize;
    let entries = array(field(v, "entries")?, "entries")?
        .iter()
        .map(|e| scalar_from_json(ctx, e))
        .collect::<Result<Vec<_>>>()?;
    MatrixE::new(ctx, rows, cols, entries).map_err(|e| Error::Wire(e.to_string()))
}

fn vectors_to_json(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect())
}

pub fn rep_to_json(rep: &WDRep) -> Value {
    json!({
        "field": field_to_json(rep.ctx()),
        "n": rep.n(),
        "dim": rep.dim(),
        "S": matrix_to_json(rep.tame()),
        "F": matrix_to_json(rep.frobenius()),
        "monodromy": matrix_to_json(rep.monodromy()),
    })
}

/// Parses a representation; axioms are not checked here.
pub fn rep_from_json(v: &Value) -> Result<WDRep> {
    let ctx = field_from_json(field(v, "field")?)?;
    let n = uint(field(v, "n")?, "n")?;
    let dim = uint(field(v, "dim")?, "dim")? as usize;
    let s = matrix_from_json(&ctx, field(v, "S")?)?;
    let f = matrix_from_json(&ctx, field(v, "F")?)?;
    let nm = matrix_from_json(&ctx, field(v, "monodromy")?)?;
    let rep = WDRep::new(&ctx, n, s, f, nm)?;
    if rep.dim() != dim {
        return Err(Error::DimensionMismatch(format!("\"dim\" is {dim} but matrices are {0}x{0}", rep.dim())));
    }
    Ok(rep)
}

pub fn irrep_to_json(ir: &InducedIrrep) -> Value {
    json!({ "orbit_rep": ir.orbit_rep(), "f": ir.orbit_size(), "alpha": scalar_to_json(ir.alpha()) })
}

pub fn irrep_from_json(ctx: &FieldCtx, n: u64, v: &Value) -> Result<InducedIrrep> {
    let j0 = uint(field(v, "orbit_rep")?, "orbit_rep")?;
    let f = uint(field(v, "f")?, "f")? as usize;
    let ir = InducedIrrep::new(ctx, n, j0, scalar_from_json(ctx, field(v, "alpha")?)?)?;
    if ir.orbit_rep() != j0 % n.max(1) || ir.orbit_size() != f {
        return Err(Error::Wire(format!("orbit ({j0}, f = {f}) is not a canonical orbit modulo {n}")));
    }
    Ok(ir)
}

pub fn constituents_to_json(cs: &ConstituentMultiset) -> Value {
    let list: Vec<Value> = cs
        .iter()
        .map(|(ir, m)| {
            let mut e = irrep_to_json(ir);
            e["mult"] = json!(m);
            e
        })
        .collect();
    json!({ "field": field_to_json(cs.ctx()), "n": cs.n(), "constituents": list })
}

pub fn constituents_from_json(v: &Value) -> Result<ConstituentMultiset> {
    let ctx = field_from_json(field(v, "field")?)?;
    let n = uint(field(v, "n")?, "n")?;
    let mut cs = ConstituentMultiset::new(&ctx, n);
    for e in array(field(v, "constituents")?, "constituents")? {
        let mult = uint(field(e, "mult")?, "mult")? as usize;
        if mult == 0 {
            return Err(Error::Wire("multiplicities must be positive".into()));
        }
        cs.insert(irrep_from_json(&ctx, n, e)?, mult)?;
    }
    Ok(cs)
}

pub fn block_to_json(b: &SpecialBlock) -> Value {
    json!({ "t": b.t, "base": irrep_to_json(&b.base) })
}

pub fn block_from_json(ctx: &FieldCtx, n: u64, v: &Value) -> Result<SpecialBlock> {
    SpecialBlock::new(uint(field(v, "t")?, "t")? as usize, irrep_from_json(ctx, n, field(v, "base")?)?)
}

pub fn blocks_to_json(ctx: &FieldCtx, n: u64, blocks: &[SpecialBlock]) -> Value {
    json!({
        "field": field_to_json(ctx),
        "n": n,
        "blocks": blocks.iter().map(block_to_json).collect::<Vec<_>>(),
    })
}

pub fn blocks_from_json(v: &Value) -> Result<(FieldCtx, u64, Vec<SpecialBlock>)> {
    let ctx = field_from_json(field(v, "field")?)?;
    let n = uint(field(v, "n")?, "n")?;
    let blocks = array(field(v, "blocks")?, "blocks")?
        .iter()
        .map(|b| block_from_json(&ctx, n, b))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, n, blocks))
}

pub fn decomposition_to_json(rep: &WDRep, dec: &Decomposition) -> Value {
    let mut v = blocks_to_json(rep.ctx(), rep.n(), &dec.blocks);
    v["change_of_basis"] = matrix_to_json(&dec.basis);
    v
}

pub fn certificate_to_json(c: &TwistCertificate) -> Value {
    json!({ "w": c.w, "intertwiner": matrix_to_json(&c.intertwiner), "verified": true })
}

pub fn certificate_from_json(ctx: &FieldCtx, v: &Value) -> Result<TwistCertificate> {
    if field(v, "verified")?.as_bool() != Some(true) {
        return Err(Error::Wire("certificate is not marked verified".into()));
    }
    Ok(TwistCertificate { w: int(field(v, "w")?, "w")?, intertwiner: matrix_from_json(ctx, field(v, "intertwiner")?)? })
}

fn small_rational_value(r: &Rational64) -> Value {
    json!([r.numer(), r.denom()])
}

pub fn purity_to_json(p: &PurityReport) -> Value {
    let violations: Vec<Value> = p
        .violations
        .iter()
        .map(|v| {
            json!({
                "grading": v.grading,
                "eigenvalue": scalar_to_json(&v.eigenvalue),
                "observed_weight": small_rational_value(&v.observed_weight),
            })
        })
        .collect();
    json!({ "is_pure": p.is_pure, "weight": p.weight, "violations": violations })
}

pub fn purity_from_json(ctx: &FieldCtx, v: &Value) -> Result<PurityReport> {
    let is_pure = field(v, "is_pure")?.as_bool().ok_or_else(|| Error::Wire("is_pure must be a boolean".into()))?;
    let weight = match field(v, "weight")? {
        Value::Null => None,
        w => Some(int(w, "weight")?),
    };
    let mut violations = Vec::new();
    for e in array(field(v, "violations")?, "violations")? {
        let r = rational(field(e, "observed_weight")?)?;
        let (num, den) = (int_value(r.numer()), int_value(r.denom()));
        violations.push(PurityViolation {
            grading: int(field(e, "grading")?, "grading")?,
            eigenvalue: scalar_from_json(ctx, field(e, "eigenvalue")?)?,
            observed_weight: Rational64::new(int(&num, "observed_weight")?, int(&den, "observed_weight")?),
        });
    }
    Ok(PurityReport { is_pure, weight, violations })
}

pub fn panel_to_json(bound: u64, panel: &[PanelEntry]) -> Value {
    let entries: Vec<Value> =
        panel.iter().map(|e| json!({ "a": e.a, "b": e.b, "value": scalar_to_json(&e.value) })).collect();
    json!({ "bound": bound, "panel": entries })
}

pub fn panel_from_json(ctx: &FieldCtx, v: &Value) -> Result<(u64, Vec<PanelEntry>)> {
    let bound = uint(field(v, "bound")?, "bound")?;
    let panel = array(field(v, "panel")?, "panel")?
        .iter()
        .map(|e| {
            Ok(PanelEntry {
                a: uint(field(e, "a")?, "a")?,
                b: uint(field(e, "b")?, "b")?,
                value: scalar_from_json(ctx, field(e, "value")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((bound, panel))
}

/// Filtration report: the steps `M_k` for `k` in `[-d, d]` as echelon bases,
/// and the induced actions on the nonzero gradings. Output only.
pub fn filtration_to_json(fil: &Filtration) -> Value {
    let steps: Vec<Value> =
        fil.range().map(|k| json!({ "k": k, "basis": vectors_to_json(fil.step(k).basis()) })).collect();
    let gradings: Vec<Value> = fil
        .gradings
        .iter()
        .map(|g| json!({ "k": g.k, "dim": g.dim(), "S": matrix_to_json(&g.tame), "F": matrix_to_json(&g.frobenius) }))
        .collect();
    json!({ "steps": steps, "gradings": gradings })
}

/// Canonical text of a document: compact JSON plus a trailing newline.
pub fn to_text(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("serializable");
    s.push('\n');
    s
}
