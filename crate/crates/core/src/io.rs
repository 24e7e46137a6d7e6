//! JSON forms of matrices, codes, gadgets, systems and instances.
//!
//! Objects use sorted keys and integers and rationals are written as strings,
//! so serializing a parsed document reproduces it byte for byte.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::circuit::{QuadEquation, QuadSystem};
use crate::codes::{CodeMeta, LinearCode};
use crate::error::{Error, Result};
use crate::field::{parse_rational, render_rational, Felem, FieldSpec, Rationals};
use crate::gadget::{GadgetCert, GadgetParams, RademacherGadget};
use crate::matrix::{MatFq, MatQ, MatZ, Matrix};
use crate::oracle::{OracleReport, Witness};
use crate::reduce::{MdpInstance, NcpInstance, Provenance, RealInstance, SvpInstance};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    usize::try_from(as_u64(v, what)?).map_err(|_| bad(format!("{what} out of range")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Hex SHA-256 of the compact JSON form.
pub fn json_hash(v: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_string(v).expect("values serialize").as_bytes()))
}

fn matrix_json<E: Clone>(m: &Matrix<E>, domain: &str, field: Option<&FieldSpec>, render: impl Fn(&E) -> String) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::from(m.row(i).iter().map(&render).collect::<Vec<_>>())).collect();
    let mut obj = Map::new();
    obj.insert("rows".into(), m.rows().into());
    obj.insert("cols".into(), m.cols().into());
    obj.insert("domain".into(), domain.into());
    if let Some(f) = field {
        obj.insert("field".into(), serde_json::to_value(f).expect("field serializes"));
    }
    obj.insert("entries".into(), Value::Array(entries));
    Value::Object(obj)
}

fn matrix_parse<E: Clone>(v: &Value, domain: &str, parse: impl Fn(&str) -> Result<E>) -> Result<Matrix<E>> {
    let d = as_str(field(v, "domain")?, "domain")?;
    if d != domain {
        return Err(bad(format!("expected a {domain:?} matrix, found {d:?}")));
    }
    let rows = as_usize(field(v, "rows")?, "rows")?;
    let cols = as_usize(field(v, "cols")?, "cols")?;
    let data = as_array(field(v, "entries")?, "entries")?;
    if data.len() != rows {
        return Err(Error::LengthMismatch { expected: rows, got: data.len() });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in data {
        let row = as_array(row, "matrix row")?;
        if row.len() != cols {
            return Err(Error::LengthMismatch { expected: cols, got: row.len() });
        }
        for x in row {
            entries.push(parse(as_str(x, "matrix entry")?)?);
        }
    }
    Matrix::from_vec(rows, cols, entries)
}

pub fn matrix_fq_to_json(f: &FieldSpec, m: &MatFq) -> Value {
    matrix_json(m, "fq", Some(f), |x| f.render(*x))
}

/// Parses an `fq` matrix together with the field it names.
pub fn matrix_fq_from_json(v: &Value) -> Result<(FieldSpec, MatFq)> {
    let f: FieldSpec = serde_json::from_value(field(v, "field")?.clone())?;
    let m = matrix_parse(v, "fq", |s| f.parse(s))?;
    Ok((f, m))
}

pub fn matrix_q_to_json(m: &MatQ) -> Value {
    matrix_json(m, "q", None, render_rational)
}

pub fn matrix_q_from_json(v: &Value) -> Result<MatQ> {
    matrix_parse(v, "q", parse_rational)
}

pub fn matrix_z_to_json(m: &MatZ) -> Value {
    matrix_json(m, "z", None, BigInt::to_string)
}

pub fn matrix_z_from_json(v: &Value) -> Result<MatZ> {
    matrix_parse(v, "z", parse_int)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| bad(format!("bad integer {s:?}")))
}

fn fq_vec_json(f: &FieldSpec, v: &[Felem]) -> Value {
    Value::from(v.iter().map(|x| f.render(*x)).collect::<Vec<_>>())
}

fn fq_vec_parse(f: &FieldSpec, v: &Value) -> Result<Vec<Felem>> {
    as_array(v, "vector")?.iter().map(|x| f.parse(as_str(x, "vector entry")?)).collect()
}

fn int_vec_json(v: &[BigInt]) -> Value {
    Value::from(v.iter().map(BigInt::to_string).collect::<Vec<_>>())
}

fn int_vec_parse(v: &Value) -> Result<Vec<BigInt>> {
    as_array(v, "vector")?.iter().map(|x| parse_int(as_str(x, "vector entry")?)).collect()
}

fn bool_vec_json(v: &[bool]) -> Value {
    Value::from(v.iter().map(|&b| u8::from(b)).collect::<Vec<_>>())
}

fn bool_vec_parse(v: &Value) -> Result<Vec<bool>> {
    as_array(v, "Boolean vector")?
        .iter()
        .map(|x| match x.as_u64() {
            Some(0) => Ok(false),
            Some(1) => Ok(true),
            _ => Err(bad("Boolean vector entries must be 0 or 1")),
        })
        .collect()
}

fn rational_json(r: &BigRational) -> Value {
    Value::from(render_rational(r))
}

fn rational_parse(v: &Value) -> Result<BigRational> {
    parse_rational(as_str(v, "rational")?)
}

fn opt_json<T>(v: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    v.map_or(Value::Null, f)
}

pub fn provenance_to_json(p: &Provenance) -> Value {
    json!({
        "circuit_hash": p.circuit_hash,
        "system_hash": p.system_hash,
        "gadget": p.gadget,
        "gadget_seed": p.gadget_seed,
        "epsilon": opt_json(p.epsilon.as_ref(), rational_json),
        "tensor_t": p.tensor_t,
    })
}

pub fn provenance_from_json(v: &Value) -> Result<Provenance> {
    let s = |key: &str| -> Result<Option<String>> { opt(v, key).map(|x| as_str(x, key).map(str::to_string)).transpose() };
    Ok(Provenance {
        circuit_hash: s("circuit_hash")?,
        system_hash: s("system_hash")?,
        gadget: s("gadget")?,
        gadget_seed: opt(v, "gadget_seed").map(|x| as_u64(x, "gadget_seed")).transpose()?,
        epsilon: opt(v, "epsilon").map(rational_parse).transpose()?,
        tensor_t: u32::try_from(as_u64(field(v, "tensor_t")?, "tensor_t")?).map_err(|_| bad("tensor_t out of range"))?,
    })
}

/// Any reduction output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Mdp(MdpInstance),
    Ncp(NcpInstance),
    Real(RealInstance),
    Svp(SvpInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Mdp(_) => "mdp",
            Instance::Ncp(_) => "ncp",
            Instance::Real(_) => "real",
            Instance::Svp(_) => "svp",
        }
    }

    pub fn provenance(&self) -> &Provenance {
        match self {
            Instance::Mdp(i) => &i.provenance,
            Instance::Ncp(i) => &i.provenance,
            Instance::Real(i) => &i.provenance,
            Instance::Svp(i) => &i.provenance,
        }
    }

    pub fn s(&self) -> u64 {
        match self {
            Instance::Mdp(i) => i.s,
            Instance::Ncp(i) => i.s,
            Instance::Real(i) => i.s,
            Instance::Svp(i) => i.s,
        }
    }

    pub fn claimed_gap(&self) -> &BigRational {
        match self {
            Instance::Mdp(i) => &i.claimed_gap,
            Instance::Ncp(i) => &i.claimed_gap,
            Instance::Real(i) => &i.claimed_gap,
            Instance::Svp(i) => &i.claimed_gap,
        }
    }
}

pub fn instance_to_json(inst: &Instance) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), inst.kind().into());
    obj.insert("s".into(), inst.s().into());
    obj.insert("claimed_gap".into(), rational_json(inst.claimed_gap()));
    obj.insert("provenance".into(), provenance_to_json(inst.provenance()));
    match inst {
        Instance::Mdp(i) => {
            obj.insert("field".into(), serde_json::to_value(&i.field).expect("field serializes"));
            obj.insert("basis".into(), matrix_fq_to_json(&i.field, &i.basis));
            obj.insert("distinguished".into(), i.distinguished.into());
            obj.insert("planted".into(), opt_json(i.planted.as_deref(), |p| fq_vec_json(&i.field, p)));
        }
        Instance::Ncp(i) => {
            obj.insert("field".into(), serde_json::to_value(&i.field).expect("field serializes"));
            obj.insert("offset".into(), fq_vec_json(&i.field, &i.offset));
            obj.insert("basis".into(), matrix_fq_to_json(&i.field, &i.basis));
            obj.insert("planted".into(), opt_json(i.planted.as_deref(), |p| fq_vec_json(&i.field, p)));
        }
        Instance::Real(i) => {
            obj.insert("M".into(), matrix_z_to_json(&i.m));
            obj.insert("notes".into(), i.notes.clone().into());
            obj.insert("planted".into(), opt_json(i.planted.as_deref(), bool_vec_json));
        }
        Instance::Svp(i) => {
            obj.insert("lattice_basis".into(), matrix_z_to_json(&i.lattice_basis));
            obj.insert("p".into(), i.p.into());
            obj.insert("planted".into(), opt_json(i.planted.as_deref(), int_vec_json));
        }
    }
    Value::Object(obj)
}

pub fn instance_from_json(v: &Value) -> Result<Instance> {
    let s = as_u64(field(v, "s")?, "s")?;
    let claimed_gap = rational_parse(field(v, "claimed_gap")?)?;
    let provenance = provenance_from_json(field(v, "provenance")?)?;
    let planted = opt(v, "planted");
    Ok(match as_str(field(v, "kind")?, "kind")? {
        "mdp" => {
            let (f, basis) = matrix_fq_from_json(field(v, "basis")?)?;
            check_field(v, &f)?;
            let planted = planted.map(|p| fq_vec_parse(&f, p)).transpose()?;
            let distinguished = field(v, "distinguished")?.as_bool().ok_or_else(|| bad("distinguished must be a Boolean"))?;
            Instance::Mdp(MdpInstance { field: f, basis, s, claimed_gap, planted, distinguished, provenance })
        }
        "ncp" => {
            let (f, basis) = matrix_fq_from_json(field(v, "basis")?)?;
            check_field(v, &f)?;
            let offset = fq_vec_parse(&f, field(v, "offset")?)?;
            let planted = planted.map(|p| fq_vec_parse(&f, p)).transpose()?;
            Instance::Ncp(NcpInstance { field: f, offset, basis, s, claimed_gap, planted, provenance })
        }
        "real" => {
            let m = matrix_z_from_json(field(v, "M")?)?;
            let notes = as_array(field(v, "notes")?, "notes")?.iter().map(|n| as_str(n, "note").map(str::to_string)).collect::<Result<_>>()?;
            let planted = planted.map(bool_vec_parse).transpose()?;
            Instance::Real(RealInstance { m, s, claimed_gap, planted, notes, provenance })
        }
        "svp" => {
            let lattice_basis = matrix_z_from_json(field(v, "lattice_basis")?)?;
            let p = u32::try_from(as_u64(field(v, "p")?, "p")?).map_err(|_| bad("p out of range"))?;
            let planted = planted.map(int_vec_parse).transpose()?;
            Instance::Svp(SvpInstance { lattice_basis, s, p, claimed_gap, planted, provenance })
        }
        other => return Err(bad(format!("unknown instance kind {other:?}"))),
    })
}

fn check_field(v: &Value, f: &FieldSpec) -> Result<()> {
    let top: FieldSpec = serde_json::from_value(field(v, "field")?.clone())?;
    if top != *f {
        return Err(bad("instance field differs from its basis field"));
    }
    Ok(())
}

pub fn code_to_json(code: &LinearCode) -> Value {
    let m = &code.meta;
    json!({
        "field": code.field,
        "n": code.dim(),
        "N": code.len(),
        "G": matrix_fq_to_json(&code.field, &code.g),
        "meta": {
            "d": m.d,
            "d2": m.d2,
            "balanced_range": m.balanced_range.map(|(a, b)| vec![a, b]),
            "epsilon": opt_json(m.epsilon.as_ref(), rational_json),
            "distance_bound": m.distance_bound,
        },
    })
}

pub fn code_from_json(v: &Value) -> Result<LinearCode> {
    let (f, g) = matrix_fq_from_json(field(v, "G")?)?;
    let mut code = LinearCode::new(f, g)?;
    if as_usize(field(v, "n")?, "n")? != code.dim() || as_usize(field(v, "N")?, "N")? != code.len() {
        return Err(bad("code dimensions disagree with the generator"));
    }
    if let Some(m) = opt(v, "meta") {
        let num = |key: &str| opt(m, key).map(|x| as_usize(x, key)).transpose();
        let range = opt(m, "balanced_range")
            .map(|r| -> Result<(usize, usize)> {
                match as_array(r, "balanced_range")?.as_slice() {
                    [a, b] => Ok((as_usize(a, "low")?, as_usize(b, "high")?)),
                    _ => Err(bad("balanced_range must have two entries")),
                }
            })
            .transpose()?;
        code.meta = CodeMeta {
            d: num("d")?,
            d2: num("d2")?,
            balanced_range: range,
            epsilon: opt(m, "epsilon").map(rational_parse).transpose()?,
            distance_bound: num("distance_bound")?,
        };
    }
    Ok(code)
}

fn params_json(p: &GadgetParams) -> Value {
    json!({
        "n": p.n, "h": p.h, "d": p.d, "k": p.k, "N": p.N,
        "epsilon": rational_json(&p.epsilon),
        "delta": rational_json(&p.delta),
    })
}

fn params_parse(v: &Value) -> Result<GadgetParams> {
    let u = |key: &str| as_usize(field(v, key)?, key);
    Ok(GadgetParams {
        n: u("n")?,
        h: u("h")?,
        d: u("d")?,
        k: u("k")?,
        N: u("N")?,
        epsilon: rational_parse(field(v, "epsilon")?)?,
        delta: rational_parse(field(v, "delta")?)?,
    })
}

pub fn gadget_to_json(g: &RademacherGadget) -> Value {
    json!({
        "R": matrix_z_to_json(&g.r),
        "T": matrix_z_to_json(&g.t),
        "k": g.k,
        "params": params_json(&g.params),
        "seed": g.seed,
    })
}

pub fn gadget_from_json(v: &Value) -> Result<RademacherGadget> {
    RademacherGadget::new(
        matrix_z_from_json(field(v, "R")?)?,
        matrix_z_from_json(field(v, "T")?)?,
        as_usize(field(v, "k")?, "k")?,
        params_parse(field(v, "params")?)?,
        opt(v, "seed").map(|s| as_u64(s, "seed")).transpose()?,
    )
}

pub fn cert_to_json(c: &GadgetCert) -> Value {
    json!({
        "d": c.d_exact,
        "d2": c.d2_exact,
        "rho": opt_json(c.rho.as_ref(), rational_json),
        "alpha": opt_json(c.alpha.as_ref(), rational_json),
        "wld": c.wld_verified,
        "slice_count": c.boolean_slice_count,
        "missing_targets": c.missing_targets.iter().map(|t| bool_vec_json(t)).collect::<Vec<_>>(),
        "unverified": c.unverified,
    })
}

pub fn cert_from_json(v: &Value) -> Result<GadgetCert> {
    let num = |key: &str| opt(v, key).map(|x| as_usize(x, key)).transpose();
    Ok(GadgetCert {
        d_exact: num("d")?,
        d2_exact: num("d2")?,
        rho: opt(v, "rho").map(rational_parse).transpose()?,
        alpha: opt(v, "alpha").map(rational_parse).transpose()?,
        wld_verified: field(v, "wld")?.as_bool().ok_or_else(|| bad("wld must be a Boolean"))?,
        boolean_slice_count: num("slice_count")?,
        missing_targets: as_array(field(v, "missing_targets")?, "missing_targets")?.iter().map(bool_vec_parse).collect::<Result<_>>()?,
        unverified: as_array(field(v, "unverified")?, "unverified")?.iter().map(|x| as_str(x, "check").map(str::to_string)).collect::<Result<_>>()?,
    })
}

pub fn oracle_report_to_json(r: &OracleReport, field: Option<&FieldSpec>) -> Value {
    let witness = match (&r.witness, field) {
        (Some(Witness::Fq(v)), Some(f)) => fq_vec_json(f, v),
        (Some(Witness::Fq(v)), None) => Value::from(v.iter().map(|x| x.0).collect::<Vec<_>>()),
        (Some(Witness::Z(v)), _) => int_vec_json(v),
        (None, _) => Value::Null,
    };
    json!({
        "optimum": r.optimum,
        "floor": r.floor,
        "witness": witness,
        "method": r.method,
        "exhausted": r.exhausted,
    })
}

/// A quadratic system read from JSON: either over a finite field or over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySystem {
    Fq(QuadSystem<FieldSpec>),
    Real(QuadSystem<Rationals>),
}

/// Parses `{field: {p, m} | "real", n_vars, equations: [{q, linear, b}], distinguished?, witness?}`.
/// `q` is a square matrix of the matching domain; `linear` and `b` use the
/// element syntax of that domain.
pub fn system_from_json(v: &Value) -> Result<AnySystem> {
    let n = as_usize(field(v, "n_vars")?, "n_vars")?;
    let distinguished = opt(v, "distinguished").map(|x| as_usize(x, "distinguished")).transpose()?;
    let witness = opt(v, "witness").map(bool_vec_parse).transpose()?;
    let eqs = as_array(field(v, "equations")?, "equations")?;
    let fv = field(v, "field")?;
    if fv.as_str() == Some("real") {
        let equations = eqs
            .iter()
            .map(|e| -> Result<QuadEquation<BigRational>> {
                Ok(QuadEquation {
                    q: matrix_q_from_json(field(e, "q")?)?,
                    linear: as_array(field(e, "linear")?, "linear")?.iter().map(rational_parse).collect::<Result<_>>()?,
                    b: rational_parse(field(e, "b")?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sys = QuadSystem::new(Rationals, n, equations, distinguished)?;
        return Ok(AnySystem::Real(match witness {
            Some(w) => sys.with_witness(w)?,
            None => sys,
        }));
    }
    let f: FieldSpec = serde_json::from_value(fv.clone())?;
    let equations = eqs
        .iter()
        .map(|e| -> Result<QuadEquation<Felem>> {
            let (qf, q) = matrix_fq_from_json(field(e, "q")?)?;
            if qf != f {
                return Err(bad("equation matrix over a different field"));
            }
            Ok(QuadEquation { q, linear: fq_vec_parse(&f, field(e, "linear")?)?, b: f.parse(as_str(field(e, "b")?, "b")?)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let sys = QuadSystem::new(f, n, equations, distinguished)?;
    Ok(AnySystem::Fq(match witness {
        Some(w) => sys.with_witness(w)?,
        None => sys,
    }))
}

pub fn system_to_json(sys: &AnySystem) -> Value {
    fn common<F: crate::field::Field>(sys: &QuadSystem<F>, fieldv: Value, eqs: Vec<Value>) -> Value {
        json!({
            "field": fieldv,
            "n_vars": sys.n_vars,
            "equations": eqs,
            "distinguished": sys.distinguished,
            "witness": opt_json(sys.witness.as_deref(), bool_vec_json),
        })
    }
    match sys {
        AnySystem::Fq(s) => {
            let f = &s.field;
            let eqs = s
                .equations
                .iter()
                .map(|e| json!({"q": matrix_fq_to_json(f, &e.q), "linear": fq_vec_json(f, &e.linear), "b": f.render(e.b)}))
                .collect();
            common(s, serde_json::to_value(f).expect("field serializes"), eqs)
        }
        AnySystem::Real(s) => {
            let eqs = s
                .equations
                .iter()
                .map(|e| {
                    json!({
                        "q": matrix_q_to_json(&e.q),
                        "linear": e.linear.iter().map(render_rational).collect::<Vec<_>>(),
                        "b": render_rational(&e.b),
                    })
                })
                .collect();
            common(s, "real".into(), eqs)
        }
    }
}
