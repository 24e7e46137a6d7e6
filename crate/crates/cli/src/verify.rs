use std::fmt::Write as _;
use std::path::Path;

use gapforge::field::{render_rational, Field, FieldSpec};
use gapforge::io::{instance_from_json, json_hash, oracle_report_to_json, to_pretty, Instance};
use gapforge::matrix::{integerize_rows, kernel_basis, kernel_basis_q, mat_vec, MatFq};
use gapforge::oracle::{ncp_solve_bruteforce, norm_pp, sparsest_codeword_fq, sparsest_in_kernel_real, svp_norm_check, OracleReport, Witness};
use gapforge::reduce::{mdp_contains, ncp_contains, real_residual, Provenance};
use gapforge::{Budget, Error, Felem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::fail::Fail;
use crate::{emit, Expect, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Yes,
    No,
    Unknown,
}

impl Role {
    fn label(self) -> &'static str {
        match self {
            Role::Yes => "yes",
            Role::No => "no",
            Role::Unknown => "unspecified",
        }
    }
}

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

struct Side {
    path: String,
    role: Role,
    hash: String,
    inst: Instance,
    oracle: Option<OracleReport>,
    oracle_note: Option<String>,
    checks: Vec<Check>,
    budget_hit: bool,
}

impl Side {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), ok, detail: detail.into() });
    }

    fn field(&self) -> Option<&FieldSpec> {
        match &self.inst {
            Instance::Mdp(i) => Some(&i.field),
            Instance::Ncp(i) => Some(&i.field),
            _ => None,
        }
    }
}

fn load(path: &Path) -> Result<(Value, Instance), Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    let inst = instance_from_json(&v)?;
    Ok((v, inst))
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparsity every NO witness must reach. Real and lattice instances carry the
/// homogenizing coordinate in `s`, which the soundness bound excludes.
fn no_target(inst: &Instance) -> BigRational {
    let s = inst.s();
    match inst {
        Instance::Mdp(_) | Instance::Ncp(_) => inst.claimed_gap() * rat(s),
        Instance::Real(_) | Instance::Svp(_) => inst.claimed_gap() * rat(s.saturating_sub(1)),
    }
}

fn usize_ceil(r: &BigRational) -> usize {
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `H v` for a parity-check matrix `H` of the span of `basis`.
fn fq_syndrome(f: &FieldSpec, basis: &MatFq, v: &[Felem]) -> Vec<Felem> {
    let h = kernel_basis(f, &basis.transpose()).transpose();
    mat_vec(f, &h, v).unwrap_or_default()
}

fn nonzero_positions<T>(v: &[T], is_zero: impl Fn(&T) -> bool) -> String {
    let idx: Vec<String> = v.iter().enumerate().filter(|(_, x)| !is_zero(x)).map(|(i, _)| i.to_string()).take(8).collect();
    idx.join(",")
}

fn check_planted(side: &mut Side) -> Result<(), Fail> {
    let s = side.inst.s();
    match side.inst.clone() {
        Instance::Mdp(i) => {
            let Some(p) = &i.planted else { return Ok(()) };
            let member = mdp_contains(&i, p)?;
            let detail = if member {
                String::new()
            } else {
                let syn = fq_syndrome(&i.field, &i.basis, p);
                format!("syndrome nonzero at rows {}", nonzero_positions(&syn, |x| *x == Felem::ZERO))
            };
            side.check("planted vector lies in the subspace", member, detail);
            let w = p.iter().filter(|x| **x != Felem::ZERO).count();
            side.check("planted weight <= s", w as u64 <= s, format!("weight {w}, s {s}"));
            if i.distinguished {
                let last = p.last().copied().unwrap_or_default();
                side.check("planted distinguished coordinate is 1", last == i.field.one(), format!("value {}", i.field.render(last)));
            }
        }
        Instance::Ncp(i) => {
            let Some(p) = &i.planted else { return Ok(()) };
            let member = ncp_contains(&i, p)?;
            let detail = if member {
                String::new()
            } else {
                let diff: Vec<_> = p.iter().zip(&i.offset).map(|(a, b)| i.field.sub(a, b)).collect();
                let syn = fq_syndrome(&i.field, &i.basis, &diff);
                format!("syndrome nonzero at rows {}", nonzero_positions(&syn, |x| *x == Felem::ZERO))
            };
            side.check("planted vector lies in the affine subspace", member, detail);
            let w = p.iter().filter(|x| **x != Felem::ZERO).count();
            side.check("planted weight <= s", w as u64 <= s, format!("weight {w}, s {s}"));
        }
        Instance::Real(i) => {
            let Some(p) = &i.planted else { return Ok(()) };
            let residual = real_residual(&i.m, p)?;
            let zero = residual.iter().all(Zero::is_zero);
            let detail = if zero { String::new() } else { format!("residual nonzero at rows {}", nonzero_positions(&residual, Zero::is_zero)) };
            side.check("planted vector lies in ker(M)", zero, detail);
            let w = p.iter().filter(|b| **b).count();
            side.check("planted weight <= s", w as u64 <= s, format!("weight {w}, s {s}"));
        }
        Instance::Svp(i) => {
            let Some(p) = &i.planted else { return Ok(()) };
            match svp_norm_check(&i, p) {
                Ok(norm) => {
                    side.check("planted vector lies in the lattice", true, "");
                    side.check(format!("planted ||x||_{}^{} <= s", i.p, i.p), norm <= BigInt::from(s), format!("norm {norm}, s {s}"));
                }
                Err(Error::NotAMember(m)) | Err(Error::InvalidInput(m)) => {
                    side.check("planted vector lies in the lattice", false, m);
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

/// Runs the brute-force oracle. Real and lattice searches stop at the bound
/// the role needs; finite-field searches are always exhaustive.
fn run_oracle(inst: &Instance, role: Role, budget: &Budget) -> gapforge::Result<OracleReport> {
    let bound = || match role {
        Role::No => usize_ceil(&no_target(inst)).saturating_sub(1),
        _ => usize::try_from(inst.s()).unwrap_or(usize::MAX),
    };
    match inst {
        Instance::Mdp(i) => sparsest_codeword_fq(i, budget),
        Instance::Ncp(i) => ncp_solve_bruteforce(i, budget),
        Instance::Real(i) => sparsest_in_kernel_real(&i.m, bound().min(i.m.cols()), budget),
        Instance::Svp(i) => {
            // Every nonzero integer entry adds at least 1 to ||x||_p^p, so the
            // sparsest real vector of the span bounds the lattice from below.
            let parity = integerize_rows(&kernel_basis_q(&i.lattice_basis.transpose()).transpose());
            let mut rep = sparsest_in_kernel_real(&parity, bound().min(parity.cols()), budget)?;
            rep.method = "support-enumeration (span of the lattice)".into();
            Ok(rep)
        }
    }
}

fn analyze(path: &Path, role: Role, budget: &Budget) -> Result<Side, Fail> {
    let (v, inst) = load(path)?;
    let role = match role {
        Role::Unknown if has_planted(&inst) => Role::Yes,
        r => r,
    };
    let mut side = Side {
        path: path.display().to_string(),
        role,
        hash: json_hash(&v),
        inst,
        oracle: None,
        oracle_note: None,
        checks: Vec::new(),
        budget_hit: false,
    };
    check_planted(&mut side)?;
    match run_oracle(&side.inst, role, budget) {
        Ok(rep) => {
            let s = side.inst.s();
            match role {
                Role::Yes => match rep.optimum {
                    Some(opt) => side.check("oracle optimum <= s", opt as u64 <= s, format!("optimum {opt}, s {s}")),
                    None => side.check("oracle optimum <= s", false, format!("nothing found below {}", rep.floor)),
                },
                Role::No => {
                    let target = no_target(&side.inst);
                    let ok = rat(rep.floor as u64) >= target;
                    side.check("oracle floor meets the soundness target", ok, format!("floor {}, target {}", rep.floor, render_rational(&target)));
                }
                Role::Unknown => {}
            }
            side.oracle = Some(rep);
        }
        Err(Error::BudgetExceeded { needed, cap }) => {
            side.budget_hit = true;
            side.oracle_note = Some(format!("budget exceeded: needs {needed} candidates, cap {cap}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(side)
}

fn has_planted(inst: &Instance) -> bool {
    match inst {
        Instance::Mdp(i) => i.planted.is_some(),
        Instance::Ncp(i) => i.planted.is_some(),
        Instance::Real(i) => i.planted.is_some(),
        Instance::Svp(i) => i.planted.is_some(),
    }
}

fn provenance_line(p: &Provenance) -> String {
    let mut parts = Vec::new();
    if let Some(h) = &p.circuit_hash {
        parts.push(format!("circuit {}", &h[..h.len().min(16)]));
    }
    if let Some(h) = &p.system_hash {
        parts.push(format!("system {}", &h[..h.len().min(16)]));
    }
    if let Some(g) = &p.gadget {
        match p.gadget_seed {
            Some(seed) => parts.push(format!("gadget {g} (seed {seed})")),
            None => parts.push(format!("gadget {g}")),
        }
    }
    parts.push(format!("tensor t={}", p.tensor_t));
    parts.join(" -> ")
}

fn oracle_line(side: &Side) -> String {
    if let Some(note) = &side.oracle_note {
        return note.clone();
    }
    let Some(r) = &side.oracle else { return "not run".into() };
    let optimum = r.optimum.map_or_else(|| "none found".to_string(), |o| o.to_string());
    let mut line = format!("{}: optimum {optimum}, floor {}", r.method, r.floor);
    if let (Instance::Svp(i), Some(Witness::Z(w))) = (&side.inst, &r.witness) {
        let _ = write!(line, ", witness norm {}", norm_pp(w, i.p));
    }
    line
}

fn render_side(out: &mut String, side: &Side) {
    let inst = &side.inst;
    let _ = writeln!(out, "instance: {} ({})", side.path, side.role.label());
    let _ = writeln!(out, "  kind: {}", inst.kind());
    let _ = writeln!(out, "  instance_hash: {}", side.hash);
    let _ = writeln!(out, "  provenance: {}", provenance_line(inst.provenance()));
    let _ = writeln!(out, "  s: {}", inst.s());
    let _ = writeln!(out, "  claimed gap: {}", render_rational(inst.claimed_gap()));
    if let Instance::Real(r) = inst {
        for n in &r.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let _ = writeln!(out, "  oracle: {}", oracle_line(side));
    for c in &side.checks {
        let status = if c.ok { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            let _ = writeln!(out, "  check {status}: {}", c.name);
        } else {
            let _ = writeln!(out, "  check {status}: {} ({})", c.name, c.detail);
        }
    }
}

fn side_json(side: &Side) -> Value {
    let p = side.inst.provenance();
    json!({
        "path": side.path,
        "role": side.role.label(),
        "kind": side.inst.kind(),
        "instance_hash": side.hash,
        "provenance": gapforge::io::provenance_to_json(p),
        "s": side.inst.s(),
        "claimed_gap": render_rational(side.inst.claimed_gap()),
        "oracle": side.oracle.as_ref().map(|r| oracle_report_to_json(r, side.field())),
        "oracle_note": side.oracle_note,
        "checks": side.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

pub fn cmd_verify(a: &VerifyArgs, budget: &Budget) -> Result<(), Fail> {
    if a.no.is_some() && a.expect.is_some() {
        return Err(Fail::Usage("--expect applies to a single instance, not a --no pair".into()));
    }
    let first_role = match (a.no.is_some(), a.expect) {
        (true, _) | (false, Some(Expect::Yes)) => Role::Yes,
        (false, Some(Expect::No)) => Role::No,
        (false, None) => Role::Unknown,
    };
    let mut sides = vec![analyze(&a.instance, first_role, budget)?];
    let mut pair_checks = Vec::new();
    let mut realized_gap = None;
    if let Some(no) = &a.no {
        let no_side = analyze(no, Role::No, budget)?;
        let yes = &sides[0];
        let same = yes.inst.kind() == no_side.inst.kind() && yes.inst.s() == no_side.inst.s() && yes.inst.claimed_gap() == no_side.inst.claimed_gap();
        pair_checks.push(Check {
            name: "YES and NO share kind, s and claimed gap".into(),
            ok: same,
            detail: String::new(),
        });
        if let (Some(y), Some(n)) = (&yes.oracle, &no_side.oracle) {
            if let Some(opt) = y.optimum.filter(|o| *o > 0) {
                realized_gap = Some(BigRational::new(BigInt::from(n.floor), BigInt::from(opt)));
            }
        }
        sides.push(no_side);
    }

    let mut out = String::new();
    for side in &sides {
        render_side(&mut out, side);
    }
    for c in &pair_checks {
        let _ = writeln!(out, "check {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name);
    }
    if let Some(g) = &realized_gap {
        let _ = writeln!(out, "realized gap: {} (NO floor / YES optimum)", render_rational(g));
    }
    let failed = sides.iter().flat_map(|s| &s.checks).chain(&pair_checks).any(|c| !c.ok);
    let budget_hit = sides.iter().any(|s| s.budget_hit);
    let result = if failed {
        "FAIL"
    } else if budget_hit {
        "INCOMPLETE"
    } else {
        "PASS"
    };
    let _ = writeln!(out, "result: {result}");
    print!("{out}");

    if let Some(path) = &a.json {
        let report = json!({
            "instances": sides.iter().map(side_json).collect::<Vec<_>>(),
            "pair_checks": pair_checks.iter().map(|c| json!({"name": c.name, "ok": c.ok})).collect::<Vec<_>>(),
            "realized_gap": realized_gap.as_ref().map(render_rational),
            "result": result,
        });
        emit(Some(path), &to_pretty(&report))?;
    }
    if failed {
        Err(Fail::Verification("one or more checks failed".into()))
    } else if budget_hit {
        Err(Fail::Budget("oracle search exceeded the budget; report is partial".into()))
    } else {
        Ok(())
    }
}
