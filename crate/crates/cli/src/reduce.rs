use std::path::PathBuf;

use gapforge::circuit::{circuit_to_quad_with_witness, parse_circuit, system_hash, Circuit, QuadSystem};
use gapforge::codes::{certify_balance, eps_balanced_code, hadamard_code, LinearCode};
use gapforge::field::{is_prime, make_field, parse_rational, render_rational, FieldSpec, Rationals};
use gapforge::gadget::{certify_gadget, gadget_params, handcrafted_gadget, GadgetCert, GadgetParams, RademacherGadget};
use gapforge::io::{gadget_from_json, instance_to_json, system_from_json, to_pretty, AnySystem, Instance};
use gapforge::reduce::{mdp_to_ncp, quad_to_mdp, quad_to_mdp_distinguished, quad_to_real_mdp, real_to_svp, tensor_mdp, tensor_real, Provenance};
use gapforge::Budget;
use num_rational::BigRational;
use num_traits::Zero;

use crate::fail::Fail;
use crate::{emit, ReduceArgs, Target};

/// A parsed `--gadget` value.
#[derive(Clone, Debug, PartialEq)]
pub enum GadgetSpec {
    Hadamard { m: u32 },
    Eps { eps: BigRational, n: Option<usize> },
    Fixture,
    RandomParams { n: usize, eps: BigRational, c2: BigRational },
    RandomSizes { n: usize, h: usize, big_n: usize, k: usize },
    File(PathBuf),
}

fn kv(body: &str) -> Result<Vec<(&str, &str)>, Fail> {
    body.split(',')
        .filter(|s| !s.is_empty())
        .map(|p| p.split_once('=').ok_or_else(|| Fail::Usage(format!("expected key=value, got {p:?}"))))
        .collect()
}

fn get<'a>(pairs: &[(&str, &'a str)], key: &str) -> Option<&'a str> {
    pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn num<T: std::str::FromStr>(pairs: &[(&str, &str)], key: &str) -> Result<Option<T>, Fail> {
    get(pairs, key).map(|v| v.parse::<T>().map_err(|_| Fail::Usage(format!("bad value for {key}: {v:?}")))).transpose()
}

fn need<T>(v: Option<T>, key: &str, spec: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::Usage(format!("gadget {spec:?} needs {key}=...")))
}

pub fn parse_gadget_spec(spec: &str) -> Result<GadgetSpec, Fail> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    match (kind, body) {
        ("file", path) => return Ok(GadgetSpec::File(PathBuf::from(path))),
        ("fixture", "handcrafted") => return Ok(GadgetSpec::Fixture),
        ("fixture", other) => return Err(Fail::Usage(format!("unknown fixture {other:?}"))),
        _ => {}
    }
    let pairs = kv(body)?;
    let rational = |key: &str| get(&pairs, key).map(parse_rational).transpose().map_err(Fail::from);
    Ok(match kind {
        "hadamard" => GadgetSpec::Hadamard { m: need(num(&pairs, "m")?, "m", spec)? },
        "eps" => GadgetSpec::Eps { eps: need(rational("eps")?, "eps", spec)?, n: num(&pairs, "n")? },
        "random" if get(&pairs, "h").is_some() => GadgetSpec::RandomSizes {
            n: num(&pairs, "n")?.unwrap_or(1),
            h: need(num(&pairs, "h")?, "h", spec)?,
            big_n: need(num(&pairs, "N")?, "N", spec)?,
            k: need(num(&pairs, "k")?, "k", spec)?,
        },
        "random" => GadgetSpec::RandomParams {
            n: need(num(&pairs, "n")?, "n", spec)?,
            eps: need(rational("eps")?, "eps", spec)?,
            c2: rational("c2")?.unwrap_or_else(|| BigRational::from_integer(1.into())),
        },
        _ => return Err(Fail::Usage(format!("unknown gadget {spec:?}"))),
    })
}

/// `F_q` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldSpec, Fail> {
    let p = (2..=q).find(|&p| q.is_multiple_of(p) && is_prime(p)).ok_or_else(|| Fail::Usage(format!("{q} is not a prime power")))?;
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    if r != 1 {
        return Err(Fail::Usage(format!("{q} is not a prime power")));
    }
    make_field(p, m).map_err(Fail::from)
}

enum Source {
    Circuit(Circuit),
    System(AnySystem),
}

fn read_source(path: &PathBuf) -> Result<Source, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
        Ok(Source::System(system_from_json(&v)?))
    } else {
        Ok(Source::Circuit(parse_circuit(&text)?))
    }
}

fn fq_code(spec: Option<&GadgetSpec>, field: &FieldSpec, n_vars: usize, require_cert: bool, budget: &Budget) -> Result<(LinearCode, String), Fail> {
    let (code, desc) = match spec {
        None => (hadamard_code(field, n_vars as u32)?, format!("hadamard:m={n_vars}")),
        Some(GadgetSpec::Hadamard { m }) => (hadamard_code(field, *m)?, format!("hadamard:m={m}")),
        Some(GadgetSpec::Eps { eps, n }) => {
            let n = n.unwrap_or(n_vars);
            (eps_balanced_code(field, n, eps)?, format!("eps:eps={},n={n}", render_rational(eps)))
        }
        Some(other) => return Err(Fail::Usage(format!("{other:?} is not a finite-field code"))),
    };
    if require_cert {
        let claimed = code.meta.balanced_range.ok_or_else(|| Fail::Certification("no claimed weight range".into()))?;
        let mut probe = code.clone();
        let exact = certify_balance(&mut probe, budget)?;
        if exact.0 < claimed.0 || exact.1 > claimed.1 {
            return Err(Fail::Certification(format!("weights {exact:?} fall outside the claimed range {claimed:?}")));
        }
    }
    Ok((code, desc))
}

pub fn real_gadget(spec: Option<&GadgetSpec>, seed: Option<u64>) -> Result<(RademacherGadget, String), Fail> {
    let need_seed = || seed.ok_or_else(|| Fail::Usage("random gadgets need --seed".into()));
    match spec {
        Some(GadgetSpec::Fixture) => Ok((handcrafted_gadget(), "fixture:handcrafted".into())),
        Some(GadgetSpec::RandomParams { n, eps, c2 }) => {
            let params = gadget_params(*n, eps, c2)?;
            let desc = format!("random:n={n},eps={},c2={}", render_rational(eps), render_rational(c2));
            Ok((RademacherGadget::sample(params, need_seed()?)?, desc))
        }
        Some(GadgetSpec::RandomSizes { n, h, big_n, k }) => {
            let params = explicit_params(*n, *h, *big_n, *k);
            Ok((RademacherGadget::sample(params, need_seed()?)?, format!("random:n={n},h={h},N={big_n},k={k}")))
        }
        Some(GadgetSpec::File(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
            Ok((gadget_from_json(&v)?, format!("file:{}", path.display())))
        }
        Some(other) => Err(Fail::Usage(format!("{other:?} is not a real gadget"))),
        None => Err(Fail::Usage("real targets need --gadget".into())),
    }
}

/// Sizes given directly; `d` is unknown until certification and recorded as 0.
pub fn explicit_params(n: usize, h: usize, big_n: usize, k: usize) -> GadgetParams {
    GadgetParams { n, h, d: 0, k, N: big_n, epsilon: BigRational::zero(), delta: BigRational::zero() }
}

fn check_cert(cert: &GadgetCert, require: bool) -> Result<(), Fail> {
    if require && !(cert.is_complete() && cert.wld_verified) {
        return Err(Fail::Certification(format!(
            "gadget certificate incomplete (unverified {:?}, weak local density {})",
            cert.unverified, cert.wld_verified
        )));
    }
    Ok(())
}

fn fq_system(src: &Source, field: &FieldSpec, budget: &Budget) -> Result<QuadSystem<FieldSpec>, Fail> {
    match src {
        Source::Circuit(c) => Ok(circuit_to_quad_with_witness(c, field.clone(), true, budget)?),
        Source::System(AnySystem::Fq(s)) => Ok(s.clone()),
        Source::System(AnySystem::Real(_)) => Err(Fail::Usage("a real system cannot feed a finite-field target".into())),
    }
}

fn real_system(src: &Source, budget: &Budget) -> Result<QuadSystem<Rationals>, Fail> {
    let sys = match src {
        Source::Circuit(c) => circuit_to_quad_with_witness(c, Rationals, false, budget)?,
        Source::System(AnySystem::Real(s)) => s.clone(),
        Source::System(AnySystem::Fq(_)) => return Err(Fail::Usage("a finite-field system cannot feed a real target".into())),
    };
    Ok(if sys.has_linear_terms() { sys.homogenize_linear() } else { sys })
}

pub fn cmd_reduce(a: &ReduceArgs, budget: &Budget) -> Result<(), Fail> {
    if a.tensor == 0 {
        return Err(Fail::Usage("--tensor must be at least 1".into()));
    }
    let src = read_source(&a.from)?;
    let spec = a.gadget.as_deref().map(parse_gadget_spec).transpose()?;
    let circuit_hash = match &src {
        Source::Circuit(c) => Some(c.hash()),
        Source::System(_) => None,
    };
    let inst = match a.target {
        Target::Mdp | Target::MdpDist | Target::Ncp => {
            let field = match &src {
                Source::System(AnySystem::Fq(s)) => s.field.clone(),
                _ => field_of_order(a.field)?,
            };
            let sys = fq_system(&src, &field, budget)?;
            if a.target != Target::Mdp && sys.distinguished.is_none() {
                return Err(Fail::Usage("the distinguished pipeline needs a system with a distinguished variable".into()));
            }
            if a.target != Target::Mdp && a.tensor > 1 {
                return Err(Fail::Usage("tensoring applies to the mdp, real and svp targets".into()));
            }
            let (code, desc) = fq_code(spec.as_ref(), &field, sys.n_vars, a.require_cert, budget)?;
            let provenance = Provenance {
                circuit_hash,
                system_hash: Some(system_hash(&sys, |e| field.render(*e))),
                gadget: Some(desc),
                gadget_seed: None,
                epsilon: code.meta.epsilon.clone(),
                tensor_t: 1,
            };
            match a.target {
                Target::Mdp => {
                    let mut inst = quad_to_mdp(&sys, &code)?;
                    inst.provenance = provenance;
                    Instance::Mdp(tensor_mdp(&inst, a.tensor)?)
                }
                Target::MdpDist => {
                    let mut inst = quad_to_mdp_distinguished(&sys, &code)?;
                    inst.provenance = provenance;
                    Instance::Mdp(inst)
                }
                _ => {
                    let mut inst = quad_to_mdp_distinguished(&sys, &code)?;
                    inst.provenance = provenance;
                    Instance::Ncp(mdp_to_ncp(&inst)?)
                }
            }
        }
        Target::Real | Target::Svp => {
            let sys = real_system(&src, budget)?;
            let (gadget, desc) = real_gadget(spec.as_ref(), a.seed)?;
            let cert = certify_gadget(&gadget, budget)?;
            check_cert(&cert, a.require_cert)?;
            let mut inst = quad_to_real_mdp(&sys, &gadget, &cert, budget)?;
            inst.provenance.circuit_hash = circuit_hash;
            inst.provenance.system_hash = Some(system_hash(&sys, render_rational));
            inst.provenance.gadget = Some(desc);
            let inst = tensor_real(&inst, a.tensor)?;
            if a.target == Target::Real {
                Instance::Real(inst)
            } else {
                Instance::Svp(real_to_svp(&inst, a.p))
            }
        }
    };
    emit(a.out.as_ref(), &to_pretty(&instance_to_json(&inst)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_specs() {
        assert_eq!(parse_gadget_spec("hadamard:m=3").unwrap(), GadgetSpec::Hadamard { m: 3 });
        assert_eq!(parse_gadget_spec("fixture:handcrafted").unwrap(), GadgetSpec::Fixture);
        assert!(matches!(parse_gadget_spec("random:h=3,N=12,k=2").unwrap(), GadgetSpec::RandomSizes { n: 1, h: 3, big_n: 12, k: 2 }));
        assert!(matches!(parse_gadget_spec("eps:eps=1/2").unwrap(), GadgetSpec::Eps { n: None, .. }));
        assert!(parse_gadget_spec("hadamard").is_err());
        assert!(parse_gadget_spec("fixture:other").is_err());
    }

    #[test]
    fn prime_power_orders() {
        assert_eq!(field_of_order(4).unwrap().order(), 4);
        assert_eq!(field_of_order(5).unwrap().degree(), 1);
        assert!(field_of_order(6).is_err());
        assert!(field_of_order(1).is_err());
    }
}
