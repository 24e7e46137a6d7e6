use gapforge::field::{parse_rational, render_rational};
use gapforge::gadget::{certify_gadget, distance_sweep, expected_slice_count, slice_count_sweep, ExperimentRow};
use gapforge::io::{cert_to_json, gadget_to_json, to_pretty};
use gapforge::Budget;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::fail::Fail;
use crate::reduce::{real_gadget, GadgetSpec};
use crate::{emit, ExperimentArgs, GadgetArgs, Sweep};

fn gadget_spec(a: &GadgetArgs) -> Result<GadgetSpec, Fail> {
    let sized = a.h.is_some() || a.big_n.is_some() || a.k.is_some();
    match (&a.fixture, &a.eps, sized) {
        (Some(_), None, false) if a.n.is_none() => Ok(GadgetSpec::Fixture),
        (Some(_), _, _) => Err(Fail::Usage("--fixture takes no size parameters".into())),
        (None, Some(_), true) => Err(Fail::Usage("give either --eps or --h/--N/--k, not both".into())),
        (None, Some(eps), false) => Ok(GadgetSpec::RandomParams {
            n: a.n.ok_or_else(|| Fail::Usage("--eps needs --n".into()))?,
            eps: parse_rational(eps)?,
            c2: parse_rational(&a.c2)?,
        }),
        (None, None, true) => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Fail::Usage(format!("explicit sizes need --{name}")));
            Ok(GadgetSpec::RandomSizes { n: a.n.unwrap_or(1), h: need(a.h, "h")?, big_n: need(a.big_n, "N")?, k: need(a.k, "k")? })
        }
        (None, None, false) => Err(Fail::Usage("give --fixture, --eps with --n, or --h/--N/--k".into())),
    }
}

pub fn cmd_gadget(a: &GadgetArgs, budget: &Budget) -> Result<(), Fail> {
    let (g, desc) = real_gadget(Some(&gadget_spec(a)?), a.seed)?;
    let cert = certify_gadget(&g, budget)?;
    let gj = gadget_to_json(&g);
    let cj = cert_to_json(&cert);
    match &a.out {
        Some(path) => {
            emit(Some(path), &to_pretty(&gj))?;
            emit(a.cert_out.as_ref(), &to_pretty(&cj))?;
        }
        None if a.cert_out.is_some() => {
            emit(None, &to_pretty(&gj))?;
            emit(a.cert_out.as_ref(), &to_pretty(&cj))?;
        }
        None => emit(None, &to_pretty(&json!({ "gadget": gj, "cert": cj })))?,
    }
    let show = |v: Option<usize>| v.map_or_else(|| "?".to_string(), |v| v.to_string());
    eprintln!(
        "{desc}: h={} N={} k={} d={} d2={} alpha={} wld={}",
        g.r.rows(),
        g.len(),
        g.k,
        show(cert.d_exact),
        show(cert.d2_exact),
        cert.alpha.as_ref().map_or_else(|| "?".to_string(), render_rational),
        cert.wld_verified,
    );
    if cert.unverified.is_empty() {
        Ok(())
    } else {
        Err(Fail::Budget(format!("certificate incomplete, unverified: {}", cert.unverified.join(", "))))
    }
}

pub fn cmd_experiment(a: &ExperimentArgs, budget: &Budget) -> Result<(), Fail> {
    if a.seeds == 0 {
        return Err(Fail::Usage("--seeds must be positive".into()));
    }
    let rows = match a.sweep {
        Sweep::SliceCount => slice_count_sweep(a.big_n, a.k, a.h, a.seed, a.seeds, budget)?,
        Sweep::Distance => distance_sweep(a.big_n, a.k, a.h, a.seed, a.seeds, budget)?,
    };
    let mut csv = String::from(ExperimentRow::HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }
    emit(a.out.as_ref(), &csv)?;

    let counts: Vec<usize> = rows.iter().filter_map(|r| r.slice_count).collect();
    let mean = counts.iter().sum::<usize>() as f64 / counts.len().max(1) as f64;
    let expected = expected_slice_count(a.big_n, a.k, a.h).to_f64().unwrap_or(f64::NAN);
    eprintln!("slice count: mean {mean:.4} over {} seeds, expected {expected:.4}", counts.len());
    if a.sweep == Sweep::Distance {
        let pairs: Vec<(usize, usize)> = rows.iter().filter_map(|r| Some((r.d?, r.d2?))).collect();
        let held = pairs.iter().filter(|(d, d2)| d2 >= d).count();
        eprintln!("d2 >= d in {held}/{} seeds with both distances defined", pairs.len());
    }
    Ok(())
}
