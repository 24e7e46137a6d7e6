//! Acceptance suite: runs every criterion and prints one
//! `criterion N: PASS|FAIL ...` line each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use gapforge::budget::Budget;
use gapforge::circuit::{circuit_to_quad_with_witness, parse_circuit, QuadEquation, QuadSystem};
use gapforge::codes::{d2_exhaustive, hadamard_code, min_distance_exhaustive, random_code, rank2_min_weight, tensor_code};
use gapforge::field::{make_field, Felem, FieldSpec, Rationals};
use gapforge::gadget::{
    certify_gadget, distance_sweep, expected_slice_count, handcrafted_gadget, sample_rademacher, slice_count_sweep, small_ball_estimate,
    BallMode, ExperimentRow,
};
use gapforge::io::{cert_to_json, to_pretty};
use gapforge::matrix::support::{min_support, SupportSearch};
use gapforge::matrix::{hnf_integer_kernel, kernel_basis_q, mat_vec, solve_integer_combination, Matrix};
use gapforge::oracle::{ncp_solve_bruteforce, norm_pp, sparsest_codeword_fq, sparsest_in_kernel_real, svp_norm_check};
use gapforge::reduce::{
    mdp_contains, mdp_to_ncp, ncp_contains, quad_to_mdp, quad_to_mdp_distinguished, quad_to_real_mdp, real_residual, real_to_svp, tensor_mdp,
    MdpInstance, RealInstance,
};
use gapforge::MatZ;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PASSTHROUGH: &str = "in g1\nout g1";
const CONTRADICTION: &str = "in g1\nnot g2 g1\nand g3 g1 g2\nout g3";

fn budget() -> Budget {
    Budget::default()
}

fn verdict(n: u32, ok: bool, detail: impl AsRef<str>, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    let in_time = elapsed <= limit;
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {} ({:.2}s, limit {}s)", detail.as_ref(), elapsed.as_secs_f64(), limit.as_secs());
    assert!(ok, "criterion {n} failed: {}", detail.as_ref());
    assert!(in_time, "criterion {n} exceeded its time limit");
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn f2() -> FieldSpec {
    make_field(2, 1).unwrap()
}

fn fq_instance(circuit: &str, field: &FieldSpec, m: u32) -> MdpInstance {
    let c = parse_circuit(circuit).unwrap();
    let sys = circuit_to_quad_with_witness(&c, field.clone(), true, &budget()).unwrap();
    quad_to_mdp(&sys, &hadamard_code(field, m).unwrap()).unwrap()
}

fn weight(v: &[Felem]) -> usize {
    v.iter().filter(|x| **x != Felem::ZERO).count()
}

fn criterion_01_non_overlap() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    let mut checked = 0;
    for i in 0..240 {
        let q = [2u64, 3, 5][i % 3];
        let f = make_field(q, 1).unwrap();
        let dim = rng.gen_range(2..=3);
        let len = rng.gen_range(dim..=10);
        let mut code = random_code(&f, dim, len, &mut rng).unwrap();
        let d = min_distance_exhaustive(&mut code, &budget()).unwrap().value;
        let d2 = d2_exhaustive(&mut code, &budget()).unwrap().value;
        // d2 >= ceil((1 + 1/q) d)  <=>  q d2 >= (q + 1) d.
        if (q as usize) * d2 < (q as usize + 1) * d {
            violations += 1;
        }
        checked += 1;
    }
    let mut had = hadamard_code(&f2(), 2).unwrap();
    let d = min_distance_exhaustive(&mut had, &budget()).unwrap().value;
    let d2 = d2_exhaustive(&mut had, &budget()).unwrap().value;
    let ok = checked >= 200 && violations == 0 && d == 2 && d2 == 3;
    verdict(1, ok, format!("{checked} random codes, {violations} violations; Hadamard(F2,2) d={d} d2={d2}"), t0, Duration::from_secs(30));
}

fn criterion_02_tensor_distance() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    let mut checked = 0;
    for i in 0..60 {
        let q = [2u64, 3][i % 2];
        let f = make_field(q, 1).unwrap();
        let dim = rng.gen_range(1..=3);
        let len = rng.gen_range(dim..=6);
        let mut code = random_code(&f, dim, len, &mut rng).unwrap();
        let d = min_distance_exhaustive(&mut code, &budget()).unwrap().value;
        let mut t = tensor_code(&code, 2).unwrap();
        let dt = min_distance_exhaustive(&mut t, &budget()).unwrap().value;
        if dt != d * d {
            mismatches += 1;
        }
        checked += 1;
    }
    verdict(2, checked >= 50 && mismatches == 0, format!("{checked} random codes, {mismatches} with d(C(x)C) != d^2"), t0, Duration::from_secs(60));
}

fn criterion_03_rank_two_weight() {
    let t0 = Instant::now();
    let code = hadamard_code(&f2(), 2).unwrap();
    let rep = rank2_min_weight(&code, &budget()).unwrap();
    let ok = rep.min_rank2_weight == Some(6) && rep.min_rank1_weight == Some(4);
    verdict(3, ok, format!("min rank>=2 weight {:?}, min rank-1 weight {:?}", rep.min_rank2_weight, rep.min_rank1_weight), t0, Duration::from_secs(60));
}

fn criterion_04_fq_gap() {
    let t0 = Instant::now();
    let yes = fq_instance(PASSTHROUGH, &f2(), 3);
    let yes_rep = sparsest_codeword_fq(&yes, &budget()).unwrap();
    let planted_ok = yes.planted.as_ref().is_some_and(|p| weight(p) == 16 && mdp_contains(&yes, p).unwrap());
    let yes4 = fq_instance(PASSTHROUGH, &f2(), 4);
    let yes4_opt = sparsest_codeword_fq(&yes4, &budget()).unwrap().optimum.unwrap();
    let no = fq_instance(CONTRADICTION, &f2(), 4);
    let no_rep = sparsest_codeword_fq(&no, &budget()).unwrap();
    let floor = no_rep.floor;
    let realized = rat(floor as i64, yes4_opt as i64);
    let ok = yes_rep.optimum == Some(16)
        && yes.s == 16
        && planted_ok
        && no.s == 64
        && no.planted.is_none()
        && floor >= 96
        && no_rep.exhausted
        && realized >= rat(3, 2)
        && rat(floor as i64, no.s as i64) >= no.claimed_gap;
    verdict(
        4,
        ok,
        format!(
            "YES(m=3) optimum {:?} s={}; NO(m=4) floor {floor} s={}; realized gap {realized} vs claimed {}",
            yes_rep.optimum, yes.s, no.s, no.claimed_gap
        ),
        t0,
        Duration::from_secs(300),
    );
}

fn criterion_05_tensoring() {
    let t0 = Instant::now();
    let yes = fq_instance(PASSTHROUGH, &f2(), 4);
    let no = fq_instance(CONTRADICTION, &f2(), 4);
    let yes_opt = sparsest_codeword_fq(&yes, &budget()).unwrap().optimum.unwrap();
    let no_floor = sparsest_codeword_fq(&no, &budget()).unwrap().floor;
    let yes2 = tensor_mdp(&yes, 2).unwrap();
    let no2 = tensor_mdp(&no, 2).unwrap();
    let yes2_opt = sparsest_codeword_fq(&yes2, &budget()).unwrap().optimum.unwrap();
    let no2_rep = sparsest_codeword_fq(&no2, &budget()).unwrap();
    let planted = yes2.planted.clone().unwrap();
    let boolean = planted.iter().all(|x| x.0 <= 1);
    let realized = rat(no2_rep.floor as i64, yes2_opt as i64);
    let ok = yes2.s == yes.s * yes.s
        && no2.s == no.s * no.s
        && yes2_opt == yes_opt * yes_opt
        && no2_rep.floor == no_floor * no_floor
        && no2_rep.exhausted
        && realized >= rat(9, 4)
        && boolean
        && weight(&planted) == yes2_opt
        && mdp_contains(&yes2, &planted).unwrap();
    verdict(
        5,
        ok,
        format!(
            "s {}->{}, NO floor {no_floor}->{}, YES optimum {yes_opt}->{yes2_opt}, realized gap {realized}, planted Boolean {boolean}",
            no.s, no2.s, no2_rep.floor
        ),
        t0,
        Duration::from_secs(600),
    );
}

fn criterion_06_distinguished_ncp() {
    let t0 = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    let circuits = [PASSTHROUGH, "in a\nin b\nor o a b\nout o", "in a\nin b\nand o a b\nout o", "in a\nnot b a\nout b", CONTRADICTION];
    for field in [f2(), make_field(3, 1).unwrap()] {
        for (ci, text) in circuits.iter().enumerate() {
            let c = parse_circuit(text).unwrap();
            let sys = circuit_to_quad_with_witness(&c, field.clone(), true, &budget()).unwrap();
            let code = hadamard_code(&field, sys.n_vars as u32).unwrap();
            let inst = quad_to_mdp_distinguished(&sys, &code).unwrap();
            let ambient = sparsest_codeword_fq(&inst, &budget()).unwrap();
            let Ok(ncp) = mdp_to_ncp(&inst) else {
                // No vector of V has last coordinate 1: the affine set is empty.
                continue;
            };
            let ncp_rep = ncp_solve_bruteforce(&ncp, &budget()).unwrap();
            ok &= ncp_rep.optimum.unwrap() >= ambient.optimum.unwrap();
            if let Some(p) = &inst.planted {
                let trailing = *p.last().unwrap() == field.one_elem();
                let in_slice = ncp_contains(&ncp, p).unwrap();
                // The planted vector is the unique sparsest point only over F_2.
                let matches = field.order() != 2 || ncp_rep.optimum == Some(weight(p));
                ok &= trailing && in_slice && matches && weight(p) as u64 <= inst.s;
                if field.order() == 2 && ci == 0 {
                    details.push(format!(
                        "passthrough: planted weight {} trailing {trailing}, NCP optimum {:?}, ambient MDP optimum {:?}",
                        weight(p),
                        ncp_rep.optimum,
                        ambient.optimum
                    ));
                }
            }
        }
    }
    verdict(6, ok, details.join("; "), t0, Duration::from_secs(120));
}

fn real_fixture(b: i64) -> RealInstance {
    let g = handcrafted_gadget();
    let cert = certify_gadget(&g, &budget()).unwrap();
    let mut q = Matrix::filled(1, 1, BigRational::zero());
    q.set(0, 0, BigRational::one());
    let eq = QuadEquation { q, linear: vec![BigRational::zero()], b: BigRational::from_integer(BigInt::from(b)) };
    let mut sys = QuadSystem::new(Rationals, 1, vec![eq], None).unwrap();
    if b == 1 {
        sys = sys.with_witness(vec![true]).unwrap();
    }
    quad_to_real_mdp(&sys, &g, &cert, &budget()).unwrap()
}

fn criterion_07_real_fixture() {
    let t0 = Instant::now();
    let yes = real_fixture(1);
    let no = real_fixture(-1);
    let yes_rep = sparsest_in_kernel_real(&yes.m, 5, &budget()).unwrap();
    let no_rep = sparsest_in_kernel_real(&no.m, 7, &budget()).unwrap();
    let planted = yes.planted.clone().unwrap();
    let residual_zero = real_residual(&yes.m, &planted).unwrap().iter().all(Zero::is_zero);
    let realized = rat(no_rep.floor as i64, yes_rep.optimum.unwrap_or(usize::MAX) as i64);
    let ok = yes_rep.optimum == Some(5)
        && yes.s == 5
        && residual_zero
        && no_rep.optimum.is_none()
        && no_rep.floor >= 8
        && realized >= rat(8, 5)
        && yes.claimed_gap == rat(2, 1);
    verdict(
        7,
        ok,
        format!("YES optimum {:?} (s={}), NO floor {}, realized gap {realized}, claimed {}", yes_rep.optimum, yes.s, no_rep.floor, yes.claimed_gap),
        t0,
        Duration::from_secs(120),
    );
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// `B` spans exactly `ker(M) cap Z^n`: `M B = 0`, the rank matches the nullity,
/// and primitive integer kernel vectors are integer combinations of `B`.
fn saturated(m: &MatZ, rng: &mut ChaCha8Rng) -> bool {
    let b = hnf_integer_kernel(m);
    let kq = kernel_basis_q(m);
    if b.cols() != kq.cols() {
        return false;
    }
    for col in b.columns() {
        if mat_vec(&gapforge::field::Rationals, &gapforge::matrix::to_rational(m), &col.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>())
            .unwrap()
            .iter()
            .any(|x| !x.is_zero())
        {
            return false;
        }
    }
    for _ in 0..5 {
        if kq.cols() == 0 {
            break;
        }
        let mut v = vec![BigRational::zero(); m.cols()];
        for c in kq.columns() {
            let coef = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            for (a, x) in v.iter_mut().zip(&c) {
                *a += &coef * x;
            }
        }
        let den = v.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let x = primitive(v.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect());
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        if solve_integer_combination(&b, &x).unwrap().is_none() {
            return false;
        }
    }
    true
}

fn criterion_08_svp() {
    let t0 = Instant::now();
    let yes = real_fixture(1);
    let mut ok = true;
    let mut norms = Vec::new();
    for p in 1..=3 {
        let svp = real_to_svp(&yes, p);
        let x = svp.planted.clone().unwrap();
        let n = svp_norm_check(&svp, &x).unwrap();
        ok &= n == BigInt::from(5) && norm_pp(&x, p) == BigInt::from(5);
        norms.push(n.to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for _ in 0..50 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(rows + 1..=5);
        let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
        let m = Matrix::from_vec(rows, cols, entries).unwrap();
        if !saturated(&m, &mut rng) {
            failures += 1;
        }
    }
    ok &= failures == 0;
    verdict(8, ok, format!("planted ||x||_p^p for p=1,2,3: {}; saturation failures {failures}/50", norms.join(",")), t0, Duration::from_secs(120));
}

fn criterion_09_slice_expectation() {
    let t0 = Instant::now();
    let rows = slice_count_sweep(12, 2, 3, 9000, 2000, &budget()).unwrap();
    let total: usize = rows.iter().map(|r| r.slice_count.unwrap()).sum();
    let mean = total as f64 / rows.len() as f64;
    let expected = expected_slice_count(12, 2, 3).to_f64().unwrap();
    let weight_one = rows
        .iter()
        .filter(|r| matches!(min_support(&sample_rademacher(3, 12, r.seed), 1, 1, &budget()).unwrap(), SupportSearch::Found { .. }))
        .count();
    let ok = (mean - expected).abs() <= 0.1 * expected && weight_one == 0 && rows.len() == 2000;
    verdict(9, ok, format!("mean {mean:.4} vs exact {expected} over {} seeds; weight-1 kernel vectors in {weight_one} seeds", rows.len()), t0, Duration::from_secs(120));
}

fn criterion_10_small_ball() {
    let t0 = Instant::now();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u1 = [s, s, 0.0, 0.0];
    let u2 = [0.0, 0.0, s, s];
    let exact = small_ball_estimate(&u1, &u2, 0.1, BallMode::Exact, &budget()).unwrap();
    let mc = small_ball_estimate(&u1, &u2, 0.1, BallMode::MonteCarlo { trials: 100_000, seed: 10 }, &budget()).unwrap();
    let ok = exact.hits * 4 == exact.total && (mc.probability - 0.25).abs() <= 0.004;
    verdict(10, ok, format!("exact {}/{}, Monte Carlo {:.5} over {} trials", exact.hits, exact.total, mc.probability, mc.total), t0, Duration::from_secs(30));
}

fn criterion_11_certificate_determinism() {
    let t0 = Instant::now();
    let g = handcrafted_gadget();
    let mut texts = Vec::new();
    for threads in [1, 2, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        for _ in 0..2 {
            let cert = pool.install(|| certify_gadget(&g, &budget())).unwrap();
            texts.push(to_pretty(&cert_to_json(&cert)));
        }
    }
    let cert = certify_gadget(&g, &budget()).unwrap();
    let values_ok = cert.d_exact == Some(2)
        && cert.d2_exact == Some(4)
        && cert.rho == Some(rat(1, 1))
        && cert.alpha == Some(rat(2, 1))
        && cert.wld_verified
        && cert.boolean_slice_count == Some(2);
    let identical = texts.windows(2).all(|w| w[0] == w[1]);
    verdict(
        11,
        values_ok && identical,
        format!("d={:?} d2={:?} rho={:?} alpha={:?} wld={} slice_count={:?}; {} runs byte-identical: {identical}",
            cert.d_exact, cert.d2_exact, cert.rho.as_ref().map(|r| r.to_string()), cert.alpha.as_ref().map(|r| r.to_string()),
            cert.wld_verified, cert.boolean_slice_count, texts.len()),
        t0,
        Duration::from_secs(60),
    );
}

fn criterion_12_rademacher_d2() {
    let t0 = Instant::now();
    let rows: Vec<ExperimentRow> = distance_sweep(20, 2, 10, 1200, 30, &budget()).unwrap();
    println!("{}", ExperimentRow::HEADER);
    for r in &rows {
        println!("{}", r.to_csv());
    }
    let holds = rows.iter().filter(|r| matches!((r.d, r.d2), (Some(d), Some(d2)) if d2 >= d)).count();
    let ok = rows.len() == 30 && holds == 30 && rows.iter().all(|r| r.d.is_some_and(|d| d >= 2) && r.alpha.as_ref().is_some_and(|a| !a.is_negative()));
    verdict(12, ok, format!("d2 >= d in {holds}/{} seeds (h=10, N=20)", rows.len()), t0, Duration::from_secs(900));
}

fn main() {
    let criteria: [(u32, fn()); 12] = [
        (1, criterion_01_non_overlap),
        (2, criterion_02_tensor_distance),
        (3, criterion_03_rank_two_weight),
        (4, criterion_04_fq_gap),
        (5, criterion_05_tensoring),
        (6, criterion_06_distinguished_ncp),
        (7, criterion_07_real_fixture),
        (8, criterion_08_svp),
        (9, criterion_09_slice_expectation),
        (10, criterion_10_small_ball),
        (11, criterion_11_certificate_determinism),
        (12, criterion_12_rademacher_d2),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        if std::panic::catch_unwind(run).is_err() {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
