//! Random sign matrices as real coding gadgets.
//!
//! The code is `C = ker(R)` for an `h x N` matrix `R` with independent
//! uniform `+-1` entries; a 0/1 matrix `T` projects weight-`k` Boolean
//! codewords onto `{0,1}^n`. Everything certified here is exact: supports are
//! searched with integer rank computations, never with floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::budget::{binomial, saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::matrix::support::{min_support, SupportSearch};
use crate::matrix::{MatZ, Matrix};

/// A deterministic stream for `(seed, role, index)`.
pub fn derive_rng(seed: u64, role: &str, index: u64) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(b"gapforge:");
    h.update(role.as_bytes());
    h.update(seed.to_le_bytes());
    h.update(index.to_le_bytes());
    ChaCha20Rng::from_seed(h.finalize().into())
}

/// Derived sizes of a gadget.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetParams {
    pub n: usize,
    pub h: usize,
    pub d: usize,
    pub k: usize,
    pub N: usize,
    pub epsilon: BigRational,
    pub delta: BigRational,
}


/// `delta = eps / (3 c2)`, `h = n^3`, `d = ceil(delta h)`, `k = ceil(d (1 + eps))`,
/// and `N` the largest integer with `h >= d log_{sqrt d}(N / d)`, decided as
/// `N^(2d) <= d^(h + 2d)` in exact integers.
pub fn gadget_params(n: usize, eps: &BigRational, c2: &BigRational) -> Result<GadgetParams> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::InvalidInput(format!("epsilon {eps} must lie in (0,1)")));
    }
    if !c2.is_positive() {
        return Err(Error::InvalidInput(format!("constant {c2} must be positive")));
    }
    let delta = eps / (c2 * BigRational::from_integer(BigInt::from(3)));
    let h = n
        .checked_pow(3)
        .ok_or_else(|| Error::SizeOverflow(format!("n = {n} gives h = n^3 out of range")))?;
    let d_big = (&delta * BigRational::from_integer(BigInt::from(h))).ceil().to_integer();
    let d = d_big.to_usize().ok_or_else(|| Error::SizeOverflow("d out of range".into()))?;
    let k = (BigRational::from_integer(d_big.clone()) * (BigRational::one() + eps))
        .ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::SizeOverflow("k out of range".into()))?;
    if d < 2 {
        return Err(Error::ParametersTooTight(format!("d = {d}: the logarithm base sqrt(d) needs d >= 2")));
    }
    let big = BigUint::from(d).pow((h + 2 * d) as u32);
    let nn = big.nth_root((2 * d) as u32);
    let nn = nn.to_usize().ok_or_else(|| Error::SizeOverflow("N out of range".into()))?;
    if nn < 1 {
        return Err(Error::ParametersTooTight("no N >= 1 satisfies the distance condition".into()));
    }
    Ok(GadgetParams { n, h, d, k, N: nn, epsilon: eps.clone(), delta })
}

/// `h x N` matrix of independent uniform signs, one bit of the seeded stream per entry.
pub fn sample_rademacher(h: usize, n_cols: usize, seed: u64) -> MatZ {
    let mut rng = derive_rng(seed, "rademacher", ((h as u64) << 32) | n_cols as u64);
    let mut entries = Vec::with_capacity(h * n_cols);
    let mut bits = 0u64;
    for idx in 0..h * n_cols {
        if idx % 64 == 0 {
            bits = rng.next_u64();
        }
        entries.push(if (bits >> (idx % 64)) & 1 == 1 { BigInt::one() } else { -BigInt::one() });
    }
    Matrix::from_vec(h, n_cols, entries).expect("sized")
}

/// `n x N` 0/1 matrix, each entry 1 with probability exactly `1/(4kn)`.
pub fn sample_projection(n: usize, n_cols: usize, k: usize, seed: u64) -> Result<MatZ> {
    let denom = 4u64
        .checked_mul(k as u64)
        .and_then(|v| v.checked_mul(n as u64))
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::InvalidInput(format!("4kn must be a positive integer (k={k}, n={n})")))?;
    let mut rng = derive_rng(seed, "projection", ((n as u64) << 32) | n_cols as u64);
    let entries = (0..n * n_cols).map(|_| if rng.gen_range(0..denom) == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    Matrix::from_vec(n, n_cols, entries)
}

/// A signed matrix `R`, a projection `T` and a sparsity budget `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RademacherGadget {
    pub r: MatZ,
    pub t: MatZ,
    pub k: usize,
    pub params: GadgetParams,
    pub seed: Option<u64>,
}

impl RademacherGadget {
    /// Checks entry ranges and shapes.
    pub fn new(r: MatZ, t: MatZ, k: usize, params: GadgetParams, seed: Option<u64>) -> Result<Self> {
        if r.entries().iter().any(|x| x.abs() != BigInt::one()) {
            return Err(Error::InvalidInput("R must have entries in {-1, +1}".into()));
        }
        if t.entries().iter().any(|x| !x.is_zero() && !x.is_one()) {
            return Err(Error::InvalidInput("T must have entries in {0, 1}".into()));
        }
        if r.cols() != t.cols() {
            return Err(Error::DimensionMismatch(format!("R has {} columns, T has {}", r.cols(), t.cols())));
        }
        Ok(RademacherGadget { r, t, k, params, seed })
    }

    /// Samples `R` and `T` for `params` from one root seed.
    pub fn sample(params: GadgetParams, seed: u64) -> Result<Self> {
        let r = sample_rademacher(params.h, params.N, seed);
        let t = sample_projection(params.n, params.N, params.k, seed)?;
        let k = params.k;
        RademacherGadget::new(r, t, k, params, Some(seed))
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        self.r.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of projected coordinates `n`.
    pub fn n(&self) -> usize {
        self.t.rows()
    }
}

fn int_rows(rows: &[&[i64]]) -> MatZ {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).expect("rectangular")
}

/// The 2 x 4 fixture `R = [[1,1,-1,-1],[1,-1,1,-1]]`, `T = [1,0,0,0]`, `k = 2`.
pub fn handcrafted_gadget() -> RademacherGadget {
    let r = int_rows(&[&[1, 1, -1, -1], &[1, -1, 1, -1]]);
    let t = int_rows(&[&[1, 0, 0, 0]]);
    let params = GadgetParams { n: 1, h: 2, d: 2, k: 2, N: 4, epsilon: BigRational::zero(), delta: BigRational::one() };
    RademacherGadget::new(r, t, 2, params, None).expect("valid fixture")
}

/// Which Boolean weights [`boolean_slice_kernel`] collects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceWeight {
    Exact(usize),
    AtMost(usize),
}

/// Columns of `R` as small integers, or an error for entries outside `{-1, 0, 1}`.
fn sign_columns(r: &MatZ) -> Result<Vec<Vec<i64>>> {
    (0..r.cols())
        .map(|j| {
            (0..r.rows())
                .map(|i| {
                    r.get(i, j)
                        .to_i64()
                        .filter(|v| v.abs() <= 1)
                        .ok_or_else(|| Error::InvalidInput("slice search needs entries in {-1, 0, 1}".into()))
                })
                .collect()
        })
        .collect()
}

struct SliceSearch<'a> {
    cols: &'a [Vec<i64>],
    found: Vec<Vec<usize>>,
}

impl SliceSearch<'_> {
    /// Extends `chosen` with columns from `start` on, `left` more to pick.
    fn go(&mut self, start: usize, left: usize, sum: &mut [i64], chosen: &mut Vec<usize>, record_all: bool) {
        if record_all || left == 0 {
            if !chosen.is_empty() && sum.iter().all(|&s| s == 0) {
                self.found.push(chosen.clone());
            }
            if left == 0 {
                return;
            }
        }
        let n = self.cols.len();
        for j in start..n {
            if n - j < if record_all { 1 } else { left } {
                break;
            }
            for (s, c) in sum.iter_mut().zip(&self.cols[j]) {
                *s += c;
            }
            // Each remaining column moves every coordinate by at most 1.
            let reach = (left - 1) as i64;
            if sum.iter().all(|s| s.abs() <= reach) {
                chosen.push(j);
                self.go(j + 1, left - 1, sum, chosen, record_all);
                chosen.pop();
            }
            for (s, c) in sum.iter_mut().zip(&self.cols[j]) {
                *s -= c;
            }
        }
    }
}

/// Boolean vectors `u` with `R u = 0` of the requested weight, as sorted
/// supports in lexicographic order.
pub fn boolean_slice_supports(r: &MatZ, weight: SliceWeight, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let n = r.cols() as u64;
    let (k, record_all) = match weight {
        SliceWeight::Exact(k) => (k, false),
        SliceWeight::AtMost(k) => (k, true),
    };
    let needed = if record_all { crate::budget::subsets_up_to(n, k as u64) } else { binomial(n, k as u64) };
    budget.check(needed)?;
    let cols = sign_columns(r)?;
    let mut search = SliceSearch { cols: &cols, found: Vec::new() };
    if k > 0 {
        let mut sum = vec![0i64; r.rows()];
        search.go(0, k, &mut sum, &mut Vec::new(), record_all);
    }
    let mut found = search.found;
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// As [`boolean_slice_supports`], returned as 0/1 vectors.
pub fn boolean_slice_kernel(r: &MatZ, weight: SliceWeight, budget: &Budget) -> Result<Vec<Vec<bool>>> {
    let supports = boolean_slice_supports(r, weight, budget)?;
    Ok(supports
        .into_iter()
        .map(|s| {
            let mut v = vec![false; r.cols()];
            for j in s {
                v[j] = true;
            }
            v
        })
        .collect())
}

/// Exact minimum support of a nonzero real vector in `ker(R)`.
pub fn exact_min_distance_real(r: &MatZ, bound: usize, budget: &Budget) -> Result<SupportSearch> {
    min_support(r, 1, bound, budget)
}

/// Exact second generalized Hamming weight of `ker(R)`.
pub fn exact_d2_real(r: &MatZ, bound: usize, budget: &Budget) -> Result<SupportSearch> {
    min_support(r, 2, bound, budget)
}

/// `T u` for a Boolean `u`, or `None` if some coordinate exceeds 1.
fn project(t: &MatZ, u: &[bool]) -> Option<Vec<bool>> {
    (0..t.rows())
        .map(|i| {
            let s: i64 = u.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| t.get(i, j).to_i64().unwrap_or(0)).sum();
            match s {
                0 => Some(false),
                1 => Some(true),
                _ => None,
            }
        })
        .collect()
}

/// Weak local density report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub covered: bool,
    /// Targets in `{0,1}^n` with no weight-`k` Boolean kernel vector mapping onto them.
    pub missing: Vec<Vec<bool>>,
    /// Number of weight-`k` Boolean kernel vectors.
    pub slice_count: usize,
}

/// Checks `T(ker(R) cap H_k) contains {0,1}^n` by exhausting the slice.
pub fn verify_weak_local_density(g: &RademacherGadget, budget: &Budget) -> Result<DensityReport> {
    let n = g.n();
    budget.check(saturating_pow(2, n as u64))?;
    let slice = boolean_slice_kernel(&g.r, SliceWeight::Exact(g.k), budget)?;
    let mut hit = vec![false; 1usize << n];
    for u in &slice {
        if let Some(x) = project(&g.t, u) {
            hit[bits_index(&x)] = true;
        }
    }
    let missing: Vec<Vec<bool>> = (0..1usize << n).filter(|&i| !hit[i]).map(|i| index_bits(i, n)).collect();
    Ok(DensityReport { covered: missing.is_empty(), missing, slice_count: slice.len() })
}

/// Index of a target, first coordinate most significant.
fn bits_index(x: &[bool]) -> usize {
    x.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

fn index_bits(i: usize, n: usize) -> Vec<bool> {
    (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect()
}

/// The lexicographically smallest weight-`k` Boolean `y` in `ker(R)` with `T' y = x`,
/// where `T'` is the first `x.len()` rows of `T`.
pub fn lift_witness(g: &RademacherGadget, x: &[bool], budget: &Budget) -> Result<Option<Vec<bool>>> {
    if x.len() > g.n() {
        return Err(Error::DimensionMismatch(format!("target of length {} for a gadget with n = {}", x.len(), g.n())));
    }
    let rows: Vec<usize> = (0..x.len()).collect();
    let t = Matrix::from_rows(rows.iter().map(|&i| g.t.row(i).to_vec()).collect()).unwrap_or_else(|_| Matrix::filled(0, g.len(), BigInt::zero()));
    let t = if x.is_empty() { Matrix::filled(0, g.len(), BigInt::zero()) } else { t };
    let slice = boolean_slice_kernel(&g.r, SliceWeight::Exact(g.k), budget)?;
    // Supports come sorted; for equal weight, lexicographic order on supports is
    // the reverse of lexicographic order on 0/1 vectors.
    let mut best: Option<Vec<bool>> = None;
    for u in slice {
        if project(&t, &u).as_deref() == Some(x) && best.as_ref().is_none_or(|b| u < *b) {
            best = Some(u);
        }
    }
    Ok(best)
}

/// `||u||_1^2 / ||u||_2^2` and, when requested, a compressibility verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub ratio_squared: BigRational,
    pub compressible: Option<bool>,
}

/// Parameters `(rho, delta, d)`: `u` is compressible if deleting at most
/// `floor(delta d)` coordinates leaves at most `rho ||u||_2` of its norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompParams {
    pub rho: BigRational,
    pub delta: BigRational,
    pub d: usize,
}

pub fn width_ratio(u: &[BigRational], comp: Option<&CompParams>) -> Result<WidthReport> {
    let l1: BigRational = u.iter().map(|x| x.abs()).sum();
    let l2sq: BigRational = u.iter().map(|x| x * x).sum();
    if l2sq.is_zero() {
        return Err(Error::InvalidInput("width of the zero vector".into()));
    }
    let ratio_squared = &l1 * &l1 / &l2sq;
    let compressible = comp.map(|c| {
        let drop = (&c.delta * BigRational::from_integer(BigInt::from(c.d))).floor().to_integer().to_usize().unwrap_or(usize::MAX);
        let mut sq: Vec<BigRational> = u.iter().map(|x| x * x).collect();
        sq.sort_by(|a, b| b.cmp(a));
        let rest: BigRational = sq.into_iter().skip(drop).sum();
        rest <= &c.rho * &c.rho * &l2sq
    });
    Ok(WidthReport { ratio_squared, compressible })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

/// Probability that both `|<xi, u1>|` and `|<xi, u2>|` are at most `t` for
/// uniform random signs `xi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallBall {
    pub probability: f64,
    pub hits: u64,
    pub total: u64,
}

pub fn small_ball_estimate(u1: &[f64], u2: &[f64], t: f64, mode: BallMode, budget: &Budget) -> Result<SmallBall> {
    const TOL: f64 = 1e-9;
    if u1.len() != u2.len() {
        return Err(Error::LengthMismatch { expected: u1.len(), got: u2.len() });
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    if (dot(u1, u1) - 1.0).abs() > TOL || (dot(u2, u2) - 1.0).abs() > TOL || dot(u1, u2).abs() > TOL {
        return Err(Error::InvalidInput("small-ball inputs must be an orthonormal pair".into()));
    }
    let n = u1.len();
    let inside = |signs: u64| {
        let mut a = 0.0;
        let mut b = 0.0;
        for j in 0..n {
            let s = if (signs >> j) & 1 == 1 { 1.0 } else { -1.0 };
            a += s * u1[j];
            b += s * u2[j];
        }
        a.abs() <= t && b.abs() <= t
    };
    match mode {
        BallMode::Exact => {
            if n >= 64 {
                return Err(Error::BudgetExceeded { needed: u128::MAX, cap: budget.cap });
            }
            budget.check(1u128 << n)?;
            let total = 1u64 << n;
            let hits = (0..total).into_par_iter().filter(|&s| inside(s)).count() as u64;
            Ok(SmallBall { probability: hits as f64 / total as f64, hits, total })
        }
        BallMode::MonteCarlo { trials, seed } => {
            if n > 64 {
                return Err(Error::InvalidInput("Monte Carlo mode supports up to 64 coordinates".into()));
            }
            budget.check(u128::from(trials))?;
            const CHUNK: u64 = 1024;
            let chunks = trials.div_ceil(CHUNK);
            let hits: u64 = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = derive_rng(seed, "small-ball", c);
                    let count = CHUNK.min(trials - c * CHUNK);
                    (0..count).filter(|_| inside(rng.next_u64())).count() as u64
                })
                .sum();
            Ok(SmallBall { probability: hits as f64 / trials.max(1) as f64, hits, total: trials })
        }
    }
}

/// `Pr[xi_1 + ... + xi_d = 0] = C(d, d/2) / 2^d` for uniform signs.
pub fn balanced_sum_probability(d: usize) -> BigRational {
    if d % 2 == 1 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(binomial(d as u64, d as u64 / 2)), BigInt::one() << d)
}

/// `E|ker(R) cap H_k^N| = C(N, k) Pr[balanced]^h` for an `h x N` sign matrix.
pub fn expected_slice_count(n_cols: usize, k: usize, h: usize) -> BigRational {
    let p = balanced_sum_probability(k);
    let mut acc = BigRational::from_integer(BigInt::from(binomial(n_cols as u64, k as u64)));
    for _ in 0..h {
        acc *= &p;
    }
    acc
}

/// Exact facts about a gadget. Fields left `None` were not verified within budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCert {
    pub d_exact: Option<usize>,
    pub d2_exact: Option<usize>,
    /// `k / d`.
    pub rho: Option<BigRational>,
    /// `d2 / d`.
    pub alpha: Option<BigRational>,
    pub wld_verified: bool,
    pub boolean_slice_count: Option<usize>,
    pub missing_targets: Vec<Vec<bool>>,
    /// Names of checks skipped for lack of budget.
    pub unverified: Vec<String>,
}

impl GadgetCert {
    pub fn is_complete(&self) -> bool {
        self.unverified.is_empty() && self.d_exact.is_some() && self.d2_exact.is_some()
    }
}

fn budget_skip<T>(r: Result<T>, name: &str, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => {
            skipped.push(name.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Runs the exact distance, `d2`, slice and density checks.
pub fn certify_gadget(g: &RademacherGadget, budget: &Budget) -> Result<GadgetCert> {
    let mut skipped = Vec::new();
    let n = g.len();
    let d = budget_skip(exact_min_distance_real(&g.r, n, budget), "d", &mut skipped)?.and_then(|s| s.size());
    let d2 = budget_skip(exact_d2_real(&g.r, n, budget), "d2", &mut skipped)?.and_then(|s| s.size());
    let density = budget_skip(verify_weak_local_density(g, budget), "wld", &mut skipped)?;
    let rho = d.map(|d| BigRational::new(BigInt::from(g.k), BigInt::from(d)));
    let alpha = match (d, d2) {
        (Some(d), Some(d2)) => Some(BigRational::new(BigInt::from(d2), BigInt::from(d))),
        _ => None,
    };
    Ok(GadgetCert {
        d_exact: d,
        d2_exact: d2,
        rho,
        alpha,
        wld_verified: density.as_ref().is_some_and(|r| r.covered),
        boolean_slice_count: density.as_ref().map(|r| r.slice_count),
        missing_targets: density.map(|r| r.missing).unwrap_or_default(),
        unverified: skipped,
    })
}

/// One row of a seed sweep.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentRow {
    pub seed: u64,
    pub h: usize,
    pub N: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d2: Option<usize>,
    pub alpha: Option<BigRational>,
    pub slice_count: Option<usize>,
    pub wld: Option<bool>,
}

impl ExperimentRow {
    pub const HEADER: &'static str = "seed,h,N,k,d,d2,alpha,slice_count,wld";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.h,
            self.N,
            self.k,
            opt(self.d.map(|v| v.to_string())),
            opt(self.d2.map(|v| v.to_string())),
            opt(self.alpha.as_ref().map(crate::field::render_rational)),
            opt(self.slice_count.map(|v| v.to_string())),
            opt(self.wld.map(|v| v.to_string())),
        )
    }
}

/// Seeds `root, root + 1, ...` used by the sweeps.
pub fn sweep_seeds(root: u64, count: usize) -> impl Iterator<Item = u64> {
    (0..count as u64).map(move |i| root.wrapping_add(i))
}

/// Weight-`k` Boolean slice size of `R_{h,N}` for each seed.
pub fn slice_count_sweep(n_cols: usize, k: usize, h: usize, root: u64, count: usize, budget: &Budget) -> Result<Vec<ExperimentRow>> {
    let seeds: Vec<u64> = sweep_seeds(root, count).collect();
    seeds
        .par_iter()
        .map(|&seed| {
            let r = sample_rademacher(h, n_cols, seed);
            let c = boolean_slice_supports(&r, SliceWeight::Exact(k), budget)?.len();
            Ok(ExperimentRow { seed, h, N: n_cols, k, d: None, d2: None, alpha: None, slice_count: Some(c), wld: None })
        })
        .collect()
}

/// Exact `d`, `d2` and slice size of `R_{h,N}` for each seed. Seeds run one
/// after another; each exact search is itself parallel.
pub fn distance_sweep(n_cols: usize, k: usize, h: usize, root: u64, count: usize, budget: &Budget) -> Result<Vec<ExperimentRow>> {
    sweep_seeds(root, count)
        .map(|seed| {
            let r = sample_rademacher(h, n_cols, seed);
            let d = exact_min_distance_real(&r, n_cols, budget)?.size();
            let d2 = exact_d2_real(&r, n_cols, budget)?.size();
            let alpha = match (d, d2) {
                (Some(d), Some(d2)) => Some(BigRational::new(BigInt::from(d2), BigInt::from(d))),
                _ => None,
            };
            let slice = boolean_slice_supports(&r, SliceWeight::Exact(k), budget)?.len();
            Ok(ExperimentRow { seed, h, N: n_cols, k, d, d2, alpha, slice_count: Some(slice), wld: None })
        })
        .collect()
}
