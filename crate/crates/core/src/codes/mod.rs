//! Linear codes over finite fields: constructions and exact analyzers.

pub mod enumerate;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::budget::{binomial, saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::field::{make_field, Felem, FieldSpec};
use crate::matrix::{kronecker, rank, MatFq, Matrix};

pub use enumerate::{for_each_word, min_weight_word, weight_range, MinWord};

/// Largest block length a constructor will produce.
pub const MAX_BLOCK_LEN: u64 = 1 << 16;

/// Certified or construction-backed facts about a code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeMeta {
    /// Exact minimum distance.
    pub d: Option<usize>,
    /// Exact second generalized Hamming weight.
    pub d2: Option<usize>,
    /// Bounds `[low, high]` on the weight of every nonzero codeword.
    pub balanced_range: Option<(usize, usize)>,
    /// Balance parameter the code was built for.
    pub epsilon: Option<BigRational>,
    /// A proven lower bound on the distance, kept apart from the exact value.
    pub distance_bound: Option<usize>,
}

/// A linear code given by an `N x n` generator matrix of full column rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub field: FieldSpec,
    pub g: MatFq,
    pub meta: CodeMeta,
}

impl LinearCode {
    pub fn new(field: FieldSpec, g: MatFq) -> Result<Self> {
        if let Some(bad) = g.entries().iter().find(|e| e.0 >= field.order()) {
            return Err(Error::InvalidInput(format!("entry {} outside F_{}", bad.0, field.order())));
        }
        if rank(&field, &g) != g.cols() {
            return Err(Error::InvalidInput("generator matrix does not have full column rank".into()));
        }
        Ok(LinearCode { field, g, meta: CodeMeta::default() })
    }

    /// Message length `n`.
    pub fn dim(&self) -> usize {
        self.g.cols()
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        self.g.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The generator columns, i.e. the codewords of the unit messages.
    pub fn basis(&self) -> Vec<Vec<Felem>> {
        self.g.columns()
    }

    pub fn encode(&self, message: &[Felem]) -> Result<Vec<Felem>> {
        crate::matrix::mat_vec(&self.field, &self.g, message)
    }

    /// The subcode generated by the first `k` generator columns.
    pub fn restrict_messages(&self, k: usize) -> Result<LinearCode> {
        if k > self.dim() {
            return Err(Error::DimensionMismatch(format!("cannot restrict a dimension-{} code to {k} messages", self.dim())));
        }
        let g = self.g.leading_columns(k)?;
        let mut meta = CodeMeta { balanced_range: self.meta.balanced_range, epsilon: self.meta.epsilon.clone(), ..CodeMeta::default() };
        // Every nonzero word of a subcode is a nonzero word of the code.
        meta.distance_bound = self.meta.d.or(self.meta.distance_bound);
        if k == self.dim() {
            meta = self.meta.clone();
        }
        Ok(LinearCode { field: self.field.clone(), g, meta })
    }
}

/// Evaluation points of `F_q^m` in lexicographic order (first coordinate most
/// significant), each point as its coordinate tuple.
fn points(field: &FieldSpec, m: u32) -> Vec<Vec<Felem>> {
    let q = field.order() as usize;
    let total = q.pow(m);
    (0..total)
        .map(|mut idx| {
            let mut coords = vec![Felem::ZERO; m as usize];
            for c in coords.iter_mut().rev() {
                *c = Felem((idx % q) as u32);
                idx /= q;
            }
            coords
        })
        .collect()
}

/// The Hadamard code `x -> (<x, a>)_{a in F_q^m}`; every nonzero codeword has
/// weight exactly `(1 - 1/q) q^m`.
pub fn hadamard_code(field: &FieldSpec, m: u32) -> Result<LinearCode> {
    let q = u64::from(field.order());
    let n_points = saturating_pow(u128::from(q), u64::from(m));
    if m == 0 || n_points > u128::from(MAX_BLOCK_LEN) {
        return Err(Error::SizeOverflow(format!("Hadamard code of dimension {m} over F_{q}")));
    }
    let pts = points(field, m);
    let g = Matrix::from_rows(pts).expect("rectangular");
    let d = ((q - 1) * q.pow(m - 1)) as usize;
    let mut code = LinearCode::new(field.clone(), g)?;
    code.meta = CodeMeta {
        d: Some(d),
        d2: None,
        balanced_range: Some((d, d)),
        epsilon: Some(BigRational::from_integer(BigInt::from(0))),
        distance_bound: Some(d),
    };
    Ok(code)
}

/// Reed-Solomon code over `F_Q`, `Q = p^m`: a polynomial with `n` coefficients
/// is sent to its evaluations at every element of `F_Q` (in element order).
/// Column `i` of the generator holds `alpha^i`.
pub fn rs_code(base: &FieldSpec, m: u32, n: usize) -> Result<LinearCode> {
    if base.degree() != 1 {
        return Err(Error::InvalidInput("the base field of a Reed-Solomon code must be prime".into()));
    }
    let ext = make_field(u64::from(base.characteristic()), m)?;
    let big_q = ext.order() as usize;
    if n > big_q || n == 0 {
        return Err(Error::InvalidInput(format!("message length {n} must lie in 1..={big_q}")));
    }
    let rows: Vec<Vec<Felem>> = ext.elements().into_iter().map(|a| (0..n).map(|i| ext.ff_pow(a, i as u64)).collect()).collect();
    let mut code = LinearCode::new(ext, Matrix::from_rows(rows).expect("rectangular"))?;
    code.meta.distance_bound = Some(big_q - n + 1);
    Ok(code)
}

/// Concatenates `outer` (over `F_{p^m}`) with `inner` (over `F_p`, message
/// length `m`). Outer messages are restricted to the base field; each outer
/// symbol is expanded into its `m` power-basis coordinates and encoded by `inner`.
pub fn concat_code(outer: &LinearCode, inner: &LinearCode) -> Result<LinearCode> {
    let of = &outer.field;
    let inf = &inner.field;
    if inf.degree() != 1 || of.characteristic() != inf.characteristic() || of.degree() as usize != inner.dim() {
        return Err(Error::DimensionMismatch(format!(
            "outer over F_{} needs an inner code over F_{} with message length {}",
            of.order(),
            of.characteristic(),
            of.degree()
        )));
    }
    let block = (outer.len() as u64) * (inner.len() as u64);
    if block > MAX_BLOCK_LEN {
        return Err(Error::SizeOverflow(format!("concatenated block length {block}")));
    }
    let mut cols = Vec::with_capacity(outer.dim());
    for col in outer.basis() {
        let mut word = Vec::with_capacity(block as usize);
        for sym in col {
            let coords: Vec<Felem> = of.coeffs(sym).into_iter().map(Felem).collect();
            word.extend(inner.encode(&coords)?);
        }
        cols.push(word);
    }
    let g = Matrix::from_columns(block as usize, &cols)?;
    let mut code = LinearCode::new(inf.clone(), g)?;
    if let (Some(a), Some(b)) = (outer.meta.d.or(outer.meta.distance_bound), inner.meta.d.or(inner.meta.distance_bound)) {
        code.meta.distance_bound = Some(a * b);
    }
    Ok(code)
}

/// Reed-Solomon over `F_{q^m}` concatenated with Hadamard over `F_q^m`, with `m`
/// the least integer such that `n <= eps q^m`. Every nonzero codeword has weight
/// in `[(1 - eps)(1 - 1/q) N, (1 - 1/q) N]`, recorded as `balanced_range`.
pub fn eps_balanced_code(field: &FieldSpec, n: usize, eps: &BigRational) -> Result<LinearCode> {
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    if field.degree() != 1 {
        return Err(Error::InvalidInput("base field must be prime".into()));
    }
    if *eps <= zero || *eps >= one {
        return Err(Error::InvalidInput(format!("balance parameter {eps} must lie in (0,1)")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("message length must be positive".into()));
    }
    let q = u64::from(field.order());
    let n_big = BigRational::from_integer(BigInt::from(n));
    let mut m = 1u32;
    loop {
        let qm = q.checked_pow(m).filter(|&v| v * v <= MAX_BLOCK_LEN);
        let Some(qm) = qm else {
            return Err(Error::SizeOverflow(format!("no extension degree with block length within {MAX_BLOCK_LEN}")));
        };
        if n_big <= eps * BigRational::from_integer(BigInt::from(qm)) {
            break;
        }
        m += 1;
    }
    let outer = rs_code(field, m, n)?;
    let inner = hadamard_code(field, m)?;
    let mut code = concat_code(&outer, &inner)?;
    let big_n = code.len() as u64;
    let high = BigRational::new(BigInt::from((q - 1) * big_n), BigInt::from(q));
    let low = (&one - eps) * &high;
    code.meta.balanced_range = Some((ceil_usize(&low), high.to_integer().try_into().expect("fits")));
    code.meta.epsilon = Some(eps.clone());
    Ok(code)
}

fn ceil_usize(r: &BigRational) -> usize {
    r.ceil().to_integer().try_into().expect("fits in usize")
}

/// The tensor power `C^{(x)t}` with generator `G^{(x)t}`; its distance is `d^t`.
pub fn tensor_code(code: &LinearCode, t: u32) -> Result<LinearCode> {
    if t == 0 {
        return Err(Error::InvalidInput("tensor exponent must be at least 1".into()));
    }
    let entries = saturating_pow((code.len() * code.dim()) as u128, u64::from(t));
    if saturating_pow(code.len() as u128, u64::from(t)) > u128::from(MAX_BLOCK_LEN) * u128::from(MAX_BLOCK_LEN) || entries > 1 << 28 {
        return Err(Error::SizeOverflow(format!("tensor power {t} of a [{}, {}] code", code.len(), code.dim())));
    }
    let mut g = code.g.clone();
    for _ in 1..t {
        g = kronecker(&code.field, &g, &code.g);
    }
    let meta = CodeMeta {
        d: code.meta.d.map(|d| d.pow(t)),
        distance_bound: code.meta.d.or(code.meta.distance_bound).map(|d| d.pow(t)),
        ..CodeMeta::default()
    };
    Ok(LinearCode { field: code.field.clone(), g, meta })
}

/// An exact claim about a code, with the codewords that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: String,
    pub value: usize,
    pub witness: Vec<Vec<Felem>>,
    pub method: String,
}

/// Exact minimum distance by enumerating all `q^n` messages; records `meta.d`.
pub fn min_distance_exhaustive(code: &mut LinearCode, budget: &Budget) -> Result<Certificate> {
    let found = min_weight_word(&code.field, code.len(), &code.basis(), None, budget)?
        .ok_or_else(|| Error::InvalidInput("the zero code has no minimum distance".into()))?;
    code.meta.d = Some(found.weight);
    Ok(Certificate { claim: "d".into(), value: found.weight, witness: vec![found.word], method: "exhaustive".into() })
}

fn support_bits(word: &[Felem]) -> Vec<u64> {
    let mut bits = vec![0u64; word.len().div_ceil(64)];
    for (i, x) in word.iter().enumerate() {
        if x.0 != 0 {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

/// Exact second generalized Hamming weight: the least `|supp(u) U supp(v)|`
/// over linearly independent codewords `u, v`. Records `meta.d2`.
pub fn d2_exhaustive(code: &mut LinearCode, budget: &Budget) -> Result<Certificate> {
    if code.dim() < 2 {
        return Err(Error::InvalidInput(format!("d2 needs dimension at least 2, got {}", code.dim())));
    }
    let q = u128::from(code.field.order());
    budget.check(saturating_pow(q, 2 * code.dim() as u64))?;
    // One representative per projective class: first nonzero coordinate 1.
    // Two codewords are independent iff their classes differ, and supports are
    // invariant under scaling.
    let mut reps: Vec<(Vec<u64>, Vec<Felem>)> = Vec::new();
    for_each_word(&code.field, code.len(), &code.basis(), budget, |w| {
        if w.iter().find(|x| x.0 != 0).is_some_and(|x| x.0 == 1) {
            reps.push((support_bits(w), w.to_vec()));
        }
    })?;
    budget.check(binomial(reps.len() as u64, 2))?;
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let joint: usize = reps[i].0.iter().zip(&reps[j].0).map(|(a, b)| (a | b).count_ones() as usize).sum();
            if best.is_none_or(|(b, _, _)| joint < b) {
                best = Some((joint, i, j));
            }
        }
    }
    let (value, i, j) = best.expect("dimension >= 2 gives two classes");
    code.meta.d2 = Some(value);
    let mut witness = vec![reps[i].1.clone(), reps[j].1.clone()];
    witness.sort();
    Ok(Certificate { claim: "d2".into(), value, witness, method: "exhaustive".into() })
}

/// Non-overlap coefficient `d2 / d` from certified values.
pub fn non_overlap_coeff(code: &LinearCode) -> Result<BigRational> {
    match (code.meta.d, code.meta.d2) {
        (Some(d), Some(d2)) => Ok(BigRational::new(BigInt::from(d2), BigInt::from(d))),
        _ => Err(Error::NotCertified("non-overlap needs exact d and d2".into())),
    }
}

/// Exact weight range of nonzero codewords; records it as `balanced_range`.
pub fn certify_balance(code: &mut LinearCode, budget: &Budget) -> Result<(usize, usize)> {
    let range = weight_range(&code.field, code.len(), &code.basis(), budget)?
        .ok_or_else(|| Error::InvalidInput("the zero code has no nonzero words".into()))?;
    code.meta.balanced_range = Some(range);
    code.meta.d = Some(range.0);
    Ok(range)
}

/// Minimum weights in `C (x) C` split by matrix rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Report {
    /// Least weight of a codeword matrix of rank at least 2.
    pub min_rank2_weight: Option<usize>,
    /// A codeword matrix (row-major) attaining it.
    pub rank2_witness: Option<Vec<Felem>>,
    /// Least weight of a rank-1 codeword matrix.
    pub min_rank1_weight: Option<usize>,
}

/// Enumerates every `G X G^T` with `X` in `F_q^{n x n}` and computes the rank of
/// each `N x N` codeword matrix directly.
pub fn rank2_min_weight(code: &LinearCode, budget: &Budget) -> Result<Rank2Report> {
    let f = &code.field;
    let (big_n, n) = (code.len(), code.dim());
    budget.check(saturating_pow(u128::from(f.order()), (n * n) as u64))?;
    let basis = code.basis();
    // Generators of C (x) C as N x N matrices: g_i g_j^T.
    let gens: Vec<Vec<Felem>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut m = Vec::with_capacity(big_n * big_n);
            for a in 0..big_n {
                for b in 0..big_n {
                    m.push(f.ff_mul(basis[i][a], basis[j][b]));
                }
            }
            m
        })
        .collect();
    let mut report = Rank2Report { min_rank2_weight: None, rank2_witness: None, min_rank1_weight: None };
    let mut failure = None;
    for_each_word(f, big_n * big_n, &gens, budget, |w| {
        let weight = w.iter().filter(|x| x.0 != 0).count();
        if weight == 0 {
            return;
        }
        let m = match Matrix::from_vec(big_n, big_n, w.to_vec()) {
            Ok(m) => m,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        if rank(f, &m) >= 2 {
            let better = match (&report.min_rank2_weight, &report.rank2_witness) {
                (Some(b), Some(bw)) => weight < *b || (weight == *b && w < bw.as_slice()),
                _ => true,
            };
            if better {
                report.min_rank2_weight = Some(weight);
                report.rank2_witness = Some(w.to_vec());
            }
        } else if report.min_rank1_weight.is_none_or(|b| weight < b) {
            report.min_rank1_weight = Some(weight);
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// A uniformly random `len x dim` generator of full column rank (resampled
/// until full rank).
pub fn random_code<R: Rng + ?Sized>(field: &FieldSpec, dim: usize, len: usize, rng: &mut R) -> Result<LinearCode> {
    if dim > len {
        return Err(Error::DimensionMismatch(format!("dimension {dim} exceeds length {len}")));
    }
    loop {
        let entries: Vec<Felem> = (0..len * dim).map(|_| Felem(rng.gen_range(0..field.order()))).collect();
        let g = Matrix::from_vec(len, dim, entries)?;
        if rank(field, &g) == dim {
            return LinearCode::new(field.clone(), g);
        }
    }
}
