//! Reductions from quadratic systems to sparse-vector instances.
//!
//! Over `F_q`, a homogeneous system in `n` variables becomes the subspace
//! `{G X G^T : Q_l(X) = 0, X = X^T}` for a balanced code with generator `G`.
//! Over the reals the code is the kernel of a sign matrix and the instance is
//! presented as `ker(M)` for an integer matrix `M`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::circuit::QuadSystem;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Felem, Field, FieldSpec, Rationals};
use crate::gadget::{lift_witness, GadgetCert, RademacherGadget};
use crate::matrix::{hnf_integer_kernel, integerize_rows, kernel_basis, kron_vec, kronecker, kronecker_z, MatFq, MatZ, Matrix};

/// Where an instance came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub circuit_hash: Option<String>,
    pub system_hash: Option<String>,
    /// Description of the code or gadget, e.g. `hadamard:m=3`.
    pub gadget: Option<String>,
    pub gadget_seed: Option<u64>,
    pub epsilon: Option<BigRational>,
    pub tensor_t: u32,
}

/// A subspace `V` of `F_q^L` given by basis columns, with a sparsity threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdpInstance {
    pub field: FieldSpec,
    pub basis: MatFq,
    pub s: u64,
    pub claimed_gap: BigRational,
    pub planted: Option<Vec<Felem>>,
    /// The last coordinate equals 1 on every YES witness.
    pub distinguished: bool,
    pub provenance: Provenance,
}

impl MdpInstance {
    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// The affine subspace `offset + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcpInstance {
    pub field: FieldSpec,
    pub offset: Vec<Felem>,
    pub basis: MatFq,
    pub s: u64,
    pub claimed_gap: BigRational,
    pub planted: Option<Vec<Felem>>,
    pub provenance: Provenance,
}

/// `V = ker(M)` over the reals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInstance {
    pub m: MatZ,
    pub s: u64,
    pub claimed_gap: BigRational,
    /// Boolean `(vec(Y), z)`.
    pub planted: Option<Vec<bool>>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

/// The lattice `ker(M) cap Z^n`, basis in columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvpInstance {
    pub lattice_basis: MatZ,
    pub s: u64,
    pub p: u32,
    pub claimed_gap: BigRational,
    pub planted: Option<Vec<BigInt>>,
    pub provenance: Provenance,
}

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Index of `X[i][j]`, `i <= j`, among the upper-triangle unknowns in row order.
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n + 1 - i) / 2 + (j - i)
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Constraint rows `Q_l(X) = 0` on the unknowns `X[i][j]`, `i <= j`.
fn symmetric_constraints(sys: &QuadSystem<FieldSpec>) -> MatFq {
    let f = &sys.field;
    let pairs = upper_pairs(sys.n_vars);
    let rows: Vec<Vec<Felem>> = sys
        .equations
        .iter()
        .map(|eq| {
            pairs
                .iter()
                .map(|&(i, j)| if i == j { *eq.q.get(i, i) } else { f.add(eq.q.get(i, j), eq.q.get(j, i)) })
                .collect()
        })
        .collect();
    if rows.is_empty() {
        Matrix::filled(0, pairs.len(), Felem::ZERO)
    } else {
        Matrix::from_rows(rows).expect("rectangular")
    }
}

/// `vec(G X G^T)` in row order for symmetric `X` given by its upper triangle.
fn embed(f: &FieldSpec, g: &MatFq, upper: &[Felem]) -> Vec<Felem> {
    let (len, n) = (g.rows(), g.cols());
    let mut x = vec![Felem::ZERO; n * n];
    for (idx, &(i, j)) in upper_pairs(n).iter().enumerate() {
        x[i * n + j] = upper[idx];
        x[j * n + i] = upper[idx];
    }
    // A = G X, then A G^T.
    let mut a = vec![Felem::ZERO; len * n];
    for r in 0..len {
        for k in 0..n {
            let grk = *g.get(r, k);
            if grk == Felem::ZERO {
                continue;
            }
            for c in 0..n {
                let v = f.mul(&grk, &x[k * n + c]);
                a[r * n + c] = f.add(&a[r * n + c], &v);
            }
        }
    }
    let mut out = vec![Felem::ZERO; len * len];
    for r in 0..len {
        for c in 0..len {
            let mut acc = Felem::ZERO;
            for k in 0..n {
                acc = f.add(&acc, &f.mul(&a[r * n + k], g.get(c, k)));
            }
            out[r * len + c] = acc;
        }
    }
    out
}

/// The code restricted to `n_vars` messages, with its certified weight range.
fn prepare_code(sys: &QuadSystem<FieldSpec>, code: &LinearCode) -> Result<(MatFq, usize, usize)> {
    if !sys.homogeneous {
        return Err(Error::InvalidInput("the finite-field reduction needs a homogeneous system".into()));
    }
    if sys.field != code.field {
        return Err(Error::DimensionMismatch(format!("system over {:?}, code over {:?}", sys.field, code.field)));
    }
    let (low, high) = code
        .meta
        .balanced_range
        .ok_or_else(|| Error::NotCertified("the code has no certified weight range".into()))?;
    if low == 0 {
        return Err(Error::NotCertified("the certified weight range starts at 0".into()));
    }
    if code.dim() < sys.n_vars {
        return Err(Error::DimensionMismatch(format!(
            "code has {} messages, the system has {} variables",
            code.dim(),
            sys.n_vars
        )));
    }
    Ok((code.g.leading_columns(sys.n_vars)?, low, high))
}

fn checked_square(v: usize) -> Result<u64> {
    (v as u64).checked_mul(v as u64).ok_or_else(|| Error::SizeOverflow(format!("{v}^2")))
}

fn build_mdp(sys: &QuadSystem<FieldSpec>, code: &LinearCode, distinguished: bool) -> Result<MdpInstance> {
    let (g, low, high) = prepare_code(sys, code)?;
    let f = &sys.field;
    let n = sys.n_vars;
    let dist_var = if distinguished {
        Some(sys.distinguished.ok_or_else(|| Error::InvalidInput("the system has no distinguished variable".into()))?)
    } else {
        None
    };
    let kernel = kernel_basis(f, &symmetric_constraints(sys));
    let mut columns = Vec::with_capacity(kernel.cols());
    for upper in kernel.columns() {
        let mut v = embed(f, &g, &upper);
        if let Some(z) = dist_var {
            v.push(upper[upper_index(n, z, z)]);
        }
        columns.push(v);
    }
    let len = g.rows() * g.rows() + usize::from(distinguished);
    let basis = Matrix::from_columns(len, &columns)?;
    let q = u64::from(f.order());
    let mut s = checked_square(high)?;
    let floor = rat(q + 1, q) * BigRational::from_integer(BigInt::from(checked_square(low)?));
    if distinguished {
        s += 1;
    }
    let claimed_gap = floor / BigRational::from_integer(BigInt::from(s));
    let planted = sys.witness.as_ref().map(|x| {
        let upper: Vec<Felem> = upper_pairs(n).iter().map(|&(i, j)| Felem(u32::from(x[i] && x[j]))).collect();
        let mut v = embed(f, &g, &upper);
        if let Some(z) = dist_var {
            v.push(Felem(u32::from(x[z])));
        }
        v
    });
    Ok(MdpInstance {
        field: f.clone(),
        basis,
        s,
        claimed_gap,
        planted,
        distinguished,
        provenance: Provenance { epsilon: code.meta.epsilon.clone(), tensor_t: 1, ..Provenance::default() },
    })
}

/// `V = {G X G^T : Q_l(X) = 0, X symmetric}` with `s = high^2` and claimed gap
/// `(1 + 1/q) low^2 / high^2`, where `[low, high]` is the code's certified
/// weight range. Only the first `n_vars` generator columns are used.
pub fn quad_to_mdp(sys: &QuadSystem<FieldSpec>, code: &LinearCode) -> Result<MdpInstance> {
    build_mdp(sys, code, false)
}

/// As [`quad_to_mdp`], with `X[z][z]` of the distinguished variable `z`
/// appended to every vector and `s` increased by one.
pub fn quad_to_mdp_distinguished(sys: &QuadSystem<FieldSpec>, code: &LinearCode) -> Result<MdpInstance> {
    build_mdp(sys, code, true)
}

/// Parametrizes `{x in V : x_last = 1}` as an offset plus a homogeneous basis.
pub fn mdp_to_ncp(inst: &MdpInstance) -> Result<NcpInstance> {
    if !inst.distinguished {
        return Err(Error::InvalidInput("the nearest-codeword reduction needs a distinguished coordinate".into()));
    }
    let f = &inst.field;
    let last = inst.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty instance".into()))?;
    let cols = inst.basis.columns();
    let pivot = cols
        .iter()
        .position(|c| c[last] != Felem::ZERO)
        .ok_or_else(|| Error::Degenerate("no vector of V has last coordinate 1".into()))?;
    let scale = f.inv(&cols[pivot][last])?;
    let offset: Vec<Felem> = cols[pivot].iter().map(|v| f.mul(v, &scale)).collect();
    let rest: Vec<Vec<Felem>> = cols
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, c)| {
            let t = c[last];
            c.iter().zip(&offset).map(|(a, o)| f.sub(a, &f.mul(&t, o))).collect()
        })
        .collect();
    Ok(NcpInstance {
        field: f.clone(),
        offset,
        basis: Matrix::from_columns(inst.len(), &rest)?,
        s: inst.s,
        claimed_gap: inst.claimed_gap.clone(),
        planted: inst.planted.clone(),
        provenance: inst.provenance.clone(),
    })
}

/// Encodes `sys` over the reals with the gadget `ker(R)`, projection `T`.
///
/// Unknowns are `vec(Y)` in row order followed by `z`. Rows of `M`: every row
/// and every column of `Y` lies in `ker(R)`; `Y` is symmetric; `k z` equals the
/// trace of `Y`; and `Q_l(T Y T^T) = b_l z` for each equation. Every row is
/// scaled to primitive integers. `s = k^2 + 1` and the claimed gap is
/// `d2 d / k^2` from the certificate.
pub fn quad_to_real_mdp(
    sys: &QuadSystem<Rationals>,
    gadget: &RademacherGadget,
    cert: &GadgetCert,
    budget: &Budget,
) -> Result<RealInstance> {
    if sys.has_linear_terms() {
        return Err(Error::InvalidInput("linear terms must be homogenized before the real reduction".into()));
    }
    let (Some(d), Some(d2)) = (cert.d_exact, cert.d2_exact) else {
        return Err(Error::NotCertified("the gadget's d and d2 are not certified".into()));
    };
    if sys.n_vars > gadget.n() {
        return Err(Error::DimensionMismatch(format!(
            "gadget projects onto {} coordinates, the system has {} variables",
            gadget.n(),
            sys.n_vars
        )));
    }
    let n_cols = gadget.len();
    let k = gadget.k;
    let width = n_cols * n_cols + 1;
    let z = n_cols * n_cols;
    let y = |i: usize, j: usize| i * n_cols + j;
    let r = &gadget.r;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let zero_row = || vec![BigRational::zero(); width];
    let q_int = |v: &BigInt| BigRational::from_integer(v.clone());

    for i in 0..n_cols {
        for a in 0..r.rows() {
            let mut row = zero_row();
            for j in 0..n_cols {
                row[y(i, j)] = q_int(r.get(a, j));
            }
            rows.push(row);
        }
    }
    for j in 0..n_cols {
        for a in 0..r.rows() {
            let mut row = zero_row();
            for i in 0..n_cols {
                row[y(i, j)] = q_int(r.get(a, i));
            }
            rows.push(row);
        }
    }
    for i in 0..n_cols {
        for j in i + 1..n_cols {
            let mut row = zero_row();
            row[y(i, j)] = BigRational::one();
            row[y(j, i)] = -BigRational::one();
            rows.push(row);
        }
    }
    let mut trace = zero_row();
    trace[z] = BigRational::from_integer(BigInt::from(k));
    for i in 0..n_cols {
        trace[y(i, i)] = -BigRational::one();
    }
    rows.push(trace);

    let n = sys.n_vars;
    for eq in &sys.equations {
        let mut row = zero_row();
        // Coefficient of Y[i][j] is (T^T Q T)[i][j].
        for a in 0..n {
            for b in 0..n {
                let qab = eq.q.get(a, b);
                if qab.is_zero() {
                    continue;
                }
                for i in (0..n_cols).filter(|&i| gadget.t.get(a, i).is_one()) {
                    for j in (0..n_cols).filter(|&j| gadget.t.get(b, j).is_one()) {
                        row[y(i, j)] += qab;
                    }
                }
            }
        }
        row[z] = -eq.b.clone();
        rows.push(row);
    }
    let m = integerize_rows(&Matrix::from_rows(rows)?);

    let mut notes = Vec::new();
    let planted = match &sys.witness {
        None => None,
        Some(x) => match lift_witness(gadget, x, budget)? {
            Some(yv) => {
                let mut v: Vec<bool> = Vec::with_capacity(width);
                for i in 0..n_cols {
                    for j in 0..n_cols {
                        v.push(yv[i] && yv[j]);
                    }
                }
                v.push(true);
                Some(v)
            }
            None => {
                notes.push("no weight-k Boolean codeword projects onto the witness; planted solution omitted".to_string());
                None
            }
        },
    };
    let s = (k as u64).checked_mul(k as u64).and_then(|v| v.checked_add(1)).ok_or_else(|| Error::SizeOverflow("k^2 + 1".into()))?;
    let claimed_gap = BigRational::new(BigInt::from(d2 * d), BigInt::from(k * k));
    Ok(RealInstance {
        m,
        s,
        claimed_gap,
        planted,
        notes,
        provenance: Provenance { gadget_seed: gadget.seed, epsilon: Some(gadget.params.epsilon.clone()), tensor_t: 1, ..Provenance::default() },
    })
}

fn pow_checked(base: u64, t: u32) -> Result<u64> {
    base.checked_pow(t).ok_or_else(|| Error::SizeOverflow(format!("{base}^{t}")))
}

fn pow_rational(r: &BigRational, t: u32) -> BigRational {
    (0..t).fold(BigRational::one(), |acc, _| acc * r)
}

const MAX_TENSOR_ENTRIES: u128 = 1 << 30;

/// `V^{(x)t}` for a finite-field instance: basis, planted vector and threshold
/// are all tensor powers.
pub fn tensor_mdp(inst: &MdpInstance, t: u32) -> Result<MdpInstance> {
    if t == 0 {
        return Err(Error::InvalidInput("tensor exponent must be at least 1".into()));
    }
    let size = crate::budget::saturating_pow((inst.len() * inst.dim()) as u128, u64::from(t));
    if size > MAX_TENSOR_ENTRIES {
        return Err(Error::SizeOverflow(format!("tensor power {t} of a {}x{} basis", inst.len(), inst.dim())));
    }
    let f = &inst.field;
    let mut basis = inst.basis.clone();
    let mut planted = inst.planted.clone();
    for _ in 1..t {
        basis = kronecker(f, &basis, &inst.basis);
        planted = match (planted, &inst.planted) {
            (Some(a), Some(b)) => Some(kron_vec(&a, b, |x, y| f.mul(x, y))),
            _ => None,
        };
    }
    let mut provenance = inst.provenance.clone();
    provenance.tensor_t = inst.provenance.tensor_t.saturating_mul(t);
    Ok(MdpInstance {
        field: f.clone(),
        basis,
        s: pow_checked(inst.s, t)?,
        claimed_gap: pow_rational(&inst.claimed_gap, t),
        planted,
        distinguished: false,
        provenance,
    })
}

/// `ker(M)^{(x)t}`, described by `M_t = [M (x) I ; I (x) M_{t-1}]`.
pub fn tensor_real(inst: &RealInstance, t: u32) -> Result<RealInstance> {
    if t == 0 {
        return Err(Error::InvalidInput("tensor exponent must be at least 1".into()));
    }
    let n = inst.m.cols();
    let rows_bound = crate::budget::saturating_pow(n as u128, u64::from(t)) * (t as u128) * inst.m.rows() as u128;
    if rows_bound.saturating_mul(crate::budget::saturating_pow(n as u128, u64::from(t))) > MAX_TENSOR_ENTRIES {
        return Err(Error::SizeOverflow(format!("tensor power {t} of a {}x{n} constraint matrix", inst.m.rows())));
    }
    let id = |k: usize| Matrix::identity_with(k, BigInt::zero(), BigInt::one());
    let mut m = inst.m.clone();
    let mut planted = inst.planted.clone();
    let mut width = n;
    for _ in 1..t {
        let top = kronecker_z(&inst.m, &id(width));
        let bottom = kronecker_z(&id(n), &m);
        m = top.vstack(&bottom)?;
        width *= n;
        planted = match (planted, &inst.planted) {
            (Some(a), Some(b)) => Some(kron_vec(b, &a, |x, y| *x && *y)),
            _ => None,
        };
    }
    let mut provenance = inst.provenance.clone();
    provenance.tensor_t = inst.provenance.tensor_t.saturating_mul(t);
    Ok(RealInstance {
        m,
        s: pow_checked(inst.s, t)?,
        claimed_gap: pow_rational(&inst.claimed_gap, t),
        planted,
        notes: inst.notes.clone(),
        provenance,
    })
}

/// The lattice `ker(M) cap Z^n` in Hermite normal form, for the `l_p` norm.
pub fn real_to_svp(inst: &RealInstance, p: u32) -> SvpInstance {
    SvpInstance {
        lattice_basis: hnf_integer_kernel(&inst.m),
        s: inst.s,
        p,
        claimed_gap: inst.claimed_gap.clone(),
        planted: inst.planted.as_ref().map(|v| v.iter().map(|&b| BigInt::from(u8::from(b))).collect()),
        provenance: inst.provenance.clone(),
    }
}

/// `M v` for a Boolean `v`.
pub fn real_residual(m: &MatZ, v: &[bool]) -> Result<Vec<BigInt>> {
    if v.len() != m.cols() {
        return Err(Error::LengthMismatch { expected: m.cols(), got: v.len() });
    }
    Ok((0..m.rows())
        .map(|i| m.row(i).iter().zip(v).filter(|(_, &b)| b).map(|(a, _)| a).sum())
        .collect())
}

/// Whether `v` lies in the column span of the instance basis.
pub fn mdp_contains(inst: &MdpInstance, v: &[Felem]) -> Result<bool> {
    if v.len() != inst.len() {
        return Err(Error::LengthMismatch { expected: inst.len(), got: v.len() });
    }
    let f = &inst.field;
    let mut cols = inst.basis.columns();
    cols.push(v.to_vec());
    let aug = Matrix::from_columns(inst.len(), &cols)?;
    Ok(crate::matrix::rank(f, &aug) == inst.dim())
}

/// Whether `v` lies in `offset + span(basis)`.
pub fn ncp_contains(inst: &NcpInstance, v: &[Felem]) -> Result<bool> {
    if v.len() != inst.offset.len() {
        return Err(Error::LengthMismatch { expected: inst.offset.len(), got: v.len() });
    }
    let f = &inst.field;
    let diff: Vec<Felem> = v.iter().zip(&inst.offset).map(|(a, b)| f.sub(a, b)).collect();
    let mut cols = inst.basis.columns();
    let r = crate::matrix::rank(f, &Matrix::from_columns(inst.offset.len(), &cols)?);
    cols.push(diff);
    Ok(crate::matrix::rank(f, &Matrix::from_columns(inst.offset.len(), &cols)?) == r)
}
