//! Brute-force solvers used to certify reduction outputs.
//!
//! Each solver either covers its whole search space (`exhausted = true`,
//! making the optimum a certificate) or reports a floor below which nothing
//! exists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::budget::{saturating_pow, Budget};
use crate::circuit::{quad_eval, QuadSystem};
use crate::codes::enumerate::min_weight_word;
use crate::error::{Error, Result};
use crate::field::{Felem, Field, FieldSpec, Rationals};
use crate::matrix::support::{kernel_on_support, min_support, SupportSearch};
use crate::matrix::{solve_integer_combination, MatZ};
use crate::reduce::{MdpInstance, NcpInstance, SvpInstance};

/// A witness vector in whatever domain the oracle searched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Fq(Vec<Felem>),
    Z(Vec<BigInt>),
}

impl Witness {
    pub fn weight(&self) -> usize {
        match self {
            Witness::Fq(v) => v.iter().filter(|x| **x != Felem::ZERO).count(),
            Witness::Z(v) => v.iter().filter(|x| !x.is_zero()).count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Exact optimum, when one was found within the searched range.
    pub optimum: Option<usize>,
    /// No solution has sparsity below this value.
    pub floor: usize,
    pub witness: Option<Witness>,
    pub method: String,
    /// True when the searched range covered every candidate.
    pub exhausted: bool,
}

/// Sparsest nonzero vector of the instance subspace, by enumerating all of it.
pub fn sparsest_codeword_fq(inst: &MdpInstance, budget: &Budget) -> Result<OracleReport> {
    let gens = inst.basis.columns();
    let found = min_weight_word(&inst.field, inst.len(), &gens, None, budget)?;
    Ok(match found {
        Some(w) => OracleReport {
            optimum: Some(w.weight),
            floor: w.weight,
            witness: Some(Witness::Fq(w.word)),
            method: "message-enumeration".into(),
            exhausted: true,
        },
        None => OracleReport { optimum: None, floor: inst.len() + 1, witness: None, method: "message-enumeration".into(), exhausted: true },
    })
}

/// Smallest support of a nonzero vector in `ker(M)`, searched up to `bound`.
pub fn sparsest_in_kernel_real(m: &MatZ, bound: usize, budget: &Budget) -> Result<OracleReport> {
    let method = "support-enumeration".to_string();
    match min_support(m, 1, bound, budget)? {
        SupportSearch::Found { size, support } => {
            let v = kernel_on_support(m, &support)?.into_iter().next().expect("kernel vector on a dependent support");
            Ok(OracleReport { optimum: Some(size), floor: size, witness: Some(Witness::Z(v)), method, exhausted: true })
        }
        SupportSearch::AboveBound { bound } => Ok(OracleReport {
            optimum: None,
            floor: bound + 1,
            witness: None,
            method,
            exhausted: bound >= m.cols(),
        }),
    }
}

/// Sparsest point of the affine subspace `offset + span(basis)`.
pub fn ncp_solve_bruteforce(inst: &NcpInstance, budget: &Budget) -> Result<OracleReport> {
    let gens = inst.basis.columns();
    let w = min_weight_word(&inst.field, inst.offset.len(), &gens, Some(&inst.offset), budget)?
        .ok_or_else(|| Error::Degenerate("empty affine set".into()))?;
    Ok(OracleReport {
        optimum: Some(w.weight),
        floor: w.weight,
        witness: Some(Witness::Fq(w.word)),
        method: "affine-enumeration".into(),
        exhausted: true,
    })
}

/// Outcome of a quadratic-system search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadVerdict<E> {
    Satisfiable(Vec<E>),
    /// Every assignment in the searched domain fails.
    Unsat,
    /// No Boolean solution; over the reals this does not rule out other solutions.
    NoBooleanSolution { negative_sum_of_squares: bool },
}

/// Exhausts `F_q^n`, returning the first solution in lexicographic order of
/// element indices, first variable most significant. The zero vector is
/// skipped for homogeneous systems.
pub fn quad_solve_bruteforce(sys: &QuadSystem<FieldSpec>, budget: &Budget) -> Result<QuadVerdict<Felem>> {
    let q = sys.field.order();
    let n = sys.n_vars;
    budget.check(saturating_pow(u128::from(q), n as u64))?;
    let mut x = vec![Felem::ZERO; n];
    loop {
        let trivial = sys.homogeneous && x.iter().all(|v| *v == Felem::ZERO);
        if !trivial && quad_eval(sys, &x)?.iter().all(|r| *r == Felem::ZERO) {
            return Ok(QuadVerdict::Satisfiable(x));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(QuadVerdict::Unsat);
            }
            i -= 1;
            if x[i].0 + 1 < q {
                x[i] = Felem(x[i].0 + 1);
                break;
            }
            x[i] = Felem::ZERO;
        }
    }
}

/// Searches `{0,1}^n` for a solution of a real system. A system whose single
/// equation is `x^T Q x = b` with `Q` diagonal, nonnegative and `b < 0` is
/// flagged as having no real solution at all.
pub fn quad_solve_boolean_real(sys: &QuadSystem<Rationals>, budget: &Budget) -> Result<QuadVerdict<BigRational>> {
    let n = sys.n_vars;
    budget.check(saturating_pow(2, n as u64))?;
    let f = &sys.field;
    for mask in 0u128..(1u128 << n) {
        let x: Vec<BigRational> = (0..n).map(|i| if (mask >> (n - 1 - i)) & 1 == 1 { f.one() } else { f.zero() }).collect();
        if quad_eval(sys, &x)?.iter().all(Zero::is_zero) {
            return Ok(QuadVerdict::Satisfiable(x));
        }
    }
    Ok(QuadVerdict::NoBooleanSolution { negative_sum_of_squares: negative_sum_of_squares(sys) })
}

fn negative_sum_of_squares(sys: &QuadSystem<Rationals>) -> bool {
    let [eq] = sys.equations.as_slice() else {
        return false;
    };
    let n = sys.n_vars;
    let diagonal_psd = (0..n).all(|i| (0..n).all(|j| if i == j { !eq.q.get(i, i).is_negative() } else { eq.q.get(i, j).is_zero() }));
    diagonal_psd && eq.linear.iter().all(Zero::is_zero) && eq.b.is_negative()
}

/// `||x||_p^p` for a lattice vector, after checking membership. `p = 0` counts
/// nonzero entries.
pub fn svp_norm_check(inst: &SvpInstance, x: &[BigInt]) -> Result<BigInt> {
    if x.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("the zero vector is not an SVP witness".into()));
    }
    if solve_integer_combination(&inst.lattice_basis, x)?.is_none() {
        return Err(Error::NotAMember("vector is not in the lattice".into()));
    }
    Ok(norm_pp(x, inst.p))
}

pub fn norm_pp(x: &[BigInt], p: u32) -> BigInt {
    if p == 0 {
        return BigInt::from(x.iter().filter(|v| !v.is_zero()).count());
    }
    x.iter().map(|v| num_traits::pow(v.abs(), p as usize)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{circuit_to_quad, circuit_to_quad_with_witness, parse_circuit, QuadEquation};
    use crate::codes::{hadamard_code, min_distance_exhaustive};
    use crate::field::make_field;
    use crate::matrix::Matrix;
    use crate::reduce::{mdp_to_ncp, quad_to_mdp, quad_to_mdp_distinguished};

    fn f2() -> FieldSpec {
        make_field(2, 1).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    fn z(rows: &[&[i64]]) -> MatZ {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn passthrough_oracles() {
        let c = parse_circuit("in g1\nout g1").unwrap();
        let sys = circuit_to_quad_with_witness(&c, f2(), true, &b()).unwrap();
        assert_eq!(quad_solve_bruteforce(&sys, &b()).unwrap(), QuadVerdict::Satisfiable(vec![Felem(1), Felem(1)]));
        let code = hadamard_code(&f2(), 2).unwrap();
        let inst = quad_to_mdp(&sys, &code).unwrap();
        let rep = sparsest_codeword_fq(&inst, &b()).unwrap();
        assert_eq!(rep.optimum, Some(4));
        assert!(rep.exhausted);
        let dist = quad_to_mdp_distinguished(&sys, &code).unwrap();
        let ncp = ncp_solve_bruteforce(&mdp_to_ncp(&dist).unwrap(), &b()).unwrap();
        assert_eq!(ncp.optimum, Some(5));
        assert!(ncp.optimum >= sparsest_codeword_fq(&dist, &b()).unwrap().optimum);
    }

    #[test]
    fn unsat_circuit() {
        let c = parse_circuit("in g1 / not g2 g1 / and g3 g1 g2 / out g3").unwrap();
        let sys = circuit_to_quad(&c, f2(), true);
        assert_eq!(quad_solve_bruteforce(&sys, &b()).unwrap(), QuadVerdict::Unsat);
        let affine = circuit_to_quad(&c, f2(), false);
        assert_eq!(quad_solve_bruteforce(&affine, &b()).unwrap(), QuadVerdict::Unsat);
    }

    #[test]
    fn agrees_with_code_distance() {
        let mut code = hadamard_code(&make_field(3, 1).unwrap(), 2).unwrap();
        let d = min_distance_exhaustive(&mut code, &b()).unwrap().value;
        let inst = MdpInstance {
            field: code.field.clone(),
            basis: code.g.clone(),
            s: 0,
            claimed_gap: BigRational::zero(),
            planted: None,
            distinguished: false,
            provenance: Default::default(),
        };
        assert_eq!(sparsest_codeword_fq(&inst, &b()).unwrap().optimum, Some(d));
    }

    #[test]
    fn real_kernel_examples() {
        let m = z(&[&[1, 0, 1], &[0, 0, 2]]);
        let rep = sparsest_in_kernel_real(&m, 3, &b()).unwrap();
        assert_eq!(rep.optimum, Some(1));
        assert_eq!(rep.witness, Some(Witness::Z(vec![BigInt::zero(), BigInt::from(1), BigInt::zero()])));
        let full = z(&[&[1, 0], &[0, 1]]);
        let rep = sparsest_in_kernel_real(&full, 2, &b()).unwrap();
        assert_eq!((rep.optimum, rep.floor, rep.exhausted), (None, 3, true));
    }

    #[test]
    fn real_boolean_search() {
        let mut q = Matrix::filled(1, 1, BigRational::zero());
        q.set(0, 0, BigRational::from_integer(1.into()));
        let eq = |b: i64| QuadEquation { q: q.clone(), linear: vec![BigRational::zero()], b: BigRational::from_integer(b.into()) };
        let yes = QuadSystem::new(Rationals, 1, vec![eq(1)], None).unwrap();
        assert!(matches!(quad_solve_boolean_real(&yes, &b()).unwrap(), QuadVerdict::Satisfiable(_)));
        let no = QuadSystem::new(Rationals, 1, vec![eq(-1)], None).unwrap();
        assert_eq!(quad_solve_boolean_real(&no, &b()).unwrap(), QuadVerdict::NoBooleanSolution { negative_sum_of_squares: true });
        let two = QuadSystem::new(Rationals, 1, vec![eq(2)], None).unwrap();
        assert_eq!(quad_solve_boolean_real(&two, &b()).unwrap(), QuadVerdict::NoBooleanSolution { negative_sum_of_squares: false });
    }

    #[test]
    fn norms() {
        let x: Vec<BigInt> = [1, 0, -2].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(norm_pp(&x, 0), BigInt::from(2));
        assert_eq!(norm_pp(&x, 1), BigInt::from(3));
        assert_eq!(norm_pp(&x, 2), BigInt::from(5));
        assert_eq!(norm_pp(&x, 3), BigInt::from(9));
        let inst = SvpInstance {
            lattice_basis: z(&[&[1], &[-1]]),
            s: 2,
            p: 2,
            claimed_gap: BigRational::zero(),
            planted: None,
            provenance: Default::default(),
        };
        assert_eq!(svp_norm_check(&inst, &[BigInt::from(2), BigInt::from(-2)]).unwrap(), BigInt::from(8));
        assert!(matches!(svp_norm_check(&inst, &[BigInt::from(1), BigInt::from(1)]), Err(Error::NotAMember(_))));
        assert!(svp_norm_check(&inst, &[BigInt::zero(), BigInt::zero()]).is_err());
    }
}
