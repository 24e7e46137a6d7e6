//! Boolean circuits and their encoding as systems of quadratic equations.
//!
//! Each gate value `y_i` becomes a variable `x_i`; a homogenizing variable `z`
//! (last, and equal to 1 in every Boolean witness) keeps all equations
//! homogeneous:
//!
//! ```text
//! Booleanity   x_i^2 - x_i z = 0          for every gate, inputs included
//! AND          x_k^2 - x_i x_j = 0
//! OR           x_k^2 - z x_i - z x_j + x_i x_j = 0
//! NOT          x_k^2 + x_i^2 - z^2 = 0
//! output       x_k^2 - z^2 = 0
//! ```
//!
//! The non-homogeneous variant substitutes `z = 1`, turning `x_i z` into a
//! linear term and `z^2` into a constant moved to the right-hand side.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Input,
    And,
    Or,
    Not,
}

impl GateKind {
    fn arity(self) -> usize {
        match self {
            GateKind::Input => 0,
            GateKind::Not => 1,
            GateKind::And | GateKind::Or => 2,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            GateKind::Input => "in",
            GateKind::And => "and",
            GateKind::Or => "or",
            GateKind::Not => "not",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub name: String,
    pub kind: GateKind,
    /// Indices of earlier gates feeding this one.
    pub inputs: Vec<usize>,
}

/// A fan-in-2 circuit with gates in topological order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub gates: Vec<Gate>,
    pub output: usize,
}

impl Circuit {
    /// Validates topology and fan-in.
    pub fn new(gates: Vec<Gate>, output: usize) -> Result<Self> {
        for (k, g) in gates.iter().enumerate() {
            if g.inputs.len() != g.kind.arity() {
                return Err(Error::InvalidInput(format!(
                    "gate {} ({}) takes {} inputs, got {}",
                    g.name,
                    g.kind.keyword(),
                    g.kind.arity(),
                    g.inputs.len()
                )));
            }
            if let Some(&bad) = g.inputs.iter().find(|&&i| i >= k) {
                return Err(Error::InvalidInput(format!("gate {} refers to gate {bad}, which is not earlier", g.name)));
            }
        }
        if output >= gates.len() {
            return Err(Error::IndexOutOfRange { index: output, len: gates.len() });
        }
        Ok(Circuit { gates, output })
    }

    pub fn n_inputs(&self) -> usize {
        self.gates.iter().filter(|g| g.kind == GateKind::Input).count()
    }

    pub fn n_gates(&self) -> usize {
        self.gates.len()
    }

    fn n_logic(&self) -> usize {
        self.gates.len() - self.n_inputs()
    }

    /// Values of every gate under `assignment` (inputs in order of appearance).
    pub fn gate_values(&self, assignment: &[bool]) -> Result<Vec<bool>> {
        if assignment.len() != self.n_inputs() {
            return Err(Error::LengthMismatch { expected: self.n_inputs(), got: assignment.len() });
        }
        let mut next_input = assignment.iter();
        let mut vals: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g.kind {
                GateKind::Input => *next_input.next().expect("counted"),
                GateKind::Not => !vals[g.inputs[0]],
                GateKind::And => vals[g.inputs[0]] && vals[g.inputs[1]],
                GateKind::Or => vals[g.inputs[0]] || vals[g.inputs[1]],
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// Hex SHA-256 of the canonical text rendering.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            write!(f, "{} {}", g.kind.keyword(), g.name)?;
            for &i in &g.inputs {
                write!(f, " {}", self.gates[i].name)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "out {}", self.gates[self.output].name)
    }
}

/// Parses the line format `in <id>`, `and <id> <a> <b>`, `or <id> <a> <b>`,
/// `not <id> <a>`, `out <id>`. A `/` separates several gates on one line and
/// `#` starts a comment.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut gates: Vec<Gate> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut output: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split('/') {
            let toks: Vec<&str> = stmt.split_whitespace().collect();
            let Some((&kw, args)) = toks.split_first() else { continue };
            if kw == "out" {
                if args.len() != 1 {
                    return Err(err(format!("`out` takes one gate id, got {}", args.len())));
                }
                if output.is_some() {
                    return Err(err("more than one output".into()));
                }
                let &i = index.get(args[0]).ok_or_else(|| err(format!("undefined gate {}", args[0])))?;
                output = Some(i);
                continue;
            }
            let kind = match kw {
                "in" => GateKind::Input,
                "and" => GateKind::And,
                "or" => GateKind::Or,
                "not" => GateKind::Not,
                other => return Err(err(format!("unknown gate kind {other:?}"))),
            };
            let Some((&name, operands)) = args.split_first() else {
                return Err(err(format!("`{kw}` needs a gate id")));
            };
            if !is_identifier(name) {
                return Err(err(format!("bad gate id {name:?}")));
            }
            if operands.len() != kind.arity() {
                return Err(err(format!("`{kw}` takes {} operands, got {}", kind.arity(), operands.len())));
            }
            if index.contains_key(name) {
                return Err(err(format!("gate {name} defined twice")));
            }
            let mut inputs = Vec::with_capacity(operands.len());
            for &op in operands {
                if op == name {
                    return Err(err(format!("gate {name} refers to itself")));
                }
                let &i = index.get(op).ok_or_else(|| err(format!("undefined gate {op}")))?;
                inputs.push(i);
            }
            index.insert(name.to_string(), gates.len());
            gates.push(Gate { name: name.to_string(), kind, inputs });
        }
    }
    let output = output.ok_or(Error::Parse { line: text.lines().count(), msg: "no `out` line".into() })?;
    Circuit::new(gates, output)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn eval_circuit(c: &Circuit, assignment: &[bool]) -> Result<bool> {
    Ok(c.gate_values(assignment)?[c.output])
}

/// Lexicographically first satisfying assignment (inputs as bits, first input
/// most significant), by exhaustive search.
pub fn find_satisfying_assignment(c: &Circuit, budget: &Budget) -> Result<Option<Vec<bool>>> {
    let n = c.n_inputs();
    budget.check(saturating_pow(2, n as u64))?;
    let total: u128 = 1u128 << n;
    for mask in 0..total {
        let a: Vec<bool> = (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect();
        if eval_circuit(c, &a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// One quadratic equation `x^T Q x + c . x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadEquation<E> {
    pub q: Matrix<E>,
    pub linear: Vec<E>,
    pub b: E,
}

impl<E> QuadEquation<E> {
    pub fn has_linear<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.linear.iter().any(|c| !f.is_zero(c))
    }
}

/// A system of quadratic equations over `F`.
///
/// Off-diagonal monomials `c x_i x_j` are stored as `c/2` in both `Q[i,j]` and
/// `Q[j,i]` when 2 is invertible; in characteristic 2 the whole coefficient
/// sits in the upper triangle `Q[min, max]`. Either way `Q(X) = sum Q[i,j] X[i,j]`
/// evaluated at a symmetric `X = x x^T` gives the polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSystem<F: Field> {
    pub field: F,
    pub n_vars: usize,
    pub equations: Vec<QuadEquation<F::Elem>>,
    pub homogeneous: bool,
    /// Variable equal to 1 in every Boolean witness.
    pub distinguished: Option<usize>,
    /// A known Boolean solution, when one is carried along.
    pub witness: Option<Vec<bool>>,
}

/// A polynomial built from monomials before it is packed into a [`QuadEquation`].
#[derive(Clone, Debug, Default)]
struct Poly {
    quad: Vec<(usize, usize, i64)>,
    linear: Vec<(usize, i64)>,
    constant: i64,
}

impl Poly {
    fn sq(mut self, i: usize, c: i64) -> Self {
        self.quad.push((i, i, c));
        self
    }
    fn mono(mut self, i: usize, j: usize, c: i64) -> Self {
        self.quad.push((i, j, c));
        self
    }
}

impl<F: Field> QuadSystem<F> {
    /// Checks shapes and the homogeneous flag.
    pub fn new(
        field: F,
        n_vars: usize,
        equations: Vec<QuadEquation<F::Elem>>,
        distinguished: Option<usize>,
    ) -> Result<Self> {
        for eq in &equations {
            if eq.q.rows() != n_vars || eq.q.cols() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient matrix is {}x{}, expected {n_vars}x{n_vars}",
                    eq.q.rows(),
                    eq.q.cols()
                )));
            }
            if eq.linear.len() != n_vars {
                return Err(Error::LengthMismatch { expected: n_vars, got: eq.linear.len() });
            }
        }
        if let Some(d) = distinguished {
            if d >= n_vars {
                return Err(Error::IndexOutOfRange { index: d, len: n_vars });
            }
        }
        let homogeneous = equations.iter().all(|e| field.is_zero(&e.b) && !e.has_linear(&field));
        Ok(QuadSystem { field, n_vars, equations, homogeneous, distinguished, witness: None })
    }

    /// Builds an equation from monomials `(i, j, c)` meaning `c x_i x_j`.
    pub fn equation_from_terms(&self, terms: &[(usize, usize, F::Elem)], linear: Vec<F::Elem>, b: F::Elem) -> QuadEquation<F::Elem> {
        pack_quadratic(&self.field, self.n_vars, terms, linear, b)
    }

    /// Attaches a Boolean witness after checking that it solves the system.
    pub fn with_witness(mut self, witness: Vec<bool>) -> Result<Self> {
        let x: Vec<F::Elem> = witness.iter().map(|&b| if b { self.field.one() } else { self.field.zero() }).collect();
        let res = quad_eval(&self, &x)?;
        if let Some(l) = res.iter().position(|r| !self.field.is_zero(r)) {
            return Err(Error::InvalidInput(format!("witness violates equation {l}")));
        }
        self.witness = Some(witness);
        Ok(self)
    }

    pub fn has_linear_terms(&self) -> bool {
        self.equations.iter().any(|e| e.has_linear(&self.field))
    }

    /// Replaces every linear term `c x_i` by `c x_i w` for a fresh last
    /// variable `w`, and adds `w^2 = 1`. Solutions with `w = 1` are exactly the
    /// solutions of the original system; solutions with `w = -1` are their
    /// negations. A carried witness is extended with `w = 1`.
    pub fn homogenize_linear(&self) -> QuadSystem<F> {
        let n = self.n_vars + 1;
        let w = self.n_vars;
        let f = &self.field;
        let mut equations = Vec::with_capacity(self.equations.len() + 1);
        for eq in &self.equations {
            let mut q = Matrix::filled(n, n, f.zero());
            for i in 0..self.n_vars {
                for j in 0..self.n_vars {
                    q.set(i, j, eq.q.get(i, j).clone());
                }
            }
            for (i, c) in eq.linear.iter().enumerate() {
                if !f.is_zero(c) {
                    add_monomial(f, &mut q, i, w, c);
                }
            }
            equations.push(QuadEquation { q, linear: vec![f.zero(); n], b: eq.b.clone() });
        }
        let mut q = Matrix::filled(n, n, f.zero());
        q.set(w, w, f.one());
        equations.push(QuadEquation { q, linear: vec![f.zero(); n], b: f.one() });
        let witness = self.witness.as_ref().map(|x| {
            let mut x = x.clone();
            x.push(true);
            x
        });
        QuadSystem { field: self.field.clone(), n_vars: n, equations, homogeneous: false, distinguished: None, witness }
    }
}

fn add_monomial<F: Field>(f: &F, q: &mut Matrix<F::Elem>, i: usize, j: usize, c: &F::Elem) {
    if i == j {
        let v = f.add(q.get(i, i), c);
        q.set(i, i, v);
        return;
    }
    let two = f.from_i64(2);
    if f.is_zero(&two) {
        let (a, b) = (i.min(j), i.max(j));
        let v = f.add(q.get(a, b), c);
        q.set(a, b, v);
    } else {
        let half = f.div(c, &two).expect("2 is invertible");
        let v = f.add(q.get(i, j), &half);
        q.set(i, j, v);
        let v = f.add(q.get(j, i), &half);
        q.set(j, i, v);
    }
}

fn pack_quadratic<F: Field>(
    f: &F,
    n: usize,
    terms: &[(usize, usize, F::Elem)],
    linear: Vec<F::Elem>,
    b: F::Elem,
) -> QuadEquation<F::Elem> {
    let mut q = Matrix::filled(n, n, f.zero());
    for (i, j, c) in terms {
        add_monomial(f, &mut q, *i, *j, c);
    }
    QuadEquation { q, linear, b }
}

/// Encodes `c` as a quadratic system over `field`.
///
/// Homogeneous mode uses variables `x_1..x_g, z` with `z` distinguished;
/// non-homogeneous mode substitutes `z = 1` and uses `x_1..x_g` only. Equations
/// come in the order: Booleanity for every gate, logic gates in topological
/// order, output.
pub fn circuit_to_quad<F: Field>(c: &Circuit, field: F, homogeneous: bool) -> QuadSystem<F> {
    let g = c.n_gates();
    let z = g;
    let mut polys: Vec<Poly> = Vec::with_capacity(g + c.n_logic() + 1);
    for i in 0..g {
        polys.push(Poly::default().sq(i, 1).mono(i, z, -1));
    }
    for (k, gate) in c.gates.iter().enumerate() {
        let p = match gate.kind {
            GateKind::Input => continue,
            GateKind::And => Poly::default().sq(k, 1).mono(gate.inputs[0], gate.inputs[1], -1),
            GateKind::Or => {
                let (i, j) = (gate.inputs[0], gate.inputs[1]);
                Poly::default().sq(k, 1).mono(z, i, -1).mono(z, j, -1).mono(i, j, 1)
            }
            GateKind::Not => Poly::default().sq(k, 1).sq(gate.inputs[0], 1).sq(z, -1),
        };
        polys.push(p);
    }
    polys.push(Poly::default().sq(c.output, 1).sq(z, -1));

    let n = if homogeneous { g + 1 } else { g };
    let equations = polys
        .into_iter()
        .map(|p| {
            let p = if homogeneous { p } else { substitute_one(p, z) };
            let terms: Vec<(usize, usize, F::Elem)> = p.quad.iter().map(|&(i, j, v)| (i, j, field.from_i64(v))).collect();
            let mut linear = vec![field.zero(); n];
            for &(i, v) in &p.linear {
                linear[i] = field.add(&linear[i], &field.from_i64(v));
            }
            pack_quadratic(&field, n, &terms, linear, field.from_i64(-p.constant))
        })
        .collect();
    QuadSystem {
        field,
        n_vars: n,
        equations,
        homogeneous,
        distinguished: homogeneous.then_some(z),
        witness: None,
    }
}

/// Sets variable `z` to 1: `x_i z` becomes linear, `z^2` becomes constant.
fn substitute_one(p: Poly, z: usize) -> Poly {
    let mut out = Poly { constant: p.constant, linear: p.linear, quad: Vec::new() };
    for (i, j, c) in p.quad {
        match (i == z, j == z) {
            (true, true) => out.constant += c,
            (true, false) => out.linear.push((j, c)),
            (false, true) => out.linear.push((i, c)),
            (false, false) => out.quad.push((i, j, c)),
        }
    }
    out
}

/// The Boolean witness of `circuit_to_quad` for an input assignment: gate
/// values, followed by `z = 1` in homogeneous mode.
pub fn boolean_witness(c: &Circuit, assignment: &[bool], homogeneous: bool) -> Result<Vec<bool>> {
    let mut w = c.gate_values(assignment)?;
    if homogeneous {
        w.push(true);
    }
    Ok(w)
}

/// Encodes `c` and attaches the witness of its first satisfying assignment, if any.
pub fn circuit_to_quad_with_witness<F: Field>(c: &Circuit, field: F, homogeneous: bool, budget: &Budget) -> Result<QuadSystem<F>> {
    let sys = circuit_to_quad(c, field, homogeneous);
    match find_satisfying_assignment(c, budget)? {
        Some(a) => sys.with_witness(boolean_witness(c, &a, homogeneous)?),
        None => Ok(sys),
    }
}

/// Residuals `Q_l(x x^T) + c_l . x - b_l`, one per equation.
pub fn quad_eval<F: Field>(sys: &QuadSystem<F>, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if x.len() != sys.n_vars {
        return Err(Error::LengthMismatch { expected: sys.n_vars, got: x.len() });
    }
    let f = &sys.field;
    Ok(sys
        .equations
        .iter()
        .map(|eq| {
            let mut acc = f.neg(&eq.b);
            for i in 0..sys.n_vars {
                if f.is_zero(&x[i]) {
                    continue;
                }
                for j in 0..sys.n_vars {
                    let qij = eq.q.get(i, j);
                    if f.is_zero(qij) || f.is_zero(&x[j]) {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(qij, &f.mul(&x[i], &x[j])));
                }
                if !f.is_zero(&eq.linear[i]) {
                    acc = f.add(&acc, &f.mul(&eq.linear[i], &x[i]));
                }
            }
            acc
        })
        .collect())
}

/// Hex SHA-256 of a system's canonical JSON form.
pub fn system_hash<F: Field>(sys: &QuadSystem<F>, render: impl Fn(&F::Elem) -> String) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={};h={};", sys.n_vars, sys.homogeneous));
    for eq in &sys.equations {
        for v in eq.q.entries().iter().chain(&eq.linear) {
            h.update(render(v));
            h.update(",");
        }
        h.update(format!("={};", render(&eq.b)));
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, Felem, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn passthrough() -> Circuit {
        parse_circuit("in g1 / out g1").unwrap()
    }

    fn contradiction() -> Circuit {
        parse_circuit("in g1\nnot g2 g1\nand g3 g1 g2\nout g3\n").unwrap()
    }

    fn bits(f: &crate::field::FieldSpec, v: &[u32]) -> Vec<Felem> {
        v.iter().map(|&x| f.elem(x).unwrap()).collect()
    }

    #[test]
    fn parse_examples() {
        let c = parse_circuit("in g1 / not g2 g1 / out g2").unwrap();
        assert_eq!(c.n_gates(), 2);
        assert!(!eval_circuit(&c, &[true]).unwrap());
        assert!(eval_circuit(&c, &[false]).unwrap());

        let c = parse_circuit("in g1 / and g2 g1 g1 / out g2").unwrap();
        assert!(eval_circuit(&c, &[true]).unwrap());

        assert!(matches!(parse_circuit("in g1\nnot g1 g2\nout g1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_circuit("not g1 g2"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_circuit("in a / and b a a a / out b").is_err());
        assert!(parse_circuit("in a / not b b / out b").is_err());
        assert!(parse_circuit("in a").is_err());
        assert!(parse_circuit("in a / out a / out a").is_err());
    }

    #[test]
    fn render_round_trips() {
        let c = contradiction();
        assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn eval_examples() {
        let c = contradiction();
        assert!(!eval_circuit(&c, &[false]).unwrap());
        assert!(!eval_circuit(&c, &[true]).unwrap());
        assert!(eval_circuit(&passthrough(), &[true]).unwrap());
        assert!(eval_circuit(&passthrough(), &[]).is_err());
        assert_eq!(find_satisfying_assignment(&c, &Budget::default()).unwrap(), None);
    }

    #[test]
    fn passthrough_homogeneous_over_f2() {
        let f2 = make_field(2, 1).unwrap();
        let sys = circuit_to_quad(&passthrough(), f2.clone(), true);
        assert_eq!(sys.n_vars, 2);
        assert_eq!(sys.equations.len(), 2);
        assert_eq!(sys.distinguished, Some(1));
        assert!(sys.homogeneous);
        assert_eq!(quad_eval(&sys, &bits(&f2, &[1, 1])).unwrap(), bits(&f2, &[0, 0]));
        assert_eq!(quad_eval(&sys, &bits(&f2, &[1, 0])).unwrap(), bits(&f2, &[1, 1]));
        assert_eq!(quad_eval(&sys, &bits(&f2, &[0, 0])).unwrap(), bits(&f2, &[0, 0]));
        // Char 2 keeps x1*z in the upper triangle.
        assert_eq!(sys.equations[0].q.get(0, 1), &Felem(1));
        assert_eq!(sys.equations[0].q.get(1, 0), &Felem(0));
    }

    #[test]
    fn contradiction_has_only_trivial_solution_over_f2() {
        let f2 = make_field(2, 1).unwrap();
        let sys = circuit_to_quad(&contradiction(), f2.clone(), true);
        assert_eq!(sys.n_vars, 4);
        assert_eq!(sys.equations.len(), 3 + 2 + 1);
        let mut solutions = Vec::new();
        for mask in 0u32..16 {
            let x: Vec<Felem> = (0..4).map(|i| Felem((mask >> i) & 1)).collect();
            if quad_eval(&sys, &x).unwrap().iter().all(|r| r.0 == 0) {
                solutions.push(mask);
            }
        }
        assert_eq!(solutions, vec![0]);
    }

    #[test]
    fn passthrough_non_homogeneous() {
        let sys = circuit_to_quad(&passthrough(), Rationals, false);
        assert_eq!(sys.n_vars, 1);
        assert!(!sys.homogeneous);
        assert_eq!(sys.distinguished, None);
        let one = BigRational::from_integer(BigInt::from(1));
        // x1^2 - x1 = 0 and x1^2 = 1
        assert_eq!(sys.equations[0].linear, vec![-one.clone()]);
        assert!(sys.equations[0].b.is_zero());
        assert_eq!(sys.equations[1].b, one.clone());
        assert!(quad_eval(&sys, std::slice::from_ref(&one)).unwrap().iter().all(Zero::is_zero));
        assert!(!quad_eval(&sys, &[-one]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn odd_characteristic_halves_cross_terms() {
        let f3 = make_field(3, 1).unwrap();
        let sys = circuit_to_quad(&passthrough(), f3.clone(), true);
        let half_neg = f3.ff_neg(f3.ff_inv(Felem(2)).unwrap());
        assert_eq!(sys.equations[0].q.get(0, 1), &half_neg);
        assert_eq!(sys.equations[0].q.get(1, 0), &half_neg);
        assert!(quad_eval(&sys, &bits(&f3, &[1, 1])).unwrap().iter().all(|r| r.0 == 0));
    }

    #[test]
    fn homogenized_linear_terms_keep_witness() {
        let sys = circuit_to_quad_with_witness(&passthrough(), Rationals, false, &Budget::default()).unwrap();
        let h = sys.homogenize_linear();
        assert!(!h.has_linear_terms());
        assert_eq!(h.n_vars, 2);
        assert_eq!(h.witness, Some(vec![true, true]));
        let one = BigRational::from_integer(BigInt::from(1));
        assert!(quad_eval(&h, &[one.clone(), one.clone()]).unwrap().iter().all(Zero::is_zero));
        assert!(quad_eval(&h, &[-one.clone(), -one]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn witness_is_checked() {
        let f2 = make_field(2, 1).unwrap();
        let sys = circuit_to_quad(&passthrough(), f2, true);
        assert!(sys.clone().with_witness(vec![true, false]).is_err());
        assert!(sys.with_witness(vec![true, true]).is_ok());
    }
}
