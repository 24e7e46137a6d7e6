//! Exact arithmetic in prime fields and their extensions, plus the rationals.
//!
//! Elements of `F_{p^m}` are coefficient vectors in the power basis of a fixed
//! monic irreducible modulus. A [`Felem`] packs those coefficients as base-`p`
//! digits (coefficient of `x^i` is digit `i`), so the integer value of a
//! `Felem` is also its position in [`FieldSpec::elements`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Arithmetic over a field whose elements are values of type `Elem`.
///
/// The implementor carries whatever context the arithmetic needs (for a finite
/// field, the characteristic and modulus); elements themselves are plain data.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Image of an integer under the canonical ring map `Z -> F`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// An element of a finite field, stored as packed base-`p` coefficient digits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Felem(pub u32);

impl Felem {
    pub const ZERO: Felem = Felem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The finite field `F_{p^m}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldDesc", into = "FieldDesc")]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients low to high (length `m + 1`); absent for `m = 1`.
    modulus: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct FieldDesc {
    p: u32,
    m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

impl From<FieldSpec> for FieldDesc {
    fn from(f: FieldSpec) -> Self {
        FieldDesc { p: f.p, m: f.m, modulus: f.modulus }
    }
}

impl TryFrom<FieldDesc> for FieldSpec {
    type Error = Error;

    fn try_from(d: FieldDesc) -> Result<Self> {
        match d.modulus {
            None => make_field(d.p as u64, d.m),
            Some(modulus) => FieldSpec::with_modulus(d.p as u64, modulus),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.m, self.modulus.as_deref().unwrap_or(&[]))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^m}` with the lexicographically smallest monic irreducible
/// modulus of degree `m`.
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m < 1 {
        return Err(Error::InvalidDegree(m));
    }
    let order = checked_order(p, m)?;
    let p32 = p as u32;
    if m == 1 {
        return Ok(FieldSpec { p: p32, m, q: order, modulus: None });
    }
    // Candidates x^m + c(x), with c ranging in element order.
    for low in 0..order {
        let mut poly = unpack(low, p32, m as usize);
        poly.push(1);
        if is_irreducible(&poly, p32) {
            return Ok(FieldSpec { p: p32, m, q: order, modulus: Some(poly) });
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn checked_order(p: u64, m: u32) -> Result<u32> {
    let mut order: u64 = 1;
    for _ in 0..m {
        order = order.saturating_mul(p);
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow { p, m });
        }
    }
    Ok(order as u32)
}

fn unpack(mut v: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(m + 1);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn trim(poly: &mut Vec<u32>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` divided by the monic polynomial `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    loop {
        trim(&mut r);
        if r.len() - 1 < db || (r.len() == 1 && r[0] == 0) {
            return r;
        }
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let t = (lead as u64 * bc as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - t) % p;
        }
    }
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32) as u32;
        for low in 0..count {
            let mut div = unpack(low, p, d);
            div.push(1);
            let r = poly_rem(poly, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// A prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        make_field(p, 1)
    }

    /// Builds `F_{p^m}` from an explicit monic modulus (low to high).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let m = modulus.len().saturating_sub(1) as u32;
        if m < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidInput("modulus must be monic of degree >= 2 with residues mod p".into()));
        }
        let q = checked_order(p, m)?;
        if !is_irreducible(&modulus, p as u32) {
            return Err(Error::InvalidInput(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FieldSpec { p: p as u32, m, q, modulus: Some(modulus) })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// All `q` elements, zero first, in packed-digit order.
    pub fn elements(&self) -> Vec<Felem> {
        (0..self.q).map(Felem).collect()
    }

    pub fn coeffs(&self, a: Felem) -> Vec<u32> {
        unpack(a.0, self.p, self.m as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Felem> {
        if coeffs.len() != self.m as usize {
            return Err(Error::LengthMismatch { expected: self.m as usize, got: coeffs.len() });
        }
        let mut v: u32 = 0;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidInput(format!("coefficient {c} not reduced mod {}", self.p)));
            }
            v = v * self.p + c;
        }
        Ok(Felem(v))
    }

    pub fn elem(&self, index: u32) -> Result<Felem> {
        if index >= self.q {
            return Err(Error::IndexOutOfRange { index: index as usize, len: self.q as usize });
        }
        Ok(Felem(index))
    }

    /// Coefficient-tuple rendering, e.g. `[1,0]` for `1` in `F_4`.
    pub fn render(&self, a: Felem) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(&self, s: &str) -> Result<Felem> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("bad field element {s:?}")))?;
        let coeffs = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidInput(format!("bad field element {s:?}: {e}")))?;
        self.from_coeffs(&coeffs)
    }

    pub fn ff_add(&self, a: Felem, b: Felem) -> Felem {
        if self.m == 1 {
            let s = a.0 + b.0;
            return Felem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Felem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.m {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Felem(out)
    }

    pub fn ff_neg(&self, a: Felem) -> Felem {
        if self.m == 1 {
            return Felem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.m {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
        }
        Felem(out)
    }

    pub fn ff_sub(&self, a: Felem, b: Felem) -> Felem {
        self.ff_add(a, self.ff_neg(b))
    }

    pub fn ff_mul(&self, a: Felem, b: Felem) -> Felem {
        let p = self.p as u64;
        let Some(modulus) = &self.modulus else {
            return Felem((a.0 as u64 * b.0 as u64 % p) as u32);
        };
        let m = self.m as usize;
        let x = unpack(a.0, self.p, m);
        let y = unpack(b.0, self.p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // Reduce using x^m = -(modulus without leading term).
        for deg in (m..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &c) in modulus[..m].iter().enumerate() {
                let t = lead * c as u64 % p;
                prod[deg - m + i] = (prod[deg - m + i] + p - t) % p;
            }
        }
        let mut v: u32 = 0;
        for &c in prod[..m].iter().rev() {
            v = v * self.p + c as u32;
        }
        Felem(v)
    }

    pub fn ff_pow(&self, a: Felem, mut e: u64) -> Felem {
        let mut acc = self.one_elem();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ff_mul(acc, base);
            }
            base = self.ff_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn ff_inv(&self, a: Felem) -> Result<Felem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(Felem(pow_mod(a.0 as u64, self.p as u64 - 2, self.p as u64) as u32));
        }
        Ok(self.ff_pow(a, self.q as u64 - 2))
    }

    pub fn one_elem(&self) -> Felem {
        Felem(1)
    }

    /// Embeds a base-field residue `c` as the constant polynomial `c`.
    pub fn from_residue(&self, c: u32) -> Felem {
        Felem(c % self.p)
    }

    /// The element `x` (the generator of the power basis); `1` in a prime field.
    pub fn generator(&self) -> Felem {
        if self.m == 1 {
            Felem(1)
        } else {
            Felem(self.p)
        }
    }
}

impl Field for FieldSpec {
    type Elem = Felem;

    fn zero(&self) -> Felem {
        Felem(0)
    }
    fn one(&self) -> Felem {
        Felem(1)
    }
    fn add(&self, a: &Felem, b: &Felem) -> Felem {
        self.ff_add(*a, *b)
    }
    fn sub(&self, a: &Felem, b: &Felem) -> Felem {
        self.ff_sub(*a, *b)
    }
    fn neg(&self, a: &Felem) -> Felem {
        self.ff_neg(*a)
    }
    fn mul(&self, a: &Felem, b: &Felem) -> Felem {
        self.ff_mul(*a, *b)
    }
    fn inv(&self, a: &Felem) -> Result<Felem> {
        self.ff_inv(*a)
    }
    fn is_zero(&self, a: &Felem) -> bool {
        a.0 == 0
    }
    fn from_i64(&self, v: i64) -> Felem {
        Felem(v.rem_euclid(self.p as i64) as u32)
    }
}

/// The field of rationals, the exact stand-in for the reals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn render_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Ceiling of a rational as an integer.
pub fn ceil_rational(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

pub fn abs_rational(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn smallest_irreducible_quadratic_over_f2() {
        // Oracle: the four monic quadratics x^2, x^2+1, x^2+x, x^2+x+1; only the
        // last has no root in F_2.
        let roots = |c0: u32, c1: u32| (0..2u32).any(|x| (x * x + c1 * x + c0).is_multiple_of(2));
        let irreducible: Vec<(u32, u32)> =
            [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().filter(|&(c0, c1)| !roots(c0, c1)).collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn smallest_cubic_over_f2_is_x3_x_1() {
        let f = make_field(2, 3).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 0, 1][..]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::NonPrime(4))));
        assert!(matches!(make_field(3, 0), Err(Error::InvalidDegree(0))));
        assert!(matches!(make_field(2, 17), Err(Error::OrderOverflow { .. })));
        assert!(make_field(2, 16).is_ok());
        assert!(FieldSpec::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn worked_arithmetic() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.ff_add(Felem(1), Felem(1)), Felem(0));
        let f4 = make_field(2, 2).unwrap();
        let x = f4.generator();
        // x * x = x^2 = x + 1 modulo x^2 + x + 1
        assert_eq!(f4.coeffs(f4.ff_mul(x, x)), vec![1, 1]);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.ff_inv(Felem(2)).unwrap(), Felem(3));
        assert!(matches!(f5.ff_inv(Felem(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn element_order_and_rendering() {
        let f4 = make_field(2, 2).unwrap();
        let rendered: Vec<String> = f4.elements().into_iter().map(|a| f4.render(a)).collect();
        assert_eq!(rendered, vec!["[0,0]", "[1,0]", "[0,1]", "[1,1]"]);
        assert_eq!(f4.parse("[1,1]").unwrap(), Felem(3));
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.elements(), vec![Felem(0), Felem(1), Felem(2)]);
        assert_eq!(make_field(2, 1).unwrap().elements(), vec![Felem(0), Felem(1)]);
    }

    fn exhaustive_axioms(f: &FieldSpec) {
        let els = f.elements();
        for &a in &els {
            assert_eq!(f.ff_add(a, Felem(0)), a);
            assert_eq!(f.ff_mul(a, Felem(1)), a);
            assert_eq!(f.ff_add(a, f.ff_neg(a)), Felem(0));
            if a != Felem(0) {
                assert_eq!(f.ff_mul(a, f.ff_inv(a).unwrap()), Felem(1));
            }
            for &b in &els {
                assert_eq!(f.ff_add(a, b), f.ff_add(b, a));
                assert_eq!(f.ff_mul(a, b), f.ff_mul(b, a));
                for &c in &els {
                    assert_eq!(f.ff_add(f.ff_add(a, b), c), f.ff_add(a, f.ff_add(b, c)));
                    assert_eq!(f.ff_mul(f.ff_mul(a, b), c), f.ff_mul(a, f.ff_mul(b, c)));
                    assert_eq!(f.ff_mul(a, f.ff_add(b, c)), f.ff_add(f.ff_mul(a, b), f.ff_mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            exhaustive_axioms(&make_field(p, m).unwrap());
        }
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (2, 6), (3, 3), (2, 5)] {
            let f = make_field(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.ff_pow(a, f.order() as u64), a, "{f:?}");
            }
        }
    }

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(render_rational(&r), "-3/2");
        assert_eq!(render_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn field_spec_json_round_trip() {
        let f = make_field(3, 2).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":3,"m":2,"modulus":[1,0,1]}"#);
        let back: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":4,"m":1}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_pairs_in_larger_fields(p_idx in 0usize..4, a in 0u32..u32::MAX, b in 0u32..u32::MAX, c in 0u32..u32::MAX) {
                let (p, m) = [(2, 8), (3, 5), (251, 1), (17, 3)][p_idx];
                let f = make_field(p, m).unwrap();
                let q = f.order();
                let (a, b, c) = (Felem(a % q), Felem(b % q), Felem(c % q));
                prop_assert_eq!(f.ff_mul(a, f.ff_add(b, c)), f.ff_add(f.ff_mul(a, b), f.ff_mul(a, c)));
                prop_assert_eq!(f.ff_mul(f.ff_mul(a, b), c), f.ff_mul(a, f.ff_mul(b, c)));
                if a != Felem(0) {
                    prop_assert_eq!(f.ff_mul(a, f.ff_inv(a).unwrap()), Felem(1));
                }
            }
        }
    }
}
