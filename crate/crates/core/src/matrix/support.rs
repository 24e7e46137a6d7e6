//! Exact minimum-support search over column subsets.
//!
//! A subset `S` of columns carries a nonzero kernel vector supported inside
//! `S` iff `rank(M_S) < |S|`, and carries two independent ones iff
//! `rank(M_S) <= |S| - 2`. The search walks subsets in lexicographic order,
//! keeping an integer echelon basis of the chosen columns so each step costs
//! one vector reduction instead of a fresh rank computation.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{integer::bareiss_rank, kernel_basis_q, MatZ};
use crate::budget::{subsets_up_to, Budget};
use crate::error::Result;

/// Outcome of a bounded support search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportSearch {
    /// Smallest qualifying support, lexicographically first among ties.
    Found { size: usize, support: Vec<usize> },
    /// No qualifying support of size at most `bound`.
    AboveBound { bound: usize },
}

impl SupportSearch {
    pub fn size(&self) -> Option<usize> {
        match self {
            SupportSearch::Found { size, .. } => Some(*size),
            SupportSearch::AboveBound { .. } => None,
        }
    }

    /// The certified lower bound: the optimum itself, or `bound + 1`.
    pub fn floor(&self) -> usize {
        match self {
            SupportSearch::Found { size, .. } => *size,
            SupportSearch::AboveBound { bound } => bound + 1,
        }
    }
}

/// Smallest `|S|` with `|S| - rank(M_S) >= nullity`, searching sizes up to
/// `bound`. `nullity = 1` gives the minimum distance of `ker(M)`,
/// `nullity = 2` its second generalized Hamming weight.
pub fn min_support(m: &MatZ, nullity: usize, bound: usize, budget: &Budget) -> Result<SupportSearch> {
    let n = m.cols();
    let bound = bound.min(n);
    budget.check(subsets_up_to(n as u64, bound as u64))?;
    if nullity == 0 {
        return Ok(SupportSearch::Found { size: 0, support: Vec::new() });
    }
    match int_columns(m) {
        Some(cols) => match incremental_search(&cols, nullity, bound) {
            Some(found) => Ok(found),
            None => Ok(naive_search(m, nullity, bound)),
        },
        None => Ok(naive_search(m, nullity, bound)),
    }
}

/// Reference search: every subset in order of size, then lexicographically,
/// ranked from scratch with Bareiss elimination.
pub fn naive_search(m: &MatZ, nullity: usize, bound: usize) -> SupportSearch {
    let n = m.cols();
    for size in nullity.max(1)..=bound.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let sub = m.select_columns(&combo).expect("indices in range");
            if size - bareiss_rank(&sub) >= nullity {
                return SupportSearch::Found { size, support: combo };
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    SupportSearch::AboveBound { bound: bound.min(n) }
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Primitive integer basis of the kernel vectors of `M` supported inside
/// `support`, embedded in the full coordinate space.
pub fn kernel_on_support(m: &MatZ, support: &[usize]) -> Result<Vec<Vec<BigInt>>> {
    let sub = m.select_columns(support)?;
    let basis = kernel_basis_q(&sub);
    let mut out = Vec::with_capacity(basis.cols());
    for col in basis.columns() {
        let l = col.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = col.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
        let mut full = vec![BigInt::zero(); m.cols()];
        for (&j, v) in support.iter().zip(ints) {
            full[j] = v;
        }
        out.push(full);
    }
    Ok(out)
}

fn int_columns(m: &MatZ) -> Option<Vec<Vec<i128>>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j).to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

struct Overflow;

/// Echelon basis of the chosen columns, as a stack so the DFS can undo.
struct Echelon {
    vecs: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { vecs: Vec::new(), pivots: Vec::new() }
    }

    /// Reduces `c` against the basis; the result is zero iff `c` lies in the span.
    fn reduce(&self, c: &[i128]) -> std::result::Result<Vec<i128>, Overflow> {
        let mut c = c.to_vec();
        for (b, &p) in self.vecs.iter().zip(&self.pivots) {
            if c[p] == 0 {
                continue;
            }
            let (bp, cp) = (b[p], c[p]);
            for (ci, &bi) in c.iter_mut().zip(b) {
                let lhs = bp.checked_mul(*ci).ok_or(Overflow)?;
                let rhs = cp.checked_mul(bi).ok_or(Overflow)?;
                *ci = lhs.checked_sub(rhs).ok_or(Overflow)?;
            }
            normalize(&mut c);
        }
        Ok(c)
    }

    fn push(&mut self, v: Vec<i128>) {
        let p = v.iter().position(|&x| x != 0).expect("nonzero vector");
        self.vecs.push(v);
        self.pivots.push(p);
    }

    fn pop(&mut self) {
        self.vecs.pop();
        self.pivots.pop();
    }
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

struct Dfs<'a> {
    cols: &'a [Vec<i128>],
    target: usize,
    best: &'a AtomicUsize,
    found: Option<(usize, Vec<usize>)>,
}

impl Dfs<'_> {
    fn record(&mut self, support: Vec<usize>) {
        let size = support.len();
        let better = match &self.found {
            None => true,
            Some((s, sup)) => size < *s || (size == *s && support < *sup),
        };
        if better {
            self.best.fetch_min(size, Ordering::Relaxed);
            self.found = Some((size, support));
        }
    }

    /// Adds column `j` to the current subset and explores its extensions.
    fn visit(&mut self, j: usize, chosen: &mut Vec<usize>, ech: &mut Echelon, nullity: usize) -> std::result::Result<(), Overflow> {
        let size = chosen.len() + 1;
        if size > self.best.load(Ordering::Relaxed) {
            return Ok(());
        }
        let r = ech.reduce(&self.cols[j])?;
        let dependent = r.iter().all(|&x| x == 0);
        chosen.push(j);
        if dependent && nullity + 1 == self.target {
            self.record(chosen.clone());
            chosen.pop();
            return Ok(());
        }
        let next_nullity = if dependent { nullity + 1 } else { nullity };
        if !dependent {
            ech.push(r);
        }
        let mut res = Ok(());
        if size < self.best.load(Ordering::Relaxed) {
            for nj in j + 1..self.cols.len() {
                if size + 1 > self.best.load(Ordering::Relaxed) {
                    break;
                }
                res = self.visit(nj, chosen, ech, next_nullity);
                if res.is_err() {
                    break;
                }
            }
        }
        if !dependent {
            ech.pop();
        }
        chosen.pop();
        res
    }
}

type SubtreeResult = std::result::Result<Option<(usize, Vec<usize>)>, Overflow>;

/// Returns `None` when intermediate values overflow `i128`.
fn incremental_search(cols: &[Vec<i128>], target: usize, bound: usize) -> Option<SupportSearch> {
    let n = cols.len();
    let best = AtomicUsize::new(bound);
    let results: Vec<SubtreeResult> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut dfs = Dfs { cols, target, best: &best, found: None };
            let mut chosen = Vec::new();
            let mut ech = Echelon::new();
            dfs.visit(first, &mut chosen, &mut ech, 0)?;
            Ok(dfs.found)
        })
        .collect();
    let mut overall: Option<(usize, Vec<usize>)> = None;
    for r in results {
        let Some((size, support)) = r.ok()? else { continue };
        let better = match &overall {
            None => true,
            Some((s, sup)) => size < *s || (size == *s && support < *sup),
        };
        if better {
            overall = Some((size, support));
        }
    }
    Some(match overall {
        Some((size, support)) if size <= bound => SupportSearch::Found { size, support },
        _ => SupportSearch::AboveBound { bound: bound.min(n) },
    })
}
