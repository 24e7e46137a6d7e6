//! Exhaustive enumeration of the words of a linear or affine span over `F_q`.
//!
//! The span of `g_1..g_n` over `F_{p^m}` equals the `F_p`-span of the `n*m`
//! vectors `x^j g_i`, so every word is reached by an odometer over base-`p`
//! digits in which each step adds one generator. Over `F_2` words are packed
//! into `u64` limbs and stepped in Gray-code order.

use rayon::prelude::*;

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::field::{Felem, FieldSpec};

/// The `F_p`-basis `x^j g_i` of the `F_q`-span of `gens`.
pub fn fp_generators(field: &FieldSpec, gens: &[Vec<Felem>]) -> Vec<Vec<Felem>> {
    let m = field.degree();
    let x = field.generator();
    let mut out = Vec::with_capacity(gens.len() * m as usize);
    for g in gens {
        let mut scale = field.one_elem();
        for _ in 0..m {
            out.push(g.iter().map(|&c| field.ff_mul(scale, c)).collect());
            scale = field.ff_mul(scale, x);
        }
    }
    out
}

/// Number of words in the span: `q^(#gens)`, saturating.
pub fn span_size(field: &FieldSpec, n_gens: usize) -> u128 {
    saturating_pow(u128::from(field.order()), n_gens as u64)
}

fn check_lengths(len: usize, gens: &[Vec<Felem>], offset: Option<&[Felem]>) -> Result<()> {
    for g in gens {
        if g.len() != len {
            return Err(Error::LengthMismatch { expected: len, got: g.len() });
        }
    }
    if let Some(o) = offset {
        if o.len() != len {
            return Err(Error::LengthMismatch { expected: len, got: o.len() });
        }
    }
    Ok(())
}

/// A minimum-weight word and its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWord {
    pub weight: usize,
    pub word: Vec<Felem>,
}

/// Chunks of the odometer handled by one task: the top `r` digits are fixed.
fn split_digits(p: u32, total: usize) -> usize {
    let mut r = 0;
    let mut chunks: u64 = 1;
    while r < total && chunks < 256 {
        chunks *= u64::from(p);
        r += 1;
    }
    r
}

fn better(a: &(usize, Vec<Felem>), b: &(usize, Vec<Felem>)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Minimum-weight word of `offset + span(gens)` over `F_q`; without an offset,
/// the minimum over nonzero words of the span. Ties resolve to the
/// lexicographically smallest word. `None` when no candidate exists.
pub fn min_weight_word(
    field: &FieldSpec,
    len: usize,
    gens: &[Vec<Felem>],
    offset: Option<&[Felem]>,
    budget: &Budget,
) -> Result<Option<MinWord>> {
    check_lengths(len, gens, offset)?;
    budget.check(span_size(field, gens.len()))?;
    if field.order() == 2 {
        return Ok(binary::min_weight_word(len, gens, offset));
    }
    let basis = fp_generators(field, gens);
    let p = field.characteristic();
    let r = split_digits(p, basis.len());
    let low = basis.len() - r;
    let n_chunks = (p as u64).pow(r as u32);
    let best = (0..n_chunks)
        .into_par_iter()
        .filter_map(|chunk| {
            let mut word: Vec<Felem> = offset.map_or_else(|| vec![Felem::ZERO; len], <[Felem]>::to_vec);
            let mut c = chunk;
            for g in &basis[low..] {
                let digit = (c % u64::from(p)) as u32;
                c /= u64::from(p);
                for _ in 0..digit {
                    add_into(field, &mut word, g);
                }
            }
            let skip_first = offset.is_none() && chunk == 0;
            let mut local: Option<(usize, Vec<Felem>)> = None;
            let mut consider = |w: &[Felem], weight: usize| {
                let cand_better = match &local {
                    None => true,
                    Some((bw, bword)) => weight < *bw || (weight == *bw && w < bword.as_slice()),
                };
                if cand_better {
                    local = Some((weight, w.to_vec()));
                }
            };
            let mut weight = word.iter().filter(|x| x.0 != 0).count();
            if !skip_first && (offset.is_some() || weight > 0) {
                consider(&word, weight);
            }
            let mut digits = vec![0u32; low];
            'outer: loop {
                let mut k = 0;
                loop {
                    if k == low {
                        break 'outer;
                    }
                    weight = add_tracking(field, &mut word, &basis[k], weight);
                    digits[k] += 1;
                    if digits[k] == p {
                        digits[k] = 0;
                        k += 1;
                    } else {
                        break;
                    }
                }
                if offset.is_some() || weight > 0 {
                    consider(&word, weight);
                }
            }
            local
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a });
    Ok(best.map(|(weight, word)| MinWord { weight, word }))
}

fn add_into(field: &FieldSpec, word: &mut [Felem], g: &[Felem]) {
    for (w, &x) in word.iter_mut().zip(g) {
        if x.0 != 0 {
            *w = field.ff_add(*w, x);
        }
    }
}

fn add_tracking(field: &FieldSpec, word: &mut [Felem], g: &[Felem], mut weight: usize) -> usize {
    for (w, &x) in word.iter_mut().zip(g) {
        if x.0 == 0 {
            continue;
        }
        let was = w.0 != 0;
        *w = field.ff_add(*w, x);
        match (was, w.0 != 0) {
            (false, true) => weight += 1,
            (true, false) => weight -= 1,
            _ => {}
        }
    }
    weight
}

/// Calls `visit` on every word of `span(gens)` (zero word included), in
/// odometer order. Sequential; intended for small spans.
pub fn for_each_word(field: &FieldSpec, len: usize, gens: &[Vec<Felem>], budget: &Budget, mut visit: impl FnMut(&[Felem])) -> Result<()> {
    check_lengths(len, gens, None)?;
    budget.check(span_size(field, gens.len()))?;
    let basis = fp_generators(field, gens);
    let p = field.characteristic();
    let mut word = vec![Felem::ZERO; len];
    visit(&word);
    let mut digits = vec![0u32; basis.len()];
    loop {
        let mut k = 0;
        loop {
            if k == basis.len() {
                return Ok(());
            }
            add_into(field, &mut word, &basis[k]);
            digits[k] += 1;
            if digits[k] == p {
                digits[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        visit(&word);
    }
}

/// Smallest and largest weights of nonzero words of the span.
pub fn weight_range(field: &FieldSpec, len: usize, gens: &[Vec<Felem>], budget: &Budget) -> Result<Option<(usize, usize)>> {
    let mut range: Option<(usize, usize)> = None;
    for_each_word(field, len, gens, budget, |w| {
        let wt = w.iter().filter(|x| x.0 != 0).count();
        if wt > 0 {
            range = Some(match range {
                None => (wt, wt),
                Some((lo, hi)) => (lo.min(wt), hi.max(wt)),
            });
        }
    })?;
    Ok(range)
}

/// Bit-packed enumeration over `F_2`.
pub mod binary {
    use super::*;

    /// A word over `F_2`, coordinate `i` at bit `i % 64` of limb `i / 64`.
    pub fn pack(word: &[Felem]) -> Vec<u64> {
        let mut out = vec![0u64; word.len().div_ceil(64)];
        for (i, x) in word.iter().enumerate() {
            if x.0 != 0 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    pub fn unpack(bits: &[u64], len: usize) -> Vec<Felem> {
        (0..len).map(|i| Felem(((bits[i / 64] >> (i % 64)) & 1) as u32)).collect()
    }

    pub fn weight(bits: &[u64]) -> usize {
        bits.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Lexicographic comparison of the unpacked words.
    pub fn lex_less(a: &[u64], b: &[u64]) -> bool {
        for (x, y) in a.iter().zip(b) {
            let diff = x ^ y;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return (x >> bit) & 1 == 0;
            }
        }
        false
    }

    fn xor_into(word: &mut [u64], g: &[u64]) {
        for (w, x) in word.iter_mut().zip(g) {
            *w ^= x;
        }
    }

    fn better(a: &(usize, Vec<u64>), b: &(usize, Vec<u64>)) -> bool {
        a.0 < b.0 || (a.0 == b.0 && lex_less(&a.1, &b.1))
    }

    pub fn min_weight_word(len: usize, gens: &[Vec<Felem>], offset: Option<&[Felem]>) -> Option<MinWord> {
        let basis: Vec<Vec<u64>> = gens.iter().map(|g| pack(g)).collect();
        let start = offset.map_or_else(|| vec![0u64; len.div_ceil(64)], pack);
        let r = split_digits(2, basis.len());
        let low = basis.len() - r;
        let best = (0..1u64 << r)
            .into_par_iter()
            .filter_map(|chunk| {
                let mut word = start.clone();
                for (k, g) in basis[low..].iter().enumerate() {
                    if (chunk >> k) & 1 == 1 {
                        xor_into(&mut word, g);
                    }
                }
                let skip_first = offset.is_none() && chunk == 0;
                let mut local: Option<(usize, Vec<u64>)> = None;
                let mut consider = |w: &[u64]| {
                    let wt = weight(w);
                    if offset.is_none() && wt == 0 {
                        return;
                    }
                    let take = match &local {
                        None => true,
                        Some((bw, bword)) => wt < *bw || (wt == *bw && lex_less(w, bword)),
                    };
                    if take {
                        local = Some((wt, w.to_vec()));
                    }
                };
                if !skip_first {
                    consider(&word);
                }
                for step in 1u64..(1u64 << low) {
                    xor_into(&mut word, &basis[step.trailing_zeros() as usize]);
                    consider(&word);
                }
                local
            })
            .reduce_with(|a, b| if better(&b, &a) { b } else { a });
        best.map(|(weight, bits)| MinWord { weight, word: unpack(&bits, len) })
    }
}
