//! Closed-form counting functions for the even-dimension construction and
//! their maximization over class sizes.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactnum::Rational;
use crate::lenz::{theorem12_partition, PartitionVector};

/// The three summands of `f_k`: cross-circle products, good-pair terms, and
/// inscribed triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Terms {
    #[serde(serialize_with = "ser_int")]
    pub transversal: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub good_pairs: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub triangles: BigInt,
}

/// Exact integers as JSON numbers when they fit in 64 bits, else strings.
fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.collect_str(v),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    #[serde(serialize_with = "ser_int")]
    pub value: BigInt,
    /// All maximizers, nondecreasing, in lexicographic order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax: Option<Vec<PartitionVector>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Terms>,
    /// Whether some maximizer has an entry on the edge of the search window.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub touches_boundary: Option<bool>,
    /// The window finally searched.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
}

impl FormulaResult {
    fn value(value: BigInt) -> Self {
        FormulaResult { value, argmax: None, terms: None, touches_boundary: None, window: None }
    }
}

fn good_pair_count(n_i: u64) -> u64 {
    if n_i.is_multiple_of(4) {
        n_i
    } else {
        n_i - 1
    }
}

fn triangle_count(n_i: u64) -> u64 {
    let p = n_i % 12;
    (n_i - p) / 3 + p.saturating_sub(8)
}

fn product(entries: &[u64], idx: &[usize]) -> BigInt {
    idx.iter().fold(BigInt::one(), |acc, &i| acc * entries[i])
}

/// `Σ_{I ⊆ pool, |I| = size} Π_{i∈I} n_i`; the empty product is 1.
fn sum_of_products(entries: &[u64], pool: &[usize], size: usize) -> BigInt {
    pool.iter().copied().combinations(size).map(|idx| product(entries, &idx)).sum()
}

fn f_k_terms(entries: &[u64], k: usize) -> Terms {
    let r = entries.len();
    let all: Vec<usize> = (0..r).collect();
    let transversal = sum_of_products(entries, &all, k);

    let mut good_pairs = BigInt::zero();
    for ell in 1..=(k / 2) {
        for chosen in all.iter().copied().combinations(ell) {
            let pairs = chosen.iter().fold(BigInt::one(), |acc, &j| acc * good_pair_count(entries[j]));
            if pairs.is_zero() {
                continue;
            }
            let rest: Vec<usize> = all.iter().copied().filter(|i| !chosen.contains(i)).collect();
            good_pairs += pairs * sum_of_products(entries, &rest, k - 2 * ell);
        }
    }

    let triangles = if k == 3 {
        entries.iter().map(|&x| BigInt::from(triangle_count(x))).sum()
    } else {
        BigInt::zero()
    };
    Terms { transversal, good_pairs, triangles }
}

fn check_rk(r: usize, k: usize) -> Result<()> {
    if k < 3 {
        return Err(domain(format!("k = {k} must be at least 3")));
    }
    if r < k {
        return Err(domain(format!("need at least k = {k} classes, got {r}")));
    }
    Ok(())
}

/// `f_k(n_1, …, n_r)`.
pub fn eval_f_k(partition: &PartitionVector, k: usize) -> Result<FormulaResult> {
    check_rk(partition.parts(), k)?;
    let terms = f_k_terms(partition.entries(), k);
    let mut out = FormulaResult::value(&terms.transversal + &terms.good_pairs + &terms.triangles);
    out.terms = Some(terms);
    Ok(out)
}

/// `T_{2r}(n)` from the case-selected partition.
pub fn eval_t2r_closed(n: u64, r: u64) -> Result<FormulaResult> {
    let partition = theorem12_partition(n, r)?;
    let mut out = eval_f_k(&partition, 3)?;
    out.argmax = Some(vec![partition.sorted()]);
    Ok(out)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `C(r,3)(n/r)³ + (r−1)n²/r + n/3` for `12r | n`.
pub fn eval_corollary13(n: u64, r: u64) -> Result<FormulaResult> {
    if r < 3 {
        return Err(domain("r must be at least 3"));
    }
    if n == 0 || !n.is_multiple_of(12 * r) {
        return Err(domain(format!("n = {n} is not a positive multiple of 12r = {}", 12 * r)));
    }
    let nr = Rational::new(n as i64, r as i64)?;
    let n_q = Rational::from(n as i64);
    let value = &(&Rational::from_integer(binomial(r, 3)) * &nr.pow(3))
        + &(&(&Rational::from((r - 1) as i64) * &n_q.pow(2)).checked_div(&Rational::from(r as i64))?
            + &n_q.checked_div(&Rational::from(3))?);
    if !value.is_integer() {
        return Err(domain("closed form did not evaluate to an integer"));
    }
    Ok(FormulaResult::value(value.numer().clone()))
}

/// `f_3` without the inscribed-triangle term: the count of equilateral
/// triangles of the cross-circle side length.
pub fn eval_unit_triangle_formula(partition: &PartitionVector) -> Result<FormulaResult> {
    if partition.parts() < 3 {
        return Err(domain("need at least 3 classes"));
    }
    let mut terms = f_k_terms(partition.entries(), 3);
    terms.triangles = BigInt::zero();
    let mut out = FormulaResult::value(&terms.transversal + &terms.good_pairs);
    out.terms = Some(terms);
    Ok(out)
}

/// `C(r,k)(n/r)^k`.
pub fn asymptotic_leading(n: u64, r: u64, k: u64) -> Result<Rational> {
    check_rk(r as usize, k as usize)?;
    let nr = Rational::new(n as i64, r as i64)?;
    Ok(&Rational::from_integer(binomial(r, k)) * &nr.pow(k as u32))
}

/// Search window `[lo, hi]` for entries with `|n_i − n/r| ≤ window`.
fn window_bounds(n: u64, r: u64, window: u64) -> (u64, u64, bool) {
    // lo = max(0, ⌈(n − window·r)/r⌉), hi = ⌊(n + window·r)/r⌋
    let shift = window * r;
    let (lo, lo_from_window) = if n > shift { ((n - shift).div_ceil(r), true) } else { (0, false) };
    let hi = (n + shift) / r;
    (lo, hi, lo_from_window && lo > 0)
}

/// Nondecreasing vectors of length `parts` with entries in `[lo, hi]`,
/// first entry fixed, summing to `total`.
fn for_each_vector(
    first: u64,
    parts: usize,
    total: u64,
    hi: u64,
    visit: &mut dyn FnMut(&[u64]),
) {
    fn rec(cur: &mut Vec<u64>, left: usize, remaining: u64, hi: u64, visit: &mut dyn FnMut(&[u64])) {
        let last = *cur.last().expect("nonempty prefix");
        if left == 0 {
            if remaining == 0 {
                visit(cur);
            }
            return;
        }
        let left64 = left as u64;
        for x in last..=hi {
            if x * left64 > remaining {
                break;
            }
            if x + hi * (left64 - 1) < remaining {
                continue;
            }
            cur.push(x);
            rec(cur, left - 1, remaining - x, hi, visit);
            cur.pop();
        }
    }
    if first > total {
        return;
    }
    let mut cur = vec![first];
    rec(&mut cur, parts - 1, total - first, hi, visit);
}

/// Exhaustive maximization of `f_k` over nondecreasing vectors with
/// `|n_i − n/r| ≤ window`, returning every maximizer.
pub fn maximize_f_k(n: u64, r: u64, k: usize, window: u64) -> Result<FormulaResult> {
    check_rk(r as usize, k)?;
    let (lo, hi, lo_from_window) = window_bounds(n, r, window);
    if lo > hi || lo * r > n || hi * r < n {
        return Err(Error::EmptySearchSpace(format!("n = {n}, r = {r}, window = {window}")));
    }
    let best = (lo..=hi)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(BigInt, BTreeSet<Vec<u64>>)> = None;
            for_each_vector(first, r as usize, n, hi, &mut |v| {
                let t = f_k_terms(v, k);
                let val = t.transversal + t.good_pairs + t.triangles;
                match &mut best {
                    Some((b, set)) if *b == val => {
                        set.insert(v.to_vec());
                    }
                    Some((b, _)) if *b > val => {}
                    _ => best = Some((val, BTreeSet::from([v.to_vec()]))),
                }
            });
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some((va, mut sa)), Some((vb, sb))) => {
                    if va > vb {
                        Some((va, sa))
                    } else if vb > va {
                        Some((vb, sb))
                    } else {
                        sa.extend(sb);
                        Some((va, sa))
                    }
                }
            },
        );
    let Some((value, set)) = best else {
        return Err(Error::EmptySearchSpace(format!("n = {n}, r = {r}, window = {window}")));
    };
    let touches = set
        .iter()
        .any(|v| v.iter().any(|&x| x == hi || (lo_from_window && x == lo)));
    Ok(FormulaResult {
        value,
        argmax: Some(set.into_iter().map(PartitionVector::new).collect()),
        terms: None,
        touches_boundary: Some(touches),
        window: Some(window),
    })
}

/// [`maximize_f_k`] starting at `window`, doubling it until no maximizer
/// touches the boundary.
pub fn maximize_f_k_adaptive(n: u64, r: u64, k: usize, window: u64) -> Result<FormulaResult> {
    let mut w = window.max(1);
    loop {
        let res = maximize_f_k(n, r, k, w)?;
        // Once the window covers [0, n] every vector is searched.
        if res.touches_boundary != Some(true) || w >= n {
            return Ok(res);
        }
        w *= 2;
    }
}

/// Structural properties a maximizer of `f_3` has for large `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    /// Every two entries differ by at most 2.
    pub gap_at_most_two: bool,
    /// Entries differing by exactly 2 are both even.
    pub gap_two_even: bool,
    /// At most one entry is odd.
    pub at_most_one_odd: bool,
}

impl ClaimCheck {
    pub fn all(&self) -> bool {
        self.gap_at_most_two && self.gap_two_even && self.at_most_one_odd
    }
}

pub fn check_claims(partition: &PartitionVector) -> ClaimCheck {
    let v = partition.entries();
    let pairs = || v.iter().tuple_combinations::<(_, _)>();
    ClaimCheck {
        gap_at_most_two: pairs().all(|(a, b)| a.abs_diff(*b) <= 2),
        gap_two_even: pairs().all(|(a, b)| a.abs_diff(*b) != 2 || (a % 2 == 0 && b % 2 == 0)),
        at_most_one_odd: v.iter().filter(|&&x| x % 2 == 1).count() <= 1,
    }
}

/// Convert an exact integer value to `BigUint`, for comparison with counts.
pub fn as_count(v: &BigInt) -> Option<BigUint> {
    v.to_biguint()
}
