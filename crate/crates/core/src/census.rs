//! Counting regular simplices three independent ways.
//!
//! * coordinates: exact squared distances of an embedded point set, with an
//!   equidistance-pruned subset search;
//! * ticks: every k-subset of a [`CircleConfig`] tested by tick arithmetic;
//! * closed: per-circle good-pair and triangle counts combined by formula.
//!
//! Parallel work is split by the smallest vertex index of a subset. Each
//! worker returns plain integer counts and the reduction is a sum, so the
//! result is independent of the number of workers and of scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::exactnum::{Quad3, Rational};
use crate::geometry::{sq_dist, PointSet};
use crate::lenz::CircleConfig;

/// Simplex census split by how many vertices share a circle.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CountReport {
    /// No two vertices on one circle.
    #[serde(serialize_with = "ser_count", deserialize_with = "de_count")]
    pub delta1: BigUint,
    /// Some circle holds exactly two vertices, none holds three.
    #[serde(serialize_with = "ser_count", deserialize_with = "de_count")]
    pub delta2: BigUint,
    /// Three vertices on one circle.
    #[serde(serialize_with = "ser_count", deserialize_with = "de_count")]
    pub delta3: BigUint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_length_sq: Option<Rational>,
    #[serde(serialize_with = "ser_count", deserialize_with = "de_count")]
    pub total: BigUint,
}

fn ser_count<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.collect_str(v),
    }
}

fn de_count<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(u64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(x) => Ok(BigUint::from(x)),
        Raw::Str(s) => BigUint::from_str(&s).map_err(serde::de::Error::custom),
    }
}

impl CountReport {
    pub fn new(delta1: BigUint, delta2: BigUint, delta3: BigUint) -> Self {
        let total = &delta1 + &delta2 + &delta3;
        CountReport { delta1, delta2, delta3, side_length_sq: None, total }
    }

    fn from_counts(c: [u64; 3]) -> Self {
        CountReport::new(c[0].into(), c[1].into(), c[2].into())
    }

    /// Keep only simplices of the given squared side on a configuration with
    /// common squared radius `radius_sq`: types 1 and 2 have side `2γ²`,
    /// type 3 has side `3γ²`.
    pub fn restrict_to_side(&self, side_sq: &Rational, radius_sq: &Rational) -> CountReport {
        let two = &Rational::from(2) * radius_sq;
        let three = &Rational::from(3) * radius_sq;
        let zero = BigUint::zero;
        let mut out = if *side_sq == two {
            CountReport::new(self.delta1.clone(), self.delta2.clone(), zero())
        } else if *side_sq == three {
            CountReport::new(zero(), zero(), self.delta3.clone())
        } else {
            CountReport::default()
        };
        out.side_length_sq = Some(side_sq.clone());
        out
    }

    pub const CSV_HEADER: &'static str = "delta1,delta2,delta3,total";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.delta1, self.delta2, self.delta3, self.total)
    }
}

/// Which counting route to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Coords,
    Ticks,
    Closed,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Coords, Method::Ticks, Method::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Method::Coords => "coords",
            Method::Ticks => "ticks",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coords" => Ok(Method::Coords),
            "ticks" => Ok(Method::Ticks),
            "closed" => Ok(Method::Closed),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Chord class of two ticks on one circle of modulus `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordClass {
    Zero,
    /// 90°: squared chord `2γ²`, equal to the cross-circle distance.
    Quarter,
    /// 120°: squared chord `3γ²`.
    Third,
    Other,
}

pub fn tick_chord_class(modulus: u64, dt: u64) -> Result<ChordClass> {
    if modulus == 0 || !modulus.is_multiple_of(12) {
        return Err(domain(format!("modulus {modulus} is not a positive multiple of 12")));
    }
    Ok(chord_class(modulus, dt))
}

fn chord_class(modulus: u64, dt: u64) -> ChordClass {
    let d = dt % modulus;
    let d = d.min(modulus - d);
    if d == 0 {
        ChordClass::Zero
    } else if d == modulus / 4 {
        ChordClass::Quarter
    } else if d == modulus / 3 {
        ChordClass::Third
    } else {
        ChordClass::Other
    }
}

fn check_modulus(modulus: u64) -> Result<()> {
    tick_chord_class(modulus, 0).map(|_| ())
}

/// Unordered tick pairs a quarter turn apart.
pub fn count_good_pairs(ticks: &[u64], modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let set: std::collections::HashSet<u64> = ticks.iter().map(|t| t % modulus).collect();
    // Each pair {t, t + N/4} is seen once, from its first element.
    Ok(set.iter().filter(|&&t| set.contains(&((t + modulus / 4) % modulus))).count() as u64)
}

/// Tick triples pairwise a third of a turn apart.
pub fn count_inscribed_triangles(ticks: &[u64], modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let set: std::collections::HashSet<u64> = ticks.iter().map(|t| t % modulus).collect();
    let third = modulus / 3;
    let hits = set
        .iter()
        .filter(|&&t| set.contains(&((t + third) % modulus)) && set.contains(&((t + 2 * third) % modulus)))
        .count() as u64;
    Ok(hits / 3)
}

/// Tick-arithmetic regular-simplex test for points given as `(component, tick)`.
///
/// Cross-component squared distance is always `2γ²`. A selection spread over
/// several components therefore needs every same-component pair to be a
/// quarter chord; a selection inside one component needs an inscribed
/// equilateral triangle.
pub fn is_structured_simplex(config: &CircleConfig, selection: &[(usize, u64)]) -> bool {
    if selection.len() < 2 {
        return false;
    }
    let first = selection[0].0;
    let single = selection.iter().all(|&(c, _)| c == first);
    let want = if single { ChordClass::Third } else { ChordClass::Quarter };
    if single && selection.len() != 3 {
        // Two points on one circle are trivially equidistant; four or more
        // cannot be.
        return selection.len() == 2 && selection[0].1 != selection[1].1;
    }
    for (i, &(ca, ta)) in selection.iter().enumerate() {
        for &(cb, tb) in &selection[i + 1..] {
            if ca == cb {
                let modulus = config.components[ca].modulus;
                if chord_class(modulus, tb + modulus - ta % modulus) != want {
                    return false;
                }
            }
        }
    }
    true
}

fn require_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(domain(format!("simplex size k = {k} must be at least 3")));
    }
    Ok(())
}

fn require_common_radius(config: &CircleConfig) -> Result<()> {
    if !config.has_common_radius() {
        return Err(Error::UnsupportedConfiguration(
            "components have different radii; use coordinate counting".into(),
        ));
    }
    Ok(())
}

/// Type index (0, 1, 2) of a simplex from the component of each vertex.
fn simplex_type(components: impl Iterator<Item = usize>) -> usize {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for c in components {
        *mult.entry(c).or_default() += 1;
    }
    match mult.values().max().copied().unwrap_or(0) {
        0 | 1 => 0,
        2 => 1,
        _ => 2,
    }
}

fn add3(a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Visit every k-subset with smallest element `first` that passes `accept`.
fn for_each_subset_from(
    n: usize,
    k: usize,
    first: usize,
    mut accept: impl FnMut(&[usize]) -> bool,
    mut visit: impl FnMut(&[usize]),
) {
    let mut sel = Vec::with_capacity(k);
    for rest in ((first + 1)..n).combinations(k - 1) {
        sel.clear();
        sel.push(first);
        sel.extend_from_slice(&rest);
        if accept(&sel) {
            visit(&sel);
        }
    }
}

/// Exhaustive census of a configuration by tick arithmetic.
pub fn brute_force_structured(config: &CircleConfig, k: usize) -> Result<CountReport> {
    require_k(k)?;
    require_common_radius(config)?;
    let labels = config.labels();
    let n = labels.len();
    if n < k {
        return Ok(CountReport::default());
    }
    let counts = (0..=(n - k))
        .into_par_iter()
        .map(|first| {
            let mut local = [0u64; 3];
            let mut pts = Vec::with_capacity(k);
            for_each_subset_from(
                n,
                k,
                first,
                |sel| {
                    pts.clear();
                    pts.extend(sel.iter().map(|&i| labels[i]));
                    is_structured_simplex(config, &pts)
                },
                |sel| local[simplex_type(sel.iter().map(|&i| labels[i].0))] += 1,
            );
            local
        })
        .reduce(|| [0; 3], add3);
    Ok(CountReport::from_counts(counts))
}

/// Enumerate structured simplices as vertex-index tuples (indices into
/// [`CircleConfig::labels`]), in lexicographic order.
pub fn structured_simplices(config: &CircleConfig, k: usize) -> Result<Vec<Vec<usize>>> {
    require_k(k)?;
    require_common_radius(config)?;
    let labels = config.labels();
    let n = labels.len();
    let mut out = Vec::new();
    for first in 0..n.saturating_sub(k - 1) {
        for_each_subset_from(
            n,
            k,
            first,
            |sel| {
                let pts: Vec<_> = sel.iter().map(|&i| labels[i]).collect();
                is_structured_simplex(config, &pts)
            },
            |sel| out.push(sel.to_vec()),
        );
    }
    Ok(out)
}

/// Closed-form census from per-circle statistics.
///
/// Choosing at most one point or one good pair per circle, the number of
/// type-1 and type-2 simplices is the `x^k` coefficient of
/// `Π_i (1 + n_i x + g_i x²)`, with `g_i` the good pairs on circle `i`; type 1
/// alone is the coefficient of `Π_i (1 + n_i x)`. Type 3 (k = 3 only) sums
/// the inscribed triangles.
pub fn count_structured(config: &CircleConfig, k: usize) -> Result<CountReport> {
    require_k(k)?;
    require_common_radius(config)?;
    let mut with_pairs = vec![BigUint::zero(); k + 1];
    let mut singles = vec![BigUint::zero(); k + 1];
    with_pairs[0] = BigUint::from(1u32);
    singles[0] = BigUint::from(1u32);
    let mut triangles = BigUint::zero();
    for c in &config.components {
        let n_i = BigUint::from(c.len());
        let g_i = BigUint::from(count_good_pairs(&c.ticks, c.modulus)?);
        for d in (1..=k).rev() {
            let mut next = &with_pairs[d] + &n_i * &with_pairs[d - 1];
            if d >= 2 {
                next += &g_i * &with_pairs[d - 2];
            }
            with_pairs[d] = next;
            let s = &singles[d] + &n_i * &singles[d - 1];
            singles[d] = s;
        }
        if k == 3 {
            triangles += count_inscribed_triangles(&c.ticks, c.modulus)?;
        }
    }
    let delta1 = singles[k].clone();
    let delta2 = &with_pairs[k] - &delta1;
    Ok(CountReport::new(delta1, delta2, triangles))
}

/// Distinct squared distances of a point set, as dense ids per pair.
struct DistanceTable {
    ids: Vec<Vec<u32>>,
    values: Vec<Quad3>,
}

impl DistanceTable {
    fn new(p: &PointSet) -> Result<Self> {
        let n = p.len();
        let pts = p.points();
        let rows: Vec<Vec<Quad3>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| sq_dist(&pts[i], &pts[j])).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut values: Vec<Quad3> = rows.iter().flatten().cloned().collect();
        values.sort();
        values.dedup();
        let ids = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| values.binary_search(d).expect("value collected above") as u32)
                    .collect()
            })
            .collect();
        Ok(DistanceTable { ids, values })
    }

    fn id_of(&self, d: &Quad3) -> Option<u32> {
        self.values.binary_search(d).ok().map(|i| i as u32)
    }
}

/// Extend `chosen` by cliques of the "at squared distance id `side`" relation.
fn extend_equidistant(
    ids: &[Vec<u32>],
    side: u32,
    cands: &[usize],
    need: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if need == 0 {
        visit(chosen);
        return;
    }
    for (x, &c) in cands.iter().enumerate() {
        if cands.len() - x < need {
            break;
        }
        let next: Vec<usize> = cands[x + 1..].iter().copied().filter(|&d| ids[c][d] == side).collect();
        chosen.push(c);
        extend_equidistant(ids, side, &next, need - 1, chosen, visit);
        chosen.pop();
    }
}

/// All regular simplices whose smallest vertex is `first`.
fn visit_from(table: &DistanceTable, k: usize, side: Option<u32>, first: usize, visit: &mut dyn FnMut(&[usize])) {
    let ids = &table.ids;
    let n = ids.len();
    let mut chosen = vec![first];
    for second in (first + 1)..n {
        let s = ids[first][second];
        if side.is_some_and(|want| want != s) {
            continue;
        }
        let cands: Vec<usize> = ((second + 1)..n).filter(|&d| ids[first][d] == s && ids[second][d] == s).collect();
        chosen.push(second);
        extend_equidistant(ids, s, &cands, k - 2, &mut chosen, visit);
        chosen.pop();
    }
}

fn side_id(table: &DistanceTable, side_sq: Option<&Quad3>) -> Option<Option<u32>> {
    match side_sq {
        None => Some(None),
        Some(d) if d.is_zero() => None,
        Some(d) => table.id_of(d).map(Some),
    }
}

/// Number of k-subsets of `p` that are regular simplices (optionally of one
/// squared side length), by exact coordinates.
pub fn count_brute_force(p: &PointSet, k: usize, side_sq: Option<&Quad3>) -> Result<u64> {
    require_k(k)?;
    if p.len() < k {
        return Ok(0);
    }
    let table = DistanceTable::new(p)?;
    let Some(side) = side_id(&table, side_sq) else {
        return Ok(0);
    };
    Ok((0..p.len())
        .into_par_iter()
        .map(|first| {
            let mut local = 0u64;
            visit_from(&table, k, side, first, &mut |_| local += 1);
            local
        })
        .sum())
}

/// Regular simplices of `p` as sorted vertex-index tuples, lexicographic.
pub fn regular_simplices(p: &PointSet, k: usize, side_sq: Option<&Quad3>) -> Result<Vec<Vec<usize>>> {
    require_k(k)?;
    let table = DistanceTable::new(p)?;
    let mut out = Vec::new();
    if let Some(side) = side_id(&table, side_sq) {
        for first in 0..p.len() {
            visit_from(&table, k, side, first, &mut |s| out.push(s.to_vec()));
        }
    }
    out.sort();
    Ok(out)
}

/// Coordinate census of an embeddable configuration, typed by components.
pub fn count_coords(config: &CircleConfig, k: usize, side_sq: Option<&Rational>) -> Result<CountReport> {
    require_k(k)?;
    let points = config.embed()?;
    let comp: Vec<usize> = config.labels().into_iter().map(|(c, _)| c).collect();
    let table = DistanceTable::new(&points)?;
    let side_q = side_sq.map(|s| Quad3::rational(s.clone()));
    let mut report = match side_id(&table, side_q.as_ref()) {
        None => CountReport::default(),
        Some(side) => {
            let counts = (0..points.len())
                .into_par_iter()
                .map(|first| {
                    let mut local = [0u64; 3];
                    visit_from(&table, k, side, first, &mut |s| {
                        local[simplex_type(s.iter().map(|&i| comp[i]))] += 1
                    });
                    local
                })
                .reduce(|| [0; 3], add3);
            CountReport::from_counts(counts)
        }
    };
    report.side_length_sq = side_sq.cloned();
    Ok(report)
}

/// Census of a configuration by the chosen method, optionally restricted to
/// one squared side length.
pub fn census(config: &CircleConfig, k: usize, method: Method, side_sq: Option<&Rational>) -> Result<CountReport> {
    let restrict = |r: CountReport| match side_sq {
        Some(s) => r.restrict_to_side(s, &config.radius_sq),
        None => r,
    };
    match method {
        Method::Coords => count_coords(config, k, side_sq),
        Method::Ticks => brute_force_structured(config, k).map(restrict),
        Method::Closed => count_structured(config, k).map(restrict),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lenz::{build_even_config, place_on_circle, Component, PartitionVector};

    fn even(parts: &[u64]) -> CircleConfig {
        let p = PartitionVector::new(parts.to_vec());
        build_even_config(p.total(), parts.len() as u64, &p).unwrap()
    }

    fn totals(r: &CountReport) -> (u64, u64, u64, u64) {
        let f = |x: &BigUint| x.to_u64().unwrap();
        (f(&r.delta1), f(&r.delta2), f(&r.delta3), f(&r.total))
    }

    #[test]
    fn chord_class_examples() {
        assert_eq!(tick_chord_class(12, 3).unwrap(), ChordClass::Quarter);
        assert_eq!(tick_chord_class(12, 9).unwrap(), ChordClass::Quarter);
        assert_eq!(tick_chord_class(12, 4).unwrap(), ChordClass::Third);
        assert_eq!(tick_chord_class(24, 5).unwrap(), ChordClass::Other);
        assert_eq!(tick_chord_class(24, 0).unwrap(), ChordClass::Zero);
        assert_eq!(tick_chord_class(24, 24).unwrap(), ChordClass::Zero);
        assert!(tick_chord_class(10, 3).is_err());
    }

    #[test]
    fn structured_simplex_examples() {
        let c = even(&[12, 12, 12]);
        assert!(is_structured_simplex(&c, &[(0, 0), (0, 3), (1, 7)]));
        assert!(is_structured_simplex(&c, &[(0, 0), (0, 4), (0, 8)]));
        assert!(!is_structured_simplex(&c, &[(0, 0), (0, 3), (0, 6)]));
        assert!(!is_structured_simplex(&c, &[(0, 0), (0, 4), (1, 0)]));
        assert!(is_structured_simplex(&c, &[(0, 0), (1, 5), (2, 11)]));
        assert!(is_structured_simplex(&c, &[(0, 0), (0, 9), (1, 1), (1, 4)]));
        assert!(!is_structured_simplex(&c, &[(0, 0), (0, 4), (0, 8), (1, 0)]));
    }

    #[test]
    fn three_points_pairwise_quarter_do_not_exist() {
        for modulus in [12u64, 24, 36, 48] {
            for a in 0..modulus {
                for b in (a + 1)..modulus {
                    for c in (b + 1)..modulus {
                        let q = |x: u64, y: u64| chord_class(modulus, y - x) == ChordClass::Quarter;
                        assert!(!(q(a, b) && q(b, c) && q(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn good_pair_and_triangle_examples() {
        let (m, t) = place_on_circle(12);
        assert_eq!(count_good_pairs(&t, m).unwrap(), 12);
        assert_eq!(count_inscribed_triangles(&t, m).unwrap(), 4);
        let (m, t) = place_on_circle(6);
        assert_eq!(count_good_pairs(&t, m).unwrap(), 5);
        let (m, t) = place_on_circle(9);
        assert_eq!(count_inscribed_triangles(&t, m).unwrap(), 1);
        let (m, t) = place_on_circle(8);
        assert_eq!(count_inscribed_triangles(&t, m).unwrap(), 0);
        assert_eq!(count_good_pairs(&[], 12).unwrap(), 0);
        assert!(count_good_pairs(&[0], 8).is_err());
    }

    /// Quarter-chord pairs of a tick bitmask, counted with a rotation.
    fn good_pairs_bitmask(mask: u64, modulus: u64) -> u64 {
        let full = (1u64 << modulus) - 1;
        let q = modulus / 4;
        let rotated = ((mask << q) | (mask >> (modulus - q))) & full;
        (mask & rotated).count_ones() as u64
    }

    /// Per-circle good pairs never exceed n_i (n_i ∈ 4Z) or n_i − 1
    /// (otherwise), over every tick set on moduli 12 and 24.
    #[test]
    fn good_pair_upper_bound_exhaustive() {
        for mask in 0u64..(1 << 12) {
            let ticks: Vec<u64> = (0..12).filter(|&t| mask >> t & 1 == 1).collect();
            assert_eq!(count_good_pairs(&ticks, 12).unwrap(), good_pairs_bitmask(mask, 12));
        }
        for modulus in [12u64, 24] {
            for mask in 0u64..(1 << modulus) {
                let n = mask.count_ones() as u64;
                if n > 16 {
                    continue;
                }
                let bound = if n.is_multiple_of(4) { n } else { n.saturating_sub(1) };
                assert!(good_pairs_bitmask(mask, modulus) <= bound, "{mask:b}");
            }
        }
    }

    #[test]
    fn good_pair_upper_bound_large_moduli_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for modulus in [36u64, 48] {
            for _ in 0..20_000 {
                let n = rng.gen_range(0..=16usize);
                let mut ticks: Vec<u64> = rand::seq::index::sample(&mut rng, modulus as usize, n)
                    .into_iter()
                    .map(|x| x as u64)
                    .collect();
                ticks.sort_unstable();
                let n = n as u64;
                let bound = if n.is_multiple_of(4) { n } else { n.saturating_sub(1) };
                assert!(count_good_pairs(&ticks, modulus).unwrap() <= bound);
            }
        }
    }

    #[test]
    fn census_examples_k3() {
        let c = even(&[12, 12, 12]);
        assert_eq!(totals(&brute_force_structured(&c, 3).unwrap()), (1728, 864, 12, 2604));
        assert_eq!(totals(&count_structured(&c, 3).unwrap()), (1728, 864, 12, 2604));
        assert_eq!(count_brute_force(&c.embed().unwrap(), 3, None).unwrap(), 2604);
        let c = even(&[1, 1, 1]);
        assert_eq!(totals(&brute_force_structured(&c, 3).unwrap()), (1, 0, 0, 1));
        let c = even(&[6, 6, 8]);
        assert_eq!(totals(&count_structured(&c, 3).unwrap()), (288, 236, 0, 524));
        assert_eq!(totals(&brute_force_structured(&c, 3).unwrap()), (288, 236, 0, 524));
    }

    #[test]
    fn dodecagon_alone() {
        let cfg = CircleConfig::new(2, Rational::one(), vec![Component::circle(12, (0..12).collect())]).unwrap();
        assert_eq!(count_brute_force(&cfg.embed().unwrap(), 3, None).unwrap(), 4);
        assert_eq!(totals(&count_structured(&cfg, 3).unwrap()), (0, 0, 4, 4));
    }

    #[test]
    fn census_example_k4() {
        let c = even(&[8, 8, 8, 8]);
        assert_eq!(totals(&count_structured(&c, 4).unwrap()), (4096, 6528, 0, 10624));
        assert_eq!(totals(&brute_force_structured(&c, 4).unwrap()), (4096, 6528, 0, 10624));
    }

    #[test]
    fn side_filter() {
        let c = even(&[12, 12, 12]);
        let two = Rational::from(2);
        let three = Rational::from(3);
        assert_eq!(census(&c, 3, Method::Closed, Some(&two)).unwrap().total, 2592u32.into());
        assert_eq!(census(&c, 3, Method::Coords, Some(&two)).unwrap().total, 2592u32.into());
        assert_eq!(census(&c, 3, Method::Ticks, Some(&three)).unwrap().total, 12u32.into());
        assert_eq!(census(&c, 3, Method::Coords, Some(&Rational::from(5))).unwrap().total, 0u32.into());
        let e = c.embed().unwrap();
        assert_eq!(count_brute_force(&e, 3, Some(&Quad3::from_int(3))).unwrap(), 12);
    }

    #[test]
    fn mixed_radii_rejected_by_structured_methods() {
        let mut c = even(&[2, 2, 2]);
        c.components[1].radius_sq = Some(Rational::from(4));
        assert!(matches!(count_structured(&c, 3), Err(Error::UnsupportedConfiguration(_))));
        assert!(matches!(brute_force_structured(&c, 3), Err(Error::UnsupportedConfiguration(_))));
        // Coordinates still work: radius 2 on the middle circle.
        let r = count_coords(&c, 3, None).unwrap();
        let direct = count_brute_force(&c.embed().unwrap(), 3, None).unwrap();
        assert_eq!(r.total, direct.into());
    }

    #[test]
    fn report_json_and_csv() {
        let r = CountReport::new(1728u32.into(), 864u32.into(), 12u32.into());
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"delta1":1728,"delta2":864,"delta3":12,"total":2604}"#);
        assert_eq!(serde_json::from_str::<CountReport>(&s).unwrap(), r);
        assert_eq!(r.csv_row(), "1728,864,12,2604");
        let big = CountReport::new(BigUint::from(u64::MAX) * 4u32, 0u32.into(), 0u32.into());
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<CountReport>(&s).unwrap(), big);
    }

    #[test]
    fn enumeration_independent_of_input_order() {
        use crate::geometry::PointSet;
        let e = even(&[5, 6, 7]).embed().unwrap();
        let mut pts = e.points().to_vec();
        pts.reverse();
        pts.rotate_left(4);
        let shuffled = PointSet::new(e.dim(), pts).unwrap();
        assert_eq!(
            count_brute_force(&e, 3, None).unwrap(),
            count_brute_force(&shuffled, 3, None).unwrap()
        );
    }
}
