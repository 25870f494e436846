//! Exact coordinate geometry over Q(√3).
//!
//! Everything works with squared distances, so no square root is ever taken.
//! The orthogonality and common-center predicates here are the executable
//! form of the structural facts about equidistant point families: if every
//! point of `P` is equidistant from `Q` and vice versa, the affine spans are
//! orthogonal and the two sets lie on spheres with one center.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exactnum::{Quad3, Rational};

/// A point of `R^d` with coordinates in Q(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Quad3>);

impl Point {
    pub fn origin(dim: usize) -> Self {
        Point(vec![Quad3::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Quad3] {
        &self.0
    }

    pub fn sub(&self, other: &Point) -> Vec<Quad3> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

impl From<Vec<Quad3>> for Point {
    fn from(v: Vec<Quad3>) -> Self {
        Point(v)
    }
}

/// Build a point from small integer coordinates.
pub fn int_point(coords: &[i64]) -> Point {
    Point(coords.iter().map(|&c| Quad3::from_int(c)).collect())
}

/// A finite set of distinct points sharing one ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Point>,
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPointSet::deserialize(d)?;
        PointSet::new(raw.dim, raw.points).map_err(serde::de::Error::custom)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("ambient dimension must be positive"));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        let distinct: BTreeSet<&Point> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(domain("points of a point set must be pairwise distinct"));
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sub-collection by index, preserving order.
    pub fn select(&self, idx: &[usize]) -> Result<PointSet> {
        let pts = idx
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| domain(format!("point index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.dim, pts)
    }
}

fn dot(u: &[Quad3], v: &[Quad3]) -> Quad3 {
    u.iter().zip(v).fold(Quad3::zero(), |acc, (a, b)| &acc + &(a * b))
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(())
}

/// Squared Euclidean distance.
pub fn sq_dist(p: &Point, q: &Point) -> Result<Quad3> {
    check_dims(p, q)?;
    let d = p.sub(q);
    Ok(dot(&d, &d))
}

/// True iff all pairwise squared distances are equal and nonzero.
pub fn is_regular_simplex(pts: &[Point]) -> Result<bool> {
    if pts.len() < 2 {
        return Err(domain("a simplex needs at least two vertices"));
    }
    let side = sq_dist(&pts[0], &pts[1])?;
    if side.is_zero() {
        return Ok(false);
    }
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            if sq_dist(&pts[i], &pts[j])? != side {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `P → Q`: every point of `P` is equidistant from all points of `Q`.
pub fn arrow_relation(p: &PointSet, q: &PointSet) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let Some((q0, rest)) = q.points().split_first() else {
        return Err(domain("arrow relation needs a nonempty target"));
    };
    for x in p.points() {
        let r = sq_dist(x, q0)?;
        for y in rest {
            if sq_dist(x, y)? != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row-reduce `rows` in place over Q(√3) to reduced echelon form.
/// Returns the pivot columns; rows past `pivots.len()` are zero afterwards.
fn row_reduce(rows: &mut [Vec<Quad3>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn difference_rows(p: &PointSet) -> Vec<Vec<Quad3>> {
    let base = &p.points()[0];
    p.points()[1..].iter().map(|x| x.sub(base)).collect()
}

/// Dimension of the affine span: rank of `{p_i − p_1}` by exact elimination.
pub fn affine_span_dim(p: &PointSet) -> Result<usize> {
    if p.is_empty() {
        return Err(domain("affine span of an empty set"));
    }
    let mut rows = difference_rows(p);
    Ok(row_reduce(&mut rows, p.dim()).len())
}

/// True iff `⟨p_i − p_1, q_j − q_1⟩ = 0` for all `i`, `j`.
pub fn spans_orthogonal(p: &PointSet, q: &PointSet) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if p.len() < 2 || q.len() < 2 {
        return Err(domain("orthogonality of spans needs at least two points on each side"));
    }
    let dp = difference_rows(p);
    let dq = difference_rows(q);
    Ok(dp.iter().all(|u| dq.iter().all(|v| dot(u, v).is_zero())))
}

/// The unique point of `Aff(P)` equidistant from every point of `P`.
///
/// Writes the center as `p_1 + Σ λ_j u_j` over an echelon basis `u_j` of the
/// span, then solves `2⟨c − p_1, p_i − p_1⟩ = |p_i − p_1|²`.
pub fn circumcenter(p: &PointSet) -> Result<Point> {
    if p.is_empty() {
        return Err(domain("circumcenter of an empty set"));
    }
    let base = &p.points()[0];
    let diffs = difference_rows(p);
    let mut basis = diffs.clone();
    let rank = row_reduce(&mut basis, p.dim()).len();
    basis.truncate(rank);
    if rank == 0 {
        return Ok(base.clone());
    }

    // Augmented system: one row per difference vector, `rank` unknowns.
    let two = Quad3::from_int(2);
    let mut system: Vec<Vec<Quad3>> = diffs
        .iter()
        .map(|d| {
            let mut row: Vec<Quad3> = basis.iter().map(|u| &two * &dot(u, d)).collect();
            row.push(dot(d, d));
            row
        })
        .collect();
    let pivots = row_reduce(&mut system, rank + 1);
    if pivots.contains(&rank) {
        return Err(Error::NotCospherical);
    }
    debug_assert_eq!(pivots.len(), rank);

    let mut center = base.0.clone();
    for (j, u) in basis.iter().enumerate() {
        let lambda = &system[j][rank];
        for (c, x) in center.iter_mut().zip(u) {
            *c = &*c + &(lambda * x);
        }
    }
    Ok(Point(center))
}

/// Decimal approximations of every coordinate, rounded to `precision` digits.
///
/// For display and sanity checks only; no predicate in this crate reads it.
pub fn float_view(p: &PointSet, precision: u32) -> Vec<Vec<f64>> {
    let scale = 10f64.powi(precision as i32);
    p.points()
        .iter()
        .map(|pt| pt.coords().iter().map(|c| (c.to_f64() * scale).round() / scale).collect())
        .collect()
}

/// Squared norm of a vector, used when checking radii.
pub fn sq_norm(p: &Point) -> Quad3 {
    dot(&p.0, &p.0)
}

/// Convenience: the rational `n/d` as a coordinate.
pub fn ratio(n: i64, d: i64) -> Quad3 {
    Quad3::rational(Rational::new(n, d).expect("nonzero denominator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{cos30_table, sin30_table};
    use proptest::prelude::*;

    fn dodecagon_vertex(step: u32, dim: usize, plane: (usize, usize)) -> Point {
        let mut p = Point::origin(dim);
        p.0[plane.0] = cos30_table(step);
        p.0[plane.1] = sin30_table(step);
        p
    }

    fn set(dim: usize, pts: Vec<Point>) -> PointSet {
        PointSet::new(dim, pts).unwrap()
    }

    #[test]
    fn sq_dist_examples() {
        assert_eq!(sq_dist(&int_point(&[0, 0]), &int_point(&[1, 0])).unwrap(), Quad3::one());
        let v0 = dodecagon_vertex(0, 2, (0, 1));
        let v1 = dodecagon_vertex(1, 2, (0, 1));
        let d = sq_dist(&v0, &v1).unwrap();
        assert_eq!(d, "2+-1*rt3".parse().unwrap());
        assert!((d.to_f64() - 0.2679).abs() < 1e-4);
        assert!(sq_dist(&v0, &v0).unwrap().is_zero());
        assert!(matches!(
            sq_dist(&int_point(&[0]), &int_point(&[0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn chord_table_of_the_dodecagon() {
        // 2 − 2cos(30°·s) for s = 1..6
        let want = ["2+-1*rt3", "1", "2", "3", "2+1*rt3", "4"];
        let v0 = dodecagon_vertex(0, 2, (0, 1));
        for (s, w) in (1..=6).zip(want) {
            let d = sq_dist(&v0, &dodecagon_vertex(s, 2, (0, 1))).unwrap();
            assert_eq!(d, w.parse::<Quad3>().unwrap(), "step {s}");
        }
    }

    #[test]
    fn regular_simplex_examples() {
        let pts = [int_point(&[1, 0, 0, 0]), int_point(&[0, 1, 0, 0]), int_point(&[0, 0, 1, 0])];
        assert!(is_regular_simplex(&pts).unwrap());
        let tri: Vec<_> = [0, 4, 8].iter().map(|&s| dodecagon_vertex(s, 2, (0, 1))).collect();
        assert!(is_regular_simplex(&tri).unwrap());
        let not: Vec<_> = [0, 3, 6].iter().map(|&s| dodecagon_vertex(s, 2, (0, 1))).collect();
        assert!(!is_regular_simplex(&not).unwrap());
        assert!(is_regular_simplex(&pts[..1]).is_err());
    }

    #[test]
    fn arrow_relation_examples() {
        let p = set(4, (0..4).map(|s| dodecagon_vertex(s * 3, 4, (0, 1))).collect());
        let q = set(4, (0..12).map(|s| dodecagon_vertex(s, 4, (2, 3))).collect());
        assert!(arrow_relation(&p, &q).unwrap());
        assert!(arrow_relation(&q, &p).unwrap());

        let origin = set(2, vec![int_point(&[0, 0])]);
        let circle = set(2, (0..12).map(|s| dodecagon_vertex(s, 2, (0, 1))).collect());
        assert!(arrow_relation(&origin, &circle).unwrap());

        let p = set(4, vec![int_point(&[2, 0, 0, 0])]);
        let q = set(4, vec![int_point(&[0, 0, 1, 0]), int_point(&[1, 0, 0, 0])]);
        assert!(!arrow_relation(&p, &q).unwrap());
    }

    #[test]
    fn affine_span_examples() {
        let tri = set(2, vec![int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[0, 1])]);
        assert_eq!(affine_span_dim(&tri).unwrap(), 2);
        assert_eq!(affine_span_dim(&set(3, vec![int_point(&[1, 2, 3])])).unwrap(), 0);
        let dodeca = set(6, (0..12).map(|s| dodecagon_vertex(s, 6, (0, 1))).collect());
        assert_eq!(affine_span_dim(&dodeca).unwrap(), 2);
        let line = set(3, vec![int_point(&[0, 0, 0]), int_point(&[1, 1, 1]), int_point(&[2, 2, 2])]);
        assert_eq!(affine_span_dim(&line).unwrap(), 1);
    }

    #[test]
    fn spans_orthogonal_examples() {
        let p = set(4, (0..12).map(|s| dodecagon_vertex(s, 4, (0, 1))).collect());
        let q = set(4, (0..12).map(|s| dodecagon_vertex(s, 4, (2, 3))).collect());
        assert!(spans_orthogonal(&p, &q).unwrap());
        let a = set(2, vec![int_point(&[0, 0]), int_point(&[1, 0])]);
        let b = set(2, vec![int_point(&[0, 1]), int_point(&[3, 1])]);
        assert!(!spans_orthogonal(&a, &b).unwrap());
    }

    #[test]
    fn circumcenter_examples() {
        let tri = set(2, [0, 4, 8].iter().map(|&s| dodecagon_vertex(s, 2, (0, 1))).collect());
        assert_eq!(circumcenter(&tri).unwrap(), Point::origin(2));
        let right = set(2, vec![int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[0, 2])]);
        let c = circumcenter(&right).unwrap();
        assert_eq!(c, int_point(&[1, 1]));
        for p in right.points() {
            assert_eq!(sq_dist(&c, p).unwrap(), Quad3::from_int(2));
        }
        let line = set(2, vec![int_point(&[0, 0]), int_point(&[1, 0]), int_point(&[2, 0])]);
        assert_eq!(circumcenter(&line), Err(Error::NotCospherical));
        // Circle in a 3-space of R^5: center must stay in the span.
        let lifted = set(
            5,
            (0..12)
                .map(|s| {
                    let mut p = dodecagon_vertex(s, 5, (1, 3));
                    p.0[4] = Quad3::from_int(7);
                    p
                })
                .collect(),
        );
        assert_eq!(circumcenter(&lifted).unwrap(), int_point(&[0, 0, 0, 0, 7]));
    }

    #[test]
    fn float_view_examples() {
        let p = set(
            3,
            vec![Point(vec!["2+-1*rt3".parse().unwrap(), Quad3::zero(), Quad3::sqrt3()])],
        );
        let v = float_view(&p, 6);
        assert_eq!(v, vec![vec![0.267949, 0.0, 1.732051]]);
    }

    #[test]
    fn point_set_invariants() {
        assert!(PointSet::new(2, vec![int_point(&[0, 0]), int_point(&[0, 0])]).is_err());
        assert!(PointSet::new(2, vec![int_point(&[0, 0, 1])]).is_err());
        let json = r#"{"dim":2,"points":[["1","0+1/2*rt3"],["0","0"]]}"#;
        let ps: PointSet = serde_json::from_str(json).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(
            serde_json::to_string(&ps).unwrap(),
            r#"{"dim":2,"points":[["1+0*rt3","0+1/2*rt3"],["0+0*rt3","0+0*rt3"]]}"#
        );
    }

    fn small_point(dim: usize) -> impl Strategy<Value = Point> {
        proptest::collection::vec((-3i64..4, -2i64..3), dim).prop_map(|cs| {
            Point(
                cs.into_iter()
                    .map(|(a, b)| Quad3::new(Rational::from(a), Rational::from(b)))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn sq_dist_symmetric_and_definite(p in small_point(3), q in small_point(3)) {
            let d = sq_dist(&p, &q).unwrap();
            prop_assert_eq!(&d, &sq_dist(&q, &p).unwrap());
            prop_assert_eq!(d.is_zero(), p == q);
            prop_assert!(d >= Quad3::zero());
        }

        #[test]
        fn span_dim_invariant_under_translation_and_permutation(
            pts in proptest::collection::btree_set(small_point(3), 1..6),
            shift in small_point(3),
            rot in 0usize..6,
        ) {
            let mut pts: Vec<Point> = pts.into_iter().collect();
            let base = affine_span_dim(&PointSet::new(3, pts.clone()).unwrap()).unwrap();
            let moved: Vec<Point> = pts
                .iter()
                .map(|p| Point(p.0.iter().zip(&shift.0).map(|(a, b)| a + b).collect()))
                .collect();
            prop_assert_eq!(affine_span_dim(&PointSet::new(3, moved).unwrap()).unwrap(), base);
            let k = rot % pts.len();
            pts.rotate_left(k);
            pts.reverse();
            prop_assert_eq!(affine_span_dim(&PointSet::new(3, pts).unwrap()).unwrap(), base);
        }
    }
}
