//! Lenz-type constructions: points on pairwise orthogonal circles sharing a
//! center and a radius.
//!
//! Positions on a circle are integer ticks modulo `N` (angle `2π·tick/N`),
//! with `N` always a multiple of 12 so that quarter and third turns are ticks.
//! Multiple dodecagon copies on one circle use modulus `N = 12m` and copy `j`
//! sits at ticks `j + c·m`; two ticks from different copies then differ by a
//! non-multiple of `m`, while a quarter turn is `3m` and a third is `4m`, so
//! cross-copy chords never produce an extra good pair or inscribed triangle.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exactnum::{cos30_table, sin30_table, Quad3, Rational};
use crate::geometry::{Point, PointSet};

/// Dodecagon vertex order used for a partial copy: v1, v4, v7, v10, v2, v5, ...
pub const PLACEMENT_ORDER: [u64; 12] = [0, 3, 6, 9, 1, 4, 7, 10, 2, 5, 8, 11];

/// Class sizes `(n_1, …, n_r)` of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionVector(pub Vec<u64>);

impl PartitionVector {
    pub fn new(entries: Vec<u64>) -> Self {
        PartitionVector(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn parts(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Nondecreasing copy, the canonical form for comparing maximizers.
    pub fn sorted(&self) -> PartitionVector {
        let mut v = self.0.clone();
        v.sort_unstable();
        PartitionVector(v)
    }
}

impl std::fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for PartitionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        body.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(PartitionVector)
    }
}

/// The partition selected by the four-case rule on `p = n mod 2r`.
///
/// Entries are returned in the displayed nondecreasing order.
pub fn theorem12_partition(n: u64, r: u64) -> Result<PartitionVector> {
    if r < 3 {
        return Err(domain("the number of circles must be at least 3"));
    }
    if n < r {
        return Err(domain(format!("n = {n} must be at least r = {r}")));
    }
    let p = n % (2 * r);
    let q = n / r;
    let rep = |x: u64, times: u64| std::iter::repeat_n(x, times as usize);
    let v: Vec<u64> = match (p < r, p.is_multiple_of(2)) {
        (true, true) => rep(q, r - p / 2).chain(rep(q + 2, p / 2)).collect(),
        (true, false) => rep(q, r - p.div_ceil(2))
            .chain(rep(q + 1, 1))
            .chain(rep(q + 2, (p - 1) / 2))
            .collect(),
        (false, true) => rep(q - 1, r - p / 2).chain(rep(q + 1, p / 2)).collect(),
        (false, false) => rep(q - 1, r - p.div_ceil(2))
            .chain(rep(q, 1))
            .chain(rep(q + 1, (p - 1) / 2))
            .collect(),
    };
    debug_assert_eq!(v.iter().sum::<u64>(), n);
    Ok(PartitionVector(v))
}

/// Balanced split of `n` into `r` classes, larger classes first.
pub fn balanced_partition(n: u64, r: u64) -> PartitionVector {
    let (q, extra) = (n / r, n % r);
    PartitionVector((0..r).map(|i| q + u64::from(i < extra)).collect())
}

/// Placement of `n_i` points on one circle: returns `(N, sorted ticks)`.
pub fn place_on_circle(n_i: u64) -> (u64, Vec<u64>) {
    let m = n_i.div_ceil(12).max(1);
    let full = n_i / 12;
    let rest = (n_i % 12) as usize;
    let mut ticks: Vec<u64> = (0..full).flat_map(|j| (0..12).map(move |c| j + c * m)).collect();
    ticks.extend(PLACEMENT_ORDER[..rest].iter().map(|&c| full + c * m));
    ticks.sort_unstable();
    (12 * m, ticks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Circle,
    /// A 2-sphere occupying three coordinates; points lie on the great
    /// circle spanned by its first two coordinates.
    Sphere2,
}

impl ComponentKind {
    pub fn coords(self) -> usize {
        match self {
            ComponentKind::Circle => 2,
            ComponentKind::Sphere2 => 3,
        }
    }
}

/// One circle (or great circle of a 2-sphere) of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub modulus: u64,
    /// Squared radius when it differs from the configuration's common one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_sq: Option<Rational>,
    pub ticks: Vec<u64>,
}

impl Component {
    pub fn circle(modulus: u64, ticks: Vec<u64>) -> Self {
        Component { kind: ComponentKind::Circle, modulus, radius_sq: None, ticks }
    }

    pub fn len(&self) -> usize {
        self.ticks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ticks.is_empty()
    }
}

/// Points on pairwise orthogonal circles with a common center at the origin.
///
/// Component `i` occupies the next `kind.coords()` ambient coordinates after
/// component `i − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleConfig {
    pub ambient_dim: usize,
    pub components: Vec<Component>,
    pub radius_sq: Rational,
}

#[derive(Deserialize)]
struct RawConfig {
    ambient_dim: usize,
    components: Vec<Component>,
    radius_sq: Rational,
}

impl<'de> Deserialize<'de> for CircleConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawConfig::deserialize(d)?;
        CircleConfig::new(raw.ambient_dim, raw.radius_sq, raw.components)
            .map_err(serde::de::Error::custom)
    }
}

impl CircleConfig {
    pub fn new(ambient_dim: usize, radius_sq: Rational, components: Vec<Component>) -> Result<Self> {
        let cfg = CircleConfig { ambient_dim, components, radius_sq };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.radius_sq.signum() != std::cmp::Ordering::Greater {
            return Err(domain("radius_sq must be positive"));
        }
        let used: usize = self.components.iter().map(|c| c.kind.coords()).sum();
        if used > self.ambient_dim {
            return Err(domain(format!(
                "components occupy {used} coordinates but ambient_dim is {}",
                self.ambient_dim
            )));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.modulus == 0 || c.modulus % 12 != 0 {
                return Err(domain(format!("component {i}: modulus {} is not a positive multiple of 12", c.modulus)));
            }
            if c.ticks.windows(2).any(|w| w[0] >= w[1]) {
                return Err(domain(format!("component {i}: ticks must be strictly increasing")));
            }
            if c.ticks.last().is_some_and(|&t| t >= c.modulus) {
                return Err(domain(format!("component {i}: tick out of range for modulus {}", c.modulus)));
            }
            if let Some(r) = &c.radius_sq {
                if r.signum() != std::cmp::Ordering::Greater {
                    return Err(domain(format!("component {i}: radius_sq must be positive")));
                }
            }
        }
        Ok(())
    }

    pub fn partition(&self) -> PartitionVector {
        PartitionVector(self.components.iter().map(|c| c.len() as u64).collect())
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().map(Component::len).sum()
    }

    pub fn component_radius_sq(&self, i: usize) -> &Rational {
        self.components[i].radius_sq.as_ref().unwrap_or(&self.radius_sq)
    }

    /// True when every component shares the common squared radius.
    pub fn has_common_radius(&self) -> bool {
        (0..self.components.len()).all(|i| *self.component_radius_sq(i) == self.radius_sq)
    }

    /// `(component, tick)` of every point, in component order then tick order.
    /// This is also the vertex order of [`CircleConfig::embed`].
    pub fn labels(&self) -> Vec<(usize, u64)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.ticks.iter().map(move |&t| (i, t)))
            .collect()
    }

    /// True when [`CircleConfig::embed`] can represent every point exactly:
    /// each tick is a multiple of 30° and each radius is a rational.
    pub fn is_embeddable(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| {
            c.ticks.iter().all(|&t| (t * 12) % c.modulus == 0)
                && self.component_radius_sq(i).sqrt_exact().is_some()
        })
    }

    /// Exact coordinates in Q(√3).
    pub fn embed(&self) -> Result<PointSet> {
        let mut pts = Vec::with_capacity(self.point_count());
        let mut base = 0;
        for (i, c) in self.components.iter().enumerate() {
            let radius = self.component_radius_sq(i).sqrt_exact().ok_or_else(|| {
                Error::UnsupportedConfiguration(format!("component {i}: radius is not rational"))
            })?;
            for &t in &c.ticks {
                if (t * 12) % c.modulus != 0 {
                    return Err(Error::UnsupportedConfiguration(format!(
                        "component {i}: tick {t}/{} is not a multiple of 30 degrees",
                        c.modulus
                    )));
                }
                let step = (t * 12 / c.modulus) as u32;
                let mut coords = vec![Quad3::zero(); self.ambient_dim];
                coords[base] = cos30_table(step).scale(&radius);
                coords[base + 1] = sin30_table(step).scale(&radius);
                pts.push(Point(coords));
            }
            base += c.kind.coords();
        }
        PointSet::new(self.ambient_dim, pts)
    }
}

/// Even-dimension construction: `r` unit circles in `R^{2r}`.
pub fn build_even_config(n: u64, r: u64, partition: &PartitionVector) -> Result<CircleConfig> {
    if r < 3 {
        return Err(domain("the number of circles must be at least 3"));
    }
    if partition.parts() as u64 != r {
        return Err(domain(format!("partition has {} parts, expected {r}", partition.parts())));
    }
    if partition.total() != n {
        return Err(domain(format!("partition sums to {}, expected {n}", partition.total())));
    }
    let components = partition
        .entries()
        .iter()
        .map(|&n_i| {
            let (modulus, ticks) = place_on_circle(n_i);
            Component::circle(modulus, ticks)
        })
        .collect();
    CircleConfig::new(2 * r as usize, Rational::one(), components)
}

/// Odd-dimension skeleton: `r − 1` unit circles and one unit 2-sphere in
/// `R^{2r+1}`, with a balanced split. Sphere points go on a great circle.
pub fn build_odd_config(n: u64, r: u64) -> Result<CircleConfig> {
    if r < 3 {
        return Err(domain("the number of components must be at least 3"));
    }
    let part = balanced_partition(n, r);
    let mut components: Vec<Component> = part
        .entries()
        .iter()
        .map(|&n_i| {
            let (modulus, ticks) = place_on_circle(n_i);
            Component::circle(modulus, ticks)
        })
        .collect();
    if let Some(last) = components.last_mut() {
        last.kind = ComponentKind::Sphere2;
    }
    CircleConfig::new(2 * r as usize + 1, Rational::one(), components)
}
