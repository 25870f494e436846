//! Uniform hypergraphs: the simplex hypergraph of a point set, the padded
//! clique pattern `H^{(k)}_{r+1}`, blowups, and a backtracking containment
//! test for small patterns.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::census::{regular_simplices, structured_simplices};
use crate::error::{domain, Result};
use crate::geometry::PointSet;
use crate::lenz::CircleConfig;

/// A `k`-uniform hypergraph on vertices `0..n`. Edges are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    edges: BTreeSet<Vec<usize>>,
    k: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawHypergraph {
    edges: Vec<Vec<usize>>,
    k: usize,
    n: usize,
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(d)?;
        Hypergraph::new(raw.n, raw.k, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph {
    /// Rejects edges of the wrong size, with repeated vertices, or out of
    /// range; duplicate edges are rejected too.
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(domain("uniformity must be positive"));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k {
                return Err(domain(format!("edge {e:?} does not have {k} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(domain(format!("edge {e:?} repeats a vertex")));
            }
            if e.last().is_some_and(|&v| v >= n) {
                return Err(domain(format!("edge {e:?} has a vertex outside 0..{n}")));
            }
            if !set.insert(e.clone()) {
                return Err(domain(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Hypergraph { edges: set, k, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.edges.iter()
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        let mut v = e.to_vec();
        v.sort_unstable();
        self.edges.contains(&v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Apply a vertex relabeling `v ↦ perm[v]` onto `n` vertices.
    pub fn relabel(&self, perm: &[usize], n: usize) -> Result<Hypergraph> {
        Hypergraph::new(n, self.k, self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()))
    }
}

/// Hypergraph of regular `(k−1)`-simplices of a point set.
pub fn simplex_hypergraph_of_points(p: &PointSet, k: usize) -> Result<Hypergraph> {
    Hypergraph::new(p.len(), k, regular_simplices(p, k, None)?)
}

/// Hypergraph of regular `(k−1)`-simplices of a configuration; vertex order
/// is [`CircleConfig::labels`].
pub fn simplex_hypergraph_of_config(c: &CircleConfig, k: usize) -> Result<Hypergraph> {
    Hypergraph::new(c.point_count(), k, structured_simplices(c, k)?)
}

/// Input to [`build_simplex_hypergraph`].
pub enum SimplexSource<'a> {
    Points(&'a PointSet),
    Config(&'a CircleConfig),
}

pub fn build_simplex_hypergraph(source: SimplexSource<'_>, k: usize) -> Result<Hypergraph> {
    match source {
        SimplexSource::Points(p) => simplex_hypergraph_of_points(p, k),
        SimplexSource::Config(c) => simplex_hypergraph_of_config(c, k),
    }
}

/// `K_{r+1}` with each pair padded by `k − 2` fresh vertices into a `k`-edge.
///
/// Core vertices are `0..=r`; padding vertices follow in edge order.
pub fn make_pattern_h(r: usize, k: usize) -> Result<Hypergraph> {
    if k < 3 || r < 2 {
        return Err(domain(format!("need r >= 2 and k >= 3, got r = {r}, k = {k}")));
    }
    let mut next = r + 1;
    let mut edges = Vec::new();
    for (a, b) in (0..=r).tuple_combinations() {
        let mut e = vec![a, b];
        e.extend(next..next + (k - 2));
        next += k - 2;
        edges.push(e);
    }
    Hypergraph::new(next, k, edges)
}

/// Replace every vertex by an independent set of size `t` and every edge by
/// all `t^k` transversals. Vertex `v` becomes `v·t .. v·t + t`.
pub fn blowup(h: &Hypergraph, t: usize) -> Result<Hypergraph> {
    if t == 0 {
        return Err(domain("blowup factor must be at least 1"));
    }
    let edges = h.edges().flat_map(|e| {
        e.iter()
            .map(|&v| (v * t)..(v * t + t))
            .multi_cartesian_product()
    });
    Hypergraph::new(h.vertex_count() * t, h.uniformity(), edges)
}

/// Whether `g` contains a (not necessarily induced) copy of `h`: an
/// injective vertex map sending every edge of `h` onto an edge of `g`.
///
/// Backtracking over pattern vertices in order of decreasing degree, each
/// next vertex preferring one adjacent to the already-mapped ones. A target
/// vertex is a candidate only if its degree is at least the pattern degree,
/// and every pattern edge is checked as soon as all its vertices are mapped.
pub fn contains_copy(g: &Hypergraph, h: &Hypergraph) -> Result<bool> {
    if g.uniformity() != h.uniformity() {
        return Err(domain("uniformities differ"));
    }
    if h.vertex_count() > g.vertex_count() {
        return Ok(false);
    }
    if h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    let order = search_order(h);
    let mut position = vec![usize::MAX; h.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Edges of h grouped by the step at which they become fully mapped.
    let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); order.len()];
    for e in h.edges() {
        let last = e.iter().map(|&v| position[v]).max().expect("edges are nonempty");
        closing[last].push(e);
    }
    let search = Search {
        g,
        g_deg: g.degrees(),
        h_deg: h.degrees(),
        g_edges: g.edges().cloned().collect(),
        order,
        closing,
    };
    let mut map = vec![usize::MAX; h.vertex_count()];
    let mut used = vec![false; g.vertex_count()];
    Ok(search.extend(0, &mut map, &mut used))
}

fn search_order(h: &Hypergraph) -> Vec<usize> {
    let deg = h.degrees();
    let n = h.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let adj: Vec<Vec<usize>> = {
        let mut a = vec![Vec::new(); n];
        for e in h.edges() {
            for &u in e {
                for &v in e {
                    if u != v {
                        a[u].push(v);
                    }
                }
            }
        }
        a
    };
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], deg[v], std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in &adj[next] {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Hypergraph,
    g_deg: Vec<usize>,
    h_deg: Vec<usize>,
    g_edges: HashSet<Vec<usize>>,
    order: Vec<usize>,
    closing: Vec<Vec<&'a Vec<usize>>>,
}

impl Search<'_> {
    fn extend(&self, step: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if step == self.order.len() {
            return true;
        }
        let hv = self.order[step];
        let mut image = Vec::with_capacity(self.g.uniformity());
        for gv in 0..self.g.vertex_count() {
            if used[gv] || self.g_deg[gv] < self.h_deg[hv] {
                continue;
            }
            map[hv] = gv;
            let ok = self.closing[step].iter().all(|e| {
                image.clear();
                image.extend(e.iter().map(|&v| map[v]));
                image.sort_unstable();
                self.g_edges.contains(&image)
            });
            if ok {
                used[gv] = true;
                if self.extend(step + 1, map, used) {
                    return true;
                }
                used[gv] = false;
            }
            map[hv] = usize::MAX;
        }
        false
    }
}
