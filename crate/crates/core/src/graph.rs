//! Zero-divisor graphs and their metric invariants.
//!
//! Vertices are the nonzero zero-divisors, kept in handle order; adjacency is
//! stored both as neighbour lists and as bit rows so breadth-first search can
//! expand a whole frontier with word operations.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, ZdaError};
use crate::ring::FiniteRing;

const NONE: u32 = u32::MAX;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diameter {
    /// The graph has no vertices.
    Empty,
    Value(u32),
}

impl Diameter {
    pub fn value(self) -> Option<u32> {
        match self {
            Diameter::Empty => None,
            Diameter::Value(d) => Some(d),
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Empty => f.write_str("empty"),
            Diameter::Value(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Acyclic,
    Value(u32),
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Acyclic => f.write_str("acyclic"),
            Girth::Value(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone)]
pub struct ZeroDivisorGraph {
    ring: FiniteRing,
    vertices: Vec<usize>,
    /// ring handle -> vertex index
    index: Vec<u32>,
    neighbours: Vec<Vec<u32>>,
    rows: Vec<Vec<u64>>,
}

impl fmt::Debug for ZeroDivisorGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({}): {} vertices, {} edges", self.ring.label(), self.vertex_count(), self.edge_count())
    }
}

pub fn build_gamma(ring: &FiniteRing) -> ZeroDivisorGraph {
    let z = ring.zero_ix();
    let vertices: Vec<usize> = ring.zero_divisors().handles().filter(|&h| h != z).collect();
    let mut index = vec![NONE; ring.size()];
    for (i, &h) in vertices.iter().enumerate() {
        index[h] = i as u32;
    }
    let n = vertices.len();
    let words = n.div_ceil(64);
    let neighbours: Vec<Vec<u32>> = vertices
        .par_iter()
        .map(|&a| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b != a && ring.mul_ix(a, b) == z)
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();
    let rows = neighbours
        .iter()
        .map(|ns| {
            let mut row = vec![0u64; words];
            for &j in ns {
                row[j as usize / 64] |= 1 << (j % 64);
            }
            row
        })
        .collect();
    ZeroDivisorGraph { ring: ring.clone(), vertices, index, neighbours, rows }
}

impl ZeroDivisorGraph {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    /// Vertex handles in increasing order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_vertex(&self, h: usize) -> bool {
        self.index.get(h).is_some_and(|&i| i != NONE)
    }

    fn vertex_index(&self, h: usize) -> Result<usize> {
        match self.index.get(h) {
            Some(&i) if i != NONE => Ok(i as usize),
            _ => Err(ZdaError::InvalidVertex(match self.ring.names().get(h) {
                Some(name) => format!("{name} is not a nonzero zero-divisor of {}", self.ring.label()),
                None => format!("handle {h} is outside {}", self.ring.label()),
            })),
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> Result<bool> {
        let (i, j) = (self.vertex_index(a)?, self.vertex_index(b)?);
        Ok(self.rows[i][j / 64] >> (j % 64) & 1 == 1)
    }

    /// Neighbour handles of vertex `h`.
    pub fn neighbours(&self, h: usize) -> Result<Vec<usize>> {
        let i = self.vertex_index(h)?;
        Ok(self.neighbours[i].iter().map(|&j| self.vertices[j as usize]).collect())
    }

    /// Sorted vertex-handle pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, ns) in self.neighbours.iter().enumerate() {
            for &j in ns {
                if (j as usize) > i {
                    out.push((self.vertices[i], self.vertices[j as usize]));
                }
            }
        }
        out
    }

    /// BFS levels from vertex index `src`; unreachable vertices get `NONE`.
    fn bfs(&self, src: usize) -> Vec<u32> {
        let n = self.vertex_count();
        let words = n.div_ceil(64);
        let mut dist = vec![NONE; n];
        let mut seen = vec![0u64; words];
        let mut frontier = vec![src];
        dist[src] = 0;
        seen[src / 64] |= 1 << (src % 64);
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = vec![0u64; words];
            for &v in &frontier {
                for (w, (acc, row)) in next.iter_mut().zip(&self.rows[v]).enumerate() {
                    *acc |= row & !seen[w];
                }
            }
            frontier.clear();
            for (w, word) in next.iter().enumerate() {
                let mut bits = *word;
                seen[w] |= bits;
                while bits != 0 {
                    let j = w * 64 + bits.trailing_zeros() as usize;
                    dist[j] = level;
                    frontier.push(j);
                    bits &= bits - 1;
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<u32> {
        let (i, j) = (self.vertex_index(u)?, self.vertex_index(v)?);
        match self.bfs(i)[j] {
            NONE => Err(self.disconnected(i, j)),
            d => Ok(d),
        }
    }

    fn disconnected(&self, i: usize, j: usize) -> ZdaError {
        ZdaError::TheoremViolation {
            theorem: "zero-divisor graphs are connected".into(),
            witness: format!(
                "no path between {} and {} in Γ({})",
                self.ring.name_ix(self.vertices[i]),
                self.ring.name_ix(self.vertices[j]),
                self.ring.label()
            ),
        }
    }

    /// Longest shortest path. A disconnected graph or a value above 3 is a
    /// theorem violation.
    pub fn diameter(&self) -> Result<Diameter> {
        let n = self.vertex_count();
        if n == 0 {
            return Ok(Diameter::Empty);
        }
        let eccentricities: Vec<(u32, usize, usize)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let dist = self.bfs(i);
                // farthest vertex; NONE sorts above every distance
                let (j, &d) = dist.iter().enumerate().max_by_key(|&(_, d)| *d).unwrap();
                (d, i, j)
            })
            .collect();
        let &(d, i, j) = eccentricities.iter().max_by_key(|e| e.0).unwrap();
        if d == NONE {
            return Err(self.disconnected(i, j));
        }
        if d > 3 {
            return Err(ZdaError::TheoremViolation {
                theorem: "zero-divisor graphs have diameter at most 3".into(),
                witness: format!(
                    "d({}, {}) = {d} in Γ({})",
                    self.ring.name_ix(self.vertices[i]),
                    self.ring.name_ix(self.vertices[j]),
                    self.ring.label()
                ),
            });
        }
        Ok(Diameter::Value(d))
    }

    /// Every pair of distinct vertices is adjacent. `K_0` and `K_1` count.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.neighbours.iter().all(|ns| ns.len() + 1 == n)
    }

    pub fn girth(&self) -> Girth {
        let n = self.vertex_count();
        // a triangle is the shortest possible cycle
        for (i, ns) in self.neighbours.iter().enumerate() {
            for &j in ns.iter().filter(|&&j| j as usize > i) {
                if self.rows[i].iter().zip(&self.rows[j as usize]).any(|(a, b)| a & b != 0) {
                    return Girth::Value(3);
                }
            }
        }
        let mut best = NONE;
        let mut dist = vec![NONE; n];
        let mut parent = vec![NONE; n];
        let mut queue = std::collections::VecDeque::new();
        for src in 0..n {
            dist.fill(NONE);
            parent.fill(NONE);
            dist[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for &w in &self.neighbours[v] {
                    let w = w as usize;
                    if dist[w] == NONE {
                        dist[w] = dist[v] + 1;
                        parent[w] = v as u32;
                        queue.push_back(w);
                    } else if parent[v] != w as u32 {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
        }
        if best == NONE {
            Girth::Acyclic
        } else {
            Girth::Value(best)
        }
    }

    /// Graphviz rendering with vertices in handle order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        let _ = writeln!(out, "  label=\"{}\";", escape(self.ring.label()));
        for &h in &self.vertices {
            let _ = writeln!(out, "  v{h} [label=\"{}\"];", escape(self.ring.name_ix(h)));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }

    /// `{ ring, vertices: [{ handle, name, neighbours }] }`
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .zip(&self.neighbours)
            .map(|(&h, ns)| {
                serde_json::json!({
                    "handle": h,
                    "name": self.ring.name_ix(h),
                    "neighbours": ns.iter().map(|&j| self.vertices[j as usize]).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "ring": self.ring.label(), "vertices": vertices })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, make_zn};

    fn z(n: u64) -> FiniteRing {
        make_zn(n).unwrap()
    }

    /// Floyd-Warshall on the raw ring table.
    fn oracle_diameter(ring: &FiniteRing) -> Option<u32> {
        let z = ring.zero_ix();
        let vs: Vec<usize> = (0..ring.size())
            .filter(|&a| a != z && (0..ring.size()).any(|b| b != z && ring.mul_ix(a, b) == z))
            .collect();
        let n = vs.len();
        if n == 0 {
            return None;
        }
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for i in 0..n {
            d[i][i] = 0;
            for j in 0..n {
                if i != j && ring.mul_ix(vs[i], vs[j]) == z {
                    d[i][j] = 1;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        d.iter().flatten().copied().max()
    }

    #[test]
    fn z6_graph() {
        let g = build_gamma(&z(6));
        assert_eq!(g.vertices(), &[2, 3, 4]);
        assert_eq!(g.edges(), vec![(2, 3), (3, 4)]);
        assert_eq!(g.diameter().unwrap(), Diameter::Value(2));
        assert_eq!(g.distance(2, 4).unwrap(), 2);
        assert!(!g.is_complete());
        assert_eq!(g.girth(), Girth::Acyclic);
    }

    #[test]
    fn small_graphs() {
        let g = build_gamma(&z(4));
        assert_eq!(g.vertices(), &[2]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.diameter().unwrap(), Diameter::Value(0));
        assert!(g.is_complete());

        let g = build_gamma(&z(5));
        assert!(g.is_empty());
        assert_eq!(g.diameter().unwrap(), Diameter::Empty);
        assert!(g.is_complete());

        let b = direct_product(&z(2), &z(2)).unwrap();
        let g = build_gamma(&b);
        assert_eq!(g.diameter().unwrap(), Diameter::Value(1));
        assert!(g.is_complete());
    }

    #[test]
    fn invalid_vertices() {
        let g = build_gamma(&z(6));
        assert!(matches!(g.distance(1, 2), Err(ZdaError::InvalidVertex(_))));
        assert!(matches!(g.distance(0, 2), Err(ZdaError::InvalidVertex(_))));
        assert!(matches!(g.adjacent(2, 99), Err(ZdaError::InvalidVertex(_))));
    }

    #[test]
    fn diameter_matches_floyd_warshall() {
        let mut rings: Vec<FiniteRing> = (2..=60).map(z).collect();
        rings.push(direct_product(&z(2), &z(4)).unwrap());
        rings.push(direct_product(&z(6), &z(3)).unwrap());
        rings.push(direct_product(&direct_product(&z(2), &z(2)).unwrap(), &z(2)).unwrap());
        for r in &rings {
            let g = build_gamma(r);
            assert_eq!(g.diameter().unwrap().value(), oracle_diameter(r), "{r}");
            let d = g.diameter().unwrap().value();
            assert_eq!(d == Some(1), g.is_complete() && g.vertex_count() >= 2, "{r}");
            assert_eq!(d == Some(0), g.vertex_count() == 1, "{r}");
        }
    }

    #[test]
    fn girth_examples() {
        // Z2 x Z4: a star at (1, 0) plus the pendant edge (0, 2) - (1, 2)
        let g = build_gamma(&direct_product(&z(2), &z(4)).unwrap());
        assert_eq!(g.girth(), Girth::Acyclic);
        let g = build_gamma(&z(8));
        // 4 is adjacent to 2 and 6, but 2 * 6 = 4
        assert_eq!(g.girth(), Girth::Acyclic);
        let g = build_gamma(&z(16));
        // 4, 8, 12 pairwise multiply to 0 mod 16
        assert_eq!(g.girth(), Girth::Value(3));
        let b = direct_product(&z(3), &z(3)).unwrap();
        // K_{2,2}
        assert_eq!(build_gamma(&b).girth(), Girth::Value(4));
    }

    #[test]
    fn dot_is_deterministic() {
        let dot = build_gamma(&z(6)).to_dot();
        assert_eq!(
            dot,
            "graph G {\n  label=\"Z6\";\n  v2 [label=\"2\"];\n  v3 [label=\"3\"];\n  v4 [label=\"4\"];\n  v2 -- v3;\n  v3 -- v4;\n}\n"
        );
        let json = build_gamma(&z(6)).to_json();
        assert_eq!(json["vertices"][1]["neighbours"], serde_json::json!([2, 4]));
    }
}
