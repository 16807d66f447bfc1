//! Feynman graphs: loop number, fundamental cycle basis and momentum routing.
//!
//! Edges are indexed by their position in the input, which also fixes the
//! edge variables `a_1 .. a_N`. The spanning tree used by [`cycle_basis`]
//! and [`route_momenta`] is the greedy one that scans edges in index order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::gaussian::{int, to_f64, Rational};
use crate::error::{Error, Result};

/// Euclidean 4-vector with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FourVector(pub [Rational; 4]);

impl FourVector {
    pub fn zero() -> Self {
        FourVector(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        FourVector(v.map(int))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn scale(&self, c: &Rational) -> FourVector {
        FourVector(std::array::from_fn(|i| &self.0[i] * c))
    }

    /// `x₁² + x₂² + x₃² + x₄²`.
    pub fn square(&self) -> Rational {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| to_f64(&self.0[i]))
    }
}

/// Euclidean square of a float 4-vector.
pub fn square4(x: &[f64; 4]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub mass: Rational,
}

/// Input record for [`Graph::new`]; endpoints refer to vertex ids.
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub mass: Rational,
}

/// A connected simple graph with edge masses and external momenta attached
/// to vertices.
///
/// Masses may be zero (massless propagators are meaningful for the twistor
/// forms); amplitude integration refuses them.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    external: Vec<FourVector>,
}

impl Graph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<EdgeSpec>,
        external_momenta: &HashMap<String, FourVector>,
    ) -> Result<Graph> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {v:?}")));
            }
        }
        if vertices.is_empty() {
            return Err(Error::Structural("graph has no vertices".into()));
        }
        let lookup = |id: &str, field: &str, edge: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Validation(format!("edge {edge:?}: {field} {id:?} is not a vertex")))
        };
        let mut seen_ids = HashSet::new();
        let mut seen_pairs = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            if !seen_ids.insert(e.id.clone()) {
                return Err(Error::Validation(format!("duplicate edge id {:?}", e.id)));
            }
            let s = lookup(&e.source, "source", &e.id)?;
            let t = lookup(&e.target, "target", &e.id)?;
            if s == t {
                return Err(Error::Validation(format!("edge {:?} is a self-loop", e.id)));
            }
            if !seen_pairs.insert((s.min(t), s.max(t))) {
                return Err(Error::Validation(format!(
                    "edge {:?} duplicates an existing edge between {:?} and {:?}",
                    e.id, e.source, e.target
                )));
            }
            if e.mass.is_negative() {
                return Err(Error::Validation(format!("edge {:?}: mass must be non-negative", e.id)));
            }
            out.push(Edge {
                id: e.id,
                source: s,
                target: t,
                mass: e.mass,
            });
        }
        let mut external = vec![FourVector::zero(); vertices.len()];
        for (v, p) in external_momenta {
            let i = *index
                .get(v)
                .ok_or_else(|| Error::Validation(format!("external momentum on unknown vertex {v:?}")))?;
            external[i] = p.clone();
        }
        let total = external.iter().fold(FourVector::zero(), |acc, p| acc.add(p));
        if !total.is_zero() {
            return Err(Error::Validation("external momenta do not sum to zero".into()));
        }
        let g = Graph {
            vertices,
            edges: out,
            external,
        };
        if g.components() != 1 {
            return Err(Error::Structural("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Convenience constructor with vertices `0..n_vertices` and edge ids `e1..eN`.
    pub fn from_pairs(
        n_vertices: usize,
        pairs: &[(usize, usize)],
        masses: &[Rational],
        momenta: &[(usize, FourVector)],
    ) -> Result<Graph> {
        if masses.len() != pairs.len() {
            return Err(Error::Structural("one mass per edge required".into()));
        }
        let vertices: Vec<String> = (0..n_vertices).map(|v| v.to_string()).collect();
        let edges = pairs
            .iter()
            .zip(masses)
            .enumerate()
            .map(|(i, (&(s, t), m))| EdgeSpec {
                id: format!("e{}", i + 1),
                source: s.to_string(),
                target: t.to_string(),
                mass: m.clone(),
            })
            .collect();
        let momenta = momenta.iter().map(|(v, p)| (v.to_string(), p.clone())).collect();
        Graph::new(vertices, edges, &momenta)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn external_momenta(&self) -> &[FourVector] {
        &self.external
    }

    /// First Betti number `E − V + 1`.
    pub fn loop_number(&self) -> usize {
        self.n_edges() + 1 - self.n_vertices()
    }

    /// `true` when `N = 2n + 2`.
    pub fn is_twistor_topology(&self) -> bool {
        self.n_edges() == 2 * self.loop_number() + 2
    }

    pub fn require_twistor_topology(&self) -> Result<()> {
        if self.is_twistor_topology() {
            Ok(())
        } else {
            Err(Error::UnsupportedTopology {
                edges: self.n_edges(),
                loops: self.loop_number(),
            })
        }
    }

    pub fn masses_squared(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| &e.mass * &e.mass).collect()
    }

    /// Signed incidence: `+1` at the source, `−1` at the target, `V × E`.
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0; self.n_edges()]; self.n_vertices()];
        for (k, e) in self.edges.iter().enumerate() {
            b[e.source][k] = 1;
            b[e.target][k] = -1;
        }
        b
    }

    /// Greedy spanning tree in edge-index order; `true` marks tree edges.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let mut uf = UnionFind::new(self.n_vertices());
        self.edges.iter().map(|e| uf.union(e.source, e.target)).collect()
    }

    fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n_vertices());
        let merged = self.edges.iter().filter(|e| uf.union(e.source, e.target)).count();
        self.n_vertices() - merged
    }

    /// Same graph with edges reordered: new edge `i` is old edge `order[i]`.
    pub fn permute_edges(&self, order: &[usize]) -> Result<Graph> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.n_edges()).collect::<Vec<_>>() {
            return Err(Error::Validation("not a permutation of the edges".into()));
        }
        Ok(Graph {
            vertices: self.vertices.clone(),
            edges: order.iter().map(|&i| self.edges[i].clone()).collect(),
            external: self.external.clone(),
        })
    }

    /// Same graph with every mass and momentum multiplied by `lambda`.
    pub fn scaled(&self, lambda: &Rational) -> Graph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.mass = &e.mass * lambda;
        }
        for p in &mut g.external {
            *p = p.scale(lambda);
        }
        g
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph(V={}, E={}, loops={})",
            self.n_vertices(),
            self.n_edges(),
            self.loop_number()
        )
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// `n × E` matrix of loop coefficients: column `e` is the functional `e^∨`
/// evaluated on each basis loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasis {
    pub loops: Vec<Vec<i64>>,
    pub n_edges: usize,
}

impl CycleBasis {
    pub fn n_loops(&self) -> usize {
        self.loops.len()
    }

    /// `α_k(e)` for `k = 1..n`.
    pub fn column(&self, edge: usize) -> Vec<i64> {
        self.loops.iter().map(|row| row[edge]).collect()
    }

    /// Every row lies in the kernel of the signed incidence matrix.
    pub fn is_circulation_basis(&self, g: &Graph) -> bool {
        let b = g.incidence();
        self.loops.iter().all(|row| {
            b.iter()
                .all(|vrow| vrow.iter().zip(row).map(|(x, y)| x * y).sum::<i64>() == 0)
        })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        use crate::algebra::gaussian::gaussian_int;
        use crate::algebra::matrix::{exact_rank, Matrix};
        let m = Matrix::from_fn(self.n_loops(), self.n_edges, |i, j| gaussian_int(self.loops[i][j], 0));
        exact_rank(&m)
    }
}

/// Fundamental cycles of the greedy spanning tree: one loop per non-tree
/// edge, traversing that edge along its orientation and returning through
/// the tree.
pub fn cycle_basis(g: &Graph) -> CycleBasis {
    let in_tree = g.spanning_tree();
    let tree = TreeView::new(g, &in_tree);
    let mut loops = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        if in_tree[k] {
            continue;
        }
        let mut row = vec![0; g.n_edges()];
        row[k] = 1;
        // walk target → source through the tree
        for (edge, forward) in tree.path(e.target, e.source) {
            row[edge] = if forward { 1 } else { -1 };
        }
        loops.push(row);
    }
    CycleBasis {
        loops,
        n_edges: g.n_edges(),
    }
}

/// External shift `s_e` carried by each edge; zero on non-tree edges.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumRouting {
    pub shifts: Vec<FourVector>,
}

impl MomentumRouting {
    /// At every vertex, outgoing minus incoming shift equals the external
    /// momentum entering there.
    pub fn conserves(&self, g: &Graph) -> bool {
        let mut balance = vec![FourVector::zero(); g.n_vertices()];
        for (e, s) in g.edges().iter().zip(&self.shifts) {
            balance[e.source] = balance[e.source].add(s);
            balance[e.target] = balance[e.target].sub(s);
        }
        balance.iter().zip(g.external_momenta()).all(|(b, q)| b == q)
    }

    pub fn shifts_f64(&self) -> Vec<[f64; 4]> {
        self.shifts.iter().map(FourVector::to_f64).collect()
    }
}

/// Routes external momenta through the greedy spanning tree. A tree edge
/// carries, from source to target, the total external momentum entering the
/// source side of the cut it defines.
pub fn route_momenta(g: &Graph) -> MomentumRouting {
    let in_tree = g.spanning_tree();
    let tree = TreeView::new(g, &in_tree);
    let shifts = g
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            if !in_tree[k] {
                return FourVector::zero();
            }
            tree.side(e.source, k)
                .into_iter()
                .fold(FourVector::zero(), |acc, v| acc.add(&g.external_momenta()[v]))
        })
        .collect();
    MomentumRouting { shifts }
}

struct TreeView {
    /// (neighbor, edge index, edge points away from this vertex)
    adj: Vec<Vec<(usize, usize, bool)>>,
}

impl TreeView {
    fn new(g: &Graph, in_tree: &[bool]) -> Self {
        let mut adj = vec![Vec::new(); g.n_vertices()];
        for (k, e) in g.edges().iter().enumerate() {
            if in_tree[k] {
                adj[e.source].push((e.target, k, true));
                adj[e.target].push((e.source, k, false));
            }
        }
        TreeView { adj }
    }

    /// Edges on the tree path `from → to` with traversal direction.
    fn path(&self, from: usize, to: usize) -> Vec<(usize, bool)> {
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut stack = vec![from];
        visited[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for &(w, k, fwd) in &self.adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    prev[w] = Some((v, k, fwd));
                    stack.push(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, k, fwd) = prev[cur].expect("tree is spanning");
            out.push((k, fwd));
            cur = p;
        }
        out.reverse();
        out
    }

    /// Vertices reachable from `start` without crossing tree edge `cut`.
    fn side(&self, start: usize, cut: usize) -> Vec<usize> {
        let mut visited = vec![false; self.adj.len()];
        let mut stack = vec![start];
        visited[start] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &(w, k, _) in &self.adj[v] {
                if k != cut && !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }
}

/// Standard test topologies.
pub mod topologies {
    use super::*;

    fn ones(n: usize) -> Vec<Rational> {
        vec![int(1); n]
    }

    /// 3-cycle `0 → 1 → 2 → 0`, unit masses, no external momenta.
    pub fn triangle() -> Graph {
        Graph::from_pairs(3, &[(0, 1), (1, 2), (2, 0)], &ones(3), &[]).expect("valid")
    }

    pub const BOX_PAIRS: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];

    /// One-loop box `0 → 1 → 2 → 3 → 0` with the given masses and
    /// per-vertex momenta.
    pub fn box_graph(masses: [Rational; 4], momenta: [FourVector; 4]) -> Result<Graph> {
        let momenta: Vec<(usize, FourVector)> = momenta.into_iter().enumerate().collect();
        Graph::from_pairs(4, &BOX_PAIRS, &masses, &momenta)
    }

    pub fn box_equal_mass(mass: Rational) -> Graph {
        box_graph(
            std::array::from_fn(|_| mass.clone()),
            std::array::from_fn(|_| FourVector::zero()),
        )
        .expect("valid")
    }

    /// Two triangles `{0,1,2}` and `{0,3,4}` sharing vertex 0.
    pub const BOWTIE_PAIRS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];

    pub fn bowtie(masses: [Rational; 6], momenta: &[(usize, FourVector)]) -> Result<Graph> {
        Graph::from_pairs(5, &BOWTIE_PAIRS, &masses, momenta)
    }

    pub fn bowtie_unit() -> Graph {
        bowtie(std::array::from_fn(|_| int(1)), &[]).expect("valid")
    }

    /// Theta graph with three two-edge paths between vertices 0 and 1
    /// (midpoints 2, 3, 4); two loops, six edges, no separating vertex.
    pub const THETA_PAIRS: [(usize, usize); 6] = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)];

    pub fn theta(masses: [Rational; 6], momenta: &[(usize, FourVector)]) -> Result<Graph> {
        Graph::from_pairs(5, &THETA_PAIRS, &masses, momenta)
    }

    /// Two loops with five edges: not of the `2n + 2` form.
    pub fn two_loop_five_edges() -> Graph {
        Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], &ones(5), &[]).expect("valid")
    }

    /// Complete graph on four vertices: three loops, six edges.
    pub fn k4() -> Graph {
        Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)], &ones(6), &[]).expect("valid")
    }

    /// `K4` with edges `0–1` and `2–3` subdivided (midpoints 4 and 5):
    /// three loops, eight edges.
    pub const SUBDIVIDED_K4_PAIRS: [(usize, usize); 8] =
        [(0, 4), (4, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 5), (5, 3)];

    pub fn subdivided_k4(masses: [Rational; 8], momenta: &[(usize, FourVector)]) -> Result<Graph> {
        Graph::from_pairs(6, &SUBDIVIDED_K4_PAIRS, &masses, momenta)
    }
}

#[cfg(test)]
mod tests {
    use super::topologies::*;
    use super::*;

    #[test]
    fn loop_numbers() {
        assert_eq!(triangle().loop_number(), 1);
        assert_eq!(box_equal_mass(int(1)).loop_number(), 1);
        assert_eq!(bowtie_unit().loop_number(), 2);
    }

    #[test]
    fn disconnected_graph_is_structural_error() {
        let err = Graph::from_pairs(4, &[(0, 1), (2, 3)], &[int(1), int(1)], &[]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn rejects_self_loops_multi_edges_and_bad_momenta() {
        assert!(Graph::from_pairs(2, &[(0, 0)], &[int(1)], &[]).is_err());
        assert!(Graph::from_pairs(2, &[(0, 1), (1, 0)], &[int(1), int(1)], &[]).is_err());
        assert!(Graph::from_pairs(2, &[(0, 1)], &[int(-1)], &[]).is_err());
        let err = Graph::from_pairs(2, &[(0, 1)], &[int(1)], &[(0, FourVector::from_ints([1, 0, 0, 0]))]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn triangle_cycle_is_all_ones() {
        let b = cycle_basis(&triangle());
        assert_eq!(b.loops, vec![vec![1, 1, 1]]);
        assert!(b.is_circulation_basis(&triangle()));
    }

    #[test]
    fn box_cycle_is_single_row_of_units() {
        let g = box_equal_mass(int(1));
        let b = cycle_basis(&g);
        assert_eq!(b.n_loops(), 1);
        assert!(b.loops[0].iter().all(|x| x.abs() == 1));
        assert!(b.is_circulation_basis(&g));
    }

    #[test]
    fn bowtie_cycles_are_supported_on_one_triangle_each() {
        let g = bowtie_unit();
        let b = cycle_basis(&g);
        assert_eq!(b.n_loops(), 2);
        assert_eq!(b.rank(), 2);
        assert!(b.is_circulation_basis(&g));
        let left: Vec<bool> = b.loops.iter().map(|r| r[..3].iter().any(|&x| x != 0)).collect();
        let right: Vec<bool> = b.loops.iter().map(|r| r[3..].iter().any(|&x| x != 0)).collect();
        for k in 0..2 {
            assert!(left[k] ^ right[k], "loop {k} touches both triangles");
        }
        assert_eq!(b.loops[0], vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(b.loops[1], vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn zero_momenta_route_to_zero_shifts() {
        let r = route_momenta(&bowtie_unit());
        assert!(r.shifts.iter().all(FourVector::is_zero));
    }

    #[test]
    fn box_with_opposite_momenta_routes_along_tree_path() {
        let q = FourVector::from_ints([1, 2, -1, 3]);
        let g = box_graph(
            std::array::from_fn(|_| int(1)),
            [q.clone(), FourVector::zero(), q.scale(&int(-1)), FourVector::zero()],
        )
        .unwrap();
        let r = route_momenta(&g);
        // tree = edges 0,1,2 ; edge 3 closes the loop
        assert_eq!(r.shifts, vec![q.clone(), q, FourVector::zero(), FourVector::zero()]);
        assert!(r.conserves(&g));
    }
}
