//! First and second Symanzik polynomials.
//!
//! `S₁` is built two ways: as `det(Σ_e a_e M_e)` with the rank-one matrices
//! `M_e = c_e c_eᵀ` from the cycle basis, and independently as the spanning
//! tree sum `Σ_T Π_{e∉T} a_e`. `S₂` uses the spanning 2-forest expansion
//! with the euclidean sign convention `S₂ = S₂⁰ + (Σ m_e² a_e) S₁`, which is
//! positive on the open simplex whenever all masses are positive.

use crate::algebra::gaussian::{int, real, GaussianRational, Rational};
use crate::algebra::matrix::{det_symbolic, Matrix};
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::graph::{CycleBasis, FourVector, Graph, UnionFind};

/// `M_e = c_e c_eᵀ`, `c_e` the column of loop coefficients of edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneMatrix {
    pub column: Vec<i64>,
}

impl RankOneMatrix {
    pub fn for_edge(basis: &CycleBasis, edge: usize) -> Self {
        RankOneMatrix {
            column: basis.column(edge),
        }
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        let n = self.column.len();
        Matrix::from_fn(n, n, |i, j| int(self.column[i] * self.column[j]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymanzikPair {
    pub s1: MultiPoly,
    /// The momentum-dependent 2-forest part `S₂⁰`.
    pub s2_momentum: MultiPoly,
    /// `S₂⁰ + (Σ m_e² a_e) S₁`.
    pub s2: MultiPoly,
}

/// `det(Σ_e a_e M_e)`, exact.
pub fn first_symanzik_det(g: &Graph, basis: &CycleBasis) -> Result<MultiPoly> {
    let n = basis.n_loops();
    let nvars = g.n_edges();
    if basis.n_edges != nvars {
        return Err(Error::Structural("cycle basis does not match graph".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::one(nvars));
    }
    let rank_one: Vec<Matrix<Rational>> = (0..nvars).map(|e| RankOneMatrix::for_edge(basis, e).matrix()).collect();
    let m = Matrix::from_fn(n, n, |i, j| {
        let coeffs: Vec<GaussianRational> = rank_one.iter().map(|me| real(me[(i, j)].clone())).collect();
        MultiPoly::linear(&coeffs)
    });
    det_symbolic(&m)
}

/// Spanning tree expansion `Σ_T Π_{e∉T} a_e`.
pub fn first_symanzik_trees(g: &Graph) -> MultiPoly {
    let mut p = MultiPoly::zero(g.n_edges());
    for_each_forest(g, g.n_vertices() - 1, |in_forest, _| {
        p.add_term(complement_monomial(in_forest), GaussianRational::from(int(1)));
    });
    p
}

/// Number of spanning trees.
pub fn spanning_tree_count(g: &Graph) -> usize {
    let mut count = 0;
    for_each_forest(g, g.n_vertices() - 1, |_, _| count += 1);
    count
}

/// `S₂⁰ = Σ_F (q^F)² Π_{e∉F} a_e` over spanning 2-forests, with `q^F` the
/// total external momentum entering one of the two components.
pub fn second_symanzik_momentum(g: &Graph) -> MultiPoly {
    let mut p = MultiPoly::zero(g.n_edges());
    if g.n_vertices() < 2 {
        return p;
    }
    for_each_forest(g, g.n_vertices() - 2, |in_forest, uf| {
        let root = uf.find(0);
        let q = (0..g.n_vertices())
            .filter(|&v| uf.find(v) == root)
            .fold(FourVector::zero(), |acc, v| acc.add(&g.external_momenta()[v]));
        let q2 = q.square();
        p.add_term(complement_monomial(in_forest), real(q2));
    });
    p
}

/// Full `S₁`/`S₂` pair. `S₁` comes from the determinant construction.
pub fn second_symanzik(g: &Graph, basis: &CycleBasis) -> Result<SymanzikPair> {
    let s1 = first_symanzik_det(g, basis)?;
    let s2_momentum = second_symanzik_momentum(g);
    let masses: Vec<GaussianRational> = g.masses_squared().into_iter().map(real).collect();
    let mass_term = &MultiPoly::linear(&masses) * &s1;
    let s2 = &s2_momentum + &mass_term;
    Ok(SymanzikPair { s1, s2_momentum, s2 })
}

fn complement_monomial(in_forest: &[bool]) -> Monomial {
    Monomial::new(in_forest.iter().map(|&t| u32::from(!t)).collect())
}

/// Calls `f` for every acyclic edge subset of exactly `size` edges. Such a
/// subset spans all vertices with `V − size` components.
fn for_each_forest(g: &Graph, size: usize, mut f: impl FnMut(&[bool], &mut UnionFind)) {
    let e = g.n_edges();
    if size > e {
        return;
    }
    let mut chosen = vec![false; e];
    fn rec(g: &Graph, start: usize, left: usize, chosen: &mut Vec<bool>, f: &mut dyn FnMut(&[bool], &mut UnionFind)) {
        if left == 0 {
            let mut uf = UnionFind::new(g.n_vertices());
            let acyclic = g
                .edges()
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| c)
                .all(|(edge, _)| uf.union(edge.source, edge.target));
            if acyclic {
                f(chosen, &mut uf);
            }
            return;
        }
        for k in start..=g.n_edges() - left {
            chosen[k] = true;
            rec(g, k + 1, left - 1, chosen, f);
            chosen[k] = false;
        }
    }
    rec(g, 0, size, &mut chosen, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gaussian_int;
    use crate::graph::topologies::*;
    use crate::graph::{cycle_basis, Graph};

    fn a(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn sum(n: usize, range: std::ops::Range<usize>) -> MultiPoly {
        range.fold(MultiPoly::zero(n), |acc, i| &acc + &a(n, i))
    }

    #[test]
    fn triangle_and_box() {
        let t = triangle();
        let expected = sum(3, 0..3);
        assert_eq!(first_symanzik_det(&t, &cycle_basis(&t)).unwrap(), expected);
        assert_eq!(first_symanzik_trees(&t), expected);
        assert_eq!(spanning_tree_count(&t), 3);
        let b = box_equal_mass(int(1));
        assert_eq!(first_symanzik_det(&b, &cycle_basis(&b)).unwrap(), sum(4, 0..4));
    }

    #[test]
    fn bowtie_factorizes() {
        let g = bowtie_unit();
        let expected = &sum(6, 0..3) * &sum(6, 3..6);
        assert_eq!(first_symanzik_det(&g, &cycle_basis(&g)).unwrap(), expected);
        assert_eq!(first_symanzik_trees(&g), expected);
        assert_eq!(spanning_tree_count(&g), 9);
    }

    #[test]
    fn single_edge_tree_polynomial_is_one() {
        let g = Graph::from_pairs(2, &[(0, 1)], &[int(1)], &[]).unwrap();
        assert_eq!(first_symanzik_trees(&g), MultiPoly::one(1));
        assert_eq!(first_symanzik_det(&g, &cycle_basis(&g)).unwrap(), MultiPoly::one(1));
    }

    #[test]
    fn zero_momentum_reduces_to_mass_term() {
        let g = box_equal_mass(int(3));
        let pair = second_symanzik(&g, &cycle_basis(&g)).unwrap();
        assert!(pair.s2_momentum.is_zero());
        let s = sum(4, 0..4);
        assert_eq!(pair.s2, (&s * &s).scale(&gaussian_int(9, 0)));
    }

    #[test]
    fn box_two_forest_coefficients() {
        let q = FourVector::from_ints([1, 2, 0, -2]);
        let g = box_graph(
            std::array::from_fn(|_| int(1)),
            [q.clone(), FourVector::zero(), q.scale(&int(-1)), FourVector::zero()],
        )
        .unwrap();
        let s2m = second_symanzik_momentum(&g);
        // cut momentum q crosses the forests {e1,e3}, {e2,e4}, {e1,e4}, {e2,e3}
        let q2 = gaussian_int(9, 0);
        let expected = (&sum(4, 0..2) * &sum(4, 2..4)).scale(&q2);
        assert_eq!(s2m, expected);
        assert_eq!(s2m.coefficient(&[0, 0, 1, 1]), gaussian_int(0, 0));
        assert_eq!(s2m.homogeneous_degree(), Some(2));
    }
}
