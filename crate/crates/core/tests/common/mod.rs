#![allow(dead_code)]

use pfaffamp::algebra::gaussian::{rational, Rational};
use pfaffamp::graph::topologies;
use pfaffamp::{FourVector, Graph};
use rand::Rng;

pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rational(rng.random_range(lo * den..=hi * den), den)
}

pub fn random_mass<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.random_range(2..=12), rng.random_range(2..=6))
}

pub fn random_vector<R: Rng>(rng: &mut R) -> FourVector {
    FourVector(std::array::from_fn(|_| random_rational(rng, -2, 2, 3)))
}

/// External momenta on the listed vertices, the last one balancing the rest.
pub fn conserving_momenta<R: Rng>(rng: &mut R, vertices: &[usize]) -> Vec<(usize, FourVector)> {
    let mut out = Vec::new();
    let mut total = FourVector::zero();
    for &v in &vertices[..vertices.len() - 1] {
        let p = random_vector(rng);
        total = total.add(&p);
        out.push((v, p));
    }
    out.push((vertices[vertices.len() - 1], FourVector::zero().sub(&total)));
    out
}

pub fn random_box<R: Rng>(rng: &mut R) -> Graph {
    let momenta = conserving_momenta(rng, &[0, 1, 2, 3]);
    topologies::box_graph(
        std::array::from_fn(|_| random_mass(rng)),
        std::array::from_fn(|i| momenta[i].1.clone()),
    )
    .unwrap()
}

pub fn random_bowtie<R: Rng>(rng: &mut R) -> Graph {
    topologies::bowtie(
        std::array::from_fn(|_| random_mass(rng)),
        &conserving_momenta(rng, &[0, 1, 2, 3, 4]),
    )
    .unwrap()
}

pub fn random_theta<R: Rng>(rng: &mut R) -> Graph {
    topologies::theta(
        std::array::from_fn(|_| random_mass(rng)),
        &conserving_momenta(rng, &[0, 1, 2, 4]),
    )
    .unwrap()
}

pub fn random_subdivided_k4<R: Rng>(rng: &mut R) -> Graph {
    topologies::subdivided_k4(
        std::array::from_fn(|_| random_mass(rng)),
        &conserving_momenta(rng, &[0, 1, 2, 3, 5]),
    )
    .unwrap()
}

/// Random connected simple graph on `v` vertices with `e` edges (needs
/// `v − 1 ≤ e ≤ v(v − 1)/2`), random orientations and momenta.
pub fn random_connected_graph<R: Rng>(rng: &mut R, v: usize, e: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let has =
        |pairs: &[(usize, usize)], a: usize, b: usize| pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    for i in 1..v {
        let j = rng.random_range(0..i);
        pairs.push(if rng.random_bool(0.5) { (i, j) } else { (j, i) });
    }
    while pairs.len() < e {
        let a = rng.random_range(0..v);
        let b = rng.random_range(0..v);
        if a != b && !has(&pairs, a, b) {
            pairs.push((a, b));
        }
    }
    // shuffle so the tree edges are not all first
    for i in (1..pairs.len()).rev() {
        let j = rng.random_range(0..=i);
        pairs.swap(i, j);
    }
    let masses: Vec<Rational> = (0..e).map(|_| random_mass(rng)).collect();
    let all: Vec<usize> = (0..v).collect();
    Graph::from_pairs(v, &pairs, &masses, &conserving_momenta(rng, &all)).unwrap()
}

/// Graphs with `N = 2n + 2` used across the numeric checks.
pub fn twistor_graphs<R: Rng>(rng: &mut R) -> Vec<(&'static str, Graph)> {
    vec![
        ("box", random_box(rng)),
        ("bowtie", random_bowtie(rng)),
        ("theta", random_theta(rng)),
        ("subdivided K4", random_subdivided_k4(rng)),
    ]
}
