use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pfaffamp::algebra::pfaffian::pfaffian_in_place;
use pfaffamp::algebra::pfaffian_symbolic;
use pfaffamp::graph::topologies;
use pfaffamp::twistor::build_propagator_forms;
use pfaffamp::{cycle_basis, route_momenta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_alternating(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[i * dim + j] = z;
            m[j * dim + i] = -z;
        }
    }
    m
}

fn numeric(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian_numeric");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in [4, 6, 8, 16] {
        let m = random_alternating(dim, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            let mut scratch = m.clone();
            b.iter(|| {
                scratch.copy_from_slice(m);
                pfaffian_in_place(&mut scratch, dim)
            })
        });
    }
    group.finish();
}

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian_symbolic");
    for (name, g) in [
        ("box", topologies::box_equal_mass(pfaffamp::algebra::gaussian::int(1))),
        ("bowtie", topologies::bowtie_unit()),
    ] {
        let basis = cycle_basis(&g);
        let forms: Vec<_> = build_propagator_forms(&g, &basis, &route_momenta(&g))
            .unwrap()
            .into_iter()
            .map(|p| p.form)
            .collect();
        group.bench_function(name, |b| b.iter(|| pfaffian_symbolic(&forms).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, numeric, symbolic);
criterion_main!(benches);
