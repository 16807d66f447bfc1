use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use pfaffamp::algebra::gaussian::int;
use pfaffamp::graph::topologies;
use pfaffamp::{integrate, IntegrationConfig, Method};

fn throughput(c: &mut Criterion) {
    let samples = 20_000;
    let cfg = IntegrationConfig::with_samples(samples, 0);
    let mut group = c.benchmark_group("integrand");
    group.throughput(Throughput::Elements(samples));
    group.sample_size(20);
    for (name, g) in [
        ("box", topologies::box_equal_mass(int(1))),
        ("bowtie", topologies::bowtie_unit()),
    ] {
        for method in Method::ALL {
            group.bench_function(format!("{name}/{method}"), |b| {
                b.iter(|| integrate(&g, method, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, throughput);
criterion_main!(benches);
