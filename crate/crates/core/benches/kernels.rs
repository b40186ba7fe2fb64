//! Hot kernels. Compare builds with
//! `cargo bench -p superflag` and `cargo bench -p superflag --no-default-features`.

use criterion::{criterion_group, criterion_main, Criterion};

use superflag::flagatlas::{cocycle_check, enumerate_charts, FlagType};
use superflag::fundfields::{acting_algebra, check_homomorphism};
use superflag::harness::{oracle_global_fields, OracleProblem};
use superflag::liesuperalg::build_pisp;
use superflag::par;

fn flag(s: &str) -> FlagType {
    s.parse().unwrap()
}

fn kernels(c: &mut Criterion) {
    let mode = if par::is_parallel() { "parallel" } else { "sequential" };
    let mut group = c.benchmark_group(mode);
    group.sample_size(10);

    let pisp = build_pisp(4).unwrap();
    group.bench_function("structure constants pisp(4)", |b| {
        b.iter(|| pisp.structure_constants().unwrap())
    });

    let f = flag("Fe(4,2|4,2)");
    let g = acting_algebra(&f).unwrap();
    let i = enumerate_charts(&f).remove(0);
    group.bench_function("homomorphism Fe(4,2|4,2)", |b| {
        b.iter(|| assert!(check_homomorphism(&g, &f, &i).unwrap().passed()))
    });

    let f = flag("F(2,1|2,1)");
    group.bench_function("cocycle F(2,1|2,1)", |b| {
        b.iter(|| assert!(cocycle_check(&f, 0, 5).unwrap().passed()))
    });

    let p = OracleProblem::new(flag("F(3,1|0,0)"), 2);
    group.bench_function("oracle F(3,1|0,0)", |b| {
        b.iter(|| oracle_global_fields(&p).unwrap())
    });
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
