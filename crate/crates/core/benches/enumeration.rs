use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dehnkit_core::enumerate::{enumerate_vertices, scan_solutions, EnumOptions, ScanOptions};
use dehnkit_core::layered::build_lst;
use dehnkit_core::{Mode, Slope};

fn lsts() -> Vec<(String, dehnkit_core::layered::LayeredTorus)> {
    [(2, 5), (3, 7), (5, 8)]
        .into_iter()
        .map(|(p, q)| (format!("{p}/{q}"), build_lst(Slope::from_pq(p, q).unwrap()).unwrap()))
        .collect()
}

fn vertices(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertices");
    g.sample_size(10);
    for (name, lst) in lsts() {
        for mode in [Mode::Normal, Mode::AlmostNormal] {
            for parallel in [false, true] {
                let id = BenchmarkId::new(format!("{mode:?}/{}", if parallel { "par" } else { "seq" }), &name);
                let opts = EnumOptions::new(mode).embedded_only(true).parallel(parallel);
                g.bench_function(id, |b| b.iter(|| enumerate_vertices(lst.tri(), &opts).unwrap()));
            }
        }
    }
    g.finish();
}

fn bounded_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    for (name, lst) in lsts() {
        for parallel in [false, true] {
            let id = BenchmarkId::new(if parallel { "par" } else { "seq" }, &name);
            let opts = ScanOptions::total(8).admissible(7).parallel(parallel);
            g.bench_function(id, |b| b.iter(|| scan_solutions(lst.tri(), Mode::Normal, &opts).unwrap()));
        }
    }
    g.finish();
}

criterion_group!(benches, vertices, bounded_scan);
criterion_main!(benches);
