use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use intensity_core::analysis::{is_regular, PairPolicy, SeriesData};
use intensity_core::constructions::{build, BuildConfig, ExponentFlag, GroupSpec};
use intensity_core::group::{LatticeConfig, SubgroupLattice};
use intensity_core::intensity::{IntensityConfig, IntensitySearch};
use intensity_core::ExecMode;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn intensity_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("intensity_search");
    group.sample_size(10);
    for (name, spec) in [("yo", GroupSpec::yo()), ("es125", GroupSpec::extraspecial(5, 1, ExponentFlag::P))] {
        let g = build(&spec, &BuildConfig::default()).unwrap().group;
        let search = IntensitySearch::new(&g, &IntensityConfig::default()).unwrap();
        for (mode_name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(mode_name, name), &mode, |b, &mode| {
                // The largest scalar is the slowest to find or rule out.
                b.iter(|| black_box(search.search_scalar(search.series().p - 1, mode)))
            });
        }
    }
    group.finish();
}

fn subgroup_lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("subgroup_lattice");
    group.sample_size(10);
    let g = build(&GroupSpec::yo(), &BuildConfig::default()).unwrap().group;
    for (mode_name, mode) in MODES {
        let cfg = LatticeConfig { mode, ..LatticeConfig::default() };
        group.bench_function(BenchmarkId::new(mode_name, "yo"), |b| {
            b.iter(|| black_box(SubgroupLattice::build(&g, &cfg).unwrap().len()))
        });
    }
    group.finish();
}

fn regularity(c: &mut Criterion) {
    let mut group = c.benchmark_group("regularity");
    group.sample_size(10);
    let g = build(&GroupSpec::sn_delta(5, 2, Some(3)), &BuildConfig::default()).unwrap().group;
    let s = SeriesData::compute(&g).unwrap();
    for (mode_name, mode) in MODES {
        group.bench_function(BenchmarkId::new(mode_name, "sn_delta_5_class2"), |b| {
            b.iter(|| black_box(is_regular(&g, &s, &PairPolicy::default(), mode).regular))
        });
    }
    group.finish();
}

criterion_group!(benches, intensity_search, subgroup_lattice, regularity);
criterion_main!(benches);
