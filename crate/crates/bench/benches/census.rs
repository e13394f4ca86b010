use contact_census::contfrac;
use contact_census::divsets;
use contact_census::farey::{self, Slope};
use contact_census::lens::{self, LensSpace};
use contact_census::slices;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn bench_farey_path(c: &mut Criterion) {
    let from = Slope::new(-987, 610).unwrap(); // consecutive Fibonacci: worst-case depth
    let to = Slope::new(-1, 1).unwrap();
    c.bench_function("farey-path-fibonacci", |b| {
        b.iter(|| farey::shortest_path(black_box(from), black_box(to)))
    });
}

fn bench_cf(c: &mut Criterion) {
    c.bench_function("contfrac-roundtrip-489-200", |b| {
        b.iter(|| {
            let cf = contfrac::to_cf(black_box(489), black_box(200)).unwrap();
            contfrac::from_cf(&cf).unwrap()
        })
    });
}

fn bench_enumerate_minimal(c: &mut Criterion) {
    c.bench_function("enumerate-minimal-89-55", |b| {
        b.iter(|| slices::enumerate_minimal(black_box(89), black_box(55)).unwrap())
    });
}

fn bench_lens_enumeration(c: &mut Criterion) {
    let l = LensSpace::new(97, 31).unwrap();
    c.bench_function("enumerate-lens-97-31", |b| {
        b.iter(|| lens::enumerate_lens(black_box(&l)).unwrap())
    });
}

fn bench_glue_check(c: &mut Criterion) {
    let chain = contfrac::path_via_cf(89, 55).unwrap();
    let signs = vec![slices::Sign::Pos; chain.len() - 1];
    let base = slices::SliceFactorization::from_chain(&chain, &signs).unwrap();
    let split = slices::split_slice(&base, 3, true).unwrap();
    c.bench_function("glue-check-split-89-55", |b| {
        b.iter(|| slices::glue_check(black_box(&split)).unwrap())
    });
}

fn bench_disk_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate-disk-t7", |b| {
        b.iter(|| divsets::enumerate_disk(black_box(7)).unwrap())
    });
}

fn bench_dual_set(c: &mut Criterion) {
    let configs = divsets::enumerate_c0(2, 4).unwrap();
    c.bench_function("dual-set-2-4", |b| {
        b.iter(|| {
            for cfg in &configs {
                divsets::dual_set(std::slice::from_ref(cfg), 2, 6).unwrap();
            }
        })
    });
}

criterion_group!(
    benches,
    bench_farey_path,
    bench_cf,
    bench_enumerate_minimal,
    bench_lens_enumeration,
    bench_glue_check,
    bench_disk_enumeration,
    bench_dual_set
);
criterion_main!(benches);
