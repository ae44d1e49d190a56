use covers_core::abelian_covers::{cover_invariants, uniform};
use covers_core::arrangements_strata::strata::row_cell;
use covers_core::arrangements_strata::{arrangement_lc_scan, campedelli_divisor_orbits, LineArrangement, BURNIAT_GENERIC};
use covers_core::local_singularities::{all_records, classify_nc, classify_smooth, witness_for, Witness};
use covers_core::polytopes::symmetry_group;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn classification(c: &mut Criterion) {
    let witnesses: Vec<Witness> = all_records().iter().map(|r| witness_for(r).unwrap()).collect();
    c.bench_function("classify all table witnesses", |b| {
        b.iter(|| {
            for w in &witnesses {
                let _ = match w {
                    Witness::Smooth(s) => classify_smooth(black_box(s)),
                    Witness::Nc(n) => classify_nc(black_box(n)),
                };
            }
        })
    });
}

fn covers(c: &mut Criterion) {
    let bd = uniform(2, 5).unwrap();
    c.bench_function("invariants of U(2,5)", |b| b.iter(|| cover_invariants(black_box(&bd)).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let arr = LineArrangement::from_json(BURNIAT_GENERIC).unwrap();
    c.bench_function("lc scan of a generic Burniat arrangement", |b| {
        b.iter(|| arrangement_lc_scan(black_box(&arr)).unwrap())
    });
    c.bench_function("Campedelli divisor orbits", |b| b.iter(campedelli_divisor_orbits));
    c.bench_function("symmetry group closure", |b| b.iter(|| symmetry_group().unwrap()));
    c.bench_function("normalize the six-lines cell", |b| b.iter(|| row_cell(black_box("7")).unwrap()));
}

criterion_group!(benches, classification, covers, geometry);
criterion_main!(benches);
