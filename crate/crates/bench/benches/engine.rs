use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sepdeg_core::linalg::kernel_basis;
use sepdeg_core::reps::{build, close_group, dihedral_regular, DEFAULT_GROUP_CAP};
use sepdeg_core::{FieldSpec, InvariantEngine, MatrixFq, ModuleDescriptor};

/// Deterministic pseudo-random matrix with a planted rank deficit.
fn sample_matrix(field: &FieldSpec, rows: usize, cols: usize) -> MatrixFq {
    let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut data: Vec<Vec<u32>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((s >> 33) % field.q() as u64) as u32
                })
                .collect()
        })
        .collect();
    // copy a few rows so the kernel is not trivial
    for i in 0..rows / 10 {
        data[rows - 1 - i] = data[i].clone();
    }
    MatrixFq::from_rows(field, &data).expect("valid entries")
}

fn kernel(c: &mut Criterion) {
    let f3 = FieldSpec::prime(3).unwrap();
    let a = sample_matrix(&f3, 200, 220);
    c.bench_function("kernel 200x220 over F3", |b| b.iter(|| kernel_basis(black_box(&a))));
}

fn invariant_basis(c: &mut Criterion) {
    let z9 = ModuleDescriptor::jordan(3, 2, 4);
    let z9_rep = build(&z9, &z9.default_field().unwrap()).unwrap();
    c.bench_function("invariant_basis Z9 on V4, degree 9", |b| {
        b.iter(|| InvariantEngine::new(z9_rep.clone()).invariant_basis(black_box(9)).dim())
    });
    let d8 = dihedral_regular(2);
    let d8_rep = build(&d8, &d8.default_field().unwrap()).unwrap();
    c.bench_function("invariant_basis D8 regular, degree 6", |b| {
        b.iter(|| InvariantEngine::new(d8_rep.clone()).invariant_basis(black_box(6)).dim())
    });
}

fn closure(c: &mut Criterion) {
    let d8 = dihedral_regular(2);
    let rep = build(&d8, &d8.default_field().unwrap()).unwrap();
    c.bench_function("closure D8 regular", |b| {
        b.iter(|| close_group(black_box(&rep), DEFAULT_GROUP_CAP).unwrap().order())
    });
    let borel = ModuleDescriptor::sym(ModuleDescriptor::Borel { p: 3 }, 2);
    let rep = build(&borel, &borel.default_field().unwrap()).unwrap();
    c.bench_function("closure Borel(3) on S^2", |b| {
        b.iter(|| close_group(black_box(&rep), DEFAULT_GROUP_CAP).unwrap().order())
    });
}

criterion_group!(benches, kernel, invariant_basis, closure);
criterion_main!(benches);
