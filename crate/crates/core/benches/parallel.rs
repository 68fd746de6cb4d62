use criterion::{criterion_group, criterion_main, Criterion};

use betacalc_core::dsw::{beta, image_model, image_model_seq};
use betacalc_core::scalar::Ring;
use betacalc_core::tensor::{FreeVector, Generator, TensorTerm};

fn big_vector(n: usize) -> FreeVector {
    let u = Generator::new("u", 1).unwrap();
    let v = Generator::new("v", 2).unwrap();
    let mut out = FreeVector::zero(Ring::F2);
    for mask in 0..1u32 << n {
        let letters = (0..n)
            .map(|i| if mask >> i & 1 == 0 { u.clone() } else { v.clone() })
            .collect();
        out.accumulate(
            TensorTerm::suspended_word(letters),
            betacalc_core::scalar::LocalRational::one(),
        );
    }
    out
}

fn bench_apply(c: &mut Criterion) {
    let b = beta(11);
    let v = big_vector(11);
    let mut group = c.benchmark_group("beta11_apply");
    group.sample_size(10);
    group.bench_function("parallel", |bch| bch.iter(|| b.apply(&v).unwrap()));
    group.bench_function("sequential", |bch| bch.iter(|| b.apply_seq(&v).unwrap()));
    group.finish();
}

fn bench_image_model(c: &mut Criterion) {
    let gens = vec![Generator::new("u", 1).unwrap(), Generator::new("v", 2).unwrap()];
    let mut group = c.benchmark_group("image_model_n7_f2");
    group.sample_size(10);
    group.bench_function("parallel", |bch| {
        bch.iter(|| image_model(7, &gens, Ring::F2).unwrap())
    });
    group.bench_function("sequential", |bch| {
        bch.iter(|| image_model_seq(7, &gens, Ring::F2).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_apply, bench_image_model);
criterion_main!(benches);
