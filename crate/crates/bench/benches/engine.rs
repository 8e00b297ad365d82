use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tangle_core::diagram::random::{random_braid_closure, random_diagram};
use tangle_core::diagram::trefoil;
use tangle_core::eval::bracket_state_sum;
use tangle_core::{canonical_layout, evaluate, kauffman_datum, AmbientDim, ObjectWord};

fn layout(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let diagrams: Vec<_> = (0..32)
        .map(|_| random_diagram(&mut rng, AmbientDim::Braided, ObjectWord::from([0, 1, 0]), 12, -2..=2))
        .collect();
    c.bench_function("canonical_layout/braided_12", |b| {
        b.iter(|| {
            for d in &diagrams {
                black_box(canonical_layout(d));
            }
        })
    });
}

fn eval(c: &mut Criterion) {
    let datum = kauffman_datum();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let closures: Vec<_> = (0..16).map(|_| random_braid_closure(&mut rng, 3, 6)).collect();
    c.bench_function("evaluate/trefoil", |b| b.iter(|| evaluate(black_box(&trefoil()), &datum)));
    c.bench_function("evaluate/braid_closures", |b| {
        b.iter(|| {
            for d in &closures {
                black_box(evaluate(d, &datum).unwrap());
            }
        })
    });
    c.bench_function("bracket_state_sum/braid_closures", |b| {
        b.iter(|| {
            for d in &closures {
                black_box(bracket_state_sum(d).unwrap());
            }
        })
    });
}

criterion_group!(benches, layout, eval);
criterion_main!(benches);
