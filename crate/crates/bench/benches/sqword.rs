use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sqword::{
    brute_force_solutions, classify, count_solutions, in_language, BinaryWord, ParamBounds, Params,
};

fn formula(c: &mut Criterion) {
    c.bench_function("count_solutions(1..=2000)", |b| {
        b.iter(|| {
            (1..=2000)
                .map(|n| count_solutions(black_box(n)).unwrap().formula_count)
                .sum::<u128>()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    group.bench_function("n=20", |b| {
        b.iter(|| brute_force_solutions(black_box(20), None).len())
    });
    group.finish();
}

fn words(c: &mut Criterion) {
    let type_ii: BinaryWord = "100100100101001001010010".parse().unwrap();
    c.bench_function("classify type II", |b| {
        b.iter(|| classify(black_box(&type_ii), ParamBounds::for_len(type_ii.len())).unwrap())
    });
    let long = type_ii.pow(40);
    let p = Params::new(1, 0).unwrap();
    c.bench_function("in_language 960 letters", |b| {
        b.iter(|| in_language(black_box(&long), p, false))
    });
}

criterion_group!(benches, formula, oracle, words);
criterion_main!(benches);
