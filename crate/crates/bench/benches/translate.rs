use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mbt_core::synth::{sample_sentences, synth_network, SynthConfig};
use mbt_core::{load_network, translate, Direction, Language};

fn fixture(c: &mut Criterion) {
    let net = load_network(include_str!("../../../fixtures/travel.net")).unwrap();
    c.bench_function("fixture en-ko", |b| {
        b.iter(|| translate(&net, black_box("Would you tell me the way to Kennedy Park?"), Direction::EN_KO))
    });
    c.bench_function("fixture ko-en", |b| {
        b.iter(|| {
            translate(
                &net,
                black_box("ce-eykey ken-ney-ti kong-wen kanun kil-ul ka-lu-chye-cwu-si-keyss-e-yo?"),
                Direction::KO_EN,
            )
        })
    });
}

fn synthetic(c: &mut Criterion) {
    let net = synth_network(&SynthConfig {
        lexical_pairs: 1000,
        cs_pairs: 200,
        seed: 42,
    });
    let ko = sample_sentences(&net, Language::Ko, 20, 1);
    let en = sample_sentences(&net, Language::En, 20, 2);
    c.bench_function("synth 1000/200 ko-en x20", |b| {
        b.iter(|| {
            for s in &ko {
                black_box(translate(&net, s, Direction::KO_EN));
            }
        })
    });
    c.bench_function("synth 1000/200 en-ko x20", |b| {
        b.iter(|| {
            for s in &en {
                black_box(translate(&net, s, Direction::EN_KO));
            }
        })
    });
    c.bench_function("synth 1000/200 build", |b| {
        b.iter(|| {
            synth_network(black_box(&SynthConfig {
                lexical_pairs: 1000,
                cs_pairs: 200,
                seed: 42,
            }))
        })
    });
}

criterion_group!(benches, fixture, synthetic);
criterion_main!(benches);
