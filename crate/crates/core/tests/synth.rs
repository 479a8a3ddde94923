use std::time::Instant;

use mbt_core::synth::{sample_sentence, synth_network, SynthConfig};
use mbt_core::{load_network, translate, validate_network, Direction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(l: usize, c: usize, seed: u64) -> SynthConfig {
    SynthConfig {
        lexical_pairs: l,
        cs_pairs: c,
        seed,
    }
}

#[test]
fn same_seed_same_source() {
    let a = synth_network(&config(200, 40, 7)).to_source();
    let b = synth_network(&config(200, 40, 7)).to_source();
    assert_eq!(a, b);
    assert_ne!(a, synth_network(&config(200, 40, 8)).to_source());
}

#[test]
fn minimal_network_is_valid() {
    let net = synth_network(&config(1, 1, 3));
    assert!(validate_network(&net).is_empty(), "{:?}", validate_network(&net));
    assert_eq!(net.parts().sequences.len(), 2);
}

#[test]
fn generated_source_reloads_and_validates() {
    let net = synth_network(&config(1000, 200, 42));
    let diags = validate_network(&net);
    assert!(diags.is_empty(), "{diags:?}");
    let again = load_network(&net.to_source()).unwrap();
    assert_eq!(again, net);
}

#[test]
fn sampled_sentences_translate_both_ways() {
    let net = synth_network(&config(1000, 200, 42));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    for _ in 0..20 {
        for dir in [Direction::KO_EN, Direction::EN_KO] {
            let s = sample_sentence(&net, dir.source(), &mut rng);
            let out = translate(&net, &s, dir);
            assert!(out.is_success(), "{dir} {s:?}: {}", out.status);
        }
    }
    eprintln!("40 sentences in {:?}", start.elapsed());
}
