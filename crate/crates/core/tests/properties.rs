//! Properties over the travel corpus and over synthetic networks.

use mbt_core::engine::instance::fixed_elements;
use mbt_core::synth::{sample_sentences, synth_network, SynthConfig};
use mbt_core::{
    isomorphic, load_network, readings, round_trip, tokenize, translate, Direction, EventKind, Location, MemoryNetwork,
};
use proptest::prelude::*;

const FIXTURE: &str = include_str!("../../../fixtures/travel.net");
const CORPUS: &str = include_str!("../../../fixtures/travel.corpus");

fn corpus() -> Vec<(Direction, &'static str)> {
    CORPUS
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].parse().unwrap(), f[1])
        })
        .collect()
}

#[test]
fn corpus_round_trips_at_concept_level() {
    let net = load_network(FIXTURE).unwrap();
    for (dir, s) in corpus() {
        let (forward, back) = round_trip(&net, s, dir).unwrap();
        assert!(back.is_success(), "{s}: back {}", back.status);
        let (a, b) = (forward.concept_tree.unwrap(), back.concept_tree.unwrap());
        assert!(isomorphic(&a, &b), "{s}\n{a}\n{b}");
    }
}

#[test]
fn kennedy_park_round_trip_is_exact() {
    let net = load_network(FIXTURE).unwrap();
    let s = "Would you tell me the way to Kennedy Park?";
    let (forward, back) = round_trip(&net, s, Direction::EN_KO).unwrap();
    assert_eq!(back.target_sentence, s);
    assert!(isomorphic(
        forward.concept_tree.as_ref().unwrap(),
        back.concept_tree.as_ref().unwrap()
    ));
}

fn well_formed(net: &MemoryNetwork, sentence: &str, dir: Direction) {
    let out = translate(net, sentence, dir);
    assert!(out.is_success(), "{sentence}");
    let tokens = tokenize(&out.target_sentence).unwrap();
    for w in &tokens.words {
        assert!(
            !readings(net, dir.target(), &w.folded).is_empty(),
            "`{}` in {:?} has no reading",
            w.surface,
            out.target_sentence
        );
    }
}

#[test]
fn targets_resegment_against_target_lexicon() {
    let net = load_network(FIXTURE).unwrap();
    for (dir, s) in corpus() {
        well_formed(&net, s, dir);
    }
}

#[test]
fn round_trip_requires_forward_success() {
    let net = load_network(FIXTURE).unwrap();
    assert!(round_trip(&net, "hotel hotel", Direction::EN_KO).is_err());
}

#[test]
fn fixture_source_round_trips() {
    let net = load_network(FIXTURE).unwrap();
    assert_eq!(load_network(&net.to_source()).unwrap(), net);
}

/// Engine and translator sources name no language or direction: both
/// directions run the same code with the language passed in.
#[test]
fn machinery_has_no_direction_branches() {
    let sources = [
        ("engine/mod.rs", include_str!("../src/engine/mod.rs")),
        ("engine/instance.rs", include_str!("../src/engine/instance.rs")),
        ("engine/generate.rs", include_str!("../src/engine/generate.rs")),
        ("engine/marker.rs", include_str!("../src/engine/marker.rs")),
        ("engine/trace.rs", include_str!("../src/engine/trace.rs")),
        ("translator.rs", include_str!("../src/translator.rs")),
        ("morphology.rs", include_str!("../src/morphology.rs")),
    ];
    for (name, text) in sources {
        let code = text.split("#[cfg(test)]").next().unwrap();
        for needle in ["Language::Ko", "Language::En", "KO_EN", "EN_KO"] {
            assert!(!code.contains(needle), "{name} mentions {needle}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthetic_networks_serialize_losslessly(l in 1usize..120, c in 1usize..30, seed in any::<u64>()) {
        let net = synth_network(&SynthConfig { lexical_pairs: l, cs_pairs: c, seed });
        let again = load_network(&net.to_source()).unwrap();
        prop_assert_eq!(&again, &net);
        prop_assert_eq!(again.to_source(), net.to_source());
    }

    /// A free element stays predicted until filled: no trace ever withdraws
    /// one, and each accepted analysis leaves free elements only when omissible.
    #[test]
    fn free_predictions_are_never_withdrawn(seed in any::<u64>()) {
        let net = synth_network(&SynthConfig { lexical_pairs: 60, cs_pairs: 16, seed });
        for dir in [Direction::KO_EN, Direction::EN_KO] {
            for s in sample_sentences(&net, dir.source(), 3, seed) {
                let out = translate(&net, &s, dir);
                prop_assert!(out.is_success(), "{}", s);
                for e in &out.trace {
                    if e.event == EventKind::Withdraw && e.marker == Some(mbt_core::MarkerKind::AP) {
                        if let Location::Element { cs, element, .. } = e.location {
                            let seq = net.sequence(cs);
                            prop_assert!(!seq.elements[element].cse_type.is_free());
                            prop_assert!(fixed_elements(seq).contains(&element));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn synthetic_round_trip(seed in any::<u64>()) {
        let net = synth_network(&SynthConfig { lexical_pairs: 80, cs_pairs: 12, seed });
        for s in sample_sentences(&net, mbt_core::Language::Ko, 3, seed) {
            let (f, b) = round_trip(&net, &s, Direction::KO_EN).unwrap();
            prop_assert!(b.is_success(), "{} -> {}", s, f.target_sentence);
        }
    }
}
