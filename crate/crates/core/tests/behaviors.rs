//! Element-type behaviors and session hygiene on the travel fixture.

use mbt_core::{
    load_network, render_trace, translate, translate_with, Direction, EventKind, Location, MarkerKind, MarkerState,
    MemoryNetwork, TranslationStatus,
};

fn net() -> MemoryNetwork {
    load_network(include_str!("../../../fixtures/travel.net")).expect("fixture loads")
}

fn lines(net: &MemoryNetwork, sentence: &str, dir: Direction) -> (String, Vec<String>) {
    let out = translate(net, sentence, dir);
    assert_eq!(out.status, TranslationStatus::Success, "{sentence}");
    (out.target_sentence.clone(), render_trace(&out.trace, net))
}

#[test]
fn compulsory_free_accepted_out_of_fixed_position() {
    let net = net();
    let (canonical, _) = lines(&net, "eti ho-thel issnunci ka-lu-chye-cwu-si-keyss-e-yo?", Direction::KO_EN);
    let (moved, trace) = lines(&net, "ho-thel eti issnunci ka-lu-chye-cwu-si-keyss-e-yo?", Direction::KO_EN);
    assert_eq!(canonical, "Would you tell me where the hotel is?");
    assert_eq!(moved, canonical);
    assert!(trace.iter().any(|l| l.starts_with("accept - cs:kcs2")));
}

#[test]
fn omissible_fixed_skipped_and_withdrawn() {
    let net = net();
    let (skipped, trace) = lines(&net, "ho-thel kowun.", Direction::KO_EN);
    assert_eq!(skipped, "The hotel is beautiful.");
    assert!(
        trace.iter().any(|l| l.starts_with("withdraw AP cse:kcs5[1]OX")),
        "{trace:#?}"
    );
    let (filled, trace) = lines(&net, "ho-thel i kowun.", Direction::KO_EN);
    assert_eq!(filled, skipped);
    assert!(!trace.iter().any(|l| l.starts_with("withdraw AP cse:kcs5")));
}

#[test]
fn omissible_free_omitted_or_filled_first() {
    let net = net();
    let (omitted, _) = lines(&net, "ken-ney-ti kong-wen kanun kil-ul ka-lu-chye-cwu-si-keyss-e-yo?", Direction::KO_EN);
    let (filled, trace) = lines(
        &net,
        "ce-eykey ken-ney-ti kong-wen kanun kil-ul ka-lu-chye-cwu-si-keyss-e-yo?",
        Direction::KO_EN,
    );
    assert_eq!(omitted, "Would you tell me the way to Kennedy Park?");
    assert_eq!(filled, omitted);
    assert!(trace.iter().any(|l| l.starts_with("collide AP cse:kcs1[0]OF binding=tok1")));
}

#[test]
fn omitted_subject_is_generated_without_activation() {
    let net = net();
    let out = translate(
        &net,
        "ken-ney-ti kong-wen kanun kil-ul ka-lu-chye-cwu-si-keyss-e-yo?",
        Direction::KO_EN,
    );
    assert!(out.target_sentence.split_whitespace().any(|w| w == "me"));
    let me_en = net.lex_id("me-en").unwrap();
    let me_ko = net.lex_id("me-ko").unwrap();
    let generated = out.trace.iter().any(|e| {
        e.event == EventKind::Generate
            && e.marker == Some(MarkerKind::GP)
            && e.binding == Some(mbt_core::Binding::Default(me_en))
    });
    assert!(generated);
    let activated = out.trace.iter().any(|e| {
        e.event == EventKind::Activate && matches!(e.location, Location::Lexical(l) if l == me_en || l == me_ko)
    });
    assert!(!activated);
}

#[test]
fn no_parse_when_nothing_spans_the_input() {
    let out = translate(&net(), "hotel hotel", Direction::EN_KO);
    assert_eq!(out.status, TranslationStatus::NoParse);
    assert!(out.target_sentence.is_empty() && out.concept_tree.is_none());
}

#[test]
fn blank_input_is_reported() {
    assert_eq!(translate(&net(), "   ", Direction::EN_KO).status, TranslationStatus::EmptyInput);
}

#[test]
fn state_is_empty_after_every_sentence_and_traces_repeat() {
    let net = net();
    let mut state = MarkerState::new();
    let sentences = [
        ("Would you tell me the way to Kennedy Park?", Direction::EN_KO),
        ("xqz", Direction::EN_KO),
        ("hotel hotel", Direction::EN_KO),
        ("ho-thel eti iss-e-yo?", Direction::KO_EN),
    ];
    let first = translate_with(&mut state, &net, sentences[0].0, sentences[0].1);
    assert!(state.is_empty());
    for i in 0..100 {
        let (s, d) = sentences[i % sentences.len()];
        translate_with(&mut state, &net, s, d);
        assert!(state.is_empty(), "after {s}");
    }
    let last = translate_with(&mut state, &net, sentences[0].0, sentences[0].1);
    assert_eq!(first.trace, last.trace);
    assert_eq!(first, last);
}

#[test]
fn translation_is_deterministic() {
    let net = net();
    let a = translate(&net, "Where is the museum?", Direction::EN_KO);
    let b = translate(&net, "Where is the museum?", Direction::EN_KO);
    assert!(a.is_success());
    assert_eq!(a, b);
}

#[test]
fn trace_lines_have_fixed_shape() {
    let net = net();
    let (_, trace) = lines(&net, "Where is the hotel?", Direction::EN_KO);
    for l in &trace {
        let fields: Vec<&str> = l.split(' ').collect();
        assert_eq!(fields.len(), 5, "{l}");
        assert!(fields[3].starts_with("binding=") && fields[4].starts_with("token="), "{l}");
    }
    for kind in ["predict", "activate", "collide", "accept", "generate"] {
        assert!(trace.iter().any(|l| l.starts_with(kind)), "no {kind}");
    }
}
