use mbt_core::{load_network, render_trace, round_trip, translate, Direction, MemoryNetwork, TranslationStatus};

fn net() -> MemoryNetwork {
    load_network(include_str!("../../../fixtures/travel.net")).expect("fixture loads")
}

const KENNEDY_EN: &str = "Would you tell me the way to Kennedy Park?";
const KENNEDY_KO: &str = "ce-eykey ken-ney-ti kong-wen kanun kil-ul ka-lu-chye-cwu-si-keyss-e-yo?";

#[test]
fn kennedy_park_forward() {
    let net = net();
    let out = translate(&net, KENNEDY_EN, Direction::EN_KO);
    if !out.is_success() {
        for l in render_trace(&out.trace, &net) {
            eprintln!("{l}");
        }
    }
    assert_eq!(out.status, TranslationStatus::Success);
    assert_eq!(out.target_sentence, KENNEDY_KO);
}

#[test]
fn kennedy_park_backward() {
    let net = net();
    let out = translate(&net, KENNEDY_KO, Direction::KO_EN);
    assert_eq!(out.status, TranslationStatus::Success);
    assert_eq!(out.target_sentence, KENNEDY_EN);
}

#[test]
fn round_trip_trees_agree() {
    let net = net();
    let (f, b) = round_trip(&net, KENNEDY_EN, Direction::EN_KO).unwrap();
    assert!(b.is_success());
    assert!(mbt_core::isomorphic(f.concept_tree.as_ref().unwrap(), b.concept_tree.as_ref().unwrap()));
}

#[test]
fn unknown_word_reports_first_position() {
    let out = translate(&net(), "xqz zzz", Direction::EN_KO);
    assert_eq!(
        out.status,
        TranslationStatus::UnknownWord {
            position: 1,
            token: "xqz".into()
        }
    );
}
