use mbt_core::morphology::Role;
use mbt_core::{load_network, Language, MemoryNetwork};

fn net() -> MemoryNetwork {
    load_network(include_str!("../../../fixtures/travel.net")).unwrap()
}

fn seq(net: &MemoryNetwork, language: Language, ms: &[&str]) -> mbt_core::MorphemeSequence {
    let ms: Vec<String> = ms.iter().map(|s| s.to_string()).collect();
    net.morphology(language).sequence_for(&ms).unwrap()
}

#[test]
fn plural_object_noun_has_three_morphemes() {
    let net = net();
    let analyses = net.morphology(Language::Ko).segment("pha-il-tul-ul");
    let first = &analyses[0];
    assert_eq!(first.texts(), ["pha-il", "tul", "ul"]);
    let roles: Vec<Role> = first.units.iter().map(|u| u.role).collect();
    assert_eq!(roles, [Role::Root, Role::Plural, Role::CaseMarker]);
}

#[test]
fn irregular_spellings() {
    let net = net();
    let en = net.morphology(Language::En);
    let ko = net.morphology(Language::Ko);
    assert_eq!(en.generate_word(&seq(&net, Language::En, &["study", "s"])).unwrap(), "studies");
    assert_eq!(en.generate_word(&seq(&net, Language::En, &["way", "s"])).unwrap(), "ways");
    assert_eq!(en.generate_word(&seq(&net, Language::En, &["file", "s"])).unwrap(), "files");
    assert_eq!(ko.generate_word(&seq(&net, Language::Ko, &["kop", "un"])).unwrap(), "kowun");
    assert_eq!(ko.segment("kowun")[0].texts(), ["kop", "un"]);
}

#[test]
fn segment_inverts_generate_over_every_grammatical_sequence() {
    let net = net();
    let mut checked = 0;
    for language in [Language::Ko, Language::En] {
        let profile = net.morphology(language);
        for s in profile.grammatical_sequences(6) {
            let word = profile.generate_word(&s).unwrap();
            let analyses = profile.segment(&word);
            assert!(analyses.contains(&s), "{s} -> {word} -> {analyses:?}");
            for a in &analyses {
                assert_eq!(profile.generate_word(a).unwrap().to_lowercase(), word.to_lowercase());
            }
            checked += 1;
        }
    }
    assert!(checked > 800, "only {checked} sequences");
}

#[test]
fn every_lexical_item_is_found_from_its_surface() {
    let net = net();
    for (id, l) in net.lexicon() {
        let profile = net.morphology(l.language);
        let word = profile.generate_word(&profile.sequence_for(&l.morphemes).unwrap()).unwrap();
        let found = profile
            .segment(&word)
            .iter()
            .any(|s| net.lookup_lexical(l.language, &s.texts()).contains(&id));
        assert!(found, "{} ({word})", l.name);
    }
}

#[test]
fn unknown_words_have_no_analysis() {
    let net = net();
    assert!(net.morphology(Language::Ko).segment("xqz").is_empty());
    assert!(net.morphology(Language::En).segment("hotelz").is_empty());
}
