//! Seeded synthetic networks for scale testing.
//!
//! Words are grouped under category concepts. Sentence sequences are built
//! over categories, one quoted literal each, and some of them over phrase
//! concepts that own sequences of their own. Korean sequences draw element
//! types at random; English ones are all CX in a shuffled order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::language::Language;
use crate::network::{
    ConceptId, ConceptNode, ConceptSequence, ConceptSequenceElement, CseType, CsId, Filler, LexicalItem,
    LiteralDecl, MemoryNetwork, NetworkParts, SentenceType,
};

const SYLLABLES_KO: &[&str] = &[
    "ka", "na", "ta", "ma", "pa", "sa", "ca", "cha", "kha", "tha", "pha", "ha", "ko", "no", "to", "mo", "po",
    "so", "co", "ku", "nu", "tu", "mu", "pu", "su", "cu", "ki", "ni", "ti", "mi", "pi", "si", "ci", "key",
    "ney", "tey", "mey", "pey", "sey", "cey", "kye", "nye", "lyu", "kwa", "hwa",
];
const SYLLABLES_EN: &[&str] = &[
    "bar", "ben", "cor", "dal", "fen", "gar", "hol", "jin", "kel", "lom", "mar", "nel", "pol", "quin", "ros",
    "sal", "tam", "vel", "wim", "zor", "ant", "eld", "ist", "orn", "ump",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthConfig {
    pub lexical_pairs: usize,
    pub cs_pairs: usize,
    pub seed: u64,
}

/// Number of word categories for a network with `lexical_pairs` words.
fn category_count(lexical_pairs: usize) -> usize {
    (lexical_pairs / 50).clamp(1, 20)
}

fn fresh_word(rng: &mut ChaCha8Rng, syllables: &[&str], joiner: &str, taken: &mut std::collections::HashSet<String>) -> String {
    let mut len = 2;
    loop {
        for _ in 0..16 {
            let w: Vec<&str> = (0..len).map(|_| *syllables.choose(rng).unwrap()).collect();
            let w = w.join(joiner);
            if taken.insert(w.clone()) {
                return w;
            }
        }
        len += 1;
    }
}

/// Builds a network with `lexical_pairs` word pairs and `cs_pairs` sequence
/// pairs. The same configuration always yields the same network.
pub fn synth_network(config: &SynthConfig) -> MemoryNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.lexical_pairs.max(1);
    let m = config.cs_pairs.max(1);
    let mut parts = NetworkParts::default();
    let mut taken_ko = std::collections::HashSet::new();
    let mut taken_en = std::collections::HashSet::new();

    let add_concept = |parts: &mut NetworkParts, name: String, parent: Option<ConceptId>, st: Option<SentenceType>| {
        parts.concepts.push(ConceptNode {
            name,
            parents: parent.into_iter().collect(),
            sentence_type: st,
        });
        ConceptId(parts.concepts.len() as u32 - 1)
    };

    let k = category_count(n);
    let categories: Vec<ConceptId> = (0..k)
        .map(|c| add_concept(&mut parts, format!("cat{c}"), None, None))
        .collect();
    for i in 0..n {
        let cat = categories[i % k];
        let c = add_concept(&mut parts, format!("w{i}"), Some(cat), None);
        let ko = fresh_word(&mut rng, SYLLABLES_KO, "-", &mut taken_ko);
        let en = fresh_word(&mut rng, SYLLABLES_EN, "", &mut taken_en);
        parts.lexicon.push(LexicalItem {
            name: format!("w{i}-ko"),
            language: Language::Ko,
            morphemes: vec![ko],
            concept: c,
        });
        parts.lexicon.push(LexicalItem {
            name: format!("w{i}-en"),
            language: Language::En,
            morphemes: vec![en],
            concept: c,
        });
    }

    // A quarter of the pairs are phrases, filled only by sentence sequences.
    let phrases = if m >= 4 { m / 4 } else { 0 };
    let sentences = m - phrases;
    let mut phrase_concepts = Vec::new();
    let root = if phrases > 0 {
        Some(add_concept(&mut parts, "phrase".into(), None, None))
    } else {
        None
    };
    for p in 0..phrases {
        let c = add_concept(&mut parts, format!("p{p}"), root, None);
        phrase_concepts.push(c);
        let fillers: Vec<ConceptId> = (0..rng.gen_range(2..=3))
            .map(|_| *categories.choose(&mut rng).unwrap())
            .collect();
        push_pair(&mut parts, &mut rng, &mut taken_ko, &mut taken_en, c, &format!("p{p}"), &fillers, false);
    }
    for s in 0..sentences {
        let st = if rng.gen_bool(0.5) {
            SentenceType::Question
        } else {
            SentenceType::Statement
        };
        let c = add_concept(&mut parts, format!("s{s}"), None, Some(st));
        let mut fillers: Vec<ConceptId> = (0..rng.gen_range(2..=4))
            .map(|_| *categories.choose(&mut rng).unwrap())
            .collect();
        if !phrase_concepts.is_empty() && rng.gen_bool(0.3) {
            fillers.push(*phrase_concepts.choose(&mut rng).unwrap());
        }
        push_pair(&mut parts, &mut rng, &mut taken_ko, &mut taken_en, c, &format!("s{s}"), &fillers, true);
    }

    MemoryNetwork::from_parts(parts).expect("synthetic network is well formed")
}

#[allow(clippy::too_many_arguments)]
fn push_pair(
    parts: &mut NetworkParts,
    rng: &mut ChaCha8Rng,
    taken_ko: &mut std::collections::HashSet<String>,
    taken_en: &mut std::collections::HashSet<String>,
    owner: ConceptId,
    name: &str,
    fillers: &[ConceptId],
    with_literal: bool,
) {
    let ko_id = CsId(parts.sequences.len() as u32);
    let en_id = CsId(ko_id.0 + 1);
    let mut ko: Vec<ConceptSequenceElement> = fillers
        .iter()
        .map(|f| ConceptSequenceElement {
            filler: Filler::Concept(*f),
            cse_type: *[CseType::CX, CseType::CF, CseType::OX, CseType::OF].choose(rng).unwrap(),
            default_lexical: None,
        })
        .collect();
    if !ko.iter().any(|e| !e.cse_type.is_omissible()) {
        ko[0].cse_type = CseType::CX;
    }
    let mut en: Vec<ConceptSequenceElement> = fillers
        .iter()
        .map(|f| ConceptSequenceElement {
            filler: Filler::Concept(*f),
            cse_type: CseType::CX,
            default_lexical: None,
        })
        .collect();
    en.shuffle(rng);
    if with_literal {
        let lk = fresh_word(rng, SYLLABLES_KO, "-", taken_ko);
        let le = fresh_word(rng, SYLLABLES_EN, "", taken_en);
        parts.literals.push(LiteralDecl {
            language: Language::Ko,
            text: lk.clone(),
        });
        parts.literals.push(LiteralDecl {
            language: Language::En,
            text: le.clone(),
        });
        ko.push(ConceptSequenceElement {
            filler: Filler::Literal(lk),
            cse_type: CseType::CX,
            default_lexical: None,
        });
        let at = rng.gen_range(0..=en.len());
        en.insert(
            at,
            ConceptSequenceElement {
                filler: Filler::Literal(le),
                cse_type: CseType::CX,
                default_lexical: None,
            },
        );
    }
    parts.sequences.push(ConceptSequence {
        name: format!("{name}-ko"),
        language: Language::Ko,
        owner,
        elements: ko,
        paired: en_id,
    });
    parts.sequences.push(ConceptSequence {
        name: format!("{name}-en"),
        language: Language::En,
        owner,
        elements: en,
        paired: ko_id,
    });
}

/// Draws a sentence of `language` accepted by some top-level sequence.
pub fn sample_sentence(net: &MemoryNetwork, language: Language, rng: &mut ChaCha8Rng) -> String {
    let tops: Vec<CsId> = net
        .sequences()
        .filter(|(_, s)| s.language == language && net.is_top_level(s.owner))
        .map(|(id, _)| id)
        .collect();
    let cs = *tops.choose(rng).expect("network has a top-level sequence");
    let mut words = Vec::new();
    expand(net, cs, rng, &mut words);
    let mut out = words.join(" ");
    if let Some(t) = net
        .sentence_type(net.sequence(cs).owner)
        .and_then(SentenceType::terminal)
    {
        out.push(t);
    }
    out
}

fn expand(net: &MemoryNetwork, cs: CsId, rng: &mut ChaCha8Rng, out: &mut Vec<String>) {
    let seq = net.sequence(cs);
    let mut order: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for (i, e) in seq.elements.iter().enumerate() {
        if e.cse_type.is_omissible() && rng.gen_bool(0.4) {
            continue;
        }
        if e.cse_type.is_free() {
            free.push(i);
        } else {
            order.push(i);
        }
    }
    for f in free {
        let at = rng.gen_range(0..=order.len());
        order.insert(at, f);
    }
    for i in order {
        match &seq.elements[i].filler {
            Filler::Literal(t) => out.push(t.clone()),
            Filler::Concept(f) => expand_concept(net, *f, seq.language, rng, out),
        }
    }
}

fn expand_concept(net: &MemoryNetwork, concept: ConceptId, language: Language, rng: &mut ChaCha8Rng, out: &mut Vec<String>) {
    let mut options: Vec<ConceptId> = Vec::new();
    let mut stack = vec![concept];
    while let Some(c) = stack.pop() {
        if options.contains(&c) {
            continue;
        }
        options.push(c);
        stack.extend(net.children(c).iter().copied());
    }
    options.retain(|c| {
        net.lexical_of_in(*c, language).next().is_some()
            || net.sequences_of(*c).iter().any(|s| net.sequence(*s).language == language)
    });
    let c = *options.choose(rng).expect("filler is grounded");
    if let Some(l) = net.lexical_of_in(c, language).next() {
        let lex = net.lexical(l);
        let profile = net.morphology(language);
        let seq = profile.sequence_for(&lex.morphemes).expect("lexicon morphemes are declared");
        out.push(profile.generate_word(&seq).expect("lexicon words generate"));
    } else {
        let cs = net
            .sequences_of(c)
            .iter()
            .copied()
            .find(|s| net.sequence(*s).language == language)
            .unwrap();
        expand(net, cs, rng, out);
    }
}

/// `count` sentences of `language` drawn with a generator seeded by `seed`.
pub fn sample_sentences(net: &MemoryNetwork, language: Language, count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_sentence(net, language, &mut rng)).collect()
}
