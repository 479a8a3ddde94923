//! Brute-force reference recognizer.
//!
//! Enumerates every subset of omitted elements and every order of the
//! remaining elements that keeps the fixed-order ones in sequence, then tries
//! every split of the input between them. Exponential, and only meant for
//! checking the marker-passing recognizer on small sequences.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::Reading;
use crate::language::Language;
use crate::network::{
    fold, ConceptId, ConceptNode, ConceptSequence, ConceptSequenceElement, CseType, CsId, Filler, LexicalItem,
    LiteralDecl, MemoryNetwork, NetworkParts,
};

/// Sequences longer than this are refused.
pub const ORACLE_MAX_ELEMENTS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("sequence `{name}` has {len} elements, more than the oracle handles")]
    TooLong { name: String, len: usize },
}

/// Whether `cs` can cover all of `words`, each word given by its readings.
pub fn recognize_oracle(net: &MemoryNetwork, cs: CsId, words: &[Vec<Reading>]) -> Result<bool, OracleError> {
    let mut oracle = Oracle {
        net,
        words,
        memo: HashMap::new(),
    };
    oracle.check(cs)?;
    oracle.covers(cs, 0, words.len())
}

struct Oracle<'a> {
    net: &'a MemoryNetwork,
    words: &'a [Vec<Reading>],
    /// `None` while a span is being computed, so cyclic references fail.
    memo: HashMap<(CsId, usize, usize), Option<bool>>,
}

impl Oracle<'_> {
    fn check(&self, cs: CsId) -> Result<(), OracleError> {
        let s = self.net.sequence(cs);
        if s.elements.len() > ORACLE_MAX_ELEMENTS {
            return Err(OracleError::TooLong {
                name: s.name.clone(),
                len: s.elements.len(),
            });
        }
        Ok(())
    }

    fn covers(&mut self, cs: CsId, i: usize, j: usize) -> Result<bool, OracleError> {
        if i >= j {
            return Ok(false);
        }
        match self.memo.get(&(cs, i, j)) {
            Some(Some(v)) => return Ok(*v),
            Some(None) => return Ok(false),
            None => {}
        }
        self.check(cs)?;
        self.memo.insert((cs, i, j), None);
        let s = self.net.sequence(cs);
        let omissible: Vec<usize> = (0..s.elements.len())
            .filter(|&e| s.elements[e].cse_type.is_omissible())
            .collect();
        let mut found = false;
        'subsets: for mask in 0u32..(1 << omissible.len()) {
            let present: Vec<usize> = (0..s.elements.len())
                .filter(|e| {
                    omissible
                        .iter()
                        .position(|o| o == e)
                        .is_none_or(|k| mask & (1 << k) == 0)
                })
                .collect();
            if present.is_empty() || present.len() > j - i {
                continue;
            }
            for order in orders(s, &present) {
                if self.split(&order, s, i, j)? {
                    found = true;
                    break 'subsets;
                }
            }
        }
        self.memo.insert((cs, i, j), Some(found));
        Ok(found)
    }

    /// Whether `order[0]` covers some prefix of `[i, j)` and the rest covers
    /// the remainder.
    fn split(&mut self, order: &[usize], s: &ConceptSequence, i: usize, j: usize) -> Result<bool, OracleError> {
        let Some((&first, rest)) = order.split_first() else {
            return Ok(i == j);
        };
        let max_end = j - rest.len();
        for k in i + 1..=max_end {
            if self.element_covers(s, first, i, k)? && self.split(rest, s, k, j)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn element_covers(&mut self, s: &ConceptSequence, e: usize, i: usize, k: usize) -> Result<bool, OracleError> {
        let net = self.net;
        match &s.elements[e].filler {
            Filler::Literal(t) => Ok(k == i + 1
                && self.words[i]
                    .iter()
                    .any(|r| matches!(r, Reading::Literal(l) if fold(l) == fold(t)))),
            Filler::Concept(f) => {
                if k == i + 1
                    && self.words[i]
                        .iter()
                        .any(|r| matches!(r, Reading::Lexical(l) if net.is_a(net.lexical(*l).concept, *f)))
                {
                    return Ok(true);
                }
                for (sub, seq) in net.sequences() {
                    if seq.language == s.language && net.is_a(seq.owner, *f) && self.covers(sub, i, k)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Orders of `present` in which fixed-order elements keep their relative
/// order and free-order elements go anywhere.
fn orders(s: &ConceptSequence, present: &[usize]) -> Vec<Vec<usize>> {
    let fixed: Vec<usize> = present
        .iter()
        .copied()
        .filter(|&e| !s.elements[e].cse_type.is_free())
        .collect();
    let free: Vec<usize> = present
        .iter()
        .copied()
        .filter(|&e| s.elements[e].cse_type.is_free())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; free.len()];
    fn go(
        fixed: &[usize],
        free: &[usize],
        used: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        total: usize,
    ) {
        if current.len() == total {
            out.push(current.clone());
            return;
        }
        if let Some((&f, rest)) = fixed.split_first() {
            current.push(f);
            go(rest, free, used, current, out, total);
            current.pop();
        }
        for k in 0..free.len() {
            if !used[k] {
                used[k] = true;
                current.push(free[k]);
                go(fixed, free, used, current, out, total);
                current.pop();
                used[k] = false;
            }
        }
    }
    go(&fixed, &free, &mut used, &mut current, &mut out, present.len());
    out
}

const TYPES: [CseType; 4] = [CseType::CX, CseType::CF, CseType::OX, CseType::OF];

fn concept(parts: &mut NetworkParts, name: &str, parent: Option<ConceptId>) -> ConceptId {
    parts.concepts.push(ConceptNode {
        name: name.into(),
        parents: parent.into_iter().collect(),
        sentence_type: None,
    });
    ConceptId(parts.concepts.len() as u32 - 1)
}

fn lex(parts: &mut NetworkParts, word: &str, language: Language, c: ConceptId) {
    parts.lexicon.push(LexicalItem {
        name: format!("{word}-{language}"),
        language,
        morphemes: vec![word.into()],
        concept: c,
    });
}

fn pair(parts: &mut NetworkParts, name: &str, owner: ConceptId, ko: Vec<ConceptSequenceElement>) -> CsId {
    let id = CsId(parts.sequences.len() as u32);
    let en = ko
        .iter()
        .map(|e| ConceptSequenceElement {
            filler: match &e.filler {
                Filler::Literal(_) => Filler::Literal("en-lit".into()),
                f => f.clone(),
            },
            cse_type: CseType::CX,
            default_lexical: None,
        })
        .collect();
    parts.sequences.push(ConceptSequence {
        name: format!("{name}-ko"),
        language: Language::Ko,
        owner,
        elements: ko,
        paired: CsId(id.0 + 1),
    });
    parts.sequences.push(ConceptSequence {
        name: format!("{name}-en"),
        language: Language::En,
        owner,
        elements: en,
        paired: id,
    });
    id
}

fn el(filler: Filler, cse_type: CseType) -> ConceptSequenceElement {
    ConceptSequenceElement {
        filler,
        cse_type,
        default_lexical: None,
    }
}

/// A random network with one sequence under test.
pub struct OracleCase {
    pub net: MemoryNetwork,
    pub cs: CsId,
    /// Korean input words.
    pub words: Vec<String>,
}

/// Three word categories, a literal, and a two-element sub-sequence that the
/// sequence under test may embed.
fn case(rng: &mut ChaCha8Rng) -> (MemoryNetwork, CsId, Vec<String>) {
    let mut parts = NetworkParts::default();
    let cats: Vec<ConceptId> = (0..3).map(|i| concept(&mut parts, &format!("c{i}"), None)).collect();
    let mut vocabulary = Vec::new();
    for (i, &c) in cats.iter().enumerate() {
        for j in 0..2 {
            let w = concept(&mut parts, &format!("c{i}w{j}"), Some(c));
            let word = format!("k{i}{j}");
            lex(&mut parts, &word, Language::Ko, w);
            lex(&mut parts, &format!("e{i}{j}"), Language::En, w);
            vocabulary.push(word);
        }
    }
    parts.literals.push(LiteralDecl {
        language: Language::Ko,
        text: "ul".into(),
    });
    parts.literals.push(LiteralDecl {
        language: Language::En,
        text: "en-lit".into(),
    });
    vocabulary.push("ul".into());

    let sub = concept(&mut parts, "sub", None);
    let sub_types = [
        *TYPES.choose(rng).unwrap(),
        *[CseType::CX, CseType::CF].choose(rng).unwrap(),
    ];
    pair(
        &mut parts,
        "sub",
        sub,
        vec![
            el(Filler::Concept(*cats.choose(rng).unwrap()), sub_types[0]),
            el(Filler::Concept(*cats.choose(rng).unwrap()), sub_types[1]),
        ],
    );

    let top = concept(&mut parts, "top", None);
    let len = rng.gen_range(1..=6);
    let mut elements: Vec<ConceptSequenceElement> = (0..len)
        .map(|_| {
            let filler = match rng.gen_range(0..8) {
                0 => Filler::Literal("ul".into()),
                1 => Filler::Concept(sub),
                _ => Filler::Concept(*cats.choose(rng).unwrap()),
            };
            el(filler, *TYPES.choose(rng).unwrap())
        })
        .collect();
    if elements.iter().all(|e| e.cse_type.is_omissible()) {
        let i = rng.gen_range(0..len);
        elements[i].cse_type = *[CseType::CX, CseType::CF].choose(rng).unwrap();
    }
    let cs = pair(&mut parts, "top", top, elements);
    (MemoryNetwork::from_parts(parts).expect("generated network is well formed"), cs, vocabulary)
}

/// Words drawn from the sequence itself so that about half the inputs are
/// accepted, with occasional noise.
fn sample(net: &MemoryNetwork, cs: CsId, rng: &mut ChaCha8Rng, out: &mut Vec<String>) {
    let seq = net.sequence(cs);
    let mut order = Vec::new();
    let mut free = Vec::new();
    for (i, e) in seq.elements.iter().enumerate() {
        if e.cse_type.is_omissible() && rng.gen_bool(0.5) {
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
            Filler::Concept(c) => {
                if let Some(&s) = net.sequences_of(*c).iter().find(|s| net.sequence(**s).language == Language::Ko) {
                    sample(net, s, rng, out);
                } else {
                    let words: Vec<_> = net
                        .lexicon()
                        .filter(|(_, l)| l.language == Language::Ko && net.is_a(l.concept, *c))
                        .map(|(_, l)| l.morphemes[0].clone())
                        .collect();
                    out.push(words.choose(rng).expect("category has words").clone());
                }
            }
        }
    }
}

/// `count` cases: sequences of up to six elements over all four element
/// types, each with an input of up to six words. Most inputs are drawn from
/// the sequence itself, some perturbed, the rest random.
pub fn random_cases(seed: u64, count: usize) -> Vec<OracleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (net, cs, vocabulary) = case(&mut rng);
            let mut words = Vec::new();
            if rng.gen_bool(0.7) {
                sample(&net, cs, &mut rng, &mut words);
                if rng.gen_bool(0.2) && !words.is_empty() {
                    let i = rng.gen_range(0..words.len());
                    words[i] = vocabulary.choose(&mut rng).unwrap().clone();
                }
            } else {
                let len = rng.gen_range(1..=6);
                words = (0..len).map(|_| vocabulary.choose(&mut rng).unwrap().clone()).collect();
            }
            words.truncate(6);
            OracleCase { net, cs, words }
        })
        .collect()
}
