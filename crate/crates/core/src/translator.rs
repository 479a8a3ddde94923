//! End-to-end translation of one sentence.

use std::fmt;

use thiserror::Error;

use crate::engine::trace::Trace;
use crate::engine::{ConceptTree, Emission, MarkerState, Reading};
use crate::language::{Direction, Language};
use crate::morphology::tokenize;
use crate::network::{fold, MemoryNetwork, SentenceType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslationStatus {
    Success,
    /// The input ran out with no top-level sequence accepted over all of it.
    NoParse,
    /// First word with no reading; `position` is 1-based.
    UnknownWord { position: usize, token: String },
    /// Blank input.
    EmptyInput,
    /// An accepted analysis that the target side cannot realize.
    GenerationFailed { message: String },
}

impl fmt::Display for TranslationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslationStatus::Success => f.write_str("success"),
            TranslationStatus::NoParse => f.write_str("no-parse"),
            TranslationStatus::UnknownWord { position, token } => {
                write!(f, "unknown-word({position}): `{token}`")
            }
            TranslationStatus::EmptyInput => f.write_str("empty input"),
            TranslationStatus::GenerationFailed { message } => write!(f, "generation failed: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    /// Empty unless the status is `Success`.
    pub target_sentence: String,
    pub concept_tree: Option<ConceptTree>,
    pub direction: Direction,
    pub trace: Trace,
    pub status: TranslationStatus,
}

impl TranslationResult {
    pub fn is_success(&self) -> bool {
        self.status == TranslationStatus::Success
    }
}

pub fn translate(net: &MemoryNetwork, sentence: &str, direction: Direction) -> TranslationResult {
    let mut state = MarkerState::new();
    translate_with(&mut state, net, sentence, direction)
}

/// Like [`translate`], reusing `state`. The state is left empty afterwards.
pub fn translate_with(
    state: &mut MarkerState,
    net: &MemoryNetwork,
    sentence: &str,
    direction: Direction,
) -> TranslationResult {
    let (status, target_sentence, concept_tree) = run(state, net, sentence, direction);
    let trace = state.finish();
    TranslationResult {
        target_sentence,
        concept_tree,
        direction,
        trace,
        status,
    }
}

/// Every reading of `word`: each lexical item matching a segmentation, then
/// the word itself as a literal.
pub fn readings(net: &MemoryNetwork, language: Language, word: &str) -> Vec<Reading> {
    let mut out = Vec::new();
    for seq in net.morphology(language).segment(word) {
        for l in net.lookup_lexical(language, &seq.texts()) {
            let r = Reading::Lexical(l);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    if net.is_literal(language, word) {
        out.push(Reading::Literal(fold(word)));
    }
    out
}

fn run(
    state: &mut MarkerState,
    net: &MemoryNetwork,
    sentence: &str,
    direction: Direction,
) -> (TranslationStatus, String, Option<ConceptTree>) {
    let Ok(tokens) = tokenize(sentence) else {
        return (TranslationStatus::EmptyInput, String::new(), None);
    };
    let source = direction.source();
    // Lexical lookup comes first so that an unknown word is reported even
    // when an earlier word already rules out every analysis.
    let mut words = Vec::with_capacity(tokens.words.len());
    for (p, w) in tokens.words.iter().enumerate() {
        let r = readings(net, source, &w.folded);
        if r.is_empty() {
            return (
                TranslationStatus::UnknownWord {
                    position: p + 1,
                    token: w.surface.clone(),
                },
                String::new(),
                None,
            );
        }
        words.push(r);
    }

    state.initial_prediction(net, direction);
    for (p, r) in words.iter().enumerate() {
        state.activate(net, r, p);
        state.step_collisions(net);
    }
    let Some(root) = state.end_of_input(net, words.len()) else {
        return (TranslationStatus::NoParse, String::new(), None);
    };
    let generation = match state.generate(net, root) {
        Ok(g) => g,
        Err(e) => {
            return (
                TranslationStatus::GenerationFailed { message: e.to_string() },
                String::new(),
                None,
            )
        }
    };
    match surface(net, direction.target(), &generation.emissions, generation.sentence_type) {
        Ok(s) if !s.is_empty() => (TranslationStatus::Success, s, Some(generation.tree)),
        Ok(_) => (
            TranslationStatus::GenerationFailed {
                message: "empty realization".into(),
            },
            String::new(),
            None,
        ),
        Err(message) => (TranslationStatus::GenerationFailed { message }, String::new(), None),
    }
}

/// Spells the emitted words, one space between words, with terminal
/// punctuation from the sentence type.
fn surface(
    net: &MemoryNetwork,
    language: Language,
    emissions: &[Emission],
    sentence_type: Option<SentenceType>,
) -> Result<String, String> {
    let profile = net.morphology(language);
    let mut words = Vec::with_capacity(emissions.len());
    for e in emissions {
        let seq = profile.sequence_for(&e.morphemes).map_err(|err| err.to_string())?;
        words.push(profile.generate_word(&seq).map_err(|err| err.to_string())?);
    }
    let mut out = words.join(" ");
    if language.capitalizes_sentences() {
        if let Some(first) = out.chars().next() {
            out = first.to_uppercase().chain(out.chars().skip(1)).collect();
        }
    }
    if let Some(t) = sentence_type.and_then(SentenceType::terminal) {
        out.push(t);
    }
    Ok(out)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("forward translation did not succeed: {0}")]
pub struct RoundTripError(pub TranslationStatus);

/// Translates `sentence` and then translates the result back.
pub fn round_trip(
    net: &MemoryNetwork,
    sentence: &str,
    direction: Direction,
) -> Result<(TranslationResult, TranslationResult), RoundTripError> {
    let forward = translate(net, sentence, direction);
    if !forward.is_success() {
        return Err(RoundTripError(forward.status));
    }
    let back = translate(net, &forward.target_sentence, direction.reverse());
    Ok((forward, back))
}
