//! Memory-based bidirectional Korean/English dialog translation.
//!
//! A [`MemoryNetwork`] holds a concept hierarchy shared by both languages,
//! a lexicon per language and paired concept sequences. Translation runs a
//! marker-passing recognizer over the source sentence and realizes the
//! paired target sequences of the accepted analysis.
//!
//! ```
//! use mbt_core::{load_network, translate, Direction};
//!
//! let net = load_network(include_str!("../../../fixtures/travel.net")).unwrap();
//! let out = translate(&net, "Where is the hotel?", Direction::EN_KO);
//! assert!(out.is_success());
//! ```

pub mod engine;
pub mod language;
pub mod morphology;
pub mod network;
pub mod oracle;
pub mod synth;
pub mod translator;

pub use engine::generate::isomorphic;
pub use engine::marker::{Binding, InstanceId, Location, Marker, MarkerKind, Owner};
pub use engine::trace::{render_trace, EventKind, Trace, TraceEvent};
pub use engine::{ConceptTree, MarkerState, Origin, Reading};
pub use language::{Direction, Language};
pub use morphology::{tokenize, MorphError, MorphProfile, MorphemeSequence};
pub use network::{
    load_network, validate_network, ConceptId, CseType, CsId, Diagnostic, DiagnosticKind, Filler, LexId,
    MemoryNetwork, NetworkError, NetworkParts, SentenceType,
};
pub use oracle::{recognize_oracle, OracleError};
pub use translator::{readings, round_trip, translate, translate_with, RoundTripError, TranslationResult, TranslationStatus};
