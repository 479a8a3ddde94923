//! The bilingual memory network: concept nodes in an IS-A hierarchy, lexical
//! items hanging off them in both languages, and paired concept sequences.
//!
//! A [`MemoryNetwork`] is immutable once built. The primary data lives in
//! [`NetworkParts`]; everything else (name tables, ancestor closures, the
//! morpheme index, morphology profiles) is derived when the network is built
//! and never serialized.

mod parse;
mod serialize;
mod validate;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::language::Language;
use crate::morphology::{Affix, Connection, MorphProfile, MorphRule};

pub use parse::load_network;
pub use validate::{validate_network, Diagnostic, DiagnosticKind};

macro_rules! index_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

index_type!(
    /// Position of a concept node in declaration order.
    ConceptId
);
index_type!(
    /// Position of a lexical item in declaration order.
    LexId
);
index_type!(
    /// Position of a concept sequence in declaration order.
    CsId
);

/// Final punctuation class of a top-level concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SentenceType {
    Question,
    Statement,
    /// Top-level, but generated without terminal punctuation.
    Bare,
}

impl SentenceType {
    pub fn keyword(self) -> &'static str {
        match self {
            SentenceType::Question => "question",
            SentenceType::Statement => "statement",
            SentenceType::Bare => "none",
        }
    }

    pub fn terminal(self) -> Option<char> {
        match self {
            SentenceType::Question => Some('?'),
            SentenceType::Statement => Some('.'),
            SentenceType::Bare => None,
        }
    }
}

impl FromStr for SentenceType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "question" => Ok(SentenceType::Question),
            "statement" => Ok(SentenceType::Statement),
            "none" => Ok(SentenceType::Bare),
            other => Err(format!("unknown sentence type `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptNode {
    pub name: String,
    pub parents: Vec<ConceptId>,
    pub sentence_type: Option<SentenceType>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalItem {
    pub name: String,
    pub language: Language,
    /// Segmented form: the root followed by any declared affixes.
    pub morphemes: Vec<String>,
    pub concept: ConceptId,
}

/// Order and omission class of a sequence element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CseType {
    /// Compulsory, fixed order.
    CX,
    /// Compulsory, free order.
    CF,
    /// Omissible, fixed order.
    OX,
    /// Omissible, free order.
    OF,
}

impl CseType {
    pub const ALL: [CseType; 4] = [CseType::CX, CseType::CF, CseType::OX, CseType::OF];

    pub fn is_omissible(self) -> bool {
        matches!(self, CseType::OX | CseType::OF)
    }

    pub fn is_free(self) -> bool {
        matches!(self, CseType::CF | CseType::OF)
    }

    pub fn code(self) -> &'static str {
        match self {
            CseType::CX => "CX",
            CseType::CF => "CF",
            CseType::OX => "OX",
            CseType::OF => "OF",
        }
    }
}

impl fmt::Display for CseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CseType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CX" => Ok(CseType::CX),
            "CF" => Ok(CseType::CF),
            "OX" => Ok(CseType::OX),
            "OF" => Ok(CseType::OF),
            other => Err(format!("unknown element type `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Filler {
    Concept(ConceptId),
    /// A function morpheme matched directly, without IS-A traversal.
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSequenceElement {
    pub filler: Filler,
    pub cse_type: CseType,
    /// Emitted when the element has to be generated with no source material.
    pub default_lexical: Option<LexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSequence {
    pub name: String,
    pub language: Language,
    pub owner: ConceptId,
    pub elements: Vec<ConceptSequenceElement>,
    pub paired: CsId,
}

/// A function morpheme that may appear as a quoted literal in a sequence
/// without being part of any lexical item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralDecl {
    pub language: Language,
    pub text: String,
}

/// The declared content of a network, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NetworkParts {
    pub concepts: Vec<ConceptNode>,
    pub lexicon: Vec<LexicalItem>,
    pub sequences: Vec<ConceptSequence>,
    pub literals: Vec<LiteralDecl>,
    pub affixes: Vec<Affix>,
    pub rules: Vec<MorphRule>,
    pub connections: Vec<Connection>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}duplicate {kind} id `{id}`", at_line(*.line))]
    DuplicateId {
        line: Option<usize>,
        kind: &'static str,
        id: String,
    },
    #[error("{}dangling {kind} reference `{id}`", at_line(*.line))]
    DanglingReference {
        line: Option<usize>,
        kind: &'static str,
        id: String,
    },
    #[error("no concepts declared")]
    NoConcepts,
    #[error("pairing must cross languages: `{cs}` is paired with `{paired}`")]
    SameLanguagePairing { cs: String, paired: String },
    #[error("concept sequence `{cs}` has no elements")]
    EmptySequence { cs: String },
    #[error("concept sequence `{cs}` has no compulsory element and would accept the empty string")]
    AllOmissible { cs: String },
    #[error("lexical item `{lex}` has an empty morpheme")]
    EmptyMorpheme { lex: String },
    #[error("lexical item `{lex}` uses undeclared affix `{morpheme}`")]
    UndeclaredAffix { lex: String, morpheme: String },
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

#[derive(Debug, Clone)]
struct Index {
    concept_by_name: HashMap<String, ConceptId>,
    lex_by_name: HashMap<String, LexId>,
    cs_by_name: HashMap<String, CsId>,
    children: Vec<Vec<ConceptId>>,
    ancestors: Vec<Vec<ConceptId>>,
    lex_by_concept: Vec<Vec<LexId>>,
    cs_by_owner: Vec<Vec<CsId>>,
    morpheme_index: HashMap<(Language, Vec<String>), Vec<LexId>>,
    literals: HashSet<(Language, String)>,
    top_level: Vec<bool>,
    profiles: [MorphProfile; 2],
}

/// An indexed, immutable bilingual memory network.
#[derive(Debug, Clone)]
pub struct MemoryNetwork {
    parts: NetworkParts,
    index: Index,
}

impl PartialEq for MemoryNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for MemoryNetwork {}

pub(crate) fn fold(s: &str) -> String {
    s.to_lowercase()
}

impl MemoryNetwork {
    /// Builds and indexes a network from its parts. Checks only structural
    /// soundness (resolvable references, unique ids, cross-language pairing);
    /// semantic invariants are left to [`validate_network`].
    pub fn from_parts(parts: NetworkParts) -> Result<Self, NetworkError> {
        if parts.concepts.is_empty() {
            return Err(NetworkError::NoConcepts);
        }
        check_unique("concept", parts.concepts.iter().map(|c| c.name.as_str()))?;
        check_unique("lexical", parts.lexicon.iter().map(|l| l.name.as_str()))?;
        check_unique("sequence", parts.sequences.iter().map(|s| s.name.as_str()))?;

        let nc = parts.concepts.len();
        let concept_ok = |id: ConceptId| id.index() < nc;
        let dangling = |kind, id: String| NetworkError::DanglingReference {
            line: None,
            kind,
            id,
        };
        for c in &parts.concepts {
            if let Some(p) = c.parents.iter().find(|p| !concept_ok(**p)) {
                return Err(dangling("concept", format!("#{}", p.0)));
            }
        }
        let affix_set: HashSet<(Language, String)> = parts
            .affixes
            .iter()
            .map(|a| (a.language, fold(&a.morpheme)))
            .collect();
        for l in &parts.lexicon {
            if !concept_ok(l.concept) {
                return Err(dangling("concept", format!("#{}", l.concept.0)));
            }
            if l.morphemes.is_empty() || l.morphemes.iter().any(|m| m.is_empty()) {
                return Err(NetworkError::EmptyMorpheme { lex: l.name.clone() });
            }
            if let Some(m) = l.morphemes[1..]
                .iter()
                .find(|m| !affix_set.contains(&(l.language, fold(m))))
            {
                return Err(NetworkError::UndeclaredAffix {
                    lex: l.name.clone(),
                    morpheme: m.clone(),
                });
            }
        }
        let ns = parts.sequences.len();
        for s in &parts.sequences {
            if !concept_ok(s.owner) {
                return Err(dangling("concept", format!("#{}", s.owner.0)));
            }
            if s.paired.index() >= ns {
                return Err(dangling("sequence", format!("#{}", s.paired.0)));
            }
            let paired = &parts.sequences[s.paired.index()];
            if paired.language == s.language {
                return Err(NetworkError::SameLanguagePairing {
                    cs: s.name.clone(),
                    paired: paired.name.clone(),
                });
            }
            if s.elements.is_empty() {
                return Err(NetworkError::EmptySequence { cs: s.name.clone() });
            }
            for e in &s.elements {
                if let Filler::Concept(c) = e.filler {
                    if !concept_ok(c) {
                        return Err(dangling("concept", format!("#{}", c.0)));
                    }
                }
                if let Some(d) = e.default_lexical {
                    if d.index() >= parts.lexicon.len() {
                        return Err(dangling("lexical", format!("#{}", d.0)));
                    }
                }
            }
        }

        let index = Index::build(&parts);
        Ok(MemoryNetwork { parts, index })
    }

    pub fn parts(&self) -> &NetworkParts {
        &self.parts
    }

    pub fn into_parts(self) -> NetworkParts {
        self.parts
    }

    pub fn concepts(&self) -> impl Iterator<Item = (ConceptId, &ConceptNode)> {
        self.parts
            .concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (ConceptId(i as u32), c))
    }

    pub fn lexicon(&self) -> impl Iterator<Item = (LexId, &LexicalItem)> {
        self.parts
            .lexicon
            .iter()
            .enumerate()
            .map(|(i, l)| (LexId(i as u32), l))
    }

    pub fn sequences(&self) -> impl Iterator<Item = (CsId, &ConceptSequence)> {
        self.parts
            .sequences
            .iter()
            .enumerate()
            .map(|(i, s)| (CsId(i as u32), s))
    }

    pub fn concept(&self, id: ConceptId) -> &ConceptNode {
        &self.parts.concepts[id.index()]
    }

    pub fn lexical(&self, id: LexId) -> &LexicalItem {
        &self.parts.lexicon[id.index()]
    }

    pub fn sequence(&self, id: CsId) -> &ConceptSequence {
        &self.parts.sequences[id.index()]
    }

    pub fn concept_id(&self, name: &str) -> Option<ConceptId> {
        self.index.concept_by_name.get(name).copied()
    }

    pub fn lex_id(&self, name: &str) -> Option<LexId> {
        self.index.lex_by_name.get(name).copied()
    }

    pub fn cs_id(&self, name: &str) -> Option<CsId> {
        self.index.cs_by_name.get(name).copied()
    }

    /// Direct IS-A children.
    pub fn children(&self, id: ConceptId) -> &[ConceptId] {
        &self.index.children[id.index()]
    }

    /// The concept itself followed by every IS-A ancestor, breadth first.
    /// Terminates on cyclic hierarchies.
    pub fn ancestors(&self, id: ConceptId) -> &[ConceptId] {
        &self.index.ancestors[id.index()]
    }

    pub fn is_a(&self, concept: ConceptId, ancestor: ConceptId) -> bool {
        self.ancestors(concept).contains(&ancestor)
    }

    /// Lexical items whose IS-A link points directly at `id`.
    pub fn lexical_of(&self, id: ConceptId) -> &[LexId] {
        &self.index.lex_by_concept[id.index()]
    }

    pub fn lexical_of_in(&self, id: ConceptId, language: Language) -> impl Iterator<Item = LexId> + '_ {
        self.lexical_of(id)
            .iter()
            .copied()
            .filter(move |l| self.lexical(*l).language == language)
    }

    /// Concept sequences owned by `id`, both languages.
    pub fn sequences_of(&self, id: ConceptId) -> &[CsId] {
        &self.index.cs_by_owner[id.index()]
    }

    /// Whether `id` can end a derivation: it is declared with a sentence type,
    /// or it owns a sequence and no sequence element can be filled by it.
    pub fn is_top_level(&self, id: ConceptId) -> bool {
        self.index.top_level[id.index()]
    }

    /// Sentence type of `id` or of its nearest ancestor that declares one.
    pub fn sentence_type(&self, id: ConceptId) -> Option<SentenceType> {
        self.ancestors(id)
            .iter()
            .find_map(|a| self.concept(*a).sentence_type)
    }

    /// Whether `text` can be read as a literal in `language`: it is declared
    /// with `literal` or quoted in some sequence of that language.
    pub fn is_literal(&self, language: Language, text: &str) -> bool {
        self.index.literals.contains(&(language, fold(text)))
    }

    pub fn morphology(&self, language: Language) -> &MorphProfile {
        match language {
            Language::Ko => &self.index.profiles[0],
            Language::En => &self.index.profiles[1],
        }
    }

    /// Exact-match lexical lookup on a segmented word.
    pub fn lookup_lexical(&self, language: Language, morphemes: &[String]) -> Vec<LexId> {
        let key = (language, morphemes.iter().map(|m| fold(m)).collect::<Vec<_>>());
        self.index
            .morpheme_index
            .get(&key)
            .cloned()
            .unwrap_or_default()
    }

    /// Whether a sequence element filled with `filler` can be realized from
    /// material with concept `concept`.
    pub fn filler_accepts(&self, filler: &Filler, concept: ConceptId) -> bool {
        match filler {
            Filler::Concept(c) => self.is_a(concept, *c),
            Filler::Literal(_) => false,
        }
    }

    /// Writes the network back in the declarative file format.
    pub fn to_source(&self) -> String {
        serialize::to_source(self)
    }
}

fn check_unique<'a>(kind: &'static str, names: impl Iterator<Item = &'a str>) -> Result<(), NetworkError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(NetworkError::DuplicateId {
                line: None,
                kind,
                id: n.to_string(),
            });
        }
    }
    Ok(())
}

impl Index {
    fn build(parts: &NetworkParts) -> Index {
        let nc = parts.concepts.len();
        let concept_by_name = parts
            .concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), ConceptId(i as u32)))
            .collect();
        let lex_by_name = parts
            .lexicon
            .iter()
            .enumerate()
            .map(|(i, l)| (l.name.clone(), LexId(i as u32)))
            .collect();
        let cs_by_name = parts
            .sequences
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.clone(), CsId(i as u32)))
            .collect();

        let mut children = vec![Vec::new(); nc];
        for (i, c) in parts.concepts.iter().enumerate() {
            for p in &c.parents {
                if !children[p.index()].contains(&ConceptId(i as u32)) {
                    children[p.index()].push(ConceptId(i as u32));
                }
            }
        }

        let ancestors = (0..nc)
            .map(|i| {
                let start = ConceptId(i as u32);
                let mut out = vec![start];
                let mut seen: HashSet<ConceptId> = HashSet::from([start]);
                let mut k = 0;
                while k < out.len() {
                    for p in &parts.concepts[out[k].index()].parents {
                        if seen.insert(*p) {
                            out.push(*p);
                        }
                    }
                    k += 1;
                }
                out
            })
            .collect::<Vec<_>>();

        let mut lex_by_concept = vec![Vec::new(); nc];
        let mut morpheme_index: HashMap<(Language, Vec<String>), Vec<LexId>> = HashMap::new();
        for (i, l) in parts.lexicon.iter().enumerate() {
            let id = LexId(i as u32);
            lex_by_concept[l.concept.index()].push(id);
            morpheme_index
                .entry((l.language, l.morphemes.iter().map(|m| fold(m)).collect()))
                .or_default()
                .push(id);
        }

        let mut cs_by_owner = vec![Vec::new(); nc];
        for (i, s) in parts.sequences.iter().enumerate() {
            cs_by_owner[s.owner.index()].push(CsId(i as u32));
        }

        let mut literals: HashSet<(Language, String)> = parts
            .literals
            .iter()
            .map(|l| (l.language, fold(&l.text)))
            .collect();
        for s in &parts.sequences {
            for e in &s.elements {
                if let Filler::Literal(t) = &e.filler {
                    literals.insert((s.language, fold(t)));
                }
            }
        }

        // A concept is referenced when some element filler is it or one of
        // its ancestors.
        let fillers: HashSet<ConceptId> = parts
            .sequences
            .iter()
            .flat_map(|s| s.elements.iter())
            .filter_map(|e| match e.filler {
                Filler::Concept(c) => Some(c),
                Filler::Literal(_) => None,
            })
            .collect();
        let top_level = (0..nc)
            .map(|i| {
                parts.concepts[i].sentence_type.is_some()
                    || (!cs_by_owner[i].is_empty()
                        && !ancestors[i].iter().any(|a| fillers.contains(a)))
            })
            .collect();

        let profiles = [
            MorphProfile::from_parts(Language::Ko, parts),
            MorphProfile::from_parts(Language::En, parts),
        ];

        Index {
            concept_by_name,
            lex_by_name,
            cs_by_name,
            children,
            ancestors,
            lex_by_concept,
            cs_by_owner,
            morpheme_index,
            literals,
            top_level,
            profiles,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> NetworkParts {
        NetworkParts {
            concepts: vec![
                ConceptNode {
                    name: "thing".into(),
                    parents: vec![],
                    sentence_type: None,
                },
                ConceptNode {
                    name: "file".into(),
                    parents: vec![ConceptId(0)],
                    sentence_type: None,
                },
            ],
            lexicon: vec![LexicalItem {
                name: "file-en".into(),
                language: Language::En,
                morphemes: vec!["File".into()],
                concept: ConceptId(1),
            }],
            ..Default::default()
        }
    }

    #[test]
    fn lookup_is_case_insensitive_and_exact() {
        let net = MemoryNetwork::from_parts(tiny()).unwrap();
        assert_eq!(net.lookup_lexical(Language::En, &["file".into()]), vec![LexId(0)]);
        assert!(net.lookup_lexical(Language::Ko, &["file".into()]).is_empty());
        assert!(net.lookup_lexical(Language::En, &["files".into()]).is_empty());
    }

    #[test]
    fn ancestors_survive_cycles() {
        let mut parts = tiny();
        parts.concepts[0].parents.push(ConceptId(1));
        let net = MemoryNetwork::from_parts(parts).unwrap();
        assert_eq!(net.ancestors(ConceptId(1)), &[ConceptId(1), ConceptId(0)]);
        assert!(net.is_a(ConceptId(0), ConceptId(1)));
    }

    #[test]
    fn from_parts_rejects_dangling_and_duplicates() {
        let mut parts = tiny();
        parts.lexicon[0].concept = ConceptId(9);
        assert!(matches!(
            MemoryNetwork::from_parts(parts),
            Err(NetworkError::DanglingReference { .. })
        ));
        let mut parts = tiny();
        parts.concepts[1].name = "thing".into();
        assert!(matches!(
            MemoryNetwork::from_parts(parts),
            Err(NetworkError::DuplicateId { .. })
        ));
        assert_eq!(
            MemoryNetwork::from_parts(NetworkParts::default()),
            Err(NetworkError::NoConcepts)
        );
    }
}
