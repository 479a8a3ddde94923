//! Bidirectional morphology: segmentation of surface words into morpheme
//! sequences and realization of morpheme sequences as surface words.
//!
//! Both directions are driven by the same tables: the root inventory (first
//! morphemes of lexical items plus declared literals), the affix table, the
//! affix adjacency table and the irregular boundary rules. A boundary between
//! the stem built so far and the next affix is rewritten by the rule whose
//! root class is the longest suffix of the stem; without such a rule the two
//! are joined with the language's morpheme joiner.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::language::Language;
use crate::network::{fold, Filler, NetworkParts};

/// Upper bound on affixes after a root, for both analysis and enumeration.
const MAX_AFFIXES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Root,
    Suffix,
    CaseMarker,
    VerbEnding,
    PrefinalEnding,
    Plural,
    Tense,
}

impl Role {
    pub fn keyword(self) -> &'static str {
        match self {
            Role::Root => "root",
            Role::Suffix => "suffix",
            Role::CaseMarker => "case-marker",
            Role::VerbEnding => "verb-ending",
            Role::PrefinalEnding => "prefinal-ending",
            Role::Plural => "plural",
            Role::Tense => "tense",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "root" => Role::Root,
            "suffix" => Role::Suffix,
            "case-marker" => Role::CaseMarker,
            "verb-ending" => Role::VerbEnding,
            "prefinal-ending" => Role::PrefinalEnding,
            "plural" => Role::Plural,
            "tense" => Role::Tense,
            other => return Err(format!("unknown morpheme role `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affix {
    pub language: Language,
    pub morpheme: String,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    RegularConcat,
    Irregular,
}

/// A boundary rewrite: a stem ending in `root_class` followed by `affix` is
/// spelled by replacing the class with `surface`. Declared rules are always
/// irregular; regular concatenation is synthesized by [`MorphProfile::rule_for`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphRule {
    pub language: Language,
    pub root_class: String,
    pub affix: String,
    pub surface: String,
    pub kind: RuleKind,
}

/// `to` may directly follow `from` inside one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub language: Language,
    pub from: Role,
    pub to: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morpheme {
    pub text: String,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphemeSequence {
    pub language: Language,
    pub units: Vec<Morpheme>,
}

impl MorphemeSequence {
    pub fn root(&self) -> &str {
        &self.units[0].text
    }

    pub fn texts(&self) -> Vec<String> {
        self.units.iter().map(|u| u.text.clone()).collect()
    }
}

impl fmt::Display for MorphemeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, u) in self.units.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}({})", u.text, u.role)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphError {
    #[error("unknown morpheme `{0}`")]
    UnknownMorpheme(String),
    #[error("morpheme sequence must start with exactly one root")]
    BadRootPlacement,
    #[error("empty morpheme sequence")]
    EmptySequence,
    #[error("empty sentence")]
    EmptySentence,
}

/// Morphology tables of one language, derived from a network.
#[derive(Debug, Clone)]
pub struct MorphProfile {
    language: Language,
    /// folded root -> canonical spelling
    roots: HashMap<String, String>,
    /// folded root with up to `max_class` trailing chars removed -> canonical roots
    root_prefixes: HashMap<String, Vec<String>>,
    /// folded affix -> (canonical spelling, role), declaration order kept in `affix_order`
    affixes: HashMap<String, (String, Role)>,
    affix_order: Vec<String>,
    rules: Vec<MorphRule>,
    connections: HashSet<(Role, Role)>,
    max_class: usize,
}

fn strip_chars(s: &str, n: usize) -> &str {
    let count = s.chars().count();
    if n >= count {
        return "";
    }
    let cut = s.char_indices().nth(count - n).map(|(i, _)| i).unwrap_or(s.len());
    &s[..cut]
}

impl MorphProfile {
    pub fn from_parts(language: Language, parts: &NetworkParts) -> Self {
        let mut roots = HashMap::new();
        let root_iter = parts
            .lexicon
            .iter()
            .filter(|l| l.language == language)
            .filter_map(|l| l.morphemes.first())
            .chain(
                parts
                    .literals
                    .iter()
                    .filter(|l| l.language == language)
                    .map(|l| &l.text),
            );
        for r in root_iter {
            roots.entry(fold(r)).or_insert_with(|| r.clone());
        }
        for s in parts.sequences.iter().filter(|s| s.language == language) {
            for e in &s.elements {
                if let Filler::Literal(t) = &e.filler {
                    roots.entry(fold(t)).or_insert_with(|| t.clone());
                }
            }
        }

        let rules: Vec<MorphRule> = parts
            .rules
            .iter()
            .filter(|r| r.language == language)
            .cloned()
            .collect();
        let max_class = rules
            .iter()
            .map(|r| r.root_class.chars().count())
            .max()
            .unwrap_or(0);

        let mut root_prefixes: HashMap<String, Vec<String>> = HashMap::new();
        let mut canon: Vec<(&String, &String)> = roots.iter().collect();
        canon.sort();
        for (folded, original) in canon {
            for k in 0..=max_class {
                let key = strip_chars(folded, k);
                if key.is_empty() {
                    break;
                }
                let entry = root_prefixes.entry(key.to_string()).or_default();
                if !entry.contains(original) {
                    entry.push(original.clone());
                }
            }
        }

        let mut affixes = HashMap::new();
        let mut affix_order = Vec::new();
        for a in parts.affixes.iter().filter(|a| a.language == language) {
            let key = fold(&a.morpheme);
            if let std::collections::hash_map::Entry::Vacant(v) = affixes.entry(key.clone()) {
                affix_order.push(key);
                v.insert((a.morpheme.clone(), a.role));
            }
        }

        let connections = parts
            .connections
            .iter()
            .filter(|c| c.language == language)
            .map(|c| (c.from, c.to))
            .collect();

        MorphProfile {
            language,
            roots,
            root_prefixes,
            affixes,
            affix_order,
            rules,
            connections,
            max_class,
        }
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn is_root(&self, morpheme: &str) -> bool {
        self.roots.contains_key(&fold(morpheme))
    }

    pub fn affix_role(&self, morpheme: &str) -> Option<Role> {
        self.affixes.get(&fold(morpheme)).map(|(_, r)| *r)
    }

    /// Whether `to` may follow `from`. An empty adjacency table allows any order.
    pub fn may_follow(&self, from: Role, to: Role) -> bool {
        self.connections.is_empty() || self.connections.contains(&(from, to))
    }

    /// The rule applied at the boundary between `stem` and `affix`.
    pub fn rule_for(&self, stem: &str, affix: &str) -> MorphRule {
        let stem_f = fold(stem);
        let affix_f = fold(affix);
        self.rules
            .iter()
            .filter(|r| fold(&r.affix) == affix_f && stem_f.ends_with(&fold(&r.root_class)))
            .max_by_key(|r| r.root_class.chars().count())
            .cloned()
            .unwrap_or_else(|| MorphRule {
                language: self.language,
                root_class: String::new(),
                affix: affix.to_string(),
                surface: format!("{}{}", self.language.morpheme_joiner(), affix),
                kind: RuleKind::RegularConcat,
            })
    }

    fn attach(&self, stem: &str, affix: &str) -> String {
        let rule = self.rule_for(stem, affix);
        let base = strip_chars(stem, rule.root_class.chars().count());
        format!("{base}{}", rule.surface)
    }

    /// Assigns roles to a lexical item's morphemes: the first is the root,
    /// the rest take their role from the affix table.
    pub fn sequence_for(&self, morphemes: &[String]) -> Result<MorphemeSequence, MorphError> {
        let (root, rest) = morphemes.split_first().ok_or(MorphError::EmptySequence)?;
        let mut units = vec![Morpheme {
            text: root.clone(),
            role: Role::Root,
        }];
        for m in rest {
            let role = self
                .affix_role(m)
                .ok_or_else(|| MorphError::UnknownMorpheme(m.clone()))?;
            units.push(Morpheme {
                text: m.clone(),
                role,
            });
        }
        Ok(MorphemeSequence {
            language: self.language,
            units,
        })
    }

    /// Realizes a morpheme sequence as a surface word.
    pub fn generate_word(&self, seq: &MorphemeSequence) -> Result<String, MorphError> {
        let (root, affixes) = seq.units.split_first().ok_or(MorphError::EmptySequence)?;
        if root.role != Role::Root || affixes.iter().any(|u| u.role == Role::Root) {
            return Err(MorphError::BadRootPlacement);
        }
        if !self.is_root(&root.text) {
            return Err(MorphError::UnknownMorpheme(root.text.clone()));
        }
        let mut stem = root.text.clone();
        for a in affixes {
            if self.affix_role(&a.text).is_none() {
                return Err(MorphError::UnknownMorpheme(a.text.clone()));
            }
            stem = self.attach(&stem, &a.text);
        }
        Ok(stem)
    }

    /// All analyses of `word`, longest root first. Every returned sequence
    /// regenerates to `word` (compared case-insensitively); an empty result
    /// marks an unknown word.
    ///
    /// The search walks the lattice of word prefixes: a state is the surface
    /// generated so far, which must agree with the word except for at most the
    /// longest rule class at its end, since the next boundary rule may still
    /// rewrite that tail.
    pub fn segment(&self, word: &str) -> Vec<MorphemeSequence> {
        let target = fold(word);
        if target.is_empty() {
            return Vec::new();
        }
        let mut found: Vec<MorphemeSequence> = Vec::new();
        let mut seen = HashSet::new();
        let mut candidates: Vec<&String> = Vec::new();
        for (end, _) in target.char_indices().skip(1).chain([(target.len(), ' ')]) {
            if let Some(roots) = self.root_prefixes.get(&target[..end]) {
                for r in roots {
                    if !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
        for root in candidates {
            let mut units = vec![Morpheme {
                text: root.clone(),
                role: Role::Root,
            }];
            self.extend(&target, fold(root), &mut units, &mut found, &mut seen);
        }
        found.retain(|seq| {
            self.generate_word(seq)
                .map(|s| fold(&s) == target)
                .unwrap_or(false)
        });
        found.sort_by(|a, b| {
            b.root()
                .chars()
                .count()
                .cmp(&a.root().chars().count())
                .then(a.units.len().cmp(&b.units.len()))
                .then(a.cmp(b))
        });
        found
    }

    fn viable(&self, target: &str, surface: &str) -> bool {
        target.starts_with(strip_chars(surface, self.max_class))
            && surface.chars().count() <= target.chars().count() + self.max_class
    }

    fn extend(
        &self,
        target: &str,
        surface: String,
        units: &mut Vec<Morpheme>,
        found: &mut Vec<MorphemeSequence>,
        seen: &mut HashSet<Vec<Morpheme>>,
    ) {
        if !self.viable(target, &surface) {
            return;
        }
        if surface == target && seen.insert(units.clone()) {
            found.push(MorphemeSequence {
                language: self.language,
                units: units.clone(),
            });
        }
        if units.len() > MAX_AFFIXES {
            return;
        }
        let last = units.last().map(|u| u.role).unwrap_or(Role::Root);
        for key in &self.affix_order {
            let (text, role) = &self.affixes[key];
            if !self.may_follow(last, *role) {
                continue;
            }
            let next = fold(&self.attach(&surface, text));
            units.push(Morpheme {
                text: text.clone(),
                role: *role,
            });
            self.extend(target, next, units, found, seen);
            units.pop();
        }
    }

    /// Every root followed by every affix chain the adjacency table allows,
    /// without repeating an affix, up to `max_affixes` affixes.
    pub fn grammatical_sequences(&self, max_affixes: usize) -> Vec<MorphemeSequence> {
        let mut roots: Vec<&String> = self.roots.values().collect();
        roots.sort();
        let mut out = Vec::new();
        for root in roots {
            let mut units = vec![Morpheme {
                text: root.clone(),
                role: Role::Root,
            }];
            self.chains(&mut units, max_affixes, &mut out);
        }
        out
    }

    fn chains(&self, units: &mut Vec<Morpheme>, left: usize, out: &mut Vec<MorphemeSequence>) {
        out.push(MorphemeSequence {
            language: self.language,
            units: units.clone(),
        });
        if left == 0 {
            return;
        }
        let last = units.last().map(|u| u.role).unwrap_or(Role::Root);
        for key in &self.affix_order {
            let (text, role) = &self.affixes[key];
            if !self.may_follow(last, *role) || units.iter().any(|u| &u.text == text) {
                continue;
            }
            units.push(Morpheme {
                text: text.clone(),
                role: *role,
            });
            self.chains(units, left - 1, out);
            units.pop();
        }
    }
}

/// One whitespace-separated word of an input sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub surface: String,
    pub folded: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedSentence {
    pub words: Vec<Word>,
    /// Detached terminal punctuation, if any.
    pub terminal: Option<char>,
}

/// Splits a sentence on whitespace and detaches terminal `.`, `?` or `!`.
pub fn tokenize(sentence: &str) -> Result<TokenizedSentence, MorphError> {
    let trimmed = sentence.trim_end();
    let mut terminal = None;
    let mut body = trimmed;
    while let Some(c) = body.chars().last().filter(|c| matches!(c, '.' | '?' | '!')) {
        terminal.get_or_insert(c);
        body = body[..body.len() - c.len_utf8()].trim_end();
    }
    let words: Vec<Word> = body
        .split_whitespace()
        .map(|w| Word {
            surface: w.to_string(),
            folded: fold(w),
        })
        .collect();
    if words.is_empty() {
        return Err(MorphError::EmptySentence);
    }
    Ok(TokenizedSentence { words, terminal })
}
