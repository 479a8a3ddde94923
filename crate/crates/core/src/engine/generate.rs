//! Target realization of an accepted analysis.
//!
//! The paired sequence of every source instance is walked in its declared
//! order with a generation prediction (GP) moving from element to element.
//! Each element collects the first unused source material whose concept
//! satisfies it; elements without source material fall back to their
//! default, are dropped when omissible, or are realized from the most
//! general lexical item under their filler.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::instance::{Fill, InstanceStatus};
use super::marker::{Binding, InstanceId, Location, MarkerKind, Owner, TargetId};
use super::trace::EventKind;
use super::{MarkerState, TargetInstance};
use crate::language::Language;
use crate::network::{ConceptId, ConceptSequence, Filler, LexId, MemoryNetwork, SentenceType};

/// Limit on nested sequences realized without source material.
const UNBOUND_DEPTH: usize = 8;

/// Morphemes of one target word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emission {
    pub language: Language,
    pub morphemes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Recognized over input words `[start, end)`.
    Input { start: usize, end: usize },
    /// Supplied on the target side with no input material.
    Default,
}

/// Language-neutral structure of a translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptTree {
    pub concept: String,
    /// Names of the Korean and English sequences, for interior nodes.
    pub pattern: Option<(String, String)>,
    pub origin: Origin,
    /// May be absent from the other language's realization.
    pub omissible: bool,
    pub children: Vec<ConceptTree>,
}

impl ConceptTree {
    fn leaf(concept: &str, origin: Origin) -> Self {
        ConceptTree {
            concept: concept.to_string(),
            pattern: None,
            origin,
            omissible: false,
            children: Vec::new(),
        }
    }

    /// Concept names in pre-order.
    pub fn concepts(&self) -> Vec<&str> {
        let mut out = vec![self.concept.as_str()];
        for c in &self.children {
            out.extend(c.concepts());
        }
        out
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        write!(f, "{:width$}{}", "", self.concept, width = depth * 2)?;
        if let Some((ko, en)) = &self.pattern {
            write!(f, " [{ko}/{en}]")?;
        }
        if self.omissible {
            f.write_str(" (omissible)")?;
        }
        if self.origin == Origin::Default {
            f.write_str(" (default)")?;
        }
        writeln!(f)?;
        for c in &self.children {
            c.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for ConceptTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Structural equality up to omission: children are paired by concept, and
/// a child present in only one tree must be marked omissible there.
pub fn isomorphic(a: &ConceptTree, b: &ConceptTree) -> bool {
    if a.concept != b.concept {
        return false;
    }
    let mut used = vec![false; b.children.len()];
    for ca in &a.children {
        let hit = b
            .children
            .iter()
            .enumerate()
            .position(|(i, cb)| !used[i] && isomorphic(ca, cb));
        match hit {
            Some(i) => used[i] = true,
            None if ca.omissible => {}
            None => return false,
        }
    }
    b.children
        .iter()
        .zip(&used)
        .all(|(cb, u)| *u || cb.omissible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generation {
    pub emissions: Vec<Emission>,
    pub tree: ConceptTree,
    pub sentence_type: Option<SentenceType>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerationError {
    #[error("no {language} realization for concept `{concept}`")]
    NoRealization { concept: String, language: Language },
}

/// Source material of one filled element.
struct SourceFill {
    concept: ConceptId,
    fill: Fill,
}

fn material(net: &MemoryNetwork, state: &MarkerState, fill: &Fill) -> Option<ConceptId> {
    match fill {
        Fill::Lexical { lex, .. } => Some(net.lexical(*lex).concept),
        Fill::Sub(i) => Some(net.sequence(state.instance(*i).cs).owner),
        Fill::Literal { .. } | Fill::Omitted => None,
    }
}

/// Whether material of `concept` may be left out of one side of the pair:
/// its element is omissible there, or one of the two has no place for it.
fn omissible_in_pair(net: &MemoryNetwork, a: &ConceptSequence, b: &ConceptSequence, concept: ConceptId) -> bool {
    let slot = |s: &ConceptSequence| {
        s.elements
            .iter()
            .find(|e| net.filler_accepts(&e.filler, concept))
            .map(|e| e.cse_type)
    };
    match (slot(a), slot(b)) {
        (Some(x), Some(y)) => x.is_omissible() || y.is_omissible(),
        _ => true,
    }
}

/// Sequence names ordered by language, so both directions agree.
fn pattern(a: &ConceptSequence, b: &ConceptSequence) -> (String, String) {
    if a.language < b.language {
        (a.name.clone(), b.name.clone())
    } else {
        (b.name.clone(), a.name.clone())
    }
}

fn sort_children(children: &mut [ConceptTree]) {
    children.sort_by(|a, b| a.concept.cmp(&b.concept));
}

impl MarkerState {
    /// Realizes the target side of the accepted instance `root`.
    pub fn generate(&mut self, net: &MemoryNetwork, root: InstanceId) -> Result<Generation, GenerationError> {
        let inst = self.instance(root);
        assert_eq!(inst.status, InstanceStatus::Accepted, "generation from an unaccepted instance");
        let owner = net.sequence(inst.cs).owner;
        let mut emissions = Vec::new();
        let tree = self.realize(net, root, &mut emissions)?;
        Ok(Generation {
            emissions,
            tree,
            sentence_type: net.sentence_type(owner),
        })
    }

    fn realize(
        &mut self,
        net: &MemoryNetwork,
        id: InstanceId,
        out: &mut Vec<Emission>,
    ) -> Result<ConceptTree, GenerationError> {
        let inst = self.instance(id).clone();
        let src = net.sequence(inst.cs);
        let tgt_id = src.paired;
        let tgt = net.sequence(tgt_id);
        let language = tgt.language;
        let tid = TargetId(self.targets.len() as u32);
        self.targets.push(TargetInstance {
            cs: tgt_id,
            source: id,
        });

        let fills: Vec<SourceFill> = inst
            .fills
            .iter()
            .filter_map(|f| {
                let f = f.as_ref()?;
                Some(SourceFill {
                    concept: material(net, self, f)?,
                    fill: f.clone(),
                })
            })
            .collect();
        let mut used = vec![false; fills.len()];
        let mut children = Vec::new();

        let gp = |element: usize| Location::Element {
            cs: tgt_id,
            element,
            owner: Owner::Target(tid),
        };
        if !tgt.elements.is_empty() {
            self.place_traced(EventKind::Predict, MarkerKind::GP, gp(0), Some(Binding::Instance(id)));
        }
        for (j, te) in tgt.elements.iter().enumerate() {
            let loc = gp(j);
            match &te.filler {
                Filler::Literal(t) => {
                    out.push(Emission {
                        language,
                        morphemes: vec![t.clone()],
                    });
                    self.event(EventKind::Generate, Some(MarkerKind::GP), loc.clone(), Some(Binding::Literal));
                }
                Filler::Concept(f) => {
                    let hit = fills
                        .iter()
                        .enumerate()
                        .position(|(k, s)| !used[k] && net.is_a(s.concept, *f));
                    if let Some(k) = hit {
                        used[k] = true;
                        let sf = &fills[k];
                        let mut child = match &sf.fill {
                            Fill::Lexical { lex, token } => {
                                let binding = Binding::Token(*token);
                                let origin = Origin::Input {
                                    start: *token,
                                    end: token + 1,
                                };
                                match net.lexical_of_in(sf.concept, language).next() {
                                    Some(t) => {
                                        self.event(
                                            EventKind::Collide,
                                            Some(MarkerKind::GA),
                                            loc.clone(),
                                            Some(binding.clone()),
                                        );
                                        self.event(
                                            EventKind::Generate,
                                            Some(MarkerKind::GP),
                                            loc.clone(),
                                            Some(binding),
                                        );
                                        out.push(Emission {
                                            language,
                                            morphemes: net.lexical(t).morphemes.clone(),
                                        });
                                        ConceptTree::leaf(&net.concept(net.lexical(*lex).concept).name, origin)
                                    }
                                    None => {
                                        let mut t = self.realize_unbound(net, sf.concept, language, &loc, 0, out)?;
                                        t.origin = origin;
                                        t
                                    }
                                }
                            }
                            Fill::Sub(i) => {
                                self.event(
                                    EventKind::Collide,
                                    Some(MarkerKind::GA),
                                    loc.clone(),
                                    Some(Binding::Instance(*i)),
                                );
                                self.realize(net, *i, out)?
                            }
                            Fill::Literal { .. } | Fill::Omitted => unreachable!(),
                        };
                        child.omissible = omissible_in_pair(net, src, tgt, sf.concept);
                        children.push(child);
                    } else if let Some(d) = te.default_lexical {
                        self.event(EventKind::Generate, Some(MarkerKind::GP), loc.clone(), Some(Binding::Default(d)));
                        out.push(Emission {
                            language,
                            morphemes: net.lexical(d).morphemes.clone(),
                        });
                        let concept = net.lexical(d).concept;
                        let mut child = ConceptTree::leaf(&net.concept(concept).name, Origin::Default);
                        child.omissible = omissible_in_pair(net, src, tgt, concept);
                        children.push(child);
                    } else if te.cse_type.is_omissible() {
                        self.event(EventKind::Withdraw, Some(MarkerKind::GP), loc.clone(), None);
                    } else {
                        let mut child = self.realize_unbound(net, *f, language, &loc, 0, out)?;
                        child.omissible = omissible_in_pair(net, src, tgt, *f);
                        children.push(child);
                    }
                }
            }
            self.remove_marker(MarkerKind::GP, &loc);
            if j + 1 < tgt.elements.len() {
                self.place_traced(EventKind::Predict, MarkerKind::GP, gp(j + 1), Some(Binding::Instance(id)));
            }
        }

        // Source material with no place in the target still belongs to the
        // analysis.
        for (k, sf) in fills.iter().enumerate() {
            if used[k] {
                continue;
            }
            let mut child = self.analysis_tree(net, &sf.fill);
            child.omissible = true;
            children.push(child);
        }
        sort_children(&mut children);

        Ok(ConceptTree {
            concept: net.concept(src.owner).name.clone(),
            pattern: Some(pattern(src, tgt)),
            origin: Origin::Input {
                start: inst.start,
                end: inst.end,
            },
            omissible: false,
            children,
        })
    }

    /// Tree of source material that is not generated.
    fn analysis_tree(&self, net: &MemoryNetwork, fill: &Fill) -> ConceptTree {
        match fill {
            Fill::Lexical { lex, token } => ConceptTree::leaf(
                &net.concept(net.lexical(*lex).concept).name,
                Origin::Input {
                    start: *token,
                    end: token + 1,
                },
            ),
            Fill::Sub(i) => {
                let inst = self.instance(*i);
                let src = net.sequence(inst.cs);
                let tgt = net.sequence(src.paired);
                let mut children: Vec<ConceptTree> = inst
                    .fills
                    .iter()
                    .flatten()
                    .filter(|f| material(net, self, f).is_some())
                    .map(|f| {
                        let mut c = self.analysis_tree(net, f);
                        c.omissible = omissible_in_pair(net, src, tgt, material(net, self, f).unwrap());
                        c
                    })
                    .collect();
                sort_children(&mut children);
                ConceptTree {
                    concept: net.concept(src.owner).name.clone(),
                    pattern: Some(pattern(src, tgt)),
                    origin: Origin::Input {
                        start: inst.start,
                        end: inst.end,
                    },
                    omissible: false,
                    children,
                }
            }
            Fill::Literal { .. } | Fill::Omitted => unreachable!("no material"),
        }
    }

    /// Realizes a compulsory element with no source material: the first
    /// lexical item found breadth first under `concept`, or failing that the
    /// first sequence of a concept under it.
    fn realize_unbound(
        &mut self,
        net: &MemoryNetwork,
        concept: ConceptId,
        language: Language,
        loc: &Location,
        depth: usize,
        out: &mut Vec<Emission>,
    ) -> Result<ConceptTree, GenerationError> {
        let fail = || GenerationError::NoRealization {
            concept: net.concept(concept).name.clone(),
            language,
        };
        if depth > UNBOUND_DEPTH {
            return Err(fail());
        }
        let order = descendants(net, concept);
        if let Some((c, lex)) = order
            .iter()
            .find_map(|c| net.lexical_of_in(*c, language).next().map(|l| (*c, l)))
        {
            self.emit_default(loc, lex, language, net, out);
            return Ok(ConceptTree::leaf(&net.concept(c).name, Origin::Default));
        }
        let cs = order.iter().find_map(|c| {
            net.sequences_of(*c)
                .iter()
                .copied()
                .find(|s| net.sequence(*s).language == language)
        });
        let Some(cs_id) = cs else {
            return Err(fail());
        };
        let cs = net.sequence(cs_id);
        let mut children = Vec::new();
        for e in &cs.elements {
            match &e.filler {
                Filler::Literal(t) => out.push(Emission {
                    language,
                    morphemes: vec![t.clone()],
                }),
                Filler::Concept(f) => {
                    if let Some(d) = e.default_lexical {
                        self.emit_default(loc, d, language, net, out);
                        children.push(ConceptTree::leaf(&net.concept(net.lexical(d).concept).name, Origin::Default));
                    } else if !e.cse_type.is_omissible() {
                        children.push(self.realize_unbound(net, *f, language, loc, depth + 1, out)?);
                    }
                }
            }
        }
        sort_children(&mut children);
        let paired = net.sequence(cs.paired);
        Ok(ConceptTree {
            concept: net.concept(cs.owner).name.clone(),
            pattern: Some(pattern(cs, paired)),
            origin: Origin::Default,
            omissible: false,
            children,
        })
    }

    fn emit_default(&mut self, loc: &Location, lex: LexId, language: Language, net: &MemoryNetwork, out: &mut Vec<Emission>) {
        self.event(EventKind::Generate, Some(MarkerKind::GP), loc.clone(), Some(Binding::Default(lex)));
        out.push(Emission {
            language,
            morphemes: net.lexical(lex).morphemes.clone(),
        });
    }
}

/// `concept` and its descendants, breadth first in declaration order.
fn descendants(net: &MemoryNetwork, concept: ConceptId) -> Vec<ConceptId> {
    let mut seen = HashSet::new();
    let mut order = vec![concept];
    seen.insert(concept);
    let mut i = 0;
    while i < order.len() {
        for &c in net.children(order[i]) {
            if seen.insert(c) {
                order.push(c);
            }
        }
        i += 1;
    }
    order
}
