use std::fmt;

use crate::language::Language;
use crate::network::{ConceptId, CsId, LexId, MemoryNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceId(pub u32);

impl InstanceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Target-side sequence instance created while generating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkerKind {
    /// Analysis activation.
    AA,
    /// Analysis prediction.
    AP,
    /// Generation activation.
    GA,
    /// Generation prediction.
    GP,
}

impl fmt::Display for MarkerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkerKind::AA => "AA",
            MarkerKind::AP => "AP",
            MarkerKind::GA => "GA",
            MarkerKind::GP => "GP",
        })
    }
}

/// Which side of the network an element location belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    /// Standing initial prediction, shared by every start position.
    Initial,
    Source(InstanceId),
    Target(TargetId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    Lexical(LexId),
    Literal { language: Language, text: String },
    Concept(ConceptId),
    Element { cs: CsId, element: usize, owner: Owner },
    Sequence { cs: CsId, owner: Owner },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binding {
    /// Input word, 0-based.
    Token(usize),
    Instance(InstanceId),
    /// Generated from an element's declared default.
    Default(LexId),
    /// Generated from the element itself (a literal) with no source material.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marker {
    pub kind: MarkerKind,
    pub location: Location,
    pub binding: Option<Binding>,
    pub session: u64,
}

impl Location {
    pub fn render(&self, net: &MemoryNetwork) -> String {
        let owner = |o: &Owner| match o {
            Owner::Initial => String::new(),
            Owner::Source(i) => format!("@s{}", i.0),
            Owner::Target(t) => format!("@t{}", t.0),
        };
        match self {
            Location::Lexical(l) => format!("lex:{}", net.lexical(*l).name),
            Location::Literal { language, text } => format!("lit:{language}:\"{text}\""),
            Location::Concept(c) => format!("cn:{}", net.concept(*c).name),
            Location::Element { cs, element, owner: o } => {
                let seq = net.sequence(*cs);
                format!(
                    "cse:{}[{}]{}{}",
                    seq.name,
                    element,
                    seq.elements[*element].cse_type,
                    owner(o)
                )
            }
            Location::Sequence { cs, owner: o } => format!("cs:{}{}", net.sequence(*cs).name, owner(o)),
        }
    }
}

impl Binding {
    pub fn render(&self, net: &MemoryNetwork) -> String {
        match self {
            Binding::Token(t) => format!("tok{}", t + 1),
            Binding::Instance(i) => format!("s{}", i.0),
            Binding::Default(l) => format!("default:{}", net.lexical(*l).name),
            Binding::Literal => "literal".to_string(),
        }
    }
}
