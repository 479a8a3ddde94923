//! Structural and semantic checks over a loaded network.

use std::collections::HashSet;
use std::fmt;

use super::{fold, ConceptId, CseType, CsId, Filler, MemoryNetwork};
use crate::language::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    IsaCycle,
    AsymmetricPairing,
    PairOwnerMismatch,
    EnglishNotCx,
    UnreachableFiller,
    AllOmissible,
    OmissibleCycle,
    UndeclaredLiteral,
    DefaultLanguage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn diag(kind: DiagnosticKind, message: String) -> Diagnostic {
    Diagnostic { kind, message }
}

/// Returns one diagnostic per invariant violation; empty means the network is
/// fit for translation.
pub fn validate_network(net: &MemoryNetwork) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    isa_cycles(net, &mut out);
    pairing(net, &mut out);
    elements(net, &mut out);
    omissible_cycles(net, &mut out);
    out
}

fn isa_cycles(net: &MemoryNetwork, out: &mut Vec<Diagnostic>) {
    let on_cycle: Vec<ConceptId> = net
        .concepts()
        .filter(|(id, c)| c.parents.iter().any(|p| net.is_a(*p, *id)))
        .map(|(id, _)| id)
        .collect();
    let mut reported: HashSet<ConceptId> = HashSet::new();
    for &c in &on_cycle {
        if reported.contains(&c) {
            continue;
        }
        let members: Vec<ConceptId> = on_cycle
            .iter()
            .copied()
            .filter(|o| net.is_a(*o, c) && net.is_a(c, *o))
            .collect();
        reported.extend(members.iter().copied());
        let names: Vec<&str> = members.iter().map(|m| net.concept(*m).name.as_str()).collect();
        out.push(diag(
            DiagnosticKind::IsaCycle,
            format!("IS-A cycle through {}", names.join(", ")),
        ));
    }
}

fn pairing(net: &MemoryNetwork, out: &mut Vec<Diagnostic>) {
    for (id, s) in net.sequences() {
        let paired = net.sequence(s.paired);
        if paired.paired != id {
            out.push(diag(
                DiagnosticKind::AsymmetricPairing,
                format!(
                    "asymmetric pairing: `{}` pairs with `{}` but `{}` pairs with `{}`",
                    s.name,
                    paired.name,
                    paired.name,
                    net.sequence(paired.paired).name
                ),
            ));
        } else if paired.owner != s.owner && id < s.paired {
            out.push(diag(
                DiagnosticKind::PairOwnerMismatch,
                format!(
                    "paired sequences `{}` and `{}` realize different concepts",
                    s.name, paired.name
                ),
            ));
        }
    }
}

/// Concepts from which a lexical item or a sequence of `language` can be
/// reached going down the hierarchy.
fn grounded(net: &MemoryNetwork, language: Language) -> HashSet<ConceptId> {
    let mut set = HashSet::new();
    for (id, _) in net.concepts() {
        let direct = net.lexical_of_in(id, language).next().is_some()
            || net
                .sequences_of(id)
                .iter()
                .any(|s| net.sequence(*s).language == language);
        if direct {
            set.extend(net.ancestors(id).iter().copied());
        }
    }
    set
}

fn elements(net: &MemoryNetwork, out: &mut Vec<Diagnostic>) {
    let grounded_ko = grounded(net, Language::Ko);
    let grounded_en = grounded(net, Language::En);
    let mut morphemes: HashSet<(Language, String)> = HashSet::new();
    for (_, l) in net.lexicon() {
        for m in &l.morphemes {
            morphemes.insert((l.language, fold(m)));
        }
    }
    for l in &net.parts().literals {
        morphemes.insert((l.language, fold(&l.text)));
    }

    for (_, s) in net.sequences() {
        if s.elements.iter().all(|e| e.cse_type.is_omissible()) {
            out.push(diag(
                DiagnosticKind::AllOmissible,
                format!("sequence `{}` has no compulsory element", s.name),
            ));
        }
        let grounded = match s.language {
            Language::Ko => &grounded_ko,
            Language::En => &grounded_en,
        };
        for (i, e) in s.elements.iter().enumerate() {
            if s.language == Language::En && e.cse_type != CseType::CX {
                out.push(diag(
                    DiagnosticKind::EnglishNotCx,
                    format!(
                        "English CSE must be CX: `{}` element {} is {}",
                        s.name, i, e.cse_type
                    ),
                ));
            }
            if let Some(d) = e.default_lexical {
                if net.lexical(d).language != s.language {
                    out.push(diag(
                        DiagnosticKind::DefaultLanguage,
                        format!(
                            "default `{}` of `{}` element {} is not in {}",
                            net.lexical(d).name,
                            s.name,
                            i,
                            s.language
                        ),
                    ));
                }
            }
            match &e.filler {
                Filler::Concept(c) => {
                    if !grounded.contains(c) && e.default_lexical.is_none() {
                        out.push(diag(
                            DiagnosticKind::UnreachableFiller,
                            format!(
                                "unreachable generation filler: `{}` element {} ({}) reaches no {} lexical item or sequence",
                                s.name,
                                i,
                                net.concept(*c).name,
                                s.language
                            ),
                        ));
                    }
                }
                Filler::Literal(t) => {
                    if !morphemes.contains(&(s.language, fold(t))) {
                        out.push(diag(
                            DiagnosticKind::UndeclaredLiteral,
                            format!("literal \"{t}\" in `{}` is not a declared {} morpheme", s.name, s.language),
                        ));
                    }
                }
            }
        }
    }
}

/// Cycles of sequences reachable from each other only through omissible
/// elements.
fn omissible_cycles(net: &MemoryNetwork, out: &mut Vec<Diagnostic>) {
    let n = net.parts().sequences.len();
    let edges: Vec<Vec<CsId>> = net
        .sequences()
        .map(|(_, s)| {
            let mut next = Vec::new();
            for e in s.elements.iter().filter(|e| e.cse_type.is_omissible()) {
                if let Filler::Concept(f) = e.filler {
                    for (tid, t) in net.sequences() {
                        if t.language == s.language && net.is_a(t.owner, f) && !next.contains(&tid) {
                            next.push(tid);
                        }
                    }
                }
            }
            next
        })
        .collect();

    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    let mut stack: Vec<CsId> = Vec::new();
    let mut cycles: Vec<Vec<CsId>> = Vec::new();
    fn dfs(
        v: CsId,
        edges: &[Vec<CsId>],
        color: &mut [u8],
        stack: &mut Vec<CsId>,
        cycles: &mut Vec<Vec<CsId>>,
    ) {
        color[v.index()] = 1;
        stack.push(v);
        for &w in &edges[v.index()] {
            match color[w.index()] {
                0 => dfs(w, edges, color, stack, cycles),
                1 => {
                    let start = stack.iter().position(|x| *x == w).unwrap_or(0);
                    cycles.push(stack[start..].to_vec());
                }
                _ => {}
            }
        }
        stack.pop();
        color[v.index()] = 2;
    }
    for v in 0..n {
        if color[v] == 0 {
            dfs(CsId(v as u32), &edges, &mut color, &mut stack, &mut cycles);
        }
    }
    for c in cycles {
        let names: Vec<&str> = c.iter().map(|s| net.sequence(*s).name.as_str()).collect();
        out.push(diag(
            DiagnosticKind::OmissibleCycle,
            format!("all-omissible sequence cycle: {}", names.join(" -> ")),
        ));
    }
}
