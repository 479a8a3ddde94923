use std::fmt::Write;

use super::{Filler, MemoryNetwork};

pub(super) fn to_source(net: &MemoryNetwork) -> String {
    let p = net.parts();
    let mut out = String::new();
    let cname = |id: super::ConceptId| net.concept(id).name.as_str();

    for c in &p.concepts {
        out.push_str("concept ");
        out.push_str(&c.name);
        if !c.parents.is_empty() {
            let parents: Vec<&str> = c.parents.iter().map(|id| cname(*id)).collect();
            let _ = write!(out, " isa {}", parents.join(","));
        }
        if let Some(t) = c.sentence_type {
            let _ = write!(out, " sentence-type {}", t.keyword());
        }
        out.push('\n');
    }
    for l in &p.literals {
        let _ = writeln!(out, "literal {} {}", l.language, l.text);
    }
    for a in &p.affixes {
        let _ = writeln!(out, "affix {} {} role {}", a.language, a.morpheme, a.role);
    }
    for c in &p.connections {
        let _ = writeln!(out, "connect {} {} -> {}", c.language, c.from, c.to);
    }
    for r in &p.rules {
        let _ = writeln!(
            out,
            "morphrule {} {}+{} -> {}",
            r.language, r.root_class, r.affix, r.surface
        );
    }
    for l in &p.lexicon {
        let _ = writeln!(
            out,
            "lex {} {} {} isa {}",
            l.name,
            l.language,
            l.morphemes.join("+"),
            cname(l.concept)
        );
    }
    for s in &p.sequences {
        let _ = write!(
            out,
            "cs {} {} of {} pair {} :",
            s.name,
            s.language,
            cname(s.owner),
            net.sequence(s.paired).name
        );
        for e in &s.elements {
            match &e.filler {
                Filler::Concept(c) => {
                    let _ = write!(out, " {}({})", cname(*c), e.cse_type);
                }
                Filler::Literal(t) => {
                    let _ = write!(out, " \"{t}\"({})", e.cse_type);
                }
            }
            if let Some(d) = e.default_lexical {
                let _ = write!(out, "={}", net.lexical(d).name);
            }
        }
        out.push('\n');
    }
    out
}
