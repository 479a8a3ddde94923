//! Loader for the line-oriented network file format.
//!
//! ```text
//! concept <id> [isa <parent>,...] [sentence-type question|statement|none]
//! lex <id> <ko|en> <morpheme>[+<morpheme>...] isa <concept>
//! cs <id> <ko|en> of <concept> pair <cs> : <element> ...
//! literal <ko|en> <morpheme>
//! affix <ko|en> <morpheme> role <role>
//! morphrule <ko|en> <root-class>+<affix> -> <surface>
//! connect <ko|en> <role> -> <role>
//! ```
//!
//! An element is `<concept>(TYPE)` or `"<literal>"(TYPE)`, optionally
//! followed by `=<lex-id>`. References may point forward.

use std::collections::HashMap;

use super::{
    ConceptId, ConceptNode, ConceptSequence, ConceptSequenceElement, CseType, CsId, Filler, LexId,
    LexicalItem, LiteralDecl, MemoryNetwork, NetworkError, NetworkParts, SentenceType,
};
use crate::language::Language;
use crate::morphology::{Affix, Connection, MorphRule, Role, RuleKind};

#[derive(Debug, Clone)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut in_quote = false;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        if c == '"' {
            in_quote = !in_quote;
        }
        if c.is_whitespace() && !in_quote {
            if let Some((b, column)) = start.take() {
                out.push(Tok {
                    text: &line[b..byte],
                    column: column + 1,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, column)) = start {
        out.push(Tok {
            text: &line[b..],
            column: column + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

struct Cursor<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> NetworkError {
        NetworkError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.column).unwrap_or(self.end_column)
    }

    fn next(&mut self, what: &str) -> Result<Tok<'a>, NetworkError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), NetworkError> {
        let col = self.column();
        let t = self.next(&format!("`{kw}`"))?;
        if t.text != kw {
            return Err(self.err(col, format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn peek_is(&self, kw: &str) -> bool {
        self.toks.get(self.pos).map(|t| t.text == kw).unwrap_or(false)
    }

    fn id(&mut self, what: &str) -> Result<Tok<'a>, NetworkError> {
        let t = self.next(what)?;
        if !valid_id(t.text) {
            return Err(self.err(t.column, format!("invalid {what} `{}`", t.text)));
        }
        Ok(t)
    }

    fn parsed<T: std::str::FromStr<Err = String>>(&mut self, what: &str) -> Result<T, NetworkError> {
        let t = self.next(what)?;
        t.text.parse().map_err(|e: String| self.err(t.column, e))
    }

    fn done(&self) -> Result<(), NetworkError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.err(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s != ":" && !s.contains(['(', ')', ',', '"', '=', '+'])
}

struct Named {
    name: String,
    line: usize,
}

struct RawConcept {
    at: Named,
    parents: Vec<(String, usize)>,
    sentence_type: Option<SentenceType>,
}

struct RawLex {
    at: Named,
    language: Language,
    morphemes: Vec<String>,
    concept: (String, usize),
}

struct RawElement {
    filler: RawFiller,
    cse_type: CseType,
    default: Option<(String, usize)>,
}

enum RawFiller {
    Concept(String, usize),
    Literal(String),
}

struct RawCs {
    at: Named,
    language: Language,
    owner: (String, usize),
    pair: (String, usize),
    elements: Vec<RawElement>,
}

#[derive(Default)]
struct Raw {
    concepts: Vec<RawConcept>,
    lexicon: Vec<RawLex>,
    sequences: Vec<RawCs>,
    literals: Vec<LiteralDecl>,
    affixes: Vec<Affix>,
    rules: Vec<MorphRule>,
    connections: Vec<Connection>,
}

fn parse_element(c: &Cursor<'_>, tok: &Tok<'_>) -> Result<RawElement, NetworkError> {
    let text = tok.text;
    let (filler, rest) = if let Some(body) = text.strip_prefix('"') {
        let close = body
            .find('"')
            .ok_or_else(|| c.err(tok.column, "unterminated literal"))?;
        let lit = &body[..close];
        if lit.is_empty() || lit.contains(char::is_whitespace) {
            return Err(c.err(tok.column, "literal must be a single non-empty morpheme"));
        }
        (RawFiller::Literal(lit.to_string()), &body[close + 1..])
    } else {
        let open = text
            .find('(')
            .ok_or_else(|| c.err(tok.column, format!("element `{text}` lacks a (TYPE)")))?;
        let id = &text[..open];
        if !valid_id(id) {
            return Err(c.err(tok.column, format!("invalid concept id `{id}`")));
        }
        (RawFiller::Concept(id.to_string(), tok.column), &text[open..])
    };
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.find(')').map(|i| (&r[..i], &r[i + 1..])))
        .ok_or_else(|| c.err(tok.column, format!("element `{text}` lacks a (TYPE)")))?;
    let cse_type: CseType = inner.0.parse().map_err(|e: String| c.err(tok.column, e))?;
    let default = match inner.1 {
        "" => None,
        d => {
            let id = d
                .strip_prefix('=')
                .filter(|id| valid_id(id))
                .ok_or_else(|| c.err(tok.column, format!("bad default suffix `{d}`")))?;
            Some((id.to_string(), tok.column))
        }
    };
    Ok(RawElement {
        filler,
        cse_type,
        default,
    })
}

fn parse_line(raw: &mut Raw, mut c: Cursor<'_>) -> Result<(), NetworkError> {
    let head = c.next("declaration")?;
    match head.text {
        "concept" => {
            let id = c.id("concept id")?;
            let mut parents = Vec::new();
            let mut sentence_type = None;
            while c.pos < c.toks.len() {
                if c.peek_is("isa") && parents.is_empty() {
                    c.pos += 1;
                    let list = c.next("parent list")?;
                    for p in list.text.split(',') {
                        if !valid_id(p) {
                            return Err(c.err(list.column, format!("invalid parent id `{p}`")));
                        }
                        parents.push((p.to_string(), list.column));
                    }
                } else if c.peek_is("sentence-type") && sentence_type.is_none() {
                    c.pos += 1;
                    sentence_type = Some(c.parsed("sentence type")?);
                } else {
                    c.done()?;
                }
            }
            raw.concepts.push(RawConcept {
                at: Named {
                    name: id.text.to_string(),
                    line: c.line,
                },
                parents,
                sentence_type,
            });
        }
        "lex" => {
            let id = c.id("lexical id")?;
            let language = c.parsed("language")?;
            let form = c.next("morphemes")?;
            let morphemes: Vec<String> = form.text.split('+').map(str::to_string).collect();
            if morphemes.iter().any(String::is_empty) {
                return Err(c.err(form.column, "empty morpheme"));
            }
            c.keyword("isa")?;
            let concept = c.id("concept id")?;
            c.done()?;
            raw.lexicon.push(RawLex {
                at: Named {
                    name: id.text.to_string(),
                    line: c.line,
                },
                language,
                morphemes,
                concept: (concept.text.to_string(), concept.column),
            });
        }
        "cs" => {
            let id = c.id("sequence id")?;
            let language = c.parsed("language")?;
            c.keyword("of")?;
            let owner = c.id("concept id")?;
            c.keyword("pair")?;
            let pair = c.id("sequence id")?;
            c.keyword(":")?;
            let mut elements = Vec::new();
            while c.pos < c.toks.len() {
                let t = c.next("element")?;
                elements.push(parse_element(&c, &t)?);
            }
            if elements.is_empty() {
                return Err(c.err(c.end_column, "sequence has no elements"));
            }
            raw.sequences.push(RawCs {
                at: Named {
                    name: id.text.to_string(),
                    line: c.line,
                },
                language,
                owner: (owner.text.to_string(), owner.column),
                pair: (pair.text.to_string(), pair.column),
                elements,
            });
        }
        "literal" => {
            let language = c.parsed("language")?;
            let text = c.id("morpheme")?;
            c.done()?;
            raw.literals.push(LiteralDecl {
                language,
                text: text.text.to_string(),
            });
        }
        "affix" => {
            let language = c.parsed("language")?;
            let morpheme = c.id("morpheme")?;
            c.keyword("role")?;
            let role: Role = c.parsed("role")?;
            if role == Role::Root {
                return Err(c.err(c.end_column, "an affix cannot have role root"));
            }
            c.done()?;
            raw.affixes.push(Affix {
                language,
                morpheme: morpheme.text.to_string(),
                role,
            });
        }
        "morphrule" => {
            let language = c.parsed("language")?;
            let pat = c.next("<root-class>+<affix>")?;
            let (class, affix) = pat
                .text
                .split_once('+')
                .filter(|(_, a)| !a.is_empty())
                .ok_or_else(|| c.err(pat.column, "expected <root-class>+<affix>"))?;
            c.keyword("->")?;
            let surface = c.next("surface fragment")?;
            c.done()?;
            raw.rules.push(MorphRule {
                language,
                root_class: class.to_string(),
                affix: affix.to_string(),
                surface: surface.text.to_string(),
                kind: RuleKind::Irregular,
            });
        }
        "connect" => {
            let language = c.parsed("language")?;
            let from = c.parsed("role")?;
            c.keyword("->")?;
            let to = c.parsed("role")?;
            c.done()?;
            raw.connections.push(Connection { language, from, to });
        }
        other => {
            return Err(c.err(head.column, format!("unknown declaration `{other}`")));
        }
    }
    Ok(())
}

fn name_table(kind: &'static str, names: &[&Named]) -> Result<HashMap<String, u32>, NetworkError> {
    let mut table = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if table.insert(n.name.clone(), i as u32).is_some() {
            return Err(NetworkError::DuplicateId {
                line: Some(n.line),
                kind,
                id: n.name.clone(),
            });
        }
    }
    Ok(table)
}

fn resolve(
    table: &HashMap<String, u32>,
    kind: &'static str,
    (name, _col): &(String, usize),
    line: usize,
) -> Result<u32, NetworkError> {
    table
        .get(name)
        .copied()
        .ok_or_else(|| NetworkError::DanglingReference {
            line: Some(line),
            kind,
            id: name.clone(),
        })
}

/// Parses, resolves and indexes a network file.
pub fn load_network(source: &str) -> Result<MemoryNetwork, NetworkError> {
    let mut raw = Raw::default();
    for (i, line) in source.lines().enumerate() {
        let body = strip_comment(line);
        let toks = tokens(body);
        if toks.is_empty() {
            continue;
        }
        let cursor = Cursor {
            line: i + 1,
            toks,
            pos: 0,
            end_column: body.chars().count() + 1,
        };
        parse_line(&mut raw, cursor)?;
    }
    if raw.concepts.is_empty() {
        return Err(NetworkError::NoConcepts);
    }

    let concepts = name_table("concept", &raw.concepts.iter().map(|c| &c.at).collect::<Vec<_>>())?;
    let lexes = name_table("lexical", &raw.lexicon.iter().map(|l| &l.at).collect::<Vec<_>>())?;
    let seqs = name_table("sequence", &raw.sequences.iter().map(|s| &s.at).collect::<Vec<_>>())?;

    let mut parts = NetworkParts {
        literals: raw.literals,
        affixes: raw.affixes,
        rules: raw.rules,
        connections: raw.connections,
        ..Default::default()
    };
    for c in raw.concepts {
        let parents = c
            .parents
            .iter()
            .map(|p| resolve(&concepts, "concept", p, c.at.line).map(ConceptId))
            .collect::<Result<_, _>>()?;
        parts.concepts.push(ConceptNode {
            name: c.at.name,
            parents,
            sentence_type: c.sentence_type,
        });
    }
    for l in raw.lexicon {
        let concept = ConceptId(resolve(&concepts, "concept", &l.concept, l.at.line)?);
        parts.lexicon.push(LexicalItem {
            name: l.at.name,
            language: l.language,
            morphemes: l.morphemes,
            concept,
        });
    }
    for s in raw.sequences {
        let line = s.at.line;
        let owner = ConceptId(resolve(&concepts, "concept", &s.owner, line)?);
        let paired = CsId(resolve(&seqs, "sequence", &s.pair, line)?);
        let elements = s
            .elements
            .into_iter()
            .map(|e| {
                let filler = match e.filler {
                    RawFiller::Concept(name, col) => {
                        Filler::Concept(ConceptId(resolve(&concepts, "concept", &(name, col), line)?))
                    }
                    RawFiller::Literal(text) => Filler::Literal(text),
                };
                let default_lexical = e
                    .default
                    .as_ref()
                    .map(|d| resolve(&lexes, "lexical", d, line).map(LexId))
                    .transpose()?;
                Ok(ConceptSequenceElement {
                    filler,
                    cse_type: e.cse_type,
                    default_lexical,
                })
            })
            .collect::<Result<Vec<_>, NetworkError>>()?;
        parts.sequences.push(ConceptSequence {
            name: s.at.name,
            language: s.language,
            owner,
            elements,
            paired,
        });
    }

    if let Some(s) = parts
        .sequences
        .iter()
        .find(|s| s.elements.iter().all(|e| e.cse_type.is_omissible()))
    {
        return Err(NetworkError::AllOmissible { cs: s.name.clone() });
    }

    MemoryNetwork::from_parts(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
# comment line
concept top sentence-type question
concept me
concept way isa me   # trailing comment
lex me-ko ko ce+eykey isa me
lex me-en en me isa me
affix ko eykey role case-marker
cs k1 ko of top pair e1 : me(OF) "kanun"(CX)
cs e1 en of top pair k1 : me(CX)=me-en
literal ko kanun
"#;

    #[test]
    fn loads_small_network() {
        let net = load_network(SMALL).unwrap();
        assert_eq!(net.concepts().count(), 3);
        let k1 = net.sequence(net.cs_id("k1").unwrap());
        assert_eq!(k1.elements.len(), 2);
        assert_eq!(k1.elements[1].filler, Filler::Literal("kanun".into()));
        assert_eq!(k1.elements[0].cse_type, CseType::OF);
        let e1 = net.sequence(net.cs_id("e1").unwrap());
        assert_eq!(e1.elements[0].default_lexical, net.lex_id("me-en"));
        assert_eq!(
            net.lookup_lexical(Language::Ko, &["ce".into(), "eykey".into()]),
            vec![net.lex_id("me-ko").unwrap()]
        );
    }

    #[test]
    fn empty_file_has_no_concepts() {
        assert_eq!(load_network("# nothing\n\n"), Err(NetworkError::NoConcepts));
        assert_eq!(
            load_network("").unwrap_err().to_string(),
            "no concepts declared"
        );
    }

    #[test]
    fn self_pairing_is_rejected() {
        let src = "concept a\nlex x en x isa a\ncs s en of a pair s : a(CX)\n";
        let err = load_network(src).unwrap_err();
        assert!(err.to_string().starts_with("pairing must cross languages"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = load_network("concept a\nlex x en x isnt a\n").unwrap_err();
        assert_eq!(
            err,
            NetworkError::Syntax {
                line: 2,
                column: 12,
                message: "expected `isa`, found `isnt`".into()
            }
        );
        let err = load_network("concept a\ncs s ko of a pair t : a(XX)\n").unwrap_err();
        assert!(matches!(err, NetworkError::Syntax { line: 2, .. }), "{err}");
        let err = load_network("concept a\nfrobnicate\n").unwrap_err();
        assert!(matches!(err, NetworkError::Syntax { line: 2, column: 1, .. }));
    }

    #[test]
    fn dangling_and_duplicate_ids_are_named() {
        let err = load_network("concept a isa ghost\n").unwrap_err();
        assert_eq!(
            err,
            NetworkError::DanglingReference {
                line: Some(1),
                kind: "concept",
                id: "ghost".into()
            }
        );
        let err = load_network("concept a\nconcept a\n").unwrap_err();
        assert_eq!(
            err,
            NetworkError::DuplicateId {
                line: Some(2),
                kind: "concept",
                id: "a".into()
            }
        );
    }

    #[test]
    fn all_omissible_sequence_is_rejected() {
        let src = "concept a\nconcept b\nlex x ko x isa b\nlex y en y isa b\n\
                   cs s ko of a pair t : b(OF)\ncs t en of a pair s : b(CX)\n";
        assert_eq!(
            load_network(src),
            Err(NetworkError::AllOmissible { cs: "s".into() })
        );
    }
}
