//! Concept sequence instances and the extended prediction rules.
//!
//! Fixed-order elements (CX, OX) are consumed left to right through a cursor
//! over the fixed-order subsequence; free-order elements (CF, OF) are
//! predicted from the moment the instance exists until they are filled. The
//! fixed prediction covers the cursor element and, while that element is OX,
//! the following fixed elements as well, so an omissible element can be
//! skipped when its successor arrives first.

use super::marker::InstanceId;
use crate::network::{ConceptSequence, CseType, CsId, LexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fill {
    Lexical { lex: LexId, token: usize },
    Literal { token: usize },
    Sub(InstanceId),
    Omitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceStatus {
    Active,
    Accepted,
    Dead,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsInstance {
    pub id: InstanceId,
    pub cs: CsId,
    /// Input span `[start, end)` in words.
    pub start: usize,
    pub end: usize,
    pub fills: Vec<Option<Fill>>,
    /// Index into the fixed-order subsequence of the next unconsumed element.
    pub cursor: usize,
    /// Element indices of free-order elements not yet filled.
    pub pending_free: Vec<usize>,
    pub status: InstanceStatus,
    /// Instance this one was extended from.
    pub parent: Option<InstanceId>,
}

/// Identity of an instance for deduplication: two instances with the same key
/// accept exactly the same continuations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct InstanceKey {
    cs: CsId,
    start: usize,
    end: usize,
    cursor: usize,
    slots: Vec<u8>,
}

/// Element indices of the fixed-order subsequence.
pub fn fixed_elements(cs: &ConceptSequence) -> Vec<usize> {
    cs.elements
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.cse_type.is_free())
        .map(|(i, _)| i)
        .collect()
}

impl CsInstance {
    /// An instance with nothing consumed yet, anchored at `start`.
    pub fn fresh(id: InstanceId, cs_id: CsId, cs: &ConceptSequence, start: usize) -> Self {
        CsInstance {
            id,
            cs: cs_id,
            start,
            end: start,
            fills: vec![None; cs.elements.len()],
            cursor: 0,
            pending_free: cs
                .elements
                .iter()
                .enumerate()
                .filter(|(_, e)| e.cse_type.is_free())
                .map(|(i, _)| i)
                .collect(),
            status: InstanceStatus::Active,
            parent: None,
        }
    }

    /// Elements carrying a prediction, in declaration order.
    pub fn predicted(&self, cs: &ConceptSequence) -> Vec<usize> {
        let fixed = fixed_elements(cs);
        let mut out = self.pending_free.clone();
        for &e in &fixed[self.cursor.min(fixed.len())..] {
            out.push(e);
            if cs.elements[e].cse_type != CseType::OX {
                break;
            }
        }
        out.sort_unstable();
        out
    }

    /// Every compulsory element is filled, and the fixed elements left after
    /// the cursor are all omissible.
    pub fn is_acceptable(&self, cs: &ConceptSequence) -> bool {
        let fixed = fixed_elements(cs);
        fixed[self.cursor.min(fixed.len())..]
            .iter()
            .all(|&e| cs.elements[e].cse_type == CseType::OX)
            && self
                .pending_free
                .iter()
                .all(|&e| cs.elements[e].cse_type == CseType::OF)
    }

    /// The instance obtained by filling `element` with material ending at
    /// `end`, together with the OX elements skipped on the way. `None` if the
    /// element is not currently predicted.
    pub(crate) fn extended(
        &self,
        cs: &ConceptSequence,
        element: usize,
        fill: Fill,
        end: usize,
        id: InstanceId,
    ) -> Option<(CsInstance, Vec<usize>)> {
        let mut next = self.clone();
        next.id = id;
        next.parent = Some(self.id);
        next.end = end;
        next.status = InstanceStatus::Active;
        let mut skipped = Vec::new();
        if cs.elements[element].cse_type.is_free() {
            let pos = self.pending_free.iter().position(|&e| e == element)?;
            next.pending_free.remove(pos);
        } else {
            let fixed = fixed_elements(cs);
            let k = fixed.iter().position(|&e| e == element)?;
            if k < self.cursor {
                return None;
            }
            for &e in &fixed[self.cursor..k] {
                if cs.elements[e].cse_type != CseType::OX {
                    return None;
                }
                next.fills[e] = Some(Fill::Omitted);
                skipped.push(e);
            }
            next.cursor = k + 1;
        }
        next.fills[element] = Some(fill);
        Some((next, skipped))
    }

    pub(crate) fn key(&self) -> InstanceKey {
        InstanceKey {
            cs: self.cs,
            start: self.start,
            end: self.end,
            cursor: self.cursor,
            slots: self
                .fills
                .iter()
                .map(|f| match f {
                    None => 0,
                    Some(Fill::Omitted) => 2,
                    Some(_) => 1,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::Language;
    use crate::network::{ConceptId, ConceptSequenceElement, Filler};

    fn cs(types: &[CseType]) -> ConceptSequence {
        ConceptSequence {
            name: "t".into(),
            language: Language::Ko,
            owner: ConceptId(0),
            elements: types
                .iter()
                .enumerate()
                .map(|(i, t)| ConceptSequenceElement {
                    filler: Filler::Concept(ConceptId(i as u32)),
                    cse_type: *t,
                    default_lexical: None,
                })
                .collect(),
            paired: CsId(1),
        }
    }

    fn fill(t: usize) -> Fill {
        Fill::Literal { token: t }
    }

    use CseType::*;

    #[test]
    fn omissible_free_first_element_predicts_successor() {
        // me(OF) location(CX) "kanun"(CX) way(CX) indicate(CX)
        let s = cs(&[OF, CX, CX, CX, CX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        assert_eq!(i.predicted(&s), vec![0, 1]);
    }

    #[test]
    fn fixed_only_predicts_first() {
        let s = cs(&[CX, CX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        assert_eq!(i.predicted(&s), vec![0]);
        assert!(!i.is_acceptable(&s));
    }

    #[test]
    fn ox_lookahead_is_transitive() {
        let s = cs(&[OX, OX, CX, OX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        assert_eq!(i.predicted(&s), vec![0, 1, 2]);
        let (j, skipped) = i.extended(&s, 2, fill(0), 1, InstanceId(1)).unwrap();
        assert_eq!(skipped, vec![0, 1]);
        assert_eq!(j.fills[0], Some(Fill::Omitted));
        assert_eq!(j.cursor, 3);
        assert_eq!(j.predicted(&s), vec![3]);
        assert!(j.is_acceptable(&s));
    }

    #[test]
    fn free_element_fills_out_of_order_without_moving_cursor() {
        // me(OF) where(CF) location(CX) "issnunci"(CX) indicate(CX)
        let s = cs(&[OF, CF, CX, CX, CX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        assert_eq!(i.predicted(&s), vec![0, 1, 2]);
        let (j, _) = i.extended(&s, 2, fill(0), 1, InstanceId(1)).unwrap();
        assert_eq!(j.predicted(&s), vec![0, 1, 3]);
        let (k, _) = j.extended(&s, 1, fill(1), 2, InstanceId(2)).unwrap();
        assert_eq!(k.cursor, 1);
        assert_eq!(k.predicted(&s), vec![0, 3]);
        assert!(k.extended(&s, 1, fill(2), 3, InstanceId(3)).is_none());
    }

    #[test]
    fn compulsory_free_blocks_acceptance_until_filled() {
        let s = cs(&[CF, CX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        let (j, _) = i.extended(&s, 1, fill(0), 1, InstanceId(1)).unwrap();
        assert!(!j.is_acceptable(&s));
        let (k, _) = j.extended(&s, 0, fill(1), 2, InstanceId(2)).unwrap();
        assert!(k.is_acceptable(&s));
    }

    #[test]
    fn cannot_jump_over_compulsory_fixed() {
        let s = cs(&[CX, OX, CX]);
        let i = CsInstance::fresh(InstanceId(0), CsId(0), &s, 0);
        assert!(i.extended(&s, 2, fill(0), 1, InstanceId(1)).is_none());
    }
}
