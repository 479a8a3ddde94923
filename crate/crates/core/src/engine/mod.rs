//! Marker-passing recognizer.
//!
//! Every source sequence carries a standing prediction (AP) on the elements
//! that may come first. A word activates (AA) its readings; a collision of an
//! activation with a prediction extends the predicting instance, or spawns a
//! new one when the prediction is a standing one. Competing readings are kept
//! side by side: an instance is never overwritten, it is forked. Instances
//! wait at the input position where they end, so a sub-sequence accepted
//! later over several words can still extend them.

pub mod generate;
pub mod instance;
pub mod marker;
pub mod trace;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::language::{Direction, Language};
use crate::network::{ConceptId, CsId, Filler, LexId, MemoryNetwork};

use instance::{CsInstance, Fill, InstanceKey, InstanceStatus};
use marker::{Binding, InstanceId, Location, Marker, MarkerKind, Owner};
use trace::{EventKind, Trace, TraceEvent};

pub use generate::{ConceptTree, Emission, Generation, GenerationError, Origin};

/// One way of reading an input word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Reading {
    Lexical(LexId),
    Literal(String),
}

/// Recognized material over an input span.
#[derive(Debug, Clone)]
struct Constituent {
    start: usize,
    end: usize,
    concept: Option<ConceptId>,
    literal: Option<String>,
    fill: Fill,
    binding: Binding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Predictor {
    Initial { cs: CsId, element: usize },
    Instance { id: InstanceId, element: usize },
}

#[derive(Debug, Clone, Copy)]
struct Collision {
    predictor: Predictor,
    constituent: usize,
}

/// Target-side sequence realized for a source instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetInstance {
    pub cs: CsId,
    pub source: InstanceId,
}

/// All transient state of one analysis and generation run.
#[derive(Debug, Default)]
pub struct MarkerState {
    session: u64,
    direction: Option<Direction>,
    position: Option<usize>,
    markers: BTreeSet<Marker>,
    instances: Vec<CsInstance>,
    pub(crate) targets: Vec<TargetInstance>,
    agenda: VecDeque<Collision>,
    trace: Trace,
    constituents: Vec<Constituent>,
    waiting: HashMap<usize, Vec<InstanceId>>,
    seen_instances: HashSet<InstanceKey>,
    seen_constituents: HashSet<(CsId, usize, usize)>,
    static_by_concept: HashMap<ConceptId, Vec<(CsId, usize)>>,
    static_by_literal: HashMap<String, Vec<(CsId, usize)>>,
    top_candidates: Vec<InstanceId>,
}

impl MarkerState {
    pub fn new() -> Self {
        Self::default()
    }

    /// True when no marker, instance or pending collision is left.
    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
            && self.instances.is_empty()
            && self.targets.is_empty()
            && self.agenda.is_empty()
            && self.constituents.is_empty()
            && self.waiting.is_empty()
            && self.static_by_concept.is_empty()
            && self.static_by_literal.is_empty()
            && self.top_candidates.is_empty()
            && self.trace.is_empty()
    }

    pub fn session(&self) -> u64 {
        self.session
    }

    pub fn direction(&self) -> Option<Direction> {
        self.direction
    }

    pub fn markers(&self) -> &BTreeSet<Marker> {
        &self.markers
    }

    pub fn instances(&self) -> &[CsInstance] {
        &self.instances
    }

    pub fn instance(&self, id: InstanceId) -> &CsInstance {
        &self.instances[id.index()]
    }

    pub fn targets(&self) -> &[TargetInstance] {
        &self.targets
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn pending_collisions(&self) -> usize {
        self.agenda.len()
    }

    fn place(&mut self, kind: MarkerKind, location: Location, binding: Option<Binding>) {
        self.markers.insert(Marker {
            kind,
            location,
            binding,
            session: self.session,
        });
    }

    pub(crate) fn event(
        &mut self,
        event: EventKind,
        marker: Option<MarkerKind>,
        location: Location,
        binding: Option<Binding>,
    ) {
        self.trace.push(TraceEvent {
            event,
            marker,
            location,
            binding,
            token: self.position,
        });
    }

    pub(crate) fn place_traced(
        &mut self,
        event: EventKind,
        kind: MarkerKind,
        location: Location,
        binding: Option<Binding>,
    ) {
        self.place(kind, location.clone(), binding.clone());
        self.event(event, Some(kind), location, binding);
    }

    pub(crate) fn remove_marker(&mut self, kind: MarkerKind, location: &Location) {
        self.markers
            .retain(|m| !(m.kind == kind && &m.location == location));
    }

    /// Starts a new session: places the standing predictions of every source
    /// sequence and the generation predictions of every target sequence.
    pub fn initial_prediction(&mut self, net: &MemoryNetwork, direction: Direction) {
        let session = self.session + 1;
        self.finish();
        self.session = session;
        self.direction = Some(direction);
        self.position = None;

        let mut fillers: Vec<ConceptId> = Vec::new();
        for (cs_id, cs) in net.sequences().filter(|(_, s)| s.language == direction.source()) {
            let template = CsInstance::fresh(InstanceId(0), cs_id, cs, 0);
            for e in template.predicted(cs) {
                if shadowed(&template.pending_free, cs, e) {
                    continue;
                }
                let loc = Location::Element {
                    cs: cs_id,
                    element: e,
                    owner: Owner::Initial,
                };
                self.place_traced(EventKind::Predict, MarkerKind::AP, loc, None);
                match &cs.elements[e].filler {
                    Filler::Concept(c) => {
                        self.static_by_concept.entry(*c).or_default().push((cs_id, e));
                        if !fillers.contains(c) {
                            fillers.push(*c);
                        }
                    }
                    Filler::Literal(t) => {
                        self.static_by_literal
                            .entry(crate::network::fold(t))
                            .or_default()
                            .push((cs_id, e));
                    }
                }
            }
        }

        // Predictions spread down the hierarchy to the lexical items that
        // can satisfy them.
        let mut seen: HashSet<ConceptId> = HashSet::new();
        let mut stack = fillers;
        let mut lexical: Vec<LexId> = Vec::new();
        while let Some(c) = stack.pop() {
            if !seen.insert(c) {
                continue;
            }
            lexical.extend(net.lexical_of_in(c, direction.source()));
            stack.extend(net.children(c).iter().rev().copied());
        }
        lexical.sort_unstable();
        lexical.dedup();
        for l in lexical {
            self.place_traced(EventKind::Predict, MarkerKind::AP, Location::Lexical(l), None);
        }

        for (cs_id, _) in net.sequences().filter(|(_, s)| s.language == direction.target()) {
            let loc = Location::Element {
                cs: cs_id,
                element: 0,
                owner: Owner::Initial,
            };
            self.place_traced(EventKind::Predict, MarkerKind::GP, loc, None);
        }
    }

    /// Activates the readings of the word at `position` and queues the
    /// resulting collisions.
    pub fn activate(&mut self, net: &MemoryNetwork, readings: &[Reading], position: usize) {
        let direction = self.direction.expect("activate before initial prediction");
        self.position = Some(position);
        for r in readings {
            let binding = Binding::Token(position);
            let (location, constituent) = match r {
                Reading::Lexical(l) => (
                    Location::Lexical(*l),
                    Constituent {
                        start: position,
                        end: position + 1,
                        concept: Some(net.lexical(*l).concept),
                        literal: None,
                        fill: Fill::Lexical {
                            lex: *l,
                            token: position,
                        },
                        binding: binding.clone(),
                    },
                ),
                Reading::Literal(t) => (
                    Location::Literal {
                        language: direction.source(),
                        text: t.clone(),
                    },
                    Constituent {
                        start: position,
                        end: position + 1,
                        concept: None,
                        literal: Some(crate::network::fold(t)),
                        fill: Fill::Literal { token: position },
                        binding: binding.clone(),
                    },
                ),
            };
            self.place_traced(
                EventKind::Activate,
                MarkerKind::AA,
                location.clone(),
                Some(binding.clone()),
            );
            self.constituents.push(constituent);
            let idx = self.constituents.len() - 1;
            let hits = self.collisions_for(net, idx);
            if hits.is_empty() {
                self.event(EventKind::Dead, Some(MarkerKind::AA), location, Some(binding));
                continue;
            }
            if let Reading::Lexical(l) = r {
                let concept = net.lexical(*l).concept;
                for &a in net.ancestors(concept) {
                    self.place(MarkerKind::AA, Location::Concept(a), Some(binding.clone()));
                }
                let targets: Vec<LexId> = net.lexical_of_in(concept, direction.target()).collect();
                for t in targets {
                    self.place_traced(
                        EventKind::Activate,
                        MarkerKind::GA,
                        Location::Lexical(t),
                        Some(binding.clone()),
                    );
                }
            }
            for p in hits {
                self.enqueue(net, p, idx);
            }
        }
    }

    fn collisions_for(&self, net: &MemoryNetwork, idx: usize) -> Vec<Predictor> {
        let c = &self.constituents[idx];
        let mut out = Vec::new();
        if let Some(ids) = self.waiting.get(&c.start) {
            for &id in ids {
                let inst = &self.instances[id.index()];
                if inst.status == InstanceStatus::Dead {
                    continue;
                }
                let cs = net.sequence(inst.cs);
                for e in inst.predicted(cs) {
                    if matches(net, &cs.elements[e].filler, c) && !shadowed(&inst.pending_free, cs, e) {
                        out.push(Predictor::Instance { id, element: e });
                    }
                }
            }
        }
        if let Some(concept) = c.concept {
            for a in net.ancestors(concept) {
                if let Some(list) = self.static_by_concept.get(a) {
                    out.extend(
                        list.iter()
                            .map(|&(cs, element)| Predictor::Initial { cs, element }),
                    );
                }
            }
        }
        if let Some(text) = &c.literal {
            if let Some(list) = self.static_by_literal.get(text) {
                out.extend(
                    list.iter()
                        .map(|&(cs, element)| Predictor::Initial { cs, element }),
                );
            }
        }
        out
    }

    fn enqueue(&mut self, net: &MemoryNetwork, predictor: Predictor, constituent: usize) {
        let _ = net;
        let location = match predictor {
            Predictor::Initial { cs, element } => Location::Element {
                cs,
                element,
                owner: Owner::Initial,
            },
            Predictor::Instance { id, element } => Location::Element {
                cs: self.instances[id.index()].cs,
                element,
                owner: Owner::Source(id),
            },
        };
        let binding = self.constituents[constituent].binding.clone();
        self.event(EventKind::Collide, Some(MarkerKind::AP), location, Some(binding));
        self.agenda.push_back(Collision {
            predictor,
            constituent,
        });
    }

    /// Processes queued collisions until none is left, then retires the
    /// instances that can no longer grow.
    pub fn step_collisions(&mut self, net: &MemoryNetwork) {
        while let Some(col) = self.agenda.pop_front() {
            self.collide(net, col);
        }
        if let Some(p) = self.position {
            self.prune(p + 1);
        }
    }

    fn collide(&mut self, net: &MemoryNetwork, col: Collision) {
        let c = self.constituents[col.constituent].clone();
        let (base, element, owner) = match col.predictor {
            Predictor::Initial { cs, element } => (
                CsInstance::fresh(InstanceId(u32::MAX), cs, net.sequence(cs), c.start),
                element,
                Owner::Initial,
            ),
            Predictor::Instance { id, element } => {
                let inst = &self.instances[id.index()];
                if inst.status == InstanceStatus::Dead {
                    let loc = Location::Sequence {
                        cs: inst.cs,
                        owner: Owner::Source(id),
                    };
                    self.event(EventKind::Dead, Some(MarkerKind::AP), loc, Some(c.binding));
                    return;
                }
                (inst.clone(), element, Owner::Source(id))
            }
        };
        let cs_id = base.cs;
        let cs = net.sequence(cs_id);
        let id = InstanceId(self.instances.len() as u32);
        let Some((mut next, skipped)) = base.extended(cs, element, c.fill.clone(), c.end, id) else {
            return;
        };
        if owner == Owner::Initial {
            next.parent = None;
        }
        if !self.seen_instances.insert(next.key()) {
            return;
        }
        for s in skipped {
            let loc = Location::Element {
                cs: cs_id,
                element: s,
                owner,
            };
            self.event(EventKind::Withdraw, Some(MarkerKind::AP), loc, Some(Binding::Instance(id)));
        }
        let predicted = next.predicted(cs);
        let acceptable = next.is_acceptable(cs);
        self.waiting.entry(next.end).or_default().push(id);
        self.instances.push(next);
        for e in predicted {
            let loc = Location::Element {
                cs: cs_id,
                element: e,
                owner: Owner::Source(id),
            };
            self.place_traced(EventKind::Predict, MarkerKind::AP, loc, None);
        }
        if acceptable {
            self.accept_cs(net, id);
        }
    }

    /// Accepts an instance whose compulsory elements are all filled and
    /// offers it as a constituent to the instances waiting at its start.
    ///
    /// Panics if the instance is not acceptable.
    pub fn accept_cs(&mut self, net: &MemoryNetwork, id: InstanceId) {
        let inst = &self.instances[id.index()];
        let cs = net.sequence(inst.cs);
        assert!(
            inst.is_acceptable(cs),
            "instance s{} of `{}` has unfilled compulsory elements",
            id.0,
            cs.name
        );
        let (cs_id, start, end) = (inst.cs, inst.start, inst.end);
        self.instances[id.index()].status = InstanceStatus::Accepted;
        let binding = Binding::Instance(id);
        self.event(
            EventKind::Accept,
            None,
            Location::Sequence {
                cs: cs_id,
                owner: Owner::Source(id),
            },
            Some(binding.clone()),
        );
        for &a in net.ancestors(cs.owner) {
            self.place(MarkerKind::AA, Location::Concept(a), Some(binding.clone()));
        }
        self.place_traced(
            EventKind::Activate,
            MarkerKind::GA,
            Location::Sequence {
                cs: cs.paired,
                owner: Owner::Initial,
            },
            Some(binding.clone()),
        );
        if !self.seen_constituents.insert((cs_id, start, end)) {
            return;
        }
        if net.is_top_level(cs.owner) {
            self.top_candidates.push(id);
        }
        self.constituents.push(Constituent {
            start,
            end,
            concept: Some(cs.owner),
            literal: None,
            fill: Fill::Sub(id),
            binding,
        });
        let idx = self.constituents.len() - 1;
        for p in self.collisions_for(net, idx) {
            self.enqueue(net, p, idx);
        }
    }

    /// Marks every active instance that can no longer be extended as dead.
    /// An instance ending at `e` can still grow while some instance started
    /// at `e` reaches the frontier, directly or through a chain of such
    /// instances.
    fn prune(&mut self, frontier: usize) {
        let mut live: HashSet<usize> = HashSet::new();
        live.insert(frontier);
        loop {
            let before = live.len();
            for inst in &self.instances {
                if inst.status != InstanceStatus::Dead && live.contains(&inst.end) {
                    live.insert(inst.start);
                }
            }
            if live.len() == before {
                break;
            }
        }
        let mut retired: HashSet<InstanceId> = HashSet::new();
        let mut dead: Vec<(InstanceId, CsId)> = Vec::new();
        for inst in &mut self.instances {
            if inst.status == InstanceStatus::Dead || live.contains(&inst.end) {
                continue;
            }
            retired.insert(inst.id);
            if inst.status == InstanceStatus::Active {
                inst.status = InstanceStatus::Dead;
                dead.push((inst.id, inst.cs));
            }
        }
        for (id, cs) in dead {
            self.event(
                EventKind::Dead,
                None,
                Location::Sequence {
                    cs,
                    owner: Owner::Source(id),
                },
                None,
            );
        }
        if !retired.is_empty() {
            self.markers.retain(|m| match &m.location {
                Location::Element {
                    owner: Owner::Source(i),
                    ..
                } => !(m.kind == MarkerKind::AP && retired.contains(i)),
                _ => true,
            });
            for list in self.waiting.values_mut() {
                list.retain(|i| !retired.contains(i));
            }
            self.waiting.retain(|_, l| !l.is_empty());
        }
    }

    /// Picks the analysis of the whole input: an accepted top-level instance
    /// over `[0, length)`, earliest declared sequence first, then earliest
    /// created.
    pub fn end_of_input(&mut self, net: &MemoryNetwork, length: usize) -> Option<InstanceId> {
        let _ = net;
        self.top_candidates
            .iter()
            .copied()
            .filter(|id| {
                let i = &self.instances[id.index()];
                i.start == 0 && i.end == length && i.status == InstanceStatus::Accepted
            })
            .min_by_key(|id| (self.instances[id.index()].cs, *id))
    }

    /// Ends the session: clears every marker and instance and hands back the
    /// trace.
    pub fn finish(&mut self) -> Trace {
        let session = self.session;
        let trace = std::mem::take(&mut self.trace);
        *self = MarkerState {
            session,
            ..MarkerState::default()
        };
        trace
    }
}

fn matches(net: &MemoryNetwork, filler: &Filler, c: &Constituent) -> bool {
    match filler {
        Filler::Concept(f) => c.concept.is_some_and(|k| net.is_a(k, *f)),
        Filler::Literal(t) => c
            .literal
            .as_deref()
            .is_some_and(|l| l == crate::network::fold(t)),
    }
}

/// A free element is shadowed by a pending free element of lower index with
/// the same filler and type: filling either gives the same instance, so only
/// the first is offered.
fn shadowed(pending: &[usize], cs: &crate::network::ConceptSequence, e: usize) -> bool {
    let el = &cs.elements[e];
    el.cse_type.is_free()
        && pending.iter().any(|&o| {
            o < e && cs.elements[o].filler == el.filler && cs.elements[o].cse_type == el.cse_type
        })
}

/// Runs the recognizer alone over pre-read input and reports whether some
/// top-level analysis covers it. Used to compare against the reference
/// recognizer.
pub fn recognize(net: &MemoryNetwork, source: Language, words: &[Vec<Reading>]) -> bool {
    let mut state = MarkerState::new();
    state.initial_prediction(net, Direction::from_source(source));
    for (p, readings) in words.iter().enumerate() {
        state.activate(net, readings, p);
        state.step_collisions(net);
    }
    let ok = state.end_of_input(net, words.len()).is_some();
    state.finish();
    ok
}

/// Whether some accepted instance of `cs` covers all of `words`. Ignores
/// whether `cs` is top-level.
pub fn recognize_sequence(net: &MemoryNetwork, cs: CsId, words: &[Vec<Reading>]) -> bool {
    let source = net.sequence(cs).language;
    let mut state = MarkerState::new();
    state.initial_prediction(net, Direction::from_source(source));
    for (p, readings) in words.iter().enumerate() {
        state.activate(net, readings, p);
        state.step_collisions(net);
    }
    let n = words.len();
    let ok = state
        .instances
        .iter()
        .any(|i| i.cs == cs && i.start == 0 && i.end == n && i.status == InstanceStatus::Accepted);
    state.finish();
    ok
}
