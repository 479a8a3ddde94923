use std::fmt;

use super::marker::{Binding, Location, MarkerKind};
use crate::network::MemoryNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Predict,
    Activate,
    Collide,
    Accept,
    Generate,
    Dead,
    /// A prediction removed without ever being activated (skipped OX element).
    Withdraw,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::Predict => "predict",
            EventKind::Activate => "activate",
            EventKind::Collide => "collide",
            EventKind::Accept => "accept",
            EventKind::Generate => "generate",
            EventKind::Dead => "dead",
            EventKind::Withdraw => "withdraw",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub event: EventKind,
    pub marker: Option<MarkerKind>,
    pub location: Location,
    pub binding: Option<Binding>,
    /// Input word being processed, 0-based; `None` before the first word.
    pub token: Option<usize>,
}

impl TraceEvent {
    /// One line: `event marker location binding=.. token=..`, with token
    /// positions shown 1-based.
    pub fn render(&self, net: &MemoryNetwork) -> String {
        let marker = self.marker.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
        let binding = self
            .binding
            .as_ref()
            .map(|b| b.render(net))
            .unwrap_or_else(|| "-".into());
        let token = self
            .token
            .map(|t| (t + 1).to_string())
            .unwrap_or_else(|| "-".into());
        format!(
            "{} {} {} binding={} token={}",
            self.event,
            marker,
            self.location.render(net),
            binding,
            token
        )
    }
}

pub type Trace = Vec<TraceEvent>;

pub fn render_trace(trace: &[TraceEvent], net: &MemoryNetwork) -> Vec<String> {
    trace.iter().map(|e| e.render(net)).collect()
}
