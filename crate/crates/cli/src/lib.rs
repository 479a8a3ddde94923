//! Command implementations behind the `mbt` binary: one-shot translation,
//! the interactive loop, network validation, corpus runs and synthetic
//! networks.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use mbt_core::synth::{sample_sentences, synth_network, SynthConfig};
use mbt_core::{
    load_network, render_trace, translate, translate_with, validate_network, Direction, MarkerState, MemoryNetwork,
    TranslationResult, TranslationStatus,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_PARSE: i32 = 1;
pub const EXIT_UNKNOWN_WORD: i32 = 2;
pub const EXIT_NETWORK: i32 = 3;

/// Process exit code for a translation outcome.
pub fn exit_code(status: &TranslationStatus) -> i32 {
    match status {
        TranslationStatus::Success => EXIT_OK,
        TranslationStatus::NoParse | TranslationStatus::EmptyInput => EXIT_NO_PARSE,
        TranslationStatus::UnknownWord { .. } => EXIT_UNKNOWN_WORD,
        TranslationStatus::GenerationFailed { .. } => EXIT_NETWORK,
    }
}

#[derive(Debug)]
pub struct LoadError(pub String);

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn load(path: &Path) -> Result<MemoryNetwork, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
    load_network(&text).map_err(|e| LoadError(format!("{}: {e}", path.display())))
}

/// Writes the translation to `out`, or a diagnostic to `err`, and returns
/// the exit code. With `trace`, the marker events go to `err` first.
pub fn cmd_translate(
    net: &MemoryNetwork,
    sentence: &str,
    direction: Direction,
    trace: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    let result = translate(net, sentence, direction);
    if trace {
        for l in render_trace(&result.trace, net) {
            writeln!(err, "{l}")?;
        }
    }
    if result.is_success() {
        writeln!(out, "{}", result.target_sentence)?;
    } else {
        writeln!(err, "{}", result.status)?;
    }
    Ok(exit_code(&result.status))
}

/// Prints one line per diagnostic; exit 0 when there are none.
pub fn cmd_validate(net: &MemoryNetwork, out: &mut impl Write) -> io::Result<i32> {
    let diags = validate_network(net);
    for d in &diags {
        writeln!(out, "{d}")?;
    }
    if diags.is_empty() {
        writeln!(out, "ok")?;
        Ok(EXIT_OK)
    } else {
        Ok(1)
    }
}

pub struct Repl<'a> {
    net: &'a MemoryNetwork,
    direction: Direction,
    trace: bool,
    /// Check after every sentence that no marker or instance is left over.
    debug: bool,
    state: MarkerState,
    history: Vec<TranslationResult>,
    sources: Vec<String>,
}

impl<'a> Repl<'a> {
    pub fn new(net: &'a MemoryNetwork, direction: Direction) -> Self {
        Repl {
            net,
            direction,
            trace: false,
            debug: false,
            state: MarkerState::new(),
            history: Vec::new(),
            sources: Vec::new(),
        }
    }

    pub fn set_trace(&mut self, on: bool) {
        self.trace = on;
    }

    pub fn set_debug(&mut self, on: bool) {
        self.debug = on;
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn state(&self) -> &MarkerState {
        &self.state
    }

    pub fn history(&self) -> &[TranslationResult] {
        &self.history
    }

    /// Handles one input line. Returns the lines to print and whether the
    /// loop should stop.
    pub fn handle_line(&mut self, line: &str) -> (Vec<String>, bool) {
        let line = line.trim();
        if line.is_empty() {
            return (Vec::new(), false);
        }
        if let Some(cmd) = line.strip_prefix(':') {
            return self.command(cmd);
        }
        let result = translate_with(&mut self.state, self.net, line, self.direction);
        let mut out = Vec::new();
        if self.trace {
            out.extend(render_trace(&result.trace, self.net));
        }
        if result.is_success() {
            out.push(result.target_sentence.clone());
        } else {
            out.push(format!("error: {}", result.status));
        }
        if self.debug {
            if self.state.is_empty() {
                out.push("debug: marker state empty".into());
            } else {
                out.push(format!(
                    "debug: marker state NOT empty ({} markers, {} instances)",
                    self.state.markers().len(),
                    self.state.instances().len()
                ));
            }
        }
        self.sources.push(line.to_string());
        self.history.push(result);
        (out, false)
    }

    fn command(&mut self, cmd: &str) -> (Vec<String>, bool) {
        let mut words = cmd.split_whitespace();
        let name = words.next().unwrap_or("");
        let arg = words.next();
        let on_off = |a: Option<&str>| match a {
            Some("on") => Some(true),
            Some("off") => Some(false),
            _ => None,
        };
        let reply = match name {
            "quit" | "q" => return (Vec::new(), true),
            "dir" => match arg.map(str::parse::<Direction>) {
                Some(Ok(d)) => {
                    self.direction = d;
                    format!("direction {d}")
                }
                Some(Err(e)) => format!("error: {e}"),
                None => format!("direction {}", self.direction),
            },
            "trace" => match on_off(arg) {
                Some(v) => {
                    self.trace = v;
                    format!("trace {}", if v { "on" } else { "off" })
                }
                None => "usage: :trace on|off".into(),
            },
            "debug" => match on_off(arg) {
                Some(v) => {
                    self.debug = v;
                    format!("debug {}", if v { "on" } else { "off" })
                }
                None => "usage: :debug on|off".into(),
            },
            "history" => {
                let lines: Vec<String> = self
                    .history
                    .iter()
                    .zip(&self.sources)
                    .enumerate()
                    .map(|(i, (r, s))| {
                        let target = if r.is_success() {
                            r.target_sentence.clone()
                        } else {
                            r.status.to_string()
                        };
                        format!("{} [{}] {} => {}", i + 1, r.direction, s, target)
                    })
                    .collect();
                return (lines, false);
            }
            other => format!("error: unknown command `:{other}`"),
        };
        (vec![reply], false)
    }

    /// Reads lines until end of input or `:quit`.
    pub fn run(&mut self, input: impl BufRead, out: &mut impl Write) -> io::Result<()> {
        for line in input.lines() {
            let (lines, quit) = self.handle_line(&line?);
            for l in lines {
                writeln!(out, "{l}")?;
            }
            if quit {
                break;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    /// `*`: any successful translation.
    AnySuccess,
    Exact(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub direction: Direction,
    pub source: String,
    pub expected: Expected,
}

/// Parses `direction TAB source TAB expected` lines. Blank lines and `#`
/// comments are skipped; malformed lines come back as errors with their
/// 1-based line number.
pub fn parse_corpus(text: &str) -> Vec<Result<CorpusEntry, (usize, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 3 {
            out.push(Err((line, format!("expected 3 tab-separated fields, found {}", fields.len()))));
            continue;
        }
        let direction = match fields[0].trim().parse::<Direction>() {
            Ok(d) => d,
            Err(e) => {
                out.push(Err((line, e.to_string())));
                continue;
            }
        };
        let expected = match fields[2].trim() {
            "*" => Expected::AnySuccess,
            s => Expected::Exact(s.to_string()),
        };
        out.push(Ok(CorpusEntry {
            line,
            direction,
            source: fields[1].trim().to_string(),
            expected,
        }));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn summary(&self) -> String {
        format!("{} passed, {} failed", self.passed, self.failed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            EXIT_OK
        } else {
            1
        }
    }
}

pub fn run_corpus(net: &MemoryNetwork, text: &str) -> CorpusReport {
    let entries = parse_corpus(text);
    // Entries are independent; translate them on scoped threads and report
    // in file order.
    let results: Vec<Option<TranslationResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| {
                s.spawn(move || match e {
                    Ok(e) => Some(translate(net, &e.source, e.direction)),
                    Err(_) => None,
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("translation thread")).collect()
    });

    let mut report = CorpusReport {
        lines: Vec::new(),
        passed: 0,
        failed: 0,
    };
    for (entry, result) in entries.iter().zip(results) {
        let (ok, line) = match (entry, result) {
            (Err((line, msg)), _) => (false, format!("FAIL line {line}: malformed: {msg}")),
            (Ok(e), Some(r)) => {
                let ok = r.is_success()
                    && match &e.expected {
                        Expected::AnySuccess => true,
                        Expected::Exact(t) => &r.target_sentence == t,
                    };
                let got = if r.is_success() {
                    r.target_sentence.clone()
                } else {
                    r.status.to_string()
                };
                if ok {
                    (true, format!("PASS line {}: {} => {}", e.line, e.source, got))
                } else {
                    let want = match &e.expected {
                        Expected::AnySuccess => "*".to_string(),
                        Expected::Exact(t) => t.clone(),
                    };
                    (
                        false,
                        format!("FAIL line {}: {} => {} (expected {})", e.line, e.source, got, want),
                    )
                }
            }
            (Ok(_), None) => unreachable!("every well-formed entry is translated"),
        };
        if ok {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
        report.lines.push(line);
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatencyReport {
    pub sentences: usize,
    pub succeeded: usize,
    pub total: Duration,
}

impl LatencyReport {
    pub fn mean(&self) -> Duration {
        if self.sentences == 0 {
            Duration::ZERO
        } else {
            self.total / self.sentences as u32
        }
    }
}

/// Source text of a synthetic network.
pub fn cmd_synth(lexical_pairs: usize, cs_pairs: usize, seed: u64) -> (MemoryNetwork, String) {
    let net = synth_network(&SynthConfig {
        lexical_pairs,
        cs_pairs,
        seed,
    });
    let source = net.to_source();
    (net, source)
}

/// Translates `count` sentences sampled from `net`, alternating directions.
pub fn measure_latency(net: &MemoryNetwork, count: usize, seed: u64) -> LatencyReport {
    let mut sentences = Vec::with_capacity(count);
    for (i, dir) in [Direction::KO_EN, Direction::EN_KO].into_iter().enumerate() {
        let n = count / 2 + if i == 0 { count % 2 } else { 0 };
        for s in sample_sentences(net, dir.source(), n, seed.wrapping_add(i as u64)) {
            sentences.push((s, dir));
        }
    }
    let mut succeeded = 0;
    let start = Instant::now();
    for (s, d) in &sentences {
        if translate(net, s, *d).is_success() {
            succeeded += 1;
        }
    }
    LatencyReport {
        sentences: sentences.len(),
        succeeded,
        total: start.elapsed(),
    }
}
