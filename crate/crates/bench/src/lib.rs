//! Criterion benchmarks for the translator; see `benches/translate.rs`.
