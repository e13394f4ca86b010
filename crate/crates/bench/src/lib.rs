//! Benchmark-only crate; see `benches/census.rs`.
