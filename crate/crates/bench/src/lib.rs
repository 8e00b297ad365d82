//! Benchmarks for the tangle engine live in `benches/`.
