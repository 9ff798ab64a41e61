//! Benchmarks for kummono live in `benches/`.
