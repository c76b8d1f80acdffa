//! Criterion benchmarks for `magicsq-core`. See `benches/`.
