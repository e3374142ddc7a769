//! Criterion benchmarks for `submeasure-core`; see `benches/`.
