//! Criterion benchmarks for the symbolic and numeric engines; see `benches/`.
