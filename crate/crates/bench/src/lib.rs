//! Benchmarks for `cubicq-core`; see `benches/`.
