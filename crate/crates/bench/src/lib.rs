//! Criterion benchmarks for `parind`; see `benches/`.
