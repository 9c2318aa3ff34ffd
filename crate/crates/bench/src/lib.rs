//! Benchmarks for pnev-core live in `benches/`.
