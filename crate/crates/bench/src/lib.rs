//! Criterion benchmarks for the eigensolver and the first-order pipeline;
//! see `benches/`.
