//! Criterion benchmarks for `ptosc-core`; see `benches/kernels.rs`.
