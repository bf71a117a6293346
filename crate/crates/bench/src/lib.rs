//! Criterion benchmarks for the solver and curve kernels; see `benches/`.
