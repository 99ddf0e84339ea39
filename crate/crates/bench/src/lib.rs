//! Criterion benchmarks for zetakit kernels; see `benches/`.
