//! Benchmarks for `monolat` live in `benches/`; run them with
//! `cargo bench -p monolat-bench`.
