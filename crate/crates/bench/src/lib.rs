//! Benchmark-only crate. The measurements live in `benches/kernels.rs`;
//! run them with `cargo bench -p crooked-bench`.
