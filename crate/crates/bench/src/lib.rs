//! Criterion benchmarks for `gcdmix`. Run with `cargo bench -p gcdmix-bench`.
