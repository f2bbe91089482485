//! Benchmarks for `tsvdkit-core`; run with `cargo bench -p tsvdkit-bench`.
