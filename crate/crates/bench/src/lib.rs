//! Fixed workloads shared by the benchmarks.

use spinpic_core::IntMatrix;

/// Every `(r, s)` with `s | r` and `2 <= r <= max_r`.
pub fn level_pairs(max_r: u64) -> Vec<(u64, u64)> {
    (2..=max_r)
        .flat_map(|r| (1..=r).filter(move |s| r % s == 0).map(move |s| (r, s)))
        .collect()
}

/// Deterministic dense `n × n` matrix with small mixed-sign entries.
pub fn sample_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i * 7 + j * 13 + i * j * 5) % 19) as i64 - 9)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).expect("rows have equal width")
}
