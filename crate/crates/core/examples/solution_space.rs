//! Compares the kernel of D Δ^m on polynomials of bounded degree with the
//! right span of the P_α.
//!
//! Run with `cargo run --release --example solution_space -- 3` for the
//! m = 1, degree 3 case (a few seconds); the default degree is 2.

use cliffordian::solutions::{solution_space_compare, DEFAULT_MATRIX_LIMIT};
use cliffordian::Result;

pub fn run_example() -> Result<()> {
    let d: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    for (m, degree) in [(0, 4), (1, d)] {
        let report = solution_space_compare(degree, m, DEFAULT_MATRIX_LIMIT)?;
        println!(
            "m = {m}, degree <= {degree}: space {}, kernel {}, span {}, equal {}",
            report.space_dim, report.kernel_dim, report.span_rank, report.spans_equal
        );
        for row in &report.per_degree {
            println!(
                "  degree {}: space {:4}  kernel {:4}  span {:4}",
                row.degree, row.space_dim, row.kernel_dim, row.span_rank
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
