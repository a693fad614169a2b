//! Exhaustive uniqueness check: one inclusion per row, every other candidate
//! refuted by a rechecked certificate.

use std::env;
use std::time::Instant;

use clausal_clones::algebra::Budget;
use clausal_clones::catalog::RelationClass;
use clausal_clones::classify::verify_theorem;

fn main() -> clausal_clones::Result<()> {
    let n = env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let start = Instant::now();
    let report = verify_theorem(n, &RelationClass::ALL, Budget::default())?;
    for row in &report.rows {
        let mut by_construction = std::collections::BTreeMap::<&str, usize>::new();
        for c in row.exclusions() {
            *by_construction.entry(c.construction.as_str()).or_default() += 1;
        }
        println!("{}: {} inclusion, {:?}", row.params, row.inclusion_count(), by_construction);
    }
    println!(
        "n = {n}: {} candidates, passed {} in {:.2?}",
        report.pool_size,
        report.passed(),
        start.elapsed()
    );
    Ok(())
}
