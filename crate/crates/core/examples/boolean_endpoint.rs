//! On two elements R^{1,0} is ≥, and its polymorphisms are the monotone
//! Boolean operations.

use clausal_clones::algebra::{pol_k, Budget, Relation};
use clausal_clones::classify::{classify, verify_theorem, Verdict};
use clausal_clones::catalog::RelationClass;
use clausal_clones::clausal::binary_clausal;

fn main() -> clausal_clones::Result<()> {
    let r = binary_clausal(1, 0, 2)?;
    println!("R^{{1,0}} = ≥: {}", r.inverse()? == Relation::canonical_order(2)?);
    for k in 1..=4 {
        println!("k = {k}: {} monotone operations", pol_k(2, std::slice::from_ref(&r), k, Budget::default())?.len());
    }
    println!("designated: {:?}", classify(1, 0, 2)?.relation);

    let report = verify_theorem(2, &RelationClass::ALL, Budget::default())?;
    for c in &report.rows[0].candidates {
        let verdict = match &c.verdict {
            Verdict::Included { .. } => "included".to_string(),
            Verdict::SameClone { reason } => format!("same clone: {reason}"),
            Verdict::Excluded { certificate } => format!("excluded by {}", certificate.construction),
        };
        println!("{:?}: {verdict}", c.relation);
    }
    Ok(())
}
