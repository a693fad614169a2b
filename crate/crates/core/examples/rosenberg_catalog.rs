//! The relation classes used as candidates, their generators and validation.

use clausal_clones::algebra::Budget;
use clausal_clones::catalog::{
    binary_central, enumerate_class, rho_c, sigma, two_block_equivalence, unary_interval_union, validate, RelationClass,
};

fn main() -> clausal_clones::Result<()> {
    for n in 2..=4 {
        let counts: Vec<String> = RelationClass::ALL
            .iter()
            .map(|&c| Ok(format!("{c} {}", enumerate_class(c, n, Budget::default())?.len())))
            .collect::<clausal_clones::Result<_>>()?;
        println!("n = {n}: {}", counts.join(", "));
    }

    let n = 5;
    println!("{:?}", unary_interval_union(4, 1, n)?);
    println!("{:?}", two_block_equivalence(2, n)?);
    println!("{:?}", sigma(1, 2, n)?);
    let central = binary_central(0, &[(1, 2), (3, 4)], n)?;
    println!("centres of ρ_{{0,S}} with S = {{(1,2),(3,4)}}: {:?}", central.centers);

    let report = validate(&rho_c(2, n)?)?;
    println!("ρ_2 classified as {:?}, centres {:?}", report.classification, report.centers);
    Ok(())
}
