//! Preservation, polymorphisms and invariants on a three-element domain.

use clausal_clones::algebra::{find_violation, inv_m, pol_k, Budget, Operation, Relation};
use clausal_clones::format::{format_operation, format_relation};

fn main() -> clausal_clones::Result<()> {
    let le = Relation::canonical_order(3)?;
    let min = Operation::from_fn(3, 2, |t| t[0].min(t[1]))?;
    let swap = Operation::transposition(3, 0, 2)?;

    println!("min preserves ≤: {}", find_violation(&min, &le)?.is_none());
    if let Some(c) = find_violation(&swap, &le)? {
        println!("(0 2) breaks ≤: columns {:?} map to {:?}", c.columns, c.image);
    }

    let pol1 = pol_k(3, std::slice::from_ref(&le), 1, Budget::default())?;
    let pol2 = pol_k(3, std::slice::from_ref(&le), 2, Budget::default())?;
    println!("monotone unary maps: {}, binary: {}", pol1.len(), pol2.len());
    print!("first binary one:\n{}", format_operation(&pol2[0]));

    let inv = inv_m(3, &[min], 1, Budget::default())?;
    println!("unary relations closed under min: {}", inv.len());
    for r in inv.iter().filter(|r| r.len() == 2) {
        print!("{}", format_relation(r));
    }
    Ok(())
}
