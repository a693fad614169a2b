//! The explicit witness constructions, each checked into a certificate.

use clausal_clones::algebra::Relation;
use clausal_clones::catalog::{rho_c, BoundedOrder};
use clausal_clones::format::format_operation;
use clausal_clones::witness::{
    binary_template, central_refuter, equivalence_refuters, order_exception_witness, order_refuter,
    reflexive_refuter_least, unary_witness_properties, OrderException, TemplateForm, WitnessCertificate,
};

fn show(c: &WitnessCertificate) {
    print!("{} (recheck {}):\n{}", c.construction, c.recheck(), format_operation(&c.witness));
    println!("  columns {:?} -> {:?}", c.violation.columns, c.violation.image);
}

fn main() -> clausal_clones::Result<()> {
    let n = 5;
    let low = binary_template(2, 2, n, TemplateForm::Low, 2, 2, &[])?;
    print!("low template for (2,2):\n{}", format_operation(&low));

    let (f, g) = equivalence_refuters(2, 2, n)?;
    print!("equivalence refuters:\n{}{}", format_operation(&f), format_operation(&g));

    show(&central_refuter(&rho_c(0, n)?, 0, 2, 2)?);
    show(&reflexive_refuter_least(&Relation::canonical_order(n)?, 3, 0)?);
    show(&order_refuter(&BoundedOrder::new(Relation::canonical_order(n)?)?, 2, 2)?);

    for case in OrderException::ALL {
        let w = order_exception_witness(case, 4)?;
        let (bot, top, a, b) = case.shape(4);
        let props = unary_witness_properties(&w, a, b)?;
        println!("{case:?}: ⊥={bot} ⊤={top} a={a} b={b} table {:?} conditions hold: {}", w.table(), props.all());
    }
    Ok(())
}
