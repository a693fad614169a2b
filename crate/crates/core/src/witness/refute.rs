use super::{
    check_ab, clausal_for, complement_mapper, equivalence_refuters, interval_preserving_unary, middle_element_refuter,
    order_exception_witness, reflexive_refuter_least, unary_image_bounded, OrderException, WitnessCertificate,
};
use crate::algebra::{Operation, Relation};
use crate::catalog::{sigma, validate, BoundedOrder, Classification};
use crate::error::{Error, Result};

fn first_hit(
    candidates: impl IntoIterator<Item = Result<(Operation, &'static str)>>,
    clausal: &Relation,
    target: &Relation,
) -> Result<Option<WitnessCertificate>> {
    for candidate in candidates {
        let (f, name) = candidate?;
        if let Some(cert) = WitnessCertificate::search(f, clausal.clone(), target.clone(), name)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Refutes `Pol(R^{a,b}) ⊆ Pol(ρ)` for a non-trivial unary `ρ` other than
/// `{0..b} ∪ {a..n-1}`: a constant outside `ρ` when one is available,
/// otherwise the middle-element template.
pub fn unary_refuter(rho: &Relation, a: usize, b: usize) -> Result<WitnessCertificate> {
    let n = rho.n();
    check_ab(a, b, n)?;
    if rho.arity() != 1 || rho.is_trivial()? {
        return Err(Error::precondition("ρ must be a non-trivial unary relation"));
    }
    let members = rho.elements()?;
    if let Some(x) = (0..n).find(|&x| (x <= b || x >= a) && !members.contains(&x)) {
        let c = unary_image_bounded(vec![x; n], a, b)?;
        return WitnessCertificate::new(c, clausal_for(a, b, n)?, rho.clone(), vec![vec![members[0]]], "constant outside ρ");
    }
    middle_element_refuter(rho, a, b)
}

/// Walks the case analysis on the positions of `⊥` and `⊤` relative to the
/// blocks `{x < a}`, `{a ≤ x ≤ b}`, `{x > b}`. Transpositions inside a block
/// come first, the six boundary maps last; every candidate is verified.
pub fn order_refuter(order: &BoundedOrder, a: usize, b: usize) -> Result<WitnessCertificate> {
    let n = order.n();
    check_ab(a, b, n)?;
    if n < 3 {
        return Err(Error::Unsupported("order refutation needs n ≥ 3".into()));
    }
    if a >= b + 2 {
        return reflexive_refuter_least(&order.order, a, b);
    }
    let block = |x: usize| {
        if x < a {
            0
        } else if x <= b {
            1
        } else {
            2
        }
    };
    let clausal = clausal_for(a, b, n)?;
    let mut candidates: Vec<Result<(Operation, &'static str)>> = Vec::new();
    for (pivot, name) in [(order.bottom, "transposition with ⊥"), (order.top, "transposition with ⊤")] {
        for x in (0..n).filter(|&x| x != pivot && block(x) == block(pivot)) {
            candidates.push(Operation::transposition(n, x, pivot).and_then(|t| {
                interval_preserving_unary(&t, a, b)?;
                Ok((t, name))
            }));
        }
    }
    for case in OrderException::ALL {
        if case.matches(n, order.bottom, order.top, a, b) {
            candidates.push(order_exception_witness(case, n).map(|f| (f, "order boundary map")));
        }
    }
    first_hit(candidates, &clausal, &order.order)?
        .ok_or_else(|| Error::NoWitness(format!("order {:?} against R^{{{a},{b}}}", order.order)))
}

fn class_of(x: usize, theta: &Relation) -> Vec<usize> {
    (0..theta.n()).filter(|&y| theta.contains(&[x, y])).collect()
}

/// Refutes inclusion in `Pol(θ)` for a non-trivial equivalence `θ` other than
/// the two-block one with `a = b + 1`.
pub fn equivalence_refuter(theta: &Relation, a: usize, b: usize) -> Result<WitnessCertificate> {
    let n = theta.n();
    check_ab(a, b, n)?;
    let report = validate(theta)?;
    if report.classification != Classification::Equivalence {
        return Err(Error::precondition("θ must be a non-trivial equivalence"));
    }
    if a >= b + 2 {
        return reflexive_refuter_least(theta, a, b);
    }
    if a == 0 || b == n - 1 {
        return Err(Error::precondition(format!("R^{{{a},{b}}} is the full relation")));
    }
    let clausal = clausal_for(a, b, n)?;
    let block = |x: usize| (x >= a) as u8 + (x > b) as u8;
    let mut candidates: Vec<Result<(Operation, &'static str)>> = Vec::new();

    // x ↦ y inside one block, where (x,y) ∉ θ and x is not alone in its class
    for x in 0..n {
        if class_of(x, theta).len() < 2 {
            continue;
        }
        for y in (0..n).filter(|&y| block(y) == block(x) && !theta.contains(&[x, y])) {
            candidates.push(
                Operation::from_fn(n, 1, |t| if t[0] == x { y } else { t[0] }).and_then(|f| {
                    interval_preserving_unary(&f, a, b)?;
                    Ok((f, "single-point map inside a block"))
                }),
            );
        }
    }
    // w fixed, everything else to z, with {w, z} on one side
    for (x, y) in theta.tuples().map(|t| (t[0], t[1])).filter(|(x, y)| x != y) {
        for w in [x, y] {
            for z in (0..n).filter(|&z| (w >= a && z >= a) || (w <= b && z <= b)) {
                let mut table = vec![z; n];
                table[w] = w;
                candidates.push(unary_image_bounded(table, a, b).map(|f| (f, "two-valued map")));
            }
        }
    }
    let (f, g) = equivalence_refuters(a, b, n)?;
    candidates.push(Ok((f, "equivalence binary refuter f")));
    candidates.push(Ok((g, "equivalence binary refuter g")));

    first_hit(candidates, &clausal, theta)?
        .ok_or_else(|| Error::NoWitness(format!("equivalence {theta:?} against R^{{{a},{b}}}")))
}

/// Refutes inclusion in `Pol(ρ)` for a binary central `ρ ≠ σ_{a,b}` that has
/// a centre in `[a, b]`.
pub fn sigma_mismatch_refuter(rho: &Relation, a: usize, b: usize) -> Result<WitnessCertificate> {
    let n = rho.n();
    let s = sigma(a, b, n)?;
    let report = validate(rho)?;
    if !report.symmetric || !report.reflexive || report.trivial || report.centers.is_empty() {
        return Err(Error::precondition("ρ must be a non-trivial binary central relation"));
    }
    if rho == &s {
        return Err(Error::precondition("ρ = σ_{a,b}"));
    }
    let clausal = clausal_for(a, b, n)?;
    if let Some(missing) = s.tuples().find(|t| !rho.contains(t)) {
        let d = *report
            .centers
            .iter()
            .find(|&&d| a <= d && d <= b)
            .ok_or_else(|| Error::precondition(format!("ρ has no centre in [{a}, {b}]")))?;
        let (x, y) = (missing[0], missing[1]);
        let mut table = vec![y; n];
        table[0] = x;
        let f = unary_image_bounded(table, a, b)?;
        return WitnessCertificate::new(f, clausal, rho.clone(), vec![vec![0, d]], "pair of σ missing from ρ");
    }
    let outside: Vec<Vec<usize>> = clausal.complement().tuples().collect();
    let p1 = outside
        .iter()
        .find(|t| rho.contains(t))
        .ok_or_else(|| Error::Verification("σ ⊊ ρ but ρ meets no pair outside R^{a,b}".into()))?;
    let p2 = outside
        .iter()
        .find(|t| !rho.contains(t))
        .ok_or_else(|| Error::precondition("ρ contains every pair outside R^{a,b}"))?;
    let f = complement_mapper(a, b, p1[0], p2[0], p1[1], p2[1], n)?;
    WitnessCertificate::new(f, clausal, rho.clone(), vec![p1.clone()], "complement pair mapper")
}
