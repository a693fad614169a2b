use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{check_ab, clausal_for, ensure_in_pol, WitnessCertificate};
use crate::algebra::{Operation, Relation};
use crate::catalog::validate;
use crate::error::{Error, Result};

/// The two sufficient shapes for a binary operation to preserve `R^{a,b}`.
///
/// `Low`: `f(x,y) ≤ b` whenever `x ≤ b` or `y ≤ b`, and `f(x,y) ≥ a`
/// whenever `x, y ≥ a`. `High` is the dual: `f(x,y) ≥ a` whenever `x ≥ a`
/// or `y ≥ a`, and `f(x,y) ≤ b` whenever `x, y ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateForm {
    Low,
    High,
}

/// Values a template cell may take. Empty when the two constraints clash.
pub fn template_cell_range(form: TemplateForm, a: usize, b: usize, n: usize, x: usize, y: usize) -> RangeInclusive<usize> {
    let (upper, lower) = match form {
        TemplateForm::Low => (x <= b || y <= b, x >= a && y >= a),
        TemplateForm::High => (x <= b && y <= b, x >= a || y >= a),
    };
    let lo = if lower { a } else { 0 };
    let hi = if upper { b } else { n - 1 };
    #[allow(clippy::reversed_empty_ranges)]
    if lo > hi {
        1..=0
    } else {
        lo..=hi
    }
}

/// Fills a template table. Cells bounded only above take `low_default`,
/// cells bounded only below take `high_default`, cells bounded on both
/// sides take the form's own default clamped into `[a, b]`, and free cells
/// take the form's own default (`low_default` for `Low`, `high_default`
/// for `High`). Overrides are applied last and must respect the cell range.
pub fn binary_template(
    a: usize,
    b: usize,
    n: usize,
    form: TemplateForm,
    low_default: usize,
    high_default: usize,
    overrides: &[((usize, usize), usize)],
) -> Result<Operation> {
    check_ab(a, b, n)?;
    let own = match form {
        TemplateForm::Low => low_default,
        TemplateForm::High => high_default,
    };
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let r = template_cell_range(form, a, b, n, x, y);
            if r.is_empty() {
                return Err(Error::params(format!("cell ({x},{y}) has no admissible value")));
            }
            let value = match (*r.start() > 0, *r.end() < n - 1) {
                (false, false) => own,
                (false, true) => low_default,
                (true, false) => high_default,
                (true, true) => own.clamp(a, b),
            };
            if !r.contains(&value) {
                return Err(Error::params(format!(
                    "default {value} at cell ({x},{y}) is outside {r:?}"
                )));
            }
            table.push(value);
        }
    }
    for &((x, y), v) in overrides {
        if x >= n || y >= n || v >= n {
            return Err(Error::ElementOutOfRange { value: x.max(y).max(v), n });
        }
        let r = template_cell_range(form, a, b, n, x, y);
        if !r.contains(&v) {
            return Err(Error::params(format!(
                "override ({x},{y}) ↦ {v} violates the {form:?} template range {r:?}"
            )));
        }
        table[x * n + y] = v;
    }
    let f = Operation::new(n, 2, table)?;
    ensure_in_pol(&f, a, b, "binary template")?;
    Ok(f)
}

fn unary_target(rho: &Relation) -> Result<()> {
    if rho.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: rho.arity(),
        });
    }
    Ok(())
}

fn binary_target(rho: &Relation) -> Result<()> {
    if rho.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: rho.arity(),
        });
    }
    Ok(())
}

/// For `x ∈ ρ` with `b < x < a`: `f(u,v) = a` on `{a..}²`, `f(x,x) = y ∉ ρ`,
/// `0` elsewhere. Takes the least such `x` and the least `y`.
pub fn middle_element_refuter(rho: &Relation, a: usize, b: usize) -> Result<WitnessCertificate> {
    unary_target(rho)?;
    let n = rho.n();
    check_ab(a, b, n)?;
    let members = rho.elements()?;
    let x = *members
        .iter()
        .find(|&&x| b < x && x < a)
        .ok_or_else(|| Error::precondition(format!("no element of ρ strictly between {b} and {a}")))?;
    let y = (0..n)
        .find(|v| !members.contains(v))
        .ok_or_else(|| Error::precondition("ρ = D"))?;
    let f = binary_template(a, b, n, TemplateForm::Low, 0, a, &[((x, x), y)])?;
    WitnessCertificate::new(
        f,
        clausal_for(a, b, n)?,
        rho.clone(),
        vec![vec![x], vec![x]],
        "middle-element binary template",
    )
}

/// For `a - b ≥ 2` and reflexive `Δ ⊊ ρ ⊊ D²`: `g(w,z) = 0` if `z ≤ b`,
/// `n-1` if `z ≥ a`, `u` if `b < z < a` and `w = x`, `v` otherwise. Refutes
/// with columns `(x,y)` and `(z,z)` for the least `z` in `(b, a)`.
pub fn reflexive_refuter(
    rho: &Relation,
    a: usize,
    b: usize,
    xy: (usize, usize),
    uv: (usize, usize),
) -> Result<WitnessCertificate> {
    binary_target(rho)?;
    let n = rho.n();
    check_ab(a, b, n)?;
    if a < b + 2 {
        return Err(Error::precondition(format!("needs a - b ≥ 2, got a={a}, b={b}")));
    }
    let report = validate(rho)?;
    if !report.reflexive || rho.is_full() || rho == &Relation::diagonal(n)? {
        return Err(Error::precondition("ρ must be reflexive with Δ ⊊ ρ ⊊ D²"));
    }
    let (x, y) = xy;
    let (u, v) = uv;
    if x == y || !rho.contains(&[x, y]) {
        return Err(Error::precondition(format!("({x},{y}) is not in ρ ∖ Δ")));
    }
    if u >= n || v >= n || rho.contains(&[u, v]) {
        return Err(Error::precondition(format!("({u},{v}) is not in D² ∖ ρ")));
    }
    let g = Operation::from_fn(n, 2, |t| {
        let (w, z) = (t[0], t[1]);
        if z <= b {
            0
        } else if z >= a {
            n - 1
        } else if w == x {
            u
        } else {
            v
        }
    })?;
    ensure_in_pol(&g, a, b, "reflexive refuter")?;
    let z = b + 1;
    WitnessCertificate::new(
        g,
        clausal_for(a, b, n)?,
        rho.clone(),
        vec![vec![x, y], vec![z, z]],
        "reflexive relation refuter",
    )
}

/// [`reflexive_refuter`] with the lexicographically least pairs.
pub fn reflexive_refuter_least(rho: &Relation, a: usize, b: usize) -> Result<WitnessCertificate> {
    binary_target(rho)?;
    let xy = rho
        .tuples()
        .find(|t| t[0] != t[1])
        .ok_or_else(|| Error::precondition("ρ ⊆ Δ"))?;
    let uv = rho
        .complement()
        .tuples()
        .next()
        .ok_or_else(|| Error::precondition("ρ = D²"))?;
    reflexive_refuter(rho, a, b, (xy[0], xy[1]), (uv[0], uv[1]))
}

/// The two binary operations used against equivalences other than the
/// two-block one:
/// `f(b+1,0) = 0`, `f = a` on `{b+1..}²`, `f = b` elsewhere;
/// `g(a-1,n-1) = n-1`, `g = b` on `{0..a-1}²`, `g = a` elsewhere.
pub fn equivalence_refuters(a: usize, b: usize, n: usize) -> Result<(Operation, Operation)> {
    check_ab(a, b, n)?;
    if !(0 < a && a <= b + 1 && b + 1 < n) {
        return Err(Error::params(format!("needs 0 < a ≤ b+1 ≤ n-1, got a={a}, b={b}, n={n}")));
    }
    let f = binary_template(a, b, n, TemplateForm::Low, b, a, &[((b + 1, 0), 0)])?;
    let g = binary_template(a, b, n, TemplateForm::High, b, a, &[((a - 1, n - 1), n - 1)])?;
    Ok((f, g))
}

/// For `a - b ≤ 1` and a binary central `ρ` with centre `c < a` or `c > b`.
pub fn central_refuter(rho: &Relation, c: usize, a: usize, b: usize) -> Result<WitnessCertificate> {
    binary_target(rho)?;
    let n = rho.n();
    check_ab(a, b, n)?;
    if a > b + 1 {
        return Err(Error::precondition(format!("needs a - b ≤ 1, got a={a}, b={b}")));
    }
    let report = validate(rho)?;
    if !report.symmetric || !report.reflexive || report.trivial || !report.centers.contains(&c) {
        return Err(Error::precondition(format!("ρ is not a non-trivial binary central relation with centre {c}")));
    }
    if !(c < a || c > b) {
        return Err(Error::precondition(format!("centre {c} lies in [{a}, {b}]")));
    }
    let d = if c < a { n - 1 } else { 0 };
    let first = rho.complement().tuples().next().expect("ρ ≠ D²");
    let (mut u, mut v) = (first[0], first[1]);
    #[derive(PartialEq)]
    enum Case {
        Low,
        High,
        Mixed,
    }
    let case = if u <= b && v <= b {
        Case::Low
    } else if u >= a && v >= a {
        Case::High
    } else {
        if u > b {
            std::mem::swap(&mut u, &mut v);
        }
        Case::Mixed
    };
    let z = match case {
        Case::Mixed => c,
        Case::Low => [c, d].into_iter().find(|&z| z < a).expect("c < a or d = 0 < a"),
        Case::High => [c, d].into_iter().find(|&z| z > b).expect("c > b or d = n-1 > b"),
    };
    let f = Operation::from_fn(n, 2, |t| {
        let (x, y) = (t[0], t[1]);
        let at = (x, y) == (c, z);
        match case {
            Case::Low if at => v,
            Case::Low if x >= a && y >= a => x.min(y),
            Case::Low => u,
            Case::High if at => v,
            Case::High if x <= b && y <= b => x.max(y),
            Case::High => u,
            Case::Mixed if c < a => {
                if at {
                    u
                } else if x <= b && y <= b {
                    x.max(y)
                } else {
                    v
                }
            }
            Case::Mixed => {
                if at {
                    v
                } else if x >= a && y >= a {
                    x.min(y)
                } else {
                    u
                }
            }
        }
    })?;
    ensure_in_pol(&f, a, b, "central refuter")?;
    WitnessCertificate::new(
        f,
        clausal_for(a, b, n)?,
        rho.clone(),
        vec![vec![c, d], vec![z, z]],
        "off-interval centre refuter",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{all_operations, pol_k, preserves, Budget};
    use crate::catalog::{enumerate_class, rho_c, two_block_equivalence, RelationClass};
    use crate::clausal::binary_clausal;
    use crate::witness::testing::{dual_op, dual_rel};

    #[test]
    fn template_examples() {
        let f = binary_template(2, 0, 3, TemplateForm::Low, 0, 2, &[((1, 1), 1)]).unwrap();
        assert_eq!(f.table(), &[0, 0, 0, 0, 1, 0, 0, 0, 2]);

        let f = binary_template(1, 1, 3, TemplateForm::Low, 0, 2, &[]).unwrap();
        assert_eq!(f.eval(&[1, 1]).unwrap(), 1);
        assert!(binary_template(1, 1, 3, TemplateForm::Low, 0, 2, &[((1, 1), 0)]).is_err());

        let f = binary_template(3, 0, 4, TemplateForm::Low, 0, 3, &[((1, 1), 0), ((2, 2), 0)]).unwrap();
        assert_eq!(f.eval(&[1, 1]).unwrap(), 0);
        assert_eq!(f.eval(&[3, 3]).unwrap(), 3);
    }

    fn template_family(a: usize, b: usize, n: usize, form: TemplateForm) -> Vec<Operation> {
        all_operations(n, 2, Budget::default())
            .unwrap()
            .filter(|f| {
                (0..n).all(|x| (0..n).all(|y| template_cell_range(form, a, b, n, x, y).contains(&f.eval(&[x, y]).unwrap())))
            })
            .collect()
    }

    #[test]
    fn templates_lie_in_pol2_at_three() {
        for a in 0..3 {
            for b in 0..3 {
                let pol: std::collections::HashSet<_> =
                    pol_k(3, &[binary_clausal(a, b, 3).unwrap()], 2, Budget::default()).unwrap().into_iter().collect();
                for form in [TemplateForm::Low, TemplateForm::High] {
                    for f in template_family(a, b, 3, form) {
                        assert!(pol.contains(&f), "{form:?} a={a} b={b} {f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn high_template_is_dual_of_low() {
        for n in 2..=4 {
            for a in 0..n {
                for b in 0..n {
                    for x in 0..n {
                        for y in 0..n {
                            let lo = template_cell_range(TemplateForm::Low, a, b, n, x, y);
                            let hi = template_cell_range(TemplateForm::High, n - 1 - b, n - 1 - a, n, n - 1 - x, n - 1 - y);
                            let flipped: Vec<usize> = lo.map(|v| n - 1 - v).rev().collect();
                            assert_eq!(flipped, hi.collect::<Vec<_>>());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn middle_element_examples() {
        let c = middle_element_refuter(&Relation::unary(3, [1]).unwrap(), 2, 0).unwrap();
        assert_eq!(c.witness.eval(&[1, 1]).unwrap(), 0);
        assert!(c.recheck());
        let c = middle_element_refuter(&Relation::unary(4, [0, 2]).unwrap(), 3, 0).unwrap();
        assert_eq!(c.witness.eval(&[2, 2]).unwrap(), 1);
        assert!(middle_element_refuter(&Relation::unary(3, [0, 2]).unwrap(), 2, 0).is_err());
    }

    #[test]
    fn reflexive_examples() {
        let theta = Relation::from_predicate(3, 2, |t| (t[0] == 0) == (t[1] == 0)).unwrap();
        let c = reflexive_refuter(&theta, 2, 0, (1, 2), (0, 1)).unwrap();
        assert_eq!(c.witness.eval(&[1, 1]).unwrap(), 0);
        assert_eq!(c.witness.eval(&[2, 1]).unwrap(), 1);
        assert_eq!(c.violation.image, vec![0, 1]);

        let le = Relation::canonical_order(4).unwrap();
        assert!(reflexive_refuter(&le, 3, 0, (0, 1), (1, 0)).unwrap().recheck());
        assert!(reflexive_refuter(&theta, 1, 0, (1, 2), (0, 1)).is_err());
    }

    #[test]
    fn equivalence_refuter_tables() {
        let (f, g) = equivalence_refuters(1, 1, 3).unwrap();
        assert_eq!(f.table(), &[1, 1, 1, 1, 1, 1, 0, 1, 1]);
        assert!(g.eval(&[0, 2]).unwrap() >= 1);

        let (f, _) = equivalence_refuters(1, 0, 3).unwrap();
        assert_eq!(f.table(), &[0, 0, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(f.eval(&[1, 0]).unwrap(), 0);

        let (_, g) = equivalence_refuters(2, 1, 3).unwrap();
        assert_eq!(g.table(), &[1, 1, 2, 1, 1, 2, 2, 2, 2]);

        assert!(equivalence_refuters(0, 0, 3).is_err());
        assert!(equivalence_refuters(3, 0, 4).is_err());
    }

    #[test]
    fn f_and_g_are_mutual_duals() {
        for n in 3usize..=6 {
            for a in 1..n {
                for b in a.saturating_sub(1)..n - 1 {
                    let (f, _) = equivalence_refuters(a, b, n).unwrap();
                    let (_, g) = equivalence_refuters(n - 1 - b, n - 1 - a, n).unwrap();
                    assert_eq!(dual_op(&f), g, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn equivalence_refuters_keep_the_two_block_equivalence() {
        for n in 3..=5 {
            for b in 0..n - 1 {
                let (f, g) = equivalence_refuters(b + 1, b, n).unwrap();
                let theta = two_block_equivalence(b, n).unwrap();
                assert!(preserves(&f, &theta).unwrap() && preserves(&g, &theta).unwrap());
            }
        }
    }

    #[test]
    fn central_examples() {
        let c = central_refuter(&rho_c(0, 3).unwrap(), 0, 1, 0).unwrap();
        assert!(c.recheck());
        assert_eq!(c.violation.columns[1], vec![2, 2]);

        let c = central_refuter(&rho_c(2, 3).unwrap(), 2, 2, 1).unwrap();
        assert_eq!(c.violation.columns[1], vec![0, 0]);

        assert!(central_refuter(&rho_c(1, 3).unwrap(), 1, 1, 1).is_err());
    }

    #[test]
    fn central_refuter_covers_off_interval_centres() {
        for n in 3..=5 {
            let rels = enumerate_class(RelationClass::BinaryCentral, n, Budget::default()).unwrap();
            for a in 1..n {
                for b in a.saturating_sub(1)..n - 1 {
                    for rho in &rels {
                        for &c in &validate(rho).unwrap().centers {
                            if c < a || c > b {
                                let cert = central_refuter(rho, c, a, b).unwrap();
                                assert!(cert.recheck());
                                assert!(preserves(&dual_op(&cert.witness), &dual_rel(&cert.clausal)).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
