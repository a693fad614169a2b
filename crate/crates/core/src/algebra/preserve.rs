//! The preservation relation `f ⊳ ρ` and bounded-arity `Pol`/`Inv`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::algebra::tuple::{decode_tuple, encode_unchecked, tuple_count};
use crate::algebra::{Operation, Relation};
use crate::error::{Error, Result};

/// A failed instance of preservation: `k` member tuples whose componentwise
/// image is not a member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counterexample {
    pub columns: Vec<Vec<usize>>,
    pub image: Vec<usize>,
}

impl Counterexample {
    /// Re-derives the image from `f` and checks every column is in `rel`
    /// and the image is not.
    pub fn is_genuine(&self, f: &Operation, rel: &Relation) -> bool {
        self.columns.len() == f.arity()
            && self.columns.iter().all(|c| rel.contains(c))
            && f.apply_componentwise(&self.columns).ok().as_ref() == Some(&self.image)
            && !rel.contains(&self.image)
    }
}

fn same_domain(f: &Operation, rel: &Relation) -> Result<()> {
    if f.n() != rel.n() {
        return Err(Error::DomainMismatch {
            left: f.n(),
            right: rel.n(),
        });
    }
    Ok(())
}

/// The lexicographically least violating column choice, if any. The first
/// column is the most significant position in that order.
pub fn find_violation(f: &Operation, rel: &Relation) -> Result<Option<Counterexample>> {
    same_domain(f, rel)?;
    let n = rel.n();
    let m = rel.arity();
    let k = f.arity();
    let members: Vec<Vec<usize>> = rel.tuples().collect();
    if members.is_empty() {
        return Ok(None);
    }
    let mut choice = vec![0usize; k];
    let mut image = vec![0usize; m];
    loop {
        for (i, slot) in image.iter_mut().enumerate() {
            let code = encode_unchecked(choice.iter().map(|&j| members[j][i]), n);
            *slot = f.eval_code(code);
        }
        if !rel.contains_code(encode_unchecked(image.iter().copied(), n)) {
            return Ok(Some(Counterexample {
                columns: choice.iter().map(|&j| members[j].clone()).collect(),
                image,
            }));
        }
        // odometer, last column fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < members.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

pub fn preserves(f: &Operation, rel: &Relation) -> Result<bool> {
    Ok(find_violation(f, rel)?.is_none())
}

/// Limit on the size of an exhaustive search space, in bits
/// (`log₂` of the number of candidates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_log2_candidates: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_log2_candidates: 24.0,
        }
    }
}

impl Budget {
    pub fn bits(max_log2_candidates: f64) -> Self {
        Self { max_log2_candidates }
    }

    pub fn unlimited() -> Self {
        Self {
            max_log2_candidates: f64::INFINITY,
        }
    }

    pub fn check(&self, needed_log2: f64) -> Result<()> {
        if needed_log2 > self.max_log2_candidates + 1e-9 {
            return Err(Error::BudgetExceeded {
                needed: needed_log2,
                allowed: self.max_log2_candidates,
            });
        }
        Ok(())
    }
}

fn check_domains(n: usize, rels: &[Relation]) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    for r in rels {
        if r.n() != n {
            return Err(Error::DomainMismatch { left: n, right: r.n() });
        }
    }
    Ok(())
}

/// Every `k`-ary operation table on `n` elements, in lexicographic order.
pub fn all_operations(n: usize, k: usize, budget: Budget) -> Result<impl Iterator<Item = Operation>> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let len = tuple_count(n, k)?;
    budget.check(len as f64 * (n as f64).log2())?;
    let mut next = Some(vec![0usize; len]);
    Ok(std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < n {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(Operation::new(n, k, current).expect("valid table"))
    }))
}

struct Constraint {
    rel: usize,
    cells: Vec<usize>,
}

struct PolSearch<'a> {
    n: usize,
    rels: &'a [Relation],
    // constraints grouped by the largest table cell they read
    by_last_cell: Vec<Vec<Constraint>>,
    table: Vec<usize>,
}

impl PolSearch<'_> {
    fn satisfied(&self, c: &Constraint) -> bool {
        let code = encode_unchecked(c.cells.iter().map(|&cell| self.table[cell]), self.n);
        self.rels[c.rel].contains_code(code)
    }

    fn descend<F>(&mut self, pos: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if pos == self.table.len() {
            return visit(&self.table);
        }
        for v in 0..self.n {
            self.table[pos] = v;
            if self.by_last_cell[pos].iter().all(|c| self.satisfied(c)) {
                self.descend(pos + 1, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Walks `Pol_k(rels)` in lexicographic table order with prefix pruning.
/// Returns `false` if the visitor stopped early.
pub fn pol_k_visit<F>(n: usize, rels: &[Relation], k: usize, budget: Budget, mut visit: F) -> Result<bool>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    check_domains(n, rels)?;
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let len = tuple_count(n, k)?;
    budget.check(len as f64 * (n as f64).log2())?;

    let mut by_last_cell: Vec<Vec<Constraint>> = (0..len).map(|_| Vec::new()).collect();
    for (ri, rel) in rels.iter().enumerate() {
        let members: Vec<Vec<usize>> = rel.tuples().collect();
        if members.is_empty() {
            continue;
        }
        budget.check((members.len() as f64).log2() * k as f64)?;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut choice = vec![0usize; k];
        'choices: loop {
            let cells: Vec<usize> = (0..rel.arity())
                .map(|i| encode_unchecked(choice.iter().map(|&j| members[j][i]), n))
                .collect();
            if seen.insert(cells.clone()) {
                let last = *cells.iter().max().expect("arity ≥ 1");
                by_last_cell[last].push(Constraint { rel: ri, cells });
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'choices;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < members.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    let mut search = PolSearch {
        n,
        rels,
        by_last_cell,
        table: vec![0; len],
    };
    Ok(search.descend(0, &mut visit).is_continue())
}

/// `Pol_k(rels)`: all `k`-ary operations preserving every relation, in
/// lexicographic table order.
pub fn pol_k(n: usize, rels: &[Relation], k: usize, budget: Budget) -> Result<Vec<Operation>> {
    let mut out = Vec::new();
    pol_k_visit(n, rels, k, budget, |t| {
        out.push(Operation::new(n, k, t.to_vec()).expect("valid table"));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `Inv_m(ops)`: all `m`-ary relations preserved by every operation, ordered
/// by membership bitmask.
pub fn inv_m(n: usize, ops: &[Operation], m: usize, budget: Budget) -> Result<Vec<Relation>> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    if m == 0 {
        return Err(Error::ZeroArity);
    }
    for f in ops {
        if f.n() != n {
            return Err(Error::DomainMismatch { left: n, right: f.n() });
        }
    }
    let cells = tuple_count(n, m)?;
    budget.check(cells as f64)?;
    if cells >= 64 {
        return Err(Error::TooLarge { n, arity: m });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells) {
        let rel = Relation::from_codes(n, m, (0..cells).filter(|&c| mask >> c & 1 == 1))?;
        let mut ok = true;
        for f in ops {
            if !preserves(f, &rel)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Decodes a table cell back into its argument tuple.
pub fn cell_arguments(op: &Operation, code: usize) -> Vec<usize> {
    decode_tuple(code, op.n(), op.arity())
}

/// Whether a unary `f` maps the set (given as a membership mask) into itself.
pub(crate) fn unary_set_preserved(f: &Operation, set: &[bool]) -> bool {
    (0..f.n()).all(|x| !set[x] || set[f.eval_code(x)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r_ab(n: usize, a: usize, b: usize) -> Relation {
        Relation::from_predicate(n, 2, |t| t[0] >= a || t[1] <= b).unwrap()
    }

    #[test]
    fn projections_preserve_everything() {
        for k in 1..=3 {
            for i in 0..k {
                let p = Operation::projection(3, k, i).unwrap();
                for rel in [r_ab(3, 2, 0), Relation::unary(3, [1]).unwrap(), Relation::empty(3, 2).unwrap()] {
                    assert!(preserves(&p, &rel).unwrap());
                }
            }
        }
    }

    #[test]
    fn constant_one_breaks_r20() {
        let c1 = Operation::constant(3, 1).unwrap();
        let cx = find_violation(&c1, &r_ab(3, 2, 0)).unwrap().unwrap();
        // (0,0) is the least member; its image (1,1) already fails.
        assert_eq!(cx.columns, vec![vec![0, 0]]);
        assert_eq!(cx.image, vec![1, 1]);
        assert!(cx.is_genuine(&c1, &r_ab(3, 2, 0)));

        let c0 = Operation::constant(3, 0).unwrap();
        assert!(preserves(&c0, &r_ab(3, 2, 0)).unwrap());
    }

    #[test]
    fn empty_relation_is_preserved_vacuously() {
        for f in all_operations(2, 1, Budget::default()).unwrap() {
            assert!(preserves(&f, &Relation::empty(2, 3).unwrap()).unwrap());
        }
    }

    #[test]
    fn domain_mismatch() {
        let f = Operation::identity(2).unwrap();
        assert!(matches!(
            preserves(&f, &Relation::full(3, 1).unwrap()),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn pol_examples() {
        let nabla = Relation::full(2, 2).unwrap();
        assert_eq!(pol_k(2, &[nabla], 1, Budget::default()).unwrap().len(), 4);

        let tables: Vec<_> = pol_k(2, &[r_ab(2, 1, 0)], 1, Budget::default())
            .unwrap()
            .into_iter()
            .map(|f| f.table().to_vec())
            .collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn pol_r11_unary_count_matches_brute_force() {
        let r = r_ab(3, 1, 1);
        let brute = all_operations(3, 1, Budget::default())
            .unwrap()
            .filter(|f| preserves(f, &r).unwrap())
            .count();
        // frozen from the brute-force count above
        assert_eq!(brute, 16);
        assert_eq!(pol_k(3, &[r], 1, Budget::default()).unwrap().len(), 16);
    }

    #[test]
    fn budget_guard() {
        let err = pol_k(4, &[], 3, Budget::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(matches!(
            pol_k(3, &[Relation::full(2, 1).unwrap()], 1, Budget::default()),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn inv_examples() {
        let all = inv_m(2, &[], 1, Budget::default()).unwrap();
        assert_eq!(all.len(), 4);

        let c0 = Operation::constant(2, 0).unwrap();
        let inv = inv_m(2, &[c0], 1, Budget::default()).unwrap();
        let expected = vec![
            Relation::empty(2, 1).unwrap(),
            Relation::unary(2, [0]).unwrap(),
            Relation::full(2, 1).unwrap(),
        ];
        assert_eq!(inv, expected);

        let unary: Vec<_> = all_operations(2, 1, Budget::default()).unwrap().collect();
        let inv2 = inv_m(2, &unary, 2, Budget::default()).unwrap();
        let mut got: Vec<_> = inv2;
        got.sort();
        let mut expected = vec![
            Relation::empty(2, 2).unwrap(),
            Relation::diagonal(2).unwrap(),
            Relation::full(2, 2).unwrap(),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }
}
