use std::ops::{ControlFlow, RangeInclusive};

use super::{check_ab, clausal_for, template_cell_range, TemplateForm, WitnessCertificate};
use crate::algebra::{find_violation, unary_set_preserved, Budget, Operation, Relation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Box<WitnessCertificate>),
    /// Every family was searched without a hit.
    Exhausted,
    /// No hit, and at least one family was skipped for size.
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn certificate(self) -> Option<WitnessCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(*c),
            _ => None,
        }
    }
}

struct Family {
    name: &'static str,
    arity: usize,
    ranges: Vec<RangeInclusive<usize>>,
    accept: Box<dyn Fn(&Operation) -> bool>,
}

fn families(a: usize, b: usize, n: usize) -> Vec<Family> {
    let all = vec![0..=n - 1; n];
    let low: Vec<bool> = (0..n).map(|x| x <= b).collect();
    let high: Vec<bool> = (0..n).map(|x| x >= a).collect();
    let template = |form| {
        (0..n * n)
            .map(|c| template_cell_range(form, a, b, n, c / n, c % n))
            .collect::<Vec<_>>()
    };
    // g(x,y) ≤ b when the guiding argument is ≤ b, ≥ a when it is ≥ a
    let guided = |second: bool| {
        (0..n * n)
            .map(|c| {
                let g = if second { c % n } else { c / n };
                let lo = if g >= a { a } else { 0 };
                let hi = if g <= b { b } else { n - 1 };
                lo..=hi
            })
            .collect::<Vec<_>>()
    };
    vec![
        Family {
            name: "image-bounded unary",
            arity: 1,
            ranges: all.clone(),
            accept: Box::new(move |f| {
                let img = f.image();
                img.iter().all(|&v| v <= b) || img.iter().all(|&v| v >= a)
            }),
        },
        Family {
            name: "interval-preserving unary",
            arity: 1,
            ranges: all,
            accept: Box::new(move |f| unary_set_preserved(f, &low) && unary_set_preserved(f, &high)),
        },
        Family {
            name: "low binary template",
            arity: 2,
            ranges: template(TemplateForm::Low),
            accept: Box::new(|_| true),
        },
        Family {
            name: "high binary template",
            arity: 2,
            ranges: template(TemplateForm::High),
            accept: Box::new(|_| true),
        },
        Family {
            name: "second-argument guided binary",
            arity: 2,
            ranges: guided(true),
            accept: Box::new(|_| true),
        },
        Family {
            name: "first-argument guided binary",
            arity: 2,
            ranges: guided(false),
            accept: Box::new(|_| true),
        },
    ]
}

fn visit_tables(ranges: &[RangeInclusive<usize>], mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let mut table: Vec<usize> = ranges.iter().map(|r| *r.start()).collect();
    loop {
        if visit(&table).is_break() {
            return;
        }
        let mut pos = table.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if table[pos] < *ranges[pos].end() {
                table[pos] += 1;
                break;
            }
            table[pos] = *ranges[pos].start();
        }
    }
}

/// Searches operations known to preserve `R^{a,b}` for one that breaks
/// `target`. Families are tried in a fixed order and each is walked in
/// lexicographic table order; the first hit is returned.
pub fn family_search(a: usize, b: usize, target: &Relation, budget: Budget) -> Result<SearchOutcome> {
    let n = target.n();
    check_ab(a, b, n)?;
    let clausal = clausal_for(a, b, n)?;
    let mut skipped = false;
    for family in families(a, b, n) {
        let bits: f64 = family.ranges.iter().map(|r| (r.clone().count() as f64).log2()).sum();
        if budget.check(bits).is_err() {
            skipped = true;
            continue;
        }
        let mut hit: Option<Operation> = None;
        let mut failure: Option<Error> = None;
        visit_tables(&family.ranges, |table| {
            let f = match Operation::new(n, family.arity, table.to_vec()) {
                Ok(f) => f,
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            };
            if !(family.accept)(&f) {
                return ControlFlow::Continue(());
            }
            match find_violation(&f, target) {
                Ok(Some(_)) => {
                    hit = Some(f);
                    ControlFlow::Break(())
                }
                Ok(None) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some(f) = hit {
            let cert = WitnessCertificate::search(f, clausal, target.clone(), family.name)?
                .expect("violation found during search");
            return Ok(SearchOutcome::Found(Box::new(cert)));
        }
    }
    Ok(if skipped {
        SearchOutcome::BudgetExceeded
    } else {
        SearchOutcome::Exhausted
    })
}
