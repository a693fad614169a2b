//! The unique maximal clone above each maximal C-clone `Pol(R^{a,b})`,
//! inclusion certificates for it, refutations for every other candidate, and
//! exhaustive verification over the enumerated classes at small `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{pol_k_visit, preserves, Budget, Operation, Relation};
use crate::catalog::{
    enumerate_class, sigma, two_block_equivalence, unary_interval_union, validate, BoundedOrder, Classification,
    RelationClass,
};
use crate::clausal::{binary_clausal, MaxCCloneParams};
use crate::error::{Error, Result};
use crate::witness::{
    central_refuter, equivalence_refuter, family_search, order_refuter, reflexive_refuter_least, sigma_mismatch_refuter,
    unary_refuter, SearchOutcome, WitnessCertificate,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloneKind {
    UnaryNonTrivial,
    TwoBlockEquivalence,
    BinaryCentral,
    BooleanMonotone,
}

impl fmt::Display for CloneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CloneKind::UnaryNonTrivial => "unary-non-trivial",
            CloneKind::TwoBlockEquivalence => "two-block-equivalence",
            CloneKind::BinaryCentral => "binary-central",
            CloneKind::BooleanMonotone => "boolean-monotone",
        })
    }
}

/// The maximal clone `Pol(relation)` containing `Pol(R^{a,b})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalCloneDescriptor {
    pub kind: CloneKind,
    pub relation: Relation,
    pub params: MaxCCloneParams,
}

pub fn classify(a: usize, b: usize, n: usize) -> Result<MaximalCloneDescriptor> {
    let params = MaxCCloneParams::new(a, b, n)?;
    let (kind, relation) = if n == 2 {
        (CloneKind::BooleanMonotone, Relation::canonical_order(2)?)
    } else if params.gap() > 1 {
        (CloneKind::UnaryNonTrivial, unary_interval_union(a, b, n)?)
    } else if params.gap() == 1 {
        (CloneKind::TwoBlockEquivalence, two_block_equivalence(b, n)?)
    } else {
        (CloneKind::BinaryCentral, sigma(a, b, n)?)
    };
    Ok(MaximalCloneDescriptor { kind, relation, params })
}

/// The designated relation rebuilt from `R^{a,b}` by intersection with its
/// inverse (and a diagonal restriction in the unary regime), compared with
/// the generator output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionCertificate {
    pub params: MaxCCloneParams,
    pub constructed: Relation,
    pub expected: Relation,
    pub equal: bool,
}

/// On two elements `R^{1,0}` is the order `≥`, so its inverse is the
/// canonical order and the construction is a plain inversion.
pub fn inclusion_certificate(a: usize, b: usize, n: usize) -> Result<InclusionCertificate> {
    let designated = classify(a, b, n)?;
    let r = binary_clausal(a, b, n)?;
    let constructed = if n == 2 {
        r.inverse()?
    } else {
        let both = r.intersect(&r.inverse()?)?;
        if designated.kind == CloneKind::UnaryNonTrivial {
            both.diagonal_restriction()?
        } else {
            both
        }
    };
    let equal = constructed == designated.relation;
    if !equal {
        return Err(Error::Verification(format!(
            "{}: constructed {constructed:?} differs from {:?}",
            designated.params, designated.relation
        )));
    }
    Ok(InclusionCertificate {
        params: designated.params,
        constructed,
        expected: designated.relation,
        equal,
    })
}

/// Whether `target` describes the same clone as the designated relation by
/// being its inverse.
fn same_clone(designated: &Relation, target: &Relation) -> bool {
    designated.arity() == 2 && target.arity() == 2 && designated.inverse().ok().as_ref() == Some(target)
}

fn dispatch(a: usize, b: usize, target: &Relation) -> Result<WitnessCertificate> {
    let n = target.n();
    match target.arity() {
        1 => unary_refuter(target, a, b),
        2 => {
            let report = validate(target)?;
            match report.classification {
                Classification::Equivalence => equivalence_refuter(target, a, b),
                Classification::BinaryCentral => {
                    if a >= b + 2 {
                        reflexive_refuter_least(target, a, b)
                    } else if let Some(&c) = report.centers.iter().find(|&&c| c < a || c > b) {
                        central_refuter(target, c, a, b)
                    } else {
                        sigma_mismatch_refuter(target, a, b)
                    }
                }
                Classification::BoundedOrder if n >= 3 => order_refuter(&BoundedOrder::new(target.clone())?, a, b),
                Classification::Trivial => Err(Error::precondition("trivial relations are preserved by everything")),
                _ => Err(Error::Unsupported("no dedicated construction".into())),
            }
        }
        _ => Err(Error::Unsupported("no dedicated construction".into())),
    }
}

/// A verified witness that `Pol(R^{a,b}) ⊄ Pol(target)`. Uses the dedicated
/// construction for the target's class and falls back to [`family_search`].
pub fn refute_inclusion(a: usize, b: usize, n: usize, target: &Relation, budget: Budget) -> Result<WitnessCertificate> {
    let designated = classify(a, b, n)?;
    if target.n() != n {
        return Err(Error::DomainMismatch { left: n, right: target.n() });
    }
    if target == &designated.relation || same_clone(&designated.relation, target) {
        return Err(Error::precondition("target describes the designated maximal clone"));
    }
    if target.arity() <= 2 && target.is_trivial()? {
        return Err(Error::precondition("trivial relations are preserved by everything"));
    }
    match dispatch(a, b, target) {
        Ok(cert) => return Ok(cert),
        Err(Error::Unsupported(_) | Error::NoWitness(_) | Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }
    match family_search(a, b, target, budget)? {
        SearchOutcome::Found(cert) => Ok(*cert),
        SearchOutcome::Exhausted => Err(Error::NoWitness(format!("{} against {target:?}: families exhausted", designated.params))),
        SearchOutcome::BudgetExceeded => Err(Error::NoWitness(format!("{} against {target:?}: none (budget)", designated.params))),
    }
}

/// `Pol_j(R^{a,b}) ⊆ Pol_j(target)` for every `j ≤ k`, by enumeration.
pub fn brute_force_subset_check(a: usize, b: usize, n: usize, target: &Relation, k: usize, budget: Budget) -> Result<bool> {
    let r = binary_clausal(a, b, n)?;
    for j in 1..=k {
        let mut failure = None;
        let complete = pol_k_visit(n, std::slice::from_ref(&r), j, budget, |table| {
            let f = Operation::new(n, j, table.to_vec()).expect("valid table");
            match preserves(&f, target) {
                Ok(true) => ControlFlow::Continue(()),
                Ok(false) => ControlFlow::Break(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if !complete {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// The designated relation; carries the inclusion certificate.
    Included { certificate: InclusionCertificate },
    /// Another relation describing the designated clone.
    SameClone { reason: String },
    Excluded { certificate: Box<WitnessCertificate> },
}

impl Verdict {
    pub fn is_included(&self) -> bool {
        matches!(self, Verdict::Included { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub relation: Relation,
    pub class: Option<RelationClass>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamRow {
    pub params: MaxCCloneParams,
    pub designated: MaximalCloneDescriptor,
    pub inclusion: InclusionCertificate,
    pub candidates: Vec<CandidateResult>,
}

impl ParamRow {
    pub fn inclusion_count(&self) -> usize {
        self.candidates.iter().filter(|c| c.verdict.is_included()).count()
    }

    pub fn exclusions(&self) -> impl Iterator<Item = &WitnessCertificate> {
        self.candidates.iter().filter_map(|c| match &c.verdict {
            Verdict::Excluded { certificate } => Some(certificate.as_ref()),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub classes: Vec<RelationClass>,
    pub pool_size: usize,
    pub rows: Vec<ParamRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.inclusion.equal && r.inclusion_count() == 1 && r.exclusions().all(WitnessCertificate::recheck)
        })
    }
}

/// The candidate pool: every requested class, deduplicated by value and
/// sorted.
pub fn candidate_pool(n: usize, classes: &[RelationClass], budget: Budget) -> Result<BTreeMap<Relation, RelationClass>> {
    let mut pool = BTreeMap::new();
    for &class in classes {
        for rel in enumerate_class(class, n, budget)? {
            pool.entry(rel).or_insert(class);
        }
    }
    Ok(pool)
}

/// Checks, for every maximal C-clone on `n` elements, that the designated
/// relation is certified and that every other candidate is refuted.
pub fn verify_theorem(n: usize, classes: &[RelationClass], budget: Budget) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::params(format!("verification needs n ≥ 2, got {n}")));
    }
    let pool = candidate_pool(n, classes, budget)?;
    let rows = MaxCCloneParams::all(n)
        .into_par_iter()
        .map(|p| verify_row(p, &pool, budget))
        .collect::<Result<Vec<_>>>()?;
    let report = VerificationReport {
        n,
        classes: classes.to_vec(),
        pool_size: pool.len(),
        rows,
    };
    if let Some(row) = report.rows.iter().find(|r| r.inclusion_count() != 1) {
        return Err(Error::Verification(format!(
            "{}: {} inclusion certificates",
            row.params,
            row.inclusion_count()
        )));
    }
    Ok(report)
}

fn verify_row(p: MaxCCloneParams, pool: &BTreeMap<Relation, RelationClass>, budget: Budget) -> Result<ParamRow> {
    let designated = classify(p.a, p.b, p.n)?;
    let inclusion = inclusion_certificate(p.a, p.b, p.n)?;
    let mut candidates: BTreeMap<Relation, Option<RelationClass>> =
        pool.iter().map(|(r, &c)| (r.clone(), Some(c))).collect();
    candidates.entry(designated.relation.clone()).or_insert_with(|| {
        validate(&designated.relation).ok().and_then(|r| r.classification.class())
    });
    let candidates = candidates
        .into_par_iter()
        .map(|(relation, class)| {
            let verdict = if relation == designated.relation {
                Verdict::Included {
                    certificate: inclusion.clone(),
                }
            } else if same_clone(&designated.relation, &relation) {
                Verdict::SameClone {
                    reason: "inverse of the designated relation".into(),
                }
            } else {
                let certificate = refute_inclusion(p.a, p.b, p.n, &relation, budget)
                    .map_err(|e| Error::Verification(format!("{p}, candidate {relation:?}: {e}")))?;
                if !certificate.recheck() {
                    return Err(Error::Verification(format!("{p}, candidate {relation:?}: certificate failed recheck")));
                }
                Verdict::Excluded {
                    certificate: Box::new(certificate),
                }
            };
            Ok(CandidateResult { relation, class, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParamRow {
        params: p,
        designated,
        inclusion,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let d = classify(1, 0, 2).unwrap();
        assert_eq!(d.kind, CloneKind::BooleanMonotone);
        assert_eq!(d.relation, Relation::canonical_order(2).unwrap());

        let d = classify(2, 0, 3).unwrap();
        assert_eq!(d.kind, CloneKind::UnaryNonTrivial);
        assert_eq!(d.relation, Relation::unary(3, [0, 2]).unwrap());

        let d = classify(1, 0, 3).unwrap();
        assert_eq!(d.kind, CloneKind::TwoBlockEquivalence);
        assert_eq!(d.relation, Relation::from_tuples(3, 2, [[0, 0], [1, 1], [1, 2], [2, 1], [2, 2]]).unwrap());

        assert_eq!(classify(1, 1, 3).unwrap().kind, CloneKind::BinaryCentral);
        assert!(classify(0, 0, 3).is_err());
    }

    #[test]
    fn regime_boundaries() {
        for n in 3..=6 {
            for p in MaxCCloneParams::all(n) {
                let kind = classify(p.a, p.b, p.n).unwrap().kind;
                let expected = match p.gap() {
                    g if g > 1 => CloneKind::UnaryNonTrivial,
                    1 => CloneKind::TwoBlockEquivalence,
                    _ => CloneKind::BinaryCentral,
                };
                assert_eq!(kind, expected);
            }
        }
    }

    #[test]
    fn inclusion_examples() {
        let c = inclusion_certificate(2, 0, 3).unwrap();
        assert_eq!(c.constructed, Relation::unary(3, [0, 2]).unwrap());
        let c = inclusion_certificate(1, 0, 3).unwrap();
        assert_eq!(c.constructed.len(), 5);
        let c = inclusion_certificate(1, 1, 3).unwrap();
        assert_eq!(c.constructed, Relation::from_predicate(3, 2, |t| *t != [0, 2] && *t != [2, 0]).unwrap());
        assert!(inclusion_certificate(1, 0, 2).unwrap().equal);
    }

    #[test]
    fn refute_examples() {
        let b = Budget::default();
        let c = refute_inclusion(1, 1, 3, &crate::catalog::rho_c(0, 3).unwrap(), b).unwrap();
        assert_eq!(c.construction, "off-interval centre refuter");

        let c = refute_inclusion(1, 0, 3, &Relation::unary(3, [0, 1]).unwrap(), b).unwrap();
        assert_eq!(c.witness, Operation::constant(3, 2).unwrap());

        let c = refute_inclusion(2, 0, 3, &Relation::canonical_order(3).unwrap(), b).unwrap();
        assert_eq!(c.construction, "reflexive relation refuter");

        assert!(refute_inclusion(1, 0, 3, &two_block_equivalence(0, 3).unwrap(), b).is_err());
        assert!(refute_inclusion(1, 0, 2, &Relation::canonical_order(2).unwrap().inverse().unwrap(), b).is_err());
    }

    #[test]
    fn raw_relations_fall_back_to_search() {
        // a ternary relation outside every generated class
        let r = Relation::from_tuples(3, 3, [[0, 0, 0], [1, 1, 1], [2, 2, 2], [0, 1, 2]]).unwrap();
        let c = refute_inclusion(1, 0, 3, &r, Budget::default()).unwrap();
        assert!(c.recheck());
    }

    #[test]
    fn subset_check_examples() {
        let b = Budget::default();
        assert!(brute_force_subset_check(1, 0, 3, &two_block_equivalence(0, 3).unwrap(), 2, b).unwrap());
        let other = Relation::from_predicate(3, 2, |t| (t[0] <= 1) == (t[1] <= 1)).unwrap();
        assert!(!brute_force_subset_check(1, 0, 3, &other, 1, b).unwrap());
        assert!(brute_force_subset_check(1, 1, 3, &sigma(1, 1, 3).unwrap(), 2, b).unwrap());
    }

    #[test]
    fn verify_two() {
        let r = verify_theorem(2, &RelationClass::ALL, Budget::default()).unwrap();
        assert_eq!(r.rows.len(), 1);
        let row = &r.rows[0];
        assert_eq!(row.inclusion_count(), 1);
        assert_eq!(row.candidates.iter().filter(|c| matches!(c.verdict, Verdict::SameClone { .. })).count(), 1);
        assert!(r.passed());
    }
}
