//! Clausal relations `R⟨a|b⟩`, maximal C-clone parameters, the reduction of
//! a clausal set to a dominating `R^{a,b}` and the completeness test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{find_violation, Operation, Relation};
use crate::catalog::{sigma, two_block_equivalence, unary_interval_union};
use crate::error::{Error, Result};

/// Parameters `a ∈ D^p`, `b ∈ D^q` of the clausal relation
/// `(x₁ ≥ a₁) ∨ … ∨ (x_p ≥ a_p) ∨ (y₁ ≤ b₁) ∨ … ∨ (y_q ≤ b_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecEnvelope")]
pub struct ClausalSpec {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Deserialize)]
struct SpecEnvelope {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl TryFrom<SpecEnvelope> for ClausalSpec {
    type Error = Error;

    fn try_from(env: SpecEnvelope) -> Result<Self> {
        ClausalSpec::new(env.n, env.a, env.b)
    }
}

impl ClausalSpec {
    pub fn new(n: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::params("clausal relations need p ≥ 1 and q ≥ 1"));
        }
        if let Some(&value) = a.iter().chain(&b).find(|&&v| v >= n) {
            return Err(Error::ElementOutOfRange { value, n });
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn arity(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Some literal is always true (`aᵢ = 0` or `bⱼ = n-1`), so the relation
    /// is all of `D^{p+q}`.
    pub fn is_tautological(&self) -> bool {
        self.a.contains(&0) || self.b.contains(&(self.n - 1))
    }

    pub fn holds(&self, tuple: &[usize]) -> bool {
        let (xs, ys) = tuple.split_at(self.a.len());
        xs.iter().zip(&self.a).any(|(x, a)| x >= a) || ys.iter().zip(&self.b).any(|(y, b)| y <= b)
    }
}

impl fmt::Display for ClausalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "{} {} {} | {} | {}",
            self.n,
            self.a.len(),
            self.b.len(),
            join(&self.a),
            join(&self.b)
        )
    }
}

impl FromStr for ClausalSpec {
    type Err = Error;

    /// Parses `"n p q | a₁ … a_p | b₁ … b_q"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected `n p q | a… | b…`, got {s:?}")));
        }
        let nums = |part: &str| -> Result<Vec<usize>> {
            part.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("not a number: {t:?}"))))
                .collect()
        };
        let header = nums(parts[0])?;
        let [n, p, q] = header[..] else {
            return Err(Error::Parse("header must be `n p q`".into()));
        };
        let a = nums(parts[1])?;
        let b = nums(parts[2])?;
        if a.len() != p || b.len() != q {
            return Err(Error::Parse(format!(
                "header announces p={p}, q={q} but found {} and {} parameters",
                a.len(),
                b.len()
            )));
        }
        ClausalSpec::new(n, a, b)
    }
}

pub fn build_clausal(spec: &ClausalSpec) -> Relation {
    Relation::from_predicate(spec.n, spec.arity(), |t| spec.holds(t)).expect("validated spec")
}

/// `R^{a,b} = {(x, y) : x ≥ a ∨ y ≤ b}` for any `a, b ∈ D`.
pub fn binary_clausal(a: usize, b: usize, n: usize) -> Result<Relation> {
    check_elements(&[a, b], n)?;
    Relation::from_predicate(n, 2, |t| t[0] >= a || t[1] <= b)
}

fn check_elements(values: &[usize], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    match values.iter().find(|&&v| v >= n) {
        Some(&value) => Err(Error::ElementOutOfRange { value, n }),
        None => Ok(()),
    }
}

/// Parameters of a maximal C-clone `Pol(R^{a,b})`: `a ≠ 0`, `b ≠ n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MaxCCloneParams {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl MaxCCloneParams {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if !is_maximal_cclone_params(a, b, n)? {
            return Err(Error::params(format!(
                "(a, b) = ({a}, {b}) on n = {n} needs a ≠ 0 and b ≠ n-1"
            )));
        }
        Ok(Self { a, b, n })
    }

    /// All valid parameter pairs for `n`, sorted by `(a, b)`.
    pub fn all(n: usize) -> Vec<Self> {
        (1..n)
            .flat_map(|a| (0..n.saturating_sub(1)).map(move |b| Self { a, b, n }))
            .collect()
    }

    /// `a - b` as a signed gap; it selects the regime of the unique maximal
    /// clone above `Pol(R^{a,b})`.
    pub fn gap(&self) -> isize {
        self.a as isize - self.b as isize
    }

    pub fn relation(&self) -> Relation {
        build_binary_clausal(self)
    }
}

impl fmt::Display for MaxCCloneParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{{{},{}}} on n={}", self.a, self.b, self.n)
    }
}

pub fn build_binary_clausal(p: &MaxCCloneParams) -> Relation {
    binary_clausal(p.a, p.b, p.n).expect("validated params")
}

pub fn is_maximal_cclone_params(a: usize, b: usize, n: usize) -> Result<bool> {
    check_elements(&[a, b], n)?;
    Ok(a != 0 && b != n - 1)
}

/// For each non-tautological member, the pair `(min aᵢ, max bⱼ)`. Empty iff
/// every member is tautological, in which case `Pol(Q)` is everything.
pub fn dominating_params(specs: &[ClausalSpec]) -> Vec<MaxCCloneParams> {
    specs
        .iter()
        .filter(|s| !s.is_tautological())
        .map(|s| MaxCCloneParams {
            a: *s.a.iter().min().expect("p ≥ 1"),
            b: *s.b.iter().max().expect("q ≥ 1"),
            n: s.n,
        })
        .collect()
}

/// `Pol(Q)` is the clone of all operations exactly when every member of `Q`
/// is tautological.
pub fn is_complete(specs: &[ClausalSpec]) -> bool {
    specs.iter().all(ClausalSpec::is_tautological)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ObstructionKind {
    /// `θ_b` with classes `{0..b}` and `{b+1..n-1}`.
    TwoBlockEquivalence { b: usize },
    /// `σ_{a,b} = {0..b}² ∪ {a..n-1}²`.
    Sigma { a: usize, b: usize },
    /// `{0..b} ∪ {b+k..n-1}`.
    IntervalUnion { b: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub relation: Relation,
}

/// The relations an operation set must all break to generate every operation
/// (for `n ≥ 3`): one per maximal C-clone's unique maximal clone.
pub fn obstruction_relations(n: usize) -> Result<Vec<Obstruction>> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "obstruction list is defined for n ≥ 3, got n = {n}"
        )));
    }
    let mut out = Vec::new();
    for b in 0..n - 1 {
        out.push(Obstruction {
            kind: ObstructionKind::TwoBlockEquivalence { b },
            relation: two_block_equivalence(b, n)?,
        });
    }
    for a in 1..n - 1 {
        for b in a..n - 1 {
            out.push(Obstruction {
                kind: ObstructionKind::Sigma { a, b },
                relation: sigma(a, b, n)?,
            });
        }
    }
    for b in 0..=n - 3 {
        for k in 2..=n - 1 - b {
            out.push(Obstruction {
                kind: ObstructionKind::IntervalUnion { b, k },
                relation: unary_interval_union(b + k, b, n)?,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCheck {
    pub obstruction: Obstruction,
    /// Index into the operation list of the first operation breaking it.
    pub violated_by: Option<usize>,
}

impl ObstructionCheck {
    pub fn violated(&self) -> bool {
        self.violated_by.is_some()
    }
}

/// For every obstruction, which operation of `ops` (if any) fails to
/// preserve it. All obstructions violated is a sufficient condition for the
/// clone generated by `ops` to contain every operation.
pub fn corollary_hypotheses(ops: &[Operation], n: usize) -> Result<Vec<ObstructionCheck>> {
    obstruction_relations(n)?
        .into_iter()
        .map(|obstruction| {
            let mut violated_by = None;
            for (i, f) in ops.iter().enumerate() {
                if find_violation(f, &obstruction.relation)?.is_some() {
                    violated_by = Some(i);
                    break;
                }
            }
            Ok(ObstructionCheck {
                obstruction,
                violated_by,
            })
        })
        .collect()
}

pub fn corollary_hypotheses_hold(ops: &[Operation], n: usize) -> Result<bool> {
    Ok(corollary_hypotheses(ops, n)?.iter().all(ObstructionCheck::violated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{all_operations, Budget};

    fn spec(n: usize, a: &[usize], b: &[usize]) -> ClausalSpec {
        ClausalSpec::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        let r = build_clausal(&spec(3, &[1], &[1]));
        assert_eq!(r.len(), 8);
        assert!(!r.contains(&[0, 2]));

        assert!(build_clausal(&spec(3, &[0], &[0])).is_full());

        let r = build_clausal(&spec(2, &[1, 1], &[0]));
        let missing: Vec<_> = r.complement().tuples().collect();
        assert_eq!(missing, vec![vec![0, 0, 1]]);
    }

    #[test]
    fn binary_examples() {
        let p = MaxCCloneParams::new(1, 0, 2).unwrap();
        assert_eq!(
            build_binary_clausal(&p),
            Relation::binary(2, [(0, 0), (1, 0), (1, 1)]).unwrap()
        );
        let p = MaxCCloneParams::new(2, 0, 3).unwrap();
        let missing: Vec<_> = build_binary_clausal(&p).complement().tuples().collect();
        assert_eq!(missing, vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]);
        let p = MaxCCloneParams::new(1, 1, 3).unwrap();
        let missing: Vec<_> = build_binary_clausal(&p).complement().tuples().collect();
        assert_eq!(missing, vec![vec![0, 2]]);
    }

    #[test]
    fn maximality() {
        assert!(is_maximal_cclone_params(1, 0, 2).unwrap());
        assert!(!is_maximal_cclone_params(0, 0, 3).unwrap());
        assert!(!is_maximal_cclone_params(2, 2, 3).unwrap());
        assert!(matches!(
            is_maximal_cclone_params(3, 0, 3),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert_eq!(MaxCCloneParams::all(3).len(), 4);
        assert_eq!(MaxCCloneParams::all(4).len(), 9);
    }

    #[test]
    fn dominating_examples() {
        let d = dominating_params(&[spec(3, &[2, 1], &[0, 1])]);
        assert_eq!(d, vec![MaxCCloneParams { a: 1, b: 1, n: 3 }]);
        assert!(dominating_params(&[spec(3, &[0], &[0])]).is_empty());
        let d = dominating_params(&[spec(3, &[1], &[0]), spec(3, &[2], &[1])]);
        assert_eq!(
            d,
            vec![MaxCCloneParams { a: 1, b: 0, n: 3 }, MaxCCloneParams { a: 2, b: 1, n: 3 }]
        );
    }

    #[test]
    fn completeness_examples() {
        assert!(is_complete(&[]));
        assert!(!is_complete(&[spec(3, &[1], &[0])]));
        assert!(is_complete(&[spec(3, &[0, 2], &[1])]));

        // the swap 0↔1 is a unary operation outside Pol(R^{1,0})
        let r10 = build_clausal(&spec(3, &[1], &[0]));
        let swap = Operation::transposition(3, 0, 1).unwrap();
        assert!(find_violation(&swap, &r10).unwrap().is_some());
    }

    #[test]
    fn spec_text_round_trip_and_errors() {
        let s: ClausalSpec = "3 2 1 | 2 1 | 0".parse().unwrap();
        assert_eq!(s, spec(3, &[2, 1], &[0]));
        assert_eq!(s.to_string().parse::<ClausalSpec>().unwrap(), s);
        assert!("3 2 1 | 2 | 0".parse::<ClausalSpec>().is_err());
        assert!("3 1 1 | 3 | 0".parse::<ClausalSpec>().is_err());
        assert!("3 1 1 | 1".parse::<ClausalSpec>().is_err());
        assert!(ClausalSpec::new(3, vec![], vec![0]).is_err());
        let json: ClausalSpec = serde_json::from_str(r#"{"n":3,"a":[1],"b":[0]}"#).unwrap();
        assert_eq!(json, spec(3, &[1], &[0]));
        assert!(serde_json::from_str::<ClausalSpec>(r#"{"n":3,"a":[5],"b":[0]}"#).is_err());
    }

    #[test]
    fn obstruction_counts() {
        let obs = obstruction_relations(3).unwrap();
        assert_eq!(obs.len(), 4);
        assert_eq!(
            obs[0].relation,
            Relation::from_tuples(3, 2, [[0, 0], [1, 1], [1, 2], [2, 1], [2, 2]]).unwrap()
        );
        assert_eq!(obs[3].relation, Relation::unary(3, [0, 2]).unwrap());
        assert_eq!(obstruction_relations(4).unwrap().len(), 9);
        assert!(obstruction_relations(2).is_err());
    }

    #[test]
    fn corollary_examples() {
        let unary: Vec<_> = all_operations(3, 1, Budget::default()).unwrap().collect();
        assert!(corollary_hypotheses_hold(&unary, 3).unwrap());

        let projections: Vec<_> = (0..2).map(|i| Operation::projection(3, 2, i).unwrap()).collect();
        let checks = corollary_hypotheses(&projections, 3).unwrap();
        assert!(checks.iter().all(|c| !c.violated()));

        let constants = [Operation::constant(3, 0).unwrap(), Operation::constant(3, 2).unwrap()];
        let checks = corollary_hypotheses(&constants, 3).unwrap();
        let theta0 = &checks[0];
        assert_eq!(theta0.obstruction.kind, ObstructionKind::TwoBlockEquivalence { b: 0 });
        assert!(!theta0.violated());
        let unary02 = &checks[3];
        assert_eq!(unary02.obstruction.kind, ObstructionKind::IntervalUnion { b: 0, k: 2 });
        assert!(!unary02.violated());
    }
}
