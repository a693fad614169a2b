//! Generators and a validator for the relation classes whose polymorphism
//! clones can sit above a maximal C-clone: non-trivial unary relations,
//! non-trivial equivalences, binary central relations and bounded orders.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Budget, Relation};
use crate::error::{Error, Result};

/// `{0, …, b} ∪ {a, …, n-1}`. Non-trivial exactly when `a - b ≥ 2`.
pub fn unary_interval_union(a: usize, b: usize, n: usize) -> Result<Relation> {
    if a >= n || b >= n {
        return Err(Error::ElementOutOfRange { value: a.max(b), n });
    }
    Relation::unary(n, (0..n).filter(|&x| x <= b || x >= a))
}

/// The equivalence with the two classes `{0..b}` and `{b+1..n-1}`.
pub fn two_block_equivalence(b: usize, n: usize) -> Result<Relation> {
    if n < 2 || b > n - 2 {
        return Err(Error::params(format!("two-block equivalence needs 0 ≤ b ≤ n-2, got b={b}, n={n}")));
    }
    let rel = Relation::from_predicate(n, 2, |t| (t[0] <= b) == (t[1] <= b))?;
    if rel.is_trivial()? {
        return Err(Error::params(format!(
            "two-block equivalence for b={b}, n={n} is the diagonal"
        )));
    }
    Ok(rel)
}

/// `σ_{a,b} = ⋃_{a≤c≤b} ({0..c}² ∪ {c..n-1}²)`, which collapses to
/// `{0..b}² ∪ {a..n-1}²`.
pub fn sigma(a: usize, b: usize, n: usize) -> Result<Relation> {
    if !(0 < a && a <= b && b + 1 < n) {
        return Err(Error::params(format!("σ needs 0 < a ≤ b < n-1, got a={a}, b={b}, n={n}")));
    }
    let mut union = Relation::empty(n, 2)?;
    for c in a..=b {
        let square = Relation::from_predicate(n, 2, |t| (t[0] <= c && t[1] <= c) || (t[0] >= c && t[1] >= c))?;
        union = union.union(&square)?;
    }
    let two_squares = Relation::from_predicate(n, 2, |t| (t[0] <= b && t[1] <= b) || (t[0] >= a && t[1] >= a))?;
    assert_eq!(union, two_squares, "σ_{{{a},{b}}} union form disagrees with two-square form");
    Ok(union)
}

/// `ρ_c = Δ ∪ ({c} × D) ∪ (D × {c})`.
pub fn rho_c(c: usize, n: usize) -> Result<Relation> {
    if c >= n {
        return Err(Error::ElementOutOfRange { value: c, n });
    }
    Relation::from_predicate(n, 2, |t| t[0] == t[1] || t[0] == c || t[1] == c)
}

/// `A_c = {(x, y) ∈ (D∖{c})² : x < y}` in lexicographic order.
pub fn a_c(c: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    if c >= n {
        return Err(Error::ElementOutOfRange { value: c, n });
    }
    Ok((0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != c && y != c)
        .collect())
}

/// A binary central relation together with its full center set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralStructure {
    pub relation: Relation,
    pub centers: Vec<usize>,
}

/// `ρ_{c,S} = ρ_c ∪ S ∪ S⁻¹` for a proper subset `S ⊊ A_c`.
pub fn binary_central(c: usize, s: &[(usize, usize)], n: usize) -> Result<CentralStructure> {
    let allowed = a_c(c, n)?;
    let chosen: BTreeSet<(usize, usize)> = s.iter().copied().collect();
    if let Some(bad) = chosen.iter().find(|p| !allowed.contains(p)) {
        return Err(Error::params(format!("pair {bad:?} is not in A_{c}")));
    }
    if chosen.len() == allowed.len() {
        return Err(Error::params(format!("S must be a proper subset of A_{c}")));
    }
    let base = rho_c(c, n)?;
    let relation = Relation::from_predicate(n, 2, |t| {
        base.contains(t) || chosen.contains(&(t[0], t[1])) || chosen.contains(&(t[1], t[0]))
    })?;
    let report = validate(&relation)?;
    if report.classification != Classification::BinaryCentral || !report.centers.contains(&c) {
        return Err(Error::Verification(format!(
            "ρ_{{{c},S}} failed central validation: {report:?}"
        )));
    }
    Ok(CentralStructure {
        relation,
        centers: report.centers,
    })
}

/// A partial order with least and greatest element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedOrder {
    pub order: Relation,
    pub bottom: usize,
    pub top: usize,
}

impl BoundedOrder {
    pub fn new(order: Relation) -> Result<Self> {
        let report = validate(&order)?;
        match (report.is_order(), report.bottom, report.top) {
            (true, Some(bottom), Some(top)) => Ok(Self { order, bottom, top }),
            _ => Err(Error::params("relation is not a bounded partial order")),
        }
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.contains(&[x, y])
    }

    /// `⟦lo, hi⟧ = {x : lo ⪯ x ⪯ hi}`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect()
    }
}

/// Stable names of the generated classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationClass {
    UnaryCentral,
    Equivalence,
    BinaryCentral,
    BoundedOrder,
}

impl RelationClass {
    pub const ALL: [RelationClass; 4] = [
        RelationClass::UnaryCentral,
        RelationClass::Equivalence,
        RelationClass::BinaryCentral,
        RelationClass::BoundedOrder,
    ];

    pub fn token(self) -> &'static str {
        match self {
            RelationClass::UnaryCentral => "unary-central",
            RelationClass::Equivalence => "equivalence",
            RelationClass::BinaryCentral => "binary-central",
            RelationClass::BoundedOrder => "bounded-order",
        }
    }
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for RelationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unary-central" => Ok(RelationClass::UnaryCentral),
            "equivalence" | "nontrivial-equivalence" => Ok(RelationClass::Equivalence),
            "binary-central" => Ok(RelationClass::BinaryCentral),
            "bounded-order" => Ok(RelationClass::BoundedOrder),
            other => Err(Error::Parse(format!("unknown relation class {other:?}"))),
        }
    }
}

/// All non-trivial members of a class on `n` elements, deduplicated and
/// sorted.
pub fn enumerate_class(class: RelationClass, n: usize, budget: Budget) -> Result<Vec<Relation>> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let out: BTreeSet<Relation> = match class {
        RelationClass::UnaryCentral => {
            budget.check(n as f64)?;
            (1..(1u64 << n) - 1)
                .map(|mask| Relation::unary(n, (0..n).filter(|&x| mask >> x & 1 == 1)))
                .collect::<Result<_>>()?
        }
        RelationClass::Equivalence => {
            budget.check(n as f64 * (n as f64).log2())?;
            let mut out = BTreeSet::new();
            let mut blocks = vec![0usize; n];
            set_partitions(&mut blocks, 1, 1, &mut |labels| {
                let rel = Relation::from_predicate(n, 2, |t| labels[t[0]] == labels[t[1]]).expect("n ≥ 1");
                if !rel.is_trivial().expect("binary") {
                    out.insert(rel);
                }
            });
            out
        }
        RelationClass::BinaryCentral => {
            let width = n.saturating_sub(1) * n.saturating_sub(2) / 2;
            budget.check(width as f64 + (n as f64).log2())?;
            let mut out = BTreeSet::new();
            for c in 0..n {
                let pairs = a_c(c, n)?;
                for mask in 0..(1u64 << pairs.len()).saturating_sub(1) {
                    let s: Vec<_> = pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect();
                    out.insert(binary_central(c, &s, n)?.relation);
                }
            }
            out
        }
        RelationClass::BoundedOrder => bounded_orders(n, budget)?,
    };
    Ok(out.into_iter().collect())
}

// restricted growth strings; `labels[0] = 0` is fixed by the caller
fn set_partitions(labels: &mut [usize], pos: usize, used: usize, emit: &mut impl FnMut(&[usize])) {
    if pos >= labels.len() {
        emit(labels);
        return;
    }
    for l in 0..=used {
        labels[pos] = l;
        set_partitions(labels, pos + 1, used.max(l + 1), emit);
    }
}

fn bounded_orders(n: usize, budget: Budget) -> Result<BTreeSet<Relation>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    budget.check(pairs.len() as f64 * 3f64.log2())?;
    let total = 3u64.pow(pairs.len() as u32);
    let mut out = BTreeSet::new();
    let mut leq = vec![false; n * n];
    for mut code in 0..total {
        leq.iter_mut().for_each(|v| *v = false);
        for x in 0..n {
            leq[x * n + x] = true;
        }
        // each unordered pair is incomparable, x ⪯ y, or y ⪯ x
        for &(x, y) in &pairs {
            match code % 3 {
                1 => leq[x * n + y] = true,
                2 => leq[y * n + x] = true,
                _ => {}
            }
            code /= 3;
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !transitive {
            continue;
        }
        let has_bottom = (0..n).any(|b| (0..n).all(|y| leq[b * n + y]));
        let has_top = (0..n).any(|t| (0..n).all(|x| leq[x * n + t]));
        if has_bottom && has_top {
            let rel = Relation::from_predicate(n, 2, |t| leq[t[0] * n + t[1]])?;
            if !rel.is_trivial()? {
                out.insert(rel);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Trivial,
    UnaryCentral,
    Equivalence,
    BinaryCentral,
    BoundedOrder,
    Unclassified,
}

impl Classification {
    pub fn class(self) -> Option<RelationClass> {
        match self {
            Classification::UnaryCentral => Some(RelationClass::UnaryCentral),
            Classification::Equivalence => Some(RelationClass::Equivalence),
            Classification::BinaryCentral => Some(RelationClass::BinaryCentral),
            Classification::BoundedOrder => Some(RelationClass::BoundedOrder),
            Classification::Trivial | Classification::Unclassified => None,
        }
    }
}

/// Structural facts about a relation of arity 1 or 2. For unary relations
/// the order/equivalence fields are false and `centers` lists the members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub arity: usize,
    pub trivial: bool,
    pub reflexive: bool,
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub centers: Vec<usize>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
    pub classification: Classification,
}

impl ClassReport {
    pub fn is_equivalence(&self) -> bool {
        self.arity == 2 && self.reflexive && self.symmetric && self.transitive
    }

    pub fn is_order(&self) -> bool {
        self.arity == 2 && self.reflexive && self.antisymmetric && self.transitive
    }
}

pub fn validate(rel: &Relation) -> Result<ClassReport> {
    let n = rel.n();
    match rel.arity() {
        1 => {
            let trivial = rel.is_trivial()?;
            Ok(ClassReport {
                arity: 1,
                trivial,
                reflexive: false,
                symmetric: false,
                antisymmetric: false,
                transitive: false,
                centers: rel.elements()?,
                bottom: None,
                top: None,
                classification: if trivial {
                    Classification::Trivial
                } else {
                    Classification::UnaryCentral
                },
            })
        }
        2 => {
            let has = |x: usize, y: usize| rel.contains(&[x, y]);
            let all = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
            let reflexive = (0..n).all(|x| has(x, x));
            let symmetric = all().all(|(x, y)| !has(x, y) || has(y, x));
            let antisymmetric = all().all(|(x, y)| x == y || !(has(x, y) && has(y, x)));
            let transitive = all().all(|(x, y)| !has(x, y) || (0..n).all(|z| !has(y, z) || has(x, z)));
            let centers: Vec<usize> = (0..n).filter(|&c| (0..n).all(|x| has(x, c) && has(c, x))).collect();
            let bottom = (0..n).find(|&b| (0..n).all(|y| has(b, y)));
            let top = (0..n).find(|&t| (0..n).all(|x| has(x, t)));
            let trivial = rel.is_trivial()?;
            let classification = if trivial {
                Classification::Trivial
            } else if reflexive && symmetric && transitive {
                Classification::Equivalence
            } else if reflexive && symmetric && !centers.is_empty() {
                Classification::BinaryCentral
            } else if reflexive && antisymmetric && transitive && bottom.is_some() && top.is_some() {
                Classification::BoundedOrder
            } else {
                Classification::Unclassified
            };
            Ok(ClassReport {
                arity: 2,
                trivial,
                reflexive,
                symmetric,
                antisymmetric,
                transitive,
                centers,
                bottom,
                top,
                classification,
            })
        }
        a => Err(Error::Unsupported(format!("validation of {a}-ary relations"))),
    }
}
