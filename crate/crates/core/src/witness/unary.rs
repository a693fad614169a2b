use serde::{Deserialize, Serialize};

use super::{check_ab, ensure_in_pol};
use crate::algebra::{unary_set_preserved, Operation};
use crate::error::{Error, Result};

/// A unary map whose image lies in `{0..b}` or in `{a..n-1}`.
pub fn unary_image_bounded(table: Vec<usize>, a: usize, b: usize) -> Result<Operation> {
    let n = table.len();
    check_ab(a, b, n)?;
    let f = Operation::unary(n, table)?;
    let img = f.image();
    if !img.iter().all(|&v| v <= b) && !img.iter().all(|&v| v >= a) {
        return Err(Error::precondition(format!(
            "image {img:?} lies neither in {{0..{b}}} nor in {{{a}..{}}}",
            n - 1
        )));
    }
    ensure_in_pol(&f, a, b, "image-bounded unary map")?;
    Ok(f)
}

/// The three necessary conditions every `f ∈ Pol¹(R^{a,b})` satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryWitnessProperties {
    /// `f ⊳ {0..b}` or `im(f) ⊆ {a..n-1}`
    pub a: bool,
    /// `f ⊳ {a..n-1}` or `im(f) ⊆ {0..b}`
    pub b: bool,
    /// `f ⊳ {a..n-1}` or `f ⊳ {0..b}`
    pub c: bool,
}

impl UnaryWitnessProperties {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

pub fn unary_witness_properties(f: &Operation, a: usize, b: usize) -> Result<UnaryWitnessProperties> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    let n = f.n();
    check_ab(a, b, n)?;
    let low: Vec<bool> = (0..n).map(|x| x <= b).collect();
    let high: Vec<bool> = (0..n).map(|x| x >= a).collect();
    let keeps_low = unary_set_preserved(f, &low);
    let keeps_high = unary_set_preserved(f, &high);
    let img = f.image();
    let img_low = img.iter().all(|&v| v <= b);
    let img_high = img.iter().all(|&v| v >= a);
    Ok(UnaryWitnessProperties {
        a: keeps_low || img_high,
        b: keeps_high || img_low,
        c: keeps_high || keeps_low,
    })
}

/// Checks that `f` preserves both `{0..b}` and `{a..n-1}` and hence lies in
/// `Pol(R^{a,b})`.
pub fn interval_preserving_unary(f: &Operation, a: usize, b: usize) -> Result<()> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    let n = f.n();
    check_ab(a, b, n)?;
    let low: Vec<bool> = (0..n).map(|x| x <= b).collect();
    let high: Vec<bool> = (0..n).map(|x| x >= a).collect();
    if !unary_set_preserved(f, &low) || !unary_set_preserved(f, &high) {
        return Err(Error::precondition(format!(
            "{f:?} does not preserve both {{0..{b}}} and {{{a}..{}}}",
            n - 1
        )));
    }
    ensure_in_pol(f, a, b, "interval-preserving unary map")
}

/// `x1 ↦ x2`, `y1 ↦ y2`, identity elsewhere, for `x1, x2 < a ≤ b < y1, y2`.
pub fn complement_mapper(a: usize, b: usize, x1: usize, x2: usize, y1: usize, y2: usize, n: usize) -> Result<Operation> {
    check_ab(a, b, n)?;
    if a > b || x1.max(x2) >= a || y1.min(y2) <= b || y1.max(y2) >= n {
        return Err(Error::precondition(format!(
            "complement mapper needs x1,x2 < a ≤ b < y1,y2 < n; got a={a} b={b} x=({x1},{x2}) y=({y1},{y2})"
        )));
    }
    let f = Operation::from_fn(n, 1, |t| match t[0] {
        x if x == x1 => x2,
        y if y == y1 => y2,
        z => z,
    })?;
    interval_preserving_unary(&f, a, b)?;
    Ok(f)
}

/// The six boundary configurations of a bounded order against `(a, b)`
/// that a single transposition cannot handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderException {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl OrderException {
    pub const ALL: [OrderException; 6] = [
        OrderException::A,
        OrderException::B,
        OrderException::C,
        OrderException::D,
        OrderException::E,
        OrderException::F,
    ];

    /// `(⊥, ⊤, a, b)` for the configuration on `n` elements.
    pub fn shape(self, n: usize) -> (usize, usize, usize, usize) {
        match self {
            OrderException::A => (0, 1, 1, 1),
            OrderException::B => (0, n - 1, 1, n - 2),
            OrderException::C => (n - 1, 0, 1, n - 2),
            OrderException::D => (n - 1, n - 2, n - 2, n - 2),
            OrderException::E => (1, 0, 1, 1),
            OrderException::F => (n - 2, n - 1, n - 2, n - 2),
        }
    }

    pub fn matches(self, n: usize, bottom: usize, top: usize, a: usize, b: usize) -> bool {
        n >= 3 && self.shape(n) == (bottom, top, a, b)
    }
}

pub fn order_exception_witness(case: OrderException, n: usize) -> Result<Operation> {
    if n < 3 {
        return Err(Error::Unsupported(format!("order exceptions need n ≥ 3, got {n}")));
    }
    let (from, to) = match case {
        OrderException::A | OrderException::E => (0, 1),
        OrderException::B => (n - 1, 0),
        OrderException::C => (0, n - 1),
        OrderException::D | OrderException::F => (n - 1, n - 2),
    };
    let f = Operation::from_fn(n, 1, |t| if t[0] == from { to } else { t[0] })?;
    let (_, _, a, b) = case.shape(n);
    ensure_in_pol(&f, a, b, "order exception map")?;
    Ok(f)
}
