use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::tuple::{decode_into, encode_tuple, encode_unchecked, tuple_count};
use crate::error::{Error, Result};

/// A total `arity`-ary operation on `{0, …, n-1}` as a flat value table in
/// tuple-code order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    n: usize,
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn new(n: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let expected = tuple_count(n, arity)?;
        if table.len() != expected {
            return Err(Error::TableLength {
                expected,
                found: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= n) {
            return Err(Error::ElementOutOfRange { value, n });
        }
        Ok(Self { n, arity, table })
    }

    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let len = tuple_count(n, arity)?;
        let mut buf = vec![0; arity];
        let table = (0..len)
            .map(|code| {
                decode_into(code, n, &mut buf);
                f(&buf)
            })
            .collect();
        Self::new(n, arity, table)
    }

    pub fn unary(n: usize, table: Vec<usize>) -> Result<Self> {
        Self::new(n, 1, table)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::unary(n, (0..n).collect())
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::unary(n, vec![value; n])
    }

    pub fn projection(n: usize, arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::params(format!("projection index {index} ≥ arity {arity}")));
        }
        Self::from_fn(n, arity, |args| args[index])
    }

    /// The unary map swapping `x` and `y`.
    pub fn transposition(n: usize, x: usize, y: usize) -> Result<Self> {
        Self::unary(
            n,
            (0..n)
                .map(|z| if z == x { y } else if z == y { x } else { z })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn eval_code(&self, code: usize) -> usize {
        self.table[code]
    }

    pub fn eval(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        Ok(self.table[encode_tuple(args, self.n)?])
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }

    /// `f ∘ (r₁, …, r_k)`: row `i` of the result is `f(r₁[i], …, r_k[i])`.
    pub fn apply_componentwise<T: AsRef<[usize]>>(&self, columns: &[T]) -> Result<Vec<usize>> {
        if columns.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: columns.len(),
            });
        }
        let m = columns[0].as_ref().len();
        for col in columns {
            let col = col.as_ref();
            if col.len() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: col.len(),
                });
            }
            if let Some(&value) = col.iter().find(|&&v| v >= self.n) {
                return Err(Error::ElementOutOfRange { value, n: self.n });
            }
        }
        Ok((0..m)
            .map(|i| {
                let code = encode_unchecked(columns.iter().map(|c| c.as_ref()[i]), self.n);
                self.table[code]
            })
            .collect())
    }

    /// Returns a copy with one table cell replaced.
    pub fn with_cell(&self, code: usize, value: usize) -> Result<Self> {
        let mut table = self.table.clone();
        *table
            .get_mut(code)
            .ok_or(Error::params(format!("cell {code} out of range")))? = value;
        Self::new(self.n, self.arity, table)
    }
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operation(n={}, arity={}, {:?})", self.n, self.arity, self.table)
    }
}
