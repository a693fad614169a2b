use std::fmt;

use crate::algebra::tuple::{decode_into, decode_tuple, encode_tuple, tuple_count};
use crate::error::{Error, Result};

/// An `arity`-ary relation on `{0, …, n-1}`, stored as a membership bitmap
/// over mixed-radix tuple codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    arity: usize,
    words: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let len = tuple_count(n, arity)?;
        Ok(Self {
            n,
            arity,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn full(n: usize, arity: usize) -> Result<Self> {
        Self::from_predicate(n, arity, |_| true)
    }

    pub fn from_predicate(n: usize, arity: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        let mut rel = Self::empty(n, arity)?;
        let mut buf = vec![0; arity];
        for code in 0..rel.capacity() {
            decode_into(code, n, &mut buf);
            if pred(&buf) {
                rel.set(code);
            }
        }
        Ok(rel)
    }

    pub fn from_tuples<I, T>(n: usize, arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[usize]>,
    {
        let mut rel = Self::empty(n, arity)?;
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: t.len(),
                });
            }
            rel.set(encode_tuple(t, n)?);
        }
        Ok(rel)
    }

    /// A unary relation from a set of elements.
    pub fn unary(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_tuples(n, 1, elements.into_iter().map(|x| [x]))
    }

    pub fn binary(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_tuples(n, 2, pairs.into_iter().map(|(x, y)| [x, y]))
    }

    /// `Δ = {(x, x)}`.
    pub fn diagonal(n: usize) -> Result<Self> {
        Self::from_predicate(n, 2, |t| t[0] == t[1])
    }

    /// The canonical linear order `{(x, y) : x ≤ y}`.
    pub fn canonical_order(n: usize) -> Result<Self> {
        Self::from_predicate(n, 2, |t| t[0] <= t[1])
    }

    pub(crate) fn from_codes(n: usize, arity: usize, codes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut rel = Self::empty(n, arity)?;
        for c in codes {
            rel.set(c);
        }
        Ok(rel)
    }

    fn set(&mut self, code: usize) {
        self.words[code / 64] |= 1 << (code % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Size of `D^arity`, i.e. the bitmap length.
    pub fn capacity(&self) -> usize {
        self.n.pow(self.arity as u32)
    }

    #[inline]
    pub fn contains_code(&self, code: usize) -> bool {
        self.words[code / 64] >> (code % 64) & 1 == 1
    }

    /// Membership test; tuples of the wrong length or with out-of-range
    /// entries are simply not members.
    pub fn contains(&self, tuple: &[usize]) -> bool {
        tuple.len() == self.arity
            && encode_tuple(tuple, self.n)
                .map(|c| self.contains_code(c))
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity()
    }

    /// Member codes in increasing (lexicographic) order.
    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// Member tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.codes().map(|c| decode_tuple(c, self.n, self.arity))
    }

    fn check_same_shape(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DomainMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    fn require_arity(&self, arity: usize) -> Result<()> {
        if self.arity != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: self.arity,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        self.check_same_shape(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Ok(Relation { words, ..self.clone() })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same_shape(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Ok(Relation { words, ..self.clone() })
    }

    /// Complement within `D^arity`.
    pub fn complement(&self) -> Relation {
        Relation::from_predicate(self.n, self.arity, |t| !self.contains(t)).expect("same shape")
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n
            && self.arity == other.arity
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `ρ⁻¹ = {(y, x) : (x, y) ∈ ρ}`.
    pub fn inverse(&self) -> Result<Relation> {
        self.require_arity(2)?;
        Relation::from_predicate(self.n, 2, |t| self.contains(&[t[1], t[0]]))
    }

    /// `{x : (x, x) ∈ ρ}`.
    pub fn diagonal_restriction(&self) -> Result<Relation> {
        self.require_arity(2)?;
        Relation::unary(self.n, (0..self.n).filter(|&x| self.contains(&[x, x])))
    }

    /// Unary relations as a sorted element list.
    pub fn elements(&self) -> Result<Vec<usize>> {
        self.require_arity(1)?;
        Ok(self.codes().collect())
    }

    /// True for the relations preserved by every operation at arity 1 and 2:
    /// `∅`, `D`, `Δ`, `∇`.
    pub fn is_trivial(&self) -> Result<bool> {
        match self.arity {
            1 => Ok(self.is_empty() || self.is_full()),
            2 => Ok(self.is_empty() || self.is_full() || *self == Relation::diagonal(self.n)?),
            a => Err(Error::Unsupported(format!(
                "triviality of {a}-ary relations is not decided"
            ))),
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, arity={}, ", self.n, self.arity)?;
        f.debug_set()
            .entries(self.tuples().map(|t| {
                let parts: Vec<String> = t.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            }))
            .finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let delta = Relation::diagonal(3).unwrap();
        assert_eq!(delta.inverse().unwrap(), delta);

        let single = Relation::binary(3, [(0, 2)]).unwrap();
        assert_eq!(single.inverse().unwrap(), Relation::binary(3, [(2, 0)]).unwrap());

        // R^{1,1} on n = 3 is everything but (0,2); its inverse drops (2,0).
        let r11 = Relation::from_predicate(3, 2, |t| t[0] >= 1 || t[1] <= 1).unwrap();
        let expected = Relation::from_predicate(3, 2, |t| *t != [2, 0]).unwrap();
        assert_eq!(r11.inverse().unwrap(), expected);
    }

    #[test]
    fn intersection_and_diagonal_restriction() {
        let r20 = Relation::from_predicate(3, 2, |t| t[0] >= 2 || t[1] == 0).unwrap();
        let both = r20.intersect(&r20.inverse().unwrap()).unwrap();
        assert_eq!(both, Relation::binary(3, [(0, 0), (2, 2)]).unwrap());
        assert_eq!(both.diagonal_restriction().unwrap(), Relation::unary(3, [0, 2]).unwrap());
        assert_eq!(
            Relation::diagonal(3).unwrap().diagonal_restriction().unwrap(),
            Relation::full(3, 1).unwrap()
        );
    }

    #[test]
    fn arity_errors() {
        let u = Relation::unary(3, [1]).unwrap();
        assert!(matches!(u.inverse(), Err(Error::ArityMismatch { .. })));
        assert!(matches!(u.diagonal_restriction(), Err(Error::ArityMismatch { .. })));
        let b = Relation::diagonal(3).unwrap();
        assert!(matches!(u.intersect(&b), Err(Error::ArityMismatch { .. })));
        let t = Relation::full(2, 3).unwrap();
        assert!(matches!(t.is_trivial(), Err(Error::Unsupported(_))));
        assert_eq!(Relation::empty(3, 0), Err(Error::ZeroArity));
    }

    #[test]
    fn triviality() {
        assert!(Relation::full(3, 2).unwrap().is_trivial().unwrap());
        assert!(!Relation::unary(3, [0, 2]).unwrap().is_trivial().unwrap());
        assert!(Relation::diagonal(4).unwrap().is_trivial().unwrap());
        assert!(Relation::empty(3, 1).unwrap().is_trivial().unwrap());
        assert!(!Relation::canonical_order(3).unwrap().is_trivial().unwrap());
    }

    #[test]
    fn tuples_are_lexicographic() {
        let r = Relation::binary(3, [(2, 0), (0, 2), (1, 1)]).unwrap();
        let ts: Vec<_> = r.tuples().collect();
        assert_eq!(ts, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn wide_bitmaps_cross_word_boundaries() {
        let r = Relation::from_predicate(5, 3, |t| (t[0] + t[1] + t[2]).is_multiple_of(4)).unwrap();
        let expected = (0..125).filter(|c| {
            let t = decode_tuple(*c, 5, 3);
            (t[0] + t[1] + t[2]).is_multiple_of(4)
        });
        assert!(r.codes().eq(expected));
        assert!(r.complement().intersect(&r).unwrap().is_empty());
    }
}
