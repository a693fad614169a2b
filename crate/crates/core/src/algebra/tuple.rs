//! Mixed-radix tuple codes. Coordinate 0 is the most significant digit, so
//! numeric order on codes is lexicographic order on tuples.

use crate::error::{Error, Result};

/// Number of tuples in `D^arity`, or an error if it overflows `usize`.
pub fn tuple_count(n: usize, arity: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    u32::try_from(arity)
        .ok()
        .and_then(|exp| n.checked_pow(exp))
        .ok_or(Error::TooLarge { n, arity })
}

pub fn encode_tuple(tuple: &[usize], n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut code = 0usize;
    for &value in tuple {
        if value >= n {
            return Err(Error::ElementOutOfRange { value, n });
        }
        code = code
            .checked_mul(n)
            .and_then(|c| c.checked_add(value))
            .ok_or(Error::TooLarge { n, arity: tuple.len() })?;
    }
    Ok(code)
}

pub fn decode_tuple(code: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut tuple = vec![0; arity];
    decode_into(code, n, &mut tuple);
    tuple
}

pub(crate) fn decode_into(mut code: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
}

/// Unchecked encoder for hot loops; callers guarantee range.
#[inline]
pub(crate) fn encode_unchecked(tuple: impl IntoIterator<Item = usize>, n: usize) -> usize {
    tuple.into_iter().fold(0, |acc, v| acc * n + v)
}
