//! Arithmetic in a fixed prime field, used as a fast necessary-condition
//! filter before exact rational computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::poly::{Poly, Rational};

/// 2^61 - 1.
pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

/// Image of a rational, or `None` when the denominator vanishes mod P.
pub fn reduce(c: &Rational) -> Option<u64> {
    let d = reduce_int(c.denom());
    if d.is_zero() {
        return None;
    }
    Some(mul(reduce_int(c.numer()), inv(d)))
}

/// Coefficients mod P, low to high, or `None` if some denominator vanishes.
pub fn reduce_poly(f: &Poly) -> Option<Vec<u64>> {
    f.coeffs().iter().map(reduce).collect()
}

/// Remainder and quotient of `a` by `b` (`b` with invertible leading
/// coefficient), trimming trailing zeros of the remainder.
pub fn div_rem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), trim(a.to_vec()));
    }
    let il = inv(b[db]);
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul(r[k + db], il);
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = sub(r[k + j], mul(c, *bj));
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}
