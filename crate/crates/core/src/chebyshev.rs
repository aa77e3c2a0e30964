//! Normalized Chebyshev polynomials `T_n`, defined by `T_n(Y + 1/Y) = Y^n + Y^-n`.
//!
//! The classical polynomials satisfy `T_n(2X) = 2 C_n(X)`; only the
//! normalized family is provided.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::poly::{rat, Poly, Rational};

static CACHE: OnceLock<RwLock<Vec<Poly>>> = OnceLock::new();

/// `T_0 = 2`, `T_1 = X`, `T_n = X T_{n-1} - T_{n-2}`.
pub fn chebyshev(n: usize) -> Poly {
    let cache = CACHE.get_or_init(|| RwLock::new(vec![Poly::constant(rat(2)), Poly::x()]));
    if let Some(t) = cache.read().expect("chebyshev cache poisoned").get(n) {
        return t.clone();
    }
    let mut w = cache.write().expect("chebyshev cache poisoned");
    while w.len() <= n {
        let k = w.len();
        let next = &(&Poly::x() * &w[k - 1]) - &w[k - 2];
        w.push(next);
    }
    w[n].clone()
}

/// Sparse Laurent polynomial in one variable. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut l = LaurentPoly::default();
        l.add_term(e, c);
        l
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// `p(self)` by Horner's rule.
    pub fn substitute_into(&self, p: &Poly) -> LaurentPoly {
        let mut acc = LaurentPoly::default();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&LaurentPoly::constant(c.clone()));
        }
        acc
    }
}

/// Checks `T_n(Y + 1/Y) = Y^n + Y^-n` in exact Laurent arithmetic.
pub fn laurent_substitution_check(n: usize) -> bool {
    let y = LaurentPoly::monomial(Rational::one(), 1).add(&LaurentPoly::monomial(Rational::one(), -1));
    let lhs = y.substitute_into(&chebyshev(n));
    let n = n as i64;
    let rhs = LaurentPoly::monomial(Rational::one(), n).add(&LaurentPoly::monomial(Rational::one(), -n));
    lhs == rhs
}

/// `T_n ∘ T_m = T_m ∘ T_n = T_{nm}`.
pub fn cheb_semigroup_check(n: usize, m: usize) -> bool {
    let (tn, tm) = (chebyshev(n), chebyshev(m));
    let a = tn.compose(&tm);
    a == tm.compose(&tn) && a == chebyshev(n * m)
}

/// `n^2 (f^2 - 4) = (X^2 - 4) f'^2`.
pub fn levi_identity(f: &Poly, n: usize) -> bool {
    let four = Poly::constant(rat(4));
    let lhs = (&(f * f) - &four).scale(&rat((n * n) as i64));
    let fp = f.derivative();
    let rhs = &(&Poly::x_pow(2) - &four) * &(&fp * &fp);
    lhs == rhs
}

pub fn levi_dihedral_identity(n: usize) -> bool {
    levi_identity(&chebyshev(n), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(chebyshev(0), Poly::from_i64(&[2]));
        assert_eq!(chebyshev(1), Poly::x());
        assert_eq!(chebyshev(2), Poly::from_i64(&[-2, 0, 1]));
        assert_eq!(chebyshev(5), Poly::from_i64(&[0, 5, 0, -5, 0, 1]));
    }

    #[test]
    fn laurent_has_no_zero_entries() {
        let a = LaurentPoly::monomial(rat(1), 2);
        let b = LaurentPoly::monomial(rat(-1), 2);
        assert!(a.add(&b).terms().is_empty());
    }

    #[test]
    fn identities_small() {
        assert!(laurent_substitution_check(1));
        assert!(laurent_substitution_check(2));
        assert!(laurent_substitution_check(7));
        assert!(cheb_semigroup_check(2, 3));
        assert!(cheb_semigroup_check(1, 9));
        assert!(cheb_semigroup_check(4, 5));
        for n in [1, 2, 6] {
            assert!(levi_dihedral_identity(n));
        }
    }
}
