#![allow(dead_code)]

pub mod lemma_oracle;

use polydecomp::poly::{rat, ratio, Linear, Poly, Rational};
use proptest::prelude::*;

pub fn p(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

/// Distinct sample points, some non-integral.
pub fn points(k: usize) -> Vec<Rational> {
    (0..k as i64).map(|i| ratio(2 * i - 5, 1 + (i % 3))).collect()
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    ((1i64..=5), any::<bool>(), 1i64..=3)
        .prop_map(|(n, neg, d)| ratio(if neg { -n } else { n }, d))
}

/// Polynomial of degree at most `max_deg` (possibly zero).
pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

/// Monic polynomial of exactly the given degree range with zero constant term.
pub fn arb_normalized(min_deg: usize, max_deg: usize) -> impl Strategy<Value = Poly> {
    (min_deg..=max_deg).prop_flat_map(|d| {
        prop::collection::vec(-3i64..=3, d - 1).prop_map(move |mid| {
            let mut c = vec![rat(0)];
            c.extend(mid.into_iter().map(rat));
            c.push(rat(1));
            Poly::new(c)
        })
    })
}

pub fn arb_linear() -> impl Strategy<Value = Linear> {
    (arb_nonzero_rational(), arb_rational()).prop_map(|(a, b)| Linear::new(a, b).unwrap())
}
