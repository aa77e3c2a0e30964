mod common;

use common::{arb_linear, arb_normalized, p};
use polydecomp::chebyshev::chebyshev;
use polydecomp::decompose::*;
use polydecomp::poly::{compose_all, rat, Linear, Poly};
use proptest::prelude::*;

/// Oracle for degree-2 right factors: `f = a ∘ (X^2 + tX)` iff `f` is
/// symmetric about `-t/2`, where `t` is forced by the `X^(n-1)` coefficient.
fn has_quadratic_right_factor(f: &Poly) -> bool {
    let n = f.deg();
    let t = f.coeff(n - 1) / (f.lc() * rat((n / 2) as i64));
    let reflect = Poly::new(vec![-t, rat(-1)]);
    f.compose(&reflect) == *f
}

#[test]
fn right_factor_fixtures() {
    let f = p(&[5, 0, 0, 2, 0, 0, 1]);
    let (a, g) = right_factor(&f, 3).unwrap().unwrap();
    assert_eq!((a, g), (p(&[5, 2, 1]), Poly::x_pow(3)));
    assert!(!has_quadratic_right_factor(&f));
    assert_eq!(right_factor(&f, 2).unwrap(), None);

    let f = p(&[3, 4, 6, 4, 1]);
    assert!(has_quadratic_right_factor(&f));
    assert_eq!(right_factor(&f, 2).unwrap(), Some((p(&[3, 2, 1]), p(&[0, 2, 1]))));

    assert!(right_factor(&f, 4).is_err());
    assert!(right_factor(&f, 3).is_err());
    assert!(right_factor(&f, 1).is_err());
}

#[test]
fn complete_decomposition_fixtures() {
    let f = p(&[5, 0, 0, 2, 0, 0, 1]);
    let dec = complete_decomposition(&f).unwrap();
    assert_eq!(dec.compose(), f);
    assert_eq!(dec.factors, vec![p(&[0, 2, 1]), Poly::x_pow(3)]);
    assert_eq!(dec.leading, Linear::new(rat(1), rat(5)).unwrap());

    let dec = complete_decomposition(&Poly::x_pow(8)).unwrap();
    assert_eq!(dec.factors, vec![Poly::x_pow(2); 3]);

    let t6 = chebyshev(6);
    let dec = complete_decomposition(&t6).unwrap();
    assert_eq!(dec.compose(), t6);
    let mut degs = dec.degrees();
    degs.sort();
    assert_eq!(degs, vec![2, 3]);

    assert!(complete_decomposition(&p(&[1, 1])).is_err());
}

#[test]
fn indecomposability_fixtures() {
    for d in [2usize, 3, 5, 7, 11] {
        let f = &Poly::x_pow(d) + &p(&[1, 3]);
        assert!(is_indecomposable(&f).unwrap());
    }
    let g = p(&[0, 1, 1, 0, 1]);
    assert!(!has_quadratic_right_factor(&g));
    assert!(is_indecomposable(&g).unwrap());
    let h = p(&[1, 0, 1]).compose(&p(&[0, 1, 1]));
    assert!(!is_indecomposable(&h).unwrap());
    assert!(is_indecomposable(&p(&[2])).is_err());
}

#[test]
fn gcd_split_fixtures() {
    let (a, b) = (p(&[1, 2, 3]), p(&[0, 1, 0, 1]));
    let s = gcd_split(&a, &b, &a, &b).unwrap();
    assert!(s.verify(&a, &b, &a, &b));
    assert_eq!(s.g.deg(), 2);
    assert_eq!(s.h.deg(), 3);
    assert_eq!(s.a_hat.deg(), 1);
    assert_eq!(s.d_hat.deg(), 1);

    let (a, b, c, d) = (Poly::x_pow(2), p(&[0, 1, 0, 1]), p(&[0, 1, 2, 1]), Poly::x_pow(2));
    let s = gcd_split(&a, &b, &c, &d).unwrap();
    assert!(s.verify(&a, &b, &c, &d));
    assert_eq!((s.g.deg(), s.h.deg()), (1, 1));
    assert_eq!(s.a_hat.compose(&s.b_hat), p(&[0, 0, 1, 0, 2, 0, 1]));

    let (a, b, c, d) = (Poly::x_pow(4), Poly::x_pow(3), Poly::x_pow(6), Poly::x_pow(2));
    let s = gcd_split(&a, &b, &c, &d).unwrap();
    assert!(s.verify(&a, &b, &c, &d));
    assert_eq!(s.g, Poly::x_pow(2));
    assert_eq!(s.h, Poly::x());
    assert_eq!(s.a_hat, Poly::x_pow(2));
    assert_eq!(s.c_hat, Poly::x_pow(3));
    assert_eq!(s.a_hat.compose(&s.b_hat), Poly::x_pow(6));

    assert!(gcd_split(&a, &b, &c, &p(&[0, 0, 2])).is_err());
}

#[test]
fn left_divide_fixtures() {
    let f = p(&[1, 0, 2, 1]);
    let g = p(&[3, -1, 0, 1]);
    assert_eq!(left_divide(&f.compose(&g), &f).unwrap(), Some(g));

    let f = p(&[5, 0, 0, 2, 0, 0, 1]);
    assert_eq!(left_divide(&f, &p(&[5, 2, 1])).unwrap(), Some(Poly::x_pow(3)));
    assert_eq!(left_divide(&f, &Poly::x_pow(2)).unwrap(), None);
    assert!(left_divide(&f, &Poly::x_pow(4)).is_err());
}

#[test]
fn equivalence_fixtures() {
    let u = complete_decomposition(&p(&[0, 1, 0, 1]).compose(&p(&[0, 0, 1]))).unwrap();
    assert!(equivalent_decompositions(&u, &u));

    let direct = &Poly::x_pow(2) * &p(&[1, 1]).pow(3);
    let shifted = (&Poly::x_pow(3) * &p(&[-1, 1]).pow(2)).compose(&p(&[1, 1]));
    let a = Decomposition::from_chain(&[direct]).unwrap();
    let b = Decomposition::from_chain(&[&Poly::x_pow(3) * &p(&[-1, 1]).pow(2), p(&[1, 1])]).unwrap();
    assert_eq!(b.compose(), shifted);
    assert!(equivalent_decompositions(&a, &b));

    let x6a = Decomposition::from_chain(&[Poly::x_pow(2), Poly::x_pow(3)]).unwrap();
    let x6b = Decomposition::from_chain(&[Poly::x_pow(3), Poly::x_pow(2)]).unwrap();
    assert_eq!(x6a.compose(), x6b.compose());
    assert!(!equivalent_decompositions(&x6a, &x6b));
}

/// Monic indecomposable with zero constant term: prime degree, or a
/// composite degree that fails every right-factor test.
fn arb_indecomposable() -> impl Strategy<Value = Poly> {
    arb_normalized(2, 7).prop_filter("indecomposable", |f| is_indecomposable(f).unwrap())
}

fn arb_chain() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(arb_indecomposable(), 2..=4)
        .prop_filter("size", |c| c.iter().map(Poly::deg).product::<usize>() <= 48)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip(chain in arb_chain(), outer in arb_linear(), inner in arb_linear()) {
        let mut full = vec![outer.to_poly()];
        full.extend(chain.iter().cloned());
        full.push(inner.to_poly());
        let f = compose_all(&full);
        let dec = complete_decomposition(&f).unwrap();
        prop_assert_eq!(dec.compose(), f);
        for u in &dec.factors {
            prop_assert!(is_indecomposable(u).unwrap());
        }
        let mut got = dec.degrees();
        let mut want: Vec<usize> = chain.iter().map(Poly::deg).collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn right_factor_iff_left_divide(a in arb_normalized(2, 4), g in arb_normalized(2, 4), l in arb_linear()) {
        let f = l.to_poly().compose(&a).compose(&g);
        let n = f.deg();
        for d in proper_divisors(n) {
            let rf = right_factor(&f, d).unwrap();
            let cof_deg = n / d;
            match &rf {
                Some((cof, h)) => {
                    prop_assert_eq!(cof.compose(h), f.clone());
                    let back = left_divide(&f, cof).unwrap();
                    prop_assert_eq!(back.as_ref(), Some(h));
                }
                None => {
                    // l∘a is a left factor of degree deg a, so that cofactor
                    // degree must have a right factor.
                    prop_assert!(cof_deg != a.deg());
                }
            }
            if cof_deg == a.deg() {
                let la = l.to_poly().compose(&a);
                let ahat = left_divide(&f, &la).unwrap();
                prop_assert!(ahat.is_some());
                prop_assert_eq!(la.compose(&ahat.unwrap()), f.clone());
            }
        }
    }

    #[test]
    fn gcd_split_identities(
        u1 in arb_normalized(2, 3), u2 in arb_normalized(2, 3), u3 in arb_normalized(2, 3),
    ) {
        let a = u1.clone();
        let b = u2.compose(&u3);
        let c = u1.compose(&u2);
        let d = u3.clone();
        let s = gcd_split(&a, &b, &c, &d).unwrap();
        prop_assert!(s.verify(&a, &b, &c, &d));
        prop_assert_eq!(s.g.deg(), gcd(a.deg(), c.deg()));
        prop_assert_eq!(s.h.deg(), gcd(b.deg(), d.deg()));
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}
