mod common;

use common::{arb_linear, p};
use polydecomp::chebyshev::chebyshev;
use polydecomp::decompose::is_indecomposable;
use polydecomp::poly::{rat, Linear, Poly};
use polydecomp::ritt::*;
use proptest::prelude::*;

fn classify(q: &Quadruple) -> Ritt2Classification {
    let cl = classify_ritt(&q[0], &q[1], &q[2], &q[3]).unwrap();
    assert_eq!(&cl.reconstruct(), q, "reconstruction of {q:?}");
    cl
}

#[test]
fn exponential_move_fixtures() {
    let (lhs, rhs, quad) = ritt_move_exponential(2, 1, &p(&[1, 1])).unwrap();
    let expect = &Poly::x_pow(2) * &p(&[1, 0, 1]).pow(2);
    assert_eq!((lhs.clone(), rhs), (expect.clone(), expect));
    assert_eq!(quad[1], p(&[0, 1, 0, 1]));
    assert_eq!(quad[2], p(&[0, 1, 2, 1]));

    let (lhs, rhs, _) = ritt_move_exponential(3, 1, &p(&[1])).unwrap();
    assert_eq!((lhs, rhs), (Poly::x_pow(3), Poly::x_pow(3)));

    // X^3 ∘ X^2 (X^6 + 2) against X^2 (X^2 + 2)^3 ∘ X^3, expanded by hand:
    // both are X^6 (X^6 + 2)^3.
    let (lhs, rhs, _) = ritt_move_exponential(3, 2, &p(&[2, 0, 1])).unwrap();
    let expect = &Poly::x_pow(6) * &p(&[2, 0, 0, 0, 0, 0, 1]).pow(3);
    assert_eq!(lhs, expect);
    assert_eq!(rhs, expect);

    assert!(ritt_move_exponential(4, 2, &p(&[1, 1])).is_err());
    assert!(ritt_move_exponential(3, 1, &p(&[0, 1])).is_err());
    assert!(ritt_move_exponential(1, 1, &p(&[1])).is_err());
}

#[test]
fn chebyshev_move_fixtures() {
    for (n, m) in [(2, 3), (4, 5), (1, 6)] {
        let (lhs, rhs) = ritt_move_chebyshev(n, m);
        assert_eq!(lhs, chebyshev(n * m));
        assert_eq!(rhs, chebyshev(n * m));
    }
}

#[test]
fn dihedral_move_fixtures() {
    let q = dihedral_move(3, 2, -1).unwrap();
    assert_eq!(q[0], -&chebyshev(2));
    assert_eq!(q[3], -&chebyshev(2));
    assert_eq!(q[0].compose(&q[1]), -&chebyshev(6));

    let q = dihedral_move(5, 2, 1).unwrap();
    assert_eq!(q, [chebyshev(2), chebyshev(5), chebyshev(5), chebyshev(2)]);

    let q = dihedral_move(3, 4, -1).unwrap();
    assert_eq!(q[0], -&chebyshev(4));
    assert_eq!(q[3], -&chebyshev(4));
    assert_eq!(q[0].compose(&q[1]), q[2].compose(&q[3]));

    assert!(dihedral_move(2, 3, 1).is_err());
    assert!(dihedral_move(3, 6, 1).is_err());
}

#[test]
fn classification_fixtures() {
    let q = [p(&[1, 2, 1]), Poly::x_pow(3), Poly::x_pow(2), p(&[1, 0, 0, 1])];
    let cl = classify(&q);
    assert_eq!(cl.kind, RittKind::TrivialLinear { ell: Linear::new(rat(1), rat(1)).unwrap() });

    let q = [chebyshev(2), chebyshev(3), chebyshev(3), chebyshev(2)];
    match classify(&q).kind {
        RittKind::ChebyshevType { n, m, .. } => assert_eq!((n, m), (2, 3)),
        other => panic!("{other:?}"),
    }

    let q = [Poly::x_pow(2), p(&[0, 1, 0, 1]), p(&[0, 1, 2, 1]), Poly::x_pow(2)];
    match classify(&q).kind {
        RittKind::ExponentialType { n, s, h, .. } => assert_eq!((n, s, h), (2, 1, p(&[1, 1]))),
        other => panic!("{other:?}"),
    }

    assert!(classify_ritt(&q[0], &q[1], &q[2], &p(&[0, 0, 2])).is_err());
}

#[test]
fn negative_control_is_not_trivial() {
    // (X^2 + 1) ∘ X^3 = X^6 + 1 = (X^3 + 1) ∘ X^2
    let q = [p(&[1, 0, 1]), Poly::x_pow(3), p(&[1, 0, 0, 1]), Poly::x_pow(2)];
    let cl = classify(&q);
    match cl.kind {
        RittKind::ExponentialType { n, s, h, .. } => {
            assert_eq!((n, s, h), (2, 3, p(&[1])));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn classification_under_linears_and_common_factors() {
    let outer = p(&[1, 0, 1]);
    let inner = p(&[0, 1, 1]);
    let l = p(&[3, 2]);
    let l_inv = Linear::from_poly(&l).unwrap().invert().to_poly();
    let q = [
        outer.compose(&chebyshev(2)).compose(&l_inv),
        l.compose(&chebyshev(3)).compose(&inner),
        outer.compose(&chebyshev(3)),
        chebyshev(2).compose(&inner),
    ];
    let cl = classify(&q);
    assert!(matches!(cl.kind, RittKind::ChebyshevType { n: 2, m: 3, .. }));
}

#[test]
fn swapped_orientation() {
    // (X(X+1)^2) ∘ X^2 = X^2 ∘ X(X^2+1), presented with the outer-twist first.
    let q = [p(&[0, 1, 2, 1]), Poly::x_pow(2), Poly::x_pow(2), p(&[0, 1, 0, 1])];
    let cl = classify(&q);
    assert!(cl.swapped);
    assert!(matches!(cl.kind, RittKind::ExponentialType { n: 2, s: 1, .. }));
}

#[test]
fn irrational_chebyshev_witness_is_unsupported() {
    // With s^2 = 2: d = T_3(sX)/s and b = c = T_4(sX) are rational, and
    // T_3 ∘ T_4(sX) = T_12(sX) = T_4(sX) ∘ T_3(sX)/s. The only witnesses
    // scale by s.
    let a = chebyshev(3);
    let b = p(&[2, 0, -8, 0, 4]);
    let c = b.clone();
    let d = p(&[0, -3, 0, 2]);
    assert_eq!(a.compose(&b), c.compose(&d));
    let err = classify_ritt(&a, &b, &c, &d).unwrap_err();
    assert_eq!(err.kind(), "unsupported");

    // In degree 2 the exponential form takes over with rational witnesses.
    let (a, b) = (p(&[-2, 0, 2]), p(&[0, -3, 0, 2]));
    let (c, d) = (chebyshev(3).compose(&p(&[0, 2])), p(&[-1, 0, 1]));
    assert_eq!(a.compose(&b), c.compose(&d));
    let cl = classify_ritt(&a, &b, &c, &d).unwrap();
    assert_eq!(cl.kind_name(), "exponential");
    assert_eq!(cl.reconstruct(), [a, b, c, d]);
}

#[test]
fn neighbor_fixtures() {
    let got = ritt_neighbors_of_pair(&Poly::x_pow(2), &p(&[0, 1, 0, 1])).unwrap();
    assert_eq!(got, vec![(p(&[0, 1, 2, 1]), Poly::x_pow(2))]);

    assert!(ritt_neighbors_of_pair(&p(&[0, 1, 1]), &p(&[1, 0, 1])).unwrap().is_empty());

    let got = ritt_neighbors_of_pair(&chebyshev(3), &chebyshev(2)).unwrap();
    assert_eq!(got, vec![(chebyshev(2), chebyshev(3))]);

    assert!(ritt_neighbors_of_pair(&Poly::x_pow(4), &p(&[0, 1, 0, 1])).is_err());
    assert!(ritt_neighbors_of_pair(&p(&[1, 1]), &Poly::x_pow(3)).is_err());
}

#[test]
fn generic_pair_has_no_neighbor() {
    let u = p(&[0, 1, 1]);
    let v = p(&[0, 1, 1, 1]);
    assert!(ritt_neighbors_of_pair(&u, &v).unwrap().is_empty());
}

fn coprime(a: usize, b: usize) -> bool {
    num_integer::gcd(a, b) == 1
}

/// `h` with nonzero constant term and degree at most 4.
fn arb_h() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..=5)
        .prop_filter("h(0) != 0", |c| c[0] != 0)
        .prop_map(|c| p(&c))
}

fn sorted_profile(polys: &[&Poly]) -> Vec<(usize, &'static str)> {
    let mut v: Vec<_> = polys.iter().map(|f| (f.deg(), monodromy_class(f))).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exponential_round_trip(n in 2usize..=7, s in 1usize..=7, h in arb_h()) {
        prop_assume!(coprime(s, n));
        let (_, _, q) = ritt_move_exponential(n, s, &h).unwrap();
        let cl = classify(&q);
        match cl.kind {
            RittKind::ExponentialType { n: n2, s: s2, h: h2, .. } => {
                prop_assert_eq!((n2, s2, h2), (n, s, h));
                prop_assert!(!cl.swapped);
            }
            // Overlap of the two forms in degree at most 2.
            RittKind::ChebyshevType { n: n2, m, .. } => {
                prop_assert_eq!(n2, n);
                prop_assert!(n <= 2 || m <= 2);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn chebyshev_round_trip(n in 1usize..=7, m in 1usize..=7) {
        prop_assume!(n != m && coprime(n, m));
        let q = [chebyshev(n), chebyshev(m), chebyshev(m), chebyshev(n)];
        let cl = classify(&q);
        prop_assert_eq!(cl.kind_name(), "chebyshev");
        if let RittKind::ChebyshevType { n: n2, m: m2, .. } = cl.kind {
            prop_assert_eq!((n2, m2), (n, m));
        }
    }

    #[test]
    fn dihedral_round_trip(n in 3usize..=7, m in 1usize..=7, neg in any::<bool>()) {
        prop_assume!(n != m && coprime(n, m));
        let q = dihedral_move(n, m, if neg { -1 } else { 1 }).unwrap();
        let cl = classify(&q);
        prop_assert_eq!(cl.kind_name(), "chebyshev");
        if let RittKind::ChebyshevType { n: n2, m: m2, .. } = cl.kind {
            prop_assert_eq!((n2, m2), (m, n));
        }
    }

    #[test]
    fn round_trip_under_linears(
        n in 2usize..=4, s in 1usize..=4, h in arb_h(),
        l1 in arb_linear(), l2 in arb_linear(), l3 in arb_linear(),
    ) {
        prop_assume!(coprime(s, n) && h.deg() <= 2);
        let (_, _, q) = ritt_move_exponential(n, s, &h).unwrap();
        let (l1, l2, l3) = (l1.to_poly(), l2.to_poly(), l3.to_poly());
        let l2i = Linear::from_poly(&l2).unwrap().invert().to_poly();
        let q = [
            l1.compose(&q[0]).compose(&l2),
            l2i.compose(&q[1]).compose(&l3),
            l1.compose(&q[2]),
            q[3].compose(&l3),
        ];
        classify(&q);
    }

    #[test]
    fn neighbor_preserves_degree_class_multiset(
        n in prop::sample::select(vec![2usize, 3]), s in 1usize..=3, h in arb_h(), l in arb_linear(),
    ) {
        prop_assume!(coprime(s, n) && h.deg() <= 2);
        let (_, _, q) = ritt_move_exponential(n, s, &h).unwrap();
        // u = X^n, v = X^s h(X^n) composed with a linear on the right.
        let u = q[0].clone();
        let v = q[1].compose(&l.to_poly());
        prop_assume!(v.deg() >= 2 && is_indecomposable(&v).unwrap());
        let got = ritt_neighbors_of_pair(&u, &v).unwrap();
        prop_assert_eq!(got.len(), 1);
        let (c, d) = &got[0];
        prop_assert_eq!(c.compose(d), u.compose(&v));
        prop_assert_eq!(sorted_profile(&[&u, &v]), sorted_profile(&[c, d]));
    }

    #[test]
    fn chebyshev_neighbors_preserve_profile(
        n in prop::sample::select(vec![2usize, 3, 5, 7]),
        m in prop::sample::select(vec![2usize, 3, 5, 7]),
    ) {
        prop_assume!(n != m);
        let (u, v) = (chebyshev(n), chebyshev(m));
        let got = ritt_neighbors_of_pair(&u, &v).unwrap();
        prop_assert_eq!(got.len(), 1);
        let (c, d) = &got[0];
        prop_assert_eq!(sorted_profile(&[&u, &v]), sorted_profile(&[c, d]));
    }

    #[test]
    fn indecomposability_transfer(n in 2usize..=4, i in 1usize..=4, h in arb_h()) {
        prop_assume!(coprime(i, n) && h.deg() <= 3 && !h.is_zero());
        prop_assume!(i + n * h.deg() >= 2);
        let a = &Poly::x_pow(i) * &h.pow(n as u32);
        let d = &Poly::x_pow(i) * &h.compose(&Poly::x_pow(n));
        prop_assert_eq!(is_indecomposable(&a).unwrap(), is_indecomposable(&d).unwrap());
    }
}
