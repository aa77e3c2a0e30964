//! Two-step Ritt moves: generation, classification of `a∘b = c∘d`, and
//! neighbours of an adjacent pair of indecomposables.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chebyshev::chebyshev;
use crate::decompose::{gcd_split, is_indecomposable, match_linear_left, right_factor};
use crate::error::{Error, Result};
use crate::forms::{center_point, detect_cyclic, is_cyclic, is_dihedral, shift_x, FormReport};
use crate::poly::{rat, rational_sqrt, Linear, Poly, Rational};

/// `[a, b, c, d]` with `a∘b = c∘d`.
pub type Quadruple = [Poly; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RittKind {
    /// `a = c∘ell`, `b = ell⁻¹∘d`.
    TrivialLinear { ell: Linear },
    /// `(l1∘â∘l2, l2⁻¹∘b̂∘l3, l1∘ĉ∘l4, l4⁻¹∘d̂∘l3) = (T_n, T_m, T_m, T_n)`.
    ChebyshevType { n: usize, m: usize, linears: [Linear; 4] },
    /// Same shape with `(X^n, X^s h(X^n), X^s h(X)^n, X^n)`.
    ExponentialType { n: usize, s: usize, h: Poly, linears: [Linear; 4] },
}

/// Classification of `a∘b = c∘d`.
///
/// For the two non-trivial kinds the hatted quadruple is the coprime-degree
/// core, with `a = outer∘â`, `c = outer∘ĉ`, `b = b̂∘inner`, `d = d̂∘inner`.
/// For `TrivialLinear`, `outer = c` and `inner = d`. When `swapped` is set
/// the kind describes `(c, d, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ritt2Classification {
    pub kind: RittKind,
    pub swapped: bool,
    pub outer: Poly,
    pub inner: Poly,
}

impl Ritt2Classification {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RittKind::TrivialLinear { .. } => "trivial_linear",
            RittKind::ChebyshevType { .. } => "chebyshev",
            RittKind::ExponentialType { .. } => "exponential",
        }
    }

    /// The core quadruple, in the orientation the kind describes.
    pub fn core(&self) -> Quadruple {
        match &self.kind {
            RittKind::TrivialLinear { ell } => {
                [ell.to_poly(), ell.invert().to_poly(), Poly::x(), Poly::x()]
            }
            RittKind::ChebyshevType { n, m, linears } => {
                unwind(linears, [chebyshev(*n), chebyshev(*m), chebyshev(*m), chebyshev(*n)])
            }
            RittKind::ExponentialType { n, s, h, linears } => {
                let forms = [
                    Poly::x_pow(*n),
                    inner_form(*s, *n, h),
                    outer_form(*s, *n, h),
                    Poly::x_pow(*n),
                ];
                unwind(linears, forms)
            }
        }
    }

    /// Rebuilds `(a, b, c, d)`.
    pub fn reconstruct(&self) -> Quadruple {
        let [a, b, c, d] = self.core();
        let q = [
            self.outer.compose(&a),
            b.compose(&self.inner),
            self.outer.compose(&c),
            d.compose(&self.inner),
        ];
        if self.swapped {
            let [a, b, c, d] = q;
            [c, d, a, b]
        } else {
            q
        }
    }
}

/// Inverts `(l1∘â∘l2, l2⁻¹∘b̂∘l3, l1∘ĉ∘l4, l4⁻¹∘d̂∘l3) = forms`.
fn unwind(l: &[Linear; 4], forms: Quadruple) -> Quadruple {
    let [a, b, c, d] = forms;
    let inv = |x: &Linear| x.invert().to_poly();
    [
        inv(&l[0]).compose(&a).compose(&inv(&l[1])),
        l[1].to_poly().compose(&b).compose(&inv(&l[2])),
        inv(&l[0]).compose(&c).compose(&inv(&l[3])),
        l[3].to_poly().compose(&d).compose(&inv(&l[2])),
    ]
}

/// `X^s h(X^n)`.
fn inner_form(s: usize, n: usize, h: &Poly) -> Poly {
    &Poly::x_pow(s) * &h.compose(&Poly::x_pow(n))
}

/// `X^s h(X)^n`.
fn outer_form(s: usize, n: usize, h: &Poly) -> Poly {
    &Poly::x_pow(s) * &h.pow(n as u32)
}

fn check_exponential_params(n: usize, s: usize, h: &Poly) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("exponential move needs n > 1"));
    }
    if s != 0 && s.gcd(&n) != 1 {
        return Err(Error::invalid(format!("gcd(s, n) = gcd({s}, {n}) is not 1")));
    }
    if h.is_zero() || (!h.is_constant() && h.coeff(0).is_zero()) {
        return Err(Error::invalid("h must be a nonzero constant or have h(0) != 0"));
    }
    Ok(())
}

/// `X^n ∘ X^s h(X^n) = X^s h(X)^n ∘ X^n`, verified by expansion.
pub fn ritt_move_exponential(n: usize, s: usize, h: &Poly) -> Result<(Poly, Poly, Quadruple)> {
    check_exponential_params(n, s, h)?;
    let quad = [Poly::x_pow(n), inner_form(s, n, h), outer_form(s, n, h), Poly::x_pow(n)];
    let lhs = quad[0].compose(&quad[1]);
    let rhs = quad[2].compose(&quad[3]);
    assert_eq!(lhs, rhs, "exponential move failed to commute");
    Ok((lhs, rhs, quad))
}

/// `T_n ∘ T_m` and `T_m ∘ T_n`; both equal `T_(nm)`.
pub fn ritt_move_chebyshev(n: usize, m: usize) -> (Poly, Poly) {
    let (tn, tm) = (chebyshev(n), chebyshev(m));
    let lhs = tn.compose(&tm);
    let rhs = tm.compose(&tn);
    assert_eq!(lhs, rhs, "Chebyshev polynomials failed to commute");
    (lhs, rhs)
}

/// `(eps^n T_m, T_n, T_n, eps T_m)`, using `T_n(-X) = (-1)^n T_n`.
pub fn dihedral_move(n: usize, m: usize, eps: i8) -> Result<Quadruple> {
    if n <= 2 {
        return Err(Error::invalid("dihedral move needs n > 2"));
    }
    if m == 0 || n.gcd(&m) != 1 {
        return Err(Error::invalid(format!("gcd(n, m) = gcd({n}, {m}) is not 1")));
    }
    let e = match eps {
        1 => rat(1),
        -1 => rat(-1),
        _ => return Err(Error::invalid("eps must be 1 or -1")),
    };
    let tm = chebyshev(m);
    let en = if n % 2 == 0 { rat(1) } else { e.clone() };
    let quad = [tm.scale(&en), chebyshev(n), chebyshev(n), tm.scale(&e)];
    assert_eq!(quad[0].compose(&quad[1]), quad[2].compose(&quad[3]));
    Ok(quad)
}

enum Attempt<T> {
    Found(T),
    Irrational,
    No,
}

/// Classifies `a∘b = c∘d`. Chebyshev type wins over exponential type when
/// both apply.
pub fn classify_ritt(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<Ritt2Classification> {
    if [a, b, c, d].iter().any(|p| p.is_constant()) {
        return Err(Error::degree("classify_ritt needs nonconstant polynomials"));
    }
    if a.compose(b) != c.compose(d) {
        return Err(Error::invalid("a∘b and c∘d differ"));
    }
    if a.deg() == c.deg() {
        // d = ell∘b pins ell down uniquely.
        let ell = match_linear_left(b, d)
            .ok_or_else(|| Error::invalid("no linear relates b and d"))?;
        debug_assert_eq!(c.compose(&ell.to_poly()), *a);
        return Ok(Ritt2Classification {
            kind: RittKind::TrivialLinear { ell },
            swapped: false,
            outer: c.clone(),
            inner: d.clone(),
        });
    }

    let split = gcd_split(a, b, c, d)?;
    let core = [split.a_hat.clone(), split.b_hat.clone(), split.c_hat.clone(), split.d_hat.clone()];
    let wrap = |kind, swapped| Ritt2Classification {
        kind,
        swapped,
        outer: split.g.clone(),
        inner: split.h.clone(),
    };

    let cheb = chebyshev_attempt(&core);
    if let Attempt::Found(kind) = cheb {
        return Ok(wrap(kind, false));
    }
    if let Some(kind) = exponential_attempt(&core) {
        return Ok(wrap(kind, false));
    }
    let [ah, bh, ch, dh] = core.clone();
    if let Some(kind) = exponential_attempt(&[ch, dh, ah, bh]) {
        return Ok(wrap(kind, true));
    }
    match cheb {
        Attempt::Irrational => Err(Error::unsupported(format!(
            "Chebyshev type with degrees ({}, {}) needs an irrational linear",
            core[0].deg(),
            core[1].deg()
        ))),
        _ => Err(Error::invalid("coprime core matches neither standard form")),
    }
}

/// The forced inner point `beta` and `alpha^2` with `p∘(alpha X + beta)`
/// an affine image of `T_k` for each `p` in `polys`.
fn chebyshev_inner(polys: &[&Poly]) -> Option<(Rational, Rational)> {
    let mut beta: Option<Rational> = None;
    for p in polys.iter().filter(|p| p.deg() >= 2) {
        let b = center_point(p);
        match &beta {
            Some(prev) if *prev != b => return None,
            _ => beta = Some(b),
        }
    }
    let beta = beta.unwrap_or_else(Rational::zero);
    let mut alpha_sq: Option<Rational> = None;
    for p in polys.iter().filter(|p| p.deg() >= 3) {
        let k = p.deg();
        let g = shift_x(p, &beta);
        let below = g.coeff(k - 2);
        if below.is_zero() {
            return None;
        }
        let a2 = -(rat(k as i64) * g.lc()) / below;
        match &alpha_sq {
            Some(prev) if *prev != a2 => return None,
            _ => alpha_sq = Some(a2),
        }
    }
    Some((beta, alpha_sq.unwrap_or_else(Rational::one)))
}

fn chebyshev_attempt(core: &Quadruple) -> Attempt<RittKind> {
    let [a, b, c, d] = core;
    let (n, m) = (a.deg(), b.deg());
    if core.iter().any(|p| p.deg() >= 3 && !is_dihedral(p)) {
        return Attempt::No;
    }
    let Some((beta, alpha_sq)) = chebyshev_inner(&[b, d]) else {
        return Attempt::No;
    };
    let Some(alpha) = rational_sqrt(&alpha_sq) else {
        return Attempt::Irrational;
    };
    let (tn, tm) = (chebyshev(n), chebyshev(m));
    for sign in [alpha.clone(), -alpha] {
        let Ok(l3) = Linear::new(sign, beta.clone()) else { continue };
        let l3p = l3.to_poly();
        let Some(l4) = match_linear_left(&tn, &d.compose(&l3p)) else { continue };
        let Some(l2) = match_linear_left(&tm, &b.compose(&l3p)) else { continue };
        let Some(l1) = match_linear_left(&a.compose(&l2.to_poly()), &tn) else { continue };
        if l1.to_poly().compose(c).compose(&l4.to_poly()) == tm {
            return Attempt::Found(RittKind::ChebyshevType { n, m, linears: [l1, l2, l3, l4] });
        }
    }
    Attempt::No
}

/// `(l_outer, l_inner)` with `l_outer ∘ p ∘ l_inner = X^n` for cyclic `p`.
fn cyclic_linears(p: &Poly) -> Option<(Linear, Linear)> {
    match detect_cyclic(p) {
        FormReport::Cyclic { witness: w, .. } => {
            let outer = Linear::new(w.c.recip(), -(&w.v / &w.c)).ok()?;
            let inner = Linear::new(Rational::one(), w.beta).ok()?;
            Some((outer, inner))
        }
        _ => None,
    }
}

fn exponential_attempt(core: &Quadruple) -> Option<RittKind> {
    let [a, b, c, d] = core;
    let n = a.deg();
    let (l1, l2, l3, l4) = if n >= 2 {
        let (l4_inv, l3) = cyclic_linears(d)?;
        let (l1, l2) = cyclic_linears(a)?;
        (l1, l2, l3, l4_inv.invert())
    } else {
        let l3 = Linear::identity();
        let l4 = Linear::from_poly(d)?;
        let l2 = Linear::new(Rational::one(), b.coeff(0)).ok()?;
        let l1 = Linear::from_poly(&a.compose(&l2.to_poly()))?.invert();
        (l1, l2, l3, l4)
    };
    let b_std = l2.invert().to_poly().compose(b).compose(&l3.to_poly());
    let s = b_std.coeffs().iter().position(|x| !x.is_zero())?;
    if s.gcd(&n) != 1 {
        return None;
    }
    let mut h = Vec::new();
    for (e, x) in b_std.coeffs().iter().enumerate().skip(s) {
        if (e - s) % n == 0 {
            h.push(x.clone());
        } else if !x.is_zero() {
            return None;
        }
    }
    let h = Poly::new(h);
    let c_std = l1.to_poly().compose(c).compose(&l4.to_poly());
    (c_std == outer_form(s, n, &h))
        .then_some(RittKind::ExponentialType { n, s, h, linears: [l1, l2, l3, l4] })
}

/// Cyclic, dihedral or neither; degree-2 polynomials count as cyclic.
pub fn monodromy_class(f: &Poly) -> &'static str {
    if is_cyclic(f) {
        "cyclic"
    } else if f.deg() >= 3 && is_dihedral(f) {
        "dihedral"
    } else {
        "other"
    }
}

/// The pair `(c, d)` with `c∘d = u∘v` and `deg d = deg u`, if one exists.
pub fn ritt_neighbors_of_pair(u: &Poly, v: &Poly) -> Result<Vec<(Poly, Poly)>> {
    for p in [u, v] {
        if p.is_constant() || p.deg() < 2 {
            return Err(Error::degree("neighbours need indecomposables of degree at least 2"));
        }
        if !is_indecomposable(p)? {
            return Err(Error::invalid(format!("{p} is decomposable")));
        }
    }
    if u.deg().gcd(&v.deg()) != 1 {
        return Ok(Vec::new());
    }
    let f = u.compose(v);
    let Some((c, d)) = right_factor(&f, u.deg())? else {
        return Ok(Vec::new());
    };
    debug_assert!(is_indecomposable(&c)? && is_indecomposable(&d)?);
    Ok(vec![(c, d)])
}
