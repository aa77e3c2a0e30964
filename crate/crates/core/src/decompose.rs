//! Right composition factors, complete decompositions and the gcd split of
//! a two-sided relation `a ∘ b = c ∘ d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modp;
use crate::poly::{compose_all, rat, rational_root, scalar_radix, Linear, Poly, Rational};

/// `leading ∘ factors[0] ∘ ... ∘ factors[r-1]`, every factor monic with zero
/// constant term and degree at least 2.
///
/// In this normal form two decompositions are equivalent exactly when they
/// are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub leading: Linear,
    pub factors: Vec<Poly>,
}

impl Decomposition {
    /// Validates the normal form.
    pub fn new(leading: Linear, factors: Vec<Poly>) -> Result<Self> {
        for f in &factors {
            if !is_normalized(f) || f.deg() < 2 {
                return Err(Error::invalid(format!(
                    "factor {f} is not monic of degree >= 2 with zero constant term"
                )));
            }
        }
        Ok(Decomposition { leading, factors })
    }

    /// Normalizes an arbitrary chain whose composition is nonconstant.
    /// Linear entries are absorbed into their neighbours.
    pub fn from_chain(chain: &[Poly]) -> Result<Self> {
        if chain.iter().any(Poly::is_constant) {
            return Err(Error::degree("chain contains a constant polynomial"));
        }
        // Merge every linear entry into the nonlinear entry on its left; a
        // linear prefix is pushed into the first nonlinear entry.
        let mut merged: Vec<Poly> = Vec::new();
        let mut prefix = Poly::x();
        for p in chain {
            if p.deg() == 1 {
                match merged.last_mut() {
                    Some(last) => *last = last.compose(p),
                    None => prefix = prefix.compose(p),
                }
            } else if merged.is_empty() {
                merged.push(prefix.compose(p));
                prefix = Poly::x();
            } else {
                merged.push(p.clone());
            }
        }
        if merged.is_empty() {
            let l = Linear::from_poly(&prefix).expect("composition of linears is linear");
            return Ok(Decomposition { leading: l, factors: Vec::new() });
        }
        let mut factors = vec![Poly::zero(); merged.len()];
        let mut carry = Poly::x();
        for i in (0..merged.len()).rev() {
            let u = merged[i].compose(&carry);
            let (l, m) = split_affine(&u);
            factors[i] = m;
            carry = l.to_poly();
        }
        let leading = Linear::from_poly(&carry).expect("affine part is linear");
        Ok(Decomposition { leading, factors })
    }

    pub fn compose(&self) -> Poly {
        self.leading.to_poly().compose(&compose_all(&self.factors))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(Poly::deg).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn is_normalized(f: &Poly) -> bool {
    f.is_monic() && f.coeff(0).is_zero()
}

/// `u = l ∘ m` with `m` monic and `m(0) = 0`.
pub fn split_affine(u: &Poly) -> (Linear, Poly) {
    let lc = u.lc();
    let c0 = u.coeff(0);
    let m = (u - &Poly::constant(c0.clone())).scale(&lc.recip());
    (Linear::new(lc, c0).expect("nonzero leading coefficient"), m)
}

/// `(u - u(0)) / lc(u)`.
pub fn normalize(u: &Poly) -> Poly {
    split_affine(u).1
}

/// Proper divisors `d` of `n` with `1 < d < n`, ascending.
pub fn proper_divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|d| n % d == 0).collect()
}

/// The unique pair `(a, g)` with `f = a ∘ g`, `deg g = d`, `g` monic and
/// `g(0) = 0`, if one exists.
pub fn right_factor(f: &Poly, d: usize) -> Result<Option<(Poly, Poly)>> {
    let n = f.deg();
    if f.is_zero() || d <= 1 || d >= n || n % d != 0 {
        return Err(Error::degree(format!(
            "right factor degree {d} is not a proper divisor of {n}"
        )));
    }
    if !plausible_mod_p(f, d) {
        return Ok(None);
    }
    let g = root_candidate(f, d);
    Ok(right_divide(f, &g).map(|a| (a, g)))
}

/// The right-factor test run over the prime field. A decomposition over the
/// rationals survives reduction, so `false` is definitive; `true` (including
/// "cannot reduce") defers to the exact test.
fn plausible_mod_p(f: &Poly, d: usize) -> bool {
    let Some(fp) = modp::reduce_poly(f) else {
        return true;
    };
    let n = fp.len() - 1;
    if fp[n] == 0 {
        return true;
    }
    let il = modp::inv(fp[n]);
    let top: Vec<u64> = (0..d).map(|j| modp::mul(fp[n - j], il)).collect();
    let ir = modp::inv((n / d) as u64);
    let mut q = vec![1u64];
    for k in 1..d {
        let mut acc = 0;
        for j in 1..=k {
            let w = modp::sub(modp::mul(j as u64, ir), (k - j) as u64);
            acc = modp::add(acc, modp::mul(w, modp::mul(top[j], q[k - j])));
        }
        q.push(modp::mul(acc, modp::inv(k as u64)));
    }
    let mut g = vec![0u64; d + 1];
    for (k, c) in q.into_iter().enumerate() {
        g[d - k] = c;
    }
    g[0] = 0;
    let mut rest = fp;
    while !rest.is_empty() {
        let (quo, rem) = modp::div_rem(&rest, &g);
        if rem.len() > 1 {
            return false;
        }
        rest = quo;
    }
    true
}

/// Candidate monic `g` of degree `d` with `g(0) = 0` whose `(n/d)`-th power
/// agrees with monic `f` in the `d - 1` coefficients below the top.
///
/// Works on reversed polynomials: with `F(y) = y^n f(1/y) / lc(f)` the
/// candidate is the truncated power series `F^(1/r)`, from the recurrence
/// `k Q_k = Σ_{j=1..k} (j/r - (k - j)) F_j Q_{k-j}`.
fn root_candidate(f: &Poly, d: usize) -> Poly {
    let n = f.deg();
    let r = BigInt::from(n / d);
    let inv_lc = f.lc().recip();
    let top: Vec<Rational> = (0..d).map(|j| f.coeff(n - j) * &inv_lc).collect();
    let mut q: Vec<Rational> = vec![Rational::one()];
    // Each step is summed over one common denominator: the terms are
    // `(j - r (k - j)) F_j Q_{k-j} / r`, and the denominators of `F_j` and
    // `Q_{k-j}` are usually equal or nested, so the lcm stays small.
    for k in 1..d {
        let den = (1..=k).fold(BigInt::one(), |acc, j| {
            let dj = top[j].denom() * q[k - j].denom();
            if acc.is_multiple_of(&dj) { acc } else { acc.lcm(&dj) }
        });
        let mut num = BigInt::zero();
        for j in 1..=k {
            if top[j].is_zero() || q[k - j].is_zero() {
                continue;
            }
            let w = BigInt::from(j) - &r * BigInt::from(k - j);
            let dj = top[j].denom() * q[k - j].denom();
            num += w * top[j].numer() * q[k - j].numer() * (&den / dj);
        }
        q.push(Rational::new(num, den * &r * BigInt::from(k)));
    }
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (k, c) in q.into_iter().enumerate() {
        coeffs[d - k] = c;
    }
    coeffs[0] = Rational::zero();
    Poly::new(coeffs)
}

/// `a` with `a ∘ h = f`, if it exists. `h` must be nonconstant.
pub fn right_divide(f: &Poly, h: &Poly) -> Option<Poly> {
    scalar_radix(f, h).map(Poly::new)
}

/// Complete decomposition by greedy extraction of the smallest right factor.
pub fn complete_decomposition(f: &Poly) -> Result<Decomposition> {
    if f.is_zero() || f.deg() < 2 {
        return Err(Error::degree("decomposition needs degree at least 2"));
    }
    let mut chain = Vec::new();
    let mut rest = f.clone();
    'outer: loop {
        for d in proper_divisors(rest.deg()) {
            if let Some((a, g)) = right_factor(&rest, d)? {
                chain.push(g);
                rest = a;
                continue 'outer;
            }
        }
        chain.push(rest);
        break;
    }
    chain.reverse();
    Decomposition::from_chain(&chain)
}

pub fn is_indecomposable(f: &Poly) -> Result<bool> {
    if f.is_zero() || f.deg() < 2 {
        return Err(Error::degree("indecomposability needs degree at least 2"));
    }
    for d in proper_divisors(f.deg()) {
        if right_factor(f, d)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All linears `l` with `c ∘ l = a`, where `deg c = deg a >= 1`.
pub fn match_linear_right(c: &Poly, a: &Poly) -> Vec<Linear> {
    let k = c.deg();
    if c.is_constant() || a.deg() != k {
        return Vec::new();
    }
    if k == 1 {
        // c(aX+b): scale = a1/c1, shift = (a0 - c0)/c1.
        let s = a.coeff(1) / c.coeff(1);
        let t = (a.coeff(0) - c.coeff(0)) / c.coeff(1);
        return vec![Linear::new(s, t).expect("nonzero")];
    }
    let ratio = a.lc() / c.lc();
    let mut alphas = Vec::new();
    if let Some(r) = rational_root(&ratio, k as u32) {
        alphas.push(r.clone());
        if k % 2 == 0 {
            alphas.push(-r);
        }
    }
    let kk = rat(k as i64);
    let mut out = Vec::new();
    for alpha in alphas {
        let ak1 = num_traits::pow(alpha.clone(), k - 1);
        let beta = (a.coeff(k - 1) / &ak1 - c.coeff(k - 1)) / (kk.clone() * c.lc());
        let l = Linear::new(alpha, beta).expect("nonzero");
        if c.compose(&l.to_poly()) == *a {
            out.push(l);
        }
    }
    out
}

/// The linear `l` with `l ∘ p = f`, if one exists.
pub fn match_linear_left(p: &Poly, f: &Poly) -> Option<Linear> {
    if p.is_constant() || p.deg() != f.deg() {
        return None;
    }
    let a = f.lc() / p.lc();
    let b = f.coeff(0) - &a * p.coeff(0);
    let l = Linear::new(a, b).ok()?;
    (l.to_poly().compose(p) == *f).then_some(l)
}

/// `â` with `c ∘ â = f`, if one exists.
pub fn left_divide(f: &Poly, c: &Poly) -> Result<Option<Poly>> {
    if f.is_constant() || c.is_constant() || f.deg() % c.deg() != 0 {
        return Err(Error::degree(format!(
            "degree {} does not divide degree {}",
            c.deg(),
            f.deg()
        )));
    }
    let e = f.deg() / c.deg();
    if c.deg() == 1 {
        let l = Linear::from_poly(c).expect("linear");
        return Ok(Some(l.invert().to_poly().compose(f)));
    }
    if e == 1 {
        return Ok(match_linear_right(c, f).first().map(Linear::to_poly));
    }
    let Some((a, g)) = right_factor(f, e)? else {
        return Ok(None);
    };
    Ok(match_linear_right(c, &a)
        .first()
        .map(|l| l.to_poly().compose(&g)))
}

pub fn equivalent_decompositions(u: &Decomposition, v: &Decomposition) -> bool {
    u.len() == v.len() && u == v
}

/// Output of [`gcd_split`]: `a = g∘â`, `c = g∘ĉ`, `b = b̂∘h`, `d = d̂∘h`,
/// `â∘b̂ = ĉ∘d̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdSplit {
    pub g: Poly,
    pub a_hat: Poly,
    pub c_hat: Poly,
    pub b_hat: Poly,
    pub d_hat: Poly,
    pub h: Poly,
}

impl GcdSplit {
    pub fn verify(&self, a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> bool {
        self.g.compose(&self.a_hat) == *a
            && self.g.compose(&self.c_hat) == *c
            && self.b_hat.compose(&self.h) == *b
            && self.d_hat.compose(&self.h) == *d
            && self.a_hat.compose(&self.b_hat) == self.c_hat.compose(&self.d_hat)
    }
}

/// Splits `a ∘ b = c ∘ d` through the common outer factor of degree
/// `gcd(deg a, deg c)` and the common inner factor of degree
/// `gcd(deg b, deg d)`.
pub fn gcd_split(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<GcdSplit> {
    if [a, b, c, d].iter().any(|p| p.is_constant()) {
        return Err(Error::degree("gcd_split needs nonconstant polynomials"));
    }
    if a.compose(b) != c.compose(d) {
        return Err(Error::invalid("a∘b and c∘d differ"));
    }
    let broken = || Error::invalid("common factor missing; input violates a∘b = c∘d");

    let dh = b.deg().gcd(&d.deg());
    let (b_hat, h) = inner_split(b, dh)?;
    let d_hat = right_divide(d, &h).ok_or_else(broken)?;

    let dg = a.deg().gcd(&c.deg());
    let (g, a_hat) = if dg == 1 {
        (Poly::x(), a.clone())
    } else if dg == a.deg() {
        (a.clone(), Poly::x())
    } else {
        right_factor(a, a.deg() / dg)?.ok_or_else(broken)?
    };
    let c_hat = left_divide(c, &g)?.ok_or_else(broken)?;
    Ok(GcdSplit { g, a_hat, c_hat, b_hat, d_hat, h })
}

/// `(q, h)` with `q ∘ h = p`, `deg h = k`, `h` normalized (or `X` when `k = 1`).
fn inner_split(p: &Poly, k: usize) -> Result<(Poly, Poly)> {
    if k == 1 {
        return Ok((p.clone(), Poly::x()));
    }
    if k == p.deg() {
        let (l, m) = split_affine(p);
        return Ok((l.to_poly(), m));
    }
    right_factor(p, k)?.ok_or_else(|| Error::invalid("common inner factor missing"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn root_candidate_recovers_monomial_shift() {
        // (X^2 + 2X)^2 + 2(X^2 + 2X) + 3
        let f = p(&[3, 4, 6, 4, 1]);
        assert_eq!(root_candidate(&f, 2), p(&[0, 2, 1]));
    }

    #[test]
    fn from_chain_absorbs_linears() {
        let chain = [p(&[1, 2]), p(&[0, 0, 1]), p(&[3, 1])];
        let dec = Decomposition::from_chain(&chain).unwrap();
        assert_eq!(dec.compose(), compose_all(&chain));
        assert_eq!(dec.degrees(), vec![2]);
    }

    #[test]
    fn match_linear_both_signs() {
        let ls = match_linear_right(&p(&[0, 0, 1]), &p(&[0, 0, 4]));
        assert_eq!(ls.len(), 2);
    }

    #[test]
    fn new_rejects_unnormalized() {
        assert!(Decomposition::new(Linear::identity(), vec![p(&[1, 0, 1])]).is_err());
        assert!(Decomposition::new(Linear::identity(), vec![p(&[0, 0, 2])]).is_err());
    }
}
