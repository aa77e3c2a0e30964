//! Exact rational polynomials and the algebraic subroutines built on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored in ascending order. The zero polynomial is the
/// empty vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial X.
    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x_pow(k: usize) -> Self {
        Poly::monomial(Rational::one(), k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(X))`.
    ///
    /// Monomial inner polynomials spread coefficients directly; sparse outer
    /// polynomials sum powers of `inner`; everything else uses Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        if self.is_constant() {
            return self.clone();
        }
        let support: Vec<usize> = (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        if inner.is_constant() {
            return Poly::constant(self.eval(&inner.coeff(0)));
        }
        if let [k] = inner.support()[..] {
            let c = &inner.coeffs[k];
            let mut out = vec![Rational::zero(); self.deg() * k + 1];
            let mut cp = Rational::one();
            for (j, a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    out[j * k] = a * &cp;
                }
                cp *= c;
            }
            return Poly::new(out);
        }
        if inner.deg() == 1 {
            // f(αX + β) = g(X + β/α) with g(X) = f(αX).
            let alpha = &inner.coeffs[1];
            let g = self.compose(&Poly::monomial(alpha.clone(), 1));
            return g.taylor_shift(&(&inner.coeffs[0] / alpha));
        }
        // inner = g(X^t): compose with g and spread.
        let t = inner.support().iter().fold(0usize, |acc, &e| acc.gcd(&e));
        if t > 1 {
            let g = Poly::new(inner.coeffs.iter().step_by(t).cloned().collect());
            let h = self.compose(&g);
            let mut out = vec![Rational::zero(); h.deg() * t + 1];
            for (j, c) in h.coeffs.into_iter().enumerate() {
                out[j * t] = c;
            }
            return Poly::new(out);
        }
        if 4 * support.len() <= self.coeffs.len() {
            let mut acc = Poly::constant(self.coeffs[0].clone());
            let mut power = Poly::one();
            let mut prev = 0;
            for &e in support.iter().filter(|&&e| e > 0) {
                power = &power * &inner.pow((e - prev) as u32);
                prev = e;
                acc = &acc + &power.scale(&self.coeffs[e]);
            }
            return acc;
        }
        if self.coeffs.len() > BLOCKED_COMPOSE_MIN_LEN {
            return compose_blocked(&self.coeffs, inner);
        }
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            if acc.coeffs.is_empty() {
                acc = Poly::constant(c.clone());
            } else {
                acc.coeffs[0] += c;
            }
        }
        acc.trim();
        acc
    }

    /// Exponents with nonzero coefficients, ascending.
    /// `self(X + beta)`.
    pub fn taylor_shift(&self, beta: &Rational) -> Poly {
        if beta.is_zero() || self.is_constant() {
            return self.clone();
        }
        compose_blocked(&self.coeffs, &Poly::new(vec![beta.clone(), Rational::one()]))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Integer coefficients and the common denominator `d` with
    /// `self = ints / d`.
    fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() { acc } else { acc.lcm(c.denom()) }
        });
        let ints = self
            .coeffs
            .iter()
            .map(|c| if d.is_one() { c.numer().clone() } else { c.numer() * (&d / c.denom()) })
            .collect();
        (ints, d)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        if d.is_integral() && d.lc().numer().magnitude().is_one() {
            return self.div_rem_unit(d);
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Division by an integer divisor with leading coefficient `±1`, run on
    /// integer numerators over one common denominator so no intermediate
    /// gcds are taken.
    fn div_rem_unit(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg();
        let (mut r, den) = self.clear_denominators();
        let dv: Vec<BigInt> = d.coeffs.iter().map(|c| c.numer().clone()).collect();
        let negate = dv[dd].is_negative();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = if negate { -&r[k + dd] } else { r[k + dd].clone() };
            if !c.is_zero() {
                for (j, dj) in dv.iter().enumerate().take(dd) {
                    if !dj.is_zero() {
                        r[k + j] -= &c * dj;
                    }
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        let over = |v: Vec<BigInt>| {
            Poly::new(v.into_iter().map(|n| Rational::new(n, den.clone())).collect())
        };
        (over(q), over(r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Canonical text form: descending powers, `*` between coefficient and
/// power, accepted verbatim by the expression parser.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Integer convolution over the nonzero terms, one rescale at the end.
        let (a, da) = self.clear_denominators();
        let (b, db) = rhs.clear_denominators();
        let bs: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        let a_nnz = a.iter().filter(|x| !x.is_zero()).count();
        let out = if a_nnz.min(bs.len()) >= KRONECKER_MIN_TERMS {
            kronecker_mul(&a, &b)
        } else {
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for &(j, y) in &bs {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let d = da * db;
        let coeffs = out
            .into_iter()
            .map(|c| {
                if d.is_one() || c.is_zero() {
                    Rational::from_integer(c)
                } else {
                    Rational::new(c, d.clone())
                }
            })
            .collect();
        Poly::new(coeffs)
    }
}

/// Operands with at least this many nonzero terms on both sides are
/// multiplied through a single big-integer product.
const KRONECKER_MIN_TERMS: usize = 32;

/// Integer polynomial product by Kronecker substitution: both operands are
/// packed into one integer each at a slot width that cannot overflow.
fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bits = |v: &[BigInt]| v.iter().map(|x| x.bits()).max().unwrap_or(0) as usize;
    let terms = a.len().min(b.len());
    let guard = usize::BITS as usize - terms.leading_zeros() as usize;
    // Every product coefficient has magnitude below 2^(width - 1).
    let width = bits(a) + bits(b) + guard + 2;
    let pa = pack(a, width);
    let pb = pack(b, width);
    let n = a.len() + b.len() - 1;
    // Offsetting each slot by 2^(width - 1) makes every digit nonnegative.
    let offset = pack_uniform(n, width);
    let shifted = (pa * pb + BigInt::from(offset.clone()))
        .to_biguint()
        .expect("offset dominates");
    let words = shifted.to_u32_digits();
    let half = BigInt::one() << (width - 1);
    (0..n)
        .map(|i| BigInt::from(extract_bits(&words, i * width, width)) - &half)
        .collect()
}

fn pack(v: &[BigInt], width: usize) -> BigInt {
    let total = (v.len() * width).div_ceil(32) + 1;
    let mut pos = vec![0u32; total];
    let mut neg = vec![0u32; total];
    for (i, x) in v.iter().enumerate() {
        let (sign, mag) = x.to_u32_digits();
        let target = if sign == num_bigint::Sign::Minus { &mut neg } else { &mut pos };
        or_at(target, i * width, &mag);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

/// `2^(width - 1)` in each of `n` slots.
fn pack_uniform(n: usize, width: usize) -> BigUint {
    let mut words = vec![0u32; (n * width).div_ceil(32) + 1];
    for i in 0..n {
        let bit = i * width + width - 1;
        words[bit / 32] |= 1 << (bit % 32);
    }
    BigUint::new(words)
}

fn or_at(words: &mut [u32], bitpos: usize, digits: &[u32]) {
    let (w, off) = (bitpos / 32, bitpos % 32);
    for (k, &d) in digits.iter().enumerate() {
        let wide = (d as u64) << off;
        words[w + k] |= wide as u32;
        if wide >> 32 != 0 {
            words[w + k + 1] |= (wide >> 32) as u32;
        }
    }
}

fn extract_bits(words: &[u32], start: usize, len: usize) -> BigUint {
    let (w, off) = (start / 32, start % 32);
    let end = ((start + len).div_ceil(32)).min(words.len());
    if w >= end {
        return BigUint::zero();
    }
    let raw = BigUint::from_slice(&words[w..end]) >> off;
    raw & ((BigUint::one() << len) - 1u32)
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Degree-one polynomial `scale*X + shift` with `scale != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Linear {
    scale: Rational,
    shift: Rational,
}

impl Linear {
    pub fn new(scale: Rational, shift: Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::invalid("linear polynomial needs a nonzero scale"));
        }
        Ok(Linear { scale, shift })
    }

    pub fn identity() -> Self {
        Linear { scale: Rational::one(), shift: Rational::zero() }
    }

    pub fn from_poly(p: &Poly) -> Option<Self> {
        (p.degree() == Some(1)).then(|| Linear { scale: p.coeff(1), shift: p.coeff(0) })
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(vec![self.shift.clone(), self.scale.clone()])
    }

    pub fn invert(&self) -> Linear {
        let s = self.scale.recip();
        Linear { shift: -(&self.shift * &s), scale: s }
    }

    /// `self ∘ inner`.
    pub fn then(&self, inner: &Linear) -> Linear {
        Linear {
            scale: &self.scale * &inner.scale,
            shift: &self.scale * &inner.shift + &self.shift,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }
}

/// Pairwise coprime squarefree monic bases with multiplicities, sorted by
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreePart {
    pub factors: Vec<(Poly, usize)>,
}

impl SquarefreePart {
    /// Product of `base^mult`, which is the monic part of the input.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (b, e)| &acc * &b.pow(*e as u32))
    }
}

pub fn compose(outer: &Poly, inner: &Poly) -> Poly {
    outer.compose(inner)
}

/// Composes `polys[0] ∘ polys[1] ∘ ...`; the empty chain is X.
pub fn compose_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let v: Vec<&Poly> = polys.into_iter().collect();
    v.iter()
        .rev()
        .fold(Poly::x(), |acc, p| p.compose(&acc))
}

pub fn derivative(f: &Poly) -> Poly {
    f.derivative()
}

/// Monic gcd. Rejects two zero inputs.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::invalid("gcd of two zero polynomials"));
    }
    Ok(gcd_raw(f, g))
}

fn gcd_raw(f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        // Keeping the remainder monic bounds coefficient growth.
        b = r.monic();
    }
    a.monic()
}

/// Yun's algorithm. Rejects constant input.
pub fn squarefree_decomposition(f: &Poly) -> Result<SquarefreePart> {
    if f.is_constant() {
        return Err(Error::degree("squarefree decomposition of a constant"));
    }
    let f = f.monic();
    let fp = f.derivative();
    let a0 = gcd_raw(&f, &fp);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = fp.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut factors = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_raw(&b, &d);
        if !a.is_constant() {
            factors.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(SquarefreePart { factors })
}

/// Resultant of two nonzero polynomials via the Euclidean remainder sequence.
pub fn resultant(a: &Poly, b: &Poly) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Rational::one();
    loop {
        let (m, k) = (a.deg(), b.deg());
        if k == 0 {
            return acc * pow_rat(&b.lc(), m);
        }
        if m == 0 {
            // Res(c, b) = c^deg b.
            return acc * pow_rat(&a.lc(), k);
        }
        let r = a.div_rem(&b).1;
        if r.is_zero() {
            return Rational::zero();
        }
        // Res(a,b) = (-1)^{mk} lc(b)^{m - deg r} Res(b, r)
        if (m * k) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&b.lc(), m - r.deg());
        a = b;
        b = r;
    }
}

pub fn pow_rat(x: &Rational, k: usize) -> Rational {
    num_traits::pow(x.clone(), k)
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(points: &[(Rational, Rational)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::new(vec![-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// `Res_X(f(X) - T, f'(X))` as a polynomial in T, by evaluation at
/// `deg f` integer nodes and interpolation.
pub fn resultant_in_t(f: &Poly) -> Result<Poly> {
    let n = f.deg();
    if f.is_zero() || n < 2 {
        return Err(Error::degree("resultant_in_t needs degree at least 2"));
    }
    let fp = f.derivative();
    let points: Vec<(Rational, Rational)> = (0..n as i64)
        .map(|t| {
            let t = rat(t);
            let ft = f - &Poly::constant(t.clone());
            (t, resultant(&ft, &fp))
        })
        .collect();
    Ok(interpolate(&points))
}

/// Base-`g` digits of `f`: `f = Σ digits[i] * g^i` with `deg digits[i] < deg g`.
pub fn radix_expand(f: &Poly, g: &Poly) -> Result<Vec<Poly>> {
    if g.is_constant() {
        return Err(Error::degree("radix base must be nonconstant"));
    }
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(g);
        digits.push(r);
        rest = q;
    }
    if digits.is_empty() {
        digits.push(Poly::zero());
    }
    Ok(digits)
}

/// Outer length above which composition switches from Horner to blocks.
const BLOCKED_COMPOSE_MIN_LEN: usize = 64;

/// Block size below which composition runs Horner directly.
const COMPOSE_BASE_LEN: usize = 16;

/// `coeffs ∘ inner`, splitting `coeffs = lo + X^h hi` with `h` a power of two
/// so every product is against a precomputed `inner^h`.
fn compose_blocked(coeffs: &[Rational], inner: &Poly) -> Poly {
    let mut powers = vec![inner.clone()];
    while (1usize << powers.len()) < coeffs.len() {
        let last = powers.last().expect("nonempty");
        powers.push(last * last);
    }
    compose_block(coeffs, &powers)
}

/// `coeffs ∘ powers[0]` where `powers[k] = powers[0]^(2^k)`.
fn compose_block(coeffs: &[Rational], powers: &[Poly]) -> Poly {
    if coeffs.len() <= COMPOSE_BASE_LEN {
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &powers[0]) + &Poly::constant(c.clone());
        }
        return acc;
    }
    let k = (coeffs.len() - 1).ilog2() as usize;
    let h = 1usize << k;
    let lo = compose_block(&coeffs[..h], powers);
    let hi = compose_block(&coeffs[h..], powers);
    &lo + &(&hi * &powers[k])
}

const SCALED_RADIX_MAX_BITS: usize = 1 << 14;

/// Top-down digit extraction `f -= a_i g^i`, for divisors whose integer
/// rescaling would be too large.
fn scalar_radix_by_powers(f: &Poly, g: &Poly) -> Option<Vec<Rational>> {
    let d = g.deg();
    if f.is_zero() {
        return Some(Vec::new());
    }
    if f.deg() % d != 0 {
        return None;
    }
    let m = f.deg() / d;
    let mut powers = vec![Poly::one()];
    for _ in 0..m {
        powers.push(powers.last().expect("nonempty") * g);
    }
    let mut digits = vec![Rational::zero(); m + 1];
    let mut rest = f.clone();
    for i in (0..=m).rev() {
        if rest.is_zero() {
            break;
        }
        let top = rest.deg();
        if top > i * d {
            return None;
        }
        if top == i * d {
            let c = rest.lc() / powers[i].lc();
            rest = &rest - &powers[i].scale(&c);
            digits[i] = c;
        }
    }
    Some(digits)
}

/// Base-`g` digits of `f` when they are all constants, i.e. the outer `a`
/// with `f = a ∘ g`; `None` as soon as a nonconstant digit appears.
pub fn scalar_radix(f: &Poly, g: &Poly) -> Option<Vec<Rational>> {
    if g.is_constant() {
        return None;
    }
    // With `g = c ĝ`, `ĝ` monic, and `D` clearing the denominators of `ĝ`,
    // `g'(Y) = D^d ĝ(Y / D)` is a monic integer polynomial and
    // `f(Y / D) = Σ a_i c^i D^(-d i) g'(Y)^i`, so the expansion runs in
    // integers over one common denominator.
    let dd = g.deg();
    let c = g.lc();
    let monic = g.monic();
    let scale = monic.coeffs.iter().fold(BigInt::one(), |acc, x| {
        if x.denom().is_one() { acc } else { acc.lcm(x.denom()) }
    });
    // Rescaling grows every coefficient of `f` by up to `deg f · bits(D)`.
    if scale.bits() as usize * f.coeffs.len() > SCALED_RADIX_MAX_BITS {
        return scalar_radix_by_powers(f, g);
    }
    let scale_r = Rational::from_integer(scale.clone());
    // Coefficient `i` of `g'` is `ĝ_i D^(d - i)`.
    let gv: Vec<BigInt> = monic
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, x)| (x * Rational::from_integer(scale.pow((dd - i) as u32))).to_integer())
        .collect();
    let shifted = if scale.is_one() {
        f.clone()
    } else {
        let inv = scale_r.recip();
        let mut p = Rational::one();
        Poly::new(
            f.coeffs
                .iter()
                .map(|x| {
                    let v = x * &p;
                    p = &p * &inv;
                    v
                })
                .collect(),
        )
    };
    let (mut rest, den) = shifted.clear_denominators();
    let mut raw = Vec::new();
    while !rest.is_empty() {
        if rest.len() <= dd {
            if rest[1..].iter().any(|x| !x.is_zero()) {
                return None;
            }
            raw.push(rest[0].clone());
            break;
        }
        let mut q = vec![BigInt::zero(); rest.len() - dd];
        for k in (0..q.len()).rev() {
            let lead = rest[k + dd].clone();
            if !lead.is_zero() {
                for (j, gj) in gv.iter().enumerate().take(dd) {
                    if !gj.is_zero() {
                        rest[k + j] -= &lead * gj;
                    }
                }
            }
            q[k] = lead;
        }
        if rest[1..dd].iter().any(|x| !x.is_zero()) {
            return None;
        }
        raw.push(rest[0].clone());
        while q.last().is_some_and(Zero::is_zero) {
            q.pop();
        }
        rest = q;
    }
    // a_i = raw_i D^(d i) / (den c^i)
    let step = Rational::from_integer(scale.pow(dd as u32)) / &c;
    let mut m = Rational::one() / Rational::from_integer(den);
    Some(
        raw.into_iter()
            .map(|x| {
                let v = Rational::from_integer(x) * &m;
                m = &m * &step;
                v
            })
            .collect(),
    )
}

/// Horner reconstruction inverse to [`radix_expand`].
pub fn radix_collect(digits: &[Poly], g: &Poly) -> Poly {
    digits
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, d| &(&acc * g) + d)
}

/// Distinct rational roots, ascending.
///
/// A rational root of a primitive integer polynomial with leading
/// coefficient `a` has the form `k/a`, so distinct candidates are at least
/// `1/|a|` apart. Real roots are isolated with a Sturm chain until each
/// interval is narrower than that, leaving one candidate per interval.
pub fn rational_roots(f: &Poly) -> Vec<Rational> {
    if f.is_constant() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let low_zero = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if low_zero > 0 {
        roots.push(Rational::zero());
    }
    let g = Poly::new(f.coeffs()[low_zero..].to_vec());
    if g.is_constant() {
        return roots;
    }
    let g = squarefree_kernel(&g);
    let ints = integer_coeffs(&g);
    let lead = ints.last().expect("nonconstant").abs();
    let g = Poly::new(ints.iter().cloned().map(Rational::from_integer).collect());

    let lead_r = Rational::from_integer(lead.clone());
    let bound = g.coeffs()[..g.deg()]
        .iter()
        .map(|c| c.abs() / &lead_r)
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::one();
    let chain = sturm_chain(&g);
    let (lo, hi) = (-bound.clone(), bound);
    let mut stack = vec![(lo.clone(), hi.clone(), sign_changes(&chain, &lo), sign_changes(&chain, &hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        if va <= vb {
            continue;
        }
        if (&b - &a) * &lead_r < Rational::one() {
            let k = (&b * &lead_r).floor();
            let x = k / &lead_r;
            if x > a && g.eval(&x).is_zero() {
                roots.push(x);
            }
            continue;
        }
        let mid = (&a + &b) / rat(2);
        let vm = sign_changes(&chain, &mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    roots.sort();
    roots
}

/// Sturm sequence of a squarefree polynomial, each entry scaled by a
/// positive constant to keep coefficients small.
fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        let s = r.lc().abs().recip();
        chain.push(-&r.scale(&s));
    }
    chain
}

fn sign_changes(chain: &[Poly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Product of the distinct monic squarefree bases.
fn squarefree_kernel(f: &Poly) -> Poly {
    let g = gcd_raw(f, &f.derivative());
    f.exact_div(&g).expect("gcd divides f").monic()
}

/// Primitive integer coefficient vector proportional to `f`.
pub fn integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Exact rational k-th root, if one exists (real root, k ≥ 1).
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if x.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return rational_root(&-x, k).map(|r| -r);
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    (num_traits::pow(n.clone(), k as usize) == *x.numer()
        && num_traits::pow(d.clone(), k as usize) == *x.denom())
    .then(|| Rational::new(n, d))
}

/// The monic `k` with `k^m = f / lc(f)`, if one exists.
pub fn poly_nth_root(f: &Poly, m: usize) -> Option<Poly> {
    if f.is_zero() || m == 0 || f.deg() % m != 0 {
        return None;
    }
    if m == 1 {
        return Some(f.monic());
    }
    let f = f.monic();
    let d = f.deg();
    let e = d / m;
    // Coefficients read from the top: p_j = [X^{d-j}] f, q_j = [X^{e-j}] k.
    let p: Vec<Rational> = (0..=e).map(|j| f.coeff(d - j)).collect();
    let alpha = Rational::new(BigInt::one(), BigInt::from(m));
    let mut q = vec![Rational::one()];
    for k in 1..=e {
        let mut acc = Rational::zero();
        for j in 1..=k {
            let w = (&alpha + Rational::one()) * rat(j as i64) - rat(k as i64);
            acc += w * &p[j] * &q[k - j];
        }
        q.push(acc / rat(k as i64));
    }
    q.reverse();
    let k = Poly::new(q);
    (k.pow(m as u32) == f).then_some(k)
}
