//! Decompositions of iterates `f^(e)`: every split `a ∘ b = f^(e)`, the
//! reduction peeling whole copies of `f` off both sides, and checks of the
//! bounds on what remains.

use num_traits::{One, Signed};

use crate::decompose::{
    complete_decomposition, left_divide, match_linear_left, right_divide, right_factor,
    Decomposition,
};
use crate::enumerate::SigmaMatch;
use crate::error::{Error, Result};
use crate::forms::{
    detect_cyclic, detect_dihedral, detect_twist_inner, detect_twist_outer, is_cyclic,
    is_dihedral, FormReport,
};
use crate::poly::{rational_root, Linear, Poly, Rational};

/// Largest `deg(f)^e` accepted by [`split_iterate`] by default.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Largest iterate degree [`ex2_family`] will expand.
pub const EX2_DEGREE_CAP: usize = 200_000;

/// `f ∘ f ∘ ... ∘ f` (`k` copies); `X` for `k = 0`.
pub fn iterate(f: &Poly, k: usize) -> Poly {
    let mut acc = Poly::x();
    for _ in 0..k {
        acc = f.compose(&acc);
    }
    acc
}

fn checked_power(n: usize, e: usize, cap: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..e {
        total = total
            .checked_mul(n)
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::TooLarge(format!("deg(f)^{e} exceeds the cap {cap}")))?;
    }
    Ok(total)
}

/// Every split `(a, b)` of `f^(e)` with `b` monic and `b(0) = 0`, one per
/// divisor `deg b` of `deg(f)^e` for which it exists, ascending. The trivial
/// splits `(f^(e), X)` and `(X, f^(e))` come first and last.
pub fn split_iterate(f: &Poly, e: usize, cap: usize) -> Result<Vec<(Poly, Poly)>> {
    if f.is_zero() || f.deg() < 2 {
        return Err(Error::degree("iterate splits need degree at least 2"));
    }
    if e == 0 {
        return Err(Error::invalid("iterate exponent must be positive"));
    }
    let total = checked_power(f.deg(), e, cap)?;
    let big = iterate(f, e);
    let mut out = vec![(big.clone(), Poly::x())];
    for d in (2..total).filter(|d| total % d == 0) {
        if let Some(pair) = right_factor(&big, d)? {
            out.push(pair);
        }
    }
    out.push((Poly::x(), big));
    Ok(out)
}

/// `a = f^(i) ∘ â`, `b = b̂ ∘ f^(j)`, `â ∘ b̂ = f^(k)`, with `i` and `j`
/// maximal, so `deg f` divides neither `deg â` nor `deg b̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterateSplit {
    pub a: Poly,
    pub b: Poly,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a_hat: Poly,
    pub b_hat: Poly,
}

impl IterateSplit {
    pub fn verify(&self, f: &Poly) -> bool {
        let n = f.deg();
        self.a == iterate(f, self.i).compose(&self.a_hat)
            && self.b == self.b_hat.compose(&iterate(f, self.j))
            && self.a_hat.compose(&self.b_hat) == iterate(f, self.k)
            && self.a_hat.deg() % n != 0
            && self.b_hat.deg() % n != 0
    }
}

fn max_power(n: usize, mut m: usize) -> usize {
    let mut i = 0;
    while m % n == 0 {
        m /= n;
        i += 1;
    }
    i
}

/// Peels the maximal iterates off `a` and `b` where `a ∘ b = f^(e)`.
pub fn reduce_split(f: &Poly, a: &Poly, b: &Poly, e: usize) -> Result<IterateSplit> {
    if a.compose(b) != iterate(f, e) {
        return Err(Error::invalid("a ∘ b is not the requested iterate"));
    }
    reduce_known_split(f, a, b, e)
}

/// As [`reduce_split`], trusting `a ∘ b = f^(e)`.
fn reduce_known_split(f: &Poly, a: &Poly, b: &Poly, e: usize) -> Result<IterateSplit> {
    if f.deg() < 2 {
        return Err(Error::degree("iterate splits need degree at least 2"));
    }
    let n = f.deg();
    let i = max_power(n, a.deg());
    let j = max_power(n, b.deg());
    let a_hat = if i == 0 {
        a.clone()
    } else {
        left_divide(a, &iterate(f, i))?
            .ok_or_else(|| Error::invalid("left factor is not an iterate"))?
    };
    let b_hat = if j == 0 {
        b.clone()
    } else {
        right_divide(b, &iterate(f, j))
            .ok_or_else(|| Error::invalid("right factor is not an iterate"))?
    };
    let k = e - i - j;
    // f^(i) ∘ (â ∘ b̂) = f^(i) ∘ f^(k) only fixes â ∘ b̂ up to a linear that
    // f^(i) absorbs; move that linear into â.
    let fk = iterate(f, k);
    let l = match_linear_left(&a_hat.compose(&b_hat), &fk)
        .ok_or_else(|| Error::invalid("reduced split differs from the iterate"))?;
    let a_hat = l.to_poly().compose(&a_hat);
    let s = IterateSplit { a: a.clone(), b: b.clone(), i, j, k, a_hat, b_hat };
    debug_assert!(s.verify(f));
    Ok(s)
}

/// True when `f = ℓ ∘ X^n ∘ ℓ⁻¹` for some complex linear `ℓ`.
///
/// With `f = c (X - beta)^n + v` and `ℓ = X/a + beta` this needs `v = beta`
/// and `a^(n-1) = c`, and the latter is always solvable over C.
pub fn is_power_conjugate(f: &Poly) -> bool {
    matches!(detect_cyclic(f), FormReport::Cyclic { witness, .. } if witness.v == witness.beta)
}

/// A rational `ℓ` with `f = ℓ ∘ X^n ∘ ℓ⁻¹`, when one exists.
pub fn power_conjugator(f: &Poly) -> Option<Linear> {
    match detect_cyclic(f) {
        FormReport::Cyclic { n, witness } if witness.v == witness.beta => {
            let a = rational_root(&witness.c, (n - 1) as u32)?;
            Some(Linear::new(a.recip(), witness.beta).expect("nonzero"))
        }
        _ => None,
    }
}

/// `ε` with `f = ℓ ∘ εT_n ∘ ℓ⁻¹` for some complex linear `ℓ`, if any.
pub fn chebyshev_conjugacy_sign(f: &Poly) -> Option<i8> {
    if f.deg() < 3 {
        return None;
    }
    let FormReport::Dihedral { n, witness: w } = detect_dihedral(f).ok()? else {
        return None;
    };
    // f = p T_n(alpha (X - beta)) + q is conjugate to ±T_n through
    // l = X/alpha + beta exactly when q = beta and p = ±1/alpha.
    if w.q != w.beta {
        return None;
    }
    if n % 2 == 1 {
        // p_alpha = p alpha.
        if w.p_alpha.abs().is_one() {
            return Some(if w.p_alpha.is_positive() { 1 } else { -1 });
        }
        None
    } else if &w.p_alpha * &w.p_alpha * &w.alpha_sq == Rational::one() {
        // p_alpha = p; the sign of alpha is free for even n.
        Some(1)
    } else {
        None
    }
}

/// Bounds on the reduced `k` over a set of splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub splits_checked: usize,
    pub max_k: usize,
    /// The split attaining `max_k` and the iterate exponent it splits.
    pub extremal: Option<(usize, IterateSplit)>,
    /// `2^k <= n + 2` for every split.
    pub log_bound_holds: bool,
    /// `2^k <= n` for every split; `None` when `n = 6`.
    pub refined_bound_holds: Option<bool>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.log_bound_holds && self.refined_bound_holds != Some(false)
    }
}

fn check_hypothesis(f: &Poly) -> Result<()> {
    if f.deg() < 2 {
        return Err(Error::degree("iterates need degree at least 2"));
    }
    if is_power_conjugate(f) {
        return Err(Error::invalid("f is conjugate to X^n"));
    }
    if chebyshev_conjugacy_sign(f).is_some() {
        return Err(Error::invalid("f is conjugate to ±T_n"));
    }
    Ok(())
}

fn bound_report(n: usize, splits: Vec<(usize, IterateSplit)>) -> BoundReport {
    let pow2 = |k: usize| 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
    let mut report = BoundReport {
        n,
        splits_checked: splits.len(),
        max_k: 0,
        extremal: None,
        log_bound_holds: true,
        refined_bound_holds: (n != 6).then_some(true),
    };
    for (e, s) in splits {
        report.log_bound_holds &= pow2(s.k) <= n + 2;
        if let Some(r) = report.refined_bound_holds.as_mut() {
            *r &= pow2(s.k) <= n;
        }
        if report.extremal.is_none() || s.k > report.max_k {
            report.max_k = s.k;
            report.extremal = Some((e, s));
        }
    }
    report
}

/// Reduces every split of `f^(1) .. f^(e)` and checks the bounds on `k`.
/// Fails when `f` is conjugate to `X^n` or `±T_n`.
pub fn iterates_bound_check(f: &Poly, e: usize, cap: usize) -> Result<BoundReport> {
    check_hypothesis(f)?;
    let mut splits = Vec::new();
    for ee in 1..=e {
        for (a, b) in split_iterate(f, ee, cap)? {
            splits.push((ee, reduce_known_split(f, &a, &b, ee)?));
        }
    }
    Ok(bound_report(f.deg(), splits))
}

/// Bound check on explicitly supplied splits `(a, b, e)` with `a ∘ b = f^(e)`.
/// Used where `f^(e)` is too large to enumerate.
pub fn iterates_bound_check_splits(f: &Poly, splits: &[(Poly, Poly, usize)]) -> Result<BoundReport> {
    check_hypothesis(f)?;
    let reduced = splits
        .iter()
        .map(|(a, b, e)| Ok((*e, reduce_split(f, a, b, *e)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(bound_report(f.deg(), reduced))
}

/// The family `f_i = X (1 + X^(2^i))^(2^(m-i))`, `f = f_m ∘ X^2`,
/// `a = f_m ∘ ... ∘ f_0`, `b = X^(2^(m+1))`, where `a ∘ b = f^(m+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ex2Family {
    pub m: usize,
    pub ladder: Vec<Poly>,
    pub f: Poly,
    pub a: Poly,
    pub b: Poly,
    /// Every `X^2 ∘ f_i = f_(i-1) ∘ X^2` and `a ∘ b = f^(m+1)`.
    pub ladder_checks: bool,
}

pub fn ex2_ladder_poly(m: usize, i: usize) -> Poly {
    let inner = &Poly::one() + &Poly::x_pow(1 << i);
    &Poly::x() * &inner.pow(1 << (m - i))
}

pub fn ex2_family(m: usize) -> Result<Ex2Family> {
    if m == 0 || m > 8 {
        return Err(Error::invalid("ex2 family needs 1 <= m <= 8"));
    }
    let deg_f = (1usize << (m + 1)) + 2;
    checked_power(deg_f, m + 1, EX2_DEGREE_CAP)?;
    let ladder: Vec<Poly> = (0..=m).map(|i| ex2_ladder_poly(m, i)).collect();
    let x2 = Poly::x_pow(2);
    let mut ok = (1..=m).all(|i| x2.compose(&ladder[i]) == ladder[i - 1].compose(&x2));
    let f = ladder[m].compose(&x2);
    let a = ladder.iter().rev().skip(1).fold(ladder[m].clone(), |acc, fi| acc.compose(fi));
    let b = Poly::x_pow(1 << (m + 1));
    ok &= a.compose(&b) == iterate(&f, m + 1);
    Ok(Ex2Family { m, ladder, f, a, b, ladder_checks: ok })
}

/// Membership in the class of polynomials that occur in Ritt moves:
/// equivalent to `X^s h(X^n)` or `X^s h(X)^n` with `gcd(s, n) = 1`, `n > 1`.
pub fn in_ritt_move_class(u: &Poly) -> Result<bool> {
    if u.deg() < 2 {
        return Ok(false);
    }
    if is_cyclic(u) || (u.deg() % 2 == 1 && is_dihedral(u)) {
        return Ok(true);
    }
    if let FormReport::TwistInner { s, n, .. } = detect_twist_inner(u)? {
        if primes_below(n + 1).iter().any(|&p| n % p == 0 && s % p != 0) {
            return Ok(true);
        }
    }
    for p in primes_below(u.deg()) {
        if !detect_twist_outer(u, p)?.is_none() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn primes_below(n: usize) -> Vec<usize> {
    (2..n).filter(|&q| (2..q).all(|t| q % t != 0)).collect()
}

/// Per-factor verdicts of [`precise_iterates_check`] for one split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorClauses {
    pub index: usize,
    pub degree: usize,
    pub class: &'static str,
    pub in_z: bool,
    /// `deg(b̄) · deg(c)`: the largest `LR` times the largest `RL` over the
    /// copies of this factor in the decomposition of the iterate.
    pub quadrant_product: usize,
    /// Clause 1, read as "`u ∉ Z` implies `e <= 2`".
    pub clause1: bool,
    /// Clause 1, read as "`u ∉ Z` implies quadrant product `<= 2`".
    pub clause1_quadrant: bool,
    pub clause2: Option<bool>,
    /// Whether clause 2 holds with equality `n = 2 deg(u) = 2^e + 2`.
    pub clause2_tight: bool,
    pub clause3: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreciseSplitReport {
    pub e: usize,
    pub a: Poly,
    pub b: Poly,
    pub factors: Vec<FactorClauses>,
    pub clause4: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreciseReport {
    pub n: usize,
    pub decomposition: Decomposition,
    pub splits: Vec<PreciseSplitReport>,
    /// Which reading of clause 1 the boolean `holds` uses.
    pub clause1_reading: &'static str,
    /// Conjugating linear for clause 4 when every factor is cyclic.
    pub power_conjugator: Option<Linear>,
    pub chebyshev_sign: Option<i8>,
}

impl PreciseReport {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.splits {
            for c in &s.factors {
                let checks = [
                    ("1", Some(c.clause1 && c.clause1_quadrant)),
                    ("2", c.clause2),
                    ("3", c.clause3),
                ];
                for (name, ok) in checks {
                    if ok == Some(false) {
                        out.push(format!("e={} factor {}: clause {name}", s.e, c.index));
                    }
                }
            }
            if s.clause4 == Some(false) {
                out.push(format!("e={}: clause 4", s.e));
            }
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

/// For every split of `f^(2) .. f^(e)` that peels no copy of `f` from
/// either side, checks the four clauses on each factor of a complete
/// decomposition of `f`.
pub fn precise_iterates_check(f: &Poly, e: usize, cap: usize) -> Result<PreciseReport> {
    let u = complete_decomposition(f)?;
    let n = f.deg();
    let classes: Vec<&'static str> = u.factors.iter().map(|x| crate::ritt::monodromy_class(x)).collect();
    let in_z = u
        .factors
        .iter()
        .map(in_ritt_move_class)
        .collect::<Result<Vec<_>>>()?;
    let all_cyclic = classes.iter().all(|c| *c == "cyclic");
    let pc = power_conjugator(f);
    let conj = is_power_conjugate(f);
    let sign = chebyshev_conjugacy_sign(f);
    let mut splits = Vec::new();
    for ee in 2..=e {
        for (a, b) in split_iterate(f, ee, cap)? {
            let s = reduce_known_split(f, &a, &b, ee)?;
            if s.i > 0 || s.j > 0 {
                continue;
            }
            let products = quadrant_products(&u, &a, &b, ee)?;
            let mut factors = Vec::new();
            for (idx, x) in u.factors.iter().enumerate() {
                let d = x.deg();
                let generic = classes[idx] == "other";
                let clause2 = generic.then(|| {
                    let six = n >= 6 * d && 6 * d >= 6 * ((1 << (ee - 2)) + 1);
                    let two = n >= 2 * d && 2 * d >= (1 << ee) + 2;
                    six || two
                });
                let clause3 = (ee > 3 && classes[idx] == "dihedral").then_some(sign.is_some());
                factors.push(FactorClauses {
                    index: idx,
                    degree: d,
                    class: classes[idx],
                    in_z: in_z[idx],
                    quadrant_product: products[idx],
                    clause1: in_z[idx] || ee <= 2,
                    clause1_quadrant: in_z[idx] || products[idx] <= 2,
                    clause2,
                    clause2_tight: generic && n == 2 * d && 2 * d == (1 << ee) + 2,
                    clause3,
                });
            }
            let clause4 = (ee > 2 && all_cyclic).then_some(conj);
            splits.push(PreciseSplitReport { e: ee, a, b, factors, clause4 });
        }
    }
    Ok(PreciseReport {
        n,
        decomposition: u,
        splits,
        clause1_reading: "u not in Z implies e <= 2 and quadrant product <= 2",
        power_conjugator: pc,
        chebyshev_sign: sign,
    })
}

/// For each factor `u_i` of `u`, the largest `LR` times the largest `RL`
/// over its copies `i + m r` in the repeated decomposition of `f^(e)`,
/// measured against a complete decomposition passing through `a ∘ b`.
fn quadrant_products(u: &Decomposition, a: &Poly, b: &Poly, e: usize) -> Result<Vec<usize>> {
    let r = u.len();
    let source: Vec<usize> = (0..e).flat_map(|_| u.degrees()).collect();
    let mut target = Vec::new();
    for side in [a, b] {
        if side.deg() >= 2 {
            target.extend(complete_decomposition(side)?.degrees());
        }
    }
    let sigma = SigmaMatch::from_degrees(&source, &target)?;
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let (mut lr, mut rl) = (1, 1);
        for m in 0..e {
            let q = sigma.quadrants(i + m * r, i + m * r)?;
            lr = lr.max(q.lr);
            rl = rl.max(q.rl);
        }
        out.push(lr * rl);
    }
    Ok(out)
}
