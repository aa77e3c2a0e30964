//! The combinatorial core of the coprime-degree case of `a∘b = c∘d`:
//! multiset systems of ramification indices, their three hypotheses and
//! three possible conclusions, exhaustive enumeration, and extraction of a
//! system from a concrete quadruple.
//!
//! `A_i` collects the ramification indices of `a` (degree `n`) over the
//! `i`-th finite branch point, `B_i` those of `c` (degree `m`).

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::forms::{multiplicity_pattern, ram_profile};
use crate::poly::{Poly, Rational};

/// Default bound on `m` and `n` for [`enumerate_systems`].
pub const DEFAULT_MAX_PARAM: usize = 7;
/// Default bound on the number of pairs for [`enumerate_systems`].
pub const DEFAULT_MAX_K: usize = 4;

/// `(A_i, B_i)` pairs for coprime `m, n > 1`.
///
/// Multisets are stored sorted ascending and the pairs sorted
/// lexicographically, since the branch points carry no order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetSystem {
    pub m: usize,
    pub n: usize,
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl MultisetSystem {
    /// Canonicalizes the pairs. Rejects `m` or `n` below 2, non-coprime
    /// `m, n`, and empty multisets or zero entries; the sums are left to
    /// [`check_hypotheses`].
    pub fn new(m: usize, n: usize, pairs: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        check_params(m, n)?;
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(mut a, mut b)| {
                a.sort_unstable();
                b.sort_unstable();
                (a, b)
            })
            .collect();
        if pairs.is_empty() {
            return Err(Error::invalid("a system needs at least one pair"));
        }
        for (a, b) in &pairs {
            if a.is_empty() || b.is_empty() || a.contains(&0) || b.contains(&0) {
                return Err(Error::invalid("multisets must be nonempty with positive entries"));
            }
        }
        pairs.sort();
        Ok(MultisetSystem { m, n, pairs })
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// The same system with the roles of `(m, A)` and `(n, B)` exchanged.
    pub fn mirror(&self) -> MultisetSystem {
        let pairs = self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        MultisetSystem::new(self.n, self.m, pairs).expect("mirror of a valid system")
    }
}

fn check_params(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::invalid(format!("m = {m} and n = {n} must both exceed 1")));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::invalid(format!("gcd({m}, {n}) is not 1")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conclusion {
    C1,
    C2,
    C3,
    Violation,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::C1 => "C1",
            Conclusion::C2 => "C2",
            Conclusion::C3 => "C3",
            Conclusion::Violation => "Violation",
        }
    }
}

/// A conclusion with the (0-based) pair index it holds at, for C1 and C2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConclusionTag {
    pub tag: Conclusion,
    pub witness_index: Option<usize>,
}

/// Contributions of one pair to the four hypothesis sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct PairSums {
    /// `n - |A|`
    a_defect: usize,
    /// `Σ_α Σ_β (α - gcd(α, β))`
    a_gcd: usize,
    /// `m - |B|`
    b_defect: usize,
    /// `Σ_α Σ_β (β - gcd(α, β))`
    b_gcd: usize,
}

impl PairSums {
    fn of(n: usize, m: usize, a: &[usize], b: &[usize]) -> Option<PairSums> {
        let mut s = PairSums {
            a_defect: n.checked_sub(a.len())?,
            b_defect: m.checked_sub(b.len())?,
            ..PairSums::default()
        };
        for &x in a {
            for &y in b {
                let g = x.gcd(&y);
                s.a_gcd += x - g;
                s.b_gcd += y - g;
            }
        }
        Some(s)
    }

    fn add(self, o: PairSums) -> PairSums {
        PairSums {
            a_defect: self.a_defect + o.a_defect,
            a_gcd: self.a_gcd + o.a_gcd,
            b_defect: self.b_defect + o.b_defect,
            b_gcd: self.b_gcd + o.b_gcd,
        }
    }

    fn fits(self, n: usize, m: usize) -> bool {
        self.a_defect < n && self.a_gcd < n && self.b_defect < m && self.b_gcd < m
    }

    fn is_target(self, n: usize, m: usize) -> bool {
        self.a_defect == n - 1 && self.a_gcd == n - 1 && self.b_defect == m - 1 && self.b_gcd == m - 1
    }
}

fn has_ramification(a: &[usize], b: &[usize]) -> bool {
    a.iter().chain(b).any(|&x| x > 1)
}

/// The three displayed hypotheses, plus the standing requirement that
/// every pair has an entry above 1. Without the latter an all-ones pair
/// could be appended to any system without changing a single sum.
pub fn check_hypotheses(sys: &MultisetSystem) -> bool {
    let (m, n) = (sys.m, sys.n);
    let mut total = PairSums::default();
    for (a, b) in &sys.pairs {
        if a.iter().sum::<usize>() != n || b.iter().sum::<usize>() != m || !has_ramification(a, b) {
            return false;
        }
        match PairSums::of(n, m, a, b) {
            Some(s) => total = total.add(s),
            None => return false,
        }
    }
    total.is_target(n, m)
}

/// `A = {n}`, exactly one element of `B` not divisible by `n`, and that
/// element coprime to `n`.
fn single_with_coprime_rest(a: &[usize], b: &[usize], n: usize) -> bool {
    if a != [n] {
        return false;
    }
    let mut off = b.iter().filter(|&&x| x % n != 0);
    matches!((off.next(), off.next()), (Some(&x), None) if x.gcd(&n) == 1)
}

/// Every conclusion that holds, in the order C1, C2, C3; `[Violation]` when
/// none does.
pub fn all_conclusions(sys: &MultisetSystem) -> Vec<ConclusionTag> {
    let mut out = Vec::new();
    for (i, (a, b)) in sys.pairs.iter().enumerate() {
        if single_with_coprime_rest(a, b, sys.n) {
            out.push(ConclusionTag { tag: Conclusion::C1, witness_index: Some(i) });
            break;
        }
    }
    for (i, (a, b)) in sys.pairs.iter().enumerate() {
        if single_with_coprime_rest(b, a, sys.m) {
            out.push(ConclusionTag { tag: Conclusion::C2, witness_index: Some(i) });
            break;
        }
    }
    let largest = sys.pairs.iter().flat_map(|(a, b)| a.iter().chain(b)).max();
    if sys.k() == 2 && largest == Some(&2) {
        out.push(ConclusionTag { tag: Conclusion::C3, witness_index: None });
    }
    if out.is_empty() {
        out.push(ConclusionTag { tag: Conclusion::Violation, witness_index: None });
    }
    out
}

/// The first conclusion that holds. Systems failing the hypotheses are
/// rejected.
pub fn classify_conclusion(sys: &MultisetSystem) -> Result<ConclusionTag> {
    if !check_hypotheses(sys) {
        return Err(Error::invalid("the system does not satisfy the hypotheses"));
    }
    Ok(all_conclusions(sys)[0])
}

/// `Σ_i (mn - Σ_α Σ_β gcd(α, β)) = mn - 1`, evaluated literally.
pub fn rh_identity_check(sys: &MultisetSystem) -> bool {
    let mn = (sys.m * sys.n) as i64;
    let total: i64 = sys
        .pairs
        .iter()
        .map(|(a, b)| {
            let g: usize = a.iter().flat_map(|&x| b.iter().map(move |&y| x.gcd(&y))).sum();
            mn - g as i64
        })
        .sum();
    total == mn - 1
}

/// Partitions of `n` as ascending sequences, in lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            if rest - part == 0 || rest - part >= part {
                cur.push(part);
                go(rest - part, part, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_param: usize,
    pub max_k: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds { max_param: DEFAULT_MAX_PARAM, max_k: DEFAULT_MAX_K }
    }
}

/// Every system with at most `k_max` pairs satisfying the hypotheses, each
/// once up to reordering of the pairs, in canonical order.
pub fn enumerate_systems(m: usize, n: usize, k_max: usize) -> Result<Vec<MultisetSystem>> {
    enumerate_systems_with(m, n, k_max, EnumerationBounds::default())
}

pub fn enumerate_systems_with(
    m: usize,
    n: usize,
    k_max: usize,
    bounds: EnumerationBounds,
) -> Result<Vec<MultisetSystem>> {
    check_params(m, n)?;
    if m > bounds.max_param || n > bounds.max_param {
        return Err(Error::TooLarge(format!(
            "m = {m}, n = {n} exceed the bound {}",
            bounds.max_param
        )));
    }
    if k_max == 0 || k_max > bounds.max_k {
        return Err(Error::TooLarge(format!("k_max = {k_max} is outside 1..={}", bounds.max_k)));
    }
    // Candidate pairs in canonical order. Every candidate has a positive
    // defect on at least one side, so at most `m + n - 2` pairs fit.
    let mut cands: Vec<(Vec<usize>, Vec<usize>, PairSums)> = Vec::new();
    for a in partitions(n) {
        for b in partitions(m) {
            if !has_ramification(&a, &b) {
                continue;
            }
            let s = PairSums::of(n, m, &a, &b).expect("partition lengths are bounded");
            if s.fits(n, m) {
                cands.push((a.clone(), b, s));
            }
        }
    }
    cands.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));

    /// Candidate pairs with their sums.
    type Candidate = (Vec<usize>, Vec<usize>, PairSums);

    // Pairs are chosen with non-decreasing candidate index, so each
    // multiset of pairs is produced once and already sorted.
    fn extend(
        start: usize,
        sums: PairSums,
        chosen: &mut Vec<usize>,
        ctx: (&[Candidate], usize, usize, usize),
        out: &mut Vec<Vec<usize>>,
    ) {
        let (cands, n, m, k_max) = ctx;
        if sums.is_target(n, m) {
            out.push(chosen.clone());
            return;
        }
        if chosen.len() == k_max {
            return;
        }
        for (i, c) in cands.iter().enumerate().skip(start) {
            let next = sums.add(c.2);
            if next.fits(n, m) {
                chosen.push(i);
                extend(i, next, chosen, ctx, out);
                chosen.pop();
            }
        }
    }
    let mut picks = Vec::new();
    extend(0, PairSums::default(), &mut Vec::new(), (&cands, n, m, k_max), &mut picks);

    let mut out: Vec<MultisetSystem> = picks
        .into_iter()
        .map(|idx| {
            let pairs = idx.iter().map(|&i| (cands[i].0.clone(), cands[i].1.clone())).collect();
            MultisetSystem::new(m, n, pairs).expect("candidates are valid")
        })
        .collect();
    out.sort();
    debug_assert!(out.iter().all(check_hypotheses));
    Ok(out)
}

/// The system of `a∘b = c∘d` with coprime `deg a = n`, `deg c = m`: one pair
/// per finite branch point of `a` or `c`, holding the ramification indices
/// of `a` and of `c` above it.
///
/// Needs every branch point of `a` and `c` to be rational.
pub fn system_from_quadruple(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<MultisetSystem> {
    if [a, b, c, d].iter().any(|p| p.deg() < 2) {
        return Err(Error::degree("all four polynomials need degree at least 2"));
    }
    if a.compose(b) != c.compose(d) {
        return Err(Error::invalid("a∘b and c∘d differ"));
    }
    let (n, m) = (a.deg(), c.deg());
    if b.deg() != m || d.deg() != n {
        return Err(Error::degree("expected deg b = deg c and deg d = deg a"));
    }
    check_params(m, n)?;
    let mut points: Vec<Rational> = Vec::new();
    for p in [a, c] {
        let prof = ram_profile(p)?;
        if prof.rational_branch_data.len() != prof.branch_count {
            return Err(Error::unsupported("irrational branch points"));
        }
        points.extend(prof.rational_branch_data.into_iter().map(|(t, _)| t));
    }
    points.sort();
    points.dedup();
    let fibre = |p: &Poly, t: &Rational| multiplicity_pattern(&(p - &Poly::constant(t.clone())));
    let pairs = points.iter().map(|t| (fibre(a, t), fibre(c, t))).collect();
    MultisetSystem::new(m, n, pairs)
}
