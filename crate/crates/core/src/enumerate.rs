//! Every equivalence class of complete decompositions, the degree matching
//! between two of them, and checkers for the structural statements relating
//! any two complete decompositions of the same polynomial.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chebyshev::chebyshev;
use crate::decompose::{
    complete_decomposition, is_indecomposable, match_linear_left, right_divide, right_factor,
    split_affine, Decomposition,
};
use crate::error::{Error, Result};
use crate::forms::{center_point, detect_cyclic, is_cyclic, is_dihedral, shift_x, FormReport};
use crate::poly::{compose_all, poly_nth_root, rat, Linear, Poly};
use crate::ritt::ritt_neighbors_of_pair;

/// Seed and size of the reference corpus.
pub const CORPUS_SEED: u64 = 20_240_601;
pub const CORPUS_SIZE: usize = 200;

/// Class count above which [`all_classes`] gives up.
pub const DEFAULT_CLASS_CAP: usize = 100_000;

/// All classes of complete decompositions of `f`, in canonical order.
pub fn all_classes(f: &Poly) -> Result<Vec<Decomposition>> {
    if f.is_zero() || f.deg() < 2 {
        return Err(Error::degree("enumeration needs degree at least 2"));
    }
    all_classes_from(&complete_decomposition(f)?, DEFAULT_CLASS_CAP)
}

/// Breadth-first closure of `start` under Ritt moves. Fails with
/// `TooLarge` once more than `cap` classes have been seen.
pub fn all_classes_from(start: &Decomposition, cap: usize) -> Result<Vec<Decomposition>> {
    if start.is_empty() {
        return Err(Error::degree("enumeration needs degree at least 2"));
    }
    let mut seen: HashSet<Decomposition> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(u) = queue.pop_front() {
        for i in 0..u.len() - 1 {
            for (c, d) in ritt_neighbors_of_pair(&u.factors[i], &u.factors[i + 1])? {
                let w = replace_pair(&u, i, c, d)?;
                if seen.contains(&w) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::TooLarge(format!("more than {cap} classes")));
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<Decomposition> = seen.into_iter().collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

fn replace_pair(u: &Decomposition, i: usize, c: Poly, d: Poly) -> Result<Decomposition> {
    let mut chain = Vec::with_capacity(u.len() + 1);
    chain.push(u.leading.to_poly());
    chain.extend_from_slice(&u.factors[..i]);
    chain.push(c);
    chain.push(d);
    chain.extend_from_slice(&u.factors[i + 2..]);
    Decomposition::from_chain(&chain)
}

/// Degree sequence, then factor coefficients, then the leading linear.
pub fn canonical_cmp(u: &Decomposition, v: &Decomposition) -> Ordering {
    u.degrees()
        .cmp(&v.degrees())
        .then_with(|| {
            u.factors
                .iter()
                .map(Poly::coeffs)
                .cmp(v.factors.iter().map(Poly::coeffs))
        })
        .then_with(|| u.leading.scale().cmp(v.leading.scale()))
        .then_with(|| u.leading.shift().cmp(v.leading.shift()))
}

/// `permutation[i]` is the position in the target matched with position `i`
/// of the source. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMatch {
    pub permutation: Vec<usize>,
    pub source_degrees: Vec<usize>,
    pub target_degrees: Vec<usize>,
}

impl SigmaMatch {
    /// Stable matching of equal degrees.
    pub fn from_degrees(source: &[usize], target: &[usize]) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::invalid("decompositions of different lengths"));
        }
        let mut used = vec![false; target.len()];
        let mut permutation = Vec::with_capacity(source.len());
        for &d in source {
            let j = (0..target.len())
                .find(|&j| !used[j] && target[j] == d)
                .ok_or_else(|| Error::invalid("degree multisets differ"))?;
            used[j] = true;
            permutation.push(j);
        }
        Ok(SigmaMatch {
            permutation,
            source_degrees: source.to_vec(),
            target_degrees: target.to_vec(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Pairs `i < j` with `σ(i) > σ(j)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let r = self.permutation.len();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                if self.permutation[i] > self.permutation[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Quadrant degree products at source positions `i` and `j`.
    pub fn quadrants(&self, i: usize, j: usize) -> Result<Quadrants> {
        let r = self.permutation.len();
        if i >= r || j >= r {
            return Err(Error::invalid(format!("index out of range for length {r}")));
        }
        let sj = self.permutation[j];
        let mut q = Quadrants { ll: 1, lr: 1, rl: 1, rr: 1 };
        for (k, (&sk, &deg)) in self.permutation.iter().zip(&self.source_degrees).enumerate() {
            if k == i || sk == sj {
                continue;
            }
            let slot = match (k < i, sk < sj) {
                (true, true) => &mut q.ll,
                (true, false) => &mut q.lr,
                (false, true) => &mut q.rl,
                (false, false) => &mut q.rr,
            };
            *slot *= deg;
        }
        Ok(q)
    }
}

/// Degree products over positions left/right of `i` in the source whose
/// partners lie left/right of `σ(j)` in the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrants {
    pub ll: usize,
    pub lr: usize,
    pub rl: usize,
    pub rr: usize,
}

/// Checks that `u` and `v` decompose the same polynomial, then matches degrees.
pub fn sigma_match(u: &Decomposition, v: &Decomposition) -> Result<SigmaMatch> {
    if u.compose() != v.compose() {
        return Err(Error::invalid("decompositions of different polynomials"));
    }
    SigmaMatch::from_degrees(&u.degrees(), &v.degrees())
}

pub fn quadrants(u: &Decomposition, v: &Decomposition, i: usize, j: usize) -> Result<Quadrants> {
    sigma_match(u, v)?.quadrants(i, j)
}

/// Every inverted pair has coprime degrees.
pub fn coprime_inversion_check(u: &Decomposition, v: &Decomposition) -> Result<bool> {
    Ok(coprime_inversions(&sigma_match(u, v)?))
}

fn coprime_inversions(s: &SigmaMatch) -> bool {
    s.inversions()
        .iter()
        .all(|&(i, j)| s.source_degrees[i].gcd(&s.source_degrees[j]) == 1)
}

/// `f = a ∘ g` with `deg g = e`, allowing the trivial cases `e = 1` and
/// `e = deg f`.
fn split_right(f: &Poly, e: usize) -> Result<Option<(Poly, Poly)>> {
    let n = f.deg();
    if e == 1 {
        return Ok(Some((f.clone(), Poly::x())));
    }
    if e == n {
        let (l, m) = split_affine(f);
        return Ok(Some((l.to_poly(), m)));
    }
    right_factor(f, e)
}

fn prefix(u: &Decomposition, k: usize) -> Poly {
    u.leading.to_poly().compose(&compose_all(&u.factors[..k]))
}

fn suffix(u: &Decomposition, k: usize) -> Poly {
    compose_all(&u.factors[k + 1..])
}

/// Polynomials satisfying the five identities tying position `k` of `U` to
/// its partner in `V`:
///
/// 1. `prefix = a∘b`, `suffix = c∘d`
/// 2. `b∘u_k = û∘b̂`
/// 3. `û∘b̂∘c = c̃∘ũ∘b̃`
/// 4. `u_k∘c = c̄∘ū`
/// 5. `b∘c̄∘ū = ċ∘ũ∘ḃ`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClumpsWitness {
    pub quadrants: Quadrants,
    pub u_k: Poly,
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub u_hat: Poly,
    pub b_hat: Poly,
    pub u_tilde: Poly,
    pub c_tilde: Poly,
    pub b_tilde: Poly,
    pub u_bar: Poly,
    pub c_bar: Poly,
    pub c_dot: Poly,
    pub b_dot: Poly,
}

impl ClumpsWitness {
    /// Index of the first identity that fails, if any.
    pub fn first_failure(&self, pre: &Poly, suf: &Poly) -> Option<usize> {
        let c = compose_all;
        if *pre != self.a.compose(&self.b) || *suf != self.c.compose(&self.d) {
            return Some(1);
        }
        if self.b.compose(&self.u_k) != self.u_hat.compose(&self.b_hat) {
            return Some(2);
        }
        if c([&self.u_hat, &self.b_hat, &self.c]) != c([&self.c_tilde, &self.u_tilde, &self.b_tilde]) {
            return Some(3);
        }
        if self.u_k.compose(&self.c) != self.c_bar.compose(&self.u_bar) {
            return Some(4);
        }
        if c([&self.b, &self.c_bar, &self.u_bar]) != c([&self.c_dot, &self.u_tilde, &self.b_dot]) {
            return Some(5);
        }
        None
    }
}

fn step_failed(i: usize) -> Error {
    Error::invalid(format!("clumps identity {i} could not be constructed"))
}

/// Builds and verifies the witness bundle at source position `k`.
pub fn clumps_witness(u: &Decomposition, v: &Decomposition, k: usize) -> Result<ClumpsWitness> {
    let sigma = sigma_match(u, v)?;
    let q = sigma.quadrants(k, k)?;
    let (lr, rl) = (q.lr, q.rl);
    let p = u.factors[k].deg();
    if lr.gcd(&rl) != 1 || lr.gcd(&p) != 1 || rl.gcd(&p) != 1 {
        return Err(Error::invalid("quadrant degrees are not pairwise coprime"));
    }
    let u_k = u.factors[k].clone();
    let jt = sigma.permutation[k];
    let g = prefix(u, k);
    let h = suffix(u, k);
    let g_t = prefix(v, jt);
    let u_tilde = v.factors[jt].clone();
    let h_t = suffix(v, jt);

    // Common left factor of degree LL, common right factor of degree RR.
    let (a, b) = split_right(&g, lr)?.ok_or_else(|| step_failed(1))?;
    let g_hat = crate::decompose::left_divide(&g_t, &a)?.ok_or_else(|| step_failed(1))?;
    let (c, d) = split_right(&h, q.rr)?.ok_or_else(|| step_failed(1))?;
    let h_hat = right_divide(&h_t, &d).ok_or_else(|| step_failed(1))?;

    let (u_hat, b_hat) = split_right(&b.compose(&u_k), lr)?.ok_or_else(|| step_failed(2))?;

    let target = compose_all([&g_hat, &u_tilde, &h_hat]);
    let l3 = match_linear_left(&target, &compose_all([&u_hat, &b_hat, &c]))
        .ok_or_else(|| step_failed(3))?;
    let c_tilde = l3.to_poly().compose(&g_hat);

    let (c_bar, u_bar) = split_right(&u_k.compose(&c), p)?.ok_or_else(|| step_failed(4))?;
    let l5 = match_linear_left(&target, &compose_all([&b, &c_bar, &u_bar]))
        .ok_or_else(|| step_failed(5))?;
    let c_dot = l5.to_poly().compose(&g_hat);

    let w = ClumpsWitness {
        quadrants: q,
        u_k,
        a,
        b,
        c,
        d,
        u_hat,
        b_hat,
        u_tilde,
        c_tilde,
        b_tilde: h_hat.clone(),
        u_bar,
        c_bar,
        c_dot,
        b_dot: h_hat,
    };
    if let Some(i) = w.first_failure(&g, &h) {
        return Err(step_failed(i));
    }
    let degrees_ok = w.a.deg() == q.ll
        && w.d.deg() == q.rr
        && [&w.b, &w.b_hat, &w.b_tilde, &w.b_dot].iter().all(|x| x.deg() == lr)
        && [&w.c, &w.c_tilde, &w.c_bar, &w.c_dot].iter().all(|x| x.deg() == rl)
        && [&w.u_hat, &w.u_tilde, &w.u_bar].iter().all(|x| x.deg() == p);
    if !degrees_ok {
        return Err(Error::invalid("clumps witness has wrong degrees"));
    }
    for x in [&w.u_hat, &w.u_tilde, &w.u_bar] {
        if !is_indecomposable(x)? {
            return Err(Error::invalid(format!("clumps witness {x} is decomposable")));
        }
    }
    Ok(w)
}

/// Outcome of [`mess_check`]. `shape` is `None` when both quadrant degrees
/// are 1 and there is nothing to exhibit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessReport {
    pub n: usize,
    pub m: usize,
    pub deg_uk: usize,
    pub bound_holds: bool,
    pub shape: Option<bool>,
}

impl MessReport {
    pub fn holds(&self) -> bool {
        self.bound_holds && self.shape != Some(false)
    }
}

/// With `n = LR` and `m = RL` at `k`, checks `mn < deg u_k` and exhibits
/// `u_k = (X - δ) ∘ X^s h(X^n)^m ∘ (X + β)` with the prefix ending in
/// `X^n ∘ (X + δ)` and the suffix starting with `(X - β) ∘ X^m`.
pub fn mess_check(u: &Decomposition, v: &Decomposition, k: usize) -> Result<MessReport> {
    let u_k = u
        .factors
        .get(k)
        .ok_or_else(|| Error::invalid("index out of range"))?;
    if is_cyclic(u_k) || is_dihedral(u_k) {
        return Err(Error::invalid("u_k is cyclic or dihedral"));
    }
    let q = sigma_match(u, v)?.quadrants(k, k)?;
    let (n, m) = (q.lr, q.rl);
    let deg_uk = u_k.deg();
    let shape = if n == 1 && m == 1 { None } else { Some(mess_shape(u, k, n, m)?) };
    Ok(MessReport { n, m, deg_uk, bound_holds: m * n < deg_uk, shape })
}

fn mess_shape(u: &Decomposition, k: usize, n: usize, m: usize) -> Result<bool> {
    let u_k = &u.factors[k];
    let beta = if m >= 2 {
        let h = suffix(u, k);
        let Some((left, _)) = split_right(&h, h.deg() / m)? else {
            return Ok(false);
        };
        match detect_cyclic(&left) {
            FormReport::Cyclic { witness, .. } => -witness.v,
            _ => return Ok(false),
        }
    } else {
        -center_point(u_k)
    };
    let shifted = shift_x(u_k, &-beta);
    let delta = if n >= 2 {
        let g = prefix(u, k);
        let Some((_, right)) = split_right(&g, n)? else {
            return Ok(false);
        };
        match detect_cyclic(&right) {
            FormReport::Cyclic { witness, .. } => -witness.beta,
            _ => return Ok(false),
        }
    } else {
        -shifted.coeff(0)
    };
    let core = &shifted + &Poly::constant(delta);
    let s = core.coeffs().iter().take_while(|c| c.is_zero()).count();
    if s.gcd(&(m * n)) != 1 {
        return Ok(false);
    }
    let rest = Poly::new(core.coeffs()[s..].to_vec());
    if rest.support().iter().any(|e| e % n != 0) {
        return Ok(false);
    }
    Ok(poly_nth_root(&rest, m).is_some())
}

/// Outcome of [`cheb_move_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebMoveReport {
    /// `RL(i-1, k)` when `i > k`, `LR(i+1, k)` when `i < k`, 1 when `i = k`.
    pub product: usize,
    pub applicable: bool,
    /// Whether the sub-composition between `k` and `i` is dihedral.
    pub dihedral: bool,
}

impl ChebMoveReport {
    pub fn holds(&self) -> bool {
        !self.applicable || self.dihedral
    }
}

/// When the quadrant product between a dihedral `u_k` and position `i`
/// exceeds 2, the composition of `u_k .. u_i` (or `u_i .. u_k`) must be
/// dihedral.
pub fn cheb_move_check(
    u: &Decomposition,
    v: &Decomposition,
    k: usize,
    i: usize,
) -> Result<ChebMoveReport> {
    let r = u.len();
    if k >= r || i >= r {
        return Err(Error::invalid("index out of range"));
    }
    if !is_dihedral(&u.factors[k]) {
        return Err(Error::invalid("u_k is not dihedral"));
    }
    let sigma = sigma_match(u, v)?;
    let (product, range) = match i.cmp(&k) {
        Ordering::Equal => (1, k..=k),
        Ordering::Greater => (sigma.quadrants(i - 1, k)?.rl, k..=i),
        Ordering::Less => (sigma.quadrants(i + 1, k)?.lr, i..=k),
    };
    let applicable = product > 2;
    let dihedral = is_dihedral(&compose_all(&u.factors[range]));
    Ok(ChebMoveReport { product, applicable, dihedral })
}

/// Outcome of [`cyclic_chain_barrier_check`]. A barrier at `k` sits between
/// factors `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrierReport {
    pub barriers: Vec<usize>,
    pub classes: usize,
    /// `(class index, barrier)` pairs where the matching crosses a barrier.
    pub violations: Vec<(usize, usize)>,
}

impl BarrierReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Barriers of a chain of cyclic factors, checked against every class.
pub fn cyclic_chain_barrier_check(u: &Decomposition) -> Result<BarrierReport> {
    let mut witnesses = Vec::new();
    for f in &u.factors {
        match detect_cyclic(f) {
            FormReport::Cyclic { witness, .. } => witnesses.push(witness),
            _ => return Err(Error::invalid(format!("factor {f} is not cyclic"))),
        }
    }
    let barriers: Vec<usize> = (0..witnesses.len().saturating_sub(1))
        .filter(|&k| witnesses[k].beta != witnesses[k + 1].v)
        .collect();
    let classes = all_classes_from(u, DEFAULT_CLASS_CAP)?;
    let mut violations = Vec::new();
    for (idx, v) in classes.iter().enumerate() {
        let s = SigmaMatch::from_degrees(&u.degrees(), &v.degrees())?;
        for &k in &barriers {
            if (0..u.len()).any(|j| (s.permutation[j] <= k) != (j <= k)) {
                violations.push((idx, k));
            }
        }
    }
    Ok(BarrierReport { barriers, classes: classes.len(), violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockTag {
    CyclicBlock,
    DihedralBlock,
    Indecomposable,
}

impl BlockTag {
    pub fn name(&self) -> &'static str {
        match self {
            BlockTag::CyclicBlock => "cyclic",
            BlockTag::DihedralBlock => "dihedral",
            BlockTag::Indecomposable => "indecomposable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub poly: Poly,
    pub tag: BlockTag,
}

/// `leading ∘ blocks[0] ∘ ...`, blocks normalized like decomposition factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForm {
    pub leading: Linear,
    pub blocks: Vec<Block>,
}

impl BlockForm {
    pub fn compose(&self) -> Poly {
        self.leading
            .to_poly()
            .compose(&compose_all(self.blocks.iter().map(|b| &b.poly)))
    }
}

fn tag_of(p: &Poly) -> BlockTag {
    if is_cyclic(p) {
        BlockTag::CyclicBlock
    } else if is_dihedral(p) {
        BlockTag::DihedralBlock
    } else {
        BlockTag::Indecomposable
    }
}

fn mergeable(a: &Poly, b: &Poly) -> bool {
    let ab = a.compose(b);
    is_cyclic(&ab) || is_dihedral(&ab)
}

/// Starting from a complete decomposition, merges adjacent blocks whose
/// composition is cyclic or dihedral until no merge applies.
pub fn block_form(f: &Poly) -> Result<BlockForm> {
    let d = complete_decomposition(f)?;
    let mut polys = d.factors.clone();
    let mut i = 0;
    while i + 1 < polys.len() {
        if mergeable(&polys[i], &polys[i + 1]) {
            let merged = polys[i].compose(&polys[i + 1]);
            polys.splice(i..=i + 1, [merged]);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    let blocks = polys
        .into_iter()
        .map(|poly| Block { tag: tag_of(&poly), poly })
        .collect();
    Ok(BlockForm { leading: d.leading, blocks })
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Lexicographic successor until exhausted.
    loop {
        let Some(i) = (0..sorted.len().saturating_sub(1)).rev().find(|&i| sorted[i] < sorted[i + 1])
        else {
            return out;
        };
        let j = (i + 1..sorted.len()).rev().find(|&j| sorted[j] > sorted[i]).expect("exists");
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
}

/// Chain `[a_1, ..., a_s]` with `compose = p` and `deg a_t = degrees[t]`.
fn peel(p: &Poly, degrees: &[usize]) -> Result<Option<Vec<Poly>>> {
    let mut rest = p.clone();
    let mut chain = Vec::with_capacity(degrees.len());
    for &e in degrees[1..].iter().rev() {
        let Some((a, g)) = split_right(&rest, e)? else {
            return Ok(None);
        };
        chain.push(g);
        rest = a;
    }
    chain.push(rest);
    chain.reverse();
    Ok(Some(chain))
}

/// Expands each cyclic or dihedral block along every ordering of the prime
/// factors of its degree.
pub fn block_expansions(form: &BlockForm) -> Result<Vec<Decomposition>> {
    let mut partial: Vec<Vec<Poly>> = vec![vec![form.leading.to_poly()]];
    for block in &form.blocks {
        let orders = match block.tag {
            BlockTag::Indecomposable => vec![vec![block.poly.deg()]],
            _ => distinct_permutations(&prime_factors(block.poly.deg())),
        };
        let mut pieces = Vec::new();
        for order in orders {
            if let Some(chain) = peel(&block.poly, &order)? {
                pieces.push(chain);
            }
        }
        partial = partial
            .iter()
            .flat_map(|pre| {
                pieces.iter().map(move |piece| {
                    let mut c = pre.clone();
                    c.extend_from_slice(piece);
                    c
                })
            })
            .collect();
    }
    let mut out: Vec<Decomposition> = partial
        .iter()
        .map(|c| Decomposition::from_chain(c))
        .collect::<Result<_>>()?;
    out.sort_by(canonical_cmp);
    out.dedup();
    Ok(out)
}

/// Reproducible chains of 2 to 4 indecomposables of degree 2 to 5 with small
/// integer coefficients. Structured factors (monomials, Chebyshev
/// polynomials, twists) are mixed in so that Ritt moves actually occur.
pub fn corpus(seed: u64, count: usize) -> Result<Vec<Vec<Poly>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.gen_range(2..=4);
        let mut chain = Vec::with_capacity(len);
        while chain.len() < len {
            let f = corpus_factor(&mut rng);
            if is_indecomposable(&f)? {
                chain.push(f);
            }
        }
        out.push(chain);
    }
    Ok(out)
}

fn small(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-3..=3)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let c = small(rng);
        if c != 0 {
            return c;
        }
    }
}

fn corpus_factor(rng: &mut ChaCha8Rng) -> Poly {
    let d: usize = rng.gen_range(2..=5);
    let x_plus = |c: i64| Poly::from_i64(&[c, 1]);
    match rng.gen_range(0..10) {
        0..=3 => {
            let mut c: Vec<i64> = (0..d).map(|_| small(rng)).collect();
            c.push(small_nonzero(rng));
            Poly::from_i64(&c)
        }
        4 | 5 => {
            if rng.gen_bool(0.75) {
                Poly::x_pow(d)
            } else {
                let (c, e) = (small(rng), small(rng));
                &x_plus(c).pow(d as u32) + &Poly::constant(rat(e))
            }
        }
        6 => chebyshev(d).compose(&x_plus(if rng.gen_bool(0.5) { 0 } else { small(rng) })),
        7 | 8 => {
            // X^s h(X^n) with s + n deg h = d.
            let (s, n, hd) = match d {
                2 => (0, 2, 1),
                3 => (1, 2, 1),
                4 => (1, 3, 1),
                _ => *[(1, 2, 2), (1, 4, 1), (2, 3, 1)]
                    .get(rng.gen_range(0..3))
                    .expect("in range"),
            };
            let mut h: Vec<i64> = (0..hd).map(|_| small_nonzero(rng)).collect();
            h.push(1);
            &Poly::x_pow(s) * &Poly::from_i64(&h).compose(&Poly::x_pow(n))
        }
        _ => {
            // X^s h(X)^n with s + n deg h = d.
            let (s, n, hd) = match d {
                2 => (1, 1, 1),
                3 => (1, 2, 1),
                4 => (1, 3, 1),
                _ => *[(1, 4, 1), (1, 2, 2), (3, 2, 1)]
                    .get(rng.gen_range(0..3))
                    .expect("in range"),
            };
            let mut h: Vec<i64> = (0..hd).map(|_| small_nonzero(rng)).collect();
            h.push(1);
            &Poly::x_pow(s) * &Poly::from_i64(&h).pow(n as u32)
        }
    }
}
