//! Recognition of cyclic, dihedral and twisted polynomials, symmetry orders
//! and ramification data.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chebyshev::chebyshev;
use crate::decompose::split_affine;
use crate::error::{Error, Result};
use crate::poly::{
    rat, rational_roots, resultant_in_t, squarefree_decomposition, Linear, Poly, Rational,
};

/// Ramification summary over the finite branch points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamProfile {
    pub branch_count: usize,
    pub all_simple_ramification: bool,
    /// Rational branch points, ascending, with the sorted multiplicities of
    /// the fibre above each.
    pub rational_branch_data: Vec<(Rational, Vec<usize>)>,
}

/// `f = c (X - beta)^n + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWitness {
    pub beta: Rational,
    pub c: Rational,
    pub v: Rational,
}

/// `f = p T_n(alpha (X - beta)) + q` with `alpha_sq = alpha^2` and
/// `p_alpha = p * alpha^(n mod 2)`, so every stored entry is rational even
/// when `alpha` is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralWitness {
    pub beta: Rational,
    pub alpha_sq: Rational,
    pub p_alpha: Rational,
    pub q: Rational,
}

/// `outer ∘ f ∘ inner = X^s h(X^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerWitness {
    pub outer: Linear,
    pub inner: Linear,
    pub h: Poly,
}

/// `f - c0 = scale (X - beta)^s H^n` with `H` monic and `H(beta) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterWitness {
    pub c0: Rational,
    pub beta: Rational,
    pub scale: Rational,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormReport {
    Cyclic { n: usize, witness: CyclicWitness },
    Dihedral { n: usize, witness: DihedralWitness },
    TwistInner { s: usize, n: usize, witness: InnerWitness },
    TwistOuter { s: usize, n: usize, witness: OuterWitness },
    None,
}

impl FormReport {
    pub fn is_none(&self) -> bool {
        matches!(self, FormReport::None)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FormReport::Cyclic { .. } => "cyclic",
            FormReport::Dihedral { .. } => "dihedral",
            FormReport::TwistInner { .. } => "twist_inner",
            FormReport::TwistOuter { .. } => "twist_outer",
            FormReport::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaOrder {
    Finite(usize),
    Infinite,
}

/// `f = scale * h^(m q) * Π (X - beta_i)^(m r_i q / q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTwistForm {
    pub m: usize,
    /// `(beta_i, q_i, r_i)`, sorted by `beta_i`.
    pub q_list: Vec<(Rational, usize, usize)>,
    pub residual: Poly,
    pub scale: Rational,
}

impl CanonicalTwistForm {
    pub fn q(&self) -> usize {
        self.q_list.iter().map(|t| t.1).product()
    }

    pub fn reconstruct(&self) -> Poly {
        let q = self.q();
        let mut acc = self.residual.pow((self.m * q) as u32).scale(&self.scale);
        for (beta, qi, ri) in &self.q_list {
            let lin = Poly::new(vec![-beta.clone(), Rational::one()]);
            acc = &acc * &lin.pow((self.m * ri * q / qi) as u32);
        }
        acc
    }
}

fn need_degree(f: &Poly, d: usize) -> Result<()> {
    if f.is_zero() || f.deg() < d {
        return Err(Error::degree(format!("needs degree at least {d}")));
    }
    Ok(())
}

/// Degree of the squarefree kernel, i.e. the number of distinct complex roots.
fn distinct_root_count(f: &Poly) -> usize {
    if f.is_constant() {
        return 0;
    }
    squarefree_decomposition(f)
        .map(|s| s.factors.iter().map(|(b, _)| b.deg()).sum())
        .unwrap_or(0)
}

fn is_squarefree(f: &Poly) -> bool {
    f.is_constant()
        || squarefree_decomposition(f)
            .map(|s| s.factors.iter().all(|(_, e)| *e == 1))
            .unwrap_or(false)
}

/// Sorted multiplicities of the roots of `g`.
pub fn multiplicity_pattern(g: &Poly) -> Vec<usize> {
    let mut out = Vec::new();
    if let Ok(s) = squarefree_decomposition(g) {
        for (b, e) in &s.factors {
            out.extend(std::iter::repeat(*e).take(b.deg()));
        }
    }
    out.sort_unstable();
    out
}

/// The branch polynomial `Res_X(f - T, f')`, made monic.
pub fn branch_polynomial(f: &Poly) -> Result<Poly> {
    Ok(resultant_in_t(f)?.monic())
}

pub fn ram_profile(f: &Poly) -> Result<RamProfile> {
    need_degree(f, 2)?;
    let b = branch_polynomial(f)?;
    let rational_branch_data = rational_roots(&b)
        .into_iter()
        .map(|c| {
            let pat = multiplicity_pattern(&(f - &Poly::constant(c.clone())));
            (c, pat)
        })
        .collect();
    Ok(RamProfile {
        branch_count: distinct_root_count(&b),
        all_simple_ramification: is_squarefree(&f.derivative()),
        rational_branch_data,
    })
}

pub fn cyclic_from_witness(n: usize, w: &CyclicWitness) -> Poly {
    let lin = Poly::new(vec![-w.beta.clone(), Rational::one()]);
    &lin.pow(n as u32).scale(&w.c) + &Poly::constant(w.v.clone())
}

/// Cyclic iff `f(X + beta) - f(beta)` is a monomial for the centre `beta`,
/// i.e. `f'` has exactly one distinct root.
pub fn detect_cyclic(f: &Poly) -> FormReport {
    let n = f.deg();
    if f.is_zero() || n < 2 {
        return FormReport::None;
    }
    let beta = center_point(f);
    let g = shift_x(f, &beta);
    if (1..n).any(|k| !g.coeff(k).is_zero()) {
        return FormReport::None;
    }
    let w = CyclicWitness { c: f.lc(), v: g.coeff(0), beta };
    debug_assert_eq!(cyclic_from_witness(n, &w), *f);
    FormReport::Cyclic { n, witness: w }
}

/// `f(X + t)`.
pub fn shift_x(f: &Poly, t: &Rational) -> Poly {
    f.compose(&Poly::new(vec![t.clone(), Rational::one()]))
}

/// Point `beta` such that `f(X + beta)` has no `X^(n-1)` term.
pub fn center_point(f: &Poly) -> Rational {
    let n = f.deg();
    -(f.coeff(n - 1) / (f.lc() * rat(n as i64)))
}

/// Rebuilds `p T_n(alpha (X - beta)) + q` from its rational encoding.
pub fn dihedral_from_witness(n: usize, w: &DihedralWitness) -> Poly {
    let t = chebyshev(n);
    let par = n % 2;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (k, tk) in t.coeffs().iter().enumerate() {
        if tk.is_zero() {
            continue;
        }
        // p * alpha^k = p_alpha * (alpha^2)^((k - par) / 2)
        coeffs[k] = tk * &w.p_alpha * num_traits::pow(w.alpha_sq.clone(), (k - par) / 2);
    }
    if par == 0 {
        // k = 0 term: p * t_0 with p = p_alpha.
        coeffs[0] = t.coeff(0) * &w.p_alpha;
    }
    coeffs[0] += &w.q;
    shift_x(&Poly::new(coeffs), &-w.beta.clone())
}

/// `n^2 alpha^2 ((g - q)^2 - 4 p^2) = (alpha^2 X^2 - 4) g'^2` for the centred
/// `g = f(X + beta)`, all in rational arithmetic.
fn transported_levi(n: usize, g: &Poly, w: &DihedralWitness) -> bool {
    let p_sq = if n % 2 == 1 {
        &w.p_alpha * &w.p_alpha / &w.alpha_sq
    } else {
        &w.p_alpha * &w.p_alpha
    };
    let gq = g - &Poly::constant(w.q.clone());
    let lhs = (&(&gq * &gq) - &Poly::constant(rat(4) * p_sq))
        .scale(&(rat((n * n) as i64) * &w.alpha_sq));
    let gp = g.derivative();
    let rhs = &Poly::new(vec![rat(-4), Rational::zero(), w.alpha_sq.clone()]) * &(&gp * &gp);
    lhs == rhs
}

/// Dihedral iff the forced witness (centre, `alpha^2` from the two top
/// coefficients) rebuilds `f` exactly. Equivalently `f'` is squarefree and
/// `f` has exactly two finite branch points.
pub fn detect_dihedral(f: &Poly) -> Result<FormReport> {
    need_degree(f, 3)?;
    let n = f.deg();
    let beta = center_point(f);
    let g = shift_x(f, &beta);
    let (gn, gn2) = (g.coeff(n), g.coeff(n - 2));
    if gn2.is_zero() {
        return Ok(FormReport::None);
    }
    let alpha_sq = -(rat(n as i64) * &gn) / &gn2;
    let p_alpha = gn / num_traits::pow(alpha_sq.clone(), n / 2);
    let q = if n % 2 == 0 {
        g.coeff(0) - chebyshev(n).coeff(0) * &p_alpha
    } else {
        g.coeff(0)
    };
    let w = DihedralWitness { beta, alpha_sq, p_alpha, q };
    if !transported_levi(n, &g, &w) || dihedral_from_witness(n, &w) != *f {
        return Ok(FormReport::None);
    }
    Ok(FormReport::Dihedral { n, witness: w })
}

/// Monic, centred, zero-constant normalization `outer ∘ f ∘ inner`.
pub fn normalize_centered(f: &Poly) -> (Linear, Poly, Linear) {
    let beta = center_point(f);
    let g = shift_x(f, &beta);
    let (l, m) = split_affine(&g);
    (l.invert(), m, Linear::new(Rational::one(), beta).expect("unit scale"))
}

fn support(f: &Poly) -> Vec<usize> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Order of the group of linears `l` with `f ∘ l = l' ∘ f` for some linear `l'`:
/// the gcd of exponent differences of the normalized polynomial.
pub fn gamma_symmetry_order(f: &Poly) -> Result<(GammaOrder, Poly)> {
    need_degree(f, 2)?;
    let (_, g, _) = normalize_centered(f);
    let sup = support(&g);
    if sup.len() == 1 {
        return Ok((GammaOrder::Infinite, g));
    }
    let top = *sup.last().expect("nonzero");
    let d = sup.iter().fold(0usize, |acc, e| acc.gcd(&(top - e)));
    Ok((GammaOrder::Finite(d), g))
}

/// Number of complex linears `l` with `f ∘ l = f`.
pub fn gamma0_isometry_order(f: &Poly) -> Result<usize> {
    need_degree(f, 2)?;
    let beta = center_point(f);
    let g = shift_x(f, &beta);
    Ok(support(&g)
        .into_iter()
        .filter(|&e| e > 0)
        .fold(0usize, |acc, e| acc.gcd(&e)))
}

/// `X^s h(X^n)` up to linears, with `n` maximal. Cyclic input has no
/// maximal `n` and is reported as `None` here.
pub fn detect_twist_inner(f: &Poly) -> Result<FormReport> {
    let (order, g) = gamma_symmetry_order(f)?;
    let n = match order {
        GammaOrder::Finite(n) if n > 1 => n,
        _ => return Ok(FormReport::None),
    };
    let (outer, _, inner) = normalize_centered(f);
    let s = support(&g)[0];
    let h = Poly::new(
        (s..=g.deg())
            .step_by(n)
            .map(|e| g.coeff(e))
            .collect(),
    );
    Ok(FormReport::TwistInner { s, n, witness: InnerWitness { outer, inner, h } })
}

pub fn inner_twist_poly(s: usize, n: usize, h: &Poly) -> Poly {
    &Poly::x_pow(s) * &h.compose(&Poly::x_pow(n))
}

pub fn outer_twist_poly(s: usize, n: usize, h: &Poly) -> Poly {
    &Poly::x_pow(s) * &h.pow(n as u32)
}

/// All rational witnesses of `f - c0 = scale (X - beta)^s H^n`, ascending in `c0`.
/// More than one exists only for dihedral `f` with `n = 2`.
pub fn twist_outer_witnesses(f: &Poly, n: usize) -> Result<Vec<(usize, OuterWitness)>> {
    if n < 2 {
        return Err(Error::invalid("twist exponent must be at least 2"));
    }
    need_degree(f, 2)?;
    let b = branch_polynomial(f)?;
    let mut out = Vec::new();
    for c0 in rational_roots(&b) {
        let g = f - &Poly::constant(c0.clone());
        let sf = squarefree_decomposition(&g)?;
        let odd: Vec<&(Poly, usize)> = sf.factors.iter().filter(|(_, e)| e % n != 0).collect();
        if odd.len() != 1 || odd[0].0.deg() != 1 {
            continue;
        }
        let s = odd[0].1;
        if s.gcd(&n) != 1 {
            continue;
        }
        let beta = -odd[0].0.coeff(0);
        let h = sf
            .factors
            .iter()
            .filter(|(_, e)| e % n == 0)
            .fold(Poly::one(), |acc, (base, e)| &acc * &base.pow((e / n) as u32));
        out.push((s, OuterWitness { c0, beta, scale: f.lc(), h }));
    }
    Ok(out)
}

/// `X^s h(X)^n` up to linears, scanning rational branch points.
///
/// Outside the dihedral case with `n = 2` such a base point is unique, hence
/// fixed by conjugation and therefore rational; so `None` is definitive
/// there. The remaining case with irrational branch points is reported as
/// unsupported.
pub fn detect_twist_outer(f: &Poly, n: usize) -> Result<FormReport> {
    let mut ws = twist_outer_witnesses(f, n)?;
    // Several witnesses only occur for dihedral input; prefer the literal
    // presentation with base point and branch point at 0.
    ws.sort_by_key(|(_, w)| (!w.c0.is_zero(), !w.beta.is_zero()));
    if let Some((s, w)) = ws.into_iter().next() {
        return Ok(FormReport::TwistOuter { s, n, witness: w });
    }
    if n == 2 && f.deg() >= 3 && !detect_dihedral(f)?.is_none() {
        let b = branch_polynomial(f)?;
        if rational_roots(&b).len() < distinct_root_count(&b) {
            return Err(Error::unsupported(
                "dihedral input with irrational branch points (irrational witness)",
            ));
        }
    }
    Ok(FormReport::None)
}

pub fn outer_from_witness(s: usize, n: usize, w: &OuterWitness) -> Poly {
    let lin = Poly::new(vec![-w.beta.clone(), Rational::one()]);
    &(&lin.pow(s as u32) * &w.h.pow(n as u32)).scale(&w.scale) + &Poly::constant(w.c0.clone())
}

pub fn is_cyclic(f: &Poly) -> bool {
    !detect_cyclic(f).is_none()
}

pub fn is_dihedral(f: &Poly) -> bool {
    f.deg() >= 3 && detect_dihedral(f).map(|r| !r.is_none()).unwrap_or(false)
}

/// Root-multiplicity normal form of a polynomial with a rational root.
pub fn canonical_twist_form(f: &Poly) -> Result<CanonicalTwistForm> {
    if f.deg() <= 1 {
        return Err(Error::invalid("linear input is excluded"));
    }
    if is_cyclic(f) {
        return Err(Error::invalid("cyclic input is excluded"));
    }
    if is_dihedral(f) {
        return Err(Error::invalid("dihedral input is excluded"));
    }
    let roots = rational_roots(f);
    if roots.is_empty() {
        return Err(Error::unsupported("no rational root (irrational witness)"));
    }
    // Split every squarefree base into its rational linear factors and an
    // irrational remainder.
    let sf = squarefree_decomposition(f)?;
    let mut rational: Vec<(Rational, usize)> = Vec::new();
    let mut irrational: Vec<(Poly, usize)> = Vec::new();
    for (base, e) in &sf.factors {
        let mut rest = base.clone();
        for r in rational_roots(base) {
            let lin = Poly::new(vec![-r.clone(), Rational::one()]);
            rest = rest.exact_div(&lin).expect("root divides");
            rational.push((r, *e));
        }
        if !rest.is_constant() {
            irrational.push((rest, *e));
        }
    }
    let all: Vec<usize> = rational
        .iter()
        .map(|(_, e)| *e)
        .chain(irrational.iter().flat_map(|(b, e)| std::iter::repeat(*e).take(b.deg())))
        .collect();
    let m = all.iter().fold(0usize, |acc, e| acc.gcd(e));
    // q of a root is the gcd of e/m over all other roots; dropping one copy
    // of a multiplicity matters only if it is the sole copy.
    let q_without = |e: usize| -> usize {
        let mut skipped = false;
        all.iter()
            .filter(|&&x| {
                if !skipped && x == e {
                    skipped = true;
                    false
                } else {
                    true
                }
            })
            .fold(0usize, |acc, x| acc.gcd(&(x / m)))
    };
    if irrational.iter().any(|(_, e)| q_without(*e) > 1) {
        return Err(Error::unsupported("irrational distinguished root"));
    }
    let mut dist: Vec<(Rational, usize, usize)> = Vec::new();
    for (r, e) in &rational {
        let qi = q_without(*e);
        if qi > 1 {
            dist.push((r.clone(), qi, e / m));
        }
    }
    dist.sort_by(|a, b| a.0.cmp(&b.0));
    let q: usize = dist.iter().map(|t| t.1).product();
    let q_list: Vec<(Rational, usize, usize)> = dist
        .iter()
        .map(|(r, qi, big_r)| (r.clone(), *qi, big_r / (q / qi)))
        .collect();
    let mq = m * q;
    let mut residual = Poly::one();
    for (r, e) in &rational {
        if dist.iter().any(|d| &d.0 == r) {
            continue;
        }
        let lin = Poly::new(vec![-r.clone(), Rational::one()]);
        residual = &residual * &lin.pow((e / mq) as u32);
    }
    for (b, e) in &irrational {
        residual = &residual * &b.pow((e / mq) as u32);
    }
    let form = CanonicalTwistForm { m, q_list, residual, scale: f.lc() };
    debug_assert_eq!(form.reconstruct(), *f);
    Ok(form)
}

/// Witness for `f ∘ g ∈ Q[X^n]`: `f = f̂(X^(n/gcd(n,s))) ∘ ℓ⁻¹`,
/// `g = ℓ ∘ X^s ĝ(X^n)`. `None` when the composite is not in `Q[X^n]`.
pub fn even_part_split(f: &Poly, g: &Poly, n: usize) -> Result<Option<(Poly, Poly, Linear, usize)>> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if f.is_constant() || g.is_constant() {
        return Err(Error::degree("nonconstant inputs required"));
    }
    let comp = f.compose(g);
    if support(&comp).iter().any(|e| e % n != 0) {
        return Ok(None);
    }
    let (l, big_g) = split_affine(g);
    let sup = support(&big_g);
    let s = sup[0];
    if sup.iter().any(|e| (e - s) % n != 0) {
        return Ok(None);
    }
    let g_hat = Poly::new((s..=big_g.deg()).step_by(n).map(|e| big_g.coeff(e)).collect());
    let k = n / n.gcd(&s);
    let fl = f.compose(&l.to_poly());
    if support(&fl).iter().any(|e| e % k != 0) {
        return Ok(None);
    }
    let f_hat = Poly::new((0..=fl.deg()).step_by(k).map(|e| fl.coeff(e)).collect());
    Ok(Some((f_hat, g_hat, l, s)))
}
