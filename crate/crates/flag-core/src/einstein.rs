//! Invariant metrics, scalar curvature, Einstein residuals and
//! Kähler-Einstein metrics.
//!
//! An invariant metric is one positive parameter per isotropy summand. Its
//! scalar curvature
//!
//! ```text
//! S(Λ) = 1/2 Σ_i D_i/λ_i − 1/4 Σ_{i,j,k} C_{ij}^k λ_k/(λ_i λ_j)
//! ```
//!
//! (unrestricted ordered sum) is kept as a sparse Laurent polynomial, so
//! values, gradients and the Lagrange residuals of the Einstein system
//!
//! ```text
//! ∂S/∂λ_l = ξ D_l λ₁^{D₁} ⋯ λ_l^{D_l−1} ⋯ λ_s^{D_s},   Π λ_i^{D_i} = 1
//! ```
//!
//! are all exact for rational metrics. For full flags the per-root Ricci
//! components are assembled from the same `C` data; an invariant metric is
//! Einstein exactly when all components agree.
//!
//! Invariant almost complex structures are one sign per positive T-root,
//! integrable when the induced positively-oriented roots are closed under
//! addition. Each integrable structure has a unique (up to scale)
//! Kähler-Einstein metric `λ_α = (δ_J, α)`, `δ_J` half the sum of the
//! J-positive complementary roots; raw values are reported with long roots
//! normalized to square length 3, plus the smallest integer rescaling.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::flagspace::FlagManifold;
use crate::quadext::Rat;
use crate::rootsystem::{Root, RootSystem, WeylBasisData};
use crate::triples::{c3, triple_count, CTensor, TripleMode};
use crate::{rat_i, rat_pow, smallest_integer_vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EinsteinError {
    /// Metric parameters must be positive, one per summand.
    BadMetric,
    /// The operation is defined for full flags only.
    FullFlagOnly,
    /// The almost complex structure is not integrable.
    NotIntegrable,
    /// Sign vector length must equal the number of positive T-roots.
    BadStructure,
}

impl fmt::Display for EinsteinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EinsteinError::BadMetric => write!(f, "metric needs one positive λ per summand"),
            EinsteinError::FullFlagOnly => write!(f, "operation requires a full flag"),
            EinsteinError::NotIntegrable => write!(f, "almost complex structure not integrable"),
            EinsteinError::BadStructure => write!(f, "sign vector length must be |R_T+|"),
        }
    }
}

/// One positive parameter per isotropy summand, in summand order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMetric {
    lambdas: Vec<Rat>,
}

impl InvariantMetric {
    pub fn new(lambdas: Vec<Rat>) -> Result<Self, EinsteinError> {
        if lambdas.is_empty() || lambdas.iter().any(|l| !l.is_positive()) {
            return Err(EinsteinError::BadMetric);
        }
        Ok(InvariantMetric { lambdas })
    }

    pub fn normal(num_modules: usize) -> Self {
        InvariantMetric { lambdas: vec![Rat::from(BigInt::from(1)); num_modules] }
    }

    pub fn lambdas(&self) -> &[Rat] {
        &self.lambdas
    }

    pub fn scaled(&self, t: &Rat) -> Result<Self, EinsteinError> {
        Self::new(self.lambdas.iter().map(|l| l * t).collect())
    }

    /// The parameter of the summand containing the given positive root.
    pub fn lambda_for_root(&self, flag: &FlagManifold, r: &Root) -> Option<&Rat> {
        flag.module_of_positive_root(r).map(|k| &self.lambdas[k])
    }

    /// Smallest positive integer vector in the homothety class.
    pub fn rescaled_integer(&self) -> Vec<BigInt> {
        smallest_integer_vector(&self.lambdas)
    }
}

/// A sparse Laurent polynomial in the metric parameters.
#[derive(Clone, Debug)]
pub struct CurvaturePoly {
    nvars: usize,
    terms: Vec<(Rat, Vec<i32>)>,
}

impl CurvaturePoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Rat, Vec<i32>)] {
        &self.terms
    }

    pub fn eval_rat(&self, lambdas: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (c, exps) in &self.terms {
            let mut term = c.clone();
            for (l, &e) in lambdas.iter().zip(exps) {
                if e != 0 {
                    term *= rat_pow(l, e);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, lambdas: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut term = crate::rat_to_f64(c);
            for (l, &e) in lambdas.iter().zip(exps) {
                term *= powi(*l, e);
            }
            acc += term;
        }
        acc
    }

    /// Partial derivative with respect to `λ_l`.
    pub fn partial(&self, l: usize) -> CurvaturePoly {
        let mut terms = Vec::new();
        for (c, exps) in &self.terms {
            if exps[l] == 0 {
                continue;
            }
            let mut e = exps.clone();
            let coeff = c * rat_i(exps[l] as i64);
            e[l] -= 1;
            terms.push((coeff, e));
        }
        CurvaturePoly { nvars: self.nvars, terms }
    }
}

fn powi(x: f64, e: i32) -> f64 {
    let mut acc = 1.0;
    let b = if e >= 0 { x } else { 1.0 / x };
    for _ in 0..e.unsigned_abs() {
        acc *= b;
    }
    acc
}

/// Assemble `S` as a Laurent polynomial from the summand dimensions and the
/// coefficient tensor.
pub fn scalar_curvature_poly(dims: &[usize], c: &CTensor) -> CurvaturePoly {
    let s = dims.len();
    let mut by_exps: BTreeMap<Vec<i32>, Rat> = BTreeMap::new();
    for (i, &d) in dims.iter().enumerate() {
        let mut e = vec![0i32; s];
        e[i] = -1;
        *by_exps.entry(e).or_insert_with(Rat::zero) += rat_i(d as i64) / rat_i(2);
    }
    for (&(i, j, k), v) in c.entries() {
        // All distinct ordered arrangements of the multiset {i, j, k}.
        let mut perms: alloc::collections::BTreeSet<[usize; 3]> = Default::default();
        for p in [
            [i, j, k],
            [i, k, j],
            [j, i, k],
            [j, k, i],
            [k, i, j],
            [k, j, i],
        ] {
            perms.insert(p);
        }
        for [a, b, t] in perms {
            let mut e = vec![0i32; s];
            e[a] -= 1;
            e[b] -= 1;
            e[t] += 1;
            *by_exps.entry(e).or_insert_with(Rat::zero) -= v / rat_i(4);
        }
    }
    let terms = by_exps.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (c, e)).collect();
    CurvaturePoly { nvars: s, terms }
}

fn check_metric(flag: &FlagManifold, m: &InvariantMetric) -> Result<(), EinsteinError> {
    if m.lambdas().len() != flag.num_modules() {
        return Err(EinsteinError::BadMetric);
    }
    Ok(())
}

/// Exact scalar curvature of an invariant metric.
pub fn scalar_curvature(
    flag: &FlagManifold,
    c: &CTensor,
    metric: &InvariantMetric,
) -> Result<Rat, EinsteinError> {
    check_metric(flag, metric)?;
    Ok(scalar_curvature_poly(&flag.module_dims(), c).eval_rat(metric.lambdas()))
}

/// Exact gradient `(∂S/∂λ_1, …, ∂S/∂λ_s)`.
pub fn scalar_curvature_gradient(
    flag: &FlagManifold,
    c: &CTensor,
    metric: &InvariantMetric,
) -> Result<Vec<Rat>, EinsteinError> {
    check_metric(flag, metric)?;
    let poly = scalar_curvature_poly(&flag.module_dims(), c);
    Ok((0..flag.num_modules()).map(|l| poly.partial(l).eval_rat(metric.lambdas())).collect())
}

/// Residuals of the `s` Lagrange equations followed by the volume equation.
pub fn einstein_residual(
    flag: &FlagManifold,
    c: &CTensor,
    metric: &InvariantMetric,
    xi: &Rat,
) -> Result<Vec<Rat>, EinsteinError> {
    check_metric(flag, metric)?;
    let dims = flag.module_dims();
    let grad = scalar_curvature_gradient(flag, c, metric)?;
    let lambdas = metric.lambdas();
    let volume: Rat = lambdas
        .iter()
        .zip(&dims)
        .map(|(l, &d)| rat_pow(l, d as i32))
        .product();
    let mut out = Vec::with_capacity(dims.len() + 1);
    for l in 0..dims.len() {
        let rhs = xi * rat_i(dims[l] as i64) * &volume / &lambdas[l];
        out.push(&grad[l] - rhs);
    }
    out.push(volume - rat_i(1));
    Ok(out)
}

/// The multiplier forced by Euler homogeneity at a critical point:
/// `ξ = −S/n` with `n = Σ D_i` (so the Einstein constant is `c = −ξ`).
pub fn natural_multiplier(
    flag: &FlagManifold,
    c: &CTensor,
    metric: &InvariantMetric,
) -> Result<Rat, EinsteinError> {
    let n: usize = flag.module_dims().iter().sum();
    Ok(-scalar_curvature(flag, c, metric)? / rat_i(n as i64))
}

/// One monomial `coeff · λ_num/(λ_d1 λ_d2)` of a full-flag Ricci component,
/// indexed by positions in the positive-root list (`d1 ≤ d2`).
pub type RicciTermMap = BTreeMap<(usize, usize, usize), Rat>;

/// Symbolic Ricci component of the full flag at the positive root `α`:
/// the constant `1/(2λ_α)` is implicit; returned are the coefficients of
/// the cross terms
/// `+1/8 Σ C^α_{βγ} λ_α/(λ_β λ_γ) − 1/4 Σ C^γ_{αβ} λ_γ/(λ_α λ_β)`
/// over ordered pairs `(β, γ) ∈ R⁺ × R⁺`.
pub fn ricci_terms_fullflag(
    rs: &RootSystem,
    w: &WeylBasisData,
    alpha_idx: usize,
) -> RicciTermMap {
    let pos = rs.positive_roots();
    let alpha = &pos[alpha_idx];
    let mut map: RicciTermMap = BTreeMap::new();
    let mut add = |num: usize, d1: usize, d2: usize, coeff: Rat| {
        let (d1, d2) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let e = map.entry((num, d1, d2)).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            map.remove(&(num, d1, d2));
        }
    };
    for (bi, beta) in pos.iter().enumerate() {
        for (gi, gamma) in pos.iter().enumerate() {
            let c_bg_a = c3(w, beta, gamma, alpha);
            if !c_bg_a.is_zero() {
                add(alpha_idx, bi, gi, c_bg_a / rat_i(8));
            }
            let c_ab_g = c3(w, alpha, beta, gamma);
            if !c_ab_g.is_zero() {
                add(gi, alpha_idx, bi, -c_ab_g / rat_i(4));
            }
        }
    }
    map
}

/// Ricci components of a full flag, one per positive root (`Λ` in
/// positive-root order). The metric is Einstein iff all components agree.
pub fn ricci_components_fullflag(
    flag: &FlagManifold,
    w: &WeylBasisData,
    lambdas_by_root: &[Rat],
) -> Result<Vec<Rat>, EinsteinError> {
    if !flag.is_full_flag() {
        return Err(EinsteinError::FullFlagOnly);
    }
    let rs = flag.root_system();
    let pos = rs.positive_roots();
    if lambdas_by_root.len() != pos.len() || lambdas_by_root.iter().any(|l| !l.is_positive()) {
        return Err(EinsteinError::BadMetric);
    }
    let mut out = Vec::with_capacity(pos.len());
    for ai in 0..pos.len() {
        let mut r = rat_i(1) / (rat_i(2) * &lambdas_by_root[ai]);
        for ((num, d1, d2), coeff) in ricci_terms_fullflag(rs, w, ai) {
            r += coeff * &lambdas_by_root[num] / (&lambdas_by_root[d1] * &lambdas_by_root[d2]);
        }
        out.push(r);
    }
    Ok(out)
}

/// A qualifying summand pair for the equal-parameter dimension argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionPair {
    pub i: usize,
    pub j: usize,
    pub dim_i: usize,
    pub dim_j: usize,
    /// `λ_i = λ_j` is impossible for an Einstein metric (dims differ).
    pub excluded: bool,
}

/// Pairs `(i, j)` whose T-roots combine with a third T-root into a zero sum
/// and have `T(δ_i) = T(δ_j) = 1` in the given mode; when their dimensions
/// differ, an Einstein metric cannot have `λ_i = λ_j`.
pub fn dimension_obstruction(flag: &FlagManifold, mode: TripleMode) -> Vec<ObstructionPair> {
    let ts = flag.positive_t_roots();
    let dims = flag.module_dims();
    let mut out = Vec::new();
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            let joined = [1i64, -1].into_iter().any(|si| {
                [1i64, -1].into_iter().any(|sj| {
                    let third = ts[i].scaled(si).add(&ts[j].scaled(sj)).neg();
                    !third.is_zero() && flag.is_t_root(&third)
                })
            });
            if !joined {
                continue;
            }
            let ti = triple_count(flag, &ts[i], mode).expect("positive T-root");
            let tj = triple_count(flag, &ts[j], mode).expect("positive T-root");
            if ti == 1 && tj == 1 {
                out.push(ObstructionPair {
                    i,
                    j,
                    dim_i: dims[i],
                    dim_j: dims[j],
                    excluded: dims[i] != dims[j],
                });
            }
        }
    }
    out
}

/// An invariant almost complex structure: one sign per positive T-root
/// (summand order); the sign of `−δ` is the negative by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    signs: Vec<i8>,
}

impl ComplexStructure {
    pub fn new(signs: Vec<i8>) -> Result<Self, EinsteinError> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(EinsteinError::BadStructure);
        }
        Ok(ComplexStructure { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn conjugate(&self) -> ComplexStructure {
        ComplexStructure { signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Sign on an arbitrary complementary root, via `ε_{−δ} = −ε_δ`.
    pub fn sign_of(&self, flag: &FlagManifold, r: &Root) -> i8 {
        let (k, s) = flag.module_of(r).expect("complementary root");
        self.signs[k] * s
    }
}

/// All `2^{|R_T⁺|}` sign assignments, in a fixed binary order.
pub fn enumerate_iacs(flag: &FlagManifold) -> Vec<ComplexStructure> {
    let n = flag.num_modules();
    (0..(1u64 << n))
        .map(|mask| ComplexStructure {
            signs: (0..n).map(|i| if (mask >> i) & 1 == 0 { 1i8 } else { -1i8 }).collect(),
        })
        .collect()
}

/// Torsion-free test: whenever two J-positive complementary roots add to a
/// complementary root, the sum must be J-positive (conjugate case included
/// since both signs of every root are checked).
pub fn is_integrable(flag: &FlagManifold, j: &ComplexStructure) -> bool {
    let rs = flag.root_system();
    let mut signed: Vec<Root> = Vec::new();
    for m in flag.isotropy_modules() {
        for r in &m.roots {
            signed.push(r.clone());
            signed.push(r.neg());
        }
    }
    for a in &signed {
        for b in &signed {
            let sum = a.add(b);
            if sum.is_zero() || !rs.contains(&sum) || flag.kappa(&sum).is_none() {
                continue;
            }
            if j.sign_of(flag, a) == 1 && j.sign_of(flag, b) == 1 && j.sign_of(flag, &sum) != 1 {
                return false;
            }
        }
    }
    true
}

/// Integrable structures with a canonical representative per conjugate pair
/// (the one whose first sign is `+`).
pub fn integrable_structures(flag: &FlagManifold) -> Vec<ComplexStructure> {
    enumerate_iacs(flag).into_iter().filter(|j| is_integrable(flag, j)).collect()
}

pub fn integrable_non_conjugate(flag: &FlagManifold) -> Vec<ComplexStructure> {
    integrable_structures(flag).into_iter().filter(|j| j.signs()[0] == 1).collect()
}

/// A Kähler-Einstein metric: raw values at the long-root-square-3 scale and
/// the smallest integer vector of the homothety class.
#[derive(Clone, Debug)]
pub struct KahlerEinstein {
    pub metric: InvariantMetric,
    pub scaled: Vec<BigInt>,
}

/// The Kähler-Einstein metric of an integrable structure:
/// `λ_α = (δ_J, α)` with `δ_J` half the sum of the J-positive complementary
/// roots, evaluated on the J-positive representative of each summand.
pub fn kahler_einstein_metric(
    flag: &FlagManifold,
    j: &ComplexStructure,
) -> Result<KahlerEinstein, EinsteinError> {
    if j.signs().len() != flag.num_modules() {
        return Err(EinsteinError::BadStructure);
    }
    if !is_integrable(flag, j) {
        return Err(EinsteinError::NotIntegrable);
    }
    let rs = flag.root_system();
    let rank = rs.rank();
    // 2δ_J over the simple basis.
    let mut two_delta = vec![0i64; rank];
    for m in flag.isotropy_modules() {
        for r in &m.roots {
            let sgn = j.sign_of(flag, r) as i64;
            for (i, &c) in r.coords().iter().enumerate() {
                two_delta[i] += sgn * c;
            }
        }
    }
    // Report at the scale where long roots have square length 3.
    let paper_scale = rat_i(3) / rs.long_root_square();
    let lambdas: Vec<Rat> = flag
        .isotropy_modules()
        .iter()
        .map(|m| {
            let mut value: Option<Rat> = None;
            for r in &m.roots {
                let oriented = if j.sign_of(flag, r) == 1 { r.clone() } else { r.neg() };
                let mut ip = Rat::zero();
                for (i, &c) in oriented.coords().iter().enumerate() {
                    if c != 0 {
                        let e_i: Vec<i64> =
                            (0..rank).map(|t| if t == i { 1 } else { 0 }).collect();
                        ip += rat_i(c)
                            * rs.inner(&Root::new(two_delta.clone()), &Root::new(e_i));
                    }
                }
                let lam = ip / rat_i(2) * &paper_scale;
                match &value {
                    None => value = Some(lam),
                    Some(v) => assert_eq!(*v, lam, "λ must be constant on the fiber"),
                }
            }
            value.expect("nonempty fiber")
        })
        .collect();
    assert!(lambdas.iter().all(|l| l.is_positive()), "KE parameters are positive");
    let scaled = smallest_integer_vector(&lambdas);
    Ok(KahlerEinstein { metric: InvariantMetric::new(lambdas)?, scaled })
}

/// Kähler criterion on a full flag: `λ_{α+β} = λ_α + λ_β` over all
/// J-positive root pairs whose sum is a root.
pub fn kahler_criterion(
    flag: &FlagManifold,
    metric: &InvariantMetric,
    j: &ComplexStructure,
) -> Result<bool, EinsteinError> {
    if !flag.is_full_flag() {
        return Err(EinsteinError::FullFlagOnly);
    }
    check_metric(flag, metric)?;
    if j.signs().len() != flag.num_modules() {
        return Err(EinsteinError::BadStructure);
    }
    let rs = flag.root_system();
    let mut j_pos: Vec<Root> = Vec::new();
    for m in flag.isotropy_modules() {
        for r in &m.roots {
            j_pos.push(if j.sign_of(flag, r) == 1 { r.clone() } else { r.neg() });
        }
    }
    let lambda_of = |r: &Root| -> Rat {
        let (k, _) = flag.module_of(r).expect("complementary");
        metric.lambdas()[k].clone()
    };
    for (i, a) in j_pos.iter().enumerate() {
        for b in j_pos.iter().skip(i + 1) {
            let sum = a.add(b);
            if !rs.contains(&sum) {
                continue;
            }
            if lambda_of(&sum) != lambda_of(a) + lambda_of(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
