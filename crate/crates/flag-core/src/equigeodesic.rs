//! Equigeodesic vectors on flag manifolds.
//!
//! A tangent vector `X = Σ c_α E_α` (with the reality constraint
//! `c_{−α} = −c̄_α` so that `X` lies in the compact real form) is
//! equigeodesic when `[X, ΛX]_m = 0` for every invariant metric `Λ`.
//! Since `[X, ΛX]_m = Σ_k λ_k [X, X_k]_m` is linear in the metric
//! parameters, this holds exactly when every per-summand bracket
//! `[X, X_k]_m` vanishes — decided here in exact arithmetic.
//!
//! On a full flag the condition collapses to combinatorics: a vector spread
//! over root spaces `u_{α_1}, …, u_{α_r}` with nonzero components is
//! equigeodesic iff no `α_p ± α_q` is a root. The two `G₂` quotients get
//! closed-form classifications, including the three-summand solution
//! families a–f.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::flagspace::FlagManifold;
use crate::quadext::{QComplex, Rat};
use crate::rootsystem::{Root, RootSystem, WeylBasisData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquiError {
    /// A coefficient was attached to a root outside `R_M`.
    NotComplementary(Root),
    /// Coefficients given for both `α` and `−α` violate `c_{−α} = −c̄_α`.
    RealityViolated(Root),
    /// Full-flag criteria need distinct positive roots.
    BadRootPair,
    /// Metric parameters must be strictly positive, one per summand.
    NonpositiveMetric,
    /// The operation is specific to another flag manifold.
    WrongFlag(&'static str),
}

impl fmt::Display for EquiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquiError::NotComplementary(r) => write!(f, "root {r} is not in R_M"),
            EquiError::RealityViolated(r) => {
                write!(f, "coefficients at +-({r}) violate c_-a = -conj(c_a)")
            }
            EquiError::BadRootPair => write!(f, "need distinct positive roots"),
            EquiError::NonpositiveMetric => write!(f, "metric parameters must be positive"),
            EquiError::WrongFlag(msg) => write!(f, "wrong flag manifold: {msg}"),
        }
    }
}

/// A tangent vector in Weyl-basis coordinates. Only coefficients on the
/// positive complementary roots are stored; `c_{−α} = −c̄_α` is implied.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TangentVector {
    coeffs: BTreeMap<Root, (Rat, Rat)>,
}

impl TangentVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from complex coefficients `(re, im)` on arbitrary complementary
    /// roots. Entries on negative roots are folded through the reality
    /// constraint; inconsistent duplicates are rejected.
    pub fn from_components<I>(flag: &FlagManifold, entries: I) -> Result<Self, EquiError>
    where
        I: IntoIterator<Item = (Root, (Rat, Rat))>,
    {
        use alloc::collections::btree_map::Entry;
        let mut coeffs: BTreeMap<Root, (Rat, Rat)> = BTreeMap::new();
        for (r, (re, im)) in entries {
            if !flag.root_system().contains(&r) || flag.kappa(&r).is_none() {
                return Err(EquiError::NotComplementary(r));
            }
            // c_α = −c̄_{−α}
            let (pos, c) = if r.is_positive() { (r, (re, im)) } else { (r.neg(), (-re, im)) };
            match coeffs.entry(pos.clone()) {
                Entry::Vacant(v) => {
                    v.insert(c);
                }
                Entry::Occupied(o) => {
                    if *o.get() != c {
                        return Err(EquiError::RealityViolated(pos));
                    }
                }
            }
        }
        coeffs.retain(|_, (re, im)| !(re.is_zero() && im.is_zero()));
        Ok(TangentVector { coeffs })
    }

    /// The vector `a·A_α + b·(iS_α)`, i.e. `c_α = a + ib`.
    pub fn from_real_basis(
        flag: &FlagManifold,
        entries: &[(Root, Rat, Rat)],
    ) -> Result<Self, EquiError> {
        Self::from_components(flag, entries.iter().cloned().map(|(r, a, b)| (r, (a, b))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `c_α` for any complementary root (reality-extended).
    pub fn coeff(&self, r: &Root) -> (Rat, Rat) {
        if r.is_positive() {
            self.coeffs.get(r).cloned().unwrap_or((Rat::zero(), Rat::zero()))
        } else {
            let (re, im) = self.coeff(&r.neg());
            (-re, im)
        }
    }

    /// Iterate over all signed roots of the support with their coefficients.
    pub fn iter_signed(&self) -> impl Iterator<Item = (Root, (Rat, Rat))> + '_ {
        self.coeffs.iter().flat_map(|(r, (re, im))| {
            [(r.clone(), (re.clone(), im.clone())), (r.neg(), (-re.clone(), im.clone()))]
        })
    }

    /// Positive-root support.
    pub fn support(&self) -> impl Iterator<Item = &Root> {
        self.coeffs.keys()
    }

    /// Indices of the isotropy summands meeting the support.
    pub fn support_modules(&self, flag: &FlagManifold) -> BTreeSet<usize> {
        self.coeffs.keys().filter_map(|r| flag.module_of_positive_root(r)).collect()
    }

    /// The component of the vector in summand `k`.
    pub fn project_module(&self, flag: &FlagManifold, k: usize) -> TangentVector {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(r, _)| flag.module_of_positive_root(r) == Some(k))
            .map(|(r, c)| (r.clone(), c.clone()))
            .collect();
        TangentVector { coeffs }
    }

    /// Scale every coefficient by a rational `t`.
    pub fn scaled(&self, t: &Rat) -> TangentVector {
        let mut coeffs: BTreeMap<Root, (Rat, Rat)> = self
            .coeffs
            .iter()
            .map(|(r, (re, im))| (r.clone(), (re * t, im * t)))
            .collect();
        coeffs.retain(|_, (re, im)| !(re.is_zero() && im.is_zero()));
        TangentVector { coeffs }
    }

    /// Scale the component in each summand by the metric parameter `λ_k`.
    pub fn metric_scaled(&self, flag: &FlagManifold, lambdas: &[Rat]) -> TangentVector {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(r, (re, im))| {
                let k = flag.module_of_positive_root(r).expect("support in R_M+");
                (r.clone(), (re * &lambdas[k], im * &lambdas[k]))
            })
            .collect();
        TangentVector { coeffs }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Root, &(Rat, Rat))> {
        self.coeffs.iter()
    }
}

/// The `m`-projection of a bracket: exact complex coefficients per
/// complementary root (Cartan and K-components discarded).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketM {
    coeffs: BTreeMap<Root, QComplex>,
}

impl BracketM {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(QComplex::is_zero)
    }

    pub fn coeff(&self, r: &Root) -> QComplex {
        self.coeffs.get(r).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Root> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(r, _)| r)
    }

    /// Largest coefficient modulus, for tolerance-based decisions on input
    /// that came from floating point.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(QComplex::abs_f64).fold(0.0, f64::max)
    }

    fn add(&mut self, r: Root, c: QComplex) {
        use alloc::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(r) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
}

/// `[X, Y]_m`: bilinear, antisymmetric; the coefficient on `E_γ` is
/// `Σ_{α+β=γ} m_{α,β} c_α d_β` over the signed supports, restricted to
/// `γ ∈ R_M`.
pub fn bracket_m(
    flag: &FlagManifold,
    w: &WeylBasisData,
    x: &TangentVector,
    y: &TangentVector,
) -> BracketM {
    let rs = flag.root_system();
    let mut out = BracketM::default();
    for (a, (are, aim)) in x.iter_signed() {
        for (b, (bre, bim)) in y.iter_signed() {
            let sum = a.add(&b);
            if sum.is_zero() || !rs.contains(&sum) || flag.kappa(&sum).is_none() {
                continue;
            }
            let m = w.m(&a, &b);
            if m.is_zero() {
                continue;
            }
            let prod = QComplex::from_rat_pair(are.clone(), aim.clone())
                .mul(&QComplex::from_rat_pair(bre.clone(), bim.clone()));
            out.add(sum, prod.scale_real(&m));
        }
    }
    out
}

/// Solution families of the `G₂` three-summand classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionFamily {
    /// `V ∈ m_{α₂}`
    A,
    /// `V ∈ m_{2α₂}`
    B,
    /// `V ∈ m_{3α₂}`
    C,
    /// `V ∈ u_{α₁+α₂} ⊕ u_{α₁+3α₂}`
    D,
    /// Mixed family: `c₁ = 0` and the weighted linear relation on
    /// `(b₁, b₂, d₁, d₂)`.
    E,
    /// Not equigeodesic.
    F,
    /// The zero vector.
    Trivial,
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolutionFamily::A => "a",
            SolutionFamily::B => "b",
            SolutionFamily::C => "c",
            SolutionFamily::D => "d",
            SolutionFamily::E => "e",
            SolutionFamily::F => "f",
            SolutionFamily::Trivial => "trivial",
        };
        write!(f, "{s}")
    }
}

/// A nonzero coefficient of `[X, X_k]_m` certifying a failed test.
#[derive(Clone, Debug)]
pub struct Witness {
    pub module: usize,
    pub root: Root,
    pub coefficient: QComplex,
}

#[derive(Clone, Debug)]
pub struct EquigeodesicVerdict {
    pub is_equigeodesic: bool,
    pub witness: Option<Witness>,
    pub family: Option<SolutionFamily>,
}

impl EquigeodesicVerdict {
    fn yes() -> Self {
        EquigeodesicVerdict { is_equigeodesic: true, witness: None, family: None }
    }

    fn trivial() -> Self {
        EquigeodesicVerdict {
            is_equigeodesic: true,
            witness: None,
            family: Some(SolutionFamily::Trivial),
        }
    }

    fn no(witness: Witness) -> Self {
        EquigeodesicVerdict { is_equigeodesic: false, witness: Some(witness), family: None }
    }
}

/// Decide whether `X` is an equigeodesic vector: `[X, X_k]_m = 0` for every
/// summand projection `X_k`. Exact; `tol` (when given) relaxes the zero test
/// to `|coefficient| ≤ tol` for inputs that came from floating point.
pub fn is_equigeodesic_with_tol(
    flag: &FlagManifold,
    w: &WeylBasisData,
    x: &TangentVector,
    tol: Option<f64>,
) -> EquigeodesicVerdict {
    if x.is_zero() {
        return EquigeodesicVerdict::trivial();
    }
    let modules = x.support_modules(flag);
    if modules.len() == 1 {
        // ΛX = λ_k X, so [X, ΛX] = 0 for every metric.
        return EquigeodesicVerdict::yes();
    }
    for &k in &modules {
        let xk = x.project_module(flag, k);
        let b = bracket_m(flag, w, x, &xk);
        let nonzero = match tol {
            None => !b.is_zero(),
            Some(t) => b.max_abs() > t,
        };
        if nonzero {
            let root = b.support().next().expect("nonzero bracket").clone();
            let coefficient = b.coeff(&root);
            return EquigeodesicVerdict::no(Witness { module: k, root, coefficient });
        }
    }
    EquigeodesicVerdict::yes()
}

pub fn is_equigeodesic(
    flag: &FlagManifold,
    w: &WeylBasisData,
    x: &TangentVector,
) -> EquigeodesicVerdict {
    is_equigeodesic_with_tol(flag, w, x, None)
}

/// Full-flag pairwise criterion: a vector in `u_α ⊕ u_β` with both
/// components nonzero is equigeodesic iff neither `α+β` nor `α−β` is a root.
pub fn is_equigeodesic_pair_fullflag(
    rs: &RootSystem,
    alpha: &Root,
    beta: &Root,
) -> Result<bool, EquiError> {
    if alpha == beta || !alpha.is_positive() || !beta.is_positive() {
        return Err(EquiError::BadRootPair);
    }
    if !rs.contains(alpha) || !rs.contains(beta) {
        return Err(EquiError::BadRootPair);
    }
    Ok(!rs.contains(&alpha.add(beta)) && !rs.contains(&alpha.sub(beta)))
}

/// Full-flag multi-component criterion: pairwise over all distinct roots.
pub fn is_equigeodesic_multiroot_fullflag(
    rs: &RootSystem,
    roots: &[Root],
) -> Result<bool, EquiError> {
    let set: BTreeSet<&Root> = roots.iter().collect();
    if set.len() != roots.len() {
        return Err(EquiError::BadRootPair);
    }
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            if !is_equigeodesic_pair_fullflag(rs, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the `G₂` classification runs with the true structure-constant
/// magnitudes or reproduces the unit-coefficient algebraic system verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantMode {
    Exact,
    PaperUnit,
}

/// Classify a vector on the `G₂` three-summand flag (parabolic `{α₁}`,
/// `m = m_{α₂} ⊕ m_{2α₂} ⊕ m_{3α₂}`) into the solution families a–f.
pub fn classify_g2_three_summand(
    flag: &FlagManifold,
    w: &WeylBasisData,
    v: &TangentVector,
    mode: ConstantMode,
) -> Result<EquigeodesicVerdict, EquiError> {
    let rs = flag.root_system();
    let is_g2 = rs.lie_type().series() == crate::rootsystem::Series::G;
    if !is_g2 || flag.parabolic().iter().copied().collect::<Vec<_>>() != [0] {
        return Err(EquiError::WrongFlag("need G2 with parabolic {a1}"));
    }
    if v.is_zero() {
        return Ok(EquigeodesicVerdict::trivial());
    }

    let mut verdict = match mode {
        ConstantMode::Exact => is_equigeodesic(flag, w, v),
        ConstantMode::PaperUnit => paper_unit_verdict(flag, v),
    };

    if !verdict.is_equigeodesic {
        verdict.family = Some(SolutionFamily::F);
        return Ok(verdict);
    }

    let modules = v.support_modules(flag);
    let family = if modules.len() == 1 {
        match modules.iter().next().unwrap() {
            0 => SolutionFamily::A,
            1 => SolutionFamily::B,
            _ => SolutionFamily::C,
        }
    } else {
        let d_support: BTreeSet<Root> =
            [Root::new(alloc::vec![1, 1]), Root::new(alloc::vec![1, 3])].into_iter().collect();
        if v.support().all(|r| d_support.contains(r)) {
            SolutionFamily::D
        } else {
            SolutionFamily::E
        }
    };
    verdict.family = Some(family);
    Ok(verdict)
}

/// The unit-coefficient algebraic system of the three-summand computation:
/// with `X = a₁E_{α₂} + a₂E_{α₁+α₂} + …`, `Y = c₁E_{α₁+2α₂} + …`,
/// `Z = d₁E_{α₁+3α₂} + d₂E_{2α₁+3α₂} + …` and `b_i = −ā_i`, `c₂ = −c̄₁`,
/// the vector solves the system iff
/// `b₂c₁ = c₂d₁ = b₁c₁ = c₂d₂ = a₁c₁ = a₂c₁ = 0` and `b₁d₁ + b₂d₂ = 0`.
///
/// This is bookkeeping with all structure constants set to one, kept for
/// comparison; it is not an antisymmetric bracket.
fn paper_unit_verdict(flag: &FlagManifold, v: &TangentVector) -> EquigeodesicVerdict {
    let c = |coords: [i64; 2]| -> QComplex {
        let (re, im) = v.coeff(&Root::new(coords.to_vec()));
        QComplex::from_rat_pair(re, im)
    };
    let conj_neg = |z: &QComplex| -> QComplex { -&z.conj() };

    let a1 = c([0, 1]);
    let a2 = c([1, 1]);
    let c1 = c([1, 2]);
    let d1 = c([1, 3]);
    let d2 = c([2, 3]);
    let b1 = conj_neg(&a1);
    let b2 = conj_neg(&a2);
    let c2 = conj_neg(&c1);

    let mut mixed = b1.mul(&d1);
    mixed += &b2.mul(&d2);

    // Each row of the system lands in one root space.
    let rows: [(QComplex, [i64; 2]); 7] = [
        (b2.mul(&c1), [0, 1]),
        (c2.mul(&d1), [0, 1]),
        (b1.mul(&c1), [1, 1]),
        (c2.mul(&d2), [1, 1]),
        (mixed, [1, 2]),
        (a1.mul(&c1), [1, 3]),
        (a2.mul(&c1), [2, 3]),
    ];
    for (value, coords) in rows {
        if !value.is_zero() {
            let root = Root::new(coords.to_vec());
            let module = flag.module_of_positive_root(&root).expect("R_M+ root");
            return EquigeodesicVerdict::no(Witness { module, root, coefficient: value });
        }
    }
    EquigeodesicVerdict::yes()
}

/// Geodesic-vector test for one fixed metric: `[X, ΛX]_m = 0`.
pub fn geodesic_vector_check(
    flag: &FlagManifold,
    w: &WeylBasisData,
    lambdas: &[Rat],
    x: &TangentVector,
) -> Result<bool, EquiError> {
    if lambdas.len() != flag.num_modules() || lambdas.iter().any(|l| *l <= Rat::zero()) {
        return Err(EquiError::NonpositiveMetric);
    }
    let lx = x.metric_scaled(flag, lambdas);
    Ok(bracket_m(flag, w, x, &lx).is_zero())
}

/// Ratio `m_{−(α₁+α₂),2α₁+3α₂} / m_{−α₂,α₁+3α₂}` of the two structure
/// constants entering the mixed-family relation on the three-summand flag.
/// Both have squared magnitude `1/8`, so the ratio is `±1`; with it the
/// relation reads `b₁d₁ + ratio·b₂d₂ = 0`.
pub fn g2_mixed_family_ratio(w: &WeylBasisData) -> Rat {
    let a2 = Root::new(alloc::vec![0, 1]);
    let a12 = Root::new(alloc::vec![1, 1]);
    let a13 = Root::new(alloc::vec![1, 3]);
    let a23 = Root::new(alloc::vec![2, 3]);
    let n1 = w.n_squared(&a2.neg(), &a13);
    let n2 = w.n_squared(&a12.neg(), &a23);
    assert_eq!(n1, n2, "the two mixed-family constants share one magnitude");
    crate::rat_i((w.sign(&a12.neg(), &a23) * w.sign(&a2.neg(), &a13)) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagspace::build_flag;
    use crate::quadext::QuadExt;
    use crate::rootsystem::{assign_signs, build_root_system, LieType};
    use crate::{rat, rat_i};

    fn setup(name: &str, parabolic: &[usize]) -> (FlagManifold, WeylBasisData) {
        let rs = build_root_system(&LieType::parse(name).unwrap());
        let w = assign_signs(&rs);
        (build_flag(rs, parabolic).unwrap(), w)
    }

    fn vector(flag: &FlagManifold, entries: &[([i64; 2], i64, i64)]) -> TangentVector {
        TangentVector::from_components(
            flag,
            entries.iter().map(|(c, re, im)| (Root::new(c.to_vec()), (rat_i(*re), rat_i(*im)))),
        )
        .unwrap()
    }

    #[test]
    fn bracket_of_vector_with_itself_vanishes() {
        let (flag, w) = setup("G2", &[]);
        let x = vector(&flag, &[([1, 0], 2, 3), ([0, 1], -1, 5), ([1, 2], 7, 1)]);
        assert!(bracket_m(&flag, &w, &x, &x).is_zero());
    }

    #[test]
    fn commuting_pair_on_g2_full_flag() {
        // u_{α₂} and u_{2α₁+3α₂}: neither sum nor difference is a root.
        let (flag, w) = setup("G2", &[]);
        let x = vector(&flag, &[([0, 1], 3, -2)]);
        let y = vector(&flag, &[([2, 3], 1, 4)]);
        assert!(bracket_m(&flag, &w, &x, &y).is_zero());
        let sum = vector(&flag, &[([0, 1], 3, -2), ([2, 3], 1, 4)]);
        assert!(is_equigeodesic(&flag, &w, &sum).is_equigeodesic);
    }

    #[test]
    fn two_summand_bracket_lands_in_first_module() {
        let (flag, w) = setup("G2", &[1]);
        let x = vector(&flag, &[([1, 0], 1, 2), ([1, 1], 3, -1), ([1, 2], 0, 1), ([1, 3], 2, 2)]);
        let y = vector(&flag, &[([2, 3], 5, 7)]);
        let b = bracket_m(&flag, &w, &x, &y);
        assert!(!b.is_zero());
        for r in b.support() {
            assert_eq!(flag.module_of(r).unwrap().0, 0, "bracket escapes m1 at {r}");
        }
    }

    #[test]
    fn mixed_support_on_two_summand_flag_fails() {
        let (flag, w) = setup("G2", &[1]);
        let x = vector(&flag, &[([1, 0], 1, 0), ([2, 3], 1, 0)]);
        let v = is_equigeodesic(&flag, &w, &x);
        assert!(!v.is_equigeodesic);
        assert!(v.witness.is_some());
    }

    #[test]
    fn single_module_is_always_equigeodesic() {
        let (flag, w) = setup("G2", &[1]);
        let x = vector(&flag, &[([1, 0], 1, 2), ([1, 1], -3, 4), ([1, 3], 5, 6)]);
        assert!(is_equigeodesic(&flag, &w, &x).is_equigeodesic);
    }

    #[test]
    fn pair_criterion_examples() {
        let g2 = build_root_system(&LieType::parse("G2").unwrap());
        let a1 = Root::new(alloc::vec![1, 0]);
        let a2 = Root::new(alloc::vec![0, 1]);
        let theta = Root::new(alloc::vec![2, 3]);
        assert!(is_equigeodesic_pair_fullflag(&g2, &a2, &theta).unwrap());
        assert!(!is_equigeodesic_pair_fullflag(&g2, &a1, &a2).unwrap());
        assert!(is_equigeodesic_pair_fullflag(&g2, &a1, &a1).is_err());

        // SO(16)/T: α₁ ± α₃ are not roots; u_{α₂} ⊕ u_{α₄} ⊕ u_{α₇} works too.
        let d8 = build_root_system(&LieType::parse("D8").unwrap());
        let s = |i: usize| d8.simple_root(i);
        assert!(is_equigeodesic_pair_fullflag(&d8, &s(0), &s(2)).unwrap());
        assert!(is_equigeodesic_multiroot_fullflag(&d8, &[s(1), s(3), s(6)]).unwrap());

        // A3: α₁₂ + α₂₃ = α₁₃ is a root.
        let a3 = build_root_system(&LieType::parse("A3").unwrap());
        assert!(!is_equigeodesic_multiroot_fullflag(
            &a3,
            &[a3.simple_root(0), a3.simple_root(1)]
        )
        .unwrap());
        assert!(is_equigeodesic_multiroot_fullflag(&a3, &[a3.simple_root(0)]).unwrap());
        assert!(is_equigeodesic_multiroot_fullflag(
            &a3,
            &[a3.simple_root(0), a3.simple_root(0)]
        )
        .is_err());
    }

    #[test]
    fn three_summand_inclusions() {
        let (flag, w) = setup("G2", &[0]);
        let x = vector(&flag, &[([0, 1], 2, 1), ([1, 1], -1, 3)]);
        let y = vector(&flag, &[([1, 2], 4, -5)]);
        let z = vector(&flag, &[([1, 3], 1, 1), ([2, 3], 2, -3)]);

        let expect_subset = |b: &BracketM, allowed: &[usize]| {
            for r in b.support() {
                let k = flag.module_of(r).unwrap().0;
                assert!(allowed.contains(&k), "component in m{} at {r}", k + 1);
            }
        };
        expect_subset(&bracket_m(&flag, &w, &x, &y), &[0, 2]);
        expect_subset(&bracket_m(&flag, &w, &x, &z), &[1]);
        expect_subset(&bracket_m(&flag, &w, &y, &z), &[0]);
    }

    #[test]
    fn classify_families() {
        let (flag, w) = setup("G2", &[0]);
        let classify =
            |v: &TangentVector| classify_g2_three_summand(&flag, &w, v, ConstantMode::Exact).unwrap();

        let in_m2 = vector(&flag, &[([1, 2], 3, -4)]);
        let v = classify(&in_m2);
        assert!(v.is_equigeodesic);
        assert_eq!(v.family, Some(SolutionFamily::B));

        let fam_d = vector(&flag, &[([1, 1], 2, 5), ([1, 3], -3, 1)]);
        let v = classify(&fam_d);
        assert!(v.is_equigeodesic);
        assert_eq!(v.family, Some(SolutionFamily::D));

        let bad = vector(&flag, &[([0, 1], 1, 0), ([1, 2], 1, 0)]);
        let v = classify(&bad);
        assert!(!v.is_equigeodesic);
        assert_eq!(v.family, Some(SolutionFamily::F));

        assert_eq!(classify(&TangentVector::zero()).family, Some(SolutionFamily::Trivial));

        // Wrong flag rejected.
        let (two_summand, w2) = setup("G2", &[1]);
        assert!(classify_g2_three_summand(
            &two_summand,
            &w2,
            &TangentVector::zero(),
            ConstantMode::Exact
        )
        .is_err());
    }

    #[test]
    fn mixed_family_exact_relation() {
        let (flag, w) = setup("G2", &[0]);
        let ratio = g2_mixed_family_ratio(&w);
        // a₁, a₂, d₂ generic; d₁ = −ratio·b₂d₂/b₁ kills [X, Z] exactly.
        let a1 = QComplex::from_rat_pair(rat_i(2), rat_i(1));
        let a2 = QComplex::from_rat_pair(rat_i(-1), rat_i(3));
        let d2 = QComplex::from_rat_pair(rat_i(4), rat_i(-2));
        let b1 = -&a1.conj();
        let b2 = -&a2.conj();
        let num = b2.mul(&d2).scale_real(&QuadExt::from_rat(-ratio));
        let inv_norm = rat_i(5).recip(); // |b₁|² = 4 + 1
        let d1 = num.mul(&b1.conj()).scale_real(&QuadExt::from_rat(inv_norm));
        let d1re = d1.re.as_rational().unwrap();
        let d1im = d1.im.as_rational().unwrap();

        let v = TangentVector::from_components(
            &flag,
            [
                (Root::new(alloc::vec![0, 1]), (rat_i(2), rat_i(1))),
                (Root::new(alloc::vec![1, 1]), (rat_i(-1), rat_i(3))),
                (Root::new(alloc::vec![2, 3]), (rat_i(4), rat_i(-2))),
                (Root::new(alloc::vec![1, 3]), (d1re, d1im)),
            ],
        )
        .unwrap();
        let verdict = classify_g2_three_summand(&flag, &w, &v, ConstantMode::Exact).unwrap();
        assert!(verdict.is_equigeodesic, "weighted relation must kill the bracket exactly");
        assert_eq!(verdict.family, Some(SolutionFamily::E));
    }

    #[test]
    fn paper_unit_system_families() {
        let (flag, w) = setup("G2", &[0]);
        // Unit-constant mixed family with real coefficients:
        // a₁ = 1, a₂ = 2, d₂ = 3 ⇒ b₁ = −1, b₂ = −2, d₁ = −b₂d₂/b₁ = −6.
        let v = vector(&flag, &[([0, 1], 1, 0), ([1, 1], 2, 0), ([2, 3], 3, 0), ([1, 3], -6, 0)]);
        let verdict = classify_g2_three_summand(&flag, &w, &v, ConstantMode::PaperUnit).unwrap();
        assert!(verdict.is_equigeodesic);
        assert_eq!(verdict.family, Some(SolutionFamily::E));

        let bad = vector(&flag, &[([0, 1], 1, 0), ([1, 2], 1, 0)]);
        let verdict = classify_g2_three_summand(&flag, &w, &bad, ConstantMode::PaperUnit).unwrap();
        assert!(!verdict.is_equigeodesic);
    }

    #[test]
    fn geodesic_for_normal_metric_and_scaling() {
        let (flag, w) = setup("G2", &[0]);
        let x = vector(&flag, &[([0, 1], 1, 2), ([1, 2], 3, -1), ([2, 3], 0, 2)]);
        // Normal metric: [X, λX] = 0 for any X.
        let normal = alloc::vec![rat_i(1), rat_i(1), rat_i(1)];
        assert!(geodesic_vector_check(&flag, &w, &normal, &x).unwrap());
        // A generic metric on a non-equigeodesic vector fails.
        let generic = alloc::vec![rat_i(1), rat_i(2), rat_i(3)];
        assert!(!geodesic_vector_check(&flag, &w, &generic, &x).unwrap());
        assert!(geodesic_vector_check(&flag, &w, &[rat_i(0)], &x).is_err());

        // Scaling invariance of the equigeodesic property.
        let v1 = is_equigeodesic(&flag, &w, &x).is_equigeodesic;
        let v2 = is_equigeodesic(&flag, &w, &x.scaled(&rat(-7, 3))).is_equigeodesic;
        assert_eq!(v1, v2);
    }

    #[test]
    fn reality_constraint_enforced() {
        let (flag, _w) = setup("G2", &[]);
        let ok = TangentVector::from_components(
            &flag,
            [
                (Root::new(alloc::vec![1, 0]), (rat_i(2), rat_i(3))),
                (Root::new(alloc::vec![-1, 0]), (rat_i(-2), rat_i(3))),
            ],
        );
        assert!(ok.is_ok());
        let bad = TangentVector::from_components(
            &flag,
            [
                (Root::new(alloc::vec![1, 0]), (rat_i(2), rat_i(3))),
                (Root::new(alloc::vec![-1, 0]), (rat_i(2), rat_i(3))),
            ],
        );
        assert!(matches!(bad.unwrap_err(), EquiError::RealityViolated(_)));
        // K-roots are rejected.
        let flag_k = setup("G2", &[1]).0;
        let not_m = TangentVector::from_components(
            &flag_k,
            [(Root::new(alloc::vec![0, 1]), (rat_i(1), rat_i(0)))],
        );
        assert!(matches!(not_m.unwrap_err(), EquiError::NotComplementary(_)));
    }
}
