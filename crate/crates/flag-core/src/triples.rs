//! Zero-sum triples of T-roots and the curvature coefficient tensor.
//!
//! Three T-roots summing to zero control the interaction of isotropy
//! summands: the tensor entry `C_{ij}^k` is nonzero exactly when the signed
//! positive representatives `±δ_i ± δ_j ± δ_k` admit a vanishing
//! combination, and every genuine T-root triple lifts to a root triple
//! `α + β + γ = 0` (found here by exhaustive fiber search).
//!
//! Triples are counted in two modes. `Multiset` permits a repeated member
//! (`δ + δ − 2δ = 0` is a triple), which is the reading under which no
//! T-root is isolated whenever there is more than one positive T-root;
//! `Distinct` requires three pairwise-distinct members and reproduces the
//! counts quoted for the three-summand `G₂` quotient.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::flagspace::{FlagManifold, TRoot};
use crate::quadext::Rat;
use crate::rat_i;
use crate::rootsystem::{Root, WeylBasisData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleMode {
    /// A T-root may appear twice in a triple.
    Multiset,
    /// All three members pairwise distinct.
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleError {
    NotATRoot(TRoot),
    /// `rt_shape` needs two or three isotropy summands.
    BadSummandCount(usize),
}

impl fmt::Display for TripleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleError::NotATRoot(t) => write!(f, "{t} is not a T-root"),
            TripleError::BadSummandCount(n) => {
                write!(f, "shape classification needs 2 or 3 summands, got {n}")
            }
        }
    }
}

/// An unordered zero-sum triple of (signed) T-roots with a lifted root
/// witness if one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRootTriple {
    /// Sorted members; their coordinate sum is zero.
    pub members: [TRoot; 3],
    /// Roots `(α, β, γ)` with `α+β+γ = 0` projecting onto the members.
    pub witness: Option<[Root; 3]>,
}

fn signed_t_roots(flag: &FlagManifold) -> Vec<TRoot> {
    let mut out = Vec::new();
    for t in flag.positive_t_roots() {
        out.push(t.clone());
        out.push(t.neg());
    }
    out.sort();
    out
}

/// Roots projecting onto a signed T-root.
fn fiber(flag: &FlagManifold, t: &TRoot) -> Vec<Root> {
    if let Some(k) = flag.module_of_troot(t) {
        return flag.isotropy_modules()[k].roots.clone();
    }
    let k = flag.module_of_troot(&t.neg()).expect("signed T-root");
    flag.isotropy_modules()[k].roots.iter().map(Root::neg).collect()
}

fn find_witness(flag: &FlagManifold, members: &[TRoot; 3]) -> Option<[Root; 3]> {
    let f0 = fiber(flag, &members[0]);
    let f1 = fiber(flag, &members[1]);
    for a in &f0 {
        for b in &f1 {
            let c = a.add(b).neg();
            if c.is_zero() {
                continue;
            }
            if flag.root_system().contains(&c) && flag.kappa(&c) == Some(members[2].clone()) {
                return Some([a.clone(), b.clone(), c]);
            }
        }
    }
    None
}

/// Enumerate all zero-sum triples of T-roots, each as a sorted multiset.
pub fn zero_sum_triples(flag: &FlagManifold, mode: TripleMode) -> Vec<TRootTriple> {
    let signed = signed_t_roots(flag);
    let n = signed.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if mode == TripleMode::Distinct && (i == j || j == k) {
                    continue;
                }
                let sum = signed[i].add(&signed[j]).add(&signed[k]);
                if !sum.is_zero() {
                    continue;
                }
                let members = [signed[i].clone(), signed[j].clone(), signed[k].clone()];
                let witness = find_witness(flag, &members);
                out.push(TRootTriple { members, witness });
            }
        }
    }
    out
}

/// `T(δ)`: the number of zero-sum triples containing the T-root `δ`.
pub fn triple_count(
    flag: &FlagManifold,
    delta: &TRoot,
    mode: TripleMode,
) -> Result<usize, TripleError> {
    if !flag.is_t_root(delta) {
        return Err(TripleError::NotATRoot(delta.clone()));
    }
    let count =
        zero_sum_triples(flag, mode).iter().filter(|t| t.members.contains(delta)).count();
    Ok(count)
}

/// Outcome of the no-isolated-T-root check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolationOutcome {
    /// Every T-root lies in at least one multiset triple.
    Holds,
    /// Fewer than two positive T-roots: the hypothesis fails.
    NotApplicable,
    /// A T-root in no triple (never observed; would contradict the theory).
    Isolated(TRoot),
}

/// Check that every T-root belongs to some zero-sum triple (multiset mode),
/// provided there is more than one positive T-root.
pub fn verify_no_isolated_troot(flag: &FlagManifold) -> IsolationOutcome {
    if flag.num_modules() <= 1 {
        return IsolationOutcome::NotApplicable;
    }
    let triples = zero_sum_triples(flag, TripleMode::Multiset);
    for t in signed_t_roots(flag) {
        if !triples.iter().any(|tr| tr.members.contains(&t)) {
            return IsolationOutcome::Isolated(t);
        }
    }
    IsolationOutcome::Holds
}

/// The symmetric coefficient tensor `C_{ij}^k`, stored on sorted index
/// triples, with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTensor {
    entries: BTreeMap<(usize, usize, usize), Rat>,
    num_modules: usize,
}

impl CTensor {
    pub fn num_modules(&self) -> usize {
        self.num_modules
    }

    /// Symmetric accessor.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        self.entries.get(&(idx[0], idx[1], idx[2])).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero entries on sorted triples.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rat)> {
        self.entries.iter()
    }
}

/// `2N²` of whichever two of the three positive roots sum to the third;
/// zero when no signed combination vanishes.
pub(crate) fn c3(w: &WeylBasisData, a: &Root, b: &Root, c: &Root) -> Rat {
    let two = rat_i(2);
    if a.add(b) == *c {
        return two * w.n_squared(a, b);
    }
    if b.add(c) == *a {
        return two * w.n_squared(b, c);
    }
    if c.add(a) == *b {
        return two * w.n_squared(c, a);
    }
    Rat::zero()
}

/// Assemble the tensor: for each sorted summand triple, sum the per-root
/// contributions over the full cartesian product of the three fibers.
pub fn c_tensor(flag: &FlagManifold, w: &WeylBasisData) -> CTensor {
    let s = flag.num_modules();
    let modules = flag.isotropy_modules();
    let mut entries = BTreeMap::new();
    for i in 0..s {
        for j in i..s {
            for k in j..s {
                let mut acc = Rat::zero();
                for a in &modules[i].roots {
                    for b in &modules[j].roots {
                        for c in &modules[k].roots {
                            acc += c3(w, a, b, c);
                        }
                    }
                }
                if !acc.is_zero() {
                    entries.insert((i, j, k), acc);
                }
            }
        }
    }
    CTensor { entries, num_modules: s }
}

/// Normal forms of the T-root set for flags with two or three summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RtShape {
    /// `R_T = {±ζ, ±2ζ}`
    TwoSummandDouble { zeta: TRoot },
    /// `R_T = {±δ, ±ζ, ±(δ+ζ)}` (includes the chain `{δ, 2δ, 3δ}` with `ζ = 2δ`)
    ThreeSummandSum { delta: TRoot, zeta: TRoot },
    /// `R_T = {±δ, ±2δ, ±4δ}`
    ThreeSummandDouble { delta: TRoot },
    /// Outside the normal forms (reported, not enforced).
    Unrecognized(Vec<TRoot>),
}

/// Match `R_T⁺` against the two- and three-summand normal forms.
pub fn rt_shape(flag: &FlagManifold) -> Result<RtShape, TripleError> {
    let ts = flag.positive_t_roots();
    match ts.len() {
        2 => {
            if ts[1] == ts[0].scaled(2) {
                Ok(RtShape::TwoSummandDouble { zeta: ts[0].clone() })
            } else {
                Ok(RtShape::Unrecognized(ts))
            }
        }
        3 => {
            if ts[2] == ts[0].add(&ts[1]) {
                Ok(RtShape::ThreeSummandSum { delta: ts[0].clone(), zeta: ts[1].clone() })
            } else if ts[1] == ts[0].scaled(2) && ts[2] == ts[0].scaled(4) {
                Ok(RtShape::ThreeSummandDouble { delta: ts[0].clone() })
            } else {
                Ok(RtShape::Unrecognized(ts))
            }
        }
        n => Err(TripleError::BadSummandCount(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagspace::build_flag;
    use crate::rat;
    use crate::rootsystem::{assign_signs, build_root_system, LieType};

    fn setup(name: &str, parabolic: &[usize]) -> (FlagManifold, WeylBasisData) {
        let rs = build_root_system(&LieType::parse(name).unwrap());
        let w = assign_signs(&rs);
        (build_flag(rs, parabolic).unwrap(), w)
    }

    #[test]
    fn g2_short_parabolic_triples() {
        let (flag, _) = setup("G2", &[1]);
        let triples = zero_sum_triples(&flag, TripleMode::Multiset);
        // {ζ, ζ, −2ζ} and its negation; every triple carries a witness.
        assert_eq!(triples.len(), 2);
        for t in &triples {
            assert!(t.witness.is_some(), "missing lift for {:?}", t.members);
        }
        assert!(zero_sum_triples(&flag, TripleMode::Distinct).is_empty());
        assert_eq!(verify_no_isolated_troot(&flag), IsolationOutcome::Holds);
    }

    #[test]
    fn g2_long_parabolic_counts() {
        let (flag, _) = setup("G2", &[0]);
        let ts = flag.positive_t_roots();
        let (delta, two_delta, three_delta) = (&ts[0], &ts[1], &ts[2]);
        assert_eq!(triple_count(&flag, delta, TripleMode::Distinct).unwrap(), 1);
        assert_eq!(triple_count(&flag, delta, TripleMode::Multiset).unwrap(), 2);
        assert_eq!(triple_count(&flag, three_delta, TripleMode::Distinct).unwrap(), 1);
        assert_eq!(triple_count(&flag, three_delta, TripleMode::Multiset).unwrap(), 1);
        assert_eq!(triple_count(&flag, two_delta, TripleMode::Distinct).unwrap(), 1);
        // T(δ) = T(−δ)
        assert_eq!(
            triple_count(&flag, &delta.neg(), TripleMode::Multiset).unwrap(),
            triple_count(&flag, delta, TripleMode::Multiset).unwrap()
        );
        let missing = TRoot::from_coords(alloc::vec![7]);
        assert!(triple_count(&flag, &missing, TripleMode::Multiset).is_err());
    }

    #[test]
    fn rank_one_t_root_sets() {
        // B2 with parabolic {α₂}: a single summand, no triples, theorem N/A.
        let (flag, _) = setup("B2", &[1]);
        assert_eq!(flag.num_modules(), 1);
        assert!(zero_sum_triples(&flag, TripleMode::Multiset).is_empty());
        assert_eq!(verify_no_isolated_troot(&flag), IsolationOutcome::NotApplicable);

        // A1 full flag likewise.
        let (a1, _) = setup("A1", &[]);
        assert_eq!(verify_no_isolated_troot(&a1), IsolationOutcome::NotApplicable);
    }

    #[test]
    fn a3_full_flag_holds() {
        let (flag, _) = setup("A3", &[]);
        assert_eq!(verify_no_isolated_troot(&flag), IsolationOutcome::Holds);
        for t in zero_sum_triples(&flag, TripleMode::Multiset) {
            assert!(t.witness.is_some());
        }
    }

    #[test]
    fn full_flag_c_values() {
        let (flag, w) = setup("G2", &[]);
        let c = c_tensor(&flag, &w);
        let module_of =
            |coords: [i64; 2]| flag.module_of_positive_root(&Root::new(coords.to_vec())).unwrap();
        let (a1, a2, a12, a122, a123, theta) = (
            module_of([1, 0]),
            module_of([0, 1]),
            module_of([1, 1]),
            module_of([1, 2]),
            module_of([1, 3]),
            module_of([2, 3]),
        );
        // C_{α₁,α₂}^{α₁+α₂} = 2·(1/8), C_{α₂,α₁+α₂}^{α₁+2α₂} = 2·(1/6).
        assert_eq!(c.get(a1, a2, a12), rat(1, 4));
        assert_eq!(c.get(a2, a12, a122), rat(1, 3));
        assert_eq!(c.get(a2, a122, a123), rat(1, 4));
        assert_eq!(c.get(a1, a123, theta), rat(1, 4));
        assert_eq!(c.get(a12, a122, theta), rat(1, 4));
        // No signed zero sum ⇒ zero entry.
        assert_eq!(c.get(a1, a2, a122), rat(0, 1));
        assert_eq!(c.entries().count(), 5);
    }

    #[test]
    fn partial_flag_c_values() {
        // Two summands: C_{112} = 4N²(α₁, α₁+3α₂) + 4N²(α₁+α₂, α₁+2α₂) = 1.
        let (flag, w) = setup("G2", &[1]);
        let c = c_tensor(&flag, &w);
        assert_eq!(c.get(0, 0, 1), rat(1, 1));
        assert_eq!(c.entries().count(), 1);

        // Three summands: C_{112} = 2/3, C_{123} = 1/2.
        let (flag, w) = setup("G2", &[0]);
        let c = c_tensor(&flag, &w);
        assert_eq!(c.get(0, 0, 1), rat(2, 3));
        assert_eq!(c.get(0, 1, 2), rat(1, 2));
        assert_eq!(c.entries().count(), 2);
    }

    #[test]
    fn c_support_is_zero_sum_pattern() {
        for parabolic in [&[][..], &[0][..], &[1][..]] {
            let (flag, w) = setup("G2", parabolic);
            let c = c_tensor(&flag, &w);
            let ts = flag.positive_t_roots();
            let s = flag.num_modules();
            for i in 0..s {
                for j in i..s {
                    for k in j..s {
                        let zero_sum = signed_combination_vanishes(&ts[i], &ts[j], &ts[k]);
                        assert_eq!(
                            !c.get(i, j, k).is_zero(),
                            zero_sum,
                            "support mismatch at ({i},{j},{k})"
                        );
                    }
                }
            }
        }
    }

    fn signed_combination_vanishes(a: &TRoot, b: &TRoot, c: &TRoot) -> bool {
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                for sc in [1i64, -1] {
                    let sum = a.scaled(sa).add(&b.scaled(sb)).add(&c.scaled(sc));
                    if sum.is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn shapes() {
        let (two, _) = setup("G2", &[1]);
        assert!(matches!(rt_shape(&two).unwrap(), RtShape::TwoSummandDouble { .. }));

        let (three, _) = setup("G2", &[0]);
        match rt_shape(&three).unwrap() {
            RtShape::ThreeSummandSum { delta, zeta } => {
                assert_eq!(zeta, delta.scaled(2));
            }
            other => panic!("unexpected shape {other:?}"),
        }

        let (a2, _) = setup("A2", &[]);
        assert!(matches!(rt_shape(&a2).unwrap(), RtShape::ThreeSummandSum { .. }));

        let (full, _) = setup("G2", &[]);
        assert!(rt_shape(&full).is_err());
    }
}
