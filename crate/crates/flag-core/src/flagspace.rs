//! Generalized flag manifolds from a parabolic choice of simple roots.
//!
//! A subset `Σ_K` of the simple roots splits `R = R_K ⊔ R_M`: the K-roots
//! are the roots supported on `Σ_K`, the rest are complementary. The T-root
//! projection `κ` restricts a root to the center `t` of the isotropy
//! algebra; concretely it is the orthogonal projection onto the complement
//! of `span(Σ_K)`, whose coordinates over the projected non-parabolic
//! simple roots are just the root's coordinates at those positions (the
//! parabolic simple roots project to zero). Fibers of `κ` over the positive
//! complementary roots are the irreducible isotropy summands.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rootsystem::{Root, RootSystem};

/// A T-root: integer coordinates over the projections of the non-parabolic
/// simple roots (a fixed basis of `t*`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TRoot {
    coords: Vec<i64>,
}

impl TRoot {
    pub fn from_coords(coords: Vec<i64>) -> Self {
        TRoot { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn neg(&self) -> TRoot {
        TRoot { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &TRoot) -> TRoot {
        TRoot { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scaled(&self, k: i64) -> TRoot {
        TRoot { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn coords_key(&self) -> String {
        use alloc::format;
        let parts: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        parts.join(",")
    }
}

impl fmt::Display for TRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords_key())
    }
}

/// An irreducible summand of the isotropy representation: the positive
/// complementary roots in one κ-fiber, of real dimension `2·|fiber|`.
#[derive(Clone, Debug)]
pub struct IsotropyModule {
    pub t_root: TRoot,
    pub roots: Vec<Root>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagError {
    /// The parabolic set must be a proper subset of the simple roots.
    NotAFlag,
    /// Parabolic index out of `1..=rank`.
    BadIndex(usize),
}

impl fmt::Display for FlagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagError::NotAFlag => write!(f, "parabolic set must leave at least one simple root"),
            FlagError::BadIndex(i) => write!(f, "parabolic index {i} out of range"),
        }
    }
}

/// A generalized flag manifold `G/K`.
#[derive(Clone, Debug)]
pub struct FlagManifold {
    rs: RootSystem,
    parabolic: BTreeSet<usize>,
    free_indices: Vec<usize>,
    r_k: Vec<Root>,
    r_m_pos: Vec<Root>,
    modules: Vec<IsotropyModule>,
    module_of_troot: BTreeMap<TRoot, usize>,
    module_of_root: BTreeMap<Root, usize>,
}

/// Build the flag manifold with `Σ_K = {α_i : i ∈ parabolic}` (0-based
/// indices; empty set gives the full flag).
pub fn build_flag(rs: RootSystem, parabolic: &[usize]) -> Result<FlagManifold, FlagError> {
    let rank = rs.rank();
    let mut pset = BTreeSet::new();
    for &i in parabolic {
        if i >= rank {
            return Err(FlagError::BadIndex(i));
        }
        pset.insert(i);
    }
    if pset.len() == rank {
        return Err(FlagError::NotAFlag);
    }
    let free_indices: Vec<usize> = (0..rank).filter(|i| !pset.contains(i)).collect();

    let restrict = |r: &Root| -> TRoot {
        TRoot { coords: free_indices.iter().map(|&i| r.coords()[i]).collect() }
    };

    let mut r_k = Vec::new();
    let mut r_m_pos = Vec::new();
    for r in rs.roots() {
        if restrict(r).is_zero() {
            r_k.push(r.clone());
        } else if r.is_positive() {
            r_m_pos.push(r.clone());
        }
    }

    // Group the positive complementary roots by T-root, order the summands
    // by (coordinate sum, lexicographic coordinates) of the representative.
    let mut fibers: BTreeMap<TRoot, Vec<Root>> = BTreeMap::new();
    for r in &r_m_pos {
        fibers.entry(restrict(r)).or_default().push(r.clone());
    }
    let mut keys: Vec<TRoot> = fibers.keys().cloned().collect();
    keys.sort_by_key(|t| (t.coords().iter().sum::<i64>(), t.coords().to_vec()));

    let mut modules = Vec::new();
    let mut module_of_troot = BTreeMap::new();
    let mut module_of_root = BTreeMap::new();
    for (idx, t) in keys.into_iter().enumerate() {
        let mut roots = fibers.remove(&t).unwrap();
        roots.sort();
        for r in &roots {
            module_of_root.insert(r.clone(), idx);
        }
        module_of_troot.insert(t.clone(), idx);
        modules.push(IsotropyModule { dim: 2 * roots.len(), t_root: t, roots });
    }

    Ok(FlagManifold {
        rs,
        parabolic: pset,
        free_indices,
        r_k,
        r_m_pos,
        modules,
        module_of_troot,
        module_of_root,
    })
}

impl FlagManifold {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn parabolic(&self) -> &BTreeSet<usize> {
        &self.parabolic
    }

    pub fn t_dim(&self) -> usize {
        self.free_indices.len()
    }

    pub fn is_full_flag(&self) -> bool {
        self.parabolic.is_empty()
    }

    /// All K-roots (both signs).
    pub fn r_k(&self) -> &[Root] {
        &self.r_k
    }

    /// Positive complementary roots.
    pub fn r_m_pos(&self) -> &[Root] {
        &self.r_m_pos
    }

    pub fn in_r_m(&self, r: &Root) -> bool {
        self.rs.contains(r) && !self.kappa_unchecked(r).is_zero()
    }

    fn kappa_unchecked(&self, r: &Root) -> TRoot {
        TRoot { coords: self.free_indices.iter().map(|&i| r.coords()[i]).collect() }
    }

    /// The T-root projection: `None` exactly when `α ∈ R_K`.
    pub fn kappa(&self, alpha: &Root) -> Option<TRoot> {
        debug_assert!(self.rs.contains(alpha));
        let t = self.kappa_unchecked(alpha);
        if t.is_zero() {
            None
        } else {
            Some(t)
        }
    }

    /// The irreducible isotropy summands, in the fixed deterministic order.
    pub fn isotropy_modules(&self) -> &[IsotropyModule] {
        &self.modules
    }

    pub fn num_modules(&self) -> usize {
        self.modules.len()
    }

    /// The positive T-roots `κ(R_M⁺)`, deduplicated, in summand order.
    pub fn positive_t_roots(&self) -> Vec<TRoot> {
        self.modules.iter().map(|m| m.t_root.clone()).collect()
    }

    /// Index of the summand whose positive T-root is `t`.
    pub fn module_of_troot(&self, t: &TRoot) -> Option<usize> {
        self.module_of_troot.get(t).copied()
    }

    /// Summand index of a positive complementary root.
    pub fn module_of_positive_root(&self, r: &Root) -> Option<usize> {
        self.module_of_root.get(r).copied()
    }

    /// Summand index and sign of any complementary root: `(k, +1)` for roots
    /// in the fiber of the positive T-root, `(k, −1)` for their negatives.
    pub fn module_of(&self, r: &Root) -> Option<(usize, i8)> {
        if let Some(k) = self.module_of_root.get(r) {
            return Some((*k, 1));
        }
        self.module_of_root.get(&r.neg()).map(|k| (*k, -1))
    }

    /// True iff `t` (or `−t`) is a T-root of the flag.
    pub fn is_t_root(&self, t: &TRoot) -> bool {
        self.module_of_troot.contains_key(t) || self.module_of_troot.contains_key(&t.neg())
    }

    pub fn module_dims(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.dim).collect()
    }

    /// Total real dimension of the tangent space.
    pub fn tangent_dim(&self) -> usize {
        self.modules.iter().map(|m| m.dim).sum()
    }
}
