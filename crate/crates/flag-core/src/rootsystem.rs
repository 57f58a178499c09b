//! Root systems of the simple Lie algebras in exact rational arithmetic.
//!
//! Roots are stored as integer coordinate vectors over the simple-root basis
//! `Σ = {α₁, …, α_l}`. The inner product on the span of the roots is the one
//! induced by the Cartan-Killing form of the compact real form, fixed by the
//! self-consistency identity `(λ,μ) = Σ_{α∈R} (λ,α)(μ,α)`; for `G₂` this
//! puts long roots at square length `1/4` and short roots at `1/12`.
//!
//! [`assign_signs`] equips the system with Weyl-basis data: squared
//! structure constants `N²_{α,β} = q(1+p)/2·(α,α)` from root strings, and a
//! deterministic sign table built by a Chevalley-style recursion
//! (extraspecial pairs get `+`, everything else follows from the Jacobi
//! identity). The assembled bracket `[E_α,E_β] = m_{α,β} E_{α+β}` with
//! `m_{α,β} = sign·√N²` then satisfies `⟨E_α,E_{−α}⟩ = 1`, antisymmetry,
//! `m_{α,β} = −m_{−α,−β}` and the Jacobi identity exactly; [`jacobi_defect`]
//! re-checks that over all root triples.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::quadext::{QuadExt, Rat};
use crate::{rat, rat_i};

/// The seven series of simple Lie algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple Lie algebra type, e.g. `G2` or `A3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieType {
    series: Series,
    rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSystemError {
    /// Rank outside the admissible range of the series.
    InvalidRank { series: Series, rank: usize },
    /// Functional has the wrong number of coordinates.
    DimensionMismatch { expected: usize, got: usize },
    /// Root string of `α` through `β` requires `α ≠ ±β`.
    EqualOrOpposite,
    /// Argument is not a root of the system.
    NotARoot,
}

impl fmt::Display for RootSystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystemError::InvalidRank { series, rank } => {
                write!(f, "invalid rank {rank} for series {series}")
            }
            RootSystemError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            RootSystemError::EqualOrOpposite => write!(f, "roots must satisfy α ≠ ±β"),
            RootSystemError::NotARoot => write!(f, "not a root of the system"),
        }
    }
}

impl LieType {
    /// Validates the rank bounds: `A_l (l≥1)`, `B_l (l≥2)`, `C_l (l≥2)`,
    /// `D_l (l≥3)`, `E_{6,7,8}`, `F_4`, `G_2`.
    pub fn new(series: Series, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(RootSystemError::InvalidRank { series, rank })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Parse `"G2"`, `"A3"`, ….
    pub fn parse(s: &str) -> Result<Self, RootSystemError> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(RootSystemError::InvalidRank { series: Series::A, rank: 0 }),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootSystemError::InvalidRank { series, rank: 0 })?;
        LieType::new(series, rank)
    }

    /// Gram matrix of the simple roots in a convenient (unnormalized) scale.
    fn raw_gram(&self) -> Vec<Vec<Rat>> {
        let l = self.rank;
        let mut g = vec![vec![Rat::zero(); l]; l];
        let set = |g: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
            g[i][j] = v.clone();
            g[j][i] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..l {
                    g[i][i] = rat_i(2);
                }
                for i in 0..l.saturating_sub(1) {
                    set(&mut g, i, i + 1, rat_i(-1));
                }
            }
            Series::B => {
                for i in 0..l {
                    g[i][i] = if i + 1 == l { Rat::one() } else { rat_i(2) };
                }
                for i in 0..l - 1 {
                    set(&mut g, i, i + 1, rat_i(-1));
                }
            }
            Series::C => {
                for i in 0..l {
                    g[i][i] = if i + 1 == l { rat_i(4) } else { rat_i(2) };
                }
                for i in 0..l - 1 {
                    let v = if i + 2 == l { rat_i(-2) } else { rat_i(-1) };
                    set(&mut g, i, i + 1, v);
                }
            }
            Series::D => {
                for i in 0..l {
                    g[i][i] = rat_i(2);
                }
                for i in 0..l - 2 {
                    set(&mut g, i, i + 1, rat_i(-1));
                }
                set(&mut g, l - 3, l - 1, rat_i(-1));
            }
            Series::E => {
                for i in 0..l {
                    g[i][i] = rat_i(2);
                }
                // Bourbaki numbering: chain 1-3-4-5-…, node 2 hangs off node 4.
                set(&mut g, 0, 2, rat_i(-1));
                set(&mut g, 1, 3, rat_i(-1));
                for i in 2..l - 1 {
                    set(&mut g, i, i + 1, rat_i(-1));
                }
            }
            Series::F => {
                g[0][0] = rat_i(2);
                g[1][1] = rat_i(2);
                g[2][2] = Rat::one();
                g[3][3] = Rat::one();
                set(&mut g, 0, 1, rat_i(-1));
                set(&mut g, 1, 2, rat_i(-1));
                set(&mut g, 2, 3, rat(-1, 2));
            }
            Series::G => {
                g[0][0] = rat_i(2);
                g[1][1] = rat(2, 3);
                set(&mut g, 0, 1, rat_i(-1));
            }
        }
        g
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// A root, stored as its integer coordinates over the simple-root basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Sum of the coordinates. Positive roots have positive height.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinates joined by commas, e.g. `"2,3"`; used as a stable key.
    pub fn coords_key(&self) -> String {
        use alloc::format;
        let parts: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        parts.join(",")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        Ok(())
    }
}

/// A root system with Killing-normalized inner products.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    /// Positive roots ordered by (height, descending-lex coordinates);
    /// simple roots come first in index order.
    positive_roots: Vec<Root>,
    all_roots: BTreeSet<Root>,
    pos_index: BTreeMap<Root, usize>,
    /// `cartan[i][j] = 2(αᵢ,αⱼ)/(αᵢ,αᵢ)` (rows normalized by the row root).
    cartan_matrix: Vec<Vec<i64>>,
    /// Killing-normalized Gram matrix of the simple roots.
    killing_gram: Vec<Vec<Rat>>,
}

/// Construct the root system of `t` by closing the simple roots under root
/// strings, then rescale the Gram matrix to the Cartan-Killing normalization.
pub fn build_root_system(t: &LieType) -> RootSystem {
    let l = t.rank();
    let raw = t.raw_gram();
    let inner_raw = |a: &Root, b: &Root| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..l {
            for j in 0..l {
                if a.coords()[i] != 0 && b.coords()[j] != 0 {
                    acc += &raw[i][j] * rat_i(a.coords()[i] * b.coords()[j]);
                }
            }
        }
        acc
    };

    let simples: Vec<Root> = (0..l)
        .map(|i| {
            let mut c = vec![0i64; l];
            c[i] = 1;
            Root::new(c)
        })
        .collect();

    // Close under root strings, level by level: q = p − ⟨β, αᵢ^∨⟩.
    let mut positive: BTreeSet<Root> = simples.iter().cloned().collect();
    let mut frontier: Vec<Root> = simples.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for (i, alpha) in simples.iter().enumerate() {
                let cartan_int = rat_i(2) * inner_raw(beta, alpha) / inner_raw(alpha, alpha);
                debug_assert!(cartan_int.is_integer());
                let c = cartan_int.to_integer();
                let mut p = 0i64;
                loop {
                    let mut down = beta.clone();
                    for _ in 0..p + 1 {
                        down = down.sub(&simples[i]);
                    }
                    if down.is_zero() || !positive.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let q = Rat::from(num_bigint::BigInt::from(p)) - c;
                if q.is_positive() {
                    let up = beta.add(alpha);
                    if positive.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }

    let mut positive_roots: Vec<Root> = positive.into_iter().collect();
    positive_roots.sort_by_key(|r| (r.height(), Reverse(r.coords().to_vec())));

    let mut all_roots: BTreeSet<Root> = BTreeSet::new();
    for r in &positive_roots {
        all_roots.insert(r.clone());
        all_roots.insert(r.neg());
    }

    // Killing normalization from (λ,λ) = Σ_{α∈R} (λ,α)².
    let lambda = &simples[0];
    let mut denom = Rat::zero();
    for r in &all_roots {
        let v = inner_raw(lambda, r);
        denom += &v * &v;
    }
    let scale = inner_raw(lambda, lambda) / denom;
    let killing_gram: Vec<Vec<Rat>> =
        raw.iter().map(|row| row.iter().map(|v| v * &scale).collect()).collect();

    let mut cartan_matrix = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            let v = rat_i(2) * inner_raw(&simples[i], &simples[j])
                / inner_raw(&simples[i], &simples[i]);
            debug_assert!(v.is_integer());
            cartan_matrix[i][j] = i64::try_from(v.to_integer()).expect("cartan entry");
        }
    }

    let pos_index: BTreeMap<Root, usize> =
        positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

    RootSystem { lie_type: *t, positive_roots, all_roots, pos_index, cartan_matrix, killing_gram }
}

impl RootSystem {
    pub fn lie_type(&self) -> &LieType {
        &self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.all_roots.iter()
    }

    pub fn num_roots(&self) -> usize {
        self.all_roots.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn killing_gram(&self) -> &[Vec<Rat>] {
        &self.killing_gram
    }

    pub fn simple_root(&self, i: usize) -> Root {
        self.positive_roots[i].clone()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.all_roots.contains(r)
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.pos_index.get(r).copied()
    }

    /// True iff `v` is a root (the zero vector never is).
    pub fn is_root(&self, v: &[i64]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        self.all_roots.contains(&Root::new(v.to_vec()))
    }

    /// Killing inner product of two rational functionals over the simple basis.
    pub fn killing_inner(&self, phi: &[Rat], psi: &[Rat]) -> Result<Rat, RootSystemError> {
        let l = self.rank();
        if phi.len() != l {
            return Err(RootSystemError::DimensionMismatch { expected: l, got: phi.len() });
        }
        if psi.len() != l {
            return Err(RootSystemError::DimensionMismatch { expected: l, got: psi.len() });
        }
        let mut acc = Rat::zero();
        for i in 0..l {
            if phi[i].is_zero() {
                continue;
            }
            for j in 0..l {
                if !psi[j].is_zero() {
                    acc += &phi[i] * &self.killing_gram[i][j] * &psi[j];
                }
            }
        }
        Ok(acc)
    }

    /// Killing inner product of two roots.
    pub fn inner(&self, a: &Root, b: &Root) -> Rat {
        let mut acc = Rat::zero();
        for (i, &ca) in a.coords().iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coords().iter().enumerate() {
                if cb != 0 {
                    acc += &self.killing_gram[i][j] * rat_i(ca * cb);
                }
            }
        }
        acc
    }

    /// Square length of the longest root.
    pub fn long_root_square(&self) -> Rat {
        let mut best = Rat::zero();
        for r in &self.positive_roots {
            let v = self.inner(r, r);
            if v > best {
                best = v;
            }
        }
        best
    }

    /// The α-string through β: `β − pα, …, β + qα` all roots, nothing beyond.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(usize, usize), RootSystemError> {
        if !self.contains(alpha) || !self.contains(beta) {
            return Err(RootSystemError::NotARoot);
        }
        if alpha == beta || *alpha == beta.neg() {
            return Err(RootSystemError::EqualOrOpposite);
        }
        let mut p = 0usize;
        let mut cur = beta.sub(alpha);
        while self.contains(&cur) {
            p += 1;
            cur = cur.sub(alpha);
        }
        let mut q = 0usize;
        let mut cur = beta.add(alpha);
        while self.contains(&cur) {
            q += 1;
            cur = cur.add(alpha);
        }
        Ok((p, q))
    }

    /// `N²_{α,β} = q(1+p)/2 · (α,α)`, zero exactly when `α+β` is not a root.
    pub fn structure_constant_sq(&self, alpha: &Root, beta: &Root) -> Rat {
        let sum = alpha.add(beta);
        if sum.is_zero() || !self.contains(&sum) {
            return Rat::zero();
        }
        let (p, q) = self.root_string(alpha, beta).expect("α ≠ ±β since α+β ∈ R");
        rat_i((q * (1 + p)) as i64) / rat_i(2) * self.inner(alpha, alpha)
    }
}

/// Weyl-basis data: squared structure constants and the sign table fixing
/// `m_{α,β} = sign·√(N²_{α,β})`.
#[derive(Clone, Debug)]
pub struct WeylBasisData {
    /// Keyed by the unordered pair (lexicographically smaller root first).
    n_squared: BTreeMap<(Root, Root), Rat>,
    /// Keyed by the ordered pair.
    signs: BTreeMap<(Root, Root), i8>,
}

impl WeylBasisData {
    /// `N²_{α,β}` (zero when `α+β` is not a root).
    pub fn n_squared(&self, a: &Root, b: &Root) -> Rat {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.n_squared.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn sign(&self, a: &Root, b: &Root) -> i8 {
        self.signs.get(&(a.clone(), b.clone())).copied().unwrap_or(0)
    }

    /// The structure constant `m_{α,β}` as an exact `QuadExt` value.
    pub fn m(&self, a: &Root, b: &Root) -> QuadExt {
        match self.sign(a, b) {
            0 => QuadExt::zero(),
            s => {
                let root = QuadExt::sqrt_of(&self.n_squared(a, b));
                if s > 0 {
                    root
                } else {
                    -&root
                }
            }
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Root, Root), &i8)> {
        self.signs.iter()
    }
}

/// Chevalley-basis structure constants for positive-root pairs, built by the
/// extraspecial-pair recursion. Values are `±(p+1)`, kept as rationals for
/// the intermediate triangle-identity arithmetic.
fn chevalley_positive(rs: &RootSystem) -> BTreeMap<(Root, Root), Rat> {
    let mut tab: BTreeMap<(Root, Root), Rat> = BTreeMap::new();
    for gamma in rs.positive_roots() {
        if gamma.height() == 1 {
            continue;
        }
        // Decompositions γ = a + b with a ≺ b, ordered by a.
        let mut decomps: Vec<(Root, Root)> = Vec::new();
        for a in rs.positive_roots() {
            let b = gamma.sub(a);
            if !b.is_positive() || !rs.contains(&b) {
                continue;
            }
            if rs.positive_index(a).unwrap() < rs.positive_index(&b).unwrap() {
                decomps.push((a.clone(), b));
            }
        }
        assert!(!decomps.is_empty(), "positive root without decomposition");
        let (s, delta) = decomps[0].clone();
        assert_eq!(s.height(), 1, "extraspecial pair starts at a simple root");

        let (p, _q) = rs.root_string(&s, &delta).expect("extraspecial string");
        let val = rat_i((p + 1) as i64);
        tab.insert((s.clone(), delta.clone()), val.clone());
        tab.insert((delta.clone(), s.clone()), -val);

        // N_{−s,x} = ((x−s),(x−s))/(x,x) · N_{s,x−s} for positive x with x−s ∈ R⁺.
        let n_neg_s = |tab: &BTreeMap<(Root, Root), Rat>, x: &Root| -> Option<Rat> {
            let down = x.sub(&s);
            if down.is_zero() || !rs.contains(&down) {
                return None;
            }
            let ratio = rs.inner(&down, &down) / rs.inner(x, x);
            Some(ratio * tab.get(&(s.clone(), down)).expect("lower pair known").clone())
        };

        for (a, b) in decomps.iter().skip(1) {
            // Jacobi with e_{−s}:  N_{a,b} N_{−s,γ} = N_{−s,a} N_{a−s,b} + N_{−s,b} N_{a,b−s}.
            let denom = rs.inner(&delta, &delta) / rs.inner(gamma, gamma)
                * tab.get(&(s.clone(), delta.clone())).unwrap().clone();
            let mut rhs = Rat::zero();
            if let Some(nsa) = n_neg_s(&tab, a) {
                let down = a.sub(&s);
                rhs += nsa * tab.get(&(down, b.clone())).expect("pair with sum δ").clone();
            }
            if let Some(nsb) = n_neg_s(&tab, b) {
                let down = b.sub(&s);
                rhs += nsb * tab.get(&(a.clone(), down)).expect("pair with sum δ").clone();
            }
            let val = rhs / denom;
            assert!(!val.is_zero(), "structure constant must not vanish on a root sum");
            tab.insert((a.clone(), b.clone()), val.clone());
            tab.insert((b.clone(), a.clone()), -val);
        }
    }
    tab
}

/// Resolve the Chevalley constant of an arbitrary ordered root pair from the
/// positive table, via `N_{−α,−β} = −N_{α,β}` and the zero-sum triangle
/// identity `N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)` for `x+y+z = 0`.
fn chevalley_any(rs: &RootSystem, tab: &BTreeMap<(Root, Root), Rat>, x: &Root, y: &Root) -> Rat {
    let gamma = x.add(y);
    debug_assert!(rs.contains(&gamma));
    match (x.is_positive(), y.is_positive()) {
        (true, true) => tab.get(&(x.clone(), y.clone())).expect("positive pair").clone(),
        (false, false) => -tab.get(&(x.neg(), y.neg())).expect("positive pair").clone(),
        (false, true) => -chevalley_any(rs, tab, y, x),
        (true, false) => {
            let z = gamma.neg();
            if z.is_positive() {
                // (z, x) is a positive pair: N_{x,y} = (z,z)/(y,y)·N_{z,x}.
                let ratio = rs.inner(&z, &z) / rs.inner(y, y);
                ratio * tab.get(&(z, x.clone())).expect("positive pair").clone()
            } else {
                // (y, z) is a negative pair: N_{x,y} = (z,z)/(x,x)·N_{y,z}.
                let ratio = rs.inner(&z, &z) / rs.inner(x, x);
                let nyz = -tab.get(&(y.neg(), z.neg())).expect("positive pair").clone();
                ratio * nyz
            }
        }
    }
}

/// Fix a sign table for the Weyl basis.
///
/// Signs come from a Chevalley basis with extraspecial pairs set positive;
/// rescaling `E_α = c_α e_α` with `c_α = √((α,α)/2) > 0` preserves them, so
/// the same table serves the Killing normalization `⟨E_α,E_{−α}⟩ = 1`.
pub fn assign_signs(rs: &RootSystem) -> WeylBasisData {
    let tab = chevalley_positive(rs);
    let mut n_squared = BTreeMap::new();
    let mut signs = BTreeMap::new();
    let roots: Vec<Root> = rs.roots().cloned().collect();
    for x in &roots {
        for y in &roots {
            let sum = x.add(y);
            if sum.is_zero() || !rs.contains(&sum) {
                continue;
            }
            let c = chevalley_any(rs, &tab, x, y);
            signs.insert((x.clone(), y.clone()), if c.is_positive() { 1i8 } else { -1i8 });
            let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
            n_squared.entry(key).or_insert_with(|| rs.structure_constant_sq(x, y));
        }
    }
    WeylBasisData { n_squared, signs }
}

/// One term of a Lie-algebra element in the Weyl basis: root-space
/// coefficients plus a Cartan part expressed as a functional over Σ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Element {
    e: BTreeMap<Root, QuadExt>,
    h: Vec<QuadExt>,
}

impl Element {
    fn new(rank: usize) -> Self {
        Element { e: BTreeMap::new(), h: vec![QuadExt::zero(); rank] }
    }

    fn add_e(&mut self, r: Root, c: QuadExt) {
        use alloc::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.e.entry(r) {
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

    fn is_zero(&self) -> bool {
        self.e.values().all(QuadExt::is_zero) && self.h.iter().all(QuadExt::is_zero)
    }
}

/// `[[E_x,E_y],E_z]` in the assembled bracket.
fn double_bracket(rs: &RootSystem, w: &WeylBasisData, x: &Root, y: &Root, z: &Root) -> Element {
    let rank = rs.rank();
    let mut out = Element::new(rank);
    let sum = x.add(y);
    if sum.is_zero() {
        // [E_x, E_{−x}] = t_x, and [t_x, E_z] = (x,z) E_z.
        let c = rs.inner(x, z);
        out.add_e(z.clone(), QuadExt::from_rat(c));
        return out;
    }
    if !rs.contains(&sum) {
        return out;
    }
    let m1 = w.m(x, y);
    let total = sum.add(z);
    if total.is_zero() {
        // [E_{x+y}, E_z] with z = −(x+y): Cartan part m1 · t_{x+y}.
        for (i, &c) in sum.coords().iter().enumerate() {
            out.h[i] += &m1.scale(&rat_i(c));
        }
        return out;
    }
    if rs.contains(&total) {
        let m2 = w.m(&sum, z);
        out.add_e(total, &m1 * &m2);
    }
    out
}

/// Checks the Jacobi identity of the assembled bracket over all root triples;
/// returns the first violating triple, or `None` when the identity holds.
pub fn jacobi_defect(rs: &RootSystem, w: &WeylBasisData) -> Option<(Root, Root, Root)> {
    let roots: Vec<Root> = rs.roots().cloned().collect();
    for x in &roots {
        for y in &roots {
            for z in &roots {
                let mut total = Element::new(rs.rank());
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let t = double_bracket(rs, w, a, b, c);
                    for (r, q) in t.e {
                        total.add_e(r, q);
                    }
                    for (i, q) in t.h.iter().enumerate() {
                        total.h[i] += q;
                    }
                }
                if !total.is_zero() {
                    return Some((x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    None
}
