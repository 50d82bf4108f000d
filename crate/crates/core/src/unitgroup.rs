//! Finite subgroups of the unit group of F₂G: exhaustive enumeration of
//! `V(F₂G)` and `V_σ(F₂G)`, closures, and internal product predicates.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::complement::AbelianOps;
use crate::algebra::{AlgebraElement, AlgebraError, ByteTables, GroupAlgebra};
use crate::group::{bits, GroupId, SubgroupSet};
use crate::involution::AntiAutomorphism;

/// Largest support size whose normalized units (`2^(m-1)` of them) are stored.
pub const MATERIALIZE_LIMIT: usize = 20;

/// Closures stop with [`UnitError::TooLarge`] past this many members.
pub const MAX_CLOSURE: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("exhaustive enumeration over {order} group elements exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("set is not contained in the ambient group")]
    NotSubset,
    #[error("unit group is not abelian")]
    NotAbelian,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Largest group (or support) order enumerated exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveBound(pub usize);

impl Default for ExhaustiveBound {
    fn default() -> Self {
        ExhaustiveBound(16)
    }
}

impl ExhaustiveBound {
    pub fn allows(self, order: usize) -> bool {
        order <= self.0
    }
}

/// A finite group of units, with members kept sorted by coefficient mask.
#[derive(Debug, Clone)]
pub struct UnitSet {
    group: GroupId,
    sigma: Option<String>,
    members: Vec<u64>,
    generators: Option<Vec<u64>>,
}

impl PartialEq for UnitSet {
    /// Set equality; the recorded involution and generators are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for UnitSet {}

impl UnitSet {
    fn from_sorted(group: GroupId, members: Vec<u64>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { group, sigma: None, members, generators: None }
    }

    fn from_unsorted(group: GroupId, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self::from_sorted(group, members)
    }

    pub(crate) fn from_parts(group: GroupId, members: Vec<u64>, generators: Option<Vec<u64>>) -> Self {
        let mut set = Self::from_unsorted(group, members);
        set.generators = generators;
        set
    }

    pub fn trivial(alg: &GroupAlgebra) -> Self {
        Self { group: alg.id(), sigma: None, members: vec![1], generators: Some(Vec::new()) }
    }

    pub fn with_sigma(mut self, sigma: &AntiAutomorphism) -> Self {
        self.sigma = Some(sigma.name().to_string());
        self
    }

    pub fn with_generators(mut self, gens: &[AlgebraElement]) -> Self {
        self.generators = Some(gens.iter().map(|g| g.bits()).collect());
        self
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn sigma(&self) -> Option<&str> {
        self.sigma.as_deref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        x.group_id() == self.group && self.contains_bits(x.bits())
    }

    pub(crate) fn contains_bits(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn member_bits(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        self.members.iter().map(|&b| AlgebraElement::from_raw(b, self.group))
    }

    pub fn generators(&self) -> Option<Vec<AlgebraElement>> {
        self.generators
            .as_ref()
            .map(|g| g.iter().map(|&b| AlgebraElement::from_raw(b, self.group)).collect())
    }

    /// Generators when known, otherwise every member.
    fn spanning_bits(&self) -> &[u64] {
        self.generators.as_deref().unwrap_or(&self.members)
    }

    pub fn is_subset_of(&self, other: &UnitSet) -> bool {
        self.group == other.group && self.members.iter().all(|&x| other.contains_bits(x))
    }

    /// Members common to both sets.
    pub fn intersection(&self, other: &UnitSet) -> Vec<AlgebraElement> {
        self.members
            .iter()
            .filter(|&&x| other.contains_bits(x))
            .map(|&b| AlgebraElement::from_raw(b, self.group))
            .collect()
    }

    pub fn meets_trivially(&self, other: &UnitSet) -> bool {
        self.members.iter().all(|&x| x == 1 || !other.contains_bits(x))
    }
}

/// Unit multiplication as an abelian group operation, for complement search.
pub(crate) struct UnitMul<'a>(pub &'a GroupAlgebra);

impl AbelianOps for UnitMul<'_> {
    type Elem = u64;

    fn op(&self, x: u64, y: u64) -> u64 {
        self.0.mul_bits(x, y)
    }

    fn identity(&self) -> u64 {
        1
    }
}

fn check_group(alg: &GroupAlgebra, sets: &[&UnitSet]) -> Result<(), UnitError> {
    if sets.iter().any(|s| s.group != alg.id()) {
        return Err(UnitError::GroupMismatch);
    }
    Ok(())
}

/// Scans every bit-vector supported on `support` with odd popcount.
///
/// The low `m - 1` support positions are free and the highest one fixes the
/// parity. Candidates are split into chunks by their high-order free bits;
/// chunk results are concatenated in chunk order and sorted, so the output is
/// independent of the thread count.
fn scan_normalized<F>(support: u64, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    let positions: Vec<usize> = bits(support).collect();
    let m = positions.len();
    assert!((1..=33).contains(&m), "support of size {m} cannot be scanned");
    let parity_bit = 1u64 << positions[m - 1];
    let scatter = ByteTables::new(m - 1, |i| 1u64 << positions[i]);
    let total: u64 = 1 << (m - 1);
    let chunk_bits = (m - 1).min(10);
    let chunks: u64 = 1 << chunk_bits;
    let per_chunk = total / chunks;
    let parts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            for k in c * per_chunk..(c + 1) * per_chunk {
                let mut x = scatter.apply(k);
                if k.count_ones() % 2 == 0 {
                    x |= parity_bit;
                }
                if keep(x) {
                    out.push(x);
                }
            }
            out
        })
        .collect();
    let mut all: Vec<u64> = parts.into_iter().flatten().collect();
    all.par_sort_unstable();
    all
}

/// `V(F₂G)`: every element of augmentation 1, each checked to be invertible.
pub fn enumerate_normalized_units(alg: &GroupAlgebra, bound: ExhaustiveBound) -> Result<UnitSet, UnitError> {
    let whole = alg.group().whole();
    enumerate_normalized_units_on(alg, &whole, bound)
}

/// `V(F₂S)` for a subgroup `S`, as elements of F₂G.
pub fn enumerate_normalized_units_on(
    alg: &GroupAlgebra,
    support: &SubgroupSet,
    bound: ExhaustiveBound,
) -> Result<UnitSet, UnitError> {
    let m = support.len();
    if !bound.allows(m) || m > MATERIALIZE_LIMIT {
        return Err(UnitError::TooLarge { order: m, bound: bound.0.min(MATERIALIZE_LIMIT) });
    }
    let members = scan_normalized(support.mask(), |_| true);
    let bad = members.par_iter().find_first(|&&x| match alg.inverse_bits(x) {
        Some(y) => alg.mul_bits(x, y) != 1 || alg.mul_bits(y, x) != 1,
        None => true,
    });
    if let Some(&x) = bad {
        return Err(UnitError::NotAUnit(alg.render(&AlgebraElement::from_raw(x, alg.id()))));
    }
    Ok(UnitSet::from_sorted(alg.id(), members))
}

/// `V_σ(F₂G) = {u ∈ V : u·u^σ = 1}`.
pub fn enumerate_unitary(alg: &GroupAlgebra, sigma: &AntiAutomorphism, bound: ExhaustiveBound) -> Result<UnitSet, UnitError> {
    let whole = alg.group().whole();
    enumerate_unitary_on(alg, sigma, &whole, bound)
}

/// Unitary elements supported on a σ-stable subgroup `S`.
pub fn enumerate_unitary_on(
    alg: &GroupAlgebra,
    sigma: &AntiAutomorphism,
    support: &SubgroupSet,
    bound: ExhaustiveBound,
) -> Result<UnitSet, UnitError> {
    if sigma.group_id() != alg.id() {
        return Err(UnitError::GroupMismatch);
    }
    let m = support.len();
    if !bound.allows(m) {
        return Err(UnitError::TooLarge { order: m, bound: bound.0 });
    }
    let members = scan_normalized(support.mask(), |x| alg.mul_bits(x, sigma.apply_bits(x)) == 1);
    Ok(UnitSet::from_sorted(alg.id(), members).with_sigma(sigma))
}

/// The subgroup of units generated by `gens`.
pub fn unit_subgroup_closure(alg: &GroupAlgebra, gens: &[AlgebraElement]) -> Result<UnitSet, UnitError> {
    for g in gens {
        if g.group_id() != alg.id() {
            return Err(UnitError::GroupMismatch);
        }
        if !alg.augmentation(g).is_one() {
            return Err(UnitError::NotAUnit(alg.render(g)));
        }
    }
    let gen_bits: Vec<u64> = gens.iter().map(|g| g.bits()).collect();
    let mut seen: HashSet<u64> = HashSet::from([1u64]);
    let mut frontier = vec![1u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in &gen_bits {
                let y = alg.mul_bits(x, g);
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        if seen.len() > MAX_CLOSURE {
            return Err(UnitError::TooLarge { order: seen.len(), bound: MAX_CLOSURE });
        }
        frontier = next;
    }
    let mut set = UnitSet::from_unsorted(alg.id(), seen.into_iter().collect());
    set.generators = Some(gen_bits);
    Ok(set)
}

/// The basis elements of a subgroup of G, as units.
pub fn group_image(alg: &GroupAlgebra, s: &SubgroupSet) -> UnitSet {
    let members = s.members().map(|g| 1u64 << g).collect();
    let mut set = UnitSet::from_unsorted(alg.id(), members);
    set.generators = Some(s.generators_in(alg.group()).into_iter().map(|g| 1u64 << g).collect());
    set
}

/// `{x·y : x ∈ a, y ∈ b}`; generators are concatenated when both are known.
pub fn product_set(alg: &GroupAlgebra, a: &UnitSet, b: &UnitSet) -> Result<UnitSet, UnitError> {
    check_group(alg, &[a, b])?;
    let members: Vec<u64> = a
        .members
        .par_iter()
        .flat_map_iter(|&x| b.members.iter().map(move |&y| alg.mul_bits(x, y)))
        .collect();
    let mut set = UnitSet::from_unsorted(alg.id(), members);
    if let (Some(ga), Some(gb)) = (&a.generators, &b.generators) {
        set.generators = Some(ga.iter().chain(gb).copied().collect());
    }
    Ok(set)
}

/// Whether every product of two members lies in the set.
pub fn is_closed(alg: &GroupAlgebra, s: &UnitSet) -> bool {
    s.members
        .par_iter()
        .all(|&x| s.members.iter().all(|&y| s.contains_bits(alg.mul_bits(x, y))))
}

/// Whether `n` is normalized by every element of `ambient` (generators
/// suffice when known).
pub fn is_normal_in(alg: &GroupAlgebra, ambient: &UnitSet, n: &UnitSet) -> Result<bool, UnitError> {
    Ok(normality_witness(alg, ambient, n)?.is_none())
}

/// A pair `(u, x)` with `u·x·u⁻¹ ∉ n`, if any.
pub fn normality_witness(
    alg: &GroupAlgebra,
    ambient: &UnitSet,
    n: &UnitSet,
) -> Result<Option<(AlgebraElement, AlgebraElement)>, UnitError> {
    check_group(alg, &[ambient, n])?;
    let conjugators = ambient.spanning_bits();
    let targets = n.spanning_bits();
    let found = conjugators.par_iter().find_map_first(|&u| {
        let u_inv = alg.inverse_bits(u)?;
        targets
            .iter()
            .find(|&&x| !n.contains_bits(alg.mul_bits(alg.mul_bits(u, x), u_inv)))
            .map(|&x| (u, x))
    });
    Ok(found.map(|(u, x)| (AlgebraElement::from_raw(u, alg.id()), AlgebraElement::from_raw(x, alg.id()))))
}

/// `ambient = n ⋊ k`: `n` normal, `n ∩ k = 1`, `n·k = ambient`.
pub fn internal_semidirect(alg: &GroupAlgebra, ambient: &UnitSet, n: &UnitSet, k: &UnitSet) -> Result<bool, UnitError> {
    check_group(alg, &[ambient, n, k])?;
    if !n.is_subset_of(ambient) || !k.is_subset_of(ambient) {
        return Err(UnitError::NotSubset);
    }
    if !n.meets_trivially(k) || n.len() * k.len() != ambient.len() {
        return Ok(false);
    }
    if !is_normal_in(alg, ambient, n)? {
        return Ok(false);
    }
    Ok(product_set(alg, n, k)? == *ambient)
}

/// Outcome of an internal direct product check, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectProductCheck {
    /// Two elements from different factors that do not commute.
    pub non_commuting: Option<(AlgebraElement, AlgebraElement)>,
    /// Factor index and a nontrivial element it shares with the product of the others.
    pub overlap: Option<(usize, AlgebraElement)>,
    pub covers: bool,
}

impl DirectProductCheck {
    pub fn holds(&self) -> bool {
        self.non_commuting.is_none() && self.overlap.is_none() && self.covers
    }
}

fn product_all(alg: &GroupAlgebra, sets: &[&UnitSet]) -> Result<UnitSet, UnitError> {
    let mut acc = UnitSet::trivial(alg);
    for s in sets {
        acc = product_set(alg, &acc, s)?;
    }
    Ok(acc)
}

pub fn direct_product_check(
    alg: &GroupAlgebra,
    ambient: &UnitSet,
    factors: &[&UnitSet],
) -> Result<DirectProductCheck, UnitError> {
    check_group(alg, &[ambient])?;
    check_group(alg, factors)?;
    if factors.iter().any(|f| !f.is_subset_of(ambient)) {
        return Err(UnitError::NotSubset);
    }
    let mut non_commuting = None;
    'outer: for (i, fi) in factors.iter().enumerate() {
        for fj in &factors[i + 1..] {
            for &x in fi.spanning_bits() {
                if let Some(&y) = fj
                    .spanning_bits()
                    .iter()
                    .find(|&&y| alg.mul_bits(x, y) != alg.mul_bits(y, x))
                {
                    non_commuting = Some((AlgebraElement::from_raw(x, alg.id()), AlgebraElement::from_raw(y, alg.id())));
                    break 'outer;
                }
            }
        }
    }
    let mut overlap = None;
    for i in 0..factors.len() {
        let others: Vec<&UnitSet> = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| *f)
            .collect();
        let rest = product_all(alg, &others)?;
        if let Some(x) = factors[i].intersection(&rest).into_iter().find(|x| !x.is_one()) {
            overlap = Some((i, x));
            break;
        }
    }
    let covers = product_all(alg, factors)? == *ambient;
    Ok(DirectProductCheck { non_commuting, overlap, covers })
}

/// `ambient = F₁ × F₂ × ...` as an internal direct product.
pub fn internal_direct(alg: &GroupAlgebra, ambient: &UnitSet, factors: &[&UnitSet]) -> Result<bool, UnitError> {
    Ok(direct_product_check(alg, ambient, factors)?.holds())
}

/// Order of a unit of a 2-group algebra: the least `2^k` with `x^(2^k) = 1`.
pub(crate) fn unit_order_bits(alg: &GroupAlgebra, x: u64) -> u64 {
    let mut y = x;
    let mut order = 1;
    while y != 1 {
        y = alg.mul_bits(y, y);
        order *= 2;
        assert!(order <= 1 << 40, "not a unit of a 2-group algebra");
    }
    order
}

/// Order and exponent fingerprints of a unit group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structure {
    pub order: usize,
    pub abelian: bool,
    pub elementary_abelian_2: bool,
    /// `log₂|s|` when elementary abelian.
    pub rank: Option<u32>,
    pub exponent: u64,
}

pub fn structure_predicates(alg: &GroupAlgebra, s: &UnitSet) -> Structure {
    let span = s.spanning_bits();
    let abelian = span
        .iter()
        .enumerate()
        .all(|(i, &x)| span[i + 1..].iter().all(|&y| alg.mul_bits(x, y) == alg.mul_bits(y, x)));
    let exponent = s
        .members
        .par_iter()
        .map(|&x| unit_order_bits(alg, x))
        .max()
        .unwrap_or(1);
    let elementary_abelian_2 = abelian && exponent <= 2;
    Structure {
        order: s.len(),
        abelian,
        elementary_abelian_2,
        rank: elementary_abelian_2.then(|| s.len().trailing_zeros()),
        exponent,
    }
}

/// Whether every member of `s` commutes with every member of `ambient`.
pub fn is_central_in(alg: &GroupAlgebra, s: &UnitSet, ambient: &UnitSet) -> bool {
    let amb = ambient.spanning_bits();
    s.spanning_bits()
        .par_iter()
        .all(|&x| amb.iter().all(|&y| alg.mul_bits(x, y) == alg.mul_bits(y, x)))
}

/// `v[2] = {x ∈ v : x² = 1}` for an abelian unit group `v`.
pub fn elements_of_order_dividing_2(alg: &GroupAlgebra, v: &UnitSet) -> Result<UnitSet, UnitError> {
    check_group(alg, &[v])?;
    if !structure_predicates(alg, v).abelian {
        return Err(UnitError::NotAbelian);
    }
    let members: Vec<u64> = v.members.iter().copied().filter(|&x| alg.mul_bits(x, x) == 1).collect();
    let mut out = UnitSet::from_sorted(alg.id(), members);
    out.sigma = v.sigma.clone();
    Ok(out)
}

/// Greedy generators: members in canonical order not already in the span of
/// earlier picks.
pub fn canonical_generators(alg: &GroupAlgebra, s: &UnitSet) -> Result<Vec<AlgebraElement>, UnitError> {
    let mut gens: Vec<AlgebraElement> = Vec::new();
    let mut span = UnitSet::trivial(alg);
    for x in s.members() {
        if !span.contains(&x) {
            gens.push(x);
            span = unit_subgroup_closure(alg, &gens)?;
            if span.len() == s.len() {
                break;
            }
        }
    }
    Ok(gens)
}
