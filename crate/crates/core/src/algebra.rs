//! Arithmetic in the group algebra F₂G.
//!
//! An element `Σ α_g g` is a bitmask with bit `g` holding `α_g`. Products are
//! table-driven convolutions: for each `g` in the support of the left factor,
//! the right factor is left-translated by `g` through precomputed per-byte
//! lookup tables and the translates are XORed together.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{bits, GroupId, GroupTable, SubgroupSet};
use crate::involution::AntiAutomorphism;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element {0} has augmentation 0 and is not a unit")]
    NotAUnit(String),
    #[error("no solution: rank {rank}, augmented rank {augmented_rank}")]
    NoSolution { rank: usize, augmented_rank: usize },
    #[error("coefficient mask {0:#x} does not fit the group")]
    OutOfRange(u64),
    #[error("coset split needs an index-2 subgroup and an element outside it")]
    BadIndex,
    #[error("C, Ca, Cb, Cab do not partition the group")]
    BadCosets,
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// An element of F₂G. Ordered by coefficient mask, which is the canonical
/// member order used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement {
    bits: u64,
    group: GroupId,
}

impl AlgebraElement {
    pub(crate) fn from_raw(bits: u64, group: GroupId) -> Self {
        Self { bits, group }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Coefficient of the group element with index `g`.
    pub fn coeff(&self, g: usize) -> bool {
        self.bits >> g & 1 == 1
    }

    pub fn support(&self) -> impl Iterator<Item = usize> {
        bits(self.bits)
    }
}

/// The image χ(x) ∈ F₂ of the augmentation map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Augmentation(bool);

impl Augmentation {
    pub fn value(self) -> u8 {
        self.0 as u8
    }

    pub fn is_one(self) -> bool {
        self.0
    }
}

impl fmt::Display for Augmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Per-byte lookup tables for a linear map on bitmasks that sends basis
/// vectors to basis vectors (or to arbitrary masks).
#[derive(Clone)]
pub(crate) struct ByteTables {
    chunks: usize,
    tables: Vec<[u64; 256]>,
}

impl ByteTables {
    /// `image(i)` is the mask that bit `i` maps to.
    pub(crate) fn new(width: usize, image: impl Fn(usize) -> u64) -> Self {
        let chunks = width.div_ceil(8).max(1);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let bit = c * 8 + low;
                let single = if bit < width { image(bit) } else { 0 };
                table[byte] = table[byte & (byte - 1)] ^ single;
            }
        }
        Self { chunks, tables }
    }

    #[inline]
    pub(crate) fn apply(&self, x: u64) -> u64 {
        let mut acc = 0;
        for c in 0..self.chunks {
            acc ^= self.tables[c][(x >> (8 * c) & 0xff) as usize];
        }
        acc
    }
}

impl fmt::Debug for ByteTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ByteTables({} chunks)", self.chunks)
    }
}

/// F₂G for a fixed group, with the lookup tables that make products cheap.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    group: Arc<GroupTable>,
    left: Vec<ByteTables>,
}

impl GroupAlgebra {
    pub fn new(group: Arc<GroupTable>) -> Self {
        let n = group.order();
        let left = (0..n)
            .map(|g| ByteTables::new(n, |h| 1u64 << group.mul(g, h)))
            .collect();
        Self { group, left }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn id(&self) -> GroupId {
        self.group.id()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn wrap(&self, bits: u64) -> AlgebraElement {
        AlgebraElement { bits, group: self.group.id() }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(0)
    }

    pub fn one(&self) -> AlgebraElement {
        self.wrap(1)
    }

    /// The basis element `g`.
    pub fn basis(&self, g: usize) -> AlgebraElement {
        assert!(g < self.order(), "element index {g} out of range");
        self.wrap(1 << g)
    }

    pub fn from_bits(&self, bits: u64) -> Result<AlgebraElement, AlgebraError> {
        if bits & !self.group.full_mask() != 0 {
            return Err(AlgebraError::OutOfRange(bits));
        }
        Ok(self.wrap(bits))
    }

    /// Sum of the listed basis elements (repeats cancel).
    pub fn from_indices(&self, indices: &[usize]) -> AlgebraElement {
        self.wrap(indices.iter().fold(0u64, |m, &g| m ^ self.basis(g).bits))
    }

    /// Indicator of a subgroup, `Σ_{s∈S} s`.
    pub fn subgroup_sum(&self, s: &SubgroupSet) -> AlgebraElement {
        self.wrap(s.mask())
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.group != self.group.id() {
            return Err(AlgebraError::GroupMismatch);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn mul_bits(&self, x: u64, y: u64) -> u64 {
        let mut acc = 0;
        for g in bits(x) {
            acc ^= self.left[g].apply(y);
        }
        acc
    }

    pub(crate) fn pow_bits(&self, x: u64, mut k: u64) -> u64 {
        let mut base = x;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a normalized element by repeated squaring, or `None` when
    /// squaring does not reach 1.
    pub(crate) fn inverse_bits(&self, x: u64) -> Option<u64> {
        if x.count_ones().is_multiple_of(2) {
            return None;
        }
        // x^(2^k) = 1 + (x-1)^(2^k) and the augmentation ideal is nilpotent of
        // index at most |G|, so k ≤ log2|G| + 1 squarings suffice.
        let mut square = x;
        let mut inverse = 1u64;
        for _ in 0..=64 {
            if square == 1 {
                return Some(inverse);
            }
            inverse = self.mul_bits(inverse, square);
            square = self.mul_bits(square, square);
        }
        None
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(x.bits ^ y.bits))
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_bits(x.bits, y.bits)))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, factors: &[AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
        factors.iter().try_fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, x: &AlgebraElement, k: u64) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        Ok(self.wrap(self.pow_bits(x.bits, k)))
    }

    pub fn augmentation(&self, x: &AlgebraElement) -> Augmentation {
        Augmentation(x.bits.count_ones() % 2 == 1)
    }

    /// Moves the coefficient of `g` to `σ(g)`.
    pub fn involute(&self, sigma: &AntiAutomorphism, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        if sigma.group_id() != self.id() {
            return Err(AlgebraError::GroupMismatch);
        }
        Ok(self.wrap(sigma.apply_bits(x.bits)))
    }

    pub fn inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.inverse_bits(x.bits)
            .map(|b| self.wrap(b))
            .ok_or_else(|| AlgebraError::NotAUnit(self.render(x)))
    }

    /// `g·x·g⁻¹` style conjugation `u·x·u⁻¹` by a unit `u`.
    pub fn conjugate(&self, u: &AlgebraElement, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let inv = self.inverse(u)?;
        self.product(&[*u, *x, inv])
    }

    pub fn commutes(&self, x: &AlgebraElement, y: &AlgebraElement) -> bool {
        self.mul_bits(x.bits, y.bits) == self.mul_bits(y.bits, x.bits)
    }

    /// Central in F₂G: commutes with every group generator.
    pub fn is_central(&self, x: &AlgebraElement) -> bool {
        self.group
            .generators()
            .iter()
            .all(|&g| self.commutes(x, &self.basis(g)))
    }

    /// Solves `w·z = target` as a linear system over F₂, taking the
    /// lowest-index pivot in each column and setting free unknowns to zero.
    pub fn annihilator_solve(&self, target: &AlgebraElement, w: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(target)?;
        self.check(w)?;
        let n = self.order();
        let columns: Vec<u64> = (0..n).map(|j| self.mul_bits(w.bits, 1 << j)).collect();
        linalg::solve_columns(&columns, n, target.bits)
            .map(|z| self.wrap(z))
            .map_err(|e| AlgebraError::NoSolution { rank: e.rank, augmented_rank: e.augmented_rank })
    }

    /// Writes `x = x1 + x2·b` with `x1`, `x2` supported on the index-2
    /// subgroup `a_sub`.
    pub fn coset_split(
        &self,
        x: &AlgebraElement,
        a_sub: &SubgroupSet,
        b: usize,
    ) -> Result<(AlgebraElement, AlgebraElement), AlgebraError> {
        self.check(x)?;
        let g = &self.group;
        if b >= g.order() || a_sub.len() * 2 != g.order() || a_sub.contains(b) || !g.is_subgroup_mask(a_sub.mask()) {
            return Err(AlgebraError::BadIndex);
        }
        let b_inv = g.inv(b);
        let (mut x1, mut x2) = (0u64, 0u64);
        for h in x.support() {
            if a_sub.contains(h) {
                x1 |= 1 << h;
            } else {
                x2 |= 1 << g.mul(h, b_inv);
            }
        }
        Ok((self.wrap(x1), self.wrap(x2)))
    }

    /// Writes `x = x0 + x1·a + x2·b + x3·ab` with each part supported on `c_sub`.
    pub fn quadrant_split(
        &self,
        x: &AlgebraElement,
        c_sub: &SubgroupSet,
        a: usize,
        b: usize,
    ) -> Result<[AlgebraElement; 4], AlgebraError> {
        self.check(x)?;
        let g = &self.group;
        if a >= g.order() || b >= g.order() || c_sub.len() * 4 != g.order() {
            return Err(AlgebraError::BadCosets);
        }
        let reps = [0, a, b, g.mul(a, b)];
        let mut owner = vec![usize::MAX; g.order()];
        for (q, &r) in reps.iter().enumerate() {
            for c in c_sub.members() {
                let h = g.mul(c, r);
                if owner[h] != usize::MAX {
                    return Err(AlgebraError::BadCosets);
                }
                owner[h] = q;
            }
        }
        let mut parts = [0u64; 4];
        for h in x.support() {
            let q = owner[h];
            parts[q] |= 1 << g.mul(h, g.inv(reps[q]));
        }
        Ok(parts.map(|p| self.wrap(p)))
    }

    /// Canonical text form, e.g. `1 + a + a*b`; zero renders as `0`.
    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.bits == 0 {
            return "0".to_string();
        }
        x.support()
            .map(|g| self.group.label(g))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`render`](Self::render). Repeated terms cancel.
    pub fn parse(&self, text: &str) -> Result<AlgebraElement, AlgebraError> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut bits = 0u64;
        for term in text.split('+') {
            let term = term.trim();
            let g = self
                .group
                .index_of(term)
                .ok_or_else(|| AlgebraError::Parse(format!("unknown term {term:?}")))?;
            bits ^= 1 << g;
        }
        Ok(self.wrap(bits))
    }
}
