//! Finite 2-groups as explicit multiplication tables.
//!
//! Element index 0 is always the identity. Orders are capped at [`MAX_ORDER`]
//! so that subsets of a group (and elements of its group algebra over F₂) fit
//! in a single `u64` bitmask.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Largest supported group order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("order {0} is not a power of two in 1..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("square element {0} must be a non-identity element of order 2")]
    BadSquareElement(usize),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("group axiom violated: {0}")]
    AxiomViolation(AxiomViolation),
    #[error("invalid labels: {0}")]
    BadLabels(String),
}

/// The first group axiom an explicit table was found to break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    NotSquare { row: usize, len: usize, order: usize },
    EntryOutOfRange { g: usize, h: usize, value: usize },
    IdentityNotFirst { g: usize },
    NoInverse { g: usize },
    NotAssociative { g: usize, h: usize, k: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotSquare { row, len, order } => {
                write!(f, "row {row} has {len} entries, expected {order}")
            }
            AxiomViolation::EntryOutOfRange { g, h, value } => {
                write!(f, "entry ({g},{h}) = {value} is out of range")
            }
            AxiomViolation::IdentityNotFirst { g } => {
                write!(f, "index 0 is not a two-sided identity (fails at {g})")
            }
            AxiomViolation::NoInverse { g } => write!(f, "element {g} has no inverse"),
            AxiomViolation::NotAssociative { g, h, k } => {
                write!(f, "({g}*{h})*{k} != {g}*({h}*{k})")
            }
        }
    }
}

/// Identifies the multiplication table an algebra element or unit set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupId(u64);

/// A finite 2-group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    generators: Vec<usize>,
    family: String,
    name: String,
    id: GroupId,
}

fn check_order(n: usize) -> Result<(), GroupError> {
    if n == 0 || n > MAX_ORDER || !n.is_power_of_two() {
        return Err(GroupError::InvalidOrder(n));
    }
    Ok(())
}

fn check_labels(labels: &[String], order: usize) -> Result<HashMap<String, usize>, GroupError> {
    if labels.len() != order {
        return Err(GroupError::BadLabels(format!(
            "{} labels for {order} elements",
            labels.len()
        )));
    }
    let mut index = HashMap::with_capacity(order);
    for (i, label) in labels.iter().enumerate() {
        if label.is_empty() || label.trim() != label || label.contains('+') || label == "0" {
            return Err(GroupError::BadLabels(format!("label {label:?} is not usable")));
        }
        if index.insert(label.clone(), i).is_some() {
            return Err(GroupError::BadLabels(format!("duplicate label {label:?}")));
        }
    }
    Ok(index)
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

impl GroupTable {
    /// Validates a table row by row and builds the group.
    ///
    /// Labels default to `1, g1, g2, ...`. Generators are chosen greedily in
    /// index order.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = rows.len();
        check_order(n)?;
        let mut mul = Vec::with_capacity(n * n);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::AxiomViolation(AxiomViolation::NotSquare {
                    row: g,
                    len: row.len(),
                    order: n,
                }));
            }
            for (h, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::AxiomViolation(AxiomViolation::EntryOutOfRange { g, h, value: v }));
                }
                mul.push(v as u8);
            }
        }
        let labels = labels.unwrap_or_else(|| {
            (0..n)
                .map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") })
                .collect()
        });
        let mut table = Self::build(n, mul, labels, Vec::new(), "table", "table".to_string())?;
        table.generators = table.greedy_generators();
        Ok(table)
    }

    fn build(
        order: usize,
        mul: Vec<u8>,
        labels: Vec<String>,
        generators: Vec<usize>,
        family: &str,
        name: String,
    ) -> Result<Self, GroupError> {
        check_order(order)?;
        let label_index = check_labels(&labels, order)?;
        let n = order;
        let at = |g: usize, h: usize| mul[g * n + h] as usize;
        for g in 0..n {
            if at(0, g) != g || at(g, 0) != g {
                return Err(GroupError::AxiomViolation(AxiomViolation::IdentityNotFirst { g }));
            }
        }
        let mut inv = vec![0u8; n];
        for g in 0..n {
            match (0..n).find(|&h| at(g, h) == 0 && at(h, g) == 0) {
                Some(h) => inv[g] = h as u8,
                None => return Err(GroupError::AxiomViolation(AxiomViolation::NoInverse { g })),
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = at(g, h);
                for k in 0..n {
                    if at(gh, k) != at(g, at(h, k)) {
                        return Err(GroupError::AxiomViolation(AxiomViolation::NotAssociative { g, h, k }));
                    }
                }
            }
        }
        let mut hasher = DefaultHasher::new();
        mul.hash(&mut hasher);
        let id = GroupId(hasher.finish());
        Ok(Self {
            order,
            mul,
            inv,
            labels,
            label_index,
            generators,
            family: family.to_string(),
            name,
            id,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    /// Constructor family, e.g. `"quaternion"` or `"table"`.
    pub fn family(&self) -> &str {
        &self.family
    }

    /// Full constructor description, e.g. `"direct_product(dihedral(8),cyclic(2))"`.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, family: &str, name: impl Into<String>) -> Self {
        self.family = family.to_string();
        self.name = name.into();
        self
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Mask with one bit per element of the group.
    pub fn full_mask(&self) -> u64 {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect()
    }

    pub fn check_index(&self, g: usize) -> Result<(), GroupError> {
        if g >= self.order {
            return Err(GroupError::IndexOutOfRange { index: g, order: self.order });
        }
        Ok(())
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// `g⁻¹h⁻¹gh`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g + 1..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    fn closure_mask(&self, start: u64, gens: &[usize]) -> u64 {
        let mut mask = start | 1;
        loop {
            let mut next = mask;
            for m in bits(mask) {
                for &g in gens {
                    next |= 1 << self.mul(m, g);
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = 1u64;
        for g in 0..self.order {
            if mask & (1 << g) == 0 {
                gens.push(g);
                mask = self.closure_mask(mask, &gens);
            }
        }
        gens
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<SubgroupSet, GroupError> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(SubgroupSet { mask: self.closure_mask(1, gens) })
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet { mask: self.full_mask() }
    }

    pub fn trivial(&self) -> SubgroupSet {
        SubgroupSet { mask: 1 }
    }

    pub fn center(&self) -> SubgroupSet {
        let mut mask = 0u64;
        for g in 0..self.order {
            if (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)) {
                mask |= 1 << g;
            }
        }
        SubgroupSet { mask }
    }

    pub fn commutator_subgroup(&self) -> SubgroupSet {
        let mut comms = Vec::new();
        for g in 0..self.order {
            for h in 0..self.order {
                comms.push(self.commutator(g, h));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        SubgroupSet { mask: self.closure_mask(1, &comms) }
    }

    /// Elements `g` with `g² = 1`; a subgroup when the group is abelian.
    pub fn involutions_and_identity(&self) -> u64 {
        (0..self.order)
            .filter(|&g| self.mul(g, g) == 0)
            .fold(0, |m, g| m | (1 << g))
    }

    pub fn is_subgroup_mask(&self, mask: u64) -> bool {
        if mask & 1 == 0 || mask & !self.full_mask() != 0 {
            return false;
        }
        bits(mask).all(|x| bits(mask).all(|y| mask & (1 << self.mul(x, y)) != 0))
    }

    pub fn is_normal(&self, s: &SubgroupSet) -> Result<bool, GroupError> {
        if !self.is_subgroup_mask(s.mask) {
            return Err(GroupError::NotASubgroup);
        }
        Ok((0..self.order).all(|g| s.members().all(|x| s.contains(self.conjugate(g, x)))))
    }

    /// Every subgroup of index 2, ordered by member bitmask.
    pub fn index_two_subgroups(&self) -> Vec<SubgroupSet> {
        let squares: Vec<usize> = (0..self.order).map(|g| self.mul(g, g)).collect();
        let frattini = self.closure_mask(1, &squares);
        let mut basis = Vec::new();
        let mut span = frattini;
        for g in 0..self.order {
            if span & (1 << g) == 0 {
                basis.push(g);
                span = self.closure_mask(span, &[g]);
            }
        }
        let d = basis.len();
        // Coordinates of each element in G/Φ(G) ≅ F₂^d.
        let mut coords = vec![0usize; self.order];
        for c in 0..(1usize << d) {
            let rep = (0..d)
                .filter(|i| c & (1 << i) != 0)
                .fold(0, |acc, i| self.mul(acc, basis[i]));
            for f in bits(frattini) {
                coords[self.mul(rep, f)] = c;
            }
        }
        let mut out: Vec<SubgroupSet> = (1..(1usize << d))
            .map(|functional| {
                let mask = (0..self.order)
                    .filter(|&g| (coords[g] & functional).count_ones().is_multiple_of(2))
                    .fold(0u64, |m, g| m | (1 << g));
                SubgroupSet { mask }
            })
            .collect();
        out.sort_by_key(|s| s.mask);
        out
    }
}

/// Iterator over the set bit positions of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A subgroup of some [`GroupTable`], stored as a membership bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    mask: u64,
}

impl SubgroupSet {
    pub fn new(group: &GroupTable, members: &[usize]) -> Result<Self, GroupError> {
        let mut mask = 0u64;
        for &g in members {
            group.check_index(g)?;
            mask |= 1 << g;
        }
        Self::from_mask(group, mask)
    }

    pub fn from_mask(group: &GroupTable, mask: u64) -> Result<Self, GroupError> {
        if !group.is_subgroup_mask(mask) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(Self { mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, g: usize) -> bool {
        g < 64 && self.mask & (1 << g) != 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    /// Greedy generating set: members in index order that are not already in
    /// the span of the earlier picks.
    pub fn generators_in(&self, group: &GroupTable) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = 1u64;
        for g in self.members() {
            if span & (1 << g) == 0 {
                gens.push(g);
                span = group.closure_mask(span, &gens);
            }
        }
        gens
    }

    pub fn is_abelian_in(&self, group: &GroupTable) -> bool {
        self.members()
            .all(|x| self.members().all(|y| group.mul(x, y) == group.mul(y, x)))
    }
}

pub fn make_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    check_order(n)?;
    let mul = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u8))
        .collect();
    let labels = (0..n).map(|k| power_label("a", k)).collect();
    let gens = if n > 1 { vec![1] } else { Vec::new() };
    GroupTable::build(n, mul, labels, gens, "cyclic", format!("cyclic({n})"))
}

/// Dihedral group of order `n`: rotations `a^k` at indices `0..n/2`, then
/// reflections `a^k*b`.
pub fn make_dihedral(n: usize) -> Result<GroupTable, GroupError> {
    check_order(n)?;
    if n < 4 {
        return Err(GroupError::InvalidOrder(n));
    }
    let m = n / 2;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (k1, s1) = (x % m, x / m);
        for y in 0..n {
            let (k2, s2) = (y % m, y / m);
            let k = if s1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
            mul.push((k + m * ((s1 + s2) % 2)) as u8);
        }
    }
    let labels = coset_labels((0..m).map(|k| power_label("a", k)).collect(), "b");
    GroupTable::build(n, mul, labels, vec![1, m], "dihedral", format!("dihedral({n})"))
}

fn coset_labels(base: Vec<String>, outside: &str) -> Vec<String> {
    let twisted: Vec<String> = base
        .iter()
        .map(|l| if l == "1" { outside.to_string() } else { format!("{l}*{outside}") })
        .collect();
    base.into_iter().chain(twisted).collect()
}

/// Generalized quaternion group `Q_n`: `a` of order `n/2` at index 1,
/// `b` with `b² = a^(n/4)` at index `n/2`.
pub fn make_quaternion(n: usize) -> Result<GroupTable, GroupError> {
    check_order(n)?;
    if n < 8 {
        return Err(GroupError::InvalidOrder(n));
    }
    let base = make_cyclic(n / 2)?;
    Ok(make_inverting_extension(&base, n / 4)?.with_name("quaternion", format!("quaternion({n})")))
}

/// Indices are `i·|g2| + j` for the pair `(i, j)`.
pub fn make_direct_product(g1: &GroupTable, g2: &GroupTable) -> Result<GroupTable, GroupError> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    check_order(n)?;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push((g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2)) as u8);
        }
    }
    let labels = (0..n)
        .map(|x| {
            if x == 0 {
                "1".to_string()
            } else {
                format!("({},{})", g1.label(x / n2), g2.label(x % n2))
            }
        })
        .collect();
    let gens = g1
        .generators()
        .iter()
        .map(|&g| g * n2)
        .chain(g2.generators().iter().copied())
        .collect();
    GroupTable::build(
        n,
        mul,
        labels,
        gens,
        "direct_product",
        format!("direct_product({},{})", g1.name(), g2.name()),
    )
}

/// Extends an abelian group `A` by an element `b` with `b² = t` and
/// `b⁻¹ab = a⁻¹` for all `a ∈ A`. Elements of `A` keep their indices; `a·b`
/// sits at `a + |A|`.
pub fn make_inverting_extension(a_group: &GroupTable, t: usize) -> Result<GroupTable, GroupError> {
    a_group.check_index(t)?;
    if !a_group.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    if t == 0 || a_group.mul(t, t) != 0 {
        return Err(GroupError::BadSquareElement(t));
    }
    let m = a_group.order();
    let n = 2 * m;
    check_order(n)?;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, e1) = (x % m, x / m);
        for y in 0..n {
            let (a2, e2) = (y % m, y / m);
            let twisted = if e1 == 1 { a_group.inv(a2) } else { a2 };
            let mut a = a_group.mul(a1, twisted);
            if e1 == 1 && e2 == 1 {
                a = a_group.mul(a, t);
            }
            mul.push((a + m * ((e1 + e2) % 2)) as u8);
        }
    }
    let labels = coset_labels(a_group.labels().to_vec(), "b");
    let gens = a_group.generators().iter().copied().chain([m]).collect();
    GroupTable::build(
        n,
        mul,
        labels,
        gens,
        "inverting_extension",
        format!("inverting_extension({},{})", a_group.name(), a_group.label(t)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_profile(g: &GroupTable) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic_basics() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.rows(), vec![vec![0]]);
        let c4 = make_cyclic(4).unwrap();
        let orders: Vec<usize> = (0..4).map(|x| c4.element_order(x)).collect();
        assert_eq!(orders, vec![1, 4, 2, 4]);
        assert_eq!(make_cyclic(8).unwrap().element_order(1), 8);
        assert_eq!(make_cyclic(6).unwrap_err(), GroupError::InvalidOrder(6));
        assert_eq!(make_cyclic(128).unwrap_err(), GroupError::InvalidOrder(128));
    }

    #[test]
    fn dihedral_fingerprints() {
        let d4 = make_dihedral(4).unwrap();
        assert!(d4.is_abelian());
        assert_eq!(order_profile(&d4), vec![1, 2, 2, 2]);
        let d8 = make_dihedral(8).unwrap();
        assert_eq!(d8.center().len(), 2);
        let comm = d8.commutator_subgroup();
        assert_eq!(comm.len(), 2);
        // The rotation square a^2 generates it.
        assert!(comm.contains(d8.index_of("a^2").unwrap()));
        assert!(make_dihedral(2).is_err());
        assert!(make_dihedral(12).is_err());
    }

    #[test]
    fn quaternion_fingerprints() {
        let q8 = make_quaternion(8).unwrap();
        assert_eq!(order_profile(&q8), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert!((4..8).all(|x| q8.element_order(x) == 4));
        let q16 = make_quaternion(16).unwrap();
        let center: Vec<usize> = q16.center().members().collect();
        assert_eq!(center, vec![0, q16.pow(1, 4)]);
        assert!(make_quaternion(4).is_err());
    }

    #[test]
    fn direct_products() {
        let c1 = make_cyclic(1).unwrap();
        let d8 = make_dihedral(8).unwrap();
        let p = make_direct_product(&c1, &d8).unwrap();
        assert_eq!(p.rows(), d8.rows());
        let c2 = make_cyclic(2).unwrap();
        let d8c2 = make_direct_product(&d8, &c2).unwrap();
        assert_eq!(d8c2.order(), 16);
        assert_eq!(d8c2.center().len(), 4);
    }

    #[test]
    fn inverting_extensions() {
        let c4 = make_cyclic(4).unwrap();
        let g = make_inverting_extension(&c4, 2).unwrap();
        assert_eq!(order_profile(&g), order_profile(&make_quaternion(8).unwrap()));
        let c8 = make_cyclic(8).unwrap();
        let g = make_inverting_extension(&c8, 4).unwrap();
        assert_eq!(order_profile(&g), order_profile(&make_quaternion(16).unwrap()));
        let b = 8;
        assert_eq!(g.element_order(b), 4);
        for a in 0..8 {
            assert_eq!(g.mul(g.inv(b), g.mul(a, b)), g.inv(a));
        }
        assert_eq!(make_inverting_extension(&c4, 0).unwrap_err(), GroupError::BadSquareElement(0));
        assert_eq!(make_inverting_extension(&c4, 1).unwrap_err(), GroupError::BadSquareElement(1));
        let d8 = make_dihedral(8).unwrap();
        assert_eq!(make_inverting_extension(&d8, 2).unwrap_err(), GroupError::NotAbelian);
    }

    #[test]
    fn closures() {
        let q8 = make_quaternion(8).unwrap();
        assert_eq!(q8.subgroup_closure(&[]).unwrap().len(), 1);
        assert_eq!(q8.subgroup_closure(&[1]).unwrap().len(), 4);
        assert_eq!(q8.subgroup_closure(q8.generators()).unwrap().len(), 8);
        assert!(q8.subgroup_closure(&[9]).is_err());
    }

    #[test]
    fn normality() {
        let d8 = make_dihedral(8).unwrap();
        for s in d8.index_two_subgroups() {
            assert_eq!(s.len(), 4);
            assert!(d8.is_normal(&s).unwrap());
        }
        // A reflection subgroup is not normal.
        let refl = d8.subgroup_closure(&[4]).unwrap();
        assert!(!d8.is_normal(&refl).unwrap());
        assert_eq!(SubgroupSet::new(&d8, &[0, 1]).unwrap_err(), GroupError::NotASubgroup);
        let c = make_cyclic(8).unwrap();
        assert_eq!(c.center().len(), 8);
    }

    #[test]
    fn index_two_subgroup_counts() {
        // G/Φ(G) has rank 2 for Q8 and D8, rank 3 for D8×C2.
        assert_eq!(make_quaternion(8).unwrap().index_two_subgroups().len(), 3);
        let d8 = make_dihedral(8).unwrap();
        let c2 = make_cyclic(2).unwrap();
        assert_eq!(make_direct_product(&d8, &c2).unwrap().index_two_subgroups().len(), 7);
        assert_eq!(make_cyclic(16).unwrap().index_two_subgroups().len(), 1);
    }

    #[test]
    fn explicit_tables() {
        let c2 = GroupTable::from_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.generators(), &[1]);
        let bad = GroupTable::from_table(&[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(bad, GroupError::AxiomViolation(AxiomViolation::NoInverse { g: 1 }));
        let ragged = GroupTable::from_table(&[vec![0, 1], vec![1]], None).unwrap_err();
        assert!(matches!(ragged, GroupError::AxiomViolation(AxiomViolation::NotSquare { .. })));
        let q8 = make_quaternion(8).unwrap();
        let copy = GroupTable::from_table(&q8.rows(), Some(q8.labels().to_vec())).unwrap();
        assert_eq!(copy.id(), q8.id());
        let dup = GroupTable::from_table(&[vec![0, 1], vec![1, 0]], Some(vec!["1".into(), "1".into()]));
        assert!(matches!(dup, Err(GroupError::BadLabels(_))));
    }

    #[test]
    fn non_associative_table_rejected() {
        // Identity at 0 and every element self-inverse, but (2*3)*1 != 2*(3*1).
        let rows = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 0], vec![3, 2, 0, 0]];
        let err = GroupTable::from_table(&rows, None).unwrap_err();
        assert!(matches!(err, GroupError::AxiomViolation(AxiomViolation::NotAssociative { .. })));
    }
}
