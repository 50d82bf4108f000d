//! Order-two anti-automorphisms of a group and the hypothesis bundles they are
//! defined under.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::ByteTables;
use crate::group::{GroupId, GroupTable, SubgroupSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("A is not abelian")]
    NotAbelianA,
    #[error("A has index {0}, expected 2")]
    WrongIndex(usize),
    #[error("b lies inside A")]
    BInsideA,
    #[error("b has order {0}, expected 4")]
    BadOrderB(usize),
    #[error("b does not invert {0}")]
    NotInverting(String),
    #[error("no abelian index-2 subgroup with an inverting element of order 4 outside it")]
    NoTheorem1Data,
    #[error("G/Z(G) is not Klein four (|Z(G)| = {center_order}, |G| = {order})")]
    CenterQuotientNotKlein { center_order: usize, order: usize },
    #[error("commutator subgroup has order {0}, expected 2")]
    CommutatorNotOrder2(usize),
    #[error("coset representatives {a}, {b} do not give C, Ca, Cb, Cab")]
    BadRepresentatives { a: String, b: String },
    #[error("permutation is not an order-two anti-automorphism")]
    NotAnAntiAutomorphism,
}

/// Which involution of F₂G to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvolutionKind {
    /// `g ↦ g⁻¹`.
    Classical,
    /// `g ↦ g` on the center, `g ↦ g·e` off it.
    Odot,
}

impl InvolutionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InvolutionKind::Classical => "classical",
            InvolutionKind::Odot => "odot",
        }
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvolutionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(InvolutionKind::Classical),
            "odot" => Ok(InvolutionKind::Odot),
            other => Err(format!("unknown involution {other:?} (expected classical or odot)")),
        }
    }
}

/// A validated order-≤2 anti-automorphism σ of G, stored as a permutation of
/// element indices.
#[derive(Debug, Clone)]
pub struct AntiAutomorphism {
    group: GroupId,
    name: String,
    perm: Vec<usize>,
    tables: ByteTables,
}

/// True iff `perm` squares to the identity and `σ(gh) = σ(h)σ(g)` for all pairs.
pub fn validate_involution(group: &GroupTable, perm: &[usize]) -> bool {
    let n = group.order();
    perm.len() == n
        && perm.iter().all(|&p| p < n)
        && (0..n).all(|g| perm[perm[g]] == g)
        && (0..n).all(|g| (0..n).all(|h| perm[group.mul(g, h)] == group.mul(perm[h], perm[g])))
}

impl AntiAutomorphism {
    pub fn new(group: &GroupTable, perm: Vec<usize>, name: impl Into<String>) -> Result<Self, HypothesisError> {
        if !validate_involution(group, &perm) {
            return Err(HypothesisError::NotAnAntiAutomorphism);
        }
        let tables = ByteTables::new(group.order(), |i| 1u64 << perm[i]);
        Ok(Self { group: group.id(), name: name.into(), perm, tables })
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, g: usize) -> usize {
        self.perm[g]
    }

    #[inline]
    pub(crate) fn apply_bits(&self, x: u64) -> u64 {
        self.tables.apply(x)
    }
}

pub fn classical_involution(group: &Arc<GroupTable>) -> AntiAutomorphism {
    let perm = (0..group.order()).map(|g| group.inv(g)).collect();
    AntiAutomorphism::new(group, perm, InvolutionKind::Classical.as_str())
        .expect("inversion is always an order-two anti-automorphism")
}

/// The ⊙ involution, only available through a validated `Theorem2Instance`.
pub fn odot_involution(inst: &Theorem2Instance) -> Result<AntiAutomorphism, HypothesisError> {
    let g = &inst.group;
    let perm = (0..g.order())
        .map(|x| if inst.c_sub.contains(x) { x } else { g.mul(x, inst.e) })
        .collect();
    AntiAutomorphism::new(g, perm, InvolutionKind::Odot.as_str())
}

/// G with an abelian index-2 subgroup A and `b ∉ A` of order 4 inverting A.
#[derive(Debug, Clone)]
pub struct Theorem1Instance {
    pub group: Arc<GroupTable>,
    pub a_sub: SubgroupSet,
    pub b: usize,
    /// `b²`.
    pub square: usize,
    /// Smallest-index representatives of the cosets of ⟨b²⟩ in A.
    pub transversal: Vec<usize>,
}

impl Theorem1Instance {
    /// Index `j` with `g ∈ transversal[j]·⟨b²⟩`, for `g ∈ A`.
    pub fn transversal_index(&self, g: usize) -> Option<usize> {
        let t = self.square;
        self.transversal
            .iter()
            .position(|&r| r == g || self.group.mul(r, t) == g)
    }
}

pub fn make_theorem1_instance(
    group: &Arc<GroupTable>,
    a_gens: &[usize],
    b: usize,
) -> Result<Theorem1Instance, HypothesisError> {
    let g = group.as_ref();
    for &x in a_gens.iter().chain([&b]) {
        if x >= g.order() {
            return Err(HypothesisError::BadIndex(x));
        }
    }
    let a_sub = g.subgroup_closure(a_gens).expect("indices checked");
    if !a_sub.is_abelian_in(g) {
        return Err(HypothesisError::NotAbelianA);
    }
    if a_sub.len() * 2 != g.order() {
        return Err(HypothesisError::WrongIndex(g.order() / a_sub.len()));
    }
    if a_sub.contains(b) {
        return Err(HypothesisError::BInsideA);
    }
    let order_b = g.element_order(b);
    if order_b != 4 {
        return Err(HypothesisError::BadOrderB(order_b));
    }
    let b_inv = g.inv(b);
    if let Some(a) = a_sub.members().find(|&a| g.mul(b_inv, g.mul(a, b)) != g.inv(a)) {
        return Err(HypothesisError::NotInverting(g.label(a).to_string()));
    }
    debug_assert!(g.is_normal(&a_sub).unwrap_or(false));
    let square = g.mul(b, b);
    let mut covered = 0u64;
    let mut transversal = Vec::new();
    for a in a_sub.members() {
        if covered & (1 << a) == 0 {
            transversal.push(a);
            covered |= (1 << a) | (1 << g.mul(a, square));
        }
    }
    Ok(Theorem1Instance { group: Arc::clone(group), a_sub, b, square, transversal })
}

/// Scans index-2 subgroups (ordered by member mask) for an abelian `A` and inverting `b`,
/// taking the smallest-index valid `b` for the first subgroup that has one.
pub fn find_theorem1_instance(group: &Arc<GroupTable>) -> Result<Theorem1Instance, HypothesisError> {
    let g = group.as_ref();
    for a_sub in g.index_two_subgroups() {
        if !a_sub.is_abelian_in(g) {
            continue;
        }
        let gens: Vec<usize> = a_sub.members().collect();
        for b in (0..g.order()).filter(|&b| !a_sub.contains(b)) {
            if let Ok(inst) = make_theorem1_instance(group, &gens, b) {
                return Ok(inst);
            }
        }
    }
    Err(HypothesisError::NoTheorem1Data)
}

/// G with center C, G/C Klein four generated by `aC`, `bC`, and `G' = {1, e}`.
#[derive(Debug, Clone)]
pub struct Theorem2Instance {
    pub group: Arc<GroupTable>,
    pub c_sub: SubgroupSet,
    pub a: usize,
    pub b: usize,
    pub e: usize,
}

pub fn make_theorem2_instance(group: &Arc<GroupTable>) -> Result<Theorem2Instance, HypothesisError> {
    let g = group.as_ref();
    let c_sub = g.center();
    let klein = c_sub.len() * 4 == g.order() && (0..g.order()).all(|x| c_sub.contains(g.mul(x, x)));
    if !klein {
        return Err(HypothesisError::CenterQuotientNotKlein { center_order: c_sub.len(), order: g.order() });
    }
    let a = (0..g.order()).find(|&x| !c_sub.contains(x)).expect("C is proper");
    let b = (0..g.order())
        .find(|&x| !c_sub.contains(x) && !c_sub.contains(g.mul(x, g.inv(a))))
        .expect("G/C has three nontrivial cosets");
    theorem2_with_representatives(group, a, b)
}

/// Same hypotheses as [`make_theorem2_instance`] but with caller-chosen coset
/// representatives.
pub fn theorem2_with_representatives(
    group: &Arc<GroupTable>,
    a: usize,
    b: usize,
) -> Result<Theorem2Instance, HypothesisError> {
    let g = group.as_ref();
    for x in [a, b] {
        if x >= g.order() {
            return Err(HypothesisError::BadIndex(x));
        }
    }
    let c_sub = g.center();
    let klein = c_sub.len() * 4 == g.order() && (0..g.order()).all(|x| c_sub.contains(g.mul(x, x)));
    if !klein {
        return Err(HypothesisError::CenterQuotientNotKlein { center_order: c_sub.len(), order: g.order() });
    }
    let comm = g.commutator_subgroup();
    if comm.len() != 2 {
        return Err(HypothesisError::CommutatorNotOrder2(comm.len()));
    }
    let e = comm.members().nth(1).expect("order 2");
    let ab = g.mul(a, b);
    if c_sub.contains(a) || c_sub.contains(b) || c_sub.contains(ab) || g.commutator(a, b) != e {
        return Err(HypothesisError::BadRepresentatives {
            a: g.label(a).to_string(),
            b: g.label(b).to_string(),
        });
    }
    Ok(Theorem2Instance { group: Arc::clone(group), c_sub, a, b, e })
}

impl Theorem2Instance {
    /// The instance with `a` replaced by the smallest representative of `abC`.
    pub fn alternative(&self) -> Result<Theorem2Instance, HypothesisError> {
        let g = self.group.as_ref();
        let ab = g.mul(self.a, self.b);
        let rep = self
            .c_sub
            .members()
            .map(|c| g.mul(c, ab))
            .min()
            .expect("C is nonempty");
        theorem2_with_representatives(&self.group, rep, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_direct_product, make_inverting_extension, make_quaternion};

    fn arc(g: GroupTable) -> Arc<GroupTable> {
        Arc::new(g)
    }

    #[test]
    fn classical_examples() {
        let d8 = arc(make_dihedral(8).unwrap());
        let star = classical_involution(&d8);
        assert!((0..8).all(|g| star.apply(star.apply(g)) == g));
        let c8 = arc(make_cyclic(8).unwrap());
        let star = classical_involution(&c8);
        // Also an automorphism on an abelian group.
        assert!((0..8).all(|g| (0..8).all(|h| star.apply(c8.mul(g, h)) == c8.mul(star.apply(g), star.apply(h)))));
        let q8 = arc(make_quaternion(8).unwrap());
        let star = classical_involution(&q8);
        let fixed: Vec<usize> = (0..8).filter(|&g| star.apply(g) == g).collect();
        assert_eq!(fixed, vec![0, 2]);
        assert!((0..8).filter(|&g| q8.element_order(g) == 4).all(|g| star.apply(g) == q8.inv(g) && q8.inv(g) != g));
    }

    #[test]
    fn validate_examples() {
        let c4 = make_cyclic(4).unwrap();
        assert!(validate_involution(&c4, &[0, 1, 2, 3]));
        let d8 = make_dihedral(8).unwrap();
        assert!(!validate_involution(&d8, &(0..8).collect::<Vec<_>>()));
        let bad = AntiAutomorphism::new(&d8, (0..8).collect(), "identity");
        assert_eq!(bad.unwrap_err(), HypothesisError::NotAnAntiAutomorphism);
        assert!(!validate_involution(&d8, &[0, 1]));
    }

    #[test]
    fn odot_examples() {
        for g in [make_dihedral(8).unwrap(), make_quaternion(8).unwrap()] {
            let g = arc(g);
            let inst = make_theorem2_instance(&g).unwrap();
            let odot = odot_involution(&inst).unwrap();
            assert!(validate_involution(&g, odot.perm()));
            for c in inst.c_sub.members() {
                assert_eq!(odot.apply(c), c);
            }
        }
        let d8 = arc(make_dihedral(8).unwrap());
        let inst = make_theorem2_instance(&d8).unwrap();
        let odot = odot_involution(&inst).unwrap();
        assert_eq!(odot.apply(1), d8.index_of("a^3").unwrap());
    }

    #[test]
    fn theorem1_instances() {
        let q8 = arc(make_quaternion(8).unwrap());
        let inst = make_theorem1_instance(&q8, &[1], 4).unwrap();
        assert_eq!(inst.transversal, vec![0, 1]);
        assert_eq!(inst.square, 2);

        let d8 = arc(make_dihedral(8).unwrap());
        assert_eq!(make_theorem1_instance(&d8, &[1], 4).unwrap_err(), HypothesisError::BadOrderB(2));
        assert_eq!(make_theorem1_instance(&q8, &[1], 2).unwrap_err(), HypothesisError::BInsideA);
        assert_eq!(make_theorem1_instance(&q8, &[2], 4).unwrap_err(), HypothesisError::WrongIndex(4));
        assert_eq!(make_theorem1_instance(&q8, &[1, 4], 5).unwrap_err(), HypothesisError::NotAbelianA);

        let c4c2 = make_direct_product(&make_cyclic(4).unwrap(), &make_cyclic(2).unwrap()).unwrap();
        let t = c4c2.index_of("(a^2,1)").unwrap();
        let g = arc(make_inverting_extension(&c4c2, t).unwrap());
        let inst = make_theorem1_instance(&g, &[2, 1], 8).unwrap();
        assert_eq!(inst.transversal.len(), 4);
        assert_eq!(inst.transversal_index(g.mul(inst.transversal[3], inst.square)), Some(3));

        // Inverting only the elements of order dividing 2 is not enough.
        let c4xc4 = arc(make_direct_product(&make_cyclic(4).unwrap(), &make_cyclic(4).unwrap()).unwrap());
        assert_eq!(find_theorem1_instance(&c4xc4).unwrap_err(), HypothesisError::NoTheorem1Data);
    }

    #[test]
    fn theorem1_autodetect() {
        let q16 = arc(make_quaternion(16).unwrap());
        let inst = find_theorem1_instance(&q16).unwrap();
        assert_eq!(inst.a_sub.mask(), 0xff);
        assert_eq!(inst.b, 8);
        assert_eq!(inst.transversal, vec![0, 1, 2, 3]);
    }

    #[test]
    fn theorem2_instances() {
        let d8 = arc(make_dihedral(8).unwrap());
        let inst = make_theorem2_instance(&d8).unwrap();
        assert_eq!(inst.c_sub.len(), 2);
        assert_eq!(inst.e, d8.index_of("a^2").unwrap());
        assert_eq!((inst.a, inst.b), (1, 4));
        let alt = inst.alternative().unwrap();
        assert_eq!((alt.a, alt.b), (d8.index_of("a*b").unwrap(), 4));

        let q8 = arc(make_quaternion(8).unwrap());
        assert!(make_theorem2_instance(&q8).is_ok());

        let c8 = arc(make_cyclic(8).unwrap());
        assert!(matches!(
            make_theorem2_instance(&c8).unwrap_err(),
            HypothesisError::CenterQuotientNotKlein { center_order: 8, order: 8 }
        ));
        // D16: |Z| = 2, G/Z is D8 rather than Klein four.
        let d16 = arc(make_dihedral(16).unwrap());
        assert!(matches!(make_theorem2_instance(&d16), Err(HypothesisError::CenterQuotientNotKlein { .. })));
        assert!(matches!(
            theorem2_with_representatives(&d8, 1, 3),
            Err(HypothesisError::BadRepresentatives { .. })
        ));
    }

    #[test]
    fn involution_kind_strings() {
        assert_eq!("classical".parse::<InvolutionKind>(), Ok(InvolutionKind::Classical));
        assert_eq!("odot".parse::<InvolutionKind>(), Ok(InvolutionKind::Odot));
        assert!("star".parse::<InvolutionKind>().is_err());
    }
}
