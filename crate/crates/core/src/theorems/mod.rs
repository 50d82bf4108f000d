//! Constructive decompositions of unitary subgroups and their verification.
//!
//! [`theorem1`] covers the classical involution on groups with an abelian
//! index-2 subgroup inverted by an element of order 4; [`theorem2`] covers the
//! ⊙ involution on groups with `G/Z(G)` Klein four and `|G'| = 2`.

use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, GroupAlgebra};
use crate::complement::ComplementError;
use crate::involution::HypothesisError;
use crate::report::BasisElement;
use crate::unitgroup::UnitError;

pub mod theorem1;
pub mod theorem2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("complement search failed: {0}")]
    Complement(#[from] ComplementError),
    #[error("{0} is not unitary")]
    NotUnitary(String),
}

pub(crate) fn elem(alg: &GroupAlgebra, bits: u64) -> AlgebraElement {
    AlgebraElement::from_raw(bits, alg.id())
}

pub(crate) fn render_bits(alg: &GroupAlgebra, bits: u64) -> String {
    alg.render(&elem(alg, bits))
}

pub(crate) fn render_basis(alg: &GroupAlgebra, basis: &[(u64, usize)]) -> Vec<BasisElement> {
    basis
        .iter()
        .map(|&(x, order)| BasisElement { element: render_bits(alg, x), order })
        .collect()
}

/// Linear basis (over F₂) of a set of bit-vectors, smallest-first.
pub(crate) fn xor_basis(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut reduced: Vec<u64> = Vec::new();
    let mut picked = Vec::new();
    let mut sorted: Vec<u64> = vectors.into_iter().collect();
    sorted.sort_unstable();
    for v in sorted {
        let mut r = v;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|x, y| y.cmp(x));
            picked.push(v);
        }
    }
    picked
}

pub use theorem1::{
    build_l_thm1, build_w_thm1, build_w_thm1_direct, check_conjugation_identities, check_eq2_canonical_form,
    eq2_conditions, verify_theorem1, ConjugationOutcome, DirectW, Eq2Outcome, LFactor,
};
pub use theorem2::{
    build_t_thm2, build_w_thm2, check_eq6_eq7, verify_theorem2, Eq67Outcome, Eq7Outcome, TFactor,
};
