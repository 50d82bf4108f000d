//! Direct-factor complements in finite abelian groups.
//!
//! Works on any finite abelian group presented as a sorted member list plus a
//! multiplication. Used for `V_*(F₂A) = A × L` and `V(F₂C)[2] = C[2] × T`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplementError {
    #[error("ambient group is not abelian")]
    NotAbelian,
    #[error("factor is not contained in the ambient group")]
    NotSubset,
    #[error("factor is not a direct factor: no lift of order {order} for a coset of maximal order")]
    NoComplement { order: usize },
}

/// Abelian group operations on a carrier type.
pub trait AbelianOps {
    type Elem: Copy + Ord;

    fn op(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
}

/// A complement `L` of `factor` in `ambient`, with the basis it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement<E> {
    /// Basis elements together with their orders; `L` is the internal direct
    /// product of the cyclic groups they generate.
    pub basis: Vec<(E, usize)>,
    pub members: Vec<E>,
}

fn contains<E: Ord>(set: &[E], x: &E) -> bool {
    set.binary_search(x).is_ok()
}

/// Smallest `k ≥ 1` with `x^k ∈ s`.
fn relative_order<A: AbelianOps>(ops: &A, s: &[A::Elem], x: A::Elem) -> usize {
    let mut y = x;
    let mut k = 1;
    while !contains(s, &y) {
        y = ops.op(y, x);
        k += 1;
    }
    k
}

fn pow<A: AbelianOps>(ops: &A, x: A::Elem, k: usize) -> A::Elem {
    (0..k).fold(ops.identity(), |acc, _| ops.op(acc, x))
}

fn check_abelian<A: AbelianOps>(ops: &A, ambient: &[A::Elem]) -> Result<(), ComplementError> {
    for (i, &x) in ambient.iter().enumerate() {
        for &y in &ambient[i + 1..] {
            if ops.op(x, y) != ops.op(y, x) {
                return Err(ComplementError::NotAbelian);
            }
        }
    }
    Ok(())
}

/// Greedy basis extension: while `S ≠ ambient`, take the largest order `k` of
/// an element modulo `S`, pick the smallest `x` with that relative order and
/// `x^k = 1`, and replace `S` by `S × ⟨x⟩`.
///
/// Starting from a direct factor every step has such an `x`; if some step has
/// none, `S` (and hence the original factor) is not a direct factor.
fn extend<A: AbelianOps>(
    ops: &A,
    ambient: &[A::Elem],
    start: Vec<A::Elem>,
) -> Result<(Vec<(A::Elem, usize)>, Vec<A::Elem>), ComplementError> {
    let one = ops.identity();
    let mut span = start;
    let mut complement = vec![one];
    let mut basis = Vec::new();
    while span.len() < ambient.len() {
        let orders: Vec<usize> = ambient.iter().map(|&x| relative_order(ops, &span, x)).collect();
        let k = *orders.iter().max().expect("ambient is nonempty");
        let pick = ambient
            .iter()
            .zip(&orders)
            .filter(|&(&x, &o)| o == k && pow(ops, x, k) == one)
            .map(|(&x, _)| x)
            .min()
            .ok_or(ComplementError::NoComplement { order: k })?;
        let powers: Vec<A::Elem> = (0..k).map(|j| pow(ops, pick, j)).collect();
        span = product(ops, &span, &powers);
        complement = product(ops, &complement, &powers);
        basis.push((pick, k));
    }
    Ok((basis, complement))
}

fn product<A: AbelianOps>(ops: &A, xs: &[A::Elem], ys: &[A::Elem]) -> Vec<A::Elem> {
    let mut out: Vec<A::Elem> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| ops.op(x, y))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A cyclic-factor basis of `ambient`.
pub fn abelian_basis<A: AbelianOps>(ops: &A, ambient: &[A::Elem]) -> Result<Vec<(A::Elem, usize)>, ComplementError> {
    check_abelian(ops, ambient)?;
    extend(ops, ambient, vec![ops.identity()]).map(|(basis, _)| basis)
}

/// Finds `L` with `factor ∩ L = 1` and `factor · L = ambient`, or reports
/// that `factor` is not a direct factor. Both inputs must be sorted.
pub fn find_complement<A: AbelianOps>(
    ops: &A,
    ambient: &[A::Elem],
    factor: &[A::Elem],
) -> Result<Complement<A::Elem>, ComplementError> {
    if factor.iter().any(|x| !contains(ambient, x)) {
        return Err(ComplementError::NotSubset);
    }
    check_abelian(ops, ambient)?;
    let (basis, members) = extend(ops, ambient, factor.to_vec())?;
    Ok(Complement { basis, members })
}
