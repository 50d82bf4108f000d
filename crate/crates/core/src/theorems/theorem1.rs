//! `V_*(F₂G) = G ⋉ H` with `H = W ⋊ L`, for `G = ⟨A, b⟩` where `A` is abelian
//! of index 2 and `b` has order 4 and inverts `A`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{elem, render_basis, render_bits, TheoremError};
use crate::algebra::{AlgebraElement, ByteTables, GroupAlgebra};
use crate::complement::find_complement;
use crate::group::bits;
use crate::involution::{classical_involution, AntiAutomorphism, Theorem1Instance};
use crate::report::{Check, DecompositionReport, GroupDescriptor, InstanceDescriptor, VerifyOptions, SCHEMA_VERSION};
use crate::unitgroup::{
    enumerate_normalized_units, enumerate_unitary, enumerate_unitary_on, group_image, normality_witness,
    product_set, structure_predicates, unit_subgroup_closure, ExhaustiveBound, UnitMul, UnitSet, MATERIALIZE_LIMIT,
};

/// `1 + b²`.
fn one_plus_square(inst: &Theorem1Instance) -> u64 {
    1 | 1 << inst.square
}

/// `1 + (1 + b²)·z·b`.
fn w_of(alg: &GroupAlgebra, inst: &Theorem1Instance, z: u64) -> u64 {
    1 ^ alg.mul_bits(alg.mul_bits(one_plus_square(inst), z), 1 << inst.b)
}

/// The generators `w_i = 1 + (1 + b²)·g_i·b` over the transversal.
pub fn w_generators(alg: &GroupAlgebra, inst: &Theorem1Instance) -> Vec<AlgebraElement> {
    inst.transversal.iter().map(|&g| elem(alg, w_of(alg, inst, 1 << g))).collect()
}

/// `W` as the subgroup generated by the `w_i`.
pub fn build_w_thm1(alg: &GroupAlgebra, inst: &Theorem1Instance) -> Result<UnitSet, TheoremError> {
    Ok(unit_subgroup_closure(alg, &w_generators(alg, inst))?)
}

/// `W` as the image of `z ↦ 1 + (1 + b²)·z·b` over all of F₂A.
#[derive(Debug, Clone)]
pub struct DirectW {
    pub set: UnitSet,
    /// Sizes of the fibres of the map, smallest and largest.
    pub fiber_sizes: (usize, usize),
}

pub fn build_w_thm1_direct(alg: &GroupAlgebra, inst: &Theorem1Instance) -> Result<DirectW, TheoremError> {
    let positions: Vec<usize> = inst.a_sub.members().collect();
    let m = positions.len();
    if m > MATERIALIZE_LIMIT {
        return Err(crate::unitgroup::UnitError::TooLarge { order: m, bound: MATERIALIZE_LIMIT }.into());
    }
    // The map is affine in z; tabulate its linear part on the basis of F₂A.
    let images = ByteTables::new(m, |i| w_of(alg, inst, 1 << positions[i]) ^ 1);
    let mut fibres: HashMap<u64, usize> = HashMap::new();
    for k in 0..(1u64 << m) {
        *fibres.entry(1 ^ images.apply(k)).or_default() += 1;
    }
    let min = fibres.values().copied().min().unwrap_or(0);
    let max = fibres.values().copied().max().unwrap_or(0);
    let set = UnitSet::from_parts(alg.id(), fibres.into_keys().collect(), None);
    Ok(DirectW { set, fiber_sizes: (min, max) })
}

/// `V_*(F₂A)` together with a complement `L` of `A` in it.
#[derive(Debug, Clone)]
pub struct LFactor {
    pub unitary_a: UnitSet,
    pub a_image: UnitSet,
    pub l: UnitSet,
    pub basis: Vec<(u64, usize)>,
}

pub fn build_l_thm1(alg: &GroupAlgebra, inst: &Theorem1Instance, bound: ExhaustiveBound) -> Result<LFactor, TheoremError> {
    let star = classical_involution(alg.group_arc());
    let unitary_a = enumerate_unitary_on(alg, &star, &inst.a_sub, bound)?;
    let a_image = group_image(alg, &inst.a_sub);
    let c = find_complement(&UnitMul(alg), unitary_a.member_bits(), a_image.member_bits())?;
    let gens = c.basis.iter().map(|b| b.0).collect();
    let l = UnitSet::from_parts(alg.id(), c.members, Some(gens)).with_sigma(&star);
    Ok(LFactor { unitary_a, a_image, l, basis: c.basis })
}

/// Result of checking the conjugation identities on every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationOutcome {
    pub pairs_checked: usize,
    /// First failing identity, rendered.
    pub failure: Option<String>,
}

impl ConjugationOutcome {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// For each transversal element `g_i` and each `x₁ ∈ V_*(F₂A)`:
/// `b·w_i·b⁻¹ = w_j` where `g_i⁻¹ ∈ g_j⟨b²⟩`; `x₁·w_i·x₁⁻¹ = 1 + (1+b²)x₁²g_i·b`;
/// `b·x₁⁻¹ = b·x₁* = x₁·b`. Every conjugate must also lie in `W`.
pub fn check_conjugation_identities(
    alg: &GroupAlgebra,
    inst: &Theorem1Instance,
    w: &UnitSet,
    unitary_a: &UnitSet,
) -> ConjugationOutcome {
    let g = alg.group();
    let star = classical_involution(alg.group_arc());
    let b = 1u64 << inst.b;
    let b_inv = 1u64 << g.inv(inst.b);
    let mut pairs = 0;
    for &gi in &inst.transversal {
        let wi = w_of(alg, inst, 1 << gi);
        let conj = alg.mul_bits(alg.mul_bits(b, wi), b_inv);
        let j = inst.transversal_index(g.inv(gi)).expect("transversal covers A");
        let predicted = w_of(alg, inst, 1 << inst.transversal[j]);
        if conj != predicted || !w.contains_bits(conj) {
            return ConjugationOutcome {
                pairs_checked: pairs,
                failure: Some(format!("b·w·b⁻¹ for g_i = {}: got {}", g.label(gi), render_bits(alg, conj))),
            };
        }
        for &x1 in unitary_a.member_bits() {
            pairs += 1;
            let x1_inv = alg.inverse_bits(x1).expect("unitary elements are units");
            let conj = alg.mul_bits(alg.mul_bits(x1, wi), x1_inv);
            let predicted = w_of(alg, inst, alg.mul_bits(alg.mul_bits(x1, x1), 1 << gi));
            if conj != predicted || !w.contains_bits(conj) {
                return ConjugationOutcome {
                    pairs_checked: pairs,
                    failure: Some(format!(
                        "x₁·w·x₁⁻¹ for g_i = {}, x₁ = {}",
                        g.label(gi),
                        render_bits(alg, x1)
                    )),
                };
            }
            let lhs = alg.mul_bits(b, x1_inv);
            if x1_inv != star.apply_bits(x1) || lhs != alg.mul_bits(x1, b) {
                return ConjugationOutcome {
                    pairs_checked: pairs,
                    failure: Some(format!("b·x₁⁻¹ ≠ x₁·b for x₁ = {}", render_bits(alg, x1))),
                };
            }
        }
    }
    ConjugationOutcome { pairs_checked: pairs, failure: None }
}

/// The conditions derived for a normalized unit `x = x₁(1 + x₂b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eq2Outcome {
    /// `χ(x₂) = 1` in the raw split, so `x·b` was used instead.
    pub multiplied_by_b: bool,
    /// `x₁x₁*(1 + x₂x₂*) = 1`.
    pub norm_line: bool,
    /// `x₂(1 + b²) = 0`.
    pub annihilated: bool,
    /// `x₂ = (1 + b²)z` for some `z ∈ F₂A`.
    pub in_ideal: bool,
    /// `x₂x₂* = 0`.
    pub x2_norm_zero: bool,
    /// `x₁x₁* = 1`.
    pub x1_unitary: bool,
}

impl Eq2Outcome {
    pub fn holds(&self) -> bool {
        self.norm_line && self.annihilated && self.in_ideal && self.x2_norm_zero && self.x1_unitary
    }
}

/// Factors a normalized unit as `x₁(1 + x₂b)` (after replacing `x` by `x·b`
/// when the `b`-coset part has augmentation 1) and evaluates each condition.
pub fn eq2_conditions(alg: &GroupAlgebra, inst: &Theorem1Instance, x: &AlgebraElement) -> Result<Eq2Outcome, TheoremError> {
    let star = classical_involution(alg.group_arc());
    let (mut y1, mut y2) = alg.coset_split(x, &inst.a_sub, inst.b)?;
    let multiplied_by_b = alg.augmentation(&y2).is_one();
    if multiplied_by_b {
        let xb = alg.mul(x, &alg.basis(inst.b))?;
        (y1, y2) = alg.coset_split(&xb, &inst.a_sub, inst.b)?;
    }
    let x1 = y1.bits();
    let x1_inv = alg
        .inverse_bits(x1)
        .ok_or_else(|| crate::algebra::AlgebraError::NotAUnit(alg.render(&y1)))?;
    let x2 = alg.mul_bits(x1_inv, y2.bits());
    let x1_norm = alg.mul_bits(x1, star.apply_bits(x1));
    let x2_norm = alg.mul_bits(x2, star.apply_bits(x2));
    let w = one_plus_square(inst);
    Ok(Eq2Outcome {
        multiplied_by_b,
        norm_line: alg.mul_bits(x1_norm, 1 ^ x2_norm) == 1,
        annihilated: alg.mul_bits(x2, w) == 0,
        in_ideal: alg.annihilator_solve(&elem(alg, x2), &elem(alg, w)).is_ok(),
        x2_norm_zero: x2_norm == 0,
        x1_unitary: x1_norm == 1,
    })
}

/// [`eq2_conditions`] restricted to unitary `x`.
pub fn check_eq2_canonical_form(alg: &GroupAlgebra, inst: &Theorem1Instance, x: &AlgebraElement) -> Result<bool, TheoremError> {
    let star = classical_involution(alg.group_arc());
    if alg.mul_bits(x.bits(), star.apply_bits(x.bits())) != 1 {
        return Err(TheoremError::NotUnitary(alg.render(x)));
    }
    Ok(eq2_conditions(alg, inst, x)?.holds())
}

fn first_failure<'a>(
    alg: &GroupAlgebra,
    members: impl IntoIterator<Item = &'a u64>,
    pred: impl Fn(u64) -> bool,
) -> Option<String> {
    members.into_iter().find(|&&x| !pred(x)).map(|&x| render_bits(alg, x))
}

fn unitary_under(alg: &GroupAlgebra, sigma: &AntiAutomorphism, x: u64) -> bool {
    alg.mul_bits(x, sigma.apply_bits(x)) == 1
}

/// Builds `W`, `L`, `H` and checks the decomposition, against the enumerated
/// unitary subgroup when the options allow it.
pub fn verify_theorem1(inst: &Theorem1Instance, opts: &VerifyOptions) -> Result<DecompositionReport, TheoremError> {
    let group = &inst.group;
    let alg = GroupAlgebra::new(group.clone());
    let star = classical_involution(group);
    let n = group.order();
    let a_order = inst.a_sub.len();
    let half = a_order / 2;
    let mut checks = Vec::new();
    let mut notes = vec![format!(
        "W is the direct product of the {half} order-2 subgroups indexed by the transversal of A modulo <b^2>"
    )];
    let mut orders = BTreeMap::new();

    let lf = build_l_thm1(&alg, inst, opts.bound)?;
    let w = build_w_thm1(&alg, inst)?.with_sigma(&star);
    match build_w_thm1_direct(&alg, inst) {
        Ok(direct) => {
            checks.push(Check::new(
                "W_direct_equals_generated",
                direct.set == w,
                Some(format!("direct image has {} elements, generated group {}", direct.set.len(), w.len())),
            ));
            let expected = 1usize << half;
            checks.push(Check::new(
                "W_map_fiber_size",
                direct.fiber_sizes == (expected, expected),
                Some(format!("fibres range over {:?}, expected {expected}", direct.fiber_sizes)),
            ));
        }
        Err(_) => notes.push(format!("direct image of W over F2A skipped: 2^{a_order} arguments")),
    }
    checks.push(Check::new(
        "W_order_formula",
        w.len() == 1 << half,
        Some(format!("|W| = {}, expected 2^{half}", w.len())),
    ));
    let ws = structure_predicates(&alg, &w);
    checks.push(Check::new(
        "W_elementary_abelian_rank",
        ws.elementary_abelian_2 && ws.rank == Some(half as u32),
        Some(format!("abelian {}, exponent {}, rank {:?}", ws.abelian, ws.exponent, ws.rank)),
    ));
    let bad_w = first_failure(&alg, w.member_bits(), |m| alg.mul_bits(m, m) == 1 && unitary_under(&alg, &star, m));
    checks.push(Check::new("W_members_unitary_self_inverse", bad_w.is_none(), bad_w));

    let l = &lf.l;
    let l_ok = lf.a_image.meets_trivially(l) && product_set(&alg, &lf.a_image, l)? == lf.unitary_a;
    checks.push(Check::new(
        "L_complement_of_A",
        l_ok,
        Some(format!("|A| = {}, |L| = {}, |V_*(F2A)| = {}", lf.a_image.len(), l.len(), lf.unitary_a.len())),
    ));

    let h = product_set(&alg, &w, l)?;
    let w_normal = normality_witness(&alg, &h, &w)?;
    let semidirect = w_normal.is_none() && w.meets_trivially(l) && w.len() * l.len() == h.len();
    checks.push(Check::new(
        "H_semidirect_W_by_L",
        semidirect,
        Some(match &w_normal {
            Some((u, x)) => format!("{} does not normalize W at {}", alg.render(u), alg.render(x)),
            None => format!("|W|·|L| = {}, |H| = {}", w.len() * l.len(), h.len()),
        }),
    ));

    let g_image = group_image(&alg, &group.whole());
    let witness_g = g_image.intersection(&h).into_iter().find(|x| !x.is_one());
    checks.push(Check::new("G_meets_H_trivially", witness_g.is_none(), witness_g.map(|x| alg.render(&x))));

    let oracle = if opts.oracle_enabled(n) {
        Some(enumerate_unitary(&alg, &star, opts.bound)?)
    } else {
        notes.push(format!("oracle enumeration skipped: |G| = {n} exceeds the exhaustive bound {}", opts.bound.0));
        None
    };
    let gh = product_set(&alg, &g_image, &h)?;
    let ambient = oracle.as_ref().unwrap_or(&gh);
    let h_normal = normality_witness(&alg, ambient, &h)?;
    checks.push(Check::new(
        "H_normal_in_unitary",
        h_normal.is_none(),
        h_normal.map(|(u, x)| format!("{} conjugates {} out of H", alg.render(&u), alg.render(&x))),
    ));

    let bad_factor = first_failure(
        &alg,
        g_image.member_bits().iter().chain(l.member_bits()).chain(w.member_bits()),
        |x| unitary_under(&alg, &star, x),
    );
    checks.push(Check::new("constructed_factors_unitary", bad_factor.is_none(), bad_factor));

    let conj = check_conjugation_identities(&alg, inst, &w, &lf.unitary_a);
    checks.push(Check::new("conjugation_identities", conj.holds(), conj.failure.clone()));

    let expected = n * w.len() * l.len();
    if let Some(oracle) = &oracle {
        let eq2_bad = oracle
            .member_bits()
            .par_iter()
            .find_first(|&&x| !matches!(check_eq2_canonical_form(&alg, inst, &elem(&alg, x)), Ok(true)))
            .map(|&x| render_bits(&alg, x));
        checks.push(Check::new("eq2_canonical_form", eq2_bad.is_none(), eq2_bad));
        let missing = oracle.member_bits().iter().find(|&&x| !gh.contains_bits(x));
        let extra = gh.member_bits().iter().find(|&&x| !oracle.contains_bits(x));
        let witness = match (missing, extra) {
            (Some(&x), _) => Some(format!("unitary {} not in G·H", render_bits(&alg, x))),
            (None, Some(&x)) => Some(format!("{} in G·H is not unitary", render_bits(&alg, x))),
            _ => None,
        };
        checks.push(Check::new("G_times_H_equals_oracle", gh == *oracle, witness));
        checks.push(Check::new(
            "oracle_order_matches_formula",
            oracle.len() == expected,
            Some(format!("oracle {}, |G|·|W|·|L| = {expected}", oracle.len())),
        ));
        orders.insert("V_sigma_oracle".to_string(), oracle.len() as u64);
        if n <= MATERIALIZE_LIMIT {
            orders.insert("V".to_string(), enumerate_normalized_units(&alg, opts.bound)?.len() as u64);
        }
    }

    orders.insert("G".to_string(), n as u64);
    orders.insert("A".to_string(), a_order as u64);
    orders.insert("W".to_string(), w.len() as u64);
    orders.insert("L".to_string(), l.len() as u64);
    orders.insert("H".to_string(), h.len() as u64);
    orders.insert("V_sigma_A".to_string(), lf.unitary_a.len() as u64);
    orders.insert("V_sigma_expected".to_string(), expected as u64);

    let g = group.as_ref();
    Ok(DecompositionReport {
        schema: SCHEMA_VERSION,
        group: GroupDescriptor { family: g.family().to_string(), name: g.name().to_string(), order: n, spec: None },
        involution: star.name().to_string(),
        instance: InstanceDescriptor::Theorem1 {
            abelian_subgroup: bits(inst.a_sub.mask()).map(|x| g.label(x).to_string()).collect(),
            b: g.label(inst.b).to_string(),
            b_squared: g.label(inst.square).to_string(),
            transversal: inst.transversal.iter().map(|&x| g.label(x).to_string()).collect(),
            complement_basis: render_basis(&alg, &lf.basis),
        },
        orders,
        checks,
        diagnostics: Vec::new(),
        notes,
        timing_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_direct_product, make_inverting_extension, make_quaternion, GroupTable};
    use crate::involution::{find_theorem1_instance, make_theorem1_instance};
    use std::sync::Arc;

    fn setup(g: GroupTable) -> (GroupAlgebra, Theorem1Instance) {
        let g = Arc::new(g);
        let inst = find_theorem1_instance(&g).unwrap();
        (GroupAlgebra::new(g), inst)
    }

    #[test]
    fn q8_factors() {
        let (alg, inst) = setup(make_quaternion(8).unwrap());
        let w = build_w_thm1(&alg, &inst).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.contains(&alg.one()));
        assert_eq!(build_w_thm1_direct(&alg, &inst).unwrap().set, w);
        let lf = build_l_thm1(&alg, &inst, ExhaustiveBound::default()).unwrap();
        assert_eq!(lf.unitary_a.len(), 8);
        assert_eq!(lf.l.len(), 2);
        let s = structure_predicates(&alg, &w);
        assert_eq!(s.rank, Some(2));
    }

    #[test]
    fn w_of_zero_is_one() {
        let (alg, inst) = setup(make_quaternion(8).unwrap());
        assert_eq!(w_of(&alg, &inst, 0), 1);
    }

    #[test]
    fn q16_w_members() {
        let (alg, inst) = setup(make_quaternion(16).unwrap());
        let w = build_w_thm1(&alg, &inst).unwrap();
        assert_eq!(w.len(), 16);
        let star = classical_involution(alg.group_arc());
        for m in w.member_bits() {
            assert_eq!(alg.mul_bits(*m, *m), 1);
            assert!(unitary_under(&alg, &star, *m));
        }
        let lf = build_l_thm1(&alg, &inst, ExhaustiveBound::default()).unwrap();
        assert_eq!(lf.unitary_a.len(), 32);
        assert_eq!(lf.l.len(), 4);
    }

    #[test]
    fn conjugation_on_q8() {
        let (alg, inst) = setup(make_quaternion(8).unwrap());
        let w = build_w_thm1(&alg, &inst).unwrap();
        let lf = build_l_thm1(&alg, &inst, ExhaustiveBound::default()).unwrap();
        let out = check_conjugation_identities(&alg, &inst, &w, &lf.unitary_a);
        assert_eq!(out, ConjugationOutcome { pairs_checked: 16, failure: None });
        // b·a⁻¹ = a·b
        let a = alg.parse("a").unwrap();
        let b = alg.basis(inst.b);
        assert_eq!(alg.mul(&b, &alg.inverse(&a).unwrap()).unwrap(), alg.mul(&a, &b).unwrap());
    }

    #[test]
    fn eq2_on_q8() {
        let (alg, inst) = setup(make_quaternion(8).unwrap());
        let one = eq2_conditions(&alg, &inst, &alg.one()).unwrap();
        assert!(one.holds() && !one.multiplied_by_b);
        let star = classical_involution(alg.group_arc());
        let v = enumerate_normalized_units(&alg, ExhaustiveBound::default()).unwrap();
        let mut non_unitary_seen = 0;
        for x in v.members() {
            let out = eq2_conditions(&alg, &inst, &x).unwrap();
            if unitary_under(&alg, &star, x.bits()) {
                assert!(out.holds(), "{}", alg.render(&x));
                assert!(check_eq2_canonical_form(&alg, &inst, &x).unwrap());
            } else {
                non_unitary_seen += 1;
                assert!(!out.holds(), "{}", alg.render(&x));
                assert!(matches!(check_eq2_canonical_form(&alg, &inst, &x), Err(TheoremError::NotUnitary(_))));
            }
        }
        assert_eq!(non_unitary_seen, 64);
    }

    #[test]
    fn verify_q8_and_extensions() {
        let c4c2 = make_direct_product(&make_cyclic(4).unwrap(), &make_cyclic(2).unwrap()).unwrap();
        let t = c4c2.index_of("(a^2,1)").unwrap();
        for g in [make_quaternion(8).unwrap(), make_inverting_extension(&c4c2, t).unwrap()] {
            let name = g.name().to_string();
            let (_, inst) = setup(g);
            let report = verify_theorem1(&inst, &VerifyOptions::default()).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.failed_checks().collect::<Vec<_>>());
        }
    }

    #[test]
    fn oracle_numbers_q8() {
        let (_, inst) = setup(make_quaternion(8).unwrap());
        let report = verify_theorem1(&inst, &VerifyOptions::default()).unwrap();
        assert_eq!(report.orders["V_sigma_oracle"], 64);
        assert_eq!(report.orders["W"], 4);
        assert_eq!(report.orders["L"], 2);
        assert_eq!(report.orders["V"], 128);
    }

    #[test]
    fn skipped_oracle_leaves_no_oracle_fields() {
        let (_, inst) = setup(make_quaternion(8).unwrap());
        let opts = VerifyOptions { oracle: false, ..VerifyOptions::default() };
        let report = verify_theorem1(&inst, &opts).unwrap();
        assert!(report.passed());
        assert!(!report.orders.contains_key("V_sigma_oracle"));
        assert!(report.check("G_times_H_equals_oracle").is_none());
    }

    #[test]
    fn explicit_instance_matches_search() {
        let g = Arc::new(make_quaternion(8).unwrap());
        let explicit = make_theorem1_instance(&g, &[1], 4).unwrap();
        let found = find_theorem1_instance(&g).unwrap();
        assert_eq!(explicit.a_sub, found.a_sub);
        assert_eq!(explicit.b, found.b);
    }
}
