//! `V_⊙(F₂G) = G × T × W` for `G` with `G/C` Klein four (`C` the center) and
//! `G' = {1, e}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{elem, render_basis, render_bits, xor_basis, TheoremError};
use crate::algebra::{AlgebraElement, ByteTables, GroupAlgebra};
use crate::complement::find_complement;
use crate::group::{bits, SubgroupSet};
use crate::involution::{odot_involution, AntiAutomorphism, Theorem2Instance};
use crate::report::{
    Check, DecompositionReport, Diagnostic, GroupDescriptor, InstanceDescriptor, Representatives, VerifyOptions,
    SCHEMA_VERSION,
};
use crate::unitgroup::{
    direct_product_check, elements_of_order_dividing_2, enumerate_normalized_units, enumerate_normalized_units_on,
    enumerate_unitary, group_image, product_set, structure_predicates, ExhaustiveBound, UnitError, UnitMul, UnitSet,
    MATERIALIZE_LIMIT, MAX_CLOSURE,
};

/// `V(F₂C)[2]`, the image of `C[2]`, and a complement `T`.
#[derive(Debug, Clone)]
pub struct TFactor {
    pub units_c: UnitSet,
    pub order_two: UnitSet,
    pub c2_image: UnitSet,
    pub t: UnitSet,
    pub basis: Vec<(u64, usize)>,
}

pub fn build_t_thm2(alg: &GroupAlgebra, inst: &Theorem2Instance, bound: ExhaustiveBound) -> Result<TFactor, TheoremError> {
    let g = alg.group();
    let units_c = enumerate_normalized_units_on(alg, &inst.c_sub, bound)?;
    let order_two = elements_of_order_dividing_2(alg, &units_c)?;
    let c2_mask = inst
        .c_sub
        .members()
        .filter(|&c| g.mul(c, c) == g.identity())
        .fold(0u64, |m, c| m | 1 << c);
    let c2 = SubgroupSet::from_mask(g, c2_mask).expect("C[2] is a subgroup of an abelian group");
    let c2_image = group_image(alg, &c2);
    let comp = find_complement(&UnitMul(alg), order_two.member_bits(), c2_image.member_bits())?;
    let gens = comp.basis.iter().map(|b| b.0).collect();
    let t = UnitSet::from_parts(alg.id(), comp.members, Some(gens));
    Ok(TFactor { units_c, order_two, c2_image, t, basis: comp.basis })
}

/// The ideal `(1 + e)·F₂C`, as a sorted list of bit-vectors.
fn ideal_members(alg: &GroupAlgebra, inst: &Theorem2Instance) -> Vec<u64> {
    let one_e = 1u64 | 1 << inst.e;
    let positions: Vec<usize> = inst.c_sub.members().collect();
    let basis = xor_basis(positions.iter().map(|&c| alg.mul_bits(one_e, 1 << c)));
    let span = ByteTables::new(basis.len(), |i| basis[i]);
    let mut out: Vec<u64> = (0..1u64 << basis.len()).map(|k| span.apply(k)).collect();
    out.sort_unstable();
    out
}

/// `{1 + x₁a + x₂b + x₃ab : xᵢ ∈ (1 + e)F₂C}`.
pub fn build_w_thm2(alg: &GroupAlgebra, inst: &Theorem2Instance) -> Result<UnitSet, TheoremError> {
    let ideal = ideal_members(alg, inst);
    let size = ideal.len().pow(3);
    if size > MAX_CLOSURE {
        return Err(UnitError::TooLarge { order: size, bound: MAX_CLOSURE }.into());
    }
    let g = alg.group();
    let reps = [1u64 << inst.a, 1u64 << inst.b, 1u64 << g.mul(inst.a, inst.b)];
    let shifted: Vec<Vec<u64>> = reps
        .iter()
        .map(|&r| ideal.iter().map(|&x| alg.mul_bits(x, r)).collect())
        .collect();
    let members: Vec<u64> = shifted[0]
        .par_iter()
        .flat_map_iter(|&p| {
            let shifted = &shifted;
            shifted[1]
                .iter()
                .flat_map(move |&q| shifted[2].iter().map(move |&r| 1 ^ p ^ q ^ r))
        })
        .collect();
    let ideal_basis = xor_basis(ideal.iter().copied());
    let gens = reps
        .iter()
        .flat_map(|&r| ideal_basis.iter().map(move |&v| (r, v)))
        .map(|(r, v)| 1 ^ alg.mul_bits(v, r))
        .collect();
    Ok(UnitSet::from_parts(alg.id(), members, Some(gens)))
}

/// Consequences checked after factoring `x = x₀(1 + y₁a + y₂b + y₃ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eq7Outcome {
    pub eq7_lines: [bool; 4],
    /// `χ(x₁) = χ(x₂) = χ(x₃) = 0`.
    pub augmentations_zero: bool,
    /// `yᵢ(1 + e) = 0`.
    pub y_annihilated: bool,
    /// `yᵢ = (1 + e)uᵢ` solvable.
    pub y_in_ideal: bool,
    pub y_squares_zero: bool,
    pub x0_square_one: bool,
}

impl Eq7Outcome {
    pub fn eq7(&self) -> bool {
        self.eq7_lines.iter().all(|&b| b)
    }

    fn consequences(&self) -> bool {
        self.augmentations_zero && self.y_annihilated && self.y_in_ideal && self.y_squares_zero && self.x0_square_one
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eq67Outcome {
    pub eq6_lines: [bool; 4],
    /// `x·x^⊙ = 1`, computed directly.
    pub unitary: bool,
    /// Present when `χ(x₀) = 1`.
    pub factored: Option<Eq7Outcome>,
}

impl Eq67Outcome {
    pub fn eq6(&self) -> bool {
        self.eq6_lines.iter().all(|&b| b)
    }

    /// System (6) agrees with unitarity; when `x₀` is a unit, the factored
    /// system agrees with (6) and a unitary `x` has every listed consequence.
    pub fn consistent(&self) -> bool {
        let base = self.eq6() == self.unitary;
        match &self.factored {
            None => base,
            Some(f) => base && f.eq7() == self.eq6() && (!self.unitary || f.consequences()),
        }
    }
}

/// Splits `x` over the cosets `C, Ca, Cb, Cab` and evaluates the quadratic
/// system for unitarity, then the factored system when `χ(x₀) = 1`.
pub fn check_eq6_eq7(alg: &GroupAlgebra, inst: &Theorem2Instance, x: &AlgebraElement) -> Result<Eq67Outcome, TheoremError> {
    let g = alg.group();
    let sigma = odot_involution(inst)?;
    let [x0, x1, x2, x3] = alg.quadrant_split(x, &inst.c_sub, inst.a, inst.b)?.map(|p| p.bits());
    let m = |p: u64, q: u64| alg.mul_bits(p, q);
    let e = 1u64 << inst.e;
    let one_e = 1 | e;
    let a2 = 1u64 << g.mul(inst.a, inst.a);
    let b2 = 1u64 << g.mul(inst.b, inst.b);
    let a2b2 = m(a2, b2);
    let sq = |p: u64| m(p, p);

    let eq6_lines = [
        sq(x0) ^ m(m(sq(x1), a2), e) ^ m(m(sq(x2), b2), e) ^ m(sq(x3), a2b2) == 1,
        m(m(x0, x1) ^ m(m(x2, x3), b2), one_e) == 0,
        m(m(x0, x2) ^ m(m(x1, x3), a2), one_e) == 0,
        m(m(x0, x3) ^ m(x1, x2), one_e) == 0,
    ];
    let unitary = m(x.bits(), sigma.apply_bits(x.bits())) == 1;

    let factored = alg.inverse_bits(x0).map(|x0_inv| {
        let y = [m(x0_inv, x1), m(x0_inv, x2), m(x0_inv, x3)];
        let x0sq = sq(x0);
        let eq7_lines = [
            m(x0sq, 1 ^ m(m(sq(y[0]), a2), e) ^ m(m(sq(y[1]), b2), e) ^ m(sq(y[2]), a2b2)) == 1,
            m(y[0], one_e) ^ m(m(m(y[1], y[2]), b2), one_e) == 0,
            m(y[1], one_e) ^ m(m(m(y[0], y[2]), a2), one_e) == 0,
            m(y[2], one_e) ^ m(m(y[0], y[1]), one_e) == 0,
        ];
        let one_e_elem = elem(alg, one_e);
        Eq7Outcome {
            eq7_lines,
            augmentations_zero: [x1, x2, x3].iter().all(|p| p.count_ones() % 2 == 0),
            y_annihilated: y.iter().all(|&yi| m(yi, one_e) == 0),
            y_in_ideal: y.iter().all(|&yi| alg.annihilator_solve(&elem(alg, yi), &one_e_elem).is_ok()),
            y_squares_zero: y.iter().all(|&yi| sq(yi) == 0),
            x0_square_one: x0sq == 1,
        }
    });
    Ok(Eq67Outcome { eq6_lines, unitary, factored })
}

fn unitary_under(alg: &GroupAlgebra, sigma: &AntiAutomorphism, x: u64) -> bool {
    alg.mul_bits(x, sigma.apply_bits(x)) == 1
}

fn labels(alg: &GroupAlgebra, s: &SubgroupSet) -> Vec<String> {
    bits(s.mask()).map(|x| alg.group().label(x).to_string()).collect()
}

/// Builds `T` and `W`, checks the direct decomposition, and compares with the
/// enumerated unitary subgroup when the options allow it.
pub fn verify_theorem2(inst: &Theorem2Instance, opts: &VerifyOptions) -> Result<DecompositionReport, TheoremError> {
    let group = &inst.group;
    let g = group.as_ref();
    let alg = GroupAlgebra::new(group.clone());
    let sigma = odot_involution(inst)?;
    let n = g.order();
    let c_order = inst.c_sub.len();
    let mut checks = Vec::new();
    let mut diagnostics = Vec::new();
    let mut notes = Vec::new();
    let mut orders = BTreeMap::new();

    let g_image = group_image(&alg, &g.whole());
    let non_unitary_g: Vec<usize> = (0..n).filter(|&x| !unitary_under(&alg, &sigma, 1 << x)).collect();
    checks.push(Check::new(
        "G_in_unitary",
        non_unitary_g.is_empty(),
        non_unitary_g.first().map(|&x| format!("{} has g·g^⊙ = {}", g.label(x), g.label(g.mul(x, sigma.apply(x))))),
    ));

    let tf = build_t_thm2(&alg, inst, opts.bound)?;
    let t = tf.t.clone().with_sigma(&sigma);
    let t_ok = tf.c2_image.meets_trivially(&t) && product_set(&alg, &tf.c2_image, &t)? == tf.order_two;
    checks.push(Check::new(
        "T_complement_of_C2",
        t_ok,
        Some(format!("|C[2]| = {}, |T| = {}, |V(F2C)[2]| = {}", tf.c2_image.len(), t.len(), tf.order_two.len())),
    ));

    let w = build_w_thm2(&alg, inst)?.with_sigma(&sigma);
    let exponent = 3 * c_order / 2;
    checks.push(Check::new(
        "W_order_formula",
        w.len() == 1 << exponent,
        Some(format!("|W| = {}, expected 2^{exponent}", w.len())),
    ));
    let ws = structure_predicates(&alg, &w);
    let non_central = w.members().find(|x| !alg.is_central(x));
    checks.push(Check::new(
        "W_central_elementary_abelian",
        ws.elementary_abelian_2 && non_central.is_none(),
        Some(match non_central {
            Some(x) => format!("{} is not central", alg.render(&x)),
            None => format!("abelian {}, exponent {}", ws.abelian, ws.exponent),
        }),
    ));
    let bad_factor = t
        .member_bits()
        .iter()
        .chain(w.member_bits())
        .find(|&&x| !unitary_under(&alg, &sigma, x))
        .map(|&x| render_bits(&alg, x));
    checks.push(Check::new("constructed_factors_unitary", bad_factor.is_none(), bad_factor));

    let alt = inst.alternative()?;
    let w_alt = build_w_thm2(&alg, &alt)?;
    checks.push(Check::new(
        "W_independent_of_representatives",
        w_alt == w,
        Some(format!("a = {} gives {} elements", g.label(alt.a), w_alt.len())),
    ));

    let gtw = product_set(&alg, &product_set(&alg, &g_image, &t)?, &w)?;
    let direct = direct_product_check(&alg, &gtw, &[&g_image, &t, &w])?;
    checks.push(Check::new(
        "direct_factors_commute",
        direct.non_commuting.is_none(),
        direct.non_commuting.map(|(x, y)| format!("{} and {}", alg.render(&x), alg.render(&y))),
    ));
    checks.push(Check::new(
        "direct_factors_intersect_trivially",
        direct.overlap.is_none() && gtw.len() == n * t.len() * w.len(),
        direct.overlap.map(|(i, x)| format!("factor {i} shares {}", alg.render(&x))),
    ));

    let expected = n * t.len() * w.len();
    if opts.oracle_enabled(n) {
        let oracle = enumerate_unitary(&alg, &sigma, opts.bound)?;
        let missing = oracle.member_bits().iter().find(|&&x| !gtw.contains_bits(x));
        let extra = gtw.member_bits().iter().find(|&&x| !oracle.contains_bits(x));
        let witness = match (missing, extra) {
            (Some(&x), _) => Some(format!("unitary {} not in G·T·W", render_bits(&alg, x))),
            (None, Some(&x)) => Some(format!("{} in G·T·W is not unitary", render_bits(&alg, x))),
            _ => None,
        };
        checks.push(Check::new("product_equals_oracle", gtw == oracle, witness));
        checks.push(Check::new(
            "oracle_order_matches_formula",
            oracle.len() == expected,
            Some(format!("oracle {}, |G|·|T|·|W| = {expected}", oracle.len())),
        ));
        orders.insert("V_sigma_oracle".to_string(), oracle.len() as u64);

        if n <= MATERIALIZE_LIMIT {
            let v = enumerate_normalized_units(&alg, opts.bound)?;
            orders.insert("V".to_string(), v.len() as u64);
            let bad = v
                .member_bits()
                .par_iter()
                .find_first(|&&x| !matches!(check_eq6_eq7(&alg, inst, &elem(&alg, x)), Ok(o) if o.consistent()))
                .map(|&x| render_bits(&alg, x));
            checks.push(Check::new("eq6_biconditional", bad.is_none(), bad));
        }

        if !non_unitary_g.is_empty() {
            let unitary_g = SubgroupSet::from_mask(g, g.full_mask() & !non_unitary_g.iter().fold(0u64, |m, &x| m | 1 << x))
                .expect("unitary group elements form a subgroup");
            let gu = group_image(&alg, &unitary_g);
            let corrected = product_set(&alg, &product_set(&alg, &gu, &t)?, &w)?;
            let holds = corrected == oracle;
            diagnostics.push(Diagnostic {
                name: "unitary_group_elements_times_T_times_W".to_string(),
                holds,
                detail: format!(
                    "|G ∩ V_⊙| = {}, product has {} elements, oracle {}",
                    gu.len(),
                    corrected.len(),
                    oracle.len()
                ),
            });
            orders.insert("G_unitary".to_string(), gu.len() as u64);
        }
    } else {
        notes.push(format!("oracle enumeration skipped: |G| = {n} exceeds the exhaustive bound {}", opts.bound.0));
    }

    orders.insert("G".to_string(), n as u64);
    orders.insert("C".to_string(), c_order as u64);
    orders.insert("C2".to_string(), tf.c2_image.len() as u64);
    orders.insert("V_C".to_string(), tf.units_c.len() as u64);
    orders.insert("V_C_2".to_string(), tf.order_two.len() as u64);
    orders.insert("T".to_string(), t.len() as u64);
    orders.insert("W".to_string(), w.len() as u64);
    orders.insert("V_sigma_expected".to_string(), expected as u64);

    Ok(DecompositionReport {
        schema: SCHEMA_VERSION,
        group: GroupDescriptor { family: g.family().to_string(), name: g.name().to_string(), order: n, spec: None },
        involution: sigma.name().to_string(),
        instance: InstanceDescriptor::Theorem2 {
            center: labels(&alg, &inst.c_sub),
            representatives: Representatives { a: g.label(inst.a).to_string(), b: g.label(inst.b).to_string() },
            alternative_representatives: Representatives {
                a: g.label(alt.a).to_string(),
                b: g.label(alt.b).to_string(),
            },
            e: g.label(inst.e).to_string(),
            complement_basis: render_basis(&alg, &tf.basis),
        },
        orders,
        checks,
        diagnostics,
        notes,
        timing_ms: None,
    })
}
