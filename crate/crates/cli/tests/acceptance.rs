//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the verdict lines are always printed; exits non-zero if any
//! criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use f2g::group::{make_cyclic, make_dihedral, make_direct_product, make_quaternion};
use f2g::involution::{
    classical_involution, find_theorem1_instance, make_theorem2_instance, odot_involution, Theorem1Instance,
    Theorem2Instance,
};
use f2g::theorems::{
    build_l_thm1, build_t_thm2, build_w_thm1, build_w_thm2, check_conjugation_identities, check_eq2_canonical_form,
    check_eq6_eq7,
};
use f2g::unitgroup::{enumerate_normalized_units, enumerate_unitary, group_image, product_set};
use f2g::{
    verify_theorem1, verify_theorem2, AntiAutomorphism, DecompositionReport, ExhaustiveBound, GroupAlgebra,
    GroupTable, InvolutionKind, VerifyOptions,
};
use f2g_cli::catalog;

const LIMIT_UNIT_COUNTS: Duration = Duration::from_secs(60);
const LIMIT_ORDER_8: Duration = Duration::from_secs(1);
const LIMIT_ORDER_16: Duration = Duration::from_secs(30);
const LIMIT_IDENTITIES: Duration = Duration::from_secs(10);
const LIMIT_ORDER_32_CONSTRUCT: Duration = Duration::from_secs(60);
const RANDOM_PAIRS: usize = 1000;
const RNG_SEED: u64 = 0x5eed_f2f2;
const THREAD_COUNTS: [usize; 3] = [1, 4, 8];

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t <= limit, format!("{:.3}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

fn catalog_groups() -> Vec<(String, Arc<GroupTable>, InvolutionKind)> {
    catalog()
        .into_iter()
        .map(|(name, spec, kind)| (name, Arc::new(spec.build().expect("catalog specs are valid")), kind))
        .collect()
}

fn sigma_for(g: &Arc<GroupTable>, kind: InvolutionKind) -> AntiAutomorphism {
    match kind {
        InvolutionKind::Classical => classical_involution(g),
        InvolutionKind::Odot => odot_involution(&make_theorem2_instance(g).unwrap()).unwrap(),
    }
}

fn thm1(g: GroupTable) -> (GroupAlgebra, Theorem1Instance) {
    let g = Arc::new(g);
    let inst = find_theorem1_instance(&g).unwrap();
    (GroupAlgebra::new(g), inst)
}

fn thm2(g: GroupTable) -> (GroupAlgebra, Theorem2Instance) {
    let g = Arc::new(g);
    let inst = make_theorem2_instance(&g).unwrap();
    (GroupAlgebra::new(g), inst)
}

fn failed(report: &DecompositionReport) -> String {
    let names: Vec<String> = report
        .failed_checks()
        .map(|c| match &c.witness {
            Some(w) => format!("{} [{w}]", c.name),
            None => c.name.clone(),
        })
        .collect();
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join("; ")
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut seen = std::collections::BTreeSet::new();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, g, _) in catalog_groups() {
        if g.order() > 16 || !seen.insert(name.clone()) {
            continue;
        }
        let alg = GroupAlgebra::new(g.clone());
        match enumerate_normalized_units(&alg, ExhaustiveBound::default()) {
            Ok(v) => {
                let ok = v.len() == 1 << (g.order() - 1);
                pass &= ok;
                details.push(format!("{name} {}", v.len()));
            }
            Err(e) => {
                pass = false;
                details.push(format!("{name} error {e}"));
            }
        }
    }
    let (fast, t) = within(start, LIMIT_UNIT_COUNTS);
    Verdict::new(pass && fast, format!("|V| = 2^(|G|-1) for {}; {t}", details.join(", ")))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let (alg, inst) = thm1(make_quaternion(8).unwrap());
    let star = classical_involution(alg.group_arc());
    let oracle = enumerate_unitary(&alg, &star, ExhaustiveBound::default()).unwrap();
    let w = build_w_thm1(&alg, &inst).unwrap();
    let l = build_l_thm1(&alg, &inst, ExhaustiveBound::default()).unwrap().l;
    let g = group_image(&alg, &alg.group().whole());
    let product = product_set(&alg, &product_set(&alg, &g, &w).unwrap(), &l).unwrap();
    let (fast, t) = within(start, LIMIT_ORDER_8);
    let pass = oracle.len() == 64 && w.len() == 4 && l.len() == 2 && product == oracle && fast;
    Verdict::new(
        pass,
        format!(
            "Q8 classical: |V_*| = {}, |W| = {}, |L| = {}, G·W·L equals V_* as a set: {}; {t}",
            oracle.len(),
            w.len(),
            l.len(),
            product == oracle
        ),
    )
}

fn criterion_3() -> Verdict {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, g, kind) in catalog_groups() {
        if kind != InvolutionKind::Classical || g.order() != 16 || name == "C8:C2" {
            continue;
        }
        let start = Instant::now();
        let inst = find_theorem1_instance(&g).unwrap();
        let report = verify_theorem1(&inst, &VerifyOptions::default()).unwrap();
        let (fast, t) = within(start, LIMIT_ORDER_16);
        let w_ok = report.orders["W"] == 1 << (inst.a_sub.len() / 2);
        let ok = report.passed() && w_ok && fast;
        pass &= ok;
        details.push(format!(
            "{name}: oracle {}, |W| = {}, failed checks: {}; {t}",
            report.orders.get("V_sigma_oracle").copied().unwrap_or(0),
            report.orders["W"],
            failed(&report)
        ));
    }
    Verdict::new(pass && details.len() == 2, details.join(" | "))
}

fn criterion_4() -> Verdict {
    let mut pass = true;
    let mut details = Vec::new();
    for g in [make_dihedral(8).unwrap(), make_quaternion(8).unwrap()] {
        let start = Instant::now();
        let name = g.name().to_string();
        let (alg, inst) = thm2(g);
        let sigma = odot_involution(&inst).unwrap();
        let oracle = enumerate_unitary(&alg, &sigma, ExhaustiveBound::default()).unwrap();
        let t = build_t_thm2(&alg, &inst, ExhaustiveBound::default()).unwrap().t;
        let w = build_w_thm2(&alg, &inst).unwrap();
        let gi = group_image(&alg, &alg.group().whole());
        let product = product_set(&alg, &product_set(&alg, &gi, &t).unwrap(), &w).unwrap();
        let (fast, time) = within(start, LIMIT_ORDER_8);
        let ok = oracle.len() == 64 && t.len() == 1 && w.len() == 8 && product == oracle && fast;
        pass &= ok;
        details.push(format!(
            "{name}: |V_⊙| = {} (expected 64), |T| = {}, |W| = {}, |G·T·W| = {}, set equality {}; {time}",
            oracle.len(),
            t.len(),
            w.len(),
            product.len(),
            product == oracle
        ));
    }
    Verdict::new(pass, details.join(" | "))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let g = make_direct_product(&make_dihedral(8).unwrap(), &make_cyclic(2).unwrap()).unwrap();
    let (_, inst) = thm2(g);
    let report = verify_theorem2(&inst, &VerifyOptions::default()).unwrap();
    let (fast, t) = within(start, LIMIT_ORDER_16);
    let o = &report.orders;
    let oracle = o.get("V_sigma_oracle").copied().unwrap_or(0);
    let pass = oracle == 2048 && o["T"] == 2 && o["W"] == 64 && report.passed() && fast;
    Verdict::new(
        pass,
        format!(
            "D8xC2 odot: |V_⊙| = {oracle} (expected 2048 = 16·2·64), |T| = {}, |W| = {}, failed checks: {}; {t}",
            o["T"],
            o["W"],
            failed(&report)
        ),
    )
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for g in [make_quaternion(8).unwrap(), make_quaternion(16).unwrap()] {
        let name = g.name().to_string();
        let (alg, inst) = thm1(g);
        let w = build_w_thm1(&alg, &inst).unwrap();
        let lf = build_l_thm1(&alg, &inst, ExhaustiveBound::default()).unwrap();
        let out = check_conjugation_identities(&alg, &inst, &w, &lf.unitary_a);
        pass &= out.holds();
        details.push(format!("{name} conjugation pairs {} ok {}", out.pairs_checked, out.holds()));
    }
    let (alg, inst) = thm1(make_quaternion(8).unwrap());
    let star = classical_involution(alg.group_arc());
    let unitary = enumerate_unitary(&alg, &star, ExhaustiveBound::default()).unwrap();
    let eq2 = unitary
        .members()
        .filter(|x| check_eq2_canonical_form(&alg, &inst, x).unwrap_or(false))
        .count();
    pass &= eq2 == 64 && unitary.len() == 64;
    details.push(format!("Q8 canonical form {eq2}/64"));
    for g in [make_dihedral(8).unwrap(), make_quaternion(8).unwrap()] {
        let name = g.name().to_string();
        let (alg, inst) = thm2(g);
        let v = enumerate_normalized_units(&alg, ExhaustiveBound::default()).unwrap();
        let agree = v
            .members()
            .filter(|x| check_eq6_eq7(&alg, &inst, x).map(|o| o.eq6() == o.unitary && o.consistent()).unwrap_or(false))
            .count();
        pass &= agree == 128;
        details.push(format!("{name} system biconditional {agree}/128"));
    }
    let (fast, t) = within(start, LIMIT_IDENTITIES);
    Verdict::new(pass && fast, format!("{}; {t}", details.join(", ")))
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut pass = true;
    let mut details = Vec::new();
    for (name, g, kind) in catalog_groups() {
        let alg = GroupAlgebra::new(g.clone());
        let sigma = sigma_for(&g, kind);
        let mask = g.full_mask();
        let pairs: Vec<(u64, u64)> = if g.order() == 8 {
            (0..=mask).flat_map(|x| (0..=mask).map(move |y| (x, y))).collect()
        } else {
            (0..RANDOM_PAIRS).map(|_| (rng.gen::<u64>() & mask, rng.gen::<u64>() & mask)).collect()
        };
        let bad = pairs.iter().find(|&&(x, y)| {
            let (u, v) = (alg.from_bits(x).unwrap(), alg.from_bits(y).unwrap());
            let s = |z: &f2g::AlgebraElement| alg.involute(&sigma, z).unwrap();
            s(&alg.add(&u, &v).unwrap()) != alg.add(&s(&u), &s(&v)).unwrap()
                || s(&alg.mul(&u, &v).unwrap()) != alg.mul(&s(&v), &s(&u)).unwrap()
                || s(&s(&u)) != u
        });
        pass &= bad.is_none();
        details.push(format!("{name}/{kind} {} pairs{}", pairs.len(), if bad.is_some() { " FAILED" } else { "" }));
    }
    Verdict::new(pass, details.join(", "))
}

fn criterion_8() -> Verdict {
    let opts = VerifyOptions { bound: ExhaustiveBound::default(), oracle: false };
    let mut pass = true;
    let mut details = Vec::new();

    let start = Instant::now();
    let q32 = Arc::new(make_quaternion(32).unwrap());
    let report = verify_theorem1(&find_theorem1_instance(&q32).unwrap(), &opts).unwrap();
    let (fast, t) = within(start, LIMIT_ORDER_32_CONSTRUCT);
    let ok = report.passed() && report.orders["W"] == 1 << 8 && !report.orders.contains_key("V_sigma_oracle") && fast;
    pass &= ok;
    details.push(format!("Q32 classical: |W| = {}, |L| = {}, failed checks: {}; {t}", report.orders["W"], report.orders["L"], failed(&report)));

    let start = Instant::now();
    let d8c4 = Arc::new(make_direct_product(&make_dihedral(8).unwrap(), &make_cyclic(4).unwrap()).unwrap());
    let inst = make_theorem2_instance(&d8c4).unwrap();
    let report = verify_theorem2(&inst, &opts).unwrap();
    let (fast, t) = within(start, LIMIT_ORDER_32_CONSTRUCT);
    let ok = report.passed() && report.orders["W"] == 1 << (3 * inst.c_sub.len() / 2) && fast;
    pass &= ok;
    details.push(format!(
        "D8xC4 odot: |T| = {}, |W| = {}, failed checks: {}; {t}",
        report.orders["T"],
        report.orders["W"],
        failed(&report)
    ));
    Verdict::new(pass, details.join(" | "))
}

fn criterion_9() -> Verdict {
    let outputs: Vec<Vec<u8>> = THREAD_COUNTS
        .iter()
        .map(|t| {
            Command::new(env!("CARGO_BIN_EXE_f2g"))
                .args(["--mode", "verify", "--family", "quaternion", "--order", "8", "--involution", "classical"])
                .args(["--threads", &t.to_string()])
                .output()
                .expect("binary runs")
                .stdout
        })
        .collect();
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    let nonempty = outputs.iter().all(|o| !o.is_empty());
    Verdict::new(
        identical && nonempty,
        format!("Q8 classical report with {THREAD_COUNTS:?} workers: {} bytes each, identical {identical}", outputs[0].len()),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failures = 0;
    for (n, f) in criteria {
        let v = f();
        println!("criterion {n}: {} {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failures += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
