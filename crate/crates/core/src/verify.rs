//! Verification harness: the acceptance criteria and per-module invariant
//! suites, runnable from the CLI and from the integration tests.
//!
//! Every check is deterministic (seeded sampling) and desk-scale; tolerances
//! and windows are pinned here.

use crate::admissible::{
    admissible_index, classify, counts, enumerate_admissible, m32_relaxed_base, singular_locus,
};
use crate::degen::{decompose_rel_via, decompose_semi, gr_rel, top_support_points, GrClass};
use crate::fusion32::{dimension_rep, fuse, fuse_by_resolution, fuse_pair, to_factor, Kind};
use crate::modlabel::{
    canonicalize, parse_label, positive_energy_flow_image, CanonicalLabel, CosetQ, ModuleLabel,
};
use crate::modularchar::{
    ensure_m32, eta_inv_fourth, standard_s_value, verify_modular_relations, verify_s_squared,
    verify_unitarity, CharacterPoint, ScopeError, StandardCharacter,
};
use crate::rootdata::{
    casimir_eigenvalues, central_charge, comega1, comega2, conformal_weight, d6_compose,
    pairing, rat, rho, Coweight, D6Element, Level, Rat, Weight,
};
use crate::torusfourier::{verify_comb_identity, COMB_GRID, NUMERIC_TOLERANCE};
use crate::verlinde::{
    relaxed_by_relaxed_closed_form, standard_fusion_coefficients, verify_d6_equivariance,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn m32() -> Level {
    Level::new(3, 2).unwrap()
}

fn random_typical_coset(rng: &mut ChaCha8Rng) -> CosetQ {
    loop {
        let d = *[4, 5, 7, 8, 9, 11].get(rng.gen_range(0..6)).unwrap();
        let a = Rat::new(rng.gen_range(0..3 * d), d);
        let b = Rat::new(rng.gen_range(0..3 * d), d);
        let c = CosetQ::new(Weight::new(a, b));
        if ModuleLabel::rel(m32_relaxed_base(), c, m32()).is_ok() {
            return c;
        }
    }
}

fn random_semi_label(rng: &mut ChaCha8Rng) -> CanonicalLabel {
    loop {
        let t = Rat::new(rng.gen_range(1..60), 60);
        if let Ok(m) = ModuleLabel::semi(m32_relaxed_base(), t, m32()) {
            return canonicalize(&m, m32());
        }
    }
}

fn random_rel_label(rng: &mut ChaCha8Rng) -> CanonicalLabel {
    let c = random_typical_coset(rng);
    canonicalize(&ModuleLabel::rel(m32_relaxed_base(), c, m32()).unwrap(), m32())
}

/// Independent oracle for η⁻⁴: count partitions with `colors` colours by
/// direct dynamic programming over part sizes.
pub fn colored_partition_counts(colors: usize, order: usize) -> Vec<BigInt> {
    let mut dp = vec![BigInt::zero(); order + 1];
    dp[0] = BigInt::one();
    for size in 1..=order {
        for _ in 0..colors {
            for n in size..=order {
                let add = dp[n - size].clone();
                dp[n] += add;
            }
        }
    }
    dp
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

/// Criterion 1: the M(3,2) spectrum.
pub fn criterion_spectrum() -> CheckResult {
    let lvl = m32();
    let name = "spectrum of M(3,2)";
    let adm = match enumerate_admissible(lvl) {
        Ok(a) => a,
        Err(e) => return check(name, false, e.to_string()),
    };
    let weights: Vec<Weight> = adm.iter().map(|a| a.weight).collect();
    let expected = [
        Weight::zero(),
        Weight::new(rat(-3, 2), Rat::zero()),
        Weight::new(Rat::zero(), rat(-3, 2)),
        rho().scale(rat(-1, 2)),
    ];
    let mut ok = weights.len() == 4 && expected.iter().all(|w| weights.contains(w));
    for w in expected {
        let d = conformal_weight(w, lvl);
        let want = if w == Weight::zero() {
            Rat::zero()
        } else {
            rat(-1, 2)
        };
        ok &= d == want;
    }
    let c = counts(lvl);
    ok &= (c.adm, c.fdim_top, c.sigma1, c.r2) == (4, 1, 1, 1);
    ok &= central_charge(lvl) == Rat::from_integer(-8);
    check(
        name,
        ok,
        "4 hw weights, one semirelaxed and one relaxed family, c = -8",
    )
}

/// Criterion 2: count formulas against brute enumeration for u ≤ 6, v ≤ 5.
pub fn criterion_counts() -> CheckResult {
    let name = "count formulas";
    let mut ok = true;
    let mut detail = String::new();
    for u in 3..=6 {
        for v in 1..=5 {
            if num_integer::gcd(u, v) != 1 {
                continue;
            }
            let lvl = Level::new(u, v).unwrap();
            let adm = enumerate_admissible(lvl).unwrap();
            let c = counts(lvl);
            let n_fdim = adm.iter().filter(|a| classify(a, lvl).fdim_top).count() as i64;
            let n_sigma = adm.iter().filter(|a| classify(a, lvl).in_sigma1).count() as i64;
            let n_r2 = adm.iter().filter(|a| classify(a, lvl).in_r2).count() as i64;
            let here = adm.len() as i64 == c.adm
                && n_fdim == c.fdim_top
                && n_sigma == c.sigma1
                && n_r2 == c.r2;
            if !here {
                ok = false;
                detail = format!("mismatch at M({u},{v})");
            }
        }
    }
    if ok {
        detail = "enumerated sizes equal the closed formulas on the grid".into();
    }
    check(name, ok, detail)
}

/// Criterion 3: double-intersection degenerations agree along both curves.
pub fn criterion_degenerations() -> CheckResult {
    let name = "degeneration consistency";
    let mut ok = true;
    let mut detail = String::new();
    for lvl in [m32(), Level::new(4, 3).unwrap()] {
        let idx = admissible_index(lvl).unwrap();
        for adm in idx.values() {
            if !classify(adm, lvl).in_r2 {
                continue;
            }
            let lam = adm.weight;
            let sing = singular_locus(adm, lvl).unwrap();
            let w1 = D6Element::w1();
            let w2 = D6Element::w2();
            let points = [
                lam,
                w1.apply_shifted(lam),
                w2.apply_shifted(w1.apply_shifted(lam)),
            ];
            for p in points {
                let coset = CosetQ::new(p);
                let curves = sing.curves_through(p);
                if curves.len() != 2 {
                    ok = false;
                    detail = format!("expected a double point at {p} in {lvl}");
                    continue;
                }
                let a = decompose_rel_via(lam, coset, curves[0], lvl);
                let b = decompose_rel_via(lam, coset, curves[1], lvl);
                match (a, b) {
                    (Ok(a), Ok(b)) if a == b && a.total_multiplicity() == 4 => {}
                    _ => {
                        ok = false;
                        detail = format!("routes disagree at {p} in {lvl}");
                    }
                }
            }
        }
    }
    if ok {
        detail = "both curve routes give the same four-term decompositions".into();
    }
    check(name, ok, detail)
}

/// Criterion 4: S-matrix unitarity and S² = conjugation, exactly.
pub fn criterion_unitarity() -> CheckResult {
    let ok = verify_unitarity(2) && verify_s_squared(2);
    check(
        "S-matrix unitarity and S^2",
        ok,
        "delta-reduced identities over flows in [-2,2]^2 with symbolic cosets",
    )
}

/// Criterion 5: Verlinde pipeline reproduces the closed relaxed rule.
pub fn criterion_verlinde() -> CheckResult {
    let name = "Verlinde reproduction";
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE57);
    let lvl = m32();
    for i in 0..50 {
        let mu = random_typical_coset(&mut rng);
        let mu2 = random_typical_coset(&mut rng);
        let got = match standard_fusion_coefficients(mu, mu2, lvl) {
            Ok(t) => t,
            Err(e) => return check(name, false, e.to_string()),
        };
        if got != relaxed_by_relaxed_closed_form(mu, mu2) || !got.all_nonnegative() {
            return check(name, false, format!("pair {i} disagrees"));
        }
    }
    check(name, true, "50 random coset pairs, exact table equality")
}

/// Criterion 6: fusion-ring harness.
pub fn criterion_fusion_harness() -> CheckResult {
    let name = "fusion ring harness";
    let lvl = m32();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF051);
    let rho_label = canonicalize(
        &ModuleLabel::hw(rho().scale(rat(-1, 2)), lvl).unwrap(),
        lvl,
    );
    let vac = canonicalize(&ModuleLabel::hw(Weight::zero(), lvl).unwrap(), lvl);
    let conj = D6Element::conjugation();

    // closed rules against resolutions, 25 random parameters each
    for rule in 0..7 {
        for _ in 0..25 {
            let (a, b) = match rule {
                0 => (random_semi_label(&mut rng), random_rel_label(&mut rng)),
                1 => (random_semi_label(&mut rng), random_semi_label(&mut rng)),
                2 => (rho_label, random_semi_label(&mut rng)),
                3 => (rho_label, rho_label),
                4 => {
                    let s = random_semi_label(&mut rng);
                    let t = canonicalize(
                        &random_semi_label(&mut rng).label().twisted(D6Element::w2()),
                        lvl,
                    );
                    (s, t)
                }
                5 => {
                    let s = random_semi_label(&mut rng);
                    let t = canonicalize(
                        &random_semi_label(&mut rng)
                            .label()
                            .twisted(D6Element::w12()),
                        lvl,
                    );
                    (s, t)
                }
                _ => (
                    rho_label,
                    canonicalize(&rho_label.label().twisted(conj), lvl),
                ),
            };
            let closed = fuse_pair(&a, &b, lvl);
            let resolved = fuse_by_resolution(&a, &b, lvl);
            match (closed, resolved) {
                (Ok(x), Ok(y)) if x == y && x.all_nonnegative() => {}
                _ => return check(name, false, format!("rule {rule} disagrees for {a} x {b}")),
            }
        }
    }

    // associativity on 40 random triples over all core types
    let mut pool: Vec<GrClass> = vec![GrClass::of(rho_label), GrClass::of(vac)];
    for _ in 0..4 {
        pool.push(GrClass::of(random_semi_label(&mut rng)));
        pool.push(GrClass::of(random_rel_label(&mut rng)));
        pool.push(GrClass::of(canonicalize(
            &random_semi_label(&mut rng).label().twisted(conj),
            lvl,
        )));
    }
    for _ in 0..40 {
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let z = &pool[rng.gen_range(0..pool.len())];
        let l = fuse(&fuse(x, y, lvl).unwrap(), z, lvl).unwrap();
        let r = fuse(x, &fuse(y, z, lvl).unwrap(), lvl).unwrap();
        if l != r {
            return check(name, false, "associativity failure");
        }
    }

    // dimension homomorphism on sampled products
    for x in &pool {
        for y in &pool {
            let p = fuse(x, y, lvl).unwrap();
            if dimension_rep(&p, lvl).unwrap()
                != dimension_rep(x, lvl).unwrap() * dimension_rep(y, lvl).unwrap()
            {
                return check(name, false, "dimension representation not multiplicative");
            }
            if !p.all_nonnegative() {
                return check(name, false, "negative multiplicity");
            }
        }
    }

    // vacuum multiplicities in the conjugate products
    let s = random_semi_label(&mut rng);
    let cs = canonicalize(&s.label().twisted(conj), lvl);
    let r = random_rel_label(&mut rng);
    let cr = canonicalize(&r.label().twisted(conj), lvl);
    let ok = fuse_pair(&s, &cs, lvl).unwrap().multiplicity(&vac) == 2
        && fuse_pair(&r, &cr, lvl).unwrap().multiplicity(&vac) == 6;
    if !ok {
        return check(name, false, "vacuum multiplicities in conjugate products");
    }
    check(
        name,
        true,
        "resolutions, associativity, dimensions and conjugate products all agree",
    )
}

/// Criterion 7: η⁻⁴ against the colored-partition oracle through order 50.
pub fn criterion_q_series() -> CheckResult {
    let name = "eta^-4 q-series";
    let s = eta_inv_fourth(50);
    let oracle = colored_partition_counts(4, 50);
    let ok = s.leading_exponent == rat(-1, 6)
        && s.coefficients == oracle
        && s.coefficients[0] == BigInt::one();
    check(
        name,
        ok,
        "pentagonal-inversion coefficients equal the DP oracle; ground multiplicity 1",
    )
}

/// Criterion 8: numeric cross-checks at tolerance 1e−10.
pub fn criterion_numeric() -> CheckResult {
    let name = "numeric cross-checks";
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a3e);
    let lvl = m32();
    // modular relations at 20 random points
    for _ in 0..20 {
        let pt = CharacterPoint {
            theta: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            zeta: (
                Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
                Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            ),
            tau: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..1.8)),
        };
        if !verify_modular_relations(&pt, NUMERIC_TOLERANCE) {
            return check(name, false, "modular relation failure");
        }
    }
    // comb identity on the finite grid
    if !verify_comb_identity(COMB_GRID, NUMERIC_TOLERANCE) {
        return check(name, false, "comb identity failure");
    }
    // flow covariance of standard characters at 20 random points
    let coset = CosetQ::new(Weight::new(rat(1, 4), rat(1, 5)));
    for _ in 0..20 {
        let xi = Coweight::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let delta = Coweight::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let theta = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
        let test = (
            Rat::from_integer(rng.gen_range(-2..=2)),
            Rat::from_integer(rng.gen_range(-2..=2)),
        );
        let flowed = StandardCharacter::new(xi + delta, coset, lvl).unwrap();
        let base = StandardCharacter::new(xi, coset, lvl).unwrap();
        let lhs = flowed.pairing_numeric(test, theta, tau);
        let zeta = (
            Complex64::from(*test.0.numer() as f64) - tau * (xi.c1 + delta.c1) as f64,
            Complex64::from(*test.1.numer() as f64) - tau * (xi.c2 + delta.c2) as f64,
        );
        let dz = (
            Complex64::from(delta.c1 as f64),
            Complex64::from(delta.c2 as f64),
        );
        let kzd = (2.0 * zeta.0 * dz.0 + zeta.0 * dz.1 + zeta.1 * dz.0 + 2.0 * zeta.1 * dz.1) / 3.0;
        let kdd = (2.0 * dz.0 * dz.0 + 2.0 * dz.0 * dz.1 + 2.0 * dz.1 * dz.1) / 3.0;
        let rhs = base.prefactor_numeric(theta + kzd + kdd * tau / 2.0, (zeta.0 + tau * dz.0, zeta.1 + tau * dz.1), tau);
        if (lhs - rhs).norm() > NUMERIC_TOLERANCE {
            return check(name, false, "flow covariance failure");
        }
    }
    check(
        name,
        true,
        "S^4 = 1, (ST)^3 = S^2, comb identity, flow covariance (1e-10)",
    )
}

/// Criterion 9: scope guard for modular/fusion data away from (3,2).
pub fn criterion_scope_guard() -> CheckResult {
    let name = "scope guard";
    let mut ok = true;
    for (u, v) in [(4, 3), (5, 2), (5, 3), (7, 2)] {
        let lvl = Level::new(u, v).unwrap();
        ok &= matches!(
            ensure_m32(lvl),
            Err(ScopeError::LinearlyDependentCharacters { .. })
        );
        let coset = CosetQ::new(Weight::zero());
        ok &= standard_fusion_coefficients(coset, coset, lvl).is_err();
        ok &= StandardCharacter::new(Coweight::zero(), coset, lvl).is_err();
        if let Ok(idx) = admissible_index(lvl) {
            if let Some(first) = idx.values().next() {
                if let Ok(label) = ModuleLabel::hw(first.weight, lvl) {
                    let c = canonicalize(&label, lvl);
                    ok &= fuse_pair(&c, &c, lvl).is_err();
                }
            }
        }
    }
    ok &= matches!(
        ensure_m32(Level::new(4, 1).unwrap()),
        Err(ScopeError::IntegrableLevel { .. })
    );
    check(
        name,
        ok,
        "fusion and S-matrix construction refused off (3,2) with the linear-dependence error",
    )
}

/// The nine acceptance criteria in order.
pub fn acceptance_criteria() -> Vec<CheckResult> {
    vec![
        criterion_spectrum(),
        criterion_counts(),
        criterion_degenerations(),
        criterion_unitarity(),
        criterion_verlinde(),
        criterion_fusion_harness(),
        criterion_q_series(),
        criterion_numeric(),
        criterion_scope_guard(),
    ]
}

// ---------------------------------------------------------------------------
// per-module suites
// ---------------------------------------------------------------------------

fn suite_rootdata() -> Vec<CheckResult> {
    let mut out = vec![];
    // Cartan-matrix consistency
    let mut ok = true;
    let alphas = [crate::rootdata::alpha1(), crate::rootdata::alpha2()];
    let cos = [comega1(), comega2()];
    for (i, a) in alphas.iter().enumerate() {
        for (j, c) in cos.iter().enumerate() {
            ok &= pairing(*a, *c) == Rat::from_integer((i == j) as i64);
        }
    }
    ok &= crate::rootdata::killing_dual(alphas[0], alphas[0]) == Rat::from_integer(2);
    ok &= crate::rootdata::killing_dual(alphas[0], alphas[1]) == Rat::from_integer(-1);
    out.push(check("cartan consistency", ok, "pairings and Gram entries"));

    // group axioms, exhaustive
    let all = D6Element::all();
    let mut ok = all.len() == 12;
    for &g in &all {
        for &h in &all {
            for &k in &all {
                ok &= d6_compose(d6_compose(g, h), k) == d6_compose(g, d6_compose(h, k));
            }
        }
    }
    out.push(check("D6 group axioms", ok, "12^3 associativity"));

    // action compatibility and casimir invariances on a rational sample
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ok = true;
    for _ in 0..24 {
        let lam = Weight::new(
            Rat::new(rng.gen_range(-12..12), rng.gen_range(1..6)),
            Rat::new(rng.gen_range(-12..12), rng.gen_range(1..6)),
        );
        for &g in &all {
            for &h in &all {
                ok &= d6_compose(g, h).apply(lam) == g.apply(h.apply(lam));
            }
        }
        let (q, c) = casimir_eigenvalues(lam);
        for w in [D6Element::w1(), D6Element::w2(), D6Element::w3()] {
            let (qw, cw) = casimir_eigenvalues(w.apply_shifted(lam));
            ok &= q == qw && c == cw;
        }
        let (qc, cc) = casimir_eigenvalues(D6Element::conjugation().apply_shifted(lam));
        ok &= q == qc && c == -cc;
    }
    out.push(check(
        "actions and central characters",
        ok,
        "group action, shifted Weyl invariance, cubic sign flip",
    ));
    out
}

fn suite_admissible() -> Vec<CheckResult> {
    let mut out = vec![criterion_spectrum(), criterion_counts()];
    // bijections
    let mut ok = true;
    for u in 3..=5i64 {
        for v in 1..=5i64 {
            if num_integer::gcd(u, v) != 1 {
                continue;
            }
            let lvl = Level::new(u, v).unwrap();
            let adm = enumerate_admissible(lvl).unwrap();
            let reflected: Vec<Weight> = adm
                .iter()
                .filter(|a| a.adm_type == crate::admissible::AdmType::Reflected)
                .map(|a| a.weight)
                .collect();
            for a in &adm {
                let t = classify(a, lvl);
                if t.in_sigma1 {
                    ok &= reflected.contains(&D6Element::w1().apply_shifted(a.weight));
                }
                if t.in_r2 {
                    let w1l = D6Element::w1().apply_shifted(a.weight);
                    let w21l = D6Element::w2().apply_shifted(w1l);
                    ok &= adm
                        .iter()
                        .any(|b| b.weight == w1l && classify(b, lvl).in_r3);
                    ok &= adm
                        .iter()
                        .any(|b| b.weight == w21l && classify(b, lvl).in_r1);
                }
            }
        }
    }
    out.push(check(
        "shifted-Weyl correspondences",
        ok,
        "w1: Sigma1 -> reflected, w1/w2w1: R2 -> R3/R1",
    ));
    out
}

fn suite_labels() -> Vec<CheckResult> {
    let lvl = m32();
    let mut out = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    // canonical idempotence and grammar round-trip on random labels
    let mut ok = true;
    for _ in 0..40 {
        let base = match rng.gen_range(0..3) {
            0 => random_rel_label(&mut rng),
            1 => random_semi_label(&mut rng),
            _ => canonicalize(
                &ModuleLabel::hw(rho().scale(rat(-1, 2)), lvl).unwrap(),
                lvl,
            ),
        };
        let g = D6Element::all()[rng.gen_range(0..12)];
        let xi = Coweight::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let m = base.label().twisted(g).flowed(xi);
        let c = canonicalize(&m, lvl);
        ok &= canonicalize(c.label(), lvl) == c;
        let printed = c.label().to_string();
        ok &= parse_label(&printed, lvl).map(|p| p == *c.label()).unwrap_or(false);
    }
    out.push(check(
        "canonicalisation and grammar",
        ok,
        "idempotence and parse/print round-trip",
    ));

    // the heptagon of the vacuum and its boundary
    let hw0 = ModuleLabel::hw(Weight::zero(), lvl).unwrap();
    let mut ok = true;
    for xi in crate::rootdata::unit_coweights() {
        ok &= positive_energy_flow_image(&hw0, xi, lvl).is_some();
    }
    for xi in [Coweight::new(2, 0), Coweight::new(1, 1), Coweight::new(0, -2)] {
        ok &= positive_energy_flow_image(&hw0, xi, lvl).is_none();
    }
    let sm = ModuleLabel::semi(m32_relaxed_base(), rat(1, 5), lvl).unwrap();
    ok &= positive_energy_flow_image(&sm, -comega2(), lvl).is_some();
    ok &= positive_energy_flow_image(&sm, comega2(), lvl).is_none();
    out.push(check(
        "positive-energy flow orbits",
        ok,
        "vacuum heptagon closes; semirelaxed flows only by -omega2",
    ));
    out
}

fn suite_degen() -> Vec<CheckResult> {
    let lvl = m32();
    let mut out = vec![criterion_degenerations()];
    // representative independence and support bookkeeping
    let fam = m32_relaxed_base();
    let mu = fam + crate::rootdata::alpha1().scale(rat(1, 3));
    let base = crate::degen::decompose_rel(fam, CosetQ::new(mu), lvl);
    let shifted = crate::degen::decompose_rel(
        fam,
        CosetQ::new(mu + crate::rootdata::alpha2()),
        lvl,
    );
    let ok = matches!((&base, &shifted), (Ok(a), Ok(b)) if a == b);
    out.push(check(
        "curve-representative independence",
        ok,
        "decomposition unchanged under root-lattice shifts of the parameter",
    ));

    let dec = decompose_semi(fam, Rat::zero(), lvl).unwrap();
    let mut tiles = std::collections::BTreeMap::new();
    for (label, mult) in dec.iter() {
        for p in top_support_points(label.label(), 4) {
            *tiles.entry(p).or_insert(0i64) += mult;
        }
    }
    let strip_ok = tiles.values().all(|m| *m == 1);
    out.push(check(
        "support bookkeeping",
        strip_ok,
        "summand supports tile the family support with multiplicity one",
    ));
    out
}

fn suite_modular() -> Vec<CheckResult> {
    let mut out = vec![
        criterion_unitarity(),
        criterion_q_series(),
        criterion_numeric(),
        criterion_scope_guard(),
    ];
    // standard S symmetry
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut ok = true;
    for _ in 0..20 {
        let mu = Weight::new(
            Rat::new(rng.gen_range(-8..8), rng.gen_range(1..6)),
            Rat::new(rng.gen_range(-8..8), rng.gen_range(1..6)),
        );
        let mu2 = Weight::new(
            Rat::new(rng.gen_range(-8..8), rng.gen_range(1..6)),
            Rat::new(rng.gen_range(-8..8), rng.gen_range(1..6)),
        );
        let xi = Coweight::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let xi2 = Coweight::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        ok &= standard_s_value(xi, mu, xi2, mu2) == standard_s_value(xi2, mu2, xi, mu);
    }
    out.push(check(
        "standard S symmetry",
        ok,
        "entry symmetric under exchanging primed and unprimed labels",
    ));
    out
}

fn suite_verlinde() -> Vec<CheckResult> {
    let mut out = vec![criterion_verlinde()];
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let lvl = m32();
    let mu = random_typical_coset(&mut rng);
    let mu2 = random_typical_coset(&mut rng);
    let mut ok = true;
    for g in D6Element::all() {
        ok &= verify_d6_equivariance(mu, mu2, g, lvl).unwrap_or(false);
    }
    out.push(check(
        "Verlinde equivariance",
        ok,
        "D6-mapped tables equal recomputation with twisted inputs",
    ));
    out
}

fn suite_fusion() -> Vec<CheckResult> {
    let lvl = m32();
    let mut out = vec![criterion_fusion_harness()];
    // typical fusion equals the Verlinde table
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut ok = true;
    for _ in 0..10 {
        let a = random_rel_label(&mut rng);
        let b = random_rel_label(&mut rng);
        let (fa, fb) = (to_factor(&a, lvl).unwrap(), to_factor(&b, lvl).unwrap());
        let (Kind::Rel { coset: ca }, Kind::Rel { coset: cb }) = (fa.kind, fb.kind) else {
            ok = false;
            continue;
        };
        let table = standard_fusion_coefficients(ca, cb, lvl).unwrap();
        let mut expect = GrClass::zero();
        for (f, (shift, m)) in &table.entries {
            expect.add_class(
                &gr_rel(m32_relaxed_base(), *shift, lvl)
                    .unwrap()
                    .flowed(*f, lvl)
                    .scaled(*m),
            );
        }
        ok &= fuse_pair(&a, &b, lvl).unwrap() == expect;
    }
    out.push(check(
        "typical fusion equals Verlinde",
        ok,
        "relaxed-by-relaxed products match the delta-reduced pipeline",
    ));
    // unit behaviour
    let vac = canonicalize(&ModuleLabel::hw(Weight::zero(), lvl).unwrap(), lvl);
    let x = GrClass::of(random_semi_label(&mut rng));
    let ok = fuse(&GrClass::of(vac), &x, lvl).unwrap() == x;
    out.push(check("vacuum is the unit", ok, "Gr L(0) fuses trivially"));
    out
}

/// Names accepted by `run_suite`.
pub const SUITES: [&str; 8] = [
    "rootdata",
    "admissible",
    "labels",
    "degen",
    "modular",
    "verlinde",
    "fusion",
    "all",
];

pub fn run_suite(name: &str) -> Option<Vec<CheckResult>> {
    let mut out = vec![];
    match name {
        "rootdata" => out.extend(suite_rootdata()),
        "admissible" => out.extend(suite_admissible()),
        "labels" => out.extend(suite_labels()),
        "degen" => out.extend(suite_degen()),
        "modular" => out.extend(suite_modular()),
        "verlinde" => out.extend(suite_verlinde()),
        "fusion" => out.extend(suite_fusion()),
        "all" => {
            out.extend(suite_rootdata());
            out.extend(suite_admissible());
            out.extend(suite_labels());
            out.extend(suite_degen());
            out.extend(suite_modular());
            out.extend(suite_verlinde());
            out.extend(suite_fusion());
        }
        _ => return None,
    }
    Some(out)
}
