//! Release gate: one test per guaranteed behavior. Each test prints a single
//! pass/fail line so a captured log doubles as the checklist.

use ipx_core::catalog::{self, evaluate, evaluate_by_id, find_entry, fuzz, Case, ENTRIES};
use ipx_core::identity::{check_exact, check_float, random_exact_inputs, to_float, IdentityId};
use ipx_core::linalg::{inner, norm, norm_sq, orthonormal_basis, project_out, CVector, QVector, Vector};
use ipx_core::operator::{
    combine_dim, compose, dense_max_diff, projection, rank_one, selberg, QOperator,
    StructuredOperator,
};
use ipx_core::sample::gaussian_vector;
use ipx_core::search::{certify_equality, tightness_search};
use ipx_core::spectral::{spectral_norm, spectral_norm_dense, spectral_norm_gram};
use ipx_core::{GaussRational, TolerancePolicy};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gate(number: usize, description: &str, ok: bool, detail: &str) {
    println!(
        "criterion {number}: {} - {description}{}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { " | " },
        detail
    );
    assert!(ok, "criterion {number} failed: {description} | {detail}");
}

fn nonzero_gaussian<R: Rng>(dim: usize, rng: &mut R) -> CVector {
    loop {
        let v = gaussian_vector(dim, false, rng);
        if norm(&v) > 1e-6 {
            return v;
        }
    }
}

fn random_param<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

#[test]
fn criterion_1_exact_identity_suite() {
    let mut worst_float = 0.0_f64;
    let mut all_ok = true;
    for (k, id) in IdentityId::ALL.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        for i in 0..1000usize {
            let dim = 1 + i % 5;
            let inputs = random_exact_inputs(*id, dim, &mut rng);
            let exact = check_exact(&inputs).unwrap();
            all_ok &= exact.exact_pass;
            let float = check_float(&to_float(&inputs), 1e-9).unwrap();
            all_ok &= float.pass;
            if !exact.exact_pass || !float.pass {
                eprintln!(
                    "{:?} instance {i} dim {dim}: exact_pass={} float residual {:.3e} scale {:.3e}",
                    id, exact.exact_pass, float.residual, float.scale
                );
            }
            // SCALAR_MAX is an inequality; its signed residual is legitimately
            // large and negative, so it is excluded from the residual metric.
            if *id != IdentityId::ScalarMax {
                worst_float = worst_float.max(float.residual.abs() / float.scale);
            }
        }
    }
    gate(
        1,
        "7 identities x 1000 rational instances, dims 1-5: exact residual zero, float <= 1e-9*scale",
        all_ok,
        &format!("worst relative float residual {worst_float:.3e}"),
    );
}

#[test]
fn criterion_2_catalog_fuzz_soundness() {
    let policy = TolerancePolicy::default();
    let mut all_ok = true;
    let mut worst = ("", f64::NEG_INFINITY);
    for entry in ENTRIES {
        let dims: Vec<usize> = (entry.min_dim..=8).collect();
        let per_dim = 100_000usize.div_ceil(dims.len());
        let summary = fuzz(entry, per_dim, &dims, 42, &policy).unwrap();
        all_ok &= summary.pass && summary.samples >= 100_000;
        if summary.max_excess > worst.1 {
            worst = (entry.id, summary.max_excess);
        }
    }
    gate(
        2,
        "all 42 registry entries pass fuzzing with 1e5 samples each over feasible dims 1-8",
        all_ok,
        &format!("largest max_excess {:.3e} ({})", worst.1, worst.0),
    );
}

#[test]
fn criterion_3_link_by_link_orderings() {
    let policy = TolerancePolicy::default();
    let ids = [
        "SANDWICH_15",
        "TH_18",
        "TH_21",
        "TH_22",
        "PROP_EORTH",
        "LEMMA_PREV_CHAIN",
        "SELBERG_CS_REF",
        "COR_24",
    ];
    let mut all_ok = true;
    for id in ids {
        let entry = find_entry(id).unwrap();
        // Multi-term chains only: the intermediate links are the point here,
        // and evaluate() already tests every adjacent pair.
        all_ok &= entry.chain_names.len() >= 3;
        let dims: Vec<usize> = (entry.min_dim..=6).collect();
        let summary = fuzz(entry, 2000, &dims, 3, &policy).unwrap();
        all_ok &= summary.pass;
    }
    gate(
        3,
        "multi-link chains hold at every intermediate step for the 8 refinement entries",
        all_ok,
        "",
    );
}

#[test]
fn criterion_4_operator_norm_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut all_ok = true;
    let mut worst_selberg = 0.0_f64;
    for _ in 0..1000 {
        let dim = rng.gen_range(1..=8);
        let count = rng.gen_range(1..=5);
        let zs: Vec<CVector> = (0..count).map(|_| nonzero_gaussian(dim, &mut rng)).collect();
        let s = selberg(&zs).unwrap();
        let reflected = combine_dim(
            &[(Complex64::new(2.0, 0.0), &s)],
            Complex64::new(-1.0, 0.0),
            dim,
        )
        .unwrap();
        let ns = spectral_norm(&s);
        let nr = spectral_norm(&reflected);
        worst_selberg = worst_selberg.max(ns).max(nr);
        all_ok &= ns <= 1.0 + 1e-9 && nr <= 1.0 + 1e-9;
    }

    let mut worst_gap = 0.0_f64;
    for _ in 0..1000 {
        // dim >= 2 so -beta really is an eigenvalue; in dim 1 the projection
        // is the identity and the norm is just |alpha - beta|.
        let dim = rng.gen_range(2..=8);
        let x = nonzero_gaussian(dim, &mut rng);
        let x = x.scale(&Complex64::new(1.0 / norm(&x), 0.0));
        let (alpha, beta) = (random_param(&mut rng), random_param(&mut rng));
        let t = combine_dim(&[(alpha, &projection(&x).unwrap())], -beta, dim).unwrap();
        let expected = (alpha - beta).norm().max(beta.norm());
        let gap = (spectral_norm(&t) - expected).abs();
        worst_gap = worst_gap.max(gap);
        all_ok &= gap <= 1e-9;
    }
    gate(
        4,
        "|S_Z| and |2S_Z - I| <= 1 + 1e-9 over 1e3 sets; |alpha P_x - beta I| = max{|alpha-beta|,|beta|} within 1e-9 over 1e3 cases",
        all_ok,
        &format!("max Selberg norm {worst_selberg:.12}, max projection-norm gap {worst_gap:.3e}"),
    );
}

#[test]
fn criterion_5_gram_route_matches_dense_svd() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut all_ok = true;
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let dim = rng.gen_range(2..=6);
        let terms = rng.gen_range(1..=3);
        let mut op: StructuredOperator<Complex64> =
            combine_dim(&[], random_param(&mut rng), dim).unwrap();
        for _ in 0..terms {
            let u = gaussian_vector(dim, false, &mut rng);
            let v = gaussian_vector(dim, false, &mut rng);
            let term = rank_one(&u, &v).unwrap();
            op = combine_dim(
                &[(Complex64::new(1.0, 0.0), &op), (random_param(&mut rng), &term)],
                Complex64::new(0.0, 0.0),
                dim,
            )
            .unwrap();
        }
        let g = spectral_norm_gram(&op).unwrap();
        let d = spectral_norm_dense(&op);
        let gap = (g - d).abs();
        worst = worst.max(gap);
        all_ok &= gap <= 1e-8;
    }
    gate(
        5,
        "Gram-reduction spectral norm agrees with dense SVD within 1e-8 on 1e3 random structured operators",
        all_ok,
        &format!("worst disagreement {worst:.3e}"),
    );
}

/// S1 + S2 - 2 S2 S1 - I/2 = -2 (S2 - I/2)(S1 - I/2); the factors appear in
/// reverse application order since the left side carries S2 S1.
#[test]
fn criterion_6_half_shift_factorization() {
    let one = Complex64::new(1.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut all_ok = true;
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let dim = rng.gen_range(1..=6);
        let z1: Vec<CVector> = (0..rng.gen_range(1..=3))
            .map(|_| nonzero_gaussian(dim, &mut rng))
            .collect();
        let z2: Vec<CVector> = (0..rng.gen_range(1..=3))
            .map(|_| nonzero_gaussian(dim, &mut rng))
            .collect();
        let s1 = selberg(&z1).unwrap();
        let s2 = selberg(&z2).unwrap();
        let s2s1 = compose(&s2, &s1).unwrap();
        let lhs = combine_dim(
            &[(one, &s1), (one, &s2), (Complex64::new(-2.0, 0.0), &s2s1)],
            Complex64::new(-0.5, 0.0),
            dim,
        )
        .unwrap();
        let f1 = combine_dim(&[(one, &s1)], Complex64::new(-0.5, 0.0), dim).unwrap();
        let f2 = combine_dim(&[(one, &s2)], Complex64::new(-0.5, 0.0), dim).unwrap();
        let prod = compose(&f2, &f1).unwrap();
        let rhs =
            combine_dim(&[(Complex64::new(-2.0, 0.0), &prod)], Complex64::new(0.0, 0.0), dim)
                .unwrap();
        let gap = dense_max_diff(&lhs.dense(), &rhs.dense());
        worst = worst.max(gap);
        all_ok &= gap <= 1e-10;
    }

    // Same identity on the exact backend, with singleton sets so the Selberg
    // weights stay rational.
    let q_one = GaussRational::from_int(1);
    let q_half = GaussRational::from_ints(1, 2, 0, 1);
    let q_two = GaussRational::from_int(2);
    let mut exact_ok = true;
    for trial in 0..100i64 {
        let dim = 1 + (trial % 4) as usize;
        let qv = |offset: i64| -> QVector {
            Vector::new(
                (0..dim as i64)
                    .map(|k| {
                        GaussRational::from_ints(
                            (trial + offset + k) % 7 - 3,
                            1 + (trial + k) % 3,
                            (trial * 3 + offset - k) % 5 - 2,
                            1 + (offset + k) % 2,
                        )
                    })
                    .collect(),
            )
        };
        let (w, z) = (qv(1), qv(11));
        if w.is_zero() || z.is_zero() {
            continue;
        }
        let s1: QOperator = selberg(std::slice::from_ref(&w)).unwrap();
        let s2: QOperator = selberg(std::slice::from_ref(&z)).unwrap();
        let s2s1 = compose(&s2, &s1).unwrap();
        let neg = |c: &GaussRational| GaussRational::from_int(0) - c.clone();
        let lhs = combine_dim(
            &[(q_one.clone(), &s1), (q_one.clone(), &s2), (neg(&q_two), &s2s1)],
            neg(&q_half),
            dim,
        )
        .unwrap();
        let f1 = combine_dim(&[(q_one.clone(), &s1)], neg(&q_half), dim).unwrap();
        let f2 = combine_dim(&[(q_one.clone(), &s2)], neg(&q_half), dim).unwrap();
        let prod = compose(&f2, &f1).unwrap();
        let rhs = combine_dim(&[(neg(&q_two), &prod)], GaussRational::from_int(0), dim).unwrap();
        exact_ok &= lhs.dense() == rhs.dense();
    }
    gate(
        6,
        "S1 + S2 - 2 S2 S1 - I/2 factors as -2(S2 - I/2)(S1 - I/2): float within 1e-10, exact backend exactly",
        all_ok && exact_ok,
        &format!("worst float entry gap {worst:.3e}"),
    );
}

#[test]
fn criterion_7_tightness_attainability() {
    let policy = TolerancePolicy::default();
    let ids = ["CS", "BUZANO", "RICHARD", "RICHARD_SELBERG", "SELBERG", "FUJII_KUBO"];
    let mut all_ok = true;
    let mut report = String::new();
    for id in ids {
        let entry = find_entry(id).unwrap();
        let best = (2..=3)
            .map(|dim| {
                tightness_search(entry, 0, dim, 200, 42, &policy)
                    .unwrap()
                    .best_tightness
            })
            .fold(0.0_f64, f64::max);
        all_ok &= best >= 0.999;
        report.push_str(&format!("{id}={best:.6} "));
    }
    gate(
        7,
        "tightness_search reaches >= 0.999 for the six equality-attaining bounds (200 starts, dims 2-3, seed 42)",
        all_ok,
        report.trim_end(),
    );
}

#[test]
fn criterion_8_equality_characterization() {
    let policy = TolerancePolicy::default();
    let inv = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let base_a = Vector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let base_b = Vector::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let base_x = Vector::new(vec![inv, inv]);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut all_ok = true;
    let mut worst_residual = 0.0_f64;
    let mut worst_tightness = 1.0_f64;
    for _ in 0..100 {
        // A random 2x2 unitary from orthonormalizing a random frame; rotating
        // all three vectors preserves the equality configuration.
        let cols = loop {
            let frame = vec![
                gaussian_vector(2, false, &mut rng),
                gaussian_vector(2, false, &mut rng),
            ];
            let basis = orthonormal_basis(&frame, 1e-6);
            if basis.len() == 2 {
                break basis;
            }
        };
        let rotate = |v: &CVector| cols[0].scale(v.entry(0)).add(&cols[1].scale(v.entry(1)));
        let (a, b, x) = (rotate(&base_a), rotate(&base_b), rotate(&base_x));

        let cert = certify_equality(&a, &b, std::slice::from_ref(&x), &policy).unwrap();
        worst_residual = worst_residual.max(cert.residual);
        all_ok &= cert.holds && cert.residual <= 1e-9;

        let mut case = Case::empty();
        case.vectors.insert("a", a);
        case.vectors.insert("b", b);
        case.sets.push(vec![x]);
        let result = evaluate_by_id("TH_GEN", &case, &policy).unwrap();
        worst_tightness = worst_tightness.min(result.tightness);
        all_ok &= result.tightness >= 1.0 - 1e-9;
    }

    let mut false_positives = 0usize;
    for _ in 0..100 {
        let dim = rng.gen_range(2..=4);
        let a = nonzero_gaussian(dim, &mut rng);
        let b = nonzero_gaussian(dim, &mut rng);
        let zs: Vec<CVector> = (0..rng.gen_range(1..=3))
            .map(|_| nonzero_gaussian(dim, &mut rng))
            .collect();
        let cert = certify_equality(&a, &b, &zs, &policy).unwrap();
        if cert.holds {
            false_positives += 1;
        }
    }
    all_ok &= false_positives == 0;
    gate(
        8,
        "100 rotated equality triples certify with residual <= 1e-9 and tightness >= 1 - 1e-9; 100 random cases never certify",
        all_ok,
        &format!(
            "worst residual {worst_residual:.3e}, worst tightness deficit {:.3e}, false positives {false_positives}",
            1.0 - worst_tightness
        ),
    );
}

#[test]
fn criterion_9_cross_entry_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let close = |p: f64, q: f64| (p - q).abs() <= 1e-10 * p.abs().max(q.abs()).max(1.0);
    let mut all_ok = true;

    let richard = find_entry("RICHARD").unwrap();
    let kdm_17 = find_entry("KDM_17").unwrap();
    let th_18 = find_entry("TH_18").unwrap();
    let cor_19 = find_entry("COR_19").unwrap();
    let buzano = find_entry("BUZANO").unwrap();
    let prec_gen2 = find_entry("PREC_GEN2").unwrap();
    let richard_selberg = find_entry("RICHARD_SELBERG").unwrap();

    for _ in 0..1000 {
        let dim = rng.gen_range(2..=5);
        let a = gaussian_vector(dim, false, &mut rng);
        let b = nonzero_gaussian(dim, &mut rng);
        let x = nonzero_gaussian(dim, &mut rng);

        // The half-pivot bound is the alpha = 2 slice of the scaled family,
        // at half scale.
        let mut case = Case::empty();
        case.vectors.insert("a", a.clone());
        case.vectors.insert("b", b.clone());
        case.vectors.insert("x", x.clone());
        case.params.insert("alpha", Complex64::new(2.0, 0.0));
        case.params.insert("beta", Complex64::new(1.0, 0.0));
        let r = (richard.chain)(&case).unwrap();
        let k = (kdm_17.chain)(&case).unwrap();
        for (rv, kv) in r.iter().zip(&k) {
            all_ok &= close(2.0 * rv, *kv);
        }

        // At alpha = beta the squared defect bound collapses to the
        // unweighted corollary after dividing by |beta|^2.
        let beta = random_param(&mut rng);
        if beta.norm() > 1e-3 {
            case.params.insert("alpha", beta);
            case.params.insert("beta", beta);
            let t = (th_18.chain)(&case).unwrap();
            let c = (cor_19.chain)(&case).unwrap();
            for (tv, cv) in t.iter().zip(&c) {
                all_ok &= close(*tv, beta.norm_sqr() * cv);
            }
        }

        // The two-projection mix degenerates to Buzano's form (divided by
        // |w|^2) when the second projector is orthogonal to b.
        let z = loop {
            let raw = gaussian_vector(dim, false, &mut rng);
            let z = project_out(&raw, &b).unwrap();
            if norm(&z) > 1e-6 {
                break z;
            }
        };
        case.vectors.insert("w", x.clone());
        case.vectors.insert("z", z);
        let bu = (buzano.chain)(&case).unwrap();
        let pg = (prec_gen2.chain)(&case).unwrap();
        for (bv, pv) in bu.iter().zip(&pg) {
            all_ok &= close(*bv, norm_sq(&x) * pv);
        }

        // A singleton Selberg set {x} with unit x is exactly the rank-one
        // projection, so both statements coincide verbatim.
        let unit_x = x.scale(&Complex64::new(1.0 / norm(&x), 0.0));
        case.vectors.insert("x", unit_x);
        let r_unit = (richard.chain)(&case).unwrap();
        let rs = (richard_selberg.chain)(&case).unwrap();
        for (rv, sv) in r_unit.iter().zip(&rs) {
            all_ok &= close(*rv, *sv);
        }
    }
    gate(
        9,
        "four cross-entry reductions agree within 1e-10 on 1e3 shared random cases each",
        all_ok,
        "",
    );
}

// Sanity anchor used by several criteria above: the registry is complete and
// the catalog's own evaluation rejects an inconsistent case.
#[test]
fn registry_is_complete_and_consistent() {
    assert_eq!(ENTRIES.len(), 42);
    let policy = TolerancePolicy::default();
    let entry = find_entry("CS").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (_, case) = entry.plan.sample(2, &mut rng).unwrap();
    let result = evaluate(entry, &case, &policy).unwrap();
    assert!(result.pass);
    assert!(catalog::list_entries().iter().all(|e| e.id != "DEBUG_REVERSED_CS"));
    let s = selberg(&[Vector::new(vec![Complex64::new(1.0, 0.0)])]).unwrap();
    assert!((inner(&s.apply(&Vector::new(vec![Complex64::new(2.0, 0.0)])).unwrap(),
        &Vector::new(vec![Complex64::new(1.0, 0.0)])).unwrap().re - 2.0).abs() < 1e-12);
}
