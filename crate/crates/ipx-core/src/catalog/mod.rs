//! Machine-checkable registry of inner-product inequalities. Each entry is a
//! sampling plan plus an ordered chain of real expressions; checking an entry
//! means evaluating the chain and asserting e0 <= e1 <= ... within tolerance.

pub mod case;
pub mod entries;

use num_complex::Complex64;

pub use case::{Case, Layout, ParamPlan, SamplePlan, SetPlan, VecSpec, WeightPlan};
pub use entries::{EntryDef, DEBUG_FALSE_ENTRY, ENTRIES};

use crate::error::CoreError;
use crate::linalg::{inner, norm, project_out};
use crate::par;
use crate::sample::rng_for;
use crate::scalar::{approx_le, TolerancePolicy};

/// Slack for re-checking constraints the sampler enforced in double precision.
const CONSTRAINT_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub entry: String,
    pub chain: Vec<f64>,
    /// (link index, e_i - e_{i+1}) for every link violated beyond tolerance.
    pub violations: Vec<(usize, f64)>,
    pub pass: bool,
    /// max over links of e_i/e_{i+1}; 1 means some bound is attained.
    pub tightness: f64,
}

#[derive(Debug, Clone)]
pub struct FuzzSummary {
    pub entry: String,
    pub samples: u64,
    pub max_excess: f64,
    pub max_tightness: f64,
    pub seed: u64,
    pub pass: bool,
}

pub fn list_entries() -> &'static [EntryDef] {
    ENTRIES
}

/// Registry lookup; also resolves the synthetic failure fixture, which
/// `list_entries` deliberately omits.
pub fn find_entry(id: &str) -> Result<&'static EntryDef, CoreError> {
    if id == DEBUG_FALSE_ENTRY.id {
        return Ok(&DEBUG_FALSE_ENTRY);
    }
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CoreError::UnknownEntry(id.to_string()))
}

/// Ratio of a chain link, with conventions that keep degenerate samples from
/// producing spurious infinities: tiny or negative denominators count as 0,
/// negative numerators clamp to 0.
pub fn link_tightness(lo: f64, hi: f64) -> f64 {
    if hi <= 1e-12 {
        0.0
    } else {
        (lo / hi).max(0.0)
    }
}

pub fn chain_tightness(chain: &[f64]) -> f64 {
    chain
        .windows(2)
        .map(|w| link_tightness(w[0], w[1]))
        .fold(0.0, f64::max)
}

pub fn chain_excess(chain: &[f64]) -> f64 {
    chain
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::NEG_INFINITY, f64::max)
}

fn violation(entry: &str, detail: String) -> CoreError {
    CoreError::ConstraintViolation {
        entry: entry.to_string(),
        detail,
    }
}

/// Re-check a case against the entry's declared signature. Violations are
/// errors (bad input), never chain failures.
pub fn validate(entry: &EntryDef, case: &Case) -> Result<(), CoreError> {
    let plan = &entry.plan;
    let mut dim = None;
    let mut check_dim = |d: usize| -> Result<(), CoreError> {
        match dim {
            None => {
                dim = Some(d);
                Ok(())
            }
            Some(expected) if expected == d => Ok(()),
            Some(expected) => Err(CoreError::DimensionMismatch(expected, d)),
        }
    };

    for spec in plan.vecs {
        let v = case
            .vectors
            .get(spec.name)
            .ok_or_else(|| violation(entry.id, format!("missing vector '{}'", spec.name)))?;
        check_dim(v.dim())?;
        if spec.real && !v.entries().iter().all(|e| e.im.abs() <= CONSTRAINT_TOL) {
            return Err(violation(entry.id, format!("'{}' must be real", spec.name)));
        }
        match spec.kind {
            case::VecKind::Free => {}
            case::VecKind::NonZero => {
                if norm(v) <= CONSTRAINT_TOL {
                    return Err(violation(entry.id, format!("'{}' must be nonzero", spec.name)));
                }
            }
            case::VecKind::Unit => {
                if (norm(v) - 1.0).abs() > CONSTRAINT_TOL {
                    return Err(violation(entry.id, format!("'{}' must be unit", spec.name)));
                }
            }
        }
        for other in spec.orth_to {
            let t = case.vec(other);
            if inner(v, t)?.norm() > CONSTRAINT_TOL * (1.0 + norm(v) * norm(t)) {
                return Err(violation(
                    entry.id,
                    format!("'{}' must be orthogonal to '{other}'", spec.name),
                ));
            }
        }
        if spec.orth_to_sets {
            for (si, set) in case.sets.iter().enumerate() {
                for (zi, z) in set.iter().enumerate() {
                    if inner(v, z)?.norm() > CONSTRAINT_TOL * (1.0 + norm(v) * norm(z)) {
                        return Err(violation(
                            entry.id,
                            format!("'{}' must be orthogonal to set {si} vector {zi}", spec.name),
                        ));
                    }
                }
            }
        }
        if let Some(target) = spec.inner_one {
            let t = case.vec(target);
            if (inner(v, t)? - Complex64::new(1.0, 0.0)).norm() > CONSTRAINT_TOL {
                return Err(violation(
                    entry.id,
                    format!("'<{}, {target}>' must equal 1", spec.name),
                ));
            }
        }
        if let Some(other) = spec.not_prop {
            let t = case.vec(other);
            let residual = project_out(v, t)?;
            if norm(&residual) < CONSTRAINT_TOL * norm(v) {
                return Err(violation(
                    entry.id,
                    format!("'{}' must not be proportional to '{other}'", spec.name),
                ));
            }
        }
    }

    let get = |name: &str| -> Result<Complex64, CoreError> {
        case.params
            .get(name)
            .copied()
            .ok_or_else(|| violation(entry.id, format!("missing parameter '{name}'")))
    };
    match plan.params {
        ParamPlan::None => {}
        ParamPlan::AlphaBetaFree => {
            get("alpha")?;
            get("beta")?;
        }
        ParamPlan::AlphaFree => {
            get("alpha")?;
            let beta = get("beta")?;
            if (beta - Complex64::new(1.0, 0.0)).norm() > CONSTRAINT_TOL {
                return Err(violation(entry.id, "beta must equal 1".into()));
            }
        }
        ParamPlan::Sandwich => {
            let (alpha, beta) = (get("alpha")?, get("beta")?);
            if beta.norm() <= CONSTRAINT_TOL {
                return Err(violation(entry.id, "beta must be nonzero".into()));
            }
            if (alpha - beta).norm() < beta.norm() * (1.0 - CONSTRAINT_TOL) {
                return Err(violation(entry.id, "|alpha - beta| >= |beta| required".into()));
            }
        }
        ParamPlan::ContractionTowardBeta => {
            let (alpha, beta) = (get("alpha")?, get("beta")?);
            if beta.norm() <= CONSTRAINT_TOL {
                return Err(violation(entry.id, "beta must be nonzero".into()));
            }
            let gap = (alpha - beta).norm();
            if gap <= 0.0 {
                return Err(violation(entry.id, "alpha must differ from beta".into()));
            }
            if gap > beta.norm() * (1.0 + CONSTRAINT_TOL) {
                return Err(violation(entry.id, "|alpha - beta| <= |beta| required".into()));
            }
        }
        ParamPlan::MaxNonZero => {
            let (alpha, beta) = (get("alpha")?, get("beta")?);
            if (alpha - beta).norm().max(beta.norm()) <= CONSTRAINT_TOL {
                return Err(violation(
                    entry.id,
                    "max{|alpha - beta|, |beta|} must be nonzero".into(),
                ));
            }
        }
        ParamPlan::BetaNonZero => {
            get("alpha")?;
            if get("beta")?.norm() <= CONSTRAINT_TOL {
                return Err(violation(entry.id, "beta must be nonzero".into()));
            }
        }
    }

    match plan.sets {
        SetPlan::None => {
            if !case.sets.is_empty() {
                return Err(violation(entry.id, "entry takes no vector sets".into()));
            }
        }
        SetPlan::One { .. } => {
            if case.sets.len() != 1 {
                return Err(violation(entry.id, "entry takes exactly one vector set".into()));
            }
        }
        SetPlan::Many { .. } => {
            if case.sets.is_empty() {
                return Err(violation(entry.id, "entry needs at least one vector set".into()));
            }
        }
    }
    for (si, set) in case.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(violation(entry.id, format!("set {si} is empty")));
        }
        for (zi, z) in set.iter().enumerate() {
            check_dim(z.dim())?;
            if norm(z) <= CONSTRAINT_TOL {
                return Err(violation(entry.id, format!("set {si} vector {zi} is zero")));
            }
        }
    }

    match plan.weights {
        WeightPlan::None => {}
        WeightPlan::Disk => {
            if case.weights.len() != case.sets.len() {
                return Err(violation(entry.id, "one weight per set required".into()));
            }
        }
        WeightPlan::ScaledProduct => {
            if case.weights.len() != case.sets.len() {
                return Err(violation(entry.id, "one weight per set required".into()));
            }
            let n = case.weights.len() as i32;
            let prod: Complex64 = case.weights.iter().product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let target = Complex64::new(sign * 2f64.powi(n - 1), 0.0);
            if (prod - target).norm() > CONSTRAINT_TOL * target.norm() {
                return Err(violation(
                    entry.id,
                    "(-1)^n prod z_k = 2^(n-1) required".into(),
                ));
            }
        }
        WeightPlan::Simplex => {
            if case.weights.len() != case.sets.len() {
                return Err(violation(entry.id, "one weight per set required".into()));
            }
            let mut total = 0.0;
            for z in &case.weights {
                if z.im.abs() > CONSTRAINT_TOL || z.re < -CONSTRAINT_TOL {
                    return Err(violation(
                        entry.id,
                        "sum z_k = sum |z_k| = 1 forces nonnegative real weights".into(),
                    ));
                }
                total += z.re;
            }
            if (total - 1.0).abs() > CONSTRAINT_TOL {
                return Err(violation(entry.id, "weights must sum to 1".into()));
            }
        }
    }

    Ok(())
}

pub fn evaluate(
    entry: &EntryDef,
    case: &Case,
    policy: &TolerancePolicy,
) -> Result<CheckResult, CoreError> {
    validate(entry, case)?;
    let chain = (entry.chain)(case)?;
    debug_assert_eq!(chain.len(), entry.chain_names.len());
    if chain.iter().any(|v| !v.is_finite()) {
        return Err(CoreError::NonFinite);
    }
    let scale = chain.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut violations = Vec::new();
    for (i, w) in chain.windows(2).enumerate() {
        if !approx_le(w[0], w[1], scale, policy)? {
            violations.push((i, w[0] - w[1]));
        }
    }
    Ok(CheckResult {
        entry: entry.id.to_string(),
        pass: violations.is_empty(),
        tightness: chain_tightness(&chain),
        chain,
        violations,
    })
}

pub fn evaluate_by_id(
    id: &str,
    case: &Case,
    policy: &TolerancePolicy,
) -> Result<CheckResult, CoreError> {
    evaluate(find_entry(id)?, case, policy)
}

#[derive(Clone)]
struct FuzzAcc {
    samples: u64,
    max_excess: f64,
    max_tightness: f64,
    pass: bool,
    /// Lowest-index sampling/evaluation error, if any (kept for determinism
    /// under unordered parallel reduction).
    err: Option<(u64, String)>,
}

impl FuzzAcc {
    fn empty() -> Self {
        FuzzAcc {
            samples: 0,
            max_excess: f64::NEG_INFINITY,
            max_tightness: 0.0,
            pass: true,
            err: None,
        }
    }

    fn merge(a: Self, b: Self) -> Self {
        FuzzAcc {
            samples: a.samples + b.samples,
            max_excess: a.max_excess.max(b.max_excess),
            max_tightness: a.max_tightness.max(b.max_tightness),
            pass: a.pass && b.pass,
            err: match (a.err, b.err) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            },
        }
    }
}

/// Randomized soundness check: n constrained samples per dimension, evaluated
/// in parallel. Deterministic for a given seed regardless of worker count —
/// each sample's generator is derived from (seed, entry, dim, index) and the
/// reduction is order-insensitive.
pub fn fuzz(
    entry: &EntryDef,
    n: usize,
    dims: &[usize],
    seed: u64,
    policy: &TolerancePolicy,
) -> Result<FuzzSummary, CoreError> {
    if n == 0 || dims.is_empty() {
        return Err(CoreError::InfeasibleConstraints(
            "fuzz needs n >= 1 and at least one dimension".into(),
        ));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < entry.min_dim) {
        return Err(CoreError::InfeasibleConstraints(format!(
            "{} needs dimension >= {}, got {d}",
            entry.id, entry.min_dim
        )));
    }

    let mut total = FuzzAcc::empty();
    for &dim in dims {
        let per_dim = par::map_reduce(
            n,
            |i| {
                let mut rng = rng_for(seed, entry.id, dim as u64, i as u64);
                let sampled = entry
                    .plan
                    .sample(dim, &mut rng)
                    .and_then(|(_, case)| evaluate(entry, &case, policy));
                match sampled {
                    Ok(result) => FuzzAcc {
                        samples: 1,
                        max_excess: chain_excess(&result.chain),
                        max_tightness: result.tightness,
                        pass: result.pass,
                        err: None,
                    },
                    Err(e) => FuzzAcc {
                        samples: 1,
                        max_excess: f64::NEG_INFINITY,
                        max_tightness: 0.0,
                        pass: false,
                        err: Some((i as u64, e.to_string())),
                    },
                }
            },
            FuzzAcc::empty(),
            FuzzAcc::merge,
        );
        total = FuzzAcc::merge(total, per_dim);
    }

    if let Some((i, msg)) = total.err {
        return Err(CoreError::InfeasibleConstraints(format!(
            "{} sample {i} failed: {msg}",
            entry.id
        )));
    }
    Ok(FuzzSummary {
        entry: entry.id.to_string(),
        samples: total.samples,
        max_excess: total.max_excess,
        max_tightness: total.max_tightness,
        seed,
        pass: total.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CVector, Vector};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cv(vals: &[(f64, f64)]) -> CVector {
        Vector::new(vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    fn case_with(vectors: &[(&'static str, CVector)]) -> Case {
        let mut c = Case::empty();
        for (name, v) in vectors {
            c.vectors.insert(name, v.clone());
        }
        c
    }

    #[test]
    fn registry_has_the_full_enumeration() {
        assert_eq!(ENTRIES.len(), 42);
        let mut ids: Vec<&str> = ENTRIES.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 42, "entry ids must be unique");
        assert!(ENTRIES.iter().any(|e| e.id == "RICHARD"));
        assert!(ENTRIES.iter().all(|e| !e.quote.is_empty()));
        assert!(ENTRIES
            .iter()
            .all(|e| e.chain_names.len() >= 2));
    }

    #[test]
    fn richard_forced_equality_case() {
        let inv = 1.0 / 2f64.sqrt();
        let case = case_with(&[
            ("a", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("b", cv(&[(0.0, 0.0), (1.0, 0.0)])),
            ("x", cv(&[(inv, 0.0), (inv, 0.0)])),
        ]);
        let r = evaluate_by_id("RICHARD", &case, &TolerancePolicy::default()).unwrap();
        assert!(r.pass);
        assert!((r.chain[0] - 0.5).abs() <= 1e-12);
        assert!((r.chain[1] - 0.5).abs() <= 1e-12);
        assert!((r.tightness - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn lupu_equality_case() {
        let case = case_with(&[
            ("a", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("b", cv(&[(0.0, 0.0), (1.0, 0.0)])),
            ("x", cv(&[(1.0, 0.0), (0.0, 0.0)])),
        ]);
        let r = evaluate_by_id("LUPU", &case, &TolerancePolicy::default()).unwrap();
        assert!(r.pass);
        assert!((r.chain[0] - 1.0).abs() <= 1e-12);
        assert!((r.chain[1] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ostrowski_discrete_equality_case() {
        let case = case_with(&[
            ("x", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("y", cv(&[(0.0, 0.0), (1.0, 0.0)])),
            ("z", cv(&[(1.0, 0.0), (0.0, 0.0)])),
        ]);
        let r = evaluate_by_id("OSTROWSKI_DISCRETE", &case, &TolerancePolicy::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.chain, vec![1.0, 1.0]);
    }

    #[test]
    fn rem_23_hand_oracle() {
        // a = b = e1, x = (1,1)/sqrt(2): gap 1/2, refinement A/(|x|^2|a||b|) = 1/4.
        let inv = 1.0 / 2f64.sqrt();
        let case = case_with(&[
            ("a", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("b", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("x", cv(&[(inv, 0.0), (inv, 0.0)])),
        ]);
        let r = evaluate_by_id("REM_23", &case, &TolerancePolicy::default()).unwrap();
        assert!(r.pass);
        assert!((r.chain[1] - 0.25).abs() <= 1e-12);
        assert!((r.chain[2] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn prec_gen_hand_oracle() {
        let inv = 1.0 / 2f64.sqrt();
        let case = case_with(&[
            ("w", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("z", cv(&[(0.0, 0.0), (1.0, 0.0)])),
            ("a", cv(&[(inv, 0.0), (inv, 0.0)])),
            ("b", cv(&[(inv, 0.0), (-inv, 0.0)])),
        ]);
        let r = evaluate_by_id("PREC_GEN", &case, &TolerancePolicy::default()).unwrap();
        assert!(r.pass);
        assert!(r.chain[0].abs() <= 1e-12);
        assert!((r.chain[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn constraint_violation_is_an_error_not_a_failure() {
        let case = case_with(&[
            ("a", cv(&[(1.0, 0.0)])),
            ("x", cv(&[(0.0, 0.0)])),
        ]);
        let mut case = case;
        case.params.insert("alpha", Complex64::new(2.0, 0.0));
        case.params.insert("beta", Complex64::new(1.0, 0.0));
        let r = evaluate_by_id("SANDWICH_15", &case, &TolerancePolicy::default());
        assert!(matches!(r, Err(CoreError::ConstraintViolation { .. })));
    }

    #[test]
    fn unknown_entry_errors() {
        let case = Case::empty();
        assert!(matches!(
            evaluate_by_id("NO_SUCH_ENTRY", &case, &TolerancePolicy::default()),
            Err(CoreError::UnknownEntry(_))
        ));
    }

    #[test]
    fn every_entry_samples_and_passes_a_smoke_fuzz() {
        let policy = TolerancePolicy::default();
        for entry in ENTRIES {
            let dims: Vec<usize> = (entry.min_dim..=entry.min_dim + 2).collect();
            let summary = fuzz(entry, 50, &dims, 7, &policy)
                .unwrap_or_else(|e| panic!("{} fuzz failed: {e}", entry.id));
            assert!(summary.pass, "{} violated its chain: {summary:?}", entry.id);
            assert_eq!(summary.samples, 50 * dims.len() as u64);
        }
    }

    #[test]
    fn fuzz_is_deterministic_per_seed() {
        let policy = TolerancePolicy::default();
        let e = find_entry("TH_22").unwrap();
        let a = fuzz(e, 200, &[2, 3], 99, &policy).unwrap();
        let b = fuzz(e, 200, &[2, 3], 99, &policy).unwrap();
        assert_eq!(a.max_excess.to_bits(), b.max_excess.to_bits());
        assert_eq!(a.max_tightness.to_bits(), b.max_tightness.to_bits());
        let c = fuzz(e, 200, &[2, 3], 100, &policy).unwrap();
        assert_ne!(a.max_tightness.to_bits(), c.max_tightness.to_bits());
    }

    #[test]
    fn parallel_and_serial_fuzz_agree() {
        // The per-sample work is keyed by index, so folding serially must give
        // the same extrema as the parallel reduction.
        let policy = TolerancePolicy::default();
        let e = find_entry("BUZANO").unwrap();
        let par_run = fuzz(e, 300, &[3], 5, &policy).unwrap();
        let serial = par::map_reduce_serial(
            300,
            |i| {
                let mut rng = rng_for(5, e.id, 3, i as u64);
                let (_, case) = e.plan.sample(3, &mut rng).unwrap();
                let r = evaluate(e, &case, &policy).unwrap();
                (chain_excess(&r.chain), r.tightness)
            },
            (f64::NEG_INFINITY, 0.0),
            |a, b| (a.0.max(b.0), a.1.max(b.1)),
        );
        assert_eq!(par_run.max_excess.to_bits(), serial.0.to_bits());
        assert_eq!(par_run.max_tightness.to_bits(), serial.1.to_bits());
    }

    #[test]
    fn debug_fixture_fails_and_is_not_listed() {
        assert!(list_entries().iter().all(|e| e.id != DEBUG_FALSE_ENTRY.id));
        let policy = TolerancePolicy::default();
        let summary = fuzz(&DEBUG_FALSE_ENTRY, 50, &[2], 1, &policy).unwrap();
        assert!(!summary.pass);
        assert!(summary.max_excess > 0.0);
    }

    #[test]
    fn infeasible_dimension_errors() {
        let e = find_entry("PROP_EORTH").unwrap();
        assert!(matches!(
            fuzz(e, 10, &[1], 3, &TolerancePolicy::default()),
            Err(CoreError::InfeasibleConstraints(_))
        ));
    }

    #[test]
    fn tightness_conventions() {
        assert_eq!(link_tightness(0.0, 0.0), 0.0);
        assert_eq!(link_tightness(1.0, 0.0), 0.0);
        assert_eq!(link_tightness(-3.0, 2.0), 0.0);
        assert!((link_tightness(1.0, 2.0) - 0.5).abs() <= 1e-15);
        assert_eq!(chain_tightness(&[0.0, 0.5, 1.0]), 0.5);
    }

    #[test]
    fn prop_25_never_beats_buzano_bound() {
        // The refinement subtracts a nonnegative term from the Buzano bound.
        let policy = TolerancePolicy::default();
        let e25 = find_entry("PROP_25").unwrap();
        let eb = find_entry("BUZANO").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let (_, case) = e25.plan.sample(3, &mut rng).unwrap();
            let r25 = evaluate(e25, &case, &policy).unwrap();
            let rb = evaluate(eb, &case, &policy).unwrap();
            assert!(r25.chain[1] <= rb.chain[1] + 1e-9);
        }
    }

    #[test]
    fn sampled_params_respect_declared_regions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sandwich = find_entry("SANDWICH_15").unwrap();
        let contraction = find_entry("TH_21").unwrap();
        for _ in 0..100 {
            let (_, c1) = sandwich.plan.sample(2, &mut rng).unwrap();
            let (alpha, beta) = (c1.param("alpha"), c1.param("beta"));
            assert!((alpha - beta).norm() >= beta.norm() * (1.0 - 1e-12));
            assert!(beta.norm() > 0.0);

            let (_, c2) = contraction.plan.sample(2, &mut rng).unwrap();
            let (alpha, beta) = (c2.param("alpha"), c2.param("beta"));
            let gap = (alpha - beta).norm();
            assert!(gap > 0.0 && gap <= beta.norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn scaled_product_weights_satisfy_their_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e = find_entry("PROD_RICHARD").unwrap();
        for _ in 0..100 {
            let (_, c) = e.plan.sample(3, &mut rng).unwrap();
            let n = c.weights.len() as i32;
            let prod: Complex64 = c.weights.iter().product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((sign * prod - Complex64::new(2f64.powi(n - 1), 0.0)).norm() <= 1e-9);
        }
    }

    #[test]
    fn simplex_weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let e = find_entry("COR_CONVEX").unwrap();
        for _ in 0..100 {
            let (_, c) = e.plan.sample(2, &mut rng).unwrap();
            let total: f64 = c.weights.iter().map(|z| z.re).sum();
            assert!((total - 1.0).abs() <= 1e-12);
            assert!(c.weights.iter().all(|z| z.re >= 0.0 && z.im == 0.0));
        }
    }

    #[test]
    fn raw_rebuild_reproduces_the_case() {
        // The search relies on build() being a pure function of (layout, raw).
        let e = find_entry("TH_18").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (layout, raw, case) = e.plan.sample_raw(4, &mut rng).unwrap();
        let rebuilt = e.plan.build(&layout, &raw).unwrap();
        assert_eq!(case.vectors, rebuilt.vectors);
        assert_eq!(case.params, rebuilt.params);
    }

    #[test]
    fn validate_flags_param_region_breaches() {
        let e = find_entry("TH_21").unwrap();
        let mut case = case_with(&[
            ("a", cv(&[(1.0, 0.0), (0.0, 0.0)])),
            ("b", cv(&[(0.0, 0.0), (1.0, 0.0)])),
            ("x", cv(&[(1.0, 0.0), (1.0, 0.0)])),
        ]);
        // |alpha - beta| = 3 > |beta| = 1 breaches the contraction region.
        case.params.insert("alpha", Complex64::new(4.0, 0.0));
        case.params.insert("beta", Complex64::new(1.0, 0.0));
        assert!(matches!(
            evaluate(e, &case, &TolerancePolicy::default()),
            Err(CoreError::ConstraintViolation { .. })
        ));
    }
}
