//! Extremal tightness search (how close can a chain link get to equality?)
//! and the equality certificate for the Selberg-operator form of the
//! half-norm bound |<S_Z a,b> - <a,b>/2| <= |a||b|/2.

use num_complex::Complex64;

use crate::catalog::case::{Case, Layout};
use crate::catalog::{link_tightness, EntryDef};
use crate::error::CoreError;
use crate::linalg::{inner, norm, CVector};
use crate::operator::selberg;
use crate::par;
use crate::sample::rng_for;
use crate::scalar::TolerancePolicy;

const INITIAL_STEP: f64 = 0.5;
const MIN_STEP: f64 = 1e-8;
const MAX_LOCAL_ITERS: usize = 500;

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub entry: String,
    pub link: usize,
    pub best_tightness: f64,
    /// Inputs realizing best_tightness; re-evaluating them reproduces it.
    pub argmax: Case,
    pub layout: Layout,
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct EqualityCertificate {
    pub holds: bool,
    /// Phase of the defect against b, in [0, 2*pi).
    pub theta: f64,
    /// Norm of S_Z a - a/2 - (|a|/(2|b|)) e^{i theta} b.
    pub residual: f64,
}

fn link_score(entry: &EntryDef, case: &Case, link: usize) -> f64 {
    match (entry.chain)(case) {
        Ok(chain) if chain.iter().all(|v| v.is_finite()) => {
            link_tightness(chain[link], chain[link + 1])
        }
        _ => f64::NEG_INFINITY,
    }
}

#[derive(Clone)]
struct Candidate {
    score: f64,
    start: usize,
    raw: Vec<f64>,
    layout: Layout,
    iterations: usize,
}

/// Coordinate-wise perturbation ascent on the raw coordinates, with the
/// constraint map applied by rebuilding after every move. The trajectory's
/// score is non-decreasing: a move is kept only if it strictly improves.
fn ascend(
    entry: &EntryDef,
    link: usize,
    layout: &Layout,
    mut raw: Vec<f64>,
    mut score: f64,
) -> (Vec<f64>, f64, usize) {
    let mut step = INITIAL_STEP;
    let mut iterations = 0;
    while step >= MIN_STEP && iterations < MAX_LOCAL_ITERS {
        iterations += 1;
        let mut improved = false;
        for i in 0..raw.len() {
            let original = raw[i];
            for delta in [step, -step] {
                raw[i] = original + delta;
                let trial = match entry.plan.build(layout, &raw) {
                    Ok(case) => link_score(entry, &case, link),
                    Err(_) => f64::NEG_INFINITY,
                };
                if trial > score {
                    score = trial;
                    improved = true;
                    break;
                }
                raw[i] = original;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (raw, score, iterations)
}

/// Multistart tightness maximization for one chain link. Deterministic per
/// seed: every start draws from its own derived generator and the winner is
/// the best score with ties broken by lowest start index.
pub fn tightness_search(
    entry: &EntryDef,
    link: usize,
    dim: usize,
    budget: usize,
    seed: u64,
    _policy: &TolerancePolicy,
) -> Result<SearchResult, CoreError> {
    if budget == 0 {
        return Err(CoreError::InfeasibleConstraints("budget must be >= 1".into()));
    }
    if link + 1 >= entry.chain_names.len() {
        return Err(CoreError::LinkOutOfRange(link));
    }
    if dim < entry.min_dim {
        return Err(CoreError::InfeasibleConstraints(format!(
            "{} needs dimension >= {}, got {dim}",
            entry.id, entry.min_dim
        )));
    }

    let tag = format!("search:{}", entry.id);
    let best = par::map_reduce(
        budget,
        |s| {
            let mut rng = rng_for(seed, &tag, dim as u64, s as u64);
            let (layout, raw, case) = entry
                .plan
                .sample_raw(dim, &mut rng)
                .expect("feasible entry sampler");
            let start_score = link_score(entry, &case, link);
            let (raw, score, iterations) = ascend(entry, link, &layout, raw, start_score);
            Some(Candidate {
                score,
                start: s,
                raw,
                layout,
                iterations,
            })
        },
        None,
        |a: Option<Candidate>, b| match (a, b) {
            (Some(x), Some(y)) => {
                let pick_x = x.score > y.score || (x.score == y.score && x.start <= y.start);
                Some(if pick_x { x } else { y })
            }
            (x, y) => x.or(y),
        },
    )
    .expect("budget >= 1 yields a candidate");

    let argmax = entry
        .plan
        .build(&best.layout, &best.raw)
        .map_err(|r| CoreError::InfeasibleConstraints(format!("argmax rebuild rejected: {}", r.0)))?;
    Ok(SearchResult {
        entry: entry.id.to_string(),
        link,
        best_tightness: best.score,
        argmax,
        layout: best.layout,
        iterations: best.iterations,
        seed,
    })
}

/// Equality certificate: the bound |<S_Z a,b> - <a,b>/2| <= |a||b|/2 is
/// attained exactly when S_Z a = a/2 + (|a|/(2|b|)) e^{i theta} b for some
/// phase theta.
pub fn certify_equality(
    a: &CVector,
    b: &CVector,
    z_set: &[CVector],
    policy: &TolerancePolicy,
) -> Result<EqualityCertificate, CoreError> {
    if a.is_zero() {
        return Err(CoreError::ZeroVector("a"));
    }
    if b.is_zero() {
        return Err(CoreError::ZeroVector("b"));
    }
    if z_set.is_empty() || z_set.iter().any(|z| z.is_zero()) {
        return Err(CoreError::SelbergZeroVector);
    }

    let s = selberg(z_set)?;
    let defect = s.apply(a)?.sub(&a.scale(&Complex64::new(0.5, 0.0)));
    let ratio = 0.5 * norm(a) / norm(b);
    let tol = policy.tolerance(norm(a));

    // Zero defect can never match the nonzero target (|a|/(2|b|)) e^{i theta} b,
    // so the certificate fails; theta defaults to 0.
    let theta = if norm(&defect) <= tol {
        0.0
    } else {
        let phase = inner(&defect, b)?.arg();
        if phase < 0.0 {
            phase + 2.0 * std::f64::consts::PI
        } else {
            phase
        }
    };
    let target = b.scale(&(ratio * Complex64::new(0.0, theta).exp()));
    let residual = norm(&defect.sub(&target));
    Ok(EqualityCertificate {
        holds: residual <= tol,
        theta,
        residual,
    })
}
