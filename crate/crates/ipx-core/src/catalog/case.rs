//! Input bundles for catalog entries and the deterministic raw-coordinate
//! construction that produces them. Every case is a pure function of a layout
//! (dimension plus set sizes) and a flat slice of real "raw" coordinates, so
//! the fuzzing sampler and the tightness-search ascent share one code path.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::linalg::{inner, norm, norm_sq, orthonormal_basis, project_out, CVector, Vector};

pub const DEGENERACY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Case {
    pub vectors: BTreeMap<&'static str, CVector>,
    pub params: BTreeMap<&'static str, Complex64>,
    pub sets: Vec<Vec<CVector>>,
    pub weights: Vec<Complex64>,
}

impl Case {
    pub fn empty() -> Self {
        Case {
            vectors: BTreeMap::new(),
            params: BTreeMap::new(),
            sets: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn vec(&self, name: &str) -> &CVector {
        self.vectors
            .get(name)
            .unwrap_or_else(|| panic!("case is missing vector '{name}'"))
    }

    pub fn param(&self, name: &str) -> Complex64 {
        *self
            .params
            .get(name)
            .unwrap_or_else(|| panic!("case is missing parameter '{name}'"))
    }
}

/// Shape of the randomized part of a case: the ambient dimension and the size
/// of each vector set. Fixed across one search run so the raw coordinates
/// have a stable meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub dim: usize,
    pub set_sizes: Vec<usize>,
}

/// Degenerate raw draw (collapsed vector, parameter outside its region);
/// callers resample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reject(pub &'static str);

pub struct RawCursor<'a> {
    data: &'a [f64],
    pos: usize,
}

impl<'a> RawCursor<'a> {
    pub fn new(data: &'a [f64]) -> Self {
        RawCursor { data, pos: 0 }
    }

    pub fn real(&mut self) -> f64 {
        let v = self.data[self.pos];
        self.pos += 1;
        v
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.real(), self.real())
    }

    pub fn vector(&mut self, dim: usize, real: bool) -> CVector {
        Vector::new(
            (0..dim)
                .map(|_| {
                    if real {
                        Complex64::new(self.real(), 0.0)
                    } else {
                        self.complex()
                    }
                })
                .collect(),
        )
    }

    pub fn exhausted(&self) -> bool {
        self.pos == self.data.len()
    }
}

/// How one named vector of an entry is constructed from raw coordinates.
#[derive(Debug, Clone)]
pub struct VecSpec {
    pub name: &'static str,
    pub real: bool,
    pub kind: VecKind,
    /// Project away the components along these previously built vectors.
    pub orth_to: &'static [&'static str],
    /// Project away the span of every set vector (for the `e` of the
    /// orthogonal-refinement entries).
    pub orth_to_sets: bool,
    /// Shift so that <v, target> = 1.
    pub inner_one: Option<&'static str>,
    /// Reject raw draws (anti-)parallel to this previously built vector.
    pub not_prop: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VecKind {
    Free,
    NonZero,
    Unit,
}

impl VecSpec {
    pub const fn free(name: &'static str) -> Self {
        VecSpec {
            name,
            real: false,
            kind: VecKind::Free,
            orth_to: &[],
            orth_to_sets: false,
            inner_one: None,
            not_prop: None,
        }
    }
    pub const fn nonzero(name: &'static str) -> Self {
        VecSpec {
            kind: VecKind::NonZero,
            ..Self::free(name)
        }
    }
    pub const fn unit(name: &'static str) -> Self {
        VecSpec {
            kind: VecKind::Unit,
            ..Self::free(name)
        }
    }
    pub const fn real(mut self) -> Self {
        self.real = true;
        self
    }
    pub const fn orth_to(mut self, names: &'static [&'static str]) -> Self {
        self.orth_to = names;
        self
    }
    pub const fn orth_to_sets(mut self) -> Self {
        self.orth_to_sets = true;
        self
    }
    pub const fn inner_one(mut self, name: &'static str) -> Self {
        self.inner_one = Some(name);
        self
    }
    pub const fn not_prop(mut self, name: &'static str) -> Self {
        self.not_prop = Some(name);
        self
    }
}

/// Parameter sampling region for the scalar parameters of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamPlan {
    None,
    /// alpha and beta anywhere in the sampling disk.
    AlphaBetaFree,
    /// alpha free, beta fixed to 1 (the Khosravi-Drnovsek-Moslehian family).
    AlphaFree,
    /// |alpha - beta| >= |beta| > 0.
    Sandwich,
    /// alpha != beta, |alpha - beta| <= |beta|, beta != 0.
    ContractionTowardBeta,
    /// max{|alpha - beta|, |beta|} != 0.
    MaxNonZero,
    /// beta != 0, alpha free.
    BetaNonZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetPlan {
    None,
    /// One set Z of 1..=max_size nonzero vectors.
    One { max_size: usize },
    /// 1..=3 sets of 1..=max_size nonzero vectors each.
    Many { max_size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPlan {
    None,
    /// One complex weight per set, from the sampling disk.
    Disk,
    /// Nonzero weights rescaled so (-1)^n prod z_k = 2^(n-1).
    ScaledProduct,
    /// Nonnegative reals on the simplex: sum z_k = sum |z_k| = 1.
    Simplex,
}

#[derive(Debug, Clone)]
pub struct SamplePlan {
    pub vecs: &'static [VecSpec],
    pub params: ParamPlan,
    pub sets: SetPlan,
    pub weights: WeightPlan,
    /// Cap on the rank the sets may occupy, as `dim - reserve`; used when a
    /// unit vector orthogonal to every set member must exist.
    pub set_rank_reserve: usize,
}

impl SamplePlan {
    pub const fn vectors(vecs: &'static [VecSpec]) -> Self {
        SamplePlan {
            vecs,
            params: ParamPlan::None,
            sets: SetPlan::None,
            weights: WeightPlan::None,
            set_rank_reserve: 0,
        }
    }
    pub const fn with_params(mut self, p: ParamPlan) -> Self {
        self.params = p;
        self
    }
    pub const fn with_sets(mut self, s: SetPlan) -> Self {
        self.sets = s;
        self
    }
    pub const fn with_weights(mut self, w: WeightPlan) -> Self {
        self.weights = w;
        self
    }
    pub const fn reserve_rank(mut self, r: usize) -> Self {
        self.set_rank_reserve = r;
        self
    }

    pub fn layout(&self, dim: usize, rng: &mut ChaCha8Rng) -> Layout {
        let set_sizes = match self.sets {
            SetPlan::None => Vec::new(),
            SetPlan::One { max_size } => {
                let cap = self.size_cap(dim, max_size);
                vec![rng.gen_range(1..=cap)]
            }
            SetPlan::Many { max_size } => {
                let n = rng.gen_range(1..=3);
                let cap = self.size_cap(dim, max_size);
                (0..n).map(|_| rng.gen_range(1..=cap)).collect()
            }
        };
        Layout { dim, set_sizes }
    }

    fn size_cap(&self, dim: usize, max_size: usize) -> usize {
        if self.set_rank_reserve > 0 {
            max_size.min(dim.saturating_sub(self.set_rank_reserve)).max(1)
        } else {
            max_size
        }
    }

    pub fn raw_len(&self, layout: &Layout) -> usize {
        let dim = layout.dim;
        let mut len = 0;
        for set_size in &layout.set_sizes {
            len += set_size * 2 * dim;
        }
        len += match self.weights {
            WeightPlan::None => 0,
            WeightPlan::Disk | WeightPlan::ScaledProduct => 2 * layout.set_sizes.len(),
            WeightPlan::Simplex => layout.set_sizes.len(),
        };
        for spec in self.vecs {
            len += if spec.real { dim } else { 2 * dim };
        }
        len += match self.params {
            ParamPlan::None => 0,
            ParamPlan::AlphaFree => 2,
            _ => 4,
        };
        len
    }

    pub fn build(&self, layout: &Layout, raw: &[f64]) -> Result<Case, Reject> {
        debug_assert_eq!(raw.len(), self.raw_len(layout));
        let mut cursor = RawCursor::new(raw);
        let dim = layout.dim;
        let mut case = Case::empty();

        for &size in &layout.set_sizes {
            let mut set = Vec::with_capacity(size);
            for _ in 0..size {
                let v = cursor.vector(dim, false);
                if norm(&v) <= DEGENERACY_TOL {
                    return Err(Reject("collapsed set vector"));
                }
                set.push(v);
            }
            case.sets.push(set);
        }

        case.weights = self.build_weights(layout, &mut cursor)?;

        let set_basis = if self.vecs.iter().any(|s| s.orth_to_sets) {
            let all: Vec<CVector> = case.sets.iter().flatten().cloned().collect();
            orthonormal_basis(&all, 1e-10)
        } else {
            Vec::new()
        };

        for spec in self.vecs {
            let mut v = cursor.vector(dim, spec.real);
            for other in spec.orth_to {
                let target = case.vec(other);
                v = project_out(&v, target).map_err(|_| Reject("projection target is zero"))?;
            }
            if spec.orth_to_sets {
                for q in &set_basis {
                    let c = inner(&v, q).expect("dims agree");
                    v = v.sub(&q.scale(&c));
                }
            }
            if let Some(target_name) = spec.inner_one {
                let target = case.vec(target_name).clone();
                let nt = norm_sq(&target);
                if nt <= DEGENERACY_TOL * DEGENERACY_TOL {
                    return Err(Reject("inner-one target is zero"));
                }
                let defect = Complex64::new(1.0, 0.0)
                    - inner(&v, &target).expect("dims agree");
                v = v.add(&target.scale(&(defect / nt)));
            }
            match spec.kind {
                VecKind::Free => {}
                VecKind::NonZero => {
                    if norm(&v) <= DEGENERACY_TOL {
                        return Err(Reject("collapsed vector"));
                    }
                }
                VecKind::Unit => {
                    let n = norm(&v);
                    if n <= DEGENERACY_TOL {
                        return Err(Reject("collapsed vector"));
                    }
                    v = v.scale(&Complex64::new(1.0 / n, 0.0));
                }
            }
            if let Some(other_name) = spec.not_prop {
                let other = case.vec(other_name);
                let residual =
                    project_out(&v, other).map_err(|_| Reject("proportionality target zero"))?;
                if norm(&residual) < DEGENERACY_TOL * norm(&v) {
                    return Err(Reject("proportional vectors"));
                }
            }
            case.vectors.insert(spec.name, v);
        }

        self.build_params(&mut case, &mut cursor)?;
        debug_assert!(cursor.exhausted());
        Ok(case)
    }

    fn build_weights(
        &self,
        layout: &Layout,
        cursor: &mut RawCursor,
    ) -> Result<Vec<Complex64>, Reject> {
        let n = layout.set_sizes.len();
        match self.weights {
            WeightPlan::None => Ok(Vec::new()),
            WeightPlan::Disk => Ok((0..n).map(|_| cursor.complex()).collect()),
            WeightPlan::ScaledProduct => {
                // z_1..z_{n-1} free but away from 0, z_n forced by the
                // constraint (-1)^n prod z_k = 2^(n-1).
                let mut weights: Vec<Complex64> = Vec::with_capacity(n);
                let mut partial = Complex64::new(1.0, 0.0);
                for _ in 0..n.saturating_sub(1) {
                    let z = cursor.complex();
                    if z.norm() <= 1e-2 {
                        return Err(Reject("product weight too small"));
                    }
                    partial *= z;
                    weights.push(z);
                }
                // Consume the reserved raw slot for the forced weight so the
                // layout length stays uniform.
                let _ = cursor.complex();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let target = Complex64::new(sign * 2f64.powi(n as i32 - 1), 0.0);
                weights.push(target / partial);
                Ok(weights)
            }
            WeightPlan::Simplex => {
                let mass: Vec<f64> = (0..n).map(|_| cursor.real().powi(2)).collect();
                let total: f64 = mass.iter().sum();
                if total <= 1e-9 {
                    return Err(Reject("degenerate simplex draw"));
                }
                Ok(mass
                    .into_iter()
                    .map(|m| Complex64::new(m / total, 0.0))
                    .collect())
            }
        }
    }

    fn build_params(&self, case: &mut Case, cursor: &mut RawCursor) -> Result<(), Reject> {
        match self.params {
            ParamPlan::None => {}
            ParamPlan::AlphaBetaFree => {
                case.params.insert("alpha", disk(cursor.complex())?);
                case.params.insert("beta", disk(cursor.complex())?);
            }
            ParamPlan::AlphaFree => {
                case.params.insert("alpha", disk(cursor.complex())?);
                case.params.insert("beta", Complex64::new(1.0, 0.0));
            }
            ParamPlan::Sandwich => {
                let beta = nonzero_disk(cursor.complex())?;
                let c = cursor.complex();
                let cn = c.norm();
                if cn <= 1e-9 {
                    return Err(Reject("degenerate sandwich offset"));
                }
                // |w| = 1 + |c| >= 1, so |alpha - beta| = |beta||w| >= |beta|.
                let w = c * ((1.0 + cn) / cn);
                case.params.insert("alpha", beta + beta * w);
                case.params.insert("beta", beta);
            }
            ParamPlan::ContractionTowardBeta => {
                let beta = nonzero_disk(cursor.complex())?;
                let c = cursor.complex();
                let cn = c.norm();
                if cn <= 1e-9 {
                    return Err(Reject("alpha equals beta"));
                }
                // |w| = |c| / (1 + |c|) < 1, so 0 < |alpha - beta| <= |beta|.
                let w = c / (1.0 + cn);
                case.params.insert("alpha", beta + beta * w);
                case.params.insert("beta", beta);
            }
            ParamPlan::MaxNonZero => {
                let alpha = disk(cursor.complex())?;
                let beta = disk(cursor.complex())?;
                if (alpha - beta).norm().max(beta.norm()) <= 1e-9 {
                    return Err(Reject("max{|alpha-beta|, |beta|} is zero"));
                }
                case.params.insert("alpha", alpha);
                case.params.insert("beta", beta);
            }
            ParamPlan::BetaNonZero => {
                case.params.insert("alpha", disk(cursor.complex())?);
                case.params.insert("beta", nonzero_disk(cursor.complex())?);
            }
        }
        Ok(())
    }

    /// Draw raw coordinates and build, retrying degenerate draws.
    pub fn sample(&self, dim: usize, rng: &mut ChaCha8Rng) -> Result<(Layout, Case), CoreError> {
        let layout = self.layout(dim, rng);
        let len = self.raw_len(&layout);
        for _ in 0..crate::sample::MAX_ATTEMPTS {
            let raw: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(case) = self.build(&layout, &raw) {
                return Ok((layout, case));
            }
        }
        Err(CoreError::InfeasibleConstraints(format!(
            "entry sampler failed after {} attempts (dim {dim})",
            crate::sample::MAX_ATTEMPTS
        )))
    }

    /// As `sample`, but also return the accepted raw coordinates (the search
    /// ascends on these).
    pub fn sample_raw(
        &self,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<(Layout, Vec<f64>, Case), CoreError> {
        let layout = self.layout(dim, rng);
        let len = self.raw_len(&layout);
        for _ in 0..crate::sample::MAX_ATTEMPTS {
            let raw: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(case) = self.build(&layout, &raw) {
                return Ok((layout, raw, case));
            }
        }
        Err(CoreError::InfeasibleConstraints(format!(
            "entry sampler failed after {} attempts (dim {dim})",
            crate::sample::MAX_ATTEMPTS
        )))
    }
}

const PARAM_DISK_RADIUS: f64 = 3.0;

fn disk(c: Complex64) -> Result<Complex64, Reject> {
    if c.norm() > PARAM_DISK_RADIUS {
        Err(Reject("parameter outside sampling disk"))
    } else {
        Ok(c)
    }
}

fn nonzero_disk(c: Complex64) -> Result<Complex64, Reject> {
    let c = disk(c)?;
    if c.norm() <= 1e-3 {
        Err(Reject("parameter too close to zero"))
    } else {
        Ok(c)
    }
}
