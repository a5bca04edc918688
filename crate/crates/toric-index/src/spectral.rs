//! Spectral verification of local indices by Fourier-mode analysis.
//!
//! The localization story assigns the component at an integer level a
//! one-term character. This module re-derives that answer from an operator,
//! with no lattice combinatorics in sight: around a Bohr-Sommerfeld orbit
//! the geometry is a cylinder, a circle of orbits times a transverse
//! coordinate `r` (the moment level), and a deformed Cauchy-Riemann operator
//! decomposes into one ordinary differential operator per Fourier mode `n`,
//!
//! ```text
//!   D_n = d/dr + t rho(r) 2 pi (H(r) - n),    H(r) = clamp(r, center +- 2 eps),
//! ```
//!
//! with `rho` a cutoff vanishing within distance `eps` of the component and
//! rising to one by `2 eps`. The deformation freezes to a constant past the
//! collar (that is the clamp), so for a mode `n` other than the center the
//! coefficient keeps one sign on both tails and `D_n` has no decaying kernel
//! in either degree; for `n` equal to the center the coefficient changes
//! sign across the collar and exactly one decaying solution appears, in
//! degree zero. Counting dim ker `D_n` minus dim ker `D_n*` over a window of
//! modes recovers the local character.
//!
//! Vertices get the analogous disc model in the radial coordinate
//! `r = |w|^2`, with modes `n >= 0` and the flat mode alone allowed to be
//! nonzero at the origin.
//!
//! Numerics: each `D_n` is discretized as a staggered first-order difference
//! `B` from grid nodes to interval midpoints, and the kernel dimensions are
//! read off the smallest eigenvalues of the Gram matrices `BᵀB` (degree 0)
//! and `CᵀC` (degree 1, `C` discretizing the formal adjoint). The Gram
//! matrices are positive semidefinite by construction and their near-kernels
//! are exact discrete objects, so detection reduces to comparing singular
//! values against a threshold scaled to the operator norm, with an explicit
//! indeterminate error when a singular value lands in the gray zone instead
//! of silently rounding it.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::character::Character;
use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Shape of the cutoff ramp between `eps` and `2 eps`. Both shapes are
/// monotone with matching ends; kernel dimensions must not depend on the
/// choice, and the test suites switch shapes to confirm that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RampShape {
    /// `u^2 (3 - 2u)`: continuously differentiable.
    Cubic,
    /// `u^3 (10 - 15u + 6u^2)`: two continuous derivatives.
    Quintic,
}

impl RampShape {
    fn eval(self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match self {
            RampShape::Cubic => u * u * (3.0 - 2.0 * u),
            RampShape::Quintic => u * u * u * (10.0 + u * (-15.0 + 6.0 * u)),
        }
    }
}

/// Renders an exact ratio as the string a reader would write (`"1/4"`).
fn serialize_ratio<S: serde::Serializer>(
    r: &Rational64,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(r)
}

/// Parameters of the spectral model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralParams {
    /// Collar radius: the deformation vanishes within `epsilon` of the
    /// component and is fully on beyond `2 epsilon`. Must satisfy
    /// `0 < epsilon < 1/2` so neighboring integer modes stay separated.
    #[serde(serialize_with = "serialize_ratio")]
    pub epsilon: Rational64,
    /// Deformation strength. Kernel *characters* require `t >= t_min()`;
    /// raw mode probes run at any `t >= 0`, including the `t = 0` control.
    pub t: f64,
    /// Half-width of the cylinder domain `[center - R, center + R]`; also
    /// the length of the disc domain `[0, R]`.
    pub half_width: f64,
    /// Number of grid nodes (inclusive of both ends).
    pub grid: usize,
    /// Modes `center - window ..= center + window` are scanned.
    pub window: i64,
    pub ramp: RampShape,
}

impl Default for SpectralParams {
    fn default() -> Self {
        SpectralParams {
            epsilon: Rational64::new(1, 4),
            t: 50.0,
            half_width: 6.0,
            grid: 2001,
            window: 5,
            ramp: RampShape::Cubic,
        }
    }
}

impl SpectralParams {
    /// The collar radius as a float, for spacing and threshold arithmetic.
    pub fn eps(&self) -> f64 {
        self.epsilon.to_f64().expect("rational cutoff radius converts to f64")
    }

    /// Smallest trusted deformation strength: the deformation's oscillator
    /// length `1 / (2 pi sqrt(t))` must be at most `eps / 5`, i.e.
    /// `t >= 25 / (4 pi^2 eps^2)`, so the kernel candidate localizes well
    /// inside the collar before its dimension is read off.
    pub fn t_min(&self) -> f64 {
        let eps = self.eps();
        25.0 / (4.0 * std::f64::consts::PI.powi(2) * eps * eps)
    }

    fn validate_common(&self) -> Result<()> {
        let eps = self.eps();
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::BadModel(format!(
                "cutoff radius epsilon = {} must lie in (0, 1/2)",
                self.epsilon
            )));
        }
        if !self.t.is_finite() || self.t < 0.0 {
            return Err(Error::BadModel(format!(
                "deformation strength t = {} must be finite and nonnegative",
                self.t
            )));
        }
        if !self.half_width.is_finite() || self.half_width < 4.0 * eps + 1.0 {
            return Err(Error::BadModel(format!(
                "domain half-width {} leaves no room past the collar (need at least {})",
                self.half_width,
                4.0 * eps + 1.0
            )));
        }
        if !(0..=100).contains(&self.window) {
            return Err(Error::BadModel(format!(
                "mode window {} must lie in 0..=100",
                self.window
            )));
        }
        if self.grid < 33 {
            return Err(Error::BadModel(format!("grid of {} nodes is too small", self.grid)));
        }
        Ok(())
    }

    /// Grid spacing rules. The spacing must resolve the collar (at least 8
    /// nodes per `eps`), stay below a fixed ceiling, and for `t > 0` resolve
    /// the deformation's oscillator length `1 / sqrt(2 pi t)` by a factor 4.
    fn validate_spacing(&self, h: f64) -> Result<()> {
        let eps = self.eps();
        if h > 1.0 / 16.0 {
            return Err(Error::GridTooCoarse {
                detail: format!("spacing h = {h:.5} exceeds the ceiling 1/16"),
            });
        }
        if eps / h < 8.0 {
            return Err(Error::GridTooCoarse {
                detail: format!(
                    "collar radius {eps} spans only {:.1} nodes, need at least 8",
                    eps / h
                ),
            });
        }
        if self.t > 0.0 {
            let osc = 1.0 / (2.0 * std::f64::consts::PI * self.t).sqrt();
            if h > osc / 4.0 {
                return Err(Error::GridTooCoarse {
                    detail: format!(
                        "spacing h = {h:.5} does not resolve the oscillator length \
                         {osc:.5} at t = {} (need h <= {:.5})",
                        self.t,
                        osc / 4.0
                    ),
                });
            }
        }
        Ok(())
    }

    fn require_strong_deformation(&self) -> Result<()> {
        if self.t < self.t_min() {
            return Err(Error::DeformationTooWeak { t: self.t, t_min: self.t_min() });
        }
        Ok(())
    }

    /// Cutoff profile at distance `d >= 0` from the component.
    fn rho(&self, d: f64) -> f64 {
        let eps = self.eps();
        if d <= eps {
            0.0
        } else if d >= 2.0 * eps {
            1.0
        } else {
            self.ramp.eval((d - eps) / eps)
        }
    }
}

/// Kernel dimensions of one mode operator and its adjoint.
#[derive(Debug, Clone, Serialize)]
pub struct ModeKernel {
    /// The weight probed (for discs, already mapped to the ambient weight).
    pub mode: i64,
    /// dim ker D_n (degree 0).
    pub dim0: usize,
    /// dim ker D_n* (degree 1).
    pub dim1: usize,
    /// Index contribution: `dim0 - dim1`.
    pub net: i64,
    /// Smallest singular value seen in each degree.
    pub sigma0: f64,
    pub sigma1: f64,
    /// Detection threshold used for both degrees.
    pub threshold: f64,
}

/// Concentration diagnostics for the kernel candidate of the center mode.
#[derive(Debug, Clone, Serialize)]
pub struct KernelProfile {
    /// Smallest singular value (should sit at the rounding floor).
    pub sigma: f64,
    /// Radius `3 / sqrt(t)` of the window around the center.
    pub radius: f64,
    /// Fraction of the candidate's squared mass within that window.
    pub mass_fraction: f64,
}

/// Boundary condition at one end of the discretized interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EndCondition {
    /// The node is pinned to zero and removed from the unknowns.
    Dirichlet,
    /// The node stays an unknown (the flat disc mode at the origin).
    Natural,
}

/// One mode operator `s ( d/dr ) + c(r)` sampled at interval midpoints,
/// with `s = +1` in degree 0 and `s = -1` in degree 1.
struct ModeOperator {
    h: f64,
    /// Coefficient at the midpoints, length `grid - 1`.
    c_mid: Vec<f64>,
    /// Left end condition in degree 0 (degree 1 and the right end are
    /// always Dirichlet: the outer walls are truncations of a decaying
    /// solution, not honest boundaries).
    left0: EndCondition,
}

impl ModeOperator {
    /// Gram matrix of the staggered difference operator in one degree.
    ///
    /// Row `j` of the difference matrix maps nodes `j, j+1` to the midpoint
    /// `j` with coefficients `(-s/h + c_j/2, s/h + c_j/2)`; Dirichlet ends
    /// drop their node column. The product is symmetric tridiagonal and
    /// positive semidefinite by construction.
    fn gram(&self, degree: u8) -> SymTridiag {
        let s: f64 = if degree == 0 { 1.0 } else { -1.0 };
        let nodes = self.c_mid.len() + 1;
        let first = match (degree, self.left0) {
            (0, EndCondition::Natural) => 0,
            _ => 1,
        };
        let last = nodes - 2;
        let a = |j: usize| -s / self.h + 0.5 * self.c_mid[j];
        let b = |j: usize| s / self.h + 0.5 * self.c_mid[j];
        let count = last - first + 1;
        let mut diag = Vec::with_capacity(count);
        let mut off = Vec::with_capacity(count.saturating_sub(1));
        for p in first..=last {
            let mut d = a(p) * a(p);
            if p >= 1 {
                d += b(p - 1) * b(p - 1);
            }
            diag.push(d);
            if p < last {
                off.push(a(p) * b(p));
            }
        }
        SymTridiag::new(diag, off)
    }

    /// Detection threshold: a fixed 1e-6 of the operator scale `2/h + |c|`.
    fn threshold(&self) -> f64 {
        let cmax = self.c_mid.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        1e-6 * (2.0 / self.h + cmax)
    }
}

/// Classify the smallest singular values against the threshold: values
/// below `theta` are kernel, values beyond `10 theta` are bulk, and anything
/// in between means the computation cannot certify a dimension.
fn classify_sigmas(sigmas: &[f64], theta: f64, mode: i64, degree: u8) -> Result<usize> {
    let dim = sigmas.iter().filter(|&&s| s < theta).count();
    let gray = sigmas.iter().filter(|&&s| (theta..10.0 * theta).contains(&s)).count();
    if gray > 0 || dim == sigmas.len() {
        return Err(Error::IndeterminateKernel {
            mode,
            degree,
            candidates: sigmas.iter().filter(|&&s| s < 10.0 * theta).count(),
            threshold: theta,
            sigmas: sigmas.to_vec(),
        });
    }
    Ok(dim)
}

/// Kernel dimensions for one assembled mode operator.
fn detect(op: &ModeOperator, mode: i64) -> Result<ModeKernel> {
    let theta = op.threshold();
    let mut dims = [0usize; 2];
    let mut smallest = [f64::INFINITY; 2];
    for degree in 0..2u8 {
        let tri = op.gram(degree);
        let sigmas: Vec<f64> = tri
            .smallest_eigenvalues(4)
            .into_iter()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        dims[degree as usize] = classify_sigmas(&sigmas, theta, mode, degree)?;
        smallest[degree as usize] = sigmas[0];
    }
    Ok(ModeKernel {
        mode,
        dim0: dims[0],
        dim1: dims[1],
        net: dims[0] as i64 - dims[1] as i64,
        sigma0: smallest[0],
        sigma1: smallest[1],
        threshold: theta,
    })
}

/// Assemble the cylinder operator for one mode around an integer center.
fn cylinder_operator(params: &SpectralParams, center: i64, mode: i64) -> (ModeOperator, f64) {
    let r = params.half_width;
    let h = 2.0 * r / (params.grid - 1) as f64;
    let eps = params.eps();
    let offset = (center - mode) as f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    let c_mid: Vec<f64> = (0..params.grid - 1)
        .map(|j| {
            let x = -r + (j as f64 + 0.5) * h; // position relative to center
            let clamped = x.clamp(-2.0 * eps, 2.0 * eps);
            params.t * params.rho(x.abs()) * two_pi * (clamped + offset)
        })
        .collect();
    (ModeOperator { h, c_mid, left0: EndCondition::Dirichlet }, h)
}

/// Assemble the disc operator for one nonnegative mode.
fn disc_operator(params: &SpectralParams, mode: i64) -> (ModeOperator, f64) {
    let r = params.half_width;
    let h = r / (params.grid - 1) as f64;
    let eps = params.eps();
    let two_pi = 2.0 * std::f64::consts::PI;
    let c_mid: Vec<f64> = (0..params.grid - 1)
        .map(|j| {
            let x = (j as f64 + 0.5) * h;
            let clamped = x.min(2.0 * eps);
            params.t * params.rho(x) * two_pi * (clamped - mode as f64)
        })
        .collect();
    let left0 = if mode == 0 { EndCondition::Natural } else { EndCondition::Dirichlet };
    (ModeOperator { h, c_mid, left0 }, h)
}

/// Probe a single cylinder mode. No deformation-strength gate: this is the
/// entry point for control runs, including `t = 0`.
pub fn mode_kernel_dims(
    params: &SpectralParams,
    center: i64,
    mode: i64,
) -> Result<ModeKernel> {
    params.validate_common()?;
    let (op, h) = cylinder_operator(params, center, mode);
    params.validate_spacing(h)?;
    detect(&op, mode)
}

/// Kernel dimensions for every mode in the window around the center.
pub fn cylinder_mode_kernels(
    params: &SpectralParams,
    center: i64,
) -> Result<Vec<ModeKernel>> {
    params.validate_common()?;
    params.validate_spacing(2.0 * params.half_width / (params.grid - 1) as f64)?;
    let modes: Vec<i64> = (center - params.window..=center + params.window).collect();
    #[cfg(feature = "parallel")]
    {
        modes
            .par_iter()
            .map(|&mode| detect(&cylinder_operator(params, center, mode).0, mode))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        modes
            .iter()
            .map(|&mode| detect(&cylinder_operator(params, center, mode).0, mode))
            .collect()
    }
}

/// Sequential variant of [`cylinder_mode_kernels`]; the parallel sweep must
/// agree with it mode for mode.
pub fn cylinder_mode_kernels_seq(
    params: &SpectralParams,
    center: i64,
) -> Result<Vec<ModeKernel>> {
    params.validate_common()?;
    params.validate_spacing(2.0 * params.half_width / (params.grid - 1) as f64)?;
    (center - params.window..=center + params.window)
        .map(|mode| detect(&cylinder_operator(params, center, mode).0, mode))
        .collect()
}

/// Kernel dimensions for disc modes `0 ..= window`.
pub fn disc_mode_kernels(params: &SpectralParams) -> Result<Vec<ModeKernel>> {
    params.validate_common()?;
    params.validate_spacing(params.half_width / (params.grid - 1) as f64)?;
    let modes: Vec<i64> = (0..=params.window).collect();
    #[cfg(feature = "parallel")]
    {
        modes
            .par_iter()
            .map(|&mode| detect(&disc_operator(params, mode).0, mode))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        modes
            .iter()
            .map(|&mode| detect(&disc_operator(params, mode).0, mode))
            .collect()
    }
}

/// Spectral local index of a cylinder component: mode table plus the
/// resulting character in ambient (unnormalized) weights. Gated on the
/// deformation being strong enough to trust.
pub fn spectral_local_index(
    params: &SpectralParams,
    center: i64,
) -> Result<(Vec<ModeKernel>, Character)> {
    params.validate_common()?;
    params.require_strong_deformation()?;
    let kernels = cylinder_mode_kernels(params, center)?;
    let character = character_of(&kernels);
    Ok((kernels, character))
}

/// Spectral local index of the standard disc: mode table plus the character
/// in disc modes (weight `n` for mode `n`); the caller maps disc modes to
/// ambient weights.
pub fn disc_model_index(params: &SpectralParams) -> Result<(Vec<ModeKernel>, Character)> {
    params.validate_common()?;
    params.require_strong_deformation()?;
    let kernels = disc_mode_kernels(params)?;
    let character = character_of(&kernels);
    Ok((kernels, character))
}

fn character_of(kernels: &[ModeKernel]) -> Character {
    Character::circle(kernels.iter().map(|k| (k.mode, k.net)))
}

/// Concentration diagnostic for the center mode's kernel candidate on the
/// cylinder: the squared-mass fraction within `3 / sqrt(t)` of the center.
pub fn kernel_profile(params: &SpectralParams, center: i64) -> Result<KernelProfile> {
    params.validate_common()?;
    if params.t <= 0.0 {
        return Err(Error::BadModel(
            "concentration profile needs a positive deformation strength".into(),
        ));
    }
    let (op, h) = cylinder_operator(params, center, center);
    params.validate_spacing(h)?;
    let tri = op.gram(0);
    let lambda = tri.smallest_eigenvalues(1)[0];
    let v = tri.eigenvector_near(lambda);
    let radius = 3.0 / params.t.sqrt();
    // Unknown p corresponds to node p+1 at position -R + (p+1) h from center.
    let mut inside = 0.0;
    let mut total = 0.0;
    for (p, x) in v.iter().enumerate() {
        let pos = -params.half_width + ((p + 1) as f64) * h;
        let mass = x * x;
        total += mass;
        if pos.abs() <= radius {
            inside += mass;
        }
    }
    Ok(KernelProfile {
        sigma: lambda.max(0.0).sqrt(),
        radius,
        mass_fraction: inside / total,
    })
}

/// Which model a level dispatched to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralModel {
    /// Interior integer level: cylinder around the Bohr-Sommerfeld orbit.
    Cylinder { center: i64 },
    /// Extreme level: disc around the fixed point at that moment value.
    Disc { pole: i64 },
}

/// Full spectral answer for one level of the standard segment geometry.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    /// Normalized level queried.
    pub level: i64,
    pub model: SpectralModel,
    pub modes: Vec<ModeKernel>,
    /// Normalized character assembled from the mode table.
    pub character: Character,
}

/// Spectral local index for the segment `[0, k]` with linearization shift
/// `m`, at the normalized level `gamma` (moment value `gamma + m`).
///
/// Interior moment values get the cylinder model; the ends `0` and `k` get
/// the disc model with modes mapped to ambient weights (`n` at the bottom
/// pole, `k - n` at the top). Non-integer levels are acyclic and carry no
/// mode decomposition to analyze; levels outside `[0, k]` are out of range.
pub fn cp1_spectral_index(
    k: i64,
    m: i64,
    level: Rational64,
    params: &SpectralParams,
) -> Result<SpectralReport> {
    if k < 1 {
        return Err(Error::BadInput("segment geometry needs k >= 1".into()));
    }
    if !level.is_integer() {
        return Err(Error::AcyclicLevel { level: level.to_string() });
    }
    let gamma = level.to_integer();
    let moment = gamma + m;
    if moment < 0 || moment > k {
        return Err(Error::LevelOutOfRange {
            level: gamma.to_string(),
            min: -m,
            max: k - m,
        });
    }
    if moment > 0 && moment < k {
        let (modes, raw) = spectral_local_index(params, moment)?;
        let character = raw.tensor_shift(&[-m])?;
        return Ok(SpectralReport {
            level: gamma,
            model: SpectralModel::Cylinder { center: moment },
            modes,
            character,
        });
    }
    let (disc_modes, _) = disc_model_index(params)?;
    let mut modes: Vec<ModeKernel> = disc_modes
        .into_iter()
        .map(|mut kernel| {
            kernel.mode = if moment == 0 { kernel.mode } else { k - kernel.mode };
            kernel
        })
        .collect();
    modes.sort_by_key(|kernel| kernel.mode);
    let character =
        Character::circle(modes.iter().map(|kernel| (kernel.mode - m, kernel.net)));
    Ok(SpectralReport {
        level: gamma,
        model: SpectralModel::Disc { pole: moment },
        modes,
        character,
    })
}
