//! Dense state-vector simulation of local projective qubit measurements.
//!
//! Basis index convention: qubit 0 is the most significant bit, so the
//! amplitude of `|q0 q1 ... q_{n-1}⟩` sits at `Σ q_k 2^{n-1-k}`. This matches
//! the row-major layout of [`JointDistribution`] with variable `Q0` slowest.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{JointDistribution, Variable, VariableSubset};
use crate::error::{Error, Result};
use crate::geometry::{self, Reactivity, SurfaceMode};
use crate::summation::CompensatedSum;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 20;

/// Tolerance on `Σ |amplitude|² = 1`.
pub const STATE_NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance on `U†U = I` for local unitaries.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized pure state of `qubit_count` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

fn check_qubits(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
    }
    Ok(())
}

impl PureState {
    /// Validates length (a power of two, at least one qubit) and norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::SizeMismatch {
                expected: len.next_power_of_two().max(2),
                actual: len,
            });
        }
        let qubit_count = len.trailing_zeros() as usize;
        check_qubits(qubit_count, 1)?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !((norm - 1.0).abs() <= STATE_NORM_TOLERANCE) {
            return Err(Error::NotNormalizedState(norm));
        }
        Ok(Self {
            qubit_count,
            amplitudes,
        })
    }

    fn basis_combination(n: usize, terms: &[(usize, Complex64)]) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n];
        for &(index, amp) in terms {
            amplitudes[index] += amp;
        }
        Self {
            qubit_count: n,
            amplitudes,
        }
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        check_qubits(n, 2)?;
        let a = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Ok(Self::basis_combination(n, &[(0, a), ((1 << n) - 1, a)]))
    }

    /// Equal superposition of the `n` single-excitation basis states.
    pub fn w_state(n: usize) -> Result<Self> {
        check_qubits(n, 2)?;
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let terms: Vec<_> = (0..n).map(|k| (1usize << k, a)).collect();
        Ok(Self::basis_combination(n, &terms))
    }

    /// `|0…0⟩`.
    pub fn product_zero(n: usize) -> Result<Self> {
        check_qubits(n, 1)?;
        Ok(Self::basis_combination(n, &[(0, ONE)]))
    }

    /// `cos α |0…0⟩ + sin α |1…1⟩`, interpolating `|0…0⟩` (α = 0) and GHZ (α = π/4).
    pub fn cat_family(n: usize, alpha: f64) -> Result<Self> {
        check_qubits(n, 2)?;
        let (s, c) = alpha.sin_cos();
        Ok(Self::basis_combination(
            n,
            &[(0, Complex64::new(c, 0.0)), ((1 << n) - 1, Complex64::new(s, 0.0))],
        ))
    }

    /// Isotropic random state: normalized vector of i.i.d. complex Gaussians
    /// drawn from a ChaCha8 stream seeded with `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        check_qubits(n, 1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amplitudes: Vec<Complex64> = (0..1usize << n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            qubit_count: n,
            amplitudes,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Applies `m` to qubit `q` of an `n`-qubit amplitude vector in place.
fn apply_single(amplitudes: &mut [Complex64], n: usize, q: usize, m: &Matrix2) {
    let bit = 1usize << (n - 1 - q);
    for i in 0..amplitudes.len() {
        if i & bit == 0 {
            let a0 = amplitudes[i];
            let a1 = amplitudes[i | bit];
            amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
            amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// One qubit's Bloch angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange(format!("theta = {theta} not in [0, π]")));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::AngleOutOfRange(format!("phi = {phi} not in [0, 2π)")));
        }
        Ok(Self { theta, phi })
    }

    /// The measurement basis `[b0, b1]` with
    /// `b0 = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` and
    /// `b1 = sin(θ/2)|0⟩ − e^{iφ} cos(θ/2)|1⟩`, as column vectors.
    pub fn basis(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let phase = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), phase * s],
            [Complex64::new(s, 0.0), -phase * c],
        ]
    }

    /// Matrix whose rows are the conjugated basis vectors, mapping a qubit
    /// amplitude pair to outcome amplitudes `⟨b_k|ψ⟩`.
    fn projector_rows(&self) -> Matrix2 {
        let [b0, b1] = self.basis();
        [[b0[0].conj(), b0[1].conj()], [b1[0].conj(), b1[1].conj()]]
    }
}

/// One point of the measurement space: a basis choice for every qubit.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MeasurementSetting(Vec<BlochAngles>);

impl MeasurementSetting {
    pub fn new(angles: Vec<BlochAngles>) -> Self {
        Self(angles)
    }

    /// Same `(theta, phi)` on every qubit.
    pub fn uniform(n: usize, theta: f64, phi: f64) -> Result<Self> {
        let angles = BlochAngles::new(theta, phi)?;
        Ok(Self(vec![angles; n]))
    }

    /// Computational (Z) basis on every qubit.
    pub fn computational(n: usize) -> Self {
        Self(vec![BlochAngles { theta: 0.0, phi: 0.0 }; n])
    }

    pub fn angles(&self) -> &[BlochAngles] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-qubit 2×2 unitaries acting as a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary(Vec<Matrix2>);

impl LocalUnitary {
    pub fn new(matrices: Vec<Matrix2>) -> Result<Self> {
        for (q, m) in matrices.iter().enumerate() {
            if !is_unitary(m, UNITARY_TOLERANCE) {
                return Err(Error::NotUnitary(q));
            }
        }
        Ok(Self(matrices))
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![[[ONE, ZERO], [ZERO, ONE]]; n])
    }

    /// Independent Haar-random SU(2) element per qubit, from a unit
    /// quaternion of four seeded Gaussians.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let matrices = (0..n)
            .map(|_| {
                let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
                let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
                let a = Complex64::new(q[0], q[1]) / norm;
                let b = Complex64::new(q[2], q[3]) / norm;
                [[a, -b.conj()], [b, a.conj()]]
            })
            .collect();
        Self(matrices)
    }

    pub fn matrices(&self) -> &[Matrix2] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Rotation about Y by `theta`: `[[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn ry(theta: f64) -> Matrix2 {
    let (s, c) = (0.5 * theta).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn pauli_x() -> Matrix2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn hadamard() -> Matrix2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

fn is_unitary(m: &Matrix2, tol: f64) -> bool {
    (0..2).all(|i| {
        (0..2).all(|j| {
            let entry = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let want = if i == j { ONE } else { ZERO };
            (entry - want).norm() <= tol
        })
    })
}

/// `(U_0 ⊗ U_1 ⊗ … ⊗ U_{n−1}) |ψ⟩`.
pub fn apply_local_unitaries(state: &PureState, u: &LocalUnitary) -> Result<PureState> {
    if u.len() != state.qubit_count {
        return Err(Error::SizeMismatch {
            expected: state.qubit_count,
            actual: u.len(),
        });
    }
    for (q, m) in u.0.iter().enumerate() {
        if !is_unitary(m, UNITARY_TOLERANCE) {
            return Err(Error::NotUnitary(q));
        }
    }
    let n = state.qubit_count;
    let mut amplitudes = state.amplitudes.clone();
    for (q, m) in u.0.iter().enumerate() {
        apply_single(&mut amplitudes, n, q, m);
    }
    Ok(PureState {
        qubit_count: n,
        amplitudes,
    })
}

/// Names of the outcome variables, `Q0 … Q{n−1}`.
pub fn qubit_names(n: usize) -> Vec<String> {
    (0..n).map(|q| format!("Q{q}")).collect()
}

/// Born-rule joint distribution of the per-qubit outcomes for `setting`.
pub fn measurement_distribution(
    state: &PureState,
    setting: &MeasurementSetting,
) -> Result<JointDistribution> {
    let n = state.qubit_count;
    if setting.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: setting.len(),
        });
    }
    let mut amplitudes = state.amplitudes.clone();
    for (q, angles) in setting.0.iter().enumerate() {
        apply_single(&mut amplitudes, n, q, &angles.projector_rows());
    }
    let probabilities = amplitudes.iter().map(|a| a.norm_sqr()).collect();
    let variables = qubit_names(n)
        .into_iter()
        .map(|name| Variable::new(name, 2))
        .collect();
    JointDistribution::new(variables, probabilities)
}

/// How measurement settings are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Scheme {
    /// Per qubit: `cos θ ~ U[−1, 1]`, `φ ~ U[0, 2π)`.
    UniformSphere,
    /// `θ_k = kπ/n_theta`, `φ_l = 2πl/n_phi`; settings enumerate the
    /// Cartesian product over qubits (qubit 0 slowest), cycling to `count`.
    Grid { n_theta: usize, n_phi: usize },
}

/// Deterministic sequence of `count` settings for `n_qubits`.
pub fn sample_settings(
    n_qubits: usize,
    count: usize,
    seed: u64,
    scheme: Scheme,
) -> Result<Vec<MeasurementSetting>> {
    if count == 0 {
        return Err(Error::BadScheme("count must be at least 1".into()));
    }
    if n_qubits == 0 {
        return Err(Error::BadScheme("need at least one qubit".into()));
    }
    match scheme {
        Scheme::UniformSphere => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| {
                    MeasurementSetting(
                        (0..n_qubits)
                            .map(|_| {
                                let cos_theta = 2.0 * rng.gen::<f64>() - 1.0;
                                let phi = 2.0 * PI * rng.gen::<f64>();
                                BlochAngles {
                                    theta: cos_theta.acos(),
                                    phi,
                                }
                            })
                            .collect(),
                    )
                })
                .collect())
        }
        Scheme::Grid { n_theta, n_phi } => {
            if n_theta == 0 || n_phi == 0 {
                return Err(Error::BadScheme(
                    "grid needs n_theta ≥ 1 and n_phi ≥ 1".into(),
                ));
            }
            let points: Vec<BlochAngles> = (0..n_theta)
                .flat_map(|t| {
                    (0..n_phi).map(move |p| BlochAngles {
                        theta: t as f64 * PI / n_theta as f64,
                        phi: 2.0 * PI * p as f64 / n_phi as f64,
                    })
                })
                .collect();
            let g = points.len();
            let period = u32::try_from(n_qubits)
                .ok()
                .and_then(|e| g.checked_pow(e));
            Ok((0..count)
                .map(|k| {
                    let mut rem = match period {
                        Some(p) => k % p,
                        None => k,
                    };
                    let mut angles = vec![points[0]; n_qubits];
                    for slot in angles.iter_mut().rev() {
                        *slot = points[rem % g];
                        rem /= g;
                    }
                    MeasurementSetting(angles)
                })
                .collect())
        }
    }
}

/// Settings-averaged surface and volume of one subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettingsAverage {
    pub settings: usize,
    pub surface_mean: f64,
    pub volume_mean: f64,
    pub volume_min: f64,
    pub volume_max: f64,
    pub reactivity: Reactivity,
}

fn per_setting<T, F>(state: &PureState, settings: &[MeasurementSetting], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&JointDistribution) -> Result<T> + Sync,
{
    if settings.is_empty() {
        return Err(Error::EmptySettings);
    }
    // Each setting is evaluated independently; collection preserves index order.
    settings
        .par_iter()
        .map(|s| f(&measurement_distribution(state, s)?))
        .collect()
}

/// Mean over `settings` of the subset's n-volume on the outcome distribution.
pub fn averaged_n_volume(
    state: &PureState,
    settings: &[MeasurementSetting],
    subset: &VariableSubset,
) -> Result<f64> {
    subset.validate(state.qubit_count)?;
    let volumes = per_setting(state, settings, |d| geometry::n_volume(d, subset))?;
    let acc: CompensatedSum = volumes.iter().copied().collect();
    Ok(acc.total() / volumes.len() as f64)
}

/// Mean surface and volume of `subset` over `settings`, plus their ratio.
pub fn average_geometry(
    state: &PureState,
    settings: &[MeasurementSetting],
    subset: &VariableSubset,
    mode: SurfaceMode,
    divergence_threshold: f64,
) -> Result<SettingsAverage> {
    subset.validate(state.qubit_count)?;
    if subset.len() < 3 {
        return Err(Error::SubsetTooSmall {
            required: 3,
            actual: subset.len(),
        });
    }
    let pairs = per_setting(state, settings, |d| {
        geometry::surface_and_volume(d, subset, mode)
    })?;
    let mut surface = CompensatedSum::new();
    let mut volume = CompensatedSum::new();
    let mut volume_min = f64::INFINITY;
    let mut volume_max = f64::NEG_INFINITY;
    for &(s, v) in &pairs {
        surface.add(s);
        volume.add(v);
        volume_min = volume_min.min(v);
        volume_max = volume_max.max(v);
    }
    let count = pairs.len() as f64;
    let surface_mean = surface.total() / count;
    let volume_mean = volume.total() / count;
    Ok(SettingsAverage {
        settings: pairs.len(),
        surface_mean,
        volume_mean,
        volume_min,
        volume_max,
        reactivity: geometry::reactivity_with_threshold(
            surface_mean,
            volume_mean,
            divergence_threshold,
        ),
    })
}

/// Reactivity of the whole register: facet-sum surface over full volume.
pub fn state_reactivity(
    state: &PureState,
    settings: &[MeasurementSetting],
) -> Result<SettingsAverage> {
    average_geometry(
        state,
        settings,
        &VariableSubset::full(state.qubit_count),
        SurfaceMode::FacetSum,
        geometry::DIVERGENCE_THRESHOLD,
    )
}

/// Evenly spaced `steps ≥ 2` angles from `start` to `stop` inclusive.
pub fn sweep_alphas(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::BadSweep(format!("steps = {steps}, need at least 2")));
    }
    if !start.is_finite() || !stop.is_finite() || start >= stop {
        return Err(Error::BadSweep(format!(
            "need finite start < stop, got {start} .. {stop}"
        )));
    }
    let step = (stop - start) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { stop } else { start + k as f64 * step })
        .collect())
}

/// One row of a sweep over `cos α |0…0⟩ + sin α |1…1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub surface: f64,
    pub volume: f64,
    pub reactivity: Reactivity,
}

/// Settings-averaged geometry of the full `n`-qubit register of the cat
/// family at each `alpha`, reusing the same settings for every row.
pub fn cat_sweep(
    n: usize,
    alphas: &[f64],
    settings: &[MeasurementSetting],
    mode: SurfaceMode,
    divergence_threshold: f64,
) -> Result<Vec<SweepRow>> {
    let full = VariableSubset::full(n);
    alphas
        .iter()
        .map(|&alpha| {
            let state = PureState::cat_family(n, alpha)?;
            let avg = average_geometry(&state, settings, &full, mode, divergence_threshold)?;
            Ok(SweepRow {
                alpha,
                surface: avg.surface_mean,
                volume: avg.volume_mean,
                reactivity: avg.reactivity,
            })
        })
        .collect()
}
