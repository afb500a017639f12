//! Entropic geometry: information distance, area, volume and their
//! d-variable generalization.
//!
//! All shapes are built from the leave-one-out conditional entropies
//! `h_i = H(A_i | rest of the subset)`. The d-volume is the elementary
//! symmetric polynomial of degree `d − 1` in those entries:
//!
//! ```text
//! d = 2:  h_A + h_B                               (distance, bits)
//! d = 3:  h_A h_B + h_B h_C + h_C h_A             (area, bits²)
//! d = 4:  h_A h_B h_C + h_B h_C h_D + ...         (volume, bits³)
//! ```
//!
//! Every term of a d-volume with d ≥ 3 contains at least one of any two
//! entries, so two variables that determine each other force the volume to 0.

use serde::{Serialize, Serializer};

use crate::dist::{JointDistribution, VariableSubset};
use crate::entropy::JointEntropies;
use crate::error::{Error, Result};

/// Radicands of Heron's formula in `[-HERON_CLAMP, 0)` are rounded to 0.
pub const HERON_CLAMP: f64 = 1e-9;

/// Mean volumes below this make the reactivity quotient meaningless.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-9;

/// Leave-one-out conditional entropies of a subset, in subset order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConditionalEntropyVector(Vec<f64>);

impl ConditionalEntropyVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `e_{d−1}(h) = Σ_i Π_{j≠i} h_j`.
    pub fn leave_one_out_product_sum(&self) -> f64 {
        elementary_symmetric_leave_one_out(&self.0)
    }
}

/// `Σ_i Π_{j≠i} x_j`, evaluated with prefix and suffix products so no
/// division by a (possibly zero) entry is needed.
pub fn elementary_symmetric_leave_one_out(x: &[f64]) -> f64 {
    let n = x.len();
    if n == 0 {
        return 0.0;
    }
    let mut suffix = vec![1.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] * x[i];
    }
    let mut prefix = 1.0;
    let mut total = 0.0;
    for i in 0..n {
        total += prefix * suffix[i + 1];
        prefix *= x[i];
    }
    total
}

fn require_size(subset: &VariableSubset, required: usize) -> Result<()> {
    if subset.len() < required {
        return Err(Error::SubsetTooSmall {
            required,
            actual: subset.len(),
        });
    }
    Ok(())
}

fn distinct(dist: &JointDistribution, indices: &[usize]) -> Result<VariableSubset> {
    let subset = VariableSubset::new(indices.to_vec());
    subset.validate(dist.num_variables())?;
    Ok(subset)
}

fn leave_one_out(cache: &mut JointEntropies<'_>, subset: &VariableSubset) -> Vec<f64> {
    let whole = cache.get(subset);
    subset
        .indices()
        .iter()
        .map(|&i| whole - cache.get(&subset.without(i)))
        .collect()
}

/// `h_i = H(subset) − H(subset \ {i})` for every member of `subset`.
pub fn conditional_entropy_vector(
    dist: &JointDistribution,
    subset: &VariableSubset,
) -> Result<ConditionalEntropyVector> {
    subset.validate(dist.num_variables())?;
    require_size(subset, 2)?;
    let mut cache = JointEntropies::new(dist);
    Ok(ConditionalEntropyVector(leave_one_out(&mut cache, subset)))
}

/// Rokhlin–Rajski distance `D(x, y) = 2H(xy) − H(x) − H(y)`.
pub fn info_distance(dist: &JointDistribution, x: usize, y: usize) -> Result<f64> {
    if x == y {
        distinct(dist, &[x])?;
        return Err(Error::SameVariable(x));
    }
    let pair = distinct(dist, &[x, y])?;
    let mut cache = JointEntropies::new(dist);
    Ok(distance_cached(&mut cache, &pair))
}

fn distance_cached(cache: &mut JointEntropies<'_>, pair: &VariableSubset) -> f64 {
    let (x, y) = (pair.indices()[0], pair.indices()[1]);
    // Sorted so D(x, y) and D(y, x) are bitwise identical.
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    2.0 * cache.get(pair) - cache.get(&VariableSubset::single(lo))
        - cache.get(&VariableSubset::single(hi))
}

/// Symmetric matrix of pairwise information distances with zero diagonal.
pub fn distance_matrix(dist: &JointDistribution) -> Result<Vec<Vec<f64>>> {
    let n = dist.num_variables();
    if n < 2 {
        return Err(Error::TooFewVariables {
            required: 2,
            actual: n,
        });
    }
    let mut cache = JointEntropies::new(dist);
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance_cached(&mut cache, &VariableSubset::new(vec![i, j]));
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    Ok(matrix)
}

/// Entropic area `h_A h_B + h_B h_C + h_C h_A` with `h` the leave-one-out
/// conditional entropies of `{a, b, c}`.
pub fn info_area(dist: &JointDistribution, a: usize, b: usize, c: usize) -> Result<f64> {
    let triple = distinct(dist, &[a, b, c])?;
    let mut cache = JointEntropies::new(dist);
    let h = leave_one_out(&mut cache, &triple);
    Ok(h[0] * h[1] + h[1] * h[2] + h[2] * h[0])
}

/// The same area written over joint entropies only:
/// `3H²_ABC − 2(H_AB + H_AC + H_BC) H_ABC + (H_AB H_BC + H_AB H_AC + H_AC H_BC)`.
pub fn info_area_joint_form(dist: &JointDistribution, a: usize, b: usize, c: usize) -> Result<f64> {
    let triple = distinct(dist, &[a, b, c])?;
    let mut cache = JointEntropies::new(dist);
    let h_abc = cache.get(&triple);
    let h_ab = cache.get(&VariableSubset::new(vec![a, b]));
    let h_ac = cache.get(&VariableSubset::new(vec![a, c]));
    let h_bc = cache.get(&VariableSubset::new(vec![b, c]));
    Ok(3.0 * h_abc * h_abc - 2.0 * (h_ab + h_ac + h_bc) * h_abc
        + (h_ab * h_bc + h_ab * h_ac + h_ac * h_bc))
}

/// Heron's formula for side lengths `x, y, z`.
///
/// The radicand `s(s−x)(s−y)(s−z)` is clamped to 0 when it lies within
/// `clamp` below zero; anything more negative means the sides violate the
/// triangle inequality and is reported as [`Error::NegativeRadicand`].
pub fn heron(x: f64, y: f64, z: f64, clamp: f64) -> Result<f64> {
    let s = 0.5 * (x + y + z);
    let radicand = s * (s - x) * (s - y) * (s - z);
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -clamp {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand(radicand))
    }
}

/// Euclidean area of the triangle whose sides are the three pairwise
/// information distances.
pub fn euclidean_triangle_area(
    dist: &JointDistribution,
    a: usize,
    b: usize,
    c: usize,
) -> Result<f64> {
    euclidean_triangle_area_with_clamp(dist, a, b, c, HERON_CLAMP)
}

pub fn euclidean_triangle_area_with_clamp(
    dist: &JointDistribution,
    a: usize,
    b: usize,
    c: usize,
    clamp: f64,
) -> Result<f64> {
    distinct(dist, &[a, b, c])?;
    let mut cache = JointEntropies::new(dist);
    let ab = distance_cached(&mut cache, &VariableSubset::new(vec![a, b]));
    let bc = distance_cached(&mut cache, &VariableSubset::new(vec![b, c]));
    let ca = distance_cached(&mut cache, &VariableSubset::new(vec![c, a]));
    heron(ab, bc, ca, clamp)
}

/// Mean of [`info_area`] and [`euclidean_triangle_area`].
pub fn blended_area(dist: &JointDistribution, a: usize, b: usize, c: usize) -> Result<f64> {
    blended_area_with_clamp(dist, a, b, c, HERON_CLAMP)
}

pub fn blended_area_with_clamp(
    dist: &JointDistribution,
    a: usize,
    b: usize,
    c: usize,
    clamp: f64,
) -> Result<f64> {
    let area = info_area(dist, a, b, c)?;
    let triangle = euclidean_triangle_area_with_clamp(dist, a, b, c, clamp)?;
    Ok(0.5 * (area + triangle))
}

/// Entropic volume of four variables: the four triple products of their
/// leave-one-out conditional entropies, each omitting one variable.
pub fn info_volume(
    dist: &JointDistribution,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<f64> {
    let quad = distinct(dist, &[a, b, c, d])?;
    let mut cache = JointEntropies::new(dist);
    let h = leave_one_out(&mut cache, &quad);
    Ok(h[0] * h[1] * h[2] + h[1] * h[2] * h[3] + h[2] * h[3] * h[0] + h[3] * h[0] * h[1])
}

/// The `(d−1)`-volume of a `d`-variable subset, `e_{d−1}(h_1, ..., h_d)`.
pub fn n_volume(dist: &JointDistribution, subset: &VariableSubset) -> Result<f64> {
    subset.validate(dist.num_variables())?;
    require_size(subset, 2)?;
    let mut cache = JointEntropies::new(dist);
    Ok(n_volume_cached(&mut cache, subset))
}

fn n_volume_cached(cache: &mut JointEntropies<'_>, subset: &VariableSubset) -> f64 {
    elementary_symmetric_leave_one_out(&leave_one_out(cache, subset))
}

/// How facet volumes combine into a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceMode {
    /// Sum of the `d` facet volumes, like the surface of a simplex.
    #[default]
    FacetSum,
    /// Mean facet volume (the sum divided by `d`).
    FacetMean,
}

impl std::str::FromStr for SurfaceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" | "facet_sum" => Ok(SurfaceMode::FacetSum),
            "mean" | "facet_mean" => Ok(SurfaceMode::FacetMean),
            other => Err(Error::Parse(format!("unknown surface mode {other:?}"))),
        }
    }
}

/// `(d−2)`-surface of a `d ≥ 3` subset: the `n_volume` of each facet (the
/// subset minus one variable), combined per `mode`.
///
/// Facet volumes only involve the facet's own variables, so computing them
/// on `dist` directly is the same as computing them on the facet marginal.
pub fn surface_area(
    dist: &JointDistribution,
    subset: &VariableSubset,
    mode: SurfaceMode,
) -> Result<f64> {
    subset.validate(dist.num_variables())?;
    require_size(subset, 3)?;
    let mut cache = JointEntropies::new(dist);
    Ok(surface_cached(&mut cache, subset, mode))
}

fn surface_cached(cache: &mut JointEntropies<'_>, subset: &VariableSubset, mode: SurfaceMode) -> f64 {
    let sum: f64 = subset
        .indices()
        .iter()
        .map(|&i| n_volume_cached(cache, &subset.without(i)))
        .sum();
    match mode {
        SurfaceMode::FacetSum => sum,
        SurfaceMode::FacetMean => sum / subset.len() as f64,
    }
}

/// Surface and volume of one subset, sharing one joint-entropy memo.
pub fn surface_and_volume(
    dist: &JointDistribution,
    subset: &VariableSubset,
    mode: SurfaceMode,
) -> Result<(f64, f64)> {
    subset.validate(dist.num_variables())?;
    require_size(subset, 3)?;
    let mut cache = JointEntropies::new(dist);
    let surface = surface_cached(&mut cache, subset, mode);
    let volume = n_volume_cached(&mut cache, subset);
    Ok((surface, volume))
}

/// Surface-to-volume ratio, or a divergence marker when the volume vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reactivity {
    Finite(f64),
    Divergent,
}

impl Reactivity {
    pub fn value(self) -> Option<f64> {
        match self {
            Reactivity::Finite(v) => Some(v),
            Reactivity::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, Reactivity::Divergent)
    }
}

impl std::fmt::Display for Reactivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reactivity::Finite(v) => write!(f, "{v}"),
            Reactivity::Divergent => f.write_str("DIVERGENT"),
        }
    }
}

impl Serialize for Reactivity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Reactivity::Finite(v) => serializer.serialize_f64(*v),
            Reactivity::Divergent => serializer.serialize_str("DIVERGENT"),
        }
    }
}

/// `area_mean / volume_mean` with the default divergence threshold.
pub fn reactivity(area_mean: f64, volume_mean: f64) -> Reactivity {
    reactivity_with_threshold(area_mean, volume_mean, DIVERGENCE_THRESHOLD)
}

pub fn reactivity_with_threshold(area_mean: f64, volume_mean: f64, threshold: f64) -> Reactivity {
    if volume_mean < threshold {
        Reactivity::Divergent
    } else {
        Reactivity::Finite(area_mean / volume_mean)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn fair_bits(n: usize) -> JointDistribution {
        let names = ["A", "B", "C", "D", "E", "F"];
        let size = 1 << n;
        JointDistribution::build(
            names[..n].iter().map(|s| (*s, 2)),
            vec![1.0 / size as f64; size],
        )
        .unwrap()
    }

    fn ghz_z(n: usize) -> JointDistribution {
        let names = ["A", "B", "C", "D", "E", "F"];
        let mut p = vec![0.0; 1 << n];
        p[0] = 0.5;
        p[(1 << n) - 1] = 0.5;
        JointDistribution::build(names[..n].iter().map(|s| (*s, 2)), p).unwrap()
    }

    fn xor_triple() -> JointDistribution {
        let mut p = [0.0; 8];
        for a in 0..2 {
            for b in 0..2 {
                p[(a << 2) | (b << 1) | (a ^ b)] = 0.25;
            }
        }
        JointDistribution::build([("A", 2), ("B", 2), ("C", 2)], p.to_vec()).unwrap()
    }

    fn bsc() -> JointDistribution {
        JointDistribution::build([("A", 2), ("B", 2)], [0.375, 0.125, 0.125, 0.375]).unwrap()
    }

    fn bsc_distance_oracle() -> f64 {
        let h_ab = -(2.0 * 0.375 * 0.375f64.log2() + 2.0 * 0.125 * 0.125f64.log2());
        2.0 * h_ab - 2.0
    }

    #[test]
    fn elementary_symmetric_matches_brute_force() {
        let x = [0.3, 1.7, 0.0, 2.5, 0.9];
        let brute: f64 = (0..x.len())
            .map(|i| (0..x.len()).filter(|&j| j != i).map(|j| x[j]).product::<f64>())
            .sum();
        assert!((elementary_symmetric_leave_one_out(&x) - brute).abs() < 1e-12);
        assert_eq!(elementary_symmetric_leave_one_out(&[]), 0.0);
        assert_eq!(elementary_symmetric_leave_one_out(&[4.0]), 1.0);
    }

    #[test]
    fn conditional_entropy_vector_examples() {
        let full = VariableSubset::full(3);
        let v = conditional_entropy_vector(&fair_bits(3), &full).unwrap();
        assert!(v.values().iter().all(|h| (h - 1.0).abs() < 1e-14));
        let v = conditional_entropy_vector(&ghz_z(3), &full).unwrap();
        assert!(v.values().iter().all(|h| h.abs() < 1e-14));
        let v = conditional_entropy_vector(&xor_triple(), &full).unwrap();
        assert!(v.values().iter().all(|h| h.abs() < 1e-14));
        assert_eq!(
            conditional_entropy_vector(&xor_triple(), &[1].into())
                .unwrap_err()
                .code(),
            "SUBSET_TOO_SMALL"
        );
    }

    #[test]
    fn info_distance_examples() {
        assert!(info_distance(&ghz_z(2), 0, 1).unwrap().abs() < 1e-14);
        assert!((info_distance(&fair_bits(2), 0, 1).unwrap() - 2.0).abs() < 1e-14);
        let d = info_distance(&bsc(), 0, 1).unwrap();
        assert!((d - bsc_distance_oracle()).abs() < 1e-12);
        assert!((d - 1.6225562).abs() < 1e-7);
        assert_eq!(info_distance(&bsc(), 1, 1).unwrap_err().code(), "SAME_VARIABLE");
        assert_eq!(
            info_distance(&bsc(), 0, 5).unwrap_err().code(),
            "INDEX_OUT_OF_RANGE"
        );
    }

    #[test]
    fn info_distance_symmetric_bitwise() {
        let d = xor_triple();
        assert_eq!(
            info_distance(&d, 0, 2).unwrap().to_bits(),
            info_distance(&d, 2, 0).unwrap().to_bits()
        );
    }

    #[test]
    fn distance_matrix_examples() {
        let m = distance_matrix(&fair_bits(3)).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                let want = if i == j { 0.0 } else { 2.0 };
                assert!((d - want).abs() < 1e-14);
            }
        }
        let m = distance_matrix(&ghz_z(3)).unwrap();
        assert!(m.iter().flatten().all(|d| d.abs() < 1e-14));
        let m = distance_matrix(&xor_triple()).unwrap();
        assert!((m[0][2] - 2.0).abs() < 1e-14 && (m[1][2] - 2.0).abs() < 1e-14);
        let one = JointDistribution::build([("A", 2)], [0.5, 0.5]).unwrap();
        assert_eq!(
            distance_matrix(&one).unwrap_err().code(),
            "TOO_FEW_VARIABLES"
        );
    }

    #[test]
    fn info_area_examples() {
        assert!((info_area(&fair_bits(3), 0, 1, 2).unwrap() - 3.0).abs() < 1e-13);
        assert!(info_area(&ghz_z(3), 0, 1, 2).unwrap().abs() < 1e-13);
        assert!(info_area(&xor_triple(), 0, 1, 2).unwrap().abs() < 1e-13);
        assert_eq!(
            info_area(&xor_triple(), 0, 1, 1).unwrap_err().code(),
            "DUPLICATE_INDEX"
        );
        let d = xor_triple();
        let a = info_area(&d, 0, 1, 2).unwrap();
        let b = info_area_joint_form(&d, 0, 1, 2).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn heron_clamp_window() {
        assert!((heron(2.0, 2.0, 2.0, HERON_CLAMP).unwrap() - SQRT3).abs() < 1e-15);
        assert_eq!(heron(0.0, 1.0, 1.0, HERON_CLAMP).unwrap(), 0.0);
        // Slightly violated triangle: radicand ≈ −1e-12.
        assert_eq!(heron(1.0, 1.0, 2.0 + 1e-12, HERON_CLAMP).unwrap(), 0.0);
        assert_eq!(
            heron(1.0, 1.0, 3.0, HERON_CLAMP).unwrap_err().code(),
            "NEGATIVE_RADICAND"
        );
    }

    #[test]
    fn euclidean_triangle_examples() {
        let t = euclidean_triangle_area(&fair_bits(3), 0, 1, 2).unwrap();
        assert!((t - SQRT3).abs() < 1e-12);
        assert_eq!(euclidean_triangle_area(&ghz_z(3), 0, 1, 2).unwrap(), 0.0);
        // A and B coincide, C independent: sides (0, 2, 2).
        let dup = ghz_z(2)
            .product(&JointDistribution::build([("C", 2)], [0.3, 0.7]).unwrap())
            .unwrap();
        assert!(euclidean_triangle_area(&dup, 0, 1, 2).unwrap().abs() < 1e-12);
    }

    #[test]
    fn blended_area_examples() {
        let b = blended_area(&fair_bits(3), 0, 1, 2).unwrap();
        assert!((b - (3.0 + SQRT3) / 2.0).abs() < 1e-12);
        assert!((b - 2.3660254).abs() < 1e-7);
        assert!(blended_area(&ghz_z(3), 0, 1, 2).unwrap().abs() < 1e-12);
        let x = blended_area(&xor_triple(), 0, 1, 2).unwrap();
        assert!((x - SQRT3 / 2.0).abs() < 1e-9);
    }

    #[test]
    fn info_volume_examples() {
        assert!((info_volume(&fair_bits(4), 0, 1, 2, 3).unwrap() - 4.0).abs() < 1e-12);
        assert!(info_volume(&ghz_z(4), 0, 1, 2, 3).unwrap().abs() < 1e-12);
        let mixed = JointDistribution::build([("X", 2)], [0.5, 0.5])
            .unwrap()
            .product(&ghz_z(3))
            .unwrap();
        assert!(info_volume(&mixed, 0, 1, 2, 3).unwrap().abs() < 1e-12);
        assert_eq!(
            info_volume(&mixed, 0, 1, 2, 2).unwrap_err().code(),
            "DUPLICATE_INDEX"
        );
    }

    #[test]
    fn n_volume_examples() {
        let v = n_volume(&fair_bits(5), &VariableSubset::full(5)).unwrap();
        assert!((v - 5.0).abs() < 1e-12);
        let dup = ghz_z(2).product(&fair_bits(2).renamed(["C", "D"]).unwrap()).unwrap();
        assert!(n_volume(&dup, &VariableSubset::full(4)).unwrap().abs() < 1e-12);
        assert!(n_volume(&dup, &[0, 1, 3].into()).unwrap().abs() < 1e-12);
        let v = n_volume(&bsc(), &VariableSubset::full(2)).unwrap();
        assert!((v - bsc_distance_oracle()).abs() < 1e-12);
        assert_eq!(
            n_volume(&bsc(), &[0].into()).unwrap_err().code(),
            "SUBSET_TOO_SMALL"
        );
    }

    #[test]
    fn surface_area_examples() {
        let s3 = surface_area(&fair_bits(3), &VariableSubset::full(3), SurfaceMode::FacetSum);
        assert!((s3.unwrap() - 6.0).abs() < 1e-12);
        let s4 = surface_area(&fair_bits(4), &VariableSubset::full(4), SurfaceMode::FacetSum);
        assert!((s4.unwrap() - 12.0).abs() < 1e-12);
        let g = surface_area(&ghz_z(3), &VariableSubset::full(3), SurfaceMode::FacetSum);
        assert!(g.unwrap().abs() < 1e-12);
        let mean = surface_area(&fair_bits(4), &VariableSubset::full(4), SurfaceMode::FacetMean);
        assert!((mean.unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(
            surface_area(&bsc(), &VariableSubset::full(2), SurfaceMode::FacetSum)
                .unwrap_err()
                .code(),
            "SUBSET_TOO_SMALL"
        );
    }

    #[test]
    fn surface_matches_facet_marginals() {
        let d = xor_triple().product(&JointDistribution::build([("D", 2)], [0.2, 0.8]).unwrap());
        let d = d.unwrap();
        let full = VariableSubset::full(4);
        let direct = surface_area(&d, &full, SurfaceMode::FacetSum).unwrap();
        let via_marginals: f64 = (0..4)
            .map(|i| {
                let facet = full.without(i);
                let m = d.marginalize(&facet).unwrap();
                n_volume(&m, &VariableSubset::full(3)).unwrap()
            })
            .sum();
        assert!((direct - via_marginals).abs() < 1e-12);
    }

    #[test]
    fn reactivity_examples() {
        assert_eq!(reactivity(6.0, 3.0), Reactivity::Finite(2.0));
        assert_eq!(reactivity(0.0, 3.0), Reactivity::Finite(0.0));
        assert_eq!(reactivity(6.0, 1e-12), Reactivity::Divergent);
        assert_eq!(
            serde_json::to_string(&Reactivity::Divergent).unwrap(),
            "\"DIVERGENT\""
        );
    }
}
