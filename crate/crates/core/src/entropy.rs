//! Shannon entropy measures in bits.
//!
//! Every quantity here is an entropy-difference expression over joint
//! entropies of marginals; `0 · log 0` is taken as 0. Results are raw
//! floating-point values: quantities that are nonnegative in exact arithmetic
//! may come back as tiny negatives and are only clamped when reported.

use std::collections::HashMap;

use crate::dist::{JointDistribution, VariableSubset};
use crate::error::{Error, Result};

/// Probabilities below this contribute nothing to `−p log₂ p`.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-300;

/// Reporting floor: values in `[-REPORT_FLOOR, 0)` are shown as 0.
pub const REPORT_FLOOR: f64 = 1e-12;

/// `−Σ p log₂ p` over a probability vector.
pub fn shannon(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .filter(|&&p| p >= NEGLIGIBLE_PROBABILITY)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Clamps roundoff negatives of a provably nonnegative quantity to zero.
pub fn clamp_reported(value: f64) -> f64 {
    if value < 0.0 && value >= -REPORT_FLOOR {
        0.0
    } else {
        value
    }
}

/// `H(subset)`; the empty subset has entropy 0.
pub fn joint_entropy(dist: &JointDistribution, subset: &VariableSubset) -> Result<f64> {
    subset.validate(dist.num_variables())?;
    Ok(joint_entropy_unchecked(dist, subset))
}

fn joint_entropy_unchecked(dist: &JointDistribution, subset: &VariableSubset) -> f64 {
    if subset.is_empty() {
        return 0.0;
    }
    shannon(&dist.marginal_probabilities(subset))
}

fn check_disjoint(parts: &[&VariableSubset], n: usize) -> Result<VariableSubset> {
    let mut all = VariableSubset::empty();
    for part in parts {
        part.validate(n)?;
        all = all.union(part)?;
    }
    Ok(all)
}

/// `H(target | given) = H(target ∪ given) − H(given)`.
pub fn conditional_entropy(
    dist: &JointDistribution,
    target: &VariableSubset,
    given: &VariableSubset,
) -> Result<f64> {
    let union = check_disjoint(&[target, given], dist.num_variables())?;
    Ok(joint_entropy_unchecked(dist, &union) - joint_entropy_unchecked(dist, given))
}

/// `I(x : y) = H(x) + H(y) − H(x ∪ y)`.
pub fn mutual_information(
    dist: &JointDistribution,
    x: &VariableSubset,
    y: &VariableSubset,
) -> Result<f64> {
    let union = check_disjoint(&[x, y], dist.num_variables())?;
    Ok(joint_entropy_unchecked(dist, x) + joint_entropy_unchecked(dist, y)
        - joint_entropy_unchecked(dist, &union))
}

/// Co-information of `parts`: `Σ_{∅≠T⊆parts} (−1)^{|T|+1} H(∪T)`.
///
/// Reduces to [`mutual_information`] for two parts and to
/// `H(A)+H(B)+H(C) − H(AB) − H(AC) − H(BC) + H(ABC)` for three. It can be
/// negative (an XOR triple gives −1 bit).
pub fn multiway_mutual_information(
    dist: &JointDistribution,
    parts: &[VariableSubset],
) -> Result<f64> {
    if parts.len() < 2 {
        return Err(Error::TooFewParts(parts.len()));
    }
    if parts.len() >= usize::BITS as usize {
        return Err(Error::SizeMismatch {
            expected: usize::BITS as usize - 1,
            actual: parts.len(),
        });
    }
    let refs: Vec<&VariableSubset> = parts.iter().collect();
    check_disjoint(&refs, dist.num_variables())?;
    let mut cache = JointEntropies::new(dist);
    let mut total = 0.0;
    for mask in 1usize..(1 << parts.len()) {
        let mut union = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            if mask & (1 << k) != 0 {
                union.extend_from_slice(part.indices());
            }
        }
        let h = cache.get(&VariableSubset::new(union));
        if mask.count_ones() % 2 == 1 {
            total += h;
        } else {
            total -= h;
        }
    }
    Ok(total)
}

/// `I(x : y | given) = H(x∪given) + H(y∪given) − H(x∪y∪given) − H(given)`.
pub fn conditional_mutual_information(
    dist: &JointDistribution,
    x: &VariableSubset,
    y: &VariableSubset,
    given: &VariableSubset,
) -> Result<f64> {
    let all = check_disjoint(&[x, y, given], dist.num_variables())?;
    let xg = x.union(given)?;
    let yg = y.union(given)?;
    Ok(joint_entropy_unchecked(dist, &xg) + joint_entropy_unchecked(dist, &yg)
        - joint_entropy_unchecked(dist, &all)
        - joint_entropy_unchecked(dist, given))
}

/// Per-call memo of joint entropies keyed by the (unordered) variable set.
///
/// Subsets passed to [`JointEntropies::get`] must be valid for the wrapped
/// distribution.
pub struct JointEntropies<'a> {
    dist: &'a JointDistribution,
    cache: HashMap<Vec<usize>, f64>,
}

impl<'a> JointEntropies<'a> {
    pub fn new(dist: &'a JointDistribution) -> Self {
        Self {
            dist,
            cache: HashMap::new(),
        }
    }

    pub fn distribution(&self) -> &'a JointDistribution {
        self.dist
    }

    pub fn get(&mut self, subset: &VariableSubset) -> f64 {
        let mut key = subset.indices().to_vec();
        key.sort_unstable();
        if let Some(&h) = self.cache.get(&key) {
            return h;
        }
        // Canonical ordering so a set's entropy never depends on query order.
        let h = joint_entropy_unchecked(self.dist, &VariableSubset::new(key.clone()));
        self.cache.insert(key, h);
        h
    }
}
