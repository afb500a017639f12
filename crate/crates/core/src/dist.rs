//! Discrete joint distributions over named variables.
//!
//! Probabilities are stored as a flat row-major tensor: the outcome tuple
//! `(x_0, x_1, ..., x_{n-1})` lives at `Σ x_i · stride_i` where the last
//! variable varies fastest. Values are immutable once built; every operation
//! returns a fresh, revalidated distribution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance on `Σ p = 1` at ingestion.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Marginal probabilities at or below this are treated as impossible events
/// when conditioning.
pub const ZERO_CONDITION_FLOOR: f64 = 1e-12;

/// A named discrete variable with `cardinality` outcomes `0..cardinality`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub cardinality: usize,
}

impl Variable {
    pub fn new(name: impl Into<String>, cardinality: usize) -> Self {
        Self {
            name: name.into(),
            cardinality,
        }
    }
}

impl<S: Into<String>> From<(S, usize)> for Variable {
    fn from((name, cardinality): (S, usize)) -> Self {
        Variable::new(name, cardinality)
    }
}

/// Ordered selection of variable positions within a distribution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableSubset(Vec<usize>);

impl VariableSubset {
    pub fn new(indices: impl Into<Vec<usize>>) -> Self {
        Self(indices.into())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn single(index: usize) -> Self {
        Self(vec![index])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    /// Checks distinctness and range against a distribution with `len` variables.
    pub fn validate(&self, len: usize) -> Result<()> {
        for (pos, &index) in self.0.iter().enumerate() {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
            if self.0[..pos].contains(&index) {
                return Err(Error::DuplicateIndex(index));
            }
        }
        Ok(())
    }

    /// Concatenation `self ++ other`, failing if the two share an index.
    pub fn union(&self, other: &VariableSubset) -> Result<VariableSubset> {
        if let Some(&shared) = self.0.iter().find(|i| other.contains(**i)) {
            return Err(Error::OverlappingSubsets(shared));
        }
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Ok(VariableSubset(out))
    }

    /// The subset with `index` removed, order otherwise preserved.
    pub fn without(&self, index: usize) -> VariableSubset {
        VariableSubset(self.0.iter().copied().filter(|&i| i != index).collect())
    }

    /// Maps positions of `inner` (which index into `self`) back to the
    /// indices `self` refers to, i.e. the composition `self ∘ inner`.
    pub fn compose(&self, inner: &VariableSubset) -> Result<VariableSubset> {
        inner.validate(self.len())?;
        Ok(VariableSubset(inner.0.iter().map(|&i| self.0[i]).collect()))
    }
}

impl From<Vec<usize>> for VariableSubset {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[usize; N]> for VariableSubset {
    fn from(v: [usize; N]) -> Self {
        Self(v.to_vec())
    }
}

/// A validated joint probability tensor over named discrete variables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    variables: Vec<Variable>,
    probabilities: Vec<f64>,
}

impl JointDistribution {
    /// Builds and validates a distribution with the default normalization
    /// tolerance.
    pub fn new(variables: Vec<Variable>, probabilities: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(variables, probabilities, NORMALIZATION_TOLERANCE)
    }

    /// Builds and validates a distribution; `tolerance` bounds `|Σ p − 1|`.
    pub fn with_tolerance(
        variables: Vec<Variable>,
        probabilities: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::EmptyInput("variables"));
        }
        if probabilities.is_empty() {
            return Err(Error::EmptyInput("probabilities"));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.name.is_empty() {
                return Err(Error::EmptyName);
            }
            if v.cardinality == 0 {
                return Err(Error::ZeroCardinality {
                    name: v.name.clone(),
                });
            }
            if variables[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateName(v.name.clone()));
            }
        }
        let expected = variables
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.cardinality))
            .ok_or(Error::ShapeMismatch {
                expected: usize::MAX,
                actual: probabilities.len(),
            })?;
        if expected != probabilities.len() {
            return Err(Error::ShapeMismatch {
                expected,
                actual: probabilities.len(),
            });
        }
        for (index, &value) in probabilities.iter().enumerate() {
            if !(0.0..=1.0 + tolerance).contains(&value) {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let sum: f64 = probabilities.iter().sum();
        if !((sum - 1.0).abs() <= tolerance) {
            return Err(Error::NotNormalized { sum, tolerance });
        }
        Ok(Self {
            variables,
            probabilities,
        })
    }

    /// Convenience constructor from `(name, cardinality)` pairs.
    pub fn build<S: Into<String>>(
        variables: impl IntoIterator<Item = (S, usize)>,
        probabilities: impl Into<Vec<f64>>,
    ) -> Result<Self> {
        Self::new(
            variables.into_iter().map(Variable::from).collect(),
            probabilities.into(),
        )
    }

    /// Empirical frequencies of `records` (outcome tuples) over `variables`.
    pub fn from_samples(records: &[Vec<usize>], variables: Vec<Variable>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptySample);
        }
        if variables.is_empty() {
            return Err(Error::EmptyInput("variables"));
        }
        let strides = strides_of(&variables);
        let size: usize = variables.iter().map(|v| v.cardinality).product();
        let mut counts = vec![0u64; size];
        for (r, record) in records.iter().enumerate() {
            if record.len() != variables.len() {
                return Err(Error::RecordArity {
                    record: r,
                    expected: variables.len(),
                    actual: record.len(),
                });
            }
            let mut flat = 0;
            for ((&outcome, var), stride) in record.iter().zip(&variables).zip(&strides) {
                if outcome >= var.cardinality {
                    return Err(Error::OutOfRangeOutcome {
                        record: r,
                        outcome,
                        cardinality: var.cardinality,
                    });
                }
                flat += outcome * stride;
            }
            counts[flat] += 1;
        }
        let total = records.len() as f64;
        let probabilities = counts.into_iter().map(|c| c as f64 / total).collect();
        Self::new(variables, probabilities)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.variables.iter().map(|v| v.cardinality).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.variables.iter().map(|v| v.name.as_str()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Resolves variable names to a subset, in the order given.
    pub fn subset_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VariableSubset> {
        let indices = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::Parse(format!("unknown variable {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let subset = VariableSubset(indices);
        subset.validate(self.num_variables())?;
        Ok(subset)
    }

    /// Probability of a full outcome tuple.
    pub fn prob(&self, outcome: &[usize]) -> f64 {
        let flat: usize = outcome
            .iter()
            .zip(strides_of(&self.variables))
            .map(|(o, s)| o * s)
            .sum();
        self.probabilities[flat]
    }

    /// Sums out every variable not in `keep`; the result's variables follow
    /// the order of `keep`.
    pub fn marginalize(&self, keep: &VariableSubset) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        keep.validate(self.num_variables())?;
        let probabilities = self.marginal_probabilities(keep);
        let variables = keep
            .indices()
            .iter()
            .map(|&i| self.variables[i].clone())
            .collect();
        Self::new(variables, probabilities)
    }

    /// Raw marginal tensor for a subset already known to be valid. The empty
    /// subset yields `[1.0]`.
    pub(crate) fn marginal_probabilities(&self, keep: &VariableSubset) -> Vec<f64> {
        let n = self.num_variables();
        if keep.len() == n && keep.indices().iter().enumerate().all(|(p, &i)| p == i) {
            return self.probabilities.clone();
        }
        // Output stride contributed by each input variable (0 when summed out).
        let mut contrib = vec![0usize; n];
        let mut out_size = 1usize;
        for &i in keep.indices().iter().rev() {
            contrib[i] = out_size;
            out_size *= self.variables[i].cardinality;
        }
        let cards = self.cardinalities();
        let mut out = vec![0.0; out_size];
        let mut digits = vec![0usize; n];
        let mut out_index = 0usize;
        for &p in &self.probabilities {
            out[out_index] += p;
            // Odometer increment, last variable fastest.
            for v in (0..n).rev() {
                digits[v] += 1;
                out_index += contrib[v];
                if digits[v] < cards[v] {
                    break;
                }
                out_index -= contrib[v] * cards[v];
                digits[v] = 0;
            }
        }
        out
    }

    /// Distribution of the remaining variables given `variable = value`.
    pub fn condition(&self, variable: usize, value: usize) -> Result<JointDistribution> {
        let n = self.num_variables();
        if variable >= n {
            return Err(Error::IndexOutOfRange {
                index: variable,
                len: n,
            });
        }
        let card = self.variables[variable].cardinality;
        if value >= card {
            return Err(Error::OutOfRangeOutcome {
                record: 0,
                outcome: value,
                cardinality: card,
            });
        }
        if n == 1 {
            return Err(Error::TooFewVariables {
                required: 2,
                actual: 1,
            });
        }
        let marginal = self.marginal_probabilities(&VariableSubset::single(variable))[value];
        if marginal <= ZERO_CONDITION_FLOOR {
            return Err(Error::ZeroCondition(marginal));
        }
        let strides = strides_of(&self.variables);
        let stride = strides[variable];
        let probabilities = self
            .probabilities
            .iter()
            .enumerate()
            .filter(|(flat, _)| (flat / stride) % card == value)
            .map(|(_, &p)| p / marginal)
            .collect();
        let variables = self
            .variables
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != variable)
            .map(|(_, v)| v.clone())
            .collect();
        Self::new(variables, probabilities)
    }

    /// Independent joint `p(x, y) = p1(x) · p2(y)`; variables of `self` come first.
    pub fn product(&self, other: &JointDistribution) -> Result<JointDistribution> {
        if let Some(v) = other
            .variables
            .iter()
            .find(|v| self.index_of(&v.name).is_some())
        {
            return Err(Error::NameCollision(v.name.clone()));
        }
        let probabilities = self
            .probabilities
            .iter()
            .flat_map(|&p| other.probabilities.iter().map(move |&q| p * q))
            .collect();
        let variables = self
            .variables
            .iter()
            .chain(&other.variables)
            .cloned()
            .collect();
        Self::new(variables, probabilities)
    }

    /// Same tensor with variables renamed; `names` must match in count.
    pub fn renamed<S: Into<String>>(&self, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.num_variables() {
            return Err(Error::SizeMismatch {
                expected: self.num_variables(),
                actual: names.len(),
            });
        }
        let variables = names
            .into_iter()
            .zip(&self.variables)
            .map(|(name, v)| Variable::new(name, v.cardinality))
            .collect();
        Self::new(variables, self.probabilities.clone())
    }
}

pub(crate) fn strides_of(variables: &[Variable]) -> Vec<usize> {
    let mut strides = vec![1usize; variables.len()];
    for i in (0..variables.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * variables[i + 1].cardinality;
    }
    strides
}
