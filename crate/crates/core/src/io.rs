//! File formats: distribution JSON, sample CSV, state specs and setting configs.

use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::{JointDistribution, Variable};
use crate::error::{Error, Result};
use crate::quantum::{sample_settings, MeasurementSetting, PureState, Scheme};

/// `{"variables": [{"name", "cardinality"}], "probabilities": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub variables: Vec<Variable>,
    pub probabilities: Vec<f64>,
}

impl DistributionFile {
    pub fn into_distribution(self, tolerance: f64) -> Result<JointDistribution> {
        JointDistribution::with_tolerance(self.variables, self.probabilities, tolerance)
    }
}

impl From<&JointDistribution> for DistributionFile {
    fn from(d: &JointDistribution) -> Self {
        Self {
            variables: d.variables().to_vec(),
            probabilities: d.probabilities().to_vec(),
        }
    }
}

pub fn parse_distribution_json(text: &str, tolerance: f64) -> Result<JointDistribution> {
    let file: DistributionFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_distribution(tolerance)
}

pub fn distribution_to_json(dist: &JointDistribution) -> String {
    serde_json::to_string_pretty(&DistributionFile::from(dist))
        .expect("distribution serialization cannot fail")
}

/// Reads a CSV whose header names the variables and whose rows are integer
/// outcome tuples.
///
/// Cardinalities are taken from `cardinalities` when given, otherwise
/// inferred per column as `max outcome + 1`.
pub fn read_samples_csv<R: Read>(
    reader: R,
    cardinalities: Option<&[usize]>,
) -> Result<JointDistribution> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let names: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if names.is_empty() || names.iter().all(String::is_empty) {
        return Err(Error::EmptyInput("csv header"));
    }
    let mut records = Vec::new();
    for (r, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let record = row
            .iter()
            .map(|field| {
                field.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("row {}: {field:?} is not an outcome index", r + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(Error::EmptySample);
    }
    let cards: Vec<usize> = match cardinalities {
        Some(c) => {
            if c.len() != names.len() {
                return Err(Error::SizeMismatch {
                    expected: names.len(),
                    actual: c.len(),
                });
            }
            c.to_vec()
        }
        None => (0..names.len())
            .map(|k| records.iter().filter_map(|r| r.get(k)).max().map_or(1, |m| m + 1))
            .collect(),
    };
    let variables = names
        .into_iter()
        .zip(cards)
        .map(|(n, c)| Variable::new(n, c))
        .collect();
    JointDistribution::from_samples(&records, variables)
}

/// `{"kind": "ghz"|"w"|"product_zero"|"random"|"amplitudes", "n", "seed"?, "amplitudes"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Ghz,
    W,
    ProductZero,
    Random,
    Amplitudes,
}

impl StateSpec {
    pub fn build(&self) -> Result<PureState> {
        let need_n = || self.n.ok_or_else(|| Error::Parse("state spec needs \"n\"".into()));
        let state = match self.kind {
            StateKind::Ghz => PureState::ghz(need_n()?)?,
            StateKind::W => PureState::w_state(need_n()?)?,
            StateKind::ProductZero => PureState::product_zero(need_n()?)?,
            StateKind::Random => PureState::random(need_n()?, self.seed.unwrap_or(0))?,
            StateKind::Amplitudes => {
                let amps = self.amplitudes.as_ref().ok_or_else(|| {
                    Error::Parse("state spec of kind amplitudes needs \"amplitudes\"".into())
                })?;
                let state =
                    PureState::new(amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())?;
                if let Some(n) = self.n {
                    if n != state.qubit_count() {
                        return Err(Error::SizeMismatch {
                            expected: n,
                            actual: state.qubit_count(),
                        });
                    }
                }
                state
            }
        };
        Ok(state)
    }
}

pub fn parse_state_spec(text: &str) -> Result<StateSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// `{"scheme": "uniform_sphere"|"grid", "count", "seed", "n_theta"?, "n_phi"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingConfig {
    pub scheme: String,
    pub count: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_theta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_phi: Option<usize>,
}

impl SettingConfig {
    pub fn scheme(&self) -> Result<Scheme> {
        match self.scheme.as_str() {
            "uniform_sphere" => Ok(Scheme::UniformSphere),
            "grid" => Ok(Scheme::Grid {
                n_theta: self.n_theta.unwrap_or(8),
                n_phi: self.n_phi.unwrap_or(8),
            }),
            other => Err(Error::BadScheme(format!("unknown scheme {other:?}"))),
        }
    }

    pub fn settings(&self, n_qubits: usize) -> Result<Vec<MeasurementSetting>> {
        sample_settings(n_qubits, self.count, self.seed, self.scheme()?)
    }
}

pub fn parse_setting_config(text: &str) -> Result<SettingConfig> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::NORMALIZATION_TOLERANCE as DEFAULT_TOLERANCE;

    #[test]
    fn distribution_json_roundtrip() {
        let text = r#"{"variables":[{"name":"A","cardinality":2}],"probabilities":[0.25,0.75]}"#;
        let d = parse_distribution_json(text, DEFAULT_TOLERANCE).unwrap();
        let again = parse_distribution_json(&distribution_to_json(&d), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn distribution_json_errors() {
        let e = parse_distribution_json("{not json", DEFAULT_TOLERANCE).unwrap_err();
        assert_eq!(e.code(), "PARSE_ERROR");
        let text = r#"{"variables":[{"name":"A","cardinality":2}],"probabilities":[0.7,0.4]}"#;
        let e = parse_distribution_json(text, DEFAULT_TOLERANCE).unwrap_err();
        assert_eq!(e.code(), "NOT_NORMALIZED");
    }

    #[test]
    fn samples_csv() {
        let text = "A,B\n0,0\n1,1\n0,0\n1,1\n";
        let d = read_samples_csv(text.as_bytes(), None).unwrap();
        assert_eq!(d.names(), vec!["A", "B"]);
        assert_eq!(d.probabilities(), &[0.5, 0.0, 0.0, 0.5]);
        let d = read_samples_csv("A\n0\n0\n".as_bytes(), Some(&[3])).unwrap();
        assert_eq!(d.probabilities(), &[1.0, 0.0, 0.0]);
        assert_eq!(
            read_samples_csv("A\n".as_bytes(), None).unwrap_err().code(),
            "EMPTY_SAMPLE"
        );
        assert_eq!(
            read_samples_csv("A\nx\n".as_bytes(), None).unwrap_err().code(),
            "PARSE_ERROR"
        );
        assert_eq!(
            read_samples_csv("A\n4\n".as_bytes(), Some(&[2])).unwrap_err().code(),
            "OUT_OF_RANGE_OUTCOME"
        );
    }

    #[test]
    fn state_specs() {
        let ghz = parse_state_spec(r#"{"kind":"ghz","n":3}"#).unwrap().build().unwrap();
        assert_eq!(ghz, PureState::ghz(3).unwrap());
        let r = parse_state_spec(r#"{"kind":"random","n":2,"seed":7}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(r, PureState::random(2, 7).unwrap());
        let amps = parse_state_spec(r#"{"kind":"amplitudes","n":1,"amplitudes":[[0.6,0],[0,0.8]]}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(amps.qubit_count(), 1);
        let bad = parse_state_spec(r#"{"kind":"amplitudes","amplitudes":[[1,0],[1,0]]}"#)
            .unwrap()
            .build()
            .unwrap_err();
        assert_eq!(bad.code(), "NOT_NORMALIZED");
        assert!(parse_state_spec(r#"{"kind":"ghz"}"#).unwrap().build().is_err());
        assert!(parse_state_spec(r#"{"kind":"bogus","n":2}"#).is_err());
    }

    #[test]
    fn setting_configs() {
        let c = parse_setting_config(r#"{"scheme":"grid","count":2,"seed":0,"n_theta":2,"n_phi":1}"#)
            .unwrap();
        assert_eq!(c.settings(1).unwrap().len(), 2);
        let c = parse_setting_config(r#"{"scheme":"spiral","count":2,"seed":0}"#).unwrap();
        assert_eq!(c.settings(1).unwrap_err().code(), "BAD_SCHEME");
    }
}
