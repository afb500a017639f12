//! Serializable geometry report for a distribution.

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{JointDistribution, VariableSubset};
use crate::entropy::clamp_reported;
use crate::error::{Error, Result};
use crate::geometry::{self, Reactivity, SurfaceMode};
use crate::io::DistributionFile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryOptions {
    pub heron_clamp: f64,
    pub divergence_threshold: f64,
    pub surface_mode: SurfaceMode,
}

impl Default for GeometryOptions {
    fn default() -> Self {
        Self {
            heron_clamp: geometry::HERON_CLAMP,
            divergence_threshold: geometry::DIVERGENCE_THRESHOLD,
            surface_mode: SurfaceMode::FacetSum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub names: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleAreas {
    pub variables: [String; 3],
    pub info_area: f64,
    pub euclidean_area: f64,
    pub blended_area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TetrahedronVolume {
    pub variables: [String; 4],
    pub info_volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub tool_version: String,
    pub subset: Vec<String>,
    pub dimension: usize,
    pub options: GeometryOptions,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub settings: Option<usize>,
    /// Caller-supplied echo of the run configuration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
    /// The evaluated distribution, so the report can be re-ingested.
    pub distribution: DistributionFile,
}

/// Distances, areas, volumes and the full-subset simplex measures.
///
/// Field names are part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub distances: DistanceMatrix,
    pub areas: Vec<TriangleAreas>,
    pub volumes: Vec<TetrahedronVolume>,
    pub n_volume: f64,
    pub surface_area: Option<f64>,
    pub reactivity: Option<Reactivity>,
    pub meta: ReportMeta,
}

/// All `k`-element combinations of `items`, lexicographic.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

impl GeometryReport {
    /// Evaluates every pair, triple and quadruple of `subset`, plus the
    /// n-volume, surface and reactivity of `subset` itself.
    pub fn build(
        dist: &JointDistribution,
        subset: &VariableSubset,
        options: GeometryOptions,
    ) -> Result<Self> {
        subset.validate(dist.num_variables())?;
        if subset.len() < 2 {
            return Err(Error::SubsetTooSmall {
                required: 2,
                actual: subset.len(),
            });
        }
        let all_names = dist.names();
        let name = |i: usize| all_names[i].to_owned();
        let idx = subset.indices();
        let d = idx.len();

        let mut matrix = vec![vec![0.0; d]; d];
        for a in 0..d {
            for b in (a + 1)..d {
                let v = clamp_reported(geometry::info_distance(dist, idx[a], idx[b])?);
                matrix[a][b] = v;
                matrix[b][a] = v;
            }
        }

        let areas = combinations(idx, 3)
            .par_iter()
            .map(|t| {
                let info = geometry::info_area(dist, t[0], t[1], t[2])?;
                let euclid = geometry::euclidean_triangle_area_with_clamp(
                    dist,
                    t[0],
                    t[1],
                    t[2],
                    options.heron_clamp,
                )?;
                Ok(TriangleAreas {
                    variables: [name(t[0]), name(t[1]), name(t[2])],
                    info_area: clamp_reported(info),
                    euclidean_area: euclid,
                    blended_area: clamp_reported(0.5 * (info + euclid)),
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let volumes = combinations(idx, 4)
            .par_iter()
            .map(|q| {
                let v = geometry::info_volume(dist, q[0], q[1], q[2], q[3])?;
                Ok(TetrahedronVolume {
                    variables: [name(q[0]), name(q[1]), name(q[2]), name(q[3])],
                    info_volume: clamp_reported(v),
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let (n_volume, surface_area, reactivity) = if d >= 3 {
            let (s, v) = geometry::surface_and_volume(dist, subset, options.surface_mode)?;
            (
                v,
                Some(clamp_reported(s)),
                Some(geometry::reactivity_with_threshold(
                    s,
                    v,
                    options.divergence_threshold,
                )),
            )
        } else {
            (geometry::n_volume(dist, subset)?, None, None)
        };

        let names: Vec<String> = idx.iter().map(|&i| name(i)).collect();
        Ok(Self {
            distances: DistanceMatrix {
                names: names.clone(),
                matrix,
            },
            areas,
            volumes,
            n_volume: clamp_reported(n_volume),
            surface_area,
            reactivity,
            meta: ReportMeta {
                tool_version: env!("CARGO_PKG_VERSION").to_owned(),
                subset: names,
                dimension: d,
                options,
                seed: None,
                settings: None,
                config: None,
                distribution: DistributionFile::from(dist),
            },
        })
    }
}
