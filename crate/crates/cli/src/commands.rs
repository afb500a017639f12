use std::fmt::Write as _;
use std::path::Path;

use infogeo::dist::{JointDistribution, VariableSubset};
use infogeo::entropy::{
    clamp_reported, conditional_entropy, conditional_mutual_information, joint_entropy,
    multiway_mutual_information, mutual_information,
};
use infogeo::io::{self, DistributionFile, SettingConfig};
use infogeo::quantum::{self, qubit_names, MeasurementSetting};
use infogeo::report::{combinations, GeometryOptions, GeometryReport};
use infogeo::{Error, ErrorKind, SurfaceMode};
use serde_json::{json, Value};

use crate::{GeometryArgs, MeasuresArgs, QuantumArgs, SettingArgs, SweepArgs};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 input validation, 3 precondition violation, 4 internal numeric fault.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::NumericFault => 4,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let (code, message) = match self {
            CliError::Core(e) => (e.code(), e.to_string()),
            CliError::Io(m) => ("IO_ERROR", m.clone()),
        };
        json!({
            "error": { "code": code, "message": message, "exit_code": self.exit_code() }
        })
        .to_string()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_distribution(path: &Path, tolerance: f64) -> Result<JointDistribution, CliError> {
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    let text = read(path)?;
    let dist = if is_csv {
        io::read_samples_csv(text.as_bytes(), None)?
    } else {
        io::parse_distribution_json(&text, tolerance)?
    };
    Ok(dist)
}

fn split_names(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn subset_from_flag(dist: &JointDistribution, flag: Option<&str>) -> Result<VariableSubset, Error> {
    match flag {
        Some(list) => {
            let names = split_names(list);
            if names.is_empty() {
                return Err(Error::EmptySubset);
            }
            dist.subset_by_names(&names)
        }
        None => Ok(VariableSubset::full(dist.num_variables())),
    }
}

fn names_of(dist: &JointDistribution, subset: &VariableSubset) -> Vec<String> {
    subset
        .indices()
        .iter()
        .map(|&i| dist.variables()[i].name.clone())
        .collect()
}

fn to_pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn measures(args: &MeasuresArgs) -> Result<String, CliError> {
    let full = load_distribution(&args.input, args.common.tolerance)?;
    let keep = subset_from_flag(&full, args.subset.as_deref())?;
    let dist = full.marginalize(&keep)?;
    let n = dist.num_variables();
    let all: Vec<usize> = (0..n).collect();

    let mut entropies = Vec::new();
    for k in 1..=n {
        for combo in combinations(&all, k) {
            let subset = VariableSubset::new(combo);
            let h = joint_entropy(&dist, &subset)?;
            entropies.push(json!({
                "variables": names_of(&dist, &subset),
                "bits": clamp_reported(h),
            }));
        }
    }

    let mut pairwise = Vec::new();
    for pair in combinations(&all, 2) {
        let (x, y) = (VariableSubset::single(pair[0]), VariableSubset::single(pair[1]));
        pairwise.push(json!({
            "x": dist.variables()[pair[0]].name,
            "y": dist.variables()[pair[1]].name,
            "bits": clamp_reported(mutual_information(&dist, &x, &y)?),
        }));
    }

    let co_information = if n >= 3 {
        let parts: Vec<VariableSubset> = all.iter().map(|&i| VariableSubset::single(i)).collect();
        Some(multiway_mutual_information(&dist, &parts)?)
    } else {
        None
    };

    let mut conditionals = Vec::new();
    for spec in &args.conditionals {
        conditionals.push(evaluate_conditional(&dist, spec)?);
    }

    let report = json!({
        "tool_version": VERSION,
        "command": "measures",
        "config": {
            "input": args.input.display().to_string(),
            "subset": names_of(&full, &keep),
            "tolerance": args.common.tolerance,
            "conditionals": args.conditionals,
        },
        "seed": Value::Null,
        "distribution": DistributionFile::from(&dist),
        "entropies": entropies,
        "mutual_information": pairwise,
        "co_information": co_information,
        "conditionals": conditionals,
    });
    Ok(to_pretty(&report))
}

/// `X|Z` → H(X|Z); `X;Y|Z` → I(X;Y|Z). `Z` may be empty.
fn evaluate_conditional(dist: &JointDistribution, spec: &str) -> Result<Value, Error> {
    let (lhs, rhs) = spec.split_once('|').unwrap_or((spec, ""));
    let given = dist.subset_by_names(&split_names(rhs))?;
    if let Some((x, y)) = lhs.split_once(';') {
        let x = dist.subset_by_names(&split_names(x))?;
        let y = dist.subset_by_names(&split_names(y))?;
        if x.is_empty() || y.is_empty() {
            return Err(Error::Parse(format!("bad conditional spec {spec:?}")));
        }
        let v = conditional_mutual_information(dist, &x, &y, &given)?;
        Ok(json!({ "spec": spec, "kind": "conditional_mutual_information", "bits": clamp_reported(v) }))
    } else {
        let x = dist.subset_by_names(&split_names(lhs))?;
        if x.is_empty() {
            return Err(Error::Parse(format!("bad conditional spec {spec:?}")));
        }
        let v = conditional_entropy(dist, &x, &given)?;
        Ok(json!({ "spec": spec, "kind": "conditional_entropy", "bits": clamp_reported(v) }))
    }
}

pub fn geometry(args: &GeometryArgs) -> Result<String, CliError> {
    let dist = load_distribution(&args.input, args.common.tolerance)?;
    let subset = subset_from_flag(&dist, args.subset.as_deref())?;
    if args.volume && subset.len() < 4 {
        return Err(Error::SubsetTooSmall {
            required: 4,
            actual: subset.len(),
        }
        .into());
    }
    let surface_mode: SurfaceMode = args.surface_mode.parse()?;
    let options = GeometryOptions {
        heron_clamp: args.heron_clamp,
        divergence_threshold: args.divergence_threshold,
        surface_mode,
    };
    let mut report = GeometryReport::build(&dist, &subset, options)?;
    report.meta.config = Some(json!({
        "command": "geometry",
        "input": args.input.display().to_string(),
        "subset": names_of(&dist, &subset),
        "volume": args.volume,
        "tolerance": args.common.tolerance,
    }));
    Ok(to_pretty(&report))
}

fn setting_config(args: &SettingArgs) -> Result<SettingConfig, CliError> {
    if let Some(path) = &args.settings_config {
        return Ok(io::parse_setting_config(&read(path)?)?);
    }
    Ok(SettingConfig {
        scheme: args.scheme.clone(),
        count: args.count,
        seed: args.seed,
        n_theta: args.n_theta,
        n_phi: args.n_phi,
    })
}

pub fn quantum(args: &QuantumArgs) -> Result<String, CliError> {
    let spec = io::parse_state_spec(&read(&args.input)?)?;
    let state = spec.build()?;
    let config = setting_config(&args.settings)?;
    let settings: Vec<MeasurementSetting> = config.settings(state.qubit_count())?;
    let names = qubit_names(state.qubit_count());
    let subset = match &args.subset {
        Some(list) => {
            let wanted = split_names(list);
            let idx = wanted
                .iter()
                .map(|w| {
                    names
                        .iter()
                        .position(|n| n == w)
                        .ok_or_else(|| Error::Parse(format!("unknown qubit {w:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            VariableSubset::new(idx)
        }
        None => VariableSubset::full(state.qubit_count()),
    };
    let surface_mode: SurfaceMode = args.settings.surface_mode.parse()?;
    let avg = quantum::average_geometry(
        &state,
        &settings,
        &subset,
        surface_mode,
        args.settings.divergence_threshold,
    )?;
    let subset_names: Vec<&str> = subset.indices().iter().map(|&i| names[i].as_str()).collect();
    let report = json!({
        "tool_version": VERSION,
        "command": "quantum",
        "config": {
            "input": args.input.display().to_string(),
            "state": spec,
            "settings": config,
            "subset": subset_names,
            "surface_mode": surface_mode,
            "divergence_threshold": args.settings.divergence_threshold,
        },
        "seed": config.seed,
        "settings": avg.settings,
        "surface_mean": avg.surface_mean,
        "volume_mean": avg.volume_mean,
        "reactivity": avg.reactivity,
        "volume": {
            "min": avg.volume_min,
            "max": avg.volume_max,
            "mean": avg.volume_mean,
        },
    });
    Ok(to_pretty(&report))
}

pub fn sweep(args: &SweepArgs) -> Result<String, CliError> {
    let alphas = quantum::sweep_alphas(args.alpha_start, args.alpha_stop, args.steps)?;
    let config = setting_config(&args.settings)?;
    let surface_mode: SurfaceMode = args.settings.surface_mode.parse()?;
    let settings = config.settings(args.qubits)?;
    let rows = quantum::cat_sweep(
        args.qubits,
        &alphas,
        &settings,
        surface_mode,
        args.settings.divergence_threshold,
    )?;
    let mut out = String::from("alpha,surface,volume,reactivity\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.alpha, row.surface, row.volume, row.reactivity
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}
