//! Named channel builders reachable from the command line.

use std::collections::BTreeMap;

use commutant_core::builders::{collective, phase_damping, two_qubit_dephasing, zz_damping, MAX_COLLECTIVE_QUBITS};
use commutant_core::Channel;

use crate::CliError;

pub const DEFAULT_P: f64 = 0.25;

/// One row of `list-builtins`.
pub struct BuiltinInfo {
    pub name: &'static str,
    pub parameter: &'static str,
    pub bounds: String,
    pub default: Option<String>,
    pub description: &'static str,
}

/// Alphabetical.
pub fn catalogue() -> Vec<BuiltinInfo> {
    vec![
        BuiltinInfo {
            name: "collective",
            parameter: "n",
            bounds: format!("1 ≤ n ≤ {MAX_COLLECTIVE_QUBITS} (integer)"),
            default: None,
            description: "n-qubit collective rotations exp(iX)/√3, exp(iY)/√3, exp(iZ)/√3",
        },
        BuiltinInfo {
            name: "phase-damping",
            parameter: "p",
            bounds: "0 < p < 1".into(),
            default: Some(DEFAULT_P.to_string()),
            description: "single-qubit dephasing {√(1−p) I, √p Z}",
        },
        BuiltinInfo {
            name: "two-qubit-dephasing",
            parameter: "p",
            bounds: "0 < p < 1".into(),
            default: Some(DEFAULT_P.to_string()),
            description: "independent dephasing on two qubits",
        },
        BuiltinInfo {
            name: "zz-damping",
            parameter: "p",
            bounds: "0 < p < 1".into(),
            default: Some(DEFAULT_P.to_string()),
            description: "correlated two-qubit dephasing {√(1−p) I, √p Z⊗Z}",
        },
    ]
}

/// Parses `name`, `name:arg` and `--param k=v` into a channel.
pub fn build(spec: &str, params: &[String]) -> Result<Channel, CliError> {
    let (name, inline) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let info = catalogue()
        .into_iter()
        .find(|b| b.name == name)
        .ok_or_else(|| CliError::Usage(format!("unknown builtin '{name}' (see list-builtins)")))?;

    let mut values: BTreeMap<String, String> = BTreeMap::new();
    if let Some(a) = inline {
        values.insert(info.parameter.to_owned(), a.to_owned());
    }
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param expects k=v, got '{p}'")))?;
        if k != info.parameter {
            return Err(CliError::Usage(format!("{name} has no parameter '{k}'")));
        }
        values.insert(k.to_owned(), v.to_owned());
    }
    let raw = values.get(info.parameter).cloned();

    let ch = match name {
        "collective" => {
            let raw = raw.ok_or_else(|| CliError::Usage("collective needs n, e.g. collective:3".into()))?;
            let n: usize = raw
                .parse()
                .map_err(|_| CliError::Usage(format!("n must be an integer, got '{raw}'")))?;
            collective(n)?
        }
        _ => {
            let p = match raw {
                Some(r) => r
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("p must be a number, got '{r}'")))?,
                None => DEFAULT_P,
            };
            match name {
                "phase-damping" => phase_damping(p)?,
                "two-qubit-dephasing" => two_qubit_dephasing(p)?,
                _ => zz_damping(p)?,
            }
        }
    };
    Ok(ch)
}
