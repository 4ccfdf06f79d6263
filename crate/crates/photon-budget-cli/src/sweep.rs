//! Sweep specifications: `VAR=start:stop:steps[:log]` or `VAR=v1,v2,...`.

use std::str::FromStr;

/// A one-variable sweep over explicit or generated grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: String,
    pub values: Vec<f64>,
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (variable, spec) = text
            .split_once('=')
            .ok_or_else(|| format!("sweep must look like VAR=start:stop:steps[:log], got {text:?}"))?;
        let variable = variable.trim().to_string();
        if variable.is_empty() {
            return Err("sweep variable name is empty".to_string());
        }
        let values = if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(format!("expected start:stop:steps[:log|lin], got {spec:?}"));
            }
            let start: f64 = parts[0].parse().map_err(|e| format!("bad start: {e}"))?;
            let stop: f64 = parts[1].parse().map_err(|e| format!("bad stop: {e}"))?;
            let steps: usize = parts[2].parse().map_err(|e| format!("bad steps: {e}"))?;
            let log = match parts.get(3).copied().unwrap_or("lin") {
                "log" => true,
                "lin" => false,
                other => return Err(format!("scale must be log or lin, got {other:?}")),
            };
            if steps == 0 {
                return Err("steps must be >= 1".to_string());
            }
            if log && (start <= 0.0 || stop <= 0.0) {
                return Err("log sweeps need positive endpoints".to_string());
            }
            if steps == 1 {
                vec![start]
            } else {
                (0..steps)
                    .map(|i| {
                        let frac = i as f64 / (steps - 1) as f64;
                        if log {
                            (start.ln() + frac * (stop.ln() - start.ln())).exp()
                        } else {
                            start + frac * (stop - start)
                        }
                    })
                    .collect()
            }
        } else {
            spec.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad value {v:?}: {e}")))
                .collect::<Result<Vec<f64>, String>>()?
        };
        if values.is_empty() {
            return Err("sweep produced no values".to_string());
        }
        Ok(SweepSpec { variable, values })
    }
}
