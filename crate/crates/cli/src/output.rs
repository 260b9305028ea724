//! Deterministic JSON and CSV emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

const SIGNIFICANT_DIGITS: usize = 12;

/// Round to twelve significant digits so reruns print identical text.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON with sorted keys and rounded floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
    serde_json::to_string_pretty(&round_value(v)).map_err(|e| CliError::Io(e.to_string()))
}

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        serde_json::Number::from_f64(round_sig(x)).map_or_else(|| "nan".into(), |n| n.to_string())
    } else {
        "nan".into()
    }
}

/// Where artifacts go; `None` means stdout only.
#[derive(Debug, Clone)]
pub struct Artifacts {
    dir: Option<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(Artifacts { dir })
    }

    fn path(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(name))
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<(), CliError> {
        if let Some(path) = self.path(name) {
            let mut text = to_json(value)?;
            text.push('\n');
            write_file(&path, text.as_bytes())?;
        }
        Ok(())
    }

    /// CSV with a leading `# config=` comment holding the resolved config.
    pub fn write_csv<C: Serialize>(
        &self,
        name: &str,
        config: &C,
        header: &[String],
        rows: &[Vec<f64>],
    ) -> Result<(), CliError> {
        let Some(path) = self.path(name) else {
            return Ok(());
        };
        let config_json = serde_json::to_string(&round_value(
            serde_json::to_value(config).map_err(|e| CliError::Io(e.to_string()))?,
        ))
        .map_err(|e| CliError::Io(e.to_string()))?;
        let mut buf = Vec::new();
        writeln!(buf, "# config={config_json}").map_err(|e| CliError::Io(e.to_string()))?;
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(header)
                .map_err(|e| CliError::Io(e.to_string()))?;
            for row in rows {
                w.write_record(row.iter().map(|x| format_number(*x)))
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        write_file(&path, &buf)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
