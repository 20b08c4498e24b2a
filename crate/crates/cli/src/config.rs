//! `--config file.json`: every key of the file replaces the flag of the same
//! name in the parsed arguments.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};

pub fn apply<T: Serialize + DeserializeOwned>(args: T, path: Option<&Path>) -> Result<T> {
    let Some(path) = path else { return Ok(args) };
    let shown = path.display().to_string();
    let err = |msg: String| CliError::Config { path: shown.clone(), msg };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let file: Value = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    let Value::Object(file) = file else {
        return Err(err("top level must be a JSON object".into()));
    };
    let Value::Object(mut merged) = serde_json::to_value(&args)? else {
        unreachable!("argument structs serialize to objects")
    };
    for (k, v) in file {
        if !merged.contains_key(&k) {
            let mut known: Vec<&String> = merged.keys().collect();
            known.sort();
            return Err(err(format!("unknown key {k:?}; expected one of {known:?}")));
        }
        merged.insert(k, v);
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| err(e.to_string()))
}
