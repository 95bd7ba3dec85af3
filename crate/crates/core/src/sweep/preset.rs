use serde::Deserialize;

use super::{RegimeMapConfig, SweepConfig};
use crate::error::{Error, Result};

/// Built-in configurations: name and embedded JSON.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig1-oscillator", include_str!("../../presets/fig1-oscillator.json")),
    ("fig1-spinboson", include_str!("../../presets/fig1-spinboson.json")),
    ("subohmic-map", include_str!("../../presets/subohmic-map.json")),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Sweep(SweepConfig),
    RegimeMap(RegimeMapConfig),
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Task {
    Sweep,
    RegimeMap,
}

#[derive(Deserialize)]
struct PresetFile {
    task: Task,
    description: String,
    config: serde_json::Value,
}

fn parse<T: serde::de::DeserializeOwned>(name: &str, v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::config("preset", format!("`{name}`: {e}")))
}

pub fn preset(name: &str) -> Result<Preset> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::config("preset", format!("unknown preset `{name}`")))?;
    let file: PresetFile = serde_json::from_str(text)
        .map_err(|e| Error::config("preset", format!("`{name}`: {e}")))?;
    Ok(match file.task {
        Task::Sweep => Preset::Sweep(parse(name, file.config)?),
        Task::RegimeMap => Preset::RegimeMap(parse(name, file.config)?),
    })
}

/// One-line description of each preset.
pub fn preset_descriptions() -> Vec<(&'static str, String)> {
    PRESETS
        .iter()
        .map(|(name, text)| {
            let d = serde_json::from_str::<PresetFile>(text)
                .map(|f| f.description)
                .unwrap_or_default();
            (*name, d)
        })
        .collect()
}
