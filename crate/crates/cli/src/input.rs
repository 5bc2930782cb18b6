use std::fs;
use std::path::Path;

use atoro_core::planar_code::parse_many;
use atoro_core::{CanonicalCode, PlaneMap};

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Maps from planar code text, a checkpoint, or a list of hex codes.
pub fn parse_maps(text: &str) -> Result<Vec<PlaneMap>, CliError> {
    let content: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if content.iter().any(|(_, l)| l.starts_with("AG")) {
        return parse_many(text).map_err(|e| CliError::Parse(e.to_string()));
    }
    let mut out = Vec::new();
    for (no, line) in content {
        if line.starts_with("ATOROv1") || line.starts_with("L ") {
            continue;
        }
        let code = CanonicalCode::from_hex(line)
            .ok_or_else(|| CliError::Parse(format!("line {no}: not a planar code or canonical code")))?;
        out.push(code.to_map().map_err(|e| CliError::Parse(format!("line {no}: {e}")))?);
    }
    Ok(out)
}

pub fn load_maps(path: &Path) -> Result<Vec<PlaneMap>, CliError> {
    let maps = parse_maps(&read_text(path)?)?;
    if maps.is_empty() {
        return Err(CliError::Parse(format!("{}: no graphs found", path.display())));
    }
    Ok(maps)
}

pub fn load_one(path: &Path) -> Result<PlaneMap, CliError> {
    let mut maps = load_maps(path)?;
    if maps.len() != 1 {
        return Err(CliError::Usage(format!("{}: expected exactly one graph, found {}", path.display(), maps.len())));
    }
    Ok(maps.pop().unwrap())
}
