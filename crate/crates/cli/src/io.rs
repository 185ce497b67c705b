//! Filesystem helpers: atomic writes and config lookup.

use std::fs;
use std::io::Write;
use std::path::Path;

use ema_core::demo;

use crate::error::{CliError, CliResult};

/// Writes `bytes` to a temporary sibling of `path`, then renames it into
/// place so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path.file_name().ok_or_else(|| CliError::usage(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    let mut f = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(&tmp, e))?;
    f.sync_all().map_err(|e| CliError::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(path, e))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Text of a config given as a path or as `demo:NAME` for a bundled file
/// (`rig-12dof`, `rig-12dof-bad-weld`, `noise-pumps`, `geometry-gearbox`).
pub fn config_text(source: &str) -> CliResult<String> {
    match source.strip_prefix("demo:") {
        Some("rig-12dof") => Ok(demo::RIG_12DOF_JSON.to_string()),
        Some("rig-12dof-bad-weld") => {
            let rig = demo::rig_12dof_bad_weld()?;
            serde_json::to_string(&rig).map_err(|e| CliError::usage(e.to_string()))
        }
        Some("noise-pumps") => Ok(demo::NOISE_PUMPS_JSON.to_string()),
        Some("geometry-gearbox") => Ok(demo::GEOMETRY_JSON.to_string()),
        Some(other) => Err(CliError::usage(format!("unknown bundled config demo:{other}"))),
        None => read_text(Path::new(source)),
    }
}
