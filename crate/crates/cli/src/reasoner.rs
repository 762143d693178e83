//! External reasoner hook: `CMD <path>` prints `consistent` or
//! `inconsistent` on its first line of output.

use std::path::Path;
use std::process::{Command, Stdio};

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

/// Runs `cmd` through the shell with `path` appended as one argument.
pub fn check(cmd: &str, path: &Path) -> Result<Consistency> {
    let output = Command::new("sh")
        .arg("-c")
        .arg(format!("{cmd} \"$1\""))
        .arg("sh")
        .arg(path)
        .stdin(Stdio::null())
        .output()
        .with_context(|| format!("cannot run reasoner `{cmd}`"))?;
    if !output.status.success() {
        bail!(
            "reasoner `{cmd}` failed with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        );
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    match stdout.lines().next().map(str::trim) {
        Some("consistent") => Ok(Consistency::Consistent),
        Some("inconsistent") => Ok(Consistency::Inconsistent),
        other => bail!("reasoner `{cmd}` answered {:?}", other.unwrap_or("")),
    }
}
