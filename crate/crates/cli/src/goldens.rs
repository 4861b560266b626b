//! The golden-report manifest shared by the CLI tests and the acceptance
//! suite. Each line names a golden file, the expected exit code and the
//! arguments; documents are looked up in the fixtures directory.

use std::path::{Path, PathBuf};
use std::process::Command;

/// One golden run.
#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub golden: String,
    pub exit: i32,
    pub args: Vec<String>,
}

/// Reads `goldens/manifest.txt` under the fixtures directory.
pub fn manifest(fixtures: &Path) -> std::io::Result<Vec<GoldenCase>> {
    let text = std::fs::read_to_string(fixtures.join("goldens").join("manifest.txt"))?;
    let mut out = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let mut parts = line.split_whitespace();
        let golden = parts.next().unwrap_or_default().to_string();
        let exit = parts.next().and_then(|e| e.parse().ok()).unwrap_or(-1);
        out.push(GoldenCase {
            golden,
            exit,
            args: parts.map(String::from).collect(),
        });
    }
    Ok(out)
}

/// Runs the binary on one case and compares the exit code and the report
/// byte for byte. With `INTCAT_BLESS` set, the golden is rewritten instead.
pub fn check(bin: &Path, fixtures: &Path, case: &GoldenCase) -> Result<(), String> {
    let out = Command::new(bin)
        .arg("--fixtures")
        .arg(fixtures)
        .args(&case.args)
        .output()
        .map_err(|e| format!("{}: cannot run: {e}", case.golden))?;
    let code = out.status.code().unwrap_or(-1);
    let path: PathBuf = fixtures.join("goldens").join(&case.golden);
    if std::env::var_os("INTCAT_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| format!("{}: {e}", case.golden))?;
    }
    if code != case.exit {
        return Err(format!(
            "{}: exit {code}, expected {}",
            case.golden, case.exit
        ));
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", case.golden))?;
    if want != out.stdout {
        return Err(format!("{}: report differs from the golden", case.golden));
    }
    Ok(())
}
