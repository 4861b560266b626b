//! Validation reports: every failing diagram is listed with its witness.

use std::fmt;

/// Outcome of a validator. An empty report means the input is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// One entry per failing diagram instance.
    pub failures: Vec<String>,
}

impl Report {
    /// An empty report.
    pub fn new() -> Report {
        Report::default()
    }

    /// True when nothing failed.
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records a failure.
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    /// Appends the failures of another report under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for f in other.failures {
            self.failures.push(format!("{prefix}: {f}"));
        }
    }

    /// Converts into a result, joining the failures into a validation error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self.failures.join("; ")))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for (k, line) in self.failures.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{line}")?;
        }
        Ok(())
    }
}
