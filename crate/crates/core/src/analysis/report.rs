use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported only; never affects the exit status.
    Info,
}

/// One named measurement against a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub bound: f64,
    /// `bound − measured` for upper bounds; positive means headroom.
    pub margin: f64,
    pub detail: String,
}

impl Check {
    /// Passes when `measured ≤ bound`.
    pub fn upper(name: impl Into<String>, measured: f64, bound: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if measured <= bound { Status::Pass } else { Status::Fail },
            measured,
            bound,
            margin: bound - measured,
            detail: detail.into(),
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: f64::from(u8::from(!ok)),
            bound: 0.0,
            margin: f64::from(u8::from(ok)),
            detail: detail.into(),
        }
    }

    pub fn info(name: impl Into<String>, measured: f64, reference: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            measured,
            bound: reference,
            margin: reference - measured,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            write!(f, "[{tag}] {}: measured {:.6e}, bound {:.6e}", c.name, c.measured, c.bound)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
