//! Machine-readable verification reports.
//!
//! Reports are plain-old-data with a versioned schema so CI diffs are
//! self-describing; serialization is deterministic (struct field order,
//! no timestamps).

use serde::Serialize;

/// Schema version of the report format.
pub const REPORT_SCHEMA: u32 = 1;

/// One check outcome with its documented tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub entry: String,
    pub tolerance: f64,
    pub measured: f64,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        entry: impl Into<String>,
        tolerance: f64,
        measured: f64,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            entry: entry.into(),
            tolerance,
            measured,
            pass: measured.is_finite() && measured.abs() <= tolerance,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// All checks for one catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub checks: Vec<CheckRecord>,
}

impl EntryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Pass/fail tally.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Top-level verification report.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: String,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(tool_version: impl Into<String>, config: impl Into<String>) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            tool_version: tool_version.into(),
            config: config.into(),
            entries: Vec::new(),
            summary: Summary {
                total: 0,
                passed: 0,
                failed: 0,
            },
        }
    }

    pub fn push(&mut self, entry: EntryReport) {
        for c in &entry.checks {
            self.summary.total += 1;
            if c.pass {
                self.summary.passed += 1;
            } else {
                self.summary.failed += 1;
            }
        }
        self.entries.push(entry);
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}
