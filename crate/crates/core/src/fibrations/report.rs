//! Machine-readable outcome of one identity check.

use serde::{Serialize, Serializer};

/// How an identity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Exact polynomial identity.
    VerifiedSymbolic,
    /// Exact identity at this many random rational points.
    VerifiedAtPoints(usize),
    Failed,
}

impl Status {
    pub fn passed(&self) -> bool {
        !matches!(self, Status::Failed)
    }

    pub fn label(&self) -> String {
        match self {
            Status::VerifiedSymbolic => "verified-symbolic".to_string(),
            Status::VerifiedAtPoints(n) => format!("verified-at-{n}-points"),
            Status::Failed => "failed".to_string(),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub status: Status,
    /// Overall factor relating the two sides, when one is part of the claim.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    /// Constant ratio between the two sides, when that is the claim.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_ratio: Option<String>,
    /// Points at which a failure was observed (or at which a numeric check
    /// was performed).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    pub detail: String,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        IdentityReport {
            name: name.into(),
            status,
            factor: None,
            constant_ratio: None,
            witnesses: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn symbolic(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok {
            Status::VerifiedSymbolic
        } else {
            Status::Failed
        };
        IdentityReport::new(name, status, detail)
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn with_factor(mut self, f: impl ToString) -> Self {
        self.factor = Some(f.to_string());
        self
    }

    pub fn with_ratio(mut self, r: impl ToString) -> Self {
        self.constant_ratio = Some(r.to_string());
        self
    }

    pub fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }

    /// One-line human-readable summary.
    pub fn text_line(&self) -> String {
        let mut s = format!("{:<40} {}", self.name, self.status.label());
        if let Some(f) = &self.factor {
            s.push_str(&format!("  factor = {f}"));
        }
        if let Some(r) = &self.constant_ratio {
            s.push_str(&format!("  ratio = {r}"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_labels() {
        assert_eq!(Status::VerifiedSymbolic.label(), "verified-symbolic");
        assert_eq!(
            Status::VerifiedAtPoints(20).label(),
            "verified-at-20-points"
        );
        let r = IdentityReport::symbolic("x", false, "d");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "failed");
        assert!(v.get("factor").is_none());
    }
}
