//! Uniform result record for every check: a name, a status, free-form
//! details and any certificates backing the claim.

use serde::Serialize;
use serde_json::Value;

use crate::polyring::{CertificateJson, MembershipCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
        }
    }

    /// Only failures count against a run.
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub details: Value,
    pub certificates: Vec<CertificateJson>,
}

impl Report {
    pub fn new(check: &str, status: Status, details: Value) -> Self {
        Report { check: check.to_string(), status, details, certificates: Vec::new() }
    }

    pub fn pass_if(check: &str, ok: bool, details: Value) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn with_certificate(mut self, c: &MembershipCertificate) -> Self {
        self.certificates.push(c.to_json());
        self
    }
}
