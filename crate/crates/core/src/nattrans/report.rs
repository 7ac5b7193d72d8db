use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

/// Outcome of one law check. Each witness is a counterexample tuple of
/// formatted terms and elements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(flatten)]
    pub status: Status,
    pub witnesses: Vec<Vec<String>>,
    /// Fraction of the relevant table entries that could be checked.
    pub coverage: f64,
}

impl CheckReport {
    /// Passes iff there are no witnesses.
    pub fn from_witnesses(check: &str, witnesses: Vec<Vec<String>>, coverage: f64) -> CheckReport {
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        CheckReport {
            check: check.to_string(),
            status,
            witnesses,
            coverage,
        }
    }

    pub fn skipped(check: &str, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            status: Status::Skipped(reason.into()),
            witnesses: Vec::new(),
            coverage: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// 0 when everything passes, 2 on any failure, 3 when something was skipped.
pub fn exit_code<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> i32 {
    let mut code = 0;
    for r in reports {
        match r.status {
            Status::Fail => return 2,
            Status::Skipped(_) => code = 3,
            Status::Pass => {}
        }
    }
    code
}

/// Entries checked over entries in total, 1 when there is nothing to check.
pub(crate) fn ratio(checked: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        checked as f64 / total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = CheckReport::from_witnesses("homomorphism", vec![vec!["mul(a,a)".into(), "1".into()]], 1.0);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"check":"homomorphism","status":"fail","witnesses":[["mul(a,a)","1"]],"coverage":1.0}"#
        );
        let s = CheckReport::skipped("inverse_homomorphism", "no inverse");
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"check":"inverse_homomorphism","status":"skipped","reason":"no inverse","witnesses":[],"coverage":0.0}"#
        );
    }

    #[test]
    fn exit_codes() {
        let pass = CheckReport::from_witnesses("a", vec![], 1.0);
        let fail = CheckReport::from_witnesses("b", vec![vec![]], 1.0);
        let skip = CheckReport::skipped("c", "x");
        assert_eq!(exit_code([&pass]), 0);
        assert_eq!(exit_code([&pass, &skip]), 3);
        assert_eq!(exit_code([&skip, &fail]), 2);
        assert_eq!(exit_code([]), 0);
    }
}
