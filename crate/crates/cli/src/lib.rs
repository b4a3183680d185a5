//! Named verification checks and span runs behind the `expomap` binary.

pub mod checks;
pub mod maps;
pub mod report;

use report::{Status, VerificationReport};

/// 0 when everything passed, 1 on any failure, 3 on an inconclusive result
/// under `strict`.
pub fn exit_code(reports: &[VerificationReport], strict: bool) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if strict && reports.iter().any(|r| r.status == Status::Inconclusive) {
        3
    } else {
        0
    }
}
