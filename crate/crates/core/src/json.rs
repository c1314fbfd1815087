//! JSON helpers shared by the CLI and the service.

use serde::{Serialize, Serializer};

/// Largest integer a double represents exactly.
pub const MAX_SAFE_INTEGER: u128 = 1 << 53;

/// Wide count that serializes as a JSON number up to 2^53 and as a decimal
/// string above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub u128);

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 <= MAX_SAFE_INTEGER {
            s.serialize_u64(self.0 as u64)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

/// Signed counterpart of [`BigCount`], for deltas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigDelta(pub i128);

impl Serialize for BigDelta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.unsigned_abs() <= MAX_SAFE_INTEGER {
            s.serialize_i64(self.0 as i64)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}
