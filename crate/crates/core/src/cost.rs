use core::fmt;
use core::ops::Add;

use serde::{Deserialize, Serialize};

/// A non-negative edit cost measured in taxonomy hops.
///
/// `SemanticCost::INFINITE` marks pairs with no connecting path (verbs in
/// different hierarchies). Addition saturates at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SemanticCost(u32);

impl SemanticCost {
    pub const ZERO: SemanticCost = SemanticCost(0);
    pub const INFINITE: SemanticCost = SemanticCost(u32::MAX);

    pub const fn new(hops: u32) -> Self {
        assert!(hops != u32::MAX, "u32::MAX is reserved for INFINITE");
        SemanticCost(hops)
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Hop count, or `None` for an infinite cost.
    pub const fn hops(self) -> Option<u32> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }
}

impl Add for SemanticCost {
    type Output = SemanticCost;

    fn add(self, rhs: SemanticCost) -> SemanticCost {
        if !self.is_finite() || !rhs.is_finite() {
            return SemanticCost::INFINITE;
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v != u32::MAX => SemanticCost(v),
            _ => SemanticCost::INFINITE,
        }
    }
}

impl fmt::Display for SemanticCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hops() {
            Some(h) => write!(f, "{h}"),
            None => f.write_str("inf"),
        }
    }
}
