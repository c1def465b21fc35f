use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest name count reported as a finite breadth bound. Bounds at or
/// above it are reported as [`Breadth::Unbounded`]: no satellite universe
/// comes close, and the closed forms overflow integer types long before
/// `alpha * exp(dh / alpha)` stops growing.
pub const MAX_FINITE_BREADTH: u64 = 100_000;

/// Upper bound on the number of satellite constituents.
///
/// Serializes as a JSON integer, or the string `"unbounded"`.
/// Ordered with every finite count below `Unbounded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Breadth {
    Finite(u64),
    Unbounded,
}

impl Breadth {
    /// Saturating constructor.
    pub fn from_count(k: u64) -> Self {
        if k >= MAX_FINITE_BREADTH {
            Breadth::Unbounded
        } else {
            Breadth::Finite(k)
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Breadth::Finite(k) => Some(k),
            Breadth::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Breadth::Unbounded)
    }

    /// True when `k` names fit under the bound.
    pub fn admits(self, k: u64) -> bool {
        match self {
            Breadth::Finite(bound) => k <= bound,
            Breadth::Unbounded => true,
        }
    }

    /// The tighter of two bounds.
    pub fn min(self, other: Breadth) -> Breadth {
        match (self, other) {
            (Breadth::Finite(a), Breadth::Finite(b)) => Breadth::Finite(a.min(b)),
            (Breadth::Finite(a), Breadth::Unbounded) | (Breadth::Unbounded, Breadth::Finite(a)) => Breadth::Finite(a),
            (Breadth::Unbounded, Breadth::Unbounded) => Breadth::Unbounded,
        }
    }

    /// Clamp to an available count of names.
    pub fn cap(self, available: usize) -> u64 {
        let available = available as u64;
        match self {
            Breadth::Finite(k) => k.min(available),
            Breadth::Unbounded => available,
        }
    }
}

impl fmt::Display for Breadth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Breadth::Finite(k) => f.pad(&k.to_string()),
            Breadth::Unbounded => f.pad("unbounded"),
        }
    }
}

impl Serialize for Breadth {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Breadth::Finite(k) => serializer.serialize_u64(*k),
            Breadth::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Breadth {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BreadthVisitor;

        impl Visitor<'_> for BreadthVisitor {
            type Value = Breadth;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or \"unbounded\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Breadth, E> {
                Ok(Breadth::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Breadth, E> {
                u64::try_from(v)
                    .map(Breadth::Finite)
                    .map_err(|_| E::custom("breadth must be nonnegative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Breadth, E> {
                if v == "unbounded" {
                    Ok(Breadth::Unbounded)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(BreadthVisitor)
    }
}
