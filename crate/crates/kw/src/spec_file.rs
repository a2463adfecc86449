//! JSON description of a system.
//!
//! ```json
//! {
//!   "name": "string with one bead",
//!   "r1": { "atoms": [], "segments": [], "tail_density": 1.0 },
//!   "r2": { "atoms": [[0.0, 1.0]], "segments": [], "tail_density": 0.0 }
//! }
//! ```
//!
//! `endpoint` is optional and may be a number or `"inf"`; each measure may
//! carry an explicit `b_rep`.

use std::fmt;

use kw_core::{Admission, IntegralSystem, StieltjesMeasure};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<[f64; 2]>,
    #[serde(default)]
    pub segments: Vec<[f64; 3]>,
    #[serde(default)]
    pub tail_density: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_rep: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Endpoint(pub f64);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<Endpoint>,
    pub r1: MeasureSpec,
    pub r2: MeasureSpec,
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Endpoint;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Endpoint, E> {
                Ok(Endpoint(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Endpoint, E> {
                Ok(Endpoint(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Endpoint, E> {
                Ok(Endpoint(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Endpoint, E> {
                match v {
                    "inf" | "infinity" => Ok(Endpoint(f64::INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

impl MeasureSpec {
    pub fn to_measure(&self) -> kw_core::Result<StieltjesMeasure> {
        let atoms: Vec<(f64, f64)> = self.atoms.iter().map(|a| (a[0], a[1])).collect();
        let segments: Vec<(f64, f64, f64)> = self.segments.iter().map(|s| (s[0], s[1], s[2])).collect();
        StieltjesMeasure::from_parts(&atoms, &segments, self.tail_density, self.b_rep)
    }

    /// Sorted parts with `b_rep` always spelled out.
    pub fn from_measure(m: &StieltjesMeasure) -> Self {
        MeasureSpec {
            atoms: m.atoms().iter().map(|a| [a.position, a.mass]).collect(),
            segments: m.segments().iter().map(|s| [s.start, s.end, s.density]).collect(),
            tail_density: m.tail_density(),
            b_rep: Some(m.b_rep()),
        }
    }
}

impl SystemSpec {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Builds the system. Indefinite systems are admitted; callers that need
    /// definiteness check [`IntegralSystem::is_definite`].
    pub fn to_system(&self) -> kw_core::Result<IntegralSystem> {
        IntegralSystem::new(
            self.r1.to_measure()?,
            self.r2.to_measure()?,
            self.endpoint.map(|e| e.0),
            Admission::AllowIndefinite,
        )
    }

    /// The canonical description of `system`: sorted parts, explicit `b_rep`
    /// and endpoint.
    pub fn canonical(system: &IntegralSystem, name: Option<String>, notes: Option<String>) -> Self {
        SystemSpec {
            name,
            notes,
            endpoint: Some(Endpoint(system.endpoint())),
            r1: MeasureSpec::from_measure(system.r1()),
            r2: MeasureSpec::from_measure(system.r2()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}
