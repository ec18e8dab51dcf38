//! Versioned JSON documents for bodies, and fixed-precision number output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::bodies::{Body, ConvexPolygon, DiskPolygon, Edge};
use crate::error::{Error, Result};
use crate::regions::Cap;
use crate::sphere::SpherePoint;

pub const SCHEMA_VERSION: &str = "1";

const TOP_FIELDS: [&str; 4] = ["schema_version", "kind", "data", "metadata"];
const EDGE_FIELDS: [&str; 5] = ["start", "end", "kind", "center", "radius"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Cap,
    Polygon,
    DiskPolygon,
}

impl BodyKind {
    fn data_fields(self) -> &'static [&'static str] {
        match self {
            BodyKind::Cap => &["center", "radius"],
            BodyKind::Polygon => &["vertices"],
            BodyKind::DiskPolygon => &["edges"],
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CapData {
    center: SpherePoint,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct PolygonData {
    vertices: Vec<SpherePoint>,
}

#[derive(Serialize, Deserialize)]
struct DiskData {
    edges: Vec<Edge>,
}

/// On-disk form of a [`Body`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyDocument {
    pub schema_version: String,
    pub kind: BodyKind,
    pub data: Value,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl BodyDocument {
    pub fn from_body(body: &Body) -> Self {
        let (kind, data) = match body {
            Body::Cap(c) => (
                BodyKind::Cap,
                serde_json::to_value(CapData {
                    center: c.center(),
                    radius: c.radius(),
                }),
            ),
            Body::Polygon(p) => (
                BodyKind::Polygon,
                serde_json::to_value(PolygonData {
                    vertices: p.vertices().to_vec(),
                }),
            ),
            Body::Disk(d) => (
                BodyKind::DiskPolygon,
                serde_json::to_value(DiskData {
                    edges: d.edges().to_vec(),
                }),
            ),
        };
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            data: data.expect("body payloads serialize"),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Parses a document. Strict mode rejects unknown fields; otherwise they
    /// are moved into `metadata` (data fields under `data.<name>`).
    pub fn parse(text: &str, strict: bool) -> Result<Self> {
        let root: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let Value::Object(mut root) = root else {
            return Err(Error::Schema("document must be a JSON object".into()));
        };
        let extra_top = take_unknown(&mut root, &TOP_FIELDS);
        let mut doc: BodyDocument = serde_json::from_value(Value::Object(root))
            .map_err(|e| Error::Schema(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {:?}",
                doc.schema_version
            )));
        }
        let Value::Object(data) = &mut doc.data else {
            return Err(Error::Schema("data must be an object".into()));
        };
        let extra_data = take_unknown(data, doc.kind.data_fields());
        if doc.kind == BodyKind::DiskPolygon {
            if let Some(Value::Array(edges)) = data.get("edges") {
                for (i, e) in edges.iter().enumerate() {
                    let Value::Object(e) = e else { continue };
                    if let Some(k) = e.keys().find(|k| !EDGE_FIELDS.contains(&k.as_str())) {
                        return Err(Error::Schema(format!("unknown field {k:?} in edge {i}")));
                    }
                }
            }
        }
        if strict {
            if let Some(k) = extra_top.keys().chain(extra_data.keys()).next() {
                return Err(Error::Schema(format!("unknown field {k:?}")));
            }
        }
        doc.metadata.extend(extra_top);
        doc.metadata.extend(
            extra_data
                .into_iter()
                .map(|(k, v)| (format!("data.{k}"), v)),
        );
        doc.to_body()?;
        Ok(doc)
    }

    /// Rebuilds and re-validates the body; vectors are re-normalized on the way.
    pub fn to_body(&self) -> Result<Body> {
        let schema = |e: serde_json::Error| Error::Schema(e.to_string());
        match self.kind {
            BodyKind::Cap => {
                let d: CapData = serde_json::from_value(self.data.clone()).map_err(schema)?;
                Ok(Body::Cap(Cap::new(d.center, d.radius)?))
            }
            BodyKind::Polygon => {
                let d: PolygonData = serde_json::from_value(self.data.clone()).map_err(schema)?;
                Ok(Body::Polygon(ConvexPolygon::new(d.vertices)?))
            }
            BodyKind::DiskPolygon => {
                let d: DiskData = serde_json::from_value(self.data.clone()).map_err(schema)?;
                Ok(Body::Disk(DiskPolygon::new(d.edges)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn take_unknown(obj: &mut Map<String, Value>, known: &[&str]) -> BTreeMap<String, Value> {
    let unknown: Vec<String> = obj
        .keys()
        .filter(|k| !known.contains(&k.as_str()))
        .cloned()
        .collect();
    unknown
        .into_iter()
        .map(|k| {
            let v = obj.remove(&k).expect("key listed above");
            (k, v)
        })
        .collect()
}

/// `x` with 9 significant digits in plain decimal notation.
pub fn format_sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    // The exponent of the rounded mantissa, so that 0.9999999999 becomes 1.00000000.
    let sci = format!("{x:.8e}");
    let exp: i32 = sci[sci.find('e').expect("exponent present") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (8 - exp).clamp(0, 40) as usize;
    let s = format!("{x:.decimals$}");
    if s.starts_with("-0") && s.bytes().all(|c| matches!(c, b'-' | b'0' | b'.')) {
        s[1..].to_string()
    } else {
        s
    }
}

/// JSON number holding [`format_sig9`] of `x`; `null` when not finite.
pub fn json_sig9(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(
        format_sig9(x)
            .parse::<Number>()
            .expect("plain decimal parses"),
    )
}

pub fn json_point(p: &SpherePoint) -> Value {
    Value::Array(p.to_array().iter().map(|&x| json_sig9(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon};
    use crate::sphere::distance;

    fn bodies() -> Vec<Body> {
        let c = SpherePoint::new(0.3, -0.4, 0.8).unwrap();
        vec![
            Body::Cap(Cap::new(c, 0.7).unwrap()),
            make_regular_reduced_polygon(c, 5, 0.9).unwrap(),
            make_quarter_disk(c, 1.0, 0.4).unwrap(),
            make_reuleaux_odd_gon(c, 3, 1.8).unwrap(),
        ]
    }

    #[test]
    fn round_trip_is_identity() {
        for b in bodies() {
            let text = BodyDocument::from_body(&b).to_json();
            let back = BodyDocument::parse(&text, true).unwrap().to_body().unwrap();
            assert_eq!(b.kind_name(), back.kind_name());
            let (v0, v1) = (b.vertices(), back.vertices());
            assert_eq!(v0.len(), v1.len());
            for (p, q) in v0.iter().zip(&v1) {
                assert!(distance(p, q) < 1e-12);
            }
            assert_eq!(BodyDocument::from_body(&back).to_json(), text);
        }
    }

    #[test]
    fn strictness_controls_unknown_fields() {
        let text = r#"{"schema_version":"1","kind":"cap","data":{"center":[0,0,2],"radius":0.5,"color":"red"},"origin":"hand"}"#;
        assert!(matches!(
            BodyDocument::parse(text, true),
            Err(Error::Schema(_))
        ));
        let doc = BodyDocument::parse(text, false).unwrap();
        assert_eq!(doc.metadata["origin"], "hand");
        assert_eq!(doc.metadata["data.color"], "red");
        let Body::Cap(c) = doc.to_body().unwrap() else {
            panic!()
        };
        assert_eq!(c.center(), SpherePoint::north());
    }

    #[test]
    fn rejects_invalid_bodies() {
        let bad_version =
            r#"{"schema_version":"2","kind":"cap","data":{"center":[0,0,1],"radius":0.5}}"#;
        assert!(matches!(
            BodyDocument::parse(bad_version, true),
            Err(Error::Schema(_))
        ));
        let clockwise = r#"{"schema_version":"1","kind":"polygon","data":{"vertices":[[1,0,1],[0,1,1],[-1,-1,1]]}}"#;
        assert!(BodyDocument::parse(clockwise, true).is_ok());
        let reversed = r#"{"schema_version":"1","kind":"polygon","data":{"vertices":[[-1,-1,1],[0,1,1],[1,0,1]]}}"#;
        assert!(matches!(
            BodyDocument::parse(reversed, true),
            Err(Error::InvalidBody(_))
        ));
        let zero = r#"{"schema_version":"1","kind":"cap","data":{"center":[0,0,0],"radius":0.5}}"#;
        assert!(BodyDocument::parse(zero, false).is_err());
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(1.0), "1.00000000");
        assert_eq!(format_sig9(std::f64::consts::PI), "3.14159265");
        assert_eq!(format_sig9(-0.000123456789123), "-0.000123456789");
        assert_eq!(format_sig9(123456.789), "123456.789");
        assert_eq!(format_sig9(0.99999999999), "1.00000000");
        assert_eq!(format_sig9(999999999.7), "1000000000");
        assert_eq!(
            format_sig9(-1e-30),
            "-0.00000000000000000000000000000100000000"
        );
        assert_eq!(json_sig9(0.5).to_string(), "0.500000000");
        assert_eq!(json_sig9(2.5e-12).to_string(), "0.00000000000250000000");
    }
}
