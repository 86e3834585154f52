//! JSON interchange format.
//!
//! Records are JSON objects whose rational fields are exact `"n"` or
//! `"n/d"` decimal strings (always reduced, denominator positive), so files
//! are portable across languages without floating point. Serialization is
//! canonical: fields appear in declaration order, rationals are normalized,
//! and `serialize(parse(x)) == x` for every emitted document.

use serde::{Deserialize, Serialize};

use crate::curves::FamilyCurve;
use crate::error::{Error, Result};
use crate::pipeline::{HyperellipticRecord, SequenceRecord};
use crate::scalar::{format_rat, parse_rat};
use crate::RatPoint;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointJson {
    x: String,
    y: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ParamsJson {
    t: String,
    q: String,
    w: String,
    m: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CurveJson {
    a: String,
    b: String,
    c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SequenceRecordJson {
    kind: String,
    params: ParamsJson,
    p_m: String,
    h_m: String,
    curve: CurveJson,
    points: Vec<PointJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HyperellipticRecordJson {
    kind: String,
    coefficients: Vec<String>,
    points: Vec<PointJson>,
}

const SEQUENCE_KIND: &str = "sequence_record";
const HYPERELLIPTIC_KIND: &str = "hyperelliptic_record";

fn point_json(p: &RatPoint) -> Result<PointJson> {
    match p {
        RatPoint::Affine(x, y) => Ok(PointJson {
            x: format_rat(x),
            y: format_rat(y),
        }),
        RatPoint::Infinity => Err(Error::Malformed(
            "records carry affine points only".into(),
        )),
    }
}

fn point_from_json(p: &PointJson) -> Result<RatPoint> {
    Ok(RatPoint::Affine(parse_rat(&p.x)?, parse_rat(&p.y)?))
}

/// Canonical single-line JSON for a sequence record.
pub fn sequence_to_json(rec: &SequenceRecord) -> Result<String> {
    let doc = SequenceRecordJson {
        kind: SEQUENCE_KIND.into(),
        params: ParamsJson {
            t: format_rat(&rec.t),
            q: format_rat(&rec.q),
            w: format_rat(&rec.w),
            m: rec.m,
        },
        p_m: format_rat(&rec.p_m),
        h_m: format_rat(&rec.h_m),
        curve: CurveJson {
            a: format_rat(&rec.curve.a),
            b: format_rat(&rec.curve.b),
            c: format_rat(&rec.curve.c),
        },
        points: rec.points.iter().map(point_json).collect::<Result<_>>()?,
    };
    serde_json::to_string(&doc).map_err(|e| Error::Malformed(e.to_string()))
}

/// Parse a sequence record from its JSON form.
pub fn sequence_from_json(s: &str) -> Result<SequenceRecord> {
    let doc: SequenceRecordJson =
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.kind != SEQUENCE_KIND {
        return Err(Error::Malformed(format!(
            "expected kind {SEQUENCE_KIND:?}, got {:?}",
            doc.kind
        )));
    }
    if doc.points.len() != 5 {
        return Err(Error::Malformed(format!(
            "expected 5 points, got {}",
            doc.points.len()
        )));
    }
    Ok(SequenceRecord {
        t: parse_rat(&doc.params.t)?,
        q: parse_rat(&doc.params.q)?,
        w: parse_rat(&doc.params.w)?,
        m: doc.params.m,
        p_m: parse_rat(&doc.p_m)?,
        h_m: parse_rat(&doc.h_m)?,
        curve: FamilyCurve::new(
            parse_rat(&doc.curve.a)?,
            parse_rat(&doc.curve.b)?,
            parse_rat(&doc.curve.c)?,
        ),
        points: doc
            .points
            .iter()
            .map(point_from_json)
            .collect::<Result<_>>()?,
    })
}

/// Canonical single-line JSON for a hyperelliptic record.
pub fn hyperelliptic_to_json(rec: &HyperellipticRecord) -> Result<String> {
    let doc = HyperellipticRecordJson {
        kind: HYPERELLIPTIC_KIND.into(),
        coefficients: rec.coefficients.iter().map(format_rat).collect(),
        points: rec.points.iter().map(point_json).collect::<Result<_>>()?,
    };
    serde_json::to_string(&doc).map_err(|e| Error::Malformed(e.to_string()))
}

/// Parse a hyperelliptic record from its JSON form.
pub fn hyperelliptic_from_json(s: &str) -> Result<HyperellipticRecord> {
    let doc: HyperellipticRecordJson =
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.kind != HYPERELLIPTIC_KIND {
        return Err(Error::Malformed(format!(
            "expected kind {HYPERELLIPTIC_KIND:?}, got {:?}",
            doc.kind
        )));
    }
    Ok(HyperellipticRecord {
        coefficients: doc
            .coefficients
            .iter()
            .map(|c| parse_rat(c))
            .collect::<Result<_>>()?,
        points: doc
            .points
            .iter()
            .map(point_from_json)
            .collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;
    use crate::pipeline::{generate_member, to_hyperelliptic, verify_sequence};

    fn fixture_record() -> SequenceRecord {
        generate_member(
            &fixture::t0(),
            &fixture::q0(),
            &fixture::w0(),
            &fixture::seed().unwrap(),
            1,
            &fixture::options(),
        )
        .unwrap()
    }

    #[test]
    fn sequence_round_trip_is_canonical() {
        let rec = fixture_record();
        let json = sequence_to_json(&rec).unwrap();
        let parsed = sequence_from_json(&json).unwrap();
        assert_eq!(parsed, rec);
        assert_eq!(sequence_to_json(&parsed).unwrap(), json);
        assert!(verify_sequence(&parsed).pass);
    }

    #[test]
    fn hyperelliptic_round_trip_is_canonical() {
        let lift = to_hyperelliptic(&fixture_record()).unwrap();
        let json = hyperelliptic_to_json(&lift).unwrap();
        let parsed = hyperelliptic_from_json(&json).unwrap();
        assert_eq!(parsed, lift);
        assert_eq!(hyperelliptic_to_json(&parsed).unwrap(), json);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(sequence_from_json("").is_err());
        assert!(sequence_from_json("{}").is_err());
        assert!(sequence_from_json("{\"kind\":\"nope\"}").is_err());
        let rec = fixture_record();
        let json = sequence_to_json(&rec).unwrap();
        // wrong kind
        let other = json.replace("sequence_record", "hyperelliptic_record");
        assert!(sequence_from_json(&other).is_err());
        // unparseable rational
        let broken = json.replace("2201/2320", "2201//2320");
        assert!(sequence_from_json(&broken).is_err());
    }
}
