//! Serde helpers for the JSON file formats: rationals are always strings.

use serde::{Deserialize, Deserializer, Serializer};

use crate::rational::{parse_rational, render_rational, Rational};

/// `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// A list of `"p/q"` strings.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&render_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use serde::Serialize;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "rational_str")]
        r: Rational,
        #[serde(with = "rational_vec")]
        v: Vec<Rational>,
    }

    #[test]
    fn round_trip() {
        let h = Holder { r: rat(-3, 4), v: vec![rat(1, 2), rat(2, 1)] };
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, r#"{"r":"-3/4","v":["1/2","2"]}"#);
        assert_eq!(serde_json::from_str::<Holder>(&text).unwrap(), h);
        assert!(serde_json::from_str::<Holder>(r#"{"r":"1/0","v":[]}"#).is_err());
    }
}
