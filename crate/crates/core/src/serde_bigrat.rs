//! Serde helpers writing exact rationals as strings such as `"-3/4"`.

use serde::{Deserialize, Deserializer, Serializer};

use crate::algebra::{parse_rat, BigRat};

pub fn serialize<S: Serializer>(v: &BigRat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
    let s = String::deserialize(d)?;
    parse_rat(&s).map_err(serde::de::Error::custom)
}

/// The same for `Option<BigRat>`, with `null` for `None`.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRat>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
