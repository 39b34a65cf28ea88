//! Serde helpers writing big integers as plain JSON numbers where they fit,
//! falling back to decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

fn to_repr(v: &BigInt) -> Repr {
    match v.to_i64() {
        Some(x) => Repr::Small(x),
        None => Repr::Big(v.to_string()),
    }
}

fn from_repr<E: de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(x) => Ok(BigInt::from(x)),
        Repr::Big(s) => BigInt::from_str(&s).map_err(E::custom),
    }
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(v).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod map {
    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (*k, to_repr(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, BigInt>, D::Error> {
        BTreeMap::<u64, Repr>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| Ok((k, from_repr(v)?)))
            .collect()
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(from_repr)
            .collect()
    }
}

/// Rationals as `"p/q"` strings (`"p"` when integral).
pub mod ratio {
    use num_rational::BigRational;

    use super::*;

    pub(crate) fn parse(s: &str) -> Option<BigRational> {
        match s.split_once('/') {
            Some((n, m)) => {
                let m = BigInt::from_str(m).ok()?;
                if m == BigInt::from(0) {
                    return None;
                }
                Some(BigRational::new(BigInt::from_str(n).ok()?, m))
            }
            None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        }
    }

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| de::Error::custom(format!("invalid rational {s:?}")))
    }
}

pub mod ratio_vec {
    use num_rational::BigRational;

    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| {
                ratio::parse(s).ok_or_else(|| de::Error::custom(format!("invalid rational {s:?}")))
            })
            .collect()
    }
}
