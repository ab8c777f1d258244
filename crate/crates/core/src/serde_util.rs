//! Serde adapters for exact rationals: JSON integers or `"p/q"` strings.

use serde::{de, Deserialize, Deserializer, Serializer};

use crate::Exponent;

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Text(String),
}

pub(crate) fn parse_rational(s: &str) -> Result<Exponent, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| format!("parse error: invalid rational `{s}`"))?;
    let d: i64 = d.parse().map_err(|_| format!("parse error: invalid rational `{s}`"))?;
    if d == 0 {
        return Err(format!("parse error: zero denominator in `{s}`"));
    }
    Ok(Exponent::new(n, d))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Exponent, s: S) -> Result<S::Ok, S::Error> {
        if q.is_integer() {
            s.serialize_i64(*q.numer())
        } else {
            s.collect_str(&format_args!("{}/{}", q.numer(), q.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exponent, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(Exponent::from_integer(k)),
            Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
        }
    }
}

pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(qs: &[Exponent], s: S) -> Result<S::Ok, S::Error> {
        struct W<'a>(&'a Exponent);
        impl serde::Serialize for W<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                super::rational::serialize(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&W(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Exponent>, D::Error> {
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Raw::Int(k) => Ok(Exponent::from_integer(k)),
                Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
            })
            .collect()
    }
}
