// SPDX-License-Identifier: Apache-2.0
//! Serde adapters writing big integers as decimal strings, so JSON readers
//! with 53-bit numbers never see a silently rounded coefficient.

use num_bigint::BigInt;
use serde::{de::Error, Deserialize, Deserializer, Serializer};

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|t| {
                t.parse()
                    .map_err(|_| D::Error::custom(format!("bad integer {t:?}")))
            })
            .collect()
    }
}
