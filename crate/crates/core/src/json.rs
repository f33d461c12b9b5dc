//! JSON helpers: big integers are written as plain JSON numbers while they
//! fit in an `i64` and as decimal strings beyond that. Both are accepted on input.

pub mod bigint {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(n) {
            Ok(v) => serializer.serialize_i64(v),
            Err(_) => serializer.collect_str(n),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrString {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        match NumOrString::deserialize(deserializer)? {
            NumOrString::Int(v) => Ok(BigInt::from(v)),
            NumOrString::Str(s) => s.trim().parse().map_err(de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "super::bigint")]
        n: BigInt,
    }

    #[test]
    fn small_and_large_round_trip() {
        let small = Holder {
            n: BigInt::from(-27),
        };
        assert_eq!(serde_json::to_string(&small).unwrap(), r#"{"n":-27}"#);
        let large = Holder {
            n: "123456789012345678901234567890".parse().unwrap(),
        };
        let s = serde_json::to_string(&large).unwrap();
        assert_eq!(s, r#"{"n":"123456789012345678901234567890"}"#);
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap(), large);
        assert_eq!(
            serde_json::from_str::<Holder>(r#"{"n":"-5"}"#).unwrap().n,
            BigInt::from(-5)
        );
        assert!(serde_json::from_str::<Holder>(r#"{"n":"x"}"#).is_err());
    }
}
