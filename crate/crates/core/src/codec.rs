//! Serde adapters representing complex numbers as `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub mod cpx {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        (z.re, z.im).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

pub mod cpx_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(f64, f64)> = v.iter().map(|z| (z.re, z.im)).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<(f64, f64)>::deserialize(d)?;
        Ok(pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect())
    }
}

/// JSON value `[re, im]` for report payloads assembled by hand.
pub fn cpx_json(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

/// JSON value for a complex vector.
pub fn cvec_json(v: &[Complex64]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|&z| cpx_json(z)).collect())
}
