//! Serde helpers writing complex numbers as `{"re": …, "im": …}`.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReIm {
    re: f64,
    im: f64,
}

impl From<Complex64> for ReIm {
    fn from(z: Complex64) -> Self {
        ReIm { re: z.re, im: z.im }
    }
}

pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    ReIm::from(*z).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    let r = ReIm::deserialize(d)?;
    Ok(Complex64::new(r.re, r.im))
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&ReIm::from(*z))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<ReIm>::deserialize(d)?.into_iter().map(|r| Complex64::new(r.re, r.im)).collect())
    }
}

/// Traces `(r, z)`.
pub mod trace {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(f64, Complex64)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &(r, z) in v {
            seq.serialize_element(&(r, ReIm::from(z)))?;
        }
        seq.end()
    }
}

pub mod opt_trace {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<(f64, Complex64)>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(v) => {
                let w: Vec<(f64, ReIm)> = v.iter().map(|&(r, z)| (r, ReIm::from(z))).collect();
                s.serialize_some(&w)
            }
        }
    }
}
