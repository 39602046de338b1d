//! Serde helpers mapping complex values to `{"re": f, "im": f}` objects.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub(crate) struct CpxJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CpxJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<CpxJson> for Complex64 {
    fn from(c: CpxJson) -> Self {
        Complex64::new(c.re, c.im)
    }
}

pub(crate) fn complex_vec(v: &[Complex64]) -> Vec<CpxJson> {
    v.iter().copied().map(CpxJson::from).collect()
}

/// Serializes a row-major list of rows as `[[{"re","im"}, ...], ...]`.
pub(crate) fn serialize_density<S>(rows: &[Vec<Complex64>], ser: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
{
    let out: Vec<Vec<CpxJson>> = rows.iter().map(|r| complex_vec(r)).collect();
    out.serialize(ser)
}
