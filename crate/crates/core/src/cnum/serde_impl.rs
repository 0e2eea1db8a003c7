//! JSON encoding: complex scalars as `[re, im]`, matrices as nested row arrays.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Matrix;
use crate::scalar::{Real, C};

/// Complex scalar in its `[re, im]` wire form. A bare number is read as a real scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexJson(pub f64, pub f64);

impl Serialize for ComplexJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Pair([f64; 2]),
            Real(f64),
        }
        match Wire::deserialize(d)? {
            Wire::Pair([re, im]) => Ok(ComplexJson(re, im)),
            Wire::Real(re) => Ok(ComplexJson(re, 0.0)),
        }
    }
}

impl ComplexJson {
    pub fn from_c<T: Real>(z: C<T>) -> Self {
        ComplexJson(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_c<T: Real>(self) -> C<T> {
        C::new(T::lit(self.0), T::lit(self.1))
    }
}

/// Coordinate vector in wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VecJson(pub Vec<ComplexJson>);

impl VecJson {
    pub fn from_slice<T: Real>(v: &[C<T>]) -> Self {
        VecJson(v.iter().map(|&z| ComplexJson::from_c(z)).collect())
    }

    pub fn to_vec<T: Real>(&self) -> Vec<C<T>> {
        self.0.iter().map(|z| z.to_c()).collect()
    }
}

impl<T: Real> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<VecJson> = (0..self.rows()).map(|i| VecJson::from_slice(&self.row(i))).collect();
        rows.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<VecJson> = Vec::deserialize(d)?;
        let rows: Vec<Vec<C<T>>> = rows.iter().map(VecJson::to_vec).collect();
        let m = Matrix::from_rows(&rows).map_err(D::Error::custom)?;
        if !m.is_finite() {
            return Err(D::Error::custom("matrix entries must be finite"));
        }
        Ok(m)
    }
}
