use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// Dense real vector with finite components.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("non-finite vector component {bad}")));
        }
        Ok(Self(components))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0.0)
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Unit vector in the same direction; the zero vector maps to itself.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        Self(self.0.iter().map(|c| c / n).collect())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn squared_distance(&self, other: &Vector) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum())
    }

    /// Normalized arithmetic mean; an empty input yields the zero vector.
    pub fn normalized_mean(vectors: &[Vector], dim: usize) -> Result<Vector> {
        let mut acc = vec![0.0; dim];
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::Dimension { left: dim, right: v.dim() });
            }
            for (a, c) in acc.iter_mut().zip(&v.0) {
                *a += c;
            }
        }
        Ok(Vector(acc).normalized())
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<f64>::deserialize(deserializer)?;
        Vector::new(raw).map_err(serde::de::Error::custom)
    }
}

fn check_dims(a: &Vector, b: &Vector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Cosine of the angle between `a` and `b`, clamped to `[-1, 1]`. Zero when
/// either vector is zero, exactly one for identical non-zero vectors.
pub fn cosine_similarity(a: &Vector, b: &Vector) -> Result<f64> {
    let dot = a.dot(b)?;
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    if a.as_slice() == b.as_slice() {
        // Exact self-similarity, free of rounding.
        return Ok(1.0);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}
