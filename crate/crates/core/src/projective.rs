//! Points of projective space, compared up to a global nonzero scale.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalars::{Field, Tolerance};

/// Coordinate tuple in P^n, `n = coords.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint<F> {
    coords: Vec<F>,
}

impl<F: Field> ProjectivePoint<F> {
    /// Rejects tuples that are exactly zero. Use [`ProjectivePoint::new_checked`]
    /// to apply the float floor as well.
    pub fn new(coords: Vec<F>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().all(F::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn new_checked(coords: Vec<F>, tol: &Tolerance) -> Result<Self> {
        if coords.len() < 2 || coords.iter().all(|c| c.is_negligible(tol)) {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_array<const N: usize>(coords: [F; N]) -> Result<Self> {
        Self::new(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    /// Exact fields: first nonzero coordinate becomes 1.
    /// Floats: the largest-magnitude coordinate becomes 1.
    pub fn normalize(&self) -> Result<Self> {
        let coords = normalize_coords(&self.coords)?;
        Ok(ProjectivePoint { coords })
    }

    pub fn proj_eq(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        proj_eq(&self.coords, &other.coords, tol)
    }
}

/// Index of the pivot used by [`normalize_coords`].
fn pivot<F: Field>(coords: &[F]) -> Option<usize> {
    if F::EXACT {
        coords.iter().position(|c| !c.is_zero())
    } else {
        let (idx, mag) = coords.iter().enumerate().map(|(i, c)| (i, c.magnitude())).fold((0, -1.0), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
        (mag > 0.0).then_some(idx)
    }
}

pub fn normalize_coords<F: Field>(coords: &[F]) -> Result<Vec<F>> {
    let idx = pivot(coords).ok_or(Error::ZeroPoint)?;
    let scale = coords[idx].inv().ok_or(Error::ZeroPoint)?;
    Ok(coords.iter().map(|c| c.clone() * scale.clone()).collect())
}

/// Normalizes a fixed-size tuple in place of a `Vec`.
pub fn normalize_array<F: Field, const N: usize>(coords: &[F; N]) -> Result<[F; N]> {
    let idx = pivot(coords).ok_or(Error::ZeroPoint)?;
    let scale = coords[idx].inv().ok_or(Error::ZeroPoint)?;
    Ok(core::array::from_fn(|i| coords[i].clone() * scale.clone()))
}

/// Projective equality: every 2x2 minor of the stacked rows vanishes
/// (exactly, or below `tol.proj` after unit normalization of each row).
pub fn proj_eq<F: Field>(a: &[F], b: &[F], tol: &Tolerance) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    if F::EXACT {
        if a.iter().all(F::is_zero) || b.iter().all(F::is_zero) {
            return Err(Error::ZeroPoint);
        }
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                if !minor.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    } else {
        Ok(proj_dist(a, b)? < tol.proj)
    }
}

/// Largest 2x2 minor magnitude after scaling each row to unit max-magnitude.
/// Zero exactly when the points agree; at most 2 for unit rows.
pub fn proj_dist<F: Field>(a: &[F], b: &[F]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let a = normalize_coords(a)?;
    let b = normalize_coords(b)?;
    let mut worst: f64 = 0.0;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            worst = worst.max(minor.magnitude());
        }
    }
    Ok(worst)
}
