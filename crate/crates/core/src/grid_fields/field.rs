use std::ops::Index;

use super::Grid;
use crate::{Error, Real, Result};

/// Real value per grid node, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<T> {
    grid: Grid,
    values: Vec<T>,
}

impl<T: Real> ScalarField<T> {
    /// Wraps raw values; rejects wrong lengths and non-finite entries.
    pub fn from_values(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(x, y)` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(T, T) -> T) -> Self {
        let values = (0..grid.len())
            .map(|k| {
                let (x, y) = grid.coords(k);
                f(x, y)
            })
            .collect();
        Self { grid, values }
    }

    pub fn constant(grid: Grid, c: T) -> Self {
        Self {
            grid,
            values: vec![c; grid.len()],
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, T::zero())
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[self.grid.index(i, j)]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| c * v)
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |m, &v| if v.abs() > m { v.abs() } else { m })
    }

    pub fn min_value(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::neg_infinity(), |m, &v| m.max(v))
    }

    /// Copy with every boundary node replaced by `boundary`'s value.
    pub fn with_boundary_from(&self, boundary: &Self) -> Result<Self> {
        self.grid.ensure_same(&boundary.grid)?;
        let mut out = self.clone();
        for k in self.grid.boundary_nodes() {
            out.values[k] = boundary.values[k];
        }
        Ok(out)
    }

    pub fn is_zero_on_boundary(&self) -> bool {
        self.grid
            .boundary_nodes()
            .into_iter()
            .all(|k| self.values[k] == T::zero())
    }
}

impl<T> Index<usize> for ScalarField<T> {
    type Output = T;

    #[inline]
    fn index(&self, k: usize) -> &T {
        &self.values[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;

    #[test]
    fn rejects_bad_values() {
        let g = make_grid(3).unwrap();
        assert!(ScalarField::from_values(g, vec![0.0_f64; 8]).is_err());
        let mut v = vec![0.0_f64; 9];
        v[4] = f64::NAN;
        assert!(matches!(
            ScalarField::from_values(g, v),
            Err(Error::NonFinite(4))
        ));
    }

    #[test]
    fn grid_mismatch_detected() {
        let a = ScalarField::<f64>::zeros(make_grid(3).unwrap());
        let b = ScalarField::<f64>::zeros(make_grid(4).unwrap());
        assert!(matches!(a.sub(&b), Err(Error::GridMismatch)));
    }
}
