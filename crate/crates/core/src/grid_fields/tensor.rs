use super::Grid;
use crate::{Error, Real, Result};

/// Symmetric coefficient matrix `[[a11, a12], [a12, a22]]` per node.
///
/// Construction rejects any node whose smaller eigenvalue is not strictly
/// positive; the smallest eigenvalue over the grid is kept as the
/// ellipticity constant.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField<T> {
    grid: Grid,
    a11: Vec<T>,
    a12: Vec<T>,
    a22: Vec<T>,
    ellipticity: T,
}

/// Smaller eigenvalue of a symmetric 2×2 matrix.
pub(crate) fn min_eigenvalue<T: Real>(a11: T, a12: T, a22: T) -> T {
    if a12 == T::zero() {
        return a11.min(a22);
    }
    let half = T::lit(0.5);
    let mean = half * (a11 + a22);
    let dev = (half * (a11 - a22)).hypot(a12);
    mean - dev
}

impl<T: Real> TensorField<T> {
    pub fn new(grid: Grid, a11: Vec<T>, a12: Vec<T>, a22: Vec<T>) -> Result<Self> {
        for v in [&a11, &a12, &a22] {
            if v.len() != grid.len() {
                return Err(Error::LengthMismatch {
                    expected: grid.len(),
                    got: v.len(),
                });
            }
        }
        let mut ellipticity = T::infinity();
        for k in 0..grid.len() {
            let (p, q, r) = (a11[k], a12[k], a22[k]);
            if !(p.is_finite() && q.is_finite() && r.is_finite()) {
                return Err(Error::NonFinite(k));
            }
            let lam = min_eigenvalue(p, q, r);
            if lam <= T::zero() {
                return Err(Error::NotElliptic {
                    node: k,
                    min_eigenvalue: lam.to_f64_lossy(),
                });
            }
            ellipticity = ellipticity.min(lam);
        }
        Ok(Self {
            grid,
            a11,
            a12,
            a22,
            ellipticity,
        })
    }

    /// Samples `f(x, y) = [a11, a12, a22]` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(T, T) -> [T; 3]) -> Result<Self> {
        let n = grid.len();
        let (mut a11, mut a12, mut a22) = (
            Vec::with_capacity(n),
            Vec::with_capacity(n),
            Vec::with_capacity(n),
        );
        for k in 0..n {
            let (x, y) = grid.coords(k);
            let [p, q, r] = f(x, y);
            a11.push(p);
            a12.push(q);
            a22.push(r);
        }
        Self::new(grid, a11, a12, a22)
    }

    pub fn identity(grid: Grid) -> Self {
        Self::scaled_identity(grid, T::one())
    }

    pub fn scaled_identity(grid: Grid, c: T) -> Self {
        Self::from_fn(grid, |_, _| [c, T::zero(), c]).expect("positive multiple of identity")
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn a11(&self) -> &[T] {
        &self.a11
    }

    #[inline]
    pub fn a12(&self) -> &[T] {
        &self.a12
    }

    #[inline]
    pub fn a22(&self) -> &[T] {
        &self.a22
    }

    /// Smallest eigenvalue over all nodes.
    #[inline]
    pub fn ellipticity(&self) -> T {
        self.ellipticity
    }

    /// Fails unless the ellipticity constant is at least `floor`.
    pub fn check_floor(&self, floor: T) -> Result<()> {
        if self.ellipticity >= floor {
            Ok(())
        } else {
            Err(Error::NotElliptic {
                node: self.argmin_eigenvalue(),
                min_eigenvalue: self.ellipticity.to_f64_lossy(),
            })
        }
    }

    fn argmin_eigenvalue(&self) -> usize {
        (0..self.grid.len())
            .min_by(|&a, &b| {
                let ea = min_eigenvalue(self.a11[a], self.a12[a], self.a22[a]);
                let eb = min_eigenvalue(self.a11[b], self.a12[b], self.a22[b]);
                ea.partial_cmp(&eb).unwrap()
            })
            .unwrap_or(0)
    }

    pub fn has_cross_terms(&self) -> bool {
        self.a12.iter().any(|&v| v != T::zero())
    }

    /// `max |a^{ij}|` over nodes and entries.
    pub fn max_entry(&self) -> T {
        self.a11
            .iter()
            .chain(&self.a12)
            .chain(&self.a22)
            .fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// Bilinear interpolation of the coefficients at an arbitrary point of `[0,1]²`.
    pub fn sample(&self, x: T, y: T) -> [T; 3] {
        let g = &self.grid;
        let locate = |v: T, n: usize, h: T| -> (usize, T) {
            let s = (v / h).max(T::zero()).min(T::from_usize_lossy(n - 1));
            let i = s.floor().to_f64_lossy() as usize;
            let i = i.min(n - 2);
            (i, s - T::from_usize_lossy(i))
        };
        let (i, tx) = locate(x, g.nx(), g.hx());
        let (j, ty) = locate(y, g.ny(), g.hy());
        let one = T::one();
        let w = [
            (g.index(i, j), (one - tx) * (one - ty)),
            (g.index(i + 1, j), tx * (one - ty)),
            (g.index(i, j + 1), (one - tx) * ty),
            (g.index(i + 1, j + 1), tx * ty),
        ];
        let mix = |a: &[T]| w.iter().map(|&(k, c)| c * a[k]).sum::<T>();
        [mix(&self.a11), mix(&self.a12), mix(&self.a22)]
    }

    /// Coefficients of the operator seen by `v(c + r(x - c))`, i.e. `A(c + r(x - c))`
    /// resampled on the same grid. Used by the parameter-uniform Carleman probe.
    pub fn rescaled(&self, center: (T, T), r: T) -> Result<Self> {
        let (cx, cy) = center;
        Self::from_fn(self.grid, |x, y| {
            self.sample(cx + r * (x - cx), cy + r * (y - cy))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;

    #[test]
    fn ellipticity_of_diagonal_field() {
        let g = make_grid(9).unwrap();
        let a = TensorField::from_fn(g, |x: f64, y| [1.0 + 0.3 * x, 0.0, 1.0 + 0.3 * y]).unwrap();
        assert_eq!(a.ellipticity(), 1.0);
        assert!(!a.has_cross_terms());
        assert!(a.check_floor(0.5).is_ok());
        assert!(a.check_floor(1.5).is_err());
    }

    #[test]
    fn indefinite_rejected() {
        let g = make_grid(3).unwrap();
        let r = TensorField::from_fn(g, |_, _| [1.0_f64, 2.0, 1.0]);
        assert!(matches!(r, Err(Error::NotElliptic { .. })));
    }

    #[test]
    fn min_eigenvalue_closed_form() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        assert!((min_eigenvalue(2.0_f64, 1.0, 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bilinear_sample_exact_on_linear_coefficients() {
        let g = make_grid(5).unwrap();
        let a = TensorField::from_fn(g, |x: f64, y| [1.0 + x, 0.1 * y, 2.0 + x * 0.5]).unwrap();
        let [p, q, r] = a.sample(0.33, 0.71);
        assert!((p - 1.33).abs() < 1e-14);
        assert!((q - 0.071).abs() < 1e-14);
        assert!((r - 2.165).abs() < 1e-14);
    }
}
