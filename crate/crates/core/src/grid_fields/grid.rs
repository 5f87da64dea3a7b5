use crate::{Error, Real, Result};

/// Node-centred uniform grid on `[0,1]²`.
///
/// Node `(i, j)` sits at `(i·hx, j·hy)` and is stored at linear index
/// `j·nx + i` (row-major, `x` fastest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    nx: usize,
    ny: usize,
}

/// Square grid with `n` nodes per axis.
pub fn make_grid(n: usize) -> Result<Grid> {
    Grid::new(n, n)
}

impl Grid {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 {
            return Err(Error::GridTooSmall(nx));
        }
        if ny < 3 {
            return Err(Error::GridTooSmall(ny));
        }
        Ok(Self { nx, ny })
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Total node count.
    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn hx<T: Real>(&self) -> T {
        T::one() / T::from_usize_lossy(self.nx - 1)
    }

    #[inline]
    pub fn hy<T: Real>(&self) -> T {
        T::one() / T::from_usize_lossy(self.ny - 1)
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    /// Inverse of [`Grid::index`].
    #[inline]
    pub fn ij(&self, k: usize) -> (usize, usize) {
        (k % self.nx, k / self.nx)
    }

    #[inline]
    pub fn x<T: Real>(&self, i: usize) -> T {
        T::from_usize_lossy(i) * self.hx::<T>()
    }

    #[inline]
    pub fn y<T: Real>(&self, j: usize) -> T {
        T::from_usize_lossy(j) * self.hy::<T>()
    }

    /// Physical coordinates of node `k`.
    #[inline]
    pub fn coords<T: Real>(&self, k: usize) -> (T, T) {
        let (i, j) = self.ij(k);
        (self.x(i), self.y(j))
    }

    #[inline]
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i + 1 == self.nx || j + 1 == self.ny
    }

    #[inline]
    pub fn is_boundary_index(&self, k: usize) -> bool {
        let (i, j) = self.ij(k);
        self.is_boundary(i, j)
    }

    /// Linear indices of the boundary nodes, in storage order.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.is_boundary_index(k))
            .collect()
    }

    /// Linear indices of the interior nodes, in storage order.
    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| !self.is_boundary_index(k))
            .collect()
    }

    /// Index of the node closest to `(x, y)` (clamped to the grid).
    pub fn nearest_node<T: Real>(&self, x: T, y: T) -> usize {
        let snap = |v: T, n: usize, h: T| -> usize {
            let r = (v / h).round().max(T::zero()).to_f64_lossy() as usize;
            r.min(n - 1)
        };
        self.index(snap(x, self.nx, self.hx()), snap(y, self.ny, self.hy()))
    }

    pub(crate) fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}
