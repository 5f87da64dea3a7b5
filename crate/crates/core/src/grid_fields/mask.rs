use super::{Grid, ScalarField};
use crate::{Error, Real, Result};

/// How a mask was built; kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum MaskKind {
    Full,
    /// Closed ball intersected with the closed square.
    Ball {
        center: (f64, f64),
        radius: f64,
    },
    /// Nodes whose distance to the nodal set lies in `[lo, hi)`.
    Band {
        lo: f64,
        hi: f64,
    },
    /// Nodes at least `margin` away from every side.
    Inset {
        margin: f64,
    },
    /// Nodes where a field is at least `level`.
    Threshold {
        level: f64,
    },
    Custom,
}

/// Boolean selection of grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMask {
    grid: Grid,
    inside: Vec<bool>,
    kind: MaskKind,
}

impl RegionMask {
    pub fn full(grid: Grid) -> Self {
        Self {
            grid,
            inside: vec![true; grid.len()],
            kind: MaskKind::Full,
        }
    }

    pub fn from_bools(grid: Grid, inside: Vec<bool>, kind: MaskKind) -> Result<Self> {
        if inside.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: inside.len(),
            });
        }
        Ok(Self { grid, inside, kind })
    }

    pub fn from_predicate<T: Real>(grid: Grid, pred: impl Fn(T, T) -> bool) -> Self {
        let inside = (0..grid.len())
            .map(|k| {
                let (x, y) = grid.coords(k);
                pred(x, y)
            })
            .collect();
        Self {
            grid,
            inside,
            kind: MaskKind::Custom,
        }
    }

    /// Every node of the closed square within distance `r` of `center`.
    pub fn ball<T: Real>(grid: Grid, center: (T, T), r: T) -> Self {
        let (cx, cy) = center;
        // Relative slack so nodes exactly on the sphere are not lost to rounding.
        let r2 = r * r * (T::one() + T::lit(1e-12));
        let mut m = Self::from_predicate(grid, |x: T, y: T| {
            let (dx, dy) = (x - cx, y - cy);
            dx * dx + dy * dy <= r2
        });
        m.kind = MaskKind::Ball {
            center: (cx.to_f64_lossy(), cy.to_f64_lossy()),
            radius: r.to_f64_lossy(),
        };
        m
    }

    /// Compact inset `[margin, 1 - margin]²`.
    pub fn inset<T: Real>(grid: Grid, margin: T) -> Self {
        let eps = T::lit(1e-12);
        let hi = T::one() - margin;
        let mut m = Self::from_predicate(grid, |x: T, y: T| {
            x >= margin - eps && x <= hi + eps && y >= margin - eps && y <= hi + eps
        });
        m.kind = MaskKind::Inset {
            margin: margin.to_f64_lossy(),
        };
        m
    }

    /// Nodes with `lo <= dist < hi`.
    pub fn band<T: Real>(dist: &ScalarField<T>, lo: T, hi: T) -> Self {
        let inside = dist.values().iter().map(|&d| d >= lo && d < hi).collect();
        Self {
            grid: *dist.grid(),
            inside,
            kind: MaskKind::Band {
                lo: lo.to_f64_lossy(),
                hi: hi.to_f64_lossy(),
            },
        }
    }

    /// Nodes with `f >= level`.
    pub fn threshold<T: Real>(f: &ScalarField<T>, level: T) -> Self {
        let inside = f.values().iter().map(|&v| v >= level).collect();
        Self {
            grid: *f.grid(),
            inside,
            kind: MaskKind::Threshold {
                level: level.to_f64_lossy(),
            },
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn kind(&self) -> &MaskKind {
        &self.kind
    }

    #[inline]
    pub fn contains(&self, k: usize) -> bool {
        self.inside[k]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.inside
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.inside.iter().any(|&b| b)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.inside
            .iter()
            .enumerate()
            .filter_map(|(k, &b)| b.then_some(k))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            inside: self
                .inside
                .iter()
                .zip(&other.inside)
                .map(|(&a, &b)| a && b)
                .collect(),
            kind: MaskKind::Custom,
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.grid == other.grid
            && self
                .inside
                .iter()
                .zip(&other.inside)
                .all(|(&a, &b)| !a || b)
    }

    /// Mask as a 0/1 field, for persistence.
    pub fn to_field<T: Real>(&self) -> ScalarField<T> {
        ScalarField::from_values(
            self.grid,
            self.inside
                .iter()
                .map(|&b| if b { T::one() } else { T::zero() })
                .collect(),
        )
        .expect("0/1 values are finite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;

    #[test]
    fn ball_clipped_by_boundary() {
        let g = make_grid(11).unwrap();
        let m = RegionMask::ball(g, (0.0_f64, 0.0), 0.1);
        // (0,0), (0.1,0), (0,0.1)
        assert_eq!(m.count(), 3);
        let full = RegionMask::ball(g, (0.5_f64, 0.5), 0.1);
        assert_eq!(full.count(), 5);
    }

    #[test]
    fn nested_balls_are_subsets() {
        let g = make_grid(33).unwrap();
        let a = RegionMask::ball(g, (0.4_f64, 0.6), 0.1);
        let b = RegionMask::ball(g, (0.4_f64, 0.6), 0.2);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(a.is_subset_of(&RegionMask::full(g)));
    }

    #[test]
    fn inset_and_threshold() {
        let g = make_grid(5).unwrap();
        assert_eq!(RegionMask::inset(g, 0.25_f64).count(), 9);
        let f = ScalarField::from_fn(g, |x: f64, _| x);
        assert_eq!(RegionMask::threshold(&f, 0.5).count(), 15);
    }
}
