use super::operator::{solve_forward, Problem};
use crate::grid_fields::{Grid, ScalarField, TensorField};
use crate::sparse_linalg::SolveReport;
use crate::{Error, Real, Result};

/// Test problems with known or reference solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manufactured {
    /// `u = cos x cos y`, `q ≡ 2`, `A = I`; no interior zeros.
    K1,
    /// `u = cos 2x cos 2y`, `q ≡ 8`, `A = I`; nodal lines at `x = π/4` and `y = π/4`.
    K2,
    /// `A = diag(1 + 0.3x, 1 + 0.3y)`, `q ≡ 2`, boundary data of `cos x cos y`.
    VarCoef,
}

impl Manufactured {
    pub const ALL: [Manufactured; 3] = [Manufactured::K1, Manufactured::K2, Manufactured::VarCoef];

    pub fn tag(self) -> &'static str {
        match self {
            Manufactured::K1 => "k1",
            Manufactured::K2 => "k2",
            Manufactured::VarCoef => "varcoef",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown problem case `{s}`")))
    }

    pub fn q_value<T: Real>(self) -> T {
        match self {
            Manufactured::K2 => T::lit(8.0),
            _ => T::lit(2.0),
        }
    }

    /// Closed-form solution, when there is one.
    pub fn exact<T: Real>(self, x: T, y: T) -> Option<T> {
        match self {
            Manufactured::K1 => Some(x.cos() * y.cos()),
            Manufactured::K2 => Some((x + x).cos() * (y + y).cos()),
            Manufactured::VarCoef => None,
        }
    }

    pub fn exact_field<T: Real>(self, grid: Grid) -> Option<ScalarField<T>> {
        self.exact(T::zero(), T::zero())?;
        Some(ScalarField::from_fn(grid, |x, y| {
            self.exact(x, y).expect("closed form")
        }))
    }

    pub fn tensor<T: Real>(self, grid: Grid) -> TensorField<T> {
        match self {
            Manufactured::VarCoef => {
                let c = T::lit(0.3);
                TensorField::from_fn(grid, |x, y| [T::one() + c * x, T::zero(), T::one() + c * y])
                    .expect("uniformly elliptic")
            }
            _ => TensorField::identity(grid),
        }
    }

    pub fn boundary<T: Real>(self, grid: Grid) -> ScalarField<T> {
        match self {
            Manufactured::K2 => {
                ScalarField::from_fn(grid, |x: T, y: T| (x + x).cos() * (y + y).cos())
            }
            _ => ScalarField::from_fn(grid, |x: T, y: T| x.cos() * y.cos()),
        }
    }

    pub fn problem<T: Real>(self, grid: Grid) -> Problem<T> {
        Problem::new(
            self.tensor(grid),
            ScalarField::constant(grid, self.q_value()),
            self.boundary(grid),
        )
        .expect("fields share the grid")
    }
}

/// Solves `case` on a grid `refine` times finer per axis and injects the
/// result back onto `grid`.
pub fn reference_solution<T: Real>(
    case: Manufactured,
    grid: Grid,
    refine: usize,
    tol: T,
) -> Result<(ScalarField<T>, SolveReport)> {
    if refine == 0 {
        return Err(Error::InvalidArgument(
            "refinement factor must be positive".into(),
        ));
    }
    let fine = Grid::new((grid.nx() - 1) * refine + 1, (grid.ny() - 1) * refine + 1)?;
    let (uf, rep) = solve_forward(&case.problem(fine), tol)?;
    let mut v = Vec::with_capacity(grid.len());
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            v.push(uf.at(i * refine, j * refine));
        }
    }
    Ok((ScalarField::from_values(grid, v)?, rep))
}
