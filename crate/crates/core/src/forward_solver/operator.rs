use super::admissibility::discrete_first_eigenvalue;
use super::stencil::{assemble, interior_index, lift};
use crate::grid_fields::{Grid, ScalarField, TensorField};
use crate::sparse_linalg::{bicgstab_solve_from, cg_solve_from, SolveReport, SparseMatrix};
use crate::{Error, Real, Result};

/// Coefficients and Dirichlet data of one forward problem.
#[derive(Debug, Clone)]
pub struct Problem<T> {
    pub a: TensorField<T>,
    pub q: ScalarField<T>,
    /// Only the boundary values are read.
    pub g: ScalarField<T>,
}

impl<T: Real> Problem<T> {
    pub fn new(a: TensorField<T>, q: ScalarField<T>, g: ScalarField<T>) -> Result<Self> {
        a.grid().ensure_same(q.grid())?;
        a.grid().ensure_same(g.grid())?;
        Ok(Self { a, q, g })
    }

    pub fn grid(&self) -> &Grid {
        self.a.grid()
    }

    /// Rejects Dirichlet data that vanish on the whole boundary.
    pub fn require_nonzero_boundary(&self) -> Result<()> {
        if self.g.is_zero_on_boundary() {
            return Err(Error::InvalidArgument(
                "boundary data vanish identically".into(),
            ));
        }
        Ok(())
    }
}

/// Assembled `−L_q` on interior nodes together with what is needed to lift
/// boundary data, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct DirichletOperator<T> {
    a: TensorField<T>,
    q: ScalarField<T>,
    matrix: SparseMatrix<T>,
    certified_pd: bool,
}

impl<T: Real> DirichletOperator<T> {
    pub fn new(a: &TensorField<T>, q: &ScalarField<T>) -> Result<Self> {
        let matrix = assemble(a, q)?;
        let certified_pd = certify_positive(a, q);
        Ok(Self {
            a: a.clone(),
            q: q.clone(),
            matrix,
            certified_pd,
        })
    }

    pub fn grid(&self) -> &Grid {
        self.a.grid()
    }

    pub fn matrix(&self) -> &SparseMatrix<T> {
        &self.matrix
    }

    /// Whether `max q` sits below a lower bound for the first eigenvalue of
    /// the diffusion part, so that conjugate gradients are safe.
    pub fn certified_pd(&self) -> bool {
        self.certified_pd
    }

    /// Solves `L_q u = source` in the interior with `u = g` on the boundary.
    /// Conjugate gradients when positive definiteness is certified,
    /// BiCGStab otherwise. Failure to reach `tol` is an error.
    pub fn solve(
        &self,
        source: Option<&ScalarField<T>>,
        g: &ScalarField<T>,
        warm: Option<&ScalarField<T>>,
        tol: T,
    ) -> Result<(ScalarField<T>, SolveReport)> {
        let grid = *self.grid();
        let mut b = lift(&self.a, &self.q, g)?;
        if let Some(s) = source {
            grid.ensure_same(s.grid())?;
            for k in grid.interior_nodes() {
                let (i, j) = grid.ij(k);
                b[interior_index(&grid, i, j).expect("interior")] -= s[k];
            }
        }
        let x0 = match warm {
            Some(w) => {
                grid.ensure_same(w.grid())?;
                Some(gather(&grid, w))
            }
            None => None,
        };
        let max_iter = 60 * grid.nx().max(grid.ny()) + 1000;
        let (x, rep) = if self.certified_pd {
            cg_solve_from(&self.matrix, &b, x0.as_deref(), tol, max_iter)?
        } else {
            bicgstab_solve_from(&self.matrix, &b, x0.as_deref(), tol, max_iter)?
        };
        if !rep.converged {
            return Err(Error::NotConverged {
                method: rep.method.name(),
                iterations: rep.iterations,
                residual: rep.rel_residual,
            });
        }
        Ok((scatter(&grid, &x, g), rep))
    }
}

/// Solves the forward problem to relative residual `tol`.
pub fn solve_forward<T: Real>(p: &Problem<T>, tol: T) -> Result<(ScalarField<T>, SolveReport)> {
    DirichletOperator::new(&p.a, &p.q)?.solve(None, &p.g, None, tol)
}

fn certify_positive<T: Real>(a: &TensorField<T>, q: &ScalarField<T>) -> bool {
    let margin = a
        .a11()
        .iter()
        .zip(a.a22())
        .zip(a.a12())
        .map(|((&d1, &d2), &o)| d1.min(d2) - o.abs())
        .fold(T::infinity(), T::min);
    margin > T::zero() && q.max_value() < margin * discrete_first_eigenvalue::<T>(a.grid())
}

fn gather<T: Real>(grid: &Grid, f: &ScalarField<T>) -> Vec<T> {
    let mut v = Vec::with_capacity((grid.nx() - 2) * (grid.ny() - 2));
    for j in 1..grid.ny() - 1 {
        for i in 1..grid.nx() - 1 {
            v.push(f.at(i, j));
        }
    }
    v
}

fn scatter<T: Real>(grid: &Grid, x: &[T], g: &ScalarField<T>) -> ScalarField<T> {
    let mut u = g.values().to_vec();
    let mut it = x.iter();
    for j in 1..grid.ny() - 1 {
        for i in 1..grid.nx() - 1 {
            u[grid.index(i, j)] = *it.next().expect("interior count");
        }
    }
    ScalarField::from_values(*grid, u).expect("finite solve output")
}
