use crate::grid_fields::{Grid, ScalarField, TensorField};
use crate::sparse_linalg::SparseMatrix;
use crate::{Real, Result};

/// Position of node `(i, j)` among the interior unknowns, row-major.
#[inline]
pub fn interior_index(grid: &Grid, i: usize, j: usize) -> Option<usize> {
    (!grid.is_boundary(i, j)).then(|| (j - 1) * (grid.nx() - 2) + (i - 1))
}

/// Coefficients of `(−L_q u)` at interior node `(i, j)`, indexed `[dj + 1][di + 1]`.
///
/// Diagonal diffusion uses fluxes across edge midpoints with arithmetic
/// averages of the node values. The mixed term comes from the cell energy
/// `2 a12 ∂x u ∂y u` with cell-averaged differences, which keeps the
/// nine-point matrix exactly symmetric.
pub(crate) fn stencil<T: Real>(
    a: &TensorField<T>,
    q: &ScalarField<T>,
    i: usize,
    j: usize,
) -> [[T; 3]; 3] {
    let g = a.grid();
    let (hx, hy): (T, T) = (g.hx(), g.hy());
    let half = T::lit(0.5);
    let p = g.index(i, j);
    let (a11, a12, a22) = (a.a11(), a.a12(), a.a22());
    let mut c = [[T::zero(); 3]; 3];

    let e = (a11[p] + a11[g.index(i + 1, j)]) * half / (hx * hx);
    let w = (a11[g.index(i - 1, j)] + a11[p]) * half / (hx * hx);
    let n = (a22[p] + a22[g.index(i, j + 1)]) * half / (hy * hy);
    let s = (a22[g.index(i, j - 1)] + a22[p]) * half / (hy * hy);
    c[1][2] -= e;
    c[1][0] -= w;
    c[2][1] -= n;
    c[0][1] -= s;
    c[1][1] += e + w + n + s - q.values()[p];

    let sx = |right: bool| if right { half / hx } else { -half / hx };
    let sy = |top: bool| if top { half / hy } else { -half / hy };
    for (ci, cj) in [(i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j)] {
        let avg = (a12[g.index(ci, cj)]
            + a12[g.index(ci + 1, cj)]
            + a12[g.index(ci, cj + 1)]
            + a12[g.index(ci + 1, cj + 1)])
            * T::lit(0.25);
        if avg == T::zero() {
            continue;
        }
        let (px, py) = (i > ci, j > cj);
        for (kx, ky) in [(false, false), (true, false), (false, true), (true, true)] {
            let coef = avg * (sx(px) * sy(ky) + sy(py) * sx(kx));
            let di = ci + kx as usize + 1 - i;
            let dj = cj + ky as usize + 1 - j;
            c[dj][di] += coef;
        }
    }
    c
}

/// Matrix of `−L_q` on the interior unknowns; boundary columns are left to
/// [`lift`].
pub fn assemble<T: Real>(a: &TensorField<T>, q: &ScalarField<T>) -> Result<SparseMatrix<T>> {
    let g = *a.grid();
    g.ensure_same(q.grid())?;
    let (nx, ny) = (g.nx(), g.ny());
    let dim = (nx - 2) * (ny - 2);
    let mut t = Vec::with_capacity(9 * dim);
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let row = interior_index(&g, i, j).expect("interior");
            let c = stencil(a, q, i, j);
            for (dj, crow) in c.iter().enumerate() {
                for (di, &v) in crow.iter().enumerate() {
                    if let Some(col) = interior_index(&g, i + di - 1, j + dj - 1) {
                        t.push((row, col, v));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(dim, t)
}

/// Right-hand side `−A_ib g` moving the Dirichlet values out of the system.
pub fn lift<T: Real>(
    a: &TensorField<T>,
    q: &ScalarField<T>,
    g_bd: &ScalarField<T>,
) -> Result<Vec<T>> {
    let g = *a.grid();
    g.ensure_same(q.grid())?;
    g.ensure_same(g_bd.grid())?;
    let (nx, ny) = (g.nx(), g.ny());
    let mut b = vec![T::zero(); (nx - 2) * (ny - 2)];
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            if i > 1 && i < nx - 2 && j > 1 && j < ny - 2 {
                continue;
            }
            let c = stencil(a, q, i, j);
            let mut acc = T::zero();
            for (dj, crow) in c.iter().enumerate() {
                for (di, &v) in crow.iter().enumerate() {
                    let (ii, jj) = (i + di - 1, j + dj - 1);
                    if g.is_boundary(ii, jj) {
                        acc -= v * g_bd.at(ii, jj);
                    }
                }
            }
            b[interior_index(&g, i, j).expect("interior")] = acc;
        }
    }
    Ok(b)
}

/// Pointwise `L_q u` at interior nodes, zero on the boundary.
pub fn residual_field<T: Real>(
    a: &TensorField<T>,
    q: &ScalarField<T>,
    u: &ScalarField<T>,
) -> Result<ScalarField<T>> {
    let g = *a.grid();
    g.ensure_same(q.grid())?;
    g.ensure_same(u.grid())?;
    let mut r = vec![T::zero(); g.len()];
    for j in 1..g.ny() - 1 {
        for i in 1..g.nx() - 1 {
            let c = stencil(a, q, i, j);
            let mut acc = T::zero();
            for (dj, crow) in c.iter().enumerate() {
                for (di, &v) in crow.iter().enumerate() {
                    acc += v * u.at(i + di - 1, j + dj - 1);
                }
            }
            r[g.index(i, j)] = -acc;
        }
    }
    ScalarField::from_values(g, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;

    #[test]
    fn five_point_rows() {
        let g = make_grid(5).unwrap();
        let h2 = 1.0 / 16.0;
        let zero = ScalarField::zeros(g);
        let c = stencil(&TensorField::<f64>::identity(g), &zero, 2, 2);
        assert!((c[1][1] - 4.0 / h2).abs() < 1e-9);
        for (dj, di) in [(0, 1), (2, 1), (1, 0), (1, 2)] {
            assert!((c[dj][di] + 1.0 / h2).abs() < 1e-9);
        }
        assert_eq!(c[0][0], 0.0);
        let c2 = stencil(&TensorField::scaled_identity(g, 2.0), &zero, 2, 2);
        assert!((c2[1][1] - 8.0 / h2).abs() < 1e-9);
        let c3 = stencil(
            &TensorField::identity(g),
            &ScalarField::constant(g, 3.0),
            2,
            2,
        );
        assert!((c3[1][1] - (4.0 / h2 - 3.0)).abs() < 1e-9);
    }

    #[test]
    fn cross_term_is_consistent_on_xy() {
        // div(A∇(xy)) = 2 a12 for constant A.
        let g = make_grid(9).unwrap();
        let a = TensorField::<f64>::from_fn(g, |_, _| [1.5, 0.4, 1.2]).unwrap();
        let u = ScalarField::from_fn(g, |x, y| x * y);
        let r = residual_field(&a, &ScalarField::zeros(g), &u).unwrap();
        for k in g.interior_nodes() {
            assert!((r[k] - 0.8).abs() < 1e-10, "{}", r[k]);
        }
    }

    #[test]
    fn zero_everything_gives_zero_residual() {
        let g = make_grid(7).unwrap();
        let r = residual_field(
            &TensorField::identity(g),
            &ScalarField::constant(g, 2.0),
            &ScalarField::zeros(g),
        )
        .unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }

    #[test]
    fn assembled_matrix_is_symmetric_with_variable_cross_terms() {
        let g = make_grid(12).unwrap();
        let a = TensorField::<f64>::from_fn(g, |x, y| {
            [1.0 + x, 0.3 * (x * y).sin(), 1.0 + 0.5 * y * y]
        })
        .unwrap();
        let q = ScalarField::from_fn(g, |x, y| 2.0 + x - y);
        let m = assemble(&a, &q).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.nrows(), 100);
    }
}
