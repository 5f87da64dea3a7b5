use super::SparseMatrix;
use crate::scalar::{axpy, dot, norm2};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Cg,
    BiCgStab,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cg => "cg",
            Method::BiCgStab => "bicgstab",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of an iterative solve. `rel_residual` is always the true residual
/// `‖b − M x‖ / ‖b‖` of the returned iterate, never the recursive estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    pub rel_residual: f64,
    pub converged: bool,
    pub method: Method,
}

// Give up after this many recursive-residual convergences that the true
// residual does not confirm.
const MAX_FALSE_CONVERGENCE: usize = 3;

fn check_dims<T: Real>(m: &SparseMatrix<T>, v: &[T]) -> Result<()> {
    if v.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            rows: m.nrows(),
            len: v.len(),
        });
    }
    Ok(())
}

fn jacobi<T: Real>(m: &SparseMatrix<T>) -> Vec<T> {
    m.diagonal()
        .into_iter()
        .map(|d| if d == T::zero() { T::one() } else { d.recip() })
        .collect()
}

fn true_residual<T: Real>(m: &SparseMatrix<T>, b: &[T], x: &[T], r: &mut [T]) -> T {
    m.spmv_into(x, r);
    for (ri, &bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    norm2(r)
}

fn trivial<T: Real>(n: usize, method: Method) -> (Vec<T>, SolveReport) {
    (
        vec![T::zero(); n],
        SolveReport {
            iterations: 0,
            rel_residual: 0.0,
            converged: true,
            method,
        },
    )
}

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
pub fn cg_solve<T: Real>(
    m: &SparseMatrix<T>,
    b: &[T],
    tol: T,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    cg_solve_from(m, b, None, tol, max_iter)
}

/// Conjugate gradients with an optional warm start. Meant for symmetric
/// positive definite `m`; on anything else it may stall, which shows up as
/// `converged == false` rather than an error.
pub fn cg_solve_from<T: Real>(
    m: &SparseMatrix<T>,
    b: &[T],
    x0: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    check_dims(m, b)?;
    if let Some(x0) = x0 {
        check_dims(m, x0)?;
    }
    let n = m.nrows();
    let bnorm = norm2(b);
    if bnorm == T::zero() {
        return Ok(trivial(n, Method::Cg));
    }
    let dinv = jacobi(m);
    let mut x = x0.map_or_else(|| vec![T::zero(); n], <[T]>::to_vec);
    let mut r = vec![T::zero(); n];
    let mut rnorm = true_residual(m, b, &x, &mut r);
    let mut z: Vec<T> = r.iter().zip(&dinv).map(|(&a, &d)| a * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut q = vec![T::zero(); n];
    let mut false_hits = 0;
    let mut iterations = 0;
    let mut converged = rnorm <= tol * bnorm;

    while !converged && iterations < max_iter {
        iterations += 1;
        m.spmv_into(&p, &mut q);
        let pq = dot(&p, &q);
        if !(pq > T::zero()) || !pq.is_finite() {
            break;
        }
        let alpha = rz / pq;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        rnorm = norm2(&r);
        let mut restart = false;
        if rnorm <= tol * bnorm {
            rnorm = true_residual(m, b, &x, &mut r);
            if rnorm <= tol * bnorm {
                converged = true;
                break;
            }
            false_hits += 1;
            if false_hits >= MAX_FALSE_CONVERGENCE {
                break;
            }
            restart = true;
        }
        for ((zi, &ri), &di) in z.iter_mut().zip(&r).zip(&dinv) {
            *zi = ri * di;
        }
        let rz_new = dot(&r, &z);
        let beta = if restart { T::zero() } else { rz_new / rz };
        for (pi, &zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
        rz = rz_new;
    }
    if !converged {
        rnorm = true_residual(m, b, &x, &mut r);
    }
    let rel = (rnorm / bnorm).to_f64_lossy();
    Ok((
        x,
        SolveReport {
            iterations,
            rel_residual: rel,
            converged: converged && rel.is_finite(),
            method: Method::Cg,
        },
    ))
}

/// Jacobi-preconditioned BiCGStab from a zero initial guess.
pub fn bicgstab_solve<T: Real>(
    m: &SparseMatrix<T>,
    b: &[T],
    tol: T,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    bicgstab_solve_from(m, b, None, tol, max_iter)
}

/// BiCGStab (right Jacobi preconditioning) with an optional warm start.
/// A vanishing inner product is reported as [`Error::Breakdown`].
pub fn bicgstab_solve_from<T: Real>(
    m: &SparseMatrix<T>,
    b: &[T],
    x0: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    check_dims(m, b)?;
    if let Some(x0) = x0 {
        check_dims(m, x0)?;
    }
    let n = m.nrows();
    let bnorm = norm2(b);
    if bnorm == T::zero() {
        return Ok(trivial(n, Method::BiCgStab));
    }
    let dinv = jacobi(m);
    let tiny = T::epsilon() * T::epsilon();
    let breakdown = |iteration| Error::Breakdown {
        method: Method::BiCgStab.name(),
        iteration,
    };

    let mut x = x0.map_or_else(|| vec![T::zero(); n], <[T]>::to_vec);
    let mut r = vec![T::zero(); n];
    let mut rnorm = true_residual(m, b, &x, &mut r);
    let mut r_hat = r.clone();
    let mut r_hat_norm = rnorm;
    let (mut rho, mut alpha, mut omega) = (T::one(), T::one(), T::one());
    let mut v = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    let mut y = vec![T::zero(); n];
    let mut s = vec![T::zero(); n];
    let mut t = vec![T::zero(); n];
    let mut false_hits = 0;
    let mut iterations = 0;
    let mut converged = rnorm <= tol * bnorm;

    while !converged && iterations < max_iter {
        iterations += 1;
        let rho_new = dot(&r_hat, &r);
        if rho_new.abs() <= tiny * r_hat_norm * rnorm || !rho_new.is_finite() {
            return Err(breakdown(iterations));
        }
        let beta = (rho_new / rho) * (alpha / omega);
        for ((pi, &ri), &vi) in p.iter_mut().zip(&r).zip(&v) {
            *pi = ri + beta * (*pi - omega * vi);
        }
        for ((yi, &pi), &di) in y.iter_mut().zip(&p).zip(&dinv) {
            *yi = pi * di;
        }
        m.spmv_into(&y, &mut v);
        let rv = dot(&r_hat, &v);
        if rv.abs() <= tiny * r_hat_norm * norm2(&v) || !rv.is_finite() {
            return Err(breakdown(iterations));
        }
        alpha = rho_new / rv;
        axpy(alpha, &y, &mut x);
        for ((si, &ri), &vi) in s.iter_mut().zip(&r).zip(&v) {
            *si = ri - alpha * vi;
        }
        rho = rho_new;

        let mut check = norm2(&s) <= tol * bnorm;
        if !check {
            for ((yi, &si), &di) in y.iter_mut().zip(&s).zip(&dinv) {
                *yi = si * di;
            }
            m.spmv_into(&y, &mut t);
            let tt = dot(&t, &t);
            if tt == T::zero() || !tt.is_finite() {
                return Err(breakdown(iterations));
            }
            omega = dot(&t, &s) / tt;
            if omega == T::zero() {
                return Err(breakdown(iterations));
            }
            axpy(omega, &y, &mut x);
            for ((ri, &si), &ti) in r.iter_mut().zip(&s).zip(&t) {
                *ri = si - omega * ti;
            }
            rnorm = norm2(&r);
            check = rnorm <= tol * bnorm;
        }
        if check {
            rnorm = true_residual(m, b, &x, &mut r);
            if rnorm <= tol * bnorm {
                converged = true;
                break;
            }
            false_hits += 1;
            if false_hits >= MAX_FALSE_CONVERGENCE {
                break;
            }
            // Restart the shadow space from the true residual.
            r_hat.copy_from_slice(&r);
            r_hat_norm = rnorm;
            rho = T::one();
            alpha = T::one();
            omega = T::one();
            v.iter_mut().for_each(|e| *e = T::zero());
            p.iter_mut().for_each(|e| *e = T::zero());
        }
    }
    if !converged {
        rnorm = true_residual(m, b, &x, &mut r);
    }
    let rel = (rnorm / bnorm).to_f64_lossy();
    Ok((
        x,
        SolveReport {
            iterations,
            rel_residual: rel,
            converged: converged && rel.is_finite(),
            method: Method::BiCgStab,
        },
    ))
}

/// CG when `m` is symmetric, falling back to BiCGStab if CG does not
/// converge; BiCGStab directly otherwise.
pub fn solve_auto<T: Real>(
    m: &SparseMatrix<T>,
    b: &[T],
    x0: Option<&[T]>,
    tol: T,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    if m.is_symmetric() {
        let (x, rep) = cg_solve_from(m, b, x0, tol, max_iter)?;
        if rep.converged {
            return Ok((x, rep));
        }
    }
    bicgstab_solve_from(m, b, x0, tol, max_iter)
}
