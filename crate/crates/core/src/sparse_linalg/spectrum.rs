use super::{solve_auto, SparseMatrix};
use crate::scalar::{dot, norm2};
use crate::{Error, Real, Result};

const MAX_OUTER: usize = 200;

/// Estimates `σ_min(M)` by inverse power iteration on `MᵀM`, each step
/// solving `M z = x` and then `Mᵀ y = z`. Iterates until the estimate moves
/// by less than `tol` relative or the outer budget runs out. A matrix with an empty row or column is
/// exactly singular and yields zero; other inner-solve failures surface as
/// [`Error::NotConverged`].
pub fn smallest_singular_estimate<T: Real>(m: &SparseMatrix<T>, tol: T) -> Result<T> {
    let n = m.nrows();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if m.has_empty_line() {
        return Ok(T::zero());
    }
    let symmetric = m.is_symmetric();
    let mt = if symmetric { None } else { Some(m.transpose()) };
    let mt = mt.as_ref().unwrap_or(m);
    // Inverse iteration tolerates loose inner solves; tighter ones stagnate on
    // ill-conditioned operators.
    let inner_tol = (tol * T::lit(1e-3))
        .max(T::epsilon() * T::lit(64.0))
        .max(T::lit(1e-10));
    let inner_iter = 20 * n + 100;

    // Deterministic start with a nonzero component along every smooth mode.
    let mut x: Vec<T> = (0..n)
        .map(|k| T::one() + T::lit(0.25) * T::lit((k as f64 * 0.618_033_988_75).fract()))
        .collect();
    let xn = norm2(&x);
    x.iter_mut().for_each(|v| *v /= xn);

    let mut prev = T::infinity();
    for _ in 0..MAX_OUTER {
        let z = inner(m, &x, inner_tol, inner_iter)?;
        let y = inner(mt, &z, inner_tol, inner_iter)?;
        let rayleigh = dot(&x, &y);
        if !(rayleigh > T::zero()) {
            return Ok(T::zero());
        }
        let sigma = rayleigh.sqrt().recip();
        let yn = norm2(&y);
        x = y.into_iter().map(|v| v / yn).collect();
        if (sigma - prev).abs() <= tol * sigma {
            return Ok(sigma);
        }
        prev = sigma;
    }
    // Nearly repeated singular values stall the update, but every iterate
    // is already an upper bound within the cluster.
    Ok(prev)
}

fn inner<T: Real>(m: &SparseMatrix<T>, b: &[T], tol: T, max_iter: usize) -> Result<Vec<T>> {
    let (x, rep) = solve_auto(m, b, None, tol, max_iter)?;
    if !rep.converged {
        return Err(Error::NotConverged {
            method: rep.method.name(),
            iterations: rep.iterations,
            residual: rep.rel_residual,
        });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn diagonal_matrix() {
        let m = SparseMatrix::from_diagonal(&[1.0f64, 10.0]);
        let s = smallest_singular_estimate(&m, 1e-8).unwrap();
        assert!((s - 1.0).abs() < 1e-6, "{s}");
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = SparseMatrix::from_diagonal(&[0.0, 2.0]);
        assert_eq!(smallest_singular_estimate(&m, 1e-6).unwrap(), 0.0);
        assert_eq!(
            smallest_singular_estimate(&SparseMatrix::<f64>::zeros(3), 1e-6).unwrap(),
            0.0
        );
    }

    #[test]
    fn nonsymmetric_upper_triangular() {
        // [[1, 2], [0, 1]] has singular values sqrt(3 ± 2 sqrt 2) = sqrt2 ± 1.
        let m =
            SparseMatrix::from_triplets(2, vec![(0, 0, 1.0), (0, 1, 2.0), (1, 1, 1.0)]).unwrap();
        let s = smallest_singular_estimate(&m, 1e-10).unwrap();
        assert!((s - (2f64.sqrt() - 1.0)).abs() < 1e-6, "{s}");
    }

    #[test]
    fn discrete_laplacian_first_eigenvalue() {
        let n = 50;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i > 0 {
                t.push((i, i - 1, -1.0));
                t.push((i - 1, i, -1.0));
            }
        }
        let m = SparseMatrix::from_triplets(n, t).unwrap();
        let exact = 2.0 - 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
        let s = smallest_singular_estimate(&m, 1e-10).unwrap();
        assert!((s - exact).abs() < 1e-6 * exact, "{s} vs {exact}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn scales_linearly(d in prop::collection::vec(0.5f64..5.0, 2..8), alpha in 0.1f64..10.0) {
            let m = SparseMatrix::from_diagonal(&d);
            let s = smallest_singular_estimate(&m, 1e-10).unwrap();
            let sa = smallest_singular_estimate(&m.scaled(alpha), 1e-10).unwrap();
            prop_assert!((sa - alpha * s).abs() <= 1e-6 * alpha * s);
        }
    }
}
