use super::{Grid, RegionMask, ScalarField};
use crate::{Error, Real, Result};

/// Tensor-product trapezoid weight of node `k`.
#[inline]
pub fn quadrature_weight<T: Real>(grid: &Grid, k: usize) -> T {
    let (i, j) = grid.ij(k);
    let half = T::lit(0.5);
    let cx = if i == 0 || i + 1 == grid.nx() {
        half
    } else {
        T::one()
    };
    let cy = if j == 0 || j + 1 == grid.ny() {
        half
    } else {
        T::one()
    };
    grid.hx::<T>() * grid.hy::<T>() * cx * cy
}

fn check(f: &ScalarField<impl Real>, m: &RegionMask) -> Result<()> {
    f.grid().ensure_same(m.grid())?;
    if m.is_empty() {
        return Err(Error::EmptyMask);
    }
    Ok(())
}

/// Trapezoid quadrature of `f` restricted to the mask.
pub fn integrate<T: Real>(f: &ScalarField<T>, m: &RegionMask) -> Result<T> {
    check(f, m)?;
    let g = f.grid();
    Ok(m.indices()
        .map(|k| quadrature_weight::<T>(g, k) * f[k])
        .sum())
}

fn masked_square_sum<T: Real>(f: &ScalarField<T>, m: &RegionMask) -> T {
    let g = f.grid();
    m.indices()
        .map(|k| quadrature_weight::<T>(g, k) * f[k] * f[k])
        .sum()
}

pub fn l2_norm<T: Real>(f: &ScalarField<T>, m: &RegionMask) -> Result<T> {
    check(f, m)?;
    Ok(masked_square_sum(f, m).sqrt())
}

/// `sqrt(‖f‖² + ‖∂₁f‖² + ‖∂₂f‖²)` on the mask, derivatives taken on the full grid.
pub fn h1_norm<T: Real>(f: &ScalarField<T>, m: &RegionMask) -> Result<T> {
    check(f, m)?;
    let (gx, gy) = gradient(f);
    Ok((masked_square_sum(f, m) + masked_square_sum(&gx, m) + masked_square_sum(&gy, m)).sqrt())
}

pub fn linf_norm<T: Real>(f: &ScalarField<T>, m: &RegionMask) -> Result<T> {
    check(f, m)?;
    Ok(m.indices().fold(T::zero(), |acc, k| acc.max(f[k].abs())))
}

/// Second-order finite differences: central in the interior, one-sided
/// three-point at the boundary rows and columns.
pub fn gradient<T: Real>(f: &ScalarField<T>) -> (ScalarField<T>, ScalarField<T>) {
    let g = *f.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let (hx, hy) = (g.hx::<T>(), g.hy::<T>());
    let two = T::lit(2.0);
    let (three, four) = (T::lit(3.0), T::lit(4.0));
    let v = f.values();
    let mut gx = vec![T::zero(); g.len()];
    let mut gy = vec![T::zero(); g.len()];
    for j in 0..ny {
        for i in 0..nx {
            let k = g.index(i, j);
            gx[k] = if i == 0 {
                (-three * v[k] + four * v[k + 1] - v[k + 2]) / (two * hx)
            } else if i + 1 == nx {
                (three * v[k] - four * v[k - 1] + v[k - 2]) / (two * hx)
            } else {
                (v[k + 1] - v[k - 1]) / (two * hx)
            };
            gy[k] = if j == 0 {
                (-three * v[k] + four * v[k + nx] - v[k + 2 * nx]) / (two * hy)
            } else if j + 1 == ny {
                (three * v[k] - four * v[k - nx] + v[k - 2 * nx]) / (two * hy)
            } else {
                (v[k + nx] - v[k - nx]) / (two * hy)
            };
        }
    }
    (
        ScalarField::from_values(g, gx).expect("finite differences of finite values"),
        ScalarField::from_values(g, gy).expect("finite differences of finite values"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;
    use std::f64::consts::PI;

    #[test]
    fn gradient_exact_on_linear_and_quadratic() {
        let g = make_grid(9).unwrap();
        let (gx, gy) = gradient(&ScalarField::from_fn(g, |x: f64, _| x));
        assert!(gx.values().iter().all(|&v| (v - 1.0).abs() < 1e-13));
        assert!(gy.values().iter().all(|&v| v.abs() < 1e-13));

        let (gx, gy) = gradient(&ScalarField::constant(g, 3.0_f64));
        assert!(gx.values().iter().chain(gy.values()).all(|&v| v == 0.0));

        let (gx, _) = gradient(&ScalarField::from_fn(g, |x: f64, _| x * x));
        assert!((gx.at(4, 2) - 1.0).abs() < 1e-13);
        // one-sided stencils are exact on quadratics too
        assert!((gx.at(8, 2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unit_area_and_zero() {
        let g = make_grid(17).unwrap();
        let full = RegionMask::full(g);
        assert!((l2_norm(&ScalarField::constant(g, 1.0_f64), &full).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(l2_norm(&ScalarField::<f64>::zeros(g), &full).unwrap(), 0.0);
        assert!((h1_norm(&ScalarField::constant(g, 1.0_f64), &full).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(h1_norm(&ScalarField::<f64>::zeros(g), &full).unwrap(), 0.0);
    }

    #[test]
    fn cosine_product_l2() {
        let g = make_grid(257).unwrap();
        let f = ScalarField::from_fn(g, |x: f64, y| (PI * x).cos() * (PI * y).cos());
        let n = l2_norm(&f, &RegionMask::full(g)).unwrap();
        assert!((n - 0.5).abs() < 1e-4, "{n}");
        assert_eq!(linf_norm(&f, &RegionMask::full(g)).unwrap(), 1.0);
    }

    #[test]
    fn linear_h1() {
        let g = make_grid(257).unwrap();
        let f = ScalarField::from_fn(g, |x: f64, _| x);
        let n = h1_norm(&f, &RegionMask::full(g)).unwrap();
        assert!((n - (4.0_f64 / 3.0).sqrt()).abs() < 1e-4, "{n}");
    }

    #[test]
    fn linf_cases() {
        let g = make_grid(9).unwrap();
        let full = RegionMask::full(g);
        assert_eq!(
            linf_norm(&ScalarField::constant(g, -2.0_f64), &full).unwrap(),
            2.0
        );
        let strip = RegionMask::from_predicate(g, |x: f64, _| x <= 0.5);
        let f = ScalarField::from_fn(g, |x: f64, _| x);
        assert_eq!(linf_norm(&f, &strip).unwrap(), 0.5);
    }

    #[test]
    fn empty_mask_rejected() {
        let g = make_grid(5).unwrap();
        let m = RegionMask::from_predicate(g, |x: f64, _| x > 2.0);
        let f = ScalarField::constant(g, 1.0_f64);
        assert!(matches!(l2_norm(&f, &m), Err(Error::EmptyMask)));
        assert!(matches!(h1_norm(&f, &m), Err(Error::EmptyMask)));
        assert!(matches!(linf_norm(&f, &m), Err(Error::EmptyMask)));
    }

    #[test]
    fn quadrature_converges_at_second_order() {
        let err = |n: usize| {
            let g = make_grid(n).unwrap();
            let f = ScalarField::from_fn(g, |x: f64, y| (PI * x).cos() * (PI * y).cos() + 0.3 * x);
            // exact: ∫(cc + 0.3x)² = 1/4 + 0 + 0.09/3 ; cross term ∫cos(πx)x dx·∫cos(πy)dy = 0
            let exact = (0.25_f64 + 0.03).sqrt();
            (l2_norm(&f, &RegionMask::full(g)).unwrap() - exact).abs()
        };
        let (e1, e2) = (err(33), err(65));
        let order = (e1 / e2).log2();
        assert!(order > 1.8, "order {order}");
    }
}
