use rayon::prelude::*;

use super::ScalarField;
use crate::Real;

/// Distance reported when the field has no zero on the grid (longer than
/// any distance inside the unit square).
pub const NO_ZERO_DISTANCE: f64 = 10.0;

/// Points of the discrete nodal set: nodes where `u` is exactly zero plus
/// the linear-interpolation zero on every grid edge with a strict sign change.
pub fn zero_points<T: Real>(u: &ScalarField<T>) -> Vec<(T, T)> {
    let g = *u.grid();
    let (hx, hy) = (g.hx::<T>(), g.hy::<T>());
    let v = u.values();
    let mut pts = Vec::new();
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            let k = g.index(i, j);
            let (x, y) = (g.x::<T>(i), g.y::<T>(j));
            if v[k] == T::zero() {
                pts.push((x, y));
                continue;
            }
            if i + 1 < g.nx() {
                let w = v[k + 1];
                if v[k] * w < T::zero() {
                    let t = v[k] / (v[k] - w);
                    pts.push((x + t * hx, y));
                }
            }
            if j + 1 < g.ny() {
                let w = v[k + g.nx()];
                if v[k] * w < T::zero() {
                    let t = v[k] / (v[k] - w);
                    pts.push((x, y + t * hy));
                }
            }
        }
    }
    pts
}

/// Distance from every node to the discrete nodal set of `u`, by brute-force
/// minimum over [`zero_points`]. Nodes get [`NO_ZERO_DISTANCE`] when `u`
/// never vanishes.
pub fn dist_to_zero_set<T: Real>(u: &ScalarField<T>) -> ScalarField<T> {
    let g = *u.grid();
    let pts = zero_points(u);
    if pts.is_empty() {
        return ScalarField::constant(g, T::lit(NO_ZERO_DISTANCE));
    }
    let values: Vec<T> = (0..g.len())
        .into_par_iter()
        .map(|k| {
            let (x, y) = g.coords::<T>(k);
            pts.iter()
                .map(|&(px, py)| (px - x) * (px - x) + (py - y) * (py - y))
                .fold(T::infinity(), |m, d| m.min(d))
                .sqrt()
        })
        .collect();
    ScalarField::from_values(g, values).expect("distances are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn planar_zero_set() {
        let g = make_grid(9).unwrap();
        let d = dist_to_zero_set(&ScalarField::from_fn(g, |x: f64, _| x - 0.5));
        let h = g.hx::<f64>();
        for j in 0..9 {
            assert!((d.at(6, j) - 0.25).abs() <= h);
            assert_eq!(d.at(4, j), 0.0);
        }
    }

    #[test]
    fn no_zero_gives_sentinel() {
        let g = make_grid(9).unwrap();
        let d = dist_to_zero_set(&ScalarField::constant(g, 1.0_f64));
        assert!(d.values().iter().all(|&v| v == NO_ZERO_DISTANCE));
    }

    #[test]
    fn cosine_nodal_line() {
        let g = make_grid(65).unwrap();
        let u = ScalarField::from_fn(g, |x: f64, y| (2.0 * x).cos() * (2.0 * y).cos());
        let d = dist_to_zero_set(&u);
        let k = g.nearest_node(FRAC_PI_4, 0.3);
        assert!(d[k] <= g.hx::<f64>());
        // far corner (0,0): nearest zero is on x = π/4 or y = π/4
        assert!((d[0] - FRAC_PI_4).abs() < 1e-3);
    }
}
