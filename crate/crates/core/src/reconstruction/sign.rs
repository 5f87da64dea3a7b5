use crate::grid_fields::{gradient, Grid, ScalarField};
use crate::Real;
use std::collections::VecDeque;

fn neighbours(g: &Grid, k: usize) -> impl Iterator<Item = usize> {
    let (i, j) = g.ij(k);
    let (nx, ny) = (g.nx(), g.ny());
    [
        (i > 0).then(|| k - 1),
        (i + 1 < nx).then(|| k + 1),
        (j > 0).then(|| k - nx),
        (j + 1 < ny).then(|| k + nx),
    ]
    .into_iter()
    .flatten()
}

/// Sign field (±1) of `u` reconstructed from `J = √q |u|` and the boundary
/// data `g`.
///
/// Nodes with `J` above `h·max|∇J|` split into 4-connected components, each
/// separated from its neighbours by the strip around a nodal line. A
/// component touching the boundary takes the majority sign of `g` over its
/// boundary nodes; an interior one takes the opposite of the nearest signed
/// component. Strip nodes copy the nearest signed node.
pub fn recover_sign<T: Real>(j_data: &ScalarField<T>, g_bd: &ScalarField<T>) -> ScalarField<T> {
    let grid = *j_data.grid();
    let n = grid.len();
    let (jx, jy) = gradient(j_data);
    let gmax = jx
        .values()
        .iter()
        .zip(jy.values())
        .map(|(&a, &b)| a.hypot(b))
        .fold(T::zero(), T::max);
    let tau = grid.hx::<T>().max(grid.hy()) * gmax;
    let above: Vec<bool> = j_data.values().iter().map(|&v| v > tau).collect();

    // Component labels.
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if !above[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut list = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < list.len() {
            let k = list[head];
            head += 1;
            for nb in neighbours(&grid, k) {
                if above[nb] && comp[nb] == usize::MAX {
                    comp[nb] = id;
                    list.push(nb);
                }
            }
        }
        members.push(list);
    }

    let gabs_max = grid
        .boundary_nodes()
        .into_iter()
        .map(|k| g_bd[k].abs())
        .fold(T::zero(), T::max);
    let cut = gabs_max * T::lit(1e-3);
    let mut comp_sign: Vec<i8> = members
        .iter()
        .map(|list| {
            let vote: i64 = list
                .iter()
                .filter(|&&k| {
                    grid.is_boundary_index(k) && g_bd[k].abs() >= cut && g_bd[k] != T::zero()
                })
                .map(|&k| if g_bd[k] > T::zero() { 1 } else { -1 })
                .sum();
            vote.signum() as i8
        })
        .collect();

    let mut sign = vec![0i8; n];
    for (k, s) in sign.iter_mut().enumerate() {
        if comp[k] != usize::MAX {
            *s = comp_sign[comp[k]];
        }
    }
    if sign.iter().all(|&s| s == 0) {
        return ScalarField::constant(grid, T::one());
    }

    // Unanchored components: opposite of the nearest anchored node.
    if comp_sign.contains(&0) {
        let nearest = spread(&grid, &sign);
        for (id, list) in members.iter().enumerate() {
            if comp_sign[id] == 0 {
                let best = list
                    .iter()
                    .min_by_key(|&&k| nearest[k].1)
                    .expect("non-empty component");
                comp_sign[id] = -nearest[*best].0;
                for &k in list {
                    sign[k] = comp_sign[id];
                }
            }
        }
    }
    let nearest = spread(&grid, &sign);
    let values = (0..n)
        .map(|k| {
            let s = if sign[k] != 0 { sign[k] } else { nearest[k].0 };
            if s < 0 {
                -T::one()
            } else {
                T::one()
            }
        })
        .collect();
    ScalarField::from_values(grid, values).expect("unit values")
}

/// Multi-source BFS from every signed node: `(sign, hop distance)` of the
/// closest one.
fn spread(grid: &Grid, sign: &[i8]) -> Vec<(i8, usize)> {
    let mut out = vec![(0i8, usize::MAX); sign.len()];
    let mut queue = VecDeque::new();
    for (k, &s) in sign.iter().enumerate() {
        if s != 0 {
            out[k] = (s, 0);
            queue.push_back(k);
        }
    }
    while let Some(k) = queue.pop_front() {
        let (s, d) = out[k];
        for nb in neighbours(grid, k) {
            if out[nb].1 == usize::MAX {
                out[nb] = (s, d + 1);
                queue.push_back(nb);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;

    fn check(n: usize, u: impl Fn(f64, f64) -> f64, skip: impl Fn(f64, f64) -> bool) {
        let g = make_grid(n).unwrap();
        let uf = ScalarField::from_fn(g, &u);
        let s = recover_sign(&uf.abs().scale(2f64.sqrt()), &uf);
        for k in 0..g.len() {
            let (x, y) = g.coords::<f64>(k);
            if !skip(x, y) && uf[k] != 0.0 {
                assert_eq!(s[k], uf[k].signum(), "at ({x}, {y})");
            }
        }
    }

    #[test]
    fn four_nodal_domains() {
        let pi4 = std::f64::consts::FRAC_PI_4;
        check(
            65,
            |x, y| (2.0 * x).cos() * (2.0 * y).cos(),
            |x, y| (x - pi4).abs() < 0.03 || (y - pi4).abs() < 0.03,
        );
    }

    #[test]
    fn positive_function() {
        check(33, |x, y| x.cos() * y.cos(), |_, _| false);
    }

    #[test]
    fn interior_domain_gets_flipped() {
        // Negative disk inside a positive annulus.
        check(
            65,
            |x, y| (x - 0.5).powi(2) + (y - 0.5).powi(2) - 0.04,
            |x, y| (((x - 0.5).powi(2) + (y - 0.5).powi(2)).sqrt() - 0.2).abs() < 0.04,
        );
    }
}
