use qscope_core::forward_solver::{
    estimate_admissibility, reference_solution, residual_field, solve_forward, DirichletOperator,
    Manufactured, Problem,
};
use qscope_core::grid_fields::{gradient, make_grid, Grid, ScalarField, TensorField};
use qscope_core::sparse_linalg::{smallest_singular_estimate, Method};
use qscope_core::Field;
use std::f64::consts::PI;

fn max_err(u: &Field, v: &Field) -> f64 {
    u.sub(v).unwrap().max_abs()
}

fn bilinear(u: &Field, x: f64, y: f64) -> f64 {
    let g = u.grid();
    let (sx, sy) = (x / g.hx::<f64>(), y / g.hy::<f64>());
    let (i, j) = (sx.floor() as usize, sy.floor() as usize);
    let (tx, ty) = (sx - i as f64, sy - j as f64);
    (1.0 - ty) * ((1.0 - tx) * u.at(i, j) + tx * u.at(i + 1, j))
        + ty * ((1.0 - tx) * u.at(i, j + 1) + tx * u.at(i + 1, j + 1))
}

#[test]
fn k1_center_value() {
    let g = make_grid(129).unwrap();
    let (u, rep) = solve_forward(&Manufactured::K1.problem(g), 1e-10).unwrap();
    assert!(rep.converged);
    assert_eq!(rep.method, Method::Cg);
    assert!((u.at(64, 64) - 0.5f64.cos().powi(2)).abs() < 1e-3);
    // Boundary values are reproduced exactly.
    let bd = Manufactured::K1.boundary::<f64>(g);
    for k in g.boundary_nodes() {
        assert_eq!(u[k], bd[k]);
    }
}

#[test]
fn k2_has_interior_nodal_line() {
    let g = make_grid(129).unwrap();
    let (u, _) = solve_forward(&Manufactured::K2.problem(g), 1e-10).unwrap();
    assert!(bilinear(&u, PI / 4.0, 0.3).abs() < 1e-3);
}

#[test]
fn zero_data_zero_solution() {
    let g = make_grid(17).unwrap();
    let p = Problem::new(
        TensorField::identity(g),
        ScalarField::constant(g, 2.0),
        ScalarField::zeros(g),
    )
    .unwrap();
    assert!(p.require_nonzero_boundary().is_err());
    let (u, rep) = solve_forward(&p, 1e-10).unwrap();
    assert_eq!(u.max_abs(), 0.0);
    assert_eq!(rep.iterations, 0);
}

#[test]
fn maximum_principle_for_laplace() {
    let g = make_grid(33).unwrap();
    let bd = ScalarField::from_fn(g, |x: f64, y: f64| (5.0 * x).sin() + y * y - 0.3);
    let p = Problem::new(TensorField::identity(g), ScalarField::zeros(g), bd.clone()).unwrap();
    let (u, _) = solve_forward(&p, 1e-12).unwrap();
    let bmax = g
        .boundary_nodes()
        .into_iter()
        .map(|k| bd[k])
        .fold(f64::MIN, f64::max);
    let bmin = g
        .boundary_nodes()
        .into_iter()
        .map(|k| bd[k])
        .fold(f64::MAX, f64::min);
    assert!(u.max_value() <= bmax + 1e-10 && u.min_value() >= bmin - 1e-10);
}

fn order(errs: &[f64]) -> Vec<f64> {
    errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[test]
fn second_order_convergence_closed_forms() {
    for case in [Manufactured::K1, Manufactured::K2] {
        let errs: Vec<f64> = [65, 129, 257]
            .iter()
            .map(|&n| {
                let g = make_grid(n).unwrap();
                let (u, _) = solve_forward(&case.problem(g), 1e-12).unwrap();
                max_err(&u, &case.exact_field(g).unwrap())
            })
            .collect();
        for o in order(&errs) {
            assert!(
                o >= 1.8,
                "{} orders {:?} errors {errs:?}",
                case.tag(),
                order(&errs)
            );
        }
    }
}

#[test]
fn second_order_convergence_variable_coefficients() {
    let errs: Vec<f64> = [17, 33, 65]
        .iter()
        .map(|&n| {
            let g = make_grid(n).unwrap();
            let (u, _) = solve_forward(&Manufactured::VarCoef.problem(g), 1e-12).unwrap();
            let (r, _) = reference_solution(Manufactured::VarCoef, g, 4, 1e-12).unwrap();
            max_err(&u, &r)
        })
        .collect();
    // The reference carries its own O((h/4)²) error, inflating the coarse/fine ratio slightly.
    for o in order(&errs) {
        assert!(o >= 1.8, "orders {:?}", order(&errs));
    }
}

#[test]
fn residual_of_manufactured_solution_is_second_order() {
    let r: Vec<f64> = [33, 65]
        .iter()
        .map(|&n| {
            let g = make_grid(n).unwrap();
            let p = Manufactured::K1.problem::<f64>(g);
            residual_field(&p.a, &p.q, &Manufactured::K1.exact_field(g).unwrap())
                .unwrap()
                .max_abs()
        })
        .collect();
    let ratio = r[0] / r[1];
    assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
}

#[test]
fn computed_solution_has_small_residual() {
    let g = make_grid(33).unwrap();
    let a = TensorField::from_fn(g, |x, y| [1.0 + 0.5 * x, 0.2 * y, 1.5 - 0.3 * y]).unwrap();
    let q = ScalarField::from_fn(g, |x, y| 3.0 + x * y);
    let p = Problem::new(a, q, Manufactured::K1.boundary(g)).unwrap();
    let (u, _) = solve_forward(&p, 1e-12).unwrap();
    let r = residual_field(&p.a, &p.q, &u).unwrap();
    // The residual is measured against the lifted boundary data, scale ~ 1/h².
    assert!(
        r.max_abs() < 1e-12 * 4.0 / g.hx::<f64>().powi(2) * 50.0,
        "{}",
        r.max_abs()
    );
}

#[test]
fn indefinite_problem_uses_bicgstab() {
    // q above the first Dirichlet eigenvalue but below the second.
    let g = make_grid(33).unwrap();
    let p = Problem::new(
        TensorField::identity(g),
        ScalarField::constant(g, 30.0),
        Manufactured::K1.boundary(g),
    )
    .unwrap();
    let op = DirichletOperator::new(&p.a, &p.q).unwrap();
    assert!(!op.certified_pd());
    let (u, rep) = op.solve(None, &p.g, None, 1e-10).unwrap();
    assert_eq!(rep.method, Method::BiCgStab);
    assert!(residual_field(&p.a, &p.q, &u).unwrap().max_abs() < 1e-5);
}

#[test]
fn admissibility_examples() {
    let g = make_grid(33).unwrap();
    let a = TensorField::identity(g);
    let q_star = ScalarField::constant(g, 2.0);
    let inside = estimate_admissibility(&a, &q_star, &q_star, 1.0, 0.5).unwrap();
    assert!(inside.member);
    assert_eq!(inside.distance, 0.0);
    let outside =
        estimate_admissibility(&a, &ScalarField::constant(g, 4.0), &q_star, 1.0, 0.5).unwrap();
    assert!(!outside.member);
    assert!(estimate_admissibility(&a, &q_star, &q_star, 1.0, 1.5).is_err());
}

#[test]
fn resolvent_of_laplacian() {
    let g = make_grid(129).unwrap();
    let a = TensorField::identity(g);
    let adm = estimate_admissibility(&a, &ScalarField::zeros(g), &ScalarField::zeros(g), 1.0, 0.5)
        .unwrap();
    let oracle = 1.0 / (2.0 * PI * PI);
    assert!((adm.resolvent_norm_estimate - oracle).abs() < 0.05 * oracle);
    assert!((0.5 / adm.resolvent_norm_estimate - 9.87).abs() < 0.05 * 9.87);
}

#[test]
fn resolvent_shift() {
    let g = make_grid(129).unwrap();
    for q in [0.0, 5.0, 10.0, 15.0] {
        let op = DirichletOperator::new(&TensorField::identity(g), &ScalarField::constant(g, q))
            .unwrap();
        let s = smallest_singular_estimate(op.matrix(), 1e-8).unwrap();
        let oracle = (2.0 * PI * PI - q).abs();
        assert!((s - oracle).abs() < 0.05 * oracle, "q {q}: {s} vs {oracle}");
    }
}

#[test]
fn a_priori_bound_under_refinement() {
    let sup = |n: usize, q: f64| {
        let g: Grid = make_grid(n).unwrap();
        let p = Problem::new(
            TensorField::identity(g),
            ScalarField::constant(g, q),
            Manufactured::K1.boundary(g),
        )
        .unwrap();
        let (u, _) = solve_forward(&p, 1e-12).unwrap();
        let (ux, uy) = gradient(&u);
        (u.max_abs(), ux.max_abs().max(uy.max_abs()))
    };
    for q in [1.0, 2.0, 3.0] {
        let (u0, d0) = sup(33, q);
        for n in [65, 129] {
            let (u1, d1) = sup(n, q);
            assert!(u1 <= 1.05 * u0 && d1 <= 1.05 * d0, "q {q} n {n}");
        }
    }
}

#[test]
fn single_precision_forward() {
    let g = make_grid(33).unwrap();
    let p = Manufactured::K1.problem::<f32>(g);
    let (u, rep) = solve_forward(&p, 1e-5f32).unwrap();
    assert!(rep.converged);
    let exact = Manufactured::K1.exact_field::<f32>(g).unwrap();
    assert!(u.sub(&exact).unwrap().max_abs() < 1e-3);
}
