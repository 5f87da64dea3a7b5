use crate::grid_fields::{gradient, integrate, Grid, RegionMask, ScalarField};
use crate::{Error, Real, Result};

/// Distance from `x` to the boundary of the unit square.
pub fn dist_to_boundary<T: Real>(x: (T, T)) -> T {
    x.0.min(T::one() - x.0).min(x.1).min(T::one() - x.1)
}

pub(crate) fn ball<T: Real>(grid: Grid, x: (T, T), r: T) -> RegionMask {
    RegionMask::ball(grid, x, r)
}

pub(crate) fn grad_sq<T: Real>(u: &ScalarField<T>) -> ScalarField<T> {
    let (ux, uy) = gradient(u);
    ux.zip_map(&uy, |a, b| a * a + b * b).expect("same grid")
}

fn check_radius<T: Real>(x: (T, T), r: T, reach: T, what: &str) -> Result<()> {
    let d = dist_to_boundary(x);
    if !(r > T::zero()) || !(reach * r < d) {
        return Err(Error::InvalidArgument(format!(
            "{what}: need 0 < {reach}·r < dist(x, Γ) = {d}, got r = {r}"
        )));
    }
    Ok(())
}

/// `(∫_{B(x,r)} |∇u|², r⁻² ∫_{B(x,2r)} u²)`.
pub fn caccioppoli_ratio<T: Real>(u: &ScalarField<T>, x: (T, T), r: T) -> Result<(T, T)> {
    check_radius(x, r, T::lit(2.0), "Caccioppoli")?;
    let g = *u.grid();
    let lhs = integrate(&grad_sq(u), &ball(g, x, r))?;
    let rhs = integrate(&u.map(|v| v * v), &ball(g, x, r + r))? / (r * r);
    Ok((lhs, rhs))
}

/// `∫_{B_{2r}} u² / ∫_{B_r} u²`; infinite when `u` vanishes on `B_r`.
pub fn doubling_ratio<T: Real>(u: &ScalarField<T>, x: (T, T), r: T) -> Result<T> {
    check_radius(x, r, T::lit(2.0), "doubling")?;
    let g = *u.grid();
    let sq = u.map(|v| v * v);
    let inner = integrate(&sq, &ball(g, x, r))?;
    let outer = integrate(&sq, &ball(g, x, r + r))?;
    Ok(if inner > T::zero() {
        outer / inner
    } else {
        T::infinity()
    })
}

/// `((⨍_{B_r} u^{2(1+δ)})^{1/(1+δ)}, ⨍_{B_r} u²)`.
pub fn reverse_holder<T: Real>(u: &ScalarField<T>, x: (T, T), r: T, delta: T) -> Result<(T, T)> {
    check_radius(x, r, T::one(), "reverse Hölder")?;
    if !(delta > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "δ must be positive, got {delta}"
        )));
    }
    let m = ball(*u.grid(), x, r);
    let vol = integrate(&ScalarField::constant(*u.grid(), T::one()), &m)?;
    let p = T::one() + delta;
    let hi = integrate(&u.map(|v| (v * v).powf(p)), &m)? / vol;
    let lo = integrate(&u.map(|v| v * v), &m)? / vol;
    Ok((hi.powf(p.recip()), lo))
}

/// Negative-power statistic together with the nodes left out because `u`
/// is numerically zero there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegPower<T> {
    pub value: T,
    pub excluded: usize,
}

fn zero_cut<T: Real>(u: &ScalarField<T>) -> T {
    T::lit(1e-12) * u.max_abs()
}

/// `∫_{B_r} |u|^{-p}` and its measure over the nodes with `|u|` above the cut.
fn neg_power_parts<T: Real>(u: &ScalarField<T>, m: &RegionMask, p: T) -> Result<(T, T, usize)> {
    let cut = zero_cut(u);
    let keep = RegionMask::from_bools(
        *u.grid(),
        m.as_slice()
            .iter()
            .zip(u.values())
            .map(|(&inside, &v)| inside && v.abs() > cut)
            .collect(),
        crate::grid_fields::MaskKind::Custom,
    )?;
    let excluded = m.count() - keep.count();
    if keep.is_empty() {
        return Ok((T::infinity(), T::zero(), excluded));
    }
    let f = u.map(|v| {
        if v.abs() > cut {
            v.abs().powf(-p)
        } else {
            T::zero()
        }
    });
    let integral = integrate(&f, &keep)?;
    let vol = integrate(&ScalarField::constant(*u.grid(), T::one()), &keep)?;
    Ok((integral, vol, excluded))
}

/// `(⨍ u² · (⨍ |u|^{-2/(κ-1)})^{κ-1}, 1)` over `B(x, r)`.
pub fn muckenhoupt<T: Real>(
    u: &ScalarField<T>,
    x: (T, T),
    r: T,
    kappa: T,
) -> Result<(NegPower<T>, T)> {
    check_radius(x, r, T::one(), "Muckenhoupt")?;
    if !(kappa > T::one()) {
        return Err(Error::InvalidArgument(format!(
            "κ must exceed 1, got {kappa}"
        )));
    }
    let m = ball(*u.grid(), x, r);
    let vol = integrate(&ScalarField::constant(*u.grid(), T::one()), &m)?;
    let mean_sq = integrate(&u.map(|v| v * v), &m)? / vol;
    let km1 = kappa - T::one();
    let (neg, neg_vol, excluded) = neg_power_parts(u, &m, (T::one() + T::one()) / km1)?;
    let value = if neg.is_infinite() {
        neg
    } else {
        mean_sq * (neg / neg_vol).powf(km1)
    };
    Ok((NegPower { value, excluded }, T::one()))
}

/// `∫_{B(x,R)} |u|^{-2 r_exp}`.
pub fn neg_power_mass<T: Real>(
    u: &ScalarField<T>,
    x: (T, T),
    big_r: T,
    r_exp: T,
) -> Result<NegPower<T>> {
    check_radius(x, big_r, T::one(), "negative power mass")?;
    if !(r_exp > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "exponent must be positive, got {r_exp}"
        )));
    }
    let m = ball(*u.grid(), x, big_r);
    let (value, _, excluded) = neg_power_parts(u, &m, r_exp + r_exp)?;
    Ok(NegPower { value, excluded })
}

/// For every centre of an `m×m` lattice on the closed square, the maximum
/// of `u²` over `B(x, r*) ∩ Ω`; returns the minimum over centres.
pub fn delta_star_probe<T: Real>(u: &ScalarField<T>, r_star: T, lattice: usize) -> Result<T> {
    if lattice < 2 {
        return Err(Error::InvalidArgument(
            "lattice needs at least 2 points per axis".into(),
        ));
    }
    if !(r_star > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "r* must be positive, got {r_star}"
        )));
    }
    let g = *u.grid();
    let step = T::one() / T::from_usize_lossy(lattice - 1);
    let mut best = T::infinity();
    for j in 0..lattice {
        for i in 0..lattice {
            let c = (T::from_usize_lossy(i) * step, T::from_usize_lossy(j) * step);
            let m = ball(g, c, r_star);
            if m.is_empty() {
                return Err(Error::EmptyMask);
            }
            let peak = m.indices().map(|k| u[k] * u[k]).fold(T::zero(), T::max);
            best = best.min(peak);
        }
    }
    Ok(best)
}
