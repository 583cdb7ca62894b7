//! Shared helpers for the integration suites: an independent special-point
//! oracle that sweeps the pencil numerically, with no use of the minor
//! polynomials or projective root machinery under test.

use slocc::linalg::svd_2xn;
use slocc::pencil::Pencil;
use slocc::poly::ProjPoint;
use slocc::tripartite::{classify3, TriClass};
use slocc::{StateVector, Tolerances, C64};

/// A special point located by the sweep oracle.
#[derive(Debug, Clone)]
pub struct OraclePoint {
    pub point: ProjPoint,
    pub class: TriClass,
}

/// Squared rank-drop measure of the pencil vector at spherical coordinates
/// `(theta, phi)`: the minimum over partitions of `(σ₂/σ₁)²`.
fn drop_measure(pencil: &Pencil, theta: f64, phi: f64) -> f64 {
    let p = point_at(theta, phi);
    let v = pencil.state_at(&p);
    let mut best = f64::INFINITY;
    for k in 1..=3 {
        let svd = svd_2xn(&v.reshape(k).unwrap()).unwrap();
        let ratio = svd.sigma[1] / svd.sigma[0];
        best = best.min(ratio * ratio);
    }
    best
}

/// The projective line parametrized as a sphere:
/// `[cos(θ/2) : sin(θ/2)·e^{iφ}]`.
fn point_at(theta: f64, phi: f64) -> ProjPoint {
    ProjPoint::new(
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    )
}

/// Locates every parameter where the pencil vector drops below the generic
/// tripartite class, by a dense Fibonacci-sphere sweep followed by
/// pattern-search minimization of the rank-drop measure.
pub fn sweep_special_points(pencil: &Pencil, samples: usize, tol: &Tolerances) -> Vec<OraclePoint> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let mut grid: Vec<(f64, f64, f64)> = (0..samples)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / samples as f64;
            let theta = z.acos();
            let phi = golden * i as f64;
            (drop_measure(pencil, theta, phi), theta, phi)
        })
        .collect();
    grid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // polish the lowest-measure samples plus a low sample from every shell
    // of the sweep, so shallow zeros next to a deep one are not missed
    let mut seeds: Vec<(f64, f64)> = grid.iter().take(40).map(|g| (g.1, g.2)).collect();
    let shells = 16;
    for s in 0..shells {
        let lo = s * samples / shells;
        let hi = ((s + 1) * samples / shells).min(samples);
        if let Some(best) = grid
            .iter()
            .filter(|g| {
                let i = ((1.0 - g.1.cos()) / 2.0 * samples as f64) as usize;
                i >= lo && i < hi
            })
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        {
            seeds.push((best.1, best.2));
        }
    }

    let mut zeros: Vec<OraclePoint> = Vec::new();
    for (theta0, phi0) in seeds {
        let (theta, phi, value) = pattern_search(pencil, theta0, phi0);
        if value > 1e-16 {
            continue;
        }
        let point = point_at(theta, phi);
        if zeros.iter().any(|z| z.point.chordal(&point) <= tol.root_cluster) {
            continue;
        }
        let state = pencil.state_at(&point);
        let report = classify3(&state, tol).unwrap();
        if matches!(report.class, TriClass::Product | TriClass::ZeroPsi(_)) {
            zeros.push(OraclePoint {
                point,
                class: report.class,
            });
        }
    }
    zeros
}

fn pattern_search(pencil: &Pencil, mut theta: f64, mut phi: f64) -> (f64, f64, f64) {
    let mut step = 0.15;
    let mut best = drop_measure(pencil, theta, phi);
    while step > 1e-12 {
        let mut improved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let t = (theta + dt).clamp(0.0, std::f64::consts::PI);
            let p = phi + dp;
            let v = drop_measure(pencil, t, p);
            if v < best {
                best = v;
                theta = t;
                phi = p;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (theta, phi, best)
}

/// Direct check that the pencil drops rank at `point` (no polish involved).
pub fn is_rank_drop_at(pencil: &Pencil, point: &ProjPoint) -> bool {
    let v = pencil.state_at(point);
    (1..=3).any(|k| {
        let svd = svd_2xn(&v.reshape(k).unwrap()).unwrap();
        svd.sigma[1] / svd.sigma[0] <= 1e-8
    })
}

/// Builds the two-dimensional pencil of a genuine state, panicking on
/// degenerate input.
pub fn pencil_of(s: &StateVector, tol: &Tolerances) -> Pencil {
    match slocc::build_pencil(s, tol).unwrap() {
        slocc::RightSubspace::TwoDim(p) => p,
        slocc::RightSubspace::OneDim(_) => panic!("state has a factorized first qubit"),
    }
}
