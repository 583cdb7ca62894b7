//! Homogeneous polynomials in a projective parameter `[α : β]` and their
//! roots: quadratics carry the rank-one minor conditions of pencil
//! partition matrices, quartics carry the pencil discriminant.

use crate::{Tolerances, C64};

/// A point `[α : β]` on the complex projective line, stored with its
/// larger-modulus component normalized to exactly one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    pub alpha: C64,
    pub beta: C64,
}

impl ProjPoint {
    pub fn new(alpha: C64, beta: C64) -> ProjPoint {
        if alpha.norm() >= beta.norm() {
            ProjPoint {
                alpha: C64::new(1.0, 0.0),
                beta: beta / alpha,
            }
        } else {
            ProjPoint {
                alpha: alpha / beta,
                beta: C64::new(1.0, 0.0),
            }
        }
    }

    /// The point `[1 : 0]` (often a root "at infinity" of a dehomogenized
    /// polynomial).
    pub fn infinity() -> ProjPoint {
        ProjPoint {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    /// Representative with unit Euclidean norm, convenient for evaluating
    /// homogeneous polynomials at a canonical scale.
    pub fn unit(&self) -> (C64, C64) {
        let n = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        (self.alpha / n, self.beta / n)
    }

    /// Chordal (Fubini-Study sine) distance, in `[0, 1]`.
    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        let na = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        let nb = (other.alpha.norm_sqr() + other.beta.norm_sqr()).sqrt();
        (self.alpha * other.beta - self.beta * other.alpha).norm() / (na * nb)
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{:.6}{:+.6}i : {:.6}{:+.6}i]",
            self.alpha.re, self.alpha.im, self.beta.re, self.beta.im
        )
    }
}

/// A homogeneous polynomial `Σ coeffs[j]·α^(d−j)·β^j` of degree
/// `coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly {
    pub coeffs: Vec<C64>,
}

impl HomPoly {
    pub fn new(coeffs: Vec<C64>) -> HomPoly {
        assert!(!coeffs.is_empty());
        HomPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, alpha: C64, beta: C64) -> C64 {
        let d = self.degree();
        let mut acc = C64::new(0.0, 0.0);
        let mut ap = vec![C64::new(1.0, 0.0)];
        let mut bp = vec![C64::new(1.0, 0.0)];
        for k in 1..=d {
            ap.push(ap[k - 1] * alpha);
            bp.push(bp[k - 1] * beta);
        }
        for (j, &cj) in self.coeffs.iter().enumerate() {
            acc += cj * ap[d - j] * bp[j];
        }
        acc
    }

    /// Evaluation at the unit-norm representative of `p`.
    pub fn eval_unit(&self, p: &ProjPoint) -> C64 {
        let (a, b) = p.unit();
        self.eval(a, b)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Product of two homogeneous polynomials (degrees add).
    pub fn mul(&self, rhs: &HomPoly) -> HomPoly {
        let mut out = vec![C64::new(0.0, 0.0); self.degree() + rhs.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HomPoly::new(out)
    }

    pub fn sub(&self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.degree(), rhs.degree());
        HomPoly::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scaled(&self, s: C64) -> HomPoly {
        HomPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// Roots of a homogeneous polynomial on the projective line, clustered to
/// multiplicity.
#[derive(Debug, Clone, Default)]
pub struct RootSet {
    pub roots: Vec<(ProjPoint, usize)>,
    pub identically_zero: bool,
}

impl RootSet {
    pub fn identically_zero() -> RootSet {
        RootSet {
            roots: Vec::new(),
            identically_zero: true,
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.roots.iter().map(|(p, _)| p)
    }

    pub fn contains_within(&self, p: &ProjPoint, dist: f64) -> bool {
        self.points().any(|q| q.chordal(p) <= dist)
    }
}

/// Greedy clustering of projective points within the chordal radius
/// `tol.root_cluster`; multiplicities of merged points add up.
pub fn cluster_points(points: &[ProjPoint], tol: &Tolerances) -> Vec<(ProjPoint, usize)> {
    let mut clusters: Vec<(ProjPoint, usize)> = Vec::new();
    for p in points {
        if let Some(entry) = clusters
            .iter_mut()
            .find(|(q, _)| q.chordal(p) <= tol.root_cluster)
        {
            entry.1 += 1;
        } else {
            clusters.push((*p, 1));
        }
    }
    clusters
}

/// Roots of a homogeneous quadratic. `reference_scale` is the ambient scale
/// the coefficients were built from; a polynomial whose coefficients all sit
/// below `root_cluster·reference_scale` counts as identically zero.
pub fn quad_roots(p: &HomPoly, reference_scale: f64, tol: &Tolerances) -> RootSet {
    assert_eq!(p.degree(), 2);
    roots_by_degree(p, reference_scale, tol)
}

/// Roots of a homogeneous quartic; same contract as [`quad_roots`].
pub fn quartic_roots(p: &HomPoly, reference_scale: f64, tol: &Tolerances) -> RootSet {
    assert_eq!(p.degree(), 4);
    roots_by_degree(p, reference_scale, tol)
}

/// Root finder for homogeneous polynomials of degree ≤ 4.
///
/// Dehomogenizes on `u = α/β` (so vanishing leading coefficients become
/// roots at `[1:0]`), runs Durand-Kerner on the remaining polynomial,
/// polishes each root with two Newton steps, and clusters.
pub fn roots_by_degree(p: &HomPoly, reference_scale: f64, tol: &Tolerances) -> RootSet {
    let m = p.max_coeff();
    if m <= tol.root_cluster * reference_scale {
        return RootSet::identically_zero();
    }

    // strip leading coefficients: p(1,0) = coeffs[0], so each negligible
    // leading coefficient contributes one root at [1:0]
    let mut coeffs = p.coeffs.clone();
    let mut at_infinity = 0usize;
    while coeffs.len() > 1 && coeffs[0].norm() <= tol.root_cluster * m {
        coeffs.remove(0);
        at_infinity += 1;
    }

    let mut points: Vec<ProjPoint> = Vec::new();
    for _ in 0..at_infinity {
        points.push(ProjPoint::infinity());
    }

    // dehomogenized polynomial in u: coeffs[0]·u^d + ... + coeffs[d]
    let d = coeffs.len() - 1;
    if d > 0 {
        let lead = coeffs[0];
        let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
        let mut roots = durand_kerner(&monic);
        for u in roots.iter_mut() {
            *u = newton_polish(&monic, *u);
        }
        for u in roots {
            points.push(ProjPoint::new(u, C64::new(1.0, 0.0)));
        }
    }

    RootSet {
        roots: cluster_points(&points, tol),
        identically_zero: false,
    }
}

/// Simultaneous root iteration for a monic polynomial given by
/// `coeffs[0]=1, …, coeffs[d]`; standard Durand-Kerner updates.
fn durand_kerner(monic: &[C64]) -> Vec<C64> {
    let d = monic.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-monic[1]];
    }
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in monic {
            acc = acc * z + c;
        }
        acc
    };
    // start iterates on circles inside 1 + max|coeff|, a bound on root size
    let radius = 1.0 + monic.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
            C64::new(angle.cos(), angle.sin()) * radius * (0.5 + 0.1 * k as f64)
        })
        .collect();
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-140 {
                // iterates collapsed onto a multiple root; complex division
                // below this scale underflows norm_sqr into NaN
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Newton polish applied to `u = P/P'`, whose zeros are all simple: this
/// converges at multiple roots too (simultaneous-iteration output stalls
/// well away from them), with the step `P·P' / (P'² − P·P'')`.
fn newton_polish(monic: &[C64], mut z: C64) -> C64 {
    for _ in 0..4 {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        let mut d2p = C64::new(0.0, 0.0);
        for &c in monic {
            d2p = d2p * z + dp;
            dp = dp * z + p;
            p = p * z + c;
        }
        let d2p = d2p * 2.0;
        let den = dp * dp - p * d2p;
        // complex division underflows its norm_sqr below ~1e-150
        if den.norm() < 1e-140 {
            break;
        }
        let step = (p * dp) / den;
        z -= step;
        if step.norm() < 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Common projective roots of a family of homogeneous polynomials.
///
/// Candidates come from the best-scaled member; membership in every other
/// member is tested by evaluation at the unit representative against
/// `root_cluster` times that member's own coefficient scale.
pub fn common_roots(polys: &[HomPoly], reference_scale: f64, tol: &Tolerances) -> RootSet {
    assert!(!polys.is_empty());
    let active: Vec<&HomPoly> = polys
        .iter()
        .filter(|p| p.max_coeff() > tol.root_cluster * reference_scale)
        .collect();
    if active.is_empty() {
        return RootSet::identically_zero();
    }
    let generator = active
        .iter()
        .max_by(|a, b| a.max_coeff().partial_cmp(&b.max_coeff()).unwrap())
        .unwrap();
    let candidates = roots_by_degree(generator, reference_scale, tol);

    let mut kept: Vec<ProjPoint> = Vec::new();
    'cand: for (point, _) in &candidates.roots {
        let refined = refine_common_root(&active, *point, 3);
        for p in &active {
            if p.eval_unit(&refined).norm() > tol.root_cluster * p.max_coeff() {
                continue 'cand;
            }
        }
        kept.push(refined);
    }
    RootSet {
        roots: cluster_points(&kept, tol),
        identically_zero: false,
    }
}

/// Gauss-Newton refinement of a common-root candidate against a stack of
/// homogeneous polynomials. The larger projective component stays pinned;
/// the smaller one is the free complex variable.
pub fn refine_common_root(polys: &[&HomPoly], point: ProjPoint, iters: usize) -> ProjPoint {
    let mut p = point;
    for _ in 0..iters {
        let pin_alpha = p.alpha.norm() >= p.beta.norm();
        let z = if pin_alpha { p.beta } else { p.alpha };
        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0f64;
        let h = 1e-7 * (1.0 + z.norm());
        for poly in polys {
            let value = |v: C64| {
                if pin_alpha {
                    poly.eval(p.alpha, v)
                } else {
                    poly.eval(v, p.beta)
                }
            };
            let r = value(z);
            // complex derivative by central difference (polynomials are
            // holomorphic, one direction suffices)
            let dr = (value(z + C64::new(h, 0.0)) - value(z - C64::new(h, 0.0)))
                / C64::new(2.0 * h, 0.0);
            num += dr.conj() * r;
            den += dr.norm_sqr();
        }
        if den < 1e-300 {
            break;
        }
        let step = num / den;
        let zn = z - step;
        p = if pin_alpha {
            ProjPoint::new(p.alpha, zn)
        } else {
            ProjPoint::new(zn, p.beta)
        };
        if step.norm() < 1e-16 * (1.0 + zn.norm()) {
            break;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn find(set: &RootSet, alpha: f64, beta: f64) -> Option<usize> {
        let target = ProjPoint::new(c(alpha, 0.0), c(beta, 0.0));
        set.roots
            .iter()
            .find(|(p, _)| p.chordal(&target) < 1e-7)
            .map(|(_, m)| *m)
    }

    #[test]
    fn quadratic_examples() {
        // α² − β² -> [1:1], [1:-1]
        let p = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let r = quad_roots(&p, 1.0, &tol());
        assert_eq!(r.total_multiplicity(), 2);
        assert_eq!(find(&r, 1.0, 1.0), Some(1));
        assert_eq!(find(&r, 1.0, -1.0), Some(1));

        // αβ -> [1:0], [0:1]
        let p = HomPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let r = quad_roots(&p, 1.0, &tol());
        assert_eq!(find(&r, 1.0, 0.0), Some(1));
        assert_eq!(find(&r, 0.0, 1.0), Some(1));

        // α² -> [0:1] with multiplicity 2
        let p = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let r = quad_roots(&p, 1.0, &tol());
        assert_eq!(find(&r, 0.0, 1.0), Some(2));
    }

    #[test]
    fn common_root_examples() {
        let a = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]); // α²−β²
        let b = HomPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]); // αβ−β²
        let r = common_roots(&[a, b], 1.0, &tol());
        assert_eq!(r.roots.len(), 1);
        assert_eq!(find(&r, 1.0, 1.0), Some(1));

        let ab = HomPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let r = common_roots(&[ab.clone(), ab], 1.0, &tol());
        assert_eq!(r.roots.len(), 2);

        let a2 = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b2 = HomPoly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = common_roots(&[a2, b2], 1.0, &tol());
        assert!(r.roots.is_empty());
    }

    #[test]
    fn identically_zero_family() {
        let z = HomPoly::new(vec![c(0.0, 0.0); 3]);
        let r = common_roots(&[z.clone(), z], 1.0, &tol());
        assert!(r.identically_zero);
    }

    #[test]
    fn quartic_examples() {
        // (α²−β²)² -> [1:1] and [1:-1], each with multiplicity 2
        let q = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let p = q.mul(&q);
        let r = quartic_roots(&p, 1.0, &tol());
        assert_eq!(find(&r, 1.0, 1.0), Some(2));
        assert_eq!(find(&r, 1.0, -1.0), Some(2));

        // α⁴ -> [0:1] with multiplicity 4
        let p = HomPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let r = quartic_roots(&p, 1.0, &tol());
        assert_eq!(find(&r, 0.0, 1.0), Some(4));

        // α⁴ − β⁴ -> the four fourth roots of unity [1:ω]
        let p = HomPoly::new(vec![
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-1.0, 0.0),
        ]);
        let r = quartic_roots(&p, 1.0, &tol());
        assert_eq!(r.total_multiplicity(), 4);
        for (re, im) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let target = ProjPoint::new(c(1.0, 0.0), c(re, im));
            assert!(
                r.roots.iter().any(|(p, _)| p.chordal(&target) < 1e-7),
                "missing root [1:{re}+{im}i]"
            );
        }
    }

    #[test]
    fn residuals_are_small_at_returned_roots() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let coeffs: Vec<C64> = (0..5)
                .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let p = HomPoly::new(coeffs);
            let r = quartic_roots(&p, 1.0, &tol());
            assert_eq!(r.total_multiplicity(), 4);
            for (point, _) in &r.roots {
                let v = p.eval_unit(point).norm();
                assert!(v <= 1e-7 * p.max_coeff(), "residual {v}");
            }
        }
    }
}
