//! Small dense complex linear algebra: 2×2 blocks, closed-form SVD of 2×N
//! matrices via the 2×2 Hermitian Gram matrix, and Jacobi eigenvalues for
//! the 4×4 Gram matrices of two-vs-two reshapes.
//!
//! Every rank and degeneracy decision here is relative to a caller-supplied
//! scale; nothing depends on the absolute size of the input.

use crate::state::CoefficientMatrix;
use crate::{Confidence, Error, Result, Tolerances, C64};

/// A dense complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Mat2 {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn zero() -> Mat2 {
        let z = C64::new(0.0, 0.0);
        Mat2::new(z, z, z, z)
    }

    pub fn identity() -> Mat2 {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Mat2::new(o, z, z, o)
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    /// Adjugate: `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.e[1][1], -self.e[0][1], -self.e[1][0], self.e[0][0])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][0] * rhs.e[0][c] + self.e[r][1] * rhs.e[1][c];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] *= s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] += rhs.e[r][c];
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }

    /// Inverse; the caller is responsible for non-singularity.
    pub fn inverse(&self) -> Mat2 {
        self.adjugate().scale(C64::new(1.0, 0.0) / self.det())
    }

    /// Singular values (σ₁ ≥ σ₂) from the closed-form Gram eigenvalues.
    pub fn singular_values(&self) -> (f64, f64) {
        let a = self.e[0][0].norm_sqr() + self.e[0][1].norm_sqr();
        let d = self.e[1][0].norm_sqr() + self.e[1][1].norm_sqr();
        let b = self.e[0][0] * self.e[1][0].conj() + self.e[0][1] * self.e[1][1].conj();
        let t = a + d;
        let delta = ((a - d).powi(2) + 4.0 * b.norm_sqr()).sqrt();
        let l1 = 0.5 * (t + delta);
        let l2 = (0.5 * (t - delta)).max(0.0);
        (l1.sqrt(), l2.sqrt())
    }

    /// Condition number σ₁/σ₂ (infinite for singular matrices).
    pub fn cond(&self) -> f64 {
        let (s1, s2) = self.singular_values();
        if s2 == 0.0 {
            f64::INFINITY
        } else {
            s1 / s2
        }
    }
}

/// `tr(adj(X)·Y)`, the bilinear term of `det(X + Y) = det X + tr(adj(X)Y) + det Y`.
pub fn mixed_det(x: &Mat2, y: &Mat2) -> C64 {
    x.adjugate().mul(y).trace()
}

/// Closed-form SVD of a 2×N matrix, `C = σ₁ v₁w₁† + σ₂ v₂w₂†`.
///
/// The decomposition is computed from the 2×2 Gram matrix `CC†`, whose
/// eigensolution is exact-formula auditable; right vectors follow as
/// `wᵢ = C†vᵢ/σᵢ` and are re-orthonormalized.
#[derive(Debug, Clone)]
pub struct Svd2xN {
    /// Singular values, `sigma[0] >= sigma[1] >= 0`.
    pub sigma: [f64; 2],
    /// Orthonormal left singular vectors (length-2 columns).
    pub left: [[C64; 2]; 2],
    /// First right singular vector (length N, unit norm).
    pub right1: Vec<C64>,
    /// Second right singular vector, present only when σ₂ > 0.
    pub right2: Option<Vec<C64>>,
}

impl Svd2xN {
    /// Numerical rank: the count of singular values above `rank_rel·σ₁`.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        if self.sigma[1] > tol.rank_rel * self.sigma[0] {
            2
        } else {
            1
        }
    }

    /// `Boundary` when the σ₂/σ₁ ratio falls within a factor of ten of the
    /// rank cutoff.
    pub fn rank_confidence(&self, tol: &Tolerances) -> Confidence {
        let ratio = self.sigma[1] / self.sigma[0];
        if ratio > 0.1 * tol.rank_rel && ratio < 10.0 * tol.rank_rel {
            Confidence::Boundary
        } else {
            Confidence::Firm
        }
    }
}

/// Computes the closed-form SVD of a 2×N coefficient matrix.
///
/// The left vectors come from the 2×2 Gram matrix `CC†`. Squared singular
/// values from the Gram eigenvalues alone carry a `√ε·σ₁` noise floor, so
/// each σ is recovered instead as `‖C†vᵢ‖` — the eigenvectors are accurate
/// to machine precision whenever the values are separated, which resolves
/// σ₂ far below the rank cutoff.
pub fn svd_2xn(c: &CoefficientMatrix) -> Result<Svd2xN> {
    let n = c.cols();
    // Gram matrix G = C C† (2x2 Hermitian PSD)
    let mut g00 = 0.0;
    let mut g11 = 0.0;
    let mut g01 = C64::new(0.0, 0.0);
    for j in 0..n {
        g00 += c.entry(0, j).norm_sqr();
        g11 += c.entry(1, j).norm_sqr();
        g01 += c.entry(0, j) * c.entry(1, j).conj();
    }
    let t = g00 + g11;
    if t == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let delta = ((g00 - g11).powi(2) + 4.0 * g01.norm_sqr()).sqrt();
    let l1 = 0.5 * (t + delta);

    // Eigenvector of G for l1; two algebraically equivalent branches, pick
    // the better-conditioned one. Near-degenerate spectra accept any
    // orthonormal pair, so fall back to the standard basis there.
    let v1 = if delta <= 1e-14 * t {
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
    } else {
        let branch_a = [g01, C64::new(l1 - g00, 0.0)];
        let branch_b = [C64::new(l1 - g11, 0.0), g01.conj()];
        let na = branch_a[0].norm_sqr() + branch_a[1].norm_sqr();
        let nb = branch_b[0].norm_sqr() + branch_b[1].norm_sqr();
        let v = if na >= nb { branch_a } else { branch_b };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    };
    // exact orthonormal complement
    let v2 = [-v1[1].conj(), v1[0].conj()];

    let apply_adjoint = |v: &[C64; 2]| -> Vec<C64> {
        (0..n)
            .map(|j| c.entry(0, j).conj() * v[0] + c.entry(1, j).conj() * v[1])
            .collect()
    };

    let mut right1 = apply_adjoint(&v1);
    let mut right2_raw = apply_adjoint(&v2);
    let mut s1 = vec_norm(&right1);
    let mut s2 = vec_norm(&right2_raw);
    let mut left = [v1, v2];
    if s2 > s1 {
        std::mem::swap(&mut right1, &mut right2_raw);
        std::mem::swap(&mut s1, &mut s2);
        left.swap(0, 1);
    }
    let sigma = [s1, s2];

    for x in right1.iter_mut() {
        *x /= s1;
    }

    let right2 = if s2 > f64::MIN_POSITIVE {
        let mut w = right2_raw;
        for x in w.iter_mut() {
            *x /= s2;
        }
        // Gram-Schmidt against right1 keeps orthonormality when σ₂ is tiny.
        let proj: C64 = right1.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        for (x, r) in w.iter_mut().zip(&right1) {
            *x -= proj * r;
        }
        let nw = vec_norm(&w);
        if nw > 1e-300 {
            for x in w.iter_mut() {
                *x /= nw;
            }
            Some(w)
        } else {
            None
        }
    } else {
        None
    };

    Ok(Svd2xN {
        sigma,
        left,
        right1,
        right2,
    })
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Numerical rank of a 2×2 block relative to an ambient `scale`:
/// 2 when `|det| > rank_rel·scale²`, else 1 when any entry clears
/// `rank_rel·scale`, else 0.
pub fn rank2x2(m: &Mat2, scale: f64, tol: &Tolerances) -> usize {
    if m.det().norm() > tol.rank_rel * scale * scale {
        2
    } else if m.max_abs() > tol.rank_rel * scale {
        1
    } else {
        0
    }
}

/// Boundary flag companion to [`rank2x2`].
pub fn rank2x2_confidence(m: &Mat2, scale: f64, tol: &Tolerances) -> Confidence {
    let d = m.det().norm() / (scale * scale);
    let e = m.max_abs() / scale;
    let near = |x: f64| x > 0.1 * tol.rank_rel && x < 10.0 * tol.rank_rel;
    if near(d) || near(e) {
        Confidence::Boundary
    } else {
        Confidence::Firm
    }
}

/// Decides whether the spectrum of `Wa⁻¹·Wb` is degenerate without forming
/// the inverse: the characteristic-polynomial discriminant in adjugate form
/// is `tr(adj(Wa)·Wb)² − 4·det(Wa)·det(Wb)`, valid even when `Wb` is
/// singular. The threshold `disc_rel·s⁴` with `s = max(‖Wa‖, ‖Wb‖)` matches
/// the backward error of blocks cut from one state: perturbations enter at
/// the scale of the larger block, so a threshold tied to the smaller block
/// alone would chase noise.
pub fn spectrum_degenerate(wa: &Mat2, wb: &Mat2, tol: &Tolerances) -> Result<bool> {
    Ok(spectrum_degenerate_detailed(wa, wb, tol)?.0)
}

/// As [`spectrum_degenerate`], also reporting nearness to the threshold.
pub fn spectrum_degenerate_detailed(
    wa: &Mat2,
    wb: &Mat2,
    tol: &Tolerances,
) -> Result<(bool, Confidence)> {
    let na = wa.frobenius();
    if rank2x2(wa, na, tol) != 2 {
        return Err(Error::SingularPivot);
    }
    let nb = wb.frobenius();
    let disc = mixed_det(wa, wb) * mixed_det(wa, wb)
        - C64::new(4.0, 0.0) * wa.det() * wb.det();
    let threshold = tol.disc_rel * na.max(nb).powi(4);
    let magnitude = disc.norm();
    let confidence = if magnitude > 0.1 * threshold && magnitude < 10.0 * threshold {
        Confidence::Boundary
    } else {
        Confidence::Firm
    };
    Ok((magnitude <= threshold, confidence))
}

/// Gram matrix `M·M†` of a 4×4 block.
pub fn gram4(m: &[[C64; 4]; 4]) -> [[C64; 4]; 4] {
    let mut g = [[C64::new(0.0, 0.0); 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..4 {
                s += m[r][k] * m[c][k].conj();
            }
            g[r][c] = s;
        }
    }
    g
}

/// Eigen-decomposition of a 4×4 Hermitian matrix by cyclic Jacobi
/// rotations: `(values, vectors)` with unit eigenvector columns
/// `vectors[·][i]` matching `values[i]`.
pub fn hermitian_eigen4(g: &[[C64; 4]; 4]) -> ([f64; 4], [[C64; 4]; 4]) {
    let mut a = *g;
    let mut v = [[C64::new(0.0, 0.0); 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..30 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.norm() <= 1e-18 * scale {
                    continue;
                }
                // complex Jacobi rotation zeroing a[p][q]
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let phase = apq / apq.norm();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let c = theta.cos();
                let s = phase * theta.sin();
                // A <- J† A J with J acting on rows/cols p,q
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * c + akq * s.conj();
                    a[k][q] = -akp * s + akq * c;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * c + aqk * s;
                    a[q][k] = -apk * s.conj() + aqk * c;
                }
                // accumulate the eigenvector basis
                for k in 0..4 {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp * c + vkq * s.conj();
                    v[k][q] = -vkp * s + vkq * c;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2, 3];
    let diag = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap());
    let vals = order.map(|i| diag[i].max(0.0));
    let mut vecs = [[C64::new(0.0, 0.0); 4]; 4];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..4 {
            vecs[row][col] = v[row][src];
        }
    }
    (vals, vecs)
}

/// Eigenvalues only, in descending order and clamped to be non-negative.
pub fn hermitian_eigenvalues4(g: &[[C64; 4]; 4]) -> [f64; 4] {
    hermitian_eigen4(g).0
}

/// Numerical rank of a 4×4 complex matrix.
///
/// Eigenvectors of the Gram matrix `MM†` give the left singular directions;
/// each singular value is then recovered as `‖M†vᵢ‖`, dodging the `√ε`
/// floor of the Gram eigenvalues themselves.
pub fn rank4x4(m: &[[C64; 4]; 4], tol: &Tolerances) -> (usize, Confidence) {
    let (_, vecs) = hermitian_eigen4(&gram4(m));
    let mut s = [0.0f64; 4];
    for (i, sv) in s.iter_mut().enumerate() {
        let mut total = 0.0;
        for j in 0..4 {
            let mut entry = C64::new(0.0, 0.0);
            for r in 0..4 {
                entry += m[r][j].conj() * vecs[r][i];
            }
            total += entry.norm_sqr();
        }
        *sv = total.sqrt();
    }
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    if s[0] == 0.0 {
        return (0, Confidence::Firm);
    }
    let mut rank = 0;
    let mut confidence = Confidence::Firm;
    for sv in &s {
        let ratio = sv / s[0];
        if ratio > tol.rank_rel {
            rank += 1;
        }
        if ratio > 0.1 * tol.rank_rel && ratio < 10.0 * tol.rank_rel {
            confidence = Confidence::Boundary;
        }
    }
    (rank, confidence)
}
