//! The six-way classifier for three-qubit pure states.
//!
//! A nonzero state belongs to:
//!
//! * `000` iff every one-vs-rest coefficient matrix has rank 1;
//! * `0ₖΨ` iff exactly the partition-`k` matrix has rank 1;
//! * otherwise (all ranks 2) to `GHZ` or `W`, split by the spectrum of
//!   `Wⱼ⁻¹Wₖ`, where `W₁`/`W₂` are the qubit-1-bit-0/bit-1 halves of the
//!   first coefficient matrix arranged over `(q₂,q₃)`:
//!   - both blocks rank 1 → GHZ;
//!   - otherwise the spectrum (computed through the adjugate-form
//!     discriminant, so a singular non-pivot block is fine) is degenerate
//!     exactly on the W class.
//!
//! [`hyperdeterminant`] is an independent cross-check: the degree-4
//! invariant of the 2×2×2 amplitude tensor vanishes exactly off the GHZ
//! class. It is evaluated by the explicit 12-term expansion, a different
//! code path from the rank/discriminant route above.

use crate::linalg::{rank2x2, rank2x2_confidence, spectrum_degenerate_detailed, svd_2xn, Mat2};
use crate::state::StateVector;
use crate::{Confidence, Error, Result, Tolerances, C64};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The six tripartite classes, ordered by entanglement degeneracy:
/// `000 < 0ₖΨ < GHZ, W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriClass {
    /// Full product `000`.
    Product,
    /// Qubit `k ∈ {1,2,3}` factors out of an entangled pair.
    ZeroPsi(u8),
    Ghz,
    W,
}

impl TriClass {
    /// Position on the degeneracy scale: products lowest, GHZ/W on top.
    pub fn degeneracy_level(&self) -> u8 {
        match self {
            TriClass::Product => 0,
            TriClass::ZeroPsi(_) => 1,
            TriClass::Ghz | TriClass::W => 2,
        }
    }
}

impl fmt::Display for TriClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriClass::Product => write!(f, "000"),
            TriClass::ZeroPsi(k) => {
                let rest: Vec<u8> = (1..=3).filter(|q| q != k).collect();
                write!(f, "0{}Psi{}{}", k, rest[0], rest[1])
            }
            TriClass::Ghz => write!(f, "GHZ"),
            TriClass::W => write!(f, "W"),
        }
    }
}

/// Everything the tripartite decision tree looked at.
#[derive(Debug, Clone)]
pub struct TriReport {
    pub class: TriClass,
    /// Numerical ranks of the three one-vs-rest coefficient matrices.
    pub ranks: [u8; 3],
    /// Ranks of the two 2×2 blocks of the first coefficient matrix.
    pub w_ranks: [u8; 2],
    /// Outcome of the spectrum-degeneracy test when it was consulted.
    pub disc_degenerate: Option<bool>,
    /// `Boundary` when any decision fell within a factor of ten of its
    /// threshold.
    pub confidence: Confidence,
}

/// The two 2×2 blocks of the qubit-1 coefficient matrix: `W₁` holds the
/// amplitudes with qubit-1 bit 0 arranged over `(q₂,q₃)`, `W₂` the bit-1
/// block.
pub fn w_blocks(s: &StateVector) -> (Mat2, Mat2) {
    let a = s.amps();
    (
        Mat2::new(a[0], a[1], a[2], a[3]),
        Mat2::new(a[4], a[5], a[6], a[7]),
    )
}

/// Classifies a three-qubit pure state into one of the six classes.
pub fn classify3(s: &StateVector, tol: &Tolerances) -> Result<TriReport> {
    if s.n_qubits() != 3 {
        return Err(Error::UnsupportedQubitCount(s.n_qubits()));
    }
    let mut confidence = Confidence::Firm;
    let mut ranks = [0u8; 3];
    for k in 1..=3usize {
        let svd = svd_2xn(&s.reshape(k)?)?;
        ranks[k - 1] = svd.rank(tol) as u8;
        confidence = confidence.merge(svd.rank_confidence(tol));
    }

    let (w1, w2) = w_blocks(s);
    let w_scale = w1.frobenius().max(w2.frobenius());
    let r1 = rank2x2(&w1, w_scale, tol) as u8;
    let r2 = rank2x2(&w2, w_scale, tol) as u8;

    let ones = ranks.iter().filter(|r| **r == 1).count();
    let (class, disc_degenerate) = match ones {
        3 => (TriClass::Product, None),
        2 => {
            // two factored qubits force the third; a tolerance artifact
            confidence = Confidence::Boundary;
            (TriClass::Product, None)
        }
        1 => {
            let k = ranks.iter().position(|r| *r == 1).unwrap() as u8 + 1;
            (TriClass::ZeroPsi(k), None)
        }
        _ => {
            confidence = confidence
                .merge(rank2x2_confidence(&w1, w_scale, tol))
                .merge(rank2x2_confidence(&w2, w_scale, tol));
            // with every partition at rank 2 both blocks are nonzero; a
            // rank-0 reading is a tolerance artifact handled as rank 1
            let (e1, e2) = (r1.max(1), r2.max(1));
            if e1 == 1 && e2 == 1 {
                (TriClass::Ghz, None)
            } else {
                let (pivot, other) = if e1 == 2 { (&w1, &w2) } else { (&w2, &w1) };
                let (degenerate, disc_conf) = spectrum_degenerate_detailed(pivot, other, tol)?;
                confidence = confidence.merge(disc_conf);
                if degenerate {
                    (TriClass::W, Some(true))
                } else {
                    (TriClass::Ghz, Some(false))
                }
            }
        }
    };

    Ok(TriReport {
        class,
        ranks,
        w_ranks: [r1, r2],
        disc_degenerate,
        confidence,
    })
}

/// Modulus of the 2×2×2 hyperdeterminant of the amplitude tensor,
/// evaluated by the explicit 12-term expansion.
///
/// For a normalized state this vanishes exactly off the GHZ class, which
/// makes it an independent oracle for the rank/discriminant route taken by
/// [`classify3`].
pub fn hyperdeterminant(s: &StateVector) -> f64 {
    let a = s.amps();
    // c[i][j][k] with i,j,k the bits of qubits 1,2,3
    let c = |i: usize, j: usize, k: usize| a[(i << 2) | (j << 1) | k];
    let sq = |x: C64| x * x;

    let d = sq(c(0, 0, 0)) * sq(c(1, 1, 1))
        + sq(c(0, 0, 1)) * sq(c(1, 1, 0))
        + sq(c(0, 1, 0)) * sq(c(1, 0, 1))
        + sq(c(1, 0, 0)) * sq(c(0, 1, 1))
        - 2.0
            * (c(0, 0, 0) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 1)
                + c(0, 0, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 1, 1)
                + c(0, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(1, 1, 1)
                + c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 1) * c(1, 1, 0)
                + c(0, 0, 1) * c(1, 0, 0) * c(0, 1, 1) * c(1, 1, 0)
                + c(0, 1, 0) * c(1, 0, 0) * c(0, 1, 1) * c(1, 0, 1))
        + 4.0
            * (c(0, 0, 0) * c(0, 1, 1) * c(1, 0, 1) * c(1, 1, 0)
                + c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0) * c(1, 1, 1));
    d.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mixed_det;
    use crate::orbits;
    use crate::state::Permutation;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn ghz3() -> StateVector {
        StateVector::from_terms(3, &[(0b000, c(1.0, 0.0)), (0b111, c(1.0, 0.0))])
            .unwrap()
            .normalize()
    }

    fn w3() -> StateVector {
        StateVector::from_terms(
            3,
            &[
                (0b001, c(1.0, 0.0)),
                (0b010, c(1.0, 0.0)),
                (0b100, c(1.0, 0.0)),
            ],
        )
        .unwrap()
        .normalize()
    }

    /// Canonical representatives of all six classes.
    fn canonical(class: &TriClass) -> StateVector {
        match class {
            TriClass::Product => {
                StateVector::from_terms(3, &[(0b010, c(1.0, 0.0))]).unwrap()
            }
            TriClass::ZeroPsi(k) => {
                // |0>_k ⊗ (|00>+|11>) on the remaining pair
                let (i1, i2) = match k {
                    1 => (0b000, 0b011),
                    2 => (0b000, 0b101),
                    _ => (0b000, 0b110),
                };
                StateVector::from_terms(3, &[(i1, c(1.0, 0.0)), (i2, c(1.0, 0.0))])
                    .unwrap()
                    .normalize()
            }
            TriClass::Ghz => ghz3(),
            TriClass::W => w3(),
        }
    }

    #[test]
    fn w_block_examples() {
        let (w1, w2) = w_blocks(&ghz3());
        let r = 0.5f64.sqrt();
        assert!((w1.e[0][0] - c(r, 0.0)).norm() < 1e-15);
        assert_eq!(w1.e[1][1], c(0.0, 0.0));
        assert!((w2.e[1][1] - c(r, 0.0)).norm() < 1e-15);

        let (w1, w2) = w_blocks(&w3());
        let r = (1.0f64 / 3.0).sqrt();
        assert!((w1.e[0][1] - c(r, 0.0)).norm() < 1e-15);
        assert!((w1.e[1][0] - c(r, 0.0)).norm() < 1e-15);
        assert!((w2.e[0][0] - c(r, 0.0)).norm() < 1e-15);

        let basis = StateVector::from_terms(3, &[(0, c(1.0, 0.0))]).unwrap();
        let (w1, w2) = w_blocks(&basis);
        assert_eq!(w1.e[0][0], c(1.0, 0.0));
        assert_eq!(w2.max_abs(), 0.0);
    }

    #[test]
    fn classifies_the_six_canonical_states() {
        assert_eq!(classify3(&ghz3(), &tol()).unwrap().class, TriClass::Ghz);
        let w_report = classify3(&w3(), &tol()).unwrap();
        assert_eq!(w_report.class, TriClass::W);
        // theorem case: r(W1)=2, r(W2)=1, degenerate spectrum
        assert_eq!(w_report.w_ranks, [2, 1]);
        assert_eq!(w_report.disc_degenerate, Some(true));

        let zero1 = canonical(&TriClass::ZeroPsi(1));
        let r = classify3(&zero1, &tol()).unwrap();
        assert_eq!(r.class, TriClass::ZeroPsi(1));
        assert_eq!(r.ranks, [1, 2, 2]);

        let prod = canonical(&TriClass::Product);
        assert_eq!(classify3(&prod, &tol()).unwrap().class, TriClass::Product);
    }

    #[test]
    fn hyperdeterminant_frozen_values() {
        assert!((hyperdeterminant(&ghz3()) - 0.25).abs() < 1e-12);
        assert!(hyperdeterminant(&w3()) < 1e-14);
        let prod = canonical(&TriClass::Product);
        assert!(hyperdeterminant(&prod) < 1e-14);
        let zp = canonical(&TriClass::ZeroPsi(2));
        assert!(hyperdeterminant(&zp) < 1e-14);
    }

    #[test]
    fn hyperdeterminant_agrees_with_discriminant_route() {
        // the expansion equals tr(adj(W1)W2)^2 - 4 det(W1) det(W2); the two
        // are computed by different code paths
        for seed in 0..2000 {
            let s = orbits::haar_random_state(3, seed);
            let (w1, w2) = w_blocks(&s);
            let disc = mixed_det(&w1, &w2) * mixed_det(&w1, &w2)
                - c(4.0, 0.0) * w1.det() * w2.det();
            let expansion = hyperdeterminant(&s);
            assert!(
                (disc.norm() - expansion).abs() < 1e-12,
                "seed {seed}: {} vs {expansion}",
                disc.norm()
            );
        }
    }

    #[test]
    fn recorded_ranks_match_brute_force_minors() {
        // independent rank oracle: a 2xN matrix has rank 2 iff some 2x2
        // minor clears the scale, rank 1 otherwise (nonzero states)
        for seed in 0..500 {
            let s = orbits::haar_random_state(3, seed);
            let report = classify3(&s, &tol()).unwrap();
            for k in 1..=3usize {
                let m = s.reshape(k).unwrap();
                let mut max_minor = 0.0f64;
                for p in 0..4 {
                    for q in (p + 1)..4 {
                        let det = m.entry(0, p) * m.entry(1, q) - m.entry(0, q) * m.entry(1, p);
                        max_minor = max_minor.max(det.norm());
                    }
                }
                let scale = m.frobenius();
                let brute = if max_minor > tol().rank_rel * scale * scale {
                    2
                } else {
                    1
                };
                assert_eq!(report.ranks[k - 1], brute, "seed {seed} partition {k}");
            }
        }
    }

    #[test]
    fn slocc_invariance_over_all_classes() {
        let classes = [
            TriClass::Product,
            TriClass::ZeroPsi(1),
            TriClass::ZeroPsi(2),
            TriClass::ZeroPsi(3),
            TriClass::Ghz,
            TriClass::W,
        ];
        let mut trials = 0;
        for class in &classes {
            let base = canonical(class);
            for seed in 0..1700u64 {
                let op = orbits::random_local_op(3, tol().cond_max, seed);
                let moved = op.apply(&base).unwrap();
                let got = classify3(&moved, &tol()).unwrap();
                assert_eq!(got.class, *class, "class {class:?} seed {seed}");
                trials += 1;
            }
        }
        assert!(trials >= 10_000);
    }

    #[test]
    fn permutation_covariance() {
        let classes = [
            TriClass::Product,
            TriClass::ZeroPsi(1),
            TriClass::ZeroPsi(2),
            TriClass::ZeroPsi(3),
            TriClass::Ghz,
            TriClass::W,
        ];
        for class in &classes {
            let base = canonical(class);
            for perm in Permutation::all(3) {
                let moved = base.permute_qubits(&perm).unwrap();
                let got = classify3(&moved, &tol()).unwrap().class;
                let expected = match class {
                    TriClass::ZeroPsi(k) => TriClass::ZeroPsi(perm.apply(*k as usize) as u8),
                    other => *other,
                };
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn oracle_agreement_on_haar_states() {
        let t = tol();
        let mut boundary_band = 0usize;
        for seed in 0..10_000u64 {
            let s = orbits::haar_random_state(3, seed);
            let report = classify3(&s, &t).unwrap();
            let det = hyperdeterminant(&s);
            let in_band = det > 0.1 * t.disc_rel && det < 10.0 * t.disc_rel;
            if in_band {
                boundary_band += 1;
                continue;
            }
            assert_eq!(
                report.class == TriClass::Ghz,
                det > t.disc_rel,
                "seed {seed}, det {det}, class {:?}",
                report.class
            );
        }
        assert!(boundary_band < 50, "band fraction too large: {boundary_band}");
    }

    #[test]
    fn rank_one_other_block_reduces_to_trace_test() {
        // with r(pivot)=2 and r(other)=1 the spectrum is {0, tr(P⁻¹O)}, so
        // degeneracy is equivalent to a vanishing trace of adj(P)·O
        for seed in 0..2000u64 {
            let s = orbits::haar_random_state(3, seed);
            let (w1, w2) = w_blocks(&s);
            let scale = w1.frobenius().max(w2.frobenius());
            let (pivot, other) = if rank2x2(&w1, scale, &tol()) == 2 {
                (w1, w2)
            } else {
                (w2, w1)
            };
            if rank2x2(&pivot, scale, &tol()) != 2 || rank2x2(&other, scale, &tol()) != 1 {
                continue;
            }
            let degenerate =
                crate::linalg::spectrum_degenerate(&pivot, &other, &tol()).unwrap();
            let trace = mixed_det(&pivot, &other).norm();
            let trace_small = trace * trace
                <= tol().disc_rel * (pivot.frobenius() * other.frobenius()).powi(2);
            assert_eq!(degenerate, trace_small);
        }
    }
}
