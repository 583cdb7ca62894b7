//! Structural analysis of the right singular subspace of a four-qubit
//! state.
//!
//! The qubit-1 coefficient matrix of a genuinely entangled four-qubit state
//! has rank 2; the kets spanned by its rows form a plane in the space of
//! qubits 2,3,4 (relabeled pencil qubits 1,2,3). Along the projective line
//! `v(α,β) = α·w₁ + β·w₂` of that plane, the tripartite class of `v` is
//! constant except at finitely many *special points* where it drops:
//! parameters where `v` becomes a product (`000`) or a `0ₖΨ` vector.
//! The pattern of special points plus the generic class along the line
//! determines the four-qubit class.
//!
//! Product and `0ₖΨ` loci are cut out by the vanishing of the 2×2 minors of
//! the partition matrices `α·Aᵢ + β·Bᵢ` — six homogeneous quadratics per
//! partition. Candidate roots come from those quadratics and every
//! candidate is confirmed by running the tripartite classifier at the
//! point, so the tolerance story stays consistent with the rest of the
//! pipeline.

use crate::linalg::{mixed_det, svd_2xn};
use crate::poly::{common_roots, quartic_roots, refine_common_root, HomPoly, ProjPoint, RootSet};
use crate::state::{CoefficientMatrix, StateVector};
use crate::tripartite::{classify3, w_blocks, TriClass};
use crate::{Confidence, Error, Result, Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for the deterministic generic-sample draw inside [`Pencil::analyze`].
const GENERIC_SAMPLE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// A two-dimensional singular subspace with cached partition matrices.
#[derive(Debug, Clone)]
pub struct Pencil {
    w1: StateVector,
    w2: StateVector,
    a: [CoefficientMatrix; 3],
    b: [CoefficientMatrix; 3],
    confidence: Confidence,
}

/// Result of [`build_pencil`]: the row space of the qubit-1 coefficient
/// matrix is either a line (one right singular vector — a degenerate state)
/// or a plane.
#[derive(Debug, Clone)]
pub enum RightSubspace {
    OneDim(StateVector),
    TwoDim(Pencil),
}

/// Computes the right singular subspace of the qubit-1 partition of a
/// four-qubit state. The returned basis vectors are the row-space kets
/// (complex conjugates of the right singular vectors), orthonormal within
/// 1e-10.
pub fn build_pencil(s: &StateVector, tol: &Tolerances) -> Result<RightSubspace> {
    if s.n_qubits() != 4 {
        return Err(Error::UnsupportedQubitCount(s.n_qubits()));
    }
    let c1 = s.reshape(1)?;
    let svd = svd_2xn(&c1)?;
    let to_state = |v: &[C64]| {
        StateVector::new(3, v.iter().map(|x| x.conj()).collect()).expect("unit singular vector")
    };
    if svd.rank(tol) == 1 {
        return Ok(RightSubspace::OneDim(to_state(&svd.right1)));
    }
    let w1 = to_state(&svd.right1);
    let w2 = to_state(svd.right2.as_ref().expect("rank-2 right vector"));
    let a = [w1.reshape(1)?, w1.reshape(2)?, w1.reshape(3)?];
    let b = [w2.reshape(1)?, w2.reshape(2)?, w2.reshape(3)?];
    Ok(RightSubspace::TwoDim(Pencil {
        w1,
        w2,
        a,
        b,
        confidence: svd.rank_confidence(tol),
    }))
}

/// A confirmed special point of the pencil.
#[derive(Debug, Clone)]
pub struct SpecialPoint {
    pub point: ProjPoint,
    pub class: TriClass,
    pub state: StateVector,
}

/// The full structural picture of a pencil.
#[derive(Debug, Clone)]
pub struct PencilStructure {
    /// Points where `v(α,β)` is a product vector (at most two).
    pub product_points: Vec<SpecialPoint>,
    /// Points where `v(α,β)` is a `0ₖΨ` vector, tagged by partition.
    pub zero_psi_points: Vec<SpecialPoint>,
    /// Class at generic parameters (GHZ or W for genuine inputs).
    pub generic_class: TriClass,
    /// Some partition drops rank along the whole line; the state has a
    /// factorized structure that the degeneracy pre-filter handles.
    pub infinite_products: bool,
    /// Roots of the pencil discriminant; the non-GHZ locus (W points plus
    /// the special points). Informational.
    pub w_points: RootSet,
    /// The discriminant vanishes identically along the pencil.
    pub discriminant_zero: bool,
    pub confidence: Confidence,
}

impl PencilStructure {
    /// Partition indices of the `0ₖΨ` points.
    pub fn zero_psi_partitions(&self) -> Vec<u8> {
        self.zero_psi_points
            .iter()
            .map(|sp| match sp.class {
                TriClass::ZeroPsi(k) => k,
                _ => unreachable!("zero-psi points carry ZeroPsi classes"),
            })
            .collect()
    }
}

impl Pencil {
    pub fn basis(&self) -> (&StateVector, &StateVector) {
        (&self.w1, &self.w2)
    }

    /// The normalized pencil vector at `[α : β]`.
    pub fn state_at(&self, p: &ProjPoint) -> StateVector {
        let (a, b) = p.unit();
        let amps: Vec<C64> = self
            .w1
            .amps()
            .iter()
            .zip(self.w2.amps())
            .map(|(x, y)| a * x + b * y)
            .collect();
        StateVector::new(3, amps)
            .expect("pencil vectors are unit norm")
            .normalize()
    }

    /// The six 2×2 minors of `α·Aₖ + β·Bₖ` as homogeneous quadratics.
    /// Minors that vanish identically (coefficients below the cluster
    /// tolerance at the pencil's unit scale) are detected downstream by the
    /// common-root machinery.
    pub fn minor_polys(&self, partition: usize) -> Result<Vec<HomPoly>> {
        if !(1..=3).contains(&partition) {
            return Err(Error::BadPartition(partition, 3));
        }
        let a = &self.a[partition - 1];
        let b = &self.b[partition - 1];
        let col = |m: &CoefficientMatrix, j: usize| (m.entry(0, j), m.entry(1, j));
        let det2 = |u: (C64, C64), v: (C64, C64)| u.0 * v.1 - u.1 * v.0;
        let mut out = Vec::with_capacity(6);
        for p in 0..4 {
            for q in (p + 1)..4 {
                let (ap, aq) = (col(a, p), col(a, q));
                let (bp, bq) = (col(b, p), col(b, q));
                out.push(HomPoly::new(vec![
                    det2(ap, aq),
                    det2(ap, bq) + det2(bp, aq),
                    det2(bp, bq),
                ]));
            }
        }
        Ok(out)
    }

    /// The pencil discriminant `tr(adj(W₁(α,β))·W₂(α,β))² −
    /// 4·det W₁(α,β)·det W₂(α,β)`, a homogeneous quartic whose zero set is
    /// exactly the non-GHZ locus of the pencil.
    pub fn discriminant(&self) -> HomPoly {
        let (p1, p2) = w_blocks(&self.w1);
        let (q1, q2) = w_blocks(&self.w2);
        let det_w1 = HomPoly::new(vec![p1.det(), mixed_det(&p1, &q1), q1.det()]);
        let det_w2 = HomPoly::new(vec![p2.det(), mixed_det(&p2, &q2), q2.det()]);
        let t = HomPoly::new(vec![
            mixed_det(&p1, &p2),
            mixed_det(&p1, &q2) + mixed_det(&q1, &p2),
            mixed_det(&q1, &q2),
        ]);
        t.mul(&t).sub(&det_w1.mul(&det_w2).scaled(C64::new(4.0, 0.0)))
    }

    /// Locates and types every special point of the pencil and the generic
    /// class along it.
    pub fn analyze(&self, tol: &Tolerances) -> Result<PencilStructure> {
        let mut confidence = self.confidence;
        let minors: Vec<Vec<HomPoly>> = (1..=3)
            .map(|k| self.minor_polys(k))
            .collect::<Result<_>>()?;
        // pencil scale is 1: the basis vectors are orthonormal
        let roots: Vec<RootSet> = minors
            .iter()
            .map(|polys| common_roots(polys, 1.0, tol))
            .collect();

        let discriminant = self.discriminant();
        let discriminant_zero = discriminant.max_coeff() <= tol.disc_rel;
        let w_points = if discriminant_zero {
            RootSet::identically_zero()
        } else {
            quartic_roots(&discriminant, 0.0, tol)
        };

        if roots.iter().any(|r| r.identically_zero) {
            // a whole-partition rank drop: factorized structure
            let sample = self.state_at(&ProjPoint::new(
                C64::new(0.6, 0.1),
                C64::new(0.5, -0.3),
            ));
            let generic = classify3(&sample, tol)?.class;
            return Ok(PencilStructure {
                product_points: Vec::new(),
                zero_psi_points: Vec::new(),
                generic_class: generic,
                infinite_products: true,
                w_points,
                discriminant_zero,
                confidence: Confidence::Boundary,
            });
        }

        // product candidates: roots of the first partition that also kill
        // the other partitions' minors, refined against the full stack
        let all_minors: Vec<&HomPoly> = minors.iter().flatten().collect();
        let mut product_points: Vec<SpecialPoint> = Vec::new();
        'prod: for (cand, _) in &roots[0].roots {
            let refined = refine_common_root(&all_minors, *cand, 4);
            for poly in &all_minors {
                if poly.eval_unit(&refined).norm() > tol.root_cluster * poly.max_coeff().max(1e-30)
                {
                    continue 'prod;
                }
            }
            if product_points
                .iter()
                .any(|sp| sp.point.chordal(&refined) <= tol.root_cluster)
            {
                continue;
            }
            let state = self.state_at(&refined);
            let report = classify3(&state, tol)?;
            confidence = confidence.merge(report.confidence);
            if report.class == TriClass::Product {
                product_points.push(SpecialPoint {
                    point: refined,
                    class: TriClass::Product,
                    state,
                });
            }
        }

        // zero-psi candidates: per-partition common roots that are not
        // product points, confirmed by the classifier
        let mut zero_psi_points: Vec<SpecialPoint> = Vec::new();
        for (k, root_set) in roots.iter().enumerate() {
            let stack: Vec<&HomPoly> = minors[k].iter().collect();
            for (cand, _) in &root_set.roots {
                let refined = refine_common_root(&stack, *cand, 4);
                if product_points
                    .iter()
                    .any(|sp| sp.point.chordal(&refined) <= tol.root_cluster)
                {
                    continue;
                }
                if zero_psi_points
                    .iter()
                    .any(|sp| sp.point.chordal(&refined) <= tol.root_cluster)
                {
                    continue;
                }
                let state = self.state_at(&refined);
                let report = classify3(&state, tol)?;
                confidence = confidence.merge(report.confidence);
                match report.class {
                    TriClass::ZeroPsi(kk) => {
                        if kk as usize != k + 1 {
                            confidence = Confidence::Boundary;
                        }
                        zero_psi_points.push(SpecialPoint {
                            point: refined,
                            class: TriClass::ZeroPsi(kk),
                            state,
                        });
                    }
                    TriClass::Product => {
                        // a product point the three-way intersection missed
                        confidence = Confidence::Boundary;
                        product_points.push(SpecialPoint {
                            point: refined,
                            class: TriClass::Product,
                            state,
                        });
                    }
                    _ => {
                        // shared minor root without an actual rank drop at
                        // the working tolerance; not a special point
                        confidence = Confidence::Boundary;
                    }
                }
            }
        }

        if product_points.len() > 2 || zero_psi_points.len() > 2 {
            return Err(Error::UnresolvedPencil(format!(
                "{} product and {} zero-psi points exceed the structural bounds",
                product_points.len(),
                zero_psi_points.len()
            )));
        }

        sort_points(&mut product_points);
        sort_points(&mut zero_psi_points);

        // generic class: three pseudo-random samples away from every
        // special point and every discriminant root must agree
        let mut avoid: Vec<ProjPoint> = product_points
            .iter()
            .chain(zero_psi_points.iter())
            .map(|sp| sp.point)
            .collect();
        avoid.extend(w_points.points().copied());

        let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SAMPLE_SEED);
        let mut generic: Option<TriClass> = None;
        for _ in 0..3 {
            let point = loop {
                let p = ProjPoint::new(
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                );
                if avoid.iter().all(|q| q.chordal(&p) > 10.0 * tol.root_cluster) {
                    break p;
                }
            };
            let report = classify3(&self.state_at(&point), tol)?;
            confidence = confidence.merge(report.confidence);
            if !matches!(report.class, TriClass::Ghz | TriClass::W) {
                return Err(Error::UnresolvedPencil(format!(
                    "generic sample classified as {}",
                    report.class
                )));
            }
            match generic {
                None => generic = Some(report.class),
                Some(prev) if prev != report.class => {
                    return Err(Error::UnresolvedPencil(
                        "generic samples disagree".into(),
                    ));
                }
                _ => {}
            }
        }
        let generic_class = generic.expect("three samples drawn");

        // the discriminant vanishes identically exactly when the generic
        // pencil vector is W
        if (generic_class == TriClass::W) != discriminant_zero {
            return Err(Error::UnresolvedPencil(
                "discriminant and generic samples disagree".into(),
            ));
        }

        Ok(PencilStructure {
            product_points,
            zero_psi_points,
            generic_class,
            infinite_products: false,
            w_points,
            discriminant_zero,
            confidence,
        })
    }
}

fn sort_points(points: &mut [SpecialPoint]) {
    points.sort_by(|a, b| {
        let ka = (a.point.beta.re, a.point.beta.im, a.point.alpha.re, a.point.alpha.im);
        let kb = (b.point.beta.re, b.point.beta.im, b.point.alpha.re, b.point.alpha.im);
        ka.partial_cmp(&kb).unwrap()
    });
}
