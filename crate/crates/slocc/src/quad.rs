//! Four-qubit classification: a bipartition-rank pre-filter detects the 18
//! degenerate classes, then the pencil structure of the singular subspace
//! decides among the 16 genuine structural classes.
//!
//! Degenerate signatures (ranks of the four one-vs-rest and three
//! two-vs-two partitions):
//!
//! * all four single-qubit ranks 1 → `0000`;
//! * exactly two single-qubit ranks 1 → `0ᵢ0ⱼΨ` on the complementary pair;
//! * exactly one single-qubit rank 1 → factor that qubit out and classify
//!   the tripartite rest (`0ₖGHZ` / `0ₖW`);
//! * all singles rank 2 but one pair partition rank 1 → `ΨᵢⱼΨₖₗ`;
//! * otherwise the state is genuinely four-party entangled.
//!
//! Genuine mapping from the pencil picture `(#product, #0Ψ, generic)`:
//! `(2,0,·)` GHZ family; `(1,1,·)` span{000,0ₖΨ}; `(1,0,GHZ)` span{000,GHZ};
//! `(1,0,W)` the W family; `(0,2,·)` span{0Ψ,0Ψ} same or distinct `k`;
//! `(0,1,·)` span{0ₖΨ,GHZ}; `(0,0,·)` span{GHZ,W}.

use crate::labels::{DegenerateClass, Family, GenuineFamily, GenuineStructural, StructuralClass, Subcase};
use crate::linalg::{rank4x4, svd_2xn};
use crate::pencil::{build_pencil, PencilStructure, RightSubspace, SpecialPoint};
use crate::poly::quad_roots;
use crate::state::StateVector;
use crate::tripartite::{classify3, TriClass};
use crate::{Confidence, Error, Result, Tolerances, C64};

/// Everything the four-qubit classifier decided and saw on the way.
#[derive(Debug, Clone)]
pub struct QuadReport {
    pub label: StructuralClass,
    pub family: Family,
    /// Canonical-variant index where the family row lists two canonical
    /// states and the pencil distinguishes them.
    pub subcase: Option<Subcase>,
    /// Pencil structure; present exactly for genuine labels.
    pub pencil: Option<PencilStructure>,
    /// Ranks of the four one-vs-rest coefficient matrices.
    pub single_ranks: [u8; 4],
    /// Ranks of the three two-vs-two reshapes (pairs 12|34, 13|24, 14|23).
    pub pair_ranks: [u8; 3],
    /// Special-point witness states (3-qubit pencil vectors).
    pub witnesses: Vec<SpecialPoint>,
    pub confidence: Confidence,
}

/// Outcome of the degeneracy pre-filter.
#[derive(Debug, Clone)]
pub enum PrefilterOutcome {
    Degenerate(Box<QuadReport>),
    NotDegenerate {
        single_ranks: [u8; 4],
        pair_ranks: [u8; 3],
        confidence: Confidence,
    },
}

/// Detects the 18 degenerate classes from bipartition rank signatures.
pub fn prefilter_degenerate(s: &StateVector, tol: &Tolerances) -> Result<PrefilterOutcome> {
    if s.n_qubits() != 4 {
        return Err(Error::UnsupportedQubitCount(s.n_qubits()));
    }
    let mut confidence = Confidence::Firm;

    let mut single_ranks = [0u8; 4];
    let mut rest_states: Vec<Option<StateVector>> = vec![None; 4];
    for k in 1..=4usize {
        let svd = svd_2xn(&s.reshape(k)?)?;
        single_ranks[k - 1] = svd.rank(tol) as u8;
        confidence = confidence.merge(svd.rank_confidence(tol));
        if svd.rank(tol) == 1 {
            // rank one: the rest of the system factors as the conjugated
            // dominant right singular vector
            let rest: Vec<C64> = svd.right1.iter().map(|x| x.conj()).collect();
            rest_states[k - 1] = Some(StateVector::new(3, rest)?);
        }
    }

    let mut pair_ranks = [0u8; 3];
    for (slot, partner) in (2..=4usize).enumerate() {
        let m = s.reshape_pair(1, partner)?;
        let (rank, conf) = rank4x4(&m, tol);
        pair_ranks[slot] = rank as u8;
        confidence = confidence.merge(conf);
    }

    let ones: Vec<usize> = (1..=4).filter(|&k| single_ranks[k - 1] == 1).collect();
    let degenerate = match ones.len() {
        4 => Some(DegenerateClass::AllProduct),
        3 => {
            // three factored qubits force the fourth
            confidence = Confidence::Boundary;
            Some(DegenerateClass::AllProduct)
        }
        2 => Some(DegenerateClass::TwoZeros {
            zeros: (ones[0] as u8, ones[1] as u8),
        }),
        1 => {
            let k = ones[0];
            let rest = rest_states[k - 1].clone().expect("rank-1 partition");
            let tri = classify3(&rest, tol)?;
            confidence = confidence.merge(tri.confidence);
            match tri.class {
                TriClass::Ghz => Some(DegenerateClass::ZeroGhz { k: k as u8 }),
                TriClass::W => Some(DegenerateClass::ZeroW { k: k as u8 }),
                TriClass::Product => {
                    confidence = Confidence::Boundary;
                    Some(DegenerateClass::AllProduct)
                }
                TriClass::ZeroPsi(m) => {
                    // a second factored qubit at the working tolerance
                    confidence = Confidence::Boundary;
                    let rest_qubits: Vec<u8> =
                        (1..=4).filter(|&q| q != k as u8).collect();
                    let other = rest_qubits[m as usize - 1];
                    let zeros = if (k as u8) < other {
                        (k as u8, other)
                    } else {
                        (other, k as u8)
                    };
                    Some(DegenerateClass::TwoZeros { zeros })
                }
            }
        }
        _ => {
            let rank1_pairs: Vec<usize> = (0..3).filter(|&i| pair_ranks[i] == 1).collect();
            match rank1_pairs.len() {
                0 => None,
                n => {
                    if n > 1 {
                        confidence = Confidence::Boundary;
                    }
                    Some(DegenerateClass::PairPair {
                        first: (1, rank1_pairs[0] as u8 + 2),
                    })
                }
            }
        }
    };

    Ok(match degenerate {
        Some(d) => PrefilterOutcome::Degenerate(Box::new(QuadReport {
            label: StructuralClass::Degenerate(d),
            family: StructuralClass::Degenerate(d).family(),
            subcase: None,
            pencil: None,
            single_ranks,
            pair_ranks,
            witnesses: Vec::new(),
            confidence,
        })),
        None => PrefilterOutcome::NotDegenerate {
            single_ranks,
            pair_ranks,
            confidence,
        },
    })
}

/// Classifies a four-qubit pure state into one of the 34 structural classes.
pub fn classify4(s: &StateVector, tol: &Tolerances) -> Result<QuadReport> {
    let (single_ranks, pair_ranks, mut confidence) = match prefilter_degenerate(s, tol)? {
        PrefilterOutcome::Degenerate(report) => return Ok(*report),
        PrefilterOutcome::NotDegenerate {
            single_ranks,
            pair_ranks,
            confidence,
        } => (single_ranks, pair_ranks, confidence),
    };

    let pencil = match build_pencil(s, tol)? {
        RightSubspace::TwoDim(p) => p,
        RightSubspace::OneDim(_) => {
            return Err(Error::UnresolvedPencil(
                "rank-one subspace on a state that passed the pre-filter".into(),
            ));
        }
    };
    let structure = pencil.analyze(tol)?;
    if structure.infinite_products {
        return Err(Error::UnresolvedPencil(
            "whole-line rank drop on a state that passed the pre-filter".into(),
        ));
    }
    confidence = confidence.merge(structure.confidence);

    let zero_psi_ks = structure.zero_psi_partitions();
    let genuine = match (structure.product_points.len(), zero_psi_ks.len()) {
        (2, 0) => GenuineStructural::ProductProduct,
        (1, 1) => GenuineStructural::ProductZeroPsi { k: zero_psi_ks[0] },
        (1, 0) => {
            if structure.generic_class == TriClass::Ghz {
                GenuineStructural::ProductGhz
            } else {
                GenuineStructural::ProductW
            }
        }
        (0, 2) => {
            let (a, b) = (zero_psi_ks[0], zero_psi_ks[1]);
            if a == b {
                GenuineStructural::ZeroPsiSame { k: a }
            } else {
                GenuineStructural::ZeroPsiDistinct {
                    i: a.min(b),
                    j: a.max(b),
                }
            }
        }
        (0, 1) => GenuineStructural::ZeroPsiGhz { k: zero_psi_ks[0] },
        (0, 0) => GenuineStructural::GhzW,
        (np, nz) => {
            return Err(Error::UnresolvedPencil(format!(
                "special-point pattern ({np} product, {nz} zero-psi) matches no structure"
            )));
        }
    };

    let subcase = subcase_of(&genuine, &structure);

    // witnesses: the special points, plus confirmed W points for the
    // span{GHZ,W} class whose only distinguished vectors they are
    let mut witnesses: Vec<SpecialPoint> = structure
        .product_points
        .iter()
        .chain(structure.zero_psi_points.iter())
        .cloned()
        .collect();
    if genuine == GenuineStructural::GhzW {
        for (point, _) in &structure.w_points.roots {
            let state = pencil.state_at(point);
            let report = classify3(&state, tol)?;
            if report.class == TriClass::W {
                witnesses.push(SpecialPoint {
                    point: *point,
                    class: TriClass::W,
                    state,
                });
            }
        }
    }

    let label = StructuralClass::Genuine(genuine);
    Ok(QuadReport {
        label,
        family: label.family(),
        subcase,
        pencil: Some(structure),
        single_ranks,
        pair_ranks,
        witnesses,
        confidence,
    })
}

/// Variant index for the families that print two canonical states.
///
/// For span{000,0ₖΨ} and span{0ₖΨ,0ₖΨ} the generic pencil class separates
/// the variants (GHZ ↔ i, W ↔ ii). For span{000,GHZ}, variant i is the
/// W-free pencil: every discriminant root collapses onto the product point
/// (detected with a wide radius, since a multiple root is only located to
/// roughly the fourth root of machine precision). The two span{0ᵢΨ,0ⱼΨ}
/// variants are not separated by the pencil signature and get no index.
fn subcase_of(genuine: &GenuineStructural, structure: &PencilStructure) -> Option<Subcase> {
    match genuine {
        GenuineStructural::ProductZeroPsi { .. } | GenuineStructural::ZeroPsiSame { .. } => {
            if structure.generic_class == TriClass::Ghz {
                Some(Subcase::I)
            } else {
                Some(Subcase::II)
            }
        }
        GenuineStructural::ProductGhz => {
            let merge_radius = 1e-3;
            let all_on_product = structure.w_points.points().all(|wp| {
                structure
                    .product_points
                    .iter()
                    .any(|sp| sp.point.chordal(wp) <= merge_radius)
            });
            Some(if all_on_product { Subcase::I } else { Subcase::II })
        }
        _ => None,
    }
}

/// Canonical free parameters extracted from a genuine classification.
#[derive(Debug, Clone)]
pub struct CanonicalData {
    pub family: GenuineFamily,
    pub subcase: Option<Subcase>,
    pub params: CanonicalParams,
}

/// The per-family parameter record.
#[derive(Debug, Clone)]
pub enum CanonicalParams {
    /// Parameter-free families (GHZ, W) and span{GHZ,W}, whose generator
    /// factors are pure gauge.
    None,
    /// The Φ₄-type λ pair, reported in lexicographic `(|λ|, arg λ)` order.
    /// Meaningful only as an unordered pair modulo a common nonzero scale:
    /// relabeling the two witnesses swaps them, rescaling the shared
    /// product basis multiplies both by the same factor.
    Lambdas { lambda1: C64, lambda2: C64 },
    /// Free factor vectors of the witnesses, keyed by pencil partition:
    /// single-qubit factors and entangled two-qubit blocks.
    Factors {
        singles: Vec<(u8, [C64; 2])>,
        pairs: Vec<(u8, [C64; 4])>,
    },
}

/// Extracts the canonical parameters of a genuine classification from its
/// special-point witnesses.
pub fn extract_canonical(report: &QuadReport, tol: &Tolerances) -> Result<CanonicalData> {
    let genuine = match report.label {
        StructuralClass::Genuine(g) => g,
        StructuralClass::Degenerate(_) => return Err(Error::NotGenuine),
    };
    let family = genuine.family();
    let params = match genuine {
        GenuineStructural::ProductProduct
        | GenuineStructural::ProductW
        | GenuineStructural::GhzW => CanonicalParams::None,
        GenuineStructural::ZeroPsiSame { k } => {
            let witnesses: Vec<&SpecialPoint> = report
                .witnesses
                .iter()
                .filter(|sp| matches!(sp.class, TriClass::ZeroPsi(_)))
                .collect();
            if witnesses.len() != 2 {
                return Err(Error::UnresolvedPencil(
                    "expected two zero-psi witnesses".into(),
                ));
            }
            let (lambda1, lambda2) =
                extract_lambdas(&witnesses[0].state, &witnesses[1].state, k, tol)?;
            CanonicalParams::Lambdas { lambda1, lambda2 }
        }
        GenuineStructural::ProductGhz => factors_params(report, tol)?,
        GenuineStructural::ProductZeroPsi { .. } => factors_params(report, tol)?,
        GenuineStructural::ZeroPsiDistinct { .. } => factors_params(report, tol)?,
        GenuineStructural::ZeroPsiGhz { .. } => factors_params(report, tol)?,
    };
    Ok(CanonicalData {
        family,
        subcase: report.subcase,
        params,
    })
}

fn factors_params(report: &QuadReport, tol: &Tolerances) -> Result<CanonicalParams> {
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    for sp in &report.witnesses {
        match sp.class {
            TriClass::Product => {
                let f = factor_product(&sp.state, tol)?;
                for (q, v) in f.into_iter().enumerate() {
                    singles.push((q as u8 + 1, v));
                }
            }
            TriClass::ZeroPsi(k) => {
                let (single, pair) = factor_zero_psi(&sp.state, k)?;
                singles.push((k, single));
                pairs.push((k, pair));
            }
            _ => {}
        }
    }
    Ok(CanonicalParams::Factors { singles, pairs })
}

/// Splits a `0ₖΨ` three-qubit vector into its single-qubit factor at
/// partition `k` and the entangled pair, both normalized.
pub fn factor_zero_psi(state: &StateVector, k: u8) -> Result<([C64; 2], [C64; 4])> {
    let m = state.reshape(k as usize)?;
    let row_norm = |r: usize| (0..4).map(|j| m.entry(r, j).norm_sqr()).sum::<f64>().sqrt();
    let best = if row_norm(0) >= row_norm(1) { 0 } else { 1 };
    let n = row_norm(best);
    let pair: [C64; 4] = std::array::from_fn(|j| m.entry(best, j) / n);
    let mut single = [C64::new(0.0, 0.0); 2];
    for r in 0..2 {
        // rows are proportional to the pair vector: project them onto it
        single[r] = (0..4).map(|j| pair[j].conj() * m.entry(r, j)).sum();
    }
    let sn = (single[0].norm_sqr() + single[1].norm_sqr()).sqrt();
    Ok(([single[0] / sn, single[1] / sn], pair))
}

/// Splits a product three-qubit vector into three normalized single-qubit
/// factors (each defined up to phase).
pub fn factor_product(state: &StateVector, _tol: &Tolerances) -> Result<[[C64; 2]; 3]> {
    let (f1, rest) = peel_first_qubit(state.amps());
    let (f2, f3_raw) = peel_first_qubit(&rest);
    let n3 = (f3_raw[0].norm_sqr() + f3_raw[1].norm_sqr()).sqrt();
    Ok([f1, f2, [f3_raw[0] / n3, f3_raw[1] / n3]])
}

/// Factors `amps = f ⊗ rest` for a rank-one bipartition of the first qubit,
/// returning the normalized first factor and the rest.
fn peel_first_qubit(amps: &[C64]) -> ([C64; 2], Vec<C64>) {
    let half = amps.len() / 2;
    let (r0, r1) = amps.split_at(half);
    let n0: f64 = r0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let n1: f64 = r1.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let best = if n0 >= n1 { r0 } else { r1 };
    let bn = n0.max(n1);
    let rest: Vec<C64> = best.iter().map(|a| a / bn).collect();
    let f0: C64 = rest.iter().zip(r0).map(|(p, a)| p.conj() * a).sum();
    let f1: C64 = rest.iter().zip(r1).map(|(p, a)| p.conj() * a).sum();
    let fn_ = (f0.norm_sqr() + f1.norm_sqr()).sqrt();
    ([f0 / fn_, f1 / fn_], rest)
}

/// Recovers the Φ₄ parameters from the two `0ₖΨ` witnesses.
///
/// Each witness factors as `φⱼ ⊗ Ψⱼ`; the two-dimensional span of the
/// entangled pair parts is expressed in a shared basis — its two product
/// directions when they are distinct, or the single product direction plus
/// its in-span orthogonal complement when the product direction is double.
/// `λⱼ` is the second-to-first coordinate ratio of `Ψⱼ` in that basis.
pub fn extract_lambdas(
    wa: &StateVector,
    wb: &StateVector,
    k: u8,
    tol: &Tolerances,
) -> Result<(C64, C64)> {
    let (_, psi_a) = factor_zero_psi(wa, k)?;
    let (_, psi_b) = factor_zero_psi(wb, k)?;

    // product directions of span{psi_a, psi_b}: roots of det(α·Ma + β·Mb)
    let det2 = |v: &[C64; 4]| v[0] * v[3] - v[1] * v[2];
    let mix = |u: &[C64; 4], v: &[C64; 4]| u[0] * v[3] + v[0] * u[3] - u[1] * v[2] - v[1] * u[2];
    let pencil_det = crate::poly::HomPoly::new(vec![
        det2(&psi_a),
        mix(&psi_a, &psi_b),
        det2(&psi_b),
    ]);
    let roots = quad_roots(&pencil_det, 1.0, tol);
    if roots.identically_zero || roots.roots.is_empty() {
        return Err(Error::DegenerateParams);
    }

    let combo = |p: &crate::poly::ProjPoint| -> [C64; 4] {
        let (a, b) = p.unit();
        std::array::from_fn(|j| a * psi_a[j] + b * psi_b[j])
    };
    let inner = |u: &[C64; 4], v: &[C64; 4]| -> C64 {
        u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
    };
    let normalize = |v: [C64; 4]| -> [C64; 4] {
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.map(|x| x / n)
    };

    let (basis1, basis2) = if roots.roots.len() == 2 {
        // two distinct product directions
        (
            normalize(combo(&roots.roots[0].0)),
            normalize(combo(&roots.roots[1].0)),
        )
    } else {
        // a double product direction: complete with the in-span orthogonal
        // complement
        let p = normalize(combo(&roots.roots[0].0));
        let candidate = if inner(&p, &psi_a).norm() < 0.999 {
            psi_a
        } else {
            psi_b
        };
        let overlap = inner(&p, &candidate);
        let q: [C64; 4] = std::array::from_fn(|j| candidate[j] - overlap * p[j]);
        (p, normalize(q))
    };

    // coordinates of each pair part in the shared basis via 2×2 normal
    // equations
    let solve = |psi: &[C64; 4]| -> Result<C64> {
        let g11 = inner(&basis1, &basis1);
        let g12 = inner(&basis1, &basis2);
        let g22 = inner(&basis2, &basis2);
        let r1 = inner(&basis1, psi);
        let r2 = inner(&basis2, psi);
        let det = g11 * g22 - g12 * g12.conj();
        if det.norm() < 1e-14 {
            return Err(Error::DegenerateParams);
        }
        let a = (g22 * r1 - g12 * r2) / det;
        let b = (g11 * r2 - g12.conj() * r1) / det;
        if a.norm() < 1e-14 {
            return Err(Error::DegenerateParams);
        }
        Ok(b / a)
    };
    let mut l1 = solve(&psi_a)?;
    let mut l2 = solve(&psi_b)?;
    // lexicographic (|λ|, arg λ) order
    let key = |z: &C64| (z.norm(), z.arg());
    if key(&l2) < key(&l1) {
        std::mem::swap(&mut l1, &mut l2);
    }
    if (l1 - l2).norm() <= tol.root_cluster {
        return Err(Error::DegenerateParams);
    }
    Ok((l1, l2))
}
