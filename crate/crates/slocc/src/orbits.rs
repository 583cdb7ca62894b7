//! Canonical representatives for all 34 classes, random invertible local
//! operations, and seeded random-state generation.
//!
//! Parametric canonical states are built from sampled factor data and then
//! checked against the classifier; samples whose parameters collapse into
//! an earlier structure are rejected and redrawn, so the classifier itself
//! is the authority on parameter validity.

use crate::labels::{DegenerateClass, GenuineStructural, StructuralClass, Subcase};
use crate::linalg::Mat2;
use crate::quad::classify4;
use crate::state::{Permutation, StateVector};
use crate::{Error, Result, Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// An invertible local operation `F¹ ⊗ … ⊗ Fⁿ`.
#[derive(Debug, Clone)]
pub struct LocalOperation {
    factors: Vec<Mat2>,
    cond: f64,
}

impl LocalOperation {
    pub fn new(factors: Vec<Mat2>) -> Result<LocalOperation> {
        let mut cond: f64 = 1.0;
        for f in &factors {
            if f.det().norm() == 0.0 {
                return Err(Error::BadParams("singular local factor".into()));
            }
            cond = cond.max(f.cond());
        }
        Ok(LocalOperation { factors, cond })
    }

    pub fn factors(&self) -> &[Mat2] {
        &self.factors
    }

    /// Largest condition number across the factors.
    pub fn cond(&self) -> f64 {
        self.cond
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Applies the operation qubit by qubit, then normalizes.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if self.arity() != s.n_qubits() {
            return Err(Error::ArityMismatch {
                op: self.arity(),
                state: s.n_qubits(),
            });
        }
        let n = s.n_qubits();
        let mut amps = s.amps().to_vec();
        for (pos, f) in self.factors.iter().enumerate() {
            let bit = 1usize << (n - 1 - pos);
            for idx in 0..amps.len() {
                if idx & bit != 0 {
                    continue;
                }
                let a0 = amps[idx];
                let a1 = amps[idx | bit];
                amps[idx] = f.e[0][0] * a0 + f.e[0][1] * a1;
                amps[idx | bit] = f.e[1][0] * a0 + f.e[1][1] * a1;
            }
        }
        Ok(StateVector::new(n, amps)?.normalize())
    }

    /// The factor-wise inverse operation.
    pub fn inverse(&self) -> LocalOperation {
        LocalOperation {
            factors: self.factors.iter().map(|f| f.inverse()).collect(),
            cond: self.cond,
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

fn random_unitary2(rng: &mut ChaCha8Rng) -> Mat2 {
    let a = gaussian(rng);
    let b = gaussian(rng);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
    Mat2::new(a, -b.conj() * phase, b, a.conj() * phase)
}

/// Samples an invertible local operation on `n` qubits with every factor's
/// condition number at most `cond_max`; deterministic for a fixed seed.
///
/// Factors are complex Gaussian matrices redrawn until they satisfy the
/// bound. `cond_max = 1` asks for scalar multiples of unitaries, which a
/// rejection loop never produces, so unitaries are drawn directly; the same
/// construction backs a synthesized fallback for very tight bounds.
pub fn random_local_op(n: usize, cond_max: f64, seed: u64) -> LocalOperation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::with_capacity(n);
    for _ in 0..n {
        if cond_max <= 1.0 + 1e-12 {
            factors.push(random_unitary2(&mut rng));
            continue;
        }
        let mut accepted = None;
        for _ in 0..10_000 {
            let f = Mat2::new(
                gaussian(&mut rng),
                gaussian(&mut rng),
                gaussian(&mut rng),
                gaussian(&mut rng),
            );
            if f.det().norm() > 0.0 && f.cond() <= cond_max {
                accepted = Some(f);
                break;
            }
        }
        let f = accepted.unwrap_or_else(|| {
            // synthesize within the bound: U · diag(1, 1/κ) · V
            let u = random_unitary2(&mut rng);
            let v = random_unitary2(&mut rng);
            let kappa = 1.0 + (cond_max - 1.0) * rng.gen::<f64>();
            let d = Mat2::new(
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0 / kappa, 0.0),
            );
            u.mul(&d).mul(&v)
        });
        factors.push(f);
    }
    LocalOperation::new(factors).expect("sampled factors are invertible")
}

/// A Haar-like random pure state: i.i.d. complex Gaussian amplitudes,
/// normalized; deterministic per seed.
pub fn haar_random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));
    loop {
        let amps: Vec<C64> = (0..(1usize << n)).map(|_| gaussian(&mut rng)).collect();
        if let Ok(s) = StateVector::new(n, amps) {
            return s.normalize();
        }
    }
}

/// Explicit parameters for a canonical-state constructor. Fields that a
/// given class does not use are ignored; missing fields are sampled.
#[derive(Debug, Clone, Default)]
pub struct CanonParams {
    /// Canonical variant for the families that print two canonical states.
    pub variant: Option<Subcase>,
    /// Φ₄-type λ pair.
    pub lambdas: Option<(C64, C64)>,
    /// Free single-qubit factors, in template order.
    pub singles: Option<Vec<[C64; 2]>>,
    /// Free entangled two-qubit vector.
    pub pair: Option<[C64; 4]>,
}

/// Builds the canonical state of a structural class, normalized.
///
/// Parametric classes draw any unspecified free data from `seed` and reject
/// draws (or explicit parameters) under which the state classifies into a
/// different structure; the check runs at default tolerances.
pub fn canonical_state(
    label: &StructuralClass,
    params: Option<&CanonParams>,
    seed: u64,
) -> Result<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6fb1);
    let default_params = CanonParams::default();
    let params = params.unwrap_or(&default_params);
    let explicit = params.lambdas.is_some() || params.singles.is_some() || params.pair.is_some();

    match label {
        StructuralClass::Degenerate(d) => Ok(degenerate_canonical(d)),
        StructuralClass::Genuine(g) => {
            let attempts = if explicit { 1 } else { 64 };
            for _ in 0..attempts {
                let state = genuine_template(g, params, &mut rng)?;
                let report = classify4(&state, &Tolerances::default())?;
                if report.label == *label {
                    return Ok(state);
                }
                if explicit {
                    return Err(Error::BadParams(format!(
                        "parameters produce class {} instead of {}",
                        report.label, label
                    )));
                }
            }
            Err(Error::BadParams(format!(
                "sampling for {label} did not converge"
            )))
        }
    }
}

fn degenerate_canonical(d: &DegenerateClass) -> StateVector {
    let one = C64::new(1.0, 0.0);
    let terms: Vec<(usize, C64)> = match *d {
        DegenerateClass::AllProduct => vec![(0b0000, one)],
        DegenerateClass::TwoZeros { zeros } => {
            // |0000> plus the complementary pair excited together
            let pair: Vec<u8> = (1..=4).filter(|q| *q != zeros.0 && *q != zeros.1).collect();
            let idx = (1usize << (4 - pair[0] as usize)) | (1usize << (4 - pair[1] as usize));
            vec![(0b0000, one), (idx, one)]
        }
        DegenerateClass::ZeroGhz { k } => {
            // |0000> + |0111> with the zero at position k
            let idx = 0b1111 & !(1usize << (4 - k as usize));
            vec![(0b0000, one), (idx, one)]
        }
        DegenerateClass::ZeroW { k } => {
            // one excitation on each qubit except k
            (1..=4)
                .filter(|q| *q != k as usize)
                .map(|q| (1usize << (4 - q), one))
                .collect()
        }
        DegenerateClass::PairPair { first } => {
            // (|00>+|11>)_first (|00>+|11>)_second
            let second: Vec<u8> = (1..=4)
                .filter(|q| *q != first.0 && *q != first.1)
                .collect();
            let f = (1usize << (4 - first.0 as usize)) | (1usize << (4 - first.1 as usize));
            let s = (1usize << (4 - second[0] as usize)) | (1usize << (4 - second[1] as usize));
            vec![(0, one), (f, one), (s, one), (f | s, one)]
        }
    };
    StateVector::from_terms(4, &terms).unwrap().normalize()
}

/// A single-qubit factor with both components bounded away from zero.
fn sample_factor(rng: &mut ChaCha8Rng) -> [C64; 2] {
    let r = 0.35 + 1.55 * rng.gen::<f64>();
    let z = C64::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU);
    let n = (1.0 + z.norm_sqr()).sqrt();
    [C64::new(1.0, 0.0) / n, z / n]
}

/// An entangled two-qubit vector with a determinant bounded away from zero.
fn sample_entangled_pair(rng: &mut ChaCha8Rng) -> [C64; 4] {
    loop {
        let v: [C64; 4] = std::array::from_fn(|_| gaussian(rng));
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let v = v.map(|x| x / n);
        let det = (v[0] * v[3] - v[1] * v[2]).norm();
        // also keep a visible component outside span{|00>,|11>}
        let off = (v[1].norm_sqr() + v[2].norm_sqr()).sqrt();
        if det > 0.15 && off > 0.2 {
            return v;
        }
    }
}

fn sample_lambdas(rng: &mut ChaCha8Rng) -> (C64, C64) {
    loop {
        let draw = |rng: &mut ChaCha8Rng| {
            C64::from_polar(0.4 + 1.4 * rng.gen::<f64>(), rng.gen::<f64>() * std::f64::consts::TAU)
        };
        let l1 = draw(rng);
        let l2 = draw(rng);
        if (l1 - l2).norm() > 0.15 {
            return (l1, l2);
        }
    }
}

fn take_singles(
    params: &CanonParams,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<[C64; 2]>> {
    match &params.singles {
        Some(list) => {
            if list.len() != count {
                return Err(Error::BadParams(format!(
                    "expected {count} single-qubit factors, got {}",
                    list.len()
                )));
            }
            for f in list {
                if f[0].norm() + f[1].norm() == 0.0 {
                    return Err(Error::BadParams("zero factor vector".into()));
                }
            }
            Ok(list.clone())
        }
        None => Ok((0..count).map(|_| sample_factor(rng)).collect()),
    }
}

/// Kronecker product of four single-qubit vectors, qubit 1 first.
fn product_amps(factors: &[[C64; 2]; 4]) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); 16];
    for (idx, slot) in amps.iter_mut().enumerate() {
        let mut v = C64::new(1.0, 0.0);
        for (pos, f) in factors.iter().enumerate() {
            let bit = (idx >> (3 - pos)) & 1;
            v *= f[bit];
        }
        *slot = v;
    }
    amps
}

fn genuine_template(
    g: &GenuineStructural,
    params: &CanonParams,
    rng: &mut ChaCha8Rng,
) -> Result<StateVector> {
    let one = C64::new(1.0, 0.0);
    let zero1 = [one, C64::new(0.0, 0.0)];
    let variant = params.variant.unwrap_or(Subcase::I);

    let state = match g {
        GenuineStructural::ProductProduct => {
            StateVector::from_terms(4, &[(0b0000, one), (0b1111, one)])?
        }
        GenuineStructural::ProductW => StateVector::from_terms(
            4,
            &[(0b0001, one), (0b0010, one), (0b0100, one), (0b1000, one)],
        )?,
        GenuineStructural::ProductZeroPsi { k } => {
            let (t1, t2): (usize, usize) = match (k, variant) {
                (1, Subcase::I) => (0b1100, 0b1111),
                (1, Subcase::II) => (0b1101, 0b1110),
                (2, Subcase::I) => (0b1010, 0b1111),
                (2, Subcase::II) => (0b1011, 0b1110),
                (3, Subcase::I) => (0b1001, 0b1111),
                (3, Subcase::II) => (0b1011, 0b1101),
                _ => return Err(Error::BadParams(format!("bad pencil index {k}"))),
            };
            StateVector::from_terms(4, &[(0b0000, one), (t1, one), (t2, one)])?
        }
        GenuineStructural::ProductGhz => {
            let singles = take_singles(params, rng, 3)?;
            let factors = [zero1, singles[0], singles[1], singles[2]];
            let mut amps = product_amps(&factors);
            amps[0b1000] += one;
            amps[0b1111] += one;
            StateVector::new(4, amps)?
        }
        GenuineStructural::ZeroPsiSame { k } => {
            let (l1, l2) = match params.lambdas {
                Some((a, b)) => {
                    if (a - b).norm() <= Tolerances::default().root_cluster
                        || a.norm() == 0.0
                        || b.norm() == 0.0
                    {
                        return Err(Error::BadParams(
                            "lambda parameters must be distinct and nonzero".into(),
                        ));
                    }
                    (a, b)
                }
                None => sample_lambdas(rng),
            };
            let base = match variant {
                Subcase::I => StateVector::from_terms(
                    4,
                    &[(0b0000, one), (0b1100, one), (0b0011, l1), (0b1111, l2)],
                )?,
                Subcase::II => StateVector::from_terms(
                    4,
                    &[
                        (0b0000, one),
                        (0b1100, one),
                        (0b0001, l1),
                        (0b0010, l1),
                        (0b1101, l2),
                        (0b1110, l2),
                    ],
                )?,
            };
            relabel_pencil(base, *k)?
        }
        GenuineStructural::ZeroPsiDistinct { i, j } => {
            let singles = take_singles(params, rng, 2)?;
            let (phi, psi) = (singles[0], singles[1]);
            // base (1,2) templates; other index pairs by qubit relabeling
            let mut amps = vec![C64::new(0.0, 0.0); 16];
            match variant {
                Subcase::I => {
                    // |0φ00> + |0φ1ψ> + |1000> + |1101>
                    for b in 0..2 {
                        amps[b << 2] += phi[b];
                        for d in 0..2 {
                            amps[(b << 2) | 0b10 | d] += phi[b] * psi[d];
                        }
                    }
                }
                Subcase::II => {
                    // |0φ0ψ> + |0φ10> + |1000> + |1101>
                    for b in 0..2 {
                        for d in 0..2 {
                            amps[(b << 2) | d] += phi[b] * psi[d];
                        }
                        amps[(b << 2) | 0b10] += phi[b];
                    }
                }
            }
            amps[0b1000] += one;
            amps[0b1101] += one;
            let base = StateVector::new(4, amps)?;
            match (i, j) {
                (1, 2) => base,
                (1, 3) => base.permute_qubits(&Permutation::swap(4, 3, 4)?)?,
                (2, 3) => base.permute_qubits(&Permutation::swap(4, 2, 4)?)?,
                _ => return Err(Error::BadParams(format!("bad pencil pair ({i},{j})"))),
            }
        }
        GenuineStructural::ZeroPsiGhz { k } => {
            let singles = take_singles(params, rng, 1)?;
            let phi = singles[0];
            let pair = match params.pair {
                Some(p) => p,
                None => sample_entangled_pair(rng),
            };
            // |0> φ Ψ + |1000> + |1111>
            let mut amps = vec![C64::new(0.0, 0.0); 16];
            for b in 0..2 {
                for cd in 0..4 {
                    amps[(b << 2) | cd] += phi[b] * pair[cd];
                }
            }
            amps[0b1000] += one;
            amps[0b1111] += one;
            relabel_pencil(StateVector::new(4, amps)?, *k)?
        }
        GenuineStructural::GhzW => {
            let singles = take_singles(params, rng, 6)?;
            let mut amps = vec![C64::new(0.0, 0.0); 16];
            amps[0b0001] += one;
            amps[0b0010] += one;
            amps[0b0100] += one;
            // |1 φϕψ> + |1 φ̄ϕ̄ψ̄>
            for half in 0..2 {
                let f = [singles[3 * half], singles[3 * half + 1], singles[3 * half + 2]];
                for b in 0..2 {
                    for cc in 0..2 {
                        for d in 0..2 {
                            amps[0b1000 | (b << 2) | (cc << 1) | d] +=
                                f[0][b] * f[1][cc] * f[2][d];
                        }
                    }
                }
            }
            StateVector::new(4, amps)?
        }
    };
    Ok(state.normalize())
}

/// Moves a template built with pencil index 1 to pencil index `k` by the
/// qubit transposition that realizes the relabeling.
fn relabel_pencil(base: StateVector, k: u8) -> Result<StateVector> {
    match k {
        1 => Ok(base),
        2 => base.permute_qubits(&Permutation::swap(4, 2, 3)?),
        3 => base.permute_qubits(&Permutation::swap(4, 2, 4)?),
        _ => Err(Error::BadParams(format!("bad pencil index {k}"))),
    }
}
