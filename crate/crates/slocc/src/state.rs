//! State vectors, coefficient-matrix reshapes, and qubit permutations.
//!
//! Index convention: the basis label `|q₁q₂…qₙ⟩` maps to the amplitude index
//! `Σ qₖ·2^(n−k)` — qubit 1 is the most significant bit. Reshaping along the
//! partition `k | rest` puts the bit of qubit `k` on the row index and the
//! remaining bits, in ascending qubit order, on the column index. For three
//! qubits this reproduces the layouts
//!
//! ```text
//! C⁽¹⁾ = ( c000 c001 c010 c011 )   C⁽²⁾ = ( c000 c001 c100 c101 )
//!        ( c100 c101 c110 c111 )          ( c010 c011 c110 c111 )
//!
//! C⁽³⁾ = ( c000 c010 c100 c110 )
//!        ( c001 c011 c101 c111 )
//! ```
//!
//! where `c_{q₁q₂q₃}` is the amplitude of `|q₁q₂q₃⟩`.

use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Normalization agreement for unit-norm states.
pub const NORM_EPS: f64 = 1e-12;

/// A pure state of 3 or 4 qubits as a dense amplitude vector.
///
/// Construction rejects non-finite amplitudes and numerically zero vectors,
/// so every `StateVector` has a well-defined direction. Values are immutable
/// after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Builds a state from raw amplitudes (not necessarily normalized).
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if !(3..=4).contains(&n_qubits) {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let expected = 1usize << n_qubits;
        if amps.len() != expected {
            return Err(Error::AmplitudeCount {
                n_qubits,
                expected,
                found: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let state = StateVector { n_qubits, amps };
        if state.norm() == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(state)
    }

    /// Builds a state from `(index, amplitude)` pairs, all others zero.
    pub fn from_terms(n_qubits: usize, terms: &[(usize, C64)]) -> Result<Self> {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        for &(idx, a) in terms {
            amps[idx] += a;
        }
        StateVector::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> C64 {
        self.amps[index]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Returns the unit-norm state with the same direction. Idempotent
    /// within [`NORM_EPS`]; the zero-state case is excluded at construction.
    pub fn normalize(&self) -> StateVector {
        let n = self.norm();
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a / n).collect(),
        }
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> StateVector {
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Reshapes the state along the partition `partition_qubit | rest`.
    pub fn reshape(&self, partition_qubit: usize) -> Result<CoefficientMatrix> {
        if partition_qubit == 0 || partition_qubit > self.n_qubits {
            return Err(Error::BadPartition(partition_qubit, self.n_qubits));
        }
        let cols = 1usize << (self.n_qubits - 1);
        let mut rows = [vec![C64::new(0.0, 0.0); cols], vec![C64::new(0.0, 0.0); cols]];
        for (idx, &a) in self.amps.iter().enumerate() {
            let (r, c) = split_index(idx, self.n_qubits, partition_qubit);
            rows[r][c] = a;
        }
        Ok(CoefficientMatrix {
            partition_qubit,
            n_qubits: self.n_qubits,
            rows,
        })
    }

    /// Reshapes a 4-qubit state along the two-vs-two partition that keeps
    /// qubits `(i, j)` on the row side, as a dense 4×4 matrix.
    pub fn reshape_pair(&self, i: usize, j: usize) -> Result<[[C64; 4]; 4]> {
        if self.n_qubits != 4 {
            return Err(Error::UnsupportedQubitCount(self.n_qubits));
        }
        if i == j || !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(Error::BadPartition(i.max(j), 4));
        }
        let (i, j) = (i.min(j), i.max(j));
        let rest: Vec<usize> = (1..=4).filter(|&q| q != i && q != j).collect();
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (idx, &a) in self.amps.iter().enumerate() {
            let bit = |q: usize| (idx >> (4 - q)) & 1;
            let r = bit(i) * 2 + bit(j);
            let c = bit(rest[0]) * 2 + bit(rest[1]);
            m[r][c] = a;
        }
        Ok(m)
    }

    /// Relabels qubits: the amplitude of `|q₁…qₙ⟩` in the result is the
    /// amplitude of `|q_{π(1)}…q_{π(n)}⟩` in `self`. Under this convention
    /// `permute(π₂, permute(π₁, s)) = permute(π₂∘π₁, s)` exactly, and a
    /// qubit factored out at position `k` reappears at position `π(k)`.
    pub fn permute_qubits(&self, perm: &Permutation) -> Result<StateVector> {
        if perm.len() != self.n_qubits {
            return Err(Error::BadPermutation(self.n_qubits));
        }
        let n = self.n_qubits;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (idx, slot) in amps.iter_mut().enumerate() {
            let mut src = 0usize;
            for pos in 1..=n {
                // destination bit at `pos` reads the source bit at perm(pos)
                let bit = (idx >> (n - perm.apply(pos))) & 1;
                src |= bit << (n - pos);
            }
            *slot = self.amps[src];
        }
        // permutation of positions cannot zero a nonzero vector
        Ok(StateVector {
            n_qubits: n,
            amps,
        })
    }

    /// Parses the JSON state-file format:
    /// `{"n_qubits": 3|4, "amplitudes": [[re, im], ...]}`.
    pub fn from_json(text: &str) -> Result<StateVector> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
        if !(3..=4).contains(&file.n_qubits) {
            return Err(Error::UnsupportedQubitCount(file.n_qubits));
        }
        let expected = 1usize << file.n_qubits;
        if file.amplitudes.len() != expected {
            return Err(Error::AmplitudeCount {
                n_qubits: file.n_qubits,
                expected,
                found: file.amplitudes.len(),
            });
        }
        let amps = file
            .amplitudes
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        StateVector::new(file.n_qubits, amps)
    }

    /// Serializes the state into the JSON state-file format.
    pub fn to_json(&self) -> String {
        let file = StateFile {
            n_qubits: self.n_qubits,
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("state file serialization")
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(
                f,
                "({:.4}{:+.4}i)|{:0width$b}>",
                a.re,
                a.im,
                idx,
                width = self.n_qubits
            )?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Splits an amplitude index into (row, column) for a `k | rest` reshape.
fn split_index(idx: usize, n: usize, partition_qubit: usize) -> (usize, usize) {
    let r = (idx >> (n - partition_qubit)) & 1;
    let mut c = 0usize;
    for q in 1..=n {
        if q == partition_qubit {
            continue;
        }
        c = (c << 1) | ((idx >> (n - q)) & 1);
    }
    (r, c)
}

/// A 2×2ⁿ⁻¹ reshape of a state along a one-vs-rest partition.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    partition_qubit: usize,
    n_qubits: usize,
    rows: [Vec<C64>; 2],
}

impl CoefficientMatrix {
    pub fn partition_qubit(&self) -> usize {
        self.partition_qubit
    }

    pub fn cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.rows[r]
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inverts the reshape, restoring the original amplitude order exactly.
    pub fn to_state(&self) -> StateVector {
        let n = self.n_qubits;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        for (idx, slot) in amps.iter_mut().enumerate() {
            let (r, c) = split_index(idx, n, self.partition_qubit);
            *slot = self.rows[r][c];
        }
        StateVector { n_qubits: n, amps }
    }

    /// Builds a matrix directly from rows (used by the pencil machinery for
    /// linear combinations of reshapes).
    pub fn from_rows(
        partition_qubit: usize,
        n_qubits: usize,
        rows: [Vec<C64>; 2],
    ) -> CoefficientMatrix {
        CoefficientMatrix {
            partition_qubit,
            n_qubits,
            rows,
        }
    }
}

/// A permutation of qubit positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>, // map[i-1] = π(i), 1-based values
}

impl Permutation {
    /// Validates that `map` is a bijection of `1..=map.len()`.
    pub fn new(map: &[usize]) -> Result<Permutation> {
        let n = map.len();
        let mut seen = vec![false; n + 1];
        for &v in map {
            if v == 0 || v > n || seen[v] {
                return Err(Error::BadPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { map: map.to_vec() })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    /// The transposition of positions `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Permutation> {
        let mut map: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::BadPermutation(n));
        }
        map.swap(a - 1, b - 1);
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    /// Functional composition: `(self ∘ other)(i) = self(other(i))`, so that
    /// permuting by `other` and then by `self` equals permuting once by the
    /// composition.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: (1..=self.len()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0usize; self.len()];
        for i in 1..=self.len() {
            map[self.apply(i) - 1] = i;
        }
        Permutation { map }
    }

    /// All `n!` permutations of `1..=n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        permute_rec(&mut current, 0, &mut out);
        out.sort_by(|a, b| a.map.cmp(&b.map));
        out
    }
}

fn permute_rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation { map: v.clone() });
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_rec(v, k + 1, out);
        v.swap(k, i);
    }
}
