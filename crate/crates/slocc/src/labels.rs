//! The four-qubit class taxonomy: 18 degenerate and 16 genuine structural
//! classes, the 8 genuine families they collapse to under qubit
//! permutations, display/parse names, and the permutation action on label
//! decorations.
//!
//! Genuine labels are decorated with *pencil-local* indices: the singular
//! subspace of the qubit-1 coefficient matrix lives in the space of qubits
//! 2,3,4, relabeled 1,2,3. A `0₂Ψ` decoration therefore refers to original
//! qubit 3 acting as the factor inside the subspace vectors.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the 18 degenerate four-qubit classes, where at least one qubit or
/// qubit pair factors out. Indices are original qubit positions `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegenerateClass {
    /// `0000`: full product of four single-qubit states.
    AllProduct,
    /// `0ᵢ0ⱼΨₖₗ`: qubits `zeros` factor out, the complementary pair is
    /// entangled.
    TwoZeros { zeros: (u8, u8) },
    /// `0ₖGHZ`: qubit `k` factors out of a tripartite GHZ state.
    ZeroGhz { k: u8 },
    /// `0ₖW`: qubit `k` factors out of a tripartite W state.
    ZeroW { k: u8 },
    /// `ΨᵢⱼΨₖₗ`: two entangled pairs; `first` is the pair containing
    /// qubit 1.
    PairPair { first: (u8, u8) },
}

impl DegenerateClass {
    /// The complementary pair for `TwoZeros`/`PairPair` decorations.
    fn complement(pair: (u8, u8)) -> (u8, u8) {
        let rest: Vec<u8> = (1..=4).filter(|q| *q != pair.0 && *q != pair.1).collect();
        (rest[0], rest[1])
    }

    /// Image of the label under a qubit permutation (`k → π(k)`).
    pub fn permuted(&self, perm: &crate::state::Permutation) -> DegenerateClass {
        let map = |q: u8| perm.apply(q as usize) as u8;
        let sort = |p: (u8, u8)| if p.0 <= p.1 { p } else { (p.1, p.0) };
        match *self {
            DegenerateClass::AllProduct => DegenerateClass::AllProduct,
            DegenerateClass::TwoZeros { zeros } => DegenerateClass::TwoZeros {
                zeros: sort((map(zeros.0), map(zeros.1))),
            },
            DegenerateClass::ZeroGhz { k } => DegenerateClass::ZeroGhz { k: map(k) },
            DegenerateClass::ZeroW { k } => DegenerateClass::ZeroW { k: map(k) },
            DegenerateClass::PairPair { first } => {
                let mapped = sort((map(first.0), map(first.1)));
                let with_one = if mapped.0 == 1 {
                    mapped
                } else {
                    DegenerateClass::complement(mapped)
                };
                DegenerateClass::PairPair { first: with_one }
            }
        }
    }

    pub fn family(&self) -> DegenerateFamily {
        match self {
            DegenerateClass::AllProduct => DegenerateFamily::AllProduct,
            DegenerateClass::TwoZeros { .. } => DegenerateFamily::TwoZeros,
            DegenerateClass::ZeroGhz { .. } => DegenerateFamily::ZeroGhz,
            DegenerateClass::ZeroW { .. } => DegenerateFamily::ZeroW,
            DegenerateClass::PairPair { .. } => DegenerateFamily::PairPair,
        }
    }

    /// All 18 degenerate classes in catalog order.
    pub fn all() -> Vec<DegenerateClass> {
        let mut out = vec![DegenerateClass::AllProduct];
        for i in 1..=3u8 {
            for j in (i + 1)..=4 {
                out.push(DegenerateClass::TwoZeros { zeros: (i, j) });
            }
        }
        for k in 1..=4u8 {
            out.push(DegenerateClass::ZeroGhz { k });
        }
        for k in 1..=4u8 {
            out.push(DegenerateClass::ZeroW { k });
        }
        for partner in 2..=4u8 {
            out.push(DegenerateClass::PairPair { first: (1, partner) });
        }
        out
    }
}

impl fmt::Display for DegenerateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DegenerateClass::AllProduct => write!(f, "0000"),
            DegenerateClass::TwoZeros { zeros } => {
                let pair = DegenerateClass::complement(zeros);
                write!(f, "0{}0{}Psi{}{}", zeros.0, zeros.1, pair.0, pair.1)
            }
            DegenerateClass::ZeroGhz { k } => write!(f, "0{k}GHZ"),
            DegenerateClass::ZeroW { k } => write!(f, "0{k}W"),
            DegenerateClass::PairPair { first } => {
                let second = DegenerateClass::complement(first);
                write!(f, "Psi{}{}Psi{}{}", first.0, first.1, second.0, second.1)
            }
        }
    }
}

/// One of the 16 genuine structural classes, named by the generating pair of
/// tripartite classes of the singular subspace. Decorations `k, i, j` are
/// pencil-local indices in `1..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenuineStructural {
    /// span{000,000}: two product directions — the GHZ family.
    ProductProduct,
    /// span{000,0ₖΨ}: one product direction and one `0ₖΨ` direction.
    ProductZeroPsi { k: u8 },
    /// span{000,GHZ}: a single product direction, generic GHZ.
    ProductGhz,
    /// span{000,W}: a single product direction, generic W — the W family.
    ProductW,
    /// span{0ₖΨ,0ₖΨ}: two `0Ψ` directions with the same factored qubit.
    ZeroPsiSame { k: u8 },
    /// span{0ᵢΨ,0ⱼΨ}: two `0Ψ` directions with distinct factored qubits.
    ZeroPsiDistinct { i: u8, j: u8 },
    /// span{0ₖΨ,GHZ}: one `0Ψ` direction, no product direction.
    ZeroPsiGhz { k: u8 },
    /// span{GHZ,W}: no degenerate direction at all.
    GhzW,
}

impl GenuineStructural {
    pub fn family(&self) -> GenuineFamily {
        match self {
            GenuineStructural::ProductProduct => GenuineFamily::Ghz,
            GenuineStructural::ProductZeroPsi { .. } => GenuineFamily::ProductZeroPsi,
            GenuineStructural::ProductGhz => GenuineFamily::ProductGhz,
            GenuineStructural::ProductW => GenuineFamily::W,
            GenuineStructural::ZeroPsiSame { .. } => GenuineFamily::Phi4,
            GenuineStructural::ZeroPsiDistinct { .. } => GenuineFamily::ZeroPsiDistinct,
            GenuineStructural::ZeroPsiGhz { .. } => GenuineFamily::ZeroPsiGhz,
            GenuineStructural::GhzW => GenuineFamily::GhzW,
        }
    }

    /// Image under a permutation of the *pencil* qubits `1..=3` (induced by
    /// a four-qubit permutation that fixes qubit 1). Permutations that move
    /// qubit 1 can relocate a state to a different structural class and are
    /// not describable as a decoration relabeling.
    pub fn pencil_permuted(&self, rho: &crate::state::Permutation) -> GenuineStructural {
        let map = |q: u8| rho.apply(q as usize) as u8;
        let sort = |a: u8, b: u8| if a <= b { (a, b) } else { (b, a) };
        match *self {
            GenuineStructural::ProductZeroPsi { k } => {
                GenuineStructural::ProductZeroPsi { k: map(k) }
            }
            GenuineStructural::ZeroPsiSame { k } => GenuineStructural::ZeroPsiSame { k: map(k) },
            GenuineStructural::ZeroPsiDistinct { i, j } => {
                let (i, j) = sort(map(i), map(j));
                GenuineStructural::ZeroPsiDistinct { i, j }
            }
            GenuineStructural::ZeroPsiGhz { k } => GenuineStructural::ZeroPsiGhz { k: map(k) },
            other => other,
        }
    }

    /// All 16 genuine structural classes in catalog order.
    pub fn all() -> Vec<GenuineStructural> {
        let mut out = vec![GenuineStructural::ProductProduct];
        for k in 1..=3u8 {
            out.push(GenuineStructural::ProductZeroPsi { k });
        }
        out.push(GenuineStructural::ProductGhz);
        out.push(GenuineStructural::ProductW);
        for k in 1..=3u8 {
            out.push(GenuineStructural::ZeroPsiSame { k });
        }
        for i in 1..=2u8 {
            for j in (i + 1)..=3 {
                out.push(GenuineStructural::ZeroPsiDistinct { i, j });
            }
        }
        for k in 1..=3u8 {
            out.push(GenuineStructural::ZeroPsiGhz { k });
        }
        out.push(GenuineStructural::GhzW);
        out
    }
}

impl fmt::Display for GenuineStructural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenuineStructural::ProductProduct => write!(f, "GHZ"),
            GenuineStructural::ProductZeroPsi { k } => write!(f, "000-0{k}Psi"),
            GenuineStructural::ProductGhz => write!(f, "000-GHZ"),
            GenuineStructural::ProductW => write!(f, "W"),
            GenuineStructural::ZeroPsiSame { k } => write!(f, "0{k}Psi-0{k}Psi"),
            GenuineStructural::ZeroPsiDistinct { i, j } => write!(f, "0{i}Psi-0{j}Psi"),
            GenuineStructural::ZeroPsiGhz { k } => write!(f, "0{k}Psi-GHZ"),
            GenuineStructural::GhzW => write!(f, "GHZ-W"),
        }
    }
}

/// The canonical-variant index for classes whose family row lists two
/// canonical states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subcase {
    I,
    II,
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subcase::I => write!(f, "i"),
            Subcase::II => write!(f, "ii"),
        }
    }
}

/// Any of the 34 structural classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructuralClass {
    Degenerate(DegenerateClass),
    Genuine(GenuineStructural),
}

impl StructuralClass {
    pub fn family(&self) -> Family {
        match self {
            StructuralClass::Degenerate(d) => Family::Degenerate(d.family()),
            StructuralClass::Genuine(g) => Family::Genuine(g.family()),
        }
    }

    pub fn is_genuine(&self) -> bool {
        matches!(self, StructuralClass::Genuine(_))
    }

    /// All 34 structural classes: the 18 degenerate ones first, then the 16
    /// genuine ones.
    pub fn all() -> Vec<StructuralClass> {
        DegenerateClass::all()
            .into_iter()
            .map(StructuralClass::Degenerate)
            .chain(GenuineStructural::all().into_iter().map(StructuralClass::Genuine))
            .collect()
    }
}

impl fmt::Display for StructuralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralClass::Degenerate(d) => d.fmt(f),
            StructuralClass::Genuine(g) => g.fmt(f),
        }
    }
}

impl std::str::FromStr for StructuralClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<StructuralClass> {
        for class in StructuralClass::all() {
            if class.to_string().eq_ignore_ascii_case(s) {
                return Ok(class);
            }
        }
        // aliases
        match s.to_ascii_uppercase().as_str() {
            "PHI4" => Ok(StructuralClass::Genuine(GenuineStructural::ZeroPsiSame {
                k: 1,
            })),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

/// One of the five degenerate families under qubit permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegenerateFamily {
    AllProduct,
    TwoZeros,
    ZeroGhz,
    ZeroW,
    PairPair,
}

impl fmt::Display for DegenerateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateFamily::AllProduct => write!(f, "0000"),
            DegenerateFamily::TwoZeros => write!(f, "00Psi"),
            DegenerateFamily::ZeroGhz => write!(f, "0GHZ"),
            DegenerateFamily::ZeroW => write!(f, "0W"),
            DegenerateFamily::PairPair => write!(f, "PsiPsi"),
        }
    }
}

/// One of the eight genuine families: the rows of the genuine-class table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenuineFamily {
    /// span{000,000}; canonical state `|0000> + |1111>`.
    Ghz,
    /// span{000,0ₖΨ}.
    ProductZeroPsi,
    /// span{000,GHZ}.
    ProductGhz,
    /// span{000,W}; canonical state `|0001>+|0010>+|0100>+|1000>`.
    W,
    /// span{0ₖΨ,0ₖΨ}; canonical state `|0000>+|1100>+λ₁|0011>+λ₂|1111>`.
    Phi4,
    /// span{0ᵢΨ,0ⱼΨ}.
    ZeroPsiDistinct,
    /// span{0ₖΨ,GHZ}.
    ZeroPsiGhz,
    /// span{GHZ,W}.
    GhzW,
}

impl GenuineFamily {
    pub fn all() -> [GenuineFamily; 8] {
        [
            GenuineFamily::Ghz,
            GenuineFamily::ProductZeroPsi,
            GenuineFamily::ProductGhz,
            GenuineFamily::W,
            GenuineFamily::Phi4,
            GenuineFamily::ZeroPsiDistinct,
            GenuineFamily::ZeroPsiGhz,
            GenuineFamily::GhzW,
        ]
    }
}

impl fmt::Display for GenuineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenuineFamily::Ghz => write!(f, "GHZ (W{{000,000}})"),
            GenuineFamily::ProductZeroPsi => write!(f, "W{{000,0kPsi}}"),
            GenuineFamily::ProductGhz => write!(f, "W{{000,GHZ}}"),
            GenuineFamily::W => write!(f, "W (W{{000,W}})"),
            GenuineFamily::Phi4 => write!(f, "Phi4 (W{{0kPsi,0kPsi}})"),
            GenuineFamily::ZeroPsiDistinct => write!(f, "W{{0iPsi,0jPsi}}"),
            GenuineFamily::ZeroPsiGhz => write!(f, "W{{0kPsi,GHZ}}"),
            GenuineFamily::GhzW => write!(f, "W{{GHZ,W}}"),
        }
    }
}

/// Permutation-orbit family of any structural class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Degenerate(DegenerateFamily),
    Genuine(GenuineFamily),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Degenerate(d) => d.fmt(f),
            Family::Genuine(g) => g.fmt(f),
        }
    }
}

/// A catalog entry: a structural class together with its family.
#[derive(Debug, Clone, Copy)]
pub struct ClassEntry {
    pub structural: StructuralClass,
    pub family: Family,
}

/// The full catalog of 34 structural classes (18 degenerate + 16 genuine)
/// and 8 genuine families; every entry's canonical state is available via
/// [`crate::orbits::canonical_state`].
pub fn catalog() -> Vec<ClassEntry> {
    StructuralClass::all()
        .into_iter()
        .map(|structural| ClassEntry {
            structural,
            family: structural.family(),
        })
        .collect()
}
