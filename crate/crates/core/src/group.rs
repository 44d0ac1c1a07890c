//! The dihedral group D_N acting on functions of `z`, and reduced words
//! `scalar · z^p · g` used for the reflection-multiplier operators `M_j = z R_j`.
//!
//! Elements act on functions as `(g f)(z) = f(g·z)` with `R_j·z = q^j / z` and
//! `T_k·z = q^k z`, `q = exp(2πi/N)`. Composition is operator composition, so
//! `R_k R_j = T_{j-k}`, `T_k R_j = R_{j-k}`, `R_j T_k = R_{j+k}`.

use crate::roots::q_pow;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ElementKind {
    Identity,
    Reflection(usize),
    Rotation(usize),
}

/// An element of D_N; indices are kept reduced mod N and `T_0` is stored as the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    order: usize,
    kind: ElementKind,
}

fn reduce(index: i64, n: usize) -> usize {
    index.rem_euclid(n as i64) as usize
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "dihedral order must be at least 1");
        GroupElement { order: n, kind: ElementKind::Identity }
    }

    /// `R_j f(z) = f(q^j / z)`.
    pub fn reflection(n: usize, j: i64) -> Self {
        assert!(n >= 1, "dihedral order must be at least 1");
        GroupElement { order: n, kind: ElementKind::Reflection(reduce(j, n)) }
    }

    /// `T_k f(z) = f(q^k z)`.
    pub fn rotation(n: usize, k: i64) -> Self {
        assert!(n >= 1, "dihedral order must be at least 1");
        match reduce(k, n) {
            0 => Self::identity(n),
            k => GroupElement { order: n, kind: ElementKind::Rotation(k) },
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.kind == ElementKind::Identity
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self.kind, ElementKind::Reflection(_))
    }

    /// Index `j` of `R_j` or `k` of `T_k` (0 for the identity).
    pub fn index(&self) -> usize {
        match self.kind {
            ElementKind::Identity => 0,
            ElementKind::Reflection(j) | ElementKind::Rotation(j) => j,
        }
    }

    /// Operator product `self ∘ other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.order, other.order, "composing elements of different dihedral groups");
        let n = self.order;
        use ElementKind::*;
        match (self.kind, other.kind) {
            (Identity, _) => *other,
            (_, Identity) => *self,
            (Rotation(k), Rotation(j)) => Self::rotation(n, k as i64 + j as i64),
            (Rotation(k), Reflection(j)) => Self::reflection(n, j as i64 - k as i64),
            (Reflection(j), Rotation(k)) => Self::reflection(n, j as i64 + k as i64),
            (Reflection(k), Reflection(j)) => Self::rotation(n, j as i64 - k as i64),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self.kind {
            ElementKind::Rotation(k) => Self::rotation(self.order, -(k as i64)),
            _ => *self,
        }
    }

    /// The point `g·z` at which `(g f)(z)` samples `f`.
    pub fn image(&self, z: Complex64) -> Complex64 {
        match self.kind {
            ElementKind::Identity => z,
            ElementKind::Reflection(j) => q_pow(self.order, j as i64) / z,
            ElementKind::Rotation(k) => q_pow(self.order, k as i64) * z,
        }
    }

    /// All 2N elements: rotations first (identity leading), then reflections.
    pub fn all(n: usize) -> Vec<GroupElement> {
        let mut out: Vec<_> = (0..n as i64).map(|k| Self::rotation(n, k)).collect();
        out.extend((0..n as i64).map(|j| Self::reflection(n, j)));
        out
    }

    /// Closure of the given generators under composition.
    pub fn generated_by(generators: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut seen = BTreeSet::new();
        let Some(first) = generators.first() else {
            return seen;
        };
        let mut queue = VecDeque::from([GroupElement::identity(first.order)]);
        while let Some(g) = queue.pop_front() {
            if !seen.insert(g) {
                continue;
            }
            for h in generators {
                let next = g.compose(h);
                if !seen.contains(&next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ElementKind::Identity => write!(f, "I"),
            ElementKind::Reflection(j) => write!(f, "R{j}"),
            ElementKind::Rotation(k) => write!(f, "T{k}"),
        }
    }
}

/// A reduced word `q^s · z^p · g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DihedralWord {
    q_power: usize,
    z_power: i32,
    element: GroupElement,
}

impl DihedralWord {
    pub fn new(q_power: i64, z_power: i32, element: GroupElement) -> Self {
        DihedralWord { q_power: reduce(q_power, element.order), z_power, element }
    }

    pub fn element(g: GroupElement) -> Self {
        Self::new(0, 0, g)
    }

    /// `M_j = z R_j`.
    pub fn reflection_multiplier(n: usize, j: i64) -> Self {
        Self::new(0, 1, GroupElement::reflection(n, j))
    }

    pub fn group_element(&self) -> GroupElement {
        self.element
    }

    pub fn z_power(&self) -> i32 {
        self.z_power
    }

    pub fn q_power(&self) -> usize {
        self.q_power
    }

    pub fn scalar(&self) -> Complex64 {
        q_pow(self.element.order, self.q_power as i64)
    }

    /// Word for the operator product `self ∘ other`.
    pub fn compose(&self, other: &DihedralWord) -> DihedralWord {
        let g = self.element;
        // g ∘ (z^p ·) = (g·z)^p ∘ g
        let (phase, z_power) = match g.kind {
            ElementKind::Identity => (0, other.z_power),
            ElementKind::Rotation(k) => (k as i64 * other.z_power as i64, other.z_power),
            ElementKind::Reflection(j) => (j as i64 * other.z_power as i64, -other.z_power),
        };
        DihedralWord::new(
            self.q_power as i64 + other.q_power as i64 + phase,
            self.z_power + z_power,
            g.compose(&other.element),
        )
    }
}

impl fmt::Display for DihedralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{} z^{} {}", self.q_power, self.z_power, self.element)
    }
}
