//! Symbolic injective resolutions `0 → X → I0 → I1 → 0`.
//!
//! Injectives are never materialized as objects: they are not finitely
//! generated. A profile lists copies of the two localized injectives and a
//! multiset of divisible torsion modules `k[x,x^-1] / x^c k[x]`, recorded by
//! their cutoff `c` (the divisible module is nonzero exactly in degrees
//! `< c`, and equals `E_{c-1}` in the usual indexing).

use std::fmt;

use serde::Serialize;

use super::CObject;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InjectiveProfile {
    pub e0_copies: usize,
    pub e1_copies: usize,
    pub divisible: Vec<i64>,
}

impl InjectiveProfile {
    pub fn is_zero(&self) -> bool {
        self.e0_copies == 0 && self.e1_copies == 0 && self.divisible.is_empty()
    }

    /// Number of indecomposable injective summands.
    pub fn len(&self) -> usize {
        self.e0_copies + self.e1_copies + self.divisible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for InjectiveProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.e0_copies > 0 {
            parts.push(format!("{}·E^0", self.e0_copies));
        }
        if self.e1_copies > 0 {
            parts.push(format!("{}·E^1", self.e1_copies));
        }
        parts.extend(self.divisible.iter().map(|c| format!("E_{}", c - 1)));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectiveResolution {
    /// How `X` sits inside `I0`.
    pub embed: String,
    pub i0: InjectiveProfile,
    pub i1: InjectiveProfile,
}

/// Resolution built from `F → F_x → F_x/F` on the lattice part and the
/// torsion injective hulls `T(n,a) → D_{n-a} → D_{-a}` on the torsion part.
///
/// Divisible cutoffs are listed torsion summands first (in summand order),
/// then lattice generators (in canonical generator order); Ext computations
/// index into `i1.divisible` with this layout.
pub fn injective_resolution(x: &CObject) -> InjectiveResolution {
    let mut i0 = InjectiveProfile {
        e0_copies: x.lattice().p(),
        e1_copies: x.lattice().q(),
        divisible: Vec::new(),
    };
    let mut i1 = InjectiveProfile::default();
    for c in x.torsion().summands() {
        i0.divisible.push(c.n as i64 - c.a);
        i1.divisible.push(-c.a);
    }
    i1.divisible.extend(x.lattice().jumps());
    let mut embed = Vec::new();
    if !x.torsion().is_zero() {
        embed.push("torsion hull T(n,a) ⊂ k[x,x^-1]/x^(n-a)k[x]".to_string());
    }
    if !x.lattice().is_zero() {
        embed.push("localization F ⊂ F_x".to_string());
    }
    InjectiveResolution {
        embed: embed.join("; "),
        i0,
        i1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldSpec;

    #[test]
    fn rank_two_resolution() {
        let r = injective_resolution(&CObject::rank_two(FieldSpec::Rationals, 1, 0));
        assert_eq!((r.i0.e0_copies, r.i0.e1_copies), (1, 1));
        assert!(r.i0.divisible.is_empty());
        assert_eq!(r.i1.divisible, vec![0, 1]);
        assert_eq!(r.i1.to_string(), "E_-1 + E_0");
    }

    #[test]
    fn torsion_resolution() {
        let r = injective_resolution(&CObject::cyclic(FieldSpec::Rationals, 3, 2));
        // hull has top degree -a + n - 1 = 0
        assert_eq!(r.i0.divisible, vec![1]);
        assert_eq!(r.i1.divisible, vec![-2]);
        assert!(!r.i0.is_zero() && !r.i1.is_zero());
    }

    #[test]
    fn zero_resolution() {
        let r = injective_resolution(&CObject::zero(FieldSpec::Rationals));
        assert!(r.i0.is_zero() && r.i1.is_zero());
    }
}
