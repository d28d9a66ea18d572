//! Objects of the category: a torsion part (finite sum of graded cyclic
//! `k[x]`-modules) next to a typed graded lattice, with the structural
//! functors acting on them.

mod injective;
mod presentation;

use std::fmt;

pub use injective::{injective_resolution, InjectiveProfile, InjectiveResolution};
pub use presentation::{from_presentation, Presentation};

use crate::error::{Error, Result};
use crate::lattice::{Generator, GradedLattice};
use crate::scalar::{FieldSpec, Scalar};

/// The graded cyclic torsion module `T(n, a)`: generator in degree `-a`,
/// one-dimensional in degrees `-a ..= -a + n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclic {
    pub n: u32,
    pub a: i64,
}

impl Cyclic {
    pub fn new(n: u32, a: i64) -> Self {
        assert!(n >= 1, "torsion summands have positive length");
        Cyclic { n, a }
    }

    /// Degree of the generator.
    pub fn bottom(&self) -> i64 {
        -self.a
    }

    /// Degree of the socle.
    pub fn top(&self) -> i64 {
        -self.a + self.n as i64 - 1
    }
}

/// A multiset of cyclic torsion summands, kept sorted by `(n, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TorsionPart {
    summands: Vec<Cyclic>,
}

impl TorsionPart {
    pub fn new(mut summands: Vec<Cyclic>) -> Self {
        summands.sort();
        TorsionPart { summands }
    }

    pub fn summands(&self) -> &[Cyclic] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Basis of the degree-`d` part: `(summand, level)` pairs standing for
    /// `x^level · g_summand`.
    pub fn basis_at(&self, d: i64) -> Vec<(usize, u32)> {
        self.summands
            .iter()
            .enumerate()
            .filter(|(_, c)| c.bottom() <= d && d <= c.top())
            .map(|(i, c)| (i, (d - c.bottom()) as u32))
            .collect()
    }

    pub fn dim_at(&self, d: i64) -> usize {
        self.basis_at(d).len()
    }

    /// Total `k`-dimension.
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|c| c.n as usize).sum()
    }

    /// Index of the basis element `x^level g_i` inside `basis_at(d)`.
    pub fn position(&self, d: i64, i: usize, level: u32) -> Option<usize> {
        self.basis_at(d).iter().position(|&(j, l)| j == i && l == level)
    }

    /// Multiplies a degree-`d` element by `x^k`.
    pub fn mul_x_pow(&self, d: i64, coords: &[Scalar], k: u32, field: FieldSpec) -> Vec<Scalar> {
        let src = self.basis_at(d);
        let dst = self.basis_at(d + k as i64);
        let mut out = vec![field.zero(); dst.len()];
        for (c, &(i, l)) in coords.iter().zip(&src) {
            if c.is_zero() {
                continue;
            }
            if let Some(pos) = dst.iter().position(|&(j, m)| j == i && m == l + k) {
                out[pos] = &out[pos] + c;
            }
        }
        out
    }

    pub fn shift(&self, s: i64) -> TorsionPart {
        TorsionPart::new(self.summands.iter().map(|c| Cyclic::new(c.n, c.a + s)).collect())
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.summands.iter().map(Cyclic::bottom).min()?;
        let hi = self.summands.iter().map(Cyclic::top).max()?;
        Some((lo, hi))
    }
}

/// A homogeneous element of an object: torsion coordinates in
/// [`TorsionPart::basis_at`] order and a lattice vector in `S_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: i64,
    pub torsion: Vec<Scalar>,
    pub lattice: Vec<Scalar>,
}

/// An object `T ⊕ F` of the category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CObject {
    field: FieldSpec,
    torsion: TorsionPart,
    lattice: GradedLattice,
}

impl CObject {
    pub fn new(field: FieldSpec, torsion: TorsionPart, lattice: GradedLattice) -> Result<Self> {
        if lattice.field() != field {
            return Err(Error::FieldMismatch(field, lattice.field()));
        }
        Ok(CObject {
            field,
            torsion,
            lattice,
        })
    }

    pub fn zero(field: FieldSpec) -> Self {
        CObject {
            field,
            torsion: TorsionPart::default(),
            lattice: GradedLattice::zero(field),
        }
    }

    pub fn from_lattice(lattice: GradedLattice) -> Self {
        CObject {
            field: lattice.field(),
            torsion: TorsionPart::default(),
            lattice,
        }
    }

    pub fn from_torsion(field: FieldSpec, torsion: TorsionPart) -> Self {
        CObject {
            field,
            torsion,
            lattice: GradedLattice::zero(field),
        }
    }

    /// `F^ty_{0a}`: the rank-one lattice `x^{-a} k[x]` of the given type.
    pub fn rank_one(field: FieldSpec, ty: u8, a: i64) -> Self {
        let (p, q) = if ty == 0 { (1, 0) } else { (0, 1) };
        let l = GradedLattice::canonicalize(field, p, q, &[Generator::new(-a, vec![field.one()])])
            .expect("rank one lattice");
        CObject::from_lattice(l)
    }

    /// `F_{ma}`: generated by `x^{-a}(1,1)` and `x^{m-a}(1,0)`.
    pub fn rank_two(field: FieldSpec, m: u32, a: i64) -> Self {
        assert!(m >= 1, "rank two indecomposables need m >= 1");
        let (o, z) = (field.one(), field.zero());
        let l = GradedLattice::canonicalize(
            field,
            1,
            1,
            &[
                Generator::new(-a, vec![o.clone(), o.clone()]),
                Generator::new(m as i64 - a, vec![o, z]),
            ],
        )
        .expect("rank two lattice");
        CObject::from_lattice(l)
    }

    /// `T(n, a)`.
    pub fn cyclic(field: FieldSpec, n: u32, a: i64) -> Self {
        CObject::from_torsion(field, TorsionPart::new(vec![Cyclic::new(n, a)]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn torsion(&self) -> &TorsionPart {
        &self.torsion
    }
    pub fn lattice(&self) -> &GradedLattice {
        &self.lattice
    }
    pub fn is_zero(&self) -> bool {
        self.torsion.is_zero() && self.lattice.is_zero()
    }
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_zero()
    }
    pub fn is_torsion(&self) -> bool {
        self.lattice.is_zero()
    }

    /// `(dim V0, dim V1)`.
    pub fn ranks(&self) -> (usize, usize) {
        (self.lattice.p(), self.lattice.q())
    }

    pub fn check_field(&self, other: &CObject) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Direct sum; lattice coordinates are laid out by
    /// [`GradedLattice::direct_sum`], torsion summands are merged.
    pub fn direct_sum(field: FieldSpec, parts: &[&CObject]) -> Result<CObject> {
        for p in parts {
            if p.field != field {
                return Err(Error::FieldMismatch(field, p.field));
            }
        }
        let lats: Vec<&GradedLattice> = parts.iter().map(|p| &p.lattice).collect();
        let (lattice, _) = GradedLattice::direct_sum(field, &lats);
        let torsion = TorsionPart::new(parts.iter().flat_map(|p| p.torsion.summands.iter().copied()).collect());
        Ok(CObject {
            field,
            torsion,
            lattice,
        })
    }

    /// The twist `X(s)`.
    pub fn shift(&self, s: i64) -> CObject {
        CObject {
            field: self.field,
            torsion: self.torsion.shift(s),
            lattice: self.lattice.shift(s),
        }
    }

    /// Swaps the roles of `V0` and `V1`.
    pub fn sigma(&self) -> CObject {
        CObject {
            field: self.field,
            torsion: self.torsion.clone(),
            lattice: self.lattice.swap_types(),
        }
    }

    /// The Serre functor `V = σ(-)(-1)`.
    pub fn serre_twist(&self) -> CObject {
        self.sigma().shift(-1)
    }

    /// Inverse of [`CObject::serre_twist`].
    pub fn inverse_serre_twist(&self) -> CObject {
        self.sigma().shift(1)
    }

    /// Smallest and largest degree where the object has structure (torsion
    /// support or lattice jumps).
    pub fn degree_window(&self) -> Option<(i64, i64)> {
        let mut lo = self.lattice.min_jump();
        let mut hi = self.lattice.max_jump();
        if let Some((a, b)) = self.torsion.degree_range() {
            lo = Some(lo.map_or(a, |l| l.min(a)));
            hi = Some(hi.map_or(b, |h| h.max(b)));
        }
        Some((lo?, hi?))
    }

    /// Total dimension of the degree-`d` part.
    pub fn dim_at(&self, d: i64) -> usize {
        self.torsion.dim_at(d) + self.lattice.dim_at(d)
    }

    /// Generator degrees: torsion generators first, then canonical lattice
    /// generators.
    pub fn generator_degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.torsion.summands().iter().map(Cyclic::bottom).collect();
        out.extend(self.lattice.jumps());
        out
    }

    /// Multiplies an element by `x^k`.
    pub fn mul_x_pow(&self, e: &Element, k: u32) -> Element {
        Element {
            degree: e.degree + k as i64,
            torsion: self.torsion.mul_x_pow(e.degree, &e.torsion, k, self.field),
            lattice: e.lattice.clone(),
        }
    }

    pub fn zero_element(&self, d: i64) -> Element {
        Element {
            degree: d,
            torsion: vec![self.field.zero(); self.torsion.dim_at(d)],
            lattice: vec![self.field.zero(); self.lattice.rank()],
        }
    }
}

impl fmt::Display for CObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .torsion
            .summands()
            .iter()
            .map(|c| format!("T[{},{}]", c.n, c.a))
            .collect();
        if !self.lattice.is_zero() {
            parts.push(self.lattice.to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn shift_examples() {
        let k = q();
        assert_eq!(CObject::rank_one(k, 0, 0).shift(3), CObject::rank_one(k, 0, 3));
        assert_eq!(CObject::rank_two(k, 2, 0).shift(-2), CObject::rank_two(k, 2, -2));
        let x = CObject::direct_sum(k, &[&CObject::rank_two(k, 3, 1), &CObject::cyclic(k, 2, 4)]).unwrap();
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(5).shift(-5), x);
        assert_eq!(CObject::cyclic(k, 2, 1).shift(2), CObject::cyclic(k, 2, 3));
    }

    #[test]
    fn sigma_examples() {
        let k = q();
        for a in -2..3 {
            assert_eq!(CObject::rank_one(k, 0, a).sigma(), CObject::rank_one(k, 1, a));
            assert_eq!(CObject::cyclic(k, 3, a).sigma(), CObject::cyclic(k, 3, a));
            for m in 1..4 {
                let f = CObject::rank_two(k, m, a);
                assert_eq!(f.sigma(), f);
                assert_eq!(f.sigma().sigma(), f);
            }
        }
    }

    #[test]
    fn serre_twist_on_indecomposables() {
        let k = q();
        assert_eq!(CObject::rank_two(k, 2, 1).serre_twist(), CObject::rank_two(k, 2, 0));
        assert_eq!(CObject::rank_one(k, 0, 0).serre_twist(), CObject::rank_one(k, 1, -1));
        assert_eq!(CObject::cyclic(k, 3, 2).serre_twist(), CObject::cyclic(k, 3, 1));
        let x = CObject::direct_sum(k, &[&CObject::rank_two(k, 1, 0), &CObject::rank_one(k, 1, 2)]).unwrap();
        assert_eq!(x.serre_twist().inverse_serre_twist(), x);
    }

    #[test]
    fn torsion_basis_and_x_action() {
        let k = q();
        let t = TorsionPart::new(vec![Cyclic::new(3, 0), Cyclic::new(1, -1)]);
        // T(1,-1) sits in degree 1, T(3,0) in degrees 0..2
        assert_eq!(t.summands()[0], Cyclic::new(1, -1));
        assert_eq!(t.dim_at(0), 1);
        assert_eq!(t.dim_at(1), 2);
        assert_eq!(t.dim_at(3), 0);
        let g = vec![k.one()];
        let xg = t.mul_x_pow(0, &g, 1, k);
        assert_eq!(t.basis_at(1)[xg.iter().position(|s| s.is_one()).unwrap()], (1, 1));
        assert!(t.mul_x_pow(0, &g, 3, k).is_empty());
    }
}
