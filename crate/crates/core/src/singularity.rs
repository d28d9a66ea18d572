//! The rings `R_m = {(f, g) ∈ k[x]² : f ≡ g mod x^m}`, the least `m` for which
//! a lattice object is an `R_m`-module, and `y^n`-linearity of morphisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::hom_ext::Morphism;
use crate::lattice::GradedLattice;
use crate::matrix::Mat;
use crate::objects::CObject;
use crate::scalar::{FieldSpec, Scalar};

/// A polynomial in `k[x]`, coefficients from degree 0 up, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly::new(field, Vec::new())
    }

    /// `c · x^n`.
    pub fn monomial(field: FieldSpec, c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    pub fn x_pow(field: FieldSpec, n: usize) -> Self {
        Poly::monomial(field, field.one(), n)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The single degree carrying nonzero coefficients, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let v = self.valuation()?;
        (self.degree() == Some(v)).then_some(v)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match (i, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "x".into(),
                (1, false) => format!("{c}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// An element `(f, g)` of `R_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmElement {
    m: u32,
    f: Poly,
    g: Poly,
}

impl RmElement {
    pub fn new(m: u32, f: Poly, g: Poly) -> Result<Self> {
        let diff = f.sub(&g);
        if diff.valuation().is_some_and(|v| v < m as usize) {
            return Err(Error::Range(format!("({f}, {g}) is not congruent mod x^{m}")));
        }
        Ok(RmElement { m, f, g })
    }

    /// `u = (x, x)`.
    pub fn u(field: FieldSpec, m: u32) -> Self {
        let x = Poly::x_pow(field, 1);
        RmElement { m, f: x.clone(), g: x }
    }

    /// `v = (x^m, 0)`.
    pub fn v(field: FieldSpec, m: u32) -> Self {
        RmElement {
            m,
            f: Poly::x_pow(field, m as usize),
            g: Poly::zero(field),
        }
    }

    pub fn one(field: FieldSpec, m: u32) -> Self {
        let one = Poly::x_pow(field, 0);
        RmElement { m, f: one.clone(), g: one }
    }

    pub fn index(&self) -> u32 {
        self.m
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    fn same_ring(&self, o: &RmElement) -> Result<()> {
        if self.m != o.m {
            return Err(Error::MixedIndex(self.m, o.m));
        }
        Ok(())
    }

    pub fn add(&self, o: &RmElement) -> Result<RmElement> {
        self.same_ring(o)?;
        Ok(RmElement {
            m: self.m,
            f: self.f.add(&o.f),
            g: self.g.add(&o.g),
        })
    }

    pub fn mul(&self, o: &RmElement) -> Result<RmElement> {
        self.same_ring(o)?;
        Ok(RmElement {
            m: self.m,
            f: self.f.mul(&o.f),
            g: self.g.mul(&o.g),
        })
    }

    pub fn pow(&self, n: u32) -> RmElement {
        let mut acc = RmElement::one(self.f.field, self.m);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Degree when both components are homogeneous of the same degree (the
    /// zero polynomial is homogeneous of every degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match (self.f.is_zero(), self.g.is_zero()) {
            (true, true) => Some(0),
            (true, false) => self.g.homogeneous_degree(),
            (false, true) => self.f.homogeneous_degree(),
            (false, false) => {
                let d = self.f.homogeneous_degree()?;
                (self.g.homogeneous_degree() == Some(d)).then_some(d)
            }
        }
    }
}

impl fmt::Display for RmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// Projection onto the type-0 coordinates, the action of `(1, 0)` after
/// localization.
fn type0_projection(l: &GradedLattice) -> Mat {
    let k = l.field();
    Mat::from_fn(k, l.rank(), l.rank(), |i, j| {
        if i == j && i < l.p() {
            k.one()
        } else {
            k.zero()
        }
    })
}

/// Whether `(x^m, 0)` maps the lattice into itself.
pub fn is_rm_stable(l: &GradedLattice, m: u32) -> bool {
    let p0 = type0_projection(l);
    l.generators()
        .iter()
        .all(|g| l.subspace_at(g.jump + m as i64).contains(&p0.mul_vec(&g.dir)))
}

/// Least `m` such that the object is a graded `R_m`-module.
pub fn singularity_index(x: &CObject) -> Result<u32> {
    if !x.is_torsion_free() {
        return Err(Error::NotTorsionFree);
    }
    let l = x.lattice();
    let spread = match (l.min_jump(), l.max_jump()) {
        (Some(lo), Some(hi)) => (hi - lo) as u32,
        _ => 0,
    };
    Ok((0..=spread)
        .find(|&m| is_rm_stable(l, m))
        .expect("stable once m exceeds the jump spread"))
}

/// Least `n` such that `y^n = (x^n, 0)` acts on source and target and
/// `f(y^n ·) = y^n f(·)` on the lattice generators of the source.
pub fn y_linearity_bound(f: &Morphism) -> Result<u32> {
    let (x, y) = (f.src(), f.dst());
    if !x.is_torsion_free() || !y.is_torsion_free() {
        return Err(Error::NotLatticeMorphism);
    }
    let start = singularity_index(x)?.max(singularity_index(y)?);
    let a = f.lattice();
    let (px, py) = (type0_projection(x.lattice()), type0_projection(y.lattice()));
    // both sides live in the same degree, so the defect does not depend on n
    let linear = x
        .lattice()
        .generators()
        .iter()
        .all(|g| a.mul_vec(&px.mul_vec(&g.dir)) == py.mul_vec(&a.mul_vec(&g.dir)));
    if linear {
        Ok(start)
    } else {
        Err(Error::NotLatticeMorphism)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom_ext::hom_space;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn ring_relations() {
        let k = q();
        for m in 0..=5 {
            let (u, v) = (RmElement::u(k, m), RmElement::v(k, m));
            assert_eq!(u.mul(&v).unwrap().f(), &Poly::x_pow(k, m as usize + 1));
            assert!(u.mul(&v).unwrap().g().is_zero());
            assert_eq!(v.mul(&v).unwrap(), u.pow(m).mul(&v).unwrap());
            assert_eq!(u.pow(3), RmElement::new(m, Poly::x_pow(k, 3), Poly::x_pow(k, 3)).unwrap());
            // the relation u^m v = u^{2m} fails
            assert_ne!(u.pow(m).mul(&v).unwrap(), u.pow(2 * m));
        }
        assert!(matches!(
            RmElement::u(k, 1).add(&RmElement::u(k, 2)),
            Err(Error::MixedIndex(1, 2))
        ));
        assert!(RmElement::new(2, Poly::x_pow(k, 1), Poly::zero(k)).is_err());
        assert!(RmElement::new(1, Poly::x_pow(k, 1), Poly::zero(k)).is_ok());
    }

    #[test]
    fn indices() {
        let k = q();
        assert_eq!(singularity_index(&CObject::rank_one(k, 1, 3)).unwrap(), 0);
        for m in 1..=4 {
            for a in -2..=2 {
                assert_eq!(singularity_index(&CObject::rank_two(k, m, a)).unwrap(), m);
            }
        }
        let s = CObject::direct_sum(k, &[&CObject::rank_two(k, 2, 0), &CObject::rank_one(k, 0, 3)]).unwrap();
        assert_eq!(singularity_index(&s).unwrap(), 2);
        assert!(singularity_index(&CObject::cyclic(k, 1, 0)).is_err());
    }

    #[test]
    fn bounds() {
        let k = q();
        let f = CObject::rank_two(k, 3, 1);
        assert_eq!(y_linearity_bound(&Morphism::identity(&f)).unwrap(), 3);
        let (a, b) = (CObject::rank_one(k, 0, 0), CObject::rank_one(k, 0, 2));
        for h in hom_space(&b, &a).unwrap().basis() {
            assert_eq!(y_linearity_bound(h).unwrap(), 0);
        }
        let (s, t) = (CObject::rank_two(k, 1, 0), CObject::rank_two(k, 1, 1));
        for h in hom_space(&s, &t).unwrap().basis() {
            assert!(y_linearity_bound(h).unwrap() <= 2);
        }
        let tor = CObject::cyclic(k, 1, 0);
        assert!(matches!(
            y_linearity_bound(&Morphism::identity(&tor)),
            Err(Error::NotLatticeMorphism)
        ));
    }
}
