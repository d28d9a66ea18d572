//! Graded lattices: full-rank graded `k[x]`-submodules of `k^r ⊗ k[x, x^-1]`.
//!
//! A lattice is the same data as an exhaustive increasing filtration
//! `S_e ⊆ k^r` (the degree-`e` part is `x^e · S_e`). Ambient coordinates
//! `0..p` carry type 0 and `p..p+q` carry type 1; the gluing isomorphism is
//! normalized to the identity by this choice of coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Mat, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// The homogeneous element `x^degree · coords`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVector {
    pub degree: i64,
    pub coords: Vec<Scalar>,
}

impl GradedVector {
    pub fn new(degree: i64, coords: Vec<Scalar>) -> Self {
        GradedVector { degree, coords }
    }
}

/// One lattice generator `x^jump · dir`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub jump: i64,
    pub dir: Vec<Scalar>,
}

impl Generator {
    pub fn new(jump: i64, dir: Vec<Scalar>) -> Self {
        Generator { jump, dir }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedLattice {
    field: FieldSpec,
    p: usize,
    q: usize,
    /// Strictly increasing jumps paired with strictly increasing echelonized
    /// subspaces `S_jump`; the last one is all of `k^r`.
    levels: Vec<(i64, Subspace)>,
}

impl GradedLattice {
    pub fn zero(field: FieldSpec) -> Self {
        GradedLattice {
            field,
            p: 0,
            q: 0,
            levels: Vec::new(),
        }
    }

    /// Canonical form of the lattice `Σ_j x^{jump_j} k[x] dir_j`. Redundant
    /// and zero generators are allowed; the directions must span `k^{p+q}`.
    pub fn canonicalize(field: FieldSpec, p: usize, q: usize, gens: &[Generator]) -> Result<Self> {
        let r = p + q;
        if let Some(g) = gens.iter().find(|g| g.dir.len() != r) {
            return Err(Error::DimensionMismatch(format!(
                "generator direction has length {}, ambient rank is {r}",
                g.dir.len()
            )));
        }
        if let Some(s) = gens.iter().flat_map(|g| g.dir.iter()).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        let mut jumps: Vec<i64> = gens.iter().map(|g| g.jump).collect();
        jumps.sort_unstable();
        jumps.dedup();
        let mut levels: Vec<(i64, Subspace)> = Vec::new();
        for &e in &jumps {
            let vs: Vec<Vec<Scalar>> = gens
                .iter()
                .filter(|g| g.jump <= e)
                .map(|g| g.dir.clone())
                .collect();
            let s = Subspace::span(field, r, &vs);
            let prev = levels.last().map_or(0, |(_, s)| s.dim());
            if s.dim() > prev {
                levels.push((e, s));
            }
        }
        let rank = levels.last().map_or(0, |(_, s)| s.dim());
        if rank != r {
            return Err(Error::NotFullRank { rank, ambient: r });
        }
        Ok(GradedLattice { field, p, q, levels })
    }

    /// Lattice with filtration `e ↦ family(e)` sampled at the given degrees;
    /// `family` must be increasing and full at the last degree.
    pub(crate) fn from_filtration(
        field: FieldSpec,
        p: usize,
        q: usize,
        degrees: &[i64],
        mut family: impl FnMut(i64) -> Subspace,
    ) -> Self {
        let mut ds = degrees.to_vec();
        ds.sort_unstable();
        ds.dedup();
        let mut levels: Vec<(i64, Subspace)> = Vec::new();
        for e in ds {
            let s = family(e);
            let prev = levels.last().map_or(0, |(_, s)| s.dim());
            if s.dim() > prev {
                levels.push((e, s));
            }
        }
        let out = GradedLattice { field, p, q, levels };
        debug_assert_eq!(out.levels.last().map_or(0, |(_, s)| s.dim()), p + q);
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn rank(&self) -> usize {
        self.p + self.q
    }
    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Distinct jump degrees, ascending.
    pub fn distinct_jumps(&self) -> Vec<i64> {
        self.levels.iter().map(|(e, _)| *e).collect()
    }

    /// Jump multiset (one entry per generator), ascending.
    pub fn jumps(&self) -> Vec<i64> {
        self.generators().iter().map(|g| g.jump).collect()
    }

    pub fn min_jump(&self) -> Option<i64> {
        self.levels.first().map(|(e, _)| *e)
    }

    pub fn max_jump(&self) -> Option<i64> {
        self.levels.last().map(|(e, _)| *e)
    }

    /// `S_e`, the degree-`e` part divided by `x^e`.
    pub fn subspace_at(&self, e: i64) -> Subspace {
        match self.levels.iter().rev().find(|(j, _)| *j <= e) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.field, self.rank()),
        }
    }

    pub fn dim_at(&self, e: i64) -> usize {
        self.levels
            .iter()
            .rev()
            .find(|(j, _)| *j <= e)
            .map_or(0, |(_, s)| s.dim())
    }

    /// The canonical generators: for each jump, the echelon rows of `S_jump`
    /// whose pivots are new at that jump.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for (e, s) in &self.levels {
            for (i, &pv) in s.pivots().iter().enumerate() {
                if !seen.contains(&pv) {
                    out.push(Generator::new(*e, s.basis().row(i).to_vec()));
                }
            }
            seen = s.pivots().to_vec();
        }
        out
    }

    /// Matrix whose columns are the canonical generator directions.
    pub fn generator_matrix(&self) -> Mat {
        let dirs: Vec<Vec<Scalar>> = self.generators().into_iter().map(|g| g.dir).collect();
        Mat::from_cols(self.field, self.rank(), &dirs)
    }

    /// Type (0 or 1) of an ambient coordinate.
    pub fn coord_type(&self, i: usize) -> u8 {
        u8::from(i >= self.p)
    }

    pub fn contains(&self, v: &GradedVector) -> Result<bool> {
        if v.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in rank {} lattice",
                v.coords.len(),
                self.rank()
            )));
        }
        Ok(self.subspace_at(v.degree).contains(&v.coords))
    }

    fn same_ambient(&self, other: &GradedLattice) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::DimensionMismatch(format!(
                "ambient ({},{}) vs ({},{})",
                self.p, self.q, other.p, other.q
            )));
        }
        Ok(())
    }

    fn all_jumps(&self, other: &GradedLattice) -> Vec<i64> {
        let mut ds = self.distinct_jumps();
        ds.extend(other.distinct_jumps());
        ds
    }

    pub fn sum(&self, other: &GradedLattice) -> Result<GradedLattice> {
        self.same_ambient(other)?;
        let ds = self.all_jumps(other);
        Ok(GradedLattice::from_filtration(self.field, self.p, self.q, &ds, |e| {
            self.subspace_at(e).sum(&other.subspace_at(e))
        }))
    }

    pub fn intersect(&self, other: &GradedLattice) -> Result<GradedLattice> {
        self.same_ambient(other)?;
        let ds = self.all_jumps(other);
        Ok(GradedLattice::from_filtration(self.field, self.p, self.q, &ds, |e| {
            self.subspace_at(e).intersect(&other.subspace_at(e))
        }))
    }

    /// `L ⊆ other`, checked at every jump of `L`.
    pub fn is_sublattice_of(&self, other: &GradedLattice) -> bool {
        self.levels
            .iter()
            .all(|(e, s)| other.subspace_at(*e).contains_space(s))
    }

    /// The twist `L(s)`: jumps move from `e` to `e - s`.
    pub fn shift(&self, s: i64) -> GradedLattice {
        GradedLattice {
            field: self.field,
            p: self.p,
            q: self.q,
            levels: self.levels.iter().map(|(e, sp)| (e - s, sp.clone())).collect(),
        }
    }

    /// Image under an invertible constant matrix `m` (new coordinates
    /// `m * old`), with the given type split of the new coordinates.
    pub fn transform(&self, m: &Mat, p: usize, q: usize) -> GradedLattice {
        assert_eq!(m.cols(), self.rank());
        assert_eq!(m.rows(), p + q);
        GradedLattice::from_filtration(self.field, p, q, &self.distinct_jumps(), |e| {
            self.subspace_at(e).image(m)
        })
    }

    /// Exchanges the two coordinate types: the new coordinate order is
    /// (old type-1 block, old type-0 block).
    pub fn swap_types(&self) -> GradedLattice {
        let perm = swap_permutation(self.field, self.p, self.q);
        self.transform(&perm, self.q, self.p)
    }

    /// The sublattice `L ∩ W` where `W` is spanned by the columns of `basis`
    /// (full column rank), written in those column coordinates.
    pub fn restrict(&self, basis: &Mat, p: usize, q: usize) -> GradedLattice {
        assert_eq!(basis.cols(), p + q);
        let k = self.field;
        let w = Subspace::span(k, self.rank(), &basis.transpose().row_vecs());
        GradedLattice::from_filtration(k, p, q, &self.distinct_jumps(), |e| {
            let inter = self.subspace_at(e).intersect(&w);
            let coords: Vec<Vec<Scalar>> = inter
                .vectors()
                .iter()
                .map(|v| basis.solve(v).expect("vector lies in the column span"))
                .collect();
            Subspace::span(k, p + q, &coords)
        })
    }

    /// Direct sum with coordinates ordered (type-0 blocks of all summands,
    /// then type-1 blocks). Returns the lattice and, for each summand, the
    /// positions of its coordinates inside the sum.
    pub fn direct_sum(field: FieldSpec, parts: &[&GradedLattice]) -> (GradedLattice, Vec<Vec<usize>>) {
        let p: usize = parts.iter().map(|l| l.p).sum();
        let q: usize = parts.iter().map(|l| l.q).sum();
        let mut maps = Vec::new();
        let (mut o0, mut o1) = (0, p);
        for l in parts {
            let mut m: Vec<usize> = (o0..o0 + l.p).collect();
            m.extend(o1..o1 + l.q);
            o0 += l.p;
            o1 += l.q;
            maps.push(m);
        }
        let mut gens = Vec::new();
        for (l, m) in parts.iter().zip(&maps) {
            for g in l.generators() {
                let mut dir = vec![field.zero(); p + q];
                for (i, s) in g.dir.into_iter().enumerate() {
                    dir[m[i]] = s;
                }
                gens.push(Generator::new(g.jump, dir));
            }
        }
        let out = GradedLattice::canonicalize(field, p, q, &gens).expect("sum of lattices has full rank");
        (out, maps)
    }
}

/// Permutation matrix sending (type0 | type1) coordinates to (type1 | type0).
pub fn swap_permutation(field: FieldSpec, p: usize, q: usize) -> Mat {
    Mat::from_fn(field, p + q, p + q, |i, j| {
        // new index i holds old coordinate: i < q -> p + i, else i - q
        let old = if i < q { p + i } else { i - q };
        if old == j {
            field.one()
        } else {
            field.zero()
        }
    })
}

impl fmt::Display for GradedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice(p={}, q={}; ", self.p, self.q)?;
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                let d: Vec<String> = g.dir.iter().map(|s| s.to_string()).collect();
                format!("x^{}({})", g.jump, d.join(","))
            })
            .collect();
        write!(f, "{})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    /// Canonical rank-two lattice generated by x^{-a}(1,1) and x^{m-a}(1,0).
    fn rank_two(m: i64, a: i64) -> GradedLattice {
        GradedLattice::canonicalize(
            q(),
            1,
            1,
            &[Generator::new(-a, v(&[1, 1])), Generator::new(m - a, v(&[1, 0]))],
        )
        .unwrap()
    }

    #[test]
    fn canonical_rank_two() {
        let l = rank_two(2, 0);
        assert_eq!(l.jumps(), vec![0, 2]);
        assert_eq!(l.distinct_jumps(), vec![0, 2]);
        let gens = l.generators();
        assert_eq!(gens[0].dir, v(&[1, 1]));
        // presenting the same lattice through other generators gives the same form
        let alt = GradedLattice::canonicalize(
            q(),
            1,
            1,
            &[Generator::new(0, v(&[2, 2])), Generator::new(2, v(&[0, 1])), Generator::new(3, v(&[5, 0]))],
        )
        .unwrap();
        assert_eq!(l, alt);
    }

    #[test]
    fn rank_one_and_errors() {
        let l = GradedLattice::canonicalize(q(), 1, 0, &[Generator::new(0, v(&[1]))]).unwrap();
        assert_eq!(l.jumps(), vec![0]);
        assert!(matches!(
            GradedLattice::canonicalize(q(), 1, 1, &[Generator::new(0, v(&[1, 1]))]),
            Err(Error::NotFullRank { rank: 1, ambient: 2 })
        ));
        assert!(matches!(
            GradedLattice::canonicalize(q(), 1, 1, &[Generator::new(0, v(&[1]))]),
            Err(Error::DimensionMismatch(_))
        ));
        // three directions in k^2: redundant but spanning
        let red = GradedLattice::canonicalize(
            q(),
            1,
            1,
            &[Generator::new(-1, v(&[1, 1])), Generator::new(1, v(&[0, 1])), Generator::new(0, v(&[1, 0]))],
        )
        .unwrap();
        assert_eq!(red.generators().len(), 2);
        assert_eq!(red.jumps(), vec![-1, 0]);
    }

    #[test]
    fn membership_examples() {
        let l = rank_two(2, 0);
        assert!(!l.contains(&GradedVector::new(1, v(&[1, 0]))).unwrap());
        assert!(l.contains(&GradedVector::new(2, v(&[1, 0]))).unwrap());
        assert!(l.contains(&GradedVector::new(-5, v(&[0, 0]))).unwrap());
        assert!(l.contains(&GradedVector::new(0, v(&[1]))).is_err());
    }

    #[test]
    fn sum_and_intersection_inside_rank_two() {
        let sum = rank_two(1, -1).sum(&rank_two(3, 0)).unwrap();
        assert_eq!(sum, rank_two(2, 0));
        let int = rank_two(1, -1).intersect(&rank_two(3, 0)).unwrap();
        assert_eq!(int, rank_two(2, -1));
    }

    #[test]
    fn shift_and_swap() {
        let l = rank_two(2, 0);
        assert_eq!(l.shift(1), rank_two(2, 1));
        assert_eq!(l.shift(3).shift(-3), l);
        assert_eq!(l.swap_types(), l);
        assert_eq!(l.intersect(&l.shift(-1)).unwrap(), l.shift(-1));
    }

    /// Brute-force membership: search polynomial coefficients `c_j(x)` of
    /// bounded degree with `Σ c_j x^{jump_j} dir_j = x^d w`. Because each
    /// `c_j` is homogeneous of degree `d - jump_j`, this is a constant linear
    /// system over the generators with `jump_j ≤ d`.
    fn brute_member(gens: &[Generator], d: i64, w: &[Scalar]) -> bool {
        let k = q();
        let usable: Vec<Vec<Scalar>> = gens.iter().filter(|g| g.jump <= d).map(|g| g.dir.clone()).collect();
        if usable.is_empty() {
            return w.iter().all(Scalar::is_zero);
        }
        let m = Mat::from_cols(k, w.len(), &usable);
        m.solve(w).is_some()
    }

    fn arb_gens() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
        proptest::collection::vec((-3i64..4, -2i64..3, -2i64..3), 2..5)
    }

    proptest! {
        #[test]
        fn canonicalize_idempotent_and_membership(raw in arb_gens(), d in -4i64..6, w0 in -2i64..3, w1 in -2i64..3) {
            let mut gens: Vec<Generator> = raw.iter().map(|&(j, a, b)| Generator::new(j, v(&[a, b]))).collect();
            gens.push(Generator::new(5, v(&[1, 0])));
            gens.push(Generator::new(5, v(&[0, 1])));
            let l = GradedLattice::canonicalize(q(), 1, 1, &gens).unwrap();
            let again = GradedLattice::canonicalize(q(), 1, 1, &l.generators()).unwrap();
            prop_assert_eq!(&again, &l);
            let w = v(&[w0, w1]);
            prop_assert_eq!(l.contains(&GradedVector::new(d, w.clone())).unwrap(), brute_member(&gens, d, &w));
            // x.L ⊆ L
            for g in l.generators() {
                prop_assert!(l.contains(&GradedVector::new(g.jump + 1, g.dir.clone())).unwrap());
            }
            // absorption
            let other = rank_two(2, 0);
            prop_assert_eq!(l.intersect(&l.sum(&other).unwrap()).unwrap(), l.clone());
        }
    }
}
