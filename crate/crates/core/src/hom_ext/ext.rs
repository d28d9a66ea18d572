//! `Ext¹` through the injective resolution `0 → Y → I0(Y) → I1(Y) → 0`.
//!
//! `I1(Y)` is a sum of divisible torsion modules `D_c = k[x,x^-1]/x^c k[x]`
//! ("slots"): one per torsion summand of `Y` (cutoff = generator degree)
//! and one per canonical lattice generator (cutoff = jump). A map from `X`
//! into `I1(Y)` is a scalar per (generator of `X`, slot) pair, subject to a
//! validity window; a class is such a map modulo those factoring through
//! `I0(Y)`.
//!
//! For lattice sources the lattice slots are traded for the equivalent
//! off-diagonal description: a class is an off-diagonal constant matrix
//! modulo the off-diagonal parts of graded maps, reduced against an echelon
//! basis of that image.

use super::{generator_inverse, hom_kx_space};
use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Mat, Subspace};
use crate::objects::{CObject, Element};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    src: CObject,
    dst: CObject,
    offdiag: Mat,
    torsion: Vec<Scalar>,
}

impl ExtClass {
    pub fn src(&self) -> &CObject {
        &self.src
    }
    pub fn dst(&self) -> &CObject {
        &self.dst
    }
    /// Reduced off-diagonal representative (`rank dst × rank src`).
    pub fn offdiag(&self) -> &Mat {
        &self.offdiag
    }
    /// Coordinates of the part coming from torsion summands of the source.
    pub fn torsion(&self) -> &[Scalar] {
        &self.torsion
    }
    pub fn is_zero(&self) -> bool {
        self.offdiag.is_zero() && is_zero_vec(&self.torsion)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Gen {
    pub degree: i64,
    /// Length of the cyclic summand for torsion generators.
    pub len: Option<u32>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Slot {
    pub cutoff: i64,
    /// Cutoff of the injective hull in `I0` for torsion slots.
    pub hull: Option<i64>,
}

fn valid(g: Gen, cutoff: i64) -> bool {
    match g.len {
        Some(n) => g.degree < cutoff && cutoff <= g.degree + n as i64,
        None => g.degree < cutoff,
    }
}

pub(crate) fn generators(x: &CObject) -> Vec<Gen> {
    let mut out: Vec<Gen> = x
        .torsion()
        .summands()
        .iter()
        .map(|c| Gen {
            degree: c.bottom(),
            len: Some(c.n),
        })
        .collect();
    out.extend(x.lattice().jumps().into_iter().map(|d| Gen { degree: d, len: None }));
    out
}

pub(crate) fn slots(y: &CObject) -> Vec<Slot> {
    let mut out: Vec<Slot> = y
        .torsion()
        .summands()
        .iter()
        .map(|c| Slot {
            cutoff: c.bottom(),
            hull: Some(c.top() + 1),
        })
        .collect();
    out.extend(y.lattice().jumps().into_iter().map(|d| Slot { cutoff: d, hull: None }));
    out
}

#[derive(Clone, Debug)]
pub struct ExtSpace {
    src: CObject,
    dst: CObject,
    pub(crate) gens: Vec<Gen>,
    pub(crate) slots: Vec<Slot>,
    torsion_pairs: Vec<(usize, usize)>,
    positions: Vec<(usize, usize)>,
    image: Subspace,
    free: Vec<usize>,
    pub(crate) dx: Mat,
    pub(crate) dx_inv: Mat,
    pub(crate) dy: Mat,
    pub(crate) dy_inv: Mat,
    basis: Vec<ExtClass>,
}

impl ExtSpace {
    pub fn src(&self) -> &CObject {
        &self.src
    }
    pub fn dst(&self) -> &CObject {
        &self.dst
    }
    pub fn dim(&self) -> usize {
        self.torsion_pairs.len() + self.free.len()
    }
    pub fn basis(&self) -> &[ExtClass] {
        &self.basis
    }
    fn field(&self) -> FieldSpec {
        self.src.field()
    }

    /// Dimension of the part coming from torsion summands of the source.
    pub fn torsion_dim(&self) -> usize {
        self.torsion_pairs.len()
    }

    fn check(&self, c: &ExtClass) -> Result<()> {
        if c.src != self.src || c.dst != self.dst {
            return Err(Error::ShapeMismatch("class does not belong to this Ext space".into()));
        }
        Ok(())
    }

    /// Coordinates in [`ExtSpace::basis`].
    pub fn coords(&self, c: &ExtClass) -> Result<Vec<Scalar>> {
        self.check(c)?;
        let mut out = c.torsion.clone();
        let v = self.image.reduce(&self.offdiag_vector(&c.offdiag));
        out.extend(self.free.iter().map(|&i| v[i].clone()));
        Ok(out)
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> ExtClass {
        assert_eq!(coeffs.len(), self.dim());
        let k = self.field();
        let t = self.torsion_pairs.len();
        let mut v = vec![k.zero(); self.positions.len()];
        for (&i, c) in self.free.iter().zip(&coeffs[t..]) {
            v[i] = c.clone();
        }
        ExtClass {
            src: self.src.clone(),
            dst: self.dst.clone(),
            offdiag: self.offdiag_matrix(&v),
            torsion: coeffs[..t].to_vec(),
        }
    }

    pub fn zero_class(&self) -> ExtClass {
        self.combination(&vec![self.field().zero(); self.dim()])
    }

    fn offdiag_vector(&self, m: &Mat) -> Vec<Scalar> {
        self.positions.iter().map(|&(i, j)| m[(i, j)].clone()).collect()
    }

    fn offdiag_matrix(&self, v: &[Scalar]) -> Mat {
        let k = self.field();
        let mut m = Mat::zeros(k, self.dst.lattice().rank(), self.src.lattice().rank());
        for (s, &(i, j)) in v.iter().zip(&self.positions) {
            m[(i, j)] = s.clone();
        }
        m
    }

    /// The class of an arbitrary constant matrix `rank dst × rank src`; its
    /// block-diagonal part is ignored.
    pub fn class_of_matrix(&self, m: &Mat) -> ExtClass {
        let v = self.image.reduce(&self.offdiag_vector(m));
        ExtClass {
            src: self.src.clone(),
            dst: self.dst.clone(),
            offdiag: self.offdiag_matrix(&v),
            torsion: vec![self.field().zero(); self.torsion_pairs.len()],
        }
    }

    /// Full slot map `generators(src) × slots(dst)` of a class.
    pub(crate) fn slot_map(&self, c: &ExtClass) -> Mat {
        let k = self.field();
        let mut s = Mat::zeros(k, self.gens.len(), self.slots.len());
        for (v, &(g, sl)) in c.torsion.iter().zip(&self.torsion_pairs) {
            s[(g, sl)] = v.clone();
        }
        let t = self.src.torsion().len();
        let t2 = self.dst.torsion().len();
        if !c.offdiag.is_zero() {
            let n = self.dy_inv.mul(&c.offdiag).mul(&self.dx);
            for kk in 0..n.cols() {
                for l in 0..n.rows() {
                    if valid(self.gens[t + kk], self.slots[t2 + l].cutoff) {
                        s[(t + kk, t2 + l)] = n[(l, kk)].clone();
                    }
                }
            }
        }
        s
    }

    /// Class of a map `src → I1(dst)` given by its slot matrix.
    pub(crate) fn class_from_slots(&self, s: &Mat) -> ExtClass {
        let k = self.field();
        let torsion = self.torsion_pairs.iter().map(|&(g, sl)| s[(g, sl)].clone()).collect();
        let t = self.src.torsion().len();
        let t2 = self.dst.torsion().len();
        let (r, r2) = (self.src.lattice().rank(), self.dst.lattice().rank());
        let n = Mat::from_fn(k, r2, r, |l, kk| {
            if valid(self.gens[t + kk], self.slots[t2 + l].cutoff) {
                s[(t + kk, t2 + l)].clone()
            } else {
                k.zero()
            }
        });
        let m = self.dy.mul(&n).mul(&self.dx_inv);
        let v = self.image.reduce(&self.offdiag_vector(&m));
        ExtClass {
            src: self.src.clone(),
            dst: self.dst.clone(),
            offdiag: self.offdiag_matrix(&v),
            torsion,
        }
    }

    /// Value of the slot map on a homogeneous element of the source.
    pub(crate) fn eval_slots(&self, s: &Mat, e: &Element) -> Vec<Scalar> {
        let k = self.field();
        let mut out = vec![k.zero(); self.slots.len()];
        let d = e.degree;
        for (c, &(i, _)) in e.torsion.iter().zip(&self.src.torsion().basis_at(d)) {
            if c.is_zero() {
                continue;
            }
            for (sl, o) in out.iter_mut().enumerate() {
                if d < self.slots[sl].cutoff && !s[(i, sl)].is_zero() {
                    *o = &*o + &(c * &s[(i, sl)]);
                }
            }
        }
        if !is_zero_vec(&e.lattice) {
            let t = self.src.torsion().len();
            let beta = self.dx_inv.mul_vec(&e.lattice);
            for (kk, c) in beta.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (sl, o) in out.iter_mut().enumerate() {
                    if d < self.slots[sl].cutoff && !s[(t + kk, sl)].is_zero() {
                        *o = &*o + &(c * &s[(t + kk, sl)]);
                    }
                }
            }
        }
        out
    }
}

/// `Ext¹(X, Y)` with a basis of reduced representatives.
pub fn ext_space(x: &CObject, y: &CObject) -> Result<ExtSpace> {
    x.check_field(y)?;
    let k = x.field();
    let gens = generators(x);
    let sl = slots(y);
    let t = x.torsion().len();
    let mut torsion_pairs = Vec::new();
    for (g, &gen) in gens.iter().enumerate().take(t) {
        for (j, s) in sl.iter().enumerate() {
            if !valid(gen, s.cutoff) {
                continue;
            }
            // pairs coming from a map into the hull are boundaries
            let killed = s.hull.is_some_and(|h| valid(gen, h) && gen.degree < s.cutoff);
            if !killed {
                torsion_pairs.push((g, j));
            }
        }
    }
    let (p, q) = x.ranks();
    let (p2, q2) = y.ranks();
    let (r, r2) = (p + q, p2 + q2);
    let positions: Vec<(usize, usize)> = (0..r2)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| (i < p2) != (j < p))
        .collect();
    let image_vectors: Vec<Vec<Scalar>> = if positions.is_empty() {
        Vec::new()
    } else {
        let lx = CObject::from_lattice(x.lattice().clone());
        let ly = CObject::from_lattice(y.lattice().clone());
        hom_kx_space(&lx, &ly)?
            .basis()
            .iter()
            .map(|f| positions.iter().map(|&(i, j)| f.lattice()[(i, j)].clone()).collect())
            .collect()
    };
    let image = Subspace::span(k, positions.len(), &image_vectors);
    let free: Vec<usize> = (0..positions.len()).filter(|i| !image.pivots().contains(i)).collect();
    let dx = x.lattice().generator_matrix();
    let dy = y.lattice().generator_matrix();
    let mut space = ExtSpace {
        src: x.clone(),
        dst: y.clone(),
        gens,
        slots: sl,
        torsion_pairs,
        positions,
        image,
        free,
        dx_inv: generator_inverse(x),
        dy_inv: generator_inverse(y),
        dx,
        dy,
        basis: Vec::new(),
    };
    let dim = space.torsion_pairs.len() + space.free.len();
    space.basis = (0..dim)
        .map(|i| space.combination(&crate::matrix::unit_vec(k, dim, i)))
        .collect();
    Ok(space)
}
