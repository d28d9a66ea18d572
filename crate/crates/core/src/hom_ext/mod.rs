//! Morphisms, extension classes and the pairings between them.
//!
//! A morphism `X → Y` is stored by the images of the generators of `X`
//! (torsion generators first, then canonical lattice generators). The
//! lattice-to-lattice component is a constant matrix; torsion-to-lattice
//! components vanish, so an image is a lattice vector (fixed by the matrix)
//! plus torsion coordinates in `Y`.

mod ext;
mod serre;
mod yoneda;

pub use ext::{ext_space, ExtClass, ExtSpace};
pub use serre::{eta, serre_check, serre_gram, serre_gram_flipped, twist_class, twist_morphism, SerreReport};
pub use yoneda::{yoneda_compose, Yoneda};

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Mat, Subspace};
use crate::objects::{CObject, Element};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    src: CObject,
    dst: CObject,
    lattice: Mat,
    torsion: Vec<Vec<Scalar>>,
}

/// Inverse of the canonical generator matrix of a lattice; generator
/// coordinates of a lattice vector `v` are `inv * v`.
pub(crate) fn generator_inverse(x: &CObject) -> Mat {
    x.lattice()
        .generator_matrix()
        .inverse()
        .expect("canonical generators form a basis")
}

impl Morphism {
    /// Builds a morphism from its lattice matrix and the torsion parts of
    /// the generator images, checking that it is well defined.
    pub fn new(src: CObject, dst: CObject, lattice: Mat, torsion: Vec<Vec<Scalar>>) -> Result<Self> {
        src.check_field(&dst)?;
        let f = Morphism {
            src,
            dst,
            lattice,
            torsion,
        };
        f.validate(false)?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: CObject, dst: CObject, lattice: Mat, torsion: Vec<Vec<Scalar>>) -> Self {
        Morphism {
            src,
            dst,
            lattice,
            torsion,
        }
    }

    pub fn zero(src: &CObject, dst: &CObject) -> Self {
        let k = src.field();
        let torsion = src
            .generator_degrees()
            .iter()
            .map(|&d| vec![k.zero(); dst.torsion().dim_at(d)])
            .collect();
        Morphism {
            src: src.clone(),
            dst: dst.clone(),
            lattice: Mat::zeros(k, dst.lattice().rank(), src.lattice().rank()),
            torsion,
        }
    }

    pub fn identity(x: &CObject) -> Self {
        let k = x.field();
        let t = x.torsion().len();
        let mut torsion = Vec::new();
        for (i, c) in x.torsion().summands().iter().enumerate() {
            let b = x.torsion().basis_at(c.bottom());
            torsion.push(b.iter().map(|&(j, _)| if j == i { k.one() } else { k.zero() }).collect());
        }
        for d in x.lattice().jumps() {
            torsion.push(vec![k.zero(); x.torsion().dim_at(d)]);
        }
        debug_assert_eq!(torsion.len(), t + x.lattice().rank());
        Morphism {
            src: x.clone(),
            dst: x.clone(),
            lattice: Mat::identity(k, x.lattice().rank()),
            torsion,
        }
    }

    pub fn src(&self) -> &CObject {
        &self.src
    }
    pub fn dst(&self) -> &CObject {
        &self.dst
    }
    pub fn field(&self) -> FieldSpec {
        self.src.field()
    }
    /// The constant matrix on the lattice parts.
    pub fn lattice(&self) -> &Mat {
        &self.lattice
    }
    /// Torsion coordinates of the image of each generator of the source.
    pub fn torsion_images(&self) -> &[Vec<Scalar>] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.lattice.is_zero() && self.torsion.iter().all(|v| is_zero_vec(v))
    }

    /// Whether the lattice matrix is block diagonal for the type splitting.
    pub fn is_typed(&self) -> bool {
        let (p, _) = self.src.ranks();
        let (p2, _) = self.dst.ranks();
        (0..self.lattice.rows()).all(|i| {
            (0..self.lattice.cols()).all(|j| (i < p2) == (j < p) || self.lattice[(i, j)].is_zero())
        })
    }

    /// Image of the `g`-th generator of the source.
    pub fn generator_image(&self, g: usize) -> Element {
        let t = self.src.torsion().len();
        let degs = self.src.generator_degrees();
        let lattice = if g < t {
            vec![self.field().zero(); self.dst.lattice().rank()]
        } else {
            self.lattice
                .mul_vec(&self.src.lattice().generator_matrix().col(g - t))
        };
        Element {
            degree: degs[g],
            torsion: self.torsion[g].clone(),
            lattice,
        }
    }

    /// Applies the morphism to a homogeneous element of the source.
    pub fn eval(&self, e: &Element) -> Element {
        self.eval_with(e, &generator_inverse(&self.src))
    }

    pub(crate) fn eval_with(&self, e: &Element, src_inv: &Mat) -> Element {
        let k = self.field();
        let st = self.src.torsion();
        let dt = self.dst.torsion();
        let mut out = vec![k.zero(); dt.dim_at(e.degree)];
        for (c, &(i, l)) in e.torsion.iter().zip(&st.basis_at(e.degree)) {
            if c.is_zero() {
                continue;
            }
            let b = st.summands()[i].bottom();
            let img = dt.mul_x_pow(b, &self.torsion[i], l, k);
            for (o, v) in out.iter_mut().zip(&img) {
                *o = &*o + &(c * v);
            }
        }
        if !e.lattice.is_empty() && !is_zero_vec(&e.lattice) {
            let t = st.len();
            let beta = src_inv.mul_vec(&e.lattice);
            let jumps = self.src.lattice().jumps();
            for (kk, c) in beta.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                debug_assert!(jumps[kk] <= e.degree, "lattice vector outside S_d");
                let img = dt.mul_x_pow(jumps[kk], &self.torsion[t + kk], (e.degree - jumps[kk]) as u32, k);
                for (o, v) in out.iter_mut().zip(&img) {
                    *o = &*o + &(c * v);
                }
            }
        }
        Element {
            degree: e.degree,
            torsion: out,
            lattice: self.lattice.mul_vec(&e.lattice),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.dst != self.src {
            return Err(Error::Composability(format!("{} vs {}", f.dst, self.src)));
        }
        let inv = generator_inverse(&self.src);
        let torsion = (0..f.torsion.len())
            .map(|g| self.eval_with(&f.generator_image(g), &inv).torsion)
            .collect();
        Ok(Morphism {
            src: f.src.clone(),
            dst: self.dst.clone(),
            lattice: self.lattice.mul(&f.lattice),
            torsion,
        })
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.src == other.src && self.dst == other.dst);
        Morphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            lattice: self.lattice.add(&other.lattice),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .map(|(a, b)| crate::matrix::vec_add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            lattice: self.lattice.scale(s),
            torsion: self.torsion.iter().map(|v| crate::matrix::vec_scale(v, s)).collect(),
        }
    }

    /// Coordinates in the ambient space (lattice matrix row-major, then the
    /// torsion images).
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut v = self.lattice.flatten();
        for t in &self.torsion {
            v.extend(t.iter().cloned());
        }
        v
    }

    fn from_flat(src: &CObject, dst: &CObject, v: &[Scalar]) -> Morphism {
        let k = src.field();
        let (r, r2) = (src.lattice().rank(), dst.lattice().rank());
        let lattice = Mat::from_fn(k, r2, r, |i, j| v[i * r + j].clone());
        let mut pos = r * r2;
        let mut torsion = Vec::new();
        for d in src.generator_degrees() {
            let n = dst.torsion().dim_at(d);
            torsion.push(v[pos..pos + n].to_vec());
            pos += n;
        }
        Morphism {
            src: src.clone(),
            dst: dst.clone(),
            lattice,
            torsion,
        }
    }

    /// Checks filtration compatibility, that torsion generators land in the
    /// kernel of the right power of `x`, and (if `typed`) block shape.
    pub fn validate(&self, untyped_ok: bool) -> Result<()> {
        let (r, r2) = (self.src.lattice().rank(), self.dst.lattice().rank());
        if self.lattice.rows() != r2 || self.lattice.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "lattice block is {}x{}, expected {r2}x{r}",
                self.lattice.rows(),
                self.lattice.cols()
            )));
        }
        let degs = self.src.generator_degrees();
        if self.torsion.len() != degs.len()
            || self
                .torsion
                .iter()
                .zip(&degs)
                .any(|(v, &d)| v.len() != self.dst.torsion().dim_at(d))
        {
            return Err(Error::DimensionMismatch("torsion images".into()));
        }
        if !untyped_ok && !self.is_typed() {
            return Err(Error::ShapeMismatch("lattice block mixes types".into()));
        }
        for e in self.src.lattice().distinct_jumps() {
            let target = self.dst.lattice().subspace_at(e);
            if !target.contains_space(&self.src.lattice().subspace_at(e).image(&self.lattice)) {
                return Err(Error::ShapeMismatch(format!("filtration not preserved at degree {e}")));
            }
        }
        let k = self.field();
        for (i, c) in self.src.torsion().summands().iter().enumerate() {
            let killed = self.dst.torsion().mul_x_pow(c.bottom(), &self.torsion[i], c.n, k);
            if !is_zero_vec(&killed) {
                return Err(Error::ShapeMismatch(format!("x^{} does not kill the image", c.n)));
            }
        }
        Ok(())
    }
}

/// A space of morphisms with an echelon basis in flattened coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: CObject,
    dst: CObject,
    space: Subspace,
    basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn src(&self) -> &CObject {
        &self.src
    }
    pub fn dst(&self) -> &CObject {
        &self.dst
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    /// Coordinates of `f` in [`HomSpace::basis`], or `None` if `f` is not in
    /// the space.
    pub fn coords(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        self.space.coords(&f.flatten())
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Morphism {
        let k = self.src.field();
        let mut v = vec![k.zero(); self.space.ambient()];
        for (c, b) in coeffs.iter().zip(self.space.vectors()) {
            if !c.is_zero() {
                v = crate::matrix::vec_add(&v, &crate::matrix::vec_scale(&b, c));
            }
        }
        Morphism::from_flat(&self.src, &self.dst, &v)
    }
}

/// Constant `r' × r` matrices (restricted to `allowed` entries) mapping every
/// `S_e` of the source into `S'_e` of the target; returned as flattened
/// full matrices.
fn lattice_solutions(x: &CObject, y: &CObject, typed: bool) -> Vec<Vec<Scalar>> {
    let k = x.field();
    let (p, _) = x.ranks();
    let (p2, _) = y.ranks();
    let (r, r2) = (x.lattice().rank(), y.lattice().rank());
    let allowed: Vec<(usize, usize)> = (0..r2)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| !typed || (i < p2) == (j < p))
        .collect();
    if allowed.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for e in x.lattice().distinct_jumps() {
        let ann = y.lattice().subspace_at(e).annihilator();
        for s in x.lattice().subspace_at(e).vectors() {
            for w in &ann {
                let row: Vec<Scalar> = allowed.iter().map(|&(i, j)| &w[i] * &s[j]).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        Mat::identity(k, allowed.len()).row_vecs()
    } else {
        Mat::from_rows(k, allowed.len(), &rows).nullspace()
    };
    sols.into_iter()
        .map(|sol| {
            let mut full = vec![k.zero(); r * r2];
            for (v, &(i, j)) in sol.into_iter().zip(&allowed) {
                full[i * r + j] = v;
            }
            full
        })
        .collect()
}

fn hom_generic(x: &CObject, y: &CObject, typed: bool) -> Result<HomSpace> {
    x.check_field(y)?;
    let k = x.field();
    let (r, r2) = (x.lattice().rank(), y.lattice().rank());
    let degs = x.generator_degrees();
    let tdims: Vec<usize> = degs.iter().map(|&d| y.torsion().dim_at(d)).collect();
    let ambient = r * r2 + tdims.iter().sum::<usize>();
    let mut vs: Vec<Vec<Scalar>> = lattice_solutions(x, y, typed)
        .into_iter()
        .map(|mut v| {
            v.resize(ambient, k.zero());
            v
        })
        .collect();
    let t = x.torsion().len();
    let mut pos = r * r2;
    for (g, &d) in degs.iter().enumerate() {
        let basis = y.torsion().basis_at(d);
        for (idx, &(j, l)) in basis.iter().enumerate() {
            // a torsion generator x^n-killed; a lattice generator is free
            let free = g >= t || l + x.torsion().summands()[g].n >= y.torsion().summands()[j].n;
            if free {
                let mut v = vec![k.zero(); ambient];
                v[pos + idx] = k.one();
                vs.push(v);
            }
        }
        pos += basis.len();
    }
    let space = Subspace::span(k, ambient, &vs);
    let basis = space
        .vectors()
        .iter()
        .map(|v| Morphism::from_flat(x, y, v))
        .collect();
    Ok(HomSpace {
        src: x.clone(),
        dst: y.clone(),
        space,
        basis,
    })
}

/// `Hom` in the category: block-diagonal lattice maps, arbitrary graded maps
/// into torsion, nothing from torsion to lattices.
pub fn hom_space(x: &CObject, y: &CObject) -> Result<HomSpace> {
    hom_generic(x, y, true)
}

/// Graded `k[x]`-module maps, forgetting the type data.
pub fn hom_kx_space(x: &CObject, y: &CObject) -> Result<HomSpace> {
    hom_generic(x, y, false)
}

/// `χ(X, Y) = dim Hom(X, Y) - dim Ext¹(X, Y)`.
pub fn euler_form(x: &CObject, y: &CObject) -> Result<i64> {
    Ok(hom_space(x, y)?.dim() as i64 - ext_space(x, y)?.dim() as i64)
}
