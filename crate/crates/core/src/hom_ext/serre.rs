//! The functor `V` on morphisms and classes, the trace map `η`, and the
//! duality pairings `Hom(F,G) × Ext¹(G,VF) → k`.

use serde::Serialize;

use super::ext::ext_space;
use super::{hom_space, ExtClass, Morphism};
use crate::error::{Error, Result};
use crate::lattice::swap_permutation;
use crate::matrix::Mat;
use crate::objects::{CObject, Element};
use crate::scalar::Scalar;

/// The element of `X` corresponding to an element of `VX` (one degree
/// lower, coordinates swapped back).
fn untwist(x: &CObject, e: &Element) -> Element {
    let (p, q) = x.ranks();
    let back = swap_permutation(x.field(), q, p);
    Element {
        degree: e.degree - 1,
        torsion: e.torsion.clone(),
        lattice: back.mul_vec(&e.lattice),
    }
}

fn generator_element(x: &CObject, g: usize) -> Element {
    let k = x.field();
    let t = x.torsion().len();
    let d = x.generator_degrees()[g];
    let mut torsion = vec![k.zero(); x.torsion().dim_at(d)];
    let mut lattice = vec![k.zero(); x.lattice().rank()];
    if g < t {
        let pos = x.torsion().position(d, g, 0).expect("generator in its own degree");
        torsion[pos] = k.one();
    } else {
        lattice = x.lattice().generator_matrix().col(g - t);
    }
    Element {
        degree: d,
        torsion,
        lattice,
    }
}

/// `V(f): VX → VY`.
pub fn twist_morphism(f: &Morphism) -> Morphism {
    let (x, y) = (f.src(), f.dst());
    let vx = x.serre_twist();
    let vy = y.serre_twist();
    let k = f.field();
    let (p, q) = x.ranks();
    let (p2, q2) = y.ranks();
    let lattice = swap_permutation(k, p2, q2)
        .mul(f.lattice())
        .mul(&swap_permutation(k, q, p));
    let n = vx.generator_degrees().len();
    let torsion = (0..n)
        .map(|g| f.eval(&untwist(x, &generator_element(&vx, g))).torsion)
        .collect();
    Morphism::new_unchecked(vx, vy, lattice, torsion)
}

/// `V(c) ∈ Ext¹(VX, VY)` for `c ∈ Ext¹(X, Y)`.
pub fn twist_class(c: &ExtClass) -> Result<ExtClass> {
    let (x, y) = (c.src(), c.dst());
    let from = ext_space(x, y)?;
    let vx = x.serre_twist();
    let vy = y.serre_twist();
    let to = ext_space(&vx, &vy)?;
    let k = x.field();
    let s = from.slot_map(c);
    let (p2, q2) = y.ranks();
    let py = swap_permutation(k, p2, q2);
    let t2 = y.torsion().len();
    let n = vx.generator_degrees().len();
    let mut out = Mat::zeros(k, n, to.slots.len());
    for g in 0..n {
        let vals = from.eval_slots(&s, &untwist(x, &generator_element(&vx, g)));
        for (j, v) in vals[..t2].iter().enumerate() {
            out[(g, j)] = v.clone();
        }
        let u = from.dy.mul_vec(&vals[t2..]);
        let w = to.dy_inv.mul_vec(&py.mul_vec(&u));
        for (l, v) in w.into_iter().enumerate() {
            out[(g, t2 + l)] = v;
        }
    }
    Ok(to.class_from_slots(&out))
}

/// `tr(h01) + tr(h10)` of a representative `VF ← F` in the coordinates of
/// `F` with ranks `(p, q)`.
fn trace_pairing(m: &Mat, p: usize, q: usize) -> Scalar {
    m.submatrix(q..q + p, 0..p).trace() + m.submatrix(0..q, p..p + q).trace()
}

/// The trace map `η_F: Ext¹(F, VF) → k`.
pub fn eta(f: &CObject, c: &ExtClass) -> Result<Scalar> {
    if !f.is_torsion_free() {
        return Err(Error::NotTorsionFree);
    }
    if c.src() != f || *c.dst() != f.serre_twist() {
        return Err(Error::ShapeMismatch("η needs a class in Ext¹(F, VF)".into()));
    }
    let (p, q) = f.ranks();
    Ok(trace_pairing(c.offdiag(), p, q))
}

/// Gram matrix of `(f, g) ↦ η_F(g ∘ f)` on `Hom(F,G) × Ext¹(G,VF)`.
pub fn serre_gram(f: &CObject, g: &CObject) -> Result<Mat> {
    if !f.is_torsion_free() || !g.is_torsion_free() {
        return Err(Error::NotTorsionFree);
    }
    f.check_field(g)?;
    let hom = hom_space(f, g)?;
    let ext = ext_space(g, &f.serre_twist())?;
    let (p, q) = f.ranks();
    Ok(Mat::from_fn(f.field(), hom.dim(), ext.dim(), |i, j| {
        trace_pairing(&ext.basis()[j].offdiag().mul(hom.basis()[i].lattice()), p, q)
    }))
}

/// Gram matrix of `(c, h) ↦ η_F(h ∘ c)` on `Ext¹(F,G) × Hom(G,VF)`.
pub fn serre_gram_flipped(f: &CObject, g: &CObject) -> Result<Mat> {
    if !f.is_torsion_free() || !g.is_torsion_free() {
        return Err(Error::NotTorsionFree);
    }
    f.check_field(g)?;
    let ext = ext_space(f, g)?;
    let hom = hom_space(g, &f.serre_twist())?;
    let (p, q) = f.ranks();
    Ok(Mat::from_fn(f.field(), ext.dim(), hom.dim(), |i, j| {
        trace_pairing(&hom.basis()[j].lattice().mul(ext.basis()[i].offdiag()), p, q)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub hom_dim: usize,
    pub ext_dim: usize,
    /// Rank of the pairing matrix, for torsion-free pairs.
    pub gram_rank: Option<usize>,
    pub pass: bool,
}

/// Compares `dim Hom(X,Y)` with `dim Ext¹(Y,VX)` and, for torsion-free
/// pairs, checks that the pairing is non-degenerate.
pub fn serre_check(x: &CObject, y: &CObject) -> Result<SerreReport> {
    let hom_dim = hom_space(x, y)?.dim();
    let ext_dim = ext_space(y, &x.serre_twist())?.dim();
    let gram_rank = if x.is_torsion_free() && y.is_torsion_free() {
        Some(serre_gram(x, y)?.rank())
    } else {
        None
    };
    let pass = hom_dim == ext_dim && gram_rank.is_none_or(|r| r == hom_dim);
    Ok(SerreReport {
        hom_dim,
        ext_dim,
        gram_rank,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom_ext::{hom_kx_space, yoneda_compose, Yoneda};
    use crate::scalar::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn gram_examples() {
        let k = q();
        let f02 = CObject::rank_one(k, 0, 2);
        let g = serre_gram(&f02, &f02).unwrap();
        assert_eq!((g.rows(), g.cols(), g.rank()), (1, 1, 1));
        let g = serre_gram(&CObject::rank_one(k, 0, 0), &CObject::rank_one(k, 1, 0)).unwrap();
        assert_eq!((g.rows(), g.cols()), (0, 0));
        let g = serre_gram(&CObject::rank_two(k, 1, 0), &CObject::rank_two(k, 1, 1)).unwrap();
        assert_eq!((g.rows(), g.cols(), g.rank()), (2, 2, 2));
        let g = serre_gram_flipped(&CObject::rank_two(k, 1, 1), &CObject::rank_two(k, 1, 0)).unwrap();
        assert_eq!(g.rank(), g.rows());
    }

    #[test]
    fn serre_check_examples() {
        let k = q();
        let r = serre_check(&CObject::rank_one(k, 0, 1), &CObject::rank_one(k, 0, 2)).unwrap();
        assert_eq!((r.hom_dim, r.ext_dim, r.pass), (1, 1, true));
        let r = serre_check(&CObject::rank_two(k, 1, 0), &CObject::cyclic(k, 1, 0)).unwrap();
        assert_eq!((r.hom_dim, r.ext_dim, r.pass), (1, 1, true));
        let r = serre_check(&CObject::rank_two(k, 3, 0), &CObject::zero(k)).unwrap();
        assert_eq!((r.hom_dim, r.ext_dim, r.pass), (0, 0, true));
    }

    #[test]
    fn eta_of_identity_block() {
        let k = q();
        let f = CObject::rank_one(k, 0, 0);
        let vf = f.serre_twist();
        let e = ext_space(&f, &vf).unwrap();
        // the class with representative "identity on the V0 slot"
        let c = e.class_of_matrix(&Mat::identity(k, 1));
        assert_eq!(eta(&f, &c).unwrap(), k.one());
        assert!(eta(&f, &e.zero_class()).unwrap().is_zero());
    }

    #[test]
    fn adjunction_and_twist_compatibility() {
        let k = q();
        let objs = [
            CObject::rank_two(k, 1, 0),
            CObject::rank_two(k, 2, 1),
            CObject::rank_one(k, 0, 0),
            CObject::rank_one(k, 1, 1),
        ];
        for f in &objs {
            let vf = f.serre_twist();
            for g in &objs {
                for h in hom_space(f, g).unwrap().basis() {
                    for c in ext_space(g, &vf).unwrap().basis() {
                        let Yoneda::Ext(left) =
                            yoneda_compose(&Yoneda::Ext(c.clone()), &Yoneda::Hom(h.clone())).unwrap()
                        else {
                            unreachable!()
                        };
                        let Yoneda::Ext(right) =
                            yoneda_compose(&Yoneda::Hom(twist_morphism(h)), &Yoneda::Ext(c.clone())).unwrap()
                        else {
                            unreachable!()
                        };
                        assert_eq!(eta(f, &left).unwrap(), eta(g, &right).unwrap());
                    }
                }
            }
            for c in ext_space(f, &vf).unwrap().basis() {
                assert_eq!(eta(&vf, &twist_class(c).unwrap()).unwrap(), eta(f, c).unwrap());
            }
            // graded maps F -> VF have off-diagonal parts of zero trace
            for d in hom_kx_space(f, &vf).unwrap().basis() {
                let (p, q) = f.ranks();
                assert!(trace_pairing(d.lattice(), p, q).is_zero());
            }
        }
    }

    #[test]
    fn twist_morphism_is_a_morphism() {
        let k = q();
        let x = CObject::direct_sum(k, &[&CObject::rank_two(k, 2, 0), &CObject::cyclic(k, 2, 0)]).unwrap();
        let y = CObject::direct_sum(k, &[&CObject::rank_one(k, 1, 1), &CObject::cyclic(k, 1, 0)]).unwrap();
        for f in hom_space(&x, &y).unwrap().basis() {
            let vf = twist_morphism(f);
            vf.validate(false).unwrap();
            assert!(hom_space(vf.src(), vf.dst()).unwrap().coords(&vf).is_some());
        }
    }
}
