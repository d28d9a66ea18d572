//! Yoneda products of degree at most one.

use super::ext::{ext_space, ExtSpace};
use super::{ExtClass, Morphism};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Yoneda {
    Hom(Morphism),
    Ext(ExtClass),
}

/// `g ∘ f`. Products of two `Ext¹` classes land in `Ext²`, which vanishes
/// in a hereditary category; they are reported as [`Error::Degree2NotSupported`].
pub fn yoneda_compose(g: &Yoneda, f: &Yoneda) -> Result<Yoneda> {
    match (g, f) {
        (Yoneda::Hom(g), Yoneda::Hom(f)) => Ok(Yoneda::Hom(g.compose(f)?)),
        (Yoneda::Ext(c), Yoneda::Hom(f)) => {
            if f.dst() != c.src() {
                return Err(Error::Composability(format!("{} vs {}", f.dst(), c.src())));
            }
            let from = ext_space(c.src(), c.dst())?;
            let to = ext_space(f.src(), c.dst())?;
            Ok(Yoneda::Ext(ext_after_hom(&from, &to, c, f)))
        }
        (Yoneda::Hom(h), Yoneda::Ext(c)) => {
            if c.dst() != h.src() {
                return Err(Error::Composability(format!("{} vs {}", c.dst(), h.src())));
            }
            let from = ext_space(c.src(), c.dst())?;
            let to = ext_space(c.src(), h.dst())?;
            Ok(Yoneda::Ext(hom_after_ext(&from, &to, h, c)))
        }
        (Yoneda::Ext(_), Yoneda::Ext(_)) => Err(Error::Degree2NotSupported),
    }
}

/// `c ∘ f` for `c ∈ Ext¹(X,Y)` (in `from`) and `f: W → X`, as a class in
/// `to = Ext¹(W,Y)`.
pub(crate) fn ext_after_hom(from: &ExtSpace, to: &ExtSpace, c: &ExtClass, f: &Morphism) -> ExtClass {
    let s = from.slot_map(c);
    let k = f.field();
    let rows = f.torsion_images().len();
    let mut out = Mat::zeros(k, rows, from.slots.len());
    for g in 0..rows {
        let vals = from.eval_slots(&s, &f.generator_image(g));
        for (j, v) in vals.into_iter().enumerate() {
            out[(g, j)] = v;
        }
    }
    to.class_from_slots(&out)
}

/// Pushes slot values of `I1(Y)` in degree `d` along the map
/// `I1(Y) → I1(Z)` induced by `h: Y → Z`.
fn push_slots(h: &Morphism, from: &ExtSpace, to: &ExtSpace, d: i64, vals: &[Scalar]) -> Vec<Scalar> {
    let k = h.field();
    let y = h.src();
    let z = h.dst();
    let t_y = y.torsion().len();
    let t_z = z.torsion().len();
    let mut out = vec![k.zero(); to.slots.len()];
    let ydegs = y.generator_degrees();
    // torsion coefficient of the image of a generator of Y on summand i of Z
    let tau = |g: usize, i: usize| -> Scalar {
        let basis = z.torsion().basis_at(ydegs[g]);
        basis
            .iter()
            .position(|&(j, _)| j == i)
            .map_or(k.zero(), |pos| h.torsion_images()[g][pos].clone())
    };
    for (sl, v) in vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        for i in 0..t_z {
            if d < to.slots[i].cutoff {
                let t = tau(sl, i);
                if !t.is_zero() {
                    out[i] = &out[i] + &(v * &t);
                }
            }
        }
        if sl >= t_y {
            let dir = from.dy.col(sl - t_y);
            let img = to.dy_inv.mul_vec(&h.lattice().mul_vec(&dir));
            for (l, w) in img.iter().enumerate() {
                if d < to.slots[t_z + l].cutoff && !w.is_zero() {
                    out[t_z + l] = &out[t_z + l] + &(v * w);
                }
            }
        }
    }
    out
}

/// `h ∘ c` for `c ∈ Ext¹(X,Y)` (in `from`) and `h: Y → Z`, as a class in
/// `to = Ext¹(X,Z)`.
pub(crate) fn hom_after_ext(from: &ExtSpace, to: &ExtSpace, h: &Morphism, c: &ExtClass) -> ExtClass {
    let s = from.slot_map(c);
    let k = h.field();
    let mut out = Mat::zeros(k, s.rows(), to.slots.len());
    for g in 0..s.rows() {
        let pushed = push_slots(h, from, to, from.gens[g].degree, s.row(g));
        for (j, v) in pushed.into_iter().enumerate() {
            out[(g, j)] = v;
        }
    }
    to.class_from_slots(&out)
}
