//! Extensions from classes, almost split sequences and windows of the
//! Auslander–Reiten quiver.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::decomp::{decompose, format_sum, identify, IndecLabel};
use crate::error::{Error, Result};
use crate::graded::FiniteGraded;
use crate::hom_ext::{ext_space, ExtClass, Morphism};
use crate::lattice::GradedLattice;
use crate::matrix::{is_zero_vec, Mat, Subspace};
use crate::objects::{CObject, Cyclic, Element, TorsionPart};
use crate::scalar::Scalar;

/// `0 → left → middle → right → 0` with its class in `Ext¹(right, left)`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub left: CObject,
    pub middle: CObject,
    pub right: CObject,
    pub inject: Morphism,
    pub surject: Morphism,
    pub cls: ExtClass,
}

/// A basis of the degree-`d` part of an object, as elements.
pub fn degree_basis(x: &CObject, d: i64) -> Vec<Element> {
    let k = x.field();
    let mut out = Vec::new();
    let td = x.torsion().dim_at(d);
    let r = x.lattice().rank();
    for i in 0..td {
        let mut t = vec![k.zero(); td];
        t[i] = k.one();
        out.push(Element {
            degree: d,
            torsion: t,
            lattice: vec![k.zero(); r],
        });
    }
    for v in x.lattice().subspace_at(d).vectors() {
        out.push(Element {
            degree: d,
            torsion: vec![k.zero(); td],
            lattice: v,
        });
    }
    out
}

fn flat(e: &Element) -> Vec<Scalar> {
    let mut v = e.torsion.clone();
    v.extend(e.lattice.iter().cloned());
    v
}

/// Rank of a morphism on the degree-`d` parts.
pub fn rank_at(f: &Morphism, d: i64) -> usize {
    let k = f.field();
    let imgs: Vec<Vec<Scalar>> = degree_basis(f.src(), d).iter().map(|e| flat(&f.eval(e))).collect();
    let n = f.dst().torsion().dim_at(d) + f.dst().lattice().rank();
    Subspace::span(k, n, &imgs).dim()
}

fn window(objs: &[&CObject]) -> Option<(i64, i64)> {
    let mut lo = None::<i64>;
    let mut hi = None::<i64>;
    for o in objs {
        if let Some((a, b)) = o.degree_window() {
            lo = Some(lo.map_or(a, |l| l.min(a)));
            hi = Some(hi.map_or(b, |h| h.max(b)));
        }
    }
    Some((lo?, hi?))
}

impl ShortExactSeq {
    /// Checks `surject ∘ inject = 0` and degreewise exactness on a window
    /// covering all jumps and torsion supports.
    pub fn is_exact(&self) -> bool {
        let Ok(comp) = self.surject.compose(&self.inject) else {
            return false;
        };
        if !comp.is_zero() {
            return false;
        }
        let Some((lo, hi)) = window(&[&self.left, &self.middle, &self.right]) else {
            return true;
        };
        (lo - 1..=hi + 1).all(|d| {
            let a = self.left.dim_at(d);
            let b = self.middle.dim_at(d);
            let c = self.right.dim_at(d);
            b == a + c && rank_at(&self.inject, d) == a && rank_at(&self.surject, d) == c
        })
    }
}

/// Coordinates of an element of the pullback in one degree:
/// `[hull coordinates | w (lattice of Y) | torsion of X | v (lattice of X)]`.
struct Pullback<'a> {
    x: &'a CObject,
    y: &'a CObject,
    slots: Mat,
    hulls: Vec<i64>,
    cutoffs: Vec<i64>,
    dx_inv: Mat,
    dy_inv: Mat,
}

impl Pullback<'_> {
    fn hull_coords(&self, d: i64) -> Vec<usize> {
        (0..self.hulls.len()).filter(|&j| d < self.hulls[j]).collect()
    }

    fn ambient(&self, d: i64) -> usize {
        self.hull_coords(d).len() + self.y.lattice().rank() + self.x.torsion().dim_at(d) + self.x.lattice().rank()
    }

    /// Offsets of the `w`, torsion-of-X and `v` blocks.
    fn offsets(&self, d: i64) -> (usize, usize, usize) {
        let h = self.hull_coords(d).len();
        let w = h + self.y.lattice().rank();
        (h, w, w + self.x.torsion().dim_at(d))
    }

    /// The degree-`d` part of the pullback as a subspace of the ambient.
    fn part(&self, d: i64) -> Subspace {
        let k = self.x.field();
        let n = self.ambient(d);
        let (ow, ox, ov) = self.offsets(d);
        let hc = self.hull_coords(d);
        let t2 = self.y.torsion().len();
        let r = self.x.lattice().rank();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for ann in self.x.lattice().subspace_at(d).annihilator() {
            if r == 0 {
                break;
            }
            let mut row = vec![k.zero(); n];
            row[ov..ov + r].clone_from_slice(&ann);
            rows.push(row);
        }
        let xbasis = self.x.torsion().basis_at(d);
        for (s, &cut) in self.cutoffs.iter().enumerate() {
            if d >= cut {
                continue;
            }
            let mut row = vec![k.zero(); n];
            if s < t2 {
                let pos = hc.iter().position(|&j| j == s).expect("hull reaches below the slot");
                row[pos] = k.one();
            } else {
                for (c, val) in self.dy_inv.row(s - t2).iter().enumerate() {
                    row[ow + c] = val.clone();
                }
            }
            for (idx, &(i, _)) in xbasis.iter().enumerate() {
                row[ox + idx] = &row[ox + idx] - &self.slots[(i, s)];
            }
            let t = self.x.torsion().len();
            for c in 0..r {
                // coefficient of v_c in sum_k (dx_inv v)_k S[t+k, s]
                let mut acc = k.zero();
                for kk in 0..r {
                    acc = acc + &(&self.dx_inv[(kk, c)] * &self.slots[(t + kk, s)]);
                }
                row[ov + c] = &row[ov + c] - &acc;
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Subspace::full(k, n);
        }
        Subspace::span(k, n, &Mat::from_rows(k, n, &rows).nullspace())
    }

    /// Multiplication by `x` on ambient vectors from degree `d`.
    fn x_map(&self, d: i64) -> Mat {
        let k = self.x.field();
        let (n0, n1) = (self.ambient(d), self.ambient(d + 1));
        let mut m = Mat::zeros(k, n1, n0);
        let (h0, h1) = (self.hull_coords(d), self.hull_coords(d + 1));
        for (i, j) in h0.iter().enumerate() {
            if let Some(pos) = h1.iter().position(|a| a == j) {
                m[(pos, i)] = k.one();
            }
        }
        let (ow0, ox0, ov0) = self.offsets(d);
        let (ow1, ox1, ov1) = self.offsets(d + 1);
        for c in 0..self.y.lattice().rank() {
            m[(ow1 + c, ow0 + c)] = k.one();
        }
        let td = self.x.torsion().dim_at(d);
        for i in 0..td {
            let mut e = vec![k.zero(); td];
            e[i] = k.one();
            for (pos, s) in self.x.torsion().mul_x_pow(d, &e, 1, k).into_iter().enumerate() {
                m[(ox1 + pos, ox0 + i)] = s;
            }
        }
        for c in 0..self.x.lattice().rank() {
            m[(ov1 + c, ov0 + c)] = k.one();
        }
        m
    }

    fn x_pow(&self, d: i64, v: &[Scalar], l: i64) -> Vec<Scalar> {
        let mut cur = v.to_vec();
        for s in 0..l {
            cur = self.x_map(d + s).mul_vec(&cur);
        }
        cur
    }

    /// The `(w, v)` part of an ambient vector.
    fn lattice_part(&self, d: i64, z: &[Scalar]) -> Vec<Scalar> {
        let (ow, ox, ov) = self.offsets(d);
        let mut out = z[ow..ox].to_vec();
        out.extend(z[ov..].iter().cloned());
        out
    }
}

/// The extension of `X` by `Y` classified by `c ∈ Ext¹(X,Y)`, built as the
/// pullback of `0 → Y → I0(Y) → I1(Y) → 0` along the map `X → I1(Y)`.
pub fn extension_object(c: &ExtClass) -> Result<ShortExactSeq> {
    let x = c.src();
    let y = c.dst();
    let k = x.field();
    let space = ext_space(x, y)?;
    let slot_map = space.slot_map(c);
    let pb = Pullback {
        x,
        y,
        slots: slot_map,
        hulls: y.torsion().summands().iter().map(|s| s.top() + 1).collect(),
        cutoffs: space.slots.iter().map(|s| s.cutoff).collect(),
        dx_inv: space.dx_inv.clone(),
        dy_inv: space.dy_inv.clone(),
    };
    let mut degs: Vec<i64> = pb.hulls.clone();
    degs.extend(pb.cutoffs.iter().copied());
    degs.extend(x.generator_degrees());
    if let Some((_, top)) = x.torsion().degree_range() {
        degs.push(top + 1);
    }
    let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
        return split_sequence(x, y, c);
    };
    let parts: BTreeMap<i64, Subspace> = (lo..=hi).map(|d| (d, pb.part(d))).collect();

    // the lattice part, with coordinates reordered by type
    let (p2, q2) = y.ranks();
    let (p, q) = x.ranks();
    let rl = p2 + q2 + p + q;
    let order: Vec<usize> = (0..p2)
        .chain(p2 + q2..p2 + q2 + p)
        .chain(p2..p2 + q2)
        .chain(p2 + q2 + p..rl)
        .collect();
    let perm = Mat::from_fn(k, rl, rl, |i, j| if order[i] == j { k.one() } else { k.zero() });
    let lattice_proj = |d: i64, z: &[Scalar]| perm.mul_vec(&pb.lattice_part(d, z));
    let lattice = GradedLattice::from_filtration(k, p2 + p, q2 + q, &(lo..=hi).collect::<Vec<_>>(), |d| {
        let vs: Vec<Vec<Scalar>> = parts[&d].vectors().iter().map(|z| lattice_proj(d, z)).collect();
        Subspace::span(k, rl, &vs)
    });

    // torsion part: elements with vanishing lattice projection
    let mut tors: BTreeMap<i64, Subspace> = BTreeMap::new();
    for d in lo..=hi {
        let basis = parts[&d].vectors();
        let n = pb.ambient(d);
        if basis.is_empty() {
            tors.insert(d, Subspace::zero(k, n));
            continue;
        }
        let proj = Mat::from_cols(k, rl, &basis.iter().map(|z| lattice_proj(d, z)).collect::<Vec<_>>());
        let vs: Vec<Vec<Scalar>> = proj
            .nullspace()
            .iter()
            .map(|coef| {
                let mut acc = vec![k.zero(); n];
                for (a, z) in coef.iter().zip(&basis) {
                    if !a.is_zero() {
                        acc = crate::matrix::vec_add(&acc, &crate::matrix::vec_scale(z, a));
                    }
                }
                acc
            })
            .collect();
        tors.insert(d, Subspace::span(k, n, &vs));
    }
    let module = FiniteGraded {
        field: k,
        lo,
        dims: (lo..=hi).map(|d| tors[&d].dim()).collect(),
        xmaps: (lo..hi)
            .map(|d| {
                let xm = pb.x_map(d);
                let cols: Vec<Vec<Scalar>> = tors[&d]
                    .vectors()
                    .iter()
                    .map(|v| tors[&(d + 1)].coords(&xm.mul_vec(v)).expect("torsion is x-stable"))
                    .collect();
                Mat::from_cols(k, tors[&(d + 1)].dim(), &cols)
            })
            .collect(),
    };
    let mut strings: Vec<(Cyclic, Vec<Scalar>)> = module
        .jordan()
        .into_iter()
        .map(|s| {
            let amb = tors[&s.start]
                .basis()
                .transpose()
                .mul_vec(&s.vector);
            (Cyclic::new(s.len, -s.start), amb)
        })
        .collect();
    strings.sort_by(|a, b| a.0.cmp(&b.0));
    let torsion = TorsionPart::new(strings.iter().map(|s| s.0).collect());
    let middle = CObject::new(k, torsion, lattice)?;

    // string basis of the torsion in each degree, in the order of basis_at
    let string_basis = |d: i64| -> Mat {
        let cols: Vec<Vec<Scalar>> = middle
            .torsion()
            .basis_at(d)
            .iter()
            .map(|&(i, l)| pb.x_pow(middle.torsion().summands()[i].bottom(), &strings[i].1, l as i64))
            .collect();
        Mat::from_cols(k, pb.ambient(d), &cols)
    };
    // lifts of the canonical lattice generators
    let gens = middle.lattice().generators();
    let lifts: Vec<(i64, Vec<Scalar>)> = gens
        .iter()
        .map(|g| {
            let d = g.jump;
            let basis = parts[&d.clamp(lo, hi)].vectors();
            let proj = Mat::from_cols(k, rl, &basis.iter().map(|z| lattice_proj(d, z)).collect::<Vec<_>>());
            let coef = proj.solve(&g.dir).expect("generator lies in the projection");
            let mut acc = vec![k.zero(); pb.ambient(d)];
            for (a, z) in coef.iter().zip(&basis) {
                if !a.is_zero() {
                    acc = crate::matrix::vec_add(&acc, &crate::matrix::vec_scale(z, a));
                }
            }
            (d, acc)
        })
        .collect();
    let dl_inv = middle
        .lattice()
        .generator_matrix()
        .inverse()
        .expect("generators form a basis");
    // an element of the pullback, written in the coordinates of `middle`
    let to_middle = |d: i64, z: &[Scalar]| -> Element {
        let u = lattice_proj(d, z);
        let beta = dl_inv.mul_vec(&u);
        let mut rest = z.to_vec();
        for (b, (j, lift)) in beta.iter().zip(&lifts) {
            if !b.is_zero() {
                let moved = pb.x_pow(*j, lift, d - j);
                rest = crate::matrix::vec_sub(&rest, &crate::matrix::vec_scale(&moved, b));
            }
        }
        let torsion = if middle.torsion().dim_at(d) == 0 {
            debug_assert!(is_zero_vec(&rest));
            Vec::new()
        } else {
            string_basis(d).solve(&rest).expect("remainder is torsion")
        };
        Element {
            degree: d,
            torsion,
            lattice: u,
        }
    };

    // Y → middle
    let r2 = p2 + q2;
    let mut inj_torsion = Vec::new();
    let ydegs = y.generator_degrees();
    let t2 = y.torsion().len();
    for (g, &d) in ydegs.iter().enumerate() {
        let mut z = vec![k.zero(); pb.ambient(d)];
        if g < t2 {
            let pos = pb.hull_coords(d).iter().position(|&j| j == g).expect("generator below its hull");
            z[pos] = k.one();
        } else {
            let (ow, _, _) = pb.offsets(d);
            let dir = y.lattice().generator_matrix().col(g - t2);
            z[ow..ow + r2].clone_from_slice(&dir);
        }
        inj_torsion.push(to_middle(d, &z).torsion);
    }
    let inj_lattice = Mat::from_fn(k, rl, r2, |i, j| if order[i] == j { k.one() } else { k.zero() });
    let inject = Morphism::new(y.clone(), middle.clone(), inj_lattice, inj_torsion)?;

    // middle → X
    let mut sur_torsion = Vec::new();
    for (i, c) in middle.torsion().summands().iter().enumerate() {
        let (_, ox, ov) = pb.offsets(c.bottom());
        sur_torsion.push(strings[i].1[ox..ov].to_vec());
    }
    for (d, lift) in &lifts {
        let (_, ox, ov) = pb.offsets(*d);
        sur_torsion.push(lift[ox..ov].to_vec());
    }
    let sur_lattice = Mat::from_fn(k, p + q, rl, |i, j| {
        if order[j] == r2 + i {
            k.one()
        } else {
            k.zero()
        }
    });
    let surject = Morphism::new(middle.clone(), x.clone(), sur_lattice, sur_torsion)?;
    Ok(ShortExactSeq {
        left: y.clone(),
        middle,
        right: x.clone(),
        inject,
        surject,
        cls: c.clone(),
    })
}

fn split_sequence(x: &CObject, y: &CObject, c: &ExtClass) -> Result<ShortExactSeq> {
    // both objects are zero
    Ok(ShortExactSeq {
        left: y.clone(),
        middle: CObject::zero(x.field()),
        right: x.clone(),
        inject: Morphism::zero(y, &CObject::zero(x.field())),
        surject: Morphism::zero(&CObject::zero(x.field()), x),
        cls: c.clone(),
    })
}

/// An almost split sequence ending in an indecomposable, with labels.
#[derive(Clone, Debug)]
pub struct AlmostSplit {
    pub seq: ShortExactSeq,
    pub left: IndecLabel,
    pub middle: Vec<IndecLabel>,
    pub right: IndecLabel,
}

impl fmt::Display for AlmostSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "0 → {} → {} → {} → 0",
            self.left,
            format_sum(&self.middle),
            self.right
        )
    }
}

/// The almost split sequence `0 → VX → E → X → 0`, from the first basis
/// vector of the one-dimensional socle `Ext¹(X, VX)`.
pub fn almost_split(x: &CObject) -> Result<AlmostSplit> {
    if x.is_zero() {
        return Err(Error::NotIndecomposable("zero object".into()));
    }
    let right = identify(x).map_err(|_| Error::NotIndecomposable(x.to_string()))?;
    let vx = x.serre_twist();
    let ext = ext_space(x, &vx)?;
    let Some(cls) = ext.basis().first() else {
        return Err(Error::NotIndecomposable(format!("Ext¹({x}, V{x}) vanishes")));
    };
    let seq = extension_object(cls)?;
    let middle = decompose(&seq.middle)?.factors;
    Ok(AlmostSplit {
        left: right.serre_twist(),
        middle,
        right,
        seq,
    })
}

/// A finite piece of the Auslander–Reiten quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverWindow {
    pub nodes: Vec<IndecLabel>,
    /// Arrows `(from, to)`, with multiplicity.
    pub arrows: Vec<(IndecLabel, IndecLabel)>,
    /// `τ(node)` for nodes whose translate lies in the window.
    pub translation: Vec<(IndecLabel, IndecLabel)>,
    /// Arrows into window nodes whose source lies outside.
    pub boundary_dropped: usize,
}

/// Nodes `F^i_{0a}`, `F_{ma}` (`m ≤ m_max`) and `T(n,a)` (`n ≤ n_max`) for
/// `a_min ≤ a ≤ a_max`; arrows read off the almost split sequences ending at
/// each node.
pub fn quiver_window(m_max: u32, a_min: i64, a_max: i64, n_max: u32) -> Result<QuiverWindow> {
    quiver_window_over(crate::FieldSpec::Rationals, m_max, a_min, a_max, n_max)
}

pub fn quiver_window_over(
    field: crate::FieldSpec,
    m_max: u32,
    a_min: i64,
    a_max: i64,
    n_max: u32,
) -> Result<QuiverWindow> {
    if a_max < a_min + 1 {
        return Err(Error::WindowTooSmall(format!(
            "a-range [{a_min},{a_max}] holds no mesh"
        )));
    }
    if m_max == 0 && n_max < 2 {
        return Err(Error::WindowTooSmall("no row beyond the rank-one rows".into()));
    }
    let mut nodes = Vec::new();
    for a in a_min..=a_max {
        for ty in 0..2 {
            nodes.push(IndecLabel::RankOne { ty, a });
        }
        for m in 1..=m_max {
            nodes.push(IndecLabel::RankTwo { m, a });
        }
        for n in 1..=n_max {
            nodes.push(IndecLabel::Wing { n, a });
        }
    }
    nodes.sort();
    let mut arrows = Vec::new();
    let mut translation = Vec::new();
    let mut boundary_dropped = 0;
    for &node in &nodes {
        let seq = almost_split(&node.object(field))?;
        for &z in &seq.middle {
            if nodes.binary_search(&z).is_ok() {
                arrows.push((z, node));
            } else {
                boundary_dropped += 1;
            }
        }
        if nodes.binary_search(&seq.left).is_ok() {
            translation.push((node, seq.left));
        }
    }
    arrows.sort();
    Ok(QuiverWindow {
        nodes,
        arrows,
        translation,
        boundary_dropped,
    })
}

/// DOT rendering: solid arrows, dashed `τ` edges, stable order.
pub fn dot_export(w: &QuiverWindow) -> String {
    let mut out = String::from("digraph ar_quiver {\n");
    for n in &w.nodes {
        out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", n.node_id(), n));
    }
    for (a, b) in &w.arrows {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", a.node_id(), b.node_id()));
    }
    for (a, b) in &w.translation {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style=dashed];\n",
            a.node_id(),
            b.node_id()
        ));
    }
    out.push_str("}\n");
    out
}

/// JSON export, schema version 1:
/// `{"schema_version":1,"nodes":[label],"arrows":[{"from","to"}],
/// "translation":[{"from","to"}],"boundary_dropped":n}`.
pub fn json_export(w: &QuiverWindow) -> serde_json::Value {
    let pair = |(a, b): &(IndecLabel, IndecLabel)| serde_json::json!({"from": a.to_string(), "to": b.to_string()});
    serde_json::json!({
        "schema_version": 1,
        "nodes": w.nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "arrows": w.arrows.iter().map(pair).collect::<Vec<_>>(),
        "translation": w.translation.iter().map(pair).collect::<Vec<_>>(),
        "boundary_dropped": w.boundary_dropped,
    })
}

/// Default search bound for [`no_proj_no_inj_witness`].
pub const WITNESS_BOUND: i64 = 16;

/// Least `n` with `Ext¹(X, σX(-n)) ≠ 0` (so `X` is not projective) and
/// least `n` with `Ext¹(σX(n), X) ≠ 0` (so `X` is not injective).
pub fn no_proj_no_inj_witness(x: &CObject) -> Result<(i64, i64)> {
    let sx = x.sigma();
    let find = |f: &dyn Fn(i64) -> Result<bool>| -> Result<i64> {
        for n in 0..=WITNESS_BOUND {
            if f(n)? {
                return Ok(n);
            }
        }
        Err(Error::WitnessNotFound(WITNESS_BOUND))
    };
    let epi = find(&|n| Ok(ext_space(x, &sx.shift(-n))?.dim() > 0))?;
    let mono = find(&|n| Ok(ext_space(&sx.shift(n), x)?.dim() > 0))?;
    Ok((epi, mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::is_isomorphism;
    use crate::scalar::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn labels(s: &str, seq: &AlmostSplit) {
        assert_eq!(seq.to_string(), s);
    }

    #[test]
    fn lattice_extensions() {
        let k = q();
        let x = CObject::rank_one(k, 0, 2);
        let y = CObject::rank_one(k, 1, 1);
        let e = ext_space(&x, &y).unwrap();
        let seq = extension_object(&e.basis()[0]).unwrap();
        assert!(seq.is_exact());
        assert_eq!(format_sum(&decompose(&seq.middle).unwrap().factors), "F[1,2]");
        let split = extension_object(&e.zero_class()).unwrap();
        assert!(split.is_exact());
        assert_eq!(format_sum(&decompose(&split.middle).unwrap().factors), "F1[1] + F0[2]");

        let x = CObject::rank_two(k, 2, 1);
        let e = ext_space(&x, &CObject::rank_two(k, 2, 0)).unwrap();
        let nz = e.basis().iter().find(|c| !c.is_zero()).unwrap();
        let seq = extension_object(nz).unwrap();
        assert!(seq.is_exact());
        assert_eq!(format_sum(&decompose(&seq.middle).unwrap().factors), "F[1,0] + F[3,1]");
    }

    #[test]
    fn mesh_degrees_balance() {
        let w = quiver_window(4, -1, 3, 3).unwrap();
        let inside = |l: &IndecLabel| w.nodes.contains(l);
        for x in &w.nodes {
            let inv = match *x {
                IndecLabel::RankOne { ty, a } => IndecLabel::RankOne { ty: 1 - ty, a: a + 1 },
                IndecLabel::RankTwo { m, a } => IndecLabel::RankTwo { m, a: a + 1 },
                IndecLabel::Wing { n, a } => IndecLabel::Wing { n, a: a + 1 },
            };
            let max_row = match *x {
                IndecLabel::RankTwo { m, .. } => m == 4,
                IndecLabel::Wing { n, .. } => n == 3,
                _ => false,
            };
            if !inside(&inv) || !inside(&x.serre_twist()) || max_row {
                continue;
            }
            let indeg = w.arrows.iter().filter(|(_, t)| t == x).count();
            let outdeg = w.arrows.iter().filter(|(f, _)| f == x).count();
            assert_eq!(indeg, outdeg, "{x}");
        }
        // the wing: arrows change n by one, translation keeps it
        for (a, b) in &w.arrows {
            if let (IndecLabel::Wing { n: n1, .. }, IndecLabel::Wing { n: n2, .. }) = (a, b) {
                assert_eq!(n1.abs_diff(*n2), 1);
            } else {
                assert!(!a.is_torsion() && !b.is_torsion());
            }
        }
        for (a, b) in &w.translation {
            assert_eq!(*b, a.serre_twist());
        }
        assert!(matches!(quiver_window(0, 0, 2, 1), Err(Error::WindowTooSmall(_))));
        assert!(quiver_window(0, 0, 2, 2).is_ok());
    }

    #[test]
    fn torsion_sequences_split_along_lattice_maps() {
        use crate::hom_ext::{hom_space, yoneda_compose, Yoneda};
        let k = q();
        for (n, a) in [(1, 0), (2, 1), (3, -1)] {
            let t = CObject::cyclic(k, n, a);
            let s = almost_split(&t).unwrap();
            for f in [CObject::rank_two(k, 2, 1), CObject::rank_one(k, 0, 0), CObject::rank_one(k, 1, 2)] {
                for h in hom_space(&f, &t).unwrap().basis() {
                    let Yoneda::Ext(c) = yoneda_compose(&Yoneda::Ext(s.seq.cls.clone()), &Yoneda::Hom(h.clone())).unwrap()
                    else {
                        unreachable!()
                    };
                    assert!(c.is_zero(), "T[{n},{a}] pulled back to {f}");
                }
            }
        }
    }

    #[test]
    fn almost_split_examples() {
        let k = q();
        labels("0 → F[2,0] → F[1,0] + F[3,1] → F[2,1] → 0", &almost_split(&CObject::rank_two(k, 2, 1)).unwrap());
        labels("0 → F[1,-1] → F0[-1] + F1[-1] + F[2,0] → F[1,0] → 0", &almost_split(&CObject::rank_two(k, 1, 0)).unwrap());
        labels("0 → F1[-1] → F[1,0] → F0[0] → 0", &almost_split(&CObject::rank_one(k, 0, 0)).unwrap());
        labels("0 → T[3,0] → T[2,0] + T[4,1] → T[3,1] → 0", &almost_split(&CObject::cyclic(k, 3, 1)).unwrap());
        labels("0 → T[1,-1] → T[2,0] → T[1,0] → 0", &almost_split(&CObject::cyclic(k, 1, 0)).unwrap());
    }

    #[test]
    fn torsion_extension_into_lattice() {
        let k = q();
        let t = CObject::cyclic(k, 1, 0);
        let f = CObject::rank_two(k, 1, -1);
        let e = ext_space(&t, &f).unwrap();
        let seq = extension_object(&e.basis()[0]).unwrap();
        assert!(seq.is_exact());
        assert!(seq.middle.is_torsion_free());
        let iso = decompose(&seq.middle).unwrap().iso;
        assert!(is_isomorphism(&iso));
    }

    #[test]
    fn mixed_extension() {
        let k = q();
        let x = CObject::direct_sum(k, &[&CObject::rank_two(k, 1, 0), &CObject::cyclic(k, 2, 0)]).unwrap();
        let y = CObject::direct_sum(k, &[&CObject::rank_one(k, 1, -1), &CObject::cyclic(k, 2, -1)]).unwrap();
        let e = ext_space(&x, &y).unwrap();
        assert!(e.dim() > 0);
        for c in e.basis() {
            assert!(extension_object(c).unwrap().is_exact());
        }
    }

    #[test]
    fn quiver_window_small() {
        let w = quiver_window(2, 0, 1, 0).unwrap();
        assert!(w.arrows.contains(&(IndecLabel::RankTwo { m: 1, a: 0 }, IndecLabel::RankOne { ty: 0, a: 0 })));
        let dot = dot_export(&w);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"F_1_0\" -> \"F0_0\";"));
        assert!(dot.contains("[style=dashed]"));
        assert!(matches!(quiver_window(2, 0, 0, 1), Err(Error::WindowTooSmall(_))));
        let empty = QuiverWindow {
            nodes: vec![],
            arrows: vec![],
            translation: vec![],
            boundary_dropped: 0,
        };
        assert_eq!(dot_export(&empty), "digraph ar_quiver {\n}\n");
    }

    #[test]
    fn window_arrows_match_mesh() {
        use IndecLabel::{RankOne as R1, RankTwo as R2};
        let w = quiver_window(4, -1, 3, 0).unwrap();
        let expected = [
            (R2 { m: 4, a: 1 }, R2 { m: 3, a: 1 }),
            (R2 { m: 4, a: 2 }, R2 { m: 3, a: 2 }),
            (R2 { m: 3, a: 1 }, R2 { m: 2, a: 1 }),
            (R2 { m: 3, a: 1 }, R2 { m: 4, a: 2 }),
            (R2 { m: 3, a: 2 }, R2 { m: 2, a: 2 }),
            (R2 { m: 3, a: 2 }, R2 { m: 4, a: 3 }),
            (R2 { m: 2, a: 0 }, R2 { m: 3, a: 1 }),
            (R2 { m: 2, a: 0 }, R2 { m: 1, a: 0 }),
            (R2 { m: 2, a: 1 }, R2 { m: 3, a: 2 }),
            (R2 { m: 2, a: 1 }, R2 { m: 1, a: 1 }),
            (R2 { m: 1, a: 0 }, R1 { ty: 1, a: 0 }),
            (R2 { m: 1, a: 0 }, R1 { ty: 0, a: 0 }),
            (R2 { m: 1, a: 0 }, R2 { m: 2, a: 1 }),
            (R2 { m: 1, a: 1 }, R1 { ty: 0, a: 1 }),
            (R2 { m: 1, a: 1 }, R1 { ty: 1, a: 1 }),
            (R2 { m: 1, a: 1 }, R2 { m: 2, a: 2 }),
            (R1 { ty: 0, a: -1 }, R2 { m: 1, a: 0 }),
            (R1 { ty: 1, a: 0 }, R2 { m: 1, a: 1 }),
            (R1 { ty: 1, a: -1 }, R2 { m: 1, a: 0 }),
            (R1 { ty: 0, a: 0 }, R2 { m: 1, a: 1 }),
        ];
        for e in &expected {
            assert!(w.arrows.contains(e), "missing {} -> {}", e.0, e.1);
        }
        assert!(w.translation.contains(&(R2 { m: 2, a: 1 }, R2 { m: 2, a: 0 })));
        let json = json_export(&w);
        assert_eq!(json["schema_version"], 1);
    }

    #[test]
    fn witnesses() {
        let k = q();
        assert_eq!(no_proj_no_inj_witness(&CObject::rank_one(k, 0, 0)).unwrap().0, 1);
        let (e, m) = no_proj_no_inj_witness(&CObject::rank_two(k, 1, 0)).unwrap();
        assert!(e <= 2 && m <= 2);
        let (e, m) = no_proj_no_inj_witness(&CObject::cyclic(k, 2, 0)).unwrap();
        assert!(e <= 3 && m <= 3);
    }
}
