//! Krull–Schmidt decomposition, identification of indecomposables, and
//! rank-one filtrations of lattices.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hom_ext::{hom_space, HomSpace, Morphism};
use crate::lattice::GradedLattice;
use crate::matrix::{Mat, Subspace};
use crate::objects::{CObject, Cyclic, TorsionPart};
use crate::scalar::{FieldSpec, Scalar};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Names of the indecomposable objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndecLabel {
    /// `F^ty_{0a}`.
    RankOne { ty: u8, a: i64 },
    /// `F_{ma}`, `m ≥ 1`.
    RankTwo { m: u32, a: i64 },
    /// `T(n, a)`.
    Wing { n: u32, a: i64 },
}

impl IndecLabel {
    fn key(&self) -> (u8, u32, i64, u8) {
        match *self {
            IndecLabel::RankOne { ty, a } => (0, 0, a, ty),
            IndecLabel::RankTwo { m, a } => (1, m, a, 0),
            IndecLabel::Wing { n, a } => (2, n, a, 0),
        }
    }

    pub fn object(&self, field: FieldSpec) -> CObject {
        match *self {
            IndecLabel::RankOne { ty, a } => CObject::rank_one(field, ty, a),
            IndecLabel::RankTwo { m, a } => CObject::rank_two(field, m, a),
            IndecLabel::Wing { n, a } => CObject::cyclic(field, n, a),
        }
    }

    /// The label of `V` applied to this object.
    pub fn serre_twist(&self) -> IndecLabel {
        match *self {
            IndecLabel::RankOne { ty, a } => IndecLabel::RankOne { ty: 1 - ty, a: a - 1 },
            IndecLabel::RankTwo { m, a } => IndecLabel::RankTwo { m, a: a - 1 },
            IndecLabel::Wing { n, a } => IndecLabel::Wing { n, a: a - 1 },
        }
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, IndecLabel::Wing { .. })
    }

    /// Node identifier used in graph exports.
    pub fn node_id(&self) -> String {
        match *self {
            IndecLabel::RankOne { ty, a } => format!("F{ty}_{a}"),
            IndecLabel::RankTwo { m, a } => format!("F_{m}_{a}"),
            IndecLabel::Wing { n, a } => format!("T_{n}_{a}"),
        }
    }
}

impl Ord for IndecLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for IndecLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndecLabel::RankOne { ty, a } => write!(f, "F{ty}[{a}]"),
            IndecLabel::RankTwo { m, a } => write!(f, "F[{m},{a}]"),
            IndecLabel::Wing { n, a } => write!(f, "T[{n},{a}]"),
        }
    }
}

impl Serialize for IndecLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Formats a sum of labels, `0` when empty.
pub fn format_sum(labels: &[IndecLabel]) -> String {
    if labels.is_empty() {
        "0".to_string()
    } else {
        labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" + ")
    }
}

/// Direct sum of labelled indecomposables, in the given order.
pub fn sum_of_labels(field: FieldSpec, labels: &[IndecLabel]) -> CObject {
    let objs: Vec<CObject> = labels.iter().map(|l| l.object(field)).collect();
    let refs: Vec<&CObject> = objs.iter().collect();
    CObject::direct_sum(field, &refs).expect("labels share the field")
}

#[derive(Clone, Debug)]
pub struct EndRing {
    pub basis: Vec<Morphism>,
    /// `table[i][j]` = coordinates of `basis[i] ∘ basis[j]`.
    pub table: Vec<Vec<Vec<Scalar>>>,
}

impl EndRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn end_ring(x: &CObject) -> Result<EndRing> {
    let h = hom_space(x, x)?;
    let mut table = Vec::new();
    for a in h.basis() {
        let mut row = Vec::new();
        for b in h.basis() {
            let ab = a.compose(b)?;
            row.push(h.coords(&ab).expect("endomorphisms compose"));
        }
        table.push(row);
    }
    Ok(EndRing {
        basis: h.basis().to_vec(),
        table,
    })
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Sorted factor labels.
    pub factors: Vec<IndecLabel>,
    /// Isomorphism from the direct sum of the factors (in order) to the input.
    pub iso: Morphism,
}

/// Label of an indecomposable, read off from its lattice invariants.
pub fn identify(x: &CObject) -> Result<IndecLabel> {
    let unrecognized = || Error::UnrecognizedShape(x.to_string());
    if x.is_torsion() {
        return match x.torsion().summands() {
            [c] => Ok(IndecLabel::Wing { n: c.n, a: c.a }),
            _ => Err(unrecognized()),
        };
    }
    if !x.is_torsion_free() {
        return Err(unrecognized());
    }
    let l = x.lattice();
    match (l.p(), l.q()) {
        (1, 0) | (0, 1) => Ok(IndecLabel::RankOne {
            ty: l.coord_type(0),
            a: -l.min_jump().expect("rank one"),
        }),
        (1, 1) => {
            let jumps = l.distinct_jumps();
            if jumps.len() != 2 {
                return Err(unrecognized());
            }
            let low = l.subspace_at(jumps[0]).vectors();
            if low[0].iter().any(Scalar::is_zero) {
                return Err(unrecognized());
            }
            Ok(IndecLabel::RankTwo {
                m: (jumps[1] - jumps[0]) as u32,
                a: -jumps[0],
            })
        }
        _ => Err(unrecognized()),
    }
}

fn candidates(l: &GradedLattice) -> Vec<IndecLabel> {
    let jumps = l.distinct_jumps();
    let mut out = Vec::new();
    if l.p() > 0 && l.q() > 0 {
        for &lo in &jumps {
            for &hi in jumps.iter().filter(|&&h| h > lo) {
                out.push(IndecLabel::RankTwo {
                    m: (hi - lo) as u32,
                    a: -lo,
                });
            }
        }
    }
    for &e in &jumps {
        for ty in 0..2u8 {
            if (ty == 0 && l.p() > 0) || (ty == 1 && l.q() > 0) {
                out.push(IndecLabel::RankOne { ty, a: -e });
            }
        }
    }
    out
}

fn random_combination(h: &HomSpace, rng: &mut ChaCha8Rng) -> Morphism {
    let k = h.src().field();
    let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| k.from_i64(rng.gen_range(-4..=4))).collect();
    h.combination(&coeffs)
}

/// A pair `f: C → K`, `g: K → C` with `g ∘ f = λ·id`, `λ ≠ 0`.
fn split_pair(c: &CObject, k_obj: &CObject, rng: &mut ChaCha8Rng) -> Result<Option<(Mat, Mat, Scalar)>> {
    let into = hom_space(c, k_obj)?;
    let back = hom_space(k_obj, c)?;
    if into.dim() == 0 || back.dim() == 0 {
        return Ok(None);
    }
    let scalar_of = |f: &Morphism, g: &Morphism| -> Scalar { g.lattice().mul(f.lattice())[(0, 0)].clone() };
    for _ in 0..4 {
        let f = random_combination(&into, rng);
        let g = random_combination(&back, rng);
        let lam = scalar_of(&f, &g);
        if !lam.is_zero() {
            return Ok(Some((f.lattice().clone(), g.lattice().clone(), lam)));
        }
    }
    for f in into.basis() {
        for g in back.basis() {
            let lam = scalar_of(f, g);
            if !lam.is_zero() {
                return Ok(Some((f.lattice().clone(), g.lattice().clone(), lam)));
            }
        }
    }
    Ok(None)
}

/// Basis of the kernel of a block-diagonal matrix, type-0 vectors first.
fn typed_kernel(e: &Mat, p: usize, q: usize) -> (Mat, usize, usize) {
    let k = e.field();
    let r = p + q;
    let mut cols = Vec::new();
    let e00 = e.submatrix(0..p, 0..p);
    let k0 = if p == 0 { Vec::new() } else { e00.nullspace() };
    for v in &k0 {
        let mut full = v.clone();
        full.resize(r, k.zero());
        cols.push(full);
    }
    let e11 = e.submatrix(p..r, p..r);
    let k1 = if q == 0 { Vec::new() } else { e11.nullspace() };
    for v in &k1 {
        let mut full = vec![k.zero(); p];
        full.extend(v.iter().cloned());
        cols.push(full);
    }
    (Mat::from_cols(k, r, &cols), k0.len(), k1.len())
}

/// Splits a lattice into indecomposables; returns labels with their
/// embeddings (columns in the coordinates of `l`).
fn split_lattice(l: &GradedLattice, seed: u64) -> Result<Vec<(IndecLabel, Mat)>> {
    let field = l.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut rest = l.clone();
    let mut basis = Mat::identity(field, l.rank());
    while rest.rank() > 0 {
        let rest_obj = CObject::from_lattice(rest.clone());
        let mut found = None;
        for cand in candidates(&rest) {
            let c = cand.object(field);
            if let Some((f, g, lam)) = split_pair(&c, &rest_obj, &mut rng)? {
                found = Some((cand, f, g, lam));
                break;
            }
        }
        let Some((cand, f, g, lam)) = found else {
            return Err(Error::DecompositionFailure(rest.to_string()));
        };
        let idem = f.mul(&g).scale(&lam.inv().expect("nonzero"));
        let (kernel, p0, q0) = typed_kernel(&idem, rest.p(), rest.q());
        out.push((cand, basis.mul(&f)));
        rest = rest.restrict(&kernel, p0, q0);
        basis = basis.mul(&kernel);
    }
    Ok(out)
}

/// Decomposition with the default seed.
pub fn decompose(x: &CObject) -> Result<Decomposition> {
    decompose_with_seed(x, DEFAULT_SEED)
}

pub fn decompose_with_seed(x: &CObject, seed: u64) -> Result<Decomposition> {
    let field = x.field();
    let mut parts: Vec<(IndecLabel, Option<Mat>)> = x
        .torsion()
        .summands()
        .iter()
        .map(|c| (IndecLabel::Wing { n: c.n, a: c.a }, None))
        .collect();
    for (label, emb) in split_lattice(x.lattice(), seed)? {
        parts.push((label, Some(emb)));
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let factors: Vec<IndecLabel> = parts.iter().map(|p| p.0).collect();
    let sum = sum_of_labels(field, &factors);
    let lats: Vec<GradedLattice> = factors.iter().map(|l| l.object(field).lattice().clone()).collect();
    let lat_refs: Vec<&GradedLattice> = lats.iter().collect();
    let (_, maps) = GradedLattice::direct_sum(field, &lat_refs);
    let r = x.lattice().rank();
    let mut a = Mat::zeros(field, r, r);
    for ((_, emb), map) in parts.iter().zip(&maps) {
        if let Some(emb) = emb {
            for (j, &col) in map.iter().enumerate() {
                for i in 0..r {
                    a[(i, col)] = emb[(i, j)].clone();
                }
            }
        }
    }
    let mut torsion = Vec::new();
    for (i, c) in sum.torsion().summands().iter().enumerate() {
        let basis = x.torsion().basis_at(c.bottom());
        torsion.push(basis.iter().map(|&(j, _)| if j == i { field.one() } else { field.zero() }).collect());
    }
    for d in sum.lattice().jumps() {
        torsion.push(vec![field.zero(); x.torsion().dim_at(d)]);
    }
    let iso = Morphism::new(sum, x.clone(), a, torsion)?;
    Ok(Decomposition { factors, iso })
}

/// Whether a morphism is an isomorphism: its lattice matrix is invertible
/// and carries the source lattice onto the target, and the torsion parts
/// correspond.
pub fn is_isomorphism(f: &Morphism) -> bool {
    let (x, y) = (f.src(), f.dst());
    if x.ranks() != y.ranks() || x.torsion() != y.torsion() {
        return false;
    }
    if f.lattice().inverse().is_none() {
        return false;
    }
    let (p, q) = y.ranks();
    if x.lattice().transform(f.lattice(), p, q) != *y.lattice() {
        return false;
    }
    // torsion: the induced map on each degree must be bijective
    let Some((lo, hi)) = y.torsion().degree_range() else {
        return true;
    };
    let k = x.field();
    (lo..=hi).all(|d| {
        let basis = x.torsion().basis_at(d);
        let images: Vec<Vec<Scalar>> = (0..basis.len())
            .map(|i| {
                let mut coords = vec![k.zero(); basis.len()];
                coords[i] = k.one();
                f.eval(&crate::objects::Element {
                    degree: d,
                    torsion: coords,
                    lattice: vec![k.zero(); x.lattice().rank()],
                })
                .torsion
            })
            .collect();
        Subspace::span(k, y.torsion().dim_at(d), &images).is_full()
    })
}

/// One step of a rank-one filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    /// The subobject `F_i`, in its own coordinates.
    pub sub: CObject,
    /// `F_i / F_{i-1}`.
    pub factor: IndecLabel,
}

/// A chain `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_r = F` with rank-one subquotients, listed
/// from `F_1` up. Each step projects onto the last ambient coordinate
/// (type-1 coordinates first) and passes to the kernel.
pub fn filtration(f: &CObject) -> Result<Vec<FiltrationStep>> {
    if !f.is_torsion_free() {
        return Err(Error::NotTorsionFree);
    }
    let k = f.field();
    let mut steps = Vec::new();
    let mut cur = f.lattice().clone();
    while cur.rank() > 0 {
        let r = cur.rank();
        let c = r - 1;
        let ty = cur.coord_type(c);
        let start = cur
            .distinct_jumps()
            .into_iter()
            .find(|&e| cur.subspace_at(e).vectors().iter().any(|v| !v[c].is_zero()))
            .expect("full rank lattice reaches every coordinate");
        steps.push(FiltrationStep {
            sub: CObject::from_lattice(cur.clone()),
            factor: IndecLabel::RankOne { ty, a: -start },
        });
        let keep = Mat::from_fn(k, r, r - 1, |i, j| if i == j { k.one() } else { k.zero() });
        let (p, q) = if ty == 1 { (cur.p(), cur.q() - 1) } else { (cur.p() - 1, 0) };
        cur = cur.restrict(&keep, p, q);
    }
    steps.reverse();
    Ok(steps)
}

/// Torsion part as labels.
pub fn torsion_labels(t: &TorsionPart) -> Vec<IndecLabel> {
    t.summands()
        .iter()
        .map(|&Cyclic { n, a }| IndecLabel::Wing { n, a })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Generator;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn label_order_and_display() {
        let mut v = vec![
            IndecLabel::Wing { n: 1, a: 0 },
            IndecLabel::RankTwo { m: 2, a: -1 },
            IndecLabel::RankOne { ty: 1, a: 0 },
            IndecLabel::RankOne { ty: 0, a: 0 },
            IndecLabel::RankTwo { m: 1, a: 3 },
        ];
        v.sort();
        assert_eq!(format_sum(&v), "F0[0] + F1[0] + F[1,3] + F[2,-1] + T[1,0]");
    }

    #[test]
    fn end_ring_examples() {
        let k = q();
        assert_eq!(end_ring(&CObject::rank_two(k, 3, 0)).unwrap().dim(), 1);
        let x = CObject::direct_sum(k, &[&CObject::rank_one(k, 0, 0), &CObject::rank_one(k, 0, 1)]).unwrap();
        assert_eq!(end_ring(&x).unwrap().dim(), 3);
        assert_eq!(end_ring(&CObject::cyclic(k, 3, 2)).unwrap().dim(), 1);
    }

    #[test]
    fn identify_examples() {
        let k = q();
        let l = GradedLattice::canonicalize(
            k,
            1,
            1,
            &[Generator::new(0, vec![k.one(), k.one()]), Generator::new(2, vec![k.one(), k.zero()])],
        )
        .unwrap();
        assert_eq!(identify(&CObject::from_lattice(l)).unwrap(), IndecLabel::RankTwo { m: 2, a: 0 });
        let l = GradedLattice::canonicalize(k, 0, 1, &[Generator::new(-3, vec![k.one()])]).unwrap();
        assert_eq!(identify(&CObject::from_lattice(l)).unwrap(), IndecLabel::RankOne { ty: 1, a: 3 });
        assert_eq!(identify(&CObject::cyclic(k, 4, -1)).unwrap(), IndecLabel::Wing { n: 4, a: -1 });
        let split = CObject::direct_sum(k, &[&CObject::rank_one(k, 0, 0), &CObject::rank_one(k, 1, 0)]).unwrap();
        assert!(matches!(identify(&split), Err(Error::UnrecognizedShape(_))));
    }

    #[test]
    fn decompose_examples() {
        let k = q();
        let d = decompose(&CObject::rank_two(k, 2, 1)).unwrap();
        assert_eq!(d.factors, vec![IndecLabel::RankTwo { m: 2, a: 1 }]);
        let x = CObject::direct_sum(
            k,
            &[&CObject::rank_one(k, 0, 0), &CObject::rank_one(k, 1, 2), &CObject::cyclic(k, 2, 1)],
        )
        .unwrap();
        let d = decompose(&x).unwrap();
        assert_eq!(format_sum(&d.factors), "F0[0] + F1[2] + T[2,1]");
        assert!(is_isomorphism(&d.iso));
    }

    #[test]
    fn decompose_a_disguised_sum() {
        // F_{1,0} ⊕ F_{3,1} written in mixed coordinates
        let k = q();
        let x = CObject::direct_sum(k, &[&CObject::rank_two(k, 1, 0), &CObject::rank_two(k, 3, 1)]).unwrap();
        let g = Mat::from_i64(k, &[&[1, 2, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 3, 1]]);
        let y = CObject::from_lattice(x.lattice().transform(&g, 2, 2));
        let d = decompose(&y).unwrap();
        assert_eq!(format_sum(&d.factors), "F[1,0] + F[3,1]");
        assert!(is_isomorphism(&d.iso));
    }

    #[test]
    fn filtration_examples() {
        let k = q();
        let steps = filtration(&CObject::rank_two(k, 3, 0)).unwrap();
        let labels: Vec<IndecLabel> = steps.iter().map(|s| s.factor).collect();
        assert_eq!(
            labels,
            vec![IndecLabel::RankOne { ty: 0, a: -3 }, IndecLabel::RankOne { ty: 1, a: 0 }]
        );
        let steps = filtration(&CObject::rank_one(k, 0, 2)).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].factor, IndecLabel::RankOne { ty: 0, a: 2 });
        let x = CObject::direct_sum(k, &[&CObject::rank_one(k, 0, 0), &CObject::rank_one(k, 1, 1)]).unwrap();
        let mut labels: Vec<IndecLabel> = filtration(&x).unwrap().iter().map(|s| s.factor).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![IndecLabel::RankOne { ty: 0, a: 0 }, IndecLabel::RankOne { ty: 1, a: 1 }]
        );
    }
}
