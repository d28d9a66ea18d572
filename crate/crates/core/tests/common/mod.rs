//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use zdinf_core::{CObject, FieldSpec, IndecLabel, Mat, Scalar};

/// A catalog indecomposable as a representation of the graded line in
/// degrees `lo..=hi`, built straight from its label.
pub struct TruncatedRep {
    pub lo: i64,
    pub hi: i64,
    /// Type of each ambient coordinate of the lattice part.
    pub types: Vec<u8>,
    /// Lattice basis in each degree, as ambient vectors.
    pub lattice: Vec<Vec<Vec<i64>>>,
    /// Dimension of the torsion part in each degree (a single string).
    pub torsion: Vec<usize>,
}

impl TruncatedRep {
    pub fn new(label: IndecLabel, lo: i64, hi: i64) -> Self {
        let degs = lo..=hi;
        let (types, lattice, torsion): (Vec<u8>, Vec<Vec<Vec<i64>>>, Vec<usize>) = match label {
            IndecLabel::RankOne { ty, a } => (
                vec![ty],
                degs.map(|d| if d >= -a { vec![vec![1]] } else { vec![] }).collect(),
                vec![0; (hi - lo + 1) as usize],
            ),
            IndecLabel::RankTwo { m, a } => (
                vec![0, 1],
                degs.map(|d| {
                    if d < -a {
                        vec![]
                    } else if d < m as i64 - a {
                        vec![vec![1, 1]]
                    } else {
                        vec![vec![1, 0], vec![0, 1]]
                    }
                })
                .collect(),
                vec![0; (hi - lo + 1) as usize],
            ),
            IndecLabel::Wing { n, a } => (
                vec![],
                degs.clone().map(|_| vec![]).collect(),
                degs.map(|d| usize::from(d >= -a && d < -a + n as i64)).collect(),
            ),
        };
        TruncatedRep {
            lo,
            hi,
            types,
            lattice,
            torsion,
        }
    }

    fn idx(&self, d: i64) -> usize {
        (d - self.lo) as usize
    }

    pub fn dim(&self, d: i64) -> usize {
        self.torsion[self.idx(d)] + self.lattice[self.idx(d)].len()
    }

    /// Matrix of `x` from degree `d` to `d + 1` (torsion coordinates first).
    pub fn x_map(&self, d: i64) -> Vec<Vec<i64>> {
        let (i, j) = (self.idx(d), self.idx(d + 1));
        let mut m = vec![vec![0; self.dim(d)]; self.dim(d + 1)];
        if self.torsion[i] == 1 && self.torsion[j] == 1 {
            m[0][0] = 1;
        }
        let (t0, t1) = (self.torsion[i], self.torsion[j]);
        let (cur, next) = (&self.lattice[i], &self.lattice[j]);
        for (c, v) in cur.iter().enumerate() {
            if cur == next {
                m[t1 + c][t0 + c] = 1;
            } else {
                // the next basis is the standard one
                assert_eq!(next.len(), v.len());
                for (r, &e) in v.iter().enumerate() {
                    m[t1 + r][t0 + c] = e;
                }
            }
        }
        m
    }
}

/// `dim Hom(X, Y)` as the space of degreewise maps on the window commuting
/// with `x` whose lattice part in the top degree respects the types.
pub fn oracle_hom_dim(field: FieldSpec, x: IndecLabel, y: IndecLabel, lo: i64, hi: i64) -> usize {
    let (rx, ry) = (TruncatedRep::new(x, lo, hi), TruncatedRep::new(y, lo, hi));
    // unknown offsets: phi_d is dim_y(d) x dim_x(d), row-major
    let mut offs = Vec::new();
    let mut n = 0;
    for d in lo..=hi {
        offs.push(n);
        n += rx.dim(d) * ry.dim(d);
    }
    let var = |d: i64, r: usize, c: usize| offs[(d - lo) as usize] + r * rx.dim(d) + c;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for d in lo..hi {
        let (ax, ay) = (rx.x_map(d), ry.x_map(d));
        // phi_{d+1} ax - ay phi_d = 0, entrywise
        for r in 0..ry.dim(d + 1) {
            for c in 0..rx.dim(d) {
                let mut row = vec![0; n];
                for (kk, axrow) in ax.iter().enumerate() {
                    if axrow[c] != 0 {
                        row[var(d + 1, r, kk)] += axrow[c];
                    }
                }
                for kk in 0..ry.dim(d) {
                    if ay[r][kk] != 0 {
                        row[var(d, kk, c)] -= ay[r][kk];
                    }
                }
                rows.push(row);
            }
        }
    }
    // the top degree holds the full lattices with the standard basis
    let (tx, ty) = (rx.torsion[(hi - lo) as usize], ry.torsion[(hi - lo) as usize]);
    assert_eq!((tx, ty), (0, 0));
    for (r, &t1) in ry.types.iter().enumerate() {
        for (c, &t0) in rx.types.iter().enumerate() {
            if t0 != t1 {
                let mut row = vec![0; n];
                row[var(hi, r, c)] = 1;
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| field.from_i64(e)).collect())
        .collect();
    n - Mat::from_rows(field, n, &rows).rank()
}

pub fn random_label<R: Rng>(rng: &mut R, bound: u32, a_bound: i64) -> IndecLabel {
    let a = rng.gen_range(-a_bound..=a_bound);
    match rng.gen_range(0..3) {
        0 => IndecLabel::RankOne { ty: rng.gen_range(0..2), a },
        1 => IndecLabel::RankTwo {
            m: rng.gen_range(1..=bound),
            a,
        },
        _ => IndecLabel::Wing {
            n: rng.gen_range(1..=bound),
            a,
        },
    }
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Mat {
    loop {
        let m = Mat::from_fn(field, n, n, |_, _| field.from_i64(rng.gen_range(-2..=2)));
        if m.rank() == n {
            return m;
        }
    }
}

/// The object of a label sum, with its lattice moved by a random
/// type-preserving change of coordinates.
pub fn disguised_sum<R: Rng>(rng: &mut R, field: FieldSpec, labels: &[IndecLabel]) -> CObject {
    let objs: Vec<CObject> = labels.iter().map(|l| l.object(field)).collect();
    let refs: Vec<&CObject> = objs.iter().collect();
    let sum = CObject::direct_sum(field, &refs).unwrap();
    let (p, q) = sum.ranks();
    let (g0, g1) = (random_invertible(rng, field, p), random_invertible(rng, field, q));
    let g = Mat::from_fn(field, p + q, p + q, |i, j| match (i < p, j < p) {
        (true, true) => g0[(i, j)].clone(),
        (false, false) => g1[(i - p, j - p)].clone(),
        _ => field.zero(),
    });
    let lattice = sum.lattice().transform(&g, p, q);
    CObject::new(field, sum.torsion().clone(), lattice).unwrap()
}

pub fn random_scalars<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()
}
