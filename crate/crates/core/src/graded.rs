//! Finite-dimensional graded `k[x]`-modules given degreewise, and their
//! decomposition into cyclic strings.

use crate::matrix::{Mat, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A graded module concentrated in degrees `lo .. lo + dims.len()`, with
/// `x` acting by `xmaps[i]: k^{dims[i]} → k^{dims[i+1]}` (column vectors).
#[derive(Clone, Debug)]
pub(crate) struct FiniteGraded {
    pub field: FieldSpec,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub xmaps: Vec<Mat>,
}

/// A cyclic summand: `vector` in degree `start` generates a string of
/// length `len`.
#[derive(Clone, Debug)]
pub(crate) struct JordanString {
    pub start: i64,
    pub len: u32,
    pub vector: Vec<Scalar>,
}

impl FiniteGraded {
    fn index(&self, d: i64) -> Option<usize> {
        let i = d - self.lo;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim_at(&self, d: i64) -> usize {
        self.index(d).map_or(0, |i| self.dims[i])
    }

    /// Matrix of `x^l` from degree `d`.
    fn power(&self, d: i64, l: u32) -> Mat {
        let mut acc = Mat::identity(self.field, self.dim_at(d));
        for s in 0..l as i64 {
            let next = match self.index(d + s) {
                Some(i) if i < self.xmaps.len() => self.xmaps[i].clone(),
                _ => Mat::zeros(self.field, self.dim_at(d + s + 1), self.dim_at(d + s)),
            };
            acc = next.mul(&acc);
        }
        acc
    }

    fn kernel(&self, d: i64, l: u32) -> Subspace {
        let n = self.dim_at(d);
        let m = self.power(d, l);
        if m.rows() == 0 {
            return Subspace::full(self.field, n);
        }
        Subspace::span(self.field, n, &m.nullspace())
    }

    /// Generators of a decomposition into strings: in each degree and for
    /// each length `l`, a complement of `ker x^{l-1} + x·ker x^{l+1}` inside
    /// `ker x^l`.
    pub fn jordan(&self) -> Vec<JordanString> {
        let k = self.field;
        let mut out = Vec::new();
        let maxlen = self.dims.len() as u32;
        for (i, &n) in self.dims.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let d = self.lo + i as i64;
            for l in 1..=maxlen {
                let w = self.kernel(d, l);
                let mut u = self.kernel(d, l - 1);
                if self.dim_at(d - 1) > 0 {
                    let below = self.kernel(d - 1, l + 1);
                    u = u.sum(&below.image(&self.power(d - 1, 1)));
                }
                for v in w.vectors() {
                    if !u.contains(&v) {
                        u = u.sum(&Subspace::span(k, n, std::slice::from_ref(&v)));
                        out.push(JordanString {
                            start: d,
                            len: l,
                            vector: v,
                        });
                    }
                }
            }
        }
        out
    }
}
