//! Finitely presented graded modules with gluing data, and their reduction
//! to canonical objects.

use super::{CObject, Cyclic, TorsionPart};
use crate::error::{Error, Result};
use crate::lattice::{Generator, GradedLattice};
use crate::matrix::Mat;
use crate::scalar::FieldSpec;

/// `coker(k[x]^rels → k[x]^gens)` together with its localization.
///
/// Entry `(i, j)` of `relations` is the coefficient of the monomial
/// `x^{rel_degrees[j] - gen_degrees[i]}` in relation `j`; it must vanish when
/// that exponent is negative. Column `i` of `localization` is the constant
/// vector `w_i` with `g_i ↦ x^{deg g_i} w_i` in `(V0 ⊕ V1) ⊗ k[x,x^-1]`; its
/// first `p` coordinates are type 0, the remaining `q` type 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub gen_degrees: Vec<i64>,
    pub rel_degrees: Vec<i64>,
    pub relations: Mat,
    pub p: usize,
    pub q: usize,
    pub localization: Mat,
}

impl Presentation {
    fn validate(&self) -> Result<()> {
        let (g, r) = (self.gen_degrees.len(), self.rel_degrees.len());
        if self.relations.rows() != g || self.relations.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix is {}x{}, expected {g}x{r}",
                self.relations.rows(),
                self.relations.cols()
            )));
        }
        if self.localization.rows() != self.p + self.q || self.localization.cols() != g {
            return Err(Error::DimensionMismatch(format!(
                "localization matrix is {}x{}, expected {}x{g}",
                self.localization.rows(),
                self.localization.cols(),
                self.p + self.q
            )));
        }
        for f in [self.relations.field(), self.localization.field()] {
            if f != self.field {
                return Err(Error::FieldMismatch(self.field, f));
            }
        }
        for i in 0..g {
            for j in 0..r {
                if self.rel_degrees[j] < self.gen_degrees[i] && !self.relations[(i, j)].is_zero() {
                    return Err(Error::NotHomogeneous { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

/// Exponents `x^e` on the diagonal of a graded Smith form of the relation
/// matrix, paired with the degree of the surviving generator. Pivots are
/// taken at the smallest exponent so that every elimination step multiplies
/// by a genuine polynomial.
fn graded_diagonal(pres: &Presentation) -> (Vec<(i64, i64)>, Vec<usize>) {
    let mut m = pres.relations.clone();
    let gd = &pres.gen_degrees;
    let rd = &pres.rel_degrees;
    let mut live_rows: Vec<usize> = (0..m.rows()).collect();
    let mut live_cols: Vec<usize> = (0..m.cols()).collect();
    let mut diag = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for &i in &live_rows {
            for &j in &live_cols {
                if !m[(i, j)].is_zero() {
                    let e = rd[j] - gd[i];
                    if best.is_none_or(|(b, _, _)| e < b) {
                        best = Some((e, i, j));
                    }
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        let inv = m[(pi, pj)].inv().expect("nonzero pivot");
        // clear column pj with row operations R_k -= (c_k/c_p) x^{gd_p - gd_k} R_p
        for &k in &live_rows {
            if k != pi && !m[(k, pj)].is_zero() {
                let f = &m[(k, pj)] * &inv;
                for &l in &live_cols {
                    let t = &f * &m[(pi, l)];
                    m[(k, l)] = &m[(k, l)] - &t;
                }
            }
        }
        // clear row pi with column operations
        for &l in &live_cols {
            if l != pj && !m[(pi, l)].is_zero() {
                m[(pi, l)] = pres.field.zero();
            }
        }
        diag.push((e, gd[pi]));
        live_rows.retain(|&i| i != pi);
        live_cols.retain(|&j| j != pj);
    }
    (diag, live_rows)
}

/// Canonical object isomorphic to the presented module: torsion from the
/// graded elementary divisors, lattice from the image in the localization.
pub fn from_presentation(pres: &Presentation) -> Result<CObject> {
    pres.validate()?;
    let k = pres.field;
    let r = pres.p + pres.q;
    // The localization must kill every relation (relations become constant
    // after clearing units) and induce an isomorphism.
    if !pres.localization.mul(&pres.relations).is_zero() {
        return Err(Error::InconsistentTypes(
            "localization does not vanish on the relations".into(),
        ));
    }
    let loc_rank = pres.localization.rank();
    if loc_rank != r {
        return Err(Error::NotFullRank {
            rank: loc_rank,
            ambient: r,
        });
    }
    let free_rank = pres.gen_degrees.len() - pres.relations.rank();
    if free_rank != r {
        return Err(Error::InconsistentTypes(format!(
            "localized module has rank {free_rank}, gluing data has rank {r}"
        )));
    }
    let (diag, _) = graded_diagonal(pres);
    let torsion = TorsionPart::new(
        diag.iter()
            .filter(|(e, _)| *e > 0)
            .map(|&(e, d)| Cyclic::new(e as u32, -d))
            .collect(),
    );
    let gens: Vec<Generator> = (0..pres.gen_degrees.len())
        .map(|i| Generator::new(pres.gen_degrees[i], pres.localization.col(i)))
        .collect();
    let lattice = GradedLattice::canonicalize(k, pres.p, pres.q, &gens)?;
    CObject::new(k, torsion, lattice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn pure_torsion() {
        let pres = Presentation {
            field: q(),
            gen_degrees: vec![0],
            rel_degrees: vec![3],
            relations: Mat::from_i64(q(), &[&[1]]),
            p: 0,
            q: 0,
            localization: Mat::zeros(q(), 0, 1),
        };
        let x = from_presentation(&pres).unwrap();
        assert_eq!(x, CObject::cyclic(q(), 3, 0));
    }

    #[test]
    fn free_rank_one() {
        let pres = Presentation {
            field: q(),
            gen_degrees: vec![0],
            rel_degrees: vec![],
            relations: Mat::zeros(q(), 1, 0),
            p: 1,
            q: 0,
            localization: Mat::from_i64(q(), &[&[1]]),
        };
        assert_eq!(from_presentation(&pres).unwrap(), CObject::rank_one(q(), 0, 0));
    }

    #[test]
    fn singularity_ring_as_module() {
        // generators 1 = (1,1) in degree 0 and v = (x^2, 0) in degree 2
        let pres = Presentation {
            field: q(),
            gen_degrees: vec![0, 2],
            rel_degrees: vec![],
            relations: Mat::zeros(q(), 2, 0),
            p: 1,
            q: 1,
            localization: Mat::from_i64(q(), &[&[1, 1], &[1, 0]]),
        };
        assert_eq!(from_presentation(&pres).unwrap(), CObject::rank_two(q(), 2, 0));
    }

    /// Two generators in degrees 0 and 1 with relations x·g0 - g1 and
    /// x^3·g0: the module is k[x]/x^3 generated in degree 0 plus nothing free.
    #[test]
    fn mixed_relations_reduce() {
        let pres = Presentation {
            field: q(),
            gen_degrees: vec![0, 1],
            rel_degrees: vec![1, 3],
            relations: Mat::from_i64(q(), &[&[1, 1], &[-1, 0]]),
            p: 0,
            q: 0,
            localization: Mat::zeros(q(), 0, 2),
        };
        assert_eq!(from_presentation(&pres).unwrap(), CObject::cyclic(q(), 3, 0));
        // the same module after a column operation C1 += x^2 C0 and scaling
        let pres2 = Presentation {
            relations: Mat::from_i64(q(), &[&[2, 2], &[-2, -1]]),
            ..pres.clone()
        };
        assert_eq!(from_presentation(&pres2).unwrap(), CObject::cyclic(q(), 3, 0));
    }

    #[test]
    fn torsion_and_lattice_together() {
        // g0 free of type 0 in degree 0, g1 in degree -1 with x^2 g1 = 0
        let pres = Presentation {
            field: q(),
            gen_degrees: vec![0, -1],
            rel_degrees: vec![1],
            relations: Mat::from_i64(q(), &[&[0], &[1]]),
            p: 1,
            q: 0,
            localization: Mat::from_i64(q(), &[&[1, 0]]),
        };
        let x = from_presentation(&pres).unwrap();
        assert_eq!(x.torsion().summands(), &[Cyclic::new(2, 1)]);
        assert_eq!(x.lattice(), CObject::rank_one(q(), 0, 0).lattice());
    }

    #[test]
    fn errors() {
        let base = Presentation {
            field: q(),
            gen_degrees: vec![2],
            rel_degrees: vec![1],
            relations: Mat::from_i64(q(), &[&[1]]),
            p: 0,
            q: 0,
            localization: Mat::zeros(q(), 0, 1),
        };
        assert!(matches!(from_presentation(&base), Err(Error::NotHomogeneous { .. })));
        let bad_loc = Presentation {
            field: q(),
            gen_degrees: vec![0],
            rel_degrees: vec![2],
            relations: Mat::from_i64(q(), &[&[1]]),
            p: 1,
            q: 0,
            localization: Mat::from_i64(q(), &[&[1]]),
        };
        assert!(matches!(from_presentation(&bad_loc), Err(Error::InconsistentTypes(_))));
        let low_rank = Presentation {
            field: q(),
            gen_degrees: vec![0, 0],
            rel_degrees: vec![],
            relations: Mat::zeros(q(), 2, 0),
            p: 1,
            q: 1,
            localization: Mat::from_i64(q(), &[&[1, 1], &[1, 1]]),
        };
        assert!(matches!(from_presentation(&low_rank), Err(Error::NotFullRank { .. })));
    }
}
