//! Named finite sets of indecomposables, described by bounds such as
//! `m<=3,n<=3,|a|<=2`.

use std::fmt;
use std::str::FromStr;

use crate::decomp::IndecLabel;
use crate::error::{Error, Result};
use crate::objects::CObject;
use crate::scalar::FieldSpec;

/// `F^i_{0a}`, `F_{ma}` with `1 ≤ m ≤ m_max` and `T(n,a)` with
/// `1 ≤ n ≤ n_max`, for `a_min ≤ a ≤ a_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub m_max: u32,
    pub n_max: u32,
    pub a_min: i64,
    pub a_max: i64,
}

impl Default for CatalogSpec {
    fn default() -> Self {
        CatalogSpec {
            m_max: 4,
            n_max: 4,
            a_min: -3,
            a_max: 3,
        }
    }
}

impl CatalogSpec {
    pub fn labels(&self) -> Vec<IndecLabel> {
        let mut out = Vec::new();
        for a in self.a_min..=self.a_max {
            out.push(IndecLabel::RankOne { ty: 0, a });
            out.push(IndecLabel::RankOne { ty: 1, a });
            out.extend((1..=self.m_max).map(|m| IndecLabel::RankTwo { m, a }));
            out.extend((1..=self.n_max).map(|n| IndecLabel::Wing { n, a }));
        }
        out.sort();
        out
    }

    pub fn objects(&self, field: FieldSpec) -> Vec<(IndecLabel, CObject)> {
        self.labels().into_iter().map(|l| (l, l.object(field))).collect()
    }
}

impl FromStr for CatalogSpec {
    type Err = Error;

    /// Comma-separated constraints `m<=K`, `n<=K`, `|a|<=K`, `a<=K`, `a>=K`;
    /// unspecified bounds keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = CatalogSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse(format!("catalog constraint `{part}`"));
            let (lhs, rhs, ge) = if let Some((l, r)) = part.split_once("<=") {
                (l.trim(), r.trim(), false)
            } else if let Some((l, r)) = part.split_once(">=") {
                (l.trim(), r.trim(), true)
            } else {
                return Err(bad());
            };
            let v: i64 = rhs.parse().map_err(|_| bad())?;
            match (lhs, ge) {
                ("m", false) | ("n", false) => {
                    let v = u32::try_from(v).map_err(|_| Error::Range(format!("`{part}` must be nonnegative")))?;
                    if lhs == "m" {
                        spec.m_max = v;
                    } else {
                        spec.n_max = v;
                    }
                }
                ("|a|", false) => {
                    if v < 0 {
                        return Err(Error::Range(format!("`{part}` must be nonnegative")));
                    }
                    spec.a_min = -v;
                    spec.a_max = v;
                }
                ("a", false) => spec.a_max = v,
                ("a", true) => spec.a_min = v,
                _ => return Err(bad()),
            }
        }
        if spec.a_min > spec.a_max {
            return Err(Error::Range(format!("empty a-range [{}, {}]", spec.a_min, spec.a_max)));
        }
        Ok(spec)
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m<={},n<={},a>={},a<={}",
            self.m_max, self.n_max, self.a_min, self.a_max
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_count() {
        let s: CatalogSpec = "m<=3,n<=3,|a|<=2".parse().unwrap();
        assert_eq!((s.m_max, s.n_max, s.a_min, s.a_max), (3, 3, -2, 2));
        assert_eq!(s.labels().len(), 5 * 8);
        assert_eq!(CatalogSpec::default().labels().len(), 7 * 10);
        assert_eq!("a>=-1, a<=3".parse::<CatalogSpec>().unwrap().a_min, -1);
        assert_eq!(s.to_string().parse::<CatalogSpec>().unwrap(), s);
        assert!("m<3".parse::<CatalogSpec>().is_err());
        assert!("a>=2,a<=1".parse::<CatalogSpec>().is_err());
        assert!("q<=1".parse::<CatalogSpec>().is_err());
    }
}
