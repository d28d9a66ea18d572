//! Object expressions: sums of `F0[a]`, `F1[a]`, `F[m,a]`, `T[n,a]`, or a
//! JSON literal with explicit torsion and lattice data.

use std::fmt;

use serde::Deserialize;
use zdinf_core::{
    format_sum, CObject, Cyclic, FieldSpec, Generator, GradedLattice, IndecLabel, TorsionPart,
};

use crate::CliError;

/// A parsed object expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectExpr {
    /// A sum of labelled indecomposables, kept sorted.
    Sum(Vec<IndecLabel>),
    /// An object given by its data.
    Literal(CObject),
}

impl ObjectExpr {
    pub fn object(&self, field: FieldSpec) -> Result<CObject, CliError> {
        match self {
            ObjectExpr::Sum(labels) => {
                let objs: Vec<CObject> = labels.iter().map(|l| l.object(field)).collect();
                let refs: Vec<&CObject> = objs.iter().collect();
                Ok(CObject::direct_sum(field, &refs)?)
            }
            ObjectExpr::Literal(x) => {
                if x.field() != field {
                    return Err(CliError::Input(format!(
                        "literal over {} used in a session over {field}",
                        x.field()
                    )));
                }
                Ok(x.clone())
            }
        }
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectExpr::Sum(labels) => write!(f, "{}", format_sum(labels)),
            ObjectExpr::Literal(x) => write!(f, "{x}"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), CliError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let text = &rest[..len];
        let v = text.parse().map_err(|_| self.err("expected an integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn positive(&mut self, what: &str) -> Result<u32, CliError> {
        let start = self.pos;
        let v = self.int()?;
        if v <= 0 {
            return Err(CliError::Range(format!(
                "{what} must be at least 1, got {v} (at {start})"
            )));
        }
        u32::try_from(v).map_err(|_| CliError::Range(format!("{what} = {v} is too large")))
    }

    fn atom(&mut self) -> Result<IndecLabel, CliError> {
        self.skip_ws();
        if self.eat("F0[") || self.eat("F1[") {
            let ty = u8::from(self.src.as_bytes()[self.pos - 2] == b'1');
            let a = self.int()?;
            self.expect("]")?;
            Ok(IndecLabel::RankOne { ty, a })
        } else if self.eat("F[") {
            let m = self.positive("m")?;
            self.expect(",")?;
            let a = self.int()?;
            self.expect("]")?;
            Ok(IndecLabel::RankTwo { m, a })
        } else if self.eat("T[") {
            let n = self.positive("n")?;
            self.expect(",")?;
            let a = self.int()?;
            self.expect("]")?;
            Ok(IndecLabel::Wing { n, a })
        } else {
            Err(self.err("expected F0[a], F1[a], F[m,a] or T[n,a]"))
        }
    }
}

/// Parses the sum grammar or, when the text starts with `{`, a JSON literal.
pub fn parse_expr(text: &str, field: FieldSpec) -> Result<ObjectExpr, CliError> {
    if text.trim_start().starts_with('{') {
        return parse_literal(text, field).map(ObjectExpr::Literal);
    }
    let mut lx = Lexer { src: text, pos: 0 };
    let mut labels = vec![lx.atom()?];
    while lx.eat("+") {
        labels.push(lx.atom()?);
    }
    lx.skip_ws();
    if lx.pos != text.len() {
        return Err(lx.err("unexpected trailing input"));
    }
    labels.sort();
    Ok(ObjectExpr::Sum(labels))
}

pub fn parse_object(text: &str, field: FieldSpec) -> Result<CObject, CliError> {
    parse_expr(text, field)?.object(field)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Literal {
    field: Option<String>,
    #[serde(default)]
    torsion: Vec<(i64, i64)>,
    lattice: Option<LatticeLiteral>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeLiteral {
    p: usize,
    q: usize,
    gens: Vec<GenLiteral>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenLiteral {
    jump: i64,
    dir: Vec<serde_json::Value>,
}

fn parse_literal(text: &str, session: FieldSpec) -> Result<CObject, CliError> {
    let lit: Literal = serde_json::from_str(text).map_err(|e| CliError::Parse {
        pos: e.column().saturating_sub(1),
        msg: e.to_string(),
    })?;
    let field = match &lit.field {
        Some(s) => FieldSpec::parse(s)?,
        None => session,
    };
    let mut cyclic = Vec::new();
    for &(n, a) in &lit.torsion {
        if n <= 0 {
            return Err(CliError::Range(format!("torsion length must be at least 1, got {n}")));
        }
        cyclic.push(Cyclic::new(n as u32, a));
    }
    let lattice = match lit.lattice {
        None => GradedLattice::zero(field),
        Some(l) => {
            let mut gens = Vec::new();
            for g in l.gens {
                let dir = g
                    .dir
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::Number(n) => field.parse_scalar(&n.to_string()),
                        serde_json::Value::String(s) => field.parse_scalar(s),
                        other => Err(zdinf_core::Error::Parse(format!("invalid scalar {other}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                gens.push(Generator::new(g.jump, dir));
            }
            GradedLattice::canonicalize(field, l.p, l.q, &gens)?
        }
    };
    Ok(CObject::new(field, TorsionPart::new(cyclic), lattice)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn atoms_and_sums() {
        let e = parse_expr("F[2,1]", q()).unwrap();
        assert_eq!(e, ObjectExpr::Sum(vec![IndecLabel::RankTwo { m: 2, a: 1 }]));
        let e = parse_expr("T[2,-1] + F0[3]", q()).unwrap();
        assert_eq!(e.to_string(), "F0[3] + T[2,-1]");
        assert_eq!(parse_expr(&e.to_string(), q()).unwrap(), e);
        let x = e.object(q()).unwrap();
        assert_eq!(x.torsion().len(), 1);
        assert_eq!(x.ranks(), (1, 0));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("F[0,3]", q()), Err(CliError::Range(_))));
        assert!(matches!(parse_expr("T[-1,0]", q()), Err(CliError::Range(_))));
        match parse_expr("F0[1] + G[2]", q()) {
            Err(CliError::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("F0[1] F0[2]", q()), Err(CliError::Parse { .. })));
        assert!(matches!(parse_expr("", q()), Err(CliError::Parse { .. })));
    }

    #[test]
    fn json_literal() {
        let text = r#"{"field":"Q","torsion":[[2,0]],"lattice":{"p":1,"q":1,"gens":[{"jump":0,"dir":[1,1]},{"jump":2,"dir":["1/2",0]}]}}"#;
        let x = parse_object(text, q()).unwrap();
        let f20 = CObject::rank_two(q(), 2, 0);
        let t = CObject::cyclic(q(), 2, 0);
        assert_eq!(x, CObject::direct_sum(q(), &[&t, &f20]).unwrap());
        assert!(parse_object(text, FieldSpec::Prime(5)).is_err());
        assert!(parse_object(r#"{"torsion":[[0,1]]}"#, q()).is_err());
        assert!(parse_object(r#"{"bogus":1}"#, q()).is_err());
    }
}
