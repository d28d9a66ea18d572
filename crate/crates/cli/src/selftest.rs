//! `zdinf selftest`: a few seconds of internal consistency checks.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use zdinf_core::{
    almost_split, decompose_with_seed, ext_space, format_sum, hom_space, serre_check, CObject, CatalogSpec,
    FieldSpec, IndecLabel, Mat,
};

use crate::{Outcome, SCHEMA_VERSION};

type Check = Result<(), String>;

fn rank_one_tables(k: FieldSpec) -> Check {
    for i in 0..2u8 {
        for j in 0..2u8 {
            for a in -2..=2 {
                for b in -2..=2 {
                    let (x, y) = (CObject::rank_one(k, i, a), CObject::rank_one(k, j, b));
                    let hom = hom_space(&x, &y).map_err(|e| e.to_string())?.dim();
                    let ext = ext_space(&x, &y).map_err(|e| e.to_string())?.dim();
                    if hom != usize::from(i == j && a <= b) || ext != usize::from(i == 1 - j && a > b) {
                        return Err(format!("F{i}[{a}], F{j}[{b}]: hom {hom}, ext {ext}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn serre_small(k: FieldSpec) -> Check {
    let spec: CatalogSpec = "m<=2,n<=2,|a|<=1".parse().expect("valid spec");
    let objs = spec.objects(k);
    for (lx, x) in &objs {
        for (ly, y) in &objs {
            let r = serre_check(x, y).map_err(|e| e.to_string())?;
            if !r.pass {
                return Err(format!("({lx}, {ly}): {r:?}"));
            }
        }
    }
    Ok(())
}

fn almost_split_samples(k: FieldSpec) -> Check {
    let cases = [
        (IndecLabel::RankTwo { m: 2, a: 1 }, "F[1,0] + F[3,1]"),
        (IndecLabel::RankTwo { m: 1, a: 0 }, "F0[-1] + F1[-1] + F[2,0]"),
        (IndecLabel::RankOne { ty: 0, a: 0 }, "F[1,0]"),
        (IndecLabel::Wing { n: 2, a: 0 }, "T[1,-1] + T[3,0]"),
    ];
    for (x, want) in cases {
        let s = almost_split(&x.object(k)).map_err(|e| e.to_string())?;
        let got = format_sum(&s.middle);
        if got != want || !s.seq.is_exact() {
            return Err(format!("{x}: middle {got}"));
        }
    }
    Ok(())
}

fn random_sums(k: FieldSpec, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let mut labels: Vec<IndecLabel> = (0..n)
            .map(|_| {
                let a = rng.gen_range(-3..=3);
                match rng.gen_range(0..3) {
                    0 => IndecLabel::RankOne { ty: rng.gen_range(0..2), a },
                    1 => IndecLabel::RankTwo { m: rng.gen_range(1..=3), a },
                    _ => IndecLabel::Wing { n: rng.gen_range(1..=3), a },
                }
            })
            .collect();
        let objs: Vec<CObject> = labels.iter().map(|l| l.object(k)).collect();
        let refs: Vec<&CObject> = objs.iter().collect();
        let sum = CObject::direct_sum(k, &refs).map_err(|e| e.to_string())?;
        // hide the summands behind a type-preserving change of coordinates
        let (p, q) = sum.ranks();
        let g = loop {
            let g = Mat::from_fn(k, p + q, p + q, |i, j| {
                if (i < p) == (j < p) {
                    k.from_i64(rng.gen_range(-2..=2))
                } else {
                    k.zero()
                }
            });
            if g.rank() == p + q {
                break g;
            }
        };
        let x = CObject::new(k, sum.torsion().clone(), sum.lattice().transform(&g, p, q))
            .map_err(|e| e.to_string())?;
        let d = decompose_with_seed(&x, seed).map_err(|e| e.to_string())?;
        labels.sort();
        if d.factors != labels {
            return Err(format!("{} decomposed as {}", format_sum(&labels), format_sum(&d.factors)));
        }
    }
    Ok(())
}

pub(crate) fn run(k: FieldSpec, seed: u64, json: bool) -> Outcome {
    let checks: [(&str, Check); 4] = [
        ("rank-one tables", rank_one_tables(k)),
        ("serre duality on a small catalog", serre_small(k)),
        ("almost split sequences", almost_split_samples(k)),
        ("decomposition of random sums", random_sums(k, seed)),
    ];
    let failed = checks.iter().filter(|(_, r)| r.is_err()).count();
    let stdout = if json {
        let rows: Vec<_> = checks
            .iter()
            .map(|(name, r)| json!({"name": name, "pass": r.is_ok(), "detail": r.as_ref().err()}))
            .collect();
        format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "field": k.to_string(),
                "seed": seed,
                "checks": rows,
            }))
            .expect("values serialize")
        )
    } else {
        let mut s = String::new();
        for (name, r) in &checks {
            match r {
                Ok(()) => writeln!(s, "PASS {name}").unwrap(),
                Err(m) => writeln!(s, "FAIL {name}: {m}").unwrap(),
            }
        }
        writeln!(s, "selftest over {k}, seed {seed}: {} of {} passed", checks.len() - failed, checks.len()).unwrap();
        s
    };
    Outcome {
        code: i32::from(failed > 0),
        stdout,
        stderr: String::new(),
    }
}
