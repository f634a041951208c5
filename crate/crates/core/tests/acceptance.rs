//! Acceptance suite. Runs every criterion, prints one verdict line each and
//! exits non-zero if any fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use common::*;
use legsurg::arith::{
    boundary_slope, chain_matrix, neg_cf_expand, reversed_shifted_cf, tight_count, truncated_slope,
    Rational,
};
use legsurg::cli::{cmd_convert, cmd_verify, ConvertOptions, EXIT_CERTIFICATE, EXIT_OK};
use legsurg::fronts::{realize_unknot, standard_unknot, StabSign};
use legsurg::surgery::{
    convert, enumerate_conversions, lutz_full, lutz_simple, rotation_allowed, Branch, PmSign,
    Policy, Provenance,
};
use legsurg::topology::{first_homology, smith_normal_form, IntMatrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

/// Expansion bounds, exact round trip, unimodular chain matrix with the right
/// column ratio.
fn cf_soundness() -> Outcome {
    let cases = negative_rationals(200, 200);
    for &(p, qd) in &cases {
        let r = Rational::new(p, qd).map_err(err("rational"))?;
        let cf = neg_cf_expand(r).map_err(err("expand"))?;
        let e = cf.entries();
        ensure!(
            e[0] <= -1 && e[1..].iter().all(|&a| a <= -2),
            "{p}/{qd}: bounds violated by {cf}"
        );
        ensure!(
            eval_cf(e) == Some(frac(p as i128, qd as i128)),
            "{p}/{qd}: {cf} does not evaluate back"
        );
        let rs = shift(e);
        let m = chain_matrix(&rs).map_err(err("chain matrix"))?;
        let want = chain_product(&rs);
        ensure!(
            [[m.a as i128, m.b as i128], [m.c as i128, m.d as i128]] == want,
            "{p}/{qd}: chain matrix {m} differs from the product"
        );
        ensure!(m.det() == 1, "{p}/{qd}: det {}", m.det());
        ensure!(
            frac(m.a as i128, m.c as i128) == frac(p as i128, qd as i128),
            "{p}/{qd}: column ratio {}/{}",
            m.a,
            m.c
        );
    }
    Ok(format!("{} reduced fractions", cases.len()))
}

/// Boundary slope against the reversed, shifted expansion and its truncation.
fn slope_duality() -> Outcome {
    let cases = negative_rationals(200, 200);
    let mut all_minus_two = 0;
    for &(p, qd) in &cases {
        let r = Rational::new(p, qd).map_err(err("rational"))?;
        let rs = shift(neg_cf_expand(r).map_err(err("expand"))?.entries());
        let slope = rat(boundary_slope(&rs).map_err(err("slope"))?);
        let dual = eval_cf(&reversed_shifted(&rs)).ok_or("reversed expansion is singular")?;
        ensure!(
            slope == dual,
            "{p}/{qd}: slope {slope:?} vs reversed {dual:?}"
        );
        ensure!(
            rat(reversed_shifted_cf(&rs).map_err(err("reversed"))?) == dual,
            "{p}/{qd}: reversed_shifted_cf disagrees"
        );
        let truncated = match rs.iter().position(|&x| x < -2) {
            None => (-1, 1),
            Some(k) => {
                eval_cf(&reversed_shifted(&rs[k..])).ok_or("truncated expansion is singular")?
            }
        };
        ensure!(slope == truncated, "{p}/{qd}: truncation identity fails");
        ensure!(
            rat(truncated_slope(&rs).map_err(err("truncated"))?) == truncated,
            "{p}/{qd}: truncated_slope disagrees"
        );
        if rs.iter().all(|&x| x == -2) {
            ensure!(
                slope == (-1, 1),
                "{p}/{qd}: all -2 chain has slope {slope:?}"
            );
            all_minus_two += 1;
        }
    }
    ensure!(all_minus_two > 0, "no all -2 chains in range");
    Ok(format!(
        "{} fractions, {all_minus_two} all -2 chains",
        cases.len()
    ))
}

/// Enumerated presentations are distinct, admissible and as many as the
/// product formula says.
fn count_equals_enumeration() -> Outcome {
    let mut cases = 0;
    let mut diagrams = 0u64;
    for qd in 1..=12i64 {
        for p in 1..=50 * qd {
            if gcd(p as i128, qd as i128) != 1 {
                continue;
            }
            cases += 1;
            let r = Rational::new(-p, qd).map_err(err("rational"))?;
            let rs = shift(neg_cf_expand(r).map_err(err("expand"))?.entries());
            let expected = product_count(&rs);
            let d = single_unknot(-1, 0, r);
            let mut seen = HashSet::new();
            for pm in enumerate_conversions(&d).map_err(err("enumerate"))? {
                let chain: Vec<_> = pm
                    .instructions()
                    .filter(|i| i.provenance == Provenance::NegativeChain)
                    .collect();
                ensure!(
                    chain
                        .iter()
                        .all(|i| rotation_allowed(i.tb_local, i.rot_choice)),
                    "-{p}/{qd}: inadmissible rotation"
                );
                seen.insert(pm.choice_tuple());
            }
            ensure!(
                seen.len() as u128 == expected,
                "-{p}/{qd}: {} distinct conversions, formula gives {expected}",
                seen.len()
            );
            ensure!(
                tight_count(&rs).map_err(err("count"))? as u128 == expected,
                "-{p}/{qd}: tight_count disagrees"
            );
            diagrams += expected as u64;
        }
    }
    Ok(format!("{cases} coefficients, {diagrams} presentations"))
}

/// Integer coefficients go to the expected branch with the expected shape.
fn dispatch() -> Outcome {
    for n in -20i64..=20 {
        let r = Rational::integer(n);
        let pm = convert(&single_unknot(-1, 0, r), &Policy::AllNegative).map_err(err("convert"))?;
        let c = &pm.components[0];
        let signs: Vec<i64> = c
            .instructions
            .iter()
            .map(|i| i.coefficient.value())
            .collect();
        match n {
            n if n <= -1 => {
                ensure!(signs == [-1], "{n}: expected one (-1), got {signs:?}");
                ensure!(
                    c.instructions[0].tb_local == -1 + (n + 1),
                    "{n}: wrong tb on the single knot"
                );
            }
            0 => {
                ensure!(signs == [1], "0: expected one (+1), got {signs:?}");
                ensure!(c.branch == Branch::Zero, "0: branch {:?}", c.branch);
            }
            1 => ensure!(
                signs == [1] && c.branch == Branch::Passthrough,
                "1: not passed through"
            ),
            n => {
                ensure!(
                    signs[0] == 1 && signs[1..].iter().all(|&s| s == -1),
                    "{n}: signs {signs:?}"
                );
                ensure!(signs.len() >= 2, "{n}: no chain after the push-off");
                let cert = c
                    .certificate
                    .as_ref()
                    .ok_or("positive branch without certificate")?;
                ensure!(
                    rat(cert.chain_target) == frac(n as i128, 1 - n as i128),
                    "{n}: chain target {}",
                    cert.chain_target
                );
                let rs = shift(
                    neg_cf_expand(cert.chain_target)
                        .map_err(err("expand"))?
                        .entries(),
                );
                let tbs: Vec<i64> = c.instructions[1..].iter().map(|i| i.tb_local).collect();
                let want: Vec<i64> = rs.iter().map(|r| r + 1).collect();
                ensure!(tbs == want, "{n}: chain tb {tbs:?}, expected {want:?}");
            }
        }
    }
    let pm = convert(
        &single_unknot(-1, 0, Rational::INFINITY),
        &Policy::AllNegative,
    )
    .map_err(err("convert"))?;
    ensure!(
        pm.components[0].branch == Branch::Dropped && pm.components[0].instructions.is_empty(),
        "inf: component not dropped"
    );
    Ok("n in [-20, 20] and inf".into())
}

fn lutz_counts() -> Outcome {
    let simple = lutz_simple("T");
    let full = lutz_full("T");
    ensure!(
        simple.len() == 2 && simple.iter().all(|i| i.coefficient == PmSign::Plus),
        "simple twist: {} instructions",
        simple.len()
    );
    ensure!(
        full.len() == 4 && full.iter().all(|i| i.coefficient == PmSign::Plus),
        "full twist: {} instructions",
        full.len()
    );
    Ok("simple 2, full 4".into())
}

/// Stabilization sequences, unknot realization and the Bennequin bound.
fn front_invariants() -> Outcome {
    let k0 = standard_unknot();
    let inv = k0.invariants(0).map_err(err("K0"))?;
    ensure!(
        (inv.tb, inv.rot) == (-1, 0),
        "K0 has ({}, {})",
        inv.tb,
        inv.rot
    );
    let mut corpus = vec![k0.clone()];
    let mut sequences = 0;
    for len in 0..=6u32 {
        for mask in 0..(1u32 << len) {
            let mut front = k0.clone();
            let mut rot = 0;
            for bit in 0..len {
                let sign = if mask >> bit & 1 == 1 {
                    StabSign::Positive
                } else {
                    StabSign::Negative
                };
                rot += if sign == StabSign::Positive { 1 } else { -1 };
                front = front.stabilize(0, sign).map_err(err("stabilize"))?;
            }
            let inv = front.invariants(0).map_err(err("invariants"))?;
            ensure!(
                inv.tb == -1 - len as i64 && inv.rot == rot,
                "sequence {mask:0len$b}: ({}, {}), expected ({}, {rot})",
                inv.tb,
                inv.rot,
                -1 - len as i64,
                len = len as usize
            );
            corpus.push(front);
            sequences += 1;
        }
    }
    for n in 0..=8i64 {
        let tb = -n - 1;
        for rot in -n - 3..=n + 3 {
            let expected = rot.abs() <= n && (rot - n) % 2 == 0;
            match realize_unknot(tb, rot) {
                Ok(front) => {
                    ensure!(
                        expected,
                        "realized ({tb}, {rot}) which should be impossible"
                    );
                    let inv = front.invariants(0).map_err(err("invariants"))?;
                    ensure!(
                        (inv.tb, inv.rot) == (tb, rot),
                        "realization of ({tb}, {rot}) re-verifies as ({}, {})",
                        inv.tb,
                        inv.rot
                    );
                    corpus.push(front);
                }
                Err(_) => ensure!(!expected, "failed to realize ({tb}, {rot})"),
            }
        }
    }
    for front in &corpus {
        let inv = front.invariants(0).map_err(err("invariants"))?;
        ensure!(
            inv.tb + inv.rot.abs() <= -1,
            "Bennequin bound fails for {}",
            front.word()
        );
    }
    Ok(format!(
        "{sequences} stabilization sequences, corpus of {}",
        corpus.len()
    ))
}

fn random_matrix(rng: &mut StdRng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect()
}

/// Lens space orders and Smith normal form against determinantal divisors.
fn homology_oracle() -> Outcome {
    let z8 = first_homology(&single_unknot(-1, 0, q("-5/3"))).map_err(err("H1"))?;
    ensure!(
        z8.order() == Some(8) && z8.to_string() == "Z/8",
        "(-5/3) on tb -1: {z8}"
    );
    let z3 = first_homology(&single_unknot(-2, 1, q("-1"))).map_err(err("H1"))?;
    ensure!(z3.to_string() == "Z/3", "(-1) on tb -2: {z3}");

    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let trials = 400;
    for _ in 0..trials {
        let rows = random_matrix(&mut rng);
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m).map_err(err("SNF"))?;
        let diag: Vec<i128> = snf.diagonal().iter().map(|&d| d as i128).collect();
        let oracle = invariant_factors(&rows);
        ensure!(diag == oracle, "{rows:?}: SNF {diag:?}, oracle {oracle:?}");
        let product = snf
            .u
            .checked_mul(&m)
            .and_then(|x| x.checked_mul(&snf.v))
            .map_err(err("product"))?;
        ensure!(product == snf.d, "{rows:?}: U M V is not D");
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                ensure!(i == j || snf.d[(i, j)] == 0, "{rows:?}: off-diagonal entry");
            }
        }
        let u = snf.u.det().map_err(err("det"))?;
        let v = snf.v.det().map_err(err("det"))?;
        ensure!(
            u.abs() == 1 && v.abs() == 1,
            "{rows:?}: det U = {u}, det V = {v}"
        );
    }
    Ok(format!("Z/8, Z/3, {trials} random matrices"))
}

/// JSON pointers to every mutable certificate field of a result file.
fn certificate_fields(doc: &Value) -> Vec<String> {
    let mut out = Vec::new();
    for (ci, c) in doc["diagram"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
    {
        let Some(cert) = c["certificate"].as_object() else {
            continue;
        };
        let base = format!("/diagram/components/{ci}/certificate");
        for key in ["target", "chain_target", "slope", "twist", "tight_count"] {
            out.push(format!("{base}/{key}"));
        }
        for i in 0..cert["cf"].as_array().unwrap().len() {
            out.push(format!("{base}/cf/{i}"));
        }
        for m in ["product", "lifted"] {
            for e in ["a", "b", "c", "d"] {
                out.push(format!("{base}/{m}/{e}"));
            }
        }
        for clause in cert["checks"].as_object().unwrap().keys() {
            out.push(format!("{base}/checks/{clause}"));
        }
    }
    out
}

fn mutate(value: &mut Value, rng: &mut StdRng) {
    let delta = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    *value = match value.clone() {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) if n.is_u64() => {
            let x = n.as_u64().unwrap();
            Value::from(if x == 0 {
                delta.unsigned_abs()
            } else {
                x + delta.unsigned_abs()
            })
        }
        Value::Number(n) => Value::from(n.as_i64().unwrap() + delta),
        Value::String(s) => {
            let r: Rational = s.parse().unwrap();
            let shifted = r.checked_add(&Rational::new(delta, 7).unwrap()).unwrap();
            Value::String(shifted.to_string())
        }
        other => panic!("unexpected certificate field {other}"),
    };
}

/// Every single-field tamper with a certificate is caught by `verify`.
fn tamper_detection() -> Outcome {
    let dir = tempfile::tempdir().map_err(err("tempdir"))?;
    let diagram = dir.path().join("diagram.json");
    let input = r#"{
        "version": 1,
        "components": [
            {"id": "A", "coefficient": "-17/5", "knot": {"tb": -1, "rot": 0, "type": "unknot"}, "linking": {"B": 1, "C": 0}},
            {"id": "B", "coefficient": "7/3", "knot": {"tb": -2, "rot": 1, "type": "unknot"}, "linking": {"C": 2}},
            {"id": "C", "coefficient": "1/3", "knot": {"tb": -1, "rot": 0, "type": "unknot"}}
        ]
    }"#;
    std::fs::write(&diagram, input).map_err(err("write"))?;
    let out = cmd_convert(
        &diagram,
        &ConvertOptions {
            json: true,
            ..Default::default()
        },
    )
    .map_err(err("convert"))?;
    ensure!(out.code == EXIT_OK, "conversion itself failed verification");
    let pristine: Value = serde_json::from_str(out.stdout.trim()).map_err(err("json"))?;

    let clean = dir.path().join("clean.json");
    std::fs::write(&clean, pristine.to_string()).map_err(err("write"))?;
    let v = cmd_verify(&clean, false).map_err(err("verify"))?;
    ensure!(v.code == EXIT_OK, "untampered result fails:\n{}", v.stdout);

    let fields = certificate_fields(&pristine);
    let mut rng = StdRng::seed_from_u64(0x7a3b_e2d1);
    let path = dir.path().join("tampered.json");
    let mutations = 100;
    for n in 0..mutations {
        let field = fields.choose(&mut rng).unwrap();
        let mut doc = pristine.clone();
        mutate(doc.pointer_mut(field).unwrap(), &mut rng);
        std::fs::write(&path, doc.to_string()).map_err(err("write"))?;
        let v = cmd_verify(&path, false).map_err(err("verify"))?;
        ensure!(
            v.code == EXIT_CERTIFICATE,
            "mutation {n} of {field} went unnoticed (exit {})",
            v.code
        );
    }
    Ok(format!(
        "{mutations} mutations over {} fields",
        fields.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("cf soundness", cf_soundness),
        ("slope duality", slope_duality),
        ("count equals enumeration", count_equals_enumeration),
        ("dispatch", dispatch),
        ("lutz counts", lutz_counts),
        ("front invariants", front_invariants),
        ("homology oracle", homology_oracle),
        ("certificate tamper detection", tamper_detection),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {}: {verdict}  {name} ({detail}; {:.2}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
