//! One function per subcommand, each returning the JSON result payload.

use semiinv::certify::{
    builtin_claims, certify_dimension, literal_six_term_holds, verify_bracket_identity,
    verify_xi_identity, Verdict,
};
use semiinv::exact::{frac, ProjectivePoint};
use semiinv::geometry_left::{
    graph_member_l23, graph_necessary, is_stable_left, nullcone_member_left, witness_curve,
};
use semiinv::geometry_lr::{
    classify_pair, classify_saturated, graph_member_upper, in_dc, in_dr, is_stable_lr, m_c,
    m_matrix, m_r, nullcone_member_lr, phi as phi_map, phi_inverse, ComponentFlags, UpperPair,
};
use semiinv::invariants::{
    generator_count_left, generator_count_lr, generators_lr, invariant_dim_left, invariant_dim_lr,
    lower_bound_left, lower_bound_lr, minor_column_sets, minors_left, LeftMatrix, MatrixTupleLR,
};
use semiinv::separation::{act_lr, separated_left, separated_lr, GroupElementLR, SeparationReport};
use serde_json::{json, Value};

use crate::input::{matrix_json, rational_json, tuple_json, vector_json, InputDocument};
use crate::{CliError, Payload};

fn wrong_kind(doc: &InputDocument, expected: &str) -> CliError {
    CliError::Input(format!("expected {expected} input, got {}", doc.kind()))
}

fn one_based(cols: &[usize]) -> Value {
    json!(cols.iter().map(|c| c + 1).collect::<Vec<_>>())
}

fn group_json(g: &GroupElementLR) -> Value {
    json!({"g1": matrix_json(g.g1()), "g2": matrix_json(g.g2())})
}

fn point_json(p: &ProjectivePoint) -> Value {
    json!([rational_json(&p[0]), rational_json(&p[1])])
}

fn flags_json(f: &ComponentFlags) -> Value {
    json!({"gamma": f.gamma, "cr": f.cr, "cc": f.cc, "labels": f.labels()})
}

fn separation_json(r: &SeparationReport) -> Value {
    match &r.witness {
        Some(w) => json!({
            "separated": r.separated,
            "witness": {
                "generator": w.id.to_string(),
                "first": rational_json(&w.first),
                "second": rational_json(&w.second),
            }
        }),
        None => json!({"separated": r.separated, "witness": null}),
    }
}

pub fn invariants(doc: &InputDocument) -> Result<Value, CliError> {
    match doc {
        InputDocument::LrTuple(t) => {
            let g = generators_lr(t);
            let values: Vec<Value> = g
                .entries()
                .map(|(id, v)| json!({"generator": id.to_string(), "value": rational_json(v)}))
                .collect();
            Ok(json!({"n": t.n(), "count": values.len(), "generators": values}))
        }
        InputDocument::LeftMatrix(m) => {
            let sets = minor_column_sets(m.l(), m.n());
            let values: Vec<Value> = sets
                .iter()
                .zip(minors_left(m))
                .map(|(cols, v)| json!({"columns": one_based(cols), "value": rational_json(&v)}))
                .collect();
            Ok(json!({"l": m.l(), "n": m.n(), "count": values.len(), "minors": values}))
        }
        _ => Err(wrong_kind(doc, "lr-tuple or left-matrix")),
    }
}

pub fn separate(doc: &InputDocument) -> Result<Value, CliError> {
    match doc {
        InputDocument::LrPair(a, b) => Ok(separation_json(&separated_lr(a, b)?)),
        InputDocument::LeftPair(a, b) => Ok(separation_json(&separated_left(a, b)?)),
        _ => Err(wrong_kind(doc, "lr-pair or left-pair")),
    }
}

fn stability_lr(t: &MatrixTupleLR) -> Value {
    let r = is_stable_lr(t);
    let triangularizer = r
        .triangularizer
        .as_ref()
        .map(|g| json!({"element": group_json(g), "triangularized": tuple_json(&act_lr(g, t))}));
    json!({
        "stable": r.stable,
        "common_direction": r.common_direction.as_ref().map(point_json),
        "triangularizer": triangularizer,
    })
}

pub fn stability(doc: &InputDocument) -> Result<Value, CliError> {
    match doc {
        InputDocument::LrTuple(t) => Ok(stability_lr(t)),
        InputDocument::LeftMatrix(m) => {
            Ok(json!({"stable": is_stable_left(m), "rank": m.matrix().rank()}))
        }
        _ => Err(wrong_kind(doc, "lr-tuple or left-matrix")),
    }
}

pub fn nullcone(doc: &InputDocument) -> Result<Value, CliError> {
    match doc {
        InputDocument::LrTuple(t) => Ok(json!({
            "member": nullcone_member_lr(t),
            "in_dr": in_dr(t),
            "in_dc": in_dc(t),
        })),
        InputDocument::LeftMatrix(m) => {
            Ok(json!({"member": nullcone_member_left(m), "rank": m.matrix().rank()}))
        }
        _ => Err(wrong_kind(doc, "lr-tuple or left-matrix")),
    }
}

fn upper_pair(doc: &InputDocument) -> Result<UpperPair, CliError> {
    match doc {
        InputDocument::LrPair(a, b) => Ok(UpperPair::new(a.clone(), b.clone())?),
        _ => Err(wrong_kind(doc, "lr-pair")),
    }
}

pub fn phi(doc: &InputDocument) -> Result<Value, CliError> {
    let p = upper_pair(doc)?;
    let img = phi_map(&p);
    Ok(json!({
        "b": tuple_json(&img.b),
        "upper": vector_json(&img.upper),
        "upper2": vector_json(&img.upper2),
        "b_in_nullcone": nullcone_member_lr(&img.b),
        "b_in_dr": in_dr(&img.b),
        "b_in_dc": in_dc(&img.b),
        "pair_separated": p.is_separated(),
        "inverse_round_trip": phi_inverse(&img) == p,
    }))
}

fn rank_summary(p: &UpperPair) -> Value {
    json!({"m": m_matrix(p).rank(), "m_r": m_r(p).rank(), "m_c": m_c(p).rank()})
}

fn both_upper(a: &MatrixTupleLR, b: &MatrixTupleLR) -> bool {
    a.is_upper_triangular() && b.is_upper_triangular()
}

pub fn classify(doc: &InputDocument) -> Result<Value, CliError> {
    let InputDocument::LrPair(a, b) = doc else {
        return Err(wrong_kind(doc, "lr-pair"));
    };
    if both_upper(a, b) {
        let p = UpperPair::new(a.clone(), b.clone())?;
        let f = classify_pair(&p)?;
        return Ok(json!({"mode": "upper", "flags": flags_json(&f), "ranks": rank_summary(&p)}));
    }
    let s = classify_saturated(a, b)?;
    let witnesses: Vec<Value> = s
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "left": group_json(&w.g),
                "right": group_json(&w.g2),
                "flags": flags_json(&w.flags),
                "ranks": rank_summary(&w.pair),
            })
        })
        .collect();
    Ok(json!({"mode": "saturated", "flags": flags_json(&s.flags), "triangularizations": witnesses}))
}

pub fn graph(doc: &InputDocument) -> Result<Value, CliError> {
    match doc {
        InputDocument::LrPair(a, b) => {
            if separated_lr(a, b)?.separated {
                return Ok(
                    json!({"member": false, "status": "decided", "reason": "separated by invariants"}),
                );
            }
            if both_upper(a, b) {
                let p = UpperPair::new(a.clone(), b.clone())?;
                let member = graph_member_upper(&p)?;
                return Ok(
                    json!({"member": member, "status": "decided", "rank_m": m_matrix(&p).rank()}),
                );
            }
            let s = classify_saturated(a, b)?;
            Ok(json!({"member": s.flags.gamma, "status": "decided", "flags": flags_json(&s.flags)}))
        }
        InputDocument::LeftPair(a, b) => graph_left(a, b),
        _ => Err(wrong_kind(doc, "lr-pair or left-pair")),
    }
}

fn graph_left(a: &LeftMatrix, b: &LeftMatrix) -> Result<Value, CliError> {
    if separated_left(a, b)?.separated {
        return Ok(
            json!({"member": false, "status": "decided", "reason": "separated by invariants"}),
        );
    }
    if is_stable_left(a) {
        // Full-rank orbits are closed and determined by the minors.
        return Ok(json!({"member": true, "status": "decided", "reason": "same closed orbit"}));
    }
    if a.l() <= 3 {
        Ok(json!({"member": graph_member_l23(a, b)?, "status": "decided"}))
    } else {
        let necessary = graph_necessary(a, b)?;
        Ok(json!({
            "member": necessary,
            "status": if necessary { "necessary-only" } else { "decided" },
        }))
    }
}

fn laurent_json(m: &semiinv::geometry_left::LaurentMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn curve(doc: &InputDocument) -> Result<Value, CliError> {
    let InputDocument::LeftPair(a, b) = doc else {
        return Err(wrong_kind(doc, "left-pair"));
    };
    let w = witness_curve(a, b)?;
    let check = w.verify(a, b);
    let ts: Vec<_> = (1..=20).map(|k| frac(k, 3)).collect();
    let minors_agree = w.minors_agree_at(&ts)?;
    Ok(json!({
        "g": laurent_json(&w.g),
        "a": laurent_json(&w.a),
        "a2": laurent_json(&w.a2),
        "check": {
            "det_one": check.det_one,
            "identity": check.identity,
            "limits_exist": check.limits_exist,
            "limits_match": check.limits_match,
            "minors_agree": minors_agree,
            "all": check.all() && minors_agree,
        }
    }))
}

pub fn certify(
    n: usize,
    l: Option<usize>,
    keys: &[String],
    trials: usize,
    seed: u64,
) -> Result<Payload, CliError> {
    let table = builtin_claims(n, l)?;
    let table = if keys.is_empty() {
        table
    } else {
        let keys: Vec<&str> = keys.iter().map(String::as_str).collect();
        table.filter(&keys)?
    };
    let mut failed = false;
    let mut certs = Vec::new();
    for c in &table.claims {
        let cert = certify_dimension(&c.parameterization, c.claimed, trials, seed)?;
        failed |= cert.verdict != Verdict::Certified;
        certs.push(json!({
            "key": c.key,
            "name": cert.name,
            "anchor": c.anchor,
            "claimed": cert.claimed,
            "achieved_rank": cert.achieved_rank,
            "verdict": cert.verdict.to_string(),
            "param_count": cert.param_count,
            "output_count": cert.output_count,
            "trials": cert.trials,
            "seed": cert.seed,
            "witness_trial": cert.witness_trial,
            "witness_point": vector_json(&cert.witness_point),
        }));
    }
    Ok(Payload {
        result: json!({"certificates": certs}),
        failed,
    })
}

pub fn identities() -> Payload {
    let xi = verify_xi_identity();
    let bracket = verify_bracket_identity();
    Payload {
        result: json!({
            "xi_identity": xi,
            "bracket_identity": bracket,
            "literal_six_term": literal_six_term_holds(),
        }),
        failed: !(xi && bracket),
    }
}

pub fn counts(ns: &[u64], l: Option<u64>) -> Result<Value, CliError> {
    match l {
        None => {
            let ns: Vec<u64> = if ns.is_empty() {
                (2..=6).collect()
            } else {
                ns.to_vec()
            };
            if ns.contains(&0) {
                return Err(CliError::Precondition("n must be positive".into()));
            }
            let rows: Vec<Value> = ns
                .iter()
                .map(|&n| {
                    json!({
                        "n": n,
                        "dim": invariant_dim_lr(n),
                        "generators": generator_count_lr(n),
                        "lower_bound": lower_bound_lr(n),
                    })
                })
                .collect();
            Ok(json!({"action": "left-right", "rows": rows}))
        }
        Some(l) => {
            let ns: Vec<u64> = if ns.is_empty() {
                (l..=l + 4).collect()
            } else {
                ns.to_vec()
            };
            let rows = ns
                .iter()
                .map(|&n| {
                    Ok(json!({
                        "l": l,
                        "n": n,
                        "dim": invariant_dim_left(l, n),
                        "generators": generator_count_left(l, n),
                        "lower_bound": lower_bound_left(l, n)?,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(json!({"action": "left", "rows": rows}))
        }
    }
}
