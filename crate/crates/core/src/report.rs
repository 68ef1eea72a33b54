//! JSON renderings of curves, isogenies and reports. Rationals are exact
//! strings; maps are ordered, so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::arith::density::DensityPolynomial;
use crate::arith::format_rational as fr;
use crate::arith::Rational;
use crate::curves::WeierstrassCurve;
use crate::error::Result;
use crate::families::{Family18Member, HesseCurve, JPattern, MultPrimeClassification};
use crate::isogeny::{global_selmer_ratio, Isogeny, SelmerRatio};
use crate::local::{bad_primes_data, LocalData};
use crate::twist::empirical::EmpiricalReport;
use crate::twist::{RankReport, ShaStatement, TwistReport};

pub const SCHEMA: u64 = 1;

/// Wrap a payload with the schema version and a kind tag.
pub fn envelope(kind: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    if let Value::Object(b) = body {
        m.extend(b);
    } else {
        m.insert("result".into(), body);
    }
    Value::Object(m)
}

pub fn rational(q: &Rational) -> Value {
    json!(fr(q))
}

fn approx(q: &Rational) -> Value {
    use num_traits::ToPrimitive;
    json!(q.to_f64())
}

pub fn curve(e: &WeierstrassCurve) -> Value {
    json!(e.coeff_strings())
}

pub fn local_data(ld: &LocalData) -> Value {
    json!({
        "p": ld.p,
        "kodaira": ld.kodaira.to_string(),
        "tamagawa": ld.tamagawa,
        "reduction": ld.kind.as_str(),
        "potentially_multiplicative": matches!(ld.potential_kind, crate::local::PotentialKind::Multiplicative),
        "v_disc_min": ld.v_delta_min,
    })
}

pub fn curve_info(e: &WeierstrassCurve, hints: &[u64], isogeny_degrees: &[(u32, usize)]) -> Result<Value> {
    let (min, _) = e.minimal_model_with_hints(hints)?;
    let inv = min.invariants();
    let local: Vec<Value> = bad_primes_data(&min, hints)?.iter().map(local_data).collect();
    let degs: Map<String, Value> = isogeny_degrees
        .iter()
        .map(|(d, n)| (d.to_string(), json!(n)))
        .collect();
    Ok(json!({
        "input": curve(e),
        "minimal_model": curve(&min),
        "c4": rational(&inv.c4),
        "c6": rational(&inv.c6),
        "discriminant": rational(&inv.discriminant),
        "j": rational(&inv.j),
        "bad_primes": local,
        "rational_kernels": degs,
    }))
}

pub fn selmer_ratio(r: &SelmerRatio) -> Value {
    let local: Map<String, Value> = r
        .local
        .iter()
        .map(|(p, e)| (p.to_string(), json!(e)))
        .collect();
    json!({
        "value": rational(&r.value()),
        "exponent": r.exponent,
        "local_exponents": local,
    })
}

pub fn isogeny(phi: &Isogeny) -> Value {
    let kernel: Vec<String> = phi.kernel().coeffs().iter().map(fr).collect();
    let mut v = json!({
        "domain": curve(phi.domain()),
        "codomain": curve(phi.codomain()),
        "degree": phi.degree(),
        "kernel": kernel,
        "lambda": rational(phi.scaling()),
        "codomain_j": rational(&phi.codomain().j_invariant()),
    });
    if phi.degree() != 2 {
        if let Ok(r) = global_selmer_ratio(phi) {
            v["selmer_ratio"] = selmer_ratio(&r);
        }
    }
    v
}

pub fn density(p: &DensityPolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| json!({"exponents": e, "coefficient": rational(c)}))
        .collect();
    json!({"display": p.to_string(), "terms": terms})
}

pub fn rank(r: &RankReport) -> Value {
    json!({
        "average_rank_upper_bound": rational(&r.average_rank_upper_bound),
        "rank_zero_lower_bound": rational(&r.rank_zero_lower_bound),
        "approx": {
            "average_rank_upper_bound": approx(&r.average_rank_upper_bound),
            "rank_zero_lower_bound": approx(&r.rank_zero_lower_bound),
        },
    })
}

pub fn sha(s: &ShaStatement) -> Value {
    json!({
        "target": s.target.as_str(),
        "curve": curve(&s.curve),
        "curve_j": rational(&s.curve.j_invariant()),
        "ell": s.ell,
        "min_order_exponent": s.min_order_exponent,
        "density": rational(&s.density),
    })
}

pub fn twist_report(r: &TwistReport) -> Value {
    let isos: Vec<Value> = r
        .isogenies
        .iter()
        .map(|d| {
            let t_m: Map<String, Value> = d.t_m.iter().map(|(m, c)| (m.to_string(), rational(c))).collect();
            json!({
                "isogeny": isogeny(&d.isogeny),
                "polynomial": density(&d.polynomial),
                "t_m_densities": t_m,
                "ratio_on_class": d.ratio_on_class.as_ref().map(rational),
            })
        })
        .collect();
    json!({
        "restriction": r.restriction.to_string(),
        "isogenies": isos,
        "joint": r.joint.as_ref().map(density),
        "rank": r.rank.as_ref().map(rank),
        "sha": r.sha.iter().map(sha).collect::<Vec<_>>(),
    })
}

pub fn empirical(r: &EmpiricalReport) -> Value {
    let rows: Vec<Value> = r
        .expected
        .support()
        .into_iter()
        .chain(r.counts.keys().filter(|k| r.expected.coeff(k) == Rational::from_integer(0.into())).cloned())
        .map(|e| {
            let f = r.frequency(&e);
            json!({
                "exponents": e,
                "count": r.counts.get(&e).copied().unwrap_or(0),
                "frequency": rational(&f),
                "expected": rational(&r.expected.coeff(&e)),
                "approx": {"frequency": approx(&f), "expected": approx(&r.expected.coeff(&e))},
            })
        })
        .collect();
    json!({
        "bound": r.bound,
        "total": r.total,
        "excluded": r.excluded,
        "rows": rows,
        "max_deviation": rational(&r.max_deviation),
        "approx": {"max_deviation": r.max_deviation_f64()},
        "class_buckets": r.buckets,
        "locality_violations": r.locality_violations,
    })
}

fn pattern_name(p: JPattern) -> &'static str {
    match p {
        JPattern::P1 => "P1",
        JPattern::P2 => "P2",
        JPattern::P3 => "P3",
    }
}

pub fn classification(c: &MultPrimeClassification) -> Value {
    let primes: Vec<Value> = c
        .patterns
        .iter()
        .map(|(p, q)| json!({"p": p, "pattern": pattern_name(*q), "split": c.split[p]}))
        .collect();
    json!({
        "s0": c.s0.to_string(),
        "primes": primes,
        "omega1_sp": c.omega1_sp,
        "omega2_sp": c.omega2_sp,
    })
}

pub fn hesse(h: &HesseCurve) -> Value {
    json!({
        "u": h.u.to_string(),
        "v": h.v.to_string(),
        "curve": curve(&h.curve),
        "j": rational(&h.curve.j_invariant()),
        "phi1": isogeny(&h.phi1),
        "phi2": isogeny(&h.phi2),
    })
}

pub fn family18(f: &Family18Member, special: Option<&(Vec<u64>, Vec<u64>)>) -> Value {
    json!({
        "m": f.m.to_string(),
        "n": f.n.to_string(),
        "e1_model": curve(&f.e1_model),
        "e2_model": curve(&f.e2_model),
        "e1": curve(&f.e1),
        "e": curve(&f.e),
        "e2": curve(&f.e2),
        "is_14a_exception": f.is_14a_exception,
        "minimality_drops": {
            "e1_at_2": f.drops.e1_at_2,
            "e2_at_2": f.drops.e2_at_2,
            "e2_at_3": f.drops.e2_at_3,
        },
        "special_primes": special.map(|(a, b)| json!({"equal_pattern": a, "ratio_pattern": b})),
    })
}
