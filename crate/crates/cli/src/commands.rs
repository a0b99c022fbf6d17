use anyhow::{anyhow, bail, Context, Result};
use hforms::construct::{
    compose_forms, iterated_laurent_alg_closed, iterated_laurent_form, iterated_laurent_lift,
    norm_form, norm_form_poly, power_form, prime_lift, tensor_lift, ConstructionRecipe,
    RecipeOutput,
};
use hforms::gf::{d_star, field_of_size, make_field, prime_power};
use hforms::invariants::{level, u_diag, waring_number, InvariantReport, Witness};
use hforms::isotropy::{is_isotropic_diagonal, is_isotropic_poly, Isotropy};
use hforms::text::{format_diagonal, format_poly, format_valued, parse_diagonal, parse_poly, parse_valued};
use hforms::valued::{bound_calculators, is_isotropic_valued_diagonal, u_diag_springer};
use hforms::{FieldDescriptor, ValuedCoeff, ValuedFieldDescriptor};
use serde_json::{json, Map, Value};

use crate::output::{Outcome, EXIT_BUDGET, EXIT_FAIL};

pub const TABLE_COLUMNS: [&str; 7] = ["q", "d", "gcd", "s_d", "u_diag", "waring", "kneser_bound"];

pub fn finite_field(p: u64, f: u32) -> Result<FieldDescriptor> {
    Ok(make_field(p, f)?)
}

pub fn valued_field(p: u64, f: u32, e: u32, tower: Option<usize>) -> Result<ValuedFieldDescriptor> {
    match tower {
        Some(n) => {
            if e != 1 {
                bail!("--e applies to p-adic fields only");
            }
            Ok(ValuedFieldDescriptor::laurent(&make_field(p, f)?, n)?)
        }
        None => Ok(ValuedFieldDescriptor::padic(p, f, e)?),
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn header(r: &InvariantReport) -> Map<String, Value> {
    object(json!({ "field": r.field, "p": r.p, "f": r.f, "d": r.d }))
}

fn valued_coeffs(coeffs: &[(u32, Vec<i64>)]) -> Vec<String> {
    coeffs
        .iter()
        .map(|(u, v)| ValuedCoeff::new(*u, v.clone()).to_string())
        .collect()
}

pub fn level_cmd(k: &FieldDescriptor, d: u32) -> Result<Outcome> {
    let r = level(k, d)?;
    let mut m = header(&r);
    m.insert("s".into(), json!(r.value));
    let terms = match &r.witness {
        Some(Witness::PowerSum { terms, .. }) => json!(terms),
        _ => Value::Null,
    };
    m.insert("witness".into(), terms);
    m.insert("bound_used".into(), json!(r.bound_used));
    m.insert("search_cost".into(), json!(r.search_cost));
    Ok(Outcome::object(m))
}

pub fn udiag_cmd(k: &FieldDescriptor, d: u32) -> Result<Outcome> {
    let r = u_diag(k, d)?;
    let mut m = header(&r);
    m.insert("u_diag".into(), json!(r.value));
    let coeffs = match &r.witness {
        Some(Witness::AnisotropicForm { coeffs, .. }) => json!(coeffs),
        _ => Value::Null,
    };
    m.insert("witness".into(), coeffs);
    m.insert("bound_used".into(), json!(r.bound_used));
    m.insert("search_cost".into(), json!(r.search_cost));
    Ok(Outcome::object(m))
}

pub fn waring_cmd(k: &FieldDescriptor, d: u32) -> Result<Outcome> {
    let r = waring_number(k, d)?;
    let mut m = header(&r);
    m.insert("waring".into(), json!(r.value));
    if let Some(Witness::PowerSum { target, terms }) = &r.witness {
        m.insert("target".into(), json!(target));
        m.insert("witness".into(), json!(terms));
    }
    m.insert("bound_used".into(), json!(r.bound_used));
    m.insert("search_cost".into(), json!(r.search_cost));
    Ok(Outcome::object(m))
}

fn verdict_fields(m: &mut Map<String, Value>, outcome: Isotropy) -> i32 {
    let iso = match outcome {
        Isotropy::Isotropic => json!(true),
        Isotropy::Anisotropic => json!(false),
        Isotropy::Undecided => Value::Null,
    };
    m.insert("isotropic".into(), iso);
    m.insert("outcome".into(), json!(outcome));
    if outcome == Isotropy::Undecided {
        EXIT_BUDGET
    } else {
        0
    }
}

pub fn isotropy_cmd(
    k: &FieldDescriptor,
    d: Option<u32>,
    coeffs: Option<&str>,
    poly: Option<&str>,
    budget: u64,
) -> Result<Outcome> {
    let mut m = object(json!({ "field": k.to_string() }));
    let (outcome, witness, cost) = match (coeffs, poly) {
        (Some(c), None) => {
            let d = d.context("--d is required with --coeffs")?;
            let phi = parse_diagonal(k, d, c)?;
            m.insert("d".into(), json!(d));
            m.insert("form".into(), json!(format_diagonal(&phi)));
            let v = is_isotropic_diagonal(k, d, phi.coeffs())?;
            (v.outcome, v.witness, v.search_cost)
        }
        (None, Some(s)) => {
            let phi = parse_poly(k, s, None)?;
            if let Some(d) = d {
                if d != phi.degree() {
                    bail!("form has degree {}, but --d {d} was given", phi.degree());
                }
            }
            m.insert("d".into(), json!(phi.degree()));
            m.insert("form".into(), json!(format_poly(&phi)));
            let v = is_isotropic_poly(k, &phi, budget)?;
            (v.outcome, v.witness, v.search_cost)
        }
        _ => bail!("give exactly one of --coeffs and --poly"),
    };
    let code = verdict_fields(&mut m, outcome);
    m.insert("witness".into(), json!(witness));
    m.insert("search_cost".into(), json!(cost));
    Ok(Outcome::object(m).with_code(code))
}

pub fn padic_cmd(field: &ValuedFieldDescriptor, d: u32, coeffs: Option<&str>) -> Result<Outcome> {
    let Some(spec) = coeffs else {
        let r = u_diag_springer(field, d)?;
        let mut m = object(json!({ "field": r.field, "d": r.d, "u_diag": r.value }));
        let w = match &r.witness {
            Some(Witness::ValuedForm { coeffs, .. }) => json!(valued_coeffs(coeffs)),
            Some(Witness::AnisotropicForm { coeffs, .. }) => json!(coeffs),
            _ => Value::Null,
        };
        m.insert("witness".into(), w);
        m.insert("bound_used".into(), json!(r.bound_used));
        m.insert("search_cost".into(), json!(r.search_cost));
        return Ok(Outcome::object(m));
    };
    let phi = parse_valued(field, d, spec)?;
    let v = is_isotropic_valued_diagonal(field, &phi)?;
    let mut m = object(json!({ "field": field.to_string(), "d": d, "form": format_valued(&phi) }));
    let code = verdict_fields(&mut m, v.outcome);
    m.insert("class".into(), json!(v.class));
    let witness = v.witness.map(|w| {
        w.iter()
            .map(|c| c.as_ref().map_or_else(|| "0".to_string(), |c| c.to_string()))
            .collect::<Vec<_>>()
    });
    m.insert("witness".into(), json!(witness));
    m.insert("search_cost".into(), json!(v.search_cost));
    Ok(Outcome::object(m).with_code(code))
}

pub fn bounds_cmd(field: &ValuedFieldDescriptor, d: u32) -> Result<Outcome> {
    let t = bound_calculators(field, d)?;
    let rows = t
        .entries
        .iter()
        .map(|e| serde_json::to_value(e).map(object))
        .collect::<serde_json::Result<Vec<_>>>()?;
    Ok(Outcome {
        json: json!({ "field": t.field, "d": t.d, "tightest": t.tightest, "entries": rows }),
        rows,
        code: 0,
    })
}

/// Inclusive range `A..B`, `A..=B` or a single value.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let s = s.trim();
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().with_context(|| format!("bad range `{s}`"))?;
    let b: u64 = b.trim().parse().with_context(|| format!("bad range `{s}`"))?;
    if a > b {
        bail!("empty range `{s}`");
    }
    Ok((a, b))
}

pub fn table_cell(q: u64, d: u32) -> Result<Map<String, Value>> {
    let k = field_of_size(q)?;
    let g = d_star(&k, d);
    Ok(object(json!({
        "q": q,
        "d": d,
        "gcd": g,
        "s_d": level(&k, d)?.value,
        "u_diag": u_diag(&k, d)?.value,
        "waring": waring_number(&k, d)?.value,
        "kneser_bound": g,
    })))
}

pub fn table_cmd(d: &str, q_range: &str, columns: Option<&str>) -> Result<Outcome> {
    let (d0, d1) = parse_range(d)?;
    let (q0, q1) = parse_range(q_range)?;
    if d0 == 0 {
        bail!("degree must be positive");
    }
    let keep: Vec<&str> = match columns {
        Some(c) => {
            let cols: Vec<&str> = c.split(',').map(str::trim).collect();
            if let Some(bad) = cols.iter().find(|c| !TABLE_COLUMNS.contains(c)) {
                bail!("unknown column `{bad}`; known: {}", TABLE_COLUMNS.join(","));
            }
            TABLE_COLUMNS.iter().copied().filter(|c| cols.contains(c)).collect()
        }
        None => TABLE_COLUMNS.to_vec(),
    };
    let mut rows = Vec::new();
    for q in (q0..=q1).filter(|&q| prime_power(q).is_some()) {
        for d in d0..=d1 {
            let mut cell = table_cell(q, d as u32)?;
            cell.retain(|k, _| keep.contains(&k.as_str()));
            rows.push(cell);
        }
    }
    Ok(Outcome {
        json: Value::Array(rows.iter().cloned().map(Value::Object).collect()),
        rows,
        code: 0,
    })
}

pub struct ConstructArgs<'a> {
    pub recipe: &'a str,
    pub p: u64,
    pub f: u32,
    pub d: Option<u32>,
    pub coeffs: Option<&'a str>,
    pub poly: Option<&'a str>,
    pub m: Option<u32>,
    pub layers: Option<usize>,
    pub alg_closed: bool,
    pub budget: u64,
    pub term_limit: usize,
}

pub const RECIPES: [&str; 6] = ["tensor-lift", "prime-lift", "norm-form", "compose", "power", "iterated-laurent"];

fn build(a: &ConstructArgs) -> Result<ConstructionRecipe> {
    let need_d = || a.d.ok_or_else(|| anyhow!("--d is required for {}", a.recipe));
    let need_poly = |k: &FieldDescriptor| -> Result<_> {
        let s = a.poly.ok_or_else(|| anyhow!("--poly is required for {}", a.recipe))?;
        Ok(parse_poly(k, s, None)?)
    };
    if a.alg_closed && a.recipe != "iterated-laurent" {
        bail!("--alg-closed applies to iterated-laurent only");
    }
    Ok(match a.recipe {
        "tensor-lift" => {
            let k = finite_field(a.p, a.f)?;
            let s = a.coeffs.ok_or_else(|| anyhow!("--coeffs is required for tensor-lift"))?;
            tensor_lift(&k, &parse_diagonal(&k, need_d()?, s)?)?
        }
        "prime-lift" => {
            let k = finite_field(a.p, a.f)?;
            let phi = match a.poly {
                Some(_) => need_poly(&k)?,
                None => norm_form_poly(&k, need_d()?)?,
            };
            prime_lift(&k, &phi, a.budget)?
        }
        "norm-form" => norm_form(&finite_field(a.p, a.f)?, need_d()?, a.budget)?,
        "compose" => {
            let k = finite_field(a.p, a.f)?;
            compose_forms(&k, &need_poly(&k)?, a.term_limit, a.budget)?
        }
        "power" => {
            let k = finite_field(a.p, a.f)?;
            let m = a.m.ok_or_else(|| anyhow!("--m is required for power"))?;
            power_form(&k, &need_poly(&k)?, m, a.term_limit, a.budget)?
        }
        "iterated-laurent" => {
            let n = a.layers.ok_or_else(|| anyhow!("--n is required for iterated-laurent"))?;
            if a.alg_closed {
                iterated_laurent_alg_closed(a.p, need_d()?, n)?
            } else {
                let k = finite_field(a.p, a.f)?;
                match a.coeffs {
                    Some(s) => iterated_laurent_lift(&k, &parse_diagonal(&k, need_d()?, s)?, n)?,
                    None => iterated_laurent_form(&k, need_d()?, n)?,
                }
            }
        }
        other => bail!("unknown recipe `{other}`; known: {}", RECIPES.join(", ")),
    })
}

pub fn construct_cmd(a: &ConstructArgs) -> Result<Outcome> {
    let r = build(a)?;
    let form = match &r.output {
        RecipeOutput::Poly(f) => format_poly(f),
        RecipeOutput::Valued(f) => format_valued(f),
        RecipeOutput::Rational(f) => format_poly(f),
    };
    let m = object(json!({
        "recipe": r.name,
        "inputs": r.inputs,
        "field": r.field,
        "degree": r.output.degree(),
        "dim": r.output.dim(),
        "form": form,
        "claimed_property": r.claimed_property,
        "holds": r.certificate.holds,
        "method": r.certificate.method,
        "search_cost": r.certificate.search_cost,
    }));
    let code = match r.certificate.holds {
        Some(true) => 0,
        Some(false) => EXIT_FAIL,
        None => EXIT_BUDGET,
    };
    Ok(Outcome::object(m).with_code(code))
}
