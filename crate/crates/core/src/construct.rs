//! Explicit anisotropic forms: lifts to Laurent series and p-adic fields, norm forms,
//! compositions and powers. Each builder returns the form together with a machine check
//! of its claimed property.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{DiagonalForm, PolyForm};
use crate::gf::{FieldDescriptor, GfElem, DEFAULT_TABLE_BUDGET};
use crate::isotropy::{is_isotropic_diagonal, is_isotropic_poly, Isotropy};
use crate::scalar::NumScalars;
use crate::valued::{
    class_vectors, is_isotropic_valued_diagonal, ValuedCoeff, ValuedDiagonalForm,
    ValuedFieldDescriptor,
};

/// Largest dimension the Laurent builders will produce.
pub const MAX_LAURENT_DIM: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub enum RecipeOutput {
    Poly(PolyForm<GfElem>),
    Valued(ValuedDiagonalForm),
    Rational(PolyForm<Rational64>),
}

impl RecipeOutput {
    pub fn dim(&self) -> usize {
        match self {
            RecipeOutput::Poly(f) => f.nvars(),
            RecipeOutput::Valued(f) => f.dim(),
            RecipeOutput::Rational(f) => f.nvars(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            RecipeOutput::Poly(f) => f.degree(),
            RecipeOutput::Valued(f) => f.degree(),
            RecipeOutput::Rational(f) => f.degree(),
        }
    }
}

/// Result of checking a recipe's claim. `holds` is `None` when the check ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub holds: Option<bool>,
    pub method: String,
    pub search_cost: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionRecipe {
    pub name: &'static str,
    pub inputs: Vec<String>,
    /// Field over which `output` lives.
    pub field: String,
    pub output: RecipeOutput,
    pub claimed_property: String,
    pub certificate: Certificate,
}

fn outcome_holds(outcome: Isotropy, want: Isotropy) -> Option<bool> {
    match outcome {
        Isotropy::Undecided => None,
        o => Some(o == want),
    }
}

/// `<1, t_1, ..., t_1^{d-1}> (x) ... (x) <1, t_n, ..., t_n^{d-1}> (x) phi` over
/// `k((t_1))...((t_n))`. Coefficient order: class vector first (t_1 most significant),
/// then the coefficients of `phi`.
pub fn iterated_laurent_lift(
    k: &FieldDescriptor,
    phi: &DiagonalForm<GfElem>,
    layers: usize,
) -> Result<ConstructionRecipe> {
    let d = phi.degree();
    let field = ValuedFieldDescriptor::laurent(k, layers)?;
    field.check_tame(d)?;
    let dim = (d as usize)
        .checked_pow(layers as u32)
        .and_then(|n| n.checked_mul(phi.dim()))
        .filter(|&n| n <= MAX_LAURENT_DIM)
        .ok_or(Error::TermBudget {
            limit: MAX_LAURENT_DIM,
        })?;
    let mut coeffs = Vec::with_capacity(dim);
    for class in class_vectors(d, layers) {
        for &a in phi.coeffs() {
            coeffs.push(ValuedCoeff::new(a, class.clone()));
        }
    }
    let lifted = ValuedDiagonalForm::new(&field, d, coeffs)?;
    let base = is_isotropic_diagonal(k, d, phi.coeffs())?;
    let lift = is_isotropic_valued_diagonal(&field, &lifted)?;
    Ok(ConstructionRecipe {
        name: if layers == 1 { "tensor-lift" } else { "iterated-laurent" },
        inputs: vec![
            format!("{k}"),
            crate::text::format_diagonal(phi),
            format!("layers={layers}"),
        ],
        field: field.to_string(),
        output: RecipeOutput::Valued(lifted),
        claimed_property: format!("anisotropic over {field} iff the base form is anisotropic over {k}"),
        certificate: Certificate {
            holds: Some(base.is_anisotropic() == lift.is_anisotropic()),
            method: "residue decomposition with exhaustive residue-form search".into(),
            search_cost: base.search_cost + lift.search_cost,
        },
    })
}

/// `<1, t, ..., t^{d-1}> (x) phi` over `k((t))`.
pub fn tensor_lift(k: &FieldDescriptor, phi: &DiagonalForm<GfElem>) -> Result<ConstructionRecipe> {
    iterated_laurent_lift(k, phi, 1)
}

/// `<1, t_1, ..., t_1^{d-1}> (x) ... (x) <1, t_n, ..., t_n^{d-1}>` over `k((t_1))...((t_n))`.
pub fn iterated_laurent_form(k: &FieldDescriptor, d: u32, layers: usize) -> Result<ConstructionRecipe> {
    let one = DiagonalForm::new(k, d, vec![1])?;
    let mut r = iterated_laurent_lift(k, &one, layers)?;
    r.name = "iterated-laurent";
    Ok(r)
}

/// The same form over a tower on an algebraically closed field. Every residue form is
/// `<1>`, which is anisotropic over any field.
pub fn iterated_laurent_alg_closed(characteristic: u64, d: u32, layers: usize) -> Result<ConstructionRecipe> {
    let field = ValuedFieldDescriptor::laurent_alg_closed(characteristic, layers)?;
    field.check_tame(d)?;
    let dim = (d as usize).checked_pow(layers as u32).filter(|&n| n <= MAX_LAURENT_DIM);
    if dim.is_none() {
        return Err(Error::TermBudget {
            limit: MAX_LAURENT_DIM,
        });
    }
    let coeffs: Vec<ValuedCoeff> = class_vectors(d, layers)
        .into_iter()
        .map(|c| ValuedCoeff::new(1, c))
        .collect();
    let distinct = {
        let mut classes: Vec<Vec<u32>> = coeffs.iter().map(|c| c.class(d)).collect();
        classes.sort();
        classes.dedup();
        classes.len() == coeffs.len()
    };
    Ok(ConstructionRecipe {
        name: "iterated-laurent",
        inputs: vec![format!("char={characteristic}"), format!("d={d}"), format!("layers={layers}")],
        field: field.to_string(),
        output: RecipeOutput::Valued(ValuedDiagonalForm::from_parts(d, coeffs)),
        claimed_property: format!("anisotropic over {field}"),
        certificate: Certificate {
            holds: Some(distinct),
            method: "each valuation class holds one unit, so every residue form is <1>".into(),
            search_cost: 0,
        },
    })
}

/// `<1, p, ..., p^{d-1}> (x) phi` over Q, for `phi` of degree d in d variables anisotropic
/// over F_p. Coefficients of `phi` are lifted to `0..p`.
pub fn prime_lift(fp: &FieldDescriptor, phi: &PolyForm<GfElem>, budget: u64) -> Result<ConstructionRecipe> {
    if fp.degree() != 1 {
        return Err(Error::Invalid(format!("{fp} is not a prime field")));
    }
    let p = fp.characteristic() as i64;
    let d = phi.degree();
    if phi.nvars() != d as usize {
        return Err(Error::DimensionMismatch {
            expected: d as usize,
            got: phi.nvars(),
        });
    }
    let residue = is_isotropic_poly(fp, phi, budget)?;
    match residue.outcome {
        Isotropy::Anisotropic => {}
        Isotropy::Isotropic => {
            return Err(Error::IsotropicInput(format!(
                "base form has the zero {:?} over {fp}",
                residue.witness.unwrap_or_default()
            )))
        }
        Isotropy::Undecided => return Err(Error::SearchBudget { limit: budget }),
    }
    let q = NumScalars::<Rational64>::new();
    let lifted = phi.map(|&c| Rational64::from_integer(c as i64));
    let weights: Vec<Rational64> = (0..d).map(|i| Rational64::from_integer(p.pow(i))).collect();
    let weights = DiagonalForm::new(&q, d, weights)?;
    let out = weights.tensor_poly(&q, &lifted)?;
    // read back block i: must be p^i times the lift of phi
    let n = d as usize;
    let blocks_ok = out.terms().all(|(e, c)| {
        let block = e.iter().position(|&k| k > 0).map(|i| i / n);
        match block {
            Some(b) if e.iter().enumerate().all(|(i, &k)| k == 0 || i / n == b) => {
                let local: Vec<u32> = e[b * n..(b + 1) * n].to_vec();
                let scale = Rational64::from_integer(p.pow(b as u32));
                lifted.coefficient(&local).map(|x| x * scale) == Some(*c)
            }
            _ => false,
        }
    }) && out.num_terms() == d as usize * lifted.num_terms();
    Ok(ConstructionRecipe {
        name: "prime-lift",
        inputs: vec![format!("{fp}"), crate::text::format_poly(phi)],
        field: "Q".into(),
        output: RecipeOutput::Rational(out),
        claimed_property: format!(
            "anisotropic over Q_{p} and Q, so u({d},Q_{p}) >= {dd} and u({d},Q) >= {dd}",
            dd = d * d
        ),
        certificate: Certificate {
            holds: Some(blocks_ok),
            method: format!(
                "blocks are p^i times a form anisotropic over F_{p} (exhaustive scan); \
                 a primitive zero would force every block to vanish mod p"
            ),
            search_cost: residue.search_cost,
        },
    })
}

/// Evaluates a polynomial with coefficients in `small` (low degree first) at `x` in `big`,
/// reading coefficients through `emb`.
fn eval_in(big: &FieldDescriptor, emb: &[GfElem], coeffs: &[GfElem], x: GfElem) -> GfElem {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| big.add(big.mul(acc, x), emb[c as usize]))
}

/// Embedding of `F = F_p[y]/(m)` into a field containing it: `y` goes to the least root of `m`.
fn embedding(small: &FieldDescriptor, big: &FieldDescriptor) -> Result<Vec<GfElem>> {
    let m = small.modulus();
    let prime_part = |c: u32| big.from_int(c as i64);
    let beta = big
        .elements()
        .find(|&x| {
            let v = m
                .iter()
                .rev()
                .fold(0, |acc, &c| big.add(big.mul(acc, x), prime_part(c)));
            v == 0
        })
        .ok_or_else(|| Error::Invalid(format!("{small} does not embed in {big}")))?;
    let mut emb = Vec::with_capacity(small.size() as usize);
    for a in small.elements() {
        let digits = small.digits(a);
        let mut v = 0;
        let mut pw = 1;
        for &c in &digits {
            v = big.add(v, big.mul(prime_part(c), pw));
            pw = big.mul(pw, beta);
        }
        emb.push(v);
    }
    Ok(emb)
}

/// Degree of `x` over the subfield of size `q`: least `j >= 1` with `x^(q^j) = x`.
fn degree_over(big: &FieldDescriptor, q: u64, x: GfElem) -> u32 {
    let mut y = big.pow(x, q);
    let mut j = 1;
    while y != x {
        y = big.pow(y, q);
        j += 1;
    }
    j
}

/// Norm form of F_{q^d} / F_q in the power basis `1, α, ..., α^{d-1}`, where `α` is the
/// least root of the least monic irreducible polynomial of degree d over F_q (coefficients
/// read as an integer, top coefficient most significant).
pub fn norm_form(k: &FieldDescriptor, d: u32, budget: u64) -> Result<ConstructionRecipe> {
    let output = norm_form_poly(k, d)?;
    let check = is_isotropic_poly(k, &output, budget)?;
    Ok(ConstructionRecipe {
        name: "norm-form",
        inputs: vec![format!("{k}"), format!("d={d}")],
        field: k.to_string(),
        claimed_property: format!("degree {d}, dimension {d}, anisotropic over {k}"),
        certificate: Certificate {
            holds: outcome_holds(check.outcome, Isotropy::Anisotropic),
            method: "exhaustive projective scan".into(),
            search_cost: check.search_cost,
        },
        output: RecipeOutput::Poly(output),
    })
}

/// The norm form alone, without the anisotropy scan.
pub fn norm_form_poly(k: &FieldDescriptor, d: u32) -> Result<PolyForm<GfElem>> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    let p = k.characteristic() as u64;
    let big = FieldDescriptor::with_budget(p, k.degree() * d, DEFAULT_TABLE_BUDGET)?;
    let emb = embedding(k, &big)?;
    let q = k.size() as u64;
    let mut back = vec![u32::MAX; big.size() as usize];
    for (a, &v) in emb.iter().enumerate() {
        back[v as usize] = a as u32;
    }
    // least monic irreducible of degree d: one with a root of degree d
    let mut alpha = None;
    let count = q.pow(d);
    for code in 0..count {
        let mut c: Vec<GfElem> = (0..d).map(|i| ((code / q.pow(i)) % q) as GfElem).collect();
        c.push(1);
        if let Some(x) = big
            .elements()
            .find(|&x| eval_in(&big, &emb, &c, x) == 0 && degree_over(&big, q, x) == d)
        {
            alpha = Some(x);
            break;
        }
    }
    let alpha = alpha.expect("irreducible polynomials of every degree exist");
    let n = d as usize;
    let mut acc = PolyForm::from_terms(&big, 0, n, [(vec![0u32; n], 1)])?;
    let mut conj = alpha;
    for _ in 0..d {
        let mut pw = 1;
        let mut terms = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            terms.push((e, pw));
            pw = big.mul(pw, conj);
        }
        let linear = PolyForm::from_terms(&big, 1, n, terms)?;
        acc = acc.mul(&big, &linear, crate::forms::DEFAULT_TERM_LIMIT)?;
        conj = big.pow(conj, q);
    }
    let mut bad = None;
    let out = acc.map(|&c| {
        let b = back[c as usize];
        if b == u32::MAX {
            bad = Some(c);
        }
        b
    });
    if let Some(c) = bad {
        return Err(Error::Invalid(format!("norm coefficient {c} outside {k}")));
    }
    Ok(out)
}

/// `f(f(X_1), ..., f(X_u))` with `X_i` the i-th block of `u` variables.
pub fn compose_forms(
    k: &FieldDescriptor,
    f: &PolyForm<GfElem>,
    term_limit: usize,
    budget: u64,
) -> Result<ConstructionRecipe> {
    let u = f.nvars();
    let subs = (0..u)
        .map(|i| f.embed(u * u, i * u))
        .collect::<Result<Vec<_>>>()?;
    let out = f.substitute(k, &subs, term_limit)?;
    let check = is_isotropic_poly(k, &out, budget)?;
    let base = is_isotropic_poly(k, f, budget)?;
    Ok(ConstructionRecipe {
        name: "compose",
        inputs: vec![format!("{k}"), crate::text::format_poly(f)],
        field: k.to_string(),
        claimed_property: format!(
            "degree {}, dimension {}, anisotropic whenever the base form is",
            out.degree(),
            out.nvars()
        ),
        certificate: Certificate {
            holds: match (base.outcome, check.outcome) {
                (Isotropy::Isotropic, _) => Some(true),
                (Isotropy::Anisotropic, o) => outcome_holds(o, Isotropy::Anisotropic),
                _ => None,
            },
            method: "exhaustive projective scan".into(),
            search_cost: check.search_cost + base.search_cost,
        },
        output: RecipeOutput::Poly(out),
    })
}

/// `f^m`.
pub fn power_form(
    k: &FieldDescriptor,
    f: &PolyForm<GfElem>,
    m: u32,
    term_limit: usize,
    budget: u64,
) -> Result<ConstructionRecipe> {
    if m == 0 {
        return Err(Error::Invalid("exponent must be positive".into()));
    }
    let out = f.pow(k, m, term_limit)?;
    let check = is_isotropic_poly(k, &out, budget)?;
    let base = is_isotropic_poly(k, f, budget)?;
    Ok(ConstructionRecipe {
        name: "power",
        inputs: vec![format!("{k}"), crate::text::format_poly(f), format!("m={m}")],
        field: k.to_string(),
        claimed_property: format!("degree {}, same zero set as the base form", out.degree()),
        certificate: Certificate {
            holds: match (base.outcome, check.outcome) {
                (Isotropy::Undecided, _) | (_, Isotropy::Undecided) => None,
                (a, b) => Some(a == b && base.witness == check.witness),
            },
            method: "exhaustive projective scan of both forms".into(),
            search_cost: check.search_cost + base.search_cost,
        },
        output: RecipeOutput::Poly(out),
    })
}
