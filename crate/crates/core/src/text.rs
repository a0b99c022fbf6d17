//! Text forms of coefficients and forms.
//!
//! Diagonal: `a1,a2,...`. Valued: `u@v` or `u@(v1,...,vn)`, comma separated.
//! Polynomial: `c*x1^e1*x2^e2 + ...`, variables numbered from 1.
//! Field elements are integers `0..q`; `-n` denotes the negative of element `n`.

use std::fmt::Display;

use crate::error::{Error, Result};
use crate::forms::{DiagonalForm, PolyForm};
use crate::gf::{FieldDescriptor, GfElem};
use crate::valued::{ValuedCoeff, ValuedDiagonalForm, ValuedFieldDescriptor};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_element(field: &FieldDescriptor, s: &str) -> Result<GfElem> {
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    let n: u64 = digits
        .parse()
        .map_err(|_| parse_err(format!("bad field element `{s}`")))?;
    let a = field.check(n)?;
    Ok(if neg { field.neg(a) } else { a })
}

/// Splits on commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_diag_prefix(s: &str) -> &str {
    let s = s.trim();
    match s.find("diag:") {
        Some(i) => &s[i + 5..],
        None => s,
    }
}

pub fn parse_diagonal(field: &FieldDescriptor, d: u32, s: &str) -> Result<DiagonalForm<GfElem>> {
    let body = strip_diag_prefix(s);
    if body.is_empty() {
        return Ok(DiagonalForm::empty(d));
    }
    let coeffs = body
        .split(',')
        .map(|t| parse_element(field, t))
        .collect::<Result<Vec<_>>>()?;
    DiagonalForm::new(field, d, coeffs)
}

pub fn parse_valued_coeff(field: &FieldDescriptor, s: &str) -> Result<ValuedCoeff> {
    let s = s.trim();
    let (u, v) = s
        .split_once('@')
        .ok_or_else(|| parse_err(format!("expected unit@valuation, got `{s}`")))?;
    let unit = parse_element(field, u)?;
    let v = v.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| parse_err(format!("bad valuation `{t}`")))
    };
    let val = match v.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.split(',').map(parse_int).collect::<Result<Vec<_>>>()?,
        None => vec![parse_int(v)?],
    };
    Ok(ValuedCoeff::new(unit, val))
}

pub fn parse_valued(field: &ValuedFieldDescriptor, d: u32, s: &str) -> Result<ValuedDiagonalForm> {
    let residue = field
        .residue()
        .ok_or_else(|| parse_err(format!("{field} has no concrete residue field")))?;
    let body = strip_diag_prefix(s);
    let coeffs = if body.is_empty() {
        Vec::new()
    } else {
        split_top(body)
            .into_iter()
            .map(|t| parse_valued_coeff(residue, t))
            .collect::<Result<Vec<_>>>()?
    };
    ValuedDiagonalForm::new(field, d, coeffs)
}

fn parse_monomial(field: &FieldDescriptor, s: &str) -> Result<(GfElem, Vec<(usize, u32)>)> {
    let mut coef = 1;
    let mut vars = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let i: usize = idx
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad variable `{factor}`")))?;
            if i == 0 {
                return Err(parse_err("variables are numbered from 1"));
            }
            let e: u32 = exp
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad exponent `{factor}`")))?;
            vars.push((i - 1, e));
        } else {
            coef = field.mul(coef, parse_element(field, factor)?);
        }
    }
    Ok((coef, vars))
}

/// Parses a homogeneous polynomial. `nvars` defaults to the largest variable index used.
pub fn parse_poly(field: &FieldDescriptor, s: &str, nvars: Option<usize>) -> Result<PolyForm<GfElem>> {
    // binary minus becomes "+ -"
    let mut normalized = String::with_capacity(s.len());
    let mut prev = None;
    for ch in s.chars() {
        if ch == '-' && !matches!(prev, None | Some('+') | Some('*') | Some('^')) {
            normalized.push_str("+-");
        } else {
            normalized.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    let mut monos = Vec::new();
    for t in normalized.split('+') {
        let t = t.trim();
        if t.is_empty() {
            continue;
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (field.neg(1), rest),
            None => (1, t),
        };
        let (c, vars) = parse_monomial(field, body)?;
        monos.push((field.mul(sign, c), vars));
    }
    if monos.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let used = monos
        .iter()
        .flat_map(|(_, v)| v.iter().map(|&(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let n = nvars.unwrap_or(used);
    if used > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: used,
        });
    }
    let degree = monos[0].1.iter().map(|&(_, e)| e).sum();
    let terms = monos.into_iter().map(|(c, vars)| {
        let mut e = vec![0u32; n];
        for (i, k) in vars {
            e[i] += k;
        }
        (e, c)
    });
    PolyForm::from_terms(field, degree, n, terms)
}

pub fn format_diagonal<E: Display + Clone + PartialEq + std::fmt::Debug>(phi: &DiagonalForm<E>) -> String {
    let parts: Vec<String> = phi.coeffs().iter().map(|c| c.to_string()).collect();
    format!("d:{} diag:{}", phi.degree(), parts.join(","))
}

pub fn format_valued(phi: &ValuedDiagonalForm) -> String {
    phi.to_string()
}

/// Terms in decreasing lexicographic order of exponents.
pub fn format_poly<E: Display + Clone + PartialEq + std::fmt::Debug>(phi: &PolyForm<E>) -> String {
    let terms: Vec<(Vec<u32>, String)> = phi
        .terms()
        .map(|(e, c)| (e.to_vec(), c.to_string()))
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::with_capacity(terms.len());
    for (e, c) in terms.into_iter().rev() {
        let mut s = c;
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => s.push_str(&format!("*x{}", i + 1)),
                _ => s.push_str(&format!("*x{}^{k}", i + 1)),
            }
        }
        parts.push(s);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn diagonal_round_trip() {
        let f = make_field(7, 1).unwrap();
        let phi = parse_diagonal(&f, 4, "1, 3,-1").unwrap();
        assert_eq!(phi.coeffs(), &[1, 3, 6]);
        assert_eq!(format_diagonal(&phi), "d:4 diag:1,3,6");
        assert_eq!(parse_diagonal(&f, 4, &format_diagonal(&phi)).unwrap(), phi);
        assert!(parse_diagonal(&f, 4, "1,0").is_err());
        assert!(parse_diagonal(&f, 4, "1,9").is_err());
        assert!(parse_diagonal(&f, 4, "1,a").is_err());
    }

    #[test]
    fn valued_round_trip() {
        let q5 = ValuedFieldDescriptor::qp(5).unwrap();
        let phi = parse_valued(&q5, 4, "1@0, 3@1,2@-2").unwrap();
        assert_eq!(phi.coeffs()[2], ValuedCoeff::new(2, vec![-2]));
        assert_eq!(format_valued(&phi), "d:4 diag:1@0,3@1,2@-2");
        let f7 = make_field(7, 1).unwrap();
        let tower = ValuedFieldDescriptor::laurent(&f7, 2).unwrap();
        let psi = parse_valued(&tower, 3, "2@(1,0),1@(0,2)").unwrap();
        assert_eq!(psi.coeffs()[0].val, vec![1, 0]);
        assert_eq!(parse_valued(&tower, 3, &format_valued(&psi)).unwrap(), psi);
        assert!(parse_valued(&tower, 3, "2@1").is_err());
        assert!(parse_valued(&q5, 4, "2").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let f = make_field(7, 1).unwrap();
        let phi = parse_poly(&f, "x1^3 + x2^3 - 3*x1*x2*x3", Some(3)).unwrap();
        assert_eq!(phi.coefficient(&[1, 1, 1]), Some(&4));
        let s = format_poly(&phi);
        assert_eq!(s, "1*x1^3 + 4*x1*x2*x3 + 1*x2^3");
        assert_eq!(parse_poly(&f, &s, Some(3)).unwrap(), phi);
        assert!(parse_poly(&f, "x1^2 + x2", None).is_err());
        assert!(parse_poly(&f, "x0^2", None).is_err());
        assert_eq!(parse_poly(&f, "2*x2^2", None).unwrap().nvars(), 2);
    }
}
