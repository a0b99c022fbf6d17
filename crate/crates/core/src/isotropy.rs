//! Isotropy deciders and represented-value sets over finite fields.
//!
//! Diagonal forms go through a dynamic program over sets of partial sums; general forms
//! through a scan of projective points.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::gf::{dth_powers, FieldDescriptor, GfElem};

/// Default limit on projective points examined by [`is_isotropic_poly`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isotropy {
    Isotropic,
    Anisotropic,
    /// The search budget ran out before a decision.
    Undecided,
}

/// Outcome of an isotropy query. When isotropic, `witness` is the lexicographically least
/// nonzero zero of the form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyVerdict<E = GfElem> {
    pub outcome: Isotropy,
    pub witness: Option<Vec<E>>,
    pub search_cost: u64,
}

impl<E> IsotropyVerdict<E> {
    pub fn is_isotropic(&self) -> bool {
        self.outcome == Isotropy::Isotropic
    }

    pub fn is_anisotropic(&self) -> bool {
        self.outcome == Isotropy::Anisotropic
    }

    pub fn is_decided(&self) -> bool {
        self.outcome != Isotropy::Undecided
    }
}

/// Values of `a_1 x_1^d + ... + a_k x_k^d` over all `x`, and over all `x != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSearchState {
    all: ElemSet,
    nonzero: ElemSet,
    dim: usize,
    cost: u64,
}

impl DiagonalSearchState {
    /// State of the empty form.
    pub fn new(field: &FieldDescriptor) -> Self {
        DiagonalSearchState {
            all: ElemSet::from_iter(field.size() as usize, [0]),
            nonzero: ElemSet::new(field.size() as usize),
            dim: 0,
            cost: 0,
        }
    }

    /// Adjoins a coefficient `a`; `unit_powers` lists the distinct nonzero d-th powers.
    pub fn extend(&self, field: &FieldDescriptor, unit_powers: &[GfElem], a: GfElem) -> Self {
        let mut shifted = ElemSet::new(field.size() as usize);
        let scaled: Vec<GfElem> = unit_powers.iter().map(|&t| field.mul(a, t)).collect();
        for s in self.all.iter() {
            for &t in &scaled {
                shifted.insert(field.add(s, t));
            }
        }
        let mut all = self.all.clone();
        all.union_with(&shifted);
        let mut nonzero = self.nonzero.clone();
        nonzero.union_with(&shifted);
        DiagonalSearchState {
            all,
            nonzero,
            dim: self.dim + 1,
            cost: self.cost + (self.all.count() * scaled.len()) as u64,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_isotropic(&self) -> bool {
        self.nonzero.contains(0)
    }

    /// Every value taken, zero included.
    pub fn values(&self) -> &ElemSet {
        &self.all
    }

    /// Values taken at some nonzero vector.
    pub fn nonzero_values(&self) -> &ElemSet {
        &self.nonzero
    }

    /// `D(phi)`: nonzero represented values.
    pub fn represented(&self) -> ElemSet {
        let mut d = self.all.clone();
        d.remove(0);
        d
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }
}

/// Distinct nonzero d-th powers, ascending.
pub fn unit_dth_powers(field: &FieldDescriptor, d: u32) -> Vec<GfElem> {
    let mut p = dth_powers(field, d);
    p.remove(0);
    p.to_vec()
}

fn check_coeffs(field: &FieldDescriptor, d: u32, coeffs: &[GfElem]) -> Result<()> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    for (i, &a) in coeffs.iter().enumerate() {
        field.check(a as u64)?;
        if a == 0 {
            return Err(Error::ZeroCoefficient(i));
        }
    }
    Ok(())
}

/// Decides whether `sum a_i x_i^d` has a nonzero zero over the field.
pub fn is_isotropic_diagonal(
    field: &FieldDescriptor,
    d: u32,
    coeffs: &[GfElem],
) -> Result<IsotropyVerdict> {
    check_coeffs(field, d, coeffs)?;
    let powers = unit_dth_powers(field, d);
    let n = coeffs.len();
    // suffix[i] covers coefficients i..n
    let mut suffix = vec![DiagonalSearchState::new(field); n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1].extend(field, &powers, coeffs[i]);
    }
    let cost = suffix[0].cost();
    if !suffix[0].is_isotropic() {
        return Ok(IsotropyVerdict {
            outcome: Isotropy::Anisotropic,
            witness: None,
            search_cost: cost,
        });
    }
    let mut witness = Vec::with_capacity(n);
    let mut target = 0;
    let mut need_nonzero = true;
    for i in 0..n {
        let next = &suffix[i + 1];
        let x = field
            .elements()
            .find(|&x| {
                let rest = field.sub(target, field.mul(coeffs[i], field.pow(x, d as u64)));
                if need_nonzero && x == 0 {
                    next.nonzero_values().contains(rest)
                } else {
                    next.values().contains(rest)
                }
            })
            .expect("the value sets guarantee a completion");
        target = field.sub(target, field.mul(coeffs[i], field.pow(x, d as u64)));
        need_nonzero &= x == 0;
        witness.push(x);
    }
    debug_assert!(target == 0 && !need_nonzero);
    Ok(IsotropyVerdict {
        outcome: Isotropy::Isotropic,
        witness: Some(witness),
        search_cost: cost,
    })
}

/// `D(phi)` for a diagonal form.
pub fn represented_values(field: &FieldDescriptor, d: u32, coeffs: &[GfElem]) -> Result<ElemSet> {
    check_coeffs(field, d, coeffs)?;
    let powers = unit_dth_powers(field, d);
    let state = coeffs
        .iter()
        .fold(DiagonalSearchState::new(field), |s, &a| s.extend(field, &powers, a));
    Ok(state.represented())
}

pub fn is_universal(field: &FieldDescriptor, d: u32, coeffs: &[GfElem]) -> Result<bool> {
    Ok(represented_values(field, d, coeffs)?.count() == field.unit_order() as usize)
}

/// Number of projective points of `P^{n-1}(F_q)`, saturating.
pub fn projective_points(q: u64, n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut total: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..n {
        total += pw;
        pw = pw.saturating_mul(q as u128);
        if total > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    total as u64
}

struct CompiledForm {
    terms: Vec<(GfElem, Vec<(usize, u64)>)>,
}

impl CompiledForm {
    fn new(phi: &PolyForm<GfElem>) -> Self {
        CompiledForm {
            terms: phi
                .terms()
                .map(|(e, &c)| {
                    let vars = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (i, k as u64))
                        .collect();
                    (c, vars)
                })
                .collect(),
        }
    }

    fn eval(&self, field: &FieldDescriptor, x: &[GfElem]) -> GfElem {
        let mut acc = 0;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, k) in vars {
                t = field.mul(t, field.pow(x[i], k));
                if t == 0 {
                    break;
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }
}

const MAX_SCAN_VARS: usize = 64;
const PARALLEL_THRESHOLD: u64 = 1 << 14;

/// Decides isotropy of a general form by scanning projective representatives (first nonzero
/// coordinate 1). Points are visited so that the first zero found is the lexicographically
/// least nonzero zero. Returns [`Isotropy::Undecided`] when the point count exceeds `budget`.
pub fn is_isotropic_poly(
    field: &FieldDescriptor,
    phi: &PolyForm<GfElem>,
    budget: u64,
) -> Result<IsotropyVerdict> {
    for (_, &c) in phi.terms() {
        field.check(c as u64)?;
    }
    let n = phi.nvars();
    if n == 0 {
        return Ok(IsotropyVerdict {
            outcome: Isotropy::Anisotropic,
            witness: None,
            search_cost: 0,
        });
    }
    let q = field.size() as u64;
    let points = projective_points(q, n);
    if points > budget || n > MAX_SCAN_VARS {
        if let Some(&i) = phi.absent_variables().last() {
            let mut w = vec![0; n];
            w[i] = 1;
            return Ok(IsotropyVerdict {
                outcome: Isotropy::Isotropic,
                witness: Some(w),
                search_cost: 0,
            });
        }
        return Ok(IsotropyVerdict {
            outcome: Isotropy::Undecided,
            witness: None,
            search_cost: 0,
        });
    }
    let compiled = CompiledForm::new(phi);
    let decode = |lead: usize, idx: u64, buf: &mut [GfElem]| {
        buf[..n].iter_mut().for_each(|c| *c = 0);
        buf[lead] = 1;
        let mut r = idx;
        for pos in (lead + 1..n).rev() {
            buf[pos] = (r % q) as GfElem;
            r /= q;
        }
    };
    let is_zero_at = |lead: usize, idx: u64| {
        let mut buf = [0 as GfElem; MAX_SCAN_VARS];
        decode(lead, idx, &mut buf);
        compiled.eval(field, &buf[..n]) == 0
    };
    let mut cost = 0u64;
    for lead in (0..n).rev() {
        let count = q.pow((n - 1 - lead) as u32);
        let hit = if count >= PARALLEL_THRESHOLD {
            (0..count).into_par_iter().find_first(|&i| is_zero_at(lead, i))
        } else {
            (0..count).find(|&i| is_zero_at(lead, i))
        };
        if let Some(idx) = hit {
            let mut buf = [0 as GfElem; MAX_SCAN_VARS];
            decode(lead, idx, &mut buf);
            return Ok(IsotropyVerdict {
                outcome: Isotropy::Isotropic,
                witness: Some(buf[..n].to_vec()),
                search_cost: cost + idx + 1,
            });
        }
        cost += count;
    }
    Ok(IsotropyVerdict {
        outcome: Isotropy::Anisotropic,
        witness: None,
        search_cost: cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    /// Lexicographically least nonzero zero by full enumeration of F_q^n.
    fn brute_force_zero(field: &FieldDescriptor, d: u32, coeffs: &[u32]) -> Option<Vec<u32>> {
        let q = field.size() as u64;
        let n = coeffs.len();
        (1..q.pow(n as u32)).find_map(|code| {
            let x: Vec<u32> = (0..n)
                .map(|i| ((code / q.pow((n - 1 - i) as u32)) % q) as u32)
                .collect();
            let v = coeffs
                .iter()
                .zip(&x)
                .fold(0, |acc, (&a, &xi)| field.add(acc, field.mul(a, field.pow(xi, d as u64))));
            (v == 0).then_some(x)
        })
    }

    #[test]
    fn f5_quartic_four_ones_is_anisotropic() {
        let f = make_field(5, 1).unwrap();
        let v = is_isotropic_diagonal(&f, 4, &[1, 1, 1, 1]).unwrap();
        assert!(v.is_anisotropic());
        assert_eq!(brute_force_zero(&f, 4, &[1, 1, 1, 1]), None);
        let v5 = is_isotropic_diagonal(&f, 4, &[1, 1, 1, 1, 1]).unwrap();
        assert!(v5.is_isotropic());
        assert_eq!(v5.witness.as_deref(), Some(&[0, 1, 1, 1, 1, 1][1..]));
    }

    #[test]
    fn f7_quartic_binary() {
        let f = make_field(7, 1).unwrap();
        let v = is_isotropic_diagonal(&f, 4, &[1, 3]).unwrap();
        assert!(v.is_isotropic());
        let w = v.witness.unwrap();
        assert_eq!(Some(w.clone()), brute_force_zero(&f, 4, &[1, 3]));
        assert_eq!(f.add(f.pow(w[0], 4), f.mul(3, f.pow(w[1], 4))), 0);
    }

    #[test]
    fn zero_coefficient_is_an_error() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(
            is_isotropic_diagonal(&f, 3, &[1, 0]).unwrap_err(),
            Error::ZeroCoefficient(1)
        );
        assert!(is_isotropic_diagonal(&f, 3, &[9]).is_err());
    }

    #[test]
    fn dp_matches_brute_force_exhaustively() {
        for (p, fdeg) in [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (13, 1)] {
            let f = make_field(p, fdeg).unwrap();
            let q = f.size();
            for d in 1..=6 {
                for n in 1..=3usize {
                    if (q as u64).pow(n as u32) > 1 << 12 {
                        continue;
                    }
                    for code in 0..(q - 1).pow(n as u32) {
                        let coeffs: Vec<u32> =
                            (0..n).map(|i| (code / (q - 1).pow(i as u32)) % (q - 1) + 1).collect();
                        let v = is_isotropic_diagonal(&f, d, &coeffs).unwrap();
                        assert_eq!(v.witness, brute_force_zero(&f, d, &coeffs), "{f} d={d} {coeffs:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn represented_value_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(represented_values(&f5, 4, &[1]).unwrap().to_vec(), vec![1]);
        assert!(is_universal(&f5, 4, &[1, 1, 1, 1]).unwrap());
        assert!(!is_universal(&f5, 4, &[1]).unwrap());
        let f7 = make_field(7, 1).unwrap();
        // {1,2,4} + {0,1,2,4} without 0
        let mut expect = std::collections::BTreeSet::new();
        for a in [0, 1, 2, 4] {
            for b in [0, 1, 2, 4] {
                expect.insert((a + b) % 7);
            }
        }
        expect.remove(&0);
        assert_eq!(
            represented_values(&f7, 4, &[1, 1]).unwrap().to_vec(),
            expect.into_iter().collect::<Vec<_>>()
        );
        let f2 = make_field(2, 1).unwrap();
        assert!(is_universal(&f2, 3, &[1]).unwrap());
    }

    #[test]
    fn fermat_cubic_scan() {
        // x^3 + y^3 + z^3 over F_7 against exhaustive search
        let f7 = make_field(7, 1).unwrap();
        let fermat = crate::forms::DiagonalForm::new(&f7, 3, vec![1, 1, 1]).unwrap().to_poly(&f7);
        let scan = is_isotropic_poly(&f7, &fermat, DEFAULT_BUDGET).unwrap();
        assert_eq!(scan.witness, brute_force_zero(&f7, 3, &[1, 1, 1]));
        assert!(scan.search_cost <= 57);
    }

    #[test]
    fn poly_scan_agrees_with_dp_witness() {
        let f = make_field(7, 1).unwrap();
        for coeffs in [vec![1, 3], vec![1, 1, 1], vec![1, 2, 3, 6], vec![3, 5]] {
            for d in [2, 3, 4, 6] {
                let dp = is_isotropic_diagonal(&f, d, &coeffs).unwrap();
                let poly = crate::forms::DiagonalForm::new(&f, d, coeffs.clone()).unwrap().to_poly(&f);
                let scan = is_isotropic_poly(&f, &poly, DEFAULT_BUDGET).unwrap();
                assert_eq!(dp.outcome, scan.outcome);
                assert_eq!(dp.witness, scan.witness);
            }
        }
    }

    #[test]
    fn absent_variable_and_budget() {
        let f = make_field(11, 1).unwrap();
        // x^2 in variables x, y: y is absent
        let phi = PolyForm::from_terms(&f, 2, 2, [(vec![2, 0], 1)]).unwrap();
        let v = is_isotropic_poly(&f, &phi, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.witness, Some(vec![0, 1]));
        let big = crate::forms::DiagonalForm::new(&f, 2, vec![1; 10]).unwrap().to_poly(&f);
        let u = is_isotropic_poly(&f, &big, 1000).unwrap();
        assert_eq!(u.outcome, Isotropy::Undecided);
        let padded = big.embed(11, 0).unwrap();
        let w = is_isotropic_poly(&f, &padded, 1000).unwrap();
        assert!(w.is_isotropic());
        assert_eq!(w.witness.unwrap()[10], 1);
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(projective_points(7, 3), 57);
        assert_eq!(projective_points(2, 1), 1);
        assert_eq!(projective_points(2, 0), 0);
        assert_eq!(projective_points(1 << 20, 10), u64::MAX);
    }
}
