//! Diagonal forms `<a_1, ..., a_n>` and general homogeneous forms as sparse polynomials.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{power_classes, FieldDescriptor, GfElem};
use crate::scalar::Scalars;

/// Default cap on the number of monomials produced by symbolic builders.
pub const DEFAULT_TERM_LIMIT: usize = 1 << 20;

/// `a_1 x_1^d + ... + a_n x_n^d` with all `a_i` nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm<E> {
    degree: u32,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> DiagonalForm<E> {
    pub fn new<S: Scalars<Elem = E>>(scalars: &S, degree: u32, coeffs: Vec<E>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| scalars.is_zero(c)) {
            return Err(Error::ZeroCoefficient(i));
        }
        Ok(DiagonalForm { degree, coeffs })
    }

    /// The zero-dimensional form, identity for the orthogonal sum.
    pub fn empty(degree: u32) -> Self {
        DiagonalForm {
            degree,
            coeffs: Vec::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn evaluate<S: Scalars<Elem = E>>(&self, scalars: &S, v: &[E]) -> Result<E> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(self.coeffs.iter().zip(v).fold(scalars.zero(), |acc, (a, x)| {
            scalars.add(&acc, &scalars.mul(a, &scalars.pow(x, self.degree)))
        }))
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        check_degrees(self.degree, other.degree)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Ok(DiagonalForm {
            degree: self.degree,
            coeffs,
        })
    }

    /// Coefficients `a_i b_j` in row-major order.
    pub fn tensor_product<S: Scalars<Elem = E>>(&self, scalars: &S, other: &Self) -> Result<Self> {
        check_degrees(self.degree, other.degree)?;
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|a| other.coeffs.iter().map(move |b| scalars.mul(a, b)))
            .collect();
        Ok(DiagonalForm {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scaled<S: Scalars<Elem = E>>(&self, scalars: &S, c: &E) -> Result<Self> {
        DiagonalForm::new(
            scalars,
            self.degree,
            self.coeffs.iter().map(|a| scalars.mul(a, c)).collect(),
        )
    }

    /// `<a_1, ..., a_n> (x) phi`, the orthogonal sum of the scaled copies `a_i phi`.
    /// Variables of copy `i` occupy positions `i*n .. (i+1)*n`.
    pub fn tensor_poly<S: Scalars<Elem = E>>(
        &self,
        scalars: &S,
        phi: &PolyForm<E>,
    ) -> Result<PolyForm<E>> {
        check_degrees(self.degree, phi.degree)?;
        let mut out = PolyForm::zero(self.degree, 0);
        for a in &self.coeffs {
            out = out.orthogonal_sum(&phi.scaled(scalars, a))?;
        }
        Ok(out)
    }

    pub fn to_poly<S: Scalars<Elem = E>>(&self, scalars: &S) -> PolyForm<E> {
        let n = self.dim();
        let terms = self.coeffs.iter().enumerate().map(|(i, a)| {
            let mut e = vec![0u32; n];
            e[i] = self.degree;
            (e, a.clone())
        });
        PolyForm::from_terms(scalars, self.degree, n, terms).expect("diagonal terms are homogeneous")
    }

    pub fn map<F, T>(&self, f: F) -> DiagonalForm<T>
    where
        F: FnMut(&E) -> T,
    {
        DiagonalForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

fn check_degrees(left: u32, right: u32) -> Result<()> {
    if left != right {
        return Err(Error::DegreeMismatch { left, right });
    }
    Ok(())
}

/// Isomorphism of diagonal forms over a finite field, for degree at least 3: the multisets
/// of power classes of the coefficients must agree.
pub fn diagonal_isomorphic(
    field: &FieldDescriptor,
    phi: &DiagonalForm<GfElem>,
    psi: &DiagonalForm<GfElem>,
) -> Result<bool> {
    check_degrees(phi.degree, psi.degree)?;
    if phi.degree < 3 {
        return Err(Error::DegreeTooSmall(phi.degree));
    }
    for &c in phi.coeffs.iter().chain(&psi.coeffs) {
        field.check(c as u64)?;
    }
    if phi.dim() != psi.dim() {
        return Ok(false);
    }
    let classes = power_classes(field, phi.degree);
    let signature = |f: &DiagonalForm<GfElem>| {
        let mut v: Vec<usize> = f.coeffs.iter().map(|&a| classes.class_index(a)).collect();
        v.sort_unstable();
        v
    };
    Ok(signature(phi) == signature(psi))
}

/// Sparse homogeneous polynomial: exponent vectors (each summing to the degree) to nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyForm<E> {
    degree: u32,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> PolyForm<E> {
    pub fn zero(degree: u32, nvars: usize) -> Self {
        PolyForm {
            degree,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms, adding coefficients of repeated monomials and dropping zeros.
    pub fn from_terms<S, I>(scalars: &S, degree: u32, nvars: usize, terms: I) -> Result<Self>
    where
        S: Scalars<Elem = E>,
        I: IntoIterator<Item = (Vec<u32>, E)>,
    {
        let mut out = PolyForm::zero(degree, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            let total: u32 = e.iter().sum();
            if total != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: total,
                });
            }
            out.add_term(scalars, e, c);
        }
        Ok(out)
    }

    fn add_term<S: Scalars<Elem = E>>(&mut self, scalars: &S, e: Vec<u32>, c: E) {
        if scalars.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = scalars.add(old, &c);
                if scalars.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of variables, the dimension of the form.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &E)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Option<&E> {
        self.terms.get(exponents)
    }

    /// Variables that occur in no monomial.
    pub fn absent_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().all(|e| e[i] == 0))
            .collect()
    }

    pub fn evaluate<S: Scalars<Elem = E>>(&self, scalars: &S, v: &[E]) -> Result<E> {
        if v.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: v.len(),
            });
        }
        let mut acc = scalars.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in v.iter().zip(e) {
                if k > 0 {
                    t = scalars.mul(&t, &scalars.pow(x, k));
                }
            }
            acc = scalars.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Form on the direct sum: variables of `other` follow those of `self`.
    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        check_degrees(self.degree, other.degree)?;
        let n = self.nvars + other.nvars;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut x = e.clone();
            x.resize(n, 0);
            terms.insert(x, c.clone());
        }
        for (e, c) in &other.terms {
            let mut x = vec![0u32; self.nvars];
            x.extend_from_slice(e);
            terms.insert(x, c.clone());
        }
        Ok(PolyForm {
            degree: self.degree,
            nvars: n,
            terms,
        })
    }

    pub fn scaled<S: Scalars<Elem = E>>(&self, scalars: &S, c: &E) -> Self {
        let mut out = PolyForm::zero(self.degree, self.nvars);
        for (e, a) in &self.terms {
            out.add_term(scalars, e.clone(), scalars.mul(a, c));
        }
        out
    }

    pub fn add<S: Scalars<Elem = E>>(&self, scalars: &S, other: &Self) -> Result<Self> {
        check_degrees(self.degree, other.degree)?;
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(scalars, e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Product of two forms in the same variables.
    pub fn mul<S: Scalars<Elem = E>>(
        &self,
        scalars: &S,
        other: &Self,
        term_limit: usize,
    ) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = PolyForm::zero(self.degree + other.degree, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(scalars, e, scalars.mul(c1, c2));
                if out.terms.len() > term_limit {
                    return Err(Error::TermBudget { limit: term_limit });
                }
            }
        }
        Ok(out)
    }

    pub fn pow<S: Scalars<Elem = E>>(&self, scalars: &S, m: u32, term_limit: usize) -> Result<Self> {
        let one = PolyForm {
            degree: 0,
            nvars: self.nvars,
            terms: BTreeMap::from([(vec![0u32; self.nvars], scalars.one())]),
        };
        let mut acc = one;
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(scalars, &base, term_limit)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(scalars, &base, term_limit)?;
            }
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one variable set and degree.
    pub fn substitute<S: Scalars<Elem = E>>(
        &self,
        scalars: &S,
        subs: &[PolyForm<E>],
        term_limit: usize,
    ) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let (m, k) = (first.nvars, first.degree);
        for s in subs {
            if s.nvars != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: s.nvars,
                });
            }
            check_degrees(k, s.degree)?;
        }
        // cache powers of each substitute
        let mut powers: Vec<BTreeMap<u32, PolyForm<E>>> = vec![BTreeMap::new(); subs.len()];
        let mut out = PolyForm::zero(self.degree * k, m);
        for (e, c) in &self.terms {
            let mut term = PolyForm {
                degree: 0,
                nvars: m,
                terms: BTreeMap::from([(vec![0u32; m], c.clone())]),
            };
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if !powers[i].contains_key(&ei) {
                    let pw = subs[i].pow(scalars, ei, term_limit)?;
                    powers[i].insert(ei, pw);
                }
                term = term.mul(scalars, &powers[i][&ei], term_limit)?;
            }
            for (te, tc) in term.terms {
                out.add_term(scalars, te, tc);
            }
            if out.terms.len() > term_limit {
                return Err(Error::TermBudget { limit: term_limit });
            }
        }
        Ok(out)
    }

    /// Embeds into a larger variable set: variable `i` goes to position `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Result<Self> {
        if offset + self.nvars > nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: offset + self.nvars,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut x = vec![0u32; nvars];
                x[offset..offset + self.nvars].copy_from_slice(e);
                (x, c.clone())
            })
            .collect();
        Ok(PolyForm {
            degree: self.degree,
            nvars,
            terms,
        })
    }

    pub fn map<F, T>(&self, mut f: F) -> PolyForm<T>
    where
        F: FnMut(&E) -> T,
    {
        PolyForm {
            degree: self.degree,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
        }
    }
}
