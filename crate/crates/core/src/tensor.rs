//! Symmetric d-linear forms, polarization and nondegeneracy.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::scalar::Scalars;

/// Symmetric d-linear form on an n-dimensional space. Only sorted index tuples are stored;
/// `entry(i_1, ..., i_d)` is `theta(e_{i_1}, ..., e_{i_d})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricTensor<E> {
    degree: u32,
    nvars: usize,
    entries: BTreeMap<Vec<usize>, E>,
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// d! / prod(m_k!) for the multiplicities of a sorted tuple.
fn multinomial_of_sorted(key: &[usize]) -> i64 {
    let mut out = factorial(key.len() as u32);
    let mut run = 1;
    for w in key.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            out /= factorial(run);
            run = 1;
        }
    }
    if !key.is_empty() {
        out /= factorial(run);
    }
    out
}

/// Advances a slice to its next lexicographic permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` with every distinct ordering of a sorted multiset.
fn for_each_arrangement(sorted: &[usize], mut f: impl FnMut(&[usize])) {
    let mut v = sorted.to_vec();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// Sorted tuples of length `d` over `0..n`, in lexicographic order.
fn sorted_tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0usize; d];
    loop {
        out.push(cur.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < n {
                let v = cur[i] + 1;
                for c in cur[i..].iter_mut() {
                    *c = v;
                }
                break;
            }
        }
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> SymmetricTensor<E> {
    pub fn zero(degree: u32, nvars: usize) -> Self {
        SymmetricTensor {
            degree,
            nvars,
            entries: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Nonzero entries keyed by sorted index tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &E)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn set<S: Scalars<Elem = E>>(
        &mut self,
        scalars: &S,
        indices: &[usize],
        value: E,
    ) -> Result<()> {
        if indices.len() != self.degree as usize {
            return Err(Error::DimensionMismatch {
                expected: self.degree as usize,
                got: indices.len(),
            });
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.nvars) {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: i + 1,
            });
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        if scalars.is_zero(&value) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    /// `theta(e_{i_1}, ..., e_{i_d})` for indices in any order.
    pub fn entry<S: Scalars<Elem = E>>(&self, scalars: &S, indices: &[usize]) -> E {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(|| scalars.zero())
    }

    /// `theta(v_1, ..., v_d)`.
    pub fn evaluate<S: Scalars<Elem = E>>(&self, scalars: &S, vectors: &[&[E]]) -> Result<E> {
        if vectors.len() != self.degree as usize {
            return Err(Error::DimensionMismatch {
                expected: self.degree as usize,
                got: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.nvars) {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: v.len(),
            });
        }
        let mut acc = scalars.zero();
        for (key, c) in &self.entries {
            for_each_arrangement(key, |idx| {
                let mut t = c.clone();
                for (slot, &i) in idx.iter().enumerate() {
                    t = scalars.mul(&t, &vectors[slot][i]);
                }
                acc = scalars.add(&acc, &t);
            });
        }
        Ok(acc)
    }

    /// `theta(v, ..., v)`, summing each stored entry with its multinomial multiplicity.
    pub fn evaluate_diagonal<S: Scalars<Elem = E>>(&self, scalars: &S, v: &[E]) -> Result<E> {
        if v.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: v.len(),
            });
        }
        let mut acc = scalars.zero();
        for (key, c) in &self.entries {
            let mut t = scalars.mul(c, &scalars.from_i64(multinomial_of_sorted(key)));
            for &i in key {
                t = scalars.mul(&t, &v[i]);
            }
            acc = scalars.add(&acc, &t);
        }
        Ok(acc)
    }

    /// The induced form `v -> theta(v, ..., v)`.
    pub fn to_poly<S: Scalars<Elem = E>>(&self, scalars: &S) -> PolyForm<E> {
        let terms = self.entries.iter().map(|(key, c)| {
            let mut e = vec![0u32; self.nvars];
            for &i in key {
                e[i] += 1;
            }
            (e, scalars.mul(c, &scalars.from_i64(multinomial_of_sorted(key))))
        });
        PolyForm::from_terms(scalars, self.degree, self.nvars, terms)
            .expect("tensor keys have length equal to the degree")
    }

    /// Nondegenerate iff the `n x n^{d-1}` flattening `M[i, (i_2..i_d)]` has full row rank.
    pub fn is_nondegenerate<S: Scalars<Elem = E>>(&self, scalars: &S) -> bool {
        let n = self.nvars;
        if n == 0 {
            return true;
        }
        let d = self.degree as usize;
        if d == 0 {
            return false;
        }
        let cols = n.pow(d as u32 - 1);
        let mut m: Vec<Vec<E>> = (0..n)
            .map(|i| {
                (0..cols)
                    .map(|c| {
                        let mut idx = Vec::with_capacity(d);
                        idx.push(i);
                        let mut r = c;
                        for _ in 1..d {
                            idx.push(r % n);
                            r /= n;
                        }
                        self.entry(scalars, &idx)
                    })
                    .collect()
            })
            .collect();
        rank(scalars, &mut m) == n
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            entries.insert(k.iter().map(|i| i + self.nvars).collect(), v.clone());
        }
        Ok(SymmetricTensor {
            degree: self.degree,
            nvars: self.nvars + other.nvars,
            entries,
        })
    }

    /// `(theta_1 (x) theta_2)(u_1 (x) v_1, ...) = theta_1(u..) theta_2(v..)`, with basis
    /// vector `e_i (x) f_j` at position `i * m + j`.
    pub fn tensor_product<S: Scalars<Elem = E>>(&self, scalars: &S, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let m = other.nvars;
        let mut entries = BTreeMap::new();
        for (k1, c1) in &self.entries {
            for (k2, c2) in &other.entries {
                let value = scalars.mul(c1, c2);
                for_each_arrangement(k2, |perm| {
                    let mut key: Vec<usize> =
                        k1.iter().zip(perm).map(|(&i, &j)| i * m + j).collect();
                    key.sort_unstable();
                    entries.insert(key, value.clone());
                });
            }
        }
        Ok(SymmetricTensor {
            degree: self.degree,
            nvars: self.nvars * m,
            entries,
        })
    }
}

/// Row rank by Gaussian elimination.
fn rank<S: Scalars>(scalars: &S, m: &mut [Vec<S::Elem>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !scalars.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = scalars.inv(&m[r][c]).expect("pivot is nonzero");
        for i in 0..rows {
            if i != r && !scalars.is_zero(&m[i][c]) {
                let factor = scalars.mul(&m[i][c], &inv);
                for j in c..cols {
                    let t = scalars.mul(&factor, &m[r][j]);
                    m[i][j] = scalars.sub(&m[i][j], &t);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// The symmetric d-linear form with `theta(v, ..., v) = phi(v)`, entry by entry through
/// `theta(v_1..v_d) = 1/d! * sum over nonempty subsets S of (-1)^{d-|S|} phi(sum_{j in S} v_j)`
/// applied to basis tuples. Needs characteristic 0 or greater than d.
pub fn polarize<S: Scalars>(scalars: &S, phi: &PolyForm<S::Elem>) -> Result<SymmetricTensor<S::Elem>> {
    let d = phi.degree();
    let p = scalars.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::Characteristic { p, d });
    }
    let n = phi.nvars();
    let mut out = SymmetricTensor::zero(d, n);
    if d == 0 {
        return Ok(out);
    }
    let inv_fact = scalars
        .inv(&scalars.from_i64(factorial(d)))
        .expect("d! is invertible");
    for key in sorted_tuples(n, d as usize) {
        let mut acc = scalars.zero();
        let mut counts = vec![0i64; n];
        for mask in 1u32..(1 << d) {
            counts.iter_mut().for_each(|c| *c = 0);
            for (slot, &i) in key.iter().enumerate() {
                if mask & (1 << slot) != 0 {
                    counts[i] += 1;
                }
            }
            let point: Vec<S::Elem> = counts.iter().map(|&c| scalars.from_i64(c)).collect();
            let value = phi.evaluate(scalars, &point)?;
            if (d - mask.count_ones()) % 2 == 0 {
                acc = scalars.add(&acc, &value);
            } else {
                acc = scalars.sub(&acc, &value);
            }
        }
        let entry = scalars.mul(&acc, &inv_fact);
        if !scalars.is_zero(&entry) {
            out.entries.insert(key, entry);
        }
    }
    Ok(out)
}

/// Form-level tensor product through the associated d-linear forms.
pub fn poly_tensor_product<S: Scalars>(
    scalars: &S,
    a: &PolyForm<S::Elem>,
    b: &PolyForm<S::Elem>,
) -> Result<PolyForm<S::Elem>> {
    let ta = polarize(scalars, a)?;
    let tb = polarize(scalars, b)?;
    Ok(ta.tensor_product(scalars, &tb)?.to_poly(scalars))
}
