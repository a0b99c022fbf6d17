//! Independent oracles shared by the integration tests. None of them call the search code
//! in the library; they only use field arithmetic.
#![allow(dead_code)]

use hforms::{FieldDescriptor, GfElem};

/// All vectors of F_q^n, first coordinate most significant, zero vector first.
pub fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vec<GfElem>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |code| {
        (0..n)
            .map(|i| ((code / (q as u64).pow((n - 1 - i) as u32)) % q as u64) as GfElem)
            .collect()
    })
}

pub fn eval_diagonal(f: &FieldDescriptor, d: u32, coeffs: &[GfElem], x: &[GfElem]) -> GfElem {
    coeffs
        .iter()
        .zip(x)
        .fold(0, |acc, (&a, &xi)| f.add(acc, f.mul(a, f.pow(xi, d as u64))))
}

/// Lexicographically least nonzero zero of a diagonal form, by full enumeration.
pub fn brute_zero(f: &FieldDescriptor, d: u32, coeffs: &[GfElem]) -> Option<Vec<GfElem>> {
    all_vectors(f.size(), coeffs.len())
        .skip(1)
        .find(|x| eval_diagonal(f, d, coeffs, x) == 0)
}

/// Nonzero values of a diagonal form, by full enumeration.
pub fn brute_values(f: &FieldDescriptor, d: u32, coeffs: &[GfElem]) -> Vec<GfElem> {
    let mut seen = vec![false; f.size() as usize];
    for x in all_vectors(f.size(), coeffs.len()) {
        seen[eval_diagonal(f, d, coeffs, &x) as usize] = true;
    }
    (1..f.size()).filter(|&a| seen[a as usize]).collect()
}

/// Level by enumerating multisets of nonzero d-th powers of growing size.
pub fn brute_level(f: &FieldDescriptor, d: u32, max: usize) -> Option<usize> {
    let mut powers: Vec<GfElem> = f.units().map(|x| f.pow(x, d as u64)).collect();
    powers.sort_unstable();
    powers.dedup();
    let target = f.neg(1);
    fn search(f: &FieldDescriptor, p: &[GfElem], start: usize, left: usize, acc: GfElem, t: GfElem) -> bool {
        if left == 0 {
            return acc == t;
        }
        (start..p.len()).any(|i| search(f, p, i, left - 1, f.add(acc, p[i]), t))
    }
    (1..=max).find(|&s| search(f, &powers, 0, s, 0, target))
}

/// Largest dimension of an anisotropic diagonal form, trying every coefficient vector with
/// first entry 1 (any form scales to one) and deciding each by full enumeration.
pub fn brute_u_diag(f: &FieldDescriptor, d: u32, max_dim: usize) -> usize {
    let q = f.size();
    let mut best = 0;
    for n in 1..=max_dim {
        let found = all_vectors(q - 1, n - 1).any(|rest| {
            let mut coeffs = vec![1];
            coeffs.extend(rest.iter().map(|&c| c + 1));
            brute_zero(f, d, &coeffs).is_none()
        });
        if found {
            best = n;
        } else {
            break;
        }
    }
    best
}

/// Truncated discrete valuation rings used by the precision oracle.
pub trait TruncatedRing {
    type E: Clone + PartialEq;
    /// Precision: elements are known modulo `π^k`.
    fn k(&self) -> u32;
    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Valuation, `k()` for zero.
    fn ord(&self, a: &Self::E) -> u32;
    /// Number of residue digits.
    fn digits(&self) -> u32;
    /// `a + digit * π^pos`.
    fn with_digit(&self, a: &Self::E, pos: u32, digit: u32) -> Self::E;
    /// `unit * π^v` for a residue unit given by its digit.
    fn monomial(&self, unit: u32, v: u32) -> Self::E;

    fn pow(&self, a: &Self::E, e: u32) -> Self::E {
        let mut r = self.monomial(1, 0);
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }
}

/// `Z / p^k`, digits `0..p`.
pub struct IntegersModPk {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
}

impl IntegersModPk {
    pub fn new(p: u64, k: u32) -> Self {
        IntegersModPk {
            p,
            k,
            modulus: p.pow(k),
        }
    }
}

impl TruncatedRing for IntegersModPk {
    type E = u64;

    fn k(&self) -> u32 {
        self.k
    }
    fn zero(&self) -> u64 {
        0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn ord(&self, a: &u64) -> u32 {
        if *a == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = *a;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }
    fn digits(&self) -> u32 {
        self.p as u32
    }
    fn with_digit(&self, a: &u64, pos: u32, digit: u32) -> u64 {
        if pos >= self.k {
            return *a;
        }
        (a + digit as u64 * self.p.pow(pos)) % self.modulus
    }
    fn monomial(&self, unit: u32, v: u32) -> u64 {
        if v >= self.k {
            return 0;
        }
        (unit as u64 * self.p.pow(v)) % self.modulus
    }
}

/// `F_q[t] / t^k`, digits are field elements.
pub struct SeriesModTk<'a> {
    pub field: &'a FieldDescriptor,
    pub k: u32,
}

impl TruncatedRing for SeriesModTk<'_> {
    type E = Vec<GfElem>;

    fn k(&self) -> u32 {
        self.k
    }
    fn zero(&self) -> Vec<GfElem> {
        vec![0; self.k as usize]
    }
    fn add(&self, a: &Vec<GfElem>, b: &Vec<GfElem>) -> Vec<GfElem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }
    fn mul(&self, a: &Vec<GfElem>, b: &Vec<GfElem>) -> Vec<GfElem> {
        let k = self.k as usize;
        let mut out = vec![0; k];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k - i {
                out[i + j] = self.field.add(out[i + j], self.field.mul(a[i], b[j]));
            }
        }
        out
    }
    fn ord(&self, a: &Vec<GfElem>) -> u32 {
        a.iter().position(|&c| c != 0).map_or(self.k, |i| i as u32)
    }
    fn digits(&self) -> u32 {
        self.field.size()
    }
    fn with_digit(&self, a: &Vec<GfElem>, pos: u32, digit: u32) -> Vec<GfElem> {
        let mut out = a.clone();
        if pos < self.k {
            out[pos as usize] = self.field.add(out[pos as usize], digit);
        }
        out
    }
    fn monomial(&self, unit: u32, v: u32) -> Vec<GfElem> {
        let mut out = self.zero();
        if v < self.k {
            out[v as usize] = unit;
        }
        out
    }
}

/// `π^val * φ(block variables)`, with `φ` homogeneous of degree `d` given by terms
/// (residue digit of the coefficient, exponents).
pub struct Block {
    pub val: u32,
    pub nvars: usize,
    pub terms: Vec<(u32, Vec<u32>)>,
}

impl Block {
    pub fn diagonal(unit: u32, val: u32, d: u32) -> Block {
        Block {
            val,
            nvars: 1,
            terms: vec![(unit, vec![d])],
        }
    }
}

/// Precision at which the form must vanish: one more than the valuation spread.
///
/// A primitive zero modulo `π^k` with `k` above every valuation forces a nontrivial zero of
/// the lowest-valuation residue part, so it is found exactly when one exists in the
/// completion (the residue characteristic must not divide `d` for that converse; the
/// direction "no zero mod π^k, hence anisotropic" holds for every `d`).
pub fn oracle_precision(vals: &[u32]) -> u32 {
    let lo = vals.iter().copied().min().unwrap_or(0);
    let hi = vals.iter().copied().max().unwrap_or(0);
    hi - lo + 1
}

struct Search<'a, R: TruncatedRing> {
    ring: &'a R,
    d: u32,
    blocks: Vec<Block>,
    x: Vec<Vec<R::E>>,
    known: Vec<u32>,
    term: Vec<R::E>,
    nodes: u64,
}

impl<R: TruncatedRing> Search<'_, R> {
    fn eval_block(&self, b: usize) -> R::E {
        let r = self.ring;
        let blk = &self.blocks[b];
        let mut acc = r.zero();
        for (c, e) in &blk.terms {
            let mut t = r.monomial(*c, 0);
            for (xi, &k) in self.x[b].iter().zip(e) {
                t = r.mul(&t, &r.pow(xi, k));
            }
            acc = r.add(&acc, &t);
        }
        r.mul(&acc, &r.monomial(1, blk.val))
    }

    /// Precision to which block `b`'s term is determined by the digits known so far.
    fn determined(&self, b: usize) -> u32 {
        let c = self.known[b];
        let v = self.blocks[b].val;
        let j = self.x[b].iter().map(|xi| self.ring.ord(xi)).min().unwrap_or(self.ring.k());
        let bound = if j >= c { v + self.d * c } else { v + self.d * j + c - j };
        bound.min(self.ring.k())
    }

    fn primitive_possible(&self) -> bool {
        self.known.iter().zip(&self.x).any(|(&c, xs)| {
            c == 0 || xs.iter().any(|xi| self.ring.ord(xi) == 0)
        })
    }

    fn go(&mut self) -> bool {
        self.nodes += 1;
        let r = self.ring;
        if !self.primitive_possible() {
            return false;
        }
        let (m, b) = (0..self.blocks.len())
            .map(|b| (self.determined(b), b))
            .min()
            .expect("at least one block");
        let sum = self.term.iter().fold(r.zero(), |acc, t| r.add(&acc, t));
        if r.ord(&sum) < m {
            return false;
        }
        if m >= r.k() {
            return true;
        }
        let nv = self.blocks[b].nvars;
        let pos = self.known[b];
        let saved = self.x[b].clone();
        let saved_term = self.term[b].clone();
        let base = r.digits() as u64;
        self.known[b] += 1;
        for code in 0..base.pow(nv as u32) {
            let mut rest = code;
            for i in 0..nv {
                let digit = (rest % base) as u32;
                rest /= base;
                self.x[b][i] = r.with_digit(&saved[i], pos, digit);
            }
            self.term[b] = self.eval_block(b);
            if self.go() {
                return true;
            }
        }
        self.known[b] -= 1;
        self.x[b] = saved;
        self.term[b] = saved_term;
        false
    }
}

/// Whether `sum_b π^{val_b} φ_b` has a zero modulo `π^k` with some coordinate a unit.
/// Returns the verdict and the number of search nodes.
pub fn has_primitive_zero<R: TruncatedRing>(ring: &R, d: u32, blocks: Vec<Block>) -> (bool, u64) {
    let n = blocks.len();
    let mut s = Search {
        ring,
        d,
        x: blocks.iter().map(|b| vec![ring.zero(); b.nvars]).collect(),
        known: vec![0; n],
        term: vec![ring.zero(); n],
        blocks,
        nodes: 0,
    };
    let found = s.go();
    (found, s.nodes)
}

/// Diagonal form `sum u_i π^{v_i} x_i^d` with valuations shifted to start at 0, decided at
/// [`oracle_precision`].
pub fn padic_diagonal_oracle(p: u64, d: u32, coeffs: &[(u32, i64)]) -> bool {
    let lo = coeffs.iter().map(|c| c.1).min().unwrap_or(0);
    let vals: Vec<u32> = coeffs.iter().map(|c| (c.1 - lo) as u32).collect();
    let ring = IntegersModPk::new(p, oracle_precision(&vals));
    let blocks = coeffs
        .iter()
        .zip(&vals)
        .map(|(c, &v)| Block::diagonal(c.0, v, d))
        .collect();
    has_primitive_zero(&ring, d, blocks).0
}

/// Same over `F_q((t))`.
pub fn laurent_diagonal_oracle(f: &FieldDescriptor, d: u32, coeffs: &[(u32, i64)]) -> bool {
    let lo = coeffs.iter().map(|c| c.1).min().unwrap_or(0);
    let vals: Vec<u32> = coeffs.iter().map(|c| (c.1 - lo) as u32).collect();
    let ring = SeriesModTk {
        field: f,
        k: oracle_precision(&vals),
    };
    let blocks = coeffs
        .iter()
        .zip(&vals)
        .map(|(c, &v)| Block::diagonal(c.0, v, d))
        .collect();
    has_primitive_zero(&ring, d, blocks).0
}

/// Symmetric tensor entry of a monomial coefficient: `c * prod(e_k!) / d!`.
pub fn polar_entry(f: &FieldDescriptor, coef: GfElem, exponents: &[u32]) -> GfElem {
    let fact = |n: u32| (1..=n as i64).fold(1, |acc, k| f.mul(acc, f.from_int(k)));
    let num = exponents.iter().fold(coef, |acc, &e| f.mul(acc, fact(e)));
    let d: u32 = exponents.iter().sum();
    f.div(num, fact(d)).expect("d! invertible")
}

/// Deterministic RNG for the sweeps.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
