//! Table-driven arithmetic in small finite fields and the d-th power classes of their unit groups.
//!
//! Elements of F_q, q = p^f, are the integers `0..q`. For prime fields an element is its
//! residue; for extensions it packs the coefficients of a polynomial in the modulus root,
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`.

use std::fmt;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Largest field size built by [`make_field`].
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 20;

/// Field element encoding.
pub type GfElem = u32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            while n % i == 0 {
                n /= i;
            }
        }
        i += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^f` into `(p, f)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p, f))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Exponent of `p` in `n` (n > 0).
pub fn ord_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Dense polynomials over F_p, coefficients low to high.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo `g` (g nonzero).
    pub fn rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dg = g.len() - 1;
        let lead_inv = inv_mod(g[dg], p);
        while r.len() > dg && !(r.len() == 1 && r[0] == 0) {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            if c != 0 {
                for i in 0..=dg {
                    let j = dr - dg + i;
                    r[j] = (r[j] + p - c * g[i] % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        if r.is_empty() {
            r.push(0);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, g, p)
    }

    pub fn pow_poly_mod(a: &[u64], mut e: u64, g: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(a, g, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, g, p);
            }
            b = mul_mod(&b, &b, g, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(g: &[u64], p: u64) -> bool {
        let f = g.len() - 1;
        if f == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // frob[i] = x^(p^i) mod g
        let mut frob = vec![rem(&x, g, p)];
        for i in 1..=f {
            let next = pow_poly_mod(&frob[i - 1], p, g, p);
            frob.push(next);
        }
        if !is_zero(&sub(&frob[f], &x, p)) {
            return false;
        }
        for r in super::prime_factors(f as u64) {
            let k = f / r as usize;
            let h = sub(&frob[k], &x, p);
            let d = gcd(g, &h, p);
            if d.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// The finite field F_q with discrete-log tables.
#[derive(Clone)]
pub struct FieldDescriptor {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    gen: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

/// Builds F_{p^f} with the default table budget.
pub fn make_field(p: u64, f: u32) -> Result<FieldDescriptor> {
    FieldDescriptor::with_budget(p, f, DEFAULT_TABLE_BUDGET)
}

/// Builds F_q from its size.
pub fn field_of_size(q: u64) -> Result<FieldDescriptor> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrime(q))?;
    make_field(p, f)
}

impl FieldDescriptor {
    pub fn with_budget(p: u64, f: u32, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if q > budget as u128 || q > u32::MAX as u128 / 2 {
            return Err(Error::FieldTooLarge { p, f, limit: budget });
        }
        let q = q as u64;

        let modulus: Vec<u64> = if f == 1 {
            vec![0, 1]
        } else {
            // lexicographically least monic irreducible: lower coefficients read as a base-p
            // integer with the x^{f-1} coefficient most significant
            let mut found = None;
            for code in 0..q {
                let mut g: Vec<u64> = (0..f).map(|i| (code / p.pow(i)) % p).collect();
                g.push(1);
                if g[0] != 0 && fp_poly::is_irreducible(&g, p) {
                    found = Some(g);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        let digits = |a: u64| -> Vec<u64> { (0..f).map(|i| (a / p.pow(i)) % p).collect() };
        let undigits = |v: &[u64]| -> u64 {
            v.iter()
                .enumerate()
                .map(|(i, &c)| c * p.pow(i as u32))
                .sum()
        };
        let slow_mul = |a: u64, b: u64| -> u64 {
            if f == 1 {
                a * b % p
            } else {
                undigits(&fp_poly::mul_mod(&digits(a), &digits(b), &modulus, p))
            }
        };
        let slow_pow = |a: u64, mut e: u64| -> u64 {
            let mut r = 1u64;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = q - 1;
        let cofactors: Vec<u64> = prime_factors(order).iter().map(|r| order / r).collect();
        let gen = (1..q)
            .find(|&g| cofactors.iter().all(|&c| slow_pow(g, c) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let n = order as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for (i, e) in exp.iter_mut().take(n).enumerate() {
            *e = x as u32;
            log[x as usize] = i as u32;
            x = slow_mul(x, gen);
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| undigits(&digits(a).iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u32)
            .collect();

        let add_table = if f > 1 && p != 2 && q <= 1024 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let db = digits(b);
                    let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = undigits(&s) as u32;
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(FieldDescriptor {
            p: p as u32,
            f,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            gen: gen as u32,
            log,
            exp,
            neg,
            add_table,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Order of the unit group, q - 1.
    pub fn unit_order(&self) -> u32 {
        self.q - 1
    }

    pub fn generator(&self) -> GfElem {
        self.gen
    }

    /// Coefficients (low to high) of the monic modulus; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<GfElem> {
        0..self.q
    }

    pub fn units(&self) -> std::ops::Range<GfElem> {
        1..self.q
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.q as u64
    }

    pub fn check(&self, a: u64) -> Result<GfElem> {
        if self.contains(a) {
            Ok(a as GfElem)
        } else {
            Err(Error::ElementOutOfRange {
                value: a,
                q: self.q as u64,
            })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> GfElem {
        n.rem_euclid(self.p as i64) as GfElem
    }

    #[inline]
    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        if self.f == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, mut a: GfElem, mut b: GfElem) -> GfElem {
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.f {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * scale;
            scale *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: GfElem) -> GfElem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: GfElem) -> Option<GfElem> {
        if a == 0 {
            None
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[a as usize]) % n) as usize])
        }
    }

    pub fn div(&self, a: GfElem, b: GfElem) -> Option<GfElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    #[inline]
    pub fn pow(&self, a: GfElem, e: u64) -> GfElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let k = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[k as usize]
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: GfElem) -> Option<u32> {
        if a == 0 || a >= self.q {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    pub fn exp(&self, k: u64) -> GfElem {
        self.exp[(k % (self.q - 1) as u64) as usize]
    }

    /// Is `a` a d-th power of a unit? (`a` nonzero)
    pub fn is_dth_power(&self, a: GfElem, d: u32) -> bool {
        let ds = gcd(d as u64, (self.q - 1) as u64) as u32;
        a != 0 && self.log[a as usize] % ds == 0
    }

    /// Base-p digits of the encoding, low to high.
    pub fn digits(&self, a: GfElem) -> Vec<u32> {
        let mut a = a;
        (0..self.f)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> GfElem {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("gen", &self.gen)
            .finish()
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.f)
        }
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}

impl Eq for FieldDescriptor {}

/// Cosets of F_q^x modulo its subgroup of d-th powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerClassTable {
    d: u32,
    d_star: u32,
    reps: Vec<GfElem>,
    // log residue mod d_star -> index into reps
    residue_index: Vec<u32>,
    logs: Vec<u32>,
}

impl PowerClassTable {
    pub fn degree(&self) -> u32 {
        self.d
    }

    /// gcd(d, q - 1), the number of classes.
    pub fn d_star(&self) -> u32 {
        self.d_star
    }

    /// Least element of every class, ascending. `reps()[0] == 1`.
    pub fn reps(&self) -> &[GfElem] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position of the class of `a` in [`reps`](Self::reps). Panics on zero.
    pub fn class_index(&self, a: GfElem) -> usize {
        assert!(a != 0, "zero has no power class");
        let l = self.logs[a as usize];
        self.residue_index[(l % self.d_star) as usize] as usize
    }

    /// Canonical representative of the class of `a` (a nonzero).
    pub fn class_of(&self, a: GfElem) -> GfElem {
        self.reps[self.class_index(a)]
    }
}

pub fn power_classes(field: &FieldDescriptor, d: u32) -> PowerClassTable {
    let d = d.max(1);
    let d_star = gcd(d as u64, field.unit_order() as u64) as u32;
    let mut least = vec![u32::MAX; d_star as usize];
    for a in field.units() {
        let r = (field.log[a as usize] % d_star) as usize;
        if least[r] == u32::MAX {
            least[r] = a;
        }
    }
    let mut reps = least.clone();
    reps.sort_unstable();
    let residue_index = least
        .iter()
        .map(|x| reps.binary_search(x).unwrap() as u32)
        .collect();
    PowerClassTable {
        d,
        d_star,
        reps,
        residue_index,
        logs: field.log.clone(),
    }
}

/// `{x^d : x in F_q}`, zero included.
pub fn dth_powers(field: &FieldDescriptor, d: u32) -> ElemSet {
    ElemSet::from_iter(
        field.size() as usize,
        field.elements().map(|x| field.pow(x, d as u64)),
    )
}

/// gcd(d, q - 1).
pub fn d_star(field: &FieldDescriptor, d: u32) -> u32 {
    gcd(d as u64, field.unit_order() as u64) as u32
}
