//! Levels, diagonal u-invariants and Waring numbers of finite fields.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::gf::{power_classes, FieldDescriptor, GfElem};
use crate::isotropy::{unit_dth_powers, DiagonalSearchState};

/// A nonnegative integer or infinity. Serializes as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantValue {
    Finite(u64),
    Infinite,
}

impl InvariantValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            InvariantValue::Finite(n) => Some(n),
            InvariantValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, InvariantValue::Finite(_))
    }
}

impl From<u64> for InvariantValue {
    fn from(n: u64) -> Self {
        InvariantValue::Finite(n)
    }
}

/// `inf * n = inf`, including `n = 0`: a zero factor never arises from a nonempty value group.
impl Mul for InvariantValue {
    type Output = InvariantValue;

    fn mul(self, rhs: InvariantValue) -> InvariantValue {
        match (self, rhs) {
            (InvariantValue::Finite(a), InvariantValue::Finite(b)) => {
                a.checked_mul(b).map_or(InvariantValue::Infinite, InvariantValue::Finite)
            }
            _ => InvariantValue::Infinite,
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Finite(n) => write!(f, "{n}"),
            InvariantValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InvariantValue::Finite(n) => s.serialize_u64(*n),
            InvariantValue::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Certificate attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An anisotropic diagonal form over the field.
    AnisotropicForm { degree: u32, coeffs: Vec<GfElem> },
    /// `target = x_1^d + ... + x_s^d`.
    PowerSum { target: GfElem, terms: Vec<GfElem> },
    /// An anisotropic diagonal form over a valued field, as (unit, valuation vector) pairs.
    ValuedForm {
        degree: u32,
        coeffs: Vec<(GfElem, Vec<i64>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub field: String,
    pub p: u64,
    pub f: u32,
    pub d: u32,
    pub value: InvariantValue,
    pub witness: Option<Witness>,
    pub bound_used: InvariantValue,
    pub search_cost: u64,
}

fn report(field: &FieldDescriptor, d: u32) -> InvariantReport {
    InvariantReport {
        field: field.to_string(),
        p: field.characteristic() as u64,
        f: field.degree(),
        d,
        value: InvariantValue::Finite(0),
        witness: None,
        bound_used: InvariantValue::Infinite,
        search_cost: 0,
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    Ok(())
}

/// Least `x` with `x^d = t`, indexed by `t`; `u32::MAX` where `t` is not a d-th power.
fn dth_roots(field: &FieldDescriptor, d: u32) -> Vec<GfElem> {
    let mut root = vec![u32::MAX; field.size() as usize];
    for x in field.elements() {
        let t = field.pow(x, d as u64) as usize;
        if root[t] == u32::MAX {
            root[t] = x;
        }
    }
    root
}

/// Breadth-first closure of sums of nonzero d-th powers.
///
/// `depth[a]` is the least number of nonzero d-th powers summing to `a` (0 if unreached),
/// `parent[a]` the previous partial sum and the power added.
pub struct PowerSumClosure {
    d: u32,
    depth: Vec<u32>,
    parent: Vec<(GfElem, GfElem)>,
    roots: Vec<GfElem>,
    cost: u64,
}

impl PowerSumClosure {
    pub fn new(field: &FieldDescriptor, d: u32) -> Result<Self> {
        check_degree(d)?;
        let q = field.size() as usize;
        let powers = unit_dth_powers(field, d);
        let mut depth = vec![0u32; q];
        let mut parent = vec![(0, 0); q];
        let mut frontier = Vec::new();
        for &t in &powers {
            depth[t as usize] = 1;
            parent[t as usize] = (0, t);
            frontier.push(t);
        }
        let mut cost = powers.len() as u64;
        let mut level = 1;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &t in &powers {
                    let y = field.add(x, t);
                    cost += 1;
                    if depth[y as usize] == 0 {
                        depth[y as usize] = level;
                        parent[y as usize] = (x, t);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(PowerSumClosure {
            d,
            depth,
            parent,
            roots: dth_roots(field, d),
            cost,
        })
    }

    /// Least number of nonzero d-th powers summing to `a`, if any.
    pub fn depth(&self, a: GfElem) -> Option<u32> {
        match self.depth.get(a as usize) {
            Some(&k) if k > 0 => Some(k),
            _ => None,
        }
    }

    /// The set `k_d` of sums of d-th powers (0 included).
    pub fn closure(&self) -> ElemSet {
        let q = self.depth.len();
        let mut s = ElemSet::from_iter(q, [0]);
        for (a, &k) in self.depth.iter().enumerate() {
            if k > 0 {
                s.insert(a as u32);
            }
        }
        s
    }

    /// A shortest representation of `a` as a sum of nonzero d-th powers, as the bases `x_i`.
    pub fn representation(&self, a: GfElem) -> Option<Vec<GfElem>> {
        let k = self.depth(a)?;
        let mut terms = Vec::with_capacity(k as usize);
        let mut cur = a;
        for _ in 0..k {
            let (prev, t) = self.parent[cur as usize];
            terms.push(self.roots[t as usize]);
            cur = prev;
        }
        terms.sort_unstable();
        Some(terms)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }
}

/// `s_d(F)`: least `s` with `-1` a sum of `s` d-th powers.
pub fn level(field: &FieldDescriptor, d: u32) -> Result<InvariantReport> {
    check_degree(d)?;
    let mut r = report(field, d);
    let d_star = crate::gf::d_star(field, d) as u64;
    r.bound_used = InvariantValue::Finite(d_star);
    let minus_one = field.neg(1);
    if d % 2 == 1 || field.characteristic() == 2 {
        r.value = InvariantValue::Finite(1);
        r.witness = Some(Witness::PowerSum {
            target: minus_one,
            terms: vec![minus_one],
        });
        return Ok(r);
    }
    let closure = PowerSumClosure::new(field, d)?;
    r.search_cost = closure.cost();
    match closure.representation(minus_one) {
        Some(terms) => {
            r.value = InvariantValue::Finite(terms.len() as u64);
            r.witness = Some(Witness::PowerSum {
                target: minus_one,
                terms,
            });
        }
        None => r.value = InvariantValue::Infinite,
    }
    Ok(r)
}

/// Least `n` such that every sum of d-th powers is a sum of `n` of them. The witness is a
/// shortest representation of the least element needing `n` terms.
pub fn waring_number(field: &FieldDescriptor, d: u32) -> Result<InvariantReport> {
    let closure = PowerSumClosure::new(field, d)?;
    let mut r = report(field, d);
    r.bound_used = InvariantValue::Finite(d as u64);
    r.search_cost = closure.cost();
    // 0 = 0^d counts as one term
    let mut worst = (1u32, 0 as GfElem);
    for a in field.units() {
        if let Some(k) = closure.depth(a) {
            if k > worst.0 {
                worst = (k, a);
            }
        }
    }
    r.value = InvariantValue::Finite(worst.0 as u64);
    let terms = if worst.1 == 0 {
        vec![0]
    } else {
        closure.representation(worst.1).expect("reached element")
    };
    r.witness = Some(Witness::PowerSum {
        target: worst.1,
        terms,
    });
    Ok(r)
}

/// Lexicographically least `(x_1, ..., x_s)` with `x_1^d + ... + x_s^d = a`.
pub fn sum_of_powers_decomposition(
    field: &FieldDescriptor,
    d: u32,
    a: GfElem,
    s: usize,
) -> Result<Option<Vec<GfElem>>> {
    check_degree(d)?;
    field.check(a as u64)?;
    let powers = unit_dth_powers(field, d);
    // layers[j]: sums of j d-th powers
    let mut layers = vec![DiagonalSearchState::new(field)];
    for j in 0..s {
        let next = layers[j].extend(field, &powers, 1);
        layers.push(next);
    }
    if !layers[s].values().contains(a) {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(s);
    let mut rest = a;
    for i in 0..s {
        let below = layers[s - 1 - i].values();
        let x = field
            .elements()
            .find(|&x| below.contains(field.sub(rest, field.pow(x, d as u64))))
            .expect("layer sets guarantee a completion");
        rest = field.sub(rest, field.pow(x, d as u64));
        out.push(x);
    }
    Ok(Some(out))
}

struct ClassSearch<'a> {
    field: &'a FieldDescriptor,
    d: u32,
    reps: &'a [GfElem],
    powers: Vec<GfElem>,
    cap: usize,
    cost: u64,
}

impl ClassSearch<'_> {
    /// Visits anisotropic forms given by non-decreasing class-index sequences starting at
    /// class 0, depth first. `visit` returns false to stop the search.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let start = DiagonalSearchState::new(self.field).extend(self.field, &self.powers, 1);
        let mut seq = vec![0usize];
        self.go(&start, &mut seq, visit);
    }

    fn go(
        &mut self,
        state: &DiagonalSearchState,
        seq: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if !visit(seq) {
            return false;
        }
        if seq.len() >= self.cap {
            return true;
        }
        let last = *seq.last().expect("nonempty");
        for c in last..self.reps.len() {
            let next = state.extend(self.field, &self.powers, self.reps[c]);
            self.cost += next.cost() - state.cost();
            if next.is_isotropic() {
                continue;
            }
            seq.push(c);
            let keep_going = self.go(&next, seq, visit);
            seq.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// `u_diag(d, F)`: maximal dimension of an anisotropic diagonal form of degree d.
///
/// Coefficients range over power-class representatives, the first fixed to 1 by scaling.
/// The search depth is capped at `gcd(d, q - 1)`, the number of classes.
pub fn u_diag(field: &FieldDescriptor, d: u32) -> Result<InvariantReport> {
    check_degree(d)?;
    let classes = power_classes(field, d);
    let cap = classes.len();
    let mut search = ClassSearch {
        field,
        d,
        reps: classes.reps(),
        powers: unit_dth_powers(field, d),
        cap,
        cost: 0,
    };
    let mut best: Vec<usize> = Vec::new();
    search.run(&mut |seq| {
        if seq.len() > best.len() {
            best = seq.to_vec();
        }
        best.len() < cap
    });
    let mut r = report(field, d);
    r.value = InvariantValue::Finite(best.len() as u64);
    r.bound_used = InvariantValue::Finite(cap as u64);
    r.search_cost = search.cost;
    r.witness = Some(Witness::AnisotropicForm {
        degree: search.d,
        coeffs: best.iter().map(|&c| classes.reps()[c]).collect(),
    });
    Ok(r)
}

/// Canonical anisotropic diagonal forms of dimension `dim`: class representatives in
/// non-decreasing class order with first coefficient 1. Every anisotropic form of that
/// dimension is a scalar multiple of a permutation of one of these.
pub fn anisotropic_forms(field: &FieldDescriptor, d: u32, dim: usize) -> Result<Vec<Vec<GfElem>>> {
    check_degree(d)?;
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    let classes = power_classes(field, d);
    let mut search = ClassSearch {
        field,
        d,
        reps: classes.reps(),
        powers: unit_dth_powers(field, d),
        cap: dim,
        cost: 0,
    };
    let mut out = Vec::new();
    search.run(&mut |seq| {
        if seq.len() == dim {
            out.push(seq.iter().map(|&c| classes.reps()[c]).collect());
        }
        true
    });
    Ok(out)
}

/// Outcome of the search for a 3-dimensional anisotropic diagonal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrzechCheck {
    pub exists: bool,
    pub witness: Option<Vec<GfElem>>,
}

/// Whether an anisotropic diagonal form of degree d and dimension 3 exists over the field.
pub fn check_orzech_dim3(field: &FieldDescriptor, d: u32) -> Result<OrzechCheck> {
    let witness = anisotropic_forms(field, d, 3)?.into_iter().next();
    Ok(OrzechCheck {
        exists: witness.is_some(),
        witness,
    })
}
