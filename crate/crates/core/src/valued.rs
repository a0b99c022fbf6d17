//! Diagonal forms over discretely valued fields with residue characteristic prime to d:
//! p-adic fields, iterated Laurent series fields, and abstract fields given only by their
//! residue invariant and value group.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::DiagonalForm;
use crate::gf::{gcd, make_field, ord_p, FieldDescriptor, GfElem};
use crate::invariants::{u_diag, InvariantReport, InvariantValue, Witness};
use crate::isotropy::{is_isotropic_diagonal, Isotropy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LaurentBase {
    Finite { p: u64, f: u32 },
    AlgebraicallyClosed { characteristic: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValuedKind {
    /// Finite extension of Q_p with residue degree `f` and ramification index `e`.
    PAdic { p: u64, f: u32, e: u32 },
    /// `k((t_1))...((t_n))`.
    LaurentTower { base: LaurentBase, layers: usize },
    /// A Henselian field known only through `u_diag` of its residue field and `|Γ/dΓ|`.
    Formal {
        residue_u: InvariantValue,
        group_index: InvariantValue,
        characteristic: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValuedFieldDescriptor {
    kind: ValuedKind,
    residue: Option<FieldDescriptor>,
}

impl ValuedFieldDescriptor {
    pub fn padic(p: u64, f: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Invalid("ramification index must be positive".into()));
        }
        let residue = make_field(p, f)?;
        Ok(ValuedFieldDescriptor {
            kind: ValuedKind::PAdic { p, f, e },
            residue: Some(residue),
        })
    }

    /// `Q_p`.
    pub fn qp(p: u64) -> Result<Self> {
        Self::padic(p, 1, 1)
    }

    pub fn laurent(base: &FieldDescriptor, layers: usize) -> Result<Self> {
        if layers == 0 {
            return Err(Error::Invalid("a Laurent tower needs at least one layer".into()));
        }
        Ok(ValuedFieldDescriptor {
            kind: ValuedKind::LaurentTower {
                base: LaurentBase::Finite {
                    p: base.characteristic() as u64,
                    f: base.degree(),
                },
                layers,
            },
            residue: Some(base.clone()),
        })
    }

    /// Tower over an algebraically closed field of the given characteristic (0 allowed).
    pub fn laurent_alg_closed(characteristic: u64, layers: usize) -> Result<Self> {
        if layers == 0 {
            return Err(Error::Invalid("a Laurent tower needs at least one layer".into()));
        }
        if characteristic != 0 && !crate::gf::is_prime(characteristic) {
            return Err(Error::NotPrime(characteristic));
        }
        Ok(ValuedFieldDescriptor {
            kind: ValuedKind::LaurentTower {
                base: LaurentBase::AlgebraicallyClosed { characteristic },
                layers,
            },
            residue: None,
        })
    }

    pub fn formal(residue_u: InvariantValue, group_index: InvariantValue, characteristic: u64) -> Self {
        ValuedFieldDescriptor {
            kind: ValuedKind::Formal {
                residue_u,
                group_index,
                characteristic,
            },
            residue: None,
        }
    }

    pub fn kind(&self) -> &ValuedKind {
        &self.kind
    }

    /// The residue field when it is a concrete finite field.
    pub fn residue(&self) -> Option<&FieldDescriptor> {
        self.residue.as_ref()
    }

    pub fn residue_characteristic(&self) -> u64 {
        match &self.kind {
            ValuedKind::PAdic { p, .. } => *p,
            ValuedKind::LaurentTower { base, .. } => match base {
                LaurentBase::Finite { p, .. } => *p,
                LaurentBase::AlgebraicallyClosed { characteristic } => *characteristic,
            },
            ValuedKind::Formal { characteristic, .. } => *characteristic,
        }
    }

    /// Length of valuation vectors: 1 for p-adic fields, `n` for an `n`-layer tower.
    pub fn layers(&self) -> usize {
        match &self.kind {
            ValuedKind::PAdic { .. } => 1,
            ValuedKind::LaurentTower { layers, .. } => *layers,
            ValuedKind::Formal { .. } => 0,
        }
    }

    /// `|Γ/dΓ|`.
    pub fn group_index(&self, d: u32) -> InvariantValue {
        match &self.kind {
            ValuedKind::Formal { group_index, .. } => *group_index,
            _ => (d as u64)
                .checked_pow(self.layers() as u32)
                .map_or(InvariantValue::Infinite, InvariantValue::Finite),
        }
    }

    /// Fails when the residue characteristic divides `d`.
    pub fn check_tame(&self, d: u32) -> Result<()> {
        let p = self.residue_characteristic();
        if d == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        if p != 0 && d as u64 % p == 0 {
            return Err(Error::WildCase { p, d });
        }
        Ok(())
    }
}

impl fmt::Display for ValuedFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ValuedKind::PAdic { p, f: 1, e: 1 } => write!(f, "Q_{p}"),
            ValuedKind::PAdic { p, f: fd, e } => write!(f, "K/Q_{p}[f={fd},e={e}]"),
            ValuedKind::LaurentTower { base, layers } => {
                match base {
                    LaurentBase::Finite { .. } => {
                        write!(f, "{}", self.residue.as_ref().expect("concrete residue"))?
                    }
                    LaurentBase::AlgebraicallyClosed { characteristic } => {
                        write!(f, "k[alg.closed,char={characteristic}]")?
                    }
                }
                for i in 1..=*layers {
                    write!(f, "((t{i}))")?;
                }
                Ok(())
            }
            ValuedKind::Formal {
                residue_u,
                group_index,
                characteristic,
            } => write!(f, "K[u_res={residue_u},index={group_index},char={characteristic}]"),
        }
    }
}

/// `unit * π^val`, with `π^val = t_1^{val_1} ... t_n^{val_n}` for towers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValuedCoeff {
    pub unit: GfElem,
    pub val: Vec<i64>,
}

impl ValuedCoeff {
    pub fn new(unit: GfElem, val: Vec<i64>) -> Self {
        ValuedCoeff { unit, val }
    }

    /// Valuation classes modulo `d`, componentwise.
    pub fn class(&self, d: u32) -> Vec<u32> {
        self.val.iter().map(|v| v.rem_euclid(d as i64) as u32).collect()
    }
}

impl fmt::Display for ValuedCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.val.as_slice() {
            [v] => write!(f, "{}@{v}", self.unit),
            vs => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "{}@({})", self.unit, parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuedDiagonalForm {
    degree: u32,
    coeffs: Vec<ValuedCoeff>,
}

impl ValuedDiagonalForm {
    pub fn new(field: &ValuedFieldDescriptor, degree: u32, coeffs: Vec<ValuedCoeff>) -> Result<Self> {
        let residue = field
            .residue()
            .ok_or_else(|| Error::Invalid(format!("{field} has no concrete residue field")))?;
        for (i, c) in coeffs.iter().enumerate() {
            residue.check(c.unit as u64)?;
            if c.unit == 0 {
                return Err(Error::ZeroCoefficient(i));
            }
            if c.val.len() != field.layers() {
                return Err(Error::DimensionMismatch {
                    expected: field.layers(),
                    got: c.val.len(),
                });
            }
        }
        Ok(ValuedDiagonalForm { degree, coeffs })
    }

    /// Skips validation; used where the residue field is not concrete.
    pub(crate) fn from_parts(degree: u32, coeffs: Vec<ValuedCoeff>) -> Self {
        ValuedDiagonalForm { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ValuedCoeff] {
        &self.coeffs
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Ok(ValuedDiagonalForm {
            degree: self.degree,
            coeffs,
        })
    }
}

impl fmt::Display for ValuedDiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "d:{} diag:{}", self.degree, parts.join(","))
    }
}

/// Residue forms indexed by valuation class. Each entry also lists the positions of the
/// coefficients it collects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDecomposition {
    pub classes: BTreeMap<Vec<u32>, (Vec<usize>, DiagonalForm<GfElem>)>,
}

pub fn residue_decomposition(
    field: &ValuedFieldDescriptor,
    phi: &ValuedDiagonalForm,
) -> Result<ResidueDecomposition> {
    let d = phi.degree;
    field.check_tame(d)?;
    let residue = field
        .residue()
        .ok_or_else(|| Error::Invalid(format!("{field} has no concrete residue field")))?;
    let mut groups: BTreeMap<Vec<u32>, (Vec<usize>, Vec<GfElem>)> = BTreeMap::new();
    for (i, c) in phi.coeffs.iter().enumerate() {
        let g = groups.entry(c.class(d)).or_default();
        g.0.push(i);
        g.1.push(c.unit);
    }
    let mut classes = BTreeMap::new();
    for (k, (idx, units)) in groups {
        classes.insert(k, (idx, DiagonalForm::new(residue, d, units)?));
    }
    Ok(ResidueDecomposition { classes })
}

/// Isotropy verdict over a Henselian valued field.
///
/// When isotropic, `class` names the residue form with a zero and `witness` gives the
/// leading term `unit * π^val` of each coordinate of a zero (`None` for zero coordinates);
/// Hensel's lemma completes it because the residue characteristic does not divide d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuedVerdict {
    pub outcome: Isotropy,
    pub class: Option<Vec<u32>>,
    pub witness: Option<Vec<Option<ValuedCoeff>>>,
    pub search_cost: u64,
}

impl ValuedVerdict {
    pub fn is_isotropic(&self) -> bool {
        self.outcome == Isotropy::Isotropic
    }

    pub fn is_anisotropic(&self) -> bool {
        self.outcome == Isotropy::Anisotropic
    }
}

pub fn is_isotropic_valued_diagonal(
    field: &ValuedFieldDescriptor,
    phi: &ValuedDiagonalForm,
) -> Result<ValuedVerdict> {
    let dec = residue_decomposition(field, phi)?;
    let residue = field.residue().expect("checked by the decomposition");
    let d = phi.degree as i64;
    let mut cost = 0;
    for (class, (idx, form)) in &dec.classes {
        let v = is_isotropic_diagonal(residue, phi.degree, form.coeffs())?;
        cost += v.search_cost;
        if let Some(w) = v.witness {
            let mut out = vec![None; phi.dim()];
            for (&i, &x) in idx.iter().zip(&w) {
                if x != 0 {
                    let c = &phi.coeffs[i];
                    let shift = c
                        .val
                        .iter()
                        .zip(class)
                        .map(|(&v, &g)| -(v - g as i64) / d)
                        .collect();
                    out[i] = Some(ValuedCoeff::new(x, shift));
                }
            }
            return Ok(ValuedVerdict {
                outcome: Isotropy::Isotropic,
                class: Some(class.clone()),
                witness: Some(out),
                search_cost: cost,
            });
        }
    }
    Ok(ValuedVerdict {
        outcome: Isotropy::Anisotropic,
        class: None,
        witness: None,
        search_cost: cost,
    })
}

/// All valuation class vectors in `[0, d)^n`, first layer most significant.
pub fn class_vectors(d: u32, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d as i64).map(move |g| {
                    let mut w = v.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    out
}

/// `u_diag(d, K) = |Γ/dΓ| * u_diag(d, residue field)`.
pub fn u_diag_springer(field: &ValuedFieldDescriptor, d: u32) -> Result<InvariantReport> {
    field.check_tame(d)?;
    let index = field.group_index(d);
    let (residue_u, residue_bound, residue_witness, cost, f) = match (&field.kind, field.residue()) {
        (ValuedKind::Formal { residue_u, .. }, _) => (*residue_u, *residue_u, None, 0, 0),
        (_, Some(res)) => {
            let r = u_diag(res, d)?;
            let coeffs = match r.witness {
                Some(Witness::AnisotropicForm { coeffs, .. }) => Some(coeffs),
                _ => None,
            };
            (r.value, r.bound_used, coeffs, r.search_cost, res.degree())
        }
        // algebraically closed: every unit is a d-th power and <1,1> is isotropic
        (_, None) => (InvariantValue::Finite(1), InvariantValue::Finite(1), Some(vec![1]), 0, 0),
    };
    let value = index * residue_u;
    let witness = match (&residue_witness, value) {
        (Some(units), InvariantValue::Finite(n)) if n <= 1 << 16 => {
            let mut coeffs = Vec::new();
            for class in class_vectors(d, field.layers()) {
                for &u in units {
                    coeffs.push((u, class.clone()));
                }
            }
            Some(Witness::ValuedForm { degree: d, coeffs })
        }
        _ => None,
    };
    Ok(InvariantReport {
        field: field.to_string(),
        p: field.residue_characteristic(),
        f,
        d,
        value,
        witness,
        bound_used: index * residue_bound,
        search_cost: cost,
    })
}

/// Least `m >= 1` such that `-m` is a d-th power in the valuation ring of an unramified
/// or ramified extension of Q_p with residue field F_{p^f} and ramification index `e`.
fn m_d_ring(p: u64, f: u32, e: u32, d: u32) -> Result<u64> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    if d as u64 % p == 0 {
        return Err(Error::WildCase { p, d });
    }
    let res = make_field(p, f)?;
    for m in 1.. {
        let k = ord_p(m, p);
        let unit = m / p.pow(k);
        // -m = p^k * (-unit) and p has valuation e
        if (k as u64 * e as u64) % d as u64 == 0 && res.is_dth_power(res.from_int(-(unit as i64)), d) {
            return Ok(m);
        }
    }
    unreachable!("m = p - 1 always qualifies")
}

/// `m_d` for Z_p: the least `m >= 1` with `-m` a d-th power in Z_p.
pub fn m_d(p: u64, d: u32) -> Result<u64> {
    if !crate::gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    m_d_ring(p, 1, 1, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub formula: String,
    /// `None` when the formula cannot be evaluated for this field.
    pub value: Option<InvariantValue>,
    /// Whether the formula's preconditions hold, so that `value` is an upper bound for
    /// `u_diag(d, K)`.
    pub valid: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub field: String,
    pub d: u32,
    pub entries: Vec<BoundEntry>,
    /// Name of the least valid bound other than the exact value.
    pub tightest: Option<&'static str>,
}

impl BoundTable {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn entry(name: &'static str, formula: String, value: Option<u64>, valid: bool, note: Option<&str>) -> BoundEntry {
    BoundEntry {
        name,
        formula,
        value: value.map(InvariantValue::Finite),
        valid,
        note: note.map(str::to_owned),
    }
}

/// Evaluates the known upper bounds for `u_diag(d, K)` and the exact Springer value.
pub fn bound_calculators(field: &ValuedFieldDescriptor, d: u32) -> Result<BoundTable> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    let mut entries = Vec::new();
    let tame = field.check_tame(d).is_ok();
    match field.kind.clone() {
        ValuedKind::PAdic { p, f, e } => {
            let q = p.pow(f);
            let n = (e * f) as u64;
            let dd = d as u64;
            let g = gcd(dd, q - 1);
            let pk = p.pow(ord_p(dd, p));
            let unit_index = g * pk.pow(e);
            let unit_formula_ok = tame;
            entries.push(entry(
                "kneser",
                format!("d*gcd(d,q-1)*|Z_p/dZ_p|^e = {dd}*{g}*{pk}^{e}"),
                Some(dd * unit_index),
                unit_formula_ok,
                (!unit_formula_ok).then_some("unit-group index formula used outside p ∤ d"),
            ));
            // roots of unity: exact for p ∤ d, and for unramified K when p | d
            let w = if tame {
                Some(g)
            } else if e == 1 {
                Some(if p == 2 && d % 2 == 0 { 2 * g } else { g })
            } else {
                None
            };
            entries.push(match w {
                Some(w) => entry("koblitz", format!("d/|d|_p*w = {dd}*{pk}*{w}"), Some(dd * pk * w), true, None),
                None => entry(
                    "koblitz",
                    "d/|d|_p*w".into(),
                    None,
                    false,
                    Some("number of d-th roots of unity not determined for ramified K with p | d"),
                ),
            });
            let alemu = if p > 2 && dd % p == 0 {
                Some((3 * n * dd * dd - n * dd + 1).max(2 * dd.pow(3) - dd * dd))
            } else if p == 2 {
                Some(4 * n * dd * dd - n * dd + 1)
            } else {
                None
            };
            entries.push(match alemu {
                Some(a) => entry(
                    "alemu",
                    format!("strict bound {a}, reported as {}", a - 1),
                    Some(a - 1),
                    true,
                    None,
                ),
                None => entry("alemu", "requires p | d or p = 2".into(), None, false, Some("not applicable")),
            });
            let no_roots = tame && w == Some(1);
            entries.push(entry(
                "kneser_no_roots",
                "d".into(),
                no_roots.then_some(dd),
                no_roots,
                (!no_roots).then_some("requires p ∤ d and no nontrivial d-th roots of unity"),
            ));
            let md = if d % 2 == 0 && tame { Some(m_d_ring(p, f, e, d)?) } else { None };
            let factor = if d % 2 == 1 { Some(1) } else { md.map(|m| 1 + m) };
            let dvr_md = factor.map(|c| c * dd * unit_index);
            entries.push(entry(
                "dvr_md",
                match md {
                    Some(m) => format!("(1+m_d)*d*|R^x/R^xd| = {}*{dd}*{unit_index}", 1 + m),
                    None => format!("d*|R^x/R^xd| = {dd}*{unit_index}"),
                },
                dvr_md,
                dvr_md.is_some() && unit_formula_ok,
                if d % 2 == 0 && !tame {
                    Some("m_d only computed for p ∤ d")
                } else if !unit_formula_ok {
                    Some("unit-group index formula used outside p ∤ d")
                } else {
                    None
                },
            ));
            let kneser = dd * unit_index;
            entries.push(entry(
                "dvr_min",
                "min(|K^x/K^xd|, dvr_md)".into(),
                dvr_md.map(|b| b.min(kneser)),
                dvr_md.is_some() && unit_formula_ok,
                (!unit_formula_ok).then_some("needs the unit-group formula, valid for p ∤ d"),
            ));
            entries.push(entry(
                "unramified",
                format!("{}d*gcd(d,q-1)*|Z_p/dZ_p|^e", if d % 2 == 0 { "(1+m_d)*" } else { "" }),
                dvr_md,
                dvr_md.is_some() && unit_formula_ok,
                None,
            ));
            if f == 1 && e == 1 {
                let v = dd * gcd(dd, p - 1) * pk;
                let even = d % 2 == 0;
                entries.push(entry(
                    "unramified_odd",
                    format!("d*gcd(d,p-1)*|Z_p/dZ_p| = {dd}*{}*{pk}", gcd(dd, p - 1)),
                    Some(v),
                    !even,
                    even.then_some("same expression printed for even d without the (1+m_d) factor"),
                ));
            }
            let two_power = p == 2 && d.is_power_of_two();
            let joly_ok = n == 1 || tame;
            entries.push(entry(
                "joly",
                if two_power { "2d^2".into() } else { "d^2".into() },
                joly_ok.then_some(if two_power { 2 * dd * dd } else { dd * dd }),
                joly_ok,
                (!joly_ok).then_some("extension of Q_p with p | d"),
            ));
            let res = field.residue().expect("p-adic residue");
            let minus_one_power = res.is_dth_power(res.neg(1), d);
            let orzech_ok = tame && minus_one_power && d >= 4;
            entries.push(entry(
                "orzech",
                "d*(d-1)".into(),
                orzech_ok.then_some(dd * (dd - 1)),
                orzech_ok,
                (!orzech_ok).then_some("requires p ∤ d, -1 a d-th power in F_q and d >= 4"),
            ));
        }
        ValuedKind::LaurentTower { .. } | ValuedKind::Formal { .. } => {
            if let Some(res) = field.residue() {
                let dd = d as u64;
                let g = gcd(dd, res.unit_order() as u64);
                let idx = field.group_index(d);
                entries.push(BoundEntry {
                    name: "kneser",
                    formula: format!("|Γ/dΓ|*gcd(d,q-1) = {idx}*{g}"),
                    value: Some(idx * InvariantValue::Finite(g)),
                    valid: tame,
                    note: (!tame).then(|| "residue characteristic divides d".to_owned()),
                });
            }
        }
    }
    let exact = if tame { Some(u_diag_springer(field, d)?.value) } else { None };
    entries.push(BoundEntry {
        name: "springer",
        formula: "|Γ/dΓ|*u_diag(d, residue field)".into(),
        value: exact,
        valid: exact.is_some(),
        note: (!tame).then(|| "residue characteristic divides d".to_owned()),
    });
    let tightest = entries
        .iter()
        .filter(|e| e.valid && e.name != "springer")
        .filter_map(|e| e.value.map(|v| (v, e.name)))
        .min()
        .map(|(_, n)| n);
    Ok(BoundTable {
        field: field.to_string(),
        d,
        entries,
        tightest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(pairs: &[(u32, i64)]) -> Vec<ValuedCoeff> {
        pairs.iter().map(|&(u, v)| ValuedCoeff::new(u, vec![v])).collect()
    }

    #[test]
    fn decomposition_groups_by_class() {
        let q5 = ValuedFieldDescriptor::qp(5).unwrap();
        let phi = ValuedDiagonalForm::new(&q5, 4, coeffs(&[(1, 0), (1, 1)])).unwrap();
        let dec = residue_decomposition(&q5, &phi).unwrap();
        assert_eq!(dec.classes.len(), 2);
        assert_eq!(dec.classes[&vec![1]].1.coeffs(), &[1]);
        let shifted = ValuedDiagonalForm::new(&q5, 4, coeffs(&[(3, 4)])).unwrap();
        let dec = residue_decomposition(&q5, &shifted).unwrap();
        assert_eq!(dec.classes.keys().collect::<Vec<_>>(), vec![&vec![0]]);
        let neg = ValuedDiagonalForm::new(&q5, 4, coeffs(&[(2, -1)])).unwrap();
        assert!(residue_decomposition(&q5, &neg).unwrap().classes.contains_key(&vec![3]));
    }

    #[test]
    fn padic_isotropy() {
        let q5 = ValuedFieldDescriptor::qp(5).unwrap();
        let five = ValuedDiagonalForm::new(&q5, 4, coeffs(&[(1, 0); 5])).unwrap();
        let v = is_isotropic_valued_diagonal(&q5, &five).unwrap();
        assert!(v.is_isotropic());
        assert_eq!(v.class, Some(vec![0]));
        let two = ValuedDiagonalForm::new(&q5, 4, coeffs(&[(1, 0), (1, 1)])).unwrap();
        assert!(is_isotropic_valued_diagonal(&q5, &two).unwrap().is_anisotropic());
    }

    #[test]
    fn wild_case_is_rejected() {
        let q2 = ValuedFieldDescriptor::qp(2).unwrap();
        let phi = ValuedDiagonalForm::new(&q2, 4, coeffs(&[(1, 0)])).unwrap();
        assert_eq!(
            residue_decomposition(&q2, &phi).unwrap_err(),
            Error::WildCase { p: 2, d: 4 }
        );
        assert!(u_diag_springer(&q2, 2).is_err());
    }

    #[test]
    fn springer_values() {
        let val = |k: &ValuedFieldDescriptor, d| u_diag_springer(k, d).unwrap().value;
        let fin = InvariantValue::Finite;
        assert_eq!(val(&ValuedFieldDescriptor::qp(5).unwrap(), 4), fin(16));
        assert_eq!(val(&ValuedFieldDescriptor::qp(11).unwrap(), 6), fin(12));
        assert_eq!(val(&ValuedFieldDescriptor::qp(7).unwrap(), 4), fin(8));
        assert_eq!(val(&ValuedFieldDescriptor::laurent_alg_closed(0, 3).unwrap(), 5), fin(125));
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(val(&ValuedFieldDescriptor::laurent(&f7, 2).unwrap(), 6), fin(216));
        let formal = ValuedFieldDescriptor::formal(InvariantValue::Infinite, fin(4), 0);
        assert_eq!(val(&formal, 4), InvariantValue::Infinite);
        let formal = ValuedFieldDescriptor::formal(fin(2), InvariantValue::Infinite, 0);
        assert_eq!(val(&formal, 4), InvariantValue::Infinite);
    }

    #[test]
    fn springer_witness_is_anisotropic() {
        let q7 = ValuedFieldDescriptor::qp(7).unwrap();
        let r = u_diag_springer(&q7, 6).unwrap();
        let Some(Witness::ValuedForm { degree, coeffs }) = r.witness else {
            panic!("missing witness")
        };
        assert_eq!(coeffs.len(), 36);
        let phi = ValuedDiagonalForm::new(
            &q7,
            degree,
            coeffs.into_iter().map(|(u, v)| ValuedCoeff::new(u, v)).collect(),
        )
        .unwrap();
        assert!(is_isotropic_valued_diagonal(&q7, &phi).unwrap().is_anisotropic());
    }

    #[test]
    fn m_d_examples() {
        assert_eq!(m_d(5, 4).unwrap(), 4);
        assert_eq!(m_d(7, 6).unwrap(), 6);
        assert_eq!(m_d(13, 4).unwrap(), 4);
        assert_eq!(m_d(17, 4).unwrap(), 1);
        assert_eq!(m_d(3, 2).unwrap(), 2);
        assert!(m_d(3, 6).is_err());
        assert!(m_d(4, 2).is_err());
    }

    #[test]
    fn bound_table_for_q5() {
        let t = bound_calculators(&ValuedFieldDescriptor::qp(5).unwrap(), 4).unwrap();
        let v = |n: &str| t.get(n).unwrap().value.and_then(|v| v.finite());
        assert_eq!(v("kneser"), Some(16));
        assert_eq!(v("koblitz"), Some(16));
        assert_eq!(v("joly"), Some(16));
        assert_eq!(v("dvr_md"), Some(5 * 16));
        assert_eq!(v("dvr_min"), Some(16));
        assert_eq!(v("springer"), Some(16));
        assert!(!t.get("unramified_odd").unwrap().valid);
        assert!(!t.get("alemu").unwrap().valid);
        assert!(!t.get("orzech").unwrap().valid);
    }

    #[test]
    fn bound_table_coprime_case() {
        // d = 5 prime to 3 and to 3 - 1
        let t = bound_calculators(&ValuedFieldDescriptor::qp(3).unwrap(), 5).unwrap();
        assert_eq!(t.get("kneser_no_roots").unwrap().value, Some(InvariantValue::Finite(5)));
        assert_eq!(t.get("joly").unwrap().value, Some(InvariantValue::Finite(25)));
        assert_eq!(t.get("unramified").unwrap().value, Some(InvariantValue::Finite(5)));
        assert!(t.tightest.is_some());
        let wild = bound_calculators(&ValuedFieldDescriptor::qp(3).unwrap(), 6).unwrap();
        assert_eq!(wild.get("alemu").unwrap().value, Some(InvariantValue::Finite(395)));
        assert_eq!(wild.get("springer").unwrap().value, None);
        assert_eq!(wild.get("koblitz").unwrap().value, Some(InvariantValue::Finite(36)));
    }

    #[test]
    fn display_formats() {
        let c = ValuedCoeff::new(2, vec![1, 0]);
        assert_eq!(c.to_string(), "2@(1,0)");
        assert_eq!(ValuedCoeff::new(3, vec![1]).to_string(), "3@1");
        assert_eq!(ValuedFieldDescriptor::qp(5).unwrap().to_string(), "Q_5");
        let f = make_field(7, 1).unwrap();
        assert_eq!(ValuedFieldDescriptor::laurent(&f, 2).unwrap().to_string(), "F_7((t1))((t2))");
    }
}
