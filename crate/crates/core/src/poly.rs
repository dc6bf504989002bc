//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`SparsePoly`] lives over a shared [`VarTable`]. Exponent vectors are
//! dense (one slot per table variable) while the term map is sparse. Zero
//! coefficients are never stored, so two polynomials over the same table are
//! equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{falling, fmt_exact, Scalar};

pub type Exponents = SmallVec<[u16; 16]>;

/// Ordered, duplicate-free list of variable names.
#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// This table followed by every name of `other` not already present.
    pub fn union(&self, other: &VarTable) -> Arc<VarTable> {
        let mut names = self.names.clone();
        names.extend(other.names.iter().filter(|n| !self.contains(n)).cloned());
        VarTable::new(names).expect("union of duplicate-free tables")
    }

    /// This table followed by the given names (which must be new).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<VarTable>> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarTable::new(names)
    }

    fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.names == other.names
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarTable {}

#[derive(Debug, Clone)]
pub struct SparsePoly {
    table: Arc<VarTable>,
    terms: FxHashMap<Exponents, Scalar>,
}

/// Machine-readable polynomial: variable names plus `[numerator, denominator, exponents]` rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredPoly {
    pub vars: Vec<String>,
    pub terms: Vec<(String, String, Vec<u16>)>,
}

/// Graded-lex: higher total degree first, then lexicographically larger exponent vector first.
pub fn graded_lex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn add_exps(a: &[u16], b: &[u16]) -> Exponents {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

impl SparsePoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        SparsePoly { table: table.clone(), terms: FxHashMap::default() }
    }

    pub fn constant(table: &Arc<VarTable>, c: Scalar) -> Self {
        let mut p = Self::zero(table);
        p.add_term(SmallVec::from_elem(0, table.len()), c);
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Scalar::one())
    }

    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let idx = table.index_of(name)?;
        let mut exps: Exponents = SmallVec::from_elem(0, table.len());
        exps[idx] = 1;
        Ok(Self::monomial(table, exps, Scalar::one()))
    }

    pub fn monomial(table: &Arc<VarTable>, exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), table.len(), "exponent vector length");
        let mut p = Self::zero(table);
        p.add_term(exps, c);
        p
    }

    /// Builds `c * prod name^exp`.
    pub fn from_powers(table: &Arc<VarTable>, c: Scalar, powers: &[(&str, u16)]) -> Result<Self> {
        let mut exps: Exponents = SmallVec::from_elem(0, table.len());
        for (name, e) in powers {
            exps[table.index_of(name)?] += e;
        }
        Ok(Self::monomial(table, exps, c))
    }

    /// Linear form `sum coeffs[i] * vars[i]`.
    pub fn linear(table: &Arc<VarTable>, vars: &[&str], coeffs: &[Scalar]) -> Result<Self> {
        let mut p = Self::zero(table);
        for (v, c) in vars.iter().zip(coeffs) {
            let idx = table.index_of(v)?;
            let mut exps: Exponents = SmallVec::from_elem(0, table.len());
            exps[idx] = 1;
            p.add_term(exps, c.clone());
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The value of a constant polynomial, or `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if self.table.same_as(&other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let (mut big, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (e, c) in small.terms.iter() {
            big.add_term(e.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = Self::zero(&self.table);
        out.terms.reserve(self.len().saturating_mul(other.len()).min(1 << 16));
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        SparsePoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn derive(&self, var: &str, order: u32) -> Result<Self> {
        let idx = self.table.index_of(var)?;
        Ok(self.derive_idx(idx, order))
    }

    pub(crate) fn derive_idx(&self, idx: usize, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut out = Self::zero(&self.table);
        for (e, c) in self.terms.iter() {
            let k = e[idx] as u32;
            if k < order {
                continue;
            }
            let mut ne = e.clone();
            ne[idx] -= order as u16;
            out.add_term(ne, c * Scalar::from_integer(falling(k as u64, order as u64)));
        }
        out
    }

    /// Simultaneous substitution `var := replacement` for every listed pair.
    pub fn substitute(&self, assignments: &[(&str, SparsePoly)]) -> Result<Self> {
        let mut slots = Vec::with_capacity(assignments.len());
        for (name, rep) in assignments {
            self.check_table(rep)?;
            slots.push((self.table.index_of(name)?, rep));
        }
        // group terms by the exponents of the substituted variables
        let mut groups: FxHashMap<Vec<u16>, SparsePoly> = FxHashMap::default();
        for (e, c) in self.terms.iter() {
            let key: Vec<u16> = slots.iter().map(|(i, _)| e[*i]).collect();
            let mut rest = e.clone();
            for (i, _) in &slots {
                rest[*i] = 0;
            }
            groups
                .entry(key)
                .or_insert_with(|| Self::zero(&self.table))
                .add_term(rest, c.clone());
        }
        let mut powers: Vec<Vec<SparsePoly>> = slots.iter().map(|(_, r)| vec![Self::one(&r.table)]).collect();
        let mut out = Self::zero(&self.table);
        for (key, rest) in groups {
            let mut acc = rest;
            for (s, &k) in key.iter().enumerate() {
                while powers[s].len() <= k as usize {
                    let next = powers[s].last().unwrap() * slots[s].1;
                    powers[s].push(next);
                }
                if k > 0 {
                    acc = &acc * &powers[s][k as usize];
                }
            }
            for (e, c) in acc.terms {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Substitutes `from := to` for variable pairs; a renaming that merges exponents.
    pub fn merge_vars(&self, pairs: &[(&str, &str)]) -> Result<Self> {
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(f, t)| Ok((self.table.index_of(f)?, self.table.index_of(t)?)))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(&self.table);
        for (e, c) in self.terms.iter() {
            let mut ne = e.clone();
            for &(f, t) in &idx {
                if f != t {
                    ne[t] = ne[t].checked_add(ne[f]).expect("exponent overflow");
                    ne[f] = 0;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another table, matching variables by name.
    pub fn reembed(&self, table: &Arc<VarTable>) -> Result<Self> {
        if self.table.same_as(table) {
            return Ok(SparsePoly { table: table.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.table.len());
        for (i, name) in self.table.names().iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            map.push(match table.index_of(name) {
                Ok(j) => Some(j),
                Err(err) if used => return Err(err),
                Err(_) => None,
            });
        }
        let mut out = Self::zero(table);
        for (e, c) in self.terms.iter() {
            let mut ne: Exponents = SmallVec::from_elem(0, table.len());
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = x;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// The polynomial multiplying `prod var^exp` (exact exponents on the listed variables).
    pub fn coefficient_of(&self, monomial: &[(&str, u16)]) -> Result<Self> {
        let idx: Vec<(usize, u16)> = monomial
            .iter()
            .map(|(n, k)| Ok((self.table.index_of(n)?, *k)))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(&self.table);
        for (e, c) in self.terms.iter() {
            if idx.iter().all(|&(i, k)| e[i] == k) {
                let mut ne = e.clone();
                for &(i, _) in &idx {
                    ne[i] = 0;
                }
                out.add_term(ne, c.clone());
            }
        }
        Ok(out)
    }

    pub fn indices(&self, vars: &[&str]) -> Result<Vec<usize>> {
        vars.iter().map(|v| self.table.index_of(v)).collect()
    }

    /// Drops every term whose joint degree in `vars` exceeds `max`.
    pub fn truncate(&self, vars: &[usize], max: u32) -> Self {
        SparsePoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().map(|&i| e[i] as u32).sum::<u32>() <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to joint degree `max` in `vars`.
    pub fn mul_truncated(&self, other: &Self, vars: &[usize], max: u32) -> Result<Self> {
        self.check_table(other)?;
        let deg = |e: &Exponents| vars.iter().map(|&i| e[i] as u32).sum::<u32>();
        let a: Vec<_> = self.terms.iter().map(|(e, c)| (e, c, deg(e))).filter(|t| t.2 <= max).collect();
        let b: Vec<_> = other.terms.iter().map(|(e, c)| (e, c, deg(e))).filter(|t| t.2 <= max).collect();
        let mut out = Self::zero(&self.table);
        for (ea, ca, da) in &a {
            for (eb, cb, db) in &b {
                if da + db <= max {
                    out.add_term(add_exps(ea, eb), *ca * *cb);
                }
            }
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|e| vars.iter().map(|&i| e[i] as u32).sum()).max()
    }

    /// The common degree in `vars` of every term; `None` for the zero polynomial.
    pub fn homogeneous_degree(&self, vars: &[usize]) -> Result<Option<u32>> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = vars.iter().map(|&i| e[i] as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    let names: Vec<&str> = vars.iter().map(|&i| self.table.name(i)).collect();
                    return Err(Error::NotHomogeneous(names.join(",")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Terms in graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex(a.0, b.0));
        v
    }

    /// `Some(c)` with `self == c * other`; `None` if not proportional or `other` is zero.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        if self.check_table(other).is_err() || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.len() != other.len() {
            return None;
        }
        let (e0, c0) = other.terms.iter().next()?;
        let k = self.terms.get(e0)? / c0;
        other
            .terms
            .iter()
            .all(|(e, c)| self.terms.get(e).is_some_and(|x| *x == c * &k))
            .then_some(k)
    }

    pub fn to_structured(&self) -> StructuredPoly {
        StructuredPoly {
            vars: self.table.names().to_vec(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| (c.numer().to_string(), c.denom().to_string(), e.to_vec()))
                .collect(),
        }
    }

    pub fn from_structured(sp: &StructuredPoly) -> Result<Self> {
        let table = VarTable::new(sp.vars.clone())?;
        let mut p = Self::zero(&table);
        for (n, d, e) in &sp.terms {
            if e.len() != table.len() {
                return Err(Error::Parse(format!("exponent vector of length {}", e.len())));
            }
            let n: BigInt = n.parse().map_err(|_| Error::Parse(n.clone()))?;
            let d: BigInt = d.parse().map_err(|_| Error::Parse(d.clone()))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term(e.iter().copied().collect(), Scalar::new(n, d));
        }
        Ok(p)
    }

    /// Parses the text form written by `Display`.
    pub fn parse(table: &Arc<VarTable>, text: &str) -> Result<Self> {
        let mut p = Self::zero(table);
        for term in text.trim().split(" + ") {
            let mut parts = term.split(" * ");
            let coeff = parts.next().ok_or_else(|| Error::Parse(term.into()))?;
            let (n, d) = coeff.split_once('/').ok_or_else(|| Error::Parse(coeff.into()))?;
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(coeff.into()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(coeff.into()))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let mut exps: Exponents = SmallVec::from_elem(0, table.len());
            for factor in parts {
                let (name, e) = factor.split_once('^').ok_or_else(|| Error::Parse(factor.into()))?;
                let e: u16 = e.parse().map_err(|_| Error::Parse(factor.into()))?;
                exps[table.index_of(name)?] += e;
            }
            p.add_term(exps, Scalar::new(n, d));
        }
        Ok(p)
    }
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.table.same_as(&other.table) && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0/1");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_exact(c))?;
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    write!(f, " * {}^{}", self.table.name(i), x)?;
                }
            }
        }
        Ok(())
    }
}

// Operator sugar; these panic on mismatched tables, use the `try_*` forms otherwise.
impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("add: mismatched variable tables")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("sub: mismatched variable tables")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("mul: mismatched variable tables")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Scalar::one())
    }
}

/// Applies `op` as a differential operator to `target`.
///
/// `slots` pairs each differentiation variable of `op` with the target
/// variable it differentiates: an `op` monomial `s1^k1 s2^k2 ...` acts as
/// `d^k1/dt1^k1 d^k2/dt2^k2 ...`. Variables of `op` that are not slots are
/// plain coefficients and must exist, by name, in the target's table.
pub fn apply_diff_operator(op: &SparsePoly, slots: &[(&str, &str)], target: &SparsePoly) -> Result<SparsePoly> {
    let ttab = target.table();
    let mut slot_of: Vec<Option<usize>> = vec![None; op.table().len()];
    let mut slot_targets = Vec::with_capacity(slots.len());
    for (s, t) in slots {
        let si = op.table().index_of(s)?;
        let ti = ttab.index_of(t)?;
        slot_of[si] = Some(ti);
        slot_targets.push(ti);
    }
    let mut coef_map = vec![None; op.table().len()];
    for (i, name) in op.table().names().iter().enumerate() {
        if slot_of[i].is_none() && op.terms().any(|(e, _)| e[i] > 0) {
            coef_map[i] = Some(ttab.index_of(name)?);
        }
    }

    // index target terms by their exponents on the differentiated variables
    let mut by_key: FxHashMap<Vec<u16>, Vec<(&Exponents, &Scalar)>> = FxHashMap::default();
    for (e, c) in target.terms() {
        let key: Vec<u16> = slot_targets.iter().map(|&t| e[t]).collect();
        by_key.entry(key).or_default().push((e, c));
    }

    let mut out = SparsePoly::zero(ttab);
    for (oe, oc) in op.terms() {
        let mut need: Vec<u16> = vec![0; slot_targets.len()];
        let mut mult: Exponents = SmallVec::from_elem(0, ttab.len());
        for (i, &x) in oe.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if let Some(t) = slot_of[i] {
                let pos = slot_targets.iter().position(|&s| s == t).unwrap();
                need[pos] += x;
            } else if let Some(j) = coef_map[i] {
                mult[j] += x;
            }
        }
        for (key, rows) in by_key.iter() {
            if key.iter().zip(&need).any(|(have, want)| have < want) {
                continue;
            }
            let mut factor = oc.clone();
            for (&have, &want) in key.iter().zip(&need) {
                if want > 0 {
                    factor *= Scalar::from_integer(falling(have as u64, want as u64));
                }
            }
            for (e, c) in rows {
                let mut ne: Exponents = add_exps(e, &mult);
                for (pos, &t) in slot_targets.iter().enumerate() {
                    ne[t] -= need[pos];
                }
                out.add_term(ne, &factor * *c);
            }
        }
    }
    Ok(out)
}
