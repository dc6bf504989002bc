//! Characters of `SL2` modules by weight counting: plethysms `S_r(S_d)`,
//! decomposition into irreducibles `S_m`, the symmetric square `S_2(S_re)`,
//! the degree-`r` piece of the ideal, and Schur-module dimensions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::binomial;

/// Weight multiplicities of a torus character, keyed by weight.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector(pub BTreeMap<i64, u64>);

impl WeightVector {
    pub fn get(&self, k: i64) -> u64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    fn add(&mut self, k: i64, m: u64) {
        if m > 0 {
            *self.0.entry(k).or_insert(0) += m;
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(&k, &m)| self.get(-k) == m)
    }
}

/// Multiplicities of the irreducibles `S_m`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(u32, u64)>", from = "Vec<(u32, u64)>")]
pub struct IrrDecomp(pub BTreeMap<u32, u64>);

impl From<IrrDecomp> for Vec<(u32, u64)> {
    fn from(d: IrrDecomp) -> Self {
        d.0.into_iter().collect()
    }
}

impl From<Vec<(u32, u64)>> for IrrDecomp {
    fn from(v: Vec<(u32, u64)>) -> Self {
        let mut d = IrrDecomp::default();
        for (m, k) in v {
            d.add(m, k);
        }
        d
    }
}

impl IrrDecomp {
    pub fn single(m: u32) -> Self {
        IrrDecomp(BTreeMap::from([(m, 1)]))
    }

    pub fn multiplicity(&self, m: u32) -> u64 {
        self.0.get(&m).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&mut self, m: u32, k: u64) {
        if k > 0 {
            *self.0.entry(m).or_insert(0) += k;
        }
    }

    /// `sum (m + 1) * multiplicity`.
    pub fn dim(&self) -> u64 {
        self.0.iter().map(|(&m, &k)| (m as u64 + 1) * k).sum()
    }

    /// Formal difference; fails if any multiplicity would go negative.
    pub fn checked_sub(&self, other: &IrrDecomp) -> Result<IrrDecomp> {
        let mut out = self.clone();
        for (&m, &k) in &other.0 {
            let have = out.multiplicity(m);
            if have < k {
                return Err(Error::NegativeMultiplicity { m, multiplicity: have as i64 - k as i64 });
            }
            if have == k {
                out.0.remove(&m);
            } else {
                out.0.insert(m, have - k);
            }
        }
        Ok(out)
    }

    /// Summands in decreasing order.
    pub fn labels(&self) -> Vec<String> {
        self.0
            .iter()
            .rev()
            .map(|(m, &k)| if k == 1 { format!("S{m}") } else { format!("{k}S{m}") })
            .collect()
    }
}

impl fmt::Display for IrrDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(" "))
    }
}

/// Weights of `S_r(S_d)`: multisets of size `r` from `{d, d-2, ..., -d}`.
pub fn plethysm_weights(r: u32, d: u32) -> WeightVector {
    // ways[j][s]: multisets of size j from {0..=i} with sum s, grown one value at a time
    let (r, d) = (r as usize, d as usize);
    let max = r * d;
    let mut ways = vec![vec![0u64; max + 1]; r + 1];
    ways[0][0] = 1;
    for i in 0..=d {
        for j in 1..=r {
            for s in i..=max {
                ways[j][s] += ways[j - 1][s - i];
            }
        }
    }
    let mut w = WeightVector::default();
    for (s, &m) in ways[r].iter().enumerate() {
        w.add(max as i64 - 2 * s as i64, m);
    }
    w
}

/// `mult(S_m) = w(m) - w(m+2)` for `m >= 0`.
pub fn decompose(w: &WeightVector) -> Result<IrrDecomp> {
    if let Some((&k, _)) = w.0.iter().find(|(&k, &m)| w.get(-k) != m) {
        return Err(Error::AsymmetricCharacter(k));
    }
    let mut out = IrrDecomp::default();
    for (&k, &m) in w.0.range(0..) {
        let above = w.get(k + 2);
        if above > m {
            return Err(Error::NegativeMultiplicity { m: k as u32, multiplicity: m as i64 - above as i64 });
        }
        out.add(k as u32, m - above);
    }
    Ok(out)
}

pub fn character(d: &IrrDecomp) -> WeightVector {
    let mut w = WeightVector::default();
    for (&m, &k) in &d.0 {
        for j in 0..=m as i64 {
            w.add(m as i64 - 2 * j, k);
        }
    }
    w
}

/// `S_2(S_re) = sum_{0 <= p <= re/2} S_(2re - 4p)` for two variables.
pub fn ox_char(r: u32, e: u32) -> IrrDecomp {
    let re = r * e;
    let mut out = IrrDecomp::default();
    for p in 0..=re / 2 {
        out.add(2 * re - 4 * p, 1);
    }
    out
}

/// `[S_r(S_d)] - [S_2(S_(rd/2))]`; requires even `d`.
pub fn ideal_char(r: u32, d: u32) -> Result<IrrDecomp> {
    if !d.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("d must be even, got {d}")));
    }
    decompose(&plethysm_weights(r, d))?.checked_sub(&ox_char(r, d / 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates weak decrease and drops trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!("partition {parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    fn conjugate_len(&self, col: u32) -> u32 {
        self.0.iter().filter(|&&p| p > col).count() as u32
    }
}

/// Hook content formula `prod (n + c) / h` over the cells of the diagram.
pub fn schur_dim(lambda: &Partition, n: u32) -> BigInt {
    if lambda.0.len() > n as usize {
        return BigInt::from(0);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.0.iter().enumerate() {
        for j in 0..row {
            let content = n as i64 + j as i64 - i as i64;
            let hook = (row - j - 1) + (lambda.conjugate_len(j) - i as u32 - 1) + 1;
            num *= content;
            den *= hook;
        }
    }
    num / den
}

/// `dim S_r(S_d)` of an `n`-dimensional space.
pub fn plethysm_dim(r: u32, d: u32, n: u32) -> BigInt {
    let inner = binomial((d + n - 1) as u64, d as u64);
    let inner = inner.to_u64().expect("small inner dimension");
    binomial(inner + r as u64 - 1, r as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryDimReport {
    pub plethysm: u64,
    pub symmetric_square: u64,
    pub ideal_modules: Vec<(Vec<u32>, u64)>,
    pub ideal: u64,
    pub pass: bool,
}

/// Modules of the cubic piece of the ideal of pairs of double lines in the plane.
pub const TERNARY_IDEAL_MODULES: [[u32; 2]; 5] = [[9, 3], [6, 0], [6, 3], [4, 2], [0, 0]];

/// `dim S_3(S_4 C^3) = sum_p dim S_(12-2p, 2p) C^3 + sum of the ideal modules`.
pub fn ternary_dim_report() -> TernaryDimReport {
    let dim = |parts: Vec<u32>| schur_dim(&Partition::new(parts).expect("valid partition"), 3).to_u64().unwrap();
    let plethysm = plethysm_dim(3, 4, 3).to_u64().unwrap();
    let symmetric_square = (0..=3).map(|p| dim(vec![12 - 2 * p, 2 * p])).sum();
    let ideal_modules: Vec<(Vec<u32>, u64)> =
        TERNARY_IDEAL_MODULES.iter().map(|m| (m.to_vec(), dim(m.to_vec()))).collect();
    let ideal = ideal_modules.iter().map(|(_, d)| d).sum();
    TernaryDimReport { plethysm, symmetric_square, ideal_modules, ideal, pass: plethysm == symmetric_square + ideal }
}

pub fn ternary_dim_check() -> bool {
    ternary_dim_report().pass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ir(pairs: &[(u32, u64)]) -> IrrDecomp {
        IrrDecomp::from(pairs.to_vec())
    }

    #[test]
    fn plethysm_examples() {
        let w = plethysm_weights(1, 4);
        assert_eq!(w.0, BTreeMap::from([(4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)]));
        let w = plethysm_weights(2, 2);
        assert_eq!(w.0, BTreeMap::from([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
        for r in 0..5 {
            for d in 0..7 {
                let w = plethysm_weights(r, d);
                assert_eq!(BigInt::from(w.dim()), binomial((d + r) as u64, r as u64));
                assert!(w.is_symmetric());
            }
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&plethysm_weights(2, 2)).unwrap(), ir(&[(4, 1), (0, 1)]));
        for m in 0..8 {
            assert_eq!(decompose(&character(&IrrDecomp::single(m))).unwrap(), IrrDecomp::single(m));
        }
        assert!(decompose(&plethysm_weights(3, 8)).unwrap().multiplicity(18) >= 1);
        let lopsided = WeightVector(BTreeMap::from([(2, 1)]));
        assert!(matches!(decompose(&lopsided), Err(Error::AsymmetricCharacter(2))));
        let bad = WeightVector(BTreeMap::from([(2, 2), (0, 1), (-2, 2)]));
        assert!(matches!(decompose(&bad), Err(Error::NegativeMultiplicity { .. })));
    }

    #[test]
    fn ox_examples() {
        assert_eq!(ox_char(2, 1), ir(&[(4, 1), (0, 1)]));
        assert_eq!(ox_char(3, 4).labels(), ["S24", "S20", "S16", "S12", "S8", "S4", "S0"]);
        for r in 1..5 {
            for e in 1..5 {
                let re = (r * e) as u64;
                assert_eq!(ox_char(r, e).dim(), (re + 1) * (re + 2) / 2);
            }
        }
    }

    #[test]
    fn ideal_examples() {
        for d in (0..=10).step_by(2) {
            assert!(ideal_char(2, d).unwrap().is_empty(), "d={d}");
        }
        let i38 = ideal_char(3, 8).unwrap();
        assert_eq!(i38.to_string(), "S18 S14 S12 S10 S8 S6");
        assert_eq!(plethysm_weights(3, 8).dim(), 165);
        assert_eq!(ox_char(3, 4).dim(), 91);
        assert_eq!(i38.dim(), 74);
        assert!(matches!(ideal_char(1, 4), Err(Error::NegativeMultiplicity { .. })));
        assert!(ideal_char(3, 5).is_err());
    }

    #[test]
    fn schur_examples() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(schur_dim(&p(&[2, 2, 2]), 3), BigInt::from(1));
        assert_eq!(schur_dim(&p(&[1, 1]), 3), BigInt::from(3));
        assert_eq!(schur_dim(&p(&[1, 1, 1, 1]), 3), BigInt::from(0));
        for d in 0..10 {
            assert_eq!(schur_dim(&p(&[d]), 2), BigInt::from(d + 1));
        }
        for a in 0..8 {
            for b in 0..=a {
                assert_eq!(schur_dim(&p(&[a, b]), 2), BigInt::from(a - b + 1));
            }
        }
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn ternary_dims() {
        let r = ternary_dim_report();
        assert_eq!((r.plethysm, r.symmetric_square, r.ideal), (680, 406, 274));
        let dims: Vec<u64> = r.ideal_modules.iter().map(|m| m.1).collect();
        assert_eq!(dims, [154, 28, 64, 27, 1]);
        assert!(r.pass);
    }

    #[test]
    fn irr_decomp_serializes_as_sorted_pairs() {
        let d = ir(&[(6, 1), (18, 1), (8, 2)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[[6,1],[8,2],[18,1]]");
        assert_eq!(serde_json::from_str::<IrrDecomp>(&s).unwrap(), d);
    }
}
