//! Bipartite multigraphs with vertex degrees at most two, and the weighted
//! graph sum for the constant `N^I(e, p)`.
//!
//! A graph is an `e x e` matrix `m[i][j]` of edge multiplicities between the
//! left vertex `i` (a `Q(x)` factor) and the right vertex `j` (a `Q(y)`
//! factor). Row and column sums are bounded by two and the total is `2p`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteMultigraph {
    e: usize,
    m: Vec<u8>,
}

impl BipartiteMultigraph {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let e = rows.len();
        if e == 0 || rows.iter().any(|r| r.len() != e) {
            return Err(Error::OutOfRange("graph matrix must be square and nonempty".into()));
        }
        let g = BipartiteMultigraph { e, m: rows.into_iter().flatten().collect() };
        if (0..e).any(|i| g.row_sum(i) > 2 || g.col_sum(i) > 2) {
            return Err(Error::OutOfRange("vertex degree exceeds 2".into()));
        }
        Ok(g)
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.m[i * self.e + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.m.chunks(self.e).map(<[u8]>::to_vec).collect()
    }

    pub fn row_sum(&self, i: usize) -> u8 {
        (0..self.e).map(|j| self.entry(i, j)).sum()
    }

    pub fn col_sum(&self, j: usize) -> u8 {
        (0..self.e).map(|i| self.entry(i, j)).sum()
    }

    pub fn edge_count(&self) -> u32 {
        self.m.iter().map(|&x| x as u32).sum()
    }
}

/// Record written by the graph serializer: `e`, `p` and the matrix rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub e: usize,
    pub p: u32,
    pub rows: Vec<Vec<u8>>,
}

impl From<&BipartiteMultigraph> for GraphRecord {
    fn from(g: &BipartiteMultigraph) -> Self {
        GraphRecord { e: g.e, p: g.edge_count() / 2, rows: g.rows() }
    }
}

/// Streams every admissible matrix with total `2p`, row-major lexicographic.
#[derive(Debug, Clone)]
pub struct GraphEnumerator {
    e: usize,
    target: u32,
    m: Vec<u8>,
    row: Vec<u8>,
    col: Vec<u8>,
    sum: u32,
    pos: usize,
    forward: bool,
    done: bool,
}

pub fn enumerate(e: usize, p: u32) -> Result<GraphEnumerator> {
    if e == 0 {
        return Err(Error::OutOfRange("e must be positive".into()));
    }
    if p as usize > e {
        return Err(Error::OutOfRange(format!("p={p} exceeds e={e}")));
    }
    Ok(GraphEnumerator {
        e,
        target: 2 * p,
        m: vec![0; e * e],
        row: vec![0; e],
        col: vec![0; e],
        sum: 0,
        pos: 0,
        forward: true,
        done: false,
    })
}

impl GraphEnumerator {
    // upper bound on what the unassigned cells can still add
    fn capacity(&self) -> u32 {
        let n = self.e * self.e;
        if self.pos >= n {
            return 0;
        }
        let r0 = self.pos / self.e;
        let rows: u32 = (r0..self.e).map(|i| 2 - self.row[i] as u32).sum();
        let cols: u32 = self.col.iter().map(|&c| 2 - c as u32).sum();
        rows.min(cols)
    }
}

impl Iterator for GraphEnumerator {
    type Item = BipartiteMultigraph;

    fn next(&mut self) -> Option<BipartiteMultigraph> {
        let n = self.e * self.e;
        while !self.done {
            if self.forward {
                if self.sum + self.capacity() < self.target {
                    self.forward = false;
                    continue;
                }
                if self.pos == n {
                    self.forward = false;
                    if self.sum == self.target {
                        return Some(BipartiteMultigraph { e: self.e, m: self.m.clone() });
                    }
                    continue;
                }
                // open the next cell at value 0
                self.pos += 1;
            } else {
                if self.pos == 0 {
                    self.done = true;
                    break;
                }
                let c = self.pos - 1;
                let (i, j) = (c / self.e, c % self.e);
                if self.m[c] < 2 && self.row[i] < 2 && self.col[j] < 2 && self.sum < self.target {
                    self.m[c] += 1;
                    self.row[i] += 1;
                    self.col[j] += 1;
                    self.sum += 1;
                    self.forward = true;
                } else {
                    let v = self.m[c];
                    self.m[c] = 0;
                    self.row[i] -= v;
                    self.col[j] -= v;
                    self.sum -= v as u32;
                    self.pos -= 1;
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    Cycle,
    ChainLL,
    ChainRR,
    ChainLR,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub edges: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl ComponentReport {
    pub fn cycles(&self) -> u32 {
        self.count(ComponentKind::Cycle)
    }

    pub fn count(&self, kind: ComponentKind) -> u32 {
        self.components.iter().filter(|c| c.kind == kind).count() as u32
    }

    pub fn has_mixed_chain(&self) -> bool {
        self.count(ComponentKind::ChainLR) > 0
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Connected components over `L ⊔ R`; left vertex `i` is `i`, right vertex `j` is `e + j`.
pub fn components(g: &BipartiteMultigraph) -> ComponentReport {
    let e = g.e;
    let mut parent: Vec<usize> = (0..2 * e).collect();
    for i in 0..e {
        for j in 0..e {
            if g.entry(i, j) > 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, e + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let degree = |v: usize| if v < e { g.row_sum(v) } else { g.col_sum(v - e) };
    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..2 * e {
        let r = find(&mut parent, v);
        match roots.iter().position(|&x| x == r) {
            Some(k) => members[k].push(v),
            None => {
                roots.push(r);
                members.push(vec![v]);
            }
        }
    }
    let components = members
        .into_iter()
        .map(|vs| {
            let edges: u32 = vs.iter().filter(|&&v| v < e).map(|&v| g.row_sum(v) as u32).sum();
            let kind = if edges > 0 && vs.iter().all(|&v| degree(v) == 2) {
                ComponentKind::Cycle
            } else {
                // a path: its endpoints are the vertices of degree < 2
                let ends: Vec<usize> = vs.iter().copied().filter(|&v| degree(v) < 2).collect();
                let left = ends.iter().filter(|&&v| v < e).count();
                match (ends.len(), left) {
                    (1, 1) => ComponentKind::ChainLL,
                    (1, 0) => ComponentKind::ChainRR,
                    (2, 2) => ComponentKind::ChainLL,
                    (2, 0) => ComponentKind::ChainRR,
                    _ => ComponentKind::ChainLR,
                }
            };
            Component { kind, edges }
        })
        .collect();
    ComponentReport { components }
}

fn denominator(g: &BipartiteMultigraph) -> num_bigint::BigInt {
    let mut den = num_bigint::BigInt::from(1);
    for &x in &g.m {
        den *= factorial(x as u64);
    }
    for i in 0..g.e {
        den *= factorial(2 - g.row_sum(i) as u64);
        den *= factorial(2 - g.col_sum(i) as u64);
    }
    den
}

/// `w_G = (2p)! 2^(2e) / (prod m_ij! prod (2 - l_i)! prod (2 - c_j)!)`.
pub fn weight(g: &BipartiteMultigraph) -> Scalar {
    let two_p = g.edge_count() as u64;
    let num = factorial(two_p) * (num_bigint::BigInt::from(1) << (2 * g.e));
    Scalar::new(num, denominator(g))
}

/// Summand of the graph sum: `(2p)! 2^(2e - 2p + C(G)) / (...)`, zero for graphs with an L-R chain.
pub fn graph_term(g: &BipartiteMultigraph) -> Scalar {
    let report = components(g);
    if report.has_mixed_chain() {
        return Scalar::zero();
    }
    let two_p = g.edge_count() as usize;
    let shift = 2 * g.e + report.cycles() as usize - two_p;
    Scalar::new(factorial(two_p as u64) * (num_bigint::BigInt::from(1) << shift), denominator(g))
}

/// `N^I(e, p)` as the weighted sum over admissible graphs.
pub fn n1_via_graphs(e: u32, p: u32) -> Result<Scalar> {
    Ok(enumerate(e as usize, p)?.map(|g| graph_term(&g)).fold(Scalar::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(rows: &[&[u8]]) -> BipartiteMultigraph {
        BipartiteMultigraph::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    // every matrix over {0,1,2} satisfying the constraints
    fn brute_force(e: usize, p: u32) -> Vec<Vec<u8>> {
        let n = e * e;
        let mut out = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let m: Vec<u8> = (0..n)
                .map(|_| {
                    let d = (c % 3) as u8;
                    c /= 3;
                    d
                })
                .collect();
            let ok_rows = (0..e).all(|i| (0..e).map(|j| m[i * e + j]).sum::<u8>() <= 2);
            let ok_cols = (0..e).all(|j| (0..e).map(|i| m[i * e + j]).sum::<u8>() <= 2);
            let total: u32 = m.iter().map(|&x| x as u32).sum();
            if ok_rows && ok_cols && total == 2 * p {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_enumerations() {
        let all: Vec<_> = enumerate(1, 1).unwrap().collect();
        assert_eq!(all, vec![g(&[&[2]])]);
        assert_eq!(enumerate(1, 0).unwrap().count(), 1);
        let two: Vec<_> = enumerate(2, 1).unwrap().collect();
        // 4 with a single entry 2, C(4,2) = 6 with two entries 1
        assert_eq!(two.len(), 10);
        let singles = two.iter().filter(|g| g.m.contains(&2)).count();
        assert_eq!(singles, 4);
        assert!(enumerate(2, 3).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force_in_order() {
        for e in 1..=3 {
            for p in 0..=e as u32 {
                let got: Vec<Vec<u8>> = enumerate(e, p).unwrap().map(|g| g.m).collect();
                assert_eq!(got, brute_force(e, p), "e={e} p={p}");
            }
        }
    }

    #[test]
    fn component_examples() {
        let c = components(&g(&[&[2]]));
        assert_eq!(c.components, vec![Component { kind: ComponentKind::Cycle, edges: 2 }]);

        let c = components(&g(&[&[0, 0], &[0, 0]]));
        assert_eq!(c.count(ComponentKind::ChainLL), 2);
        assert_eq!(c.count(ComponentKind::ChainRR), 2);
        assert_eq!(c.components.len(), 4);

        let c = components(&g(&[&[1, 1], &[0, 0]]));
        assert_eq!(c.count(ComponentKind::ChainRR), 1);
        assert_eq!(c.count(ComponentKind::ChainLL), 1);
        assert_eq!(c.components.len(), 2);

        let c = components(&g(&[&[1, 0], &[0, 0]]));
        assert!(c.has_mixed_chain());

        let c = components(&g(&[&[1, 1], &[1, 1]]));
        assert_eq!(c.cycles(), 1);
        assert_eq!(c.components[0].edges, 4);
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&g(&[&[2]])), int(4));
        assert_eq!(weight(&g(&[&[0]])), int(1));
        assert_eq!(weight(&g(&[&[2, 0], &[0, 0]])), int(4));
    }

    #[test]
    fn graph_sums() {
        assert_eq!(n1_via_graphs(1, 0).unwrap(), int(1));
        assert_eq!(n1_via_graphs(1, 1).unwrap(), int(2));
        assert_eq!(n1_via_graphs(2, 1).unwrap(), int(24));
    }

    #[test]
    fn term_is_weight_times_cycle_factor() {
        for p in 0..=3 {
            for gr in enumerate(3, p).unwrap() {
                let rep = components(&gr);
                if rep.has_mixed_chain() {
                    assert!(graph_term(&gr).is_zero());
                    continue;
                }
                let exp = rep.cycles() as i32 - 2 * p as i32;
                let factor = if exp >= 0 {
                    int(1 << exp)
                } else {
                    Scalar::new(1.into(), (1i64 << -exp).into())
                };
                assert_eq!(graph_term(&gr), weight(&gr) * factor);
            }
        }
    }
}
