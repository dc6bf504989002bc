//! Truncated power-series check of the closed generating function
//! `Z = D^-1 exp((v c_x^2 + w d_x^2) / D)`, `D = (1 - hu)^2 + h^2 v w (cd)^2`,
//! against its definition
//! `Z = sum_n h^n/n! [d_phi^T eps d_phibar]^n exp(S) |_(phi = phibar = 0)`,
//! `S = (phibar + x)^T (-u eps + v c c^T + w d d^T) (phi + x)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lemma::lemma_b_g;
use crate::omega::omega_power_in;
use crate::poly::{SparsePoly, VarTable};
use crate::scalar::{factorial, int, Scalar};

const SERIES_VARS: [&str; 4] = ["h", "u", "v", "w"];
const PHI: [&str; 2] = ["f1", "f2"];
const PHIBAR: [&str; 2] = ["g1", "g2"];

fn series_table() -> Result<Arc<VarTable>> {
    VarTable::new(["x1", "x2", "y1", "y2", "c1", "c2", "d1", "d2", "h", "u", "v", "w", "f1", "f2", "g1", "g2"])
}

struct Ctx {
    t: Arc<VarTable>,
    grade: Vec<usize>,
    order: u32,
}

impl Ctx {
    fn new(order: u32) -> Result<Self> {
        let t = series_table()?;
        let grade = t.indices_of(&SERIES_VARS)?;
        Ok(Ctx { t, grade, order })
    }

    fn v(&self, n: &str) -> SparsePoly {
        SparsePoly::var(&self.t, n).expect("series variable")
    }

    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.mul_truncated(b, &self.grade, self.order).expect("shared table")
    }

    /// `sum_{k <= order} s^k / k!`, valid when every term of `s` has positive grade.
    fn exp(&self, s: &SparsePoly) -> SparsePoly {
        let mut term = SparsePoly::one(&self.t);
        let mut acc = term.clone();
        for k in 1..=self.order {
            term = self.mul(&term, s).scale(&Scalar::new(1.into(), k.into()));
            acc = &acc + &term;
        }
        acc
    }

    fn lin(&self, a: [&str; 2], z: [&SparsePoly; 2]) -> SparsePoly {
        &(&self.v(a[0]) * z[0]) + &(&self.v(a[1]) * z[1])
    }

    fn cd(&self) -> SparsePoly {
        &(&self.v("c1") * &self.v("d2")) - &(&self.v("c2") * &self.v("d1"))
    }
}

/// The closed form expanded to joint degree `order` in `h, u, v, w`.
pub fn z_closed_series(order: u32) -> Result<SparsePoly> {
    let cx = Ctx::new(order)?;
    let (x1, x2) = (cx.v("x1"), cx.v("x2"));
    let c_x = cx.lin(["c1", "c2"], [&x1, &x2]);
    let d_x = cx.lin(["d1", "d2"], [&x1, &x2]);
    let (h, u, v, w) = (cx.v("h"), cx.v("u"), cx.v("v"), cx.v("w"));
    let num = &(&v * &c_x.pow(2)) + &(&w * &d_x.pow(2));
    // D = 1 - X with X = 2hu - h^2 u^2 - h^2 v w (cd)^2
    let hu = &h * &u;
    let two = SparsePoly::constant(&cx.t, int(2));
    let x = &(&(&two * &hu) - &hu.pow(2)) - &(&(&h.pow(2) * &(&v * &w)) * &cx.cd().pow(2));
    let mut d_inv = SparsePoly::one(&cx.t);
    let mut xk = SparsePoly::one(&cx.t);
    for _ in 0..order {
        xk = cx.mul(&xk, &x);
        if xk.is_zero() {
            break;
        }
        d_inv = &d_inv + &xk;
    }
    Ok(cx.mul(&d_inv, &cx.exp(&cx.mul(&num, &d_inv))))
}

/// The defining differential expression expanded to joint degree `order`.
pub fn z_direct_series(order: u32) -> Result<SparsePoly> {
    let cx = Ctx::new(order)?;
    let big_x = [&cx.v("f1") + &cx.v("x1"), &cx.v("f2") + &cx.v("x2")];
    let big_xb = [&cx.v("g1") + &cx.v("x1"), &cx.v("g2") + &cx.v("x2")];
    let (u, v, w) = (cx.v("u"), cx.v("v"), cx.v("w"));
    let sym = &(&big_xb[0] * &big_x[1]) - &(&big_xb[1] * &big_x[0]);
    let c_xb = cx.lin(["c1", "c2"], [&big_xb[0], &big_xb[1]]);
    let c_xx = cx.lin(["c1", "c2"], [&big_x[0], &big_x[1]]);
    let d_xb = cx.lin(["d1", "d2"], [&big_xb[0], &big_xb[1]]);
    let d_xx = cx.lin(["d1", "d2"], [&big_x[0], &big_x[1]]);
    let s = &(&(-&(&u * &sym)) + &(&v * &(&c_xb * &c_xx))) + &(&w * &(&d_xb * &d_xx));
    let exp_s = cx.exp(&s);
    let phis = cx.t.indices_of(&[PHI[0], PHI[1], PHIBAR[0], PHIBAR[1]])?;
    let h = cx.v("h");
    let mut z = SparsePoly::zero(&cx.t);
    for n in 0..=order {
        let applied = omega_power_in(&exp_s.truncate(&cx.grade, order - n), PHI, PHIBAR, n)?;
        let mut at_zero = SparsePoly::zero(&cx.t);
        for (e, c) in applied.terms() {
            if phis.iter().all(|&i| e[i] == 0) {
                at_zero = &at_zero + &SparsePoly::monomial(&cx.t, e.clone(), c.clone());
            }
        }
        let weight = Scalar::new(1.into(), factorial(n as u64));
        z = &z + &cx.mul(&h.pow(n), &at_zero).scale(&weight);
    }
    Ok(z)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSeriesReport {
    pub r: u32,
    pub e: u32,
    pub order: u32,
    /// Number of `(h, u, v, w)` monomials compared.
    pub coefficients: usize,
    pub mismatches: usize,
    /// `(p', p)` cells whose `G(x)` coefficient lies inside the truncation.
    pub g_cells: Vec<(u32, u32)>,
    pub g_mismatches: usize,
    pub pass: bool,
}

fn grade_monomials(p: &SparsePoly, grade: &[usize]) -> Vec<Vec<u16>> {
    let mut keys: Vec<Vec<u16>> = p.terms().map(|(e, _)| grade.iter().map(|&i| e[i]).collect()).collect();
    keys.sort();
    keys.dedup();
    keys
}

/// Compares both expansions coefficient by coefficient, then checks
/// `G = (2p')! (2p)! (re-2p)! e! [h^(2p') u^(2p) v^(re-2p) w^e] Z` for every
/// `(p', p)` whose monomial fits in the truncation.
pub fn z_series_report(r: u32, e: u32, order: u32) -> Result<ZSeriesReport> {
    let closed = z_closed_series(order)?;
    let direct = z_direct_series(order)?;
    let t = closed.table().clone();
    let grade = t.indices_of(&SERIES_VARS)?;
    let mut keys = grade_monomials(&closed, &grade);
    keys.extend(grade_monomials(&direct, &grade));
    keys.sort();
    keys.dedup();
    let coef = |p: &SparsePoly, k: &[u16]| {
        let mono: Vec<(&str, u16)> = SERIES_VARS.iter().copied().zip(k.iter().copied()).collect();
        p.coefficient_of(&mono)
    };
    let mut mismatches = 0;
    for k in &keys {
        if coef(&closed, k)? != coef(&direct, k)? {
            mismatches += 1;
        }
    }

    let mut g_cells = Vec::new();
    let mut g_mismatches = 0;
    let re = r * e;
    for pp in 0..=(r + 1) * e / 2 {
        for p in 0..=re / 2 {
            if 2 * pp + 2 * p + (re - 2 * p) + e > order {
                continue;
            }
            g_cells.push((pp, p));
            let k = [2 * pp as u16, 2 * p as u16, (re - 2 * p) as u16, e as u16];
            let scale = factorial(2 * pp as u64) * factorial(2 * p as u64) * factorial((re - 2 * p) as u64) * factorial(e as u64);
            let predicted = coef(&closed, &k)?.scale(&Scalar::from_integer(scale));
            let g = lemma_b_g(r, e, pp, p)?.reembed(&t)?;
            if g != predicted {
                g_mismatches += 1;
            }
        }
    }
    Ok(ZSeriesReport {
        r,
        e,
        order,
        coefficients: keys.len(),
        mismatches,
        pass: mismatches == 0 && g_mismatches == 0,
        g_cells,
        g_mismatches,
    })
}

pub fn z_series_check(r: u32, e: u32, order: u32) -> Result<bool> {
    Ok(z_series_report(r, e, order)?.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_coefficients() {
        let z = z_closed_series(2).unwrap();
        let t = z.table().clone();
        let c0 = z.coefficient_of(&[("h", 0), ("u", 0), ("v", 0), ("w", 0)]).unwrap();
        assert_eq!(c0, SparsePoly::one(&t));
        let cv = z.coefficient_of(&[("h", 0), ("u", 0), ("v", 1), ("w", 0)]).unwrap();
        let c_x = SparsePoly::parse(&t, "1/1 * c1^1 * x1^1 + 1/1 * c2^1 * x2^1").unwrap();
        assert_eq!(cv, c_x.pow(2));
        let direct = z_direct_series(2).unwrap();
        let dv = direct.coefficient_of(&[("h", 0), ("u", 0), ("v", 1), ("w", 0)]).unwrap();
        assert_eq!(dv, c_x.pow(2));
        // hu enters the denominator with coefficient 2
        let chu = z.coefficient_of(&[("h", 1), ("u", 1), ("v", 0), ("w", 0)]).unwrap();
        assert_eq!(chu, SparsePoly::constant(&t, int(2)));
    }

    #[test]
    fn series_agree_at_order_3() {
        let rep = z_series_report(2, 1, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.coefficients > 10);
        assert_eq!(rep.g_cells, vec![(0, 0), (0, 1)]);
    }
}
