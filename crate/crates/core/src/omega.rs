//! Cayley's Omega process, polarization and transvectants of binary forms.
//!
//! Binary forms use the variables `x1, x2`; their copies are `y1, y2`.
//! With these names `Omega = d2/dx1 dy2 - d2/dx2 dy1`, the bracket
//! `omega = x1 y2 - x2 y1` and `Omega(omega) = 2`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Exponents, SparsePoly, VarTable};
use crate::scalar::{binomial, factorial, falling, sign, Scalar};

pub const X: [&str; 2] = ["x1", "x2"];
pub const Y: [&str; 2] = ["y1", "y2"];

/// A table holding `x1, x2, y1, y2` followed by `extra`.
pub fn binary_table(extra: &[&str]) -> Result<Arc<VarTable>> {
    VarTable::new(X.iter().chain(Y.iter()).chain(extra.iter()).copied())
}

/// `Omega^k` where `Omega = d/da1 d/db2 - d/da2 d/db1`.
///
/// Expanded in one pass as `sum_i (-1)^i C(k,i) da1^(k-i) da2^i db1^i db2^(k-i)`.
pub fn omega_power_in(p: &SparsePoly, a: [&str; 2], b: [&str; 2], k: u32) -> Result<SparsePoly> {
    let t = p.table();
    let (a1, a2, b1, b2) = (t.index_of(a[0])?, t.index_of(a[1])?, t.index_of(b[0])?, t.index_of(b[1])?);
    if k == 0 {
        return Ok(p.clone());
    }
    let k16 = k as u16;
    let weights: Vec<Scalar> = (0..=k as u64)
        .map(|i| sign(i) * Scalar::from_integer(binomial(k as u64, i)))
        .collect();
    let mut out = SparsePoly::zero(t);
    for (e, c) in p.terms() {
        for i in 0..=k16 {
            let j = k16 - i;
            if e[a1] < j || e[a2] < i || e[b1] < i || e[b2] < j {
                continue;
            }
            let ff = falling(e[a1] as u64, j as u64)
                * falling(e[a2] as u64, i as u64)
                * falling(e[b1] as u64, i as u64)
                * falling(e[b2] as u64, j as u64);
            let mut ne: Exponents = e.clone();
            ne[a1] -= j;
            ne[a2] -= i;
            ne[b1] -= i;
            ne[b2] -= j;
            out.add_term(ne, c * &weights[i as usize] * Scalar::from_integer(ff));
        }
    }
    Ok(out)
}

/// `Omega^k p` in the standard `x`/`y` variables.
pub fn omega_power(p: &SparsePoly, k: u32) -> Result<SparsePoly> {
    omega_power_in(p, X, Y, k)
}

/// Sets `y := x`.
pub fn diagonal(p: &SparsePoly) -> Result<SparsePoly> {
    p.merge_vars(&[(Y[0], X[0]), (Y[1], X[1])])
}

/// Two binary forms in `x1, x2` over one table (other variables act as coefficients).
#[derive(Debug, Clone)]
pub struct BinaryFormPair {
    pub f: SparsePoly,
    pub g: SparsePoly,
    pub deg_f: u32,
    pub deg_g: u32,
}

fn binary_degree(p: &SparsePoly) -> Result<Option<u32>> {
    let idx = p.indices(&X)?;
    p.homogeneous_degree(&idx)
}

/// Order (degree in `x1, x2`) of a nonzero homogeneous binary form.
pub fn binary_order(p: &SparsePoly) -> Result<u32> {
    binary_degree(p)?.ok_or_else(|| Error::NotHomogeneous("zero form has no order".into()))
}

impl BinaryFormPair {
    /// Infers the degrees; both forms must be nonzero.
    pub fn new(f: SparsePoly, g: SparsePoly) -> Result<Self> {
        let deg_f = binary_order(&f)?;
        let deg_g = binary_order(&g)?;
        Self::with_degrees(f, deg_f, g, deg_g)
    }

    pub fn with_degrees(f: SparsePoly, deg_f: u32, g: SparsePoly, deg_g: u32) -> Result<Self> {
        if !Arc::ptr_eq(f.table(), g.table()) && f.table() != g.table() {
            return Err(Error::TableMismatch);
        }
        for (p, d) in [(&f, deg_f), (&g, deg_g)] {
            if let Some(found) = binary_degree(p)? {
                if found != d {
                    return Err(Error::DegreeMismatch { expected: d, found });
                }
            }
        }
        Ok(BinaryFormPair { f, g, deg_f, deg_g })
    }
}

/// `(deg_f - k)! (deg_g - k)! / (deg_f! deg_g!)`.
pub fn transvectant_normalization(deg_f: u32, deg_g: u32, k: u32) -> Scalar {
    Scalar::new(
        factorial((deg_f - k) as u64) * factorial((deg_g - k) as u64),
        factorial(deg_f as u64) * factorial(deg_g as u64),
    )
}

/// The `k`-th transvectant `(f, g)_k`.
///
/// Raw mode is `Omega^k f(x) g(y)` at `y = x`; normalized mode multiplies by
/// [`transvectant_normalization`]. Computed through the product expansion
/// `sum_i (-1)^i C(k,i) (dx1^(k-i) dx2^i f)(dx1^i dx2^(k-i) g)`.
pub fn transvectant(pair: &BinaryFormPair, k: u32, normalized: bool) -> Result<SparsePoly> {
    let limit = pair.deg_f.min(pair.deg_g);
    if k > limit {
        return Err(Error::IndexTooLarge { index: k, degree: limit });
    }
    let t = pair.f.table();
    let (i1, i2) = (t.index_of(X[0])?, t.index_of(X[1])?);
    let mut out = SparsePoly::zero(t);
    for i in 0..=k {
        let df = pair.f.derive_idx(i1, k - i).derive_idx(i2, i);
        if df.is_zero() {
            continue;
        }
        let dg = pair.g.derive_idx(i1, i).derive_idx(i2, k - i);
        if dg.is_zero() {
            continue;
        }
        let w = sign(i as u64) * Scalar::from_integer(binomial(k as u64, i as u64));
        out = &out + &(&df * &dg).scale(&w);
    }
    if normalized {
        out = out.scale(&transvectant_normalization(pair.deg_f, pair.deg_g, k));
    }
    let expected = pair.deg_f + pair.deg_g - 2 * k;
    if let Some(found) = binary_degree(&out)? {
        if found != expected {
            return Err(Error::DegreeMismatch { expected, found });
        }
    }
    Ok(out)
}

/// Convenience wrapper inferring degrees from the operands.
pub fn transvect(f: &SparsePoly, g: &SparsePoly, k: u32, normalized: bool) -> Result<SparsePoly> {
    if f.is_zero() || g.is_zero() {
        return Ok(SparsePoly::zero(f.table()));
    }
    transvectant(&BinaryFormPair::new(f.clone(), g.clone())?, k, normalized)
}

/// `(y . d/dx)^times f`, optionally divided by the falling factorial `d (d-1) ... (d-times+1)`.
pub fn polarize(f: &SparsePoly, x: &[&str], y: &[&str], times: u32, normalized: bool) -> Result<SparsePoly> {
    let xi = f.indices(x)?;
    let yi = f.indices(y)?;
    let d = f.homogeneous_degree(&xi)?.unwrap_or(times);
    if times > d {
        return Err(Error::IndexTooLarge { index: times, degree: d });
    }
    let mut cur = f.clone();
    for _ in 0..times {
        let mut next = SparsePoly::zero(f.table());
        for (&a, &b) in xi.iter().zip(&yi) {
            for (e, c) in cur.derive_idx(a, 1).terms() {
                let mut ne = e.clone();
                ne[b] += 1;
                next.add_term(ne, c.clone());
            }
        }
        cur = next;
    }
    if normalized && times > 0 {
        cur = cur.scale(&Scalar::new(One::one(), falling(d as u64, times as u64)));
    }
    Ok(cur)
}

/// Image of `F_1 (x) ... (x) F_r` in the symmetric square: normalized-polarize each
/// degree `2e` form `e` times and multiply, all copies sharing the `x` and `y` blocks.
pub fn alpha_r_image(forms: &[SparsePoly], x: &[&str], y: &[&str], e: u32) -> Result<SparsePoly> {
    let first = forms.first().ok_or_else(|| Error::OutOfRange("no forms".into()))?;
    let xi = first.indices(x)?;
    let mut acc = SparsePoly::one(first.table());
    for f in forms {
        if let Some(d) = f.homogeneous_degree(&xi)? {
            if d != 2 * e {
                return Err(Error::DegreeMismatch { expected: 2 * e, found: d });
            }
        }
        acc = acc.try_mul(&polarize(f, x, y, e, true)?)?;
    }
    Ok(acc)
}

/// Projection onto the `p`-th summand: `Omega^(2p)` then `y := x`.
pub fn pi_p_extract(s: &SparsePoly, p: u32) -> Result<SparsePoly> {
    diagonal(&omega_power(s, 2 * p)?)
}

/// Swaps the `x` and `y` blocks.
pub fn swap_blocks(p: &SparsePoly, x: &[&str], y: &[&str]) -> Result<SparsePoly> {
    let t = p.table();
    let mut perm: Vec<usize> = (0..t.len()).collect();
    for (a, b) in x.iter().zip(y) {
        let (i, j) = (t.index_of(a)?, t.index_of(b)?);
        perm.swap(i, j);
    }
    let mut out = SparsePoly::zero(t);
    for (e, c) in p.terms() {
        let ne: Exponents = perm.iter().map(|&i| e[i]).collect();
        out.add_term(ne, c.clone());
    }
    Ok(out)
}

/// The scalar `c` with `p = c * shape`, or zero when `p` is zero.
pub fn scalar_multiple(p: &SparsePoly, shape: &SparsePoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    p.ratio_to(shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn t() -> Arc<VarTable> {
        binary_table(&["l1", "l2", "m1", "m2"]).unwrap()
    }

    fn v(t: &Arc<VarTable>, n: &str) -> SparsePoly {
        SparsePoly::var(t, n).unwrap()
    }

    fn omega_once(p: &SparsePoly) -> SparsePoly {
        let a = p.derive("x1", 1).unwrap().derive("y2", 1).unwrap();
        let b = p.derive("x2", 1).unwrap().derive("y1", 1).unwrap();
        &a - &b
    }

    #[test]
    fn omega_examples() {
        let t = t();
        let w = &(&v(&t, "x1") * &v(&t, "y2")) - &(&v(&t, "x2") * &v(&t, "y1"));
        assert_eq!(omega_power(&w, 1).unwrap(), SparsePoly::constant(&t, int(2)));
        assert!(omega_power(&(&v(&t, "x1") * &v(&t, "y1")), 1).unwrap().is_zero());
        let q = &(&v(&t, "x1") * &v(&t, "x2")) * &(&v(&t, "y1") * &v(&t, "y2"));
        let once = omega_power(&q, 1).unwrap();
        assert_eq!(once, w.scale(&int(-1)));
        assert_eq!(omega_power(&q, 2).unwrap(), SparsePoly::constant(&t, int(-2)));
    }

    #[test]
    fn one_pass_matches_iteration() {
        let t = t();
        let x = &v(&t, "x1") + &v(&t, "x2").scale(&int(3));
        let y = &v(&t, "y1").scale(&int(-2)) + &v(&t, "y2");
        let p = &(&x.pow(4) * &y.pow(3)) + &(&v(&t, "x1").pow(2) * &v(&t, "y2").pow(5));
        let mut it = p.clone();
        for k in 1..=5 {
            it = omega_once(&it);
            assert_eq!(omega_power(&p, k).unwrap(), it, "k={k}");
        }
    }

    #[test]
    fn transvectant_examples() {
        let t = t();
        let q = &v(&t, "x1") * &v(&t, "x2");
        assert_eq!(transvect(&q, &q, 2, false).unwrap(), SparsePoly::constant(&t, int(-2)));

        let f = SparsePoly::parse(&t, "1/1 * x1^3 + 2/1 * x1^1 * x2^2 + -5/3 * x2^3").unwrap();
        for k in [1, 3] {
            assert!(transvect(&f, &f, k, false).unwrap().is_zero());
        }

        let l = &v(&t, "l1").pow(1) * &v(&t, "x1");
        let l = &l + &(&v(&t, "l2") * &v(&t, "x2"));
        for k in 1..=3 {
            assert!(transvect(&l.pow(3), &l.pow(4), k, true).unwrap().is_zero());
        }
        let pair = BinaryFormPair::new(q.clone(), q.clone()).unwrap();
        assert!(matches!(transvectant(&pair, 3, false), Err(Error::IndexTooLarge { .. })));
    }

    #[test]
    fn transvectant_agrees_with_omega_route() {
        let t = t();
        let f = SparsePoly::parse(&t, "2/1 * x1^4 + -1/1 * x1^1 * x2^3 + 1/2 * x2^4").unwrap();
        let g = SparsePoly::parse(&t, "1/1 * x1^2 * x2^1 + 3/1 * x2^3").unwrap();
        let gy = g.merge_vars(&[("x1", "y1"), ("x2", "y2")]).unwrap();
        for k in 0..=3 {
            let direct = diagonal(&omega_power(&(&f * &gy), k).unwrap()).unwrap();
            assert_eq!(transvect(&f, &g, k, false).unwrap(), direct);
        }
    }

    #[test]
    fn normalized_transvectant_scales() {
        let t = t();
        let f = v(&t, "x1").pow(2);
        let g = v(&t, "x2").pow(2);
        // raw (x1^2, x2^2)_2 = 4, normalization 1/4
        assert_eq!(transvect(&f, &g, 2, false).unwrap(), SparsePoly::constant(&t, int(4)));
        assert_eq!(transvect(&f, &g, 2, true).unwrap(), SparsePoly::one(&t));
    }

    #[test]
    fn polarization_examples() {
        let t = t();
        let f = v(&t, "x1").pow(2);
        let r = polarize(&f, &X, &Y, 1, false).unwrap();
        assert_eq!(r, (&v(&t, "x1") * &v(&t, "y1")).scale(&int(2)));
        assert_eq!(polarize(&f, &X, &Y, 0, true).unwrap(), f);
        assert!(polarize(&f, &X, &Y, 3, false).is_err());

        let lx = &(&v(&t, "l1") * &v(&t, "x1")) + &(&v(&t, "l2") * &v(&t, "x2"));
        let ly = &(&v(&t, "l1") * &v(&t, "y1")) + &(&v(&t, "l2") * &v(&t, "y2"));
        for e in 0..=4 {
            let r = polarize(&lx.pow(4), &X, &Y, e, true).unwrap();
            assert_eq!(r, &lx.pow(4 - e) * &ly.pow(e));
        }
    }

    #[test]
    fn alpha_r_examples() {
        let t = t();
        let l = |a: &str, b: &str, x: &str, y: &str| &(&v(&t, a) * &v(&t, x)) + &(&v(&t, b) * &v(&t, y));
        let (l1x, l1y) = (l("l1", "l2", "x1", "x2"), l("l1", "l2", "y1", "y2"));
        let (l2x, l2y) = (l("m1", "m2", "x1", "x2"), l("m1", "m2", "y1", "y2"));
        let e = 2;
        let img = alpha_r_image(&[l1x.pow(2 * e), l2x.pow(2 * e)], &X, &Y, e).unwrap();
        let qx = &l1x * &l2x;
        let qy = &l1y * &l2y;
        assert_eq!(img, &qx.pow(e) * &qy.pow(e));
        assert_eq!(swap_blocks(&img, &X, &Y).unwrap(), img);

        let single = alpha_r_image(&[l1x.pow(6)], &X, &Y, 3).unwrap();
        assert_eq!(single, &l1x.pow(3) * &l1y.pow(3));

        let f = SparsePoly::parse(&t, "1/1 * x1^4 + 2/1 * x1^1 * x2^3").unwrap();
        let g = SparsePoly::parse(&t, "-1/1 * x1^2 * x2^2 + 7/3 * x2^4").unwrap();
        let img = alpha_r_image(&[f.clone(), g.clone()], &X, &Y, 2).unwrap();
        assert_eq!(swap_blocks(&img, &X, &Y).unwrap(), img);
        assert!(matches!(alpha_r_image(&[f, v(&t, "x1")], &X, &Y, 2), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn projection_examples() {
        let t = t();
        let q = &(&v(&t, "x1") * &v(&t, "x2")) * &(&v(&t, "y1") * &v(&t, "y2"));
        assert_eq!(pi_p_extract(&q, 0).unwrap(), (&v(&t, "x1") * &v(&t, "x2")).pow(2));
        assert_eq!(pi_p_extract(&q, 1).unwrap(), SparsePoly::constant(&t, int(-2)));
        let w = &(&v(&t, "x1") * &v(&t, "y2")) - &(&v(&t, "x2") * &v(&t, "y1"));
        for m in 1..=3u32 {
            let c = pi_p_extract(&w.pow(2 * m), m).unwrap();
            // Omega^n omega^n = n! (n+1)!
            let n = 2 * m as u64;
            let expected = Scalar::from_integer(factorial(n) * factorial(n + 1));
            assert_eq!(c, SparsePoly::constant(&t, expected));
        }
    }
}
