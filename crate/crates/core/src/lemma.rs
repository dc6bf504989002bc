//! Direct symbolic routes for the two nonvanishing lemmas, their cross-checks
//! against the closed forms, and the recipe for the induction map `u_r`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::n1_via_graphs;
use crate::error::{Error, Result};
use crate::hypergeo::{characteristic, check_lemma_b_range, n1_closed, n1_via_dixon, n2_closed};
use crate::omega::{binary_table, diagonal, omega_power, polarize, scalar_multiple, transvect, X, Y};
use crate::poly::{SparsePoly, VarTable};
use crate::scalar::{binomial, int, sign, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaAReport {
    pub e: u32,
    pub p: u32,
    #[serde(with = "crate::scalar::exact")]
    pub n_direct_special: Scalar,
    /// `None` when the generic-quadratic identity was not run for this `e`.
    pub proportionality_ok: Option<bool>,
    #[serde(with = "crate::scalar::exact")]
    pub n_graphs: Scalar,
    #[serde(with = "crate::scalar::exact")]
    pub n_dixon: Scalar,
    #[serde(with = "crate::scalar::exact")]
    pub n_closed: Scalar,
}

impl LemmaAReport {
    pub fn agree(&self) -> bool {
        let n = &self.n_direct_special;
        n > &Scalar::zero()
            && n == &self.n_graphs
            && n == &self.n_dixon
            && n == &self.n_closed
            && self.proportionality_ok != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaBReport {
    pub r: u32,
    pub e: u32,
    pub p_prime: u32,
    pub p: u32,
    #[serde(with = "crate::scalar::exact")]
    pub n2_direct: Scalar,
    #[serde(with = "crate::scalar::exact")]
    pub n2_closed: Scalar,
    pub chosen_p_for_existence: u32,
}

impl LemmaBReport {
    pub fn agree(&self) -> bool {
        self.n2_direct == self.n2_closed
            && (self.p != self.chosen_p_for_existence || !self.n2_direct.is_zero())
    }
}

/// Default cutoff for the generic-quadratic identity in [`lemma_a_direct`].
pub const GENERIC_Q_MAX_E: u32 = 3;

fn var(t: &std::sync::Arc<VarTable>, n: &str) -> SparsePoly {
    SparsePoly::var(t, n).expect("variable present in table")
}

fn check_e_p(e: u32, p: u32) -> Result<()> {
    if p > e {
        return Err(Error::OutOfRange(format!("p={p} exceeds e={e}")));
    }
    Ok(())
}

/// `N` read off from `Omega^(2p) (x1 x2)^e (y1 y2)^e |_(y=x) = N (x1 x2)^(2e-2p) (-1)^p`.
pub fn lemma_a_special(e: u32, p: u32) -> Result<Scalar> {
    check_e_p(e, p)?;
    let t = binary_table(&[])?;
    let qx = &var(&t, "x1") * &var(&t, "x2");
    let qy = &var(&t, "y1") * &var(&t, "y2");
    let g = diagonal(&omega_power(&(&qx.pow(e) * &qy.pow(e)), 2 * p)?)?;
    let shape = qx.pow(2 * e - 2 * p).scale(&sign(p as u64));
    scalar_multiple(&g, &shape).ok_or_else(|| Error::NotProportional(format!("Q = x1 x2, e={e}, p={p}")))
}

/// Checks `Omega^(2p) Q(x)^e Q(y)^e |_(y=x) = n Q^(2e-2p) (-Delta)^p` for
/// `Q = a x1^2 + 2b x1 x2 + c x2^2`, `Delta = 4(b^2 - ac)`.
pub fn lemma_a_generic(e: u32, p: u32, n: &Scalar) -> Result<bool> {
    check_e_p(e, p)?;
    let t = binary_table(&["a", "b", "c"])?;
    let v = |s: &str| var(&t, s);
    let quad = |u: &str, w: &str| {
        let two = SparsePoly::constant(&t, int(2));
        &(&(&v("a") * &v(u).pow(2)) + &(&two * &(&(&v("b") * &v(u)) * &v(w)))) + &(&v("c") * &v(w).pow(2))
    };
    let qx = quad("x1", "x2");
    let qy = quad("y1", "y2");
    let g = diagonal(&omega_power(&(&qx.pow(e) * &qy.pow(e)), 2 * p)?)?;
    let four = SparsePoly::constant(&t, int(4));
    let delta = &four * &(&v("b").pow(2) - &(&v("a") * &v("c")));
    let rhs = (&qx.pow(2 * e - 2 * p) * &(-&delta).pow(p)).scale(n);
    Ok(g == rhs)
}

/// `(N, generic identity holds)`; the generic identity runs for `e <= 3`.
pub fn lemma_a_direct(e: u32, p: u32) -> Result<(Scalar, bool)> {
    let n = lemma_a_special(e, p)?;
    let ok = if e <= GENERIC_Q_MAX_E { lemma_a_generic(e, p, &n)? } else { true };
    Ok((n, ok))
}

/// All four routes for one `(e, p)` cell. The generic identity runs when `e <= generic_max_e`.
pub fn lemma_a_report(e: u32, p: u32, generic_max_e: u32) -> Result<LemmaAReport> {
    let n = lemma_a_special(e, p)?;
    let proportionality_ok = if e <= generic_max_e { Some(lemma_a_generic(e, p, &n)?) } else { None };
    Ok(LemmaAReport {
        e,
        p,
        n_direct_special: n,
        proportionality_ok,
        n_graphs: n1_via_graphs(e, p)?,
        n_dixon: n1_via_dixon(e, p)?,
        n_closed: n1_closed(e, p)?,
    })
}

const LEMMA_B_VARS: [&str; 4] = ["c1", "c2", "d1", "d2"];

fn lemma_b_table() -> Result<std::sync::Arc<VarTable>> {
    binary_table(&LEMMA_B_VARS)
}

/// Symbolic `c_x`, `c_y`, `d_x`, `d_y`, `omega` and `(cd)` over the lemma-B table.
struct Brackets {
    cx: SparsePoly,
    cy: SparsePoly,
    dx: SparsePoly,
    dy: SparsePoly,
    omega: SparsePoly,
    cd: SparsePoly,
}

impl Brackets {
    fn new(t: &std::sync::Arc<VarTable>) -> Self {
        let v = |s: &str| var(t, s);
        let lin = |a: &str, b: &str, u: &str, w: &str| &(&v(a) * &v(u)) + &(&v(b) * &v(w));
        let det = |a1: &str, a2: &str, b1: &str, b2: &str| &(&v(a1) * &v(b2)) - &(&v(a2) * &v(b1));
        Brackets {
            cx: lin("c1", "c2", "x1", "x2"),
            cy: lin("c1", "c2", "y1", "y2"),
            dx: lin("d1", "d2", "x1", "x2"),
            dy: lin("d1", "d2", "y1", "y2"),
            omega: det("x1", "x2", "y1", "y2"),
            cd: det("c1", "c2", "d1", "d2"),
        }
    }
}

/// `G(x) = Omega^(2p') (omega^(2p) c_x^(re-2p) c_y^(re-2p) d_x^e d_y^e) |_(y=x)` over
/// symbolic `c, d`.
pub fn lemma_b_g(r: u32, e: u32, p_prime: u32, p: u32) -> Result<SparsePoly> {
    check_lemma_b_range(r, e, p_prime, p)?;
    let t = lemma_b_table()?;
    let b = Brackets::new(&t);
    let k = r * e - 2 * p;
    let body = &(&(&b.omega.pow(2 * p) * &b.cx.pow(k)) * &b.cy.pow(k)) * &(&b.dx.pow(e) * &b.dy.pow(e));
    diagonal(&omega_power(&body, 2 * p_prime)?)
}

/// The scalar `N` in `G = N (cd)^(2(p'-p)) c_x^(2(re-p'-p)) d_x^(2(e-p'+p))`.
///
/// When the characteristic conditions fail `G` must vanish identically.
pub fn lemma_b_direct(r: u32, e: u32, p_prime: u32, p: u32) -> Result<Scalar> {
    let g = lemma_b_g(r, e, p_prime, p)?;
    let cell = || format!("r={r}, e={e}, p'={p_prime}, p={p}");
    if !characteristic(r, e, p_prime, p) {
        return if g.is_zero() { Ok(Scalar::zero()) } else { Err(Error::NotProportional(cell())) };
    }
    let b = Brackets::new(g.table());
    let shape = &(&b.cd.pow(2 * (p_prime - p)) * &b.cx.pow(2 * (r * e - p_prime - p))) * &b.dx.pow(2 * (e + p - p_prime));
    scalar_multiple(&g, &shape).ok_or_else(|| Error::NotProportional(cell()))
}

/// `p = p'` when `2p' <= re`, otherwise `p = p' - e`.
pub fn existence_choice(r: u32, e: u32, p_prime: u32) -> Result<u32> {
    if r < 2 || e < 1 || 2 * p_prime > (r + 1) * e {
        return Err(Error::OutOfRange(format!("need r >= 2, e >= 1, 2p' <= (r+1)e; got r={r}, e={e}, p'={p_prime}")));
    }
    let p = if 2 * p_prime <= r * e { p_prime } else { p_prime - e };
    assert!(2 * p <= r * e && characteristic(r, e, p_prime, p), "choice rule failed at r={r}, e={e}, p'={p_prime}");
    Ok(p)
}

pub fn lemma_b_report(r: u32, e: u32, p_prime: u32, p: u32) -> Result<LemmaBReport> {
    Ok(LemmaBReport {
        r,
        e,
        p_prime,
        p,
        n2_direct: lemma_b_direct(r, e, p_prime, p)?,
        n2_closed: n2_closed(r, e, p_prime, p)?,
        chosen_p_for_existence: existence_choice(r, e, p_prime)?,
    })
}

/// Every admissible `(p', p)` for `(r, e)`: `2p <= re`, `2p' <= (r+1)e`.
pub fn lemma_b_cells(r: u32, e: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for pp in 0..=(r + 1) * e / 2 {
        for p in 0..=r * e / 2 {
            v.push((pp, p));
        }
    }
    v
}

fn coeff_names(prefix: &str, n: u32) -> Vec<String> {
    (0..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `sum_i C(n,i) coeff_i x1^(n-i) x2^i`.
fn generic_form(t: &std::sync::Arc<VarTable>, names: &[String], n: u32) -> Result<SparsePoly> {
    let mut out = SparsePoly::zero(t);
    for (i, name) in names.iter().enumerate() {
        let i = i as u16;
        let c = Scalar::from_integer(binomial(n as u64, i as u64));
        let m = SparsePoly::from_powers(t, c, &[(name, 1), ("x1", n as u16 - i), ("x2", i)])?;
        out = &out + &m;
    }
    Ok(out)
}

/// The image of `C (x) D` under `u_r^(p,p')`, following the six-step recipe.
///
/// `C` has order `rd - 4p`, `D` order `d = 2e`, both in `x1, x2`; other variables in
/// their tables are carried along as coefficients. `T1`, `T2` use normalized
/// transvectants, `T4` normalized polarization. The result lives over the union
/// of the input tables and is a form in `x1, x2`.
pub fn u_r_recipe(c: &SparsePoly, d: &SparsePoly, r: u32, p: u32, p_prime: u32) -> Result<SparsePoly> {
    let dx = crate::omega::binary_order(d)?;
    if dx % 2 != 0 {
        return Err(Error::OutOfRange(format!("D must have even order, got {dx}")));
    }
    let e = dx / 2;
    let re = r * e;
    if 2 * p > re {
        return Err(Error::OutOfRange(format!("2p={} exceeds re={re}", 2 * p)));
    }
    let c_order = r * dx - 4 * p;
    if let Some(found) = c.homogeneous_degree(&c.indices(&X)?)? {
        if found != c_order {
            return Err(Error::DegreeMismatch { expected: c_order, found });
        }
    }
    let a_names = coeff_names("a", re);
    let b_names = coeff_names("b", re);
    let mut names: Vec<String> = X.iter().chain(Y.iter()).map(|s| s.to_string()).collect();
    names.extend(a_names.iter().cloned());
    names.extend(b_names.iter().cloned());
    for n in c.table().names().iter().chain(d.table().names()) {
        if !names.contains(n) {
            names.push(n.clone());
        }
    }
    let work = VarTable::new(names)?;
    let c = c.reembed(&work)?;
    let d = d.reembed(&work)?;

    let gamma_a = generic_form(&work, &a_names, re)?;
    let gamma_b = generic_form(&work, &b_names, re)?;
    let t1 = transvect(&gamma_a, &gamma_b, 2 * p, true)?;
    let t2 = transvect(&c, &t1, c_order, true)?;

    let v = |s: &str| var(&work, s);
    let mut subs: Vec<(&str, SparsePoly)> = Vec::new();
    for i in 0..=re {
        let ai = &v("x2").pow(re - i) * &(-&v("x1")).pow(i);
        let bi = &v("y2").pow(re - i) * &(-&v("y1")).pow(i);
        subs.push((a_names[i as usize].as_str(), ai));
        subs.push((b_names[i as usize].as_str(), bi));
    }
    let t3 = t2.substitute(&subs)?;
    let t4 = polarize(&d, &X, &Y, e, true)?;
    let t5 = &t3 * &t4;
    let t6 = omega_power(&t5, 2 * p_prime)?;
    let out = diagonal(&t6)?;

    let mut keep: Vec<String> = X.iter().map(|s| s.to_string()).collect();
    for n in c.table().names() {
        let unused = a_names.contains(n) || b_names.contains(n) || Y.contains(&n.as_str());
        if !unused && !keep.contains(n) {
            keep.push(n.clone());
        }
    }
    out.reembed(&VarTable::new(keep)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeo::n1_closed_low;

    #[test]
    fn lemma_a_examples() {
        for e in 0..4 {
            assert_eq!(lemma_a_direct(e, 0).unwrap(), (int(1), true));
        }
        assert_eq!(lemma_a_direct(1, 1).unwrap(), (int(2), true));
        // (2e)! e!^2 at e = 2
        assert_eq!(lemma_a_direct(2, 2).unwrap(), (int(96), true));
        assert_eq!(lemma_a_direct(2, 1).unwrap(), (int(24), true));
    }

    #[test]
    fn lemma_a_routes_agree() {
        for e in 1..=4 {
            for p in 0..=e {
                let r = lemma_a_report(e, p, 2).unwrap();
                assert!(r.agree(), "{r:?}");
                assert_eq!(r.n_closed, n1_closed_low(e, p));
            }
        }
    }

    #[test]
    fn generic_identity_rejects_wrong_constant() {
        assert!(!lemma_a_generic(2, 1, &int(25)).unwrap());
    }

    #[test]
    fn lemma_b_examples() {
        assert_eq!(lemma_b_direct(2, 1, 0, 0).unwrap(), int(1));
        assert_eq!(lemma_b_direct(2, 1, 1, 1).unwrap(), n2_closed(2, 1, 1, 1).unwrap());
        // e - p' + p < 0
        assert_eq!(lemma_b_direct(2, 1, 2, 0).unwrap(), int(0));
        // p' < p
        assert_eq!(lemma_b_direct(2, 2, 0, 1).unwrap(), int(0));
    }

    #[test]
    fn lemma_b_matches_closed_form_r2() {
        for e in 1..=2 {
            for (pp, p) in lemma_b_cells(2, e) {
                assert_eq!(lemma_b_direct(2, e, pp, p).unwrap(), n2_closed(2, e, pp, p).unwrap(), "e={e} p'={pp} p={p}");
            }
        }
    }

    #[test]
    fn existence_examples() {
        assert_eq!(existence_choice(2, 1, 0).unwrap(), 0);
        assert_eq!(existence_choice(2, 1, 1).unwrap(), 1);
        assert_eq!(existence_choice(2, 2, 3).unwrap(), 1);
        assert!(existence_choice(1, 1, 0).is_err());
        for r in 2..=4 {
            for e in 1..=3 {
                for pp in 0..=(r + 1) * e / 2 {
                    let p = existence_choice(r, e, pp).unwrap();
                    assert!(!n2_closed(r, e, pp, p).unwrap().is_zero());
                }
            }
        }
    }

    fn recipe_inputs(r: u32, e: u32, p: u32) -> (SparsePoly, SparsePoly) {
        let t = VarTable::new(["x1", "x2", "c1", "c2", "d1", "d2"]).unwrap();
        let v = |s: &str| SparsePoly::var(&t, s).unwrap();
        let cx = &(&v("c1") * &v("x1")) + &(&v("c2") * &v("x2"));
        let dx = &(&v("d1") * &v("x1")) + &(&v("d2") * &v("x2"));
        (cx.pow(2 * r * e - 4 * p), dx.pow(2 * e))
    }

    #[test]
    fn recipe_matches_symbolic_form() {
        for (r, e) in [(2, 1), (2, 2), (3, 1)] {
            for p in 0..=r * e / 2 {
                for pp in 0..=(r + 1) * e / 2 {
                    let (c, d) = recipe_inputs(r, e, p);
                    let u = u_r_recipe(&c, &d, r, p, pp).unwrap();
                    let g = lemma_b_g(r, e, pp, p).unwrap().reembed(u.table()).unwrap();
                    assert_eq!(u.is_zero(), g.is_zero(), "r={r} e={e} p={p} p'={pp}");
                    if !g.is_zero() {
                        let k = u.ratio_to(&g).expect("proportional");
                        assert!(!k.is_zero());
                        let order = crate::omega::binary_order(&u).unwrap();
                        assert_eq!(order, (r + 1) * 2 * e - 4 * pp);
                    }
                }
            }
        }
    }

    #[test]
    fn recipe_rejects_bad_degree() {
        let (c, d) = recipe_inputs(2, 1, 0);
        assert!(matches!(u_r_recipe(&c, &d, 2, 1, 0), Err(Error::DegreeMismatch { .. })));
    }
}
