//! Pochhammer symbols, terminating hypergeometric sums and the closed-form
//! constants `N^I`, `J` and `N^II`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{big, binomial, factorial, int, ratio, sign, Scalar};

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Scalar, n: u32) -> Scalar {
    let mut acc = Scalar::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x += Scalar::one();
    }
    acc
}

fn nonpositive_integer(q: &Scalar) -> Option<u32> {
    (q.is_integer() && !q.is_positive()).then(|| (-q.to_integer()).try_into().unwrap_or(u32::MAX))
}

fn terminating_sum(upper: &[&Scalar], lower: &[&Scalar]) -> Result<Scalar> {
    let stop = upper
        .iter()
        .filter_map(|a| nonpositive_integer(a))
        .min()
        .ok_or(Error::NonTerminating)?;
    for b in lower {
        if let Some(m) = nonpositive_integer(b) {
            if m < stop {
                return Err(Error::LowerParameterPole(crate::scalar::fmt_short(b)));
            }
        }
    }
    let mut term = Scalar::one();
    let mut sum = Scalar::one();
    for i in 0..stop {
        let i_s = int(i as i64);
        for a in upper {
            term *= *a + &i_s;
        }
        for b in lower {
            term /= *b + &i_s;
        }
        term /= int(i as i64 + 1);
        sum += &term;
    }
    Ok(sum)
}

/// `3F2[a, b, c; d, e; 1]`, which must terminate through a nonpositive integer upper parameter.
pub fn terminating_3f2(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, e: &Scalar) -> Result<Scalar> {
    terminating_sum(&[a, b, c], &[d, e])
}

/// `2F1[a, b; c; 1]`, terminating.
pub fn terminating_2f1(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    terminating_sum(&[a, b], &[c])
}

/// Chu–Vandermonde: `2F1[-n, b; c; 1] = (c - b)_n / (c)_n`.
pub fn chu_vandermonde(n: u32, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    let den = pochhammer(c, n);
    if den.is_zero() {
        return Err(Error::LowerParameterPole(crate::scalar::fmt_short(c)));
    }
    Ok(pochhammer(&(c - b), n) / den)
}

fn f(n: u32) -> Scalar {
    big(factorial(n as u64))
}

fn check_e_p(e: u32, p: u32) -> Result<()> {
    if p > e {
        return Err(Error::OutOfRange(format!("need 0 <= p <= e, got e={e}, p={p}")));
    }
    Ok(())
}

/// Dixon's sum for a terminating well-poised series with integer parameters:
/// `3F2[-2m, b, c; 1-2m-b, 1-2m-c; 1]`.
///
/// The Gamma ratio is taken in its regularized form (the `Gamma(1+a/2)/Gamma(1+a)`
/// factor becomes `(-1)^m (2m)!/m!`), which leaves
/// `(-1)^m (2m)!/m! * (-m-b-c)! (-2m-b)! (-2m-c)! / ((-2m-b-c)! (-m-b)! (-m-c)!)`.
/// Every factorial argument must be a nonnegative integer.
pub fn dixon_terminating(m: u32, b: i64, c: i64) -> Result<Scalar> {
    let m_ = m as i64;
    let args = [-m_ - b - c, -2 * m_ - b, -2 * m_ - c, -2 * m_ - b - c, -m_ - b, -m_ - c];
    if let Some(bad) = args.iter().find(|&&x| x < 0) {
        return Err(Error::OutOfRange(format!("Dixon evaluation needs nonnegative factorial arguments, got {bad}")));
    }
    let fx = |x: i64| f(x as u32);
    Ok(sign(m as u64) * f(2 * m) / f(m) * fx(args[0]) * fx(args[1]) * fx(args[2])
        / (fx(args[3]) * fx(args[4]) * fx(args[5])))
}

/// `(2p)! (2e-p)! e!^2 / (p! (2e-2p)! (e-p)!^2)`, the closed form for `2p <= e`.
pub fn n1_closed_low(e: u32, p: u32) -> Scalar {
    f(2 * p) * f(2 * e - p) * f(e) * f(e) / (f(p) * f(2 * e - 2 * p) * f(e - p) * f(e - p))
}

/// Closed form for `2p >= e`, from Dixon's sum applied to
/// `3F2[-2m, -2m, -e; 1, 2p-e+1; 1]` with `m = e - p`:
/// `(2p)! (e+m)! e!^2 / (p! (2m)! m!^2)`.
pub fn n1_closed_high(e: u32, p: u32) -> Scalar {
    let m = e - p;
    f(2 * p) * f(e + m) * f(e) * f(e) / (f(p) * f(2 * m) * f(m) * f(m))
}

/// The second-regime expression `(2p)! (3e-3p)! e!^3 / ((2p-e)! (2e-2p)!^2 (e-p)!^3)`
/// as commonly printed. It agrees with the sum only at `p = e/2` and `p = e`.
pub fn n1_closed_high_printed(e: u32, p: u32) -> Scalar {
    let ep = f(e - p);
    f(2 * p) * f(3 * e - 3 * p) * f(e) * f(e) * f(e)
        / (f(2 * p - e) * f(2 * e - 2 * p) * f(2 * e - 2 * p) * ep.clone() * ep.clone() * ep)
}

/// Closed form of `N^I(e, p)`; at `p = e/2` every regime formula is evaluated and must agree.
pub fn n1_closed(e: u32, p: u32) -> Result<Scalar> {
    check_e_p(e, p)?;
    if 2 * p < e {
        Ok(n1_closed_low(e, p))
    } else if 2 * p > e {
        Ok(n1_closed_high(e, p))
    } else {
        let lo = n1_closed_low(e, p);
        if lo != n1_closed_high(e, p) || lo != n1_closed_high_printed(e, p) {
            return Err(Error::RegimeDisagreement { e, p });
        }
        Ok(lo)
    }
}

/// The alternating sum `sum_i (-1)^(p+i) C(2p, i) e!^4 / ((e-2p+i)!^2 (e-i)!^2)`,
/// over `max(0, 2p-e) <= i <= min(2p, e)`.
pub fn n1_via_dixon(e: u32, p: u32) -> Result<Scalar> {
    check_e_p(e, p)?;
    let e4 = f(e) * f(e) * f(e) * f(e);
    let lo = (2 * p).saturating_sub(e);
    let hi = (2 * p).min(e);
    let mut sum = Scalar::zero();
    for i in lo..=hi {
        let a = f(e + i - 2 * p);
        let b = f(e - i);
        let term = sign((p + i) as u64) * big(binomial(2 * p as u64, i as u64)) * &e4 / (a.clone() * a * b.clone() * b);
        sum += term;
    }
    Ok(sum)
}

/// `N^I` through its terminating `3F2` representation in the appropriate regime.
pub fn n1_via_3f2(e: u32, p: u32) -> Result<Scalar> {
    check_e_p(e, p)?;
    let s = |n: i64| int(n);
    let (e_, p_) = (e as i64, p as i64);
    if 2 * p <= e {
        let lower = s(e_ - 2 * p_ + 1);
        let pre = sign(p as u64) * f(e) * f(e) / (f(e - 2 * p) * f(e - 2 * p));
        Ok(pre * terminating_3f2(&s(-2 * p_), &s(-e_), &s(-e_), &lower, &lower)?)
    } else {
        let pre = sign((p + e) as u64) * f(2 * p) * f(e) * f(e) * f(e)
            / (f(2 * p - e) * f(2 * e - 2 * p) * f(2 * e - 2 * p));
        let a = s(-2 * e_ + 2 * p_);
        Ok(pre * terminating_3f2(&a, &a, &s(-e_), &s(1), &s(2 * p_ - e_ + 1))?)
    }
}

/// `J(s, p) = sum_beta (-1)^beta 2^(2p-2beta) (s+2p-beta)! / ((2p-2beta)! beta!)`.
pub fn j_direct(s: u32, p: u32) -> Scalar {
    let mut sum = Scalar::zero();
    for beta in 0..=p {
        let pow2 = big(BigInt::one() << (2 * (p - beta)));
        sum += sign(beta as u64) * pow2 * f(s + 2 * p - beta) / (f(2 * p - 2 * beta) * f(beta));
    }
    sum
}

/// `J(s, p) = (s+p)! (s + 3/2)_p / (p! (1/2)_p)`.
pub fn j_closed(s: u32, p: u32) -> Result<Scalar> {
    let num = f(s + p) * pochhammer(&(int(s as i64) + ratio(3, 2)), p);
    let j = num / (f(p) * pochhammer(&ratio(1, 2), p));
    if !j.is_integer() {
        return Err(Error::NotInteger(crate::scalar::fmt_exact(&j)));
    }
    Ok(j)
}

/// Whether `p' - p >= 0`, `e - p' + p >= 0` and `re - p' - p >= 0` all hold.
pub fn characteristic(r: u32, e: u32, p_prime: u32, p: u32) -> bool {
    let (r, e, pp, p) = (r as i64, e as i64, p_prime as i64, p as i64);
    pp - p >= 0 && e - pp + p >= 0 && r * e - pp - p >= 0
}

/// Rejects `r < 2`, `e < 1` and `2p > re`. A `p'` with `2p' > (r+1)e` is accepted:
/// the characteristic conditions then fail and the constant is zero.
pub fn check_lemma_b_range(r: u32, e: u32, p_prime: u32, p: u32) -> Result<()> {
    if r < 2 || e < 1 || 2 * p > r * e {
        return Err(Error::OutOfRange(format!(
            "need r >= 2, e >= 1, 2p <= re; got r={r}, e={e}, p'={p_prime}, p={p}"
        )));
    }
    Ok(())
}

/// Closed form of `N^II(r, e, p', p)`.
pub fn n2_closed(r: u32, e: u32, p_prime: u32, p: u32) -> Result<Scalar> {
    check_lemma_b_range(r, e, p_prime, p)?;
    if !characteristic(r, e, p_prime, p) {
        return Ok(Scalar::zero());
    }
    let pp = p_prime;
    let s = (r + 1) * e - pp - p;
    let num = f(2 * p) * f(2 * pp) * f(r * e - 2 * p) * f(e);
    let den = f(pp - p) * f(e + p - pp) * f(r * e - pp - p) * f((r + 1) * e - 2 * pp);
    Ok(sign((pp - p) as u64) * num / den * j_closed(s, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&ratio(7, 3), 1), ratio(7, 3));
        assert_eq!(pochhammer(&ratio(7, 3), 0), int(1));
    }

    #[test]
    fn hypergeometric_examples() {
        let one = int(1);
        assert_eq!(terminating_3f2(&int(0), &int(5), &int(3), &int(2), &one).unwrap(), int(1));
        assert_eq!(
            terminating_3f2(&int(-2), &int(-1), &int(-1), &int(2), &int(2)).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(terminating_3f2(&one, &one, &one, &one, &one), Err(Error::NonTerminating));
        assert!(matches!(
            terminating_3f2(&int(-3), &one, &one, &int(-1), &one),
            Err(Error::LowerParameterPole(_))
        ));
    }

    #[test]
    fn upper_lower_cancellation_reduces_to_chu_vandermonde() {
        for n in 0..6u32 {
            for (b, c) in [(ratio(1, 2), ratio(7, 3)), (int(4), int(3)), (ratio(-5, 2), int(2))] {
                let a = int(-(n as i64));
                let lhs = terminating_3f2(&a, &b, &ratio(9, 4), &ratio(9, 4), &c).unwrap();
                assert_eq!(lhs, chu_vandermonde(n, &b, &c).unwrap());
                assert_eq!(terminating_2f1(&a, &b, &c).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn n1_examples() {
        for e in 1..6 {
            assert_eq!(n1_closed(e, 0).unwrap(), int(1));
            assert_eq!(n1_via_dixon(e, 0).unwrap(), int(1));
        }
        assert_eq!(n1_closed(1, 1).unwrap(), int(2));
        assert_eq!(n1_closed(2, 1).unwrap(), int(24));
        assert_eq!(n1_via_dixon(1, 1).unwrap(), int(2));
        assert_eq!(n1_via_dixon(3, 2).unwrap(), n1_closed(3, 2).unwrap());
        assert!(n1_closed(2, 3).is_err());
    }

    #[test]
    fn three_f_two_representation() {
        for e in 1..=6 {
            for p in 0..=e {
                assert_eq!(n1_via_3f2(e, p).unwrap(), n1_via_dixon(e, p).unwrap(), "e={e} p={p}");
            }
        }
    }

    #[test]
    fn regimes_meet() {
        for e in [2, 4, 6, 8] {
            assert_eq!(n1_closed_low(e, e / 2), n1_closed_high(e, e / 2));
            assert_eq!(n1_closed_low(e, e / 2), n1_closed_high_printed(e, e / 2));
        }
        for e in 1..=5 {
            assert_eq!(n1_closed(e, e).unwrap(), f(2 * e) * f(e) * f(e));
        }
    }

    #[test]
    fn printed_high_regime_deviates_inside_the_regime() {
        // alternating-sum values: N(3,2) = 5184, N(4,3) = 4147200
        assert_eq!(n1_via_dixon(3, 2).unwrap(), int(5184));
        assert_eq!(n1_closed(3, 2).unwrap(), int(5184));
        assert_eq!(n1_closed_high_printed(3, 2), int(7776));
        assert_eq!(n1_closed(4, 3).unwrap(), int(4147200));
        assert_eq!(n1_closed_high_printed(4, 3), int(7464960));
        for e in 1..=6 {
            assert_eq!(n1_closed_high_printed(e, e), n1_closed(e, e).unwrap());
        }
    }

    #[test]
    fn dixon_matches_direct_series() {
        for m in 0..5u32 {
            for b in -8..=0i64 {
                for c in -8..=0i64 {
                    let Ok(closed) = dixon_terminating(m, b, c) else { continue };
                    let a = int(-2 * m as i64);
                    let d = int(1 - 2 * m as i64 - b);
                    let e = int(1 - 2 * m as i64 - c);
                    let series = terminating_3f2(&a, &int(b), &int(c), &d, &e).unwrap();
                    assert_eq!(series, closed, "m={m} b={b} c={c}");
                }
            }
        }
    }

    #[test]
    fn j_examples() {
        for s in 0..5 {
            assert_eq!(j_direct(s, 0), f(s));
            assert_eq!(j_closed(s, 0).unwrap(), f(s));
        }
        assert_eq!(j_direct(3, 1), int(216));
        assert_eq!(j_closed(3, 1).unwrap(), int(216));
        assert_eq!(j_direct(0, 1), int(3));
        assert_eq!(j_closed(0, 1).unwrap(), int(3));
    }

    #[test]
    fn n2_examples() {
        assert_eq!(n2_closed(2, 1, 0, 0).unwrap(), int(1));
        assert_eq!(n2_closed(2, 1, 2, 0).unwrap(), int(0));
        assert!(n2_closed(1, 1, 0, 0).is_err());
        assert!(n2_closed(2, 1, 0, 2).is_err());
        // e - p' + p < 0 inside the admissible range
        assert_eq!(n2_closed(2, 2, 3, 0).unwrap(), int(0));
    }
}
