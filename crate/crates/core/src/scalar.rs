//! Exact rational scalars and the integer helpers used throughout.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Falling factorial `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// `(-1)^k` as a scalar.
pub fn sign(k: u64) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn to_integer(q: &Scalar) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NotInteger(fmt_exact(q)))
    }
}

/// `num/den`, always with the denominator spelled out.
pub fn fmt_exact(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Integer-looking form when the denominator is 1, `num/den` otherwise.
pub fn fmt_short(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        fmt_exact(q)
    }
}

/// Serde adapter writing a scalar as its [`fmt_short`] string.
pub mod exact {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{fmt_short, Scalar};

    pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_short(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Scalar>().map_err(D::Error::custom)
    }
}

/// Scale a rational vector to coprime integers whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * big(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if !g.is_zero() {
        for n in ints.iter_mut() {
            *n = &*n / &g;
        }
    }
    if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
        for n in ints.iter_mut() {
            *n = -&*n;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = ratio(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(ratio(1, 3) + ratio(1, 6), ratio(1, 2));
    }

    #[test]
    fn large_operands_stay_exact() {
        let a = big(factorial(40)) / big(factorial(38) + 1);
        let b = a.clone() - a.clone() + a.clone();
        assert_eq!(a, b);
        assert_eq!(big(factorial(30)) / big(factorial(28)), int(870));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[ratio(-13, 7), ratio(63, 7)]);
        assert_eq!(v, vec![BigInt::from(13), BigInt::from(-63)]);
    }
}
