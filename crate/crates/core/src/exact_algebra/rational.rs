use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^n` as a rational.
pub fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Generalized binomial coefficient C(p, i) for any integer `p` and `i >= 0`.
pub fn binomial(p: i64, i: usize) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i as i64 {
        num *= BigInt::from(p - j);
        den *= BigInt::from(j + 1);
    }
    Rational::new(num, den)
}

/// `1 / n!`.
pub fn factorial_inv(n: usize) -> Rational {
    let mut den = BigInt::one();
    for j in 2..=n as i64 {
        den *= BigInt::from(j);
    }
    Rational::new(BigInt::one(), den)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3/2", "5/6", "12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials_extend_to_negative_tops() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(-1, 3), q(-1));
        assert_eq!(binomial(-2, 2), q(3));
        assert_eq!(binomial(3, 5), q(0));
        assert_eq!(binomial(-4, 0), q(1));
    }

    #[test]
    fn signs_and_factorials() {
        assert_eq!(sign(-3), q(-1));
        assert_eq!(sign(4), q(1));
        assert_eq!(factorial_inv(4), qf(1, 24));
    }
}
