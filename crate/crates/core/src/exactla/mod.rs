//! Exact linear algebra over the rationals.
//!
//! Everything here is arbitrary precision. Rank, kernels, images and
//! preimages come from one fraction-free echelon routine, and subspaces
//! compare by span.

mod echelon;
mod matrix;
mod subspace;

pub use echelon::Echelon;
pub use matrix::Matrix;
pub use subspace::{complement, CoordinateSolver, Reducer, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c * x`, skipping zero entries of `x`.
pub fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn scale_vec(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Canonical text form `num/den`, denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short form for human output: integers print without a denominator.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        field: "rational".into(),
        message: format!("cannot parse '{s}' as num/den"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse {
                    field: "rational".into(),
                    message: format!("zero denominator in '{s}'"),
                });
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Least common multiple of the denominators of `v`.
pub(crate) fn denominator_lcm(v: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for x in v {
        if !x.is_zero() && !x.denom().is_one() {
            l = num_integer::Integer::lcm(&l, x.denom());
        }
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(format_rational(&rat(6, 3)), "2/1");
        assert_eq!(display_rational(&rat(6, 3)), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-7/2", "0/1", "5/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(denominator_lcm(&[rat(1, 4), rat(1, 6), int(3)]), BigInt::from(12));
    }
}
