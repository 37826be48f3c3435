//! High-precision constants as exact rationals.
//!
//! Fixed-point arithmetic over `BigRational`: every intermediate value is
//! rounded to `bits` fractional bits, so results carry an absolute error of a
//! few units in the last place.  Enough for the 200-bit evaluations used in
//! float-mode restriction; not a general interval library.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Round to `bits` fractional bits (round to nearest).
pub fn round_fix(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    BigRational::new(rounded, scale)
}

/// pi by Machin's formula, accurate to about `bits` bits.
pub fn pi(bits: u32) -> BigRational {
    let work = bits + 16;
    let a = atan_inv(5, work);
    let b = atan_inv(239, work);
    let pi = (a * BigRational::from_integer(BigInt::from(16)))
        - (b * BigRational::from_integer(BigInt::from(4)));
    round_fix(&pi, bits)
}

/// arctan(1/x) for integer x >= 2 by the alternating Taylor series.
fn atan_inv(x: i64, bits: u32) -> BigRational {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let x2 = BigRational::from_integer(BigInt::from(x * x));
    let mut term = BigRational::new(BigInt::one(), BigInt::from(x));
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        let contrib = &term / BigRational::from_integer(BigInt::from(2 * k + 1));
        if contrib.abs() < eps {
            break;
        }
        if k % 2 == 0 {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        term = round_fix(&(&term / &x2), bits + 32);
        k += 1;
    }
    sum
}

/// Square root of a non-negative rational, accurate to about `bits` bits.
pub fn sqrt(q: &BigRational, bits: u32) -> BigRational {
    assert!(!q.is_negative());
    if q.is_zero() {
        return BigRational::zero();
    }
    // sqrt(n/d) = sqrt(n * d) / d with an integer Newton iteration on
    // n * d * 2^{2 bits}.
    let shift = 2 * (bits + 8);
    let target: BigInt = (q.numer() * q.denom()).abs() << shift;
    let root = isqrt(&target);
    let denom: BigInt = q.denom().abs() << (shift / 2);
    round_fix(&BigRational::new(root, denom), bits)
}

fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// exp(x), accurate to about `bits` bits, via argument reduction
/// exp(x) = exp(x/2^k)^{2^k} and the Taylor series.
pub fn exp(x: &BigRational, bits: u32) -> BigRational {
    let work = bits + 32;
    // reduce |x| below 1/2
    let mut k = 0u32;
    let mut y = x.clone();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while y.abs() > half {
        y /= BigRational::from_integer(BigInt::from(2));
        k += 1;
        if k > 64 {
            break;
        }
    }
    let eps = BigRational::new(BigInt::one(), BigInt::one() << work);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut j: i64 = 0;
    loop {
        j += 1;
        term = round_fix(
            &(&term * &y / BigRational::from_integer(BigInt::from(j))),
            work,
        );
        if term.abs() < eps {
            break;
        }
        sum += &term;
    }
    for _ in 0..k {
        sum = round_fix(&(&sum * &sum), work);
    }
    round_fix(&sum, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn close(a: &BigRational, b: &BigRational, bits: u32) -> bool {
        (a - b).abs() < BigRational::new(BigInt::one(), BigInt::one() << bits)
    }

    fn dec(s: &str) -> BigRational {
        // parse a decimal literal like "3.14159" as an exact rational
        let (int_part, frac_part) = s.split_once('.').unwrap();
        let denom = num::pow::pow(BigInt::from(10), frac_part.len());
        let numer = BigInt::from_str(&format!("{}{}", int_part, frac_part)).unwrap();
        BigRational::new(numer, denom)
    }

    #[test]
    fn pi_digits() {
        let reference = dec("3.14159265358979323846264338327950288419716939937510582097494");
        assert!(close(&pi(180), &reference, 170));
    }

    #[test]
    fn sqrt_digits() {
        let two = BigRational::from_integer(BigInt::from(2));
        let reference = dec("1.41421356237309504880168872420969807856967187537694");
        assert!(close(&sqrt(&two, 150), &reference, 140));
        // exactness on perfect squares up to rounding
        let nine = BigRational::from_integer(BigInt::from(9));
        assert!(close(
            &sqrt(&nine, 100),
            &BigRational::from_integer(BigInt::from(3)),
            90
        ));
    }

    #[test]
    fn exp_digits() {
        // Gelfond's constant e^pi = 23.14069263277926900572...
        let p = pi(200);
        let reference = dec("23.1406926327792690057290863679485473802661062426002119934450");
        assert!(close(&exp(&p, 200), &reference, 150));
        // exp(a)exp(b) = exp(a+b) to working precision
        let a = BigRational::new(BigInt::from(-7), BigInt::from(3));
        let b = BigRational::new(BigInt::from(5), BigInt::from(4));
        let lhs = exp(&a, 200) * exp(&b, 200);
        let rhs = exp(&(a + b), 200);
        assert!(close(&lhs, &rhs, 150));
    }
}
