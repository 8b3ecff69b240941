use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// 2-adic valuation of a rational number. `Infinite` is the valuation of 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Nu2 {
    Finite(i64),
    Infinite,
}

impl Nu2 {
    pub fn is_nonnegative(self) -> bool {
        match self {
            Nu2::Finite(v) => v >= 0,
            Nu2::Infinite => true,
        }
    }
}

impl fmt::Display for Nu2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nu2::Finite(v) => write!(f, "{v}"),
            Nu2::Infinite => write!(f, "inf"),
        }
    }
}

/// 2-adic valuation of an arbitrary-precision integer.
pub fn nu2_bigint(n: &BigInt) -> Nu2 {
    if n.is_zero() {
        return Nu2::Infinite;
    }
    let mut v = 0i64;
    let mut m = n.abs();
    let two = BigInt::from(2);
    while (&m % &two).is_zero() {
        m /= &two;
        v += 1;
    }
    Nu2::Finite(v)
}

/// 2-adic valuation of a machine integer.
pub fn nu2_i64(n: i64) -> Nu2 {
    if n == 0 {
        Nu2::Infinite
    } else {
        Nu2::Finite(n.unsigned_abs().trailing_zeros() as i64)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact rational number stored in lowest terms with positive denominator,
/// carrying its 2-adic valuation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn new(num: BigInt, den: BigInt) -> Self {
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// nu_2(numerator) - nu_2(denominator); `Infinite` for 0.
    pub fn nu2(&self) -> Nu2 {
        if self.is_zero() {
            return Nu2::Infinite;
        }
        match (nu2_bigint(self.0.numer()), nu2_bigint(self.0.denom())) {
            (Nu2::Finite(a), Nu2::Finite(b)) => Nu2::Finite(a - b),
            _ => unreachable!("nonzero rational has finite valuations"),
        }
    }

    /// True when the value lies in Z_(2), i.e. has odd denominator.
    pub fn is_2_integral(&self) -> bool {
        self.nu2().is_nonnegative()
    }

    pub fn recip(&self) -> Self {
        Rat(self.0.clone().recip())
    }

    /// Least non-negative residue modulo 2^n. Requires odd denominator,
    /// which is then inverted 2-adically.
    pub fn residue_mod_2pow(&self, n: u32) -> Result<BigInt, Error> {
        if !self.is_2_integral() {
            return Err(Error::NonIntegral(self.to_string()));
        }
        let modulus = BigInt::one() << n;
        let num = self.0.numer().mod_floor_ref(&modulus);
        let den_inv = invert_odd_mod_2pow(self.0.denom(), n);
        Ok((num * den_inv) % &modulus)
    }

    /// Exact division, panics on zero divisor.
    pub fn div(&self, other: &Rat) -> Rat {
        Rat(&self.0 / &other.0)
    }
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Inverse of an odd integer modulo 2^n by Newton lifting.
fn invert_odd_mod_2pow(d: &BigInt, n: u32) -> BigInt {
    let modulus = BigInt::one() << n;
    let d = d.mod_floor_ref(&modulus);
    let mut x = BigInt::one();
    // x_{k+1} = x_k (2 - d x_k), doubling correct bits each pass
    let passes = 64 - (n as u64).leading_zeros() + 1;
    for _ in 0..=passes {
        let t = (BigInt::from(2) - (&d * &x)).mod_floor_ref(&modulus);
        x = (&x * t).mod_floor_ref(&modulus);
    }
    x
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_int =
            |t: &str| BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")));
        match s.split_once('/') {
            Some((a, b)) => {
                let den = parse_int(b)?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Rat(BigRational::new(parse_int(a)?, den)))
            }
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_valuation() {
        let r = Rat::new(BigInt::from(12), BigInt::from(-8));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.nu2(), Nu2::Finite(-1));
        assert_eq!(Rat::from_int(0).nu2(), Nu2::Infinite);
        assert_eq!(Rat::from_int(1).nu2(), Nu2::Finite(0));
        assert_eq!(Rat::new(BigInt::from(40), BigInt::from(3)).nu2(), Nu2::Finite(3));
    }

    #[test]
    fn binomial_valuations() {
        // nu2(C(2^k, 2)) = k - 1 at k = 5
        assert_eq!(nu2_bigint(&binomial(32, 2)), Nu2::Finite(4));
        // nu2(C(2^k, j)) = k - nu2(j) for 1 <= j <= 16, k <= 6 (brute force)
        for k in 1..=6u32 {
            for j in 1..=16u64.min(1 << k) {
                let expect = k as i64 - j.trailing_zeros() as i64;
                assert_eq!(nu2_bigint(&binomial(1 << k, j)), Nu2::Finite(expect), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn residues() {
        let r = Rat::new(BigInt::from(5), BigInt::from(3)); // 5 * 3^{-1} mod 8 = 5*3 = 15 = 7
        assert_eq!(r.residue_mod_2pow(3).unwrap(), BigInt::from(7));
        let r = Rat::from_int(-3);
        assert_eq!(r.residue_mod_2pow(2).unwrap(), BigInt::from(1));
        assert!(Rat::new(BigInt::from(1), BigInt::from(2)).residue_mod_2pow(2).is_err());
    }

    #[test]
    fn nu2_multiplicative() {
        let a = Rat::new(BigInt::from(6), BigInt::from(5));
        let b = Rat::new(BigInt::from(20), BigInt::from(9));
        let (Nu2::Finite(x), Nu2::Finite(y), Nu2::Finite(z)) = (a.nu2(), b.nu2(), (&a * &b).nu2())
        else {
            panic!()
        };
        assert_eq!(x + y, z);
    }
}
