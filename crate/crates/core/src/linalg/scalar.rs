use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The scalar interface used by the linear algebra routines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(BigRational);

impl Q {
    pub fn new(numer: i64, denom: i64) -> Q {
        assert!(denom != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(v: BigInt) -> Q {
        Q(BigRational::from_integer(v))
    }

    pub fn from_ratio(numer: BigInt, denom: BigInt) -> Q {
        assert!(!denom.is_zero(), "zero denominator");
        Q(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl Default for Q {
    fn default() -> Q {
        <Q as Field>::zero()
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
}

impl FromStr for Q {
    type Err = Error;

    /// Accepts `a`, `-a` and `a/b`.
    fn from_str(s: &str) -> Result<Q> {
        let s = s.trim();
        let bad = || Error::InvalidInput(alloc::format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Q::from_ratio(n, d))
            }
            None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&Q> for String {
    fn from(q: &Q) -> String {
        alloc::format!("{q}")
    }
}

macro_rules! q_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                Q(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                Q(self.0.$m(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'a Q> for &'b Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                Q((&self.0).$m(&rhs.0))
            }
        }
    };
}

q_binop!(Add, add);
q_binop!(Sub, sub);
q_binop!(Mul, mul);
q_binop!(Div, div);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl<'a> Neg for &'a Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q(BigRational::zero())
    }
    fn one() -> Q {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Q {
        Q::from(v)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Q> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

static MODULUS: AtomicU64 = AtomicU64::new(2_147_483_647);

/// Selects the characteristic used by every [`Fp`] value.
///
/// The modulus is process wide; switching it while `Fp` values are alive
/// makes those values meaningless.
pub fn set_modulus(p: u64) -> Result<()> {
    if p <= 2 || p >= (1 << 62) || !is_prime(p) {
        return Err(Error::InvalidInput(alloc::format!(
            "{p} is not an odd prime below 2^62"
        )));
    }
    MODULUS.store(p, Ordering::SeqCst);
    Ok(())
}

pub fn modulus() -> u64 {
    MODULUS.load(Ordering::Relaxed)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field selected with [`set_modulus`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: i64) -> Fp {
        let p = modulus() as i128;
        Fp((v as i128).rem_euclid(p) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduction of a rational; `None` when the denominator vanishes mod p.
    pub fn from_q(q: &Q) -> Option<Fp> {
        let p = BigInt::from(modulus());
        let n = (q.numer() % &p + &p) % &p;
        let d = (q.denom() % &p + &p) % &p;
        let n = Fp(n.to_u64()?);
        let d = Fp(d.to_u64()?);
        d.inv().map(|di| n * di)
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = modulus() as u128;
        let mut base = self.0 as u128;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, modulus())
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = modulus() as u128;
        Fp(((self.0 as u128 + rhs.0 as u128) % p) as u64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = modulus() as u128;
        Fp(((self.0 as u128 + p - rhs.0 as u128) % p) as u64)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = modulus() as u128;
        Fp((self.0 as u128 * rhs.0 as u128 % p) as u64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero() - self
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    fn add(self, rhs: &'a Fp) -> Fp {
        self + *rhs
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    fn sub(self, rhs: &'a Fp) -> Fp {
        self - *rhs
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    fn mul(self, rhs: &'a Fp) -> Fp {
        self * *rhs
    }
}

impl Field for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn one() -> Fp {
        Fp(1)
    }
    fn from_i64(v: i64) -> Fp {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(modulus() - 2))
        }
    }
}
