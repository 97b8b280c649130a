//! Exact scalars in the Eisenstein field ℚ(ω), ω² + ω + 1 = 0.
//!
//! A scalar is stored as `re + om·ω` with both parts arbitrary-precision
//! rationals in lowest terms. Complex conjugation sends ω to ω² = −1 − ω.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    om: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, om: BigRational) -> Self {
        Scalar { re, om }
    }

    pub fn from_ratios(re: (i64, i64), om: (i64, i64)) -> Self {
        Scalar {
            re: ratio(re.0, re.1),
            om: ratio(om.0, om.1),
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(n.into()),
            om: BigRational::zero(),
        }
    }

    pub fn rational(p: i64, q: i64) -> Self {
        Scalar {
            re: ratio(p, q),
            om: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Scalar::int(0)
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    /// The primitive cube root of unity −½ + i√3/2.
    pub fn omega() -> Self {
        Scalar {
            re: BigRational::zero(),
            om: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn om(&self) -> &BigRational {
        &self.om
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.om.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    /// Complex conjugate: ω ↦ ω².
    pub fn conj(&self) -> Self {
        Scalar {
            re: &self.re - &self.om,
            om: -&self.om,
        }
    }

    /// Field norm `z · conj(z) = re² − re·om + om²`, always a non-negative rational.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Scalar {
            re: c.re / &n,
            om: c.om / n,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root inside ℚ(ω), when one exists.
    ///
    /// Writes `z = u + v√−3` and solves `(s + t√−3)² = z` over ℚ.
    pub fn sqrt(&self) -> Option<Self> {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        // ω = (−1 + √−3)/2
        let u = &self.re - &self.om / &two;
        let v = &self.om / &two;
        let (s, t) = if v.is_zero() {
            if let Some(s) = rational_sqrt(&u) {
                (s, BigRational::zero())
            } else {
                (BigRational::zero(), rational_sqrt(&(-&u / &three))?)
            }
        } else {
            // s² = (u ± √(u² + 3v²)) / 2, t = v / 2s
            let disc = rational_sqrt(&(&u * &u + &three * &v * &v))?;
            let candidates = [(&u + &disc) / &two, (&u - &disc) / &two];
            let s = candidates
                .iter()
                .filter(|c| c.is_positive())
                .find_map(rational_sqrt)?;
            let t = &v / (&two * &s);
            (s, t)
        };
        // back to the (1, ω) basis: s + t√−3 = (s + t) + 2t·ω
        let root = Scalar {
            re: &s + &t,
            om: &two * &t,
        };
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    /// Roots of the monic quadratic `x² + p·x + q` in ℚ(ω), ordered canonically.
    pub fn monic_quadratic_roots(p: &Scalar, q: &Scalar) -> Vec<Scalar> {
        let half = Scalar::rational(1, 2);
        let disc = &(p * p) - &(&Scalar::int(4) * q);
        let Some(r) = disc.sqrt() else {
            return Vec::new();
        };
        let mut roots = vec![&(&-p + &r) * &half, &(&-p - &r) * &half];
        roots.sort();
        roots.dedup();
        roots
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar {
            re,
            om: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            om: &self.om + &rhs.om,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.om += &rhs.om;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            om: &self.om - &rhs.om,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let bd = &self.om * &rhs.om;
        Scalar {
            re: &self.re * &rhs.re - &bd,
            om: &self.re * &rhs.om + &self.om * &rhs.re - bd,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            om: -&self.om,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: `p/q`, `p/q*w`, or `p/q+r/s*w` (integers drop the `/1`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.om.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*w", fmt_rational(&self.om)),
            (false, false) => {
                let sign = if self.om.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}*w",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.om.abs())
                )
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::ScalarSyntax(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses exactly the canonical [`Display`](fmt::Display) form.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("*w") else {
            return Ok(parse_rational(s)?.into());
        };
        // split off the real part at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re = parse_rational(&body[..i])?;
                let om = parse_rational(body[i..].trim_start_matches('+'))?;
                Ok(Scalar::new(re, om))
            }
            None => Ok(Scalar::new(BigRational::zero(), parse_rational(body)?)),
        }
    }
}
