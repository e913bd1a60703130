use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::NumberError;

/// Exact dyadic rational `numerator / 2^exponent`, always reduced.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

pub type Rational = Ratio<i128>;

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        while d.exp > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.exp -= 1;
        }
        if d.num == 0 {
            d.exp = 0;
        }
        d
    }

    pub fn integer(n: i128) -> Dyadic {
        Dyadic::new(n, 0)
    }

    /// `2^-k`.
    pub fn pow2_inv(k: u32) -> Dyadic {
        Dyadic::new(1, k)
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn signum(self) -> i32 {
        self.num.signum() as i32
    }

    pub fn abs(self) -> Dyadic {
        Dyadic::new(self.num.abs(), self.exp)
    }

    fn align(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        (a.num << (e - a.exp), b.num << (e - b.exp), e)
    }

    pub fn half(self) -> Dyadic {
        Dyadic::new(self.num, self.exp + 1)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.num, 1i128 << self.exp)
    }

    pub fn floor(self) -> i128 {
        self.num >> self.exp
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-self.num, self.exp)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::align(*self, *other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1i128 << self.exp)
        }
    }
}

/// Accepts `n`, `p/q` with `q` a power of two, and `p/2^k`.
impl FromStr for Dyadic {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NumberError::Parse {
            what: "dyadic",
            text: s.to_string(),
        };
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Dyadic::integer(s.parse().map_err(|_| err())?)),
            Some((p, q)) => {
                let num: i128 = p.trim().parse().map_err(|_| err())?;
                let q = q.trim();
                let exp = if let Some(k) = q.strip_prefix("2^") {
                    k.parse::<u32>().map_err(|_| err())?
                } else {
                    let den: u128 = q.parse().map_err(|_| err())?;
                    if den == 0 || !den.is_power_of_two() {
                        return Err(err());
                    }
                    den.trailing_zeros()
                };
                if exp > 100 {
                    return Err(NumberError::Overflow);
                }
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}
