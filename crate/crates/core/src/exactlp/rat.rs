//! Exact rational numbers with a machine-word fast path.
//!
//! `Rational` stores a reduced `i128` fraction while it fits and silently
//! promotes to an arbitrary-precision fraction when any intermediate would
//! overflow, so arithmetic is exact in every build profile. Values that fit
//! the small form are always stored in it, which keeps equality structural.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Reduced fraction, `den > 0`.
    Small { num: i128, den: i128 },
    /// Reduced by construction; only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

/// An exact signed rational number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(Repr);

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn make_small(num: i128, den: i128) -> Rational {
    debug_assert!(den != 0, "zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    if num == 0 {
        return Rational(Repr::Small { num: 0, den: 1 });
    }
    let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
    Rational(Repr::Small { num: num / g, den: den / g })
}

fn demote(b: BigRational) -> Rational {
    if let (Some(num), Some(den)) = (b.numer().to_i128(), b.denom().to_i128()) {
        Rational(Repr::Small { num, den })
    } else {
        Rational(Repr::Big(Box::new(b)))
    }
}

impl Rational {
    pub fn zero() -> Rational {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Rational {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(Repr::Small { num: n as i128, den: 1 })
    }

    /// `num/den` as an exact rational; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        make_small(num as i128, den as i128)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num == 0,
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Largest integer `<= self`; panics if it does not fit `i64`.
    pub fn floor_i64(&self) -> i64 {
        match &self.0 {
            Repr::Small { num, den } => {
                let q = num.div_euclid(*den);
                i64::try_from(q).expect("floor out of i64 range")
            }
            Repr::Big(b) => b.floor().to_integer().to_i64().expect("floor out of i64 range"),
        }
    }

    /// Smallest integer `>= self`; panics if it does not fit `i64`.
    pub fn ceil_i64(&self) -> i64 {
        match &self.0 {
            Repr::Small { num, den } => {
                let q = -(-num).div_euclid(*den);
                i64::try_from(q).expect("ceil out of i64 range")
            }
            Repr::Big(b) => b.ceil().to_integer().to_i64().expect("ceil out of i64 range"),
        }
    }

    pub fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => {
                if let Some(n) = num.checked_neg() {
                    return Rational(Repr::Small { num: n, den: *den });
                }
                demote(-self.to_big())
            }
            Repr::Big(b) => demote(-(**b).clone()),
        }
    }

    pub fn add_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            // a/b + c/d with the classical gcd trick to delay overflow.
            let g = gcd(b.unsigned_abs(), d.unsigned_abs()) as i128;
            let (b1, d1) = (b / g, d / g);
            if let Some(r) = (|| {
                let left = a.checked_mul(d1)?;
                let right = c.checked_mul(b1)?;
                let num = left.checked_add(right)?;
                let den = b1.checked_mul(*d)?;
                Some(make_small(num, den))
            })() {
                return r;
            }
        }
        demote(self.to_big() + other.to_big())
    }

    pub fn sub_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            let g = gcd(b.unsigned_abs(), d.unsigned_abs()) as i128;
            let (b1, d1) = (b / g, d / g);
            if let Some(r) = (|| {
                let left = a.checked_mul(d1)?;
                let right = c.checked_mul(b1)?;
                let num = left.checked_sub(right)?;
                let den = b1.checked_mul(*d)?;
                Some(make_small(num, den))
            })() {
                return r;
            }
        }
        demote(self.to_big() - other.to_big())
    }

    pub fn mul_ref(&self, other: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            // Cross-reduce before multiplying.
            let g1 = gcd(a.unsigned_abs(), d.unsigned_abs()) as i128;
            let g2 = gcd(c.unsigned_abs(), b.unsigned_abs()) as i128;
            let (a1, d1) = (a / g1, d / g1);
            let (c1, b1) = (c / g2, b / g2);
            if let Some(r) = (|| {
                let num = a1.checked_mul(c1)?;
                let den = b1.checked_mul(d1)?;
                Some(make_small(num, den))
            })() {
                return r;
            }
        }
        demote(self.to_big() * other.to_big())
    }

    pub fn div_ref(&self, other: &Rational) -> Rational {
        assert!(!other.is_zero(), "division by zero");
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            let g1 = gcd(a.unsigned_abs(), c.unsigned_abs()) as i128;
            let g2 = gcd(b.unsigned_abs(), d.unsigned_abs()) as i128;
            let (a1, c1) = (a / g1, c / g1);
            let (b1, d1) = (b / g2, d / g2);
            if let Some(r) = (|| {
                let num = a1.checked_mul(d1)?;
                let den = b1.checked_mul(c1)?;
                Some(make_small(num, den))
            })() {
                return r;
            }
        }
        demote(self.to_big() / other.to_big())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            if let (Some(left), Some(right)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return left.cmp(&right);
            }
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl std::ops::$trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}
