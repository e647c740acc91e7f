//! Exact scalars over ℚ and 𝔽ₚ.
//!
//! Every scalar is a [`Rat`]. Over ℚ it is a reduced fraction; over 𝔽ₚ it is
//! an integer residue in `[0, p)`. Arithmetic always goes through a [`Field`]
//! so that residues are reduced after every operation.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A reduced rational number with a machine-word fast path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Numerator and positive denominator, coprime, numerator != i64::MIN.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(Box<(BigInt, BigInt)>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(n: i128) -> bool {
    n > i64::MIN as i128 && n <= i64::MAX as i128
}

impl Rat {
    pub const ZERO: Rat = Rat(Repr::Small(0, 1));
    pub const ONE: Rat = Rat(Repr::Small(1, 1));

    pub fn int(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from_big(BigInt::from(n), BigInt::one())
        } else {
            Rat(Repr::Small(n, 1))
        }
    }

    /// Builds `n/d` in lowest terms. Panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d)))))
        }
    }

    /// Builds `n/d` in lowest terms from big integers.
    pub fn from_big(mut n: BigInt, mut d: BigInt) -> Rat {
        assert!(!d.is_zero(), "zero denominator");
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(a), Some(b)) if a != i64::MIN => Rat(Repr::Small(a, b)),
            _ => Rat(Repr::Big(Box::new((n, d)))),
        }
    }

    fn parts_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.parts_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.parts_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    /// Small integer value, when the rational is an integer fitting in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.0.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn neg(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(b) => Rat::from_big(-b.0.clone(), b.1.clone()),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) if s != i64::MIN => Rat(Repr::Small(s, 1)),
                _ => Rat::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => {
                let (a, b) = self.parts_big();
                let (c, d) = o.parts_big();
                Rat::from_big(a * &d + c * &b, b * d)
            }
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rat::ZERO,
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Rat::from_i128(*a as i128 * *c as i128, 1),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let g1 = gcd_u128(a.unsigned_abs() as u128, *d as u128) as i128;
                let g2 = gcd_u128(c.unsigned_abs() as u128, *b as u128) as i128;
                let n = (*a as i128 / g1) * (*c as i128 / g2);
                let m = (*b as i128 / g2) * (*d as i128 / g1);
                if fits(n) && fits(m) {
                    Rat(Repr::Small(n as i64, m as i64))
                } else {
                    Rat(Repr::Big(Box::new((BigInt::from(n), BigInt::from(m)))))
                }
            }
            _ => {
                let (a, b) = self.parts_big();
                let (c, d) = o.parts_big();
                Rat::from_big(a * c, b * d)
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => {
                if *n < 0 {
                    Rat(Repr::Small(-d, -n))
                } else {
                    Rat(Repr::Small(*d, *n))
                }
            }
            Repr::Big(b) => Rat::from_big(b.1.clone(), b.0.clone()),
        })
    }

    /// Parses `n`, `-n` or `n/d`.
    pub fn parse(s: &str) -> Option<Rat> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::from_big(n, d))
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (a, b) = self.parts_big();
        let (c, d) = other.parts_big();
        (a * d).cmp(&(c * b))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    /// Prime field with the given characteristic (`p < 2^31`).
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field constructor that rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, String> {
        if p >= (1u64 << 31) {
            return Err(format!("characteristic {} is too large (limit 2^31)", p));
        }
        if !is_prime(p) {
            return Err(format!("{} is not prime", p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".to_string(),
            Field::Prime(p) => format!("F{}", p),
        }
    }

    /// Inverse of [`Field::name`].
    pub fn from_name(s: &str) -> Result<Field, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = s.strip_prefix('F').map(|r| r.trim_start_matches('p'));
        match digits.and_then(|d| d.trim().parse::<u64>().ok()) {
            Some(p) => Field::prime(p),
            None => Err(format!("unknown field `{}` (expected Q or F<p>)", s)),
        }
    }

    fn residue(p: u32, n: i128) -> Rat {
        Rat(Repr::Small(n.rem_euclid(p as i128) as i64, 1))
    }

    fn small(x: &Rat) -> i64 {
        match x.0 {
            Repr::Small(n, 1) => n,
            _ => panic!("prime-field scalar is not a residue: {}", x),
        }
    }

    pub fn zero(&self) -> Rat {
        Rat::ZERO
    }

    pub fn one(&self) -> Rat {
        Rat::ONE
    }

    pub fn int(&self, n: i64) -> Rat {
        match self {
            Field::Rationals => Rat::int(n),
            Field::Prime(p) => Field::residue(*p, n as i128),
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rat(&self, x: &Rat) -> Option<Rat> {
        match self {
            Field::Rationals => Some(x.clone()),
            Field::Prime(p) => {
                let (n, d) = x.parts_big();
                let pb = BigInt::from(*p);
                let n = n.mod_floor(&pb).to_i64()?;
                let d = d.mod_floor(&pb).to_i64()?;
                let dn = self.inv(&Rat::int(d))?;
                Some(self.mul(&Rat::int(n), &dn))
            }
        }
    }

    /// True when `x` is in canonical form for this field.
    pub fn is_canonical(&self, x: &Rat) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => matches!(x.0, Repr::Small(n, 1) if n >= 0 && n < *p as i64),
        }
    }

    pub fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match self {
            Field::Rationals => a.add(b),
            Field::Prime(p) => {
                let s = Field::small(a) + Field::small(b);
                let p = *p as i64;
                Rat(Repr::Small(if s >= p { s - p } else { s }, 1))
            }
        }
    }

    pub fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        match self {
            Field::Rationals => a.sub(b),
            Field::Prime(p) => {
                let s = Field::small(a) - Field::small(b);
                Rat(Repr::Small(if s < 0 { s + *p as i64 } else { s }, 1))
            }
        }
    }

    pub fn neg(&self, a: &Rat) -> Rat {
        match self {
            Field::Rationals => a.neg(),
            Field::Prime(p) => {
                let s = Field::small(a);
                Rat(Repr::Small(if s == 0 { 0 } else { *p as i64 - s }, 1))
            }
        }
    }

    pub fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match self {
            Field::Rationals => a.mul(b),
            Field::Prime(p) => {
                let s = (Field::small(a) as i128 * Field::small(b) as i128) % *p as i128;
                Rat(Repr::Small(s as i64, 1))
            }
        }
    }

    /// `acc + a*b`
    pub fn mul_add(&self, acc: &Rat, a: &Rat, b: &Rat) -> Rat {
        self.add(acc, &self.mul(a, b))
    }

    pub fn inv(&self, a: &Rat) -> Option<Rat> {
        match self {
            Field::Rationals => a.inv(),
            Field::Prime(p) => {
                let a = Field::small(a);
                if a == 0 {
                    return None;
                }
                let (mut t, mut nt) = (0i64, 1i64);
                let (mut r, mut nr) = (*p as i64, a);
                while nr != 0 {
                    let q = r / nr;
                    (t, nt) = (nt, t - q * nt);
                    (r, nr) = (nr, r - q * nr);
                }
                Some(Field::residue(*p, t as i128))
            }
        }
    }

    pub fn div(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        Some(self.mul(a, &self.inv(b)?))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
