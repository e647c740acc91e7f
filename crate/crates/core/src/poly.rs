//! Univariate polynomials over the scalar field (coefficients low to high).

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

pub type Poly = Vec<Rat>;

/// Largest prime for which roots are found by exhaustive search.
pub const BRUTE_FORCE_PRIME_LIMIT: u32 = 1 << 20;
/// Largest absolute integer whose divisors are enumerated.
const DIVISOR_LIMIT: u64 = 1 << 40;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(k: Field, p: &Poly, x: &Rat) -> Rat {
    let mut acc = Rat::ZERO;
    for c in p.iter().rev() {
        acc = k.add(&k.mul(&acc, x), c);
    }
    acc
}

/// Quotient of `p` by `x - r` (the remainder is discarded).
pub fn div_linear(k: Field, p: &Poly, r: &Rat) -> Poly {
    let n = p.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut q = vec![Rat::ZERO; n - 1];
    let mut carry = Rat::ZERO;
    for i in (1..n).rev() {
        carry = k.add(&p[i], &k.mul(&carry, r));
        q[i - 1] = carry.clone();
    }
    q
}

/// Distinct roots of `p` in the field, in increasing order.
pub fn roots(k: Field, p: &Poly) -> Result<Vec<Rat>> {
    let mut p = p.clone();
    trim(&mut p);
    if p.is_empty() {
        return Err(Error::Input("roots of the zero polynomial".into()));
    }
    match k {
        Field::Prime(q) => {
            if q > BRUTE_FORCE_PRIME_LIMIT {
                return Err(Error::Unsupported("root finding over primes above 2^20".into()));
            }
            Ok((0..q as i64).map(Rat::int).filter(|x| eval(k, &p, x).is_zero()).collect())
        }
        Field::Rationals => rational_roots(&p),
    }
}

fn rational_roots(p: &Poly) -> Result<Vec<Rat>> {
    let k = Field::Rationals;
    let mut out = Vec::new();
    let mut p = p.clone();
    if p[0].is_zero() {
        out.push(Rat::ZERO);
        let s = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..s);
    }
    if p.len() > 1 {
        // integer coefficients
        let mut l = BigInt::one();
        for c in &p {
            l = l.lcm(&c.denom());
        }
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        for num in divisors(&a0)? {
            for den in divisors(&an)? {
                for sign in [1i64, -1] {
                    let r = Rat::from_big(BigInt::from(sign) * &num, den.clone());
                    if eval(k, &p, &r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n.to_u64().filter(|m| *m <= DIVISOR_LIMIT).ok_or_else(|| Error::Limit("coefficient too large for rational root search".into()))?;
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Whether `p` is certifiably irreducible: degree one, or degree two or three
/// without roots. Higher degrees return `false` (not decided).
pub fn certified_irreducible(k: Field, p: &Poly) -> Result<bool> {
    let d = match degree(p) {
        Some(d) => d,
        None => return Ok(false),
    };
    if d == 1 {
        return Ok(true);
    }
    if d > 3 {
        return Ok(false);
    }
    Ok(roots(k, p)?.is_empty())
}
