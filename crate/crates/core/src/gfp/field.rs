use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{a} exceeds 2^31")]
    TooLarge { p: u32, a: u32 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    BadModulus(Vec<u32>),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element {0} is not in a field of order {1}")]
    OutOfRange(u32, u32),
}

/// Parameters of GF(p^a): the characteristic, the degree and the defining
/// polynomial (monic, coefficients low degree first, length `a + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub a: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// The lexicographically least monic irreducible polynomial of degree `a`,
    /// ordering candidates by `c_0 + c_1 p + ... + c_{a-1} p^{a-1}`.
    pub fn canonical(p: u32, a: u32) -> Result<Self, FieldError> {
        check_params(p, a)?;
        if a == 1 {
            return Ok(FieldSpec { p, a, modulus: vec![0, 1] });
        }
        let count = (p as u64).pow(a);
        for code in 0..count {
            let mut f = digits(code, p, a as usize);
            f.push(1);
            if f[0] != 0 && poly::is_irreducible(&f, p) {
                return Ok(FieldSpec { p, a, modulus: f });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.a)
    }
}

fn check_params(p: u32, a: u32) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if a == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if (p as u64).checked_pow(a).map_or(true, |q| q > 1 << 31) {
        return Err(FieldError::TooLarge { p, a });
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

const TABLE_LIMIT: u32 = 1 << 20;

/// GF(p^a) with elements packed as `c_0 + c_1 p + ... + c_{a-1} p^{a-1}`,
/// the coefficient vector in the power basis of the modulus root `w`.
pub struct Field {
    spec: FieldSpec,
    q: u32,
    primitive: u32,
    // exp[i] = primitive^i, log[x] = i; empty when q > TABLE_LIMIT or a == 1
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.spec.p, self.spec.a)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(p: u32, a: u32) -> Result<Arc<Field>, FieldError> {
        Self::with_spec(FieldSpec::canonical(p, a)?)
    }

    pub fn prime(p: u32) -> Result<Arc<Field>, FieldError> {
        Self::new(p, 1)
    }

    pub fn with_spec(spec: FieldSpec) -> Result<Arc<Field>, FieldError> {
        check_params(spec.p, spec.a)?;
        let a = spec.a as usize;
        if spec.modulus.len() != a + 1
            || spec.modulus[a] != 1
            || spec.modulus.iter().any(|&c| c >= spec.p)
            || !poly::is_irreducible(&spec.modulus, spec.p)
        {
            return Err(FieldError::BadModulus(spec.modulus.clone()));
        }
        let q = spec.order();
        let mut field = Field { spec, q, primitive: 0, exp: Vec::new(), log: Vec::new() };
        let factors = prime_divisors(q as u64 - 1);
        let primitive = (1..q)
            .find(|&x| {
                factors.iter().all(|&f| field.pow_slow(x, (q as u64 - 1) / f) != 1)
            })
            .expect("multiplicative group is cyclic");
        field.primitive = primitive;
        if field.spec.a > 1 && q <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..q - 1 {
                exp.push(x);
                log[x as usize] = i;
                x = field.mul_poly(x, primitive);
            }
            field.exp = exp;
            field.log = log;
        }
        Ok(Arc::new(field))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    pub fn a(&self) -> u32 {
        self.spec.a
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.spec.a == 1
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    /// The element `w`, a root of the modulus (for `a = 1` this is 0).
    pub fn generator_w(&self) -> u32 {
        if self.spec.a == 1 {
            0
        } else {
            self.spec.p
        }
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.spec.p as i64) as u32
    }

    pub fn coeffs(&self, x: u32) -> Vec<u32> {
        digits(x as u64, self.spec.p, self.spec.a as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32, FieldError> {
        let p = self.spec.p;
        let mut x = 0u64;
        for (i, &ci) in c.iter().enumerate() {
            if ci >= p || i >= self.spec.a as usize {
                return Err(FieldError::OutOfRange(ci, self.q));
            }
            x += ci as u64 * (p as u64).pow(i as u32);
        }
        Ok(x as u32)
    }

    pub fn check(&self, x: u32) -> Result<u32, FieldError> {
        if x < self.q {
            Ok(x)
        } else {
            Err(FieldError::OutOfRange(x, self.q))
        }
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        let p = self.spec.p;
        if self.spec.a == 1 {
            let s = x + y;
            return if s >= p { s - p } else { s };
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        let p = self.spec.p;
        if self.spec.a == 1 {
            return if x == 0 { 0 } else { p - x };
        }
        let mut x = x;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if self.spec.a == 1 {
            return (x as u64 * y as u64 % self.spec.p as u64) as u32;
        }
        if x == 0 || y == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let n = self.q - 1;
            let i = self.log[x as usize] + self.log[y as usize];
            return self.exp[(if i >= n { i - n } else { i }) as usize];
        }
        self.mul_poly(x, y)
    }

    fn mul_poly(&self, x: u32, y: u32) -> u32 {
        let p = self.spec.p;
        let prod = poly::mul(&self.coeffs(x), &self.coeffs(y), p);
        let r = poly::rem(&prod, &self.spec.modulus, p);
        self.from_coeffs(&r).expect("reduced polynomial")
    }

    fn pow_slow(&self, x: u32, mut n: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_any(acc, base);
            }
            base = self.mul_any(base, base);
            n >>= 1;
        }
        acc
    }

    fn mul_any(&self, x: u32, y: u32) -> u32 {
        if self.spec.a == 1 {
            (x as u64 * y as u64 % self.spec.p as u64) as u32
        } else {
            self.mul_poly(x, y)
        }
    }

    pub fn pow(&self, x: u32, n: u64) -> u32 {
        if x == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        if !self.exp.is_empty() {
            let m = (self.q - 1) as u64;
            return self.exp[((self.log[x as usize] as u64 * (n % m)) % m) as usize];
        }
        self.pow_slow(x, n)
    }

    pub fn inv(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// The Frobenius automorphism `x -> x^p`.
    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.spec.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: u32) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let mut n = self.q as u64 - 1;
        for f in prime_divisors(n) {
            while n % f == 0 && self.pow(x, n / f) == 1 {
                n /= f;
            }
        }
        Some(n)
    }

    /// Least element (in packed order) of exact multiplicative order `n`.
    pub fn root_of_unity(&self, n: u64) -> Option<u32> {
        if (self.q as u64 - 1) % n != 0 {
            return None;
        }
        (1..self.q).find(|&x| self.element_order(x) == Some(n))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Multiplicative order of `p` modulo `u` (1 for `u = 1`).
pub fn multiplicative_order_mod(p: u64, u: u64) -> Option<u64> {
    if u == 1 {
        return Some(1);
    }
    if gcd_u64(p, u) != 1 {
        return None;
    }
    let mut x = p % u;
    let mut k = 1;
    while x != 1 {
        x = x * p % u;
        k += 1;
    }
    Some(k)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_gf5() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn gf4_frobenius_of_w() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.spec().modulus, vec![1, 1, 1]);
        let w = f.generator_w();
        // w^2 = w + 1, packed as 1 + 2 = 3
        assert_eq!(f.frobenius(w), f.add(w, 1));
        assert_eq!(f.frobenius(w), 3);
    }

    #[test]
    fn fermat_little() {
        for (p, a) in [(2, 1), (3, 2), (5, 2), (2, 4), (7, 3), (3, 5)] {
            let f = Field::new(p, a).unwrap();
            for g in 1..f.q() {
                assert_eq!(f.pow(g, f.q() as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::canonical(3, 2).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(FieldSpec::canonical(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(FieldSpec::canonical(5, 2).unwrap().modulus, vec![2, 0, 1]);
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        let f = Field::new(3, 3).unwrap();
        for x in 0..f.q() {
            for y in 0..f.q() {
                assert_eq!(f.mul(x, y), f.mul_any(x, y));
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.root_of_unity(3), Some(2));
        assert_eq!(f.root_of_unity(5), None);
        let f9 = Field::new(3, 2).unwrap();
        let i = f9.root_of_unity(4).unwrap();
        assert_eq!(f9.mul(i, i), f9.from_int(-1));
    }

    #[test]
    fn order_mod() {
        assert_eq!(multiplicative_order_mod(3, 4), Some(2));
        assert_eq!(multiplicative_order_mod(5, 4), Some(1));
        assert_eq!(multiplicative_order_mod(2, 3), Some(2));
        assert_eq!(multiplicative_order_mod(7, 1), Some(1));
        assert_eq!(multiplicative_order_mod(3, 6), None);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(Field::new(2, 40), Err(FieldError::TooLarge { .. })));
    }
}
