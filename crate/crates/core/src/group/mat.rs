use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gfp::{is_prime, FFMatrix, Field};

/// A d×d matrix over GF(p), p < 256, stored row-major as reduced bytes.
/// The derived ordering is the lexicographic order of the entry tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GMat(Box<[u8]>);

impl GMat {
    pub fn entries(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for GMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMat{:?}", &self.0)
    }
}

/// The ambient GL(d, p) in which group elements live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatSpace {
    pub p: u32,
    pub d: usize,
}

impl MatSpace {
    pub fn new(p: u32, d: usize) -> Self {
        assert!(is_prime(p) && p < 256, "prime field GF({p}) unsupported for group elements");
        assert!(d > 0);
        MatSpace { p, d }
    }

    pub fn space_size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.d as u32)
    }

    pub fn identity(&self) -> GMat {
        self.scalar(1)
    }

    pub fn scalar(&self, x: u32) -> GMat {
        let d = self.d;
        let mut v = vec![0u8; d * d];
        for i in 0..d {
            v[i * d + i] = (x % self.p) as u8;
        }
        GMat(v.into_boxed_slice())
    }

    pub fn from_entries(&self, entries: &[u32]) -> GMat {
        assert_eq!(entries.len(), self.d * self.d);
        GMat(entries.iter().map(|&x| (x % self.p) as u8).collect())
    }

    pub fn from_rows(&self, rows: &[&[i64]]) -> GMat {
        let p = self.p as i64;
        GMat(rows.iter().flat_map(|r| r.iter().map(move |&x| x.rem_euclid(p) as u8)).collect())
    }

    pub fn from_ff(&self, m: &FFMatrix) -> GMat {
        assert!(m.field().is_prime_field() && m.field().p() == self.p);
        assert_eq!((m.rows(), m.cols()), (self.d, self.d));
        GMat(m.data().iter().map(|&x| x as u8).collect())
    }

    pub fn to_ff(&self, g: &GMat) -> FFMatrix {
        let f = Field::prime(self.p).expect("prime");
        self.to_ff_in(g, &f)
    }

    pub fn to_ff_in(&self, g: &GMat, field: &Arc<Field>) -> FFMatrix {
        FFMatrix::from_data(field, self.d, self.d, g.0.iter().map(|&x| x as u32).collect())
    }

    #[inline]
    pub fn mul(&self, a: &GMat, b: &GMat) -> GMat {
        let d = self.d;
        let p = self.p;
        let (x, y) = (&a.0, &b.0);
        let mut out = vec![0u8; d * d];
        let mut acc = [0u32; 64];
        for i in 0..d {
            if d <= 64 {
                acc[..d].iter_mut().for_each(|v| *v = 0);
                for t in 0..d {
                    let s = x[i * d + t] as u32;
                    if s == 0 {
                        continue;
                    }
                    let row = &y[t * d..(t + 1) * d];
                    for (c, &r) in acc[..d].iter_mut().zip(row) {
                        *c += s * r as u32;
                    }
                }
                for j in 0..d {
                    out[i * d + j] = (acc[j] % p) as u8;
                }
            } else {
                for j in 0..d {
                    let mut s = 0u32;
                    for t in 0..d {
                        s += x[i * d + t] as u32 * y[t * d + j] as u32;
                    }
                    out[i * d + j] = (s % p) as u8;
                }
            }
        }
        GMat(out.into_boxed_slice())
    }

    pub fn inverse(&self, a: &GMat) -> Option<GMat> {
        let inv = self.to_ff(a).inverse()?;
        Some(self.from_ff(&inv))
    }

    pub fn pow(&self, a: &GMat, mut n: u64) -> GMat {
        let mut acc = self.identity();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn conj(&self, g: &GMat, x: &GMat, g_inv: &GMat) -> GMat {
        self.mul(&self.mul(g, x), g_inv)
    }

    pub fn is_identity(&self, g: &GMat) -> bool {
        self.is_scalar(g) && g.0[0] == 1
    }

    pub fn is_scalar(&self, g: &GMat) -> bool {
        let d = self.d;
        let s = g.0[0];
        (0..d).all(|i| (0..d).all(|j| g.0[i * d + j] == if i == j { s } else { 0 }))
    }

    /// `g v` for a column vector.
    pub fn apply(&self, g: &GMat, v: &[u32]) -> Vec<u32> {
        let d = self.d;
        (0..d)
            .map(|i| {
                (0..d).map(|j| g.0[i * d + j] as u32 * v[j]).sum::<u32>() % self.p
            })
            .collect()
    }

    /// Entries as nested rows, for serialization.
    pub fn rows(&self, g: &GMat) -> Vec<Vec<u32>> {
        (0..self.d).map(|i| g.0[i * self.d..(i + 1) * self.d].iter().map(|&x| x as u32).collect()).collect()
    }

    pub fn from_nested(&self, rows: &[Vec<u32>]) -> Option<GMat> {
        if rows.len() != self.d || rows.iter().any(|r| r.len() != self.d || r.iter().any(|&x| x >= self.p)) {
            return None;
        }
        Some(GMat(rows.iter().flatten().map(|&x| x as u8).collect()))
    }

    /// Kronecker product of two prime-field matrices living in spaces of
    /// dimensions `self.d` and `other.d`.
    pub fn kron(&self, a: &GMat, other: &MatSpace, b: &GMat) -> GMat {
        let out = MatSpace::new(self.p, self.d * other.d);
        let fa = self.to_ff(a);
        let fb = other.to_ff(b);
        out.from_ff(&fa.kron(&fb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_inverse() {
        let s = MatSpace::new(3, 2);
        let a = s.from_rows(&[&[0, 2], &[1, 0]]);
        let b = s.from_rows(&[&[1, 1], &[0, 1]]);
        let ab = s.mul(&a, &b);
        assert_eq!(ab, s.from_rows(&[&[0, 2], &[1, 1]]));
        let inv = s.inverse(&ab).unwrap();
        assert!(s.is_identity(&s.mul(&ab, &inv)));
        assert_eq!(s.pow(&a, 4), s.identity());
    }

    #[test]
    fn ff_roundtrip() {
        let s = MatSpace::new(5, 3);
        let g = s.from_rows(&[&[1, 2, 3], &[0, 4, 1], &[2, 2, 2]]);
        assert_eq!(s.from_ff(&s.to_ff(&g)), g);
    }
}
