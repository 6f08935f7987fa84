use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, FieldError, FieldSpec};

/// Dense matrix over GF(p^a). Entries are packed field elements.
#[derive(Clone)]
pub struct FFMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    invertible: OnceLock<bool>,
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.spec() == other.field.spec()
            && self.data == other.data
    }
}
impl Eq for FFMatrix {}

impl std::hash::Hash for FFMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl FFMatrix {
    pub fn zero(field: &Arc<Field>, rows: usize, cols: usize) -> Self {
        Self::from_data(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<Field>, n: usize, x: u32) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn from_data(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        debug_assert!(data.iter().all(|&x| x < field.q()));
        FFMatrix { field: field.clone(), rows, cols, data, invertible: OnceLock::new() }
    }

    /// Build from rows of packed field elements.
    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u32>]) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for &x in row {
                data.push(field.check(x)?);
            }
        }
        Ok(Self::from_data(field, r, c, data))
    }

    /// Build from integer rows reduced into the prime subfield.
    pub fn from_ints(field: &Arc<Field>, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| field.from_int(x))).collect();
        Self::from_data(field, r, c, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
        self.invertible = OnceLock::new();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Arc<Field>, n: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(field, n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = v[i];
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.is_scalar() && (self.rows == 0 || self.data[0] == 1)
    }

    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let d = if n > 0 { self.data[0] } else { 0 };
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == if i == j { d } else { 0 }))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f.add(x, y)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f.sub(x, y)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&x| f.mul(c, x)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![0u32; n * m];
        if f.is_prime_field() {
            let p = f.p() as u64;
            for i in 0..n {
                for j in 0..m {
                    let mut acc = 0u64;
                    for t in 0..k {
                        acc += self.data[i * k + t] as u64 * other.data[t * m + j] as u64;
                        if acc >= 1 << 62 {
                            acc %= p;
                        }
                    }
                    out[i * m + j] = (acc % p) as u32;
                }
            }
        } else {
            for i in 0..n {
                for t in 0..k {
                    let x = self.data[i * k + t];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let y = other.data[t * m + j];
                        if y != 0 {
                            out[i * m + j] = f.add(out[i * m + j], f.mul(x, y));
                        }
                    }
                }
            }
        }
        Self::from_data(f, n, m, out)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j);
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut m = Self::zero(f, r1 * r2, c1 * c2);
        let cols = c1 * c2;
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let x = self.get(i1, j1);
                if x == 0 {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        m.data[(i1 * r2 + i2) * cols + j1 * c2 + j2] = f.mul(x, other.get(i2, j2));
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        m.invertible = OnceLock::new();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                m.data[r * cols + j] = f.mul(inv, m.data[r * cols + j]);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let y = m.data[r * cols + j];
                    if y != 0 {
                        m.data[i * cols + j] = f.add(m.data[i * cols + j], f.mul(nf, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : Mv = 0}`, one vector per free
    /// column of the row echelon form (1 at the free column).
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        *self.invertible.get_or_init(|| self.is_square() && self.rank() == self.rows)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            let _ = self.invertible.set(false);
            return None;
        }
        let _ = self.invertible.set(true);
        let mut inv = Self::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j);
            }
        }
        let _ = inv.invertible.set(true);
        Some(inv)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative order by repeated multiplication, if at most `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let id = Self::identity(&self.field, self.rows);
        let mut x = self.clone();
        for k in 1..=bound {
            if x == id {
                return Some(k);
            }
            x = x.matmul(self);
        }
        None
    }

    /// Entry-wise Frobenius `x -> x^p`.
    pub fn frobenius_entries(&self) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&x| f.frobenius(x)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    /// Apply a polynomial with prime-field coefficients (low degree first).
    pub fn eval_poly(&self, poly: &[u32]) -> Self {
        let n = self.rows;
        let mut acc = Self::zero(&self.field, n, n);
        for &c in poly.iter().rev() {
            acc = acc.matmul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = self.field.add(acc.data[idx], c);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - M)`, monic, low degree first
    /// (Hessenberg reduction followed by the standard recurrence).
    pub fn charpoly(&self) -> Vec<u32> {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| h.get(i, k) != 0) else {
                continue;
            };
            if piv != k + 1 {
                for j in 0..n {
                    h.data.swap(piv * n + j, (k + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + k + 1);
                }
            }
            let inv = f.inv(h.get(k + 1, k)).unwrap();
            for i in k + 2..n {
                let t = f.mul(h.get(i, k), inv);
                if t == 0 {
                    continue;
                }
                // row_i -= t * row_{k+1}; col_{k+1} += t * col_i
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(t, h.get(k + 1, j)));
                    h.data[i * n + j] = v;
                }
                for r in 0..n {
                    let v = f.add(h.get(r, k + 1), f.mul(t, h.get(r, i)));
                    h.data[r * n + k + 1] = v;
                }
            }
        }
        // p_0 = 1; p_m(x) = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} prod_{j=i+1}^{m} h_{j,j-1} p_{i-1}
        let mut ps: Vec<Vec<u32>> = vec![vec![1]];
        for m in 0..n {
            let prev = &ps[m];
            let mut next = vec![0u32; m + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(h.get(m, m), c));
            }
            let mut t = 1u32;
            for i in (0..m).rev() {
                t = f.mul(t, h.get(i + 1, i));
                if t == 0 {
                    break;
                }
                let coef = f.mul(h.get(i, m), t);
                for (j, &c) in ps[i].iter().enumerate() {
                    next[j] = f.sub(next[j], f.mul(coef, c));
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }

    /// Replace each GF(p^a) entry by the a×a prime-field matrix of
    /// multiplication by it in the power basis `1, w, ..., w^{a-1}`
    /// (column `j` holds the coordinates of `x·w^j`).
    pub fn blow_up(&self) -> Self {
        let f = &self.field;
        let a = f.a() as usize;
        let prime = Field::prime(f.p()).expect("prime subfield");
        if a == 1 {
            return Self::from_data(&prime, self.rows, self.cols, self.data.clone());
        }
        let (n, m) = (self.rows * a, self.cols * a);
        let mut out = vec![0u32; n * m];
        let basis: Vec<u32> = (0..a).map(|j| f.p().pow(j as u32)).collect();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x == 0 {
                    continue;
                }
                for (bj, &wj) in basis.iter().enumerate() {
                    let col = f.coeffs(f.mul(x, wj));
                    for (bi, &c) in col.iter().enumerate() {
                        out[(i * a + bi) * m + j * a + bj] = c;
                    }
                }
            }
        }
        Self::from_data(&prime, n, m, out)
    }

    /// Re-interpret a prime-field matrix as living in `field` (must share p).
    pub fn embed(&self, field: &Arc<Field>) -> Self {
        assert!(self.field.is_prime_field() && self.field.p() == field.p());
        Self::from_data(field, self.rows, self.cols, self.data.clone())
    }
}

impl Mul for &FFMatrix {
    type Output = FFMatrix;
    fn mul(self, rhs: &FFMatrix) -> FFMatrix {
        self.matmul(rhs)
    }
}

/// The na×na prime-field matrix of coordinate-wise Frobenius on
/// GF(p^a)^n; conjugation by it maps `blow_up(M)` to `blow_up(M^σ)`.
pub fn frobenius_map(field: &Arc<Field>, n: usize) -> FFMatrix {
    let a = field.a() as usize;
    let prime = Field::prime(field.p()).expect("prime subfield");
    let mut block = vec![0u32; a * a];
    for j in 0..a {
        let img = field.coeffs(field.frobenius(field.p().pow(j as u32)));
        for (i, &c) in img.iter().enumerate() {
            block[i * a + j] = c;
        }
    }
    let size = n * a;
    let mut out = FFMatrix::zero(&prime, size, size);
    for k in 0..n {
        for i in 0..a {
            for j in 0..a {
                out.data[(k * a + i) * size + k * a + j] = block[i * a + j];
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: u32,
    a: u32,
    modulus: Vec<u32>,
    /// rows of entries, each entry its coefficient vector
    rows: Vec<Vec<Vec<u32>>>,
}

impl Serialize for FFMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let spec = self.field.spec();
        MatrixJson {
            p: spec.p,
            a: spec.a,
            modulus: spec.modulus.clone(),
            rows: (0..self.rows)
                .map(|r| self.row(r).iter().map(|&x| self.field.coeffs(x)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FFMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let m = MatrixJson::deserialize(d)?;
        let field = Field::with_spec(FieldSpec { p: m.p, a: m.a, modulus: m.modulus })
            .map_err(D::Error::custom)?;
        let rows: Result<Vec<Vec<u32>>, _> = m
            .rows
            .iter()
            .map(|r| r.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>, _>>())
            .collect();
        let rows = rows.map_err(D::Error::custom)?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(D::Error::custom("ragged matrix"));
        }
        FFMatrix::from_rows(&field, &rows).map_err(D::Error::custom)
    }
}
