//! Extraspecial groups of exponent r (r odd), the two extraspecial 2-groups
//! and the symplectic-type 2-group, in their faithful irreducible
//! representation of degree r^m over GF(p^a).
//!
//! Basis of the quotient by the centre: `(x_1..x_m, z_1..z_m)`, with lift
//! `v -> X_1^{v_1}..X_m^{v_m} Z_1^{v_{m+1}}..Z_m^{v_{2m}}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gfp::{is_prime, FFMatrix, Field, FieldError, FieldSpec};
use crate::group::{enumerate, EnumeratedGroup, GMat, GroupError, MatSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EType {
    OddExponent,
    Plus,
    Minus,
    SymplecticType,
}

impl EType {
    pub fn name(self) -> &'static str {
        match self {
            EType::OddExponent => "odd",
            EType::Plus => "plus",
            EType::Minus => "minus",
            EType::SymplecticType => "symplectic",
        }
    }
}

#[derive(Debug, Error)]
pub enum EspecError {
    #[error("field does not split E: no element of order {0}")]
    NoRootOfUnity(u64),
    #[error("invalid extraspecial spec: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraspecialSpec {
    pub r: u32,
    pub m: u32,
    pub etype: EType,
    pub field: FieldSpec,
}

impl ExtraspecialSpec {
    pub fn new(r: u32, m: u32, etype: EType, p: u32, a: u32) -> Result<Self, EspecError> {
        let spec = ExtraspecialSpec { r, m, etype, field: FieldSpec::canonical(p, a)? };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), EspecError> {
        let bad = |s: &str| Err(EspecError::Invalid(s.to_string()));
        if !is_prime(self.r) || self.m == 0 {
            return bad("r must be prime and m >= 1");
        }
        let q1 = self.field.order() as u64 - 1;
        match self.etype {
            EType::OddExponent if self.r == 2 => return bad("odd-exponent type needs odd r"),
            EType::Plus | EType::Minus | EType::SymplecticType if self.r != 2 => {
                return bad("plus, minus and symplectic types need r = 2")
            }
            EType::SymplecticType if q1 % 4 != 0 => return bad("symplectic type needs 4 | q-1"),
            _ => {}
        }
        if q1 % self.r as u64 != 0 {
            return Err(EspecError::NoRootOfUnity(self.r as u64));
        }
        Ok(())
    }

    /// Degree of the representation, r^m.
    pub fn dim(&self) -> usize {
        (self.r as usize).pow(self.m)
    }

    pub fn group_order(&self) -> u64 {
        let base = (self.r as u64).pow(2 * self.m + 1);
        if self.etype == EType::SymplecticType {
            base * 2
        } else {
            base
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtraspecialGroup {
    spec: ExtraspecialSpec,
    field: Arc<Field>,
    /// `[X_i, Z_i] = omega * I`
    omega: u32,
    xs: Vec<FFMatrix>,
    zs: Vec<FFMatrix>,
    /// order-4 scalar, symplectic type only
    iota: Option<u32>,
}

/// Cyclic shift `e_{j+1} -> e_j` and `diag(1, w, ..., w^{r-1})`.
fn building_block(field: &Arc<Field>, r: usize, omega: u32) -> (FFMatrix, FFMatrix) {
    let mut x = FFMatrix::zero(field, r, r);
    let mut z = FFMatrix::zero(field, r, r);
    for i in 0..r {
        x.set(i, (i + 1) % r, 1);
        z.set(i, i, field.pow(omega, i as u64));
    }
    (x, z)
}

/// The quaternion pair `[[0,-1],[1,0]]`, `[[s,t],[t,-s]]` with `s^2+t^2 = -1`.
fn quaternion_pair(field: &Arc<Field>) -> (FFMatrix, FFMatrix) {
    let m1 = field.neg(1);
    let (s, t) = field
        .elements()
        .flat_map(|s| field.elements().map(move |t| (s, t)))
        .find(|&(s, t)| field.add(field.mul(s, s), field.mul(t, t)) == m1)
        .expect("sums of two squares cover GF(q)");
    let a = FFMatrix::from_rows(field, &[vec![0, m1], vec![1, 0]]).unwrap();
    let b = FFMatrix::from_rows(field, &[vec![s, t], vec![t, field.neg(s)]]).unwrap();
    (a, b)
}

fn kron_at(field: &Arc<Field>, block: &FFMatrix, pos: usize, m: usize, r: usize) -> FFMatrix {
    let mut out = FFMatrix::identity(field, 1);
    for k in 0..m {
        let f = if k == pos { block.clone() } else { FFMatrix::identity(field, r) };
        out = out.kron(&f);
    }
    out
}

pub fn build_extraspecial(spec: &ExtraspecialSpec) -> Result<ExtraspecialGroup, EspecError> {
    spec.validate()?;
    let field = Field::with_spec(spec.field.clone())?;
    let r = spec.r as usize;
    let m = spec.m as usize;
    let omega = field.root_of_unity(spec.r as u64).ok_or(EspecError::NoRootOfUnity(spec.r as u64))?;
    let (bx, bz) = building_block(&field, r, omega);
    let mut xs = Vec::with_capacity(m);
    let mut zs = Vec::with_capacity(m);
    for i in 0..m {
        let (x, z) = if i == 0 && spec.etype == EType::Minus { quaternion_pair(&field) } else { (bx.clone(), bz.clone()) };
        xs.push(kron_at(&field, &x, i, m, r));
        zs.push(kron_at(&field, &z, i, m, r));
    }
    let iota = if spec.etype == EType::SymplecticType {
        Some(field.root_of_unity(4).ok_or(EspecError::NoRootOfUnity(4))?)
    } else {
        None
    };
    Ok(ExtraspecialGroup { spec: spec.clone(), field, omega, xs, zs, iota })
}

impl ExtraspecialGroup {
    pub fn spec(&self) -> &ExtraspecialSpec {
        &self.spec
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.spec.dim()
    }
    pub fn omega(&self) -> u32 {
        self.omega
    }
    pub fn iota(&self) -> Option<u32> {
        self.iota
    }
    pub fn m(&self) -> usize {
        self.spec.m as usize
    }

    /// `X_1..X_m, Z_1..Z_m`: lifts of the quotient basis.
    pub fn basis_lifts(&self) -> Vec<FFMatrix> {
        self.xs.iter().chain(&self.zs).cloned().collect()
    }

    /// Basis lifts, then the order-4 scalar for the symplectic type.
    pub fn generators(&self) -> Vec<FFMatrix> {
        let mut g = self.basis_lifts();
        if let Some(i) = self.iota {
            g.push(FFMatrix::scalar(&self.field, self.dim(), i));
        }
        g
    }

    /// Generators of the plus or minus extraspecial subgroup of a
    /// symplectic-type group (the whole generator list otherwise).
    pub fn extraspecial_subgroup_generators(&self, etype: EType) -> Vec<FFMatrix> {
        match (self.iota, etype) {
            (Some(_), EType::Plus) => self.basis_lifts(),
            (Some(i), EType::Minus) => {
                let mut g = self.basis_lifts();
                let m = self.m();
                g[0] = g[0].scale(i);
                g[m] = g[m].scale(i);
                g
            }
            _ => self.generators(),
        }
    }

    pub fn lift(&self, v: &[u32]) -> FFMatrix {
        let m = self.m();
        assert_eq!(v.len(), 2 * m);
        let mut out = FFMatrix::identity(&self.field, self.dim());
        for (k, g) in self.basis_lifts().iter().enumerate() {
            if v[k] % self.spec.r != 0 {
                out = &out * &g.pow(v[k] as u64 % self.spec.r as u64);
            }
        }
        out
    }

    /// The quotient coordinates `w` with `h = c·lift(w)` for a scalar `c`,
    /// found by trying every `w`.
    pub fn quotient_coords(&self, h: &FFMatrix) -> Option<Vec<u32>> {
        let n = 2 * self.m();
        let r = self.spec.r;
        let total = (r as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let w: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (c % r as u64) as u32;
                    c /= r as u64;
                    d
                })
                .collect();
            let l = self.lift(&w).inverse().expect("invertible");
            if (h * &l).is_scalar() {
                return Some(w);
            }
        }
        None
    }

    /// Gram matrix of the commutator form in the standard basis.
    pub fn gram(&self) -> Vec<Vec<u32>> {
        let m = self.m();
        let r = self.spec.r;
        let mut g = vec![vec![0; 2 * m]; 2 * m];
        for i in 0..m {
            g[i][m + i] = 1;
            g[m + i][i] = r - 1;
        }
        g
    }

    /// Values of the squaring form on the basis (r = 2 extraspecial only).
    pub fn quadratic_on_basis(&self) -> Option<Vec<u32>> {
        let m = self.m();
        match self.spec.etype {
            EType::Plus => Some(vec![0; 2 * m]),
            EType::Minus => {
                let mut q = vec![0; 2 * m];
                q[0] = 1;
                q[m] = 1;
                Some(q)
            }
            _ => None,
        }
    }

    /// Prime-field images of the generators in GL(dim·a, p).
    pub fn prime_generators(&self) -> (MatSpace, Vec<GMat>) {
        let space = MatSpace::new(self.field.p(), self.dim() * self.field.a() as usize);
        let g = self.generators().iter().map(|m| space.from_ff(&m.blow_up())).collect();
        (space, g)
    }

    pub fn enumerate(&self) -> Result<EnumeratedGroup, EspecError> {
        let (space, gens) = self.prime_generators();
        Ok(enumerate(space, &gens, 1 << 20)?)
    }
}

/// Bilinear form value `u^T G v` mod r.
pub fn form_value(gram: &[Vec<u32>], u: &[u32], v: &[u32], r: u32) -> u32 {
    let mut s = 0u64;
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        for (j, &vj) in v.iter().enumerate() {
            s += (ui * gram[i][j] * vj) as u64;
        }
    }
    (s % r as u64) as u32
}

/// `Q(v) = sum v_i Q(e_i) + sum_{i<j} v_i v_j B(e_i,e_j)` over F_2.
pub fn quadratic_value(gram: &[Vec<u32>], qdiag: &[u32], v: &[u32]) -> u32 {
    let n = v.len();
    let mut s = 0;
    for i in 0..n {
        if v[i] & 1 == 0 {
            continue;
        }
        s += qdiag[i];
        for j in i + 1..n {
            s += (v[j] & 1) * gram[i][j];
        }
    }
    s & 1
}

/// Arf invariant of a nondegenerate quadratic form on F_2^{2m}, decided by
/// counting zeros: `2^{2m-1} + 2^{m-1}` for invariant 0.
pub fn arf_invariant(gram: &[Vec<u32>], qdiag: &[u32]) -> u32 {
    let n = qdiag.len();
    let m = n / 2;
    let zeros = (0u32..1 << n)
        .filter(|&bits| {
            let v: Vec<u32> = (0..n).map(|i| (bits >> i) & 1).collect();
            quadratic_value(gram, qdiag, &v) == 0
        })
        .count();
    if zeros == (1 << (n - 1)) + (1 << (m - 1)) {
        0
    } else {
        1
    }
}

/// The form structure on the quotient, recovered from the matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientForm {
    pub r: u32,
    pub gram: Vec<Vec<u32>>,
    pub quadratic: Option<Vec<u32>>,
}

impl QuotientForm {
    pub fn arf(&self) -> Option<u32> {
        self.quadratic.as_ref().map(|q| arf_invariant(&self.gram, q))
    }
}

pub fn form_on_quotient(e: &ExtraspecialGroup) -> QuotientForm {
    let lifts = e.basis_lifts();
    let f = &e.field;
    let r = e.spec.r;
    let n = lifts.len();
    let log_omega = |c: u32| (0..r).find(|&k| f.pow(e.omega, k as u64) == c).expect("central commutator");
    let invs: Vec<FFMatrix> = lifts.iter().map(|g| g.inverse().expect("invertible")).collect();
    let mut gram = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = &(&(&lifts[i] * &lifts[j]) * &invs[i]) * &invs[j];
            assert!(c.is_scalar());
            gram[i][j] = log_omega(c.get(0, 0));
        }
    }
    let quadratic = if r == 2 && e.iota.is_none() {
        Some(
            lifts
                .iter()
                .map(|g| {
                    let s = g * g;
                    if s.is_identity() {
                        0
                    } else {
                        1
                    }
                })
                .collect(),
        )
    } else {
        None
    };
    QuotientForm { r, gram, quadratic }
}

/// Basis of `{M : M rho1(g) = rho2(g) M for all g}`.
pub fn intertwiner_space(rho1: &[FFMatrix], rho2: &[FFMatrix]) -> Vec<FFMatrix> {
    assert_eq!(rho1.len(), rho2.len());
    assert!(!rho1.is_empty());
    let field = rho1[0].field().clone();
    let n = rho1[0].rows();
    let nn = n * n;
    let mut rows: Vec<u32> = Vec::with_capacity(rho1.len() * nn * nn);
    for (a, b) in rho1.iter().zip(rho2) {
        // (M A - B M)_{ij} = sum_t M_{it} A_{tj} - sum_t B_{it} M_{tj}
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0u32; nn];
                for t in 0..n {
                    let idx = i * n + t;
                    row[idx] = field.add(row[idx], a.get(t, j));
                    let idx = t * n + j;
                    row[idx] = field.sub(row[idx], b.get(i, t));
                }
                rows.extend(row);
            }
        }
    }
    let sys = FFMatrix::from_data(&field, rows.len() / nn, nn, rows);
    sys.kernel().into_iter().map(|v| FFMatrix::from_data(&field, n, n, v)).collect()
}

/// An intertwiner from `rho1` to `rho2`, invertible when one exists in the
/// basis of solutions (always the case for absolutely irreducible inputs).
pub fn intertwiner(rho1: &[FFMatrix], rho2: &[FFMatrix]) -> Option<FFMatrix> {
    let space = intertwiner_space(rho1, rho2);
    space.iter().find(|m| m.is_invertible()).cloned().or_else(|| space.into_iter().next())
}

#[derive(Serialize, Deserialize)]
struct ExtraspecialJson {
    spec: ExtraspecialSpec,
    generators: Vec<FFMatrix>,
}

impl Serialize for ExtraspecialGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExtraspecialJson { spec: self.spec.clone(), generators: self.generators() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtraspecialGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ExtraspecialJson::deserialize(d)?;
        let g = build_extraspecial(&j.spec).map_err(serde::de::Error::custom)?;
        if g.generators() != j.generators {
            return Err(serde::de::Error::custom("generators do not match the standard model"));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::{center, order_histogram, Subgroup};
    use crate::group::FiniteGroup;

    #[test]
    fn odd_three_over_seven() {
        let spec = ExtraspecialSpec::new(3, 1, EType::OddExponent, 7, 1).unwrap();
        let e = build_extraspecial(&spec).unwrap();
        assert_eq!(e.omega(), 2);
        let x = &e.basis_lifts()[0];
        let z = &e.basis_lifts()[1];
        assert_eq!(z.to_rows(), vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]]);
        let c = &(&(x * z) * &x.inverse().unwrap()) * &z.inverse().unwrap();
        assert_eq!(c, FFMatrix::scalar(e.field(), 3, 2));
        let g = e.enumerate().unwrap();
        assert_eq!(g.order(), 27);
        let hist = order_histogram(&g, &Subgroup::whole(&g));
        assert_eq!(hist, vec![(1, 1), (3, 26)]);
    }

    #[test]
    fn dihedral_and_quaternion() {
        let plus = build_extraspecial(&ExtraspecialSpec::new(2, 1, EType::Plus, 3, 1).unwrap()).unwrap();
        let g = plus.enumerate().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(order_histogram(&g, &Subgroup::whole(&g)), vec![(1, 1), (2, 5), (4, 2)]);
        let minus = build_extraspecial(&ExtraspecialSpec::new(2, 1, EType::Minus, 3, 1).unwrap()).unwrap();
        assert_eq!(minus.basis_lifts()[1].to_rows(), vec![vec![1, 1], vec![1, 2]]);
        let q = minus.enumerate().unwrap();
        assert_eq!(order_histogram(&q, &Subgroup::whole(&q)), vec![(1, 1), (2, 1), (4, 6)]);
        let s = build_extraspecial(&ExtraspecialSpec::new(2, 1, EType::SymplecticType, 5, 1).unwrap()).unwrap();
        let sg = s.enumerate().unwrap();
        assert_eq!(sg.order(), 16);
        assert_eq!(center(&sg, &Subgroup::whole(&sg)).order(), 4);
    }

    #[test]
    fn forms_and_arf() {
        for (t, arf) in [(EType::Plus, 0), (EType::Minus, 1)] {
            let e = build_extraspecial(&ExtraspecialSpec::new(2, 2, t, 3, 1).unwrap()).unwrap();
            let f = form_on_quotient(&e);
            assert_eq!(f.gram, e.gram());
            assert_eq!(f.quadratic, e.quadratic_on_basis());
            assert_eq!(f.arf(), Some(arf));
            assert_eq!(e.enumerate().unwrap().order(), 32);
        }
        let e = build_extraspecial(&ExtraspecialSpec::new(3, 1, EType::OddExponent, 7, 1).unwrap()).unwrap();
        let f = form_on_quotient(&e);
        assert_eq!(f.gram, vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(f.quadratic, None);
    }

    #[test]
    fn invalid_specs() {
        assert!(ExtraspecialSpec::new(2, 1, EType::SymplecticType, 3, 1).is_err());
        assert!(ExtraspecialSpec::new(3, 1, EType::OddExponent, 5, 1).is_err());
        assert!(ExtraspecialSpec::new(3, 1, EType::Plus, 7, 1).is_err());
        assert!(ExtraspecialSpec::new(3, 1, EType::OddExponent, 5, 2).is_ok());
    }

    #[test]
    fn intertwiners() {
        let e = build_extraspecial(&ExtraspecialSpec::new(3, 1, EType::OddExponent, 7, 1).unwrap()).unwrap();
        let gens = e.basis_lifts();
        let space = intertwiner_space(&gens, &gens);
        assert_eq!(space.len(), 1);
        assert!(space[0].is_scalar());
        // X -> Z, Z -> X^-1 preserves the commutator.
        let twisted = vec![gens[1].clone(), gens[0].inverse().unwrap()];
        let m = intertwiner(&gens, &twisted).unwrap();
        assert!(m.is_invertible());
        assert_eq!(&m * &gens[0], &gens[1] * &m);
        // X -> Z alone breaks the relation: no intertwiner.
        let broken = vec![gens[1].clone(), gens[1].clone()];
        assert!(intertwiner_space(&gens, &broken).is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let e = build_extraspecial(&ExtraspecialSpec::new(2, 2, EType::Minus, 5, 1).unwrap()).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        let back: ExtraspecialGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back.generators(), e.generators());
    }
}
