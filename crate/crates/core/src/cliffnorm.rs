//! Normalizers of extraspecial and symplectic-type groups in GL(d, p),
//! assembled layer by layer: scalars, the core, lifted form-group
//! elements (intertwiners), the centralizer GL(b, q) on a tensor factor,
//! and a Frobenius layer corrected by an intertwiner.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::catalogue::RowParams;
use crate::espec::{
    build_extraspecial, intertwiner, quadratic_value, form_value, EType, EspecError, ExtraspecialGroup,
    ExtraspecialSpec,
};
use crate::gfp::{frobenius_map, FFMatrix, Field};
use crate::group::finite::{extend, Subgroup};
use crate::group::{enumerate, EnumeratedGroup, FiniteGroup, GMat, GroupError, MatSpace};

#[derive(Debug, Error)]
pub enum CliffError {
    #[error("out of desk scope: {0}")]
    OutOfScope(String),
    #[error("invalid form-group element: {0}")]
    InvalidFormElement(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Espec(#[from] EspecError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Limits that decide whether a row is attempted at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_group_order: usize,
    pub max_quotient: usize,
    pub max_space: u64,
    /// Allow e = 9 and e = 16.
    pub stretch: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_group_order: 2_000_000, max_quotient: 100_000, max_space: 30_000_000, stretch: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Sp,
    GOPlus,
    GOMinus,
}

impl FormKind {
    pub fn for_type(etype: EType) -> Self {
        match etype {
            EType::OddExponent | EType::SymplecticType => FormKind::Sp,
            EType::Plus => FormKind::GOPlus,
            EType::Minus => FormKind::GOMinus,
        }
    }
}

/// Order of Sp(2m, r) or GO^±(2m, 2).
pub fn classical_order(kind: FormKind, m: u32, r: u32) -> u128 {
    let r = r as u128;
    match kind {
        FormKind::Sp => r.pow(m * m) * (1..=m).map(|i| r.pow(2 * i) - 1).product::<u128>(),
        FormKind::GOPlus | FormKind::GOMinus => {
            assert_eq!(r, 2);
            let eps: i128 = if kind == FormKind::GOPlus { 1 } else { -1 };
            let mid = (2i128.pow(m) - eps) as u128;
            2 * 2u128.pow(m * (m - 1)) * mid * (1..m).map(|i| 4u128.pow(i) - 1).product::<u128>()
        }
    }
}

pub fn gl_order(b: u32, q: u64) -> u128 {
    let q = q as u128;
    (0..b).map(|i| q.pow(b) - q.pow(i)).product()
}

/// The standard alternating Gram matrix `[[0, I], [-I, 0]]` over F_r.
pub fn standard_gram(m: usize, r: u32) -> Vec<Vec<u32>> {
    let mut g = vec![vec![0; 2 * m]; 2 * m];
    for i in 0..m {
        g[i][m + i] = 1;
        g[m + i][i] = r - 1;
    }
    g
}

/// All distinct symplectic transvections `x -> x + B(x,v) v`.
pub fn symplectic_transvections(m: usize, r: u32) -> Vec<FFMatrix> {
    let fr = Field::prime(r).expect("prime");
    let n = 2 * m;
    let gram = standard_gram(m, r);
    let mut out: Vec<FFMatrix> = Vec::new();
    for code in 1..(r as u64).pow(n as u32) {
        let mut c = code;
        let v: Vec<u32> = (0..n)
            .map(|_| {
                let d = (c % r as u64) as u32;
                c /= r as u64;
                d
            })
            .collect();
        // B(x, v) = x^T G v, so column j of t_v is e_j + (G v)_j v
        let gv: Vec<u32> = (0..n).map(|i| (0..n).map(|j| gram[i][j] * v[j]).sum::<u32>() % r).collect();
        let mut t = FFMatrix::identity(&fr, n);
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, (t.get(i, j) + v[i] * gv[j]) % r);
            }
        }
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormGroup {
    pub kind: FormKind,
    pub m: u32,
    pub r: u32,
    pub generators: Vec<FFMatrix>,
    pub order: u64,
}

fn preserves_forms(s: &FFMatrix, gram: &[Vec<u32>], qdiag: Option<&[u32]>, r: u32) -> bool {
    let n = s.rows();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| s.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            if form_value(gram, &cols[i], &cols[j], r) != gram[i][j] {
                return false;
            }
        }
    }
    match qdiag {
        Some(q) => (0..n).all(|i| quadratic_value(gram, q, &cols[i]) == q[i]),
        None => true,
    }
}

fn quadratic_diag(kind: FormKind, m: usize) -> Option<Vec<u32>> {
    match kind {
        FormKind::Sp => None,
        FormKind::GOPlus => Some(vec![0; 2 * m]),
        FormKind::GOMinus => {
            let mut q = vec![0; 2 * m];
            q[0] = 1;
            q[m] = 1;
            Some(q)
        }
    }
}

/// Keeps candidates (in order) that enlarge the subgroup generated so far.
fn greedy_generators(g: &EnumeratedGroup, candidates: &[u32], target: usize) -> Vec<u32> {
    let mut sub = Subgroup::trivial(g);
    let mut kept = Vec::new();
    for &c in candidates {
        if sub.order() == target {
            break;
        }
        if !sub.contains(c) {
            sub = extend(g, &sub, c);
            kept.push(c);
        }
    }
    kept
}

pub fn build_form_group(kind: FormKind, m: u32, r: u32) -> Result<FormGroup, CliffError> {
    let n = 2 * m as usize;
    let space = MatSpace::new(r, n);
    let fr = Field::prime(r).expect("prime");
    let sp_order = classical_order(FormKind::Sp, m, r);
    if sp_order > 4_000_000 {
        return Err(CliffError::OutOfScope(format!("Sp({n},{r}) has order {sp_order}")));
    }
    let trans: Vec<GMat> = symplectic_transvections(m as usize, r).iter().map(|t| space.from_ff(t)).collect();
    let sp = enumerate(space, &trans, sp_order as usize + 1)?;
    if sp.order() as u128 != sp_order {
        return Err(CliffError::Inconsistent(format!("Sp({n},{r}) enumerated to {}", sp.order())));
    }
    let (members, expected): (Vec<u32>, u128) = match kind {
        FormKind::Sp => (trans.iter().map(|t| sp.index_of(t).unwrap()).collect(), sp_order),
        _ => {
            let gram = standard_gram(m as usize, r);
            let q = quadratic_diag(kind, m as usize).unwrap();
            let keep: Vec<u32> = (0..sp.order() as u32)
                .filter(|&i| preserves_forms(&space.to_ff_in(sp.element(i), &fr), &gram, Some(&q), r))
                .collect();
            if keep.len() as u128 != classical_order(kind, m, r) {
                return Err(CliffError::Inconsistent(format!("{kind:?}({n},2) filtered to {}", keep.len())));
            }
            // high-order elements first
            let mut cand = keep.clone();
            cand.sort_by_key(|&i| std::cmp::Reverse(sp.element_order(i)));
            let expected = keep.len() as u128;
            (cand, expected)
        }
    };
    let gens = greedy_generators(&sp, &members, expected as usize);
    let generators: Vec<FFMatrix> = gens.iter().map(|&i| space.to_ff_in(sp.element(i), &fr)).collect();
    let check = enumerate(space, &gens.iter().map(|&i| sp.element(i).clone()).collect::<Vec<_>>(), expected as usize + 1)?;
    if check.order() as u128 != expected {
        return Err(CliffError::Inconsistent(format!("{kind:?} generators give {}", check.order())));
    }
    Ok(FormGroup { kind, m, r, generators, order: expected as u64 })
}

fn square_class(g: &FFMatrix) -> bool {
    (g * g).is_identity()
}

/// An intertwiner `M` with `M g M^-1` the chosen preimage of `s(g)` on each
/// basis lift `g`.
pub fn lift_form_element(e: &ExtraspecialGroup, s: &FFMatrix) -> Result<FFMatrix, CliffError> {
    let r = e.spec().r;
    let m = e.m();
    let basis = e.basis_lifts();
    let field = e.field().clone();
    let mut targets = Vec::with_capacity(2 * m);
    for k in 0..2 * m {
        let mut l = e.lift(&s.column(k));
        if r == 2 && square_class(&l) != square_class(&basis[k]) {
            match e.iota() {
                Some(i) => l = l.scale(i),
                None => return Err(CliffError::InvalidFormElement("does not preserve the quadratic form".into())),
            }
        }
        if r != 2 && !l.pow(r as u64).is_identity() {
            return Err(CliffError::InvalidFormElement("image of order other than r".into()));
        }
        targets.push(l);
    }
    for i in 0..2 * m {
        for j in i + 1..2 * m {
            let c1 = commutator(&basis[i], &basis[j]);
            let c2 = commutator(&targets[i], &targets[j]);
            if c1 != c2 {
                return Err(CliffError::InvalidFormElement(format!("commutator of generators {i},{j} not preserved")));
            }
        }
    }
    let mat = intertwiner(&basis, &targets)
        .filter(|x| x.is_invertible())
        .ok_or_else(|| CliffError::InvalidFormElement("no invertible intertwiner".into()))?;
    let _ = field;
    Ok(mat)
}

fn commutator(a: &FFMatrix, b: &FFMatrix) -> FFMatrix {
    &(&(a * b) * &a.inverse().unwrap()) * &b.inverse().unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    Scalar,
    Core,
    FormLift,
    Centralizer,
    Galois,
}

/// Generators of the normalizer over GF(q) in dimension e.
pub fn assemble_inner_normalizer(
    e: &ExtraspecialGroup,
    form: &FormGroup,
) -> Result<Vec<(FFMatrix, Layer)>, CliffError> {
    let f = e.field();
    let mut out = vec![(FFMatrix::scalar(f, e.dim(), f.primitive_element()), Layer::Scalar)];
    out.extend(e.generators().into_iter().map(|g| (g, Layer::Core)));
    for s in &form.generators {
        out.push((lift_form_element(e, s)?, Layer::FormLift));
    }
    Ok(out)
}

/// Generators of GL(b, q): a primitive diagonal, one elementary
/// transvection, a transposition and a b-cycle.
pub fn general_linear_generators(field: &Arc<Field>, b: usize) -> Vec<FFMatrix> {
    let mut out = Vec::new();
    let mut d = FFMatrix::identity(field, b);
    d.set(0, 0, field.primitive_element());
    out.push(d);
    if b > 1 {
        let mut t = FFMatrix::identity(field, b);
        t.set(0, 1, 1);
        out.push(t);
        let mut sw = FFMatrix::zero(field, b, b);
        for i in 0..b {
            let j = match i {
                0 => 1,
                1 => 0,
                k => k,
            };
            sw.set(i, j, 1);
        }
        out.push(sw);
        if b > 2 {
            let mut cyc = FFMatrix::zero(field, b, b);
            for i in 0..b {
                cyc.set((i + 1) % b, i, 1);
            }
            out.push(cyc);
        }
    }
    out.retain(|g| !g.is_identity());
    out
}

pub fn assemble_tensor_layer(
    inner: &[(FFMatrix, Layer)],
    field: &Arc<Field>,
    e: usize,
    b: usize,
) -> Vec<(FFMatrix, Layer)> {
    if b == 1 {
        return inner.to_vec();
    }
    let ib = FFMatrix::identity(field, b);
    let ie = FFMatrix::identity(field, e);
    let mut out: Vec<(FFMatrix, Layer)> = inner.iter().map(|(g, l)| (g.kron(&ib), *l)).collect();
    out.extend(general_linear_generators(field, b).into_iter().map(|h| (ie.kron(&h), Layer::Centralizer)));
    out
}

/// A prime-field element acting as the Frobenius power `x -> x^{p^j}`,
/// corrected to normalize the core, for the least `j | a` that works.
pub fn assemble_galois_layer(e: &ExtraspecialGroup, b: usize) -> Result<Option<(FFMatrix, u32)>, CliffError> {
    let field = e.field();
    let a = field.a();
    if a == 1 {
        return Ok(None);
    }
    let p = field.p();
    let r = e.spec().r;
    let basis = e.basis_lifts();
    let m = e.m();
    for j in (1..a).filter(|j| a % j == 0) {
        let pj = (p as u64).pow(j);
        let twisted: Vec<FFMatrix> = basis
            .iter()
            .map(|g| {
                let mut h = g.clone();
                for _ in 0..j {
                    h = h.frobenius_entries();
                }
                h
            })
            .collect();
        // Targets: the centre is raised to the p^j-th power, so scale the
        // z-part of the odd model by that power.
        let targets: Vec<FFMatrix> = if r == 2 {
            basis.clone()
        } else {
            let k = pj % r as u64;
            basis.iter().enumerate().map(|(i, g)| if i >= m { g.pow(k) } else { g.clone() }).collect()
        };
        if let Some(c) = intertwiner(&twisted, &targets).filter(|c| c.is_invertible()) {
            let full = c.kron(&FFMatrix::identity(field, b));
            let phi = frobenius_map(field, e.dim() * b);
            let g = &full.blow_up() * &phi.pow(j as u64);
            return Ok(Some((g, a / j)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct TaggedGenerator {
    pub matrix: GMat,
    pub layer: Layer,
}

/// Generators of `N = N_GL(d,p)(core)` with their provenance.
#[derive(Debug, Clone)]
pub struct NormalizerAssembly {
    pub row: RowParams,
    pub etype: EType,
    pub espec: ExtraspecialGroup,
    pub form: FormGroup,
    pub space: MatSpace,
    pub generators: Vec<TaggedGenerator>,
    pub core_generators: Vec<GMat>,
    /// The primitive field scalar, blown up: its centralizer is the
    /// GF(q)-linear part.
    pub field_scalar: GMat,
    pub predicted_linear_order: u128,
    pub predicted_order: u128,
    pub galois_degree: u32,
}

/// Predicted |N ∩ GL(d/a, q)| and |N|, from the structure formulas.
pub fn predicted_orders(row: &RowParams, etype: EType) -> (u128, u128) {
    let (r, m, q) = (row.r(), row.m(), row.q());
    let inner = (q as u128 - 1) * (r as u128).pow(2 * m) * classical_order(FormKind::for_type(etype), m, r);
    let linear = inner * gl_order(row.b, q) / (q as u128 - 1);
    (linear, linear * row.a as u128)
}

pub fn core_order(row: &RowParams, etype: EType) -> u128 {
    let base = (row.r() as u128).pow(2 * row.m() + 1);
    if etype == EType::SymplecticType {
        2 * base
    } else {
        base
    }
}

/// Refuses rows beyond the configured bounds before any computation.
pub fn check_scope(row: &RowParams, etype: EType, bounds: &Bounds) -> Result<(), CliffError> {
    if (row.e == 9 || row.e == 16) && !bounds.stretch {
        return Err(CliffError::OutOfScope(format!("{}: e = {} needs the stretch flag", row.label(), row.e)));
    }
    match row.space_size() {
        Some(v) if v <= bounds.max_space => {}
        _ => {
            return Err(CliffError::OutOfScope(format!(
                "{}: |V| = {}^{} exceeds {}",
                row.label(),
                row.p,
                row.d,
                bounds.max_space
            )))
        }
    }
    if row.p >= 256 {
        return Err(CliffError::OutOfScope(format!("{}: p = {} too large", row.label(), row.p)));
    }
    let (_, n) = predicted_orders(row, etype);
    if n > bounds.max_group_order as u128 {
        return Err(CliffError::OutOfScope(format!(
            "{}: |N| = {} exceeds {}",
            row.label(),
            n,
            bounds.max_group_order
        )));
    }
    let quot = n / core_order(row, etype);
    if quot > bounds.max_quotient as u128 {
        return Err(CliffError::OutOfScope(format!("{}: |N/core| = {} exceeds {}", row.label(), quot, bounds.max_quotient)));
    }
    Ok(())
}

pub fn assemble_full(row: &RowParams, etype: EType, bounds: &Bounds) -> Result<NormalizerAssembly, CliffError> {
    row.validate().map_err(|e| CliffError::OutOfScope(e.to_string()))?;
    check_scope(row, etype, bounds)?;
    let spec = ExtraspecialSpec::new(row.r(), row.m(), etype, row.p, row.a)?;
    let espec = build_extraspecial(&spec)?;
    let form = build_form_group(FormKind::for_type(etype), row.m(), row.r())?;
    let inner = assemble_inner_normalizer(&espec, &form)?;
    let field = espec.field().clone();
    let (e, b) = (row.e as usize, row.b as usize);
    let linear = assemble_tensor_layer(&inner, &field, e, b);
    let space = MatSpace::new(row.p, row.d as usize);
    let mut generators: Vec<TaggedGenerator> = linear
        .iter()
        .map(|(g, l)| TaggedGenerator { matrix: space.from_ff(&g.blow_up()), layer: *l })
        .collect();
    let (predicted_linear_order, mut predicted_order) = predicted_orders(row, etype);
    let mut galois_degree = 1;
    if let Some((g, deg)) = assemble_galois_layer(&espec, b)? {
        generators.push(TaggedGenerator { matrix: space.from_ff(&g), layer: Layer::Galois });
        galois_degree = deg;
    }
    predicted_order = predicted_order / row.a as u128 * galois_degree as u128;
    let ib = FFMatrix::identity(&field, b);
    let core_generators =
        espec.generators().iter().map(|g| space.from_ff(&g.kron(&ib).blow_up())).collect();
    let field_scalar = space.from_ff(&FFMatrix::scalar(&field, e * b, field.primitive_element()).blow_up());
    Ok(NormalizerAssembly {
        row: *row,
        etype,
        espec,
        form,
        space,
        generators,
        core_generators,
        field_scalar,
        predicted_linear_order,
        predicted_order,
        galois_degree,
    })
}

impl NormalizerAssembly {
    pub fn generator_matrices(&self) -> Vec<GMat> {
        self.generators.iter().map(|t| t.matrix.clone()).collect()
    }

    /// Enumerates N and checks the structure invariants: the predicted
    /// order, the order of the GF(q)-linear part, and normality of the core.
    pub fn enumerate(&self, bound: usize) -> Result<EnumeratedGroup, CliffError> {
        let n = enumerate(self.space, &self.generator_matrices(), bound)?;
        if n.order() as u128 != self.predicted_order {
            return Err(CliffError::Inconsistent(format!(
                "{} {}: |N| = {} but structure predicts {}",
                self.row.label(),
                self.etype.name(),
                n.order(),
                self.predicted_order
            )));
        }
        let lin = self.linear_part_order(&n);
        if lin as u128 != self.predicted_linear_order {
            return Err(CliffError::Inconsistent(format!(
                "{}: linear part has order {lin}, predicted {}",
                self.row.label(),
                self.predicted_linear_order
            )));
        }
        let cg: Vec<u32> = self
            .core_generators
            .iter()
            .map(|c| n.index_of(c).ok_or_else(|| CliffError::Inconsistent("core generator outside N".into())))
            .collect::<Result<_, _>>()?;
        let core = crate::group::finite::closure(&n, &cg);
        if core.order() as u128 != core_order(&self.row, self.etype) {
            return Err(CliffError::Inconsistent(format!("core has order {}", core.order())));
        }
        if !crate::group::finite::is_normal(&n, &Subgroup::whole(&n), &core) {
            return Err(CliffError::Inconsistent("core not normal".into()));
        }
        Ok(n)
    }

    /// Number of elements of N commuting with the field scalar.
    pub fn linear_part_order(&self, n: &EnumeratedGroup) -> usize {
        let z = &self.field_scalar;
        n.elements().iter().filter(|g| self.space.mul(g, z) == self.space.mul(z, g)).count()
    }

    pub fn to_json(&self, order: Option<usize>) -> serde_json::Value {
        json!({
            "row": self.row,
            "etype": self.etype,
            "p": self.space.p,
            "d": self.space.d,
            "generators": self.generators.iter().map(|t| json!({
                "layer": t.layer,
                "matrix": self.space.rows(&t.matrix),
            })).collect::<Vec<_>>(),
            "core_generators": self.core_generators.iter().map(|g| self.space.rows(g)).collect::<Vec<_>>(),
            "core_order": core_order(&self.row, self.etype) as u64,
            "predicted_order": self.predicted_order as u64,
            "predicted_linear_order": self.predicted_linear_order as u64,
            "galois_degree": self.galois_degree,
            "order": order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::row;

    #[test]
    fn form_group_orders() {
        let cases = [
            (FormKind::Sp, 1, 2, 6),
            (FormKind::Sp, 2, 2, 720),
            (FormKind::GOPlus, 2, 2, 72),
            (FormKind::GOMinus, 2, 2, 120),
            (FormKind::GOPlus, 1, 2, 2),
            (FormKind::GOMinus, 1, 2, 6),
            (FormKind::Sp, 1, 3, 24),
        ];
        for (kind, m, r, order) in cases {
            assert_eq!(classical_order(kind, m, r), order as u128);
            let f = build_form_group(kind, m, r).unwrap();
            assert_eq!(f.order, order, "{kind:?} {m} {r}");
        }
    }

    #[test]
    fn lifts_normalize_and_act_correctly() {
        let spec = ExtraspecialSpec::new(3, 1, EType::OddExponent, 7, 1).unwrap();
        let e = build_extraspecial(&spec).unwrap();
        let fr = Field::prime(3).unwrap();
        let ident = FFMatrix::identity(&fr, 2);
        assert!(lift_form_element(&e, &ident).unwrap().is_scalar());
        let swap = FFMatrix::from_ints(&fr, &[&[0, -1], &[1, 0]]);
        let mm = lift_form_element(&e, &swap).unwrap();
        let mi = mm.inverse().unwrap();
        let basis = e.basis_lifts();
        for (k, g) in basis.iter().enumerate() {
            let img = &(&mm * g) * &mi;
            assert_eq!(e.quotient_coords(&img).unwrap(), swap.column(k));
        }
        // Discrete Fourier shape: every entry nonzero.
        assert!(mm.data().iter().all(|&x| x != 0));
    }

    #[test]
    fn lift_composition_is_projective() {
        let e = build_extraspecial(&ExtraspecialSpec::new(2, 2, EType::Minus, 3, 1).unwrap()).unwrap();
        let form = build_form_group(FormKind::GOMinus, 2, 2).unwrap();
        let gens = &form.generators;
        for s in gens {
            for t in gens {
                let st = s * t;
                let (ms, mt, mst) = (
                    lift_form_element(&e, s).unwrap(),
                    lift_form_element(&e, t).unwrap(),
                    lift_form_element(&e, &st).unwrap(),
                );
                let c = &(&ms * &mt) * &mst.inverse().unwrap();
                // c induces the identity on the quotient, so it lies in Z0·E.
                for g in e.basis_lifts() {
                    let img = &(&c * &g) * &c.inverse().unwrap();
                    assert_eq!(e.quotient_coords(&img), e.quotient_coords(&g));
                }
            }
        }
    }

    #[test]
    fn predicted_orders_for_rows() {
        let cases = [(62, EType::Minus, 48), (62, EType::Plus, 16), (19, EType::Plus, 2304), (49, EType::OddExponent, 1296), (117, EType::Plus, 55296)];
        for (n, t, o) in cases {
            assert_eq!(predicted_orders(&row(n).unwrap(), t).1, o);
        }
        assert_eq!(predicted_orders(&row(48).unwrap(), EType::OddExponent).1, 1296);
        assert_eq!(predicted_orders(&row(65).unwrap(), EType::SymplecticType).1, 384);
    }

    #[test]
    fn refusals() {
        let b = Bounds::default();
        for n in [1, 3, 9, 10] {
            let r = row(n).unwrap();
            for t in r.assembly_types() {
                assert!(matches!(check_scope(&r, t, &b), Err(CliffError::OutOfScope(_))), "row {n}");
            }
        }
        assert!(check_scope(&row(62).unwrap(), EType::Minus, &b).is_ok());
    }

    #[test]
    fn small_assemblies() {
        let b = Bounds::default();
        let a = assemble_full(&row(62).unwrap(), EType::Minus, &b).unwrap();
        assert_eq!(a.enumerate(b.max_group_order).unwrap().order(), 48);
        let a = assemble_full(&row(49).unwrap(), EType::OddExponent, &b).unwrap();
        assert_eq!(a.enumerate(b.max_group_order).unwrap().order(), 1296);
        let a = assemble_full(&row(48).unwrap(), EType::OddExponent, &b).unwrap();
        assert_eq!(a.galois_degree, 2);
        assert_eq!(a.enumerate(b.max_group_order).unwrap().order(), 1296);
    }
}
