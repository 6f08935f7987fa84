//! Module predicates for matrix groups over GF(p): irreducibility by a
//! randomised Meataxe with Norton's test, homogeneity by counting
//! homomorphisms from one irreducible submodule, quasi-primitivity, and the
//! (e, a, b) profile read off the Fitting subgroup.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use crate::espec::EType;
use crate::gfp::{multiplicative_order_mod, poly, prime_divisors, FFMatrix, Field, Subspace};
use crate::group::finite::{center, centralizer, derived_subgroup, fitting_subgroup, normal_subgroups, Subgroup};
use crate::group::FiniteGroup;

/// Number of random algebra elements tried before the exhaustive fallback.
pub const MEATAXE_BUDGET: usize = 32;

#[derive(Debug, Clone)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

fn seed_for(gens: &[FFMatrix], seed: u64) -> u64 {
    let mut h = FxHasher::default();
    seed.hash(&mut h);
    for g in gens {
        g.data().hash(&mut h);
    }
    h.finish()
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Irreducible factors usable for Norton's test: whole pieces that are
/// irreducible, and the linear factors of the degree-1 piece.
fn candidate_factors(cp: &[u32], p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (k, piece) in poly::distinct_degree_pieces(cp, p) {
        if k == 1 {
            for r in poly::roots(&piece, p) {
                out.push(vec![(p - r) % p, 1]);
            }
        } else if poly::degree(&piece) == Some(k) {
            out.push(piece);
        }
    }
    out.sort_by_key(|h| h.len());
    out
}

pub fn is_irreducible(gens: &[FFMatrix], d: usize, seed: u64) -> Irreducibility {
    let field = match gens.first() {
        Some(g) => g.field().clone(),
        None => {
            return if d <= 1 {
                Irreducibility::Irreducible
            } else {
                Irreducibility::Reducible(Subspace::from_vectors(&Field::prime(2).unwrap(), d, &[unit(d, 0)]))
            }
        }
    };
    irreducible_over(&field, gens, d, seed)
}

fn irreducible_over(field: &Arc<Field>, gens: &[FFMatrix], d: usize, seed: u64) -> Irreducibility {
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    if gens.iter().all(|g| g.is_scalar()) {
        return Irreducibility::Reducible(Subspace::from_vectors(field, d, &[unit(d, 0)]));
    }
    let p = field.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(gens, seed));
    let mut words: Vec<FFMatrix> = gens.to_vec();
    let transposed: Vec<FFMatrix> = gens.iter().map(|g| g.transpose()).collect();
    for _ in 0..MEATAXE_BUDGET {
        let i = rng.gen_range(0..words.len());
        let j = rng.gen_range(0..words.len());
        let w = &words[i] * &words[j];
        words.push(w);
        let mut a = FFMatrix::zero(field, d, d);
        for _ in 0..3 {
            let k = rng.gen_range(0..words.len());
            a = a.add(&words[k].scale(rng.gen_range(1..p.max(2))));
        }
        let cp = a.charpoly();
        for h in candidate_factors(&cp, p) {
            let deg = h.len() - 1;
            let ha = a.eval_poly(&h);
            let ker = ha.kernel();
            if ker.len() != deg {
                continue;
            }
            let s = Subspace::spin(field, d, &ker[..1], gens);
            if s.dim() < d {
                return Irreducibility::Reducible(s);
            }
            let kt = ha.transpose().kernel();
            let st = Subspace::spin(field, d, &kt[..1], &transposed);
            if st.dim() < d {
                return Irreducibility::Reducible(st.annihilator());
            }
            return Irreducibility::Irreducible;
        }
    }
    exhaustive_irreducibility(field, gens, d)
}

/// Spins one vector from every line of the space.
fn exhaustive_irreducibility(field: &Arc<Field>, gens: &[FFMatrix], d: usize) -> Irreducibility {
    let p = field.p();
    for lead in 0..d {
        let free = d - lead - 1;
        for code in 0..(p as u64).pow(free as u32) {
            let mut v = vec![0u32; d];
            v[lead] = 1;
            let mut c = code;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (c % p as u64) as u32;
                c /= p as u64;
            }
            let s = Subspace::spin(field, d, &[v], gens);
            if s.dim() < d {
                return Irreducibility::Reducible(s);
            }
        }
    }
    Irreducibility::Irreducible
}

/// An irreducible submodule: its basis in V and the action on it.
#[derive(Debug, Clone)]
pub struct IrreducibleSubmodule {
    pub basis: Vec<Vec<u32>>,
    pub action: Vec<FFMatrix>,
}

/// Chops V down to an irreducible submodule.
pub fn irreducible_submodule(gens: &[FFMatrix], d: usize, seed: u64) -> IrreducibleSubmodule {
    let field = gens[0].field().clone();
    let mut basis: Vec<Vec<u32>> = (0..d).map(|i| unit(d, i)).collect();
    let mut action = gens.to_vec();
    loop {
        let k = basis.len();
        match irreducible_over(&field, &action, k, seed) {
            Irreducibility::Irreducible => return IrreducibleSubmodule { basis, action },
            Irreducibility::Reducible(s) => {
                let new_action = s.restrict(&action).expect("invariant subspace");
                // express the new basis in V coordinates
                basis = s
                    .basis()
                    .iter()
                    .map(|c| {
                        (0..d)
                            .map(|row| {
                                c.iter()
                                    .zip(&basis)
                                    .fold(0, |acc, (&ci, b)| field.add(acc, field.mul(ci, b[row])))
                            })
                            .collect()
                    })
                    .collect();
                action = new_action;
            }
        }
    }
}

/// Dimension of `{X (n×k) : X A_g = B_g X}` for actions A on k-space and
/// B on n-space.
pub fn hom_dimension(a: &[FFMatrix], b: &[FFMatrix]) -> usize {
    let field = a[0].field().clone();
    let k = a[0].rows();
    let n = b[0].rows();
    let unknowns = n * k;
    let mut rows: Vec<u32> = Vec::new();
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..k {
                let mut row = vec![0u32; unknowns];
                for t in 0..k {
                    let idx = i * k + t;
                    row[idx] = field.add(row[idx], ag.get(t, j));
                }
                for t in 0..n {
                    let idx = t * k + j;
                    row[idx] = field.sub(row[idx], bg.get(i, t));
                }
                rows.extend(row);
            }
        }
    }
    let m = FFMatrix::from_data(&field, rows.len() / unknowns, unknowns, rows);
    unknowns - m.rank()
}

/// V is a sum of copies of one irreducible module.
pub fn is_homogeneous(gens: &[FFMatrix], d: usize, seed: u64) -> bool {
    if gens.is_empty() || gens.iter().all(|g| g.is_scalar()) {
        return true;
    }
    let w = irreducible_submodule(gens, d, seed);
    let wd = w.basis.len();
    if wd == d {
        return true;
    }
    let hom = hom_dimension(&w.action, gens);
    let end = hom_dimension(&w.action, &w.action);
    hom * wd == end * d
}

#[derive(Debug, Clone)]
pub enum QuasiPrimitivity {
    QuasiPrimitive,
    Reducible(Subspace),
    /// Index of a normal subgroup acting inhomogeneously.
    Inhomogeneous(usize),
}

impl QuasiPrimitivity {
    pub fn holds(&self) -> bool {
        matches!(self, QuasiPrimitivity::QuasiPrimitive)
    }
}

/// `normal_gens` lists generators of every normal subgroup to be checked.
pub fn is_quasiprimitive(
    gens: &[FFMatrix],
    normal_gens: &[Vec<FFMatrix>],
    d: usize,
    seed: u64,
) -> QuasiPrimitivity {
    if let Irreducibility::Reducible(w) = is_irreducible(gens, d, seed) {
        return QuasiPrimitivity::Reducible(w);
    }
    for (i, ng) in normal_gens.iter().enumerate() {
        if !is_homogeneous(ng, d, seed) {
            return QuasiPrimitivity::Inhomogeneous(i);
        }
    }
    QuasiPrimitivity::QuasiPrimitive
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub e: u32,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub u: u64,
    pub etype: Option<EType>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("profile outside catalogue: {0}")]
pub struct ProfileError(pub String);

fn isqrt(n: u64) -> Option<u64> {
    let s = (n as f64).sqrt().round() as u64;
    (s.saturating_sub(1)..=s + 1).find(|&x| x * x == n)
}

fn largest_cyclic_normal<G: FiniteGroup + ?Sized>(g: &G, normals: &[Subgroup]) -> Subgroup {
    normals
        .iter()
        .filter(|n| n.elements().iter().any(|&x| g.element_order(x) == n.order() as u64))
        .max_by_key(|n| n.order())
        .cloned()
        .unwrap_or_else(|| Subgroup::trivial(g))
}

/// True when the largest cyclic normal subgroup `U` of `h` is the Fitting
/// subgroup of `C_h(U)`: then `h` lies in a semilinear group and has no
/// extraspecial part.
pub fn is_semilinear<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, normals: &[Subgroup]) -> bool {
    let u = largest_cyclic_normal(g, normals);
    let a = centralizer(g, h, &u);
    let a_normals = normal_subgroups(g, &a);
    fitting_subgroup(g, &a, &a_normals).order() == u.order()
}

/// Reads `(e, r, a, b, |U|, type)` off the structure of `h`: `U` is the
/// largest cyclic normal subgroup, `A = C_h(U)`, `F = F(A)` and
/// `e^2 = |F/Z(F)|`. `normals` must be the normal subgroups of `h`.
pub fn invariant_profile<G: FiniteGroup + ?Sized>(
    g: &G,
    h: &Subgroup,
    normals: &[Subgroup],
    p: u32,
    d: u32,
) -> Result<InvariantProfile, ProfileError> {
    let is_cyclic = |n: &Subgroup| n.elements().iter().any(|&x| g.element_order(x) == n.order() as u64);
    let u0 = largest_cyclic_normal(g, normals);
    let a_part = centralizer(g, h, &u0);
    let a_normals = normal_subgroups(g, &a_part);
    let f = fitting_subgroup(g, &a_part, &a_normals);
    let u = center(g, &f);
    if !is_cyclic(&u) {
        return Err(ProfileError(format!("Z(F) of order {} is not cyclic", u.order())));
    }
    let ratio = (f.order() / u.order()) as u64;
    let e = isqrt(ratio).ok_or_else(|| ProfileError(format!("|F/Z(F)| = {ratio} is not a square")))?;
    let primes = prime_divisors(e);
    if primes.len() != 1 {
        return Err(ProfileError(format!("e = {e} is not a prime power")));
    }
    let r = primes[0] as u32;
    let un = u.order() as u64;
    let a = if un > 1 { multiplicative_order_mod(p as u64, un).unwrap_or(0) } else { 1 } as u32;
    if a == 0 || d as u64 % (e * a as u64) != 0 {
        return Err(ProfileError(format!("e·a = {}·{} does not divide d = {d}", e, a)));
    }
    let b = d / (e as u32 * a);
    let etype = if r != 2 { Some(EType::OddExponent) } else { two_type(g, &f) };
    Ok(InvariantProfile { e: e as u32, r, a, b, u: un, etype })
}

/// Type of the Sylow 2-subgroup `P` of the nilpotent group `f`: cyclic
/// centre of order >= 4 gives the symplectic type; otherwise `P` is
/// extraspecial, told apart by the number of solutions of `x^2 = 1`.
fn two_type<G: FiniteGroup + ?Sized>(g: &G, f: &Subgroup) -> Option<EType> {
    let els: Vec<u32> = f.elements().iter().copied().filter(|&x| g.element_order(x).is_power_of_two()).collect();
    let o2 = Subgroup::from_elements(g, els);
    let z = center(g, &o2);
    let zn = z.order() as u64;
    if zn >= 4 {
        let cyclic = z.elements().iter().any(|&x| g.element_order(x) == zn);
        return cyclic.then_some(EType::SymplecticType);
    }
    if zn != 2 {
        return None;
    }
    let n = o2.order() as u64;
    let two_m = n.trailing_zeros().checked_sub(1)?;
    if n != 1 << (two_m + 1) || two_m % 2 != 0 || two_m == 0 {
        return None;
    }
    let m = two_m / 2;
    let e = g.identity();
    let sq = o2.elements().iter().filter(|&&x| g.mul(x, x) == e).count() as u64;
    let plus = 2 * ((1u64 << (2 * m - 1)) + (1u64 << (m - 1)));
    let minus = 2 * ((1u64 << (2 * m - 1)) - (1u64 << (m - 1)));
    if sq == plus {
        Some(EType::Plus)
    } else if sq == minus {
        Some(EType::Minus)
    } else {
        None
    }
}

/// A normal subgroup `K` of `h` that is extraspecial of order `r^(1+2m)`,
/// or for `r = 2` a central product of one with `C4`, with `e = r^m`.
/// `u` is the order of the largest cyclic normal subgroup of `h`
/// centralizing `K` and `a` the multiplicative order of `p` modulo `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalCore {
    pub etype: EType,
    pub e: u32,
    pub order: usize,
    pub u: u64,
    pub a: u32,
    /// Position of `K` in the list of normal subgroups.
    pub normal: usize,
}

fn power<G: FiniteGroup + ?Sized>(g: &G, x: u32, n: u32) -> u32 {
    (0..n).fold(g.identity(), |acc, _| g.mul(acc, x))
}

fn core_shape<G: FiniteGroup + ?Sized>(g: &G, k: &Subgroup, r: u32) -> Option<(EType, u32)> {
    let n = k.order() as u64;
    let r64 = r as u64;
    if n < r64.pow(3) || prime_divisors(n) != [r64] {
        return None;
    }
    let z = center(g, k);
    let zn = z.order() as u64;
    let symplectic = r == 2 && zn == 4;
    if zn != r64 && !symplectic {
        return None;
    }
    if symplectic && !z.elements().iter().any(|&x| g.element_order(x) == 4) {
        return None;
    }
    let derived = derived_subgroup(g, k);
    if derived.order() as u64 != r64 || !derived.elements().iter().all(|&x| z.contains(x)) {
        return None;
    }
    if !k.elements().iter().all(|&x| z.contains(power(g, x, r))) {
        return None;
    }
    let e = isqrt(n / zn)?;
    let etype = if symplectic {
        EType::SymplecticType
    } else if r != 2 {
        if !k.elements().iter().all(|&x| power(g, x, r) == g.identity()) {
            return None;
        }
        EType::OddExponent
    } else {
        let sq = k.elements().iter().filter(|&&x| g.mul(x, x) == g.identity()).count() as u64;
        if sq == e * e + e {
            EType::Plus
        } else if sq == e * e - e {
            EType::Minus
        } else {
            return None;
        }
    };
    Some((etype, e as u32))
}

/// The extraspecial and symplectic-type `r`-groups among `normals`, which
/// must be all the normal subgroups of one group.
pub fn normal_cores<G: FiniteGroup + ?Sized>(g: &G, normals: &[Subgroup], r: u32, p: u32) -> Vec<NormalCore> {
    let cyclic: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| n.elements().iter().any(|&x| g.element_order(x) == n.order() as u64))
        .collect();
    let mut out = Vec::new();
    for (i, k) in normals.iter().enumerate() {
        let Some((etype, e)) = core_shape(g, k, r) else { continue };
        let u = cyclic
            .iter()
            .filter(|c| c.gens().iter().all(|&x| k.gens().iter().all(|&y| g.mul(x, y) == g.mul(y, x))))
            .map(|c| c.order() as u64)
            .max()
            .unwrap_or(1);
        let a = if u > 2 { multiplicative_order_mod(p as u64, u).unwrap_or(0) as u32 } else { 1 };
        out.push(NormalCore { etype, e, order: k.order(), u, a, normal: i });
    }
    out
}
