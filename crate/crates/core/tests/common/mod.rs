#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use regorb::catalogue::{all_rows, RowParams};
use regorb::classify::{build_cases, case_types, ClassifyConfig};
use regorb::cliffnorm::{assemble_full, check_scope, Bounds};
use regorb::espec::{build_extraspecial, form_on_quotient, EType, ExtraspecialSpec};
use regorb::gfp::{frobenius_map, poly, FFMatrix, Field, Subspace};
use regorb::group::finite::{permutation_group, FiniteGroup, TableGroup};
use regorb::group::{enumerate, subgroup_classes, MatSpace};
use regorb::modtests::{hom_dimension, is_homogeneous, is_irreducible};

pub const SEED: [u8; 32] = *b"regular-orbits-fixed-seed-000001";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

/// Rows whose normalizers fit the default bounds, with the core types searched.
pub fn in_scope_rows() -> Vec<(RowParams, Vec<EType>)> {
    let bounds = Bounds::default();
    all_rows()
        .into_iter()
        .filter(|row| row.assembly_types().iter().all(|&t| check_scope(row, t, &bounds).is_ok()))
        .map(|row| {
            let types = case_types(&row);
            (row, types)
        })
        .collect()
}

// ---------------------------------------------------------------- gfp

const FIELDS: [(u32, u32); 10] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)];

fn field(i: usize) -> Arc<Field> {
    let (p, a) = FIELDS[i % FIELDS.len()];
    Field::new(p, a).unwrap()
}

fn matrix(f: &Arc<Field>, rows: usize, cols: usize, raw: &[u32]) -> FFMatrix {
    let q = f.q();
    let data = (0..rows * cols).map(|i| raw[i % raw.len()] % q).collect();
    FFMatrix::from_data(f, rows, cols, data)
}

fn raw() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 16..=64)
}

pub fn gfp_field_laws() -> Result<(), String> {
    run("field laws", 256, (0..FIELDS.len(), any::<u32>(), any::<u32>(), any::<u32>()), |(i, x, y, z)| {
        let f = field(i);
        let q = f.q();
        let (x, y, z) = (x % q, y % q, z % q);
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), 0);
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.frobenius(x), f.pow(x, f.p() as u64));
        prop_assert_eq!(f.pow(x, q as u64), x);
        let mut s = x;
        for _ in 0..f.a() {
            s = f.frobenius(s);
        }
        prop_assert_eq!(s, x);
        Ok(())
    })
}

pub fn gfp_matrix_homomorphisms() -> Result<(), String> {
    run("matrix homomorphisms", 192, (0..FIELDS.len(), 1usize..=4, raw(), raw(), raw()), |(i, n, ra, rb, rc)| {
        let f = field(i);
        let a = matrix(&f, n, n, &ra);
        let b = matrix(&f, n, n, &rb);
        let c = matrix(&f, n, n, &rc);
        prop_assert_eq!(a.matmul(&b).matmul(&c), a.matmul(&b.matmul(&c)));
        prop_assert_eq!(a.matmul(&b.add(&c)), a.matmul(&b).add(&a.matmul(&c)));
        prop_assert_eq!(a.matmul(&b).blow_up(), a.blow_up().matmul(&b.blow_up()));
        prop_assert_eq!(a.add(&b).blow_up(), a.blow_up().add(&b.blow_up()));
        prop_assert_eq!(a.matmul(&b).frobenius_entries(), a.frobenius_entries().matmul(&b.frobenius_entries()));
        prop_assert_eq!(a.matmul(&b).transpose(), b.transpose().matmul(&a.transpose()));
        let fm = frobenius_map(&f, n);
        let fm_inv = fm.inverse().unwrap();
        prop_assert_eq!(fm.matmul(&a.blow_up()).matmul(&fm_inv), a.frobenius_entries().blow_up());
        let small = matrix(&f, 2, 2, &rc);
        prop_assert_eq!(
            a.kron(&small).matmul(&b.kron(&small)),
            a.matmul(&b).kron(&small.matmul(&small))
        );
        let cp = a.charpoly();
        prop_assert_eq!(cp.len(), n + 1);
        prop_assert!(a.eval_poly(&cp).is_zero());
        if let Some(inv) = a.inverse() {
            prop_assert!(a.matmul(&inv).is_identity());
            prop_assert!(inv.matmul(&a).is_identity());
            prop_assert_eq!(a.rank(), n);
        } else {
            prop_assert!(a.rank() < n);
        }
        Ok(())
    })
}

pub fn gfp_kernel_and_rank() -> Result<(), String> {
    run("kernel and rank", 256, (0..FIELDS.len(), 1usize..=5, 1usize..=5, raw()), |(i, rows, cols, ra)| {
        let f = field(i);
        let a = matrix(&f, rows, cols, &ra);
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(a.apply(v).iter().all(|&x| x == 0));
        }
        let span = Subspace::from_vectors(&f, cols, &kernel);
        prop_assert_eq!(span.dim(), kernel.len());
        prop_assert_eq!(a.transpose().rank(), a.rank());
        let row_space = Subspace::from_vectors(&f, cols, &a.to_rows());
        prop_assert_eq!(row_space.dim(), a.rank());
        for r in a.to_rows() {
            prop_assert!(row_space.contains(&r));
        }
        Ok(())
    })
}

pub fn gfp_polynomials() -> Result<(), String> {
    let primes = prop::sample::select(vec![2u32, 3, 5, 7, 11]);
    run("polynomials", 256, (primes, prop::collection::vec(any::<u32>(), 1..8), prop::collection::vec(any::<u32>(), 1..5)), |(p, fr, gr)| {
        let f: Vec<u32> = fr.iter().map(|x| x % p).collect();
        let mut g: Vec<u32> = gr.iter().map(|x| x % p).collect();
        *g.last_mut().unwrap() = 1;
        let (quo, rem) = poly::divrem(&f, &g, p);
        prop_assert_eq!(poly::add(&poly::mul(&quo, &g, p), &rem, p), poly::trim(f.clone()));
        if let Some(dr) = poly::degree(&rem) {
            prop_assert!(dr < poly::degree(&g).unwrap());
        }
        for x in poly::roots(&g, p) {
            prop_assert_eq!(poly::eval(&g, x, p), 0);
        }
        let brute_roots = (0..p).filter(|&x| poly::eval(&g, x, p) == 0).count();
        prop_assert_eq!(poly::roots(&g, p).len(), brute_roots);
        let deg = poly::degree(&g).unwrap();
        if deg >= 1 {
            let irreducible = poly::is_irreducible(&g, p);
            prop_assert_eq!(irreducible, brute_irreducible(&g, p));
        }
        Ok(())
    })
}

/// Monic `g` has no monic factor of degree 1..=deg/2.
fn brute_irreducible(g: &[u32], p: u32) -> bool {
    let deg = poly::degree(g).unwrap();
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut h = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                h.push((c % p as u64) as u32);
                c /= p as u64;
            }
            h.push(1);
            if poly::rem(g, &h, p).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------- espec

/// Every (r, m, type, p, a) searched by an in-scope row.
pub fn espec_combinations() -> BTreeSet<(u32, u32, EType, u32, u32)> {
    let mut out = BTreeSet::new();
    for (row, types) in in_scope_rows() {
        for t in types {
            out.insert((row.r(), row.m(), t, row.p, row.a));
        }
    }
    out
}

fn symplectic_type_over(r: u32, m: u32, p: u32, a: u32) -> Option<regorb::espec::ExtraspecialGroup> {
    let spec = ExtraspecialSpec::new(r, m, EType::SymplecticType, p, a).ok()?;
    build_extraspecial(&spec).ok()
}

pub fn espec_invariants() -> Result<(), String> {
    let combos = espec_combinations();
    if combos.is_empty() {
        return Err("no in-scope extraspecial combinations".into());
    }
    for (r, m, t, p, a) in combos {
        let label = format!("r={r} m={m} {} over GF({p}^{a})", t.name());
        // In a unified row the E+ and E- cores live inside the symplectic-type group.
        let direct = ExtraspecialSpec::new(r, m, t, p, a).ok().and_then(|s| build_extraspecial(&s).ok());
        let (field, gens) = match direct {
            Some(e) => (e.field().clone(), e.generators()),
            None => {
                let s = symplectic_type_over(r, m, p, a).ok_or_else(|| format!("{label}: cannot build"))?;
                (s.field().clone(), s.extraspecial_subgroup_generators(t))
            }
        };
        check_extraspecial(&label, r, m, t, &field, &gens)?;
    }
    Ok(())
}

fn check_extraspecial(label: &str, r: u32, m: u32, t: EType, field: &Arc<Field>, gens: &[FFMatrix]) -> Result<(), String> {
    let dim = (r as usize).pow(m);
    let elements = closure_of_matrices(gens);
    let base = (r as usize).pow(2 * m + 1);
    let expected = if t == EType::SymplecticType { 2 * base } else { base };
    if elements.len() != expected {
        return Err(format!("{label}: order {} != {expected}", elements.len()));
    }
    let id = FFMatrix::identity(field, dim);
    let order_of = |x: &FFMatrix| {
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = y.matmul(x);
            k += 1;
        }
        k
    };
    let exponent = elements.iter().map(order_of).max().unwrap();
    let want = if r == 2 { 4 } else { r as usize };
    if exponent != want {
        return Err(format!("{label}: exponent {exponent} != {want}"));
    }
    let centre: Vec<&FFMatrix> =
        elements.iter().filter(|x| gens.iter().all(|g| x.matmul(g) == g.matmul(x))).collect();
    let want_centre = if t == EType::SymplecticType { 4 } else { r as usize };
    if centre.len() != want_centre || !centre.iter().all(|z| z.is_scalar()) {
        return Err(format!("{label}: centre of order {} (want {want_centre} scalars)", centre.len()));
    }
    if r == 2 && t != EType::SymplecticType {
        let squares_to_one = elements.iter().filter(|x| x.matmul(x) == id).count();
        let e = dim;
        let want = if t == EType::Plus { e * e + e } else { e * e - e };
        if squares_to_one != want {
            return Err(format!("{label}: {squares_to_one} elements square to 1, want {want}"));
        }
    }
    // Absolutely irreducible over GF(q): only scalars commute.
    if hom_dimension(gens, gens) != 1 {
        return Err(format!("{label}: commutant is larger than the scalars"));
    }
    // With the field scalars adjoined and blown up, irreducible over GF(p)
    // with a commuting algebra of dimension a.
    let mut blown: Vec<FFMatrix> = gens.iter().map(|g| g.blow_up()).collect();
    blown.push(FFMatrix::scalar(field, dim, field.primitive_element()).blow_up());
    let d = dim * field.a() as usize;
    if !is_irreducible(&blown, d, 7).is_irreducible() {
        return Err(format!("{label}: blow-up of Z0 E is reducible"));
    }
    if hom_dimension(&blown, &blown) != field.a() as usize {
        return Err(format!("{label}: centralizing field has the wrong degree"));
    }
    Ok(())
}

pub fn espec_quotient_forms() -> Result<(), String> {
    for (r, m, t, p, a) in espec_combinations() {
        let Ok(spec) = ExtraspecialSpec::new(r, m, t, p, a) else { continue };
        let Ok(e) = build_extraspecial(&spec) else { continue };
        let form = form_on_quotient(&e);
        let want = match t {
            EType::Plus => Some(0),
            EType::Minus => Some(1),
            _ => None,
        };
        if want.is_some() && form.arf() != want {
            return Err(format!("r={r} m={m} {}: Arf invariant {:?}", t.name(), form.arf()));
        }
    }
    Ok(())
}

fn closure_of_matrices(gens: &[FFMatrix]) -> Vec<FFMatrix> {
    let n = gens[0].rows();
    let id = FFMatrix::identity(gens[0].field(), n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.data().to_vec());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for g in gens {
            let y = x.matmul(g);
            if seen.insert(y.data().to_vec()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

// ---------------------------------------------------------------- subgroup classes

/// Brute-force subgroups: every join of cyclic subgroups, by plain closure.
fn brute_subgroups<G: FiniteGroup>(g: &G) -> Vec<Vec<u32>> {
    let n = g.order() as u32;
    let close = |gens: &[u32]| -> Vec<u32> {
        let mut inside = vec![false; n as usize];
        let e = g.identity();
        inside[e as usize] = true;
        let mut list = vec![e];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let trivial = vec![g.identity()];
    seen.insert(trivial.clone());
    stack.push((trivial, Vec::new()));
    while let Some((elements, gens)) = stack.pop() {
        let mut member = vec![false; n as usize];
        for &x in &elements {
            member[x as usize] = true;
        }
        for x in 0..n {
            if member[x as usize] {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(x);
            let k = close(&ng);
            if seen.insert(k.clone()) {
                stack.push((k, ng));
            }
        }
    }
    seen.into_iter().collect()
}

fn brute_solvable<G: FiniteGroup>(g: &G, h: &[u32]) -> bool {
    let mut cur: Vec<u32> = h.to_vec();
    loop {
        if cur.len() == 1 {
            return true;
        }
        let mut comms: BTreeSet<u32> = BTreeSet::new();
        for &a in &cur {
            for &b in &cur {
                comms.insert(g.commutator(a, b));
            }
        }
        let gens: Vec<u32> = comms.into_iter().collect();
        let mut next: BTreeSet<u32> = [g.identity()].into();
        let mut frontier: Vec<u32> = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = g.mul(x, s);
                if next.insert(y) {
                    frontier.push(y);
                }
            }
        }
        if next.len() == cur.len() {
            return false;
        }
        cur = next.into_iter().collect();
    }
}

/// (order, class size, solvable) for each conjugacy class of subgroups.
fn brute_classes<G: FiniteGroup>(g: &G) -> (Vec<(usize, usize, bool)>, HashMap<Vec<u32>, usize>) {
    let subs = brute_subgroups(g);
    let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut out = Vec::new();
    for h in &subs {
        if class_of.contains_key(h) {
            continue;
        }
        let id = out.len();
        let mut members: BTreeSet<Vec<u32>> = BTreeSet::new();
        for x in 0..g.order() as u32 {
            let mut c: Vec<u32> = h.iter().map(|&y| g.conj(x, y)).collect();
            c.sort_unstable();
            members.insert(c);
        }
        let size = members.len();
        for c in members {
            class_of.insert(c, id);
        }
        out.push((h.len(), size, brute_solvable(g, h)));
    }
    (out, class_of)
}

fn compare_lattice<G: FiniteGroup>(name: &str, g: &G) -> Result<(), String> {
    let (brute, class_of) = brute_classes(g);
    for only_solvable in [false, true] {
        let lat = subgroup_classes(g, only_solvable, None).map_err(|e| format!("{name}: {e}"))?;
        let mut hit = vec![false; brute.len()];
        for c in &lat.classes {
            let key = c.rep.elements().to_vec();
            let Some(&id) = class_of.get(&key) else {
                return Err(format!("{name}: class {} is not a subgroup", c.id));
            };
            if hit[id] {
                return Err(format!("{name}: two classes are conjugate"));
            }
            hit[id] = true;
            let (order, size, _) = brute[id];
            if c.rep.order() != order || c.class_size != size {
                return Err(format!("{name}: class {} has size {} (brute {size})", c.id, c.class_size));
            }
        }
        let want = brute.iter().filter(|(_, _, s)| *s || !only_solvable).count();
        if lat.classes.len() != want {
            return Err(format!(
                "{name}: {} classes with only_solvable={only_solvable}, brute force finds {want}",
                lat.classes.len()
            ));
        }
    }
    Ok(())
}

fn matrix_group(p: u32, rows: &[&[&[i64]]]) -> regorb::group::EnumeratedGroup {
    let d = rows[0].len();
    let s = MatSpace::new(p, d);
    let gens: Vec<_> = rows.iter().map(|r| s.from_rows(r)).collect();
    enumerate(s, &gens, 10_000).unwrap()
}

/// Named small groups and every normalizer or search quotient of order
/// at most 200 met in the small rows.
pub fn small_group_corpus() -> Vec<(String, TableGroup)> {
    let mut out = vec![
        ("GL(2,3)".to_string(), TableGroup::from_group(&matrix_group(3, &[&[&[0, 2], &[1, 0]], &[&[1, 1], &[0, 1]], &[&[2, 0], &[0, 1]]]))),
        ("SL(2,3)".to_string(), TableGroup::from_group(&matrix_group(3, &[&[&[0, 2], &[1, 0]], &[&[1, 1], &[0, 1]]]))),
        ("S4".to_string(), permutation_group(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])),
        ("A5".to_string(), permutation_group(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]])),
        ("C2xC2xC2".to_string(), permutation_group(6, &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]])),
        ("D12".to_string(), permutation_group(6, &[vec![1, 2, 3, 4, 5, 0], vec![0, 5, 4, 3, 2, 1]])),
    ];
    let bounds = Bounds::default();
    for (row, _) in in_scope_rows() {
        for t in row.assembly_types() {
            let (_, n) = regorb::cliffnorm::predicted_orders(&row, t);
            if n > 200 {
                continue;
            }
            let asm = assemble_full(&row, t, &bounds).unwrap();
            let g = asm.enumerate(1000).unwrap();
            out.push((format!("N({}, {})", row.label(), t.name()), TableGroup::from_group(&g)));
        }
    }
    for n in [62u32, 63, 64, 66, 67, 68, 69] {
        let row = regorb::catalogue::row(n).unwrap();
        for case in build_cases(&row, &ClassifyConfig::default()).unwrap() {
            let q = case.ext.quotient();
            if q.order() <= 200 {
                out.push((format!("quotient of row {n} {}", case.etype.name()), TableGroup::from_group(&q)));
            }
        }
    }
    out
}

pub fn subgroup_class_oracle() -> Result<usize, String> {
    let corpus = small_group_corpus();
    for (name, g) in &corpus {
        compare_lattice(name, g)?;
    }
    Ok(corpus.len())
}

// ---------------------------------------------------------------- homogeneity

type Vector = Vec<u32>;

fn all_vectors(p: u32, d: usize) -> Vec<Vector> {
    let total = (p as usize).pow(d as u32);
    (0..total)
        .map(|mut i| {
            (0..d)
                .map(|_| {
                    let c = (i % p as usize) as u32;
                    i /= p as usize;
                    c
                })
                .collect()
        })
        .collect()
}

/// Submodule generated by `v`: closed under the generators and addition.
fn cyclic_submodule(gens: &[FFMatrix], v: &Vector, p: u32) -> BTreeSet<Vector> {
    let zero = vec![0u32; v.len()];
    let mut set: BTreeSet<Vector> = [zero, v.clone()].into();
    let mut frontier = vec![v.clone()];
    while let Some(x) = frontier.pop() {
        let mut new = Vec::new();
        for g in gens {
            new.push(g.apply(&x));
        }
        for y in set.iter() {
            new.push(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect());
        }
        for y in new {
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// (simple, semisimple and homogeneous) by exhaustive search over V.
pub fn brute_module_shape(gens: &[FFMatrix], p: u32, d: usize) -> (bool, bool) {
    let vectors = all_vectors(p, d);
    let nonzero: Vec<&Vector> = vectors.iter().filter(|v| v.iter().any(|&c| c != 0)).collect();
    let mut cyclic: HashMap<&Vector, BTreeSet<Vector>> = HashMap::new();
    for v in &nonzero {
        cyclic.insert(v, cyclic_submodule(gens, v, p));
    }
    let total = vectors.len();
    let irreducible = cyclic.values().all(|m| m.len() == total);
    let mut simples: Vec<BTreeSet<Vector>> = Vec::new();
    for m in cyclic.values() {
        let simple = m.iter().filter(|w| w.iter().any(|&c| c != 0)).all(|w| cyclic[w] == *m);
        if simple && !simples.contains(m) {
            simples.push(m.clone());
        }
    }
    let f = Field::prime(p).unwrap();
    let socle: Vec<Vector> = simples.iter().flat_map(|s| s.iter().cloned()).collect();
    let semisimple = Subspace::from_vectors(&f, d, &socle).dim() == d;
    let iso = |s1: &BTreeSet<Vector>, s2: &BTreeSet<Vector>| -> bool {
        if s1 == s2 {
            return true;
        }
        if s1.len() != s2.len() {
            return false;
        }
        let v1 = s1.iter().find(|v| v.iter().any(|&c| c != 0)).unwrap();
        s2.iter().filter(|v| v.iter().any(|&c| c != 0)).any(|v2| {
            let sum: Vector = v1.iter().zip(v2).map(|(a, b)| (a + b) % p).collect();
            cyclic[&sum].len() == s1.len()
        })
    };
    let homogeneous = semisimple && simples.iter().all(|s| iso(&simples[0], s));
    (irreducible, homogeneous)
}

/// Module shapes: random generators, doubled blocks, direct sums,
/// extensions of a block by itself and tensor products with an identity.
#[derive(Debug, Clone)]
pub struct ModuleCase {
    pub p: u32,
    pub d: usize,
    pub kind: u8,
    pub raw: Vec<u32>,
    pub count: usize,
}

const SPACES: [(u32, usize); 12] = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2), (2, 1), (3, 1)];

fn module_case() -> impl Strategy<Value = ModuleCase> {
    (0..SPACES.len(), 0u8..5, prop::collection::vec(any::<u32>(), 256), 1usize..=3).prop_map(|(s, kind, raw, count)| {
        let (p, d) = SPACES[s];
        ModuleCase { p, d, kind, raw, count }
    })
}

struct Draw<'a> {
    raw: &'a [u32],
    at: usize,
}

impl Draw<'_> {
    fn next(&mut self, below: u32) -> u32 {
        let x = self.raw[self.at % self.raw.len()];
        self.at += 1;
        x % below
    }

    /// Invertible matrix as L·D·U·P.
    fn invertible(&mut self, f: &Arc<Field>, n: usize) -> FFMatrix {
        let p = f.p();
        let mut l = FFMatrix::identity(f, n);
        let mut u = FFMatrix::identity(f, n);
        for i in 0..n {
            u.set(i, i, 1 + self.next(p - 1));
            for j in 0..i {
                l.set(i, j, self.next(p));
                u.set(j, i, self.next(p));
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, self.next(i as u32 + 1) as usize);
        }
        let mut pm = FFMatrix::zero(f, n, n);
        for (i, &j) in perm.iter().enumerate() {
            pm.set(i, j, 1);
        }
        l.matmul(&u).matmul(&pm)
    }

    fn any(&mut self, f: &Arc<Field>, rows: usize, cols: usize) -> FFMatrix {
        let mut m = FFMatrix::zero(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.next(f.p()));
            }
        }
        m
    }
}

fn block(f: &Arc<Field>, a: &FFMatrix, x: &FFMatrix, b: &FFMatrix) -> FFMatrix {
    let (n1, n2) = (a.rows(), b.rows());
    let mut m = FFMatrix::zero(f, n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            m.set(i, j, a.get(i, j));
        }
        for j in 0..n2 {
            m.set(i, n1 + j, x.get(i, j));
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            m.set(n1 + i, n1 + j, b.get(i, j));
        }
    }
    m
}

pub fn module_generators(c: &ModuleCase) -> Vec<FFMatrix> {
    let f = Field::prime(c.p).unwrap();
    let mut dr = Draw { raw: &c.raw, at: 0 };
    let d = c.d;
    let half = d / 2;
    let kind = if half == 0 { 0 } else { c.kind };
    let conj = dr.invertible(&f, d);
    let conj_inv = conj.inverse().unwrap();
    let mut gens = Vec::new();
    for _ in 0..c.count {
        let g = match kind {
            1 if d % 2 == 0 => {
                let a = dr.invertible(&f, half);
                block(&f, &a, &FFMatrix::zero(&f, half, half), &a)
            }
            2 => {
                let a = dr.invertible(&f, half);
                let b = dr.invertible(&f, d - half);
                block(&f, &a, &FFMatrix::zero(&f, half, d - half), &b)
            }
            3 if d % 2 == 0 => {
                let a = dr.invertible(&f, half);
                let x = dr.any(&f, half, half);
                block(&f, &a, &x, &a)
            }
            4 if d % 2 == 0 => {
                let a = dr.invertible(&f, half);
                a.kron(&FFMatrix::identity(&f, 2))
            }
            _ => dr.invertible(&f, d),
        };
        gens.push(conj.matmul(&g).matmul(&conj_inv));
    }
    gens
}

pub fn homogeneity_oracle() -> Result<(), String> {
    run("homogeneity", 320, module_case(), |c| {
        let gens = module_generators(&c);
        let (irreducible, homogeneous) = brute_module_shape(&gens, c.p, c.d);
        prop_assert_eq!(is_homogeneous(&gens, c.d, 11), homogeneous, "homogeneity of {:?}", gens);
        prop_assert_eq!(is_irreducible(&gens, c.d, 11).is_irreducible(), irreducible, "irreducibility of {:?}", gens);
        Ok(())
    })
}

/// Counts the verdicts the homogeneity suite covers, so a run that never
/// meets one side can be noticed.
pub fn homogeneity_coverage() -> BTreeMap<(bool, bool), usize> {
    let mut out = BTreeMap::new();
    let mut r = runner(320);
    let strat = module_case();
    for _ in 0..320 {
        let c = strat.new_tree(&mut r).unwrap().current();
        let gens = module_generators(&c);
        *out.entry(brute_module_shape(&gens, c.p, c.d)).or_insert(0) += 1;
    }
    out
}
