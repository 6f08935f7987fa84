//! Regular orbits of a matrix group on its natural module.
//!
//! A nonzero vector has a nontrivial stabilizer exactly when some element
//! of prime order fixes it, so the union of the fixed spaces of the
//! prime-order elements is the set of non-regular points.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::gfp::{is_prime, FFMatrix, Field};
use crate::group::{Extension, FiniteGroup, GMat, MatSpace, Subgroup, SubgroupLattice};

/// Largest |V| handled by the covering test.
pub const DEFAULT_MAX_SPACE: u64 = 30_000_000;
/// Largest |V| handled by the census oracle.
pub const CENSUS_MAX_SPACE: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("|V| = {size} exceeds the bound {bound}")]
    SpaceTooLarge { size: u64, bound: u64 },
    #[error("regular-orbit witness failed verification")]
    WitnessFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub element: Vec<Vec<u32>>,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularOrbitReport {
    pub group_order: u64,
    pub has_regular: bool,
    pub witness: Option<Vec<u32>>,
    /// Fixed spaces of prime-order elements, one per distinct space.
    pub cover: Vec<CoverEntry>,
    pub covered_points: u64,
}

/// Index of a vector: `sum v_i p^i`.
pub fn point_index(v: &[u32], p: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p as u64 + x as u64)
}

pub fn point_vector(mut idx: u64, p: u32, d: usize) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let x = (idx % p as u64) as u32;
            idx /= p as u64;
            x
        })
        .collect()
}

fn space_size(space: MatSpace, bound: u64) -> Result<u64, OrbitError> {
    match space.space_size() {
        Some(n) if n <= bound => Ok(n),
        n => Err(OrbitError::SpaceTooLarge { size: n.unwrap_or(u64::MAX), bound }),
    }
}

/// Reduced echelon basis of `ker(g - I)`.
pub fn fixed_space(space: MatSpace, field: &Arc<Field>, g: &GMat) -> Vec<Vec<u32>> {
    let m = space.to_ff_in(g, field).sub(&FFMatrix::identity(field, space.d));
    m.kernel()
}

fn matrix_order(space: MatSpace, g: &GMat) -> u64 {
    let mut x = g.clone();
    let mut k = 1;
    while !space.is_identity(&x) {
        x = space.mul(&x, g);
        k += 1;
    }
    k
}

/// Calls `f` on the index of every vector in the span of `basis`.
fn for_each_point(basis: &[Vec<u32>], p: u32, d: usize, mut f: impl FnMut(u64)) {
    let k = basis.len();
    let mut v = vec![0u32; d];
    let mut coeff = vec![0u32; k];
    loop {
        f(point_index(&v, p));
        let mut j = 0;
        loop {
            if j == k {
                return;
            }
            for (x, b) in v.iter_mut().zip(&basis[j]) {
                *x = (*x + b) % p;
            }
            coeff[j] += 1;
            if coeff[j] < p {
                break;
            }
            coeff[j] = 0;
            j += 1;
        }
    }
}

struct Cover {
    words: Vec<AtomicU64>,
    size: u64,
}

impl Cover {
    fn new(size: u64) -> Self {
        Cover { words: (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect(), size }
    }
    fn mark(&self, i: u64) {
        self.words[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }
    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u64).sum()
    }
    fn first_unmarked(&self) -> Option<u64> {
        self.words.iter().enumerate().find_map(|(i, w)| {
            let w = w.load(Ordering::Relaxed);
            (w != u64::MAX).then(|| i as u64 * 64 + (!w).trailing_zeros() as u64)
        }).filter(|&i| i < self.size)
    }
}

/// Builds the report from the distinct nonzero fixed spaces of the
/// prime-order elements; `stabilizer_trivial` re-checks the witness.
fn report_from_fixes(
    space: MatSpace,
    size: u64,
    group_order: u64,
    fixes: &[(&GMat, &[Vec<u32>])],
    stabilizer_trivial: impl Fn(&[u32]) -> bool,
) -> Result<RegularOrbitReport, OrbitError> {
    let cover = Cover::new(size);
    cover.mark(0);
    fixes.par_iter().for_each(|(_, basis)| for_each_point(basis, space.p, space.d, |i| cover.mark(i)));
    let covered_points = cover.count();
    let witness = cover.first_unmarked().map(|i| point_vector(i, space.p, space.d));
    let has_regular = match &witness {
        Some(w) => {
            if !stabilizer_trivial(w) {
                return Err(OrbitError::WitnessFailed);
            }
            true
        }
        // the zero vector is regular for the trivial group
        None => group_order == 1,
    };
    let cover = if has_regular {
        Vec::new()
    } else {
        fixes.iter().map(|(g, b)| CoverEntry { element: space.rows(g), basis: b.to_vec() }).collect()
    };
    Ok(RegularOrbitReport {
        group_order,
        has_regular,
        witness: if has_regular { witness.or_else(|| Some(vec![0; space.d])) } else { None },
        cover,
        covered_points,
    })
}

/// Decides the existence of a regular orbit for the group whose complete
/// element list is `elements`.
pub fn has_regular_orbit(space: MatSpace, elements: &[GMat], bound: u64) -> Result<RegularOrbitReport, OrbitError> {
    let size = space_size(space, bound)?;
    let field = Field::prime(space.p).expect("prime");
    let found: Vec<(usize, Vec<Vec<u32>>)> = elements
        .par_iter()
        .enumerate()
        .filter(|(_, g)| is_prime(matrix_order(space, g) as u32) && !space.is_identity(g))
        .filter_map(|(i, g)| {
            let b = fixed_space(space, &field, g);
            (!b.is_empty()).then_some((i, b))
        })
        .collect();
    let mut seen = FxHashSet::default();
    let distinct: Vec<(&GMat, &[Vec<u32>])> = found
        .iter()
        .filter(|(_, b)| seen.insert(b.clone()))
        .map(|(i, b)| (&elements[*i], b.as_slice()))
        .collect();
    let stab = |w: &[u32]| elements.iter().filter(|g| space.apply(g, w) == w).count() == 1;
    report_from_fixes(space, size, elements.len() as u64, &distinct, stab)
}

/// Fixed spaces of all prime-order elements of an extension, computed once
/// and shared by every subgroup test.
pub struct FixedSpaceTable<'a> {
    ext: &'a Extension,
    size: u64,
    /// Per flat element: index into `spaces` if it has prime order and a
    /// nonzero fixed space.
    fix_of: Vec<Option<u32>>,
    spaces: Vec<Vec<Vec<u32>>>,
}

impl<'a> FixedSpaceTable<'a> {
    pub fn new(ext: &'a Extension, bound: u64) -> Result<Self, OrbitError> {
        let space = ext.group().space();
        let size = space_size(space, bound)?;
        let field = Field::prime(space.p).expect("prime");
        let raw: Vec<Option<Vec<Vec<u32>>>> = (0..ext.order() as u32)
            .into_par_iter()
            .map(|x| {
                if x == 0 || !is_prime(ext.element_order(x) as u32) {
                    return None;
                }
                let b = fixed_space(space, &field, ext.matrix(x));
                (!b.is_empty()).then_some(b)
            })
            .collect();
        let mut ids: FxHashMap<Vec<Vec<u32>>, u32> = FxHashMap::default();
        let mut spaces = Vec::new();
        let fix_of = raw
            .into_iter()
            .map(|b| {
                b.map(|b| {
                    *ids.entry(b).or_insert_with_key(|b| {
                        spaces.push(b.clone());
                        spaces.len() as u32 - 1
                    })
                })
            })
            .collect();
        Ok(FixedSpaceTable { ext, size, fix_of, spaces })
    }

    pub fn space_size(&self) -> u64 {
        self.size
    }

    pub fn report(&self, h: &Subgroup) -> Result<RegularOrbitReport, OrbitError> {
        let space = self.ext.group().space();
        let mut seen = FxHashSet::default();
        let fixes: Vec<(&GMat, &[Vec<u32>])> = h
            .elements()
            .iter()
            .filter_map(|&x| self.fix_of[x as usize].map(|f| (x, f)))
            .filter(|&(_, f)| seen.insert(f))
            .map(|(x, f)| (self.ext.matrix(x), self.spaces[f as usize].as_slice()))
            .collect();
        let stab = |w: &[u32]| {
            h.elements().iter().filter(|&&x| space.apply(self.ext.matrix(x), w) == w).count() == 1
        };
        report_from_fixes(space, self.size, h.order() as u64, &fixes, stab)
    }
}

/// Orbit sizes (size -> number of orbits) by union-find over generators.
pub fn orbit_census(space: MatSpace, gens: &[GMat], bound: u64) -> Result<BTreeMap<u64, u64>, OrbitError> {
    let size = space_size(space, bound)?;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for g in gens {
        for i in 0..size {
            let v = point_vector(i, space.p, space.d);
            let j = point_index(&space.apply(g, &v), space.p);
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut sizes: FxHashMap<u32, u64> = FxHashMap::default();
    for i in 0..size as u32 {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for s in sizes.into_values() {
        *out.entry(s).or_default() += 1;
    }
    Ok(out)
}

/// Whether a census contains an orbit of size `group_order`.
pub fn census_has_regular(census: &BTreeMap<u64, u64>, group_order: u64) -> bool {
    census.contains_key(&group_order)
}

/// Closes known verdicts over containment: regular passes to the classes
/// below, no-regular to the classes above.
pub fn monotone_prune(lattice: &SubgroupLattice, known: &[Option<bool>]) -> Vec<Option<bool>> {
    let mut out = known.to_vec();
    let mut stack: Vec<usize> = (0..out.len()).filter(|&i| out[i].is_some()).collect();
    while let Some(c) = stack.pop() {
        let v = out[c].expect("set");
        let next = if v { &lattice.classes[c].below } else { &lattice.classes[c].above };
        for &n in next {
            match out[n] {
                None => {
                    out[n] = Some(v);
                    stack.push(n);
                }
                Some(w) => assert_eq!(w, v, "contradictory regular-orbit verdicts"),
            }
        }
    }
    out
}
