use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::enumerate::EnumeratedGroup;
use super::finite::{closure, FiniteGroup, Subgroup};
use super::mat::GMat;
use super::GroupError;

/// Quotients up to this size get full multiplication tables.
pub const TABLE_LIMIT: usize = 4096;

struct Tables {
    /// `rep_q * rep_r = rep_{quot} * core_{cocycle}`
    quot: Vec<u16>,
    cocycle: Vec<u16>,
    /// `rep_r^-1 core_c rep_r`
    act: Vec<u16>,
    core: Vec<u16>,
}

/// A group `N` with a normal subgroup `C`, re-indexed so that element
/// `q * |C| + c` is `rep_q * core_c`. Coset 0 and core element 0 are the
/// identity; other coset representatives are lexicographically least.
pub struct Extension {
    group: EnumeratedGroup,
    nc: usize,
    nq: usize,
    to_flat: Vec<u32>,
    from_flat: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<u32>,
    core_gens: Vec<u32>,
    quot_gens: Vec<u32>,
    tables: Option<Tables>,
}

impl Extension {
    pub fn new(group: EnumeratedGroup, core_gens: &[GMat]) -> Result<Self, GroupError> {
        let cg: Vec<u32> = core_gens.iter().map(|g| group.index_of(g).ok_or(GroupError::NotNormal)).collect::<Result<_, _>>()?;
        let core = closure(&group, &cg);
        for &h in group.generators() {
            for &c in core.gens() {
                if !core.contains(group.conj(h, c)) {
                    return Err(GroupError::NotNormal);
                }
            }
        }
        let id = group.identity();
        let mut core_list = vec![id];
        core_list.extend(core.elements().iter().copied().filter(|&x| x != id));
        let nc = core_list.len();
        let n = group.order();
        let nq = n / nc;
        let mut to_flat = vec![u32::MAX; n];
        let mut from_flat = vec![0u32; n];
        let mut reps: Vec<u32> = Vec::with_capacity(nq);
        let place = |r: u32, to_flat: &mut Vec<u32>, from_flat: &mut Vec<u32>, reps: &mut Vec<u32>| {
            let q = reps.len();
            reps.push(r);
            let row: Vec<u32> = core_list.par_iter().map(|&c| group.mul(r, c)).collect();
            for (c, x) in row.into_iter().enumerate() {
                let f = (q * nc + c) as u32;
                to_flat[x as usize] = f;
                from_flat[f as usize] = x;
            }
        };
        place(id, &mut to_flat, &mut from_flat, &mut reps);
        for x in 0..n as u32 {
            if to_flat[x as usize] == u32::MAX {
                place(x, &mut to_flat, &mut from_flat, &mut reps);
            }
        }
        debug_assert_eq!(reps.len(), nq);

        let tables = if nq <= TABLE_LIMIT && nc <= u16::MAX as usize {
            let rows: Vec<(Vec<u16>, Vec<u16>)> = (0..nq)
                .into_par_iter()
                .map(|q| {
                    let mut qr = Vec::with_capacity(nq);
                    let mut cr = Vec::with_capacity(nq);
                    for r in 0..nq {
                        let f = to_flat[group.mul(reps[q], reps[r]) as usize] as usize;
                        qr.push((f / nc) as u16);
                        cr.push((f % nc) as u16);
                    }
                    (qr, cr)
                })
                .collect();
            let mut quot = Vec::with_capacity(nq * nq);
            let mut cocycle = Vec::with_capacity(nq * nq);
            for (a, b) in rows {
                quot.extend(a);
                cocycle.extend(b);
            }
            let act: Vec<u16> = (0..nq)
                .into_par_iter()
                .flat_map_iter(|r| {
                    let ri = group.inv(reps[r]);
                    let g = &group;
                    let core_list = &core_list;
                    let to_flat = &to_flat;
                    let reps = &reps;
                    (0..nc).map(move |c| {
                        let y = g.mul(g.mul(ri, core_list[c]), reps[r]);
                        to_flat[y as usize] as u16
                    })
                })
                .collect();
            let mut coretab = Vec::with_capacity(nc * nc);
            for a in 0..nc {
                for b in 0..nc {
                    coretab.push(to_flat[group.mul(core_list[a], core_list[b]) as usize] as u16);
                }
            }
            Some(Tables { quot, cocycle, act, core: coretab })
        } else {
            None
        };

        let inverses: Vec<u32> = (0..n).map(|f| to_flat[group.inv(from_flat[f]) as usize]).collect();
        let core_gens: Vec<u32> = core.gens().iter().map(|&c| to_flat[c as usize]).collect();
        let mut gens = core_gens.clone();
        for &h in group.generators() {
            let f = to_flat[h as usize];
            if !gens.contains(&f) {
                gens.push(f);
            }
        }
        let mut quot_gens = Vec::new();
        for &h in group.generators() {
            let q = to_flat[h as usize] / nc as u32;
            if q != 0 && !quot_gens.contains(&q) {
                quot_gens.push(q);
            }
        }
        Ok(Extension { group, nc, nq, to_flat, from_flat, inverses, gens, core_gens, quot_gens, tables })
    }

    pub fn group(&self) -> &EnumeratedGroup {
        &self.group
    }
    pub fn core_order(&self) -> usize {
        self.nc
    }
    pub fn quotient_order(&self) -> usize {
        self.nq
    }
    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }
    pub fn matrix(&self, x: u32) -> &GMat {
        self.group.element(self.from_flat[x as usize])
    }
    pub fn flat_of_matrix(&self, g: &GMat) -> Option<u32> {
        self.group.index_of(g).map(|i| self.to_flat[i as usize])
    }
    pub fn coset(&self, x: u32) -> u32 {
        x / self.nc as u32
    }
    pub fn quotient(&self) -> QuotientView<'_> {
        QuotientView { ext: self }
    }
    pub fn core(&self) -> Subgroup {
        let els: Vec<u32> = (0..self.nc as u32).collect();
        let mut m = FixedBitSet::with_capacity(self.order());
        m.insert_range(0..self.nc);
        Subgroup::from_parts(els, m, self.core_gens.clone())
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn lift(&self, q: &Subgroup) -> Subgroup {
        let nc = self.nc as u32;
        let mut els = Vec::with_capacity(q.order() * self.nc);
        let mut m = FixedBitSet::with_capacity(self.order());
        for &c in q.elements() {
            m.insert_range((c * nc) as usize..((c + 1) * nc) as usize);
            els.extend(c * nc..(c + 1) * nc);
        }
        let mut gens = self.core_gens.clone();
        gens.extend(q.gens().iter().map(|&c| c * nc));
        Subgroup::from_parts(els, m, gens)
    }
}

impl FiniteGroup for Extension {
    fn order(&self) -> usize {
        self.nq * self.nc
    }
    fn identity(&self) -> u32 {
        0
    }
    #[inline]
    fn mul(&self, x: u32, y: u32) -> u32 {
        match &self.tables {
            Some(t) => {
                let nc = self.nc;
                let (q, c) = (x as usize / nc, x as usize % nc);
                let (r, d) = (y as usize / nc, y as usize % nc);
                let k = q * self.nq + r;
                let s = t.quot[k] as usize;
                let a = t.act[r * nc + c] as usize;
                let u = t.core[t.cocycle[k] as usize * nc + a] as usize;
                let v = t.core[u * nc + d] as usize;
                (s * nc + v) as u32
            }
            None => self.to_flat[self.group.mul(self.from_flat[x as usize], self.from_flat[y as usize]) as usize],
        }
    }
    fn inv(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }
    fn generators(&self) -> &[u32] {
        &self.gens
    }
}

/// The quotient `N / C` with cosets indexed `0..|N:C|`.
#[derive(Clone, Copy)]
pub struct QuotientView<'a> {
    ext: &'a Extension,
}

impl FiniteGroup for QuotientView<'_> {
    fn order(&self) -> usize {
        self.ext.nq
    }
    fn identity(&self) -> u32 {
        0
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.ext.tables {
            Some(t) => t.quot[a as usize * self.ext.nq + b as usize] as u32,
            None => {
                let nc = self.ext.nc as u32;
                self.ext.mul(a * nc, b * nc) / nc
            }
        }
    }
    fn inv(&self, a: u32) -> u32 {
        let nc = self.ext.nc as u32;
        self.ext.inverses[(a * nc) as usize] / nc
    }
    fn generators(&self) -> &[u32] {
        &self.ext.quot_gens
    }
}
