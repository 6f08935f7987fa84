use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::finite::{extend, normalizer, FiniteGroup, Subgroup};
use super::GroupError;
use crate::gfp::is_prime;

/// Groups above this order are refused by the unrestricted enumeration.
pub const FULL_LATTICE_LIMIT: usize = 2000;

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub id: usize,
    pub rep: Subgroup,
    pub class_size: usize,
    /// Classes with a member from which this class is reached by adjoining one element.
    pub below: Vec<usize>,
    /// Classes reached from this one by adjoining one element.
    pub above: Vec<usize>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub group_order: usize,
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.class_size).sum()
    }
}

struct Building {
    reps: Vec<Subgroup>,
    sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    lookup: FxHashMap<FixedBitSet, usize>,
}

impl Building {
    fn new() -> Self {
        Building { reps: Vec::new(), sizes: Vec::new(), edges: Vec::new(), lookup: FxHashMap::default() }
    }

    /// Registers `k` and all its conjugates, returning (class id, is new).
    fn register<G: FiniteGroup + ?Sized>(&mut self, g: &G, k: Subgroup) -> (usize, bool) {
        if let Some(&id) = self.lookup.get(k.members()) {
            return (id, false);
        }
        let id = self.reps.len();
        let gi: Vec<(u32, u32)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
        let mut orbit: Vec<Vec<u32>> = vec![k.elements().to_vec()];
        self.lookup.insert(k.members().clone(), id);
        let mut i = 0;
        while i < orbit.len() {
            for &(s, si) in &gi {
                let mut m = FixedBitSet::with_capacity(g.order());
                let mut els = Vec::with_capacity(orbit[i].len());
                for &x in &orbit[i] {
                    let y = g.mul(g.mul(s, x), si);
                    m.insert(y as usize);
                    els.push(y);
                }
                if !self.lookup.contains_key(&m) {
                    self.lookup.insert(m, id);
                    orbit.push(els);
                }
            }
            i += 1;
        }
        self.reps.push(k);
        self.sizes.push(orbit.len());
        (id, true)
    }

    fn finish(self, group_order: usize) -> SubgroupLattice {
        let n = self.reps.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.reps[i].order(), i));
        let mut new_id = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            new_id[i] = k;
        }
        let mut classes: Vec<SubgroupClass> = order
            .iter()
            .enumerate()
            .map(|(k, &i)| SubgroupClass {
                id: k,
                rep: self.reps[i].clone(),
                class_size: self.sizes[i],
                below: Vec::new(),
                above: Vec::new(),
            })
            .collect();
        for (a, b) in self.edges {
            let (a, b) = (new_id[a], new_id[b]);
            if !classes[b].below.contains(&a) {
                classes[b].below.push(a);
                classes[a].above.push(b);
            }
        }
        for c in &mut classes {
            c.below.sort_unstable();
            c.above.sort_unstable();
        }
        SubgroupLattice { group_order, classes }
    }
}

/// Subgroups `<h, x>` for `x` in `N(h)` of prime order modulo `h`.
fn cyclic_extensions<G: FiniteGroup + ?Sized>(g: &G, whole: &Subgroup, h: &Subgroup) -> Vec<Subgroup> {
    let norm = normalizer(g, whole, h);
    let mut marked = h.members().clone();
    let mut out = Vec::new();
    for &x in norm.elements() {
        if marked.contains(x as usize) {
            continue;
        }
        let mut y = x;
        let mut k = 1u32;
        while !h.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        if is_prime(k) {
            let ext = extend(g, h, x);
            marked.union_with(ext.members());
            out.push(ext);
        } else {
            for &e in h.elements() {
                marked.insert(g.mul(e, x) as usize);
            }
        }
    }
    out
}

/// Conjugacy classes of subgroups of `g`.
///
/// With `only_solvable`, classes are built upward by cyclic extension
/// from the trivial subgroup, which reaches exactly the solvable
/// subgroups. Otherwise every subgroup is generated by adjoining one
/// element at a time, which is only allowed for small groups.
pub fn subgroup_classes<G: FiniteGroup + ?Sized>(
    g: &G,
    only_solvable: bool,
    max_classes: Option<usize>,
) -> Result<SubgroupLattice, GroupError> {
    let whole = Subgroup::whole(g);
    let mut b = Building::new();
    let (triv, _) = b.register(g, Subgroup::trivial(g));
    let mut layers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    layers.insert(1, vec![triv]);
    while let Some((_, layer)) = layers.pop_first() {
        let found: Vec<Vec<Subgroup>> = if only_solvable {
            layer.par_iter().map(|&c| cyclic_extensions(g, &whole, &b.reps[c])).collect()
        } else {
            if g.order() > FULL_LATTICE_LIMIT {
                return Err(GroupError::LatticeTooLarge(g.order()));
            }
            layer.par_iter().map(|&c| one_element_extensions(g, &b.reps[c])).collect()
        };
        for (&h, exts) in layer.iter().zip(found) {
            for k in exts {
                let order = k.order();
                let (id, new) = b.register(g, k);
                b.edges.push((h, id));
                if new {
                    if let Some(m) = max_classes {
                        if b.reps.len() > m {
                            return Err(GroupError::TooManyClasses(m));
                        }
                    }
                    layers.entry(order).or_default().push(id);
                }
            }
        }
    }
    Ok(b.finish(g.order()))
}

fn one_element_extensions<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<Subgroup> {
    let mut marked = h.members().clone();
    let mut out = Vec::new();
    for x in 0..g.order() as u32 {
        if marked.contains(x as usize) {
            continue;
        }
        let k = extend(g, h, x);
        // Only keep minimal overgroups obtained this way; larger ones are
        // reached from intermediate layers.
        for &y in k.elements() {
            if !h.contains(y) && extend(g, h, y).order() == k.order() {
                marked.insert(y as usize);
            }
        }
        out.push(k);
    }
    out
}
