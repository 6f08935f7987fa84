use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use super::finite::FiniteGroup;
use super::mat::{GMat, MatSpace};
use super::GroupError;

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_GROUP_BOUND: usize = 2_000_000;

/// A matrix group listed element by element, in lexicographic order.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    space: MatSpace,
    elements: Vec<GMat>,
    index: FxHashMap<GMat, u32>,
    inverses: Vec<u32>,
    identity: u32,
    gens: Vec<u32>,
}

/// Lists the group generated by `gens` with Dimino's coset method.
pub fn enumerate(space: MatSpace, gens: &[GMat], bound: usize) -> Result<EnumeratedGroup, GroupError> {
    let id = space.identity();
    let mut gens_used: Vec<GMat> = Vec::new();
    let mut elements: Vec<GMat> = vec![id.clone()];
    let mut set: FxHashSet<GMat> = FxHashSet::default();
    set.insert(id.clone());
    for g in gens {
        if space.inverse(g).is_none() {
            return Err(GroupError::NotInvertible);
        }
        if set.contains(g) {
            continue;
        }
        gens_used.push(g.clone());
        // previous subgroup H = elements[..h_len]
        let h_len = elements.len();
        let mut reps: Vec<GMat> = vec![id.clone()];
        let add_coset = |y: &GMat, elements: &mut Vec<GMat>, set: &mut FxHashSet<GMat>| -> Result<(), GroupError> {
            let coset: Vec<GMat> = elements[..h_len].par_iter().map(|e| space.mul(e, y)).collect();
            for z in coset {
                set.insert(z.clone());
                elements.push(z);
            }
            if elements.len() > bound {
                return Err(GroupError::TooLarge { bound, reached: elements.len() });
            }
            Ok(())
        };
        add_coset(g, &mut elements, &mut set)?;
        reps.push(g.clone());
        let mut i = 1;
        while i < reps.len() {
            for s in &gens_used {
                let y = space.mul(&reps[i], s);
                if !set.contains(&y) {
                    add_coset(&y, &mut elements, &mut set)?;
                    reps.push(y);
                }
            }
            i += 1;
        }
    }
    drop(set);
    Ok(EnumeratedGroup::from_closed(space, elements, &gens_used))
}

impl EnumeratedGroup {
    /// Wraps a complete, closed element list.
    pub fn from_closed(space: MatSpace, mut elements: Vec<GMat>, gens: &[GMat]) -> Self {
        elements.par_sort_unstable();
        elements.dedup();
        let index: FxHashMap<GMat, u32> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let identity = index[&space.identity()];
        let inverses: Vec<u32> = elements
            .par_iter()
            .map(|g| index[&space.inverse(g).expect("invertible")])
            .collect();
        let mut gi: Vec<u32> = gens.iter().map(|g| index[g]).filter(|&i| i != identity).collect();
        gi.dedup();
        EnumeratedGroup { space, elements, index, inverses, identity, gens: gi }
    }

    pub fn space(&self) -> MatSpace {
        self.space
    }
    pub fn element(&self, i: u32) -> &GMat {
        &self.elements[i as usize]
    }
    pub fn elements(&self) -> &[GMat] {
        &self.elements
    }
    pub fn index_of(&self, g: &GMat) -> Option<u32> {
        self.index.get(g).copied()
    }
    pub fn generator_matrices(&self) -> Vec<GMat> {
        self.gens.iter().map(|&i| self.elements[i as usize].clone()).collect()
    }
    /// Indices of scalar matrices.
    pub fn scalars(&self) -> Vec<u32> {
        (0..self.elements.len() as u32).filter(|&i| self.space.is_scalar(&self.elements[i as usize])).collect()
    }
}

impl FiniteGroup for EnumeratedGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn identity(&self) -> u32 {
        self.identity
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let c = self.space.mul(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&c]
    }
    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }
    fn generators(&self) -> &[u32] {
        &self.gens
    }
}
