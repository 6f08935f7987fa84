use std::sync::Arc;

use super::field::Field;
use super::matrix::FFMatrix;

/// A subspace of GF(q)^n kept as a fully reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<Field>,
    n: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Arc<Field>, n: usize) -> Self {
        Subspace { field: field.clone(), n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(field: &Arc<Field>, n: usize, vs: &[Vec<u32>]) -> Self {
        let mut s = Self::new(field, n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
    }

    /// Insert a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let f = self.field.clone();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(inv, *x);
        }
        for b in self.basis.iter_mut() {
            let c = b[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in b.iter_mut().zip(&w) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.basis.insert(pos, w);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// n×k matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> FFMatrix {
        FFMatrix::from_columns(&self.field, self.n, &self.basis)
    }

    /// `{x : b·x = 0 for all basis vectors b}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            let mut s = Subspace::new(&self.field, self.n);
            for i in 0..self.n {
                let mut e = vec![0; self.n];
                e[i] = 1;
                s.insert(&e);
            }
            return s;
        }
        let m = FFMatrix::from_rows(&self.field, &self.basis).expect("valid entries");
        Subspace::from_vectors(&self.field, self.n, &m.kernel())
    }

    /// Matrices of the action of `gens` restricted to this (invariant)
    /// subspace, in echelon-basis coordinates. Returns None if some generator
    /// does not preserve the subspace.
    pub fn restrict(&self, gens: &[FFMatrix]) -> Option<Vec<FFMatrix>> {
        let k = self.dim();
        gens.iter()
            .map(|g| {
                let cols: Option<Vec<Vec<u32>>> =
                    self.basis.iter().map(|b| self.coords(&g.apply(b))).collect();
                cols.map(|c| FFMatrix::from_columns(&self.field, k, &c))
            })
            .collect()
    }

    /// Smallest subspace containing `seeds` and invariant under `gens`
    /// (acting on column vectors).
    pub fn spin(field: &Arc<Field>, n: usize, seeds: &[Vec<u32>], gens: &[FFMatrix]) -> Subspace {
        let mut s = Subspace::new(field, n);
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in seeds {
            if s.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            if s.dim() == n {
                break;
            }
            for g in gens {
                let w = g.apply(&v);
                if s.insert(&w) {
                    queue.push(w);
                }
            }
        }
        s
    }
}
