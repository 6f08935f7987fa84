use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use crate::gfp::prime_divisors;

/// A finite group whose elements are the indices `0..order()`.
pub trait FiniteGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn generators(&self) -> &[u32];

    fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut acc = self.identity();
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn element_order(&self, a: u32) -> u64 {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// A subgroup of an ambient `FiniteGroup`, kept as a sorted element list,
/// a membership bitset and a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<u32>,
    members: FixedBitSet,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(g.identity() as usize);
        Subgroup { elements: vec![g.identity()], members, gens: Vec::new() }
    }

    pub fn whole<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        Subgroup { elements: (0..g.order() as u32).collect(), members, gens: g.generators().to_vec() }
    }

    /// Builds a subgroup from a complete element list (assumed closed).
    /// A small generating set is chosen greedily.
    pub fn from_elements<G: FiniteGroup + ?Sized>(g: &G, mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut members = FixedBitSet::with_capacity(g.order());
        for &x in &elements {
            members.insert(x as usize);
        }
        let full = Subgroup { elements, members, gens: Vec::new() };
        let mut cur = Subgroup::trivial(g);
        // Try high-order elements first: fewer generators.
        for &x in full.elements.iter().rev() {
            if cur.order() == full.order() {
                break;
            }
            if !cur.contains(x) {
                cur = extend(g, &cur, x);
            }
        }
        debug_assert_eq!(cur.order(), full.order());
        Subgroup { gens: cur.gens, ..full }
    }

    /// Builds a subgroup from all three parts, trusting the caller.
    pub fn from_parts(elements: Vec<u32>, members: FixedBitSet, gens: Vec<u32>) -> Self {
        Subgroup { elements, members, gens }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Dimino extension: the subgroup generated by `h` and `x`.
pub fn extend<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, x: u32) -> Subgroup {
    if h.contains(x) {
        return h.clone();
    }
    let mut gens = h.gens.clone();
    gens.push(x);
    let mut members = h.members.clone();
    let mut elements = h.elements.clone();
    let base = h.elements.clone();
    let mut reps = vec![g.identity()];
    let add_coset = |y: u32, members: &mut FixedBitSet, elements: &mut Vec<u32>| {
        for &e in &base {
            let z = g.mul(e, y);
            members.insert(z as usize);
            elements.push(z);
        }
    };
    add_coset(x, &mut members, &mut elements);
    reps.push(x);
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        for &s in &gens {
            let y = g.mul(r, s);
            if !members.contains(y as usize) {
                add_coset(y, &mut members, &mut elements);
                reps.push(y);
            }
        }
        i += 1;
    }
    elements.sort_unstable();
    Subgroup { elements, members, gens }
}

pub fn closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[u32]) -> Subgroup {
    let mut s = Subgroup::trivial(g);
    for &x in gens {
        if !s.contains(x) {
            s = extend(g, &s, x);
        }
    }
    s
}

/// Join of two subgroups.
pub fn join<G: FiniteGroup + ?Sized>(g: &G, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let (big, small) = if a.order() >= b.order() { (a, b) } else { (b, a) };
    let mut s = big.clone();
    for &x in &small.gens {
        if !s.contains(x) {
            s = extend(g, &s, x);
        }
    }
    s
}

/// Normal closure of `seeds` inside `within`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, within: &Subgroup, seeds: &[u32]) -> Subgroup {
    let mut n = closure(g, seeds);
    loop {
        let mut grew = false;
        'outer: for &h in &within.gens {
            let hi = g.inv(h);
            for k in 0..n.gens.len() {
                let c = g.mul(g.mul(h, n.gens[k]), hi);
                if !n.contains(c) {
                    n = extend(g, &n, c);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}

pub fn is_normal<G: FiniteGroup + ?Sized>(g: &G, within: &Subgroup, n: &Subgroup) -> bool {
    within.gens.iter().all(|&h| {
        let hi = g.inv(h);
        n.gens.iter().all(|&k| n.contains(g.mul(g.mul(h, k), hi)))
    })
}

/// Conjugacy classes of `h`, each sorted, ordered by least element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<Vec<u32>> {
    let gi: Vec<(u32, u32)> = h.gens.iter().map(|&s| (s, g.inv(s))).collect();
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for &x in &h.elements {
        if seen.contains(x as usize) {
            continue;
        }
        seen.insert(x as usize);
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &(s, si) in &gi {
                let z = g.mul(g.mul(s, y), si);
                if !seen.contains(z as usize) {
                    seen.insert(z as usize);
                    class.push(z);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

pub fn derived_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    let mut seeds = Vec::new();
    for (i, &a) in h.gens.iter().enumerate() {
        for &b in &h.gens[i + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure(g, h, &seeds)
}

pub fn derived_series<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(g, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> bool {
    derived_series(g, h).last().unwrap().is_trivial()
}

/// All normal subgroups of `h`, sorted by order, trivial subgroup first.
pub fn normal_subgroups<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<Subgroup> {
    let mut base: Vec<Subgroup> = Vec::new();
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let triv = Subgroup::trivial(g);
    seen.insert(triv.members.clone());
    for class in conjugacy_classes(g, h) {
        if class[0] == g.identity() && class.len() == 1 {
            continue;
        }
        let n = normal_closure(g, h, &class[..1]);
        if seen.insert(n.members.clone()) {
            base.push(n);
        }
    }
    let mut all = vec![triv];
    all.extend(base.iter().cloned());
    let mut i = 1;
    while i < all.len() {
        for b in &base {
            if b.is_subgroup_of(&all[i]) || all[i].is_subgroup_of(b) {
                continue;
            }
            let j = join(g, &all[i], b);
            if seen.insert(j.members.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    all
}

/// Elements of `h` commuting with every generator of `k`.
pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let els: Vec<u32> =
        h.elements.iter().copied().filter(|&x| k.gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))).collect();
    Subgroup::from_elements(g, els)
}

pub fn center<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    centralizer(g, h, h)
}

/// `N_h(k)`.
pub fn normalizer<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let els: Vec<u32> = h
        .elements
        .iter()
        .copied()
        .filter(|&x| {
            if k.contains(x) {
                return true;
            }
            let xi = g.inv(x);
            k.gens.iter().all(|&y| k.contains(g.mul(g.mul(x, y), xi)))
        })
        .collect();
    Subgroup::from_elements(g, els)
}

/// Largest normal r-subgroup of `h`.
pub fn largest_normal_p_subgroup<G: FiniteGroup + ?Sized>(
    g: &G,
    h: &Subgroup,
    normals: &[Subgroup],
    r: u64,
) -> Subgroup {
    let is_power = |mut n: usize| {
        while n % r as usize == 0 {
            n /= r as usize;
        }
        n == 1
    };
    let mut best = Subgroup::trivial(g);
    for n in normals {
        if is_power(n.order()) && n.order() > best.order() {
            best = n.clone();
        }
    }
    let _ = h;
    best
}

/// Fitting subgroup: product of the largest normal r-subgroups.
pub fn fitting_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, normals: &[Subgroup]) -> Subgroup {
    let mut f = Subgroup::trivial(g);
    for r in prime_divisors(h.order() as u64) {
        let o = largest_normal_p_subgroup(g, h, normals, r);
        f = join(g, &f, &o);
    }
    f
}

/// Histogram of element orders, as sorted (order, count) pairs.
pub fn order_histogram<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<(u64, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for &x in &h.elements {
        *m.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    m.into_iter().collect()
}

/// Returns `c` in `ambient` with `c a c^-1 = b`, if any.
pub fn conjugating_element<G: FiniteGroup + ?Sized>(
    g: &G,
    ambient: &Subgroup,
    a: &Subgroup,
    b: &Subgroup,
) -> Option<u32> {
    if a.order() != b.order() {
        return None;
    }
    if a == b {
        return Some(g.identity());
    }
    let mut done = FixedBitSet::with_capacity(g.order());
    let norm = normalizer(g, ambient, a);
    for &c in &ambient.elements {
        if done.contains(c as usize) {
            continue;
        }
        // c N(a) all give the same conjugate.
        for &n in &norm.elements {
            done.insert(g.mul(c, n) as usize);
        }
        let ci = g.inv(c);
        if a.gens.iter().all(|&x| b.contains(g.mul(g.mul(c, x), ci))) {
            return Some(c);
        }
    }
    None
}

/// A small table-driven group, mostly for tests and quotients.
#[derive(Clone, Debug)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: u32,
    gens: Vec<u32>,
}

impl TableGroup {
    pub fn new(n: usize, table: Vec<u32>, gens: Vec<u32>) -> Self {
        assert_eq!(table.len(), n * n);
        let identity = (0..n as u32).find(|&e| (0..n).all(|x| table[e as usize * n + x] == x as u32)).expect("identity");
        let inverses = (0..n)
            .map(|x| (0..n as u32).find(|&y| table[x * n + y as usize] == identity).expect("inverse"))
            .collect();
        TableGroup { n, table, inverses, identity, gens }
    }

    /// Builds the table of any group by brute multiplication.
    pub fn from_group<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = g.mul(a as u32, b as u32);
            }
        }
        TableGroup::new(n, table, g.generators().to_vec())
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> u32 {
        self.identity
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }
    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }
    fn generators(&self) -> &[u32] {
        &self.gens
    }
}

/// The permutation group generated by the given images lists.
/// Elements are enumerated in BFS order and the result is tabulated.
pub fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> TableGroup {
    use rustc_hash::FxHashMap;
    let id: Vec<usize> = (0..degree).collect();
    let mut els = vec![id.clone()];
    let mut index: FxHashMap<Vec<usize>, u32> = FxHashMap::default();
    index.insert(id, 0);
    let mut i = 0;
    while i < els.len() {
        for s in gens {
            // x*s means "apply s then x"
            let y: Vec<usize> = (0..degree).map(|k| els[i][s[k]]).collect();
            if !index.contains_key(&y) {
                index.insert(y.clone(), els.len() as u32);
                els.push(y);
            }
        }
        i += 1;
    }
    let n = els.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let y: Vec<usize> = (0..degree).map(|k| els[a][els[b][k]]).collect();
            table[a * n + b] = index[&y];
        }
    }
    let gi = gens.iter().map(|s| index[s]).collect();
    TableGroup::new(n, table, gi)
}
