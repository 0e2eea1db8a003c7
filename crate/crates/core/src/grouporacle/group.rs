use std::collections::{BTreeSet, HashMap, VecDeque};

use super::perm::Permutation;
use crate::error::{argument, Error, Result};

/// Largest group order the brute-force routines accept by default.
pub const DEFAULT_ORDER_BOUND: usize = 24;

/// Finite group given by its Cayley table: `cayley[a][b]` is the index of `ab`.
///
/// Groups built by [`closure`] also remember the permutation behind each index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    elements: Option<Vec<Permutation>>,
}

/// Subgroup as a sorted list of element indices of its ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    fn from_set(s: BTreeSet<usize>) -> Self {
        Self { elements: s.into_iter().collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, associativity, identity and inverses.
    pub fn from_cayley(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(argument("Cayley table is empty"));
        }
        if cayley.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(argument(format!("Cayley table must be {n}x{n} with entries < {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| cayley[e][a] == a && cayley[a][e] == a))
            .ok_or_else(|| argument("Cayley table has no identity"))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| cayley[a][b] == identity && cayley[b][a] == identity)
                .ok_or_else(|| argument(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(argument(format!("Cayley table not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self { cayley, identity, inverses, elements: None })
    }

    fn from_trusted(cayley: Vec<Vec<usize>>, identity: usize, elements: Option<Vec<Permutation>>) -> Self {
        let n = cayley.len();
        let inverses = (0..n).map(|a| (0..n).find(|&b| cayley[a][b] == identity).expect("group")).collect();
        Self { cayley, identity, inverses, elements }
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Permutations behind the indices, when the group came from [`closure`].
    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.as_ref()?.iter().position(|q| q == p)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `ℤ_n` with `a·b = a + b mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(argument("cyclic group of order 0"));
        }
        Ok(Self::from_trusted((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), 0, None))
    }

    /// `a × b` with index `i·|b| + j` for `(i, j)`.
    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let cayley = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        Self::from_trusted(cayley, a.identity * nb + b.identity, None)
    }

    /// `S_n` as the closure of a transposition and an `n`-cycle.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(argument("symmetric group on 0 points"));
        }
        if n == 1 {
            return Ok(closure(&[Permutation::identity(1)]).expect("identity"));
        }
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        closure(&[Permutation::new(t)?, Permutation::new(cyc)?])
    }

    /// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(argument("dihedral group needs n >= 3"));
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        closure(&[Permutation::new(rot)?, Permutation::new(refl)?])
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_set(set)
    }

    /// Subgroup generated by a union of subgroups.
    pub fn join(&self, parts: &[&Subgroup]) -> Subgroup {
        let gens: Vec<usize> = parts.iter().flat_map(|s| s.elements.iter().copied()).collect();
        self.subgroup_generated(&gens)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.contains(&self.identity) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.order()).all(|g| s.elements.iter().all(|&h| s.contains(self.mul(self.mul(g, h), self.inv(g)))))
    }

    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let conj: Vec<usize> =
            (0..self.order()).flat_map(|g| gens.iter().map(move |&h| (g, h))).map(|(g, h)| self.mul(self.mul(g, h), self.inv(g))).collect();
        self.subgroup_generated(&conj)
    }

    fn check_bound(&self, bound: usize) -> Result<()> {
        if self.order() > bound {
            return Err(Error::Bound(format!("group order {} exceeds bound {bound}", self.order())));
        }
        Ok(())
    }

    /// All subgroups, as joins of cyclic subgroups; sorted by order then elements.
    pub fn subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        self.check_bound(bound)?;
        let cyclic: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.subgroup_generated(&[g])).collect();
        Ok(join_closure(self, cyclic))
    }

    /// All normal subgroups, as joins of normal closures of single elements.
    pub fn normal_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        self.check_bound(bound)?;
        let seeds: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.normal_closure(&[g])).collect();
        Ok(join_closure(self, seeds))
    }

    /// Quotient by a normal subgroup; returns the group and the coset index of every element.
    pub fn quotient(&self, s: &Subgroup) -> Result<(Self, Vec<usize>)> {
        if !self.is_subgroup(&s.elements) || !self.is_normal(s) {
            return Err(argument("quotient needs a normal subgroup"));
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in &s.elements {
                coset[self.mul(g, h)] = c;
            }
        }
        let m = reps.len();
        let cayley = (0..m).map(|a| (0..m).map(|b| coset[self.mul(reps[a], reps[b])]).collect()).collect();
        Ok((Self::from_trusted(cayley, coset[self.identity], None), coset))
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|g| self.element_order(g)).collect();
        v.sort_unstable();
        v
    }

    /// Small generating set, greedily preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&g| std::cmp::Reverse(self.element_order(g)));
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for g in by_order {
            if cur.order() == self.order() {
                break;
            }
            if !cur.contains(g) {
                gens.push(g);
                cur = self.subgroup_generated(&gens);
            }
        }
        gens
    }
}

fn join_closure(g: &FiniteGroup, seeds: BTreeSet<Subgroup>) -> Vec<Subgroup> {
    let mut all: BTreeSet<Subgroup> = seeds.clone();
    all.insert(g.trivial_subgroup());
    let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &seeds {
                let j = g.join(&[a, b]);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// Group generated by permutations of a common degree, by breadth-first closure.
pub fn closure(gens: &[Permutation]) -> Result<FiniteGroup> {
    let degree = gens.first().map(Permutation::degree).ok_or_else(|| argument("closure needs at least one generator"))?;
    if gens.iter().any(|p| p.degree() != degree) {
        return Err(argument("generators have different degrees"));
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let y = elements[i].compose(g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let cayley = (0..n).map(|a| (0..n).map(|b| index[&elements[a].compose(&elements[b])]).collect()).collect();
    Ok(FiniteGroup::from_trusted(cayley, 0, Some(elements)))
}

pub fn intersect_subgroups(a: &Subgroup, b: &Subgroup) -> Subgroup {
    Subgroup { elements: a.elements.iter().copied().filter(|&x| b.contains(x)).collect() }
}

/// Brute-force isomorphism test: images of a generating set are searched
/// among elements of matching order and extended along the Cayley graph.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup, bound: usize) -> Result<bool> {
    a.check_bound(bound)?;
    b.check_bound(bound)?;
    if a.order() != b.order() || a.order_profile() != b.order_profile() || a.is_abelian() != b.is_abelian() {
        return Ok(false);
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| (0..b.order()).filter(|&h| b.element_order(h) == a.element_order(g)).collect()).collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if extends_to_isomorphism(a, b, &gens, &images) {
            return Ok(true);
        }
        // odometer over candidate images
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(false);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extends_to_isomorphism(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[a.identity] = b.identity;
    let mut queue = VecDeque::from([a.identity]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return false;
            }
        }
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    distinct.len() == n && (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}
