use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Deref;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default bound on the number of elements a closure may discover.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Groups up to this order get a dense Cayley table.
pub const TABLE_THRESHOLD: usize = 4096;

const NO_GEN: u32 = u32::MAX;

/// A finite group on the ids `0..order`, with `0` the identity.
///
/// Ids follow breadth-first discovery from the identity under right
/// multiplication by the sorted generators, so numbering is reproducible.
/// Small groups carry a Cayley table; larger ones evaluate products by
/// tracing the breadth-first word of the right factor.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    generators: Vec<usize>,
    // right[k][x] = x * generators[k]
    right: Vec<Vec<u32>>,
    // breadth-first tree: (parent, generator index), parent * gen = x
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
    classes: OnceLock<Classes>,
}

#[derive(Clone)]
pub(crate) struct Classes {
    pub list: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl FiniteGroup {
    fn from_parts(order: usize, generators: Vec<usize>, right: Vec<Vec<u32>>, parent: Vec<(u32, u32)>) -> Self {
        let table = (order <= TABLE_THRESHOLD).then(|| {
            let mut t = vec![0u32; order * order];
            for x in 0..order {
                t[x * order] = x as u32;
            }
            for y in 1..order {
                let (p, g) = parent[y];
                let r = &right[g as usize];
                for x in 0..order {
                    t[x * order + y] = r[t[x * order + p as usize] as usize];
                }
            }
            t
        });
        FiniteGroup {
            order,
            generators,
            right,
            parent,
            table,
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        if let Some(t) = &self.table {
            return t[x * self.order + y] as usize;
        }
        let mut word = Vec::new();
        let mut cur = y;
        while cur != 0 {
            let (p, g) = self.parent[cur];
            word.push(g);
            cur = p as usize;
        }
        let mut acc = x;
        for &g in word.iter().rev() {
            acc = self.right[g as usize][acc] as usize;
        }
        acc
    }

    /// Word in the generator indices whose product is `x`.
    pub fn word(&self, x: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (p, g) = self.parent[cur];
            word.push(g as usize);
            cur = p as usize;
        }
        word.reverse();
        word
    }

    /// Right multiplication by the `k`-th generator as a permutation of ids.
    pub fn right_action(&self, k: usize) -> &[u32] {
        &self.right[k]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverses()[x] as usize
    }

    fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            let n = self.order;
            let mut inv = vec![0u32; n];
            if let Some(t) = &self.table {
                for x in 0..n {
                    let row = &t[x * n..(x + 1) * n];
                    inv[x] = row.iter().position(|&v| v == 0).expect("group table") as u32;
                }
            } else {
                // (p g)^{-1} = g^{-1} p^{-1}, and left multiplication by g^{-1}
                // is the inverse of right multiplication when read on inverses.
                let gen_inv: Vec<usize> = (0..self.generators.len())
                    .map(|k| self.right[k].iter().position(|&v| v == 0).expect("group"))
                    .collect();
                for x in 1..n {
                    let (p, g) = self.parent[x];
                    inv[x] = self.mul(gen_inv[g as usize], inv[p as usize] as usize) as u32;
                }
            }
            inv
        })
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders()[x] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders()
            .iter()
            .fold(1usize, |acc, &o| acc / crate::exact::gcd(acc as u64, o as u64) as usize * o as usize)
    }

    /// `g^{-1} x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub(crate) fn classes_data(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![usize::MAX; n];
            let mut list: Vec<Vec<usize>> = Vec::new();
            let gens: Vec<(usize, usize)> = self.generators.iter().map(|&g| (g, self.inv(g))).collect();
            for x in 0..n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let idx = list.len();
                let mut members = vec![x];
                class_of[x] = idx;
                let mut i = 0;
                while i < members.len() {
                    let y = members[i];
                    for &(g, gi) in &gens {
                        let z = self.mul(self.mul(gi, y), g);
                        if class_of[z] == usize::MAX {
                            class_of[z] = idx;
                            members.push(z);
                        }
                    }
                    i += 1;
                }
                members.sort_unstable();
                list.push(members);
            }
            list.sort_by_key(|c| (c.len(), c[0]));
            for (idx, c) in list.iter().enumerate() {
                for &x in c {
                    class_of[x] = idx;
                }
            }
            Classes { list, class_of }
        })
    }

    /// Conjugacy classes, sorted by (size, smallest id); the identity class
    /// comes first.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes_data().list
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes_data().class_of[x]
    }

    /// Sorted member ids of the subgroup generated by `elems`, together with
    /// the subset of `elems` actually needed to generate it.
    pub fn generate(&self, elems: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut used: Vec<usize> = Vec::new();
        for &s in elems {
            if inside[s] {
                continue;
            }
            used.push(s);
            // Extending a subgroup by a new generator: multiply every known
            // element on the right by every generator until stable.
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &used {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        (members, used)
    }

    /// Smallest normal subgroup containing `elems`, as sorted member ids.
    pub fn normal_closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut seeds: Vec<usize> = elems.to_vec();
        loop {
            let (members, used) = self.generate(&seeds);
            let mut inside = vec![false; self.order];
            for &m in &members {
                inside[m] = true;
            }
            let mut extra = Vec::new();
            for &u in &used {
                for &g in &self.generators {
                    let c = self.conjugate(u, g);
                    if !inside[c] {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return members;
            }
            seeds = used;
            seeds.extend(extra);
        }
    }

    /// Whether the sorted id set `members` is a subgroup normal in `self`.
    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &m in members {
            inside[m] = true;
        }
        members.iter().all(|&m| self.generators.iter().all(|&g| inside[self.conjugate(m, g)]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let g = &self.generators;
        let comms: Vec<usize> = g
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| g[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    /// Materializes the subgroup generated by `gens` as a group in its own
    /// right; its elements are the parent ids.
    pub fn subgroup(&self, gens: &[usize]) -> ConcreteGroup<usize> {
        closure(gens, 0usize, |a, b| Ok(self.mul(*a, *b))).expect("subgroup of a finite group")
    }
}

/// A [`FiniteGroup`] together with the concrete elements its ids stand for.
pub struct ConcreteGroup<E> {
    group: FiniteGroup,
    elements: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> ConcreteGroup<E> {
    pub fn element(&self, id: usize) -> &E {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn id_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }
}

impl<E> Deref for ConcreteGroup<E> {
    type Target = FiniteGroup;
    fn deref(&self) -> &FiniteGroup {
        &self.group
    }
}

/// Closes `generators` under `mul` starting from `identity`.
pub fn closure<E, F>(generators: &[E], identity: E, mul: F) -> Result<ConcreteGroup<E>>
where
    E: Clone + Eq + Hash + Ord,
    F: Fn(&E, &E) -> Result<E>,
{
    closure_with_cap(generators, identity, mul, DEFAULT_CAP)
}

pub fn closure_with_cap<E, F>(generators: &[E], identity: E, mul: F, cap: usize) -> Result<ConcreteGroup<E>>
where
    E: Clone + Eq + Hash + Ord,
    F: Fn(&E, &E) -> Result<E>,
{
    let mut gens: Vec<E> = generators.iter().filter(|g| **g != identity).cloned().collect();
    gens.sort();
    gens.dedup();

    let mut elements = vec![identity.clone()];
    let mut index: HashMap<E, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut parent = vec![(0u32, NO_GEN)];
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i].clone();
        for (k, g) in gens.iter().enumerate() {
            let y = mul(&x, g)?;
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    index.insert(y.clone(), id);
                    elements.push(y);
                    parent.push((i as u32, k as u32));
                    id
                }
            };
            right[k].push(id as u32);
        }
        i += 1;
    }

    let n = elements.len();
    for (k, r) in right.iter().enumerate() {
        let mut hit = vec![false; n];
        for &y in r {
            if std::mem::replace(&mut hit[y as usize], true) {
                return Err(Error::NonInvertibleGenerator(k));
            }
        }
    }
    let generator_ids: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    Ok(ConcreteGroup { group: FiniteGroup::from_parts(n, generator_ids, right, parent), elements, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::Perm;

    fn perm_group(n: usize, cycles: &[&[&[u32]]]) -> ConcreteGroup<Perm> {
        let gens: Vec<Perm> = cycles.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        closure(&gens, Perm::identity(n), |a, b| Ok(a.then(b))).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        let s4 = perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.conjugacy_classes().len(), 5);
        assert_eq!(s4.exponent(), 12);
        let sizes: Vec<usize> = s4.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn trivial_closure() {
        let g = closure(&[Perm::identity(3)], Perm::identity(3), |a, b| Ok(a.then(b))).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn word_and_table_paths_agree() {
        let s5 = perm_group(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2]]]);
        for x in 0..s5.order() {
            let mut acc = 0;
            for k in s5.word(x) {
                acc = s5.right_action(k)[acc] as usize;
            }
            assert_eq!(acc, x);
            let inv = s5.inv(x);
            assert_eq!(s5.mul(x, inv), 0);
            assert_eq!(s5.element(inv), &s5.element(x).inverse());
        }
    }

    #[test]
    fn untabled_products_are_correct() {
        // S7 has 5040 elements, above the table threshold.
        let s7 = perm_group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[1, 2]]]);
        assert!(!s7.has_table());
        for (x, y) in [(17, 4000), (5039, 5039), (123, 0), (0, 2222)] {
            let p = s7.element(x).then(s7.element(y));
            assert_eq!(s7.element(s7.mul(x, y)), &p);
            assert_eq!(s7.element(s7.inv(x)), &s7.element(x).inverse());
        }
    }

    #[test]
    fn cap_and_non_invertible_generator() {
        let s5 = [Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap(), Perm::from_cycles(5, &[&[1, 2]]).unwrap()];
        let err = closure_with_cap(&s5, Perm::identity(5), |a, b| Ok(a.then(b)), 50);
        assert!(matches!(err, Err(Error::ClosureCap(50))));
        // multiplication by 0 modulo 6 is not a bijection of {1, 0}
        let err = closure(&[0u32, 5u32], 1u32, |a, b| Ok(a * b % 6));
        assert!(matches!(err, Err(Error::NonInvertibleGenerator(_))));
    }

    #[test]
    fn derived_and_center() {
        let s4 = perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        assert_eq!(s4.derived_subgroup().len(), 12);
        assert_eq!(s4.center().len(), 1);
        let v4 = s4.normal_closure(&[s4.id_of(&Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap()).unwrap()]);
        assert_eq!(v4.len(), 4);
        assert!(s4.is_normal(&v4));
    }
}
