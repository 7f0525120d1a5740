use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::structure::{quotient_group, Subgroup};
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const ISO_ORDER_CAP: usize = 10_000;

/// Isomorphism invariants used as a fast screen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    /// element order -> number of elements of that order
    pub order_spectrum: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    /// invariant factors `d1 | d2 | …` of the abelianization
    pub abelian_invariants: Vec<u64>,
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    let mut order_spectrum = BTreeMap::new();
    for &o in g.element_orders() {
        *order_spectrum.entry(o as usize).or_insert(0) += 1;
    }
    let derived = g.derived_subgroup();
    let abelian_invariants = if derived.len() == 1 {
        abelian_invariants(g)
    } else {
        let d = Subgroup::from_members(g, derived.clone()).expect("derived subgroup");
        let q = quotient_group(g, &d).expect("derived subgroup is normal");
        abelian_invariants(&q.group)
    };
    GroupFingerprint {
        order: g.order(),
        order_spectrum,
        center_order: g.center().len(),
        derived_order: derived.len(),
        abelian_invariants,
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group, read off from the sizes of its
/// `p^k`-torsion subgroups.
fn abelian_invariants(a: &FiniteGroup) -> Vec<u64> {
    let orders = a.element_orders();
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(a.order() as u64) {
        // ranks[k] = number of cyclic factors of order >= p^(k+1)
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        let mut pk = p;
        loop {
            let count = orders.iter().filter(|&&o| pk % o as u64 == 0).count();
            if count == prev {
                break;
            }
            let mut r = 0;
            let mut c = count / prev;
            while c > 1 {
                c /= p as usize;
                r += 1;
            }
            ranks.push(r);
            prev = count;
            pk *= p;
        }
        let mut powers = Vec::new();
        for (k, &r) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                powers.push(p.pow(k as u32 + 1));
            }
        }
        powers.sort_unstable_by(|x, y| y.cmp(x));
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().filter_map(|v| v.get(i)).product())
        .collect();
    factors.reverse();
    factors
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// `map[x]` is the image of id `x`; verified bijective and multiplicative.
    Isomorphic(Vec<usize>),
    /// A fingerprint component that differs.
    Distinguished(String),
    /// Fingerprints agree but no assignment of generator images extends.
    Exhausted { nodes: usize },
}

impl Isomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Isomorphism::Isomorphic(m) => Some(m),
            _ => None,
        }
    }
}

/// Decides whether two groups are isomorphic.
pub fn is_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Isomorphism> {
    for g in [g1, g2] {
        if g.order() > ISO_ORDER_CAP {
            return Err(Error::OrderCap(g.order(), ISO_ORDER_CAP));
        }
    }
    if g1.order() != g2.order() {
        return Ok(Isomorphism::Distinguished(format!("order {} vs {}", g1.order(), g2.order())));
    }
    let (f1, f2) = (fingerprint(g1), fingerprint(g2));
    if let Some(reason) = compare_fingerprints(&f1, &f2) {
        return Ok(Isomorphism::Distinguished(reason));
    }

    let gens = greedy_generators(g1);
    let mut search = Search {
        g1,
        g2,
        gens: &gens,
        images: Vec::new(),
        nodes: 0,
        map: vec![usize::MAX; g1.order()],
        back: vec![usize::MAX; g2.order()],
    };
    match search.run() {
        Some(map) => {
            verify_isomorphism(g1, g2, &map)?;
            Ok(Isomorphism::Isomorphic(map))
        }
        None => Ok(Isomorphism::Exhausted { nodes: search.nodes }),
    }
}

fn compare_fingerprints(a: &GroupFingerprint, b: &GroupFingerprint) -> Option<String> {
    if a.order_spectrum != b.order_spectrum {
        return Some(format!("element orders {:?} vs {:?}", a.order_spectrum, b.order_spectrum));
    }
    if a.center_order != b.center_order {
        return Some(format!("center order {} vs {}", a.center_order, b.center_order));
    }
    if a.derived_order != b.derived_order {
        return Some(format!("derived subgroup order {} vs {}", a.derived_order, b.derived_order));
    }
    if a.abelian_invariants != b.abelian_invariants {
        return Some(format!("abelianization {:?} vs {:?}", a.abelian_invariants, b.abelian_invariants));
    }
    None
}

/// Checks that `map` is a bijective homomorphism on every pair.
pub fn verify_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup, map: &[usize]) -> Result<()> {
    let mut hit = vec![false; g2.order()];
    for &y in map {
        if y >= g2.order() || std::mem::replace(&mut hit[y], true) {
            return Err(Error::Verification("isomorphism witness is not bijective".into()));
        }
    }
    for a in 0..g1.order() {
        for b in 0..g1.order() {
            if map[g1.mul(a, b)] != g2.mul(map[a], map[b]) {
                return Err(Error::Verification("isomorphism witness is not multiplicative".into()));
            }
        }
    }
    Ok(())
}

/// Each step adds the element that enlarges the generated subgroup the most,
/// preferring higher element order and then smaller id.
fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut members = vec![0usize];
    while members.len() < g.order() {
        let mut inside = vec![false; g.order()];
        for &m in &members {
            inside[m] = true;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        let first_step = gens.is_empty();
        for x in 0..g.order() {
            if inside[x] || (first_step && g.conjugacy_classes()[g.class_of(x)][0] != x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = g.generate(&trial).0.len();
            let key = (size, g.element_order(x), usize::MAX - x);
            if best.is_none_or(|b| key > (b.0, b.1, usize::MAX - b.2)) {
                best = Some((size, g.element_order(x), x));
            }
        }
        let (_, _, x) = best.expect("a proper subgroup misses some element");
        gens.push(x);
        members = g.generate(&gens).0;
    }
    gens
}

struct Search<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: &'a [usize],
    images: Vec<usize>,
    nodes: usize,
    map: Vec<usize>,
    back: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<Vec<usize>> {
        if self.gens.is_empty() {
            return Some(vec![0]);
        }
        self.descend()
    }

    fn descend(&mut self) -> Option<Vec<usize>> {
        let level = self.images.len();
        if level == self.gens.len() {
            return Some(self.map.clone());
        }
        let src = self.gens[level];
        let want_order = self.g1.element_order(src);
        let want_class = self.g1.conjugacy_classes()[self.g1.class_of(src)].len();
        let classes2 = self.g2.conjugacy_classes();
        let candidates: Vec<usize> = if level == 0 {
            // composing with inner automorphisms of g2, the first image can
            // be taken to be a class representative
            classes2.iter().map(|c| c[0]).collect()
        } else {
            (0..self.g2.order()).collect()
        };
        for y in candidates {
            if self.g2.element_order(y) != want_order || classes2[self.g2.class_of(y)].len() != want_class {
                continue;
            }
            self.nodes += 1;
            self.images.push(y);
            if self.extend() {
                if let Some(m) = self.descend() {
                    return Some(m);
                }
            }
            self.images.pop();
        }
        None
    }

    /// Rebuilds the map on the subgroup generated by the current generators
    /// and checks it is a well-defined injective homomorphism.
    fn extend(&mut self) -> bool {
        self.map.fill(usize::MAX);
        self.back.fill(usize::MAX);
        self.map[0] = 0;
        self.back[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let fx = self.map[x];
            for (j, &img) in self.images.iter().enumerate() {
                let y = self.g1.mul(x, self.gens[j]);
                let fy = self.g2.mul(fx, img);
                if self.map[y] == usize::MAX {
                    if self.back[fy] != usize::MAX {
                        return false;
                    }
                    self.map[y] = fy;
                    self.back[fy] = y;
                    queue.push(y);
                } else if self.map[y] != fy {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{closure, direct_product, Perm};

    fn cyclic(k: u32) -> FiniteGroup {
        closure(&[1u32], 0u32, |a, b| Ok((a + b) % k)).unwrap().into_group()
    }

    fn perms(n: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        let g: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        closure(&g, Perm::identity(n), |a, b| Ok(a.then(b))).unwrap().into_group()
    }

    #[test]
    fn cyclic_fingerprint() {
        let f = fingerprint(&cyclic(6));
        assert_eq!(f.order_spectrum, BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]));
        assert_eq!(f.abelian_invariants, vec![6]);
        assert_eq!(f.derived_order, 1);
    }

    #[test]
    fn abelian_invariants_of_products() {
        let g = direct_product(&direct_product(&cyclic(2), &cyclic(4)).into_group(), &cyclic(6)).into_group();
        assert_eq!(fingerprint(&g).abelian_invariants, vec![2, 2, 12]);
        let a4 = perms(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let f = fingerprint(&a4);
        assert_eq!((f.center_order, f.abelian_invariants.clone()), (1, vec![3]));
    }

    #[test]
    fn c6_is_c2_times_c3() {
        let prod = direct_product(&cyclic(2), &cyclic(3)).into_group();
        let res = is_isomorphic(&cyclic(6), &prod).unwrap();
        assert!(res.is_isomorphic());
    }

    #[test]
    fn screen_separates_d8_from_c4_c2() {
        // D8 and C4 x C2 differ in their spectra
        let d8 = perms(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let c4c2 = direct_product(&cyclic(4), &cyclic(2)).into_group();
        assert!(matches!(is_isomorphic(&d8, &c4c2).unwrap(), Isomorphism::Distinguished(_)));
    }

    #[test]
    fn two_models_of_s4() {
        let a = perms(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let b = perms(4, &[&[&[1, 2, 3]], &[&[3, 4]]]);
        let res = is_isomorphic(&a, &b).unwrap();
        verify_isomorphism(&a, &b, res.witness().unwrap()).unwrap();
    }
}
