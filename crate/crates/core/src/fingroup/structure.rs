use std::collections::HashMap;

use super::group::{closure, ConcreteGroup, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup of some parent group, stored as sorted parent ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn generated_by(parent: &FiniteGroup, gens: &[usize]) -> Self {
        let (members, generators) = parent.generate(gens);
        Subgroup { members, generators }
    }

    /// Wraps an id set already known to be a subgroup.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let (closed, generators) = parent.generate(&members);
        if closed != members {
            return Err(Error::InvalidInput("id set is not a subgroup".into()));
        }
        Ok(Subgroup { members, generators })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// The subgroup as a group in its own right; element `k` is parent id
    /// `element(k)`.
    pub fn materialize(&self, parent: &FiniteGroup) -> ConcreteGroup<usize> {
        parent.subgroup(&self.generators)
    }
}

/// Minimal normal subgroups, via normal closures of single classes followed
/// by a minimality filter. Sorted by (order, members).
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut candidates: Vec<Vec<usize>> = g
        .conjugacy_classes()
        .iter()
        .skip(1)
        .map(|c| g.normal_closure(&c[..1]))
        .collect();
    candidates.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    candidates.dedup();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let minimal: Vec<&Vec<usize>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.len() < c.len() && subset(d, c)))
        .collect();
    minimal
        .into_iter()
        .map(|m| {
            let (_, generators) = g.generate(m);
            Subgroup { members: m.clone(), generators }
        })
        .collect()
}

/// All normal subgroups of the given order, found as unions of conjugacy
/// classes that contain the identity and are closed under products.
pub fn normal_subgroups_of_order(g: &FiniteGroup, order: usize) -> Vec<Subgroup> {
    let classes = g.conjugacy_classes();
    let mut out = Vec::new();
    let mut chosen = vec![0usize];
    search_unions(g, classes, 1, 1, order, &mut chosen, &mut out);
    out.sort();
    out
}

fn search_unions(
    g: &FiniteGroup,
    classes: &[Vec<usize>],
    next: usize,
    size: usize,
    target: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Subgroup>,
) {
    if size == target {
        let mut members: Vec<usize> = chosen.iter().flat_map(|&c| classes[c].iter().copied()).collect();
        members.sort_unstable();
        let (closed, generators) = g.generate(&members);
        if closed == members {
            out.push(Subgroup { members, generators });
        }
        return;
    }
    for c in next..classes.len() {
        let s = classes[c].len();
        if size + s > target {
            // classes are sorted by size, so later ones are no smaller
            break;
        }
        // element orders in a subgroup divide its order
        if !target.is_multiple_of(g.element_order(classes[c][0])) {
            continue;
        }
        chosen.push(c);
        search_unions(g, classes, c + 1, size + s, target, chosen, out);
        chosen.pop();
    }
}

/// `G/N` with its projection map.
pub struct Quotient {
    pub group: ConcreteGroup<Vec<usize>>,
    /// `projection[x]` is the quotient id of the coset `xN`.
    pub projection: Vec<usize>,
}

/// Forms `G/N`; cosets are interned by their sorted member ids.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !g.is_normal(n.members()) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of: Vec<usize> = vec![usize::MAX; order];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = n.members().iter().map(|&m| g.mul(x, m)).collect();
        c.sort_unstable();
        for &y in &c {
            coset_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    let gens: Vec<Vec<usize>> = g.generators().iter().map(|&x| cosets[coset_of[x]].clone()).collect();
    let group = closure(&gens, cosets[coset_of[0]].clone(), |a, b| {
        Ok(cosets[coset_of[g.mul(a[0], b[0])]].clone())
    })?;
    let mut by_min: HashMap<usize, usize> = HashMap::new();
    for (id, c) in group.elements().iter().enumerate() {
        by_min.insert(c[0], id);
    }
    let projection = (0..order).map(|x| by_min[&cosets[coset_of[x]][0]]).collect();
    Ok(Quotient { group, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{closure, Perm};

    fn sym(n: usize) -> ConcreteGroup<Perm> {
        let cyc: Vec<u32> = (1..=n as u32).collect();
        let gens = [Perm::from_cycles(n, &[&cyc]).unwrap(), Perm::from_cycles(n, &[&[1, 2]]).unwrap()];
        closure(&gens, Perm::identity(n), |a, b| Ok(a.then(b))).unwrap()
    }

    #[test]
    fn s4_normal_structure() {
        let s4 = sym(4);
        let mins = minimal_normal_subgroups(&s4);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        assert_eq!(normal_subgroups_of_order(&s4, 12).len(), 1);
        assert_eq!(normal_subgroups_of_order(&s4, 6).len(), 0);
        let q = quotient_group(&s4, &mins[0]).unwrap();
        assert_eq!(q.group.order(), 6);
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(q.projection[s4.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
            }
        }
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = sym(3);
        let t = Subgroup::generated_by(&s3, &[s3.id_of(&Perm::from_cycles(3, &[&[1, 2]]).unwrap()).unwrap()]);
        assert_eq!(t.order(), 2);
        assert!(matches!(quotient_group(&s3, &t), Err(Error::NotNormal)));
        let whole = Subgroup::generated_by(&s3, s3.generators());
        assert_eq!(quotient_group(&s3, &whole).unwrap().group.order(), 1);
    }

    #[test]
    fn from_members_checks_closure() {
        let s3 = sym(3);
        let c3 = s3.id_of(&Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap()).unwrap();
        assert!(Subgroup::from_members(&s3, vec![0, c3]).is_err());
        assert!(Subgroup::from_members(&s3, (0..6).collect()).is_ok());
    }
}
