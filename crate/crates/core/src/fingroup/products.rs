use super::group::{closure, ConcreteGroup, FiniteGroup};
use crate::error::{Error, Result};

/// A homomorphism `H -> Aut(N)`, one id permutation of `N` per element of `H`.
///
/// Construction verifies that every permutation preserves products in `N`
/// and that the assignment is multiplicative: `act(h1 h2) = act(h1) ∘ act(h2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    perms: Vec<Vec<usize>>,
}

impl Action {
    pub fn new(n: &FiniteGroup, h: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != h.order() {
            return Err(Error::InvalidAction(format!("need {} permutations, got {}", h.order(), perms.len())));
        }
        for (k, p) in perms.iter().enumerate() {
            check_automorphism(n, p).map_err(|e| Error::InvalidAction(format!("element {k}: {e}")))?;
        }
        for a in 0..h.order() {
            for b in 0..h.order() {
                let ab = &perms[h.mul(a, b)];
                if (0..n.order()).any(|x| ab[x] != perms[a][perms[b][x]]) {
                    return Err(Error::InvalidAction(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(Action { perms })
    }

    /// Extends images of `h.generators()` along the breadth-first tree of `h`,
    /// then verifies the result.
    pub fn from_generator_images(n: &FiniteGroup, h: &FiniteGroup, images: &[Vec<usize>]) -> Result<Self> {
        if images.len() != h.generators().len() {
            return Err(Error::InvalidAction("one image per generator required".into()));
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n.order()).collect()];
        for x in 1..h.order() {
            let word = h.word(x);
            let (&last, prefix) = word.split_last().expect("non-identity");
            // x = p * g with p the prefix; act(x) = act(p) ∘ act(g)
            let mut p = 0;
            for &k in prefix {
                p = h.right_action(k)[p] as usize;
            }
            let g = &images[last];
            let pp = &perms[p];
            let composed: Vec<usize> = (0..n.order()).map(|y| pp[g[y]]).collect();
            perms.push(composed);
        }
        Self::new(n, h, perms)
    }

    pub fn trivial(n: &FiniteGroup, h: &FiniteGroup) -> Self {
        Action { perms: vec![(0..n.order()).collect(); h.order()] }
    }

    pub fn apply(&self, h: usize, x: usize) -> usize {
        self.perms[h][x]
    }
}

fn check_automorphism(n: &FiniteGroup, p: &[usize]) -> std::result::Result<(), String> {
    if p.len() != n.order() {
        return Err("wrong length".into());
    }
    let mut seen = vec![false; p.len()];
    for &y in p {
        if y >= p.len() || std::mem::replace(&mut seen[y], true) {
            return Err("not a permutation".into());
        }
    }
    for a in 0..n.order() {
        for b in 0..n.order() {
            if p[n.mul(a, b)] != n.mul(p[a], p[b]) {
                return Err("does not preserve products".into());
            }
        }
    }
    Ok(())
}

/// `A × B` on pairs of ids.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> ConcreteGroup<(usize, usize)> {
    let gens: Vec<(usize, usize)> = a
        .generators()
        .iter()
        .map(|&x| (x, 0))
        .chain(b.generators().iter().map(|&y| (0, y)))
        .collect();
    closure(&gens, (0, 0), |p, q| Ok((a.mul(p.0, q.0), b.mul(p.1, q.1)))).expect("direct product closes")
}

/// `N ⋊ H` with product `(n1, h1)(n2, h2) = (n1 · act(h1)(n2), h1 h2)`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &Action) -> Result<ConcreteGroup<(usize, usize)>> {
    if action.perms.len() != h.order() || action.perms.first().map_or(0, |p| p.len()) != n.order() {
        return Err(Error::InvalidAction("action does not match the factors".into()));
    }
    let gens: Vec<(usize, usize)> = n
        .generators()
        .iter()
        .map(|&x| (x, 0))
        .chain(h.generators().iter().map(|&y| (0, y)))
        .collect();
    closure(&gens, (0, 0), |p, q| Ok((n.mul(p.0, action.apply(p.1, q.0)), h.mul(p.1, q.1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::is_isomorphic;

    fn cyclic(k: u32) -> FiniteGroup {
        closure(&[1u32], 0u32, |a, b| Ok((a + b) % k)).unwrap().into_group()
    }

    #[test]
    fn klein_four_as_direct_product() {
        let v = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert_eq!(v.exponent(), 2);
    }

    #[test]
    fn dihedral_as_semidirect() {
        let c5 = cyclic(5);
        let c2 = cyclic(2);
        let inversion: Vec<usize> = (0..5).map(|x| c5.inv(x)).collect();
        let act = Action::from_generator_images(&c5, &c2, &[inversion]).unwrap();
        let d10 = semidirect_product(&c5, &c2, &act).unwrap();
        assert_eq!(d10.order(), 10);
        assert!(!d10.is_abelian());
        assert_eq!(d10.center().len(), 1);
        let trivial = semidirect_product(&c5, &c2, &Action::trivial(&c5, &c2)).unwrap();
        assert!(is_isomorphic(&trivial, &direct_product(&c5, &c2)).unwrap().is_isomorphic());
    }

    #[test]
    fn rejects_bad_actions() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        // a non-automorphism: swap 1 and 2 only
        let bad = vec![0, 2, 1, 3];
        assert!(Action::from_generator_images(&c4, &c2, &[bad]).is_err());
        // an automorphism of order 2 assigned to a generator of order 3
        let c3 = cyclic(3);
        let inv: Vec<usize> = (0..4).map(|x| c4.inv(x)).collect();
        assert!(Action::from_generator_images(&c4, &c3, &[inv]).is_err());
    }
}
