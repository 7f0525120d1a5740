//! Concrete models of the small groups used by the catalog.

use crate::error::{Error, Result};
use crate::exact::{CyclotomicNumber, ExactMatrix, Rational, ResidueMatrix};
use crate::fingroup::{closure, direct_product, semidirect_product, Action, ConcreteGroup, FiniteGroup, Perm};

pub fn cyclic(k: u32) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidInput("cyclic group of order 0".into()));
    }
    Ok(closure(&[1 % k], 0u32, |a, b| Ok((a + b) % k))?.into_group())
}

fn perm_group(n: usize, gens: &[&[&[u32]]]) -> Result<ConcreteGroup<Perm>> {
    let g = gens.iter().map(|c| Perm::from_cycles(n, c)).collect::<Result<Vec<_>>>()?;
    closure(&g, Perm::identity(n), |a, b| Ok(a.then(b)))
}

pub fn alternating4() -> Result<ConcreteGroup<Perm>> {
    perm_group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])
}

pub fn symmetric3() -> Result<ConcreteGroup<Perm>> {
    perm_group(3, &[&[&[1, 2, 3]], &[&[1, 2]]])
}

pub fn symmetric4() -> Result<ConcreteGroup<Perm>> {
    perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]])
}

pub fn alternating5() -> Result<ConcreteGroup<Perm>> {
    perm_group(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])
}

pub fn klein4() -> Result<FiniteGroup> {
    Ok(direct_product(&cyclic(2)?, &cyclic(2)?).into_group())
}

pub fn residue_group(modulus: u32, gens: &[[i64; 4]]) -> Result<ConcreteGroup<ResidueMatrix>> {
    let g = gens.iter().map(|e| ResidueMatrix::new(modulus, 2, 2, e)).collect::<Result<Vec<_>>>()?;
    closure(&g, ResidueMatrix::identity(modulus, 2), |a, b| a.mul(b))
}

/// `SL_2(Z/m)`, generated by the two elementary transvections.
pub fn sl2(m: u32) -> Result<ConcreteGroup<ResidueMatrix>> {
    residue_group(m, &[[1, 1, 0, 1], [1, 0, 1, 1]])
}

/// `GL_2(Z/m)` for `m` a prime power: `SL_2` plus a diagonal unit of
/// maximal order.
pub fn gl2(m: u32) -> Result<ConcreteGroup<ResidueMatrix>> {
    let unit = (2..m as i64).find(|&u| {
        let phi = (1..m as u64).filter(|&x| crate::exact::gcd(x, m as u64) == 1).count() as u64;
        (1..phi).all(|k| pow_mod(u, k, m as i64) != 1) && pow_mod(u, phi, m as i64) == 1
    });
    let mut gens = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    if let Some(u) = unit {
        gens.push([u, 0, 0, 1]);
    }
    residue_group(m, &gens)
}

fn pow_mod(b: i64, e: u64, m: i64) -> i64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

/// The quaternion group as 2×2 matrices over `Q(i)`.
pub fn quaternion8() -> Result<ConcreteGroup<ExactMatrix>> {
    let i = CyclotomicNumber::zeta(4);
    let z = CyclotomicNumber::zero(4);
    let qi = ExactMatrix::from_entries(2, 2, 4, vec![i.clone(), z.clone(), z, -&i])?;
    let qj = ExactMatrix::from_ints(4, &[&[0, 1], &[-1, 0]])?;
    closure(&[qi, qj], ExactMatrix::identity(2, 4), |a, b| a.mul(b))
}

/// The quaternion `a + bi + cj + dk` as `[[a+bi, c+di], [-c+di, a-bi]]`
/// over `Q(ζ_8)`, with `i = ζ_8^2`.
pub fn quaternion_matrix(a: &CyclotomicNumber, b: &CyclotomicNumber, c: &CyclotomicNumber, d: &CyclotomicNumber) -> Result<ExactMatrix> {
    let i = CyclotomicNumber::zeta_pow(8, 2);
    let bi = b.try_mul(&i)?;
    let di = d.try_mul(&i)?;
    ExactMatrix::from_entries(
        2,
        2,
        8,
        vec![a.try_add(&bi)?, c.try_add(&di)?, (-c).try_add(&di)?, a.try_sub(&bi)?],
    )
}

/// The binary octahedral group in the unit quaternions, generated by
/// `(1+i)/√2` and `(1+i+j+k)/2`.
pub fn binary_octahedral() -> Result<ConcreteGroup<ExactMatrix>> {
    let sqrt2 = CyclotomicNumber::zeta(8).try_add(&CyclotomicNumber::zeta_pow(8, -1))?;
    let r = sqrt2.scale(&Rational::new(1, 2));
    let zero = CyclotomicNumber::zero(8);
    let half = CyclotomicNumber::from_rational(8, Rational::new(1, 2));
    let g1 = quaternion_matrix(&r, &r, &zero, &zero)?;
    let g2 = quaternion_matrix(&half, &half, &half, &half)?;
    closure(&[g1, g2], ExactMatrix::identity(2, 8), |a, b| a.mul(b))
}

/// The action of a matrix group on `(Z/m)^2` by matrix-vector products.
/// `n` must be `C_m × C_m` built by [`direct_product`] of two cyclic groups.
fn linear_action(
    n: &ConcreteGroup<(usize, usize)>,
    h: &ConcreteGroup<ResidueMatrix>,
) -> Result<Action> {
    let perms = h
        .elements()
        .iter()
        .map(|m| {
            (0..n.order())
                .map(|x| {
                    let &(a, b) = n.element(x);
                    let w = m.apply(&[a as u32, b as u32]);
                    n.id_of(&(w[0] as usize, w[1] as usize)).ok_or_else(|| Error::InvalidAction("vector out of range".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Action::new(n, h, perms)
}

/// `(Z/m)^2 ⋊ H` for a group `H` of 2×2 matrices mod `m`.
pub fn affine_group(m: u32, h: &ConcreteGroup<ResidueMatrix>) -> Result<FiniteGroup> {
    let cm = cyclic(m)?;
    let n = direct_product(&cm, &cm);
    // ids of the cyclic factor coincide with residues: 0, 1, 2, ... in BFS order
    debug_assert!((0..m as usize).all(|k| cm.pow(cm.generators()[0], k as i64) == k));
    let action = linear_action(&n, h)?;
    Ok(semidirect_product(&n, h, &action)?.into_group())
}

/// `N ⋊ G` where `N` is a normal subgroup of `G` and `G` acts by conjugation.
pub fn conjugation_semidirect(g: &FiniteGroup, n_members: &[usize]) -> Result<FiniteGroup> {
    if !g.is_normal(n_members) {
        return Err(Error::NotNormal);
    }
    let n = g.subgroup(n_members);
    let perms = (0..g.order())
        .map(|h| {
            (0..n.order())
                .map(|x| {
                    // h x h^-1
                    let y = g.conjugate(*n.element(x), g.inv(h));
                    n.id_of(&y).ok_or(Error::NotNormal)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let action = Action::new(&n, g, perms)?;
    Ok(semidirect_product(&n, g, &action)?.into_group())
}

/// `N ⋊ C_k` with the generator of `C_k` acting by the automorphism `phi`
/// of `N`, given on ids.
pub fn cyclic_extension(n: &FiniteGroup, k: u32, phi: &[usize]) -> Result<FiniteGroup> {
    let ck = cyclic(k)?;
    let action = Action::from_generator_images(n, &ck, &[phi.to_vec()])?;
    Ok(semidirect_product(n, &ck, &action)?.into_group())
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).into_group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{fingerprint, is_isomorphic};

    #[test]
    fn orders() {
        assert_eq!(alternating4().unwrap().order(), 12);
        assert_eq!(symmetric4().unwrap().order(), 24);
        assert_eq!(alternating5().unwrap().order(), 60);
        assert_eq!(sl2(3).unwrap().order(), 24);
        assert_eq!(gl2(3).unwrap().order(), 48);
        assert_eq!(sl2(5).unwrap().order(), 120);
        assert_eq!(sl2(4).unwrap().order(), 48);
        assert_eq!(gl2(4).unwrap().order(), 96);
        assert_eq!(quaternion8().unwrap().order(), 8);
        assert_eq!(binary_octahedral().unwrap().order(), 48);
    }

    #[test]
    fn binary_octahedral_is_not_gl23() {
        let bo = binary_octahedral().unwrap();
        let g = gl2(3).unwrap();
        assert_eq!(fingerprint(&bo).center_order, 2);
        // one involution only: -1
        assert_eq!(bo.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert!(!is_isomorphic(&bo, &g).unwrap().is_isomorphic());
    }

    #[test]
    fn affine_orders() {
        let h = residue_group(4, &[[3, 3, 1, 0]]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(affine_group(4, &h).unwrap().order(), 48);
    }
}
