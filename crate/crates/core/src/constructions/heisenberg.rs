use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::groups::{affine_group, sl2};
use crate::chartab::modp::is_prime;
use crate::error::{Error, Result};
use crate::exact::{CyclotomicNumber, ExactMatrix, ResidueMatrix};
use crate::fingroup::{closure_with_cap, is_isomorphic, quotient_group, ConcreteGroup, Subgroup};

/// Largest projective image handled without the opt-in.
pub const HEISENBERG_GUARD: usize = 10_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct HeisenbergOptions {
    /// allow `p = 7` (image order 16464)
    pub allow_large: bool,
    /// also compare the image with `(C_p)^2 ⋊ SL_2(F_p)` by isomorphism search
    pub check_semidirect: bool,
}

/// Summary of the checks, free of the matrices themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergSummary {
    pub p: u32,
    pub relations: Vec<(String, bool)>,
    pub image_order: usize,
    pub expected_order: usize,
    pub rho_f: [u32; 4],
    pub rho_v: [u32; 4],
    pub rho_image_order: usize,
    pub kernel_order: usize,
    pub span_rank: usize,
    pub quotient_is_sl2: bool,
    pub semidirect_isomorphic: Option<bool>,
}

pub struct HeisenbergData {
    pub p: u32,
    pub p_mat: ExactMatrix,
    pub d_mat: ExactMatrix,
    pub f_mat: ExactMatrix,
    pub v_mat: ExactMatrix,
    /// projective image of `<P, D, F, V>`, canonical representatives
    pub image: ConcreteGroup<ExactMatrix>,
    /// `rho[g]` is the action of `g` on `<P, D>/scalars ≅ F_p^2`
    pub rho: Vec<ResidueMatrix>,
    pub summary: HeisenbergSummary,
}

/// Exponent `v(i, j) = (i-j)(j-i-1)/2 mod p`.
pub fn v_exponent(i: i64, j: i64, p: i64) -> i64 {
    ((i - j) * (j - i - 1) / 2).rem_euclid(p)
}

/// The four matrices `P, D, F, V` over `Q(ζ_p)`, acting on column vectors.
pub fn heisenberg_matrices(p: u32) -> Result<[ExactMatrix; 4]> {
    let n = p as usize;
    let pi = p as i64;
    let z = |k: i64| CyclotomicNumber::zeta_pow(p, k.rem_euclid(pi));
    let zero = || CyclotomicNumber::zero(p);
    // P e_i = e_{i-1}
    let pm = ExactMatrix::from_fn(n, n, p, |r, c| {
        if (r + 1) % n == c {
            CyclotomicNumber::one(p)
        } else {
            zero()
        }
    })?;
    let dm = ExactMatrix::from_fn(n, n, p, |r, c| if r == c { z(r as i64) } else { zero() })?;
    let fm = ExactMatrix::from_fn(n, n, p, |r, c| z(r as i64 * c as i64))?;
    // V e_i = sum_j ζ^{v(i,j)} e_j
    let vm = ExactMatrix::from_fn(n, n, p, |r, c| z(v_exponent(c as i64, r as i64, pi)))?;
    Ok([pm, dm, fm, vm])
}

fn check_p(p: u32, opts: &HeisenbergOptions) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidInput("p must be an odd prime".into()));
    }
    let order = (p * p * p * (p * p - 1)) as usize;
    if order > HEISENBERG_GUARD && !(opts.allow_large && p == 7) {
        return Err(Error::Guard(order as u64, HEISENBERG_GUARD as u64));
    }
    Ok(())
}

fn relations(p: u32, [pm, dm, fm, vm]: &[ExactMatrix; 4]) -> Result<Vec<(String, bool)>> {
    let n = p as usize;
    let id = ExactMatrix::identity(n, p);
    let pinv = pm.inverse()?;
    let dinv = dm.inverse()?;
    let finv = fm.inverse()?;
    let vinv = vm.inverse()?;
    let zeta_i = ExactMatrix::scalar(n, &CyclotomicNumber::zeta(p));
    let conj = |a: &ExactMatrix, x: &ExactMatrix, ainv: &ExactMatrix| a.mul(x)?.mul(ainv);
    Ok(vec![
        ("P^p = I".into(), pm.pow(p as i64)? == id),
        ("D^p = I".into(), dm.pow(p as i64)? == id),
        ("P D P^-1 D^-1 = zeta I".into(), pm.mul(dm)?.mul(&pinv)?.mul(&dinv)? == zeta_i),
        ("F P F^-1 = D^-1".into(), conj(fm, pm, &finv)? == dinv),
        ("F D F^-1 = P".into(), conj(fm, dm, &finv)? == *pm),
        ("V P V^-1 = P".into(), conj(vm, pm, &vinv)? == *pm),
        ("V D V^-1 = D P".into(), conj(vm, dm, &vinv)? == dm.mul(pm)?),
    ])
}

/// Builds the Heisenberg matrices for `p`, checks their relations exactly,
/// closes their projective image and verifies the conjugation map onto
/// `SL_2(F_p)`.
pub fn heisenberg_verify(p: u32, opts: HeisenbergOptions) -> Result<HeisenbergData> {
    check_p(p, &opts)?;
    let mats = heisenberg_matrices(p)?;
    let rels = relations(p, &mats)?;
    if let Some((name, _)) = rels.iter().find(|(_, ok)| !ok) {
        return Err(Error::Verification(format!("relation {name} fails")));
    }
    let [pm, dm, fm, vm] = mats;
    let pi = p as i64;
    let n = p as usize;

    let gens = [&pm, &dm, &fm, &vm].map(|m| m.canonical_projective()).into_iter().collect::<Result<Vec<_>>>()?;
    let expected = (p * p * p * (p * p - 1)) as usize;
    let image = closure_with_cap(
        &gens,
        ExactMatrix::identity(n, p),
        |a, b| a.mul(b)?.canonical_projective(),
        expected + 1,
    )?;
    if image.order() != expected {
        return Err(Error::Verification(format!("projective image has order {}, expected {expected}", image.order())));
    }

    // projective classes of P^a D^b
    let mut coords: HashMap<ExactMatrix, (i64, i64)> = HashMap::new();
    let mut basis = Vec::with_capacity(n * n);
    for a in 0..pi {
        for b in 0..pi {
            let m = pm.pow(a)?.mul(&dm.pow(b)?)?;
            coords.insert(m.canonical_projective()?, (a, b));
            basis.push(m);
        }
    }
    let span = ExactMatrix::from_entries(
        n * n,
        n * n,
        p,
        basis.iter().flat_map(|m| m.entries().iter().cloned()).collect(),
    )?;
    let span_rank = span.rank();
    if span_rank != n * n {
        return Err(Error::Verification(format!("P^a D^b span rank {span_rank}")));
    }

    let locate = |m: ExactMatrix| -> Result<(i64, i64)> {
        coords
            .get(&m.canonical_projective()?)
            .copied()
            .ok_or_else(|| Error::Verification("conjugate leaves <P, D>".into()))
    };
    let mut rho = Vec::with_capacity(image.order());
    for g in image.elements() {
        let ginv = g.inverse()?;
        let (a, c) = locate(g.mul(&pm)?.mul(&ginv)?)?;
        let (b, d) = locate(g.mul(&dm)?.mul(&ginv)?)?;
        rho.push(ResidueMatrix::new(p, 2, 2, &[a, b, c, d])?);
    }
    // a map agreeing with right multiplication by generators is a homomorphism
    for (k, &gen) in image.generators().iter().enumerate() {
        let table = image.right_action(k);
        for x in 0..image.order() {
            if rho[table[x] as usize] != rho[x].mul(&rho[gen])? {
                return Err(Error::Verification("rho is not multiplicative".into()));
            }
        }
    }
    if rho.iter().any(|m| m.det() != Ok(1)) {
        return Err(Error::Verification("rho leaves SL_2".into()));
    }
    let rho_f = rho[image.id_of(&fm.canonical_projective()?).expect("generator")].entries().try_into().unwrap();
    let rho_v = rho[image.id_of(&vm.canonical_projective()?).expect("generator")].entries().try_into().unwrap();
    if rho_f != [0, 1, p - 1, 0] || rho_v != [1, 1, 0, 1] {
        return Err(Error::Verification(format!("rho(F) = {rho_f:?}, rho(V) = {rho_v:?}")));
    }
    let mut distinct = rho.clone();
    distinct.sort();
    distinct.dedup();
    let rho_image_order = distinct.len();

    let id2 = ResidueMatrix::identity(p, 2);
    let kernel: Vec<usize> = (0..image.order()).filter(|&x| rho[x] == id2).collect();
    let n_members: Vec<usize> = coords.keys().map(|m| image.id_of(m).expect("P^a D^b lies in the image")).collect();
    let mut n_sorted = n_members.clone();
    n_sorted.sort_unstable();
    if kernel != n_sorted {
        return Err(Error::Verification("ker rho differs from <P, D>".into()));
    }
    let sl = sl2(p)?;
    if rho_image_order != sl.order() {
        return Err(Error::Verification(format!("rho has image of order {rho_image_order}")));
    }
    let nsub = Subgroup::from_members(&image, kernel.clone())?;
    let q = quotient_group(&image, &nsub)?;
    let quotient_is_sl2 = is_isomorphic(&q.group, &sl)?.is_isomorphic();
    if !quotient_is_sl2 {
        return Err(Error::Verification("image/<P, D> is not SL_2(F_p)".into()));
    }
    let semidirect_isomorphic = if opts.check_semidirect {
        let model = affine_group(p, &sl)?;
        Some(is_isomorphic(&image, &model)?.is_isomorphic())
    } else {
        None
    };

    let summary = HeisenbergSummary {
        p,
        relations: rels,
        image_order: image.order(),
        expected_order: expected,
        rho_f,
        rho_v,
        rho_image_order,
        kernel_order: kernel.len(),
        span_rank,
        quotient_is_sl2,
        semidirect_isomorphic,
    };
    Ok(HeisenbergData { p, p_mat: pm, d_mat: dm, f_mat: fm, v_mat: vm, image, rho, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_full() {
        let h = heisenberg_verify(3, HeisenbergOptions { check_semidirect: true, ..Default::default() }).unwrap();
        assert_eq!(h.summary.image_order, 216);
        assert!(h.summary.relations.iter().all(|(_, ok)| *ok));
        assert_eq!(h.summary.relations.len(), 7);
        assert_eq!(h.summary.kernel_order, 9);
        assert_eq!(h.summary.semidirect_isomorphic, Some(true));
        let comm = h.p_mat.mul(&h.d_mat).unwrap().mul(&h.p_mat.inverse().unwrap()).unwrap().mul(&h.d_mat.inverse().unwrap()).unwrap();
        assert_eq!(comm.as_scalar(), Some(CyclotomicNumber::zeta(3)));
    }

    #[test]
    fn v_is_integral_exponent() {
        for p in [3i64, 5, 7] {
            for i in 0..p {
                for j in 0..p {
                    assert_eq!((i - j) * (j - i - 1) % 2, 0);
                    assert!((0..p).contains(&v_exponent(i, j, p)));
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(heisenberg_verify(4, Default::default()), Err(Error::InvalidInput(_))));
        assert!(matches!(heisenberg_verify(2, Default::default()), Err(Error::InvalidInput(_))));
        assert!(matches!(heisenberg_verify(7, Default::default()), Err(Error::Guard(..))));
    }
}
