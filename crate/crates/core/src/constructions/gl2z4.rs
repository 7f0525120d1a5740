use serde::{Deserialize, Serialize};

use super::groups::{alternating4, cyclic, cyclic_extension, gl2, klein4, product, sl2, symmetric3, symmetric4};
use crate::error::{Error, Result};
use crate::exact::ResidueMatrix;
use crate::fingroup::{
    is_isomorphic, quotient_group, semidirect_product, Action, ConcreteGroup, FiniteGroup, Perm, Subgroup,
};

pub const H_GENERATORS: [[i64; 4]; 2] = [[0, 1, 1, 0], [3, 3, 1, 0]];
pub const A_MEMBERS: [[i64; 4]; 4] = [[1, 0, 0, 1], [3, 0, 0, 3], [3, 2, 2, 1], [1, 2, 2, 3]];
pub const B_MEMBERS: [[i64; 4]; 4] = [[1, 0, 0, 1], [1, 2, 2, 1], [3, 2, 0, 3], [3, 0, 2, 3]];
pub const N_GENERATORS: [[i64; 4]; 2] = [[3, 3, 1, 0], [3, 2, 0, 3]];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2z4Report {
    pub order: usize,
    pub checks: Vec<(String, bool)>,
    /// whether `GL_2(Z/4)` is isomorphic to `C_2^2 ⋊ S_4` with `S_4` acting
    /// through `S_4 → S_3 = Aut(C_2^2)`
    pub iso_to_s3_action: bool,
    /// the same with `S_4` acting through the sign character
    pub iso_to_sign_action: bool,
}

fn ids(g: &ConcreteGroup<ResidueMatrix>, mats: &[[i64; 4]]) -> Result<Vec<usize>> {
    mats.iter()
        .map(|e| {
            let m = ResidueMatrix::new(4, 2, 2, e)?;
            g.id_of(&m).ok_or_else(|| Error::Verification(format!("{m:?} is not in GL_2(Z/4)")))
        })
        .collect()
}

/// `C_2^2 ⋊ S_4` with `S_4` acting through `S_3`: the normal Klein subgroup
/// of `S_4` acted on by conjugation.
pub fn klein_by_s4_through_s3() -> Result<FiniteGroup> {
    let s4 = symmetric4()?;
    let v: Vec<usize> = s4
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_identity() || (s4.element_order(s4.id_of(p).unwrap()) == 2 && p.sign() == 1))
        .map(|(i, _)| i)
        .collect();
    super::groups::conjugation_semidirect(&s4, &v)
}

/// `C_2^2 ⋊ S_4` with odd permutations swapping two of the three involutions.
pub fn klein_by_s4_sign() -> Result<FiniteGroup> {
    let v = klein4()?;
    let swap = swap_automorphism(&v)?;
    let id: Vec<usize> = (0..4).collect();
    let s4 = symmetric4()?;
    let perms: Vec<Vec<usize>> =
        s4.elements().iter().map(|p| if p.sign() == -1 { swap.clone() } else { id.clone() }).collect();
    let action = Action::new(&v, &s4, perms)?;
    Ok(semidirect_product(&v, &s4, &action)?.into_group())
}

fn swap_automorphism(v: &FiniteGroup) -> Result<Vec<usize>> {
    let gens = v.generators();
    if gens.len() != 2 {
        return Err(Error::Verification("Klein four group needs two generators".into()));
    }
    let (x, y) = (gens[0], gens[1]);
    let mut p: Vec<usize> = (0..4).collect();
    p[x] = y;
    p[y] = x;
    Ok(p)
}

/// `SL_2(Z/4)`'s model `A_4 ⋊ C_4`, the generator of `C_4` acting as
/// conjugation by a transposition.
pub fn a4_by_c4() -> Result<FiniteGroup> {
    let a4 = alternating4()?;
    let t = Perm::from_cycles(4, &[&[1, 2]])?;
    let phi: Vec<usize> = a4
        .elements()
        .iter()
        .map(|x| a4.id_of(&t.then(x).then(&t)).expect("A4 is normal in S4"))
        .collect();
    cyclic_extension(&a4, 4, &phi)
}

/// Materializes `GL_2(Z/4)` and checks the structure of its displayed
/// subgroups.
pub fn gl2z4_structure() -> Result<Gl2z4Report> {
    let g = gl2(4)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));
    check("|GL_2(Z/4)| = 96", g.order() == 96);

    let h = Subgroup::generated_by(&g, &ids(&g, &H_GENERATORS)?);
    let a = Subgroup::from_members(&g, ids(&g, &A_MEMBERS)?)?;
    let b = Subgroup::from_members(&g, ids(&g, &B_MEMBERS)?)?;
    let v4 = klein4()?;
    check("H ≅ S_3", is_isomorphic(&h.materialize(&g), &*symmetric3()?)?.is_isomorphic());
    check("A ≅ C_2^2", is_isomorphic(&a.materialize(&g), &v4)?.is_isomorphic());
    check("B ≅ C_2^2", is_isomorphic(&b.materialize(&g), &v4)?.is_isomorphic());
    let normalizes = |by: &Subgroup, of: &Subgroup| {
        by.members().iter().all(|&x| of.members().iter().all(|&y| of.contains(g.conjugate(y, x))))
    };
    check("H normalizes A", normalizes(&h, &a));
    check("H normalizes B", normalizes(&h, &b));
    check(
        "A and B commute",
        a.members().iter().all(|&x| b.members().iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    );
    let hb_gens: Vec<usize> = h.generators().iter().chain(b.generators()).copied().collect();
    let hb = Subgroup::generated_by(&g, &hb_gens);
    check("HB ≅ S_4", is_isomorphic(&hb.materialize(&g), &*symmetric4()?)?.is_isomorphic());
    check("HB normalizes A", normalizes(&hb, &a));
    check("A ∩ HB = 1", a.members().iter().filter(|&&x| hb.contains(x)).count() == 1);
    check("A normal in GL_2(Z/4)", g.is_normal(a.members()));

    let n = Subgroup::generated_by(&g, &ids(&g, &N_GENERATORS)?);
    check("N ≅ A_4", is_isomorphic(&n.materialize(&g), &*alternating4()?)?.is_isomorphic());
    check("N ⊆ HB", n.is_subset_of(&hb));
    check("N normal", g.is_normal(n.members()));
    let q = quotient_group(&g, &n)?;
    let c2 = cyclic(2)?;
    let c2cubed = product(&product(&c2, &c2), &c2);
    check("|G/N| = 8", q.group.order() == 8);
    check("G/N is not C_2^3", !is_isomorphic(&q.group, &c2cubed)?.is_isomorphic());
    check("N ∩ A = 1", n.members().iter().filter(|&&x| a.contains(x)).count() == 1);

    let sign = klein_by_s4_sign()?;
    let through_s3 = klein_by_s4_through_s3()?;
    let iso_to_sign_action = is_isomorphic(&g, &sign)?.is_isomorphic();
    let iso_to_s3_action = is_isomorphic(&g, &through_s3)?.is_isomorphic();
    check("GL_2(Z/4) ≅ C_2^2 ⋊ S_4", iso_to_sign_action || iso_to_s3_action);

    let sl = sl2(4)?;
    check("|SL_2(Z/4)| = 48", sl.order() == 48);
    check("SL_2(Z/4) ≅ A_4 ⋊ C_4", is_isomorphic(&sl, &a4_by_c4()?)?.is_isomorphic());

    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::Verification(name.clone()));
    }
    Ok(Gl2z4Report { order: g.order(), checks, iso_to_s3_action, iso_to_sign_action })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure() {
        let r = gl2z4_structure().unwrap();
        assert_eq!(r.order, 96);
        assert!(r.checks.iter().all(|(_, ok)| *ok));
        // HB acts on A fixing -I, so only the sign action can match
        assert!(r.iso_to_sign_action);
        assert!(!r.iso_to_s3_action);
    }

    #[test]
    fn the_two_klein_extensions_differ_in_center() {
        use crate::fingroup::fingerprint;
        assert_eq!(fingerprint(&klein_by_s4_sign().unwrap()).center_order, 2);
        assert_eq!(fingerprint(&klein_by_s4_through_s3().unwrap()).center_order, 1);
        assert_eq!(fingerprint(&gl2(4).unwrap()).center_order, 2);
    }
}
