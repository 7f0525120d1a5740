//! Explicit models of the extensions `1 → N → G → P → 1` of the polyhedral
//! groups by `N ∈ {1, C_2, C_2^2}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gl2z4::{klein_by_s4_through_s3, H_GENERATORS};
use super::groups::{
    affine_group, alternating4, alternating5, binary_octahedral, conjugation_semidirect, cyclic, cyclic_extension,
    gl2, klein4, product, residue_group, sl2, symmetric4,
};
use crate::chartab::{character_table, rdim_rational_lower, rdim_split, CharacterTable, RdimWitness};
use crate::error::{Error, Result};
use crate::exact::ResidueMatrix;
use crate::fingroup::{
    fingerprint, is_isomorphic, normal_subgroups_of_order, quotient_group, FiniteGroup, GroupFingerprint, Quotient,
    Subgroup,
};
use crate::fixtures::{table2_reference, Table2Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NType {
    Trivial,
    C2,
    C2Squared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PType {
    A4,
    S4,
    A5,
}

impl NType {
    pub fn order(self) -> usize {
        match self {
            NType::Trivial => 1,
            NType::C2 => 2,
            NType::C2Squared => 4,
        }
    }

    pub fn model(self) -> Result<FiniteGroup> {
        match self {
            NType::Trivial => cyclic(1),
            NType::C2 => cyclic(2),
            NType::C2Squared => klein4(),
        }
    }

    pub const ALL: [NType; 3] = [NType::Trivial, NType::C2, NType::C2Squared];
}

impl PType {
    pub fn order(self) -> usize {
        match self {
            PType::A4 => 12,
            PType::S4 => 24,
            PType::A5 => 60,
        }
    }

    pub fn model(self) -> Result<FiniteGroup> {
        Ok(match self {
            PType::A4 => alternating4()?.into_group(),
            PType::S4 => symmetric4()?.into_group(),
            PType::A5 => alternating5()?.into_group(),
        })
    }

    pub const ALL: [PType; 3] = [PType::A4, PType::S4, PType::A5];
}

impl fmt::Display for NType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NType::Trivial => "1",
            NType::C2 => "C2",
            NType::C2Squared => "C2^2",
        })
    }
}

impl fmt::Display for PType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PType::A4 => "A4",
            PType::S4 => "S4",
            PType::A5 => "A5",
        })
    }
}

impl FromStr for NType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(' ', "").as_str() {
            "1" | "trivial" => Ok(NType::Trivial),
            "c2" => Ok(NType::C2),
            "c2c2" | "c2^2" | "c2xc2" | "v4" => Ok(NType::C2Squared),
            _ => Err(Error::InvalidInput(format!("unknown N-type {s:?} (expected 1, c2 or c2c2)"))),
        }
    }
}

impl FromStr for PType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a4" => Ok(PType::A4),
            "s4" => Ok(PType::S4),
            "a5" => Ok(PType::A5),
            _ => Err(Error::InvalidInput(format!("unknown P-type {s:?} (expected a4, s4 or a5)"))),
        }
    }
}

/// The model used for each catalog name.
pub fn recipe_of(name: &str) -> Option<&'static str> {
    Some(match name {
        "A4" => "permutations <(1 2 3), (1 2)(3 4)>",
        "S4" => "permutations <(1 2 3 4), (1 2)>",
        "A5" => "permutations <(1 2 3 4 5), (1 2 3)>",
        "A4 x C2" => "A4 x C2",
        "~A4" => "SL2(F3)",
        "S4 x C2" => "S4 x C2",
        "~S4+" => "GL2(F3)",
        "~S4-" => "unit quaternions <(1+i)/sqrt2, (1+i+j+k)/2> over Q(zeta8)",
        "SL2(Z/4)" => "SL2(Z/4)",
        "A5 x C2" => "A5 x C2",
        "~A5" => "SL2(F5)",
        "A4 x C2^2" => "A4 x C2 x C2",
        "~A4 x C2" => "SL2(F3) x C2",
        "C2^2 : A4" => "Klein subgroup of A4 by A4, conjugation",
        "C4^2 : C3" => "(Z/4)^2 by <[[3,3],[1,0]]>",
        "S4 x C2^2" => "S4 x C2 x C2",
        "~S4+ x C2" => "GL2(F3) x C2",
        "~S4- x C2" => "binary octahedral x C2",
        "SL2(Z/4) x C2" => "SL2(Z/4) x C2",
        "~A4 : C4" => "SL2(F3) by C4, generator conjugating by diag(1,-1)",
        "~S4+ : C2" => "GL2(F3) by C2, M -> det(M) M",
        "GL2(Z/4)" => "GL2(Z/4)",
        "C2^2 : S4" => "Klein subgroup of S4 by S4, conjugation",
        "C4^2 : S3" => "(Z/4)^2 by <[[0,1],[1,0]], [[3,3],[1,0]]>",
        "A5 x C2^2" => "A5 x C2 x C2",
        "~A5 x C2" => "SL2(F5) x C2",
        _ => return None,
    })
}

fn klein_in(g: &FiniteGroup) -> Vec<usize> {
    // the elements of order at most 2 in A4 or the even ones in S4
    let mut v: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) <= 2).collect();
    if v.len() > 4 {
        let a = g.derived_subgroup();
        v.retain(|x| a.binary_search(x).is_ok());
    }
    v
}

fn det_twist(g: &crate::fingroup::ConcreteGroup<ResidueMatrix>) -> Result<Vec<usize>> {
    g.elements()
        .iter()
        .map(|m| {
            let d = m.det()? as i64;
            let twisted = ResidueMatrix::scalar(m.modulus(), 2, d).mul(m)?;
            g.id_of(&twisted).ok_or_else(|| Error::Verification("det twist leaves the group".into()))
        })
        .collect()
}

/// Builds the catalog group with the given name.
pub fn build_group(name: &str) -> Result<FiniteGroup> {
    let c2 = || cyclic(2);
    let a4 = || Ok::<_, Error>(alternating4()?.into_group());
    let s4 = || Ok::<_, Error>(symmetric4()?.into_group());
    let a5 = || Ok::<_, Error>(alternating5()?.into_group());
    let g = |r: Result<crate::fingroup::ConcreteGroup<ResidueMatrix>>| r.map(|c| c.into_group());
    Ok(match name {
        "A4" => a4()?,
        "S4" => s4()?,
        "A5" => a5()?,
        "A4 x C2" => product(&a4()?, &c2()?),
        "~A4" => g(sl2(3))?,
        "S4 x C2" => product(&s4()?, &c2()?),
        "~S4+" => g(gl2(3))?,
        "~S4-" => binary_octahedral()?.into_group(),
        "SL2(Z/4)" => g(sl2(4))?,
        "A5 x C2" => product(&a5()?, &c2()?),
        "~A5" => g(sl2(5))?,
        "A4 x C2^2" => product(&a4()?, &klein4()?),
        "~A4 x C2" => product(&g(sl2(3))?, &c2()?),
        "C2^2 : A4" => {
            let a = a4()?;
            conjugation_semidirect(&a, &klein_in(&a))?
        }
        "C4^2 : C3" => affine_group(4, &residue_group(4, &[H_GENERATORS[1]])?)?,
        "S4 x C2^2" => product(&s4()?, &klein4()?),
        "~S4+ x C2" => product(&g(gl2(3))?, &c2()?),
        "~S4- x C2" => product(&*binary_octahedral()?, &c2()?),
        "SL2(Z/4) x C2" => product(&g(sl2(4))?, &c2()?),
        "~A4 : C4" => {
            let sl = sl2(3)?;
            let d = ResidueMatrix::new(3, 2, 2, &[1, 0, 0, 2])?;
            let phi = sl
                .elements()
                .iter()
                .map(|m| sl.id_of(&d.mul(m)?.mul(&d)?).ok_or(Error::NotNormal))
                .collect::<Result<Vec<_>>>()?;
            cyclic_extension(&sl, 4, &phi)?
        }
        "~S4+ : C2" => {
            let gl = gl2(3)?;
            let phi = det_twist(&gl)?;
            cyclic_extension(&gl, 2, &phi)?
        }
        "GL2(Z/4)" => g(gl2(4))?,
        "C2^2 : S4" => klein_by_s4_through_s3()?,
        "C4^2 : S3" => affine_group(4, &residue_group(4, &H_GENERATORS)?)?,
        "A5 x C2^2" => product(&a5()?, &klein4()?),
        "~A5 x C2" => product(&g(sl2(5))?, &c2()?),
        _ => return Err(Error::InvalidInput(format!("no catalog group named {name:?}"))),
    })
}

/// Whether some normal subgroup of `g` is isomorphic to the N-type with
/// quotient isomorphic to the P-type.
pub fn verify_extension(g: &FiniteGroup, n: NType, p: PType) -> Result<bool> {
    Ok(extension_kernel(g, n, p)?.is_some())
}

/// A normal subgroup witnessing the extension, with its quotient.
pub fn extension_kernel(g: &FiniteGroup, n: NType, p: PType) -> Result<Option<(Subgroup, Quotient)>> {
    if g.order() != n.order() * p.order() {
        return Ok(None);
    }
    let n_model = n.model()?;
    let p_model = p.model()?;
    for cand in normal_subgroups_of_order(g, n.order()) {
        if !is_isomorphic(&cand.materialize(g), &n_model)?.is_isomorphic() {
            continue;
        }
        let q = quotient_group(g, &cand)?;
        if is_isomorphic(&q.group, &p_model)?.is_isomorphic() {
            return Ok(Some((cand, q)));
        }
    }
    Ok(None)
}

/// Element orders of the preimages of transpositions under an extension of
/// `S_4` by `C_2`.
pub fn transposition_preimage_orders(g: &FiniteGroup) -> Result<BTreeSet<usize>> {
    let (_, q) = extension_kernel(g, NType::C2, PType::S4)?
        .ok_or_else(|| Error::InvalidInput("not an extension of S4 by C2".into()))?;
    let s4 = &q.group;
    let even = s4.derived_subgroup();
    let transposition = |x: usize| s4.element_order(x) == 2 && even.binary_search(&x).is_err();
    Ok((0..g.order()).filter(|&x| transposition(q.projection[x])).map(|x| g.element_order(x)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedExtension {
    pub order: usize,
    pub fingerprint: GroupFingerprint,
    pub extension_verified: bool,
    pub rdim_split: RdimWitness,
    pub rdim_rational_lower: RdimWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    pub name: String,
    pub n_type: NType,
    pub p_type: PType,
    pub recipe: String,
    pub expected_order: usize,
    pub reference_rdim_q: u64,
    pub reference_rdim_k: u64,
    pub computed: Option<ComputedExtension>,
}

impl ExtensionRecord {
    pub fn from_reference(row: &Table2Row) -> Result<Self> {
        let recipe = recipe_of(&row.name)
            .ok_or_else(|| Error::Fixture(format!("no recipe for {:?}", row.name)))?
            .to_string();
        Ok(ExtensionRecord {
            name: row.name.clone(),
            n_type: row.n_type.parse()?,
            p_type: row.p_type.parse()?,
            recipe,
            expected_order: row.order,
            reference_rdim_q: row.rdim_q,
            reference_rdim_k: row.rdim_k,
            computed: None,
        })
    }
}

/// All catalog entries in reference order, not yet computed.
pub fn catalog_entries() -> Result<Vec<ExtensionRecord>> {
    table2_reference()?.iter().map(ExtensionRecord::from_reference).collect()
}

/// Builds and evaluates one record; `table` supplies character tables
/// (so callers can cache them).
pub fn evaluate_record(
    record: &ExtensionRecord,
    table: impl FnOnce(&FiniteGroup) -> Result<CharacterTable>,
) -> Result<(ExtensionRecord, FiniteGroup)> {
    let g = build_group(&record.name)?;
    if g.order() != record.expected_order {
        return Err(Error::Verification(format!(
            "{}: built order {} differs from {}",
            record.name,
            g.order(),
            record.expected_order
        )));
    }
    let extension_verified = verify_extension(&g, record.n_type, record.p_type)?;
    let t = table(&g)?;
    let split = rdim_split(&g, &t)?;
    let rational = rdim_rational_lower(&g, &t)?;
    let mut out = record.clone();
    out.computed = Some(ComputedExtension {
        order: g.order(),
        fingerprint: fingerprint(&g),
        extension_verified,
        rdim_split: split,
        rdim_rational_lower: rational,
    });
    Ok((out, g))
}

/// Indices of pairs within `groups` that are isomorphic.
pub fn isomorphic_pairs(groups: &[&FiniteGroup]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            if is_isomorphic(groups[i], groups[j])?.is_isomorphic() {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// The computed records of one `(N, P)` block, checked for order, extension
/// structure and pairwise non-isomorphism.
pub fn polyhedral_catalog(n: NType, p: PType) -> Result<Vec<ExtensionRecord>> {
    let entries: Vec<ExtensionRecord> =
        catalog_entries()?.into_iter().filter(|r| r.n_type == n && r.p_type == p).collect();
    let mut records = Vec::with_capacity(entries.len());
    let mut groups = Vec::with_capacity(entries.len());
    for e in &entries {
        let (r, g) = evaluate_record(e, character_table)?;
        if !r.computed.as_ref().is_some_and(|c| c.extension_verified) {
            return Err(Error::Verification(format!("{}: not an extension of {p} by {n}", r.name)));
        }
        records.push(r);
        groups.push(g);
    }
    let refs: Vec<&FiniteGroup> = groups.iter().collect();
    if let Some(&(i, j)) = isomorphic_pairs(&refs)?.first() {
        return Err(Error::Verification(format!("{} and {} are isomorphic", records[i].name, records[j].name)));
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_has_a_recipe() {
        let entries = catalog_entries().unwrap();
        assert_eq!(entries.len(), 26);
        for e in &entries {
            assert!(!e.recipe.is_empty());
        }
    }

    #[test]
    fn small_blocks() {
        let a4 = polyhedral_catalog(NType::Trivial, PType::A4).unwrap();
        assert_eq!(a4.len(), 1);
        assert_eq!(a4[0].computed.as_ref().unwrap().rdim_split.value, 3);
        let c2a4 = polyhedral_catalog(NType::C2, PType::A4).unwrap();
        assert_eq!(c2a4.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(), ["A4 x C2", "~A4"]);
        assert_eq!(c2a4[1].computed.as_ref().unwrap().rdim_split.value, 2);
    }

    #[test]
    fn extension_checks() {
        let gl23 = build_group("~S4+").unwrap();
        assert!(verify_extension(&gl23, NType::C2, PType::S4).unwrap());
        let a4c2 = build_group("A4 x C2").unwrap();
        assert!(!verify_extension(&a4c2, NType::C2, PType::S4).unwrap());
        assert!(verify_extension(&build_group("GL2(Z/4)").unwrap(), NType::C2Squared, PType::S4).unwrap());
    }

    #[test]
    fn stem_covers_of_s4() {
        let plus = transposition_preimage_orders(&build_group("~S4+").unwrap()).unwrap();
        let minus = transposition_preimage_orders(&build_group("~S4-").unwrap()).unwrap();
        assert_eq!(plus.into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(minus.into_iter().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn type_parsing() {
        assert_eq!("c2c2".parse::<NType>().unwrap(), NType::C2Squared);
        assert_eq!("C2^2".parse::<NType>().unwrap(), NType::C2Squared);
        assert_eq!("1".parse::<NType>().unwrap(), NType::Trivial);
        assert_eq!("s4".parse::<PType>().unwrap(), PType::S4);
        assert!("d8".parse::<PType>().is_err());
    }
}
