//! A tiny language for naming groups: atoms joined by `x` (direct product).
//!
//! Atoms: `a4`, `s4`, `a5`, `sl2_3`, `sl2_5`, `gl2_3`, `sl2_z4`, `gl2_z4`,
//! `q8`, `c<N>` and `heis_<p>` (the projective Heisenberg image, `p` = 3 or 5).

use super::groups::{alternating4, alternating5, cyclic, gl2, product, quaternion8, sl2, symmetric4};
use super::heisenberg::{heisenberg_verify, HeisenbergOptions};
use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    A4,
    S4,
    A5,
    Sl2(u32),
    Gl2(u32),
    Q8,
    Cyclic(u32),
    Heisenberg(u32),
}

fn parse_atom(s: &str) -> Result<Atom> {
    let bad = || Error::InvalidInput(format!("unknown group atom {s:?}"));
    Ok(match s {
        "a4" => Atom::A4,
        "s4" => Atom::S4,
        "a5" => Atom::A5,
        "sl2_3" => Atom::Sl2(3),
        "sl2_5" => Atom::Sl2(5),
        "gl2_3" => Atom::Gl2(3),
        "sl2_z4" => Atom::Sl2(4),
        "gl2_z4" => Atom::Gl2(4),
        "q8" => Atom::Q8,
        _ => {
            if let Some(k) = s.strip_prefix("heis_") {
                Atom::Heisenberg(k.parse().map_err(|_| bad())?)
            } else if let Some(k) = s.strip_prefix('c') {
                let k: u32 = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                Atom::Cyclic(k)
            } else {
                return Err(bad());
            }
        }
    })
}

/// Splits `a4 x c2` into atoms. Case and spacing are ignored.
pub fn parse_recipe(recipe: &str) -> Result<Vec<Atom>> {
    let lower = recipe.to_ascii_lowercase();
    let atoms: Vec<&str> = lower.split('x').map(str::trim).collect();
    if atoms.iter().any(|a| a.is_empty()) {
        return Err(Error::InvalidInput(format!("malformed recipe {recipe:?}")));
    }
    atoms.into_iter().map(parse_atom).collect()
}

pub fn build_atom(atom: &Atom) -> Result<FiniteGroup> {
    Ok(match *atom {
        Atom::A4 => alternating4()?.into_group(),
        Atom::S4 => symmetric4()?.into_group(),
        Atom::A5 => alternating5()?.into_group(),
        Atom::Sl2(m) => sl2(m)?.into_group(),
        Atom::Gl2(m) => gl2(m)?.into_group(),
        Atom::Q8 => quaternion8()?.into_group(),
        Atom::Cyclic(k) => cyclic(k)?,
        Atom::Heisenberg(p) => heisenberg_verify(p, HeisenbergOptions::default())?.image.into_group(),
    })
}

pub fn build_recipe(recipe: &str) -> Result<FiniteGroup> {
    let atoms = parse_recipe(recipe)?;
    let mut it = atoms.iter();
    let first = build_atom(it.next().expect("at least one atom"))?;
    it.try_fold(first, |acc, a| Ok(product(&acc, &build_atom(a)?)))
}
