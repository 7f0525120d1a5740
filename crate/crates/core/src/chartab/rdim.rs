use serde::{Deserialize, Serialize};

use super::table::CharacterTable;
use crate::error::{Error, Result};
use crate::exact::gcd;
use crate::fingroup::{minimal_normal_subgroups, FiniteGroup};

/// An optimal faithful sum found by the cover search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdimWitness {
    pub value: u64,
    /// Indices of the chosen items: irreducibles for the split value,
    /// Galois orbits for the rational bound.
    pub chosen: Vec<usize>,
    /// Irreducible indices making up the chosen items.
    pub characters: Vec<usize>,
    /// Search nodes visited while proving optimality.
    pub nodes: u64,
}

/// Minimal normal subgroups of `g` expressed as sets of class indices.
pub fn minimal_normal_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    minimal_normal_subgroups(g)
        .iter()
        .map(|m| {
            let mut cs: Vec<usize> = m.members().iter().map(|&x| g.class_of(x)).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect()
}

/// Bitmask of the minimal normal subgroups not contained in the kernel of
/// the given class function.
fn cover_mask(kernel: &[bool], mins: &[Vec<usize>]) -> u64 {
    mins.iter()
        .enumerate()
        .filter(|(_, m)| m.iter().any(|&c| !kernel[c]))
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

fn kernel_flags(table: &CharacterTable, chars: &[usize]) -> Vec<bool> {
    (0..table.num_classes())
        .map(|c| {
            chars.iter().all(|&i| {
                let v = &table.irreducibles[i].values;
                v[c] == v[0]
            })
        })
        .collect()
}

struct Item {
    degree: u64,
    cover: u64,
}

/// Exact minimum-degree cover with lexicographically smallest optimal index set.
fn solve(items: &[Item], full: u64) -> (u64, Vec<usize>, u64) {
    if full == 0 {
        return (0, Vec::new(), 0);
    }
    // candidate lists per subgroup, cheapest first
    let nbits = 64 - full.leading_zeros() as usize;
    let by_bit: Vec<Vec<usize>> = (0..nbits)
        .map(|b| {
            let mut v: Vec<usize> = (0..items.len()).filter(|&i| items[i].cover >> b & 1 == 1).collect();
            v.sort_by_key(|&i| (items[i].degree, i));
            v
        })
        .collect();
    let mut best = u64::MAX;
    let mut nodes = 0u64;
    branch(items, &by_bit, full, 0, &mut best, &mut nodes);

    // recover the lexicographically smallest optimum
    let mut suffix = vec![0u64; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] | items[i].cover;
    }
    let mut chosen = Vec::new();
    let found = lex_first(items, &suffix, 0, full, best, &mut chosen, &mut nodes);
    debug_assert!(found);
    (best, chosen, nodes)
}

fn branch(items: &[Item], by_bit: &[Vec<usize>], uncovered: u64, cost: u64, best: &mut u64, nodes: &mut u64) {
    *nodes += 1;
    if uncovered == 0 {
        *best = (*best).min(cost);
        return;
    }
    // admissible bound: any completion pays at least the cheapest item
    // covering some remaining subgroup
    let bound = (0..by_bit.len())
        .filter(|&b| uncovered >> b & 1 == 1)
        .map(|b| by_bit[b].first().map_or(u64::MAX, |&i| items[i].degree))
        .min()
        .unwrap_or(u64::MAX);
    if cost.saturating_add(bound) >= *best {
        return;
    }
    let b = uncovered.trailing_zeros() as usize;
    for &i in &by_bit[b] {
        let c = cost + items[i].degree;
        if c >= *best {
            break;
        }
        branch(items, by_bit, uncovered & !items[i].cover, c, best, nodes);
    }
}

fn lex_first(
    items: &[Item],
    suffix: &[u64],
    i: usize,
    uncovered: u64,
    budget: u64,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if uncovered == 0 {
        return budget == 0;
    }
    if i == items.len() || uncovered & !suffix[i] != 0 {
        return false;
    }
    if items[i].degree <= budget && items[i].cover & uncovered != 0 {
        chosen.push(i);
        if lex_first(items, suffix, i + 1, uncovered & !items[i].cover, budget - items[i].degree, chosen, nodes) {
            return true;
        }
        chosen.pop();
    }
    lex_first(items, suffix, i + 1, uncovered, budget, chosen, nodes)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_width(mins: &[Vec<usize>]) -> Result<()> {
    if mins.len() > 64 {
        return Err(Error::InvalidInput(format!("{} minimal normal subgroups exceed the solver width", mins.len())));
    }
    Ok(())
}

/// Smallest degree of a faithful character over a splitting field, with the
/// lexicographically first optimal set of irreducibles.
///
/// For the trivial group the answer is the trivial character.
pub fn rdim_split(g: &FiniteGroup, table: &CharacterTable) -> Result<RdimWitness> {
    let mins = minimal_normal_classes(g);
    rdim_split_with(table, &mins)
}

pub fn rdim_split_with(table: &CharacterTable, mins: &[Vec<usize>]) -> Result<RdimWitness> {
    check_width(mins)?;
    if mins.is_empty() {
        return Ok(RdimWitness { value: 1, chosen: vec![0], characters: vec![0], nodes: 0 });
    }
    let items: Vec<Item> = (0..table.irreducibles.len())
        .map(|i| Item { degree: table.irreducibles[i].degree(), cover: cover_mask(&kernel_flags(table, &[i]), mins) })
        .collect();
    let full = full_mask(mins.len());
    let (value, chosen, nodes) = solve(&items, full);
    Ok(RdimWitness { value, characters: chosen.clone(), chosen, nodes })
}

/// Orbits of the Galois group of `Q(ζ_e)` on the irreducibles, each sorted,
/// listed by smallest member.
pub fn galois_orbits(table: &CharacterTable) -> Result<Vec<Vec<usize>>> {
    let e = table.exponent as u64;
    let n = table.irreducibles.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = vec![i];
        orbit_of[i] = orbits.len();
        for k in (1..e.max(2)).filter(|&k| gcd(k, e) == 1) {
            let image = table.irreducibles[i]
                .values
                .iter()
                .map(|v| v.galois(k as i64))
                .collect::<Result<Vec<_>>>()?;
            let j = table
                .irreducibles
                .iter()
                .position(|c| c.values == image)
                .ok_or_else(|| Error::CorruptTable("Galois image is not a character".into()))?;
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = orbits.len();
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Lower bound for the rational representation dimension: the same cover
/// problem over sums of Galois orbits (every rational character is such a
/// sum, up to Schur index multiplicities which can only increase it).
pub fn rdim_rational_lower(g: &FiniteGroup, table: &CharacterTable) -> Result<RdimWitness> {
    let mins = minimal_normal_classes(g);
    rdim_rational_lower_with(table, &mins)
}

pub fn rdim_rational_lower_with(table: &CharacterTable, mins: &[Vec<usize>]) -> Result<RdimWitness> {
    check_width(mins)?;
    let orbits = galois_orbits(table)?;
    if mins.is_empty() {
        return Ok(RdimWitness { value: 1, chosen: vec![0], characters: vec![0], nodes: 0 });
    }
    let items: Vec<Item> = orbits
        .iter()
        .map(|o| Item {
            degree: o.iter().map(|&i| table.irreducibles[i].degree()).sum(),
            cover: cover_mask(&kernel_flags(table, o), mins),
        })
        .collect();
    let full = full_mask(mins.len());
    let (value, chosen, nodes) = solve(&items, full);
    let mut characters: Vec<usize> = chosen.iter().flat_map(|&o| orbits[o].iter().copied()).collect();
    characters.sort_unstable();
    Ok(RdimWitness { value, chosen, characters, nodes })
}

/// Whether the sum of the given irreducibles is faithful.
pub fn is_faithful(table: &CharacterTable, chars: &[usize]) -> bool {
    kernel_flags(table, chars).iter().skip(1).all(|&k| !k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::fingroup::{closure, Perm};

    fn cyclic(k: u32) -> FiniteGroup {
        closure(&[1u32], 0u32, |a, b| Ok((a + b) % k)).unwrap().into_group()
    }

    fn perms(n: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        let g: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        closure(&g, Perm::identity(n), |a, b| Ok(a.then(b))).unwrap().into_group()
    }

    #[test]
    fn cyclic_groups() {
        for (k, split, rational) in [(2, 1, 1), (3, 1, 2), (4, 1, 2), (5, 1, 4), (6, 1, 2)] {
            let g = cyclic(k);
            let t = character_table(&g).unwrap();
            assert_eq!(rdim_split(&g, &t).unwrap().value, split, "C{k}");
            assert_eq!(rdim_rational_lower(&g, &t).unwrap().value, rational, "C{k}");
        }
    }

    #[test]
    fn klein_four_needs_two() {
        let v = perms(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        let t = character_table(&v).unwrap();
        let w = rdim_split(&v, &t).unwrap();
        assert_eq!(w.value, 2);
        assert!(is_faithful(&t, &w.characters));
        assert_eq!(w.characters, vec![1, 2]);
    }

    #[test]
    fn polyhedral_values() {
        let a4 = perms(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let s4 = perms(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let a5 = perms(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]]);
        for (g, split, rational) in [(a4, 3, 3), (s4, 3, 3), (a5, 3, 4)] {
            let t = character_table(&g).unwrap();
            assert_eq!(rdim_split(&g, &t).unwrap().value, split);
            assert_eq!(rdim_rational_lower(&g, &t).unwrap().value, rational);
        }
    }

    #[test]
    fn lexicographic_tie_break() {
        // two items of equal degree both covering everything: pick index 0
        let items = vec![Item { degree: 2, cover: 0b11 }, Item { degree: 1, cover: 0b01 }, Item { degree: 1, cover: 0b10 }];
        let (v, chosen, _) = solve(&items, 0b11);
        assert_eq!(v, 2);
        assert_eq!(chosen, vec![0]);
    }
}
