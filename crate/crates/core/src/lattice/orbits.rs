use serde::{Deserialize, Serialize};

use super::build::LatticeAction;
use crate::error::{Error, Result};

/// Largest `d^n` accepted by [`orbits_mod`].
pub const ORBIT_GUARD: u64 = 10_000_000;

/// One orbit of the Weyl group on `L/dL`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// lexicographically smallest member
    pub representative: Vec<u32>,
    pub size: usize,
    /// sorted mixed-radix codes of the members
    pub members: Vec<u32>,
}

/// The orbits of `W` on all `d^n` residue vectors, sorted by
/// (size, representative).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub modulus: u32,
    pub rank: usize,
    pub orbits: Vec<Orbit>,
}

/// Mixed-radix code of a residue vector, first coordinate most significant.
pub fn encode(v: &[u32], d: u32) -> u32 {
    v.iter().fold(0u32, |acc, &x| acc * d + x)
}

pub fn decode(mut code: u32, n: usize, d: u32) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for slot in v.iter_mut().rev() {
        *slot = code % d;
        code /= d;
    }
    v
}

/// Reduces an integer vector modulo `d`.
pub fn reduce(v: &[i64], d: u32) -> Vec<u32> {
    v.iter().map(|&x| x.rem_euclid(d as i64) as u32).collect()
}

fn check_size(n: usize, d: u32) -> Result<u32> {
    let total = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > ORBIT_GUARD {
        return Err(Error::Guard(total, ORBIT_GUARD));
    }
    Ok(total as u32)
}

/// Each generator as a permutation of the residue codes.
pub fn generator_permutations(l: &LatticeAction, d: u32) -> Result<Vec<Vec<u32>>> {
    let n = l.rank();
    let total = check_size(n, d)?;
    Ok(l.generators()
        .iter()
        .map(|g| {
            (0..total)
                .map(|code| {
                    let v = decode(code, n, d);
                    let w: Vec<u32> = (0..n)
                        .map(|i| {
                            let s: i64 = (0..n).map(|j| g[i * n + j] * v[j] as i64).sum();
                            s.rem_euclid(d as i64) as u32
                        })
                        .collect();
                    encode(&w, d)
                })
                .collect()
        })
        .collect())
}

/// Complete orbit decomposition of `L/dL` by breadth-first sweeps.
pub fn orbits_mod(l: &LatticeAction, d: u32) -> Result<OrbitDecomposition> {
    if d < 2 {
        return Err(Error::UnsupportedModulus(d));
    }
    let n = l.rank();
    let total = check_size(n, d)?;
    let perms = generator_permutations(l, d)?;
    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for p in &perms {
                let y = p[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(Orbit { representative: decode(members[0], n, d), size: members.len(), members });
    }
    orbits.sort_by(|a, b| (a.size, &a.representative).cmp(&(b.size, &b.representative)));
    Ok(OrbitDecomposition { modulus: d, rank: n, orbits })
}

impl OrbitDecomposition {
    /// Index of the orbit containing the residue `code`.
    pub fn orbit_of(&self, code: u32) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.binary_search(&code).is_ok())
    }

    pub fn vectors(&self, orbit: usize) -> Vec<Vec<u32>> {
        self.orbits[orbit].members.iter().map(|&c| decode(c, self.rank, self.modulus)).collect()
    }
}

/// The primes whose residue fields decide generation over `Z/dZ`.
pub fn primes_of(d: u32) -> Result<&'static [u32]> {
    match d {
        2 | 4 => Ok(&[2]),
        3 => Ok(&[3]),
        6 => Ok(&[2, 3]),
        _ => Err(Error::UnsupportedModulus(d)),
    }
}

/// Rank over `F_p` of the given vectors.
pub fn rank_mod_p(vectors: &[Vec<u32>], n: usize, p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
    echelon(&mut rows, n, p)
}

/// Row-reduces in place, returning the rank; the first `rank` rows then span
/// the same space.
pub(crate) fn echelon(rows: &mut [Vec<u32>], n: usize, p: u32) -> usize {
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = (1..p).find(|&x| x * rows[r][c] % p == 1).expect("prime field");
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Whether the vectors generate `(Z/dZ)^n`, by reduction to the residue
/// fields: over `Z/p^k` a set generates iff it spans modulo `p`.
pub fn generates_mod(vectors: &[Vec<u32>], n: usize, d: u32) -> Result<bool> {
    Ok(primes_of(d)?.iter().all(|&p| rank_mod_p(vectors, n, p) == n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    #[test]
    fn codes_roundtrip() {
        for code in 0..64 {
            assert_eq!(encode(&decode(code, 3, 4), 4), code);
        }
        assert_eq!(decode(1, 3, 4), vec![0, 0, 1]);
    }

    #[test]
    fn simple_generation() {
        assert!(generates_mod(&[vec![1, 0], vec![0, 1]], 2, 4).unwrap());
        assert!(!generates_mod(&[vec![2, 0], vec![0, 1]], 2, 4).unwrap());
        assert!(!generates_mod(&[vec![2, 0], vec![0, 3]], 2, 6).unwrap());
        assert!(generates_mod(&[vec![1, 0], vec![0, 5]], 2, 6).unwrap());
        assert!(generates_mod(&[vec![1]], 1, 5).is_err());
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let l = build_lattice("A3", None).unwrap();
        let dec = orbits_mod(&l, 4).unwrap();
        assert_eq!(dec.orbits[0].members, vec![0]);
        assert_eq!(dec.orbits.iter().map(|o| o.size).sum::<usize>(), 64);
    }

    #[test]
    fn guard() {
        let l = build_lattice("B", Some(12)).unwrap();
        assert!(matches!(orbits_mod(&l, 4), Err(Error::Guard(..))));
    }
}
