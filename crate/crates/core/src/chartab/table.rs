use serde::{Deserialize, Serialize};

use super::modp::{inv_mod, is_prime, nullspace, pow_mod, primitive_root, rref};
use crate::error::{Error, Result};
use crate::exact::{CyclotomicNumber, Rational};
use crate::fingroup::{fingerprint, FiniteGroup, GroupFingerprint};

/// Largest group order accepted by [`character_table`].
pub const TABLE_ORDER_CAP: usize = 10_000;

const PRIME_BOUND: u64 = 1_000_000;

/// An irreducible character, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<CyclotomicNumber>,
}

impl Character {
    pub fn degree(&self) -> u64 {
        self.values[0]
            .to_rational()
            .and_then(|r| r.to_i64())
            .expect("degree is an integer") as u64
    }

    /// Classes on which the character takes its degree value.
    pub fn kernel_classes(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| self.values[c] == self.values[0]).collect()
    }
}

/// A character table together with the class data it was computed against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub order: usize,
    pub fingerprint: GroupFingerprint,
    pub exponent: u32,
    /// prime used for the modular phase
    pub prime: u64,
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub square_class: Vec<usize>,
    pub irreducibles: Vec<Character>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    /// Checks the table exactly: shape, integrality, `Σ d² = |G|`, and both
    /// orthogonality relations.
    pub fn validate(&self) -> Result<()> {
        let k = self.num_classes();
        let corrupt = |m: &str| Err(Error::CorruptTable(m.to_string()));
        if self.irreducibles.len() != k
            || self.class_reps.len() != k
            || self.class_orders.len() != k
            || self.inverse_class.len() != k
            || self.square_class.len() != k
        {
            return corrupt("class data and characters disagree in length");
        }
        if self.class_sizes.iter().sum::<usize>() != self.order {
            return corrupt("class sizes do not sum to the order");
        }
        if self.inverse_class.iter().chain(&self.square_class).any(|&c| c >= k) {
            return corrupt("class index out of range");
        }
        let e = self.exponent;
        let mut sum_sq = 0u64;
        for chi in &self.irreducibles {
            if chi.values.len() != k || chi.values.iter().any(|v| v.conductor() != e || !v.is_integral()) {
                return corrupt("character values are not integral at the table conductor");
            }
            let d = match chi.values[0].to_rational().and_then(|r| r.to_i64()) {
                Some(d) if d > 0 && self.order as i64 % d == 0 => d as u64,
                _ => return corrupt("degree is not a positive divisor of the order"),
            };
            sum_sq += d * d;
        }
        if sum_sq != self.order as u64 {
            return corrupt("sum of squared degrees differs from the order");
        }
        let n = Rational::from_int(self.order as i64);
        let conj: Vec<Vec<CyclotomicNumber>> = self
            .irreducibles
            .iter()
            .map(|chi| chi.values.iter().map(CyclotomicNumber::conj).collect())
            .collect();
        for i in 0..k {
            for j in i..k {
                let mut acc = CyclotomicNumber::zero(e);
                for c in 0..k {
                    let term = (&self.irreducibles[i].values[c] * &conj[j][c])
                        .scale(&Rational::from_int(self.class_sizes[c] as i64));
                    acc = &acc + &term;
                }
                let want = if i == j { n.clone() } else { Rational::zero() };
                if acc != CyclotomicNumber::from_rational(e, want) {
                    return corrupt("row orthogonality fails");
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let mut acc = CyclotomicNumber::zero(e);
                for (chi, cj) in self.irreducibles.iter().zip(&conj) {
                    acc = &acc + &(&chi.values[c] * &cj[d]);
                }
                let want = if c == d {
                    Rational::new(self.order as i64, self.class_sizes[c] as i64)
                } else {
                    Rational::zero()
                };
                if acc != CyclotomicNumber::from_rational(e, want) {
                    return corrupt("column orthogonality fails");
                }
            }
        }
        Ok(())
    }

    /// Checks that the table's class data describes `g` (used when a table is
    /// read back from storage).
    pub fn matches_group(&self, g: &FiniteGroup) -> bool {
        let classes = g.conjugacy_classes();
        self.order == g.order()
            && self.exponent as usize == g.exponent()
            && classes.len() == self.num_classes()
            && classes.iter().enumerate().all(|(c, members)| {
                members.len() == self.class_sizes[c]
                    && members[0] == self.class_reps[c]
                    && g.class_of(g.inv(members[0])) == self.inverse_class[c]
                    && g.class_of(g.mul(members[0], members[0])) == self.square_class[c]
            })
    }
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2 √n`.
pub fn dixon_prime(e: u64, n: u64) -> Result<u64> {
    let mut q = e + 1;
    while q <= PRIME_BOUND {
        if q * q > 4 * n && is_prime(q) {
            return Ok(q);
        }
        q += e;
    }
    Err(Error::NoPrime(PRIME_BOUND))
}

/// Exact character table by the Dixon–Schneider method.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let n = g.order();
    if n > TABLE_ORDER_CAP {
        return Err(Error::OrderCap(n, TABLE_ORDER_CAP));
    }
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let e = g.exponent() as u64;
    let q = dixon_prime(e, n as u64)?;
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
    let square_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.mul(x, x))).collect();

    // (M_r)[s][t] = number of x in C_r with x^{-1} z_t in C_s
    let mut mats = vec![vec![vec![0u64; k]; k]; k];
    for (r, cr) in classes.iter().enumerate() {
        for (t, &z) in reps.iter().enumerate() {
            for &x in cr {
                let s = g.class_of(g.mul(g.inv(x), z));
                mats[r][s][t] += 1;
            }
        }
    }
    for m in mats.iter_mut().flatten().flatten() {
        *m %= q;
    }

    let vectors = split_eigenspaces(&mats, k, q)?;
    let z = pow_mod(primitive_root(q), (q - 1) / e, q);
    let zpow: Vec<u64> = (0..e).map(|i| pow_mod(z, i, q)).collect();
    let power_maps: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let mut out = Vec::with_capacity(e as usize);
            let mut y = 0;
            for _ in 0..e {
                out.push(g.class_of(y));
                y = g.mul(y, x);
            }
            out
        })
        .collect();

    let mut irreducibles = Vec::with_capacity(k);
    for w in vectors {
        let w0 = w[0];
        if w0 == 0 {
            return Err(Error::Dixon("eigenvector vanishes on the identity class".into()));
        }
        let w0i = inv_mod(w0, q);
        let w: Vec<u64> = w.iter().map(|v| v * w0i % q).collect();
        let mut s = 0u64;
        for t in 0..k {
            s = (s + w[t] * w[inverse_class[t]] % q * inv_mod(sizes[t] as u64 % q, q)) % q;
        }
        let d_sq = n as u64 % q * inv_mod(s, q) % q;
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % q == d_sq)
            .ok_or_else(|| Error::Dixon("no integral degree".into()))?;
        let chi_mod: Vec<u64> =
            (0..k).map(|t| w[t] * (d % q) % q * inv_mod(sizes[t] as u64 % q, q) % q).collect();
        let e_inv = inv_mod(e % q, q);
        let values = (0..k)
            .map(|t| {
                let mut coeffs = vec![Rational::zero(); e as usize];
                for (j, c) in coeffs.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for l in 0..e {
                        let zeta = zpow[((e - (j as u64 * l) % e) % e) as usize];
                        acc = (acc + chi_mod[power_maps[t][l as usize]] * zeta) % q;
                    }
                    let m = acc * e_inv % q;
                    if m > d {
                        return Err(Error::Dixon(format!("multiplicity {m} exceeds degree {d}")));
                    }
                    *c = Rational::from_int(m as i64);
                }
                Ok(CyclotomicNumber::from_power_coeffs(e as u32, &coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        irreducibles.push(Character { values });
    }
    let trivial = CyclotomicNumber::one(e as u32);
    irreducibles.sort_by(|a, b| {
        let ta = a.values.iter().all(|v| *v == trivial);
        let tb = b.values.iter().all(|v| *v == trivial);
        tb.cmp(&ta).then_with(|| (a.degree(), &a.values).cmp(&(b.degree(), &b.values)))
    });

    let table = CharacterTable {
        order: n,
        fingerprint: fingerprint(g),
        exponent: e as u32,
        prime: q,
        class_sizes: sizes,
        class_reps: reps,
        class_orders: classes.iter().map(|c| g.element_order(c[0])).collect(),
        inverse_class,
        square_class,
        irreducibles,
    };
    table.validate()?;
    Ok(table)
}

/// Splits `F_q^k` into common eigenlines of the commuting class matrices.
fn split_eigenspaces(mats: &[Vec<Vec<u64>>], k: usize, q: u64) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next.push(basis);
                continue;
            }
            let mut echelon = basis.clone();
            let pivots = rref(&mut echelon, q);
            // image of each basis vector, in coordinates on the pivots
            let images: Vec<Vec<u64>> = echelon
                .iter()
                .map(|b| (0..k).map(|s| (0..k).map(|t| m[s][t] * b[t] % q).sum::<u64>() % q).collect())
                .collect();
            let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| images[j][pivots[i]]).collect()).collect();
            let mut found = 0;
            for lambda in 0..q {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| (a[i][j] + if i == j { q - lambda } else { 0 }) % q).collect())
                    .collect();
                let ns = nullspace(&shifted, q);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|u| (0..k).map(|c| (0..d).map(|i| u[i] * echelon[i][c] % q).sum::<u64>() % q).collect())
                    .collect();
                next.push(vecs);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Dixon("class matrix does not split over the prime field".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Dixon("class matrices leave a common eigenspace of dimension > 1".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

/// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`.
pub fn frobenius_schur(table: &CharacterTable, chi: &Character) -> Result<i32> {
    let e = table.exponent;
    let mut acc = CyclotomicNumber::zero(e);
    for c in 0..table.num_classes() {
        let v = chi.values[table.square_class[c]].scale(&Rational::from_int(table.class_sizes[c] as i64));
        acc = &acc + &v;
    }
    let r = acc
        .to_rational()
        .map(|r| &r / &Rational::from_int(table.order as i64))
        .and_then(|r| r.to_i64());
    match r {
        Some(v @ -1..=1) => Ok(v as i32),
        _ => Err(Error::CorruptTable(format!("indicator {acc} is not in {{-1, 0, 1}}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{closure, Perm};

    fn cyclic(k: u32) -> FiniteGroup {
        closure(&[1u32], 0u32, |a, b| Ok((a + b) % k)).unwrap().into_group()
    }

    fn perms(n: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        let g: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        closure(&g, Perm::identity(n), |a, b| Ok(a.then(b))).unwrap().into_group()
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(12, 24).unwrap(), 13);
        assert_eq!(dixon_prime(2, 2).unwrap(), 3);
        assert_eq!(dixon_prime(60, 3000).unwrap(), 181);
    }

    #[test]
    fn c2_table() {
        let t = character_table(&cyclic(2)).unwrap();
        let vals: Vec<Vec<String>> = t
            .irreducibles
            .iter()
            .map(|c| c.values.iter().map(|v| v.to_string()).collect())
            .collect();
        assert_eq!(vals, vec![vec!["1", "1"], vec!["1", "-1"]]);
    }

    #[test]
    fn small_degrees() {
        let s3 = perms(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        assert_eq!(character_table(&s3).unwrap().degrees(), vec![1, 1, 2]);
        let a4 = perms(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        assert_eq!(character_table(&a4).unwrap().degrees(), vec![1, 1, 1, 3]);
        let a5 = perms(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]]);
        assert_eq!(character_table(&a5).unwrap().degrees(), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn indicators() {
        let c3 = character_table(&cyclic(3)).unwrap();
        assert_eq!(frobenius_schur(&c3, &c3.irreducibles[0]).unwrap(), 1);
        assert_eq!(frobenius_schur(&c3, &c3.irreducibles[1]).unwrap(), 0);
        let s4 = perms(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let t = character_table(&s4).unwrap();
        for chi in &t.irreducibles {
            assert_eq!(frobenius_schur(&t, chi).unwrap(), 1);
        }
    }

    #[test]
    fn tampered_table_is_rejected() {
        let s3 = perms(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        let mut t = character_table(&s3).unwrap();
        assert!(t.matches_group(&s3));
        t.irreducibles[1].values[1] = CyclotomicNumber::from_int(t.exponent, 2);
        assert!(matches!(t.validate(), Err(Error::CorruptTable(_))));
    }
}
