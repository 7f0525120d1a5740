use crate::error::{Error, Result};
use crate::exact::{CyclotomicNumber, ExactMatrix, Rational};
use crate::fingroup::closure_with_cap;

/// A lattice `Z^n` (in some chosen basis) acted on by a Weyl group given by
/// integer generator matrices, together with its distinguished orbit Ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAction {
    name: String,
    rank: usize,
    /// row-major `rank × rank` integer matrices acting on column vectors
    generators: Vec<Vec<i64>>,
    /// seed vector whose orbit is Ω
    omega_seed: Vec<i64>,
    omega_label: String,
    modulus: u32,
    weyl_order: u64,
}

/// An integer `n × n` matrix product, row-major.
pub fn int_mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

pub fn int_mat_apply(m: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

impl LatticeAction {
    /// A lattice with explicit generators; `weyl_order` is whatever the
    /// caller claims and is checked only by [`LatticeAction::closure_order`].
    pub fn custom(
        name: &str,
        generators: Vec<Vec<i64>>,
        rank: usize,
        omega_seed: Vec<i64>,
        omega_label: &str,
        modulus: u32,
        weyl_order: u64,
    ) -> Result<Self> {
        if generators.iter().any(|g| g.len() != rank * rank) || omega_seed.len() != rank {
            return Err(Error::ShapeMismatch(format!("{name}: generators must be {rank}x{rank}")));
        }
        for (k, g) in generators.iter().enumerate() {
            let det = ExactMatrix::from_rationals(
                1,
                rank,
                rank,
                &g.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>(),
            )?
            .det()?;
            let det = det.to_rational().and_then(|r| r.to_i64());
            if det != Some(1) && det != Some(-1) {
                return Err(Error::InvalidInput(format!("{name}: generator {k} is not unimodular")));
            }
        }
        Ok(LatticeAction {
            name: name.to_string(),
            rank,
            generators,
            omega_seed,
            omega_label: omega_label.to_string(),
            modulus,
            weyl_order,
        })
    }

    /// Root lattice in the basis of simple roots, from an integral Gram matrix
    /// of the simple roots. Ω is the orbit of simple root `omega_root`.
    pub fn from_gram(
        name: &str,
        gram: &[Vec<i64>],
        omega_root: usize,
        omega_label: &str,
        modulus: u32,
        weyl_order: u64,
    ) -> Result<Self> {
        let n = gram.len();
        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = identity(n);
            for j in 0..n {
                let num = 2 * gram[i][j];
                if num % gram[i][i] != 0 {
                    return Err(Error::InvalidInput(format!("{name}: Cartan entry ({i}, {j}) is not integral")));
                }
                // s_i(α_j) = α_j - A_ij α_i
                s[i * n + j] -= num / gram[i][i];
            }
            generators.push(s);
        }
        let mut seed = vec![0i64; n];
        seed[omega_root] = 1;
        Self::custom(name, generators, n, seed, omega_label, modulus, weyl_order)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn omega_label(&self) -> &str {
        &self.omega_label
    }

    /// The order of the Weyl group named by this lattice.
    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// The orbit Ω of the seed vector in integer coordinates, sorted.
    pub fn omega(&self) -> Vec<Vec<i64>> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(self.omega_seed.clone());
        let mut queue = vec![self.omega_seed.clone()];
        while let Some(v) = queue.pop() {
            for g in &self.generators {
                let w = int_mat_apply(g, &v);
                if seen.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Order of the group generated by the matrices, by closure.
    pub fn closure_order(&self, cap: usize) -> Result<usize> {
        let n = self.rank;
        let g = closure_with_cap(&self.generators, identity(n), |a, b| Ok(int_mat_mul(a, b, n)), cap)?;
        Ok(g.order())
    }
}

fn chain_gram(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    g
}

/// Builds a named reference lattice: `A1`, `G2`, `A3`, `F4`, `D5`, `E6`, or
/// `B` (the B_n weight lattice, which needs `rank`).
pub fn build_lattice(name: &str, rank: Option<usize>) -> Result<LatticeAction> {
    match name.to_ascii_uppercase().as_str() {
        "A1" => LatticeAction::from_gram("A1", &[vec![2]], 0, "roots", 4, 2),
        "G2" => LatticeAction::from_gram("G2", &[vec![2, -3], vec![-3, 6]], 0, "short roots", 4, 12),
        "A3" => LatticeAction::from_gram("A3", &chain_gram(3, &[(1, 2), (2, 3)]), 0, "roots", 4, 24),
        "F4" => LatticeAction::from_gram(
            "F4",
            &[vec![4, -2, 0, 0], vec![-2, 4, -2, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]],
            3,
            "short roots",
            4,
            1152,
        ),
        "D5" => LatticeAction::from_gram("D5", &chain_gram(5, &[(1, 2), (2, 3), (3, 4), (3, 5)]), 0, "roots", 4, 1920),
        "E6" => LatticeAction::from_gram(
            "E6",
            &chain_gram(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
            0,
            "roots",
            3,
            51840,
        ),
        "B" | "BN" => {
            let n = rank.ok_or_else(|| Error::InvalidInput("the B_n weight lattice needs a rank".into()))?;
            b_weight_lattice(n)
        }
        _ => Err(Error::UnknownLattice(name.to_string())),
    }
}

fn rat_matrix(n: usize, f: impl Fn(usize, usize) -> Rational) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, 1, |i, j| CyclotomicNumber::from_rational(1, f(i, j))).expect("square shape")
}

/// Basis matrix (columns) of the B_n weight lattice `Z^n + Z s` in standard
/// coordinates: `e_1, …, e_{n-1}, s = (1/2, …, 1/2)`.
pub fn b_weight_basis(n: usize) -> ExactMatrix {
    rat_matrix(n, |i, j| {
        if j == n - 1 {
            Rational::new(1, 2)
        } else if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// The B_n weight lattice with the signed permutation group `2^n ⋊ S_n`,
/// generated by the adjacent transpositions and the sign change of `e_n`.
pub fn b_weight_lattice(n: usize) -> Result<LatticeAction> {
    if n == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let basis = b_weight_basis(n);
    let basis_inv = basis.inverse()?;
    let mut standard: Vec<ExactMatrix> = (0..n - 1)
        .map(|i| {
            rat_matrix(n, |r, c| {
                let src = if c == i {
                    i + 1
                } else if c == i + 1 {
                    i
                } else {
                    c
                };
                if r == src {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    standard.push(rat_matrix(n, |r, c| {
        if r != c {
            Rational::zero()
        } else if r == n - 1 {
            Rational::from_int(-1)
        } else {
            Rational::one()
        }
    }));
    let mut generators = Vec::with_capacity(n);
    for t in &standard {
        let m = basis_inv.mul(&t.mul(&basis)?)?;
        let ints: Option<Vec<i64>> = m.entries().iter().map(|x| x.to_rational().and_then(|r| r.to_i64())).collect();
        generators.push(ints.ok_or_else(|| Error::Verification("B_n generator is not integral".into()))?);
    }
    let mut seed = vec![0i64; n];
    seed[n - 1] = 1;
    let order = (1u64 << n) * factorial(n as u64);
    LatticeAction::custom(&format!("B{n}"), generators, n, seed, "spinors", 4, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, count) in [("A1", 2), ("G2", 6), ("A3", 12), ("F4", 24), ("D5", 40), ("E6", 72)] {
            assert_eq!(build_lattice(name, None).unwrap().omega().len(), count, "{name}");
        }
        assert_eq!(build_lattice("B", Some(5)).unwrap().omega().len(), 32);
    }

    #[test]
    fn small_weyl_orders_by_closure() {
        for name in ["A1", "G2", "A3", "F4", "D5"] {
            let l = build_lattice(name, None).unwrap();
            assert_eq!(l.closure_order(100_000).unwrap() as u64, l.weyl_order(), "{name}");
        }
        for n in 1..=4 {
            let l = b_weight_lattice(n).unwrap();
            assert_eq!(l.closure_order(100_000).unwrap() as u64, l.weyl_order());
        }
    }

    #[test]
    fn b_generators_in_weight_basis() {
        // the sign flip of e_2 in rank 2: c_s -> -c_s, c_1 -> c_1 + c_s
        let l = b_weight_lattice(2).unwrap();
        assert_eq!(l.generators()[1], vec![1, 1, 0, -1]);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(build_lattice("H3", None), Err(Error::UnknownLattice(_))));
        assert!(build_lattice("B", None).is_err());
    }
}
