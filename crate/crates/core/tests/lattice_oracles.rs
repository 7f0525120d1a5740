use std::collections::HashSet;

use polyrep::exact::{ExactMatrix, Rational};
use polyrep::lattice::{b_weight_basis, build_lattice, generates_mod, omega_orbit, orbits_mod, symrank, LatticeAction};
use proptest::prelude::*;

fn closure_generates(vs: &[Vec<u32>], n: usize, d: u32) -> bool {
    let mut seen = HashSet::from([vec![0u32; n]]);
    let mut stack = vec![vec![0u32; n]];
    while let Some(x) = stack.pop() {
        for v in vs {
            let y: Vec<u32> = x.iter().zip(v).map(|(a, b)| (a + b) % d).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len() == (d as usize).pow(n as u32)
}

fn vectors(n: usize, d: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..d, n), 0..6)
}

proptest! {
    #[test]
    fn generates_mod_matches_closure(
        (n, d, vs) in (1usize..=3, prop::sample::select(vec![2u32, 3, 4, 6]))
            .prop_flat_map(|(n, d)| (Just(n), Just(d), vectors(n, d)))
    ) {
        prop_assert_eq!(generates_mod(&vs, n, d).unwrap(), closure_generates(&vs, n, d));
    }
}

fn orbit_census(l: &LatticeAction, d: u32) -> Vec<usize> {
    orbits_mod(l, d).unwrap().orbits.iter().map(|o| o.size).collect()
}

/// The B_n weight lattice again, in the basis of fundamental weights
/// `e_1, e_1 + e_2, …, e_1 + … + e_{n-1}, s`.
fn b_in_fundamental_weights(n: usize) -> LatticeAction {
    let standard = b_weight_basis(n);
    let weights = ExactMatrix::from_rationals(
        1,
        n,
        n,
        &(0..n * n)
            .map(|k| {
                let (r, c) = (k / n, k % n);
                if c == n - 1 {
                    Rational::new(1, 2)
                } else if r <= c {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    // coordinates change from the weight basis to the old basis
    let change = standard.inverse().unwrap().mul(&weights).unwrap();
    let back = change.inverse().unwrap();
    let old = build_lattice("B", Some(n)).unwrap();
    let gens = old
        .generators()
        .iter()
        .map(|g| {
            let m = ExactMatrix::from_rationals(1, n, n, &g.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
                .unwrap();
            let conj = back.mul(&m).unwrap().mul(&change).unwrap();
            conj.entries().iter().map(|x| x.to_rational().unwrap().to_i64().unwrap()).collect()
        })
        .collect();
    let mut seed = vec![0; n];
    seed[n - 1] = 1;
    LatticeAction::custom("B'", gens, n, seed, "spinors", 4, old.weyl_order()).unwrap()
}

#[test]
fn b_rule_is_basis_independent() {
    for n in 2..=6 {
        let a = build_lattice("B", Some(n)).unwrap();
        let b = b_in_fundamental_weights(n);
        assert_eq!(orbit_census(&a, 4), orbit_census(&b, 4), "n = {n}");
        let (da, db) = (orbits_mod(&a, 4).unwrap(), orbits_mod(&b, 4).unwrap());
        assert_eq!(symrank(&da).unwrap().value, symrank(&db).unwrap().value, "n = {n}");
        assert_eq!(da.orbits[omega_orbit(&a, &da).unwrap()].size, 1 << n);
        assert_eq!(db.orbits[omega_orbit(&b, &db).unwrap()].size, 1 << n);
    }
}

#[test]
fn f4_invariant_under_relabeling() {
    let gram = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]];
    let base = build_lattice("F4", None).unwrap();
    for perm in [[3, 2, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1]] {
        let g: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| gram[perm[i]][perm[j]]).collect()).collect();
        let omega = perm.iter().position(|&p| p == 3).unwrap();
        let l = LatticeAction::from_gram("F4'", &g, omega, "short roots", 4, 1152).unwrap();
        assert_eq!(orbit_census(&l, 4), orbit_census(&base, 4));
        let dec = orbits_mod(&l, 4).unwrap();
        let cert = symrank(&dec).unwrap();
        assert_eq!(cert.value, 24);
        assert!(cert.optimal_single_orbits.contains(&omega_orbit(&l, &dec).unwrap()));
    }
}

#[test]
fn weyl_orders_by_closure() {
    for name in ["A1", "G2", "A3", "F4", "D5", "E6"] {
        let l = build_lattice(name, None).unwrap();
        assert_eq!(l.closure_order(100_000).unwrap() as u64, l.weyl_order(), "{name}");
    }
}
