use polyrep::chartab::{character_table, is_faithful, rdim_rational_lower, rdim_split};
use polyrep::constructions::build_recipe;
use polyrep::exact::CyclotomicNumber;
use polyrep::{CharacterTable, FiniteGroup};

/// Smallest total degree of a character subset whose sum takes its degree
/// value only at the identity.
fn exhaustive(g: &FiniteGroup, t: &CharacterTable) -> u64 {
    let id = g.class_of(g.identity());
    let k = t.irreducibles.len();
    (1u32..1 << k)
        .filter_map(|mask| {
            let chosen: Vec<_> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let deg: u64 = chosen.iter().map(|&i| t.irreducibles[i].degree()).sum();
            let faithful = (0..k).filter(|&c| c != id).all(|c| {
                let s = chosen.iter().fold(CyclotomicNumber::zero(t.exponent), |a, &i| &a + &t.irreducibles[i].values[c]);
                s != CyclotomicNumber::from_int(t.exponent, deg as i64)
            });
            faithful.then_some(deg)
        })
        .min()
        .unwrap()
}

#[test]
fn branch_and_bound_matches_exhaustive_search() {
    let recipes = [
        ("c2", 1),
        ("c5", 1),
        ("c6", 1),
        ("c2 x c2", 2),
        ("c2 x c2 x c2", 3),
        ("c2 x c2 x c2 x c2", 4),
        ("c4 x c2", 2),
        ("c3 x c3", 2),
        ("q8", 2),
        ("q8 x c2", 3),
        ("a4", 3),
        ("s4", 3),
        ("sl2_3", 2),
        ("a4 x c2", 3),
        ("s4 x c2", 3),
        ("sl2_z4", 3),
        ("heis_3", 8),
    ];
    for (recipe, want) in recipes {
        let g = build_recipe(recipe).unwrap();
        let t = character_table(&g).unwrap();
        let w = rdim_split(&g, &t).unwrap();
        assert_eq!(w.value, exhaustive(&g, &t), "{recipe}");
        assert_eq!(w.value, want, "{recipe}");
        assert!(is_faithful(&t, &w.characters));
        let lower = rdim_rational_lower(&g, &t).unwrap();
        assert!(lower.value >= w.value, "{recipe}");
    }
}
