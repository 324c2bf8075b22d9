use hgk_core::abelian::{em_space, FGAbelianGroup, SimplicialAbelianGroup};
use hgk_core::groupoid::FiniteGroupoid;
use hgk_core::matching::{is_kan, is_n_hypergroupoid};
use hgk_core::simplex::{monotone_maps, MonotoneMap};
use hgk_core::sset::{
    boundary, constant, coskeleton, coskeleton_unit, hom_set, hom_set_with, horn, point, product, standard_simplex,
    EnumLimit, HomOrder,
};
use hgk_core::SimplicialSet;
use proptest::prelude::*;
use std::sync::OnceLock;

const T: usize = 3;

fn corpus() -> Vec<(&'static str, SimplicialSet)> {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("point", point(T)),
        ("empty", boundary(0, T)),
        ("simplex1", standard_simplex(1, T)),
        ("simplex2", standard_simplex(2, T)),
        ("boundary2", boundary(2, T)),
        ("horn21", horn(2, 1, T).unwrap()),
        ("two points", constant(&names(&["a", "b"]), T)),
        ("nerve Z/2", FiniteGroupoid::cyclic_group(2).nerve(T)),
        ("nerve Z/3", FiniteGroupoid::cyclic_group(3).nerve(T)),
        ("nerve indiscrete", FiniteGroupoid::indiscrete(&["x", "y"]).nerve(T)),
        ("simplex1 x simplex1", product(&standard_simplex(1, T), &standard_simplex(1, T)).unwrap()),
        ("K(Z/2,2)", em_space(&FGAbelianGroup::cyclic(2), 2, T).underlying_sset().unwrap()),
    ]
}

fn shared() -> &'static [(&'static str, SimplicialSet)] {
    static CORPUS: OnceLock<Vec<(&'static str, SimplicialSet)>> = OnceLock::new();
    CORPUS.get_or_init(corpus)
}

fn hypergroupoids() -> Vec<(usize, SimplicialSet)> {
    let t = 4;
    let z2 = FGAbelianGroup::cyclic(2);
    vec![
        (0, point(t)),
        (1, FiniteGroupoid::cyclic_group(3).nerve(t)),
        (1, FiniteGroupoid::symmetric_group(3).nerve(t)),
        (1, FiniteGroupoid::indiscrete(&["x", "y", "z"]).nerve(t)),
        (1, em_space(&z2, 1, t).underlying_sset().unwrap()),
        (2, em_space(&z2, 2, t).underlying_sset().unwrap()),
        (0, SimplicialAbelianGroup::constant(&z2.to_cyclic_sum(), t).underlying_sset().unwrap()),
    ]
}

#[test]
fn corpus_satisfies_simplicial_identities() {
    for (name, x) in corpus() {
        x.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn simplices_are_maps_from_standard_simplices() {
    for (name, x) in corpus() {
        for n in 0..=T {
            let simplex = standard_simplex(n, T);
            let top = simplex.nondegenerate(n)[0];
            let maps = hom_set(&simplex, &x).unwrap();
            assert_eq!(maps.len(), x.level_size(n), "{name} level {n}");
            // the map picks out the image of the top simplex
            let mut tops: Vec<usize> = maps.iter().map(|m| m[n][top]).collect();
            tops.sort_unstable();
            assert_eq!(tops, (0..x.level_size(n)).collect::<Vec<_>>(), "{name} level {n}");
        }
    }
}

#[test]
fn hom_counts_do_not_depend_on_order() {
    let sources = [boundary(2, T), horn(2, 0, T).unwrap(), standard_simplex(1, T), product(&standard_simplex(1, T), &standard_simplex(1, T)).unwrap()];
    for (name, x) in corpus() {
        for k in &sources {
            let a = hom_set_with(k, &x, HomOrder::Forward, EnumLimit::UNLIMITED).unwrap();
            let mut b = hom_set_with(k, &x, HomOrder::Reverse, EnumLimit::UNLIMITED).unwrap();
            b.sort();
            let mut a2 = a.clone();
            a2.sort();
            assert_eq!(a2, b, "{name}");
        }
    }
}

#[test]
fn coskeleta_are_idempotent() {
    for (name, x) in corpus().into_iter().take(8) {
        for m in 0..2 {
            let c = coskeleton(&x, m, T).unwrap();
            let cc = coskeleton(&c, m, T).unwrap();
            assert_eq!(c.level_sizes(), cc.level_sizes(), "{name} m={m}");
            assert!(coskeleton_unit(&c, m).unwrap().is_isomorphism(), "{name} m={m}");
        }
    }
}

#[test]
fn hypergroupoids_are_determined_by_low_levels() {
    for (n, x) in hypergroupoids() {
        assert!(is_n_hypergroupoid(&x, n).unwrap().passed());
        let rebuilt = coskeleton(&x.truncate(n + 1).unwrap(), n + 1, x.truncation()).unwrap();
        assert_eq!(rebuilt.level_sizes(), x.level_sizes());
        assert!(coskeleton_unit(&x, n + 1).unwrap().is_isomorphism());
    }
}

#[test]
fn kan_verdicts() {
    for (name, x) in corpus() {
        let kan = is_kan(&x, T).unwrap().passed();
        let expected = !matches!(name, "simplex1" | "simplex2" | "boundary2" | "horn21" | "simplex1 x simplex1");
        assert_eq!(kan, expected, "{name}");
    }
}

fn object_and_maps() -> impl Strategy<Value = (usize, MonotoneMap, MonotoneMap, usize)> {
    let count = corpus().len();
    (0..count, 0..=T, 0..=T, 0..=T, any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<usize>())
        .prop_map(|(obj, a, b, c, i, j, s)| {
            let theta = i.get(&monotone_maps(b, c)).clone();
            let phi = j.get(&monotone_maps(a, b)).clone();
            (obj, theta, phi, s)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // (theta ∘ phi)^* = phi^* ∘ theta^*
    #[test]
    fn action_is_functorial((obj, theta, phi, s) in object_and_maps()) {
        let (_, x) = &shared()[obj];
        let size = x.level_size(theta.codomain());
        prop_assume!(size > 0);
        let s = s % size;
        let both = theta.compose(&phi).unwrap();
        prop_assert_eq!(x.act(&both, s), x.act(&phi, x.act(&theta, s)));
    }
}
