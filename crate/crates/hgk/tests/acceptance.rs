//! Acceptance criteria, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use hgk_core::abelian::{
    dold_kan_counit, dold_kan_unit, em_space, ChainComplex, CyclicSum, FGAbelianGroup, Matrix, Orientation,
    SimplicialAbelianGroup,
};
use hgk_core::cech::{alternating_cohomology, cech_cohomology, verify_nerve_trivial, FiniteCover, Presheaf};
use hgk_core::groupoid::{
    descent_data, find_isomorphism, fundamental_groupoid, local_system_total, nerve_map, spine_map, FiniteGroupoid,
    LocalSystemData,
};
use hgk_core::matching::{
    boundary_matching_object, horn_matching_object, is_cartesian, is_kan, is_n_hypergroupoid,
};
use hgk_core::sset::{boundary, coskeleton, coskeleton_unit, hom_set, horn, point, product, standard_simplex};
use hgk_core::SimplicialSet;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn z() -> CyclicSum {
    CyclicSum::new(vec![0])
}

fn zn(n: u64) -> CyclicSum {
    CyclicSum::new(vec![n])
}

fn groupoids() -> Vec<(&'static str, FiniteGroupoid)> {
    let z2 = FiniteGroupoid::cyclic_group(2);
    let pair = FiniteGroupoid::indiscrete(&["x", "y"]);
    vec![
        ("Z/2", z2.clone()),
        ("Z/3", FiniteGroupoid::cyclic_group(3)),
        ("S3", FiniteGroupoid::symmetric_group(3)),
        ("discrete 1", FiniteGroupoid::discrete(&["a"])),
        ("discrete 2", FiniteGroupoid::discrete(&["a", "b"])),
        ("discrete 4", FiniteGroupoid::discrete(&["a", "b", "c", "d"])),
        ("indiscrete 2", pair.clone()),
        ("indiscrete 3", FiniteGroupoid::indiscrete(&["x", "y", "z"])),
        ("indiscrete 4", FiniteGroupoid::indiscrete(&["w", "x", "y", "z"])),
        ("Z/2 + indiscrete 2", z2.disjoint_union(&pair)),
        ("Z/2 x indiscrete 2", z2.product(&pair)),
        ("Z/3 + discrete 1", FiniteGroupoid::cyclic_group(3).disjoint_union(&FiniteGroupoid::discrete(&["p"]))),
    ]
}

fn is_discrete(g: &FiniteGroupoid) -> bool {
    g.arrows().len() == g.objects().len()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let suite = groupoids();
    for (name, g) in &suite {
        ensure!(g.objects().len() <= 4, "{name} has too many objects");
        let x = g.nerve(3);
        ensure!(is_n_hypergroupoid(&x, 1).map_err(|e| e.to_string())?.passed(), "nerve of {name} is not a 1-hypergroupoid");
        let zero = is_n_hypergroupoid(&x, 0).map_err(|e| e.to_string())?.passed();
        ensure!(zero == is_discrete(g), "nerve of {name}: 0-hypergroupoid verdict {zero}");
    }
    let kan = is_kan(&boundary(2, 3), 3).map_err(|e| e.to_string())?;
    ensure!(!kan.passed(), "boundary(2) passed the Kan check");
    let w = &kan.failures[0];
    ensure!(w.level == 2 && w.index.is_some(), "unexpected witness {w:?}");
    let elapsed = start.elapsed().as_secs_f64();
    ensure!(elapsed < 10.0, "took {elapsed:.2} s");
    Ok(format!("{} nerves, boundary(2) witness at horn 2,{}, {elapsed:.2} s", suite.len(), w.index.unwrap()))
}

fn corpus() -> Vec<(&'static str, SimplicialSet)> {
    let t = 4;
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("point", point(t)),
        ("empty", boundary(0, t)),
        ("simplex 1", standard_simplex(1, t)),
        ("simplex 2", standard_simplex(2, t)),
        ("boundary 2", boundary(2, t)),
        ("horn 2,1", horn(2, 1, t).unwrap()),
        ("two points", hgk_core::sset::constant(&names(&["a", "b"]), t)),
        ("nerve Z/2", FiniteGroupoid::cyclic_group(2).nerve(t)),
        ("nerve Z/3", FiniteGroupoid::cyclic_group(3).nerve(t)),
        ("nerve indiscrete 2", FiniteGroupoid::indiscrete(&["x", "y"]).nerve(t)),
        ("simplex 1 x simplex 1", product(&standard_simplex(1, t), &standard_simplex(1, t)).unwrap()),
        ("K(Z/2,2)", em_space(&FGAbelianGroup::cyclic(2), 2, t).underlying_sset().unwrap()),
    ]
}

fn criterion_2() -> Outcome {
    let t = 4;
    let mut compared = 0;
    for (name, x) in corpus() {
        for m in 1..=t {
            let generic = hom_set(&boundary(m, t), &x).map_err(|e| e.to_string())?.len();
            let special = boundary_matching_object(&x, m).map_err(|e| e.to_string())?.len();
            ensure!(generic == special, "{name}: boundary {m}: hom count {generic}, matching object {special}");
            compared += 1;
            for k in 0..=m {
                let generic = hom_set(&horn(m, k, t).unwrap(), &x).map_err(|e| e.to_string())?.len();
                let special = horn_matching_object(&x, m, k).map_err(|e| e.to_string())?.len();
                ensure!(generic == special, "{name}: horn {m},{k}: hom count {generic}, matching object {special}");
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} cardinalities agree"))
}

fn one_hypergroupoids() -> Vec<(String, SimplicialSet)> {
    let mut out: Vec<(String, SimplicialSet)> =
        groupoids().into_iter().map(|(name, g)| (format!("nerve {name}"), g.nerve(3))).collect();
    for p in [2, 3] {
        let k = em_space(&FGAbelianGroup::cyclic(p), 1, 3).underlying_sset().unwrap();
        out.push((format!("K(Z/{p},1)"), k));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (name, g) in groupoids() {
        let pi = fundamental_groupoid(&g.nerve(3)).map_err(|e| e.to_string())?;
        let iso = find_isomorphism(&g, &pi).ok_or(format!("{name}: no isomorphism G -> pi N(G)"))?;
        ensure!(iso.verify(&g, &pi), "{name}: isomorphism does not verify");
        count += 1;
    }
    for (name, x) in one_hypergroupoids() {
        let (_, spine) = spine_map(&x).map_err(|e| e.to_string())?;
        ensure!(spine.is_isomorphism(), "{name}: X -> N(pi X) is not an isomorphism");
        count += 1;
    }
    Ok(format!("{count} isomorphisms exhibited"))
}

fn hypergroupoids() -> Vec<(String, usize, SimplicialSet)> {
    let t = 4;
    let mut out = vec![("point".to_string(), 0, point(t))];
    for (name, g) in groupoids() {
        out.push((format!("nerve {name}"), 1, g.nerve(t)));
    }
    for p in [2, 3] {
        let a = FGAbelianGroup::cyclic(p);
        for n in 0..=2 {
            out.push((format!("K(Z/{p},{n})"), n, em_space(&a, n, t).underlying_sset().unwrap()));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (name, n, x) in hypergroupoids() {
        ensure!(is_n_hypergroupoid(&x, n).map_err(|e| e.to_string())?.passed(), "{name} is not a {n}-hypergroupoid");
        let low = x.truncate(n + 1).map_err(|e| e.to_string())?;
        let rebuilt = coskeleton(&low, n + 1, x.truncation()).map_err(|e| e.to_string())?;
        ensure!(rebuilt.level_sizes() == x.level_sizes(), "{name}: rebuilt sizes {:?}", rebuilt.level_sizes());
        let unit = coskeleton_unit(&x, n + 1).map_err(|e| e.to_string())?;
        ensure!(unit.is_isomorphism(), "{name}: X -> cosk X is not an isomorphism");
        count += 1;
    }
    Ok(format!("{count} hypergroupoids rebuilt from their truncations"))
}

fn complexes() -> Vec<ChainComplex> {
    let chain = |groups: Vec<CyclicSum>, diffs: Vec<Matrix>| ChainComplex::new(Orientation::Chain, groups, diffs).unwrap();
    vec![
        ChainComplex::concentrated(zn(2), 0),
        ChainComplex::concentrated(zn(3), 1),
        ChainComplex::concentrated(z(), 2),
        ChainComplex::concentrated(CyclicSum::new(vec![0, 0, 6]), 1),
        chain(vec![z(), z()], vec![Matrix::from_rows(1, &[vec![2]])]),
        chain(vec![zn(3), zn(6)], vec![Matrix::from_rows(1, &[vec![1]])]),
        chain(vec![zn(4), zn(4)], vec![Matrix::from_rows(1, &[vec![2]])]),
        chain(
            vec![z(), CyclicSum::new(vec![0, 0]), z()],
            vec![Matrix::from_rows(2, &[vec![1, 1]]), Matrix::from_rows(1, &[vec![1], vec![-1]])],
        ),
        chain(vec![CyclicSum::new(vec![0, 0, 0, 5]), CyclicSum::new(vec![0, 5])], vec![Matrix::from_rows(2, &[vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 3]])]),
        chain(vec![CyclicSum::zero(), zn(2), zn(2)], vec![Matrix::zeros(0, 1), Matrix::from_rows(1, &[vec![0]])]),
    ]
}

fn abelian_corpus() -> Vec<(String, SimplicialAbelianGroup)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for n in 0..=2 {
            out.push((format!("K(Z/{p},{n})"), em_space(&FGAbelianGroup::cyclic(p), n, 4)));
        }
    }
    out.push(("free on boundary 2".into(), SimplicialAbelianGroup::free_on(&boundary(2, 3), 0)));
    out.push(("Z/2 on simplex 1".into(), SimplicialAbelianGroup::free_on(&standard_simplex(1, 3), 2)));
    out.push(("constant Z^2".into(), SimplicialAbelianGroup::constant(&CyclicSum::new(vec![0, 0]), 3)));
    out.push(("Z/6 + Z/3 complex".into(), hgk_core::abelian::denormalize(&complexes()[5], 3).unwrap()));
    out
}

fn binomial(m: u32, n: u32) -> u32 {
    if n > m {
        return 0;
    }
    (0..n).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn criterion_5() -> Outcome {
    let t = 4;
    let cs = complexes();
    for (i, c) in cs.iter().enumerate() {
        let (n, comps) = dold_kan_unit(c, t).map_err(|e| e.to_string())?;
        ensure!(c.is_isomorphism_via(&n, &comps), "complex {i}: C -> N(Gamma C) is not an isomorphism");
    }
    let ab = abelian_corpus();
    for (name, a) in &ab {
        let (g, comps) = dold_kan_counit(a);
        ensure!(g.is_isomorphism_via(a, &comps), "{name}: Gamma(N A) -> A is not an isomorphism");
    }
    let mut sizes = 0;
    for p in [2u64, 3] {
        for n in 0..=2u32 {
            let k = em_space(&FGAbelianGroup::cyclic(p), n as usize, 5);
            for m in 0..=5u32 {
                let order = k.level(m as usize).order().ok_or("infinite level")?;
                let expected = (p as u128).pow(binomial(m, n));
                ensure!(order == expected, "|K(Z/{p},{n})_{m}| = {order}, expected {expected}");
                sizes += 1;
            }
        }
    }
    Ok(format!("{} units, {} counits, {sizes} level orders", cs.len(), ab.len()))
}

fn criterion_6() -> Outcome {
    for p in [2u64, 3] {
        let a = FGAbelianGroup::cyclic(p);
        for n in 0..=2 {
            let pi = em_space(&a, n, n + 3).homotopy_groups();
            ensure!(pi.len() >= n + 3, "K(Z/{p},{n}): only {} homotopy groups", pi.len());
            for (d, g) in pi.iter().enumerate().take(n + 3) {
                let expected = if d == n { a.clone() } else { FGAbelianGroup::zero() };
                ensure!(*g == expected, "pi_{d} K(Z/{p},{n}) = {g}");
            }
        }
    }
    Ok("6 Eilenberg-MacLane spaces".into())
}

fn covers() -> Vec<(&'static str, FiniteCover)> {
    let c = |ambient: &[&str], pieces: &[&[&str]]| FiniteCover::from_names(ambient, pieces).unwrap();
    let circle = ["p0", "p1", "p2", "p3"];
    vec![
        ("cyclic 4", c(&circle, &[&["p0", "p1"], &["p1", "p2"], &["p2", "p3"], &["p3", "p0"]])),
        ("triangle", c(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["c", "a"]])),
        ("single", c(&["a", "b", "c"], &[&["a", "b", "c"]])),
        ("star", c(&["o", "a", "b", "c"], &[&["o", "a"], &["o", "b"], &["o", "c"]])),
        ("interval", c(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]])),
        ("repeated", c(&["a", "b", "c"], &[&["a", "b"], &["a", "b"], &["c"]])),
    ]
}

// Rank over Q by fraction-free elimination.
fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = a * m[i][j] - b * m[r][j];
            }
            let g = m[i].iter().fold(0i128, |g, &v| gcd(g, v.abs()));
            if g > 1 {
                m[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

// Betti numbers of the alternating complex of the constant Z presheaf,
// built straight from the pieces.
fn betti_oracle(pieces: &[Vec<usize>], top: usize) -> Vec<usize> {
    let meets = |s: &[usize]| {
        let first = &pieces[s[0]];
        first.iter().any(|y| s.iter().all(|&i| pieces[i].contains(y)))
    };
    let subsets = |len: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..1 << pieces.len() {
            if mask.count_ones() as usize == len {
                let s: Vec<usize> = (0..pieces.len()).filter(|i| mask >> i & 1 == 1).collect();
                if meets(&s) {
                    out.push(s);
                }
            }
        }
        out
    };
    let basis: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|p| subsets(p + 1)).collect();
    let delta_rank = |p: usize| {
        let rows: Vec<Vec<i128>> = basis[p + 1]
            .iter()
            .map(|t| {
                basis[p]
                    .iter()
                    .map(|s| match (0..t.len()).find(|&j| t.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).eq(s.iter().copied())) {
                        Some(j) if j % 2 == 0 => 1,
                        Some(_) => -1,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        if rows.is_empty() { 0 } else { rank(&rows) }
    };
    (0..=top).map(|p| basis[p].len() - delta_rank(p) - if p == 0 { 0 } else { delta_rank(p - 1) }).collect()
}

fn criterion_7() -> Outcome {
    let all = covers();
    let cyclic = &all[0].1;
    let pieces: Vec<Vec<usize>> = cyclic.pieces().iter().map(|p| p.iter().copied().collect()).collect();
    let oracle = betti_oracle(&pieces, 1);
    ensure!(oracle == vec![1, 1], "rank oracle gives Betti numbers {oracle:?}");
    let h = cech_cohomology(cyclic, &Presheaf::constant(cyclic, &z()), 1).map_err(|e| e.to_string())?;
    ensure!(h == vec![FGAbelianGroup::free(1), FGAbelianGroup::free(1)], "cyclic 4-cover gives {h:?}");

    let single = &all[2].1;
    for f in [Presheaf::constant(single, &z()), Presheaf::functions(single, &zn(2))] {
        let h = cech_cohomology(single, &f, 3).map_err(|e| e.to_string())?;
        let global = f.value(&[]).ok_or("no global sections")?.classify();
        ensure!(h[0] == global, "single cover: H^0 = {} but F(Y) = {global}", h[0]);
        ensure!(h[1..].iter().all(FGAbelianGroup::is_trivial), "single cover: higher cohomology {h:?}");
    }

    let mut compared = 0;
    for (name, c) in &all {
        for f in [Presheaf::constant(c, &z()), Presheaf::constant(c, &zn(2)), Presheaf::functions(c, &z()), Presheaf::functions(c, &zn(3))] {
            let a = cech_cohomology(c, &f, 2).map_err(|e| e.to_string())?;
            let b = alternating_cohomology(c, &f, 2).map_err(|e| e.to_string())?;
            ensure!(a == b, "{name}: unnormalized {a:?} vs alternating {b:?}");
            compared += 1;
        }
        let pieces: Vec<Vec<usize>> = c.pieces().iter().map(|p| p.iter().copied().collect()).collect();
        let betti: Vec<usize> = cech_cohomology(c, &Presheaf::constant(c, &z()), 2).map_err(|e| e.to_string())?.iter().map(|g| g.rank()).collect();
        ensure!(betti == betti_oracle(&pieces, 2), "{name}: Betti numbers disagree with the rank oracle");
    }
    Ok(format!("H^0 = Z, H^1 = Z; {compared} presheaves agree across complexes"))
}

fn local_systems() -> Vec<(String, LocalSystemData)> {
    let mut out = Vec::new();
    let labels = |n: usize| (0..n).map(|i| format!("f{i}")).collect::<Vec<_>>();
    for (name, base) in [
        ("boundary 2", boundary(2, 3)),
        ("simplex 2", standard_simplex(2, 3)),
        ("nerve indiscrete 3", FiniteGroupoid::indiscrete(&["x", "y", "z"]).nerve(3)),
    ] {
        out.push((format!("constant on {name}"), LocalSystemData::constant(base, &labels(2)).unwrap()));
    }
    // regular representations over one-object nerves
    for (name, g) in [
        ("Z/2", FiniteGroupoid::cyclic_group(2)),
        ("Z/3", FiniteGroupoid::cyclic_group(3)),
        ("S3", FiniteGroupoid::symmetric_group(3)),
    ] {
        let base = g.nerve(3);
        let order = g.arrows().len();
        // an edge runs from F(target) to F(source), so the group acts on the right
        let transitions: Vec<Vec<usize>> =
            g.strings(1).iter().map(|s| (0..order).map(|b| g.comp(b, s[0])).collect()).collect();
        let d = LocalSystemData::new(base, vec![labels(order)], transitions).unwrap();
        out.push((format!("regular {name}"), d));
    }
    out
}

fn criterion_8() -> Outcome {
    let all = covers();
    for (name, c) in &all {
        ensure!(verify_nerve_trivial(c).map_err(|e| e.to_string())?.passed(), "{name}: nerve is not trivial relative");
    }
    let systems = local_systems();
    for (name, d) in &systems {
        let total = local_system_total(d);
        ensure!(is_cartesian(&total).map_err(|e| e.to_string())?.passed(), "{name}: total map is not cartesian");
        let back = descent_data(&total).map_err(|e| e.to_string())?;
        ensure!(back.is_isomorphic(d), "{name}: descent data does not round-trip");
    }
    Ok(format!("{} Čech nerves, {} local systems", all.len(), systems.len()))
}

fn criterion_9() -> Outcome {
    let x = em_space(&FGAbelianGroup::cyclic(2), 1, 3).underlying_sset().map_err(|e| e.to_string())?;
    let g = FiniteGroupoid::cyclic_group(2);
    let (pi, spine) = spine_map(&x).map_err(|e| e.to_string())?;
    let iso = find_isomorphism(&pi, &g).ok_or("pi K(Z/2,1) is not Z/2")?;
    let to_nerve = spine.then(&nerve_map(&iso, &pi, &g, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(to_nerve.is_isomorphism(), "K(Z/2,1) -> N(Z/2) is not an isomorphism");

    let mut compared = 0;
    for (name, a) in abelian_corpus() {
        let Ok(x) = a.underlying_sset() else { continue };
        for n in 0..=a.truncation().saturating_sub(2) {
            let abelian = a.is_abelian_hypergroupoid(n).map_err(|e| e.to_string())?.passed();
            let generic = is_n_hypergroupoid(&x, n).map_err(|e| e.to_string())?.passed();
            ensure!(abelian == generic, "{name}, n = {n}: abelian check {abelian}, generic check {generic}");
            compared += 1;
        }
    }
    Ok(format!("K(Z/2,1) = N(Z/2); {compared} hypergroupoid verdicts agree"))
}

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hgk"))
        .arg("--format")
        .arg("json")
        .args(args)
        .env_remove("HGK_MAX_ENUM")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let fx = |name: &str| {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
    };
    let mut script: Vec<(Vec<String>, i32)> = Vec::new();
    let mut add = |args: &[&str], code: i32| script.push((args.iter().map(|s| s.to_string()).collect(), code));
    add(&["validate", &fx("nerve-z2.json")], 0);
    add(&["validate", &fx("empty.json")], 0);
    add(&["validate", &fx("nerve-z2-corrupt.json")], 1);
    add(&["validate", &fx("malformed.json")], 3);
    add(&["validate", &fx("does-not-exist.json")], 2);
    add(&["check", &fx("nerve-z2.json"), "--kind", "hypergroupoid", "--n", "1"], 0);
    add(&["check", &fx("boundary2.json"), "--kind", "kan"], 1);
    add(&["check", &fx("em-z2-2.json"), "--kind", "hypergroupoid", "--n", "1"], 1);
    add(&["check", &fx("nerve-z2.json"), "--kind", "cartesian"], 2);
    add(&["check", &fx("nerve-z2.json"), "--kind", "kan", "--upto", "6"], 2);
    add(&["check", &fx("malformed.json"), "--kind", "kan"], 3);
    add(&["check", &fx("cover-cyclic4.json"), "--kind", "trivial-relative"], 0);
    add(&["check", &fx("local-system-double-cover.json"), "--kind", "cartesian"], 0);
    add(&["check", &fx("morphism-double-cover.json"), "--kind", "relative-hypergroupoid"], 0);
    add(&["compute", &fx("groupoid-z2.json"), "--what", "nerve", "--n", "3"], 0);
    add(&["compute", &fx("cover-cyclic4.json"), "--what", "cech", "--coeff", "Z"], 0);
    add(&["compute", &fx("chain-times2.json"), "--what", "homology"], 0);
    add(&["compute", "--what", "em", "--coeff", "Z/3", "--n", "2"], 0);
    add(&["compute", &fx("nerve-z2.json"), "--what", "hom-count", "--source", &fx("boundary2.json")], 0);
    add(&["compute", &fx("chain-times2.json"), "--what", "nerve"], 2);
    add(&["compute", &fx("cover-cyclic4.json"), "--what", "cech", "--coeff", "Q"], 2);
    add(&["check", &fx("nerve-z2.json"), "--kind", "no-such-kind"], 2);
    for f in fixtures() {
        let f = f.to_string_lossy().into_owned();
        let code = if f.ends_with("malformed.json") { 3 } else if f.ends_with("corrupt.json") { 1 } else { 0 };
        add(&["validate", &f], code);
    }

    let mut invocations = 0;
    for (args, expected) in &script {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first) = run(&args);
        let (again, second) = run(&args);
        invocations += 2;
        ensure!(code == *expected, "{args:?}: exit {code}, expected {expected}");
        ensure!(again == code && first == second, "{args:?}: output differs between runs");
    }
    ensure!(script.len() >= 12, "only {} scripted invocations", script.len());
    Ok(format!("{} scripted commands, {invocations} runs, outputs byte-identical", script.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("groupoid nerves are 1-hypergroupoids", criterion_1),
        ("matching objects equal hom-set counts", criterion_2),
        ("groupoids are recovered from nerves", criterion_3),
        ("hypergroupoids are determined by truncations", criterion_4),
        ("Dold-Kan and K(A,n) level orders", criterion_5),
        ("homotopy of K(A,n)", criterion_6),
        ("Čech cohomology", criterion_7),
        ("relative checks and descent", criterion_8),
        ("abelian and simplicial checks agree", criterion_9),
        ("CLI determinism and exit codes", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} [{secs:.2} s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {reason} [{secs:.2} s]", i + 1);
            }
        }
    }
    let _ = std::panic::take_hook();
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
