use proptest::prelude::*;
use quasicartan::quiver::{canonical_form, chordless_cycles};
use quasicartan::Quiver;
use std::collections::BTreeSet;

fn quiver_on(n: usize, max_w: i64) -> impl Strategy<Value = Quiver> {
    let pairs = n * (n - 1) / 2;
    // zero is weighted up so sparse quivers show up often
    let entry = prop_oneof![3 => Just(0i64), 2 => -max_w..=max_w];
    prop::collection::vec(entry, pairs).prop_map(move |ws| {
        let mut arrows = Vec::new();
        let mut it = ws.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                arrows.push((i, j, it.next().unwrap()));
            }
        }
        Quiver::from_arrows(n, &arrows).unwrap()
    })
}

fn quiver(max_n: usize, max_w: i64) -> impl Strategy<Value = Quiver> {
    (1..=max_n).prop_flat_map(move |n| quiver_on(n, max_w))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn is_skew(q: &Quiver) -> bool {
    (0..q.n()).all(|i| q.get(i, i) == 0 && (0..q.n()).all(|j| q.get(i, j) == -q.get(j, i)))
}

// Every vertex subset inducing a single cycle, by brute force.
fn brute_cycles(q: &Quiver) -> BTreeSet<(Vec<usize>, bool)> {
    let n = q.n();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() < 3 {
            continue;
        }
        let deg = |v: usize| vs.iter().filter(|&&w| q.joined(v, w)).count();
        if !vs.iter().all(|&v| deg(v) == 2) {
            continue;
        }
        // walk the cycle from its smallest vertex
        let mut order = vec![vs[0]];
        let mut prev = usize::MAX;
        let mut cur = vs[0];
        loop {
            let next = *vs.iter().find(|&&w| w != prev && q.joined(cur, w)).unwrap();
            if next == vs[0] {
                break;
            }
            order.push(next);
            prev = cur;
            cur = next;
        }
        if order.len() != vs.len() {
            continue; // disjoint union of cycles
        }
        let m = order.len();
        let forward = (0..m).all(|i| q.get(order[i], order[(i + 1) % m]) > 0);
        let backward = (0..m).all(|i| q.get(order[i], order[(i + 1) % m]) < 0);
        out.insert((vs, forward || backward));
    }
    out
}

fn brute_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    fn extend(a: &Quiver, b: &Quiver, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let d = map.len();
        if d == a.n() {
            return true;
        }
        for v in 0..b.n() {
            if !used[v] && (0..d).all(|x| a.get(x, d) == b.get(map[x], v)) {
                used[v] = true;
                map.push(v);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    a.n() == b.n() && extend(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mutation_is_an_involution(q in quiver(7, 3), k in 0usize..7) {
        let k = k % q.n();
        let m = q.mutate(k).unwrap();
        prop_assert!(is_skew(&m));
        prop_assert_eq!(m.mutate(k).unwrap(), q);
    }

    #[test]
    fn mutation_reverses_arrows_at_k(q in quiver(7, 3), k in 0usize..7) {
        let k = k % q.n();
        let m = q.mutate(k).unwrap();
        for v in 0..q.n() {
            prop_assert_eq!(m.get(k, v), -q.get(k, v));
        }
    }

    #[test]
    fn chordless_cycles_match_brute_force(q in quiver(7, 2)) {
        let found: BTreeSet<(Vec<usize>, bool)> = chordless_cycles(&q)
            .into_iter()
            .map(|c| {
                let mut vs = c.vertices.clone();
                vs.sort_unstable();
                (vs, c.oriented)
            })
            .collect();
        prop_assert_eq!(found, brute_cycles(&q));
    }

    #[test]
    fn canonical_form_ignores_relabeling(q in quiver(8, 2), seed in any::<u64>()) {
        let cf = canonical_form(&q);
        prop_assert_eq!(&q.permuted(&cf.perm), &cf.quiver);
        prop_assert_eq!(canonical_form(&cf.quiver).quiver, cf.quiver.clone());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for _ in 0..100 {
            let mut p: Vec<usize> = (0..q.n()).collect();
            rand::seq::SliceRandom::shuffle(p.as_mut_slice(), &mut rng);
            prop_assert_eq!(&canonical_form(&q.permuted(&p)).quiver, &cf.quiver);
        }
    }

    #[test]
    fn canonical_form_separates_non_isomorphic(
        (a, b, p) in (1usize..=5).prop_flat_map(|n| (quiver_on(n, 1), quiver_on(n, 1), permutation(n)))
    ) {
        for (x, y) in [(&a, b.clone()), (&a, a.permuted(&p))] {
            let same = canonical_form(x).quiver == canonical_form(&y).quiver;
            prop_assert_eq!(same, brute_isomorphic(x, &y));
        }
    }
}

#[test]
fn even_arrows_outside_non_oriented_cycles() {
    use quasicartan::fixtures;
    use quasicartan::mutclass::{enumerate_class, ClassOptions};

    let mut starts: Vec<Quiver> = ["x6", "x7", "twice-punctured-torus", "compatibility-loss", "torus-b1-m1-quiver"]
        .iter()
        .map(|n| fixtures::quiver(n).unwrap())
        .collect();
    for name in fixtures::SURFACES {
        let spec = fixtures::surface(name).unwrap();
        starts.push(quasicartan::build_triangulation(&spec).unwrap().quiver());
    }
    let mut checked = 0;
    for q in starts {
        let class = enumerate_class(&q, ClassOptions::default()).unwrap();
        assert!(class.finite);
        for m in class.members.iter().filter(|m| m.n() >= 3) {
            for c in chordless_cycles(m).iter().filter(|c| !c.oriented) {
                for v in (0..m.n()).filter(|&v| !c.contains(v)) {
                    let arrows: i64 = c.vertices.iter().map(|&w| m.get(v, w).abs()).sum();
                    assert_eq!(arrows % 2, 0, "vertex {v} meets cycle {:?} in {m:?}", c.vertices);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}
