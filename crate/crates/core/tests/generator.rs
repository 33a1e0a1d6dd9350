mod common;

use quasicartan::SurfaceSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn spec_list_is_complete_for_small_n() {
    let specs = common::specs_up_to(4);
    let expect = [
        (0, vec![4]),
        (0, vec![5]),
        (0, vec![6]),
        (0, vec![7]),
        (0, vec![1, 1]),
        (0, vec![2, 1]),
        (0, vec![2, 2]),
        (0, vec![3, 1]),
        (1, vec![1]),
    ];
    assert_eq!(specs.len(), expect.len(), "{specs:?}");
    for (g, k) in expect {
        assert!(specs.contains(&SurfaceSpec::new(g, k).unwrap()));
    }
}

#[test]
fn random_triangulations_keep_their_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let t = common::random_triangulation(&mut rng, 8);
        let spec = t.spec();
        assert_eq!(spec.arc_count(), t.arc_count() as i64);
        assert!(t.arc_count() <= 8);
    }
}
