use quasicartan::companion::{is_admissible, sign_equivalent};
use quasicartan::mutclass::{enumerate_class, ClassOptions};
use quasicartan::quiver::canonical_form;
use quasicartan::{build_triangulation, fixtures, io, Quiver};
use std::path::Path;

#[test]
fn materialized_fixture_files_are_current() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fixtures");
    for f in fixtures::all() {
        let on_disk = std::fs::read_to_string(dir.join(f.file_name())).unwrap();
        assert_eq!(on_disk, f.render(), "{} is stale; regenerate with `qc fixtures --out`", f.name);
    }
    let files = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(files, fixtures::all().len());
}

#[test]
fn rendering_is_deterministic_and_flags_transcriptions() {
    for f in fixtures::all() {
        assert_eq!(f.render(), f.render());
        if f.kind != fixtures::FixtureKind::Patterns {
            let flag = if f.transcribed { "transcribed: yes" } else { "transcribed: no" };
            assert!(f.render().contains(flag), "{}", f.name);
        }
    }
}

#[test]
fn round_trips() {
    for f in fixtures::all() {
        match f.kind {
            fixtures::FixtureKind::Quiver => {
                let q = fixtures::quiver(f.name).unwrap();
                assert_eq!(io::parse_quiver(&io::quiver_to_qvr(&q, &[])).unwrap(), q);
                assert_eq!(io::parse_quiver(&io::quiver_to_json(&q, None)).unwrap(), q);
            }
            fixtures::FixtureKind::Surface => {
                let t = build_triangulation(&fixtures::surface(f.name).unwrap()).unwrap();
                assert_eq!(io::parse_triangulation(&io::triangulation_to_json(&t, None)).unwrap(), t);
                let b = t.admissible_companion_basis().unwrap().basis;
                assert_eq!(io::parse_basis(&io::basis_to_json(&b, None)).unwrap(), b);
                let a = b.companion().unwrap();
                assert_eq!(io::parse_companion(&io::companion_to_qcc(&a, &[])).unwrap(), a);
            }
            _ => {}
        }
    }
}

// Quiver of triangles given by their three sides in counterclockwise
// order, `None` for boundary.
fn quiver_of(n: usize, triangles: &[[Option<usize>; 3]]) -> Quiver {
    let mut arrows = Vec::new();
    for t in triangles {
        for s in 0..3 {
            if let (Some(a), Some(b)) = (t[s], t[(s + 1) % 3]) {
                arrows.push((a, b, 1));
            }
        }
    }
    Quiver::from_arrows(n, &arrows).unwrap()
}

#[test]
fn twice_punctured_torus_matches_a_grid_triangulation() {
    // Torus from two unit squares side by side; punctures at the two
    // distinct corner classes. Arcs: horizontal h1 h2, vertical v1 v2,
    // diagonals dA dB.
    let (h1, h2, v1, v2, da, db) = (0, 1, 2, 3, 4, 5);
    let grid = quiver_of(
        6,
        &[
            [Some(h1), Some(v2), Some(da)],
            [Some(da), Some(h1), Some(v1)],
            [Some(h2), Some(v1), Some(db)],
            [Some(db), Some(h2), Some(v2)],
        ],
    );
    assert_eq!(grid.max_weight(), 2);
    let fixture = fixtures::quiver("twice-punctured-torus").unwrap();
    let class = enumerate_class(&grid, ClassOptions::default()).unwrap();
    assert!(class.finite);
    assert!(class.members.contains(&canonical_form(&fixture).quiver));
    assert_eq!(fixture.edge_count(), 12);
    assert_eq!(fixture.max_weight(), 1);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn flat_torus_data_matches_the_constructed_torus() {
    let surface = build_triangulation(&fixtures::surface("torus-b1-m1").unwrap()).unwrap();
    let built = surface.quiver();
    let drawn = fixtures::quiver("torus-b1-m1-quiver").unwrap();
    assert_eq!(canonical_form(&drawn).quiver, canonical_form(&built).quiver);

    // the other direction of the 1-4 arrow gives the same quiver up to isomorphism
    let mut rows = drawn.rows();
    rows[0][3] = -rows[0][3];
    rows[3][0] = -rows[3][0];
    let flipped = Quiver::from_matrix(&rows).unwrap();
    assert_eq!(canonical_form(&flipped).quiver, canonical_form(&built).quiver);

    // the drawn vectors give an admissible companion, sign-equivalent to
    // the constructed one under some isomorphism
    let drawn_a = fixtures::basis("torus-b1-m1-basis").unwrap().companion().unwrap();
    assert!(is_admissible(&drawn_a, &drawn).unwrap());
    let built_a = surface.admissible_companion_basis().unwrap().basis.companion().unwrap();
    let matched = permutations(4)
        .into_iter()
        .filter(|p| drawn.permuted(p) == built)
        .any(|p| sign_equivalent(&drawn_a.permuted(&p), &built_a).unwrap());
    assert!(matched);
}

#[test]
fn handle_relation_bases_are_admissible() {
    for (q, b) in [
        ("handle-relations-quiver", "handle-relations-basis"),
        ("handle-relations-r4-quiver", "handle-relations-r4-basis"),
    ] {
        let a = fixtures::basis(b).unwrap().companion().unwrap();
        assert!(is_admissible(&a, &fixtures::quiver(q).unwrap()).unwrap(), "{b}");
    }
}
