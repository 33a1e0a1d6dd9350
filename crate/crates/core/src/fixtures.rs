//! Named example data: exceptional quivers, small counterexamples,
//! hand-computed bases and the surface list used throughout the tests.
//!
//! Arrow lists below are 1-based `(i, j, w)` meaning `w` arrows `i -> j`.

use crate::companion::{Ambient, Companion, CompanionBasis};
use crate::error::{Error, Result};
use crate::io;
use crate::quiver::Quiver;
use crate::surface::SurfaceSpec;
use crate::weyl::PATTERN_DATA;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Quiver,
    Companion,
    Basis,
    Surface,
    Patterns,
}

impl FixtureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureKind::Quiver => "quiver",
            FixtureKind::Companion => "companion",
            FixtureKind::Basis => "basis",
            FixtureKind::Surface => "surface",
            FixtureKind::Patterns => "patterns",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            FixtureKind::Quiver => "qvr",
            FixtureKind::Companion => "qcc",
            _ => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub summary: &'static str,
    pub origin: &'static str,
    /// Read off a drawing, so vertex labels or orientations were inferred.
    pub transcribed: bool,
}

const fn fx(
    name: &'static str,
    kind: FixtureKind,
    summary: &'static str,
    origin: &'static str,
    transcribed: bool,
) -> Fixture {
    Fixture {
        name,
        kind,
        summary,
        origin,
        transcribed,
    }
}

use FixtureKind::{Basis as B, Companion as C, Patterns as P, Quiver as Q, Surface as S};

static FIXTURES: &[Fixture] = &[
    fx(
        "x6",
        Q,
        "exceptional mutation-finite quiver X6: two triangles with a double arrow sharing vertex 1, plus a pendant at 1",
        "drawing of the exceptional quivers; pendant direction chosen (the class does not depend on it)",
        true,
    ),
    fx(
        "x7",
        Q,
        "exceptional mutation-finite quiver X7: three triangles with a double arrow sharing vertex 1",
        "drawing of the exceptional quivers",
        true,
    ),
    fx(
        "oriented-triangle",
        Q,
        "oriented 3-cycle 1 -> 3 -> 2 -> 1 whose all-negative companion stops being a companion after mutation at 2",
        "orientation inferred as the unique one consistent with the companion before and after mutation",
        true,
    ),
    fx(
        "oriented-triangle-companion",
        C,
        "companion of oriented-triangle with every off-diagonal entry -1",
        "printed matrix",
        false,
    ),
    fx(
        "twice-punctured-torus",
        Q,
        "quiver of a triangulated twice-punctured closed torus; it has no fully compatible companion",
        "four oriented triangles glued along a perfect matching of their vertices; the unique connected gluing class without a fully compatible companion; lies in the mutation class of a 2x1 grid triangulation",
        false,
    ),
    fx(
        "compatibility-loss",
        Q,
        "quiver whose fully compatible companion mutates at vertex 1 into one that is not fully compatible",
        "arrows read from the drawing and checked against the Gram matrix of the accompanying vectors",
        true,
    ),
    fx(
        "compatibility-loss-basis",
        B,
        "vectors e3-e1, e4-e1, e1+e2, e2+e3, e2+e4 realizing the companion of compatibility-loss",
        "vector labels of the drawing",
        true,
    ),
    fx(
        "torus-b1-m1",
        S,
        "torus with one boundary component carrying one marked point",
        "surface list",
        false,
    ),
    fx(
        "torus-b1-m1-quiver",
        Q,
        "quiver of a triangulated torus with one boundary component and one marked point, labeled to match torus-b1-m1-basis",
        "drawing of the flat torus; the direction of the arrow between 1 and 4 was inferred",
        true,
    ),
    fx(
        "torus-b1-m1-basis",
        B,
        "vectors e1-e2, e1-e3, e1-e3, e2-e3 realizing a companion of torus-b1-m1-quiver",
        "vector labels of the flat torus drawing",
        true,
    ),
    fx(
        "torus-b1-m2",
        S,
        "torus with one boundary component carrying two marked points",
        "surface list",
        false,
    ),
    fx(
        "handle-relations-quiver",
        Q,
        "five-vertex quiver carrying the longest handle relation",
        "shape of the bundled relation pattern R5b",
        false,
    ),
    fx(
        "handle-relations-basis",
        B,
        "vectors u1..u5 in the ambient space with t = 4, s = 2 realizing handle-relations-quiver",
        "printed vectors",
        false,
    ),
    fx(
        "handle-relations-r4-quiver",
        Q,
        "four-vertex quiver carrying the relation R4",
        "shape of the bundled relation pattern R4",
        false,
    ),
    fx(
        "handle-relations-r4-basis",
        B,
        "vectors u1, u2, u3 and e2-e4 realizing handle-relations-r4-quiver",
        "printed vectors",
        false,
    ),
    fx("disk-5", S, "disk with 5 marked points", "surface list", false),
    fx("disk-6", S, "disk with 6 marked points", "surface list", false),
    fx("disk-7", S, "disk with 7 marked points", "surface list", false),
    fx("disk-8", S, "disk with 8 marked points", "surface list", false),
    fx("annulus-1-1", S, "annulus with one marked point on each boundary", "surface list", false),
    fx("annulus-2-1", S, "annulus with 2 and 1 marked points", "surface list", false),
    fx("annulus-2-2", S, "annulus with 2 marked points on each boundary", "surface list", false),
    fx(
        "pants-1-1-1",
        S,
        "sphere with three boundary components, one marked point on each",
        "surface list",
        false,
    ),
    fx(
        "relation-patterns",
        P,
        "induced subquiver shapes and relators checked in the reflection representation",
        "relation catalog; arrow orientations inferred where the drawing leaves them implicit",
        true,
    ),
];

/// Names of the surface fixtures, smallest first.
pub const SURFACES: &[&str] = &[
    "disk-5",
    "disk-6",
    "disk-7",
    "disk-8",
    "annulus-1-1",
    "annulus-2-1",
    "annulus-2-2",
    "pants-1-1-1",
    "torus-b1-m1",
    "torus-b1-m2",
];

pub fn all() -> &'static [Fixture] {
    FIXTURES
}

pub fn find(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_owned()))
}

fn quiver_from(n: usize, arrows: &[(usize, usize, i64)]) -> Quiver {
    let zero_based: Vec<_> = arrows.iter().map(|&(i, j, w)| (i - 1, j - 1, w)).collect();
    Quiver::from_arrows(n, &zero_based).expect("fixture arrows are valid")
}

fn basis_from(t: usize, s: usize, vectors: &[&[i64]]) -> CompanionBasis {
    let vs: Vec<Vec<i64>> = vectors.iter().map(|v| v.to_vec()).collect();
    CompanionBasis::from_integers(Ambient::new(t, s), &vs).expect("fixture vectors have the ambient length")
}

fn wrong_kind(f: &Fixture, wanted: FixtureKind) -> Error {
    Error::UnknownFixture(format!("{} (a {} fixture, not a {})", f.name, f.kind.as_str(), wanted.as_str()))
}

pub fn quiver(name: &str) -> Result<Quiver> {
    let f = find(name)?;
    let q = match f.name {
        "x6" => quiver_from(6, &[(1, 2, 1), (2, 3, 2), (3, 1, 1), (1, 4, 1), (4, 5, 2), (5, 1, 1), (1, 6, 1)]),
        "x7" => quiver_from(
            7,
            &[
                (1, 2, 1),
                (2, 3, 2),
                (3, 1, 1),
                (1, 4, 1),
                (4, 5, 2),
                (5, 1, 1),
                (1, 6, 1),
                (6, 7, 2),
                (7, 1, 1),
            ],
        ),
        "oriented-triangle" => quiver_from(3, &[(2, 1, 1), (3, 2, 1), (1, 3, 1)]),
        "twice-punctured-torus" => quiver_from(
            6,
            &[
                (1, 2, 1),
                (1, 3, 1),
                (1, 5, -1),
                (1, 6, -1),
                (2, 3, -1),
                (2, 4, 1),
                (2, 5, 1),
                (3, 4, -1),
                (3, 6, 1),
                (4, 5, 1),
                (4, 6, -1),
                (5, 6, 1),
            ],
        ),
        "compatibility-loss" => quiver_from(
            5,
            &[
                (2, 1, 1),
                (1, 3, 1),
                (1, 4, 1),
                (3, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 2, 1),
                (5, 3, 1),
            ],
        ),
        "torus-b1-m1-quiver" => quiver_from(4, &[(2, 3, 2), (3, 1, 1), (1, 2, 1), (3, 4, 1), (4, 2, 1), (1, 4, 1)]),
        "handle-relations-quiver" => pattern_quiver("R5b"),
        "handle-relations-r4-quiver" => pattern_quiver("R4"),
        _ => return Err(wrong_kind(f, Q)),
    };
    Ok(q)
}

fn pattern_quiver(name: &str) -> Quiver {
    crate::weyl::patterns()
        .iter()
        .find(|p| p.name == name)
        .expect("bundled pattern exists")
        .quiver()
}

pub fn companion(name: &str) -> Result<Companion> {
    let f = find(name)?;
    match f.name {
        "oriented-triangle-companion" => Ok(Companion::all_negative(&quiver("oriented-triangle")?)),
        _ => Err(wrong_kind(f, C)),
    }
}

pub fn basis(name: &str) -> Result<CompanionBasis> {
    let f = find(name)?;
    const U1: &[i64] = &[0, 1, -1, 0, 1, 0, 0, 0];
    const U2: &[i64] = &[1, 0, -1, 0, 0, 0, 0, 0];
    const U3: &[i64] = &[0, 1, -1, 0, 0, 1, 0, 0];
    let b = match f.name {
        "compatibility-loss-basis" => basis_from(
            4,
            0,
            &[&[-1, 0, 1, 0], &[-1, 0, 0, 1], &[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 1, 0, 1]],
        ),
        "torus-b1-m1-basis" => basis_from(3, 0, &[&[1, -1, 0], &[1, 0, -1], &[1, 0, -1], &[0, 1, -1]]),
        "handle-relations-basis" => basis_from(
            4,
            2,
            &[U1, U2, U3, &[1, -1, 0, 0, 0, 0, 0, 0], &[1, 0, 0, -1, 0, 0, 0, 0]],
        ),
        "handle-relations-r4-basis" => basis_from(4, 2, &[U1, U2, U3, &[0, 1, 0, -1, 0, 0, 0, 0]]),
        _ => return Err(wrong_kind(f, B)),
    };
    Ok(b)
}

pub fn surface(name: &str) -> Result<SurfaceSpec> {
    let f = find(name)?;
    let (g, k) = match f.name {
        "disk-5" => (0, vec![5]),
        "disk-6" => (0, vec![6]),
        "disk-7" => (0, vec![7]),
        "disk-8" => (0, vec![8]),
        "annulus-1-1" => (0, vec![1, 1]),
        "annulus-2-1" => (0, vec![2, 1]),
        "annulus-2-2" => (0, vec![2, 2]),
        "pants-1-1-1" => (0, vec![1, 1, 1]),
        "torus-b1-m1" => (1, vec![1]),
        "torus-b1-m2" => (1, vec![2]),
        _ => return Err(wrong_kind(f, S)),
    };
    SurfaceSpec::new(g, k)
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.{}", self.name, self.kind.extension())
    }

    fn header_lines(&self) -> Vec<String> {
        vec![
            format!("fixture: {}", self.name),
            self.summary.to_owned(),
            format!("origin: {}", self.origin),
            format!("transcribed: {}", if self.transcribed { "yes" } else { "no" }),
        ]
    }

    /// The fixture as a file in its native format, with a provenance
    /// header (comment lines, or a `source` field in JSON).
    pub fn render(&self) -> String {
        let lines = self.header_lines();
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        let source = lines.join("; ");
        match self.kind {
            FixtureKind::Quiver => io::quiver_to_qvr(&quiver(self.name).unwrap(), &refs),
            FixtureKind::Companion => io::companion_to_qcc(&companion(self.name).unwrap(), &refs),
            FixtureKind::Basis => io::basis_to_json(&basis(self.name).unwrap(), Some(&source)),
            FixtureKind::Surface => io::surface_spec_to_json(&surface(self.name).unwrap(), Some(&source)),
            FixtureKind::Patterns => PATTERN_DATA.to_owned(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::is_companion;

    #[test]
    fn every_fixture_loads_and_round_trips() {
        for f in all() {
            let text = f.render();
            assert!(text.contains(f.name) || f.kind == FixtureKind::Patterns, "{}", f.name);
            match f.kind {
                FixtureKind::Quiver => assert_eq!(io::parse_quiver(&text).unwrap(), quiver(f.name).unwrap()),
                FixtureKind::Companion => {
                    assert_eq!(io::parse_companion(&text).unwrap(), companion(f.name).unwrap())
                }
                FixtureKind::Basis => assert_eq!(io::parse_basis(&text).unwrap(), basis(f.name).unwrap()),
                FixtureKind::Surface => {
                    assert_eq!(io::parse_surface_spec(&text).unwrap(), surface(f.name).unwrap())
                }
                FixtureKind::Patterns => assert!(!crate::weyl::patterns().is_empty()),
            }
        }
    }

    #[test]
    fn bases_realize_their_quivers() {
        for (q, b) in [
            ("compatibility-loss", "compatibility-loss-basis"),
            ("torus-b1-m1-quiver", "torus-b1-m1-basis"),
            ("handle-relations-quiver", "handle-relations-basis"),
            ("handle-relations-r4-quiver", "handle-relations-r4-basis"),
        ] {
            let a = basis(b).unwrap().companion().unwrap();
            assert!(is_companion(&a, &quiver(q).unwrap()).unwrap(), "{b}");
        }
    }

    #[test]
    fn surface_list_matches_fixtures() {
        for name in SURFACES {
            assert_eq!(find(name).unwrap().kind, FixtureKind::Surface);
        }
        let listed = all().iter().filter(|f| f.kind == FixtureKind::Surface).count();
        assert_eq!(listed, SURFACES.len());
    }

    #[test]
    fn unknown_and_mismatched_names() {
        assert_eq!(find("nope").unwrap_err(), Error::UnknownFixture("nope".into()));
        assert!(quiver("disk-5").is_err());
        assert!(surface("x7").is_err());
    }
}
