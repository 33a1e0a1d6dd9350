//! Reflection representations on the extended space and verification of
//! relator words located as induced subquivers.

use crate::companion::{is_companion, lift_basis, mismatches, Ambient, CompanionBasis};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Largest exponent tried by [`word_order`].
pub const ORDER_CAP: usize = 12;

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n: dim,
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut data = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.get(i, j);
            }
        }
        Matrix { dim: d, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut data = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += x * other.get(k, j);
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim)
    }
}

/// Matrix of `x -> x - <x, u> u` on the ordered ambient basis; column `j`
/// is the image of basis vector `j`.
pub fn reflection_matrix(u: &[i64], ambient: Ambient) -> Result<Matrix> {
    let d = ambient.dim();
    if u.len() != d {
        return Err(Error::BadVectorLength {
            index: 0,
            len: u.len(),
            dim: d,
        });
    }
    let form = ambient.form_matrix();
    // (F u)_j = <b_j, u>
    let fu: Vec<i64> = (0..d).map(|j| (0..d).map(|k| form[j][k] * u[k]).sum()).collect();
    let norm: i64 = (0..d).map(|j| u[j] * fu[j]).sum();
    if norm != 2 {
        return Err(Error::BadNorm {
            index: 0,
            value: norm.to_string(),
        });
    }
    let mut m = Matrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            m.data[i * d + j] -= u[i] * fu[j];
        }
    }
    Ok(m)
}

/// One reflection per companion-basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionRep {
    pub ambient: Ambient,
    pub generators: Vec<Matrix>,
}

impl ReflectionRep {
    /// Product of generators along a 0-based word, left to right.
    pub fn word(&self, word: &[usize]) -> Matrix {
        word.iter()
            .fold(Matrix::identity(self.ambient.dim()), |acc, &g| acc.mul(&self.generators[g]))
    }

    pub fn form_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.ambient.form_matrix()).expect("form matrix is square")
    }
}

/// Reflections in linearly independent integer vectors of norm 2.
pub fn build_rep(basis: &CompanionBasis) -> Result<ReflectionRep> {
    let vectors = basis.integer_vectors()?;
    if let Some(i) = basis.first_dependent() {
        return Err(Error::LinearlyDependent(i));
    }
    let generators = vectors
        .iter()
        .enumerate()
        .map(|(index, u)| {
            reflection_matrix(u, basis.ambient()).map_err(|e| match e {
                Error::BadNorm { value, .. } => Error::BadNorm { index, value },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReflectionRep {
        ambient: basis.ambient(),
        generators,
    })
}

/// Smallest `m <= cap` with `(word)^m = 1`, or `None` if there is none.
pub fn word_order(rep: &ReflectionRep, word: &[usize], cap: usize) -> Option<usize> {
    let w = rep.word(word);
    let mut p = w.clone();
    for m in 1..=cap {
        if p.is_identity() {
            return Some(m);
        }
        p = p.mul(&w);
    }
    None
}

/// Shape of an induced subquiver together with its relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationPattern {
    pub name: String,
    pub description: String,
    pub vertices: usize,
    /// `[i, j, w]`, 1-based: `w` arrows from `i` to `j`.
    pub arrows: Vec<[i64; 3]>,
    /// 1-based generator word, repeated `power` times.
    pub word: Vec<usize>,
    pub power: usize,
    pub orientation: String,
}

impl RelationPattern {
    pub fn quiver(&self) -> Quiver {
        let arrows: Vec<(usize, usize, i64)> = self
            .arrows
            .iter()
            .map(|&[i, j, w]| (i as usize - 1, j as usize - 1, w))
            .collect();
        Quiver::from_arrows(self.vertices, &arrows).expect("pattern data is well formed")
    }

    /// Full relator with pattern vertices 0-based.
    pub fn relator(&self) -> Vec<usize> {
        let base: Vec<usize> = self.word.iter().map(|&g| g - 1).collect();
        base.repeat(self.power)
    }
}

#[derive(Deserialize)]
struct PatternFile {
    version: u32,
    patterns: Vec<RelationPattern>,
}

/// Raw contents of the bundled pattern file.
pub const PATTERN_DATA: &str = include_str!("../data/relation_patterns.json");

/// The bundled relation patterns.
pub fn patterns() -> &'static [RelationPattern] {
    static CELL: OnceLock<Vec<RelationPattern>> = OnceLock::new();
    CELL.get_or_init(|| {
        let file: PatternFile = serde_json::from_str(PATTERN_DATA).expect("bundled pattern file parses");
        assert_eq!(file.version, 1, "unsupported pattern file version");
        file.patterns
    })
}

/// An induced subquiver matching a pattern, with its relator in the
/// quiver's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    pub pattern: String,
    /// `vertices[p]` is the quiver vertex playing pattern vertex `p`.
    pub vertices: Vec<usize>,
    pub relator: Vec<usize>,
}

fn matches_shape(q: &Quiver, shape: &Quiver, map: &[usize], sign: i64) -> bool {
    let m = map.len();
    (0..m).all(|a| (a + 1..m).all(|b| q.get(map[a], map[b]) == sign * shape.get(a, b)))
}

fn extend_maps(
    q: &Quiver,
    shape: &Quiver,
    sign: i64,
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let depth = map.len();
    if depth == shape.n() {
        out.push(map.clone());
        return;
    }
    for v in 0..q.n() {
        if used[v] {
            continue;
        }
        if (0..depth).all(|a| q.get(map[a], v) == sign * shape.get(a, depth)) {
            used[v] = true;
            map.push(v);
            extend_maps(q, shape, sign, map, used, out);
            map.pop();
            used[v] = false;
        }
    }
}

/// All induced subquivers of `q` matching a bundled pattern or its
/// opposite. Each vertex set is reported once per pattern, with the
/// lexicographically smallest matching assignment.
pub fn find_relation_instances(q: &Quiver) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for pattern in patterns() {
        let shape = pattern.quiver();
        if shape.n() > q.n() {
            continue;
        }
        let mut maps = Vec::new();
        for sign in [1, -1] {
            let mut used = vec![false; q.n()];
            extend_maps(q, &shape, sign, &mut Vec::new(), &mut used, &mut maps);
        }
        debug_assert!(maps
            .iter()
            .all(|m| matches_shape(q, &shape, m, 1) || matches_shape(q, &shape, m, -1)));
        maps.sort();
        let mut seen = std::collections::HashSet::new();
        for map in maps {
            let mut key = map.clone();
            key.sort_unstable();
            if seen.insert(key) {
                let relator = pattern.relator().iter().map(|&g| map[g]).collect();
                out.push(RelationInstance {
                    pattern: pattern.name.clone(),
                    vertices: map,
                    relator,
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.pattern, &a.vertices).cmp(&(&b.pattern, &b.vertices)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    #[serde(flatten)]
    pub instance: RelationInstance,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub instances: Vec<InstanceResult>,
    pub pass: bool,
}

/// Evaluates every relator found in `q` in the reflection representation
/// of `basis`. Dependent vectors are first lifted with fresh radical
/// generators, which leaves the Gram matrix unchanged.
pub fn verify_relations(q: &Quiver, basis: &CompanionBasis) -> Result<RelationReport> {
    let a = basis.companion()?;
    if !is_companion(&a, q)? {
        let (i, j) = mismatches(&a, q)[0];
        return Err(Error::NotCompanion { i, j });
    }
    let lifted = lift_basis(basis)?;
    let rep = build_rep(&lifted)?;
    let instances: Vec<InstanceResult> = find_relation_instances(q)
        .into_par_iter()
        .map(|instance| {
            let holds = rep.word(&instance.relator).is_identity();
            InstanceResult { instance, holds }
        })
        .collect();
    let pass = instances.iter().all(|r| r.holds);
    Ok(RelationReport { instances, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::CompanionBasis;

    fn e(t: usize, coords: &[(usize, i64)]) -> Vec<i64> {
        let mut v = vec![0; t];
        for &(i, c) in coords {
            v[i] = c;
        }
        v
    }

    #[test]
    fn reflection_is_an_isometric_involution() {
        let amb = Ambient::new(3, 1);
        let u = vec![1, -1, 0, 1, 0];
        let m = reflection_matrix(&u, amb).unwrap();
        assert!(m.mul(&m).is_identity());
        let f = Matrix::from_rows(&amb.form_matrix()).unwrap();
        assert_eq!(m.transpose().mul(&f).mul(&m), f);
    }

    #[test]
    fn rejects_wrong_norm() {
        assert!(matches!(
            reflection_matrix(&[1, 0, 0], Ambient::new(3, 0)),
            Err(Error::BadNorm { .. })
        ));
    }

    #[test]
    fn orthogonal_roots_commute_and_adjacent_roots_braid() {
        let b = CompanionBasis::from_integers(
            Ambient::new(4, 0),
            &[e(4, &[(0, 1), (1, -1)]), e(4, &[(2, 1), (3, -1)]), e(4, &[(1, 1), (2, -1)])],
        )
        .unwrap();
        let rep = build_rep(&b).unwrap();
        assert_eq!(word_order(&rep, &[0, 1], ORDER_CAP), Some(2));
        assert_eq!(word_order(&rep, &[0, 2], ORDER_CAP), Some(3));
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let b = CompanionBasis::from_integers(Ambient::new(2, 0), &[vec![1, -1], vec![-1, 1]]).unwrap();
        assert_eq!(build_rep(&b), Err(Error::LinearlyDependent(1)));
    }

    #[test]
    fn path_has_only_rank_two_relations() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let found: Vec<(String, Vec<usize>)> = find_relation_instances(&q)
            .into_iter()
            .map(|i| (i.pattern, i.vertices))
            .collect();
        assert_eq!(
            found,
            vec![
                ("R2-braid".to_string(), vec![0, 1]),
                ("R2-braid".to_string(), vec![1, 2]),
                ("R2-commute".to_string(), vec![0, 2]),
            ]
        );
    }

    #[test]
    fn double_arrows_carry_no_rank_two_relation() {
        let q = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert!(find_relation_instances(&q).is_empty());
    }

    #[test]
    fn bundled_patterns_are_consistent() {
        let names: Vec<&str> = patterns().iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["R2-commute", "R2-braid", "R3a", "R3b", "R4", "R5a", "R5b"]);
        for p in patterns() {
            assert!(p.word.iter().all(|&g| g >= 1 && g <= p.vertices));
            assert!(p.quiver().is_connected() || p.vertices == 2);
        }
    }
}
