//! Exchange matrices, mutation, chordless cycles and canonical forms.

mod canon;
mod cycles;

pub use canon::{canonical_form, CanonicalForm};
pub use cycles::{chordless_cycles, ChordlessCycle};

use crate::error::{Error, Result};

/// A quiver without loops or 2-cycles, stored as its skew-symmetric
/// exchange matrix. `b(i, j) > 0` means `b(i, j)` arrows from `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
    labels: Option<Vec<String>>,
}

impl Quiver {
    /// Quiver on `n` vertices with no arrows.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            b: vec![0; n * n],
            labels: None,
        }
    }

    /// Builds a quiver from a full exchange matrix, checking skew-symmetry.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut b = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            b.extend_from_slice(row);
        }
        for i in 0..n {
            for j in i..n {
                if b[i * n + j] != -b[j * n + i] {
                    return Err(Error::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(Self { n, b, labels: None })
    }

    /// Builds a quiver from `(i, j, w)` triples meaning `b(i, j) = w` (0-based).
    /// Repeated pairs accumulate.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut q = Self::empty(n);
        for &(i, j, w) in arrows {
            q.check_vertex(i)?;
            q.check_vertex(j)?;
            if i == j {
                if w != 0 {
                    return Err(Error::NotSkewSymmetric { i, j });
                }
                continue;
            }
            q.b[i * n + j] += w;
            q.b[j * n + i] -= w;
        }
        Ok(q)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: labels.len(),
                right: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn raw(&self) -> &[i64] {
        &self.b
    }

    #[inline]
    pub fn joined(&self, i: usize, j: usize) -> bool {
        self.get(i, j) != 0
    }

    pub fn check_vertex(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: k,
                n: self.n,
            })
        }
    }

    /// Nonzero upper-triangular entries `(i, j, b_ij)` with `i < j`, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = self.get(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// Number of joined vertex pairs.
    pub fn edge_count(&self) -> usize {
        self.arrows().len()
    }

    pub fn max_weight(&self) -> i64 {
        self.b.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.joined(v, w))
    }

    /// Connected components of the underlying graph, each sorted, ordered
    /// by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Fomin–Zelevinsky mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i * n + j] = -self.get(i, j);
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    b[i * n + j] = self.get(i, j) + bik.signum() * (bik * bkj).max(0);
                }
            }
        }
        Ok(Quiver {
            n,
            b,
            labels: self.labels.clone(),
        })
    }

    /// Applies mutations in order.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Quiver> {
        let mut q = self.clone();
        for &k in seq {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Induced subquiver on `subset`; vertex `i` of the result is
    /// `subset[i]` of `self`.
    pub fn subquiver(&self, subset: &[usize]) -> Result<Quiver> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; self.n];
        for &v in subset {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let m = subset.len();
        let mut b = vec![0; m * m];
        for (a, &i) in subset.iter().enumerate() {
            for (c, &j) in subset.iter().enumerate() {
                b[a * m + c] = self.get(i, j);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| subset.iter().map(|&v| l[v].clone()).collect());
        Ok(Quiver { n: m, b, labels })
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Quiver {
        let n = self.n;
        debug_assert_eq!(perm.len(), n);
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (v, name) in l.iter().enumerate() {
                out[perm[v]] = name.clone();
            }
            out
        });
        Quiver { n, b, labels }
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            b: self.b.iter().map(|w| -w).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Same exchange matrix, labels dropped.
    pub fn unlabeled(&self) -> Quiver {
        Quiver {
            n: self.n,
            b: self.b.clone(),
            labels: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oriented_triangle() -> Quiver {
        // 2 -> 1, 3 -> 2, 1 -> 3
        Quiver::from_arrows(3, &[(0, 1, -1), (1, 2, -1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn mutation_of_oriented_triangle_is_a_path() {
        let m = oriented_triangle().mutate(1).unwrap();
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.get(0, 2), 0);
    }

    #[test]
    fn kronecker_mutation_reverses() {
        let q = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert_eq!(q.mutate(0).unwrap().get(0, 1), -2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Quiver::from_matrix(&[vec![0, 1], vec![1, 0]]),
            Err(Error::NotSkewSymmetric { .. })
        ));
        assert!(matches!(
            oriented_triangle().mutate(3),
            Err(Error::VertexOutOfRange { index: 3, n: 3 })
        ));
        assert_eq!(oriented_triangle().subquiver(&[]), Err(Error::EmptySubset));
    }

    #[test]
    fn subquiver_edge_cases() {
        let q = oriented_triangle();
        assert_eq!(q.subquiver(&[0, 1, 2]).unwrap(), q);
        let single = q.subquiver(&[1]).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.get(0, 0), 0);
    }

    #[test]
    fn components_split_disjoint_parts() {
        let q = Quiver::from_arrows(5, &[(0, 3, 1), (1, 2, 2)]).unwrap();
        assert_eq!(q.components(), vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert!(!q.is_connected());
    }
}
