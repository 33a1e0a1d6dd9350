//! Quasi-Cartan companions: symmetric matrices with diagonal 2 whose
//! off-diagonal moduli match a quiver.

mod basis;
mod inertia;
mod search;

pub(crate) use basis::rat;
pub use basis::{lift_basis, reflect_basis, Ambient, CompanionBasis};
pub use inertia::{inertia, inertia_rational, Inertia};
pub use search::{enumerate_fully_compatible, SearchOptions, MAX_SEARCH_ARROWS};

use crate::error::{Error, Result};
use crate::quiver::{chordless_cycles, ChordlessCycle, Quiver};
use serde::Serialize;

/// Symmetric integer matrix with every diagonal entry equal to 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Companion {
    n: usize,
    a: Vec<i64>,
}

impl Companion {
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            a.extend_from_slice(row);
        }
        for i in 0..n {
            if a[i * n + i] != 2 {
                return Err(Error::BadDiagonal {
                    i,
                    value: a[i * n + i],
                });
            }
            for j in i + 1..n {
                if a[i * n + j] != a[j * n + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { n, a })
    }

    /// The companion whose off-diagonal entries are `-|b_ij|`: the Cartan
    /// matrix of the underlying graph.
    pub fn all_negative(q: &Quiver) -> Self {
        Self::with_signs(q, |_, _| -1)
    }

    /// Companion of `q` with `a_ij = sign(i, j) * |b_ij|` for `i < j`.
    pub fn with_signs(q: &Quiver, mut sign: impl FnMut(usize, usize) -> i64) -> Self {
        let n = q.n();
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 2;
            for j in i + 1..n {
                let w = q.get(i, j).abs();
                if w != 0 {
                    let v = sign(i, j).signum() * w;
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
        }
        Self { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Companion {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Companion { n, a }
    }

    pub fn restricted(&self, subset: &[usize]) -> Companion {
        let m = subset.len();
        let mut a = vec![0; m * m];
        for (x, &i) in subset.iter().enumerate() {
            for (y, &j) in subset.iter().enumerate() {
                a[x * m + y] = self.get(i, j);
            }
        }
        Companion { n: m, a }
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.rows()).expect("companions are symmetric")
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.inertia().n_minus == 0
    }
}

fn check_dims(a: &Companion, q: &Quiver) -> Result<()> {
    if a.n() != q.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: q.n(),
        });
    }
    Ok(())
}

fn require_companion(a: &Companion, q: &Quiver) -> Result<()> {
    check_dims(a, q)?;
    match mismatches(a, q).first() {
        Some(&(i, j)) => Err(Error::NotCompanion { i, j }),
        None => Ok(()),
    }
}

/// Pairs `i < j` where `|a_ij| != |b_ij|`.
pub fn mismatches(a: &Companion, q: &Quiver) -> Vec<(usize, usize)> {
    let n = a.n().min(q.n());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i, j).abs() != q.get(i, j).abs() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether `|a_ij| = |b_ij|` for all `i != j`.
pub fn is_companion(a: &Companion, q: &Quiver) -> Result<bool> {
    check_dims(a, q)?;
    Ok(mismatches(a, q).is_empty())
}

/// Mutation of a companion along with its quiver at vertex `k`.
/// The result need not be a companion of `q.mutate(k)`.
pub fn mutate_companion(a: &Companion, q: &Quiver, k: usize) -> Result<Companion> {
    require_companion(a, q)?;
    q.check_vertex(k)?;
    let n = a.n();
    let mut out = a.a.clone();
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                2
            } else if j == k {
                q.get(i, k).signum() * a.get(i, k)
            } else if i == k {
                -q.get(k, j).signum() * a.get(k, j)
            } else {
                let bb = (q.get(i, k) * q.get(k, j)).max(0);
                a.get(i, j) - (a.get(i, k) * a.get(k, j)).signum() * bb
            };
            out[i * n + j] = v;
        }
    }
    Ok(Companion { n, a: out })
}

fn is_oriented_triangle(q: &Quiver, i: usize, j: usize, k: usize) -> bool {
    let s = q.get(i, j).signum();
    s != 0 && q.get(j, k).signum() == s && q.get(k, i).signum() == s
}

fn triangle_ok(a: &Companion, q: &Quiver, i: usize, j: usize, k: usize) -> bool {
    let p = a.get(i, j).signum() * a.get(j, k).signum() * a.get(k, i).signum();
    if is_oriented_triangle(q, i, j, k) {
        p > 0
    } else {
        p <= 0
    }
}

/// Triangle sign condition at `k`: for all `i, j != k`, `a_ij a_jk a_ki > 0`
/// on oriented 3-cycles through `k` and `<= 0` otherwise.
pub fn is_k_compatible(a: &Companion, q: &Quiver, k: usize) -> Result<bool> {
    require_companion(a, q)?;
    q.check_vertex(k)?;
    let n = q.n();
    for i in 0..n {
        for j in i + 1..n {
            if i != k && j != k && !triangle_ok(a, q, i, j, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// k-compatible for every vertex k.
pub fn is_fully_compatible(a: &Companion, q: &Quiver) -> Result<bool> {
    require_companion(a, q)?;
    let n = q.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !triangle_ok(a, q, i, j, k) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Oriented 3-cycles of `q` on which `a` has non-positive sign product.
pub fn compatibility_failures(a: &Companion, q: &Quiver) -> Result<Vec<[usize; 3]>> {
    require_companion(a, q)?;
    let n = q.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !triangle_ok(a, q, i, j, k) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

/// Sign of the cyclic product of `-a` along a chordless cycle, with the
/// sign it is required to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub vertices: Vec<usize>,
    pub oriented: bool,
    pub product_sign: i64,
}

impl CycleCheck {
    pub fn holds(&self) -> bool {
        if self.oriented {
            self.product_sign < 0
        } else {
            self.product_sign > 0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub cycles_checked: usize,
    pub failures: Vec<CycleCheck>,
}

fn check_cycle(a: &Companion, cycle: &ChordlessCycle) -> CycleCheck {
    let product_sign = cycle
        .edges()
        .map(|(i, j)| -a.get(i, j).signum())
        .product();
    CycleCheck {
        vertices: cycle.vertices.clone(),
        oriented: cycle.oriented,
        product_sign,
    }
}

/// Cyclic sign condition over every chordless cycle.
pub fn admissibility(a: &Companion, q: &Quiver) -> Result<AdmissibilityReport> {
    require_companion(a, q)?;
    let cycles = chordless_cycles(q);
    let failures: Vec<CycleCheck> = cycles
        .iter()
        .map(|c| check_cycle(a, c))
        .filter(|c| !c.holds())
        .collect();
    Ok(AdmissibilityReport {
        admissible: failures.is_empty(),
        cycles_checked: cycles.len(),
        failures,
    })
}

pub fn is_admissible(a: &Companion, q: &Quiver) -> Result<bool> {
    Ok(admissibility(a, q)?.admissible)
}

/// Negates row and column `i`.
pub fn flip_sign(a: &Companion, i: usize) -> Result<Companion> {
    let n = a.n();
    if i >= n {
        return Err(Error::VertexOutOfRange { index: i, n });
    }
    let mut out = a.clone();
    for j in 0..n {
        if j != i {
            out.a[i * n + j] = -out.a[i * n + j];
            out.a[j * n + i] = -out.a[j * n + i];
        }
    }
    Ok(out)
}

/// Breadth-first spanning forest of the nonzero off-diagonal pattern, as
/// `(parent, child)` pairs; each tree is rooted at its smallest vertex.
pub(crate) fn spanning_forest(n: usize, joined: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut seen = vec![false; n];
    let mut edges = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if !seen[w] && w != v && joined(v, w) {
                    seen[w] = true;
                    edges.push((v, w));
                    queue.push_back(w);
                }
            }
        }
    }
    edges
}

/// Representative of the sign-flip class of `a`: every spanning-forest
/// entry made positive. Returns the representative and the set of flipped
/// vertices.
pub fn sign_normalize(a: &Companion) -> (Companion, Vec<bool>) {
    let n = a.n();
    let mut flipped = vec![false; n];
    for (p, c) in spanning_forest(n, |i, j| a.get(i, j) != 0) {
        let sign = if flipped[p] { -1 } else { 1 };
        if sign * a.get(p, c) < 0 {
            flipped[c] = true;
        }
    }
    let mut out = a.clone();
    for i in 0..n {
        for j in 0..n {
            if flipped[i] != flipped[j] {
                out.a[i * n + j] = -out.a[i * n + j];
            }
        }
    }
    (out, flipped)
}

/// Whether some set of simultaneous row/column sign changes maps `a` to `b`.
pub fn sign_equivalent(a: &Companion, b: &Companion) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(sign_normalize(a).0 == sign_normalize(b).0)
}
