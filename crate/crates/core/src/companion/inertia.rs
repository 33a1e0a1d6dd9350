use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn is_positive_semidefinite(&self) -> bool {
        self.n_minus == 0
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Exact inertia of a symmetric integer matrix.
pub fn inertia(rows: &[Vec<i64>]) -> Result<Inertia> {
    let m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    inertia_rational(&m)
}

/// Exact inertia of a symmetric rational matrix.
///
/// Symmetric elimination: a nonzero diagonal pivot contributes its sign;
/// when the diagonal of the remaining block vanishes, a 2x2 pivot
/// `[[0, m], [m, 0]]` contributes one positive and one negative eigenvalue.
/// Sylvester's law makes the count independent of the pivot choices.
pub fn inertia_rational(rows: &[Vec<BigRational>]) -> Result<Inertia> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: row.len(),
                n,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                return Err(Error::NotSymmetric { i, j });
            }
        }
    }
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut result = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    while !m.is_empty() {
        let size = m.len();
        if let Some(p) = (0..size).find(|&i| !m[i][i].is_zero()) {
            if m[p][p].is_positive() {
                result.n_plus += 1;
            } else {
                result.n_minus += 1;
            }
            m = schur_1(&m, p);
        } else if let Some((p, q)) = first_offdiagonal(&m) {
            result.n_plus += 1;
            result.n_minus += 1;
            m = schur_2(&m, p, q);
        } else {
            result.n_zero += size;
            break;
        }
    }
    Ok(result)
}

fn first_offdiagonal(m: &[Vec<BigRational>]) -> Option<(usize, usize)> {
    let n = m.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !m[i][j].is_zero())
}

fn schur_1(m: &[Vec<BigRational>], p: usize) -> Vec<Vec<BigRational>> {
    let rest: Vec<usize> = (0..m.len()).filter(|&i| i != p).collect();
    let pivot = &m[p][p];
    rest.iter()
        .map(|&i| {
            rest.iter()
                .map(|&j| &m[i][j] - &m[i][p] * &m[p][j] / pivot)
                .collect()
        })
        .collect()
}

// Pivot block [[0, c], [c, 0]] with inverse [[0, 1/c], [1/c, 0]].
fn schur_2(m: &[Vec<BigRational>], p: usize, q: usize) -> Vec<Vec<BigRational>> {
    let rest: Vec<usize> = (0..m.len()).filter(|&i| i != p && i != q).collect();
    let c = &m[p][q];
    rest.iter()
        .map(|&i| {
            rest.iter()
                .map(|&j| {
                    let cross = &m[i][p] * &m[q][j] + &m[i][q] * &m[p][j];
                    &m[i][j] - cross / c
                })
                .collect()
        })
        .collect()
}
