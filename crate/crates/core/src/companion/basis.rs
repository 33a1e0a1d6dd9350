use super::{require_companion, Companion};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Ambient space with ordered basis `e_1..e_t, d_1..d_s, d*_1..d*_s`.
///
/// The `e_i` are orthonormal, the `d_i` span the radical, and `d*_i` is the
/// dual partner of `d_i`; every other pairing of basis vectors is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub t: usize,
    pub s: usize,
}

impl Ambient {
    pub fn new(t: usize, s: usize) -> Self {
        Self { t, s }
    }

    pub fn dim(&self) -> usize {
        self.t + 2 * self.s
    }

    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let (t, s) = (self.t, self.s);
        let mut acc = BigRational::zero();
        for i in 0..t {
            acc += &x[i] * &y[i];
        }
        for j in 0..s {
            acc += &x[t + j] * &y[t + s + j];
            acc += &x[t + s + j] * &y[t + j];
        }
        acc
    }

    /// Integer matrix of the form on the ambient basis.
    pub fn form_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut f = vec![vec![0; d]; d];
        for (i, row) in f.iter_mut().enumerate().take(self.t) {
            row[i] = 1;
        }
        for j in 0..self.s {
            f[self.t + j][self.t + self.s + j] = 1;
            f[self.t + self.s + j][self.t + j] = 1;
        }
        f
    }
}

/// Vectors in an [`Ambient`] space whose Gram matrix is a companion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompanionBasis {
    ambient: Ambient,
    vectors: Vec<Vec<BigRational>>,
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl CompanionBasis {
    pub fn new(ambient: Ambient, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != ambient.dim() {
                return Err(Error::BadVectorLength {
                    index,
                    len: v.len(),
                    dim: ambient.dim(),
                });
            }
        }
        Ok(Self { ambient, vectors })
    }

    pub fn from_integers(ambient: Ambient, vectors: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            ambient,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn pairing(&self, i: usize, j: usize) -> BigRational {
        self.ambient.pairing(&self.vectors[i], &self.vectors[j])
    }

    /// Integer Gram matrix of the vectors.
    pub fn gram(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.len();
        let mut g = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let p = self.pairing(i, j);
                let v = if p.is_integer() {
                    p.to_integer().to_i64()
                } else {
                    None
                };
                let v = v.ok_or(Error::NonIntegralPairing { i, j })?;
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Ok(g)
    }

    /// The Gram matrix as a companion; every vector must have norm 2.
    pub fn companion(&self) -> Result<Companion> {
        let g = self.gram()?;
        for (index, row) in g.iter().enumerate() {
            if row[index] != 2 {
                return Err(Error::BadNorm {
                    index,
                    value: row[index].to_string(),
                });
            }
        }
        Companion::from_matrix(&g)
    }

    /// Coordinates as integers, if they all are.
    pub fn integer_vectors(&self) -> Result<Vec<Vec<i64>>> {
        self.vectors
            .iter()
            .enumerate()
            .map(|(index, v)| {
                v.iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<i64>>>()
                    .ok_or(Error::NonIntegralVector(index))
            })
            .collect()
    }

    /// Rank of the coordinate vectors.
    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::default();
        self.vectors.iter().filter(|v| echelon.insert(v)).count()
    }

    /// Index of the first vector lying in the span of the previous ones.
    pub fn first_dependent(&self) -> Option<usize> {
        let mut echelon = Echelon::default();
        self.vectors.iter().position(|v| !echelon.insert(v))
    }

    /// Same vectors with `extra` fresh radical generators (and partners).
    fn widened(&self, extra: usize) -> CompanionBasis {
        let Ambient { t, s } = self.ambient;
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let mut w = Vec::with_capacity(v.len() + 2 * extra);
                w.extend_from_slice(&v[..t + s]);
                w.extend(std::iter::repeat_with(BigRational::zero).take(extra));
                w.extend_from_slice(&v[t + s..]);
                w.extend(std::iter::repeat_with(BigRational::zero).take(extra));
                w
            })
            .collect();
        CompanionBasis {
            ambient: Ambient::new(t, s + extra),
            vectors,
        }
    }
}

// Row echelon form with pivots kept as (column, normalized row).
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut r = v.to_vec();
        for (col, row) in &self.rows {
            if !r[*col].is_zero() {
                let f = r[*col].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    // Adds `v` if independent; returns whether it was.
    fn insert(&mut self, v: &[BigRational]) -> bool {
        let r = self.reduce(v);
        let Some(col) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &r[col];
        let row: Vec<BigRational> = r.iter().map(|x| x * &inv).collect();
        for (_, other) in &mut self.rows {
            if !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((col, row));
        true
    }
}

/// Geometric mutation at `k`: `v_k` is negated and every `v_i` with an
/// arrow `i -> k` is reflected in `v_k`.
pub fn reflect_basis(basis: &CompanionBasis, q: &Quiver, k: usize) -> Result<CompanionBasis> {
    let a = basis.companion()?;
    require_companion(&a, q)?;
    q.check_vertex(k)?;
    let vk = basis.vectors[k].clone();
    let vectors = basis
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == k {
                v.iter().map(|x| -x).collect()
            } else if q.get(i, k) > 0 {
                let c = basis.ambient.pairing(v, &vk);
                v.iter().zip(&vk).map(|(x, y)| x - &c * y).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    Ok(CompanionBasis {
        ambient: basis.ambient,
        vectors,
    })
}

/// Makes the vectors linearly independent by adding a fresh radical
/// generator to each vector that lies in the span of its predecessors.
/// The Gram matrix is unchanged because the new generators are isotropic
/// and pair trivially with every existing vector.
pub fn lift_basis(basis: &CompanionBasis) -> Result<CompanionBasis> {
    let g = basis.gram()?;
    if !super::inertia(&g)?.is_positive_semidefinite() {
        return Err(Error::NotPositiveSemidefinite);
    }
    let mut echelon = Echelon::default();
    let dependent: Vec<usize> = basis
        .vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| !echelon.insert(v))
        .map(|(i, _)| i)
        .collect();
    if dependent.is_empty() {
        return Ok(basis.clone());
    }
    let mut out = basis.widened(dependent.len());
    let Ambient { t, s } = basis.ambient;
    for (slot, &i) in dependent.iter().enumerate() {
        out.vectors[i][t + s + slot] += BigRational::one();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid(t: usize, vs: &[Vec<i64>]) -> CompanionBasis {
        CompanionBasis::from_integers(Ambient::new(t, 0), vs).unwrap()
    }

    #[test]
    fn gram_of_simple_roots() {
        let b = euclid(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(b.gram().unwrap(), vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn radical_vectors_are_invisible() {
        let b = CompanionBasis::from_integers(Ambient::new(2, 1), &[vec![1, -1, 0, 0], vec![1, -1, 1, 0]])
            .unwrap();
        assert_eq!(b.gram().unwrap(), vec![vec![2, 2], vec![2, 2]]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn dual_pairs_with_radical() {
        let amb = Ambient::new(1, 2);
        let d1 = vec![rat(0), rat(1), rat(0), rat(0), rat(0)];
        let d1s = vec![rat(0), rat(0), rat(0), rat(1), rat(0)];
        let d2s = vec![rat(0), rat(0), rat(0), rat(0), rat(1)];
        assert_eq!(amb.pairing(&d1, &d1s), rat(1));
        assert_eq!(amb.pairing(&d1, &d2s), rat(0));
        assert_eq!(amb.pairing(&d1s, &d2s), rat(0));
        assert_eq!(amb.pairing(&d1s, &d1s), rat(0));
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(matches!(
            CompanionBasis::from_integers(Ambient::new(2, 1), &[vec![1, 1]]),
            Err(Error::BadVectorLength { .. })
        ));
    }

    #[test]
    fn reflecting_without_incoming_arrows_only_negates() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, -1)]).unwrap();
        // nothing points into vertex 2
        let b = euclid(4, &[vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1]]);
        let r = reflect_basis(&b, &q, 2).unwrap();
        assert_eq!(r.vectors()[2], vec![rat(0), rat(0), rat(-1), rat(1)]);
        assert_eq!(r.vectors()[0], b.vectors()[0]);
        assert_eq!(r.vectors()[1], b.vectors()[1]);
    }

    #[test]
    fn lift_adds_one_generator_per_dependency() {
        let b = euclid(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(b.rank(), 2);
        let l = lift_basis(&b).unwrap();
        assert_eq!(l.ambient(), Ambient::new(3, 2));
        assert_eq!(l.rank(), 4);
        assert_eq!(l.gram().unwrap(), b.gram().unwrap());
        assert_eq!(lift_basis(&l).unwrap(), l);
    }

    #[test]
    fn lift_rejects_indefinite() {
        let b = CompanionBasis::from_integers(Ambient::new(0, 1), &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(lift_basis(&b), Err(Error::NotPositiveSemidefinite));
    }
}
