use super::{spanning_forest, Companion};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Largest number of joined vertex pairs the exhaustive search accepts.
pub const MAX_SEARCH_ARROWS: usize = 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep only positive semi-definite companions.
    pub psd_only: bool,
}

/// All fully compatible companions of `q`, one per class of simultaneous
/// row/column sign changes.
///
/// Sign changes act freely enough that each class has exactly one member
/// positive on a fixed spanning forest of the underlying graph, so only
/// the remaining edges are searched. Full compatibility is a condition on
/// triangles alone, and each triangle is checked as soon as its last edge
/// receives a sign. Results are sorted.
pub fn enumerate_fully_compatible(q: &Quiver, opts: SearchOptions) -> Result<Vec<Companion>> {
    let arrows = q.arrows();
    if arrows.len() > MAX_SEARCH_ARROWS {
        return Err(Error::TooManyArrows {
            arrows: arrows.len(),
            max: MAX_SEARCH_ARROWS,
        });
    }
    let n = q.n();
    let index_of = |i: usize, j: usize| {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        arrows.iter().position(|&(x, y, _)| x == i && y == j)
    };
    let tree = spanning_forest(n, |i, j| q.joined(i, j));
    let mut fixed = vec![false; arrows.len()];
    for &(p, c) in &tree {
        fixed[index_of(p, c).expect("tree edges are arrows")] = true;
    }
    let free: Vec<usize> = (0..arrows.len()).filter(|&e| !fixed[e]).collect();

    // Each triangle's required sign product, attached to the edge that is
    // assigned last in search order.
    let mut position = vec![usize::MAX; arrows.len()];
    for (pos, &e) in free.iter().enumerate() {
        position[e] = pos;
    }
    let mut checks: Vec<Vec<([usize; 3], i64)>> = vec![Vec::new(); free.len() + 1];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (Some(x), Some(y), Some(z)) = (index_of(i, j), index_of(j, k), index_of(i, k)) else {
                    continue;
                };
                let s = q.get(i, j).signum();
                let oriented = q.get(j, k).signum() == s && q.get(k, i).signum() == s;
                let required = if oriented { 1 } else { -1 };
                let last = [x, y, z]
                    .iter()
                    .map(|&e| if fixed[e] { 0 } else { position[e] + 1 })
                    .max()
                    .unwrap();
                checks[last].push(([x, y, z], required));
            }
        }
    }

    let mut signs = vec![1i64; arrows.len()];
    let consistent = |signs: &[i64], level: usize| {
        checks[level]
            .iter()
            .all(|(es, req)| signs[es[0]] * signs[es[1]] * signs[es[2]] == *req)
    };
    let mut out = Vec::new();
    if consistent(&signs, 0) {
        descend(0, &free, &mut signs, &consistent, &mut |signs| {
            let a = Companion::with_signs(q, |i, j| signs[index_of(i, j).unwrap()]);
            if !opts.psd_only || a.is_positive_semidefinite() {
                out.push(a);
            }
        });
    }
    out.sort();
    Ok(out)
}

fn descend(
    depth: usize,
    free: &[usize],
    signs: &mut [i64],
    consistent: &impl Fn(&[i64], usize) -> bool,
    emit: &mut impl FnMut(&[i64]),
) {
    if depth == free.len() {
        emit(signs);
        return;
    }
    for s in [1, -1] {
        signs[free[depth]] = s;
        if consistent(signs, depth + 1) {
            descend(depth + 1, free, signs, consistent, emit);
        }
    }
    signs[free[depth]] = 1;
}
