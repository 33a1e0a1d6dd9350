use super::Quiver;

/// Canonical representative of an isomorphism class of quivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Unlabeled canonical quiver.
    pub quiver: Quiver,
    /// `perm[v]` is the canonical index of input vertex `v`, so that
    /// `input.permuted(&perm) == quiver`.
    pub perm: Vec<usize>,
}

/// Canonical form under vertex relabeling.
///
/// Colour refinement on weighted in/out rows produces an ordered equitable
/// partition; non-trivial cells are individualized one vertex at a time and
/// refined again. Every leaf of that search tree is a labeling, and the one
/// giving the lexicographically smallest row-major matrix wins. Since the
/// tree does not depend on the input labels, the minimum is an invariant.
pub fn canonical_form(q: &Quiver) -> CanonicalForm {
    let n = q.n();
    if n == 0 {
        return CanonicalForm {
            quiver: q.unlabeled(),
            perm: Vec::new(),
        };
    }
    let b = q.raw();
    let start = refine(b, n, vec![(0..n).collect()]);
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    search(b, n, start, &mut best);
    let (matrix, order) = best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let rows: Vec<Vec<i64>> = matrix.chunks(n).map(|r| r.to_vec()).collect();
    CanonicalForm {
        quiver: Quiver::from_matrix(&rows).expect("relabeling preserves skew-symmetry"),
        perm,
    }
}

type Partition = Vec<Vec<usize>>;

fn search(b: &[i64], n: usize, partition: Partition, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    if partition.iter().all(|c| c.len() == 1) || is_uniform(b, n, &partition) {
        let order: Vec<usize> = partition.into_iter().flatten().collect();
        let matrix = relabeled(b, n, &order);
        match best {
            Some((m, _)) if *m <= matrix => {}
            _ => *best = Some((matrix, order)),
        }
        return;
    }
    let target = partition.iter().position(|c| c.len() > 1).unwrap();
    for &v in &partition[target] {
        let mut next = Vec::with_capacity(partition.len() + 1);
        next.extend_from_slice(&partition[..target]);
        next.push(vec![v]);
        next.push(partition[target].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&partition[target + 1..]);
        search(b, n, refine(b, n, next), best);
    }
}

fn relabeled(b: &[i64], n: usize, order: &[usize]) -> Vec<i64> {
    let mut m = Vec::with_capacity(n * n);
    for &i in order {
        for &j in order {
            m.push(b[i * n + j]);
        }
    }
    m
}

// Every ordering inside the cells gives the same matrix when each pair of
// cells (and each cell with itself, off the diagonal) carries one constant
// entry.
fn is_uniform(b: &[i64], n: usize, partition: &Partition) -> bool {
    for c in partition {
        for d in partition {
            let mut value = None;
            for &v in c {
                for &w in d {
                    if v == w {
                        continue;
                    }
                    let x = b[v * n + w];
                    match value {
                        None => value = Some(x),
                        Some(y) if y != x => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

fn refine(b: &[i64], n: usize, mut partition: Partition) -> Partition {
    loop {
        let mut cell_of = vec![0; n];
        for (ci, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let cells = partition.len();
        let signature = |v: usize| -> Vec<Vec<i64>> {
            let mut sig = vec![Vec::new(); cells];
            for w in 0..n {
                if w != v {
                    sig[cell_of[w]].push(b[v * n + w]);
                }
            }
            for s in &mut sig {
                s.sort_unstable();
            }
            sig
        };
        let mut next: Partition = Vec::with_capacity(n);
        for cell in &partition {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<Vec<i64>>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            let mut current: Vec<usize> = Vec::new();
            for idx in 0..keyed.len() {
                if idx > 0 && keyed[idx].0 != keyed[idx - 1].0 {
                    next.push(std::mem::take(&mut current));
                }
                current.push(keyed[idx].1);
            }
            next.push(current);
        }
        if next.len() == partition.len() {
            return next;
        }
        partition = next;
    }
}
