use super::Quiver;

/// A chordless cycle of the underlying simple graph of a quiver.
///
/// `vertices` starts at the smallest vertex and continues towards the
/// smaller of its two cycle neighbours, which makes the list the
/// lexicographically smallest rotation/reflection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordlessCycle {
    pub vertices: Vec<usize>,
    pub oriented: bool,
}

impl ChordlessCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Consecutive pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }
}

/// Whether the arrows along a closed vertex walk all point the same way.
/// A multiple arrow counts as a single directed edge.
pub(crate) fn is_cyclically_oriented(q: &Quiver, cycle: &[usize]) -> bool {
    let len = cycle.len();
    let signs: Vec<i64> = (0..len)
        .map(|i| q.get(cycle[i], cycle[(i + 1) % len]).signum())
        .collect();
    signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1)
}

/// All chordless cycles (length at least 3) of the underlying graph of `q`,
/// sorted lexicographically by vertex list.
pub fn chordless_cycles(q: &Quiver) -> Vec<ChordlessCycle> {
    let n = q.n();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| q.joined(i, j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        for a in (s + 1)..n {
            if !adj[s][a] {
                continue;
            }
            path.push(a);
            on_path[a] = true;
            extend(&adj, &mut path, &mut on_path, &mut out);
            on_path[a] = false;
            path.pop();
        }
        on_path[s] = false;
        path.pop();
    }
    let mut cycles: Vec<ChordlessCycle> = out
        .into_iter()
        .map(|vertices| {
            let oriented = is_cyclically_oriented(q, &vertices);
            ChordlessCycle { vertices, oriented }
        })
        .collect();
    cycles.sort();
    cycles
}

// `path[0]` is the smallest vertex of every cycle found from here; the path
// itself is kept chordless and never touches `path[0]` except at its ends.
fn extend(adj: &[Vec<bool>], path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    let n = adj.len();
    for v in (s + 1)..n {
        if on_path[v] || !adj[last][v] {
            continue;
        }
        if path[1..path.len() - 1].iter().any(|&p| adj[v][p]) {
            continue;
        }
        if adj[v][s] {
            if path[1] < v {
                let mut cycle = path.clone();
                cycle.push(v);
                out.push(cycle);
            }
            continue;
        }
        path.push(v);
        on_path[v] = true;
        extend(adj, path, on_path, out);
        on_path[v] = false;
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oriented_triangle_has_one_oriented_cycle() {
        let q = Quiver::from_arrows(3, &[(0, 1, -1), (1, 2, -1), (0, 2, 1)]).unwrap();
        let cycles = chordless_cycles(&q);
        assert_eq!(
            cycles,
            vec![ChordlessCycle {
                vertices: vec![0, 1, 2],
                oriented: true
            }]
        );
    }

    #[test]
    fn path_has_no_cycles() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(chordless_cycles(&q).is_empty());
    }

    #[test]
    fn square_with_chord_gives_two_triangles() {
        let q = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])
            .unwrap();
        let cycles: Vec<Vec<usize>> = chordless_cycles(&q).into_iter().map(|c| c.vertices).collect();
        assert_eq!(cycles, vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn double_arrow_counts_as_one_directed_edge() {
        // (1,1,2) oriented triangle
        let q = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 1), (2, 0, 1)]).unwrap();
        let cycles = chordless_cycles(&q);
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0].oriented);
    }
}
