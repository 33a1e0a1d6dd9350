//! Unpunctured marked surfaces, their triangulations, flips, quivers and
//! companion bases.

use crate::companion::{Ambient, CompanionBasis};
use crate::error::{Error, Result};
use crate::quiver::{chordless_cycles, Quiver};

/// Genus and marked points per boundary component of an unpunctured
/// surface. The number of boundary components is `k.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub g: usize,
    pub k: Vec<usize>,
}

impl SurfaceSpec {
    pub fn new(g: usize, k: Vec<usize>) -> Result<Self> {
        let spec = Self { g, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.is_empty() {
            return Err(Error::InvalidSurface("at least one boundary component is required".into()));
        }
        if let Some(i) = self.k.iter().position(|&m| m == 0) {
            return Err(Error::InvalidSurface(format!(
                "boundary component {} has no marked points",
                i + 1
            )));
        }
        if self.arc_count() < 1 {
            return Err(Error::InvalidSurface(format!(
                "surface has {} arcs; at least 1 is required",
                self.arc_count()
            )));
        }
        Ok(())
    }

    pub fn b(&self) -> usize {
        self.k.len()
    }

    /// Number of arcs in any triangulation: `6g - 6 + 3b + sum(k)`.
    pub fn arc_count(&self) -> i64 {
        6 * self.g as i64 - 6 + 3 * self.b() as i64 + self.k.iter().sum::<usize>() as i64
    }

    /// Number of triangles: `4g - 4 + 2b + sum(k)`.
    pub fn triangle_count(&self) -> i64 {
        4 * self.g as i64 - 4 + 2 * self.b() as i64 + self.k.iter().sum::<usize>() as i64
    }

    /// Arcs outside a spanning tree of the dual graph: `2g + b - 1`.
    pub fn cut_count(&self) -> usize {
        2 * self.g + self.b() - 1
    }

    /// Expected inertia `(n_plus, n_minus, n_zero)` of an admissible companion.
    pub fn expected_inertia(&self) -> (usize, usize, usize) {
        let n = self.arc_count() as usize;
        let zero = self.cut_count();
        (n - zero, 0, zero)
    }
}

/// A side of a triangle: `(triangle, side)` with `side` in `0..3`.
pub type Slot = (usize, usize);

/// Combinatorial triangulation. Each triangle has sides 0, 1, 2 in
/// counterclockwise order, side `s` running from corner `s` to corner
/// `s + 1`. Arc `i` glues the two slots `gluing[i]`, reversing direction;
/// unglued sides are boundary segments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    triangles: usize,
    gluing: Vec<(Slot, Slot)>,
    arc_at: Vec<[Option<usize>; 3]>,
    genus: usize,
    boundary: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidTriangulation(msg.into())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Triangulation {
    /// Validates a gluing of `triangles` triangles.
    pub fn new(triangles: usize, gluing: Vec<(Slot, Slot)>) -> Result<Self> {
        if triangles == 0 {
            return Err(invalid("no triangles"));
        }
        let mut arc_at = vec![[None; 3]; triangles];
        for (arc, &(x, y)) in gluing.iter().enumerate() {
            for (t, s) in [x, y] {
                if t >= triangles || s >= 3 {
                    return Err(invalid(format!("arc {} uses nonexistent side ({t}, {s})", arc + 1)));
                }
                if let Some(other) = arc_at[t][s] {
                    return Err(invalid(format!(
                        "side ({t}, {s}) is glued by arcs {} and {}",
                        other + 1,
                        arc + 1
                    )));
                }
                arc_at[t][s] = Some(arc);
            }
            if x.0 == y.0 {
                return Err(invalid(format!(
                    "arc {} glues two sides of triangle {}",
                    arc + 1,
                    x.0
                )));
            }
        }

        let mut dual = UnionFind::new(triangles);
        for &(x, y) in &gluing {
            dual.union(x.0, y.0);
        }
        if (0..triangles).any(|t| dual.find(t) != dual.find(0)) {
            return Err(invalid("surface is disconnected"));
        }

        let corner = |t: usize, c: usize| 3 * t + c % 3;
        let mut vertices = UnionFind::new(3 * triangles);
        for &((t, s), (u, r)) in &gluing {
            vertices.union(corner(t, s), corner(u, r + 1));
            vertices.union(corner(t, s + 1), corner(u, r));
        }
        let mut on_boundary = vec![false; 3 * triangles];
        let mut segments = Vec::new();
        for t in 0..triangles {
            for s in 0..3 {
                if arc_at[t][s].is_none() {
                    segments.push((t, s));
                    let a = vertices.find(corner(t, s));
                    let b = vertices.find(corner(t, s + 1));
                    on_boundary[a] = true;
                    on_boundary[b] = true;
                }
            }
        }
        let mut classes: Vec<usize> = (0..3 * triangles).map(|c| vertices.find(c)).collect();
        classes.sort_unstable();
        classes.dedup();
        if let Some(&c) = classes.iter().find(|&&c| !on_boundary[c]) {
            return Err(invalid(format!(
                "corner {} of triangle {} is an interior marked point",
                c % 3,
                c / 3
            )));
        }
        if classes.len() != segments.len() {
            return Err(invalid("some marked point is not a boundary point of a surface"));
        }

        // Walk around each marked point from a boundary segment ending there
        // to the boundary segment starting there.
        let next_segment = |(t, s): Slot| -> Slot {
            let (mut t, mut side) = (t, (s + 1) % 3);
            loop {
                match arc_at[t][side] {
                    None => return (t, side),
                    Some(a) => {
                        let (x, y) = gluing[a];
                        let (u, r) = if x == (t, side) { y } else { x };
                        t = u;
                        side = (r + 1) % 3;
                    }
                }
            }
        };
        let mut visited = vec![false; segments.len()];
        let mut boundary = Vec::new();
        for start in 0..segments.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                len += 1;
                let nxt = next_segment(segments[cur]);
                cur = segments.iter().position(|&x| x == nxt).unwrap();
            }
            if cur != start {
                return Err(invalid("boundary does not close up"));
            }
            boundary.push(len);
        }

        let v = classes.len() as i64;
        let e = (gluing.len() + segments.len()) as i64;
        let f = triangles as i64;
        let two_g = 2 - boundary.len() as i64 - (v - e + f);
        if two_g < 0 || two_g % 2 != 0 {
            return Err(invalid("Euler characteristic is inconsistent with an orientable surface"));
        }
        Ok(Self {
            triangles,
            gluing,
            arc_at,
            genus: (two_g / 2) as usize,
            boundary,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles
    }

    pub fn arc_count(&self) -> usize {
        self.gluing.len()
    }

    pub fn gluing(&self) -> &[(Slot, Slot)] {
        &self.gluing
    }

    /// Arc on side `s` of triangle `t`, if that side is not a boundary segment.
    pub fn arc_at(&self, t: usize, s: usize) -> Option<usize> {
        self.arc_at[t][s]
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of marked points on each boundary component.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// The surface this triangulates, boundary components sorted by
    /// decreasing number of marked points.
    pub fn spec(&self) -> SurfaceSpec {
        let mut k = self.boundary.clone();
        k.sort_unstable_by(|a, b| b.cmp(a));
        SurfaceSpec { g: self.genus, k }
    }

    /// Triangles on either side of an arc.
    pub fn arc_triangles(&self, arc: usize) -> (usize, usize) {
        let (x, y) = self.gluing[arc];
        (x.0, y.0)
    }

    fn check_arc(&self, arc: usize) -> Result<()> {
        if arc < self.gluing.len() {
            Ok(())
        } else {
            Err(Error::ArcOutOfRange {
                arc,
                n: self.gluing.len(),
            })
        }
    }

    /// One vertex per arc and, inside every triangle, an arrow from each
    /// arc side to the arc side that follows it counterclockwise.
    pub fn quiver(&self) -> Quiver {
        let mut arrows = Vec::new();
        for sides in &self.arc_at {
            for s in 0..3 {
                if let (Some(a), Some(b)) = (sides[s], sides[(s + 1) % 3]) {
                    arrows.push((a, b, 1));
                }
            }
        }
        Quiver::from_arrows(self.arc_count(), &arrows).expect("arc indices are in range")
    }

    /// Replaces `arc` by the other diagonal of the quadrilateral formed by
    /// its two triangles. The new diagonal keeps the index `arc`.
    pub fn flip(&self, arc: usize) -> Result<Triangulation> {
        self.check_arc(arc)?;
        let ((t1, s1), (t2, s2)) = self.gluing[arc];
        // content[t][s] = (arc, end) of whatever is glued there
        let mut content: Vec<[Option<(usize, usize)>; 3]> = vec![[None; 3]; self.triangles];
        for (a, &(x, y)) in self.gluing.iter().enumerate() {
            content[x.0][x.1] = Some((a, 0));
            content[y.0][y.1] = Some((a, 1));
        }
        let old1 = content[t1];
        let old2 = content[t2];
        content[t1] = [old1[(s1 + 2) % 3], old2[(s2 + 1) % 3], Some((arc, 0))];
        content[t2] = [old2[(s2 + 2) % 3], old1[(s1 + 1) % 3], Some((arc, 1))];
        let mut gluing = self.gluing.clone();
        for (t, sides) in content.iter().enumerate() {
            for (s, c) in sides.iter().enumerate() {
                if let Some((a, end)) = *c {
                    if end == 0 {
                        gluing[a].0 = (t, s);
                    } else {
                        gluing[a].1 = (t, s);
                    }
                }
            }
        }
        Triangulation::new(self.triangles, gluing)
    }

    /// Every arc between triangles `i` and `j` gets `e_i + e_j`.
    pub fn naive_companion_basis(&self) -> CompanionBasis {
        let vectors: Vec<Vec<i64>> = (0..self.arc_count())
            .map(|a| {
                let (i, j) = self.arc_triangles(a);
                let mut v = vec![0; self.triangles];
                v[i] += 1;
                v[j] += 1;
                v
            })
            .collect();
        CompanionBasis::from_integers(Ambient::new(self.triangles, 0), &vectors)
            .expect("vectors have one coordinate per triangle")
    }

    /// Companion basis whose Gram matrix is an admissible companion.
    ///
    /// Arcs of the smallest-index spanning tree of the dual graph get
    /// `e_i + e_j`. Each remaining arc closes a single cycle: if its two
    /// triangles already share a tree arc it sits in an oriented triangle
    /// and gets `e_i + e_j`; otherwise it lies on one non-oriented chordless
    /// cycle of the tree-plus-arc quiver and gets `e_i + e_j` for even cycle
    /// length and `e_i - e_j` for odd.
    pub fn admissible_companion_basis(&self) -> Result<AdmissibleBasis> {
        let n = self.arc_count();
        let mut dual = UnionFind::new(self.triangles);
        let mut in_tree = vec![false; n];
        for (a, flag) in in_tree.iter_mut().enumerate() {
            let (i, j) = self.arc_triangles(a);
            *flag = dual.union(i, j);
        }
        let tree_arcs: Vec<usize> = (0..n).filter(|&a| in_tree[a]).collect();
        let cut_arcs: Vec<usize> = (0..n).filter(|&a| !in_tree[a]).collect();
        let q = self.quiver();

        let mut vectors = vec![vec![0i64; self.triangles]; n];
        for (a, v) in vectors.iter_mut().enumerate() {
            let (i, j) = self.arc_triangles(a);
            v[i] += 1;
            v[j] += 1;
        }
        for &c in &cut_arcs {
            let (i, j) = self.arc_triangles(c);
            let shares_tree_arc = tree_arcs.iter().any(|&a| {
                let (x, y) = self.arc_triangles(a);
                (x, y) == (i, j) || (y, x) == (i, j)
            });
            if shares_tree_arc {
                continue;
            }
            let mut subset = tree_arcs.clone();
            subset.push(c);
            let sub = q.subquiver(&subset)?;
            let at = subset.len() - 1;
            let found: Vec<usize> = chordless_cycles(&sub)
                .into_iter()
                .filter(|cy| cy.contains(at) && !cy.oriented)
                .map(|cy| cy.len())
                .collect();
            match found.as_slice() {
                [len] if len % 2 == 1 => vectors[c][j] -= 2,
                [_] => {}
                _ => {
                    return Err(Error::Internal(format!(
                        "cut arc {} lies on {} non-oriented chordless cycles, expected 1",
                        c + 1,
                        found.len()
                    )))
                }
            }
        }
        let basis = CompanionBasis::from_integers(Ambient::new(self.triangles, 0), &vectors)?;
        Ok(AdmissibleBasis {
            basis,
            tree_arcs,
            cut_arcs,
        })
    }
}

/// Output of [`Triangulation::admissible_companion_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleBasis {
    pub basis: CompanionBasis,
    pub tree_arcs: Vec<usize>,
    pub cut_arcs: Vec<usize>,
}

/// Fan triangulation of a polygon whose side word glues into the surface.
///
/// The word lists, in order, `a b a^-1 b^-1` for each handle, then
/// `c (boundary segments) c^-1` for every boundary component after the
/// first, then the boundary segments of the first component. Paired
/// letters become arcs (listed first, in word order), followed by the fan
/// diagonals from polygon vertex 0.
pub fn build_triangulation(spec: &SurfaceSpec) -> Result<Triangulation> {
    spec.validate()?;
    // partner[p] = paired polygon side, or None for a boundary segment
    let mut partner: Vec<Option<usize>> = Vec::new();
    for _ in 0..spec.g {
        let p = partner.len();
        partner.extend([Some(p + 2), Some(p + 3), Some(p), Some(p + 1)]);
    }
    for &k in &spec.k[1..] {
        let p = partner.len();
        partner.push(Some(p + k + 1));
        partner.extend(std::iter::repeat_n(None, k));
        partner.push(Some(p));
    }
    partner.extend(std::iter::repeat_n(None, spec.k[0]));
    let sides = partner.len();
    let triangles = sides - 2;

    // Polygon side p lies on triangle slot side_slot(p).
    let side_slot = |p: usize| -> Slot {
        if p == 0 {
            (0, 0)
        } else if p == sides - 1 {
            (triangles - 1, 2)
        } else {
            (p - 1, 1)
        }
    };
    let mut gluing = Vec::new();
    for p in 0..sides {
        if let Some(r) = partner[p] {
            if p < r {
                gluing.push((side_slot(p), side_slot(r)));
            }
        }
    }
    for r in 0..triangles - 1 {
        gluing.push(((r, 2), (r + 1, 0)));
    }
    let tri = Triangulation::new(triangles, gluing)?;
    if tri.spec() != sorted_spec(spec) {
        return Err(Error::Internal(format!(
            "built surface has genus {} and boundary {:?}",
            tri.genus(),
            tri.boundary()
        )));
    }
    Ok(tri)
}

fn sorted_spec(spec: &SurfaceSpec) -> SurfaceSpec {
    let mut k = spec.k.clone();
    k.sort_unstable_by(|a, b| b.cmp(a));
    SurfaceSpec { g: spec.g, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::{inertia, is_admissible, is_companion};

    fn build(g: usize, k: &[usize]) -> Triangulation {
        build_triangulation(&SurfaceSpec::new(g, k.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn spec_counts() {
        let torus = SurfaceSpec::new(1, vec![1]).unwrap();
        assert_eq!(torus.arc_count(), 4);
        assert_eq!(torus.triangle_count(), 3);
        assert_eq!(torus.cut_count(), 2);
        assert!(SurfaceSpec::new(0, vec![3]).is_err());
        assert!(SurfaceSpec::new(0, vec![]).is_err());
        assert!(SurfaceSpec::new(0, vec![2, 0]).is_err());
    }

    #[test]
    fn square_has_one_arc() {
        let t = build(0, &[4]);
        assert_eq!(t.arc_count(), 1);
        assert_eq!(t.quiver(), Quiver::empty(1));
        assert_eq!(t.naive_companion_basis().gram().unwrap(), vec![vec![2]]);
    }

    #[test]
    fn pentagon_is_a2() {
        let t = build(0, &[5]);
        assert_eq!((t.triangle_count(), t.arc_count()), (3, 2));
        let q = t.quiver();
        assert_eq!(q.get(0, 1).abs(), 1);
        let g = t.naive_companion_basis().gram().unwrap();
        assert_eq!(g, vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(inertia(&g).unwrap().n_plus, 2);
    }

    #[test]
    fn annulus_is_kronecker() {
        let t = build(0, &[1, 1]);
        assert_eq!((t.triangle_count(), t.arc_count()), (2, 2));
        assert_eq!(t.quiver().get(0, 1).abs(), 2);
        let g = t.naive_companion_basis().gram().unwrap();
        assert_eq!(g, vec![vec![2, 2], vec![2, 2]]);
        for a in 0..2 {
            assert_eq!(t.flip(a).unwrap().quiver().get(0, 1).abs(), 2);
        }
    }

    #[test]
    fn torus_counts() {
        let t = build(1, &[1]);
        assert_eq!((t.arc_count(), t.triangle_count()), (4, 3));
        assert_eq!(t.genus(), 1);
        assert_eq!(t.boundary(), &[1]);
    }

    #[test]
    fn built_surfaces_have_the_requested_topology() {
        for (g, k) in [(0, vec![6]), (0, vec![2, 3]), (0, vec![1, 1, 1]), (1, vec![2]), (1, vec![1, 1]), (2, vec![1])] {
            let spec = SurfaceSpec::new(g, k.clone()).unwrap();
            let t = build_triangulation(&spec).unwrap();
            assert_eq!(t.arc_count() as i64, spec.arc_count());
            assert_eq!(t.triangle_count() as i64, spec.triangle_count());
            assert_eq!(t.spec(), sorted_spec(&spec));
        }
    }

    #[test]
    fn flips_commute_with_mutation() {
        let t = build(1, &[2]);
        let q = t.quiver();
        for a in 0..t.arc_count() {
            let f = t.flip(a).unwrap();
            assert_eq!(f.quiver(), q.mutate(a).unwrap());
            assert_eq!(f.flip(a).unwrap().quiver(), q);
            assert_eq!(f.spec(), t.spec());
        }
    }

    #[test]
    fn rejects_bad_gluings() {
        assert!(Triangulation::new(1, vec![((0, 0), (0, 1))]).is_err());
        assert!(Triangulation::new(2, vec![((0, 0), (1, 0)), ((0, 0), (1, 1))]).is_err());
        assert!(Triangulation::new(2, vec![]).is_err());
        assert!(Triangulation::new(1, vec![((0, 0), (3, 0))]).is_err());
        // two triangles glued along all sides: a sphere with interior points
        let sphere = vec![((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))];
        assert!(Triangulation::new(2, sphere).is_err());
        assert!(matches!(build(0, &[5]).flip(7), Err(Error::ArcOutOfRange { .. })));
    }

    #[test]
    fn admissible_basis_on_small_surfaces() {
        for (g, k) in [(0, vec![6]), (0, vec![2, 1]), (0, vec![1, 1, 1]), (1, vec![1]), (1, vec![2])] {
            let spec = SurfaceSpec::new(g, k).unwrap();
            let t = build_triangulation(&spec).unwrap();
            let adm = t.admissible_companion_basis().unwrap();
            assert_eq!(adm.cut_arcs.len(), spec.cut_count());
            let a = adm.basis.companion().unwrap();
            let q = t.quiver();
            assert!(is_companion(&a, &q).unwrap());
            assert!(is_admissible(&a, &q).unwrap(), "{spec:?}");
            let i = a.inertia();
            assert_eq!((i.n_plus, i.n_minus, i.n_zero), spec.expected_inertia());
        }
    }

    #[test]
    fn disk_bases_agree() {
        let t = build(0, &[7]);
        assert_eq!(t.admissible_companion_basis().unwrap().basis, t.naive_companion_basis());
    }
}
