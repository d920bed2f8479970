//! The projective line over a finite ring: free cyclic submodules generated
//! by unimodular pairs, the distant relation, distant graphs, and the
//! projection onto the line over the residue ring modulo the radical.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::ring::{jacobson_radical, quotient_ring, Elem, FiniteRing, Ideal, QuotientRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlineError {
    /// The two points do not live over the same ring.
    RingMismatch,
}

impl fmt::Display for PlineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlineError::RingMismatch => write!(f, "points belong to different rings"),
        }
    }
}

impl core::error::Error for PlineError {}

/// `(a, b)` is unimodular when `ax + by = 1` is solvable.
pub fn is_unimodular(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    let n = ring.size();
    let mut from_b = alloc::vec![false; n];
    for y in 0..n {
        from_b[ring.mul(b, y)] = true;
    }
    let one = ring.one();
    (0..n).any(|x| from_b[ring.sub(one, ring.mul(a, x))])
}

/// The left cyclic submodule `R(a, b)` with its freeness flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubmodule {
    pub generator: (Elem, Elem),
    /// Orbit `{(ra, rb)}` as sorted pair codes `ra * |R| + rb`.
    pub elements: Vec<u64>,
    /// Free exactly when only `r = 0` annihilates the generator, i.e. the
    /// orbit has `|R|` distinct elements.
    pub free: bool,
}

pub fn cyclic_submodule(ring: &FiniteRing, a: Elem, b: Elem) -> CyclicSubmodule {
    let n = ring.size();
    let mut elements: Vec<u64> = (0..n)
        .map(|r| (ring.mul(r, a) * n + ring.mul(r, b)) as u64)
        .collect();
    elements.sort_unstable();
    elements.dedup();
    let free = elements.len() == n;
    CyclicSubmodule {
        generator: (a, b),
        elements,
        free,
    }
}

/// A point of the projective line: a free cyclic submodule with a free
/// complement, identified by its full element set. The canonical generator
/// is the lexicographically least unimodular pair in the submodule.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    pub canonical: (Elem, Elem),
    pub elements: Vec<u64>,
    ring_tag: Arc<str>,
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.ring_tag == other.ring_tag && self.elements == other.elements
    }
}

impl Eq for ProjectivePoint {}

impl ProjectivePoint {
    pub fn ring_tag(&self) -> &str {
        &self.ring_tag
    }

    pub fn contains_pair(&self, ring_size: usize, a: Elem, b: Elem) -> bool {
        self.elements
            .binary_search(&((a * ring_size + b) as u64))
            .is_ok()
    }
}

/// The projective line over a ring, with points in canonical order.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    ring: FiniteRing,
    ring_tag: Arc<str>,
    points: Vec<ProjectivePoint>,
    /// Unimodular pair code -> index of the point it generates.
    generator_index: BTreeMap<u64, u32>,
}

impl ProjectiveLine {
    /// Enumerate the line: iterate all pairs in lexicographic order, keep
    /// unimodular ones, and deduplicate by submodule element set. The first
    /// unimodular generator reached is the canonical one.
    pub fn new(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let ring_tag: Arc<str> = Arc::from(ring.label());
        let mut points = Vec::new();
        let mut generator_index = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let code = (a * n + b) as u64;
                if generator_index.contains_key(&code) {
                    continue;
                }
                if !is_unimodular(ring, a, b) {
                    continue;
                }
                let sub = cyclic_submodule(ring, a, b);
                debug_assert!(sub.free, "unimodular pairs generate free submodules");
                let idx = points.len() as u32;
                for &pair in &sub.elements {
                    let (u, v) = ((pair as usize) / n, (pair as usize) % n);
                    if is_unimodular(ring, u, v) {
                        generator_index.insert(pair, idx);
                    }
                }
                points.push(ProjectivePoint {
                    canonical: (a, b),
                    elements: sub.elements,
                    ring_tag: ring_tag.clone(),
                });
            }
        }
        ProjectiveLine {
            ring: ring.clone(),
            ring_tag,
            points,
            generator_index,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    /// Index of the point generated by the unimodular pair `(a, b)`.
    pub fn point_of_pair(&self, a: Elem, b: Elem) -> Option<usize> {
        self.generator_index
            .get(&((a * self.ring.size() + b) as u64))
            .map(|&i| i as usize)
    }

    /// Distant exactly when the two submodules meet only in `(0, 0)`; for
    /// finite rings this forces the generators to stack to an invertible
    /// matrix.
    pub fn is_distant(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let a = &self.points[i].elements;
        let b = &self.points[j].elements;
        let mut common = 0usize;
        let (mut x, mut y) = (0usize, 0usize);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                core::cmp::Ordering::Less => x += 1,
                core::cmp::Ordering::Greater => y += 1,
                core::cmp::Ordering::Equal => {
                    common += 1;
                    if common > 1 {
                        return false;
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        // (0, 0) is always shared
        common == 1
    }

    /// Distance for points that may come from different line values; errors
    /// when the underlying rings differ.
    pub fn is_distant_points(
        &self,
        p: &ProjectivePoint,
        s: &ProjectivePoint,
    ) -> Result<bool, PlineError> {
        if p.ring_tag != self.ring_tag || s.ring_tag != self.ring_tag {
            return Err(PlineError::RingMismatch);
        }
        let mut common = 0usize;
        for e in &p.elements {
            if s.elements.binary_search(e).is_ok() {
                common += 1;
                if common > 1 {
                    return Ok(false);
                }
            }
        }
        Ok(common == 1)
    }

    /// Radical parallelism: equal distant-neighbourhoods.
    pub fn radically_parallel(&self, i: usize, j: usize) -> bool {
        (0..self.points.len()).all(|k| self.is_distant(i, k) == self.is_distant(j, k))
    }

    /// The distant graph, with vertices in canonical point order and labels
    /// naming the canonical generators.
    pub fn distant_graph(&self) -> Graph {
        let m = self.points.len();
        let mut g = Graph::new(m);
        for i in 0..m {
            for j in i + 1..m {
                if self.is_distant(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g.set_labels(
            self.points
                .iter()
                .map(|p| format!("({},{})", p.canonical.0, p.canonical.1))
                .collect(),
        );
        g
    }
}

/// Right action of an invertible matrix `[[a, b], [c, d]]` on a pair:
/// `(x, y) -> (xa + yc, xb + yd)`.
pub fn apply_matrix(
    ring: &FiniteRing,
    m: (Elem, Elem, Elem, Elem),
    pair: (Elem, Elem),
) -> (Elem, Elem) {
    let (a, b, c, d) = m;
    let (x, y) = pair;
    (
        ring.add(ring.mul(x, a), ring.mul(y, c)),
        ring.add(ring.mul(x, b), ring.mul(y, d)),
    )
}

/// Invertibility of `[[a, b], [c, d]]` over the ring: the rows generate all
/// of the free module of pairs. Quadratic in the ring size; kept as the slow
/// cross-check for the intersection-based distance test.
pub fn is_invertible_matrix(ring: &FiniteRing, m: (Elem, Elem, Elem, Elem)) -> bool {
    let (a, b, c, d) = m;
    let n = ring.size();
    let mut seen = alloc::vec![false; n * n];
    let mut count = 0usize;
    for x in 0..n {
        let (xa, xb) = (ring.mul(x, a), ring.mul(x, b));
        for y in 0..n {
            let u = ring.add(xa, ring.mul(y, c));
            let v = ring.add(xb, ring.mul(y, d));
            let code = u * n + v;
            if !seen[code] {
                seen[code] = true;
                count += 1;
            }
        }
    }
    count == n * n
}

/// Distance decided through the invertibility of the stacked generator
/// matrix; the slow oracle counterpart of [`ProjectiveLine::is_distant`].
pub fn distant_gl2_oracle(
    ring: &FiniteRing,
    p: (Elem, Elem),
    s: (Elem, Elem),
) -> bool {
    is_invertible_matrix(ring, (p.0, p.1, s.0, s.1))
}

/// The projection of the line onto the line over `R/J`, with its fibers.
#[derive(Clone, Debug)]
pub struct RadicalProjection {
    pub radical: Ideal,
    pub quotient: QuotientRing,
    pub quotient_line: ProjectiveLine,
    /// Point index over `R` -> point index over `R/J`.
    pub point_map: Vec<u32>,
    /// Point index over `R/J` -> sorted point indices over `R`; every fiber
    /// has exactly `|J|` members.
    pub fibers: Vec<Vec<u32>>,
}

/// Build the projection `R(a, b) -> R/J(a+J, b+J)`.
pub fn radical_projection(ring: &FiniteRing, line: &ProjectiveLine) -> RadicalProjection {
    let radical = jacobson_radical(ring);
    let quotient = quotient_ring(ring, &radical).expect("radical is two-sided");
    let quotient_line = ProjectiveLine::new(&quotient.ring);
    let mut point_map = Vec::with_capacity(line.len());
    let mut fibers = alloc::vec![Vec::new(); quotient_line.len()];
    for (i, p) in line.points().iter().enumerate() {
        let (a, b) = p.canonical;
        let qa = quotient.projection[a];
        let qb = quotient.projection[b];
        let qi = quotient_line
            .point_of_pair(qa, qb)
            .expect("projection of a unimodular pair is unimodular");
        point_map.push(qi as u32);
        fibers[qi].push(i as u32);
    }
    RadicalProjection {
        radical,
        quotient,
        quotient_line,
        point_map,
        fibers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_max_cliques, is_complete_multipartite};
    use crate::ring::make_ring;

    #[test]
    fn unimodular_examples_z4() {
        let r = make_ring("Z4").unwrap();
        assert!(is_unimodular(&r, 1, 0));
        assert!(!is_unimodular(&r, 2, 2));
        assert!(is_unimodular(&r, 2, 1));
    }

    #[test]
    fn cyclic_submodule_examples_z4() {
        let r = make_ring("Z4").unwrap();
        let free = cyclic_submodule(&r, 1, 0);
        assert_eq!(free.elements, vec![0, 4, 8, 12]); // (0,0),(1,0),(2,0),(3,0)
        assert!(free.free);
        let torsion = cyclic_submodule(&r, 2, 0);
        assert_eq!(torsion.elements.len(), 2);
        assert!(!torsion.free);
        assert!(cyclic_submodule(&r, 1, 2).free);
    }

    #[test]
    fn line_sizes() {
        assert_eq!(ProjectiveLine::new(&make_ring("Z4").unwrap()).len(), 6);
        assert_eq!(ProjectiveLine::new(&make_ring("GF(4)").unwrap()).len(), 5);
        assert_eq!(
            ProjectiveLine::new(&make_ring("M2(GF(2))").unwrap()).len(),
            35
        );
    }

    #[test]
    fn distant_examples_z4() {
        let r = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&r);
        let p10 = line.point_of_pair(1, 0).unwrap();
        let p01 = line.point_of_pair(0, 1).unwrap();
        let p12 = line.point_of_pair(1, 2).unwrap();
        assert!(line.is_distant(p10, p01));
        assert!(!line.is_distant(p10, p12)); // both submodules contain (2,0)
        assert!(!line.is_distant(p10, p10));
    }

    #[test]
    fn distance_matches_gl2_oracle_on_z4() {
        let r = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&r);
        for i in 0..line.len() {
            for j in 0..line.len() {
                if i == j {
                    continue;
                }
                let p = line.point(i).canonical;
                let s = line.point(j).canonical;
                assert_eq!(line.is_distant(i, j), distant_gl2_oracle(&r, p, s));
            }
        }
    }

    #[test]
    fn distant_graph_shapes() {
        let z4 = make_ring("Z4").unwrap();
        let g = ProjectiveLine::new(&z4).distant_graph();
        assert_eq!(g.n(), 6);
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(is_complete_multipartite(&g), Some((3, 2)));

        let f4 = make_ring("GF(4)").unwrap();
        let k5 = ProjectiveLine::new(&f4).distant_graph();
        assert_eq!(k5.n(), 5);
        assert_eq!(k5.edge_count(), 10);

        let t2 = make_ring("LT2(GF(2))").unwrap();
        let gt = ProjectiveLine::new(&t2).distant_graph();
        assert_eq!(gt.n(), 18);
        assert_eq!(gt.regular_degree(), Some(8));
    }

    #[test]
    fn degree_equals_ring_size() {
        for spec in ["Z4", "Z6", "GF(4)", "Z9", "LT2(GF(2))", "Trunc(GF(2),2)"] {
            let r = make_ring(spec).unwrap();
            let g = ProjectiveLine::new(&r).distant_graph();
            assert_eq!(g.regular_degree(), Some(r.size()), "{spec}");
        }
    }

    #[test]
    fn radical_projection_z4() {
        let r = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&r);
        let proj = radical_projection(&r, &line);
        assert_eq!(proj.radical.len(), 2);
        assert_eq!(proj.quotient_line.len(), 3);
        for fiber in &proj.fibers {
            assert_eq!(fiber.len(), 2);
        }
        // R(1,2) maps to the quotient point generated by (1,0)
        let p12 = line.point_of_pair(1, 2).unwrap();
        let target = proj.quotient_line.point_of_pair(1, 0).unwrap();
        assert_eq!(proj.point_map[p12] as usize, target);
    }

    #[test]
    fn radical_projection_trivial_on_simple_ring() {
        let r = make_ring("M2(GF(2))").unwrap();
        let line = ProjectiveLine::new(&r);
        let proj = radical_projection(&r, &line);
        assert_eq!(proj.quotient_line.len(), line.len());
        assert!(proj.fibers.iter().all(|f| f.len() == 1));
    }

    #[test]
    fn parallel_examples() {
        let r = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&r);
        let p10 = line.point_of_pair(1, 0).unwrap();
        let p12 = line.point_of_pair(1, 2).unwrap();
        let p01 = line.point_of_pair(0, 1).unwrap();
        assert!(line.radically_parallel(p10, p12));
        assert!(!line.radically_parallel(p10, p01));

        // parallelism classes are exactly the projection fibers
        let proj = radical_projection(&r, &line);
        for i in 0..line.len() {
            for j in 0..line.len() {
                assert_eq!(
                    line.radically_parallel(i, j),
                    proj.point_map[i] == proj.point_map[j]
                );
            }
        }
    }

    #[test]
    fn projection_preserves_and_reflects_distance() {
        for spec in ["Z4", "Z8", "LT2(GF(2))", "Trunc(GF(2),2)", "Z6"] {
            let r = make_ring(spec).unwrap();
            let line = ProjectiveLine::new(&r);
            let proj = radical_projection(&r, &line);
            for i in 0..line.len() {
                for j in 0..line.len() {
                    if i == j {
                        continue;
                    }
                    let qi = proj.point_map[i] as usize;
                    let qj = proj.point_map[j] as usize;
                    let image_distant = qi != qj && proj.quotient_line.is_distant(qi, qj);
                    assert_eq!(line.is_distant(i, j), image_distant, "{spec} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn line_size_is_quotient_size_times_radical() {
        for spec in ["Z4", "Z8", "Z9", "LT2(GF(2))", "LT2(GF(3))", "Z6", "Z4xGF(2)"] {
            let r = make_ring(spec).unwrap();
            let line = ProjectiveLine::new(&r);
            let proj = radical_projection(&r, &line);
            assert_eq!(
                line.len(),
                proj.quotient_line.len() * proj.radical.len(),
                "{spec}"
            );
        }
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let z4 = make_ring("Z4").unwrap();
        let f4 = make_ring("GF(4)").unwrap();
        let l4 = ProjectiveLine::new(&z4);
        let lf = ProjectiveLine::new(&f4);
        let err = l4
            .is_distant_points(l4.point(0), lf.point(0))
            .unwrap_err();
        assert_eq!(err, PlineError::RingMismatch);
        assert!(l4.is_distant_points(l4.point(0), l4.point(1)).is_ok());
    }

    #[test]
    fn maximal_cliques_share_a_cardinality() {
        for spec in ["Z4", "Z6", "Z8", "GF(4)", "LT2(GF(2))", "M2(GF(2))"] {
            let r = make_ring(spec).unwrap();
            let g = ProjectiveLine::new(&r).distant_graph();
            let all = crate::graph::maximal_cliques(&g);
            let (omega, _) = enumerate_max_cliques(&g);
            assert!(all.iter().all(|c| c.len() == omega), "{spec}");
        }
    }

    #[test]
    fn diameter_at_most_two() {
        for spec in ["Z4", "Z6", "Z8", "LT2(GF(2))", "M2(GF(2))"] {
            let r = make_ring(spec).unwrap();
            let g = ProjectiveLine::new(&r).distant_graph();
            let d = g.diameter().expect("distant graphs are connected");
            assert!(d <= 2, "{spec}: diameter {d}");
        }
    }
}
