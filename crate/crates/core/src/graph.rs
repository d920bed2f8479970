//! Finite simple graphs over bitset adjacency rows: tensor products,
//! maximal-clique enumeration, clique partitions and their product/lift
//! constructions, complete-multipartite detection, and isomorphism testing.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::cover::{solve_exact_cover, BudgetExceeded, CoverInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Isomorphism search is limited to graphs with at most 500 vertices.
    TooLarge { n: usize, limit: usize },
    /// A factor partition has blocks of different sizes.
    UnequalBlockSizes { factor: usize },
    /// The base partition fed to a lift is not a valid partition.
    InvalidBase(PartitionViolation),
    /// Fibers passed to a lift have inconsistent sizes.
    FiberSizeMismatch,
    EmptyInput,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooLarge { n, limit } => {
                write!(f, "graph with {n} vertices exceeds the {limit}-vertex limit")
            }
            GraphError::UnequalBlockSizes { factor } => {
                write!(f, "partition of factor {factor} has unequal block sizes")
            }
            GraphError::InvalidBase(v) => write!(f, "base partition invalid: {v}"),
            GraphError::FiberSizeMismatch => write!(f, "fibers have inconsistent sizes"),
            GraphError::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected, loopless graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::empty(n); n],
            labels: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "simple graph: no loops");
        self.rows[i].insert(j);
        self.rows[j].insert(i);
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges as `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.rows[i].iter() {
                if j > i {
                    out.push((i as u32, j as u32));
                }
            }
        }
        out
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|i| self.degree(i) == d).then_some(d)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Subgraph induced by `verts`; vertex `k` of the result is `verts[k]`.
    pub fn induced(&self, verts: &[u32]) -> Graph {
        let mut g = Graph::new(verts.len());
        for (a, &i) in verts.iter().enumerate() {
            for (b, &j) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(i as usize, j as usize) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_dist(0).iter().all(|&d| d != usize::MAX)
    }

    /// Largest BFS eccentricity; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for v in 0..self.n {
            let dist = self.bfs_dist(v);
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    fn bfs_dist(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[start] = 0;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for w in self.rows[v].iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    g
}

/// Complete multipartite graph with `parts` independent sets of `part_size`
/// consecutive vertices each.
pub fn complete_multipartite(parts: usize, part_size: usize) -> Graph {
    let n = parts * part_size;
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if i / part_size != j / part_size {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Tensor (categorical) product: vertices are row-major tuples, and a pair
/// is an edge exactly when it is an edge in every factor.
pub fn tensor_product(factors: &[&Graph]) -> Graph {
    assert!(!factors.is_empty());
    let sizes: Vec<usize> = factors.iter().map(|g| g.n()).collect();
    let n: usize = sizes.iter().product();
    let decode = |mut v: usize| -> Vec<usize> {
        let mut coords = vec![0; sizes.len()];
        for (i, &s) in sizes.iter().enumerate().rev() {
            coords[i] = v % s;
            v /= s;
        }
        coords
    };
    let mut g = Graph::new(n);
    for u in 0..n {
        let cu = decode(u);
        'pair: for v in u + 1..n {
            let cv = decode(v);
            for (i, f) in factors.iter().enumerate() {
                if !f.has_edge(cu[i], cv[i]) {
                    continue 'pair;
                }
            }
            g.add_edge(u, v);
        }
    }
    if factors.iter().all(|f| f.labels().is_some()) {
        let labels = (0..n)
            .map(|v| {
                let c = decode(v);
                let parts: Vec<&str> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.labels().unwrap()[c[i]].as_str())
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        g.set_labels(labels);
    }
    g
}

/// Equal-part complete multipartite structure, detected from the complement:
/// the complement must be a disjoint union of equal-size cliques.
pub fn is_complete_multipartite(g: &Graph) -> Option<(usize, usize)> {
    if g.n() == 0 {
        return None;
    }
    let comp = g.complement();
    let mut seen = vec![false; g.n()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        if seen[v] {
            continue;
        }
        let mut stack = vec![v];
        let mut comp_verts = Vec::new();
        seen[v] = true;
        while let Some(u) = stack.pop() {
            comp_verts.push(u);
            for w in comp.row(u).iter() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp_verts.sort_unstable();
        parts.push(comp_verts);
    }
    let size = parts[0].len();
    for part in &parts {
        if part.len() != size {
            return None;
        }
        for (a, &u) in part.iter().enumerate() {
            for &w in part.iter().skip(a + 1) {
                if !comp.has_edge(u, w) {
                    return None;
                }
            }
        }
    }
    Some((parts.len(), size))
}

/// All maximal cliques (Bron-Kerbosch with pivoting), sorted canonically.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if g.n() == 0 {
        return out;
    }
    let mut r = Vec::new();
    let p = BitSet::full(g.n());
    let x = BitSet::empty(g.n());
    bron_kerbosch(g, &mut r, p, x, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<u32>, p: BitSet, x: BitSet, out: &mut Vec<Vec<u32>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let mut pivot = usize::MAX;
    let mut best = usize::MAX;
    for u in p.iter().chain(x.iter()) {
        let cnt = p.intersection_len(g.row(u));
        if best == usize::MAX || cnt > best {
            best = cnt;
            pivot = u;
        }
    }
    let mut candidates = p.clone();
    if pivot != usize::MAX {
        candidates.subtract(g.row(pivot));
    }
    let mut p = p;
    let mut x = x;
    for v in candidates.iter() {
        r.push(v as u32);
        bron_kerbosch(g, r, p.intersection(g.row(v)), x.intersection(g.row(v)), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Clique number and the list of maximum cliques.
pub fn enumerate_max_cliques(g: &Graph) -> (usize, Vec<Vec<u32>>) {
    let all = maximal_cliques(g);
    let omega = all.iter().map(Vec::len).max().unwrap_or(0);
    let max: Vec<Vec<u32>> = all.into_iter().filter(|c| c.len() == omega).collect();
    (omega, max)
}

/// A partition of the vertex set into maximal cliques. Blocks and their
/// members are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CliquePartition {
    pub blocks: Vec<Vec<u32>>,
}

impl CliquePartition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        CliquePartition { blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionViolation {
    OutOfRange { block: usize, vertex: u32 },
    Overlap { vertex: u32 },
    Uncovered { vertex: u32 },
    NotClique { block: usize, u: u32, v: u32 },
    NotMaximal { block: usize, vertex: u32 },
}

impl fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionViolation::OutOfRange { block, vertex } => {
                write!(f, "block {block} names vertex {vertex} outside the graph")
            }
            PartitionViolation::Overlap { vertex } => {
                write!(f, "vertex {vertex} appears in more than one block")
            }
            PartitionViolation::Uncovered { vertex } => {
                write!(f, "vertex {vertex} is not covered by any block")
            }
            PartitionViolation::NotClique { block, u, v } => {
                write!(f, "block {block} is not a clique: {u} and {v} are not adjacent")
            }
            PartitionViolation::NotMaximal { block, vertex } => {
                write!(
                    f,
                    "block {block} is not maximal: vertex {vertex} is adjacent to all of it"
                )
            }
        }
    }
}

/// Check all clique-partition invariants against `g`, reporting the first
/// violation instead of failing.
pub fn verify_partition(g: &Graph, p: &CliquePartition) -> Result<(), PartitionViolation> {
    let mut owner = vec![usize::MAX; g.n()];
    for (bi, block) in p.blocks.iter().enumerate() {
        for &v in block {
            if v as usize >= g.n() {
                return Err(PartitionViolation::OutOfRange { block: bi, vertex: v });
            }
            if owner[v as usize] != usize::MAX {
                return Err(PartitionViolation::Overlap { vertex: v });
            }
            owner[v as usize] = bi;
        }
    }
    for v in 0..g.n() {
        if owner[v] == usize::MAX {
            return Err(PartitionViolation::Uncovered { vertex: v as u32 });
        }
    }
    for (bi, block) in p.blocks.iter().enumerate() {
        for (a, &u) in block.iter().enumerate() {
            for &v in block.iter().skip(a + 1) {
                if !g.has_edge(u as usize, v as usize) {
                    return Err(PartitionViolation::NotClique { block: bi, u, v });
                }
            }
        }
        'outside: for w in 0..g.n() {
            if owner[w] == bi {
                continue;
            }
            for &u in block {
                if !g.has_edge(w, u as usize) {
                    continue 'outside;
                }
            }
            return Err(PartitionViolation::NotMaximal {
                block: bi,
                vertex: w as u32,
            });
        }
    }
    Ok(())
}

fn partition_cover_instance(g: &Graph) -> (CoverInstance, Vec<Vec<u32>>) {
    let (_, cliques) = enumerate_max_cliques(g);
    let inst = CoverInstance {
        n_cols: g.n(),
        rows: cliques.clone(),
    };
    (inst, cliques)
}

/// One partition of `g` into maximum cliques, if any exists. The exact-cover
/// search is exhaustive, so `None` means no such partition exists.
pub fn find_clique_partition(g: &Graph) -> Option<CliquePartition> {
    let (inst, cliques) = partition_cover_instance(g);
    let sols = solve_exact_cover(&inst, u64::MAX, Some(1)).expect("unbounded budget");
    sols.into_iter().next().map(|rows| {
        CliquePartition::new(rows.iter().map(|&r| cliques[r as usize].clone()).collect())
    })
}

/// All partitions of `g` into maximum cliques, as unordered block sets in
/// canonical order.
pub fn enumerate_clique_partitions(
    g: &Graph,
    max_nodes: u64,
) -> Result<Vec<CliquePartition>, BudgetExceeded> {
    let (inst, cliques) = partition_cover_instance(g);
    let sols = solve_exact_cover(&inst, max_nodes, None)?;
    let mut out: Vec<CliquePartition> = sols
        .into_iter()
        .map(|rows| {
            CliquePartition::new(rows.iter().map(|&r| cliques[r as usize].clone()).collect())
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Partition of a tensor product from per-factor partitions with constant
/// block sizes, by cyclically aligning blocks row by row. With factor data
/// `(m_i, s_i)` and `s = min s_i`, the result has `(prod m_i s_i) / s`
/// blocks of size `s`.
pub fn product_partition(partitions: &[CliquePartition]) -> Result<CliquePartition, GraphError> {
    if partitions.is_empty() {
        return Err(GraphError::EmptyInput);
    }
    for (i, p) in partitions.iter().enumerate() {
        if p.blocks.is_empty() || p.blocks.iter().any(|b| b.len() != p.blocks[0].len()) {
            return Err(GraphError::UnequalBlockSizes { factor: i });
        }
    }
    let mut acc = partitions[0].clone();
    let mut acc_n = acc.vertex_count();
    for q in &partitions[1..] {
        let q_n = q.vertex_count();
        let s_acc = acc.blocks[0].len();
        let s_q = q.blocks[0].len();
        let mut blocks = Vec::new();
        for a in &acc.blocks {
            for b in &q.blocks {
                if s_acc <= s_q {
                    for r in 0..s_q {
                        let block: Vec<u32> = (0..s_acc)
                            .map(|i| a[i] * q_n as u32 + b[(i + r) % s_q])
                            .collect();
                        blocks.push(block);
                    }
                } else {
                    for r in 0..s_acc {
                        let block: Vec<u32> = (0..s_q)
                            .map(|i| a[(i + r) % s_acc] * q_n as u32 + b[i])
                            .collect();
                        blocks.push(block);
                    }
                }
            }
        }
        acc = CliquePartition::new(blocks);
        acc_n *= q_n;
    }
    debug_assert_eq!(acc.vertex_count(), acc_n);
    Ok(acc)
}

/// Lift a partition of the quotient graph along radical fibers: block copy
/// `k` takes the `k`-th member of each fiber met by the base block.
pub fn lift_partition(
    quotient_graph: &Graph,
    base: &CliquePartition,
    fibers: &[Vec<u32>],
) -> Result<CliquePartition, GraphError> {
    verify_partition(quotient_graph, base).map_err(GraphError::InvalidBase)?;
    if fibers.is_empty() {
        return Err(GraphError::EmptyInput);
    }
    let fiber_size = fibers[0].len();
    if fiber_size == 0 || fibers.iter().any(|f| f.len() != fiber_size) {
        return Err(GraphError::FiberSizeMismatch);
    }
    if fibers.len() != quotient_graph.n() {
        return Err(GraphError::FiberSizeMismatch);
    }
    let mut blocks = Vec::with_capacity(base.block_count() * fiber_size);
    for block in &base.blocks {
        for k in 0..fiber_size {
            blocks.push(block.iter().map(|&q| fibers[q as usize][k]).collect());
        }
    }
    Ok(CliquePartition::new(blocks))
}

const ISO_LIMIT: usize = 500;

/// Isomorphism witness between `g` and `h`, if one exists: colour refinement
/// followed by backtracking with candidate-mask propagation. Exact for
/// graphs within the vertex limit.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    let n = g.n();
    if n != h.n() {
        return Ok(None);
    }
    if n > ISO_LIMIT {
        return Err(GraphError::TooLarge { n, limit: ISO_LIMIT });
    }
    if g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (cg, ch) = match refine_colors(g, h) {
        Some(pair) => pair,
        None => return Ok(None),
    };
    // candidate sets from the stable colouring
    let mut cand: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut s = BitSet::empty(n);
            for w in 0..n {
                if ch[w] == cg[v] {
                    s.insert(w);
                }
            }
            s
        })
        .collect();
    if cand.iter().any(BitSet::is_empty) {
        return Ok(None);
    }
    let comp_rows: Vec<BitSet> = (0..n)
        .map(|w| {
            let mut s = BitSet::full(n);
            s.subtract(h.row(w));
            s.remove(w);
            s
        })
        .collect();
    let mut mapping = vec![usize::MAX; n];
    let mut mapped = vec![false; n];
    let found = backtrack(g, h, &comp_rows, &mut cand, &mut mapping, &mut mapped, 0);
    Ok(found.then_some(mapping))
}

/// Joint colour refinement; `None` when the colour histograms diverge.
fn refine_colors(g: &Graph, h: &Graph) -> Option<(Vec<u32>, Vec<u32>)> {
    use alloc::collections::BTreeMap;
    let n = g.n();
    let mut cg: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut ch: Vec<u32> = (0..n).map(|v| h.degree(v) as u32).collect();
    loop {
        let sig = |graph: &Graph, colors: &[u32], v: usize| {
            let mut neigh: Vec<u32> = graph.row(v).iter().map(|w| colors[w]).collect();
            neigh.sort_unstable();
            (colors[v], neigh)
        };
        let mut table: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let sigs_g: Vec<_> = (0..n).map(|v| sig(g, &cg, v)).collect();
        let sigs_h: Vec<_> = (0..n).map(|v| sig(h, &ch, v)).collect();
        for s in sigs_g.iter().chain(sigs_h.iter()) {
            let next = table.len() as u32;
            table.entry(s.clone()).or_insert(next);
        }
        let new_g: Vec<u32> = sigs_g.iter().map(|s| table[s]).collect();
        let new_h: Vec<u32> = sigs_h.iter().map(|s| table[s]).collect();
        let mut hist_g = vec![0usize; table.len()];
        let mut hist_h = vec![0usize; table.len()];
        for &c in &new_g {
            hist_g[c as usize] += 1;
        }
        for &c in &new_h {
            hist_h[c as usize] += 1;
        }
        if hist_g != hist_h {
            return None;
        }
        let stable = count_distinct(&new_g) == count_distinct(&cg);
        cg = new_g;
        ch = new_h;
        if stable {
            return Some((cg, ch));
        }
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn backtrack(
    g: &Graph,
    h: &Graph,
    comp_rows: &[BitSet],
    cand: &mut Vec<BitSet>,
    mapping: &mut Vec<usize>,
    mapped: &mut Vec<bool>,
    depth: usize,
) -> bool {
    let n = g.n();
    if depth == n {
        return true;
    }
    // most constrained unmapped vertex
    let mut v = usize::MAX;
    let mut best = usize::MAX;
    for u in 0..n {
        if !mapped[u] {
            let cnt = cand[u].len();
            if cnt < best {
                best = cnt;
                v = u;
            }
        }
    }
    if best == 0 {
        return false;
    }
    let choices: Vec<usize> = cand[v].iter().collect();
    for w in choices {
        mapping[v] = w;
        mapped[v] = true;
        let mut saved: Vec<(usize, BitSet)> = Vec::new();
        let mut dead = false;
        for u in 0..n {
            if mapped[u] || u == v {
                continue;
            }
            let mut new_cand = cand[u].clone();
            if g.has_edge(u, v) {
                new_cand.intersect_with(h.row(w));
            } else {
                new_cand.intersect_with(&comp_rows[w]);
            }
            new_cand.remove(w);
            if new_cand != cand[u] {
                saved.push((u, core::mem::replace(&mut cand[u], new_cand)));
            }
            if cand[u].is_empty() {
                dead = true;
                break;
            }
        }
        if !dead && backtrack(g, h, comp_rows, cand, mapping, mapped, depth + 1) {
            return true;
        }
        for (u, old) in saved.into_iter().rev() {
            cand[u] = old;
        }
        mapped[v] = false;
        mapping[v] = usize::MAX;
    }
    false
}

/// Check a vertex mapping is an isomorphism witness, edge by edge.
pub fn verify_isomorphism(g: &Graph, h: &Graph, mapping: &[usize]) -> bool {
    if g.n() != h.n() || mapping.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; h.n()];
    for &w in mapping {
        if w >= h.n() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if g.has_edge(i, j) != h.has_edge(mapping[i], mapping[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pline::{radical_projection, ProjectiveLine};
    use crate::ring::make_ring;

    fn distant(spec: &str) -> Graph {
        ProjectiveLine::new(&make_ring(spec).unwrap()).distant_graph()
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(complete_graph(1).edge_count(), 0);
        assert_eq!(complete_graph(3).edge_count(), 3);
        let (omega, cliques) = enumerate_max_cliques(&complete_graph(5));
        assert_eq!(omega, 5);
        assert_eq!(cliques.len(), 1);
    }

    #[test]
    fn tensor_product_shapes() {
        let k3 = complete_graph(3);
        let k4 = complete_graph(4);
        let t33 = tensor_product(&[&k3, &k3]);
        assert_eq!(t33.n(), 9);
        assert_eq!(t33.regular_degree(), Some(4));
        let t34 = tensor_product(&[&k3, &k4]);
        assert_eq!(t34.n(), 12);
        assert_eq!(t34.regular_degree(), Some(6));
    }

    #[test]
    fn tensor_degree_law() {
        let a = distant("Z4");
        let b = distant("Z9");
        let t = tensor_product(&[&a, &b]);
        for u in 0..a.n() {
            for v in 0..b.n() {
                assert_eq!(t.degree(u * b.n() + v), a.degree(u) * b.degree(v));
            }
        }
    }

    #[test]
    fn tensor_of_factor_lines_matches_product_ring() {
        let t = tensor_product(&[&distant("Z2"), &distant("Z3")]);
        let g6 = distant("Z6");
        let witness = is_isomorphic(&t, &g6).unwrap().expect("isomorphic");
        assert!(verify_isomorphism(&t, &g6, &witness));
    }

    #[test]
    fn isomorphism_spot_checks() {
        let a = distant("Z4");
        let b = distant("Trunc(GF(2),2)");
        let w = is_isomorphic(&a, &b).unwrap().expect("isomorphic");
        assert!(verify_isomorphism(&a, &b, &w));

        // 12 vs 18 vertices
        assert!(is_isomorphic(&distant("Z8"), &distant("LT2(GF(2))"))
            .unwrap()
            .is_none());

        // reflexivity
        let w = is_isomorphic(&a, &a).unwrap().expect("reflexive");
        assert!(verify_isomorphism(&a, &a, &w));
    }

    #[test]
    fn isomorphism_rejects_same_size_different_structure() {
        // C6 vs two triangles: same vertex count, degree, and edge count
        let mut c6 = Graph::new(6);
        for i in 0..6 {
            c6.add_edge(i, (i + 1) % 6);
        }
        let mut tri2 = Graph::new(6);
        for off in [0, 3] {
            tri2.add_edge(off, off + 1);
            tri2.add_edge(off + 1, off + 2);
            tri2.add_edge(off, off + 2);
        }
        assert!(is_isomorphic(&c6, &tri2).unwrap().is_none());
    }

    #[test]
    fn max_cliques_of_distant_graphs() {
        let (omega, cliques) = enumerate_max_cliques(&distant("Z4"));
        assert_eq!((omega, cliques.len()), (3, 8));
        let (omega, cliques) = enumerate_max_cliques(&distant("M2(GF(2))"));
        assert_eq!((omega, cliques.len()), (5, 56));
    }

    #[test]
    fn clique_partitions_found() {
        let p = find_clique_partition(&distant("Z4")).expect("partition exists");
        assert_eq!(p.block_count(), 2);
        assert!(p.blocks.iter().all(|b| b.len() == 3));

        let m2 = distant("M2(GF(2))");
        let p = find_clique_partition(&m2).expect("partition exists");
        assert_eq!(p.block_count(), 7);
        assert!(p.blocks.iter().all(|b| b.len() == 5));
        verify_partition(&m2, &p).unwrap();

        let k4 = complete_graph(4);
        assert_eq!(find_clique_partition(&k4).unwrap().block_count(), 1);
    }

    #[test]
    fn partition_enumeration_small() {
        let octahedron = complete_multipartite(3, 2);
        let parts = enumerate_clique_partitions(&octahedron, 1 << 20).unwrap();
        assert_eq!(parts.len(), 4);
        for p in &parts {
            verify_partition(&octahedron, p).unwrap();
        }
        assert_eq!(
            enumerate_clique_partitions(&complete_graph(4), 1 << 20)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn product_partition_block_counts() {
        let k3 = complete_graph(3);
        let k5 = complete_graph(5);
        let whole3 = CliquePartition::new(vec![vec![0, 1, 2]]);
        let whole5 = CliquePartition::new(vec![vec![0, 1, 2, 3, 4]]);

        let p33 = product_partition(&[whole3.clone(), whole3.clone()]).unwrap();
        assert_eq!(p33.block_count(), 3);
        verify_partition(&tensor_product(&[&k3, &k3]), &p33).unwrap();

        let p35 = product_partition(&[whole3.clone(), whole5.clone()]).unwrap();
        assert_eq!(p35.block_count(), 5);
        assert!(p35.blocks.iter().all(|b| b.len() == 3));
        verify_partition(&tensor_product(&[&k3, &k5]), &p35).unwrap();

        let p333 = product_partition(&[whole3.clone(), whole3.clone(), whole3]).unwrap();
        assert_eq!(p333.block_count(), 9);
        assert_eq!(p333.vertex_count(), 27);
        verify_partition(&tensor_product(&[&k3, &k3, &k3]), &p333).unwrap();
    }

    #[test]
    fn product_partition_rejects_unequal_blocks() {
        let uneven = CliquePartition::new(vec![vec![0, 1], vec![2, 3, 4]]);
        let whole = CliquePartition::new(vec![vec![0, 1, 2]]);
        assert_eq!(
            product_partition(&[uneven, whole]).unwrap_err(),
            GraphError::UnequalBlockSizes { factor: 0 }
        );
    }

    #[test]
    fn lift_partition_examples() {
        // Z4: one block over the residue field lifts to |J| = 2 blocks
        let z4 = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&z4);
        let proj = radical_projection(&z4, &line);
        let qg = proj.quotient_line.distant_graph();
        let base = find_clique_partition(&qg).unwrap();
        let lifted = lift_partition(&qg, &base, &proj.fibers).unwrap();
        assert_eq!(lifted.block_count(), 2);
        verify_partition(&line.distant_graph(), &lifted).unwrap();

        // Z9: |J| = 3 blocks of size 4
        let z9 = make_ring("Z9").unwrap();
        let line = ProjectiveLine::new(&z9);
        let proj = radical_projection(&z9, &line);
        let qg = proj.quotient_line.distant_graph();
        let base = find_clique_partition(&qg).unwrap();
        let lifted = lift_partition(&qg, &base, &proj.fibers).unwrap();
        assert_eq!(lifted.block_count(), 3);
        assert!(lifted.blocks.iter().all(|b| b.len() == 4));
        verify_partition(&line.distant_graph(), &lifted).unwrap();

        // ternions: 3 residue blocks lift to 6 blocks of size 3 on 18 points
        let t2 = make_ring("LT2(GF(2))").unwrap();
        let line = ProjectiveLine::new(&t2);
        let proj = radical_projection(&t2, &line);
        let qg = proj.quotient_line.distant_graph();
        let base = find_clique_partition(&qg).unwrap();
        assert_eq!(base.block_count(), 3);
        let lifted = lift_partition(&qg, &base, &proj.fibers).unwrap();
        assert_eq!(lifted.block_count(), 6);
        assert!(lifted.blocks.iter().all(|b| b.len() == 3));
        verify_partition(&line.distant_graph(), &lifted).unwrap();
    }

    #[test]
    fn lift_rejects_invalid_base() {
        let g = complete_graph(4);
        let bad = CliquePartition::new(vec![vec![0, 1], vec![2, 3]]); // not maximal
        let fibers = vec![vec![0], vec![1], vec![2], vec![3]];
        assert!(matches!(
            lift_partition(&g, &bad, &fibers),
            Err(GraphError::InvalidBase(_))
        ));
    }

    #[test]
    fn verify_partition_reports_tampering() {
        let g = distant("Z4");
        let p = find_clique_partition(&g).unwrap();
        let mut blocks = p.blocks.clone();
        // swap one vertex across the two blocks
        let (a, b) = (blocks[0][0], blocks[1][0]);
        blocks[0][0] = b;
        blocks[1][0] = a;
        let tampered = CliquePartition::new(blocks);
        match verify_partition(&g, &tampered) {
            Err(PartitionViolation::NotClique { .. }) => {}
            other => panic!("expected a non-clique violation, got {other:?}"),
        }
    }

    #[test]
    fn complete_multipartite_detection() {
        assert_eq!(is_complete_multipartite(&distant("Z4")), Some((3, 2)));
        assert_eq!(is_complete_multipartite(&distant("Z9")), Some((4, 3)));
        assert_eq!(is_complete_multipartite(&distant("LT2(GF(2))")), None);
        assert_eq!(is_complete_multipartite(&complete_graph(5)), Some((5, 1)));
    }

    #[test]
    fn octahedron_partition_blocks_are_complementary_triangles() {
        let octa = complete_multipartite(3, 2);
        let p = find_clique_partition(&octa).unwrap();
        verify_partition(&octa, &p).unwrap();
        assert_eq!(p.block_count(), 2);
    }
}
