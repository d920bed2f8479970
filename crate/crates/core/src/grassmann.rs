//! The Grassmannian of n-dimensional subspaces of V(2n, q): canonical
//! subspace enumeration, complementarity and adjacency, spreads and
//! parallelisms by exact cover, the GL(2n, q) action with orbit
//! classification, and the pair/triple clique analysis of a parallelism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{solve_exact_cover, BudgetExceeded, CoverInstance};
use crate::graph::{enumerate_max_cliques, Graph};
use crate::pline::ProjectivePoint;
use crate::ring::{matrix_entries, prime_power, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrassmannError {
    /// The subspace list would be too long to enumerate.
    CapExceeded { count: u128, cap: u128 },
    /// Subspaces from different ambient spaces or of unequal dimension.
    DimensionMismatch,
    /// `q` is not a prime power.
    BadFieldOrder(usize),
    /// The ring handed to the point correspondence is not `M_n(F(q))`.
    NotMatrixRing(String),
    /// The group is too large to traverse element by element.
    GroupTooLarge { order: u128, cap: u128 },
    /// The fixed generators failed to generate the full linear group.
    GenerationFailure { expected: u128, got: u128 },
    /// An orbit walk left the supplied object list.
    ActionNotClosed,
    /// The object is not a valid parallelism.
    InvalidParallelism(String),
    /// Fixture text rejected at the given 1-based line.
    Fixture { line: usize, msg: String },
    Budget(BudgetExceeded),
}

impl fmt::Display for GrassmannError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrassmannError::CapExceeded { count, cap } => {
                write!(f, "{count} subspaces exceed the enumeration cap {cap}")
            }
            GrassmannError::DimensionMismatch => write!(f, "dimension mismatch"),
            GrassmannError::BadFieldOrder(q) => write!(f, "{q} is not a prime power"),
            GrassmannError::NotMatrixRing(msg) => write!(f, "not a matrix ring: {msg}"),
            GrassmannError::GroupTooLarge { order, cap } => {
                write!(f, "group of order {order} exceeds traversal cap {cap}")
            }
            GrassmannError::GenerationFailure { expected, got } => write!(
                f,
                "generators produced {got} elements, the full group has {expected}"
            ),
            GrassmannError::ActionNotClosed => {
                write!(f, "group action leaves the supplied object list")
            }
            GrassmannError::InvalidParallelism(msg) => write!(f, "invalid parallelism: {msg}"),
            GrassmannError::Fixture { line, msg } => write!(f, "fixture line {line}: {msg}"),
            GrassmannError::Budget(b) => write!(f, "{b}"),
        }
    }
}

impl core::error::Error for GrassmannError {}

impl From<BudgetExceeded> for GrassmannError {
    fn from(b: BudgetExceeded) -> Self {
        GrassmannError::Budget(b)
    }
}

/// Arithmetic tables for a small finite field `F(q)`.
#[derive(Clone, Debug)]
pub struct Gf {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: usize) -> Result<Self, GrassmannError> {
        let (p, k) = prime_power(q).ok_or(GrassmannError::BadFieldOrder(q))?;
        if q > 256 {
            return Err(GrassmannError::BadFieldOrder(q));
        }
        let ring = FiniteRing::galois_field(p, k);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = ring.neg(a) as u8;
            inv[a] = ring.inverse(a).unwrap_or(0) as u8;
            for b in 0..q {
                add[a * q + b] = ring.add(a, b) as u8;
                mul[a * q + b] = ring.mul(a, b) as u8;
            }
        }
        Ok(Gf {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// Reduced row echelon form in place; returns the rank.
pub fn rref(rows: &mut [Vec<u8>], gf: &Gf) -> usize {
    let height = rows.len();
    if height == 0 {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = gf.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = gf.mul(*x, scale);
        }
        for r in 0..height {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..width {
                    let sub = gf.mul(factor, rows[rank][c]);
                    rows[r][c] = gf.add(rows[r][c], gf.neg(sub));
                }
            }
        }
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

/// An n-dimensional subspace of V(2n, q) in reduced row-echelon form.
/// The basis is stored flat, `dim * ambient` digits; the RREF basis is the
/// unique canonical representative, so equality and order are structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    pub dim: usize,
    pub ambient: usize,
    pub rows: Vec<u8>,
}

impl Subspace {
    /// Canonicalize raw basis rows; `None` when the rows are dependent.
    pub fn from_rows(gf: &Gf, ambient: usize, raw: &[Vec<u8>]) -> Option<Subspace> {
        let mut mat: Vec<Vec<u8>> = raw.to_vec();
        let rank = rref(&mut mat, gf);
        if rank != raw.len() {
            return None;
        }
        let mut rows = Vec::with_capacity(rank * ambient);
        for r in &mat {
            rows.extend_from_slice(r);
        }
        Some(Subspace {
            dim: rank,
            ambient,
            rows,
        })
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i * self.ambient..(i + 1) * self.ambient]
    }

    /// Rows rendered as digit strings joined by `/`, e.g. `0010/0001`.
    pub fn display(&self) -> String {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&d| char::from_digit(d as u32, 36).unwrap())
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Gaussian binomial coefficient via the q-Pascal recurrence
/// `[m k] = [m-1 k-1] + q^k [m-1 k]`.
pub fn gaussian_binomial(top: usize, bottom: usize, q: usize) -> u128 {
    if bottom > top {
        return 0;
    }
    let mut row = vec![0u128; bottom + 1];
    row[0] = 1;
    for _m in 1..=top {
        for k in (1..=bottom).rev() {
            let qk = crate::ring::checked_pow_u128(q as u128, k).expect("desk-scale parameters");
            row[k] = row[k - 1]
                .checked_add(qk.checked_mul(row[k]).expect("desk-scale parameters"))
                .expect("desk-scale parameters");
        }
    }
    row[bottom]
}

/// Cap on the number of subspaces a context will enumerate.
pub const SUBSPACE_CAP: u128 = 100_000;

/// The Grassmannian G(n, 2n, q) with its canonical subspace list.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    pub n: usize,
    pub q: usize,
    pub ambient: usize,
    pub gf: Gf,
    pub subspaces: Vec<Subspace>,
    index: BTreeMap<Vec<u8>, u32>,
}

impl Grassmannian {
    pub fn new(n: usize, q: usize) -> Result<Self, GrassmannError> {
        let gf = Gf::new(q)?;
        let ambient = 2 * n;
        let count = gaussian_binomial(ambient, n, q);
        if count > SUBSPACE_CAP {
            return Err(GrassmannError::CapExceeded {
                count,
                cap: SUBSPACE_CAP,
            });
        }
        let mut subspaces = enumerate_rref(n, ambient, &gf);
        subspaces.sort();
        debug_assert_eq!(subspaces.len() as u128, count);
        let index = subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.rows.clone(), i as u32))
            .collect();
        Ok(Grassmannian {
            n,
            q,
            ambient,
            gf,
            subspaces,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspace_id(&self, s: &Subspace) -> Option<u32> {
        self.index.get(&s.rows).copied()
    }

    fn stack_rank(&self, a: &Subspace, b: &Subspace) -> usize {
        let mut mat: Vec<Vec<u8>> = (0..a.dim)
            .map(|i| a.row(i).to_vec())
            .chain((0..b.dim).map(|i| b.row(i).to_vec()))
            .collect();
        rref(&mut mat, &self.gf)
    }

    /// `X + Y = V(2n, q)` as a direct sum.
    pub fn is_complementary(&self, a: &Subspace, b: &Subspace) -> Result<bool, GrassmannError> {
        if a.ambient != self.ambient || b.ambient != self.ambient {
            return Err(GrassmannError::DimensionMismatch);
        }
        Ok(a.dim + b.dim == self.ambient && self.stack_rank(a, b) == self.ambient)
    }

    /// Grassmann-graph adjacency: both have codimension 1 in `X + Y`.
    pub fn is_adjacent(&self, a: &Subspace, b: &Subspace) -> Result<bool, GrassmannError> {
        if a.ambient != self.ambient || b.ambient != self.ambient || a.dim != b.dim {
            return Err(GrassmannError::DimensionMismatch);
        }
        Ok(self.stack_rank(a, b) == a.dim + 1)
    }

    /// The complementarity graph on the canonical subspace list.
    pub fn distant_graph(&self) -> Graph {
        let m = self.subspaces.len();
        let mut g = Graph::new(m);
        for i in 0..m {
            for j in i + 1..m {
                if self
                    .is_complementary(&self.subspaces[i], &self.subspaces[j])
                    .unwrap()
                {
                    g.add_edge(i, j);
                }
            }
        }
        g.set_labels(self.subspaces.iter().map(Subspace::display).collect());
        g
    }

    /// Vector code (most significant digit first) of a coordinate vector.
    fn vector_code(&self, v: &[u8]) -> usize {
        v.iter().fold(0usize, |acc, &d| acc * self.q + d as usize)
    }

    /// Codes of the nonzero vectors of a subspace, from all coefficient
    /// combinations of its basis.
    pub fn nonzero_vectors(&self, s: &Subspace) -> Vec<usize> {
        let mut out = Vec::new();
        let total = crate::ring::pow_usize(self.q, s.dim);
        for combo in 1..total {
            let mut rem = combo;
            let mut v = vec![0u8; self.ambient];
            for i in 0..s.dim {
                let coeff = (rem % self.q) as u8;
                rem /= self.q;
                if coeff != 0 {
                    for (c, x) in v.iter_mut().enumerate() {
                        *x = self.gf.add(*x, self.gf.mul(coeff, s.row(i)[c]));
                    }
                }
            }
            out.push(self.vector_code(&v));
        }
        out.sort_unstable();
        out
    }

    /// Image of a subspace under a right-acting matrix (`ambient x ambient`,
    /// row-major), re-canonicalized.
    pub fn transform(&self, s: &Subspace, m: &[u8]) -> Subspace {
        let a = self.ambient;
        let raw: Vec<Vec<u8>> = (0..s.dim)
            .map(|i| {
                let row = s.row(i);
                (0..a)
                    .map(|j| {
                        let mut acc = 0u8;
                        for (k, &x) in row.iter().enumerate() {
                            acc = self.gf.add(acc, self.gf.mul(x, m[k * a + j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Subspace::from_rows(&self.gf, a, &raw).expect("invertible image keeps rank")
    }

    /// The subspace corresponding to a point of the projective line over
    /// `M_n(F(q))`: the row space of the stacked block matrix `[A | B]`.
    pub fn point_to_subspace(
        &self,
        ring: &FiniteRing,
        point: &ProjectivePoint,
    ) -> Result<Subspace, GrassmannError> {
        let (n, base) = ring
            .matrix_structure()
            .ok_or_else(|| GrassmannError::NotMatrixRing(ring.label().into()))?;
        if !base.is_field() {
            return Err(GrassmannError::NotMatrixRing(format!(
                "{}: base ring is not a field",
                ring.label()
            )));
        }
        if n != self.n || base.size() != self.q {
            return Err(GrassmannError::DimensionMismatch);
        }
        let (pa, pb) = point.canonical;
        let ea = matrix_entries(ring, pa).unwrap();
        let eb = matrix_entries(ring, pb).unwrap();
        let raw: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                let mut row: Vec<u8> = ea[r * n..(r + 1) * n].iter().map(|&x| x as u8).collect();
                row.extend(eb[r * n..(r + 1) * n].iter().map(|&x| x as u8));
                row
            })
            .collect();
        Subspace::from_rows(&self.gf, self.ambient, &raw).ok_or(GrassmannError::DimensionMismatch)
    }
}

/// All RREF bases with `dim` rows in `ambient` columns, by pivot-column set.
fn enumerate_rref(dim: usize, ambient: usize, gf: &Gf) -> Vec<Subspace> {
    let q = gf.q();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        // free cells: right of the row's pivot, not in a pivot column
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..ambient {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let total = crate::ring::pow_usize(q, free.len());
        for combo in 0..total {
            let mut rem = combo;
            let mut rows = vec![0u8; dim * ambient];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r * ambient + p] = 1;
            }
            for &(r, c) in &free {
                rows[r * ambient + c] = (rem % q) as u8;
                rem /= q;
            }
            out.push(Subspace {
                dim,
                ambient,
                rows,
            });
        }
        // next pivot-column combination
        let mut i = dim;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if pivots[i] < ambient - (dim - i) {
                pivots[i] += 1;
                for j in i + 1..dim {
                    pivots[j] = pivots[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// A spread: subspaces covering every nonzero vector exactly once, held as
/// sorted ids into a canonical subspace list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Spread {
    pub members: Vec<u32>,
}

/// A parallelism: spreads partitioning the whole subspace list, held as
/// sorted indices into a spread list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Parallelism {
    pub spreads: Vec<u32>,
}

impl Grassmannian {
    /// Spread size `q^n + 1`.
    pub fn spread_size(&self) -> usize {
        crate::ring::pow_usize(self.q, self.n) + 1
    }

    fn spread_cover_instance(&self) -> CoverInstance {
        let n_cols = crate::ring::pow_usize(self.q, self.ambient) - 1;
        let rows = self
            .subspaces
            .iter()
            .map(|s| {
                self.nonzero_vectors(s)
                    .into_iter()
                    .map(|code| (code - 1) as u32)
                    .collect()
            })
            .collect();
        CoverInstance { n_cols, rows }
    }

    /// Every spread, via exact cover of the nonzero vectors.
    pub fn enumerate_spreads(&self, max_nodes: u64) -> Result<Vec<Spread>, GrassmannError> {
        let inst = self.spread_cover_instance();
        let sols = solve_exact_cover(&inst, max_nodes, None)?;
        let mut spreads: Vec<Spread> = sols.into_iter().map(|members| Spread { members }).collect();
        spreads.sort();
        Ok(spreads)
    }

    /// Best-effort search for at most `limit` spreads.
    pub fn find_spreads(
        &self,
        max_nodes: u64,
        limit: usize,
    ) -> Result<Vec<Spread>, GrassmannError> {
        let inst = self.spread_cover_instance();
        let sols = solve_exact_cover(&inst, max_nodes, Some(limit))?;
        Ok(sols.into_iter().map(|members| Spread { members }).collect())
    }

    /// Every parallelism over the given spread list, via exact cover of the
    /// subspace list; at most `max_solutions` when given.
    pub fn enumerate_parallelisms(
        &self,
        spreads: &[Spread],
        max_nodes: u64,
        max_solutions: Option<usize>,
    ) -> Result<Vec<Parallelism>, GrassmannError> {
        let inst = CoverInstance {
            n_cols: self.subspaces.len(),
            rows: spreads.iter().map(|s| s.members.clone()).collect(),
        };
        let sols = solve_exact_cover(&inst, max_nodes, max_solutions)?;
        let mut out: Vec<Parallelism> = sols
            .into_iter()
            .map(|spreads| Parallelism { spreads })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Spread axioms for a member list, with a diagnostic on failure.
    pub fn validate_spread(&self, members: &[u32]) -> Result<(), String> {
        let expected = self.spread_size();
        if members.len() != expected {
            return Err(format!(
                "spread has {} members, expected {expected}",
                members.len()
            ));
        }
        let n_vectors = crate::ring::pow_usize(self.q, self.ambient) - 1;
        let mut covered = vec![0u8; n_vectors];
        for &m in members {
            if m as usize >= self.subspaces.len() {
                return Err(format!("subspace id {m} out of range"));
            }
            for code in self.nonzero_vectors(&self.subspaces[m as usize]) {
                covered[code - 1] += 1;
            }
        }
        if let Some(code) = covered.iter().position(|&c| c != 1) {
            return Err(format!(
                "vector {} covered {} times",
                code + 1,
                covered[code]
            ));
        }
        Ok(())
    }

    /// Parallelism axioms for spreads given as member lists.
    pub fn validate_parallelism(&self, spreads: &[Vec<u32>]) -> Result<(), String> {
        let mut seen = vec![false; self.subspaces.len()];
        for (i, members) in spreads.iter().enumerate() {
            self.validate_spread(members)
                .map_err(|e| format!("spread {}: {e}", i + 1))?;
            for &m in members {
                if seen[m as usize] {
                    return Err(format!(
                        "subspace {} appears in more than one spread",
                        self.subspaces[m as usize].display()
                    ));
                }
                seen[m as usize] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(format!(
                "subspace {} is not covered",
                self.subspaces[missing].display()
            ));
        }
        Ok(())
    }
}

/// `|GL(m, q)| = prod over i of (q^m - q^i)`.
pub fn gl_order(m: usize, q: usize) -> u128 {
    let qm = crate::ring::checked_pow_u128(q as u128, m).expect("desk-scale parameters");
    let mut order = 1u128;
    let mut qi = 1u128;
    for _ in 0..m {
        order = order.checked_mul(qm - qi).expect("desk-scale parameters");
        qi *= q as u128;
    }
    order
}

/// Cap on group orders traversed element by element.
pub const GROUP_CAP: u128 = 1_000_000;

/// The general linear group acting on the canonical subspace list, generated
/// by a Singer-type cycle and a transvection, with the closure validated
/// against the order formula.
#[derive(Clone, Debug)]
pub struct GlAction {
    pub order: u128,
    /// Generator matrices, `ambient x ambient` row-major.
    pub generators: Vec<Vec<u8>>,
    /// Their permutations of the canonical subspace list.
    pub generator_perms: Vec<Vec<u32>>,
}

impl Grassmannian {
    pub fn gl_action(&self) -> Result<GlAction, GrassmannError> {
        let m = self.ambient;
        let order = gl_order(m, self.q);
        if order > GROUP_CAP {
            return Err(GrassmannError::GroupTooLarge {
                order,
                cap: GROUP_CAP,
            });
        }
        let generators = vec![singer_cycle(&self.gf, m), transvection(m)];
        let got = matrix_closure_size(&self.gf, m, &generators, order);
        if got != order {
            return Err(GrassmannError::GenerationFailure {
                expected: order,
                got,
            });
        }
        let generator_perms = generators
            .iter()
            .map(|g| {
                self.subspaces
                    .iter()
                    .map(|s| {
                        let image = self.transform(s, g);
                        self.subspace_id(&image).expect("closed under the action")
                    })
                    .collect()
            })
            .collect();
        Ok(GlAction {
            order,
            generators,
            generator_perms,
        })
    }
}

fn mat_mul(gf: &Gf, m: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; m * m];
    for r in 0..m {
        for c in 0..m {
            let mut acc = 0u8;
            for k in 0..m {
                acc = gf.add(acc, gf.mul(a[r * m + k], b[k * m + c]));
            }
            out[r * m + c] = acc;
        }
    }
    out
}

fn identity_matrix(m: usize) -> Vec<u8> {
    let mut out = vec![0u8; m * m];
    for i in 0..m {
        out[i * m + i] = 1;
    }
    out
}

/// Breadth-first closure size under right multiplication by the generators,
/// stopping early once `bound` is exceeded.
fn matrix_closure_size(gf: &Gf, m: usize, generators: &[Vec<u8>], bound: u128) -> u128 {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut queue: Vec<Vec<u8>> = vec![identity_matrix(m)];
    seen.insert(queue[0].clone());
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in generators {
            let next = mat_mul(gf, m, &current, g);
            if seen.insert(next.clone()) {
                queue.push(next);
                if seen.len() as u128 > bound {
                    return seen.len() as u128;
                }
            }
        }
    }
    seen.len() as u128
}

/// Transvection `I + E_{0,1}`.
fn transvection(m: usize) -> Vec<u8> {
    let mut t = identity_matrix(m);
    t[1] = 1;
    t
}

/// Companion matrix of the least primitive polynomial of degree `m` over
/// `F(q)` (a Singer element of order `q^m - 1`).
fn singer_cycle(gf: &Gf, m: usize) -> Vec<u8> {
    let coeffs = least_primitive_poly(gf, m);
    let mut c = vec![0u8; m * m];
    for i in 0..m - 1 {
        c[i * m + i + 1] = 1;
    }
    for (j, &coeff) in coeffs.iter().enumerate() {
        c[(m - 1) * m + j] = gf.neg(coeff);
    }
    c
}

/// Non-leading coefficients of the least monic primitive polynomial of
/// degree `m` over `F(q)`, by ascending little-endian coefficient encoding.
fn least_primitive_poly(gf: &Gf, m: usize) -> Vec<u8> {
    let q = gf.q();
    let group = crate::ring::checked_pow_u128(q as u128, m).expect("desk scale") - 1;
    let prime_divisors = prime_factors(group);
    let total = crate::ring::pow_usize(q, m);
    for code in 0..total {
        let mut coeffs = vec![0u8; m];
        let mut rem = code;
        for c in coeffs.iter_mut() {
            *c = (rem % q) as u8;
            rem /= q;
        }
        if coeffs[0] == 0 {
            continue; // x divides f
        }
        if poly_x_order_is(gf, &coeffs, group, &prime_divisors) {
            return coeffs;
        }
    }
    unreachable!("a primitive polynomial of degree {m} over F({q}) exists");
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Does `x` have multiplicative order exactly `group` modulo the monic
/// polynomial with the given non-leading coefficients?
fn poly_x_order_is(gf: &Gf, coeffs: &[u8], group: u128, prime_divisors: &[u128]) -> bool {
    let m = coeffs.len();
    let one = {
        let mut v = vec![0u8; m];
        v[0] = 1;
        v
    };
    let x = {
        let mut v = vec![0u8; m];
        if m == 1 {
            // x reduces to -c_0 in the degree-1 quotient
            v[0] = gf.neg(coeffs[0]);
        } else {
            v[1] = 1;
        }
        v
    };
    if poly_pow_mod(gf, &x, group, coeffs) != one {
        return false;
    }
    prime_divisors
        .iter()
        .all(|&p| poly_pow_mod(gf, &x, group / p, coeffs) != one)
}

fn poly_mul_mod(gf: &Gf, a: &[u8], b: &[u8], coeffs: &[u8]) -> Vec<u8> {
    let m = coeffs.len();
    let mut prod = vec![0u8; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = gf.add(prod[i + j], gf.mul(x, y));
        }
    }
    for d in (m..2 * m - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..m {
            let sub = gf.mul(c, coeffs[i]);
            prod[d - m + i] = gf.add(prod[d - m + i], gf.neg(sub));
        }
    }
    prod.truncate(m);
    prod
}

fn poly_pow_mod(gf: &Gf, base: &[u8], mut exp: u128, coeffs: &[u8]) -> Vec<u8> {
    let m = coeffs.len();
    let mut result = vec![0u8; m];
    result[0] = 1;
    let mut acc = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mul_mod(gf, &result, &acc, coeffs);
        }
        acc = poly_mul_mod(gf, &acc, &acc, coeffs);
        exp >>= 1;
    }
    result
}

/// Orbit partition of parallelisms under the subspace action: connected
/// components under the generator permutations. `spreads` must be the
/// complete spread list and `parallelisms` closed under the action.
pub fn classify_orbits(
    spreads: &[Spread],
    action: &GlAction,
    parallelisms: &[Parallelism],
) -> Result<Vec<Vec<u32>>, GrassmannError> {
    let spread_index: BTreeMap<&[u32], u32> = spreads
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.as_slice(), i as u32))
        .collect();
    let spread_perms: Vec<Vec<u32>> = action
        .generator_perms
        .iter()
        .map(|perm| {
            spreads
                .iter()
                .map(|s| {
                    let mut image: Vec<u32> =
                        s.members.iter().map(|&m| perm[m as usize]).collect();
                    image.sort_unstable();
                    spread_index
                        .get(image.as_slice())
                        .copied()
                        .ok_or(GrassmannError::ActionNotClosed)
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let par_index: BTreeMap<&[u32], u32> = parallelisms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.spreads.as_slice(), i as u32))
        .collect();
    let mut orbit_of = vec![usize::MAX; parallelisms.len()];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for start in 0..parallelisms.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = vec![start as u32];
        orbit_of[start] = orbit_id;
        let mut head = 0;
        while head < members.len() {
            let current = members[head] as usize;
            head += 1;
            for perm in &spread_perms {
                let mut image: Vec<u32> = parallelisms[current]
                    .spreads
                    .iter()
                    .map(|&s| perm[s as usize])
                    .collect();
                image.sort_unstable();
                let target = *par_index
                    .get(image.as_slice())
                    .ok_or(GrassmannError::ActionNotClosed)? as usize;
                if orbit_of[target] == usize::MAX {
                    orbit_of[target] = orbit_id;
                    members.push(target as u32);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(orbits)
}

/// How the three pair-cliques of a spread triple meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    /// Any two of the three cliques share exactly one vertex.
    CommonVertex,
    /// The three cliques are pairwise disjoint.
    Disjoint,
    Irregular,
}

#[derive(Clone, Debug)]
pub struct PairAnalysis {
    pub pair: (usize, usize),
    /// Size of the largest clique meeting both spreads.
    pub clique_size: usize,
    /// The largest mixed cliques, as global subspace ids. The two spreads
    /// themselves are maximal cliques of the union and are not counted.
    pub cliques: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct TripleAnalysis {
    pub triple: (usize, usize, usize),
    pub kind: TripleKind,
}

#[derive(Clone, Debug)]
pub struct FanoCheck {
    /// Points are the spreads of the parallelism.
    pub points: usize,
    /// Lines are the disjoint-kind triples.
    pub lines: Vec<[usize; 3]>,
    pub is_projective_plane: bool,
}

#[derive(Clone, Debug)]
pub struct ParallelismAnalysis {
    pub pairs: Vec<PairAnalysis>,
    pub triples: Vec<TripleAnalysis>,
    pub fano: FanoCheck,
}

/// Pair and triple clique structure of a parallelism given as spread member
/// lists, plus the incidence check that the disjoint-kind triples form a
/// projective plane over the spreads.
pub fn analyze_parallelism(
    grass: &Grassmannian,
    graph: &Graph,
    spreads: &[Vec<u32>],
) -> Result<ParallelismAnalysis, GrassmannError> {
    grass
        .validate_parallelism(spreads)
        .map_err(GrassmannError::InvalidParallelism)?;
    let s = spreads.len();
    let mut pairs = Vec::new();
    let mut pair_clique: BTreeMap<(usize, usize), Option<Vec<u32>>> = BTreeMap::new();
    for i in 0..s {
        for j in i + 1..s {
            let mut verts: Vec<u32> = spreads[i]
                .iter()
                .chain(spreads[j].iter())
                .copied()
                .collect();
            verts.sort_unstable();
            let induced = graph.induced(&verts);
            // cliques meeting both spreads; the spreads themselves are the
            // maximal 5-cliques of the union and carry no pair information
            let mixed: Vec<Vec<u32>> = crate::graph::maximal_cliques(&induced)
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|v| verts[v as usize])
                        .collect::<Vec<u32>>()
                })
                .filter(|c| {
                    c.iter().any(|v| spreads[i].contains(v))
                        && c.iter().any(|v| spreads[j].contains(v))
                })
                .collect();
            let omega = mixed.iter().map(Vec::len).max().unwrap_or(0);
            let cliques: Vec<Vec<u32>> = mixed
                .into_iter()
                .filter(|c| c.len() == omega)
                .collect();
            pair_clique.insert((i, j), (cliques.len() == 1).then(|| cliques[0].clone()));
            pairs.push(PairAnalysis {
                pair: (i, j),
                clique_size: omega,
                cliques,
            });
        }
    }
    let mut triples = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            for k in j + 1..s {
                let kind = match (
                    &pair_clique[&(i, j)],
                    &pair_clique[&(i, k)],
                    &pair_clique[&(j, k)],
                ) {
                    (Some(cij), Some(cik), Some(cjk)) => {
                        let x = sorted_intersection_len(cij, cik);
                        let y = sorted_intersection_len(cij, cjk);
                        let z = sorted_intersection_len(cik, cjk);
                        if x == 1 && y == 1 && z == 1 {
                            TripleKind::CommonVertex
                        } else if x == 0 && y == 0 && z == 0 {
                            TripleKind::Disjoint
                        } else {
                            TripleKind::Irregular
                        }
                    }
                    _ => TripleKind::Irregular,
                };
                triples.push(TripleAnalysis {
                    triple: (i, j, k),
                    kind,
                });
            }
        }
    }
    let lines: Vec<[usize; 3]> = triples
        .iter()
        .filter(|t| t.kind == TripleKind::Disjoint)
        .map(|t| [t.triple.0, t.triple.1, t.triple.2])
        .collect();
    let mut is_plane = s == 7 && lines.len() == 7;
    if is_plane {
        // every pair of points on exactly one line
        let mut count = vec![0u8; s * s];
        for l in &lines {
            for a in 0..3 {
                for b in a + 1..3 {
                    count[l[a] * s + l[b]] += 1;
                }
            }
        }
        for i in 0..s {
            for j in i + 1..s {
                if count[i * s + j] != 1 {
                    is_plane = false;
                }
            }
        }
    }
    Ok(ParallelismAnalysis {
        pairs,
        triples,
        fano: FanoCheck {
            points: s,
            lines,
            is_projective_plane: is_plane,
        },
    })
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let mut count = 0;
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => x += 1,
            core::cmp::Ordering::Greater => y += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Parse a parallelism fixture: one block per spread introduced by
/// `#spread`, each member written as `n` lines of `2n` digits. Rows are
/// canonicalized to reduced row-echelon form; returns spreads as sorted
/// subspace-id lists.
pub fn parse_parallelism_fixture(
    grass: &Grassmannian,
    text: &str,
) -> Result<Vec<Vec<u32>>, GrassmannError> {
    let mut spreads: Vec<Vec<u32>> = Vec::new();
    let mut pending: Vec<Vec<u8>> = Vec::new();
    let mut pending_line = 0usize;
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if rest == "spread" || rest.starts_with("spread ") {
                if !pending.is_empty() {
                    return Err(GrassmannError::Fixture {
                        line: lineno,
                        msg: format!(
                            "incomplete member: {} of {} basis rows",
                            pending.len(),
                            grass.n
                        ),
                    });
                }
                spreads.push(Vec::new());
                continue;
            }
            return Err(GrassmannError::Fixture {
                line: lineno,
                msg: "only '#spread' directives are recognized".into(),
            });
        }
        if line.len() != grass.ambient {
            return Err(GrassmannError::Fixture {
                line: lineno,
                msg: format!("expected {} digits, found {}", grass.ambient, line.len()),
            });
        }
        let mut row = Vec::with_capacity(grass.ambient);
        for ch in line.chars() {
            let d = ch.to_digit(36).filter(|&d| (d as usize) < grass.q);
            match d {
                Some(d) => row.push(d as u8),
                None => {
                    return Err(GrassmannError::Fixture {
                        line: lineno,
                        msg: format!("invalid digit '{ch}' for q = {}", grass.q),
                    })
                }
            }
        }
        if pending.is_empty() {
            pending_line = lineno;
        }
        pending.push(row);
        if pending.len() == grass.n {
            let raw = core::mem::take(&mut pending);
            let sub = Subspace::from_rows(&grass.gf, grass.ambient, &raw).ok_or(
                GrassmannError::Fixture {
                    line: pending_line,
                    msg: "basis rows are linearly dependent".into(),
                },
            )?;
            let id = grass.subspace_id(&sub).expect("canonical list is complete");
            match spreads.last_mut() {
                Some(current) => current.push(id),
                None => {
                    return Err(GrassmannError::Fixture {
                        line: pending_line,
                        msg: "subspace before the first '#spread'".into(),
                    })
                }
            }
        }
    }
    if !pending.is_empty() {
        return Err(GrassmannError::Fixture {
            line: pending_line,
            msg: "file ends inside a member block".into(),
        });
    }
    for s in &mut spreads {
        s.sort_unstable();
    }
    Ok(spreads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pline::ProjectiveLine;
    use crate::ring::make_ring;

    #[test]
    fn gaussian_binomial_examples() {
        for q in [2, 3, 4, 5] {
            assert_eq!(gaussian_binomial(2, 1, q), (q + 1) as u128);
        }
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
    }

    #[test]
    fn subspace_enumeration_counts() {
        assert_eq!(Grassmannian::new(1, 2).unwrap().len(), 3);
        assert_eq!(Grassmannian::new(2, 2).unwrap().len(), 35);
        assert_eq!(Grassmannian::new(2, 3).unwrap().len(), 130);
        // canonical forms are unique
        let g = Grassmannian::new(2, 2).unwrap();
        let mut rows: Vec<_> = g.subspaces.iter().map(|s| s.rows.clone()).collect();
        rows.sort();
        rows.dedup();
        assert_eq!(rows.len(), 35);
    }

    #[test]
    fn complementarity_and_adjacency() {
        let g = Grassmannian::new(2, 2).unwrap();
        let gf = &g.gf;
        let span = |rows: &[[u8; 4]]| {
            let raw: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
            Subspace::from_rows(gf, 4, &raw).unwrap()
        };
        let e12 = span(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
        let e34 = span(&[[0, 0, 1, 0], [0, 0, 0, 1]]);
        let mixed = span(&[[1, 0, 0, 0], [0, 0, 1, 0]]);
        assert!(g.is_complementary(&e12, &e34).unwrap());
        assert!(!g.is_complementary(&e12, &e12).unwrap());
        assert!(!g.is_complementary(&e12, &mixed).unwrap()); // share e1
        assert!(!g.is_adjacent(&e12, &e12).unwrap());
        assert!(!g.is_adjacent(&e12, &e34).unwrap()); // dim sum 4, not 3
        assert!(g.is_adjacent(&e12, &mixed).unwrap()); // share a line
    }

    #[test]
    fn distant_graph_parameters() {
        let k4 = Grassmannian::new(1, 3).unwrap().distant_graph();
        assert_eq!(k4.n(), 4);
        assert_eq!(k4.edge_count(), 6);

        let g = Grassmannian::new(2, 2).unwrap().distant_graph();
        assert_eq!(g.n(), 35);
        assert_eq!(g.regular_degree(), Some(16));
    }

    #[test]
    fn point_correspondence_is_an_isomorphism() {
        let ring = make_ring("M2(GF(2))").unwrap();
        let line = ProjectiveLine::new(&ring);
        let grass = Grassmannian::new(2, 2).unwrap();
        let ids: Vec<u32> = line
            .points()
            .iter()
            .map(|p| {
                let s = grass.point_to_subspace(&ring, p).unwrap();
                grass.subspace_id(&s).unwrap()
            })
            .collect();
        // bijective
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 35);
        // identity point maps to the row space of (e1, e2)
        let id_point = line.point_of_pair(ring.one(), ring.zero()).unwrap();
        let s = grass
            .point_to_subspace(&ring, line.point(id_point))
            .unwrap();
        assert_eq!(s.rows, vec![1, 0, 0, 0, 0, 1, 0, 0]);
        // adjacency preserved both ways across all pairs
        let gg = grass.distant_graph();
        for i in 0..line.len() {
            for j in i + 1..line.len() {
                assert_eq!(
                    line.is_distant(i, j),
                    gg.has_edge(ids[i] as usize, ids[j] as usize)
                );
            }
        }
    }

    #[test]
    fn point_correspondence_rejects_non_matrix_rings() {
        let ring = make_ring("Z4").unwrap();
        let line = ProjectiveLine::new(&ring);
        let grass = Grassmannian::new(2, 2).unwrap();
        assert!(matches!(
            grass.point_to_subspace(&ring, line.point(0)),
            Err(GrassmannError::NotMatrixRing(_))
        ));
    }

    #[test]
    fn single_spread_on_a_line() {
        for q in [2, 3, 4] {
            let g = Grassmannian::new(1, q).unwrap();
            let spreads = g.enumerate_spreads(1 << 20).unwrap();
            assert_eq!(spreads.len(), 1, "q = {q}");
            assert_eq!(spreads[0].members.len(), q + 1);
        }
    }

    #[test]
    fn spread_census_2_2() {
        let g = Grassmannian::new(2, 2).unwrap();
        let spreads = g.enumerate_spreads(1 << 24).unwrap();
        assert_eq!(spreads.len(), 56);
        for s in &spreads {
            assert_eq!(s.members.len(), 5);
            g.validate_spread(&s.members).unwrap();
        }
    }

    #[test]
    fn parallelism_census_2_2() {
        let g = Grassmannian::new(2, 2).unwrap();
        let spreads = g.enumerate_spreads(1 << 24).unwrap();
        let pars = g
            .enumerate_parallelisms(&spreads, 1 << 24, None)
            .unwrap();
        assert_eq!(pars.len(), 240);
        assert!(pars.iter().all(|p| p.spreads.len() == 7));
    }

    #[test]
    fn trivial_parallelism_on_a_line() {
        let g = Grassmannian::new(1, 5).unwrap();
        let spreads = g.enumerate_spreads(1 << 20).unwrap();
        let pars = g.enumerate_parallelisms(&spreads, 1 << 20, None).unwrap();
        assert_eq!(pars.len(), 1);
    }

    #[test]
    fn gl_action_orders() {
        assert_eq!(gl_order(4, 2), 20160);
        let g = Grassmannian::new(1, 2).unwrap();
        let action = g.gl_action().unwrap();
        assert_eq!(action.order, 6);
        let g = Grassmannian::new(1, 3).unwrap();
        let action = g.gl_action().unwrap();
        assert_eq!(action.order, 48);
        let g = Grassmannian::new(2, 2).unwrap();
        let action = g.gl_action().unwrap();
        assert_eq!(action.order, 20160);
    }

    #[test]
    fn group_cap_enforced() {
        let g = Grassmannian::new(2, 3).unwrap();
        assert!(matches!(
            g.gl_action(),
            Err(GrassmannError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn fixture_parsing_round_trip() {
        let g = Grassmannian::new(1, 2).unwrap();
        let text = "#spread one\n10\n01\n11\n";
        let spreads = parse_parallelism_fixture(&g, text).unwrap();
        assert_eq!(spreads.len(), 1);
        assert_eq!(spreads[0].len(), 3);
        g.validate_parallelism(&spreads).unwrap();
    }

    #[test]
    fn fixture_errors_carry_line_numbers() {
        let g = Grassmannian::new(2, 2).unwrap();
        let bad_digit = "#spread\n0010\n0002\n";
        match parse_parallelism_fixture(&g, bad_digit) {
            Err(GrassmannError::Fixture { line: 3, .. }) => {}
            other => panic!("expected line-3 error, got {other:?}"),
        }
        let dependent = "#spread\n0010\n0010\n";
        match parse_parallelism_fixture(&g, dependent) {
            Err(GrassmannError::Fixture { line: 2, .. }) => {}
            other => panic!("expected line-2 error, got {other:?}"),
        }
        let incomplete = "#spread\n0010\n";
        assert!(parse_parallelism_fixture(&g, incomplete).is_err());
        let no_header = "0010\n0001\n";
        assert!(parse_parallelism_fixture(&g, no_header).is_err());
    }
}
