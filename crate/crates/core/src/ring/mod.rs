//! Finite associative rings with unity.
//!
//! Elements are dense indices `0..size`. Rings of size at most
//! [`TABLE_MAX`] carry materialized Cayley tables; larger rings evaluate
//! their structured arithmetic (matrix entries, polynomial coefficients,
//! product components) on demand.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

mod parse;

pub use parse::parse_ring_expr;

/// Ring elements are indices into the element universe `0..size`.
pub type Elem = usize;

/// Largest ring size for which Cayley tables are materialized.
pub const TABLE_MAX: usize = 256;

/// Default cap on the size of a constructed ring.
pub const DEFAULT_SIZE_CAP: usize = 65536;

/// Errors from ring construction and ideal arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    /// Malformed ring expression; `pos` is a byte offset into the input.
    Parse { pos: usize, msg: String },
    /// Well-formed but unsupported construction (e.g. `GF(6)`).
    Unsupported(String),
    /// The requested ring would exceed the size cap.
    CapExceeded { size: u128, cap: usize },
    /// The given element set is not a two-sided ideal.
    IdealNotTwoSided,
    /// Factor extraction failed; the ring is not semisimple.
    NotSemisimple(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            RingError::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            RingError::CapExceeded { size, cap } => {
                write!(f, "ring size {size} exceeds cap {cap}")
            }
            RingError::IdealNotTwoSided => write!(f, "element set is not a two-sided ideal"),
            RingError::NotSemisimple(msg) => write!(f, "not semisimple: {msg}"),
        }
    }
}

impl core::error::Error for RingError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixShape {
    Full,
    Lower,
    Upper,
}

/// Structural constructor of a ring; retained even when tables are built so
/// that element indices stay decodable (matrix entries, product components).
#[derive(Clone, Debug)]
pub enum RingKind {
    /// Integers mod `n`.
    Modular { n: usize },
    /// `GF(p^k)` as polynomials over `F(p)` modulo `irred`; element index is
    /// the little-endian base-`p` encoding of the coefficient vector.
    /// `irred` holds the non-leading coefficients `c_0..c_{k-1}` of the monic
    /// reduction polynomial `x^k + c_{k-1} x^{k-1} + ... + c_0`.
    GaloisField { p: usize, k: usize, irred: Vec<usize> },
    /// `n x n` matrices over `base` (all, lower triangular, or upper
    /// triangular). Free entries are encoded row-major, first entry most
    /// significant, so index order is lexicographic in the entry sequence.
    Matrix {
        base: Box<FiniteRing>,
        n: usize,
        shape: MatrixShape,
    },
    /// `base[x]/(x^k)`: truncated polynomials, little-endian coefficients.
    TruncPoly { base: Box<FiniteRing>, k: usize },
    /// Direct product, first factor most significant.
    Product { factors: Vec<FiniteRing> },
    /// Quotient by a two-sided ideal. `reps` lists the canonical (minimal)
    /// coset representatives in ascending order; `to_coset` maps every base
    /// element to its coset index.
    Quotient {
        base: Box<FiniteRing>,
        reps: Vec<Elem>,
        to_coset: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// A finite associative ring with unity over the element universe `0..size`.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    size: usize,
    zero: Elem,
    one: Elem,
    label: String,
    kind: RingKind,
    tables: Option<Tables>,
}

impl FiniteRing {
    fn new(size: usize, one: Elem, label: String, kind: RingKind) -> Self {
        let mut ring = FiniteRing {
            size,
            zero: 0,
            one,
            label,
            kind,
            tables: None,
        };
        if size <= TABLE_MAX {
            ring.materialize_tables();
        }
        ring
    }

    pub(crate) fn modular(n: usize) -> Self {
        FiniteRing::new(n, 1 % n, format!("Z{n}"), RingKind::Modular { n })
    }

    pub(crate) fn galois_field(p: usize, k: usize) -> Self {
        let irred = least_irreducible(p, k);
        let size = pow_usize(p, k);
        let label = if k == 1 {
            format!("GF({p})")
        } else {
            format!("GF({p}^{k})")
        };
        FiniteRing::new(size, 1, label, RingKind::GaloisField { p, k, irred })
    }

    pub(crate) fn matrix(base: FiniteRing, n: usize, shape: MatrixShape) -> Self {
        let free = free_positions(n, &shape).len();
        let size = pow_usize(base.size, free);
        let tag = match shape {
            MatrixShape::Full => "M",
            MatrixShape::Lower => "LT",
            MatrixShape::Upper => "UT",
        };
        let label = format!("{tag}{n}({})", base.label);
        let mut one = 0;
        let kind = RingKind::Matrix {
            base: Box::new(base),
            n,
            shape,
        };
        // identity matrix: diagonal entries are base.one
        if let RingKind::Matrix { base, n, shape } = &kind {
            let mut entries = vec![base.zero; n * n];
            for i in 0..*n {
                entries[i * n + i] = base.one;
            }
            one = encode_matrix(&entries, base.size, *n, shape);
        }
        FiniteRing::new(size, one, label, kind)
    }

    pub(crate) fn trunc_poly(base: FiniteRing, k: usize) -> Self {
        let size = pow_usize(base.size, k);
        let label = format!("Trunc({},{k})", base.label);
        let one = base.one; // constant coefficient is least significant
        FiniteRing::new(
            size,
            one,
            label,
            RingKind::TruncPoly {
                base: Box::new(base),
                k,
            },
        )
    }

    pub(crate) fn product(factors: Vec<FiniteRing>) -> Self {
        let size = factors.iter().map(|f| f.size).product();
        let label = factors
            .iter()
            .map(|f| f.label.clone())
            .collect::<Vec<_>>()
            .join("x");
        let mut one = 0;
        for f in &factors {
            one = one * f.size + f.one;
        }
        FiniteRing::new(size, one, label, RingKind::Product { factors })
    }

    fn materialize_tables(&mut self) {
        let n = self.size;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        for a in 0..n {
            neg[a] = self.neg_structural(a) as u16;
            for b in 0..n {
                add[a * n + b] = self.add_structural(a, b) as u16;
                mul[a * n + b] = self.mul_structural(a, b) as u16;
            }
        }
        self.tables = Some(Tables { add, mul, neg });
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// For full matrix rings, the matrix degree and the base ring.
    pub fn matrix_structure(&self) -> Option<(usize, &FiniteRing)> {
        match &self.kind {
            RingKind::Matrix {
                base,
                n,
                shape: MatrixShape::Full,
            } => Some((*n, base)),
            _ => None,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[a * self.size + b] as Elem,
            None => self.add_structural(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[a * self.size + b] as Elem,
            None => self.mul_structural(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a] as Elem,
            None => self.neg_structural(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn add_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            RingKind::Modular { n } => (a + b) % n,
            RingKind::GaloisField { p, k, .. } => {
                let mut out = 0;
                let mut pw = 1;
                let (mut x, mut y) = (a, b);
                for _ in 0..*k {
                    out += (x % p + y % p) % p * pw;
                    x /= p;
                    y /= p;
                    pw *= p;
                }
                out
            }
            RingKind::Matrix { base, n, shape } => {
                let ea = decode_matrix(a, base.size, *n, shape);
                let eb = decode_matrix(b, base.size, *n, shape);
                let sum: Vec<Elem> = ea
                    .iter()
                    .zip(&eb)
                    .map(|(&x, &y)| base.add(x, y))
                    .collect();
                encode_matrix(&sum, base.size, *n, shape)
            }
            RingKind::TruncPoly { base, k } => {
                let ca = decode_digits_lsb(a, base.size, *k);
                let cb = decode_digits_lsb(b, base.size, *k);
                let sum: Vec<Elem> = ca
                    .iter()
                    .zip(&cb)
                    .map(|(&x, &y)| base.add(x, y))
                    .collect();
                encode_digits_lsb(&sum, base.size)
            }
            RingKind::Product { factors } => {
                let ca = decode_mixed_radix(a, factors);
                let cb = decode_mixed_radix(b, factors);
                let sum: Vec<Elem> = factors
                    .iter()
                    .zip(ca.iter().zip(&cb))
                    .map(|(f, (&x, &y))| f.add(x, y))
                    .collect();
                encode_mixed_radix(&sum, factors)
            }
            RingKind::Quotient {
                base,
                reps,
                to_coset,
            } => to_coset[base.add(reps[a], reps[b])],
        }
    }

    fn mul_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            RingKind::Modular { n } => (a * b) % n,
            RingKind::GaloisField { p, k, irred } => {
                let ca = decode_digits_lsb(a, *p, *k);
                let cb = decode_digits_lsb(b, *p, *k);
                // convolution, then reduce with x^k = -sum irred[i] x^i
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, &x) in ca.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (*k..2 * k - 1).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for i in 0..*k {
                        let sub = c * irred[i] % p;
                        prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
                    }
                }
                encode_digits_lsb(&prod[..*k], *p)
            }
            RingKind::Matrix { base, n, shape } => {
                let ea = decode_matrix(a, base.size, *n, shape);
                let eb = decode_matrix(b, base.size, *n, shape);
                let n = *n;
                let mut out = vec![base.zero; n * n];
                for r in 0..n {
                    for c in 0..n {
                        let mut acc = base.zero;
                        for t in 0..n {
                            acc = base.add(acc, base.mul(ea[r * n + t], eb[t * n + c]));
                        }
                        out[r * n + c] = acc;
                    }
                }
                encode_matrix(&out, base.size, n, shape)
            }
            RingKind::TruncPoly { base, k } => {
                let ca = decode_digits_lsb(a, base.size, *k);
                let cb = decode_digits_lsb(b, base.size, *k);
                let mut out = vec![base.zero; *k];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        if i + j < *k {
                            out[i + j] = base.add(out[i + j], base.mul(x, y));
                        }
                    }
                }
                encode_digits_lsb(&out, base.size)
            }
            RingKind::Product { factors } => {
                let ca = decode_mixed_radix(a, factors);
                let cb = decode_mixed_radix(b, factors);
                let prod: Vec<Elem> = factors
                    .iter()
                    .zip(ca.iter().zip(&cb))
                    .map(|(f, (&x, &y))| f.mul(x, y))
                    .collect();
                encode_mixed_radix(&prod, factors)
            }
            RingKind::Quotient {
                base,
                reps,
                to_coset,
            } => to_coset[base.mul(reps[a], reps[b])],
        }
    }

    fn neg_structural(&self, a: Elem) -> Elem {
        match &self.kind {
            RingKind::Modular { n } => (n - a) % n,
            RingKind::GaloisField { p, k, .. } => {
                let ca = decode_digits_lsb(a, *p, *k);
                let neg: Vec<Elem> = ca.iter().map(|&x| (p - x) % p).collect();
                encode_digits_lsb(&neg, *p)
            }
            RingKind::Matrix { base, n, shape } => {
                let ea = decode_matrix(a, base.size, *n, shape);
                let neg: Vec<Elem> = ea.iter().map(|&x| base.neg(x)).collect();
                encode_matrix(&neg, base.size, *n, shape)
            }
            RingKind::TruncPoly { base, k } => {
                let ca = decode_digits_lsb(a, base.size, *k);
                let neg: Vec<Elem> = ca.iter().map(|&x| base.neg(x)).collect();
                encode_digits_lsb(&neg, base.size)
            }
            RingKind::Product { factors } => {
                let ca = decode_mixed_radix(a, factors);
                let neg: Vec<Elem> = factors
                    .iter()
                    .zip(&ca)
                    .map(|(f, &x)| f.neg(x))
                    .collect();
                encode_mixed_radix(&neg, factors)
            }
            RingKind::Quotient {
                base,
                reps,
                to_coset,
            } => to_coset[base.neg(reps[a])],
        }
    }

    /// Two-sided inverse of `a`, if any. Scans for a right factor `b` with
    /// `ab = 1`; for finite rings a one-sided inverse is automatically
    /// two-sided, which is asserted in debug builds.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        for b in 0..self.size {
            if self.mul(a, b) == self.one {
                debug_assert_eq!(self.mul(b, a), self.one);
                return Some(b);
            }
        }
        None
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// True when every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        (0..self.size).all(|a| a == self.zero || self.is_unit(a))
    }
}

/// Full-matrix entry decoding: `n*n` entries row-major from a full-ring
/// element index, regardless of shape (non-free entries are zero).
pub fn matrix_entries(ring: &FiniteRing, a: Elem) -> Option<Vec<Elem>> {
    match ring.kind() {
        RingKind::Matrix { base, n, shape } => Some(decode_matrix(a, base.size, *n, shape)),
        _ => None,
    }
}

fn free_positions(n: usize, shape: &MatrixShape) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let free = match shape {
                MatrixShape::Full => true,
                MatrixShape::Lower => r >= c,
                MatrixShape::Upper => r <= c,
            };
            if free {
                out.push((r, c));
            }
        }
    }
    out
}

/// Decode a triangular/full matrix element into a full `n*n` entry vector.
fn decode_matrix(idx: Elem, base_size: usize, n: usize, shape: &MatrixShape) -> Vec<Elem> {
    let free = free_positions(n, shape);
    let mut entries = vec![0; n * n];
    let mut rem = idx;
    let mut weight = pow_usize(base_size, free.len());
    for &(r, c) in &free {
        weight /= base_size;
        entries[r * n + c] = rem / weight;
        rem %= weight;
    }
    entries
}

fn encode_matrix(entries: &[Elem], base_size: usize, n: usize, shape: &MatrixShape) -> Elem {
    let free = free_positions(n, shape);
    let mut idx = 0;
    for &(r, c) in &free {
        idx = idx * base_size + entries[r * n + c];
    }
    for r in 0..n {
        for c in 0..n {
            let is_free = match shape {
                MatrixShape::Full => true,
                MatrixShape::Lower => r >= c,
                MatrixShape::Upper => r <= c,
            };
            debug_assert!(is_free || entries[r * n + c] == 0);
        }
    }
    idx
}

fn decode_digits_lsb(idx: Elem, base: usize, count: usize) -> Vec<Elem> {
    let mut out = vec![0; count];
    let mut rem = idx;
    for d in out.iter_mut() {
        *d = rem % base;
        rem /= base;
    }
    out
}

fn encode_digits_lsb(digits: &[Elem], base: usize) -> Elem {
    let mut idx = 0;
    for &d in digits.iter().rev() {
        idx = idx * base + d;
    }
    idx
}

fn decode_mixed_radix(idx: Elem, factors: &[FiniteRing]) -> Vec<Elem> {
    let mut out = vec![0; factors.len()];
    let mut rem = idx;
    for (i, f) in factors.iter().enumerate().rev() {
        out[i] = rem % f.size;
        rem /= f.size;
    }
    out
}

fn encode_mixed_radix(components: &[Elem], factors: &[FiniteRing]) -> Elem {
    let mut idx = 0;
    for (c, f) in components.iter().zip(factors) {
        idx = idx * f.size + c;
    }
    idx
}

pub(crate) fn pow_usize(base: usize, exp: usize) -> usize {
    let mut out = 1usize;
    for _ in 0..exp {
        out *= base;
    }
    out
}

pub(crate) fn checked_pow_u128(base: u128, exp: usize) -> Option<u128> {
    let mut out = 1u128;
    for _ in 0..exp {
        out = out.checked_mul(base)?;
    }
    Some(out)
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `n = p^k` with `p` prime, if such a decomposition exists.
pub(crate) fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

/// Non-leading coefficients of the least monic irreducible of degree `k`
/// over `F(p)`, by ascending little-endian encoding of `c_0..c_{k-1}`.
fn least_irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        // x is irreducible; reduction is never used for k = 1
        return vec![0];
    }
    for m in 0..pow_usize(p, k) {
        let coeffs = decode_digits_lsb(m, p, k);
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree {k} over F({p}) exists");
}

/// Irreducibility of monic `x^k + sum coeffs[i] x^i` over `F(p)` by trial
/// division with every monic polynomial of degree `1..=k/2`.
fn poly_is_irreducible(coeffs: &[usize], p: usize) -> bool {
    let k = coeffs.len();
    let mut full = coeffs.to_vec();
    full.push(1);
    for d in 1..=k / 2 {
        for m in 0..pow_usize(p, d) {
            let mut divisor = decode_digits_lsb(m, p, d);
            divisor.push(1);
            if poly_rem_is_zero(&full, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[usize], den: &[usize], p: usize) -> bool {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for i in 0..=dd {
                let sub = lead * den[i] % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Parse a ring expression and construct the ring, enforcing
/// [`DEFAULT_SIZE_CAP`].
pub fn make_ring(spec: &str) -> Result<FiniteRing, RingError> {
    make_ring_with_cap(spec, DEFAULT_SIZE_CAP)
}

pub fn make_ring_with_cap(spec: &str, cap: usize) -> Result<FiniteRing, RingError> {
    parse::parse_ring_expr(spec, cap)
}

/// All units of the ring, ascending.
pub fn units(ring: &FiniteRing) -> Vec<Elem> {
    (0..ring.size()).filter(|&a| ring.is_unit(a)).collect()
}

/// Per-element unit flags.
pub fn unit_flags(ring: &FiniteRing) -> Vec<bool> {
    (0..ring.size()).map(|a| ring.is_unit(a)).collect()
}

/// A two-sided ideal, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    members: Vec<Elem>,
}

impl Ideal {
    pub fn from_members(mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        Ideal { members }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Checks the full two-sided ideal axioms against `ring`.
    pub fn is_two_sided(&self, ring: &FiniteRing) -> bool {
        if !self.contains(ring.zero()) {
            return false;
        }
        for &m in &self.members {
            if !self.contains(ring.neg(m)) {
                return false;
            }
            for &m2 in &self.members {
                if !self.contains(ring.add(m, m2)) {
                    return false;
                }
            }
            for r in 0..ring.size() {
                if !self.contains(ring.mul(r, m)) || !self.contains(ring.mul(m, r)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Jacobson radical via quasi-regularity: `x` is in `J` exactly when
/// `1 - r*x` is a unit for every `r`.
pub fn jacobson_radical(ring: &FiniteRing) -> Ideal {
    let flags = unit_flags(ring);
    let one = ring.one();
    let mut members = Vec::new();
    'next: for x in 0..ring.size() {
        for r in 0..ring.size() {
            if !flags[ring.sub(one, ring.mul(r, x))] {
                continue 'next;
            }
        }
        members.push(x);
    }
    let ideal = Ideal { members };
    debug_assert!(ideal.is_two_sided(ring));
    ideal
}

/// A quotient ring together with the projection map from base elements to
/// quotient element indices.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: FiniteRing,
    pub projection: Vec<usize>,
}

/// Quotient of `ring` by a two-sided ideal. Cosets are represented by their
/// minimal member; coset indices follow representative order.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<QuotientRing, RingError> {
    if !ideal.is_two_sided(ring) {
        return Err(RingError::IdealNotTwoSided);
    }
    let n = ring.size();
    let mut rep_of = vec![usize::MAX; n];
    for x in 0..n {
        let mut rep = usize::MAX;
        for &m in ideal.members() {
            rep = rep.min(ring.add(x, m));
        }
        rep_of[x] = rep;
    }
    let mut reps: Vec<Elem> = (0..n).filter(|&x| rep_of[x] == x).collect();
    reps.sort_unstable();
    let mut to_coset = vec![usize::MAX; n];
    for (i, &r) in reps.iter().enumerate() {
        for x in 0..n {
            if rep_of[x] == r {
                to_coset[x] = i;
            }
        }
    }
    let one = to_coset[ring.one()];
    let label = format!("{}/I{}", ring.label(), ideal.len());
    let quotient = FiniteRing::new(
        reps.len(),
        one,
        label,
        RingKind::Quotient {
            base: Box::new(ring.clone()),
            reps,
            to_coset: to_coset.clone(),
        },
    );
    Ok(QuotientRing {
        ring: quotient,
        projection: to_coset,
    })
}

/// Artin-Wedderburn signature of a semisimple ring: the sorted multiset of
/// `(n, q)` with the ring isomorphic to the product of the `M_n(F(q))`.
///
/// Computed from primitive central idempotents; each factor `eRe` is a full
/// matrix ring whose center has `q` elements and whose size is `q^(n^2)`.
pub fn simple_factor_signature(ring: &FiniteRing) -> Result<Vec<(usize, usize)>, RingError> {
    let n = ring.size();
    let center: Vec<Elem> = (0..n)
        .filter(|&x| (0..n).all(|y| ring.mul(x, y) == ring.mul(y, x)))
        .collect();
    let idempotents: Vec<Elem> = center
        .iter()
        .copied()
        .filter(|&e| ring.mul(e, e) == e && e != ring.zero())
        .collect();
    let primitive: Vec<Elem> = idempotents
        .iter()
        .copied()
        .filter(|&e| {
            !idempotents
                .iter()
                .any(|&f| f != e && ring.mul(e, f) == f)
        })
        .collect();
    let mut signature = Vec::new();
    for &e in &primitive {
        let mut factor: Vec<Elem> = (0..n).map(|x| ring.mul(e, ring.mul(x, e))).collect();
        factor.sort_unstable();
        factor.dedup();
        let fsize = factor.len();
        let q = factor
            .iter()
            .filter(|&&x| factor.iter().all(|&y| ring.mul(x, y) == ring.mul(y, x)))
            .count();
        let mut deg = None;
        let mut power = 1usize;
        for m in 1..=fsize {
            // power = q^(m^2), grown incrementally
            for _ in 0..2 * m - 1 {
                power = match power.checked_mul(q) {
                    Some(v) => v,
                    None => break,
                };
            }
            if power == fsize {
                deg = Some(m);
                break;
            }
            if power > fsize {
                break;
            }
        }
        match deg {
            Some(m) => signature.push((m, q)),
            None => {
                return Err(RingError::NotSemisimple(format!(
                    "central factor of size {fsize} with center {q} is not a matrix ring over a field"
                )))
            }
        }
    }
    let total: u128 = signature
        .iter()
        .map(|&(m, q)| checked_pow_u128(q as u128, m * m).unwrap_or(u128::MAX))
        .product();
    if total != n as u128 {
        return Err(RingError::NotSemisimple(format!(
            "factor sizes multiply to {total}, ring has {n} elements"
        )));
    }
    signature.sort_unstable();
    Ok(signature)
}

fn check_identities(ring: &FiniteRing) -> Result<(), String> {
    let n = ring.size();
    if n == 0 {
        return Err("empty carrier".into());
    }
    if ring.one() == ring.zero() {
        return Err("1 = 0".into());
    }
    for a in 0..n {
        if ring.add(ring.zero(), a) != a || ring.add(a, ring.zero()) != a {
            return Err(format!("0 is not an additive identity at {a}"));
        }
        if ring.add(a, ring.neg(a)) != ring.zero() {
            return Err(format!("{a} + (-{a}) != 0"));
        }
        if ring.mul(ring.one(), a) != a || ring.mul(a, ring.one()) != a {
            return Err(format!("1 is not a multiplicative identity at {a}"));
        }
    }
    Ok(())
}

fn check_triple(ring: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Result<(), String> {
    if ring.add(a, b) != ring.add(b, a) {
        return Err(format!("addition not commutative at ({a},{b})"));
    }
    if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) {
        return Err(format!("addition not associative at ({a},{b},{c})"));
    }
    if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
        return Err(format!("multiplication not associative at ({a},{b},{c})"));
    }
    if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)) {
        return Err(format!("left distributivity fails at ({a},{b},{c})"));
    }
    if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)) {
        return Err(format!("right distributivity fails at ({a},{b},{c})"));
    }
    Ok(())
}

/// Exhaustive ring-axiom validation for sizes up to 4096; random sampling
/// with a fixed xorshift stream above that.
pub fn validate_ring_axioms(ring: &FiniteRing) -> Result<(), String> {
    if ring.size() <= 4096 {
        check_identities(ring)?;
        let n = ring.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check_triple(ring, a, b, c)?;
                }
            }
        }
        Ok(())
    } else {
        validate_ring_axioms_sampled(ring, 200_000)
    }
}

/// Identity axioms exhaustively, associativity/distributivity on `trials`
/// deterministically sampled triples.
pub fn validate_ring_axioms_sampled(ring: &FiniteRing, trials: u32) -> Result<(), String> {
    check_identities(ring)?;
    let n = ring.size() as u64;
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n) as usize
    };
    for _ in 0..trials {
        let (a, b, c) = (next(), next(), next());
        check_triple(ring, a, b, c)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_basics() {
        let r = make_ring("Z4").unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.label(), "Z4");
        assert_eq!(units(&r), vec![1, 3]);
        validate_ring_axioms(&r).unwrap();
    }

    #[test]
    fn gf4_is_a_field() {
        let r = make_ring("GF(4)").unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.label(), "GF(2^2)");
        assert_eq!(units(&r).len(), 3);
        assert!(r.is_field());
        validate_ring_axioms(&r).unwrap();
    }

    #[test]
    fn gf8_gf9_axioms() {
        for spec in ["GF(8)", "GF(9)", "GF(2^4)", "GF(25)"] {
            let r = make_ring(spec).unwrap();
            assert!(r.is_field(), "{spec}");
            validate_ring_axioms(&r).unwrap();
        }
    }

    #[test]
    fn m2_gf2_units() {
        let r = make_ring("M2(GF(2))").unwrap();
        assert_eq!(r.size(), 16);
        // |GL(2,2)| by exhaustive scan
        assert_eq!(units(&r).len(), 6);
        validate_ring_axioms(&r).unwrap();
    }

    #[test]
    fn ternions_size_and_radical() {
        let r = make_ring("LT2(GF(2))").unwrap();
        assert_eq!(r.size(), 8);
        let j = jacobson_radical(&r);
        // the strictly lower triangular matrices: |J| = q^((n^2-n)/2) = 2
        assert_eq!(j.len(), 2);
        validate_ring_axioms(&r).unwrap();
    }

    #[test]
    fn radical_examples() {
        let z4 = make_ring("Z4").unwrap();
        assert_eq!(jacobson_radical(&z4).members(), &[0, 2]);
        let m2 = make_ring("M2(GF(2))").unwrap();
        assert_eq!(jacobson_radical(&m2).members(), &[0]);
    }

    #[test]
    fn quotient_z4_by_radical() {
        let r = make_ring("Z4").unwrap();
        let j = jacobson_radical(&r);
        let q = quotient_ring(&r, &j).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
        validate_ring_axioms(&q.ring).unwrap();
        // the quotient of a local ring by its radical is a field
        assert!(q.ring.is_field());
    }

    #[test]
    fn quotient_ternions_is_f2_x_f2() {
        let r = make_ring("LT2(GF(2))").unwrap();
        let j = jacobson_radical(&r);
        let q = quotient_ring(&r, &j).unwrap().ring;
        assert_eq!(q.size(), 4);
        // F2 x F2: every element is idempotent and 2-torsion
        for x in 0..4 {
            assert_eq!(q.mul(x, x), x);
            assert_eq!(q.add(x, x), q.zero());
        }
        assert_eq!(simple_factor_signature(&q).unwrap(), vec![(1, 2), (1, 2)]);
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let r = make_ring("M2(GF(2))").unwrap();
        let zero = Ideal::from_members(vec![r.zero()]);
        let q = quotient_ring(&r, &zero).unwrap();
        assert_eq!(q.ring.size(), r.size());
        assert!((0..r.size()).all(|x| q.projection[x] == x));
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let r = make_ring("Z4").unwrap();
        let not_ideal = Ideal::from_members(vec![0, 1]);
        assert_eq!(
            quotient_ring(&r, &not_ideal).unwrap_err(),
            RingError::IdealNotTwoSided
        );
    }

    #[test]
    fn units_closed_under_mul_and_inverse() {
        for spec in ["Z4", "Z6", "GF(4)", "M2(GF(2))", "LT2(GF(2))"] {
            let r = make_ring(spec).unwrap();
            let us = units(&r);
            for &u in &us {
                let inv = r.inverse(u).unwrap();
                assert!(us.binary_search(&inv).is_ok(), "{spec}: inverse closure");
                for &v in &us {
                    assert!(
                        us.binary_search(&r.mul(u, v)).is_ok(),
                        "{spec}: product closure"
                    );
                }
            }
        }
    }

    #[test]
    fn product_radical_is_product_of_radicals() {
        let z4 = make_ring("Z4").unwrap();
        let z6 = make_ring("Z6").unwrap();
        let prod = make_ring("Z4xZ6").unwrap();
        let j4 = jacobson_radical(&z4);
        let j6 = jacobson_radical(&z6);
        let jp = jacobson_radical(&prod);
        let mut expect: Vec<Elem> = Vec::new();
        for &a in j4.members() {
            for &b in j6.members() {
                expect.push(a * 6 + b);
            }
        }
        expect.sort_unstable();
        assert_eq!(jp.members(), expect.as_slice());
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        for spec in ["Z4", "Z8", "Z9", "LT2(GF(2))", "Trunc(GF(2),2)", "Z4xGF(2)"] {
            let r = make_ring(spec).unwrap();
            let j = jacobson_radical(&r);
            let q = quotient_ring(&r, &j).unwrap().ring;
            assert_eq!(jacobson_radical(&q).len(), 1, "{spec}");
            simple_factor_signature(&q).unwrap();
        }
    }

    #[test]
    fn matrix_signature() {
        let m2 = make_ring("M2(GF(2))").unwrap();
        assert_eq!(simple_factor_signature(&m2).unwrap(), vec![(2, 2)]);
        let m2x = make_ring("M2(GF(2))xGF(3)").unwrap();
        assert_eq!(
            simple_factor_signature(&m2x).unwrap(),
            vec![(1, 3), (2, 2)]
        );
    }

    #[test]
    fn structural_arithmetic_above_table_range() {
        let big = make_ring("M2(GF(2))xM2(GF(2))xZ2").unwrap(); // 512 elements
        assert!(big.size() > TABLE_MAX);
        validate_ring_axioms_sampled(&big, 50_000).unwrap();
        assert_eq!(big.mul(big.one(), 37), 37);
        assert_eq!(big.add(big.zero(), 511), 511);
    }

    #[test]
    fn ut2_mirrors_lt2() {
        let lt = make_ring("LT2(GF(3))").unwrap();
        let ut = make_ring("UT2(GF(3))").unwrap();
        assert_eq!(lt.size(), 27);
        assert_eq!(ut.size(), 27);
        assert_eq!(jacobson_radical(&lt).len(), 3);
        assert_eq!(jacobson_radical(&ut).len(), 3);
        validate_ring_axioms(&lt).unwrap();
        validate_ring_axioms(&ut).unwrap();
    }

    #[test]
    fn trunc_poly_ring() {
        let r = make_ring("Trunc(GF(2),2)").unwrap();
        assert_eq!(r.size(), 4);
        let j = jacobson_radical(&r);
        assert_eq!(j.len(), 2);
        validate_ring_axioms(&r).unwrap();
    }

    #[test]
    fn sampled_axiom_validation_above_table_range() {
        let r = make_ring("Z5000").unwrap();
        assert!(r.tables.is_none());
        validate_ring_axioms(&r).unwrap();
    }
}
