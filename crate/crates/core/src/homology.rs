//! Reduced simplicial homology over a prime field or the rationals.
//!
//! Chains are oriented by ascending vertex order; the boundary of
//! `[v_0 < … < v_d]` is `Σ_k (-1)^k [.. v̂_k ..]`. The empty face is the unique
//! `(-1)`-face, so `∂_0` is the all-ones row.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{ComplexKind, SimplicialComplex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(2)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("gf{p}")))
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rational" {
            return Ok(Field::Rational);
        }
        t.strip_prefix("gf")
            .and_then(|p| p.parse::<u32>().ok())
            .filter(|&p| is_prime(p))
            .map(Field::Prime)
            .ok_or_else(|| Error::InvalidField(s.to_string()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "gf{p}"),
            Field::Rational => f.write_str("q"),
        }
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

static FAULT_INJECTION: AtomicBool = AtomicBool::new(false);

/// Self-validation hook: when enabled, every boundary matrix `∂_i` with
/// `i ≥ 1` has the sign of its first entry flipped. Process-wide.
pub fn set_fault_injection(enabled: bool) {
    FAULT_INJECTION.store(enabled, Ordering::SeqCst);
}

pub fn fault_injection_enabled() -> bool {
    FAULT_INJECTION.load(Ordering::SeqCst)
}

/// Dimensions of reduced homology, indexed from degree `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyProfile {
    dims: Vec<usize>,
}

impl HomologyProfile {
    /// `dim H̃_i`; zero outside the computed range.
    pub fn dim(&self, i: i32) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.dims.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn nonzero_degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, _)| k as i32 - 1)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `(degree, dimension)` pairs from degree `-1` upward.
    pub fn entries(&self) -> Vec<(i32, usize)> {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| (k as i32 - 1, d))
            .collect()
    }
}

/// The boundary map `∂_i : C_i → C_{i-1}` as a sparse column matrix.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub rows: Vec<VertexSet>,
    pub cols: Vec<VertexSet>,
    /// One entry list per column: `(row index, ±1)`.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v as i64;
            }
        }
        m
    }

    pub fn rank(&self, field: Field) -> usize {
        rank_sparse(self.rows.len(), &self.columns, field)
    }
}

fn faces_by_size(delta: &SimplicialComplex) -> Vec<Vec<VertexSet>> {
    let faces = delta.faces();
    let top = faces.last().map_or(0, |f| f.len());
    let mut grouped = vec![Vec::new(); top + 1];
    for f in faces {
        grouped[f.len()].push(f);
    }
    grouped
}

fn boundary_columns(rows: &[VertexSet], cols: &[VertexSet], flip: bool) -> Vec<Vec<(usize, i8)>> {
    let index: HashMap<VertexSet, usize> = rows.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    let mut out: Vec<Vec<(usize, i8)>> = cols
        .iter()
        .map(|sigma| {
            sigma
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (index[&sigma.without(v)], sign)
                })
                .collect()
        })
        .collect();
    if flip {
        if let Some(first) = out.first_mut().and_then(|c| c.first_mut()) {
            first.1 = -first.1;
        }
    }
    out
}

/// `∂_i` with rows indexed by `(i-1)`-faces and columns by `i`-faces.
pub fn boundary_matrix(delta: &SimplicialComplex, i: i32) -> Result<BoundaryMatrix> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    let grouped = faces_by_size(delta);
    let pick = |size: i32| -> Vec<VertexSet> {
        usize::try_from(size)
            .ok()
            .and_then(|s| grouped.get(s).cloned())
            .unwrap_or_default()
    };
    let rows = pick(i);
    let cols = pick(i + 1);
    let columns = boundary_columns(&rows, &cols, i >= 1 && fault_injection_enabled());
    Ok(BoundaryMatrix {
        rows,
        cols,
        columns,
    })
}

/// Reduced homology dimensions; the void complex has none, `{∅}` has `H̃_{-1} = 1`.
pub fn reduced_homology(delta: &SimplicialComplex, field: Field) -> HomologyProfile {
    if delta.kind() == ComplexKind::Void {
        return HomologyProfile::default();
    }
    let grouped = faces_by_size(delta);
    let flip = fault_injection_enabled();
    // ranks[k] = rank of ∂ from size-k faces to size-(k-1) faces.
    let mut ranks = vec![0usize; grouped.len() + 1];
    for k in 1..grouped.len() {
        let cols = boundary_columns(&grouped[k - 1], &grouped[k], flip && k >= 2);
        ranks[k] = rank_sparse(grouped[k - 1].len(), &cols, field);
    }
    let dims: Vec<usize> = (0..grouped.len())
        .map(|k| grouped[k].len().saturating_sub(ranks[k] + ranks[k + 1]))
        .collect();

    let euler_faces: i64 = grouped
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if k % 2 == 1 {
                f.len() as i64
            } else {
                -(f.len() as i64)
            }
        })
        .sum();
    let euler_homology: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 1 { d as i64 } else { -(d as i64) })
        .sum();
    // An injected fault breaks ∂∘∂ = 0 on purpose; the selftest reports that
    // instead of this assertion aborting the process.
    assert!(
        flip || euler_faces == euler_homology,
        "Euler characteristic mismatch"
    );

    HomologyProfile { dims }
}

/// Reduced homology of the complex on `ground` whose minimal nonfaces are `nonfaces`.
///
/// Uncovered ground vertices are cone points. Otherwise Alexander duality
/// gives `H̃_i(Λ) ≅ H̃^{|U|-i-3}(Λ^∨)`, and the dual is covered by the simplices
/// `U \ N`, so it has the homotopy type of the nerve
/// `{ T : ⋃_{k ∈ T} N_k ≠ U }` on `nonfaces.len()` vertices. The cost is
/// exponential in the number of nonfaces, not in the size of the complex.
pub fn reduced_homology_from_nonfaces(
    ground: VertexSet,
    nonfaces: &[VertexSet],
    field: Field,
) -> Result<HomologyProfile> {
    let r = nonfaces.len();
    if nonfaces.iter().any(|m| m.is_empty()) {
        return Ok(HomologyProfile::default());
    }
    if ground.is_empty() {
        return Ok(HomologyProfile { dims: vec![1] });
    }
    let covered = nonfaces
        .iter()
        .fold(VertexSet::EMPTY, |acc, m| acc.union(*m));
    if !ground.is_subset(covered) {
        return Ok(HomologyProfile::default());
    }
    if r > 20 {
        return Err(Error::Guard {
            what: "nerve of nonfaces",
            estimate: 1u128 << r,
            limit: 1 << 20,
        });
    }
    // Minimal covers are the nonfaces of the nerve.
    let mut covers = Vec::new();
    for t in 1u64..(1 << r) {
        let union = VertexSet(t)
            .iter()
            .fold(VertexSet::EMPTY, |acc, k| acc.union(nonfaces[k]));
        if union == ground {
            covers.push(VertexSet(t));
        }
    }
    let nerve = SimplicialComplex::from_nonfaces(r, &crate::vertex_set::minimal_sets(covers));
    let h = reduced_homology(&nerve, field);
    let u = ground.len() as i32;
    let top = u - 1;
    let mut dims: Vec<usize> = (-1..=top).map(|i| h.dim(u - i - 3)).collect();
    while dims.last() == Some(&0) {
        dims.pop();
    }
    Ok(HomologyProfile { dims })
}

/// Rank of a sparse ±1 column matrix over `field`.
pub fn rank_sparse(nrows: usize, columns: &[Vec<(usize, i8)>], field: Field) -> usize {
    if nrows == 0 || columns.is_empty() {
        return 0;
    }
    match field {
        Field::Prime(2) => rank_gf2(nrows, columns),
        Field::Prime(p) => {
            let dense: Vec<Vec<u64>> = columns
                .iter()
                .map(|col| {
                    let mut v = vec![0u64; nrows];
                    for &(r, s) in col {
                        v[r] = if s > 0 { 1 } else { p as u64 - 1 };
                    }
                    v
                })
                .collect();
            rank_mod_p(dense, p as u64)
        }
        Field::Rational => {
            let dense: Vec<Vec<BigInt>> = columns
                .iter()
                .map(|col| {
                    let mut v = vec![BigInt::zero(); nrows];
                    for &(r, s) in col {
                        v[r] = BigInt::from(s);
                    }
                    v
                })
                .collect();
            rank_bareiss(dense)
        }
    }
}

fn rank_gf2(nrows: usize, columns: &[Vec<(usize, i8)>]) -> usize {
    let words = nrows.div_ceil(64);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; nrows];
    let mut rank = 0;
    for col in columns {
        let mut v = vec![0u64; words];
        for &(r, _) in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        loop {
            let lead = v.iter().enumerate().rev().find(|(_, w)| **w != 0);
            let Some((wi, w)) = lead else { break };
            let bit = wi * 64 + 63 - w.leading_zeros() as usize;
            match &pivots[bit] {
                Some(p) => {
                    for (x, y) in v.iter_mut().zip(p) {
                        *x ^= y;
                    }
                }
                None => {
                    pivots[bit] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank over GF(p) of a matrix given as a list of vectors.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let Some(len) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for c in 0..len {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        let pivot_row: Vec<u64> = m[rank].iter().map(|x| x * inv % p).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[c] % p;
            if factor != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Rank over Q by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let Some(len) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..len {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            for k in c + 1..len {
                let v = &row[k] * &pivot_row[c] - &row[c] * &pivot_row[k];
                debug_assert!((&v % &prev).is_zero());
                row[k] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}
