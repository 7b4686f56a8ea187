use std::fmt;

/// A set of vertices drawn from `0..64`, stored as a bitmask.
///
/// Vertices are 0-based internally. `Display` prints them 1-based, matching
/// the external conventions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

pub const MAX_VERTICES: usize = 64;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    /// 1-based vertex labels, ascending.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Ordering by size first, then by sorted vertex list.
    pub fn graded_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// Keeps only the inclusion-minimal sets; the result is sorted and deduplicated.
pub fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.0.cmp(&b.0)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Keeps only the inclusion-maximal sets; the result is sorted and deduplicated.
pub fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.0.cmp(&b.0)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Minimal transversals (minimal hitting sets) of a family of non-empty sets.
///
/// An empty member makes the family unhittable and yields no transversals.
pub fn minimal_transversals(edges: &[VertexSet]) -> Vec<VertexSet> {
    let mut edges: Vec<VertexSet> = minimal_sets(edges.to_vec());
    if edges.iter().any(|e| e.is_empty()) {
        return Vec::new();
    }
    edges.sort_unstable_by_key(|e| e.len());
    let mut current = vec![VertexSet::EMPTY];
    for e in edges {
        let mut next = Vec::with_capacity(current.len() * 2);
        for t in &current {
            if !t.is_disjoint(e) {
                next.push(*t);
            } else {
                for v in e.iter() {
                    next.push(t.with(v));
                }
            }
        }
        current = minimal_sets(next);
    }
    current
}
