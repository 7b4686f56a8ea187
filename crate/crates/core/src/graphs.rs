//! Simple graphs, edge ideals and the invariants used by the regularity bounds.

use std::fmt;

use crate::complexes::{check_n, girth_of_adjacency, Girth, SimplicialComplex};
use crate::error::{Error, Result};
use crate::monomials::{Exponent, MonomialIdeal};
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| VertexSet::full(n).without(v)).collect();
        Graph { n, adj }
    }

    /// Edges given as 0-based pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_n(n)?;
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(Error::Parse(format!("loop at vertex {}", u + 1)));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Edges given as 1-based pairs.
    pub fn from_labels(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(Error::VertexOutOfRange { vertex: 0, n });
            }
            zero_based.push((u - 1, v - 1));
        }
        Self::from_edges(n, &zero_based)
    }

    /// The graph whose edges are the 1-dimensional faces of `delta`.
    pub fn one_skeleton(delta: &SimplicialComplex) -> Self {
        Graph::from_edges(delta.n(), &delta.edges()).expect("faces lie in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn check_set(&self, u: VertexSet) -> Result<()> {
        match u.difference(VertexSet::full(self.n)).iter().next() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v + 1,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n);
        Graph {
            n: self.n,
            adj: (0..self.n)
                .map(|v| all.difference(self.adj[v]).without(v))
                .collect(),
        }
    }

    /// `N(U) = ⋃_{u ∈ U} N(u)`.
    pub fn neighborhood(&self, u: VertexSet) -> Result<VertexSet> {
        self.check_set(u)?;
        Ok(self.open_nbhd(u))
    }

    /// `N[U] = N(U) ∪ U`.
    pub fn closed_neighborhood(&self, u: VertexSet) -> Result<VertexSet> {
        self.check_set(u)?;
        Ok(self.open_nbhd(u).union(u))
    }

    #[inline]
    pub(crate) fn open_nbhd(&self, u: VertexSet) -> VertexSet {
        u.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    pub fn is_independent(&self, f: VertexSet) -> bool {
        f.iter().all(|v| self.adj[v].is_disjoint(f))
    }

    /// `α(G)` by exhaustive search.
    pub fn independence_number(&self) -> usize {
        fn grow(g: &Graph, cand: VertexSet, size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            match cand.iter().next() {
                None => *best = size,
                Some(v) => {
                    grow(g, cand.without(v).difference(g.adj[v]), size + 1, best);
                    grow(g, cand.without(v), size, best);
                }
            }
        }
        let mut best = 0;
        grow(self, VertexSet::full(self.n), 0, &mut best);
        best
    }

    /// `μ(G)`: the largest set of edges that is pairwise disjoint and induces
    /// exactly those edges.
    pub fn induced_matching_number(&self) -> usize {
        fn grow(
            g: &Graph,
            edges: &[(usize, usize)],
            start: usize,
            blocked: VertexSet,
            size: usize,
            best: &mut usize,
        ) {
            *best = (*best).max(size);
            if size + (edges.len() - start) <= *best {
                return;
            }
            for k in start..edges.len() {
                let (u, v) = edges[k];
                if blocked.contains(u) || blocked.contains(v) {
                    continue;
                }
                let closed = g.adj[u].union(g.adj[v]).with(u).with(v);
                grow(g, edges, k + 1, blocked.union(closed), size + 1, best);
            }
        }
        let edges = self.edges();
        let mut best = 0;
        grow(self, &edges, 0, VertexSet::EMPTY, 0, &mut best);
        best
    }

    pub fn girth(&self) -> Girth {
        girth_of_adjacency(&self.adj)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.open_nbhd(frontier).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == VertexSet::full(self.n)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None::<bool>; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for w in self.adj[u].iter() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    /// Maximal independent sets, sorted.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        let faces = independence_complex(self);
        faces.facets().to_vec()
    }

    /// Independent sets, ordered by size then lexicographically.
    pub fn independent_sets(&self) -> Vec<VertexSet> {
        independence_complex(self).faces()
    }

    /// Upper-triangle adjacency bits in row-major order `(0,1), (0,2), …`.
    pub fn adjacency_code(&self) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    pub fn from_adjacency_code(n: usize, code: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if code >> bit & 1 == 1 {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
                bit += 1;
            }
        }
        g
    }

    /// Minimum adjacency code over all vertex relabelings.
    pub fn canonical_code(&self) -> u64 {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut code = 0u64;
            let mut bit = 0;
            for u in 0..self.n {
                for v in u + 1..self.n {
                    if self.has_edge(p[u], p[v]) {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(code);
        });
        best
    }

    /// Edges as 1-based pairs.
    pub fn edge_labels(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (u + 1, v + 1))
            .collect()
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("G[")?;
        for (k, (u, v)) in self.edge_labels().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}{}{v}", if self.n > 9 { "-" } else { "" })?;
        }
        write!(f, "; n={}]", self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `I(G) = (x_i x_j : ij ∈ E(G))`.
pub fn edge_ideal(g: &Graph) -> Result<MonomialIdeal> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::Edgeless);
    }
    Ok(MonomialIdeal::from_minimal_unchecked(
        g.n,
        edges
            .into_iter()
            .map(|(u, v)| Exponent::from_support(g.n, VertexSet::from_vertices([u, v])))
            .collect(),
    ))
}

/// The complex of independent sets of `g`.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    let nonfaces: Vec<VertexSet> = g
        .edges()
        .into_iter()
        .map(|(u, v)| VertexSet::from_vertices([u, v]))
        .collect();
    SimplicialComplex::from_nonfaces(g.n, &nonfaces)
}

/// Filters for [`enumerate_graphs`].
#[derive(Clone, Debug, Default)]
pub struct GraphFilter {
    pub no_isolated_vertices: bool,
    pub connected: bool,
    pub min_edges: usize,
    pub alpha_greater_than_two: bool,
    pub non_bipartite: bool,
    pub girth: Option<Girth>,
    /// Keep one representative (the minimal code) per isomorphism class.
    pub up_to_isomorphism: bool,
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.no_isolated_vertices || !g.has_isolated_vertex())
            && g.edge_count() >= self.min_edges
            && (!self.connected || g.is_connected())
            && (!self.non_bipartite || !g.is_bipartite())
            && (!self.alpha_greater_than_two || g.independence_number() > 2)
            && self.girth.is_none_or(|want| g.girth() == want)
    }
}

pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// All labeled graphs on `n` vertices passing `filter`, in increasing
/// adjacency-code order.
pub fn enumerate_graphs(n: usize, filter: GraphFilter) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Guard {
            what: "graph enumeration",
            estimate: 1u128 << (n * (n - 1) / 2),
            limit: 1u128 << (MAX_ENUMERATION_VERTICES * (MAX_ENUMERATION_VERTICES - 1) / 2),
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0u64..1 << pairs).filter_map(move |code| {
        let g = Graph::from_adjacency_code(n, code);
        if !filter.accepts(&g) {
            return None;
        }
        if filter.up_to_isomorphism && g.canonical_code() != code {
            return None;
        }
        Some(g)
    }))
}
