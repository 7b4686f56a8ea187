//! Simplicial complexes and the Stanley–Reisner correspondence.
//!
//! Complexes are stored by their facets. Two degenerate complexes are kept
//! apart on purpose: the *void* complex has no faces at all, while the
//! *irrelevant* complex `{∅}` has exactly the empty face. A degree complex of
//! `I` at `a` is void precisely when `x^a ∈ I`; when `x^a ∉ I` the empty set
//! is always a face, so a degree complex with "no vertices" is `{∅}`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomials::{radical_colon_supports, Exponent, MonomialIdeal};
use crate::vertex_set::{
    maximal_sets, minimal_sets, minimal_transversals, VertexSet, MAX_VERTICES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Void,
    Irrelevant,
    Ordinary,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// Length of a shortest cycle, or `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinity"),
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

impl SimplicialComplex {
    /// The complex generated by `facets` (inclusion-maximal members are kept).
    pub fn new(n: usize, facets: Vec<VertexSet>) -> Result<Self> {
        check_n(n)?;
        let all = VertexSet::full(n);
        if let Some(bad) = facets.iter().find(|f| !f.is_subset(all)) {
            let vertex = bad.difference(all).iter().next().unwrap_or(0);
            return Err(Error::VertexOutOfRange {
                vertex: vertex + 1,
                n,
            });
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_sets(facets),
        })
    }

    /// Builds a complex from 1-based facet lists.
    pub fn from_labels(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = VertexSet::EMPTY;
            for &v in f {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                s.insert(v - 1);
            }
            sets.push(s);
        }
        Self::new(n, sets)
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::full(n)],
        }
    }

    /// The complex whose minimal non-faces are (the minimal members of) `nonfaces`.
    pub fn from_nonfaces(n: usize, nonfaces: &[VertexSet]) -> Self {
        let all = VertexSet::full(n);
        let facets = minimal_transversals(nonfaces)
            .into_iter()
            .map(|t| all.difference(t))
            .collect();
        SimplicialComplex {
            n,
            facets: maximal_sets(facets),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Facets as 1-based vertex lists.
    pub fn facet_labels(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_labels()).collect()
    }

    pub fn kind(&self) -> ComplexKind {
        match self.facets.as_slice() {
            [] => ComplexKind::Void,
            [f] if f.is_empty() => ComplexKind::Irrelevant,
            _ => ComplexKind::Ordinary,
        }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    pub fn is_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    /// All faces, ordered by size and then lexicographically. Includes `∅`
    /// unless the complex is void.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if self.is_void() {
            return out;
        }
        let verts: Vec<usize> = self.vertices().iter().collect();
        let mut stack = vec![(VertexSet::EMPTY, 0usize)];
        while let Some((face, next)) = stack.pop() {
            out.push(face);
            for (k, &v) in verts.iter().enumerate().skip(next) {
                let g = face.with(v);
                if self.is_face(g) {
                    stack.push((g, k + 1));
                }
            }
        }
        out.sort_unstable_by(|a, b| a.graded_cmp(b));
        out
    }

    /// `lk F = { G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ }`.
    pub fn link(&self, f: VertexSet) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(f.to_string()));
        }
        Ok(self.link_unchecked(f))
    }

    pub(crate) fn link_unchecked(&self, f: VertexSet) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .filter(|g| f.is_subset(**g))
            .map(|g| g.difference(f))
            .collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(facets),
        }
    }

    /// True iff `v` lies in every facet (never for void or `{∅}`).
    pub fn is_cone(&self, v: usize) -> bool {
        !self.facets.is_empty() && self.facets.iter().all(|f| f.contains(v))
    }

    /// Some cone point, if any.
    pub fn cone_point(&self) -> Option<usize> {
        let mut it = self.facets.iter();
        let first = *it.next()?;
        it.fold(first, |acc, f| acc.intersection(*f)).iter().next()
    }

    /// Induced subcomplex `{ F ∈ Δ : F ⊆ V }` on the same ground set.
    pub fn restrict(&self, v: VertexSet) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(self.facets.iter().map(|f| f.intersection(v)).collect()),
        }
    }

    /// Edges of the 1-skeleton.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in &self.facets {
            let vs: Vec<usize> = f.iter().collect();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    out.push((vs[i], vs[j]));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Girth of the 1-skeleton; only defined for complexes of dimension ≤ 1.
    pub fn girth(&self) -> Result<Girth> {
        if let Some(d) = self.dim() {
            if d > 1 {
                return Err(Error::DimensionTooLarge(d, 1));
            }
        }
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(girth_of_adjacency(&adj))
    }

    /// Minimal non-faces, i.e. generator supports of the Stanley–Reisner ideal.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        if self.is_void() {
            return vec![VertexSet::EMPTY];
        }
        let verts = self.vertices();
        let mut out: Vec<VertexSet> = VertexSet::full(self.n)
            .difference(verts)
            .iter()
            .map(VertexSet::singleton)
            .collect();
        for f in self.faces() {
            let start = f.max().map_or(0, |m| m + 1);
            for v in verts.iter().filter(|&v| v >= start) {
                let g = f.with(v);
                if !self.is_face(g) && f.iter().all(|u| self.is_face(g.without(u))) {
                    out.push(g);
                }
            }
        }
        minimal_sets(out)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ComplexKind::Void => f.write_str("void"),
            ComplexKind::Irrelevant => f.write_str("{∅}"),
            ComplexKind::Ordinary => {
                f.write_str("<")?;
                for (k, facet) in self.facets.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{facet}")?;
                }
                f.write_str(">")
            }
        }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} on {} vertices", self.n)
    }
}

/// Shortest cycle length by BFS from every vertex.
pub(crate) fn girth_of_adjacency(adj: &[VertexSet]) -> Girth {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in adj[u].iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// `I_Δ`, generated by the minimal non-faces.
pub fn sr_ideal(delta: &SimplicialComplex) -> Result<MonomialIdeal> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    let n = delta.n;
    Ok(MonomialIdeal::from_minimal_unchecked(
        n,
        delta
            .minimal_nonfaces()
            .into_iter()
            .map(|s| Exponent::from_support(n, s))
            .collect(),
    ))
}

/// `Δ(I) = { F : x_F ∉ I }` for a squarefree ideal. The unit ideal gives the void complex.
pub fn sr_complex(i: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    check_n(i.n())?;
    let supports: Vec<VertexSet> = i.gens().iter().map(Exponent::support).collect();
    Ok(SimplicialComplex::from_nonfaces(i.n(), &supports))
}

/// The degree complex `Δ_a(I)`, computed as the Stanley–Reisner complex of `√(I : x^a)`.
pub fn degree_complex(i: &MonomialIdeal, a: &Exponent) -> Result<SimplicialComplex> {
    if a.len() != i.n() {
        return Err(Error::LengthMismatch {
            expected: i.n(),
            found: a.len(),
        });
    }
    check_n(i.n())?;
    Ok(SimplicialComplex::from_nonfaces(
        i.n(),
        &radical_colon_supports(i, a.coords()),
    ))
}

/// `Δ_a(I)` straight from the definition: `F` is a face iff every minimal
/// generator `x^b` has an index `k ∉ F` with `a_k < b_k`. Exponential in `n`;
/// kept as an independent check on [`degree_complex`].
pub fn degree_complex_by_definition(i: &MonomialIdeal, a: &Exponent) -> Result<SimplicialComplex> {
    if a.len() != i.n() {
        return Err(Error::LengthMismatch {
            expected: i.n(),
            found: a.len(),
        });
    }
    check_n(i.n())?;
    if i.n() > 24 {
        return Err(Error::TooManyVertices { n: i.n(), max: 24 });
    }
    let n = i.n();
    let a = a.coords();
    let faces: Vec<VertexSet> = (0..1u64 << n)
        .map(VertexSet)
        .filter(|f| {
            i.gens()
                .iter()
                .all(|b| (0..n).any(|k| !f.contains(k) && a[k] < b.coords()[k]))
        })
        .collect();
    Ok(SimplicialComplex {
        n,
        facets: maximal_sets(faces),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomials::{radical, radical_colon};
    use proptest::prelude::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_labels(n, &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn vs(labels: &[usize]) -> VertexSet {
        VertexSet::from_vertices(labels.iter().map(|v| v - 1))
    }

    fn square_chain() -> SimplicialComplex {
        cx(
            6,
            &[
                &[1, 2],
                &[2, 3],
                &[3, 4],
                &[1, 4],
                &[4, 5],
                &[5, 6],
                &[2, 6],
            ],
        )
    }

    #[test]
    fn sr_ideal_examples() {
        let i = sr_ideal(&cx(3, &[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(i, MonomialIdeal::from_coords(3, [vec![1, 0, 1]]).unwrap());
        assert!(sr_ideal(&SimplicialComplex::simplex(4)).unwrap().is_zero());
        assert_eq!(
            sr_ideal(&SimplicialComplex::void(3)),
            Err(Error::VoidComplex)
        );
    }

    #[test]
    fn sr_ideal_of_square_chain_is_quadratic() {
        // Oracle: enumerate all 2- and 3-subsets and keep the non-faces,
        // then minimalize.
        let delta = square_chain();
        let edges: Vec<(usize, usize)> = delta.edges();
        let mut raw = Vec::new();
        for s in 1u64..64 {
            let set = VertexSet(s);
            if (set.len() == 2
                && !edges
                    .iter()
                    .any(|&(u, v)| set == VertexSet::from_vertices([u, v])))
                || (set.len() == 3 && !delta.is_face(set))
            {
                raw.push(Exponent::from_support(6, set));
            }
        }
        let expected = crate::monomials::minimalize(6, raw).unwrap();
        let got = sr_ideal(&delta).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.gens().len(), 8);
        assert!(got.gens().iter().all(|g| g.degree() == 2));
    }

    #[test]
    fn sr_complex_examples() {
        let i = MonomialIdeal::from_coords(2, [vec![1, 1]]).unwrap();
        assert_eq!(sr_complex(&i).unwrap(), cx(2, &[&[1], &[2]]));
        let maximal =
            MonomialIdeal::from_coords(3, [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            sr_complex(&maximal).unwrap().kind(),
            ComplexKind::Irrelevant
        );
        assert_eq!(
            sr_complex(&MonomialIdeal::unit(2)).unwrap().kind(),
            ComplexKind::Void
        );
        let nsf = MonomialIdeal::from_coords(2, [vec![2, 0]]).unwrap();
        assert_eq!(sr_complex(&nsf), Err(Error::NotSquarefree));
    }

    #[test]
    fn link_cone_restrict_examples() {
        let d = cx(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(d.link(vs(&[2])).unwrap(), cx(3, &[&[1], &[3]]));
        assert_eq!(d.link(vs(&[1, 2])).unwrap().kind(), ComplexKind::Irrelevant);
        assert!(d.link(vs(&[1, 3])).is_err());
        assert!(cx(3, &[&[1, 2], &[1, 3]]).is_cone(0));
        assert!(!cx(3, &[&[1, 2], &[1, 3]]).is_cone(1));
        assert_eq!(
            square_chain().restrict(vs(&[1, 2, 3, 4])),
            cx(6, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
        );
    }

    #[test]
    fn girth_examples() {
        assert_eq!(square_chain().girth().unwrap(), Girth::Finite(4));
        assert_eq!(
            cx(3, &[&[1, 2], &[2, 3], &[1, 3]]).girth().unwrap(),
            Girth::Finite(3)
        );
        assert_eq!(
            cx(4, &[&[1, 2], &[2, 3], &[3, 4]]).girth().unwrap(),
            Girth::Infinite
        );
        assert!(cx(3, &[&[1, 2, 3]]).girth().is_err());
    }

    #[test]
    fn degree_complex_examples() {
        let i = MonomialIdeal::from_coords(3, [vec![2, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(
            degree_complex(&i, &Exponent::zero(3)).unwrap(),
            sr_complex(&radical(&i)).unwrap()
        );
        assert!(degree_complex(&i, &Exponent::new(vec![2, 2, 0]))
            .unwrap()
            .is_void());
    }

    #[test]
    fn faces_and_dim() {
        let d = cx(3, &[&[1, 2], &[3]]);
        assert_eq!(
            d.faces(),
            vec![vs(&[]), vs(&[1]), vs(&[2]), vs(&[3]), vs(&[1, 2])]
        );
        assert_eq!(d.dim(), Some(1));
        assert_eq!(SimplicialComplex::irrelevant(2).dim(), Some(-1));
        assert_eq!(SimplicialComplex::void(2).dim(), None);
        assert!(SimplicialComplex::void(2).faces().is_empty());
    }

    fn degree_complex_direct(i: &MonomialIdeal, a: &[u32]) -> Vec<VertexSet> {
        degree_complex_by_definition(i, &Exponent::new(a.to_vec()))
            .unwrap()
            .faces()
    }

    fn arb_ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=4)
            .prop_map(move |g| MonomialIdeal::from_coords(n, g).unwrap())
    }

    fn arb_squarefree(n: usize) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(1u64..(1 << n), 0..=5).prop_map(move |g| {
            crate::monomials::minimalize(
                n,
                g.into_iter()
                    .map(|m| Exponent::from_support(n, VertexSet(m))),
            )
            .unwrap()
        })
    }

    fn arb_complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(0u64..(1 << n), 1..=5).prop_map(move |f| {
            SimplicialComplex::new(n, f.into_iter().map(VertexSet).collect()).unwrap()
        })
    }

    #[test]
    fn radical_colon_route_matches_definition_exhaustively() {
        // n ≤ 4, a_i ≤ 3, on a fixed family of generator sets.
        let families: Vec<MonomialIdeal> = vec![
            MonomialIdeal::from_coords(3, [vec![2, 1, 0], vec![0, 1, 3], vec![1, 0, 1]]).unwrap(),
            MonomialIdeal::from_coords(
                4,
                [
                    vec![1, 1, 0, 0],
                    vec![0, 2, 1, 0],
                    vec![0, 0, 1, 2],
                    vec![3, 0, 0, 1],
                ],
            )
            .unwrap(),
            MonomialIdeal::from_coords(4, [vec![2, 2, 0, 0], vec![1, 1, 1, 1], vec![0, 0, 2, 2]])
                .unwrap(),
        ];
        for i in families {
            let n = i.n();
            for code in 0..4usize.pow(n as u32) {
                let a: Vec<u32> = (0..n)
                    .map(|k| (code / 4usize.pow(k as u32) % 4) as u32)
                    .collect();
                let got = degree_complex(&i, &Exponent::new(a.clone()))
                    .unwrap()
                    .faces();
                assert_eq!(got, degree_complex_direct(&i, &a), "I={i} a={a:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn radical_colon_route_matches_definition(i in arb_ideal(4), a in prop::collection::vec(0u32..=3, 4)) {
            let got = degree_complex(&i, &Exponent::new(a.clone())).unwrap();
            prop_assert_eq!(got.faces(), degree_complex_direct(&i, &a));
            let x_in_i = i.contains(&Exponent::new(a.clone())).unwrap();
            prop_assert_eq!(got.is_void(), x_in_i);
        }

        #[test]
        fn sr_round_trip(i in arb_squarefree(5)) {
            let d = sr_complex(&i).unwrap();
            prop_assert_eq!(sr_ideal(&d).unwrap(), i);
        }

        #[test]
        fn containment_reverses_degree_complexes(
            i in arb_ideal(4),
            extra in prop::collection::vec(0u32..=3, 4),
            a in prop::collection::vec(0u32..=3, 4),
        ) {
            // I ⊆ I + (extra)
            let j = i.sum(&MonomialIdeal::from_coords(4, [extra]).unwrap()).unwrap();
            let a = Exponent::new(a);
            let di = degree_complex(&i, &a).unwrap();
            let dj = degree_complex(&j, &a).unwrap();
            prop_assert!(dj.faces().iter().all(|f| di.is_face(*f)));
        }

        #[test]
        fn cone_beyond_rho(i in arb_ideal(4), a in prop::collection::vec(0u32..=4, 4)) {
            let rho = i.max_degrees();
            let e = Exponent::new(a.clone());
            let d = degree_complex(&i, &e).unwrap();
            if !i.contains(&e).unwrap() {
                for j in 0..4 {
                    if a[j] >= rho[j] {
                        prop_assert!(d.is_cone(j), "a={:?} j={} d={}", a, j, d);
                    }
                }
            }
        }

        #[test]
        fn link_of_empty_face_and_restriction(d in arb_complex(5), v in 0u64..32) {
            prop_assert_eq!(&d.link(VertexSet::EMPTY).unwrap(), &d);
            let v = VertexSet(v);
            let restricted = sr_ideal(&d.restrict(v)).unwrap();
            let outside: Vec<Exponent> = VertexSet::full(5).difference(v).iter()
                .map(|k| Exponent::from_support(5, VertexSet::singleton(k))).collect();
            let ideal = sr_ideal(&d).unwrap();
            let expected = crate::regularity::restrict_ideal(&ideal, v)
                .sum(&crate::monomials::minimalize(5, outside).unwrap()).unwrap();
            prop_assert_eq!(restricted, expected);
        }

        #[test]
        fn radical_colon_of_squarefree_is_link_ideal(i in arb_squarefree(4), a in 0u64..16) {
            // For squarefree I and squarefree a with x^a ∉ I, Δ_a(I) = lk_{Δ(I)} supp(a)
            // on the vertices outside supp(a), coned over supp(a).
            prop_assume!(!i.is_zero());
            let e = Exponent::from_support(4, VertexSet(a));
            prop_assume!(!i.contains(&e).unwrap());
            let d = sr_complex(&i).unwrap();
            let link = d.link(VertexSet(a)).unwrap();
            let dc = sr_complex(&radical_colon(&i, &e).unwrap()).unwrap();
            for f in dc.faces() {
                prop_assert!(link.is_face(f.difference(VertexSet(a))));
            }
        }
    }
}
