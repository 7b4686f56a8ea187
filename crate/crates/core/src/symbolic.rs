//! Symbolic powers of squarefree monomial ideals and the intermediate ideals
//! between `I^s` and `I^(s)`.
//!
//! Membership in `I^(s)` is decided three independent ways:
//! - covering: `Σ_{i ∉ F} a_i ≥ s` for every facet `F` of `Δ(I)`;
//! - differential: every `∂* x^a / ∂* x^b` with `|b| = s - 1` lies in `I`;
//! - intersection: `⋂_P P^s` over the minimal primes, built explicitly.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::sr_complex;
use crate::error::{Error, Result};
use crate::graphs::{edge_ideal, Graph};
use crate::monomials::{intersect, power, Exponent, MonomialIdeal, PowerTable};
use crate::vertex_set::VertexSet;

/// Default guard on the `(s+1)^n` box scanned by [`symbolic_power`].
pub const DEFAULT_BOX_LIMIT: u128 = 10_000_000;

fn require_squarefree_proper(i: &MonomialIdeal) -> Result<()> {
    i.require_nonzero_proper()?;
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

fn require_positive(s: u32) -> Result<()> {
    if s == 0 {
        Err(Error::NonPositivePower)
    } else {
        Ok(())
    }
}

/// Vertex sets of the minimal primes: complements of the facets of `Δ(I)`.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<Vec<VertexSet>> {
    require_squarefree_proper(i)?;
    let all = VertexSet::full(i.n());
    let mut primes: Vec<VertexSet> = sr_complex(i)?
        .facets()
        .iter()
        .map(|f| all.difference(*f))
        .collect();
    primes.sort_unstable();
    Ok(primes)
}

/// Precomputed covering test for `I^(s)` membership.
#[derive(Clone, Debug)]
pub struct CoveringTest {
    n: usize,
    primes: Vec<VertexSet>,
}

impl CoveringTest {
    pub fn new(i: &MonomialIdeal) -> Result<Self> {
        Ok(CoveringTest {
            n: i.n(),
            primes: minimal_primes(i)?,
        })
    }

    pub fn primes(&self) -> &[VertexSet] {
        &self.primes
    }

    #[inline]
    pub fn contains(&self, s: u32, a: &[u32]) -> bool {
        self.primes
            .iter()
            .all(|p| p.iter().map(|k| a[k]).sum::<u32>() >= s)
    }

    fn check(&self, a: &Exponent) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: a.len(),
            });
        }
        Ok(())
    }
}

/// Covering route: `x^a ∈ I^(s)` iff `Σ_{i ∉ F} a_i ≥ s` for every facet `F` of `Δ(I)`.
pub fn symbolic_membership(i: &MonomialIdeal, s: u32, a: &Exponent) -> Result<bool> {
    require_positive(s)?;
    let test = CoveringTest::new(i)?;
    test.check(a)?;
    Ok(test.contains(s, a.coords()))
}

/// Derivative route: every `∂* x^a / ∂* x^b` with `b ≤ a`, `|b| = s - 1` lies in `I`.
pub fn differential_membership(i: &MonomialIdeal, s: u32, a: &Exponent) -> Result<bool> {
    require_squarefree_proper(i)?;
    require_positive(s)?;
    if a.len() != i.n() {
        return Err(Error::LengthMismatch {
            expected: i.n(),
            found: a.len(),
        });
    }
    if a.degree() < s - 1 {
        // Some b clamps x^a all the way down to 1, which is outside a proper ideal.
        return Ok(false);
    }
    fn all_derivatives_in(
        i: &MonomialIdeal,
        a: &[u32],
        rest: &mut Vec<u32>,
        k: usize,
        left: u32,
    ) -> bool {
        if left == 0 {
            return i.contains_coords(rest);
        }
        if k == a.len() {
            return true; // cannot place the remaining order here; other branches cover it
        }
        let tail: u32 = a[k + 1..].iter().sum();
        let lo = left.saturating_sub(tail);
        for take in lo..=a[k].min(left) {
            rest[k] = a[k] - take;
            let ok = all_derivatives_in(i, a, rest, k + 1, left - take);
            rest[k] = a[k];
            if !ok {
                return false;
            }
        }
        true
    }
    let coords = a.coords();
    let mut rest = coords.to_vec();
    Ok(all_derivatives_in(i, coords, &mut rest, 0, s - 1))
}

/// Intersection route: `⋂_P P^s` over the minimal primes of `I`.
pub fn symbolic_power_by_intersection(i: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    require_positive(s)?;
    let n = i.n();
    let mut acc: Option<MonomialIdeal> = None;
    for p in minimal_primes(i)? {
        let prime = MonomialIdeal::from_minimal_unchecked(
            n,
            p.iter()
                .map(|k| Exponent::from_support(n, VertexSet::singleton(k)))
                .collect(),
        );
        let ps = power(&prime, s);
        acc = Some(match acc {
            None => ps,
            Some(prev) => intersect(&prev, &ps)?,
        });
    }
    Ok(acc.unwrap_or_else(|| MonomialIdeal::unit(n)))
}

/// `I^(s)` by scanning the box `{0..s}^n` in degree order and keeping the
/// minimal members. Every minimal generator has all exponents ≤ s, so the box suffices.
pub fn symbolic_power(i: &MonomialIdeal, s: u32, box_limit: u128) -> Result<MonomialIdeal> {
    require_positive(s)?;
    let test = CoveringTest::new(i)?;
    let n = i.n();
    let cells = (s as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if cells > box_limit {
        return Err(Error::Guard {
            what: "symbolic power box",
            estimate: cells,
            limit: box_limit,
        });
    }

    fn compositions(
        n: usize,
        total: u32,
        cap: u32,
        out: &mut Vec<u32>,
        k: usize,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if k == n - 1 {
            if total <= cap {
                out[k] = total;
                visit(out);
            }
            return;
        }
        let rest_cap = cap * (n - k - 1) as u32;
        for v in (total.saturating_sub(rest_cap)..=total.min(cap)).rev() {
            out[k] = v;
            compositions(n, total - v, cap, out, k + 1, visit);
        }
    }

    let mut kept: Vec<Exponent> = Vec::new();
    let mut buf = vec![0u32; n];
    for d in 0..=(s as usize * n) as u32 {
        let mut level = Vec::new();
        compositions(n, d, s, &mut buf, 0, &mut |a| {
            if test.contains(s, a)
                && !kept
                    .iter()
                    .any(|g| g.coords().iter().zip(a).all(|(x, y)| x <= y))
            {
                level.push(Exponent::new(a.to_vec()));
            }
        });
        kept.extend(level);
    }
    debug_assert!(kept.iter().all(|g| g.coords().iter().all(|&c| c <= s)));
    Ok(MonomialIdeal::from_minimal_unchecked(n, kept))
}

/// How to pick members of an intermediate family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    Sample { count: usize, seed: u64 },
}

/// Default cap on the number of extra generators allowed in `All` mode.
pub const DEFAULT_MAX_INTERMEDIATES: usize = 16;

/// The ideals `I^s + (f_1, …, f_t)` with `f_k` among the minimal generators
/// of `I^(s)` outside `I^s`.
#[derive(Clone, Debug)]
pub struct IntermediateFamily {
    pub s: u32,
    pub base: MonomialIdeal,
    pub top: MonomialIdeal,
    pub extras: Vec<Exponent>,
}

impl IntermediateFamily {
    pub fn new(i: &MonomialIdeal, s: u32, box_limit: u128) -> Result<Self> {
        require_squarefree_proper(i)?;
        require_positive(s)?;
        let base = power(i, s);
        let top = symbolic_power(i, s, box_limit)?;
        debug_assert!(top.contains_ideal(&base));
        let extras = top
            .gens()
            .iter()
            .filter(|g| !base.contains_coords(g.coords()))
            .cloned()
            .collect();
        Ok(IntermediateFamily {
            s,
            base,
            top,
            extras,
        })
    }

    /// Indices into `extras` for each selected member, deterministic for a given selection.
    ///
    /// The empty subset (`I^s`) and the full subset (`I^(s)`) are always first.
    pub fn subsets(&self, selection: &Selection, cap: usize) -> Result<Vec<Vec<usize>>> {
        let k = self.extras.len();
        let all = |k: usize| -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = (0u64..1 << k)
                .map(|m| (0..k).filter(|b| m >> b & 1 == 1).collect())
                .collect();
            // empty first, full second, rest in mask order
            if k > 0 {
                let full = out.pop().unwrap();
                out.insert(1, full);
            }
            out
        };
        match selection {
            Selection::All => {
                if k > cap {
                    return Err(Error::Guard {
                        what: "intermediate ideals (use sample mode)",
                        estimate: 1u128 << k.min(127),
                        limit: 1u128 << cap.min(127),
                    });
                }
                Ok(all(k))
            }
            Selection::Sample { count, seed } => {
                if k < 63 && (1u64 << k) <= *count as u64 {
                    return Ok(all(k));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut seen: HashSet<Vec<usize>> = HashSet::new();
                let mut out = Vec::with_capacity(*count);
                for sub in [Vec::new(), (0..k).collect::<Vec<_>>()] {
                    if seen.insert(sub.clone()) {
                        out.push(sub);
                    }
                }
                while out.len() < *count {
                    let sub: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
                    if seen.insert(sub.clone()) {
                        out.push(sub);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn member(&self, subset: &[usize]) -> MonomialIdeal {
        let extra: Vec<Exponent> = subset.iter().map(|&k| self.extras[k].clone()).collect();
        crate::monomials::minimalize(self.base.n(), self.base.gens().iter().cloned().chain(extra))
            .expect("same ambient ring")
    }
}

/// Members of the intermediate family of `(I^s, I^(s))`, deduplicated.
pub fn intermediate_ideals(
    i: &MonomialIdeal,
    s: u32,
    selection: &Selection,
    cap: usize,
) -> Result<impl Iterator<Item = MonomialIdeal>> {
    let family = IntermediateFamily::new(i, s, DEFAULT_BOX_LIMIT)?;
    let subsets = family.subsets(selection, cap)?;
    let mut seen: HashSet<MonomialIdeal> = HashSet::new();
    Ok(subsets.into_iter().filter_map(move |sub| {
        let j = family.member(&sub);
        seen.insert(j.clone()).then_some(j)
    }))
}

/// Evaluates `Σ_{j ∈ N(F)} a_j + ord_I(Π_{u ∉ N[F]} x_u^{a_u}) ≥ s` for `I = I(G)`.
pub struct PowerCriterion {
    graph: Graph,
    powers: PowerTable,
}

impl PowerCriterion {
    pub fn new(graph: Graph) -> Result<Self> {
        let i = edge_ideal(&graph)?;
        Ok(PowerCriterion {
            graph,
            powers: PowerTable::new(i),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn powers(&self) -> &PowerTable {
        &self.powers
    }

    pub fn predict(&self, s: u32, a: &Exponent, f: VertexSet) -> Result<bool> {
        let n = self.graph.n();
        if a.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: a.len(),
            });
        }
        if !self.graph.is_independent(f) {
            return Err(Error::NotIndependent(f.to_string()));
        }
        let open = self.graph.neighborhood(f)?;
        let closed = open.union(f);
        let coords = a.coords();
        let near: u32 = open.iter().map(|j| coords[j]).sum();
        let far: Vec<u32> = (0..n)
            .map(|u| if closed.contains(u) { 0 } else { coords[u] })
            .collect();
        Ok(near + self.powers.ord_coords(&far) >= s)
    }
}

pub fn criterion_in_power_predict(g: &Graph, s: u32, a: &Exponent, f: VertexSet) -> Result<bool> {
    PowerCriterion::new(g.clone())?.predict(s, a, f)
}

/// Returns whether `Σ_{i ∉ F} a_i ≥ s` after checking the hypotheses under
/// which that bound must hold: `x^a ∉ J`, `f ∈ √(J : x^a)`, `f ∉ I`, and `F`
/// a facet of `Δ(I)` containing `supp f`.
pub fn criterion_in_sym_check(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: u32,
    a: &Exponent,
    f: VertexSet,
    facet: VertexSet,
) -> Result<bool> {
    require_squarefree_proper(i)?;
    let n = i.n();
    if j.contains(a)? {
        return Err(Error::Precondition(format!("x^a = {a} lies in J")));
    }
    let fx = Exponent::from_support(n, f);
    if !crate::monomials::radical_colon(j, a)?.contains(&fx)? {
        return Err(Error::Precondition(format!(
            "{fx} is not in the radical of J : x^a"
        )));
    }
    if i.contains(&fx)? {
        return Err(Error::Precondition(format!("{fx} lies in I")));
    }
    let delta = sr_complex(i)?;
    if !delta.facets().contains(&facet) || !f.is_subset(facet) {
        return Err(Error::Precondition(format!(
            "{facet} is not a facet containing {f}"
        )));
    }
    let outside: u32 = (0..n)
        .filter(|k| !facet.contains(*k))
        .map(|k| a.coords()[k])
        .sum();
    Ok(outside >= s)
}
