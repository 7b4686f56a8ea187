//! Castelnuovo–Mumford regularity of monomial ideals.
//!
//! The main route scans exponents `a` in the box `a_j < ρ_j` and reads
//! `reg(S/I)` off the reduced homology of links in the degree complexes
//! `Δ_a(I)`. Outside the box every degree complex is a cone over some `j` with
//! `a_j > 0` (or void), so all admissible links are cones and contribute
//! nothing. The oracle route polarizes and applies the squarefree links
//! formula to `Δ(I^pol)`; it shares only the homology kernels with the scan.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::complexes::{degree_complex, sr_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, reduced_homology_from_nonfaces, Field};
use crate::monomials::{polarize, radical_colon_supports, Exponent, MonomialIdeal};
use crate::vertex_set::{minimal_sets, VertexSet};

/// Default guard on the number of box cells scanned.
pub const DEFAULT_BOX_LIMIT: u128 = 10_000_000;

/// Default guard on the number of variables after polarization.
pub const DEFAULT_MAX_POLARIZED_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegOptions {
    pub field: Field,
    pub box_limit: u128,
}

impl Default for RegOptions {
    fn default() -> Self {
        RegOptions {
            field: Field::default(),
            box_limit: DEFAULT_BOX_LIMIT,
        }
    }
}

impl RegOptions {
    pub fn with_field(field: Field) -> Self {
        RegOptions {
            field,
            ..Self::default()
        }
    }
}

/// An extremal exponent `(a, i)` together with the face `F` whose link carries
/// `H̃_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub a: Exponent,
    pub face: VertexSet,
    pub i: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    /// `reg(S/I)`.
    pub reg_module: i64,
    /// `reg(I) = reg(S/I) + 1`; absent for the zero ideal.
    pub reg_ideal: Option<i64>,
    pub field: Field,
    /// Every maximizing `(a, F, i)`, sorted by `a`, then `F`, then `i`.
    pub witnesses: Vec<Witness>,
    pub gamma_box: Vec<u32>,
}

/// `ρ_j`, the largest exponent of `x_j` among the minimal generators.
pub fn gamma_bound(i: &MonomialIdeal) -> Result<Vec<u32>> {
    i.require_nonzero_proper()?;
    Ok(i.max_degrees())
}

fn box_cells(bounds: &[u32]) -> u128 {
    bounds
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128))
        .unwrap_or(u128::MAX)
}

fn decode_cell(mut index: u64, bounds: &[u32], out: &mut [u32]) {
    for (slot, &b) in out.iter_mut().zip(bounds) {
        *slot = (index % b as u64) as u32;
        index /= b as u64;
    }
}

/// Faces of a complex with a non-acyclic, non-cone link, each with a bitmask
/// of the `i` for which `H̃_{i-1}(lk F) ≠ 0`.
type LinkProfile = Arc<Vec<(VertexSet, u64)>>;

/// Link profiles keyed by ground set size, field, fault flag and minimal
/// nonfaces. Shared across scans because related ideals (the members of an
/// intermediate family, say) meet the same degree complexes over and over.
type ProfileKey = (usize, Field, bool, Vec<VertexSet>);

const PROFILE_CACHE_LIMIT: usize = 1 << 18;

fn profile_cache() -> &'static DashMap<ProfileKey, LinkProfile> {
    static CACHE: OnceLock<DashMap<ProfileKey, LinkProfile>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

fn cached_profile(n: usize, nonfaces: Vec<VertexSet>, field: Field) -> LinkProfile {
    let cache = profile_cache();
    let key = (
        n,
        field,
        crate::homology::fault_injection_enabled(),
        nonfaces,
    );
    if let Some(p) = cache.get(&key) {
        return Arc::clone(&p);
    }
    let delta = SimplicialComplex::from_nonfaces(n, &key.3);
    let p: LinkProfile = Arc::new(link_profile(&delta, field));
    if cache.len() >= PROFILE_CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, Arc::clone(&p));
    p
}

fn link_profile(delta: &SimplicialComplex, field: Field) -> Vec<(VertexSet, u64)> {
    let mut out = Vec::new();
    for f in delta.faces() {
        let link = delta.link_unchecked(f);
        if link.cone_point().is_some() {
            continue;
        }
        let mask = reduced_homology(&link, field)
            .nonzero_degrees()
            .fold(0u64, |m, d| m | 1 << (d + 1));
        if mask != 0 {
            out.push((f, mask));
        }
    }
    out
}

#[derive(Default)]
struct Best {
    value: Option<i64>,
    witnesses: Vec<Witness>,
}

impl Best {
    fn offer(&mut self, value: i64, w: Witness) {
        match self.value {
            Some(v) if v > value => {}
            Some(v) if v == value => self.witnesses.push(w),
            _ => {
                self.value = Some(value);
                self.witnesses.clear();
                self.witnesses.push(w);
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        match (self.value, other.value) {
            (_, None) => self,
            (None, _) => other,
            (Some(x), Some(y)) if x > y => self,
            (Some(x), Some(y)) if x < y => other,
            _ => {
                self.witnesses.extend(other.witnesses);
                self
            }
        }
    }
}

/// `reg(S/I)` by scanning the box `0 ≤ a_j < bounds_j`.
fn scan(i: &MonomialIdeal, bounds: &[u32], field: Field, box_limit: u128) -> Result<Best> {
    let n = i.n();
    let cells = box_cells(bounds);
    if cells > box_limit {
        return Err(Error::Guard {
            what: "regularity box",
            estimate: cells,
            limit: box_limit,
        });
    }
    let best = (0..cells as u64)
        .into_par_iter()
        .fold(Best::default, |mut best, index| {
            let mut a = vec![0u32; n];
            decode_cell(index, bounds, &mut a);
            let nonfaces = radical_colon_supports(i, &a);
            if nonfaces.first().is_some_and(|s| s.is_empty()) {
                return best; // x^a ∈ I: the degree complex is void
            }
            let profile = cached_profile(n, nonfaces, field);
            let supp = crate::monomials::support_of(&a);
            let degree: i64 = a.iter().map(|&x| x as i64).sum();
            for &(face, mask) in profile.iter() {
                if !face.is_disjoint(supp) {
                    continue;
                }
                let top = 63 - mask.leading_zeros();
                let value = degree + top as i64;
                if best.value.is_some_and(|v| v > value) {
                    continue;
                }
                // lower degrees of the same link cannot reach the maximum at this a
                best.offer(
                    value,
                    Witness {
                        a: Exponent::new(a.clone()),
                        face,
                        i: top,
                    },
                );
            }
            best
        })
        .reduce(Best::default, Best::merge);
    Ok(best)
}

fn certificate(
    i: &MonomialIdeal,
    bounds: &[u32],
    field: Field,
    box_limit: u128,
) -> Result<RegularityCertificate> {
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if i.is_zero() {
        return Ok(RegularityCertificate {
            reg_module: 0,
            reg_ideal: None,
            field,
            witnesses: Vec::new(),
            gamma_box: vec![0; i.n()],
        });
    }
    let best = scan(i, bounds, field, box_limit)?;
    let reg_module = best
        .value
        .expect("a = 0 always contributes a facet with lk = {∅}");
    let mut witnesses = best.witnesses;
    witnesses.sort_unstable_by(|x, y| {
        x.a.cmp(&y.a)
            .then_with(|| x.face.graded_cmp(&y.face))
            .then(x.i.cmp(&y.i))
    });
    Ok(RegularityCertificate {
        reg_module,
        reg_ideal: Some(reg_module + 1),
        field,
        witnesses,
        gamma_box: i.max_degrees(),
    })
}

/// Regularity by the degree-complex scan over the box `a_j < ρ_j`.
pub fn reg_takayama(i: &MonomialIdeal, opts: &RegOptions) -> Result<RegularityCertificate> {
    let bounds: Vec<u32> = i.max_degrees().into_iter().map(|r| r.max(1)).collect();
    certificate(i, &bounds, opts.field, opts.box_limit)
}

/// The same scan over the enlarged box `a_j ≤ ρ_j + extra - 1`; used to check
/// that the box restriction loses nothing.
pub fn reg_takayama_with_box(
    i: &MonomialIdeal,
    opts: &RegOptions,
    extra: u32,
) -> Result<RegularityCertificate> {
    let bounds: Vec<u32> = i
        .max_degrees()
        .into_iter()
        .map(|r| r.max(1) + extra)
        .collect();
    certificate(i, &bounds, opts.field, opts.box_limit)
}

/// Per-cell data shared by all members of a family `base + (chosen extras)`.
struct FamilyCell {
    a: Vec<u32>,
    base_nonfaces: Vec<VertexSet>,
    base_value: Option<i64>,
    /// Extras that change the degree complex here; an empty support means the
    /// extra divides `x^a`.
    relevant: Vec<(usize, VertexSet)>,
}

fn cell_value(profile: &[(VertexSet, u64)], supp: VertexSet, degree: i64) -> Option<i64> {
    profile
        .iter()
        .filter(|(face, _)| face.is_disjoint(supp))
        .map(|&(_, mask)| degree + (63 - mask.leading_zeros()) as i64)
        .max()
}

/// `reg J` for each `J = base + (extras[k] : k ∈ selection)`.
///
/// Equivalent to calling [`reg_takayama`] on every member, but the colon
/// supports of `base` and of each extra are computed once per cell, and cells
/// where no chosen extra matters reuse the value of `base`. Each member is
/// still scanned over its own box.
pub fn reg_of_sums(
    base: &MonomialIdeal,
    extras: &[Exponent],
    selections: &[Vec<usize>],
    opts: &RegOptions,
) -> Result<Vec<i64>> {
    base.require_nonzero_proper()?;
    let n = base.n();
    if let Some(e) = extras.iter().find(|e| e.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: e.len(),
        });
    }
    let mut member_bounds = Vec::with_capacity(selections.len());
    for sel in selections {
        let gens = base
            .gens()
            .iter()
            .cloned()
            .chain(sel.iter().map(|&k| extras[k].clone()));
        let j = crate::monomials::minimalize(n, gens)?;
        if j.is_unit() {
            return Err(Error::UnitIdeal);
        }
        member_bounds.push(
            j.max_degrees()
                .into_iter()
                .map(|r| r.max(1))
                .collect::<Vec<u32>>(),
        );
    }
    let mut bounds = vec![1u32; n];
    for b in &member_bounds {
        for (x, &y) in bounds.iter_mut().zip(b) {
            *x = (*x).max(y);
        }
    }
    let cells = box_cells(&bounds);
    if cells > opts.box_limit {
        return Err(Error::Guard {
            what: "regularity box",
            estimate: cells,
            limit: opts.box_limit,
        });
    }
    let field = opts.field;
    let table: Vec<FamilyCell> = (0..cells as u64)
        .into_par_iter()
        .filter_map(|index| {
            let mut a = vec![0u32; n];
            decode_cell(index, &bounds, &mut a);
            let base_nonfaces = radical_colon_supports(base, &a);
            if base_nonfaces.first().is_some_and(|s| s.is_empty()) {
                return None;
            }
            let relevant = extras
                .iter()
                .enumerate()
                .map(|(k, e)| (k, crate::monomials::excess_support(e.coords(), &a)))
                .filter(|&(_, s)| !base_nonfaces.iter().any(|m| m.is_subset(s)))
                .collect();
            let supp = crate::monomials::support_of(&a);
            let degree: i64 = a.iter().map(|&x| x as i64).sum();
            let base_value = cell_value(
                &cached_profile(n, base_nonfaces.clone(), field),
                supp,
                degree,
            );
            Some(FamilyCell {
                a,
                base_nonfaces,
                base_value,
                relevant,
            })
        })
        .collect();
    selections
        .par_iter()
        .zip(&member_bounds)
        .map(|(sel, jb)| {
            let mut chosen = vec![false; extras.len()];
            sel.iter().for_each(|&k| chosen[k] = true);
            let mut best: Option<i64> = None;
            for cell in &table {
                if cell.a.iter().zip(jb).any(|(x, b)| x >= b) {
                    continue;
                }
                let mut picked = cell.relevant.iter().filter(|(k, _)| chosen[*k]).peekable();
                let value = if picked.peek().is_none() {
                    cell.base_value
                } else {
                    let extra: Vec<VertexSet> = picked.map(|&(_, s)| s).collect();
                    if extra.iter().any(|s| s.is_empty()) {
                        continue;
                    }
                    let mut nonfaces = cell.base_nonfaces.clone();
                    nonfaces.extend(extra);
                    let nonfaces = minimal_sets(nonfaces);
                    let supp = crate::monomials::support_of(&cell.a);
                    let degree: i64 = cell.a.iter().map(|&x| x as i64).sum();
                    cell_value(&cached_profile(n, nonfaces, field), supp, degree)
                };
                best = best.max(value);
            }
            Ok(best.expect("a = 0 always contributes a facet with lk = {∅}") + 1)
        })
        .collect()
}

/// `reg(S/I_Δ) = max { i : H̃_{i-1}(lk F) ≠ 0 for some F ∈ Δ }`.
///
/// Links are described by their minimal nonfaces `{N \ F}` on the ground set
/// `[n] \ F` and their homology is taken through the nerve of the Alexander
/// dual when that is cheap.
pub fn reg_squarefree_links(delta: &SimplicialComplex, field: Field) -> Result<i64> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    let all = VertexSet::full(delta.n());
    let nonfaces = delta.minimal_nonfaces();
    let faces = delta.faces();
    let cache: DashMap<(VertexSet, Vec<VertexSet>), i64> = DashMap::new();
    let eval = |f: &VertexSet| -> Result<i64> {
        let ground = all.difference(*f);
        let link_nonfaces = minimal_sets(nonfaces.iter().map(|m| m.difference(*f)).collect());
        let key = (ground, link_nonfaces);
        if let Some(v) = cache.get(&key) {
            return Ok(*v);
        }
        let uncovered = key.1.iter().fold(ground, |g, m| g.difference(*m));
        let value = if !uncovered.is_empty() {
            -1 // cone
        } else {
            let h = if key.1.len() <= 16 {
                reduced_homology_from_nonfaces(ground, &key.1, field)?
            } else {
                reduced_homology(&delta.link_unchecked(*f), field)
            };
            h.nonzero_degrees()
                .map(|d| d as i64 + 1)
                .max()
                .unwrap_or(-1)
        };
        cache.insert(key, value);
        Ok(value)
    };
    let best = if faces.len() > 512 {
        faces
            .par_iter()
            .map(eval)
            .try_reduce(|| -1, |x, y| Ok(x.max(y)))?
    } else {
        faces
            .iter()
            .map(eval)
            .try_fold(-1, |acc, v| v.map(|v| acc.max(v)))?
    };
    debug_assert!(best >= 0, "every facet has link {{∅}}");
    Ok(best)
}

/// `reg(S/I)` through polarization and the squarefree links formula.
pub fn reg_polarization_oracle(i: &MonomialIdeal, field: Field, max_vars: usize) -> Result<i64> {
    i.require_nonzero_proper()?;
    let pol = polarize(i)?;
    let big_n = pol.ideal.n();
    if big_n > max_vars {
        return Err(Error::Guard {
            what: "polarized variables",
            estimate: big_n as u128,
            limit: max_vars as u128,
        });
    }
    reg_squarefree_links(&sr_complex(&pol.ideal)?, field)
}

/// `I_V`: the generators of `I` supported inside `V`.
pub fn restrict_ideal(i: &MonomialIdeal, v: VertexSet) -> MonomialIdeal {
    MonomialIdeal::from_minimal_unchecked(
        i.n(),
        i.gens()
            .iter()
            .filter(|g| g.support().is_subset(v))
            .cloned()
            .collect(),
    )
}

/// Re-checks the homology condition of a witness from scratch.
pub fn verify_witness(i: &MonomialIdeal, w: &Witness, field: Field) -> Result<bool> {
    let delta = degree_complex(i, &w.a)?;
    if w.i == 0 && delta.is_void() {
        return Ok(false);
    }
    if !delta.is_face(w.face) || !w.face.is_disjoint(w.a.support()) {
        return Ok(false);
    }
    let link = delta.link(w.face)?;
    Ok(reduced_homology(&link, field).dim(w.i as i32 - 1) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::sr_ideal;
    use crate::monomials::power;
    use proptest::prelude::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_coords(n, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    fn reg_ideal(i: &MonomialIdeal) -> i64 {
        reg_takayama(i, &RegOptions::default())
            .unwrap()
            .reg_ideal
            .unwrap()
    }

    #[test]
    fn gamma_examples() {
        let p = power(&ideal(2, &[&[1, 1]]), 2);
        assert_eq!(gamma_bound(&p).unwrap(), vec![2, 2]);
        assert_eq!(
            gamma_bound(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap(),
            vec![2, 1]
        );
        assert!(gamma_bound(&MonomialIdeal::zero(2)).is_err());
    }

    #[test]
    fn small_regularities() {
        let c = reg_takayama(&ideal(2, &[&[1, 1]]), &RegOptions::default()).unwrap();
        assert_eq!((c.reg_module, c.reg_ideal), (1, Some(2)));
        let ci = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(reg_ideal(&power(&ci, 2)), 5);
        assert_eq!(reg_ideal(&power(&ci, 3)), 7);
        let z = reg_takayama(&MonomialIdeal::zero(3), &RegOptions::default()).unwrap();
        assert_eq!((z.reg_module, z.reg_ideal), (0, None));
        assert!(z.witnesses.is_empty());
        assert_eq!(
            reg_takayama(&MonomialIdeal::unit(3), &RegOptions::default()),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn witnesses_verify_and_are_sorted() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 3, 1]]);
        let c = reg_takayama(&i, &RegOptions::default()).unwrap();
        assert!(!c.witnesses.is_empty());
        for w in &c.witnesses {
            assert!(verify_witness(&i, w, c.field).unwrap());
            assert_eq!(w.a.degree() as i64 + w.i as i64, c.reg_module);
            assert!(w
                .a
                .coords()
                .iter()
                .zip(&c.gamma_box)
                .all(|(&x, &r)| x < r.max(1)));
        }
        assert!(c.witnesses.windows(2).all(|p| p[0].a <= p[1].a));
    }

    #[test]
    fn squarefree_links_examples() {
        let two_points = SimplicialComplex::from_labels(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(
            reg_squarefree_links(&two_points, Field::Prime(2)).unwrap(),
            1
        );
        let hollow =
            SimplicialComplex::from_labels(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        assert_eq!(reg_squarefree_links(&hollow, Field::Prime(2)).unwrap(), 2);
        assert_eq!(
            reg_squarefree_links(&SimplicialComplex::simplex(4), Field::Rational).unwrap(),
            0
        );
        assert_eq!(
            reg_squarefree_links(&SimplicialComplex::void(2), Field::Rational),
            Err(Error::VoidComplex)
        );
    }

    #[test]
    fn oracle_matches_on_fixed_ideal() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        let scan = reg_takayama(&i, &RegOptions::default()).unwrap().reg_module;
        assert_eq!(
            scan,
            reg_polarization_oracle(&i, Field::Prime(2), DEFAULT_MAX_POLARIZED_VARS).unwrap()
        );
        assert!(reg_polarization_oracle(&power(&i, 4), Field::Prime(2), 4).is_err());
    }

    #[test]
    fn restriction_examples() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(
            restrict_ideal(&i, VertexSet::from_vertices([0, 1])),
            ideal(3, &[&[1, 1, 0]])
        );
        assert_eq!(restrict_ideal(&i, VertexSet::full(3)), i);
        assert!(restrict_ideal(&i, VertexSet::singleton(0)).is_zero());
    }

    #[test]
    fn square_chain_cube_has_regularity_seven() {
        let delta = SimplicialComplex::from_labels(
            6,
            &[
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![1, 4],
                vec![4, 5],
                vec![5, 6],
                vec![2, 6],
            ],
        )
        .unwrap();
        let i = sr_ideal(&delta).unwrap();
        assert_eq!(reg_ideal(&power(&i, 3)), 7);
    }

    fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=4)
                .prop_map(move |g| MonomialIdeal::from_coords(n, g).unwrap())
                .prop_filter("proper", |i| !i.is_unit())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn family_scan_matches_member_scans(
            (i, extras, picks) in arb_ideal().prop_flat_map(|i| {
                let n = i.n();
                (
                    Just(i),
                    prop::collection::vec(prop::collection::vec(0u32..=3, n), 0..=4),
                    prop::collection::vec(prop::collection::vec(any::<bool>(), 4), 1..=6),
                )
            })
        ) {
            let extras: Vec<Exponent> = extras
                .into_iter()
                .map(Exponent::new)
                .filter(|e| e.degree() > 0)
                .collect();
            let selections: Vec<Vec<usize>> = picks
                .iter()
                .map(|p| (0..extras.len()).filter(|&k| p[k]).collect())
                .collect();
            let opts = RegOptions::default();
            let fast = reg_of_sums(&i, &extras, &selections, &opts).unwrap();
            for (sel, r) in selections.iter().zip(fast) {
                let gens = i.gens().iter().cloned().chain(sel.iter().map(|&k| extras[k].clone()));
                let j = crate::monomials::minimalize(i.n(), gens).unwrap();
                prop_assert_eq!(reg_takayama(&j, &opts).unwrap().reg_ideal, Some(r));
            }
        }

        #[test]
        fn scan_matches_oracle(i in arb_ideal()) {
            let scan = reg_takayama(&i, &RegOptions::default()).unwrap();
            let oracle = reg_polarization_oracle(&i, Field::Prime(2), DEFAULT_MAX_POLARIZED_VARS).unwrap();
            prop_assert_eq!(scan.reg_module, oracle);
            for w in &scan.witnesses {
                prop_assert!(verify_witness(&i, w, Field::Prime(2)).unwrap());
            }
        }

        #[test]
        fn enlarged_box_changes_nothing(i in arb_ideal()) {
            let opts = RegOptions::default();
            prop_assert_eq!(
                reg_takayama(&i, &opts).unwrap().reg_module,
                reg_takayama_with_box(&i, &opts, 1).unwrap().reg_module
            );
        }

        #[test]
        fn squarefree_bounded_by_dimension(i in arb_ideal()) {
            let r = crate::monomials::radical(&i);
            let delta = sr_complex(&r).unwrap();
            let reg = reg_squarefree_links(&delta, Field::Rational).unwrap();
            prop_assert!(reg <= delta.dim().unwrap() as i64 + 1);
        }
    }
}
