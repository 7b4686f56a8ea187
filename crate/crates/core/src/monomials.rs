//! Monomials and monomial ideals.
//!
//! A monomial `x^a` is stored as its dense exponent vector. A
//! [`MonomialIdeal`] always holds its unique minimal generating set, sorted
//! by total degree and then lexicographically, so structural equality is
//! ideal equality.

use std::cmp::Reverse;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The squarefree monomial `x_F`.
    pub fn from_support(n: usize, set: VertexSet) -> Self {
        Exponent((0..n).map(|i| set.contains(i) as u32).collect())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> VertexSet {
        support_of(&self.0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&c| c <= 1)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        divides(&self.0, &other.0)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `x^self / gcd(x^self, x^other)`.
    pub fn quotient(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Componentwise `min(a_i, 1)`.
    pub fn radical(&self) -> Exponent {
        Exponent(self.0.iter().map(|&c| c.min(1)).collect())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent(v.to_vec())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if c > 1 {
                write!(f, "^{c}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[inline]
pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[inline]
pub(crate) fn support_of(a: &[u32]) -> VertexSet {
    let mut m = 0u64;
    for (i, &c) in a.iter().enumerate() {
        if c > 0 {
            m |= 1 << i;
        }
    }
    VertexSet(m)
}

/// Support of `x^g / gcd(x^g, x^a)`: the variables where `g` exceeds `a`.
#[inline]
pub(crate) fn excess_support(g: &[u32], a: &[u32]) -> VertexSet {
    let mut m = 0u64;
    for (i, (x, y)) in g.iter().zip(a).enumerate() {
        if x > y {
            m |= 1 << i;
        }
    }
    VertexSet(m)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Exponent>,
}

fn canonical_order(gens: &mut [Exponent]) {
    gens.sort_unstable_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| Reverse(&a.0).cmp(&Reverse(&b.0)))
    });
}

fn minimal_elements(mut raw: Vec<Exponent>) -> Vec<Exponent> {
    raw.sort_unstable_by_key(|e| e.degree());
    let mut kept: Vec<Exponent> = Vec::with_capacity(raw.len());
    for e in raw {
        if !kept.iter().any(|k| divides(&k.0, &e.0)) {
            kept.push(e);
        }
    }
    canonical_order(&mut kept);
    kept
}

/// The ideal generated by `raw`, reduced to its minimal generators.
pub fn minimalize<I>(n: usize, raw: I) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Exponent>,
{
    let raw: Vec<Exponent> = raw.into_iter().collect();
    for e in &raw {
        e.check_len(n)?;
    }
    Ok(MonomialIdeal::from_minimal_unchecked(
        n,
        minimal_elements(raw),
    ))
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Exponent::zero(n)],
        }
    }

    /// Builds an ideal from generators given as coordinate arrays.
    pub fn from_coords<I, V>(n: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<u32>>,
    {
        minimalize(n, gens.into_iter().map(|v| Exponent(v.into())))
    }

    /// Trusted constructor for callers that already hold an antichain.
    pub(crate) fn from_minimal_unchecked(n: usize, mut gens: Vec<Exponent>) -> Self {
        canonical_order(&mut gens);
        MonomialIdeal { n, gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Exponent::is_squarefree)
    }

    /// Errors unless the ideal is non-zero and proper.
    pub fn require_nonzero_proper(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// Per-variable maximum generator degree.
    pub fn max_degrees(&self) -> Vec<u32> {
        let mut rho = vec![0; self.n];
        for g in &self.gens {
            for (r, &c) in rho.iter_mut().zip(&g.0) {
                *r = (*r).max(c);
            }
        }
        rho
    }

    pub fn contains(&self, f: &Exponent) -> Result<bool> {
        f.check_len(self.n)?;
        Ok(self.contains_coords(&f.0))
    }

    #[inline]
    pub(crate) fn contains_coords(&self, f: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(&g.0, f))
    }

    /// `I ⊆ self`, checked generator-wise.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_coords(&g.0))
    }

    fn check_same_n(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    /// `self + other`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_n(other)?;
        Ok(MonomialIdeal::from_minimal_unchecked(
            self.n,
            minimal_elements(self.gens.iter().chain(&other.gens).cloned().collect()),
        ))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} variables", self.n)
    }
}

pub fn multiply(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.check_same_n(j)?;
    let mut products = Vec::with_capacity(i.gens.len() * j.gens.len());
    for a in &i.gens {
        for b in &j.gens {
            products.push(a.mul(b));
        }
    }
    products.sort_unstable();
    products.dedup();
    Ok(MonomialIdeal::from_minimal_unchecked(
        i.n,
        minimal_elements(products),
    ))
}

/// `I^s` by repeated multiplication. `s = 0` gives the unit ideal.
pub fn power(i: &MonomialIdeal, s: u32) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(i.n);
    for _ in 0..s {
        acc = multiply(&acc, i).expect("same ambient ring");
    }
    acc
}

/// `I : x^a`.
pub fn colon(i: &MonomialIdeal, a: &Exponent) -> Result<MonomialIdeal> {
    a.check_len(i.n)?;
    Ok(MonomialIdeal::from_minimal_unchecked(
        i.n,
        minimal_elements(i.gens.iter().map(|g| g.quotient(a)).collect()),
    ))
}

pub fn radical(i: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::from_minimal_unchecked(
        i.n,
        minimal_elements(i.gens.iter().map(Exponent::radical).collect()),
    )
}

/// `√(I : x^a)`, generated by `√(g / gcd(g, x^a))` over the generators `g`.
pub fn radical_colon(i: &MonomialIdeal, a: &Exponent) -> Result<MonomialIdeal> {
    a.check_len(i.n)?;
    Ok(MonomialIdeal::from_minimal_unchecked(
        i.n,
        minimal_elements(i.gens.iter().map(|g| g.quotient(a).radical()).collect()),
    ))
}

/// Supports of the minimal generators of `√(I : x^a)`, as vertex sets.
///
/// An empty set in the result means `x^a ∈ I`.
pub(crate) fn radical_colon_supports(i: &MonomialIdeal, a: &[u32]) -> Vec<VertexSet> {
    crate::vertex_set::minimal_sets(i.gens.iter().map(|g| excess_support(&g.0, a)).collect())
}

pub fn intersect(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.check_same_n(j)?;
    let mut lcms = Vec::with_capacity(i.gens.len() * j.gens.len());
    for a in &i.gens {
        for b in &j.gens {
            lcms.push(a.lcm(b));
        }
    }
    lcms.sort_unstable();
    lcms.dedup();
    Ok(MonomialIdeal::from_minimal_unchecked(
        i.n,
        minimal_elements(lcms),
    ))
}

/// Coefficient-free partial derivative `∂* x^f / ∂* x^b`.
pub fn star_derivative(f: &Exponent, b: &Exponent) -> Result<Exponent> {
    b.check_len(f.len())?;
    Ok(f.quotient(b))
}

/// Cached powers of one ideal.
///
/// Powers are filled incrementally under a lock, so concurrent requests for
/// the same exponent observe a single computation.
pub struct PowerTable {
    base: MonomialIdeal,
    powers: Mutex<Vec<Arc<MonomialIdeal>>>,
}

impl PowerTable {
    pub fn new(base: MonomialIdeal) -> Self {
        let unit = Arc::new(MonomialIdeal::unit(base.n));
        PowerTable {
            base,
            powers: Mutex::new(vec![unit]),
        }
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn get(&self, s: u32) -> Arc<MonomialIdeal> {
        let mut powers = self.powers.lock().expect("power cache poisoned");
        while powers.len() <= s as usize {
            let next = multiply(powers.last().unwrap(), &self.base).expect("same ambient ring");
            powers.push(Arc::new(next));
        }
        Arc::clone(&powers[s as usize])
    }

    /// `ord_I(f) = max { t : f ∈ I^t }`.
    pub fn ord(&self, f: &Exponent) -> Result<u32> {
        self.base.require_nonzero_proper()?;
        f.check_len(self.base.n)?;
        Ok(self.ord_coords(&f.0))
    }

    pub(crate) fn ord_coords(&self, f: &[u32]) -> u32 {
        let min_deg = self
            .base
            .gens
            .iter()
            .map(Exponent::degree)
            .min()
            .unwrap_or(1)
            .max(1);
        let bound = f.iter().sum::<u32>() / min_deg;
        let mut t = 0;
        while t < bound && self.get(t + 1).contains_coords(f) {
            t += 1;
        }
        t
    }
}

pub fn ord(i: &MonomialIdeal, f: &Exponent) -> Result<u32> {
    PowerTable::new(i.clone()).ord(f)
}

/// Order of a monomial supported on a clique with respect to its edge ideal:
/// `min(|a| - max a_i, ⌊|a| / 2⌋)`.
pub fn clique_order(a: &[u32]) -> u32 {
    let total: u32 = a.iter().sum();
    let top = a.iter().copied().max().unwrap_or(0);
    (total - top).min(total / 2)
}

/// Result of polarizing a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `(original variable, copy index)` for each new variable, both 0-based.
    pub var_map: Vec<(usize, u32)>,
    pub original_n: usize,
}

impl Polarization {
    /// Collapses copies back onto their original variables.
    pub fn depolarize(&self, e: &Exponent) -> Exponent {
        let mut out = vec![0; self.original_n];
        for (k, &c) in e.0.iter().enumerate() {
            out[self.var_map[k].0] += c;
        }
        Exponent(out)
    }
}

/// Replaces `x_j^b` by the product of the first `b` copies of `x_j`.
pub fn polarize(i: &MonomialIdeal) -> Result<Polarization> {
    i.require_nonzero_proper()?;
    let rho = i.max_degrees();
    let mut offset = Vec::with_capacity(i.n);
    let mut var_map = Vec::new();
    for (j, &r) in rho.iter().enumerate() {
        offset.push(var_map.len());
        for c in 0..r {
            var_map.push((j, c));
        }
    }
    let big_n = var_map.len();
    let gens = i
        .gens
        .iter()
        .map(|g| {
            let mut v = vec![0u32; big_n];
            for (j, &b) in g.0.iter().enumerate() {
                for c in 0..b as usize {
                    v[offset[j] + c] = 1;
                }
            }
            Exponent(v)
        })
        .collect();
    Ok(Polarization {
        ideal: MonomialIdeal::from_minimal_unchecked(big_n, gens),
        var_map,
        original_n: i.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_coords(n, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[1, 1], &[2, 1]]), ideal(2, &[&[1, 1]]));
        assert!(minimalize(2, vec![]).unwrap().is_zero());
        assert_eq!(
            ideal(2, &[&[1, 0], &[0, 1], &[1, 1]]).gens(),
            &[e(&[1, 0]), e(&[0, 1])]
        );
        assert_eq!(
            minimalize(2, vec![e(&[1, 0, 0])]),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn contains_examples() {
        let i = ideal(2, &[&[1, 1]]);
        assert!(i.contains(&e(&[2, 3])).unwrap());
        assert!(!i.contains(&e(&[5, 0])).unwrap());
        assert!(!MonomialIdeal::zero(2).contains(&e(&[3, 3])).unwrap());
    }

    #[test]
    fn power_examples() {
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(
            power(&i, 2),
            ideal(4, &[&[2, 2, 0, 0], &[1, 1, 1, 1], &[0, 0, 2, 2]])
        );
        assert_eq!(power(&ideal(1, &[&[1]]), 3), ideal(1, &[&[3]]));
        assert!(power(&i, 0).is_unit());
    }

    #[test]
    fn colon_examples() {
        assert_eq!(
            colon(&ideal(2, &[&[2, 1]]), &e(&[1, 0])).unwrap(),
            ideal(2, &[&[1, 1]])
        );
        assert!(colon(&ideal(2, &[&[1, 1]]), &e(&[1, 1])).unwrap().is_unit());
        assert_eq!(
            colon(&ideal(3, &[&[1, 1, 0], &[0, 1, 1]]), &e(&[0, 1, 0])).unwrap(),
            ideal(3, &[&[1, 0, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&ideal(2, &[&[2, 3]])), ideal(2, &[&[1, 1]]));
        let i = ideal(3, &[&[2, 1, 0], &[0, 3, 1]]);
        assert_eq!(radical_colon(&i, &Exponent::zero(3)).unwrap(), radical(&i));
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord(&ideal(2, &[&[1, 1]]), &e(&[3, 2])).unwrap(), 2);
        let triangle = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(ord(&triangle, &e(&[3, 1, 1])).unwrap(), 2);
        assert_eq!(ord(&triangle, &Exponent::zero(3)).unwrap(), 0);
        assert_eq!(
            ord(&MonomialIdeal::zero(2), &e(&[1, 1])),
            Err(Error::ZeroIdeal)
        );
        assert_eq!(
            ord(&MonomialIdeal::unit(2), &e(&[1, 1])),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn clique_order_examples() {
        assert_eq!(clique_order(&[3, 1, 1]), 2);
        assert_eq!(clique_order(&[5, 1]), 1);
        // (2,2,2): brute-force ord on the triangle edge ideal gives 3.
        let triangle = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(ord(&triangle, &e(&[2, 2, 2])).unwrap(), 3);
        assert_eq!(clique_order(&[2, 2, 2]), 3);
    }

    #[test]
    fn star_derivative_examples() {
        assert_eq!(
            star_derivative(&e(&[2, 1]), &e(&[1, 0])).unwrap(),
            e(&[1, 1])
        );
        assert_eq!(star_derivative(&e(&[1]), &e(&[2])).unwrap(), e(&[0]));
        assert_eq!(
            star_derivative(&e(&[1, 1, 1]), &e(&[0, 1, 1])).unwrap(),
            e(&[1, 0, 0])
        );
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            intersect(&ideal(2, &[&[1, 0]]), &ideal(2, &[&[0, 1]])).unwrap(),
            ideal(2, &[&[1, 1]])
        );
        assert_eq!(
            intersect(&ideal(2, &[&[1, 1]]), &ideal(2, &[&[1, 0]])).unwrap(),
            ideal(2, &[&[1, 1]])
        );
        assert_eq!(
            intersect(
                &ideal(3, &[&[1, 0, 0], &[0, 1, 0]]),
                &ideal(3, &[&[0, 1, 0], &[0, 0, 1]])
            )
            .unwrap(),
            ideal(3, &[&[0, 1, 0], &[1, 0, 1]])
        );
    }

    #[test]
    fn polarize_examples() {
        let p = polarize(&ideal(1, &[&[2]])).unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[1, 1]]));
        assert_eq!(p.var_map, vec![(0, 0), (0, 1)]);

        let p = polarize(&ideal(2, &[&[1, 1]])).unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[1, 1]]));

        let p = polarize(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        // variables: y11 y12 y21
        assert_eq!(p.ideal, ideal(3, &[&[1, 1, 0], &[1, 0, 1]]));
        assert_eq!(
            polarize(&MonomialIdeal::zero(2)).unwrap_err(),
            Error::ZeroIdeal
        );
    }

    #[test]
    fn display_round_trip_text() {
        let i = ideal(3, &[&[2, 0, 1], &[0, 1, 0]]);
        assert_eq!(i.to_string(), "(x2, x1^2*x3)");
        assert_eq!(Exponent::zero(2).to_string(), "1");
    }

    fn arb_ideal(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens)
            .prop_map(move |g| MonomialIdeal::from_coords(n, g).unwrap())
    }

    proptest! {
        #[test]
        fn minimalize_idempotent_and_order_free(
            raw in prop::collection::vec(prop::collection::vec(0u32..4, 3), 0..8)
        ) {
            let once = MonomialIdeal::from_coords(3, raw.clone()).unwrap();
            let twice = minimalize(3, once.gens().to_vec()).unwrap();
            prop_assert_eq!(&once, &twice);
            let mut rev = raw.clone();
            rev.reverse();
            prop_assert_eq!(once, MonomialIdeal::from_coords(3, rev).unwrap());
        }

        #[test]
        fn power_membership_is_monotone(i in arb_ideal(3, 3, 2), f in prop::collection::vec(0u32..5, 3)) {
            let f = Exponent::new(f);
            let table = PowerTable::new(i);
            let mut prev = true;
            for s in 0..5 {
                let now = table.get(s).contains(&f).unwrap();
                prop_assert!(prev || !now);
                prev = now;
            }
        }

        #[test]
        fn ord_superadditive_and_monotone(
            i in arb_ideal(3, 3, 2),
            f in prop::collection::vec(0u32..4, 3),
            g in prop::collection::vec(0u32..4, 3),
        ) {
            prop_assume!(!i.is_unit());
            let table = PowerTable::new(i);
            let (f, g) = (Exponent::new(f), Exponent::new(g));
            let fg = f.mul(&g);
            prop_assert!(table.ord(&fg).unwrap() >= table.ord(&f).unwrap() + table.ord(&g).unwrap());
            let d = f.gcd(&g);
            prop_assert!(table.ord(&d).unwrap() <= table.ord(&f).unwrap());
        }

        #[test]
        fn radical_colon_matches_composition(i in arb_ideal(4, 5, 3), a in prop::collection::vec(0u32..4, 4)) {
            let a = Exponent::new(a);
            let direct = radical_colon(&i, &a).unwrap();
            prop_assert_eq!(&direct, &radical(&colon(&i, &a).unwrap()));
            let from_generators = minimalize(4, i.gens().iter().map(|g| g.quotient(&a.gcd(g)).radical())).unwrap();
            prop_assert_eq!(direct, from_generators);
        }

        #[test]
        fn polarization_is_squarefree_and_reversible(i in arb_ideal(3, 4, 3)) {
            prop_assume!(!i.is_unit());
            let p = polarize(&i).unwrap();
            prop_assert!(p.ideal.is_squarefree());
            let back = minimalize(3, p.ideal.gens().iter().map(|g| p.depolarize(g))).unwrap();
            prop_assert_eq!(back, i);
        }
    }
}
