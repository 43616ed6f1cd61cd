//! Sparse complex Clifford algebra over an ordered generator set.
//!
//! Every generator squares to `-1` and distinct generators anticommute. A
//! blade `e_L` is stored as a bitmask over generator positions and always
//! means the product taken in ascending position order. For the doubled
//! index set of a register the order is `e_a, e'_a, e_b, e'_b, ...` with
//! labels in canonical order, which lines blades up one-to-one with the
//! Jordan-Wigner matrices of the dense oracle.

mod action;
mod exp;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{i_pow, negligible, C64, I, ONE, ZERO};
use crate::sq::{IndexLabel, IndexSet, Sign};

pub use action::act_on_state;
pub use exp::{
    exp, exponential_gate, gate_multiplier, one_gate, one_gate_quaternion, quaternion_gate,
    unitarity_defect, GateSpec, EXP_TERM_CUTOFF, QUATERNION_TOLERANCE,
};

/// Largest number of generators in one algebra (one bit per generator).
pub const MAX_GENERATORS: usize = 64;

/// `e_a` (`primed == false`) or `e'_a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorLabel {
    pub index: IndexLabel,
    pub primed: bool,
}

impl GeneratorLabel {
    pub fn plain(index: IndexLabel) -> Self {
        GeneratorLabel {
            index,
            primed: false,
        }
    }

    pub fn primed(index: IndexLabel) -> Self {
        GeneratorLabel {
            index,
            primed: true,
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "e'[{}]", self.index)
        } else {
            write!(f, "e[{}]", self.index)
        }
    }
}

/// Ordered, duplicate-free generator collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet(Arc<[GeneratorLabel]>);

impl GeneratorSet {
    pub fn new(generators: impl IntoIterator<Item = GeneratorLabel>) -> Result<Self> {
        let mut gens: Vec<GeneratorLabel> = generators.into_iter().collect();
        gens.sort();
        if let Some(w) = gens.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "generator {} listed twice",
                w[0]
            )));
        }
        if gens.len() > MAX_GENERATORS {
            return Err(Error::TooManyModes {
                found: gens.len(),
                limit: MAX_GENERATORS,
            });
        }
        Ok(GeneratorSet(gens.into()))
    }

    /// `2ℐ`: both `e_a` and `e'_a` for every label.
    pub fn doubled(index_set: &IndexSet) -> Result<Self> {
        Self::new(index_set.labels().iter().flat_map(|l| {
            [
                GeneratorLabel::plain(l.clone()),
                GeneratorLabel::primed(l.clone()),
            ]
        }))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorLabel] {
        &self.0
    }

    pub fn position(&self, g: &GeneratorLabel) -> Option<usize> {
        self.0.binary_search(g).ok()
    }

    pub fn require(&self, g: &GeneratorLabel) -> Result<usize> {
        self.position(g).ok_or(Error::GeneratorSetMismatch)
    }

    pub fn contains(&self, g: &GeneratorLabel) -> bool {
        self.position(g).is_some()
    }

    /// A copy with one more generator.
    pub fn with(&self, g: GeneratorLabel) -> Result<Self> {
        if self.contains(&g) {
            return Err(Error::GeneratorSetMismatch);
        }
        Self::new(self.0.iter().cloned().chain([g]))
    }

    /// The index set whose doubled set this is, if any.
    pub fn as_doubled(&self) -> Option<IndexSet> {
        if !self.len().is_multiple_of(2) {
            return None;
        }
        let labels: Vec<IndexLabel> = self.0.iter().step_by(2).map(|g| g.index.clone()).collect();
        let set = IndexSet::new(labels).ok()?;
        (GeneratorSet::doubled(&set).ok()? == *self).then_some(set)
    }

    /// Every blade, `0..2^n`.
    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        let n = self.len();
        (0..(1u128 << n)).map(|b| Blade(b as u64))
    }

    pub fn blade_labels(&self, blade: Blade) -> Vec<GeneratorLabel> {
        blade.positions().map(|p| self.0[p].clone()).collect()
    }
}

/// A set of generators, read as their product in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn single(position: usize) -> Self {
        Blade(1 << position)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |p| self.0 >> p & 1 == 1)
    }

    pub fn contains(self, position: usize) -> bool {
        self.0 >> position & 1 == 1
    }
}

/// `σ(l) = l(l+1)/2 mod 2`; `e_L² = (-1)^σ(l)` for a blade of grade `l`.
pub fn sigma(grade: usize) -> usize {
    (grade * (grade + 1) / 2) % 2
}

/// `e_A e_B = sign · e_{A xor B}`.
pub fn blade_product(a: Blade, b: Blade) -> (Sign, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    // each shared generator squares to -1
    let squares = (a.0 & b.0).count_ones();
    (
        Sign::from_parity((swaps + squares) as usize),
        Blade(a.0 ^ b.0),
    )
}

/// Sparse multivector of `Cl(n, C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement {
    gens: GeneratorSet,
    terms: BTreeMap<Blade, C64>,
}

impl CliffordElement {
    pub fn zero(gens: &GeneratorSet) -> Self {
        CliffordElement {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(gens: &GeneratorSet, value: C64) -> Self {
        Self::from_terms(gens, [(Blade::SCALAR, value)])
    }

    pub fn identity(gens: &GeneratorSet) -> Self {
        Self::scalar(gens, ONE)
    }

    pub fn generator(gens: &GeneratorSet, g: &GeneratorLabel) -> Result<Self> {
        let p = gens.require(g)?;
        Ok(Self::from_terms(gens, [(Blade::single(p), ONE)]))
    }

    /// Product of the listed generators in the given order.
    pub fn product_of(gens: &GeneratorSet, factors: &[GeneratorLabel]) -> Result<Self> {
        let mut sign = Sign::Plus;
        let mut blade = Blade::SCALAR;
        for g in factors {
            let (s, b) = blade_product(blade, Blade::single(gens.require(g)?));
            sign = sign * s;
            blade = b;
        }
        Ok(Self::from_terms(gens, [(blade, sign.to_complex())]))
    }

    pub fn from_terms(gens: &GeneratorSet, terms: impl IntoIterator<Item = (Blade, C64)>) -> Self {
        Self::from_terms_pruned(gens, terms, true)
    }

    /// With `prune == false` only exact zeros are dropped; used by series
    /// evaluation where small intermediate terms still matter.
    pub(crate) fn from_terms_pruned(
        gens: &GeneratorSet,
        terms: impl IntoIterator<Item = (Blade, C64)>,
        prune: bool,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (b, c) in terms {
            *map.entry(b).or_insert(ZERO) += c;
        }
        if prune {
            map.retain(|_, c| !negligible(*c));
        } else {
            map.retain(|_, c| *c != ZERO);
        }
        CliffordElement {
            gens: gens.clone(),
            terms: map,
        }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, C64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> C64 {
        self.terms.get(&blade).copied().unwrap_or(ZERO)
    }

    pub fn map_terms(&self, f: impl Fn(Blade, C64) -> Option<(Blade, C64)>) -> Self {
        Self::from_terms(&self.gens, self.terms().filter_map(|(b, c)| f(b, c)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.map_terms(|b, c| Some((b, c * factor)))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::GeneratorSetMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_terms(
            &self.gens,
            self.terms().chain(other.terms()),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-ONE))
    }

    /// The Clifford product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_pruned(other, true)
    }

    pub(crate) fn multiply_pruned(&self, other: &Self, prune: bool) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Blade, C64> = BTreeMap::new();
        for (ba, ca) in self.terms() {
            for (bb, cb) in other.terms() {
                let (sign, blade) = blade_product(ba, bb);
                *acc.entry(blade).or_insert(ZERO) += sign * (ca * cb);
            }
        }
        Ok(Self::from_terms_pruned(&self.gens, acc, prune))
    }

    /// Hermitian conjugation: antilinear, `e_L† = (-1)^σ(l) e_L`.
    pub fn conjugate(&self) -> Self {
        self.map_terms(|b, c| {
            let c = c.conj();
            Some((b, if sigma(b.grade()) == 1 { -c } else { c }))
        })
    }

    /// Keeps the blades of grade exactly `grade`.
    pub fn grade_project(&self, grade: usize) -> Self {
        self.map_terms(|b, c| (b.grade() == grade).then_some((b, c)))
    }

    pub fn even_part(&self) -> Self {
        self.map_terms(|b, c| (b.grade() % 2 == 0).then_some((b, c)))
    }

    pub fn odd_part(&self) -> Self {
        self.map_terms(|b, c| (b.grade() % 2 == 1).then_some((b, c)))
    }

    /// Grades with a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Coefficient of the empty blade.
    pub fn scalar_part(&self) -> C64 {
        self.coefficient(Blade::SCALAR)
    }

    /// `Sc(self · other)` without forming the product: only equal blades
    /// meet at the scalar, each pair contributing `e_L² = (-1)^σ(l)`.
    pub fn scalar_of_product(&self, other: &Self) -> Result<C64> {
        self.check_same(other)?;
        Ok(self
            .terms()
            .filter_map(|(b, c)| {
                let d = other.terms.get(&b)?;
                let v = c * d;
                Some(if sigma(b.grade()) == 1 { -v } else { v })
            })
            .sum())
    }

    /// Sum of coefficient magnitudes.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest coefficient difference, with nothing pruned.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        let keys = self.terms.keys().chain(other.terms.keys());
        Ok(keys
            .map(|b| (self.coefficient(*b) - other.coefficient(*b)).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.grade() % 2 == 0)
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    /// Panics on mismatched generator sets; use [`CliffordElement::try_add`].
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_add(rhs).expect("generator sets differ")
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_sub(rhs).expect("generator sets differ")
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    /// Panics on mismatched generator sets; use [`CliffordElement::multiply`].
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.multiply(rhs).expect("generator sets differ")
    }
}

impl Mul<C64> for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: C64) -> CliffordElement {
        self.scale(rhs)
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-ONE)
    }
}

/// `i^σ(l) e_L`, which is Hermitian.
pub fn hermitian_blade(gens: &GeneratorSet, blade: Blade) -> CliffordElement {
    let coef = i_pow(sigma(blade.grade()) as i64);
    CliffordElement::from_terms(gens, [(blade, coef)])
}

/// The even-subalgebra embedding `Cl(n-1) → Cl⁰(n)`: even blades are kept,
/// odd blades `e_L` go to `e_L e_n` for the extra generator `e_n`.
/// Multiplicative because `e_n² = -1` and `e_n` anticommutes with the rest.
pub fn even_embed(x: &CliffordElement, extra: &GeneratorLabel) -> Result<CliffordElement> {
    let target = x.gens.with(extra.clone())?;
    let extra_pos = target.require(extra)?;
    let low = (1u64 << extra_pos) - 1;
    let lift = |b: Blade| Blade((b.0 & low) | ((b.0 & !low) << 1));
    let en = Blade::single(extra_pos);
    Ok(CliffordElement::from_terms(
        &target,
        x.terms().map(|(b, c)| {
            let b = lift(b);
            if b.grade() % 2 == 0 {
                (b, c)
            } else {
                let (s, prod) = blade_product(b, en);
                (prod, s * c)
            }
        }),
    ))
}

fn plain_and_primed(
    gens: &GeneratorSet,
    i: &IndexLabel,
) -> Result<(CliffordElement, CliffordElement)> {
    let e = CliffordElement::generator(gens, &GeneratorLabel::plain(i.clone()))
        .map_err(|_| Error::UnknownIndex(i.clone()))?;
    let e_primed = CliffordElement::generator(gens, &GeneratorLabel::primed(i.clone()))
        .map_err(|_| Error::UnknownIndex(i.clone()))?;
    Ok((e, e_primed))
}

/// `(a_i, a_i†)` as Clifford elements: `a = (e + i e')/2i`, `a† = (e - i e')/2i`.
pub fn to_ladder(
    gens: &GeneratorSet,
    i: &IndexLabel,
) -> Result<(CliffordElement, CliffordElement)> {
    let (e, ep) = plain_and_primed(gens, i)?;
    let half_over_i = ONE / (2.0 * I);
    let a = (&e + &ep.scale(I)).scale(half_over_i);
    let a_dag = (&e - &ep.scale(I)).scale(half_over_i);
    Ok((a, a_dag))
}

/// `(e_i, e'_i)` rebuilt from the ladder pair: `e = i(a† + a)`, `e' = a - a†`.
pub fn from_ladder(
    gens: &GeneratorSet,
    i: &IndexLabel,
) -> Result<(CliffordElement, CliffordElement)> {
    let (a, a_dag) = to_ladder(gens, i)?;
    Ok(((&a_dag + &a).scale(I), &a - &a_dag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(m: usize) -> GeneratorSet {
        GeneratorSet::doubled(&IndexSet::numbered(m).unwrap()).unwrap()
    }

    fn label(s: &str) -> IndexLabel {
        IndexLabel::new(s).unwrap()
    }

    fn e(g: &GeneratorSet, s: &str) -> CliffordElement {
        CliffordElement::generator(g, &GeneratorLabel::plain(label(s))).unwrap()
    }

    fn ep(g: &GeneratorSet, s: &str) -> CliffordElement {
        CliffordElement::generator(g, &GeneratorLabel::primed(label(s))).unwrap()
    }

    #[test]
    fn generator_order_pairs_primes() {
        let g = gens(2);
        let names: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["e[0]", "e'[0]", "e[1]", "e'[1]"]);
        assert_eq!(g.as_doubled(), Some(IndexSet::numbered(2).unwrap()));
    }

    #[test]
    fn generators_square_to_minus_one_and_anticommute() {
        let g = gens(2);
        let id = CliffordElement::identity(&g);
        for x in g.generators() {
            let ex = CliffordElement::generator(&g, x).unwrap();
            assert_eq!(&ex * &ex, -&id);
            assert_eq!(ex.conjugate(), -&ex);
            for y in g.generators() {
                if x != y {
                    let ey = CliffordElement::generator(&g, y).unwrap();
                    assert!((&(&ex * &ey) + &(&ey * &ex)).is_zero());
                }
            }
        }
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        let g = gens(2);
        let ab = &e(&g, "0") * &e(&g, "1");
        assert_eq!(&ab * &ab, -&CliffordElement::identity(&g));
    }

    #[test]
    fn identity_is_neutral() {
        let g = gens(2);
        let x = &e(&g, "0") + &(&ep(&g, "1") * &e(&g, "1")).scale(C64::new(0.5, 2.0));
        assert_eq!(&CliffordElement::identity(&g) * &x, x);
        assert_eq!(&x * &CliffordElement::identity(&g), x);
    }

    #[test]
    fn sign_table() {
        assert_eq!(
            (0..8).map(sigma).collect::<Vec<_>>(),
            [0, 1, 1, 0, 0, 1, 1, 0]
        );
    }

    #[test]
    fn conjugation_examples() {
        let g = gens(2);
        let ab = &e(&g, "0") * &e(&g, "1");
        assert_eq!(ab.conjugate(), -&ab);
        let abc = &ab * &ep(&g, "1");
        assert_eq!(abc.conjugate(), abc);
        // antilinear
        let z = C64::new(1.0, 2.0);
        assert_eq!(ab.scale(z).conjugate(), ab.conjugate().scale(z.conj()));
    }

    #[test]
    fn grade_projection() {
        let g = gens(2);
        let x = &e(&g, "0") + &(&e(&g, "0") * &e(&g, "1"));
        assert_eq!(x.grade_project(1), e(&g, "0"));
        assert_eq!(
            CliffordElement::identity(&g).grade_project(0),
            CliffordElement::identity(&g)
        );
        let total = (0..=4).fold(CliffordElement::zero(&g), |acc, l| {
            &acc + &x.grade_project(l)
        });
        assert_eq!(total, x);
        assert_eq!(x.grades(), [1, 2]);
    }

    #[test]
    fn parity_of_products_follows_z2_grading() {
        let g = gens(2);
        for a in g.blades() {
            for b in g.blades() {
                let (_, p) = blade_product(a, b);
                assert_eq!(p.grade() % 2, (a.grade() + b.grade()) % 2);
            }
        }
    }

    #[test]
    fn scalar_part_examples() {
        let g = gens(1);
        assert_eq!(CliffordElement::identity(&g).scalar_part(), ONE);
        assert_eq!(e(&g, "0").scalar_part(), ZERO);
    }

    #[test]
    fn scalar_of_product_matches_full_product() {
        let g = gens(2);
        let x = CliffordElement::from_terms(&g, g.blades().map(|b| (b, C64::new(b.0 as f64, 1.0))));
        let y =
            CliffordElement::from_terms(&g, g.blades().map(|b| (b, C64::new(1.0, -(b.0 as f64)))));
        assert_eq!(x.scalar_of_product(&y).unwrap(), (&x * &y).scalar_part());
    }

    #[test]
    fn hermitian_blades() {
        let g = gens(2);
        for b in g.blades() {
            let h = hermitian_blade(&g, b);
            assert_eq!(h.conjugate(), h);
        }
        let four = Blade(0b1111);
        assert_eq!(hermitian_blade(&g, four).coefficient(four), ONE);
        assert_eq!(hermitian_blade(&g, Blade(1)).coefficient(Blade(1)), I);
    }

    #[test]
    fn mismatched_sets_are_errors() {
        let x = e(&gens(1), "0");
        let y = e(&gens(2), "0");
        assert_eq!(x.multiply(&y), Err(Error::GeneratorSetMismatch));
        assert!(CliffordElement::generator(&gens(1), &GeneratorLabel::plain(label("9"))).is_err());
    }

    #[test]
    fn even_embed_examples() {
        let g = gens(1);
        let n = GeneratorLabel::plain(label("n"));
        let id = CliffordElement::identity(&g);
        let emb = even_embed(&id, &n).unwrap();
        assert_eq!(emb, CliffordElement::identity(emb.generators()));

        let ea = e(&g, "0");
        let emb = even_embed(&ea, &n).unwrap();
        let big = emb.generators().clone();
        let expected = &e(&big, "0") * &CliffordElement::generator(&big, &n).unwrap();
        assert_eq!(emb, expected);
        assert!(emb.is_even());
        assert_eq!(
            even_embed(&ea, &GeneratorLabel::plain(label("0"))),
            Err(Error::GeneratorSetMismatch)
        );
    }

    #[test]
    fn even_embed_is_multiplicative_on_blades() {
        // extra generator placed in the middle of the order
        let set = GeneratorSet::new(
            ["a", "c", "d"]
                .iter()
                .map(|s| GeneratorLabel::plain(label(s))),
        )
        .unwrap();
        let n = GeneratorLabel::plain(label("b"));
        for x in set.blades() {
            for y in set.blades() {
                let ex = CliffordElement::from_terms(&set, [(x, ONE)]);
                let ey = CliffordElement::from_terms(&set, [(y, ONE)]);
                let lhs = even_embed(&(&ex * &ey), &n).unwrap();
                let rhs = &even_embed(&ex, &n).unwrap() * &even_embed(&ey, &n).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ladder_round_trip() {
        let g = gens(2);
        let i = label("1");
        let (a, a_dag) = to_ladder(&g, &i).unwrap();
        let id = CliffordElement::identity(&g);
        assert_eq!(&(&a * &a_dag) + &(&a_dag * &a), id);
        assert!((&a * &a).is_zero());
        assert_eq!(a.conjugate(), a_dag);

        let (e1, e1p) = from_ladder(&g, &i).unwrap();
        assert_eq!(e1, e(&g, "1"));
        assert_eq!(e1p, ep(&g, "1"));
        assert_eq!(&e1 * &e1, -&id);
        assert!(to_ladder(&g, &label("7")).is_err());
    }

    #[test]
    fn product_of_normal_orders() {
        let g = gens(2);
        let x = CliffordElement::product_of(
            &g,
            &[
                GeneratorLabel::plain(label("1")),
                GeneratorLabel::plain(label("0")),
                GeneratorLabel::plain(label("1")),
            ],
        )
        .unwrap();
        // e1 e0 e1 = -e0 e1 e1 = e0
        assert_eq!(x, e(&g, "0"));
    }
}
