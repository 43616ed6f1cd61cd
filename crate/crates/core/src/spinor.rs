//! Spinors as a minimal left ideal `ℓ = Cl(2m)·Λ_vac`.
//!
//! Every element of the ideal is `r·Λ_vac` for a unique `r` built from
//! unprimed generators only, because `e'_a Λ_vac = i e_a Λ_vac`. That `r` is
//! what [`IdealElement`] stores. Basis kets map to
//! `Λ_n = (-i)^|n| e_S Λ_vac` with `S` the occupied labels in canonical
//! order, so amplitudes and reduced coefficients differ by `i^|n|`.

use std::fmt;

use crate::clifford::{blade_product, to_ladder, Blade, CliffordElement, GeneratorSet};
use crate::error::{Error, Result};
use crate::ladder::Ladder;
use crate::scalar::{i_pow, C64, I, ONE};
use crate::sq::{BasisState, IndexLabel, IndexSet, SState};

/// Largest coefficient of `r·Λ_vac - x` that [`reduce`] tolerates.
pub const IDEAL_TOLERANCE: f64 = 1e-10;

/// Generator positions of `e'_a` in a doubled set are the odd ones.
const PRIMED_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// `λ_0^a = (1 + i e_a e'_a)/2` or `λ_1^a = a_a†`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaFactor {
    pub index: IndexLabel,
    pub occupied: bool,
}

impl LambdaFactor {
    pub fn new(index: IndexLabel, occupied: bool) -> Self {
        LambdaFactor { index, occupied }
    }

    pub fn element(&self, gens: &GeneratorSet) -> Result<CliffordElement> {
        let (a, a_dag) = to_ladder(gens, &self.index)?;
        if self.occupied {
            Ok(a_dag)
        } else {
            Ok(&a * &a_dag)
        }
    }
}

/// An element of the left ideal, held as its primed-free representative.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealElement {
    index_set: IndexSet,
    reduced: CliffordElement,
}

impl IdealElement {
    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn generators(&self) -> &GeneratorSet {
        self.reduced.generators()
    }

    /// `r` with `self = r·Λ_vac`; contains no primed generator.
    pub fn representative(&self) -> &CliffordElement {
        &self.reduced
    }

    /// The full Clifford element `r·Λ_vac`.
    pub fn value(&self) -> CliffordElement {
        let vac = vacuum_projector(&self.index_set).expect("nonempty index set");
        &self.reduced * &vac
    }

    pub fn is_zero(&self) -> bool {
        self.reduced.is_zero()
    }

    pub fn scale(&self, c: C64) -> Self {
        IdealElement {
            index_set: self.index_set.clone(),
            reduced: self.reduced.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        Ok(IdealElement {
            index_set: self.index_set.clone(),
            reduced: &self.reduced + &other.reduced,
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same(self, other)?;
        self.reduced.max_abs_diff(&other.reduced)
    }
}

impl fmt::Display for IdealElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.reduced.fmt(f)
    }
}

fn check_same(x: &IdealElement, y: &IdealElement) -> Result<()> {
    if x.index_set != y.index_set {
        return Err(Error::IndexSetMismatch);
    }
    Ok(())
}

fn require_nonempty(index_set: &IndexSet) -> Result<GeneratorSet> {
    if index_set.is_empty() {
        return Err(Error::InvalidArgument(
            "the vacuum needs at least one index".into(),
        ));
    }
    GeneratorSet::doubled(index_set)
}

/// `Λ_vac = ∏_a λ_0^a` as a full Clifford element.
pub fn vacuum_projector(index_set: &IndexSet) -> Result<CliffordElement> {
    let gens = require_nonempty(index_set)?;
    let mut out = CliffordElement::identity(&gens);
    for label in index_set.labels() {
        out = &out * &LambdaFactor::new(label.clone(), false).element(&gens)?;
    }
    Ok(out)
}

pub fn vacuum(index_set: &IndexSet) -> Result<IdealElement> {
    let gens = require_nonempty(index_set)?;
    Ok(IdealElement {
        index_set: index_set.clone(),
        reduced: CliffordElement::identity(&gens),
    })
}

/// `e_B Λ_vac = c · e_R Λ_vac` with `R` free of primes.
///
/// The highest primed generator is moved to the right end, swapped for
/// `i e_a`, and the remaining product is re-sorted.
fn reduce_blade(blade: Blade) -> (C64, Blade) {
    let mut coef = ONE;
    let mut b = blade.0;
    while b & PRIMED_BITS != 0 {
        let p = 63 - (b & PRIMED_BITS).leading_zeros() as usize;
        let tail = (b >> (p + 1)).count_ones();
        if tail % 2 == 1 {
            coef = -coef;
        }
        coef *= I;
        let (s, prod) = blade_product(Blade(b & !(1 << p)), Blade::single(p - 1));
        coef = s * coef;
        b = prod.0;
    }
    (coef, Blade(b))
}

/// Representative of `y·Λ_vac` for any Clifford element `y`.
fn reduce_product(y: &CliffordElement) -> CliffordElement {
    CliffordElement::from_terms(
        y.generators(),
        y.terms().map(|(b, c)| {
            let (f, r) = reduce_blade(b);
            (r, f * c)
        }),
    )
}

/// Canonical form of an element of the ideal.
///
/// `x` must satisfy `x·Λ_vac = x`; otherwise [`Error::NotInIdeal`] reports
/// the largest coefficient of the mismatch.
pub fn reduce(x: &CliffordElement, index_set: &IndexSet) -> Result<IdealElement> {
    let gens = require_nonempty(index_set)?;
    if *x.generators() != gens {
        return Err(Error::GeneratorSetMismatch);
    }
    let out = IdealElement {
        index_set: index_set.clone(),
        reduced: reduce_product(x),
    };
    let residual = out.value().max_abs_diff(x)?;
    if residual > IDEAL_TOLERANCE {
        return Err(Error::NotInIdeal { residual });
    }
    Ok(out)
}

/// `c·x`, which stays in the ideal.
pub fn left_multiply(c: &CliffordElement, x: &IdealElement) -> Result<IdealElement> {
    Ok(IdealElement {
        index_set: x.index_set.clone(),
        reduced: reduce_product(&c.multiply(&x.reduced)?),
    })
}

/// `(∏ λ_{n_j}^j) Λ_vac` with the factors in the written order of `occupations`.
pub fn basis_element(occupations: &BasisState, index_set: &IndexSet) -> Result<IdealElement> {
    let gens = require_nonempty(index_set)?;
    let written = occupations.index_set();
    if written != *index_set {
        return Err(Error::IndexSetMismatch);
    }
    let mut prod = CliffordElement::identity(&gens);
    for (label, bit) in occupations.entries() {
        prod = &prod * &LambdaFactor::new(label.clone(), *bit).element(&gens)?;
    }
    Ok(IdealElement {
        index_set: index_set.clone(),
        reduced: reduce_product(&prod),
    })
}

/// Every `Λ_n` with `n` running over occupation masks.
pub fn reduced_basis(index_set: &IndexSet) -> Result<Vec<IdealElement>> {
    index_set
        .masks()
        .map(|mask| basis_element(&BasisState::from_mask(index_set, mask), index_set))
        .collect()
}

pub fn ladder_action(i: &IndexLabel, kind: Ladder, x: &IdealElement) -> Result<IdealElement> {
    x.index_set.require(i)?;
    let (a, a_dag) = to_ladder(x.generators(), i)?;
    let op = match kind {
        Ladder::Create => a_dag,
        Ladder::Annihilate => a,
    };
    left_multiply(&op, x)
}

/// `2^m Sc(x† y)`, which equals the state inner product.
pub fn ideal_inner(x: &IdealElement, y: &IdealElement) -> Result<C64> {
    check_same(x, y)?;
    let sc = x.value().conjugate().scalar_of_product(&y.value())?;
    Ok(sc * 2f64.powi(x.index_set.len() as i32))
}

/// `℘_Ψ = Λ_Ψ Λ_Ψ†`.
pub fn density(x: &IdealElement) -> CliffordElement {
    let v = x.value();
    &v * &v.conjugate()
}

/// `℘_{n',n} = Λ_{n'} Λ_n†`.
pub fn basis_operator(
    n_prime: &BasisState,
    n: &BasisState,
    index_set: &IndexSet,
) -> Result<CliffordElement> {
    let left = basis_element(n_prime, index_set)?.value();
    let right = basis_element(n, index_set)?.value();
    Ok(&left * &right.conjugate())
}

fn even_mask_to_modes(b: u64) -> u64 {
    (0..32)
        .filter(|p| b >> (2 * p) & 1 == 1)
        .fold(0, |acc, p| acc | 1 << p)
}

fn modes_to_even_mask(mask: u64) -> u64 {
    (0..32)
        .filter(|p| mask >> p & 1 == 1)
        .fold(0, |acc, p| acc | 1 << (2 * p))
}

pub fn to_sstate(x: &IdealElement) -> Result<SState> {
    SState::from_mask_amplitudes(
        x.index_set.clone(),
        x.reduced
            .terms()
            .map(|(b, c)| (even_mask_to_modes(b.0), c * i_pow(b.grade() as i64))),
    )
}

pub fn from_sstate(psi: &SState) -> Result<IdealElement> {
    let index_set = psi.index_set().clone();
    let gens = require_nonempty(&index_set)?;
    let reduced = CliffordElement::from_terms(
        &gens,
        psi.mask_terms().map(|(mask, c)| {
            (
                Blade(modes_to_even_mask(mask)),
                c * i_pow(-(mask.count_ones() as i64)),
            )
        }),
    );
    Ok(IdealElement { index_set, reduced })
}
