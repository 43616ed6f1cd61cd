//! Exterior-algebra model: occupied modes become wedge factors.
//!
//! A term is keyed by a bitmask over the canonical labels of its index set
//! and stands for `x_{j1} ∧ … ∧ x_{jk}` with `j1 < … < jk`. Creation is
//! `x_j ∧ ·`, annihilation is the interior product, whose `l`-th factor
//! (counting from one) carries `(-1)^(l-1)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ladder::Ladder;
use crate::scalar::{format_complex, negligible, split_term_line, C64, ONE, ZERO};
use crate::sq::{IndexLabel, IndexSet, SState, Sign};

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannForm {
    index_set: IndexSet,
    terms: BTreeMap<u64, C64>,
}

/// Sign of `x_A ∧ x_B` relative to the sorted product, zero on overlap.
fn wedge_masks(a: u64, b: u64) -> Option<(Sign, u64)> {
    if a & b != 0 {
        return None;
    }
    // one transposition for every pair with the A factor after the B factor
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let p = rest.trailing_zeros();
        inversions += (a >> p).count_ones() as usize;
        rest &= rest - 1;
    }
    Some((Sign::from_parity(inversions), a | b))
}

impl GrassmannForm {
    pub fn zero(index_set: IndexSet) -> Self {
        GrassmannForm {
            index_set,
            terms: BTreeMap::new(),
        }
    }

    /// The unit form `1`, which stands for the all-empty ket.
    pub fn one(index_set: IndexSet) -> Self {
        Self::from_masks(index_set, [(0, ONE)])
    }

    /// `x_j`.
    pub fn generator(index_set: &IndexSet, j: &IndexLabel) -> Result<Self> {
        let p = index_set.require(j)?;
        Ok(Self::from_masks(index_set.clone(), [(1 << p, ONE)]))
    }

    /// Wedge product of the listed factors, in the given order.
    pub fn product_of(index_set: &IndexSet, factors: &[IndexLabel]) -> Result<Self> {
        let mut acc = Self::one(index_set.clone());
        for j in factors {
            acc = acc.wedge(&Self::generator(index_set, j)?)?;
        }
        Ok(acc)
    }

    fn from_masks(index_set: IndexSet, terms: impl IntoIterator<Item = (u64, C64)>) -> Self {
        let mut map = BTreeMap::new();
        for (mask, c) in terms {
            *map.entry(mask).or_insert(ZERO) += c;
        }
        map.retain(|_, c| !negligible(*c));
        GrassmannForm {
            index_set,
            terms: map,
        }
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn mask_terms(&self) -> impl Iterator<Item = (u64, C64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u64) -> C64 {
        self.terms.get(&mask).copied().unwrap_or(ZERO)
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

    /// Keeps the terms with exactly `k` factors.
    pub fn grade_project(&self, k: usize) -> Self {
        Self::from_masks(
            self.index_set.clone(),
            self.mask_terms()
                .filter(|(m, _)| m.count_ones() as usize == k),
        )
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_masks(
            self.index_set.clone(),
            self.mask_terms().map(|(m, c)| (m, c * factor)),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_masks(
            self.index_set.clone(),
            self.mask_terms().chain(other.mask_terms()),
        ))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        let keys = self.terms.keys().chain(other.terms.keys());
        Ok(keys
            .map(|m| (self.coefficient(*m) - other.coefficient(*m)).norm())
            .fold(0.0, f64::max))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.index_set != other.index_set {
            return Err(Error::IndexSetMismatch);
        }
        Ok(())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (a, ca) in self.mask_terms() {
            for (b, cb) in other.mask_terms() {
                if let Some((sign, m)) = wedge_masks(a, b) {
                    out.push((m, sign * (ca * cb)));
                }
            }
        }
        Ok(Self::from_masks(self.index_set.clone(), out))
    }

    /// Parses `(<re>,<im>) : x[<label>] ^ x[<label>] ...` lines; `1` is the
    /// empty product. Factors may come in any order.
    pub fn parse(text: &str, index_set: &IndexSet) -> Result<Self> {
        let mut acc = Self::zero(index_set.clone());
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let Some((amp, body)) = split_term_line(raw, line)? else {
                continue;
            };
            if body.is_empty() {
                return Err(Error::parse(line, "empty term, write `1` for the scalar"));
            }
            let mut factors = Vec::new();
            if body != "1" {
                for token in body.split('^') {
                    let token = token.trim();
                    let label = token
                        .strip_prefix("x[")
                        .and_then(|t| t.strip_suffix(']'))
                        .ok_or_else(|| {
                            Error::parse(line, format!("expected `x[<label>]`, found `{token}`"))
                        })?;
                    let label =
                        IndexLabel::new(label).map_err(|e| Error::parse(line, e.to_string()))?;
                    if !index_set.contains(&label) {
                        return Err(Error::parse(line, format!("unknown label `{label}`")));
                    }
                    factors.push(label);
                }
            }
            acc = acc.add(&Self::product_of(index_set, &factors)?.scale(amp))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GrassmannForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.index_set.labels();
        let mut rows: Vec<_> = self.mask_terms().collect();
        rows.sort_by_key(|(m, _)| (m.count_ones(), m.reverse_bits()));
        for (mask, c) in rows {
            let body = if mask == 0 {
                "1".to_string()
            } else {
                (0..labels.len())
                    .filter(|p| mask >> p & 1 == 1)
                    .map(|p| format!("x[{}]", labels[p]))
                    .collect::<Vec<_>>()
                    .join(" ^ ")
            };
            writeln!(f, "{} : {}", format_complex(c), body)?;
        }
        Ok(())
    }
}

/// Each ket goes to the wedge of its occupied modes in canonical order.
pub fn from_sstate(psi: &SState) -> GrassmannForm {
    GrassmannForm::from_masks(psi.index_set().clone(), psi.mask_terms())
}

/// Inverse of [`from_sstate`]. The form does not record empty modes, so the
/// target index set is given explicitly; it must contain every label that
/// the form's terms use.
pub fn to_sstate(w: &GrassmannForm, index_set: &IndexSet) -> Result<SState> {
    let source = w.index_set.labels();
    let mut remap = Vec::with_capacity(source.len());
    for label in source {
        remap.push(index_set.position(label));
    }
    let mut out = Vec::with_capacity(w.len());
    for (mask, c) in w.mask_terms() {
        let mut target = 0u64;
        for (p, slot) in remap.iter().enumerate() {
            if mask >> p & 1 == 1 {
                let q = slot.ok_or_else(|| Error::UnknownIndex(source[p].clone()))?;
                target |= 1 << q;
            }
        }
        // both sides are in canonical order, so relative order is kept
        out.push((target, c));
    }
    SState::from_mask_amplitudes(index_set.clone(), out)
}

/// Inner product in which the wedge monomials are orthonormal.
pub fn grassmann_inner(u: &GrassmannForm, v: &GrassmannForm) -> Result<C64> {
    u.check_same(v)?;
    Ok(u.mask_terms()
        .map(|(m, c)| c.conj() * v.coefficient(m))
        .sum())
}

/// `x_j ∧ w`.
pub fn grassmann_create(j: &IndexLabel, w: &GrassmannForm) -> Result<GrassmannForm> {
    GrassmannForm::generator(&w.index_set, j)?.wedge(w)
}

/// Interior product with the dual of `x_j`.
pub fn grassmann_annihilate(j: &IndexLabel, w: &GrassmannForm) -> Result<GrassmannForm> {
    let p = w.index_set.require(j)?;
    let mut out = Vec::new();
    for (mask, c) in w.mask_terms() {
        if mask >> p & 1 == 0 {
            continue;
        }
        // x_j is factor number l = 1 + (factors before it)
        let before = (mask & ((1u64 << p) - 1)).count_ones() as usize;
        out.push((mask & !(1 << p), Sign::from_parity(before) * c));
    }
    Ok(GrassmannForm::from_masks(w.index_set.clone(), out))
}

pub fn grassmann_ladder(j: &IndexLabel, kind: Ladder, w: &GrassmannForm) -> Result<GrassmannForm> {
    match kind {
        Ladder::Create => grassmann_create(j, w),
        Ladder::Annihilate => grassmann_annihilate(j, w),
    }
}
