//! Super-indexed qubit states.
//!
//! A basis ket is a sequence of `(label, occupation)` pairs with distinct
//! labels. Two sequences that differ by a reordering are the same ket up to
//! the exchange sign: swapping two neighbouring entries costs `-1` exactly
//! when both are occupied. Labels carry no order of their own; the
//! lexicographic order of their text is used internally to pick one
//! representative per equivalence class and never leaks into results.
//!
//! [`SState`] stores superpositions over those canonical representatives,
//! keyed by an occupation bitmask over the positions of the sorted
//! [`IndexSet`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{format_complex, negligible, split_term_line, C64, ONE, ZERO};

/// Upper bound on the number of modes in one index set (one bit per mode).
pub const MAX_MODES: usize = 64;

/// An opaque mode label such as `a`, `3` or `site_1_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexLabel(Arc<str>);

impl IndexLabel {
    /// Labels are nonempty and may not contain whitespace or any of the
    /// characters reserved by the text formats: `=,:()[]^#'`.
    pub fn new(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::InvalidArgument("empty index label".into()));
        }
        if let Some(c) = text
            .chars()
            .find(|c| c.is_whitespace() || "=,:()[]^#'".contains(*c))
        {
            return Err(Error::InvalidArgument(format!(
                "index label `{text}` contains reserved character `{c}`"
            )));
        }
        Ok(IndexLabel(text.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exact exchange sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_complex(self) -> C64 {
        match self {
            Sign::Plus => ONE,
            Sign::Minus => -ONE,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl Mul<C64> for Sign {
    type Output = C64;
    fn mul(self, rhs: C64) -> C64 {
        match self {
            Sign::Plus => rhs,
            Sign::Minus => -rhs,
        }
    }
}

/// The set ℐ of mode labels, held in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet(Arc<[IndexLabel]>);

impl IndexSet {
    pub fn new(labels: impl IntoIterator<Item = IndexLabel>) -> Result<Self> {
        let mut labels: Vec<IndexLabel> = labels.into_iter().collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0].clone()));
        }
        if labels.len() > MAX_MODES {
            return Err(Error::TooManyModes {
                found: labels.len(),
                limit: MAX_MODES,
            });
        }
        Ok(IndexSet(labels.into()))
    }

    pub fn from_strs<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let parsed = labels
            .iter()
            .map(|s| IndexLabel::new(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    /// Labels `"0"`, `"1"`, ..., `"m-1"`.
    pub fn numbered(m: usize) -> Result<Self> {
        let labels: Vec<String> = (0..m).map(|k| k.to_string()).collect();
        Self::from_strs(&labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[IndexLabel] {
        &self.0
    }

    pub fn position(&self, label: &IndexLabel) -> Option<usize> {
        self.0.binary_search(label).ok()
    }

    pub fn require(&self, label: &IndexLabel) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::UnknownIndex(label.clone()))
    }

    pub fn contains(&self, label: &IndexLabel) -> bool {
        self.position(label).is_some()
    }

    /// Number of basis kets, `2^m`.
    pub fn dimension(&self) -> usize {
        1usize << self.len()
    }

    /// All occupation masks, `0..2^m`.
    pub fn masks(&self) -> impl Iterator<Item = u64> {
        0..(1u64 << self.len())
    }
}

/// One basis ket written as a sequence of `(label, occupied)` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    entries: Vec<(IndexLabel, bool)>,
}

impl BasisState {
    pub fn new(entries: Vec<(IndexLabel, bool)>) -> Result<Self> {
        if entries.len() > MAX_MODES {
            return Err(Error::TooManyModes {
                found: entries.len(),
                limit: MAX_MODES,
            });
        }
        for (k, (label, _)) in entries.iter().enumerate() {
            if entries[..k].iter().any(|(other, _)| other == label) {
                return Err(Error::DuplicateIndex(label.clone()));
            }
        }
        Ok(BasisState { entries })
    }

    /// Convenience constructor: `BasisState::from_pairs(&[("a", 1), ("b", 0)])`.
    pub fn from_pairs(pairs: &[(&str, u8)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&(label, bit)| {
                if bit > 1 {
                    return Err(Error::InvalidArgument(format!(
                        "occupation of `{label}` must be 0 or 1"
                    )));
                }
                Ok((IndexLabel::new(label)?, bit == 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    /// The canonical ket of `mask` over `index_set`.
    pub fn from_mask(index_set: &IndexSet, mask: u64) -> Self {
        let entries = index_set
            .labels()
            .iter()
            .enumerate()
            .map(|(p, l)| (l.clone(), mask >> p & 1 == 1))
            .collect();
        BasisState { entries }
    }

    pub fn entries(&self) -> &[(IndexLabel, bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::new(self.entries.iter().map(|(l, _)| l.clone()))
            .expect("labels are distinct and within the mode limit")
    }

    /// Sign and occupation mask over `index_set` of this (possibly unordered) ket.
    pub(crate) fn mask_in(&self, index_set: &IndexSet) -> Result<(u64, Sign)> {
        if self.entries.len() != index_set.len() {
            return Err(Error::IndexSetMismatch);
        }
        let mut mask = 0u64;
        let mut occupied_positions = Vec::new();
        for (label, occ) in &self.entries {
            let p = index_set.position(label).ok_or(Error::IndexSetMismatch)?;
            if *occ {
                mask |= 1 << p;
                occupied_positions.push(p);
            }
        }
        Ok((mask, Sign::from_parity(inversions(&occupied_positions))))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (label, occ)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{label}={}", u8::from(*occ))?;
        }
        Ok(())
    }
}

fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// Sorts the entries into canonical label order and returns the exchange
/// sign: the parity of the reordering restricted to occupied entries.
pub fn canonicalize(raw: &BasisState) -> Result<(BasisState, Sign)> {
    let index_set = IndexSet::new(raw.entries.iter().map(|(l, _)| l.clone()))?;
    let (mask, sign) = raw.mask_in(&index_set)?;
    Ok((BasisState::from_mask(&index_set, mask), sign))
}

/// Occupation of `label` in a basis ket.
pub fn occupation(term: &BasisState, label: &IndexLabel) -> Result<bool> {
    term.entries
        .iter()
        .find(|(l, _)| l == label)
        .map(|(_, occ)| *occ)
        .ok_or_else(|| Error::UnknownIndex(label.clone()))
}

/// A bijection on positions `0..n`; `map[i]` is where the content at `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &target in &map {
            if target >= map.len() || seen[target] {
                return Err(Error::InvalidArgument(format!(
                    "{map:?} is not a permutation"
                )));
            }
            seen[target] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "transposition ({i} {j}) out of range for {n} positions"
            )));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Result<Self> {
        if self.len() != next.len() {
            return Err(Error::ShapeMismatch {
                expected: self.len(),
                found: next.len(),
            });
        }
        Ok(Permutation {
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        Permutation { map: inv }
    }

    /// One decomposition into adjacent transpositions `(p, p+1)`, listed by
    /// `p` in the order they are applied.
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        // slot p holds the content that started at arrangement[p]
        let mut arrangement: Vec<usize> = (0..self.len()).collect();
        let mut steps = Vec::new();
        let mut sorted = false;
        while !sorted {
            sorted = true;
            for p in 0..self.len().saturating_sub(1) {
                if self.map[arrangement[p]] > self.map[arrangement[p + 1]] {
                    arrangement.swap(p, p + 1);
                    steps.push(p);
                    sorted = false;
                }
            }
        }
        steps
    }

    pub(crate) fn apply_to_mask(&self, mask: u64) -> u64 {
        let mut out = 0;
        for (i, &t) in self.map.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out |= 1 << t;
            }
        }
        out
    }

    /// Parity of the permutation restricted to the occupied positions of `mask`.
    pub fn sign_on(&self, mask: u64) -> Sign {
        let targets: Vec<usize> = (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.map[i])
            .collect();
        Sign::from_parity(inversions(&targets))
    }
}

/// A sparse superposition of canonical basis kets over a fixed index set.
#[derive(Debug, Clone, PartialEq)]
pub struct SState {
    index_set: IndexSet,
    terms: BTreeMap<u64, C64>,
}

impl SState {
    pub fn zero(index_set: IndexSet) -> Self {
        SState {
            index_set,
            terms: BTreeMap::new(),
        }
    }

    /// The ket `raw`, with its exchange sign folded into the amplitude.
    pub fn basis(raw: &BasisState) -> Result<Self> {
        let (canonical, sign) = canonicalize(raw)?;
        let index_set = canonical.index_set();
        let (mask, _) = canonical.mask_in(&index_set)?;
        Ok(Self::from_masks(index_set, [(mask, sign.to_complex())]))
    }

    /// Builds a superposition; every ket must be over `index_set`.
    pub fn from_terms<'a>(
        index_set: IndexSet,
        terms: impl IntoIterator<Item = (C64, &'a BasisState)>,
    ) -> Result<Self> {
        let mut state = SState::zero(index_set);
        for (amp, raw) in terms {
            state.add_term(amp, raw)?;
        }
        Ok(state)
    }

    pub(crate) fn from_masks(
        index_set: IndexSet,
        terms: impl IntoIterator<Item = (u64, C64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (mask, amp) in terms {
            *map.entry(mask).or_insert(ZERO) += amp;
        }
        map.retain(|_, c| !negligible(*c));
        SState {
            index_set,
            terms: map,
        }
    }

    /// Amplitude-per-mask constructor; bit `p` of a mask is the occupation of
    /// the `p`-th label in canonical order.
    pub fn from_mask_amplitudes(
        index_set: IndexSet,
        terms: impl IntoIterator<Item = (u64, C64)>,
    ) -> Result<Self> {
        let limit = index_set.dimension() as u64;
        let terms: Vec<(u64, C64)> = terms.into_iter().collect();
        if let Some((mask, _)) = terms.iter().find(|(m, _)| *m >= limit) {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has bits outside {} modes",
                index_set.len()
            )));
        }
        Ok(Self::from_masks(index_set, terms))
    }

    pub fn add_term(&mut self, amp: C64, raw: &BasisState) -> Result<()> {
        let (mask, sign) = raw.mask_in(&self.index_set)?;
        let slot = self.terms.entry(mask).or_insert(ZERO);
        *slot += sign * amp;
        if negligible(*slot) {
            self.terms.remove(&mask);
        }
        Ok(())
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
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

    /// `(mask, amplitude)` pairs in ascending mask order.
    pub fn mask_terms(&self) -> impl Iterator<Item = (u64, C64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Canonical kets with their amplitudes.
    pub fn terms(&self) -> impl Iterator<Item = (BasisState, C64)> + '_ {
        self.terms
            .iter()
            .map(|(&m, &c)| (BasisState::from_mask(&self.index_set, m), c))
    }

    pub fn amplitude_of_mask(&self, mask: u64) -> C64 {
        self.terms.get(&mask).copied().unwrap_or(ZERO)
    }

    /// Amplitude of `raw` as written; the exchange sign of its ordering applies.
    pub fn amplitude(&self, raw: &BasisState) -> Result<C64> {
        let (mask, sign) = raw.mask_in(&self.index_set)?;
        Ok(sign * self.amplitude_of_mask(mask))
    }

    pub fn map_terms(&self, f: impl Fn(u64, C64) -> Option<(u64, C64)>) -> SState {
        SState::from_masks(
            self.index_set.clone(),
            self.mask_terms().filter_map(|(m, c)| f(m, c)),
        )
    }

    pub fn scale(&self, factor: C64) -> SState {
        self.map_terms(|m, c| Some((m, c * factor)))
    }

    pub fn add(&self, other: &SState) -> Result<SState> {
        self.check_same(other)?;
        Ok(SState::from_masks(
            self.index_set.clone(),
            self.mask_terms().chain(other.mask_terms()),
        ))
    }

    pub fn sub(&self, other: &SState) -> Result<SState> {
        self.add(&other.scale(-ONE))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// A unit-norm copy. The zero state cannot be normalized.
    pub fn normalize(&self) -> Result<SState> {
        let norm = self.norm_sqr().sqrt();
        if norm < crate::scalar::DROP_TOLERANCE {
            return Err(Error::InvalidArgument(
                "cannot normalize the zero state".into(),
            ));
        }
        Ok(self.scale(C64::new(1.0 / norm, 0.0)))
    }

    /// Largest amplitude difference between two states over the same ℐ.
    pub fn max_abs_diff(&self, other: &SState) -> Result<f64> {
        self.check_same(other)?;
        let keys = self.terms.keys().chain(other.terms.keys());
        Ok(keys
            .map(|m| (self.amplitude_of_mask(*m) - other.amplitude_of_mask(*m)).norm())
            .fold(0.0, f64::max))
    }

    fn check_same(&self, other: &SState) -> Result<()> {
        if self.index_set != other.index_set {
            return Err(Error::IndexSetMismatch);
        }
        Ok(())
    }

    /// Parses the state text format, one term per line:
    /// `(<re>,<im>) : <label>=<bit>, <label>=<bit>, ...`.
    /// Blank lines and `#` comments are ignored. All terms must share one
    /// index set. The exchange sign of each written order is absorbed.
    pub fn parse(text: &str) -> Result<SState> {
        let mut state: Option<SState> = None;
        for (n, raw_line) in text.lines().enumerate() {
            let line = n + 1;
            let Some((amp, body)) = split_term_line(raw_line, line)? else {
                continue;
            };
            let mut entries = Vec::new();
            if !body.is_empty() {
                for item in body.split(',') {
                    let (label, bit) = item.split_once('=').ok_or_else(|| {
                        Error::parse(
                            line,
                            format!("expected `<label>=<bit>`, found `{}`", item.trim()),
                        )
                    })?;
                    let label = IndexLabel::new(label.trim())
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    let occ = match bit.trim() {
                        "0" => false,
                        "1" => true,
                        other => {
                            return Err(Error::parse(
                                line,
                                format!("occupation of `{label}` must be 0 or 1, found `{other}`"),
                            ))
                        }
                    };
                    entries.push((label, occ));
                }
            }
            let basis = BasisState::new(entries).map_err(|e| Error::parse(line, e.to_string()))?;
            let target = state.get_or_insert_with(|| SState::zero(basis.index_set()));
            target.add_term(amp, &basis).map_err(|e| match e {
                Error::IndexSetMismatch => Error::parse(
                    line,
                    "term does not use the same index set as the first term",
                ),
                other => Error::parse(line, other.to_string()),
            })?;
        }
        state.ok_or_else(|| Error::parse(0, "no terms"))
    }
}

impl fmt::Display for SState {
    /// Canonical text form, ordered with the first label as most significant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.index_set.len();
        let mut rows: Vec<(u64, C64)> = self.mask_terms().collect();
        rows.sort_by_key(|(mask, _)| reverse_bits(*mask, m));
        for (mask, amp) in rows {
            writeln!(
                f,
                "{} : {}",
                format_complex(amp),
                BasisState::from_mask(&self.index_set, mask)
            )?;
        }
        Ok(())
    }
}

/// Bit `p` of `mask` becomes bit `m-1-p`: the dense-vector index of a ket.
pub fn reverse_bits(mask: u64, m: usize) -> u64 {
    let mut out = 0;
    for p in 0..m {
        if mask >> p & 1 == 1 {
            out |= 1 << (m - 1 - p);
        }
    }
    out
}

/// Moves occupations between label slots along `pi`, with the exchange sign
/// `(-1)^(inversions of pi among occupied slots)`.
pub fn apply_signed_permutation(state: &SState, pi: &Permutation) -> Result<SState> {
    if pi.len() != state.index_set.len() {
        return Err(Error::ShapeMismatch {
            expected: state.index_set.len(),
            found: pi.len(),
        });
    }
    Ok(state.map_terms(|m, c| Some((pi.apply_to_mask(m), pi.sign_on(m) * c))))
}

fn pair_positions(state: &SState, i: &IndexLabel, j: &IndexLabel) -> Result<(usize, usize)> {
    let p = state.index_set.require(i)?;
    let q = state.index_set.require(j)?;
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "swap needs two distinct indexes, got `{i}` twice"
        )));
    }
    Ok((p, q))
}

fn exchange_bits(mask: u64, p: usize, q: usize) -> u64 {
    let bp = mask >> p & 1;
    let bq = mask >> q & 1;
    let cleared = mask & !(1 << p) & !(1 << q);
    cleared | bp << q | bq << p
}

/// Signed swap of two 𝒮-qubits: `⟦μi⟧⟦νj⟧ ↦ (-1)^(μν) ⟦νi⟧⟦μj⟧`.
pub fn signed_swap(state: &SState, i: &IndexLabel, j: &IndexLabel) -> Result<SState> {
    let (p, q) = pair_positions(state, i, j)?;
    Ok(state.map_terms(|m, c| {
        let both = m >> p & 1 == 1 && m >> q & 1 == 1;
        Some((exchange_bits(m, p, q), if both { -c } else { c }))
    }))
}

/// Plain exchange of the two qubits' contents, no sign.
pub fn exchange(state: &SState, i: &IndexLabel, j: &IndexLabel) -> Result<SState> {
    let (p, q) = pair_positions(state, i, j)?;
    Ok(state.map_terms(|m, c| Some((exchange_bits(m, p, q), c))))
}

/// The swap defect `(-1)^(n_i n_j)`: diagonal, no reordering.
pub fn swap_defect(state: &SState, i: &IndexLabel, j: &IndexLabel) -> Result<SState> {
    let (p, q) = pair_positions(state, i, j)?;
    Ok(state.map_terms(|m, c| {
        let both = m >> p & 1 == 1 && m >> q & 1 == 1;
        Some((m, if both { -c } else { c }))
    }))
}

/// `⟨psi|phi⟩`, conjugate-linear in `psi`.
pub fn inner_product(psi: &SState, phi: &SState) -> Result<C64> {
    psi.check_same(phi)?;
    Ok(psi
        .mask_terms()
        .map(|(m, c)| c.conj() * phi.amplitude_of_mask(m))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(pairs: &[(&str, u8)]) -> BasisState {
        BasisState::from_pairs(pairs).unwrap()
    }

    fn label(s: &str) -> IndexLabel {
        IndexLabel::new(s).unwrap()
    }

    #[test]
    fn canonical_input_is_unchanged() {
        let raw = ket(&[("a", 0), ("b", 1)]);
        let (c, s) = canonicalize(&raw).unwrap();
        assert_eq!(c, raw);
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn two_occupied_swap_sign() {
        let (c, s) = canonicalize(&ket(&[("b", 1), ("a", 1)])).unwrap();
        assert_eq!(c, ket(&[("a", 1), ("b", 1)]));
        assert_eq!(s, Sign::Minus);
    }

    /// Signs of every adjacent-transposition path of length at most
    /// `max_len` that takes the raw sequence to sorted order, applying the
    /// exchange rule at each step.
    fn all_path_signs(entries: Vec<(String, u8)>, max_len: usize) -> Vec<i32> {
        fn go(entries: Vec<(String, u8)>, sign: i32, left: usize, out: &mut Vec<i32>) {
            if entries.windows(2).all(|w| w[0].0 < w[1].0) {
                out.push(sign);
            }
            if left == 0 {
                return;
            }
            for p in 0..entries.len().saturating_sub(1) {
                let mut next = entries.clone();
                let s = if next[p].1 == 1 && next[p + 1].1 == 1 {
                    -1
                } else {
                    1
                };
                next.swap(p, p + 1);
                go(next, sign * s, left - 1, out);
            }
        }
        let mut out = Vec::new();
        go(entries, 1, max_len, &mut out);
        out
    }

    #[test]
    fn three_entry_example_matches_path_enumeration() {
        let raw = vec![
            ("c".to_string(), 1),
            ("a".to_string(), 0),
            ("b".to_string(), 1),
        ];
        let signs = all_path_signs(raw, 7);
        assert!(signs.len() > 1);
        assert!(signs.iter().all(|&s| s == -1));

        let (c, s) = canonicalize(&ket(&[("c", 1), ("a", 0), ("b", 1)])).unwrap();
        assert_eq!(c, ket(&[("a", 0), ("b", 1), ("c", 1)]));
        assert_eq!(s, Sign::Minus);
    }

    #[test]
    fn canonicalize_agrees_with_paths_on_four_entries() {
        let labels = ["d", "b", "a", "c"];
        for occ in 0..16u8 {
            let raw: Vec<(String, u8)> = labels
                .iter()
                .enumerate()
                .map(|(k, l)| (l.to_string(), occ >> k & 1))
                .collect();
            let signs = all_path_signs(raw.clone(), 8);
            assert!(signs.windows(2).all(|w| w[0] == w[1]));
            let pairs: Vec<(&str, u8)> = raw.iter().map(|(l, b)| (l.as_str(), *b)).collect();
            let (_, s) = canonicalize(&ket(&pairs)).unwrap();
            assert_eq!(i32::from(s.value()), signs[0]);
        }
    }

    #[test]
    fn duplicate_label_is_rejected() {
        assert_eq!(
            BasisState::from_pairs(&[("a", 0), ("a", 1)]),
            Err(Error::DuplicateIndex(label("a")))
        );
    }

    #[test]
    fn bad_labels() {
        assert!(IndexLabel::new("").is_err());
        assert!(IndexLabel::new("a b").is_err());
        assert!(IndexLabel::new("x=1").is_err());
        assert!(IndexLabel::new("site_1_2").is_ok());
    }

    #[test]
    fn permutation_identity_and_swap() {
        let s = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        assert_eq!(
            apply_signed_permutation(&s, &Permutation::identity(2)).unwrap(),
            s
        );
        let swapped =
            apply_signed_permutation(&s, &Permutation::transposition(2, 0, 1).unwrap()).unwrap();
        assert_eq!(swapped, s.scale(-ONE));
    }

    #[test]
    fn three_cycle_on_full_occupation_is_even() {
        let s = SState::basis(&ket(&[("a", 1), ("b", 1), ("c", 1)])).unwrap();
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        let direct = apply_signed_permutation(&s, &cycle).unwrap();
        // two adjacent signed swaps
        let t01 = Permutation::transposition(3, 0, 1).unwrap();
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(t12.then(&t01).unwrap(), cycle);
        let stepwise =
            apply_signed_permutation(&apply_signed_permutation(&s, &t12).unwrap(), &t01).unwrap();
        assert_eq!(direct, stepwise);
        assert_eq!(direct, s);
    }

    #[test]
    fn permutation_size_mismatch() {
        let s = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        assert_eq!(
            apply_signed_permutation(&s, &Permutation::identity(3)),
            Err(Error::ShapeMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn adjacent_decomposition_reproduces_permutation() {
        let pi = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        let mut acc = Permutation::identity(5);
        for p in pi.adjacent_transpositions() {
            acc = acc
                .then(&Permutation::transposition(5, p, p + 1).unwrap())
                .unwrap();
        }
        assert_eq!(acc, pi);
        assert_eq!(pi.then(&pi.inverse()).unwrap(), Permutation::identity(5));
    }

    #[test]
    fn signed_swap_examples() {
        let (a, b) = (label("a"), label("b"));
        let empty = SState::basis(&ket(&[("a", 0), ("b", 0)])).unwrap();
        assert_eq!(signed_swap(&empty, &a, &b).unwrap(), empty);

        let full = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        let expected = SState::basis(&ket(&[("b", 1), ("a", 1)])).unwrap();
        assert_eq!(signed_swap(&full, &a, &b).unwrap(), expected);
        assert_eq!(signed_swap(&full, &a, &b).unwrap(), full.scale(-ONE));
    }

    #[test]
    fn signed_swap_matches_four_by_four_matrix() {
        // rows/cols ordered |00>,|01>,|10>,|11> with a as the left factor
        let matrix = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ];
        let set = IndexSet::from_strs(&["a", "b"]).unwrap();
        let alpha = C64::new(0.6, 0.1);
        let beta = C64::new(-0.3, 0.7);
        // α|01> + β|11>: a is bit 0 of the mask, b is bit 1
        let psi = SState::from_mask_amplitudes(set.clone(), [(0b10, alpha), (0b11, beta)]).unwrap();
        let input = [C64::default(), alpha, C64::default(), beta];
        let out = signed_swap(&psi, &label("a"), &label("b")).unwrap();
        for (row, coeffs) in matrix.iter().enumerate() {
            let expected: C64 = coeffs.iter().zip(&input).map(|(m, v)| v * *m).sum();
            let mask = reverse_bits(row as u64, 2);
            assert_eq!(out.amplitude_of_mask(mask), expected);
        }
    }

    #[test]
    fn swap_errors() {
        let s = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        assert_eq!(
            signed_swap(&s, &label("a"), &label("z")),
            Err(Error::UnknownIndex(label("z")))
        );
        assert!(matches!(
            swap_defect(&s, &label("a"), &label("a")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn swap_defect_examples() {
        let (a, b) = (label("a"), label("b"));
        let full = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        assert_eq!(swap_defect(&full, &a, &b).unwrap(), full.scale(-ONE));
        let half = SState::basis(&ket(&[("a", 0), ("b", 1)])).unwrap();
        assert_eq!(swap_defect(&half, &a, &b).unwrap(), half);
    }

    #[test]
    fn occupation_readout() {
        assert!(occupation(&ket(&[("a", 1)]), &label("a")).unwrap());
        assert!(!occupation(&ket(&[("a", 0)]), &label("a")).unwrap());
        assert_eq!(
            occupation(&ket(&[("a", 0)]), &label("b")),
            Err(Error::UnknownIndex(label("b")))
        );
    }

    #[test]
    fn inner_product_examples() {
        let ab = SState::basis(&ket(&[("a", 1), ("b", 1)])).unwrap();
        let ba = SState::basis(&ket(&[("b", 1), ("a", 1)])).unwrap();
        assert_eq!(inner_product(&ab, &ab).unwrap(), ONE);
        assert_eq!(inner_product(&ab, &ba).unwrap(), -ONE);
        let other = SState::basis(&ket(&[("a", 1), ("c", 1)])).unwrap();
        assert_eq!(inner_product(&ab, &other), Err(Error::IndexSetMismatch));
    }

    #[test]
    fn inner_product_is_sesquilinear() {
        let set = IndexSet::from_strs(&["a", "b"]).unwrap();
        let psi =
            SState::from_mask_amplitudes(set.clone(), [(0, ONE), (3, C64::new(0.0, 2.0))]).unwrap();
        let phi = SState::from_mask_amplitudes(set, [(3, ONE)]).unwrap();
        let k = C64::new(0.5, -1.0);
        assert_eq!(
            inner_product(&psi.scale(k), &phi).unwrap(),
            k.conj() * inner_product(&psi, &phi).unwrap()
        );
        assert_eq!(
            inner_product(&psi, &phi.scale(k)).unwrap(),
            k * inner_product(&psi, &phi).unwrap()
        );
    }

    #[test]
    fn parse_folds_signs_and_reports_lines() {
        let text = "# two orderings\n(1,0) : b=1, a=1\n\n(0.5, 0) : a=0 , b=1\n";
        let s = SState::parse(text).unwrap();
        assert_eq!(s.amplitude(&ket(&[("a", 1), ("b", 1)])).unwrap(), -ONE);
        assert_eq!(
            s.amplitude(&ket(&[("a", 0), ("b", 1)])).unwrap(),
            C64::new(0.5, 0.0)
        );
        assert_eq!(s.to_string(), "(0.5,0) : a=0, b=1\n(-1,0) : a=1, b=1\n");

        match SState::parse("(1,0) : a=1\n(1,0) : b=1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match SState::parse("(1,0) : a=2") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 1);
                assert!(message.contains('a'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn normalize_is_explicit() {
        let set = IndexSet::from_strs(&["a"]).unwrap();
        let s = SState::from_mask_amplitudes(
            set.clone(),
            [(0, C64::new(3.0, 0.0)), (1, C64::new(0.0, 4.0))],
        )
        .unwrap();
        assert_eq!(s.norm_sqr(), 25.0);
        assert!((s.normalize().unwrap().norm_sqr() - 1.0).abs() < 1e-15);
        assert!(SState::zero(set).normalize().is_err());
    }
}
